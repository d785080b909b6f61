//! The least y with T(t, x, y) and the output U(y).
//!
//!     cargo run --example kleene_witness

use primrec::codec;
use primrec::kleene::{self, SearchMode};
use primrec::tm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let succ = tm::successor_machine();
    let t = tm::godel_number(&succ);
    for x in 0..4 {
        let w = kleene::mu_search(&t, &[x], SearchMode::WitnessChecked { seed: 1, samples: 500 })?;
        let out = kleene::u_extract(&w.y)?;
        println!("x = {x}: halts at r = {}, y has {} bits, U(y) = {out}", w.r, w.y.bits());
    }

    // K freezes once the run halts, so T holds from the halting step on.
    let r = tm::run(&succ, &[1], 10_000)?.steps;
    for step in [r - 1, r, r + 5] {
        let y = codec::sigma2_u(step, &kleene::kfun(&t, &[1], step)?);
        println!("T at r = {step}: {}", kleene::t_pred(&t, &[1], &y));
    }

    // A machine that halts at once has a witness small enough to find by counting.
    let idle = tm::halt_machine();
    let w = kleene::mu_search(&tm::godel_number(&idle), &[0], SearchMode::Linear { budget: 5000 })?;
    println!("idle machine: y = {} found by linear search", w.y);

    println!("pipeline vs simulator on succ(5): {} {}", kleene::theorem_b0_eval(&t, &[5])?, tm::run(&succ, &[5], 10_000)?.value);
    Ok(())
}
