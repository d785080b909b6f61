//! Build the initial-function machines and run them on unary input.
//!
//!     cargo run --example turing_run

use primrec::tm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let zero = tm::zero_machine();
    for x in [0, 7, 20] {
        let r = tm::run(&zero, &[x], 100)?;
        println!("Z({x}) = {} in {} steps", r.value, r.steps);
    }

    let succ = tm::successor_machine();
    let r = tm::run_traced(&succ, &[2], 10_000, true)?;
    println!("S(2) = {} in {} steps", r.value, r.steps);
    for (z, cfg) in r.trace.iter().flatten().enumerate().take(6) {
        println!("  step {z}: state {} head {} cells {:?}", cfg.state, tm::offset_of(cfg.head), cfg.tape);
    }

    let p = tm::projection_machine(3, 2);
    println!("P[3,2](4, 1, 6) = {}", tm::run(&p, &[4, 1, 6], 100_000)?.value);

    // Machines are plain text.
    let text = tm::render_machine(&zero);
    print!("{text}");
    assert_eq!(tm::parse_machine(&text)?, zero);
    Ok(())
}
