//! Measured step counts, fitted bounds and the composition and recursion rules.
//!
//!     cargo run --example step_bounds

use primrec::prf;
use primrec::tau::{self, Initial};
use primrec::tm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let env = prf::stdlib();
    for which in [Initial::Zero, Initial::Succ, Initial::Proj { n: 2, i: 1 }] {
        let b = tau::tau_initial(which, 12)?;
        match b.fit {
            Some(f) => println!("{which:?}: {}·size + {} ({})", f.c1, f.c0, b.provenance),
            None => println!("{which:?}: {} ({})", b.term, b.provenance),
        }
    }

    let zero = tau::tau_initial(Initial::Zero, 5)?;
    let succ = tau::tau_initial(Initial::Succ, 12)?;
    // τ for S(Z(x)): τ_S(Z(x)) + τ_Z(x).
    let composed = tau::tau_compose(&succ, &[zero.clone()], &[prf::parse_term("Z")?], &env)?;
    println!("S∘Z bound at x = 9: {}", tau::eval_bound(&composed, &[9], &env)?);

    // τ for mul by recursion from a base cost τ_G(x) = 3 and a step cost τ_H = 3.
    let three = |arity| tau::TauBound {
        term: prf::konst_u(arity, 3),
        provenance: tau::Provenance::Constant,
        fit: None,
    };
    let rec = tau::tau_recursion(&three(1), &three(3), &prf::parse_term("mul")?, &env)?;
    println!("recursion bound at (4, 5): {}", tau::eval_bound(&rec, &[4, 5], &env)?);

    let samples: Vec<Vec<u64>> = (0..=8).map(|x| vec![x]).collect();
    let report = tau::check_bound(&tm::successor_machine(), &succ.term, &samples, &env)?;
    println!("{report}");
    Ok(())
}
