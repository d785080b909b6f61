//! Evaluate recursive-function terms over the standard library.
//!
//!     cargo run --example prf_eval

use primrec::codec::Nat;
use primrec::prf::{self, Term};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut env = prf::stdlib();
    env.load(
        "DEF double = C[add; P[1,1], P[1,1]]\n\
         DEF square = C[mul; P[1,1], P[1,1]]\n",
    )?;

    let sum_sq = prf::parse_term("C[add; C[square; P[2,1]], C[square; P[2,2]]]")?;
    println!("arity of {sum_sq}: {}", prf::arity_check(&sum_sq, &env)?);

    let args = [Nat::from(3u32), Nat::from(4u32)];
    let fast = prf::eval_fast(&sum_sq, &args, &env)?;
    let honest = prf::eval_honest(&sum_sq, &args, &env, prf::DEFAULT_BUDGET)?;
    println!("3² + 4² = {fast} (native twins), {honest} (literal recursion)");

    // Least y ≤ x with y² ≥ x, i.e. the ceiling of √x.
    let pred = prf::parse_term("C[le; P[2,1], C[square; P[2,2]]]")?;
    let root = prf::corollary_substitute(&pred, &Term::proj(1, 1), &env)?;
    for x in [0u32, 1, 2, 10, 16, 17] {
        let r = prf::eval_honest(&root, &[Nat::from(x)], &env, prf::DEFAULT_BUDGET)?;
        println!("ceil sqrt {x} = {r}");
    }
    println!("{:?}", prf::classify(&root, &env));

    let unbounded = prf::parse_term("MU[C[le; P[2,1], C[square; P[2,2]]]]")?;
    println!("{:?}", prf::classify(&unbounded, &env));
    Ok(())
}
