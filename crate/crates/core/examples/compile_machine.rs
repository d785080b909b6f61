//! Turn a machine and a step bound into a primitive recursive term.
//!
//!     cargo run --example compile_machine

use num_traits::One;

use primrec::codec::Nat;
use primrec::kleene::{self, SearchMode};
use primrec::prf::{self, FastEvaluator};
use primrec::tm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = tm::successor_machine();
    // A generous step bound: 100 + 100x.
    let bound = prf::parse_term("C[add; C[mul; P[1,1], C[pow; C[S; C[S; C[S; C[S; C[S; C[S; C[S; C[S; C[S; C[S; C[Z; P[1,1]]]]]]]]]]]], C[S; C[S; C[Z; P[1,1]]]]]], C[pow; C[S; C[S; C[S; C[S; C[S; C[S; C[S; C[S; C[S; C[S; C[Z; P[1,1]]]]]]]]]]]], C[S; C[S; C[Z; P[1,1]]]]]]")?;
    let c = kleene::theorem1_compile(&spec, &bound)?;
    println!("arity {}, {:?}", c.arity, prf::classify(&c.term, &c.env));
    println!("term size {} nodes", c.term.size());
    println!("Y = {}", c.y_bound.y);

    // Y is far too large to scan up to, but T and U can be evaluated at the
    // witness the simulator finds.
    let t = tm::godel_number(&spec);
    let x = 3u64;
    let w = kleene::mu_search(&t, &[x], SearchMode::default())?;
    let mut ev = FastEvaluator::new(&c.env);
    let holds = ev.eval(&c.t_term, &[Nat::from(x), w.y.clone()])?;
    let out = ev.eval(&c.u_term, &[w.y])?;
    println!("T(t, {x}, y*) = {holds}, U(y*) = {out}");
    assert!(holds.is_one());

    let text = c.render();
    println!("{} lines of definitions", text.lines().count());
    Ok(())
}
