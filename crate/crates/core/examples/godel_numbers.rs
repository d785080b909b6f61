//! Pairing functions, configuration numbers and machine numbers.
//!
//!     cargo run --example godel_numbers

use std::collections::BTreeMap;

use primrec::codec::{self, Nat};
use primrec::tm::{self, Configuration};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let z = codec::sigma2(&Nat::from(2u32), &Nat::from(1u32))?;
    println!("sigma2(2, 1) = {z}, back to {:?}", codec::sigma2_inv(&z));
    let w = codec::sigma3(&Nat::from(1u32), &Nat::from(1u32), &Nat::from(1u32))?;
    println!("sigma3(1, 1, 1) = {w}");

    let cfg = Configuration {
        head: 0,
        tape: BTreeMap::from([(2, tm::STROKE), (4, tm::STROKE)]),
        state: 1,
    };
    println!("tape with strokes in cells 2 and 4: {}", tm::encode_tape(&cfg));
    let n = tm::encode_config(&cfg);
    println!("configuration number {n}");
    assert_eq!(tm::decode_config_raw(&n)?, cfg);

    for (name, spec) in [("zero", tm::zero_machine()), ("succ", tm::successor_machine())] {
        let t = tm::godel_number(&spec);
        println!("{name}: {} states, number with {} bits", spec.states(), t.bits());
        assert_eq!(tm::decode_machine(&t)?, spec);
    }
    println!("7 decodes as a machine? {}", tm::decode_machine(&Nat::from(7u32)).is_ok());
    Ok(())
}
