//! Boolean expressions as numbers, and satisfiability as a function on them.
//!
//!     cargo run --example sat

use primrec::codec::Nat;
use primrec::np;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["e1", "!e1", "(e1|e2)", "(e1&!e1)", "((e1|e2)&(!e1&!e2))", "(!(e1&e2)&(e1|e3))"] {
        let e = np::parse_bool(text)?;
        let x = np::gn(&e);
        let (sat, witness) = np::truth_table_sat(&e)?;
        println!("{text:>22}  GN = {x}  S = {}  {witness:?}", np::sat_fn(&x)?);
        assert_eq!(np::decode_gn(&x).as_ref(), Ok(&e));
        assert_eq!(sat, np::sat_fn(&x)? == 1);
    }

    for x in [1u32, 7, 64, 1458] {
        match np::decode_gn(&Nat::from(x)) {
            Ok(e) => println!("{x} is the number of {e}"),
            Err(why) => println!("{x}: {why}"),
        }
    }

    let table = np::truth_table(&np::parse_bool("(e1|e2)")?)?;
    for (values, out) in &table.rows {
        println!("{values:?} -> {out}");
    }

    match np::parse_bool("e1|e2") {
        Err(e) => println!("{e}"),
        Ok(_) => unreachable!("binary connectives need parentheses"),
    }
    Ok(())
}
