//! Arithmetic codes for tapes, configurations and machines.
//!
//! ```text
//! tape    b = Π prime(j)^β(j)                     over non-blank cells j
//! config  w = σ₂(a, σ₂(c, b))                     head a, state c, tape b
//! machine t = σ₂(M, σ₂(N, Π prime(slot)^code))
//!         slot(q, s)      = (q − 1)(N + 1) + s
//!         code(act, q′)   = 1 + act·M + (q′ − 1)
//!         act             = j for Write(j), N + 1 for Left, N + 2 for Right
//! ```
//!
//! An undefined table entry contributes exponent 0, so every code is
//! recoverable by reading prime exponents.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{nonzero_tape, Action, Configuration, State, Symbol, TmError, TmSpec};
use crate::codec::{self, Nat};

/// Decoders give up on tapes that reach beyond this cell index.
const MAX_CELL: usize = 200_000;
/// Decoders give up on machines with more states or symbols than this.
const MAX_STATES: u64 = 1 << 12;
const MAX_SYMBOLS: u64 = 1 << 8;

/// `Π prime(j)^β(j)` over the non-blank cells.
pub fn encode_tape(cfg: &Configuration) -> Nat {
    let mut b = Nat::one();
    for (&j, &s) in &cfg.tape {
        b *= num_traits::pow::pow(codec::prime_nat(j as usize), s as usize);
    }
    b
}

pub fn encode_config(cfg: &Configuration) -> Nat {
    let inner = codec::sigma2_u(cfg.state as u64, &encode_tape(cfg));
    codec::sigma2_u(cfg.head, &inner)
}

fn decode_tape(b: &Nat) -> Result<BTreeMap<u64, Symbol>, TmError> {
    nonzero_tape(b)?;
    let mut tape = BTreeMap::new();
    let mut rest = b.clone();
    let mut j = 0usize;
    while !rest.is_one() {
        if j > MAX_CELL {
            return Err(TmError::MalformedConfig(format!("tape reaches beyond cell {MAX_CELL}")));
        }
        let (e, r) = codec::strip_prime(&rest, j);
        if e > 0 {
            let sym = Symbol::try_from(e).map_err(|_| TmError::MalformedConfig(format!("symbol {e} at cell {j}")))?;
            tape.insert(j as u64, sym);
        }
        rest = r;
        j += 1;
    }
    Ok(tape)
}

/// Decodes a configuration number without reference to a machine.
pub fn decode_config_raw(w: &Nat) -> Result<Configuration, TmError> {
    let (head, inner) = codec::sigma2_inv_u(w);
    let (state, b) = codec::sigma2_inv_u(&inner);
    let tape = decode_tape(&b)?;
    Ok(Configuration {
        head,
        tape,
        state: state as State,
    })
}

/// Decodes a configuration number and checks it against `spec`'s states and
/// alphabet.
pub fn decode_config(w: &Nat, spec: &TmSpec) -> Result<Configuration, TmError> {
    let cfg = decode_config_raw(w)?;
    if !(1..=spec.states()).contains(&cfg.state) {
        return Err(TmError::MalformedConfig(format!("state {} is not a state of the machine", cfg.state)));
    }
    if let Some((j, s)) = cfg.tape.iter().find(|(_, &s)| s > spec.alphabet()) {
        return Err(TmError::MalformedConfig(format!("symbol {s} at cell {j} is outside the alphabet")));
    }
    Ok(cfg)
}

fn action_code(act: Action, n: u64) -> u64 {
    match act {
        Action::Write(j) => j as u64,
        Action::Left => n + 1,
        Action::Right => n + 2,
    }
}

fn slot(q: State, s: Symbol, n: u64) -> usize {
    (q - 1) * (n as usize + 1) + s as usize
}

/// Gödel number of a machine.
pub fn godel_number(spec: &TmSpec) -> Nat {
    let m = spec.states() as u64;
    let n = spec.alphabet() as u64;
    let mut table = Nat::one();
    for ((q, s), (act, next)) in spec.transitions() {
        let code = 1 + action_code(act, n) * m + (next as u64 - 1);
        table *= num_traits::pow::pow(codec::prime_nat(slot(q, s, n)), code as usize);
    }
    codec::sigma2_u(m, &codec::sigma2_u(n, &table))
}

/// Inverse of [`godel_number`]. Numbers that are not the code of any machine
/// are rejected with [`TmError::MalformedMachine`].
pub fn decode_machine(t: &Nat) -> Result<TmSpec, TmError> {
    let bad = |msg: String| TmError::MalformedMachine(msg);
    let (m, inner) = codec::sigma2_inv_u(t);
    let (n, table) = codec::sigma2_inv_u(&inner);
    if m == 0 || m > MAX_STATES {
        return Err(bad(format!("state count {m} out of range")));
    }
    if n == 0 || n > MAX_SYMBOLS {
        return Err(bad(format!("alphabet size {n} out of range")));
    }
    if table.is_zero() {
        return Err(bad("transition table number is zero".into()));
    }
    let mut rest = table;
    let mut transitions = Vec::new();
    for q in 1..=m as State {
        for s in 0..=n as Symbol {
            if rest.is_one() {
                break;
            }
            let (e, r) = codec::strip_prime(&rest, slot(q, s, n));
            rest = r;
            if e == 0 {
                continue;
            }
            let code = e - 1;
            let act = match code / m {
                j if j <= n => Action::Write(j as Symbol),
                j if j == n + 1 => Action::Left,
                j if j == n + 2 => Action::Right,
                j => return Err(bad(format!("action code {j} at state {q}, symbol {s}"))),
            };
            transitions.push(((q, s), (act, (code % m) as State + 1)));
        }
    }
    if !rest.is_one() {
        return Err(bad(format!("table has prime factors beyond slot {}", m * (n + 1) - 1)));
    }
    TmSpec::new(m as usize, n as u32, transitions).map_err(|e| bad(e.to_string()))
}
