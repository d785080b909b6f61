//! Deterministic single-tape Turing machines over a two-way infinite tape.
//!
//! Cells are addressed by a *cell index*: the anchor cell is 0, cells to its
//! right get even indices (offset `d > 0` ↦ `2d`) and cells to its left odd
//! ones (offset `d < 0` ↦ `2|d| − 1`). Each step performs exactly one action,
//! writing a symbol or moving the head one cell, and a machine halts when its
//! table has no entry for the current state and scanned symbol.
//!
//! Numbers are written in unary: `x` is a word of `x + 1` strokes (symbol 1).

mod builders;
mod format;
mod godel;

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

pub use builders::{
    copy_machine, copy_machine_n, halt_machine, move_left, move_right, print_stroke, projection_machine, seq,
    successor_machine, zero_machine,
};
pub use format::{parse_machine, render_machine};
pub use godel::{decode_config, decode_config_raw, decode_machine, encode_config, encode_tape, godel_number};

use crate::codec::Nat;

pub type State = usize;
pub type Symbol = u32;

/// The stroke symbol `a₁`.
pub const STROKE: Symbol = 1;
/// The blank symbol `a₀`.
pub const BLANK: Symbol = 0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TmError {
    #[error("at least one argument is required")]
    EmptyArgs,
    #[error("no terminal configuration within {0} steps")]
    NonTermination(u64),
    #[error("no stroke immediately left of the head")]
    NoOutputNumeral,
    #[error("malformed configuration: {0}")]
    MalformedConfig(String),
    #[error("malformed machine: {0}")]
    MalformedMachine(String),
    #[error("invalid machine: {0}")]
    InvalidSpec(String),
    #[error("machine file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Write(Symbol),
    Left,
    Right,
}

/// A machine with states `1..=states` (start state 1) over symbols
/// `0..=alphabet` (0 is the blank).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TmSpec {
    states: usize,
    alphabet: u32,
    delta: BTreeMap<(State, Symbol), (Action, State)>,
}

impl TmSpec {
    pub fn new(
        states: usize,
        alphabet: u32,
        transitions: impl IntoIterator<Item = ((State, Symbol), (Action, State))>,
    ) -> Result<Self, TmError> {
        if states == 0 {
            return Err(TmError::InvalidSpec("a machine needs at least one state".into()));
        }
        if alphabet == 0 {
            return Err(TmError::InvalidSpec("the alphabet needs at least one symbol".into()));
        }
        let mut delta = BTreeMap::new();
        for ((q, s), (act, next)) in transitions {
            if !(1..=states).contains(&q) || !(1..=states).contains(&next) {
                return Err(TmError::InvalidSpec(format!("state out of range in ({q}, {s}) -> {next}")));
            }
            if s > alphabet || matches!(act, Action::Write(j) if j > alphabet) {
                return Err(TmError::InvalidSpec(format!("symbol out of range in state {q}")));
            }
            if delta.insert((q, s), (act, next)).is_some() {
                return Err(TmError::InvalidSpec(format!("two transitions for ({q}, {s})")));
            }
        }
        Ok(Self {
            states,
            alphabet,
            delta,
        })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn transition(&self, state: State, symbol: Symbol) -> Option<(Action, State)> {
        self.delta.get(&(state, symbol)).copied()
    }

    /// Transitions sorted by `(state, symbol)`.
    pub fn transitions(&self) -> impl Iterator<Item = ((State, Symbol), (Action, State))> + '_ {
        self.delta.iter().map(|(k, v)| (*k, *v))
    }
}

/// Cell index of a physical offset from the anchor cell.
pub fn cell_index(offset: i64) -> u64 {
    match offset {
        0 => 0,
        d if d > 0 => 2 * d as u64,
        d => 2 * d.unsigned_abs() - 1,
    }
}

/// Inverse of [`cell_index`].
pub fn offset_of(index: u64) -> i64 {
    if index % 2 == 0 {
        (index / 2) as i64
    } else {
        -(index.div_ceil(2) as i64)
    }
}

/// Machine snapshot: head cell index, non-blank cells, current state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub head: u64,
    pub tape: BTreeMap<u64, Symbol>,
    pub state: State,
}

impl Configuration {
    pub fn symbol_at(&self, index: u64) -> Symbol {
        self.tape.get(&index).copied().unwrap_or(BLANK)
    }

    pub fn scanned(&self) -> Symbol {
        self.symbol_at(self.head)
    }

    pub fn set(&mut self, index: u64, symbol: Symbol) {
        if symbol == BLANK {
            self.tape.remove(&index);
        } else {
            self.tape.insert(index, symbol);
        }
    }

    pub fn occupied(&self) -> usize {
        self.tape.len()
    }

    /// Largest `|offset|` among the head and the non-blank cells.
    pub fn span(&self) -> u64 {
        self.tape
            .keys()
            .chain(std::iter::once(&self.head))
            .map(|&i| offset_of(i).unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// The numeral written immediately left of the head: the length of the
    /// maximal run of strokes ending there, minus one.
    pub fn output_numeral(&self) -> Result<Nat, TmError> {
        let mut offset = offset_of(self.head) - 1;
        let mut strokes = 0u64;
        while self.symbol_at(cell_index(offset)) == STROKE {
            strokes += 1;
            offset -= 1;
        }
        if strokes == 0 {
            Err(TmError::NoOutputNumeral)
        } else {
            Ok(Nat::from(strokes - 1))
        }
    }
}

/// Initial configuration for arguments `xs`: the words for `x₁, …, xₙ`
/// (`xᵢ + 1` strokes each) start at offset +1 separated by single blanks, and
/// the head rests on the first blank after the last word, in state 1.
pub fn encode_args(xs: &[u64]) -> Result<Configuration, TmError> {
    if xs.is_empty() {
        return Err(TmError::EmptyArgs);
    }
    let mut tape = BTreeMap::new();
    let mut offset = 1i64;
    for &x in xs {
        for _ in 0..=x {
            tape.insert(cell_index(offset), STROKE);
            offset += 1;
        }
        offset += 1;
    }
    Ok(Configuration {
        head: cell_index(offset - 1),
        tape,
        state: 1,
    })
}

/// Applies one transition, or returns `None` when `cfg` is terminal.
pub fn step(spec: &TmSpec, cfg: &Configuration) -> Option<Configuration> {
    let mut out = cfg.clone();
    advance(spec, &mut out).then_some(out)
}

/// Applies one transition in place; `false` when `cfg` is terminal.
pub fn advance(spec: &TmSpec, cfg: &mut Configuration) -> bool {
    let Some((action, next)) = spec.transition(cfg.state, cfg.scanned()) else {
        return false;
    };
    match action {
        Action::Write(j) => cfg.set(cfg.head, j),
        Action::Left => cfg.head = cell_index(offset_of(cfg.head) - 1),
        Action::Right => cfg.head = cell_index(offset_of(cfg.head) + 1),
    }
    cfg.state = next;
    true
}

pub fn is_terminal(spec: &TmSpec, cfg: &Configuration) -> bool {
    spec.transition(cfg.state, cfg.scanned()).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub value: Nat,
    pub steps: u64,
    pub terminal: Configuration,
    /// Every configuration from the initial one to the terminal one, when requested.
    pub trace: Option<Vec<Configuration>>,
}

/// Runs to a terminal configuration from an arbitrary starting point.
/// Returns the terminal configuration, the step count and optionally the trace.
pub fn run_from(
    spec: &TmSpec,
    start: Configuration,
    max_steps: u64,
    keep_trace: bool,
) -> Result<(Configuration, u64, Option<Vec<Configuration>>), TmError> {
    let mut trace = keep_trace.then(|| vec![start.clone()]);
    let mut cfg = start;
    let mut steps = 0u64;
    while !is_terminal(spec, &cfg) {
        if steps == max_steps {
            return Err(TmError::NonTermination(max_steps));
        }
        advance(spec, &mut cfg);
        steps += 1;
        if let Some(t) = trace.as_mut() {
            t.push(cfg.clone());
        }
    }
    Ok((cfg, steps, trace))
}

/// Runs `spec` on unary-encoded `xs` and decodes the output numeral.
pub fn run(spec: &TmSpec, xs: &[u64], max_steps: u64) -> Result<RunResult, TmError> {
    run_traced(spec, xs, max_steps, false)
}

/// [`run`], optionally keeping every configuration.
pub fn run_traced(spec: &TmSpec, xs: &[u64], max_steps: u64, keep_trace: bool) -> Result<RunResult, TmError> {
    let start = encode_args(xs)?;
    let (terminal, steps, trace) = run_from(spec, start, max_steps, keep_trace)?;
    let value = terminal.output_numeral()?;
    Ok(RunResult {
        value,
        steps,
        terminal,
        trace,
    })
}

/// Configuration reached after `z` steps, staying at the terminal
/// configuration once the machine has halted.
pub fn configuration_at(spec: &TmSpec, xs: &[u64], z: u64) -> Result<Configuration, TmError> {
    let mut cfg = encode_args(xs)?;
    for _ in 0..z {
        if !advance(spec, &mut cfg) {
            break;
        }
    }
    Ok(cfg)
}

pub(crate) fn nonzero_tape(b: &Nat) -> Result<(), TmError> {
    if b.is_zero() {
        Err(TmError::MalformedConfig("tape number must be at least 1".into()))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests;
