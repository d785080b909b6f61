//! Plain-text machine files.
//!
//! ```text
//! # example
//! states: 4
//! alphabet: 1
//! start: 1
//! delta: 1 0 -> R 2
//! delta: 2 0 -> W 1 3
//! delta: 3 1 -> R 4
//! ```
//!
//! `W j q′` writes symbol `j`, `L q′` and `R q′` move. Text after `#` is
//! ignored.

use std::fmt::Write as _;

use super::{Action, TmError, TmSpec};

fn err(line: usize, msg: impl Into<String>) -> TmError {
    TmError::Parse { line, msg: msg.into() }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, TmError> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| err(line, format!("bad {what} `{tok}`")))
}

pub fn parse_machine(src: &str) -> Result<TmSpec, TmError> {
    let mut states = None;
    let mut alphabet = None;
    let mut transitions = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let (key, value) = text
            .split_once(':')
            .ok_or_else(|| err(line, "expected `key: value`"))?;
        let value = value.trim();
        match key.trim() {
            "states" => states = Some(number::<usize>(Some(value), line, "state count")?),
            "alphabet" => alphabet = Some(number::<u32>(Some(value), line, "alphabet size")?),
            "start" => {
                if number::<usize>(Some(value), line, "start state")? != 1 {
                    return Err(err(line, "the start state must be 1"));
                }
            }
            "delta" => {
                let (lhs, rhs) = value
                    .split_once("->")
                    .ok_or_else(|| err(line, "expected `q s -> action q'`"))?;
                let mut l = lhs.split_whitespace();
                let q = number(l.next(), line, "state")?;
                let s = number(l.next(), line, "symbol")?;
                if l.next().is_some() {
                    return Err(err(line, "trailing tokens before `->`"));
                }
                let mut r = rhs.split_whitespace();
                let act = match r.next() {
                    Some("W") => Action::Write(number(r.next(), line, "written symbol")?),
                    Some("L") => Action::Left,
                    Some("R") => Action::Right,
                    Some(other) => return Err(err(line, format!("unknown action `{other}`"))),
                    None => return Err(err(line, "missing action")),
                };
                let next = number(r.next(), line, "next state")?;
                if r.next().is_some() {
                    return Err(err(line, "trailing tokens after the next state"));
                }
                transitions.push(((q, s), (act, next)));
            }
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }
    let states = states.ok_or_else(|| err(0, "missing `states:` line"))?;
    let alphabet = alphabet.unwrap_or(1);
    TmSpec::new(states, alphabet, transitions).map_err(|e| err(0, e.to_string()))
}

pub fn render_machine(spec: &TmSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", spec.states());
    let _ = writeln!(out, "alphabet: {}", spec.alphabet());
    let _ = writeln!(out, "start: 1");
    for ((q, s), (act, next)) in spec.transitions() {
        let act = match act {
            Action::Write(j) => format!("W {j}"),
            Action::Left => "L".to_string(),
            Action::Right => "R".to_string(),
        };
        let _ = writeln!(out, "delta: {q} {s} -> {act} {next}");
    }
    out
}
