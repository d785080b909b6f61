use std::fmt;

use num_traits::{One, Zero};

use super::NpError;
use crate::codec::{self, Nat};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    /// `e_i`, with `i ≥ 1`.
    Var(u32),
    Not(Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn var(i: u32) -> Self {
        BoolExpr::Var(i)
    }

    pub fn not(e: BoolExpr) -> Self {
        BoolExpr::Not(Box::new(e))
    }

    pub fn or(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: BoolExpr, b: BoolExpr) -> Self {
        BoolExpr::And(Box::new(a), Box::new(b))
    }

    /// Distinct variable indices, ascending.
    pub fn variables(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<u32>) {
        match self {
            BoolExpr::Var(i) => out.push(*i),
            BoolExpr::Not(e) => e.collect_vars(out),
            BoolExpr::Or(a, b) | BoolExpr::And(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Evaluates under `value(i)` for variable `e_i`.
    pub fn eval(&self, value: &impl Fn(u32) -> bool) -> bool {
        match self {
            BoolExpr::Var(i) => value(*i),
            BoolExpr::Not(e) => !e.eval(value),
            BoolExpr::Or(a, b) => a.eval(value) || b.eval(value),
            BoolExpr::And(a, b) => a.eval(value) && b.eval(value),
        }
    }

    /// The expression as its sequence of symbols.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.push_symbols(&mut out);
        out
    }

    fn push_symbols(&self, out: &mut Vec<Symbol>) {
        match self {
            BoolExpr::Var(i) => out.push(Symbol::Var(*i)),
            BoolExpr::Not(e) => {
                out.push(Symbol::Not);
                e.push_symbols(out);
            }
            BoolExpr::Or(a, b) | BoolExpr::And(a, b) => {
                out.push(Symbol::LParen);
                a.push_symbols(out);
                out.push(if matches!(self, BoolExpr::Or(..)) { Symbol::Or } else { Symbol::And });
                b.push_symbols(out);
                out.push(Symbol::RParen);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            BoolExpr::Var(_) => 0,
            BoolExpr::Not(e) => 1 + e.depth(),
            BoolExpr::Or(a, b) | BoolExpr::And(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.symbols() {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Not,
    Or,
    And,
    LParen,
    RParen,
    Var(u32),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Not => f.write_str("!"),
            Symbol::Or => f.write_str("|"),
            Symbol::And => f.write_str("&"),
            Symbol::LParen => f.write_str("("),
            Symbol::RParen => f.write_str(")"),
            Symbol::Var(i) => write!(f, "e{i}"),
        }
    }
}

/// Symbol number: ¬ 1, ∨ 2, ∧ 3, ( 4, ) 5, e_i 5 + i.
pub fn sn(symbol: Symbol) -> u64 {
    match symbol {
        Symbol::Not => 1,
        Symbol::Or => 2,
        Symbol::And => 3,
        Symbol::LParen => 4,
        Symbol::RParen => 5,
        Symbol::Var(i) => 5 + i as u64,
    }
}

fn from_sn(n: u64) -> Option<Symbol> {
    Some(match n {
        1 => Symbol::Not,
        2 => Symbol::Or,
        3 => Symbol::And,
        4 => Symbol::LParen,
        5 => Symbol::RParen,
        n if n > 5 => Symbol::Var(u32::try_from(n - 5).ok()?),
        _ => return None,
    })
}

/// `Π prime(k)^SN(s_k)` over the symbols `s_0, s_1, …` of `e`.
pub fn gn(e: &BoolExpr) -> Nat {
    e.symbols()
        .into_iter()
        .enumerate()
        .fold(Nat::one(), |acc, (k, s)| acc * num_traits::pow::pow(codec::prime_nat(k), sn(s) as usize))
}

/// Why a number is not the Gödel number of an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotWellFormed(pub String);

impl fmt::Display for NotWellFormed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not well formed: {}", self.0)
    }
}

impl std::error::Error for NotWellFormed {}

/// Inverse of [`gn`]. The exponents of `2, 3, 5, …` must be symbol numbers
/// up to the first prime that does not divide `x`, and nothing else may
/// divide `x`.
pub fn decode_gn(x: &Nat) -> Result<BoolExpr, NotWellFormed> {
    if x.is_zero() {
        return Err(NotWellFormed("zero".into()));
    }
    let mut rest = x.clone();
    let mut symbols = Vec::new();
    while !rest.is_one() {
        let k = symbols.len();
        let (e, r) = codec::strip_prime(&rest, k);
        if e == 0 {
            return Err(NotWellFormed(format!("prime {} does not divide, but a larger one does", codec::prime(k))));
        }
        symbols.push(from_sn(e).ok_or_else(|| NotWellFormed(format!("exponent {e} is not a symbol number")))?);
        rest = r;
    }
    if symbols.is_empty() {
        return Err(NotWellFormed("empty symbol sequence".into()));
    }
    parse_symbols(&symbols).map_err(|(pos, msg)| NotWellFormed(format!("symbol {}: {msg}", pos + 1)))
}

fn parse_symbols(symbols: &[Symbol]) -> Result<BoolExpr, (usize, String)> {
    let mut at = 0;
    let e = expr(symbols, &mut at)?;
    if at != symbols.len() {
        return Err((at, format!("unexpected `{}` after a complete expression", symbols[at])));
    }
    Ok(e)
}

fn expr(symbols: &[Symbol], at: &mut usize) -> Result<BoolExpr, (usize, String)> {
    let here = *at;
    match symbols.get(here) {
        None => Err((here, "expected an expression".into())),
        Some(Symbol::Var(i)) => {
            *at += 1;
            if *i == 0 {
                return Err((here, "variables are numbered from 1".into()));
            }
            Ok(BoolExpr::Var(*i))
        }
        Some(Symbol::Not) => {
            *at += 1;
            Ok(BoolExpr::not(expr(symbols, at)?))
        }
        Some(Symbol::LParen) => {
            *at += 1;
            let a = expr(symbols, at)?;
            let op = *at;
            let or = match symbols.get(op) {
                Some(Symbol::Or) => true,
                Some(Symbol::And) => false,
                _ => return Err((op, "expected `|` or `&`".into())),
            };
            *at += 1;
            let b = expr(symbols, at)?;
            if symbols.get(*at) != Some(&Symbol::RParen) {
                return Err((*at, "expected `)`".into()));
            }
            *at += 1;
            Ok(if or { BoolExpr::or(a, b) } else { BoolExpr::and(a, b) })
        }
        Some(s) => Err((here, format!("unexpected `{s}`"))),
    }
}

/// Parses the ASCII surface syntax: `e1`, `e2`, …, `!E`, `(E|F)`, `(E&F)`.
/// Whitespace between symbols is ignored.
pub fn parse_bool(text: &str) -> Result<BoolExpr, NpError> {
    let bytes = text.as_bytes();
    let mut symbols = Vec::new();
    let mut offsets = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let sym = match bytes[i] {
            c if c.is_ascii_whitespace() => {
                i += 1;
                continue;
            }
            b'!' => Symbol::Not,
            b'|' => Symbol::Or,
            b'&' => Symbol::And,
            b'(' => Symbol::LParen,
            b')' => Symbol::RParen,
            b'e' => {
                let mut j = i + 1;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let n: u32 = text[i + 1..j].parse().map_err(|_| NpError::Parse {
                    pos: start,
                    msg: "expected a variable index after `e`".into(),
                })?;
                if n == 0 {
                    return Err(NpError::Parse {
                        pos: start,
                        msg: "variables are numbered from 1".into(),
                    });
                }
                i = j - 1;
                Symbol::Var(n)
            }
            _ => {
                let c = text[i..].chars().next().unwrap_or('?');
                return Err(NpError::Parse {
                    pos: start,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        };
        symbols.push(sym);
        offsets.push(start);
        i += 1;
    }
    parse_symbols(&symbols).map_err(|(k, msg)| NpError::Parse {
        pos: offsets.get(k).copied().unwrap_or(text.len()),
        msg,
    })
}

/// One expression per non-empty line; `#` starts a comment.
pub fn parse_expr_file(text: &str) -> Result<Vec<BoolExpr>, NpError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse_bool(line).map_err(|e| NpError::FileLine {
            line: idx + 1,
            msg: e.to_string(),
        })?);
    }
    Ok(out)
}
