//! Primitive recursive and μ-recursive function terms.
//!
//! Terms are built from the initial functions `S`, `Z` and `P[n,i]` by
//! composition `C`, recursion `R`, bounded minimization `BMU` and unbounded
//! minimization `MU`, and may refer to named definitions in a [`DefEnv`].
//!
//! Two evaluators are provided. [`eval_honest`] applies the schemas literally
//! and is only practical for small arguments; [`eval_fast`] dispatches library
//! definitions to native arithmetic and memoizes the rest.

mod env;
mod eval;
mod parse;
mod stdlib;
mod term;

use num_bigint::BigUint;
use thiserror::Error;

pub use env::{arity_check, classify, DefEnv, Intrinsic};
pub use eval::{eval_fast, eval_honest, FastEvaluator, DEFAULT_BUDGET, DEFAULT_SCAN_CEILING};
pub use parse::{parse_defs, parse_term};
pub use stdlib::{intrinsics, stdlib, stdlib_names, stdlib_source};
pub use term::{Node, Term};

use crate::codec::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrfError {
    #[error("arity mismatch at {path}: {detail}")]
    ArityMismatch { path: String, detail: String },
    #[error("unresolved reference `{0}`")]
    UnresolvedRef(String),
    #[error("`{0}` is already defined")]
    DuplicateDef(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("term is not primitive recursive")]
    NotPrimitiveRecursive,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Prf(#[from] PrfError),
    #[error("evaluation budget exceeded")]
    BudgetExceeded,
    #[error("unbounded minimization found no witness among the first {scanned} candidates")]
    MuDiverged { scanned: BigUint },
    #[error("scan or recursion length exceeds the evaluator ceiling")]
    ScanLimit,
    #[error("intrinsic result too large to materialize")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    PrimitiveRecursive,
    MuRecursive,
}

/// The bounded-minimization corollary: given an `(n+1)`-ary predicate `p` and
/// an `n`-ary bound `b`, builds
///
/// ```text
/// h(x̄, k) = μ y ≤ k . p(x̄, y)          as BMU[p'; P[n+1,n+1]]
/// f(x̄)    = h(x̄, b(x̄))                 as C[h; P[n,1], …, P[n,n], b]
/// ```
///
/// where `p'(x̄, k, y) = p(x̄, y)`. The result is primitive recursive whenever
/// `p` and `b` are.
pub fn corollary_substitute(pred: &Term, bound: &Term, env: &DefEnv) -> Result<Term, PrfError> {
    let n = arity_check(bound, env)?;
    let pa = arity_check(pred, env)?;
    if pa != n + 1 {
        return Err(PrfError::ArityMismatch {
            path: "<root>".into(),
            detail: format!("predicate has arity {pa}, bound has arity {n}"),
        });
    }
    let mut skip_k: Vec<Term> = (1..=n).map(|i| Term::proj(n + 2, i)).collect();
    skip_k.push(Term::proj(n + 2, n + 2));
    let widened = Term::comp(pred.clone(), skip_k);
    let h = Term::bounded_mu(widened, Term::proj(n + 1, n + 1));
    let mut inner: Vec<Term> = (1..=n).map(|i| Term::proj(n, i)).collect();
    inner.push(bound.clone());
    Ok(Term::comp(h, inner))
}

/// `n`-ary constant zero.
pub fn zero_n(arity: usize) -> Term {
    if arity == 1 {
        Term::zero()
    } else {
        Term::comp(Term::zero(), vec![Term::proj(arity, 1)])
    }
}

/// `n`-ary constant function with value `v`, using `add`, `mul` and `pow` from
/// the standard library. Large values are split in binary halves so the term
/// stays shallow.
pub fn konst(arity: usize, v: &Nat) -> Term {
    if v.bits() <= 4 {
        let small = v.iter_u32_digits().next().unwrap_or(0);
        let mut t = zero_n(arity);
        for _ in 0..small {
            t = Term::comp(Term::succ(), vec![t]);
        }
        return t;
    }
    let k = v.bits() / 2;
    let hi = v >> k;
    let lo = v - (&hi << k);
    let scale = Term::call("pow", vec![konst(arity, &Nat::from(2u32)), konst(arity, &Nat::from(k))]);
    let top = Term::call("mul", vec![konst(arity, &hi), scale]);
    if lo == Nat::from(0u32) {
        top
    } else {
        Term::call("add", vec![top, konst(arity, &lo)])
    }
}

/// [`konst`] for a machine-word value.
pub fn konst_u(arity: usize, v: u64) -> Term {
    konst(arity, &Nat::from(v))
}

/// Classifies and rejects terms that use unbounded minimization.
pub fn require_primitive(term: &Term, env: &DefEnv) -> Result<(), PrfError> {
    match classify(term, env) {
        Classification::PrimitiveRecursive => Ok(()),
        Classification::MuRecursive => Err(PrfError::NotPrimitiveRecursive),
    }
}
