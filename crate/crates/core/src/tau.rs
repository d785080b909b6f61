//! Step counts of machines and primitive recursive bounds on them.
//!
//! The initial functions get bounds directly: `τ_Z = 3`, and linear bounds
//! fitted to measurements for the successor and projection machines. Bounds
//! for composite functions follow the recurrences
//!
//! ```text
//! τ_F(x̄)    = τ_G(H₁(x̄), …, H_m(x̄)) + Σᵢ τ_Hᵢ(x̄)          F = G ∘ (H₁, …, H_m)
//! τ_F(x̄, x) = τ_G(x̄) + Σ_{y<x} τ_H(x̄, y, F(x̄, y))        F = R[G; H]
//! ```
//!
//! which are themselves built as primitive recursive terms.

use std::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::codec::Nat;
use crate::prf::{self, arity_check, require_primitive, DefEnv, EvalError, FastEvaluator, PrfError, Term};
use crate::tm::{self, TmError, TmSpec};

/// Default step cap for measurements.
pub const MEASURE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TauError {
    #[error(transparent)]
    Tm(#[from] TmError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Prf(#[from] PrfError),
    #[error("no linear bound dominates the sweep: {0}")]
    FitFailed(String),
    #[error("cannot start worker threads: {0}")]
    Threads(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    MeasuredFit,
    CompositionRule,
    RecursionRule,
    Constant,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::MeasuredFit => "measured-fit",
            Provenance::CompositionRule => "composition-rule",
            Provenance::RecursionRule => "recursion-rule",
            Provenance::Constant => "constant",
        })
    }
}

/// `bound(size) = c1·size + c0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearFit {
    pub c1: u64,
    pub c0: u64,
}

impl LinearFit {
    pub fn at(&self, size: u64) -> u64 {
        self.c1 * size + self.c0
    }
}

#[derive(Debug, Clone)]
pub struct TauBound {
    pub term: Term,
    pub provenance: Provenance,
    pub fit: Option<LinearFit>,
}

/// The initial functions, each realized by a builder machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Initial {
    Zero,
    Succ,
    Proj { n: usize, i: usize },
}

impl Initial {
    pub fn machine(&self) -> TmSpec {
        match *self {
            Initial::Zero => tm::zero_machine(),
            Initial::Succ => tm::successor_machine(),
            Initial::Proj { n, i } => tm::projection_machine(n, i),
        }
    }

    pub fn arity(&self) -> usize {
        match *self {
            Initial::Zero | Initial::Succ => 1,
            Initial::Proj { n, .. } => n,
        }
    }

    /// The quantity the bound is linear in: the argument for `S`, the total
    /// word length `Σ(xᵢ + 1)` for projections.
    pub fn size(&self, xs: &[u64]) -> u64 {
        match self {
            Initial::Zero | Initial::Succ => xs[0],
            Initial::Proj { .. } => xs.iter().map(|x| x + 1).sum(),
        }
    }

    /// All argument tuples with components `≤ max`.
    pub fn sweep(&self, max: u64) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for _ in 0..self.arity() {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..=max).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

/// Number of steps `spec` takes on `xs`.
pub fn measure_steps(spec: &TmSpec, xs: &[u64]) -> Result<u64, TmError> {
    let start = tm::encode_args(xs)?;
    Ok(tm::run_from(spec, start, MEASURE_CAP, false)?.1)
}

fn size_term(which: Initial) -> Term {
    match which {
        Initial::Zero | Initial::Succ => Term::proj(1, 1),
        Initial::Proj { n, .. } => {
            let word = |i| Term::comp(Term::succ(), vec![Term::proj(n, i)]);
            (2..=n).fold(word(1), |acc, i| Term::call("add", vec![acc, word(i)]))
        }
    }
}

fn linear_term(which: Initial, fit: LinearFit) -> Term {
    let n = which.arity();
    let slope = Term::call("mul", vec![prf::konst_u(n, fit.c1), size_term(which)]);
    Term::call("add", vec![slope, prf::konst_u(n, fit.c0)])
}

/// Fits `c1·size + c0` through the two smallest sizes, then doubles `c1`
/// until the line lies above every measured point.
pub fn fit_linear(points: &[(u64, u64)]) -> Result<LinearFit, TauError> {
    let mut sizes: Vec<u64> = points.iter().map(|p| p.0).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let peak = |s: u64| points.iter().filter(|p| p.0 == s).map(|p| p.1).max().unwrap_or(0);
    let (s1, m1) = match sizes.first() {
        Some(&s) => (s, peak(s)),
        None => return Err(TauError::FitFailed("no measurements".into())),
    };
    let mut c1 = match sizes.get(1) {
        Some(&s2) => peak(s2).saturating_sub(m1).div_ceil(s2 - s1),
        None => 0,
    };
    for _ in 0..64 {
        let fit = LinearFit {
            c1,
            c0: m1.saturating_sub(c1 * s1),
        };
        if points.iter().all(|&(s, m)| m <= fit.at(s)) {
            return Ok(fit);
        }
        c1 = (c1 * 2).max(1);
    }
    Err(TauError::FitFailed(format!("slope exceeded {c1}")))
}

/// Step bound for an initial function, verified on all arguments with
/// components `≤ sweep_max`.
pub fn tau_initial(which: Initial, sweep_max: u64) -> Result<TauBound, TauError> {
    if which == Initial::Zero {
        return Ok(TauBound {
            term: prf::konst_u(1, 3),
            provenance: Provenance::Constant,
            fit: None,
        });
    }
    let spec = which.machine();
    let mut points = Vec::new();
    for xs in which.sweep(sweep_max) {
        points.push((which.size(&xs), measure_steps(&spec, &xs)?));
    }
    let fit = fit_linear(&points)?;
    Ok(TauBound {
        term: linear_term(which, fit),
        provenance: Provenance::MeasuredFit,
        fit: Some(fit),
    })
}

/// `τ_F(x̄) = τ_G(H₁(x̄), …, H_m(x̄)) + Σᵢ τ_Hᵢ(x̄)`.
pub fn tau_compose(tau_g: &TauBound, tau_hs: &[TauBound], hs: &[Term], env: &DefEnv) -> Result<TauBound, TauError> {
    let mismatch = |detail: String| {
        TauError::Prf(PrfError::ArityMismatch {
            path: "tau_compose".into(),
            detail,
        })
    };
    if hs.is_empty() || hs.len() != tau_hs.len() {
        return Err(mismatch(format!("{} inner functions with {} bounds", hs.len(), tau_hs.len())));
    }
    let m = arity_check(&tau_g.term, env)?;
    if m != hs.len() {
        return Err(mismatch(format!("outer bound has arity {m} for {} inner functions", hs.len())));
    }
    let n = arity_check(&hs[0], env)?;
    for (h, th) in hs.iter().zip(tau_hs) {
        let (ha, ta) = (arity_check(h, env)?, arity_check(&th.term, env)?);
        if ha != n || ta != n {
            return Err(mismatch(format!("inner arities {ha} and {ta}, expected {n}")));
        }
    }
    let mut term = Term::comp(tau_g.term.clone(), hs.to_vec());
    for th in tau_hs {
        term = Term::call("add", vec![term, th.term.clone()]);
    }
    require_primitive(&term, env)?;
    Ok(TauBound {
        term,
        provenance: Provenance::CompositionRule,
        fit: None,
    })
}

/// `τ_F(x̄, x) = τ_G(x̄) + Σ_{y<x} τ_H(x̄, y, F(x̄, y))`, as a recursion on `x`
/// over the running sum.
pub fn tau_recursion(tau_g: &TauBound, tau_h: &TauBound, f: &Term, env: &DefEnv) -> Result<TauBound, TauError> {
    let n = arity_check(&tau_g.term, env)?;
    let ha = arity_check(&tau_h.term, env)?;
    let fa = arity_check(f, env)?;
    if ha != n + 2 || fa != n + 1 {
        return Err(TauError::Prf(PrfError::ArityMismatch {
            path: "tau_recursion".into(),
            detail: format!("bounds of arity {n} and {ha} for a function of arity {fa}"),
        }));
    }
    let k = n + 2;
    let front: Vec<Term> = (1..=n + 1).map(|i| Term::proj(k, i)).collect();
    let mut h_args = front.clone();
    h_args.push(Term::comp(f.clone(), front));
    let step = Term::call("add", vec![Term::proj(k, k), Term::comp(tau_h.term.clone(), h_args)]);
    let term = Term::rec(tau_g.term.clone(), step);
    arity_check(&term, env)?;
    require_primitive(&term, env)?;
    Ok(TauBound {
        term,
        provenance: Provenance::RecursionRule,
        fit: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub args: Vec<u64>,
    pub measured: u64,
    pub bound: Nat,
}

impl BoundRow {
    pub fn ok(&self) -> bool {
        Nat::from(self.measured) <= self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.ok()).count()
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let args: Vec<String> = r.args.iter().map(u64::to_string).collect();
            let verdict = if r.ok() { "OK" } else { "VIOLATION" };
            writeln!(f, "{}  {}  {}  {}", args.join(","), r.measured, r.bound, verdict)?;
        }
        write!(f, "violations: {} of {}", self.violations(), self.rows.len())
    }
}

fn check_one(spec: &TmSpec, bound: &Term, env: &DefEnv, xs: &[u64]) -> Result<BoundRow, TauError> {
    let measured = measure_steps(spec, xs)?;
    let args: Vec<Nat> = xs.iter().map(|&x| Nat::from(x)).collect();
    let value = FastEvaluator::new(env).eval(bound, &args)?;
    Ok(BoundRow {
        args: xs.to_vec(),
        measured,
        bound: value,
    })
}

/// Compares measured step counts with `bound` on every sample.
pub fn check_bound(spec: &TmSpec, bound: &Term, samples: &[Vec<u64>], env: &DefEnv) -> Result<BoundReport, TauError> {
    check_bound_jobs(spec, bound, samples, env, 1)
}

/// [`check_bound`] spread over `jobs` threads; rows keep the sample order.
pub fn check_bound_jobs(
    spec: &TmSpec,
    bound: &Term,
    samples: &[Vec<u64>],
    env: &DefEnv,
    jobs: usize,
) -> Result<BoundReport, TauError> {
    require_primitive(bound, env)?;
    let rows = if jobs <= 1 {
        samples
            .iter()
            .map(|xs| check_one(spec, bound, env, xs))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| TauError::Threads(e.to_string()))?;
        pool.install(|| {
            samples
                .par_iter()
                .map(|xs| check_one(spec, bound, env, xs))
                .collect::<Result<Vec<_>, _>>()
        })?
    };
    Ok(BoundReport { rows })
}

/// Evaluates a bound at one point, for callers holding plain numbers.
pub fn eval_bound(bound: &TauBound, xs: &[u64], env: &DefEnv) -> Result<u64, TauError> {
    let args: Vec<Nat> = xs.iter().map(|&x| Nat::from(x)).collect();
    let v = FastEvaluator::new(env).eval(&bound.term, &args)?;
    v.to_u64().ok_or(TauError::Eval(EvalError::Overflow))
}

#[cfg(test)]
mod tests;
