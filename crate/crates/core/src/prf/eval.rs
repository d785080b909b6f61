use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};

use super::env::{arity_check, DefEnv};
use super::term::{Node, Term};
use super::{EvalError, PrfError};
use crate::codec::Nat;

/// Default number of schema applications granted to [`eval_honest`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Default iteration ceiling for the scans and recursions of [`FastEvaluator`].
pub const DEFAULT_SCAN_CEILING: u64 = 100_000_000;

fn check_args(term: &Term, args: &[Nat], env: &DefEnv) -> Result<(), EvalError> {
    let arity = arity_check(term, env)?;
    if arity != args.len() {
        return Err(EvalError::Prf(PrfError::ArityMismatch {
            path: "<root>".into(),
            detail: format!("term has arity {arity} but {} arguments given", args.len()),
        }));
    }
    Ok(())
}

fn with_last(args: &[Nat], last: Nat) -> Vec<Nat> {
    let mut v = Vec::with_capacity(args.len() + 1);
    v.extend_from_slice(args);
    v.push(last);
    v
}

/// Evaluates `term` structurally, exactly per the composition, recursion and
/// minimization schemas, without consulting any intrinsic. Every node
/// application consumes one unit of `budget`.
pub fn eval_honest(term: &Term, args: &[Nat], env: &DefEnv, budget: u64) -> Result<Nat, EvalError> {
    check_args(term, args, env)?;
    let mut h = Honest { env, remaining: budget };
    h.eval(term, args)
}

struct Honest<'a> {
    env: &'a DefEnv,
    remaining: u64,
}

impl Honest<'_> {
    fn tick(&mut self) -> Result<(), EvalError> {
        if self.remaining == 0 {
            return Err(EvalError::BudgetExceeded);
        }
        self.remaining -= 1;
        Ok(())
    }

    fn eval(&mut self, term: &Term, args: &[Nat]) -> Result<Nat, EvalError> {
        self.tick()?;
        match term.node() {
            Node::Succ => Ok(&args[0] + 1u32),
            Node::Zero => Ok(Nat::zero()),
            Node::Proj { index, .. } => Ok(args[index - 1].clone()),
            Node::Comp { outer, inner } => {
                let vals = inner
                    .iter()
                    .map(|h| self.eval(h, args))
                    .collect::<Result<Vec<_>, _>>()?;
                self.eval(outer, &vals)
            }
            Node::Rec { base, step } => {
                let (last, front) = args.split_last().expect("recursion has arity >= 2");
                let mut acc = self.eval(base, front)?;
                let mut k = Nat::zero();
                while &k < last {
                    let mut v = with_last(front, k.clone());
                    v.push(acc);
                    acc = self.eval(step, &v)?;
                    k += 1u32;
                }
                Ok(acc)
            }
            Node::BoundedMu { pred, bound } => {
                let limit = self.eval(bound, args)?;
                let mut y = Nat::zero();
                while y <= limit {
                    if !self.eval(pred, &with_last(args, y.clone()))?.is_zero() {
                        return Ok(y);
                    }
                    y += 1u32;
                }
                Ok(Nat::zero())
            }
            Node::Mu { pred } => {
                let mut y = Nat::zero();
                loop {
                    match self.eval(pred, &with_last(args, y.clone())) {
                        Ok(v) if !v.is_zero() => return Ok(y),
                        Ok(_) => y += 1u32,
                        Err(EvalError::BudgetExceeded) => return Err(EvalError::MuDiverged { scanned: y }),
                        Err(e) => return Err(e),
                    }
                }
            }
            Node::Ref(name) => {
                let (_, def) = self
                    .env
                    .lookup(name)
                    .ok_or_else(|| PrfError::UnresolvedRef(name.clone()))?;
                self.eval(&def.term, args)
            }
        }
    }
}

/// Evaluates `term` with intrinsic dispatch and memoization; see [`FastEvaluator`].
pub fn eval_fast(term: &Term, args: &[Nat], env: &DefEnv) -> Result<Nat, EvalError> {
    FastEvaluator::new(env).eval(term, args)
}

/// Accelerated evaluator.
///
/// References with a registered intrinsic run natively. Other references are
/// memoized by `(definition, arguments)`; the cache lives in the evaluator, so
/// an evaluator is reused for related calls and dropped afterwards.
pub struct FastEvaluator<'a> {
    env: &'a DefEnv,
    memo: HashMap<(usize, Vec<Nat>), Nat>,
    scan_ceiling: u64,
}

impl<'a> FastEvaluator<'a> {
    pub fn new(env: &'a DefEnv) -> Self {
        Self {
            env,
            memo: HashMap::new(),
            scan_ceiling: DEFAULT_SCAN_CEILING,
        }
    }

    /// Caps unbounded `MU` scans (reported as [`EvalError::MuDiverged`]) as well
    /// as bounded scans and recursion depths (reported as [`EvalError::ScanLimit`]).
    pub fn with_scan_ceiling(mut self, ceiling: u64) -> Self {
        self.scan_ceiling = ceiling;
        self
    }

    pub fn eval(&mut self, term: &Term, args: &[Nat]) -> Result<Nat, EvalError> {
        check_args(term, args, self.env)?;
        self.go(term, args)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn go(&mut self, term: &Term, args: &[Nat]) -> Result<Nat, EvalError> {
        match term.node() {
            Node::Succ => Ok(&args[0] + 1u32),
            Node::Zero => Ok(Nat::zero()),
            Node::Proj { index, .. } => Ok(args[index - 1].clone()),
            Node::Comp { outer, inner } => {
                let vals = inner
                    .iter()
                    .map(|h| self.go(h, args))
                    .collect::<Result<Vec<_>, _>>()?;
                self.go(outer, &vals)
            }
            Node::Rec { base, step } => {
                let (last, front) = args.split_last().expect("recursion has arity >= 2");
                let steps = last
                    .to_u64()
                    .filter(|&k| k <= self.scan_ceiling)
                    .ok_or(EvalError::ScanLimit)?;
                let mut acc = self.go(base, front)?;
                for k in 0..steps {
                    let mut v = with_last(front, Nat::from(k));
                    v.push(acc);
                    acc = self.go(step, &v)?;
                }
                Ok(acc)
            }
            Node::BoundedMu { pred, bound } => {
                let limit = self.go(bound, args)?;
                let mut y = 0u64;
                while Nat::from(y) <= limit {
                    if y >= self.scan_ceiling {
                        return Err(EvalError::ScanLimit);
                    }
                    if !self.go(pred, &with_last(args, Nat::from(y)))?.is_zero() {
                        return Ok(Nat::from(y));
                    }
                    y += 1;
                }
                Ok(Nat::zero())
            }
            Node::Mu { pred } => {
                for y in 0..self.scan_ceiling {
                    if !self.go(pred, &with_last(args, Nat::from(y)))?.is_zero() {
                        return Ok(Nat::from(y));
                    }
                }
                Err(EvalError::MuDiverged {
                    scanned: Nat::from(self.scan_ceiling),
                })
            }
            Node::Ref(name) => {
                let env = self.env;
                let (index, def) = env
                    .lookup(name)
                    .ok_or_else(|| PrfError::UnresolvedRef(name.clone()))?;
                if let Some(native) = def.intrinsic {
                    return native(args);
                }
                let key = (index, args.to_vec());
                if let Some(v) = self.memo.get(&key) {
                    return Ok(v.clone());
                }
                let v = self.go(&def.term, args)?;
                self.memo.insert(key, v.clone());
                Ok(v)
            }
        }
    }
}
