use indexmap::IndexMap;

use super::term::{Node, Term};
use super::{Classification, EvalError, PrfError};
use crate::codec::Nat;

/// Native implementation of a definition, used by the fast evaluator.
pub type Intrinsic = fn(&[Nat]) -> Result<Nat, EvalError>;

#[derive(Clone)]
pub(crate) struct Def {
    pub(crate) term: Term,
    pub(crate) arity: usize,
    pub(crate) class: Classification,
    pub(crate) intrinsic: Option<Intrinsic>,
}

/// Ordered set of named definitions. Each definition may only reference
/// names defined before it, so the environment is acyclic by construction.
#[derive(Clone, Default)]
pub struct DefEnv {
    defs: IndexMap<String, Def>,
}

impl DefEnv {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `name = term` after checking arities against the definitions so far.
    pub fn define(&mut self, name: &str, term: Term) -> Result<usize, PrfError> {
        if self.defs.contains_key(name) {
            return Err(PrfError::DuplicateDef(name.to_string()));
        }
        let arity = arity_check(&term, self)?;
        let class = classify(&term, self);
        self.defs.insert(
            name.to_string(),
            Def {
                term,
                arity,
                class,
                intrinsic: None,
            },
        );
        Ok(arity)
    }

    /// Registers a native twin for an existing definition.
    pub fn set_intrinsic(&mut self, name: &str, f: Intrinsic) -> Result<(), PrfError> {
        let def = self
            .defs
            .get_mut(name)
            .ok_or_else(|| PrfError::UnresolvedRef(name.to_string()))?;
        def.intrinsic = Some(f);
        Ok(())
    }

    /// Parses `DEF name = term` statements and appends them in order.
    pub fn load(&mut self, text: &str) -> Result<Vec<String>, PrfError> {
        let defs = super::parse::parse_defs(text)?;
        let mut names = Vec::with_capacity(defs.len());
        for (name, term) in defs {
            self.define(&name, term)?;
            names.push(name);
        }
        Ok(names)
    }

    pub fn get(&self, name: &str) -> Option<&Term> {
        self.defs.get(name).map(|d| &d.term)
    }

    pub fn arity_of(&self, name: &str) -> Option<usize> {
        self.defs.get(name).map(|d| d.arity)
    }

    pub fn intrinsic(&self, name: &str) -> Option<Intrinsic> {
        self.defs.get(name).and_then(|d| d.intrinsic)
    }

    pub(crate) fn lookup(&self, name: &str) -> Option<(usize, &Def)> {
        self.defs.get_full(name).map(|(i, _, d)| (i, d))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.defs.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.defs.keys().map(String::as_str)
    }

    /// Renders the definitions whose names appear in `names`, in environment
    /// order, as `DEF` lines.
    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (name, def) in &self.defs {
            if names.iter().any(|n| n == name) {
                out.push_str(&format!("DEF {name} = {}\n", def.term));
            }
        }
        out
    }
}

/// Checks every schema constraint and returns the term's arity.
pub fn arity_check(term: &Term, env: &DefEnv) -> Result<usize, PrfError> {
    let mut path = Vec::new();
    check(term, env, &mut path)
}

fn mismatch(path: &[String], detail: String) -> PrfError {
    let path = if path.is_empty() {
        "<root>".to_string()
    } else {
        path.join(".")
    };
    PrfError::ArityMismatch { path, detail }
}

fn check(term: &Term, env: &DefEnv, path: &mut Vec<String>) -> Result<usize, PrfError> {
    match term.node() {
        Node::Succ | Node::Zero => Ok(1),
        Node::Proj { arity, index } => {
            if *index >= 1 && index <= arity {
                Ok(*arity)
            } else {
                Err(mismatch(path, format!("projection P[{arity},{index}] needs 1 <= i <= n")))
            }
        }
        Node::Ref(name) => env
            .arity_of(name)
            .ok_or_else(|| PrfError::UnresolvedRef(name.clone())),
        Node::Comp { outer, inner } => {
            path.push("C.g".into());
            let m = check(outer, env, path)?;
            path.pop();
            if inner.is_empty() {
                return Err(mismatch(path, "composition needs at least one inner function".into()));
            }
            if m != inner.len() {
                return Err(mismatch(
                    path,
                    format!("outer function has arity {m} but {} inner functions given", inner.len()),
                ));
            }
            let mut n = None;
            for (k, h) in inner.iter().enumerate() {
                path.push(format!("C.h{}", k + 1));
                let a = check(h, env, path)?;
                if a == 0 {
                    return Err(mismatch(path, "inner functions must have arity >= 1".into()));
                }
                path.pop();
                match n {
                    None => n = Some(a),
                    Some(prev) if prev != a => {
                        path.push(format!("C.h{}", k + 1));
                        let err = mismatch(path, format!("inner arity {a} differs from {prev}"));
                        path.pop();
                        return Err(err);
                    }
                    Some(_) => {}
                }
            }
            Ok(n.expect("inner is non-empty"))
        }
        Node::Rec { base, step } => {
            path.push("R.g".into());
            let n = check(base, env, path)?;
            if n == 0 {
                return Err(mismatch(path, "recursion base must have arity >= 1".into()));
            }
            path.pop();
            path.push("R.h".into());
            let a = check(step, env, path)?;
            if a != n + 2 {
                return Err(mismatch(path, format!("step has arity {a}, expected {}", n + 2)));
            }
            path.pop();
            Ok(n + 1)
        }
        Node::BoundedMu { pred, bound } => {
            path.push("BMU.p".into());
            let p = check(pred, env, path)?;
            path.pop();
            path.push("BMU.b".into());
            let b = check(bound, env, path)?;
            path.pop();
            if p != b + 1 {
                return Err(mismatch(
                    path,
                    format!("bounded mu predicate has arity {p}, bound has arity {b}; expected predicate arity {}", b + 1),
                ));
            }
            Ok(b)
        }
        Node::Mu { pred } => {
            path.push("MU.p".into());
            let p = check(pred, env, path)?;
            if p == 0 {
                return Err(mismatch(path, "mu predicate must have arity >= 1".into()));
            }
            path.pop();
            Ok(p - 1)
        }
    }
}

/// Primitive recursive iff no unbounded `MU` is reachable through the term or
/// the definitions it references. Unresolved references are treated as
/// primitive recursive; [`arity_check`] reports them.
pub fn classify(term: &Term, env: &DefEnv) -> Classification {
    if term.contains_mu() {
        return Classification::MuRecursive;
    }
    let mu_ref = term
        .refs()
        .into_iter()
        .any(|name| env.defs.get(name).map(|d| d.class) == Some(Classification::MuRecursive));
    if mu_ref {
        Classification::MuRecursive
    } else {
        Classification::PrimitiveRecursive
    }
}
