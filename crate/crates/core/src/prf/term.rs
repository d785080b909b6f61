use std::fmt;
use std::sync::Arc;

/// A primitive-recursive / μ-recursive function term.
///
/// Cloning is cheap: subterms are shared behind an [`Arc`], so a term built
/// once can be reused inside many larger terms and handed across threads.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term(Arc<Node>);

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum Node {
    /// `S(x) = x + 1`
    Succ,
    /// `Z(x) = 0`
    Zero,
    /// `P[n,i](x₁, …, xₙ) = xᵢ`, with `1 ≤ i ≤ n`.
    Proj { arity: usize, index: usize },
    /// `C[g; h₁, …, hₘ](x̄) = g(h₁(x̄), …, hₘ(x̄))`
    Comp { outer: Term, inner: Vec<Term> },
    /// Recursion on the final argument:
    /// `R[g; h](x̄, 0) = g(x̄)`, `R[g; h](x̄, k+1) = h(x̄, k, R[g; h](x̄, k))`.
    Rec { base: Term, step: Term },
    /// `BMU[p; b](x̄)`: least `y ≤ b(x̄)` with `p(x̄, y) ≠ 0`, or 0 if there is none.
    BoundedMu { pred: Term, bound: Term },
    /// `MU[p](x̄)`: least `y` with `p(x̄, y) ≠ 0`; undefined when no such `y` exists.
    Mu { pred: Term },
    /// A named definition from a [`DefEnv`](super::DefEnv).
    Ref(String),
}

impl Term {
    fn wrap(node: Node) -> Self {
        Term(Arc::new(node))
    }

    pub fn succ() -> Self {
        Self::wrap(Node::Succ)
    }

    pub fn zero() -> Self {
        Self::wrap(Node::Zero)
    }

    pub fn proj(arity: usize, index: usize) -> Self {
        Self::wrap(Node::Proj { arity, index })
    }

    pub fn comp(outer: Term, inner: Vec<Term>) -> Self {
        Self::wrap(Node::Comp { outer, inner })
    }

    pub fn rec(base: Term, step: Term) -> Self {
        Self::wrap(Node::Rec { base, step })
    }

    pub fn bounded_mu(pred: Term, bound: Term) -> Self {
        Self::wrap(Node::BoundedMu { pred, bound })
    }

    pub fn mu(pred: Term) -> Self {
        Self::wrap(Node::Mu { pred })
    }

    pub fn reference(name: impl Into<String>) -> Self {
        Self::wrap(Node::Ref(name.into()))
    }

    /// `C[name; args…]`
    pub fn call(name: &str, args: Vec<Term>) -> Self {
        Self::comp(Self::reference(name), args)
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    /// Address of the shared node, usable as a cheap identity key.
    pub fn id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// Number of AST nodes, counting shared subterms once per occurrence.
    pub fn size(&self) -> usize {
        match self.node() {
            Node::Succ | Node::Zero | Node::Proj { .. } | Node::Ref(_) => 1,
            Node::Comp { outer, inner } => {
                1 + outer.size() + inner.iter().map(Term::size).sum::<usize>()
            }
            Node::Rec { base, step } => 1 + base.size() + step.size(),
            Node::BoundedMu { pred, bound } => 1 + pred.size() + bound.size(),
            Node::Mu { pred } => 1 + pred.size(),
        }
    }

    /// Names of every definition referenced directly by this term.
    pub fn refs(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_refs(&mut out);
        out
    }

    fn collect_refs<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self.node() {
            Node::Succ | Node::Zero | Node::Proj { .. } => {}
            Node::Ref(name) => out.push(name),
            Node::Comp { outer, inner } => {
                outer.collect_refs(out);
                inner.iter().for_each(|h| h.collect_refs(out));
            }
            Node::Rec { base, step } => {
                base.collect_refs(out);
                step.collect_refs(out);
            }
            Node::BoundedMu { pred, bound } => {
                pred.collect_refs(out);
                bound.collect_refs(out);
            }
            Node::Mu { pred } => pred.collect_refs(out),
        }
    }

    /// True when an unbounded `MU` node occurs syntactically in this term
    /// (references are not followed).
    pub fn contains_mu(&self) -> bool {
        match self.node() {
            Node::Mu { .. } => true,
            Node::Succ | Node::Zero | Node::Proj { .. } | Node::Ref(_) => false,
            Node::Comp { outer, inner } => outer.contains_mu() || inner.iter().any(Term::contains_mu),
            Node::Rec { base, step } => base.contains_mu() || step.contains_mu(),
            Node::BoundedMu { pred, bound } => pred.contains_mu() || bound.contains_mu(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Succ => f.write_str("S"),
            Node::Zero => f.write_str("Z"),
            Node::Proj { arity, index } => write!(f, "P[{arity},{index}]"),
            Node::Comp { outer, inner } => {
                write!(f, "C[{outer}; ")?;
                for (k, h) in inner.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{h}")?;
                }
                f.write_str("]")
            }
            Node::Rec { base, step } => write!(f, "R[{base}; {step}]"),
            Node::BoundedMu { pred, bound } => write!(f, "BMU[{pred}; {bound}]"),
            Node::Mu { pred } => write!(f, "MU[{pred}]"),
            Node::Ref(name) => f.write_str(name),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
