//! The Kleene functions as primitive recursive terms, and the compiler that
//! turns a machine with a primitive recursive step bound into a primitive
//! recursive term for the function it computes.

use crate::prf::{self, arity_check, konst_u, require_primitive, DefEnv, PrfError, Term};
use crate::tm::{Action, TmSpec};

const MACHINE_SOURCE: &str = include_str!("machine.prf");

fn p(n: usize, i: usize) -> Term {
    Term::proj(n, i)
}

fn call(name: &str, args: Vec<Term>) -> Term {
    Term::call(name, args)
}

fn init_name(n: usize) -> String {
    format!("init_cfg_{n}")
}

fn kfun_name(n: usize) -> String {
    format!("kfun_{n}")
}

fn t_name(n: usize) -> String {
    format!("T_{n}")
}

/// Names that [`kleene_env`] adds on top of the standard library for arity `n`.
pub fn kleene_names(n: usize) -> Vec<String> {
    let mut names: Vec<String> = prf::parse_defs(MACHINE_SOURCE)
        .expect("machine library parses")
        .into_iter()
        .map(|(name, _)| name)
        .collect();
    names.extend([init_name(n), kfun_name(n), t_name(n)]);
    names
}

/// `init_cfg_n(x̄)`: number of the initial configuration on `x̄`.
fn init_cfg_term(n: usize) -> Term {
    let one = konst_u(n, 1);
    let mut offset = one.clone();
    let mut tape = one.clone();
    for i in 1..=n {
        let x = p(n, i);
        let run = call("stroke_run", vec![offset.clone(), Term::comp(Term::succ(), vec![x.clone()])]);
        tape = if i == 1 { run } else { call("mul", vec![tape, run]) };
        let width = Term::comp(Term::succ(), vec![Term::comp(Term::succ(), vec![x])]);
        offset = call("add", vec![offset, width]);
    }
    let head = call("twice", vec![call("pred", vec![offset])]);
    call("mk_cfg", vec![head, one, tape])
}

/// Adds the arity-`n` definitions `init_cfg_n`, `kfun_n` and `T_n` to `env`,
/// which must already contain the machine library.
fn add_arity(env: &mut DefEnv, n: usize) -> Result<(), PrfError> {
    if env.contains(&t_name(n)) {
        return Ok(());
    }
    env.define(&init_name(n), init_cfg_term(n))?;
    // kfun_n(t, x̄, z) by recursion on z.
    let base = call(&init_name(n), (2..=n + 1).map(|i| p(n + 1, i)).collect());
    let step = call("next_cfg", vec![p(n + 3, 1), p(n + 3, n + 3)]);
    env.define(&kfun_name(n), Term::rec(base, step))?;
    // T_n(t, x̄, y) with y = σ₂(r, s): s = kfun_n(t, x̄, r) and s is terminal.
    let m = n + 2;
    let y = p(m, m);
    let s = call("sigma2_y", vec![y.clone()]);
    let r = call("sigma2_x", vec![y]);
    let mut kargs: Vec<Term> = (1..=n + 1).map(|i| p(m, i)).collect();
    kargs.push(r);
    let same = call("eq", vec![s.clone(), call(&kfun_name(n), kargs)]);
    let done = call("terminal", vec![p(m, 1), s]);
    env.define(&t_name(n), call("and", vec![same, done]))?;
    Ok(())
}

/// The standard library plus the machine library and the arity-`n` Kleene
/// definitions.
pub fn kleene_env(n: usize) -> Result<DefEnv, PrfError> {
    let mut env = prf::stdlib();
    env.load(MACHINE_SOURCE)?;
    add_arity(&mut env, n)?;
    Ok(env)
}

fn product(mut factors: Vec<Term>, arity: usize) -> Term {
    if factors.is_empty() {
        return konst_u(arity, 1);
    }
    while factors.len() > 1 {
        let mut next = Vec::with_capacity(factors.len().div_ceil(2));
        let mut it = factors.into_iter();
        while let Some(a) = it.next() {
            next.push(match it.next() {
                Some(b) => call("mul", vec![a, b]),
                None => a,
            });
        }
        factors = next;
    }
    factors.pop().expect("one factor left")
}

/// Constant `arity`-ary term whose value is the machine's Gödel number, built
/// as `σ₂(M, σ₂(N, Π prime_pow(slot, code)))`.
pub fn machine_code_term(spec: &TmSpec, arity: usize) -> Term {
    let m = spec.states() as u64;
    let n = spec.alphabet() as u64;
    let factors = spec
        .transitions()
        .map(|((q, s), (act, next))| {
            let act = match act {
                Action::Write(j) => j as u64,
                Action::Left => n + 1,
                Action::Right => n + 2,
            };
            let slot = (q as u64 - 1) * (n + 1) + s as u64;
            let code = 1 + act * m + (next as u64 - 1);
            call("prime_pow", vec![konst_u(arity, slot), konst_u(arity, code)])
        })
        .collect();
    let table = product(factors, arity);
    let inner = call("sigma2", vec![konst_u(arity, n), table]);
    call("sigma2", vec![konst_u(arity, m), inner])
}

/// The bound on the least witness `y`, with its components exposed.
#[derive(Debug, Clone)]
pub struct YBound {
    /// Largest cell index the head or the tape can reach: `2(span + B)`.
    pub j: Term,
    pub a_bound: Term,
    /// Overbound for the tape number, from `prime(j) ≤ 2^(2^j)`.
    pub b_bound: Term,
    pub s_bound: Term,
    pub y: Term,
}

/// Turns an `n`-ary step bound `B` into a bound on `σ₂(r, s)` for every run of
/// `spec` that halts within `B(x̄)` steps, where `span = Σxᵢ + 2n` is the
/// extent of the initial tape:
///
/// ```text
/// J       = 2(span + B)
/// a_bound = J + 2
/// b_bound = (2^(2^J))^(N(J + 1))
/// s_bound = σ₂(a_bound, σ₂(M, b_bound))
/// Y       = σ₂(B, s_bound)
/// ```
pub fn step_bound_to_y_bound(bound: &Term, spec: &TmSpec, env: &DefEnv) -> Result<YBound, PrfError> {
    require_primitive(bound, env)?;
    let n = arity_check(bound, env)?;
    let mut span = konst_u(n, 2 * n as u64);
    for i in 1..=n {
        span = call("add", vec![span, p(n, i)]);
    }
    let j = call("twice", vec![call("add", vec![span, bound.clone()])]);
    let a_bound = Term::comp(Term::succ(), vec![Term::comp(Term::succ(), vec![j.clone()])]);
    let two = konst_u(n, 2);
    let cells = call("pow", vec![two.clone(), call("pow", vec![two, j.clone()])]);
    let exponent = call(
        "mul",
        vec![konst_u(n, spec.alphabet() as u64), Term::comp(Term::succ(), vec![j.clone()])],
    );
    let b_bound = call("pow", vec![cells, exponent]);
    let s_bound = call(
        "sigma2",
        vec![
            a_bound.clone(),
            call("sigma2", vec![konst_u(n, spec.states() as u64), b_bound.clone()]),
        ],
    );
    let y = call("sigma2", vec![bound.clone(), s_bound.clone()]);
    Ok(YBound {
        j,
        a_bound,
        b_bound,
        s_bound,
        y,
    })
}

/// Output of [`theorem1_compile`].
#[derive(Clone)]
pub struct Compiled {
    /// `F(x̄) = U(μy ≤ Y(x̄). T(t, x̄, y))`.
    pub term: Term,
    /// `T(t, x̄, y)` with the machine number fixed, arity `n + 1`.
    pub t_term: Term,
    /// `U(y)`.
    pub u_term: Term,
    pub y_bound: YBound,
    pub arity: usize,
    /// Environment in which all of the above are defined.
    pub env: DefEnv,
}

impl Compiled {
    /// The definitions beyond the standard library followed by
    /// `DEF F = …`, loadable on top of the standard library.
    pub fn render(&self) -> String {
        let mut out = String::from("# Load on top of the standard library.\n");
        out.push_str(&self.env.render(&kleene_names(self.arity)));
        out.push_str(&format!("DEF F = {}\n", self.term));
        out
    }
}

/// Builds a primitive recursive term for the function computed by `spec`,
/// given a primitive recursive bound `B` on its running time.
pub fn theorem1_compile(spec: &TmSpec, bound: &Term) -> Result<Compiled, PrfError> {
    let probe = prf::stdlib();
    let n = arity_check(bound, &probe)?;
    let env = kleene_env(n)?;
    let y_bound = step_bound_to_y_bound(bound, spec, &env)?;
    let m = n + 1;
    let mut targs = vec![machine_code_term(spec, m)];
    targs.extend((1..=m).map(|i| p(m, i)));
    let t_term = call(&t_name(n), targs);
    let u_term = Term::reference("U");
    let term = Term::comp(u_term.clone(), vec![Term::bounded_mu(t_term.clone(), y_bound.y.clone())]);
    arity_check(&term, &env)?;
    require_primitive(&term, &env)?;
    Ok(Compiled {
        term,
        t_term,
        u_term,
        y_bound,
        arity: n,
        env,
    })
}

