//! Kleene normal form for Turing-computable functions.
//!
//! For a machine with number `t`, `K(t, x̄, z)` is the number of the `z`-th
//! configuration of its run on `x̄` (frozen once the run has halted), the
//! predicate `T(t, x̄, y)` says that `y` pairs a step count `r` with a terminal
//! configuration number equal to `K(t, x̄, r)`, and `U(y)` reads the output
//! numeral off the configuration in `y`. The computed function is then
//! `U(μy. T(t, x̄, y))`.
//!
//! This module evaluates those functions natively. [`compile`] builds the
//! same functions as primitive recursive terms.

pub mod compile;

use std::cell::RefCell;

use num_bigint::RandBigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use compile::{
    kleene_env, kleene_names, machine_code_term, step_bound_to_y_bound, theorem1_compile, Compiled, YBound,
};

use crate::codec::{self, Nat};
use crate::prf::{EvalError, PrfError};
use crate::tm::{self, Configuration, TmError, TmSpec};

/// Step cap for simulations that search for a halting configuration.
pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;
/// Smallest number of sampled `y < y*` a witness check performs.
pub const MIN_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KleeneError {
    #[error(transparent)]
    Tm(#[from] TmError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Prf(#[from] PrfError),
    #[error("linear search found no witness below {0}")]
    BudgetExceeded(u64),
    #[error("witness check failed: {0}")]
    WitnessRefuted(String),
}

/// The least `y` with `T(t, x̄, y)`, split as `y = σ₂(r, s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub r: u64,
    pub s: Nat,
    pub y: Nat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Tries `y = 0, 1, 2, …` and gives up after `budget` candidates.
    Linear { budget: u64 },
    /// Builds the witness by simulation and cross-checks it; see [`mu_search`].
    WitnessChecked { seed: u64, samples: usize },
}

impl Default for SearchMode {
    fn default() -> Self {
        SearchMode::WitnessChecked {
            seed: 0,
            samples: MIN_SAMPLES,
        }
    }
}

thread_local! {
    static LAST_MACHINE: RefCell<Option<(Nat, TmSpec)>> = const { RefCell::new(None) };
}

/// [`tm::decode_machine`], remembering the last machine decoded on this thread.
fn decode_cached(t: &Nat) -> Result<TmSpec, TmError> {
    LAST_MACHINE.with(|last| {
        if let Some((code, spec)) = last.borrow().as_ref() {
            if code == t {
                return Ok(spec.clone());
            }
        }
        let spec = tm::decode_machine(t)?;
        *last.borrow_mut() = Some((t.clone(), spec.clone()));
        Ok(spec)
    })
}

/// A run that is simulated only as far as it has been asked about.
struct LazyRun {
    spec: TmSpec,
    configs: Vec<Configuration>,
    halted: bool,
}

impl LazyRun {
    fn new(t: &Nat, xs: &[u64]) -> Result<Self, TmError> {
        let spec = decode_cached(t)?;
        let start = tm::encode_args(xs)?;
        Ok(Self {
            spec,
            configs: vec![start],
            halted: false,
        })
    }

    /// Configuration at step `z`, frozen at the terminal one.
    fn at(&mut self, z: u64) -> &Configuration {
        while !self.halted && (self.configs.len() as u64) <= z {
            let last = self.configs.last().expect("run starts with one configuration");
            match tm::step(&self.spec, last) {
                Some(next) => self.configs.push(next),
                None => self.halted = true,
            }
        }
        let i = (z as usize).min(self.configs.len() - 1);
        &self.configs[i]
    }

    fn halting_step(&mut self, max_steps: u64) -> Result<u64, TmError> {
        let _ = self.at(max_steps);
        if self.halted {
            Ok(self.configs.len() as u64 - 1)
        } else {
            Err(TmError::NonTermination(max_steps))
        }
    }

    fn t_pred(&mut self, y: &Nat) -> bool {
        let (r, s) = codec::sigma2_inv_u(y);
        let cfg = self.at(r).clone();
        s == tm::encode_config(&cfg) && tm::is_terminal(&self.spec, &cfg)
    }
}

/// `K(t, x̄, z)`: number of the `z`-th configuration of machine `t` on `xs`.
pub fn kfun(t: &Nat, xs: &[u64], z: u64) -> Result<Nat, KleeneError> {
    let mut run = LazyRun::new(t, xs)?;
    Ok(tm::encode_config(run.at(z)))
}

/// `T(t, x̄, y)` as 0 or 1. Anything that does not decode is simply false.
pub fn t_pred(t: &Nat, xs: &[u64], y: &Nat) -> u8 {
    match LazyRun::new(t, xs) {
        Ok(mut run) => run.t_pred(y) as u8,
        Err(_) => 0,
    }
}

/// `U(y)`: the output numeral of the configuration paired into `y`.
pub fn u_extract(y: &Nat) -> Result<Nat, KleeneError> {
    let (_, s) = codec::sigma2_inv_u(y);
    Ok(tm::decode_config_raw(&s)?.output_numeral()?)
}

/// Finds the least `y` with `T(t, x̄, y)`.
///
/// In witness-checked mode the machine is simulated to its first terminal
/// step `r*` and `y* = σ₂(r*, K(r*))`. Nothing smaller can satisfy `T`:
/// `T(σ₂(r, s))` needs `s = K(r)` with `K(r)` terminal, hence `r ≥ r*`, and
/// then `s = K(r*)` because the sequence is frozen from `r*` on, so
/// `σ₂(r, s) ≥ σ₂(r*, s) = y*`. The checks below (every earlier step and
/// a uniform sample of `y < y*`) guard the implementation, not the argument.
pub fn mu_search(t: &Nat, xs: &[u64], mode: SearchMode) -> Result<Witness, KleeneError> {
    mu_search_capped(t, xs, mode, DEFAULT_MAX_STEPS)
}

/// [`mu_search`] with an explicit simulation cap.
pub fn mu_search_capped(t: &Nat, xs: &[u64], mode: SearchMode, max_steps: u64) -> Result<Witness, KleeneError> {
    let mut run = LazyRun::new(t, xs)?;
    match mode {
        SearchMode::Linear { budget } => {
            for v in 0..budget {
                let y = Nat::from(v);
                if run.t_pred(&y) {
                    let (r, s) = codec::sigma2_inv_u(&y);
                    return Ok(Witness { r, s, y });
                }
            }
            Err(KleeneError::BudgetExceeded(budget))
        }
        SearchMode::WitnessChecked { seed, samples } => {
            let r = run.halting_step(max_steps)?;
            let s = tm::encode_config(run.at(r));
            let y = codec::sigma2_u(r, &s);
            if !run.t_pred(&y) {
                return Err(KleeneError::WitnessRefuted(format!("T fails at the witness r = {r}")));
            }
            for earlier in 0..r {
                let probe = codec::sigma2_u(earlier, &tm::encode_config(run.at(earlier)));
                if run.t_pred(&probe) {
                    return Err(KleeneError::WitnessRefuted(format!("T holds at earlier step {earlier}")));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples.max(MIN_SAMPLES) {
                let probe = rng.gen_biguint_below(&y);
                if run.t_pred(&probe) {
                    return Err(KleeneError::WitnessRefuted(format!("T holds at sampled y = {probe}")));
                }
            }
            Ok(Witness { r, s, y })
        }
    }
}

/// `U(μy. T(t, x̄, y))`.
pub fn theorem_b0_eval(t: &Nat, xs: &[u64]) -> Result<Nat, KleeneError> {
    let w = mu_search(t, xs, SearchMode::default())?;
    u_extract(&w.y)
}

/// Envelope for every configuration reachable in `r` steps from the
/// initial configuration on `xs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop1Bounds {
    /// Largest reachable cell index.
    pub a_max: u64,
    pub cells_max: u64,
    pub b_max: Nat,
    pub c_max: usize,
}

impl Prop1Bounds {
    /// Checks head position, occupied cells, tape number and state.
    pub fn admits(&self, cfg: &Configuration) -> bool {
        cfg.head <= self.a_max
            && cfg.occupied() as u64 <= self.cells_max
            && tm::encode_tape(cfg) <= self.b_max
            && cfg.state <= self.c_max
    }
}

/// The head moves at most one cell per step and each step writes at most one
/// cell, so after `r` steps every non-blank cell and the head lie within
/// `span + r` cells of the anchor, and at most `r` new cells are occupied.
pub fn prop1_bounds(spec: &TmSpec, xs: &[u64], r: u64) -> Result<Prop1Bounds, TmError> {
    let start = tm::encode_args(xs)?;
    let reach = start.span() + r;
    let a_max = 2 * reach;
    let mut b_max = Nat::from(1u32);
    for j in 0..=a_max {
        b_max *= num_traits::pow::pow(codec::prime_nat(j as usize), spec.alphabet() as usize);
    }
    Ok(Prop1Bounds {
        a_max,
        cells_max: start.occupied() as u64 + r,
        b_max,
        c_max: spec.states(),
    })
}
