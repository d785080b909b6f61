use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::env::{DefEnv, Intrinsic};
use super::EvalError;
use crate::codec::{self, Nat};

const SOURCE: &str = include_str!("stdlib.prf");

/// Results with more bits than this are refused by the intrinsics.
const MAX_RESULT_BITS: u64 = 1 << 32;

fn b(v: bool) -> Nat {
    if v {
        Nat::one()
    } else {
        Nat::zero()
    }
}

fn small(n: &Nat) -> Result<u64, EvalError> {
    n.to_u64().ok_or(EvalError::Overflow)
}

fn sign(n: &Nat) -> Nat {
    b(!n.is_zero())
}

fn pow(base: &Nat, exp: &Nat) -> Result<Nat, EvalError> {
    if base.is_zero() {
        return Ok(b(exp.is_zero()));
    }
    if base.is_one() {
        return Ok(Nat::one());
    }
    let e = small(exp)?;
    if e.saturating_mul(base.bits()) > MAX_RESULT_BITS {
        return Err(EvalError::Overflow);
    }
    Ok(num_traits::pow::pow(base.clone(), e as usize))
}

fn modulo(x: &Nat, d: &Nat) -> Nat {
    if d.is_zero() {
        x.clone()
    } else {
        x.mod_floor(d)
    }
}

fn divide(x: &Nat, d: &Nat) -> Nat {
    if d.is_zero() {
        Nat::zero()
    } else {
        x.div_floor(d)
    }
}

fn is_prime(y: &Nat) -> Result<bool, EvalError> {
    // Trial division; larger inputs are refused rather than guessed.
    let y = y.to_u64().filter(|&y| y < 1 << 40).ok_or(EvalError::Overflow)?;
    if y < 2 {
        return Ok(false);
    }
    let mut d = 2u64;
    while d * d <= y {
        if y % d == 0 {
            return Ok(false);
        }
        d += 1;
    }
    Ok(true)
}

fn prime_index(i: &Nat) -> Result<usize, EvalError> {
    i.to_usize()
        .filter(|&i| i < 50_000_000)
        .ok_or(EvalError::Overflow)
}

fn exponent_of(n: &Nat, i: &Nat) -> Result<Nat, EvalError> {
    if n.is_zero() {
        return Ok(Nat::zero());
    }
    let i = prime_index(i)?;
    Ok(Nat::from(codec::exponent_of(n, i).expect("n is nonzero")))
}

fn sigma2(x: &Nat, y: &Nat) -> Result<Nat, EvalError> {
    let x = small(x)?;
    if x > MAX_RESULT_BITS {
        return Err(EvalError::Overflow);
    }
    Ok(codec::sigma2_u(x, y))
}

fn sigma2_x(z: &Nat) -> Nat {
    Nat::from(codec::sigma2_inv_u(z).0)
}

fn sigma2_y(z: &Nat) -> Nat {
    codec::sigma2_inv_u(z).1
}

macro_rules! native {
    ($name:literal, |$a:ident| $body:expr) => {
        ($name, (|$a: &[Nat]| -> Result<Nat, EvalError> { Ok($body) }) as Intrinsic)
    };
    ($name:literal, try |$a:ident| $body:expr) => {
        ($name, (|$a: &[Nat]| -> Result<Nat, EvalError> { $body }) as Intrinsic)
    };
}

/// Native twins of every library definition, by name.
pub fn intrinsics() -> Vec<(&'static str, Intrinsic)> {
    vec![
        native!("add", |a| &a[0] + &a[1]),
        native!("mul", |a| &a[0] * &a[1]),
        native!("pow", try |a| pow(&a[0], &a[1])),
        native!("pred", |a| codec::trunc_sub(&a[0], &Nat::one())),
        native!("sub", |a| codec::trunc_sub(&a[0], &a[1])),
        native!("sign", |a| sign(&a[0])),
        native!("nsign", |a| b(a[0].is_zero())),
        native!("absdiff", |a| if a[0] > a[1] { &a[0] - &a[1] } else { &a[1] - &a[0] }),
        native!("eq", |a| b(a[0] == a[1])),
        native!("le", |a| b(a[0] <= a[1])),
        native!("lt", |a| b(a[0] < a[1])),
        native!("and", |a| b(!a[0].is_zero() && !a[1].is_zero())),
        native!("or", |a| b(!a[0].is_zero() || !a[1].is_zero())),
        native!("cond", |a| if a[0].is_zero() { a[2].clone() } else { a[1].clone() }),
        native!("mod", |a| modulo(&a[0], &a[1])),
        native!("div", |a| divide(&a[0], &a[1])),
        native!("divides", |a| b(modulo(&a[1], &a[0]).is_zero())),
        native!("isprime", try |a| is_prime(&a[0]).map(b)),
        native!("prime", try |a| Ok(codec::prime_nat(prime_index(&a[0])?))),
        native!("exponent_of", try |a| exponent_of(&a[0], &a[1])),
        native!("prime_pow", try |a| pow(&codec::prime_nat(prime_index(&a[0])?), &a[1])),
        native!("sigma2", try |a| sigma2(&a[0], &a[1])),
        native!("sigma2_x", |a| sigma2_x(&a[0])),
        native!("sigma2_y", |a| sigma2_y(&a[0])),
        native!("sigma3", try |a| sigma2(&sigma2(&a[0], &a[1])?, &a[2])),
        native!("sigma3_x", |a| sigma2_x(&sigma2_x(&a[0]))),
        native!("sigma3_y", |a| sigma2_y(&sigma2_x(&a[0]))),
        native!("sigma3_z", |a| sigma2_y(&a[0])),
    ]
}

/// Builds the standard library environment with every entry's intrinsic
/// twin registered.
pub fn stdlib() -> DefEnv {
    static ENV: OnceLock<DefEnv> = OnceLock::new();
    ENV.get_or_init(|| {
        let mut env = DefEnv::new();
        let names = env.load(SOURCE).expect("standard library is well-formed");
        let natives = intrinsics();
        for name in &names {
            let (_, f) = natives
                .iter()
                .find(|(n, _)| n == name)
                .unwrap_or_else(|| panic!("no intrinsic twin for {name}"));
            env.set_intrinsic(name, *f).expect("name was just defined");
        }
        env
    })
    .clone()
}

/// Names of the standard library entries, in definition order.
pub fn stdlib_names() -> Vec<String> {
    stdlib().names().map(str::to_string).collect()
}

/// The library's source text, as loaded by [`stdlib`].
pub fn stdlib_source() -> &'static str {
    SOURCE
}
