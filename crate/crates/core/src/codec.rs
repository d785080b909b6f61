//! Natural-number primitives shared by every encoding in the crate: the prime
//! sequence, prime-exponent extraction, truncated subtraction and the
//! σ-pairing functions `σ₂(x, y) = 2^x·(2y+1) ∸ 1` and `σ₃(x, y, z) = σ₂(σ₂(x, y), z)`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision natural number.
pub type Nat = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("prime exponent of zero is undefined")]
    ZeroInput,
    #[error("exponent {0} does not fit in a machine word")]
    ExponentTooLarge(Nat),
}

fn prime_table() -> &'static RwLock<Vec<u64>> {
    static TABLE: OnceLock<RwLock<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![2, 3, 5, 7, 11, 13]))
}

/// The `i`-th prime, zero-based: `prime(0) = 2`, `prime(1) = 3`, ...
pub fn prime(i: usize) -> u64 {
    {
        let table = prime_table().read().expect("prime table poisoned");
        if let Some(&p) = table.get(i) {
            return p;
        }
    }
    let mut table = prime_table().write().expect("prime table poisoned");
    let mut candidate = *table.last().expect("table is seeded") + 2;
    while table.len() <= i {
        let is_prime = table
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| candidate % p != 0);
        if is_prime {
            table.push(candidate);
        }
        candidate += 2;
    }
    table[i]
}

/// `prime(i)` as a [`Nat`].
pub fn prime_nat(i: usize) -> Nat {
    Nat::from(prime(i))
}

/// Largest `e` such that `prime(i)^e` divides `n`.
pub fn exponent_of(n: &Nat, i: usize) -> Result<u64, CodecError> {
    if n.is_zero() {
        return Err(CodecError::ZeroInput);
    }
    Ok(strip_prime(n, i).0)
}

/// Splits `n ≥ 1` as `prime(i)^e · rest`, returning `(e, rest)`.
pub(crate) fn strip_prime(n: &Nat, i: usize) -> (u64, Nat) {
    debug_assert!(!n.is_zero());
    if i == 0 {
        let e = n.trailing_zeros().unwrap_or(0);
        return (e, n >> e);
    }
    let p = prime(i);
    // Strip the largest power of p that fits a machine word first.
    let (mut chunk, mut k) = (p, 1u64);
    while let Some(next) = chunk.checked_mul(p) {
        chunk = next;
        k += 1;
    }
    let mut rest = n.clone();
    let mut e = 0;
    for (d, w) in [(chunk, k), (p, 1)] {
        while (&rest % d).is_zero() {
            rest /= d;
            e += w;
        }
    }
    (e, rest)
}

/// `max(x − y, 0)`.
pub fn trunc_sub(x: &Nat, y: &Nat) -> Nat {
    if x > y {
        x - y
    } else {
        Nat::zero()
    }
}

/// `σ₂(x, y) = 2^x·(2y + 1) − 1`. The shift amount `x` must fit in a `u64`.
pub fn sigma2(x: &Nat, y: &Nat) -> Result<Nat, CodecError> {
    let shift = x
        .to_u64()
        .ok_or_else(|| CodecError::ExponentTooLarge(x.clone()))?;
    Ok(sigma2_u(shift, y))
}

/// [`sigma2`] with a machine-word first component; never fails.
pub fn sigma2_u(x: u64, y: &Nat) -> Nat {
    let odd: Nat = (y << 1u32) + 1u32;
    (odd << x) - 1u32
}

/// Exact inverse of σ₂, computed from the factorization of `z + 1`.
pub fn sigma2_inv(z: &Nat) -> (Nat, Nat) {
    let (x, y) = sigma2_inv_u(z);
    (Nat::from(x), y)
}

/// [`sigma2_inv`] returning the first component as a `u64`.
///
/// The first component is the number of trailing zero bits of `z + 1`, which is
/// always smaller than the bit length of `z + 1`.
pub fn sigma2_inv_u(z: &Nat) -> (u64, Nat) {
    let succ = z + 1u32;
    let x = succ.trailing_zeros().expect("z + 1 is nonzero");
    let odd = succ >> x;
    (x, odd >> 1u32)
}

/// `σ₃(x, y, z) = σ₂(σ₂(x, y), z)`.
pub fn sigma3(x: &Nat, y: &Nat, z: &Nat) -> Result<Nat, CodecError> {
    sigma2(&sigma2(x, y)?, z)
}

/// Exact inverse of σ₃.
pub fn sigma3_inv(w: &Nat) -> (Nat, Nat, Nat) {
    let (xy, z) = sigma2_inv(w);
    let (x, y) = sigma2_inv(&xy);
    (x, y, z)
}

#[cfg(test)]
pub(crate) fn nat(v: u64) -> Nat {
    Nat::from(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: naive trial division over every candidate.
    fn naive_primes(count: usize) -> Vec<u64> {
        let mut out = Vec::new();
        let mut n = 2u64;
        while out.len() < count {
            if (2..n).all(|d| n % d != 0) {
                out.push(n);
            }
            n += 1;
        }
        out
    }

    #[test]
    fn prime_examples() {
        assert_eq!(prime(0), 2);
        assert_eq!(prime(4), 11);
        assert_eq!(prime(12), 41);
    }

    #[test]
    fn prime_matches_naive_sequence() {
        let oracle = naive_primes(300);
        for (i, p) in oracle.iter().enumerate() {
            assert_eq!(prime(i), *p, "prime({i})");
        }
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(exponent_of(&nat(1), 0), Ok(0));
        assert_eq!(exponent_of(&nat(55), 2), Ok(1));
        assert_eq!(exponent_of(&nat(1458), 1), Ok(6));
        assert_eq!(exponent_of(&nat(0), 3), Err(CodecError::ZeroInput));
    }

    #[test]
    fn trunc_sub_examples() {
        assert_eq!(trunc_sub(&nat(5), &nat(3)), nat(2));
        assert_eq!(trunc_sub(&nat(3), &nat(5)), nat(0));
        assert_eq!(trunc_sub(&nat(0), &nat(0)), nat(0));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma2(&nat(0), &nat(0)).unwrap(), nat(0));
        assert_eq!(sigma2(&nat(2), &nat(1)).unwrap(), nat(11));
        assert_eq!(sigma2(&nat(1), &nat(2)).unwrap(), nat(9));
        assert_eq!(sigma2_inv(&nat(0)), (nat(0), nat(0)));
        assert_eq!(sigma2_inv(&nat(9)), (nat(1), nat(2)));
        assert_eq!(sigma2_inv(&nat(11)), (nat(2), nat(1)));
        assert_eq!(sigma3(&nat(0), &nat(0), &nat(0)).unwrap(), nat(0));
        assert_eq!(sigma3(&nat(0), &nat(1), &nat(0)).unwrap(), nat(3));
        assert_eq!(sigma3(&nat(1), &nat(1), &nat(1)).unwrap(), nat(95));
        assert_eq!(sigma3_inv(&nat(95)), (nat(1), nat(1), nat(1)));
    }

    #[test]
    fn sigma2_rejects_huge_shift() {
        let huge = Nat::from(u64::MAX) + 1u32;
        assert!(matches!(
            sigma2(&huge, &nat(0)),
            Err(CodecError::ExponentTooLarge(_))
        ));
    }

    #[test]
    fn sigma2_roundtrip_pairs_below_100() {
        for x in 0..100u64 {
            for y in 0..100u64 {
                let z = sigma2(&nat(x), &nat(y)).unwrap();
                assert_eq!(sigma2_inv(&z), (nat(x), nat(y)));
            }
        }
    }

    #[test]
    fn sigma2_and_sigma3_are_onto_below_10k() {
        for z in 0..10_000u64 {
            let z = nat(z);
            let (x, y) = sigma2_inv(&z);
            assert_eq!(sigma2(&x, &y).unwrap(), z);
            let (a, b, c) = sigma3_inv(&z);
            assert_eq!(sigma3(&a, &b, &c).unwrap(), z);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn exponent_of_recovers_power(i in 0usize..50, e in 0u32..10, m in 1u64..10_000) {
                let p = prime(i);
                prop_assume!(m % p != 0);
                let n = Nat::from(p).pow(e) * m;
                prop_assert_eq!(exponent_of(&n, i).unwrap(), u64::from(e));
            }

            #[test]
            fn trunc_sub_bounds(x in 0u64..1_000_000, y in 0u64..1_000_000) {
                let d = trunc_sub(&nat(x), &nat(y));
                prop_assert!(&d + nat(y) >= nat(x));
                prop_assert!(d <= nat(x));
            }
        }
    }
}
