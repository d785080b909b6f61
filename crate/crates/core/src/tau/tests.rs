use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::prf::{classify, eval_fast, konst_u, parse_term, stdlib, Classification};
use crate::tm::{projection_machine, successor_machine, zero_machine};

fn bound(term: Term) -> TauBound {
    TauBound {
        term,
        provenance: Provenance::Constant,
        fit: None,
    }
}

fn ev(term: &Term, xs: &[u64]) -> u64 {
    let args: Vec<Nat> = xs.iter().map(|&x| Nat::from(x)).collect();
    eval_fast(term, &args, &stdlib()).unwrap().to_u64().unwrap()
}

#[test]
fn measure_examples() {
    assert_eq!(measure_steps(&zero_machine(), &[4]).unwrap(), 3);
    let s = successor_machine();
    let k0 = measure_steps(&s, &[0]).unwrap();
    let k1 = measure_steps(&s, &[1]).unwrap();
    assert!(k1 >= k0);
    let p = projection_machine(2, 2);
    assert_eq!(measure_steps(&p, &[3, 3]).unwrap(), measure_steps(&p, &[3, 3]).unwrap());
}

#[test]
fn zero_bound_is_exact() {
    let t = tau_initial(Initial::Zero, 20).unwrap();
    assert_eq!(t.provenance, Provenance::Constant);
    for x in 0..=20 {
        assert_eq!(ev(&t.term, &[x]), 3);
        assert_eq!(measure_steps(&zero_machine(), &[x]).unwrap(), 3);
    }
}

#[test]
fn fitted_bounds_dominate_their_sweeps() {
    let s = tau_initial(Initial::Succ, 30).unwrap();
    assert_eq!(s.provenance, Provenance::MeasuredFit);
    for x in 0..=30 {
        assert!(measure_steps(&successor_machine(), &[x]).unwrap() <= ev(&s.term, &[x]), "x = {x}");
    }
    let which = Initial::Proj { n: 3, i: 1 };
    let p = tau_initial(which, 5).unwrap();
    let fit = p.fit.unwrap();
    for xs in which.sweep(5) {
        let m = measure_steps(&which.machine(), &xs).unwrap();
        assert!(m <= ev(&p.term, &xs));
        assert_eq!(ev(&p.term, &xs), fit.at(which.size(&xs)));
    }
}

#[test]
fn fit_linear_cases() {
    assert_eq!(fit_linear(&[(0, 3), (1, 5), (2, 7)]).unwrap(), LinearFit { c1: 2, c0: 3 });
    // Convex data forces the slope up.
    let quad: Vec<(u64, u64)> = (0..10).map(|s| (s, s * s)).collect();
    let f = fit_linear(&quad).unwrap();
    assert!(quad.iter().all(|&(s, m)| m <= f.at(s)));
    assert!(f.c1 >= 8);
    assert!(fit_linear(&[]).is_err());
}

#[test]
fn compose_example() {
    let env = stdlib();
    let tau_g = bound(Term::proj(1, 1));
    let tau_h = bound(konst_u(1, 2));
    let f = tau_compose(&tau_g, &[tau_h], &[Term::proj(1, 1)], &env).unwrap();
    assert_eq!(f.provenance, Provenance::CompositionRule);
    assert_eq!(ev(&f.term, &[5]), 7);
    assert_eq!(classify(&f.term, &env), Classification::PrimitiveRecursive);
}

#[test]
fn compose_with_zero_inner_costs_is_plain_composition() {
    let env = stdlib();
    let tau_g = bound(parse_term("C[mul; P[2,1], P[2,2]]").unwrap());
    let hs = vec![parse_term("C[S; P[2,1]]").unwrap(), parse_term("add").unwrap()];
    let zeros = vec![bound(konst_u(2, 0)), bound(konst_u(2, 0))];
    let f = tau_compose(&tau_g, &zeros, &hs, &env).unwrap();
    for (a, b) in [(0, 0), (3, 4), (7, 1)] {
        assert_eq!(ev(&f.term, &[a, b]), (a + 1) * (a + b));
    }
    assert!(tau_compose(&tau_g, &zeros[..1], &hs[..1], &env).is_err());
}

#[test]
fn compose_matches_recurrence_oracle() {
    // G(u, v) = u + v with τ_G(u, v) = 2u + v + 1;
    // H₁(x, y) = x·y with τ_H₁ = x + 3; H₂(x, y) = y + 1 with τ_H₂ = y.
    let env = stdlib();
    let tau_g = bound(parse_term("C[S; C[add; C[add; P[2,1], P[2,1]], P[2,2]]]").unwrap());
    let hs = vec![parse_term("mul").unwrap(), parse_term("C[S; P[2,2]]").unwrap()];
    let tau_hs = vec![
        bound(parse_term("C[add; P[2,1], C[S; C[S; C[S; C[Z; P[2,1]]]]]]").unwrap()),
        bound(Term::proj(2, 2)),
    ];
    let f = tau_compose(&tau_g, &tau_hs, &hs, &env).unwrap();
    let oracle = |x: u64, y: u64| {
        let (u, v) = (x * y, y + 1);
        (2 * u + v + 1) + (x + 3) + y
    };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let (x, y) = (rng.gen_range(0..40), rng.gen_range(0..40));
        assert_eq!(ev(&f.term, &[x, y]), oracle(x, y));
    }
}

#[test]
fn recursion_recurrence() {
    let env = stdlib();
    // F = mul as R[Z; C[add; P[3,3], P[3,1]]], τ_G(x) = x + 1, τ_H(x, y, z) = z + 2.
    let f = parse_term("mul").unwrap();
    let tau_g = bound(parse_term("C[S; P[1,1]]").unwrap());
    let tau_h = bound(parse_term("C[S; C[S; P[3,3]]]").unwrap());
    let t = tau_recursion(&tau_g, &tau_h, &f, &env).unwrap();
    assert_eq!(t.provenance, Provenance::RecursionRule);
    assert_eq!(classify(&t.term, &env), Classification::PrimitiveRecursive);
    for x in 0..8 {
        assert_eq!(ev(&t.term, &[x, 0]), x + 1);
        for n in 0..=6 {
            let unrolled: u64 = (x + 1) + (0..n).map(|y| x * y + 2).sum::<u64>();
            assert_eq!(ev(&t.term, &[x, n]), unrolled, "x = {x}, n = {n}");
        }
    }
    // Constant step cost c gives τ_G + c·x.
    let c = bound(konst_u(3, 5));
    let t = tau_recursion(&tau_g, &c, &f, &env).unwrap();
    for (x, n) in [(0, 0), (2, 3), (9, 11), (4, 20)] {
        assert_eq!(ev(&t.term, &[x, n]), x + 1 + 5 * n);
    }
    assert!(tau_recursion(&tau_g, &tau_g, &f, &env).is_err());
}

#[test]
fn check_bound_reports() {
    let env = stdlib();
    let samples: Vec<Vec<u64>> = (0..=20).map(|x| vec![x]).collect();
    let r = check_bound(&zero_machine(), &konst_u(1, 3), &samples, &env).unwrap();
    assert_eq!(r.violations(), 0);
    let text = r.to_string();
    assert!(text.starts_with("0  3  3  OK\n"));
    assert!(text.ends_with("violations: 0 of 21"));

    let s = tau_initial(Initial::Succ, 30).unwrap();
    let sweep: Vec<Vec<u64>> = (0..=30).map(|x| vec![x]).collect();
    assert_eq!(check_bound(&successor_machine(), &s.term, &sweep, &env).unwrap().violations(), 0);
    let r = check_bound(&successor_machine(), &konst_u(1, 1), &sweep, &env).unwrap();
    assert_eq!(r.violations(), sweep.len());
    assert!(r.to_string().contains("VIOLATION"));

    let par = check_bound_jobs(&successor_machine(), &s.term, &sweep, &env, 4).unwrap();
    assert_eq!(par, check_bound(&successor_machine(), &s.term, &sweep, &env).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn recursion_base_is_tau_g(a in 0u64..50, b in 0u64..50) {
        let env = stdlib();
        let tau_g = bound(parse_term("add").unwrap());
        let tau_h = bound(parse_term("C[S; P[4,4]]").unwrap());
        let f = parse_term("C[add; P[3,1], P[3,3]]").unwrap();
        let t = tau_recursion(&tau_g, &tau_h, &f, &env).unwrap();
        prop_assert_eq!(ev(&t.term, &[a, b, 0]), a + b);
    }
}
