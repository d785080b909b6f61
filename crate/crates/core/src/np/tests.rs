use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::codec::Nat;

const SMALL_PRIMES: [u64; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

/// Reads the surface text character by character, independently of the tree.
fn gn_oracle(text: &str) -> Nat {
    let mut out = Nat::from(1u32);
    let mut k = 0;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let code = match chars[i] {
            '!' => 1,
            '|' => 2,
            '&' => 3,
            '(' => 4,
            ')' => 5,
            'e' => {
                let mut j = i + 1;
                let mut n = 0u32;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    n = n * 10 + chars[j].to_digit(10).unwrap();
                    j += 1;
                }
                i = j - 1;
                5 + n
            }
            c => panic!("unexpected {c}"),
        };
        out *= Nat::from(SMALL_PRIMES[k]).pow(code);
        k += 1;
        i += 1;
    }
    out
}

/// Shannon expansion on the smallest remaining variable.
fn sat_oracle(e: &BoolExpr, fixed: &mut Vec<(u32, bool)>) -> bool {
    let free = e.variables().into_iter().find(|v| fixed.iter().all(|f| f.0 != *v));
    match free {
        None => e.eval(&|i| fixed.iter().find(|f| f.0 == i).unwrap().1),
        Some(v) => [false, true].into_iter().any(|b| {
            fixed.push((v, b));
            let r = sat_oracle(e, fixed);
            fixed.pop();
            r
        }),
    }
}

fn random_expr(rng: &mut ChaCha8Rng, depth: usize, vars: u32) -> BoolExpr {
    if depth == 0 || rng.gen_bool(0.25) {
        return BoolExpr::var(rng.gen_range(1..=vars));
    }
    match rng.gen_range(0..3) {
        0 => BoolExpr::not(random_expr(rng, depth - 1, vars)),
        1 => BoolExpr::or(random_expr(rng, depth - 1, vars), random_expr(rng, depth - 1, vars)),
        _ => BoolExpr::and(random_expr(rng, depth - 1, vars), random_expr(rng, depth - 1, vars)),
    }
}

fn all_exprs(depth: usize, vars: u32) -> Vec<BoolExpr> {
    let mut out: Vec<BoolExpr> = (1..=vars).map(BoolExpr::var).collect();
    if depth == 0 {
        return out;
    }
    let smaller = all_exprs(depth - 1, vars);
    for a in &smaller {
        out.push(BoolExpr::not(a.clone()));
        for b in &smaller {
            out.push(BoolExpr::or(a.clone(), b.clone()));
            out.push(BoolExpr::and(a.clone(), b.clone()));
        }
    }
    out.sort_by_key(|e| e.to_string());
    out.dedup();
    out
}

fn corpus() -> Vec<BoolExpr> {
    let mut out = all_exprs(1, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    while out.len() < 600 {
        out.push(random_expr(&mut rng, 3, 3));
    }
    out
}

#[test]
fn gn_examples() {
    assert_eq!(gn(&BoolExpr::var(1)), Nat::from(64u32));
    assert_eq!(gn(&BoolExpr::not(BoolExpr::var(1))), Nat::from(1458u32));
    assert_eq!(gn(&parse_bool("(e1|e2)").unwrap()), gn_oracle("(e1|e2)"));
    assert_eq!(sn(Symbol::Var(3)), 8);
}

#[test]
fn decode_rejects() {
    for x in [0u64, 1, 7, 3, 2, 4, 5 * 64, 64 * 3 * 3, 2u64.pow(4)] {
        assert!(decode_gn(&Nat::from(x)).is_err(), "{x}");
    }
    assert_eq!(sat_fn(&Nat::from(7u32)).unwrap(), 0);
    assert_eq!(sat_fn(&Nat::from(1u32)).unwrap(), 0);
    assert_eq!(sat_fn(&Nat::from(64u32)).unwrap(), 1);
    assert_eq!(sat_fn(&Nat::from(1458u32)).unwrap(), 1);
    assert_eq!(sat_fn(&gn(&parse_bool("(e1&!e1)").unwrap())).unwrap(), 0);
}

#[test]
fn parse_errors_carry_offsets() {
    let pos = |s: &str| match parse_bool(s) {
        Err(NpError::Parse { pos, .. }) => pos,
        other => panic!("{s}: {other:?}"),
    };
    assert_eq!(pos("e1|e2"), 2);
    assert_eq!(pos("(e1|e2"), 6);
    assert_eq!(pos("(e1 e2)"), 4);
    assert_eq!(pos("e0"), 0);
    assert_eq!(pos("x"), 0);
    assert_eq!(pos(""), 0);
    assert_eq!(parse_bool(" ( e1 & !e2 ) ").unwrap(), parse_bool("(e1&!e2)").unwrap());
}

#[test]
fn corpus_roundtrip_and_injectivity() {
    let exprs = corpus();
    assert!(exprs.len() >= 500);
    let mut seen = HashSet::new();
    let mut distinct = HashSet::new();
    for e in &exprs {
        let text = e.to_string();
        assert_eq!(&parse_bool(&text).unwrap(), e);
        let x = gn(e);
        assert_eq!(x, gn_oracle(&text), "{text}");
        assert_eq!(&decode_gn(&x).unwrap(), e);
        if distinct.insert(text) {
            assert!(seen.insert(x), "collision at {e}");
        }
    }
}

#[test]
fn corpus_sat_agrees_with_oracle() {
    for e in corpus() {
        let (sat, witness) = truth_table_sat(&e).unwrap();
        assert_eq!(sat, sat_oracle(&e, &mut Vec::new()), "{e}");
        if let Some(w) = witness {
            assert!(e.eval(&|i| w.iter().find(|p| p.0 == i).unwrap().1));
        }
        assert_eq!(sat_fn(&gn(&e)).unwrap(), sat as u8);
    }
}

#[test]
fn truth_table_order() {
    let t = truth_table(&parse_bool("(e1|e2)").unwrap()).unwrap();
    assert_eq!(t.variables, vec![1, 2]);
    assert_eq!(t.true_rows(), 3);
    assert_eq!(t.rows[0], (vec![false, false], false));
    assert_eq!(t.rows[1], (vec![false, true], true));
    let (_, w) = truth_table_sat(&parse_bool("(e2&!e5)").unwrap()).unwrap();
    assert_eq!(w.unwrap(), vec![(2, true), (5, false)]);
}

#[test]
fn variable_guard() {
    let mut e = BoolExpr::var(1);
    for i in 2..=21 {
        e = BoolExpr::or(e, BoolExpr::var(i));
    }
    assert_eq!(truth_table_sat(&e), Err(NpError::TooManyVariables(21)));
}

#[test]
fn expr_file() {
    let exprs = parse_expr_file("# demo\ne1\n\n(e1&!e1)  # contradiction\n").unwrap();
    assert_eq!(exprs.len(), 2);
    assert!(matches!(parse_expr_file("e1\ne1|\n"), Err(NpError::FileLine { line: 2, .. })));
}

/// Depth-first search over (node, visited set) on an adjacency matrix.
fn hampath_oracle(v: usize, adj: &[Vec<bool>], s: usize, t: usize) -> bool {
    fn go(u: usize, seen: u32, v: usize, adj: &[Vec<bool>], t: usize) -> bool {
        if seen.count_ones() as usize == v {
            return u == t;
        }
        (0..v).any(|w| adj[u][w] && seen & (1 << w) == 0 && go(w, seen | (1 << w), v, adj, t))
    }
    go(s, 1 << s, v, adj, t)
}

fn random_graph(rng: &mut ChaCha8Rng) -> (Digraph, Vec<Vec<bool>>) {
    let v = rng.gen_range(1..=5);
    let density = rng.gen_range(0.2..0.8);
    let mut adj = vec![vec![false; v]; v];
    let mut edges = Vec::new();
    for (u, row) in adj.iter_mut().enumerate() {
        for (w, cell) in row.iter_mut().enumerate() {
            if rng.gen_bool(density) {
                *cell = true;
                edges.push((u + 1, w + 1));
            }
        }
    }
    let (s, t) = (rng.gen_range(1..=v), rng.gen_range(1..=v));
    (Digraph::new(v, edges, s, t).unwrap(), adj)
}

#[test]
fn hampath_examples() {
    let tri = Digraph::new(3, [(1, 2), (2, 3)], 1, 3).unwrap();
    assert_eq!(hampath_brute(&tri).unwrap(), (true, Some(vec![1, 2, 3])));
    let k4: Vec<(usize, usize)> = (1..=4).flat_map(|u| (1..=4).filter(move |&w| w != u).map(move |w| (u, w))).collect();
    assert!(hampath_brute(&Digraph::new(4, k4, 1, 4).unwrap()).unwrap().0);
    assert!(!hampath_brute(&Digraph::new(2, [], 1, 2).unwrap()).unwrap().0);
    assert_eq!(hampath_brute(&Digraph::new(11, [], 1, 2).unwrap()), Err(NpError::TooManyNodes(11)));
    assert!(hampath_brute(&Digraph::new(1, [], 1, 1).unwrap()).unwrap().0);
}

#[test]
fn hampath_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut yes = 0;
    for _ in 0..500 {
        let (g, adj) = random_graph(&mut rng);
        let expected = hampath_oracle(g.nodes(), &adj, g.s() - 1, g.t() - 1);
        let (found, path) = hampath_brute(&g).unwrap();
        assert_eq!(found, expected, "{g:?}");
        if let Some(p) = path {
            yes += 1;
            assert_eq!(p.len(), g.nodes());
            assert_eq!((p[0], p[p.len() - 1]), (g.s(), g.t()));
            assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
        }
        let x = encode_graph(&g);
        assert_eq!(decode_graph(&x).unwrap(), g);
        assert_eq!(hampath_fn(&x).unwrap(), expected as u8);
    }
    assert!(yes > 20 && yes < 480, "degenerate sample: {yes}");
}

#[test]
fn graph_code_examples() {
    // One node, no edges: σ₂(1, σ₂(0, σ₂(0, 1))).
    let g = Digraph::new(1, [], 1, 1).unwrap();
    let inner: u64 = 2 * 1 + 1 - 1;
    let mid = 2 * inner + 1 - 1;
    assert_eq!(encode_graph(&g), Nat::from(2 * (2 * mid + 1) - 1));
    assert_eq!(hampath_fn(&encode_graph(&g)).unwrap(), 1);
    // E = 0 and repeated edge primes are malformed.
    let zero_e = crate::codec::sigma2_u(2, &crate::codec::sigma2_u(0, &crate::codec::sigma2_u(1, &Nat::from(0u32))));
    assert!(decode_graph(&zero_e).is_err());
    let square = crate::codec::sigma2_u(2, &crate::codec::sigma2_u(0, &crate::codec::sigma2_u(1, &Nat::from(4u32))));
    assert!(decode_graph(&square).is_err());
    let beyond = crate::codec::sigma2_u(2, &crate::codec::sigma2_u(0, &crate::codec::sigma2_u(1, &Nat::from(11u32))));
    assert!(decode_graph(&beyond).is_err());
    assert_eq!(hampath_fn(&Nat::from(0u32)).unwrap(), 0);
}

#[test]
fn graph_file_roundtrip() {
    let text = "nodes: 3\ns: 1\nt: 3\nedge: 1 2\nedge: 2 3 # last\n";
    let g = parse_graph(text).unwrap();
    assert_eq!(g, Digraph::new(3, [(1, 2), (2, 3)], 1, 3).unwrap());
    assert_eq!(parse_graph(&render_graph(&g)).unwrap(), g);
    assert!(parse_graph("nodes: 2\ns: 1\nt: 2\nedge: 1 3\n").is_err());
    assert!(parse_graph("nodes: 2\ns: 1\n").is_err());
    assert!(matches!(parse_graph("nodes: 2\nfoo: 1\n"), Err(NpError::FileLine { line: 2, .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_expr_roundtrip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, 4, 6);
        prop_assert_eq!(decode_gn(&gn(&e)).unwrap(), e.clone());
        prop_assert_eq!(parse_bool(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn random_graph_roundtrip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, _) = random_graph(&mut rng);
        prop_assert_eq!(decode_graph(&encode_graph(&g)).unwrap(), g);
    }

    #[test]
    fn decode_never_panics(x in any::<u64>()) {
        let n = Nat::from(x);
        if let Ok(e) = decode_gn(&n) {
            prop_assert_eq!(gn(&e), n.clone());
        }
        if let Ok(g) = decode_graph(&n) {
            prop_assert_eq!(encode_graph(&g), n);
        }
    }
}
