use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::codec::{self, nat};

const MAX: u64 = 1_000_000;

/// Physical layout of `xs` as a plain vector of cells `+1, +2, …`, read back
/// as a set of occupied offsets and a head offset.
fn layout_oracle(xs: &[u64]) -> (Vec<i64>, i64) {
    let mut cells: Vec<bool> = Vec::new();
    for &x in xs {
        cells.extend(std::iter::repeat(true).take(x as usize + 1));
        cells.push(false);
    }
    let occupied = cells
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(i, _)| i as i64 + 1)
        .collect();
    (occupied, cells.len() as i64)
}

fn strokes(offsets: &[i64]) -> BTreeMap<u64, Symbol> {
    offsets.iter().map(|&d| (cell_index(d), STROKE)).collect()
}

#[test]
fn cell_index_examples() {
    assert_eq!(cell_index(0), 0);
    assert_eq!(cell_index(2), 4);
    assert_eq!(cell_index(-1), 1);
    for d in -500..=500 {
        assert_eq!(offset_of(cell_index(d)), d);
    }
    let mut seen: Vec<u64> = (-500..=500).map(cell_index).collect();
    seen.sort();
    assert_eq!(seen, (0..=1000).collect::<Vec<_>>());
}

#[test]
fn encode_args_examples() {
    let c = encode_args(&[1]).unwrap();
    assert_eq!(c.tape.keys().copied().collect::<Vec<_>>(), vec![2, 4]);
    assert_eq!(c.head, 6);
    assert_eq!(c.state, 1);
    let c = encode_args(&[0]).unwrap();
    assert_eq!(c.tape.keys().copied().collect::<Vec<_>>(), vec![2]);
    assert_eq!(c.head, 4);
    let c = encode_args(&[0, 0]).unwrap();
    assert_eq!(c.tape.keys().copied().collect::<Vec<_>>(), vec![2, 6]);
    assert_eq!(c.head, 8);
    assert_eq!(encode_args(&[]), Err(TmError::EmptyArgs));
}

#[test]
fn encode_args_matches_layout_oracle() {
    let cases: Vec<Vec<u64>> = vec![vec![0], vec![3], vec![0, 0], vec![2, 0, 5], vec![1, 1, 1, 1], vec![7, 8, 9]];
    for xs in cases {
        let (occ, head) = layout_oracle(&xs);
        let c = encode_args(&xs).unwrap();
        assert_eq!(c.tape, strokes(&occ), "{xs:?}");
        assert_eq!(c.head, cell_index(head), "{xs:?}");
    }
}

#[test]
fn zero_machine_takes_three_steps() {
    let z = zero_machine();
    assert_eq!(z.states(), 4);
    for x in 0..=20 {
        let r = run(&z, &[x], MAX).unwrap();
        assert_eq!((r.value.clone(), r.steps), (nat(0), 3), "x = {x}");
    }
    let start = encode_args(&[4]).unwrap();
    let one = step(&z, &start).unwrap();
    assert_eq!(offset_of(one.head), offset_of(start.head) + 1);
}

#[test]
fn terminal_when_no_entry() {
    let h = halt_machine();
    let c = encode_args(&[2]).unwrap();
    assert!(step(&h, &c).is_none());
    assert!(is_terminal(&h, &c));
    let r = run(&h, &[2], 10).unwrap();
    assert_eq!(r.steps, 0);
    assert_eq!(r.value, nat(2));
}

#[test]
fn run_errors() {
    let looping = TmSpec::new(1, 1, [((1, 0), (Action::Right, 1))]).unwrap();
    assert_eq!(run(&looping, &[0], 50), Err(TmError::NonTermination(50)));
    let erase = TmSpec::new(2, 1, [((1, 0), (Action::Left, 2)), ((2, 1), (Action::Write(0), 2))]).unwrap();
    // Steps onto the only stroke and erases it.
    let r = run_from(&erase, encode_args(&[0]).unwrap(), 10, false).unwrap();
    assert_eq!(r.0.output_numeral(), Err(TmError::NoOutputNumeral));
}

#[test]
fn successor_values() {
    let s = successor_machine();
    for x in 0..=50 {
        assert_eq!(run(&s, &[x], MAX).unwrap().value, nat(x + 1), "x = {x}");
    }
    assert_eq!(run(&s, &[2], MAX).unwrap().value, nat(3));
}

#[test]
fn projection_values() {
    assert_eq!(run(&projection_machine(3, 2), &[7, 8, 9], MAX).unwrap().value, nat(8));
    for n in 1..=3usize {
        for i in 1..=n {
            let m = projection_machine(n, i);
            let mut xs = vec![0u64; n];
            loop {
                assert_eq!(run(&m, &xs, MAX).unwrap().value, nat(xs[i - 1]), "P[{n},{i}] on {xs:?}");
                let mut j = 0;
                while j < n && xs[j] == 5 {
                    xs[j] = 0;
                    j += 1;
                }
                if j == n {
                    break;
                }
                xs[j] += 1;
            }
        }
    }
}

/// The tape after copying the `k`-th word from the right: the input words,
/// then one blank, then the copied word, with the head just past it.
fn copy_oracle(xs: &[u64], k: usize) -> (BTreeMap<u64, Symbol>, u64) {
    let (mut occ, head) = layout_oracle(xs);
    let src = xs[xs.len() - k];
    let start = head + 1;
    occ.extend((0..=src as i64).map(|d| start + d));
    (strokes(&occ), cell_index(start + src as i64 + 1))
}

#[test]
fn copy_machine_matches_oracle() {
    for k in 1..=4usize {
        let m = copy_machine_n(k);
        assert_eq!(m.states(), 4 * k + 7);
        for xs in [vec![0, 0, 0, 0], vec![3, 1, 4, 1], vec![0, 5, 2, 6], vec![9, 2, 6, 5, 3]] {
            let (tape, head) = copy_oracle(&xs, k);
            let (end, _, _) = run_from(&m, encode_args(&xs).unwrap(), MAX, false).unwrap();
            assert_eq!(end.tape, tape, "k = {k}, {xs:?}");
            assert_eq!(end.head, head, "k = {k}, {xs:?}");
        }
    }
}

#[test]
fn seq_routes_halts_and_prunes() {
    let rr = seq(&move_right(), &move_right());
    assert_eq!(rr.states(), 3);
    let r = run_from(&rr, encode_args(&[0]).unwrap(), 10, false).unwrap();
    assert_eq!(r.1, 2);
    // Nothing jumps back to the second machine's start state, so it is dropped.
    let t = seq(&halt_machine(), &move_left());
    assert_eq!(t.states(), 2);
    assert_eq!(t.transition(1, 0), Some((Action::Left, 2)));
}

#[test]
fn tape_encoding_examples() {
    let mut c = encode_args(&[0]).unwrap();
    c.tape.clear();
    assert_eq!(encode_tape(&c), nat(1));
    c.tape = [(2, 1), (4, 1)].into();
    assert_eq!(encode_tape(&c), nat(55));
    c.tape = [(0, 1)].into();
    assert_eq!(encode_tape(&c), nat(2));
    assert_eq!(codec::sigma3(&nat(0), &nat(1), &nat(0)).unwrap(), nat(3));
}

#[test]
fn config_roundtrip_and_monotone() {
    let z = zero_machine();
    let start = encode_args(&[0]).unwrap();
    assert_eq!(decode_config(&encode_config(&start), &z).unwrap(), start);
    let mut prev = None;
    for c in 1..=4 {
        let cfg = Configuration { state: c, ..start.clone() };
        let w = encode_config(&cfg);
        if let Some(p) = prev {
            assert!(w > p);
        }
        prev = Some(w);
    }
    let bad = Configuration { state: 9, ..start.clone() };
    assert!(matches!(decode_config(&encode_config(&bad), &z), Err(TmError::MalformedConfig(_))));
    assert!(decode_config_raw(&codec::sigma2_u(0, &codec::sigma2_u(1, &nat(0)))).is_err());
}

fn builder_machines() -> Vec<TmSpec> {
    vec![
        move_right(),
        move_left(),
        print_stroke(),
        halt_machine(),
        zero_machine(),
        successor_machine(),
        copy_machine(),
        copy_machine_n(3),
        projection_machine(3, 1),
        projection_machine(2, 2),
    ]
}

#[test]
fn machine_roundtrip_on_builders() {
    for m in builder_machines() {
        let t = godel_number(&m);
        assert_eq!(decode_machine(&t).unwrap(), m);
        assert_eq!(godel_number(&m), t);
        assert_eq!(parse_machine(&render_machine(&m)).unwrap(), m);
        for xs in [vec![0], vec![2, 1]] {
            let (end, _, trace) = run_from(&m, encode_args(&xs).unwrap(), MAX, true).unwrap();
            for cfg in trace.unwrap().iter().chain([&end]) {
                assert_eq!(&decode_config(&encode_config(cfg), &m).unwrap(), cfg);
            }
        }
    }
}

#[test]
fn godel_numbers_are_injective_on_single_edits() {
    let z = zero_machine();
    let base = godel_number(&z);
    let mut edited: Vec<_> = z.transitions().collect();
    edited[0].1 .0 = Action::Left;
    let other = TmSpec::new(z.states(), 1, edited).unwrap();
    assert_ne!(godel_number(&other), base);
}

#[test]
fn malformed_machine_numbers() {
    // M = 0
    assert!(matches!(decode_machine(&nat(0)), Err(TmError::MalformedMachine(_))));
    // M = 1, N = 1, table = 2^9: action code 9 / 1 = 9 > N + 2
    let t = codec::sigma2_u(1, &codec::sigma2_u(1, &nat(512)));
    assert!(matches!(decode_machine(&t), Err(TmError::MalformedMachine(_))));
    // M = 1, N = 1, table = 7: prime(3) lies beyond the two slots
    let t = codec::sigma2_u(1, &codec::sigma2_u(1, &nat(7)));
    assert!(matches!(decode_machine(&t), Err(TmError::MalformedMachine(_))));
}

#[test]
fn machine_file_parse() {
    let src = "# r|r\nstates: 4\nalphabet: 1\nstart: 1\n\
               delta: 1 0 -> R 2\ndelta: 1 1 -> R 2\ndelta: 2 0 -> W 1 3\ndelta: 2 1 -> W 1 3\n\
               delta: 3 0 -> R 4  # last\ndelta: 3 1 -> R 4\n";
    assert_eq!(parse_machine(src).unwrap(), zero_machine());
    assert!(matches!(parse_machine("states: 2\ndelta: 1 0 -> X 2\n"), Err(TmError::Parse { line: 2, .. })));
    assert!(matches!(parse_machine("alphabet: 1\n"), Err(TmError::Parse { .. })));
    assert!(parse_machine("states: 1\ndelta: 1 0 -> R 2\n").is_err());
}

#[test]
fn trace_length_matches_steps() {
    let r = run_traced(&successor_machine(), &[3], MAX, true).unwrap();
    assert_eq!(r.trace.as_ref().unwrap().len() as u64, r.steps + 1);
    assert_eq!(configuration_at(&successor_machine(), &[3], r.steps + 5).unwrap(), r.terminal);
}

fn arb_args() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..6, 1..4)
}

proptest! {
    #[test]
    fn run_invariants(xs in arb_args(), which in 0usize..10) {
        let m = &builder_machines()[which];
        let start = encode_args(&xs).unwrap();
        let span0 = start.span();
        let occ0 = start.occupied() as u64;
        let (_, _, trace) = run_from(m, start, MAX, true).unwrap();
        for (r, cfg) in trace.unwrap().iter().enumerate() {
            let r = r as u64;
            prop_assert!(offset_of(cfg.head).unsigned_abs() <= span0 + r);
            prop_assert!(cfg.occupied() as u64 <= occ0 + r);
            prop_assert!((1..=m.states()).contains(&cfg.state));
            prop_assert!(cfg.tape.values().all(|&s| s >= 1 && s <= m.alphabet()));
        }
    }

    #[test]
    fn config_number_roundtrip(head in 0u64..40, state in 1usize..6, cells in prop::collection::btree_map(0u64..30, 1u32..3, 0..6)) {
        let cfg = Configuration { head, tape: cells, state };
        prop_assert_eq!(decode_config_raw(&encode_config(&cfg)).unwrap(), cfg);
    }

    #[test]
    fn random_machines_roundtrip(m in 1usize..5, n in 1u32..3, raw in prop::collection::vec((0usize..5, 0u32..3, 0u32..5, 0usize..5), 0..12)) {
        let mut delta = BTreeMap::new();
        for (q, s, a, nx) in raw {
            let q = q % m + 1;
            let s = s % (n + 1);
            let act = match a % (n + 3) {
                j if j <= n => Action::Write(j),
                j if j == n + 1 => Action::Left,
                _ => Action::Right,
            };
            delta.insert((q, s), (act, nx % m + 1));
        }
        let spec = TmSpec::new(m, n, delta).unwrap();
        prop_assert_eq!(decode_machine(&godel_number(&spec)).unwrap(), spec.clone());
        prop_assert_eq!(parse_machine(&render_machine(&spec)).unwrap(), spec);
    }
}
