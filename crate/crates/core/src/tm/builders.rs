//! Elementary machines over the stroke alphabet and ways to chain them.

use std::collections::{BTreeMap, VecDeque};

use super::{Action, State, Symbol, TmSpec, BLANK, STROKE};

type Table = Vec<((State, Symbol), (Action, State))>;

fn elementary(action: Action) -> TmSpec {
    let table = (0..=1).map(|s| ((1, s), (action, 2)));
    TmSpec::new(2, 1, table).expect("elementary machine is well-formed")
}

/// One step right, then halt.
pub fn move_right() -> TmSpec {
    elementary(Action::Right)
}

/// One step left, then halt.
pub fn move_left() -> TmSpec {
    elementary(Action::Left)
}

/// Writes a stroke on the scanned cell, then halts.
pub fn print_stroke() -> TmSpec {
    elementary(Action::Write(STROKE))
}

/// A single state with no transitions.
pub fn halt_machine() -> TmSpec {
    TmSpec::new(1, 1, []).expect("well-formed")
}

/// Runs `m1`, then `m2` from wherever `m1` stopped.
///
/// `m2`'s states are shifted past `m1`'s, and every `(q, s)` at which `m1`
/// would halt receives `m2`'s start transition for `s`. States that can no
/// longer be reached from state 1 are then dropped and the rest renumbered in
/// order.
pub fn seq(m1: &TmSpec, m2: &TmSpec) -> TmSpec {
    let shift = m1.states();
    let alphabet = m1.alphabet().max(m2.alphabet());
    let mut delta: BTreeMap<(State, Symbol), (Action, State)> = m1.transitions().collect();
    for q in 1..=m1.states() {
        for s in 0..=alphabet {
            if delta.contains_key(&(q, s)) {
                continue;
            }
            if let Some((act, next)) = m2.transition(1, s) {
                delta.insert((q, s), (act, next + shift));
            }
        }
    }
    for ((q, s), (act, next)) in m2.transitions() {
        delta.insert((q + shift, s), (act, next + shift));
    }
    prune(shift + m2.states(), alphabet, delta)
}

fn prune(states: usize, alphabet: u32, delta: BTreeMap<(State, Symbol), (Action, State)>) -> TmSpec {
    let mut reachable = vec![false; states + 1];
    reachable[1] = true;
    let mut queue = VecDeque::from([1]);
    while let Some(q) = queue.pop_front() {
        for s in 0..=alphabet {
            if let Some(&(_, next)) = delta.get(&(q, s)) {
                if !reachable[next] {
                    reachable[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    let mut renumber = vec![0; states + 1];
    let mut count = 0;
    for q in 1..=states {
        if reachable[q] {
            count += 1;
            renumber[q] = count;
        }
    }
    let table = delta
        .into_iter()
        .filter(|((q, _), _)| reachable[*q])
        .map(|((q, s), (act, next))| ((renumber[q], s), (act, renumber[next])));
    TmSpec::new(count, alphabet, table).expect("pruning preserves well-formedness")
}

/// Right, print a stroke, right: writes the numeral 0 after the arguments in
/// exactly three steps.
pub fn zero_machine() -> TmSpec {
    seq(&move_right(), &seq(&print_stroke(), &move_right()))
}

/// Copies the last word, then appends one stroke to the copy.
pub fn successor_machine() -> TmSpec {
    seq(&copy_machine(), &seq(&print_stroke(), &move_right()))
}

/// Copies the word immediately left of the head.
pub fn copy_machine() -> TmSpec {
    copy_machine_n(1)
}

/// Projection onto the `i`-th of `n` arguments.
pub fn projection_machine(n: usize, i: usize) -> TmSpec {
    assert!(1 <= i && i <= n, "projection index {i} out of range 1..={n}");
    copy_machine_n(n + 1 - i)
}

/// Copies the `k`-th word to the left of the head (counting the nearest as
/// the first) to the right of the head, leaving one blank in between. Words
/// are separated by single blanks; the head starts on the blank after the
/// last word and ends on the first blank after the copy.
///
/// The source word is copied one stroke at a time. Each stroke is erased
/// while it is carried, so the blank it leaves marks the position to resume
/// from, and it is restored before the next one is taken.
pub fn copy_machine_n(k: usize) -> TmSpec {
    assert!(k >= 1, "copy_machine_n needs k >= 1");
    let mut next_state = 0;
    let mut fresh = |count: usize| -> Vec<State> {
        (0..count)
            .map(|_| {
                next_state += 1;
                next_state
            })
            .collect()
    };
    let start = fresh(1)[0];
    let seek = fresh(k); // pass words leftward to the source
    let take = fresh(1)[0]; // erase the current source stroke
    let leave = fresh(1)[0];
    let rest = fresh(1)[0]; // rest of the source word
    let fwd = fresh(k - 1); // words between source and head
    let append = fresh(1)[0]; // past the copy, add a stroke
    let back = fresh(1)[0]; // back over the copy
    let bwd = fresh(k - 1);
    let hole = fresh(1)[0]; // back to the erased stroke
    let resume = fresh(1)[0];
    let check = fresh(1)[0];
    let out = fresh(k - 1); // source finished: walk to the copy
    let finish = fresh(1)[0];
    let states = finish;

    use Action::{Left as L, Right as R, Write as W};
    let mut t: Table = Vec::new();
    let mut on = |q: State, s: Symbol, act: Action, next: State| t.push(((q, s), (act, next)));

    on(start, BLANK, L, seek[0]);
    for j in 0..k {
        on(seek[j], STROKE, L, seek[j]);
        if j + 1 < k {
            on(seek[j], BLANK, L, seek[j + 1]);
        } else {
            on(seek[j], BLANK, R, take);
        }
    }
    on(take, STROKE, W(BLANK), leave);
    on(leave, BLANK, R, rest);
    on(rest, STROKE, R, rest);
    on(rest, BLANK, R, *fwd.first().unwrap_or(&append));
    for j in 0..k.saturating_sub(1) {
        on(fwd[j], STROKE, R, fwd[j]);
        on(fwd[j], BLANK, R, *fwd.get(j + 1).unwrap_or(&append));
    }
    on(append, STROKE, R, append);
    on(append, BLANK, W(STROKE), back);
    on(back, STROKE, L, back);
    on(back, BLANK, L, *bwd.first().unwrap_or(&hole));
    for j in 0..k.saturating_sub(1) {
        on(bwd[j], STROKE, L, bwd[j]);
        on(bwd[j], BLANK, L, *bwd.get(j + 1).unwrap_or(&hole));
    }
    on(hole, STROKE, L, hole);
    on(hole, BLANK, W(STROKE), resume);
    on(resume, STROKE, R, check);
    on(check, STROKE, W(BLANK), leave);
    on(check, BLANK, R, *out.first().unwrap_or(&finish));
    for j in 0..k.saturating_sub(1) {
        on(out[j], STROKE, R, out[j]);
        on(out[j], BLANK, R, *out.get(j + 1).unwrap_or(&finish));
    }
    on(finish, STROKE, R, finish);

    TmSpec::new(states, 1, t).expect("copy machine is well-formed")
}
