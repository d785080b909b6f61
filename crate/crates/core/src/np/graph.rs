//! Directed graphs with a start and an end node, their arithmetic codes, and
//! Hamiltonian path search.
//!
//! ```text
//! x = σ₂(v, σ₂(s − 1, σ₂(t − 1, E)))      E = Π prime((u − 1)·v + (w − 1)) over edges u → w
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::{One, ToPrimitive, Zero};

use super::NpError;
use crate::codec::{self, Nat};

/// Hamiltonian path search is refused above this many nodes.
pub const MAX_NODES: usize = 10;
/// Decoders refuse node counts above this.
const MAX_DECODE_NODES: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    nodes: usize,
    edges: BTreeSet<(usize, usize)>,
    s: usize,
    t: usize,
}

impl Digraph {
    /// Nodes are `1..=nodes`.
    pub fn new(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>, s: usize, t: usize) -> Result<Self, NpError> {
        let bad = |msg: String| NpError::MalformedGraph(msg);
        if nodes == 0 {
            return Err(bad("a graph needs at least one node".into()));
        }
        let valid = |u: usize| (1..=nodes).contains(&u);
        if !valid(s) || !valid(t) {
            return Err(bad(format!("s = {s}, t = {t} outside 1..={nodes}")));
        }
        let mut set = BTreeSet::new();
        for (u, w) in edges {
            if !valid(u) || !valid(w) {
                return Err(bad(format!("edge {u} -> {w} outside 1..={nodes}")));
            }
            if !set.insert((u, w)) {
                return Err(bad(format!("duplicate edge {u} -> {w}")));
            }
        }
        Ok(Self { nodes, edges: set, s, t })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.edges.contains(&(u, w))
    }
}

fn edge_slot(u: usize, w: usize, v: usize) -> usize {
    (u - 1) * v + (w - 1)
}

pub fn encode_graph(g: &Digraph) -> Nat {
    let e = g
        .edges()
        .fold(Nat::one(), |acc, (u, w)| acc * codec::prime_nat(edge_slot(u, w, g.nodes)));
    let inner = codec::sigma2_u((g.t - 1) as u64, &e);
    let mid = codec::sigma2_u((g.s - 1) as u64, &inner);
    codec::sigma2_u(g.nodes as u64, &mid)
}

pub fn decode_graph(x: &Nat) -> Result<Digraph, NpError> {
    let bad = |msg: String| NpError::MalformedGraph(msg);
    let (v, mid) = codec::sigma2_inv_u(x);
    let (s, inner) = codec::sigma2_inv_u(&mid);
    let (t, e) = codec::sigma2_inv_u(&inner);
    if v == 0 || v > MAX_DECODE_NODES {
        return Err(bad(format!("node count {v} out of range")));
    }
    if e.is_zero() {
        return Err(bad("edge number is zero".into()));
    }
    let v = v as usize;
    let mut rest = e;
    let mut edges = Vec::new();
    for slot in 0..v * v {
        if rest.is_one() {
            break;
        }
        let (k, r) = codec::strip_prime(&rest, slot);
        match k {
            0 => {}
            1 => edges.push((slot / v + 1, slot % v + 1)),
            _ => return Err(bad(format!("edge slot {slot} has multiplicity {k}"))),
        }
        rest = r;
    }
    if !rest.is_one() {
        return Err(bad(format!("edge number has prime factors beyond slot {}", v * v - 1)));
    }
    let s = s.to_usize().unwrap_or(usize::MAX).saturating_add(1);
    let t = t.to_usize().unwrap_or(usize::MAX).saturating_add(1);
    Digraph::new(v, edges, s, t)
}

/// Rearranges `items` into the next permutation in lexicographic order;
/// `false` after the last one.
fn next_permutation(items: &mut [usize]) -> bool {
    let Some(i) = items.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = items.iter().rposition(|&x| x > items[i]).expect("a larger element exists");
    items.swap(i, j);
    items[i + 1..].reverse();
    true
}

/// Tries every ordering of the nodes other than `s` and `t` between them.
pub fn hampath_brute(g: &Digraph) -> Result<(bool, Option<Vec<usize>>), NpError> {
    if g.nodes > MAX_NODES {
        return Err(NpError::TooManyNodes(g.nodes));
    }
    if g.nodes == 1 {
        return Ok((true, Some(vec![g.s])));
    }
    if g.s == g.t {
        return Ok((false, None));
    }
    let mut middle: Vec<usize> = (1..=g.nodes).filter(|&u| u != g.s && u != g.t).collect();
    loop {
        let path: Vec<usize> = std::iter::once(g.s)
            .chain(middle.iter().copied())
            .chain(std::iter::once(g.t))
            .collect();
        if path.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return Ok((true, Some(path)));
        }
        if !next_permutation(&mut middle) {
            return Ok((false, None));
        }
    }
}

/// 1 when `x` codes a graph with a Hamiltonian path from `s` to `t`, else 0.
pub fn hampath_fn(x: &Nat) -> Result<u8, NpError> {
    match decode_graph(x) {
        Ok(g) => Ok(hampath_brute(&g)?.0 as u8),
        Err(_) => Ok(0),
    }
}

/// Graph files: `nodes: v`, `s: i`, `t: j` and one `edge: u w` per edge.
pub fn parse_graph(text: &str) -> Result<Digraph, NpError> {
    let err = |line: usize, msg: String| NpError::FileLine { line, msg };
    let (mut nodes, mut s, mut t) = (None, None, None);
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once(':')
            .ok_or_else(|| err(line, "expected `key: value`".into()))?;
        let nums: Result<Vec<usize>, _> = value.split_whitespace().map(str::parse).collect();
        let nums = nums.map_err(|_| err(line, format!("bad number in `{}`", value.trim())))?;
        let one = |what: &str| match nums.as_slice() {
            [n] => Ok(*n),
            _ => Err(err(line, format!("`{what}` takes one number"))),
        };
        match key.trim() {
            "nodes" => nodes = Some(one("nodes")?),
            "s" => s = Some(one("s")?),
            "t" => t = Some(one("t")?),
            "edge" => match nums.as_slice() {
                [u, w] => edges.push((*u, *w)),
                _ => return Err(err(line, "`edge` takes two node numbers".into())),
            },
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }
    let missing = |what: &str| err(0, format!("missing `{what}:` line"));
    Digraph::new(
        nodes.ok_or_else(|| missing("nodes"))?,
        edges,
        s.ok_or_else(|| missing("s"))?,
        t.ok_or_else(|| missing("t"))?,
    )
}

pub fn render_graph(g: &Digraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "nodes: {}", g.nodes);
    let _ = writeln!(out, "s: {}", g.s);
    let _ = writeln!(out, "t: {}", g.t);
    for (u, w) in g.edges() {
        let _ = writeln!(out, "edge: {u} {w}");
    }
    out
}
