//! Shared machinery for the rule matchers: face and short-cycle
//! enumeration, neighbourhood probes, and canonical candidate assembly.

use super::{End, LiftCase, LiftSpec, RawCandidate, ReduceError, Surgery};
use crate::bounds::GirthClass;
use crate::graph::{canonical_cycle, FaceSet, Graph};
use std::collections::BTreeSet;

/// Per-step context shared by all matchers of one driver iteration.
pub(crate) struct RuleCtx {
    pub faces: FaceSet,
    /// Every 4-cycle, canonical orientation (girth-4 runs only).
    pub quads: Vec<Vec<usize>>,
    /// Every 5-cycle, canonical orientation (girth-5 runs only).
    pub pents: Vec<Vec<usize>>,
}

impl RuleCtx {
    pub fn new(g: &Graph, class: GirthClass) -> Result<Self, ReduceError> {
        let faces = g.trace_faces()?;
        let (quads, pents) = match class {
            GirthClass::Girth4 => (four_cycles(g), Vec::new()),
            GirthClass::Girth5 => (Vec::new(), five_cycles(g)),
        };
        Ok(RuleCtx { faces, quads, pents })
    }

    /// Boundary cycles of the simple faces with exactly `len` edges, the
    /// outer face included, each in face-walk order.
    pub fn simple_faces(&self, len: usize) -> Vec<Vec<usize>> {
        self.faces
            .faces
            .iter()
            .filter(|f| f.len() == len && f.distinct_vertices().len() == len)
            .map(|f| f.vertices.clone())
            .collect()
    }
}

/// All 4-cycles, one canonical representative each. In a triangle-free
/// graph every 4-cycle is determined by a non-adjacent pair plus two of
/// its common neighbors.
fn four_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let common = common_neighbors(g, u, v);
            for i in 0..common.len() {
                for j in i + 1..common.len() {
                    out.insert(canonical_cycle(&[u, common[i], v, common[j]]));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// All 5-cycles, one canonical representative each, by path extension from
/// the smallest vertex of the cycle.
fn five_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for v0 in 0..g.n() {
        for &a in g.neighbors(v0) {
            if a <= v0 {
                continue;
            }
            for &b in g.neighbors(a) {
                if b <= v0 || b == a {
                    continue;
                }
                for &c in g.neighbors(b) {
                    if c <= v0 || c == a || c == b {
                        continue;
                    }
                    for &d in g.neighbors(c) {
                        if d <= a || d == b || d == c || !g.has_edge(d, v0) {
                            continue;
                        }
                        // d > a fixes the orientation, so each cycle
                        // appears exactly once.
                        out.push(vec![v0, a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Common neighbors of two distinct vertices, ascending.
pub(crate) fn common_neighbors(g: &Graph, u: usize, v: usize) -> Vec<usize> {
    let mut mark = vec![false; g.n()];
    for &x in g.neighbors(u) {
        mark[x] = true;
    }
    let mut out: Vec<usize> = g.neighbors(v).iter().copied().filter(|&x| mark[x]).collect();
    out.sort_unstable();
    out
}

/// Neighbors of `v` outside `excl`, ascending.
pub(crate) fn neighbors_outside(g: &Graph, v: usize, excl: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|x| !excl.contains(x))
        .collect();
    out.sort_unstable();
    out
}

/// The single neighbor of `v` outside `excl`, if there is exactly one.
pub(crate) fn lone_neighbor_outside(g: &Graph, v: usize, excl: &[usize]) -> Option<usize> {
    let rest = neighbors_outside(g, v, excl);
    match rest.as_slice() {
        [x] => Some(*x),
        _ => None,
    }
}

pub(crate) fn pairwise_distinct(xs: &[usize]) -> bool {
    let mut seen = BTreeSet::new();
    xs.iter().all(|&x| seen.insert(x))
}

/// BFS distance from `u` to `v` in the graph minus `avoid`; `None` when
/// unreachable. `u` and `v` must not be in `avoid`.
pub(crate) fn dist_avoiding(g: &Graph, u: usize, v: usize, avoid: &[usize]) -> Option<usize> {
    debug_assert!(!avoid.contains(&u) && !avoid.contains(&v));
    if u == v {
        return Some(0);
    }
    let mut dist = vec![usize::MAX; g.n()];
    for &x in avoid {
        dist[x] = usize::MAX - 1;
    }
    dist[u] = 0;
    let mut queue = std::collections::VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                if y == v {
                    return Some(dist[y]);
                }
                queue.push_back(y);
            }
        }
    }
    None
}

/// True when the cycle (given in cyclic order) leaves `a` and `b` on
/// opposite sides. Both must be off the cycle.
pub(crate) fn separates(g: &Graph, cycle: &[usize], a: usize, b: usize) -> bool {
    let sides = g
        .cycle_sides(cycle)
        .expect("matcher cycles are simple cycles of an embedded graph");
    let inside_a = sides.interior.contains(&a);
    let inside_b = sides.interior.contains(&b);
    debug_assert!(!sides.on_cycle.contains(&a) && !sides.on_cycle.contains(&b));
    inside_a != inside_b
}

/// All dihedral frames of a cycle: every rotation in both directions.
/// Matchers written against a fixed frame scan all of these, so any
/// symmetric placement of a pattern is found.
pub(crate) fn frames(cycle: &[usize]) -> Vec<Vec<usize>> {
    let k = cycle.len();
    let mut out = Vec::with_capacity(2 * k);
    for s in 0..k {
        let fwd: Vec<usize> = (0..k).map(|i| cycle[(s + i) % k]).collect();
        let mut bwd = fwd.clone();
        bwd[1..].reverse();
        out.push(fwd);
        out.push(bwd);
    }
    out
}

/// Assemble a candidate in canonical form: sorted delete set, sorted
/// attachment lists, normalized edge pairs, and lift cases sorted by
/// pattern. `cases` holds (pattern, add) pairs.
pub(crate) fn candidate(
    variant: &'static str,
    triple: (u32, u32, u32),
    mut delete: Vec<usize>,
    mut apexes: Vec<Vec<usize>>,
    mut edges: Vec<(End, End)>,
    cases: Vec<(Vec<usize>, Vec<usize>)>,
) -> RawCandidate {
    let before = delete.len();
    delete.sort_unstable();
    delete.dedup();
    debug_assert_eq!(before, delete.len(), "rule deleted a vertex twice");
    for a in &mut apexes {
        a.sort_unstable();
    }
    for e in &mut edges {
        if e.1 < e.0 {
            *e = (e.1, e.0);
        }
    }
    edges.sort_unstable();
    let mut lift_cases: Vec<LiftCase> = cases
        .into_iter()
        .map(|(mut pattern, mut add)| {
            pattern.sort_unstable();
            add.sort_unstable();
            LiftCase { pattern, add }
        })
        .collect();
    lift_cases.sort();
    RawCandidate {
        variant,
        alpha: triple.0,
        beta: triple.1,
        gamma: triple.2,
        surgery: Surgery { delete, apexes, edges },
        lift: LiftSpec { cases: lift_cases },
    }
}
