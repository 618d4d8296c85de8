//! Exact maximum induced forest solvers.
//!
//! Two independent engines: a subset-enumeration brute force for graphs on
//! at most 25 vertices, and a branch-and-bound search that branches on the
//! vertices of a shortest cycle and prunes with a greedy packing of
//! vertex-disjoint cycles. Both report the same canonical witness, the
//! lexicographically smallest maximum induced forest, so their results are
//! directly comparable in tests. The branch-and-bound witness is produced
//! by a deterministic single-threaded pass after the optimum is known,
//! which makes it independent of the worker count.

use crate::graph::Graph;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Search limits and parallelism for [`forest_number_exact`].
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    /// Worker threads for the root-level branch fan-out.
    pub jobs: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            node_limit: None,
            time_limit: None,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// Order of a largest induced forest.
    pub forest_number: usize,
    /// n minus the forest number.
    pub decycling_number: usize,
    /// Lexicographically smallest maximum induced forest (ascending). When
    /// the search was truncated this is only the best incumbent found.
    pub witness: Vec<usize>,
    pub nodes: u64,
    pub elapsed: Duration,
    /// False when a node or time limit stopped the search early; the
    /// reported numbers are then only a lower bound on the forest number.
    pub optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceResult {
    pub forest_number: usize,
    /// Lexicographically smallest maximum induced forest (ascending).
    pub witness: Vec<usize>,
    /// Number of candidate subsets tested.
    pub subsets_checked: u64,
}

/// Adjacency in bitmask form, the working representation of both solvers.
struct MaskGraph {
    n: usize,
    nbr: Vec<u64>,
}

impl MaskGraph {
    fn new(g: &Graph) -> MaskGraph {
        MaskGraph {
            n: g.n(),
            nbr: g.neighbor_masks(),
        }
    }

    fn vertices(mask: u64) -> impl Iterator<Item = usize> {
        std::iter::successors(Some(mask), |&m| Some(m & m.wrapping_sub(1)))
            .take_while(|&m| m != 0)
            .map(|m| m.trailing_zeros() as usize)
    }

    /// Forest test on an induced subgraph: edge count plus component count
    /// must equal the vertex count.
    fn is_forest(&self, mask: u64) -> bool {
        let mut edges = 0u32;
        for v in Self::vertices(mask) {
            edges += (self.nbr[v] & mask).count_ones();
        }
        let edges = (edges / 2) as usize;
        let count = mask.count_ones() as usize;
        if edges >= count && count > 0 {
            return false;
        }
        let mut comps = 0usize;
        let mut unseen = mask;
        while unseen != 0 {
            comps += 1;
            let mut frontier = unseen & unseen.wrapping_neg();
            unseen &= !frontier;
            while frontier != 0 {
                let mut next = 0u64;
                for v in Self::vertices(frontier) {
                    next |= self.nbr[v] & unseen;
                }
                unseen &= !next;
                frontier = next;
            }
        }
        edges == count - comps
    }

    /// Shortest cycle within the induced subgraph on `mask`, canonical
    /// orientation, None if it is a forest.
    fn shortest_cycle_in(&self, mask: u64) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        let mut best_len = usize::MAX;
        for root in Self::vertices(mask) {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for y in Self::vertices(self.nbr[x] & mask) {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            for x in Self::vertices(mask) {
                if dist[x] == usize::MAX {
                    continue;
                }
                for y in Self::vertices(self.nbr[x] & mask) {
                    if x > y || parent[x] == y || parent[y] == x || dist[y] == usize::MAX {
                        continue;
                    }
                    if dist[x] + dist[y] + 1 >= best_len {
                        continue;
                    }
                    let path = |mut v: usize| {
                        let mut p = vec![v];
                        while v != root {
                            v = parent[v];
                            p.push(v);
                        }
                        p.reverse();
                        p
                    };
                    let px = path(x);
                    let py = path(y);
                    let mut split = 0;
                    while split < px.len() && split < py.len() && px[split] == py[split] {
                        split += 1;
                    }
                    let mut cycle: Vec<usize> = px[split - 1..].to_vec();
                    cycle.extend(py[split..].iter().rev());
                    if cycle.len() < best_len && cycle.len() >= 3 {
                        best_len = cycle.len();
                        best = Some(crate::graph::canonical_cycle(&cycle));
                    }
                }
            }
        }
        best
    }

    /// Greedy count of vertex-disjoint cycles: each needs its own deletion.
    fn cycle_packing(&self, mask: u64) -> usize {
        let mut work = mask;
        let mut count = 0;
        while let Some(cycle) = self.shortest_cycle_in(work) {
            count += 1;
            for v in cycle {
                work &= !(1u64 << v);
            }
        }
        count
    }
}

/// Maximum induced forest by descending-size subset enumeration. Subsets
/// of equal size are tried in lexicographic order of their sorted vertex
/// lists, so the first acyclic hit is the canonical witness. Requires
/// n <= 25.
pub fn forest_number_bruteforce(g: &Graph) -> BruteForceResult {
    assert!(g.n() <= 25, "brute force is limited to 25 vertices");
    let mg = MaskGraph::new(g);
    let n = g.n();
    let mut checked = 0u64;
    for k in (0..=n).rev() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            checked += 1;
            let mask = idx.iter().fold(0u64, |acc, &v| acc | (1 << v));
            if mg.is_forest(mask) {
                return BruteForceResult {
                    forest_number: k,
                    witness: idx,
                    subsets_checked: checked,
                };
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    unreachable!("the empty set is always a forest");
}

/// Advance a sorted index combination to its lexicographic successor.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] != i + n - k {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Maximum independent set size and its lexicographically smallest
/// witness. Requires n <= 25.
pub fn max_independent_set(g: &Graph) -> (usize, Vec<usize>) {
    assert!(g.n() <= 25, "independent set search is limited to 25 vertices");
    let mg = MaskGraph::new(g);
    let full = (1u64 << g.n()) - 1;
    let alpha = mis_size(&mg, full);
    let mut witness = Vec::new();
    let mut mask = full;
    let mut remaining = alpha;
    for v in 0..g.n() {
        if mask & (1 << v) == 0 {
            continue;
        }
        let without_closed = mask & !(mg.nbr[v] | (1 << v));
        if 1 + mis_size(&mg, without_closed) == remaining {
            witness.push(v);
            mask = without_closed;
            remaining -= 1;
        } else {
            mask &= !(1 << v);
        }
    }
    assert_eq!(remaining, 0, "witness reconstruction must reach the optimum");
    (alpha, witness)
}

fn mis_size(mg: &MaskGraph, mask: u64) -> usize {
    if mask == 0 {
        return 0;
    }
    // A vertex with at most one live neighbor is in some optimum.
    for v in MaskGraph::vertices(mask) {
        if (mg.nbr[v] & mask).count_ones() <= 1 {
            return 1 + mis_size(mg, mask & !(mg.nbr[v] | (1 << v)));
        }
    }
    let v = MaskGraph::vertices(mask)
        .max_by_key(|&v| ((mg.nbr[v] & mask).count_ones(), std::cmp::Reverse(v)))
        .unwrap();
    let take = 1 + mis_size(mg, mask & !(mg.nbr[v] | (1 << v)));
    let skip = mis_size(mg, mask & !(1 << v));
    take.max(skip)
}

struct Shared {
    best: AtomicUsize,
    nodes: AtomicU64,
    truncated: AtomicBool,
    stop: AtomicBool,
    incumbent: Mutex<u64>,
    node_limit: u64,
    deadline: Option<Instant>,
    /// When set, stop as soon as any solution at most this size is found.
    accept_at: Option<usize>,
}

impl Shared {
    fn out_of_budget(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        if self.nodes.load(Ordering::Relaxed) >= self.node_limit {
            self.truncated.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return true;
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.truncated.store(true, Ordering::Relaxed);
                self.stop.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }

    fn offer(&self, deleted: usize, remaining: u64) {
        let mut cur = self.best.load(Ordering::Relaxed);
        while deleted < cur {
            match self.best.compare_exchange(
                cur,
                deleted,
                Ordering::Relaxed,
                Ordering::Relaxed,
            ) {
                Ok(_) => {
                    *self.incumbent.lock().unwrap() = remaining;
                    break;
                }
                Err(now) => cur = now,
            }
        }
        if let Some(accept) = self.accept_at {
            if deleted <= accept {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
    }
}

/// Depth-first branch and bound over deletion sets. `remaining` is the
/// live vertex mask, `kept` the vertices no longer deletable, `deleted`
/// the current deletion count.
fn search(mg: &MaskGraph, remaining: u64, kept: u64, deleted: usize, shared: &Shared) {
    shared.nodes.fetch_add(1, Ordering::Relaxed);
    if shared.out_of_budget() {
        return;
    }
    if !mg.is_forest(kept) {
        return;
    }
    let Some(cycle) = mg.shortest_cycle_in(remaining) else {
        shared.offer(deleted, remaining);
        return;
    };
    let bound = deleted + mg.cycle_packing(remaining);
    if bound >= shared.best.load(Ordering::Relaxed) {
        return;
    }
    let mut kept = kept;
    for v in cycle {
        if kept & (1 << v) != 0 {
            continue;
        }
        search(mg, remaining & !(1 << v), kept, deleted + 1, shared);
        if shared.stop.load(Ordering::Relaxed) {
            return;
        }
        kept |= 1 << v;
    }
}

fn greedy_incumbent(mg: &MaskGraph, full: u64) -> (usize, u64) {
    let mut mask = full;
    let mut deleted = 0;
    while let Some(cycle) = mg.shortest_cycle_in(mask) {
        let v = cycle
            .iter()
            .copied()
            .max_by_key(|&v| ((mg.nbr[v] & mask).count_ones(), std::cmp::Reverse(v)))
            .unwrap();
        mask &= !(1u64 << v);
        deleted += 1;
    }
    (deleted, mask)
}

fn make_shared(cfg: &SolverConfig, best: usize, incumbent: u64, accept_at: Option<usize>) -> Shared {
    Shared {
        best: AtomicUsize::new(best),
        nodes: AtomicU64::new(0),
        truncated: AtomicBool::new(false),
        stop: AtomicBool::new(false),
        incumbent: Mutex::new(incumbent),
        node_limit: cfg.node_limit.unwrap_or(u64::MAX),
        deadline: cfg.time_limit.map(|d| Instant::now() + d),
        accept_at,
    }
}

/// True when some deletion set of size at most `budget` avoiding
/// `forced_kept` makes `universe` a forest. Deterministic and sequential.
fn exists_within(mg: &MaskGraph, universe: u64, forced_kept: u64, budget: usize) -> bool {
    let shared = make_shared(&SolverConfig::default(), budget + 1, universe, Some(budget));
    search(mg, universe, forced_kept, 0, &shared);
    shared.best.load(Ordering::Relaxed) <= budget
}

/// Maximum induced forest by branch and bound. Requires n <= 64. The
/// witness is rebuilt deterministically once the optimum is known: by
/// lexicographically smallest inclusion decisions for n <= 25, and by a
/// sequential first-solution pass otherwise, so it does not depend on
/// `jobs`.
pub fn forest_number_exact(g: &Graph, cfg: &SolverConfig) -> SolveResult {
    let start = Instant::now();
    let n = g.n();
    let full = if n == 0 {
        0
    } else if n == 64 {
        !0u64
    } else {
        (1u64 << n) - 1
    };
    let mg = MaskGraph::new(g);

    let (greedy_size, greedy_mask) = greedy_incumbent(&mg, full);
    let shared = make_shared(cfg, greedy_size, greedy_mask, None);
    let jobs = cfg.jobs.max(1);
    let root_cycle = mg.shortest_cycle_in(full);
    match (&root_cycle, jobs) {
        (None, _) => {
            // Already a forest.
            shared.offer(0, full);
        }
        (Some(_), 1) => {
            search(&mg, full, 0, 0, &shared);
        }
        (Some(cycle), _) => {
            // Fan the first branching level out across workers; they share
            // the incumbent bound.
            let branches: Vec<(u64, u64)> = {
                let mut kept = 0u64;
                let mut out = Vec::new();
                for &v in cycle {
                    out.push((full & !(1u64 << v), kept));
                    kept |= 1 << v;
                }
                out
            };
            let next = AtomicUsize::new(0);
            std::thread::scope(|scope| {
                for _ in 0..jobs.min(branches.len()) {
                    scope.spawn(|| loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= branches.len() || shared.stop.load(Ordering::Relaxed) {
                            break;
                        }
                        let (remaining, kept) = branches[i];
                        search(&mg, remaining, kept, 1, &shared);
                    });
                }
            });
        }
    }

    let phi = shared.best.load(Ordering::Relaxed);
    let truncated = shared.truncated.load(Ordering::Relaxed);
    let nodes = shared.nodes.load(Ordering::Relaxed);

    let witness_mask = if truncated {
        *shared.incumbent.lock().unwrap()
    } else if n <= 25 {
        // Lexicographically smallest maximum forest by inclusion tests.
        // Excluded vertices leave the universe, so the deletion budget
        // drops by one for each of them.
        let mut kept = 0u64;
        let mut excluded = 0u64;
        for v in 0..n {
            let trial = kept | (1 << v);
            let budget = phi - excluded.count_ones() as usize;
            if mg.is_forest(trial) && exists_within(&mg, full & !excluded, trial, budget) {
                kept = trial;
            } else {
                excluded |= 1 << v;
            }
        }
        assert_eq!(
            kept.count_ones() as usize,
            n - phi,
            "inclusion pass must recover a maximum forest"
        );
        kept
    } else {
        // Deterministic first solution at the known optimum.
        let replay = make_shared(&SolverConfig::default(), phi + 1, full, Some(phi));
        search(&mg, full, 0, 0, &replay);
        let mask = *replay.incumbent.lock().unwrap();
        assert_eq!(
            mask.count_ones() as usize,
            n - phi,
            "replay pass must recover a maximum forest"
        );
        mask
    };

    SolveResult {
        forest_number: n - phi,
        decycling_number: phi,
        witness: MaskGraph::vertices(witness_mask).collect(),
        nodes,
        elapsed: start.elapsed(),
        optimal: !truncated,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_graph(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn petersen() -> Graph {
        // Girth-5 cubic graph, not planar; the solvers do not care.
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    #[test]
    fn brute_force_small_cases() {
        let c4 = cycle_graph(4);
        let r = forest_number_bruteforce(&c4);
        assert_eq!(r.forest_number, 3);
        assert_eq!(r.witness, vec![0, 1, 2]);

        let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let r = forest_number_bruteforce(&tree);
        assert_eq!(r.forest_number, 5);
        assert_eq!(r.witness, vec![0, 1, 2, 3, 4]);
        assert_eq!(r.subsets_checked, 1);

        let empty = Graph::edgeless(0);
        assert_eq!(forest_number_bruteforce(&empty).forest_number, 0);
    }

    #[test]
    fn branch_and_bound_matches_brute_force() {
        for g in [
            cycle_graph(4),
            cycle_graph(7),
            petersen(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap(),
        ] {
            let brute = forest_number_bruteforce(&g);
            let exact = forest_number_exact(&g, &SolverConfig::default());
            assert!(exact.optimal);
            assert_eq!(exact.forest_number, brute.forest_number);
            assert_eq!(exact.witness, brute.witness);
            assert!(g.is_induced_forest(&exact.witness));
        }
    }

    #[test]
    fn witness_is_stable_across_worker_counts() {
        let g = petersen();
        let base = forest_number_exact(&g, &SolverConfig::default());
        for jobs in [2, 4] {
            let par = forest_number_exact(
                &g,
                &SolverConfig {
                    jobs,
                    ..SolverConfig::default()
                },
            );
            assert_eq!(par.forest_number, base.forest_number);
            assert_eq!(par.witness, base.witness);
        }
    }

    #[test]
    fn petersen_forest_number() {
        // Deleting fewer than 3 vertices cannot break all 5-cycles.
        let r = forest_number_exact(&petersen(), &SolverConfig::default());
        assert_eq!(r.forest_number, 7);
        assert_eq!(r.decycling_number, 3);
    }

    #[test]
    fn node_limit_reports_truncation() {
        let r = forest_number_exact(
            &petersen(),
            &SolverConfig {
                node_limit: Some(1),
                ..SolverConfig::default()
            },
        );
        assert!(!r.optimal);
        assert!(r.forest_number <= 7);
        assert!(petersen().is_induced_forest(&r.witness));
    }

    #[test]
    fn independent_set_on_cycles() {
        assert_eq!(max_independent_set(&cycle_graph(5)).0, 2);
        let (alpha, witness) = max_independent_set(&cycle_graph(6));
        assert_eq!(alpha, 3);
        assert_eq!(witness, vec![0, 2, 4]);
        let (alpha, witness) = max_independent_set(&petersen());
        assert_eq!(alpha, 4);
        assert!(witness.len() == 4);
    }

    #[test]
    fn forests_need_no_deletions() {
        let tree = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = forest_number_exact(&tree, &SolverConfig::default());
        assert_eq!(r.forest_number, 4);
        assert_eq!(r.witness, vec![0, 1, 2, 3]);
        assert!(r.optimal);
    }
}
