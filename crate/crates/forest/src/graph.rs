//! Simple undirected graphs with optional combinatorial embeddings.
//!
//! An embedded graph stores, for every vertex, its neighbors in clockwise
//! rotation order, plus one designated outer face per connected component.
//! Face tracing follows the next-dart rule: the dart after (u, v) is
//! (v, w) where w succeeds u in the rotation at v. A rotation system is
//! accepted only if every component satisfies n - m + f = 2, which is
//! exactly planarity of the embedding. Mutating operations return new
//! graphs; they re-trace and re-validate, and carry the outer-face
//! designation across the mutation when a dart of the old outer walk
//! survives.

use crate::bounds::GirthClass;
use std::collections::BTreeMap;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("rotation lists are asymmetric: {0} lists {1} but {1} does not list {0}")]
    AsymmetricRotation(usize, usize),
    #[error("rotation system is not planar: a component with {n} vertices and {m} edges traces {f} faces")]
    NotPlanar { n: usize, m: usize, f: usize },
    #[error("edge {0}-{1} already present")]
    EdgeExists(usize, usize),
    #[error("edge {0}-{1} not present")]
    EdgeMissing(usize, usize),
    #[error("edge {u}-{v} would close a cycle of length {cycle} below the girth floor {min}")]
    GirthGuard {
        u: usize,
        v: usize,
        cycle: usize,
        min: usize,
    },
    #[error("operation requires an embedded graph")]
    NotEmbedded,
    #[error("operation requires a connected graph")]
    NotConnected,
    #[error("no face contains all of the requested attachment vertices")]
    NoHostFace,
    #[error("attachment list is empty, repeats a vertex, or is out of range")]
    BadAttachment,
    #[error("vertex sequence is not a simple cycle in the graph")]
    NotACycle,
    #[error("declared outer walk does not match any traced face")]
    OuterWalkMismatch,
    #[error("graph girth {girth} is below the audit mode floor {min}")]
    GirthBelowMode { girth: usize, min: usize },
}

/// Designates the outer face of one component: either a dart lying on its
/// boundary walk or the lone vertex of an edgeless component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OuterRef {
    Dart(usize, usize),
    Isolated(usize),
}

/// One traced face: its boundary darts in walk order and the visited
/// vertices (`vertices[i]` is the tail of `darts[i]`). A face of an
/// isolated vertex has no darts and a single listed vertex. The face
/// length is the number of darts, so a bridge contributes two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<(usize, usize)>,
    pub vertices: Vec<usize>,
    pub component: usize,
    pub is_outer: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Distinct vertices on the boundary, ascending.
    pub fn distinct_vertices(&self) -> Vec<usize> {
        let mut vs = self.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// All faces of an embedded graph, with a dart index for reverse lookup.
#[derive(Debug, Clone)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    dart_face: HashMap<(usize, usize), usize>,
}

impl FaceSet {
    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<usize> {
        self.dart_face.get(&(u, v)).copied()
    }

    pub fn outer_of_component(&self, component: usize) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.component == component && f.is_outer)
    }

    /// Face length histogram: length -> number of faces.
    pub fn length_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for f in &self.faces {
            *counts.entry(f.len()).or_insert(0) += 1;
        }
        counts
    }
}

/// Vertex partition induced by a separating test on a cycle: vertices
/// strictly inside, strictly outside (including all other components), and
/// the cycle itself. The inside is the side not containing the outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSides {
    pub interior: Vec<usize>,
    pub exterior: Vec<usize>,
    pub on_cycle: Vec<usize>,
}

impl CycleSides {
    pub fn is_separating(&self) -> bool {
        !self.interior.is_empty() && !self.exterior.is_empty()
    }
}

/// Result of a vertex deletion: the new graph plus both label maps.
#[derive(Debug, Clone)]
pub struct Deletion {
    pub graph: Graph,
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

/// A face that fails its local degree requirement under an audit mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceViolation {
    pub face: usize,
    pub len: usize,
    pub vertices: Vec<usize>,
    /// Distinct boundary vertices of degree at least 4.
    pub high_degree: usize,
    pub required: usize,
}

/// Charge accounting over a connected embedded graph.
///
/// `euler_sum` is the total of (2d - 6) over vertex degrees plus (l - 6)
/// over face lengths; it equals -12 for every connected plane graph. The
/// `charge_margins` pair aggregates the face requirements: in girth-4 mode
/// it is (4·n4 + 5·n5p - 4·k4 - 2·k5, 2·n4 + 4·n5p - 2·k4 - k5) where n4
/// counts degree-4 vertices, n5p degree >= 5, and k4, k5 the 4- and
/// 5-faces; in girth-5 mode it is (4·n4p - 2·k5, 2·n4p - k5) with n4p the
/// vertices of degree >= 4. A negative margin witnesses that the local
/// requirements cannot all be met.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub degree_counts: BTreeMap<usize, usize>,
    pub face_counts: BTreeMap<usize, usize>,
    pub euler_sum: i64,
    pub violations: Vec<FaceViolation>,
    pub charge_margins: [i64; 2],
}

/// An undirected simple graph. When `embedded` is set, `rot[v]` is the
/// clockwise neighbor order around v and `outer` designates one outer face
/// per component; otherwise `rot[v]` is sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    rot: Vec<Vec<usize>>,
    embedded: bool,
    outer: Vec<OuterRef>,
}

fn normalize_edge(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Successor of u in the cyclic list rot_v. Panics if u is absent.
fn rotation_successor(rot_v: &[usize], u: usize) -> usize {
    let i = rot_v
        .iter()
        .position(|&x| x == u)
        .expect("dart tail must appear in the head's rotation");
    rot_v[(i + 1) % rot_v.len()]
}

struct RawFace {
    darts: Vec<(usize, usize)>,
    vertices: Vec<usize>,
}

impl RawFace {
    fn min_dart(&self) -> Option<(usize, usize)> {
        self.darts.iter().copied().min()
    }
}

/// Trace every face of the rotation system. Deterministic: faces are
/// emitted in order of their first dart under the (vertex, rotation
/// position) scan, and isolated vertices contribute a dartless face at
/// their scan position.
fn trace_rotation(rot: &[Vec<usize>]) -> (Vec<RawFace>, HashMap<(usize, usize), usize>) {
    let mut faces = Vec::new();
    let mut dart_face: HashMap<(usize, usize), usize> = HashMap::new();
    for u in 0..rot.len() {
        if rot[u].is_empty() {
            faces.push(RawFace {
                darts: Vec::new(),
                vertices: vec![u],
            });
            continue;
        }
        for &v in &rot[u] {
            if dart_face.contains_key(&(u, v)) {
                continue;
            }
            let idx = faces.len();
            let mut darts = Vec::new();
            let mut vertices = Vec::new();
            let (mut a, mut b) = (u, v);
            loop {
                darts.push((a, b));
                vertices.push(a);
                dart_face.insert((a, b), idx);
                let c = rotation_successor(&rot[b], a);
                a = b;
                b = c;
                if (a, b) == (u, v) {
                    break;
                }
            }
            faces.push(RawFace { darts, vertices });
        }
    }
    (faces, dart_face)
}

/// True if `walk` equals `cycle` up to rotation and reflection.
fn walk_matches(cycle: &[usize], walk: &[usize]) -> bool {
    if cycle.len() != walk.len() {
        return false;
    }
    let k = cycle.len();
    if k == 0 {
        return true;
    }
    for start in 0..k {
        if (0..k).all(|i| walk[(start + i) % k] == cycle[i]) {
            return true;
        }
        if (0..k).all(|i| walk[(start + k - i) % k] == cycle[i]) {
            return true;
        }
    }
    false
}

impl Graph {
    /// A graph with n vertices and no edges, not embedded.
    pub fn edgeless(n: usize) -> Graph {
        Graph {
            rot: vec![Vec::new(); n],
            embedded: false,
            outer: Vec::new(),
        }
    }

    /// Build an unembedded graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(normalize_edge(u, v).0, normalize_edge(u, v).1));
            }
            g.rot[u].push(v);
            g.rot[v].push(u);
        }
        for list in &mut g.rot {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Build an embedded graph from clockwise rotation lists. The outer
    /// face of each component defaults to its longest face, ties broken by
    /// the lexicographically smallest dart.
    pub fn from_rotations(rot: Vec<Vec<usize>>) -> Result<Graph, GraphError> {
        Graph::assemble_embedded(rot, &[])
    }

    /// Like [`Graph::from_rotations`], with explicit outer boundary walks.
    /// Each walk must list the boundary vertices of a traced face in order
    /// (either orientation, any starting point); at most one walk per
    /// component, and components without a walk keep the default.
    pub fn from_rotations_outer(
        rot: Vec<Vec<usize>>,
        walks: &[Vec<usize>],
    ) -> Result<Graph, GraphError> {
        let mut g = Graph::assemble_embedded(rot, &[])?;
        if walks.is_empty() {
            return Ok(g);
        }
        let comp_of = g.component_ids();
        let faces = g.trace_faces()?;
        for walk in walks {
            let hit = faces
                .faces
                .iter()
                .position(|f| walk_matches(&f.vertices, walk))
                .ok_or(GraphError::OuterWalkMismatch)?;
            let face = &faces.faces[hit];
            let reference = match face.darts.first() {
                Some(&(a, b)) => OuterRef::Dart(a, b),
                None => OuterRef::Isolated(face.vertices[0]),
            };
            let comp = face.component;
            let slot = g
                .outer
                .iter()
                .position(|r| comp_of[r.anchor_vertex()] == comp)
                .expect("every component has an outer designation");
            g.outer[slot] = reference;
        }
        Ok(g)
    }

    /// Validate a rotation table, trace it, check planarity per component,
    /// and pick outer faces. `hints` are darts carried over from a prior
    /// graph: the first hint lying in a component designates its outer
    /// face, and components no hint reaches use the default rule.
    pub(crate) fn assemble_embedded(
        rot: Vec<Vec<usize>>,
        hints: &[(usize, usize)],
    ) -> Result<Graph, GraphError> {
        let n = rot.len();
        for (u, list) in rot.iter().enumerate() {
            let mut seen = list.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != list.len() {
                let dup = list
                    .iter()
                    .find(|&&v| list.iter().filter(|&&w| w == v).count() > 1)
                    .copied()
                    .unwrap();
                return Err(GraphError::DuplicateEdge(
                    normalize_edge(u, dup).0,
                    normalize_edge(u, dup).1,
                ));
            }
            for &v in list {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { v, n });
                }
                if v == u {
                    return Err(GraphError::SelfLoop(u));
                }
                if !rot[v].contains(&u) {
                    return Err(GraphError::AsymmetricRotation(u, v));
                }
            }
        }

        let mut g = Graph {
            rot,
            embedded: true,
            outer: Vec::new(),
        };
        let comp_of = g.component_ids();
        let comp_count = comp_of.iter().copied().max().map_or(0, |c| c + 1);
        let (faces, _) = trace_rotation(&g.rot);

        let mut comp_n = vec![0usize; comp_count];
        let mut comp_m2 = vec![0usize; comp_count];
        let mut comp_f = vec![0usize; comp_count];
        for v in 0..n {
            comp_n[comp_of[v]] += 1;
            comp_m2[comp_of[v]] += g.rot[v].len();
        }
        for f in &faces {
            comp_f[comp_of[f.vertices[0]]] += 1;
        }
        for c in 0..comp_count {
            let m = comp_m2[c] / 2;
            if comp_n[c] + comp_f[c] != m + 2 {
                return Err(GraphError::NotPlanar {
                    n: comp_n[c],
                    m,
                    f: comp_f[c],
                });
            }
        }

        // Outer faces: hints first, default rule for the rest.
        let mut chosen: Vec<Option<OuterRef>> = vec![None; comp_count];
        for &(a, b) in hints {
            if a < n && b < n && g.rot[a].contains(&b) {
                let c = comp_of[a];
                if chosen[c].is_none() {
                    chosen[c] = Some(OuterRef::Dart(a, b));
                }
            }
        }
        for (c, slot) in chosen.iter_mut().enumerate() {
            if slot.is_some() {
                continue;
            }
            type FaceKey = (usize, std::cmp::Reverse<(usize, usize)>);
            let mut best: Option<(FaceKey, OuterRef)> = None;
            for f in faces.iter().filter(|f| comp_of[f.vertices[0]] == c) {
                let reference = match f.min_dart() {
                    Some((a, b)) => OuterRef::Dart(a, b),
                    None => OuterRef::Isolated(f.vertices[0]),
                };
                let key: FaceKey = (
                    f.darts.len(),
                    std::cmp::Reverse(f.min_dart().unwrap_or((usize::MAX, usize::MAX))),
                );
                if best.as_ref().is_none_or(|(k, _)| key > *k) {
                    best = Some((key, reference));
                }
            }
            *slot = Some(best.expect("component has at least one face").1);
        }
        g.outer = chosen.into_iter().map(|r| r.unwrap()).collect();
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n() {
            return Err(GraphError::VertexOutOfRange { v, n: self.n() });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn m(&self) -> usize {
        self.rot.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn is_embedded(&self) -> bool {
        self.embedded
    }

    /// Neighbor list; clockwise rotation order when embedded, ascending
    /// otherwise.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.rot.iter().map(|l| l.len()).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rot[u].contains(&v)
    }

    /// All edges as (min, max) pairs, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n() {
            for &v in &self.rot[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn degree_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for v in 0..self.n() {
            *counts.entry(self.degree(v)).or_insert(0) += 1;
        }
        counts
    }

    pub fn outer_refs(&self) -> &[OuterRef] {
        &self.outer
    }

    /// Component id per vertex; components are numbered by their smallest
    /// vertex in ascending order.
    pub fn component_ids(&self) -> Vec<usize> {
        let n = self.n();
        let mut id = vec![usize::MAX; n];
        let mut next = 0;
        for root in 0..n {
            if id[root] != usize::MAX {
                continue;
            }
            let mut queue = vec![root];
            id[root] = next;
            while let Some(u) = queue.pop() {
                for &v in &self.rot[u] {
                    if id[v] == usize::MAX {
                        id[v] = next;
                        queue.push(v);
                    }
                }
            }
            next += 1;
        }
        id
    }

    /// Vertex sets of the components, each ascending, ordered by smallest
    /// vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let ids = self.component_ids();
        let count = ids.iter().copied().max().map_or(0, |c| c + 1);
        let mut out = vec![Vec::new(); count];
        for (v, &c) in ids.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.component_ids().iter().all(|&c| c == 0)
    }

    /// BFS distance between two vertices, None if disconnected.
    pub fn dist(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return Some(0);
        }
        let mut dist = vec![usize::MAX; self.n()];
        dist[u] = 0;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.rot[x] {
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

    /// Bridges as (min, max) pairs, ascending.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = Vec::new();
        let mut timer = 0;
        // Iterative DFS; the stack holds (vertex, parent, next neighbor
        // index to examine).
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(top) = stack.last_mut() {
                let (u, parent, i) = *top;
                if i < self.rot[u].len() {
                    top.2 += 1;
                    let v = self.rot[u][i];
                    if disc[v] == usize::MAX {
                        disc[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        stack.push((v, u, 0));
                    } else if v != parent {
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if let Some(prev) = stack.last_mut() {
                        let p = prev.0;
                        low[p] = low[p].min(low[u]);
                        if low[u] > disc[p] {
                            out.push(normalize_edge(p, u));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_two_edge_connected(&self) -> bool {
        self.is_connected() && self.bridges().is_empty()
    }

    /// A shortest cycle as a vertex sequence, rotated to start at its
    /// smallest vertex with the smaller of its two neighbors second.
    /// None when the graph is a forest.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let n = self.n();
        let mut best: Option<Vec<usize>> = None;
        let mut best_len = usize::MAX;
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.rot[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            for x in 0..n {
                if dist[x] == usize::MAX {
                    continue;
                }
                for &y in &self.rot[x] {
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
                    // Drop the common prefix; the remainder plus the edge
                    // (x, y) is a simple cycle no longer than the walk.
                    let mut split = 0;
                    while split < px.len() && split < py.len() && px[split] == py[split] {
                        split += 1;
                    }
                    let mut cycle: Vec<usize> = px[split - 1..].to_vec();
                    cycle.extend(py[split..].iter().rev());
                    if cycle.len() < best_len && cycle.len() >= 3 {
                        best_len = cycle.len();
                        best = Some(canonical_cycle(&cycle));
                    }
                }
            }
        }
        best
    }

    /// Length of a shortest cycle; None for forests.
    pub fn girth(&self) -> Option<usize> {
        self.shortest_cycle().map(|c| c.len())
    }

    /// True when the induced subgraph on `subset` is acyclic. Checked two
    /// ways (union-find cycle detection and the edge-count identity
    /// m = n - components); the routes must agree.
    pub fn is_induced_forest(&self, subset: &[usize]) -> bool {
        let mut in_set = vec![false; self.n()];
        for &v in subset {
            assert!(v < self.n(), "subset vertex {v} out of range");
            assert!(!in_set[v], "subset repeats vertex {v}");
            in_set[v] = true;
        }
        let mut uf: HashMap<usize, usize> = subset.iter().map(|&v| (v, v)).collect();
        fn find(uf: &mut HashMap<usize, usize>, v: usize) -> usize {
            let p = uf[&v];
            if p == v {
                return v;
            }
            let r = find(uf, p);
            uf.insert(v, r);
            r
        }
        let mut edge_count = 0usize;
        let mut cycle_found = false;
        for &u in subset {
            for &v in &self.rot[u] {
                if u < v && in_set[v] {
                    edge_count += 1;
                    let (ru, rv) = (find(&mut uf, u), find(&mut uf, v));
                    if ru == rv {
                        cycle_found = true;
                    } else {
                        uf.insert(ru, rv);
                    }
                }
            }
        }
        let roots: std::collections::HashSet<usize> = subset
            .iter()
            .map(|&v| find(&mut uf, v))
            .collect();
        let by_count = edge_count + roots.len() == subset.len();
        assert_eq!(
            !cycle_found,
            by_count,
            "acyclicity routes disagree on subset {subset:?}"
        );
        by_count
    }

    /// Neighbor bitmasks for solver use. Requires n <= 64.
    pub fn neighbor_masks(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "bitmask form needs at most 64 vertices");
        self.rot
            .iter()
            .map(|l| l.iter().fold(0u64, |acc, &v| acc | (1 << v)))
            .collect()
    }

    /// Delete a set of vertices; survivors are relabeled in order. An
    /// embedded graph stays embedded (rotations are spliced), and each new
    /// component inherits its outer face from the first surviving dart of
    /// the old outer walks, falling back to the default rule.
    pub fn delete_vertices(&self, dels: &[usize]) -> Result<Deletion, GraphError> {
        let mut drop = vec![false; self.n()];
        for &v in dels {
            self.check_vertex(v)?;
            drop[v] = true;
        }
        let mut old_to_new = vec![None; self.n()];
        let mut new_to_old = Vec::new();
        for v in 0..self.n() {
            if !drop[v] {
                old_to_new[v] = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let new_rot: Vec<Vec<usize>> = new_to_old
            .iter()
            .map(|&v| {
                self.rot[v]
                    .iter()
                    .filter_map(|&w| old_to_new[w])
                    .collect()
            })
            .collect();
        let graph = if self.embedded {
            let hints = self.outer_walk_darts()?
                .into_iter()
                .filter_map(|(a, b)| Some((old_to_new[a]?, old_to_new[b]?)))
                .collect::<Vec<_>>();
            Graph::assemble_embedded(new_rot, &hints)?
        } else {
            Graph {
                rot: new_rot,
                embedded: false,
                outer: Vec::new(),
            }
        };
        Ok(Deletion {
            graph,
            old_to_new,
            new_to_old,
        })
    }

    /// Keep exactly `verts`; same relabeling contract as
    /// [`Graph::delete_vertices`].
    pub fn induced_subgraph(&self, verts: &[usize]) -> Result<Deletion, GraphError> {
        let mut keep = vec![false; self.n()];
        for &v in verts {
            self.check_vertex(v)?;
            keep[v] = true;
        }
        let dels: Vec<usize> = (0..self.n()).filter(|&v| !keep[v]).collect();
        self.delete_vertices(&dels)
    }

    /// Delete the edge u-v, keeping all vertex ids. On an embedded graph
    /// the two faces bordering the edge merge and the embedding is
    /// re-validated; surviving outer darts keep their designation.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            let (a, b) = normalize_edge(u, v);
            return Err(GraphError::EdgeMissing(a, b));
        }
        let mut rot = self.rot.clone();
        rot[u].retain(|&t| t != v);
        rot[v].retain(|&t| t != u);
        if !self.embedded {
            return Ok(Graph {
                rot,
                embedded: false,
                outer: Vec::new(),
            });
        }
        let hints: Vec<(usize, usize)> = self
            .outer_walk_darts()?
            .into_iter()
            .filter(|&(a, b)| !(a == u && b == v) && !(a == v && b == u))
            .collect();
        Graph::assemble_embedded(rot, &hints)
    }

    /// The darts of all designated outer faces, in component order.
    fn outer_walk_darts(&self) -> Result<Vec<(usize, usize)>, GraphError> {
        let faces = self.trace_faces()?;
        let mut out = Vec::new();
        for f in faces.faces.iter().filter(|f| f.is_outer) {
            out.extend(f.darts.iter().copied());
        }
        Ok(out)
    }

    /// Add the edge u-v. With `min_girth` set, refuse when the new cycle
    /// through the edge would be shorter (the cycle length is 1 plus the
    /// current u-v distance). On an embedded graph the chord is drawn
    /// inside the first traced face containing both endpoints; when no
    /// face does, the result is returned without an embedding.
    pub fn add_edge(
        &self,
        u: usize,
        v: usize,
        min_girth: Option<usize>,
    ) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            let (a, b) = normalize_edge(u, v);
            return Err(GraphError::EdgeExists(a, b));
        }
        if let (Some(min), Some(d)) = (min_girth, self.dist(u, v)) {
            if d + 1 < min {
                return Err(GraphError::GirthGuard {
                    u,
                    v,
                    cycle: d + 1,
                    min,
                });
            }
        }
        if !self.embedded {
            let mut rot = self.rot.clone();
            rot[u].push(v);
            rot[v].push(u);
            rot[u].sort_unstable();
            rot[v].sort_unstable();
            return Ok(Graph {
                rot,
                embedded: false,
                outer: Vec::new(),
            });
        }
        let faces = self.trace_faces()?;
        let host = faces.faces.iter().find(|f| {
            f.vertices.contains(&u) && f.vertices.contains(&v) && !f.darts.is_empty()
        });
        let Some(host) = host else {
            // No face allows the chord; keep the graph but drop the drawing.
            let mut rot: Vec<Vec<usize>> = self
                .rot
                .iter()
                .map(|l| {
                    let mut l = l.clone();
                    l.sort_unstable();
                    l
                })
                .collect();
            rot[u].push(v);
            rot[v].push(u);
            rot[u].sort_unstable();
            rot[v].sort_unstable();
            return Ok(Graph {
                rot,
                embedded: false,
                outer: Vec::new(),
            });
        };
        // First visits of u and v on the host face; the in-neighbor of a
        // visit marks the angular slot the chord occupies.
        let in_neighbor = |target: usize| {
            host.darts
                .iter()
                .find(|&&(_, b)| b == target)
                .map(|&(a, _)| a)
                .expect("face visit has an incoming dart")
        };
        let mut rot = self.rot.clone();
        let iu = rot[u]
            .iter()
            .position(|&x| x == in_neighbor(u))
            .expect("in-neighbor present in rotation");
        rot[u].insert(iu + 1, v);
        let iv = rot[v]
            .iter()
            .position(|&x| x == in_neighbor(v))
            .expect("in-neighbor present in rotation");
        rot[v].insert(iv + 1, u);
        let hints: Vec<(usize, usize)> = self.outer_walk_darts()?;
        Graph::assemble_embedded(rot, &hints)
    }

    /// Add a new vertex adjacent to `nbrs` (returned id is the old n). On
    /// an embedded graph the vertex is placed inside the first traced face
    /// whose boundary covers all attachments; its rotation lists the
    /// attachments in reverse boundary order, which keeps the system
    /// planar.
    pub fn add_vertex_with_edges(&self, nbrs: &[usize]) -> Result<(Graph, usize), GraphError> {
        self.add_vertex_in_face_with(nbrs, &[])
    }

    /// As `add_vertex_with_edges`, but the host face must also cover the
    /// `also` vertices. Callers that will join the new vertex to further
    /// vertices pass them here so the later edges stay drawable.
    pub(crate) fn add_vertex_in_face_with(
        &self,
        nbrs: &[usize],
        also: &[usize],
    ) -> Result<(Graph, usize), GraphError> {
        if nbrs.is_empty() {
            return Err(GraphError::BadAttachment);
        }
        let mut seen = nbrs.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != nbrs.len() {
            return Err(GraphError::BadAttachment);
        }
        for &v in nbrs {
            self.check_vertex(v)?;
        }
        for &v in also {
            self.check_vertex(v)?;
        }
        let z = self.n();
        if !self.embedded {
            let mut rot = self.rot.clone();
            rot.push(seen.clone());
            for &v in &seen {
                rot[v].push(z);
                rot[v].sort_unstable();
            }
            return Ok((
                Graph {
                    rot,
                    embedded: false,
                    outer: Vec::new(),
                },
                z,
            ));
        }
        if nbrs.len() == 1 && self.degree(nbrs[0]) == 0 && also.is_empty() {
            let v = nbrs[0];
            let mut rot = self.rot.clone();
            rot.push(vec![v]);
            rot[v] = vec![z];
            let hints = self.outer_walk_darts()?;
            return Ok((Graph::assemble_embedded(rot, &hints)?, z));
        }
        let faces = self.trace_faces()?;
        let host = faces
            .faces
            .iter()
            .find(|f| {
                !f.darts.is_empty()
                    && nbrs.iter().all(|v| f.vertices.contains(v))
                    && also.iter().all(|v| f.vertices.contains(v))
            })
            .ok_or(GraphError::NoHostFace)?;
        // First visit of each attachment along the walk fixes both the
        // boundary order and the angular slot at the attachment.
        let mut visits: Vec<(usize, usize)> = Vec::new();
        for &v in nbrs {
            let pos = host
                .vertices
                .iter()
                .position(|&w| w == v)
                .expect("attachment lies on the host face");
            visits.push((pos, v));
        }
        visits.sort_unstable();
        let mut rot = self.rot.clone();
        for &(pos, v) in &visits {
            let in_nbr = host.darts[(pos + host.len() - 1) % host.len()].0;
            let i = rot[v]
                .iter()
                .position(|&t| t == in_nbr)
                .expect("in-neighbor present in rotation");
            rot[v].insert(i + 1, z);
        }
        let mut z_rot: Vec<usize> = visits.iter().map(|&(_, v)| v).collect();
        z_rot.reverse();
        rot.push(z_rot);
        let hints = self.outer_walk_darts()?;
        Ok((Graph::assemble_embedded(rot, &hints)?, z))
    }

    /// Trace all faces and mark the designated outer face per component.
    pub fn trace_faces(&self) -> Result<FaceSet, GraphError> {
        if !self.embedded {
            return Err(GraphError::NotEmbedded);
        }
        let comp_of = self.component_ids();
        let (raw, dart_face) = trace_rotation(&self.rot);
        let mut faces: Vec<Face> = raw
            .into_iter()
            .map(|f| {
                let component = comp_of[f.vertices[0]];
                Face {
                    darts: f.darts,
                    vertices: f.vertices,
                    component,
                    is_outer: false,
                }
            })
            .collect();
        for r in &self.outer {
            let idx = match *r {
                OuterRef::Dart(a, b) => dart_face[&(a, b)],
                OuterRef::Isolated(v) => faces
                    .iter()
                    .position(|f| f.darts.is_empty() && f.vertices == [v])
                    .expect("isolated outer reference matches its face"),
            };
            faces[idx].is_outer = true;
        }
        Ok(FaceSet { faces, dart_face })
    }

    /// Partition the vertices by the side of a simple cycle they lie on.
    /// The side not containing the designated outer face is the interior;
    /// vertices of other components count as exterior. The cycle bounds a
    /// face exactly when one side holds no vertices.
    pub fn cycle_sides(&self, cycle: &[usize]) -> Result<CycleSides, GraphError> {
        if !self.embedded {
            return Err(GraphError::NotEmbedded);
        }
        if cycle.len() < 3 {
            return Err(GraphError::NotACycle);
        }
        let mut seen = vec![false; self.n()];
        for &v in cycle {
            self.check_vertex(v)?;
            if seen[v] {
                return Err(GraphError::NotACycle);
            }
            seen[v] = true;
        }
        for i in 0..cycle.len() {
            let u = cycle[i];
            let v = cycle[(i + 1) % cycle.len()];
            if !self.has_edge(u, v) {
                return Err(GraphError::NotACycle);
            }
        }
        let comp_of = self.component_ids();
        let comp = comp_of[cycle[0]];
        let faces = self.trace_faces()?;
        let cycle_edges: std::collections::HashSet<(usize, usize)> = (0..cycle.len())
            .map(|i| normalize_edge(cycle[i], cycle[(i + 1) % cycle.len()]))
            .collect();

        // Union faces of the cycle's component across every edge that is
        // not on the cycle; the cycle must leave exactly two groups.
        let mut group: Vec<usize> = (0..faces.faces.len()).collect();
        fn find(group: &mut Vec<usize>, i: usize) -> usize {
            if group[i] == i {
                return i;
            }
            let r = find(group, group[i]);
            group[i] = r;
            r
        }
        for (u, v) in self.edges() {
            if comp_of[u] != comp || cycle_edges.contains(&(u, v)) {
                continue;
            }
            let f1 = faces.face_of_dart(u, v).unwrap();
            let f2 = faces.face_of_dart(v, u).unwrap();
            let (r1, r2) = (find(&mut group, f1), find(&mut group, f2));
            if r1 != r2 {
                group[r1] = r2;
            }
        }
        let comp_faces: Vec<usize> = (0..faces.faces.len())
            .filter(|&i| faces.faces[i].component == comp)
            .collect();
        let mut roots: Vec<usize> = comp_faces
            .iter()
            .map(|&i| find(&mut group, i))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        assert_eq!(
            roots.len(),
            2,
            "a simple cycle in a planar embedding separates the dual into two parts"
        );
        let outer_face = faces
            .outer_of_component(comp)
            .expect("component has an outer face");
        let outer_root = find(&mut group, outer_face);

        let mut interior = Vec::new();
        let mut exterior = Vec::new();
        for v in 0..self.n() {
            if seen[v] {
                continue;
            }
            if comp_of[v] != comp || self.degree(v) == 0 {
                exterior.push(v);
                continue;
            }
            let f = faces.face_of_dart(v, self.rot[v][0]).unwrap();
            if find(&mut group, f) == outer_root {
                exterior.push(v);
            } else {
                interior.push(v);
            }
        }
        Ok(CycleSides {
            interior,
            exterior,
            on_cycle: cycle.to_vec(),
        })
    }

    /// Run the charge audit over a connected embedded graph whose girth is
    /// at least the mode floor (4-cycle-free classes use the girth-5 mode).
    pub fn discharging_audit(&self, mode: GirthClass) -> Result<AuditReport, GraphError> {
        if !self.embedded {
            return Err(GraphError::NotEmbedded);
        }
        if !self.is_connected() {
            return Err(GraphError::NotConnected);
        }
        if let Some(g) = self.girth() {
            if g < mode.min_girth() {
                return Err(GraphError::GirthBelowMode {
                    girth: g,
                    min: mode.min_girth(),
                });
            }
        }
        let faces = self.trace_faces()?;
        let degree_counts = self.degree_counts();
        let face_counts = faces.length_counts();
        let euler_sum: i64 = degree_counts
            .iter()
            .map(|(&d, &k)| (2 * d as i64 - 6) * k as i64)
            .sum::<i64>()
            + face_counts
                .iter()
                .map(|(&l, &k)| (l as i64 - 6) * k as i64)
                .sum::<i64>();

        let mut violations = Vec::new();
        for (i, f) in faces.faces.iter().enumerate() {
            let required = match (mode, f.len()) {
                (GirthClass::Girth4, 4) => 4,
                (GirthClass::Girth4, 5) | (GirthClass::Girth5, 5) => 2,
                _ => continue,
            };
            let high_degree = f
                .distinct_vertices()
                .iter()
                .filter(|&&v| self.degree(v) >= 4)
                .count();
            if high_degree < required {
                violations.push(FaceViolation {
                    face: i,
                    len: f.len(),
                    vertices: f.distinct_vertices(),
                    high_degree,
                    required,
                });
            }
        }

        let count_deg = |pred: &dyn Fn(usize) -> bool| -> i64 {
            (0..self.n()).filter(|&v| pred(self.degree(v))).count() as i64
        };
        let k4 = *face_counts.get(&4).unwrap_or(&0) as i64;
        let k5 = *face_counts.get(&5).unwrap_or(&0) as i64;
        let charge_margins = match mode {
            GirthClass::Girth4 => {
                let n4 = count_deg(&|d| d == 4);
                let n5p = count_deg(&|d| d >= 5);
                [
                    4 * n4 + 5 * n5p - 4 * k4 - 2 * k5,
                    2 * n4 + 4 * n5p - 2 * k4 - k5,
                ]
            }
            GirthClass::Girth5 => {
                let n4p = count_deg(&|d| d >= 4);
                [4 * n4p - 2 * k5, 2 * n4p - k5]
            }
        };
        Ok(AuditReport {
            degree_counts,
            face_counts,
            euler_sum,
            violations,
            charge_margins,
        })
    }
}

impl OuterRef {
    fn anchor_vertex(&self) -> usize {
        match *self {
            OuterRef::Dart(a, _) => a,
            OuterRef::Isolated(v) => v,
        }
    }
}

/// Rotate and orient a simple cycle so it starts at its smallest vertex
/// and continues toward the smaller of that vertex's two cycle neighbors.
pub fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    let start = (0..k).min_by_key(|&i| cycle[i]).unwrap();
    let fwd = cycle[(start + 1) % k];
    let bwd = cycle[(start + k - 1) % k];
    let mut out = Vec::with_capacity(k);
    if fwd <= bwd {
        for i in 0..k {
            out.push(cycle[(start + i) % k]);
        }
    } else {
        for i in 0..k {
            out.push(cycle[(start + k - i) % k]);
        }
    }
    out
}
