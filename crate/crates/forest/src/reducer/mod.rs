//! Reduction engine producing certified induced forests.
//!
//! The entry point is [`reduce`]: it peels a planar graph of girth 4 or 5
//! down to trivial pieces by applying local reduction rules, then lifts the
//! forests found in the reduced graphs back up. Every step is recorded in a
//! [`Certificate`] that an independent party can replay with [`verify`]:
//! the replay re-executes each surgery, re-checks every induced forest, and
//! re-derives the counting bound from the frozen triple tables, so a
//! certificate never has to be trusted.
//!
//! A reduction step deletes a set of vertices, optionally adds apex
//! vertices joined to surviving attachment points, and optionally adds
//! edges between survivors. The step carries a triple `(alpha, beta,
//! gamma)` with the contract: the vertex count drops by exactly `alpha`,
//! the edge count by at least `beta`, and any maximum induced forest of the
//! reduced graph lifts to an induced forest of the original graph with at
//! least `gamma` more vertices. The lift is described case by case, one
//! case per subset of apexes that the reduced forest may contain.

mod helpers;
mod rules4;
mod rules5;

use crate::bounds::{self, GirthClass, Rational};
use crate::exact::{forest_number_exact, SolverConfig};
use crate::graph::{Deletion, Graph, GraphError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

pub(crate) use helpers::RuleCtx;

/// Endpoint of an edge added by a surgery: either a surviving vertex of the
/// parent graph (by parent id) or an apex added by the same surgery (by its
/// index in [`Surgery::apexes`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Old(usize),
    Apex(usize),
}

/// One reduction surgery, in parent-graph coordinates. Applied in order:
/// delete `delete`, add one apex per entry of `apexes` (joined to the
/// listed surviving attachments), then add `edges`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Surgery {
    /// Vertices to delete, sorted and distinct.
    pub delete: Vec<usize>,
    /// Attachment lists of the apexes, each sorted and distinct, in
    /// parent ids. Apex `k` becomes vertex `n_surviving + k` of the child.
    pub apexes: Vec<Vec<usize>>,
    /// Edges to add after the apexes, between survivors and/or apexes.
    pub edges: Vec<(End, End)>,
}

/// One lift case: if the child forest contains exactly the apexes listed in
/// `pattern` (by apex index), drop them and add the parent vertices `add`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LiftCase {
    /// Apex indices present in the child forest, sorted.
    pub pattern: Vec<usize>,
    /// Parent vertices to add, sorted; always a subset of the deleted set.
    pub add: Vec<usize>,
}

/// Complete lift description of a surgery: one case per subset of apexes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LiftSpec {
    pub cases: Vec<LiftCase>,
}

impl LiftSpec {
    /// Lift spec for a surgery without apexes: drop nothing, add `add`.
    pub fn plain(mut add: Vec<usize>) -> Self {
        add.sort_unstable();
        LiftSpec { cases: vec![LiftCase { pattern: Vec::new(), add }] }
    }
}

/// One node of a certificate tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertNode {
    /// Leaf: `forest` is a maximum induced forest, found by exhaustive
    /// search. Verification re-checks that it is an induced forest and
    /// meets the counting bound, but trusts maximality.
    Exact { forest: Vec<usize> },
    /// Leaf: the graph is a single cycle; the forest is everything but
    /// vertex 0.
    Cycle { forest: Vec<usize> },
    /// Leaf: a fallback forest with no optimality or bound claim.
    Heuristic { forest: Vec<usize> },
    /// The graph is disconnected; one part per connected component, each
    /// carrying the component's vertex set in parent ids.
    Split { parts: Vec<(Vec<usize>, CertNode)> },
    /// All bridges were deleted (same vertex set, fewer edges).
    BridgeSplit { removed: Vec<(usize, usize)>, child: Box<CertNode> },
    /// One reduction rule application.
    Reduce {
        rule: String,
        variant: String,
        alpha: u32,
        beta: u32,
        gamma: u32,
        surgery: Surgery,
        lift: LiftSpec,
        child: Box<CertNode>,
    },
}

/// A certified induced forest for a specific graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub class: GirthClass,
    pub n: usize,
    pub m: usize,
    /// The final forest, sorted vertex ids of the input graph.
    pub forest: Vec<usize>,
    /// True if every leaf is exhaustive (`Exact` or `Cycle`), so `forest`
    /// is a maximum induced forest, not just a bound-meeting one.
    pub exact: bool,
    pub root: CertNode,
}

/// Options for [`reduce`].
#[derive(Debug, Clone)]
pub struct ReduceOptions {
    /// Components of at most this many vertices are solved exactly instead
    /// of being reduced further.
    pub exact_threshold: usize,
    /// Search limits for the exact leaves.
    pub solver: SolverConfig,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions { exact_threshold: 30, solver: SolverConfig::default() }
    }
}

#[derive(Debug, Error)]
pub enum ReduceError {
    #[error("graph has no planar embedding; reduction rules need faces")]
    NotEmbedded,
    #[error("graph has girth {girth}, class {class} needs at least {min}")]
    GirthBelowClass { girth: usize, class: GirthClass, min: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Failure modes when replaying a surgery.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExecError {
    #[error("delete set is empty")]
    EmptyDelete,
    #[error("delete set is not sorted and distinct")]
    DeleteNotCanonical,
    #[error("apex attachment list is not sorted and distinct")]
    ApexNotCanonical,
    #[error("apex attachment {0} is deleted by the same surgery")]
    AttachmentDeleted(usize),
    #[error("edge endpoint {0} is deleted by the same surgery")]
    EndpointDeleted(usize),
    #[error("edge endpoint refers to apex {0}, which does not exist")]
    BadApexIndex(usize),
    #[error("added edge cannot be drawn in the embedding")]
    EdgeNotDrawable,
    #[error("reduced graph has girth {got}, below the class floor {min}")]
    GirthViolated { got: usize, min: usize },
    #[error("vertex count dropped by {got}, contract says exactly {want}")]
    AlphaMismatch { want: u32, got: i64 },
    #[error("edge count dropped by {got}, contract needs at least {want}")]
    BetaShortfall { want: u32, got: i64 },
    #[error("lift cases are not exactly one per apex subset")]
    LiftNotPowerSet,
    #[error("lift case is not sorted and distinct")]
    LiftNotCanonical,
    #[error("lift case adds vertex {0}, which is not deleted")]
    LiftOutsideDelete(usize),
    #[error("lift case gains {got} vertices, contract needs at least {want}")]
    GammaShortfall { want: u32, got: i64 },
    #[error("lift case does not induce a forest in the parent graph")]
    LiftNotForest,
    #[error("lift case can collide with a reduced forest")]
    LiftNotViable,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("certificate is for an n={cert}-vertex graph, input has n={got}")]
    VertexCountMismatch { cert: usize, got: usize },
    #[error("certificate is for an m={cert}-edge graph, input has m={got}")]
    EdgeCountMismatch { cert: usize, got: usize },
    #[error("input graph has girth {girth}, class {class} needs at least {min}")]
    ClassMismatch { girth: usize, class: GirthClass, min: usize },
    #[error("leaf forest is not sorted, distinct and in range")]
    LeafNotCanonical,
    #[error("claimed forest does not induce a forest")]
    NotAForest,
    #[error("cycle leaf used on a graph that is not a single cycle")]
    NotACycle,
    #[error("split parts do not match the connected components")]
    SplitMismatch,
    #[error("bridge list does not match the bridges of the graph")]
    BridgeMismatch,
    #[error("triple ({alpha},{beta},{gamma}) is not in the {class} table")]
    UnknownTriple { class: GirthClass, alpha: u32, beta: u32, gamma: u32 },
    #[error("triple ({alpha},{beta},{gamma}) fails the polygon check")]
    TripleRejected { alpha: u32, beta: u32, gamma: u32 },
    #[error("surgery replay failed: {0}")]
    Surgery(#[from] ExecError),
    #[error("no lift case matches the apexes of the child forest")]
    NoLiftCase,
    #[error("lifted forest gains {got} vertices, contract needs {want}")]
    LiftTooSmall { want: u32, got: i64 },
    #[error("root forest of the certificate does not match the tree")]
    ForestMismatch,
    #[error("exact flag does not match the leaves of the tree")]
    ExactFlagMismatch,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Outcome of verifying a certificate.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// The forest re-derived from the tree (equals the certificate's).
    pub forest: Vec<usize>,
    /// Largest `a*n - b*m` over the vertices of the class polygon.
    pub best_bound: Rational,
    /// True if every step preserved the counting bound, so
    /// `forest.len() >= ceil(best_bound)` is proven, not just observed.
    pub certified: bool,
    /// Echo of the certificate's exactness claim.
    pub exact: bool,
}

/// A reduction step applied to a concrete graph: the matched rule, its
/// contract, and the reduced graph, ready to lift forests through.
pub struct Application {
    pub rule: &'static str,
    pub variant: &'static str,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub surgery: Surgery,
    pub lift: LiftSpec,
    applied: Applied,
}

impl Application {
    /// The reduced graph produced by the surgery.
    pub fn reduced(&self) -> &Graph {
        &self.applied.h
    }

    /// Lift an induced forest of the reduced graph back to the parent.
    /// The forest must use child ids; apexes are recognised by id.
    pub fn lift_forest(&self, child_forest: &[usize]) -> Vec<usize> {
        lift_forest(&self.applied, &self.lift, child_forest)
    }
}

/// Result of executing a surgery.
#[derive(Debug)]
pub(crate) struct Applied {
    /// The reduced graph (survivors renumbered, then apexes).
    pub h: Graph,
    /// The deletion step; `del.graph` is the graph before apexes.
    pub del: Deletion,
    /// Vertex count of `del.graph`; apex `k` has child id `h0_n + k`.
    pub h0_n: usize,
    pub dn: i64,
    pub dm: i64,
}

/// Candidate emitted by a rule matcher, before admission checks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct RawCandidate {
    pub variant: &'static str,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub surgery: Surgery,
    pub lift: LiftSpec,
}

/// One reduction rule: a stable id, its variant names (for reporting), and
/// a matcher that returns every candidate application it can see.
pub(crate) struct RuleDef {
    pub id: &'static str,
    pub variants: &'static [&'static str],
    pub find: fn(&Graph, &RuleCtx) -> Vec<RawCandidate>,
}

fn catalog(class: GirthClass) -> &'static [RuleDef] {
    match class {
        GirthClass::Girth4 => rules4::catalog(),
        GirthClass::Girth5 => rules5::catalog(),
    }
}

/// The rule and variant names of a class, in pipeline order.
pub fn catalog_variants(class: GirthClass) -> Vec<(&'static str, &'static str)> {
    let mut out = Vec::new();
    for rule in catalog(class) {
        for &v in rule.variants {
            out.push((rule.id, v));
        }
    }
    out
}

fn is_sorted_distinct(xs: &[usize]) -> bool {
    xs.windows(2).all(|w| w[0] < w[1])
}

/// Execute a surgery on `g`. Checks embedding survival and the girth
/// floor, but leaves the alpha/beta policy to the caller.
pub(crate) fn apply_surgery(
    g: &Graph,
    class: GirthClass,
    s: &Surgery,
) -> Result<Applied, ExecError> {
    if s.delete.is_empty() {
        return Err(ExecError::EmptyDelete);
    }
    if !is_sorted_distinct(&s.delete) || s.delete.iter().any(|&v| v >= g.n()) {
        return Err(ExecError::DeleteNotCanonical);
    }
    let del = g.delete_vertices(&s.delete)?;
    let h0_n = del.graph.n();

    // Map each attachment list into child ids, insisting on survivors.
    let mut mapped: Vec<Vec<usize>> = Vec::with_capacity(s.apexes.len());
    for att in &s.apexes {
        if !is_sorted_distinct(att) || att.is_empty() {
            return Err(ExecError::ApexNotCanonical);
        }
        let mut list = Vec::with_capacity(att.len());
        for &v in att {
            if v >= g.n() {
                return Err(ExecError::AttachmentDeleted(v));
            }
            match del.old_to_new[v] {
                Some(nv) => list.push(nv),
                None => return Err(ExecError::AttachmentDeleted(v)),
            }
        }
        list.sort_unstable();
        mapped.push(list);
    }

    // Apexes that a later edge will connect must share a face throughout,
    // so each apex is placed in a face that also covers the attachments of
    // its not-yet-added partners and the partners already added.
    let k = s.apexes.len();
    let mut group = (0..k).collect::<Vec<usize>>();
    fn root(group: &mut [usize], i: usize) -> usize {
        if group[i] != i {
            let r = root(group, group[i]);
            group[i] = r;
        }
        group[i]
    }
    for (a, b) in &s.edges {
        if let (End::Apex(i), End::Apex(j)) = (a, b) {
            if *i >= k {
                return Err(ExecError::BadApexIndex(*i));
            }
            if *j >= k {
                return Err(ExecError::BadApexIndex(*j));
            }
            let (ri, rj) = (root(&mut group, *i), root(&mut group, *j));
            if ri != rj {
                group[ri] = rj;
            }
        }
    }

    let mut h = del.graph.clone();
    let mut apex_ids = Vec::with_capacity(k);
    for i in 0..k {
        let mut also: Vec<usize> = Vec::new();
        for j in 0..k {
            if j == i || root(&mut group, j) != root(&mut group, i) {
                continue;
            }
            if j < i {
                also.push(apex_ids[j]);
            } else {
                also.extend_from_slice(&mapped[j]);
            }
        }
        also.sort_unstable();
        also.dedup();
        let (nh, id) = h.add_vertex_in_face_with(&mapped[i], &also)?;
        debug_assert_eq!(id, h0_n + i);
        h = nh;
        apex_ids.push(id);
    }

    for (a, b) in &s.edges {
        let ra = resolve_end(a, &del, &apex_ids)?;
        let rb = resolve_end(b, &del, &apex_ids)?;
        let nh = h.add_edge(ra, rb, Some(class.min_girth()))?;
        if !nh.is_embedded() {
            return Err(ExecError::EdgeNotDrawable);
        }
        h = nh;
    }

    if let Some(girth) = h.girth() {
        if girth < class.min_girth() {
            return Err(ExecError::GirthViolated { got: girth, min: class.min_girth() });
        }
    }
    let dn = g.n() as i64 - h.n() as i64;
    let dm = g.m() as i64 - h.m() as i64;
    Ok(Applied { h, del, h0_n, dn, dm })
}

fn resolve_end(e: &End, del: &Deletion, apex_ids: &[usize]) -> Result<usize, ExecError> {
    match *e {
        End::Old(v) => {
            if v >= del.old_to_new.len() {
                return Err(ExecError::EndpointDeleted(v));
            }
            del.old_to_new[v].ok_or(ExecError::EndpointDeleted(v))
        }
        End::Apex(i) => apex_ids.get(i).copied().ok_or(ExecError::BadApexIndex(i)),
    }
}

/// Structural checks of a lift spec against its surgery: exactly one case
/// per apex subset, canonical vertex lists inside the deleted set, the
/// promised gain, and each added set inducing a forest on its own.
pub(crate) fn validate_lift_spec(
    g: &Graph,
    s: &Surgery,
    lift: &LiftSpec,
    gamma: u32,
) -> Result<(), ExecError> {
    let k = s.apexes.len();
    if lift.cases.len() != 1usize << k {
        return Err(ExecError::LiftNotPowerSet);
    }
    let mut seen = BTreeSet::new();
    let deleted: BTreeSet<usize> = s.delete.iter().copied().collect();
    for case in &lift.cases {
        if !is_sorted_distinct(&case.pattern) || case.pattern.iter().any(|&i| i >= k) {
            return Err(ExecError::LiftNotCanonical);
        }
        if !seen.insert(case.pattern.clone()) {
            return Err(ExecError::LiftNotPowerSet);
        }
        if !is_sorted_distinct(&case.add) {
            return Err(ExecError::LiftNotCanonical);
        }
        for &v in &case.add {
            if !deleted.contains(&v) {
                return Err(ExecError::LiftOutsideDelete(v));
            }
        }
        let gain = case.add.len() as i64 - case.pattern.len() as i64;
        if gain < gamma as i64 {
            return Err(ExecError::GammaShortfall { want: gamma, got: gain });
        }
        if !g.is_induced_forest(&case.add) {
            return Err(ExecError::LiftNotForest);
        }
    }
    Ok(())
}

/// Upper bound on the number of merge-pattern combinations inspected per
/// lift case before giving up and rejecting the candidate.
const VIABILITY_CAP: usize = 20_000;

/// Check that a lift case can never collide with a forest of the reduced
/// graph: for every induced forest `F'` matching the case's apex pattern,
/// the lifted set must stay an induced forest of the parent.
///
/// The check works on the survivor graph `H0` (parent minus the deleted
/// set). Survivor-side connectivity inside `F'` can only merge attachment
/// vertices that lie in a common component of `H0`, except for pairs that
/// are provably never connected inside `H0[F']`: the endpoints of an added
/// survivor edge, and any two attachments hanging off the apexes of one
/// added-edge component that the pattern keeps (both would close a cycle
/// through the kept part of `F'`). All remaining merge patterns are
/// enumerated; the case is viable if each one leaves the bipartite contact
/// graph between merged groups and lifted components acyclic.
pub(crate) fn lift_case_viable(
    g: &Graph,
    del: &Deletion,
    s: &Surgery,
    case: &LiftCase,
) -> bool {
    if case.add.is_empty() {
        return true;
    }
    // Components of the lifted set inside the parent graph.
    let lifted = &case.add;
    let mut comp_of = vec![usize::MAX; lifted.len()];
    let mut next = 0;
    for i in 0..lifted.len() {
        if comp_of[i] != usize::MAX {
            continue;
        }
        let mut stack = vec![i];
        comp_of[i] = next;
        while let Some(x) = stack.pop() {
            for y in 0..lifted.len() {
                if comp_of[y] == usize::MAX && g.has_edge(lifted[x], lifted[y]) {
                    comp_of[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    let k_count = next;

    // Edges from survivors into the lifted components. More than one edge
    // from the same survivor into the same component closes a cycle.
    let mut contact: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, &v) in lifted.iter().enumerate() {
        for &u in g.neighbors(v) {
            if del.old_to_new[u].is_none() {
                continue;
            }
            if !contact.insert((u, comp_of[i])) {
                return false;
            }
        }
    }
    if contact.is_empty() {
        return true;
    }

    // Pairs of survivors that can never be connected inside H0[F'].
    let mut guards: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut guard = |a: usize, b: usize| {
        guards.insert((a.min(b), a.max(b)));
    };
    for (a, b) in &s.edges {
        if let (End::Old(p), End::Old(q)) = (a, b) {
            guard(*p, *q);
        }
    }
    // Apexes kept by the pattern form connected pieces of F' along the
    // added apex-apex edges (restricted to kept apexes). Two H0[F'] routes
    // into one piece would close a cycle, so all pairs of attachments of a
    // piece are guarded, pairs on a single kept apex included.
    let k = s.apexes.len();
    let pattern: BTreeSet<usize> = case.pattern.iter().copied().collect();
    let mut group = (0..k).collect::<Vec<usize>>();
    fn root(group: &mut [usize], i: usize) -> usize {
        if group[i] != i {
            let r = root(group, group[i]);
            group[i] = r;
        }
        group[i]
    }
    for (a, b) in &s.edges {
        if let (End::Apex(i), End::Apex(j)) = (a, b) {
            if pattern.contains(i) && pattern.contains(j) {
                let (ri, rj) = (root(&mut group, *i), root(&mut group, *j));
                if ri != rj {
                    group[ri] = rj;
                }
            }
        }
    }
    let roots: Vec<usize> = (0..k).map(|i| root(&mut group, i)).collect();
    for r in 0..k {
        if roots[r] != r || !pattern.contains(&r) {
            continue;
        }
        let mut att_union: Vec<usize> = Vec::new();
        for (i, &root_of_i) in roots.iter().enumerate() {
            if root_of_i == r && pattern.contains(&i) {
                att_union.extend_from_slice(&s.apexes[i]);
            }
        }
        att_union.sort_unstable();
        att_union.dedup();
        for x in 0..att_union.len() {
            for y in x + 1..att_union.len() {
                guard(att_union[x], att_union[y]);
            }
        }
    }

    // Group the attachment survivors by H0 component; only vertices in a
    // common component can ever be merged by survivor-side paths.
    let h0_comp = del.graph.component_ids();
    let touchers: Vec<usize> = {
        let mut t: Vec<usize> = contact.iter().map(|&(u, _)| u).collect();
        t.dedup();
        t
    };
    let mut by_comp: Vec<Vec<usize>> = Vec::new();
    {
        let mut comp_seen: Vec<usize> = Vec::new();
        for &u in &touchers {
            let c = h0_comp[del.old_to_new[u].unwrap()];
            match comp_seen.iter().position(|&x| x == c) {
                Some(i) => by_comp[i].push(u),
                None => {
                    comp_seen.push(c);
                    by_comp.push(vec![u]);
                }
            }
        }
    }

    // All partitions of one component's attachments avoiding guarded pairs.
    fn partitions(items: &[usize], guards: &BTreeSet<(usize, usize)>) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut assign = vec![0usize; items.len()];
        fn rec(
            items: &[usize],
            guards: &BTreeSet<(usize, usize)>,
            assign: &mut Vec<usize>,
            pos: usize,
            blocks: usize,
            out: &mut Vec<Vec<usize>>,
        ) {
            if pos == items.len() {
                out.push(assign.clone());
                return;
            }
            for b in 0..=blocks {
                let ok = (0..pos).all(|q| {
                    assign[q] != b || {
                        let (x, y) = (items[q].min(items[pos]), items[q].max(items[pos]));
                        !guards.contains(&(x, y))
                    }
                });
                if ok {
                    assign[pos] = b;
                    rec(items, guards, assign, pos + 1, blocks.max(b + 1), out);
                }
            }
        }
        rec(items, guards, &mut assign, 0, 0, &mut out);
        out
    }

    let per_comp: Vec<Vec<Vec<usize>>> =
        by_comp.iter().map(|items| partitions(items, &guards)).collect();
    let mut total: usize = 1;
    for p in &per_comp {
        total = match total.checked_mul(p.len()) {
            Some(t) if t <= VIABILITY_CAP => t,
            _ => return false,
        };
    }

    // For each combination of per-component merge patterns, the contact
    // graph between blocks and lifted components must stay acyclic.
    let block_of = |combo: &[usize], u: usize| -> usize {
        let mut base = 0;
        for (ci, items) in by_comp.iter().enumerate() {
            if let Some(pos) = items.iter().position(|&x| x == u) {
                return base + per_comp[ci][combo[ci]][pos];
            }
            base += items.len();
        }
        unreachable!("attachment vertex not grouped");
    };
    let mut combo = vec![0usize; per_comp.len()];
    loop {
        let mut uf: Vec<usize> = (0..k_count + touchers.len() + by_comp.len()).collect();
        fn find(uf: &mut [usize], i: usize) -> usize {
            if uf[i] != i {
                let r = find(uf, uf[i]);
                uf[i] = r;
            }
            uf[i]
        }
        let mut acyclic = true;
        for &(u, kc) in &contact {
            let bu = k_count + block_of(&combo, u);
            let (ra, rb) = (find(&mut uf, kc), find(&mut uf, bu));
            if ra == rb {
                acyclic = false;
                break;
            }
            uf[ra] = rb;
        }
        if !acyclic {
            return false;
        }
        // Advance the mixed-radix counter over per-component choices.
        let mut i = 0;
        loop {
            if i == combo.len() {
                return true;
            }
            combo[i] += 1;
            if combo[i] < per_comp[i].len() {
                break;
            }
            combo[i] = 0;
            i += 1;
        }
    }
}

/// Admission: execute the candidate and enforce the full rule contract.
/// `None` means the candidate is dropped (it may simply not fit the graph;
/// soundness never depends on a matcher being right).
pub(crate) fn admit(g: &Graph, class: GirthClass, cand: &RawCandidate) -> Option<Applied> {
    let triple = bounds::class_triple(class, cand.alpha, cand.beta, cand.gamma)
        .expect("every rule triple is in the frozen table");
    debug_assert!(bounds::check_triple(triple, class.polygon()));
    let applied = apply_surgery(g, class, &cand.surgery).ok()?;
    if applied.dn != cand.alpha as i64 || applied.dm < cand.beta as i64 {
        return None;
    }
    validate_lift_spec(g, &cand.surgery, &cand.lift, cand.gamma).ok()?;
    for case in &cand.lift.cases {
        if !lift_case_viable(g, &applied.del, &cand.surgery, case) {
            return None;
        }
    }
    Some(applied)
}

/// Lift a child forest through an applied surgery.
fn lift_forest(applied: &Applied, lift: &LiftSpec, child_forest: &[usize]) -> Vec<usize> {
    let mut pattern: Vec<usize> = child_forest
        .iter()
        .filter(|&&v| v >= applied.h0_n)
        .map(|&v| v - applied.h0_n)
        .collect();
    pattern.sort_unstable();
    let case = lift
        .cases
        .iter()
        .find(|c| c.pattern == pattern)
        .expect("lift cases cover every apex subset");
    let mut out: Vec<usize> = child_forest
        .iter()
        .filter(|&&v| v < applied.h0_n)
        .map(|&v| applied.del.new_to_old[v])
        .chain(case.add.iter().copied())
        .collect();
    out.sort_unstable();
    out
}

/// Every admissible rule application on `g`, across the whole catalog of
/// the class, in pipeline order. Intended for exhaustive rule testing; the
/// driver itself stops at the first admitted candidate.
pub fn enumerate_applications(
    g: &Graph,
    class: GirthClass,
) -> Result<Vec<Application>, ReduceError> {
    check_input(g, class)?;
    let ctx = RuleCtx::new(g, class)?;
    let mut out = Vec::new();
    for rule in catalog(class) {
        let mut cands = (rule.find)(g, &ctx);
        cands.sort();
        cands.dedup();
        for cand in cands {
            if let Some(applied) = admit(g, class, &cand) {
                out.push(Application {
                    rule: rule.id,
                    variant: cand.variant,
                    alpha: cand.alpha,
                    beta: cand.beta,
                    gamma: cand.gamma,
                    surgery: cand.surgery,
                    lift: cand.lift,
                    applied,
                });
            }
        }
    }
    Ok(out)
}

fn check_input(g: &Graph, class: GirthClass) -> Result<(), ReduceError> {
    if !g.is_embedded() {
        return Err(ReduceError::NotEmbedded);
    }
    if let Some(girth) = g.girth() {
        if girth < class.min_girth() {
            return Err(ReduceError::GirthBelowClass {
                girth,
                class,
                min: class.min_girth(),
            });
        }
    }
    Ok(())
}

/// Compute a certified induced forest of `g`.
pub fn reduce(g: &Graph, class: GirthClass, opts: &ReduceOptions) -> Result<Certificate, ReduceError> {
    check_input(g, class)?;
    let (root, forest, exact) = reduce_node(g, class, opts)?;
    Ok(Certificate { class, n: g.n(), m: g.m(), forest, exact, root })
}

fn reduce_node(
    g: &Graph,
    class: GirthClass,
    opts: &ReduceOptions,
) -> Result<(CertNode, Vec<usize>, bool), ReduceError> {
    if g.n() == 0 {
        return Ok((CertNode::Exact { forest: Vec::new() }, Vec::new(), true));
    }
    let comps = g.components();
    if comps.len() > 1 {
        let mut parts = Vec::with_capacity(comps.len());
        let mut forest = Vec::new();
        let mut exact = true;
        for part in comps {
            let del = g.induced_subgraph(&part)?;
            let (node, f, ex) = reduce_node(&del.graph, class, opts)?;
            forest.extend(f.iter().map(|&v| del.new_to_old[v]));
            exact &= ex;
            parts.push((part, node));
        }
        forest.sort_unstable();
        return Ok((CertNode::Split { parts }, forest, exact));
    }
    if g.girth().is_none() {
        // Already a tree: the whole vertex set is the maximum forest.
        let forest: Vec<usize> = (0..g.n()).collect();
        return Ok((CertNode::Exact { forest: forest.clone() }, forest, true));
    }
    if g.n() <= opts.exact_threshold {
        let res = forest_number_exact(g, &opts.solver);
        let node = if res.optimal {
            CertNode::Exact { forest: res.witness.clone() }
        } else {
            CertNode::Heuristic { forest: res.witness.clone() }
        };
        let optimal = res.optimal;
        return Ok((node, res.witness, optimal));
    }
    let bridges = g.bridges();
    if !bridges.is_empty() {
        let mut h = g.clone();
        for &(u, v) in &bridges {
            h = h.delete_edge(u, v)?;
        }
        let (child, forest, exact) = reduce_node(&h, class, opts)?;
        let node = CertNode::BridgeSplit { removed: bridges, child: Box::new(child) };
        return Ok((node, forest, exact));
    }
    if g.max_degree() == 2 {
        // Connected, bridgeless, not a tree: a single cycle.
        let forest: Vec<usize> = (1..g.n()).collect();
        return Ok((CertNode::Cycle { forest: forest.clone() }, forest, true));
    }
    let ctx = RuleCtx::new(g, class)?;
    for rule in catalog(class) {
        let mut cands = (rule.find)(g, &ctx);
        cands.sort();
        cands.dedup();
        for cand in cands {
            if let Some(applied) = admit(g, class, &cand) {
                let (child, child_forest, _exact) = reduce_node(&applied.h, class, opts)?;
                let forest = lift_forest(&applied, &cand.lift, &child_forest);
                debug_assert!(g.is_induced_forest(&forest));
                let node = CertNode::Reduce {
                    rule: rule.id.to_owned(),
                    variant: cand.variant.to_owned(),
                    alpha: cand.alpha,
                    beta: cand.beta,
                    gamma: cand.gamma,
                    surgery: cand.surgery,
                    lift: cand.lift,
                    child: Box::new(child),
                };
                // A lifted forest meets the bound but need not be maximum.
                return Ok((node, forest, false));
            }
        }
    }
    // No rule matched: fall back to an uncertified greedy forest.
    let forest = greedy_forest(g);
    Ok((CertNode::Heuristic { forest: forest.clone() }, forest, false))
}

/// Deterministic fallback: repeatedly delete the highest-degree vertex on
/// a shortest cycle (smallest id on ties) until no cycle remains.
fn greedy_forest(g: &Graph) -> Vec<usize> {
    let mut alive: Vec<usize> = (0..g.n()).collect();
    loop {
        let del = g
            .induced_subgraph(&alive)
            .expect("alive set is sorted and in range");
        let Some(cycle) = del.graph.shortest_cycle() else {
            return alive;
        };
        let victim = cycle
            .iter()
            .map(|&v| (del.graph.degree(v), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .map(|(_, v)| del.new_to_old[v])
            .expect("shortest cycle is never empty");
        alive.retain(|&v| v != victim);
    }
}

/// Verify a certificate against the graph it claims to describe.
pub fn verify(g: &Graph, cert: &Certificate) -> Result<VerifyReport, VerifyError> {
    if cert.n != g.n() {
        return Err(VerifyError::VertexCountMismatch { cert: cert.n, got: g.n() });
    }
    if cert.m != g.m() {
        return Err(VerifyError::EdgeCountMismatch { cert: cert.m, got: g.m() });
    }
    if let Some(girth) = g.girth() {
        if girth < cert.class.min_girth() {
            return Err(VerifyError::ClassMismatch {
                girth,
                class: cert.class,
                min: cert.class.min_girth(),
            });
        }
    }
    let polygon = cert.class.polygon();
    let (forest, flags) = verify_node(g, &cert.root, cert.class, polygon)?;
    if forest != cert.forest {
        return Err(VerifyError::ForestMismatch);
    }
    if cert.exact != node_is_exhaustive(&cert.root) {
        return Err(VerifyError::ExactFlagMismatch);
    }
    let (best, _) = bounds::best_bound(cert.class, g.n() as u64, g.m() as u64);
    Ok(VerifyReport {
        forest: cert.forest.clone(),
        best_bound: best,
        certified: flags.iter().all(|&f| f),
        exact: cert.exact,
    })
}

fn node_is_exhaustive(node: &CertNode) -> bool {
    match node {
        CertNode::Exact { .. } | CertNode::Cycle { .. } => true,
        CertNode::Heuristic { .. } | CertNode::Reduce { .. } => false,
        CertNode::Split { parts } => parts.iter().all(|(_, n)| node_is_exhaustive(n)),
        CertNode::BridgeSplit { child, .. } => node_is_exhaustive(child),
    }
}

fn check_leaf_forest(g: &Graph, forest: &[usize]) -> Result<(), VerifyError> {
    if !is_sorted_distinct(forest) || forest.iter().any(|&v| v >= g.n()) {
        return Err(VerifyError::LeafNotCanonical);
    }
    if !g.is_induced_forest(forest) {
        return Err(VerifyError::NotAForest);
    }
    Ok(())
}

/// Bound flags for a leaf: one flag per polygon vertex, true when
/// `a*n - b*m <= |forest|` holds numerically for this graph.
fn leaf_flags(g: &Graph, forest_len: usize, polygon: &bounds::Polygon) -> Vec<bool> {
    let n = Rational::from_integer(g.n() as i64);
    let m = Rational::from_integer(g.m() as i64);
    let f = Rational::from_integer(forest_len as i64);
    polygon
        .vertices()
        .iter()
        .map(|&(a, b)| a * n - b * m <= f)
        .collect()
}

fn verify_node(
    g: &Graph,
    node: &CertNode,
    class: GirthClass,
    polygon: &bounds::Polygon,
) -> Result<(Vec<usize>, Vec<bool>), VerifyError> {
    match node {
        CertNode::Exact { forest } => {
            check_leaf_forest(g, forest)?;
            Ok((forest.clone(), leaf_flags(g, forest.len(), polygon)))
        }
        CertNode::Cycle { forest } => {
            let cyclic = g.n() >= 3
                && g.is_connected()
                && (0..g.n()).all(|v| g.degree(v) == 2);
            if !cyclic || forest != &(1..g.n()).collect::<Vec<usize>>() {
                return Err(VerifyError::NotACycle);
            }
            check_leaf_forest(g, forest)?;
            Ok((forest.clone(), leaf_flags(g, forest.len(), polygon)))
        }
        CertNode::Heuristic { forest } => {
            check_leaf_forest(g, forest)?;
            Ok((forest.clone(), vec![false; polygon.vertices().len()]))
        }
        CertNode::Split { parts } => {
            let comps = g.components();
            if comps.len() != parts.len() {
                return Err(VerifyError::SplitMismatch);
            }
            let mut forest = Vec::new();
            let mut flags = vec![true; polygon.vertices().len()];
            for ((ids, child), comp) in parts.iter().zip(&comps) {
                if ids != comp {
                    return Err(VerifyError::SplitMismatch);
                }
                let del = g.induced_subgraph(ids)?;
                let (f, fl) = verify_node(&del.graph, child, class, polygon)?;
                forest.extend(f.iter().map(|&v| del.new_to_old[v]));
                for (a, b) in flags.iter_mut().zip(fl) {
                    *a &= b;
                }
            }
            forest.sort_unstable();
            Ok((forest, flags))
        }
        CertNode::BridgeSplit { removed, child } => {
            let bridges = g.bridges();
            if bridges.is_empty() || removed != &bridges {
                return Err(VerifyError::BridgeMismatch);
            }
            let mut h = g.clone();
            for &(u, v) in removed {
                h = h.delete_edge(u, v)?;
            }
            // Induced forests transfer verbatim: no cycle uses a bridge,
            // and the edge count only drops, so the flags pass through.
            verify_node(&h, child, class, polygon)
        }
        CertNode::Reduce { alpha, beta, gamma, surgery, lift, child, .. } => {
            let triple = bounds::class_triple(class, *alpha, *beta, *gamma).ok_or(
                VerifyError::UnknownTriple {
                    class,
                    alpha: *alpha,
                    beta: *beta,
                    gamma: *gamma,
                },
            )?;
            let ok = bounds::check_triple(triple, polygon)
                && bounds::verify_triple_proof(triple, polygon);
            if !ok {
                return Err(VerifyError::TripleRejected {
                    alpha: *alpha,
                    beta: *beta,
                    gamma: *gamma,
                });
            }
            let applied = apply_surgery(g, class, surgery)?;
            if applied.dn > *alpha as i64 {
                return Err(VerifyError::Surgery(ExecError::AlphaMismatch {
                    want: *alpha,
                    got: applied.dn,
                }));
            }
            if applied.dm < *beta as i64 {
                return Err(VerifyError::Surgery(ExecError::BetaShortfall {
                    want: *beta,
                    got: applied.dm,
                }));
            }
            validate_lift_spec(g, surgery, lift, *gamma)?;
            let (child_forest, flags) = verify_node(&applied.h, child, class, polygon)?;
            let mut pattern: Vec<usize> = child_forest
                .iter()
                .filter(|&&v| v >= applied.h0_n)
                .map(|&v| v - applied.h0_n)
                .collect();
            pattern.sort_unstable();
            let case = lift
                .cases
                .iter()
                .find(|c| c.pattern == pattern)
                .ok_or(VerifyError::NoLiftCase)?;
            let mut forest: Vec<usize> = child_forest
                .iter()
                .filter(|&&v| v < applied.h0_n)
                .map(|&v| applied.del.new_to_old[v])
                .chain(case.add.iter().copied())
                .collect();
            forest.sort_unstable();
            if !g.is_induced_forest(&forest) {
                return Err(VerifyError::NotAForest);
            }
            let gain = forest.len() as i64 - child_forest.len() as i64;
            if gain < *gamma as i64 {
                return Err(VerifyError::LiftTooSmall { want: *gamma, got: gain });
            }
            // The triple passed the polygon check, the surgery stayed
            // within (alpha, beta), and the lift gained gamma, so every
            // bound that held for the child holds here; flags carry over.
            Ok((forest, flags))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make, FamilySpec};

    fn cube() -> Graph {
        make(&FamilySpec::Cube).unwrap()
    }

    #[test]
    fn surgery_roundtrip_on_cube() {
        let g = cube();
        let s = Surgery { delete: vec![0], apexes: vec![], edges: vec![] };
        let a = apply_surgery(&g, GirthClass::Girth4, &s).unwrap();
        assert_eq!(a.h.n(), 7);
        assert_eq!(a.dn, 1);
        assert_eq!(a.dm, 3);
    }

    #[test]
    fn surgery_rejects_unsorted_delete() {
        let g = cube();
        let s = Surgery { delete: vec![1, 0], apexes: vec![], edges: vec![] };
        assert_eq!(
            apply_surgery(&g, GirthClass::Girth4, &s).unwrap_err(),
            ExecError::DeleteNotCanonical
        );
    }

    #[test]
    fn surgery_rejects_girth_violation() {
        // Deleting nothing relevant and adding a chord of a 4-face would
        // create a triangle; the executor must refuse.
        let g = cube();
        let face = g.trace_faces().unwrap().faces[0].vertices.clone();
        let s = Surgery {
            delete: vec![(0..8).find(|v| !face.contains(v)).unwrap()],
            apexes: vec![],
            edges: vec![(End::Old(face[0]), End::Old(face[2]))],
        };
        let err = apply_surgery(&g, GirthClass::Girth4, &s).unwrap_err();
        assert!(
            matches!(err, ExecError::Graph(_) | ExecError::GirthViolated { .. }),
            "unexpected error {err:?}"
        );
    }

    #[test]
    fn lift_spec_validation_catches_small_gain() {
        let g = cube();
        let s = Surgery { delete: vec![0, 2], apexes: vec![], edges: vec![] };
        let lift = LiftSpec::plain(vec![0]);
        assert_eq!(
            validate_lift_spec(&g, &s, &lift, 2).unwrap_err(),
            ExecError::GammaShortfall { want: 2, got: 1 }
        );
    }

    #[test]
    fn viability_rejects_double_contact() {
        // Deleting one vertex of a 4-cycle and lifting it back is viable
        // only if its two surviving neighbours cannot be jointly kept and
        // connected; on a plain cycle they always are.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let s = Surgery { delete: vec![0], apexes: vec![], edges: vec![] };
        let a = apply_surgery(&g, GirthClass::Girth4, &s).unwrap();
        let case = LiftCase { pattern: vec![], add: vec![0] };
        assert!(!lift_case_viable(&g, &a.del, &s, &case));
    }

    #[test]
    fn viability_accepts_leaf_lift() {
        // A pendant vertex can always rejoin the forest.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let s = Surgery { delete: vec![0], apexes: vec![], edges: vec![] };
        let a = apply_surgery(&g, GirthClass::Girth4, &s).unwrap();
        let case = LiftCase { pattern: vec![], add: vec![0] };
        assert!(lift_case_viable(&g, &a.del, &s, &case));
    }

    #[test]
    fn reduce_and_verify_cube() {
        let g = cube();
        let opts = ReduceOptions { exact_threshold: 0, ..ReduceOptions::default() };
        let cert = reduce(&g, GirthClass::Girth4, &opts).unwrap();
        assert_eq!(cert.forest.len(), 5);
        assert!(g.is_induced_forest(&cert.forest));
        let report = verify(&g, &cert).unwrap();
        assert!(report.certified);
        assert_eq!(report.forest.len(), 5);
    }

    #[test]
    fn reduce_exact_leaf_on_small_graph() {
        let g = cube();
        let cert = reduce(&g, GirthClass::Girth4, &ReduceOptions::default()).unwrap();
        assert!(cert.exact);
        assert!(matches!(cert.root, CertNode::Exact { .. }));
        let report = verify(&g, &cert).unwrap();
        assert!(report.certified);
    }

    #[test]
    fn verify_rejects_tampered_forest() {
        let g = cube();
        let mut cert = reduce(&g, GirthClass::Girth4, &ReduceOptions::default()).unwrap();
        cert.forest.pop();
        assert!(matches!(verify(&g, &cert), Err(VerifyError::ForestMismatch)));
    }

    #[test]
    fn verify_rejects_wrong_graph() {
        let g = cube();
        let cert = reduce(&g, GirthClass::Girth4, &ReduceOptions::default()).unwrap();
        let other = make(&FamilySpec::Dodecahedron).unwrap();
        assert!(matches!(
            verify(&other, &cert),
            Err(VerifyError::VertexCountMismatch { .. })
        ));
    }

    #[test]
    fn certificates_serialize_roundtrip() {
        let g = cube();
        let cert = reduce(&g, GirthClass::Girth4, &ReduceOptions::default()).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        assert!(verify(&g, &back).unwrap().certified);
    }

    #[test]
    fn split_certificate_covers_components() {
        let g = make(&FamilySpec::CubesDisjoint(2)).unwrap();
        let cert = reduce(&g, GirthClass::Girth4, &ReduceOptions::default()).unwrap();
        assert_eq!(cert.forest.len(), 10);
        assert!(matches!(cert.root, CertNode::Split { .. }));
        assert!(verify(&g, &cert).unwrap().certified);
    }

    #[test]
    fn tree_reduces_to_exact_leaf_without_search() {
        let g = make(&FamilySpec::Path(12)).unwrap();
        let opts = ReduceOptions { exact_threshold: 0, ..ReduceOptions::default() };
        let cert = reduce(&g, GirthClass::Girth5, &opts).unwrap();
        assert_eq!(cert.forest.len(), 12);
        assert!(cert.exact);
        assert!(verify(&g, &cert).unwrap().certified);
    }

    #[test]
    fn cycle_leaf_used_for_plain_cycles() {
        let g = make(&FamilySpec::Cycle(9)).unwrap();
        let opts = ReduceOptions { exact_threshold: 0, ..ReduceOptions::default() };
        let cert = reduce(&g, GirthClass::Girth5, &opts).unwrap();
        assert!(matches!(cert.root, CertNode::Cycle { .. }));
        assert_eq!(cert.forest, (1..9).collect::<Vec<usize>>());
        assert!(verify(&g, &cert).unwrap().certified);
    }
}
