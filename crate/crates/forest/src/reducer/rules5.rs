//! Reduction rules for planar graphs of girth at least 5.
//!
//! Matchers only locate candidate patterns; every candidate is re-executed
//! and policed by the admission checks in the parent module, so a matcher
//! bug can cost completeness but never soundness. Adjacencies that a short
//! cycle would contradict are not re-tested, because both entry points
//! reject inputs of girth below 5. Degree conditions are checked wherever
//! a triple's edge count depends on them.

use super::helpers::{
    candidate, common_neighbors, dist_avoiding, frames, lone_neighbor_outside,
    neighbors_outside, pairwise_distinct,
};
use super::{End, RawCandidate, RuleCtx, RuleDef};
use crate::graph::Graph;

pub(crate) fn catalog() -> &'static [RuleDef] {
    &[
        RuleDef { id: "g5-max-degree", variants: &["deg5"], find: max_degree },
        RuleDef {
            id: "g5-cubic-heavy-bypass",
            variants: &["bypass"],
            find: cubic_heavy_bypass,
        },
        RuleDef { id: "g5-deg2-heavy", variants: &["deg2"], find: deg2_heavy },
        RuleDef { id: "g5-deg3-twin-deg2", variants: &["twin"], find: deg3_twin_deg2 },
        RuleDef {
            id: "g5-separating-pentagon-cubic",
            variants: &["separating"],
            find: separating_pentagon_cubic,
        },
        RuleDef {
            id: "g5-deg2-chain",
            variants: &[
                "tail",
                "splice",
                "pentagon-tail",
                "four-four",
                "third-light",
                "third-heavy",
                "third-link",
                "rewire-far",
                "rewire-near",
                "double-anchor",
                "anchor-heavy",
            ],
            find: deg2_chain,
        },
        RuleDef {
            id: "g5-pentagon-heavy-third",
            variants: &["third"],
            find: pentagon_heavy_third,
        },
        RuleDef {
            id: "g5-separating-pentagon",
            variants: &["separating", "pocket", "spread"],
            find: separating_pentagon,
        },
        RuleDef {
            id: "g5-pentagon-hub-pair",
            variants: &["linked", "apex"],
            find: pentagon_hub_pair,
        },
        RuleDef {
            id: "g5-pentagon-face-heavy",
            variants: &["hub-corner", "hub-link", "tail-far", "tail-near", "full"],
            find: pentagon_face_heavy,
        },
        RuleDef {
            id: "g5-pentagon-face-heavy-thirds",
            variants: &["linked", "triple"],
            find: pentagon_face_heavy_thirds,
        },
        RuleDef {
            id: "g5-linked-pentagons",
            variants: &["anchor"],
            find: linked_pentagons,
        },
        RuleDef {
            id: "g5-pentagon-face-cubic",
            variants: &[
                "heavy-adjacent",
                "heavy-apart",
                "hub-chain",
                "hub-bridge",
                "hub-split",
                "spread",
            ],
            find: pentagon_face_cubic,
        },
    ]
}

/// The off-cycle third neighbor of the frame vertex at each listed
/// position. Each position must have degree 3; the cycle supplies two of
/// its neighbors and the remaining one must avoid the cycle.
fn thirds(g: &Graph, cyc: &[usize], idx: &[usize]) -> Option<Vec<usize>> {
    let k = cyc.len();
    let mut out = Vec::with_capacity(idx.len());
    for &i in idx {
        let prev = cyc[(i + k - 1) % k];
        let next = cyc[(i + 1) % k];
        let u = lone_neighbor_outside(g, cyc[i], &[prev, next])?;
        if cyc.contains(&u) {
            return None;
        }
        out.push(u);
    }
    Some(out)
}

/// A vertex of degree 5 or more is never needed in the forest.
fn max_degree(g: &Graph, _ctx: &RuleCtx) -> Vec<RawCandidate> {
    (0..g.n())
        .filter(|&v| g.degree(v) >= 5)
        .map(|v| candidate("deg5", (1, 5, 0), vec![v], vec![], vec![], vec![(vec![], vec![])]))
        .collect()
}

/// A 3-vertex with a neighbor of degree 4 or more: drop both and splice
/// the two remaining neighbors together when no short path makes the new
/// edge close a forbidden cycle.
fn cubic_heavy_bypass(g: &Graph, _ctx: &RuleCtx) -> Vec<RawCandidate> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) != 3 {
            continue;
        }
        for &w in g.neighbors(v) {
            if g.degree(w) < 4 {
                continue;
            }
            let rest = neighbors_outside(g, v, &[w]);
            let (x, y) = (rest[0], rest[1]);
            if dist_avoiding(g, x, y, &[v]).is_some_and(|d| d < 4) {
                continue;
            }
            out.push(candidate(
                "bypass",
                (2, 5, 1),
                vec![v, w],
                vec![],
                vec![(End::Old(x), End::Old(y))],
                vec![(vec![], vec![v])],
            ));
        }
    }
    out
}

/// A 2-vertex next to a vertex of degree 4 or more: both go.
fn deg2_heavy(g: &Graph, _ctx: &RuleCtx) -> Vec<RawCandidate> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) != 2 {
            continue;
        }
        for &w in g.neighbors(v) {
            if g.degree(w) < 4 {
                continue;
            }
            out.push(candidate(
                "deg2",
                (2, 5, 1),
                vec![v, w],
                vec![],
                vec![],
                vec![(vec![], vec![v])],
            ));
        }
    }
    out
}

/// A 3-vertex with two neighbors of degree 2: delete all three, keep the
/// 2-vertices.
fn deg3_twin_deg2(g: &Graph, _ctx: &RuleCtx) -> Vec<RawCandidate> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) != 3 {
            continue;
        }
        let twos: Vec<usize> =
            g.neighbors(v).iter().copied().filter(|&u| g.degree(u) == 2).collect();
        for i in 0..twos.len() {
            for j in i + 1..twos.len() {
                out.push(candidate(
                    "twin",
                    (3, 5, 2),
                    vec![twos[i], v, twos[j]],
                    vec![],
                    vec![],
                    vec![(vec![], vec![twos[i], twos[j]])],
                ));
            }
        }
    }
    out
}

/// A separating pentagon of 3-vertices with two consecutive thirds on
/// opposite sides: the whole pentagon goes and three of its vertices lift.
fn separating_pentagon_cubic(g: &Graph, ctx: &RuleCtx) -> Vec<RawCandidate> {
    let mut out = Vec::new();
    for p in &ctx.pents {
        if p.iter().any(|&v| g.degree(v) != 3) {
            continue;
        }
        let Ok(sides) = g.cycle_sides(p) else { continue };
        if !sides.is_separating() {
            continue;
        }
        for f in frames(p) {
            let Some(us) = thirds(g, &f, &[0, 1]) else { continue };
            if us[0] == us[1] {
                continue;
            }
            if sides.interior.contains(&us[0]) == sides.interior.contains(&us[1]) {
                continue;
            }
            out.push(candidate(
                "separating",
                (5, 10, 3),
                f.clone(),
                vec![],
                vec![],
                vec![(vec![], vec![f[0], f[1], f[3]])],
            ));
        }
    }
    out
}

/// Cases around a 2-vertex `v` with neighbors `u`, `w`. Both assignments
/// of the pair are scanned, so one-sided cases cover their mirrors.
fn deg2_chain(g: &Graph, _ctx: &RuleCtx) -> Vec<RawCandidate> {
    let mut out = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) != 2 {
            continue;
        }
        let nb = neighbors_outside(g, v, &[]);
        for &(u, w) in &[(nb[0], nb[1]), (nb[1], nb[0])] {
            if g.degree(u) == 2 && g.degree(w) == 3 {
                out.push(candidate(
                    "tail",
                    (3, 5, 2),
                    vec![u, v, w],
                    vec![],
                    vec![],
                    vec![(vec![], vec![u, v])],
                ));
            }
            if g.degree(u) != 3 || g.degree(w) != 3 {
                continue;
            }
            if dist_avoiding(g, u, w, &[v]).is_none_or(|d| d >= 4) {
                out.push(candidate(
                    "splice",
                    (1, 0, 1),
                    vec![v],
                    vec![],
                    vec![(End::Old(u), End::Old(w))],
                    vec![(vec![], vec![v])],
                ));
                continue;
            }
            // Otherwise v lies on a pentagon u-v-w-x-y; walk them all.
            for &x in g.neighbors(w) {
                if x == v || x == u {
                    continue;
                }
                for &y in g.neighbors(u) {
                    if y == v || y == w || y == x || !g.has_edge(x, y) {
                        continue;
                    }
                    pentagon_chain_cases(g, &mut out, u, v, w, x, y);
                }
            }
        }
    }
    out
}

/// Cases on the pentagon u-v-w-x-y where v is the 2-vertex and u, w have
/// degree 3.
fn pentagon_chain_cases(
    g: &Graph,
    out: &mut Vec<RawCandidate>,
    u: usize,
    v: usize,
    w: usize,
    x: usize,
    y: usize,
) {
    let cyc = [u, v, w, x, y];
    if !pairwise_distinct(&cyc) {
        return;
    }
    if g.degree(x) == 3 && g.degree(y) == 4 {
        out.push(candidate(
            "pentagon-tail",
            (5, 10, 3),
            cyc.to_vec(),
            vec![],
            vec![],
            vec![(vec![], vec![u, v, x])],
        ));
        return;
    }
    if g.degree(x) == 4 && g.degree(y) == 4 {
        // The remaining thirds of u and w joined by an edge form a second
        // pentagon; a heavy third there lets six vertices go.
        let Some(up) = lone_neighbor_outside(g, u, &[v, y]) else { return };
        let Some(wp) = lone_neighbor_outside(g, w, &[v, x]) else { return };
        if g.has_edge(up, wp)
            && g.degree(wp) >= 4
            && pairwise_distinct(&[u, v, w, x, y, up, wp])
        {
            out.push(candidate(
                "four-four",
                (6, 14, 3),
                vec![u, v, w, x, y, wp],
                vec![],
                vec![],
                vec![(vec![], vec![u, v, w])],
            ));
        }
        return;
    }
    if g.degree(x) != 3 || g.degree(y) != 3 {
        return;
    }
    let Some(up) = lone_neighbor_outside(g, u, &[v, y]) else { return };
    let Some(wp) = lone_neighbor_outside(g, w, &[v, x]) else { return };
    let Some(xp) = lone_neighbor_outside(g, x, &[w, y]) else { return };
    let Some(yp) = lone_neighbor_outside(g, y, &[u, x]) else { return };
    if !pairwise_distinct(&[u, v, w, x, y, up, wp, xp, yp]) {
        return;
    }
    if g.degree(xp) == 2 {
        out.push(candidate(
            "third-light",
            (6, 10, 4),
            vec![u, v, w, x, y, xp],
            vec![],
            vec![],
            vec![(vec![], vec![u, v, x, xp])],
        ));
        return;
    }
    if [up, wp, xp, yp].iter().any(|&t| g.degree(t) < 3) {
        return;
    }
    if (g.degree(up) >= 4 || g.degree(yp) >= 4) && !g.has_edge(up, yp) {
        out.push(candidate(
            "third-heavy",
            (7, 14, 4),
            vec![u, v, w, x, y, up, yp],
            vec![],
            vec![],
            vec![(vec![], vec![u, v, w, y])],
        ));
        return;
    }
    if g.has_edge(up, xp) {
        out.push(candidate(
            "third-link",
            (7, 10, 5),
            vec![u, v, w, x, y, up, xp],
            vec![],
            vec![],
            vec![(vec![], vec![u, v, x, y, xp])],
        ));
        return;
    }
    if g.has_edge(wp, yp) {
        return;
    }
    // All four thirds are 3-vertices and the diagonal links are absent.
    // Splicing u or x onto y is safe unless a common neighbor closes a
    // square through the new edge.
    let far = common_neighbors(g, up, yp);
    if far.is_empty() {
        out.push(candidate(
            "rewire-far",
            (3, 5, 2),
            vec![u, v, w],
            vec![],
            vec![(End::Old(up), End::Old(y))],
            vec![(vec![], vec![u, v])],
        ));
        return;
    }
    let near = common_neighbors(g, xp, yp);
    if near.is_empty() {
        out.push(candidate(
            "rewire-near",
            (3, 5, 2),
            vec![v, w, x],
            vec![],
            vec![(End::Old(xp), End::Old(y))],
            vec![(vec![], vec![v, x])],
        ));
        return;
    }
    for &z in &far {
        if g.degree(z) == 2 {
            for &zp in &near {
                if z != zp
                    && !g.has_edge(z, zp)
                    && pairwise_distinct(&[u, v, w, x, y, up, xp, yp, z, zp])
                {
                    out.push(candidate(
                        "double-anchor",
                        (10, 15, 7),
                        vec![u, v, w, x, y, up, xp, yp, z, zp],
                        vec![],
                        vec![],
                        vec![(vec![], vec![u, v, x, up, xp, yp, z])],
                    ));
                }
            }
        } else if pairwise_distinct(&[u, v, w, x, y, up, yp, z]) {
            out.push(candidate(
                "anchor-heavy",
                (8, 14, 5),
                vec![u, v, w, x, y, up, yp, z],
                vec![],
                vec![],
                vec![(vec![], vec![u, v, x, up, yp])],
            ));
        }
    }
}

/// A pentagon with one heavy corner whose four light vertices have an
/// off-cycle third of degree 4 or more: the pentagon and that third go.
fn pentagon_heavy_third(g: &Graph, ctx: &RuleCtx) -> Vec<RawCandidate> {
    let mut out = Vec::new();
    for p in &ctx.pents {
        for f in frames(p) {
            if g.degree(f[0]) < 4 || (1..5).any(|i| g.degree(f[i]) != 3) {
                continue;
            }
            let Some(us) = thirds(g, &f, &[1, 2]) else { continue };
            // Reflected frames reach the positions 3 and 4.
            for &u in &us {
                if g.degree(u) >= 4 {
                    let mut d = f.clone();
                    d.push(u);
                    out.push(candidate(
                        "third",
                        (6, 14, 3),
                        d,
                        vec![],
                        vec![],
                        vec![(vec![], vec![f[1], f[2], f[4]])],
                    ));
                }
            }
        }
    }
    out
}

/// A separating pentagon with one heavy corner and cubic thirds. Which
/// sides the thirds land on decides how much of the neighborhood can go.
fn separating_pentagon(g: &Graph, ctx: &RuleCtx) -> Vec<RawCandidate> {
    let mut out = Vec::new();
    for p in &ctx.pents {
        let Ok(sides) = g.cycle_sides(p) else { continue };
        if !sides.is_separating() {
            continue;
        }
        for f in frames(p) {
            if g.degree(f[0]) < 4 || (1..5).any(|i| g.degree(f[i]) != 3) {
                continue;
            }
            let Some(us) = thirds(g, &f, &[1, 2, 3, 4]) else { continue };
            if us.iter().any(|&u| g.degree(u) < 3) {
                continue;
            }
            let mut all = f.clone();
            all.extend(&us);
            if !pairwise_distinct(&all) {
                continue;
            }
            let inside: Vec<bool> =
                us.iter().map(|&u| sides.interior.contains(&u)).collect();
            if inside[0] != inside[1] {
                out.push(candidate(
                    "separating",
                    (5, 10, 3),
                    f.clone(),
                    vec![],
                    vec![],
                    vec![(vec![], vec![f[1], f[2], f[4]])],
                ));
                continue;
            }
            if inside[2] == inside[3] && inside[0] != inside[2] {
                pentagon_pocket(g, &mut out, &f, &us, &all);
                continue;
            }
            if inside[1..].iter().all(|&b| b == inside[0]) {
                pentagon_spread(g, &mut out, &f, &us, &all);
            }
        }
    }
    out
}

/// Pocket side of the separating pentagon: the thirds of v1, v2 face one
/// side, those of v3, v4 the other, and a cubic vertex w ties the first
/// pair together behind the cycle.
fn pentagon_pocket(
    g: &Graph,
    out: &mut Vec<RawCandidate>,
    f: &[usize],
    us: &[usize],
    all: &[usize],
) {
    let (u1, u2, u3) = (us[0], us[1], us[2]);
    for &w in &common_neighbors(g, u1, u2) {
        if g.degree(w) < 3 || all.contains(&w) {
            continue;
        }
        let Some(wp) = lone_neighbor_outside(g, u1, &[f[1], w]) else { continue };
        if g.degree(wp) < 3 || wp == w || all.contains(&wp) {
            continue;
        }
        let mut d = f.to_vec();
        d.extend([u1, u2, u3, w, wp]);
        out.push(candidate(
            "pocket",
            (10, 20, 6),
            d,
            vec![],
            vec![],
            vec![(vec![], vec![f[1], f[2], f[3], f[4], u1, u2])],
        ));
    }
}

/// All four thirds on one side of the separating pentagon: the heavy
/// corner stays, everything else around the first two thirds goes.
fn pentagon_spread(
    g: &Graph,
    out: &mut Vec<RawCandidate>,
    f: &[usize],
    us: &[usize],
    all: &[usize],
) {
    let (u1, u2) = (us[0], us[1]);
    if g.has_edge(u1, us[2]) || g.has_edge(u2, us[3]) {
        return;
    }
    for &w in &common_neighbors(g, u1, u2) {
        if g.degree(w) < 3 || all.contains(&w) || g.has_edge(w, f[4]) {
            continue;
        }
        out.push(candidate(
            "spread",
            (7, 14, 4),
            vec![f[1], f[2], f[3], f[4], u1, u2, w],
            vec![],
            vec![],
            vec![(vec![], vec![u1, u2, f[2], f[4]])],
        ));
    }
}

/// A pentagon of 3-vertices with five distinct thirds. A heavy linked
/// pair of thirds goes with the pentagon; with no links at all, two fresh
/// vertices standing in for merged third pairs keep the count exact.
fn pentagon_hub_pair(g: &Graph, ctx: &RuleCtx) -> Vec<RawCandidate> {
    let mut out = Vec::new();
    for p in &ctx.pents {
        if p.iter().any(|&v| g.degree(v) != 3) {
            continue;
        }
        for f in frames(p) {
            let Some(us) = thirds(g, &f, &[0, 1, 2, 3, 4]) else { continue };
            let mut all = f.clone();
            all.extend(&us);
            if !pairwise_distinct(&all) {
                continue;
            }
            if g.has_edge(us[0], us[2]) {
                if g.degree(us[0]) >= 4 && g.degree(us[2]) >= 4 {
                    let mut d = f.clone();
                    d.extend([us[0], us[2]]);
                    out.push(candidate(
                        "linked",
                        (7, 14, 4),
                        d,
                        vec![],
                        vec![],
                        vec![(vec![], vec![f[0], f[1], f[2], f[3]])],
                    ));
                }
                continue;
            }
            if g.has_edge(us[0], us[3]) || g.has_edge(us[1], us[3]) {
                continue;
            }
            if !common_neighbors(g, us[0], us[1]).is_empty()
                || !common_neighbors(g, us[2], us[3]).is_empty()
            {
                continue;
            }
            out.push(candidate(
                "apex",
                (3, 5, 2),
                f.clone(),
                vec![vec![us[0], us[1]], vec![us[2], us[3]]],
                vec![(End::Apex(0), End::Apex(1))],
                vec![
                    (vec![], vec![f[0], f[3]]),
                    (vec![0], vec![f[0], f[1], f[3]]),
                    (vec![1], vec![f[0], f[2], f[3]]),
                    (vec![0, 1], vec![f[0], f[1], f[2], f[3]]),
                ],
            ));
        }
    }
    out
}

/// A pentagonal face with one heavy corner, cubic thirds, and two cubic
/// vertices w, w' stitching consecutive third pairs together.
fn pentagon_face_heavy(g: &Graph, ctx: &RuleCtx) -> Vec<RawCandidate> {
    let mut out = Vec::new();
    for face in ctx.simple_faces(5) {
        for f in frames(&face) {
            if g.degree(f[0]) < 4 || (1..5).any(|i| g.degree(f[i]) != 3) {
                continue;
            }
            let Some(us) = thirds(g, &f, &[1, 2, 3, 4]) else { continue };
            if us.iter().any(|&u| g.degree(u) < 3) {
                continue;
            }
            let mut all = f.clone();
            all.extend(&us);
            if !pairwise_distinct(&all) {
                continue;
            }
            let (u1, u2, u3, u4) = (us[0], us[1], us[2], us[3]);
            if g.has_edge(u1, u3) || g.has_edge(u2, u4) || g.has_edge(u1, u4) {
                continue;
            }
            for &w in &common_neighbors(g, u1, u2) {
                if g.degree(w) < 3 || all.contains(&w) || g.has_edge(w, u3) {
                    continue;
                }
                if g.has_edge(w, u4) {
                    out.push(candidate(
                        "hub-corner",
                        (7, 14, 4),
                        vec![f[0], f[1], f[2], f[4], u1, u4, w],
                        vec![],
                        vec![],
                        vec![(vec![], vec![w, u1, f[1], f[4]])],
                    ));
                    continue;
                }
                for &wp in &common_neighbors(g, u3, u4) {
                    if wp == w || g.degree(wp) < 3 || all.contains(&wp) {
                        continue;
                    }
                    if g.has_edge(wp, u2) {
                        continue;
                    }
                    heavy_face_cases(g, &mut out, &f, &us, w, wp);
                }
            }
        }
    }
    out
}

/// Later cases of the heavy pentagonal face, once w and w' are fixed.
fn heavy_face_cases(
    g: &Graph,
    out: &mut Vec<RawCandidate>,
    f: &[usize],
    us: &[usize],
    w: usize,
    wp: usize,
) {
    let (v0, v1, v2, v3, v4) = (f[0], f[1], f[2], f[3], f[4]);
    let (u1, u2, u3, u4) = (us[0], us[1], us[2], us[3]);
    if g.has_edge(w, wp) {
        out.push(candidate(
            "hub-link",
            (7, 14, 4),
            vec![v0, v1, v4, u1, u4, w, wp],
            vec![],
            vec![],
            vec![(vec![], vec![u1, v1, v4, wp])],
        ));
        return;
    }
    let Some(x) = lone_neighbor_outside(g, u1, &[v1, w]) else { return };
    if g.degree(x) < 3 || x == w || x == wp || f.contains(&x) || us.contains(&x) {
        return;
    }
    let mut hooked = false;
    if g.has_edge(x, u4) || g.has_edge(x, wp) {
        hooked = true;
        out.push(candidate(
            "tail-far",
            (11, 19, 7),
            vec![v1, v2, v3, v4, u1, u2, u3, u4, w, wp, x],
            vec![],
            vec![],
            vec![(vec![], vec![v1, v2, v3, u1, u4, w, wp])],
        ));
    }
    if g.has_edge(x, u3) {
        hooked = true;
        out.push(candidate(
            "tail-near",
            (11, 19, 7),
            vec![v1, v2, v3, v4, u1, u2, u3, u4, w, wp, x],
            vec![],
            vec![],
            vec![(vec![], vec![v1, v2, v3, u1, u4, w, u3])],
        ));
    }
    if hooked {
        return;
    }
    let mut d = f.to_vec();
    d.extend([u1, u2, u3, u4, w, wp, x]);
    out.push(candidate(
        "full",
        (12, 23, 7),
        d,
        vec![],
        vec![],
        vec![(vec![], vec![v1, v2, v3, v4, u1, w, wp])],
    ));
}

/// A pentagonal face of 3-vertices whose thirds include a linked heavy
/// pair, or at least three heavy vertices with no links among the thirds.
fn pentagon_face_heavy_thirds(g: &Graph, ctx: &RuleCtx) -> Vec<RawCandidate> {
    let mut out = Vec::new();
    for face in ctx.simple_faces(5) {
        if face.iter().any(|&v| g.degree(v) != 3) {
            continue;
        }
        for f in frames(&face) {
            let Some(us) = thirds(g, &f, &[0, 1, 2, 3, 4]) else { continue };
            let mut all = f.clone();
            all.extend(&us);
            if !pairwise_distinct(&all) {
                continue;
            }
            if g.has_edge(us[0], us[2]) && g.degree(us[0]) >= 4 && g.degree(us[2]) >= 4 {
                out.push(candidate(
                    "linked",
                    (6, 14, 3),
                    vec![f[0], f[1], f[2], f[3], us[0], us[2]],
                    vec![],
                    vec![],
                    vec![(vec![], vec![f[0], f[1], f[2]])],
                ));
            }
        }
        let Some(us) = thirds(g, &face, &[0, 1, 2, 3, 4]) else { continue };
        let mut all = face.clone();
        all.extend(&us);
        if !pairwise_distinct(&all) {
            continue;
        }
        if (0..5).any(|i| g.has_edge(us[i], us[(i + 2) % 5])) {
            continue;
        }
        let heavy: Vec<usize> = (0..5).filter(|&i| g.degree(us[i]) >= 4).collect();
        for a in 0..heavy.len() {
            for b in a + 1..heavy.len() {
                for c in b + 1..heavy.len() {
                    let s = [heavy[a], heavy[b], heavy[c]];
                    let mut d = face.clone();
                    d.extend(s.iter().map(|&i| us[i]));
                    // Lifting the three matched face vertices plus any
                    // fourth leaves a path with a single outside contact.
                    for extra in (0..5).filter(|i| !s.contains(i)) {
                        let mut lift: Vec<usize> = s.iter().map(|&i| face[i]).collect();
                        lift.push(face[extra]);
                        out.push(candidate(
                            "triple",
                            (8, 19, 4),
                            d.clone(),
                            vec![],
                            vec![],
                            vec![(vec![], lift)],
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Two pentagons of 3-vertices sharing an edge, with a vertex tying their
/// far corners together: nine vertices go, a six-vertex path lifts.
fn linked_pentagons(g: &Graph, ctx: &RuleCtx) -> Vec<RawCandidate> {
    let mut out = Vec::new();
    for p in &ctx.pents {
        if p.iter().any(|&v| g.degree(v) != 3) {
            continue;
        }
        for f in frames(p) {
            let (v0, v1, v2, v3, v4) = (f[0], f[1], f[2], f[3], f[4]);
            let Some(u2) = lone_neighbor_outside(g, v1, &[v0, v2]) else { continue };
            let Some(u4) = lone_neighbor_outside(g, v0, &[v1, v4]) else { continue };
            if g.degree(u2) != 3 || g.degree(u4) != 3 {
                continue;
            }
            for &u3 in &common_neighbors(g, u2, u4) {
                if g.degree(u3) < 3 {
                    continue;
                }
                let eight = [v0, v1, v2, v3, v4, u2, u3, u4];
                if !pairwise_distinct(&eight) || g.has_edge(v3, u3) {
                    continue;
                }
                for &w in &common_neighbors(g, v3, u3) {
                    if eight.contains(&w) {
                        continue;
                    }
                    let mut d = eight.to_vec();
                    d.push(w);
                    out.push(candidate(
                        "anchor",
                        (9, 15, 6),
                        d,
                        vec![],
                        vec![],
                        vec![(vec![], vec![v0, v1, v2, v3, u3, u4])],
                    ));
                }
            }
        }
    }
    out
}

/// A pentagonal face of 3-vertices with distinct unlinked thirds: heavy
/// thirds or the cubic mesh behind them decide how far the cut reaches.
fn pentagon_face_cubic(g: &Graph, ctx: &RuleCtx) -> Vec<RawCandidate> {
    let mut out = Vec::new();
    for face in ctx.simple_faces(5) {
        if face.iter().any(|&v| g.degree(v) != 3) {
            continue;
        }
        for f in frames(&face) {
            let Some(us) = thirds(g, &f, &[0, 1, 2, 3, 4]) else { continue };
            if us.iter().any(|&u| g.degree(u) < 3) {
                continue;
            }
            let mut all = f.clone();
            all.extend(&us);
            if !pairwise_distinct(&all) {
                continue;
            }
            if (0..5).any(|i| g.has_edge(us[i], us[(i + 2) % 5])) {
                continue;
            }
            cubic_face_cases(g, &mut out, &f, &us, &all);
        }
    }
    out
}

/// Frame-anchored cases of the all-cubic pentagonal face. The heavy pair
/// sits at u0-u1 or u0-u2; hub cases put the single heavy third at u0.
/// Other placements are reached by the other frames.
fn cubic_face_cases(
    g: &Graph,
    out: &mut Vec<RawCandidate>,
    f: &[usize],
    us: &[usize],
    all: &[usize],
) {
    let (v0, v1, v2, v3, v4) = (f[0], f[1], f[2], f[3], f[4]);
    let (u0, u1, u2, u3, u4) = (us[0], us[1], us[2], us[3], us[4]);
    let clear = |w: usize, others: &[usize]| {
        g.degree(w) >= 3 && !all.contains(&w) && others.iter().all(|&o| !g.has_edge(w, o))
    };
    if g.degree(u0) >= 4 && g.degree(u1) >= 4 {
        for &w in &common_neighbors(g, u2, u3) {
            if clear(w, &[u0, u1, u4]) {
                let mut d = all.to_vec();
                d.push(w);
                out.push(candidate(
                    "heavy-adjacent",
                    (11, 23, 6),
                    d,
                    vec![],
                    vec![],
                    vec![(vec![], vec![v0, v1, v2, v4, u2, u3])],
                ));
            }
        }
    }
    if g.degree(u0) >= 4 && g.degree(u2) >= 4 {
        for &w in &common_neighbors(g, u3, u4) {
            if clear(w, &[u0, u1, u2]) {
                let mut d = all.to_vec();
                d.push(w);
                out.push(candidate(
                    "heavy-apart",
                    (11, 23, 6),
                    d,
                    vec![],
                    vec![],
                    vec![(vec![], vec![v0, v1, v2, v4, u3, u4])],
                ));
            }
        }
    }
    for &wp in &common_neighbors(g, u1, u2) {
        if g.degree(wp) != 3 || !clear(wp, &[u0, u3, u4]) {
            continue;
        }
        if g.degree(u0) >= 4 {
            // Chain w-w'-w'' over u0..u3; u4 stays behind.
            for &w in &common_neighbors(g, u0, u1) {
                if g.degree(w) < 4 || !clear(w, &[u3]) || w == wp {
                    continue;
                }
                for &wpp in &common_neighbors(g, u2, u3) {
                    if g.degree(wpp) != 3 || !clear(wpp, &[u0, u4]) {
                        continue;
                    }
                    if wpp == w || wpp == wp || g.has_edge(w, wpp) {
                        continue;
                    }
                    let mut d = f.to_vec();
                    d.extend([u0, u1, u2, u3, w, wp, wpp]);
                    out.push(candidate(
                        "hub-chain",
                        (12, 23, 7),
                        d,
                        vec![],
                        vec![],
                        vec![(vec![], vec![v0, v2, v4, u1, u2, u3, wp])],
                    ));
                }
            }
        }
        for &wq in &common_neighbors(g, u3, u4) {
            if g.degree(wq) != 3 || !clear(wq, &[u0, u1, u2]) || wq == wp {
                continue;
            }
            if g.has_edge(wp, wq) {
                let mut d = f.to_vec();
                d.extend([u1, u2, u3, u4, wp, wq]);
                out.push(candidate(
                    "hub-bridge",
                    (11, 19, 7),
                    d,
                    vec![],
                    vec![],
                    vec![(vec![], vec![v1, v2, v3, v4, u3, u4, wp])],
                ));
            } else if g.degree(u0) >= 4 {
                let mut d = all.to_vec();
                d.extend([wp, wq]);
                out.push(candidate(
                    "hub-split",
                    (12, 23, 7),
                    d,
                    vec![],
                    vec![],
                    vec![(vec![], vec![v0, v1, v2, v3, u3, u4, wp])],
                ));
            }
        }
        // Spread over all five thirds with three consecutive stitches.
        for &w2 in &common_neighbors(g, u2, u3) {
            if g.degree(w2) < 3 || !clear(w2, &[u0]) || w2 == wp {
                continue;
            }
            for &w3 in &common_neighbors(g, u3, u4) {
                if g.degree(w3) < 3 || !clear(w3, &[u0, u1]) {
                    continue;
                }
                if w3 == wp || w3 == w2 || g.has_edge(wp, w3) {
                    continue;
                }
                let mut d = all.to_vec();
                d.extend([wp, w2, w3]);
                out.push(candidate(
                    "spread",
                    (13, 23, 8),
                    d,
                    vec![],
                    vec![],
                    vec![(vec![], vec![v0, v1, v2, v3, u1, u2, u3, u4])],
                ));
            }
        }
    }
}
