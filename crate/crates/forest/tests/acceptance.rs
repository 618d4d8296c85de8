//! The acceptance gate: ten end-to-end checks covering the exact solver
//! fixtures, the bound algebra, the triple tables, the corollary
//! derivations, the refutation arithmetic, the reduction and certificate
//! pipeline, rule-lift soundness, the charge audit identity, solver cross
//! validation, and tightness spot checks. Each test prints one PASS line;
//! a failed assert marks the criterion failed.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use forest::bounds::{
    best_bound, check_triple, derive_corollary, girth4_polygon, girth4_triples, girth5_polygon,
    girth5_triples, kowalik_refutation, polygon_vertices, rat, verify_triple_proof, GirthClass,
    LinearExpr, Polygon, Rational, Triple,
};
use forest::exact::{forest_number_bruteforce, forest_number_exact, SolverConfig};
use forest::families;
use forest::graph::Graph;
use forest::reducer::{self, enumerate_applications, ReduceOptions};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn fixture(spec: &str) -> Graph {
    families::make(&spec.parse().expect("family spec parses")).expect("fixture builds")
}

fn solve(g: &Graph) -> forest::exact::SolveResult {
    forest_number_exact(g, &SolverConfig::default())
}

fn ceil_int(r: Rational) -> i64 {
    r.ceil().to_integer()
}

/// Two degree-3 vertices joined by an edge and two paths of four edges
/// each; the short cycles have length 5, the outer one 8. Girth 5.
fn theta_5_5_2() -> Graph {
    Graph::from_rotations(vec![
        vec![1, 7, 4],
        vec![5, 0, 2],
        vec![1, 3],
        vec![2, 4],
        vec![3, 0],
        vec![1, 6],
        vec![5, 7],
        vec![6, 0],
    ])
    .expect("valid rotation system")
}

/// Same shape with five-edge paths: cycles of length 6, 6, and 10.
fn theta_6_6_2() -> Graph {
    Graph::from_rotations(vec![
        vec![1, 9, 5],
        vec![6, 0, 2],
        vec![1, 3],
        vec![2, 4],
        vec![3, 5],
        vec![4, 0],
        vec![1, 7],
        vec![6, 8],
        vec![7, 9],
        vec![8, 0],
    ])
    .expect("valid rotation system")
}

#[test]
fn criterion_01_exact_fixtures() {
    let cases: [(&str, usize, u64); 4] = [
        ("cube", 5, 1),
        ("dodecahedron", 14, 1),
        ("girth6", 23, 30),
        ("girth7", 34, 120),
    ];
    let mut timings = Vec::new();
    for (spec, want, budget_s) in cases {
        let g = fixture(spec);
        let r = solve(&g);
        assert!(r.optimal, "{spec}: search was truncated");
        assert_eq!(r.forest_number, want, "{spec}: wrong forest number");
        assert!(
            r.elapsed < Duration::from_secs(budget_s),
            "{spec}: {:?} exceeds the {budget_s} s budget",
            r.elapsed
        );
        timings.push(format!("{spec} {}ms", r.elapsed.as_millis()));
    }
    println!(
        "criterion 01: PASS - a = 5, 14, 23, 34 within budget ({})",
        timings.join(", ")
    );
}

#[test]
fn criterion_02_polygon_vertices() {
    let g4 = polygon_vertices(girth4_polygon().constraints().to_vec()).expect("nonempty region");
    let want4 = vec![
        (rat(0, 1), rat(0, 1)),
        (rat(3, 4), rat(1, 8)),
        (rat(38, 44), rat(7, 44)),
        (rat(1, 1), rat(1, 4)),
    ];
    assert_eq!(g4, want4, "girth-4 vertex set");
    assert_eq!(girth4_polygon().vertices(), &want4[..]);

    let g5 = polygon_vertices(girth5_polygon().constraints().to_vec()).expect("nonempty region");
    let want5 = vec![
        (rat(0, 1), rat(0, 1)),
        (rat(15, 16), rat(3, 16)),
        (rat(1, 1), rat(5, 23)),
    ];
    assert_eq!(g5, want5, "girth-5 vertex set");
    assert_eq!(girth5_polygon().vertices(), &want5[..]);
    println!("criterion 02: PASS - both vertex sets match as exact rationals");
}

/// The largest value of a·alpha - b·beta over the polygon, the quantity a
/// triple's gamma must dominate.
fn triple_peak(t: &Triple, p: &Polygon) -> Rational {
    p.vertices()
        .iter()
        .map(|&(a, b)| a * rat(t.alpha as i64, 1) - b * rat(t.beta as i64, 1))
        .max()
        .expect("polygon has vertices")
}

#[test]
fn criterion_03_triple_tables() {
    let tables = [
        (girth4_triples(), girth4_polygon(), 15, "girth-4"),
        (girth5_triples(), girth5_polygon(), 18, "girth-5"),
    ];
    for (triples, polygon, count, label) in tables {
        assert_eq!(triples.len(), count, "{label} table size");
        for t in triples {
            assert!(check_triple(t, polygon), "{label} triple {t} fails");
            assert!(
                verify_triple_proof(t, polygon),
                "{label} triple {t}: stored constraint combination does not replay"
            );
            let peak = triple_peak(t, polygon);
            assert!(
                peak > rat(t.gamma as i64, 1) - rat(1, 1),
                "{label} triple {t} stays valid with gamma lowered by one"
            );
            if t.gamma >= 1 {
                let weakened = Triple::bare(t.alpha, t.beta, t.gamma - 1);
                assert!(
                    !check_triple(&weakened, polygon),
                    "{label} triple {t} passes check_triple after the mutation"
                );
            }
        }
    }
    println!("criterion 03: PASS - 15 + 18 triples hold and are tight to within one unit of gamma");
}

#[test]
fn criterion_04_corollary_derivation() {
    let cases: [(&str, u64, LinearExpr); 5] = [
        ("main", 4, LinearExpr { n_coeff: rat(6, 11), constant: rat(7, 11) }),
        ("bmain", 5, LinearExpr { n_coeff: rat(44, 69), constant: rat(50, 69) }),
        ("bmain", 6, LinearExpr { n_coeff: rat(31, 46), constant: rat(30, 46) }),
        ("bmain", 7, LinearExpr { n_coeff: rat(16, 23), constant: rat(14, 23) }),
        ("salavatipour_nm", 4, LinearExpr { n_coeff: rat(17, 32), constant: rat(24, 32) }),
    ];
    for (base, girth, want) in cases {
        let got = derive_corollary(base, girth).expect("derivation applies");
        assert_eq!(got, want, "{base} at girth {girth}");
    }
    println!("criterion 04: PASS - all five substitutions reproduce the published coefficients");
}

#[test]
fn criterion_05_kowalik_refutation() {
    for k in 1..=10u64 {
        let rep = kowalik_refutation(k);
        assert_eq!(rep.claimed, rat(664 * k as i64 - 24, 128), "claimed value at k={k}");
        assert_eq!(rep.actual, 5 * k, "actual forest number at k={k}");
        assert_eq!(rep.per_cube, 5, "per-component solve at k={k}");
        assert_eq!(rep.margin, rat(3 * (k as i64 - 1), 16), "margin at k={k}");
        assert_eq!(rep.violated, k >= 2, "violation flag at k={k}");
    }
    println!("criterion 05: PASS - equality at k=1, violation with margin 3(k-1)/16 for k=2..10");
}

#[test]
fn criterion_06_reduction_guarantee() {
    let mut corpus: Vec<(String, GirthClass)> = vec![
        ("cube".into(), GirthClass::Girth4),
        ("cubes:2".into(), GirthClass::Girth4),
        ("cubes:3".into(), GirthClass::Girth4),
        ("cubes-linked:2".into(), GirthClass::Girth4),
        ("cubes-linked:3".into(), GirthClass::Girth4),
        ("cube-minus-edge:2".into(), GirthClass::Girth4),
        ("dodecahedron".into(), GirthClass::Girth5),
        ("grid:2x8".into(), GirthClass::Girth4),
        ("grid:2x12".into(), GirthClass::Girth4),
    ];
    for p in 2..=6usize {
        for q in p..=6usize {
            corpus.push((format!("grid:{p}x{q}"), GirthClass::Girth4));
        }
    }
    let opts = ReduceOptions::default();
    for (spec, class) in &corpus {
        let g = fixture(spec);
        let start = Instant::now();
        let cert = reducer::reduce(&g, *class, &opts).expect("reduce succeeds");
        let rep = reducer::verify(&g, &cert).expect("certificate verifies");
        let elapsed = start.elapsed();
        assert!(rep.certified, "{spec}: certificate is not bound-certified");
        assert_eq!(rep.forest, cert.forest, "{spec}: verify echoes a different forest");
        let need = ceil_int(rep.best_bound);
        assert!(
            cert.forest.len() as i64 >= need,
            "{spec}: |F| = {} below ceil(best_bound) = {need}",
            cert.forest.len()
        );
        assert!(
            elapsed < Duration::from_secs(10),
            "{spec}: reduce + verify took {elapsed:?}"
        );
    }
    println!(
        "criterion 06: PASS - {} instances reduce to certified, bound-meeting forests",
        corpus.len()
    );
}

/// All maximum induced forests of `g`, by scanning every vertex subset.
fn all_maximum_forests(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    assert!(n < 26, "subset scan needs a small graph");
    let size = forest_number_bruteforce(g).forest_number;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if g.is_induced_forest(&subset) {
            out.push(subset);
        }
    }
    out
}

#[test]
fn criterion_07_rule_lift_soundness() {
    let girth4_specs = [
        "cube",
        "cubes:2",
        "cube-minus-edge:1",
        "cube-minus-edge:2",
        "cubes-linked:2",
        "grid:2x2",
        "grid:2x3",
        "grid:2x4",
        "grid:2x5",
        "grid:2x6",
        "grid:2x7",
        "grid:2x8",
        "grid:3x3",
        "grid:3x4",
        "grid:3x5",
        "grid:4x4",
        "cycle:4",
        "cycle:6",
    ];
    let mut corpus: Vec<(String, Graph, GirthClass)> = girth4_specs
        .iter()
        .map(|s| (s.to_string(), fixture(s), GirthClass::Girth4))
        .collect();
    corpus.push(("theta(5,5,2)".into(), theta_5_5_2(), GirthClass::Girth5));
    corpus.push(("theta(6,6,2)".into(), theta_6_6_2(), GirthClass::Girth5));
    corpus.push(("cycle:5".into(), fixture("cycle:5"), GirthClass::Girth5));
    corpus.push(("cycle:8".into(), fixture("cycle:8"), GirthClass::Girth5));

    let (mut girth4_matches, mut girth5_matches) = (0usize, 0usize);
    let mut matches_by_variant: BTreeMap<String, usize> = BTreeMap::new();
    let mut lifts = 0usize;
    for (name, g, class) in &corpus {
        assert!(g.n() <= 16, "{name}: corpus is restricted to n <= 16");
        let apps = enumerate_applications(g, *class).expect("enumeration succeeds");
        for app in &apps {
            match class {
                GirthClass::Girth4 => girth4_matches += 1,
                GirthClass::Girth5 => girth5_matches += 1,
            }
            *matches_by_variant
                .entry(format!("{}/{}", app.rule, app.variant))
                .or_insert(0) += 1;
            let reduced = app.reduced();
            for fstar in all_maximum_forests(reduced) {
                let lifted = app.lift_forest(&fstar);
                assert!(
                    g.is_induced_forest(&lifted),
                    "{name}: {}/{} lift of {fstar:?} is not an induced forest",
                    app.rule,
                    app.variant
                );
                assert!(
                    lifted.len() >= fstar.len() + app.gamma as usize,
                    "{name}: {}/{} lift recovers {} vertices, needs {} + {}",
                    app.rule,
                    app.variant,
                    lifted.len(),
                    fstar.len(),
                    app.gamma
                );
                lifts += 1;
            }
        }
    }
    assert!(girth4_matches > 0, "no girth-4 rule matched anywhere in the corpus");
    assert!(girth5_matches > 0, "no girth-5 rule matched anywhere in the corpus");
    println!(
        "criterion 07: PASS - {lifts} lifted maximum forests across {} matched variants, zero failures",
        matches_by_variant.len()
    );
    for (variant, count) in &matches_by_variant {
        println!("  {variant}: {count} matches");
    }
}

#[test]
fn criterion_08_audit_identity() {
    let girth4_fixtures = [
        "cube",
        "cube-minus-edge:1",
        "grid:3x3",
        "grid:4x6",
        "grid:6x6",
        "cubes-linked:2",
        "cubes-linked:3",
    ];
    for spec in girth4_fixtures {
        let g = fixture(spec);
        let rep = g.discharging_audit(GirthClass::Girth4).expect("audit runs");
        assert_eq!(rep.euler_sum, -12, "{spec}: Euler sum");
    }
    let girth5_fixtures = ["dodecahedron", "girth6", "girth7", "cycle:5"];
    for spec in girth5_fixtures {
        let g = fixture(spec);
        let rep = g.discharging_audit(GirthClass::Girth5).expect("audit runs");
        assert_eq!(rep.euler_sum, -12, "{spec}: Euler sum");
    }
    let theta = theta_5_5_2();
    let rep = theta.discharging_audit(GirthClass::Girth5).expect("audit runs");
    assert_eq!(rep.euler_sum, -12, "theta(5,5,2): Euler sum");

    let cube = fixture("cube");
    let rep = cube.discharging_audit(GirthClass::Girth4).expect("audit runs");
    let faces: usize = rep.face_counts.values().sum();
    assert_eq!(faces, 6);
    assert_eq!(rep.violations.len(), 6, "every cube face must violate");

    let dodec = fixture("dodecahedron");
    let rep = dodec.discharging_audit(GirthClass::Girth5).expect("audit runs");
    let faces: usize = rep.face_counts.values().sum();
    assert_eq!(faces, 12);
    assert_eq!(rep.violations.len(), 12, "every dodecahedron face must violate");
    println!("criterion 08: PASS - Euler sum -12 on 12 fixtures; 6 and 12 violating faces");
}

#[test]
fn criterion_09_solver_oracle_agreement() {
    let fixtures: Vec<Graph> = ["cube", "dodecahedron", "grid:4x5", "girth6", "cubes-linked:2"]
        .iter()
        .map(|s| fixture(s))
        .collect();
    let cfg = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..200usize {
        let g = &fixtures[trial % fixtures.len()];
        let size = rng.random_range(4..=g.n().min(18));
        let verts = rand::seq::index::sample(&mut rng, g.n(), size).into_vec();
        let sub = g.induced_subgraph(&verts).expect("vertex list is valid").graph;
        let fast = forest_number_exact(&sub, &cfg);
        assert!(fast.optimal);
        let slow = forest_number_bruteforce(&sub);
        assert_eq!(
            fast.forest_number, slow.forest_number,
            "trial {trial}: solvers disagree on a subgraph of fixture {}",
            trial % fixtures.len()
        );
    }
    println!("criterion 09: PASS - branch and bound equals brute force on 200 random subgraphs");
}

#[test]
fn criterion_10_tightness_spot_checks() {
    for t in [2usize, 3, 5, 8] {
        let g = fixture(&format!("hosono:{t}"));
        let n = g.n() as i64;
        assert_eq!(n, 2 * (t as i64 + 1));
        let want = ceil_int(rat(2 * n, 3));
        let r = solve(&g);
        assert_eq!(r.forest_number as i64, want, "chain t={t}: a is not ceil(2n/3)");
    }

    let dodec = fixture("dodecahedron");
    let (bound, _) = best_bound(GirthClass::Girth5, 20, 30);
    assert_eq!(bound, rat(310, 23));
    assert_eq!(ceil_int(bound), 14);
    assert_eq!(solve(&dodec).forest_number, 14, "the girth-5 bound is tight after ceiling");
    println!("criterion 10: PASS - chain forests hit ceil(2n/3); ceil(310/23) = 14 = a(dodecahedron)");
}
