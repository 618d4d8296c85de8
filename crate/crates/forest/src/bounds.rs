//! Exact bound algebra for induced forests in sparse planar graphs.
//!
//! Everything here is exact rational arithmetic. The central objects are the
//! two constraint polygons over coefficient pairs (a, b): a point of the
//! polygon for a class yields the guarantee a(G) ≥ a·n − b·m for every graph
//! G of that class, so the best such bound for given n, m is found by
//! maximizing a·n − b·m over the polygon (attained at a vertex). Accounting
//! triples (α, β, γ) used by the reduction engine are valid exactly when
//! a·α − b·β ≤ γ holds over the whole polygon; each catalog triple carries a
//! non-negative combination of the defining constraints as an independent
//! proof, and [`check_triple`] / [`verify_triple_proof`] are two separate
//! routes that the tests require to agree.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

/// Exact rational number; always kept in reduced form.
pub type Rational = num_rational::Ratio<i64>;

/// Shorthand constructor. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("constraint system has an empty feasible region")]
    EmptyRegion,
    #[error("feasible region is unbounded in a direction that can grow a·n − b·m")]
    UnboundedRegion,
    #[error("half-plane has both coefficients zero")]
    DegenerateHalfPlane,
    #[error("unknown formula id `{0}`")]
    UnknownFormula(String),
    #[error("formula `{formula}` needs input `{input}`")]
    MissingInput { formula: String, input: &'static str },
    #[error("formula `{formula}` does not apply at girth {girth}")]
    GirthOutOfRange { formula: String, girth: u64 },
    #[error("formula `{0}` is not linear in m")]
    NotLinearInM(String),
    #[error("formula `{0}` does not decrease in m; substituting the edge bound is meaningless")]
    NotDecreasingInM(String),
    #[error("formula `{formula}` needs max degree at least 2, got {delta}")]
    DegreeOutOfRange { formula: String, delta: u64 },
}

/// The two graph classes the polygon machinery covers: triangle-free planar
/// (girth at least 4) and planar of girth at least 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GirthClass {
    Girth4,
    Girth5,
}

impl GirthClass {
    pub fn min_girth(self) -> usize {
        match self {
            GirthClass::Girth4 => 4,
            GirthClass::Girth5 => 5,
        }
    }

    pub fn polygon(self) -> &'static Polygon {
        match self {
            GirthClass::Girth4 => girth4_polygon(),
            GirthClass::Girth5 => girth5_polygon(),
        }
    }

    pub fn triples(self) -> &'static [Triple] {
        match self {
            GirthClass::Girth4 => girth4_triples(),
            GirthClass::Girth5 => girth5_triples(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GirthClass::Girth4 => "girth4",
            GirthClass::Girth5 => "girth5",
        }
    }
}

impl fmt::Display for GirthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GirthClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "girth4" => Ok(GirthClass::Girth4),
            "girth5" => Ok(GirthClass::Girth5),
            other => Err(format!("unknown class `{other}` (expected girth4 or girth5)")),
        }
    }
}

/// The closed half-plane ca·a + cb·b ≤ rhs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfPlane {
    pub ca: Rational,
    pub cb: Rational,
    pub rhs: Rational,
}

impl HalfPlane {
    pub fn new(ca: Rational, cb: Rational, rhs: Rational) -> Result<Self, BoundsError> {
        if ca.is_zero() && cb.is_zero() {
            return Err(BoundsError::DegenerateHalfPlane);
        }
        Ok(HalfPlane { ca, cb, rhs })
    }

    pub fn holds(&self, a: Rational, b: Rational) -> bool {
        self.ca * a + self.cb * b <= self.rhs
    }

    /// Intersection point of the two boundary lines, if they are not parallel.
    fn boundary_intersection(&self, other: &HalfPlane) -> Option<(Rational, Rational)> {
        let det = self.ca * other.cb - other.ca * self.cb;
        if det.is_zero() {
            return None;
        }
        let a = (self.rhs * other.cb - other.rhs * self.cb) / det;
        let b = (self.ca * other.rhs - other.ca * self.rhs) / det;
        Some((a, b))
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*a + {}*b <= {}", self.ca, self.cb, self.rhs)
    }
}

/// A constraint polygon over (a, b) with its vertex list precomputed.
///
/// The vertex list is exactly the set of pairwise boundary intersections
/// that satisfy every constraint, deduplicated and sorted lexicographically.
/// The feasible region may recede in the +b direction (larger b only ever
/// weakens a·n − b·m for n, m ≥ 0); any other unbounded direction is
/// rejected as a structural error, as is an empty region.
#[derive(Debug, Clone)]
pub struct Polygon {
    constraints: Vec<HalfPlane>,
    vertices: Vec<(Rational, Rational)>,
}

impl Polygon {
    pub fn from_constraints(constraints: Vec<HalfPlane>) -> Result<Polygon, BoundsError> {
        if constraints.is_empty() {
            return Err(BoundsError::UnboundedRegion);
        }
        for hp in &constraints {
            if hp.ca.is_zero() && hp.cb.is_zero() {
                return Err(BoundsError::DegenerateHalfPlane);
            }
        }

        // Recession directions d solve ca·dx + cb·dy ≤ 0 for all constraints.
        // In the plane every extreme ray of that cone is parallel to some
        // constraint boundary, so checking the (at most) 2k boundary
        // directions covers all of them. A direction with dx > 0 or dy < 0
        // could grow the objective a·n − b·m without bound.
        for hp in &constraints {
            for dir in [(-hp.cb, hp.ca), (hp.cb, -hp.ca)] {
                let (dx, dy) = dir;
                let in_cone = constraints
                    .iter()
                    .all(|c| (c.ca * dx + c.cb * dy) <= int(0));
                if in_cone && (dx > int(0) || dy < int(0)) {
                    return Err(BoundsError::UnboundedRegion);
                }
            }
        }

        let mut vertices: Vec<(Rational, Rational)> = Vec::new();
        for i in 0..constraints.len() {
            for j in (i + 1)..constraints.len() {
                let Some((a, b)) = constraints[i].boundary_intersection(&constraints[j]) else {
                    continue;
                };
                if constraints.iter().all(|c| c.holds(a, b)) && !vertices.contains(&(a, b)) {
                    vertices.push((a, b));
                }
            }
        }
        if vertices.is_empty() {
            return Err(BoundsError::EmptyRegion);
        }
        vertices.sort();
        Ok(Polygon {
            constraints,
            vertices,
        })
    }

    pub fn constraints(&self) -> &[HalfPlane] {
        &self.constraints
    }

    /// Exact rational vertices, deduplicated, sorted lexicographically.
    pub fn vertices(&self) -> &[(Rational, Rational)] {
        &self.vertices
    }

    pub fn contains(&self, a: Rational, b: Rational) -> bool {
        self.constraints.iter().all(|c| c.holds(a, b))
    }
}

/// Convenience wrapper matching the operation-level contract: build a
/// polygon and return its vertex list.
pub fn polygon_vertices(
    constraints: Vec<HalfPlane>,
) -> Result<Vec<(Rational, Rational)>, BoundsError> {
    Ok(Polygon::from_constraints(constraints)?.vertices.clone())
}

/// Constraint order for the girth-4 polygon:
/// `[0] -a ≤ 0, [1] a ≤ 1, [2] -b ≤ 0, [3] a - 6b ≤ 0, [4] 3a - 10b ≤ 1,
/// [5] 8a - 12b ≤ 5`. Triple proofs refer to these indices.
pub fn girth4_polygon() -> &'static Polygon {
    static POLY: OnceLock<Polygon> = OnceLock::new();
    POLY.get_or_init(|| {
        Polygon::from_constraints(vec![
            HalfPlane { ca: int(-1), cb: int(0), rhs: int(0) },
            HalfPlane { ca: int(1), cb: int(0), rhs: int(1) },
            HalfPlane { ca: int(0), cb: int(-1), rhs: int(0) },
            HalfPlane { ca: int(1), cb: int(-6), rhs: int(0) },
            HalfPlane { ca: int(3), cb: int(-10), rhs: int(1) },
            HalfPlane { ca: int(8), cb: int(-12), rhs: int(5) },
        ])
        .expect("girth-4 constraint system is feasible")
    })
}

/// Constraint order for the girth-5 polygon:
/// `[0] -a ≤ 0, [1] a ≤ 1, [2] -b ≤ 0, [3] a - 5b ≤ 0, [4] 11a - 23b ≤ 6`.
pub fn girth5_polygon() -> &'static Polygon {
    static POLY: OnceLock<Polygon> = OnceLock::new();
    POLY.get_or_init(|| {
        Polygon::from_constraints(vec![
            HalfPlane { ca: int(-1), cb: int(0), rhs: int(0) },
            HalfPlane { ca: int(1), cb: int(0), rhs: int(1) },
            HalfPlane { ca: int(0), cb: int(-1), rhs: int(0) },
            HalfPlane { ca: int(1), cb: int(-5), rhs: int(0) },
            HalfPlane { ca: int(11), cb: int(-23), rhs: int(6) },
        ])
        .expect("girth-5 constraint system is feasible")
    })
}

/// An accounting triple (α, β, γ): removing α vertices and at least β edges
/// while guaranteeing γ recovered forest vertices is a sound reduction step
/// whenever a·α − b·β ≤ γ over the class polygon. `proof` is a non-negative
/// combination of polygon constraints (index, coefficient) that sums to
/// exactly that inequality; it is checked independently of the vertex scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub proof: Vec<(usize, Rational)>,
}

impl Triple {
    pub fn new(alpha: u32, beta: u32, gamma: u32, proof: Vec<(usize, Rational)>) -> Triple {
        assert!(alpha >= 1, "a triple must remove at least one vertex");
        Triple {
            alpha,
            beta,
            gamma,
            proof,
        }
    }

    /// Same values without the proof combination; used for ad-hoc queries.
    pub fn bare(alpha: u32, beta: u32, gamma: u32) -> Triple {
        Triple::new(alpha, beta, gamma, Vec::new())
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.alpha, self.beta, self.gamma)
    }
}

/// True iff a·α − b·β ≤ γ at every vertex of the polygon (equivalently, on
/// the whole polygon: the left side is linear and the region's only
/// recession direction, +b, decreases it).
pub fn check_triple(t: &Triple, p: &Polygon) -> bool {
    p.vertices().iter().all(|&(a, b)| {
        a * int(t.alpha as i64) - b * int(t.beta as i64) <= int(t.gamma as i64)
    })
}

/// Independent proof route: replay the stored constraint combination and
/// confirm it is non-negative, sums to exactly α·a − β·b on the left, and to
/// at most γ on the right. Returns false for an empty proof.
pub fn verify_triple_proof(t: &Triple, p: &Polygon) -> bool {
    if t.proof.is_empty() {
        return false;
    }
    let mut ca = int(0);
    let mut cb = int(0);
    let mut rhs = int(0);
    for &(idx, coef) in &t.proof {
        if coef.is_negative() {
            return false;
        }
        let Some(hp) = p.constraints().get(idx) else {
            return false;
        };
        ca += coef * hp.ca;
        cb += coef * hp.cb;
        rhs += coef * hp.rhs;
    }
    ca == int(t.alpha as i64) && cb == int(-(t.beta as i64)) && rhs <= int(t.gamma as i64)
}

fn g4t(alpha: u32, beta: u32, gamma: u32, proof: &[(usize, Rational)]) -> Triple {
    Triple::new(alpha, beta, gamma, proof.to_vec())
}

/// The fifteen girth-4 accounting triples with their constraint combinations.
pub fn girth4_triples() -> &'static [Triple] {
    static TRIPLES: OnceLock<Vec<Triple>> = OnceLock::new();
    TRIPLES.get_or_init(|| {
        let h = rat(1, 2);
        vec![
            g4t(1, 6, 0, &[(3, int(1))]),
            g4t(2, 5, 1, &[(1, h), (4, h)]),
            g4t(3, 5, 2, &[(1, rat(3, 2)), (4, h)]),
            g4t(1, 1, 1, &[(1, int(1)), (2, int(1))]),
            g4t(5, 9, 3, &[(1, h), (3, h), (5, h)]),
            g4t(6, 8, 4, &[(1, rat(2, 3)), (5, rat(2, 3))]),
            g4t(4, 10, 2, &[(1, int(1)), (4, int(1))]),
            g4t(7, 13, 4, &[(1, rat(1, 6)), (4, h), (5, rat(2, 3))]),
            g4t(3, 10, 1, &[(4, int(1))]),
            g4t(8, 12, 5, &[(5, int(1))]),
            g4t(6, 14, 3, &[(3, h), (4, h), (5, h)]),
            g4t(8, 19, 4, &[(1, h), (3, h), (4, int(1)), (5, h)]),
            g4t(9, 24, 4, &[(3, h), (4, rat(3, 2)), (5, h)]),
            g4t(10, 23, 5, &[(1, rat(1, 6)), (4, rat(3, 2)), (5, rat(2, 3))]),
            g4t(9, 19, 5, &[(1, rat(3, 2)), (3, h), (4, int(1)), (5, h)]),
        ]
    })
}

/// The eighteen girth-5 accounting triples with their constraint combinations.
pub fn girth5_triples() -> &'static [Triple] {
    static TRIPLES: OnceLock<Vec<Triple>> = OnceLock::new();
    TRIPLES.get_or_init(|| {
        let h = rat(1, 2);
        vec![
            g4t(1, 5, 0, &[(3, int(1))]),
            g4t(2, 5, 1, &[(1, int(1)), (3, int(1))]),
            g4t(3, 5, 2, &[(1, int(2)), (3, int(1))]),
            g4t(5, 10, 3, &[(1, int(3)), (3, int(2))]),
            g4t(1, 0, 1, &[(1, int(1))]),
            g4t(6, 14, 3, &[(3, h), (4, h)]),
            g4t(6, 10, 4, &[(1, int(4)), (3, int(2))]),
            g4t(7, 14, 4, &[(1, int(1)), (3, h), (4, h)]),
            g4t(7, 10, 5, &[(1, int(5)), (3, int(2))]),
            g4t(10, 15, 7, &[(1, int(7)), (3, int(3))]),
            g4t(8, 14, 5, &[(1, int(2)), (3, h), (4, h)]),
            g4t(10, 20, 6, &[(1, int(6)), (3, int(4))]),
            g4t(11, 19, 7, &[(1, int(4)), (3, rat(3, 2)), (4, h)]),
            g4t(12, 23, 7, &[(1, int(1)), (4, int(1))]),
            g4t(8, 19, 4, &[(1, int(1)), (3, rat(3, 2)), (4, h)]),
            g4t(9, 15, 6, &[(1, int(6)), (3, int(3))]),
            g4t(11, 23, 6, &[(4, int(1))]),
            g4t(13, 23, 8, &[(1, int(2)), (4, int(1))]),
        ]
    })
}

/// Look up the catalog triple with the given values for a class.
pub fn class_triple(class: GirthClass, alpha: u32, beta: u32, gamma: u32) -> Option<&'static Triple> {
    class
        .triples()
        .iter()
        .find(|t| t.alpha == alpha && t.beta == beta && t.gamma == gamma)
}

/// Maximize a·n − b·m over the class polygon. Returns the value and the
/// maximizing vertex; ties go to the lexicographically smallest vertex.
pub fn best_bound(class: GirthClass, n: u64, m: u64) -> (Rational, (Rational, Rational)) {
    let poly = class.polygon();
    let n = int(i64::try_from(n).expect("graph order fits in i64"));
    let m = int(i64::try_from(m).expect("graph size fits in i64"));
    let mut best: Option<(Rational, (Rational, Rational))> = None;
    // Vertices are sorted ascending, so a strict improvement scan reports
    // the lexicographically smallest maximizer.
    for &(a, b) in poly.vertices() {
        let value = a * n - b * m;
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, (a, b)));
        }
    }
    best.expect("polygon has at least one vertex")
}

/// A linear expression c_n·n + c_0 in the graph order, in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearExpr {
    pub n_coeff: Rational,
    pub constant: Rational,
}

impl LinearExpr {
    pub fn eval(&self, n: u64) -> Rational {
        self.n_coeff * int(i64::try_from(n).expect("graph order fits in i64")) + self.constant
    }
}

impl fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*n + {}", self.n_coeff, self.constant)
    }
}

/// Graph classes a bound formula may require.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Applicability {
    Planar,
    Outerplanar,
    TriangleFree,
    TriangleFreePlanar,
    /// Planar with girth at least the given value.
    PlanarGirth(u64),
    /// Planar with girth at least a caller-chosen g (g itself is an input).
    PlanarGirthParam,
    CubicTriangleFree,
    Connected,
}

impl Applicability {
    pub fn describe(self) -> String {
        match self {
            Applicability::Planar => "planar".into(),
            Applicability::Outerplanar => "outerplanar".into(),
            Applicability::TriangleFree => "triangle-free".into(),
            Applicability::TriangleFreePlanar => "triangle-free planar".into(),
            Applicability::PlanarGirth(g) => format!("planar, girth >= {g}"),
            Applicability::PlanarGirthParam => "planar, girth >= g (g supplied)".into(),
            Applicability::CubicTriangleFree => "cubic triangle-free".into(),
            Applicability::Connected => "connected".into(),
        }
    }
}

/// Functional shape of a formula, as exact data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// c_n·n + c_m·m + c_0.
    Linear {
        cn: Rational,
        cm: Rational,
        c0: Rational,
    },
    /// Pointwise maximum of linear pieces.
    MaxLinear(Vec<(Rational, Rational, Rational)>),
    /// α(G) + (n − α(G)) / (Δ − 1)²; needs alpha and max_degree inputs.
    IndependenceDegree,
    /// n − (5n − 10)·g / (23(g − 2)); needs the girth input g ≥ 5.
    GirthScaled,
}

/// One catalog entry. `refuted` marks a published claim that the refutation
/// report disproves; it is kept queryable but must never back a guarantee.
#[derive(Debug, Clone)]
pub struct BoundFormula {
    pub id: &'static str,
    pub applicability: Applicability,
    pub shape: Shape,
    pub refuted: bool,
    /// Matching published upper bound for the class, when one is known.
    pub tightness: Option<&'static str>,
}

/// Inputs a formula evaluation may draw from.
#[derive(Debug, Clone, Copy, Default)]
pub struct FormulaInputs {
    pub n: u64,
    pub m: Option<u64>,
    pub girth: Option<u64>,
    pub alpha: Option<u64>,
    pub max_degree: Option<u64>,
}

fn linear(cn: Rational, cm: Rational, c0: Rational) -> Shape {
    Shape::Linear { cn, cm, c0 }
}

/// The full formula catalog.
pub fn formula_catalog() -> &'static [BoundFormula] {
    static CATALOG: OnceLock<Vec<BoundFormula>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        vec![
            BoundFormula {
                id: "borodin",
                applicability: Applicability::Planar,
                shape: linear(rat(2, 5), int(0), int(0)),
                refuted: false,
                tightness: Some("ceil(n/2) upper bound for the class"),
            },
            BoundFormula {
                id: "hosono",
                applicability: Applicability::Outerplanar,
                shape: linear(rat(2, 3), int(0), int(0)),
                refuted: false,
                tightness: Some("tight on the two-path chain family"),
            },
            BoundFormula {
                id: "alon_nm",
                applicability: Applicability::TriangleFree,
                shape: linear(int(1), rat(-1, 4), int(0)),
                refuted: false,
                tightness: Some("tight on disjoint unions of 4-cycles"),
            },
            BoundFormula {
                id: "alon_cubic",
                applicability: Applicability::CubicTriangleFree,
                shape: linear(rat(5, 8), int(0), int(0)),
                refuted: false,
                tightness: Some("tight on disjoint unions of cubes"),
            },
            BoundFormula {
                id: "alon_degree",
                applicability: Applicability::Connected,
                shape: Shape::IndependenceDegree,
                refuted: false,
                tightness: None,
            },
            BoundFormula {
                id: "salavatipour_nm",
                applicability: Applicability::TriangleFreePlanar,
                shape: linear(rat(29, 32), rat(-6, 32), int(0)),
                refuted: false,
                tightness: None,
            },
            BoundFormula {
                id: "salavatipour_n",
                applicability: Applicability::TriangleFreePlanar,
                shape: linear(rat(17, 32), int(0), rat(24, 32)),
                refuted: false,
                tightness: None,
            },
            BoundFormula {
                id: "main",
                applicability: Applicability::TriangleFreePlanar,
                shape: Shape::MaxLinear(vec![
                    (rat(38, 44), rat(-7, 44), int(0)),
                    (int(1), rat(-1, 4), int(0)),
                ]),
                refuted: false,
                tightness: Some("5n/8 upper bound for the class"),
            },
            BoundFormula {
                id: "comain",
                applicability: Applicability::TriangleFreePlanar,
                shape: linear(rat(6, 11), int(0), rat(7, 11)),
                refuted: false,
                tightness: Some("5n/8 upper bound for the class"),
            },
            BoundFormula {
                id: "kowalik_nm",
                applicability: Applicability::TriangleFreePlanar,
                shape: linear(rat(119, 128), rat(-24, 128), rat(-24, 128)),
                refuted: true,
                tightness: Some("exceeded by disjoint unions of cubes; see the refutation report"),
            },
            BoundFormula {
                id: "bmain",
                applicability: Applicability::PlanarGirth(5),
                shape: linear(int(1), rat(-5, 23), int(0)),
                refuted: false,
                tightness: Some("7n/10 upper bound for the class"),
            },
            BoundFormula {
                id: "bcomain",
                applicability: Applicability::PlanarGirth(5),
                shape: linear(rat(44, 69), int(0), rat(50, 69)),
                refuted: false,
                tightness: Some("7n/10 upper bound for the class"),
            },
            BoundFormula {
                id: "bcomain_girth",
                applicability: Applicability::PlanarGirthParam,
                shape: Shape::GirthScaled,
                refuted: false,
                tightness: None,
            },
            BoundFormula {
                id: "girth56_half",
                applicability: Applicability::PlanarGirth(5),
                shape: linear(rat(1, 2), int(0), int(0)),
                refuted: false,
                tightness: Some("7n/10 + 2 upper bound for girth 5 and 6"),
            },
            BoundFormula {
                id: "girth7_twothirds",
                applicability: Applicability::PlanarGirth(7),
                shape: linear(rat(2, 3), int(0), int(0)),
                refuted: false,
                tightness: Some("5n/6 + 1 upper bound for the class"),
            },
            BoundFormula {
                id: "girth6_n",
                applicability: Applicability::PlanarGirth(6),
                shape: linear(rat(31, 46), int(0), rat(30, 46)),
                refuted: false,
                tightness: Some("23n/30 upper bound for the class"),
            },
            BoundFormula {
                id: "girth7_n",
                applicability: Applicability::PlanarGirth(7),
                shape: linear(rat(16, 23), int(0), rat(14, 23)),
                refuted: false,
                tightness: Some("17n/21 upper bound for the class"),
            },
        ]
    })
}

pub fn formula(id: &str) -> Result<&'static BoundFormula, BoundsError> {
    formula_catalog()
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| BoundsError::UnknownFormula(id.to_string()))
}

fn require<T: Copy>(
    value: Option<T>,
    formula: &str,
    input: &'static str,
) -> Result<T, BoundsError> {
    value.ok_or(BoundsError::MissingInput {
        formula: formula.to_string(),
        input,
    })
}

/// Evaluate a catalog formula exactly on the given inputs.
pub fn eval_formula(id: &str, inputs: &FormulaInputs) -> Result<Rational, BoundsError> {
    let f = formula(id)?;
    let n = int(i64::try_from(inputs.n).expect("graph order fits in i64"));
    let m_of = |m: u64| int(i64::try_from(m).expect("graph size fits in i64"));
    match &f.shape {
        Shape::Linear { cn, cm, c0 } => {
            let m_term = if cm.is_zero() {
                int(0)
            } else {
                *cm * m_of(require(inputs.m, id, "m")?)
            };
            Ok(*cn * n + m_term + *c0)
        }
        Shape::MaxLinear(pieces) => {
            let m = m_of(require(inputs.m, id, "m")?);
            Ok(pieces
                .iter()
                .map(|(cn, cm, c0)| *cn * n + *cm * m + *c0)
                .max()
                .expect("max formula has at least one piece"))
        }
        Shape::IndependenceDegree => {
            let alpha = require(inputs.alpha, id, "alpha")?;
            let delta = require(inputs.max_degree, id, "max_degree")?;
            if delta < 2 {
                return Err(BoundsError::DegreeOutOfRange {
                    formula: id.to_string(),
                    delta,
                });
            }
            let alpha = int(i64::try_from(alpha).expect("independence number fits in i64"));
            let dm1 = int(delta as i64 - 1);
            Ok(alpha + (n - alpha) / (dm1 * dm1))
        }
        Shape::GirthScaled => {
            let g = require(inputs.girth, id, "girth")?;
            if g < 5 {
                return Err(BoundsError::GirthOutOfRange {
                    formula: id.to_string(),
                    girth: g,
                });
            }
            let g = int(g as i64);
            Ok(n - (int(5) * n - int(10)) * g / (int(23) * (g - int(2))))
        }
    }
}

/// Substitute the planar edge bound m = (g/(g−2))(n−2) into a formula that
/// is linear and decreasing in m, producing the corollary bound in n alone.
/// For a max-of-linear formula the asymptotically dominant piece is used
/// (largest n coefficient after substitution, then largest constant).
pub fn derive_corollary(base: &str, g: u64) -> Result<LinearExpr, BoundsError> {
    let f = formula(base)?;
    let min_girth = match f.applicability {
        Applicability::TriangleFreePlanar => Some(4),
        Applicability::PlanarGirth(h) => Some(h),
        _ => None,
    };
    if let Some(h) = min_girth {
        if g < h {
            return Err(BoundsError::GirthOutOfRange {
                formula: base.to_string(),
                girth: g,
            });
        }
    }
    if g < 3 {
        return Err(BoundsError::GirthOutOfRange {
            formula: base.to_string(),
            girth: g,
        });
    }
    let q = int(g as i64) / int(g as i64 - 2);
    let substitute = |cn: Rational, cm: Rational, c0: Rational| LinearExpr {
        n_coeff: cn + cm * q,
        constant: c0 - int(2) * cm * q,
    };
    match &f.shape {
        Shape::Linear { cn, cm, c0 } => {
            if cm.is_zero() || cm.is_positive() {
                return Err(BoundsError::NotDecreasingInM(base.to_string()));
            }
            Ok(substitute(*cn, *cm, *c0))
        }
        Shape::MaxLinear(pieces) => {
            let mut best: Option<LinearExpr> = None;
            for &(cn, cm, c0) in pieces {
                if cm.is_zero() || cm.is_positive() {
                    return Err(BoundsError::NotDecreasingInM(base.to_string()));
                }
                let e = substitute(cn, cm, c0);
                let better = match &best {
                    None => true,
                    Some(b) => {
                        e.n_coeff > b.n_coeff
                            || (e.n_coeff == b.n_coeff && e.constant > b.constant)
                    }
                };
                if better {
                    best = Some(e);
                }
            }
            Ok(best.expect("max formula has at least one piece"))
        }
        _ => Err(BoundsError::NotLinearInM(base.to_string())),
    }
}

/// Refutation report for the false published bound `kowalik_nm` on the
/// disjoint union of k cubes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KowalikReport {
    pub k: u64,
    /// Value of the refuted formula at n = 8k, m = 12k.
    pub claimed: Rational,
    /// True forest number 5k: the exact solver establishes 5 on one cube and
    /// the forest number is additive over components.
    pub actual: u64,
    /// claimed − actual.
    pub margin: Rational,
    pub violated: bool,
    /// Forest number of a single cube as recomputed by the exact solver.
    pub per_cube: u64,
}

/// Evaluate the refuted bound against the true forest number of k disjoint
/// cubes. The per-cube optimum is recomputed by brute force rather than
/// hard-coded.
pub fn kowalik_refutation(k: u64) -> KowalikReport {
    assert!(k >= 1, "the family needs at least one cube");
    let cube = crate::families::cube();
    let per_cube = crate::exact::forest_number_bruteforce(&cube).forest_number as u64;
    let claimed = eval_formula(
        "kowalik_nm",
        &FormulaInputs {
            n: 8 * k,
            m: Some(12 * k),
            ..FormulaInputs::default()
        },
    )
    .expect("refuted formula evaluates on n and m");
    let actual = per_cube * k;
    let margin = claimed - int(actual as i64);
    KowalikReport {
        k,
        claimed,
        actual,
        margin,
        violated: margin > int(0),
        per_cube,
    }
}
