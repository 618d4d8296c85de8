//! Generators for the graph families used in tests, benchmarks, and the
//! command line.
//!
//! Every embedded family is produced from a straight-line drawing: the
//! rotation at a vertex lists its neighbors in clockwise order (descending
//! angle), which makes bounded faces close up counterclockwise with
//! positive shoelace area. The unique negative-area face of each component
//! is its outer face. The linked-cube ring is the one family whose wrap
//! edge cannot be drawn with straight lines, so its rotations are spelled
//! out directly and validated through the Euler check at construction.

use crate::graph::Graph;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family {family:?} needs a parameter of at least {min}, got {got}")]
    CountTooSmall {
        family: &'static str,
        min: u32,
        got: u32,
    },
    #[error("unrecognized family spec {0:?}")]
    Unrecognized(String),
}

/// A parsed family description, e.g. `cubes:3` or `grid:4x5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// The cube graph, drawn as two nested squares.
    Cube,
    /// Disjoint copies of the cube.
    CubesDisjoint(u32),
    /// Disjoint copies of the cube with one square edge removed.
    CubeMinusEdgeDisjoint(u32),
    /// A ring of cubes joined by single edges, 2-edge-connected.
    CubesLinked(u32),
    /// The dodecahedron, smallest cubic planar graph of girth 5.
    Dodecahedron,
    /// Disjoint copies of the dodecahedron.
    DodecahedraDisjoint(u32),
    /// Maximal outerplanar strip of `t` stacked quadrilaterals, each cut
    /// by a diagonal; forest number exactly ceil(2n/3).
    HosonoChain(u32),
    /// Plane cubic-and-quadratic fixture of girth 6 on 30 vertices whose
    /// 14 faces are all hexagons.
    Girth6Fixture,
    /// Plane fixture of girth 7 on 42 vertices whose 16 faces are all
    /// heptagons.
    Girth7Fixture,
    /// The p-by-q grid, a quadrangulation slab of girth 4.
    GridQuadrangulation(u32, u32),
    /// A single cycle.
    Cycle(u32),
    /// A single path.
    Path(u32),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cube => write!(f, "cube"),
            FamilySpec::CubesDisjoint(k) => write!(f, "cubes:{k}"),
            FamilySpec::CubeMinusEdgeDisjoint(k) => write!(f, "cube-minus-edge:{k}"),
            FamilySpec::CubesLinked(k) => write!(f, "cubes-linked:{k}"),
            FamilySpec::Dodecahedron => write!(f, "dodecahedron"),
            FamilySpec::DodecahedraDisjoint(k) => write!(f, "dodecahedra:{k}"),
            FamilySpec::HosonoChain(t) => write!(f, "hosono:{t}"),
            FamilySpec::Girth6Fixture => write!(f, "girth6"),
            FamilySpec::Girth7Fixture => write!(f, "girth7"),
            FamilySpec::GridQuadrangulation(p, q) => write!(f, "grid:{p}x{q}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Path(n) => write!(f, "path:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let unrecognized = || FamilyError::Unrecognized(s.to_string());
        match s {
            "cube" => return Ok(FamilySpec::Cube),
            "dodecahedron" => return Ok(FamilySpec::Dodecahedron),
            "girth6" => return Ok(FamilySpec::Girth6Fixture),
            "girth7" => return Ok(FamilySpec::Girth7Fixture),
            _ => {}
        }
        let (name, arg) = s.split_once(':').ok_or_else(unrecognized)?;
        let count = |arg: &str| arg.parse::<u32>().map_err(|_| unrecognized());
        Ok(match name {
            "cubes" => FamilySpec::CubesDisjoint(count(arg)?),
            "cube-minus-edge" => FamilySpec::CubeMinusEdgeDisjoint(count(arg)?),
            "cubes-linked" => FamilySpec::CubesLinked(count(arg)?),
            "dodecahedra" => FamilySpec::DodecahedraDisjoint(count(arg)?),
            "hosono" => FamilySpec::HosonoChain(count(arg)?),
            "grid" => {
                let (p, q) = arg.split_once('x').ok_or_else(unrecognized)?;
                FamilySpec::GridQuadrangulation(count(p)?, count(q)?)
            }
            "cycle" => FamilySpec::Cycle(count(arg)?),
            "path" => FamilySpec::Path(count(arg)?),
            _ => return Err(unrecognized()),
        })
    }
}

/// Build the graph a spec describes.
pub fn make(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    let at_least = |family, min, got| {
        if got < min {
            Err(FamilyError::CountTooSmall { family, min, got })
        } else {
            Ok(got as usize)
        }
    };
    Ok(match *spec {
        FamilySpec::Cube => embed_from_coordinates(&CUBE_COORDS, &CUBE_EDGES),
        FamilySpec::CubesDisjoint(k) => {
            let k = at_least("cubes", 1, k)?;
            disjoint_copies(&CUBE_COORDS, &CUBE_EDGES, k, 6.0)
        }
        FamilySpec::CubeMinusEdgeDisjoint(k) => {
            let k = at_least("cube-minus-edge", 1, k)?;
            let edges: Vec<(usize, usize)> = CUBE_EDGES[1..].to_vec();
            disjoint_copies(&CUBE_COORDS, &edges, k, 6.0)
        }
        FamilySpec::CubesLinked(k) => {
            at_least("cubes-linked", 2, k)?;
            cubes_linked(k as usize)
        }
        FamilySpec::Dodecahedron => embed_from_coordinates(&DODECAHEDRON_COORDS, &DODECAHEDRON_EDGES),
        FamilySpec::DodecahedraDisjoint(k) => {
            let k = at_least("dodecahedra", 1, k)?;
            disjoint_copies(&DODECAHEDRON_COORDS, &DODECAHEDRON_EDGES, k, 6.0)
        }
        FamilySpec::HosonoChain(t) => hosono_chain(t as usize),
        FamilySpec::Girth6Fixture => embed_from_coordinates(&GIRTH6_COORDS, &GIRTH6_EDGES),
        FamilySpec::Girth7Fixture => embed_from_coordinates(&GIRTH7_COORDS, &GIRTH7_EDGES),
        FamilySpec::GridQuadrangulation(p, q) => {
            let p = at_least("grid", 1, p)?;
            let q = at_least("grid", 1, q)?;
            grid(p, q)
        }
        FamilySpec::Cycle(n) => {
            let n = at_least("cycle", 3, n)?;
            let coords: Vec<(f64, f64)> = (0..n)
                .map(|i| {
                    let theta = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                    (theta.cos(), theta.sin())
                })
                .collect();
            let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            embed_from_coordinates(&coords, &edges)
        }
        FamilySpec::Path(n) => {
            let n = at_least("path", 1, n)?;
            let coords: Vec<(f64, f64)> = (0..n).map(|i| (i as f64, 0.0)).collect();
            let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
            embed_from_coordinates(&coords, &edges)
        }
    })
}

/// The cube graph with its standard nested-squares drawing.
pub fn cube() -> Graph {
    make(&FamilySpec::Cube).expect("the cube has no parameters")
}

/// Assemble an embedded graph from a straight-line drawing. Rotations are
/// clockwise, the outer face of each component is the one traced with
/// negative shoelace area.
/// Embed a straight-line drawing: rotations follow the clockwise order of
/// the neighbors around each coordinate, and the outer face is the one
/// with negative signed area. Panics when the drawing is not plane.
pub(crate) fn embed_from_coordinates(coords: &[(f64, f64)], edges: &[(usize, usize)]) -> Graph {
    let n = coords.len();
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        rot[u].push(v);
        rot[v].push(u);
    }
    for (v, list) in rot.iter_mut().enumerate() {
        let (x, y) = coords[v];
        let angle = |u: usize| {
            let (ux, uy) = coords[u];
            (uy - y).atan2(ux - x)
        };
        list.sort_by(|&a, &b| angle(b).total_cmp(&angle(a)).then(a.cmp(&b)));
    }
    let unplaced = Graph::from_rotations(rot.clone()).expect("drawing must be plane");
    let faces = unplaced
        .trace_faces()
        .expect("construction validated the embedding");
    let mut walks: Vec<Vec<usize>> = Vec::new();
    let mut outer_seen = std::collections::HashSet::new();
    for face in &faces.faces {
        let area: f64 = face
            .darts
            .iter()
            .map(|&(u, v)| coords[u].0 * coords[v].1 - coords[v].0 * coords[u].1)
            .sum();
        if area < -1e-9 {
            assert!(
                outer_seen.insert(face.component),
                "a plane component has one unbounded face"
            );
            walks.push(face.darts.iter().map(|&(u, _)| u).collect());
        }
    }
    Graph::from_rotations_outer(rot, &walks).expect("walks come from traced faces")
}

fn disjoint_copies(
    coords: &[(f64, f64)],
    edges: &[(usize, usize)],
    k: usize,
    dx: f64,
) -> Graph {
    let n = coords.len();
    let mut all_coords = Vec::with_capacity(n * k);
    let mut all_edges = Vec::with_capacity(edges.len() * k);
    for i in 0..k {
        let shift = dx * i as f64;
        all_coords.extend(coords.iter().map(|&(x, y)| (x + shift, y)));
        all_edges.extend(edges.iter().map(|&(u, v)| (u + n * i, v + n * i)));
    }
    embed_from_coordinates(&all_coords, &all_edges)
}

/// Ring of `k` cubes: copy `i` gains the edge (8i+1, 8((i+1) mod k)). The
/// local rotations are the clockwise cube rotations with the outgoing link
/// appended after the outer square at vertex 1 and the incoming link
/// prepended before it at vertex 0.
fn cubes_linked(k: usize) -> Graph {
    const LOCAL: [&[usize]; 8] = [
        &[3, 4, 1],
        &[0, 5, 2],
        &[3, 1, 6],
        &[2, 7, 0],
        &[7, 5, 0],
        &[4, 6, 1],
        &[7, 2, 5],
        &[3, 6, 4],
    ];
    let mut rot: Vec<Vec<usize>> = Vec::with_capacity(8 * k);
    for i in 0..k {
        for (j, local) in LOCAL.iter().enumerate() {
            let mut list: Vec<usize> = local.iter().map(|&u| u + 8 * i).collect();
            match j {
                0 => list.insert(0, 8 * ((i + k - 1) % k) + 1),
                1 => list.push(8 * ((i + 1) % k)),
                _ => {}
            }
            rot.push(list);
        }
    }
    Graph::from_rotations(rot).expect("the ring of cubes embeds in the plane")
}

/// Strip of `t` quadrilaterals between rows u (top, even labels) and v
/// (bottom, odd labels), each quad cut by the diagonal u_i v_{i+1}.
fn hosono_chain(t: usize) -> Graph {
    let mut coords = Vec::with_capacity(2 * (t + 1));
    let mut edges = Vec::with_capacity(4 * t + 1);
    for i in 0..=t {
        coords.push((i as f64, 1.0));
        coords.push((i as f64, 0.0));
        edges.push((2 * i, 2 * i + 1));
        if i < t {
            edges.push((2 * i, 2 * i + 2));
            edges.push((2 * i + 1, 2 * i + 3));
            edges.push((2 * i, 2 * i + 3));
        }
    }
    embed_from_coordinates(&coords, &edges)
}

fn grid(p: usize, q: usize) -> Graph {
    let mut coords = Vec::with_capacity(p * q);
    let mut edges = Vec::new();
    for i in 0..p {
        for j in 0..q {
            coords.push((j as f64, -(i as f64)));
            if j + 1 < q {
                edges.push((i * q + j, i * q + j + 1));
            }
            if i + 1 < p {
                edges.push((i * q + j, (i + 1) * q + j));
            }
        }
    }
    embed_from_coordinates(&coords, &edges)
}

const CUBE_COORDS: [(f64, f64); 8] = [
    (-2.0, -2.0),
    (2.0, -2.0),
    (2.0, 2.0),
    (-2.0, 2.0),
    (-1.0, -1.0),
    (1.0, -1.0),
    (1.0, 1.0),
    (-1.0, 1.0),
];

/// Edge (0, 1) comes first so the cut family can drop it by slicing.
const CUBE_EDGES: [(usize, usize); 12] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 0),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 4),
    (0, 4),
    (1, 5),
    (2, 6),
    (3, 7),
];

const DODECAHEDRON_COORDS: [(f64, f64); 20] = [
    (1.0, 0.0),
    (0.3090169943749475, 0.9510565162951535),
    (-0.8090169943749473, 0.5877852522924731),
    (-0.8090169943749475, -0.5877852522924731),
    (0.30901699437494745, -0.9510565162951536),
    (1.4543870332530722, 1.056674031837904),
    (1.8443253811383944, 1.3399808248767398),
    (-0.7044696092807624, 2.1681345189236856),
    (-0.55552641390555, 1.709734498543117),
    (-2.279711543715264, 0.0),
    (-0.7044696092807627, -2.1681345189236856),
    (1.8443253811383948, -1.3399808248767402),
    (0.41694269437650827, 1.2832176664280721),
    (-1.091570145238658, 0.7930721328168736),
    (-1.7977212386950445, 0.0),
    (-1.091570145238658, -0.7930721328168735),
    (-0.5555264139055502, -1.709734498543117),
    (0.4169426943765081, -1.2832176664280721),
    (1.4543870332530724, -1.0566740318379042),
    (1.3492549017242996, 0.0),
];

const DODECAHEDRON_EDGES: [(usize, usize); 30] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (4, 0),
    (4, 3),
    (5, 6),
    (6, 7),
    (7, 8),
    (7, 9),
    (9, 10),
    (10, 11),
    (11, 6),
    (5, 12),
    (12, 8),
    (8, 13),
    (13, 14),
    (14, 15),
    (15, 16),
    (16, 17),
    (17, 18),
    (18, 19),
    (19, 5),
    (19, 0),
    (1, 12),
    (13, 2),
    (14, 9),
    (15, 3),
    (16, 10),
    (17, 4),
    (18, 11),
];

const GIRTH6_COORDS: [(f64, f64); 30] = [
    (1.0, 0.0),
    (0.5, 0.8660254037844386),
    (-0.5, 0.8660254037844386),
    (-1.0, 0.0),
    (-0.4999999999999999, -0.8660254037844386),
    (0.5, -0.8660254037844387),
    (1.4753917062990187, 0.0),
    (1.62444401986034, 0.9378731921498451),
    (2.01870803531234, 1.16550162760284),
    (1.62444401986034, -0.9378731921498452),
    (2.01870803531234, -1.16550162760284),
    (0.0, -1.8757463842996902),
    (0.0, -2.3310032552056805),
    (0.7376958531495095, -1.2777266981878197),
    (-0.7376958531495095, -1.2777266981878197),
    (-2.01870803531234, -1.16550162760284),
    (-1.62444401986034, -0.9378731921498451),
    (-1.62444401986034, 0.9378731921498452),
    (-2.01870803531234, 1.16550162760284),
    (-1.4753917062990187, 0.0),
    (-0.7376958531495094, 1.2777266981878195),
    (0.0, 2.33100325520568),
    (0.0, 1.8757463842996907),
    (0.7376958531495094, 1.2777266981878195),
    (0.0, 2.1033748197526854),
    (-1.82157602758634, -1.0516874098763425),
    (1.82157602758634, -1.0516874098763427),
    (0.6188479265747547, -1.0718760509861291),
    (-1.2376958531495093, 0.0),
    (0.6188479265747546, 1.0718760509861291),
];

const GIRTH6_EDGES: [(usize, usize); 42] = [
    (0, 5),
    (0, 1),
    (0, 6),
    (1, 2),
    (1, 29),
    (2, 3),
    (2, 20),
    (3, 4),
    (3, 28),
    (4, 5),
    (4, 14),
    (5, 27),
    (6, 7),
    (6, 9),
    (7, 8),
    (7, 23),
    (8, 10),
    (8, 21),
    (9, 13),
    (9, 26),
    (10, 12),
    (10, 26),
    (11, 14),
    (11, 12),
    (11, 13),
    (12, 15),
    (13, 27),
    (14, 16),
    (15, 18),
    (15, 25),
    (16, 19),
    (16, 25),
    (17, 18),
    (17, 20),
    (17, 19),
    (18, 21),
    (19, 28),
    (20, 22),
    (21, 24),
    (22, 23),
    (22, 24),
    (23, 29),
];

const GIRTH7_COORDS: [(f64, f64); 42] = [
    (2.0, 0.0),
    (1.247213513195398, 1.5634763997268373),
    (-0.44445845250279276, 1.9499888933014011),
    (-1.801548101210796, 0.8685760985796095),
    (-1.8024566839988228, -0.8666890459143738),
    (-0.44650023202190303, -1.9495223883824437),
    (1.245575560976225, -1.5647816211531764),
    (2.94, 0.0),
    (1.8334038643972352, 2.2983103075984506),
    (-0.6533539251791053, 2.8664836731530596),
    (-2.64827570877987, 1.2768068649120259),
    (-2.6496113254782694, -1.2740328974941295),
    (-0.6563553410721974, -2.8657979109221916),
    (1.8309960746350507, -2.3002289830951694),
    (3.370146118052537, 1.6204931577977892),
    (0.8348444858712378, 3.645122441826121),
    (-2.328916793857265, 2.9257528088995546),
    (-3.739503032689509, 0.0),
    (-2.331979357502764, -2.923312369158491),
    (0.8310268655193396, -3.6459946901057236),
    (3.3684472940068986, -1.6240214773800357),
    (4.223620723730235, 2.0308758861449157),
    (1.0462651612432865, 4.568233585886012),
    (-2.9187046762420463, 3.6666867736051882),
    (-4.686515644148477, 0.0),
    (-2.922542820591808, -3.66362830328838),
    (1.0414807454141806, -4.569326727186396),
    (4.221491680005189, -2.0352977370633947),
    (-2.6238107350496556, 3.2962197912523714),
    (3.796883420891386, 1.8256845219713524),
    (0.9405548235572622, 4.106678013856067),
    (-4.213009338418993, 0.0),
    (-2.627261089047286, -3.2934703362234354),
    (0.9362538054667601, -4.10766070864606),
    (3.794969487006044, -1.829659607221715),
    (2.4699999999999998, 0.0),
    (1.5403086887963167, 1.9308933536626438),
    (-0.548906188840949, 2.4082362832272306),
    (-2.224911904995333, 1.0726914817458177),
    (-2.226034004738546, -1.0703609717042517),
    (-0.5514277865470503, -2.4076601496523176),
    (1.5382858178056378, -1.932505302124173),
];

const GIRTH7_EDGES: [(usize, usize); 56] = [
    (23, 28),
    (28, 16),
    (9, 37),
    (37, 2),
    (22, 30),
    (30, 15),
    (8, 36),
    (36, 1),
    (21, 29),
    (29, 14),
    (7, 35),
    (35, 0),
    (20, 34),
    (34, 27),
    (6, 41),
    (41, 13),
    (19, 33),
    (33, 26),
    (5, 40),
    (40, 12),
    (18, 32),
    (32, 25),
    (4, 39),
    (39, 11),
    (17, 31),
    (31, 24),
    (3, 38),
    (38, 10),
    (23, 22),
    (22, 21),
    (21, 27),
    (27, 26),
    (26, 25),
    (25, 24),
    (24, 23),
    (17, 10),
    (10, 16),
    (16, 9),
    (9, 15),
    (2, 1),
    (15, 8),
    (8, 14),
    (14, 7),
    (1, 0),
    (0, 6),
    (6, 5),
    (5, 4),
    (4, 3),
    (3, 2),
    (17, 11),
    (11, 18),
    (18, 12),
    (12, 19),
    (19, 13),
    (13, 20),
    (20, 7),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{
        forest_number_bruteforce, forest_number_exact, max_independent_set, SolverConfig,
    };

    fn sorted_face_lengths(g: &Graph) -> Vec<usize> {
        let mut lengths: Vec<usize> = g
            .trace_faces()
            .unwrap()
            .faces
            .iter()
            .map(|f| f.len())
            .collect();
        lengths.sort();
        lengths
    }

    fn outer_lengths(g: &Graph) -> Vec<usize> {
        g.trace_faces()
            .unwrap()
            .faces
            .iter()
            .filter(|f| f.is_outer)
            .map(|f| f.len())
            .collect()
    }

    #[test]
    fn cube_structure() {
        let g = cube();
        assert_eq!((g.n(), g.m()), (8, 12));
        assert!(g.is_embedded());
        assert!(g.is_connected());
        assert!(g.is_two_edge_connected());
        assert_eq!(g.girth(), Some(4));
        assert_eq!(g.max_degree(), 3);
        assert_eq!(sorted_face_lengths(&g), vec![4; 6]);
        assert_eq!(outer_lengths(&g), vec![4]);
    }

    #[test]
    fn cube_solver_values() {
        let g = cube();
        let brute = forest_number_bruteforce(&g);
        assert_eq!(brute.forest_number, 5);
        assert_eq!(brute.witness, vec![0, 1, 2, 4, 6]);
        let exact = forest_number_exact(&g, &SolverConfig::default());
        assert_eq!(exact.forest_number, 5);
        assert_eq!(exact.decycling_number, 3);
        assert_eq!(exact.witness, brute.witness);
        let (alpha, mis) = max_independent_set(&g);
        assert_eq!(alpha, 4);
        assert_eq!(mis, vec![0, 2, 5, 7]);
        assert_eq!(g.dist(0, 6), Some(3));
    }

    #[test]
    fn cube_equatorial_hexagon_encloses_no_vertices() {
        // The only 6-cycle avoiding an antipodal pair bounds two quads, so
        // both missing vertices live on its outer side.
        let g = cube();
        let sides = g.cycle_sides(&[1, 2, 3, 7, 6, 5]).unwrap();
        assert!(sides.interior.is_empty());
        assert_eq!(sides.exterior, vec![0, 4]);
        assert!(!sides.is_separating());

        let outer_square = g.cycle_sides(&[0, 1, 2, 3]).unwrap();
        assert_eq!(outer_square.interior, vec![4, 5, 6, 7]);
        assert!(outer_square.exterior.is_empty());
        assert!(!outer_square.is_separating());
    }

    #[test]
    fn dodecahedron_structure() {
        let g = make(&FamilySpec::Dodecahedron).unwrap();
        assert_eq!((g.n(), g.m()), (20, 30));
        assert!(g.is_embedded());
        assert!(g.is_connected());
        assert!(g.is_two_edge_connected());
        assert_eq!(g.girth(), Some(5));
        assert_eq!(g.max_degree(), 3);
        assert_eq!(sorted_face_lengths(&g), vec![5; 12]);
    }

    #[test]
    fn dodecahedron_forest_number() {
        let g = make(&FamilySpec::Dodecahedron).unwrap();
        let r = forest_number_exact(&g, &SolverConfig::default());
        assert!(r.optimal);
        assert_eq!(r.forest_number, 14);
        assert_eq!(r.decycling_number, 6);
        assert!(g.is_induced_forest(&r.witness));
    }

    #[test]
    fn girth6_fixture_structure() {
        let g = make(&FamilySpec::Girth6Fixture).unwrap();
        assert_eq!((g.n(), g.m()), (30, 42));
        assert!(g.is_embedded());
        assert!(g.is_connected());
        assert!(g.is_two_edge_connected());
        assert_eq!(g.girth(), Some(6));
        assert_eq!(g.degree_counts(), [(2, 6), (3, 24)].into_iter().collect());
        assert_eq!(sorted_face_lengths(&g), vec![6; 14]);
    }

    #[test]
    fn girth7_fixture_structure() {
        let g = make(&FamilySpec::Girth7Fixture).unwrap();
        assert_eq!((g.n(), g.m()), (42, 56));
        assert!(g.is_embedded());
        assert!(g.is_connected());
        assert!(g.is_two_edge_connected());
        assert_eq!(g.girth(), Some(7));
        assert_eq!(g.degree_counts(), [(2, 14), (3, 28)].into_iter().collect());
        assert_eq!(sorted_face_lengths(&g), vec![7; 16]);
    }

    #[test]
    fn hosono_chain_values() {
        let g = make(&FamilySpec::HosonoChain(2)).unwrap();
        assert_eq!((g.n(), g.m()), (6, 9));
        assert_eq!(g.girth(), Some(3));
        assert_eq!(outer_lengths(&g), vec![6]);
        assert_eq!(forest_number_bruteforce(&g).forest_number, 4);

        let g = make(&FamilySpec::HosonoChain(5)).unwrap();
        assert_eq!((g.n(), g.m()), (12, 21));
        assert_eq!(forest_number_bruteforce(&g).forest_number, 8);

        let g = make(&FamilySpec::HosonoChain(0)).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(g.girth(), None);
    }

    #[test]
    fn disjoint_copy_families() {
        let g = make(&FamilySpec::CubesDisjoint(3)).unwrap();
        assert_eq!((g.n(), g.m()), (24, 36));
        assert_eq!(g.components().len(), 3);
        assert_eq!(g.girth(), Some(4));
        assert!(g.is_embedded());
        assert_eq!(forest_number_bruteforce(&g).forest_number, 15);

        let g = make(&FamilySpec::DodecahedraDisjoint(2)).unwrap();
        assert_eq!((g.n(), g.m()), (40, 60));
        assert_eq!(g.components().len(), 2);
        assert_eq!(g.girth(), Some(5));
        assert!(g.is_embedded());
    }

    #[test]
    fn cube_minus_edge_values() {
        let g = make(&FamilySpec::CubeMinusEdgeDisjoint(1)).unwrap();
        assert_eq!((g.n(), g.m()), (8, 11));
        assert_eq!(g.girth(), Some(4));
        assert!(g.is_embedded());
        let brute = forest_number_bruteforce(&g);
        assert_eq!(brute.forest_number, 6);
        assert_eq!(brute.witness, vec![0, 1, 2, 3, 4, 6]);

        let g = make(&FamilySpec::CubeMinusEdgeDisjoint(2)).unwrap();
        assert_eq!((g.n(), g.m()), (16, 22));
        assert_eq!(g.components().len(), 2);
    }

    #[test]
    fn linked_cubes_structure() {
        for k in [2u32, 3, 5] {
            let g = make(&FamilySpec::CubesLinked(k)).unwrap();
            let k = k as usize;
            assert_eq!((g.n(), g.m()), (8 * k, 13 * k));
            assert!(g.is_embedded());
            assert!(g.is_connected());
            assert!(g.is_two_edge_connected());
            assert_eq!(g.girth(), Some(4));
            assert_eq!(outer_lengths(&g), vec![4 * k]);
        }
    }

    #[test]
    fn grid_structure() {
        let g = make(&FamilySpec::GridQuadrangulation(3, 4)).unwrap();
        assert_eq!((g.n(), g.m()), (12, 17));
        assert_eq!(g.girth(), Some(4));
        assert!(g.is_embedded());
        assert!(g.is_connected());

        let g = make(&FamilySpec::GridQuadrangulation(1, 5)).unwrap();
        assert_eq!((g.n(), g.m()), (5, 4));
        assert_eq!(g.girth(), None);

        let g = make(&FamilySpec::GridQuadrangulation(2, 2)).unwrap();
        assert_eq!(g.girth(), Some(4));
        assert_eq!(sorted_face_lengths(&g), vec![4, 4]);
    }

    #[test]
    fn cycles_and_paths() {
        let g = make(&FamilySpec::Cycle(7)).unwrap();
        assert_eq!((g.n(), g.m()), (7, 7));
        assert_eq!(g.girth(), Some(7));
        assert_eq!(forest_number_bruteforce(&g).forest_number, 6);

        let g = make(&FamilySpec::Path(5)).unwrap();
        assert_eq!((g.n(), g.m()), (5, 4));
        assert_eq!(g.girth(), None);
        assert_eq!(forest_number_bruteforce(&g).forest_number, 5);
    }

    #[test]
    fn spec_strings_round_trip() {
        let specs = [
            FamilySpec::Cube,
            FamilySpec::CubesDisjoint(3),
            FamilySpec::CubeMinusEdgeDisjoint(2),
            FamilySpec::CubesLinked(4),
            FamilySpec::Dodecahedron,
            FamilySpec::DodecahedraDisjoint(2),
            FamilySpec::HosonoChain(5),
            FamilySpec::Girth6Fixture,
            FamilySpec::Girth7Fixture,
            FamilySpec::GridQuadrangulation(3, 4),
            FamilySpec::Cycle(9),
            FamilySpec::Path(6),
        ];
        for spec in specs {
            let text = spec.to_string();
            assert_eq!(text.parse::<FamilySpec>().unwrap(), spec);
        }
        assert_eq!("grid:3x4".parse::<FamilySpec>().unwrap(), FamilySpec::GridQuadrangulation(3, 4));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        for bad in ["cubes:0", "dodecahedra:0", "cube-minus-edge:0", "cubes-linked:1", "cycle:2", "path:0", "grid:0x2"] {
            let spec: FamilySpec = bad.parse().unwrap();
            assert!(matches!(
                make(&spec),
                Err(FamilyError::CountTooSmall { .. })
            ));
        }
        assert_eq!(
            "triangle".parse::<FamilySpec>(),
            Err(FamilyError::Unrecognized("triangle".to_string()))
        );
        assert_eq!(
            "grid:4".parse::<FamilySpec>(),
            Err(FamilyError::Unrecognized("grid:4".to_string()))
        );
    }
}
