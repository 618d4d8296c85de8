//! Maximum induced forests (equivalently, minimum feedback vertex sets) in
//! sparse planar graphs.
//!
//! The crate is organized around one pipeline:
//!
//! * [`graph`]: simple undirected graphs with optional plane embeddings
//!   (rotation systems), surgery primitives, girth/connectivity queries,
//!   face tracing, cycle sidedness, and the counting audit.
//! * [`families`]: generators for the fixture graphs used throughout the
//!   test suite (platonic solids, grids, chains, named fixtures).
//! * [`bounds`]: exact rational bound algebra, covering the constraint
//!   polygons for the two graph classes, accounting triples, a catalog of
//!   lower-bound formulas, corollary derivation, and the refutation report
//!   for a published-but-false bound.
//! * [`exact`]: exact forest-number solvers, with subset enumeration for
//!   tiny graphs and a cycle-branching branch-and-bound for mid-size
//!   fixtures.
//! * [`reducer`]: the reduction engine, built from structure-matching rules
//!   that shrink a graph while accounting for guaranteed forest vertices,
//!   plus certificate construction and verification.
//!
//! All bound arithmetic is exact (`num-rational`); no floating point is used
//! anywhere in the decision paths.

pub mod bounds;
pub mod exact;
pub mod families;
pub mod graph;
pub mod reducer;
