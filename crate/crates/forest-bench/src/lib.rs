//! Benchmark-only crate. The measured code lives in the `forest` crate;
//! the suites are in the benches directory: `solver` times the exact
//! search, `reduce` times the reduction engine and certificate checks.
