//! The guide's chapters, pulled in verbatim so that `cargo test --doc -p
//! guide` compiles and runs every Rust code block in the book. mdBook
//! renders the same files, so the prose and the tested snippets cannot
//! drift apart.
//!
//! One module per chapter: when a block fails, the test name points at the
//! chapter it came from.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("src/linear-algebra.md")]
pub mod linear_algebra {}

#[doc = include_str!("src/rational-geometry.md")]
pub mod rational_geometry {}

#[doc = include_str!("src/rational-measure.md")]
pub mod rational_measure {}

#[doc = include_str!("src/point-orbits.md")]
pub mod point_orbits {}

#[doc = include_str!("src/density.md")]
pub mod density {}

#[doc = include_str!("src/subspace-orbits.md")]
pub mod subspace_orbits {}

#[doc = include_str!("src/cli.md")]
pub mod cli {}
