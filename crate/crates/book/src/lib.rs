//! The guide in `book/`, one module per chapter, so that `cargo test` runs
//! every listing as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/diagrams.md")]
pub mod diagrams {}
#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}
#[doc = include_str!("../../../book/src/jones.md")]
pub mod jones {}
#[doc = include_str!("../../../book/src/alexander.md")]
pub mod alexander {}
#[doc = include_str!("../../../book/src/finite_type.md")]
pub mod finite_type {}
#[doc = include_str!("../../../book/src/families.md")]
pub mod families {}
#[doc = include_str!("../../../book/src/obstructions.md")]
pub mod obstructions {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
