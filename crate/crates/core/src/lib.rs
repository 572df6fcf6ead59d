//! Exact knot invariants from planar diagrams.
//!
//! `knotinv` reads knots as PD codes or builds them from parametrized
//! families, and computes the Kauffman bracket, Jones, Alexander and Conway
//! polynomials and the finite-type invariants `v2`, `v3`, `w3` with exact
//! integer and rational arithmetic. On top of those it evaluates the `O(K)`
//! cosmetic surgery obstruction for the Kinoshita-Terasaka and Conway
//! families.
//!
//! ```
//! use knotinv::{analyze_family, FamilySpec};
//!
//! let report = analyze_family(&"conway:2,-1".parse::<FamilySpec>()?)?;
//! assert_eq!(report.v3.to_string(), "1/2");
//! assert!(report.chirally_obstructed);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod diagram;
pub mod families;
pub mod invariants;
pub mod obstructions;
pub mod poly;
pub mod verify;

pub use diagram::{parse_pd_line, Crossing, PdCode, Sign, SkeinTriple};
pub use families::{generate, FamilySpec, TwistFamily};
pub use invariants::{alexander, conway, finite_type, jones, kauffman_bracket, Limits};
pub use obstructions::{analyze, analyze_family, InvariantReport, Verdict};
pub use poly::{ExtendedRational, LaurentPoly, Rational};
