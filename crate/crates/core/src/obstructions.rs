//! Cosmetic surgery obstructions and the per-knot invariant report.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::diagram::PdCode;
use crate::families::{generate, is_trivial_parameters, FamilyError, FamilySpec};
use crate::invariants::{
    alexander, conway_from_alexander, finite_type_from, jones_with, InvariantError, Limits,
};
use crate::poly::{ExtendedRational, LaurentPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("inconsistent invariants for {name}: {detail}")]
    Inconsistent { name: String, detail: String },
}

impl AnalysisError {
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, AnalysisError::Invariant(InvariantError::ResourceCap { .. }))
    }
}

/// `|7 a2^2 - a2 - 10 a4| / |4 v3|`, or infinity when `v3 = 0`.
pub fn big_o_invariant(a2: i64, a4: i64, v3: &Rational) -> ExtendedRational {
    if v3.is_zero() {
        return ExtendedRational::Infinity;
    }
    let a2 = BigInt::from(a2);
    let num = BigInt::from(7) * &a2 * &a2 - &a2 - BigInt::from(10) * a4;
    let value = Rational::from_integer(num.abs()) / (v3.abs() * BigInt::from(4));
    ExtendedRational::Finite(value)
}

/// The obstructions only ever rule surgeries out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Obstructed,
    Inconclusive,
}

impl Verdict {
    pub fn is_obstructed(self) -> bool {
        self == Verdict::Obstructed
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Obstructed => "OBSTRUCTED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// No chirally cosmetic surgeries when `O(K) <= 2`.
pub fn chirally_cosmetic_verdict(big_o: &ExtendedRational) -> Verdict {
    if *big_o <= ExtendedRational::Finite(Rational::from_integer(2.into())) {
        Verdict::Obstructed
    } else {
        Verdict::Inconclusive
    }
}

/// No purely cosmetic surgeries when `v2 != 0` or `v3 != 0`.
pub fn purely_cosmetic_verdict(v2: &Rational, v3: &Rational) -> Verdict {
    if !v2.is_zero() || !v3.is_zero() {
        Verdict::Obstructed
    } else {
        Verdict::Inconclusive
    }
}

/// Where a report's diagram came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Family(FamilySpec),
    Pd(PdCode),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Family(spec) => spec.fmt(f),
            Source::Pd(pd) => pd.fmt(f),
        }
    }
}

impl Serialize for Source {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn rational_str<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// Everything computed for one knot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub name: String,
    pub source: Source,
    pub a2: i64,
    pub a4: i64,
    #[serde(serialize_with = "rational_str")]
    pub v2: Rational,
    #[serde(serialize_with = "rational_str")]
    pub v3: Rational,
    #[serde(serialize_with = "rational_str")]
    pub w3: Rational,
    pub jones: LaurentPoly,
    pub alexander: LaurentPoly,
    pub conway: LaurentPoly,
    pub big_o: ExtendedRational,
    pub chirally_obstructed: bool,
    pub purely_obstructed: bool,
    /// Known for family inputs only.
    pub is_unknot_parameters: Option<bool>,
    /// For the two twist families: whether `v3 = 0` exactly at the unknot
    /// parameters.
    pub triviality_consistent: Option<bool>,
}

impl InvariantReport {
    pub fn chirally_verdict(&self) -> Verdict {
        chirally_cosmetic_verdict(&self.big_o)
    }

    pub fn purely_verdict(&self) -> Verdict {
        purely_cosmetic_verdict(&self.v2, &self.v3)
    }

    /// `(r, n)` for the twist families.
    pub fn family_parameters(&self) -> Option<(i64, i64)> {
        match &self.source {
            Source::Family(spec) => spec.twist_family().map(|(_, r, n)| (r, n)),
            Source::Pd(_) => None,
        }
    }
}

/// Full report for a knot diagram.
pub fn analyze(pd: &PdCode, label: &str) -> Result<InvariantReport, AnalysisError> {
    analyze_with(pd, label, &Limits::from_env())
}

pub fn analyze_with(pd: &PdCode, label: &str, limits: &Limits) -> Result<InvariantReport, AnalysisError> {
    build_report(pd, label, Source::Pd(pd.canonical()), limits)
}

/// Report for a family member, with the unknot-parameter bookkeeping.
pub fn analyze_family(spec: &FamilySpec) -> Result<InvariantReport, AnalysisError> {
    analyze_family_with(spec, &Limits::from_env())
}

pub fn analyze_family_with(spec: &FamilySpec, limits: &Limits) -> Result<InvariantReport, AnalysisError> {
    let pd = generate(spec)?;
    let mut report = build_report(&pd, &spec.to_string(), Source::Family(*spec), limits)?;
    match *spec {
        FamilySpec::KinoshitaTerasaka { r, n } | FamilySpec::Conway { r, n } => {
            let trivial = is_trivial_parameters(r, n);
            report.is_unknot_parameters = Some(trivial);
            report.triviality_consistent = Some(report.v3.is_zero() == trivial);
        }
        FamilySpec::Torus2 { k } => report.is_unknot_parameters = Some(k.abs() == 1),
        FamilySpec::Pretzel4 { .. } => {}
    }
    Ok(report)
}

fn build_report(pd: &PdCode, label: &str, source: Source, limits: &Limits) -> Result<InvariantReport, AnalysisError> {
    let components = pd.component_count().map_err(InvariantError::from)?;
    if components != 1 {
        return Err(InvariantError::NotAKnot { components }.into());
    }
    let jones = jones_with(pd, limits)?;
    let alexander = alexander(pd)?;
    let conway = conway_from_alexander(&alexander)?;
    let ft = finite_type_from(&jones, &conway);
    let inconsistent = |detail: String| AnalysisError::Inconsistent { name: label.to_string(), detail };
    if ft.w3 != -(&ft.v3 * BigInt::from(2)) {
        return Err(inconsistent(format!("w3 = {} but v3 = {}", ft.w3, ft.v3)));
    }
    if !jones.eval_at_one().is_one() {
        return Err(inconsistent(format!("V(1) = {}", jones.eval_at_one())));
    }
    let big_o = big_o_invariant(conway.a2, conway.a4, &ft.v3);
    Ok(InvariantReport {
        name: label.to_string(),
        source,
        a2: conway.a2,
        a4: conway.a4,
        chirally_obstructed: chirally_cosmetic_verdict(&big_o).is_obstructed(),
        purely_obstructed: purely_cosmetic_verdict(&ft.v2, &ft.v3).is_obstructed(),
        v2: ft.v2,
        v3: ft.v3,
        w3: ft.w3,
        jones,
        alexander,
        conway: conway.full,
        big_o,
        is_unknot_parameters: None,
        triviality_consistent: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn big_o_examples() {
        assert_eq!(big_o_invariant(0, 0, &q(-1, 2)), ExtendedRational::Finite(q(0, 1)));
        assert_eq!(big_o_invariant(0, 0, &q(0, 1)), ExtendedRational::Infinity);
        // |7 - 1 - 0| / |4| by hand
        assert_eq!(big_o_invariant(1, 0, &q(1, 1)), ExtendedRational::Finite(q(3, 2)));
        // trefoil: a2 = 1, a4 = 0, v3 = 1 in magnitude
        assert_eq!(big_o_invariant(1, 0, &q(-1, 1)), ExtendedRational::Finite(q(3, 2)));
    }

    #[test]
    fn verdicts() {
        assert_eq!(chirally_cosmetic_verdict(&ExtendedRational::Finite(q(0, 1))), Verdict::Obstructed);
        assert_eq!(chirally_cosmetic_verdict(&ExtendedRational::Infinity), Verdict::Inconclusive);
        assert_eq!(chirally_cosmetic_verdict(&ExtendedRational::Finite(q(2, 1))), Verdict::Obstructed);
        assert_eq!(chirally_cosmetic_verdict(&ExtendedRational::Finite(q(201, 100))), Verdict::Inconclusive);
        assert_eq!(purely_cosmetic_verdict(&q(0, 1), &q(-1, 2)), Verdict::Obstructed);
        assert_eq!(purely_cosmetic_verdict(&q(0, 1), &q(0, 1)), Verdict::Inconclusive);
        assert_eq!(purely_cosmetic_verdict(&q(1, 1), &q(0, 1)), Verdict::Obstructed);
        assert_eq!(Verdict::Obstructed.to_string(), "OBSTRUCTED");
    }

    #[test]
    fn conway_2_1_report() {
        let r = analyze_family(&FamilySpec::Conway { r: 2, n: 1 }).unwrap();
        assert_eq!((r.a2, r.a4), (0, 0));
        assert_eq!(r.v3, q(-1, 2));
        assert_eq!(r.big_o, ExtendedRational::Finite(q(0, 1)));
        assert!(r.chirally_obstructed && r.purely_obstructed);
        assert_eq!(r.is_unknot_parameters, Some(false));
        assert_eq!(r.triviality_consistent, Some(true));
    }

    #[test]
    fn unknot_report() {
        let r = analyze(&PdCode::unknot(), "unknot").unwrap();
        assert_eq!((r.a2, r.a4), (0, 0));
        assert!(r.v2.is_zero() && r.v3.is_zero() && r.w3.is_zero());
        assert!(r.jones.is_one() && r.alexander.is_one() && r.conway.is_one());
        assert_eq!(r.big_o, ExtendedRational::Infinity);
        assert_eq!(r.chirally_verdict(), Verdict::Inconclusive);
        assert_eq!(r.purely_verdict(), Verdict::Inconclusive);
        assert_eq!(r.is_unknot_parameters, None);
    }

    #[test]
    fn kt_5_2_report() {
        let r = analyze_family(&FamilySpec::KinoshitaTerasaka { r: 5, n: 2 }).unwrap();
        assert_eq!(r.v3, q(-3, 1));
        assert_eq!(r.big_o, ExtendedRational::Finite(q(0, 1)));
        assert_eq!(r.chirally_verdict(), Verdict::Obstructed);
    }

    #[test]
    fn links_are_rejected() {
        let hopf = crate::diagram::parse_pd_line("PD[X(4,1,3,2), X(2,3,1,4)]").unwrap().pd;
        assert!(analyze(&hopf, "hopf").is_err());
    }
}
