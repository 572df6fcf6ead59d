//! Property suites over `(r, n)` grids of the twist families.
//!
//! Each suite turns a family-level identity into a list of cases. A failing
//! case carries a message naming the knots involved in `kind:r,n` syntax so it
//! can be rerun on its own.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

use crate::diagram::PdCode;
use crate::families::{
    generate, is_trivial_parameters, torus_recursion_triple, twist_region_skein_triple, FamilySpec, TwistFamily,
};
use crate::invariants::{
    a2_torus_closed_form, alexander, conway, conway_from_alexander, jones_with, v3_closed_form, v3_from_jones,
    w3_from_jones, w3_skein_step, hoste_check, InvariantError, Limits,
};
use crate::obstructions::{analyze_family_with, AnalysisError, Verdict};
use crate::poly::{ExtendedRational, LaurentPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// `v3` of both families against the closed form.
    LemmaV3,
    /// `lk(K', K'') = a2(K+) - a2(K-)` on clasp skein triples.
    Hoste,
    /// The `w3` crossing change formula on clasp skein triples.
    SkeinStep,
    /// Equal Jones polynomials for the mutant pair.
    Mutation,
    /// Invariants agree at `(r, n)` and `(-r-1, n)`.
    Symmetry,
    /// `n -> -n` mirrors: Jones inverts, `v3` negates, Conway agrees.
    Mirror,
    /// `v3 = 0` exactly at the unknot parameters, where Jones and Alexander are 1.
    Triviality,
    /// Trivial Alexander polynomial everywhere; `O = 0` and both verdicts
    /// obstructed at every nontrivial point.
    Obstruction,
    /// `a2` of `T(2, 2k+1)`, linking numbers of `T(2, 2k)` and the torus
    /// recursion triples.
    Torus,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::LemmaV3,
        Suite::Hoste,
        Suite::SkeinStep,
        Suite::Mutation,
        Suite::Symmetry,
        Suite::Mirror,
        Suite::Triviality,
        Suite::Obstruction,
        Suite::Torus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LemmaV3 => "lemma-v3",
            Suite::Hoste => "hoste",
            Suite::SkeinStep => "skein-step",
            Suite::Mutation => "mutation",
            Suite::Symmetry => "symmetry",
            Suite::Mirror => "mirror",
            Suite::Triviality => "triviality",
            Suite::Obstruction => "obstruction",
            Suite::Torus => "torus",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                format!("unknown suite `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// Parameter ranges for a suite run.
#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub r: RangeInclusive<i64>,
    pub n: RangeInclusive<i64>,
    /// Torus suite: `k` for `T(2, 2k+1)` and `T(2, 2k)`.
    pub k: RangeInclusive<i64>,
    pub limits: Limits,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { r: -5..=5, n: -3..=3, k: 0..=8, limits: Limits::from_env() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub case: String,
    pub passed: bool,
    /// Empty on success; otherwise the mismatch, naming the knots involved.
    pub detail: String,
}

impl CaseResult {
    fn check(case: String, failures: Vec<String>) -> Self {
        CaseResult { case, passed: failures.is_empty(), detail: failures.join("; ") }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.cases.len()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

/// Invariants of one family member.
struct Member {
    spec: FamilySpec,
    pd: PdCode,
    jones: LaurentPoly,
    alexander: LaurentPoly,
    conway: LaurentPoly,
    v3: Rational,
    w3: Rational,
}

fn member(spec: FamilySpec, limits: &Limits) -> Result<Member, AnalysisError> {
    let pd = generate(&spec)?;
    let jones = jones_with(&pd, limits)?;
    let alexander = alexander(&pd)?;
    let c = conway_from_alexander(&alexander)?;
    Ok(Member {
        spec,
        v3: v3_from_jones(&jones),
        w3: w3_from_jones(&jones),
        pd,
        jones,
        alexander,
        conway: c.full,
    })
}

fn grid(params: &SuiteParams) -> Vec<(i64, i64)> {
    params.r.clone().flat_map(|r| params.n.clone().map(move |n| (r, n))).collect()
}

const FAMILIES: [TwistFamily; 2] = [TwistFamily::KinoshitaTerasaka, TwistFamily::Conway];

/// Runs one suite; errors are computation failures (for example the crossing
/// cap), not failed cases.
pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<SuiteReport, AnalysisError> {
    let limits = params.limits;
    let cases: Vec<Result<CaseResult, AnalysisError>> = match suite {
        Suite::Torus => params.k.clone().collect::<Vec<_>>().into_par_iter().map(|k| torus_case(k, &limits)).collect(),
        Suite::Hoste | Suite::SkeinStep => grid(params)
            .into_par_iter()
            .filter(|&(_, n)| n >= 1)
            .map(|(r, n)| grid_case(suite, r, n, &limits))
            .collect(),
        _ => grid(params).into_par_iter().map(|(r, n)| grid_case(suite, r, n, &limits)).collect(),
    };
    Ok(SuiteReport { suite, cases: cases.into_iter().collect::<Result<_, _>>()? })
}

fn grid_case(suite: Suite, r: i64, n: i64, limits: &Limits) -> Result<CaseResult, AnalysisError> {
    let mut failures = Vec::new();
    let mut fail = |cond: bool, msg: String| {
        if !cond {
            failures.push(msg);
        }
    };
    match suite {
        Suite::LemmaV3 => {
            let expected = v3_closed_form(r, n);
            for fam in FAMILIES {
                let m = member(fam.spec(r, n), limits)?;
                fail(m.v3 == expected, format!("{}: v3 = {}, closed form gives {expected}", m.spec, m.v3));
            }
        }
        Suite::Hoste => {
            for fam in FAMILIES {
                let triple = twist_region_skein_triple(fam, r, n)?;
                let lk = triple.smoothed_linking_number().map_err(InvariantError::from)?;
                let (ap, am) = (conway(&triple.k_plus)?.a2, conway(&triple.k_minus)?.a2);
                fail(
                    hoste_check(&triple)?,
                    format!("{}: lk(K', K'') = {lk} but a2(K+) - a2(K-) = {ap} - {am}", fam.spec(r, n)),
                );
            }
        }
        Suite::SkeinStep => {
            for fam in FAMILIES {
                let triple = twist_region_skein_triple(fam, r, n)?;
                let upper = member(fam.spec(r, n), limits)?;
                let lower = member(fam.spec(r, n - 1), limits)?;
                let predicted = w3_skein_step(&triple)?;
                let actual = &upper.w3 - &lower.w3;
                fail(
                    predicted == actual,
                    format!("{} vs {}: w3 difference {actual}, skein formula gives {predicted}", upper.spec, lower.spec),
                );
                // K- built from the triple is the (r, n-1) member
                let km = jones_with(&triple.k_minus, limits)?;
                fail(km == lower.jones, format!("{}: K- of the triple has Jones {km}, expected {}", upper.spec, lower.jones));
            }
        }
        Suite::Mutation => {
            let kt = member(TwistFamily::KinoshitaTerasaka.spec(r, n), limits)?;
            let c = member(TwistFamily::Conway.spec(r, n), limits)?;
            fail(kt.jones == c.jones, format!("{}: Jones {} differs from {}: {}", kt.spec, kt.jones, c.spec, c.jones));
        }
        Suite::Symmetry => {
            for fam in FAMILIES {
                let a = member(fam.spec(r, n), limits)?;
                let b = member(a.spec.symmetry_partner()?, limits)?;
                let tag = format!("{} vs {}", a.spec, b.spec);
                fail(a.jones == b.jones, format!("{tag}: Jones {} vs {}", a.jones, b.jones));
                fail(a.conway == b.conway, format!("{tag}: Conway {} vs {}", a.conway, b.conway));
                fail(a.v3 == b.v3, format!("{tag}: v3 {} vs {}", a.v3, b.v3));
            }
        }
        Suite::Mirror => {
            for fam in FAMILIES {
                let a = member(fam.spec(r, n), limits)?;
                let b = member(a.spec.mirror_partner()?, limits)?;
                let tag = format!("{} vs {}", a.spec, b.spec);
                let inverted = a.jones.invert_variable();
                fail(b.jones == inverted, format!("{tag}: Jones {} is not {} with q -> 1/q", b.jones, a.jones));
                fail(b.v3 == -&a.v3, format!("{tag}: v3 {} vs {}", a.v3, b.v3));
                fail(a.conway == b.conway, format!("{tag}: Conway {} vs {}", a.conway, b.conway));
                let reflected = jones_with(&a.pd.mirror(), limits)?;
                fail(reflected == inverted, format!("{}: Jones of the reflected diagram is {reflected}", a.spec));
            }
        }
        Suite::Triviality => {
            let trivial = is_trivial_parameters(r, n);
            for fam in FAMILIES {
                let m = member(fam.spec(r, n), limits)?;
                fail(
                    m.v3.is_zero() == trivial,
                    format!("{}: v3 = {} but unknot parameters = {trivial}", m.spec, m.v3),
                );
                if trivial {
                    fail(m.jones.is_one(), format!("{}: Jones {} is not 1", m.spec, m.jones));
                    fail(m.alexander.is_one(), format!("{}: Alexander {} is not 1", m.spec, m.alexander));
                }
            }
        }
        Suite::Obstruction => {
            let zero = ExtendedRational::Finite(Rational::zero());
            for fam in FAMILIES {
                let report = analyze_family_with(&fam.spec(r, n), limits)?;
                let name = &report.name;
                fail(report.alexander.is_one(), format!("{name}: Alexander {} is not 1", report.alexander));
                fail(report.a2 == 0 && report.a4 == 0, format!("{name}: a2 = {}, a4 = {}", report.a2, report.a4));
                if is_trivial_parameters(r, n) {
                    fail(report.big_o.is_infinite(), format!("{name}: O = {}, expected inf", report.big_o));
                    fail(
                        report.chirally_verdict() == Verdict::Inconclusive
                            && report.purely_verdict() == Verdict::Inconclusive,
                        format!("{name}: unknot parameters but a verdict is OBSTRUCTED"),
                    );
                } else {
                    fail(report.big_o == zero, format!("{name}: O = {}, expected 0", report.big_o));
                    fail(report.chirally_verdict() == Verdict::Obstructed, format!("{name}: chirally verdict INCONCLUSIVE"));
                    fail(report.purely_verdict() == Verdict::Obstructed, format!("{name}: purely verdict INCONCLUSIVE"));
                }
            }
        }
        Suite::Torus => unreachable!("torus cases are indexed by k"),
    }
    Ok(CaseResult::check(format!("r={r} n={n}"), failures))
}

fn torus_case(k: i64, limits: &Limits) -> Result<CaseResult, AnalysisError> {
    let mut failures = Vec::new();
    let mut fail = |cond: bool, msg: String| {
        if !cond {
            failures.push(msg);
        }
    };
    if k >= 0 {
        let knot = FamilySpec::Torus2 { k: 2 * k + 1 };
        let a2 = conway(&generate(&knot)?)?.a2;
        let expected = a2_torus_closed_form(k as u64);
        fail(a2 as u64 == expected && a2 >= 0, format!("{knot}: a2 = {a2}, expected {expected}"));
    }
    if k >= 1 {
        let link = FamilySpec::Torus2 { k: 2 * k };
        let lk = generate(&link)?.linking_number(0, 1).map_err(InvariantError::from)?;
        fail(lk == k, format!("{link}: linking number {lk}, expected {k}"));
        let triple = torus_recursion_triple(k)?;
        fail(hoste_check(&triple)?, format!("torus2:{}: lk of the smoothing differs from the a2 step", 2 * k + 1));
        let upper = jones_with(&triple.k_plus, limits)?;
        let lower = jones_with(&triple.k_minus, limits)?;
        let actual = w3_from_jones(&upper) - w3_from_jones(&lower);
        let predicted = w3_skein_step(&triple)?;
        fail(predicted == actual, format!("torus2:{}: w3 step {actual}, skein formula gives {predicted}", 2 * k + 1));
    }
    Ok(CaseResult::check(format!("k={k}"), failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteParams {
        SuiteParams { r: -3..=2, n: -1..=1, k: 0..=3, limits: Limits::default() }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("lemma".parse::<Suite>().is_err());
    }

    #[test]
    fn small_grids_pass() {
        for s in Suite::ALL {
            let report = run_suite(s, &small()).unwrap();
            assert!(!report.cases.is_empty(), "{s}");
            assert!(report.all_passed(), "{s}: {:?}", report.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn skein_suites_skip_nonpositive_n() {
        let report = run_suite(Suite::Hoste, &small()).unwrap();
        assert_eq!(report.cases.len(), 6);
    }

    #[test]
    fn resource_cap_is_an_error() {
        let params = SuiteParams { limits: Limits { crossing_cap: 4 }, ..small() };
        let err = run_suite(Suite::Mutation, &params).unwrap_err();
        assert!(err.is_resource_cap());
    }
}
