//! Acceptance criteria, one PASS/FAIL line each. Exits 1 if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use knotinv::diagram::PdCode;
use knotinv::families::{
    generate, is_trivial_parameters, torus_recursion_triple, twist_region_skein_triple, FamilySpec, TwistFamily,
};
use knotinv::invariants::{
    a2_torus_closed_form, alexander, conway, hoste_check, jones, v3_closed_form, v3_from_jones, w3_from_jones,
    w3_skein_step,
};
use knotinv::obstructions::{analyze_family, Verdict};
use knotinv::poly::{ExtendedRational, LaurentPoly, Rational};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

const FAMILIES: [TwistFamily; 2] = [TwistFamily::KinoshitaTerasaka, TwistFamily::Conway];

fn grid() -> impl Iterator<Item = (i64, i64)> {
    (-5..=5).flat_map(|r| (-3..=3).map(move |n| (r, n)))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn pd(spec: FamilySpec) -> Result<PdCode, String> {
    generate(&spec).map_err(|e| format!("{spec}: {e}"))
}

fn jones_of(spec: FamilySpec) -> Result<LaurentPoly, String> {
    jones(&pd(spec)?).map_err(|e| format!("{spec}: {e}"))
}

fn k11n34() -> Check {
    let expected = LaurentPoly::from_terms(
        'q',
        [(4, -1), (3, 2), (2, -2), (1, 2), (-2, 1), (-3, -2), (-4, 2), (-5, -2), (-6, 1)],
    );
    let v = jones_of(FamilySpec::Conway { r: 2, n: -1 })?;
    ensure(v == expected, || format!("jones = {v}"))?;
    let (d2, d3) = (v.kth_derivative_at_one(2), v.kth_derivative_at_one(3));
    ensure(d2 == q(0, 1) && d3 == q(-72, 1), || format!("V''(1) = {d2}, V'''(1) = {d3}"))?;
    let v3 = v3_from_jones(&v);
    ensure(v3 == q(1, 2), || format!("v3 = {v3}"))
}

fn v3_grid() -> Check {
    for (r, n) in grid() {
        for family in FAMILIES {
            let spec = family.spec(r, n);
            let v3 = v3_from_jones(&jones_of(spec)?);
            let expected = v3_closed_form(r, n);
            ensure(v3 == expected, || format!("{spec}: v3 = {v3}, expected {expected}"))?;
        }
    }
    Ok(())
}

fn triviality() -> Check {
    for (r, n) in grid() {
        for family in FAMILIES {
            let spec = family.spec(r, n);
            let knot = pd(spec)?;
            let v = jones(&knot).map_err(|e| e.to_string())?;
            let zero = v3_from_jones(&v) == q(0, 1);
            ensure(zero == is_trivial_parameters(r, n), || format!("{spec}: v3 = {}", v3_from_jones(&v)))?;
            if zero {
                let delta = alexander(&knot).map_err(|e| e.to_string())?;
                ensure(v.is_one() && delta.is_one(), || format!("{spec}: jones = {v}, alexander = {delta}"))?;
            }
        }
    }
    Ok(())
}

fn trivial_alexander() -> Check {
    for (r, n) in grid() {
        for family in FAMILIES {
            let spec = family.spec(r, n);
            let report = analyze_family(&spec).map_err(|e| e.to_string())?;
            ensure(report.alexander.is_one() && report.a2 == 0 && report.a4 == 0, || {
                format!("{spec}: alexander = {}, a2 = {}, a4 = {}", report.alexander, report.a2, report.a4)
            })?;
            if !is_trivial_parameters(r, n) {
                ensure(report.big_o == ExtendedRational::Finite(q(0, 1)), || format!("{spec}: O = {}", report.big_o))?;
                ensure(
                    report.chirally_verdict() == Verdict::Obstructed && report.purely_verdict() == Verdict::Obstructed,
                    || format!("{spec}: verdicts {} / {}", report.chirally_verdict(), report.purely_verdict()),
                )?;
            }
        }
    }
    Ok(())
}

fn torus_ladder() -> Check {
    for k in 0..=8i64 {
        let knot = pd(FamilySpec::Torus2 { k: 2 * k + 1 })?;
        let a2 = conway(&knot).map_err(|e| e.to_string())?.a2;
        let expected = a2_torus_closed_form(k as u64) as i64;
        ensure(a2 == expected, || format!("a2(T(2,{})) = {a2}, expected {expected}", 2 * k + 1))?;
    }
    for k in 1..=8i64 {
        let link = pd(FamilySpec::Torus2 { k: 2 * k })?;
        let lk = link.linking_number(0, 1).map_err(|e| e.to_string())?;
        ensure(lk == k, || format!("lk(T(2,{})) = {lk}", 2 * k))?;
    }
    Ok(())
}

fn skein() -> Check {
    for r in 2..=4 {
        for n in 1..=2 {
            let triple = twist_region_skein_triple(TwistFamily::Conway, r, n).map_err(|e| e.to_string())?;
            let predicted = w3_skein_step(&triple).map_err(|e| e.to_string())?;
            let actual = w3_from_jones(&jones_of(FamilySpec::Conway { r, n })?)
                - w3_from_jones(&jones_of(FamilySpec::Conway { r, n: n - 1 })?);
            ensure(predicted == actual, || format!("conway:{r},{n}: step {predicted}, difference {actual}"))?;
            ensure(hoste_check(&triple).map_err(|e| e.to_string())?, || format!("conway:{r},{n}: hoste"))?;
        }
    }
    for k in 1..=8 {
        let triple = torus_recursion_triple(k).map_err(|e| e.to_string())?;
        ensure(hoste_check(&triple).map_err(|e| e.to_string())?, || format!("torus k={k}: hoste"))?;
    }
    Ok(())
}

fn mutation() -> Check {
    for (r, n) in grid() {
        let kt = jones_of(FamilySpec::KinoshitaTerasaka { r, n })?;
        let c = jones_of(FamilySpec::Conway { r, n })?;
        ensure(kt == c, || format!("r={r} n={n}: {kt} vs {c}"))?;
    }
    Ok(())
}

fn symmetry_mirror() -> Check {
    for (r, n) in grid() {
        for family in FAMILIES {
            let spec = family.spec(r, n);
            let a = analyze_family(&spec).map_err(|e| e.to_string())?;
            let partner = family.spec(-r - 1, n);
            let b = analyze_family(&partner).map_err(|e| e.to_string())?;
            ensure(
                (&a.jones, &a.alexander, &a.conway, &a.v3) == (&b.jones, &b.alexander, &b.conway, &b.v3),
                || format!("{spec} vs {partner}"),
            )?;
            let knot = pd(spec)?;
            let mirror = knot.mirror();
            let vm = jones(&mirror).map_err(|e| e.to_string())?;
            ensure(vm == a.jones.invert_variable(), || format!("{spec}: mirror jones {vm}"))?;
            ensure(v3_from_jones(&vm) == -a.v3.clone(), || format!("{spec}: mirror v3"))?;
            let cm = conway(&mirror).map_err(|e| e.to_string())?.full;
            ensure(cm == a.conway, || format!("{spec}: mirror conway {cm}"))?;
        }
    }
    Ok(())
}

fn verify_all() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_knotinv"))
        .args(["verify", "all", "--quiet"])
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success(), || format!("exit {:?}\n{stdout}", out.status.code()))?;
    let summaries = stdout.lines().filter(|l| l.contains(": PASS, ")).count();
    ensure(summaries == 9, || format!("expected 9 passing suites\n{stdout}"))?;
    ensure(!stdout.contains("FAIL"), || stdout.to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 K11n34 Jones polynomial and v3 = 1/2", k11n34),
        ("2 v3 closed form on the 77-point grid", v3_grid),
        ("3 v3 = 0 exactly at the unknot parameters", triviality),
        ("4 trivial Alexander polynomial, O = 0 and obstructed verdicts", trivial_alexander),
        ("5 torus a2 ladder and linking numbers", torus_ladder),
        ("6 w3 skein step and Hoste identity", skein),
        ("7 mutant pair has equal Jones polynomials", mutation),
        ("8 symmetry and mirror rules", symmetry_mirror),
        ("9 `knotinv verify all` passes", verify_all),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS  {name} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.2}s): {detail}");
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
