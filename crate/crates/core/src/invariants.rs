//! Polynomial and finite-type invariants computed from PD codes.
//!
//! The Kauffman bracket is evaluated by contracting crossings one at a time
//! while tracking how the open arcs of the processed region are paired up.
//! Crossings are taken greedily, always the one touching the most open arcs,
//! so twist regions are absorbed one crossing at a time and the number of
//! pairings stays small. A plain state sum is kept as a cross-check for small
//! diagrams.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::diagram::{ArcId, DiagramError, PdCode, Sign, SkeinTriple};
use crate::poly::{LaurentPoly, PolyError, Rational, Var};

pub const DEFAULT_CROSSING_CAP: usize = 200;
pub const NAIVE_CROSSING_CAP: usize = 18;
pub const CROSSING_CAP_ENV: &str = "KNOT_CROSSING_CAP";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("diagram has {crossings} crossings, above the cap of {cap} (set {CROSSING_CAP_ENV} to raise it)")]
    ResourceCap { crossings: usize, cap: usize },
    #[error("expected a knot, found {components} components")]
    NotAKnot { components: usize },
    #[error("Jones polynomial of a {components}-component link has half-integer exponents")]
    EvenComponentJones { components: usize },
    #[error("Alexander determinant {value} is not a unit at t = 1")]
    AlexanderNormalization { value: BigInt },
    #[error("coefficient {0} does not fit in 64 bits")]
    Overflow(BigInt),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Resource limits for bracket evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub crossing_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { crossing_cap: DEFAULT_CROSSING_CAP }
    }
}

impl Limits {
    /// Default limits, with the cap taken from `KNOT_CROSSING_CAP` when it is
    /// set to a number.
    pub fn from_env() -> Self {
        std::env::var(CROSSING_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(|crossing_cap| Limits { crossing_cap })
            .unwrap_or_default()
    }

    fn check(&self, pd: &PdCode) -> Result<(), InvariantError> {
        if pd.crossing_count() > self.crossing_cap {
            return Err(InvariantError::ResourceCap { crossings: pd.crossing_count(), cap: self.crossing_cap });
        }
        Ok(())
    }
}

fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms('A', [(2, -1), (-2, -1)])
}

/// Kauffman bracket normalized so that a single circle has value 1.
pub fn kauffman_bracket(pd: &PdCode) -> Result<LaurentPoly, InvariantError> {
    kauffman_bracket_with(pd, &Limits::from_env())
}

pub fn kauffman_bracket_with(pd: &PdCode, limits: &Limits) -> Result<LaurentPoly, InvariantError> {
    pd.components()?;
    limits.check(pd)?;
    let d = loop_value();
    let raw = if pd.crossing_count() == 0 { LaurentPoly::one('A') } else { contract(pd)? };
    let total = raw.try_mul(&d.pow(pd.free_loops() as u32)?)?;
    Ok(total.exact_div(&d)?)
}

/// The two smoothings of `X(a,b,c,d)`: weight `A` joins `a-b` and `c-d`,
/// weight `A^-1` joins `a-d` and `b-c`.
fn smoothings(arcs: [ArcId; 4]) -> [(i32, [(ArcId, ArcId); 2]); 2] {
    let [a, b, c, d] = arcs;
    [(1, [(a, b), (c, d)]), (-1, [(a, d), (b, c)])]
}

type Pairing = Vec<(ArcId, ArcId)>;

/// Joins open ends `u` and `v` inside a pairing; returns whether a closed
/// loop was formed.
fn connect(partner: &mut HashMap<ArcId, ArcId>, u: ArcId, v: ArcId) -> bool {
    if u == v {
        return true;
    }
    if partner.get(&u) == Some(&v) {
        partner.remove(&u);
        partner.remove(&v);
        return true;
    }
    let eu = partner.remove(&u).unwrap_or(u);
    let ev = partner.remove(&v).unwrap_or(v);
    partner.insert(eu, ev);
    partner.insert(ev, eu);
    false
}

/// Order in which crossings are absorbed: start at crossing 0, then always
/// the crossing sharing the most arcs with the processed region.
fn contraction_order(pd: &PdCode) -> Vec<usize> {
    let n = pd.crossing_count();
    let mut done = vec![false; n];
    let mut touched: BTreeSet<ArcId> = BTreeSet::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&i| !done[i])
            .max_by_key(|&i| {
                let shared = pd.crossings()[i].arcs.iter().filter(|a| touched.contains(a)).count();
                (shared, std::cmp::Reverse(i))
            })
            .expect("crossings remain");
        done[best] = true;
        touched.extend(pd.crossings()[best].arcs);
        order.push(best);
    }
    order
}

/// Sum over states of `A^(#A - #B) * d^loops`, computed by contraction.
fn contract(pd: &PdCode) -> Result<LaurentPoly, InvariantError> {
    let d = loop_value();
    let mut states: BTreeMap<Pairing, LaurentPoly> = BTreeMap::new();
    states.insert(Vec::new(), LaurentPoly::one('A'));
    for i in contraction_order(pd) {
        let arcs = pd.crossings()[i].arcs;
        let mut next: BTreeMap<Pairing, LaurentPoly> = BTreeMap::new();
        for (pairing, value) in &states {
            for (weight, joins) in smoothings(arcs) {
                let mut partner: HashMap<ArcId, ArcId> = HashMap::with_capacity(pairing.len() * 2 + 4);
                for &(x, y) in pairing {
                    partner.insert(x, y);
                    partner.insert(y, x);
                }
                let mut closed = 0;
                for (u, v) in joins {
                    if connect(&mut partner, u, v) {
                        closed += 1;
                    }
                }
                let key: Pairing = {
                    let mut k: Pairing = partner.iter().filter(|(x, y)| x < y).map(|(&x, &y)| (x, y)).collect();
                    k.sort_unstable();
                    k
                };
                let term = value.shift(weight)?.try_mul(&d.pow(closed)?)?;
                match next.get_mut(&key) {
                    Some(acc) => *acc = acc.try_add(&term)?,
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    let mut total = LaurentPoly::zero('A');
    for (pairing, value) in states {
        debug_assert!(pairing.is_empty());
        total = total.try_add(&value)?;
    }
    Ok(total)
}

/// Plain sum over all `2^n` smoothings; refuses diagrams above
/// [`NAIVE_CROSSING_CAP`] crossings.
pub fn kauffman_bracket_naive(pd: &PdCode) -> Result<LaurentPoly, InvariantError> {
    pd.components()?;
    let n = pd.crossing_count();
    if n > NAIVE_CROSSING_CAP {
        return Err(InvariantError::ResourceCap { crossings: n, cap: NAIVE_CROSSING_CAP });
    }
    let d = loop_value();
    let mut by_state: BTreeMap<(i32, u32), i64> = BTreeMap::new();
    let labels: BTreeSet<ArcId> = pd.crossings().iter().flat_map(|c| c.arcs).collect();
    let index: HashMap<ArcId, usize> = labels.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    for mask in 0u32..(1u32 << n) {
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut exponent = 0;
        for (i, c) in pd.crossings().iter().enumerate() {
            let (w, joins) = smoothings(c.arcs)[((mask >> i) & 1) as usize];
            exponent += w;
            for (u, v) in joins {
                let (ru, rv) = (find(&mut parent, index[&u]), find(&mut parent, index[&v]));
                parent[ru] = rv;
            }
        }
        let loops = (0..labels.len()).filter(|&i| find(&mut parent, i) == i).count() as u32;
        *by_state.entry((exponent, loops + pd.free_loops() as u32)).or_default() += 1;
    }
    let mut total = LaurentPoly::zero('A');
    for ((e, loops), count) in by_state {
        let term = LaurentPoly::monomial('A', count, e).try_mul(&d.pow(loops)?)?;
        total = total.try_add(&term)?;
    }
    Ok(total.exact_div(&d)?)
}

/// Jones polynomial in `q`, with `q = A^-4`.
pub fn jones(pd: &PdCode) -> Result<LaurentPoly, InvariantError> {
    jones_with(pd, &Limits::from_env())
}

pub fn jones_with(pd: &PdCode, limits: &Limits) -> Result<LaurentPoly, InvariantError> {
    let components = pd.component_count()?;
    if components % 2 == 0 {
        return Err(InvariantError::EvenComponentJones { components });
    }
    let bracket = kauffman_bracket_with(pd, limits)?;
    jones_from_bracket(pd, &bracket)
}

fn jones_from_bracket(pd: &PdCode, bracket: &LaurentPoly) -> Result<LaurentPoly, InvariantError> {
    let w = pd.writhe()?;
    let w32 = i32::try_from(w).map_err(|_| PolyError::ExponentOverflow)?;
    let factor = LaurentPoly::monomial('A', if w % 2 == 0 { 1 } else { -1 }, -3 * w32);
    Ok(factor.try_mul(bracket)?.substitute_power('q', -4)?)
}

/// Alexander polynomial of a knot, normalized so that `Δ(t) = Δ(1/t)` and
/// `Δ(1) = 1`.
pub fn alexander(pd: &PdCode) -> Result<LaurentPoly, InvariantError> {
    let components = pd.component_count()?;
    if components != 1 {
        return Err(InvariantError::NotAKnot { components });
    }
    let matrix = fox_matrix(pd);
    let k = matrix.len();
    let minor: Vec<Vec<LaurentPoly>> = matrix.into_iter().take(k.saturating_sub(1)).map(|mut row| {
        row.truncate(k - 1);
        row
    }).collect();
    normalize_alexander(determinant(minor)?)
}

/// Abelianized Fox Jacobian of the Wirtinger presentation: one generator per
/// over-arc, one relation per crossing.
fn fox_matrix(pd: &PdCode) -> Vec<Vec<LaurentPoly>> {
    let crossings = pd.crossings();
    let labels: BTreeSet<ArcId> = crossings.iter().flat_map(|c| c.arcs).collect();
    let index: HashMap<ArcId, usize> = labels.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    // over-arcs: the two over pieces at each crossing are one generator
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for c in crossings {
        let (a, b) = (find(&mut parent, index[&c.over_in()]), find(&mut parent, index[&c.over_out()]));
        parent[a] = b;
    }
    let mut generator: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..labels.len() {
        let root = find(&mut parent, i);
        let next = generator.len();
        generator.entry(root).or_insert(next);
    }
    let g = generator.len();
    let mut gen_of = |a: ArcId| generator[&find(&mut parent, index[&a])];
    let t = |c: i64, e: i32| LaurentPoly::monomial('t', c, e);
    let mut rows = Vec::with_capacity(crossings.len());
    for c in crossings {
        let (k, i, j) = (gen_of(c.over_in()), gen_of(c.under_in()), gen_of(c.under_out()));
        let mut row = vec![LaurentPoly::zero('t'); g];
        // x_k^e x_i x_k^-e x_j^-1
        let entries = match c.sign {
            Sign::Positive => [(k, t(1, 0)), (k, t(-1, 1)), (i, t(1, 1)), (j, t(-1, 0))],
            Sign::Negative => [(k, t(-1, -1)), (k, t(1, 0)), (i, t(1, -1)), (j, t(-1, 0))],
        };
        for (col, value) in entries {
            row[col] = &row[col] + &value;
        }
        rows.push(row);
    }
    rows
}

/// Fraction-free (Bareiss) determinant over `Z[t, t^-1]`.
fn determinant(mut m: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly, InvariantError> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPoly::one('t'));
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one('t');
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(LaurentPoly::zero('t'));
            };
            m.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].try_mul(&m[i][j])?.try_sub(&m[i][k].try_mul(&m[k][j])?)?;
                m[i][j] = if num.is_zero() { num } else { num.exact_div(&prev)? };
            }
            m[i][k] = LaurentPoly::zero('t');
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

fn normalize_alexander(det: LaurentPoly) -> Result<LaurentPoly, InvariantError> {
    let value = det.eval_at_one();
    if value.abs() != BigInt::one() {
        return Err(InvariantError::AlexanderNormalization { value });
    }
    let (lo, hi) = (det.min_exponent().unwrap_or(0), det.max_exponent().unwrap_or(0));
    if (lo + hi) % 2 != 0 {
        return Err(PolyError::Asymmetric { var: Var('t') }.into());
    }
    let mut p = det.shift(-(lo + hi) / 2)?;
    if value.is_negative() {
        p = -&p;
    }
    if !p.is_symmetric() {
        return Err(PolyError::Asymmetric { var: Var('t') }.into());
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConwayCoefficients {
    pub a2: i64,
    pub a4: i64,
    pub full: LaurentPoly,
}

pub fn conway(pd: &PdCode) -> Result<ConwayCoefficients, InvariantError> {
    conway_from_alexander(&alexander(pd)?)
}

pub fn conway_from_alexander(delta: &LaurentPoly) -> Result<ConwayCoefficients, InvariantError> {
    let full = delta.alexander_to_conway()?;
    let small = |e| {
        let c = full.coeff(e);
        c.to_i64().ok_or(InvariantError::Overflow(c))
    };
    Ok(ConwayCoefficients { a2: small(2)?, a4: small(4)?, full })
}

/// Order two and three finite-type invariants. `v2` is the Conway
/// coefficient `a2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTypeValues {
    pub v2: Rational,
    pub v3: Rational,
    pub w3: Rational,
}

fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `v3 = -V'''(1)/144 - V''(1)/48`.
pub fn v3_from_jones(v: &LaurentPoly) -> Rational {
    -(v.kth_derivative_at_one(3) / rational(144, 1)) - v.kth_derivative_at_one(2) / rational(48, 1)
}

/// `w3 = V'''(1)/72 + V''(1)/24`.
pub fn w3_from_jones(v: &LaurentPoly) -> Rational {
    v.kth_derivative_at_one(3) / rational(72, 1) + v.kth_derivative_at_one(2) / rational(24, 1)
}

pub fn finite_type(pd: &PdCode) -> Result<FiniteTypeValues, InvariantError> {
    let v = jones(pd)?;
    let c = conway(pd)?;
    Ok(finite_type_from(&v, &c))
}

pub fn finite_type_from(jones: &LaurentPoly, conway: &ConwayCoefficients) -> FiniteTypeValues {
    FiniteTypeValues { v2: rational(conway.a2, 1), v3: v3_from_jones(jones), w3: w3_from_jones(jones) }
}

/// `-n k (k+1) / 4` with `k = floor(r / 2)`.
pub fn v3_closed_form(r: i64, n: i64) -> Rational {
    let k = r.div_euclid(2);
    Rational::new(BigInt::from(-n) * k * (k + 1), BigInt::from(4))
}

/// `a2` of the torus knot `T(2, 2k+1)`, which is `k (k+1) / 2`.
pub fn a2_torus_closed_form(k: u64) -> u64 {
    k * (k + 1) / 2
}

/// Predicted `w3(K+) - w3(K-)` from the crossing change formula
/// `(a2(K') + a2(K''))/2 - (a2(K+) + a2(K-) + lk^2)/4`.
pub fn w3_skein_step(triple: &SkeinTriple) -> Result<Rational, InvariantError> {
    let (k1, k2) = triple.smoothed_components()?;
    let a2 = |pd: &PdCode| conway(pd).map(|c| c.a2);
    let lk = triple.smoothed_linking_number()?;
    let smoothed = a2(&k1)? + a2(&k2)?;
    let ends = a2(&triple.k_plus)? + a2(&triple.k_minus)?;
    Ok(rational(smoothed, 2) - rational(ends + lk * lk, 4))
}

/// Whether `lk(K', K'') = a2(K+) - a2(K-)`.
pub fn hoste_check(triple: &SkeinTriple) -> Result<bool, InvariantError> {
    let lk = triple.smoothed_linking_number()?;
    Ok(lk == conway(&triple.k_plus)?.a2 - conway(&triple.k_minus)?.a2)
}
