//! Exact Laurent polynomials in one variable over arbitrary-precision integers.
//!
//! Every knot polynomial in this crate (the Kauffman bracket in `A`, the Jones
//! polynomial in `q`, the Alexander polynomial in `t`, the Conway polynomial in
//! `z`) is a [`LaurentPoly`]. Values derived from them (derivatives at one,
//! `h`-expansion coefficients) are exact [`Rational`]s; nothing in this module
//! touches floating point.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable mismatch: {left} vs {right}")]
    VarMismatch { left: Var, right: Var },
    #[error("exponent {exponent} is not divisible by {step}")]
    NotDivisible { exponent: i32, step: i32 },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("polynomial is not symmetric under {var} -> {var}^-1")]
    Asymmetric { var: Var },
    #[error("polynomial evaluates to {value} at 1, expected 1")]
    NotNormalized { value: BigInt },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("substitution step must be nonzero")]
    ZeroStep,
}

/// Name of the polynomial variable (`A`, `q`, `t`, `z`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub char);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A Laurent polynomial `sum c_m x^m` with integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality (provided the variables agree).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Var,
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero(var: char) -> Self {
        LaurentPoly { var: Var(var), terms: BTreeMap::new() }
    }

    pub fn one(var: char) -> Self {
        Self::constant(var, 1)
    }

    pub fn constant(var: char, c: impl Into<BigInt>) -> Self {
        Self::monomial(var, c, 0)
    }

    pub fn monomial(var: char, c: impl Into<BigInt>, exponent: i32) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exponent, c.into());
        p
    }

    /// The variable itself, `x^1`.
    pub fn variable(var: char) -> Self {
        Self::monomial(var, 1, 1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(var: char, terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exponent: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exponent: i32) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Reinterprets the same coefficients in another variable.
    pub fn with_var(mut self, var: char) -> Self {
        self.var = Var(var);
        self
    }

    fn check_var(&self, other: &Self) -> Result<(), PolyError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(PolyError::VarMismatch { left: self.var, right: other.var })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_var(other)?;
        let mut out = Self::zero(self.var.0);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.checked_add(*e2).ok_or(PolyError::ExponentOverflow)?;
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i32) -> Result<Self, PolyError> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.checked_add(k).ok_or(PolyError::ExponentOverflow)?, c.clone());
        }
        Ok(LaurentPoly { var: self.var, terms })
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero(self.var.0);
        }
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Result<Self, PolyError> {
        let mut acc = Self::one(self.var.0);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Value at `x = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The `k`-th derivative evaluated at `x = 1`:
    /// `sum c_m * m (m-1) ... (m-k+1)`.
    pub fn kth_derivative_at_one(&self, k: u32) -> Rational {
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut falling = BigInt::one();
            for i in 0..k as i64 {
                falling *= BigInt::from(*e as i64 - i);
            }
            total += c * falling;
        }
        Rational::from_integer(total)
    }

    /// Coefficients `(j_0, ..., j_order)` of `h^n` in `p(e^h)`.
    ///
    /// Each monomial `c x^m` contributes `c m^n / n!` to `j_n`.
    pub fn h_expansion(&self, order: u32) -> Vec<Rational> {
        let mut out = Vec::with_capacity(order as usize + 1);
        let mut factorial = BigInt::one();
        for n in 0..=order {
            if n > 0 {
                factorial *= n;
            }
            let mut power_sum = BigInt::zero();
            for (e, c) in &self.terms {
                power_sum += c * BigInt::from(*e).pow(n);
            }
            out.push(Rational::new(power_sum, factorial.clone()));
        }
        out
    }

    /// Rewrites in `new_var` with exponent `m` sent to `m / step`.
    ///
    /// With `step = -4` this turns a polynomial in `A` into one in `t = A^-4`.
    /// Any exponent not divisible by `step` is an error.
    pub fn substitute_power(&self, new_var: char, step: i32) -> Result<Self, PolyError> {
        if step == 0 {
            return Err(PolyError::ZeroStep);
        }
        let mut out = Self::zero(new_var);
        for (e, c) in &self.terms {
            if e % step != 0 {
                return Err(PolyError::NotDivisible { exponent: *e, step });
            }
            out.add_term(e / step, c.clone());
        }
        Ok(out)
    }

    /// The inverse direction of [`substitute_power`](Self::substitute_power):
    /// exponent `m` becomes `m * factor`.
    pub fn stretch(&self, new_var: char, factor: i32) -> Result<Self, PolyError> {
        let mut out = Self::zero(new_var);
        for (e, c) in &self.terms {
            out.add_term(e.checked_mul(factor).ok_or(PolyError::ExponentOverflow)?, c.clone());
        }
        Ok(out)
    }

    /// `p(x^-1)`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Exact division in `Z[x, x^-1]`. Fails unless `divisor` divides `self`
    /// with integer quotient coefficients.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_var(divisor)?;
        let (Some(dlo), Some(dhi)) = (divisor.min_exponent(), divisor.max_exponent()) else {
            return Err(PolyError::DivisionByZero);
        };
        if self.is_zero() {
            return Ok(self.clone());
        }
        let lead = &divisor.terms[&dhi];
        let mut rem = self.clone();
        let mut quot = Self::zero(self.var.0);
        while let Some(rhi) = rem.max_exponent() {
            let rlo = rem.min_exponent().unwrap_or(rhi);
            if rhi - rlo < dhi - dlo {
                return Err(PolyError::InexactDivision);
            }
            let (q, r) = rem.terms[&rhi].div_rem(lead);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            let e = rhi.checked_sub(dhi).ok_or(PolyError::ExponentOverflow)?;
            let step = Self::monomial(self.var.0, q, e);
            rem = rem.try_sub(&step.try_mul(divisor)?)?;
            quot = quot.try_add(&step)?;
        }
        Ok(quot)
    }

    /// Converts a normalized Alexander polynomial in `t` into the Conway
    /// polynomial in `z`, where `z^2 = t - 2 + t^-1`.
    ///
    /// The input must be symmetric with value 1 at `t = 1`.
    pub fn alexander_to_conway(&self) -> Result<Self, PolyError> {
        if !self.is_symmetric() {
            return Err(PolyError::Asymmetric { var: self.var });
        }
        let at_one = self.eval_at_one();
        if !at_one.is_one() {
            return Err(PolyError::NotNormalized { value: at_one });
        }
        let var = self.var.0;
        // x = t + t^-1 - 2
        let base = LaurentPoly::from_terms(var, [(1, 1), (0, -2), (-1, 1)]);
        let mut rest = self.clone();
        let mut conway = Self::zero('z');
        while let Some(top) = rest.max_exponent() {
            if top < 0 {
                return Err(PolyError::Asymmetric { var: self.var });
            }
            // x^top has leading term t^top with coefficient 1.
            let c = rest.terms[&top].clone();
            rest = rest.try_sub(&base.pow(top as u32)?.scale(&c))?;
            conway.add_term(2 * top, c);
        }
        Ok(conway)
    }

    /// Substitutes `z^2 = t - 2 + t^-1` into a polynomial in even powers of `z`.
    pub fn conway_to_alexander(&self, t: char) -> Result<Self, PolyError> {
        let base = LaurentPoly::from_terms(t, [(1, 1), (0, -2), (-1, 1)]);
        let mut out = Self::zero(t);
        for (e, c) in &self.terms {
            if *e < 0 || e % 2 != 0 {
                return Err(PolyError::NotDivisible { exponent: *e, step: 2 });
            }
            out = out.try_add(&base.pow((*e / 2) as u32)?.scale(c))?;
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical rendering: decreasing exponents, unit coefficients elided
    /// except on the constant term, e.g. `-q^4 + 2q^3 + q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if *e == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "{}", self.var)?,
                _ => write!(f, "{}^{}", self.var, e)?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("LaurentPoly addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("LaurentPoly subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("LaurentPoly multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

/// A rational number or `+inf`; `Infinity` compares above every finite value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendedRational {
    Finite(Rational),
    Infinity,
}

impl ExtendedRational {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::Infinity)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(r) => Some(r),
            ExtendedRational::Infinity => None,
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(r: Rational) -> Self {
        ExtendedRational::Finite(r)
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedRational::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinity) => Ordering::Less,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Infinity, Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(r) => write!(f, "{r}"),
            ExtendedRational::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses `p`, `p/q` or `inf`.
pub fn parse_extended(s: &str) -> Option<ExtendedRational> {
    let s = s.trim();
    if s == "inf" {
        return Some(ExtendedRational::Infinity);
    }
    s.parse::<Rational>().ok().map(ExtendedRational::Finite)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(var: char, terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(var, terms.iter().copied())
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn k11n34() -> LaurentPoly {
        p('q', &[(4, -1), (3, 2), (2, -2), (1, 2), (-2, 1), (-3, -2), (-4, 2), (-5, -2), (-6, 1)])
    }

    #[test]
    fn add_cancels() {
        let a = p('t', &[(1, 1), (0, 1)]);
        let b = p('t', &[(1, -1), (0, 1)]);
        assert_eq!(&a + &b, LaurentPoly::constant('t', 2));
        assert_eq!(&a + &LaurentPoly::zero('t'), a);
        let c = p('q', &[(-1, 1), (1, 1)]);
        let d = p('q', &[(-1, 1), (1, -1)]);
        assert_eq!(&c + &d, p('q', &[(-1, 2)]));
    }

    #[test]
    fn mul_basics() {
        let a = p('t', &[(1, 1), (0, -1)]);
        let b = p('t', &[(1, 1), (0, 1)]);
        assert_eq!(&a * &b, p('t', &[(2, 1), (0, -1)]));
        assert_eq!(&a * &LaurentPoly::one('t'), a);
        assert!((&p('A', &[(-1, 1)]) * &p('A', &[(1, 1)])).is_one());
    }

    #[test]
    fn var_mismatch_is_an_error() {
        let a = LaurentPoly::variable('t');
        let b = LaurentPoly::variable('q');
        assert!(matches!(a.try_add(&b), Err(PolyError::VarMismatch { .. })));
        assert!(matches!(a.try_mul(&b), Err(PolyError::VarMismatch { .. })));
    }

    #[test]
    fn exponent_overflow_is_caught() {
        let a = LaurentPoly::monomial('t', 1, i32::MAX);
        assert_eq!(a.try_mul(&a), Err(PolyError::ExponentOverflow));
    }

    #[test]
    fn derivatives_of_k11n34() {
        let v = k11n34();
        assert_eq!(v.eval_at_one(), BigInt::one());
        assert_eq!(v.kth_derivative_at_one(2), rat(0, 1));
        assert_eq!(v.kth_derivative_at_one(3), rat(-72, 1));
        assert_eq!(LaurentPoly::one('q').kth_derivative_at_one(1), rat(0, 1));
        assert_eq!(LaurentPoly::one('q').kth_derivative_at_one(4), rat(0, 1));
    }

    #[test]
    fn h_expansion_examples() {
        let one = LaurentPoly::one('q').h_expansion(3);
        assert_eq!(one, vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(LaurentPoly::variable('t').h_expansion(2), vec![rat(1, 1), rat(1, 1), rat(1, 2)]);
        let j = k11n34().h_expansion(3);
        assert_eq!(j[3], rat(-12, 1));
        // derivative route: -V'''(1)/144 - V''(1)/48
        let v = k11n34();
        let via_derivatives = -v.kth_derivative_at_one(3) / rat(144, 1) - v.kth_derivative_at_one(2) / rat(48, 1);
        assert_eq!(-&j[3] / rat(24, 1), via_derivatives);
        assert_eq!(via_derivatives, rat(1, 2));
    }

    #[test]
    fn substitute_power_examples() {
        assert_eq!(p('A', &[(-4, 1)]).substitute_power('t', -4).unwrap(), p('t', &[(1, 1)]));
        assert_eq!(p('A', &[(8, 1), (-4, 1)]).substitute_power('t', -4).unwrap(), p('t', &[(-2, 1), (1, 1)]));
        assert_eq!(
            p('A', &[(3, 1)]).substitute_power('t', -4),
            Err(PolyError::NotDivisible { exponent: 3, step: -4 })
        );
    }

    #[test]
    fn conway_examples() {
        assert!(LaurentPoly::one('t').alexander_to_conway().unwrap().is_one());
        let trefoil = p('t', &[(1, 1), (0, -1), (-1, 1)]);
        assert_eq!(trefoil.alexander_to_conway().unwrap(), p('z', &[(2, 1), (0, 1)]));
        let d = p('t', &[(2, 1), (1, -1), (0, 1), (-1, -1), (-2, 1)]);
        let nabla = d.alexander_to_conway().unwrap();
        assert_eq!(nabla, p('z', &[(4, 1), (2, 3), (0, 1)]));
        // oracle: expand z = t^(1/2) - t^(-1/2) in half-integer exponents (doubled)
        let z = p('s', &[(1, 1), (-1, -1)]);
        let expanded = &(&z.pow(4).unwrap() + &z.pow(2).unwrap().scale(&3.into())) + &LaurentPoly::one('s');
        assert_eq!(expanded.substitute_power('t', 2).unwrap(), d);
    }

    #[test]
    fn conway_rejects_bad_input() {
        assert!(matches!(p('t', &[(1, 1)]).alexander_to_conway(), Err(PolyError::Asymmetric { .. })));
        assert!(matches!(
            p('t', &[(1, 1), (0, 1), (-1, 1)]).alexander_to_conway(),
            Err(PolyError::NotNormalized { .. })
        ));
    }

    #[test]
    fn exact_division() {
        let a = p('t', &[(2, 1), (0, -1)]);
        let b = p('t', &[(1, 1), (0, 1)]);
        assert_eq!(a.exact_div(&b).unwrap(), p('t', &[(1, 1), (0, -1)]));
        assert_eq!(b.exact_div(&a), Err(PolyError::InexactDivision));
        assert_eq!(a.exact_div(&LaurentPoly::zero('t')), Err(PolyError::DivisionByZero));
        let d = p('A', &[(2, -1), (-2, -1)]);
        assert_eq!(d.exact_div(&d).unwrap(), LaurentPoly::one('A'));
        assert_eq!(p('t', &[(1, 2)]).exact_div(&p('t', &[(0, 3)])), Err(PolyError::InexactDivision));
    }

    #[test]
    fn rendering() {
        assert_eq!(k11n34().to_string(), "-q^4 + 2q^3 - 2q^2 + 2q + q^-2 - 2q^-3 + 2q^-4 - 2q^-5 + q^-6");
        assert_eq!(LaurentPoly::zero('t').to_string(), "0");
        assert_eq!(LaurentPoly::one('t').to_string(), "1");
        assert_eq!(p('t', &[(0, -1), (1, 1)]).to_string(), "t - 1");
        assert_eq!(p('A', &[(-7, 1), (-3, -1), (5, -1)]).to_string(), "-A^5 - A^-3 + A^-7");
    }

    #[test]
    fn extended_ordering() {
        let two = ExtendedRational::Finite(rat(2, 1));
        assert!(ExtendedRational::Infinity > two);
        assert!(ExtendedRational::Finite(rat(3, 2)) < two);
        assert_eq!(ExtendedRational::Finite(rat(3, 2)).to_string(), "3/2");
        assert_eq!(ExtendedRational::Infinity.to_string(), "inf");
        assert_eq!(parse_extended("3/2"), Some(ExtendedRational::Finite(rat(3, 2))));
        assert_eq!(parse_extended("inf"), Some(ExtendedRational::Infinity));
    }

    #[test]
    fn rational_is_reduced() {
        let r = rat(6, -4);
        assert_eq!(*r.numer(), BigInt::from(-3));
        assert_eq!(*r.denom(), BigInt::from(2));
    }
}
