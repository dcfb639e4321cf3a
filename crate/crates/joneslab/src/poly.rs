//! Exact Laurent polynomial arithmetic in the bracket variable A over the
//! integers, plus the quarter-graded q-series view obtained by q = A^-4.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sparse Laurent polynomial in A with arbitrary-precision integer
/// coefficients. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// c * A^e
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let c: BigInt = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// delta = -A^2 - A^-2, the value of a closed circle.
    pub fn delta() -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(2, BigInt::from(-1));
        p.add_term(-2, BigInt::from(-1));
        p
    }

    /// A^{2m} - A^{-2m}
    pub fn quantum_bracket(m: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(2 * m, BigInt::one());
        p.add_term(-2 * m, -BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Largest exponent with nonzero coefficient; None for the zero polynomial.
    pub fn max_deg(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_deg(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Substitute A -> A^-1 (mirror symmetry of the bracket).
    pub fn invert_variable(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        LaurentPoly { terms }
    }

    pub fn shift(&self, by: i64) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect();
        LaurentPoly { terms }
    }

    pub fn scale(&self, by: &BigInt) -> Self {
        if by.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, c)| (*e, c * by)).collect();
        LaurentPoly { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division: returns r with r*q == self, or NotDivisible.
    pub fn exact_div(&self, q: &LaurentPoly) -> Result<LaurentPoly> {
        assert!(!q.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let q_top = q.max_deg().unwrap();
        let q_lead = q.coeff(q_top);
        while !rem.is_zero() {
            let r_top = rem.max_deg().unwrap();
            let r_lead = rem.coeff(r_top);
            let (d, m) = (&r_lead / &q_lead, &r_lead % &q_lead);
            if !m.is_zero() {
                return Err(Error::NotDivisible);
            }
            let exp = r_top - q_top;
            let term = LaurentPoly::monomial(exp, d);
            rem = &rem - &(&term * q);
            quot = &quot + &term;
            if let Some(new_top) = rem.max_deg() {
                if new_top >= r_top {
                    return Err(Error::NotDivisible);
                }
            }
        }
        Ok(quot)
    }

    /// q-series view via the substitution q = A^-4: exponent e maps to the
    /// q-exponent -e/4, stored in quarter units.
    pub fn to_q(&self) -> QSeriesView {
        let terms = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        QSeriesView { quarter_terms: terms }
    }

    /// JSON encoding: array of [exponent, coefficient] pairs, ascending
    /// exponent, exact coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let n = serde_json::Number::from_string_unchecked(c.to_string());
                    serde_json::Value::Array(vec![
                        serde_json::Value::from(*e),
                        serde_json::Value::Number(n),
                    ])
                })
                .collect(),
        )
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect();
        LaurentPoly { terms }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            if *e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if *e == 1 {
                    write!(f, "A")?;
                } else {
                    write!(f, "A^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Laurent series in q with quarter-integer exponents, produced from a
/// LaurentPoly by q = A^-4. Exponents are stored as integer multiples of 1/4;
/// for knot diagrams all exponents are integral, for links half-integers occur.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QSeriesView {
    quarter_terms: BTreeMap<i64, BigInt>,
}

impl QSeriesView {
    pub fn is_zero(&self) -> bool {
        self.quarter_terms.is_empty()
    }

    /// Minimum q-degree in quarter units.
    pub fn min_deg_quarters(&self) -> Option<i64> {
        self.quarter_terms.keys().next().copied()
    }

    pub fn max_deg_quarters(&self) -> Option<i64> {
        self.quarter_terms.keys().next_back().copied()
    }

    /// Coefficient at the q-exponent given in quarter units.
    pub fn coeff_quarters(&self, quarters: i64) -> BigInt {
        self.quarter_terms.get(&quarters).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient at an integer q-exponent.
    pub fn coeff(&self, q_exp: i64) -> BigInt {
        self.coeff_quarters(4 * q_exp)
    }

    pub fn terms_quarters(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.quarter_terms.iter().map(|(e, c)| (*e, c))
    }

    /// True when every stored exponent is an integer power of q.
    pub fn is_integral(&self) -> bool {
        self.quarter_terms.keys().all(|e| e % 4 == 0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.quarter_terms
                .iter()
                .map(|(e, c)| {
                    let n = serde_json::Number::from_string_unchecked(c.to_string());
                    serde_json::Value::Array(vec![
                        serde_json::Value::String(Q4(*e).to_string()),
                        serde_json::Value::Number(n),
                    ])
                })
                .collect(),
        )
    }
}

impl fmt::Display for QSeriesView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.quarter_terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.quarter_terms.iter() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            if *e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "q^{{{}}}", Q4(*e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QSeriesView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Exact quarter-integer, stored as the number of quarters. Used for q-degrees
/// and the diagrammatic lower bound h_n(D), which are quarter-integral for
/// links in general.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Q4(pub i64);

impl Q4 {
    pub fn from_int(n: i64) -> Self {
        Q4(4 * n)
    }

    pub fn quarters(self) -> i64 {
        self.0
    }

    pub fn as_integer(self) -> Option<i64> {
        (self.0 % 4 == 0).then_some(self.0 / 4)
    }
}

impl fmt::Display for Q4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 4 == 0 {
            write!(f, "{}", self.0 / 4)
        } else if self.0 % 2 == 0 {
            write!(f, "{}/2", self.0 / 2)
        } else {
            write!(f, "{}/4", self.0)
        }
    }
}

impl Add for Q4 {
    type Output = Q4;
    fn add(self, rhs: Q4) -> Q4 {
        Q4(self.0 + rhs.0)
    }
}

impl Sub for Q4 {
    type Output = Q4;
    fn sub(self, rhs: Q4) -> Q4 {
        Q4(self.0 - rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(exp: i64) -> LaurentPoly {
        LaurentPoly::monomial(exp, 1)
    }

    #[test]
    fn add_examples() {
        assert!((&a(2) + &LaurentPoly::monomial(2, -1)).is_zero());
        let p = &(&a(2) + &LaurentPoly::one()) + &a(-2);
        assert_eq!(p.to_string(), "A^2 + 1 + A^-2");
        let two_delta = &LaurentPoly::delta() + &LaurentPoly::delta();
        assert_eq!(two_delta.to_string(), "-2*A^2 - 2*A^-2");
    }

    #[test]
    fn mul_examples() {
        let d = LaurentPoly::delta();
        let sq = &d * &d;
        assert_eq!(sq.to_string(), "A^4 + 2 + A^-4");
        let p = &(&a(5) - &a(-3)) + &a(-7);
        assert_eq!(&p * &LaurentPoly::one(), p);
        let diff = &(&a(1) - &a(-1)) * &(&a(1) + &a(-1));
        assert_eq!(diff, &a(2) - &a(-2));
    }

    #[test]
    fn max_deg_examples() {
        assert_eq!(LaurentPoly::delta().max_deg(), Some(2));
        assert_eq!(LaurentPoly::zero().max_deg(), None);
        let p = &(&a(5) - &a(-3)) + &a(-7);
        assert_eq!(p.max_deg(), Some(5));
    }

    #[test]
    fn exact_div_examples() {
        let d = LaurentPoly::delta();
        let sq = &d * &d;
        let q = sq.exact_div(&d).unwrap();
        assert_eq!(q, d);
        let p = &(&a(5) - &a(-3)) + &a(-7);
        assert_eq!(p.exact_div(&LaurentPoly::one()).unwrap(), p);
        let num = &a(4) - &a(-4);
        let den = &a(2) - &a(-2);
        assert_eq!(num.exact_div(&den).unwrap(), &a(2) + &a(-2));
    }

    #[test]
    fn exact_div_rejects_remainder() {
        let p = &a(2) + &LaurentPoly::one();
        assert!(matches!(p.exact_div(&LaurentPoly::delta()), Err(Error::NotDivisible)));
    }

    #[test]
    fn to_q_examples() {
        let q = a(-4).to_q();
        assert_eq!(q.min_deg_quarters(), Some(4));
        assert_eq!(q.coeff(1), BigInt::from(1));

        let p = (&a(8) - &a(4)).to_q();
        assert_eq!(p.coeff(-2), BigInt::from(1));
        assert_eq!(p.coeff(-1), BigInt::from(-1));
        assert!(p.is_integral());

        let h = a(2).to_q();
        assert_eq!(h.min_deg_quarters(), Some(-2)); // q^{-1/2}
        assert!(!h.is_integral());
        assert_eq!(h.to_string(), "q^{-1/2}");
    }

    #[test]
    fn q4_rendering() {
        assert_eq!(Q4(8).to_string(), "2");
        assert_eq!(Q4(-2).to_string(), "-1/2");
        assert_eq!(Q4(3).to_string(), "3/4");
    }

    #[test]
    fn display_matches_spec_shape() {
        let p = &(&-(&a(5)) - &a(-3)) + &a(-7);
        assert_eq!(p.to_string(), "-A^5 - A^-3 + A^-7");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i64..=6, -5i64..=5), 0..6).prop_map(|v| {
            let mut p = LaurentPoly::zero();
            for (e, c) in v {
                p.add_term(e, BigInt::from(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        }

        #[test]
        fn exact_div_roundtrip(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            let prod = &p * &q;
            prop_assert_eq!(prod.exact_div(&q).unwrap(), p);
        }

        #[test]
        fn degree_additivity(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            prop_assert_eq!((&p * &q).max_deg().unwrap(), p.max_deg().unwrap() + q.max_deg().unwrap());
        }
    }
}
