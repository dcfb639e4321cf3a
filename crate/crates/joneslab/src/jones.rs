//! Chebyshev linearization, the reduced colored Jones polynomial, degree
//! data, and stable tail coefficients.
//!
//! With n = m - 1 and the reduced bracket normalization <unknot> = 1,
//!
//!   G_D(m, A) = ((-1)^n A^{n^2+2n})^{-w(D)} (-1)^{n-1}
//!                 (A^4 - A^-4) <S_n(D)> / (A^{2m} - A^{-2m}),
//!
//! and J_K(m, q) is G_D(m, A) under q = A^-4. The empty cable D^0 is handled
//! by computing delta * <S_n(D)> from unreduced brackets and dividing once,
//! so everything stays inside Laurent polynomials; a failed division is a
//! loud bug signal, never expected on valid input.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::bracket::{auto_unreduced, BracketOptions};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Q4, QSeriesView};
use crate::ribbon::AllAContext;
use crate::states::is_a_adequate;

/// S_n(D) = sum over k of c_{n,k} D^k, generated by
/// S_{n+1} = D S_n - S_{n-1}, S_1 = D, S_0 = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebyshevExpansion {
    pub n: usize,
    /// k -> c_{n,k}; only k with n - k even appear.
    pub coeffs: std::collections::BTreeMap<usize, i64>,
}

pub fn chebyshev(n: usize) -> ChebyshevExpansion {
    let mut prev = std::collections::BTreeMap::from([(0usize, 1i64)]); // S_0
    if n == 0 {
        return ChebyshevExpansion { n, coeffs: prev };
    }
    let mut cur = std::collections::BTreeMap::from([(1usize, 1i64)]); // S_1
    for _ in 1..n {
        let mut next: std::collections::BTreeMap<usize, i64> = std::collections::BTreeMap::new();
        for (&k, &c) in &cur {
            *next.entry(k + 1).or_insert(0) += c;
        }
        for (&k, &c) in &prev {
            *next.entry(k).or_insert(0) -= c;
        }
        next.retain(|_, c| *c != 0);
        prev = cur;
        cur = next;
    }
    ChebyshevExpansion { n, coeffs: cur }
}

/// delta * <S_n(D)>: the Chebyshev bracket with one global circle factor, so
/// the empty cable contributes exactly 1.
pub fn unreduced_bracket_s(d: &Diagram, n: usize, opts: &BracketOptions) -> Result<LaurentPoly> {
    let ch = chebyshev(n);
    let terms: Vec<(usize, i64)> = ch.coeffs.iter().map(|(&k, &c)| (k, c)).collect();
    let pieces: Result<Vec<LaurentPoly>> = terms
        .par_iter()
        .map(|&(k, c)| {
            let ub = if k == 0 {
                LaurentPoly::one()
            } else {
                let (cab, _) = d.cable(k)?;
                auto_unreduced(&cab, opts)?
            };
            Ok(ub.scale(&BigInt::from(c)))
        })
        .collect();
    let mut sum = LaurentPoly::zero();
    for p in pieces? {
        sum += &p;
    }
    Ok(sum)
}

/// <S_n(D)> itself (exact division by delta).
pub fn bracket_s(d: &Diagram, n: usize, opts: &BracketOptions) -> Result<LaurentPoly> {
    unreduced_bracket_s(d, n, opts)?.exact_div(&LaurentPoly::delta())
}

/// G_D(m, A): the reduced m-colored Jones polynomial in the bracket variable.
pub fn colored_jones_poly(d: &Diagram, m: usize, opts: &BracketOptions) -> Result<LaurentPoly> {
    if m < 2 {
        return Err(Error::NotApplicable(format!("color must be >= 2, got {}", m)));
    }
    let n = (m - 1) as i64;
    let w = d.writhe();
    let us = unreduced_bracket_s(d, m - 1, opts)?;
    // (A^4 - A^-4) * delta<S_n> / (delta * (A^{2m} - A^{-2m}))
    let numerator = &LaurentPoly::quantum_bracket(2) * &us;
    let denominator = &LaurentPoly::delta() * &LaurentPoly::quantum_bracket(m as i64);
    let core = numerator.exact_div(&denominator)?;
    let framing_exp = -w * (n * n + 2 * n);
    let mut sign = 1i64;
    if (n * w) % 2 != 0 {
        sign = -sign;
    }
    if (n - 1) % 2 != 0 {
        sign = -sign;
    }
    Ok(core.shift(framing_exp).scale(&BigInt::from(sign)))
}

/// J_K(m, q) as a quarter-graded q-series.
pub fn colored_jones(d: &Diagram, m: usize, opts: &BracketOptions) -> Result<QSeriesView> {
    Ok(colored_jones_poly(d, m, opts)?.to_q())
}

/// M(D) = c(D) + 2|s_A(D)| - 2, and its cable scaling
/// M(D^k) = k^2 c(D) + 2 k |s_A(D)| - 2.
pub fn m_bound(d: &Diagram) -> i64 {
    let ctx = AllAContext::new(d);
    d.crossing_count() as i64 + 2 * ctx.v as i64 - 2
}

pub fn m_bound_cable(d: &Diagram, k: usize) -> i64 {
    let ctx = AllAContext::new(d);
    let k = k as i64;
    k * k * d.crossing_count() as i64 + 2 * k * ctx.v as i64 - 2
}

/// h_n(D) = -1/4 (M(D^{n-1}) + 4 - 2n - w(D)((n-1)^2 + 2(n-1))), exact in
/// quarter units.
pub fn h_lower_bound(d: &Diagram, n: usize) -> Q4 {
    assert!(n >= 2);
    let w = d.writhe();
    let nm1 = (n - 1) as i64;
    let m = m_bound_cable(d, n - 1);
    Q4(-(m + 4 - 2 * n as i64 - w * (nm1 * nm1 + 2 * nm1)))
}

/// Degree data of one color: the bracket degree of S_{n-1}, the minimum
/// q-degree of J both from the degree formula and from the computed
/// polynomial, the diagrammatic lower bound, and M(D^n).
#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub m: usize,
    pub d_star_s: i64,
    pub d_n: Q4,
    pub d_n_from_polynomial: Q4,
    pub h_n: Q4,
    pub m_dn: i64,
    pub a_adequate: bool,
}

pub fn degree_report(d: &Diagram, m: usize, opts: &BracketOptions) -> Result<DegreeReport> {
    if m < 2 {
        return Err(Error::NotApplicable(format!("color must be >= 2, got {}", m)));
    }
    let n = m; // color
    let nm1 = (n - 1) as i64;
    let w = d.writhe();
    let s = bracket_s(d, m - 1, opts)?;
    let d_star_s = s
        .max_deg()
        .ok_or_else(|| Error::Other("vanishing Chebyshev bracket".into()))?;
    let d_n = Q4(-(d_star_s + 4 - 2 * n as i64 - w * (nm1 * nm1 + 2 * nm1)));
    let j = colored_jones(d, m, opts)?;
    let d_n_from_polynomial = Q4(j
        .min_deg_quarters()
        .ok_or_else(|| Error::Other("vanishing colored Jones polynomial".into()))?);
    if d_n != d_n_from_polynomial {
        return Err(Error::Other(format!(
            "degree formula mismatch: d({}) = {} by formula, {} from the polynomial",
            m, d_n, d_n_from_polynomial
        )));
    }
    Ok(DegreeReport {
        m,
        d_star_s,
        d_n,
        d_n_from_polynomial,
        h_n: h_lower_bound(d, m),
        m_dn: m_bound_cable(d, m),
        a_adequate: is_a_adequate(d).0,
    })
}

/// Stable tail coefficients. beta_i (i >= 1) is the coefficient of
/// q^{h_{i+2}(D) + i - 1} in J_K(i+2, q); for an A-adequate diagram the same
/// value must be read off from every computed color above it, and for a
/// reduced non-A-adequate diagram every beta_i vanishes.
#[derive(Clone, Debug)]
pub struct TailReport {
    pub betas: Vec<BigInt>,
    pub stabilized_up_to: usize,
    pub a_adequate: bool,
}

pub fn tail(d: &Diagram, count: usize, max_color: usize, opts: &BracketOptions) -> Result<TailReport> {
    assert!(count >= 1);
    let a_adequate = is_a_adequate(d).0;
    let lo_color = 3.min(max_color);
    let colors: Vec<usize> = (lo_color..=max_color).collect();
    let polys: Result<Vec<(usize, QSeriesView)>> = colors
        .par_iter()
        .map(|&m| Ok((m, colored_jones(d, m, opts)?)))
        .collect();
    let polys = polys?;
    let mut betas = Vec::with_capacity(count);
    for i in 1..=count {
        let base_color = i + 2;
        if base_color > max_color {
            return Err(Error::NotApplicable(format!(
                "beta_{} needs color {} but max_color is {}",
                i, base_color, max_color
            )));
        }
        let jq = &polys.iter().find(|(m, _)| *m == base_color).unwrap().1;
        let at = h_lower_bound(d, base_color).quarters() + 4 * (i as i64 - 1);
        let beta = jq.coeff_quarters(at);
        // read the same coefficient off every higher computed color
        if a_adequate {
            for (m, poly) in &polys {
                if *m <= base_color {
                    continue;
                }
                let at_m = h_lower_bound(d, *m).quarters() + 4 * (i as i64 - 1);
                let other = poly.coeff_quarters(at_m);
                if other != beta {
                    return Err(Error::StabilityViolation(format!(
                        "beta_{} reads {} at color {} but {} at color {}",
                        i, beta, base_color, other, m
                    )));
                }
            }
        }
        betas.push(beta);
    }
    Ok(TailReport { betas, stabilized_up_to: max_color, a_adequate })
}

/// The tail coefficients in the other indexing: beta_i (i >= 2) at
/// q^{h_i(D) + i - 2} of J_K(i, q). Used to cross-check the two readings.
pub fn beta_alt(d: &Diagram, i: usize, opts: &BracketOptions) -> Result<BigInt> {
    assert!(i >= 2);
    let jq = colored_jones(d, i, opts)?;
    let at = h_lower_bound(d, i).quarters() + 4 * (i as i64 - 2);
    Ok(jq.coeff_quarters(at))
}

/// J^A_D(q) truncated to `count` terms: nonzero exactly when D is A-adequate.
pub fn tail_series(d: &Diagram, count: usize, opts: &BracketOptions) -> Result<Vec<BigInt>> {
    let report = tail(d, count, count + 2, opts)?;
    Ok(report.betas)
}

/// Euler characteristic of the all-A state graph: |s_A(D)| - c(D).
pub fn chi_a(d: &Diagram) -> i64 {
    let ctx = AllAContext::new(d);
    ctx.v as i64 - d.crossing_count() as i64
}

pub fn betas_all_zero(betas: &[BigInt]) -> bool {
    betas.iter().all(|b| b.is_zero())
}

pub fn beta_is_unit(b: &BigInt) -> bool {
    b.abs() == BigInt::from(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures;

    fn opts() -> BracketOptions {
        BracketOptions::default()
    }

    #[test]
    fn chebyshev_small() {
        assert_eq!(chebyshev(0).coeffs, std::collections::BTreeMap::from([(0, 1)]));
        assert_eq!(chebyshev(1).coeffs, std::collections::BTreeMap::from([(1, 1)]));
        assert_eq!(chebyshev(2).coeffs, std::collections::BTreeMap::from([(0, -1), (2, 1)]));
        assert_eq!(chebyshev(3).coeffs, std::collections::BTreeMap::from([(1, -2), (3, 1)]));
        // c_{n,n} = 1 and c_{n,n-2} = 1 - n
        for n in 2..10 {
            let ch = chebyshev(n);
            assert_eq!(ch.coeffs[&n], 1);
            assert_eq!(ch.coeffs[&(n - 2)], 1 - n as i64);
            assert!(ch.coeffs.keys().all(|k| (n - k) % 2 == 0));
        }
    }

    #[test]
    fn bracket_s_unknot_identity() {
        // delta <S_n(unknot)> = S_n(delta), the Chebyshev value at delta
        let d = fixtures::unknot();
        for n in 0..=5 {
            let us = unreduced_bracket_s(&d, n, &opts()).unwrap();
            let ch = chebyshev(n);
            let mut expect = LaurentPoly::zero();
            for (&k, &c) in &ch.coeffs {
                expect += &LaurentPoly::delta().pow(k as u32).scale(&BigInt::from(c));
            }
            assert_eq!(us, expect);
        }
    }

    #[test]
    fn bracket_s1_is_bracket() {
        let d = fixtures::trefoil();
        let s1 = bracket_s(&d, 1, &opts()).unwrap();
        let b = crate::bracket::skein_bracket(&d, 22).unwrap();
        assert_eq!(s1, b);
    }

    #[test]
    fn unknot_jones_is_one() {
        let d = fixtures::unknot();
        for m in 2..=6 {
            let j = colored_jones_poly(&d, m, &opts()).unwrap();
            assert_eq!(j, LaurentPoly::one(), "color {}", m);
        }
    }

    #[test]
    fn trefoil_jones_polynomial() {
        // right-handed trefoil: V = -q^4 + q^3 + q
        let j = colored_jones(&fixtures::trefoil(), 2, &opts()).unwrap();
        assert!(j.is_integral());
        assert_eq!(j.coeff(4), BigInt::from(-1));
        assert_eq!(j.coeff(3), BigInt::from(1));
        assert_eq!(j.coeff(1), BigInt::from(1));
        assert_eq!(j.min_deg_quarters(), Some(4));
        assert_eq!(j.max_deg_quarters(), Some(16));
        // left-handed mirror
        let jl = colored_jones(&fixtures::trefoil_left(), 2, &opts()).unwrap();
        assert_eq!(jl.coeff(-4), BigInt::from(-1));
        assert_eq!(jl.coeff(-3), BigInt::from(1));
        assert_eq!(jl.coeff(-1), BigInt::from(1));
    }

    #[test]
    fn figure8_jones_polynomial() {
        // V(4_1) = q^-2 - q^-1 + 1 - q + q^2
        let j = colored_jones(&fixtures::figure8(), 2, &opts()).unwrap();
        for (e, c) in [(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)] {
            assert_eq!(j.coeff(e), BigInt::from(c), "coeff q^{}", e);
        }
    }

    #[test]
    fn adequate_degrees_sharp() {
        for (d, name) in [(fixtures::trefoil(), "trefoil"), (fixtures::figure8(), "fig8")] {
            for m in 2..=3 {
                let rep = degree_report(&d, m, &opts()).unwrap();
                assert_eq!(rep.d_n, rep.h_n, "{} at color {}", name, m);
            }
        }
    }

    #[test]
    fn trefoil_h2_value() {
        // right trefoil: M(D) = 5, w = 3: h_2 = -(5 + 0 - 9)/4 = 1
        assert_eq!(h_lower_bound(&fixtures::trefoil(), 2), Q4::from_int(1));
        assert_eq!(h_lower_bound(&fixtures::figure8(), 2), Q4::from_int(-2));
    }

    #[test]
    fn nonadequate_degree_gap() {
        // reduced non-A-adequate fixtures at m = 3: d(3) >= h_3 + 1
        for d in [fixtures::clasp2(), fixtures::pseudo_trefoil()] {
            let rep = degree_report(&d, 3, &opts()).unwrap();
            assert!(!rep.a_adequate);
            assert!(
                rep.d_n.quarters() >= rep.h_n.quarters() + 4,
                "d(3) = {}, h_3 = {}",
                rep.d_n,
                rep.h_n
            );
        }
    }

    #[test]
    fn m_gap_inequality() {
        // M(D^n) - M(D^{n-2}) > 4(n-1) for c >= 1
        for d in [fixtures::trefoil(), fixtures::figure8(), fixtures::clasp2()] {
            for n in 3..=4 {
                let gap = m_bound_cable(&d, n) - m_bound_cable(&d, n - 2);
                assert!(gap > 4 * (n as i64 - 1));
            }
        }
    }

    #[test]
    fn trefoil_tail_stable() {
        let rep = tail(&fixtures::trefoil(), 2, 4, &opts()).unwrap();
        assert!(beta_is_unit(&rep.betas[0]));
        // cross-consistency of the two indexings: section-4 beta_1 equals
        // section-1 beta_2
        let alt = beta_alt(&fixtures::trefoil(), 3, &opts()).unwrap();
        assert_eq!(
            rep.betas[0], alt,
            "indexing mismatch: {} vs {}",
            rep.betas[0], alt
        );
    }

    #[test]
    fn nonadequate_tail_vanishes() {
        for d in [fixtures::clasp2(), fixtures::pseudo_trefoil()] {
            let rep = tail(&d, 2, 4, &opts()).unwrap();
            assert!(betas_all_zero(&rep.betas), "betas {:?}", rep.betas);
        }
    }

    #[test]
    fn chi_a_values() {
        assert_eq!(chi_a(&fixtures::unknot()), 1);
        assert_eq!(chi_a(&fixtures::trefoil()), 2 - 3);
        // Euler characteristic identity chi_A = |s_A| - w - 2c_-
        for d in [fixtures::trefoil(), fixtures::trefoil_left(), fixtures::figure8(), fixtures::clasp2()] {
            let ctx = AllAContext::new(&d);
            let by_writhe = ctx.v as i64 - d.writhe() - 2 * d.negative_crossings() as i64;
            assert_eq!(chi_a(&d), by_writhe);
        }
    }

    #[test]
    fn s_n_degree_bounded_by_m() {
        for d in [fixtures::trefoil(), fixtures::clasp2(), fixtures::pseudo_trefoil()] {
            for n in 1..=3 {
                let s = bracket_s(&d, n, &opts()).unwrap();
                assert!(s.max_deg().unwrap() <= m_bound_cable(&d, n));
            }
        }
    }
}
