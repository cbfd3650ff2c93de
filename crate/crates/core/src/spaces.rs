//! Hodge–Deligne polynomials of the standard spaces: affine and projective spaces,
//! Grassmannians, Jacobians, rank-2 moduli of stable bundles, symmetric squares,
//! and the determinantal (Schubert) strata of a Grassmannian relative to a fixed
//! subspace.

use num_bigint::BigInt;

use crate::bipoly::{q_product, BiPoly, PolyError};
use crate::error::{require, HodgeError, Result};

/// `(uv)^m`, the polynomial of `C^m`.
pub fn hd_affine(m: i64) -> Result<BiPoly> {
    require(m >= 0, || format!("affine dimension must be >= 0, got {m}"))?;
    Ok(BiPoly::t_pow(m))
}

/// `1 + uv + ... + (uv)^n`.
pub fn hd_projective(n: i64) -> Result<BiPoly> {
    require(n >= 0, || format!("projective dimension must be >= 0, got {n}"))?;
    Ok(BiPoly::from_t_coeffs(std::iter::repeat_n(1, n as usize + 1)))
}

pub fn hd_grassmannian(k: i64, n: i64) -> Result<BiPoly> {
    Ok(BiPoly::gauss(k, n)?)
}

/// `(1+u)^g (1+v)^g`, independent of the degree of the Jacobian.
pub fn hd_jacobian(g: i64) -> Result<BiPoly> {
    require(g >= 0, || format!("genus must be >= 0, got {g}"))?;
    let base = (BiPoly::one() + BiPoly::u()) * (BiPoly::one() + BiPoly::v());
    Ok(base.pow(g as u32))
}

fn require_moduli_genus(g: i64) -> Result<()> {
    require(g >= 2, || format!("moduli formulas need genus >= 2, got {g}"))
}

/// Complex dimension `4(g-1)+1` of the moduli of rank-2 stable bundles.
pub fn dim_m2(g: i64) -> i64 {
    4 * (g - 1) + 1
}

fn one_plus(e: (i64, i64)) -> BiPoly {
    BiPoly::one() + BiPoly::monomial(e.0, e.1, 1)
}

fn one_minus(e: (i64, i64)) -> BiPoly {
    BiPoly::one() - BiPoly::monomial(e.0, e.1, 1)
}

/// `(1 - uv)(1 - u²v²)`, the common denominator of the rank-2 formulas.
fn rank_two_denominator() -> BiPoly {
    q_product(1..=2)
}

/// Rank 2, odd degree (smooth projective):
/// `(1+u)^g(1+v)^g [(1+u²v)^g(1+uv²)^g - u^g v^g (1+u)^g(1+v)^g] / ((1-uv)(1-u²v²))`.
pub fn hd_m2_odd(g: i64) -> Result<BiPoly> {
    require_moduli_genus(g)?;
    let gg = g as u32;
    let jac = hd_jacobian(g)?;
    let numerator = (one_plus((2, 1)) * one_plus((1, 2))).pow(gg) - jac.shift(g, g);
    let quotient = numerator.div_exact(&rank_two_denominator())?;
    Ok(&jac * &quotient)
}

/// The bracket of the rank-2 even-degree formula, before dividing by
/// `2(1-uv)(1-u²v²)`.
pub(crate) fn m2_even_numerator(g: i64) -> BiPoly {
    let gg = g as u32;
    let jac = (one_plus((1, 0)) * one_plus((0, 1))).pow(gg);
    let first = (&jac * &(one_plus((2, 1)) * one_plus((1, 2))).pow(gg)).scale(&BigInt::from(2));
    let inner = &(BiPoly::one() + BiPoly::monomial(g + 1, g + 1, 2)) - &BiPoly::t_pow(2);
    let second = &jac.pow(2) * &inner;
    let third = (one_minus((2, 0)) * one_minus((0, 2))).pow(gg) * one_minus((1, 1)).pow(2);
    first - second - third
}

/// Rank 2, even degree, stable locus (smooth, not compact). The polynomial
/// division happens first and the halving last, so every intermediate is integral.
pub fn hd_m2_even(g: i64) -> Result<BiPoly> {
    require_moduli_genus(g)?;
    let quotient = m2_even_numerator(g).div_exact(&rank_two_denominator())?;
    Ok(quotient.halve()?)
}

/// `(M × M)/(Z/2)` for smooth projective `M`: `½(p² + p(-u², -v²))`.
pub fn hd_sym2(p: &BiPoly) -> Result<BiPoly> {
    Ok((&(p * p) + &p.twist_sym()).halve()?)
}

/// Locus of `k`-planes in `C^N` meeting a fixed `j`-dimensional subspace in exactly
/// `mu` dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchubertParams {
    pub k: i64,
    pub n: i64,
    pub j: i64,
    pub mu: i64,
}

impl SchubertParams {
    pub fn new(k: i64, n: i64, j: i64, mu: i64) -> Result<Self> {
        let sp = Self { k, n, j, mu };
        sp.validate()?;
        Ok(sp)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { k, n, j, mu } = *self;
        if !(0..=n).contains(&k) || !(0..=n).contains(&j) {
            return Err(PolyError::BadRange { k, n }.into());
        }
        let (lo, hi) = mu_range(k, n, j);
        if mu < lo || mu > hi {
            return Err(HodgeError::Precondition(format!(
                "intersection dimension {mu} outside [{lo}, {hi}] for k={k}, N={n}, j={j}"
            )));
        }
        Ok(())
    }
}

/// Attainable intersection dimensions `[max(0, k+j-N), min(k, j)]`.
pub fn mu_range(k: i64, n: i64, j: i64) -> (i64, i64) {
    ((k + j - n).max(0), k.min(j))
}

/// `gauss(k-μ, N-j) · gauss(μ, j) · (uv)^{(j-μ)(k-μ)}`.
pub fn hd_schubert_stratum(sp: SchubertParams) -> Result<BiPoly> {
    sp.validate()?;
    let SchubertParams { k, n, j, mu } = sp;
    let base = BiPoly::gauss(k - mu, n - j)? * BiPoly::gauss(mu, j)?;
    Ok(base.shift((j - mu) * (k - mu), (j - mu) * (k - mu)))
}

/// `gauss(k, N)` minus the strata with `μ >= mu_min`. An empty range subtracts
/// nothing.
pub fn hd_schubert_complement(k: i64, n: i64, j: i64, mu_min: i64) -> Result<BiPoly> {
    if !(0..=n).contains(&k) || !(0..=n).contains(&j) {
        return Err(PolyError::BadRange { k, n }.into());
    }
    let (lo, hi) = mu_range(k, n, j);
    require(mu_min >= lo, || {
        format!("mu_min {mu_min} below the smallest attainable intersection {lo}")
    })?;
    let bad: BiPoly = (mu_min..=hi)
        .map(|mu| hd_schubert_stratum(SchubertParams { k, n, j, mu }))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok(BiPoly::gauss(k, n)? - bad)
}

/// `⌈k (1 - n1/nk)⌉ = ⌈k (nk - n1) / nk⌉`, computed exactly.
pub fn mu_threshold(k: i64, n1: i64, nk: i64) -> i64 {
    let num = k * (nk - n1);
    num.div_euclid(nk) + i64::from(num.rem_euclid(nk) != 0)
}

fn dualise(p: &BiPoly, dim: i64) -> Result<BiPoly> {
    require(dim >= 0, || format!("dimension must be >= 0, got {dim}"))?;
    let out = p.dual_transform(dim);
    out.assert_polynomial()
        .map_err(|source| HodgeError::NonPolynomialResult { dim, source })?;
    Ok(out)
}

/// Hodge–Poincaré polynomial of a smooth variety of dimension `dim` from its
/// Hodge–Deligne polynomial.
pub fn hp_from_hd_smooth(p: &BiPoly, dim: i64) -> Result<BiPoly> {
    dualise(p, dim)
}

pub fn hd_from_hp_smooth(p: &BiPoly, dim: i64) -> Result<BiPoly> {
    dualise(p, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn t(m: i64) -> BiPoly {
        BiPoly::t_pow(m)
    }

    fn at(p: &BiPoly, q: i64) -> i64 {
        p.eval_t(&BigInt::from(q)).unwrap().try_into().unwrap()
    }

    #[test]
    fn affine_and_projective() {
        assert_eq!(hd_affine(0).unwrap(), BiPoly::one());
        assert_eq!(hd_affine(1).unwrap(), t(1));
        assert_eq!(hd_affine(3).unwrap(), t(3));
        assert_eq!(hd_projective(0).unwrap(), BiPoly::one());
        assert_eq!(hd_projective(1).unwrap(), BiPoly::one() + t(1));
        assert_eq!(hd_projective(2).unwrap(), BiPoly::from_t_coeffs([1, 1, 1]));
        assert!(hd_affine(-1).is_err());
        for n in 0..6 {
            assert_eq!(hd_projective(n).unwrap(), BiPoly::gauss(1, n + 1).unwrap());
        }
    }

    #[test]
    fn jacobian() {
        assert_eq!(hd_jacobian(0).unwrap(), BiPoly::one());
        assert_eq!(
            hd_jacobian(1).unwrap(),
            BiPoly::from_terms([((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)])
        );
        // total Betti number of a real 2g-torus
        let d = hd_jacobian(2).unwrap().diag().unwrap();
        assert_eq!(d.eval(&BigInt::from(1)), BigInt::from(16));
    }

    #[test]
    fn m2_odd_shape() {
        for g in 2..=4 {
            let p = hd_m2_odd(g).unwrap();
            assert!(p.is_uv_symmetric());
            assert_eq!(p.total_degree(), Some(2 * dim_m2(g)));
            assert_eq!(p.dual_transform(dim_m2(g)), p);
            assert_eq!(p.constant_term(), BigInt::from(1));
        }
        assert_eq!(hd_m2_odd(2).unwrap().total_degree(), Some(10));
        assert!(hd_m2_odd(1).is_err());
    }

    #[test]
    fn m2_odd_genus_two_betti_numbers() {
        // Jac(X) × (intersection of two quadrics in P^5): (1+t)^4 · (1 + t^2 + 4t^3 + t^4 + t^6)
        let d = hd_m2_odd(2).unwrap().diag().unwrap();
        let jac = crate::bipoly::UniPoly::from_coeffs([1, 4, 6, 4, 1]);
        let fiber = crate::bipoly::UniPoly::from_coeffs([1, 0, 1, 4, 1, 0, 1]);
        assert_eq!(d, &jac * &fiber);
    }

    #[test]
    fn m2_even_genus_two_matches_kummer_complement() {
        // For g = 2 the fixed-determinant moduli is P^3 and its strictly semistable
        // locus is the Kummer surface: H = t^3 + t^2 + t + 1 - (1 + u^2 + 4uv + v^2 + u^2v^2).
        let kummer_complement =
            BiPoly::from_terms([((3, 3), 1), ((2, 0), -1), ((1, 1), -3), ((0, 2), -1)]);
        let expected = hd_jacobian(2).unwrap() * kummer_complement;
        assert_eq!(hd_m2_even(2).unwrap(), expected);
    }

    #[test]
    fn m2_even_shape() {
        for g in 2..=4 {
            let p = hd_m2_even(g).unwrap();
            assert!(p.is_uv_symmetric());
            assert_eq!(p.total_degree(), Some(2 * dim_m2(g)));
            // compactly supported cohomology of a non-compact variety: no H^0_c
            assert_eq!(p.constant_term(), BigInt::from(0));
            assert_eq!(p.coeff(dim_m2(g), dim_m2(g)), BigInt::from(1));
        }
    }

    #[test]
    fn sym2_examples() {
        assert_eq!(hd_sym2(&BiPoly::one()).unwrap(), BiPoly::one());
        let p1 = hd_projective(1).unwrap();
        assert_eq!(hd_sym2(&p1).unwrap(), hd_projective(2).unwrap());
        let j1 = hd_jacobian(1).unwrap();
        // ½((1+u)^2(1+v)^2 + (1-u^2)(1-v^2)), expanded by hand
        let expected = BiPoly::from_terms([
            ((0, 0), 1),
            ((1, 0), 1),
            ((0, 1), 1),
            ((1, 1), 2),
            ((2, 1), 1),
            ((1, 2), 1),
            ((2, 2), 1),
        ]);
        assert_eq!(hd_sym2(&j1).unwrap(), expected);
    }

    #[test]
    fn schubert_stratum_examples() {
        let s = |mu| hd_schubert_stratum(SchubertParams::new(2, 4, 2, mu).unwrap()).unwrap();
        assert_eq!(s(2), BiPoly::one());
        assert_eq!(at(&s(1), 2), 18);
        assert_eq!(at(&s(0), 2), 16);
        assert_eq!(s(1), BiPoly::from_t_coeffs([0, 1, 2, 1]));
        assert!(SchubertParams::new(2, 4, 2, 3).is_err());
        assert!(SchubertParams::new(3, 4, 3, 1).is_err());
        assert!(SchubertParams::new(5, 4, 3, 1).is_err());
    }

    #[test]
    fn schubert_complement_examples() {
        assert_eq!(hd_schubert_complement(2, 4, 2, 0).unwrap(), BiPoly::zero());
        assert_eq!(
            hd_schubert_complement(2, 4, 2, 3).unwrap(),
            BiPoly::gauss(2, 4).unwrap()
        );
        assert_eq!(at(&hd_schubert_complement(2, 4, 2, 1).unwrap(), 2), 16);
        assert!(hd_schubert_complement(2, 4, 3, 0).is_err());
    }

    #[test]
    fn threshold_is_exact_ceiling() {
        assert_eq!(mu_threshold(1, 1, 2), 1);
        assert_eq!(mu_threshold(2, 1, 2), 1);
        assert_eq!(mu_threshold(3, 1, 2), 2);
        assert_eq!(mu_threshold(3, 1, 3), 2);
        assert_eq!(mu_threshold(4, 1, 3), 3);
        assert_eq!(mu_threshold(0, 1, 3), 0);
    }

    #[test]
    fn hp_hd_duality() {
        for m in 0..5 {
            assert_eq!(hp_from_hd_smooth(&hd_affine(m).unwrap(), m).unwrap(), BiPoly::one());
        }
        let g = BiPoly::gauss(2, 5).unwrap();
        assert_eq!(hp_from_hd_smooth(&g, 6).unwrap(), g);
        let p = hd_m2_even(2).unwrap();
        let hp = hp_from_hd_smooth(&p, 5).unwrap();
        assert_eq!(hd_from_hp_smooth(&hp, 5).unwrap(), p);
        assert!(matches!(
            hp_from_hd_smooth(&g, 5),
            Err(HodgeError::NonPolynomialResult { dim: 5, .. })
        ));
    }
}
