//! Closed-form polynomials of `G_L(n, d, k)` for `n - k = 2`, the dimension and
//! non-emptiness criterion, Poincaré specialisation, and the comparison between
//! the closed statement for even `d` and the sum over strata.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::bipoly::{q_product, BiPoly, PolyError, UniPoly};
use crate::error::{require, HodgeError, Result};
use crate::report::CheckReport;
use crate::spaces::hd_m2_odd;
use crate::strata::{strata_breakdown, ModuliParams};

impl ModuliParams {
    /// `β = n²(g-1) + 1 - k(k - d + n(g-1))`.
    pub fn beta(&self) -> i64 {
        let Self { n, d, k, g } = *self;
        n * n * (g - 1) + 1 - k * (k - d + n * (g - 1))
    }

    /// `d > 0`, `k <= n + (d-n)/g` and `(n,d,k) != (n,n,n)`, for `n >= 2`, `0 < k <= n`.
    pub fn is_nonempty(&self) -> bool {
        let Self { n, d, k, g } = *self;
        if n < 2 || k <= 0 || k > n || g < 1 {
            return false;
        }
        // k <= n + (d - n)/g  <=>  g k <= g n + d - n  (g > 0)
        d > 0 && g * k <= g * n + d - n && !(d == n && k == n)
    }

    pub fn gcd_nk_d(&self) -> i64 {
        self.nk().gcd(&self.d)
    }

    pub fn gcd_ndk(&self) -> i64 {
        self.n.gcd(&self.d).gcd(&self.k)
    }
}

pub fn beta_dim(p: &ModuliParams) -> i64 {
    p.beta()
}

pub fn is_nonempty(p: &ModuliParams) -> bool {
    p.is_nonempty()
}

fn require_nonempty(p: &ModuliParams) -> Result<()> {
    require(p.is_nonempty(), || {
        format!("G_L({}, {}, {}) is empty for g = {}", p.n, p.d, p.k, p.g)
    })
}

fn one_plus(eu: i64, ev: i64) -> BiPoly {
    BiPoly::one() + BiPoly::monomial(eu, ev, 1)
}

fn one_minus(eu: i64, ev: i64) -> BiPoly {
    BiPoly::one() - BiPoly::monomial(eu, ev, 1)
}

/// Coprime case, `n - k = 2` and `d` odd. The displayed quotient is divided out
/// in one step and checked against `hd_m2_odd(g) · gauss(k, N)`.
pub fn hd_gl_coprime(p: &ModuliParams) -> Result<BiPoly> {
    p.validate()?;
    require(p.nk() == 2, || format!("need n-k = 2, got {}", p.nk()))?;
    require(p.d % 2 != 0, || format!("need gcd(2, d) = 1, got d = {}", p.d))?;
    require_nonempty(p)?;
    let (g, k) = (p.g, p.k);
    let n = 2 * (g - 1) + p.d;
    let gg = g as u32;
    let jac = (one_plus(1, 0) * one_plus(0, 1)).pow(gg);
    let bracket = (one_plus(2, 1) * one_plus(1, 2)).pow(gg) - jac.shift(g, g);
    let numerator = jac * bracket * q_product(n - k + 1..=n);
    let denominator = q_product(1..=2) * q_product(1..=k);
    let division_form = numerator.div_exact(&denominator)?;

    let product_form = hd_m2_odd(g)? * BiPoly::gauss(k, n)?;
    if division_form != product_form {
        return Err(HodgeError::Inconsistent(format!(
            "division and product forms disagree for {p:?}"
        )));
    }
    Ok(division_form)
}

/// How to read the affine factor inside the sums of the closed even-degree formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClosedFormReading {
    /// Exactly as displayed: `(uv)^{μ(d/2 + (g-1) - k + μ)}`.
    Literal,
    /// The Schubert-stratum factor `(uv)^{(j-μ)(k-μ)}` with `j = d/2 + (g-1)`.
    HodgeDeligneExponent,
}

/// Pieces shared by both parity branches of the closed formula.
struct ClosedPieces {
    jac: BiPoly,
    jac_sq: BiPoly,
    twisted: BiPoly,
    t: BiPoly,
}

impl ClosedPieces {
    fn new(g: i64) -> Self {
        let gg = g as u32;
        let base = one_plus(1, 0) * one_plus(0, 1);
        Self {
            jac: base.pow(gg),
            jac_sq: base.pow(2 * gg),
            twisted: (one_minus(2, 0) * one_minus(0, 2)).pow(gg),
            t: BiPoly::t_pow(1),
        }
    }

    /// `½(1+u)^{2g}(1+v)^{2g} + ½(1-u²)^g(1-v²)^g`.
    fn half_sum(&self) -> Result<BiPoly> {
        Ok((&self.jac_sq + &self.twisted).halve()?)
    }
}

fn q_ratio(from: i64, to: i64, bottom: i64) -> Result<BiPoly> {
    Ok(q_product(from..=to).div_exact(&q_product(1..=bottom))?)
}

/// The bracketed sum `Σ_μ (uv)^{e(μ)} · [k-μ]-ratio · [μ]-ratio` of the statement.
fn closed_sum(k: i64, j: i64, mu_from: i64, reading: ClosedFormReading) -> Result<BiPoly> {
    let mut out = BiPoly::zero();
    for mu in mu_from..=k.min(j) {
        let e = match reading {
            ClosedFormReading::Literal => mu * (j - k + mu),
            ClosedFormReading::HodgeDeligneExponent => (j - mu) * (k - mu),
        };
        let left = q_ratio(j - k + mu + 1, j, k - mu)?;
        let right = q_ratio(j - mu + 1, j, mu)?;
        out = out + (left * right).shift(e, e);
    }
    Ok(out)
}

/// The even-degree closed formula, transcribed term by term per parity of `k`.
pub fn hd_gl_noncoprime_closed(p: &ModuliParams, reading: ClosedFormReading) -> Result<BiPoly> {
    p.validate()?;
    require(p.nk() == 2, || format!("need n-k = 2, got {}", p.nk()))?;
    require(p.d % 2 == 0, || format!("need gcd(2, d) != 1, got d = {}", p.d))?;
    require_nonempty(p)?;
    let (g, k, d) = (p.g, p.k, p.d);
    let gg = g as u32;
    let n = 2 * (g - 1) + d;
    let j = d / 2 + (g - 1);
    let pc = ClosedPieces::new(g);

    let m2_bracket = (&pc.jac * &(one_plus(2, 1) * one_plus(1, 2)).pow(gg)).scale(&BigInt::from(2))
        - &pc.jac_sq * &(one_plus(g + 1, g + 1) + BiPoly::monomial(g + 1, g + 1, 1) - BiPoly::t_pow(2))
        - &pc.twisted * &one_minus(1, 1).pow(2);
    let m2 = m2_bracket.div_exact(&q_product(1..=2))?.halve()?;
    let grass = q_ratio(n - k + 1, n, k)?;

    let half = pc.half_sum()?;
    let be = (&pc.jac_sq - &pc.jac) * q_product(std::iter::once(g - 1)).div_exact(&q_product(1..=1))?;
    let bep = &pc.jac * &q_product(std::iter::once(g)).div_exact(&q_product(1..=1))?;
    let first_coeff = be + bep + half.clone();

    let mu_from = if k % 2 == 0 { k / 2 } else { (k + 1) / 2 };
    let sum = closed_sum(k, j, mu_from, reading)?;

    let second_coeff = &half - &(&one_minus(1, 1) * &pc.jac);
    let mut total = &m2 * &grass + first_coeff * (&grass - &sum) - second_coeff * sum;

    if k % 2 == 0 {
        let one_plus_t = BiPoly::one() + pc.t.clone();
        let sign_pattern = BiPoly::one() - one_plus_t.pow(2) + one_plus_t;
        let third_coeff = &half - &(sign_pattern * pc.jac.clone());
        let num = q_product(j - k / 2 + 1..=j);
        let den = q_product(1..=k / 2);
        let squared = (&num * &num).div_exact(&(&den * &den))?;
        total = total + third_coeff * squared;
    }
    Ok(total)
}

/// The authoritative polynomial: closed form for odd `d`, strata sum for even `d`.
pub fn hd_gl(p: &ModuliParams) -> Result<BiPoly> {
    p.require_rank_two_quotient()?;
    require_nonempty(p)?;
    if p.d % 2 == 1 {
        hd_gl_coprime(p)
    } else {
        Ok(strata_breakdown(p)?.total)
    }
}

/// Term-level diff of the literal closed statement against the strata sum.
pub fn compare_closed_vs_sum(p: &ModuliParams) -> Result<CheckReport> {
    compare_closed_reading(p, ClosedFormReading::Literal)
}

pub fn compare_closed_reading(p: &ModuliParams, reading: ClosedFormReading) -> Result<CheckReport> {
    p.require_rank_two_quotient()?;
    require(p.d % 2 == 0, || format!("closed-vs-sum comparison needs d even, got d = {}", p.d))?;
    let closed = hd_gl_noncoprime_closed(p, reading)?;
    let sum = strata_breakdown(p)?.total;
    let name = format!(
        "closed_vs_sum[{:?}](n={},d={},k={},g={})",
        reading, p.n, p.d, p.k, p.g
    );
    Ok(CheckReport::compare(name, &closed, &sum))
}

/// A place where the closed statement might not match its derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SuspectTerm {
    /// `(uv)^{μ(d/2+(g-1)-k+μ)}` in both sums, against the stratum factor `(uv)^{(j-μ)(k-μ)}`.
    AffineExponent,
    /// The coefficient `1 - (1+uv)² + (1+uv)` of the last bracket (k even).
    IntersectionSign,
    /// Lower exponent `d/2+(g-1)+k/2+1` of the squared Gaussian factor in the
    /// `SE'` derivation, against `d/2+(g-1)-k/2+1` in the statement (k even).
    HalfGaussExponent,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuspectFinding {
    pub term: SuspectTerm,
    pub finding: String,
    pub explains_diff: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormDiagnosis {
    pub params: ModuliParams,
    pub literal: CheckReport,
    pub findings: Vec<SuspectFinding>,
}

/// Runs the literal comparison and checks each suspect term in isolation.
pub fn diagnose_closed_form(p: &ModuliParams) -> Result<ClosedFormDiagnosis> {
    let literal = compare_closed_vs_sum(p)?;
    let mut findings = Vec::new();

    let hd = compare_closed_reading(p, ClosedFormReading::HodgeDeligneExponent)?;
    findings.push(SuspectFinding {
        term: SuspectTerm::AffineExponent,
        finding: if hd.passed {
            "replacing the exponent by (j-mu)(k-mu) makes the statement equal to the strata sum".into()
        } else {
            format!(
                "replacing the exponent leaves {} mismatched terms",
                hd.diff.len()
            )
        },
        explains_diff: hd.passed && !literal.passed,
    });

    if p.k % 2 == 0 {
        // statement: ½(J²+T) - (1-(1+t)²+(1+t))J ; derivation: B_SE + ((1+t)²-(1+t))J
        let pc = ClosedPieces::new(p.g);
        let one_plus_t = BiPoly::one() + pc.t.clone();
        let stated = &pc.half_sum()? - &((BiPoly::one() - one_plus_t.pow(2) + one_plus_t.clone()) * pc.jac.clone());
        let derived = crate::strata::hd_base_se(p.g)? + (one_plus_t.pow(2) - one_plus_t) * pc.jac.clone();
        let same = stated == derived;
        findings.push(SuspectFinding {
            term: SuspectTerm::IntersectionSign,
            finding: if same {
                "coefficient is identical to the derivation's B_SE + ((1+uv)^2-(1+uv))J".into()
            } else {
                "coefficient differs from the derivation's B_SE + ((1+uv)^2-(1+uv))J".into()
            },
            explains_diff: false,
        });

        let j = p.d / 2 + (p.g - 1);
        let num = q_product(j + p.k / 2 + 1..=j);
        let den = q_product(1..=p.k / 2);
        let finding = match (&num * &num).div_exact(&(&den * &den)) {
            Err(PolyError::NotDivisible { .. }) => {
                "the +k/2 reading is not a polynomial; the statement's -k/2 (gauss(k/2, j)^2) is used"
                    .to_string()
            }
            Ok(q) => format!("the +k/2 reading yields {q}"),
            Err(e) => format!("the +k/2 reading fails: {e}"),
        };
        findings.push(SuspectFinding {
            term: SuspectTerm::HalfGaussExponent,
            finding,
            explains_diff: false,
        });
    }
    Ok(ClosedFormDiagnosis {
        params: *p,
        literal,
        findings,
    })
}

/// `u = v` specialisation of [`hd_gl`].
#[derive(Debug, Clone, Serialize)]
pub struct PoincareResult {
    pub poly: UniPoly,
    /// Set when `gcd(n, d, k) != 1`: the moduli space need not be smooth and
    /// projective, so the output is only the virtual Poincaré polynomial.
    pub virtual_only: bool,
}

pub fn poincare_gl(p: &ModuliParams) -> Result<PoincareResult> {
    let poly = hd_gl(p)?.diag()?;
    Ok(PoincareResult {
        poly,
        virtual_only: p.gcd_ndk() != 1,
    })
}

/// Everything reported alongside the polynomial of `G_L(n, d, k)`.
#[derive(Debug, Clone, Serialize)]
pub struct GlReport {
    pub params: ModuliParams,
    pub beta: i64,
    pub nonempty: bool,
    pub gcd_nk_d: i64,
    pub gcd_ndk: i64,
    pub polynomial: BiPoly,
    pub poincare: UniPoly,
    pub virtual_only: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_vs_sum: Option<CheckReport>,
    pub warnings: Vec<String>,
}

pub fn gl_report(p: &ModuliParams) -> Result<GlReport> {
    p.require_rank_two_quotient()?;
    require_nonempty(p)?;
    let (polynomial, closed_vs_sum, warnings) = if p.d % 2 == 1 {
        (hd_gl_coprime(p)?, None, Vec::new())
    } else {
        let b = strata_breakdown(p)?;
        let warnings = b.warnings();
        (b.total, Some(compare_closed_vs_sum(p)?), warnings)
    };
    let poincare = polynomial.diag()?;
    Ok(GlReport {
        params: *p,
        beta: p.beta(),
        nonempty: true,
        gcd_nk_d: p.gcd_nk_d(),
        gcd_ndk: p.gcd_ndk(),
        polynomial,
        poincare,
        virtual_only: p.gcd_ndk() != 1,
        closed_vs_sum,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::{hd_strata_sum, hd_w1};

    fn mp(n: i64, d: i64, k: i64, g: i64) -> ModuliParams {
        ModuliParams::new(n, d, k, g).unwrap()
    }

    #[test]
    fn beta_examples() {
        assert_eq!(mp(3, 1, 1, 2).beta(), 7);
        assert_eq!(mp(3, 2, 1, 2).beta(), 8);
        // k = 0: dimension of M(n, d)
        let m = ModuliParams { n: 3, d: 2, k: 0, g: 2 };
        assert_eq!(m.beta(), 9 + 1);
    }

    #[test]
    fn nonempty_examples() {
        for n in 2..6 {
            assert!(!ModuliParams { n, d: n, k: n, g: 2 }.is_nonempty());
        }
        assert!(mp(3, 1, 1, 2).is_nonempty());
        assert!(!ModuliParams { n: 3, d: 0, k: 1, g: 2 }.is_nonempty());
        // 1 <= 3 + (1-3)/2 = 2 but 3 > 2
        assert!(!ModuliParams { n: 3, d: 1, k: 3, g: 2 }.is_nonempty());
        // boundary: k = n + (d-n)/g exactly, 2 = 3 + (1-3)/2
        assert!(ModuliParams { n: 3, d: 1, k: 2, g: 2 }.is_nonempty());
    }

    #[test]
    fn coprime_matches_open_stratum() {
        let p = mp(3, 1, 1, 2);
        let h = hd_gl_coprime(&p).unwrap();
        assert_eq!(h, hd_m2_odd(2).unwrap() * BiPoly::gauss(1, 3).unwrap());
        assert_eq!(h, hd_w1(&p).unwrap());
        assert_eq!(h.total_degree(), Some(2 * p.beta()));
        assert_eq!(h.dual_transform(p.beta()), h);
    }

    #[test]
    fn coprime_rejects_even_degree() {
        assert!(hd_gl_coprime(&mp(3, 2, 1, 2)).is_err());
        assert!(hd_gl_coprime(&mp(4, 1, 1, 2)).is_err());
    }

    #[test]
    fn dispatch() {
        let p = mp(3, 1, 1, 2);
        assert_eq!(hd_gl(&p).unwrap(), hd_gl_coprime(&p).unwrap());
        for q in [mp(3, 2, 1, 2), mp(4, 2, 2, 2)] {
            assert_eq!(hd_gl(&q).unwrap(), hd_strata_sum(&q).unwrap());
        }
    }

    #[test]
    fn closed_form_basic_shape() {
        for p in [mp(3, 2, 1, 2), mp(4, 2, 2, 2)] {
            let c = hd_gl_noncoprime_closed(&p, ClosedFormReading::Literal).unwrap();
            assert!(c.is_uv_symmetric());
            assert!(c.is_polynomial());
        }
    }

    #[test]
    fn hd_exponent_reading_matches_strata_sum() {
        for p in [mp(3, 2, 1, 2), mp(4, 2, 2, 2), mp(3, 4, 1, 2), mp(5, 2, 3, 2), mp(6, 4, 4, 2)] {
            let r = compare_closed_reading(&p, ClosedFormReading::HodgeDeligneExponent).unwrap();
            assert!(r.passed, "{p:?}: {:?}", r.diff);
        }
    }

    #[test]
    fn compare_rejects_odd_degree() {
        assert!(compare_closed_vs_sum(&mp(3, 1, 1, 2)).is_err());
    }

    #[test]
    fn diagnosis_names_affine_exponent() {
        let diag = diagnose_closed_form(&mp(4, 2, 2, 2)).unwrap();
        assert!(!diag.literal.passed);
        let affine = &diag.findings[0];
        assert_eq!(affine.term, SuspectTerm::AffineExponent);
        assert!(affine.explains_diff);
        assert!(diag.findings[1].finding.starts_with("coefficient is identical"));
        assert!(diag.findings[2].finding.contains("not a polynomial"));
    }

    #[test]
    fn poincare_flags_non_coprime() {
        let r = poincare_gl(&mp(3, 1, 1, 2)).unwrap();
        assert!(!r.virtual_only);
        assert_eq!(r.poly.coeff(0), BigInt::from(1));
        // P(1) = 3 · (total Betti number of M(2,1) for g = 2, which is 4^2·8 = 128)
        assert_eq!(r.poly.eval(&BigInt::from(1)), BigInt::from(3 * 128));
        assert!(poincare_gl(&mp(4, 2, 2, 2)).unwrap().virtual_only);
        assert!(!poincare_gl(&mp(3, 2, 1, 2)).unwrap().virtual_only);
    }

    #[test]
    fn report_contents() {
        let r = gl_report(&mp(3, 1, 1, 2)).unwrap();
        assert_eq!(r.beta, 7);
        assert!(r.closed_vs_sum.is_none());
        let r2 = gl_report(&mp(3, 2, 1, 2)).unwrap();
        assert!(r2.closed_vs_sum.is_some());
    }
}
