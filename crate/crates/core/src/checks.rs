//! Consistency suites shared by the command-line tool and the test targets.

use num_traits::{One, Signed};

use crate::bipoly::BiPoly;
use crate::error::Result;
use crate::fforacle::verify_point_counts;
use crate::moduli::compare_closed_vs_sum;
use crate::report::CheckReport;
use crate::spaces::{hd_schubert_complement, hd_schubert_stratum, mu_range, SchubertParams};
use crate::strata::{hp_complement_bracket, strata_breakdown, ModuliParams};

/// The fixed even-degree grid used by the strata suite.
pub const STRATA_GRID: [(i64, i64, i64, i64); 5] =
    [(3, 2, 1, 2), (3, 4, 1, 2), (4, 2, 2, 2), (5, 2, 3, 2), (3, 2, 1, 3)];

pub fn check_oracle() -> Result<CheckReport> {
    verify_point_counts(5, &[2, 3])
}

/// `Σ_μ hd_schubert_stratum = gauss(k, N)` for `k, j <= N <= max_n`.
pub fn check_completeness(max_n: i64) -> Result<CheckReport> {
    let mut report = CheckReport::pass(format!("schubert_completeness(N<={max_n})"));
    for n in 0..=max_n {
        for k in 0..=n {
            let gauss = BiPoly::gauss(k, n)?;
            for j in 0..=n {
                let (lo, hi) = mu_range(k, n, j);
                let mut sum = BiPoly::zero();
                for mu in lo..=hi {
                    sum = sum + hd_schubert_stratum(SchubertParams::new(k, n, j, mu)?)?;
                }
                if sum != gauss {
                    report.fail(format!("k={k} N={n} j={j}: sum of strata != gauss(k,N)"));
                }
            }
        }
    }
    Ok(report)
}

/// The dual-form bracket equals `dual_transform(hd_schubert_complement, k(N-k))`
/// for every `k, j <= N <= max_n` and every threshold in the `μ` range.
pub fn check_duality(max_n: i64) -> Result<CheckReport> {
    let mut report = CheckReport::pass(format!("complement_duality(N<={max_n})"));
    for n in 0..=max_n {
        for k in 0..=n {
            for j in 0..=n {
                let (lo, hi) = mu_range(k, n, j);
                for threshold in lo..=hi + 1 {
                    let hp = hp_complement_bracket(k, n, j, threshold)?;
                    let hd = hd_schubert_complement(k, n, j, threshold)?;
                    if hp != hd.dual_transform(k * (n - k)) {
                        report.fail(format!("k={k} N={n} j={j} threshold={threshold}"));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Validity checks on the strata sum for one parameter set.
pub fn check_strata_case(p: &ModuliParams) -> Result<CheckReport> {
    let name = format!("strata_sum(n={},d={},k={},g={})", p.n, p.d, p.k, p.g);
    let b = strata_breakdown(p)?;
    let h = &b.total;
    let mut r = CheckReport::pass(name);
    if !h.is_polynomial() {
        r.fail("not a polynomial");
    }
    if !h.is_uv_symmetric() {
        r.fail("not u<->v symmetric");
    }
    if !h.constant_term().is_one() {
        r.fail(format!("constant term is {}, expected 1", h.constant_term()));
    }
    if p.k % 2 == 1 {
        let beta = p.beta();
        if h.dual_transform(beta) != *h {
            r.fail(format!("not palindromic of weight {beta}"));
        }
        let neg: Vec<String> = h
            .diag()?
            .terms()
            .filter(|(_, c)| c.is_negative())
            .map(|(e, c)| format!("t^{e}:{c}"))
            .collect();
        if !neg.is_empty() {
            r.fail(format!("negative diagonal coefficients: {}", neg.join(" ")));
        }
    }
    Ok(r)
}

/// Strata validity on [`STRATA_GRID`] followed by the closed-vs-sum diffs.
pub fn check_strata() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for &(n, d, k, g) in &STRATA_GRID {
        let p = ModuliParams::new(n, d, k, g)?;
        out.push(check_strata_case(&p)?);
        out.push(compare_closed_vs_sum(&p)?);
    }
    Ok(out)
}
