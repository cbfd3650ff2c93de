//! Discrete invariants: Jordan–Hölder types, parameter counts of the
//! quotient-classifying sets and codimension lower bounds.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{require, HodgeError, Result};
use crate::strata::ModuliParams;

/// Ordered list of `(n_i, d_i)` with common slope, summing to `(n-k, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JHType {
    pub parts: Vec<(i64, i64)>,
}

impl JHType {
    pub fn new(parts: Vec<(i64, i64)>) -> Self {
        Self { parts }
    }

    pub fn ranks(&self) -> Vec<i64> {
        self.parts.iter().map(|&(n, _)| n).collect()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn validate(&self, nk: i64, d: i64) -> Result<()> {
        require(!self.parts.is_empty(), || "type has no parts".into())?;
        require(self.parts.iter().all(|&(n, _)| n > 0), || {
            format!("ranks must be positive: {:?}", self.parts)
        })?;
        let (sn, sd) = self
            .parts
            .iter()
            .fold((0, 0), |(a, b), &(n, d)| (a + n, b + d));
        require(sn == nk && sd == d, || {
            format!("parts sum to ({sn}, {sd}), expected ({nk}, {d})")
        })?;
        // d_i / n_i = d / nk for every part, by cross-multiplication
        require(self.parts.iter().all(|&(ni, di)| di * nk == d * ni), || {
            format!("slopes differ from {d}/{nk}: {:?}", self.parts)
        })
    }

    /// `Σ_{i<j} n_i n_j`.
    pub fn cross_rank_sum(&self) -> i64 {
        let r = self.ranks();
        let mut s = 0;
        for i in 0..r.len() {
            for j in i + 1..r.len() {
                s += r[i] * r[j];
            }
        }
        s
    }
}

/// `dim M̃(m, δ) = m²(g-1) + 1`.
pub fn dim_tilde(m: i64, g: i64) -> i64 {
    m * m * (g - 1) + 1
}

/// All ordered `r`-part types for `(nk, d)`.
pub fn admissible_types(nk: i64, d: i64, r: i64) -> Result<Vec<JHType>> {
    require(nk >= 1 && r >= 1, || format!("need nk >= 1 and r >= 1, got nk={nk}, r={r}"))?;
    let step = nk / nk.gcd(&d);
    let units = nk / step;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r as usize);
    compositions(units, r, &mut current, &mut |c| {
        out.push(JHType::new(
            c.iter()
                .map(|&m| {
                    let ni = m * step;
                    (ni, ni * d / nk)
                })
                .collect(),
        ));
    });
    Ok(out)
}

fn compositions(total: i64, parts: i64, current: &mut Vec<i64>, emit: &mut impl FnMut(&[i64])) {
    if parts == 1 {
        if total >= 1 {
            current.push(total);
            emit(current);
            current.pop();
        }
        return;
    }
    for first in 1..=total - (parts - 1) {
        current.push(first);
        compositions(total - first, parts - 1, current, emit);
        current.pop();
    }
}

/// `(n', d', k')` describing a subextension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubextensionTriple {
    pub n: i64,
    pub d: i64,
    pub k: i64,
}

/// Enumerates all triples admissible for `p`. `k' = 0` is excluded.
pub fn subextension_triples(p: &ModuliParams) -> Vec<SubextensionTriple> {
    let nk = p.nk();
    let mut out = Vec::new();
    for m in 1..nk {
        if (p.d * m) % nk != 0 {
            continue;
        }
        let dp = p.d * m / nk;
        let kmax = p.k.min((p.g - 1) * m + dp);
        for kp in 1..=kmax {
            let np = m + kp;
            // k/n >= k'/n'
            if p.k * np >= kp * p.n {
                out.push(SubextensionTriple { n: np, d: dp, k: kp });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Bound {
    Finite(i64),
    Infinity,
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinity => f.write_str("infinity"),
        }
    }
}

/// `min ((g-1)n' - k'g + d')(k - k')` over the admissible triples.
pub fn codim_s_bound(p: &ModuliParams) -> Result<Bound> {
    p.validate()?;
    require(p.nk() >= 2, || format!("need n-k >= 2, got {}", p.nk()))?;
    let g = p.g;
    Ok(subextension_triples(p)
        .iter()
        .map(|t| ((g - 1) * t.n - t.k * g + t.d) * (p.k - t.k))
        .min()
        .map_or(Bound::Infinity, Bound::Finite))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodimWBound {
    pub p: i64,
    pub improved: i64,
    /// `min (Σ_{i<j} n_i n_j)(g-1)` over admissible types with at least two parts.
    pub baseline: i64,
}

pub fn codim_w_bound(p: &ModuliParams) -> Result<CodimWBound> {
    p.validate()?;
    codim_w_bound_raw(p.nk(), p.d, p.g)
}

pub fn codim_w_bound_raw(nk: i64, d: i64, g: i64) -> Result<CodimWBound> {
    require(nk >= 1 && g >= 2, || format!("need n-k >= 1 and g >= 2, got {nk}, {g}"))?;
    let pg = nk.gcd(&d);
    if pg < 2 {
        return Err(HodgeError::NotApplicable(format!(
            "gcd(n-k, d) = gcd({nk}, {d}) = 1"
        )));
    }
    let num = (pg - 1) * nk * nk * (g - 1);
    let den = pg * pg;
    if num % den != 0 {
        return Err(HodgeError::Inconsistent(format!("{num}/{den} is not an integer")));
    }
    let improved = num / den;
    let mut baseline: Option<i64> = None;
    for r in 2..=pg {
        for t in admissible_types(nk, d, r)? {
            let v = t.cross_rank_sum() * (g - 1);
            baseline = Some(baseline.map_or(v, |b| b.min(v)));
        }
    }
    let baseline = baseline.ok_or_else(|| {
        HodgeError::Inconsistent(format!("no admissible type with two parts for ({nk}, {d})"))
    })?;
    if improved > baseline {
        return Err(HodgeError::Inconsistent(format!(
            "improved bound {improved} exceeds baseline {baseline}"
        )));
    }
    Ok(CodimWBound { p: pg, improved, baseline })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum R2Variant {
    E,
    Eprime,
    SE,
    SEprime,
}

impl R2Variant {
    fn name(self) -> &'static str {
        match self {
            R2Variant::E => "E",
            R2Variant::Eprime => "Eprime",
            R2Variant::SE => "SE",
            R2Variant::SEprime => "SEprime",
        }
    }
}

/// Parameter count for the `r = 2` sets. Only ranks enter the formulas.
pub fn param_count_r2(nk: i64, g: i64, n1: i64, variant: R2Variant) -> Result<i64> {
    require(0 < n1 && n1 < nk, || format!("need 0 < n1 < nk, got n1={n1}, nk={nk}"))?;
    require(g >= 2, || format!("g >= 2 required, got {g}"))?;
    if matches!(variant, R2Variant::Eprime | R2Variant::SEprime) && 2 * n1 != nk {
        return Err(HodgeError::BadVariant {
            variant: variant.name(),
            requirement: format!("n1 = nk/2, got n1={n1}, nk={nk}"),
        });
    }
    let g1 = g - 1;
    Ok(match variant {
        R2Variant::E => dim_tilde(nk, g) - n1 * (nk - n1) * g1,
        R2Variant::Eprime => dim_tilde(nk, g) - 2 * n1 * n1 * g1,
        R2Variant::SE => dim_tilde(n1, g) + dim_tilde(nk - n1, g),
        R2Variant::SEprime => dim_tilde(n1, g),
    })
}

/// `dim M̃(nk) - Σ_{i<j} n_i n_j (g-1)`.
pub fn param_count_general(nk: i64, d: i64, g: i64, ty: &JHType) -> Result<i64> {
    ty.validate(nk, d)?;
    require(g >= 2, || format!("g >= 2 required, got {g}"))?;
    Ok(dim_tilde(nk, g) - ty.cross_rank_sum() * (g - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum R3Set {
    S11,
    S31,
    S12_12,
}

pub fn param_count_r3(nk: i64, d: i64, g: i64, ty: &JHType, set: R3Set) -> Result<i64> {
    ty.validate(nk, d)?;
    require(g >= 2, || format!("g >= 2 required, got {g}"))?;
    let name = match set {
        R3Set::S11 => "S11",
        R3Set::S31 => "S31",
        R3Set::S12_12 => "S12_12",
    };
    if ty.len() != 3 {
        return Err(HodgeError::BadVariant {
            variant: name,
            requirement: format!("a three-part type, got {} parts", ty.len()),
        });
    }
    let [(n1, d1), (n2, d2), (n3, _)] = [ty.parts[0], ty.parts[1], ty.parts[2]];
    let g1 = g - 1;
    let top = dim_tilde(nk, g);
    Ok(match set {
        R3Set::S11 => top - n1 * n2 * g1 - n3 * (n1 + n2) * g1,
        R3Set::S31 => top - (n1 + n2) * n3 * g1 - 2 * n1 * n2 * g1 + 1,
        R3Set::S12_12 => {
            if n1 != n2 || d1 != d2 {
                return Err(HodgeError::BadVariant {
                    variant: name,
                    requirement: format!("(n1,d1) = (n2,d2), got ({n1},{d1}) and ({n2},{d2})"),
                });
            }
            top - 3 * dim_tilde(n1, g) - 2 * n1 * n3 * g1 + 2
        }
    })
}
