//! Brute-force point counts of Grassmannians and Schubert strata over small
//! prime fields, used to check the polynomial formulas at `uv = q`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::bipoly::BiPoly;
use crate::error::{require, HodgeError, Result};
use crate::report::CheckReport;
use crate::spaces::{hd_schubert_stratum, mu_range, SchubertParams};

pub const MAX_FIELD: u32 = 5;
pub const MAX_DIM: usize = 6;
pub const GUARD_OVERRIDE_VAR: &str = "HODGE_GUARD_OVERRIDE";

fn guard_lifted() -> bool {
    std::env::var(GUARD_OVERRIDE_VAR).is_ok_and(|v| v == "1")
}

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn check_query(q: u32, n: usize, k: usize) -> Result<()> {
    require(is_prime(q), || format!("field size {q} is not prime"))?;
    require(k <= n, || format!("need k <= N, got k={k}, N={n}"))?;
    if (q > MAX_FIELD || n > MAX_DIM) && !guard_lifted() {
        return Err(HodgeError::GuardExceeded(format!(
            "q={q} (max {MAX_FIELD}), N={n} (max {MAX_DIM})"
        )));
    }
    Ok(())
}

/// A subspace of `F_q^N` given by its reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub rows: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Iterator over all `k`-dimensional subspaces of `F_q^N`, each exactly once.
pub struct SubspaceIter {
    q: u32,
    n: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    fresh: bool,
}

impl SubspaceIter {
    fn free_slots(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
        let mut free = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            for col in p + 1..n {
                if !pivots.contains(&col) {
                    free.push((row, col));
                }
            }
        }
        free
    }

    fn load(&mut self) {
        if let Some(p) = &self.pivots {
            self.free = Self::free_slots(self.n, p);
            self.counter = vec![0; self.free.len()];
            self.fresh = true;
        }
    }

    fn build(&self) -> Subspace {
        let pivots = self.pivots.as_ref().expect("active pattern");
        let mut rows = vec![vec![0u32; self.n]; pivots.len()];
        for (row, &p) in pivots.iter().enumerate() {
            rows[row][p] = 1;
        }
        for (&(r, c), &x) in self.free.iter().zip(&self.counter) {
            rows[r][c] = x;
        }
        Subspace { rows }
    }

    /// Advances the free-entry counter; false on wrap-around.
    fn bump(&mut self) -> bool {
        for x in self.counter.iter_mut() {
            *x += 1;
            if *x < self.q {
                return true;
            }
            *x = 0;
        }
        false
    }

    /// Next pivot pattern in lexicographic order.
    fn next_pattern(&mut self) {
        let n = self.n;
        let Some(p) = self.pivots.as_mut() else { return };
        let k = p.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if p[i] < n - k + i {
                p[i] += 1;
                for t in i + 1..k {
                    p[t] = p[t - 1] + 1;
                }
                self.load();
                return;
            }
        }
        self.pivots = None;
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            self.pivots.as_ref()?;
            if self.fresh {
                self.fresh = false;
                return Some(self.build());
            }
            if self.bump() {
                return Some(self.build());
            }
            self.next_pattern();
        }
    }
}

pub fn enum_subspaces(q: u32, n: usize, k: usize) -> Result<SubspaceIter> {
    check_query(q, n, k)?;
    let mut it = SubspaceIter {
        q,
        n,
        pivots: Some((0..k).collect()),
        free: Vec::new(),
        counter: Vec::new(),
        fresh: true,
    };
    it.load();
    Ok(it)
}

fn inv_mod(a: u32, q: u32) -> u32 {
    // Fermat: a^(q-2)
    let (mut base, mut e, mut acc) = (a as u64 % q as u64, q - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        e >>= 1;
    }
    acc as u32
}

/// Rank over `F_q` of the given rows.
pub fn rank_mod(rows: &[Vec<u32>], q: u32) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][c].is_multiple_of(q)) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][c], q);
        for x in m[rank].iter_mut() {
            *x = *x * inv % q;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + q * q - f * p % q) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim(π ∩ W) = dim π + dim W - rank[π; W]`.
pub fn intersection_dim(pi: &Subspace, w: &[Vec<u32>], q: u32) -> usize {
    let stacked: Vec<Vec<u32>> = pi.rows.iter().chain(w.iter()).cloned().collect();
    pi.dim() + rank_mod(w, q) - rank_mod(&stacked, q)
}

/// Basis of the coordinate subspace spanned by the first `j` unit vectors.
pub fn coordinate_subspace(n: usize, j: usize) -> Vec<Vec<u32>> {
    (0..j)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()
}

/// Number of `k`-subspaces meeting the coordinate `j`-subspace in dimension `mu`.
pub fn count_schubert(q: u32, n: usize, k: usize, j: usize, mu: usize) -> Result<u64> {
    require(j <= n, || format!("need j <= N, got j={j}, N={n}"))?;
    count_schubert_with(q, n, k, &coordinate_subspace(n, j), mu)
}

/// As [`count_schubert`] for an arbitrary `W` given by a basis.
pub fn count_schubert_with(q: u32, n: usize, k: usize, w: &[Vec<u32>], mu: usize) -> Result<u64> {
    require(w.iter().all(|r| r.len() == n), || "W basis has wrong length".into())?;
    Ok(schubert_histogram(q, n, k, w)?
        .get(mu)
        .copied()
        .unwrap_or(0))
}

/// Counts of `k`-subspaces by intersection dimension with `W`, indexed by `mu`.
pub fn schubert_histogram(q: u32, n: usize, k: usize, w: &[Vec<u32>]) -> Result<Vec<u64>> {
    let mut hist = vec![0u64; k + 1];
    for pi in enum_subspaces(q, n, k)? {
        hist[intersection_dim(&pi, w, q)] += 1;
    }
    Ok(hist)
}

fn eval_at(p: &BiPoly, q: u32) -> Result<BigInt> {
    Ok(p.eval_t(&BigInt::from(q))?)
}

fn check_block(q: u32, n: usize, k: usize) -> Result<CheckReport> {
    let mut report = CheckReport::pass(format!("q={q},N={n},k={k}"));
    let total: u64 = enum_subspaces(q, n, k)?.count() as u64;
    let expected = eval_at(&BiPoly::gauss(k as i64, n as i64)?, q)?;
    if BigInt::from(total) != expected {
        report.fail(format!("subspace count {total} != gauss value {expected}"));
    }
    for j in 0..=n {
        let hist = schubert_histogram(q, n, k, &coordinate_subspace(n, j))?;
        if hist.iter().sum::<u64>() != total {
            report.fail(format!("j={j}: histogram does not sum to {total}"));
        }
        let (lo, hi) = mu_range(k as i64, n as i64, j as i64);
        for (mu, &count) in hist.iter().enumerate() {
            let mu_i = mu as i64;
            let expected = if (lo..=hi).contains(&mu_i) {
                let sp = SchubertParams::new(k as i64, n as i64, j as i64, mu_i)?;
                eval_at(&hd_schubert_stratum(sp)?, q)?
            } else {
                BigInt::from(0)
            };
            if BigInt::from(count) != expected {
                report.fail(format!("j={j}, mu={mu}: counted {count}, polynomial gives {expected}"));
            }
        }
    }
    Ok(report)
}

/// Sweeps every `(q, N, k, j, mu)` with `N <= max_n` and compares counts with
/// Gaussian binomials and Schubert-stratum polynomials at `uv = q`.
pub fn verify_point_counts(max_n: usize, primes: &[u32]) -> Result<CheckReport> {
    let mut jobs = Vec::new();
    for &q in primes {
        for n in 1..=max_n {
            for k in 0..=n {
                check_query(q, n, k)?;
                jobs.push((q, n, k));
            }
        }
    }
    let blocks: Vec<Result<CheckReport>> = jobs
        .par_iter()
        .map(|&(q, n, k)| check_block(q, n, k))
        .collect();
    let mut all = CheckReport::pass(format!("point_counts(max_N={max_n}, primes={primes:?})"));
    for b in blocks {
        all.absorb(b?);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enum_subspaces(2, 2, 1).unwrap().count(), 3);
        for q in [2, 3, 5] {
            assert_eq!(enum_subspaces(q, 4, 0).unwrap().count(), 1);
        }
        assert_eq!(enum_subspaces(2, 4, 2).unwrap().count(), 35);
        assert_eq!(enum_subspaces(3, 3, 3).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_is_distinct_and_rref() {
        let all: Vec<_> = enum_subspaces(3, 4, 2).unwrap().collect();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|s| rank_mod(&s.rows, 3) == 2));
    }

    #[test]
    fn schubert_examples() {
        assert_eq!(count_schubert(2, 4, 2, 2, 1).unwrap(), 18);
        assert_eq!(count_schubert(2, 4, 2, 2, 2).unwrap(), 1);
        assert_eq!(count_schubert(2, 4, 2, 2, 0).unwrap(), 16);
    }

    #[test]
    fn guards() {
        assert!(matches!(enum_subspaces(4, 3, 1), Err(HodgeError::Precondition(_))));
        if !guard_lifted() {
            assert!(matches!(enum_subspaces(7, 3, 1), Err(HodgeError::GuardExceeded(_))));
            assert!(matches!(enum_subspaces(2, 7, 1), Err(HodgeError::GuardExceeded(_))));
        }
    }

    #[test]
    fn small_sweep() {
        assert!(verify_point_counts(4, &[2]).unwrap().passed);
        assert!(verify_point_counts(4, &[]).unwrap().passed);
    }
}
