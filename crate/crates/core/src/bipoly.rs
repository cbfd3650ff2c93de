//! Exact sparse bivariate polynomials in `u`, `v` over arbitrary-precision integers.
//!
//! Exponents are signed so that Laurent intermediates (for example the output of
//! [`BiPoly::dual_transform`]) are representable. Operations that promise a genuine
//! polynomial check this with [`BiPoly::assert_polynomial`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exponent pair `(e_u, e_v)`.
pub type Exponent = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not divisible: nonzero remainder {remainder}")]
    NotDivisible { remainder: BiPoly },
    #[error("coefficient {coefficient} of u^{}v^{} is not divisible by {divisor}", .exponent.0, .exponent.1)]
    OddCoefficient {
        exponent: Exponent,
        coefficient: BigInt,
        divisor: BigInt,
    },
    #[error("negative exponent u^{}v^{} where a polynomial was required", .0.0, .0.1)]
    LaurentInput(Exponent),
    #[error("term u^{}v^{} is not a power of uv", .0.0, .0.1)]
    NotPureT(Exponent),
    #[error("gaussian binomial [{n} choose {k}] out of range")]
    BadRange { k: i64, n: i64 },
}

/// Sparse bivariate (Laurent-capable) polynomial with canonical storage: no zero
/// coefficient is ever kept, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(eu: i64, ev: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((eu, ev), c);
        }
        Self { terms }
    }

    pub fn u() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn v() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// `(uv)^m`.
    pub fn t_pow(m: i64) -> Self {
        Self::monomial(m, m, 1)
    }

    /// Builds a polynomial from arbitrary terms; repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Polynomial in `t = uv` from coefficients of `t^0, t^1, ...`.
    pub fn from_t_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| ((i as i64, i as i64), c)),
        )
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(e_u, e_v)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, eu: i64, ev: i64) -> BigInt {
        self.terms.get(&(eu, ev)).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0, 0)
    }

    /// Largest `e_u + e_v` over all terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn deg_u(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn deg_v(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.1).max()
    }

    fn min_exponents(&self) -> Exponent {
        let mu = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let mv = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (mu, mv)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a >= 0 && b >= 0)
    }

    /// Errors with the first negative exponent, if any.
    pub fn assert_polynomial(&self) -> Result<(), PolyError> {
        match self.terms.keys().find(|&&(a, b)| a < 0 || b < 0) {
            Some(&e) => Err(PolyError::LaurentInput(e)),
            None => Ok(()),
        }
    }

    /// Swaps the roles of `u` and `v`.
    pub fn swap_uv(&self) -> Self {
        Self::from_terms(self.terms().map(|((a, b), c)| ((b, a), c.clone())))
    }

    /// `h^{p,q} = h^{q,p}`.
    pub fn is_uv_symmetric(&self) -> bool {
        self.terms().all(|((a, b), c)| self.terms.get(&(b, a)) == Some(c))
    }

    /// True when every term is a power of `uv`.
    pub fn is_pure_t(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a == b)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Multiplies by the monomial `u^a v^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), c)| ((x + a, y + b), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides every coefficient by `k`, failing on the first coefficient that is
    /// not a multiple of `k`.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Result<Self, PolyError> {
        if k.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return Err(PolyError::OddCoefficient {
                    exponent: *e,
                    coefficient: c.clone(),
                    divisor: k.clone(),
                });
            }
            terms.insert(*e, q);
        }
        Ok(Self { terms })
    }

    /// Exact halving; every coefficient must be even.
    pub fn halve(&self) -> Result<Self, PolyError> {
        self.div_scalar_exact(&BigInt::from(2))
    }

    /// Leading term under graded order `(e_u + e_v, e_u, e_v)`.
    fn leading(&self) -> Option<(Exponent, &BigInt)> {
        self.terms()
            .max_by_key(|&((a, b), _)| (a + b, a, b))
    }

    /// Exact division `self / divisor`.
    ///
    /// Multivariate division by the graded order; a term of the running remainder
    /// that the leading term of `divisor` does not divide (monomially or over the
    /// integers) is moved to the final remainder. Laurent inputs are shifted into
    /// the polynomial range first and the quotient is shifted back.
    pub fn div_exact(&self, divisor: &BiPoly) -> Result<Self, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (au, av) = self.min_exponents();
        let (bu, bv) = divisor.min_exponents();
        let mut rest = self.shift(-au, -av);
        let divisor = divisor.shift(-bu, -bv);

        let ((lu, lv), lc) = divisor.leading().map(|(e, c)| (e, c.clone())).unwrap();
        let mut quotient = Self::zero();
        let mut remainder = Self::zero();
        while let Some(((ru, rv), rc)) = rest.leading().map(|(e, c)| (e, c.clone())) {
            let (q, r) = rc.div_rem(&lc);
            if ru >= lu && rv >= lv && r.is_zero() {
                let (du, dv) = (ru - lu, rv - lv);
                quotient.add_term((du, dv), q.clone());
                rest = &rest - &divisor.shift(du, dv).scale(&q);
            } else {
                remainder.add_term((ru, rv), rc.clone());
                rest.terms.remove(&(ru, rv));
            }
        }
        if !remainder.is_zero() {
            return Err(PolyError::NotDivisible {
                remainder: remainder.shift(au, av),
            });
        }
        Ok(quotient.shift(au - bu, av - bv))
    }

    /// Substitutes `u = v = t`.
    pub fn diag(&self) -> Result<UniPoly, PolyError> {
        self.assert_polynomial()?;
        let mut out = UniPoly::zero();
        for ((a, b), c) in self.terms() {
            out.add_term((a + b) as u64, c.clone());
        }
        Ok(out)
    }

    /// Substitutes `u ↦ -u²`, `v ↦ -v²`.
    pub fn twist_sym(&self) -> Self {
        Self::from_terms(self.terms().map(|((a, b), c)| {
            let c = if (a + b).rem_euclid(2) == 1 { -c } else { c.clone() };
            ((2 * a, 2 * b), c)
        }))
    }

    /// Substitutes `u ↦ u^k`, `v ↦ v^k`.
    pub fn dilate(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|((a, b), c)| ((k * a, k * b), c.clone())))
    }

    /// `(uv)^m · self(1/u, 1/v)`; may be Laurent.
    pub fn dual_transform(&self, m: i64) -> Self {
        Self::from_terms(self.terms().map(|((a, b), c)| ((m - a, m - b), c.clone())))
    }

    /// Gaussian binomial `[N choose k]` in `t = uv`, built as
    /// `∏_{i=1..k} (1 - t^{N-k+i}) / (1 - t^i)` with one exact division.
    pub fn gauss(k: i64, n: i64) -> Result<Self, PolyError> {
        if k < 0 || k > n {
            return Err(PolyError::BadRange { k, n });
        }
        let num = q_product(n - k + 1..=n);
        let den = q_product(1..=k);
        num.div_exact(&den)
    }

    /// Value at `uv = q`; every term must be a power of `uv`.
    pub fn eval_t(&self, q: &BigInt) -> Result<BigInt, PolyError> {
        let mut acc = BigInt::zero();
        for ((a, b), c) in self.terms() {
            if a != b {
                return Err(PolyError::NotPureT((a, b)));
            }
            if a < 0 {
                return Err(PolyError::LaurentInput((a, b)));
            }
            acc += c * q.pow(a as u32);
        }
        Ok(acc)
    }

    /// Term-wise comparison, listing `(e_u, e_v, coeff in self, coeff in other)` for
    /// every exponent where the two differ.
    pub fn diff(&self, other: &BiPoly) -> Vec<(Exponent, BigInt, BigInt)> {
        let mut keys: Vec<Exponent> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .filter_map(|(a, b)| {
                let x = self.coeff(a, b);
                let y = other.coeff(a, b);
                (x != y).then_some(((a, b), x, y))
            })
            .collect()
    }
}

/// `∏_{i in range} (1 - t^i)`.
pub fn q_product(range: impl IntoIterator<Item = i64>) -> BiPoly {
    range
        .into_iter()
        .fold(BiPoly::one(), |acc, i| &acc * &(&BiPoly::one() - &BiPoly::t_pow(i)))
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &rhs.terms {
                out.add_term((a + x, b + y), c * d);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<BiPoly> for &BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl std::iter::Sum for BiPoly {
    fn sum<I: Iterator<Item = BiPoly>>(iter: I) -> Self {
        iter.fold(BiPoly::zero(), |acc, p| &acc + &p)
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, a: i64, b: i64) -> fmt::Result {
    let mut parts = Vec::new();
    for (name, e) in [("u", a), ("v", b)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    write!(f, "{}", parts.join("*"))
}

/// Plain rendering, ascending `(e_u, e_v)`: `1 + 2*u*v - u^2*v`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let is_const = a == 0 && b == 0;
            if is_const {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_monomial(f, a, b)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    eu: i64,
    ev: i64,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct BiPolyRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BiPolyRepr {
            terms: self
                .terms()
                .map(|((eu, ev), c)| TermRepr {
                    eu,
                    ev,
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = BiPolyRepr::deserialize(d)?;
        let mut p = BiPoly::zero();
        for t in repr.terms {
            let c: BigInt = t.c.parse().map_err(serde::de::Error::custom)?;
            p.add_term((t.eu, t.ev), c);
        }
        Ok(p)
    }
}

/// Univariate polynomial in `t` (the `u = v` specialisation).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: BTreeMap<u64, BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            p.add_term(i as u64, c.into());
        }
        p
    }

    fn add_term(&mut self, e: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: u64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    /// Dense coefficient vector `[c_0, c_1, ..., c_deg]`.
    pub fn dense(&self) -> Vec<BigInt> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|e| self.coeff(e)).collect(),
        }
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .map(|(e, c)| c * t.pow(*e as u32))
            .sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Exponents with negative coefficients.
    pub fn negative_terms(&self) -> Vec<(u64, BigInt)> {
        self.coeffs
            .iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(e, c)| (*e, c.clone()))
            .collect()
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (a, c) in &self.coeffs {
            for (b, d) in &rhs.coeffs {
                out.add_term(a + b, c * d);
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let dense: Vec<String> = self.dense().iter().map(|c| c.to_string()).collect();
        dense.serialize(s)
    }
}
