use std::fmt::Write;

use glhodge::{BiPoly, UniPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed};

fn power(out: &mut String, var: char, e: i64) {
    match e {
        0 => {}
        1 => out.push(var),
        _ => {
            let _ = write!(out, "{var}^{{{e}}}");
        }
    }
}

fn push_term(out: &mut String, first: bool, c: &BigInt, monomial: &str) {
    if c.is_negative() {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let a = c.abs();
    if monomial.is_empty() {
        let _ = write!(out, "{a}");
    } else {
        if !a.is_one() {
            let _ = write!(out, "{a}");
        }
        out.push_str(monomial);
    }
}

/// LaTeX body with terms in ascending `(e_u, e_v)` order and no spaces,
/// e.g. `1+uv` or `1-2u^{2}v+v^{3}`.
pub fn latex(p: &BiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, ((eu, ev), c)) in p.terms().enumerate() {
        let mut m = String::new();
        power(&mut m, 'u', eu);
        power(&mut m, 'v', ev);
        push_term(&mut out, i == 0, c, &m);
    }
    out
}

pub fn latex_uni(p: &UniPoly) -> String {
    let mut out = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        let mut m = String::new();
        power(&mut m, 't', e as i64);
        push_term(&mut out, i == 0, c, &m);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latex_forms() {
        assert_eq!(latex(&BiPoly::gauss(1, 2).unwrap()), "1+uv");
        let p = BiPoly::from_terms([((0, 0), 1), ((2, 1), -2), ((0, 3), 1)]);
        assert_eq!(latex(&p), "1+v^{3}-2u^{2}v");
        assert_eq!(latex(&BiPoly::zero()), "0");
        assert_eq!(latex_uni(&UniPoly::from_coeffs([1, 0, -3])), "1-3t^{2}");
    }
}
