//! Multivariate polynomial gcd over the rationals.
//!
//! Content extraction plus a primitive pseudo-remainder sequence in the
//! highest variable that actually occurs. Degrees in this crate stay small,
//! so the primitive PRS is preferred over subresultant bookkeeping.

use super::polynomial::Poly;
use super::rational::Rat;
use super::vars::Mono;
use std::collections::BTreeMap;

/// gcd(a, b), normalized to integer coefficients, content 1 and positive
/// leading coefficient. gcd(0, 0) = 0.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    let a = a.primitive_part();
    let b = b.primitive_part();
    match main_variable(&a, &b) {
        None => Poly::one(a.vars()), // both constants
        Some(v) => gcd_in(&a, &b, v),
    }
}

pub fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.vars());
    }
    let g = poly_gcd(a, b);
    (&a.primitive_part() * &b.primitive_part())
        .div_exact(&g)
        .expect("gcd divides product")
}

/// Highest variable index occurring in either polynomial.
fn main_variable(a: &Poly, b: &Poly) -> Option<usize> {
    let n = a.vars().len();
    (0..n).rev().find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
}

/// View of a polynomial as univariate in variable `v` with `Poly`
/// coefficients (each coefficient has degree 0 in `v`).
fn coeffs_in(p: &Poly, v: usize) -> Vec<Poly> {
    let d = p.degree_in(v) as usize;
    let mut out: Vec<BTreeMap<Mono, Rat>> = vec![BTreeMap::new(); d + 1];
    for (m, c) in p.terms() {
        let e = m.exp(v) as usize;
        let mut stripped = m.0.to_vec();
        stripped[v] = 0;
        out[e].insert(Mono(stripped.into_boxed_slice()), c.clone());
    }
    out.into_iter()
        .map(|terms| Poly::from_terms(p.vars(), terms))
        .collect()
}

/// Content with respect to `v`: gcd of the `v`-coefficients.
fn content_in(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero(p.vars());
    for c in coeffs_in(p, v) {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Pseudo-remainder of `a` by `b` in variable `v` (a, b nonzero, deg_v a >= deg_v b).
fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v) as i64;
    let bc = coeffs_in(b, v);
    let lead_b = bc.last().unwrap().clone();
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v) as i64;
        if dr < db {
            break;
        }
        let rc = coeffs_in(&r, v);
        let lead_r = rc.last().unwrap().clone();
        // r <- lead_b * r - lead_r * x^(dr-db) * b
        let mut shift = vec![0u16; r.vars().len()];
        shift[v] = (dr - db) as u16;
        let shifted = b.mul_term(&Mono(shift.into_boxed_slice()), &Rat::one());
        r = &(&lead_b * &r) - &(&lead_r * &shifted);
    }
    r
}

fn gcd_in(a: &Poly, b: &Poly, v: usize) -> Poly {
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let cont_gcd = poly_gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.is_zero() {
            let prim = p
                .div_exact(&content_in(&p, v))
                .expect("content divides")
                .primitive_part();
            return (&cont_gcd * &prim).primitive_part();
        }
        let r = pseudo_rem(&p, &q, v);
        p = q;
        q = if r.is_zero() {
            r
        } else {
            r.div_exact(&content_in(&r, v))
                .expect("content divides")
                .primitive_part()
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::vars::VarSet;

    fn setup() -> (VarSet, Poly, Poly) {
        let vs = VarSet::new(["x", "y"]);
        let x = Poly::var(&vs, "x").unwrap();
        let y = Poly::var(&vs, "y").unwrap();
        (vs, x, y)
    }

    #[test]
    fn univariate_gcd() {
        let (vs, x, _) = setup();
        let one = Poly::one(&vs);
        let p = &(&x * &x) - &one;
        let q = &x - &one;
        assert_eq!(poly_gcd(&p, &q), q);
    }

    #[test]
    fn multivariate_gcd() {
        let (_, x, y) = setup();
        // gcd(x^2 y + x y, x y^2) = x y
        let p = &(&(&x * &x) * &y) + &(&x * &y);
        let q = &(&x * &y) * &y;
        assert_eq!(poly_gcd(&p, &q), &x * &y);
    }

    #[test]
    fn coprime() {
        let (vs, x, y) = setup();
        assert_eq!(poly_gcd(&x, &y), Poly::one(&vs));
    }

    #[test]
    fn gcd_with_zero() {
        let (_, x, _) = setup();
        assert_eq!(poly_gcd(&Poly::zero(x.vars()), &x), x);
    }
}
