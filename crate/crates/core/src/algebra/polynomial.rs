//! Exact multivariate polynomials over the rationals.
//!
//! Canonical form: a sorted term map with no zero coefficients, keyed by
//! graded-lexicographic monomials over the declared variable order. Two
//! polynomials over the same variable set are equal iff their term maps
//! are identical.

use super::rational::Rat;
use super::vars::{Mono, VarSet};
use super::AlgebraError;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: VarSet,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(vars: &VarSet) -> Self {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::unit(vars.len()), c);
        }
        Poly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn int(vars: &VarSet, n: i64) -> Self {
        Self::constant(vars, Rat::int(n))
    }

    /// The variable `name` as a polynomial.
    pub fn var(vars: &VarSet, name: &str) -> Result<Self, AlgebraError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable { name: name.into() })?;
        Ok(Self::var_index(vars, i))
    }

    pub fn var_index(vars: &VarSet, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(vars.len(), i), Rat::one());
        Poly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_terms(vars: &VarSet, it: impl IntoIterator<Item = (Mono, Rat)>) -> Self {
        let mut terms: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (m, c) in it {
            assert_eq!(m.0.len(), vars.len(), "monomial arity mismatch");
            if c.is_zero() {
                continue;
            }
            match terms.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        Poly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    /// Leading term under the graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    fn check_vars(&self, other: &Poly) {
        assert!(
            self.vars.same(&other.vars),
            "polynomial arithmetic across different variable sets: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        acc
    }

    /// Partial derivative with respect to variable index `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut v = m.0.to_vec();
            v[i] = e - 1;
            terms.insert(Mono(v.into_boxed_slice()), c * &Rat::int(e as i64));
        }
        Poly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Evaluate at a full point (one value per variable).
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= point[i].pow(e as u32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Rational content: gcd of numerators over lcm of denominators, signed
    /// to keep the leading coefficient positive after division.
    pub fn content(&self) -> Rat {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::Zero as _;
        if self.is_zero() {
            return Rat::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::from(1);
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rat::from_big(num_gcd, den_lcm);
        if self.leading_coeff().is_negative() {
            content = -content;
        }
        content
    }

    /// `self / content`: integer coefficients with gcd 1 and positive
    /// leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.content().recip())
    }

    /// Scale so the leading coefficient (graded-lex) is one.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Exact division; `None` when the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        self.check_vars(d);
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.clone();
        let mut quo = BTreeMap::new();
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.div(&dm)?;
            let qc = &rc / &dc;
            rem = &rem - &d.mul_term(&qm, &qc);
            quo.insert(qm, qc);
        }
        Some(Poly {
            vars: self.vars.clone(),
            terms: quo,
        })
    }

    /// Substitute polynomials for variables: every variable with an entry in
    /// `bindings` (indexed by variable position, `None` = keep) is replaced.
    /// Replacement polynomials live over `target`.
    pub fn substitute_poly(
        &self,
        target: &VarSet,
        bindings: &[Option<Poly>],
        identity: &[Option<usize>],
    ) -> Poly {
        // identity[i] = index of source var i in target when kept verbatim.
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = match &bindings[i] {
                    Some(p) => p.clone(),
                    None => Poly::var_index(
                        target,
                        identity[i].expect("unbound variable not present in target"),
                    ),
                };
                term = &term * &factor.pow(e as u32);
            }
            acc = &acc + &term;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_vars(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c.clone();
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        Poly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_vars(rhs);
        let mut terms: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match terms.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        Poly {
            vars: self.vars.clone(),
            terms,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest term first.
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_unit() {
                factors.push(mag.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars2() -> VarSet {
        VarSet::new(["x", "y"])
    }

    #[test]
    fn arithmetic_and_display() {
        let vs = vars2();
        let x = Poly::var(&vs, "x").unwrap();
        let y = Poly::var(&vs, "y").unwrap();
        let p = &(&x * &x) * &y; // x^2 y
        let q = &p + &Poly::int(&vs, 3);
        assert_eq!(q.to_string(), "x^2*y + 3");
        let d = q.derivative(0);
        assert_eq!(d.to_string(), "2*x*y");
    }

    #[test]
    fn power_rule() {
        let vs = VarSet::new(["lam"]);
        let lam = Poly::var(&vs, "lam").unwrap();
        let p = lam.pow(3).scale(&Rat::new(1, 3)); // lam^3/3
        assert_eq!(p.derivative(0), lam.pow(2));
    }

    #[test]
    fn exact_division() {
        let vs = vars2();
        let x = Poly::var(&vs, "x").unwrap();
        let one = Poly::one(&vs);
        let p = &(&x * &x) - &one; // x^2 - 1
        let d = &x - &one;
        let q = p.div_exact(&d).unwrap();
        assert_eq!(q, &x + &one);
        assert!(p.div_exact(&(&x + &(&one + &one))).is_none());
    }

    #[test]
    fn content_primitive() {
        let vs = vars2();
        let x = Poly::var(&vs, "x").unwrap();
        let p = &x.scale(&Rat::new(2, 3)) + &Poly::constant(&vs, Rat::new(4, 3));
        assert_eq!(p.content(), Rat::new(2, 3));
        assert_eq!(p.primitive_part().to_string(), "x + 2");
    }
}
