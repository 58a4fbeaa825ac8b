//! Rational functions: reduced fractions of multivariate polynomials.
//!
//! Canonical form: gcd(num, den) = 1 and the denominator is monic under the
//! graded-lex order, so equality of rational functions is structural
//! equality. Zero is 0/1.

use super::gcd::{poly_gcd, poly_lcm};
use super::polynomial::Poly;
use super::rational::Rat;
use super::vars::VarSet;
use super::AlgebraError;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Build `num/den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero {
                denominator: den.to_string(),
            });
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFun {
                den: Poly::one(num.vars()),
                num,
            };
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let mut den = den.div_exact(&g).expect("gcd divides");
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            den: Poly::one(p.vars()),
            num: p,
        }
    }

    pub fn zero(vars: &VarSet) -> Self {
        Self::from_poly(Poly::zero(vars))
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::from_poly(Poly::one(vars))
    }

    pub fn int(vars: &VarSet, n: i64) -> Self {
        Self::from_poly(Poly::int(vars, n))
    }

    pub fn constant(vars: &VarSet, c: Rat) -> Self {
        Self::from_poly(Poly::constant(vars, c))
    }

    pub fn var(vars: &VarSet, name: &str) -> Result<Self, AlgebraError> {
        Ok(Self::from_poly(Poly::var(vars, name)?))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(&self.num.constant_value()? / &self.den.constant_value()?)
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero {
                denominator: "0".into(),
            });
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFun {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Partial derivative by variable name (quotient rule, re-normalized).
    pub fn differentiate(&self, var: &str) -> Result<Self, AlgebraError> {
        let i = self
            .vars()
            .index_of(var)
            .ok_or_else(|| AlgebraError::UnknownVariable { name: var.into() })?;
        Ok(self.derivative(i))
    }

    pub fn derivative(&self, i: usize) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative(i));
        }
        let num = &(&self.num.derivative(i) * &self.den) - &(&self.num * &self.den.derivative(i));
        let den = &self.den * &self.den;
        Self::normalized(num, den)
    }

    /// Evaluate at a full rational point; errors when the denominator
    /// vanishes there.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat, AlgebraError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero {
                denominator: self.den.to_string(),
            });
        }
        Ok(&self.num.eval(point) / &d)
    }

    /// Simultaneous substitution onto a (possibly different) variable set.
    ///
    /// Every source variable must either be bound in `bindings` or exist
    /// verbatim in `target`. Errors if a substituted denominator becomes
    /// identically zero.
    pub fn substitute_into(
        &self,
        target: &VarSet,
        bindings: &std::collections::HashMap<String, RatFun>,
    ) -> Result<RatFun, AlgebraError> {
        let src = self.vars();
        // A source variable that never occurs may be absent from the
        // target; only used variables need a binding or a verbatim slot.
        let mut plan: Vec<Binding> = Vec::with_capacity(src.len());
        for name in src.names() {
            match bindings.get(name) {
                Some(r) => {
                    if !r.vars().same(target) {
                        return Err(AlgebraError::VarSetMismatch);
                    }
                    plan.push(Binding::Expr(r.clone()));
                }
                None => match target.index_of(name) {
                    Some(idx) => plan.push(Binding::Keep(idx)),
                    None => plan.push(Binding::Missing(name.clone())),
                },
            }
        }
        let num = substitute_poly_ratfun(&self.num, target, &plan)?;
        let den = substitute_poly_ratfun(&self.den, target, &plan)?;
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero {
                denominator: self.den.to_string(),
            });
        }
        &num / &den
    }

    /// Substitution within the same variable set.
    pub fn substitute(
        &self,
        bindings: &std::collections::HashMap<String, RatFun>,
    ) -> Result<RatFun, AlgebraError> {
        self.substitute_into(self.vars(), bindings)
    }
}

enum Binding {
    Expr(RatFun),
    Keep(usize),
    Missing(String),
}

/// Substitute into a polynomial where bindings are rational functions.
fn substitute_poly_ratfun(
    p: &Poly,
    target: &VarSet,
    plan: &[Binding],
) -> Result<RatFun, AlgebraError> {
    let mut acc = RatFun::zero(target);
    for (m, c) in p.terms() {
        let mut term = RatFun::constant(target, c.clone());
        for (i, e) in (0..p.vars().len()).map(|i| (i, m.exp(i))) {
            if e == 0 {
                continue;
            }
            let factor = match &plan[i] {
                Binding::Expr(r) => r.clone(),
                Binding::Keep(idx) => RatFun::from_poly(Poly::var_index(target, *idx)),
                Binding::Missing(name) => {
                    return Err(AlgebraError::UnknownVariable { name: name.clone() })
                }
            };
            term = &term * &factor.pow(e as u32);
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::normalized(&self.num + &rhs.num, self.den.clone());
        }
        // num1*den2 + num2*den1 over lcm-built denominator keeps sizes down.
        let g = poly_gcd(&self.den, &rhs.den);
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        let den = &(&self.den * &d2);
        RatFun::normalized(num, den.clone())
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero(self.vars());
        }
        // Cross-cancel before multiplying.
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFun::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatFun {
    type Output = Result<RatFun, AlgebraError>;
    fn div(self, rhs: &RatFun) -> Result<RatFun, AlgebraError> {
        Ok(self * &rhs.recip()?)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            format!("{}", self.num)
        };
        let den = if self.den.num_terms() > 1 {
            format!("({})", self.den)
        } else {
            format!("{}", self.den)
        };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Common denominator of a family, as a polynomial.
pub fn common_denominator<'a>(items: impl IntoIterator<Item = &'a RatFun>) -> Option<Poly> {
    let mut lcm: Option<Poly> = None;
    for r in items {
        lcm = Some(match lcm {
            None => r.den().clone(),
            Some(l) => poly_lcm(&l, r.den()),
        });
    }
    lcm
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs() -> VarSet {
        VarSet::new(["x", "lam"])
    }

    #[test]
    fn normalization() {
        let v = vs();
        let x = Poly::var(&v, "x").unwrap();
        let lam = Poly::var(&v, "lam").unwrap();
        // (2x^2 + 2x)/(2x) = x + 1
        let num = &(&x * &x).scale(&Rat::int(2)) + &x.scale(&Rat::int(2));
        let den = x.scale(&Rat::int(2));
        let r = RatFun::new(num, den).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.num().to_string(), "x + 1");
        // (lam^3 x)/(lam x^2) = lam^2/x
        let r2 = RatFun::new(&lam.pow(3) * &x, &lam * &x.pow(2)).unwrap();
        assert_eq!(r2.to_string(), "lam^2/x");
    }

    #[test]
    fn quotient_rule() {
        let v = VarSet::new(["lam"]);
        let lam = RatFun::var(&v, "lam").unwrap();
        let one = RatFun::one(&v);
        // d/dlam (lam^2/(lam+1)) = (lam^2 + 2 lam)/(lam^2 + 2 lam + 1)
        let f = (&lam.pow(2) / &(&lam + &one)).unwrap();
        let d = f.differentiate("lam").unwrap();
        let lam_p = Poly::var(&v, "lam").unwrap();
        let expect_num = &lam_p.pow(2) + &lam_p.scale(&Rat::int(2));
        let expect_den = &(&lam_p.pow(2) + &lam_p.scale(&Rat::int(2))) + &Poly::one(&v);
        assert_eq!(d, RatFun::new(expect_num, expect_den).unwrap());
    }

    #[test]
    fn substitution_and_poles() {
        let v = VarSet::new(["x", "y"]);
        let x = RatFun::var(&v, "x").unwrap();
        let y = RatFun::var(&v, "y").unwrap();
        let mut b = std::collections::HashMap::new();
        b.insert("y".to_string(), RatFun::zero(&v));
        assert_eq!((&x + &y).substitute(&b).unwrap(), x);

        // (1/(x-1)) with x -> 1 must error.
        let one = RatFun::one(&v);
        let f = (&one / &(&x - &one)).unwrap();
        let mut b2 = std::collections::HashMap::new();
        b2.insert("x".to_string(), one.clone());
        assert!(matches!(
            f.substitute(&b2),
            Err(AlgebraError::DivisionByZero { .. })
        ));
    }

    #[test]
    fn eval_matches_field_ops() {
        let v = vs();
        let x = RatFun::var(&v, "x").unwrap();
        let lam = RatFun::var(&v, "lam").unwrap();
        let f = (&(&x + &lam) / &(&x - &lam)).unwrap();
        let p = [Rat::int(3), Rat::int(1)];
        assert_eq!(f.eval(&p).unwrap(), Rat::int(2));
    }
}
