//! Vector fields with exact rational-function components.

use crate::algebra::{parse_expr_aliased, Rat, RatFun};
use crate::geometry::chart::Chart;
use crate::geometry::GeomError;
use std::collections::HashMap;
use std::fmt;

/// A derivation on a chart: one rational-function component per coordinate.
#[derive(Clone, PartialEq)]
pub struct VectorField {
    chart: Chart,
    comps: Vec<RatFun>,
}

impl VectorField {
    pub fn zero(chart: &Chart) -> Self {
        VectorField {
            chart: chart.clone(),
            comps: vec![chart.zero_fun(); chart.dim()],
        }
    }

    pub fn from_components(chart: &Chart, comps: Vec<RatFun>) -> Self {
        assert_eq!(comps.len(), chart.dim(), "component count mismatch");
        VectorField {
            chart: chart.clone(),
            comps,
        }
    }

    /// Coordinate vector field `∂/∂name`.
    pub fn coordinate(chart: &Chart, name: &str) -> Result<Self, GeomError> {
        let i = chart
            .index_of(name)
            .ok_or_else(|| GeomError::MissingCoordinate { name: name.into() })?;
        let mut f = Self::zero(chart);
        f.comps[i] = RatFun::one(chart.vars());
        Ok(f)
    }

    /// Build from a sparse map of coordinate names to expressions.
    pub fn from_map(chart: &Chart, map: &HashMap<String, RatFun>) -> Result<Self, GeomError> {
        let mut f = Self::zero(chart);
        for (name, val) in map {
            let i = chart
                .index_of(name)
                .ok_or_else(|| GeomError::MissingCoordinate { name: name.clone() })?;
            f.comps[i] = val.clone();
        }
        Ok(f)
    }

    /// Parse a sparse map of coordinate names to expression strings.
    pub fn parse(
        chart: &Chart,
        entries: &HashMap<String, String>,
        aliases: &HashMap<String, String>,
    ) -> Result<Self, GeomError> {
        let mut f = Self::zero(chart);
        for (name, src) in entries {
            let resolved = aliases.get(name).map(String::as_str).unwrap_or(name);
            let i = chart
                .index_of(resolved)
                .ok_or_else(|| GeomError::MissingCoordinate { name: name.clone() })?;
            f.comps[i] = parse_expr_aliased(src, chart.vars(), aliases)?;
        }
        Ok(f)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[RatFun] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &RatFun {
        &self.comps[i]
    }

    pub fn component_by_name(&self, name: &str) -> Option<&RatFun> {
        self.chart.index_of(name).map(|i| &self.comps[i])
    }

    pub fn set_component(&mut self, i: usize, v: RatFun) {
        self.comps[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFun::is_zero)
    }

    /// Apply the derivation to a function: `v(f) = Σ v^i ∂f/∂x_i`.
    pub fn apply(&self, f: &RatFun) -> RatFun {
        let mut acc = self.chart.zero_fun();
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.derivative(i);
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    /// Lie bracket `[v, w]^i = v(w^i) − w(v^i)`.
    pub fn lie_bracket(&self, other: &VectorField) -> Result<VectorField, GeomError> {
        self.chart.ensure_same(&other.chart)?;
        let comps = (0..self.chart.dim())
            .map(|i| &self.apply(&other.comps[i]) - &other.apply(&self.comps[i]))
            .collect();
        Ok(VectorField {
            chart: self.chart.clone(),
            comps,
        })
    }

    pub fn scale(&self, f: &RatFun) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(|c| c * f).collect(),
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> VectorField {
        self.scale(&RatFun::constant(self.chart.vars(), c.clone()))
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField, GeomError> {
        self.chart.ensure_same(&other.chart)?;
        Ok(VectorField {
            chart: self.chart.clone(),
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField, GeomError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            comps: self.comps.iter().map(|c| -c).collect(),
        }
    }

    /// Scale by the common denominator so all components are polynomial,
    /// then strip the content. Spans are unchanged.
    pub fn cleared(&self) -> VectorField {
        use crate::algebra::ratfun::common_denominator;
        let Some(lcm) = common_denominator(self.comps.iter().filter(|c| !c.is_zero())) else {
            return self.clone();
        };
        let mut out = if lcm.is_one() {
            self.clone()
        } else {
            self.scale(&RatFun::from_poly(lcm))
        };
        // Divide polynomial components by their common rational content.
        let mut content: Option<Rat> = None;
        for c in &out.comps {
            if c.is_zero() {
                continue;
            }
            debug_assert!(c.is_polynomial());
            let pc = c.num().content();
            content = Some(match content {
                None => pc,
                Some(acc) => {
                    use num_integer::Integer;
                    let num = acc.numer().gcd(pc.numer());
                    let den = acc.denom().lcm(pc.denom());
                    Rat::from_big(num, den)
                }
            });
        }
        if let Some(c) = content {
            if !c.is_zero() && !c.is_one() {
                out = out.scale_rat(&c.recip());
            }
        }
        out
    }

    /// Evaluate all components at a point.
    pub fn eval(&self, point: &crate::geometry::chart::PointAssignment) -> Result<Vec<Rat>, GeomError> {
        self.comps.iter().map(|c| point.eval(c)).collect()
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coord = self.chart.coord(i);
            if c.is_one() {
                parts.push(format!("∂_{coord}"));
            } else if c.is_polynomial() && c.num().num_terms() == 1 {
                parts.push(format!("{c} ∂_{coord}"));
            } else {
                parts.push(format!("({c}) ∂_{coord}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contact_bracket() {
        // [∂_x + p ∂_u, ∂_p] = -∂_u
        let chart = Chart::new("J1", ["x", "u", "p"]);
        let p = chart.coord_fun("p").unwrap();
        let mut dx = VectorField::coordinate(&chart, "x").unwrap();
        dx.set_component(chart.index_of("u").unwrap(), p);
        let dp = VectorField::coordinate(&chart, "p").unwrap();
        let b = dx.lie_bracket(&dp).unwrap();
        let expect = VectorField::coordinate(&chart, "u").unwrap().neg();
        assert_eq!(b, expect);
    }

    #[test]
    fn commuting_coordinates() {
        let chart = Chart::new("R2", ["x", "y"]);
        let dx = VectorField::coordinate(&chart, "x").unwrap();
        let dy = VectorField::coordinate(&chart, "y").unwrap();
        assert!(dx.lie_bracket(&dy).unwrap().is_zero());
    }

    #[test]
    fn chart_mismatch_is_error() {
        let a = Chart::new("A", ["x"]);
        let b = Chart::new("B", ["y"]);
        let va = VectorField::coordinate(&a, "x").unwrap();
        let vb = VectorField::coordinate(&b, "y").unwrap();
        assert!(va.lie_bracket(&vb).is_err());
    }
}
