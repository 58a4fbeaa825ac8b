//! Distributions: finitely generated spans of vector fields over the
//! rational-function field, with canonical echelon bases, annihilators and
//! span comparisons.

use crate::algebra::matrix::{clear_row_denominators, Mat};
use crate::algebra::RatFun;
use crate::geometry::chart::Chart;
use crate::geometry::field::VectorField;
use crate::geometry::GeomError;
use std::fmt;

#[derive(Clone)]
pub struct Distribution {
    chart: Chart,
    gens: Vec<VectorField>,
}

impl Distribution {
    pub fn new(chart: &Chart, gens: Vec<VectorField>) -> Result<Self, GeomError> {
        for g in &gens {
            chart.ensure_same(g.chart())?;
        }
        Ok(Distribution {
            chart: chart.clone(),
            gens,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn generators(&self) -> &[VectorField] {
        &self.gens
    }

    /// Generator component matrix: one row per generator.
    pub fn matrix(&self) -> Mat<RatFun> {
        Mat::from_rows(self.gens.iter().map(|g| g.components().to_vec()).collect())
    }

    /// Rank of the generator matrix over the rational-function field.
    pub fn generic_rank(&self) -> usize {
        if self.gens.is_empty() {
            return 0;
        }
        let mut rows: Vec<Vec<RatFun>> = self
            .gens
            .iter()
            .map(|g| g.components().to_vec())
            .collect();
        for r in rows.iter_mut() {
            clear_row_denominators(r);
        }
        Mat::from_rows(rows).rank()
    }

    /// Canonical basis: reduced row echelon form of the generator span with
    /// pivoting by coordinate order. Deterministic for a given span.
    pub fn echelon_basis(&self) -> Vec<VectorField> {
        echelon_fields(&self.chart, &self.gens)
    }

    /// Same distribution, re-presented by its canonical echelon basis.
    pub fn canonicalized(&self) -> Distribution {
        Distribution {
            chart: self.chart.clone(),
            gens: self.echelon_basis(),
        }
    }

    /// Is `v` in the pointwise span of the generators over the function field?
    pub fn contains(&self, v: &VectorField) -> Result<bool, GeomError> {
        self.chart.ensure_same(v.chart())?;
        if v.is_zero() {
            return Ok(true);
        }
        let base_rank = self.generic_rank();
        let mut gens = self.gens.clone();
        gens.push(v.clone());
        let ext = Distribution {
            chart: self.chart.clone(),
            gens,
        };
        Ok(ext.generic_rank() == base_rank)
    }

    /// Mutual containment of spans over the function field.
    pub fn spans_equal(&self, other: &Distribution) -> Result<bool, GeomError> {
        self.chart.ensure_same(other.chart())?;
        let ra = self.generic_rank();
        let rb = other.generic_rank();
        if ra != rb {
            return Ok(false);
        }
        let mut all = self.gens.clone();
        all.extend(other.gens.iter().cloned());
        let joint = Distribution {
            chart: self.chart.clone(),
            gens: all,
        };
        Ok(joint.generic_rank() == ra)
    }

    /// Sum of spans.
    pub fn union(&self, other: &Distribution) -> Result<Distribution, GeomError> {
        self.chart.ensure_same(other.chart())?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Distribution {
            chart: self.chart.clone(),
            gens: echelon_fields(&self.chart, &gens),
        })
    }

    /// Annihilator: a basis of 1-forms θ with θ(v) = 0 for all generators.
    ///
    /// Forms are returned as component vectors in the coordinate basis
    /// `dx_i`; the count is `dim − generic_rank`.
    pub fn annihilator(&self) -> Vec<OneForm> {
        let n = self.chart.dim();
        if self.gens.is_empty() {
            return (0..n)
                .map(|i| {
                    let mut comps = vec![self.chart.zero_fun(); n];
                    comps[i] = RatFun::one(self.chart.vars());
                    OneForm {
                        chart: self.chart.clone(),
                        comps,
                    }
                })
                .collect();
        }
        let mut rows: Vec<Vec<RatFun>> = self
            .gens
            .iter()
            .map(|g| g.components().to_vec())
            .collect();
        for r in rows.iter_mut() {
            clear_row_denominators(r);
        }
        let kernel = Mat::from_rows(rows).kernel_basis();
        kernel
            .into_iter()
            .map(|comps| {
                let mut f = OneForm {
                    chart: self.chart.clone(),
                    comps,
                };
                f.clear_denominators();
                f
            })
            .collect()
    }

    /// Intersection with a coordinate subspace: the sub-distribution of
    /// fields whose components vanish on the listed coordinates is not what
    /// we need; this computes `self ∩ span{∂_c : c in keep}`.
    pub fn intersect_coordinate_plane(&self, keep: &[usize]) -> Distribution {
        // v = Σ c_j g_j lies in the plane iff its components on the
        // complement vanish; solve for the coefficient kernel.
        let n = self.chart.dim();
        let keep_set: std::collections::HashSet<usize> = keep.iter().copied().collect();
        let drop: Vec<usize> = (0..n).filter(|i| !keep_set.contains(i)).collect();
        let mut rows: Vec<Vec<RatFun>> = Vec::new();
        for &i in &drop {
            rows.push(self.gens.iter().map(|g| g.component(i).clone()).collect());
        }
        if rows.is_empty() {
            return self.clone();
        }
        for r in rows.iter_mut() {
            clear_row_denominators(r);
        }
        let kernel = Mat::from_rows(rows).kernel_basis();
        let gens: Vec<VectorField> = kernel
            .into_iter()
            .map(|coeffs| combine(&self.chart, &self.gens, &coeffs))
            .collect();
        Distribution {
            chart: self.chart.clone(),
            gens: echelon_fields(&self.chart, &gens),
        }
    }
}

/// Linear combination Σ coeffs_j · fields_j, denominator-cleared.
pub fn combine(chart: &Chart, fields: &[VectorField], coeffs: &[RatFun]) -> VectorField {
    let mut acc = VectorField::zero(chart);
    for (f, c) in fields.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&f.scale(c)).expect("same chart");
    }
    acc.cleared()
}

/// Reduced echelon basis of the span of `fields` (zero rows dropped).
pub fn echelon_fields(chart: &Chart, fields: &[VectorField]) -> Vec<VectorField> {
    if fields.is_empty() {
        return Vec::new();
    }
    let mut rows: Vec<Vec<RatFun>> = fields.iter().map(|g| g.components().to_vec()).collect();
    for r in rows.iter_mut() {
        clear_row_denominators(r);
    }
    let mut m = Mat::from_rows(rows);
    let pivots = m.rref();
    (0..pivots.len())
        .map(|i| VectorField::from_components(chart, m.row(i).to_vec()))
        .collect()
}

/// A 1-form on a chart, componentwise in the coordinate cobasis.
#[derive(Clone, PartialEq)]
pub struct OneForm {
    chart: Chart,
    comps: Vec<RatFun>,
}

impl OneForm {
    pub fn new(chart: &Chart, comps: Vec<RatFun>) -> Self {
        assert_eq!(comps.len(), chart.dim());
        OneForm {
            chart: chart.clone(),
            comps,
        }
    }

    pub fn zero(chart: &Chart) -> Self {
        OneForm {
            chart: chart.clone(),
            comps: vec![chart.zero_fun(); chart.dim()],
        }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[RatFun] {
        &self.comps
    }

    pub fn component_mut(&mut self, i: usize) -> &mut RatFun {
        &mut self.comps[i]
    }

    /// Pairing θ(v).
    pub fn pair(&self, v: &VectorField) -> RatFun {
        let mut acc = self.chart.zero_fun();
        for (a, b) in self.comps.iter().zip(v.components()) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc = &acc + &(a * b);
        }
        acc
    }

    fn clear_denominators(&mut self) {
        clear_row_denominators(&mut self.comps);
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coord = self.chart.coord(i);
            if c.is_one() {
                parts.push(format!("d{coord}"));
            } else {
                parts.push(format!("({c}) d{coord}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "distribution on {} with generators:", self.chart)?;
        for g in &self.gens {
            writeln!(f, "  {g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contact3() -> (Chart, Distribution) {
        let chart = Chart::new("J1", ["x", "u", "p"]);
        let p = chart.coord_fun("p").unwrap();
        let mut dx = VectorField::coordinate(&chart, "x").unwrap();
        dx.set_component(1, p);
        let dp = VectorField::coordinate(&chart, "p").unwrap();
        let d = Distribution::new(&chart, vec![dx, dp]).unwrap();
        (chart, d)
    }

    #[test]
    fn rank_of_dependent_generators() {
        let chart = Chart::new("R2", ["x", "y"]);
        let dx = VectorField::coordinate(&chart, "x").unwrap();
        let two_dx = dx.scale_rat(&crate::algebra::Rat::int(2));
        let d = Distribution::new(&chart, vec![dx, two_dx]).unwrap();
        assert_eq!(d.generic_rank(), 1);
    }

    #[test]
    fn contact_rank_and_annihilator() {
        let (chart, d) = contact3();
        assert_eq!(d.generic_rank(), 2);
        let ann = d.annihilator();
        assert_eq!(ann.len(), 1);
        // du - p dx (up to scale): pairing with both generators vanishes.
        for g in d.generators() {
            assert!(ann[0].pair(g).is_zero());
        }
        let du = ann[0].components()[chart.index_of("u").unwrap()].clone();
        let dx = ann[0].components()[chart.index_of("x").unwrap()].clone();
        let p = chart.coord_fun("p").unwrap();
        assert_eq!(&dx + &(&p * &du), chart.zero_fun());
    }

    #[test]
    fn spans_equal_scaling() {
        let chart = Chart::new("R1x", ["x", "y"]);
        let dx = VectorField::coordinate(&chart, "x").unwrap();
        let x = chart.coord_fun("x").unwrap();
        let a = Distribution::new(&chart, vec![dx.clone(), dx.scale(&x)]).unwrap();
        let b = Distribution::new(&chart, vec![dx]).unwrap();
        assert!(a.spans_equal(&b).unwrap());
        let dy = VectorField::coordinate(&chart, "y").unwrap();
        let c = Distribution::new(&chart, vec![dy]).unwrap();
        assert!(!b.spans_equal(&c).unwrap());
    }
}
