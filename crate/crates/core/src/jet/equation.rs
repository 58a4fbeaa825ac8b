//! Parametrized overdetermined PDE systems on their intrinsic charts.
//!
//! An equation chart carries base variables, the jet coordinates that stay
//! free on the equation manifold, defining expressions for every bound jet
//! coordinate (all top-order coordinates and any lower-order ones cut out
//! by the system or its prolongations), and parameter names such as λ, ζ_j.
//! Truncated total derivatives, the Cartan distribution and the lifted
//! contact forms all live here.

use crate::algebra::{parse_expr_aliased, RatFun, VarSet};
use crate::geometry::chart::Chart;
use crate::geometry::distribution::{Distribution, OneForm};
use crate::geometry::field::VectorField;
use crate::jet::multiindex::MultiIndex;
use crate::jet::JetError;
use std::collections::{BTreeMap, HashMap};

/// A dependent variable with its maximal jet order on the chart.
#[derive(Clone, Debug, PartialEq)]
pub struct Dependent {
    pub name: String,
    pub order: usize,
}

/// Canonical name of a jet coordinate: the dependent's name for σ = 0,
/// otherwise `dep_σdigits` (one digit per base variable).
pub fn jet_name(dep: &str, sigma: &MultiIndex) -> String {
    if sigma.order() == 0 {
        return dep.to_string();
    }
    let digits: String = sigma.0.iter().map(|e| e.to_string()).collect();
    format!("{dep}_{digits}")
}

#[derive(Clone)]
pub struct EquationChart {
    base: Vec<String>,
    dependents: Vec<Dependent>,
    params: Vec<String>,
    /// Free jet coordinates per dependent, ascending.
    free: Vec<Vec<MultiIndex>>,
    /// Bound jet coordinates with their defining expressions on the
    /// intrinsic chart.
    bound: BTreeMap<(usize, MultiIndex), RatFun>,
    chart: Chart,
}

/// Builder input: which jet coordinates are bound, with expression text.
pub struct EquationSpec {
    pub name: String,
    pub base: Vec<String>,
    pub dependents: Vec<Dependent>,
    pub params: Vec<String>,
    /// (dependent index, multi-index) → expression source text.
    pub bound: Vec<(usize, MultiIndex, String)>,
}

impl EquationChart {
    pub fn build(spec: EquationSpec) -> Result<Self, JetError> {
        let n = spec.base.len();
        let mut bound_keys: BTreeMap<(usize, MultiIndex), String> = BTreeMap::new();
        for (d, sigma, src) in spec.bound {
            if sigma.len() != n {
                return Err(JetError::MultiIndexArity {
                    expected: n,
                    got: sigma.len(),
                });
            }
            if d >= spec.dependents.len() || sigma.order() > spec.dependents[d].order {
                return Err(JetError::BadBoundCoordinate {
                    name: jet_name(&spec.dependents[d].name, &sigma),
                });
            }
            bound_keys.insert((d, sigma), src);
        }
        // Free jets: everything not bound, orders ≤ the dependent's order.
        let mut free: Vec<Vec<MultiIndex>> = Vec::new();
        let mut coords: Vec<String> = spec.base.clone();
        for (di, dep) in spec.dependents.iter().enumerate() {
            let mut list = Vec::new();
            for sigma in MultiIndex::all_up_to(n, dep.order) {
                if !bound_keys.contains_key(&(di, sigma.clone())) {
                    coords.push(jet_name(&dep.name, &sigma));
                    list.push(sigma);
                }
            }
            free.push(list);
        }
        // Every top-order coordinate must be bound or deliberately free
        // (vertical); both are allowed. Parameters go last.
        coords.extend(spec.params.iter().cloned());
        let chart = Chart::from_vars(&spec.name, VarSet::new(coords));
        let aliases = classical_aliases(&spec.base, &spec.dependents);
        let mut bound = BTreeMap::new();
        for ((d, sigma), src) in bound_keys {
            let expr = parse_expr_aliased(&src, chart.vars(), &aliases)?;
            bound.insert((d, sigma), expr);
        }
        Ok(EquationChart {
            base: spec.base,
            dependents: spec.dependents,
            params: spec.params,
            free,
            bound,
            chart,
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn dependents(&self) -> &[Dependent] {
        &self.dependents
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn free_jets(&self, dep: usize) -> &[MultiIndex] {
        &self.free[dep]
    }

    pub fn bound_jets(&self) -> impl Iterator<Item = (&(usize, MultiIndex), &RatFun)> {
        self.bound.iter()
    }

    pub fn is_bound(&self, dep: usize, sigma: &MultiIndex) -> bool {
        self.bound.contains_key(&(dep, sigma.clone()))
    }

    /// Minimal order among the equations (bound coordinates).
    pub fn min_equation_order(&self) -> Option<usize> {
        self.bound.keys().map(|(_, s)| s.order()).min()
    }

    pub fn max_order(&self) -> usize {
        self.dependents.iter().map(|d| d.order).max().unwrap_or(0)
    }

    /// Value of the jet coordinate (d, σ) as a function on the chart.
    pub fn jet_value(&self, dep: usize, sigma: &MultiIndex) -> Result<RatFun, JetError> {
        if let Some(e) = self.bound.get(&(dep, sigma.clone())) {
            return Ok(e.clone());
        }
        let name = jet_name(&self.dependents[dep].name, sigma);
        RatFun::var(self.chart.vars(), &name).map_err(JetError::from)
    }

    /// Truncated total derivative D_i on the intrinsic chart.
    pub fn total_derivative(&self, i: usize) -> Result<VectorField, JetError> {
        if i >= self.base.len() {
            return Err(JetError::BadBaseIndex { index: i });
        }
        let mut f = VectorField::coordinate(&self.chart, &self.base[i])
            .map_err(JetError::from)?;
        for (di, dep) in self.dependents.iter().enumerate() {
            for sigma in &self.free[di] {
                if sigma.order() >= dep.order {
                    continue; // top slots have no successors on the chart
                }
                let succ = sigma.bump(i);
                let value = self.jet_value(di, &succ)?;
                if !value.is_zero() {
                    let idx = self
                        .chart
                        .index_of(&jet_name(&dep.name, sigma))
                        .expect("free jet is a chart coordinate");
                    f.set_component(idx, value);
                }
            }
        }
        Ok(f)
    }

    /// Vertical directions: parameters and free top-order jets.
    pub fn vertical_fields(&self) -> Result<Vec<VectorField>, JetError> {
        let mut out = Vec::new();
        for (di, dep) in self.dependents.iter().enumerate() {
            for sigma in &self.free[di] {
                if sigma.order() == dep.order {
                    out.push(
                        VectorField::coordinate(&self.chart, &jet_name(&dep.name, sigma))
                            .map_err(JetError::from)?,
                    );
                }
            }
        }
        for p in &self.params {
            out.push(VectorField::coordinate(&self.chart, p).map_err(JetError::from)?);
        }
        Ok(out)
    }

    /// The Cartan distribution on the equation: total derivatives plus the
    /// vertical directions.
    pub fn cartan_distribution(&self) -> Result<Distribution, JetError> {
        let mut gens = Vec::new();
        for i in 0..self.base.len() {
            gens.push(self.total_derivative(i)?);
        }
        gens.extend(self.vertical_fields()?);
        Distribution::new(&self.chart, gens).map_err(JetError::from)
    }

    /// Contact forms of the lifted Cartan distribution C_l, `1 ≤ l ≤ k`:
    /// θ_σ = du_σ − Σ_i value(σ+1_i) dx^i for |σ| < l, with bound slots
    /// expanded through their defining expressions.
    pub fn cartan_lift_annihilator(&self, l: usize) -> Result<Vec<OneForm>, JetError> {
        if l == 0 {
            return Err(JetError::BadOrder { order: l });
        }
        let n = self.base.len();
        let mut out = Vec::new();
        for (di, dep) in self.dependents.iter().enumerate() {
            let top = l.min(dep.order);
            if top == 0 {
                continue;
            }
            for sigma in MultiIndex::all_up_to(n, top - 1) {
                let mut theta = OneForm::zero(&self.chart);
                // du_σ part.
                if let Some(idx) = self.chart.index_of(&jet_name(&dep.name, &sigma)) {
                    *theta.component_mut(idx) = RatFun::one(self.chart.vars());
                } else {
                    // Bound coordinate: d(expr).
                    let expr = self.jet_value(di, &sigma)?;
                    for c in 0..self.chart.dim() {
                        let d = expr.derivative(c);
                        if !d.is_zero() {
                            *theta.component_mut(c) = &theta.components()[c].clone() + &d;
                        }
                    }
                }
                // − Σ value(σ+1_i) dx^i
                for i in 0..n {
                    let succ = sigma.bump(i);
                    if succ.order() > dep.order {
                        continue;
                    }
                    let v = self.jet_value(di, &succ)?;
                    if !v.is_zero() {
                        let bi = self.chart.index_of(&self.base[i]).unwrap();
                        *theta.component_mut(bi) = &theta.components()[bi].clone() - &v;
                    }
                }
                out.push(theta);
            }
        }
        Ok(out)
    }

    /// Classical alias table for expression parsing on this chart.
    pub fn aliases(&self) -> HashMap<String, String> {
        classical_aliases(&self.base, &self.dependents)
    }
}

/// Classical coordinate aliases p, q, r, s, t, alpha, beta, gamma, delta
/// for the scalar two-variable jet coordinates, plus `lam` for λ-style
/// parameters left to the caller (parameters are ordinary identifiers).
pub fn classical_aliases(base: &[String], dependents: &[Dependent]) -> HashMap<String, String> {
    let mut map = HashMap::new();
    if base.len() == 2 && dependents.len() == 1 {
        let u = &dependents[0].name;
        let pairs = [
            ("p", vec![1u8, 0]),
            ("q", vec![0, 1]),
            ("r", vec![2, 0]),
            ("s", vec![1, 1]),
            ("t", vec![0, 2]),
            ("alpha", vec![3, 0]),
            ("beta", vec![2, 1]),
            ("gamma", vec![1, 2]),
            ("delta", vec![0, 3]),
        ];
        for (alias, idx) in pairs {
            map.insert(alias.to_string(), jet_name(u, &MultiIndex(idx)));
        }
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    /// E_3: u_{3-i,i} = lam^{i+1}/(i+1).
    fn e3() -> EquationChart {
        let mut bound = Vec::new();
        for i in 0..=3u8 {
            let sigma = MultiIndex(vec![3 - i, i]);
            let expr = format!("lam^{}/{}", i + 1, i + 1);
            bound.push((0usize, sigma, expr));
        }
        EquationChart::build(EquationSpec {
            name: "E3".into(),
            base: vec!["x".into(), "y".into()],
            dependents: vec![Dependent {
                name: "u".into(),
                order: 3,
            }],
            params: vec!["lam".into()],
            bound,
        })
        .unwrap()
    }

    #[test]
    fn e3_chart_and_total_derivative() {
        let e = e3();
        assert_eq!(
            e.chart().coords(),
            &[
                "x", "y", "u", "u_10", "u_01", "u_20", "u_11", "u_02", "lam"
            ]
        );
        // D_x = ∂x + p ∂u + r ∂p + s ∂q + lam ∂r + lam^2/2 ∂s + lam^3/3 ∂t
        let dx = e.total_derivative(0).unwrap();
        let chart = e.chart();
        let get = |name: &str| dx.component_by_name(name).unwrap().clone();
        assert_eq!(get("u"), chart.coord_fun("u_10").unwrap());
        assert_eq!(get("u_10"), chart.coord_fun("u_20").unwrap());
        assert_eq!(get("u_01"), chart.coord_fun("u_11").unwrap());
        assert_eq!(get("u_20"), chart.coord_fun("lam").unwrap());
        let lam = chart.coord_fun("lam").unwrap();
        assert_eq!(
            get("u_11"),
            &lam.pow(2) * &RatFun::constant(chart.vars(), crate::algebra::Rat::new(1, 2))
        );
        assert_eq!(
            get("u_02"),
            &lam.pow(3) * &RatFun::constant(chart.vars(), crate::algebra::Rat::new(1, 3))
        );
    }

    #[test]
    fn e3_cartan_rank() {
        let e = e3();
        let c = e.cartan_distribution().unwrap();
        assert_eq!(c.generic_rank(), 3, "rank n+1 with n = 2");
    }

    #[test]
    fn e3_bracket_example() {
        // On the 3E3 chart: [-D_x, ∂_alpha-like] with alpha = lam here:
        // [∂_lam, D_x] = ∂r + lam ∂s + lam^2 ∂t.
        let e = e3();
        let dx = e.total_derivative(0).unwrap();
        let dlam = VectorField::coordinate(e.chart(), "lam").unwrap();
        let b = dlam.lie_bracket(&dx).unwrap();
        let chart = e.chart();
        let lam = chart.coord_fun("lam").unwrap();
        let mut expect = VectorField::coordinate(chart, "u_20").unwrap();
        expect.set_component(chart.index_of("u_11").unwrap(), lam.clone());
        expect.set_component(chart.index_of("u_02").unwrap(), lam.pow(2));
        assert_eq!(b, expect);
    }

    #[test]
    fn contact_forms_pair_to_zero() {
        let e = e3();
        let forms = e.cartan_lift_annihilator(1).unwrap();
        assert_eq!(forms.len(), 1, "only θ_0 at l = 1");
        let dx = e.total_derivative(0).unwrap();
        let dy = e.total_derivative(1).unwrap();
        assert!(forms[0].pair(&dx).is_zero());
        assert!(forms[0].pair(&dy).is_zero());
        let l2 = e.cartan_lift_annihilator(2).unwrap();
        assert_eq!(l2.len(), 3, "θ_0, θ_x, θ_y at l = 2");
    }
}
