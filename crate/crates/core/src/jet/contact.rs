//! Contact vector fields from generating functions and their prolongation
//! to higher jets, plus the tangency test against parametrized equations.

use crate::algebra::{Mat, RatFun, VarSet};
use crate::geometry::chart::Chart;
use crate::geometry::field::VectorField;
use crate::jet::equation::{jet_name, EquationChart};
use crate::jet::multiindex::MultiIndex;
use crate::jet::JetError;
use std::collections::HashMap;

/// Chart of J^k for a scalar dependent `u` over `n` base variables.
pub fn jet_chart(n: usize, k: usize) -> Chart {
    let base = base_names(n);
    let mut coords: Vec<String> = base.to_vec();
    for sigma in MultiIndex::all_up_to(n, k) {
        coords.push(jet_name("u", &sigma));
    }
    Chart::new(&format!("J{k}"), coords)
}

pub fn base_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

/// A generating function (contact Hamiltonian) on the first-jet chart.
#[derive(Clone)]
pub struct GeneratingFunction {
    n: usize,
    f: RatFun,
    chart: Chart,
    source: String,
}

impl GeneratingFunction {
    pub fn parse(n: usize, src: &str) -> Result<Self, JetError> {
        let chart = jet_chart(n, 1);
        let mut aliases = HashMap::new();
        if n >= 1 {
            aliases.insert("u_x".to_string(), jet_name("u", &unit_index(n, 0)));
        }
        if n >= 2 {
            aliases.insert("u_y".to_string(), jet_name("u", &unit_index(n, 1)));
        }
        if n >= 3 {
            aliases.insert("u_z".to_string(), jet_name("u", &unit_index(n, 2)));
        }
        let f = crate::algebra::parse_expr_aliased(src, chart.vars(), &aliases)?;
        Ok(GeneratingFunction {
            n,
            f,
            chart,
            source: src.to_string(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn expr(&self) -> &RatFun {
        &self.f
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn first_jet_chart(&self) -> &Chart {
        &self.chart
    }

    /// The contact field on the first jet:
    /// `X_f = −Σ f_{u_i} D_i^1 + f ∂_u + Σ D_i^1(f) ∂_{u_i}`
    /// with `D_i^1 = ∂_i + u_i ∂_u`.
    pub fn contact_field(&self) -> Result<VectorField, JetError> {
        self.prolonged_field(1)
    }

    /// Prolongation of `X_f` to the order-`k` jet chart.
    pub fn prolonged_field(&self, k: usize) -> Result<VectorField, JetError> {
        let n = self.n;
        let target = jet_chart(n, k);
        // Work on the extension J^{k+1} so iterated total derivatives stay
        // inside one variable set; the top-order terms cancel exactly.
        let ext = jet_chart(n, k + 1);
        let lift = |f: &RatFun| -> RatFun {
            f.substitute_into(ext.vars(), &HashMap::new())
                .expect("jet chart inclusion")
        };
        // Total derivatives on the extension, differentiating jets ≤ k.
        let total = |g: &RatFun, i: usize| -> RatFun {
            let mut acc = g.derivative(ext.index_of(&base_names(n)[i]).unwrap());
            for sigma in MultiIndex::all_up_to(n, k) {
                let idx = ext.index_of(&jet_name("u", &sigma)).unwrap();
                let d = g.derivative(idx);
                if d.is_zero() {
                    continue;
                }
                let succ = RatFun::var(ext.vars(), &jet_name("u", &sigma.bump(i))).unwrap();
                acc = &acc + &(&succ * &d);
            }
            acc
        };
        let f_ext = lift(&self.f);
        // ∂f/∂u_i on the first-jet variables.
        let fu: Vec<RatFun> = (0..n)
            .map(|i| {
                let name = jet_name("u", &unit_index(n, i));
                f_ext.derivative(ext.index_of(&name).unwrap())
            })
            .collect();
        // D_σ(f) by iterated totals, memoized along the multi-index lattice.
        let mut dsf: HashMap<MultiIndex, RatFun> = HashMap::new();
        dsf.insert(MultiIndex::zero(n), f_ext.clone());
        for sigma in MultiIndex::all_up_to(n, k) {
            if sigma.order() == 0 {
                continue;
            }
            let (i, prev) = first_step(&sigma);
            let prev_val = dsf.get(&prev).expect("graded order").clone();
            dsf.insert(sigma.clone(), total(&prev_val, i));
        }
        // Assemble on the extension: −Σ f_{u_i} D_i^{(k)} + Σ D_σ(f) ∂_{u_σ}.
        let mut comps: Vec<RatFun> = vec![ext.zero_fun(); ext.dim()];
        for i in 0..n {
            if fu[i].is_zero() {
                continue;
            }
            // D_i^{(k)} = ∂_i + Σ_{|σ|≤k} u_{σ+1_i} ∂_{u_σ}
            let bi = ext.index_of(&base_names(n)[i]).unwrap();
            comps[bi] = &comps[bi] - &fu[i];
            for sigma in MultiIndex::all_up_to(n, k) {
                let idx = ext.index_of(&jet_name("u", &sigma)).unwrap();
                let succ = RatFun::var(ext.vars(), &jet_name("u", &sigma.bump(i))).unwrap();
                comps[idx] = &comps[idx] - &(&fu[i] * &succ);
            }
        }
        for sigma in MultiIndex::all_up_to(n, k) {
            let idx = ext.index_of(&jet_name("u", &sigma)).unwrap();
            comps[idx] = &comps[idx] + &dsf[&sigma];
        }
        // Restrict to J^k: every component must be free of the (k+1)-order
        // coordinates after cancellation.
        let mut out = Vec::with_capacity(target.dim());
        for c in target.coords() {
            let idx = ext.index_of(c).unwrap();
            let restricted = comps[idx]
                .substitute_into(target.vars(), &HashMap::new())
                .map_err(|_| JetError::Internal {
                    message: format!(
                        "prolongation component on ∂_{c} failed to cancel top-order jets"
                    ),
                })?;
            out.push(restricted);
        }
        Ok(VectorField::from_components(&target, out))
    }
}

fn unit_index(n: usize, i: usize) -> MultiIndex {
    let mut v = vec![0u8; n];
    v[i] = 1;
    MultiIndex(v)
}

/// First base direction with a nonzero exponent and σ − 1_i.
fn first_step(sigma: &MultiIndex) -> (usize, MultiIndex) {
    for i in 0..sigma.len() {
        if let Some(prev) = sigma.lower(i) {
            return (i, prev);
        }
    }
    unreachable!("nonzero multi-index")
}

/// Outcome of the tangency test.
pub struct TangencyResult {
    pub tangent: bool,
    /// A nonzero residual witness when not tangent: (slot name, residual).
    pub residual: Option<(String, RatFun)>,
    /// When tangent: the restriction of the prolonged field to the
    /// intrinsic chart, parameter components solved for.
    pub internal_field: Option<VectorField>,
}

/// Check whether the prolongation of `X_f` is tangent to the parametrized
/// equation `eq`, and restrict it to the equation chart if so.
///
/// For every bound slot τ the prolonged field must satisfy
/// `X̂^{u_τ}|_Φ − Σ_c X̂^c|_Φ ∂E_τ/∂c = Σ_p g_p ∂E_τ/∂p`
/// over base and free-jet directions `c`, for parameter velocities `g_p`
/// solved exactly over the function field.
pub fn is_external_symmetry(
    eq: &EquationChart,
    f: &GeneratingFunction,
) -> Result<TangencyResult, JetError> {
    let n = eq.base().len();
    if f.n() != n {
        return Err(JetError::BaseMismatch {
            expected: n,
            got: f.n(),
        });
    }
    if eq.dependents().len() != 1 {
        return Err(JetError::ScalarOnly);
    }
    let k = eq.dependents()[0].order;
    let dep_name = eq.dependents()[0].name.clone();
    let hat = f.prolonged_field(k)?;
    let jchart = hat.chart().clone();
    let echart = eq.chart().clone();
    // Bindings J^k → intrinsic chart: bound jets by their expressions,
    // renaming the dependent if necessary.
    let mut bindings: HashMap<String, RatFun> = HashMap::new();
    for ((_, sigma), expr) in eq.bound_jets() {
        bindings.insert(jet_name("u", sigma), expr.clone());
    }
    if dep_name != "u" {
        for sigma in MultiIndex::all_up_to(n, k) {
            let jn = jet_name("u", &sigma);
            if !bindings.contains_key(&jn) {
                bindings.insert(
                    jn,
                    RatFun::var(echart.vars(), &jet_name(&dep_name, &sigma))
                        .map_err(JetError::from)?,
                );
            }
        }
    }
    let restrict = |g: &RatFun| -> Result<RatFun, JetError> {
        g.substitute_into(echart.vars(), &bindings)
            .map_err(JetError::from)
    };
    // Restricted components of the prolonged field on base + free jets.
    let mut intrinsic_comp: Vec<RatFun> = vec![echart.zero_fun(); echart.dim()];
    for (i, b) in eq.base().iter().enumerate() {
        let c = hat.component_by_name(b).expect("base on jet chart");
        intrinsic_comp[echart.index_of(b).unwrap()] = restrict(c)?;
        let _ = i;
    }
    for sigma in eq.free_jets(0) {
        let c = hat
            .component_by_name(&jet_name("u", sigma))
            .expect("jet slot");
        let name = jet_name(&dep_name, sigma);
        intrinsic_comp[echart.index_of(&name).unwrap()] = restrict(c)?;
    }
    // Residuals on bound slots.
    let bound: Vec<(&(usize, MultiIndex), &RatFun)> = eq.bound_jets().collect();
    let mut residuals: Vec<RatFun> = Vec::with_capacity(bound.len());
    for ((_, sigma), expr) in &bound {
        let hat_comp = hat
            .component_by_name(&jet_name("u", sigma))
            .expect("bound slot on jet chart");
        let mut r = restrict(hat_comp)?;
        for (ci, comp) in intrinsic_comp.iter().enumerate() {
            if comp.is_zero() {
                continue;
            }
            let d = expr.derivative(ci);
            if !d.is_zero() {
                r = &r - &(comp * &d);
            }
        }
        residuals.push(r);
    }
    // Solve residual = Σ_p g_p ∂E/∂p.
    let params = eq.params();
    let tangent;
    let mut param_vel: Vec<RatFun> = Vec::new();
    if params.is_empty() {
        tangent = residuals.iter().all(RatFun::is_zero);
    } else {
        let rows: Vec<Vec<RatFun>> = bound
            .iter()
            .map(|((_, _), expr)| {
                params
                    .iter()
                    .map(|p| expr.derivative(echart.index_of(p).unwrap()))
                    .collect()
            })
            .collect();
        let mat = Mat::from_rows(rows);
        match mat.solve(&residuals) {
            Some(g) => {
                tangent = true;
                param_vel = g;
            }
            None => {
                tangent = false;
            }
        }
    }
    if !tangent {
        // First nonzero residual as the witness.
        let witness = bound
            .iter()
            .zip(&residuals)
            .find(|(_, r)| !r.is_zero())
            .map(|(((_, sigma), _), r)| (jet_name(&dep_name, sigma), r.clone()));
        return Ok(TangencyResult {
            tangent: false,
            residual: witness,
            internal_field: None,
        });
    }
    for (p, g) in params.iter().zip(&param_vel) {
        intrinsic_comp[echart.index_of(p).unwrap()] = g.clone();
    }
    Ok(TangencyResult {
        tangent: true,
        residual: None,
        internal_field: Some(VectorField::from_components(&echart, intrinsic_comp)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_generating_function() {
        // f = u_x gives -∂_x at every order.
        let f = GeneratingFunction::parse(2, "u_x").unwrap();
        let x1 = f.contact_field().unwrap();
        let chart1 = x1.chart().clone();
        let expect1 = VectorField::coordinate(&chart1, "x").unwrap().neg();
        assert_eq!(x1, expect1);
        for k in [2usize, 3] {
            let xk = f.prolonged_field(k).unwrap();
            let chart = xk.chart().clone();
            let expect = VectorField::coordinate(&chart, "x").unwrap().neg();
            assert_eq!(xk, expect, "translations prolong to translations");
        }
    }

    #[test]
    fn f_equals_x() {
        // f = x gives x ∂_u + ∂_{u_x}.
        let f = GeneratingFunction::parse(2, "x").unwrap();
        let v = f.contact_field().unwrap();
        let chart = v.chart().clone();
        let mut expect = VectorField::zero(&chart);
        expect.set_component(chart.index_of("u").unwrap(), chart.coord_fun("x").unwrap());
        expect.set_component(
            chart.index_of("u_10").unwrap(),
            RatFun::one(chart.vars()),
        );
        assert_eq!(v, expect);
    }

    #[test]
    fn prolongation_at_order_one_is_contact_field() {
        for src in ["u", "x*u_y - y*u_x", "u_x^2 + u*u_y", "x^2*y"] {
            let f = GeneratingFunction::parse(2, src).unwrap();
            assert_eq!(f.prolonged_field(1).unwrap(), f.contact_field().unwrap());
        }
    }
}
