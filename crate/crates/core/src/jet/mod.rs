//! Jet coordinates, truncated total derivatives, parametrized PDE systems,
//! contact fields and the model catalog.

pub mod catalog;
pub mod contact;
pub mod equation;
pub mod multiindex;

pub use catalog::{catalog, catalog_list, CatalogParams, Model, ModelObject};
pub use contact::{is_external_symmetry, jet_chart, GeneratingFunction, TangencyResult};
pub use equation::{jet_name, Dependent, EquationChart, EquationSpec};
pub use multiindex::MultiIndex;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum JetError {
    #[error("multi-index has {got} entries, base has {expected}")]
    MultiIndexArity { expected: usize, got: usize },

    #[error("bound coordinate `{name}` is outside the declared jet orders")]
    BadBoundCoordinate { name: String },

    #[error("base index {index} out of range")]
    BadBaseIndex { index: usize },

    #[error("jet order {order} out of range")]
    BadOrder { order: usize },

    #[error("generating function over {got} base variables, equation over {expected}")]
    BaseMismatch { expected: usize, got: usize },

    #[error("operation supports scalar (single dependent) systems only")]
    ScalarOnly,

    #[error("unknown catalog model `{name}`")]
    UnknownModel { name: String },

    #[error("{message}")]
    ParameterRange { message: String },

    #[error("internal invariant violated: {message}")]
    Internal { message: String },

    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),

    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeomError),
}

/// Formal-consistency check for an equation chart: there must exist
/// vertical velocities ρ_{v,i} making the lifted total derivatives
/// commute on all non-vertical slots:
/// `[D_i, D_j] + Σ_v (ρ_{v,i} [∂_v, D_j] − ρ_{v,j} [∂_v, D_i]) = 0`.
pub fn is_formally_consistent(eq: &EquationChart) -> Result<bool, JetError> {
    use crate::algebra::{Mat, RatFun};
    use crate::geometry::field::VectorField;
    let chart = eq.chart().clone();
    let n = eq.base().len();
    if n < 2 {
        return Ok(true);
    }
    let totals: Vec<VectorField> = (0..n)
        .map(|i| eq.total_derivative(i))
        .collect::<Result<_, _>>()?;
    let verticals = eq.vertical_fields()?;
    let vert_slots: Vec<usize> = verticals
        .iter()
        .map(|v| {
            v.components()
                .iter()
                .position(|c| !c.is_zero())
                .expect("vertical coordinate field")
        })
        .collect();
    // Corrections C[v][i] = [∂_v, D_i].
    let corrections: Vec<Vec<VectorField>> = verticals
        .iter()
        .map(|v| {
            totals
                .iter()
                .map(|d| v.lie_bracket(d).expect("same chart"))
                .collect()
        })
        .collect();
    let nv = verticals.len();
    let ncols = nv * n;
    let mut rows: Vec<Vec<RatFun>> = Vec::new();
    let mut rhs: Vec<RatFun> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let defect = totals[i].lie_bracket(&totals[j])?;
            for c in 0..chart.dim() {
                if vert_slots.contains(&c) {
                    continue;
                }
                let mut row = vec![chart.zero_fun(); ncols];
                let mut any = !defect.component(c).is_zero();
                for (vi, corr) in corrections.iter().enumerate() {
                    // + ρ_{v,i} [∂_v, D_j]^c  − ρ_{v,j} [∂_v, D_i]^c
                    let a = corr[j].component(c).clone();
                    let b = corr[i].component(c).clone();
                    if !a.is_zero() {
                        row[vi * n + i] = a;
                        any = true;
                    }
                    if !b.is_zero() {
                        row[vi * n + j] = -&b;
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                    rhs.push(-defect.component(c));
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok(true);
    }
    Ok(Mat::from_rows(rows).solve(&rhs).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_models_are_formally_consistent() {
        let with_k = |k: usize| CatalogParams {
            k: Some(k),
            ..Default::default()
        };
        let with_km = |k: usize, m: usize| CatalogParams {
            k: Some(k),
            m: Some(m),
            ..Default::default()
        };
        let cases: Vec<(&str, CatalogParams)> = vec![
            ("ek", with_k(3)),
            ("ek", with_k(4)),
            ("fk", with_km(3, 2)),
            ("rkm", with_km(3, 2)),
            ("s8-2e2e1", CatalogParams::default()),
            ("s8-2nd-order", CatalogParams::default()),
            ("s8-3e3-3e2", CatalogParams::default()),
            ("s8-9e3", CatalogParams::default()),
            ("s3-e2e3-generic", CatalogParams::default()),
            ("s3-3e3-generic", CatalogParams::default()),
            ("s2-goursat", CatalogParams::default()),
        ];
        for (name, params) in cases {
            let model = catalog(name, &params).unwrap();
            if let Some(eq) = model.equation() {
                assert!(
                    is_formally_consistent(eq).unwrap(),
                    "{name} should be formally consistent"
                );
            }
        }
    }
}
