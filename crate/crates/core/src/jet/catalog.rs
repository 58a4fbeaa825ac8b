//! Catalog of the model systems: the E_k, F_k, R_k^m families, the
//! Hilbert–Cartan distribution, Monge reductions, the n > 2 systems and
//! the two worked two-variable instances.

use crate::algebra::{Rat, RatFun};
use crate::geometry::chart::Chart;
use crate::geometry::distribution::Distribution;
use crate::geometry::field::VectorField;
use crate::jet::equation::{Dependent, EquationChart, EquationSpec};
use crate::jet::multiindex::MultiIndex;
use crate::jet::JetError;

pub enum ModelObject {
    Equation(EquationChart),
    Distribution { chart: Chart, dist: Distribution },
}

pub struct Model {
    pub name: String,
    pub object: ModelObject,
}

impl Model {
    pub fn equation(&self) -> Option<&EquationChart> {
        match &self.object {
            ModelObject::Equation(e) => Some(e),
            _ => None,
        }
    }

    pub fn distribution(&self) -> Option<&Distribution> {
        match &self.object {
            ModelObject::Distribution { dist, .. } => Some(dist),
            _ => None,
        }
    }
}

/// Integer parameters accepted by the catalog builders.
#[derive(Clone, Debug, Default)]
pub struct CatalogParams {
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub m_list: Option<Vec<usize>>,
}

/// Names and one-line descriptions of the available models.
pub fn catalog_list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("ek", "E_k: u_{k-i,i} = lam^{i+1}/(i+1) (requires --k, k >= 2)"),
        (
            "fk",
            "F_k: u_{k-i,i} = lam^{i*m+1}/(i*m+1) (requires --k >= 2, --m >= 1)",
        ),
        (
            "rkm",
            "R_k^m: m-th tangent cone family with zeta parameters (requires --k >= 2, --m < k)",
        ),
        ("cartan-1910", "the involutive second-order pair system (= ek with k = 2)"),
        ("hilbert-cartan", "rank-2 distribution of y' = (z'')^2 on a 5-chart"),
        (
            "monge-kl",
            "reduction v^j_x = (v^1_xx)^{m_j+1}/(m_j+1) (requires --n, --m-list)",
        ),
        ("s8-2e2e1", "2E2+E1 in three variables: the pair system plus u_z = 0"),
        ("s8-2nd-order", "pure 2nd order: pair system plus u_xz = u_yz = u_zz = 0"),
        ("s8-3e3-3e2", "3E3+3E2: third order in x,y plus u_xz = u_yz = u_zz = 0"),
        ("s8-9e3", "pure 3rd order: 9 equations in three variables"),
        (
            "s8-order3",
            "u_ijk = lam^{m_i+m_j+m_k+1}/(m_i+m_j+m_k+1) (requires --n, --m-list)",
        ),
        ("s3-e2e3-generic", "worked E2+E3 instance (see model docs)"),
        ("s3-3e3-generic", "worked 3E3 instance with F = alpha^2/2"),
        ("s2-goursat", "degenerate pair u_xy = 0, u_yyy = 0"),
    ]
}

pub fn catalog(name: &str, params: &CatalogParams) -> Result<Model, JetError> {
    let model = match name {
        "ek" => ek(require_k(params, 2)?)?,
        "cartan-1910" => ek(2)?,
        "fk" => fk(require_k(params, 2)?, require_m(params)?)?,
        "rkm" => rkm(require_k(params, 2)?, require_m(params)?)?,
        "hilbert-cartan" => hilbert_cartan()?,
        "monge-kl" => monge_kl(params)?,
        "s8-2e2e1" => s8_2e2e1()?,
        "s8-2nd-order" => s8_second_order()?,
        "s8-3e3-3e2" => s8_3e3_3e2()?,
        "s8-9e3" => s8_9e3()?,
        "s8-order3" => s8_order3(params)?,
        "s3-e2e3-generic" => e2e3_instance()?,
        "s3-3e3-generic" => threee3_instance()?,
        "s2-goursat" => goursat_pair()?,
        _ => {
            return Err(JetError::UnknownModel {
                name: name.to_string(),
            })
        }
    };
    Ok(model)
}

fn require_k(params: &CatalogParams, min: usize) -> Result<usize, JetError> {
    match params.k {
        Some(k) if k >= min => Ok(k),
        Some(k) => Err(JetError::ParameterRange {
            message: format!("k = {k} out of range (need k >= {min})"),
        }),
        None => Err(JetError::ParameterRange {
            message: "missing parameter k".to_string(),
        }),
    }
}

fn require_m(params: &CatalogParams) -> Result<usize, JetError> {
    params.m.ok_or_else(|| JetError::ParameterRange {
        message: "missing parameter m".to_string(),
    })
}

/// E_k on J^k(ℝ²): u_{k−i,i} = λ^{i+1}/(i+1), 0 ≤ i ≤ k.
pub fn ek(k: usize) -> Result<Model, JetError> {
    let mut bound = Vec::new();
    for i in 0..=k {
        bound.push((
            0,
            MultiIndex(vec![(k - i) as u8, i as u8]),
            format!("lam^{}/{}", i + 1, i + 1),
        ));
    }
    let eq = EquationChart::build(EquationSpec {
        name: format!("E{k}"),
        base: vec!["x".into(), "y".into()],
        dependents: vec![Dependent {
            name: "u".into(),
            order: k,
        }],
        params: vec!["lam".into()],
        bound,
    })?;
    Ok(Model {
        name: format!("ek(k={k})"),
        object: ModelObject::Equation(eq),
    })
}

/// F_k on J^k(ℝ²): u_{k−i,i} = λ^{im+1}/(im+1).
pub fn fk(k: usize, m: usize) -> Result<Model, JetError> {
    if m < 1 {
        return Err(JetError::ParameterRange {
            message: "fk needs m >= 1".to_string(),
        });
    }
    let mut bound = Vec::new();
    for i in 0..=k {
        let e = i * m + 1;
        bound.push((
            0,
            MultiIndex(vec![(k - i) as u8, i as u8]),
            format!("lam^{e}/{e}"),
        ));
    }
    let eq = EquationChart::build(EquationSpec {
        name: format!("F{k}m{m}"),
        base: vec!["x".into(), "y".into()],
        dependents: vec![Dependent {
            name: "u".into(),
            order: k,
        }],
        params: vec!["lam".into()],
        bound,
    })?;
    Ok(Model {
        name: format!("fk(k={k},m={m})"),
        object: ModelObject::Equation(eq),
    })
}

/// R_k^m: u_{k−i,i} = λ^{i+1}/(i+1) + Σ_{j=1}^{min(m,i+1)} i!/(i+1−j)! λ^{i+1−j} ζ_j.
pub fn rkm(k: usize, m: usize) -> Result<Model, JetError> {
    if m >= k {
        return Err(JetError::ParameterRange {
            message: format!("rkm needs m < k, got m = {m}, k = {k}"),
        });
    }
    let factorial = |n: usize| -> u64 { (1..=n as u64).product::<u64>().max(1) };
    let mut params = vec!["lam".to_string()];
    for j in 1..=m {
        params.push(format!("zeta{j}"));
    }
    let mut bound = Vec::new();
    for i in 0..=k {
        let mut expr = format!("lam^{}/{}", i + 1, i + 1);
        for j in 1..=m.min(i + 1) {
            let coeff = factorial(i) / factorial(i + 1 - j);
            let power = i + 1 - j;
            let lam_part = match power {
                0 => String::new(),
                1 => "*lam".to_string(),
                p => format!("*lam^{p}"),
            };
            expr.push_str(&format!(" + {coeff}{lam_part}*zeta{j}"));
        }
        bound.push((0, MultiIndex(vec![(k - i) as u8, i as u8]), expr));
    }
    let eq = EquationChart::build(EquationSpec {
        name: format!("R{k}_{m}"),
        base: vec!["x".into(), "y".into()],
        dependents: vec![Dependent {
            name: "u".into(),
            order: k,
        }],
        params,
        bound,
    })?;
    Ok(Model {
        name: format!("rkm(k={k},m={m})"),
        object: ModelObject::Equation(eq),
    })
}

/// The Hilbert–Cartan rank-2 distribution on (x, y, z, z1, z2).
pub fn hilbert_cartan() -> Result<Model, JetError> {
    let chart = Chart::new("HC", ["x", "y", "z", "z1", "z2"]);
    let z1 = chart.coord_fun("z1").map_err(JetError::from)?;
    let z2 = chart.coord_fun("z2").map_err(JetError::from)?;
    let mut v = VectorField::coordinate(&chart, "x").map_err(JetError::from)?;
    v.set_component(chart.index_of("z").unwrap(), z1);
    v.set_component(chart.index_of("z1").unwrap(), z2.clone());
    v.set_component(chart.index_of("y").unwrap(), &z2 * &z2);
    let w = VectorField::coordinate(&chart, "z2").map_err(JetError::from)?;
    let dist = Distribution::new(&chart, vec![v, w]).map_err(JetError::from)?;
    Ok(Model {
        name: "hilbert-cartan".to_string(),
        object: ModelObject::Distribution { chart, dist },
    })
}

/// The Monge reduction v^j_x = (v¹_xx)^{m_j+1}/(m_j+1), j = 2..n, as the
/// rank-2 distribution ⟨D, ∂_λ⟩ on (x, v1, v1_1, v2, …, vn, λ).
pub fn monge_kl(params: &CatalogParams) -> Result<Model, JetError> {
    let n = params.n.ok_or_else(|| JetError::ParameterRange {
        message: "missing parameter n".to_string(),
    })?;
    let m_list = params
        .m_list
        .clone()
        .ok_or_else(|| JetError::ParameterRange {
            message: "missing m-list".to_string(),
        })?;
    if n < 2 || m_list.len() != n {
        return Err(JetError::ParameterRange {
            message: format!("monge-kl needs n >= 2 and an m-list of length n, got {m_list:?}"),
        });
    }
    if m_list[0] != 0 {
        return Err(JetError::ParameterRange {
            message: "m-list must be normalized with m_1 = 0".to_string(),
        });
    }
    let mut coords = vec!["x".to_string(), "v1".to_string(), "v1_1".to_string()];
    for j in 2..=n {
        coords.push(format!("v{j}"));
    }
    coords.push("lam".to_string());
    let chart = Chart::new(&format!("MongeKL{n}"), coords);
    let lam = chart.coord_fun("lam").map_err(JetError::from)?;
    let mut d = VectorField::coordinate(&chart, "x").map_err(JetError::from)?;
    d.set_component(
        chart.index_of("v1").unwrap(),
        chart.coord_fun("v1_1").map_err(JetError::from)?,
    );
    d.set_component(chart.index_of("v1_1").unwrap(), lam.clone());
    for (j, mj) in m_list.iter().enumerate().skip(1) {
        let e = (mj + 1) as u32;
        let coeff = RatFun::constant(chart.vars(), Rat::new(1, e as i64));
        d.set_component(
            chart.index_of(&format!("v{}", j + 1)).unwrap(),
            &lam.pow(e) * &coeff,
        );
    }
    let dlam = VectorField::coordinate(&chart, "lam").map_err(JetError::from)?;
    let dist = Distribution::new(&chart, vec![d, dlam]).map_err(JetError::from)?;
    Ok(Model {
        name: format!("monge-kl(n={n},m={m_list:?})"),
        object: ModelObject::Distribution { chart, dist },
    })
}

/// 2E2+E1: the pair system in (x, y) together with u_z = 0.
pub fn s8_2e2e1() -> Result<Model, JetError> {
    let idx = |a: u8, b: u8, c: u8| MultiIndex(vec![a, b, c]);
    let bound = vec![
        (0, idx(0, 0, 1), "0".to_string()),
        (0, idx(2, 0, 0), "lam".to_string()),
        (0, idx(1, 1, 0), "lam^2/2".to_string()),
        (0, idx(0, 2, 0), "lam^3/3".to_string()),
        (0, idx(1, 0, 1), "0".to_string()),
        (0, idx(0, 1, 1), "0".to_string()),
        (0, idx(0, 0, 2), "0".to_string()),
    ];
    let eq = EquationChart::build(EquationSpec {
        name: "S8_2E2E1".into(),
        base: vec!["x".into(), "y".into(), "z".into()],
        dependents: vec![Dependent {
            name: "u".into(),
            order: 2,
        }],
        params: vec!["lam".into()],
        bound,
    })?;
    Ok(Model {
        name: "s8-2e2e1".to_string(),
        object: ModelObject::Equation(eq),
    })
}

/// Pure second order in three variables: the pair system plus
/// u_xz = u_yz = u_zz = 0.
pub fn s8_second_order() -> Result<Model, JetError> {
    let idx = |a: u8, b: u8, c: u8| MultiIndex(vec![a, b, c]);
    let bound = vec![
        (0, idx(2, 0, 0), "lam".to_string()),
        (0, idx(1, 1, 0), "lam^2/2".to_string()),
        (0, idx(0, 2, 0), "lam^3/3".to_string()),
        (0, idx(1, 0, 1), "0".to_string()),
        (0, idx(0, 1, 1), "0".to_string()),
        (0, idx(0, 0, 2), "0".to_string()),
    ];
    let eq = EquationChart::build(EquationSpec {
        name: "S8_2ND".into(),
        base: vec!["x".into(), "y".into(), "z".into()],
        dependents: vec![Dependent {
            name: "u".into(),
            order: 2,
        }],
        params: vec!["lam".into()],
        bound,
    })?;
    Ok(Model {
        name: "s8-2nd-order".to_string(),
        object: ModelObject::Equation(eq),
    })
}

/// 3E3+3E2: third order in (x, y) plus u_xz = u_yz = u_zz = 0 with all
/// third-order prolongations of the z-equations.
pub fn s8_3e3_3e2() -> Result<Model, JetError> {
    let idx = |a: u8, b: u8, c: u8| MultiIndex(vec![a, b, c]);
    let mut bound = vec![
        (0, idx(1, 0, 1), "0".to_string()),
        (0, idx(0, 1, 1), "0".to_string()),
        (0, idx(0, 0, 2), "0".to_string()),
        (0, idx(3, 0, 0), "lam".to_string()),
        (0, idx(2, 1, 0), "lam^2/2".to_string()),
        (0, idx(1, 2, 0), "lam^3/3".to_string()),
        (0, idx(0, 3, 0), "lam^4/4".to_string()),
    ];
    // Third-order prolongations of the z-equations vanish.
    for t in [
        idx(2, 0, 1),
        idx(1, 1, 1),
        idx(0, 2, 1),
        idx(1, 0, 2),
        idx(0, 1, 2),
        idx(0, 0, 3),
    ] {
        bound.push((0, t, "0".to_string()));
    }
    let eq = EquationChart::build(EquationSpec {
        name: "S8_3E3_3E2".into(),
        base: vec!["x".into(), "y".into(), "z".into()],
        dependents: vec![Dependent {
            name: "u".into(),
            order: 3,
        }],
        params: vec!["lam".into()],
        bound,
    })?;
    Ok(Model {
        name: "s8-3e3-3e2".to_string(),
        object: ModelObject::Equation(eq),
    })
}

/// Pure third order in three variables: the 9E3 system.
pub fn s8_9e3() -> Result<Model, JetError> {
    let idx = |a: u8, b: u8, c: u8| MultiIndex(vec![a, b, c]);
    let mut bound = vec![
        (0, idx(3, 0, 0), "lam".to_string()),
        (0, idx(2, 1, 0), "lam^2/2".to_string()),
        (0, idx(1, 2, 0), "lam^3/3".to_string()),
        (0, idx(0, 3, 0), "lam^4/4".to_string()),
    ];
    for t in [
        idx(2, 0, 1),
        idx(1, 1, 1),
        idx(0, 2, 1),
        idx(1, 0, 2),
        idx(0, 1, 2),
        idx(0, 0, 3),
    ] {
        bound.push((0, t, "0".to_string()));
    }
    let eq = EquationChart::build(EquationSpec {
        name: "S8_9E3".into(),
        base: vec!["x".into(), "y".into(), "z".into()],
        dependents: vec![Dependent {
            name: "u".into(),
            order: 3,
        }],
        params: vec!["lam".into()],
        bound,
    })?;
    Ok(Model {
        name: "s8-9e3".to_string(),
        object: ModelObject::Equation(eq),
    })
}

/// Third-order family u_σ = λ^{E+1}/(E+1) with E = Σ_a σ_a m_a.
pub fn s8_order3(params: &CatalogParams) -> Result<Model, JetError> {
    let n = params.n.ok_or_else(|| JetError::ParameterRange {
        message: "missing parameter n".to_string(),
    })?;
    let m_list = params
        .m_list
        .clone()
        .ok_or_else(|| JetError::ParameterRange {
            message: "missing m-list".to_string(),
        })?;
    if m_list.len() != n {
        return Err(JetError::ParameterRange {
            message: "m-list length must equal n".to_string(),
        });
    }
    let mut bound = Vec::new();
    for sigma in MultiIndex::all_of_order(n, 3) {
        let e: usize = sigma
            .0
            .iter()
            .zip(&m_list)
            .map(|(&s, &m)| s as usize * m)
            .sum::<usize>()
            + 1;
        bound.push((0, sigma, format!("lam^{e}/{e}")));
    }
    let eq = EquationChart::build(EquationSpec {
        name: format!("S8_ORD3_{n}"),
        base: crate::jet::contact::base_names(n),
        dependents: vec![Dependent {
            name: "u".into(),
            order: 3,
        }],
        params: vec!["lam".into()],
        bound,
    })?;
    Ok(Model {
        name: format!("s8-order3(n={n},m={m_list:?})"),
        object: ModelObject::Equation(eq),
    })
}

/// Build an E2+E3 system {u_yy = F, u_xxy = A·u_xxx + B} from 2-jet data
/// (expressions in x, y, u, p, q, r, s), prolonging the second-order
/// equation to fill u_xyy and u_yyy.
pub fn e2e3_from(f_src: &str, a_src: &str, b_src: &str) -> Result<EquationChart, JetError> {
    // First build the chart skeleton with placeholder zeros so the parser
    // has the right variable set, then recompute the prolonged expressions.
    let idx = |a: u8, b: u8| MultiIndex(vec![a, b]);
    let skeleton = EquationChart::build(EquationSpec {
        name: "E2E3".into(),
        base: vec!["x".into(), "y".into()],
        dependents: vec![Dependent {
            name: "u".into(),
            order: 3,
        }],
        params: vec![],
        bound: vec![
            (0, idx(0, 2), "0".into()),
            (0, idx(2, 1), "0".into()),
            (0, idx(1, 2), "0".into()),
            (0, idx(0, 3), "0".into()),
        ],
    })?;
    let chart = skeleton.chart().clone();
    let aliases = skeleton.aliases();
    let parse = |src: &str| -> Result<RatFun, JetError> {
        crate::algebra::parse_expr_aliased(src, chart.vars(), &aliases).map_err(JetError::from)
    };
    let f = parse(f_src)?;
    let a = parse(a_src)?;
    let b = parse(b_src)?;
    let alpha = chart.coord_fun("u_30").map_err(JetError::from)?;
    let beta = &(&a * &alpha) + &b;
    // γ = D_x(F) with t already eliminated: F depends on x, y, u, p, q, r, s.
    let d_of = |g: &RatFun, which: char, beta: &RatFun, gamma: Option<&RatFun>, t: &RatFun| -> RatFun {
        // Total derivative of a 2-jet function on the equation.
        let slot = |name: &str| chart.index_of(name).unwrap();
        let deriv = |g: &RatFun, name: &str| g.derivative(slot(name));
        let p = chart.coord_fun("u_10").unwrap();
        let q = chart.coord_fun("u_01").unwrap();
        let r = chart.coord_fun("u_20").unwrap();
        let s = chart.coord_fun("u_11").unwrap();
        match which {
            'x' => {
                let mut acc = deriv(g, "x");
                acc = &acc + &(&p * &deriv(g, "u"));
                acc = &acc + &(&r * &deriv(g, "u_10"));
                acc = &acc + &(&s * &deriv(g, "u_01"));
                acc = &acc + &(&alpha * &deriv(g, "u_20"));
                acc = &acc + &(beta * &deriv(g, "u_11"));
                acc
            }
            _ => {
                let mut acc = deriv(g, "y");
                acc = &acc + &(&q * &deriv(g, "u"));
                acc = &acc + &(&s * &deriv(g, "u_10"));
                acc = &acc + &(t * &deriv(g, "u_01"));
                acc = &acc + &(beta * &deriv(g, "u_20"));
                acc = &acc + &(gamma.expect("gamma needed") * &deriv(g, "u_11"));
                acc
            }
        }
    };
    let gamma = d_of(&f, 'x', &beta, None, &f);
    let delta = d_of(&f, 'y', &beta, Some(&gamma), &f);
    EquationChart::build(EquationSpec {
        name: "E2E3".into(),
        base: vec!["x".into(), "y".into()],
        dependents: vec![Dependent {
            name: "u".into(),
            order: 3,
        }],
        params: vec![],
        bound: vec![
            (0, idx(0, 2), f.to_string()),
            (0, idx(2, 1), beta.to_string()),
            (0, idx(1, 2), gamma.to_string()),
            (0, idx(0, 3), delta.to_string()),
        ],
    })
}

/// The worked E2+E3 instance: F = s²/2, A = s, B = 0.
pub fn e2e3_instance() -> Result<Model, JetError> {
    let eq = e2e3_from("s^2/2", "s", "0")?;
    Ok(Model {
        name: "s3-e2e3-generic".to_string(),
        object: ModelObject::Equation(eq),
    })
}

/// The worked 3E3 instance with F = α²/2 (so G = α³/3, H = α⁴/4).
pub fn threee3_instance() -> Result<Model, JetError> {
    let idx = |a: u8, b: u8| MultiIndex(vec![a, b]);
    let eq = EquationChart::build(EquationSpec {
        name: "3E3".into(),
        base: vec!["x".into(), "y".into()],
        dependents: vec![Dependent {
            name: "u".into(),
            order: 3,
        }],
        params: vec![],
        bound: vec![
            (0, idx(2, 1), "alpha^2/2".into()),
            (0, idx(1, 2), "alpha^3/3".into()),
            (0, idx(0, 3), "alpha^4/4".into()),
        ],
    })?;
    Ok(Model {
        name: "s3-3e3-generic".to_string(),
        object: ModelObject::Equation(eq),
    })
}

/// The degenerate Goursat pair {u_xy = 0, u_yyy = 0}.
pub fn goursat_pair() -> Result<Model, JetError> {
    let idx = |a: u8, b: u8| MultiIndex(vec![a, b]);
    let eq = EquationChart::build(EquationSpec {
        name: "GOURSAT".into(),
        base: vec!["x".into(), "y".into()],
        dependents: vec![Dependent {
            name: "u".into(),
            order: 3,
        }],
        params: vec![],
        bound: vec![
            (0, idx(1, 1), "0".into()),
            (0, idx(2, 1), "0".into()),
            (0, idx(1, 2), "0".into()),
            (0, idx(0, 3), "0".into()),
        ],
    })?;
    Ok(Model {
        name: "s2-goursat".to_string(),
        object: ModelObject::Equation(eq),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceq_is_ek2() {
        let m = ek(2).unwrap();
        let e = m.equation().unwrap();
        assert_eq!(e.chart().coords(), &["x", "y", "u", "u_10", "u_01", "lam"]);
        let top: Vec<String> = e
            .bound_jets()
            .map(|((_, s), v)| format!("u_{s} = {v}"))
            .collect();
        assert_eq!(
            top,
            vec![
                "u_2,0 = lam",
                "u_1,1 = 1/2*lam^2",
                "u_0,2 = 1/3*lam^3"
            ]
        );
    }

    #[test]
    fn rkm_32_displays() {
        let m = rkm(3, 2).unwrap();
        let e = m.equation().unwrap();
        let vals: std::collections::HashMap<String, String> = e
            .bound_jets()
            .map(|((_, s), v)| (s.to_string(), v.to_string()))
            .collect();
        assert_eq!(vals["3,0"], "lam + zeta1");
        assert_eq!(vals["2,1"], "1/2*lam^2 + lam*zeta1 + zeta2");
        assert_eq!(vals["1,2"], "1/3*lam^3 + lam^2*zeta1 + 2*lam*zeta2");
        assert_eq!(vals["0,3"], "1/4*lam^4 + lam^3*zeta1 + 3*lam^2*zeta2");
    }

    #[test]
    fn cartan_ranks() {
        // E_3 → rank 3; R_3^2 → rank 5; 2E2+E1 → rank 4.
        let e3 = ek(3).unwrap();
        assert_eq!(
            e3.equation().unwrap().cartan_distribution().unwrap().generic_rank(),
            3
        );
        let r32 = rkm(3, 2).unwrap();
        assert_eq!(
            r32.equation().unwrap().cartan_distribution().unwrap().generic_rank(),
            5
        );
        let s8 = s8_2e2e1().unwrap();
        assert_eq!(
            s8.equation().unwrap().cartan_distribution().unwrap().generic_rank(),
            4
        );
    }

    #[test]
    fn e2e3_prolongation_consistency() {
        // For F = s^2/2, A = s, B = 0: γ = s^2 α, δ = s^3 α.
        let m = e2e3_instance().unwrap();
        let e = m.equation().unwrap();
        let vals: std::collections::HashMap<String, String> = e
            .bound_jets()
            .map(|((_, s), v)| (s.to_string(), v.to_string()))
            .collect();
        assert_eq!(vals["0,2"], "1/2*u_11^2");
        assert_eq!(vals["2,1"], "u_11*u_30");
        assert_eq!(vals["1,2"], "u_11^2*u_30");
        assert_eq!(vals["0,3"], "u_11^3*u_30");
    }

    #[test]
    fn goursat_chart() {
        let m = goursat_pair().unwrap();
        let e = m.equation().unwrap();
        // Free: u, p, q, r, t, alpha → chart dim 8 with x, y.
        assert_eq!(e.chart().dim(), 8);
        assert_eq!(e.cartan_distribution().unwrap().generic_rank(), 3);
    }
}
