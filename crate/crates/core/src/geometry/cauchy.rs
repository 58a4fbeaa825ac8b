//! Cauchy characteristics and ad-closures.

use crate::algebra::matrix::{clear_row_denominators, Mat};
use crate::algebra::RatFun;
use crate::geometry::distribution::{combine, echelon_fields, Distribution};
use crate::geometry::GeomError;

/// The Cauchy characteristic space `Ch(D) = { X ∈ D : [X, D] ⊆ D }`.
///
/// Solved over the rational-function field: for `X = Σ c_j v_j`,
/// membership of every `[X, v_i]` in `D` is imposed through the
/// annihilator: `Σ_j c_j θ_a([v_j, v_i]) = 0` for all `i, a` (the
/// derivative terms `v_i(c_j) v_j` stay in `D` automatically).
pub fn cauchy_characteristics(d: &Distribution) -> Result<Distribution, GeomError> {
    let chart = d.chart().clone();
    let gens = d.echelon_basis();
    let r = gens.len();
    if r == 0 {
        return Distribution::new(&chart, vec![]);
    }
    let forms = Distribution::new(&chart, gens.clone())?.annihilator();
    if forms.is_empty() {
        // D = TM: everything is Cauchy.
        return Distribution::new(&chart, gens);
    }
    let mut rows: Vec<Vec<RatFun>> = Vec::new();
    for vi in &gens {
        let brackets: Vec<_> = gens
            .iter()
            .map(|vj| vj.lie_bracket(vi))
            .collect::<Result<_, _>>()?;
        for theta in &forms {
            let mut row: Vec<RatFun> = brackets.iter().map(|b| theta.pair(b)).collect();
            if row.iter().all(RatFun::is_zero) {
                continue;
            }
            clear_row_denominators(&mut row);
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Distribution::new(&chart, gens);
    }
    let kernel = Mat::from_rows(rows).kernel_basis();
    let fields = kernel
        .into_iter()
        .map(|coeffs| combine(&chart, &gens, &coeffs))
        .collect::<Vec<_>>();
    Distribution::new(&chart, echelon_fields(&chart, &fields))
}

/// Check `[x, D] ⊆ D` for a single field (is `x` a Cauchy characteristic
/// direction of `D`? requires `x ∈ D` separately).
pub fn is_cauchy_direction(
    x: &crate::geometry::field::VectorField,
    d: &Distribution,
) -> Result<bool, GeomError> {
    for g in d.generators() {
        let b = x.lie_bracket(g)?;
        if !d.contains(&b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest distribution containing `d` and closed under bracketing with
/// `p`: iterate `D ← D + [P, D]` until the rank stabilizes.
pub fn ad_closure(
    d: &Distribution,
    p: &Distribution,
    max_steps: usize,
) -> Result<Distribution, GeomError> {
    d.chart().ensure_same(p.chart())?;
    let chart = d.chart().clone();
    let mut current = d.canonicalized();
    let mut rank_trace = vec![current.generators().len()];
    for _ in 0..max_steps {
        let mut gens = current.generators().to_vec();
        for pg in p.generators() {
            for cg in current.generators() {
                let b = pg.lie_bracket(cg)?;
                if !b.is_zero() {
                    gens.push(b.cleared());
                }
            }
        }
        let next = echelon_fields(&chart, &gens);
        if next.len() == current.generators().len() {
            return Ok(current);
        }
        current = Distribution::new(&chart, next)?;
        rank_trace.push(current.generators().len());
        if current.generators().len() == chart.dim() {
            return Ok(current);
        }
    }
    Err(GeomError::NoStabilization {
        steps: max_steps,
        ranks: rank_trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::chart::Chart;
    use crate::geometry::field::VectorField;

    #[test]
    fn integrable_is_its_own_cauchy_space() {
        let chart = Chart::new("R3", ["x", "y", "z"]);
        let dx = VectorField::coordinate(&chart, "x").unwrap();
        let dy = VectorField::coordinate(&chart, "y").unwrap();
        let d = Distribution::new(&chart, vec![dx, dy]).unwrap();
        let ch = cauchy_characteristics(&d).unwrap();
        assert!(ch.spans_equal(&d).unwrap());
    }

    #[test]
    fn partial_cauchy_space() {
        // Ch(⟨∂_x, ∂_y, ∂_z + x ∂_w⟩) = ⟨∂_y⟩
        let chart = Chart::new("R4", ["x", "y", "z", "w"]);
        let dx = VectorField::coordinate(&chart, "x").unwrap();
        let dy = VectorField::coordinate(&chart, "y").unwrap();
        let mut dz = VectorField::coordinate(&chart, "z").unwrap();
        dz.set_component(chart.index_of("w").unwrap(), chart.coord_fun("x").unwrap());
        let d = Distribution::new(&chart, vec![dx, dy.clone(), dz]).unwrap();
        let ch = cauchy_characteristics(&d).unwrap();
        let expect = Distribution::new(&chart, vec![dy]).unwrap();
        assert!(ch.spans_equal(&expect).unwrap());
    }

    #[test]
    fn ad_closure_of_commuting_fields() {
        let chart = Chart::new("R2", ["x", "y"]);
        let dx = VectorField::coordinate(&chart, "x").unwrap();
        let dy = VectorField::coordinate(&chart, "y").unwrap();
        let d = Distribution::new(&chart, vec![dx.clone()]).unwrap();
        let p = Distribution::new(&chart, vec![dy]).unwrap();
        let c = ad_closure(&d, &p, 12).unwrap();
        assert!(c.spans_equal(&Distribution::new(&chart, vec![dx]).unwrap()).unwrap());
    }
}
