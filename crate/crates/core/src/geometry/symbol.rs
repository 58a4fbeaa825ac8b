//! Symbol (Carnot) algebra extraction at a generic point.

use crate::algebra::{Mat, Rat};
use crate::geometry::chart::PointAssignment;
use crate::geometry::distribution::Distribution;
use crate::geometry::field::VectorField;
use crate::geometry::flag::{derived_flag, FlagKind};
use crate::geometry::GeomError;
use crate::lie::algebra::GradedLieAlgebra;
use crate::lie::LinComb;

/// Build the graded nilpotent symbol `m = ⊕ g_{-i}`, `g_{-i} =
/// Δ_i/Δ_{i-1}` evaluated at `p`, with brackets induced by vector-field
/// commutators.
///
/// Requires the evaluated flag at `p` to have the generic growth vector
/// (checked; errors suggest re-randomizing the point). The returned
/// algebra satisfies Jacobi and is generated by `g_{-1}`; basis labels are
/// `m{depth}_{index}` and for the first layer the classes of the first two
/// flag basis fields, which callers may use as a splitting.
pub fn symbol_algebra(
    d: &Distribution,
    p: &PointAssignment,
    max_depth: usize,
) -> Result<GradedLieAlgebra, GeomError> {
    d.chart().ensure_same(p.chart())?;
    let flag = derived_flag(d, FlagKind::Weak, max_depth)?;
    if !flag.stabilized {
        return Err(GeomError::NoStabilization {
            steps: max_depth,
            ranks: flag.ranks(),
        });
    }
    let steps = &flag.steps;
    let depth = steps.len();
    let ranks = flag.ranks();
    // Adapted basis: echelon bases of the steps are nested by construction
    // of the flag (each step's рows reduce the previous span), but not
    // literally prefixed; build an adapted family by completing step by
    // step and checking ranks at the point.
    let mut adapted: Vec<VectorField> = Vec::new();
    let mut layer_of: Vec<usize> = Vec::new(); // 1-based depth per adapted field
    for (level, step) in steps.iter().enumerate() {
        for g in step.generators() {
            // Candidate: does g extend the current adapted evaluated span?
            adapted.push(g.clone());
            layer_of.push(level + 1);
        }
        // Trim to an independent family *at the point* of the right size.
        let mut kept: Vec<VectorField> = Vec::new();
        let mut kept_layer: Vec<usize> = Vec::new();
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for (f, l) in adapted.iter().zip(&layer_of) {
            let row = f.eval(p).map_err(|_| GeomError::NonGenericPoint {
                reason: "denominator vanishes at the point".to_string(),
            })?;
            rows.push(row.clone());
            let rank = Mat::from_rows(rows.clone()).rank();
            if rank == rows.len() {
                kept.push(f.clone());
                kept_layer.push(*l);
            } else {
                rows.pop();
            }
        }
        if kept.len() != ranks[level] {
            return Err(GeomError::NonGenericPoint {
                reason: format!(
                    "flag rank at the point is {} at step {}, generic rank is {}; \
                     re-draw the point",
                    kept.len(),
                    level + 1,
                    ranks[level]
                ),
            });
        }
        adapted = kept;
        layer_of = kept_layer;
    }
    // Evaluated frame matrix (rows = adapted fields).
    let frame: Vec<Vec<Rat>> = adapted
        .iter()
        .map(|f| f.eval(p))
        .collect::<Result<_, _>>()?;
    let frame_mat = Mat::from_rows(frame);
    // Layers, most negative first, with labels m{depth}_{i}.
    let mut layers: Vec<(i32, Vec<String>)> = Vec::new();
    for level in (1..=depth).rev() {
        let labels: Vec<String> = layer_of
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == level)
            .enumerate()
            .map(|(j, _)| format!("m{level}_{}", j + 1))
            .collect();
        layers.push((-(level as i32), labels));
    }
    let mut algebra = GradedLieAlgebra::new(layers);
    // Global index in the algebra for adapted field #i.
    let mut algebra_index: Vec<usize> = Vec::with_capacity(adapted.len());
    {
        let mut counters: Vec<usize> = vec![0; depth + 1];
        for &l in &layer_of {
            let idx = algebra
                .index(&format!("m{l}_{}", counters[l] + 1))
                .expect("label exists");
            counters[l] += 1;
            algebra_index.push(idx);
        }
    }
    // Structure constants: [f_i, f_j](p) expanded in the frame; keep only
    // the components in layer (depth_i + depth_j).
    for i in 0..adapted.len() {
        for j in (i + 1)..adapted.len() {
            let target = layer_of[i] + layer_of[j];
            if target > depth {
                continue;
            }
            let br = adapted[i].lie_bracket(&adapted[j])?;
            let val = br.eval(p).map_err(|_| GeomError::NonGenericPoint {
                reason: "bracket denominator vanishes at the point".to_string(),
            })?;
            // Solve frame^T x = val.
            let cols: Vec<Vec<Rat>> = (0..frame_mat.ncols())
                .map(|c| {
                    (0..frame_mat.nrows())
                        .map(|r| frame_mat.at(r, c).clone())
                        .collect()
                })
                .collect();
            let coords = Mat::from_rows(cols)
                .solve(&val)
                .ok_or_else(|| GeomError::NonGenericPoint {
                    reason: "bracket not in the evaluated flag span".to_string(),
                })?;
            let mut lin: LinComb = Vec::new();
            for (k, c) in coords.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if layer_of[k] == target {
                    lin.push((algebra_index[k], c));
                } else if layer_of[k] > target {
                    // [Δ_a, Δ_b] ⊆ Δ_{a+b}; a deeper component means the
                    // point is not generic for the adapted frame.
                    return Err(GeomError::NonGenericPoint {
                        reason: "bracket escapes its flag level at the point".to_string(),
                    });
                }
                // Components in shallower layers are quotiented away.
            }
            lin.sort_by_key(|(t, _)| *t);
            if !lin.is_empty() {
                let li = algebra.label(algebra_index[i]).to_string();
                let lj = algebra.label(algebra_index[j]).to_string();
                algebra.set_bracket(&li, &lj, lin);
            }
        }
    }
    // The symbol of a distribution is a Lie algebra generated in degree -1;
    // these guard the quotient bookkeeping.
    if let Some((x, y, z)) = algebra.jacobi_check() {
        return Err(GeomError::NonGenericPoint {
            reason: format!("symbol fails Jacobi on ({x}, {y}, {z}); re-draw the point"),
        });
    }
    if !algebra.is_fundamental() {
        return Err(GeomError::NonGenericPoint {
            reason: "symbol not generated by g_-1; re-draw the point".to_string(),
        });
    }
    Ok(algebra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::chart::Chart;

    #[test]
    fn contact_symbol_is_heisenberg() {
        let chart = Chart::new("J1", ["x", "u", "p"]);
        let pfun = chart.coord_fun("p").unwrap();
        let mut dx = VectorField::coordinate(&chart, "x").unwrap();
        dx.set_component(chart.index_of("u").unwrap(), pfun);
        let dp = VectorField::coordinate(&chart, "p").unwrap();
        let d = Distribution::new(&chart, vec![dx, dp]).unwrap();
        let point = PointAssignment::new(&chart, vec![Rat::int(1), Rat::int(2), Rat::int(3)]).unwrap();
        let s = symbol_algebra(&d, &point, 8).unwrap();
        assert_eq!(s.layer_dims(), vec![(-2, 1), (-1, 2)]);
        assert!(s.jacobi_check().is_none());
    }

    #[test]
    fn integrable_symbol_is_abelian() {
        let chart = Chart::new("R2", ["x", "y"]);
        let dx = VectorField::coordinate(&chart, "x").unwrap();
        let dy = VectorField::coordinate(&chart, "y").unwrap();
        let d = Distribution::new(&chart, vec![dx, dy]).unwrap();
        let point = PointAssignment::new(&chart, vec![Rat::int(1), Rat::int(1)]).unwrap();
        let s = symbol_algebra(&d, &point, 8).unwrap();
        assert_eq!(s.layer_dims(), vec![(-1, 2)]);
        assert!(s.brackets_table().is_empty());
    }
}
