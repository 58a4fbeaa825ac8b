//! Quotients along integrable sub-distributions via transversal slices,
//! prolongation of rank-2 distributions and de-prolongation.

use crate::algebra::{Rat, RatFun};
use crate::geometry::cauchy::cauchy_characteristics;
use crate::geometry::chart::Chart;
use crate::geometry::distribution::{echelon_fields, Distribution};
use crate::geometry::field::VectorField;
use crate::geometry::GeomError;
use std::collections::HashMap;

/// A transversal slice: coordinates to freeze and the values they take.
pub type Transversal = Vec<(String, Rat)>;

/// Quotient data produced by [`reduce_along`].
pub struct Reduction {
    pub chart: Chart,
    pub distribution: Distribution,
    /// Maps a field on the original chart to the slice; used to push
    /// symmetries to the quotient.
    pub projector: SliceProjector,
}

/// Projection of fields onto a transversal slice of an integrable
/// sub-distribution.
pub struct SliceProjector {
    source_chart: Chart,
    target_chart: Chart,
    pi_gens: Vec<VectorField>,
    slice_cols: Vec<usize>,
    bindings: HashMap<String, RatFun>,
    kept: Vec<usize>,
}

impl SliceProjector {
    /// Push a vector field to the quotient chart: subtract the Π-combination
    /// that kills the transversal components, then restrict to the slice.
    pub fn push(&self, v: &VectorField) -> Result<VectorField, GeomError> {
        self.source_chart.ensure_same(v.chart())?;
        let p = self.pi_gens.len();
        let corrected = if p == 0 {
            v.clone()
        } else {
            // Solve P_T μ = v_T on the transversal columns.
            let rows: Vec<Vec<RatFun>> = self
                .slice_cols
                .iter()
                .map(|&c| self.pi_gens.iter().map(|g| g.component(c).clone()).collect())
                .collect();
            let rhs: Vec<RatFun> = self
                .slice_cols
                .iter()
                .map(|&c| v.component(c).clone())
                .collect();
            let mat = crate::algebra::Mat::from_rows(rows);
            let mu = mat.solve(&rhs).ok_or_else(|| GeomError::NonTransversal {
                coordinate: self
                    .slice_cols
                    .first()
                    .map(|&c| self.source_chart.coord(c).to_string())
                    .unwrap_or_default(),
            })?;
            let mut acc = v.clone();
            for (g, m) in self.pi_gens.iter().zip(&mu) {
                acc = acc.sub(&g.scale(m))?;
            }
            acc
        };
        // Restrict each kept component to the slice.
        let mut comps = Vec::with_capacity(self.kept.len());
        for &i in &self.kept {
            let c = corrected.component(i);
            let restricted = c
                .substitute_into(self.target_chart.vars(), &self.bindings)
                .map_err(GeomError::from)?;
            comps.push(restricted);
        }
        Ok(VectorField::from_components(&self.target_chart, comps))
    }
}

/// Quotient `d` by the integrable sub-distribution `pi`, realized on the
/// slice where the transversal coordinates take the given values.
///
/// The caller is responsible for `pi ⊆ Ch(d)` (in the Cauchy sense) when a
/// genuine quotient is wanted; the slice construction itself only needs
/// transversality, which is checked: the Π-generator matrix restricted to
/// the transversal coordinates must be invertible over the function field.
pub fn reduce_along(
    d: &Distribution,
    pi: &Distribution,
    transversal: &Transversal,
) -> Result<Reduction, GeomError> {
    d.chart().ensure_same(pi.chart())?;
    let chart = d.chart().clone();
    let pi_gens = pi.echelon_basis();
    let p = pi_gens.len();
    if transversal.len() != p {
        return Err(GeomError::TransversalArity {
            expected: p,
            got: transversal.len(),
        });
    }
    let mut slice_cols = Vec::with_capacity(p);
    for (name, _) in transversal {
        let i = chart
            .index_of(name)
            .ok_or_else(|| GeomError::MissingCoordinate { name: name.clone() })?;
        slice_cols.push(i);
    }
    // Transversality: Π restricted to the slice columns is invertible.
    if p > 0 {
        let rows: Vec<Vec<RatFun>> = slice_cols
            .iter()
            .map(|&c| pi_gens.iter().map(|g| g.component(c).clone()).collect())
            .collect();
        let rank = crate::algebra::Mat::from_rows(rows).rank();
        if rank < p {
            // Name a degenerate coordinate: one whose column did not
            // contribute a pivot.
            let mut worst = transversal[0].0.clone();
            for (k, (name, _)) in transversal.iter().enumerate() {
                let sub: Vec<Vec<RatFun>> = slice_cols
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, &c)| pi_gens.iter().map(|g| g.component(c).clone()).collect())
                    .collect();
                if crate::algebra::Mat::from_rows(sub).rank() == rank {
                    worst = name.clone();
                    break;
                }
            }
            return Err(GeomError::NonTransversal { coordinate: worst });
        }
    }
    // Quotient chart: drop the transversal coordinates.
    let slice_set: std::collections::HashSet<usize> = slice_cols.iter().copied().collect();
    let kept: Vec<usize> = (0..chart.dim()).filter(|i| !slice_set.contains(i)).collect();
    let kept_names: Vec<String> = kept.iter().map(|&i| chart.coord(i).to_string()).collect();
    let target_chart = Chart::new(&format!("{}/slice", chart.name()), kept_names);
    let mut bindings: HashMap<String, RatFun> = HashMap::new();
    for ((name, value), _) in transversal.iter().zip(&slice_cols) {
        bindings.insert(
            name.clone(),
            RatFun::constant(target_chart.vars(), value.clone()),
        );
    }
    let projector = SliceProjector {
        source_chart: chart.clone(),
        target_chart: target_chart.clone(),
        pi_gens,
        slice_cols,
        bindings,
        kept,
    };
    let mut reduced = Vec::new();
    for g in d.generators() {
        let pushed = projector.push(g)?;
        if !pushed.is_zero() {
            reduced.push(pushed);
        }
    }
    let basis = echelon_fields(&target_chart, &reduced);
    Ok(Reduction {
        distribution: Distribution::new(&target_chart, basis)?,
        chart: target_chart,
        projector,
    })
}

/// Prolongation of a rank-2 distribution: pass to the (affine chart of
/// the) projectivized fiber with the tautological lift.
///
/// Returns the new chart (fresh fiber coordinate appended) and
/// `⟨v1 + t·v2, ∂_t⟩`.
pub fn prolong_rank2(d: &Distribution) -> Result<(Chart, Distribution), GeomError> {
    if d.generic_rank() != 2 {
        return Err(GeomError::RankMismatch {
            expected: 2,
            got: d.generic_rank(),
        });
    }
    let gens = d.echelon_basis();
    let chart = d.chart();
    // Fresh fiber coordinate name.
    let mut fiber = "t".to_string();
    let mut k = 0usize;
    while chart.index_of(&fiber).is_some() {
        k += 1;
        fiber = format!("t{k}");
    }
    let mut coords: Vec<String> = chart.coords().to_vec();
    coords.push(fiber.clone());
    let new_chart = Chart::new(&format!("{}^", chart.name()), coords);
    let lift = |v: &VectorField| -> VectorField {
        let mut comps: Vec<RatFun> = Vec::with_capacity(new_chart.dim());
        for c in v.components() {
            comps.push(
                c.substitute_into(new_chart.vars(), &HashMap::new())
                    .expect("old coords exist in new chart"),
            );
        }
        comps.push(new_chart.zero_fun());
        VectorField::from_components(&new_chart, comps)
    };
    let v1 = lift(&gens[0]);
    let v2 = lift(&gens[1]);
    let t = new_chart.coord_fun(&fiber)?;
    let tautological = v1.add(&v2.scale(&t))?;
    let dt = VectorField::coordinate(&new_chart, &fiber)?;
    let dist = Distribution::new(&new_chart, vec![tautological, dt])?;
    Ok((new_chart, dist))
}

/// Result of a de-prolongation attempt.
pub enum Deprolongation {
    /// The quotient rank-2 distribution on a chart of one dimension less.
    Reduced(Chart, Distribution),
    /// `[D, D]` has no rank-1 Cauchy space; `D` is not de-prolongable.
    NotDeprolongable,
}

/// De-prolong a rank-2 distribution: if `Ch([D,D])` has rank 1, reduce
/// `[D,D]` along it over an automatically chosen transversal coordinate.
pub fn deprolong(d: &Distribution) -> Result<Deprolongation, GeomError> {
    if d.generic_rank() != 2 {
        return Err(GeomError::RankMismatch {
            expected: 2,
            got: d.generic_rank(),
        });
    }
    let square = crate::geometry::flag::derived_flag(d, crate::geometry::flag::FlagKind::Weak, 2)?
        .steps
        .last()
        .unwrap()
        .clone();
    if square.generic_rank() == 2 {
        // Integrable rank-2: its own Cauchy space has rank 2, not 1.
        return Ok(Deprolongation::NotDeprolongable);
    }
    let ch = cauchy_characteristics(&square)?;
    if ch.generic_rank() != 1 {
        return Ok(Deprolongation::NotDeprolongable);
    }
    let gen = &ch.echelon_basis()[0];
    // Prefer a coordinate where the generator has a constant nonzero
    // component so the default slice value 0 is guaranteed transversal.
    let chart = d.chart().clone();
    let mut pick: Option<usize> = None;
    for (i, c) in gen.components().iter().enumerate() {
        if c.is_constant() && !c.is_zero() {
            pick = Some(i);
            break;
        }
    }
    if pick.is_none() {
        for (i, c) in gen.components().iter().enumerate() {
            if !c.is_zero() {
                pick = Some(i);
                break;
            }
        }
    }
    let col = pick.ok_or(GeomError::RankMismatch {
        expected: 1,
        got: 0,
    })?;
    let transversal = vec![(chart.coord(col).to_string(), Rat::zero())];
    let red = reduce_along(&square, &ch, &transversal)?;
    Ok(Deprolongation::Reduced(red.chart, red.distribution))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_reduction() {
        // D = ⟨∂_x, ∂_y⟩, Π = ⟨∂_y⟩, slice y = 0 → ⟨∂_x⟩ on (x).
        let chart = Chart::new("R2", ["x", "y"]);
        let dx = VectorField::coordinate(&chart, "x").unwrap();
        let dy = VectorField::coordinate(&chart, "y").unwrap();
        let d = Distribution::new(&chart, vec![dx, dy.clone()]).unwrap();
        let pi = Distribution::new(&chart, vec![dy]).unwrap();
        let red = reduce_along(&d, &pi, &vec![("y".into(), Rat::zero())]).unwrap();
        assert_eq!(red.chart.coords(), &["x".to_string()]);
        assert_eq!(red.distribution.generic_rank(), 1);
    }

    #[test]
    fn non_transversal_slice_names_coordinate() {
        let chart = Chart::new("R2", ["x", "y"]);
        let dy = VectorField::coordinate(&chart, "y").unwrap();
        let d = Distribution::new(&chart, vec![dy.clone()]).unwrap();
        let pi = Distribution::new(&chart, vec![dy]).unwrap();
        let err = match reduce_along(&d, &pi, &vec![("x".into(), Rat::zero())]) {
            Ok(_) => panic!("expected non-transversal error"),
            Err(e) => e,
        };
        match err {
            GeomError::NonTransversal { coordinate } => assert_eq!(coordinate, "x"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn prolong_flat_plane() {
        let chart = Chart::new("R2", ["x", "y"]);
        let dx = VectorField::coordinate(&chart, "x").unwrap();
        let dy = VectorField::coordinate(&chart, "y").unwrap();
        let d = Distribution::new(&chart, vec![dx, dy]).unwrap();
        let (c2, p) = prolong_rank2(&d).unwrap();
        assert_eq!(c2.dim(), 3);
        assert_eq!(p.generic_rank(), 2);
        let flag =
            crate::geometry::flag::derived_flag(&p, crate::geometry::flag::FlagKind::Weak, 12)
                .unwrap();
        assert_eq!(flag.growth_vector, vec![2, 1]);
    }

    #[test]
    fn prolong_then_deprolong_roundtrip() {
        // Start from the contact distribution on (x, u, p); its prolongation
        // de-prolongs back onto the same chart and span.
        let chart = Chart::new("J1", ["x", "u", "p"]);
        let p = chart.coord_fun("p").unwrap();
        let mut dx = VectorField::coordinate(&chart, "x").unwrap();
        dx.set_component(chart.index_of("u").unwrap(), p);
        let dp = VectorField::coordinate(&chart, "p").unwrap();
        let d = Distribution::new(&chart, vec![dx, dp]).unwrap();
        let (_, lifted) = prolong_rank2(&d).unwrap();
        match deprolong(&lifted).unwrap() {
            Deprolongation::Reduced(chart2, d2) => {
                assert_eq!(chart2.coords(), chart.coords());
                let d_back = Distribution::new(&chart2, d.generators().to_vec()).unwrap();
                assert!(d2.spans_equal(&d_back).unwrap());
            }
            Deprolongation::NotDeprolongable => panic!("expected reduction"),
        }
    }
}
