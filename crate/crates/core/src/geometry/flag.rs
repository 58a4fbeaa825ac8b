//! Weak and strong derived flags with growth vectors.

use crate::geometry::distribution::{echelon_fields, Distribution};
use crate::geometry::field::VectorField;
use crate::geometry::GeomError;
use serde::{Deserialize, Serialize};

/// A derived flag: nested distributions with their rank increments.
#[derive(Clone)]
pub struct Flag {
    pub steps: Vec<Distribution>,
    /// `growth_vector[0] = rank(steps[0])`, then rank increments.
    pub growth_vector: Vec<usize>,
    pub stabilized: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FlagKind {
    /// Δ_{i+1} = Δ_i + [Δ_1, Δ_i]
    Weak,
    /// ∇_{i+1} = ∇_i + [∇_i, ∇_i]
    Strong,
}

impl Flag {
    pub fn ranks(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.generators().len()).collect()
    }

    pub fn final_rank(&self) -> usize {
        self.ranks().last().copied().unwrap_or(0)
    }

    /// First step index (1-based) whose increment is `jump`, after the
    /// leading entry.
    pub fn first_jump(&self, jump: usize) -> Option<usize> {
        self.growth_vector
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &g)| g == jump)
            .map(|(i, _)| i + 1)
    }
}

/// Compute the derived flag of `d`.
///
/// Each step is stored via its canonical echelon basis, so ranks are the
/// basis sizes and output is deterministic. Stops at stabilization or
/// after `max_steps` steps.
pub fn derived_flag(d: &Distribution, kind: FlagKind, max_steps: usize) -> Result<Flag, GeomError> {
    let chart = d.chart().clone();
    let base = d.canonicalized();
    let mut steps = vec![base];
    let mut stabilized = false;
    for _ in 1..max_steps {
        let prev = steps.last().unwrap();
        let brackets = match kind {
            FlagKind::Weak => bracket_pairs(steps[0].generators(), prev.generators())?,
            FlagKind::Strong => bracket_pairs(prev.generators(), prev.generators())?,
        };
        let mut gens: Vec<VectorField> = prev.generators().to_vec();
        gens.extend(brackets);
        let next_basis = echelon_fields(&chart, &gens);
        if next_basis.len() == prev.generators().len() {
            stabilized = true;
            break;
        }
        steps.push(Distribution::new(&chart, next_basis)?);
        if steps.last().unwrap().generators().len() == chart.dim() {
            stabilized = true;
            break;
        }
    }
    let ranks: Vec<usize> = steps.iter().map(|s| s.generators().len()).collect();
    let mut growth = Vec::with_capacity(ranks.len());
    for (i, r) in ranks.iter().enumerate() {
        growth.push(if i == 0 { *r } else { r - ranks[i - 1] });
    }
    Ok(Flag {
        steps,
        growth_vector: growth,
        stabilized,
    })
}

fn bracket_pairs(
    left: &[VectorField],
    right: &[VectorField],
) -> Result<Vec<VectorField>, GeomError> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for a in left {
        for b in right {
            let br = a.lie_bracket(b)?;
            if !br.is_zero() {
                out.push(br.cleared());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::chart::Chart;

    #[test]
    fn integrable_flag() {
        let chart = Chart::new("R2", ["x", "y"]);
        let dx = VectorField::coordinate(&chart, "x").unwrap();
        let dy = VectorField::coordinate(&chart, "y").unwrap();
        let d = Distribution::new(&chart, vec![dx, dy]).unwrap();
        let f = derived_flag(&d, FlagKind::Weak, 12).unwrap();
        assert_eq!(f.growth_vector, vec![2]);
        assert!(f.stabilized);
    }

    #[test]
    fn hilbert_cartan_growth() {
        // ⟨∂_x + z1 ∂_z + z2 ∂_{z1} + z2^2 ∂_y, ∂_{z2}⟩ has growth (2,1,2).
        let chart = Chart::new("HC", ["x", "y", "z", "z1", "z2"]);
        let z1 = chart.coord_fun("z1").unwrap();
        let z2 = chart.coord_fun("z2").unwrap();
        let mut v = VectorField::coordinate(&chart, "x").unwrap();
        v.set_component(chart.index_of("z").unwrap(), z1);
        v.set_component(chart.index_of("z1").unwrap(), z2.clone());
        v.set_component(chart.index_of("y").unwrap(), &z2 * &z2);
        let w = VectorField::coordinate(&chart, "z2").unwrap();
        let d = Distribution::new(&chart, vec![v, w]).unwrap();
        let weak = derived_flag(&d, FlagKind::Weak, 12).unwrap();
        assert_eq!(weak.growth_vector, vec![2, 1, 2]);
        assert_eq!(weak.ranks(), vec![2, 3, 5]);
        assert!(weak.stabilized);
    }
}
