//! Tanaka prolongation of fundamental graded nilpotent Lie algebras.
//!
//! Degree by degree, `g_d` is the space of degree-`d` maps `f` on the
//! negative part with the derivation property
//! `f([x,y]) = [f(x),y] + [x,f(y)]` for all `x, y` in `m`, where a value in
//! an already-computed non-negative layer acts on `m` by map application.
//! Each degree is one exact kernel computation over ℚ.

use crate::algebra::{Mat, Rat};
use crate::lie::algebra::{lincomb_add, lincomb_neg, lincomb_scale, GradedLieAlgebra, LinComb};
use crate::lie::LieError;
use serde::{Deserialize, Serialize};

/// A homogeneous degree-`d ≥ 0` map on the negative part.
///
/// `action[src]` is the value on the `src`-th basis element of `m`
/// (global index), written in the basis of the target layer: for a
/// negative target this is `m`'s global basis, for a non-negative target
/// the basis maps of that computed Tanaka layer (local indices).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradedMap {
    pub degree: u32,
    pub action: Vec<LinComb>,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct TanakaLayer {
    pub degree: u32,
    pub dim: usize,
    pub basis: Vec<GradedMap>,
}

/// What terminated the prolongation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Stabilization {
    /// A zero layer was reached at this degree; all higher layers vanish
    /// (the base is fundamental).
    ZeroAt(u32),
    /// The requested cutoff was reached with the last layer still nonzero.
    CutoffReached,
}

#[derive(Clone, Serialize, Deserialize)]
pub struct TanakaResult {
    pub layer_dims: Vec<(u32, usize)>,
    pub stabilized_at: Stabilization,
    #[serde(skip)]
    pub layers: Vec<TanakaLayer>,
}

impl TanakaResult {
    pub fn dim_at(&self, degree: u32) -> Option<usize> {
        self.layer_dims
            .iter()
            .find(|(d, _)| *d == degree)
            .map(|(_, n)| *n)
    }

    /// dim m + Σ computed non-negative dims. Meaningful as a symmetry
    /// bound only when the prolongation stabilized.
    pub fn total_dim(&self, base: &GradedLieAlgebra) -> usize {
        base.dim() + self.layer_dims.iter().map(|(_, n)| n).sum::<usize>()
    }
}

/// Compute the Tanaka prolongation of `m` up to `max_degree`.
///
/// `m` must carry only negative layers and be generated by `g_{-1}`.
pub fn tanaka_prolong(
    m: &GradedLieAlgebra,
    max_degree: u32,
) -> Result<TanakaResult, LieError> {
    if m.max_degree() >= 0 {
        return Err(LieError::NotNegativelyGraded);
    }
    if !m.is_fundamental() {
        return Err(LieError::NotFundamental);
    }
    let mut layers: Vec<TanakaLayer> = Vec::new();
    let mut stabilized = Stabilization::CutoffReached;
    for d in 0..=max_degree {
        let layer = prolong_degree(m, &layers, d);
        let dim = layer.dim;
        layers.push(layer);
        if dim == 0 {
            stabilized = Stabilization::ZeroAt(d);
            break;
        }
    }
    Ok(TanakaResult {
        layer_dims: layers.iter().map(|l| (l.degree, l.dim)).collect(),
        stabilized_at: stabilized,
        layers,
    })
}

/// Value of `[u, z]` where `u` lives in computed layer `e ≥ 0` (LinComb in
/// that layer's basis maps) and `z` is an `m` basis index. The result is a
/// LinComb in the basis of layer `e - depth(z)`.
fn apply_layer_element(layers: &[TanakaLayer], e: u32, u: &LinComb, z: usize) -> LinComb {
    let mut acc: LinComb = Vec::new();
    for (slot, c) in u {
        let val = &layers[e as usize].basis[*slot].action[z];
        acc = lincomb_add(&acc, &lincomb_scale(val, c));
    }
    acc
}

struct UnknownSpace {
    /// (source m-index, target slot) per column.
    cols: Vec<(usize, usize)>,
    /// start column per source m-index.
    offset: Vec<usize>,
    /// target layer sizes per source m-index.
    target_dim: Vec<usize>,
}

fn unknown_space(m: &GradedLieAlgebra, layers: &[TanakaLayer], d: u32) -> UnknownSpace {
    let dim_m = m.dim();
    let mut cols = Vec::new();
    let mut offset = vec![0usize; dim_m];
    let mut target_dim = vec![0usize; dim_m];
    for src in 0..dim_m {
        let tdeg = m.degree(src) + d as i32;
        let tdim = if tdeg < 0 {
            m.layer_indices(tdeg).len()
        } else {
            layers[tdeg as usize].dim
        };
        offset[src] = cols.len();
        target_dim[src] = tdim;
        for slot in 0..tdim {
            cols.push((src, slot));
        }
    }
    UnknownSpace {
        cols,
        offset,
        target_dim,
    }
}

/// Sparse accumulator for one block of constraint coefficients.
struct RowBlock {
    /// rows indexed by target-basis slot; cols by unknown index.
    rows: Vec<Vec<Rat>>,
}

impl RowBlock {
    fn new(target_dim: usize, ncols: usize) -> Self {
        RowBlock {
            rows: vec![vec![Rat::zero(); ncols]; target_dim],
        }
    }

    fn add(&mut self, target_slot: usize, col: usize, c: Rat) {
        self.rows[target_slot][col] = &self.rows[target_slot][col] + &c;
    }
}

fn prolong_degree(m: &GradedLieAlgebra, layers: &[TanakaLayer], d: u32) -> TanakaLayer {
    let dim_m = m.dim();
    let space = unknown_space(m, layers, d);
    let ncols = space.cols.len();
    if ncols == 0 {
        return TanakaLayer {
            degree: d,
            dim: 0,
            basis: Vec::new(),
        };
    }
    // Map from (global m index within target layer) to local slot.
    let layer_local = |deg: i32, global: usize| -> usize {
        m.layer_indices(deg)
            .iter()
            .position(|&g| g == global)
            .expect("index in its own layer")
    };
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for x in 0..dim_m {
        for y in (x + 1)..dim_m {
            let a = -m.degree(x); // depth of x
            let b = -m.degree(y);
            let tdeg = d as i32 - a - b;
            let target_dim = if tdeg < 0 {
                m.layer_indices(tdeg).len()
            } else {
                layers[tdeg as usize].dim
            };
            if target_dim == 0 {
                // Constraint lands in a zero space: nothing to impose...
                // unless some term would be nonzero, which cannot happen
                // since every term lands in the same zero space.
                continue;
            }
            let mut block = RowBlock::new(target_dim, ncols);
            // f([x, y]): linear in the unknowns of each z in the bracket.
            // The unknown slots of z and the block rows index the same
            // target-layer basis.
            for (z, c) in m.bracket_basis(x, y) {
                for slot in 0..space.target_dim[z] {
                    block.add(slot, space.offset[z] + slot, c.clone());
                }
            }
            // -[f(x), y]
            accumulate_map_bracket(m, layers, d, &space, x, y, &Rat::int(-1), &mut block, &layer_local);
            // -[x, f(y)] = +[f(y), x]
            accumulate_map_bracket(m, layers, d, &space, y, x, &Rat::one(), &mut block, &layer_local);
            for r in block.rows {
                if r.iter().any(|c| !c.is_zero()) {
                    rows.push(r);
                }
            }
        }
    }
    let basis_vectors = if rows.is_empty() {
        // No constraints: the whole unknown space.
        let mut vs = Vec::new();
        for i in 0..ncols {
            let mut v = vec![Rat::zero(); ncols];
            v[i] = Rat::one();
            vs.push(v);
        }
        vs
    } else {
        Mat::from_rows(rows).kernel_basis()
    };
    let basis = basis_vectors
        .into_iter()
        .map(|v| {
            let mut action: Vec<LinComb> = vec![Vec::new(); dim_m];
            for (col, c) in v.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (src, slot) = space.cols[col];
                let tdeg = m.degree(src) + d as i32;
                let target_index = if tdeg < 0 {
                    m.layer_indices(tdeg)[slot]
                } else {
                    slot
                };
                action[src].push((target_index, c));
            }
            for a in action.iter_mut() {
                a.sort_by_key(|(i, _)| *i);
            }
            GradedMap { degree: d, action }
        })
        .collect::<Vec<_>>();
    TanakaLayer {
        degree: d,
        dim: basis.len(),
        basis,
    }
}

/// Accumulate coefficients of `sign * [f(u), w]` into `block`.
///
/// `f(u)` is the unknown row of source `u`; `w` is a fixed m basis index.
#[allow(clippy::too_many_arguments)]
fn accumulate_map_bracket(
    m: &GradedLieAlgebra,
    layers: &[TanakaLayer],
    d: u32,
    space: &UnknownSpace,
    u: usize,
    w: usize,
    sign: &Rat,
    block: &mut RowBlock,
    layer_local: &impl Fn(i32, usize) -> usize,
) {
    let fu_deg = m.degree(u) + d as i32;
    let b = -m.degree(w);
    let tdeg = fu_deg - b;
    for slot in 0..space.target_dim[u] {
        let col = space.offset[u] + slot;
        if fu_deg < 0 {
            // f(u) is an m element: ordinary structure constants.
            let basis_global = m.layer_indices(fu_deg)[slot];
            for (t, c) in m.bracket_basis(basis_global, w) {
                let local = if tdeg < 0 { layer_local(tdeg, t) } else { t };
                block.add(local, col, sign * &c);
            }
        } else {
            // f(u) is a computed map: apply it to w.
            let unit: LinComb = vec![(slot, Rat::one())];
            let val = apply_layer_element(layers, fu_deg as u32, &unit, w);
            for (t, c) in val {
                let local = if tdeg < 0 { layer_local(tdeg, t) } else { t };
                block.add(local, col, sign * &c);
            }
        }
    }
}

/// Independent re-check: does `map` satisfy the derivation identity on all
/// negative basis pairs of `m`?
pub fn check_derivation(m: &GradedLieAlgebra, layers: &[TanakaLayer], map: &GradedMap) -> bool {
    let d = map.degree;
    let eval = |u: usize| -> (i32, LinComb) { (m.degree(u) + d as i32, map.action[u].clone()) };
    let bracket_value = |vdeg: i32, v: &LinComb, w: usize| -> (i32, LinComb) {
        let tdeg = vdeg - (-m.degree(w));
        if vdeg < 0 {
            let mut acc: LinComb = Vec::new();
            for (i, c) in v {
                acc = lincomb_add(&acc, &lincomb_scale(&m.bracket_basis(*i, w), c));
            }
            (tdeg, acc)
        } else {
            (tdeg, apply_layer_element(layers, vdeg as u32, v, w))
        }
    };
    for x in 0..m.dim() {
        for y in (x + 1)..m.dim() {
            // f([x,y])
            let mut lhs: LinComb = Vec::new();
            for (z, c) in m.bracket_basis(x, y) {
                lhs = lincomb_add(&lhs, &lincomb_scale(&map.action[z], &c));
            }
            let (fx_deg, fx) = eval(x);
            let (fy_deg, fy) = eval(y);
            let (_, t1) = bracket_value(fx_deg, &fx, y);
            let (_, t2) = bracket_value(fy_deg, &fy, x);
            let rhs = lincomb_add(&t1, &lincomb_neg(&t2));
            if lincomb_add(&lhs, &lincomb_neg(&rhs)) != Vec::new() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::algebra::heisenberg;
    use crate::lie::nk::build_nk;

    #[test]
    fn heisenberg_prolongation_is_contact_algebra_sizes() {
        // The maximal graded algebra over heis(3) is the contact algebra:
        // g_d counts generating functions of weighted degree d+2 in
        // (x, p, u) with weights (1, 1, 2), so dims 4, 6, 9, … (never 0).
        let h = heisenberg();
        let t = tanaka_prolong(&h, 2).unwrap();
        assert_eq!(t.dim_at(0), Some(4));
        assert_eq!(t.dim_at(1), Some(6));
        assert_eq!(t.dim_at(2), Some(9));
        assert_eq!(t.stabilized_at, Stabilization::CutoffReached);
    }

    #[test]
    fn abelian_line_prolongs_forever() {
        let m = GradedLieAlgebra::new(vec![(-1, vec!["e".into()])]);
        let t = tanaka_prolong(&m, 3).unwrap();
        assert_eq!(
            t.layer_dims,
            vec![(0, 1), (1, 1), (2, 1), (3, 1)],
            "formal vector fields on the line: one dimension per degree"
        );
        assert_eq!(t.stabilized_at, Stabilization::CutoffReached);
    }

    #[test]
    fn g2_gradation_from_n3() {
        // n_3 = free nilpotent (2,1,2); Tanaka prolongation gives the
        // split G2 contact gradation dims 4, 2, 1, 2, 0.
        let m = build_nk(3).unwrap();
        let t = tanaka_prolong(&m, 6).unwrap();
        assert_eq!(t.dim_at(0), Some(4));
        assert_eq!(t.dim_at(1), Some(2));
        assert_eq!(t.dim_at(2), Some(1));
        assert_eq!(t.dim_at(3), Some(2));
        assert_eq!(t.dim_at(4), Some(0));
        assert_eq!(t.total_dim(&m), 14);
    }

    #[test]
    fn nk_prolongation_trivial_for_k4_up() {
        for k in 4..=6 {
            let m = build_nk(k).unwrap();
            let t = tanaka_prolong(&m, 2).unwrap();
            assert_eq!(t.dim_at(0), Some(4), "g0 of n_{k}");
            assert_eq!(t.dim_at(1), Some(0), "g1 of n_{k}");
            assert_eq!(t.stabilized_at, Stabilization::ZeroAt(1));
        }
    }

    #[test]
    fn derivation_identity_recheck() {
        let m = build_nk(4).unwrap();
        let t = tanaka_prolong(&m, 1).unwrap();
        for layer in &t.layers {
            for b in &layer.basis {
                assert!(check_derivation(&m, &t.layers, b));
            }
        }
    }

    #[test]
    fn non_fundamental_rejected() {
        // g_{-1} one-dimensional with a two-dimensional g_{-2} it cannot
        // generate.
        let m = GradedLieAlgebra::new(vec![
            (-2, vec!["z1".into(), "z2".into()]),
            (-1, vec!["e".into()]),
        ]);
        assert!(matches!(
            tanaka_prolong(&m, 1),
            Err(LieError::NotFundamental)
        ));
    }
}
