//! The truncated double-graded free Lie algebra n_k and recognition of
//! symbols isomorphic to it.

use crate::algebra::{Mat, Rat};
use crate::lie::algebra::{GradedLieAlgebra, LinComb};
use crate::lie::LieError;

/// Label for the basis element e_{i,j}.
fn e(i: usize, j: usize) -> String {
    format!("e{i}{j}")
}

/// Build n_k: generators e10, e01 in degree −1, e_{ij} (i, j ≥ 1,
/// i + j ≤ k) in degree −(i+j), with
/// `[e10, e_{i,j}] = e_{i+1,j}`, `[e01, e_{i,j}] = e_{i,j+1}`,
/// `[e10, e01] = e11`, all brackets of two non-fundamental elements zero
/// and everything beyond level k truncated to zero.
pub fn build_nk(k: usize) -> Result<GradedLieAlgebra, LieError> {
    if k < 2 {
        return Err(LieError::ParameterRange {
            message: format!("n_k needs k >= 2, got {k}"),
        });
    }
    let mut layers: Vec<(i32, Vec<String>)> = Vec::new();
    layers.push((-1, vec![e(1, 0), e(0, 1)]));
    for level in 2..=k {
        // degree -(level): elements e_{i,j} with i+j = level, i,j >= 1.
        let labels: Vec<String> = (1..level).rev().map(|i| e(i, level - i)).collect();
        layers.push((-(level as i32), labels));
    }
    let mut a = GradedLieAlgebra::new(layers);
    let one = |idx: usize| -> LinComb { vec![(idx, Rat::one())] };
    // [e10, e01] = e11
    let e11 = a.index(&e(1, 1)).unwrap();
    a.set_bracket(&e(1, 0), &e(0, 1), one(e11));
    // [e10, e_{i,j}] = e_{i+1,j}, [e01, e_{i,j}] = e_{i,j+1}
    for level in 2..=k {
        for i in 1..level {
            let j = level - i;
            if level < k {
                let up = a.index(&e(i + 1, j)).unwrap();
                a.set_bracket(&e(1, 0), &e(i, j), one(up));
                let right = a.index(&e(i, j + 1)).unwrap();
                a.set_bracket(&e(0, 1), &e(i, j), one(right));
            }
        }
    }
    Ok(a)
}

/// Expected layer dimensions of n_k of depth `k`: (2, 1, 2, …, k−1).
pub fn nk_layer_dims(k: usize) -> Vec<usize> {
    let mut v = vec![2];
    for level in 2..=k {
        v.push(level - 1);
    }
    v
}

/// Total dimension of n_k.
pub fn nk_dim(k: usize) -> usize {
    2 + k * (k - 1) / 2
}

/// Verdict of [`verify_nk`].
#[derive(Debug, Clone)]
pub enum NkVerdict {
    Pass,
    Fail { witness: String },
}

impl NkVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, NkVerdict::Pass)
    }
}

/// Certify that `symbol` is isomorphic to n_k of matching depth, given a
/// splitting v1, v2 of g_{−1}:
///
/// 1. layer dimensions match (2, 1, 2, …, depth−1);
/// 2. g_{−1} generates;
/// 3. ad_{v1} and ad_{v2} commute as operators on the non-fundamental part
///    (equivalently ad_{[v1,v2]} kills g_{≤−2}).
///
/// These exhibit the symbol as a quotient of n_k of equal dimension, hence
/// an isomorphism.
pub fn verify_nk(
    symbol: &GradedLieAlgebra,
    v1: &LinComb,
    v2: &LinComb,
) -> Result<NkVerdict, LieError> {
    // v1, v2 must span g_{-1}.
    let g1 = symbol.layer_indices(-1);
    if g1.len() != 2 {
        return Ok(NkVerdict::Fail {
            witness: format!("dim g_-1 = {}, expected 2", g1.len()),
        });
    }
    let dense = |v: &LinComb| -> Vec<Rat> {
        let mut row = vec![Rat::zero(); 2];
        for (i, c) in v {
            match g1.iter().position(|g| g == i) {
                Some(pos) => row[pos] = c.clone(),
                None => row = vec![Rat::zero(); 2], // outside g_{-1}
            }
        }
        row
    };
    let m = Mat::from_rows(vec![dense(v1), dense(v2)]);
    if m.rank() != 2 {
        return Err(LieError::DependentSplitting);
    }
    let depth = symbol.depth() as usize;
    let expect = nk_layer_dims(depth);
    let dims: Vec<usize> = symbol
        .layers()
        .iter()
        .rev()
        .map(|(_, labels)| labels.len())
        .collect();
    if dims != expect {
        return Ok(NkVerdict::Fail {
            witness: format!("layer dims {dims:?} != n_{depth} pattern {expect:?}"),
        });
    }
    if !symbol.is_fundamental() {
        return Ok(NkVerdict::Fail {
            witness: "g_-1 does not generate".to_string(),
        });
    }
    // Commuting ad's on every non-fundamental basis element.
    for idx in 0..symbol.dim() {
        if symbol.degree(idx) >= -1 {
            continue;
        }
        let w: LinComb = vec![(idx, Rat::one())];
        let a = symbol.bracket(v1, &symbol.bracket(v2, &w));
        let b = symbol.bracket(v2, &symbol.bracket(v1, &w));
        let diff = crate::lie::algebra::lincomb_add(&a, &crate::lie::algebra::lincomb_neg(&b));
        if !diff.is_empty() {
            return Ok(NkVerdict::Fail {
                witness: format!(
                    "ad_v1 ad_v2 != ad_v2 ad_v1 on {}: difference {}",
                    symbol.label(idx),
                    symbol.format_lincomb(&diff)
                ),
            });
        }
    }
    Ok(NkVerdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::algebra::heisenberg;

    #[test]
    fn nk_dimensions() {
        for k in 2..=6 {
            let a = build_nk(k).unwrap();
            assert_eq!(a.dim(), nk_dim(k), "n_{k} total dim");
            let dims: Vec<usize> = a.layers().iter().rev().map(|(_, l)| l.len()).collect();
            assert_eq!(dims, nk_layer_dims(k));
        }
        // dim g_{-m-1}(n_k) = m for 1 <= m <= k-1:
        let a = build_nk(6).unwrap();
        for m in 1..=5usize {
            assert_eq!(a.layer_indices(-(m as i32) - 1).len(), m);
        }
    }

    #[test]
    fn nk_jacobi() {
        for k in 2..=6 {
            assert!(build_nk(k).unwrap().jacobi_check().is_none(), "n_{k} Jacobi");
        }
    }

    #[test]
    fn nk_fundamental() {
        assert!(build_nk(5).unwrap().is_fundamental());
    }

    #[test]
    fn heisenberg_is_n2() {
        let h = heisenberg();
        let e1 = h.index("e1").unwrap();
        let e2 = h.index("e2").unwrap();
        // Any splitting passes for n_2.
        let v1 = vec![(e1, Rat::one()), (e2, Rat::int(3))];
        let v2 = vec![(e2, Rat::one())];
        assert!(verify_nk(&h, &v1, &v2).unwrap().is_pass());
    }

    #[test]
    fn dependent_splitting_rejected() {
        let h = heisenberg();
        let e1 = h.index("e1").unwrap();
        let v = vec![(e1, Rat::one())];
        assert!(matches!(
            verify_nk(&h, &v, &v),
            Err(LieError::DependentSplitting)
        ));
    }

    #[test]
    fn nk_recognizes_itself() {
        for k in 3..=5 {
            let a = build_nk(k).unwrap();
            let e10 = a.index("e10").unwrap();
            let e01 = a.index("e01").unwrap();
            let v1 = vec![(e10, Rat::one())];
            let v2 = vec![(e01, Rat::one())];
            assert!(verify_nk(&a, &v1, &v2).unwrap().is_pass());
            // A sheared splitting also passes: the condition is span-level.
            let v1s = vec![(e10, Rat::one()), (e01, Rat::int(2))];
            assert!(verify_nk(&a, &v1s, &v2).unwrap().is_pass());
        }
    }

    #[test]
    fn truncation_coherence() {
        // build_nk(k) restricted to levels <= k-1 equals build_nk(k-1).
        for k in 3..=6usize {
            let big = build_nk(k).unwrap();
            let small = build_nk(k - 1).unwrap();
            for (d, labels) in small.layers() {
                assert_eq!(&big.layers()[big.layers().len() - small.layers().len()..]
                    .iter()
                    .find(|(bd, _)| bd == d)
                    .unwrap()
                    .1, labels);
            }
            // Brackets agree where both are defined (levels <= k-1).
            for ((i, j), v) in small.brackets_table() {
                let bi = big.index(small.label(*i)).unwrap();
                let bj = big.index(small.label(*j)).unwrap();
                let bv = big.bracket_basis(bi, bj);
                let expect: Vec<(usize, Rat)> = v
                    .iter()
                    .map(|(t, c)| (big.index(small.label(*t)).unwrap(), c.clone()))
                    .collect();
                // Truncation: in the big algebra the bracket may be nonzero
                // where the small one truncated it to zero; only compare
                // targets living at levels <= k-1.
                let keep: Vec<(usize, Rat)> = bv
                    .into_iter()
                    .filter(|(t, _)| (-big.degree(*t)) as usize <= k - 1)
                    .collect();
                assert_eq!(keep, expect);
            }
        }
    }
}
