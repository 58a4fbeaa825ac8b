//! Finite-dimensional graded Lie algebras over ℚ by structure constants.

use crate::algebra::Rat;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Linear combination of basis elements by global index.
pub type LinComb = Vec<(usize, Rat)>;

pub fn lincomb_add(a: &LinComb, b: &LinComb) -> LinComb {
    let mut map: BTreeMap<usize, Rat> = BTreeMap::new();
    for (i, c) in a.iter().chain(b.iter()) {
        let e = map.entry(*i).or_insert_with(Rat::zero);
        *e += c.clone();
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn lincomb_scale(a: &LinComb, f: &Rat) -> LinComb {
    if f.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, c)| (*i, c * f)).collect()
}

pub fn lincomb_neg(a: &LinComb) -> LinComb {
    a.iter().map(|(i, c)| (*i, -c)).collect()
}

/// A graded Lie algebra with ordered basis labels per integer degree and
/// exact structure constants. Brackets absent from the table are zero.
#[derive(Clone, Serialize, Deserialize)]
pub struct GradedLieAlgebra {
    /// Sorted by degree ascending (most negative first).
    layers: Vec<(i32, Vec<String>)>,
    /// Structure constants for index pairs `i < j`; antisymmetry implied.
    brackets: HashMap<(usize, usize), LinComb>,
    #[serde(skip)]
    index_of_label: HashMap<String, usize>,
    #[serde(skip)]
    degree_of_index: Vec<i32>,
}

impl GradedLieAlgebra {
    pub fn new(layers: Vec<(i32, Vec<String>)>) -> Self {
        let mut layers = layers;
        layers.sort_by_key(|(d, _)| *d);
        let mut a = GradedLieAlgebra {
            layers,
            brackets: HashMap::new(),
            index_of_label: HashMap::new(),
            degree_of_index: Vec::new(),
        };
        a.rebuild_index();
        a
    }

    pub(crate) fn rebuild_index(&mut self) {
        self.index_of_label.clear();
        self.degree_of_index.clear();
        for (d, labels) in &self.layers {
            for l in labels {
                let idx = self.degree_of_index.len();
                let prev = self.index_of_label.insert(l.clone(), idx);
                assert!(prev.is_none(), "duplicate basis label `{l}`");
                self.degree_of_index.push(*d);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.degree_of_index.len()
    }

    pub fn layers(&self) -> &[(i32, Vec<String>)] {
        &self.layers
    }

    pub fn layer_dims(&self) -> Vec<(i32, usize)> {
        self.layers.iter().map(|(d, l)| (*d, l.len())).collect()
    }

    pub fn degree(&self, idx: usize) -> i32 {
        self.degree_of_index[idx]
    }

    pub fn label(&self, idx: usize) -> &str {
        let mut i = idx;
        for (_, labels) in &self.layers {
            if i < labels.len() {
                return &labels[i];
            }
            i -= labels.len();
        }
        panic!("index out of range");
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.index_of_label.get(label).copied()
    }

    /// Global indices of a layer's basis.
    pub fn layer_indices(&self, degree: i32) -> Vec<usize> {
        let mut base = 0;
        for (d, labels) in &self.layers {
            if *d == degree {
                return (base..base + labels.len()).collect();
            }
            base += labels.len();
        }
        Vec::new()
    }

    pub fn min_degree(&self) -> i32 {
        self.layers.first().map(|(d, _)| *d).unwrap_or(0)
    }

    pub fn max_degree(&self) -> i32 {
        self.layers.last().map(|(d, _)| *d).unwrap_or(0)
    }

    /// Depth of the negative part (e.g. 3 for g_{-1} ⊕ g_{-2} ⊕ g_{-3}).
    pub fn depth(&self) -> u32 {
        (-self.min_degree()).max(0) as u32
    }

    /// Define `[x, y] = value` for basis labels `x`, `y` (the transposed
    /// pair is implied by antisymmetry). Grading compatibility is checked.
    pub fn set_bracket(&mut self, x: &str, y: &str, value: LinComb) {
        let i = self.index(x).unwrap_or_else(|| panic!("unknown label `{x}`"));
        let j = self.index(y).unwrap_or_else(|| panic!("unknown label `{y}`"));
        assert!(i != j || value.is_empty(), "[x, x] must be zero");
        let target = self.degree(i) + self.degree(j);
        for (k, _) in &value {
            assert_eq!(self.degree(*k), target, "graded bracket violation");
        }
        if value.is_empty() {
            return;
        }
        if i < j {
            self.brackets.insert((i, j), value);
        } else {
            self.brackets.insert((j, i), lincomb_neg(&value));
        }
    }

    /// Bracket of two basis elements.
    pub fn bracket_basis(&self, i: usize, j: usize) -> LinComb {
        if i == j {
            return Vec::new();
        }
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.brackets
                .get(&(j, i))
                .map(|v| lincomb_neg(v))
                .unwrap_or_default()
        }
    }

    /// Bracket of two linear combinations.
    pub fn bracket(&self, a: &LinComb, b: &LinComb) -> LinComb {
        let mut acc: LinComb = Vec::new();
        for (i, ci) in a {
            for (j, cj) in b {
                let base = self.bracket_basis(*i, *j);
                if base.is_empty() {
                    continue;
                }
                acc = lincomb_add(&acc, &lincomb_scale(&base, &(ci * cj)));
            }
        }
        acc
    }

    /// Exhaustive Jacobi check over basis triples. Returns the first
    /// offending triple, if any.
    pub fn jacobi_check(&self) -> Option<(String, String, String)> {
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let a = vec![(i, Rat::one())];
                    let b = vec![(j, Rat::one())];
                    let c = vec![(k, Rat::one())];
                    let t1 = self.bracket(&a, &self.bracket(&b, &c));
                    let t2 = self.bracket(&b, &self.bracket(&c, &a));
                    let t3 = self.bracket(&c, &self.bracket(&a, &b));
                    let sum = lincomb_add(&lincomb_add(&t1, &t2), &t3);
                    if !sum.is_empty() {
                        return Some((
                            self.label(i).to_string(),
                            self.label(j).to_string(),
                            self.label(k).to_string(),
                        ));
                    }
                }
            }
        }
        None
    }

    /// Is the algebra generated by its degree −1 layer (fundamental)?
    /// Only meaningful when all layers are negative.
    pub fn is_fundamental(&self) -> bool {
        use crate::algebra::Mat;
        if self.layers.iter().any(|(d, _)| *d >= 0) {
            return false;
        }
        let mut span: Vec<LinComb> = self
            .layer_indices(-1)
            .into_iter()
            .map(|i| vec![(i, Rat::one())])
            .collect();
        let g1 = span.clone();
        loop {
            let mut next = span.clone();
            for a in &g1 {
                for b in &span {
                    let br = self.bracket(a, b);
                    if !br.is_empty() {
                        next.push(br);
                    }
                }
            }
            let to_dense = |v: &LinComb| {
                let mut row = vec![Rat::zero(); self.dim()];
                for (i, c) in v {
                    row[*i] = c.clone();
                }
                row
            };
            let r_old = Mat::from_rows(span.iter().map(&to_dense).collect::<Vec<_>>()).rank();
            let r_new = Mat::from_rows(next.iter().map(&to_dense).collect::<Vec<_>>()).rank();
            if r_new == r_old {
                return r_old == self.dim();
            }
            span = next;
        }
    }

    pub fn brackets_table(&self) -> &HashMap<(usize, usize), LinComb> {
        &self.brackets
    }

    pub fn format_lincomb(&self, v: &LinComb) -> String {
        if v.is_empty() {
            return "0".to_string();
        }
        v.iter()
            .map(|(i, c)| {
                if c.is_one() {
                    self.label(*i).to_string()
                } else {
                    format!("{c}*{}", self.label(*i))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for GradedLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, labels) in &self.layers {
            writeln!(f, "g_{{{d}}}: {}", labels.join(", "))?;
        }
        let mut keys: Vec<_> = self.brackets.keys().copied().collect();
        keys.sort();
        for (i, j) in keys {
            let v = &self.brackets[&(i, j)];
            writeln!(
                f,
                "[{}, {}] = {}",
                self.label(i),
                self.label(j),
                self.format_lincomb(v)
            )?;
        }
        Ok(())
    }
}

/// Heisenberg algebra: g_{-1} = ⟨e1, e2⟩, g_{-2} = ⟨z⟩, [e1, e2] = z.
pub fn heisenberg() -> GradedLieAlgebra {
    let mut a = GradedLieAlgebra::new(vec![
        (-2, vec!["z".into()]),
        (-1, vec!["e1".into(), "e2".into()]),
    ]);
    let z = a.index("z").unwrap();
    a.set_bracket("e1", "e2", vec![(z, Rat::one())]);
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_jacobi() {
        let h = heisenberg();
        assert!(h.jacobi_check().is_none());
        assert!(h.is_fundamental());
        assert_eq!(h.layer_dims(), vec![(-2, 1), (-1, 2)]);
    }

    #[test]
    fn corrupted_constant_returns_offending_triple() {
        let build = |bd_coeff: i64| {
            let mut a = GradedLieAlgebra::new(vec![
                (-4, vec!["f".into()]),
                (-3, vec!["d".into(), "e".into()]),
                (-2, vec!["c".into()]),
                (-1, vec!["a".into(), "b".into()]),
            ]);
            let c = a.index("c").unwrap();
            let d = a.index("d").unwrap();
            let e = a.index("e").unwrap();
            let f = a.index("f").unwrap();
            a.set_bracket("a", "b", vec![(c, Rat::one())]);
            a.set_bracket("a", "c", vec![(d, Rat::one())]);
            a.set_bracket("b", "c", vec![(e, Rat::one())]);
            a.set_bracket("a", "e", vec![(f, Rat::one())]);
            a.set_bracket("b", "d", vec![(f, Rat::int(bd_coeff))]);
            a
        };
        assert!(build(1).jacobi_check().is_none());
        let bad = build(2);
        let triple = bad.jacobi_check().expect("corruption must be detected");
        assert_eq!(triple, ("c".into(), "a".into(), "b".into()));
    }

    #[test]
    fn antisymmetry_by_construction() {
        let h = heisenberg();
        let e1 = h.index("e1").unwrap();
        let e2 = h.index("e2").unwrap();
        let fwd = h.bracket_basis(e1, e2);
        let bwd = h.bracket_basis(e2, e1);
        assert_eq!(fwd, lincomb_neg(&bwd));
    }
}
