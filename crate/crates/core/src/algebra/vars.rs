//! Ordered variable contexts shared by polynomials and rational functions.
//!
//! Every polynomial carries a reference to the variable set it lives over.
//! Arithmetic between values over different variable sets is a programming
//! error; the crate never silently unions variable lists.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug)]
struct VarSetInner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered list of variable names. Cheap to clone.
///
/// The declared order fixes the graded-lexicographic monomial order used
/// for canonical forms: monomials are compared by total degree first, then
/// lexicographically with earlier variables weighing more.
#[derive(Clone)]
pub struct VarSet(Arc<VarSetInner>);

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let prev = index.insert(n.clone(), i);
            assert!(prev.is_none(), "duplicate variable name `{n}`");
        }
        VarSet(Arc::new(VarSetInner { names, index }))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.index.contains_key(name)
    }

    /// Fast pointer check first, then structural equality.
    pub fn same(&self, other: &VarSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for VarSet {}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarSet{:?}", self.0.names)
    }
}

/// Exponent vector over a [`VarSet`], ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Box<[u16]>);

impl Mono {
    pub fn unit(n: usize) -> Self {
        Mono(vec![0u16; n].into_boxed_slice())
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0u16; n];
        e[i] = 1;
        Mono(e.into_boxed_slice())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise division; `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Mono(out.into_boxed_slice()))
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mono{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        // x > y in the declared order (x first): x^2 > x*y > y^2 > x > y > 1.
        let x2 = Mono(vec![2, 0].into());
        let xy = Mono(vec![1, 1].into());
        let y2 = Mono(vec![0, 2].into());
        let x = Mono(vec![1, 0].into());
        assert!(x2 > xy && xy > y2 && y2 > x);
    }

    #[test]
    #[should_panic]
    fn duplicate_names_rejected() {
        VarSet::new(["x", "x"]);
    }
}
