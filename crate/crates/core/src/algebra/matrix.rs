//! Exact linear algebra over the rationals and over rational-function fields.
//!
//! Everything funnels through reduced row echelon form with deterministic
//! pivoting (first viable column, then the structurally simplest row).
//! For rational-function matrices the rows are cleared of denominators
//! first, so elimination mostly manipulates polynomials.

use super::rational::Rat;
use super::ratfun::RatFun;
use super::vars::VarSet;

/// Minimal field interface for the elimination routines.
pub trait FieldScalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Rough structural size used for pivot selection.
    fn weight(&self) -> usize;
}

impl FieldScalar for Rat {
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
}

impl FieldScalar for RatFun {
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        RatFun::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        RatFun::one(self.vars())
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        (self / rhs).expect("division by zero pivot")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn weight(&self) -> usize {
        self.num().num_terms() + self.den().num_terms()
    }
}

/// Dense rectangular matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: FieldScalar> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Reduced row echelon form, in place. Returns pivot columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // Pick the structurally lightest nonzero entry in this column.
            let mut best: Option<(usize, usize)> = None;
            for i in r..self.rows {
                let e = self.at(i, c);
                if !e.is_zero() {
                    let w = e.weight();
                    if best.map(|(_, bw)| w < bw).unwrap_or(true) {
                        best = Some((i, w));
                    }
                }
            }
            let Some((pi, _)) = best else { continue };
            self.swap_rows(r, pi);
            let inv = self.at(r, c).one_like().div(self.at(r, c));
            self.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    self.sub_scaled_row(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, f: &T) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            if !self.data[idx].is_zero() {
                self.data[idx] = self.data[idx].mul(f);
            }
        }
    }

    /// row_i -= f * row_s
    fn sub_scaled_row(&mut self, i: usize, s: usize, f: &T) {
        for j in 0..self.cols {
            let v = self.data[s * self.cols + j].clone();
            if v.is_zero() {
                continue;
            }
            let idx = i * self.cols + j;
            self.data[idx] = self.data[idx].sub(&v.mul(f));
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space { v : M v = 0 }.
    ///
    /// One vector per free column; the free column's slot carries 1 and the
    /// pivot slots carry the negated reduced entries, so the output is
    /// deterministic given the matrix.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        if self.cols == 0 {
            return Vec::new();
        }
        let template = self.data.first().cloned();
        let zero = match template {
            Some(t) => t.zero_like(),
            None => return Vec::new(),
        };
        let one = zero.one_like();
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for fc in 0..self.cols {
            if pivot_set.contains(&fc) {
                continue;
            }
            let mut v = vec![zero.clone(); self.cols];
            v[fc] = one.clone();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = m.at(ri, fc).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `M x = b`; `None` when inconsistent. Free variables are set
    /// to zero (deterministic particular solution).
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let zero = b
            .first()
            .map(|t| t.zero_like())
            .or_else(|| self.data.first().map(|t| t.zero_like()))?;
        // Augment.
        let mut rows: Vec<Vec<T>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut r: Vec<T> = self.row(i).to_vec();
            r.push(b[i].clone());
            rows.push(r);
        }
        let mut aug = Mat::from_rows(rows);
        let pivots = aug.rref();
        // Inconsistent iff a pivot lands in the augmented column.
        if pivots.last().map(|&c| c == self.cols).unwrap_or(false) {
            return None;
        }
        let mut x = vec![zero; self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(ri, self.cols).clone();
        }
        Some(x)
    }
}

/// Clear denominators row-wise so elimination over rational functions
/// works with polynomial numerators.
pub fn clear_row_denominators(row: &mut [RatFun]) {
    use super::ratfun::common_denominator;
    let Some(lcm) = common_denominator(row.iter().filter(|r| !r.is_zero())) else {
        return;
    };
    if lcm.is_one() {
        return;
    }
    let f = RatFun::from_poly(lcm);
    for e in row.iter_mut() {
        *e = &*e * &f;
    }
}

/// Kernel basis of a rational-function matrix with rows pre-cleared of
/// denominators. Entry point used by the geometry layer.
pub fn ratfun_kernel(rows: Vec<Vec<RatFun>>, _vars: &VarSet) -> Vec<Vec<RatFun>> {
    let mut rows = rows;
    for r in rows.iter_mut() {
        clear_row_denominators(r);
    }
    Mat::from_rows(rows).kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn identity_kernel_empty() {
        let m = Mat::from_rows(vec![
            vec![q(1), q(0), q(0)],
            vec![q(0), q(1), q(0)],
            vec![q(0), q(0), q(1)],
        ]);
        assert!(m.kernel_basis().is_empty());
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn one_by_two() {
        let m = Mat::from_rows(vec![vec![q(1), q(1)]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // (-1, 1) spans the same line as (1, -1).
        assert_eq!(k[0], vec![q(-1), q(1)]);
    }

    #[test]
    fn rank_nullity() {
        let m = Mat::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_basis().len(), 2);
        // M v = 0 exactly for every kernel vector.
        for v in m.kernel_basis() {
            for i in 0..m.nrows() {
                let mut acc = Rat::zero();
                for j in 0..m.ncols() {
                    acc += m.at(i, j) * &v[j];
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn solve_consistency() {
        let m = Mat::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(-1)]]);
        let x = m.solve(&[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let bad = Mat::from_rows(vec![vec![q(1), q(1)], vec![q(2), q(2)]]);
        assert!(bad.solve(&[q(0), q(1)]).is_none());
    }
}
