//! Dense exact linear algebra.
//!
//! All subspace outputs are in reduced row-echelon form with ascending pivot
//! columns, so two equal subspaces always have identical bases.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Result<Self> {
        for c in columns {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn mul(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::<S>::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_mul(a, b);
                }
                acc
            })
            .collect())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    pub fn sub(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        Ok(out)
    }

    fn check_fields(&self) -> Result<()> {
        let mut kind = None;
        for v in &self.data {
            let k = v.field();
            match kind {
                None => kind = Some(k),
                Some(prev) if !prev.compatible(k) => return Err(Error::MixedFields),
                Some(prev) => {
                    if prev == crate::scalar::FieldKind::Unbound {
                        kind = Some(k);
                    }
                }
            }
        }
        Ok(())
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix<S>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).try_inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j).mul_ref(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let delta = factor.mul_ref(m.get(r, j));
                    let idx = i * m.cols + j;
                    m.data[idx] -= &delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(S::zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            let inv = pivot.try_inv().expect("pivot is nonzero");
            for i in c + 1..n {
                let factor = m.get(i, c).mul_ref(&inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let delta = factor.mul_ref(m.get(c, j));
                    m.data[i * n + j] -= &delta;
                }
            }
        }
        Ok(det)
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// One exact solution of `a * x = b`, or `None` when the system is
/// inconsistent. Free variables are set to zero.
pub fn solve_linear<S: Scalar>(a: &Matrix<S>, b: &[S]) -> Result<Option<Vec<S>>> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    a.check_fields()?;
    let aug = Matrix::from_fn(a.rows(), a.cols() + 1, |i, j| {
        if j < a.cols() {
            a.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    aug.check_fields()?;
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&a.cols()) {
        return Ok(None);
    }
    let mut x = vec![S::zero(); a.cols()];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = r.get(row, a.cols()).clone();
    }
    Ok(Some(x))
}

/// Reduced-echelon basis of `{x : a * x = 0}`.
pub fn kernel_basis<S: Scalar>(a: &Matrix<S>) -> Vec<Vec<S>> {
    let (r, pivots) = a.rref();
    let n = a.cols();
    let mut basis = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    for free in 0..n {
        if pivot_iter.peek() == Some(&&free) {
            pivot_iter.next();
            continue;
        }
        let mut v = vec![S::zero(); n];
        v[free] = S::one();
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = -r.get(row, free).clone();
        }
        basis.push(v);
    }
    echelon_rows(n, &basis)
}

/// Exact inverse, or `None` when singular.
pub fn invert<S: Scalar>(a: &Matrix<S>) -> Result<Option<Matrix<S>>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    a.check_fields()?;
    let n = a.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else if j - n == i {
            S::one()
        } else {
            S::zero()
        }
    });
    let (r, pivots) = aug.rref();
    if pivots.len() < n || pivots[n - 1] >= n {
        return Ok(None);
    }
    Ok(Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone())))
}

fn echelon_rows<S: Scalar>(ambient: usize, vectors: &[Vec<S>]) -> Vec<Vec<S>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_fn(vectors.len(), ambient, |i, j| vectors[i][j].clone());
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// A subspace of `S^ambient`, stored as its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn span(ambient: usize, vectors: &[Vec<S>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
        }
        let basis = echelon_rows(ambient, vectors);
        let pivots = basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        Ok(Subspace {
            ambient,
            basis,
            pivots,
        })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let id = Matrix::<S>::identity(ambient);
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| id.row(i).to_vec()).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Kernel of `a` as a subspace of `S^{a.cols()}`.
    pub fn kernel(a: &Matrix<S>) -> Self {
        let basis = kernel_basis(a);
        Self::span(a.cols(), &basis).expect("kernel vectors have the right length")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` is not in
    /// the subspace.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vec<S> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![S::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            for (acc, x) in rebuilt.iter_mut().zip(row) {
                acc.add_mul(c, x);
            }
        }
        (rebuilt == v).then_some(coords)
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace<S>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace<S>) -> Result<Self> {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &all)
    }

    /// Image under a linear map given by its matrix (acting on columns).
    pub fn image(&self, map: &Matrix<S>) -> Result<Self> {
        let imgs = self
            .basis
            .iter()
            .map(|v| map.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Self::span(map.rows(), &imgs)
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix<S> {
        Matrix::from_fn(self.ambient, self.dim(), |i, j| self.basis[j][i].clone())
    }

    /// Extends the echelon basis to a basis of the ambient space with
    /// standard vectors on the non-pivot coordinates.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|i| !self.pivots.contains(i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};
    use num_traits::{One, Zero};

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn solve_identity() {
        let b = vec![q(3), q(-4)];
        assert_eq!(
            solve_linear(&Matrix::identity(2), &b).unwrap(),
            Some(b.clone())
        );
    }

    #[test]
    fn solve_inconsistent() {
        let z = Matrix::<Rational>::zeros(2, 2);
        assert_eq!(solve_linear(&z, &[q(1), q(0)]).unwrap(), None);
    }

    #[test]
    fn solve_rank_deficient_by_substitution() {
        let a = mat(&[&[1, 2], &[2, 4]]);
        let x = solve_linear(&a, &[q(1), q(2)]).unwrap().unwrap();
        assert_eq!(x[0].clone() + q(2) * x[1].clone(), q(1));
        assert_eq!(a.mul_vec(&x).unwrap(), vec![q(1), q(2)]);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = mat(&[&[1, 2]]);
        assert!(matches!(
            solve_linear(&a, &[q(1), q(2)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn solve_mixed_fields() {
        let a = Matrix::from_rows(vec![vec![Fp::new(1, 5).unwrap(), Fp::new(1, 7).unwrap()]])
            .unwrap();
        assert!(matches!(
            solve_linear(&a, &[Fp::one()]),
            Err(Error::MixedFields)
        ));
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::<Rational>::identity(3)).is_empty());
        let k = kernel_basis(&Matrix::<Rational>::zeros(3, 3));
        assert_eq!(k, (0..3).map(|i| Matrix::<Rational>::identity(3).row(i).to_vec()).collect::<Vec<_>>());
        let k = kernel_basis(&mat(&[&[1, 1]]));
        assert_eq!(k, vec![vec![q(1), q(-1)]]);
    }

    #[test]
    fn invert_examples() {
        let id = Matrix::<Rational>::identity(3);
        assert_eq!(invert(&id).unwrap(), Some(id.clone()));
        let swap = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(invert(&swap).unwrap(), Some(swap.clone()));
        assert_eq!(invert(&mat(&[&[1, 1], &[1, 1]])).unwrap(), None);
        assert!(matches!(
            invert(&mat(&[&[1, 1]])),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn determinant_matches_invertibility() {
        assert_eq!(mat(&[&[1, 2], &[3, 4]]).determinant().unwrap(), q(-2));
        assert!(mat(&[&[1, 1], &[1, 1]]).determinant().unwrap().is_zero());
    }

    #[test]
    fn subspace_membership() {
        let s = Subspace::span(3, &[vec![q(1), q(1), q(0)], vec![q(2), q(2), q(0)]]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[q(-3), q(-3), q(0)]));
        assert!(!s.contains(&[q(1), q(0), q(0)]));
        assert_eq!(s.coordinates(&[q(5), q(5), q(0)]), Some(vec![q(5)]));
        assert_eq!(s.complement_indices(), vec![1, 2]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Matrix<Rational>> {
            (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                    Matrix::from_fn(r, c, |i, j| q(v[i * c + j]))
                })
            })
        }

        fn square_matrix() -> impl Strategy<Value = Matrix<Rational>> {
            (1usize..5).prop_flat_map(|n| {
                proptest::collection::vec(-3i64..4, n * n)
                    .prop_map(move |v| Matrix::from_fn(n, n, |i, j| q(v[i * n + j])))
            })
        }

        proptest! {
            #[test]
            fn kernel_vectors_are_annihilated_and_independent(a in small_matrix()) {
                let k = kernel_basis(&a);
                for v in &k {
                    prop_assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
                }
                let pivots: Vec<usize> = k.iter().map(|v| v.iter().position(|x| !x.is_zero()).unwrap()).collect();
                let mut sorted = pivots.clone();
                sorted.dedup();
                prop_assert_eq!(sorted.len(), pivots.len());
                prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
                prop_assert_eq!(k.len() + a.rank(), a.cols());
            }

            #[test]
            fn inverse_is_two_sided(a in square_matrix()) {
                match invert(&a).unwrap() {
                    Some(inv) => {
                        prop_assert!(inv.mul(&a).unwrap().is_identity());
                        prop_assert!(a.mul(&inv).unwrap().is_identity());
                        prop_assert!(!a.determinant().unwrap().is_zero());
                    }
                    None => prop_assert!(a.determinant().unwrap().is_zero()),
                }
            }
        }
    }
}
