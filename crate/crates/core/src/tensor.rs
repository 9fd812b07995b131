//! Coordinate vectors for elements, functionals and multi-leg tensors.
//!
//! A tensor of shape `[d_1, .., d_k]` stores `d_1 * .. * d_k` coordinates,
//! flattened with the leftmost leg as the most significant digit.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// An element of a finite-dimensional algebra (or module) in coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<S>(pub Vec<S>);

/// A linear functional, evaluated by dot product with coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional<S>(pub Vec<S>);

impl<S: Scalar> Element<S> {
    pub fn zero(n: usize) -> Self {
        Element(vec![S::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![S::zero(); n];
        v[i] = S::one();
        Element(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        Element(self.0.iter().map(|x| x.mul_ref(c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            a.add_mul(b, c);
        }
    }

    /// Nonzero coordinates.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &S)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn to_tensor(&self) -> Tensor<S> {
        Tensor::from_vec(self.0.clone())
    }
}

impl<S: Scalar> Functional<S> {
    pub fn zero(n: usize) -> Self {
        Functional(vec![S::zero(); n])
    }

    /// The dual-basis functional `e^i`.
    pub fn dual_basis(n: usize, i: usize) -> Self {
        let mut v = vec![S::zero(); n];
        v[i] = S::one();
        Functional(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn eval(&self, x: &Element<S>) -> S {
        self.eval_coords(&x.0)
    }

    pub fn eval_coords(&self, x: &[S]) -> S {
        let mut acc = S::zero();
        for (a, b) in self.0.iter().zip(x) {
            if !a.is_zero() {
                acc.add_mul(a, b);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        Functional(self.0.iter().map(|x| x.mul_ref(c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Functional(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Functional(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            a.add_mul(b, c);
        }
    }

    /// Precomposition with a linear map: `x -> self(map x)`.
    pub fn compose(&self, map: &Matrix<S>) -> Self {
        Functional(map.transpose().mul_vec(&self.0).expect("functional matches map"))
    }
}

/// A dense multi-leg tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<S> {
    shape: Vec<usize>,
    coords: Vec<S>,
}

impl<S: Scalar> Tensor<S> {
    pub fn zeros(shape: &[usize]) -> Self {
        let len = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            coords: vec![S::zero(); len],
        }
    }

    pub fn from_coords(shape: &[usize], coords: Vec<S>) -> Result<Self> {
        let len: usize = shape.iter().product();
        if coords.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: coords.len(),
            });
        }
        Ok(Tensor {
            shape: shape.to_vec(),
            coords,
        })
    }

    /// Degree-one tensor.
    pub fn from_vec(v: Vec<S>) -> Self {
        Tensor {
            shape: vec![v.len()],
            coords: v,
        }
    }

    /// Degree-zero tensor.
    pub fn scalar(c: S) -> Self {
        Tensor {
            shape: Vec::new(),
            coords: vec![c],
        }
    }

    /// `v_1 (x) v_2 (x) .. (x) v_k` for coordinate vectors.
    pub fn pure(factors: &[&[S]]) -> Self {
        let mut t = Tensor::scalar(S::one());
        for f in factors {
            t = t.outer(&Tensor::from_vec(f.to_vec()));
        }
        t
    }

    pub fn pure_elements(factors: &[&Element<S>]) -> Self {
        let v: Vec<&[S]> = factors.iter().map(|e| e.coords()).collect();
        Self::pure(&v)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn degree(&self) -> usize {
        self.shape.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [S] {
        &mut self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        flat_index(&self.shape, idx)
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.shape.len()];
        for (slot, &d) in idx.iter_mut().zip(&self.shape).rev() {
            *slot = flat % d;
            flat /= d;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.coords[self.flat_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: S) {
        let f = self.flat_index(idx);
        self.coords[f] = v;
    }

    pub fn add_at(&mut self, idx: &[usize], v: &S) {
        let f = self.flat_index(idx);
        self.coords[f] += v;
    }

    /// Nonzero coordinates with their multi-indices.
    pub fn terms(&self) -> Vec<(Vec<usize>, S)> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(f, c)| (self.multi_index(f), c.clone()))
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.coords.iter().filter(|c| !c.is_zero()).count()
    }

    /// Degree-one tensor as an element.
    pub fn to_element(&self) -> Element<S> {
        assert_eq!(self.degree(), 1, "to_element on a tensor of degree {}", self.degree());
        Element(self.coords.clone())
    }

    /// Degree-zero tensor as a scalar.
    pub fn to_scalar(&self) -> S {
        assert_eq!(self.degree(), 0, "to_scalar on a tensor of degree {}", self.degree());
        self.coords[0].clone()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&other.coords) {
            *a += b;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&other.coords) {
            *a -= b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        Tensor {
            shape: self.shape.clone(),
            coords: self.coords.iter().map(|x| x.mul_ref(c)).collect(),
        }
    }

    /// `self += c * other`; shapes must agree.
    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        assert_eq!(self.shape, other.shape, "add_scaled shape mismatch");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                a.add_mul(b, c);
            }
        }
    }

    /// Tensor product `self (x) other`.
    pub fn outer(&self, other: &Self) -> Self {
        let mut shape = self.shape.clone();
        shape.extend_from_slice(&other.shape);
        let mut coords = vec![S::zero(); self.len() * other.len()];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    coords[i * other.len() + j] = a.mul_ref(b);
                }
            }
        }
        Tensor { shape, coords }
    }

    /// Output leg `i` is input leg `perm[i]`.
    pub fn permute_legs(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                found: perm.len(),
            });
        }
        let shape: Vec<usize> = perm.iter().map(|&p| self.shape[p]).collect();
        let mut out = Tensor::zeros(&shape);
        for (idx, c) in self.terms() {
            let new_idx: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            out.set(&new_idx, c);
        }
        Ok(out)
    }

    /// Swaps the two legs of a degree-two tensor.
    pub fn flip(&self) -> Self {
        self.permute_legs(&[1, 0]).expect("degree two")
    }

    fn check_leg(&self, leg: usize) -> Result<()> {
        if leg >= self.degree() {
            return Err(Error::LegOutOfRange {
                leg,
                degree: self.degree(),
            });
        }
        Ok(())
    }

    /// Applies a linear map (acting on coordinate columns) to one leg.
    pub fn map_leg(&self, leg: usize, map: &Matrix<S>) -> Result<Self> {
        self.check_leg(leg)?;
        if map.cols() != self.shape[leg] {
            return Err(Error::DimensionMismatch {
                expected: self.shape[leg],
                found: map.cols(),
            });
        }
        let mut shape = self.shape.clone();
        shape[leg] = map.rows();
        let mut out = Tensor::<S>::zeros(&shape);
        for (mut idx, c) in self.terms() {
            let j = idx[leg];
            for i in 0..map.rows() {
                let m = map.get(i, j);
                if m.is_zero() {
                    continue;
                }
                idx[leg] = i;
                let f = out.flat_index(&idx);
                out.coords[f].add_mul(&c, m);
            }
        }
        Ok(out)
    }

    /// Evaluates a functional on one leg, lowering the degree by one.
    pub fn contract_leg(&self, leg: usize, functional: &[S]) -> Result<Self> {
        self.check_leg(leg)?;
        if functional.len() != self.shape[leg] {
            return Err(Error::DimensionMismatch {
                expected: self.shape[leg],
                found: functional.len(),
            });
        }
        let mut shape = self.shape.clone();
        shape.remove(leg);
        let mut out = Tensor::<S>::zeros(&shape);
        for (mut idx, c) in self.terms() {
            let j = idx.remove(leg);
            let w = &functional[j];
            if w.is_zero() {
                continue;
            }
            let f = out.flat_index(&idx);
            out.coords[f].add_mul(&c, w);
        }
        Ok(out)
    }

    /// `sum_I c_I f(I)` over nonzero coordinates; every `f(I)` must have
    /// shape `out_shape`.
    pub fn sum_terms(&self, out_shape: &[usize], mut f: impl FnMut(&[usize]) -> Tensor<S>) -> Tensor<S> {
        let mut out = Tensor::zeros(out_shape);
        for (idx, c) in self.terms() {
            let t = f(&idx);
            out.add_scaled(&t, &c);
        }
        out
    }

    /// First coordinate where the two tensors differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Vec<usize>, S, S)> {
        if self.shape != other.shape {
            return Some((vec![], S::zero(), S::zero()));
        }
        self.coords
            .iter()
            .zip(&other.coords)
            .position(|(a, b)| a != b)
            .map(|f| (self.multi_index(f), self.coords[f].clone(), other.coords[f].clone()))
    }
}

pub(crate) fn flat_index(shape: &[usize], idx: &[usize]) -> usize {
    debug_assert_eq!(shape.len(), idx.len());
    let mut f = 0;
    for (&i, &d) in idx.iter().zip(shape) {
        debug_assert!(i < d);
        f = f * d + i;
    }
    f
}

impl<S: Scalar> fmt::Display for Tensor<S> {
    /// Sparse coordinate form: one `[i, j, ..] = c` line per nonzero entry.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return writeln!(f, "  0");
        }
        for (idx, c) in terms {
            let idx: Vec<String> = idx.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}] = {}", idx.join(", "), c)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn flattening_is_big_endian() {
        let t = Tensor::<Rational>::zeros(&[2, 3, 4]);
        assert_eq!(t.flat_index(&[1, 2, 3]), (3 + 2) * 4 + 3);
        assert_eq!(t.multi_index(23), vec![1, 2, 3]);
    }

    #[test]
    fn outer_and_contract() {
        let a = Tensor::from_vec(vec![q(1), q(2)]);
        let b = Tensor::from_vec(vec![q(3), q(0), q(5)]);
        let ab = a.outer(&b);
        assert_eq!(ab.shape(), &[2, 3]);
        assert_eq!(ab.get(&[1, 2]), &q(10));
        let c = ab.contract_leg(1, &[q(1), q(1), q(1)]).unwrap();
        assert_eq!(c.coords(), &[q(8), q(16)]);
        assert!(matches!(ab.contract_leg(2, &[q(1)]), Err(Error::LegOutOfRange { .. })));
    }

    #[test]
    fn permute_round_trip() {
        let t = Tensor::from_coords(&[2, 2, 2], (0..8).map(q).collect()).unwrap();
        let p = t.permute_legs(&[2, 0, 1]).unwrap();
        assert_eq!(p.get(&[1, 0, 0]), t.get(&[0, 0, 1]));
        let back = p.permute_legs(&[1, 2, 0]).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn map_leg_applies_matrix() {
        let t = Tensor::pure(&[&[q(1), q(0)], &[q(0), q(1)]]);
        let swap = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        let s = t.map_leg(0, &swap).unwrap();
        assert_eq!(s, Tensor::pure(&[&[q(0), q(1)], &[q(0), q(1)]]));
    }
}
