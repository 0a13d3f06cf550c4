//! Dense matrices and linear endomorphisms of a frame.
//!
//! A [`FrameEndomorphism`] acts on vectors through its matrix (column `j` is
//! the image of `e_j`) and on covectors through the transpose, so
//! `⟨A*α, v⟩ = ⟨α, Av⟩`. Both actions extend to the exterior algebra either
//! as derivations or as algebra automorphisms.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exterior::{Form, Graded, Polyvector, Variance};
use crate::frame::{check_frames, Blade, FrameRef};
use crate::scalar::{Complex64, Scalar};

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected_rows: rows,
                expected_cols: cols,
                rows: data.len() / cols.max(1),
                cols,
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// From nested rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch { expected_rows: r, expected_cols: c, rows: r, cols: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
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

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Integer entries, row-major.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| S::from_i64(x)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[S] {
        &self.data
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

    pub fn conj(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::conj).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows) && self.is_square()
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Scalar::is_real)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                expected_rows: self.cols,
                expected_cols: other.cols,
                rows: other.rows,
                cols: other.cols,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch { expected_rows: self.cols, expected_cols: 1, rows: v.len(), cols: 1 });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc.add_ref(&a.mul_ref(x));
                    }
                }
                acc
            })
            .collect())
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                expected_rows: self.rows,
                expected_cols: self.cols,
                rows: other.rows,
                cols: other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &S) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul_ref(c)).collect() }
    }

    pub fn neg(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a.clone()).collect() }
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        Self::from_blocks(a, &Self::zeros(a.rows, b.cols), &Self::zeros(b.rows, a.cols), b)
            .expect("blocks conform by construction")
    }

    /// `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::ShapeMismatch {
                expected_rows: a.rows + c.rows,
                expected_cols: a.cols + b.cols,
                rows: b.rows + d.rows,
                cols: c.cols + d.cols,
            });
        }
        let (r, cl) = (a.rows + c.rows, a.cols + b.cols);
        Ok(Self::from_fn(r, cl, |i, j| match (i < a.rows, j < a.cols) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - a.cols).clone(),
            (false, true) => c.get(i - a.rows, j).clone(),
            (false, false) => d.get(i - a.rows, j - a.cols).clone(),
        }))
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_float(&self) -> Matrix<Complex64> {
        self.map(Scalar::to_c64)
    }

    /// First entry `(i, j)` where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((0, 0));
        }
        (0..self.data.len()).find(|&k| self.data[k] != other.data[k]).map(|k| (k / self.cols, k % self.cols))
    }
}

impl Matrix<Complex64> {
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for i in 0..self.rows {
            l.entry(&self.row(i));
        }
        l.finish()
    }
}

/// A linear map of the frame's vector space to itself.
#[derive(Clone, PartialEq)]
pub struct FrameEndomorphism<S> {
    frame: FrameRef,
    matrix: Matrix<S>,
}

impl<S: Scalar> fmt::Debug for FrameEndomorphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

impl<S: Scalar> FrameEndomorphism<S> {
    pub fn new(frame: &FrameRef, matrix: Matrix<S>) -> Result<Self> {
        let d = frame.dim();
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::ShapeMismatch { expected_rows: d, expected_cols: d, rows: matrix.rows(), cols: matrix.cols() });
        }
        Ok(FrameEndomorphism { frame: frame.clone(), matrix })
    }

    pub fn identity(frame: &FrameRef) -> Self {
        FrameEndomorphism { frame: frame.clone(), matrix: Matrix::identity(frame.dim()) }
    }

    pub fn zero(frame: &FrameRef) -> Self {
        FrameEndomorphism { frame: frame.clone(), matrix: Matrix::zeros(frame.dim(), frame.dim()) }
    }

    pub fn frame(&self) -> &FrameRef {
        &self.frame
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    fn lift(&self, m: Matrix<S>) -> Self {
        FrameEndomorphism { frame: self.frame.clone(), matrix: m }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_frames(&self.frame, &other.frame)?;
        Ok(self.lift(self.matrix.mul(&other.matrix)?))
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        check_frames(&self.frame, &other.frame)?;
        Ok(self.lift(self.matrix.commutator(&other.matrix)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_frames(&self.frame, &other.frame)?;
        Ok(self.lift(self.matrix.add(&other.matrix)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_frames(&self.frame, &other.frame)?;
        Ok(self.lift(self.matrix.sub(&other.matrix)?))
    }

    pub fn scale(&self, c: &S) -> Self {
        self.lift(self.matrix.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.lift(self.matrix.neg())
    }

    pub fn transpose(&self) -> Self {
        self.lift(self.matrix.transpose())
    }

    pub fn conj(&self) -> Self {
        self.lift(self.matrix.conj())
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn to_float(&self) -> FrameEndomorphism<Complex64> {
        FrameEndomorphism { frame: self.frame.clone(), matrix: self.matrix.to_float() }
    }

    /// `A v` for a vector.
    pub fn apply(&self, v: &Polyvector<S>) -> Result<Polyvector<S>> {
        self.derive_polyvector(v)
    }

    /// `A* α = α∘A` for a covector.
    pub fn pullback(&self, a: &Form<S>) -> Result<Form<S>> {
        self.derive_form(a)
    }

    /// Sparse rows: `out[i] = [(j, m_ij)]` with nonzero entries.
    fn sparse(&self, transpose: bool) -> Vec<Vec<(usize, S)>> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d)
                    .filter_map(|j| {
                        let c = if transpose { self.matrix.get(j, i) } else { self.matrix.get(i, j) };
                        (!c.is_zero()).then(|| (j, c.clone()))
                    })
                    .collect()
            })
            .collect()
    }

    fn derive_with<K: Variance>(&self, a: &Graded<S, K>, map: &[Vec<(usize, S)>]) -> Result<Graded<S, K>> {
        check_frames(&self.frame, a.frame())?;
        let mut out: BTreeMap<Blade, S> = BTreeMap::new();
        let mut push = |b: Blade, c: S| {
            if c.is_zero() {
                return;
            }
            match out.entry(b) {
                alloc::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                alloc::collections::btree_map::Entry::Occupied(mut o) => {
                    o.get_mut().add_ref(&c);
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        };
        for (b, c) in a.terms() {
            for i in b.indices() {
                for (j, m) in &map[i] {
                    let j = *j;
                    if j != i && b.contains(j) {
                        continue;
                    }
                    let p = c.mul_ref(m);
                    let nb = Blade((b.0 & !(1 << i)) | 1 << j);
                    let neg = j != i && b.count_between(i, j) % 2 == 1;
                    push(nb, if neg { -p } else { p });
                }
            }
        }
        Ok(Graded::raw(a.frame().clone(), a.degree(), out))
    }

    /// Derivation extension to forms of the transpose action.
    pub fn derive_form(&self, a: &Form<S>) -> Result<Form<S>> {
        // e^i ↦ Σ_j A_ij e^j
        self.derive_with(a, &self.sparse(false))
    }

    /// Derivation extension to polyvectors.
    pub fn derive_polyvector(&self, a: &Polyvector<S>) -> Result<Polyvector<S>> {
        // e_i ↦ Σ_j A_ji e_j
        self.derive_with(a, &self.sparse(true))
    }

    /// Iterated derivation `Aᵏ` on forms.
    pub fn derive_form_pow(&self, a: &Form<S>, k: usize) -> Result<Form<S>> {
        let map = self.sparse(false);
        let mut x = a.clone();
        for _ in 0..k {
            x = self.derive_with(&x, &map)?;
        }
        Ok(x)
    }

    fn images<K: Variance>(&self, transpose: bool) -> Result<Vec<Graded<S, K>>> {
        self.sparse(transpose)
            .into_iter()
            .map(|row| {
                let mut coeffs = vec![S::zero(); self.dim()];
                for (j, c) in row {
                    coeffs[j] = c;
                }
                Graded::vector(&self.frame, &coeffs)
            })
            .collect()
    }

    fn exterior_with<K: Variance>(&self, a: &Graded<S, K>, images: &[Graded<S, K>]) -> Result<Graded<S, K>> {
        check_frames(&self.frame, a.frame())?;
        let mut out = Graded::zero(&self.frame, a.degree())?;
        for (b, c) in a.terms() {
            let img = Graded::wedge_all(&self.frame, b.indices().map(|i| &images[i]))?;
            out.axpy(c, &img)?;
        }
        Ok(out)
    }

    /// Exterior-power action `A*` on forms (pullback).
    pub fn pull_form(&self, a: &Form<S>) -> Result<Form<S>> {
        self.exterior_with(a, &self.images(false)?)
    }

    /// Exterior-power action on polyvectors (pushforward).
    pub fn push_polyvector(&self, a: &Polyvector<S>) -> Result<Polyvector<S>> {
        self.exterior_with(a, &self.images(true)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{basis_vector, covector};
    use crate::frame::Frame;
    use crate::scalar::Gaussian;

    fn g(v: i64) -> Gaussian {
        Gaussian::int(v)
    }

    #[test]
    fn identity_is_euler_operator() {
        let f = Frame::numbered(5).unwrap();
        let id = FrameEndomorphism::<Gaussian>::identity(&f);
        let a = Form::monomial(&f, &[0, 2, 4], g(3)).unwrap()
            .try_add(&Form::monomial(&f, &[1, 2, 3], g(-1)).unwrap())
            .unwrap();
        assert_eq!(id.derive_form(&a).unwrap(), a.scale(&g(3)));
        assert!(FrameEndomorphism::zero(&f).derive_form(&a).unwrap().is_zero());
    }

    #[test]
    fn transpose_action_is_adjoint() {
        let f = Frame::numbered(3).unwrap();
        let m = Matrix::<Gaussian>::from_i64(3, 3, &[1, 2, 0, -1, 3, 4, 0, 5, -2]).unwrap();
        let a = FrameEndomorphism::new(&f, m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let lhs = a.pullback(&covector(&f, i).unwrap()).unwrap().pair(&basis_vector(&f, j).unwrap()).unwrap();
                let rhs = covector(&f, i).unwrap().pair(&a.apply(&basis_vector(&f, j).unwrap()).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(lhs, a.matrix().get(i, j).clone());
            }
        }
    }

    #[test]
    fn exterior_power_is_determinant_on_top() {
        let f = Frame::numbered(3).unwrap();
        let m = Matrix::<Gaussian>::from_i64(3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 4]).unwrap();
        let a = FrameEndomorphism::new(&f, m).unwrap();
        let top = Form::monomial(&f, &[0, 1, 2], g(1)).unwrap();
        assert_eq!(a.pull_form(&top).unwrap(), top.scale(&g(18)));
    }

    #[test]
    fn block_layout() {
        let a = Matrix::<Gaussian>::from_i64(1, 1, &[1]).unwrap();
        let b = Matrix::<Gaussian>::from_i64(1, 1, &[2]).unwrap();
        let d = Matrix::block_diag(&a, &b);
        assert_eq!(d, Matrix::from_i64(2, 2, &[1, 0, 0, 2]).unwrap());
    }
}
