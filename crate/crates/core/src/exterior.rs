//! Sparse graded exterior algebra over a frame.
//!
//! [`Form`] lives in `Λ^k` of the dual space, [`Polyvector`] in `Λ^k` of the
//! space itself. Pairing is normalized so that dual monomials pair to 1.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::marker::PhantomData;

use crate::error::{Error, Result};
use crate::frame::{check_frames, Blade, FrameRef};
use crate::scalar::{Complex64, Scalar};

/// Marker for the side of the duality a graded element lives on.
pub trait Variance: Clone + Copy + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Dual: Variance<Dual = Self>;
    const NAME: &'static str;
}

/// Forms: covectors and their wedges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Covariant;

/// Polyvectors: vectors and their wedges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Contravariant;

impl Variance for Covariant {
    type Dual = Contravariant;
    const NAME: &'static str = "form";
}

impl Variance for Contravariant {
    type Dual = Covariant;
    const NAME: &'static str = "polyvector";
}

/// A homogeneous element of the exterior algebra with coefficients in `S`.
#[derive(Clone, PartialEq)]
pub struct Graded<S, K> {
    frame: FrameRef,
    degree: usize,
    terms: BTreeMap<Blade, S>,
    _side: PhantomData<K>,
}

pub type Form<S> = Graded<S, Covariant>;
pub type Polyvector<S> = Graded<S, Contravariant>;

impl<S: Scalar, K: Variance> Graded<S, K> {
    pub fn zero(frame: &FrameRef, degree: usize) -> Result<Self> {
        if degree > frame.dim() {
            return Err(Error::DegreeOverflow { degree, dim: frame.dim() });
        }
        Ok(Self::raw(frame.clone(), degree, BTreeMap::new()))
    }

    pub(crate) fn raw(frame: FrameRef, degree: usize, terms: BTreeMap<Blade, S>) -> Self {
        Graded { frame, degree, terms, _side: PhantomData }
    }

    /// The degree-0 element `c`.
    pub fn constant(frame: &FrameRef, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Blade::EMPTY, c);
        }
        Self::raw(frame.clone(), 0, terms)
    }

    /// `c · e_{i₁}∧⋯∧e_{i_k}` for any distinct indices (sign of the sorting
    /// permutation applied).
    pub fn monomial(frame: &FrameRef, idx: &[usize], c: S) -> Result<Self> {
        let dim = frame.dim();
        if let Some(&i) = idx.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index: i, dim });
        }
        let mut out = Self::zero(frame, idx.len())?;
        if let Some((b, sign)) = Blade::from_unsorted(idx) {
            let c = if sign < 0 { -c } else { c };
            if !c.is_zero() {
                out.terms.insert(b, c);
            }
        }
        Ok(out)
    }

    /// Degree-0 or higher element from strictly increasing index tuples.
    pub fn from_terms<I>(frame: &FrameRef, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, S)>,
    {
        let mut out = Self::zero(frame, degree)?;
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: idx.len() });
            }
            let b = Blade::from_indices(&idx, frame.dim())?;
            out.add_term(b, c);
        }
        Ok(out)
    }

    /// Degree-1 element `Σ cᵢ eᵢ`.
    pub fn vector(frame: &FrameRef, coeffs: &[S]) -> Result<Self> {
        if coeffs.len() != frame.dim() {
            return Err(Error::ShapeMismatch {
                expected_rows: frame.dim(),
                expected_cols: 1,
                rows: coeffs.len(),
                cols: 1,
            });
        }
        let mut out = Self::zero(frame, 1)?;
        for (i, c) in coeffs.iter().enumerate() {
            out.add_term(Blade::single(i), c.clone());
        }
        Ok(out)
    }

    pub fn frame(&self) -> &FrameRef {
        &self.frame
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) coefficients.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &S)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn coeff(&self, b: Blade) -> S {
        self.terms.get(&b).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient on an increasing index tuple.
    pub fn coeff_at(&self, idx: &[usize]) -> Result<S> {
        Ok(self.coeff(Blade::from_indices(idx, self.frame.dim())?))
    }

    /// Coefficients of a degree-1 element as a dense vector.
    pub fn components(&self) -> Vec<S> {
        let mut v = alloc::vec![S::zero(); self.frame.dim()];
        if self.degree == 1 {
            for (b, c) in self.terms() {
                v[b.0.trailing_zeros() as usize] = c.clone();
            }
        }
        v
    }

    pub(crate) fn add_term(&mut self, b: Blade, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
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
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        check_frames(&self.frame, &other.frame)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, -c.clone());
        }
        Ok(out)
    }

    /// `self += c · other`.
    pub fn axpy(&mut self, c: &S, other: &Self) -> Result<()> {
        self.check_same(other)?;
        for (b, x) in other.terms() {
            self.add_term(b, c.mul_ref(x));
        }
        Ok(())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::raw(self.frame.clone(), self.degree, BTreeMap::new());
        }
        let terms = self
            .terms
            .iter()
            .map(|(b, x)| (*b, x.mul_ref(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Self::raw(self.frame.clone(), self.degree, terms)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(b, x)| (*b, -x.clone())).collect();
        Self::raw(self.frame.clone(), self.degree, terms)
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj(&self) -> Self {
        let terms = self.terms.iter().map(|(b, x)| (*b, x.conj())).collect();
        Self::raw(self.frame.clone(), self.degree, terms)
    }

    /// All coefficients real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        check_frames(&self.frame, &other.frame)?;
        let degree = self.degree + other.degree;
        if degree > self.frame.dim() {
            return Err(Error::DegreeOverflow { degree, dim: self.frame.dim() });
        }
        let mut out = Self::raw(self.frame.clone(), degree, BTreeMap::new());
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                if let Some(sign) = a.wedge_sign(b) {
                    let p = x.mul_ref(y);
                    out.add_term(Blade(a.0 | b.0), if sign < 0 { -p } else { p });
                }
            }
        }
        Ok(out)
    }

    /// Wedge of a sequence; the empty product is the constant 1.
    pub fn wedge_all<'a, I>(frame: &FrameRef, items: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Self>,
    {
        let mut acc = Self::constant(frame, S::one());
        for x in items {
            acc = acc.wedge(x)?;
        }
        Ok(acc)
    }

    /// Interior product `v⌟self` with a degree-1 element of the dual side.
    pub fn contract(&self, v: &Graded<S, K::Dual>) -> Result<Self> {
        check_frames(&self.frame, &v.frame)?;
        if v.degree != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: v.degree });
        }
        if self.degree == 0 {
            return Err(Error::ContractZeroForm);
        }
        let mut out = Self::raw(self.frame.clone(), self.degree - 1, BTreeMap::new());
        for (vb, vc) in v.terms() {
            let i = vb.0.trailing_zeros() as usize;
            for (b, x) in self.terms() {
                if !b.contains(i) {
                    continue;
                }
                let p = vc.mul_ref(x);
                let rest = Blade(b.0 & !(1 << i));
                out.add_term(rest, if b.count_below(i) % 2 == 1 { -p } else { p });
            }
        }
        Ok(out)
    }

    /// Full pairing `⟨self, v⟩`.
    pub fn pair(&self, v: &Graded<S, K::Dual>) -> Result<S> {
        check_frames(&self.frame, &v.frame)?;
        if self.degree != v.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: v.degree });
        }
        let (small, large) = if self.terms.len() <= v.terms.len() {
            (self.terms.iter().collect::<Vec<_>>(), &v.terms)
        } else {
            (v.terms.iter().collect::<Vec<_>>(), &self.terms)
        };
        let mut acc = S::zero();
        for (b, x) in small {
            if let Some(y) = large.get(b) {
                acc.add_ref(&x.mul_ref(y));
            }
        }
        Ok(acc)
    }

    /// `⟨self, v₁∧⋯∧v_k⟩` for degree-1 elements `vᵢ`.
    pub fn evaluate(&self, vs: &[Graded<S, K::Dual>]) -> Result<S> {
        let poly = Graded::<S, K::Dual>::wedge_all(&self.frame, vs.iter())?;
        self.pair(&poly)
    }

    /// The same element with floating coefficients.
    pub fn to_float(&self) -> Graded<Complex64, K> {
        let terms = self
            .terms
            .iter()
            .map(|(b, x)| (*b, x.to_c64()))
            .filter(|(_, x)| !Scalar::is_zero(x))
            .collect();
        Graded::raw(self.frame.clone(), self.degree, terms)
    }

    /// Coefficients rewritten through `f`, dropping zeros.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Graded<T, K> {
        let terms = self
            .terms
            .iter()
            .map(|(b, x)| (*b, f(x)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Graded::raw(self.frame.clone(), self.degree, terms)
    }

    /// Retains the terms selected by `keep`.
    pub fn filter(&self, keep: impl Fn(Blade) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(b, _)| keep(**b))
            .map(|(b, x)| (*b, x.clone()))
            .collect();
        Self::raw(self.frame.clone(), self.degree, terms)
    }

    /// Reinterprets the coefficients on a different frame of the same
    /// dimension.
    pub fn with_frame(&self, frame: &FrameRef) -> Result<Self> {
        if frame.dim() != self.frame.dim() {
            return Err(Error::FrameMismatch);
        }
        Ok(Self::raw(frame.clone(), self.degree, self.terms.clone()))
    }
}

impl<K: Variance> Graded<Complex64, K> {
    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl<S: Scalar, K: Variance> fmt::Debug for Graded<S, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]{{", K::NAME, self.degree)?;
        for (n, (b, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{:?}: {:?}", b, c)?;
        }
        f.write_str("}")
    }
}

/// Basis covector `e^i`.
pub fn covector<S: Scalar>(frame: &FrameRef, i: usize) -> Result<Form<S>> {
    Form::monomial(frame, &[i], S::one())
}

/// Basis vector `e_i`.
pub fn basis_vector<S: Scalar>(frame: &FrameRef, i: usize) -> Result<Polyvector<S>> {
    Polyvector::monomial(frame, &[i], S::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use crate::scalar::Gaussian;
    use alloc::vec;

    fn e(frame: &FrameRef, idx: &[usize]) -> Form<Gaussian> {
        Form::monomial(frame, idx, Gaussian::one()).unwrap()
    }

    fn v(frame: &FrameRef, idx: &[usize]) -> Polyvector<Gaussian> {
        Polyvector::monomial(frame, idx, Gaussian::one()).unwrap()
    }

    #[test]
    fn graded_commutativity_of_covectors() {
        let f = Frame::numbered(4).unwrap();
        let a = e(&f, &[1]).wedge(&e(&f, &[2])).unwrap();
        let b = e(&f, &[2]).wedge(&e(&f, &[1])).unwrap();
        assert_eq!(a, b.neg());
        let s = e(&f, &[1]).try_add(&e(&f, &[3])).unwrap();
        assert!(s.wedge(&s).unwrap().is_zero());
    }

    #[test]
    fn contraction_examples() {
        let f = Frame::numbered(4).unwrap();
        let w = e(&f, &[1, 2]);
        assert_eq!(w.contract(&v(&f, &[1])).unwrap(), e(&f, &[2]));
        assert_eq!(w.contract(&v(&f, &[2])).unwrap(), e(&f, &[1]).neg());
        assert!(w.contract(&v(&f, &[3])).unwrap().is_zero());
        let c = Form::constant(&f, Gaussian::one());
        assert_eq!(c.contract(&v(&f, &[0])), Err(Error::ContractZeroForm));
    }

    #[test]
    fn pairing_normalization() {
        let f = Frame::numbered(4).unwrap();
        assert_eq!(e(&f, &[1, 2]).pair(&v(&f, &[1, 2])).unwrap(), Gaussian::one());
        assert_eq!(e(&f, &[1, 2]).pair(&v(&f, &[2, 1])).unwrap(), Gaussian::int(-1));
        assert!(matches!(
            e(&f, &[1]).pair(&v(&f, &[1, 2])),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn mismatched_frames_and_overflow() {
        let f = Frame::numbered(4).unwrap();
        let g = Frame::new(vec!["a".into(), "b".into(), "c".into(), "d".into()]).unwrap();
        assert_eq!(e(&f, &[0]).wedge(&e(&g, &[1])), Err(Error::FrameMismatch));
        let top = e(&f, &[0, 1, 2, 3]);
        assert!(matches!(top.wedge(&e(&f, &[0])), Err(Error::DegreeOverflow { .. })));
        assert_eq!(
            Form::<Gaussian>::from_terms(&f, 2, [(vec![2, 1], Gaussian::one())]),
            Err(Error::NotIncreasing)
        );
    }

    #[test]
    fn omega_squared_is_twice_volume() {
        let f = Frame::numbered(4).unwrap();
        let w = e(&f, &[0, 1]).try_add(&e(&f, &[2, 3])).unwrap();
        assert_eq!(w.wedge(&w).unwrap(), e(&f, &[0, 1, 2, 3]).scale(&Gaussian::int(2)));
    }

    #[test]
    fn evaluate_matches_determinant() {
        let f = Frame::numbered(3).unwrap();
        let a = Polyvector::vector(&f, &[Gaussian::int(1), Gaussian::int(2), Gaussian::int(0)]).unwrap();
        let b = Polyvector::vector(&f, &[Gaussian::int(3), Gaussian::int(-1), Gaussian::int(5)]).unwrap();
        // minor on rows 0,1: 1·(−1) − 2·3
        assert_eq!(e(&f, &[0, 1]).evaluate(&[a, b]).unwrap(), Gaussian::int(-7));
    }
}
