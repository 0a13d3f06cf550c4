//! Affine complex models: a Lie algebra `g` of real dimension `2n` with a
//! complex structure, a linear part `ρ: g → gl(2n, ℝ)` and a translation
//! part `t: g → ℝ^{2n}`. This is the algebra-level form of a left-invariant
//! flat torsion-free connection preserving the complex structure.

use alloc::vec::Vec;

use crate::endomorphism::{FrameEndomorphism, Matrix};
use crate::error::{Error, Result};
use crate::lie::{require_integrable, LieModel};
use crate::linalg;
use crate::scalar::{Gaussian, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct AffineComplexModel {
    pub base: LieModel,
    pub i_base: FrameEndomorphism<Gaussian>,
    /// `ρ(xᵢ)` for each basis vector.
    pub rho: Vec<Matrix<Gaussian>>,
    pub t: Matrix<Gaussian>,
    pub lattice: bool,
}

/// Outcome of [`validate_affine`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineReport {
    pub n: usize,
    /// Whether every `ρ(xᵢ)` is an integer nilpotent matrix with integer
    /// exponential. Informational only.
    pub integer_monodromy: bool,
}

impl AffineComplexModel {
    pub fn new(
        base: LieModel,
        i_base: FrameEndomorphism<Gaussian>,
        rho: Vec<Matrix<Gaussian>>,
        t: Matrix<Gaussian>,
        lattice: bool,
    ) -> Self {
        AffineComplexModel { base, i_base, rho, t, lattice }
    }

    /// `g = ℝ^{2n}` with `ρ = 0`, `t = Id` and the standard `I`.
    pub fn flat(n: usize) -> Result<Self> {
        let frame = crate::frame::Frame::numbered(2 * n)?;
        let base = LieModel::abelian(alloc::format!("flat_base:{n}"), &frame);
        let i = FrameEndomorphism::new(&frame, standard_complex(n))?;
        Ok(Self::new(base, i, (0..2 * n).map(|_| Matrix::zeros(2 * n, 2 * n)).collect(), Matrix::identity(2 * n), true))
    }

    pub fn name(&self) -> &str {
        self.base.name()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// `ρ(x) = Σ xᵢ ρ(xᵢ)`.
    pub fn rho_of(&self, x: &[Gaussian]) -> Matrix<Gaussian> {
        let d = self.dim();
        let mut out = Matrix::zeros(d, d);
        for (c, r) in x.iter().zip(&self.rho) {
            if !c.is_zero() {
                out = out.add(&r.scale(c)).expect("same shape");
            }
        }
        out
    }

    /// The complex structure `t I t⁻¹` carried to the affine space.
    pub fn i_std(&self) -> Result<Matrix<Gaussian>> {
        let inv = linalg::inverse(&self.t).map_err(|_| Error::TranslationSingular)?;
        self.t.mul(self.i_base.matrix())?.mul(&inv)
    }

    /// `t⁻¹ ρ(xᵢ) t`, the linear part expressed on `g`.
    pub fn rho_on_algebra(&self) -> Result<Vec<Matrix<Gaussian>>> {
        let inv = linalg::inverse(&self.t).map_err(|_| Error::TranslationSingular)?;
        self.rho.iter().map(|r| inv.mul(r)?.mul(&self.t)).collect()
    }
}

/// `I: b₂ᵢ ↦ b₂ᵢ₊₁ ↦ −b₂ᵢ` on `ℝ^{2n}`.
pub fn standard_complex(n: usize) -> Matrix<Gaussian> {
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(2 * i + 1, 2 * i, Gaussian::one());
        m.set(2 * i, 2 * i + 1, -Gaussian::one());
    }
    m
}

fn integer_exponential_nilpotent(m: &Matrix<Gaussian>) -> bool {
    let is_int = |x: &Matrix<Gaussian>| x.data().iter().all(|c| c.as_real().is_some_and(|r| r.is_integer()));
    if !is_int(m) {
        return false;
    }
    let d = m.rows();
    let mut exp = Matrix::identity(d);
    let mut power = Matrix::identity(d);
    let mut fact = 1i64;
    for k in 1..=d {
        power = power.mul(m).expect("square");
        if power.is_zero() {
            return is_int(&exp);
        }
        fact *= k as i64;
        exp = exp.add(&power.scale(&Gaussian::frac(1, fact))).expect("same shape");
    }
    power.mul(m).expect("square").is_zero() && is_int(&exp)
}

/// Checks the étale-affine identities exactly:
/// flatness `ρ([x,y]) = [ρ(x), ρ(y)]`, torsion-freeness
/// `ρ(x)t(y) − ρ(y)t(x) = t([x,y])`, complex-affinity `[ρ(x), t I t⁻¹] = 0`,
/// and invertibility of `t`.
pub fn validate_affine(a: &AffineComplexModel) -> Result<AffineReport> {
    let d = a.dim();
    if !d.is_multiple_of(2) {
        return Err(Error::DegreeMismatch { expected: d + 1, found: d });
    }
    for m in a.rho.iter().chain([&a.t, a.i_base.matrix()]) {
        if m.rows() != d || m.cols() != d {
            return Err(Error::ShapeMismatch { expected_rows: d, expected_cols: d, rows: m.rows(), cols: m.cols() });
        }
    }
    if a.rho.len() != d {
        return Err(Error::WrongVectorCount { expected: d, found: a.rho.len() });
    }
    if a.rho.iter().chain([&a.t, a.i_base.matrix()]).any(|m| !m.is_real()) {
        return Err(Error::NotReal("affine data"));
    }
    crate::frame::check_frames(a.i_base.frame(), a.base.frame())?;
    if a.i_base.compose(&a.i_base)? != FrameEndomorphism::identity(a.base.frame()).neg() {
        return Err(Error::NotAlmostComplex("I_base"));
    }
    if linalg::determinant(&a.t)?.is_zero() {
        return Err(Error::TranslationSingular);
    }
    for i in 0..d {
        for j in i + 1..d {
            let br = a.base.bracket_basis(i, j)?.components();
            let lhs = a.rho_of(&br);
            if lhs != a.rho[i].commutator(&a.rho[j])? {
                return Err(Error::AffineIdentity { identity: "flatness", i, j });
            }
            let ti = a.t.column(i);
            let tj = a.t.column(j);
            let torsion: Vec<Gaussian> = a.rho[i]
                .mul_vec(&tj)?
                .into_iter()
                .zip(a.rho[j].mul_vec(&ti)?)
                .map(|(x, y)| x - y)
                .collect();
            if torsion != a.t.mul_vec(&br)? {
                return Err(Error::AffineIdentity { identity: "torsion-freeness", i, j });
            }
        }
    }
    let i_std = a.i_std()?;
    for (i, r) in a.rho.iter().enumerate() {
        if !r.commutator(&i_std)?.is_zero() {
            return Err(Error::AffineIdentity { identity: "complex-affinity", i, j: i });
        }
    }
    require_integrable(&a.base, &a.i_base, "I_base")?;
    Ok(AffineReport { n: d / 2, integer_monodromy: a.rho.iter().all(integer_exponential_nilpotent) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_is_valid() {
        let a = AffineComplexModel::flat(2).unwrap();
        assert_eq!(validate_affine(&a).unwrap(), AffineReport { n: 2, integer_monodromy: true });
    }

    #[test]
    fn noncommuting_linear_part_fails() {
        let mut a = AffineComplexModel::flat(1).unwrap();
        a.rho[0] = Matrix::from_i64(2, 2, &[1, 0, 0, 0]).unwrap();
        let err = validate_affine(&a).unwrap_err();
        assert!(matches!(err, Error::AffineIdentity { .. }), "{err:?}");
    }

    #[test]
    fn singular_translation() {
        let mut a = AffineComplexModel::flat(1).unwrap();
        a.t = Matrix::zeros(2, 2);
        assert_eq!(validate_affine(&a), Err(Error::TranslationSingular));
    }
}
