//! The quaternionic double `g̃ = g ⋉ ℝ^{2n}` of an affine complex model,
//! its hypercomplex structure `𝓘 = diag(−I, I)`, `𝓙 = [[0, Id], [−Id, 0]]`,
//! `𝓚 = 𝓘𝓙`, and the forms living on it.
//!
//! Coordinates `0..2n` are horizontal (`hᵢ`), `2n..4n` vertical (`vᵢ`).
//! The vertical copy is identified with `g` through `t`, so the bracket is
//! `[(x,u),(y,v)] = ([x,y], ρ'(x)v − ρ'(y)u)` with `ρ' = t⁻¹ρt`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use rand::Rng;

use crate::affine::{validate_affine, AffineComplexModel};
use crate::endomorphism::{FrameEndomorphism, Matrix};
use crate::error::{Error, Result};
use crate::exterior::{basis_vector, Form, Polyvector};
use crate::frame::{Frame, FrameRef};
use crate::lie::{hkt_test_with, require_integrable, LieModel};
use crate::linalg;
use crate::metric::{
    check_positive, holomorphic_span, kahler_forms, lagrangian_test, psi, psi_positivity, standard_volume_form,
    CalibrationForm, HyperhermitianMetric, VolumeForm,
};
use crate::quaternionic::{pure_type, QuaternionicStructure};
use crate::random;
use crate::scalar::{Gaussian, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct DoubleModel {
    pub affine: AffineComplexModel,
    /// The double as a Lie model carrying `(𝓘, 𝓙, 𝓚)`.
    pub model: LieModel,
    pub n: usize,
    /// `π: g̃ → g`, the `2n × 4n` matrix `[Id 0]`.
    pub projection: Matrix<Gaussian>,
}

impl DoubleModel {
    pub fn frame(&self) -> &FrameRef {
        self.model.frame()
    }

    pub fn structure(&self) -> &QuaternionicStructure {
        self.model.structure().expect("doubles always carry a structure")
    }

    pub fn horizontal(&self) -> Range<usize> {
        0..2 * self.n
    }

    pub fn vertical(&self) -> Range<usize> {
        2 * self.n..4 * self.n
    }

    /// `eᵢ = h₂ᵢ`, independent over `ℍ`.
    pub fn selection(&self) -> Vec<Polyvector<Gaussian>> {
        (0..self.n).map(|i| basis_vector(self.frame(), 2 * i).expect("in range")).collect()
    }

    /// `(1,0)` vectors spanning the complexified vertical space.
    pub fn vertical_holomorphic(&self) -> Result<Vec<Polyvector<Gaussian>>> {
        let sel: Vec<_> = (0..self.n).map(|i| basis_vector(self.frame(), 2 * self.n + 2 * i)).collect::<Result<_>>()?;
        holomorphic_span(&sel, self.structure())
    }

    /// `(x, 0)` for a base vector `x`.
    pub fn lift(&self, x: &Polyvector<Gaussian>) -> Result<Polyvector<Gaussian>> {
        crate::frame::check_frames(x.frame(), self.affine.base.frame())?;
        let mut coeffs = x.components();
        coeffs.resize(4 * self.n, Gaussian::zero());
        Polyvector::vector(self.frame(), &coeffs)
    }
}

/// `𝓘, 𝓙, 𝓚` on the split frame.
pub fn double_structure(frame: &FrameRef, i_base: &Matrix<Gaussian>) -> Result<QuaternionicStructure> {
    let d = i_base.rows();
    let zero = Matrix::zeros(d, d);
    let id = Matrix::identity(d);
    let i = Matrix::block_diag(&i_base.neg(), i_base);
    let j = Matrix::from_blocks(&zero, &id, &id.neg(), &zero)?;
    let k = i.mul(&j)?;
    QuaternionicStructure::new(
        FrameEndomorphism::new(frame, i)?,
        FrameEndomorphism::new(frame, j)?,
        FrameEndomorphism::new(frame, k)?,
    )
}

pub fn build_double(a: &AffineComplexModel) -> Result<DoubleModel> {
    let report = validate_affine(a)?;
    let n = report.n;
    let d = 2 * n;
    let labels: Vec<String> = (0..d).map(|i| format!("h{i}")).chain((0..d).map(|i| format!("v{i}"))).collect();
    let frame = Frame::new(labels)?;
    let rho = a.rho_on_algebra()?;
    let mut entries = Vec::new();
    for (i, j, k, c) in a.base.entries() {
        entries.push((i, j, k, c));
    }
    for (i, r) in rho.iter().enumerate() {
        for j in 0..d {
            for k in 0..d {
                let c = r.get(k, j);
                if !c.is_zero() {
                    entries.push((i, d + j, d + k, c.clone()));
                }
            }
        }
    }
    let q = double_structure(&frame, a.i_base.matrix())?;
    let model = LieModel::new(format!("{}_double", a.name()), &frame, entries)?
        .with_structure(q.clone())?
        .with_lattice(a.lattice);
    for (name, l) in ["I", "J", "K"].into_iter().zip(q.triple()) {
        require_integrable(&model, l, name)?;
    }
    for i in d..2 * d {
        for j in 0..2 * d {
            let b = model.bracket_basis(i, j)?;
            let inside = b.terms().all(|(blade, _)| blade.indices().all(|x| x >= d));
            if !inside || (j >= d && !b.is_zero()) {
                return Err(Error::DoubleInvariant("vertical space is an abelian ideal"));
            }
        }
    }
    let projection = Matrix::from_fn(d, 2 * d, |r, c| if r == c { Gaussian::one() } else { Gaussian::zero() });
    Ok(DoubleModel { affine: a.clone(), model, n, projection })
}

/// `Φ_I` from the frame `eᵢ = h₂ᵢ`, required closed.
pub fn double_volume_form(d: &DoubleModel) -> Result<VolumeForm> {
    let vol = standard_volume_form(d.structure(), &d.selection())?;
    if !d.model.is_closed(&vol.phi)? {
        return Err(Error::VolumeFormNotClosed);
    }
    Ok(vol)
}

/// `Ψ` with its closedness and its value on the standard Lagrangian.
#[derive(Clone, Debug, PartialEq)]
pub struct PsiReport {
    pub calibration: CalibrationForm,
    pub closed: bool,
    pub lagrangian_pairing: Gaussian,
}

/// `Ψ` for any model with a structure, from a given volume form.
pub fn psi_report(m: &LieModel, vol: &VolumeForm) -> Result<PsiReport> {
    let q = m.structure().ok_or(Error::MissingStructure)?;
    let calibration = psi(vol, q)?;
    let closed = m.is_closed(&calibration.psi)?;
    let vs = holomorphic_span(&vol.selection, q)?;
    let lagrangian_pairing = psi_positivity(&vs, &calibration.psi, q)?;
    Ok(PsiReport { calibration, closed, lagrangian_pairing })
}

pub fn double_psi(d: &DoubleModel) -> Result<PsiReport> {
    psi_report(&d.model, &double_volume_form(d)?)
}

/// `h = G ⊕ G` for an `I`-Hermitian base metric `G`.
pub fn fibration_metric(d: &DoubleModel, g_base: &Matrix<Gaussian>) -> Result<HyperhermitianMetric> {
    check_positive(g_base)?;
    let i = d.affine.i_base.matrix();
    if g_base.rows() != i.rows() || i.transpose().mul(g_base)?.mul(i)? != *g_base {
        return Err(Error::NotHermitian);
    }
    let h = HyperhermitianMetric::new(d.structure(), Matrix::block_diag(g_base, g_base))?;
    if !lagrangian_test(&d.vertical_holomorphic()?, &h, d.structure())?.is_lagrangian() {
        return Err(Error::DoubleInvariant("vertical space is Lagrangian"));
    }
    Ok(h)
}

/// Fixed stream for the randomized positivity check of `θ`.
pub const THETA_SEED: u64 = 0x7e7a;
pub const THETA_SAMPLES: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaReport {
    /// `Θ = Ψ ∧ ω_I` on the double.
    pub big_theta: Form<Gaussian>,
    /// `θ(A, B) = Θ(Ã, B̃, v₀, …, v_{2n−1})` on the base.
    pub theta: Form<Gaussian>,
    pub type_11: bool,
    pub theta_closed: bool,
    pub big_theta_closed: bool,
    /// `θ(x, I_X y)` with `I_X = −I_base`, the structure `π` carries `𝓘` to.
    pub hermitian: Matrix<Gaussian>,
    /// `None` when the vertical space is not Lagrangian for `h`.
    pub positive: Option<bool>,
}

pub fn theta_pushforward(d: &DoubleModel, h: &HyperhermitianMetric) -> Result<ThetaReport> {
    let q = d.structure();
    let psi = double_psi(d)?.calibration.psi;
    let omega = kahler_forms(h, q)?.omega_i;
    let big_theta = psi.wedge(&omega)?;
    let frame = d.frame();
    let mut nu = Polyvector::constant(frame, Gaussian::one());
    for i in d.vertical() {
        nu = nu.wedge(&basis_vector(frame, i)?)?;
    }
    let base = d.affine.base.frame().clone();
    let dim = 2 * d.n;
    let lifts: Vec<Polyvector<Gaussian>> =
        (0..dim).map(|i| d.lift(&basis_vector(&base, i)?)).collect::<Result<_>>()?;
    let mut terms = Vec::new();
    for a in 0..dim {
        for b in a + 1..dim {
            let v = lifts[a].wedge(&lifts[b])?.wedge(&nu)?;
            terms.push((alloc::vec![a, b], big_theta.pair(&v)?));
        }
    }
    let theta = Form::from_terms(&base, 2, terms)?;
    let type_11 = theta.is_zero() || pure_type(&theta, &d.affine.i_base)? == Some((1, 1));
    let theta_closed = d.affine.base.is_closed(&theta)?;
    let big_theta_closed = d.model.is_closed(&big_theta)?;
    let i_x = d.affine.i_base.neg();
    let basis: Vec<Polyvector<Gaussian>> = (0..dim).map(|i| basis_vector(&base, i)).collect::<Result<_>>()?;
    let ix_basis: Vec<Polyvector<Gaussian>> = basis.iter().map(|v| i_x.apply(v)).collect::<Result<_>>()?;
    let hermitian = Matrix::from_fn(dim, dim, |a, b| {
        theta.evaluate(&[basis[a].clone(), ix_basis[b].clone()]).expect("degree 2")
    });
    let lagrangian = lagrangian_test(&d.vertical_holomorphic()?, h, q)?.is_lagrangian();
    let positive = lagrangian.then(|| {
        if !hermitian.is_symmetric() || linalg::positive_definite(&hermitian).is_err() {
            return false;
        }
        let mut rng = random::stream(THETA_SEED, 0);
        (0..THETA_SAMPLES).all(|_| {
            let mut coeffs: Vec<Gaussian> = random::integer_vector(&mut rng, dim, 5);
            if coeffs.iter().all(Scalar::is_zero) {
                coeffs[rng.random_range(0..dim)] = Gaussian::one();
            }
            let v = Polyvector::vector(&base, &coeffs).expect("base frame");
            let iv = i_x.apply(&v).expect("base frame");
            theta.evaluate(&[v, iv]).expect("degree 2").is_positive_real()
        })
    });
    Ok(ThetaReport { big_theta, theta, type_11, theta_closed, big_theta_closed, hermitian, positive })
}

/// Verdicts of `hkt_test` over seeded random invariant metrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub samples: usize,
    pub seed: u64,
    pub hkt_found: usize,
    /// Number of nonzero coefficients of `∂Ω_I`, per sample.
    pub defects: Vec<usize>,
}

impl ScanReport {
    pub fn min_defect(&self) -> usize {
        self.defects.iter().copied().min().unwrap_or(0)
    }
}

/// Sample `i` uses metric stream `(seed, i)`.
pub fn hkt_scan(m: &LieModel, samples: usize, seed: u64) -> Result<ScanReport> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let q = m.structure().ok_or(Error::MissingStructure)?;
    let mut defects = Vec::with_capacity(samples);
    for i in 0..samples {
        let g = HyperhermitianMetric::random(q, seed, i as u64);
        defects.push(hkt_test_with(m, q, &g)?.defect());
    }
    let hkt_found = defects.iter().filter(|&&x| x == 0).count();
    Ok(ScanReport { samples, seed, hkt_found, defects })
}

pub fn hkt_obstruction_scan(d: &DoubleModel, samples: usize, seed: u64) -> Result<ScanReport> {
    hkt_scan(&d.model, samples, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_double_is_flat_quaternionic_space() {
        let d = build_double(&AffineComplexModel::flat(1).unwrap()).unwrap();
        assert!(d.model.is_abelian());
        let p = double_psi(&d).unwrap();
        assert!(p.closed);
        assert_eq!(p.lagrangian_pairing, Gaussian::one());
        let h = fibration_metric(&d, &Matrix::identity(2)).unwrap();
        let t = theta_pushforward(&d, &h).unwrap();
        assert!(t.type_11 && t.theta_closed && t.big_theta_closed);
        assert_eq!(t.positive, Some(true));
    }

    #[test]
    fn non_hermitian_base_metric_rejected() {
        let d = build_double(&AffineComplexModel::flat(1).unwrap()).unwrap();
        let g = Matrix::from_i64(2, 2, &[2, 0, 0, 1]).unwrap();
        assert_eq!(fibration_metric(&d, &g), Err(Error::NotHermitian));
    }

    #[test]
    fn scan_needs_samples() {
        let d = build_double(&AffineComplexModel::flat(1).unwrap()).unwrap();
        assert_eq!(hkt_obstruction_scan(&d, 0, 1), Err(Error::NoSamples));
        let r = hkt_obstruction_scan(&d, 3, 1).unwrap();
        assert_eq!((r.hkt_found, r.min_defect()), (3, 0));
    }
}
