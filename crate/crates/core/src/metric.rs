//! Hyperhermitian metrics and the forms they determine: Kähler forms,
//! the holomorphic volume form, the calibration `Ψ`, and Lagrangian tests.

use alloc::format;
use alloc::vec::Vec;

use crate::endomorphism::{FrameEndomorphism, Matrix};
use crate::error::{Error, Result};
use crate::exterior::{Form, Polyvector};
use crate::frame::{check_frames, FrameRef};
use crate::linalg;
use crate::quaternionic::{project_plus, require_type, QuaternionicStructure};
use crate::random;
use crate::scalar::{Gaussian, Scalar};

/// A real symmetric positive-definite `G` with `LᵀGL = G` for `L = I, J, K`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperhermitianMetric {
    frame: FrameRef,
    g: Matrix<Gaussian>,
}

/// Symmetry, reality and Sylvester positivity of `g`.
pub fn check_positive(g: &Matrix<Gaussian>) -> Result<()> {
    if !g.is_symmetric() || !g.is_real() {
        return Err(Error::MetricNotSymmetric);
    }
    linalg::positive_definite(g).map_err(|minor| Error::MetricNotPositive { minor })
}

impl HyperhermitianMetric {
    pub fn new(q: &QuaternionicStructure, g: Matrix<Gaussian>) -> Result<Self> {
        let d = q.dim();
        if g.rows() != d || g.cols() != d {
            return Err(Error::ShapeMismatch { expected_rows: d, expected_cols: d, rows: g.rows(), cols: g.cols() });
        }
        check_positive(&g)?;
        for (name, l) in ["I", "J", "K"].into_iter().zip(q.triple()) {
            if l.matrix().transpose().mul(&g)?.mul(l.matrix())? != g {
                return Err(Error::MetricIncompatible(name));
            }
        }
        Ok(HyperhermitianMetric { frame: q.frame().clone(), g })
    }

    /// The identity matrix, when compatible.
    pub fn standard(q: &QuaternionicStructure) -> Result<Self> {
        Self::new(q, Matrix::identity(q.dim()))
    }

    /// `¼ Σ_{L ∈ {1,I,J,K}} Lᵀ(AᵀA)L` for a seeded random integer `A`,
    /// redrawn until positive definite.
    pub fn random(q: &QuaternionicStructure, seed: u64, index: u64) -> Self {
        let mut rng = random::stream(seed, index);
        let d = q.dim();
        let id = FrameEndomorphism::identity(q.frame());
        loop {
            let a = random::integer_matrix(&mut rng, d, d, 2);
            let m = a.transpose().mul(&a).expect("square");
            let mut g = Matrix::zeros(d, d);
            for l in [&id, q.i(), q.j(), q.k()] {
                let t = l.matrix().transpose().mul(&m).and_then(|x| x.mul(l.matrix())).expect("square");
                g = g.add(&t).expect("same shape");
            }
            let g = g.scale(&Gaussian::frac(1, 4));
            if let Ok(metric) = Self::new(q, g) {
                return metric;
            }
        }
    }

    pub fn frame(&self) -> &FrameRef {
        &self.frame
    }

    pub fn matrix(&self) -> &Matrix<Gaussian> {
        &self.g
    }

    /// Complex-bilinear extension `g(x, y) = xᵀGy`.
    pub fn inner(&self, x: &Polyvector<Gaussian>, y: &Polyvector<Gaussian>) -> Result<Gaussian> {
        check_frames(x.frame(), &self.frame)?;
        check_frames(y.frame(), &self.frame)?;
        let gy = self.g.mul_vec(&y.components())?;
        Ok(x.components().iter().zip(&gy).fold(Gaussian::zero(), |acc, (a, b)| acc + a.mul_ref(b)))
    }

    /// `ω_L(x, y) = g(Lx, y)`.
    pub fn omega(&self, l: &FrameEndomorphism<Gaussian>) -> Result<Form<Gaussian>> {
        check_frames(l.frame(), &self.frame)?;
        let m = l.matrix().transpose().mul(&self.g)?;
        let d = self.frame.dim();
        let mut terms = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                terms.push((alloc::vec![a, b], m.get(a, b).clone()));
            }
        }
        Form::from_terms(&self.frame, 2, terms)
    }
}

/// `ω_I, ω_J, ω_K` and `Ω_I = ω_J + √−1·ω_K`.
#[derive(Clone, Debug, PartialEq)]
pub struct KahlerForms {
    pub omega_i: Form<Gaussian>,
    pub omega_j: Form<Gaussian>,
    pub omega_k: Form<Gaussian>,
    pub big_omega_i: Form<Gaussian>,
}

/// `T^{1,0}` projection `½(v − √−1·Iv)` of a vector.
pub fn holomorphic_part(v: &Polyvector<Gaussian>, q: &QuaternionicStructure) -> Result<Polyvector<Gaussian>> {
    let iv = q.i().apply(v)?;
    v.try_sub(&iv.scale(&Gaussian::i())).map(|w| w.scale(&Gaussian::frac(1, 2)))
}

fn basis_vectors(frame: &FrameRef) -> Vec<Polyvector<Gaussian>> {
    (0..frame.dim())
        .map(|i| Polyvector::monomial(frame, &[i], Gaussian::one()).expect("index in range"))
        .collect()
}

pub fn kahler_forms(g: &HyperhermitianMetric, q: &QuaternionicStructure) -> Result<KahlerForms> {
    check_frames(g.frame(), q.frame())?;
    // re-validates compatibility for metrics built on another structure
    HyperhermitianMetric::new(q, g.matrix().clone())?;
    let omega_i = g.omega(q.i())?;
    let omega_j = g.omega(q.j())?;
    let omega_k = g.omega(q.k())?;
    let big = omega_j.try_add(&omega_k.scale(&Gaussian::i()))?;
    require_type(&big, q.i(), 2, 0)?;
    let hol: Vec<_> = basis_vectors(q.frame()).iter().map(|v| holomorphic_part(v, q)).collect::<Result<_>>()?;
    for x in &hol {
        let jx = q.j().apply(x)?;
        for y in &hol {
            let lhs = big.evaluate(&[x.clone(), y.clone()])?;
            if lhs != g.inner(&jx, y)?.mul_ref(&Gaussian::int(2)) {
                return Err(Error::MetricIncompatible("Omega_I(X,Y) = 2g(JX,Y)"));
            }
        }
    }
    Ok(KahlerForms { omega_i, omega_j, omega_k, big_omega_i: big })
}

/// A holomorphic volume form `Φ_I` with its scale relative to the frame it
/// was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeForm {
    pub phi: Form<Gaussian>,
    pub scale: Gaussian,
    /// The vectors `e₁, …, eₙ` the form was built from.
    pub selection: Vec<Polyvector<Gaussian>>,
}

/// Rank of the real span of `{e, Ie, Je, Ke}` over the given vectors.
fn quaternionic_span(vs: &[Polyvector<Gaussian>], q: &QuaternionicStructure) -> Result<Matrix<Gaussian>> {
    let mut cols = Vec::new();
    for v in vs {
        cols.push(v.components());
        for l in q.triple() {
            cols.push(l.apply(v)?.components());
        }
    }
    Ok(Matrix::from_rows(cols)?.transpose())
}

/// Greedy choice of basis vectors `e₁, …, eₙ` independent over `ℍ`.
pub fn quaternionic_selection(q: &QuaternionicStructure) -> Result<Vec<Polyvector<Gaussian>>> {
    let mut chosen: Vec<Polyvector<Gaussian>> = Vec::new();
    for v in basis_vectors(q.frame()) {
        if chosen.len() == q.n() {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(v);
        if linalg::rank(&quaternionic_span(&trial, q)?) == 4 * trial.len() {
            chosen = trial;
        }
    }
    if chosen.len() != q.n() {
        return Err(Error::NotQuaternionicFrame);
    }
    Ok(chosen)
}

/// `Φ_I = ε₁∧ζ₁∧⋯∧εₙ∧ζₙ`, where `(εᵢ, ζᵢ)` is the `(1,0)` coframe dual to
/// `uᵢ = ½(eᵢ − √−1·Ieᵢ)`, `wᵢ = J ūᵢ`. In particular `εᵢ = eᵢ* + √−1·(Ieᵢ)*`
/// when `(eᵢ, Ieᵢ, Jeᵢ, Keᵢ)` is part of the frame.
pub fn standard_volume_form(q: &QuaternionicStructure, selection: &[Polyvector<Gaussian>]) -> Result<VolumeForm> {
    if q.n() == 0 {
        return Err(Error::ZeroQuaternionicDimension);
    }
    if selection.len() != q.n() {
        return Err(Error::WrongVectorCount { expected: q.n(), found: selection.len() });
    }
    for v in selection {
        check_frames(v.frame(), q.frame())?;
        if v.degree() != 1 {
            return Err(Error::DegreeMismatch { expected: 1, found: v.degree() });
        }
    }
    if linalg::rank(&quaternionic_span(selection, q)?) != q.dim() {
        return Err(Error::NotQuaternionicFrame);
    }
    let n = q.n();
    let mut hol = Vec::with_capacity(2 * n);
    for e in selection {
        let u = holomorphic_part(e, q)?;
        let w = q.j().apply(&u.conj())?;
        hol.push(u);
        hol.push(w);
    }
    let mut cols: Vec<Vec<Gaussian>> = hol.iter().map(|v| v.components()).collect();
    cols.extend(hol.iter().map(|v| v.conj().components()));
    let p = Matrix::from_rows(cols)?.transpose();
    let dual = linalg::inverse(&p).map_err(|_| Error::NotQuaternionicFrame)?;
    let coframe: Vec<Form<Gaussian>> =
        (0..2 * n).map(|r| Form::vector(q.frame(), dual.row(r))).collect::<Result<_>>()?;
    let phi = Form::wedge_all(q.frame(), coframe.iter())?;
    require_type(&phi, q.i(), 2 * n, 0)?;
    Ok(VolumeForm { phi, scale: Gaussian::one(), selection: selection.to_vec() })
}

/// `conj(J*Φ) = Φ`.
pub fn is_real_volume(phi: &Form<Gaussian>, q: &QuaternionicStructure) -> Result<bool> {
    Ok(q.j().pull_form(phi)?.conj() == *phi)
}

/// The calibration form `Ψ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CalibrationForm {
    pub psi: Form<Gaussian>,
}

/// `Ψ = (−√−1)ⁿ 𝓨ⁿ Φ`, certified of type `(n,n)`, of maximal weight and
/// real.
pub fn psi(vol: &VolumeForm, q: &QuaternionicStructure) -> Result<CalibrationForm> {
    psi_of_form(&vol.phi, q)
}

pub fn psi_of_form(phi: &Form<Gaussian>, q: &QuaternionicStructure) -> Result<CalibrationForm> {
    let n = q.n();
    require_type(phi, q.i(), 2 * n, 0)?;
    let yn = q.sl2().apply_y_pow(phi, n)?;
    let psi = yn.scale(&(-Gaussian::i()).pow(n as u32));
    require_type(&psi, q.i(), n, n)?;
    if project_plus(&psi, q)? != psi {
        return Err(Error::DoubleInvariant("Psi has maximal weight"));
    }
    if phi_real(phi, q)? && !psi.is_real() {
        return Err(Error::DoubleInvariant("Psi is real"));
    }
    Ok(CalibrationForm { psi })
}

fn phi_real(phi: &Form<Gaussian>, q: &QuaternionicStructure) -> Result<bool> {
    is_real_volume(phi, q)
}

/// `(1,0)` vectors `uᵢ = ½(eᵢ − √−1·Ieᵢ)` for a selection.
pub fn holomorphic_span(selection: &[Polyvector<Gaussian>], q: &QuaternionicStructure) -> Result<Vec<Polyvector<Gaussian>>> {
    selection.iter().map(|e| holomorphic_part(e, q)).collect()
}

/// `ξ = (−√−1)ⁿ v₁∧v̄₁∧⋯∧vₙ∧v̄ₙ`.
pub fn lagrangian_polyvector(vs: &[Polyvector<Gaussian>]) -> Result<Polyvector<Gaussian>> {
    let frame = vs.first().ok_or(Error::WrongVectorCount { expected: 1, found: 0 })?.frame().clone();
    let mut acc = Polyvector::constant(&frame, (-Gaussian::i()).pow(vs.len() as u32));
    for v in vs {
        acc = acc.wedge(v)?.wedge(&v.conj())?;
    }
    Ok(acc)
}

/// Outcome of [`lagrangian_test`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianReport {
    /// `Ω_I(v_a, v_b) = 0` for all pairs.
    pub omega_vanishes: bool,
    /// `g(Jx, y) = 0` for `x, y` in the real span.
    pub j_orthogonal: bool,
    /// `V_ℝ ∩ J V_ℝ = 0`.
    pub transversal: bool,
}

impl LagrangianReport {
    pub fn is_lagrangian(&self) -> bool {
        self.omega_vanishes && self.transversal
    }
}

fn check_holomorphic(vs: &[Polyvector<Gaussian>], q: &QuaternionicStructure) -> Result<()> {
    if vs.len() != q.n() {
        return Err(Error::WrongVectorCount { expected: q.n(), found: vs.len() });
    }
    for (index, v) in vs.iter().enumerate() {
        check_frames(v.frame(), q.frame())?;
        if v.degree() != 1 || q.i().apply(v)? != v.scale(&Gaussian::i()) {
            return Err(Error::NotHolomorphic { index });
        }
    }
    let m = Matrix::from_rows(vs.iter().map(|v| v.components()).collect())?;
    if linalg::rank(&m) != vs.len() {
        return Err(Error::DependentVectors);
    }
    Ok(())
}

fn transversal(vs: &[Polyvector<Gaussian>], q: &QuaternionicStructure) -> Result<bool> {
    let mut rows: Vec<Vec<Gaussian>> = vs.iter().map(|v| v.components()).collect();
    for v in vs {
        rows.push(q.j().apply(&v.conj())?.components());
    }
    Ok(linalg::rank(&Matrix::from_rows(rows)?) == 2 * vs.len())
}

/// Both Lagrangian criteria for the `I`-complex span of `(1,0)` vectors.
pub fn lagrangian_test(
    vs: &[Polyvector<Gaussian>],
    g: &HyperhermitianMetric,
    q: &QuaternionicStructure,
) -> Result<LagrangianReport> {
    check_holomorphic(vs, q)?;
    let forms = kahler_forms(g, q)?;
    let mut omega_vanishes = true;
    for a in vs {
        for b in vs {
            if !forms.big_omega_i.evaluate(&[a.clone(), b.clone()])?.is_zero() {
                omega_vanishes = false;
            }
        }
    }
    let mut real = Vec::new();
    for v in vs {
        real.push(v.try_add(&v.conj())?);
        real.push(v.try_sub(&v.conj())?.scale(&Gaussian::i()));
    }
    let mut j_orthogonal = true;
    for x in &real {
        let jx = q.j().apply(x)?;
        for y in &real {
            if !g.inner(&jx, y)?.is_zero() {
                j_orthogonal = false;
            }
        }
    }
    if omega_vanishes != j_orthogonal {
        return Err(Error::DoubleInvariant("Lagrangian criteria agree"));
    }
    Ok(LagrangianReport { omega_vanishes, j_orthogonal, transversal: transversal(vs, q)? })
}

/// `⟨Ψ, ξ⟩` for `ξ` built from the `(1,0)` vectors; must be a positive real.
pub fn psi_positivity(vs: &[Polyvector<Gaussian>], psi: &Form<Gaussian>, q: &QuaternionicStructure) -> Result<Gaussian> {
    check_holomorphic(vs, q)?;
    if !transversal(vs, q)? {
        return Err(Error::NotTransversal);
    }
    let value = psi.pair(&lagrangian_polyvector(vs)?)?;
    if !value.is_positive_real() {
        return Err(Error::PositivityViolated(format!("{value}")));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::basis_vector;
    use crate::quaternionic::pure_type;

    fn e(f: &FrameRef, idx: &[usize]) -> Form<Gaussian> {
        Form::monomial(f, idx, Gaussian::one()).unwrap()
    }

    #[test]
    fn flat_kahler_forms() {
        let q = QuaternionicStructure::standard(1).unwrap();
        let g = HyperhermitianMetric::standard(&q).unwrap();
        let k = kahler_forms(&g, &q).unwrap();
        let f = q.frame();
        assert_eq!(k.omega_i, e(f, &[0, 1]).try_add(&e(f, &[2, 3])).unwrap());
        assert_eq!(pure_type(&k.omega_i, q.i()).unwrap(), Some((1, 1)));
        let g2 = HyperhermitianMetric::new(&q, Matrix::identity(4).scale(&Gaussian::int(2))).unwrap();
        let k2 = kahler_forms(&g2, &q).unwrap();
        assert_eq!(k2.omega_j, k.omega_j.scale(&Gaussian::int(2)));
    }

    #[test]
    fn volume_form_of_h1() {
        let q = QuaternionicStructure::standard(1).unwrap();
        let sel = quaternionic_selection(&q).unwrap();
        let vol = standard_volume_form(&q, &sel).unwrap();
        let f = q.frame();
        let eps = Form::from_terms(f, 1, [(alloc::vec![0], Gaussian::one()), (alloc::vec![1], Gaussian::i())]).unwrap();
        let zeta = Form::from_terms(f, 1, [(alloc::vec![2], Gaussian::one()), (alloc::vec![3], Gaussian::i())]).unwrap();
        assert_eq!(vol.phi, eps.wedge(&zeta).unwrap());
        assert!(is_real_volume(&vol.phi, &q).unwrap());
        assert_eq!(standard_volume_form(&q, &[]), Err(Error::WrongVectorCount { expected: 1, found: 0 }));
    }

    #[test]
    fn psi_pairs_to_factorial() {
        for (n, fact) in [(1usize, 1i64), (2, 2)] {
            let q = QuaternionicStructure::standard(n).unwrap();
            let sel = quaternionic_selection(&q).unwrap();
            let vol = standard_volume_form(&q, &sel).unwrap();
            let p = psi(&vol, &q).unwrap();
            let vs = holomorphic_span(&sel, &q).unwrap();
            assert_eq!(psi_positivity(&vs, &p.psi, &q).unwrap(), Gaussian::int(fact));
        }
    }

    #[test]
    fn lagrangian_axes() {
        let q = QuaternionicStructure::standard(2).unwrap();
        let g = HyperhermitianMetric::standard(&q).unwrap();
        let sel = quaternionic_selection(&q).unwrap();
        let vs = holomorphic_span(&sel, &q).unwrap();
        let r = lagrangian_test(&vs, &g, &q).unwrap();
        assert!(r.omega_vanishes && r.j_orthogonal && r.transversal);
        // v and J v̄ span a J-invariant plane
        let v = vs[0].clone();
        let w = q.j().apply(&v.conj()).unwrap();
        let r = lagrangian_test(&[v.clone(), w.clone()], &g, &q).unwrap();
        assert!(!r.transversal && !r.is_lagrangian());
        let bad = basis_vector::<Gaussian>(q.frame(), 0).unwrap();
        assert_eq!(lagrangian_test(&[bad, v], &g, &q), Err(Error::NotHolomorphic { index: 0 }));
    }

    #[test]
    fn random_metrics_are_hyperhermitian() {
        let q = QuaternionicStructure::standard(1).unwrap();
        for i in 0..5 {
            let g = HyperhermitianMetric::random(&q, 3, i);
            assert!(HyperhermitianMetric::new(&q, g.matrix().clone()).is_ok());
            let k = kahler_forms(&g, &q).unwrap();
            assert_eq!(pure_type(&k.big_omega_i, q.i()).unwrap(), Some((2, 0)));
        }
    }
}
