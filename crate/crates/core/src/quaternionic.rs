//! Quaternionic structures on a real frame of dimension `4n`, the Hodge
//! bigrading of an induced complex structure, the sl(2) triple acting on
//! forms and the resulting weight decomposition.
//!
//! Conventions. A covector `α` has type (1,0) for `L` when `α∘L = √−1·α`,
//! i.e. `Lᵀα = √−1·α`. On covectors the triple acts by `(Iᵀ, −Jᵀ, Kᵀ)`,
//! which again satisfies the quaternionic relations; `𝓗, 𝓧, 𝓨` are built
//! from it, so `𝓗 = +1` on `Λ^{1,0}` and `𝓨` restricts to `−Jᵀ` there.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use crate::endomorphism::{FrameEndomorphism, Matrix};
use crate::error::{Error, Result};
use crate::exterior::{Form, Polyvector};
use crate::frame::{check_frames, Blade, Frame, FrameRef};
use crate::scalar::{Complex64, Gaussian, Scalar};
use crate::spectral;

/// Exact endomorphisms `I, J, K` with `I² = J² = K² = −Id`, `IJ = −JI = K`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionicStructure {
    i: FrameEndomorphism<Gaussian>,
    j: FrameEndomorphism<Gaussian>,
    k: FrameEndomorphism<Gaussian>,
    n: usize,
}

/// Checks the five quaternionic identities and returns `n = dim/4`.
pub fn validate_quaternionic(
    i: &FrameEndomorphism<Gaussian>,
    j: &FrameEndomorphism<Gaussian>,
    k: &FrameEndomorphism<Gaussian>,
) -> Result<usize> {
    check_frames(i.frame(), j.frame())?;
    check_frames(i.frame(), k.frame())?;
    let dim = i.dim();
    if !dim.is_multiple_of(4) {
        return Err(Error::NotQuaternionicDimension(dim));
    }
    let minus_id = FrameEndomorphism::identity(i.frame()).neg();
    let checks: [(&'static str, FrameEndomorphism<Gaussian>, FrameEndomorphism<Gaussian>); 5] = [
        ("I^2 = -Id", i.compose(i)?, minus_id.clone()),
        ("J^2 = -Id", j.compose(j)?, minus_id.clone()),
        ("K^2 = -Id", k.compose(k)?, minus_id),
        ("IJ = K", i.compose(j)?, k.clone()),
        ("JI = -K", j.compose(i)?, k.neg()),
    ];
    for (name, lhs, rhs) in checks {
        if lhs != rhs {
            return Err(Error::QuaternionicIdentity(name));
        }
    }
    Ok(dim / 4)
}

fn quaternion_block(unit: usize) -> [(usize, usize, i64); 4] {
    // images of (x, Ix, Jx, Kx) as (row, column, sign)
    match unit {
        1 => [(1, 0, 1), (0, 1, -1), (3, 2, 1), (2, 3, -1)],
        2 => [(2, 0, 1), (3, 1, -1), (0, 2, -1), (1, 3, 1)],
        _ => [(3, 0, 1), (2, 1, 1), (1, 2, -1), (0, 3, -1)],
    }
}

fn standard_matrix(n: usize, unit: usize) -> Matrix<Gaussian> {
    let mut m = Matrix::zeros(4 * n, 4 * n);
    for b in 0..n {
        for (r, c, s) in quaternion_block(unit) {
            m.set(4 * b + r, 4 * b + c, Gaussian::int(s));
        }
    }
    m
}

impl QuaternionicStructure {
    pub fn new(
        i: FrameEndomorphism<Gaussian>,
        j: FrameEndomorphism<Gaussian>,
        k: FrameEndomorphism<Gaussian>,
    ) -> Result<Self> {
        let n = validate_quaternionic(&i, &j, &k)?;
        if n == 0 {
            return Err(Error::ZeroQuaternionicDimension);
        }
        Ok(QuaternionicStructure { i, j, k, n })
    }

    /// The structure of `ℍⁿ` in the frame `(x₁, Ix₁, Jx₁, Kx₁, …)`.
    pub fn standard(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroQuaternionicDimension);
        }
        let frame = Frame::numbered(4 * n)?;
        Self::standard_on(&frame)
    }

    /// Standard block structure on an existing frame of dimension `4n`.
    pub fn standard_on(frame: &FrameRef) -> Result<Self> {
        let dim = frame.dim();
        if !dim.is_multiple_of(4) {
            return Err(Error::NotQuaternionicDimension(dim));
        }
        let n = dim / 4;
        let e = |u| FrameEndomorphism::new(frame, standard_matrix(n, u));
        Self::new(e(1)?, e(2)?, e(3)?)
    }

    pub fn frame(&self) -> &FrameRef {
        self.i.frame()
    }

    /// Quaternionic dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        4 * self.n
    }

    pub fn i(&self) -> &FrameEndomorphism<Gaussian> {
        &self.i
    }

    pub fn j(&self) -> &FrameEndomorphism<Gaussian> {
        &self.j
    }

    pub fn k(&self) -> &FrameEndomorphism<Gaussian> {
        &self.k
    }

    /// `[I, J, K]` in order.
    pub fn triple(&self) -> [&FrameEndomorphism<Gaussian>; 3] {
        [&self.i, &self.j, &self.k]
    }

    /// `L = aI + bJ + cK` for exact rationals with `a² + b² + c² = 1`.
    pub fn induced(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> Result<InducedComplexStructure> {
        if a * a + b * b + c * c != BigRational::one() {
            return Err(Error::InducedNorm);
        }
        let g = |x: &BigRational| Gaussian::real(x.clone());
        let l = self.i.scale(&g(a)).add(&self.j.scale(&g(b)))?.add(&self.k.scale(&g(c)))?;
        if l.compose(&l)? != FrameEndomorphism::identity(self.frame()).neg() {
            return Err(Error::QuaternionicIdentity("L^2 = -Id"));
        }
        Ok(InducedComplexStructure { coeffs: [a.clone(), b.clone(), c.clone()], l })
    }

    /// Floating-point `aI + bJ + cK`; the norm is checked to 1e−12.
    pub fn induced_float(&self, a: f64, b: f64, c: f64) -> Result<FrameEndomorphism<Complex64>> {
        if ((a * a + b * b + c * c) - 1.0).abs() > 1e-12 {
            return Err(Error::InducedNorm);
        }
        let f = |x: f64| Complex64::new(x, 0.0);
        let l = self.i.to_float().scale(&f(a)).add(&self.j.to_float().scale(&f(b)))?.add(&self.k.to_float().scale(&f(c)))?;
        let sq = l.compose(&l)?.add(&FrameEndomorphism::identity(self.frame()))?;
        if sq.matrix().max_abs() > 1e-12 {
            return Err(Error::QuaternionicIdentity("L^2 = -Id"));
        }
        Ok(l)
    }

    pub fn sl2(&self) -> Sl2Triple {
        Sl2Triple::new(self)
    }
}

/// `L = aI + bJ + cK` with its coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedComplexStructure {
    pub coeffs: [BigRational; 3],
    pub l: FrameEndomorphism<Gaussian>,
}

/// Hodge components of a form with respect to `L`, keyed by `(p, q)`.
///
/// The `(p, q)` part is the `(p − q)`-eigencomponent of the derivation
/// extension of `−√−1·Lᵀ`. With `require_exact`, float input is rejected.
pub fn bigrade<S: Scalar>(
    form: &Form<S>,
    l: &FrameEndomorphism<S>,
    require_exact: bool,
) -> Result<BTreeMap<(usize, usize), Form<S>>> {
    if require_exact && !S::EXACT {
        return Err(Error::NotExact);
    }
    check_frames(form.frame(), l.frame())?;
    let k = form.degree();
    let t = l.scale(&-S::imag_unit());
    let nodes: Vec<i64> = (0..=k).map(|q| k as i64 - 2 * q as i64).collect();
    let apply = |x: &Form<S>| t.derive_form(x);
    let parts = spectral::split(form, &nodes, &apply, S::EXACT)?
        .ok_or(Error::NotPureType { p: k, q: 0 })?;
    Ok(parts
        .into_iter()
        .enumerate()
        .map(|(q, part)| ((k - q, q), part))
        .collect())
}

/// `Some((p, q))` if the nonzero form has a single Hodge component.
pub fn pure_type(form: &Form<Gaussian>, l: &FrameEndomorphism<Gaussian>) -> Result<Option<(usize, usize)>> {
    let parts = bigrade(form, l, true)?;
    let mut nonzero = parts.iter().filter(|(_, f)| !f.is_zero());
    match (nonzero.next(), nonzero.next()) {
        (Some((pq, _)), None) => Ok(Some(*pq)),
        _ => Ok(None),
    }
}

/// Fails with [`Error::NotPureType`] unless `form` lies in `Λ^{p,q}_L`.
pub fn require_type(form: &Form<Gaussian>, l: &FrameEndomorphism<Gaussian>, p: usize, q: usize) -> Result<()> {
    if form.degree() != p + q {
        return Err(Error::NotPureType { p, q });
    }
    if form.is_zero() {
        return Ok(());
    }
    match pure_type(form, l)? {
        Some(pq) if pq == (p, q) => Ok(()),
        _ => Err(Error::NotPureType { p, q }),
    }
}

/// The triple `𝓗, 𝓧, 𝓨` acting on forms by derivations.
///
/// Each operator is stored as a frame endomorphism whose transpose is the
/// covector action: `h = −√−1·I`, `x = ½(√−1·K + J)`, `y = ½(√−1·K − J)`.
/// On forms `[𝓧,𝓨] = 𝓗`, `[𝓗,𝓧] = 2𝓧`, `[𝓗,𝓨] = −2𝓨`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Triple {
    pub h: FrameEndomorphism<Gaussian>,
    pub x: FrameEndomorphism<Gaussian>,
    pub y: FrameEndomorphism<Gaussian>,
    n: usize,
}

impl Sl2Triple {
    pub fn new(q: &QuaternionicStructure) -> Self {
        let i = Gaussian::i();
        let half = Gaussian::frac(1, 2);
        let ik = q.k.scale(&i);
        let h = q.i.scale(&-i.clone());
        let x = ik.add(&q.j).expect("same frame").scale(&half);
        let y = ik.sub(&q.j).expect("same frame").scale(&half);
        Sl2Triple { h, x, y, n: q.n }
    }

    pub fn frame(&self) -> &FrameRef {
        self.h.frame()
    }

    pub fn apply_h(&self, a: &Form<Gaussian>) -> Result<Form<Gaussian>> {
        self.h.derive_form(a)
    }

    pub fn apply_x(&self, a: &Form<Gaussian>) -> Result<Form<Gaussian>> {
        self.x.derive_form(a)
    }

    pub fn apply_y(&self, a: &Form<Gaussian>) -> Result<Form<Gaussian>> {
        self.y.derive_form(a)
    }

    /// `𝓨ᵏ a`.
    pub fn apply_y_pow(&self, a: &Form<Gaussian>, k: usize) -> Result<Form<Gaussian>> {
        self.y.derive_form_pow(a, k)
    }

    /// Dual action of `𝓨` on polyvectors: `⟨𝓨α, v⟩ = ⟨α, 𝓨v⟩`.
    pub fn apply_y_polyvector(&self, v: &Polyvector<Gaussian>) -> Result<Polyvector<Gaussian>> {
        self.y.derive_polyvector(v)
    }

    /// Casimir `𝓗² + 2(𝓧𝓨 + 𝓨𝓧)`, evaluated as `𝓗² + 2𝓗 + 4𝓨𝓧`.
    pub fn casimir(&self, a: &Form<Gaussian>) -> Result<Form<Gaussian>> {
        let ha = self.apply_h(a)?;
        let hha = self.apply_h(&ha)?;
        let yxa = self.apply_y(&self.apply_x(a)?)?;
        let mut out = hha;
        out.axpy(&Gaussian::int(2), &ha)?;
        out.axpy(&Gaussian::int(4), &yxa)?;
        Ok(out)
    }

    /// The three relations on the form `a`.
    pub fn check_form(&self, a: &Form<Gaussian>) -> Result<()> {
        let degree = a.degree();
        let (h, x, y) = (self.apply_h(a)?, self.apply_x(a)?, self.apply_y(a)?);
        let xy = self.apply_x(&y)?.try_sub(&self.apply_y(&x)?)?;
        if xy != h {
            return Err(Error::Sl2Relation { relation: "[X,Y] = H", degree });
        }
        let hx = self.apply_h(&x)?.try_sub(&self.apply_x(&h)?)?;
        if hx != x.scale(&Gaussian::int(2)) {
            return Err(Error::Sl2Relation { relation: "[H,X] = 2X", degree });
        }
        let hy = self.apply_h(&y)?.try_sub(&self.apply_y(&h)?)?;
        if hy != y.scale(&Gaussian::int(-2)) {
            return Err(Error::Sl2Relation { relation: "[H,Y] = -2Y", degree });
        }
        Ok(())
    }

    /// The relations on every monomial of degree `k`.
    pub fn check_degree(&self, k: usize) -> Result<()> {
        for b in self.frame().blades(k) {
            let a = Form::raw(self.frame().clone(), k, BTreeMap::from([(b, Gaussian::one())]));
            self.check_form(&a)?;
        }
        Ok(())
    }

    pub(crate) fn weight_nodes(&self, k: usize, max: usize) -> Vec<i64> {
        let _ = self.n;
        (0..=max).filter(|s| s % 2 == k % 2).map(|s| (s * (s + 2)) as i64).collect()
    }
}

/// Maximal weight `min(k, 4n − k)` of `Λ^k` for `ℍⁿ`.
pub fn max_weight(n: usize, k: usize) -> usize {
    k.min(4 * n - k.min(4 * n))
}

/// Isotypic decomposition of `Λ^k_ℂ` under the sl(2) action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDecomposition {
    pub degree: usize,
    /// `(weight, complex dimension of the isotypic component)`, nonzero only.
    pub components: Vec<(usize, usize)>,
}

impl WeightDecomposition {
    pub fn max_weight(&self) -> usize {
        self.components.iter().map(|c| c.0).max().unwrap_or(0)
    }

    /// Weight → dimension.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        self.components.iter().copied().collect()
    }

    /// Weight → number of irreducible copies.
    pub fn copies(&self) -> BTreeMap<usize, usize> {
        self.components.iter().map(|&(s, d)| (s, d / (s + 1))).collect()
    }
}

fn monomial(frame: &FrameRef, k: usize, b: Blade) -> Form<Gaussian> {
    Form::raw(frame.clone(), k, BTreeMap::from([(b, Gaussian::one())]))
}

/// Decomposes `Λ^k` by the Casimir spectrum.
///
/// Candidate weights run over all `s ≤ k` of the parity of `k`; each
/// component is certified as a Casimir eigenvector, and the maximal weight
/// found must equal `min(k, 4n − k)`.
pub fn weight_decompose(k: usize, q: &QuaternionicStructure) -> Result<WeightDecomposition> {
    let dim = q.dim();
    if k > dim {
        return Err(Error::DegreeOutOfRange { degree: k, max: dim });
    }
    let sl2 = q.sl2();
    let nodes = sl2.weight_nodes(k, k);
    let weights: Vec<usize> = (0..=k).filter(|s| s % 2 == k % 2).collect();
    let apply = |x: &Form<Gaussian>| sl2.casimir(x);
    let mut traces = alloc::vec![Gaussian::zero(); nodes.len()];
    for b in q.frame().blades(k) {
        let x = monomial(q.frame(), k, b);
        let parts = spectral::split(&x, &nodes, &apply, true)?.ok_or(Error::SpectrumOutsideWeights { degree: k })?;
        for (t, p) in traces.iter_mut().zip(&parts) {
            t.add_ref(&p.coeff(b));
        }
    }
    let mut components = Vec::new();
    for (s, t) in weights.iter().zip(traces) {
        let d = t
            .as_real()
            .filter(|r| r.is_integer())
            .and_then(|r| num_traits::ToPrimitive::to_usize(&r.to_integer()))
            .ok_or(Error::SpectrumOutsideWeights { degree: k })?;
        if d > 0 {
            components.push((*s, d));
        }
    }
    let out = WeightDecomposition { degree: k, components };
    let expected = max_weight(q.n(), k);
    if out.max_weight() != expected {
        return Err(Error::ClebschGordan { degree: k, expected, found: out.max_weight() });
    }
    Ok(out)
}

/// Component of `form` of weight `s`.
pub fn project_weight(form: &Form<Gaussian>, q: &QuaternionicStructure, s: usize) -> Result<Form<Gaussian>> {
    check_frames(form.frame(), q.frame())?;
    let k = form.degree();
    if s > k || s % 2 != k % 2 {
        return Form::zero(form.frame(), k);
    }
    let sl2 = q.sl2();
    let nodes = sl2.weight_nodes(k, k);
    let apply = |x: &Form<Gaussian>| sl2.casimir(x);
    let parts = spectral::split(form, &nodes, &apply, true)?.ok_or(Error::SpectrumOutsideWeights { degree: k })?;
    Ok(parts.into_iter().nth(s / 2).expect("node exists"))
}

/// `Π₊`: the component of maximal weight `min(k, 4n − k)`.
///
/// Only the weights allowed by the Clebsch–Gordan bound are interpolated;
/// every component is certified, so a violation of the bound is an error.
pub fn project_plus(form: &Form<Gaussian>, q: &QuaternionicStructure) -> Result<Form<Gaussian>> {
    check_frames(form.frame(), q.frame())?;
    let k = form.degree();
    let sl2 = q.sl2();
    let nodes = sl2.weight_nodes(k, max_weight(q.n(), k));
    let apply = |x: &Form<Gaussian>| sl2.casimir(x);
    let parts = spectral::split(form, &nodes, &apply, true)?.ok_or(Error::SpectrumOutsideWeights { degree: k })?;
    Ok(parts.into_iter().last().expect("at least one node"))
}

/// `𝓡_{p,q}` as the unnormalized power `𝓨^q` on `Λ^{p+q,0}_I`.
pub fn r_pq(form: &Form<Gaussian>, q_power: usize, q: &QuaternionicStructure) -> Result<Form<Gaussian>> {
    let k = form.degree();
    if q_power > k {
        return Err(Error::NotPureType { p: 0, q: q_power });
    }
    require_type(form, q.i(), k, 0)?;
    q.sl2().apply_y_pow(form, q_power)
}
