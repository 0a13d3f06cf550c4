//! Real Lie algebras given by exact structure constants, their
//! Chevalley–Eilenberg complex, integrability and HKT tests.
//!
//! Conventions: `[xᵢ, xⱼ] = Σₖ cᵏᵢⱼ xₖ`, `(dα)(x, y) = −α([x, y])`, so
//! `deᵏ = −Σ_{i<j} cᵏᵢⱼ eⁱ∧eʲ`, and
//! `N(x, y) = [x, y] + L[Lx, y] + L[x, Ly] − [Lx, Ly]`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::endomorphism::{FrameEndomorphism, Matrix};
use crate::error::{Error, Result};
use crate::exterior::{basis_vector, Form, Polyvector};
use crate::frame::{binomial, check_frames, Blade, FrameRef};
use crate::linalg;
use crate::metric::{kahler_forms, HyperhermitianMetric};
use crate::quaternionic::{bigrade, project_weight, QuaternionicStructure};
use crate::scalar::{Gaussian, Scalar};

/// A validated real Lie algebra, optionally carrying a quaternionic
/// structure and a hyperhermitian metric on the same frame.
#[derive(Clone, Debug, PartialEq)]
pub struct LieModel {
    name: String,
    frame: FrameRef,
    brackets: BTreeMap<(usize, usize), Polyvector<Gaussian>>,
    de: Vec<Form<Gaussian>>,
    lcs: Vec<usize>,
    structure: Option<QuaternionicStructure>,
    metric: Option<HyperhermitianMetric>,
    lattice: bool,
}

fn collect_brackets(
    frame: &FrameRef,
    entries: impl IntoIterator<Item = (usize, usize, usize, Gaussian)>,
) -> Result<BTreeMap<(usize, usize), Polyvector<Gaussian>>> {
    let dim = frame.dim();
    let mut out: BTreeMap<(usize, usize), Polyvector<Gaussian>> = BTreeMap::new();
    for (i, j, k, c) in entries {
        for index in [i, j, k] {
            if index >= dim {
                return Err(Error::IndexOutOfRange { index, dim });
            }
        }
        if i >= j {
            return Err(Error::BracketOrder { i, j });
        }
        if !c.is_real() {
            return Err(Error::NotReal("structure constant"));
        }
        let term = Polyvector::monomial(frame, &[k], c)?;
        let slot = out.entry((i, j)).or_insert_with(|| Polyvector::zero(frame, 1).expect("degree 1"));
        *slot = slot.try_add(&term)?;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn bracket_with(
    brackets: &BTreeMap<(usize, usize), Polyvector<Gaussian>>,
    x: &Polyvector<Gaussian>,
    y: &Polyvector<Gaussian>,
) -> Result<Polyvector<Gaussian>> {
    check_frames(x.frame(), y.frame())?;
    let xs = x.components();
    let ys = y.components();
    let mut out = Polyvector::zero(x.frame(), 1)?;
    for (&(i, j), b) in brackets {
        let c = xs[i].mul_ref(&ys[j]) - xs[j].mul_ref(&ys[i]);
        if !c.is_zero() {
            out.axpy(&c, b)?;
        }
    }
    Ok(out)
}

fn differentials(frame: &FrameRef, brackets: &BTreeMap<(usize, usize), Polyvector<Gaussian>>) -> Result<Vec<Form<Gaussian>>> {
    let mut de: Vec<Form<Gaussian>> = (0..frame.dim()).map(|_| Form::zero(frame, 2)).collect::<Result<_>>()?;
    for (&(i, j), b) in brackets {
        for (kb, c) in b.terms() {
            let k = kb.indices().next().expect("degree 1");
            let term = Form::monomial(frame, &[i, j], -c.clone())?;
            de[k] = de[k].try_add(&term)?;
        }
    }
    Ok(de)
}

/// `d` of a form from the differentials of the dual generators.
fn apply_d(de: &[Form<Gaussian>], form: &Form<Gaussian>) -> Result<Form<Gaussian>> {
    let frame = form.frame();
    let mut out = Form::zero(frame, form.degree() + 1)?;
    for (b, c) in form.terms() {
        for i in b.indices() {
            let rest = Blade(b.0 & !(1 << i));
            let outer = if b.count_below(i) % 2 == 0 { c.clone() } else { -c.clone() };
            for (p, a) in de[i].terms() {
                if let Some(sign) = p.wedge_sign(rest) {
                    let v = outer.mul_ref(a);
                    out.add_term(Blade(p.0 | rest.0), if sign > 0 { v } else { -v });
                }
            }
        }
    }
    Ok(out)
}

/// Matrices of `d: Λᵏ → Λᵏ⁺¹`, one sparse column per basis blade.
#[derive(Clone, Debug, PartialEq)]
pub struct CEOperator {
    frame: FrameRef,
    de: Vec<Form<Gaussian>>,
    columns: Vec<Vec<BTreeMap<usize, Gaussian>>>,
}

impl CEOperator {
    /// Builds `d` straight from structure constants and verifies `d² = 0`
    /// on every basis blade. This is where a Jacobi failure shows up when
    /// the constants have not been validated.
    pub fn from_brackets(
        frame: &FrameRef,
        entries: impl IntoIterator<Item = (usize, usize, usize, Gaussian)>,
    ) -> Result<Self> {
        let brackets = collect_brackets(frame, entries)?;
        Self::build(frame, differentials(frame, &brackets)?)
    }

    fn build(frame: &FrameRef, de: Vec<Form<Gaussian>>) -> Result<Self> {
        let dim = frame.dim();
        let mut columns = Vec::with_capacity(dim + 1);
        for k in 0..=dim {
            let target: BTreeMap<Blade, usize> =
                Blade::all(dim, k + 1).into_iter().enumerate().map(|(r, b)| (b, r)).collect();
            let mut cols = Vec::new();
            for b in Blade::all(dim, k) {
                if k == dim {
                    cols.push(BTreeMap::new());
                    continue;
                }
                let basis = Form::raw(frame.clone(), k, BTreeMap::from([(b, Gaussian::one())]));
                let db = apply_d(&de, &basis)?;
                if k + 2 <= dim && !apply_d(&de, &db)?.is_zero() {
                    return Err(Error::DSquared { degree: k, blade: b.0 });
                }
                cols.push(db.terms().map(|(t, c)| (target[&t], c.clone())).collect());
            }
            columns.push(cols);
        }
        Ok(CEOperator { frame: frame.clone(), de, columns })
    }

    pub fn frame(&self) -> &FrameRef {
        &self.frame
    }

    pub fn apply(&self, form: &Form<Gaussian>) -> Result<Form<Gaussian>> {
        check_frames(form.frame(), &self.frame)?;
        apply_d(&self.de, form)
    }

    /// Rank of `d` on `Λᵏ`.
    pub fn rank(&self, k: usize) -> Result<usize> {
        let cols = self.columns.get(k).ok_or(Error::DegreeOutOfRange { degree: k, max: self.frame.dim() })?;
        Ok(linalg::sparse_rank(cols.clone()))
    }

    /// `bₖ = C(dim, k) − rank dₖ − rank dₖ₋₁`.
    pub fn betti(&self, k: usize) -> Result<usize> {
        let dim = self.frame.dim();
        if k > dim {
            return Err(Error::DegreeOutOfRange { degree: k, max: dim });
        }
        let below = if k == 0 { 0 } else { self.rank(k - 1)? };
        Ok(binomial(dim, k) - self.rank(k)? - below)
    }

    /// The matrix of `d` on `Λᵏ` in lexicographic blade order.
    pub fn matrix(&self, k: usize) -> Result<Matrix<Gaussian>> {
        let dim = self.frame.dim();
        let cols = self.columns.get(k).ok_or(Error::DegreeOutOfRange { degree: k, max: dim })?;
        let mut m = Matrix::zeros(binomial(dim, k + 1), cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (&r, v) in col {
                m.set(r, c, v.clone());
            }
        }
        Ok(m)
    }
}

/// Where the Nijenhuis tensor of `L` first fails to vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct NijenhuisReport {
    pub structure: String,
    pub witness: Option<(usize, usize)>,
    /// `N(xᵢ, xⱼ)` at the witness.
    pub value: Option<Polyvector<Gaussian>>,
}

impl NijenhuisReport {
    pub fn is_zero(&self) -> bool {
        self.witness.is_none()
    }
}

/// Outcome of [`hkt_test`].
#[derive(Clone, Debug, PartialEq)]
pub struct HktReport {
    pub d_big_omega: Form<Gaussian>,
    /// Hodge components of `dΩ_I` under `I`.
    pub d_big_omega_parts: BTreeMap<(usize, usize), Form<Gaussian>>,
    /// `∂Ω_I`, the `(3,0)` component.
    pub del_big_omega: Form<Gaussian>,
    /// `d₊ω_I`, the weight-3 component of `dω_I`. This is `Π₊(dω_I)` for
    /// `n ≥ 2`; for `n = 1` there is no weight 3 in degree 3 and it vanishes.
    pub d_plus_omega: Form<Gaussian>,
    pub hkt: bool,
    pub hyperkahler: bool,
}

impl HktReport {
    /// Number of nonzero coefficients of `∂Ω_I`.
    pub fn defect(&self) -> usize {
        self.del_big_omega.len()
    }
}

impl LieModel {
    pub fn new(
        name: impl Into<String>,
        frame: &FrameRef,
        entries: impl IntoIterator<Item = (usize, usize, usize, Gaussian)>,
    ) -> Result<Self> {
        let brackets = collect_brackets(frame, entries)?;
        let dim = frame.dim();
        let basis: Vec<Polyvector<Gaussian>> = (0..dim).map(|i| basis_vector(frame, i)).collect::<Result<_>>()?;
        for i in 0..dim {
            for j in i + 1..dim {
                let xy = bracket_with(&brackets, &basis[i], &basis[j])?;
                for k in j + 1..dim {
                    let a = bracket_with(&brackets, &xy, &basis[k])?;
                    let b = bracket_with(&brackets, &bracket_with(&brackets, &basis[j], &basis[k])?, &basis[i])?;
                    let c = bracket_with(&brackets, &bracket_with(&brackets, &basis[k], &basis[i])?, &basis[j])?;
                    if !a.try_add(&b)?.try_add(&c)?.is_zero() {
                        return Err(Error::Jacobi { i, j, k });
                    }
                }
            }
        }
        let de = differentials(frame, &brackets)?;
        let lcs = lower_central_series(&brackets, &basis)?;
        Ok(LieModel {
            name: name.into(),
            frame: frame.clone(),
            brackets,
            de,
            lcs,
            structure: None,
            metric: None,
            lattice: false,
        })
    }

    pub fn abelian(name: impl Into<String>, frame: &FrameRef) -> Self {
        Self::new(name, frame, []).expect("abelian algebra is valid")
    }

    pub fn with_structure(mut self, q: QuaternionicStructure) -> Result<Self> {
        check_frames(q.frame(), &self.frame)?;
        self.structure = Some(q);
        self.metric = None;
        Ok(self)
    }

    /// Attaches a metric; it must be hyperhermitian for the attached structure.
    pub fn with_metric(mut self, g: HyperhermitianMetric) -> Result<Self> {
        let q = self.structure.as_ref().ok_or(Error::MissingStructure)?;
        let g = HyperhermitianMetric::new(q, g.matrix().clone())?;
        self.metric = Some(g);
        Ok(self)
    }

    pub fn with_lattice(mut self, lattice: bool) -> Self {
        self.lattice = lattice;
        self
    }

    /// Fails unless `declared` matches the computed lower central series.
    pub fn check_nilpotent(&self, declared: bool) -> Result<()> {
        if declared != self.is_nilpotent() {
            return Err(Error::NilpotencyMismatch { declared });
        }
        Ok(())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn frame(&self) -> &FrameRef {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn structure(&self) -> Option<&QuaternionicStructure> {
        self.structure.as_ref()
    }

    pub fn metric(&self) -> Option<&HyperhermitianMetric> {
        self.metric.as_ref()
    }

    pub fn lattice(&self) -> bool {
        self.lattice
    }

    /// Nonzero structure constants `(i, j, k, cᵏᵢⱼ)` with `i < j`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Gaussian)> {
        let mut out = Vec::new();
        for (&(i, j), b) in &self.brackets {
            for (kb, c) in b.terms() {
                out.push((i, j, kb.indices().next().expect("degree 1"), c.clone()));
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn bracket(&self, x: &Polyvector<Gaussian>, y: &Polyvector<Gaussian>) -> Result<Polyvector<Gaussian>> {
        check_frames(x.frame(), &self.frame)?;
        bracket_with(&self.brackets, x, y)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Result<Polyvector<Gaussian>> {
        self.bracket(&basis_vector(&self.frame, i)?, &basis_vector(&self.frame, j)?)
    }

    pub fn ad(&self, x: &Polyvector<Gaussian>) -> Result<FrameEndomorphism<Gaussian>> {
        let dim = self.dim();
        let mut cols = Vec::with_capacity(dim);
        for j in 0..dim {
            cols.push(self.bracket(x, &basis_vector(&self.frame, j)?)?.components());
        }
        FrameEndomorphism::new(&self.frame, Matrix::from_rows(cols)?.transpose())
    }

    /// `deᵏ`.
    pub fn de(&self, k: usize) -> &Form<Gaussian> {
        &self.de[k]
    }

    pub fn d(&self, form: &Form<Gaussian>) -> Result<Form<Gaussian>> {
        check_frames(form.frame(), &self.frame)?;
        apply_d(&self.de, form)
    }

    /// `dα = 0`; top-degree forms are closed trivially.
    pub fn is_closed(&self, form: &Form<Gaussian>) -> Result<bool> {
        check_frames(form.frame(), &self.frame)?;
        if form.degree() >= self.dim() {
            return Ok(true);
        }
        Ok(apply_d(&self.de, form)?.is_zero())
    }

    /// Dimensions of `g = g¹ ⊃ g² = [g, g] ⊃ ⋯` until the series stabilizes.
    pub fn lower_central_series(&self) -> &[usize] {
        &self.lcs
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lcs.last() == Some(&0)
    }
}

fn lower_central_series(
    brackets: &BTreeMap<(usize, usize), Polyvector<Gaussian>>,
    basis: &[Polyvector<Gaussian>],
) -> Result<Vec<usize>> {
    let mut dims = alloc::vec![basis.len()];
    let mut current: Vec<Polyvector<Gaussian>> = basis.to_vec();
    loop {
        let mut next = Vec::new();
        for x in basis {
            for y in &current {
                let v = bracket_with(brackets, x, y)?;
                if !v.is_zero() {
                    next.push(v);
                }
            }
        }
        let dim = if next.is_empty() {
            0
        } else {
            linalg::rank(&Matrix::from_rows(next.iter().map(|v| v.components()).collect())?)
        };
        let last = *dims.last().expect("nonempty");
        dims.push(dim);
        if dim == 0 || dim == last {
            return Ok(dims);
        }
        current = next;
    }
}

/// The CE complex of a validated model; `d² = 0` is re-verified.
pub fn ce_differential(m: &LieModel) -> Result<CEOperator> {
    CEOperator::build(&m.frame, m.de.clone())
}

/// The invariant Betti number `bₖ`.
pub fn ce_cohomology(m: &LieModel, k: usize) -> Result<usize> {
    if k > m.dim() {
        return Err(Error::DegreeOutOfRange { degree: k, max: m.dim() });
    }
    ce_differential(m)?.betti(k)
}

pub fn nijenhuis(m: &LieModel, l: &FrameEndomorphism<Gaussian>, structure: &str) -> Result<NijenhuisReport> {
    check_frames(l.frame(), &m.frame)?;
    let sq = l.compose(l)?;
    if sq != FrameEndomorphism::identity(&m.frame).neg() {
        return Err(Error::NotAlmostComplex("structure"));
    }
    let dim = m.dim();
    let basis: Vec<Polyvector<Gaussian>> = (0..dim).map(|i| basis_vector(&m.frame, i)).collect::<Result<_>>()?;
    let images: Vec<Polyvector<Gaussian>> = basis.iter().map(|v| l.apply(v)).collect::<Result<_>>()?;
    for i in 0..dim {
        for j in i + 1..dim {
            let (x, y, lx, ly) = (&basis[i], &basis[j], &images[i], &images[j]);
            let n = m
                .bracket(x, y)?
                .try_add(&l.apply(&m.bracket(lx, y)?)?)?
                .try_add(&l.apply(&m.bracket(x, ly)?)?)?
                .try_sub(&m.bracket(lx, ly)?)?;
            if !n.is_zero() {
                return Ok(NijenhuisReport { structure: structure.into(), witness: Some((i, j)), value: Some(n) });
            }
        }
    }
    Ok(NijenhuisReport { structure: structure.into(), witness: None, value: None })
}

/// Nijenhuis vanishing as a `Result`, naming the structure on failure.
pub fn require_integrable(m: &LieModel, l: &FrameEndomorphism<Gaussian>, structure: &'static str) -> Result<()> {
    match nijenhuis(m, l, structure)?.witness {
        None => Ok(()),
        Some((i, j)) => Err(Error::NotIntegrable { structure, i, j }),
    }
}

/// HKT test with the model's own structure and metric.
pub fn hkt_test(m: &LieModel) -> Result<HktReport> {
    let q = m.structure().ok_or(Error::MissingStructure)?;
    let g = m.metric().ok_or(Error::MissingMetric)?;
    hkt_test_with(m, q, g)
}

/// Computes `∂Ω_I` and `d₊ω_I` and fails if their vanishing disagrees.
pub fn hkt_test_with(m: &LieModel, q: &QuaternionicStructure, g: &HyperhermitianMetric) -> Result<HktReport> {
    check_frames(q.frame(), &m.frame)?;
    require_integrable(m, q.i(), "I")?;
    let forms = kahler_forms(g, q)?;
    let d_big_omega = m.d(&forms.big_omega_i)?;
    let parts = bigrade(&d_big_omega, q.i(), true)?;
    let del_big_omega = parts.get(&(3, 0)).cloned().unwrap_or(Form::zero(&m.frame, 3)?);
    let d_plus_omega = project_weight(&m.d(&forms.omega_i)?, q, 3)?;
    let hkt = del_big_omega.is_zero();
    if hkt != d_plus_omega.is_zero() {
        return Err(Error::HktCriteriaDisagree { del: hkt, d_plus: d_plus_omega.is_zero() });
    }
    let hyperkahler = d_big_omega.is_zero();
    if hyperkahler && !hkt {
        return Err(Error::HktCriteriaDisagree { del: hkt, d_plus: true });
    }
    Ok(HktReport { d_big_omega, d_big_omega_parts: parts, del_big_omega, d_plus_omega, hkt, hyperkahler })
}

pub fn hyperkahler_test(m: &LieModel) -> Result<bool> {
    Ok(hkt_test(m)?.hyperkahler)
}
