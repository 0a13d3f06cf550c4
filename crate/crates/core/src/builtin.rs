//! Named models. Bases use real coordinates `(Re w₁, Im w₁, Re w₂, …)` and
//! the standard complex structure `b₂ᵢ ↦ b₂ᵢ₊₁`.
//!
//! * `kodaira`: `(w, z) ↦ (w₁+z₁, w₂ − √−1·w̄₁z₁ + z₂)`, giving `[b₀, b₁] = 2b₂`.
//! * `iwasawa`: `(w, z) ↦ (w₁+z₁, w₂+z₂, w₃+z₃+w₁z₂)`, giving
//!   `[b₀,b₂] = b₄`, `[b₀,b₃] = b₅`, `[b₁,b₂] = b₅`, `[b₁,b₃] = −b₄`.
//! * `hopf`: `ℍ = ℝ ⊕ su(2)` with `[i, j] = 2k` and `I, J, K` right
//!   multiplication by `i, j, −k`. Its volume form is not closed.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::affine::{standard_complex, AffineComplexModel};
use crate::double::{build_double, fibration_metric, DoubleModel};
use crate::endomorphism::{FrameEndomorphism, Matrix};
use crate::error::{Error, Result};
use crate::frame::{Frame, FrameRef};
use crate::lie::LieModel;
use crate::metric::HyperhermitianMetric;
use crate::quaternionic::QuaternionicStructure;
use crate::scalar::Gaussian;

#[derive(Clone, Debug, PartialEq)]
pub enum Builtin {
    Lie(LieModel),
    Affine(AffineComplexModel),
    Double(DoubleModel),
}

pub const BUILTIN_NAMES: &[&str] = &[
    "flat:1",
    "flat:2",
    "kodaira",
    "iwasawa",
    "kodaira_double",
    "iwasawa_double",
    "hopf",
    "flat_base:1",
    "flat_base:2",
    "flat_double:1",
    "flat_double:2",
];

fn labelled(prefix: &str, dim: usize) -> Result<FrameRef> {
    Frame::new((0..dim).map(|i| format!("{prefix}{i}")).collect())
}

fn sparse(dim: usize, entries: &[(usize, usize, i64)]) -> Matrix<Gaussian> {
    let mut m = Matrix::zeros(dim, dim);
    for &(r, c, v) in entries {
        m.set(r, c, Gaussian::int(v));
    }
    m
}

/// Abelian `ℍⁿ` with the standard structure and metric.
pub fn flat(n: usize) -> Result<LieModel> {
    let q = QuaternionicStructure::standard(n)?;
    let g = HyperhermitianMetric::standard(&q)?;
    LieModel::abelian(format!("flat:{n}"), q.frame()).with_structure(q)?.with_metric(g)
}

fn affine(name: &str, dim: usize, brackets: &[(usize, usize, usize, i64)], rho: &[(usize, usize, usize, i64)]) -> Result<AffineComplexModel> {
    let frame = labelled("b", dim)?;
    let base = LieModel::new(name, &frame, brackets.iter().map(|&(i, j, k, c)| (i, j, k, Gaussian::int(c))))?;
    let i = FrameEndomorphism::new(&frame, standard_complex(dim / 2))?;
    let mut mats: Vec<Vec<(usize, usize, i64)>> = alloc::vec![Vec::new(); dim];
    for &(x, r, c, v) in rho {
        mats[x].push((r, c, v));
    }
    let rho = mats.iter().map(|e| sparse(dim, e)).collect();
    Ok(AffineComplexModel::new(base, i, rho, Matrix::identity(dim), true))
}

/// `ρ(x)z = (0, −√−1·x̄₁z₁)`, `t = Id`.
pub fn kodaira() -> Result<AffineComplexModel> {
    affine("kodaira", 4, &[(0, 1, 2, 2)], &[(0, 3, 0, -1), (0, 2, 1, 1), (1, 2, 0, -1), (1, 3, 1, -1)])
}

/// `ρ(x)z = (0, 0, x₁z₂)`, `t = Id`.
pub fn iwasawa() -> Result<AffineComplexModel> {
    affine(
        "iwasawa",
        6,
        &[(0, 2, 4, 1), (0, 3, 5, 1), (1, 2, 5, 1), (1, 3, 4, -1)],
        &[(0, 4, 2, 1), (0, 5, 3, 1), (1, 5, 2, 1), (1, 4, 3, -1)],
    )
}

/// The double with `h = Id ⊕ Id` attached.
pub fn double_with_metric(a: &AffineComplexModel) -> Result<DoubleModel> {
    let mut d = build_double(a)?;
    let h = fibration_metric(&d, &Matrix::identity(a.dim()))?;
    d.model = d.model.with_metric(h)?;
    Ok(d)
}

pub fn hopf() -> Result<LieModel> {
    let frame = Frame::new(["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect())?;
    let (i, j, k) = (1, 2, 3);
    let entries = [(i, j, k, 2), (j, k, i, 2), (i, k, j, -2)].map(|(a, b, c, v)| (a, b, c, Gaussian::int(v)));
    // images of (1, i, j, k) as (row, column, sign)
    let ri = sparse(4, &[(1, 0, 1), (0, 1, -1), (3, 2, -1), (2, 3, 1)]);
    let rj = sparse(4, &[(2, 0, 1), (3, 1, 1), (0, 2, -1), (1, 3, -1)]);
    let q = QuaternionicStructure::new(
        FrameEndomorphism::new(&frame, ri.clone())?,
        FrameEndomorphism::new(&frame, rj.clone())?,
        FrameEndomorphism::new(&frame, ri.mul(&rj)?)?,
    )?;
    let g = HyperhermitianMetric::standard(&q)?;
    LieModel::new("hopf", &frame, entries)?.with_structure(q)?.with_metric(g)
}

fn parse_n(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok().filter(|&n| (1..=4).contains(&n))
}

pub fn builtin(name: &str) -> Result<Builtin> {
    let unknown = || Error::UnknownBuiltin(String::from(name));
    Ok(match name {
        "kodaira" | "kodaira_base" => Builtin::Affine(kodaira()?),
        "iwasawa" | "iwasawa_base" => Builtin::Affine(iwasawa()?),
        "kodaira_double" => Builtin::Double(double_with_metric(&kodaira()?)?),
        "iwasawa_double" => Builtin::Double(double_with_metric(&iwasawa()?)?),
        "hopf" => Builtin::Lie(hopf()?),
        _ => {
            if let Some(n) = parse_n(name, "flat_base:") {
                Builtin::Affine(AffineComplexModel::flat(n)?)
            } else if let Some(n) = parse_n(name, "flat_double:") {
                Builtin::Double(double_with_metric(&AffineComplexModel::flat(n)?)?)
            } else if let Some(n) = parse_n(name, "flat:") {
                Builtin::Lie(flat(n)?)
            } else {
                return Err(unknown());
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::validate_affine;
    use crate::lie::{ce_cohomology, nijenhuis};

    #[test]
    fn catalog_builds() {
        for name in BUILTIN_NAMES {
            builtin(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert_eq!(builtin("flat:0"), Err(Error::UnknownBuiltin("flat:0".into())));
    }

    #[test]
    fn bases_are_affine() {
        assert_eq!(validate_affine(&kodaira().unwrap()).unwrap().n, 2);
        assert_eq!(validate_affine(&iwasawa().unwrap()).unwrap().n, 3);
        assert_eq!(ce_cohomology(&kodaira().unwrap().base, 1).unwrap(), 3);
        assert_eq!(ce_cohomology(&iwasawa().unwrap().base, 1).unwrap(), 4);
    }

    #[test]
    fn hopf_is_hypercomplex() {
        let m = hopf().unwrap();
        let q = m.structure().unwrap();
        for l in q.triple() {
            assert!(nijenhuis(&m, l, "L").unwrap().is_zero());
        }
    }
}
