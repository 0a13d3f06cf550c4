//! Weight multiplicities from a dense Casimir matrix built without the
//! derivation machinery: the action of `A` on `Λᵏ` is the linear-in-`t`
//! coefficient of the `k × k` minors of `Id + tA`, recovered by exact
//! interpolation at `t = 0, …, k`. Multiplicities are nullities of
//! `C − s(s+2)`.

use std::collections::BTreeMap;

use hypercal_core::frame::Blade;
use hypercal_core::linalg::{determinant, rank};
use hypercal_core::quaternionic::{max_weight, weight_decompose, QuaternionicStructure};
use hypercal_core::{Gaussian, Matrix, Scalar};

/// Coefficient of `t` in a polynomial of degree ≤ k sampled at `0..=k`.
fn linear_coefficient(values: &[Gaussian]) -> Gaussian {
    let k = values.len();
    let mut out = Gaussian::zero();
    for (a, v) in values.iter().enumerate() {
        // derivative at 0 of the Lagrange basis polynomial for node a
        let (mut num, mut den) = (Gaussian::zero(), Gaussian::one());
        for b in 0..k {
            if b != a {
                den = den * Gaussian::int(a as i64 - b as i64);
            }
        }
        for skip in 0..k {
            if skip == a {
                continue;
            }
            let mut prod = Gaussian::one();
            for b in 0..k {
                if b != a && b != skip {
                    prod = prod * Gaussian::int(-(b as i64));
                }
            }
            num += prod;
        }
        out += v.clone() * num / den;
    }
    out
}

/// Matrix of the derivation induced by `A` on `Λᵏ` of covectors, where the
/// covector `eⁱ` maps to `Σⱼ Aᵢⱼ eʲ`. Column `I` holds the image of `e^I`.
fn derivation(a: &Matrix<Gaussian>, k: usize) -> Matrix<Gaussian> {
    let dim = a.rows();
    let blades = Blade::all(dim, k);
    let samples: Vec<Matrix<Gaussian>> = (0..=k as i64)
        .map(|t| Matrix::identity(dim).add(&a.scale(&Gaussian::int(t))).unwrap())
        .collect();
    Matrix::from_fn(blades.len(), blades.len(), |r, c| {
        let rows = blades[c].to_vec();
        let cols = blades[r].to_vec();
        let values: Vec<Gaussian> = samples
            .iter()
            .map(|m| {
                let minor = Matrix::from_fn(k, k, |x, y| m.get(rows[x], cols[y]).clone());
                determinant(&minor).unwrap()
            })
            .collect();
        linear_coefficient(&values)
    })
}

fn oracle(n: usize, k: usize) -> BTreeMap<usize, usize> {
    let q = QuaternionicStructure::standard(n).unwrap();
    let sl2 = q.sl2();
    let (h, x, y) = (
        derivation(sl2.h.matrix(), k),
        derivation(sl2.x.matrix(), k),
        derivation(sl2.y.matrix(), k),
    );
    let c = h.mul(&h).unwrap().add(&h.scale(&Gaussian::int(2))).unwrap().add(&y.mul(&x).unwrap().scale(&Gaussian::int(4))).unwrap();
    let size = c.rows();
    let mut out = BTreeMap::new();
    for s in 0..=k {
        let shifted = c.sub(&Matrix::identity(size).scale(&Gaussian::int((s * (s + 2)) as i64))).unwrap();
        let nullity = size - rank(&shifted);
        if nullity > 0 {
            out.insert(s, nullity);
        }
    }
    assert_eq!(out.values().sum::<usize>(), size, "Casimir diagonalizable on degree {k}");
    out
}

#[test]
fn h1_all_degrees() {
    let q = QuaternionicStructure::standard(1).unwrap();
    for k in 0..=4 {
        let expected = oracle(1, k);
        assert_eq!(*expected.keys().max().unwrap(), max_weight(1, k));
        assert_eq!(weight_decompose(k, &q).unwrap().multiplicities(), expected, "degree {k}");
    }
}

#[test]
fn h2_all_degrees() {
    let q = QuaternionicStructure::standard(2).unwrap();
    for k in 0..=8 {
        let expected = oracle(2, k);
        assert_eq!(*expected.keys().max().unwrap(), max_weight(2, k));
        assert_eq!(weight_decompose(k, &q).unwrap().multiplicities(), expected, "degree {k}");
    }
}

#[test]
fn h1_degree_two() {
    assert_eq!(oracle(1, 2), BTreeMap::from([(0, 3), (2, 3)]));
    assert_eq!(oracle(1, 1), BTreeMap::from([(1, 4)]));
}
