//! Spectral projectors of diagonalizable operators with known integer
//! eigenvalues, as Lagrange polynomials applied through Krylov sequences.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::exterior::Form;
use crate::scalar::Scalar;

/// Coefficients (low to high) of the Lagrange basis polynomials on `nodes`.
pub(crate) fn lagrange_basis<S: Scalar>(nodes: &[i64]) -> Vec<Vec<S>> {
    let n = nodes.len();
    (0..n)
        .map(|a| {
            let mut poly = vec![S::one()];
            let mut denom = 1i64;
            for (b, &nb) in nodes.iter().enumerate() {
                if a == b {
                    continue;
                }
                // poly *= (t − nb)
                let mut next = vec![S::zero(); poly.len() + 1];
                for (k, c) in poly.iter().enumerate() {
                    next[k + 1] += c.clone();
                    next[k] += -(c.mul_ref(&S::from_i64(nb)));
                }
                poly = next;
                denom *= nodes[a] - nb;
            }
            let inv = S::from_ratio(1, denom);
            poly.iter().map(|c| c.mul_ref(&inv)).collect()
        })
        .collect()
}

/// `x, Tx, …, T^{len−1}x`.
pub(crate) fn krylov<S: Scalar>(
    x: &Form<S>,
    len: usize,
    apply: &dyn Fn(&Form<S>) -> Result<Form<S>>,
) -> Result<Vec<Form<S>>> {
    let mut seq = Vec::with_capacity(len);
    seq.push(x.clone());
    for k in 1..len {
        let next = apply(&seq[k - 1])?;
        seq.push(next);
    }
    Ok(seq)
}

/// `p(T)x` from a precomputed Krylov sequence.
pub(crate) fn apply_poly<S: Scalar>(seq: &[Form<S>], poly: &[S]) -> Result<Form<S>> {
    let mut out = Form::zero(seq[0].frame(), seq[0].degree())?;
    for (c, v) in poly.iter().zip(seq) {
        if !c.is_zero() {
            out.axpy(c, v)?;
        }
    }
    Ok(out)
}

/// Components of `x` in the `T`-eigenspaces for each node. The sum of the
/// components is always `x`; `certify` additionally checks `T c = λ c`.
pub(crate) fn split<S: Scalar>(
    x: &Form<S>,
    nodes: &[i64],
    apply: &dyn Fn(&Form<S>) -> Result<Form<S>>,
    certify: bool,
) -> Result<Option<Vec<Form<S>>>> {
    let seq = krylov(x, nodes.len(), apply)?;
    let basis = lagrange_basis::<S>(nodes);
    let mut parts = Vec::with_capacity(nodes.len());
    for poly in &basis {
        parts.push(apply_poly(&seq, poly)?);
    }
    if certify {
        for (part, &lambda) in parts.iter().zip(nodes) {
            if part.is_zero() {
                continue;
            }
            let image = apply(part)?;
            if image != part.scale(&S::from_i64(lambda)) {
                return Ok(None);
            }
        }
    }
    Ok(Some(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gaussian;

    #[test]
    fn basis_polynomials_interpolate() {
        let nodes = [0i64, 3, 8];
        let basis = lagrange_basis::<Gaussian>(&nodes);
        for (a, poly) in basis.iter().enumerate() {
            for (b, &t) in nodes.iter().enumerate() {
                let mut v = Gaussian::zero();
                let mut p = Gaussian::one();
                for c in poly {
                    v += c.mul_ref(&p);
                    p = p.mul_ref(&Gaussian::int(t));
                }
                assert_eq!(v, Gaussian::int((a == b) as i64));
            }
        }
    }
}
