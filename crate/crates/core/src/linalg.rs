//! Gaussian elimination over a [`Scalar`] field, dense and sparse.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::endomorphism::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn pivot_row<S: Scalar>(m: &Matrix<S>, col: usize, from: usize) -> Option<usize> {
    if S::EXACT {
        (from..m.rows()).find(|&r| !m.get(r, col).is_zero())
    } else {
        let best = (from..m.rows()).max_by(|&a, &b| {
            m.get(a, col).to_c64().norm().total_cmp(&m.get(b, col).to_c64().norm())
        })?;
        (!m.get(best, col).is_zero()).then_some(best)
    }
}

fn swap_rows<S: Scalar>(m: &mut Matrix<S>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let x = m.get(a, j).clone();
        let y = m.get(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

/// Row echelon form in place; returns the pivot columns and the sign of the
/// row permutation.
fn echelon<S: Scalar>(m: &mut Matrix<S>, reduce: bool) -> (Vec<usize>, bool) {
    let mut pivots = Vec::new();
    let mut odd = false;
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = pivot_row(m, c, r) else { continue };
        if p != r {
            swap_rows(m, p, r);
            odd = !odd;
        }
        let inv = m.get(r, c).inv().expect("pivot is nonzero");
        let start = if reduce { 0 } else { r + 1 };
        for i in start..m.rows() {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).mul_ref(&inv);
            for j in c..m.cols() {
                if m.get(r, j).is_zero() {
                    continue;
                }
                let v = m.get(i, j).clone() - f.mul_ref(m.get(r, j));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, odd)
}

pub fn determinant<S: Scalar>(m: &Matrix<S>) -> Result<S> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch { expected_rows: m.cols(), expected_cols: m.cols(), rows: m.rows(), cols: m.cols() });
    }
    let mut a = m.clone();
    let (pivots, odd) = echelon(&mut a, false);
    if pivots.len() < a.rows() {
        return Ok(S::zero());
    }
    let mut d = S::one();
    for i in 0..a.rows() {
        d = d.mul_ref(a.get(i, i));
    }
    Ok(if odd { -d } else { d })
}

pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    let mut a = m.clone();
    echelon(&mut a, false).0.len()
}

pub fn inverse<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<S>> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch { expected_rows: m.cols(), expected_cols: m.cols(), rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let aug = Matrix::from_blocks(m, &Matrix::identity(n), &Matrix::zeros(0, n), &Matrix::zeros(0, n))?;
    let mut a = aug;
    let (pivots, _) = echelon(&mut a, true);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Singular);
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        let inv = a.get(i, i).inv().expect("pivot is nonzero");
        a.get(i, n + j).mul_ref(&inv)
    }))
}

/// Basis of `{x : m x = 0}`.
pub fn kernel<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<S>> {
    let mut a = m.clone();
    let (pivots, _) = echelon(&mut a, true);
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = alloc::vec![S::zero(); a.cols()];
            x[f] = S::one();
            for (r, &p) in pivots.iter().enumerate() {
                let inv = a.get(r, p).inv().expect("pivot is nonzero");
                x[p] = -a.get(r, f).mul_ref(&inv);
            }
            x
        })
        .collect()
}

/// Leading principal minors `Δ₁, …, Δₙ`.
pub fn leading_minors<S: Scalar>(m: &Matrix<S>) -> Vec<S> {
    (1..=m.rows().min(m.cols()))
        .map(|k| determinant(&m.submatrix(0, k, 0, k)).expect("square"))
        .collect()
}

/// Sylvester's criterion. `Err(k)` names the first nonpositive minor
/// (1-based).
pub fn positive_definite<S: Scalar>(m: &Matrix<S>) -> core::result::Result<(), usize> {
    for (k, d) in leading_minors(m).iter().enumerate() {
        if !d.is_positive_real() {
            return Err(k + 1);
        }
    }
    Ok(())
}

/// Rank of a sparse matrix given as rows of `(column, value)`.
pub fn sparse_rank<S: Scalar>(rows: Vec<BTreeMap<usize, S>>) -> usize {
    // pivot column -> reduced row
    let mut basis: BTreeMap<usize, BTreeMap<usize, S>> = BTreeMap::new();
    let mut rows: Vec<_> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    rows.sort_by_key(BTreeMap::len);
    for mut row in rows {
        loop {
            let Some((lead, lv)) = row.iter().next().map(|(c, v)| (*c, v.clone())) else { break };
            let Some(prow) = basis.get(&lead) else {
                // normalize to a unit lead
                let inv = lv.inv().expect("stored entries are nonzero");
                for v in row.values_mut() {
                    *v = v.mul_ref(&inv);
                }
                basis.insert(lead, row);
                break;
            };
            let f = lv;
            for (c, pv) in prow {
                let delta = f.mul_ref(pv);
                let e = row.entry(*c).or_insert_with(S::zero);
                *e = e.clone() - delta;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
    }
    basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gaussian;

    fn m(r: usize, c: usize, e: &[i64]) -> Matrix<Gaussian> {
        Matrix::from_i64(r, c, e).unwrap()
    }

    #[test]
    fn det_and_inverse() {
        let a = m(3, 3, &[0, 2, 1, 1, 1, 0, 3, 0, 1]);
        assert_eq!(determinant(&a).unwrap(), Gaussian::int(-5));
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert_eq!(inverse(&m(2, 2, &[1, 2, 2, 4])), Err(Error::Singular));
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(rank(&a), 1);
        let k = kernel(&a);
        assert_eq!(k.len(), 2);
        for x in k {
            assert!(a.mul_vec(&x).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn sylvester() {
        assert_eq!(positive_definite(&m(2, 2, &[2, 1, 1, 2])), Ok(()));
        assert_eq!(positive_definite(&m(2, 2, &[1, 2, 2, 1])), Err(2));
    }

    #[test]
    fn sparse_matches_dense() {
        let a = m(3, 4, &[1, 0, 2, 0, 0, 1, 1, 0, 1, 1, 3, 0]);
        let rows = (0..3)
            .map(|i| (0..4).filter(|&j| !a.get(i, j).is_zero()).map(|j| (j, a.get(i, j).clone())).collect())
            .collect();
        assert_eq!(sparse_rank(rows), rank(&a));
    }
}
