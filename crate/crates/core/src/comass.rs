//! Floating-point estimate of the comass of a real form: the maximum of
//! `|α(f₁, …, f_k)|` over `G`-orthonormal `k`-frames.
//!
//! Frames are drawn from a seeded Gaussian and orthonormalized. The best
//! draws are then refined by a hill climb on the orthogonal group, since
//! plain sampling concentrates far from the maximum as the dimension grows.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::endomorphism::Matrix;
use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::metric::{check_positive, holomorphic_span, quaternionic_selection};
use crate::quaternionic::QuaternionicStructure;
use crate::random;
use crate::scalar::{Gaussian, Scalar, FLOAT_TOL};

/// Draws refined by hill climbing.
pub const REFINE_STARTS: usize = 8;
pub const REFINE_STEPS: usize = 4000;

#[derive(Clone, Debug, PartialEq)]
pub struct ComassReport {
    pub samples: usize,
    pub seed: u64,
    /// Best value after refinement.
    pub max: f64,
    /// Value on the reference holomorphic Lagrangian frame.
    pub lagrangian_value: f64,
    pub ratio: f64,
    /// Best value among the raw draws.
    pub random_max: f64,
    /// Degenerate draws that were redrawn.
    pub resampled: usize,
    /// The maximizing frame, one vector per row.
    pub argmax: Vec<Vec<f64>>,
}

/// A real form as `(indices, coefficient)` pairs.
struct DenseForm {
    degree: usize,
    terms: Vec<(Vec<usize>, f64)>,
}

impl DenseForm {
    fn new(form: &Form<Gaussian>) -> Result<Self> {
        let mut terms = Vec::new();
        for (b, c) in form.terms() {
            let z = c.to_c64();
            if z.im.abs() > FLOAT_TOL * (1.0 + z.re.abs()) {
                return Err(Error::NotReal("form"));
            }
            terms.push((b.to_vec(), z.re));
        }
        Ok(DenseForm { degree: form.degree(), terms })
    }

    fn evaluate(&self, frame: &[Vec<f64>]) -> f64 {
        let k = self.degree;
        let mut m = vec![0.0; k * k];
        let mut total = 0.0;
        for (idx, c) in &self.terms {
            for (r, &i) in idx.iter().enumerate() {
                for (col, f) in frame.iter().enumerate() {
                    m[r * k + col] = f[i];
                }
            }
            total += c * det(&mut m, k);
        }
        total
    }
}

/// Determinant by partial pivoting; destroys `m`.
fn det(m: &mut [f64], k: usize) -> f64 {
    let mut d = 1.0;
    for c in 0..k {
        let p = (c..k).max_by(|&a, &b| m[a * k + c].abs().total_cmp(&m[b * k + c].abs())).expect("nonempty");
        if m[p * k + c] == 0.0 {
            return 0.0;
        }
        if p != c {
            for j in 0..k {
                m.swap(p * k + j, c * k + j);
            }
            d = -d;
        }
        let pivot = m[c * k + c];
        d *= pivot;
        for r in c + 1..k {
            let f = m[r * k + c] / pivot;
            for j in c..k {
                m[r * k + j] -= f * m[c * k + j];
            }
        }
    }
    d
}

fn inner(g: &[Vec<f64>], x: &[f64], y: &[f64]) -> f64 {
    g.iter().zip(x).map(|(row, xi)| xi * row.iter().zip(y).map(|(a, b)| a * b).sum::<f64>()).sum()
}

/// `G`-Gram–Schmidt in order; `None` if a vector collapses.
fn orthonormalize(g: &[Vec<f64>], vs: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(vs.len());
    for v in vs {
        let scale = Float::sqrt(inner(g, v, v));
        let mut w = v.clone();
        for u in &out {
            let c = inner(g, &w, u);
            w.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
        }
        let norm = Float::sqrt(inner(g, &w, &w));
        if norm.is_nan() || norm <= 1e-8 * scale.max(1e-300) {
            return None;
        }
        w.iter_mut().for_each(|a| *a /= norm);
        out.push(w);
    }
    Some(out)
}

fn gaussian_frame(rng: &mut impl Rng, k: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..k).map(|_| (0..dim).map(|_| rng.sample(StandardNormal)).collect()).collect()
}

fn real_matrix(m: &Matrix<Gaussian>) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|c| c.to_c64().re).collect()).collect()
}

/// Orthonormal frame `(e₁, Ie₁, …, eₙ, Ieₙ)` of the standard holomorphic
/// Lagrangian, with `eᵢ` the quaternionic selection.
pub fn lagrangian_frame(q: &QuaternionicStructure, g: &Matrix<Gaussian>) -> Result<Vec<Vec<f64>>> {
    let sel = quaternionic_selection(q)?;
    let hol = holomorphic_span(&sel, q)?;
    let mut vs = Vec::new();
    for v in &hol {
        let x = v.try_add(&v.conj())?;
        let y = v.try_sub(&v.conj())?.scale(&Gaussian::i());
        vs.push(x.components().iter().map(|c| c.to_c64().re).collect());
        vs.push(y.components().iter().map(|c| c.to_c64().re).collect());
    }
    orthonormalize(&real_matrix(g), &vs).ok_or(Error::DependentVectors)
}

fn climb(form: &DenseForm, g: &[Vec<f64>], start: Vec<Vec<f64>>, rng: &mut impl Rng) -> (f64, Vec<Vec<f64>>) {
    let k = start.len();
    let dim = start[0].len();
    let mut best = start;
    let mut value = form.evaluate(&best).abs();
    let mut sigma = 0.1;
    for _ in 0..REFINE_STEPS {
        if sigma < 1e-10 {
            break;
        }
        let noise = gaussian_frame(rng, k, dim);
        let trial: Vec<Vec<f64>> =
            best.iter().zip(&noise).map(|(f, n)| f.iter().zip(n).map(|(a, b)| a + sigma * b).collect()).collect();
        let Some(trial) = orthonormalize(g, &trial) else { continue };
        let v = form.evaluate(&trial).abs();
        if v > value {
            value = v;
            best = trial;
            sigma *= 1.5;
        } else {
            sigma *= 0.85;
        }
    }
    (value, best)
}

/// Sample `samples` frames from stream `(seed, 0)`, then refine the best
/// [`REFINE_STARTS`] draws with streams `(seed, 1 + i)`.
pub fn comass_sample(
    form: &Form<Gaussian>,
    g: &Matrix<Gaussian>,
    q: &QuaternionicStructure,
    samples: usize,
    seed: u64,
) -> Result<ComassReport> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    check_positive(g)?;
    let dense = DenseForm::new(form)?;
    let gf = real_matrix(g);
    let k = form.degree();
    let dim = q.dim();
    let lagrangian_value = dense.evaluate(&lagrangian_frame(q, g)?).abs();
    let mut rng = random::stream(seed, 0);
    let mut resampled = 0;
    let mut top: Vec<(f64, Vec<Vec<f64>>)> = Vec::with_capacity(REFINE_STARTS + 1);
    for _ in 0..samples {
        let frame = loop {
            match orthonormalize(&gf, &gaussian_frame(&mut rng, k, dim)) {
                Some(f) => break f,
                None => resampled += 1,
            }
        };
        let v = dense.evaluate(&frame).abs();
        if top.len() < REFINE_STARTS || v > top[top.len() - 1].0 {
            let at = top.partition_point(|(x, _)| *x >= v);
            top.insert(at, (v, frame));
            top.truncate(REFINE_STARTS);
        }
    }
    let random_max = top[0].0;
    let mut best = top[0].clone();
    for (i, (_, start)) in top.into_iter().enumerate() {
        let mut r = random::stream(seed, 1 + i as u64);
        let (v, f) = climb(&dense, &gf, start, &mut r);
        if v > best.0 {
            best = (v, f);
        }
    }
    let ratio = if lagrangian_value > 0.0 { best.0 / lagrangian_value } else { f64::INFINITY };
    Ok(ComassReport { samples, seed, max: best.0, lagrangian_value, ratio, random_max, resampled, argmax: best.1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{psi, standard_volume_form, HyperhermitianMetric};

    fn flat_psi(n: usize) -> (QuaternionicStructure, Form<Gaussian>) {
        let q = QuaternionicStructure::standard(n).unwrap();
        let vol = standard_volume_form(&q, &quaternionic_selection(&q).unwrap()).unwrap();
        let p = psi(&vol, &q).unwrap().psi;
        (q, p)
    }

    #[test]
    fn determinant_matches_exact() {
        let mut m = [0.0, 2.0, 1.0, 1.0, 1.0, 0.0, 3.0, 0.0, 1.0];
        assert!((det(&mut m, 3) + 5.0).abs() < 1e-12);
    }

    #[test]
    fn h1_reaches_lagrangian_value() {
        let (q, p) = flat_psi(1);
        let g = HyperhermitianMetric::standard(&q).unwrap();
        let r = comass_sample(&p, g.matrix(), &q, 2000, 3).unwrap();
        assert!((r.lagrangian_value - 2.0).abs() < 1e-12);
        assert!(r.max <= r.lagrangian_value * (1.0 + 1e-9));
        assert!(r.ratio > 0.99);
        let doubled = comass_sample(&p.scale(&Gaussian::int(2)), g.matrix(), &q, 2000, 3).unwrap();
        assert!((doubled.max - 2.0 * r.max).abs() < 1e-9);
        assert_eq!(comass_sample(&p, g.matrix(), &q, 0, 3), Err(Error::NoSamples));
    }
}
