//! Exact computations with hypercomplex linear algebra and left-invariant
//! differential forms on Lie-algebra models.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure: values
//! are immutable once built and can be shared freely between threads.
//!
//! Layout, bottom-up:
//!
//! * [`scalar`], [`frame`], [`exterior`], [`endomorphism`]: Gaussian-rational
//!   and complex-float scalars, sparse graded exterior algebra over a fixed
//!   real frame, wedge/contraction/pairing and derivation extensions.
//! * [`quaternionic`]: quaternionic structures, induced complex structures,
//!   Hodge bigrading, the sl(2) triple, weight decomposition and `Π₊`.
//! * [`metric`], [`comass`]: hyperhermitian metrics, Kähler forms, the
//!   holomorphic volume form, the calibration `Ψ`, Lagrangian tests and
//!   floating-point comass sampling.
//! * [`lie`]: structure constants, the Chevalley–Eilenberg differential,
//!   Nijenhuis tensors, HKT/hyperkähler tests and invariant cohomology.
//! * [`affine`], [`double`]: étale-affine models of affine complex manifolds
//!   and their quaternionic doubles.
//! * [`builtin`]: the catalog of named models.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod affine;
pub mod builtin;
pub mod comass;
pub mod double;
pub mod endomorphism;
pub mod error;
pub mod exterior;
pub mod frame;
pub mod lie;
pub mod linalg;
pub mod metric;
pub mod quaternionic;
pub mod random;
pub mod scalar;
pub(crate) mod spectral;

pub use endomorphism::{FrameEndomorphism, Matrix};
pub use error::{Error, Result};
pub use exterior::{Covariant, Contravariant, Form, Graded, Polyvector};
pub use frame::{Blade, Frame, FrameRef};
pub use scalar::{Complex64, Gaussian, Scalar};
