use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the core crate.
///
/// Identity failures carry the name of the identity and, where one exists, a
/// witness (basis indices) so reports can point at the offending entry.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands live on different frames")]
    FrameMismatch,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree {degree} exceeds frame dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },
    #[error("degree {degree} outside 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("cannot contract a vector into a 0-form")]
    ContractZeroForm,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("index tuple is not strictly increasing")]
    NotIncreasing,
    #[error("duplicate frame label {0:?}")]
    DuplicateName(String),
    #[error("frame dimension {dim} outside the supported range 1..=16")]
    DimensionUnsupported { dim: usize },
    #[error("shape mismatch: expected {expected_rows}x{expected_cols}, found {rows}x{cols}")]
    ShapeMismatch { expected_rows: usize, expected_cols: usize, rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension {0} is not a positive multiple of 4")]
    NotQuaternionicDimension(usize),
    #[error("quaternionic identity {0} fails")]
    QuaternionicIdentity(&'static str),
    #[error("coefficients of the induced structure do not satisfy a²+b²+c² = 1")]
    InducedNorm,
    #[error("exact scalars required")]
    NotExact,
    #[error("Clebsch-Gordan bound violated in degree {degree}: maximal weight {found}, expected {expected}")]
    ClebschGordan { degree: usize, expected: usize, found: usize },
    #[error("sl(2) relation {relation} fails in degree {degree}")]
    Sl2Relation { relation: &'static str, degree: usize },
    #[error("form in degree {degree} has Casimir spectrum outside the admissible weights")]
    SpectrumOutsideWeights { degree: usize },
    #[error("form is not of pure type ({p},{q})")]
    NotPureType { p: usize, q: usize },
    #[error("metric is not symmetric")]
    MetricNotSymmetric,
    #[error("metric is not positive definite (leading minor {minor} is not positive)")]
    MetricNotPositive { minor: usize },
    #[error("metric is not compatible with {0}")]
    MetricIncompatible(&'static str),
    #[error("vector {index} is not of type (1,0)")]
    NotHolomorphic { index: usize },
    #[error("spanning vectors are linearly dependent")]
    DependentVectors,
    #[error("expected {expected} vectors, found {found}")]
    WrongVectorCount { expected: usize, found: usize },
    #[error("subspace meets its J-image (transversality fails)")]
    NotTransversal,
    #[error("pairing {0} is not a strictly positive real")]
    PositivityViolated(String),
    #[error("sample count must be positive")]
    NoSamples,
    #[error("base metric is not Hermitian for the base complex structure")]
    NotHermitian,
    #[error("bracket entry has i >= j ({i}, {j})")]
    BracketOrder { i: usize, j: usize },
    #[error("Jacobi identity fails on (x{i}, x{j}, x{k})")]
    Jacobi { i: usize, j: usize, k: usize },
    #[error("d^2 != 0 on a basis form of degree {degree} (blade {blade:#x})")]
    DSquared { degree: usize, blade: u32 },
    #[error("model has no quaternionic structure")]
    MissingStructure,
    #[error("model has no metric")]
    MissingMetric,
    #[error("{structure} is not integrable: Nijenhuis tensor nonzero on (x{i}, x{j})")]
    NotIntegrable { structure: &'static str, i: usize, j: usize },
    #[error("HKT criteria disagree: del Omega_I = 0 is {del}, d+ omega_I = 0 is {d_plus}")]
    HktCriteriaDisagree { del: bool, d_plus: bool },
    #[error("declared nilpotency {declared} does not match the lower central series")]
    NilpotencyMismatch { declared: bool },
    #[error("affine identity {identity} fails on (x{i}, x{j})")]
    AffineIdentity { identity: &'static str, i: usize, j: usize },
    #[error("translation part is not invertible")]
    TranslationSingular,
    #[error("double invariant fails: {0}")]
    DoubleInvariant(&'static str),
    #[error("selected vectors are not independent over the quaternions")]
    NotQuaternionicFrame,
    #[error("no quaternionic dimension: n = 0")]
    ZeroQuaternionicDimension,
    #[error("volume form is not closed")]
    VolumeFormNotClosed,
    #[error("unknown builtin model {0:?}")]
    UnknownBuiltin(String),
    #[error("{0} must be real")]
    NotReal(&'static str),
    #[error("{0} does not square to -Id")]
    NotAlmostComplex(&'static str),
    #[error("split does not match the horizontal/vertical block layout")]
    InvalidSplit,
}
