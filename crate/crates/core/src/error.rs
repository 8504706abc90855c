use alloc::string::String;
use core::fmt;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Gamma evaluated at zero or a negative integer.
    Pole { x: f64 },
    /// A parameter lies outside its admissible range.
    Domain { name: &'static str, value: f64 },
    /// No evaluation regime reached the requested accuracy.
    NonConvergence { alpha: f64, beta: f64, re: f64, im: f64 },
    /// The result is outside the binary64 range.
    Overflow,
    /// The asymptotic expansion was requested below its validity threshold.
    AsymptoticRegime { rho: f64, threshold: f64 },
    /// A matrix that must be inverted is numerically singular.
    Singular { matrix: String, det: f64 },
    /// Two eigenvalues coincide within the separation tolerance.
    DegenerateSpectrum { gap: f64 },
    /// A matrix expected to be entrywise nonnegative has a negative entry.
    NotNonnegative { min: f64 },
    /// The modulus-maximal eigenvalue is not real and positive.
    NonDominant,
    /// The QR iteration did not deflate.
    EigenNonConvergence,
    DimensionMismatch { expected: usize, found: usize },
    /// The eigenvector basis is too ill-conditioned for a coefficient solve.
    IllConditioned { cond: f64 },
    /// Orders above one need the initial rate of change.
    MissingInitialSpeed,
    /// A closed-model operation received a model with consumption.
    OpenModel,
    NegativeTime { t: f64 },
    /// Fewer samples than the discretisation needs.
    StepTooCoarse { samples: usize, required: usize },
    /// The time stepper left the representable range.
    Unstable { t: f64, magnitude: f64 },
    /// Conjugate modes failed to cancel in a real trajectory.
    ImaginaryResidue { ratio: f64 },
    /// Equal-rate orders need an eigenvalue different from one.
    UnitEigenvalue,
    /// The model failed validation.
    InvalidModel(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pole { x } => write!(f, "gamma function pole at x = {x}"),
            Self::Domain { name, value } => write!(f, "{name} out of range: {value}"),
            Self::NonConvergence { alpha, beta, re, im } => write!(
                f,
                "Mittag-Leffler evaluation did not converge (alpha = {alpha}, beta = {beta}, z = {re}{im:+}i)"
            ),
            Self::Overflow => f.write_str("value exceeds the floating-point range"),
            Self::AsymptoticRegime { rho, threshold } => write!(
                f,
                "asymptotic expansion not valid: |z|^(1/alpha) = {rho} below {threshold}"
            ),
            Self::Singular { matrix, det } => {
                write!(f, "{matrix} not invertible (|det| = {det:e})")
            }
            Self::DegenerateSpectrum { gap } => {
                write!(f, "repeated eigenvalues (relative gap {gap:e})")
            }
            Self::NotNonnegative { min } => write!(f, "matrix has negative entry {min}"),
            Self::NonDominant => {
                f.write_str("modulus-maximal eigenvalue is not real and positive")
            }
            Self::EigenNonConvergence => f.write_str("QR iteration did not converge"),
            Self::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Self::IllConditioned { cond } => {
                write!(f, "eigenvector basis ill-conditioned (cond = {cond:e})")
            }
            Self::MissingInitialSpeed => f.write_str("initial speed required for alpha > 1"),
            Self::OpenModel => f.write_str("closed run requested but C0 nonzero"),
            Self::NegativeTime { t } => write!(f, "negative time {t}"),
            Self::StepTooCoarse { samples, required } => {
                write!(f, "{samples} samples given, at least {required} required")
            }
            Self::Unstable { t, magnitude } => {
                write!(f, "integration unstable at t = {t} (|y| = {magnitude:e})")
            }
            Self::ImaginaryResidue { ratio } => {
                write!(f, "complex modes left an imaginary residue (ratio {ratio:e})")
            }
            Self::UnitEigenvalue => f.write_str("reference eigenvalue equals one"),
            Self::InvalidModel(msg) => write!(f, "invalid model: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
