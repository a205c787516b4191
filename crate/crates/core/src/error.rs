use core::fmt;

/// Errors produced by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An exponential sum was built from an empty term list.
    EmptySeries,
    /// Exponents must be finite and strictly increasing.
    NonIncreasingExponents { index: usize },
    /// A term carried a non-finite exponent or coefficient.
    NonFiniteTerm { index: usize },
    /// Every coefficient of the sum is zero.
    AllZeroCoefficients,
    /// The point lies outside the disk where the oracle is valid.
    OutsideValidity { modulus: f64, radius: f64 },
    /// A truncated series was evaluated outside its convergence half-plane.
    OutsideConvergence { sigma: f64, min_sigma: f64 },
    /// The requested tolerance cannot be met; `achievable` is the best bound.
    ToleranceUnattainable { requested: f64, achievable: f64 },
    /// A composed oracle has no room left in its validity disk.
    ValidityExhausted,
    /// The origin order could not be resolved within the derivative budget.
    OriginOrderExceeded { max_order: u32 },
    /// Input to a Weierstrass product contained the origin.
    ZeroAtOrigin,
    /// A parameter was out of range; the message names it.
    InvalidParameter(&'static str),
    /// A contour integral did not settle on an integer.
    Uncertified { radius: f64, winding: f64 },
    /// Adaptive quadrature exhausted its panel budget.
    QuadratureFailed { achieved: f64 },
    /// The located zero set disagrees with the argument-principle count.
    CountMismatch { expected: u64, located: u64 },
    /// A value was taken at the origin but its multiplicity is unknown.
    MissingOriginOrder,
    /// More than one partner within the matching tolerance.
    AmbiguousMatch { position: (f64, f64) },
    /// The radius grid is too short for the requested statistic.
    InsufficientGrid { points: usize, span: f64 },
    /// A hypothesis required by the operation does not hold.
    PreconditionFailed(&'static str),
    /// No point of the scanned annulus avoids the exclusion disks.
    ScanExhausted,
    /// The translation bound is not below the boundary minimum.
    CertificationRefused { epsilon: f64, mu: f64 },
    /// A window of the scan range contains no translation number.
    NoHitWindow { start: f64, end: f64, found: usize },
    /// Closed-form lattice and argument-principle counts differ.
    ClosedFormMismatch { radius: f64, expected: u64, found: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptySeries => write!(f, "exponential sum has no terms"),
            Error::NonIncreasingExponents { index } => {
                write!(f, "exponent at index {index} is not strictly larger than its predecessor")
            }
            Error::NonFiniteTerm { index } => write!(f, "term {index} is not finite"),
            Error::AllZeroCoefficients => write!(f, "all coefficients are zero"),
            Error::OutsideValidity { modulus, radius } => {
                write!(f, "|s| = {modulus} exceeds the validity radius {radius}")
            }
            Error::OutsideConvergence { sigma, min_sigma } => write!(
                f,
                "Re(s) = {sigma} is outside the convergence half-plane Re(s) > {min_sigma}"
            ),
            Error::ToleranceUnattainable { requested, achievable } => write!(
                f,
                "tolerance {requested:e} unattainable; best bound is {achievable:e}"
            ),
            Error::ValidityExhausted => write!(f, "composition exhausts the validity radius"),
            Error::OriginOrderExceeded { max_order } => {
                write!(f, "order at the origin exceeds {max_order}")
            }
            Error::ZeroAtOrigin => write!(f, "product zeros must be nonzero"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::Uncertified { radius, winding } => write!(
                f,
                "winding number {winding} on radius {radius} is not certifiably an integer"
            ),
            Error::QuadratureFailed { achieved } => {
                write!(f, "quadrature did not converge (achieved {achieved:e})")
            }
            Error::CountMismatch { expected, located } => write!(
                f,
                "located multiplicities sum to {located}, argument principle gives {expected}"
            ),
            Error::MissingOriginOrder => {
                write!(f, "f(0) equals the target but the origin multiplicity is unknown")
            }
            Error::AmbiguousMatch { position } => write!(
                f,
                "zero near ({}, {}) has several partners within the matching tolerance",
                position.0, position.1
            ),
            Error::InsufficientGrid { points, span } => write!(
                f,
                "grid of {points} points spanning a factor {span} is too short"
            ),
            Error::PreconditionFailed(what) => write!(f, "precondition failed: {what}"),
            Error::ScanExhausted => write!(f, "annulus scan found no admissible point"),
            Error::CertificationRefused { epsilon, mu } => write!(
                f,
                "translation bound {epsilon:e} is not below the boundary minimum {mu:e}"
            ),
            Error::NoHitWindow { start, end, found } => write!(
                f,
                "window [{start}, {end}] contains no translation number ({found} found overall)"
            ),
            Error::ClosedFormMismatch { radius, expected, found } => write!(
                f,
                "at r = {radius}: closed form gives {expected}, argument principle gives {found}"
            ),
        }
    }
}

impl core::error::Error for Error {}
