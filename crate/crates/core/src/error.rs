use alloc::string::String;
use core::fmt;

/// Failure modes shared by every evaluator in the crate.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An element was passed to a group it does not belong to.
    GroupMismatch,
    /// No bicharacter exists for `RealTimesCyclic(N)` with even `N`.
    EvenCyclicOrder,
    /// A nome with `|q| >= 1` (or `q = 0` where negative powers are needed).
    DivergentParameter,
    /// A denominator factor vanished exactly.
    PoleHit,
    /// The argument sits within the pole-proximity threshold of a pole.
    PoleProximity,
    /// The argument or parameter lies outside the representation's validity region.
    OutOfDomain(&'static str),
    /// A truncated series did not settle under doubling.
    NonConvergent,
    /// A quadrature rule exhausted its node budget.
    QuadratureFailure,
    /// Circle or line quadrature detected a singularity on the contour.
    PoleOnContour,
    /// Two pole locations coincide to within tolerance.
    DegeneratePoles,
    /// The operation is not offered for this group.
    UnsupportedGroup,
    /// `run_suite` was given a name it does not know.
    UnknownSuite(String),
    /// Damped-extrapolation corrections did not shrink.
    ExtrapolationUnstable,
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::GroupMismatch => "GroupMismatch",
            Error::EvenCyclicOrder => "EvenCyclicOrder",
            Error::DivergentParameter => "DivergentParameter",
            Error::PoleHit => "PoleHit",
            Error::PoleProximity => "PoleProximity",
            Error::OutOfDomain(_) => "OutOfDomain",
            Error::NonConvergent => "NonConvergent",
            Error::QuadratureFailure => "QuadratureFailure",
            Error::PoleOnContour => "PoleOnContour",
            Error::DegeneratePoles => "DegeneratePoles",
            Error::UnsupportedGroup => "UnsupportedGroup",
            Error::UnknownSuite(_) => "UnknownSuite",
            Error::ExtrapolationUnstable => "ExtrapolationUnstable",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GroupMismatch => f.write_str("element does not belong to the group"),
            Error::EvenCyclicOrder => f.write_str("no bicharacter for even cyclic order"),
            Error::DivergentParameter => f.write_str("nome outside the unit disk"),
            Error::PoleHit => f.write_str("vanishing denominator factor"),
            Error::PoleProximity => f.write_str("argument too close to a pole"),
            Error::OutOfDomain(why) => write!(f, "out of domain: {why}"),
            Error::NonConvergent => f.write_str("series did not converge"),
            Error::QuadratureFailure => f.write_str("quadrature node budget exhausted"),
            Error::PoleOnContour => f.write_str("pole on integration contour"),
            Error::DegeneratePoles => f.write_str("coincident poles"),
            Error::UnsupportedGroup => f.write_str("operation not offered for this group"),
            Error::UnknownSuite(name) => write!(f, "unknown suite or check: {name}"),
            Error::ExtrapolationUnstable => f.write_str("extrapolation did not stabilise"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
