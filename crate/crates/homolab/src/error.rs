use std::fmt;

/// Errors surfaced by engine operations whose preconditions a caller can
/// legitimately fail (everything else is a programming error and panics).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Characteristic is not a prime in `[2, 2^31)`.
    InvalidField(u64),
    /// Operation requires a nonzero module.
    ZeroModule(&'static str),
    /// Operation requires a Cohen-Macaulay ring with a canonical module.
    NotCohenMacaulay(String),
    /// Input to a Groebner routine is not homogeneous.
    Inhomogeneous(String),
    /// Spherical construction requires positive grade.
    GradeZero,
    /// A probe was asked to run on an instance missing a required module name.
    MissingModule(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidField(p) => write!(f, "{p} is not a prime in [2, 2^31)"),
            Error::ZeroModule(op) => write!(f, "{op} is undefined on the zero module"),
            Error::NotCohenMacaulay(r) => {
                write!(f, "ring {r} is not Cohen-Macaulay; no canonical module")
            }
            Error::Inhomogeneous(what) => write!(f, "inhomogeneous input: {what}"),
            Error::GradeZero => write!(f, "spherical construction requires grade >= 1"),
            Error::MissingModule(name) => write!(f, "instance does not bind module '{name}'"),
        }
    }
}

impl std::error::Error for Error {}
