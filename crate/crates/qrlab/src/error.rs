//! Error types shared across the crate.

/// Errors produced by the arithmetic kernels and verification runners.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The modulus passed to a residue-symbol routine is not usable
    /// (even, too small, or not prime where a prime is required).
    #[error("invalid modulus {0}: expected an odd value >= 3")]
    InvalidModulus(u64),

    /// The prime does not lie in the residue class the operation is
    /// defined for (e.g. a quartic symbol at p = 3 mod 4).
    #[error("prime {p} is not {want} (mod {modulus})")]
    UnsupportedResidueClass { p: u64, want: u64, modulus: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An identity the scanned literature asserts for every prime failed.
    /// Either a bug or a genuine counterexample; both must surface loudly.
    #[error("identity violation at p = {p}: {what}")]
    IdentityViolation { p: u64, what: String },

    /// A floating-point computation could not be certified even after
    /// precision doubling.
    #[error("precision exhausted at p = {p} while computing {what}")]
    Precision { p: u64, what: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
