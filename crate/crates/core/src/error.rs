use thiserror::Error;

/// Errors raised by the classification library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("capacity exceeded: {what} (size {size}, bound {bound})")]
    Capacity {
        what: String,
        size: usize,
        bound: usize,
    },

    #[error("invalid group descriptor `{0}` (expected e.g. 8, 4x2, 2x2x2)")]
    Descriptor(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("invalid residue {0} mod 8 (expected one of 1, 3, 5, 7)")]
    Residue(u64),

    /// p = 3 and p = 7 fall outside the normal-Sylow hypothesis. The known
    /// counts are reported but never computed.
    #[error(
        "p = {p} is not supported: groups of order 8p need not split; \
         the known number of left braces of size {size} is {known}"
    )]
    UnsupportedPrime { p: u64, size: u64, known: u64 },

    #[error("p = {0} is not on the oracle allowlist {1:?}")]
    NotAllowed(u64, Vec<u64>),

    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Known counts for the excluded primes, quoted from the literature.
pub const KNOWN_COUNT_P3: u64 = 96;
pub const KNOWN_COUNT_P7: u64 = 91;

/// Rejects p = 3 and p = 7 with the dedicated error.
pub fn reject_excluded_prime(p: u64) -> Result<()> {
    match p {
        3 => Err(Error::UnsupportedPrime {
            p,
            size: 24,
            known: KNOWN_COUNT_P3,
        }),
        7 => Err(Error::UnsupportedPrime {
            p,
            size: 56,
            known: KNOWN_COUNT_P7,
        }),
        _ => Ok(()),
    }
}
