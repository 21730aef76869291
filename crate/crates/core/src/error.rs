use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// n = 1 and n = 2 give the empty and the trivial graph and are not modelled.
    #[error("modulus {0} is excluded (n must be >= 3)")]
    Excluded(u64),
    #[error("modulus {n} is not admissible: {reason}")]
    NotAdmissible { n: u64, reason: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is not congruent to 1 mod 4")]
    NotOneMod4(u64),
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("{0} is not an odd prime power p^alpha with p = 1 mod 4")]
    NotPrimePower(u64),
    #[error("a^(phi(n)/2) mod {n} = {value} for unit a = {a}, expected 1 or n-1")]
    MappingFailure { n: u64, a: u64, value: u64 },
    #[error("characters are defined modulo {left} and {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("shift {a} is not a unit modulo {n}")]
    NonUnitShift { n: u64, a: i64 },
    #[error("{a} is not a unit square modulo {n}")]
    NotASquare { n: u64, a: u64 },
    #[error("{what} = {value} exceeds the enumeration limit {limit}")]
    TooLarge {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    /// A closed form or divisibility postcondition did not hold. Always a bug.
    #[error("identity `{identity}` violated: expected {expected}, got {actual}")]
    IdentityViolated {
        identity: &'static str,
        expected: String,
        actual: String,
    },
}

impl Error {
    pub(crate) fn violated(
        identity: &'static str,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        Error::IdentityViolated {
            identity,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

/// Returns `Err(IdentityViolated)` unless `expected == actual`.
pub(crate) fn ensure_eq<T: PartialEq + ToString>(
    identity: &'static str,
    expected: T,
    actual: T,
) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::violated(identity, expected, actual))
    }
}
