use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("malformed matrix: {0}")]
    Malformed(String),

    #[error("rotation order must be at least 1")]
    ZeroOrder,

    #[error("C_{k} is not a crystallographic rotation of the plane lattice (allowed: 1, 2, 3, 4, 6)")]
    CrystallographicRestriction { k: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("power {t} out of range for rotation order {k}")]
    PowerOutOfRange { t: u64, k: u64 },

    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("colour {q} out of range for modulus {n}")]
    ColourOutOfRange { q: u64, n: u64 },

    #[error("box of {points} points exceeds the point budget of {budget}")]
    PointBudgetExceeded { points: u128, budget: u64 },

    #[error("matrix entries too large for the machine-integer fast path")]
    Overflow,

    #[error("theorem regression at k={k}: symbolic N={symbolic}, closed form N={closed_form}")]
    TheoremRegression {
        k: u64,
        symbolic: String,
        closed_form: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
