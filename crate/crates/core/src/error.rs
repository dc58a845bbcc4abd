use thiserror::Error;

/// Errors raised by the cover computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i64, found: i64 },
    #[error("form is not homogeneous: terms of degree {0} and {1}")]
    NotHomogeneous(u32, u32),
    #[error("no exact quotient exists")]
    NotDivisible,
    #[error("gcd of two zero forms is undefined")]
    BothZero,
    #[error("characteristic {characteristic} is too small (need 0 or a prime above {bound})")]
    CharacteristicTooSmall { characteristic: u64, bound: u64 },
    #[error("{0} is not a prime larger than 3")]
    InvalidField(u64),
    #[error("zero form where a nonzero one is required: {0}")]
    ZeroForm(&'static str),
    #[error("bad twists ({t1}, {t2}): section {section} would have degree {degree}")]
    BadTwists {
        t1: i64,
        t2: i64,
        section: &'static str,
        degree: i64,
    },
    #[error("cover algebra is not integral: {0} vanishes")]
    NotIntegral(&'static str),
    #[error("degenerate cubic: {0} vanishes")]
    Degenerate(&'static str),
    #[error("equation is not minimal: a base divides s with order {sigma} and t with order {tau}")]
    NotMinimal { sigma: u32, tau: u32 },
    #[error("invalid factor data: {0}")]
    InvalidTanData(&'static str),
    #[error("no exponent assignment for pattern ({sigma}, {tau})")]
    NoAssignment { sigma: u32, tau: u32 },
    #[error("factor bases {0} and {1} are associate")]
    AssociateBases(usize, usize),
    #[error("factor base {0} is constant")]
    ConstantBase(usize),
    #[error("line coefficients vanish identically")]
    ZeroLine,
    #[error("points do not span a line")]
    DependentPoints,
    #[error("presentation entry ({row}, {col}) has degree {found}, expected {expected}")]
    PresentationShape {
        row: usize,
        col: usize,
        expected: i64,
        found: i64,
    },
    #[error("presentation drops rank on the line")]
    DegenerateOnLine,
    #[error("kernel does not have the expected rank {expected}")]
    NotExpectedRank { expected: usize },
    #[error("branch degree {0} is not a positive even integer")]
    OddDegree(i64),
    #[error("no classification entry for degree {two_k} and bundle {bundle}")]
    UnknownEntry { two_k: i64, bundle: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
