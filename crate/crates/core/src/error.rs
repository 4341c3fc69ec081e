use alloc::string::String;

/// Errors raised by the algebraic and numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("weight {weight:?} has size {size}, expected {expected}")]
    WeightSize { weight: alloc::vec::Vec<usize>, size: usize, expected: usize },
    #[error("rational function has a pole at infinity (numerator degree {num} > denominator degree {den})")]
    PoleAtInfinity { num: usize, den: usize },
    #[error("index sets of sizes {rows} and {cols} do not match")]
    MinorShape { rows: usize, cols: usize },
    #[error("operator leaks outside the weight subspace (max leaked magnitude {0})")]
    WeightLeak(f64),
    #[error("q coordinates must be distinct: q_{i} = q_{j}")]
    RepeatedQ { i: usize, j: usize },
    #[error("q must be nonzero")]
    ZeroQ,
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("pole hit at u = {0}")]
    Pole(String),
    #[error("degenerate space: its discrete Wronskian vanishes identically")]
    DegenerateSpace,
    #[error("linear system is inconsistent (residual {0:e})")]
    Inconsistent(f64),
    #[error("linear system is rank deficient (defect {0})")]
    RankDeficient(usize),
    #[error("kernel polynomial of degree {expected} not found (defect {defect})")]
    KernelDefect { expected: usize, defect: usize },
    #[error("series of order {have} is too short, need order {need}")]
    SeriesTooShort { have: usize, need: usize },
    #[error("continuation failed: {0}")]
    Nonconvergence(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
