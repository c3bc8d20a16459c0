use thiserror::Error;

use crate::HalfInt;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("2(j1+j2+j3+j4) = {twice_sum} is odd; the two diagonal ranges do not share a lattice")]
    NonHalfIntegral { twice_sum: i64 },

    #[error("j{index} = {value} is negative")]
    NegativeJ { index: usize, value: HalfInt },

    #[error("closure violated: Regge-conjugate entry j'{index} = {value} is negative")]
    ClosureViolated { index: usize, value: HalfInt },

    #[error("argument {x} lies outside the continuous domain [{lo}, {hi}] (and must exceed 1/2)")]
    DomainError { x: f64, lo: f64, hi: f64 },

    #[error("eigensolver exceeded its iteration cap while isolating eigenvalue {index}")]
    ConvergenceFailure { index: usize },

    #[error("recursion coefficient of p[{step}+1] vanishes at step {step}")]
    CoefficientVanishes { step: usize },

    #[error("closed-form normalization divides by F(r,v,l) = 0 at grid index {index}")]
    ZeroDivisor { index: usize },

    #[error("normalization factors overflow the floating-point range at grid index {index}")]
    NormOverflow { index: usize },

    #[error("trajectory left the domain after {steps} steps (last valid l = {l}, phi = {phi})")]
    StepOutOfDomain { steps: usize, l: f64, phi: f64 },

    #[error("|k| = {k} exceeds the caustic maximum {max}")]
    NoRoots { k: f64, max: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
