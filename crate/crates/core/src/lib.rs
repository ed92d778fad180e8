//! Exact antipode computations in the Malvenuto–Reutenauer Hopf algebra of
//! permutations, with closed forms for two-letter descent permutations.

pub mod algebra;
pub mod cli;
pub mod closedform;
pub mod error;
pub mod hopf;
pub mod notation;
pub mod verify;
pub mod words;

pub use algebra::{product, shifted_shuffle, Element, TermRecord};
pub use closedform::{
    case_formula, classify, closed_antipode, closed_component, CaseFormula, CaseId, Mutation,
    MutationTarget, ShuffleIdentity, SigmaSpec,
};
pub use error::{Error, Result};
pub use hopf::{antipode, coproduct, counit, AntipodeCache, TensorElement};
pub use verify::VerificationReport;
pub use words::{delta, eta, sigma_a, sigma_pair, standardize, Permutation, Word};
