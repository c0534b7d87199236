//! Right congruences on `A^k`, their Cayley graphs, semaphore codes, and
//! Bernoulli random walks, with every probability kept as an exact rational.
//!
//! `A^k` is the set of words of length `k`; appending a letter and keeping
//! the last `k` letters is the right action that every structure here
//! respects. See the `examples/` directory for a tour.

pub mod cli;
pub mod code;
pub mod congruence;
pub mod error;
pub mod graph;
pub mod json;
pub mod walks;
pub mod words;

pub use code::{IdealRep, SemaphoreCode};
pub use congruence::{Lattice, LatticeReport, RightCongruence};
pub use error::{Error, Result};
pub use graph::{resets, AGraph};
pub use num_rational::BigRational;
pub use walks::{LetterDistribution, ResetProfile};
pub use words::{Alphabet, Word};
