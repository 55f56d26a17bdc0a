//! Metric small cancellation `C'(λ)` for finitely presented groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`words`]: free-group words, cyclic permutations, symmetric closure,
//!   power-freeness and minimality of relator lists.
//! * [`checker`]: the exact `C'(λ)` decision procedure with concrete
//!   failure witnesses, plus the single-relator / relator-pair overlap
//!   classifiers.
//! * [`counting`]: arbitrary-precision counts of freely and cyclically
//!   reduced words and the upper bounds on the number of words with long
//!   self-overlaps or pairwise overlaps.
//! * [`bounds`]: closed-form lower and upper bounds on the probability that
//!   a uniformly random presentation satisfies `C'(λ)`, and the parameter
//!   limits derived from them.
//! * [`sampler`]: exact uniform sampling of cyclically reduced words and
//!   presentations from reproducible random streams.
//! * [`montecarlo`]: Monte Carlo estimation, brute-force enumeration for
//!   tiny instances and parameter-grid sweeps.

pub mod bounds;
pub mod checker;
pub mod counting;
mod error;
pub mod montecarlo;
mod numeric;
pub mod sampler;
pub mod words;

pub use bounds::{Bound, BoundNote, BoundOptions, BoundValue, EvalMode, ParamPoint};
pub use checker::{check, satisfies, CheckOptions, CheckReport, Failure, Lambda, PieceWitness, SymmetrizedWord};
pub use error::{Error, Result};
pub use montecarlo::{Estimate, GridSpec, SweepRow};
pub use sampler::RandomStream;
pub use words::{Alphabet, Letter, Presentation, Word};
