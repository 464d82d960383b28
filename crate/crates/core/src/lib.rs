//! Morita equivalence of inverse hulls of Markov shifts.
//!
//! The pipeline runs from a [`TransitionMatrix`] to the labelled graph that
//! classifies its inverse hull up to Morita equivalence:
//!
//! * [`shift`]: matrices, allowed words, follower vectors;
//! * [`hull`]: canonical idempotents of the inverse hull and a brute-force
//!   partial-bijection oracle;
//! * [`order`]: cores and the induced order on D-classes;
//! * [`graph`]: the labelled graph and its DOT export;
//! * [`lgis`]: the inverse semigroup of a labelled graph space;
//! * [`smorita`]: idempotents of the enlarged semigroup and its
//!   combinatorial data;
//! * [`decider`]: the Morita-equivalence decision procedure.

pub mod decider;
pub mod graph;
pub mod hull;
pub mod lgis;
pub mod order;
pub mod shift;
pub mod smorita;
pub mod sweep;

pub use decider::{decide_graphs, decide_morita, DeciderError, IsoWitness, Verdict};
pub use graph::{build_graph, to_dot, LabelledGraph};
pub use hull::{Hull, HullError, HullIdempotent, ZeroOrIdem};
pub use lgis::{Lgis, LgisElement, LgisError};
pub use order::{CoreOrder, DClassId, OrderError};
pub use shift::{Alphabet, FollowerVector, Letter, ShiftError, TransitionMatrix, Word};
pub use smorita::{build_cd, cd_isomorphic, coherent_check, CdSet, SIdem, SmoritaError};
