//! Strong Bruhat order on the hyperoctahedral group `B_n`.
//!
//! Signed permutations are written by their window `[π(1),…,π(n)]`. The
//! crate computes cover relations and strong descent sets, down/up/total
//! degrees, the weighted degree graphs and the `r(S)` deficiency statistic,
//! and enumerates `B_n` exhaustively to find degree maximizers.

pub mod cli;
pub mod error;
pub mod extremal;
pub mod graphs;
pub mod oracle;
pub mod order;
pub mod perm;
pub mod verify;

pub use error::{DescentError, ExtremalError, GraphError, PermError};
pub use extremal::{ExtremalReport, Statistic};
pub use graphs::{GraphKind, WeightedDegreeGraph};
pub use order::{CoverList, DescentSet};
pub use perm::{CoxeterLength, ReflectionKind, ReflectionLabel, SignedPermutation};
