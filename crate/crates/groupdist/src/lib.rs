//! Hamming distances between multiplication tables of finite groups.
//!
//! The library computes exact minimum distances between isomorphism classes
//! of groups on a common element set, eliminates parameter quadruples
//! `(n, h, k, m)` by certified lower-bound inequalities, determines
//! rainbow-matching thresholds for restricted edge-colored graphs, and builds
//! the families of group pairs realizing the minimal distances.

pub mod cayley;
pub mod catalog;
pub mod construct;
pub mod error;
pub mod io;
pub mod iso;
pub mod metrics;
pub mod perm;
pub mod rainbow;
pub mod search;
pub mod sieve;
pub mod special;

pub use cayley::CayleyTable;
pub use error::{Error, Result};
pub use perm::Permutation;
