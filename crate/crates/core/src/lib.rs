//! Groupcast index coding over GF(2).
//!
//! The crate covers the whole pipeline for jointly extended index coding
//! problems whose block structure is dictated by a base problem:
//!
//! * [`gf2`]: dense bit-packed matrices, elimination, permutations and block
//!   assembly.
//! * [`problem`]: receiver lists, tri-valued fitting matrices and completions.
//! * [`minrank`], [`triangular`], [`decode`]: exhaustive minrank search,
//!   upper-triangulability certificates and the decoder-existence criterion
//!   for a candidate encoder.
//! * [`extension`]: the extended fitting matrix and its block bookkeeping.
//! * [`bounds`]: the triangulable-submatrix lower bound, the explicit
//!   completion upper bound, the matching-bound certificate and the cyclic
//!   base construction.
//! * [`algo1`]: code synthesis from component codes and a base code, with
//!   the companion decoder.
//!
//! Indices are 0-based throughout the API. `Display` impls and error
//! messages print 1-based indices.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algo1;
pub mod bounds;
pub mod decode;
mod error;
pub mod extension;
pub mod gf2;
pub mod minrank;
pub mod problem;
pub mod triangular;

pub use error::{Condition, Error, Result, Which};
pub use gf2::{Axis, BinMatrix, BitVec, BlockShape, Permutation};
pub use problem::{Entry, ProblemInstance, Receiver, TriMatrix};

/// Default cap on the number of unknown entries accepted by exhaustive
/// completion search.
pub const DEFAULT_MAX_UNKNOWNS: usize = 24;

/// Hard upper limit on exhaustive completion search.
pub const HARD_MAX_UNKNOWNS: usize = 40;
