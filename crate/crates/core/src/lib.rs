//! Equitable 2-partitions of halved hypercubes.
//!
//! An equitable partition of a graph is an ordered vertex partition in which
//! every vertex of cell `i` has the same number `S[i][j]` of neighbors in cell
//! `j`; for two cells these are exactly the covering-radius-1 completely
//! regular codes. This crate covers the halved n-cube ½H(n) (even-weight
//! words, adjacent at Hamming distance 2), its odd-weight twin ½H(n)', and
//! the n-cube H(n):
//!
//! * [`quotient`]: eigenvalues θᵢ(n), necessary conditions on quotient
//!   matrices, the distance-layer recursion, candidate enumeration.
//! * [`verify`]: the equitability oracle, distance partitions, weight
//!   distributions.
//! * [`construct`]: restriction, odd lift, minimum-eigenvalue transfer,
//!   radius-3/4 code partitions, linear partitions, coset unions, the ×t
//!   product and the splitting construction.
//! * [`code`]: linear codes, cosets, the repetition code and the length-12
//!   Hadamard code.
//! * [`search`]: exact backtracking existence search and 0/1 instance export.

pub mod cli;
pub mod code;
pub mod construct;
pub mod error;
pub mod export;
pub mod graph;
pub mod partition;
pub mod quotient;
pub mod report;
pub mod search;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use graph::{CubeGraph, CubeKind, Face};
pub use partition::Partition;
pub use quotient::QuotientMatrix;
pub use word::BinaryWord;
