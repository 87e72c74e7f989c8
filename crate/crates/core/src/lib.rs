//! Finite quandles and the algebra around them.
//!
//! Everything in this crate works on explicit operation tables indexed by
//! `0..n`. Quandle tables use the orientation `table[x][y] = x * y`; group
//! tables use `table[a][b] = a · b` with the identity at index 0. Abelian
//! coefficient groups are written additively throughout.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the object catalog
//! and the command line live in the companion `qf` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod abelian;
pub mod adjoint;
pub mod bridge;
pub mod cohomology;
pub mod dynamical;
mod error;
pub mod group;
mod limits;
pub mod matrix;
pub mod perm;
pub mod quandle;

pub use error::{Error, Result};
pub use limits::Limits;
