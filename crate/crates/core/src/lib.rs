//! Cubic graphical regular representations of classical groups over GF(2^f).
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`field`]: arithmetic in GF(2^f) (f ≤ 16) and GF(p) for small odd p,
//! * [`matrix`] and [`group`]: matrices, classical group descriptors, membership,
//!   orders, generators, product-replacement sampling and element orders,
//! * [`ppd`]: factorisation and primitive prime divisors,
//! * [`table`]: full enumeration of desk-scale groups,
//! * [`census`] and [`bounds`]: exact involution counts and the probability
//!   lower bounds, evaluated in big rationals,
//! * [`graph`], [`autom`] and [`grr`]: Cayley graphs, an
//!   individualisation-refinement automorphism engine and GRR certification.
//!
//! IO, file formats, wall-clock budgets and the command line live in the
//! companion `grrforge` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod autom;
pub mod bounds;
pub mod budget;
pub mod census;
pub mod error;
pub mod expr;
pub mod field;
pub mod graph;
pub mod group;
pub mod grr;
pub mod matrix;
pub mod ppd;
pub mod prand;
pub mod table;

pub use error::{Error, Result};
pub use field::{Field, FieldElem, FieldKind};
pub use group::{Family, GroupElement, GroupSpec};
