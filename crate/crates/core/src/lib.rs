//! Exact combinatorial calculus of retractive spaces and comodules over a
//! finite simplicial set, with integral and twisted homology as the
//! verification oracle.
//!
//! The library works entirely with finite data: simplicial sets are tables of
//! nondegenerate simplices in Eilenberg–Zilber normal form, every functor is
//! computed by an explicit simplex formula, and every isomorphism claim is
//! certified by a constructed map rather than searched for.

pub mod adjunction;
pub mod catalog;
pub mod comodule;
pub mod covers;
pub mod doc;
pub mod error;
pub mod homology;
pub mod report;
pub mod retractive;
pub mod sset;
pub mod verify;

pub use error::Error;
