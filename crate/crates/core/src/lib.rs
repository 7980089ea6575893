//! Exact-arithmetic toolkit for the associated polynomials of the Fermat
//! equation `A^n + B^n = C^n`.
//!
//! The crate constructs the monic integer polynomials whose integer roots are
//! exactly the solutions for a fixed offset pair, decides integer-root
//! existence rigorously (Sturm sequences over exact rationals, cross-checked
//! by the rational root theorem), approximates all roots at a chosen binary
//! precision, and audits the parity, divisibility and root-pairing claims
//! made about these polynomials, producing replayable witnesses whenever a
//! claim fails.

pub mod arith;
pub mod assoc;
pub mod error;
pub mod intpoly;
pub mod report;
pub mod roots;
pub mod search;
pub mod viete;
pub mod witness;

pub use error::{Error, Result};
