//! # entropy-lab
//!
//! Tsallis and Rényi entropies and relative entropies for finite probability
//! distributions and density operators, the quantum f-divergence, and the
//! continuity bounds that tie them to the trace distance:
//!
//! - Pinsker-type lower bounds for `0 < α < 1` (with their power series and
//!   the Rényi variant),
//! - minimal-probability upper bounds for `α > 1`,
//! - Fano-type bounds on the conditional Tsallis entropy and the Fannes-type
//!   continuity bounds they imply.
//!
//! The [`harness`] module checks every one of these claims by seeded random
//! sampling against independently computed quantities and brute-force oracles.
//!
//! Conventions:
//!
//! - Relative entropies take values in [`ExtendedValue`]: a finite real or +∞.
//!   Singular inputs produce +∞, never an error.
//! - Operator powers act on the support only; `A^0` is the support projector.
//! - Orders with `|α − 1| < 1e−6` evaluate the Shannon / von Neumann limit.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod classical;
mod error;
pub mod harness;
pub mod io;
pub mod operator;
pub mod quantum;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{ExtendedValue, Order};
