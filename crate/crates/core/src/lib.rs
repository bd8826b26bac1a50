//! VC-weighted Steiner trees and their relatives.
//!
//! The crate covers four problem variants on vertex-weighted graphs:
//!
//! * VC-weighted Steiner trees, where a tree costs the weight of its cheapest
//!   vertex cover ([`graph::VcstInstance`]);
//! * connected dominating sets with edge lengths ([`exact::CdsInstance`]);
//! * Steiner tree activation with monotone per-edge predicates
//!   ([`reductions::ActivationInstance`]);
//! * node-weighted Steiner trees ([`reductions::NwsInstance`]).
//!
//! Exact solvers live in [`exact`], transformations between the variants in
//! [`reductions`], the LP models in [`lp`], the rounding algorithm for unit
//! disk graphs in [`cds`] and the primal-dual algorithm in [`pd`]. The
//! [`harness`] module holds file formats, generators and self-checks used by
//! the `vcst` binary.

pub mod cds;
pub mod error;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod lp;
pub mod num;
pub mod pd;
pub mod reductions;

pub use error::{Error, Result};
pub use num::{Fixed, Weight};
