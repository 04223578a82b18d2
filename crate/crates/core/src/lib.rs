//! Combinatorics of rank-two Kirillov-Reshetikhin crystals and their rigged
//! configurations.
//!
//! The crate implements, for the twisted affine family whose classical
//! subalgebra is of type G2 (with the simply laced D4 algebra as virtual
//! ambient type):
//!
//! * Cartan and weight bookkeeping ([`cartan`]),
//! * a small abstract-crystal toolkit: tensor rule, closure generation,
//!   highest-weight search, DOT/JSON graph export ([`crystal`]),
//! * the tableau models for `B^{1,s}` and `B^{2,s}` including the affine
//!   operators on single rows ([`tableaux`]),
//! * rigged configurations with their classical crystal structure,
//!   cocharge, complement map and highest-weight enumeration ([`rc`]),
//! * the box-peeling bijection between rigged configurations and tensor
//!   products of KR tableaux, together with the filling maps ([`bijection`]),
//! * tree-based enumeration of classically highest weight components
//!   ([`kleber`]),
//! * energy statistics, the combinatorial R-matrix, and the one-dimensional
//!   sum vs fermionic sum comparison ([`statistics`]),
//! * the folding embedding into the D4 ambient model ([`virtualization`]).

pub mod bijection;
pub mod cartan;
pub mod crystal;
pub mod kleber;
pub mod rc;
pub mod statistics;
pub mod tableaux;
pub mod virtualization;

pub use cartan::{AffineWeight, CartanType, Weight};
pub use crystal::CrystalElement;
pub use rc::{RiggedConfig, TensorShape};
pub use tableaux::{KrTableau, Letter, TensorProduct};
