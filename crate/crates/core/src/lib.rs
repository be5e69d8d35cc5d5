//! Permutation groups, p-subgroup posets, order complexes, character tables
//! and Lefschetz characters.

// Matrix code reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod backtrack;
pub mod blocks;
pub mod catalog;
pub mod chartable;
pub mod classes;
pub mod complex;
pub mod conditions;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod lefschetz;
pub mod local;
pub mod perm;
pub mod psub;
pub mod snf;
pub mod verify;

pub use classes::{ConjugacyClassSet, EnumeratedGroup};
pub use error::{Error, Result};
pub use group::GroupHandle;
pub use perm::Permutation;
