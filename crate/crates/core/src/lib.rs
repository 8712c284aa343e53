//! Enumeration-order analysis of listings of recursively enumerable sets,
//! carried out on finite prefixes.
//!
//! A listing enumerates a set of naturals one element at a time. Listing `f`
//! is *enumeration-order reducible* to `g` when every position pair that `f`
//! enumerates out of order is also out of order in `g`. This crate decides
//! that relation on prefixes, builds and transforms listings, extracts
//! membership deciders from aligned listing pairs, and checks the surrounding
//! claims exhaustively over small permutation spaces.
//!
//! Module map:
//!
//! - [`prefix`]: prefixes, inversion sets, patterns, reducibility checks.
//! - [`algebra`]: inverse lookup, transport, descending chains.
//! - [`extraction`]: position bounds, paired listings, predecessor descent,
//!   membership, perturbation families.
//! - [`enumerators`]: closed-form enumerators and dovetailed halting models.
//! - [`oracle`]: exhaustive brute-force property registry.
//! - [`format`]: text formats for prefixes, chains, samples and pairings.

pub mod algebra;
pub mod enumerators;
mod error;
pub mod extraction;
pub mod format;
pub mod oracle;
pub mod prefix;

pub use error::{Error, Result};
pub use prefix::{
    ascending_listing, equiv_eo, inversions, leq_eo, standardize, InversionSet, Pattern,
    PrefixListing, SetSample, Verdict,
};
