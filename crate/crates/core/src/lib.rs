//! Verification toolkit for Lefschetz fibration monodromy factorizations.

pub mod braid;
pub mod cli;
pub mod fibration;
pub mod homology;
pub mod raag;
pub mod report;
pub mod surface;
pub mod words;
