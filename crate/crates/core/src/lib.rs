//! Derived sequences of pre-Jaffard families, computed on executable models:
//! finite spectral spaces, presented compact zero-dimensional spaces, and
//! valuation-vector models of one-dimensional Prüfer domains.

pub mod cli;
pub mod domain;
pub mod error;
pub mod ordinal;
pub mod semistar;
pub mod space;

pub use error::{Error, Result};
pub mod family;
