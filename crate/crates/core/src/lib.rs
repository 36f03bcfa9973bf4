//! Secrecy gain of formally unimodular lattices built by Construction A from
//! binary formally self-dual codes.
//!
//! The crate is organised bottom-up:
//!
//! * [`gf2code`] binary linear codes, exhaustive weight enumeration, the
//!   MacWilliams transform and duality classification;
//! * [`tailbiting`] `[2k, k]` tailbiting codes from rate-1/2 convolutional
//!   codes and their trellis weight enumerator;
//! * [`theta`] Jacobi theta functions on the imaginary axis and theta series of
//!   Construction A lattices, with a brute-force lattice-sum oracle;
//! * [`secrecy`] the secrecy function, weak and strong secrecy gain;
//! * [`gleason`] exact Gleason decomposition of even formally self-dual
//!   enumerators and the sufficient condition for the maximum at `tau = 1`;
//! * [`catalog`] the embedded table of published enumerators.

pub mod catalog;
pub mod error;
pub mod gf2code;
pub mod gleason;
pub mod secrecy;
pub mod tailbiting;
pub mod theta;

pub use catalog::{load_catalog, validate_catalog, CatalogEntry, CodeKind};
pub use error::{Error, Result};
pub use gf2code::{BinaryCode, DualityClass, WeightEnumerator};
pub use gleason::GleasonDecomposition;
pub use secrecy::{SecrecyMethod, SecrecyReport};
pub use tailbiting::ConvolutionalSpec;
