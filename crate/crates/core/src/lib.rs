//! Exact symbolic computation for braid group actions on infinite
//! Grassmannian cluster algebras, on extended crystals, and on
//! Grothendieck rings of fundamental classes, together with the
//! translation maps between the three pictures.
//!
//! Everything here is exact: polynomial coefficients are arbitrary
//! precision integers, numeric identity checks run over a large prime
//! field (or over the rationals), and randomized equality testing is
//! one-sided in the Schwartz-Zippel sense.
//!
//! The crate is organised around three actors and their dictionaries:
//!
//! * [`ms_crystal`] / [`ext_crystal`] — the multisegment model of the
//!   crystal `B(∞)`, its extended version, and the braid maps `R_i`;
//! * [`pluecker`] / [`braid_sigma`] — exact arithmetic in the quotient
//!   Grassmannian algebra and the braid maps `σ_i`;
//! * [`grothendieck`] — the polynomial ring on fundamental classes
//!   `Y_{i,a}` and the braid maps `T_i`;
//! * [`translation`] — the maps between the three, plus the
//!   commuting-diagram verifiers;
//! * [`cluster_seed`] — Grassmannian cluster seeds and mutation.
//!
//! Batch verification fans out over rayon when the `parallel` feature
//! (default) is enabled; disabling it yields a dependency-free
//! sequential fallback with identical results.

pub mod braid_sigma;
pub mod cluster_seed;
pub mod exec;
pub mod ext_crystal;
pub mod grothendieck;
pub mod ms_crystal;
pub mod pluecker;
pub mod translation;

pub use ext_crystal::ExtElement;
pub use grothendieck::{DominantMonomial, FundIndex, KPoly};
pub use ms_crystal::{Multisegment, Segment};
pub use pluecker::{Config, MinorIndex, PlueckerPoly};
