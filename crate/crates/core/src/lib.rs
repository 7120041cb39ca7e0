//! Finite-truncation operator models for quantum spheres and quantum
//! projective planes.
//!
//! Toeplitz factors are realized as truncated shift matrices, circle factors
//! as exact Laurent polynomials. On top of these the crate builds pullback
//! algebras, Milnor and Bott connecting-map representatives, rank/charge
//! invariants of projections, and clutching matrices of cleaving maps.
//!
//! Everything here is `no_std` with `alloc`; IO and reporting live in the
//! companion `milnor-ktk` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod element;
pub mod error;
pub mod hopfgalois;
pub mod ktheory;
pub mod laurent;
pub mod matrix;
pub mod models;
pub mod pullback;

pub use element::{Element, Layout, Leg, Tensor};
pub use error::{Error, Result};
pub use laurent::LaurentElement;
pub use matrix::{ComplexMatrix, LegClass, SelfadjointDecomposition, TruncationProfile};
pub use models::QParameters;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
