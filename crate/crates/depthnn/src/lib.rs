//! Depth-based nearest-neighbor classification.
//!
//! This crate implements classifiers built on statistical depth functions
//! (halfspace, simplicial, Mahalanobis and projection depth). Symmetrizing a
//! sample about a query point turns the center-outward depth ordering into a
//! query-outward ordering, which yields affine-invariant nearest-neighbor
//! classifiers that never leave a query unlabelled, together with depth-based
//! variants of kNN regression and density estimation.
//!
//! The crate also ships the competitor classifiers (Euclidean/affine kNN,
//! LDA/QDA, DD-plot classifiers), bivariate simulation setups and a Monte
//! Carlo benchmark driver used to compare them.

pub mod classify;
pub mod depth;
pub mod error;
pub mod estimate;
pub mod experiments;
pub mod ingest;
pub mod linalg;
pub mod neighbors;
pub mod rng;
pub mod sample;

pub use error::{Error, Result};
pub use rng::RngSeed;
pub use sample::{AffineMap, LabeledSample, Point};
