//! Recovery of a clean static background and 360-degree foreground objects
//! from multi-view captures of the same objects in several arrangements.
//!
//! The crate is organized around the pipeline stages:
//!
//! - [`scenegen`]: procedural ground-truth scene sets with an analytic ray
//!   tracer that doubles as the evaluation oracle.
//! - [`field`]: dense voxel radiance fields with volume rendering and
//!   photometric optimization.
//! - [`visibility`]: per-scene visibility fields (fraction of training
//!   cameras that observe a point unoccluded) with Laplacian smoothing.
//! - [`geometry`]: marching cubes, surface sampling, nearest-neighbor
//!   queries, PLY I/O.
//! - [`registration`]: Sim(3) scene alignment, FPFH + RANSAC + point-to-plane
//!   ICP object registration, Hungarian matching.
//! - [`segmentation`]: background differencing and density-based clustering.
//! - [`fusion`]: visibility-weighted blending of aligned scenes for clean
//!   background and per-object rendering.
//! - [`pipeline`]: stage orchestration, persistence, and metrics.

pub mod camera;
pub mod error;
pub mod field;
pub mod fusion;
pub mod geometry;
pub mod grid;
pub mod img;
pub mod math;
pub mod metrics;
pub mod pipeline;
pub mod pose;
pub mod registration;
pub mod scenegen;
pub mod segmentation;
pub mod visibility;

pub use error::{Error, Result};
