//! Dense packings of equal disks in an equilateral triangle.
//!
//! The crate compresses random disk configurations with an event-driven
//! growth simulation ([`engine`]), polishes jammed results to near machine
//! precision ([`refine`]), analyzes their contact structure ([`analysis`]),
//! and organizes them into the known infinite families of `n`
//! ([`classes`], [`catalog`]). Packings can be stored in a plain-text
//! format ([`format`]) and drawn as SVG ([`render`]).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod catalog;
pub mod classes;
pub mod engine;
pub mod format;
pub mod geometry;
pub mod pipeline;
pub mod ranking;
pub mod refine;
pub mod render;

pub use geometry::{Packing, TriangleDomain, Vec2, Wall};
