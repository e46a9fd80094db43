//! Exact sections, projections and visual cones of convex polytopes, plus
//! sampling-based polytope criteria for convex bodies given by support and
//! membership oracles.
//!
//! The exact path works over arbitrary-precision rationals in ambient
//! dimensions 2 to 4. Floating-point code is confined to [`body`] and the
//! sampled branches of [`criteria`].
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod geometry;
pub mod body;
pub mod cones;
pub mod criteria;
pub mod polytope;
pub mod rng;
pub mod silhouette;
