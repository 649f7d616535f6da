//! Exact convex geometry for symmetric state spaces.
//!
//! Polytopes are handled in exact rational arithmetic: distinguishability of
//! points by affine effects, distinguishable decompositions, affine
//! automorphism groups with their fixed points and invariant inner products.
//! The smooth state spaces (ball, cylinder) are covered by closed-form
//! models. The `theorems` module runs the classification statements over a
//! corpus as executable checks.

pub mod error;
pub mod cli;
pub mod distinguish;
pub mod geometry;
pub mod linalg;
pub mod linprog;
pub mod models;
pub mod polytope;
pub mod scalar;
pub mod symmetry;
pub mod theorems;

pub use error::{Error, Result};
pub use geometry::{AffineFunctional, AffineMap, Hyperplane, Point};
pub use linalg::Matrix;
pub use polytope::{PolytopeSpec, VPolytope};
pub use scalar::Scalar;
