//! Fractal cubes in ℝ³ generated by a pair of digit sets.
//!
//! A digit set `D ⊂ {0,…,n−1}³` defines the Hutchinson operator
//! `T(A) = (D + A) / n`. Two digit sets (letters `0` and `1`) define the
//! mixed compositions `T_{α₁} ∘ … ∘ T_{αk}`; their images of the unit cube
//! are finite unions of grid cells and are represented exactly by
//! [`VoxelSet`].
//!
//! The crate is organised by concern:
//!
//! * [`digitset`]: digit sets, the Cross/Frame constructors, cube symmetries.
//! * [`voxel`]: binary words, exact iterates and their serialisations.
//! * [`topology`]: face-adjacency components, torus wrapping, face traces,
//!   digit-level dendrite conditions.
//! * [`metric`]: exact minimum distance and certified Hausdorff brackets.
//! * [`dimension`]: box counts, zero densities and the mixture dimension.
//! * [`hyperspace`]: the Cantor coding of components and Hölder checks.

pub mod digitset;
pub mod dimension;
mod error;
pub mod hyperspace;
pub mod metric;
pub mod topology;
pub mod voxel;

pub use digitset::{CubeSymmetry, Digit, DigitSet};
pub use error::{Error, Result};
pub use voxel::{BinaryWord, CellAddress, EventualWord, FractalCube, VoxelSet, WordSpec};
