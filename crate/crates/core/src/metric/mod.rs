//! Minimum and Hausdorff distances between voxel sets, and the distance
//! sandwich for iterates addressed by words with a common prefix.

mod exact;
mod hausdorff;
mod local;
mod tree;

pub use exact::{min_distance, ExactDistance};
pub use hausdorff::DEFAULT_REFINEMENT_BUDGET;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hyperspace::common_prefix;
use crate::voxel::{BinaryWord, FractalCube, VoxelSet};

/// Minimum distance and a Hausdorff bracket between two voxel sets, in units
/// of the unit-cube side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceReport {
    pub d_min: f64,
    pub d_min_exact: ExactDistance,
    pub d_hausdorff_lo: f64,
    pub d_hausdorff_hi: f64,
    pub refinements: usize,
}

impl DistanceReport {
    /// The report for the images of both sets under `x ↦ factor·x`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            d_min: self.d_min * factor,
            d_hausdorff_lo: self.d_hausdorff_lo * factor,
            d_hausdorff_hi: self.d_hausdorff_hi * factor,
            ..*self
        }
    }

    pub fn contains_hausdorff(&self, value: f64) -> bool {
        self.d_hausdorff_lo <= value && value <= self.d_hausdorff_hi
    }

    pub fn width(&self) -> f64 {
        self.d_hausdorff_hi - self.d_hausdorff_lo
    }
}

pub fn hausdorff_distance(a: &VoxelSet, b: &VoxelSet, tol: f64) -> Result<DistanceReport> {
    hausdorff_distance_with_budget(a, b, tol, DEFAULT_REFINEMENT_BUDGET)
}

/// As [`hausdorff_distance`], failing once `budget` regions have been refined.
pub fn hausdorff_distance_with_budget(
    a: &VoxelSet,
    b: &VoxelSet,
    tol: f64,
    budget: usize,
) -> Result<DistanceReport> {
    let (lo, hi, refinements) = hausdorff::hausdorff_bracket(a, b, tol, budget)?;
    let d_min_exact = min_distance(a, b)?;
    Ok(DistanceReport {
        d_min: d_min_exact.value(),
        d_min_exact,
        // d_H ≥ d_min always
        d_hausdorff_lo: lo.max(d_min_exact.value() * (1.0 - 1e-12)),
        d_hausdorff_hi: hi.max(d_min_exact.value()),
        refinements,
    })
}

/// Distances between `F_a` and `F_b` checked against the prefix bounds.
///
/// With `s` the common-prefix length: `d_min ≥ n^−(s+1)` and
/// `d_H ≥ n^−(s+1)`, and `d_H` is compared against three upper candidates
/// `3√5·n^−(s+1)`, `3√2·n^−(s+1)` and `3√2·n^−s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SandwichReport {
    pub s: usize,
    pub distance: DistanceReport,
    pub lower_bound: f64,
    pub min_ok: bool,
    pub lower_ok: bool,
    pub upper_sqrt5_ok: bool,
    pub upper_sqrt2_ok: bool,
    pub upper_weak_ok: bool,
}

impl SandwichReport {
    /// The minimum-distance bound and the bracket within `[n^−(s+1), 3√2·n^−s]`.
    pub fn passed(&self) -> bool {
        self.min_ok && self.lower_ok && self.upper_weak_ok
    }
}

/// Distances between `F_a` and `F_b`. A common prefix is handled once per
/// neighbourhood pattern of its cells rather than once per copy.
pub fn word_distance(
    cube: &FractalCube,
    wa: &BinaryWord,
    wb: &BinaryWord,
    tol: f64,
) -> Result<DistanceReport> {
    word_distance_with_budget(cube, wa, wb, tol, DEFAULT_REFINEMENT_BUDGET)
}

pub fn word_distance_with_budget(
    cube: &FractalCube,
    wa: &BinaryWord,
    wb: &BinaryWord,
    tol: f64,
    budget: usize,
) -> Result<DistanceReport> {
    if wa.len() != wb.len() {
        return Err(Error::WordLength(wa.len(), wb.len()));
    }
    let s = common_prefix(wa, wb);
    let tail = |w: &BinaryWord| BinaryWord::new(w.letters()[s..].to_vec());
    if let Some(r) = local::prefix_report(cube, &wa.prefix(s), &tail(wa)?, &tail(wb)?, tol, budget)?
    {
        return Ok(r);
    }
    hausdorff_distance_with_budget(&cube.iterate(wa)?, &cube.iterate(wb)?, tol, budget)
}

pub fn verify_sandwich(
    cube: &FractalCube,
    wa: &BinaryWord,
    wb: &BinaryWord,
    tol: f64,
) -> Result<SandwichReport> {
    check_pair(wa, wb)?;
    let distance = word_distance(cube, wa, wb, tol)?;
    Ok(sandwich(distance, common_prefix(wa, wb), cube.base()))
}

pub(crate) fn check_pair(wa: &BinaryWord, wb: &BinaryWord) -> Result<()> {
    if wa.len() != wb.len() {
        return Err(Error::WordLength(wa.len(), wb.len()));
    }
    if wa == wb {
        return Err(Error::IdenticalWords);
    }
    Ok(())
}

/// Sandwich checks for already generated iterates with common prefix `s`.
pub fn sandwich_for_sets(a: &VoxelSet, b: &VoxelSet, s: usize, tol: f64) -> Result<SandwichReport> {
    Ok(sandwich(hausdorff_distance(a, b, tol)?, s, a.base()))
}

fn sandwich(distance: DistanceReport, s: usize, base: u32) -> SandwichReport {
    let e = s as u32 + 1;
    SandwichReport {
        s,
        distance,
        lower_bound: (base as f64).powi(-(e as i32)),
        min_ok: distance.d_min_exact.at_least_inverse_power(e),
        lower_ok: ge_inverse_power(distance.d_hausdorff_lo, base, e),
        upper_sqrt5_ok: lt_root_multiple(distance.d_hausdorff_hi, 3, 5, base, e, true),
        upper_sqrt2_ok: lt_root_multiple(distance.d_hausdorff_hi, 3, 2, base, e, true),
        upper_weak_ok: lt_root_multiple(distance.d_hausdorff_hi, 3, 2, base, e - 1, false),
    }
}

fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite distance")
}

fn pow(base: u32, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

/// Exact test of `x ≥ n^−e`.
pub fn ge_inverse_power(x: f64, base: u32, e: u32) -> bool {
    rational(x) * BigRational::from_integer(pow(base, e)) >= BigRational::one()
}

/// Exact test of `x < c·√q·n^−e` (or `≤` when `strict` is false).
pub fn lt_root_multiple(x: f64, c: u32, q: u32, base: u32, e: u32, strict: bool) -> bool {
    let x = rational(x);
    if x < BigRational::zero() {
        return true;
    }
    let lhs = &x * &x * BigRational::from_integer(pow(base, 2 * e));
    let rhs = BigRational::from_integer(BigInt::from(c * c * q));
    if strict {
        lhs < rhs
    } else {
        lhs <= rhs
    }
}
