//! The space of components as a self-similar set coded by binary words.
//!
//! Letter `0` maps to ternary digit `0` and letter `1` to ternary digit `2`,
//! so prefixing a word by `0` or `1` corresponds to `x ↦ x/3` or
//! `x ↦ (x+2)/3` on the middle-third Cantor set.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metric::{self, SandwichReport};
use crate::voxel::{BinaryWord, FractalCube};

/// A partial ternary sum `Σ dᵢ·3^−i` with digits in `{0, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CantorPoint {
    numerator: BigUint,
    len: usize,
}

impl CantorPoint {
    /// Exact value `numerator / 3^len`.
    pub fn as_ratio(&self) -> Ratio<BigUint> {
        Ratio::new(
            self.numerator.clone(),
            BigUint::from(3u32).pow(self.len as u32),
        )
    }

    pub fn ternary_digits(&self) -> Vec<u8> {
        let three = BigUint::from(3u32);
        let mut digits = vec![0u8; self.len];
        let mut n = self.numerator.clone();
        for slot in digits.iter_mut().rev() {
            *slot = (&n % &three).to_u8().expect("digit below 3");
            n /= &three;
        }
        digits
    }

    pub fn value(&self) -> f64 {
        let mut v = 0.0;
        for d in self.ternary_digits().iter().rev() {
            v = (v + *d as f64) / 3.0;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

pub fn phi(word: &BinaryWord) -> CantorPoint {
    let numerator = word
        .letters()
        .iter()
        .fold(BigUint::zero(), |acc, &l| acc * 3u32 + 2u32 * l as u32);
    CantorPoint {
        numerator,
        len: word.len(),
    }
}

pub fn common_prefix(a: &BinaryWord, b: &BinaryWord) -> usize {
    a.letters()
        .iter()
        .zip(b.letters())
        .take_while(|(x, y)| x == y)
        .count()
}

/// `[3^−(s+1), 3^−s]`: the range of `|φ(a) − φ(b)|` for words that first
/// differ at position `s+1`.
pub fn cantor_gap_bounds(s: usize) -> (Ratio<BigUint>, Ratio<BigUint>) {
    let three = BigUint::from(3u32);
    (
        Ratio::new(BigUint::one(), three.pow(s as u32 + 1)),
        Ratio::new(BigUint::one(), three.pow(s as u32)),
    )
}

/// `|x − y|` for exact Cantor points.
pub fn cantor_gap(a: &CantorPoint, b: &CantorPoint) -> Ratio<BigUint> {
    let (x, y) = (a.as_ratio(), b.as_ratio());
    if x >= y {
        x - y
    } else {
        y - x
    }
}

fn ratio_f64(r: &Ratio<BigUint>) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    (crate::dimension::ln_big(n) - crate::dimension::ln_big(d)).exp()
        * if n.is_zero() { 0.0 } else { 1.0 }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolderOptions {
    pub tol: f64,
    /// Largest accepted word length.
    pub depth_limit: usize,
}

impl Default for HolderOptions {
    fn default() -> Self {
        Self {
            tol: 1e-4,
            depth_limit: 4,
        }
    }
}

/// One pair of words of the Hölder check.
#[derive(Clone, Debug, PartialEq)]
pub struct HolderPair {
    pub a: BinaryWord,
    pub b: BinaryWord,
    pub s: usize,
    pub sandwich: SandwichReport,
    /// Bracket of `d_H(K_α, K_β)` for all infinite `α ⊃ a`, `β ⊃ b`.
    pub limit_lo: f64,
    pub limit_hi: f64,
    /// `|φ(a) − φ(b)|` of the finite words.
    pub cantor_gap: f64,
    pub gap_lo: f64,
    pub gap_hi: f64,
    pub gap_ok: bool,
    /// Bracket of `|φ(a) − φ(b)| / d_H(F_a, F_b)^α`.
    pub ratio_lo: f64,
    pub ratio_hi: f64,
}

impl HolderPair {
    pub fn passed(&self) -> bool {
        self.sandwich.passed() && self.gap_ok
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HolderReport {
    pub word_len: usize,
    pub pairs: Vec<HolderPair>,
    /// `log 3 / log n`.
    pub exponent_forward: f64,
    /// `log n / log 3`.
    pub exponent_backward: f64,
    /// Smallest `c₁` with `|φ(α) − φ(β)| ≤ c₁·d_H(K_α, K_β)^exponent_forward`
    /// certified over all pairs.
    pub c_forward: f64,
    /// Smallest `c₂` with `d_H(K_α, K_β) ≤ c₂·|φ(α) − φ(β)|^exponent_backward`
    /// certified over all pairs.
    pub c_backward: f64,
    /// Constants implied by the sandwich bounds themselves.
    pub c_forward_cap: f64,
    pub c_backward_cap: f64,
}

impl HolderReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(HolderPair::passed)
            && self.c_forward.is_finite()
            && self.c_backward.is_finite()
            && self.c_forward <= self.c_forward_cap
            && self.c_backward <= self.c_backward_cap
    }
}

/// Checks the two-sided Hölder relation between components and Cantor
/// points over all pairs of distinct words of length `word_len`.
///
/// Finite iterates bracket the limit components: `K_α ⊂ F_{α|k}` and every
/// cell of `F_{α|k}` meets `K_α`, so `d_H(K_α, F_{α|k}) ≤ √3·n^−k`, and
/// `d_H(K_α, K_β) ≥ d_min(F_a, F_b)`.
pub fn holder_check(
    cube: &FractalCube,
    word_len: usize,
    opts: HolderOptions,
) -> Result<HolderReport> {
    if word_len > opts.depth_limit {
        return Err(Error::DepthBudget {
            len: word_len,
            limit: opts.depth_limit,
        });
    }
    if word_len == 0 {
        return Err(Error::DegenerateSeries("no pairs of distinct empty words"));
    }
    let words = BinaryWord::all_of_length(word_len);
    let n = cube.base() as f64;
    let alpha = 3f64.ln() / n.ln();
    let beta = 1.0 / alpha;
    let tail = 3f64.sqrt() * n.powi(-(word_len as i32));

    let index_pairs: Vec<(usize, usize)> = (0..words.len())
        .flat_map(|i| (i + 1..words.len()).map(move |j| (i, j)))
        .collect();
    let pairs = index_pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&words[i], &words[j]);
            let s = common_prefix(a, b);
            let sandwich = metric::verify_sandwich(cube, a, b, opts.tol)?;
            let dist = sandwich.distance;
            let gap = cantor_gap(&phi(a), &phi(b));
            let (glo, ghi) = cantor_gap_bounds(s);
            let gap_ok = glo <= gap && gap <= ghi;
            let gap = ratio_f64(&gap);
            Ok(HolderPair {
                a: a.clone(),
                b: b.clone(),
                s,
                limit_lo: dist.d_min.max(dist.d_hausdorff_lo - 2.0 * tail),
                limit_hi: dist.d_hausdorff_hi + 2.0 * tail,
                cantor_gap: gap,
                gap_lo: ratio_f64(&glo),
                gap_hi: ratio_f64(&ghi),
                gap_ok,
                ratio_lo: gap / dist.d_hausdorff_hi.powf(alpha),
                ratio_hi: gap / dist.d_hausdorff_lo.powf(alpha),
                sandwich,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let c_forward = pairs
        .iter()
        .map(|p| p.gap_hi / p.limit_lo.powf(alpha))
        .fold(0.0, f64::max);
    let c_backward = pairs
        .iter()
        .map(|p| p.limit_hi / p.gap_lo.powf(beta))
        .fold(0.0, f64::max);

    Ok(HolderReport {
        word_len,
        pairs,
        exponent_forward: alpha,
        exponent_backward: beta,
        // gap ≤ 3^−s = 3·(n^−(s+1))^α ≤ 3·d^α
        c_forward_cap: 3.0 * (1.0 + 1e-9),
        // d ≤ 3√2·n^−s + 2√3·n^−k ≤ (3√2·n + 2√3)·(3^−(s+1))^β
        c_backward_cap: (3.0 * 2f64.sqrt() * n + 2.0 * 3f64.sqrt()) * (1.0 + 1e-9),
        c_forward,
        c_backward,
    })
}
