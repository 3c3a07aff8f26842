//! Box counts of iterates, zero densities of addresses, and the dimension of
//! components as a mixture of the two branching rates.
//!
//! For a word `w` of length `k` with `m` zeros, `F_w` consists of exactly
//! `#D₀^m · #D₁^(k−m)` cells of side `n^−k`, so `−log N / log δ` at
//! `δ = n^−k` is `(m/k)·log_n #D₀ + (1 − m/k)·log_n #D₁`.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::voxel::{BinaryWord, EventualWord, FractalCube};

/// Natural logarithm of a big integer.
pub fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        n.to_f64().expect("below f64 range").ln()
    } else {
        let shift = bits - 64;
        (n >> shift).to_f64().expect("64-bit value").ln() + shift as f64 * std::f64::consts::LN_2
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoxCount {
    pub depth: usize,
    /// `N(n^−k)`: generated cell count, or the formula value when generation
    /// was skipped.
    pub count: BigUint,
    pub formula: BigUint,
    /// Whether `count` came from generating the iterate.
    pub generated: bool,
    /// `log N / (k log n)`; `None` at depth 0.
    pub exponent: Option<f64>,
}

/// Cell count of `F_w`, by generation (when within the cell budget and depth
/// limit) and by the product formula. Generation that disagrees with the
/// formula is an error.
pub fn box_count(cube: &FractalCube, word: &BinaryWord) -> Result<BoxCount> {
    let formula = cube.product_count(word);
    let (count, generated) = match cube.iterate(word) {
        Ok(v) => {
            let generated = BigUint::from(v.len());
            if generated != formula {
                return Err(Error::CountMismatch {
                    generated: v.len(),
                    formula: formula.to_string(),
                });
            }
            (generated, true)
        }
        Err(Error::CellBudget { .. } | Error::DepthLimit { .. }) => (formula.clone(), false),
        Err(e) => return Err(e),
    };
    let k = word.len();
    let exponent = (k > 0).then(|| ln_big(&count) / (k as f64 * (cube.base() as f64).ln()));
    Ok(BoxCount {
        depth: k,
        count,
        formula,
        generated,
        exponent,
    })
}

/// Box counts of successive prefixes of one address.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxCountSeries {
    pub word: BinaryWord,
    pub base: u32,
    pub entries: Vec<BoxCount>,
}

/// Box counts of the prefixes of `word` of the given lengths.
pub fn box_count_series(
    cube: &FractalCube,
    word: &BinaryWord,
    depths: impl IntoIterator<Item = usize>,
) -> Result<BoxCountSeries> {
    let entries = depths
        .into_iter()
        .map(|k| {
            if k > word.len() {
                return Err(Error::WordLength(k, word.len()));
            }
            box_count(cube, &word.prefix(k))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoxCountSeries {
        word: word.clone(),
        base: cube.base(),
        entries,
    })
}

/// `λ·log₅13 + (1−λ)·log₅44`, the dimension attached to zero density `λ`.
pub fn cross_frame_dimension(lambda: Ratio<u64>) -> Result<f64> {
    mixture_dimension(&FractalCube::cross_frame(), lambda)
}

/// `λ·log_n #D₀ + (1−λ)·log_n #D₁` for any two-letter fractal cube.
pub fn mixture_dimension(cube: &FractalCube, lambda: Ratio<u64>) -> Result<f64> {
    if lambda > Ratio::from_integer(1) {
        return Err(Error::Lambda(lambda.to_string()));
    }
    let ln_n = (cube.base() as f64).ln();
    let d0 = (cube.letter(0).len() as f64).ln() / ln_n;
    let d1 = (cube.letter(1).len() as f64).ln() / ln_n;
    let l = *lambda.numer() as f64 / *lambda.denom() as f64;
    Ok(l * d0 + (1.0 - l) * d1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DimensionEstimate {
    /// Least-squares slope of `log_n N` against `k = −log_n δ`.
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
}

/// Fits `log_n N(n^−k) ≈ slope·k + intercept` over the series.
pub fn estimate_dimension(series: &BoxCountSeries) -> Result<DimensionEstimate> {
    if series.entries.len() < 2 {
        return Err(Error::DegenerateSeries("need at least two depths"));
    }
    let ln_n = (series.base as f64).ln();
    let pts: Vec<(f64, f64)> = series
        .entries
        .iter()
        .map(|e| (e.depth as f64, ln_big(&e.count) / ln_n))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateSeries("all entries at the same depth"));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    Ok(DimensionEstimate {
        slope,
        intercept,
        residual,
    })
}

/// Zero densities `λ_m` of the prefixes of a word.
///
/// `limsup`/`liminf` are the max/min of `λ_m` over the second half of the
/// computed range, `m ∈ [⌈M/2⌉, M]`; `limit` is exact and only present for
/// a declared eventually periodic word.
#[derive(Clone, Debug, PartialEq)]
pub struct DensitySeries {
    pub lambdas: Vec<Ratio<u64>>,
    pub limsup: Option<Ratio<u64>>,
    pub liminf: Option<Ratio<u64>>,
    pub limit: Option<Ratio<u64>>,
}

impl DensitySeries {
    /// `(lower, upper)` box-dimension estimates: the lower box dimension
    /// pairs with the upper density and vice versa, because more zeros mean
    /// slower branching.
    pub fn box_dimension_bounds(&self, cube: &FractalCube) -> Option<(f64, f64)> {
        if let Some(l) = self.limit {
            let v = mixture_dimension(cube, l).ok()?;
            return Some((v, v));
        }
        let lower = mixture_dimension(cube, self.limsup?).ok()?;
        let upper = mixture_dimension(cube, self.liminf?).ok()?;
        Some((lower, upper))
    }
}

pub fn density_series(word: &BinaryWord) -> DensitySeries {
    let mut zeros = 0u64;
    let lambdas: Vec<Ratio<u64>> = word
        .letters()
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            zeros += (l == 0) as u64;
            Ratio::new(zeros, i as u64 + 1)
        })
        .collect();
    let tail = &lambdas[lambdas.len() / 2..];
    DensitySeries {
        limsup: tail.iter().max().copied(),
        liminf: tail.iter().min().copied(),
        limit: None,
        lambdas,
    }
}

/// Density series of the first `len` letters of an eventually periodic word,
/// with the exact limit.
pub fn density_series_eventual(word: &EventualWord, len: usize) -> DensitySeries {
    DensitySeries {
        limit: Some(word.zero_density()),
        ..density_series(&word.prefix(len))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn counts() {
        let cube = FractalCube::cross_frame();
        let c = box_count(&cube, &w("00")).unwrap();
        assert_eq!(c.count, BigUint::from(169u32));
        assert!(c.generated);
        let c = box_count(&cube, &w("0111")).unwrap();
        assert_eq!(c.count, BigUint::from(1_107_392u32));
        assert!(c.generated);
        let c = box_count(&cube, &w("")).unwrap();
        assert_eq!(c.count, BigUint::from(1u32));
        assert_eq!(c.exponent, None);
    }

    #[test]
    fn formula_only_beyond_budget() {
        let cube = FractalCube::cross_frame().with_cell_budget(100);
        let c = box_count(&cube, &w("11")).unwrap();
        assert!(!c.generated);
        assert_eq!(c.count, BigUint::from(1936u32));
        // beyond the packing depth as well
        let long = BinaryWord::repeat(1, 30).unwrap();
        let c = box_count(&FractalCube::cross_frame(), &long).unwrap();
        assert!(!c.generated);
        assert_eq!(c.count, BigUint::from(44u32).pow(30));
        assert!((c.exponent.unwrap() - 44f64.ln() / 5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn cross_frame_dimensions() {
        let v1 = cross_frame_dimension(Ratio::new(1, 1)).unwrap();
        let v0 = cross_frame_dimension(Ratio::new(0, 1)).unwrap();
        let vh = cross_frame_dimension(Ratio::new(1, 2)).unwrap();
        // ln 13 / ln 5 and ln 44 / ln 5
        assert!((v1 - 1.5936926411670824).abs() < 1e-12);
        assert!((v0 - 2.3512492185517644).abs() < 1e-12);
        assert!((vh - 1.9724709298594234).abs() < 1e-12);
        assert!(cross_frame_dimension(Ratio::new(3, 2)).is_err());
    }

    #[test]
    fn slopes() {
        let cube = FractalCube::cross_frame();
        let s = box_count_series(&cube, &w("0000"), 1..=4).unwrap();
        let e = estimate_dimension(&s).unwrap();
        assert!((e.slope - 13f64.ln() / 5f64.ln()).abs() < 1e-12);

        let alt = w("010101");
        let s = box_count_series(&cube, &alt, [2, 4, 6]).unwrap();
        let e = estimate_dimension(&s).unwrap();
        assert!((e.slope - cross_frame_dimension(Ratio::new(1, 2)).unwrap()).abs() < 1e-12);

        let s = box_count_series(&cube, &w("011"), 1..=3).unwrap();
        let ln5 = 5f64.ln();
        let (d0, d1) = (13f64.ln() / ln5, 44f64.ln() / ln5);
        for (entry, frac) in s.entries.iter().zip([1.0, 0.5, 1.0 / 3.0]) {
            let expect = frac * d0 + (1.0 - frac) * d1;
            assert!((entry.exponent.unwrap() - expect).abs() < 1e-12);
        }

        let single = box_count_series(&cube, &w("0"), [1]).unwrap();
        assert!(estimate_dimension(&single).is_err());
        assert!(box_count_series(&cube, &w("0"), [2]).is_err());
    }

    #[test]
    fn densities() {
        let d = density_series(&w("0101010101"));
        assert_eq!(d.lambdas[9], Ratio::new(1, 2));
        assert_eq!(d.limit, None);

        let e: EventualWord = "0:1".parse().unwrap();
        let d = density_series_eventual(&e, 10);
        assert_eq!(d.lambdas[9], Ratio::new(1, 10));
        assert_eq!(d.limit, Some(Ratio::new(0, 1)));
        let (lo, hi) = d.box_dimension_bounds(&FractalCube::cross_frame()).unwrap();
        assert_eq!(lo, hi);

        let d = density_series(&BinaryWord::empty());
        assert!(d.lambdas.is_empty());
        assert_eq!((d.limsup, d.liminf), (None, None));
    }

    #[test]
    fn bounds_pair_upper_density_with_lower_dimension() {
        let d = density_series(&w("0011"));
        let (lower, upper) = d.box_dimension_bounds(&FractalCube::cross_frame()).unwrap();
        assert!(lower <= upper);
        assert_eq!(d.limsup, Some(Ratio::new(2, 3)));
        assert_eq!(d.liminf, Some(Ratio::new(1, 2)));
    }
}
