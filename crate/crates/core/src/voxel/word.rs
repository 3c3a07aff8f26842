use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// A finite word over `{0, 1}`; letter `i` selects the `i`-th digit set of a
/// [`FractalCube`](super::FractalCube).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord(Vec<u8>);

impl BinaryWord {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.iter().any(|&l| l > 1) {
            let shown: String = letters.iter().map(|l| l.to_string()).collect();
            return Err(Error::InvalidWord(shown));
        }
        Ok(Self(letters))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// The constant word `letter^len`.
    pub fn repeat(letter: u8, len: usize) -> Result<Self> {
        Self::new(vec![letter; len])
    }

    /// All `2^len` words of the given length in lexicographic order.
    pub fn all_of_length(len: usize) -> Vec<Self> {
        (0..1u64 << len)
            .map(|bits| {
                Self(
                    (0..len)
                        .map(|i| ((bits >> (len - 1 - i)) & 1) as u8)
                        .collect(),
                )
            })
            .collect()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of `0` letters.
    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&l| l == 0).count()
    }

    /// The first `k` letters (the whole word if shorter).
    pub fn prefix(&self, k: usize) -> Self {
        Self(self.0[..k.min(self.0.len())].to_vec())
    }

    /// `letter · self`.
    pub fn prepend(&self, letter: u8) -> Result<Self> {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Self::new(v)
    }

    /// `self · letter`.
    pub fn append(&self, letter: u8) -> Result<Self> {
        let mut v = self.0.clone();
        v.push(letter);
        Self::new(v)
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// An eventually periodic infinite word `preperiod · period^∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventualWord {
    preperiod: BinaryWord,
    period: BinaryWord,
}

impl EventualWord {
    pub fn new(preperiod: BinaryWord, period: BinaryWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidWord(format!("{preperiod}:")));
        }
        Ok(Self { preperiod, period })
    }

    pub fn preperiod(&self) -> &BinaryWord {
        &self.preperiod
    }

    pub fn period(&self) -> &BinaryWord {
        &self.period
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> BinaryWord {
        let pre = self.preperiod.letters();
        let per = self.period.letters();
        BinaryWord(
            (0..n)
                .map(|i| {
                    if i < pre.len() {
                        pre[i]
                    } else {
                        per[(i - pre.len()) % per.len()]
                    }
                })
                .collect(),
        )
    }

    /// Limiting density of zeros, which is the density of zeros in the period.
    pub fn zero_density(&self) -> Ratio<u64> {
        Ratio::new(self.period.zeros() as u64, self.period.len() as u64)
    }
}

impl fmt::Display for EventualWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.preperiod, self.period)
    }
}

impl FromStr for EventualWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (pre, per) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidWord(s.to_string()))?;
        let bad = |_| Error::InvalidWord(s.to_string());
        Self::new(pre.parse().map_err(bad)?, per.parse().map_err(bad)?)
    }
}

/// A word as given on a command line: a literal, or `preperiod:period`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WordSpec {
    Finite(BinaryWord),
    Eventual(EventualWord),
}

impl WordSpec {
    /// First `n` letters. A literal shorter than `n` is repeated cyclically.
    pub fn prefix(&self, n: usize) -> BinaryWord {
        match self {
            WordSpec::Finite(w) if n <= w.len() || w.is_empty() => w.prefix(n),
            WordSpec::Finite(w) => EventualWord {
                preperiod: BinaryWord::empty(),
                period: w.clone(),
            }
            .prefix(n),
            WordSpec::Eventual(e) => e.prefix(n),
        }
    }

    /// The zero density of a declared eventually periodic word.
    pub fn declared_density(&self) -> Option<Ratio<u64>> {
        match self {
            WordSpec::Finite(_) => None,
            WordSpec::Eventual(e) => Some(e.zero_density()),
        }
    }

    /// Natural length: the literal's length, or preperiod plus one period.
    pub fn natural_len(&self) -> usize {
        match self {
            WordSpec::Finite(w) => w.len(),
            WordSpec::Eventual(e) => e.preperiod.len() + e.period.len(),
        }
    }
}

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordSpec::Finite(w) => w.fmt(f),
            WordSpec::Eventual(e) => e.fmt(f),
        }
    }
}

impl FromStr for WordSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains(':') {
            s.parse().map(WordSpec::Eventual)
        } else {
            s.parse().map(WordSpec::Finite)
        }
    }
}
