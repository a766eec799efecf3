//! Word spectra and the summary statistics derived from them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational used for aliasing indices, resolutions and WLP entries.
pub type Rational = num_rational::Ratio<i64>;

/// Generalized resolution. Designs without any word have no finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Resolution {
    Finite(Rational),
    Unbounded,
}

impl Resolution {
    pub fn finite(self) -> Option<Rational> {
        match self {
            Resolution::Finite(r) => Some(r),
            Resolution::Unbounded => None,
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Resolution::Finite(r) => r.to_f64().unwrap_or(f64::NAN),
            Resolution::Unbounded => f64::INFINITY,
        }
    }
}

impl Ord for Resolution {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Resolution::Finite(a), Resolution::Finite(b)) => a.cmp(b),
            (Resolution::Finite(_), Resolution::Unbounded) => Ordering::Less,
            (Resolution::Unbounded, Resolution::Finite(_)) => Ordering::Greater,
            (Resolution::Unbounded, Resolution::Unbounded) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Resolution {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resolution::Finite(r) => write!(f, "{r}"),
            Resolution::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// `count` words of a given length sharing one aliasing index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordGroup {
    pub length: usize,
    pub aliasing: Rational,
    pub count: u64,
}

/// Multiset of words, kept sorted by `(length, aliasing)` with equal keys merged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WordSpectrum {
    groups: Vec<WordGroup>,
}

impl WordSpectrum {
    /// Collects `(length, aliasing, count)` triples, merging equal keys and
    /// dropping zero counts.
    pub fn from_groups<I>(groups: I) -> Self
    where
        I: IntoIterator<Item = (usize, Rational, u64)>,
    {
        let mut merged: BTreeMap<(usize, Rational), u64> = BTreeMap::new();
        for (length, aliasing, count) in groups {
            if count > 0 {
                *merged.entry((length, aliasing)).or_default() += count;
            }
        }
        WordSpectrum {
            groups: merged
                .into_iter()
                .map(|((length, aliasing), count)| WordGroup {
                    length,
                    aliasing,
                    count,
                })
                .collect(),
        }
    }

    pub fn groups(&self) -> &[WordGroup] {
        &self.groups
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn word_count(&self) -> u64 {
        self.groups.iter().map(|g| g.count).sum()
    }

    /// Words with aliasing index 1.
    pub fn complete_words(&self) -> impl Iterator<Item = &WordGroup> {
        self.groups.iter().filter(|g| g.aliasing == Rational::from_integer(1))
    }

    /// Words with aliasing index strictly below 1.
    pub fn partial_words(&self) -> impl Iterator<Item = &WordGroup> {
        self.groups.iter().filter(|g| g.aliasing < Rational::from_integer(1))
    }

    pub fn union(&self, other: &WordSpectrum) -> WordSpectrum {
        WordSpectrum::from_groups(
            self.groups
                .iter()
                .chain(&other.groups)
                .map(|g| (g.length, g.aliasing, g.count)),
        )
    }

    /// Shortest word length, if any word exists.
    pub fn min_length(&self) -> Option<usize> {
        self.groups.first().map(|g| g.length)
    }

    /// Resolution and WLP `(A1, …, Aq)` of a design with `q` factors.
    pub fn metrics(&self, q: usize) -> Result<(Resolution, Vec<Rational>)> {
        spectrum_metrics(self, q)
    }
}

impl fmt::Display for WordSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {}, {})", g.length, g.aliasing, g.count)?;
        }
        f.write_str("}")
    }
}

/// Resolution `r + 1 − max ρ_r` and `A_k = Σ count·ρ²` from a spectrum.
pub fn spectrum_metrics(spectrum: &WordSpectrum, q: usize) -> Result<(Resolution, Vec<Rational>)> {
    let mut wlp = vec![Rational::zero(); q];
    for g in spectrum.groups() {
        if g.length == 0 || g.length > q {
            return Err(Error::LengthExceedsFactors { length: g.length, q });
        }
        wlp[g.length - 1] += g.aliasing * g.aliasing * Rational::from_integer(g.count as i64);
    }
    let resolution = match spectrum.min_length() {
        None => Resolution::Unbounded,
        Some(r) => {
            let worst = spectrum
                .groups()
                .iter()
                .filter(|g| g.length == r)
                .map(|g| g.aliasing)
                .max()
                .expect("min length has a group");
            Resolution::Finite(Rational::from_integer(r as i64 + 1) - worst)
        }
    };
    Ok((resolution, wlp))
}

/// Resolution, WLP and projectivity of one design.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DesignMetrics {
    pub resolution: Resolution,
    pub wlp: Vec<Rational>,
    pub projectivity: usize,
}

/// Shorthand for `p/q` used throughout the tests and tables.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

/// Integer WLP helper: `[0, 0, 0, 2, 8]` as rationals.
pub fn int_wlp(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| Rational::from_integer(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational {
        ratio(1, 2)
    }

    #[test]
    fn merges_and_sorts() {
        let one = Rational::from_integer(1);
        let s = WordSpectrum::from_groups([(6, one, 1), (4, half(), 8), (6, one, 1), (5, half(), 0)]);
        assert_eq!(
            s.groups(),
            &[
                WordGroup {
                    length: 4,
                    aliasing: half(),
                    count: 8
                },
                WordGroup {
                    length: 6,
                    aliasing: one,
                    count: 2
                },
            ]
        );
    }

    #[test]
    fn example_one_metrics() {
        let one = Rational::from_integer(1);
        let s = WordSpectrum::from_groups([
            (4, half(), 8),
            (5, half(), 32),
            (6, half(), 8),
            (6, one, 2),
            (8, one, 1),
        ]);
        let (r, wlp) = s.metrics(10).unwrap();
        assert_eq!(r, Resolution::Finite(ratio(9, 2)));
        assert_eq!(wlp, int_wlp(&[0, 0, 0, 2, 8, 4, 0, 1, 0, 0]));
    }

    #[test]
    fn empty_spectrum_is_unbounded() {
        let (r, wlp) = WordSpectrum::default().metrics(3).unwrap();
        assert_eq!(r, Resolution::Unbounded);
        assert_eq!(wlp, int_wlp(&[0, 0, 0]));
    }

    #[test]
    fn quarter_aliasing_resolution() {
        let s = WordSpectrum::from_groups([(6, ratio(1, 4), 32), (7, half(), 16)]);
        let (r, wlp) = s.metrics(12).unwrap();
        assert_eq!(r, Resolution::Finite(ratio(27, 4)));
        assert_eq!(wlp[5], Rational::from_integer(2));
        assert_eq!(wlp[6], Rational::from_integer(4));
    }

    #[test]
    fn rejects_long_words() {
        let s = WordSpectrum::from_groups([(5, half(), 4)]);
        assert_eq!(s.metrics(4), Err(Error::LengthExceedsFactors { length: 5, q: 4 }));
    }

    #[test]
    fn resolution_order() {
        assert!(Resolution::Unbounded > Resolution::Finite(ratio(100, 1)));
        assert!(Resolution::Finite(ratio(9, 2)) > Resolution::Finite(ratio(4, 1)));
    }
}
