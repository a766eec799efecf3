//! Brute-force aliasing analysis of an explicit design.
//!
//! Everything here works from the ±1 matrix alone: J-characteristics of
//! every column subset, the resulting word spectrum, the generalized
//! resolution and WLP, and projectivity by direct inspection of every
//! projection. The [`trig`] submodule evaluates the same aliasing indices
//! from the generator data without building the matrix.

pub mod trig;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qc::DesignMatrix;
use crate::spectrum::{DesignMetrics, Rational, WordSpectrum};

/// Default upper limit on the number of columns for J-characteristics.
///
/// The pattern table holds `2^q` `i64` counters, i.e. `8 · 2^q` bytes:
/// 8 MiB at the default of 20, 8 GiB at 30.
pub const DEFAULT_COLUMN_CAP: usize = 20;

/// J-characteristics indexed by column-subset bitmask (bit `c` = column `c`).
///
/// The entry for the empty subset is the run count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JCharacteristics {
    factors: usize,
    runs: usize,
    values: Vec<i64>,
}

impl JCharacteristics {
    pub fn get(&self, subset: u64) -> i64 {
        self.values[subset as usize]
    }

    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    /// `|J(S)| / N`.
    pub fn aliasing(&self, subset: u64) -> Rational {
        Rational::new(self.get(subset).abs(), self.runs as i64)
    }

    /// Nonempty subsets with a nonzero J-characteristic.
    pub fn words(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &j)| j != 0)
            .map(|(s, &j)| (s as u64, j))
    }
}

/// J-characteristics of every column subset, with the default column cap.
pub fn j_characteristics(design: &DesignMatrix) -> Result<JCharacteristics> {
    j_characteristics_with_cap(design, DEFAULT_COLUMN_CAP)
}

/// Tallies rows by sign pattern and applies the subset-parity transform,
/// so that entry `S` becomes `Σ_patterns freq · (−1)^|pattern ∩ S|`.
pub fn j_characteristics_with_cap(design: &DesignMatrix, cap: usize) -> Result<JCharacteristics> {
    let q = design.factors();
    if q > cap || q > 40 {
        return Err(Error::TooManyColumns { q, cap });
    }
    let mut values = vec![0i64; 1 << q];
    for mask in design.row_masks() {
        values[mask as usize] += 1;
    }
    parity_transform(&mut values);
    Ok(JCharacteristics {
        factors: q,
        runs: design.runs(),
        values,
    })
}

/// In-place unnormalized Walsh–Hadamard butterfly.
fn parity_transform(values: &mut [i64]) {
    let len = values.len();
    let mut half = 1;
    while half < len {
        for block in values.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
}

/// `J(S)` straight from the definition: sum over runs of the product of
/// the columns in `S`.
pub fn j_direct(design: &DesignMatrix, subset: u64) -> i64 {
    design
        .rows()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(c, _)| subset >> c & 1 == 1)
                .map(|(_, &x)| x as i64)
                .product::<i64>()
        })
        .sum()
}

/// Every nonempty subset with `J(S) ≠ 0`, grouped by length and aliasing index.
pub fn spectrum_bruteforce(design: &DesignMatrix) -> Result<WordSpectrum> {
    let j = j_characteristics(design)?;
    Ok(spectrum_from_j(&j))
}

pub fn spectrum_from_j(j: &JCharacteristics) -> WordSpectrum {
    WordSpectrum::from_groups(j.words().map(|(s, _)| (s.count_ones() as usize, j.aliasing(s), 1)))
}

/// Walks every `p`-subset of columns depth first, extending a per-row
/// cell index one column at a time, and checks at each leaf that all
/// `2^p` cells are hit.
struct ProjectionWalk<'a> {
    columns: &'a [Vec<u32>],
    p: usize,
}

impl ProjectionWalk<'_> {
    fn all_full(&self, first: usize, index: &[u32], depth: usize) -> bool {
        if depth == self.p {
            return covers_all_cells(index, self.p);
        }
        let q = self.columns.len();
        let mut next = vec![0u32; index.len()];
        (first..=q - (self.p - depth)).all(|c| {
            for ((n, &i), &b) in next.iter_mut().zip(index).zip(&self.columns[c]) {
                *n = i | b << depth;
            }
            self.all_full(c + 1, &next, depth + 1)
        })
    }
}

fn covers_all_cells(index: &[u32], p: usize) -> bool {
    let cells = 1usize << p;
    let mut seen = vec![0u64; cells.div_ceil(64)];
    for &i in index {
        seen[i as usize / 64] |= 1 << (i % 64);
    }
    let full_words = cells / 64;
    seen[..full_words].iter().all(|&w| w == u64::MAX)
        && (cells.is_multiple_of(64) || seen[full_words] == (1u64 << (cells % 64)) - 1)
}

/// Whether every `p`-column projection contains a full `2^p` factorial.
pub fn all_projections_full(design: &DesignMatrix, p: usize) -> bool {
    let q = design.factors();
    if p > q {
        return false;
    }
    if p == 0 {
        return true;
    }
    if p >= 32 || (1usize << p) > design.runs() {
        return false;
    }
    let columns: Vec<Vec<u32>> = (0..q)
        .map(|c| design.column(c).iter().map(|&x| u32::from(x < 0)).collect())
        .collect();
    let walk = ProjectionWalk { columns: &columns, p };
    (0..=q - p)
        .into_par_iter()
        .all(|c| walk.all_full(c + 1, &columns[c], 1))
}

/// Largest `p` such that every `p`-column projection is a full factorial
/// (possibly with replicates). Scans `p = 1, 2, …` and stops at the first
/// deficient level.
pub fn projectivity(design: &DesignMatrix) -> usize {
    let q = design.factors();
    (1..=q).find(|&p| !all_projections_full(design, p)).map_or(q, |p| p - 1)
}

/// Resolution, WLP and projectivity from the explicit matrix.
pub fn metrics(design: &DesignMatrix) -> Result<DesignMetrics> {
    let spectrum = spectrum_bruteforce(design)?;
    let (resolution, wlp) = spectrum.metrics(design.factors())?;
    Ok(DesignMetrics {
        resolution,
        wlp,
        projectivity: projectivity(design),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qc::{build_design, Family, GeneratorSpec};
    use crate::spectrum::{int_wlp, ratio, Resolution};

    pub(crate) fn full_factorial(q: usize) -> DesignMatrix {
        let labels = (1..=q).map(|i| format!("X{i}")).collect();
        let rows = (0..1u32 << q)
            .map(|r| (0..q).map(|c| if r >> c & 1 == 1 { -1 } else { 1 }).collect())
            .collect();
        DesignMatrix::new(labels, rows).unwrap()
    }

    fn example_one() -> DesignMatrix {
        build_design(&GeneratorSpec::new(Family::SixteenthEven, vec![2, 1, 1], vec![1, 1, 3], None).unwrap())
    }

    #[test]
    fn full_factorial_is_orthogonal() {
        let d = full_factorial(3);
        let j = j_characteristics(&d).unwrap();
        assert_eq!(j.get(0), 8);
        assert_eq!(j.words().count(), 0);
        assert!(spectrum_bruteforce(&full_factorial(5)).unwrap().is_empty());
        let m = metrics(&d).unwrap();
        assert_eq!(m.resolution, Resolution::Unbounded);
        assert_eq!(m.projectivity, 3);
    }

    #[test]
    fn constant_column() {
        let d = build_design(&GeneratorSpec::new(Family::SixteenthEven, vec![0], vec![0], None).unwrap());
        let j = j_characteristics(&d).unwrap();
        assert_eq!(j.get(1), 4);
        assert_eq!(metrics(&d).unwrap().projectivity, 0);
    }

    #[test]
    fn example_one_complete_words() {
        let d = example_one();
        let j = j_characteristics(&d).unwrap();
        let mut sizes: Vec<u32> = j
            .words()
            .filter(|&(_, v)| v.unsigned_abs() == 64)
            .map(|(s, _)| s.count_ones())
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![6, 6, 8]);
    }

    #[test]
    fn example_one_spectrum_and_metrics() {
        let d = example_one();
        let half = ratio(1, 2);
        let one = ratio(1, 1);
        let expected = WordSpectrum::from_groups([(4, half, 8), (5, half, 32), (6, half, 8), (6, one, 2), (8, one, 1)]);
        assert_eq!(spectrum_bruteforce(&d).unwrap(), expected);
        let m = metrics(&d).unwrap();
        assert_eq!(m.resolution, Resolution::Finite(ratio(9, 2)));
        assert_eq!(m.wlp, int_wlp(&[0, 0, 0, 2, 8, 4, 0, 1, 0, 0]));
        assert_eq!(m.projectivity, 5);
    }

    #[test]
    fn transform_matches_direct_sum() {
        let d = example_one();
        let j = j_characteristics(&d).unwrap();
        for s in 0..1u64 << d.factors() {
            assert_eq!(j.get(s), j_direct(&d, s), "subset {s:#b}");
        }
    }

    #[test]
    fn column_cap() {
        let d = full_factorial(6);
        assert_eq!(
            j_characteristics_with_cap(&d, 5),
            Err(Error::TooManyColumns { q: 6, cap: 5 })
        );
    }

    #[test]
    fn projectivity_with_replicates() {
        // 2^2 factorial run twice plus a copy of column 1: projectivity 1.
        let rows = vec![
            vec![1, 1, 1],
            vec![1, -1, 1],
            vec![-1, 1, -1],
            vec![-1, -1, -1],
            vec![1, 1, 1],
            vec![-1, -1, -1],
        ];
        let d = DesignMatrix::new(vec!["A".into(), "B".into(), "C".into()], rows).unwrap();
        assert_eq!(projectivity(&d), 1);
    }
}
