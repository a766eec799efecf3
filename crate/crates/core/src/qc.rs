//! Quaternary-code designs: generator data, the Gray map, and the frequency
//! and lambda summaries of a `(u, v)` generator pair.
//!
//! A design is the binary image of the code generated by `[u v I_n]` over
//! Z4 (and, for the branched families, of the extended code with an extra
//! binary coordinate `a0`). Every Z4 symbol becomes a pair of ±1 levels.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The four design families that can be built from `(u, v)` generator data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `2^((2n+4)-4)`: `4^n` runs, columns F1–F4 plus two per coordinate.
    SixteenthEven,
    /// `2^((2n+3)-3)`: the sixteenth-even design with F1 removed.
    EighthEven,
    /// `2^((2n+5)-4)`: branched design in `2·4^n` runs with the extra F5 column.
    SixteenthOdd,
    /// `2^((2n+4)-3)`: the sixteenth-odd design with F1 removed.
    EighthOdd,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::SixteenthEven,
        Family::EighthEven,
        Family::SixteenthOdd,
        Family::EighthOdd,
    ];

    /// Branched families carry `(u0, v0)` and a binary `a0`.
    pub fn is_odd_run(self) -> bool {
        matches!(self, Family::SixteenthOdd | Family::EighthOdd)
    }

    pub fn is_eighth(self) -> bool {
        matches!(self, Family::EighthEven | Family::EighthOdd)
    }

    /// The sixteenth-fraction family this one is derived from by deleting F1.
    pub fn sixteenth(self) -> Family {
        match self {
            Family::SixteenthEven | Family::EighthEven => Family::SixteenthEven,
            Family::SixteenthOdd | Family::EighthOdd => Family::SixteenthOdd,
        }
    }

    /// The eighth-fraction counterpart.
    pub fn eighth(self) -> Family {
        match self {
            Family::SixteenthEven | Family::EighthEven => Family::EighthEven,
            Family::SixteenthOdd | Family::EighthOdd => Family::EighthOdd,
        }
    }

    pub fn runs(self, n: usize) -> usize {
        let base = 1usize << (2 * n);
        if self.is_odd_run() {
            2 * base
        } else {
            base
        }
    }

    pub fn factors(self, n: usize) -> usize {
        match self {
            Family::SixteenthEven => 2 * n + 4,
            Family::EighthEven => 2 * n + 3,
            Family::SixteenthOdd => 2 * n + 5,
            Family::EighthOdd => 2 * n + 4,
        }
    }

    /// Number of generators removed by the fraction (4 or 3).
    pub fn generators(self) -> usize {
        if self.is_eighth() {
            3
        } else {
            4
        }
    }

    /// Conventional `2^{q-k}` label, e.g. `2^{10-4}`.
    pub fn design_label(self, n: usize) -> String {
        format!("2^{{{}-{}}}", self.factors(n), self.generators())
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::SixteenthEven => "sixteenth-even",
            Family::EighthEven => "eighth-even",
            Family::SixteenthOdd => "sixteenth-odd",
            Family::EighthOdd => "eighth-odd",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// The `(u0, v0)` pair appended by the branching construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Branch {
    pub u0: u8,
    pub v0: u8,
}

impl Branch {
    pub fn new(u0: u8, v0: u8) -> Result<Self> {
        check_digit(u0)?;
        check_digit(v0)?;
        Ok(Branch { u0, v0 })
    }

    /// All sixteen pairs in `u0`-major order.
    pub fn all() -> impl Iterator<Item = Branch> {
        (0..4u8).flat_map(|u0| (0..4u8).map(move |v0| Branch { u0, v0 }))
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.u0, self.v0)
    }
}

impl FromStr for Branch {
    type Err = String;

    /// Two juxtaposed digits: `"12"` is `u0 = 1, v0 = 2`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let digits: Vec<u8> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(|| format!("`{s}` is not two Z4 digits"))?;
        match digits.as_slice() {
            &[u0, v0] => Branch::new(u0, v0).map_err(|e| e.to_string()),
            _ => Err(format!("`{s}` is not two Z4 digits")),
        }
    }
}

fn check_digit(d: u8) -> Result<()> {
    if d < 4 {
        Ok(())
    } else {
        Err(Error::InvalidDigit(d))
    }
}

/// Gray image of a Z4 symbol as a pair of ±1 levels.
pub fn gray_pair(k: u8) -> (i8, i8) {
    match k % 4 {
        0 => (1, 1),
        1 => (1, -1),
        2 => (-1, -1),
        _ => (-1, 1),
    }
}

/// Generator data for one design.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    family: Family,
    u: Vec<u8>,
    v: Vec<u8>,
    branch: Option<Branch>,
}

impl GeneratorSpec {
    pub fn new(family: Family, u: Vec<u8>, v: Vec<u8>, branch: Option<Branch>) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::LengthMismatch { u: u.len(), v: v.len() });
        }
        if u.is_empty() {
            return Err(Error::ZeroLength);
        }
        for &d in u.iter().chain(&v) {
            check_digit(d)?;
        }
        match (family.is_odd_run(), branch) {
            (false, Some(_)) => return Err(Error::UnexpectedBranch { family }),
            (true, None) => return Err(Error::MissingBranch { family }),
            (_, Some(b)) => Branch::new(b.u0, b.v0).map(|_| ())?,
            _ => {}
        }
        Ok(GeneratorSpec { family, u, v, branch })
    }

    /// Builds the canonical generator for a lambda profile.
    pub fn from_lambda(family: Family, lambda: &LambdaProfile, branch: Option<Branch>) -> Result<Self> {
        let (u, v) = realize_lambda(lambda)?;
        GeneratorSpec::new(family, u, v, branch)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn u(&self) -> &[u8] {
        &self.u
    }

    pub fn v(&self) -> &[u8] {
        &self.v
    }

    pub fn branch(&self) -> Option<Branch> {
        self.branch
    }

    pub fn runs(&self) -> usize {
        self.family.runs(self.n())
    }

    pub fn factors(&self) -> usize {
        self.family.factors(self.n())
    }

    pub fn lambda(&self) -> LambdaProfile {
        lambda_profile(&frequency_table(&self.u, &self.v))
    }

    /// Same generator data under another family, adjusting the branch pair.
    pub fn with_family(&self, family: Family, branch: Option<Branch>) -> Result<Self> {
        GeneratorSpec::new(family, self.u.clone(), self.v.clone(), branch)
    }

    /// Column labels in design order.
    pub fn labels(&self) -> Vec<String> {
        column_labels(self.family, self.n())
    }
}

/// Column labels of a family: F1–F4, F5 for branched designs, then
/// `Fj1, Fj2` per coordinate. Eighth fractions omit F1.
pub fn column_labels(family: Family, n: usize) -> Vec<String> {
    let first = if family.is_eighth() { 2 } else { 1 };
    let last = if family.is_odd_run() { 5 } else { 4 };
    let mut labels: Vec<String> = (first..=last).map(|k| format!("F{k}")).collect();
    for j in 1..=n {
        labels.push(format!("F{j}1"));
        labels.push(format!("F{j}2"));
    }
    labels
}

/// An explicit two-level design: `N` runs by `q` labelled ±1 columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignMatrix {
    labels: Vec<String>,
    entries: Vec<i8>,
    runs: usize,
}

impl DesignMatrix {
    /// Validates shape and levels. Rows need not be distinct.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<i8>>) -> Result<Self> {
        let q = labels.len();
        let runs = rows.len();
        if runs == 0 || q == 0 {
            return Err(Error::EmptyDesign);
        }
        let mut entries = Vec::with_capacity(runs * q);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != q {
                return Err(Error::RaggedRow {
                    row: r,
                    q,
                    got: row.len(),
                });
            }
            for (c, &value) in row.iter().enumerate() {
                if value != 1 && value != -1 {
                    return Err(Error::NotPlusMinusOne { row: r, col: c, value });
                }
            }
            entries.extend(row);
        }
        Ok(DesignMatrix { labels, entries, runs })
    }

    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn factors(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn row(&self, r: usize) -> &[i8] {
        let q = self.factors();
        &self.entries[r * q..(r + 1) * q]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> + '_ {
        self.entries.chunks_exact(self.factors())
    }

    pub fn column(&self, c: usize) -> Vec<i8> {
        self.rows().map(|row| row[c]).collect()
    }

    pub fn column_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Each row as a bitmask: bit `c` is set iff column `c` is at level −1.
    /// Requires `q ≤ 64`.
    pub fn row_masks(&self) -> Vec<u64> {
        assert!(self.factors() <= 64, "row masks need at most 64 columns");
        self.rows()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &x)| x < 0)
                    .fold(0u64, |m, (c, _)| m | (1 << c))
            })
            .collect()
    }

    pub fn has_distinct_rows(&self) -> bool {
        let mut rows: Vec<&[i8]> = self.rows().collect();
        rows.sort_unstable();
        rows.windows(2).all(|w| w[0] != w[1])
    }

    /// The design with one column removed.
    pub fn without_column(&self, c: usize) -> DesignMatrix {
        let mut labels = self.labels.clone();
        labels.remove(c);
        let entries = self
            .rows()
            .flat_map(|row| row.iter().enumerate().filter(move |(i, _)| *i != c).map(|(_, &x)| x))
            .collect();
        DesignMatrix {
            labels,
            entries,
            runs: self.runs,
        }
    }
}

/// Builds the binary image of the code described by `spec`.
///
/// Row `r` corresponds to `a0·4^n + Σ a_j·4^(n-j)`: `a0` outermost, `a_n`
/// varying fastest.
pub fn build_design(spec: &GeneratorSpec) -> DesignMatrix {
    let n = spec.n();
    let family = spec.family();
    let block = 1usize << (2 * n);
    let runs = family.runs(n);
    let branch = spec.branch().unwrap_or(Branch { u0: 0, v0: 0 });
    let q = family.factors(n);

    let mut entries = Vec::with_capacity(runs * q);
    let mut a = vec![0u8; n];
    for r in 0..runs {
        let a0 = (r / block) as u8;
        let mut rest = r % block;
        for j in (0..n).rev() {
            a[j] = (rest % 4) as u8;
            rest /= 4;
        }
        let au = a0 * branch.u0 + dot(&a, spec.u());
        let av = a0 * branch.v0 + dot(&a, spec.v());
        let (f1, f2) = gray_pair(au);
        let (f3, f4) = gray_pair(av);
        if !family.is_eighth() {
            entries.push(f1);
        }
        entries.extend([f2, f3, f4]);
        if family.is_odd_run() {
            entries.push(gray_pair(a0).1);
        }
        for &aj in &a {
            let (g1, g2) = gray_pair(aj);
            entries.extend([g1, g2]);
        }
    }
    DesignMatrix {
        labels: spec.labels(),
        entries,
        runs,
    }
}

/// `a'u mod 4`.
pub fn dot(a: &[u8], u: &[u8]) -> u8 {
    (a.iter().zip(u).map(|(&x, &y)| x as u32 * y as u32).sum::<u32>() % 4) as u8
}

/// Counts of each `(u_j, v_j)` pattern.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FrequencyTable {
    counts: [[usize; 4]; 4],
}

impl FrequencyTable {
    /// Number of positions with `u_j = k` and `v_j = s`.
    pub fn get(&self, k: u8, s: u8) -> usize {
        self.counts[k as usize][s as usize]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }
}

pub fn frequency_table(u: &[u8], v: &[u8]) -> FrequencyTable {
    let mut counts = [[0usize; 4]; 4];
    for (&k, &s) in u.iter().zip(v) {
        counts[(k % 4) as usize][(s % 4) as usize] += 1;
    }
    FrequencyTable { counts }
}

/// Frequency table of `(u, v)`, validating lengths and digits.
pub fn frequencies(u: &[u8], v: &[u8]) -> Result<FrequencyTable> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { u: u.len(), v: v.len() });
    }
    for &d in u.iter().chain(v) {
        check_digit(d)?;
    }
    Ok(frequency_table(u, v))
}

/// The ten class counts `(λ1, …, λ10)` that determine a design's spectrum.
///
/// Class `i` gathers the `(u_j, v_j)` patterns listed in [`LAMBDA_CLASSES`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaProfile([usize; 10]);

/// `(u, v)` patterns of each lambda class; the first of each is the
/// canonical representative used by [`realize_lambda`].
pub const LAMBDA_CLASSES: [&[(u8, u8)]; 10] = [
    &[(1, 0), (3, 0)],
    &[(0, 1), (0, 3)],
    &[(1, 2), (3, 2)],
    &[(2, 1), (2, 3)],
    &[(1, 1), (3, 3)],
    &[(1, 3), (3, 1)],
    &[(0, 2)],
    &[(2, 0)],
    &[(2, 2)],
    &[(0, 0)],
];

impl LambdaProfile {
    pub fn new(values: [usize; 10]) -> Self {
        LambdaProfile(values)
    }

    /// 1-based accessor matching the usual `λ1 … λ10` numbering.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn values(&self) -> &[usize; 10] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for LambdaProfile {
    /// Ten juxtaposed digits when every part is below 10, otherwise a
    /// comma-separated list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&x| x < 10) {
            for x in self.0 {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for LambdaProfile {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|e| format!("bad lambda part `{p}`: {e}"))
                })
                .collect::<std::result::Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| format!("bad lambda digit `{c}`"))
                })
                .collect::<std::result::Result<_, _>>()?
        };
        let values: [usize; 10] = parts
            .try_into()
            .map_err(|p: Vec<usize>| format!("lambda needs 10 parts, got {}", p.len()))?;
        Ok(LambdaProfile(values))
    }
}

pub fn lambda_profile(f: &FrequencyTable) -> LambdaProfile {
    let mut values = [0usize; 10];
    for (slot, class) in values.iter_mut().zip(LAMBDA_CLASSES) {
        *slot = class.iter().map(|&(k, s)| f.get(k, s)).sum();
    }
    LambdaProfile(values)
}

/// Canonical `(u, v)` with the given lambda profile, class 1 positions first.
pub fn realize_lambda(lambda: &LambdaProfile) -> Result<(Vec<u8>, Vec<u8>)> {
    if lambda.n() == 0 {
        return Err(Error::EmptyLambda);
    }
    let mut u = Vec::with_capacity(lambda.n());
    let mut v = Vec::with_capacity(lambda.n());
    for (&count, class) in lambda.0.iter().zip(LAMBDA_CLASSES) {
        let (k, s) = class[0];
        u.extend(std::iter::repeat_n(k, count));
        v.extend(std::iter::repeat_n(s, count));
    }
    Ok((u, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(family: Family, u: &[u8], v: &[u8], branch: Option<&str>) -> GeneratorSpec {
        GeneratorSpec::new(family, u.to_vec(), v.to_vec(), branch.map(|b| b.parse().unwrap())).unwrap()
    }

    #[test]
    fn zero_generators_give_constant_check_columns() {
        let d = build_design(&spec(Family::SixteenthEven, &[0], &[0], None));
        assert_eq!((d.runs(), d.factors()), (4, 6));
        for c in 0..4 {
            assert!(d.column(c).iter().all(|&x| x == 1));
        }
    }

    #[test]
    fn example_one_shape() {
        let d = build_design(&spec(Family::SixteenthEven, &[2, 1, 1], &[1, 1, 3], None));
        assert_eq!((d.runs(), d.factors()), (64, 10));
        assert_eq!(d.labels()[..4], ["F1", "F2", "F3", "F4"]);
        assert_eq!(d.labels()[4..], ["F11", "F12", "F21", "F22", "F31", "F32"]);
    }

    #[test]
    fn branched_design_matches_per_run_evaluation() {
        let s = spec(Family::SixteenthOdd, &[1, 2], &[2, 1], Some("11"));
        let d = build_design(&s);
        assert_eq!((d.runs(), d.factors()), (32, 9));
        let f5 = d.column(d.column_index("F5").unwrap());
        assert!(f5[..16].iter().all(|&x| x == 1));
        assert!(f5[16..].iter().all(|&x| x == -1));

        // Each run from scratch via the sin/cos form of the Gray map.
        let level = |k: u32, cosine: bool| -> i8 {
            let angle = std::f64::consts::FRAC_PI_4 + std::f64::consts::FRAC_PI_2 * k as f64;
            let x = std::f64::consts::SQRT_2 * if cosine { angle.cos() } else { angle.sin() };
            x.round() as i8
        };
        let mut r = 0;
        for a0 in 0..2u32 {
            for a1 in 0..4u32 {
                for a2 in 0..4u32 {
                    let au = a0 + a1 + 2 * a2;
                    let av = a0 + 2 * a1 + a2;
                    let expected = vec![
                        level(au, false),
                        level(au, true),
                        level(av, false),
                        level(av, true),
                        if a0 == 0 { 1 } else { -1 },
                        level(a1, false),
                        level(a1, true),
                        level(a2, false),
                        level(a2, true),
                    ];
                    assert_eq!(d.row(r), expected.as_slice(), "run {r}");
                    r += 1;
                }
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert_eq!(
            GeneratorSpec::new(Family::SixteenthEven, vec![], vec![], None),
            Err(Error::ZeroLength)
        );
        assert_eq!(
            GeneratorSpec::new(Family::SixteenthEven, vec![1], vec![1], Some(Branch { u0: 1, v0: 1 })),
            Err(Error::UnexpectedBranch {
                family: Family::SixteenthEven
            })
        );
        assert_eq!(
            GeneratorSpec::new(Family::EighthOdd, vec![1], vec![1], None),
            Err(Error::MissingBranch {
                family: Family::EighthOdd
            })
        );
        assert_eq!(
            GeneratorSpec::new(Family::EighthEven, vec![4], vec![1], None),
            Err(Error::InvalidDigit(4))
        );
        assert!(matches!(
            GeneratorSpec::new(Family::EighthEven, vec![1, 2], vec![1], None),
            Err(Error::LengthMismatch { .. })
        ));
        assert!("4".parse::<Branch>().is_err());
        assert!("14".parse::<Branch>().is_err());
        assert_eq!("31".parse::<Branch>(), Ok(Branch { u0: 3, v0: 1 }));
    }

    #[test]
    fn frequency_examples() {
        let f = frequencies(&[2, 1, 1], &[1, 1, 3]).unwrap();
        assert_eq!((f.get(2, 1), f.get(1, 1), f.get(1, 3), f.total()), (1, 1, 1, 3));
        let f = frequencies(&[0, 0], &[0, 0]).unwrap();
        assert_eq!((f.get(0, 0), f.total()), (2, 2));
        let f = frequencies(&[1, 2], &[2, 1]).unwrap();
        assert_eq!((f.get(1, 2), f.get(2, 1), f.total()), (1, 1, 2));
        assert!(frequencies(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_profile(&frequency_table(&[2, 1, 1], &[1, 1, 3]));
        assert_eq!(l.values(), &[0, 0, 0, 1, 1, 1, 0, 0, 0, 0]);
        let l = lambda_profile(&frequency_table(&[0, 0], &[0, 0]));
        assert_eq!(l.values(), &[0, 0, 0, 0, 0, 0, 0, 0, 0, 2]);
        let l = lambda_profile(&frequency_table(&[1, 2], &[2, 1]));
        assert_eq!(l.to_string(), "0011000000");
    }

    #[test]
    fn realize_examples() {
        let l: LambdaProfile = "0001110000".parse().unwrap();
        assert_eq!(realize_lambda(&l).unwrap(), (vec![2, 1, 1], vec![1, 1, 3]));
        let l: LambdaProfile = "0000000003".parse().unwrap();
        assert_eq!(realize_lambda(&l).unwrap(), (vec![0, 0, 0], vec![0, 0, 0]));
        let l: LambdaProfile = "1100000000".parse().unwrap();
        let (u, v) = realize_lambda(&l).unwrap();
        assert_eq!((u.clone(), v.clone()), (vec![1, 0], vec![0, 1]));
        assert_eq!(lambda_profile(&frequency_table(&u, &v)), l);
        assert_eq!(realize_lambda(&LambdaProfile::default()), Err(Error::EmptyLambda));
    }

    #[test]
    fn lambda_string_forms() {
        let wide = LambdaProfile::new([12, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(wide.to_string(), "12,0,0,0,0,0,0,0,0,1");
        assert_eq!(wide.to_string().parse::<LambdaProfile>(), Ok(wide));
        assert!("001".parse::<LambdaProfile>().is_err());
    }

    #[test]
    fn column_deletion_matches_eighth_family() {
        for (family, branch) in [(Family::SixteenthEven, None), (Family::SixteenthOdd, Some("23"))] {
            let s = spec(family, &[1, 3, 2], &[0, 2, 3], branch);
            let full = build_design(&s);
            let eighth = build_design(&s.with_family(family.eighth(), s.branch()).unwrap());
            assert_eq!(full.without_column(0), eighth);
        }
    }
}
