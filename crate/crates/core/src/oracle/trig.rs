//! Aliasing indices from the sine/cosine form of the Gray map.
//!
//! Each level of a check column is `√2·sin(π/4 + πk/2)` or
//! `√2·cos(π/4 + πk/2)` for a Z4 value `k`. The aliasing index of a column
//! collection is then an average of products of such terms over all
//! `a ∈ Z4ⁿ`, evaluated here directly from `(u, v)` without materializing
//! the design. Since `√2·sin` and `√2·cos` only take the values ±1, the
//! sums are exact dyadic rationals.

use crate::error::{Error, Result};
use crate::qc::{Family, GeneratorSpec};
use crate::spectrum::Rational;

/// `√2·sin(π/4 + πk/2)` for `k = 0..4`.
pub const SQRT2_SIN: [i64; 4] = [1, 1, -1, -1];
/// `√2·cos(π/4 + πk/2)` for `k = 0..4`.
pub const SQRT2_COS: [i64; 4] = [1, -1, -1, 1];

/// Which columns a collection touches, in the check-column / coordinate form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SubsetType {
    /// Membership of F1, F2, F3, F4.
    pub x: [bool; 4],
    /// Membership of F5, for branched designs.
    pub x5: Option<bool>,
    /// Coordinates (1-based) with both `Fj1` and `Fj2`.
    pub s1: Vec<usize>,
    /// Coordinates with `Fj2` only.
    pub s2: Vec<usize>,
    /// Coordinates with `Fj1` only.
    pub s3: Vec<usize>,
}

impl SubsetType {
    /// The type as a bit string, `x1x2x3x4`.
    pub fn x_bits(&self) -> String {
        self.x.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Number of columns in the collection.
    pub fn len(&self) -> usize {
        self.x.iter().filter(|&&b| b).count()
            + usize::from(self.x5 == Some(true))
            + 2 * self.s1.len()
            + self.s2.len()
            + self.s3.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Column {
    Check(usize),
    Coordinate { j: usize, half: usize },
}

fn parse_label(label: &str) -> Option<Column> {
    let digits = label.strip_prefix('F')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() == 1 {
        let k: usize = digits.parse().ok()?;
        return (1..=5).contains(&k).then_some(Column::Check(k));
    }
    let (j, half) = digits.split_at(digits.len() - 1);
    if j.starts_with('0') {
        return None;
    }
    let half: usize = half.parse().ok()?;
    let j: usize = j.parse().ok()?;
    (half == 1 || half == 2).then_some(Column::Coordinate { j, half })
}

/// Classifies the columns named in `subset` against the design's labels.
pub fn classify_subset<S: AsRef<str>>(labels: &[String], subset: &[S]) -> Result<SubsetType> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let has_f5 = labels.iter().any(|l| l == "F5");
    let mut t = SubsetType {
        x5: has_f5.then_some(false),
        ..SubsetType::default()
    };
    let mut halves: std::collections::BTreeMap<usize, [bool; 2]> = Default::default();
    for name in subset {
        let name = name.as_ref();
        if !labels.iter().any(|l| l == name) {
            return Err(Error::UnknownLabel(name.to_string()));
        }
        match parse_label(name).ok_or_else(|| Error::UnknownLabel(name.to_string()))? {
            Column::Check(5) => t.x5 = Some(true),
            Column::Check(k) => t.x[k - 1] = true,
            Column::Coordinate { j, half } => halves.entry(j).or_default()[half - 1] = true,
        }
    }
    for (j, h) in halves {
        match h {
            [true, true] => t.s1.push(j),
            [false, true] => t.s2.push(j),
            [true, false] => t.s3.push(j),
            [false, false] => unreachable!(),
        }
    }
    Ok(t)
}

/// Classifies a column-subset bitmask (bit `c` = column `c` of `labels`).
pub fn classify_mask(labels: &[String], mask: u64) -> Result<SubsetType> {
    let names: Vec<&str> = labels
        .iter()
        .enumerate()
        .filter(|(c, _)| mask >> c & 1 == 1)
        .map(|(_, l)| l.as_str())
        .collect();
    classify_subset(labels, &names)
}

/// Sum over all `a ∈ Z4ⁿ` of the product of trigonometric factors picked
/// out by `t`, with `(shift_u, shift_v)` added to `a'u` and `a'v`.
///
/// Each factor is `(±1)/√2`; together with the `2^((m+X)/2)` scaling the
/// `√2` powers cancel and every term is `±1 / 4ⁿ`.
fn phi_sum(t: &SubsetType, u: &[u8], v: &[u8], shift_u: u8, shift_v: u8) -> Rational {
    let n = u.len();
    let trig_factors = t.x.iter().filter(|&&b| b).count() + 2 * t.s1.len() + t.s2.len() + t.s3.len();
    // exponent of √2 in the scale factor 2^((m+X)/2 − 2n)
    let scale_sqrt2 = trig_factors as i64 - 4 * n as i64;
    // every factor contributes 1/√2
    let total_sqrt2 = scale_sqrt2 - trig_factors as i64;
    debug_assert!(total_sqrt2 % 2 == 0);
    let denom = 1i64 << (-total_sqrt2 / 2);

    let mut a = vec![0u8; n];
    let mut sum = 0i64;
    for idx in 0..1usize << (2 * n) {
        let mut rest = idx;
        for slot in a.iter_mut().rev() {
            *slot = (rest % 4) as u8;
            rest /= 4;
        }
        let au =
            ((shift_u as usize + a.iter().zip(u).map(|(&x, &y)| x as usize * y as usize).sum::<usize>()) % 4) as usize;
        let av =
            ((shift_v as usize + a.iter().zip(v).map(|(&x, &y)| x as usize * y as usize).sum::<usize>()) % 4) as usize;
        let mut term = 1i64;
        if t.x[0] {
            term *= SQRT2_SIN[au];
        }
        if t.x[1] {
            term *= SQRT2_COS[au];
        }
        if t.x[2] {
            term *= SQRT2_SIN[av];
        }
        if t.x[3] {
            term *= SQRT2_COS[av];
        }
        for &j in &t.s1 {
            let k = a[j - 1] as usize;
            term *= SQRT2_SIN[k] * SQRT2_COS[k];
        }
        for &j in &t.s2 {
            term *= SQRT2_COS[a[j - 1] as usize];
        }
        for &j in &t.s3 {
            term *= SQRT2_SIN[a[j - 1] as usize];
        }
        sum += term;
    }
    Rational::new(sum, denom)
}

fn check_coordinates(t: &SubsetType, n: usize) -> Result<()> {
    for &j in t.s1.iter().chain(&t.s2).chain(&t.s3) {
        if j == 0 || j > n {
            return Err(Error::UnknownLabel(format!("F{j}?")));
        }
    }
    Ok(())
}

/// Signed `V(x)` for an unbranched design; `|V(x)|` is the aliasing index
/// of the collection.
pub fn trig_v(t: &SubsetType, spec: &GeneratorSpec) -> Result<Rational> {
    if spec.family().is_odd_run() {
        return Err(Error::WrongFamily {
            expected: "unbranched",
            family: spec.family(),
        });
    }
    check_coordinates(t, spec.n())?;
    Ok(phi_sum(t, spec.u(), spec.v(), 0, 0))
}

/// `(G(x), H(x))` for a branched design: half-sums over the `a0 = 0` and
/// `a0 = 1` runs respectively.
pub fn trig_gh_parts(t: &SubsetType, spec: &GeneratorSpec) -> Result<(Rational, Rational)> {
    let branch = match (spec.family(), spec.branch()) {
        (Family::SixteenthOdd | Family::EighthOdd, Some(b)) => b,
        (family, _) => {
            return Err(Error::WrongFamily {
                expected: "branched",
                family,
            })
        }
    };
    check_coordinates(t, spec.n())?;
    let half = Rational::new(1, 2);
    let g = half * phi_sum(t, spec.u(), spec.v(), 0, 0);
    let h = half * phi_sum(t, spec.u(), spec.v(), branch.u0, branch.v0);
    Ok((g, h))
}

/// `|G(x) + (−1)^x5 · H(x)|`, the aliasing index of the collection in a
/// branched design.
pub fn trig_gh(t: &SubsetType, spec: &GeneratorSpec) -> Result<Rational> {
    let (g, h) = trig_gh_parts(t, spec)?;
    let value = if t.x5 == Some(true) { g - h } else { g + h };
    Ok(num_traits::Signed::abs(&value))
}

/// Aliasing index of `t` in the design described by `spec`, whichever
/// family it belongs to.
pub fn trig_aliasing(t: &SubsetType, spec: &GeneratorSpec) -> Result<Rational> {
    if spec.family().is_odd_run() {
        trig_gh(t, spec)
    } else {
        trig_v(t, spec).map(|v| num_traits::Signed::abs(&v))
    }
}
