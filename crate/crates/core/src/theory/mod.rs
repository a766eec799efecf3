//! Closed-form word spectra as functions of the lambda profile.
//!
//! The spectrum of every design family depends on `(u, v)` only through
//! the ten class counts of [`LambdaProfile`] (and on `(u0, v0)` for the
//! branched families). This module turns those counts into word lengths
//! ([`LValues`]), aliasing indices ([`IndexConstants`]) and finally full
//! spectra, without touching a design matrix.

mod bounds;
mod tables;
mod theorem;

pub use bounds::projectivity_bound;
pub use tables::{table1_spectrum, table2_spectrum, Table1Class, Table2Class};
pub use theorem::{theorem1_words, theorem2_spectrum, theorem3_spectrum, WordClassReport, ALL_TYPES};

use crate::error::{Error, Result};
use crate::qc::{Branch, Family, LambdaProfile};
use crate::spectrum::{Rational, Resolution, WordSpectrum};

/// The ten length offsets `(l1, …, l10)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LValues([usize; 10]);

impl LValues {
    /// 1-based accessor.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn values(&self) -> &[usize; 10] {
        &self.0
    }
}

pub fn l_values(lambda: &LambdaProfile) -> LValues {
    let l = |i: usize| lambda.get(i);
    let odd13 = l(1) + l(3) + l(5) + l(6);
    let odd24 = l(2) + l(4) + l(5) + l(6);
    let s1234 = l(1) + l(2) + l(3) + l(4);
    LValues([
        2 * (l(4) + l(8) + l(9)) + odd13,
        2 * (l(3) + l(7) + l(9)) + odd24,
        2 * (l(2) + l(8) + l(9)) + odd13,
        2 * (l(1) + l(7) + l(9)) + odd24,
        2 * odd13,
        2 * odd24,
        2 * s1234,
        2 * (l(7) + l(8)) + s1234,
        2 * (l(5) + l(7) + l(8)) + s1234,
        2 * (l(6) + l(7) + l(8)) + s1234,
    ])
}

/// `1 / 2^⌊k/2⌋` for a nonnegative integer `k`.
pub(crate) fn halving(k: usize) -> Rational {
    Rational::new(1, 1i64 << (k / 2))
}

/// Indicators and dyadic constants that depend on `(u0, v0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BranchConstants {
    pub delta1: u8,
    pub delta2: u8,
    pub eps1: u8,
    pub eps2: u8,
    pub eps: u8,
    pub theta1: Rational,
    pub theta2: Rational,
    pub omega1: Rational,
    pub omega2: Rational,
    pub omega0: Rational,
    pub omega: Rational,
}

/// Aliasing-index constants of a lambda profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexConstants {
    pub rho1: Rational,
    pub rho2: Rational,
    pub xi1: Rational,
    pub xi2: Rational,
    pub xi: Rational,
    /// Present when a branch pair was supplied.
    pub branch: Option<BranchConstants>,
    pub k11: Rational,
    pub k12: Rational,
    pub k21: Rational,
    pub k22: Rational,
}

pub fn index_constants(lambda: &LambdaProfile, branch: Option<Branch>) -> IndexConstants {
    let l = |i: usize| lambda.get(i);
    let s13 = l(1) + l(3);
    let s24 = l(2) + l(4);
    let s56 = l(5) + l(6);
    let half = Rational::new(1, 2);
    let one = Rational::from_integer(1);

    let branch = branch.map(|b| {
        let odd = |d: u8| u8::from(d % 2 == 1);
        let delta1 = odd(b.u0);
        let delta2 = odd(b.v0);
        // u0 odd with v0 even, and the mirror case
        let eps1 = u8::from(b.u0 % 2 == 1 && b.v0 % 2 == 0);
        let eps2 = u8::from(b.u0 % 2 == 0 && b.v0 % 2 == 1);
        let eps = eps1 + eps2;
        let omega1 = halving(s13 + eps1 as usize);
        let omega2 = halving(s24 + eps2 as usize);
        BranchConstants {
            delta1,
            delta2,
            eps1,
            eps2,
            eps,
            theta1: halving(s13 + s56 + delta1 as usize),
            theta2: halving(s24 + s56 + delta2 as usize),
            omega1,
            omega2,
            omega0: omega1 * omega2,
            omega: halving(s13 + s24 + eps as usize + 1),
        }
    });

    // the split between the two theta1 lengths also depends on lambda5 + lambda6
    let k11 = if s13 + s56 > 0 { half } else { Rational::from_integer(0) };
    let k21 = if s13 + s56 > 0 { one } else { Rational::from_integer(0) };
    IndexConstants {
        rho1: halving(s13 + s56),
        rho2: halving(s24 + s56),
        xi1: halving(s13),
        xi2: halving(s24),
        xi: halving(s13 + s24 + 1),
        branch,
        k11,
        k12: one - k11,
        k21,
        k22: Rational::from_integer(2) - k21,
    }
}

/// `1 / ai²` for a dyadic aliasing index, as a word count.
pub(crate) fn inverse_square(ai: Rational) -> u64 {
    let inv = ai.recip();
    assert!(inv.is_integer(), "aliasing index {ai} is not a unit fraction");
    let k = *inv.numer() as u64;
    k * k
}

/// Closed-form spectrum of a design family from its lambda profile.
pub fn theory_spectrum(family: Family, lambda: &LambdaProfile, branch: Option<Branch>) -> Result<WordSpectrum> {
    match (family, branch) {
        (Family::SixteenthEven, None) => Ok(theorem2_spectrum(lambda)),
        (Family::EighthEven, None) => Ok(theorem3_spectrum(lambda)),
        (Family::SixteenthOdd, Some(b)) => Ok(table1_spectrum(lambda, b)),
        (Family::EighthOdd, Some(b)) => Ok(table2_spectrum(lambda, b)),
        (family, None) => Err(Error::MissingBranch { family }),
        (family, Some(_)) => Err(Error::UnexpectedBranch { family }),
    }
}

/// Resolution and WLP from the closed-form spectrum.
pub fn theory_metrics(
    family: Family,
    lambda: &LambdaProfile,
    branch: Option<Branch>,
) -> Result<(Resolution, Vec<Rational>)> {
    if lambda.n() == 0 {
        return Err(Error::EmptyLambda);
    }
    theory_spectrum(family, lambda, branch)?.metrics(family.factors(lambda.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::ratio;

    fn lambda(s: &str) -> LambdaProfile {
        s.parse().unwrap()
    }

    #[test]
    fn l_values_examples() {
        assert_eq!(
            l_values(&lambda("0001110000")).values(),
            &[4, 3, 2, 3, 4, 6, 2, 1, 3, 3]
        );
        assert_eq!(
            l_values(&lambda("0011000000")).values(),
            &[3, 3, 1, 1, 2, 2, 4, 2, 2, 2]
        );
        assert_eq!(l_values(&lambda("0000000004")).values(), &[0; 10]);
    }

    #[test]
    fn constants_examples() {
        let c = index_constants(&lambda("0001110000"), None);
        assert_eq!((c.rho1, c.rho2, c.xi), (ratio(1, 2), ratio(1, 2), ratio(1, 2)));
        assert!(c.branch.is_none());

        let c = index_constants(&lambda("0011000000"), Some(Branch { u0: 1, v0: 1 }));
        let b = c.branch.unwrap();
        assert_eq!(
            (b.theta1, b.theta2, b.omega0, b.omega),
            (ratio(1, 2), ratio(1, 2), ratio(1, 1), ratio(1, 2))
        );
        assert_eq!((b.delta1, b.delta2, b.eps), (1, 1, 0));

        let c = index_constants(&lambda("0000000002"), None);
        let one = ratio(1, 1);
        assert_eq!([c.rho1, c.rho2, c.xi1, c.xi2, c.xi], [one; 5]);
    }

    #[test]
    fn branch_indicators() {
        let lam = lambda("1000000000");
        for b in Branch::all() {
            let k = index_constants(&lam, Some(b)).branch.unwrap();
            let code = b.u0 * 10 + b.v0;
            assert_eq!(k.eps1 == 1, [10, 12, 30, 32].contains(&code), "{b}");
            assert_eq!(k.eps2 == 1, [1, 3, 21, 23].contains(&code), "{b}");
            assert_eq!(k.delta1 == 1, b.u0 == 1 || b.u0 == 3);
            assert_eq!(k.delta2 == 1, b.v0 == 1 || b.v0 == 3);
        }
    }

    #[test]
    fn k_constants() {
        let c = index_constants(&lambda("0000110000"), None);
        assert_eq!(
            (c.k11, c.k12, c.k21, c.k22),
            (ratio(1, 2), ratio(1, 2), ratio(1, 1), ratio(1, 1))
        );
        let c = index_constants(&lambda("0100000000"), None);
        assert_eq!(
            (c.k11, c.k12, c.k21, c.k22),
            (ratio(0, 1), ratio(1, 1), ratio(0, 1), ratio(2, 1))
        );
        let c = index_constants(&lambda("0010000000"), None);
        assert_eq!((c.k11, c.k12), (ratio(1, 2), ratio(1, 2)));
    }

    #[test]
    fn dispatch_guards() {
        let lam = lambda("0011000000");
        assert!(theory_spectrum(Family::SixteenthOdd, &lam, None).is_err());
        assert!(theory_spectrum(Family::EighthEven, &lam, Some(Branch { u0: 0, v0: 0 })).is_err());
        assert_eq!(
            theory_metrics(Family::EighthEven, &LambdaProfile::default(), None),
            Err(Error::EmptyLambda)
        );
    }
}
