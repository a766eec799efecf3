//! Word-count tables for the branched designs.
//!
//! For a branched design the number of words of a given length and
//! aliasing index is `N / ai²`, where the weight `N` depends on which class
//! the pair `(u0, v0)` falls into. Each table row names the length
//! (`l_i + offset`), the aliasing index, and the weight for every class.

use crate::qc::{Branch, LambdaProfile};
use crate::spectrum::{Rational, WordSpectrum};

use super::{index_constants, inverse_square, l_values, IndexConstants, LValues};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Weight {
    N(i64),
    Half,
    K11,
    K12,
    K21,
    K22,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Index {
    Theta1,
    Theta2,
    One,
    Omega0,
    Omega,
}

/// Rows whose presence depends on whether `λ5 + λ6` is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gate {
    Always,
    /// Only when `λ5 + λ6 = 0` (except for the odd-odd pairs).
    NoDiagonal,
    /// Only when `λ5 + λ6 > 0` (except for the odd-odd pairs).
    Diagonal,
}

struct Row<const C: usize> {
    l: usize,
    offset: usize,
    index: Index,
    gate: Gate,
    weights: [Weight; C],
}

use Weight::{Half as H, K11, K12, K21, K22, N};

macro_rules! row {
    ($l:expr, $off:expr, $idx:ident, $gate:ident, [$($w:expr),* $(,)?]) => {
        Row { l: $l, offset: $off, index: Index::$idx, gate: Gate::$gate, weights: [$($w),*] }
    };
}

/// Column classes of the sixteenth-fraction table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Table1Class {
    C00,
    C01,
    C02,
    C10,
    C11,
    C12,
    C13,
    C20,
    C21,
    C22,
}

impl Table1Class {
    pub const ALL: [Table1Class; 10] = [
        Table1Class::C00,
        Table1Class::C01,
        Table1Class::C02,
        Table1Class::C10,
        Table1Class::C11,
        Table1Class::C12,
        Table1Class::C13,
        Table1Class::C20,
        Table1Class::C21,
        Table1Class::C22,
    ];

    /// 03→01, 30→10, 33→11, 32→12, 31→13, 23→21.
    pub fn of(b: Branch) -> Table1Class {
        use Table1Class::*;
        match (b.u0, b.v0) {
            (0, 0) => C00,
            (0, 1) | (0, 3) => C01,
            (0, 2) => C02,
            (1, 0) | (3, 0) => C10,
            (1, 1) | (3, 3) => C11,
            (1, 2) | (3, 2) => C12,
            (1, 3) | (3, 1) => C13,
            (2, 0) => C20,
            (2, 1) | (2, 3) => C21,
            (2, 2) => C22,
            _ => unreachable!("branch digits are validated"),
        }
    }

    /// The class representative (first pair listed for the class).
    pub fn representative(self) -> Branch {
        let i = self as usize;
        let code = [0, 1, 2, 10, 11, 12, 13, 20, 21, 22][i];
        Branch {
            u0: code / 10,
            v0: code % 10,
        }
    }
}

/// Column classes of the eighth-fraction table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Table2Class {
    C00,
    C01,
    C02,
    C10,
    C11,
    C12,
    C13,
    C20,
    C21,
    C22,
    C30,
    C31,
    C32,
    C33,
}

impl Table2Class {
    pub const ALL: [Table2Class; 14] = [
        Table2Class::C00,
        Table2Class::C01,
        Table2Class::C02,
        Table2Class::C10,
        Table2Class::C11,
        Table2Class::C12,
        Table2Class::C13,
        Table2Class::C20,
        Table2Class::C21,
        Table2Class::C22,
        Table2Class::C30,
        Table2Class::C31,
        Table2Class::C32,
        Table2Class::C33,
    ];

    /// 03→01 and 23→21; every other pair is its own class.
    pub fn of(b: Branch) -> Table2Class {
        use Table2Class::*;
        match (b.u0, b.v0) {
            (0, 0) => C00,
            (0, 1) | (0, 3) => C01,
            (0, 2) => C02,
            (1, 0) => C10,
            (1, 1) => C11,
            (1, 2) => C12,
            (1, 3) => C13,
            (2, 0) => C20,
            (2, 1) | (2, 3) => C21,
            (2, 2) => C22,
            (3, 0) => C30,
            (3, 1) => C31,
            (3, 2) => C32,
            (3, 3) => C33,
            _ => unreachable!("branch digits are validated"),
        }
    }

    pub fn representative(self) -> Branch {
        let code = [0, 1, 2, 10, 11, 12, 13, 20, 21, 22, 30, 31, 32, 33][self as usize];
        Branch {
            u0: code / 10,
            v0: code % 10,
        }
    }
}

#[rustfmt::skip]
const TABLE1: [Row<10>; 20] = [
    //                            00    01    02    10    11    12    13    20    21    22
    row!(1, 1, Theta1, Always,  [N(2), N(2), N(2), N(1), N(1), N(1), N(1), N(0), N(0), N(0)]),
    row!(1, 2, Theta1, Always,  [N(0), N(0), N(0), N(1), N(1), N(1), N(1), N(2), N(2), N(2)]),
    row!(2, 1, Theta2, Always,  [N(2), N(1), N(0), N(2), N(1), N(0), N(1), N(2), N(1), N(0)]),
    row!(2, 2, Theta2, Always,  [N(0), N(1), N(2), N(0), N(1), N(2), N(1), N(0), N(1), N(2)]),
    row!(3, 3, Theta1, Always,  [N(2), N(0), N(2), N(1), N(1), N(1), N(1), N(0), N(2), N(0)]),
    row!(3, 4, Theta1, Always,  [N(0), N(2), N(0), N(1), N(1), N(1), N(1), N(2), N(0), N(2)]),
    row!(4, 3, Theta2, Always,  [N(2), N(1), N(0), N(0), N(1), N(2), N(1), N(2), N(1), N(0)]),
    row!(4, 4, Theta2, Always,  [N(0), N(1), N(2), N(2), N(1), N(0), N(1), N(0), N(1), N(2)]),
    row!(5, 2, One, Always,     [N(1), N(1), N(1), N(0), N(0), N(0), N(0), N(1), N(1), N(1)]),
    row!(5, 3, One, Always,     [N(0), N(0), N(0), N(1), N(1), N(1), N(1), N(0), N(0), N(0)]),
    row!(6, 2, One, Always,     [N(1), N(0), N(1), N(1), N(0), N(1), N(0), N(1), N(0), N(1)]),
    row!(6, 3, One, Always,     [N(0), N(1), N(0), N(0), N(1), N(0), N(1), N(0), N(1), N(0)]),
    row!(7, 4, One, Always,     [N(1), N(0), N(1), N(0), N(1), N(0), N(1), N(1), N(0), N(1)]),
    row!(7, 5, One, Always,     [N(0), N(1), N(0), N(1), N(0), N(1), N(0), N(0), N(1), N(0)]),
    row!(8, 2, Omega0, NoDiagonal, [N(4), N(2), N(0), N(2), N(0), N(2), N(0), N(0), N(2), N(4)]),
    row!(8, 3, Omega0, NoDiagonal, [N(0), N(2), N(4), N(2), N(0), N(2), N(0), N(4), N(2), N(0)]),
    row!(9, 2, Omega, Diagonal,    [N(2), N(1), N(0), N(1), N(0), N(1), N(2), N(0), N(1), N(2)]),
    row!(9, 3, Omega, Diagonal,    [N(0), N(1), N(2), N(1), N(2), N(1), N(0), N(2), N(1), N(0)]),
    row!(10, 2, Omega, Diagonal,   [N(2), N(1), N(0), N(1), N(2), N(1), N(0), N(0), N(1), N(2)]),
    row!(10, 3, Omega, Diagonal,   [N(0), N(1), N(2), N(1), N(0), N(1), N(2), N(2), N(1), N(0)]),
];

#[rustfmt::skip]
const TABLE2: [Row<14>; 14] = [
    //                           00    01    02    10   11   12   13   20    21    22    30   31   32   33
    row!(1, 1, Theta1, Always, [N(1), N(1), N(1), K11, K11, K11, K11, N(0), N(0), N(0), K12, K12, K12, K12]),
    row!(1, 2, Theta1, Always, [N(0), N(0), N(0), K12, K12, K12, K12, N(1), N(1), N(1), K11, K11, K11, K11]),
    row!(2, 1, Theta2, Always, [N(2), N(1), N(0), N(2), N(1), N(0), N(1), N(2), N(1), N(0), N(2), N(1), N(0), N(1)]),
    row!(2, 2, Theta2, Always, [N(0), N(1), N(2), N(0), N(1), N(2), N(1), N(0), N(1), N(2), N(0), N(1), N(2), N(1)]),
    row!(3, 3, Theta1, Always, [N(1), N(0), N(1), K11, K12, K11, K12, N(0), N(1), N(0), K12, K11, K12, K11]),
    row!(3, 4, Theta1, Always, [N(0), N(1), N(0), K12, K11, K12, K11, N(1), N(0), N(1), K11, K12, K11, K12]),
    row!(6, 2, One, Always,    [N(1), N(0), N(1), N(1), N(0), N(1), N(0), N(1), N(0), N(1), N(1), N(0), N(1), N(0)]),
    row!(6, 3, One, Always,    [N(0), N(1), N(0), N(0), N(1), N(0), N(1), N(0), N(1), N(0), N(0), N(1), N(0), N(1)]),
    row!(8, 2, Omega0, NoDiagonal, [N(2), N(1), N(0), K21, N(0), K22, N(0), N(0), N(1), N(2), K22, N(0), K21, N(0)]),
    row!(8, 3, Omega0, NoDiagonal, [N(0), N(1), N(2), K22, N(0), K21, N(0), N(2), N(1), N(0), K21, N(0), K22, N(0)]),
    row!(9, 2, Omega, Diagonal,    [N(1), H, N(0), H, N(0), H, N(1), N(0), H, N(1), H, N(1), H, N(0)]),
    row!(9, 3, Omega, Diagonal,    [N(0), H, N(1), H, N(1), H, N(0), N(1), H, N(0), H, N(0), H, N(1)]),
    row!(10, 2, Omega, Diagonal,   [N(1), H, N(0), H, N(1), H, N(0), N(0), H, N(1), H, N(0), H, N(1)]),
    row!(10, 3, Omega, Diagonal,   [N(0), H, N(1), H, N(0), H, N(1), N(1), H, N(0), H, N(1), H, N(0)]),
];

fn weight_value(w: Weight, c: &IndexConstants) -> Rational {
    match w {
        Weight::N(k) => Rational::from_integer(k),
        Weight::Half => Rational::new(1, 2),
        Weight::K11 => c.k11,
        Weight::K12 => c.k12,
        Weight::K21 => c.k21,
        Weight::K22 => c.k22,
    }
}

fn evaluate<const C: usize>(rows: &[Row<C>], column: usize, lambda: &LambdaProfile, branch: Branch) -> WordSpectrum {
    let l: LValues = l_values(lambda);
    let c = index_constants(lambda, Some(branch));
    let b = c.branch.expect("branch constants requested");
    let diagonal = lambda.get(5) + lambda.get(6) > 0;
    // both gated groups are present for (odd, odd) pairs
    let odd_odd = branch.u0 % 2 == 1 && branch.v0 % 2 == 1;

    let groups = rows.iter().filter_map(|row| {
        let active = match row.gate {
            Gate::Always => true,
            Gate::NoDiagonal => odd_odd || !diagonal,
            Gate::Diagonal => odd_odd || diagonal,
        };
        if !active {
            return None;
        }
        let weight = weight_value(row.weights[column], &c);
        if weight == Rational::from_integer(0) {
            return None;
        }
        let ai = match row.index {
            Index::Theta1 => b.theta1,
            Index::Theta2 => b.theta2,
            Index::One => Rational::from_integer(1),
            Index::Omega0 => b.omega0,
            Index::Omega => b.omega,
        };
        let count = weight * Rational::from_integer(inverse_square(ai) as i64);
        assert!(
            count.is_integer(),
            "fractional word count {count} for row l{}+{}",
            row.l,
            row.offset
        );
        Some((l.get(row.l) + row.offset, ai, *count.numer() as u64))
    });
    WordSpectrum::from_groups(groups.collect::<Vec<_>>())
}

/// Closed-form spectrum of the branched sixteenth-fraction design.
pub fn table1_spectrum(lambda: &LambdaProfile, branch: Branch) -> WordSpectrum {
    evaluate(&TABLE1, Table1Class::of(branch) as usize, lambda, branch)
}

/// Closed-form spectrum of the branched eighth-fraction design.
pub fn table2_spectrum(lambda: &LambdaProfile, branch: Branch) -> WordSpectrum {
    evaluate(&TABLE2, Table2Class::of(branch) as usize, lambda, branch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{int_wlp, ratio, Resolution};

    fn lambda(s: &str) -> LambdaProfile {
        s.parse().unwrap()
    }

    fn branch(s: &str) -> Branch {
        s.parse().unwrap()
    }

    #[test]
    fn example_two() {
        let half = ratio(1, 2);
        let one = ratio(1, 1);
        let s = table1_spectrum(&lambda("0011000000"), branch("11"));
        assert_eq!(
            s,
            WordSpectrum::from_groups([(4, half, 24), (5, half, 24), (5, one, 2), (8, one, 1)])
        );
        let (r, wlp) = s.metrics(9).unwrap();
        assert_eq!(r, Resolution::Finite(ratio(9, 2)));
        assert_eq!(wlp, int_wlp(&[0, 0, 0, 6, 8, 0, 0, 1, 0]));
    }

    #[test]
    fn sixteenth_odd_n4() {
        let (r, wlp) = table1_spectrum(&lambda("0011110000"), branch("22"))
            .metrics(13)
            .unwrap();
        assert_eq!(r, Resolution::Finite(ratio(13, 2)));
        assert_eq!(wlp, int_wlp(&[0, 0, 0, 0, 0, 4, 8, 3, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn eighth_odd_examples() {
        let (r, wlp) = table2_spectrum(&lambda("0010110000"), branch("21"))
            .metrics(10)
            .unwrap();
        assert_eq!(r, Resolution::Finite(ratio(11, 2)));
        assert_eq!(wlp, int_wlp(&[0, 0, 0, 0, 3, 3, 1, 0, 0, 0]));

        let (r, wlp) = table2_spectrum(&lambda("0020220000"), branch("20"))
            .metrics(16)
            .unwrap();
        assert_eq!(r, Resolution::Finite(ratio(71, 8)));
        assert_eq!(wlp, int_wlp(&[0, 0, 0, 0, 0, 0, 0, 1, 4, 2, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn class_maps_cover_all_pairs() {
        for b in Branch::all() {
            let c1 = Table1Class::of(b);
            assert_eq!(Table1Class::of(c1.representative()), c1);
            let c2 = Table2Class::of(b);
            assert_eq!(Table2Class::of(c2.representative()), c2);
        }
        assert_eq!(
            Branch::all()
                .map(Table1Class::of)
                .collect::<std::collections::BTreeSet<_>>()
                .len(),
            10
        );
        assert_eq!(
            Branch::all()
                .map(Table2Class::of)
                .collect::<std::collections::BTreeSet<_>>()
                .len(),
            14
        );
    }
}
