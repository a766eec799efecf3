//! Published optima and regular minimum-aberration comparison values.
//!
//! Regular-design values are constants taken from the published tables,
//! not computed. The QC entries are what [`super::reproduce_table`]
//! checks its search results against.

use crate::qc::Family;
use crate::spectrum::Rational;

/// The four reproducible tables: optima (T3 sixteenth, T4 eighth) and
/// their projectivities (T5 sixteenth, T6 eighth).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableId {
    T3,
    T4,
    T5,
    T6,
}

impl TableId {
    pub const ALL: [TableId; 4] = [TableId::T3, TableId::T4, TableId::T5, TableId::T6];

    pub fn number(self) -> u8 {
        match self {
            TableId::T3 => 3,
            TableId::T4 => 4,
            TableId::T5 => 5,
            TableId::T6 => 6,
        }
    }

    pub fn from_number(k: u8) -> Option<TableId> {
        TableId::ALL.into_iter().find(|t| t.number() == k)
    }

    pub fn is_eighth(self) -> bool {
        matches!(self, TableId::T4 | TableId::T6)
    }

    pub fn is_projectivity(self) -> bool {
        matches!(self, TableId::T5 | TableId::T6)
    }
}

/// How the regular minimum-aberration design's WLP compares with the QC optimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegularComparison {
    Same,
    /// The regular design has smaller aberration.
    Better,
}

/// The regular minimum-aberration design of the same size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegularReference {
    pub resolution: Rational,
    pub wlp: RegularComparison,
    pub projectivity: usize,
}

/// One published optimum with its regular counterpart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReferenceRow {
    pub family: Family,
    pub n: usize,
    pub lambda: &'static str,
    pub branch: Option<&'static str>,
    /// `(numerator, denominator)`.
    pub resolution: (i64, i64),
    /// `A_4, A_5, …, A_q`.
    pub wlp_from_a4: &'static [i64],
    pub projectivity: usize,
    pub regular_resolution: i64,
    pub regular_wlp: RegularComparison,
    pub regular_projectivity: usize,
}

impl ReferenceRow {
    pub fn resolution(&self) -> Rational {
        Rational::new(self.resolution.0, self.resolution.1)
    }

    /// `A_1, …, A_q` with the three leading zeros restored.
    pub fn wlp(&self) -> Vec<Rational> {
        [0, 0, 0]
            .iter()
            .chain(self.wlp_from_a4)
            .map(|&a| Rational::from_integer(a))
            .collect()
    }

    pub fn regular(&self) -> RegularReference {
        RegularReference {
            resolution: Rational::from_integer(self.regular_resolution),
            wlp: self.regular_wlp,
            projectivity: self.regular_projectivity,
        }
    }

    pub fn design_label(&self) -> String {
        self.family.design_label(self.n)
    }
}

use Family::*;
use RegularComparison::*;

macro_rules! rows {
    ($( $family:ident $n:literal $lambda:literal $branch:expr, ($rn:literal / $rd:literal), [$($a:literal),*], $p:literal ; $rr:literal $rw:ident $rp:literal )*) => {
        [$(ReferenceRow {
            family: $family,
            n: $n,
            lambda: $lambda,
            branch: $branch,
            resolution: ($rn, $rd),
            wlp_from_a4: &[$($a),*],
            projectivity: $p,
            regular_resolution: $rr,
            regular_wlp: $rw,
            regular_projectivity: $rp,
        }),*]
    };
}

#[rustfmt::skip]
const SIXTEENTH: [ReferenceRow; 7] = rows![
    SixteenthEven 2 "0011000000" None,       (4 / 1),  [14, 0, 0, 0, 1],                  3 ; 4 Same 3
    SixteenthOdd  2 "0011000000" Some("11"), (9 / 2),  [6, 8, 0, 0, 1, 0],                4 ; 4 Same 3
    SixteenthEven 3 "0001110000" None,       (9 / 2),  [2, 8, 4, 0, 1, 0, 0],             5 ; 4 Same 3
    SixteenthOdd  3 "0001110000" Some("12"), (11 / 2), [0, 6, 6, 2, 1, 0, 0, 0],          6 ; 5 Same 4
    SixteenthEven 4 "0011110000" None,       (13 / 2), [0, 0, 12, 0, 3, 0, 0, 0, 0],      7 ; 6 Same 5
    SixteenthOdd  4 "0011110000" Some("22"), (13 / 2), [0, 0, 4, 8, 3, 0, 0, 0, 0, 0],    7 ; 6 Same 5
    SixteenthEven 5 "1011110000" None,       (13 / 2), [0, 0, 2, 8, 3, 0, 2, 0, 0, 0, 0], 7 ; 7 Better 6
];

#[rustfmt::skip]
const EIGHTH: [ReferenceRow; 7] = rows![
    EighthEven 2 "0011000000" None,       (4 / 1),  [7, 0, 0, 0],                   3 ; 4 Same 3
    EighthOdd  2 "0011000000" Some("11"), (9 / 2),  [3, 4, 0, 0, 0],                4 ; 4 Same 3
    EighthEven 3 "0010110000" None,       (9 / 2),  [1, 4, 2, 0, 0, 0],             5 ; 4 Same 3
    EighthOdd  3 "0010110000" Some("21"), (11 / 2), [0, 3, 3, 1, 0, 0, 0],          6 ; 5 Same 4
    EighthEven 4 "0011110000" None,       (13 / 2), [0, 0, 6, 0, 1, 0, 0, 0],       7 ; 6 Same 5
    EighthOdd  4 "0011110000" Some("12"), (27 / 4), [0, 0, 2, 4, 1, 0, 0, 0, 0],    7 ; 6 Same 5
    EighthEven 5 "0021110000" None,       (31 / 4), [0, 0, 0, 4, 3, 0, 0, 0, 0, 0], 7 ; 7 Same 6
];

/// The seven published rows behind a table, smallest design first.
pub fn reference_rows(table: TableId) -> &'static [ReferenceRow; 7] {
    if table.is_eighth() {
        &EIGHTH
    } else {
        &SIXTEENTH
    }
}

pub(crate) fn regular_for(family: Family, n: usize) -> Option<RegularReference> {
    SIXTEENTH
        .iter()
        .chain(EIGHTH.iter())
        .find(|r| r.family == family && r.n == n)
        .map(ReferenceRow::regular)
}
