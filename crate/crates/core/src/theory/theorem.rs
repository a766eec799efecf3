use crate::qc::LambdaProfile;
use crate::spectrum::{Rational, WordGroup, WordSpectrum};

use super::{index_constants, inverse_square, l_values};

/// All sixteen check-column types `x1x2x3x4`, in binary order.
pub const ALL_TYPES: [[bool; 4]; 16] = {
    let mut out = [[false; 4]; 16];
    let mut i = 0;
    while i < 16 {
        out[i] = [i & 8 != 0, i & 4 != 0, i & 2 != 0, i & 1 != 0];
        i += 1;
    }
    out
};

/// Words of one check-column type in the unbranched sixteenth design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordClassReport {
    pub x: [bool; 4],
    pub groups: Vec<WordGroup>,
}

impl WordClassReport {
    pub fn to_spectrum(&self) -> WordSpectrum {
        WordSpectrum::from_groups(self.groups.iter().map(|g| (g.length, g.aliasing, g.count)))
    }
}

fn group(length: usize, aliasing: Rational, count: u64) -> WordGroup {
    WordGroup {
        length,
        aliasing,
        count,
    }
}

/// Per-type word account for the unbranched sixteenth-fraction design.
pub fn theorem1_words(lambda: &LambdaProfile, x: [bool; 4]) -> WordClassReport {
    let l = l_values(lambda);
    let c = index_constants(lambda, None);
    let one = Rational::from_integer(1);
    let s56 = lambda.get(5) + lambda.get(6);
    let s1234 = (1..=4).map(|i| lambda.get(i)).sum::<usize>();

    let bits: u8 = x.iter().fold(0, |acc, &b| acc << 1 | u8::from(b));
    let groups = match bits {
        0b0000 => vec![],
        0b0100 | 0b1000 => vec![group(l.get(1) + 1, c.rho1, inverse_square(c.rho1))],
        0b0001 | 0b0010 => vec![group(l.get(2) + 1, c.rho2, inverse_square(c.rho2))],
        0b0111 | 0b1011 => vec![group(l.get(3) + 3, c.rho1, inverse_square(c.rho1))],
        0b1101 | 0b1110 => vec![group(l.get(4) + 3, c.rho2, inverse_square(c.rho2))],
        0b1100 => vec![group(l.get(5) + 2, one, 1)],
        0b0011 => vec![group(l.get(6) + 2, one, 1)],
        0b1111 => vec![group(l.get(7) + 4, one, 1)],
        // 0101, 1010, 0110, 1001
        _ => {
            let crossed = bits == 0b0110 || bits == 0b1001;
            if s56 == 0 {
                let ai = c.xi1 * c.xi2;
                vec![group(l.get(8) + 2, ai, inverse_square(ai))]
            } else if s1234 == 0 {
                let length = if crossed { l.get(9) } else { l.get(10) } + 2;
                vec![group(length, one, 1)]
            } else {
                let half = inverse_square(c.xi) / 2;
                vec![group(l.get(9) + 2, c.xi, half), group(l.get(10) + 2, c.xi, half)]
            }
        }
    };
    WordClassReport { x, groups }
}

/// Aggregate spectrum of the unbranched sixteenth-fraction design.
pub fn theorem2_spectrum(lambda: &LambdaProfile) -> WordSpectrum {
    let l = l_values(lambda);
    let c = index_constants(lambda, None);
    let one = Rational::from_integer(1);
    let s56 = lambda.get(5) + lambda.get(6);

    let rho1_half = 2 * inverse_square(c.rho1);
    let rho2_half = 2 * inverse_square(c.rho2);
    let mut groups = vec![
        (l.get(1) + 1, c.rho1, rho1_half),
        (l.get(3) + 3, c.rho1, rho1_half),
        (l.get(2) + 1, c.rho2, rho2_half),
        (l.get(4) + 3, c.rho2, rho2_half),
        (l.get(5) + 2, one, 1),
        (l.get(6) + 2, one, 1),
        (l.get(7) + 4, one, 1),
    ];
    if s56 == 0 {
        let ai = c.xi1 * c.xi2;
        groups.push((l.get(8) + 2, ai, 4 * inverse_square(ai)));
    } else {
        let half = 2 * inverse_square(c.xi);
        groups.push((l.get(9) + 2, c.xi, half));
        groups.push((l.get(10) + 2, c.xi, half));
    }
    WordSpectrum::from_groups(groups)
}

/// Aggregate spectrum of the unbranched eighth-fraction design (F1 removed).
pub fn theorem3_spectrum(lambda: &LambdaProfile) -> WordSpectrum {
    let l = l_values(lambda);
    let c = index_constants(lambda, None);
    let one = Rational::from_integer(1);
    let s56 = lambda.get(5) + lambda.get(6);

    let rho1_half = inverse_square(c.rho1);
    let mut groups = vec![
        (l.get(1) + 1, c.rho1, rho1_half),
        (l.get(3) + 3, c.rho1, rho1_half),
        (l.get(2) + 1, c.rho2, 2 * inverse_square(c.rho2)),
        (l.get(6) + 2, one, 1),
    ];
    if s56 == 0 {
        let ai = c.xi1 * c.xi2;
        groups.push((l.get(8) + 2, ai, 2 * inverse_square(ai)));
    } else {
        let half = inverse_square(c.xi);
        groups.push((l.get(9) + 2, c.xi, half));
        groups.push((l.get(10) + 2, c.xi, half));
    }
    WordSpectrum::from_groups(groups)
}
