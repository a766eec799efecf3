use crate::error::{Error, Result};
use crate::qc::Family;

/// Closed-form projectivity ceiling for sixteenth-fraction designs.
///
/// Writing `n = 3t + j`, the unbranched design is bounded by `4t + 1`
/// (`j = 0`) or `4t + 3` (`j = 1, 2`); the branched design by `4t + 2`,
/// `4t + 3` and `4t + 4` for `j = 0, 1, 2`. Eighth fractions have no such
/// bound.
pub fn projectivity_bound(n: usize, family: Family) -> Result<usize> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    let (t, j) = (n / 3, n % 3);
    match family {
        Family::SixteenthEven => Ok(if j == 0 { 4 * t + 1 } else { 4 * t + 3 }),
        Family::SixteenthOdd => Ok(4 * t + 2 + j),
        Family::EighthEven | Family::EighthOdd => Err(Error::NoClosedFormBound(family)),
    }
}
