//! Cohomology dimensions of twisted ideal sheaves, computed two ways.
//!
//! The exact route evaluates the (m+1)(n+1) chart monomials x^a z^b on the
//! scheme and takes the rank of the evaluation matrix: h0 of the twisted
//! ideal sheaf is (m+1)(n+1) - rank and h1 is l - rank. The combinatorial
//! route predicts h1 from the line-decomposition profiles alone:
//! zero when every vertical line meets the scheme in length at most n + 1
//! and every horizontal line in length at most m + 1, and otherwise the
//! excess along the violating ruling. Under m + n >= l - 1 at most one
//! ruling can violate its bound.

use serde::{Deserialize, Serialize};

use crate::linalg::RationalMatrix;
use crate::partition::Partition;
use crate::{Error, Result};

use super::scheme::FiniteScheme;

/// Exact and predicted cohomology of one (scheme, twist) pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub l: u32,
    pub m: u32,
    pub n: u32,
    pub rank: u32,
    pub h0: u32,
    pub h1: u32,
    /// Combinatorial prediction; absent when m + n < l - 1, where no
    /// formula is claimed.
    pub predicted: Option<u32>,
    pub agrees: bool,
}

/// Matrix of the evaluation map from bidegree-(m, n) sections to the
/// scheme's coordinate ring: one row per staircase basis vector of each
/// component, one column per chart monomial x^a z^b with a <= m, b <= n.
pub fn restriction_matrix(z: &FiniteScheme, m: u32, n: u32) -> RationalMatrix {
    let cols = ((m + 1) * (n + 1)) as usize;
    let mut out = RationalMatrix::zero(z.length() as usize, cols);
    let mut row_base = 0usize;
    for comp in z.components() {
        for xe in 0..=m {
            for ze in 0..=n {
                let col = (xe * (n + 1) + ze) as usize;
                let values = comp.evaluate_monomial(xe, ze);
                for (off, val) in values.into_iter().enumerate() {
                    if !num_traits::Zero::is_zero(&val) {
                        out.set(row_base + off, col, val);
                    }
                }
            }
        }
        row_base += comp.length();
    }
    out
}

/// h0 and h1 of the twisted ideal sheaf by exact rank, with the
/// combinatorial prediction attached when it applies.
pub fn cohomology(z: &FiniteScheme, m: u32, n: u32) -> CohomologyReport {
    let l = z.length();
    let rank = restriction_matrix(z, m, n).rank() as u32;
    let h0 = (m + 1) * (n + 1) - rank;
    let h1 = l - rank;
    let predicted = predict_h1(z, m, n).ok();
    let agrees = predicted.is_none_or(|p| p == h1);
    CohomologyReport { l, m, n, rank, h0, h1, predicted, agrees }
}

/// Combinatorial h1 for m + n >= l - 1: zero under the two line-length
/// bounds, otherwise the excess along the one ruling that violates its
/// bound.
pub fn predict_h1(z: &FiniteScheme, m: u32, n: u32) -> Result<u32> {
    if m + n + 1 < z.length() {
        return Err(Error::Hypothesis("m+n >= l-1".into()));
    }
    let vertical: u32 =
        z.vertical_lines().iter().map(|line| crate::bn::excess(&line.profile, n)).sum();
    let horizontal: u32 =
        z.horizontal_lines().iter().map(|line| crate::bn::excess(&line.profile, m)).sum();
    assert!(
        vertical == 0 || horizontal == 0,
        "a scheme of length l <= m+n+1 cannot overshoot both rulings"
    );
    Ok(vertical + horizontal)
}

/// Which ruling a multiline prediction refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ruling {
    Vertical,
    Horizontal,
}

/// h1 from the row profiles of the lines of one ruling. For the vertical
/// ruling this is valid whenever m >= mu - 1 and n >= -1, with mu the
/// total multiplicity of the profiles; the horizontal case swaps the
/// roles. No m + n >= l - 1 hypothesis is needed.
pub fn predict_h1_multiline(profiles: &[Partition], m: i64, n: i64, ruling: Ruling) -> Result<u32> {
    let total_mult: i64 = profiles.iter().map(|p| p.len() as i64).sum();
    let (bound, opposite, excess_twist) = match ruling {
        Ruling::Vertical => (m, n, n),
        Ruling::Horizontal => (n, m, m),
    };
    if bound < total_mult - 1 {
        return Err(Error::Hypothesis(match ruling {
            Ruling::Vertical => "m >= mu(Z)-1".into(),
            Ruling::Horizontal => "n >= nu(Z)-1".into(),
        }));
    }
    if opposite < -1 {
        return Err(Error::Hypothesis("twist >= -1".into()));
    }
    Ok(profiles.iter().map(|p| excess_signed(p, excess_twist)).sum())
}

// excess against a possibly negative twist: sum of r - (t + 1) over
// entries r > t + 1
fn excess_signed(profile: &Partition, t: i64) -> u32 {
    profile
        .parts()
        .iter()
        .filter(|&&r| (r as i64) > t + 1)
        .map(|&r| (r as i64 - t - 1) as u32)
        .sum()
}
