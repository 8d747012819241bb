//! Euler characteristics of the flag Hilbert schemes Hilb(l, (m, n)) of
//! the quadric surface: pairs of a length-l subscheme and a bidegree
//! (m, n) curve through it.
//!
//! chi(Hilb(l, (m, n))) = (mn + m + n + 1 - l) chi(Hilb(l))
//!                        + xi(l, m) + xi(l, n)
//!
//! valid for m + n >= l - 1 and (m, n) != (0, 0). For l = 1 both xi terms
//! vanish and the formula reduces to the bare fibration count over
//! Hilb(1), so the same expression serves for every l >= 1.

use num_bigint::BigInt;

use crate::bn::xi;
use crate::series::chi_hilb;
use crate::{Error, Result};

/// A validated parameter tuple for the flag Euler characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlagQuery {
    pub l: u32,
    pub m: u32,
    pub n: u32,
}

impl FlagQuery {
    pub fn new(l: u32, m: u32, n: u32) -> Result<Self> {
        if l < 1 {
            return Err(Error::Hypothesis("l >= 1".into()));
        }
        if m == 0 && n == 0 {
            return Err(Error::Hypothesis("(m,n) != (0,0)".into()));
        }
        if m + n + 1 < l {
            return Err(Error::Hypothesis("m+n >= l-1".into()));
        }
        Ok(FlagQuery { l, m, n })
    }
}

/// chi(Hilb(l, (m, n))). Symmetric in m and n.
pub fn chi_flag(q: &FlagQuery) -> BigInt {
    let (l, m, n) = (q.l, q.m, q.n);
    let sections = BigInt::from(m as i64 * n as i64 + m as i64 + n as i64 + 1 - l as i64);
    sections * chi_hilb(l) + xi(l, m).expect("l >= 1") + xi(l, n).expect("l >= 1")
}

/// chi(Hilb(l, (m, n))) as a function of n, valid for every n >= l - 1 at
/// fixed l and m: slope * n + intercept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearInN {
    pub slope: BigInt,
    pub intercept: BigInt,
}

impl LinearInN {
    pub fn eval(&self, n: u32) -> BigInt {
        &self.slope * BigInt::from(n) + &self.intercept
    }
}

impl std::fmt::Display for LinearInN {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use num_bigint::Sign;
        match self.intercept.sign() {
            Sign::Minus => write!(f, "{}n - {}", self.slope, -&self.intercept),
            _ => write!(f, "{}n + {}", self.slope, self.intercept),
        }
    }
}

/// The linear form of chi(Hilb(l, (m, n))) in n for n >= l - 1, where
/// xi(l, n) = 0: slope (m+1) chi(Hilb(l)), intercept
/// (m+1-l) chi(Hilb(l)) + xi(l, m). Requires l >= 2 and 0 <= m <= l - 2.
pub fn chi_flag_linear(l: u32, m: u32) -> Result<LinearInN> {
    if l < 2 {
        return Err(Error::Hypothesis("l >= 2".into()));
    }
    if m + 2 > l {
        return Err(Error::Hypothesis("m <= l-2".into()));
    }
    let chi = chi_hilb(l);
    Ok(LinearInN {
        slope: BigInt::from(m + 1) * &chi,
        intercept: BigInt::from(m as i64 + 1 - l as i64) * &chi + xi(l, m)?,
    })
}
