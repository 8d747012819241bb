//! Truncated integer power series and the generating function of
//! chi(Hilb(l)) for the quadric surface.
//!
//! The Euler characteristic of the Hilbert scheme of l points on a smooth
//! projective surface with Euler characteristic e is the t^l coefficient
//! of prod_{k>=1} (1 - t^k)^{-e}. For P1 x P1 the exponent is fixed at 4.
//! Two independent expansion routes are provided: direct factor
//! multiplication and the logarithmic-derivative recurrence
//! n a_n = sum_{j=1..n} 4 sigma1(j) a_{n-j}.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::{Error, Result};

const SURFACE_EULER: u32 = 4;

/// A power series over the integers truncated at a fixed order;
/// `coeffs[i]` is the coefficient of t^i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// The constant series 1, truncated at `order`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = BigInt::from(1u32);
        TruncatedSeries { coeffs }
    }

    /// Truncation bound; coefficients beyond it are discarded.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Product truncated at the order of `self`.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order();
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }
}

/// prod_{k=1}^{order} (1 - t^k)^{-4} truncated at `order`, by multiplying
/// out one factor per k. Each factor is the negative-binomial expansion
/// (1 - t^k)^{-4} = sum_j C(j+3, 3) t^{kj}.
pub fn euler_product(order: usize) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::OutOfRange("euler_product requires order >= 1".into()));
    }
    let mut acc = TruncatedSeries::one(order);
    for k in 1..=order {
        acc = acc.mul(&inverse_power_factor(k, order));
    }
    Ok(acc)
}

fn inverse_power_factor(k: usize, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    let mut j = 0usize;
    while k * j <= order {
        coeffs[k * j] = binomial_c3(j as u64);
        j += 1;
    }
    TruncatedSeries { coeffs }
}

// C(j+3, 3)
fn binomial_c3(j: u64) -> BigInt {
    let n = BigInt::from(j);
    (&n + 1) * (&n + 2) * (&n + 3) / BigInt::from(6u32)
}

/// The same series by the logarithmic-derivative recurrence
/// n a_n = sum_{j=1..n} 4 sigma1(j) a_{n-j}, starting from a_0 = 1.
pub fn euler_product_by_recurrence(order: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    coeffs[0] = BigInt::from(1u32);
    let sigma: Vec<u64> = (0..=order).map(|j| divisor_sum(j as u64)).collect();
    for n in 1..=order {
        let mut acc = BigInt::zero();
        for j in 1..=n {
            acc += BigInt::from(SURFACE_EULER as u64 * sigma[j]) * &coeffs[n - j];
        }
        let n_big = BigInt::from(n as u64);
        debug_assert!((&acc % &n_big).is_zero(), "recurrence sum must divide by n");
        coeffs[n] = acc / n_big;
    }
    TruncatedSeries { coeffs }
}

fn divisor_sum(j: u64) -> u64 {
    (1..=j).filter(|d| j.is_multiple_of(*d)).sum()
}

/// chi(Hilb(l)) for P1 x P1: the t^l coefficient of the Euler product.
/// chi(Hilb(0)) = 1.
pub fn chi_hilb(l: u32) -> BigInt {
    if l == 0 {
        return BigInt::from(1u32);
    }
    euler_product(l as usize).expect("order >= 1").coeff(l as usize).clone()
}
