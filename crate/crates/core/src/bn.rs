//! Euler characteristics of the Brill-Noether strata of Hilb(l).
//!
//! The strata are indexed by how much a scheme of length l overshoots the
//! line-length bounds n+1 (on vertical lines) and m+1 (on horizontal
//! lines). Their Euler characteristics are weighted counts of profile
//! tuples:
//!
//! - `phi(k, l, m)`: single profiles of l with excess k;
//! - `psi(k, l, m)`: ordered pairs of profiles with total sum l and total
//!   excess k;
//! - `chi_s` / `chi_t`: 2 sum_phi b + sum_psi b*b;
//! - `chi_s_stratified` / `chi_t_stratified`: the same numbers through the
//!   discriminant-locus stratification, an independent route used for
//!   cross-checking;
//! - `xi`: the k-weighted total entering the flag Euler characteristic.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::partition::{enumerate_partitions, Partition};
use crate::{Error, Result};

/// Excess of a profile over the bound m+1: the sum of r - m - 1 over
/// entries r > m + 1.
pub fn excess(profile: &Partition, m: u32) -> u32 {
    profile.parts().iter().filter(|&&r| r > m + 1).map(|&r| r - m - 1).sum()
}

/// Largest excess any partition of `l` can have: attained by the single
/// part (l). Used for pruning.
fn max_excess(l: u32, m: u32) -> u32 {
    l.saturating_sub(m + 1)
}

/// All partitions of `l` with excess exactly `k`, in reverse-lexicographic
/// order.
pub fn phi(k: u32, l: u32, m: u32) -> Vec<Partition> {
    if l == 0 || k > max_excess(l, m) {
        return Vec::new();
    }
    enumerate_partitions(l).expect("l >= 1").into_iter().filter(|p| excess(p, m) == k).collect()
}

/// All ordered pairs of nonempty partitions with total sum `l` and total
/// excess exactly `k`.
pub fn psi(k: u32, l: u32, m: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for s in 1..l {
        let firsts = enumerate_partitions(s).expect("s >= 1");
        let seconds = enumerate_partitions(l - s).expect("l - s >= 1");
        for p1 in &firsts {
            let e1 = excess(p1, m);
            if e1 > k || k - e1 > max_excess(l - s, m) {
                continue;
            }
            for p2 in &seconds {
                if excess(p2, m) == k - e1 {
                    out.push((p1.clone(), p2.clone()));
                }
            }
        }
    }
    out
}

fn phi_psi_sum(k: u32, l: u32, m: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for p in phi(k, l, m) {
        acc += BigInt::from(2u32) * p.bipartition_count();
    }
    for (p1, p2) in psi(k, l, m) {
        acc += p1.bipartition_count() * p2.bipartition_count();
    }
    acc
}

/// chi(S(k, l, n)): the vertical stratum, where the excess is measured
/// against vertical-line length n + 1. Zero exactly when the stratum is
/// empty. Defined for all k >= 1, l >= 1, n >= 0.
pub fn chi_s(k: u32, l: u32, n: u32) -> BigInt {
    phi_psi_sum(k, l, n)
}

/// chi(T(k, l, m)): the horizontal stratum, measured against m + 1.
pub fn chi_t(k: u32, l: u32, m: u32) -> BigInt {
    phi_psi_sum(k, l, m)
}

// Euler characteristic of the discriminant locus of a multiplicity
// pattern: 2 for one line, 2 or 1 for two lines (distinct or equal
// multiplicity), 0 for three or more lines.
fn discriminant_euler(eps: &Partition) -> u32 {
    match eps.parts() {
        [_] => 2,
        [a, b] if a > b => 2,
        [_, _] => 1,
        _ => 0,
    }
}

// Route B: sum over the total multiplicity nu and over multiplicity
// patterns (nu_1 >= ... >= nu_h), weighting length-constrained profile
// tuples by the discriminant-locus Euler characteristic.
fn stratified_sum(k: u32, l: u32, m: u32) -> BigInt {
    let mut acc = BigInt::zero();
    let all = enumerate_partitions(l).expect("l >= 1");
    for nu in 1..=l {
        for eps in enumerate_partitions(nu).expect("nu >= 1") {
            let weight = discriminant_euler(&eps);
            if weight == 0 {
                continue;
            }
            match eps.parts() {
                [nu1] => {
                    for p in all.iter().filter(|p| p.len() == *nu1 as usize) {
                        if excess(p, m) == k {
                            acc += BigInt::from(weight) * p.bipartition_count();
                        }
                    }
                }
                [nu1, nu2] => {
                    for s in 1..l {
                        for p1 in enumerate_partitions(s)
                            .expect("s >= 1")
                            .iter()
                            .filter(|p| p.len() == *nu1 as usize)
                        {
                            let e1 = excess(p1, m);
                            if e1 > k {
                                continue;
                            }
                            for p2 in enumerate_partitions(l - s)
                                .expect("l - s >= 1")
                                .iter()
                                .filter(|p| p.len() == *nu2 as usize)
                            {
                                if excess(p2, m) == k - e1 {
                                    acc += BigInt::from(weight)
                                        * p1.bipartition_count()
                                        * p2.bipartition_count();
                                }
                            }
                        }
                    }
                }
                _ => unreachable!("weight is zero for three or more lines"),
            }
        }
    }
    acc
}

/// chi(S(k, l, n)) through the discriminant-locus stratification;
/// independent of [`chi_s`] and must agree with it.
pub fn chi_s_stratified(k: u32, l: u32, n: u32) -> BigInt {
    stratified_sum(k, l, n)
}

/// chi(T(k, l, m)) through the discriminant-locus stratification.
pub fn chi_t_stratified(k: u32, l: u32, m: u32) -> BigInt {
    stratified_sum(k, l, m)
}

/// xi(l, m) = sum_{k=1}^{l-m-1} (2k sum_phi b + k sum_psi b*b).
/// Zero when m >= l - 1.
pub fn xi(l: u32, m: u32) -> Result<BigInt> {
    if l == 0 {
        return Err(Error::OutOfRange("xi requires l >= 1".into()));
    }
    let mut acc = BigInt::zero();
    if m + 1 >= l {
        return Ok(acc);
    }
    for k in 1..=(l - m - 1) {
        let mut inner = BigInt::zero();
        for p in phi(k, l, m) {
            inner += BigInt::from(2u32) * p.bipartition_count();
        }
        for (p1, p2) in psi(k, l, m) {
            inner += p1.bipartition_count() * p2.bipartition_count();
        }
        acc += BigInt::from(k) * inner;
    }
    Ok(acc)
}

/// Largest k for which the Brill-Noether locus BN(k, l, (m, n)) can be
/// nonempty: max(l - m - 1, l - n - 1, 0).
pub fn k_max(l: u32, m: u32, n: u32) -> u32 {
    max_excess(l, m).max(max_excess(l, n))
}

/// A validated parameter tuple for the Brill-Noether decomposition, which
/// holds for k >= 1, l >= 2 and m + n >= l - 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BnQuery {
    pub k: u32,
    pub l: u32,
    pub m: u32,
    pub n: u32,
}

impl BnQuery {
    pub fn new(k: u32, l: u32, m: u32, n: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::Hypothesis("k >= 1".into()));
        }
        if l < 2 {
            return Err(Error::Hypothesis("l >= 2".into()));
        }
        if m + n + 1 < l {
            return Err(Error::Hypothesis("m+n >= l-1".into()));
        }
        Ok(BnQuery { k, l, m, n })
    }
}

/// chi(BN(k, l, (m, n))) = chi(S(k, l, n)) + chi(T(k, l, m)): the locus
/// decomposes into the two strata, disjointly, under the
/// [`BnQuery`] hypotheses.
pub fn chi_bn(q: &BnQuery) -> BigInt {
    chi_s(q.k, q.l, q.n) + chi_t(q.k, q.l, q.m)
}
