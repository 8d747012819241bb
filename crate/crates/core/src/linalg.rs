//! Exact rank computation over the rationals.
//!
//! Matrices are dense and desk-scale (at most a few hundred rows); entries
//! are arbitrary-precision rationals kept in lowest terms by the scalar
//! type. Rational Gaussian elimination is the source of truth; the modular
//! rank is a fast lower bound that callers may use only together with a
//! cross-check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::OutOfRange("ragged rows in matrix".into()));
        }
        Ok(RationalMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut out = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = a * other.get(k, c);
                    if !add.is_zero() {
                        let cur = out.get(r, c).clone();
                        out.set(r, c, cur + add);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Exact rank by rational Gaussian elimination. Pivot choice is the
    /// first nonzero entry in column order; with exact arithmetic nothing
    /// else matters.
    pub fn rank(&self) -> usize {
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let at = |m: &Vec<BigRational>, r: usize, c: usize| m[r * cols + c].clone();
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
                continue;
            };
            if pivot != rank {
                for c in 0..cols {
                    m.swap(rank * cols + c, pivot * cols + c);
                }
            }
            let inv = at(&m, rank, col).recip();
            for c in col..cols {
                let v = at(&m, rank, c) * &inv;
                m[rank * cols + c] = v;
            }
            for r in (rank + 1)..rows {
                let factor = at(&m, r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..cols {
                    let v = at(&m, r, c) - &factor * at(&m, rank, c);
                    m[r * cols + c] = v;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Rank of the reduction modulo `prime`, a lower bound on the rational
    /// rank. Fails if any entry's denominator vanishes modulo the prime;
    /// callers retry with another prime. Disagreement with [`Self::rank`]
    /// on the same matrix indicates a defect, never a shortcut.
    pub fn rank_modular(&self, prime: u64) -> Result<usize> {
        assert!(prime > (1 << 30), "prime must exceed 2^30");
        let mut m = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let num = big_mod(e.numer(), prime);
            let den = big_mod(e.denom(), prime);
            if den == 0 {
                return Err(Error::BadPrime(prime));
            }
            m.push(mul_mod(num, pow_mod(den, prime - 2, prime), prime));
        }
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for c in 0..cols {
                    m.swap(rank * cols + c, pivot * cols + c);
                }
            }
            let inv = pow_mod(m[rank * cols + col], prime - 2, prime);
            for c in col..cols {
                m[rank * cols + c] = mul_mod(m[rank * cols + c], inv, prime);
            }
            for r in (rank + 1)..rows {
                let f = m[r * cols + col];
                if f == 0 {
                    continue;
                }
                for c in col..cols {
                    let sub = mul_mod(f, m[rank * cols + c], prime);
                    m[r * cols + c] = (m[r * cols + c] + prime - sub) % prime;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        Ok(rank)
    }
}

fn big_mod(v: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = v % &p_big;
    if r.is_negative() {
        r += &p_big;
    }
    u64::try_from(r).expect("reduced residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Convenience constructor from integer entries.
pub fn matrix_from_i64(rows: Vec<Vec<i64>>) -> RationalMatrix {
    RationalMatrix::from_rows(
        rows.into_iter()
            .map(|row| row.into_iter().map(|v| BigRational::from(BigInt::from(v))).collect())
            .collect(),
    )
    .expect("rectangular input")
}
