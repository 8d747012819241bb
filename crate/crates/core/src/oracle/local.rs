//! Punctual ideals in staircase normal form.
//!
//! A length-l subscheme concentrated at the origin of the (u, v) chart,
//! with v the transverse coordinate, has ideal
//!
//! ```text
//! I = (f_0, ..., f_{v-2},  u^{t_{v-1}} v^{v-1},  v^v),
//! f_k = u^{t_k} v^k + sum_{j > k} sum_{i < t_j} a_{ijk} u^i v^j,
//! ```
//!
//! where (t_0 >= ... >= t_{v-1} > 0) is the profile and the monomials
//! under the staircase, u^i v^j with i < t_j, form a basis of the
//! quotient. Reduction eliminates by ascending transverse degree: every
//! rewrite of u^i v^j with i >= t_j strictly raises the v-degree, which is
//! capped by the number of rows, so it terminates. That reduction order is
//! this module's contract; everything downstream relies on it.
//!
//! Tail coefficients are not all free: a_{ijk} must be chosen so that the
//! quotient really has dimension sum(t_j). Generators are therefore
//! completed from the top row down, solving v * f_k = 0 modulo the rows
//! already fixed and drawing the remaining free coefficients from the
//! seeded generator (nonzero integers in [-9, 9]).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::linalg::RationalMatrix;
use crate::partition::Partition;
use crate::{Error, Result};

/// A local polynomial, keyed by (v-degree, u-degree) so that iteration
/// visits the lowest transverse degree first.
pub type LocalPoly = BTreeMap<(u32, u32), BigRational>;

type Tail = Vec<((u32, u32), BigRational)>;

/// A punctual ideal in normal form, together with the profile that shapes
/// its staircase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalIdeal {
    profile: Partition,
    offsets: Vec<usize>,
    length: usize,
    /// tails[k] holds the tail of f_k, for k in 0..rows-1.
    tails: Vec<Tail>,
}

impl LocalIdeal {
    /// The monomial ideal of the profile: all tails zero.
    pub fn monomial(profile: &Partition) -> Result<LocalIdeal> {
        let rows = profile.len();
        Self::assemble(profile.clone(), vec![Vec::new(); rows.saturating_sub(1)])
    }

    /// A random member of the profile's cell: free tail coefficients drawn
    /// from `rng` as nonzero integers in [-9, 9], bound ones solved for.
    pub fn random(profile: &Partition, rng: &mut impl Rng) -> Result<LocalIdeal> {
        let tails = complete_tails(profile, &mut || draw_nonzero(rng))?;
        Self::assemble(profile.clone(), tails)
    }

    fn assemble(profile: Partition, tails: Vec<Tail>) -> Result<LocalIdeal> {
        let t = profile.parts();
        let mut offsets = Vec::with_capacity(t.len());
        let mut acc = 0usize;
        for &tj in t {
            offsets.push(acc);
            acc += tj as usize;
        }
        let ideal = LocalIdeal { profile, offsets, length: acc, tails };
        ideal.validate()?;
        Ok(ideal)
    }

    pub fn profile(&self) -> &Partition {
        &self.profile
    }

    /// Colength of the ideal: the number of staircase monomials.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of rows of the staircase (the v-multiplicity).
    pub fn rows(&self) -> usize {
        self.profile.len()
    }

    /// Staircase basis monomials (v-degree, u-degree) in basis order.
    pub fn staircase(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.length);
        for (j, &tj) in self.profile.parts().iter().enumerate() {
            for i in 0..tj {
                out.push((j as u32, i));
            }
        }
        out
    }

    fn index(&self, j: u32, i: u32) -> usize {
        self.offsets[j as usize] + i as usize
    }

    /// Normal form of a local polynomial: its coordinates in the staircase
    /// basis. Rewrites ascend in v-degree and terminate at the row count.
    pub fn reduce(&self, poly: LocalPoly) -> Vec<BigRational> {
        let rows = self.rows() as u32;
        let t = self.profile.parts();
        let mut out = vec![BigRational::zero(); self.length];
        let mut work = poly;
        work.retain(|&(j, _), _| j < rows);
        while let Some((&(j, i), _)) = work.first_key_value() {
            let coeff = work.remove(&(j, i)).expect("key just observed");
            if coeff.is_zero() {
                continue;
            }
            let tj = t[j as usize];
            if i < tj {
                out[self.index(j, i)] += coeff;
                continue;
            }
            // u^i v^j = u^{i-t_j} (f_j - tail_j) == -u^{i-t_j} tail_j
            if (j as usize) < self.tails.len() {
                for ((j2, i2), a) in &self.tails[j as usize] {
                    if *j2 >= rows {
                        continue;
                    }
                    let key = (*j2, i2 + (i - tj));
                    let entry = work.entry(key).or_insert_with(BigRational::zero);
                    *entry -= &coeff * a;
                }
            }
            // top-row and v^rows generators are monomial: the term drops.
        }
        out
    }

    /// Reduction of a single monomial u^i v^j.
    pub fn reduce_monomial(&self, j: u32, i: u32) -> Vec<BigRational> {
        let mut p = LocalPoly::new();
        p.insert((j, i), BigRational::one());
        self.reduce(p)
    }

    /// Matrix of multiplication by u on the staircase span.
    pub fn mult_u(&self) -> RationalMatrix {
        self.mult_matrix(|(j, i)| (j, i + 1))
    }

    /// Matrix of multiplication by v on the staircase span.
    pub fn mult_v(&self) -> RationalMatrix {
        self.mult_matrix(|(j, i)| (j + 1, i))
    }

    fn mult_matrix(&self, shift: impl Fn((u32, u32)) -> (u32, u32)) -> RationalMatrix {
        let n = self.length;
        let mut m = RationalMatrix::zero(n, n);
        for (col, &(j, i)) in self.staircase().iter().enumerate() {
            let (j2, i2) = shift((j, i));
            let image = self.reduce_monomial(j2, i2);
            for (row, val) in image.into_iter().enumerate() {
                if !val.is_zero() {
                    m.set(row, col, val);
                }
            }
        }
        m
    }

    // Certifies that the staircase really is a basis of the quotient.
    // Reduction already shows the staircase spans, so colength <= l; for
    // the reverse bound it is enough that the staircase span carries a
    // module structure annihilated by every generator, which makes the
    // quotient surject onto an l-dimensional space. Concretely: the two
    // multiplication matrices commute and every generator, evaluated on
    // them, is the zero matrix.
    fn validate(&self) -> Result<()> {
        let t = self.profile.parts();
        let rows = self.rows();
        let fail = |detail: String| Error::Colength { profile: t.to_vec(), detail };

        let u = self.mult_u();
        let v = self.mult_v();
        if u.mul(&v) != v.mul(&u) {
            return Err(fail("multiplication operators do not commute".into()));
        }

        let max_u = t[0] as usize;
        let u_pow = powers(&u, max_u);
        let v_pow = powers(&v, rows);

        if !v_pow[rows].is_zero() {
            return Err(fail(format!("v^{rows} does not annihilate the staircase")));
        }
        for (k, &tk) in t.iter().enumerate() {
            let mut g = u_pow[tk as usize].mul(&v_pow[k]);
            if k < self.tails.len() {
                for ((j2, i2), a) in &self.tails[k] {
                    let term = u_pow[*i2 as usize].mul(&v_pow[*j2 as usize]);
                    g = add_scaled(&g, &term, a);
                }
            }
            if !g.is_zero() {
                return Err(fail(format!(
                    "generator at row {k} does not annihilate the staircase"
                )));
            }
        }
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn tail(&self, k: usize) -> &[((u32, u32), BigRational)] {
        &self.tails[k]
    }
}

fn powers(m: &RationalMatrix, up_to: usize) -> Vec<RationalMatrix> {
    let n = m.rows();
    let mut out = Vec::with_capacity(up_to + 1);
    out.push(RationalMatrix::identity(n));
    for _ in 0..up_to {
        let next = out.last().expect("nonempty").mul(m);
        out.push(next);
    }
    out
}

fn add_scaled(a: &RationalMatrix, b: &RationalMatrix, scale: &BigRational) -> RationalMatrix {
    let mut out = a.clone();
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let v = a.get(r, c) + scale * b.get(r, c);
            out.set(r, c, v);
        }
    }
    out
}

fn draw_nonzero(rng: &mut impl Rng) -> BigRational {
    let mut v = 0i64;
    while v == 0 {
        v = rng.gen_range(-9..=9);
    }
    BigRational::from(BigInt::from(v))
}

// Completes the generator tails from the top row down. At row k the only
// constraint is v * f_k = 0 modulo the rows above, which is affine-linear
// in the tail of f_k once those rows are fixed; the solution space is
// nonempty (its echelon form has full row rank) and its free coordinates
// are drawn from `draw`.
fn complete_tails(profile: &Partition, draw: &mut dyn FnMut() -> BigRational) -> Result<Vec<Tail>> {
    let t = profile.parts();
    let rows = t.len();
    if rows <= 1 {
        return Ok(Vec::new());
    }
    let mut scratch = LocalIdeal {
        profile: profile.clone(),
        offsets: {
            let mut off = Vec::with_capacity(rows);
            let mut acc = 0usize;
            for &tj in t {
                off.push(acc);
                acc += tj as usize;
            }
            off
        },
        length: t.iter().map(|&x| x as usize).sum(),
        tails: vec![Vec::new(); rows - 1],
    };

    for k in (0..rows - 1).rev() {
        let positions: Vec<(u32, u32)> =
            (k + 1..rows).flat_map(|j| (0..t[j]).map(move |i| (j as u32, i))).collect();
        // columns: reduction of v * u^i v^j for each unknown position
        let cols: Vec<Vec<BigRational>> =
            positions.iter().map(|&(j, i)| scratch.reduce_monomial(j + 1, i)).collect();
        let target = scratch.reduce_monomial(k as u32 + 1, t[k]);
        let rhs: Vec<BigRational> = target.iter().map(|x| -x).collect();
        let solution =
            solve_affine(&cols, &rhs, scratch.length, draw).ok_or_else(|| Error::Colength {
                profile: t.to_vec(),
                detail: format!("no completion exists at row {k}"),
            })?;
        let tail: Tail =
            positions.into_iter().zip(solution).filter(|(_, a)| !a.is_zero()).collect();
        scratch.tails[k] = tail;
    }
    Ok(scratch.tails)
}

// Solves sum_e x_e col_e = rhs over the rationals. Free variables (columns
// without a pivot) are filled from `draw`; returns None if inconsistent.
fn solve_affine(
    cols: &[Vec<BigRational>],
    rhs: &[BigRational],
    dim: usize,
    draw: &mut dyn FnMut() -> BigRational,
) -> Option<Vec<BigRational>> {
    let ncols = cols.len();
    // augmented rows: [A | rhs]
    let mut a: Vec<Vec<BigRational>> = (0..dim)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();

    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(p) = (rank..dim).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].clone().recip();
        for c in col..=ncols {
            let v = &a[rank][c] * &inv;
            a[rank][c] = v;
        }
        for r in 0..dim {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=ncols {
                let v = &a[r][c] - &f * &a[rank][c];
                a[r][c] = v;
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
        if rank == dim {
            break;
        }
    }
    // consistency: no nonzero rhs left below the pivots
    for r in rank..dim {
        if !a[r][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (col, piv) in pivot_of_col.iter().enumerate() {
        if piv.is_none() {
            x[col] = draw();
        }
    }
    for (col, piv) in pivot_of_col.iter().enumerate() {
        if let Some(r) = piv {
            let mut val = a[*r][ncols].clone();
            for free in 0..ncols {
                if pivot_of_col[free].is_none() && !a[*r][free].is_zero() {
                    val -= &a[*r][free] * &x[free];
                }
            }
            x[col] = val;
        }
    }
    Some(x)
}
