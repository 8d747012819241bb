//! Integer partitions and non-increasing profile strings.
//!
//! [`Partition`] is the workhorse type of the whole crate: it holds
//! ordinary partitions of an integer as well as the row profiles of finite
//! schemes along multiple lines. [`NonIncreasingString`] is the relaxed
//! variant with zero entries allowed, which appears as one summand of a
//! bipartition.

use num_bigint::BigInt;

use crate::{Error, Result};

/// A non-increasing string of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, checking that the parts are positive and
    /// non-increasing. The empty string is rejected; zero-allowed strings
    /// live in [`NonIncreasingString`].
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty part list".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("parts not non-increasing in {parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts. Always positive: the empty string is not a
    /// partition here.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Sum of the parts.
    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The largest part.
    pub fn first(&self) -> u32 {
        self.parts[0]
    }

    /// Number of ways to write this string as a componentwise sum of two
    /// non-increasing strings of non-negative integers, by the closed form
    /// (t0 - t1 + 1) ... (t_{v-2} - t_{v-1} + 1)(t_{v-1} + 1).
    pub fn bipartition_count(&self) -> BigInt {
        let t = &self.parts;
        let mut acc = BigInt::from(1u32);
        for w in t.windows(2) {
            acc *= BigInt::from(w[0] - w[1] + 1);
        }
        acc * BigInt::from(t[t.len() - 1] + 1)
    }

    /// Counts bipartitions by direct enumeration, independently of the
    /// closed form. See [`enumerate_bipartitions`].
    pub fn bipartition_bruteforce(&self) -> BigInt {
        BigInt::from(enumerate_bipartitions(self).len())
    }

    /// Dimension of the affine cell of the punctual Hilbert scheme indexed
    /// by this partition: sum - t0.
    pub fn cell_dimension(&self) -> u32 {
        self.sum() - self.parts[0]
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A non-increasing string of non-negative integers. Zero entries are
/// allowed, so this is strictly weaker than [`Partition`]; it is never
/// returned where a partition is promised.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NonIncreasingString {
    entries: Vec<u32>,
}

impl NonIncreasingString {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "entries not non-increasing in {entries:?}"
            )));
        }
        Ok(NonIncreasingString { entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Drops trailing zeros and reinterprets the string as a partition.
    /// Returns `None` for the zero string.
    pub fn to_partition(&self) -> Option<Partition> {
        let cut = self.entries.iter().position(|&e| e == 0).unwrap_or(self.entries.len());
        if cut == 0 {
            return None;
        }
        Some(
            Partition::new(self.entries[..cut].to_vec())
                .expect("prefix of a non-increasing positive string"),
        )
    }
}

/// All partitions of `l`, each exactly once, in reverse-lexicographic
/// order: (l) first, (1,...,1) last.
pub fn enumerate_partitions(l: u32) -> Result<Vec<Partition>> {
    if l == 0 {
        return Err(Error::OutOfRange("enumerate_partitions requires l >= 1".into()));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    descend(l, l, &mut prefix, &mut out);
    Ok(out)
}

fn descend(remaining: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: prefix.clone() });
        return;
    }
    for part in (1..=cap.min(remaining)).rev() {
        prefix.push(part);
        descend(remaining - part, part, prefix, out);
        prefix.pop();
    }
}

/// All pairs of non-increasing non-negative strings of the same length as
/// `tau` that sum componentwise to `tau`. Enumerated by depth-first search
/// over the first summand; the bounds at each step are exactly the two
/// monotonicity constraints, so every leaf is a valid pair.
pub fn enumerate_bipartitions(tau: &Partition) -> Vec<(NonIncreasingString, NonIncreasingString)> {
    let t = tau.parts();
    let mut out = Vec::new();
    let mut first = Vec::with_capacity(t.len());
    split(t, &mut first, &mut out);
    out
}

fn split(
    t: &[u32],
    first: &mut Vec<u32>,
    out: &mut Vec<(NonIncreasingString, NonIncreasingString)>,
) {
    let i = first.len();
    if i == t.len() {
        let a = NonIncreasingString { entries: first.clone() };
        let b = NonIncreasingString {
            entries: t.iter().zip(first.iter()).map(|(&ti, &ci)| ti - ci).collect(),
        };
        out.push((a, b));
        return;
    }
    let hi = if i == 0 { t[0] } else { t[i].min(first[i - 1]) };
    // second summand must stay non-increasing: t[i] - c[i] <= t[i-1] - c[i-1]
    let lo = if i == 0 { 0 } else { (t[i] + first[i - 1]).saturating_sub(t[i - 1]) };
    for c in lo..=hi {
        first.push(c);
        split(t, first, out);
        first.pop();
    }
}

/// p(l), the number of partitions of `l`, from the divisor-sum recurrence
/// n p(n) = sum_{j=1..n} sigma1(j) p(n-j). Independent of
/// [`enumerate_partitions`], which it cross-checks.
pub fn partition_number(l: u32) -> BigInt {
    let n = l as usize;
    let mut p = vec![BigInt::from(0u32); n + 1];
    p[0] = BigInt::from(1u32);
    let sigma: Vec<u64> = (0..=n).map(|j| divisor_sum(j as u64)).collect();
    for i in 1..=n {
        let mut acc = BigInt::from(0u32);
        for j in 1..=i {
            acc += BigInt::from(sigma[j]) * &p[i - j];
        }
        let (q, r) = num_integer_div_rem(acc, i as u64);
        debug_assert!(r == BigInt::from(0u32));
        p[i] = q;
    }
    p[n].clone()
}

fn divisor_sum(j: u64) -> u64 {
    (1..=j).filter(|d| j.is_multiple_of(*d)).sum()
}

fn num_integer_div_rem(a: BigInt, b: u64) -> (BigInt, BigInt) {
    let b = BigInt::from(b);
    (&a / &b, a % b)
}

/// |Pi(l)|: the Euler characteristic of the punctual Hilbert scheme, one
/// affine cell per partition.
pub fn punctual_euler(l: u32) -> Result<BigInt> {
    Ok(BigInt::from(enumerate_partitions(l)?.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_small() {
        let got = enumerate_partitions(4).unwrap();
        let want = vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])];
        assert_eq!(got, want, "partitions of 4 in reverse-lex order");
        assert_eq!(enumerate_partitions(1).unwrap(), vec![p(&[1])]);
    }

    #[test]
    fn enumerate_length_eight() {
        assert_eq!(enumerate_partitions(8).unwrap().len(), 22, "p(8) = 22");
    }

    #[test]
    fn enumerate_rejects_zero() {
        assert!(enumerate_partitions(0).is_err());
    }

    #[test]
    fn counts_match_recurrence() {
        for l in 1..=16 {
            assert_eq!(
                BigInt::from(enumerate_partitions(l).unwrap().len()),
                partition_number(l),
                "p({l}) from enumeration vs divisor-sum recurrence"
            );
        }
    }

    #[test]
    fn invalid_partitions_rejected() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn bipartition_closed_form() {
        assert_eq!(p(&[1]).bipartition_count(), BigInt::from(2));
        assert_eq!(p(&[2, 1]).bipartition_count(), BigInt::from(4));
        assert_eq!(p(&[2, 2]).bipartition_count(), BigInt::from(3));
    }

    #[test]
    fn bipartition_bruteforce_small() {
        assert_eq!(p(&[1]).bipartition_bruteforce(), BigInt::from(2));
        assert_eq!(p(&[3]).bipartition_bruteforce(), BigInt::from(4));
        let pairs = enumerate_bipartitions(&p(&[2, 2]));
        assert_eq!(pairs.len(), 3);
        for (a, b) in &pairs {
            assert!(a.entries().windows(2).all(|w| w[0] >= w[1]));
            assert!(b.entries().windows(2).all(|w| w[0] >= w[1]));
            let sum: Vec<u32> = a.entries().iter().zip(b.entries()).map(|(x, y)| x + y).collect();
            assert_eq!(sum, vec![2, 2]);
        }
    }

    #[test]
    fn bipartition_routes_agree_up_to_nine() {
        for l in 1..=9 {
            for tau in enumerate_partitions(l).unwrap() {
                assert_eq!(
                    tau.bipartition_count(),
                    tau.bipartition_bruteforce(),
                    "bipartition routes disagree at {tau}"
                );
            }
        }
    }

    #[test]
    fn cell_dimensions() {
        assert_eq!(p(&[3, 1]).cell_dimension(), 1);
        assert_eq!(p(&[6]).cell_dimension(), 0);
        assert_eq!(punctual_euler(8).unwrap(), BigInt::from(22));
    }
}
