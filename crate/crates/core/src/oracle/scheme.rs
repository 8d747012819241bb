//! Finite subschemes of P1 x P1 assembled from punctual components.
//!
//! All supports live in the affine chart {y != 0, w != 0} with exact
//! rational coordinates (x, z). A component carries one thickening
//! orientation: horizontal components are fattened along a z = const line
//! (transverse coordinate z - b), vertical components along an x = const
//! line (transverse coordinate x - a). Both line decompositions of the
//! union, with their row profiles, are computed from rank filtrations of
//! the multiplication operators, so they are read off the actual module
//! structure rather than trusted from the input.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::linalg::RationalMatrix;
use crate::partition::Partition;
use crate::{Error, Result};

use super::local::LocalIdeal;

/// Which ruling a punctual component is thickened along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Supported on a horizontal line z = b; the profile is a row profile
    /// along that line.
    Horizontal,
    /// Supported on a vertical line x = a.
    Vertical,
}

/// How tail coefficients of the local ideal are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientMode {
    /// All tails zero: the monomial ideal, handy for hand checks.
    Monomial,
    /// Seeded random tails (free coefficients nonzero).
    Seeded(u64),
}

/// One punctual piece of a finite scheme.
#[derive(Debug, Clone)]
pub struct PunctualComponent {
    support: (BigRational, BigRational),
    orientation: Orientation,
    ideal: LocalIdeal,
    thickening_profile: Partition,
    cross_profile: Partition,
}

impl PunctualComponent {
    pub fn build(
        support: (BigRational, BigRational),
        orientation: Orientation,
        profile: &Partition,
        mode: CoefficientMode,
    ) -> Result<PunctualComponent> {
        let ideal = match mode {
            CoefficientMode::Monomial => LocalIdeal::monomial(profile)?,
            CoefficientMode::Seeded(seed) => {
                use rand::SeedableRng;
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                LocalIdeal::random(profile, &mut rng)?
            }
        };
        let thickening_profile = nilpotent_rank_profile(&ideal.mult_v())?;
        let cross_profile = nilpotent_rank_profile(&ideal.mult_u())?;
        Ok(PunctualComponent { support, orientation, ideal, thickening_profile, cross_profile })
    }

    pub fn support(&self) -> &(BigRational, BigRational) {
        &self.support
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn ideal(&self) -> &LocalIdeal {
        &self.ideal
    }

    pub fn length(&self) -> usize {
        self.ideal.length()
    }

    /// Row profile of the component with respect to vertical lines
    /// (multiplication by x - a).
    pub fn x_side_profile(&self) -> &Partition {
        match self.orientation {
            Orientation::Horizontal => &self.cross_profile,
            Orientation::Vertical => &self.thickening_profile,
        }
    }

    /// Row profile with respect to horizontal lines (multiplication by
    /// z - b).
    pub fn z_side_profile(&self) -> &Partition {
        match self.orientation {
            Orientation::Horizontal => &self.thickening_profile,
            Orientation::Vertical => &self.cross_profile,
        }
    }

    /// Evaluation of the chart monomial x^a z^b in the staircase basis:
    /// translate to local coordinates and reduce through the ideal's
    /// rewrite system.
    pub fn evaluate_monomial(&self, xe: u32, ze: u32) -> Vec<BigRational> {
        use num_bigint::BigInt;
        use num_traits::One;

        let (a, b) = &self.support;
        // x = a + (along or transverse coordinate), by orientation
        let (x_is_along, along_base, trans_base) = match self.orientation {
            Orientation::Horizontal => (true, a, b),
            Orientation::Vertical => (false, b, a),
        };
        let (along_exp, trans_exp) = if x_is_along { (xe, ze) } else { (ze, xe) };

        let binom = |n: u32, k: u32| -> BigRational {
            let mut acc = BigRational::one();
            for s in 0..k {
                acc = acc * BigRational::from(BigInt::from(n - s))
                    / BigRational::from(BigInt::from(s + 1));
            }
            acc
        };
        let expand = |base: &BigRational, exp: u32| -> Vec<BigRational> {
            // (base + w)^exp as coefficients of w^i
            (0..=exp)
                .map(|i| {
                    let mut pow = BigRational::one();
                    for _ in 0..(exp - i) {
                        pow *= base;
                    }
                    binom(exp, i) * pow
                })
                .collect()
        };
        let along = expand(along_base, along_exp);
        let trans = expand(trans_base, trans_exp);
        let mut poly = super::local::LocalPoly::new();
        for (i, ci) in along.iter().enumerate() {
            for (j, cj) in trans.iter().enumerate() {
                poly.insert((j as u32, i as u32), ci * cj);
            }
        }
        self.ideal.reduce(poly)
    }
}

/// Profile of a nilpotent operator from its rank filtration:
/// r_i = rank(M^i) - rank(M^{i+1}).
pub fn nilpotent_rank_profile(m: &RationalMatrix) -> Result<Partition> {
    let n = m.rows();
    let mut ranks = vec![n];
    let mut power = m.clone();
    loop {
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
        if ranks.len() > n + 1 {
            return Err(Error::OutOfRange("operator is not nilpotent".into()));
        }
        power = power.mul(m);
    }
    let parts: Vec<u32> = ranks.windows(2).map(|w| (w[0] - w[1]) as u32).collect();
    Partition::new(parts)
}

/// One line of a ruling together with its multiplicity and row profile.
#[derive(Debug, Clone, PartialEq)]
pub struct LineProfile {
    pub coordinate: BigRational,
    pub multiplicity: u32,
    pub profile: Partition,
}

/// A finite subscheme of the quadric: a union of punctual components at
/// pairwise distinct supports, with both line decompositions attached.
#[derive(Debug, Clone)]
pub struct FiniteScheme {
    components: Vec<PunctualComponent>,
    length: u32,
    vertical: Vec<LineProfile>,
    horizontal: Vec<LineProfile>,
}

/// Assembles a scheme from its components, checking support distinctness
/// and computing the decomposition along each ruling.
pub fn build_scheme(components: Vec<PunctualComponent>) -> Result<FiniteScheme> {
    if components.is_empty() {
        return Err(Error::OutOfRange("a scheme needs at least one component".into()));
    }
    for (i, c) in components.iter().enumerate() {
        for d in components.iter().skip(i + 1) {
            if c.support == d.support {
                return Err(Error::DuplicateSupport(
                    c.support.0.to_string(),
                    c.support.1.to_string(),
                ));
            }
        }
    }
    let length: u32 = components.iter().map(|c| c.length() as u32).sum();
    let vertical = group_lines(&components, |c| (c.support.0.clone(), c.x_side_profile()));
    let horizontal = group_lines(&components, |c| (c.support.1.clone(), c.z_side_profile()));
    Ok(FiniteScheme { components, length, vertical, horizontal })
}

fn group_lines<'a>(
    components: &'a [PunctualComponent],
    pick: impl Fn(&'a PunctualComponent) -> (BigRational, &'a Partition),
) -> Vec<LineProfile> {
    let mut by_coord: BTreeMap<BigRational, Vec<u32>> = BTreeMap::new();
    for c in components {
        let (coord, profile) = pick(c);
        let acc = by_coord.entry(coord).or_default();
        if acc.len() < profile.len() {
            acc.resize(profile.len(), 0);
        }
        for (slot, &p) in acc.iter_mut().zip(profile.parts()) {
            *slot += p;
        }
    }
    by_coord
        .into_iter()
        .map(|(coordinate, parts)| {
            let profile = Partition::new(parts).expect("sum of padded profiles is a partition");
            LineProfile { coordinate, multiplicity: profile.len() as u32, profile }
        })
        .collect()
}

impl FiniteScheme {
    pub fn components(&self) -> &[PunctualComponent] {
        &self.components
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    /// The vertical lines meeting the scheme, with multiplicities and
    /// profiles; their union is the minimal (mu, 0)-curve containing it.
    pub fn vertical_lines(&self) -> &[LineProfile] {
        &self.vertical
    }

    /// Horizontal analogue: the minimal (0, nu)-curve.
    pub fn horizontal_lines(&self) -> &[LineProfile] {
        &self.horizontal
    }

    /// Total multiplicity of the minimal vertical curve.
    pub fn mu(&self) -> u32 {
        self.vertical.iter().map(|l| l.multiplicity).sum()
    }

    /// Total multiplicity of the minimal horizontal curve.
    pub fn nu(&self) -> u32 {
        self.horizontal.iter().map(|l| l.multiplicity).sum()
    }

    /// Number of distinct vertical lines.
    pub fn kappa(&self) -> usize {
        self.vertical.len()
    }

    /// Number of distinct horizontal lines.
    pub fn lambda(&self) -> usize {
        self.horizontal.len()
    }
}

/// Profile of a punctual component with respect to its own thickening
/// direction. Round-trips with the profile the component was built from.
pub fn extract_profile(component: &PunctualComponent) -> Partition {
    component.thickening_profile.clone()
}
