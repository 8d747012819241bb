//! Deterministic instance generation for the verification campaign.
//!
//! A fixed seed yields a fixed stream of finite-scheme instances mixing:
//!
//! - generic point sets (all coordinates pairwise distinct);
//! - point sets with one forced vertical or horizontal alignment, plus
//!   mixed double alignments, which hit every jump stratum on the twist
//!   grid;
//! - thickened-line schemes: one punctual component per line for every
//!   multiset of profiles with total length l, in both orientations, with
//!   seeded random tails; variants split one profile across two points of
//!   its line, and monomial variants keep single profiles hand-checkable;
//! - reduced points on graph curves x = g(z) with deg g in 0..=3 and
//!   pairwise distinct first coordinates for deg g >= 1.
//!
//! Instances serialize to JSON ({supports, orientations, profiles,
//! coefficient seeds}) and are rebuilt exactly from that record, so any
//! failure can be replayed in isolation.

use std::str::FromStr;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::partition::{enumerate_bipartitions, enumerate_partitions, Partition};
use crate::{Error, Result};

use super::scheme::{build_scheme, CoefficientMode, FiniteScheme, Orientation, PunctualComponent};

/// Parameters of the default verification campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CampaignConfig {
    pub l_min: u32,
    pub l_max: u32,
    /// Twists run over 0 <= m, n <= mn_max with m + n >= l - 1.
    pub mn_max: u32,
    /// Random generic point sets per length.
    pub trials: u32,
    pub seed: u64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig { l_min: 1, l_max: 6, mn_max: 7, trials: 40, seed: 42 }
    }
}

/// Serializable recipe for one punctual component.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentSpec {
    /// Exact rational coordinates, e.g. "3" or "-3/2".
    pub support: (String, String),
    pub orientation: Orientation,
    pub profile: Vec<u32>,
    /// Tail-coefficient seed; `null` means the monomial ideal.
    pub coeff_seed: Option<u64>,
}

impl ComponentSpec {
    pub fn realize(&self) -> Result<PunctualComponent> {
        let parse = |s: &str| {
            BigRational::from_str(s)
                .map_err(|e| Error::OutOfRange(format!("bad coordinate {s:?}: {e}")))
        };
        let support = (parse(&self.support.0)?, parse(&self.support.1)?);
        let profile = Partition::new(self.profile.clone())?;
        let mode = match self.coeff_seed {
            Some(seed) => CoefficientMode::Seeded(seed),
            None => CoefficientMode::Monomial,
        };
        PunctualComponent::build(support, self.orientation, &profile, mode)
    }
}

/// One generated scheme, ready to build and to serialize.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Instance {
    pub schema: u32,
    pub index: usize,
    pub kind: String,
    pub l: u32,
    pub components: Vec<ComponentSpec>,
}

impl Instance {
    pub fn realize(&self) -> Result<FiniteScheme> {
        let comps = self.components.iter().map(|c| c.realize()).collect::<Result<Vec<_>>>()?;
        let scheme = build_scheme(comps)?;
        if scheme.length() != self.l {
            return Err(Error::OutOfRange(format!(
                "instance {} declares length {} but builds length {}",
                self.index,
                self.l,
                scheme.length()
            )));
        }
        Ok(scheme)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        Ok(serde_json::from_str(text)?)
    }
}

struct Gen {
    rng: ChaCha8Rng,
    out: Vec<Instance>,
}

impl Gen {
    fn push(&mut self, kind: String, components: Vec<ComponentSpec>) {
        let l = components.iter().map(|c| c.profile.iter().sum::<u32>()).sum();
        self.out.push(Instance { schema: 1, index: self.out.len(), kind, l, components });
    }

    fn seed(&mut self) -> Option<u64> {
        Some(self.rng.gen())
    }

    /// `count` pairwise distinct integers, small when possible.
    fn distinct(&mut self, count: usize) -> Vec<i64> {
        let radius = 9.max(count as i64);
        let mut pool: Vec<i64> = (-radius..=radius).collect();
        pool.shuffle(&mut self.rng);
        pool.truncate(count);
        pool
    }
}

fn reduced(x: i64, z: i64) -> ComponentSpec {
    ComponentSpec {
        support: (x.to_string(), z.to_string()),
        orientation: Orientation::Horizontal,
        profile: vec![1],
        coeff_seed: None,
    }
}

/// The deterministic instance stream for a campaign configuration.
pub fn generate_instances(cfg: &CampaignConfig) -> Vec<Instance> {
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(cfg.seed), out: Vec::new() };
    for l in cfg.l_min..=cfg.l_max {
        generic_point_sets(&mut g, l, cfg.trials);
        stack_instances(&mut g, l);
        theta_instances(&mut g, l);
        graph_instances(&mut g, l);
    }
    g.out
}

fn generic_point_sets(g: &mut Gen, l: u32, trials: u32) {
    for _ in 0..trials {
        let xs = g.distinct(l as usize);
        let zs = g.distinct(l as usize);
        let comps = xs.iter().zip(&zs).map(|(&x, &z)| reduced(x, z)).collect();
        g.push("generic".into(), comps);
    }
}

// Point sets with forced line alignments. A stack of s points on one
// vertical line lands in the vertical jump stratum with k = s - n - 1 at
// every twist with n <= s - 2, and symmetrically; running every s from 2
// to l hits every stratum on the grid.
fn stack_instances(g: &mut Gen, l: u32) {
    for s in 2..=l {
        let spare = (l - s) as usize;
        // vertical stack
        let xs = g.distinct(1 + spare);
        let zs = g.distinct(l as usize);
        let mut comps: Vec<ComponentSpec> =
            (0..s as usize).map(|i| reduced(xs[0], zs[i])).collect();
        comps.extend((0..spare).map(|i| reduced(xs[1 + i], zs[s as usize + i])));
        g.push(format!("vertical-stack:{s}"), comps);
        // horizontal stack
        let zs = g.distinct(1 + spare);
        let xs = g.distinct(l as usize);
        let mut comps: Vec<ComponentSpec> =
            (0..s as usize).map(|i| reduced(xs[i], zs[0])).collect();
        comps.extend((0..spare).map(|i| reduced(xs[s as usize + i], zs[1 + i])));
        g.push(format!("horizontal-stack:{s}"), comps);
    }
    // one stack of each ruling in the same scheme
    for s in 2..=l {
        for t in 2..=l.saturating_sub(s) {
            let spare = (l - s - t) as usize;
            let xs = g.distinct(1 + t as usize + spare);
            let zs = g.distinct(s as usize + 1 + spare);
            let mut comps: Vec<ComponentSpec> =
                (0..s as usize).map(|i| reduced(xs[0], zs[i])).collect();
            let z_line = zs[s as usize];
            comps.extend((0..t as usize).map(|i| reduced(xs[1 + i], z_line)));
            comps.extend(
                (0..spare).map(|i| reduced(xs[1 + t as usize + i], zs[s as usize + 1 + i])),
            );
            g.push(format!("mixed-stack:{s},{t}"), comps);
        }
    }
}

// Thickened-line schemes: every multiset of profiles with total sum l,
// one punctual component per line.
fn theta_instances(g: &mut Gen, l: u32) {
    for tuple in enumerate_multipartitions(l) {
        let label: Vec<String> = tuple.iter().map(|p| p.to_string()).collect();
        let label = label.join("|");
        for (orientation, tag) in
            [(Orientation::Horizontal, "theta-h"), (Orientation::Vertical, "theta-v")]
        {
            let lines = g.distinct(tuple.len());
            let anchors = g.distinct(tuple.len());
            let comps: Vec<ComponentSpec> = tuple
                .iter()
                .enumerate()
                .map(|(j, profile)| ComponentSpec {
                    support: oriented_support(orientation, anchors[j], lines[j]),
                    orientation,
                    profile: profile.parts().to_vec(),
                    coeff_seed: g.seed(),
                })
                .collect();
            g.push(format!("{tag}:{label}"), comps);
        }
        // split one profile across two points of its line
        if let Some((j, (left, right))) = splittable(g, &tuple) {
            let lines = g.distinct(tuple.len());
            let anchors = g.distinct(tuple.len() + 1);
            let mut comps = Vec::new();
            for (idx, profile) in tuple.iter().enumerate() {
                if idx == j {
                    for (extra, half) in [(0usize, &left), (tuple.len(), &right)] {
                        comps.push(ComponentSpec {
                            support: oriented_support(
                                Orientation::Horizontal,
                                anchors[if extra == 0 { idx } else { extra }],
                                lines[idx],
                            ),
                            orientation: Orientation::Horizontal,
                            profile: half.parts().to_vec(),
                            coeff_seed: g.seed(),
                        });
                    }
                } else {
                    comps.push(ComponentSpec {
                        support: oriented_support(
                            Orientation::Horizontal,
                            anchors[idx],
                            lines[idx],
                        ),
                        orientation: Orientation::Horizontal,
                        profile: profile.parts().to_vec(),
                        coeff_seed: g.seed(),
                    });
                }
            }
            g.push(format!("theta-h-split:{label}"), comps);
        }
        // monomial variant keeps single-line instances hand-checkable
        if tuple.len() == 1 {
            for (orientation, tag) in [
                (Orientation::Horizontal, "theta-h-monomial"),
                (Orientation::Vertical, "theta-v-monomial"),
            ] {
                let lines = g.distinct(1);
                let anchors = g.distinct(1);
                g.push(
                    format!("{tag}:{label}"),
                    vec![ComponentSpec {
                        support: oriented_support(orientation, anchors[0], lines[0]),
                        orientation,
                        profile: tuple[0].parts().to_vec(),
                        coeff_seed: None,
                    }],
                );
            }
        }
    }
}

fn oriented_support(orientation: Orientation, anchor: i64, line: i64) -> (String, String) {
    match orientation {
        // the line is z = const
        Orientation::Horizontal => (anchor.to_string(), line.to_string()),
        // the line is x = const
        Orientation::Vertical => (line.to_string(), anchor.to_string()),
    }
}

// picks the first profile of the tuple admitting a bipartition with two
// nonzero halves, and a random such bipartition
fn splittable(g: &mut Gen, tuple: &[Partition]) -> Option<(usize, (Partition, Partition))> {
    for (j, profile) in tuple.iter().enumerate() {
        let halves: Vec<(Partition, Partition)> = enumerate_bipartitions(profile)
            .into_iter()
            .filter_map(|(a, b)| Some((a.to_partition()?, b.to_partition()?)))
            .collect();
        if halves.is_empty() {
            continue;
        }
        let pick = g.rng.gen_range(0..halves.len());
        return Some((j, halves[pick].clone()));
    }
    None
}

// Reduced points on a graph x = g(z) with deg g = c exactly. For c >= 1
// the draw is retried until the first coordinates are pairwise distinct.
fn graph_instances(g: &mut Gen, l: u32) {
    for c in 0..=3u32 {
        for _ in 0..2 {
            let mut attempt = 0;
            let comps = loop {
                attempt += 1;
                let zs = g.distinct(l as usize);
                let mut coeffs: Vec<i64> = (0..=c).map(|_| g.rng.gen_range(-9..=9)).collect();
                if c > 0 && coeffs[c as usize] == 0 {
                    coeffs[c as usize] = 1 + g.rng.gen_range(0..9);
                }
                let xs: Vec<i64> = zs
                    .iter()
                    .map(|&z| coeffs.iter().rev().fold(0i64, |acc, &co| acc * z + co))
                    .collect();
                let distinct = c == 0 || (1..xs.len()).all(|i| !xs[..i].contains(&xs[i]));
                if distinct {
                    break zs.iter().zip(&xs).map(|(&z, &x)| reduced(x, z)).collect();
                }
                assert!(attempt < 100, "graph draw failed to separate first coordinates");
            };
            g.push(format!("graph:{c}"), comps);
        }
    }
}

/// Multisets of partitions with total sum `l`, each listed in canonical
/// non-increasing order.
pub fn enumerate_multipartitions(l: u32) -> Vec<Vec<Partition>> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    multi_descend(l, None, &mut prefix, &mut out);
    out
}

fn multi_descend(
    remaining: u32,
    cap: Option<&Partition>,
    prefix: &mut Vec<Partition>,
    out: &mut Vec<Vec<Partition>>,
) {
    if remaining == 0 {
        out.push(prefix.clone());
        return;
    }
    for s in (1..=remaining).rev() {
        for p in enumerate_partitions(s).expect("s >= 1") {
            if let Some(c) = cap {
                if &p > c {
                    continue;
                }
            }
            prefix.push(p.clone());
            multi_descend(remaining - s, Some(&p), prefix, out);
            prefix.pop();
        }
    }
}
