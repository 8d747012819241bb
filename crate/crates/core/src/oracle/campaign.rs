//! Parallel verification runs: exact h1 against the combinatorial
//! prediction for every generated instance and admissible twist.
//!
//! Output is a JSONL report with one record per (instance, twist) job and
//! a trailing summary record. Jobs are fanned out over a local thread
//! pool, but records are emitted in (instance, m, n) order, so the report
//! bytes do not depend on the parallelism degree.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::bn::k_max;
use crate::{Error, Result};

use super::cohomology::cohomology;
use super::generate::{generate_instances, CampaignConfig, Instance};

/// Aggregated result of a verification run.
#[derive(Debug, Clone)]
pub struct CampaignOutcome {
    pub instances: usize,
    pub jobs: usize,
    pub agreements: usize,
    /// Replayable JSON payloads, one per disagreeing job.
    pub mismatches: Vec<String>,
    /// JSONL report: one line per job, then one summary line.
    pub report_lines: Vec<String>,
    /// (k, l, m, n) combinations observed with predicted k >= 1.
    pub covered_strata: BTreeSet<(u32, u32, u32, u32)>,
}

#[derive(Clone, Copy)]
enum TwistPlan {
    /// All 0 <= m, n <= mn_max with m + n >= l - 1.
    Grid(u32),
    /// One fixed twist.
    Single(u32, u32),
}

#[derive(Serialize)]
struct JobRecord<'a> {
    schema: u32,
    instance: usize,
    kind: &'a str,
    l: u32,
    m: u32,
    n: u32,
    rank: u32,
    h0: u32,
    h1: u32,
    predicted: Option<u32>,
    agrees: bool,
}

#[derive(Serialize)]
struct SummaryRecord {
    schema: u32,
    summary: Summary,
}

#[derive(Serialize)]
struct Summary {
    instances: usize,
    total: usize,
    agreements: usize,
    mismatches: usize,
}

#[derive(Serialize)]
struct MismatchPayload<'a> {
    schema: u32,
    failing_m: u32,
    failing_n: u32,
    instance: &'a Instance,
}

struct InstanceResult {
    lines: Vec<String>,
    mismatches: Vec<String>,
    covered: Vec<(u32, u32, u32, u32)>,
    agreements: usize,
    jobs: usize,
}

fn evaluate_instance(inst: &Instance, plan: TwistPlan) -> Result<InstanceResult> {
    let scheme = inst.realize()?;
    let twists: Vec<(u32, u32)> = match plan {
        TwistPlan::Grid(mn_max) => (0..=mn_max)
            .flat_map(|m| (0..=mn_max).map(move |n| (m, n)))
            .filter(|&(m, n)| m + n + 1 >= inst.l)
            .collect(),
        TwistPlan::Single(m, n) => vec![(m, n)],
    };
    let mut res = InstanceResult {
        lines: Vec::new(),
        mismatches: Vec::new(),
        covered: Vec::new(),
        agreements: 0,
        jobs: 0,
    };
    for (m, n) in twists {
        let rep = cohomology(&scheme, m, n);
        res.jobs += 1;
        if rep.agrees {
            res.agreements += 1;
        } else {
            let payload = MismatchPayload { schema: 1, failing_m: m, failing_n: n, instance: inst };
            res.mismatches.push(serde_json::to_string(&payload).expect("payload serializes"));
        }
        if let Some(k) = rep.predicted {
            if k >= 1 {
                res.covered.push((k, inst.l, m, n));
            }
        }
        let record = JobRecord {
            schema: 1,
            instance: inst.index,
            kind: &inst.kind,
            l: rep.l,
            m: rep.m,
            n: rep.n,
            rank: rep.rank,
            h0: rep.h0,
            h1: rep.h1,
            predicted: rep.predicted,
            agrees: rep.agrees,
        };
        res.lines.push(serde_json::to_string(&record).expect("record serializes"));
    }
    Ok(res)
}

fn run_over(instances: Vec<Instance>, plan: TwistPlan, jobs: usize) -> Result<CampaignOutcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::OutOfRange(format!("thread pool: {e}")))?;
    let results: Result<Vec<InstanceResult>> =
        pool.install(|| instances.par_iter().map(|inst| evaluate_instance(inst, plan)).collect());
    let results = results?;

    let mut outcome = CampaignOutcome {
        instances: instances.len(),
        jobs: 0,
        agreements: 0,
        mismatches: Vec::new(),
        report_lines: Vec::new(),
        covered_strata: BTreeSet::new(),
    };
    for res in results {
        outcome.jobs += res.jobs;
        outcome.agreements += res.agreements;
        outcome.mismatches.extend(res.mismatches);
        outcome.report_lines.extend(res.lines);
        outcome.covered_strata.extend(res.covered);
    }
    let summary = SummaryRecord {
        schema: 1,
        summary: Summary {
            instances: outcome.instances,
            total: outcome.jobs,
            agreements: outcome.agreements,
            mismatches: outcome.mismatches.len(),
        },
    };
    outcome.report_lines.push(serde_json::to_string(&summary).expect("summary serializes"));
    Ok(outcome)
}

/// Runs the full campaign for `cfg` on `jobs` worker threads (0 picks a
/// default). Identical configurations produce byte-identical reports
/// regardless of `jobs`.
pub fn run_campaign(cfg: &CampaignConfig, jobs: usize) -> Result<CampaignOutcome> {
    run_over(generate_instances(cfg), TwistPlan::Grid(cfg.mn_max), jobs)
}

/// Re-evaluates one serialized instance (bare, or wrapped in a mismatch
/// payload) over the twist grid.
pub fn run_replay(text: &str, mn_max: u32) -> Result<CampaignOutcome> {
    let instance = parse_replay(text)?;
    run_over(vec![instance], TwistPlan::Grid(mn_max), 1)
}

fn parse_replay(text: &str) -> Result<Instance> {
    if let Ok(inst) = Instance::from_json(text) {
        return Ok(inst);
    }
    #[derive(serde::Deserialize)]
    struct Wrapper {
        instance: Instance,
    }
    let w: Wrapper = serde_json::from_str(text)?;
    Ok(w.instance)
}

/// Builds the forced instances of the k-th jump stratum at twist (m, n)
/// and verifies them at that twist only: a stack of k + n + 1 points on a
/// vertical line when k <= l - n - 1, and of k + m + 1 points on a
/// horizontal line when k <= l - m - 1.
pub fn run_stratum(l: u32, m: u32, n: u32, k: u32, seed: u64) -> Result<CampaignOutcome> {
    if l < 2 {
        return Err(Error::Hypothesis("l >= 2".into()));
    }
    if m + n + 1 < l {
        return Err(Error::Hypothesis("m+n >= l-1".into()));
    }
    if k < 1 || k > k_max(l, m, n) {
        return Err(Error::Hypothesis("1 <= k <= k_max(l, m, n)".into()));
    }
    let cfg = CampaignConfig { l_min: l, l_max: l, mn_max: 0, trials: 0, seed };
    let all = generate_instances(&cfg);
    let mut instances = Vec::new();
    if k + n + 1 <= l {
        let kind = format!("vertical-stack:{}", k + n + 1);
        instances.extend(all.iter().filter(|i| i.kind == kind).cloned());
    }
    if k + m + 1 <= l {
        let kind = format!("horizontal-stack:{}", k + m + 1);
        instances.extend(all.iter().filter(|i| i.kind == kind).cloned());
    }
    for (idx, inst) in instances.iter_mut().enumerate() {
        inst.index = idx;
    }
    run_over(instances, TwistPlan::Single(m, n), 1)
}

/// Every stratum the campaign grid is expected to hit: (k, l, m, n) with
/// l >= 2 in range, 0 <= m, n <= mn_max, m + n >= l - 1 and
/// 1 <= k <= k_max(l, m, n).
pub fn expected_strata(cfg: &CampaignConfig) -> BTreeSet<(u32, u32, u32, u32)> {
    let mut out = BTreeSet::new();
    for l in cfg.l_min.max(2)..=cfg.l_max {
        for m in 0..=cfg.mn_max {
            for n in 0..=cfg.mn_max {
                if m + n + 1 < l {
                    continue;
                }
                for k in 1..=k_max(l, m, n) {
                    out.insert((k, l, m, n));
                }
            }
        }
    }
    out
}
