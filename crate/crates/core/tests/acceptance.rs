//! Acceptance suite. One test per criterion; each prints a PASS line on
//! success and panics with the offending cells otherwise.
//!
//! Criteria 2, 3 and 4 compare against the golden transcription in
//! tables/ and are expected to FAIL on exactly three linked cells (t2
//! (5,1), t3 (5,(1,3)), t4 (5,1)): the transcribed values 160 / 928 /
//! -596 are arithmetically inconsistent with the definitions the rest of
//! the golden data follows, dropping one top-excess term worth 36. The
//! computed values 196 / 964 / -560 are confirmed by two independent
//! summation routes and by the fixed-point oracle in
//! tests/localization.rs. Companion tests pin every remaining cell green.

use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;

use qh_core::bn::{chi_bn, chi_s, chi_s_stratified, chi_t, chi_t_stratified, k_max, BnQuery};
use qh_core::flag::{chi_flag, chi_flag_linear, FlagQuery};
use qh_core::oracle::{
    cohomology, expected_strata, extract_profile, generate_instances, predict_h1_multiline,
    run_campaign, CampaignConfig, CoefficientMode, Orientation, PunctualComponent, Ruling,
};
use qh_core::partition::enumerate_partitions;
use qh_core::series::{chi_hilb, euler_product, euler_product_by_recurrence};
use qh_core::tables::{load_golden, Tables};

fn golden() -> qh_core::tables::Tables {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../tables");
    load_golden(&dir).expect("golden tables present")
}

#[test]
fn criterion_01_table1_reproduction() {
    let start = Instant::now();
    let want: [(u32, i64); 7] =
        [(2, 14), (3, 40), (4, 105), (5, 252), (6, 574), (7, 1240), (8, 2580)];
    for (l, v) in want {
        assert_eq!(chi_hilb(l), BigInt::from(v), "chi(Hilb({l}))");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 0.1, "took {elapsed:?}, budget 0.1s");
    let gold = golden();
    let computed = Tables::compute();
    assert!(computed.compare(&gold).iter().all(|d| d.table != "t1"));
    println!("criterion 1 (table 1 reproduction): PASS in {elapsed:?}");
}

#[test]
fn criterion_02_table2_reproduction() {
    let start = Instant::now();
    let diffs: Vec<String> = Tables::compute()
        .compare(&golden())
        .iter()
        .filter(|d| d.table == "t2")
        .map(|d| d.to_string())
        .collect();
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5s");
    assert!(
        diffs.is_empty(),
        "golden table 2 disagrees with the computed values on {} cell(s): {}. The computed \
         value is confirmed by the stratified route (criterion 6) and the fixed-point oracle \
         (tests/localization.rs); the transcribed 160 drops the k=3 term 2*3*b((5)) = 36.",
        diffs.len(),
        diffs.join("; ")
    );
    println!("criterion 2 (table 2 reproduction): PASS in {elapsed:?}");
}

#[test]
fn table2_cells_except_xi_5_1_match_golden() {
    let diffs: Vec<String> = Tables::compute()
        .compare(&golden())
        .iter()
        .filter(|d| d.table == "t2" && d.key != "5,1")
        .map(|d| d.to_string())
        .collect();
    assert!(diffs.is_empty(), "unexpected mismatches: {}", diffs.join("; "));
}

#[test]
fn criterion_03_table3_reproduction() {
    let start = Instant::now();
    let diffs: Vec<String> = Tables::compute()
        .compare(&golden())
        .iter()
        .filter(|d| d.table == "t3")
        .map(|d| d.to_string())
        .collect();
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5s");
    assert_eq!(
        chi_flag(&FlagQuery::new(8, 6, 6).unwrap()),
        BigInt::from(105816),
        "anchor cell (8,(6,6))"
    );
    assert!(
        diffs.is_empty(),
        "golden table 3 disagrees with the computed values on {} cell(s): {}. The computed \
         964 = 756 + 196 + 12 is confirmed by the fixed-point oracle at (5,(1,3)).",
        diffs.len(),
        diffs.join("; ")
    );
    println!("criterion 3 (table 3 reproduction): PASS in {elapsed:?}");
}

#[test]
fn table3_cells_except_5_1_3_match_golden() {
    let diffs: Vec<String> = Tables::compute()
        .compare(&golden())
        .iter()
        .filter(|d| d.table == "t3" && d.key != "5,(1,3)")
        .map(|d| d.to_string())
        .collect();
    assert!(diffs.is_empty(), "unexpected mismatches: {}", diffs.join("; "));
}

#[test]
fn criterion_04_table4_reproduction() {
    let start = Instant::now();
    let diffs: Vec<String> = Tables::compute()
        .compare(&golden())
        .iter()
        .filter(|d| d.table == "t4")
        .map(|d| d.to_string())
        .collect();
    let f86 = chi_flag_linear(8, 6).unwrap();
    assert_eq!((f86.slope, f86.intercept), (BigInt::from(18060), BigInt::from(-2562)));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5s");
    assert!(
        diffs.is_empty(),
        "golden table 4 disagrees with the computed forms on {} row(s): {}. The intercept \
         differs by the same 36 as the xi(5,1) cell it is built from.",
        diffs.len(),
        diffs.join("; ")
    );
    println!("criterion 4 (table 4 reproduction): PASS in {elapsed:?}");
}

#[test]
fn table4_rows_except_5_1_match_golden() {
    let diffs: Vec<String> = Tables::compute()
        .compare(&golden())
        .iter()
        .filter(|d| d.table == "t4" && d.key != "5,1")
        .map(|d| d.to_string())
        .collect();
    assert!(diffs.is_empty(), "unexpected mismatches: {}", diffs.join("; "));
}

#[test]
fn criterion_04_linear_form_matches_pointwise() {
    // the linear-in-n form agrees with the direct formula at
    // n = l-1 .. l+3 for every row
    for l in 2..=8u32 {
        for m in 0..=(l - 2) {
            let form = chi_flag_linear(l, m).unwrap();
            for n in (l - 1)..=(l + 3) {
                let q = FlagQuery::new(l, m, n).unwrap();
                assert_eq!(form.eval(n), chi_flag(&q), "l={l} m={m} n={n}");
            }
        }
    }
    println!("criterion 4 (linear form pointwise agreement): PASS");
}

#[test]
fn criterion_05_bipartition_oracle() {
    let start = Instant::now();
    let mut checked = 0usize;
    for l in 1..=17u32 {
        for tau in enumerate_partitions(l).unwrap() {
            assert_eq!(
                tau.bipartition_count(),
                tau.bipartition_bruteforce(),
                "bipartition routes disagree at {tau}"
            );
            checked += 1;
        }
    }
    assert!(checked > 1000, "only {checked} partitions checked");
    println!(
        "criterion 5 (bipartition closed form vs brute force, {checked} partitions): PASS in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_06_stratified_double_route() {
    let start = Instant::now();
    for l in 1..=8u32 {
        for k in 1..=l {
            for t in 0..=8u32 {
                assert_eq!(
                    chi_t(k, l, t),
                    chi_t_stratified(k, l, t),
                    "chi_T routes disagree at k={k} l={l} m={t}"
                );
                assert_eq!(
                    chi_s(k, l, t),
                    chi_s_stratified(k, l, t),
                    "chi_S routes disagree at k={k} l={l} n={t}"
                );
            }
        }
    }
    println!("criterion 6 (stratified double route): PASS in {:?}", start.elapsed());
}

#[test]
fn criterion_07_top_stratum_law() {
    for l in 2..=8u32 {
        for m in 0..=8u32 {
            for n in 0..=8u32 {
                if m + n + 1 < l {
                    continue;
                }
                let ktop = k_max(l, m, n);
                if ktop == 0 {
                    continue;
                }
                let top = chi_bn(&BnQuery::new(ktop, l, m, n).unwrap());
                let want = if m == n { 4 * (l + 1) } else { 2 * (l + 1) };
                assert_eq!(top, BigInt::from(want), "top stratum at l={l} m={m} n={n}");
                for k in (ktop + 1)..=l {
                    assert_eq!(
                        chi_bn(&BnQuery::new(k, l, m, n).unwrap()),
                        BigInt::from(0),
                        "stratum above k_max nonempty at k={k} l={l} m={m} n={n}"
                    );
                }
            }
        }
    }
    println!("criterion 7 (top stratum law): PASS");
}

#[test]
fn criterion_08_series_double_route() {
    assert_eq!(
        euler_product(30).unwrap(),
        euler_product_by_recurrence(30),
        "factor multiplication vs logarithmic-derivative recurrence"
    );
    println!("criterion 8 (series double route to order 30): PASS");
}

#[test]
fn criterion_09_cohomology_campaign() {
    let start = Instant::now();
    let cfg = CampaignConfig::default();
    let instances = generate_instances(&cfg);
    let generic = instances.iter().filter(|i| i.kind == "generic").count();
    assert!(generic >= 200, "only {generic} random instances");
    let out = run_campaign(&cfg, 0).expect("campaign runs");
    assert_eq!(
        out.agreements,
        out.jobs,
        "{} disagreement(s); first: {}",
        out.mismatches.len(),
        out.mismatches.first().map(String::as_str).unwrap_or("")
    );
    for want in expected_strata(&cfg) {
        assert!(out.covered_strata.contains(&want), "stratum (k,l,m,n) = {want:?} never hit");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600, "took {elapsed:?}, budget 10min");
    println!(
        "criterion 9 (cohomology campaign, {} instances, {} jobs): PASS in {elapsed:?}",
        out.instances, out.jobs
    );
}

#[test]
#[ignore = "beyond the default ranges; run with --ignored for a deeper sweep"]
fn extended_campaign_to_length_eight() {
    let cfg = CampaignConfig { l_min: 1, l_max: 8, mn_max: 8, trials: 15, seed: 43 };
    let out = run_campaign(&cfg, 0).expect("campaign runs");
    assert_eq!(
        out.agreements,
        out.jobs,
        "{} disagreement(s); first: {}",
        out.mismatches.len(),
        out.mismatches.first().map(String::as_str).unwrap_or("")
    );
    for want in expected_strata(&cfg) {
        assert!(out.covered_strata.contains(&want), "stratum (k,l,m,n) = {want:?} never hit");
    }
    println!("extended campaign ({} instances, {} jobs): PASS", out.instances, out.jobs);
}

#[test]
fn criterion_10_multiline_and_graph_laws() {
    use num_rational::BigRational;
    let start = Instant::now();
    let q = |v: i64| BigRational::from(BigInt::from(v));

    // multiline law, both rulings, including twists with m + n < l - 1
    let mut checked_below_bn_range = 0usize;
    for l in 1..=5u32 {
        for tuple in qh_core::oracle::enumerate_multipartitions(l) {
            for (orientation, ruling) in [
                (Orientation::Horizontal, Ruling::Horizontal),
                (Orientation::Vertical, Ruling::Vertical),
            ] {
                let comps = tuple
                    .iter()
                    .enumerate()
                    .map(|(j, profile)| {
                        let (anchor, line) = (q(j as i64 + 2), q(-(j as i64) - 2));
                        let support = match orientation {
                            Orientation::Horizontal => (anchor, line),
                            Orientation::Vertical => (line, anchor),
                        };
                        PunctualComponent::build(
                            support,
                            orientation,
                            profile,
                            CoefficientMode::Seeded(4000 + j as u64),
                        )
                        .unwrap()
                    })
                    .collect();
                let z = qh_core::oracle::build_scheme(comps).unwrap();
                let mult: u32 = tuple.iter().map(|p| p.len() as u32).sum();
                for along in (mult.saturating_sub(1))..=6 {
                    for across in 0..=4u32 {
                        let (m, n) = match ruling {
                            Ruling::Horizontal => (across, along),
                            Ruling::Vertical => (along, across),
                        };
                        let predicted =
                            predict_h1_multiline(&tuple, m as i64, n as i64, ruling).unwrap();
                        let rep = cohomology(&z, m, n);
                        assert_eq!(
                            rep.h1, predicted,
                            "multiline law fails for {tuple:?} ({ruling:?}) at ({m},{n})"
                        );
                        if m + n + 1 < l {
                            checked_below_bn_range += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked_below_bn_range > 0, "weak-hypothesis twists must be exercised");

    // graph-curve law: l points on x = g(z), deg g = c:
    // h1 = max(0, l - 1 - c m - n) for m >= 0, n >= c - 1
    let cfg = CampaignConfig::default();
    let mut graphs = 0usize;
    for inst in generate_instances(&cfg) {
        let Some(c) = inst.kind.strip_prefix("graph:") else { continue };
        let c: u32 = c.parse().unwrap();
        let z = inst.realize().unwrap();
        let l = z.length();
        for m in 0..=4u32 {
            for n in c.saturating_sub(1)..=5 {
                let rep = cohomology(&z, m, n);
                let want = (l as i64 - 1 - (c * m) as i64 - n as i64).max(0) as u32;
                assert_eq!(rep.h1, want, "graph law fails for {} (l={l}) at ({m},{n})", inst.kind);
            }
        }
        graphs += 1;
    }
    assert!(graphs >= 48, "only {graphs} graph instances");
    println!(
        "criterion 10 (multiline + graph-curve laws, {checked_below_bn_range} weak-range twists, \
         {graphs} graphs): PASS in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_11_profile_round_trip() {
    use num_rational::BigRational;
    let q = |v: i64| BigRational::from(BigInt::from(v));
    for l in 1..=6u32 {
        for tau in enumerate_partitions(l).unwrap() {
            for orientation in [Orientation::Horizontal, Orientation::Vertical] {
                for seed in [11u64, 5077u64] {
                    let c = PunctualComponent::build(
                        (q(1), q(1)),
                        orientation,
                        &tau,
                        CoefficientMode::Seeded(seed),
                    )
                    .unwrap();
                    assert_eq!(
                        extract_profile(&c),
                        tau,
                        "round trip for {tau} ({orientation:?}, seed {seed})"
                    );
                }
            }
        }
    }
    println!("criterion 11 (profile round trip): PASS");
}
