//! Generation of the four summary tables over their published index
//! ranges, with golden-file comparison.
//!
//! - table 1: chi(Hilb(l)) for 2 <= l <= 8;
//! - table 2: xi(l, m) for 2 <= l <= 8, 0 <= m <= l - 2;
//! - table 3: chi(Hilb(l, (m, n))) for 3 <= l <= 8, 1 <= m <= n <= l - 2,
//!   m + n >= l - 1;
//! - table 4: the linear forms chi(Hilb(l, (m, n))) = slope n + intercept
//!   for 2 <= l <= 8, 0 <= m <= l - 2 and every n > l - 2.
//!
//! Golden files are plain CSV with one header row, integer cells, UTF-8
//! and LF line endings: t1.csv through t4.csv. They are transcribed data
//! and are never regenerated by the build.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bn::xi;
use crate::flag::{chi_flag, chi_flag_linear, FlagQuery, LinearInN};
use crate::series::chi_hilb;
use crate::{Error, Result};

/// The four tables, keyed and ordered exactly as published.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tables {
    pub t1: Vec<(u32, BigInt)>,
    pub t2: Vec<((u32, u32), BigInt)>,
    pub t3: Vec<((u32, u32, u32), BigInt)>,
    pub t4: Vec<((u32, u32), LinearInN)>,
}

/// One mismatched cell from a golden comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDiff {
    pub table: &'static str,
    pub key: String,
    pub computed: String,
    pub golden: String,
}

impl std::fmt::Display for CellDiff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} cell ({}): computed {}, golden {}",
            self.table, self.key, self.computed, self.golden
        )
    }
}

impl Tables {
    /// Computes all four tables from scratch.
    pub fn compute() -> Tables {
        let mut t1 = Vec::new();
        for l in 2..=8 {
            t1.push((l, chi_hilb(l)));
        }
        let mut t2 = Vec::new();
        for l in 2..=8u32 {
            for m in 0..=(l - 2) {
                t2.push(((l, m), xi(l, m).expect("l >= 1")));
            }
        }
        let mut t3 = Vec::new();
        for l in 3..=8u32 {
            for m in 1..=(l - 2) {
                for n in m..=(l - 2) {
                    if m + n + 1 < l {
                        continue;
                    }
                    let q = FlagQuery::new(l, m, n).expect("range respects hypotheses");
                    t3.push(((l, m, n), chi_flag(&q)));
                }
            }
        }
        let mut t4 = Vec::new();
        for l in 2..=8u32 {
            for m in 0..=(l - 2) {
                t4.push(((l, m), chi_flag_linear(l, m).expect("m <= l-2")));
            }
        }
        Tables { t1, t2, t3, t4 }
    }

    /// Total number of cells across the four tables.
    pub fn cell_count(&self) -> usize {
        self.t1.len() + self.t2.len() + self.t3.len() + self.t4.len()
    }

    /// CSV renderings, one (file name, content) pair per table.
    pub fn to_csv(&self) -> Vec<(&'static str, String)> {
        let mut c1 = String::from("l,chi\n");
        for (l, v) in &self.t1 {
            c1.push_str(&format!("{l},{v}\n"));
        }
        let mut c2 = String::from("l,m,xi\n");
        for ((l, m), v) in &self.t2 {
            c2.push_str(&format!("{l},{m},{v}\n"));
        }
        let mut c3 = String::from("l,m,n,chi\n");
        for ((l, m, n), v) in &self.t3 {
            c3.push_str(&format!("{l},{m},{n},{v}\n"));
        }
        let mut c4 = String::from("l,m,slope,intercept\n");
        for ((l, m), f) in &self.t4 {
            c4.push_str(&format!("{l},{m},{},{}\n", f.slope, f.intercept));
        }
        vec![("t1.csv", c1), ("t2.csv", c2), ("t3.csv", c3), ("t4.csv", c4)]
    }

    /// One JSON object with the four tables keyed by stringified index
    /// tuples.
    pub fn to_json(&self) -> Value {
        let t1: BTreeMap<String, Value> =
            self.t1.iter().map(|(l, v)| (l.to_string(), big_to_json(v))).collect();
        let t2: BTreeMap<String, Value> =
            self.t2.iter().map(|((l, m), v)| (format!("{l},{m}"), big_to_json(v))).collect();
        let t3: BTreeMap<String, Value> =
            self.t3.iter().map(|((l, m, n), v)| (format!("{l},{m},{n}"), big_to_json(v))).collect();
        let t4: BTreeMap<String, Value> = self
            .t4
            .iter()
            .map(|((l, m), f)| {
                (
                    format!("{l},{m}"),
                    json!({ "slope": big_to_json(&f.slope), "intercept": big_to_json(&f.intercept) }),
                )
            })
            .collect();
        json!({ "schema": 1, "t1": t1, "t2": t2, "t3": t3, "t4": t4 })
    }

    /// Aligned markdown rendering of all four tables.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("## chi(Hilb(l))\n\n");
        out.push_str(&markdown_table(
            &["l", "chi"],
            self.t1.iter().map(|(l, v)| vec![l.to_string(), v.to_string()]).collect(),
        ));
        out.push_str("\n## xi(l, m)\n\n");
        out.push_str(&markdown_table(
            &["l", "m", "xi"],
            self.t2
                .iter()
                .map(|((l, m), v)| vec![l.to_string(), m.to_string(), v.to_string()])
                .collect(),
        ));
        out.push_str("\n## chi(Hilb(l, (m, n)))\n\n");
        out.push_str(&markdown_table(
            &["l", "m", "n", "chi"],
            self.t3
                .iter()
                .map(|((l, m, n), v)| {
                    vec![l.to_string(), m.to_string(), n.to_string(), v.to_string()]
                })
                .collect(),
        ));
        out.push_str("\n## chi(Hilb(l, (m, n))) for n > l - 2\n\n");
        out.push_str(&markdown_table(
            &["l", "m", "chi"],
            self.t4
                .iter()
                .map(|((l, m), f)| vec![l.to_string(), m.to_string(), f.to_string()])
                .collect(),
        ));
        out
    }

    /// Cell-by-cell comparison against another bundle (normally golden
    /// data). Missing and extra keys count as mismatches.
    pub fn compare(&self, golden: &Tables) -> Vec<CellDiff> {
        let mut diffs = Vec::new();
        diff_rows("t1", &self.t1, &golden.t1, |l| l.to_string(), |v| v.to_string(), &mut diffs);
        diff_rows(
            "t2",
            &self.t2,
            &golden.t2,
            |(l, m)| format!("{l},{m}"),
            |v| v.to_string(),
            &mut diffs,
        );
        diff_rows(
            "t3",
            &self.t3,
            &golden.t3,
            |(l, m, n)| format!("{l},({m},{n})"),
            |v| v.to_string(),
            &mut diffs,
        );
        diff_rows(
            "t4",
            &self.t4,
            &golden.t4,
            |(l, m)| format!("{l},{m}"),
            |f: &LinearInN| f.to_string(),
            &mut diffs,
        );
        diffs
    }
}

fn big_to_json(v: &BigInt) -> Value {
    // Table cells stay far inside i64 for the published ranges.
    let as_i64 = i64::try_from(v).expect("table cell fits in i64");
    Value::from(as_i64)
}

fn markdown_table(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let fmt_row = |cells: &[String]| {
        let mut line = String::from("|");
        for i in 0..cols {
            line.push_str(&format!(" {:>w$} |", cells[i], w = widths[i]));
        }
        line.push('\n');
        line
    };
    let mut out = fmt_row(&header.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    let mut rule = String::from("|");
    for w in &widths {
        rule.push_str(&format!("{:-<w$}|", "", w = w + 2));
    }
    rule.push('\n');
    out.push_str(&rule);
    for row in rows {
        out.push_str(&fmt_row(&row));
    }
    out
}

fn diff_rows<K: Ord + Clone, V: PartialEq>(
    table: &'static str,
    computed: &[(K, V)],
    golden: &[(K, V)],
    key_fmt: impl Fn(&K) -> String,
    val_fmt: impl Fn(&V) -> String,
    diffs: &mut Vec<CellDiff>,
) {
    let gold: BTreeMap<&K, &V> = golden.iter().map(|(k, v)| (k, v)).collect();
    let comp: BTreeMap<&K, &V> = computed.iter().map(|(k, v)| (k, v)).collect();
    for (k, v) in computed {
        match gold.get(k) {
            Some(g) if *g == v => {}
            Some(g) => diffs.push(CellDiff {
                table,
                key: key_fmt(k),
                computed: val_fmt(v),
                golden: val_fmt(g),
            }),
            None => diffs.push(CellDiff {
                table,
                key: key_fmt(k),
                computed: val_fmt(v),
                golden: "<missing>".into(),
            }),
        }
    }
    for (k, v) in golden {
        if !comp.contains_key(k) {
            diffs.push(CellDiff {
                table,
                key: key_fmt(k),
                computed: "<missing>".into(),
                golden: val_fmt(v),
            });
        }
    }
}

/// Loads golden CSVs t1.csv through t4.csv from `dir`.
pub fn load_golden(dir: &Path) -> Result<Tables> {
    let t1 = read_rows(&dir.join("t1.csv"), 2)?
        .into_iter()
        .map(|r| (r[0] as u32, BigInt::from(r[1])))
        .collect();
    let t2 = read_rows(&dir.join("t2.csv"), 3)?
        .into_iter()
        .map(|r| ((r[0] as u32, r[1] as u32), BigInt::from(r[2])))
        .collect();
    let t3 = read_rows(&dir.join("t3.csv"), 4)?
        .into_iter()
        .map(|r| ((r[0] as u32, r[1] as u32, r[2] as u32), BigInt::from(r[3])))
        .collect();
    let t4 = read_rows(&dir.join("t4.csv"), 4)?
        .into_iter()
        .map(|r| {
            (
                (r[0] as u32, r[1] as u32),
                LinearInN { slope: BigInt::from(r[2]), intercept: BigInt::from(r[3]) },
            )
        })
        .collect();
    Ok(Tables { t1, t2, t3, t4 })
}

fn read_rows(path: &Path, cols: usize) -> Result<Vec<Vec<i64>>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Golden(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if idx == 0 || line.trim().is_empty() {
            continue;
        }
        let cells: Vec<i64> = line
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Golden(format!("{}:{}: {e}", path.display(), idx + 1)))
            })
            .collect::<Result<_>>()?;
        if cells.len() != cols {
            return Err(Error::Golden(format!(
                "{}:{}: expected {cols} cells, found {}",
                path.display(),
                idx + 1,
                cells.len()
            )));
        }
        rows.push(cells);
    }
    Ok(rows)
}
