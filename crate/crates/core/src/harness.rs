//! Tightness tables over every cyclic code of a length range, with a
//! per-length JSON cache so interrupted runs resume where they stopped.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bound_c_of, compute_of, BoundCOptions, BoundKind, Witness};
use crate::cyclic::{enumerate_codes, r_vector, CyclicCodeSpec};
use crate::error::{Error, Result};
use crate::gf::{build_field_context, gcd, FieldContext};
use crate::oracle::true_distance;

/// Default oracle cap, in scalar classes of codewords.
pub const DEFAULT_DISTANCE_CAP: u64 = 1 << 24;

/// Process exit status for an error: 2 parse, 3 gcd, 4 cap, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::Param(_) | Error::Range { .. } | Error::NotPrime(_) | Error::EmptyPattern => 2,
        Error::Gcd { .. } => 3,
        Error::CapExceeded { .. } => 4,
        _ => 1,
    }
}

/// Everything computed for one code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub set: Vec<usize>,
    pub k: usize,
    /// Keyed by table column (`BCH`, `HT`, `BS`, `RS`, `BC`).
    pub bounds: BTreeMap<String, usize>,
    pub witnesses: BTreeMap<String, Witness>,
    /// Absent when the dimension is beyond the distance cap.
    pub distance: Option<usize>,
    /// Set when bound C had to be recomputed with the bound II penalty.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incident: Option<String>,
}

impl CodeRecord {
    pub fn bound(&self, kind: BoundKind) -> usize {
        self.bounds[kind.column()]
    }

    /// `k = 0` or `k = n`.
    pub fn is_trivial(&self, n: usize) -> bool {
        self.k == 0 || self.k == n
    }
}

/// Results for every code of one length, as stored in the cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthRecord {
    pub q: u32,
    pub n: usize,
    pub distance_cap: u64,
    pub codes: Vec<CodeRecord>,
    /// Codes whose evaluation errored, as `set: message`.
    pub failures: Vec<String>,
}

impl LengthRecord {
    /// Bound values above the true distance, one line each.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for code in &self.codes {
            let Some(d) = code.distance else { continue };
            for kind in BoundKind::ALL {
                if code.bound(kind) > d {
                    out.push(format!("q={} n={} S={:?}: {} = {} > d = {d}", self.q, self.n, code.set, kind.name(), code.bound(kind)));
                }
            }
        }
        out
    }

    pub fn incidents(&self) -> impl Iterator<Item = &str> {
        self.codes.iter().filter_map(|c| c.incident.as_deref())
    }

    pub fn fully_failed(&self) -> bool {
        self.codes.is_empty() && !self.failures.is_empty()
    }
}

/// Bounds, distance and the bound II gate for one code.
pub fn evaluate_code(spec: &CyclicCodeSpec, ctx: &FieldContext, cap: u64) -> Result<CodeRecord> {
    let r = r_vector(spec);
    let mut outcomes: Vec<_> = BoundKind::ALL.iter().map(|&k| compute_of(k, &r)).collect();
    let distance = match true_distance(spec, ctx, cap as u128) {
        Ok(res) => Some(res.d),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut incident = None;
    let bc = outcomes.iter_mut().find(|o| o.kind == BoundKind::BoundC).expect("bound C is among the kinds");
    if let Some(d) = distance {
        if bc.value > d && bc.witness.case.starts_with("II") {
            incident = Some(format!(
                "q={} n={} S={:?}: bound II value {} > d = {d} ({:?}); recomputed with penalty 1",
                spec.q(),
                spec.n(),
                spec.set(),
                bc.value,
                bc.witness.params
            ));
            *bc = bound_c_of(&r, &BoundCOptions { bound_ii_penalty: 1, ..BoundCOptions::default() });
        }
    }
    Ok(CodeRecord {
        set: spec.set().to_vec(),
        k: spec.k(),
        bounds: outcomes.iter().map(|o| (o.kind.column().to_string(), o.value)).collect(),
        witnesses: outcomes.into_iter().map(|o| (o.kind.column().to_string(), o.witness)).collect(),
        distance,
        incident,
    })
}

/// Evaluates every code of length `n` over F_q, in enumeration order.
pub fn evaluate_length(q: u32, n: usize, cap: u64) -> Result<LengthRecord> {
    let ctx = build_field_context(q, n)?;
    let specs = enumerate_codes(n, q)?;
    let results: Vec<_> = specs.par_iter().map(|s| (s, evaluate_code(s, &ctx, cap))).collect();
    let mut codes = Vec::new();
    let mut failures = Vec::new();
    for (spec, res) in results {
        match res {
            Ok(rec) => codes.push(rec),
            Err(e) => failures.push(format!("{:?}: {e}", spec.set())),
        }
    }
    Ok(LengthRecord { q, n, distance_cap: cap, codes, failures })
}

/// One table row. `total[i]` counts codes where bound `i` equals the
/// distance; `excess[i]` those where it does and BCH does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessRow {
    pub n: usize,
    pub n_codes: usize,
    pub skipped: usize,
    pub failed: usize,
    pub total: [usize; 5],
    pub excess: [usize; 5],
}

/// Scores a length. With `exclude_trivial` the zero code and the full
/// space are left out entirely, `n_codes` included.
pub fn tightness_row(rec: &LengthRecord, exclude_trivial: bool) -> TightnessRow {
    let mut row = TightnessRow { n: rec.n, n_codes: 0, skipped: 0, failed: rec.failures.len(), total: [0; 5], excess: [0; 5] };
    row.n_codes = rec.failures.len();
    for code in &rec.codes {
        if exclude_trivial && code.is_trivial(rec.n) {
            continue;
        }
        row.n_codes += 1;
        let Some(d) = code.distance else {
            row.skipped += 1;
            continue;
        };
        let bch_tight = code.bound(BoundKind::Bch) == d;
        for (i, kind) in BoundKind::ALL.iter().enumerate() {
            if code.bound(*kind) == d {
                row.total[i] += 1;
                row.excess[i] += usize::from(!bch_tight);
            }
        }
    }
    row
}

fn columns() -> String {
    BoundKind::ALL.iter().map(|k| k.column()).collect::<Vec<_>>().join(",")
}

fn join(counts: &[usize]) -> String {
    counts.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// `n,N_codes,BCH,HT,BS,RS,BC` with `total` counts.
pub fn table_csv(rows: &[TightnessRow]) -> String {
    let mut out = format!("n,N_codes,{}\n", columns());
    for r in rows {
        out += &format!("{},{},{}\n", r.n, r.n_codes, join(&r.total));
    }
    out
}

/// Per-length `excess` counts with skip and failure columns, then a
/// `total` line over the whole range.
pub fn summary_csv(rows: &[TightnessRow]) -> String {
    let mut out = format!("n,N_codes,skipped,failed,{}\n", columns());
    let mut sum = TightnessRow { n: 0, n_codes: 0, skipped: 0, failed: 0, total: [0; 5], excess: [0; 5] };
    for r in rows {
        out += &format!("{},{},{},{},{}\n", r.n, r.n_codes, r.skipped, r.failed, join(&r.excess));
        sum.n_codes += r.n_codes;
        sum.skipped += r.skipped;
        sum.failed += r.failed;
        for i in 0..5 {
            sum.excess[i] += r.excess[i];
        }
    }
    out += &format!("total,{},{},{},{}\n", sum.n_codes, sum.skipped, sum.failed, join(&sum.excess));
    out
}

/// One JSON file per `(q, n)`, keys sorted.
#[derive(Debug, Clone)]
pub struct ResultsCache {
    dir: PathBuf,
}

impl ResultsCache {
    pub fn new(dir: impl Into<PathBuf>) -> io::Result<ResultsCache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(ResultsCache { dir })
    }

    pub fn path(&self, q: u32, n: usize) -> PathBuf {
        self.dir.join(format!("q{q}_n{n}.json"))
    }

    /// A stored record computed with the same cap and without failures.
    pub fn load(&self, q: u32, n: usize, cap: u64) -> Option<LengthRecord> {
        let text = fs::read_to_string(self.path(q, n)).ok()?;
        let rec: LengthRecord = serde_json::from_str(&text).ok()?;
        (rec.q == q && rec.n == n && rec.distance_cap == cap && rec.failures.is_empty()).then_some(rec)
    }

    pub fn store(&self, rec: &LengthRecord) -> io::Result<()> {
        let value = serde_json::to_value(rec).map_err(io::Error::other)?;
        let text = serde_json::to_string_pretty(&value).map_err(io::Error::other)? + "\n";
        let path = self.path(rec.q, rec.n);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text)?;
        fs::rename(tmp, path)
    }
}

/// Settings for [`run_table`].
#[derive(Debug, Clone)]
pub struct TableConfig {
    pub q: u32,
    pub n_min: usize,
    pub n_max: usize,
    pub distance_cap: u64,
    pub jobs: usize,
    pub exclude_trivial: bool,
    pub cache_dir: Option<PathBuf>,
}

/// Rows plus everything worth reporting about the run.
#[derive(Debug, Clone, Default)]
pub struct TableReport {
    pub rows: Vec<TightnessRow>,
    pub warnings: Vec<String>,
    pub incidents: Vec<String>,
    pub violations: Vec<String>,
    /// Lengths where no code could be evaluated.
    pub failed_lengths: Vec<usize>,
}

/// Evaluates (or loads) every length in range and scores it.
pub fn run_table(cfg: &TableConfig) -> Result<TableReport> {
    let cache = match &cfg.cache_dir {
        Some(dir) => Some(ResultsCache::new(dir).map_err(|e| Error::Param(format!("cache dir {}: {e}", dir.display())))?),
        None => None,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Param(format!("thread pool: {e}")))?;
    let mut report = TableReport::default();
    for n in cfg.n_min..=cfg.n_max {
        if n < 2 || gcd(n as u64, cfg.q as u64) != 1 {
            report.warnings.push(format!("skipping n={n}: gcd(n, q) != 1"));
            continue;
        }
        let rec = match cache.as_ref().and_then(|c| c.load(cfg.q, n, cfg.distance_cap)) {
            Some(rec) => rec,
            None => {
                let rec = match pool.install(|| evaluate_length(cfg.q, n, cfg.distance_cap)) {
                    Ok(rec) => rec,
                    Err(e) => LengthRecord { q: cfg.q, n, distance_cap: cfg.distance_cap, codes: Vec::new(), failures: vec![e.to_string()] },
                };
                if let Some(c) = &cache {
                    c.store(&rec).map_err(|e| Error::Param(format!("writing cache: {e}")))?;
                }
                rec
            }
        };
        if rec.fully_failed() {
            report.failed_lengths.push(n);
        }
        report.warnings.extend(rec.failures.iter().map(|f| format!("n={n}: {f}")));
        report.incidents.extend(rec.incidents().map(str::to_string));
        report.violations.extend(rec.violations());
        report.rows.push(tightness_row(&rec, cfg.exclude_trivial));
    }
    Ok(report)
}

/// Writes the table to `out` and the summary next to it.
pub fn write_table(report: &TableReport, out: &Path) -> io::Result<PathBuf> {
    fs::write(out, table_csv(&report.rows))?;
    let summary = summary_path(out);
    fs::write(&summary, summary_csv(&report.rows))?;
    Ok(summary)
}

/// `table.csv` becomes `table.summary.csv`.
pub fn summary_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.summary.csv"))
}
