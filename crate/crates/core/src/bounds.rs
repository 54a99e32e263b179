//! Defining-set lower bounds on the minimum distance: BCH, Hartmann–Tzeng,
//! Betti–Sala, Roos and bound C, each found as a parameter sweep over
//! pattern inclusions in `R(n, S)^ρ`.
//!
//! Every sweep works on two run-length tables of `R`: the forward zero run
//! starting at each position and the backward zero run ending at it. For a
//! block length `m` and stride `m + r`, "block counts" record how many
//! consecutive strides starting at a position open a run of at least `m`
//! zeros. Pattern inclusion then reduces to table lookups.
//!
//! Ties go to the first maximum in sweep order (orientation, then the
//! block parameters ascending, then the start position ascending).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cyclic::{r_vector, CyclicCodeSpec};
use crate::error::{Error, Result};
use crate::gf::gcd;
use crate::usemiring::{matches_at, pattern_expand, Pattern, UVec, USym};

/// The five implemented bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundKind {
    Bch,
    Ht,
    Bs,
    Roos,
    BoundC,
}

impl BoundKind {
    pub const ALL: [BoundKind; 5] = [BoundKind::Bch, BoundKind::Ht, BoundKind::Bs, BoundKind::Roos, BoundKind::BoundC];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Bch => "BCH",
            BoundKind::Ht => "HT",
            BoundKind::Bs => "BS",
            BoundKind::Roos => "ROOS",
            BoundKind::BoundC => "BOUND_C",
        }
    }

    /// Short column label used in tables.
    pub fn column(self) -> &'static str {
        match self {
            BoundKind::Bch => "BCH",
            BoundKind::Ht => "HT",
            BoundKind::Bs => "BS",
            BoundKind::Roos => "RS",
            BoundKind::BoundC => "BC",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<BoundKind> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "bch" => Ok(BoundKind::Bch),
            "ht" => Ok(BoundKind::Ht),
            "bs" => Ok(BoundKind::Bs),
            "roos" | "rs" => Ok(BoundKind::Roos),
            "bound_c" | "bc" | "c" => Ok(BoundKind::BoundC),
            _ => Err(Error::Parse(format!("unknown bound kind {s:?}"))),
        }
    }
}

/// Parameters that produced a bound value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Which value formula applied: `bch`, `ht`, `bs`, `roos`, `I`,
    /// `I-else`, `II`, `II-divisor`, `run`, `zero` or `trivial`.
    pub case: String,
    /// 1-based position in `R` where the (possibly mirrored) pattern begins.
    pub start: usize,
    pub mirrored: bool,
    /// Named integers among `ell`, `m`, `r`, `s`, `lambda`, `mu`, `penalty`.
    pub params: BTreeMap<String, usize>,
    /// Roos only: 0-based stride indices holding blocks.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub slots: Vec<usize>,
    pub rho: usize,
}

impl Witness {
    fn new(case: &str, start: usize, mirrored: bool, params: &[(&str, usize)], rho: usize) -> Witness {
        Witness {
            case: case.to_string(),
            start,
            mirrored,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            slots: Vec::new(),
            rho,
        }
    }

    fn param(&self, key: &str) -> Result<usize> {
        self.params.get(key).copied().ok_or_else(|| Error::Param(format!("witness lacks {key}")))
    }
}

/// A lower bound on the distance and how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundOutcome {
    pub kind: BoundKind,
    pub value: usize,
    pub witness: Witness,
}

/// Knobs for the bound C sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundCOptions {
    /// Only use leading runs of exactly `m` zeros.
    pub ell_equals_m: bool,
    /// Also try the bound II value on `r = 1` patterns.
    pub bound_ii: bool,
    /// Subtracted from every bound II value.
    pub bound_ii_penalty: usize,
}

impl Default for BoundCOptions {
    fn default() -> Self {
        BoundCOptions { ell_equals_m: false, bound_ii: true, bound_ii_penalty: 0 }
    }
}

/// Parameters for [`max_rho`], one variant per pattern family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoParams {
    Ht { m: usize, r: usize, s: usize },
    Bs { lambda: usize, mu: usize },
    Roos { m: usize, r: usize, s: usize },
    BoundC { ell: usize, m: usize, r: usize, s: usize },
}

/// Number of copies of `R` a pattern may need.
pub fn max_rho(params: &RhoParams, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::Param("n must be positive".into()));
    }
    let positive = |vals: &[usize]| {
        if vals.iter().any(|&v| v == 0) {
            Err(Error::Param(format!("parameters must be positive: {params:?}")))
        } else {
            Ok(())
        }
    };
    match *params {
        RhoParams::Ht { m, r, s } => {
            positive(&[m, r, s])?;
            Ok(s * (m + r) / n + 1)
        }
        RhoParams::Bs { lambda, mu } => {
            positive(&[lambda, mu])?;
            Ok((mu * lambda + 1 + mu * (lambda + 1)) / n + 1)
        }
        RhoParams::Roos { m, r, s } => {
            positive(&[m, r, s])?;
            Ok((m + s - 1) * (m + r) / n + 1)
        }
        RhoParams::BoundC { ell, m, r, s } => {
            positive(&[ell, m, r, s])?;
            let len = ell + r + s * (m + r);
            Ok((n - 1 + len).div_ceil(n))
        }
    }
}

/// `ℓ + 1 + s - r⌊ℓ/(m+r)⌋ - max(ℓ mod (m+r) - m, 0)` when
/// `gcd(m+r, n) <= m`, otherwise `ℓ + 1`.
pub fn bound_i_value(ell: usize, m: usize, r: usize, s: usize, n: usize) -> Result<usize> {
    if m == 0 || m > ell || r == 0 || s == 0 || n == 0 {
        return Err(Error::Param(format!("bound I needs 1 <= m <= ell, r >= 1, s >= 1 (got ell={ell} m={m} r={r} s={s})")));
    }
    if gcd((m + r) as u64, n as u64) as usize > m {
        return Ok(ell + 1);
    }
    let step = m + r;
    Ok(ell + 1 + s - r * (ell / step) - (ell % step).saturating_sub(m))
}

/// `λμ + μ + s - λ - 1` when `μ` does not divide `n`, otherwise `λμ + μ`.
pub fn bound_ii_value(lambda: usize, mu: usize, s: usize, n: usize) -> Result<usize> {
    if lambda == 0 || mu < 2 || s < lambda + 1 || n == 0 {
        return Err(Error::Param(format!("bound II needs lambda >= 1, mu >= 2, s >= lambda+1 (got {lambda}, {mu}, {s})")));
    }
    if n % mu == 0 {
        Ok(lambda * mu + mu)
    } else {
        Ok(lambda * mu + mu + s - lambda - 1)
    }
}

/// Block count of a stride cycle made entirely of blocks.
const UNBOUNDED: usize = usize::MAX / 16;

/// Zero-run tables of a vector that is not all zero.
struct Runs {
    n: usize,
    fwd: Vec<usize>,
    bwd: Vec<usize>,
    longest: usize,
}

impl Runs {
    fn of(zero: &[bool]) -> Runs {
        let n = zero.len();
        let anchor = zero.iter().position(|&z| !z).expect("vector has a nonzero entry");
        let mut fwd = vec![0; n];
        let mut bwd = vec![0; n];
        for k in 1..=n {
            let p = (anchor + n - k) % n;
            fwd[p] = if zero[p] { fwd[(p + 1) % n] + 1 } else { 0 };
            let p = (anchor + k) % n;
            bwd[p] = if zero[p] { bwd[(p + n - 1) % n] + 1 } else { 0 };
        }
        let longest = fwd.iter().copied().max().unwrap_or(0);
        Runs { n, fwd, bwd, longest }
    }

    /// Backward zero run ending just before 0-based position `p - back`.
    fn run_before(&self, p: usize, back: usize) -> usize {
        self.bwd[(p + self.n * (back / self.n + 1) - back - 1) % self.n]
    }

    /// For each position, how many consecutive strides of `step` starting
    /// there open a run of at least `m` zeros.
    fn block_counts(&self, m: usize, step: usize) -> Vec<usize> {
        let n = self.n;
        let ok: Vec<bool> = self.fwd.iter().map(|&z| z >= m).collect();
        let g = gcd(step as u64, n as u64) as usize;
        let len = n / g;
        let mut counts = vec![0; n];
        for c in 0..g {
            let cycle: Vec<usize> = (0..len).map(|j| (c + j * step) % n).collect();
            let Some(t) = cycle.iter().position(|&p| !ok[p]) else {
                cycle.iter().for_each(|&p| counts[p] = UNBOUNDED);
                continue;
            };
            let mut cur = 0;
            for k in 1..len {
                let p = cycle[(t + len - k) % len];
                cur = if ok[p] { cur + 1 } else { 0 };
                counts[p] = cur;
            }
        }
        counts
    }
}

fn zero_mask(r: &UVec) -> Vec<bool> {
    r.syms().iter().map(|s| s.is_zero()).collect()
}

fn clamp(value: usize, n: usize) -> usize {
    value.min(n + 1)
}

/// 1-based start of a pattern of length `len` placed at 0-based `o` in the
/// reflected vector, expressed in the original orientation.
fn unreflect(o: usize, len: usize, n: usize) -> usize {
    (n - (o + len) % n) % n + 1
}

fn zero_outcome(kind: BoundKind, n: usize) -> BoundOutcome {
    BoundOutcome { kind, value: n + 1, witness: Witness::new("zero", 1, false, &[], 1) }
}

fn trivial_outcome(kind: BoundKind) -> BoundOutcome {
    BoundOutcome { kind, value: 1, witness: Witness::new("trivial", 1, false, &[], 1) }
}

/// Shared prologue: the zero code and codes with no known zeros.
fn special_case(kind: BoundKind, r: &UVec) -> Option<BoundOutcome> {
    if r.is_all_zero() {
        Some(zero_outcome(kind, r.len()))
    } else if r.count(USym::Zero) == 0 {
        Some(trivial_outcome(kind))
    } else {
        None
    }
}

/// Longest cyclic run of zeros plus one.
pub fn bch(spec: &CyclicCodeSpec) -> BoundOutcome {
    bch_of(&r_vector(spec))
}

pub fn bch_of(r: &UVec) -> BoundOutcome {
    if let Some(out) = special_case(BoundKind::Bch, r) {
        return out;
    }
    let runs = Runs::of(&zero_mask(r));
    let start = runs.fwd.iter().position(|&z| z == runs.longest).expect("longest run exists");
    let witness = Witness::new("bch", start + 1, false, &[("ell", runs.longest)], 1);
    BoundOutcome { kind: BoundKind::Bch, value: clamp(runs.longest + 1, r.len()), witness }
}

/// Hartmann–Tzeng: `m + s` for `s` blocks `0^m Δ^r` with `gcd(m+r, n) <= m`.
pub fn ht(spec: &CyclicCodeSpec) -> BoundOutcome {
    ht_of(&r_vector(spec))
}

pub fn ht_of(r: &UVec) -> BoundOutcome {
    ht_limited(r, None)
}

/// HT with the number of blocks capped at `max_s`.
pub fn ht_limited(r: &UVec, max_s: Option<usize>) -> BoundOutcome {
    if let Some(out) = special_case(BoundKind::Ht, r) {
        return out;
    }
    let n = r.len();
    let runs = Runs::of(&zero_mask(r));
    let mut best: Option<(usize, usize, usize, usize, usize)> = None;
    for m in 1..=runs.longest {
        for rr in 1..=n {
            if gcd((m + rr) as u64, n as u64) as usize > m {
                continue;
            }
            let counts = runs.block_counts(m, m + rr);
            for (p, &c) in counts.iter().enumerate() {
                let s = max_s.map_or(c, |cap| c.min(cap)).min(n + 1);
                if s >= 1 && best.map_or(true, |b| m + s > b.0) {
                    best = Some((m + s, m, rr, s, p));
                }
            }
        }
    }
    let (value, m, rr, s, p) = best.expect("a zero entry gives one block");
    let rho = max_rho(&RhoParams::Ht { m, r: rr, s }, n).expect("positive parameters");
    let witness = Witness::new("ht", p + 1, false, &[("m", m), ("r", rr), ("s", s)], rho);
    BoundOutcome { kind: BoundKind::Ht, value: clamp(value, n), witness }
}

/// Betti–Sala: `λμ + μ` for `0^{λμ} (Δ 0^{μ-1})^{λ+1}` or its mirror.
pub fn bs(spec: &CyclicCodeSpec) -> BoundOutcome {
    bs_of(&r_vector(spec))
}

pub fn bs_of(r: &UVec) -> BoundOutcome {
    if let Some(out) = special_case(BoundKind::Bs, r) {
        return out;
    }
    let n = r.len();
    let mut best: Option<(usize, Witness)> = None;
    for mirrored in [false, true] {
        let v = if mirrored { r.reflect() } else { r.clone() };
        let runs = Runs::of(&zero_mask(&v));
        for mu in 1..=runs.longest {
            let counts = runs.block_counts(mu - 1, mu);
            for q in 0..n {
                // q holds the first Δ; blocks of μ-1 zeros follow it.
                let lambda = (runs.run_before(q, 0) / mu).min(counts[(q + 1) % n].saturating_sub(1));
                if lambda == 0 {
                    continue;
                }
                let value = lambda * mu + mu;
                if best.as_ref().map_or(true, |b| value > b.0) {
                    let len = lambda * mu + (lambda + 1) * mu;
                    let o = (q + n * lambda * mu - lambda * mu) % n;
                    let start = if mirrored { unreflect(o, len, n) } else { o + 1 };
                    let rho = max_rho(&RhoParams::Bs { lambda, mu }, n).expect("positive parameters");
                    best = Some((value, Witness::new("bs", start, mirrored, &[("lambda", lambda), ("mu", mu)], rho)));
                }
            }
        }
    }
    match best {
        Some((value, witness)) => BoundOutcome { kind: BoundKind::Bs, value: clamp(value, n), witness },
        None => trivial_outcome(BoundKind::Bs),
    }
}

/// Roos: strides of `m + r` with `gcd(m+r, n) = 1`, each either a block
/// `0^m Δ^r` or a hole, fewer than `m` holes before the last block; the
/// value is `m + s`. One full cycle of `n` strides is scanned per start.
pub fn roos(spec: &CyclicCodeSpec) -> BoundOutcome {
    roos_of(&r_vector(spec))
}

pub fn roos_of(r: &UVec) -> BoundOutcome {
    if let Some(out) = special_case(BoundKind::Roos, r) {
        return out;
    }
    let n = r.len();
    let runs = Runs::of(&zero_mask(r));
    let mut best: Option<(usize, usize, usize, usize)> = None;
    for m in 1..=runs.longest {
        for rr in 1..=n {
            let step = m + rr;
            if gcd(step as u64, n as u64) != 1 {
                continue;
            }
            let blocks = roos_block_counts(&runs, m, step);
            for (p, &s) in blocks.iter().enumerate() {
                if s >= 1 && best.map_or(true, |b| m + s > b.0) {
                    best = Some((m + s, m, rr, p));
                }
            }
        }
    }
    let Some((value, m, rr, p)) = best else {
        return trivial_outcome(BoundKind::Roos);
    };
    let slots = roos_slots(&runs, m, m + rr, p);
    let s = slots.len();
    let rho = max_rho(&RhoParams::Roos { m, r: rr, s }, n).expect("positive parameters");
    let mut witness = Witness::new("roos", p + 1, false, &[("m", m), ("r", rr), ("s", s)], rho);
    witness.slots = slots;
    BoundOutcome { kind: BoundKind::Roos, value: clamp(value, n), witness }
}

/// The Roos value of one configuration: blocks `0^m` at stride `m + r`
/// starting from 1-based position `start`. `None` when the stride is not a
/// unit mod `n` or no block begins at `start`.
pub fn roos_at(r: &UVec, m: usize, rr: usize, start: usize) -> Option<BoundOutcome> {
    let n = r.len();
    if m == 0 || rr == 0 || start == 0 || start > n || gcd((m + rr) as u64, n as u64) != 1 {
        return None;
    }
    let runs = Runs::of(&zero_mask(r));
    let p = start - 1;
    let slots = roos_slots(&runs, m, m + rr, p);
    if slots.first() != Some(&0) {
        return None;
    }
    let s = slots.len();
    let rho = max_rho(&RhoParams::Roos { m, r: rr, s }, n).ok()?;
    let mut witness = Witness::new("roos", start, false, &[("m", m), ("r", rr), ("s", s)], rho);
    witness.slots = slots;
    Some(BoundOutcome { kind: BoundKind::Roos, value: clamp(m + s, n), witness })
}

/// Blocks counted from each start (0 where the start is not a block),
/// stopping at the `m`-th hole or after `n` strides.
fn roos_block_counts(runs: &Runs, m: usize, step: usize) -> Vec<usize> {
    let n = runs.n;
    let seq: Vec<usize> = (0..n).map(|j| j * step % n).collect();
    let ok: Vec<bool> = seq.iter().map(|&p| runs.fwd[p] >= m).collect();
    let holes: Vec<usize> = (0..2 * n).filter(|&j| !ok[j % n]).collect();
    let per_cycle = holes.len() / 2;
    let mut out = vec![0; n];
    let mut first = 0;
    for a in 0..n {
        while first < holes.len() && holes[first] < a {
            first += 1;
        }
        if !ok[a] {
            continue;
        }
        out[seq[a]] = if per_cycle < m { n - per_cycle } else { holes[first + m - 1] - a - (m - 1) };
    }
    out
}

fn roos_slots(runs: &Runs, m: usize, step: usize, p: usize) -> Vec<usize> {
    let n = runs.n;
    let mut slots = Vec::new();
    let mut holes = 0;
    for j in 0..n {
        if runs.fwd[(p + j * step) % n] >= m {
            slots.push(j);
        } else {
            holes += 1;
            if holes == m {
                break;
            }
        }
    }
    slots
}

/// Bound C: patterns `(0^ℓ Δ^r)(0^m Δ^r)^s` or their mirror valued by
/// [`bound_i_value`], and on `r = 1` patterns also by [`bound_ii_value`].
/// The longest zero run alone (the BCH value) is the fallback.
pub fn bound_c(spec: &CyclicCodeSpec) -> BoundOutcome {
    bound_c_of(&r_vector(spec), &BoundCOptions::default())
}

pub fn bound_c_of(r: &UVec, opts: &BoundCOptions) -> BoundOutcome {
    if let Some(out) = special_case(BoundKind::BoundC, r) {
        return out;
    }
    let n = r.len();
    let base = bch_of(r);
    let mut best = (base.value, Witness { case: "run".into(), ..base.witness });
    for mirrored in [false, true] {
        let v = if mirrored { r.reflect() } else { r.clone() };
        let runs = Runs::of(&zero_mask(&v));
        for m in 1..=runs.longest {
            for rr in 1..=n {
                let step = m + rr;
                let divides = gcd(step as u64, n as u64) as usize > m;
                let counts = runs.block_counts(m, step);
                for (q, &count) in counts.iter().enumerate() {
                    if count == 0 {
                        continue;
                    }
                    let run = runs.run_before(q, rr);
                    if run < m {
                        continue;
                    }
                    let ell = if opts.ell_equals_m { m } else { run };
                    let s = if divides { 1 } else { count.min(n + 1) };
                    let value = bound_i_value(ell, m, rr, s, n).expect("valid parameters");
                    if value > best.0 {
                        let len = ell + rr + s * step;
                        let o = (q + n * (len / n + 1) - ell - rr) % n;
                        let start = if mirrored { unreflect(o, len, n) } else { o + 1 };
                        let rho = max_rho(&RhoParams::BoundC { ell, m, r: rr, s }, n).expect("positive parameters");
                        let case = if divides { "I-else" } else { "I" };
                        best = (value, Witness::new(case, start, mirrored, &[("ell", ell), ("m", m), ("r", rr), ("s", s)], rho));
                    }
                    if !opts.bound_ii || rr != 1 {
                        continue;
                    }
                    let mu = m + 1;
                    let lambda = (run / mu).min(count.saturating_sub(1));
                    if lambda == 0 || (opts.ell_equals_m && lambda * mu != m) {
                        continue;
                    }
                    let divisor = n % mu == 0;
                    let s = if divisor { lambda + 1 } else { count.min(n + 1) };
                    let value = bound_ii_value(lambda, mu, s, n).expect("valid parameters").saturating_sub(opts.bound_ii_penalty);
                    if value > best.0 {
                        let ell = lambda * mu;
                        let len = ell + 1 + s * mu;
                        let o = (q + n * (len / n + 1) - ell - 1) % n;
                        let start = if mirrored { unreflect(o, len, n) } else { o + 1 };
                        let rho = max_rho(&RhoParams::BoundC { ell, m, r: 1, s }, n).expect("positive parameters");
                        let case = if divisor { "II-divisor" } else { "II" };
                        let mut params = vec![("lambda", lambda), ("mu", mu), ("s", s)];
                        if opts.bound_ii_penalty > 0 {
                            params.push(("penalty", opts.bound_ii_penalty));
                        }
                        best = (value, Witness::new(case, start, mirrored, &params, rho));
                    }
                }
            }
        }
    }
    BoundOutcome { kind: BoundKind::BoundC, value: clamp(best.0, n), witness: best.1 }
}

/// Computes one bound.
pub fn compute(kind: BoundKind, spec: &CyclicCodeSpec) -> BoundOutcome {
    compute_of(kind, &r_vector(spec))
}

pub fn compute_of(kind: BoundKind, r: &UVec) -> BoundOutcome {
    match kind {
        BoundKind::Bch => bch_of(r),
        BoundKind::Ht => ht_of(r),
        BoundKind::Bs => bs_of(r),
        BoundKind::Roos => roos_of(r),
        BoundKind::BoundC => bound_c_of(r, &BoundCOptions::default()),
    }
}

/// All five bounds, in [`BoundKind::ALL`] order.
pub fn all_bounds(spec: &CyclicCodeSpec) -> Vec<BoundOutcome> {
    let r = r_vector(spec);
    BoundKind::ALL.iter().map(|&k| compute_of(k, &r)).collect()
}

fn atoms(parts: &[(USym, usize)]) -> Pattern {
    Pattern::concat(parts.iter().filter(|p| p.1 > 0).map(|&(sym, k)| match sym {
        USym::Zero => Pattern::zeros(k),
        USym::Any => Pattern::any(k),
        USym::NonZero => Pattern::nonzero(k),
    }))
}

/// The pattern a witness claims, in unmirrored form.
pub fn witness_pattern(kind: BoundKind, w: &Witness) -> Result<Pattern> {
    use USym::{Any, Zero};
    let p = |k: &str| w.param(k);
    let pattern = match (kind, w.case.as_str()) {
        (_, "bch") | (_, "run") => Pattern::zeros(p("ell")?),
        (BoundKind::Ht, "ht") => atoms(&[(Zero, p("m")?), (Any, p("r")?)]).repeat(p("s")?),
        (BoundKind::Bs, "bs") => {
            let (lambda, mu) = (p("lambda")?, p("mu")?);
            Pattern::concat([Pattern::zeros(lambda * mu), atoms(&[(Any, 1), (Zero, mu - 1)]).repeat(lambda + 1)])
        }
        (BoundKind::Roos, "roos") => {
            let (m, r) = (p("m")?, p("r")?);
            let last = *w.slots.last().ok_or_else(|| Error::Param("Roos witness without slots".into()))?;
            Pattern::concat((0..=last).map(|j| {
                if w.slots.contains(&j) {
                    atoms(&[(Zero, m), (Any, r)])
                } else {
                    Pattern::any(m + r)
                }
            }))
        }
        (BoundKind::BoundC, "I") | (BoundKind::BoundC, "I-else") => {
            let (ell, m, r, s) = (p("ell")?, p("m")?, p("r")?, p("s")?);
            Pattern::concat([atoms(&[(Zero, ell), (Any, r)]), atoms(&[(Zero, m), (Any, r)]).repeat(s)])
        }
        (BoundKind::BoundC, "II") | (BoundKind::BoundC, "II-divisor") => {
            let (lambda, mu, s) = (p("lambda")?, p("mu")?, p("s")?);
            Pattern::concat([atoms(&[(Zero, lambda * mu), (Any, 1)]), atoms(&[(Zero, mu - 1), (Any, 1)]).repeat(s)])
        }
        (kind, case) => return Err(Error::Param(format!("case {case:?} does not belong to {kind}"))),
    };
    Ok(pattern)
}

/// Recomputes the value a witness claims and checks its pattern against
/// `r` at the recorded start. True iff both agree with `outcome`.
pub fn replay(r: &UVec, outcome: &BoundOutcome) -> Result<bool> {
    let n = r.len();
    let w = &outcome.witness;
    let p = |k: &str| w.param(k);
    match w.case.as_str() {
        "zero" => return Ok(r.is_all_zero() && outcome.value == n + 1),
        "trivial" => return Ok(outcome.value == 1),
        _ => {}
    }
    let (value, rho) = match w.case.as_str() {
        "bch" | "run" => (p("ell")? + 1, 1),
        "ht" => {
            let (m, rr, s) = (p("m")?, p("r")?, p("s")?);
            if gcd((m + rr) as u64, n as u64) as usize > m {
                return Ok(false);
            }
            (m + s, max_rho(&RhoParams::Ht { m, r: rr, s }, n)?)
        }
        "bs" => {
            let (lambda, mu) = (p("lambda")?, p("mu")?);
            (lambda * mu + mu, max_rho(&RhoParams::Bs { lambda, mu }, n)?)
        }
        "roos" => {
            let (m, rr, s) = (p("m")?, p("r")?, p("s")?);
            let last = *w.slots.last().unwrap_or(&usize::MAX);
            let holes = last.wrapping_add(1).wrapping_sub(s);
            if gcd((m + rr) as u64, n as u64) != 1 || w.slots.len() != s || w.slots[0] != 0 || holes >= m {
                return Ok(false);
            }
            (m + s, max_rho(&RhoParams::Roos { m, r: rr, s }, n)?)
        }
        "I" | "I-else" => {
            let (ell, m, rr, s) = (p("ell")?, p("m")?, p("r")?, p("s")?);
            (bound_i_value(ell, m, rr, s, n)?, max_rho(&RhoParams::BoundC { ell, m, r: rr, s }, n)?)
        }
        "II" | "II-divisor" => {
            let (lambda, mu, s) = (p("lambda")?, p("mu")?, p("s")?);
            let penalty = w.params.get("penalty").copied().unwrap_or(0);
            let value = bound_ii_value(lambda, mu, s, n)?.saturating_sub(penalty);
            (value, max_rho(&RhoParams::BoundC { ell: lambda * mu, m: mu - 1, r: 1, s }, n)?)
        }
        case => return Err(Error::Param(format!("unknown witness case {case:?}"))),
    };
    if rho != w.rho || w.start == 0 || w.start > n {
        return Ok(false);
    }
    let mut pattern = pattern_expand(&witness_pattern(outcome.kind, w)?)?;
    if w.mirrored {
        pattern = pattern.reflect();
    }
    let host = r.replicate(rho);
    Ok(matches_at(&pattern, &host, w.start - 1) && clamp(value, n) == outcome.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::parse_defining_set;

    fn spec(q: u32, n: usize, text: &str) -> CyclicCodeSpec {
        CyclicCodeSpec::new(q, n, parse_defining_set(text, n, q).unwrap()).unwrap()
    }

    fn binary21() -> CyclicCodeSpec {
        spec(2, 21, "C1+C3+C7+C9")
    }

    #[test]
    fn value_formulas() {
        assert_eq!(bound_i_value(7, 2, 1, 5, 29).unwrap(), 11);
        assert_eq!(bound_i_value(3, 1, 2, 4, 7).unwrap(), 6);
        assert_eq!(bound_i_value(4, 4, 1, 3, 7).unwrap(), 8);
        assert_eq!(bound_i_value(4, 2, 2, 3, 8).unwrap(), 5);
        assert!(bound_i_value(1, 2, 1, 1, 7).is_err());
        assert_eq!(bound_ii_value(1, 2, 2, 7).unwrap(), 4);
        assert_eq!(bound_ii_value(2, 4, 5, 28).unwrap(), 12);
        assert_eq!(bound_ii_value(2, 4, 5, 27).unwrap(), 14);
        assert_eq!(bound_ii_value(2, 4, 4, 27).unwrap(), 13);
        assert!(bound_ii_value(2, 4, 2, 27).is_err());
        assert!(bound_ii_value(1, 1, 3, 27).is_err());
    }

    #[test]
    fn rho_examples() {
        assert_eq!(max_rho(&RhoParams::Roos { m: 3, r: 1, s: 4 }, 21).unwrap(), 2);
        assert_eq!(max_rho(&RhoParams::Ht { m: 3, r: 1, s: 4 }, 21).unwrap(), 1);
        assert_eq!(max_rho(&RhoParams::BoundC { ell: 7, m: 2, r: 1, s: 5 }, 50).unwrap(), 2);
        assert!(max_rho(&RhoParams::Ht { m: 0, r: 1, s: 1 }, 21).is_err());
    }

    #[test]
    fn binary21_values() {
        let s = binary21();
        assert_eq!(bch(&s).value, 5);
        assert_eq!(ht(&s).value, 6);
        assert_eq!(bs(&s).value, 6);
        let rs = roos(&s);
        assert_eq!(rs.value, 8);
        assert_eq!(bound_c(&s).value, 6);
        for out in all_bounds(&s) {
            assert!(replay(&r_vector(&s), &out).unwrap(), "{out:?}");
        }
    }

    #[test]
    fn roos_worked_example_configurations() {
        let r = r_vector(&binary21());
        let runs = Runs::of(&zero_mask(&r));
        assert_eq!(roos_block_counts(&runs, 3, 4)[2], 4);
        assert_eq!(roos_slots(&runs, 3, 4, 2), vec![0, 1, 3, 5]);
        // Stride 17 (m = 2, r = 15) from position 7.
        assert_eq!(roos_block_counts(&runs, 2, 17)[6], 6);
        assert_eq!(roos_block_counts(&runs, 2, 19)[6], 2);
        let at = roos_at(&r, 3, 1, 3).unwrap();
        assert_eq!((at.value, at.witness.slots.clone()), (7, vec![0, 1, 3, 5]));
        assert!(replay(&r, &at).unwrap());
        assert_eq!(roos_at(&r, 2, 15, 7).unwrap().value, 8);
        assert!(roos_at(&r, 3, 1, 1).is_none());
        assert!(roos_at(&r, 2, 1, 3).is_none());
    }

    #[test]
    fn small_examples() {
        let s = spec(2, 7, "C1");
        for out in all_bounds(&s) {
            assert_eq!(out.value, 3, "{out:?}");
        }
        let empty = spec(2, 21, "");
        assert!(all_bounds(&empty).iter().all(|o| o.value == 1));
        let full = CyclicCodeSpec::new(2, 21, 0..21).unwrap();
        assert!(all_bounds(&full).iter().all(|o| o.value == 22));
    }

    #[test]
    fn ht_with_one_block_is_bch() {
        for text in ["C1", "C1+C3", "C0+C5", "C3+C7+C9"] {
            let r = r_vector(&spec(2, 21, text));
            assert_eq!(ht_limited(&r, Some(1)).value, bch_of(&r).value, "{text}");
        }
    }

    #[test]
    fn mirrored_witness_replays() {
        // A vector whose best BS pattern only appears reflected.
        let r: UVec = "DD000D00D0000000".parse().unwrap();
        for kind in BoundKind::ALL {
            let out = compute_of(kind, &r);
            assert!(replay(&r, &out).unwrap(), "{out:?}");
            let refl = compute_of(kind, &r.reflect());
            assert_eq!(refl.value, out.value, "{kind}");
            assert!(replay(&r.reflect(), &refl).unwrap());
        }
    }

    #[test]
    fn tampered_witness_fails_replay() {
        let r = r_vector(&binary21());
        let mut out = roos_of(&r);
        out.value += 1;
        assert!(!replay(&r, &out).unwrap());
        let mut out = ht_of(&r);
        out.witness.start = out.witness.start % 21 + 1;
        assert!(!replay(&r, &out).unwrap());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in BoundKind::ALL {
            assert_eq!(k.name().parse::<BoundKind>().unwrap(), k);
            assert_eq!(k.column().parse::<BoundKind>().unwrap(), k);
        }
        assert!("xyz".parse::<BoundKind>().is_err());
    }
}
