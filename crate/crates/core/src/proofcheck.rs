//! Machine checks of the bound I and bound II constructions.
//!
//! For a vector `R` containing the bound pattern, every `v` in `𝒜(R)` is
//! covered by a finite set of class representatives: vectors over 𝒰 that
//! fix the primary and secondary pivots and leave every other free entry
//! as Δ. Since Δ blocks a singleton column exactly like Δ′ does but never
//! provides one, a representative on which the singleton procedure succeeds
//! certifies every member of its class. Each representative gets the row
//! selection `T = T1 ∪ T2 ∪ T3`, the discard set `B`, and a singleton run
//! on the distinct rows of `T \ B`.
//!
//! Positions are 1-based throughout, as in the row/column displays.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::bounds::{bound_i_value, bound_ii_value, max_rho, RhoParams};
use crate::cyclic::{r_vector, CyclicCodeSpec};
use crate::error::{Error, Result};
use crate::gf::gcd;
use crate::usemiring::{enumerate_a, includes, pattern_expand, singleton_procedure, Pattern, SingletonMode, UMatrix, USym, UVec};

/// Parameters of the construction being checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofParams {
    BoundI { ell: usize, m: usize, r: usize, s: usize },
    BoundII { lambda: usize, mu: usize, s: usize },
}

impl ProofParams {
    /// `(ℓ, m, r, s)` of the underlying `(0^ℓ Δ^r)(0^m Δ^r)^s` shape.
    pub fn shape(&self) -> (usize, usize, usize, usize) {
        match *self {
            ProofParams::BoundI { ell, m, r, s } => (ell, m, r, s),
            ProofParams::BoundII { lambda, mu, s } => (lambda * mu, mu.saturating_sub(1), 1, s),
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            ProofParams::BoundI { ell, m, r, s } => bound_i_value(ell, m, r, s, 1).map(|_| ()),
            ProofParams::BoundII { lambda, mu, s } => bound_ii_value(lambda, mu, s, 1).map(|_| ()),
        }
    }

    /// The value the construction must reach on length-`n` vectors.
    pub fn target(&self, n: usize) -> Result<usize> {
        match *self {
            ProofParams::BoundI { ell, m, r, s } => bound_i_value(ell, m, r, s, n),
            ProofParams::BoundII { lambda, mu, s } => bound_ii_value(lambda, mu, s, n),
        }
    }

    pub fn pattern(&self) -> Pattern {
        let (ell, m, r, s) = self.shape();
        Pattern::concat([
            Pattern::concat([Pattern::zeros(ell), Pattern::any(r)]),
            Pattern::concat([Pattern::zeros(m), Pattern::any(r)]).repeat(s),
        ])
    }

    /// Whether the T3 (bound I) or T2 (bound II) rows exist for length `n`.
    fn has_secondary(&self, n: usize) -> bool {
        match *self {
            ProofParams::BoundI { m, r, .. } => gcd((m + r) as u64, n as u64) as usize <= m,
            ProofParams::BoundII { mu, .. } => n % mu != 0,
        }
    }

    fn with_s(&self, s_new: usize) -> ProofParams {
        match *self {
            ProofParams::BoundI { ell, m, r, .. } => ProofParams::BoundI { ell, m, r, s: s_new },
            ProofParams::BoundII { lambda, mu, .. } => ProofParams::BoundII { lambda, mu, s: s_new },
        }
    }
}

/// One row selection `T` built from a class representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofInstance {
    /// The normalized representative.
    pub v: UVec,
    /// Parameters with `s` raised to the slot of the secondary pivot.
    pub params: ProofParams,
    pub i_primary: usize,
    /// Absent when the gcd condition leaves no secondary rows.
    pub i_secondary: Option<usize>,
    pub t: UMatrix,
    /// Row counts of the three groups. Bound II uses the first two.
    pub groups: [usize; 3],
    /// Right shift of `v` that produced each row.
    pub shifts: Vec<i64>,
}

impl ProofInstance {
    /// Row indices of group `g` (0-based: T1, T2, T3).
    pub fn group_range(&self, g: usize) -> std::ops::Range<usize> {
        let start: usize = self.groups[..g].iter().sum();
        start..start + self.groups[g]
    }

    /// Whether the singleton procedure succeeds on group `g` by itself.
    pub fn group_passes(&self, g: usize) -> Result<bool> {
        let rows = self.t.rows()[self.group_range(g)].to_vec();
        if rows.is_empty() {
            return Ok(true);
        }
        Ok(singleton_procedure(&UMatrix::new(rows)?, SingletonMode::Greedy)?.success)
    }
}

fn sym(v: &UVec, p: i64) -> USym {
    v.at(p)
}

fn set(v: &mut UVec, p: i64, s: USym) {
    let i = v.wrap(p);
    v.set(i, s);
}

/// First position holding Δ′.
pub fn primary_pivot(v: &UVec) -> Result<usize> {
    v.syms().iter().position(|&s| s == USym::NonZero).map(|i| i + 1).ok_or(Error::NoNonzero)
}

/// Walks the slots `r + t(m+r) + j`, `j = 1..m`, for `t = s, s+1, ...` and
/// returns the first Δ′ together with its slot `t`, provided every earlier
/// slot is all zero.
fn secondary_with_slot(v: &UVec, m: usize, r: usize, s: usize) -> Result<(usize, usize)> {
    let n = v.len();
    for t in s..s + n + 1 {
        let slot: Vec<i64> = (1..=m).map(|j| (r + t * (m + r) + j) as i64).collect();
        if let Some(&p) = slot.iter().find(|&&p| sym(v, p) == USym::NonZero) {
            return Ok((v.wrap(p) + 1, t));
        }
        if slot.iter().any(|&p| sym(v, p) != USym::Zero) {
            return Err(Error::NotFound);
        }
    }
    Err(Error::NotFound)
}

/// The secondary pivot of `v` relative to `s` blocks `0^m Δ^r`.
pub fn secondary_pivot(v: &UVec, m: usize, r: usize, s: usize) -> Result<usize> {
    if m == 0 || r == 0 || s == 0 {
        return Err(Error::Param("secondary pivot needs m, r, s >= 1".into()));
    }
    secondary_with_slot(v, m, r, s).map(|(p, _)| p)
}

/// Builds `T` for a normalized representative `v` (pattern tail `0^ℓ` at
/// the last `ℓ` positions, primary pivot inside the leading `Δ^r`).
pub fn build_t(v: &UVec, params: &ProofParams) -> Result<ProofInstance> {
    params.validate()?;
    let n = v.len();
    let (ell, m, r, s) = params.shape();
    let ip = primary_pivot(v)?;
    if ip > r {
        return Err(Error::Param(format!("primary pivot {ip} lies past the leading {r} positions")));
    }
    let secondary = if params.has_secondary(n) { Some(secondary_with_slot(v, m, r, s)?) } else { None };
    let params = match secondary {
        Some((_, t)) => params.with_s(t),
        None => *params,
    };
    let ip_i = ip as i64;
    let mut groups: [Vec<i64>; 3] = Default::default();
    match params {
        ProofParams::BoundI { .. } => {
            groups[0] = (1..=m as i64).map(|k| k - ip_i).collect();
            groups[1] = (m as i64..=ell as i64).collect();
            if let Some((_, t)) = secondary {
                groups[2] = (0..t as i64).map(|k| -(r as i64) - k * (m + r) as i64).collect();
            }
        }
        ProofParams::BoundII { lambda, mu, .. } => {
            groups[0] = (0..(lambda * mu + mu) as i64).map(|k| k + 1 - ip_i).collect();
            if let Some((i2, t)) = secondary {
                groups[1] = (1..=t as i64).map(|k| k * mu as i64 - i2 as i64).collect();
            }
        }
    }
    let shifts: Vec<i64> = groups.iter().flatten().copied().collect();
    let rows = shifts.iter().map(|&sh| v.rotate_right(sh)).collect();
    Ok(ProofInstance {
        v: v.clone(),
        params,
        i_primary: ip,
        i_secondary: secondary.map(|(p, _)| p),
        t: UMatrix::new(rows)?,
        groups: [groups[0].len(), groups[1].len(), groups[2].len()],
        shifts,
    })
}

/// Columns whose singletons the secondary rows provide.
fn singleton_columns(inst: &ProofInstance) -> Vec<i64> {
    let Some(i2) = inst.i_secondary else { return Vec::new() };
    let (_, m, r, s) = inst.params.shape();
    match inst.params {
        ProofParams::BoundI { .. } => (0..s).map(|k| i2 as i64 - r as i64 - (k * (m + r)) as i64).collect(),
        ProofParams::BoundII { mu, .. } => (1..=s).map(|k| (k * mu) as i64).collect(),
    }
}

/// Rows that would block the secondary singletons: rows of T2 (bound I)
/// or T1 (bound II) that are nonzero on any of their columns.
pub fn discard_set(inst: &ProofInstance) -> BTreeSet<usize> {
    let cols = singleton_columns(inst);
    let group = match inst.params {
        ProofParams::BoundI { .. } => inst.group_range(1),
        ProofParams::BoundII { .. } => inst.group_range(0),
    };
    group.filter(|&h| cols.iter().any(|&c| !sym(&inst.t.rows()[h], c).is_zero())).collect()
}

/// The discard set read off the single column the nesting argument uses:
/// `i″ - r` for bound I, `sμ` for bound II.
pub fn discard_set_single_column(inst: &ProofInstance) -> BTreeSet<usize> {
    let cols = singleton_columns(inst);
    let (group, col) = match inst.params {
        ProofParams::BoundI { .. } => (inst.group_range(1), cols.first().copied()),
        ProofParams::BoundII { .. } => (inst.group_range(0), cols.last().copied()),
    };
    let Some(col) = col else { return BTreeSet::new() };
    group.filter(|&h| !sym(&inst.t.rows()[h], col).is_zero()).collect()
}

/// `η_j = #{h in T2 : T2[h, s(m+r) + j] = Δ}` for `j = 1..m` (bound I).
pub fn eta(inst: &ProofInstance) -> Vec<usize> {
    let (_, m, r, s) = inst.params.shape();
    let rows = &inst.t.rows()[inst.group_range(1)];
    (1..=m).map(|j| rows.iter().filter(|row| sym(row, (s * (m + r) + j) as i64) == USym::Any).count()).collect()
}

/// Lemma bound on the discard set for bound I, `λ + 1` for bound II.
pub fn discard_limit(params: &ProofParams) -> usize {
    match *params {
        ProofParams::BoundI { ell, m, r, .. } => r * (ell / (m + r)) + (ell % (m + r)).saturating_sub(m),
        ProofParams::BoundII { lambda, .. } => lambda + 1,
    }
}

/// How a class of `𝒜(R)` was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassRoute {
    /// `T1 ∪ T2 ∪ T3` with discards.
    Construction,
    /// Leading `Δ^r` all zero: a longer pattern with one block fewer.
    Extended,
    /// A plain run of zeros before the pivot.
    Run,
}

/// Outcome on one class representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub route: ClassRoute,
    pub v: UVec,
    pub i_primary: usize,
    pub i_secondary: Option<usize>,
    pub rows: usize,
    pub discarded: usize,
    pub survivors: usize,
    pub success: bool,
    /// Discards within [`discard_limit`].
    pub discard_ok: bool,
    /// Discards equal to the single-column set. Holds on class
    /// representatives; a member with resolved Δ entries may break it.
    pub nested: bool,
    /// `η` nonincreasing (bound I only; true otherwise).
    pub eta_ok: bool,
}

/// Result of checking a construction over all of `𝒜(R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub target: usize,
    pub classes: Vec<ClassReport>,
}

impl ConstructionReport {
    pub fn passed(&self) -> bool {
        self.classes.iter().all(|c| c.success && c.survivors >= self.target && c.discard_ok && c.eta_ok)
    }

    pub fn nested(&self) -> bool {
        self.classes.iter().all(|c| c.nested)
    }

    pub fn max_discarded(&self) -> usize {
        self.classes.iter().map(|c| c.discarded).max().unwrap_or(0)
    }
}

/// Checks one representative with fixed pivots.
pub fn check_instance(inst: &ProofInstance) -> Result<ClassReport> {
    let discard = discard_set(inst);
    let mut kept: Vec<UVec> = Vec::new();
    for (h, row) in inst.t.rows().iter().enumerate() {
        if !discard.contains(&h) && !kept.contains(row) {
            kept.push(row.clone());
        }
    }
    let survivors = kept.len();
    let success = survivors > 0 && singleton_procedure(&UMatrix::new(kept)?, SingletonMode::Greedy)?.success;
    // The size and nesting lemmas only speak about slots inside the vector.
    let (_, m, r, s) = inst.params.shape();
    let inside = inst.i_secondary.is_some() && r + s * (m + r) + m <= inst.v.len();
    let discard_ok = !inside || discard.len() <= discard_limit(&inst.params);
    let nested = !inside || discard == discard_set_single_column(inst);
    let eta_ok = match inst.params {
        ProofParams::BoundI { .. } if inside => eta(inst).windows(2).all(|w| w[0] >= w[1]),
        _ => true,
    };
    Ok(ClassReport {
        route: ClassRoute::Construction,
        v: inst.v.clone(),
        i_primary: inst.i_primary,
        i_secondary: inst.i_secondary,
        rows: inst.t.nrows(),
        discarded: discard.len(),
        survivors,
        success,
        discard_ok,
        nested,
        eta_ok,
    })
}

/// Rows with the pivot `p` moved to positions `1..=z+1`, `z` being the
/// zero run right before `p`. Lower triangular, so always `z + 1` rows.
fn run_class(v: &UVec, p: usize) -> Result<ClassReport> {
    let n = v.len();
    let z = (1..n).take_while(|&k| sym(v, p as i64 - k as i64).is_zero()).count();
    let mut kept: Vec<UVec> = Vec::new();
    for k in 1..=(z + 1).min(n) {
        let row = v.rotate_right(k as i64 - p as i64);
        if !kept.contains(&row) {
            kept.push(row);
        }
    }
    let survivors = kept.len();
    let success = singleton_procedure(&UMatrix::new(kept)?, SingletonMode::Greedy)?.success;
    Ok(ClassReport {
        route: ClassRoute::Run,
        v: v.clone(),
        i_primary: p,
        i_secondary: None,
        rows: survivors,
        discarded: 0,
        survivors,
        success,
        discard_ok: true,
        nested: true,
        eta_ok: true,
    })
}

/// Classes split on the first nonzero position, each certified by a run.
fn run_classes(v: &UVec, out: &mut Vec<ClassReport>) -> Result<()> {
    let mut cur = v.clone();
    for p in 1..=cur.len() as i64 {
        match sym(&cur, p) {
            USym::Zero => continue,
            USym::NonZero => return out.push(run_class(&cur, p as usize)?).pipe(Ok),
            USym::Any => {
                let mut rep = cur.clone();
                set(&mut rep, p, USym::NonZero);
                out.push(run_class(&rep, p as usize)?);
                set(&mut cur, p, USym::Zero);
            }
        }
    }
    Ok(())
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}

impl<T> Pipe for T {}

/// Secondary-pivot classes of a representative whose primary pivot is set.
fn secondary_classes(v: &UVec, params: &ProofParams, out: &mut Vec<ClassReport>) -> Result<()> {
    let n = v.len();
    if !params.has_secondary(n) {
        return out.push(check_instance(&build_t(v, params)?)?).pipe(Ok);
    }
    let (_, m, r, s) = params.shape();
    let mut cur = v.clone();
    for t in s..s + n + 1 {
        let slot: Vec<i64> = (1..=m).map(|j| (r + t * (m + r) + j) as i64).collect();
        for &p in &slot {
            match sym(&cur, p) {
                USym::Zero => {}
                USym::NonZero => return out.push(check_instance(&build_t(&cur, params)?)?).pipe(Ok),
                USym::Any => {
                    let mut rep = cur.clone();
                    set(&mut rep, p, USym::NonZero);
                    out.push(check_instance(&build_t(&rep, params)?)?);
                }
            }
        }
        for &p in &slot {
            set(&mut cur, p, USym::Zero);
        }
    }
    Err(Error::NotFound)
}

/// All classes of a normalized representative `v`.
fn classes(v: &UVec, params: &ProofParams, out: &mut Vec<ClassReport>) -> Result<()> {
    let (_, m, r, _) = params.shape();
    let mut cur = v.clone();
    for p in 1..=r as i64 {
        match sym(&cur, p) {
            USym::Zero => continue,
            USym::NonZero => return secondary_classes(&cur, params, out),
            USym::Any => {
                let mut rep = cur.clone();
                set(&mut rep, p, USym::NonZero);
                secondary_classes(&rep, params, out)?;
                set(&mut cur, p, USym::Zero);
            }
        }
    }
    // The leading Δ^r is all zero, so the pattern extends by one block.
    let shifted = cur.rotate_left((r + m) as i64);
    let extended = match *params {
        ProofParams::BoundI { ell, m, r, s } if s >= 2 => Some(ProofParams::BoundI { ell: ell + r + m, m, r, s: s - 1 }),
        ProofParams::BoundII { lambda, mu, s } if s >= lambda + 3 => Some(ProofParams::BoundII { lambda: lambda + 1, mu, s: s - 1 }),
        _ => None,
    };
    let start = out.len();
    match extended {
        Some(next) => classes(&shifted, &next, out)?,
        None => run_classes(&cur, out)?,
    }
    if extended.is_some() {
        out[start..].iter_mut().filter(|c| c.route == ClassRoute::Construction).for_each(|c| c.route = ClassRoute::Extended);
    }
    Ok(())
}

/// Rotates `r` so that the pattern's leading `0^ℓ` occupies the last `ℓ`
/// positions. Tries the mirrored orientation when the direct one fails.
pub fn normalize(r: &UVec, params: &ProofParams) -> Result<UVec> {
    params.validate()?;
    let n = r.len();
    let (ell, m, rr, s) = params.shape();
    let rho = max_rho(&RhoParams::BoundC { ell, m, r: rr, s }, n)?;
    let pattern = pattern_expand(&params.pattern())?;
    for host in [r.clone(), r.reflect()] {
        if let Some(o) = includes(&pattern, &host.replicate(rho))? {
            return Ok(host.rotate_right(((3 * n - ell % n - o % n) % n) as i64));
        }
    }
    Err(Error::Param(format!("pattern {} is not included", params.pattern())))
}

/// Checks the construction for every member of `𝒜(r)`, through class
/// representatives.
pub fn verify_construction_on(r: &UVec, params: &ProofParams) -> Result<ConstructionReport> {
    let n = r.len();
    let target = params.target(n)?;
    let mut report = ConstructionReport { target, classes: Vec::new() };
    if r.count(USym::Any) == 0 && r.count(USym::NonZero) == 0 {
        return Ok(report);
    }
    let v = normalize(r, params)?;
    classes(&v, params, &mut report.classes)?;
    Ok(report)
}

/// Same check as [`verify_construction_on`] but member by member, which
/// confirms the class argument on small vectors.
pub fn verify_construction_members(r: &UVec, params: &ProofParams, cap: u128) -> Result<ConstructionReport> {
    let n = r.len();
    let target = params.target(n)?;
    let v = normalize(r, params)?;
    let mut report = ConstructionReport { target, classes: Vec::new() };
    for member in enumerate_a(&v, cap)? {
        classes(&member, params, &mut report.classes)?;
    }
    Ok(report)
}

/// True iff the construction certifies the bound value on every member of
/// `𝒜(R(n, S))`.
pub fn verify_construction(spec: &CyclicCodeSpec, params: &ProofParams) -> Result<bool> {
    Ok(verify_construction_on(&r_vector(spec), params)?.passed())
}

/// Rows of `T` as 0/D/N strings, groups separated by dashes, discarded
/// rows marked.
pub fn render(inst: &ProofInstance) -> String {
    let discard = discard_set(inst);
    let width = inst.v.len();
    let mut out = String::new();
    let mut row = 0;
    for (g, &size) in inst.groups.iter().enumerate() {
        if size == 0 {
            continue;
        }
        if g > 0 && row > 0 {
            let _ = writeln!(out, "{}", "-".repeat(width));
        }
        for _ in 0..size {
            let mark = if discard.contains(&row) { "  discarded" } else { "" };
            let _ = writeln!(out, "{}{mark}", inst.t.rows()[row]);
            row += 1;
        }
    }
    out
}
