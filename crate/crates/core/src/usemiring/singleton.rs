//! The singleton procedure, pseudo-rank and the min-pseudo-rank bound.

use std::collections::{HashMap, HashSet};

use super::{enumerate_a, UMatrix, UVec};
use crate::cyclic::{r_vector, CyclicCodeSpec};
use crate::error::{Error, Result};

/// How singleton columns are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingletonMode {
    /// Always delete via the lowest-index singleton column.
    Greedy,
    /// Backtrack over every choice of row to delete.
    Exhaustive,
}

/// Result of running the singleton procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingletonOutcome {
    pub success: bool,
    /// The s-deletions performed, as `(row, column)` pairs in order.
    pub deletions: Vec<(usize, usize)>,
    /// The row left at the end, on success.
    pub last_row: Option<usize>,
}

struct Masks {
    nz: Vec<u128>,
    dp: Vec<u128>,
}

impl Masks {
    fn of(m: &UMatrix) -> Result<Masks> {
        if m.ncols() > 128 {
            return Err(Error::Param(format!("matrices wider than 128 columns are unsupported (got {})", m.ncols())));
        }
        Ok(Masks {
            nz: m.rows().iter().map(UVec::nonzero_mask).collect(),
            dp: m.rows().iter().map(UVec::known_nonzero_mask).collect(),
        })
    }

    /// Lowest column where row `x` holds Δ′ and every other listed row holds 0.
    fn singleton_col(&self, x: usize, others: impl Iterator<Item = usize>) -> Option<usize> {
        let blocked = others.filter(|&y| y != x).fold(0u128, |acc, y| acc | self.nz[y]);
        let free = self.dp[x] & !blocked;
        (free != 0).then(|| free.trailing_zeros() as usize)
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// Runs the singleton procedure on `m`.
///
/// Succeeds iff repeated s-deletions leave a single row holding a Δ′.
/// Success does not depend on the order of deletions (deleting a row only
/// relaxes the conditions on the others), so both modes agree on
/// `success`; they can differ in the recorded order.
pub fn singleton_procedure(m: &UMatrix, mode: SingletonMode) -> Result<SingletonOutcome> {
    let masks = Masks::of(m)?;
    let rows = m.nrows();
    if rows == 0 {
        return Ok(SingletonOutcome { success: false, deletions: Vec::new(), last_row: None });
    }
    match mode {
        SingletonMode::Greedy => Ok(greedy(&masks, m.ncols())),
        SingletonMode::Exhaustive => {
            if rows > 64 {
                return Err(Error::Param("exhaustive mode supports at most 64 rows".into()));
            }
            let full = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
            let mut failed = HashSet::new();
            let mut deletions = Vec::new();
            match exhaustive(&masks, full, &mut failed, &mut deletions) {
                Some(last) => Ok(SingletonOutcome { success: true, deletions, last_row: Some(last) }),
                None => Ok(SingletonOutcome { success: false, deletions: Vec::new(), last_row: None }),
            }
        }
    }
}

fn greedy(masks: &Masks, ncols: usize) -> SingletonOutcome {
    let mut alive: Vec<usize> = (0..masks.nz.len()).collect();
    let mut deletions = Vec::new();
    loop {
        if alive.len() == 1 {
            let last = alive[0];
            let success = masks.dp[last] != 0;
            return SingletonOutcome { success, deletions, last_row: success.then_some(last) };
        }
        let pick = (0..ncols).find_map(|c| {
            let mut holders = alive.iter().copied().filter(|&y| masks.nz[y] >> c & 1 == 1);
            match (holders.next(), holders.next()) {
                (Some(x), None) if masks.dp[x] >> c & 1 == 1 => Some((x, c)),
                _ => None,
            }
        });
        match pick {
            Some((x, c)) => {
                deletions.push((x, c));
                alive.retain(|&y| y != x);
            }
            None => return SingletonOutcome { success: false, deletions, last_row: None },
        }
    }
}

fn exhaustive(masks: &Masks, alive: u64, failed: &mut HashSet<u64>, out: &mut Vec<(usize, usize)>) -> Option<usize> {
    if alive.count_ones() == 1 {
        let last = alive.trailing_zeros() as usize;
        return (masks.dp[last] != 0).then_some(last);
    }
    if failed.contains(&alive) {
        return None;
    }
    for x in bits(alive) {
        if let Some(c) = masks.singleton_col(x, bits(alive)) {
            out.push((x, c));
            if let Some(last) = exhaustive(masks, alive & !(1 << x), failed, out) {
                return Some(last);
            }
            out.pop();
        }
    }
    failed.insert(alive);
    None
}

/// Exact pseudo-rank: the largest number of rows on which the singleton
/// procedure succeeds.
///
/// A row set passes iff its rows can be listed so that each row has a Δ′
/// outside the nonzero supports of the rows listed before it. The search
/// therefore runs over unions of supports instead of row subsets; `cap`
/// bounds `2^min(rows, support columns)`.
pub fn prk(m: &UMatrix, cap: u128) -> Result<u32> {
    let masks = Masks::of(m)?;
    let support = masks.nz.iter().fold(0u128, |a, &b| a | b);
    let width = (m.nrows() as u32).min(support.count_ones());
    let needed = 1u128.checked_shl(width).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let mut memo = HashMap::new();
    Ok(longest_chain(&masks, 0, &mut memo))
}

fn longest_chain(masks: &Masks, used: u128, memo: &mut HashMap<u128, u32>) -> u32 {
    if let Some(&v) = memo.get(&used) {
        return v;
    }
    let mut best = 0;
    for x in 0..masks.nz.len() {
        if masks.dp[x] & !used != 0 {
            best = best.max(1 + longest_chain(masks, used | masks.nz[x], memo));
        }
    }
    memo.insert(used, best);
    best
}

/// Pseudo-rank by descending search over row subsets, each tested with the
/// exhaustive singleton procedure. Exponential; kept as a reference.
pub fn prk_by_subsets(m: &UMatrix, cap: u128) -> Result<u32> {
    let rows = m.nrows();
    let needed = 1u128.checked_shl(rows as u32).unwrap_or(u128::MAX);
    if needed > cap || rows > 64 {
        return Err(Error::CapExceeded { needed, cap });
    }
    for t in (1..=rows).rev() {
        let mut idx: Vec<usize> = (0..t).collect();
        loop {
            let sub = m.select(&idx);
            if singleton_procedure(&sub, SingletonMode::Exhaustive)?.success {
                return Ok(t as u32);
            }
            // Next t-combination in lexicographic order.
            let mut i = t;
            while i > 0 && idx[i - 1] == rows - t + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..t {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(0)
}

/// Smallest rotation/reflection image of a 0/Δ′ vector, as a Δ′ mask.
fn canonical(mask: u128, n: usize) -> u128 {
    let full = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let rot = |x: u128, k: usize| if k == 0 { x } else { ((x << k) | (x >> (n - k))) & full };
    let rev = (0..n).filter(|&j| mask >> j & 1 == 1).fold(0u128, |a, j| a | 1 << (n - 1 - j));
    (0..n).flat_map(|k| [rot(mask, k), rot(rev, k)]).min().unwrap_or(mask)
}

/// `min { prk(M(u)) : u in 𝒜(r) }`, or `n + 1` when `𝒜(r)` is empty.
pub fn min_prk(r: &UVec, a_cap: u128, subset_cap: u128) -> Result<u32> {
    let n = r.len();
    let mut seen: HashMap<u128, u32> = HashMap::new();
    let mut best = n as u32 + 1;
    for u in enumerate_a(r, a_cap)? {
        let key = canonical(u.known_nonzero_mask(), n);
        let value = match seen.get(&key) {
            Some(&v) => v,
            None => {
                let v = prk(&UMatrix::circulant(&u), subset_cap)?;
                seen.insert(key, v);
                v
            }
        };
        best = best.min(value);
    }
    Ok(best)
}

/// The min-pseudo-rank lower bound on the distance of a cyclic code.
/// Exponential in the dimension of the code.
pub fn schaub_lower_bound(spec: &CyclicCodeSpec, a_cap: u128, subset_cap: u128) -> Result<u32> {
    min_prk(&r_vector(spec), a_cap, subset_cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&str]) -> UMatrix {
        UMatrix::new(rows.iter().map(|r| r.parse().unwrap()).collect()).unwrap()
    }

    #[test]
    fn procedure_examples() {
        for mode in [SingletonMode::Greedy, SingletonMode::Exhaustive] {
            assert!(singleton_procedure(&mat(&["N0", "0N"]), mode).unwrap().success);
            assert!(!singleton_procedure(&mat(&["DD", "DD"]), mode).unwrap().success);
            assert!(!singleton_procedure(&mat(&["NN", "NN"]), mode).unwrap().success);
            assert!(singleton_procedure(&mat(&["N"]), mode).unwrap().success);
            assert!(!singleton_procedure(&mat(&["D"]), mode).unwrap().success);
        }
        let out = singleton_procedure(&mat(&["ND0", "0DN"]), SingletonMode::Greedy).unwrap();
        assert_eq!(out.deletions, vec![(0, 0)]);
        assert_eq!(out.last_row, Some(1));
    }

    #[test]
    fn prk_examples() {
        let zero: UVec = "000".parse().unwrap();
        assert_eq!(prk(&UMatrix::circulant(&zero), 1 << 20).unwrap(), 0);
        let diag = mat(&["N000", "0N00", "00N0", "000N"]);
        assert_eq!(prk(&diag, 1 << 20).unwrap(), 4);
        assert_eq!(prk(&mat(&["NN", "NN"]), 1 << 20).unwrap(), 1);
        assert_eq!(prk_by_subsets(&mat(&["NN", "NN"]), 1 << 20).unwrap(), 1);
        assert!(matches!(prk(&diag, 8), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn canonical_is_rotation_and_reflection_invariant() {
        let n = 7;
        let m = 0b0010011u128;
        let c = canonical(m, n);
        for k in 0..n {
            let r = ((m << k) | (m >> (n - k))) & 0x7f;
            assert_eq!(canonical(r, n), c);
        }
        let rev = (0..n).filter(|&j| m >> j & 1 == 1).fold(0u128, |a, j| a | 1 << (n - 1 - j));
        assert_eq!(canonical(rev, n), c);
    }
}
