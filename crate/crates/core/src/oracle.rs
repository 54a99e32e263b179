//! Exact minimum distance by exhaustive enumeration of codewords.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::all_bounds;
use crate::cyclic::{generator_poly, CyclicCodeSpec};
use crate::error::{Error, Result};
use crate::gf::FieldContext;
use crate::transform::{weight_via_blahut, Codeword};

/// Minimum distance of a code together with a minimum-weight codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceResult {
    /// `n + 1` for the zero code.
    pub d: usize,
    /// Absent for the zero code.
    pub argmin_word: Option<Codeword>,
    /// Codewords examined (one per scalar class).
    pub enumerated: u128,
}

/// Number of scalar classes of nonzero codewords: `(q^k - 1) / (q - 1)`.
pub fn class_count(q: u32, k: usize) -> u128 {
    let mut total = 0u128;
    let mut p = 1u128;
    for _ in 0..k {
        total = total.saturating_add(p);
        p = p.saturating_mul(q as u128);
    }
    total
}

/// Lowest digits enumerated inside one work unit.
const INNER_DIGITS: u32 = 14;

/// Exact minimum weight over the nonzero codewords `f * g`, `deg f < k`,
/// taking one representative (leading coefficient 1) per scalar class.
pub fn true_distance(spec: &CyclicCodeSpec, ctx: &FieldContext, cap: u128) -> Result<DistanceResult> {
    let (q, n, k) = (spec.q(), spec.n(), spec.k());
    if k == 0 {
        return Ok(DistanceResult { d: n + 1, argmin_word: None, enumerated: 0 });
    }
    let needed = class_count(q, k);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let g = generator_poly(spec, ctx)?;
    if k == n {
        // g = 1: the full space, which holds weight-1 words.
        let mut e0 = vec![0; n];
        e0[0] = 1;
        return Ok(DistanceResult { d: 1, argmin_word: Some(Codeword::new(q, e0)), enumerated: 1 });
    }
    // basis[i] = x^i * g, as a length-n word (no wrap since deg g = n - k).
    let basis: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            let mut w = vec![0u32; n];
            for (j, &c) in g.coeffs().iter().enumerate() {
                w[i + j] = c;
            }
            w
        })
        .collect();
    // Work units: top digit t is fixed to 1, digits in [lo, t) fixed to `high`,
    // digits below lo enumerated in the inner loop.
    let mut units: Vec<(usize, u64)> = Vec::new();
    for t in 0..k {
        let lo = t.min(INNER_DIGITS as usize);
        let highs = (q as u64).pow((t - lo) as u32);
        units.extend((0..highs).map(|h| (t, h)));
    }
    let best = units
        .par_iter()
        .enumerate()
        .map(|(u, &(t, high))| {
            let lo = t.min(INNER_DIGITS as usize);
            let (w, word) = if q == 2 && n <= 64 {
                scan_binary(&basis, t, lo, high)
            } else {
                scan_general(&basis, q, t, lo, high)
            };
            (w, u, word)
        })
        .reduce_with(|a, b| if (a.0, a.1) <= (b.0, b.1) { a } else { b })
        .expect("k >= 1 gives at least one unit");
    Ok(DistanceResult { d: best.0, argmin_word: Some(Codeword::new(q, best.2)), enumerated: needed })
}

fn digits_of(mut x: u64, q: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (x % q as u64) as u32;
            x /= q as u64;
            d
        })
        .collect()
}

fn scan_binary(basis: &[Vec<u32>], t: usize, lo: usize, high: u64) -> (usize, Vec<u32>) {
    let rows: Vec<u64> = basis.iter().map(|w| w.iter().enumerate().fold(0u64, |m, (j, &c)| m | ((c as u64) << j))).collect();
    let mut word = rows[t];
    for (i, d) in digits_of(high, 2, t - lo).into_iter().enumerate() {
        if d == 1 {
            word ^= rows[lo + i];
        }
    }
    let mut best = (word.count_ones(), word);
    // Binary reflected Gray code over the low digits: one row per step.
    for step in 1u64..1 << lo {
        word ^= rows[step.trailing_zeros() as usize];
        let w = word.count_ones();
        if w < best.0 {
            best = (w, word);
        }
    }
    let n = basis[0].len();
    (best.0 as usize, (0..n).map(|j| (best.1 >> j & 1) as u32).collect())
}

fn scan_general(basis: &[Vec<u32>], q: u32, t: usize, lo: usize, high: u64) -> (usize, Vec<u32>) {
    let n = basis[0].len();
    let supports: Vec<Vec<(usize, u32)>> =
        basis.iter().map(|w| w.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j, c)).collect()).collect();
    let mut word = vec![0u32; n];
    let mut weight = 0usize;
    let add = |word: &mut Vec<u32>, weight: &mut usize, row: usize, times: u32| {
        for &(j, c) in &supports[row] {
            let before = word[j];
            let after = (before + c * times) % q;
            word[j] = after;
            match (before == 0, after == 0) {
                (true, false) => *weight += 1,
                (false, true) => *weight -= 1,
                _ => {}
            }
        }
    };
    add(&mut word, &mut weight, t, 1);
    for (i, d) in digits_of(high, q, t - lo).into_iter().enumerate() {
        if d != 0 {
            add(&mut word, &mut weight, lo + i, d);
        }
    }
    let mut best = (weight, word.clone());
    let mut digits = vec![0u32; lo];
    'odometer: loop {
        // Incrementing a digit mod q always adds its row once.
        let mut i = 0;
        loop {
            if i == lo {
                break 'odometer;
            }
            add(&mut word, &mut weight, i, 1);
            digits[i] = (digits[i] + 1) % q;
            if digits[i] != 0 {
                break;
            }
            i += 1;
        }
        if weight < best.0 {
            best = (weight, word.clone());
        }
    }
    best
}

/// Samples random codewords and checks Blahut's theorem on each, plus that
/// no sampled weight falls below any implemented bound.
pub fn distance_crosscheck(spec: &CyclicCodeSpec, ctx: &FieldContext, sample: usize, seed: u64) -> Result<bool> {
    let (q, n, k) = (spec.q(), spec.n(), spec.k());
    if sample == 0 || k == 0 {
        return Ok(true);
    }
    let g = generator_poly(spec, ctx)?;
    let max_bound = all_bounds(spec).iter().map(|b| b.value).max().unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_weight = usize::MAX;
    for _ in 0..sample {
        let f: Vec<u32> = loop {
            let f: Vec<u32> = (0..k).map(|_| rng.gen_range(0..q)).collect();
            if f.iter().any(|&c| c != 0) {
                break f;
            }
        };
        let mut word = vec![0u32; n];
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in g.coeffs().iter().enumerate() {
                word[i + j] = (word[i + j] + a * b) % q;
            }
        }
        let w = Codeword::new(q, word);
        if weight_via_blahut(&w, ctx)? != w.weight() {
            return Ok(false);
        }
        min_weight = min_weight.min(w.weight());
    }
    Ok(min_weight >= max_bound as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{enumerate_codes, parse_defining_set};
    use crate::gf::build_field_context;

    fn spec(q: u32, n: usize, text: &str) -> CyclicCodeSpec {
        CyclicCodeSpec::new(q, n, parse_defining_set(text, n, q).unwrap()).unwrap()
    }

    /// Minimum weight over every nonzero message, no scalar reduction.
    fn brute(spec: &CyclicCodeSpec, ctx: &FieldContext) -> usize {
        let (q, n, k) = (spec.q(), spec.n(), spec.k());
        if k == 0 {
            return n + 1;
        }
        let g = generator_poly(spec, ctx).unwrap();
        let mut best = usize::MAX;
        for msg in 1..(q as u64).pow(k as u32) {
            let f = digits_of(msg, q, k);
            let mut word = vec![0u32; n];
            for (i, &a) in f.iter().enumerate() {
                for (j, &b) in g.coeffs().iter().enumerate() {
                    word[(i + j) % n] = (word[(i + j) % n] + a * b) % q;
                }
            }
            best = best.min(word.iter().filter(|&&c| c != 0).count());
        }
        best
    }

    #[test]
    fn examples() {
        let ctx = build_field_context(2, 21).unwrap();
        let r = true_distance(&spec(2, 21, "C1+C3+C7+C9"), &ctx, 1 << 24).unwrap();
        assert_eq!(r.d, 8);
        assert_eq!(r.argmin_word.unwrap().weight(), 8);
        assert_eq!(r.enumerated, 127);
        assert_eq!(true_distance(&spec(2, 21, ""), &ctx, 1 << 24).unwrap().d, 1);
        let ctx = build_field_context(2, 7).unwrap();
        assert_eq!(true_distance(&spec(2, 7, "C1+C3"), &ctx, 1 << 24).unwrap().d, 7);
        assert_eq!(true_distance(&spec(2, 7, "C1"), &ctx, 1 << 24).unwrap().d, 3);
        assert_eq!(true_distance(&spec(2, 7, "C0+C1+C3"), &ctx, 1 << 24).unwrap().d, 8);
        assert!(matches!(true_distance(&spec(2, 7, "C0"), &ctx, 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn matches_unreduced_enumeration() {
        for (q, n) in [(2u32, 9usize), (2, 15), (3, 8), (3, 10), (5, 6), (7, 4)] {
            let ctx = build_field_context(q, n).unwrap();
            for s in enumerate_codes(n, q).unwrap() {
                if (q as u64).pow(s.k() as u32) > 200_000 {
                    continue;
                }
                assert_eq!(true_distance(&s, &ctx, u128::MAX).unwrap().d, brute(&s, &ctx), "{s}");
            }
        }
    }

    #[test]
    fn invariant_under_unit_relabelling() {
        for (q, n) in [(2u32, 15usize), (2, 21), (3, 13), (5, 8)] {
            let ctx = build_field_context(q, n).unwrap();
            let units: Vec<usize> = (2..n).filter(|&u| crate::gf::gcd(u as u64, n as u64) == 1).take(3).collect();
            for s in enumerate_codes(n, q).unwrap() {
                let d = true_distance(&s, &ctx, u128::MAX).unwrap().d;
                for &u in &units {
                    assert_eq!(true_distance(&s.scaled(u).unwrap(), &ctx, u128::MAX).unwrap().d, d, "{s} u={u}");
                }
                if s.k() > 0 {
                    assert!((1..=n).contains(&d));
                }
            }
        }
    }

    #[test]
    fn crosscheck() {
        let ctx = build_field_context(2, 21).unwrap();
        let s = spec(2, 21, "C1+C3+C7+C9");
        assert!(distance_crosscheck(&s, &ctx, 0, 1).unwrap());
        assert!(distance_crosscheck(&s, &ctx, 100, 7).unwrap());
        let zero = CyclicCodeSpec::new(2, 21, 0..21).unwrap();
        assert!(distance_crosscheck(&zero, &ctx, 10, 7).unwrap());
    }
}
