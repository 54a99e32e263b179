//! Cyclotomic cosets, defining sets and code enumeration.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{gcd, FieldContext, FieldElement, Poly};
use crate::usemiring::{USym, UVec};

/// A cyclic code of length `n` over F_q, given by its complete defining set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicCodeSpec {
    q: u32,
    n: usize,
    set: Vec<usize>,
}

fn check_coprime(n: usize, q: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Param("n must be positive".into()));
    }
    let g = gcd(n as u64, q as u64);
    if g != 1 {
        return Err(Error::Gcd { q: q as u64, n: n as u64, g });
    }
    Ok(())
}

impl CyclicCodeSpec {
    /// Validates that `set` is a union of cyclotomic cosets.
    pub fn new(q: u32, n: usize, set: impl IntoIterator<Item = usize>) -> Result<CyclicCodeSpec> {
        check_coprime(n, q)?;
        let mut set: Vec<usize> = set.into_iter().collect();
        set.sort_unstable();
        set.dedup();
        if let Some(&bad) = set.iter().find(|&&e| e >= n) {
            return Err(Error::Range { exponent: bad as i64, n });
        }
        let closed = complete_defining_set(n, q, &set)?;
        if closed != set {
            return Err(Error::Param(format!("defining set {set:?} is not closed under multiplication by {q} mod {n}")));
        }
        Ok(CyclicCodeSpec { q, n, set })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The defining set, ascending.
    pub fn set(&self) -> &[usize] {
        &self.set
    }

    /// Dimension `n - |S|`.
    pub fn k(&self) -> usize {
        self.n - self.set.len()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.set.binary_search(&e).is_ok()
    }

    /// Comma-separated exponents, e.g. `1,2,4`.
    pub fn set_text(&self) -> String {
        self.set.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }

    /// The same code length and field with defining set `u * S mod n`.
    /// `u` must be a unit mod `n`.
    pub fn scaled(&self, u: usize) -> Result<CyclicCodeSpec> {
        if gcd(u as u64, self.n as u64) != 1 {
            return Err(Error::Param(format!("{u} is not a unit mod {}", self.n)));
        }
        CyclicCodeSpec::new(self.q, self.n, self.set.iter().map(|&e| e * u % self.n))
    }
}

impl fmt::Display for CyclicCodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} n={} S={{{}}}", self.q, self.n, self.set_text())
    }
}

/// The q-cyclotomic cosets mod n, each sorted and ordered by least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    classes: Vec<Vec<usize>>,
}

impl CosetPartition {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The class containing `e`.
    pub fn class_of(&self, e: usize) -> Option<&[usize]> {
        self.classes.iter().find(|c| c.binary_search(&e).is_ok()).map(Vec::as_slice)
    }
}

/// Orbit of `j` under multiplication by `q` mod `n`, sorted.
pub fn cyclotomic_coset(n: usize, q: u32, j: usize) -> Result<Vec<usize>> {
    check_coprime(n, q)?;
    if j >= n {
        return Err(Error::Range { exponent: j as i64, n });
    }
    let mut out = vec![j];
    let mut x = j * q as usize % n;
    while x != j {
        out.push(x);
        x = x * q as usize % n;
    }
    out.sort_unstable();
    Ok(out)
}

/// All cyclotomic cosets mod `n`.
pub fn coset_partition(n: usize, q: u32) -> Result<CosetPartition> {
    check_coprime(n, q)?;
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for j in 0..n {
        if !seen[j] {
            let c = cyclotomic_coset(n, q, j)?;
            for &e in &c {
                seen[e] = true;
            }
            classes.push(c);
        }
    }
    Ok(CosetPartition { classes })
}

/// Smallest superset of `seed` closed under multiplication by `q` mod `n`.
pub fn complete_defining_set(n: usize, q: u32, seed: &[usize]) -> Result<Vec<usize>> {
    check_coprime(n, q)?;
    let mut member = vec![false; n];
    for &e in seed {
        if e >= n {
            return Err(Error::Range { exponent: e as i64, n });
        }
        let mut x = e;
        while !member[x] {
            member[x] = true;
            x = x * q as usize % n;
        }
    }
    Ok((0..n).filter(|&e| member[e]).collect())
}

/// Every cyclic code of length `n` over F_q: one per subset of cosets,
/// ordered by the bitmask over cosets sorted by least element.
pub fn enumerate_codes(n: usize, q: u32) -> Result<Vec<CyclicCodeSpec>> {
    let part = coset_partition(n, q)?;
    let c = part.len();
    if c >= 32 {
        return Err(Error::CapExceeded { needed: 1u128 << c, cap: 1 << 31 });
    }
    Ok((0u64..1 << c)
        .map(|mask| {
            let mut set: Vec<usize> = (0..c).filter(|&i| mask >> i & 1 == 1).flat_map(|i| part.classes[i].iter().copied()).collect();
            set.sort_unstable();
            CyclicCodeSpec { q, n, set }
        })
        .collect())
}

/// Parses a defining set: comma-separated exponents (`1,2,4`) or coset
/// shorthand (`C1+C3`). The result is closed under multiplication by `q`.
pub fn parse_defining_set(text: &str, n: usize, q: u32) -> Result<Vec<usize>> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return complete_defining_set(n, q, &[]);
    }
    let parse_num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent {s:?} in defining set {text:?}")));
    let seed: Vec<usize> = if text.starts_with(['C', 'c']) {
        text.split('+')
            .map(|t| match t.strip_prefix(['C', 'c']) {
                Some(j) => parse_num(j),
                None => Err(Error::Parse(format!("expected coset term like C3, got {t:?}"))),
            })
            .collect::<Result<_>>()?
    } else {
        text.split(',').map(parse_num).collect::<Result<_>>()?
    };
    complete_defining_set(n, q, &seed)
}

/// `g = prod_{i in S} (x - alpha^i)`, with coefficients projected to F_q.
pub fn generator_poly(spec: &CyclicCodeSpec, ctx: &FieldContext) -> Result<Poly> {
    if ctx.q() != spec.q || ctx.n() != spec.n {
        return Err(Error::FieldMismatch);
    }
    // Coefficients in F_{q^m}, low degree first.
    let mut g: Vec<FieldElement> = vec![ctx.one()];
    for &i in &spec.set {
        let root = ctx.alpha_pow(i as i64);
        let mut next = vec![ctx.zero(); g.len() + 1];
        for (d, c) in g.iter().enumerate() {
            next[d + 1] = ctx.add(&next[d + 1], c);
            next[d] = ctx.sub(&next[d], &ctx.mul(c, root));
        }
        g = next;
    }
    let coeffs = g.iter().map(|c| ctx.base_value(c).ok_or(Error::CoefficientNotInBaseField)).collect::<Result<Vec<u32>>>()?;
    Ok(Poly::new(spec.q, coeffs))
}

/// `R(n, S)`: `0` on the defining set, Δ elsewhere.
pub fn r_vector(spec: &CyclicCodeSpec) -> UVec {
    let syms = (0..spec.n).map(|i| if spec.contains(i) { USym::Zero } else { USym::Any }).collect();
    UVec::new(syms).expect("n >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{build_field_context, poly_eval};

    fn binary21() -> CyclicCodeSpec {
        let set = parse_defining_set("C1+C3+C7+C9", 21, 2).unwrap();
        CyclicCodeSpec::new(2, 21, set).unwrap()
    }

    #[test]
    fn coset_examples() {
        assert_eq!(cyclotomic_coset(21, 2, 1).unwrap(), vec![1, 2, 4, 8, 11, 16]);
        assert_eq!(cyclotomic_coset(21, 2, 3).unwrap(), vec![3, 6, 12]);
        assert_eq!(cyclotomic_coset(9, 2, 0).unwrap(), vec![0]);
        assert!(matches!(cyclotomic_coset(8, 2, 1), Err(Error::Gcd { .. })));
    }

    #[test]
    fn partition_examples() {
        let p = coset_partition(15, 2).unwrap();
        let expected: Vec<Vec<usize>> = vec![vec![0], vec![1, 2, 4, 8], vec![3, 6, 9, 12], vec![5, 10], vec![7, 11, 13, 14]];
        assert_eq!(p.classes(), expected.as_slice());
        assert_eq!(coset_partition(17, 2).unwrap().len(), 3);
        assert_eq!(coset_partition(21, 2).unwrap().len(), 6);
    }

    #[test]
    fn completion_examples() {
        assert_eq!(complete_defining_set(21, 2, &[1]).unwrap(), vec![1, 2, 4, 8, 11, 16]);
        assert!(complete_defining_set(21, 2, &[]).unwrap().is_empty());
        assert_eq!(complete_defining_set(21, 2, &[3, 7]).unwrap(), vec![3, 6, 7, 12, 14]);
        assert!(matches!(complete_defining_set(21, 2, &[21]), Err(Error::Range { .. })));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_codes(15, 2).unwrap().len(), 32);
        assert_eq!(enumerate_codes(17, 2).unwrap().len(), 8);
        let three = enumerate_codes(3, 2).unwrap();
        let sets: Vec<&[usize]> = three.iter().map(|s| s.set()).collect();
        assert_eq!(sets, vec![&[][..], &[0][..], &[1, 2][..], &[0, 1, 2][..]]);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_defining_set("1,2,4", 7, 2).unwrap(), vec![1, 2, 4]);
        assert_eq!(parse_defining_set("3", 7, 2).unwrap(), vec![3, 5, 6]);
        assert_eq!(parse_defining_set("", 7, 2).unwrap(), Vec::<usize>::new());
        assert_eq!(binary21().set(), &[1, 2, 3, 4, 6, 7, 8, 9, 11, 12, 14, 15, 16, 18]);
        assert!(matches!(parse_defining_set("C1+x", 7, 2), Err(Error::Parse(_))));
        assert!(matches!(parse_defining_set("1,,2", 7, 2), Err(Error::Parse(_))));
        assert!(matches!(parse_defining_set("9", 7, 2), Err(Error::Range { .. })));
    }

    #[test]
    fn spec_validation() {
        assert!(CyclicCodeSpec::new(2, 7, [1]).is_err());
        assert!(CyclicCodeSpec::new(2, 8, []).is_err());
        let s = CyclicCodeSpec::new(2, 7, [1, 2, 4]).unwrap();
        assert_eq!(s.k(), 4);
        assert_eq!(s.scaled(3).unwrap().set(), &[3, 5, 6]);
    }

    #[test]
    fn r_vector_examples() {
        assert_eq!(r_vector(&binary21()).to_string(), "D0000D0000D00D000D0DD");
        let empty = CyclicCodeSpec::new(2, 5, []).unwrap();
        assert_eq!(r_vector(&empty).to_string(), "DDDDD");
        let full = CyclicCodeSpec::new(2, 5, 0..5).unwrap();
        assert_eq!(r_vector(&full).to_string(), "00000");
    }

    #[test]
    fn generator_examples() {
        let ctx = build_field_context(2, 7).unwrap();
        assert_eq!(generator_poly(&CyclicCodeSpec::new(2, 7, []).unwrap(), &ctx).unwrap(), Poly::one(2));
        assert_eq!(generator_poly(&CyclicCodeSpec::new(2, 7, [0]).unwrap(), &ctx).unwrap(), Poly::new(2, vec![1, 1]));

        let ctx = build_field_context(2, 21).unwrap();
        let spec = binary21();
        let g = generator_poly(&spec, &ctx).unwrap();
        assert_eq!(g.degree(), Some(14));
        let roots: Vec<usize> = (0..21).filter(|&i| poly_eval(&g, ctx.alpha_pow(i as i64), &ctx).is_zero()).collect();
        assert_eq!(roots, spec.set());
    }

    #[test]
    fn generators_divide_x_n_minus_one() {
        for (q, n) in [(2u32, 15usize), (2, 21), (3, 13), (5, 8), (7, 9), (3, 11)] {
            let ctx = build_field_context(q, n).unwrap();
            let xn = Poly::x_n_minus_one(q, n);
            for spec in enumerate_codes(n, q).unwrap() {
                let g = generator_poly(&spec, &ctx).unwrap();
                assert_eq!(g.degree(), Some(spec.set().len()));
                assert_eq!(g.coeffs().last(), Some(&1));
                assert!(xn.divrem(&g).unwrap().1.is_zero(), "{spec}");
            }
        }
    }

    #[test]
    fn closure_and_class_sizes() {
        for (q, n) in [(2u32, 15usize), (2, 21), (3, 14), (5, 11), (7, 8)] {
            let m = crate::gf::multiplicative_order(q as u64, n as u64).unwrap() as usize;
            for c in coset_partition(n, q).unwrap().classes() {
                assert_eq!(m % c.len(), 0);
            }
            for spec in enumerate_codes(n, q).unwrap() {
                assert_eq!(complete_defining_set(n, q, spec.set()).unwrap(), spec.set());
            }
        }
    }
}
