//! Discrete Fourier transform over the splitting field, circulant
//! matrices and rank, tied together by Blahut's theorem: the weight of a
//! word equals the rank of the circulant of its transform.

use crate::error::{Error, Result};
use crate::gf::{FieldContext, FieldElement};

/// A length-`n` word over F_q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    q: u32,
    symbols: Vec<u32>,
}

impl Codeword {
    /// Symbols are reduced mod `q`.
    pub fn new(q: u32, symbols: Vec<u32>) -> Codeword {
        Codeword { q, symbols: symbols.into_iter().map(|s| s % q).collect() }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|&&s| s != 0).count()
    }
}

/// A dense matrix over F_{q^m}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: Vec<Vec<FieldElement>>,
}

impl FieldMatrix {
    pub fn new(rows: Vec<Vec<FieldElement>>) -> Result<FieldMatrix> {
        if let Some(first) = rows.first() {
            if let Some(bad) = rows.iter().find(|r| r.len() != first.len()) {
                return Err(Error::LengthMismatch { expected: first.len(), got: bad.len() });
            }
        }
        Ok(FieldMatrix { rows })
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    /// The same matrix with rows permuted by `perm` (row `i` of the result
    /// is row `perm[i]` of `self`).
    pub fn permute_rows(&self, perm: &[usize]) -> FieldMatrix {
        FieldMatrix { rows: perm.iter().map(|&i| self.rows[i].clone()).collect() }
    }
}

/// `A_i = sum_j a_j alpha^{ij}` for `i = 0..n-1`.
pub fn dft(word: &Codeword, ctx: &FieldContext) -> Result<Vec<FieldElement>> {
    let n = ctx.n();
    if word.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: word.len() });
    }
    if word.q != ctx.q() {
        return Err(Error::FieldMismatch);
    }
    Ok((0..n)
        .map(|i| {
            word.symbols.iter().enumerate().filter(|(_, &a)| a != 0).fold(ctx.zero(), |acc, (j, &a)| {
                ctx.add(&acc, &ctx.scale(a, ctx.alpha_pow((i * j) as i64)))
            })
        })
        .collect())
}

/// Circulant with first row `v`; each row is the right rotation of the
/// one above it.
pub fn circulant(v: &[FieldElement]) -> FieldMatrix {
    let n = v.len();
    let rows = (0..n).map(|i| (0..n).map(|j| v[(j + n - i) % n].clone()).collect()).collect();
    FieldMatrix { rows }
}

/// Row rank by Gaussian elimination.
pub fn rank(m: &FieldMatrix, ctx: &FieldContext) -> usize {
    let mut rows = m.rows.clone();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = ctx.inv(&rows[rank][col]).expect("pivot is nonzero");
        let pivot: Vec<FieldElement> = rows[rank].iter().map(|x| ctx.mul(x, &inv)).collect();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for (c, p) in pivot.iter().enumerate().skip(col) {
                let t = ctx.mul(&f, p);
                rows[r][c] = ctx.sub(&rows[r][c], &t);
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// `rank(circulant(dft(word)))`, which equals the Hamming weight of `word`.
pub fn weight_via_blahut(word: &Codeword, ctx: &FieldContext) -> Result<usize> {
    Ok(rank(&circulant(&dft(word, ctx)?), ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field_context;

    #[test]
    fn dft_examples() {
        let ctx = build_field_context(2, 7).unwrap();
        let zero = Codeword::new(2, vec![0; 7]);
        assert!(dft(&zero, &ctx).unwrap().iter().all(FieldElement::is_zero));
        let mut e0 = vec![0; 7];
        e0[0] = 1;
        assert!(dft(&Codeword::new(2, e0), &ctx).unwrap().iter().all(|a| *a == ctx.one()));
        let ones = dft(&Codeword::new(2, vec![1; 7]), &ctx).unwrap();
        assert_eq!(ones[0], ctx.from_base(1));
        assert!(ones[1..].iter().all(FieldElement::is_zero));

        let ctx = build_field_context(3, 8).unwrap();
        let ones = dft(&Codeword::new(3, vec![1; 8]), &ctx).unwrap();
        assert_eq!(ones[0], ctx.from_base(8 % 3));
        assert!(matches!(dft(&Codeword::new(3, vec![1; 7]), &ctx), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn circulant_and_rank_examples() {
        let ctx = build_field_context(2, 3).unwrap();
        let (a, b) = (ctx.one(), ctx.zero());
        let c = circulant(&[a.clone(), b.clone()]);
        assert_eq!(c.rows(), &[vec![a.clone(), b.clone()], vec![b.clone(), a.clone()]]);
        assert_eq!(rank(&circulant(&[b.clone(), b.clone(), b.clone()]), &ctx), 0);
        let id = circulant(&[a.clone(), b.clone(), b.clone()]);
        assert_eq!(id.rows()[1], vec![b.clone(), a.clone(), b.clone()]);
        assert_eq!(rank(&id, &ctx), 3);
        assert_eq!(rank(&circulant(&[a.clone(), a.clone(), a.clone()]), &ctx), 1);
    }

    #[test]
    fn blahut_small() {
        let ctx = build_field_context(2, 7).unwrap();
        let mut e0 = vec![0; 7];
        e0[0] = 1;
        assert_eq!(weight_via_blahut(&Codeword::new(2, e0), &ctx).unwrap(), 1);
        assert_eq!(weight_via_blahut(&Codeword::new(2, vec![0; 7]), &ctx).unwrap(), 0);
        for bits in 0u32..128 {
            let w = Codeword::new(2, (0..7).map(|j| bits >> j & 1).collect());
            assert_eq!(weight_via_blahut(&w, &ctx).unwrap(), w.weight());
        }
    }
}
