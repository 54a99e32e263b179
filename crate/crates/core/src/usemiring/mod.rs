//! The three-symbol set 𝒰 = {0, Δ, Δ′} and linear algebra over it.
//!
//! `0` is a known zero, `Δ` an unknown value and `Δ′` a known nonzero
//! value. Vectors over 𝒰 describe partial knowledge about field vectors;
//! the singleton procedure certifies linear independence of their
//! instances, and pseudo-rank lower-bounds Hamming weight via the
//! circulant of a transformed codeword.

mod pattern;
mod singleton;

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

pub use pattern::{pattern_expand, Pattern};
pub use singleton::{min_prk, prk, prk_by_subsets, schaub_lower_bound, singleton_procedure, SingletonMode, SingletonOutcome};

/// One symbol of 𝒰.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum USym {
    /// `0`: known zero.
    Zero,
    /// `Δ`: unknown.
    Any,
    /// `Δ′`: known nonzero.
    NonZero,
}

impl USym {
    pub const ALL: [USym; 3] = [USym::Zero, USym::Any, USym::NonZero];

    /// Text form: `0`, `D` or `N`.
    pub fn to_char(self) -> char {
        match self {
            USym::Zero => '0',
            USym::Any => 'D',
            USym::NonZero => 'N',
        }
    }

    pub fn from_char(c: char) -> Option<USym> {
        match c {
            '0' => Some(USym::Zero),
            'D' => Some(USym::Any),
            'N' => Some(USym::NonZero),
            _ => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == USym::Zero
    }
}

/// Sum in 𝒰.
pub fn u_add(a: USym, b: USym) -> USym {
    use USym::*;
    match (a, b) {
        (Zero, x) | (x, Zero) => x,
        _ => Any,
    }
}

/// Product in 𝒰.
pub fn u_mul(a: USym, b: USym) -> USym {
    use USym::*;
    match (a, b) {
        (Zero, _) | (_, Zero) => Zero,
        (NonZero, NonZero) => NonZero,
        _ => Any,
    }
}

impl Add for USym {
    type Output = USym;
    fn add(self, rhs: USym) -> USym {
        u_add(self, rhs)
    }
}

impl Mul for USym {
    type Output = USym;
    fn mul(self, rhs: USym) -> USym {
        u_mul(self, rhs)
    }
}

/// A nonempty vector over 𝒰.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UVec {
    syms: Vec<USym>,
}

impl UVec {
    pub fn new(syms: Vec<USym>) -> Result<UVec> {
        if syms.is_empty() {
            return Err(Error::Length { m: 0, n: 0 });
        }
        Ok(UVec { syms })
    }

    /// `len` copies of one symbol.
    pub fn filled(sym: USym, len: usize) -> UVec {
        assert!(len > 0, "vectors over U are nonempty");
        UVec { syms: vec![sym; len] }
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    /// Always false; present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn syms(&self) -> &[USym] {
        &self.syms
    }

    /// 0-based access.
    pub fn get(&self, i: usize) -> USym {
        self.syms[i]
    }

    pub fn set(&mut self, i: usize, s: USym) {
        self.syms[i] = s;
    }

    /// 1-based cyclic access: `at(k)` is entry `(k - 1) mod n`, so `at(n)`
    /// and `at(0)` both name the last entry.
    pub fn at(&self, k: i64) -> USym {
        self.syms[self.wrap(k)]
    }

    /// 0-based index of 1-based cyclic position `k`.
    pub fn wrap(&self, k: i64) -> usize {
        (k - 1).rem_euclid(self.len() as i64) as usize
    }

    /// Right rotation by `k`: entry `j` of the result is entry `j - k`.
    pub fn rotate_right(&self, k: i64) -> UVec {
        let n = self.len() as i64;
        UVec { syms: (0..n).map(|j| self.syms[(j - k).rem_euclid(n) as usize]).collect() }
    }

    /// Left rotation by `k`: entry `j` of the result is entry `j + k`.
    pub fn rotate_left(&self, k: i64) -> UVec {
        self.rotate_right(-k)
    }

    /// Right rotation by one position.
    pub fn shift(&self) -> UVec {
        self.rotate_right(1)
    }

    /// Entries in reverse order.
    pub fn reflect(&self) -> UVec {
        UVec { syms: self.syms.iter().rev().copied().collect() }
    }

    /// `rho` concatenated copies.
    pub fn replicate(&self, rho: usize) -> UVec {
        UVec { syms: self.syms.repeat(rho.max(1)) }
    }

    pub fn concat(&self, other: &UVec) -> UVec {
        UVec { syms: [self.syms.as_slice(), other.syms.as_slice()].concat() }
    }

    pub fn count(&self, sym: USym) -> usize {
        self.syms.iter().filter(|&&s| s == sym).count()
    }

    pub fn is_all_zero(&self) -> bool {
        self.syms.iter().all(|s| s.is_zero())
    }

    /// Bit `j` set iff entry `j` is nonzero (Δ or Δ′). Needs `len <= 128`.
    pub fn nonzero_mask(&self) -> u128 {
        self.mask(|s| s != USym::Zero)
    }

    /// Bit `j` set iff entry `j` is Δ′. Needs `len <= 128`.
    pub fn known_nonzero_mask(&self) -> u128 {
        self.mask(|s| s == USym::NonZero)
    }

    fn mask(&self, pred: impl Fn(USym) -> bool) -> u128 {
        assert!(self.len() <= 128, "mask form needs length <= 128");
        self.syms.iter().enumerate().filter(|(_, &s)| pred(s)).fold(0u128, |m, (j, _)| m | 1 << j)
    }
}

impl fmt::Display for UVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.syms.iter().try_for_each(|s| write!(f, "{}", s.to_char()))
    }
}

impl FromStr for UVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<UVec> {
        let syms = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| USym::from_char(c).ok_or_else(|| Error::Parse(format!("unexpected character {c:?} in vector {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if syms.is_empty() {
            return Err(Error::Parse("empty vector".into()));
        }
        Ok(UVec { syms })
    }
}

/// A rectangular matrix over 𝒰.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UMatrix {
    rows: Vec<UVec>,
}

impl UMatrix {
    pub fn new(rows: Vec<UVec>) -> Result<UMatrix> {
        if let Some(first) = rows.first() {
            if let Some(bad) = rows.iter().find(|r| r.len() != first.len()) {
                return Err(Error::LengthMismatch { expected: first.len(), got: bad.len() });
            }
        }
        Ok(UMatrix { rows })
    }

    /// The circulant `M(u)`: row `i` is `u` rotated right by `i`.
    pub fn circulant(u: &UVec) -> UMatrix {
        UMatrix { rows: (0..u.len() as i64).map(|i| u.rotate_right(i)).collect() }
    }

    pub fn rows(&self) -> &[UVec] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, UVec::len)
    }

    /// Matrix made of the listed rows, in order.
    pub fn select(&self, idx: &[usize]) -> UMatrix {
        UMatrix { rows: idx.iter().map(|&i| self.rows[i].clone()).collect() }
    }
}

impl fmt::Display for UMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Whether pattern `u` occurs in `v`: some cyclic length-`|u|` window of
/// `v`, starting at 0-based offset `i`, is either all zero or agrees with
/// `u` wherever `u` is not Δ (`0` needs `0`, `Δ′` needs `Δ′`). Returns the
/// least such offset. Offset `i` corresponds to `v = sh^i(w)` for a `w`
/// beginning with the window.
pub fn includes(u: &UVec, v: &UVec) -> Result<Option<usize>> {
    let (m, n) = (u.len(), v.len());
    if m > n {
        return Err(Error::Length { m, n });
    }
    Ok((0..n).find(|&i| matches_at(u, v, i)))
}

/// Whether the cyclic window of `v` starting at 0-based offset `i` accepts
/// pattern `u`, in the sense of [`includes`]. Requires `|u| <= |v|`.
pub fn matches_at(u: &UVec, v: &UVec, i: usize) -> bool {
    let n = v.len();
    if u.len() > n {
        return false;
    }
    let window = (0..u.len()).map(|j| v.syms[(i + j) % n]);
    window.clone().all(USym::is_zero)
        || window.zip(&u.syms).all(|(w, &p)| match p {
            USym::Zero => w == USym::Zero,
            USym::NonZero => w == USym::NonZero,
            USym::Any => true,
        })
}

/// Number of members of `𝒜(v)`, counting the excluded zero vector.
fn a_count(v: &UVec) -> u128 {
    1u128.checked_shl(v.count(USym::Any) as u32).unwrap_or(u128::MAX)
}

/// All resolutions of the Δ entries of `v` into `0` or `Δ′`, except the
/// all-zero vector. Ordered by the bitmask over Δ positions (lowest
/// position is the least significant bit), ascending.
pub fn enumerate_a(v: &UVec, cap: u128) -> Result<Vec<UVec>> {
    let needed = a_count(v);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let free: Vec<usize> = (0..v.len()).filter(|&i| v.syms[i] == USym::Any).collect();
    let mut out = Vec::new();
    for bits in 0..needed as u64 {
        let mut w = v.clone();
        for (b, &i) in free.iter().enumerate() {
            w.syms[i] = if bits >> b & 1 == 1 { USym::NonZero } else { USym::Zero };
        }
        if !w.is_all_zero() {
            out.push(w);
        }
    }
    Ok(out)
}

/// All field vectors over F_q consistent with `u`, in lexicographic order.
pub fn instances(u: &UVec, q: u32, cap: u128) -> Result<Vec<Vec<u32>>> {
    let choices: Vec<Vec<u32>> = u
        .syms
        .iter()
        .map(|s| match s {
            USym::Zero => vec![0],
            USym::Any => (0..q).collect(),
            USym::NonZero => (1..q).collect(),
        })
        .collect();
    let needed = choices.iter().try_fold(1u128, |acc, c| acc.checked_mul(c.len() as u128)).unwrap_or(u128::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let mut out = Vec::with_capacity(needed as usize);
    if needed == 0 {
        return Ok(out);
    }
    let mut idx = vec![0usize; choices.len()];
    loop {
        out.push(idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect());
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
