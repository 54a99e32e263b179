//! Finite-field arithmetic: the prime field F_q, its splitting-field
//! extension F_{q^m} and polynomials over F_q.
//!
//! Extension elements use a polynomial basis over the lexicographically
//! first monic irreducible of the required degree, so every derived
//! quantity (alpha, generator polynomials, witnesses) is reproducible.

use std::fmt;

use crate::error::{Error, Result};

/// Greatest common divisor.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in WITNESSES {
        if x % p == 0 {
            return x == p;
        }
    }
    let mut d = x - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'outer: for a in WITNESSES {
        let mut y = pow_mod(a, d, x);
        if y == 1 || y == x - 1 {
            continue;
        }
        for _ in 1..r {
            y = mul_mod(y, y, x);
            if y == x - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Distinct prime factors of `x`, ascending.
pub fn prime_factors(x: u64) -> Vec<u64> {
    fn split(x: u64, out: &mut Vec<u64>) {
        if x == 1 {
            return;
        }
        if is_prime(x) {
            out.push(x);
            return;
        }
        for p in [2u64, 3, 5, 7, 11, 13] {
            if x % p == 0 {
                out.push(p);
                let mut y = x;
                while y % p == 0 {
                    y /= p;
                }
                split(y, out);
                return;
            }
        }
        let d = pollard_rho(x);
        split(d, out);
        split(x / d, out);
    }
    let mut out = Vec::new();
    split(x, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

/// Least `m >= 1` with `q^m = 1 (mod n)`.
pub fn multiplicative_order(q: u64, n: u64) -> Result<u32> {
    if n == 0 || q < 2 {
        return Err(Error::Param(format!("need n >= 1 and q >= 2, got n = {n}, q = {q}")));
    }
    let g = gcd(q, n);
    if g != 1 {
        return Err(Error::Gcd { q, n, g });
    }
    let mut acc = q % n;
    let mut m = 1;
    while acc != 1 % n {
        acc = mul_mod(acc, q, n);
        m += 1;
    }
    Ok(m)
}

// Dense polynomial helpers over F_q on raw coefficient vectors (low degree first).
mod raw {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv(a: u32, q: u32) -> u32 {
        let mut acc = 1u64;
        let mut b = a as u64 % q as u64;
        let mut e = q - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % q as u64;
            }
            b = b * b % q as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn sub(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
        let mut out = vec![0u32; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + q - y) % q;
        }
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x as u64 * y as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| (c % q as u64) as u32).collect();
        trim(&mut out);
        out
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn divrem(a: &[u32], d: &[u32], q: u32) -> (Vec<u32>, Vec<u32>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let dd = d.len() - 1;
        if r.len() < d.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv(d[dd], q) as u64;
        let mut quo = vec![0u32; r.len() - dd];
        while r.len() >= d.len() {
            let shift = r.len() - d.len();
            let c = (*r.last().unwrap() as u64 * lead_inv % q as u64) as u32;
            quo[shift] = c;
            for (j, &y) in d.iter().enumerate() {
                let t = (c as u64 * y as u64 % q as u64) as u32;
                r[shift + j] = (r[shift + j] + q - t) % q;
            }
            trim(&mut r);
        }
        trim(&mut quo);
        (quo, r)
    }

    pub fn rem(a: &[u32], d: &[u32], q: u32) -> Vec<u32> {
        divrem(a, d, q).1
    }

    pub fn mulmod(a: &[u32], b: &[u32], f: &[u32], q: u32) -> Vec<u32> {
        rem(&mul(a, b, q), f, q)
    }

    pub fn powmod(base: &[u32], mut e: u64, f: &[u32], q: u32) -> Vec<u32> {
        let mut acc = rem(&[1], f, q);
        let mut b = rem(base, f, q);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, f, q);
            }
            b = mulmod(&b, &b, f, q);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, q);
            a = b;
            b = r;
        }
        if let Some(&lead) = a.last() {
            let li = inv(lead, q) as u64;
            for c in a.iter_mut() {
                *c = (*c as u64 * li % q as u64) as u32;
            }
        }
        a
    }

    /// Rabin's irreducibility test for a monic `f` of degree >= 1.
    pub fn is_irreducible(f: &[u32], q: u32) -> bool {
        let m = f.len() - 1;
        let x = [0u32, 1];
        let frob = |k: usize| {
            let mut h = rem(&x, f, q);
            for _ in 0..k {
                h = powmod(&h, q as u64, f, q);
            }
            h
        };
        if !sub(&frob(m), &rem(&x, f, q), q).is_empty() {
            return false;
        }
        for p in super::prime_factors(m as u64) {
            let h = sub(&frob(m / p as usize), &x, q);
            if gcd(&h, f, q).len() != 1 {
                return false;
            }
        }
        true
    }
}

/// Polynomial over F_q, low-degree coefficient first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    q: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    /// Builds a polynomial, reducing coefficients mod `q` and trimming.
    pub fn new(q: u32, coeffs: Vec<u32>) -> Poly {
        let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % q).collect();
        raw::trim(&mut coeffs);
        Poly { q, coeffs }
    }

    pub fn zero(q: u32) -> Poly {
        Poly { q, coeffs: Vec::new() }
    }

    pub fn one(q: u32) -> Poly {
        Poly::new(q, vec![1])
    }

    /// `c * x^deg`.
    pub fn monomial(q: u32, deg: usize, c: u32) -> Poly {
        let mut v = vec![0; deg + 1];
        v[deg] = c;
        Poly::new(q, v)
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(q: u32, n: usize) -> Poly {
        let mut v = vec![0; n + 1];
        v[0] = q - 1;
        v[n] = 1;
        Poly::new(q, v)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.q == other.q {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let v = (0..len)
            .map(|i| self.coeffs.get(i).unwrap_or(&0) + other.coeffs.get(i).unwrap_or(&0))
            .collect();
        Ok(Poly::new(self.q, v))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(Poly { q: self.q, coeffs: raw::sub(&self.coeffs, &other.coeffs, self.q) })
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        Ok(Poly { q: self.q, coeffs: raw::mul(&self.coeffs, &other.coeffs, self.q) })
    }

    /// Euclidean division by a nonzero divisor.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(d)?;
        if d.is_zero() {
            return Err(Error::Param("division by the zero polynomial".into()));
        }
        let (a, b) = raw::divrem(&self.coeffs, &d.coeffs, self.q);
        Ok((Poly { q: self.q, coeffs: a }, Poly { q: self.q, coeffs: b }))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `a * b mod (x^n - 1)`: cyclic convolution of the coefficient sequences.
pub fn poly_mul_mod(a: &Poly, b: &Poly, n: usize) -> Result<Poly> {
    a.same_field(b)?;
    if n == 0 {
        return Err(Error::Param("n must be positive".into()));
    }
    let q = a.q as u64;
    let mut out = vec![0u64; n];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            let k = (i + j) % n;
            out[k] = (out[k] + x as u64 * y as u64) % q;
        }
    }
    Ok(Poly::new(a.q, out.into_iter().map(|c| c as u32).collect()))
}

/// Element of F_{q^m}: coefficients in the polynomial basis, length `m_ext`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// F_q, its extension F_{q^m} with `n | q^m - 1`, and a fixed element of
/// multiplicative order `n`.
#[derive(Debug, Clone)]
pub struct FieldContext {
    q: u32,
    n: usize,
    m_ext: u32,
    size: u64,
    modulus: Vec<u32>,
    generator: FieldElement,
    alpha_powers: Vec<FieldElement>,
}

/// Builds the splitting-field context for length-`n` cyclic codes over F_q.
pub fn build_field_context(q: u32, n: usize) -> Result<FieldContext> {
    if !is_prime(q as u64) {
        return Err(Error::NotPrime(q as u64));
    }
    let m_ext = multiplicative_order(q as u64, n as u64)?;
    let size = (q as u64)
        .checked_pow(m_ext)
        .ok_or_else(|| Error::Param(format!("F_{q}^{m_ext} does not fit in 64 bits")))?;
    let modulus = first_irreducible(q, m_ext as usize);
    let mut ctx = FieldContext {
        q,
        n,
        m_ext,
        size,
        modulus,
        generator: FieldElement { coeffs: Vec::new() },
        alpha_powers: Vec::new(),
    };
    ctx.generator = ctx.first_generator();
    let alpha = ctx.pow(&ctx.generator, (size - 1) / n as u64);
    let mut powers = Vec::with_capacity(n);
    let mut acc = ctx.one();
    for _ in 0..n {
        powers.push(acc.clone());
        acc = ctx.mul(&acc, &alpha);
    }
    ctx.alpha_powers = powers;
    Ok(ctx)
}

/// Lexicographically first monic irreducible of degree `m` over F_q, with
/// the lower coefficients read as base-`q` digits (least significant first).
fn first_irreducible(q: u32, m: usize) -> Vec<u32> {
    let total = (q as u64).pow(m as u32);
    for code in 0..total {
        let mut f = digits(code, q, m);
        f.push(1);
        if raw::is_irreducible(&f, q) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(mut x: u64, q: u32, m: usize) -> Vec<u32> {
    let mut v = vec![0u32; m];
    for d in v.iter_mut() {
        *d = (x % q as u64) as u32;
        x /= q as u64;
    }
    v
}

impl FieldContext {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m_ext(&self) -> u32 {
        self.m_ext
    }

    /// `q^m_ext`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// The defining irreducible of F_{q^m} as a monic polynomial over F_q.
    pub fn modulus_poly(&self) -> Poly {
        Poly::new(self.q, self.modulus.clone())
    }

    /// The first multiplicative generator of F_{q^m}.
    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    /// The fixed primitive `n`-th root of unity.
    pub fn alpha(&self) -> &FieldElement {
        &self.alpha_powers[1 % self.n]
    }

    /// `alpha^e` for any integer exponent.
    pub fn alpha_pow(&self, e: i64) -> &FieldElement {
        &self.alpha_powers[e.rem_euclid(self.n as i64) as usize]
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.m_ext as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_base(1)
    }

    /// Embeds a base-field value.
    pub fn from_base(&self, c: u32) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = c % self.q;
        e
    }

    /// Element from explicit coefficients.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.m_ext as usize {
            return Err(Error::LengthMismatch { expected: self.m_ext as usize, got: coeffs.len() });
        }
        if coeffs.iter().any(|&c| c >= self.q) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement { coeffs: coeffs.to_vec() })
    }

    /// Element whose coefficients are the base-`q` digits of `index`.
    pub fn from_index(&self, index: u64) -> FieldElement {
        FieldElement { coeffs: digits(index % self.size, self.q, self.m_ext as usize) }
    }

    /// Inverse of [`FieldContext::from_index`].
    pub fn index(&self, e: &FieldElement) -> u64 {
        e.coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.q as u64 + c as u64)
    }

    /// The base-field value of `e`, if `e` lies in F_q.
    pub fn base_value(&self, e: &FieldElement) -> Option<u32> {
        if e.coeffs[1..].iter().all(|&c| c == 0) {
            Some(e.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + y) % self.q).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + self.q - y) % self.q).collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, c: u32, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (x as u64 * c as u64 % self.q as u64) as u32).collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let m = self.m_ext as usize;
        let q = self.q as u64;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x as u64 * y as u64;
            }
        }
        for c in prod.iter_mut() {
            *c %= q;
        }
        // Reduce using the monic modulus: x^m = -(f_0 + ... + f_{m-1} x^{m-1}).
        for top in (m..2 * m - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (j, &f) in self.modulus[..m].iter().enumerate() {
                let k = top - m + j;
                prod[k] = (prod[k] + (q - c) * f as u64) % q;
            }
        }
        FieldElement { coeffs: prod[..m].iter().map(|&c| c as u32).collect() }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on the
    /// modulus; `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let q = self.q;
        let mut r0 = self.modulus.clone();
        let mut r1 = a.coeffs.clone();
        raw::trim(&mut r1);
        let mut s0: Vec<u32> = Vec::new();
        let mut s1: Vec<u32> = vec![1];
        while !r1.is_empty() {
            let (quo, rem) = raw::divrem(&r0, &r1, q);
            let s2 = raw::sub(&s0, &raw::mul(&quo, &s1, q), q);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant; normalise.
        let c = raw::inv(r0[0], q) as u64;
        let mut coeffs = vec![0u32; self.m_ext as usize];
        for (i, &x) in raw::rem(&s0, &self.modulus, q).iter().enumerate() {
            coeffs[i] = (x as u64 * c % q as u64) as u32;
        }
        Some(FieldElement { coeffs })
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: &FieldElement) -> u64 {
        let mut ord = self.size - 1;
        for p in prime_factors(self.size - 1) {
            while ord % p == 0 && self.pow(a, ord / p) == self.one() {
                ord /= p;
            }
        }
        ord
    }

    fn first_generator(&self) -> FieldElement {
        let group = self.size - 1;
        let factors = prime_factors(group);
        for idx in 1..self.size {
            let g = self.from_index(idx);
            if factors.iter().all(|&p| self.pow(&g, group / p) != self.one()) {
                return g;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }
}

/// Horner evaluation of a polynomial over F_q at a point of F_{q^m}.
pub fn poly_eval(p: &Poly, x: &FieldElement, ctx: &FieldContext) -> FieldElement {
    let mut acc = ctx.zero();
    for &c in p.coeffs().iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, x), &ctx.from_base(c));
    }
    acc
}
