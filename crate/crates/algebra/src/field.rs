//! Finite fields GF(p^k).
//!
//! Prime fields use plain modular arithmetic. Extension fields are realised as
//! `F_p[t]/(m(t))` for a fixed Conway polynomial `m`; an element is stored as the
//! integer whose base-`p` digits are the coefficients of its residue polynomial
//! (lowest degree first), and arithmetic goes through precomputed tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};

/// Conway polynomials, monic, coefficients lowest degree first.
const CONWAY: &[(u64, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
];

/// An element of some [`GaloisField`]; meaningless without the field it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Integer encoding: base-`p` digits are the residue-polynomial coefficients.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

struct Inner {
    p: u64,
    k: u32,
    q: u64,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// The field GF(p^k). Cheap to clone.
#[derive(Clone)]
pub struct GaloisField {
    inner: Arc<Inner>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.k)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.k == other.inner.k
    }
}

impl Eq for GaloisField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl GaloisField {
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(AlgebraError::NotPrime(p));
        }
        if k == 0 {
            return Err(AlgebraError::UnsupportedField { p, k });
        }
        if k == 1 {
            return Ok(GaloisField {
                inner: Arc::new(Inner { p, k, q: p, modulus: vec![0, 1], tables: None }),
            });
        }
        let modulus = CONWAY
            .iter()
            .find(|(cp, ck, _)| *cp == p && *ck == k)
            .map(|(_, _, m)| m.to_vec())
            .ok_or(AlgebraError::UnsupportedField { p, k })?;
        let q = p.pow(k);
        let tables = build_tables(p, k, q, &modulus);
        Ok(GaloisField { inner: Arc::new(Inner { p, k, q, modulus, tables: Some(tables) }) })
    }

    /// Parses `"p=2,k=2"`, `"p=5"` or a bare prime power such as `"4"`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Ok(q) = spec.parse::<u64>() {
            let (p, k) = prime_power(q).ok_or(AlgebraError::NotPrime(q))?;
            return Self::new(p, k);
        }
        let mut p = None;
        let mut k = 1u32;
        for part in spec.split(',') {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| AlgebraError::Invalid(format!("bad field spec `{spec}`")))?;
            let bad = || AlgebraError::Invalid(format!("bad field spec `{spec}`"));
            match key.trim() {
                "p" => p = Some(val.trim().parse::<u64>().map_err(|_| bad())?),
                "k" => k = val.trim().parse::<u32>().map_err(|_| bad())?,
                "q" => {
                    let q = val.trim().parse::<u64>().map_err(|_| bad())?;
                    let (pp, kk) = prime_power(q).ok_or(AlgebraError::NotPrime(q))?;
                    p = Some(pp);
                    k = kk;
                }
                _ => return Err(bad()),
            }
        }
        let p = p.ok_or_else(|| AlgebraError::Invalid(format!("field spec `{spec}` lacks p")))?;
        Self::new(p, k)
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u64 {
        self.inner.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.k == 1
    }

    /// Monic modulus, lowest degree first (`[0, 1]` for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.inner.p as i64) as u32)
    }

    /// The element with the given integer encoding.
    pub fn element(&self, index: u64) -> Option<FieldElement> {
        (index < self.inner.q).then_some(FieldElement(index as u32))
    }

    /// The class of `t` in `F_p[t]/(m)`; a primitive element for Conway moduli.
    pub fn generator(&self) -> FieldElement {
        if self.inner.k == 1 {
            // smallest primitive root mod p
            let p = self.inner.p;
            (1..p)
                .map(|g| FieldElement(g as u32))
                .find(|&g| self.multiplicative_order(g) == p - 1)
                .unwrap_or(FieldElement::ONE)
        } else {
            FieldElement(self.inner.p as u32)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q as u32).map(FieldElement)
    }

    /// Residue-polynomial coefficients of `x`, lowest degree first, length `k`.
    pub fn residue_coeffs(&self, x: FieldElement) -> Vec<u32> {
        let p = self.inner.p as u32;
        let mut v = x.0;
        (0..self.inner.k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_residue_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let p = self.inner.p as u32;
        let mut v = 0u32;
        for &c in coeffs.iter().take(self.inner.k as usize).rev() {
            v = v * p + c % p;
        }
        FieldElement(v)
    }

    /// True for elements of the prime subfield.
    pub fn in_prime_field(&self, x: FieldElement) -> bool {
        (x.0 as u64) < self.inner.p
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.inner.tables {
            None => FieldElement(((a.0 as u64 + b.0 as u64) % self.inner.p) as u32),
            Some(t) => FieldElement(t.add[a.0 as usize * self.inner.q as usize + b.0 as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match &self.inner.tables {
            None => {
                if a.0 == 0 {
                    a
                } else {
                    FieldElement((self.inner.p - a.0 as u64) as u32)
                }
            }
            Some(t) => FieldElement(t.neg[a.0 as usize]),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.inner.tables {
            None => FieldElement(((a.0 as u64 * b.0 as u64) % self.inner.p) as u32),
            Some(t) => FieldElement(t.mul[a.0 as usize * self.inner.q as usize + b.0 as usize]),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        match &self.inner.tables {
            None => Some(self.pow(a, self.inner.p - 2)),
            Some(t) => Some(FieldElement(t.inv[a.0 as usize])),
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.inner.p)
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> u64 {
        if a.is_zero() {
            return 0;
        }
        let mut x = a;
        let mut n = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

/// Decomposes `q = p^k`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn build_tables(p: u64, k: u32, q: u64, modulus: &[u32]) -> Tables {
    let p32 = p as u32;
    let qs = q as usize;
    let digits = |mut v: u32| -> Vec<u32> {
        (0..k)
            .map(|_| {
                let d = v % p32;
                v /= p32;
                d
            })
            .collect()
    };
    let encode = |ds: &[u32]| -> u32 { ds.iter().rev().fold(0, |acc, &d| acc * p32 + d) };
    let all: Vec<Vec<u32>> = (0..q as u32).map(digits).collect();

    let mut add = vec![0u32; qs * qs];
    let mut mul = vec![0u32; qs * qs];
    for a in 0..qs {
        for b in 0..qs {
            let s: Vec<u32> = all[a].iter().zip(&all[b]).map(|(x, y)| (x + y) % p32).collect();
            add[a * qs + b] = encode(&s);
            mul[a * qs + b] = encode(&poly_mulmod(&all[a], &all[b], modulus, p32));
        }
    }
    let mut neg = vec![0u32; qs];
    let mut inv = vec![0u32; qs];
    for a in 0..qs {
        let n: Vec<u32> = all[a].iter().map(|x| (p32 - x) % p32).collect();
        neg[a] = encode(&n);
        if a != 0 {
            inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap_or(0) as u32;
        }
    }
    Tables { add, mul, neg, inv }
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    // reduce using t^k = -(m_0 + ... + m_{k-1} t^{k-1})
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus[..k].iter().enumerate() {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + (p as u64 - m as u64 % p as u64) * c) % p as u64;
        }
    }
    prod.truncate(k);
    prod.into_iter().map(|x| x as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conway_moduli_are_primitive() {
        for &(p, k, _) in CONWAY {
            let f = GaloisField::new(p, k).unwrap();
            let g = f.generator();
            assert_eq!(f.multiplicative_order(g), f.order() - 1, "GF({p}^{k})");
        }
    }

    #[test]
    fn gf4_arithmetic() {
        let f = GaloisField::new(2, 2).unwrap();
        let t = f.generator();
        // t^2 = t + 1
        assert_eq!(f.mul(t, t), f.add(t, f.one()));
        assert_eq!(f.add(t, t), f.zero());
        assert_eq!(f.mul(t, f.inv(t).unwrap()), f.one());
    }

    #[test]
    fn prime_field_inverse() {
        let f = GaloisField::prime(7).unwrap();
        for a in 1..7 {
            let x = f.from_int(a);
            assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
        assert_eq!(f.from_int(-1), FieldElement(6));
    }

    #[test]
    fn rejects_bad_fields() {
        assert_eq!(GaloisField::prime(4).unwrap_err(), AlgebraError::NotPrime(4));
        assert!(matches!(GaloisField::new(7, 3), Err(AlgebraError::UnsupportedField { .. })));
    }

    #[test]
    fn field_spec_parsing() {
        let f = GaloisField::from_spec("p=2,k=2").unwrap();
        assert_eq!(f.order(), 4);
        assert_eq!(GaloisField::from_spec("8").unwrap().degree(), 3);
        assert_eq!(GaloisField::from_spec("q=25").unwrap().characteristic(), 5);
        assert!(GaloisField::from_spec("6").is_err());
    }

    #[test]
    fn residue_round_trip() {
        let f = GaloisField::new(3, 3).unwrap();
        for x in f.elements() {
            assert_eq!(f.from_residue_coeffs(&f.residue_coeffs(x)), x);
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_prime_field() {
        let f = GaloisField::new(5, 2).unwrap();
        let fixed: Vec<_> = f.elements().filter(|&x| f.frobenius(x) == x).collect();
        assert_eq!(fixed.len(), 5);
        assert!(fixed.iter().all(|&x| f.in_prime_field(x)));
    }
}
