//! Sparse multivariate polynomials over a finite field, in grevlex order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::{FieldElement, GaloisField};

/// Exponent vector ordered by graded reverse lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                // smaller exponent in the last differing variable is bigger
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug)]
struct RingData {
    field: GaloisField,
    vars: Vec<String>,
}

/// Polynomial ring `F[x_1, ..., x_n]` with named variables. Cheap to clone.
#[derive(Debug, Clone)]
pub struct PolyRing(Arc<RingData>);

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.field == other.0.field && self.0.vars == other.0.vars)
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new<S: Into<String>>(field: GaloisField, vars: impl IntoIterator<Item = S>) -> Self {
        PolyRing(Arc::new(RingData { field, vars: vars.into_iter().map(Into::into).collect() }))
    }

    pub fn field(&self) -> &GaloisField {
        &self.0.field
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::var(self.nvars(), i, 1), FieldElement::ONE)
    }

    pub fn var_named(&self, name: &str) -> Result<Polynomial> {
        let i = self.var_index(name).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(self.var(i))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(FieldElement::ONE)
    }

    pub fn constant(&self, c: FieldElement) -> Polynomial {
        Polynomial::monomial(self, Monomial::one(self.nvars()), c)
    }
}

/// A polynomial with no zero coefficients stored.
#[derive(Clone)]
pub struct Polynomial {
    ring: PolyRing,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn monomial(ring: &PolyRing, m: Monomial, c: FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn from_terms(ring: &PolyRing, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Self {
        let mut p = ring.zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    fn field(&self) -> &GaloisField {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading one downwards.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> {
        self.terms.iter().rev().map(|(m, c)| (m, *c))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, FieldElement)> {
        self.terms.iter().next_back().map(|(m, c)| (m, *c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let f = self.ring.field().clone();
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = f.add(*existing, c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), *c);
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let f = self.field();
        let mut r = self.ring.zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                r.add_term(a.mul(b), f.mul(*ca, *cb));
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        let f = self.field();
        Polynomial::from_terms(&self.ring, self.terms.iter().map(|(m, x)| (m.clone(), f.mul(*x, c))))
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: FieldElement) -> Polynomial {
        let f = self.field();
        let terms = self
            .terms
            .iter()
            .map(|(a, x)| (a.mul(m), f.mul(*x, c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.field().inv(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let f = self.field();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.0[var];
            if e == 0 {
                return None;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            Some((Monomial(exps), f.mul(*c, f.from_int(e as i64))))
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn partial_derivative_named(&self, var: &str) -> Result<Polynomial> {
        let i = self.ring.var_index(var).ok_or_else(|| AlgebraError::UnknownVariable(var.to_string()))?;
        Ok(self.partial_derivative(i))
    }

    /// Value at a point of the coefficient field.
    pub fn evaluate(&self, point: &[FieldElement]) -> FieldElement {
        let f = self.field();
        self.terms.iter().fold(FieldElement::ZERO, |acc, (m, c)| {
            let t = m.0.iter().zip(point).fold(*c, |t, (&e, &x)| f.mul(t, f.pow(x, e as u64)));
            f.add(acc, t)
        })
    }

    /// Value at a point of an extension field of the same characteristic.
    /// Coefficients must lie in the prime field (or `ext` must be the coefficient field).
    pub fn evaluate_in(&self, ext: &GaloisField, point: &[FieldElement]) -> Result<FieldElement> {
        let coeffs = self.coefficients_in(ext)?;
        Ok(coeffs.iter().fold(FieldElement::ZERO, |acc, (m, c)| {
            let t = m.0.iter().zip(point).fold(*c, |t, (&e, &x)| ext.mul(t, ext.pow(x, e as u64)));
            ext.add(acc, t)
        }))
    }

    /// The coefficients re-encoded as elements of `ext`.
    pub fn coefficients_in(&self, ext: &GaloisField) -> Result<Vec<(Monomial, FieldElement)>> {
        let f = self.field();
        if f.characteristic() != ext.characteristic() {
            return Err(AlgebraError::CharacteristicMismatch {
                expected: f.characteristic(),
                got: ext.characteristic(),
            });
        }
        if f != ext && !self.terms.values().all(|&c| f.in_prime_field(c)) {
            return Err(AlgebraError::NoEmbedding { p: f.characteristic(), k: f.degree() });
        }
        // prime-field elements share their integer encoding across extensions
        Ok(self.terms.iter().map(|(m, c)| (m.clone(), *c)).collect())
    }

    /// Substitutes a constant for one variable (the variable stays in the ring).
    pub fn substitute(&self, var: usize, value: FieldElement) -> Polynomial {
        let f = self.field();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = m.0.clone();
            let e = std::mem::replace(&mut exps[var], 0);
            (Monomial(exps), f.mul(*c, f.pow(value, e as u64)))
        });
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Moves the polynomial into `target`, sending variable `i` to `var_map[i]`.
    /// Variables mapped to `None` must not occur.
    pub fn map_into(&self, target: &PolyRing, var_map: &[Option<usize>]) -> Result<Polynomial> {
        if target.field() != self.field() {
            return Err(AlgebraError::RingMismatch);
        }
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = var_map
                    .get(i)
                    .copied()
                    .flatten()
                    .ok_or_else(|| AlgebraError::UnknownVariable(self.ring.var_names()[i].clone()))?;
                exps[j] += e;
            }
            out.add_term(Monomial(exps), *c);
        }
        Ok(out)
    }

    /// Indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    /// Common degree in the given variables if every term has the same one.
    pub fn homogeneous_degree_in(&self, vars: &[usize]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| vars.iter().map(|&i| m.0[i]).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        let names = self.ring.var_names();
        for (n, (m, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let coeff = if field.is_prime_field() {
                c.index().to_string()
            } else {
                format_residue(field, c)
            };
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            match (c == FieldElement::ONE, factors.is_empty()) {
                (_, true) => write!(f, "{coeff}")?,
                (true, false) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{}*{}", coeff, factors.join("*"))?,
            }
        }
        Ok(())
    }
}

fn format_residue(field: &GaloisField, c: FieldElement) -> String {
    let parts: Vec<String> = field
        .residue_coeffs(c)
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| match (i, d) {
            (0, d) => d.to_string(),
            (1, 1) => "t".to_string(),
            (1, d) => format!("{d}*t"),
            (i, 1) => format!("t^{i}"),
            (i, d) => format!("{d}*t^{i}"),
        })
        .collect();
    format!("({})", parts.join("+"))
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomials from different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomials from different rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomials from different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let f = self.field();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}
