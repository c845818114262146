//! Chow groups of `G/P` versus `G/P_red` in the Schubert basis.

use std::fmt;

use crate::error::{CoreError, Result};
use crate::parabolic::WenzelDatum;
use crate::weyl::{LeviSubset, WeylElement, WeylGroup};

/// Minimal coset representatives of `W / W_L`, graded by length.
#[derive(Debug, Clone)]
pub struct SchubertBasis {
    levi: LeviSubset,
    reps: Vec<WeylElement>,
}

impl SchubertBasis {
    pub fn new(group: &WeylGroup, levi: &LeviSubset) -> Result<Self> {
        Ok(SchubertBasis { levi: levi.clone(), reps: group.minimal_coset_reps(levi)? })
    }

    pub fn levi(&self) -> &LeviSubset {
        &self.levi
    }

    pub fn reps(&self) -> &[WeylElement] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn position(&self, w: &WeylElement) -> Option<usize> {
        self.reps.iter().position(|r| r == w)
    }

    /// The representative of the open cell.
    pub fn top(&self) -> &WeylElement {
        self.reps.last().expect("nonempty basis")
    }
}

/// `d_w = Σ n_α` over `α ∈ J` with `w(α) ∈ I`; `w` must be a minimal representative.
pub fn d_exponent(datum: &WenzelDatum, w: &WeylElement) -> Result<u64> {
    let group = datum.group();
    group.check_element(w)?;
    if !group.is_minimal_rep(datum.levi(), w) {
        return Err(CoreError::NotMinimalRep(w.to_string()));
    }
    Ok(d_unchecked(datum, w))
}

fn d_unchecked(datum: &WenzelDatum, w: &WeylElement) -> u64 {
    let sys = datum.system();
    datum.j().filter(|&(alpha, _)| datum.levi().in_radical(sys, w.act(alpha))).map(|(_, n)| n as u64).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferKind {
    Pushforward,
    Pullback,
    Composite,
}

/// A diagonal matrix over the Schubert basis whose entries are powers of `p`,
/// stored as exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalTransfer {
    kind: TransferKind,
    p: u64,
    exponents: Vec<u64>,
}

impl DiagonalTransfer {
    pub fn kind(&self) -> TransferKind {
        self.kind
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// The `i`-th diagonal entry, if it fits.
    pub fn entry(&self, i: usize) -> Option<u128> {
        (self.p as u128).checked_pow(u32::try_from(self.exponents[i]).ok()?)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.p != other.p || self.exponents.len() != other.exponents.len() {
            return Err(CoreError::InvalidDatum("transfer matrices over different bases".into()));
        }
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect();
        Ok(DiagonalTransfer { kind: TransferKind::Composite, p: self.p, exponents })
    }

    /// `Some(e)` when the matrix is `p^e` times the identity.
    pub fn scalar_exponent(&self) -> Option<u64> {
        let first = *self.exponents.first()?;
        self.exponents.iter().all(|&e| e == first).then_some(first)
    }
}

/// Exponents `d_w` for every basis element, together with the basis.
#[derive(Debug, Clone)]
pub struct ChowTransfer {
    basis: SchubertBasis,
    p: u64,
    d: Vec<u64>,
}

impl ChowTransfer {
    pub fn new(datum: &WenzelDatum) -> Result<Self> {
        let basis = SchubertBasis::new(datum.group(), datum.levi())?;
        let d = basis.reps().iter().map(|w| d_unchecked(datum, w)).collect();
        Ok(ChowTransfer { basis, p: datum.characteristic(), d })
    }

    pub fn basis(&self) -> &SchubertBasis {
        &self.basis
    }

    pub fn d(&self) -> &[u64] {
        &self.d
    }

    /// `d` at the open cell.
    pub fn d_top(&self) -> u64 {
        *self.d.last().expect("nonempty basis")
    }

    /// `π_*[X_{P_red}(w)] = p^{d_w} [X_P(w)]`.
    pub fn pushforward(&self) -> DiagonalTransfer {
        DiagonalTransfer { kind: TransferKind::Pushforward, p: self.p, exponents: self.d.clone() }
    }

    /// `π^*[X_P(w)] = p^{d_{w_0} − d_w} [X_{P_red}(w)]`.
    pub fn pullback(&self) -> DiagonalTransfer {
        let top = self.d_top();
        DiagonalTransfer { kind: TransferKind::Pullback, p: self.p, exponents: self.d.iter().map(|&d| top - d).collect() }
    }

    /// Order of `coker(π^*)`.
    pub fn cokernel_order(&self) -> PrimePower {
        PrimePower { p: self.p, exponent: self.pullback().exponents.iter().sum() }
    }
}

pub fn pushforward_matrix(datum: &WenzelDatum) -> Result<DiagonalTransfer> {
    Ok(ChowTransfer::new(datum)?.pushforward())
}

pub fn pullback_matrix(datum: &WenzelDatum) -> Result<DiagonalTransfer> {
    Ok(ChowTransfer::new(datum)?.pullback())
}

pub fn cokernel_order(datum: &WenzelDatum) -> Result<PrimePower> {
    Ok(ChowTransfer::new(datum)?.cokernel_order())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub exponent: u64,
}

impl PrimePower {
    pub fn value(&self) -> Option<u128> {
        (self.p as u128).checked_pow(u32::try_from(self.exponent).ok()?)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.exponent)
    }
}

/// Integer polynomial in `q`, coefficients in increasing degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolynomial(pub Vec<u64>);

impl QPolynomial {
    fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut coeffs = Vec::new();
        for l in lengths {
            if coeffs.len() <= l {
                coeffs.resize(l + 1, 0);
            }
            coeffs[l] += 1;
        }
        QPolynomial(coeffs)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn eval(&self, q: u64) -> u128 {
        self.0.iter().rev().fold(0u128, |acc, &c| acc * q as u128 + c as u128)
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && k > 0 { String::new() } else { c.to_string() };
            parts.push(match k {
                0 => coeff,
                1 => format!("{coeff}q"),
                _ => format!("{coeff}q^{k}"),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Σ q^{ℓ(w)}` over minimal coset representatives.
pub fn poincare_polynomial(group: &WeylGroup, levi: &LeviSubset) -> Result<QPolynomial> {
    Ok(QPolynomial::from_lengths(group.minimal_coset_reps(levi)?.iter().map(WeylElement::length)))
}

/// `Σ q^{ℓ(v)}` over minimal representatives `v ≤ w`: the point count of the
/// Schubert variety of `w` in `G/P_L`.
pub fn schubert_poincare(group: &WeylGroup, levi: &LeviSubset, w: &WeylElement) -> Result<QPolynomial> {
    let w = group.minimal_rep(levi, w);
    let mut lengths = Vec::new();
    for v in group.minimal_coset_reps(levi)? {
        if v.bruhat_leq(&w)? {
            lengths.push(v.length());
        }
    }
    Ok(QPolynomial::from_lengths(lengths))
}
