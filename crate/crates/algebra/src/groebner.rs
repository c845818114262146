//! Buchberger's algorithm in grevlex order, reduced bases and Krull dimension.

use std::collections::VecDeque;

use crate::error::{AlgebraError, Result};
use crate::poly::{Monomial, PolyRing, Polynomial};

/// Full reduction of `f` modulo `basis`; the remainder has no term divisible by
/// any leading monomial of `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let field = f.ring().field().clone();
    let leads: Vec<(&Monomial, _)> = basis.iter().filter_map(|g| g.leading_term()).collect();
    let mut rest = f.clone();
    let mut remainder = f.ring().zero();
    while let Some((m, c)) = rest.leading_term() {
        let m = m.clone();
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(i) => {
                let (lm, lc) = leads[i];
                let factor = field.div(c, lc).expect("nonzero leading coefficient");
                let shift = lm.quotient_of(&m);
                rest = &rest - &basis[i].mul_term(&shift, factor);
            }
            None => {
                let lead = Polynomial::monomial(f.ring(), m, c);
                remainder = &remainder + &lead;
                rest = &rest - &lead;
            }
        }
    }
    remainder
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let field = f.ring().field();
    let (fm, fc) = f.leading_term().expect("nonzero polynomial");
    let (gm, gc) = g.leading_term().expect("nonzero polynomial");
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l), field.inv(fc).expect("nonzero"));
    let b = g.mul_term(&gm.quotient_of(&l), field.inv(gc).expect("nonzero"));
    &a - &b
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolyRing,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().filter_map(|p| p.leading_monomial().cloned()).collect()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.polys)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|p| p.is_constant() && !p.is_zero())
    }

    /// Buchberger's criterion: every S-polynomial of basis elements reduces to zero.
    pub fn spolys_reduce_to_zero(&self) -> bool {
        let n = self.polys.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.reduce(&s_polynomial(&self.polys[i], &self.polys[j])).is_zero()))
    }

    /// Krull dimension of `F[x]/I`, or -1 for the unit ideal.
    ///
    /// Computed as the size of a largest set of variables no leading monomial
    /// is supported in.
    pub fn dimension(&self) -> i64 {
        if self.is_unit_ideal() {
            return -1;
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> = self
            .leading_monomials()
            .iter()
            .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        if supports.is_empty() {
            return n as i64;
        }
        let mut best = 0usize;
        max_independent(0, 0, n, &supports, &mut best);
        best as i64
    }
}

// independent set: S with no leading-monomial support contained in S
fn max_independent(i: usize, chosen: u64, n: usize, supports: &[u64], best: &mut usize) {
    let size = chosen.count_ones() as usize;
    if size + (n - i) <= *best {
        return;
    }
    if i == n {
        *best = size;
        return;
    }
    let with = chosen | (1 << i);
    if supports.iter().all(|&s| s & !with != 0) {
        max_independent(i + 1, with, n, supports, best);
    }
    max_independent(i + 1, chosen, n, supports, best);
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
pub fn groebner_basis(generators: &[Polynomial]) -> Result<GroebnerBasis> {
    let first = generators.first().ok_or(AlgebraError::EmptyIdeal)?;
    let ring = first.ring().clone();
    if generators.iter().any(|g| g.ring() != &ring) {
        return Err(AlgebraError::RingMismatch);
    }
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in generators {
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    if basis.is_empty() {
        return Ok(GroebnerBasis { ring, polys: Vec::new() });
    }
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push_back((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop_front() {
        let (mi, mj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        // product criterion
        if mi.is_coprime(mj) {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(GroebnerBasis { ring: ring.clone(), polys: vec![ring.one()] });
        }
        let k = basis.len();
        basis.push(r.monic());
        for i in 0..k {
            pairs.push_back((i, k));
        }
    }
    Ok(GroebnerBasis { ring, polys: reduce_basis(basis) })
}

fn reduce_basis(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // drop elements whose leading monomial is divisible by another's
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap().clone();
        if minimal.iter().any(|h| h.leading_monomial().unwrap().divides(&lm)) {
            continue;
        }
        minimal.push(g);
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let lead = minimal[i].leading_term().map(|(m, c)| Polynomial::monomial(minimal[i].ring(), m.clone(), c)).unwrap();
        let tail = &minimal[i] - &lead;
        reduced.push((&lead + &normal_form(&tail, &others)).monic());
    }
    reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    reduced
}

/// Krull dimension of the affine quotient by the ideal (-1 for the unit ideal).
pub fn ideal_dimension(generators: &[Polynomial]) -> Result<i64> {
    Ok(groebner_basis(generators)?.dimension())
}
