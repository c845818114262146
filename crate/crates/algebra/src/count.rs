//! Brute-force counting of rational points on affine and multi-projective varieties.

use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::field::{FieldElement, GaloisField};
use crate::poly::Polynomial;

/// Default cap on the number of points examined.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// A polynomial flattened for repeated evaluation over one field.
struct Compiled {
    terms: Vec<(FieldElement, Vec<(usize, u64)>)>,
}

impl Compiled {
    fn new(f: &Polynomial, field: &GaloisField) -> Result<Self> {
        let terms = f
            .coefficients_in(field)?
            .into_iter()
            .map(|(m, c)| {
                let factors = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e as u64))
                    .collect();
                (c, factors)
            })
            .collect();
        Ok(Compiled { terms })
    }

    fn vanishes(&self, field: &GaloisField, point: &[FieldElement]) -> bool {
        let mut acc = FieldElement::ZERO;
        for (c, factors) in &self.terms {
            let mut t = *c;
            for &(i, e) in factors {
                t = field.mul(t, field.pow(point[i], e));
                if t.is_zero() {
                    break;
                }
            }
            acc = field.add(acc, t);
        }
        acc.is_zero()
    }
}

fn compile_all(generators: &[Polynomial], field: &GaloisField) -> Result<(usize, Vec<Compiled>)> {
    let first = generators.first().ok_or(AlgebraError::EmptyIdeal)?;
    let ring = first.ring();
    if generators.iter().any(|g| g.ring() != ring) {
        return Err(AlgebraError::RingMismatch);
    }
    let compiled = generators.iter().map(|g| Compiled::new(g, field)).collect::<Result<_>>()?;
    Ok((ring.nvars(), compiled))
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(AlgebraError::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Number of points of `F_q^n` on which every generator vanishes.
pub fn affine_point_count(generators: &[Polynomial], field: &GaloisField, budget: u128) -> Result<u64> {
    let (n, compiled) = compile_all(generators, field)?;
    let q = field.order();
    let needed = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    check_budget(needed, budget)?;
    let count = (0..needed as u64)
        .into_par_iter()
        .map(|idx| {
            let mut point = vec![FieldElement::ZERO; n];
            let mut r = idx;
            for x in point.iter_mut() {
                *x = FieldElement((r % q) as u32);
                r /= q;
            }
            compiled.iter().all(|c| c.vanishes(field, &point)) as u64
        })
        .sum();
    Ok(count)
}

/// Normalised representatives of `P^{m-1}(F_q)`: the first nonzero coordinate is one.
pub fn projective_points(field: &GaloisField, m: usize) -> Vec<Vec<FieldElement>> {
    let q = field.order();
    let mut out = Vec::new();
    for lead in 0..m {
        let free = m - lead - 1;
        let total = q.pow(free as u32);
        for idx in 0..total {
            let mut v = vec![FieldElement::ZERO; m];
            v[lead] = FieldElement::ONE;
            let mut r = idx;
            for x in v[lead + 1..].iter_mut() {
                *x = FieldElement((r % q) as u32);
                r /= q;
            }
            out.push(v);
        }
    }
    out
}

/// Number of `F_q`-points of the subvariety of `P^{b_1-1} × … × P^{b_s-1}` cut out by
/// multi-homogeneous generators. `blocks` lists the variable indices of each factor
/// and must partition the variables of the ring.
pub fn projective_point_count(
    generators: &[Polynomial],
    blocks: &[Vec<usize>],
    field: &GaloisField,
    budget: u128,
) -> Result<u64> {
    let (n, compiled) = compile_all(generators, field)?;
    let mut seen = vec![false; n];
    for &i in blocks.iter().flatten() {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(AlgebraError::Invalid("variable blocks must partition the ring variables".into()));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(AlgebraError::Invalid("variable blocks must partition the ring variables".into()));
    }
    let factor_points: Vec<Vec<Vec<FieldElement>>> =
        blocks.iter().map(|b| projective_points(field, b.len())).collect();
    let needed = factor_points.iter().try_fold(1u128, |acc, pts| acc.checked_mul(pts.len() as u128));
    check_budget(needed.unwrap_or(u128::MAX), budget)?;
    if factor_points.is_empty() {
        return Ok(compiled.iter().all(|c| c.vanishes(field, &[])) as u64);
    }

    let count = factor_points[0]
        .par_iter()
        .map(|head| {
            let mut point = vec![FieldElement::ZERO; n];
            for (&var, &x) in blocks[0].iter().zip(head) {
                point[var] = x;
            }
            let mut idx = vec![0usize; blocks.len()];
            let mut local = 0u64;
            loop {
                for b in 1..blocks.len() {
                    for (&var, &x) in blocks[b].iter().zip(&factor_points[b][idx[b]]) {
                        point[var] = x;
                    }
                }
                if compiled.iter().all(|c| c.vanishes(field, &point)) {
                    local += 1;
                }
                // odometer over the remaining factors
                let mut b = blocks.len() - 1;
                loop {
                    if b == 0 {
                        return local;
                    }
                    idx[b] += 1;
                    if idx[b] < factor_points[b].len() {
                        break;
                    }
                    idx[b] = 0;
                    b -= 1;
                }
            }
        })
        .sum();
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_system;
    use crate::poly::PolyRing;

    #[test]
    fn line_in_affine_plane() {
        let f = GaloisField::prime(3).unwrap();
        let ring = PolyRing::new(f.clone(), ["x", "y"]);
        assert_eq!(affine_point_count(&[ring.var(0)], &f, DEFAULT_BUDGET).unwrap(), 3);
    }

    #[test]
    fn projective_space_sizes() {
        for spec in ["2", "3", "4"] {
            let f = GaloisField::from_spec(spec).unwrap();
            let q = f.order() as usize;
            assert_eq!(projective_points(&f, 3).len(), q * q + q + 1);
        }
    }

    #[test]
    fn incidence_over_f2() {
        // equals 1 + 2q + 2q^2 + q^3 at q = 2
        let f = GaloisField::prime(2).unwrap();
        let (ring, g) = parse_system(&f, &["x1*y1 + x2*y2 + x3*y3"], &["x1", "x2", "x3", "y1", "y2", "y3"]).unwrap();
        assert_eq!(ring.nvars(), 6);
        let n = projective_point_count(&g, &[vec![0, 1, 2], vec![3, 4, 5]], &f, DEFAULT_BUDGET).unwrap();
        assert_eq!(n, 21);
    }

    #[test]
    fn budget_is_enforced() {
        let f = GaloisField::prime(5).unwrap();
        let ring = PolyRing::new(f.clone(), ["a", "b", "c"]);
        let err = affine_point_count(&[ring.var(0)], &f, 100).unwrap_err();
        assert_eq!(err, AlgebraError::BudgetExceeded { needed: 125, budget: 100 });
    }

    #[test]
    fn extension_requires_matching_characteristic() {
        let f2 = GaloisField::prime(2).unwrap();
        let f9 = GaloisField::new(3, 2).unwrap();
        let ring = PolyRing::new(f2, ["x"]);
        assert!(matches!(
            affine_point_count(&[ring.var(0)], &f9, DEFAULT_BUDGET),
            Err(AlgebraError::CharacteristicMismatch { .. })
        ));
    }

    #[test]
    fn blocks_must_partition() {
        let f = GaloisField::prime(2).unwrap();
        let ring = PolyRing::new(f.clone(), ["x", "y"]);
        assert!(projective_point_count(&[ring.var(0)], &[vec![0]], &f, DEFAULT_BUDGET).is_err());
    }
}
