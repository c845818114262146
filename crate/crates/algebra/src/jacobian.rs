//! Jacobian matrices and their minors.

use crate::poly::Polynomial;

/// Rows are generators, columns the variables in `vars`.
pub fn jacobian(generators: &[Polynomial], vars: &[usize]) -> Vec<Vec<Polynomial>> {
    generators
        .iter()
        .map(|g| vars.iter().map(|&v| g.partial_derivative(v)).collect())
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square nonempty matrix");
    if n == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring().clone();
    let mut det = ring.zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = entry * &determinant(&minor);
        det = if j % 2 == 0 { &det + &term } else { &det - &term };
    }
    det
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All nonzero `size × size` minors. `size == 0` yields the constant one.
pub fn minors(m: &[Vec<Polynomial>], size: usize) -> Vec<Polynomial> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if size == 0 {
        return m.first().and_then(|r| r.first()).map(|p| vec![p.ring().one()]).unwrap_or_default();
    }
    if size > rows || size > cols {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rs in combinations(rows, size) {
        for cs in combinations(cols, size) {
            let sub: Vec<Vec<Polynomial>> =
                rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
            let d = determinant(&sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;
    use crate::parse::parse_polynomial;
    use crate::poly::PolyRing;

    #[test]
    fn two_by_two_determinant() {
        let r = PolyRing::new(GaloisField::prime(7).unwrap(), ["a", "b", "c", "d"]);
        let m = vec![vec![r.var(0), r.var(1)], vec![r.var(2), r.var(3)]];
        assert_eq!(determinant(&m), parse_polynomial(&r, "a*d - b*c").unwrap());
    }

    #[test]
    fn minors_of_bsdh_chart() {
        // <a^2 + b^2*y, z> on the chart x = c = 1, p = 2
        let r = PolyRing::new(GaloisField::prime(2).unwrap(), ["y", "z", "a", "b"]);
        let gens = vec![parse_polynomial(&r, "a^2 + b^2*y").unwrap(), r.var(1)];
        let j = jacobian(&gens, &[0, 1, 2, 3]);
        assert!(j[0][2].is_zero() && j[0][3].is_zero());
        let ms = minors(&j, 2);
        assert_eq!(ms, vec![parse_polynomial(&r, "b^2").unwrap()]);
    }

    #[test]
    fn combination_count() {
        assert_eq!(combinations(6, 3).len(), 20);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
