//! Split semisimple root systems of classical type, in simple-root coordinates.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{CoreError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        };
        write!(f, "{c}")
    }
}

/// Family and rank; identifies a root system up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SystemKind {
    pub family: Family,
    pub rank: usize,
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SystemKind {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || CoreError::Parse(format!("bad root system name `{s}`"));
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some(c) => {
                return Err(CoreError::UnsupportedSystem { family: c.to_string(), rank: 0 });
            }
            None => return Err(bad()),
        };
        let rank = chars.as_str().parse::<usize>().map_err(|_| bad())?;
        Ok(SystemKind { family, rank })
    }
}

/// A root, as an index into the table of its [`RootSystem`].
///
/// Indices `0..N` are the positive roots in height order and `N + i` is the
/// negative of root `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(pub(crate) u32);

impl Root {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug)]
pub struct RootSystem {
    kind: SystemKind,
    /// `cartan[i][j] = ⟨α_i^∨, α_j⟩`
    cartan: Vec<Vec<i32>>,
    gram: Vec<Vec<i32>>,
    roots: Vec<Vec<i32>>,
    lookup: HashMap<Vec<i32>, Root>,
    /// `reflections[i][r] = s_i(r)`
    reflections: Vec<Vec<Root>>,
    /// `pairings[r][i] = ⟨r^∨, α_i⟩`
    pairings: Vec<Vec<i32>>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for RootSystem {}

fn gram_matrix(kind: SystemKind) -> Result<Vec<Vec<i32>>> {
    let SystemKind { family, rank: n } = kind;
    let unsupported = || CoreError::UnsupportedSystem { family: family.to_string(), rank: n };
    let min_rank = match family {
        Family::A => 1,
        Family::B | Family::C | Family::D => 2,
    };
    if n < min_rank || n > 64 {
        return Err(unsupported());
    }
    // Gram matrices of the standard realisations (scaled to be integral).
    let mut g = vec![vec![0i32; n]; n];
    match family {
        Family::A => {
            for i in 0..n {
                g[i][i] = 2;
                if i + 1 < n {
                    g[i][i + 1] = -1;
                    g[i + 1][i] = -1;
                }
            }
        }
        Family::B => {
            // α_i = e_i - e_{i+1}, α_n = e_n; doubled
            for i in 0..n {
                g[i][i] = if i + 1 == n { 2 } else { 4 };
                if i + 1 < n {
                    g[i][i + 1] = -2;
                    g[i + 1][i] = -2;
                }
            }
        }
        Family::C => {
            // α_i = e_i - e_{i+1}, α_n = 2 e_n
            for i in 0..n {
                g[i][i] = if i + 1 == n { 4 } else { 2 };
                if i + 1 < n {
                    let v = if i + 2 == n { -2 } else { -1 };
                    g[i][i + 1] = v;
                    g[i + 1][i] = v;
                }
            }
        }
        Family::D => {
            // α_i = e_i - e_{i+1} (i < n), α_n = e_{n-1} + e_n
            for (i, row) in g.iter_mut().enumerate() {
                row[i] = 2;
            }
            for i in 0..n.saturating_sub(2) {
                g[i][i + 1] = -1;
                g[i + 1][i] = -1;
            }
            if n >= 3 {
                g[n - 3][n - 1] = -1;
                g[n - 1][n - 3] = -1;
            }
        }
    }
    Ok(g)
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let kind = SystemKind { family, rank };
        let gram = gram_matrix(kind)?;
        let n = rank;
        let cartan: Vec<Vec<i32>> =
            (0..n).map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[i][i]).collect()).collect();

        let reflect = |v: &[i32], i: usize| -> Vec<i32> {
            let c: i32 = (0..n).map(|j| cartan[i][j] * v[j]).sum();
            let mut out = v.to_vec();
            out[i] -= c;
            out
        };

        // closure of the simple roots under simple reflections, within R+
        let mut positive: Vec<Vec<i32>> =
            (0..n).map(|i| (0..n).map(|j| (i == j) as i32).collect()).collect();
        let mut frontier = positive.clone();
        while let Some(v) = frontier.pop() {
            for i in 0..n {
                let w = reflect(&v, i);
                if w.iter().all(|&c| c >= 0) && w.iter().any(|&c| c > 0) && !positive.contains(&w) {
                    positive.push(w.clone());
                    frontier.push(w);
                }
            }
        }
        positive.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let npos = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|v| v.iter().map(|c| -c).collect::<Vec<_>>()));
        let lookup: HashMap<Vec<i32>, Root> =
            roots.iter().enumerate().map(|(i, v)| (v.clone(), Root(i as u32))).collect();

        let reflections: Vec<Vec<Root>> = (0..n)
            .map(|i| roots.iter().map(|v| lookup[&reflect(v, i)]).collect())
            .collect();

        let form = |a: &[i32], b: &[i32]| -> i32 {
            (0..n).map(|i| (0..n).map(|j| a[i] * gram[i][j] * b[j]).sum::<i32>()).sum()
        };
        let mut pairings = Vec::with_capacity(roots.len());
        for v in &roots {
            let norm = form(v, v);
            let row: Vec<i32> = (0..n)
                .map(|i| {
                    let e: Vec<i32> = (0..n).map(|j| (i == j) as i32).collect();
                    let num = 2 * form(v, &e);
                    debug_assert_eq!(num % norm, 0);
                    num / norm
                })
                .collect();
            pairings.push(row);
        }
        debug_assert_eq!(npos * 2, roots.len());

        Ok(RootSystem { kind, cartan, gram, roots, lookup, reflections, pairings })
    }

    /// Builds from a name such as `"A4"`.
    pub fn from_name(name: &str) -> Result<Self> {
        let kind: SystemKind = name.parse()?;
        Self::new(kind.family, kind.rank)
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn family(&self) -> Family {
        self.kind.family
    }

    pub fn rank(&self) -> usize {
        self.kind.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Symmetric bilinear form on simple roots (integral scaling).
    pub fn gram(&self) -> &[Vec<i32>] {
        &self.gram
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = Root> {
        (0..self.num_positive() as u32).map(Root)
    }

    pub fn negative_roots(&self) -> impl Iterator<Item = Root> {
        (self.num_positive() as u32..self.roots.len() as u32).map(Root)
    }

    pub fn roots(&self) -> impl Iterator<Item = Root> {
        (0..self.roots.len() as u32).map(Root)
    }

    pub fn simple_root(&self, i: usize) -> Result<Root> {
        self.check_index(i)?;
        Ok(Root(i as u32))
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(CoreError::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }

    pub fn coeffs(&self, r: Root) -> &[i32] {
        &self.roots[r.index()]
    }

    pub fn root(&self, coeffs: &[i32]) -> Option<Root> {
        self.lookup.get(coeffs).copied()
    }

    pub fn is_positive(&self, r: Root) -> bool {
        r.index() < self.num_positive()
    }

    pub fn negate(&self, r: Root) -> Root {
        let n = self.num_positive() as u32;
        if r.0 < n {
            Root(r.0 + n)
        } else {
            Root(r.0 - n)
        }
    }

    pub fn height(&self, r: Root) -> i32 {
        self.coeffs(r).iter().sum()
    }

    /// Simple indices with nonzero coefficient.
    pub fn support(&self, r: Root) -> impl Iterator<Item = usize> + '_ {
        self.coeffs(r).iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i)
    }

    pub fn is_simple(&self, r: Root) -> Option<usize> {
        (r.index() < self.rank()).then_some(r.index())
    }

    /// `s_{α_i}(θ)`.
    pub fn reflect(&self, theta: Root, i: usize) -> Result<Root> {
        self.check_index(i)?;
        Ok(self.reflections[i][theta.index()])
    }

    /// Unchecked variant for hot loops; `i` must be a valid simple index.
    pub(crate) fn reflect_fast(&self, theta: Root, i: usize) -> Root {
        self.reflections[i][theta.index()]
    }

    /// `⟨θ^∨, α_i⟩`.
    pub fn pairing(&self, theta: Root, i: usize) -> Result<i32> {
        self.check_index(i)?;
        Ok(self.pairings[theta.index()][i])
    }

    pub(crate) fn pairing_fast(&self, theta: Root, i: usize) -> i32 {
        self.pairings[theta.index()][i]
    }

    /// Name of the `i`-th simple root: `a`, `b`, ... (or `a<i+1>` past 26).
    pub fn simple_name(&self, i: usize) -> String {
        if self.rank() <= 26 {
            ((b'a' + i as u8) as char).to_string()
        } else {
            format!("a{}", i + 1)
        }
    }

    /// `a+b`, `-a-b`, `2a+b`, ...
    pub fn format_root(&self, r: Root) -> String {
        let mut out = String::new();
        for (i, &c) in self.coeffs(r).iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = c.abs();
            out.push_str(sign);
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(&self.simple_name(i));
        }
        out
    }

    /// Parses the forms produced by [`format_root`](Self::format_root), `-(a+b)`,
    /// and coefficient vectors `[0,-1,0,0]`.
    pub fn parse_root(&self, s: &str) -> Result<Root> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || CoreError::Parse(format!("bad root `{s}`"));
        let coeffs: Vec<i32> = if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            inner.split(',').map(|t| t.parse::<i32>().map_err(|_| bad())).collect::<Result<_>>()?
        } else if let Some(inner) = s.strip_prefix("-(").and_then(|t| t.strip_suffix(')')) {
            self.parse_linear(inner).ok_or_else(bad)?.iter().map(|c| -c).collect()
        } else {
            self.parse_linear(&s).ok_or_else(bad)?
        };
        if coeffs.len() != self.rank() {
            return Err(bad());
        }
        self.root(&coeffs).ok_or_else(|| CoreError::Parse(format!("`{s}` is not a root of {}", self.kind)))
    }

    fn parse_linear(&self, s: &str) -> Option<Vec<i32>> {
        let mut coeffs = vec![0i32; self.rank()];
        let bytes = s.as_bytes();
        let mut pos = 0;
        if bytes.is_empty() {
            return None;
        }
        while pos < bytes.len() {
            let mut sign = 1;
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = -1;
                    pos += 1
                }
                _ if pos > 0 => return None,
                _ => {}
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mag: i32 = if start == pos { 1 } else { s[start..pos].parse().ok()? };
            let name_start = pos;
            while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                pos += 1;
            }
            let name = &s[name_start..pos];
            let idx = (0..self.rank()).find(|&i| self.simple_name(i) == name)?;
            coeffs[idx] += sign * mag;
        }
        Some(coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Type A model: roots e_i - e_j of R^{n+1}.
    fn e_coords(coeffs: &[i32]) -> Vec<i32> {
        let mut v = vec![0; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            v[i] += c;
            v[i + 1] -= c;
        }
        v
    }

    fn dot(a: &[i32], b: &[i32]) -> i32 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    fn a_roots(n: usize) -> Vec<Vec<i32>> {
        // positive roots e_i - e_j (i < j), as simple-root coordinates
        let mut out = Vec::new();
        for i in 0..=n {
            for j in i + 1..=n {
                out.push((0..n).map(|k| (k >= i && k < j) as i32).collect());
            }
        }
        out
    }

    #[test]
    fn a2_positive_roots() {
        let sys = RootSystem::new(Family::A, 2).unwrap();
        let names: Vec<String> = sys.positive_roots().map(|r| sys.format_root(r)).collect();
        assert_eq!(names, ["a", "b", "a+b"]);
    }

    #[test]
    fn type_a_root_counts_match_coordinate_model() {
        for n in 1..=6 {
            let sys = RootSystem::new(Family::A, n).unwrap();
            let model = a_roots(n);
            assert_eq!(sys.num_positive(), model.len());
            assert_eq!(sys.num_positive(), n * (n + 1) / 2);
            for v in &model {
                assert!(sys.root(v).is_some());
            }
        }
    }

    #[test]
    fn classical_root_counts() {
        let count = |f, n| RootSystem::new(f, n).unwrap().num_positive();
        assert_eq!(count(Family::B, 3), 9);
        assert_eq!(count(Family::C, 3), 9);
        assert_eq!(count(Family::B, 2), 4);
        assert_eq!(count(Family::D, 4), 12);
        assert_eq!(count(Family::D, 5), 20);
    }

    #[test]
    fn reflections_in_a2() {
        let sys = RootSystem::new(Family::A, 2).unwrap();
        let a = sys.parse_root("a").unwrap();
        let b = sys.parse_root("b").unwrap();
        let ab = sys.parse_root("a+b").unwrap();
        assert_eq!(sys.reflect(a, 0).unwrap(), sys.negate(a));
        assert_eq!(sys.reflect(b, 0).unwrap(), ab);
        assert_eq!(sys.reflect(ab, 1).unwrap(), a);
        assert!(matches!(sys.reflect(a, 2), Err(CoreError::IndexOutOfRange { index: 2, rank: 2 })));
    }

    #[test]
    fn pairings_match_e_coordinates() {
        let sys = RootSystem::new(Family::A, 4).unwrap();
        for r in sys.roots() {
            let e = e_coords(sys.coeffs(r));
            for i in 0..4 {
                let d = e_coords(sys.coeffs(sys.simple_root(i).unwrap()));
                assert_eq!(sys.pairing(r, i).unwrap(), dot(&e, &d));
            }
        }
        let abc = sys.parse_root("a+b+c").unwrap();
        assert_eq!(sys.pairing(abc, 1).unwrap(), 0);
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(a2.pairing(a2.parse_root("a+b").unwrap(), 1).unwrap(), 1);
        assert_eq!(a2.pairing(a2.parse_root("a").unwrap(), 0).unwrap(), 2);
    }

    #[test]
    fn cartan_invariants() {
        for (f, n) in [(Family::A, 4), (Family::B, 3), (Family::C, 4), (Family::D, 4)] {
            let sys = RootSystem::new(f, n).unwrap();
            let c = sys.cartan();
            for i in 0..n {
                assert_eq!(c[i][i], 2);
                for j in 0..n {
                    if i != j {
                        assert!(c[i][j] <= 0);
                        assert_eq!(c[i][j] == 0, c[j][i] == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn reflection_is_involutive_and_pairing_antisymmetric() {
        for (f, n) in [(Family::A, 4), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let sys = RootSystem::new(f, n).unwrap();
            for r in sys.roots() {
                for i in 0..n {
                    assert_eq!(sys.reflect(sys.reflect(r, i).unwrap(), i).unwrap(), r);
                    assert_eq!(sys.pairing(sys.negate(r), i).unwrap(), -sys.pairing(r, i).unwrap());
                }
            }
        }
    }

    #[test]
    fn root_parsing_forms() {
        let sys = RootSystem::new(Family::A, 4).unwrap();
        let r = sys.parse_root("-b").unwrap();
        assert_eq!(sys.coeffs(r), &[0, -1, 0, 0]);
        assert_eq!(sys.parse_root("[0,-1,0,0]").unwrap(), r);
        assert_eq!(sys.parse_root("-(a+b)").unwrap(), sys.parse_root("-a-b").unwrap());
        assert!(sys.parse_root("a+c").is_err());
        assert!(sys.parse_root("x").is_err());
        for r in sys.roots() {
            assert_eq!(sys.parse_root(&sys.format_root(r)).unwrap(), r);
        }
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        assert_eq!(b2.format_root(b2.parse_root("a+2b").unwrap()), "a+2b");
    }

    #[test]
    fn unsupported_names() {
        assert!(RootSystem::from_name("E6").is_err());
        assert!(RootSystem::from_name("A0").is_err());
        assert!(RootSystem::from_name("D1").is_err());
        assert_eq!(RootSystem::from_name("a3").unwrap().kind().to_string(), "A3");
    }
}
