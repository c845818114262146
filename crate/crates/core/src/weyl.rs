//! Weyl groups as permutations of the root set.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::sync::{Arc, OnceLock};

use crate::error::{CoreError, Result};
use crate::rootsys::{Root, RootSystem};

/// A Weyl group element, stored as its permutation of all roots.
#[derive(Clone)]
pub struct WeylElement {
    sys: Arc<RootSystem>,
    perm: Vec<Root>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.sys.kind() == other.sys.kind() && self.perm == other.perm
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.perm.hash(state);
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded by length, then lexicographic on normal words.
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sys
            .kind()
            .cmp(&other.sys.kind())
            .then_with(|| self.length().cmp(&other.length()))
            .then_with(|| self.normal_word().cmp(&other.normal_word()))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({}: {})", self.sys.kind(), self)
    }
}

/// Reduced word over simple-root names, e.g. `sa*sb`; the identity is `e`.
impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.normal_word();
        if word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = word.iter().map(|&i| format!("s{}", self.sys.simple_name(i))).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl WeylElement {
    pub fn system(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    /// Images of all roots, indexed by root.
    pub fn root_permutation(&self) -> &[Root] {
        &self.perm
    }

    pub fn act(&self, theta: Root) -> Root {
        self.perm[theta.index()]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, r)| r.index() == i)
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        self.sys.positive_roots().filter(|&r| !self.sys.is_positive(self.act(r))).count()
    }

    /// Positive roots sent to negative roots.
    pub fn inversions(&self) -> Vec<Root> {
        self.sys.positive_roots().filter(|&r| !self.sys.is_positive(self.act(r))).collect()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.sys.kind() == other.sys.kind() {
            Ok(())
        } else {
            Err(CoreError::SystemMismatch)
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&r| self.perm[r.index()]).collect();
        WeylElement { sys: self.sys.clone(), perm }
    }

    pub fn inverse(&self) -> Self {
        let mut perm = self.perm.clone();
        for (i, &r) in self.perm.iter().enumerate() {
            perm[r.index()] = Root(i as u32);
        }
        WeylElement { sys: self.sys.clone(), perm }
    }

    /// `s_i · self`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        let perm = self.perm.iter().map(|&r| self.sys.reflect_fast(r, i)).collect();
        WeylElement { sys: self.sys.clone(), perm }
    }

    /// `self · s_i`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        let perm = (0..self.perm.len())
            .map(|r| self.perm[self.sys.reflect_fast(Root(r as u32), i).index()])
            .collect();
        WeylElement { sys: self.sys.clone(), perm }
    }

    /// `ℓ(s_i w) < ℓ(w)`, i.e. `w^{-1}(α_i) < 0`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let alpha = Root(i as u32);
        let pos = self.perm.iter().position(|&r| r == alpha).expect("permutation");
        !self.sys.is_positive(Root(pos as u32))
    }

    /// `ℓ(w s_i) < ℓ(w)`, i.e. `w(α_i) < 0`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        !self.sys.is_positive(self.perm[i])
    }

    pub fn left_descents(&self) -> Vec<usize> {
        (0..self.sys.rank()).filter(|&i| self.has_left_descent(i)).collect()
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.sys.rank()).filter(|&i| self.has_right_descent(i)).collect()
    }

    /// Lexicographically least reduced word `(i_1, …, i_k)` with `w = s_{i_1}⋯s_{i_k}`.
    pub fn normal_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = self.clone();
        while let Some(i) = (0..self.sys.rank()).find(|&i| cur.has_left_descent(i)) {
            word.push(i);
            cur = cur.left_mul_simple(i);
        }
        word
    }

    /// All reduced words, sorted lexicographically.
    pub fn reduced_words(&self) -> Vec<Vec<usize>> {
        if self.is_identity() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in self.left_descents() {
            for mut tail in self.left_mul_simple(i).reduced_words() {
                tail.insert(0, i);
                out.push(tail);
            }
        }
        out
    }

    /// Simple indices occurring in a reduced word.
    pub fn support(&self) -> BTreeSet<usize> {
        self.normal_word().into_iter().collect()
    }

    /// `u ≤ v` in Bruhat order, via subwords of the normal word of `v`.
    pub fn bruhat_leq(&self, v: &Self) -> Result<bool> {
        self.check_same(v)?;
        let target_len = self.length();
        if target_len > v.length() {
            return Ok(false);
        }
        let mut products: HashSet<WeylElement> = HashSet::new();
        products.insert(v.identity());
        for i in v.normal_word() {
            let extended: Vec<WeylElement> = products.iter().map(|x| x.right_mul_simple(i)).collect();
            products.extend(extended);
        }
        Ok(products.contains(self))
    }

    /// Demazure product `self ⋆ other`.
    pub fn demazure(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut cur = self.clone();
        for i in other.normal_word() {
            if !cur.has_right_descent(i) {
                cur = cur.right_mul_simple(i);
            }
        }
        Ok(cur)
    }

    pub fn identity(&self) -> Self {
        identity_of(&self.sys)
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;

    /// Panics if the elements belong to different root systems; use
    /// [`WeylElement::compose`] for a checked product.
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        self.compose(rhs).expect("Weyl elements of one root system")
    }
}

fn identity_of(sys: &Arc<RootSystem>) -> WeylElement {
    WeylElement { sys: sys.clone(), perm: sys.roots().collect() }
}

/// A subset of the simple roots generating a standard Levi subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeviSubset {
    rank: usize,
    members: BTreeSet<usize>,
}

impl LeviSubset {
    pub fn new(rank: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i >= rank) {
            return Err(CoreError::InvalidLevi(format!("simple index {bad} out of range for rank {rank}")));
        }
        Ok(LeviSubset { rank, members })
    }

    /// The Borel case: no simple roots.
    pub fn borel(rank: usize) -> Self {
        LeviSubset { rank, members: BTreeSet::new() }
    }

    pub fn full(rank: usize) -> Self {
        LeviSubset { rank, members: (0..rank).collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_borel(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.rank == other.rank && self.members.is_subset(&other.members)
    }

    /// Roots supported on the subset (the Levi root system).
    pub fn contains_root(&self, sys: &RootSystem, r: Root) -> bool {
        sys.support(r).all(|i| self.contains(i))
    }

    /// `I`: positive roots not supported on the subset.
    pub fn radical_roots(&self, sys: &RootSystem) -> Vec<Root> {
        sys.positive_roots().filter(|&r| !self.contains_root(sys, r)).collect()
    }

    /// Whether `r ∈ I`.
    pub fn in_radical(&self, sys: &RootSystem, r: Root) -> bool {
        sys.is_positive(r) && !self.contains_root(sys, r)
    }

    fn check_rank(&self, sys: &RootSystem) -> Result<()> {
        if self.rank == sys.rank() {
            Ok(())
        } else {
            Err(CoreError::InvalidLevi(format!("subset for rank {} used with {}", self.rank, sys.kind())))
        }
    }
}

/// Entry point for constructing and enumerating elements of one Weyl group.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    sys: Arc<RootSystem>,
    elements: Arc<OnceLock<Vec<WeylElement>>>,
}

impl PartialEq for WeylGroup {
    fn eq(&self, other: &Self) -> bool {
        self.sys.kind() == other.sys.kind()
    }
}

impl Eq for WeylGroup {}

impl WeylGroup {
    pub fn new(sys: RootSystem) -> Self {
        WeylGroup { sys: Arc::new(sys), elements: Arc::new(OnceLock::new()) }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(Self::new(RootSystem::from_name(name)?))
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    pub fn rank(&self) -> usize {
        self.sys.rank()
    }

    pub fn identity(&self) -> WeylElement {
        identity_of(&self.sys)
    }

    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        self.sys.check_index(i)?;
        Ok(self.identity().left_mul_simple(i))
    }

    /// Product `s_{i_1}⋯s_{i_k}`; the word need not be reduced.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut cur = self.identity();
        for &i in word {
            self.sys.check_index(i)?;
            cur = cur.right_mul_simple(i);
        }
        Ok(cur)
    }

    /// Parses `e`, `sa*sb`, `s1*s2`, `a,b` or `a b`.
    pub fn parse_element(&self, text: &str) -> Result<WeylElement> {
        self.from_word(&self.parse_word(text)?)
    }

    /// Parses a (not necessarily reduced) word of simple indices.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let mut word = Vec::new();
        for tok in text.split(|c: char| c == '*' || c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            if tok == "e" || tok == "id" || tok == "1" && self.rank() == 0 {
                continue;
            }
            word.push(self.parse_letter(tok)?);
        }
        Ok(word)
    }

    fn parse_letter(&self, tok: &str) -> Result<usize> {
        let bad = || CoreError::InvalidWord(format!("unknown simple reflection `{tok}`"));
        let body = tok.strip_prefix('s').filter(|b| !b.is_empty()).unwrap_or(tok);
        if let Ok(k) = body.parse::<usize>() {
            if k == 0 || k > self.rank() {
                return Err(bad());
            }
            return Ok(k - 1);
        }
        (0..self.rank()).find(|&i| self.sys.simple_name(i) == body).ok_or_else(bad)
    }

    /// All elements, sorted by length then normal word.
    pub fn elements(&self) -> &[WeylElement] {
        self.elements.get_or_init(|| {
            let id = self.identity();
            let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
            let mut queue = VecDeque::from([id]);
            while let Some(w) = queue.pop_front() {
                for i in 0..self.rank() {
                    let next = w.right_mul_simple(i);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
            let mut all: Vec<WeylElement> = seen.into_iter().collect();
            all.sort();
            all
        })
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    /// Longest element of the parabolic subgroup generated by `levi`.
    pub fn longest_element(&self, levi: &LeviSubset) -> Result<WeylElement> {
        levi.check_rank(&self.sys)?;
        let mut cur = self.identity();
        loop {
            match levi.members().find(|&i| !cur.has_right_descent(i)) {
                Some(i) => cur = cur.right_mul_simple(i),
                None => return Ok(cur),
            }
        }
    }

    pub fn w0(&self) -> WeylElement {
        self.longest_element(&LeviSubset::full(self.rank())).expect("full subset")
    }

    /// Minimal-length representatives of `W / W_L`, sorted by length.
    pub fn minimal_coset_reps(&self, levi: &LeviSubset) -> Result<Vec<WeylElement>> {
        levi.check_rank(&self.sys)?;
        Ok(self
            .elements()
            .iter()
            .filter(|w| levi.members().all(|i| !w.has_right_descent(i)))
            .cloned()
            .collect())
    }

    pub fn is_minimal_rep(&self, levi: &LeviSubset, w: &WeylElement) -> bool {
        levi.members().all(|i| !w.has_right_descent(i))
    }

    /// Minimal representative of the coset `w W_L`.
    pub fn minimal_rep(&self, levi: &LeviSubset, w: &WeylElement) -> WeylElement {
        let mut cur = w.clone();
        while let Some(i) = levi.members().find(|&i| cur.has_right_descent(i)) {
            cur = cur.right_mul_simple(i);
        }
        cur
    }

    /// Longest element of `W_L · w · W_R`.
    pub fn max_double_coset_rep(&self, left: &LeviSubset, right: &LeviSubset, w: &WeylElement) -> Result<WeylElement> {
        let w0_left = self.longest_element(left)?;
        let w0_right = self.longest_element(right)?;
        w0_left.demazure(&w.demazure(&w0_right)?)
    }

    /// `w ↦ w''`: the longest representative of `W_L w W_L`.
    pub fn to_w_i(&self, levi: &LeviSubset, w: &WeylElement) -> Result<WeylElement> {
        self.max_double_coset_rep(levi, levi, w)
    }

    /// Iterated Demazure product; the identity for an empty list.
    pub fn demazure_all<'a>(&self, elems: impl IntoIterator<Item = &'a WeylElement>) -> Result<WeylElement> {
        let mut acc = self.identity();
        for e in elems {
            acc = acc.demazure(e)?;
        }
        Ok(acc)
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "e".into();
        }
        word.iter().map(|&i| format!("s{}", self.sys.simple_name(i))).collect::<Vec<_>>().join("*")
    }

    pub fn check_element(&self, w: &WeylElement) -> Result<()> {
        if w.sys.kind() == self.sys.kind() {
            Ok(())
        } else {
            Err(CoreError::SystemMismatch)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> WeylGroup {
        WeylGroup::from_name(&format!("A{n}")).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(a(2).order(), 6);
        assert_eq!(a(4).order(), 120);
        assert_eq!(WeylGroup::from_name("B3").unwrap().order(), 48);
        assert_eq!(WeylGroup::from_name("D4").unwrap().order(), 192);
    }

    #[test]
    fn composition_and_action() {
        let g = a(2);
        let sa = g.simple_reflection(0).unwrap();
        let sb = g.simple_reflection(1).unwrap();
        assert!((&sa * &sa).is_identity());
        let sys = g.system();
        let sasb = &sa * &sb;
        assert_eq!(sasb.act(sys.parse_root("-b").unwrap()), sys.parse_root("a+b").unwrap());
        assert_eq!(sasb.act(sys.parse_root("-a").unwrap()), sys.parse_root("-b").unwrap());
    }

    #[test]
    fn longest_elements() {
        assert_eq!(a(2).w0().length(), 3);
        assert_eq!(a(4).w0().length(), 10);
        assert!(a(4).longest_element(&LeviSubset::borel(4)).unwrap().is_identity());
        let w0 = a(3).w0();
        assert!((&w0 * &w0).is_identity());
    }

    #[test]
    fn bruhat_examples() {
        let g = a(2);
        let sa = g.parse_element("sa").unwrap();
        let sb = g.parse_element("sb").unwrap();
        let sasb = g.parse_element("sa*sb").unwrap();
        assert!(!sa.bruhat_leq(&sb).unwrap());
        assert!(sa.bruhat_leq(&sasb).unwrap());
        for w in g.elements() {
            assert!(g.identity().bruhat_leq(w).unwrap());
        }
    }

    #[test]
    fn demazure_examples() {
        let g = a(2);
        let sa = g.parse_element("sa").unwrap();
        let sb = g.parse_element("sb").unwrap();
        assert_eq!(sa.demazure(&sa).unwrap(), sa);
        assert_eq!(sa.demazure(&sb).unwrap(), g.parse_element("sa*sb").unwrap());
        assert_eq!(sa.demazure(&g.identity()).unwrap(), sa);
    }

    #[test]
    fn coset_representatives() {
        let g = a(2);
        assert_eq!(g.minimal_coset_reps(&LeviSubset::full(2)).unwrap(), vec![g.identity()]);
        assert_eq!(g.minimal_coset_reps(&LeviSubset::borel(2)).unwrap().len(), 6);
        let levi = LeviSubset::new(2, [0]).unwrap();
        assert_eq!(g.minimal_coset_reps(&levi).unwrap().len(), 3);
        let full = LeviSubset::full(2);
        assert_eq!(g.max_double_coset_rep(&full, &full, &g.identity()).unwrap(), g.w0());
        assert!(LeviSubset::new(2, [2]).is_err());
    }

    #[test]
    fn words_and_support() {
        let g = a(2);
        assert_eq!(g.w0().reduced_words(), vec![vec![0, 1, 0], vec![1, 0, 1]]);
        assert!(g.identity().support().is_empty());
        assert_eq!(g.parse_element("sa*sb").unwrap().support(), BTreeSet::from([0, 1]));
    }

    #[test]
    fn parse_and_format() {
        let g = a(4);
        let w = g.parse_element("sa*sb").unwrap();
        assert_eq!(w.to_string(), "sa*sb");
        assert_eq!(g.parse_element("s1*s2").unwrap(), w);
        assert_eq!(g.parse_element("a,b").unwrap(), w);
        assert_eq!(g.parse_element("e").unwrap().to_string(), "e");
        assert_eq!(g.parse_element("sb*sa*sb").unwrap().to_string(), "sa*sb*sa");
        assert!(g.parse_element("sz").is_err());
        assert!(g.parse_element("s5").is_err());
    }

    #[test]
    fn mismatched_systems() {
        let x = a(2).identity();
        let y = a(3).identity();
        assert_eq!(x.compose(&y).unwrap_err(), CoreError::SystemMismatch);
        assert!(x.bruhat_leq(&y).is_err());
    }
}
