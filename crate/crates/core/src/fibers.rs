//! Infinitesimal structure of fibers of BSDH projections, read off from roots.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{CoreError, Result};
use crate::parabolic::WenzelDatum;
use crate::rootsys::{Root, RootSystem};
use crate::weyl::{LeviSubset, WeylElement, WeylGroup};

/// A word `(w_1, …, w_r)` of longest double-coset representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsdhWord {
    datum: WenzelDatum,
    entries: Vec<WeylElement>,
}

impl BsdhWord {
    /// Checks that every entry is already the longest representative of its double coset.
    pub fn new(datum: &WenzelDatum, entries: Vec<WeylElement>) -> Result<Self> {
        if entries.is_empty() {
            return Err(CoreError::InvalidWord("a BSDH word needs at least one entry".into()));
        }
        let group = datum.group();
        for w in &entries {
            group.check_element(w)?;
            if &group.to_w_i(datum.levi(), w)? != w {
                return Err(CoreError::InvalidWord(format!("{w} is not a longest double-coset representative")));
            }
        }
        Ok(BsdhWord { datum: datum.clone(), entries })
    }

    /// Replaces each entry by its longest double-coset representative.
    pub fn normalized(datum: &WenzelDatum, entries: Vec<WeylElement>) -> Result<Self> {
        let group = datum.group();
        let entries = entries.iter().map(|w| group.to_w_i(datum.levi(), w)).collect::<Result<Vec<_>>>()?;
        Self::new(datum, entries)
    }

    /// Parses comma-separated entries such as `"sa*sb, sd"`.
    pub fn parse(datum: &WenzelDatum, text: &str) -> Result<Self> {
        let group = datum.group();
        let entries =
            text.split(',').map(|part| group.parse_element(part.trim())).collect::<Result<Vec<_>>>()?;
        Self::new(datum, entries)
    }

    pub fn datum(&self) -> &WenzelDatum {
        &self.datum
    }

    pub fn entries(&self) -> &[WeylElement] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> &WeylElement {
        &self.entries[0]
    }
}

impl fmt::Display for BsdhWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exactness {
    Exact,
    TangentHeuristic,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::Exact => "exact",
            Exactness::TangentHeuristic => "tangent-heuristic",
        })
    }
}

/// A thickening direction `root` of order `p^exponent`, translated from `source ∈ J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    pub root: Root,
    pub exponent: u32,
    pub source: Root,
    /// Set when the translated root lies in `J` again with a smaller exponent.
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThickeningReport {
    pub directions: Vec<Direction>,
    pub exactness: Exactness,
    pub residual_word: Vec<WeylElement>,
}

impl ThickeningReport {
    fn new(mut directions: Vec<Direction>, exactness: Exactness, residual_word: Vec<WeylElement>) -> Self {
        directions.sort();
        ThickeningReport { directions, exactness, residual_word }
    }

    pub fn is_reduced(&self) -> bool {
        self.directions.is_empty()
    }

    /// `(root, exponent)` pairs.
    pub fn pairs(&self) -> Vec<(Root, u32)> {
        self.directions.iter().map(|d| (d.root, d.exponent)).collect()
    }

    /// `(formatted root, exponent)` pairs.
    pub fn named_pairs(&self, sys: &RootSystem) -> Vec<(String, u32)> {
        self.directions.iter().map(|d| (sys.format_root(d.root), d.exponent)).collect()
    }
}

fn require_borel(datum: &WenzelDatum) -> Result<()> {
    if datum.is_borel() {
        Ok(())
    } else {
        Err(CoreError::NonBorel)
    }
}

/// `Σ (ℓ(w_i) − ℓ(w_{0,L}))`; equals `Σ ℓ(w_i)` when `P_red = B`.
pub fn dimension(word: &BsdhWord) -> Result<usize> {
    let group = word.datum.group();
    let offset = group.longest_element(word.datum.levi())?.length();
    Ok(word.entries.iter().map(|w| w.length() - offset).sum())
}

/// `(w_1 ⋆ ⋯ ⋆ w_r)''`.
pub fn geometric_star(word: &BsdhWord) -> Result<WeylElement> {
    let group = word.datum.group();
    group.to_w_i(word.datum.levi(), &group.demazure_all(&word.entries)?)
}

/// Whether `w(β)` is a root of `P_red`.
fn in_p_red(sys: &RootSystem, levi: &LeviSubset, r: Root) -> bool {
    sys.is_positive(r) || levi.contains_root(sys, r)
}

/// Fiber of `p_1` over a general point of the open cell of `X(w_1)`: the
/// directions `β ∈ J` with `w_1(β)` a root of `P_red`.
pub fn first_projection_generic_fiber(word: &BsdhWord) -> ThickeningReport {
    let datum = &word.datum;
    let sys = datum.system();
    let w1 = word.first();
    let directions = datum
        .j()
        .filter(|&(beta, _)| in_p_red(sys, datum.levi(), w1.act(beta)))
        .map(|(beta, n)| Direction { root: beta, exponent: n, source: beta, flagged: false })
        .collect();
    ThickeningReport::new(directions, Exactness::Exact, word.entries[1..].to_vec())
}

/// Choices along a reduced word: `true` where the letter is used.
fn distinguished_subexpressions(group: &WeylGroup, letters: &[usize], v: &WeylElement) -> Vec<Vec<bool>> {
    fn go(
        letters: &[usize],
        pos: usize,
        cur: WeylElement,
        target: &WeylElement,
        choice: &mut Vec<bool>,
        out: &mut Vec<Vec<bool>>,
    ) {
        if pos == letters.len() {
            if &cur == target {
                out.push(choice.clone());
            }
            return;
        }
        let s = letters[pos];
        let descends = cur.has_right_descent(s);
        choice.push(true);
        go(letters, pos + 1, cur.right_mul_simple(s), target, choice, out);
        choice.pop();
        // skipping is allowed only where the letter would go up
        if !descends {
            choice.push(false);
            go(letters, pos + 1, cur, target, choice, out);
            choice.pop();
        }
    }
    let mut out = Vec::new();
    go(letters, 0, group.identity(), v, &mut Vec::new(), &mut out);
    out
}

/// Slice directions of one subexpression: for each skipped position `j`,
/// `u^{-1}(−α_j)` with `u` the product of the used letters right of `j`.
fn slice_directions(group: &WeylGroup, letters: &[usize], used: &[bool]) -> Vec<Root> {
    let sys = group.system();
    let mut out = Vec::new();
    for j in 0..letters.len() {
        if used[j] {
            continue;
        }
        let mut u_inv = group.identity();
        for k in (j + 1..letters.len()).rev().filter(|&k| used[k]) {
            u_inv = u_inv.right_mul_simple(letters[k]);
        }
        out.push(u_inv.act(sys.negate(Root(letters[j] as u32))));
    }
    out
}

/// Local direction set at the fixed point `v` of `X(w_1)`, and whether it is exact.
///
/// The directions are the `δ < 0` whose T-stable curve through `vB` stays in
/// `X(w_1)`, i.e. `v s_δ ≤ w_1`. The report is exact when `v` has a unique
/// distinguished subexpression in the normal word of `w_1` whose cell and
/// slice directions are pairwise distinct and reproduce that set.
pub fn fixed_point_directions(group: &WeylGroup, w1: &WeylElement, v: &WeylElement) -> Result<(BTreeSet<Root>, Exactness)> {
    let sys = group.system();
    if !v.bruhat_leq(w1)? {
        return Err(CoreError::NotBruhatBelow { v: v.to_string(), w: w1.to_string() });
    }
    let mut curves = BTreeSet::new();
    for delta in sys.negative_roots() {
        let reflection = reflection_of(group, delta);
        if (v * &reflection).bruhat_leq(w1)? {
            curves.insert(delta);
        }
    }
    let cell: BTreeSet<Root> = sys.negative_roots().filter(|&b| sys.is_positive(v.act(b))).collect();
    let letters = w1.normal_word();
    let subexpressions = distinguished_subexpressions(group, &letters, v);
    let exact = match &subexpressions[..] {
        [used] => {
            let slice = slice_directions(group, &letters, used);
            let mut deodhar = cell.clone();
            deodhar.extend(slice.iter().copied());
            deodhar.len() == cell.len() + slice.len() && deodhar == curves
        }
        _ => false,
    };
    let exactness = if exact { Exactness::Exact } else { Exactness::TangentHeuristic };
    Ok((curves, exactness))
}

/// `s_δ` as a group element: conjugate a simple reflection onto `δ`.
fn reflection_of(group: &WeylGroup, delta: Root) -> WeylElement {
    let sys = group.system();
    let mut root = if sys.is_positive(delta) { delta } else { sys.negate(delta) };
    let mut path = Vec::new();
    while sys.is_simple(root).is_none() {
        let i = (0..sys.rank()).find(|&i| sys.pairing_fast(root, i) > 0).expect("non-simple positive root");
        root = sys.reflect_fast(root, i);
        path.push(i);
    }
    // s_δ = u s_i u^{-1} with u = s_{path[0]} ⋯ s_{path[k]}
    let mut word = path.clone();
    word.push(root.index());
    word.extend(path.iter().rev());
    group.from_word(&word).expect("valid simple indices")
}

/// Fiber of `p_1` over the torus-fixed point `vP` with `v ≤ w_1`.
pub fn first_projection_fixed_point_fiber(word: &BsdhWord, v: &WeylElement) -> Result<ThickeningReport> {
    let datum = &word.datum;
    require_borel(datum)?;
    let group = datum.group();
    group.check_element(v)?;
    let (local, exactness) = fixed_point_directions(group, word.first(), v)?;
    let directions = datum
        .j()
        .filter(|(beta, _)| local.contains(beta))
        .map(|(beta, n)| Direction { root: beta, exponent: n, source: beta, flagged: false })
        .collect();
    Ok(ThickeningReport::new(directions, exactness, word.entries[1..].to_vec()))
}

/// Fixed-point fibers at every `v ≤ w_1`, in the group's element order.
pub fn fixed_point_table(word: &BsdhWord) -> Result<Vec<(WeylElement, ThickeningReport)>> {
    let group = word.datum.group();
    let mut out = Vec::new();
    for v in group.elements() {
        if v.bruhat_leq(word.first())? {
            out.push((v.clone(), first_projection_fixed_point_fiber(word, v)?));
        }
    }
    Ok(out)
}

fn require_reduced_concatenation(word: &BsdhWord) -> Result<WeylElement> {
    let group = word.datum.group();
    let mut product = group.identity();
    for w in &word.entries {
        product = &product * w;
    }
    let sum: usize = word.entries.iter().map(WeylElement::length).sum();
    if product.length() != sum {
        return Err(CoreError::NonReducedConcatenation { product: product.length(), sum });
    }
    Ok(product)
}

/// Thickenings in coordinates `1, …, r−1` of the fiber of `p_r` over a general
/// point of `X(w_1⋯w_r)`.
pub fn last_projection_generic_fiber(word: &BsdhWord) -> Result<Vec<ThickeningReport>> {
    let datum = &word.datum;
    require_borel(datum)?;
    let w = require_reduced_concatenation(word)?;
    let sys = datum.system();
    let mut reports = Vec::new();
    let mut prefix = datum.group().identity();
    for wi in &word.entries[..word.len() - 1] {
        prefix = &prefix * wi;
        let prefix_inv = prefix.inverse();
        let mut directions = Vec::new();
        for (beta, n) in datum.j() {
            let image = w.act(beta);
            if !sys.is_positive(image) {
                continue;
            }
            let delta = prefix_inv.act(image);
            if sys.is_positive(delta) {
                continue;
            }
            match datum.exponent(delta) {
                None => directions.push(Direction { root: delta, exponent: n, source: beta, flagged: false }),
                Some(m) if n > m => directions.push(Direction { root: delta, exponent: n, source: beta, flagged: true }),
                Some(_) => {}
            }
        }
        let exactness =
            if directions.iter().any(|d| d.flagged) { Exactness::TangentHeuristic } else { Exactness::Exact };
        reports.push(ThickeningReport::new(directions, exactness, Vec::new()));
    }
    Ok(reports)
}

pub fn is_last_projection_birational(word: &BsdhWord) -> Result<bool> {
    Ok(last_projection_generic_fiber(word)?.iter().all(ThickeningReport::is_reduced))
}

/// Infinitesimal directions of the cell `PwP/P` at `wP`.
pub fn schubert_cell_thickening(datum: &WenzelDatum, w: &WeylElement) -> Result<ThickeningReport> {
    require_borel(datum)?;
    datum.group().check_element(w)?;
    let sys = datum.system();
    let w_inv = w.inverse();
    let directions = datum
        .j()
        .filter_map(|(beta, n)| {
            let delta = w_inv.act(beta);
            (!sys.is_positive(delta) && !datum.contains(delta))
                .then_some(Direction { root: delta, exponent: n, source: beta, flagged: false })
        })
        .collect();
    Ok(ThickeningReport::new(directions, Exactness::Exact, Vec::new()))
}

fn check_q_levi(datum: &WenzelDatum, levi_q: &LeviSubset) -> Result<()> {
    if datum.levi().is_subset(levi_q) {
        Ok(())
    } else {
        Err(CoreError::InvalidLevi("the Levi of P must be contained in the Levi of Q".into()))
    }
}

/// `w0_Q ⋆ w = w`.
pub fn is_q_type(datum: &WenzelDatum, levi_q: &LeviSubset, w: &WeylElement) -> Result<bool> {
    check_q_levi(datum, levi_q)?;
    let w0_q = datum.group().longest_element(levi_q)?;
    Ok(&w0_q.demazure(w)? == w)
}

/// Grouped products `w''_{i_{k−1}+1} ⋆ ⋯ ⋆ w''_{i_k}` of the images in `W_Q`;
/// `theta` lists the 1-based group ends `i_1 < ⋯ < i_s ≤ r`.
pub fn convolution_targets(
    datum: &WenzelDatum,
    levi_q: &LeviSubset,
    theta: &[usize],
    word: &BsdhWord,
) -> Result<Vec<WeylElement>> {
    check_q_levi(datum, levi_q)?;
    if theta.is_empty() {
        return Err(CoreError::MalformedGrouping("empty grouping".into()));
    }
    if theta[0] == 0 || theta.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CoreError::MalformedGrouping(format!("{theta:?} is not strictly increasing from 1")));
    }
    if *theta.last().unwrap() > word.len() {
        return Err(CoreError::MalformedGrouping(format!("{theta:?} exceeds the word length {}", word.len())));
    }
    let group = datum.group();
    let images = word.entries.iter().map(|w| group.to_w_i(levi_q, w)).collect::<Result<Vec<_>>>()?;
    let mut start = 0;
    let mut out = Vec::new();
    for &end in theta {
        let product = group.demazure_all(&images[start..end])?;
        out.push(group.to_w_i(levi_q, &product)?);
        start = end;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::Validation;

    fn datum(system: &str, j: &[&str]) -> WenzelDatum {
        let g = WeylGroup::from_name(system).unwrap();
        let sys = g.system().clone();
        let j: Vec<(Root, u32)> = j.iter().map(|s| (sys.parse_root(s).unwrap(), 1)).collect();
        WenzelDatum::from_explicit(&g, LeviSubset::borel(sys.rank()), &j, 2, Validation::Permissive).unwrap()
    }

    fn names(d: &WenzelDatum, r: &ThickeningReport) -> Vec<(String, u32)> {
        r.named_pairs(d.system())
    }

    #[test]
    fn dimensions() {
        let d = datum("A2", &["-a"]);
        assert_eq!(dimension(&BsdhWord::parse(&d, "e").unwrap()).unwrap(), 0);
        assert_eq!(dimension(&BsdhWord::parse(&d, "sa*sb, sb").unwrap()).unwrap(), 3);
        let d4 = datum("A4", &["-a"]);
        assert_eq!(dimension(&BsdhWord::parse(&d4, "sa*sb, sd").unwrap()).unwrap(), 3);
    }

    #[test]
    fn stars() {
        let d = datum("A2", &[]);
        let g = d.group();
        assert_eq!(geometric_star(&BsdhWord::parse(&d, "sb, sa, sb").unwrap()).unwrap(), g.w0());
        let sa = g.parse_element("sa").unwrap();
        assert_eq!(geometric_star(&BsdhWord::parse(&d, "sa, sa").unwrap()).unwrap(), sa);
        assert_eq!(geometric_star(&BsdhWord::parse(&d, "sa").unwrap()).unwrap(), sa);
    }

    #[test]
    fn generic_first_fibers() {
        let beta = datum("A4", &["-b"]);
        let r = first_projection_generic_fiber(&BsdhWord::parse(&beta, "sa*sb, sd").unwrap());
        assert_eq!(names(&beta, &r), [("-b".to_string(), 1)]);
        assert_eq!(r.residual_word, vec![beta.group().parse_element("sd").unwrap()]);
        let alpha = datum("A4", &["-a"]);
        assert!(first_projection_generic_fiber(&BsdhWord::parse(&alpha, "sa*sb, sd").unwrap()).is_reduced());
        assert!(first_projection_generic_fiber(&BsdhWord::parse(&alpha, "e, sd").unwrap()).is_reduced());
    }

    #[test]
    fn fixed_point_fibers_alpha() {
        let d = datum("A4", &["-a"]);
        let word = BsdhWord::parse(&d, "sa*sb, sd").unwrap();
        let g = d.group();
        for (v, expect) in [("e", true), ("sa", true), ("sb", false), ("sa*sb", false)] {
            let r = first_projection_fixed_point_fiber(&word, &g.parse_element(v).unwrap()).unwrap();
            assert_eq!(r.exactness, Exactness::Exact, "{v}");
            if expect {
                assert_eq!(names(&d, &r), [("-a".to_string(), 1)], "{v}");
            } else {
                assert!(r.is_reduced(), "{v}");
            }
        }
    }

    #[test]
    fn fixed_point_fibers_beta() {
        let d = datum("A4", &["-b"]);
        let word = BsdhWord::parse(&d, "sa*sb, sd").unwrap();
        let table = fixed_point_table(&word).unwrap();
        assert_eq!(table.len(), 4);
        for (_, r) in &table {
            assert_eq!(names(&d, r), [("-b".to_string(), 1)]);
        }
    }

    #[test]
    fn reflections_of_roots() {
        let g = WeylGroup::from_name("A3").unwrap();
        let sys = g.system();
        for r in sys.roots() {
            let s = reflection_of(&g, r);
            assert_eq!(s.act(r), sys.negate(r));
            assert!((&s * &s).is_identity());
            assert_eq!(s.length() % 2, 1);
        }
    }

    #[test]
    fn fixed_point_requires_bruhat_below() {
        let d = datum("A4", &["-b"]);
        let word = BsdhWord::parse(&d, "sa*sb, sd").unwrap();
        let sc = d.group().parse_element("sc").unwrap();
        assert!(matches!(first_projection_fixed_point_fiber(&word, &sc), Err(CoreError::NotBruhatBelow { .. })));
    }

    #[test]
    fn repeated_letters_degrade_exactness() {
        let d = datum("A2", &["-a"]);
        let g = d.group();
        let (dirs, ex) = fixed_point_directions(g, &g.w0(), &g.parse_element("sa").unwrap()).unwrap();
        assert_eq!(ex, Exactness::TangentHeuristic);
        assert_eq!(dirs.len(), 3);
        let (dirs, ex) = fixed_point_directions(g, &g.w0(), &g.identity()).unwrap();
        assert_eq!(ex, Exactness::TangentHeuristic);
        assert_eq!(dirs.len(), 3);
    }

    #[test]
    fn last_projection_example() {
        let d = datum("A2", &["-a"]);
        let word = BsdhWord::parse(&d, "sb, sa, sb").unwrap();
        let reports = last_projection_generic_fiber(&word).unwrap();
        assert_eq!(reports.len(), 2);
        assert_eq!(names(&d, &reports[0]), [("-b".to_string(), 1)]);
        assert_eq!(names(&d, &reports[1]), [("-a-b".to_string(), 1)]);
        assert!(!is_last_projection_birational(&word).unwrap());
        assert!(last_projection_generic_fiber(&BsdhWord::parse(&d, "sb").unwrap()).unwrap().is_empty());
        assert!(is_last_projection_birational(&BsdhWord::parse(&d, "sb").unwrap()).unwrap());
        let bad = BsdhWord::parse(&d, "sb, sb").unwrap();
        assert!(matches!(last_projection_generic_fiber(&bad), Err(CoreError::NonReducedConcatenation { .. })));
        let reduced = datum("A2", &[]);
        assert!(is_last_projection_birational(&BsdhWord::parse(&reduced, "sb, sa, sb").unwrap()).unwrap());
    }

    #[test]
    fn cell_thickening() {
        let d = datum("A4", &["-b"]);
        let g = d.group();
        let r = schubert_cell_thickening(&d, &g.parse_element("sa").unwrap()).unwrap();
        assert_eq!(names(&d, &r), [("-a-b".to_string(), 1)]);
        assert!(schubert_cell_thickening(&d, &g.identity()).unwrap().is_reduced());
    }

    #[test]
    fn q_type_examples() {
        let d = datum("A2", &[]);
        let g = d.group();
        let q = LeviSubset::new(2, [0]).unwrap();
        assert!(is_q_type(&d, &q, &g.parse_element("sa").unwrap()).unwrap());
        assert!(!is_q_type(&d, &q, &g.parse_element("sb").unwrap()).unwrap());
        for w in g.elements() {
            assert!(is_q_type(&d, d.levi(), w).unwrap());
        }
        let word = BsdhWord::parse(&d, "sb, sa, sb").unwrap();
        assert_eq!(convolution_targets(&d, d.levi(), &[3], &word).unwrap(), vec![geometric_star(&word).unwrap()]);
        assert_eq!(convolution_targets(&d, d.levi(), &[1, 3], &word).unwrap().len(), 2);
        assert!(convolution_targets(&d, d.levi(), &[2, 2], &word).is_err());
        assert!(convolution_targets(&d, d.levi(), &[4], &word).is_err());
    }

    #[test]
    fn words_must_be_normalized() {
        let g = WeylGroup::from_name("A2").unwrap();
        let d = WenzelDatum::reduced(&g, LeviSubset::new(2, [0]).unwrap(), 2).unwrap();
        assert!(BsdhWord::parse(&d, "sb").is_err());
        let w = BsdhWord::normalized(&d, vec![g.parse_element("sb").unwrap()]).unwrap();
        assert_eq!(w.first().to_string(), "sa*sb*sa");
        assert_eq!(dimension(&w).unwrap(), 2);
    }
}
