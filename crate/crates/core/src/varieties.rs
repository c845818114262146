//! Incidence varieties in `P^n × P̌^n`, their Schubert subvarieties, and
//! certificates computed from explicit equations.

use std::fmt;

use vuf_algebra::field::prime_power;
use vuf_algebra::jacobian::{jacobian, minors};
use vuf_algebra::{groebner_basis, projective_point_count, AlgebraError, GaloisField, PolyRing, Polynomial};

use crate::chow::{poincare_polynomial, QPolynomial};
use crate::error::{CoreError, Result};
use crate::weyl::{LeviSubset, WeylGroup};

/// Multi-homogeneous generators in a product of projective spaces over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveIdealPresentation {
    ring: PolyRing,
    blocks: Vec<Vec<usize>>,
    generators: Vec<Polynomial>,
    label: String,
}

impl ProjectiveIdealPresentation {
    /// `blocks` lists the variables of each projective factor and must
    /// partition the variables of `ring`.
    pub fn new(ring: PolyRing, blocks: Vec<Vec<usize>>, generators: Vec<Polynomial>, label: impl Into<String>) -> Result<Self> {
        let mut seen = vec![false; ring.nvars()];
        for &i in blocks.iter().flatten() {
            if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
                return Err(CoreError::BadIndices("variable blocks must partition the ring variables".into()));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(CoreError::BadIndices("variable blocks must partition the ring variables".into()));
        }
        for g in &generators {
            if g.ring() != &ring {
                return Err(AlgebraError::RingMismatch.into());
            }
            if g.is_zero() || blocks.iter().any(|b| g.homogeneous_degree_in(b).is_none()) {
                return Err(CoreError::InvalidDatum(format!("{g} is not multi-homogeneous")));
            }
        }
        Ok(ProjectiveIdealPresentation { ring, blocks, generators, label: label.into() })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn characteristic(&self) -> u64 {
        self.ring.field().characteristic()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Dimensions of the projective factors.
    pub fn ambient(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len() - 1).collect()
    }

    /// The same generators with the variables renamed in order.
    pub fn renamed(&self, names: &[&str]) -> Result<Self> {
        if names.len() != self.ring.nvars() {
            return Err(CoreError::BadIndices(format!("expected {} names", self.ring.nvars())));
        }
        let ring = PolyRing::new(self.ring.field().clone(), names.iter().copied());
        let map: Vec<Option<usize>> = (0..names.len()).map(Some).collect();
        let generators = self.generators.iter().map(|g| g.map_into(&ring, &map)).collect::<std::result::Result<_, _>>()?;
        Ok(ProjectiveIdealPresentation { ring, blocks: self.blocks.clone(), generators, label: self.label.clone() })
    }

    /// Whether both presentations generate the same ideal in the same ring.
    pub fn same_ideal(&self, other: &Self) -> Result<bool> {
        if self.ring != other.ring || self.blocks != other.blocks {
            return Ok(false);
        }
        Ok(groebner_basis(&self.generators)? == groebner_basis(&other.generators)?)
    }

    /// All charts: one variable from each block.
    pub fn charts(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for block in &self.blocks {
            out = out.into_iter().flat_map(|c| block.iter().map(move |&v| [c.clone(), vec![v]].concat())).collect();
        }
        out
    }

    /// The dehomogenized ideal on the chart where the given variables equal one.
    pub fn chart_ideal(&self, chart: &[usize]) -> Result<(PolyRing, Vec<Polynomial>)> {
        if chart.len() != self.blocks.len() || chart.iter().zip(&self.blocks).any(|(v, b)| !b.contains(v)) {
            return Err(CoreError::BadIndices(format!("chart {chart:?} must pick one variable per block")));
        }
        let names = self.ring.var_names();
        let mut map = vec![None; names.len()];
        let mut kept = Vec::new();
        for (i, name) in names.iter().enumerate() {
            if !chart.contains(&i) {
                map[i] = Some(kept.len());
                kept.push(name.clone());
            }
        }
        let ring = PolyRing::new(self.ring.field().clone(), kept);
        let one = self.ring.field().one();
        let mut gens = Vec::new();
        for g in &self.generators {
            let mut h = g.clone();
            for &v in chart {
                h = h.substitute(v, one);
            }
            let h = h.map_into(&ring, &map)?;
            if !h.is_zero() {
                gens.push(h);
            }
        }
        Ok((ring, gens))
    }

    pub fn chart_names(&self, chart: &[usize]) -> Vec<String> {
        chart.iter().map(|&v| self.ring.var_names()[v].clone()).collect()
    }

    pub fn chart_by_names(&self, names: &[&str]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| self.ring.var_index(n).ok_or_else(|| CoreError::BadIndices(format!("unknown variable {n}"))))
            .collect()
    }

    /// Number of `F_q`-points.
    pub fn point_count(&self, q: u64, budget: u128) -> Result<u64> {
        let field = field_for(q, self.characteristic())?;
        Ok(projective_point_count(&self.generators, &self.blocks, &field, budget)?)
    }
}

impl fmt::Display for ProjectiveIdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

fn field_for(q: u64, p: u64) -> Result<GaloisField> {
    let (qp, k) = prime_power(q).ok_or_else(|| CoreError::InvalidDatum(format!("{q} is not a prime power")))?;
    if qp != p {
        return Err(AlgebraError::CharacteristicMismatch { expected: p, got: qp }.into());
    }
    Ok(GaloisField::new(p, k)?)
}

fn prime_field(p: u64) -> Result<GaloisField> {
    GaloisField::prime(p).map_err(|_| CoreError::NotPrime(p))
}

/// `Σ_{i} x_i y_i^e` over `i = 1..n+1`, with variable prefixes `x`, `y`.
pub fn incidence_form(n: usize, p: u64, exponent: u32, prefixes: (&str, &str)) -> Result<ProjectiveIdealPresentation> {
    if n == 0 {
        return Err(CoreError::BadIndices("n must be at least 1".into()));
    }
    if exponent == 0 {
        return Err(CoreError::BadIndices("exponent must be positive".into()));
    }
    let field = prime_field(p)?;
    let m = n + 1;
    let names: Vec<String> = (1..=m)
        .map(|i| format!("{}{i}", prefixes.0))
        .chain((1..=m).map(|i| format!("{}{i}", prefixes.1)))
        .collect();
    let ring = PolyRing::new(field, names);
    let mut f = ring.zero();
    for i in 0..m {
        f = &f + &(&ring.var(i) * &ring.var(m + i).pow(exponent));
    }
    let label = format!("incidence_form(n={n}, p={p}, e={exponent})");
    ProjectiveIdealPresentation::new(ring, vec![(0..m).collect(), (m..2 * m).collect()], vec![f], label)
}

/// `Σ x_i y_i = 0` in `P^n × P̌^n`.
pub fn incidence(n: usize, p: u64) -> Result<ProjectiveIdealPresentation> {
    let mut pres = incidence_form(n, p, 1, ("x", "y"))?;
    pres.label = format!("incidence(n={n}, p={p})");
    Ok(pres)
}

/// `Σ z_i w_i^p = 0` in `P^n × P̌^n`.
pub fn twisted_incidence(n: usize, p: u64) -> Result<ProjectiveIdealPresentation> {
    let exponent = u32::try_from(p).map_err(|_| CoreError::NotPrime(p))?;
    let mut pres = incidence_form(n, p, exponent, ("z", "w"))?;
    pres.label = format!("twisted_incidence(n={n}, p={p})");
    Ok(pres)
}

/// `I_{i,j}`: `z_{i+1} = ⋯ = z_{n+1} = w_1 = ⋯ = w_{j−1} = 0` together with
/// what remains of the incidence form. 1-based indices.
pub fn schubert_ideal(n: usize, p: u64, i: usize, j: usize, twisted: bool) -> Result<ProjectiveIdealPresentation> {
    let m = n + 1;
    if !(1..=m).contains(&i) || !(1..=m).contains(&j) || i == j {
        return Err(CoreError::BadIndices(format!("need 1 <= i, j <= {m} and i != j, got ({i}, {j})")));
    }
    let ambient = if twisted { twisted_incidence(n, p)? } else { incidence(n, p)? };
    let ring = ambient.ring.clone();
    let exponent = if twisted { u32::try_from(p).map_err(|_| CoreError::NotPrime(p))? } else { 1 };
    let mut hyper = ring.zero();
    for k in j..=i {
        hyper = &hyper + &(&ring.var(k - 1) * &ring.var(m + k - 1).pow(exponent));
    }
    let mut generators = Vec::new();
    if !hyper.is_zero() {
        generators.push(hyper);
    }
    generators.extend((i + 1..=m).map(|k| ring.var(k - 1)));
    generators.extend((1..j).map(|k| ring.var(m + k - 1)));
    let label = format!("schubert_ideal(n={n}, p={p}, i={i}, j={j}, twisted={twisted})");
    ProjectiveIdealPresentation::new(ring, ambient.blocks, generators, label)
}

/// Dimension of the variety of [`schubert_ideal`].
pub fn schubert_dimension(n: usize, i: usize, j: usize) -> usize {
    let base = (i - 1) + (n + 1 - j);
    if i > j {
        base - 1
    } else {
        base
    }
}

/// The `n`-dimensional Schubert variety with chart ideal
/// `<z2 w2^p + z3 w3^p, w1, z4, …>` at `z1 = w_{n+1} = 1`; its singular locus
/// has codimension one.
pub fn nonnormal_schubert(n: usize, p: u64) -> Result<ProjectiveIdealPresentation> {
    if n < 2 {
        return Err(CoreError::BadIndices("n must be at least 2".into()));
    }
    schubert_ideal(n, p, 3, 2, true)
}

/// `<a^p x + b^p y, z>` in `P^2(x, y, z) × P̌^2(a, b, c)`.
pub fn bsdh_sl3(p: u64) -> Result<ProjectiveIdealPresentation> {
    let exponent = u32::try_from(p).map_err(|_| CoreError::NotPrime(p))?;
    let ring = PolyRing::new(prime_field(p)?, ["x", "y", "z", "a", "b", "c"]);
    let f = &(&ring.var(3).pow(exponent) * &ring.var(0)) + &(&ring.var(4).pow(exponent) * &ring.var(1));
    let generators = vec![f, ring.var(2)];
    ProjectiveIdealPresentation::new(ring, vec![vec![0, 1, 2], vec![3, 4, 5]], generators, format!("bsdh_sl3(p={p})"))
}

/// Codimension of the singular locus; `Infinite` when it is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Codimension {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Codimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Codimension::Finite(c) => write!(f, "{c}"),
            Codimension::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartAnalysis {
    pub chart: Vec<usize>,
    pub variety_dimension: i64,
    pub singular_dimension: i64,
    pub codimension: Codimension,
}

/// Jacobian-criterion analysis on one chart.
pub fn analyze_chart(pres: &ProjectiveIdealPresentation, chart: &[usize]) -> Result<ChartAnalysis> {
    let (ring, gens) = pres.chart_ideal(chart)?;
    if gens.is_empty() {
        // the whole affine chart: smooth
        return Ok(ChartAnalysis {
            chart: chart.to_vec(),
            variety_dimension: ring.nvars() as i64,
            singular_dimension: -1,
            codimension: Codimension::Infinite,
        });
    }
    let variety = groebner_basis(&gens)?;
    let dim_v = variety.dimension();
    if dim_v < 0 {
        return Err(CoreError::BadIndices(format!("the variety does not meet the chart {:?}", pres.chart_names(chart))));
    }
    let c = ring.nvars() - dim_v as usize;
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    let mut singular = gens.clone();
    singular.extend(minors(&jacobian(&gens, &vars), c));
    let dim_s = groebner_basis(&singular)?.dimension();
    let codimension = if dim_s < 0 { Codimension::Infinite } else { Codimension::Finite((dim_v - dim_s) as u64) };
    Ok(ChartAnalysis { chart: chart.to_vec(), variety_dimension: dim_v, singular_dimension: dim_s, codimension })
}

pub fn singular_codimension(pres: &ProjectiveIdealPresentation, chart: &[usize]) -> Result<Codimension> {
    Ok(analyze_chart(pres, chart)?.codimension)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalityVerdict {
    NotNormal,
    Inconclusive,
}

impl fmt::Display for NormalityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormalityVerdict::NotNormal => "not normal",
            NormalityVerdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalityCertificate {
    pub verdict: NormalityVerdict,
    pub min_codimension: Codimension,
    /// Charts meeting the variety.
    pub charts: Vec<ChartAnalysis>,
}

/// Scans every chart; a singular locus of codimension one rules out normality.
pub fn non_normality_certificate(pres: &ProjectiveIdealPresentation) -> Result<NormalityCertificate> {
    let mut charts = Vec::new();
    for chart in pres.charts() {
        match analyze_chart(pres, &chart) {
            Ok(a) => charts.push(a),
            Err(CoreError::BadIndices(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let min_codimension = charts.iter().map(|a| a.codimension).min().unwrap_or(Codimension::Infinite);
    let verdict = if min_codimension == Codimension::Finite(1) {
        NormalityVerdict::NotNormal
    } else {
        NormalityVerdict::Inconclusive
    };
    Ok(NormalityCertificate { verdict, min_codimension, charts })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountComparison {
    pub q: u64,
    pub counted: u64,
    pub expected: u128,
}

impl CountComparison {
    pub fn matches(&self) -> bool {
        self.counted as u128 == self.expected
    }
}

/// Brute-force point counts against `expected(q)` for each `q`.
pub fn point_count_vs_paving(
    pres: &ProjectiveIdealPresentation,
    expected: &QPolynomial,
    qs: &[u64],
    budget: u128,
) -> Result<Vec<CountComparison>> {
    qs.iter()
        .map(|&q| Ok(CountComparison { q, counted: pres.point_count(q, budget)?, expected: expected.eval(q) }))
        .collect()
}

/// `SL_{n+1}` data whose `G/P` is the incidence variety in `P^n × P̌^n`:
/// type `A_n`, Levi generated by the inner simple roots.
pub fn incidence_levi(n: usize) -> Result<(WeylGroup, LeviSubset)> {
    let group = WeylGroup::from_name(&format!("A{n}"))?;
    let levi = LeviSubset::new(n, 1..n.saturating_sub(1))?;
    Ok((group, levi))
}

/// Poincaré polynomial of the incidence variety in `P^n × P̌^n`.
pub fn incidence_poincare(n: usize) -> Result<QPolynomial> {
    let (group, levi) = incidence_levi(n)?;
    poincare_polynomial(&group, &levi)
}
