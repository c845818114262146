//! Possibly nonreduced parabolic subgroups `P ⊃ B`, described by `(I, J, n)` and `p`.

use std::collections::BTreeMap;
use std::fmt;

use vuf_algebra::field::is_prime;

use crate::error::{CoreError, Result};
use crate::rootsys::{Root, RootSystem};
use crate::weyl::{LeviSubset, WeylGroup};

/// How [`WenzelDatum::from_explicit`] treats exponents that are not
/// consistent with the closure rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Validation {
    Strict,
    #[default]
    Permissive,
}

impl std::str::FromStr for Validation {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "strict" => Ok(Validation::Strict),
            "permissive" => Ok(Validation::Permissive),
            other => Err(CoreError::Parse(format!("unknown validation mode `{other}`"))),
        }
    }
}

/// Exponent of a simple direction in a profile; `None` is infinite.
pub type Exponent = Option<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WenzelDatum {
    group: WeylGroup,
    levi: LeviSubset,
    exponents: BTreeMap<Root, u32>,
    p: u64,
    warnings: Vec<String>,
}

impl WenzelDatum {
    /// The reduced parabolic `P_levi`.
    pub fn reduced(group: &WeylGroup, levi: LeviSubset, p: u64) -> Result<Self> {
        Self::from_explicit(group, levi, &[], p, Validation::Strict)
    }

    /// Closure of a profile on the negative simple roots, for `P_red = B`.
    ///
    /// `profile` maps a simple index `i` to the exponent of `−α_i`; missing
    /// entries are infinite. A negative root `β` lies in `J` when some simple
    /// `δ` of finite exponent occurs in `β` and pairs nontrivially with it;
    /// `n_β` is the least such exponent.
    pub fn from_profile(group: &WeylGroup, profile: &BTreeMap<usize, Exponent>, p: u64) -> Result<Self> {
        check_prime(p)?;
        let sys = group.system();
        for (&i, e) in profile {
            sys.check_index(i)?;
            if *e == Some(0) {
                return Err(CoreError::InvalidDatum(format!("exponent of -{} must be positive", sys.simple_name(i))));
            }
        }
        let finite: BTreeMap<usize, u32> = profile.iter().filter_map(|(&i, e)| e.map(|n| (i, n))).collect();
        let exponents = closure(sys, &finite);
        Ok(WenzelDatum { group: group.clone(), levi: LeviSubset::borel(sys.rank()), exponents, p, warnings: Vec::new() })
    }

    /// Stores `(J, n)` verbatim after checking `J ⊆ −I` and `n ≥ 1`.
    pub fn from_explicit(
        group: &WeylGroup,
        levi: LeviSubset,
        j: &[(Root, u32)],
        p: u64,
        validation: Validation,
    ) -> Result<Self> {
        check_prime(p)?;
        let sys = group.system();
        if levi.rank() != sys.rank() {
            return Err(CoreError::InvalidLevi(format!("subset for rank {} used with {}", levi.rank(), sys.kind())));
        }
        let mut exponents = BTreeMap::new();
        for &(beta, n) in j {
            let name = sys.format_root(beta);
            if !levi.in_radical(sys, sys.negate(beta)) {
                return Err(CoreError::InvalidDatum(format!("{name} is not in -I")));
            }
            if n == 0 {
                return Err(CoreError::InvalidDatum(format!("exponent of {name} must be positive")));
            }
            if exponents.insert(beta, n).is_some() {
                return Err(CoreError::InvalidDatum(format!("{name} listed twice")));
            }
        }
        let mut datum = WenzelDatum { group: group.clone(), levi, exponents, p, warnings: Vec::new() };
        let problems = datum.consistency_problems();
        if !problems.is_empty() {
            match validation {
                Validation::Strict => return Err(CoreError::InvalidDatum(problems.join("; "))),
                Validation::Permissive => datum.warnings = problems,
            }
        }
        Ok(datum)
    }

    /// Violations of `n_β = min{n_{−δ}}` over simple `δ` with `−δ ∈ J`, `δ` in
    /// the support of `β` and `⟨β^∨, δ⟩ ≠ 0`.
    pub fn consistency_problems(&self) -> Vec<String> {
        let sys = self.system();
        let simple: BTreeMap<usize, u32> = (0..sys.rank())
            .filter_map(|i| self.exponents.get(&sys.negate(Root(i as u32))).map(|&n| (i, n)))
            .collect();
        let mut out = Vec::new();
        for (&beta, &n) in &self.exponents {
            if let Some(m) = governing_exponent(sys, beta, &simple) {
                if m != n {
                    out.push(format!("n({}) = {n} but the simple profile forces {m}", sys.format_root(beta)));
                }
            }
        }
        out
    }

    /// The closure of this datum's simple profile (Borel case).
    pub fn func_closure(&self) -> Result<Self> {
        if !self.levi.is_borel() {
            return Err(CoreError::NonBorel);
        }
        Self::from_profile(&self.group, &self.simple_profile(), self.p)
    }

    /// Exponents of the negative simple roots in `J`.
    pub fn simple_profile(&self) -> BTreeMap<usize, Exponent> {
        let sys = self.system();
        (0..sys.rank()).map(|i| (i, self.exponents.get(&sys.negate(Root(i as u32))).copied())).collect()
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn system(&self) -> &RootSystem {
        self.group.system()
    }

    pub fn levi(&self) -> &LeviSubset {
        &self.levi
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn is_borel(&self) -> bool {
        self.levi.is_borel()
    }

    pub fn is_reduced(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `J` with exponents, in root order.
    pub fn j(&self) -> impl Iterator<Item = (Root, u32)> + '_ {
        self.exponents.iter().map(|(&r, &n)| (r, n))
    }

    pub fn exponent(&self, beta: Root) -> Option<u32> {
        self.exponents.get(&beta).copied()
    }

    pub fn contains(&self, beta: Root) -> bool {
        self.exponents.contains_key(&beta)
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `Σ_{β ∈ J} n_β`; the degree of `G/P_red → G/P` is `p` to this power.
    pub fn thickening_length(&self) -> u64 {
        self.exponents.values().map(|&n| n as u64).sum()
    }
}

impl fmt::Display for WenzelDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sys = self.system();
        let parts: Vec<String> =
            self.exponents.iter().map(|(&r, &n)| format!("{}:{}", sys.format_root(r), n)).collect();
        write!(f, "{} p={} J={{{}}}", sys.kind(), self.p, parts.join(","))
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CoreError::NotPrime(p))
    }
}

fn governing_exponent(sys: &RootSystem, beta: Root, simple: &BTreeMap<usize, u32>) -> Option<u32> {
    sys.support(beta)
        .filter_map(|i| simple.get(&i).map(|&n| (i, n)))
        .filter(|&(i, _)| sys.pairing_fast(beta, i) != 0)
        .map(|(_, n)| n)
        .min()
}

fn closure(sys: &RootSystem, simple: &BTreeMap<usize, u32>) -> BTreeMap<Root, u32> {
    sys.negative_roots().filter_map(|beta| governing_exponent(sys, beta, simple).map(|n| (beta, n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(d: &WenzelDatum) -> Vec<(String, u32)> {
        d.j().map(|(r, n)| (d.system().format_root(r), n)).collect()
    }

    #[test]
    fn profile_closure_a4() {
        let g = WeylGroup::from_name("A4").unwrap();
        let d = WenzelDatum::from_profile(&g, &BTreeMap::from([(1, Some(1))]), 2).unwrap();
        let mut got = names(&d);
        got.sort();
        let mut want: Vec<(String, u32)> =
            ["-b", "-a-b", "-b-c", "-b-c-d"].iter().map(|s| (s.to_string(), 1)).collect();
        want.sort();
        assert_eq!(got, want);
        assert!(d.consistency_problems().is_empty());
    }

    #[test]
    fn profile_closure_a2() {
        let g = WeylGroup::from_name("A2").unwrap();
        let d = WenzelDatum::from_profile(&g, &BTreeMap::from([(0, Some(2)), (1, Some(1))]), 3).unwrap();
        assert_eq!(names(&d), [("-a".to_string(), 2), ("-b".to_string(), 1), ("-a-b".to_string(), 1)]);
        assert_eq!(d.thickening_length(), 4);
    }

    #[test]
    fn infinite_profile_is_reduced() {
        let g = WeylGroup::from_name("A3").unwrap();
        let d = WenzelDatum::from_profile(&g, &BTreeMap::from([(0, None), (2, None)]), 5).unwrap();
        assert!(d.is_reduced());
        assert_eq!(d.thickening_length(), 0);
    }

    #[test]
    fn explicit_paper_data() {
        let g = WeylGroup::from_name("A4").unwrap();
        let sys = g.system();
        for name in ["-b", "-a"] {
            let r = sys.parse_root(name).unwrap();
            let d = WenzelDatum::from_explicit(&g, LeviSubset::borel(4), &[(r, 1)], 2, Validation::Strict).unwrap();
            assert_eq!(d.thickening_length(), 1);
            assert!(d.warnings().is_empty());
        }
    }

    #[test]
    fn explicit_rejects_bad_input() {
        let g = WeylGroup::from_name("A4").unwrap();
        let sys = g.system();
        let b = sys.parse_root("b").unwrap();
        let borel = LeviSubset::borel(4);
        assert!(WenzelDatum::from_explicit(&g, borel.clone(), &[(b, 1)], 2, Validation::Permissive).is_err());
        let nb = sys.negate(b);
        assert!(WenzelDatum::from_explicit(&g, borel.clone(), &[(nb, 0)], 2, Validation::Permissive).is_err());
        assert_eq!(
            WenzelDatum::from_explicit(&g, borel.clone(), &[(nb, 1)], 4, Validation::Permissive).unwrap_err(),
            CoreError::NotPrime(4)
        );
        // -b lies in the Levi when b is a Levi generator
        let levi = LeviSubset::new(4, [1]).unwrap();
        assert!(WenzelDatum::from_explicit(&g, levi, &[(nb, 1)], 2, Validation::Permissive).is_err());
    }

    #[test]
    fn strict_mode_checks_exponents() {
        let g = WeylGroup::from_name("A2").unwrap();
        let sys = g.system();
        let j = [(sys.parse_root("-b").unwrap(), 1), (sys.parse_root("-a-b").unwrap(), 2)];
        let borel = LeviSubset::borel(2);
        assert!(WenzelDatum::from_explicit(&g, borel.clone(), &j, 2, Validation::Strict).is_err());
        let d = WenzelDatum::from_explicit(&g, borel, &j, 2, Validation::Permissive).unwrap();
        assert_eq!(d.warnings().len(), 1);
        assert_eq!(d.func_closure().unwrap().thickening_length(), 2);
    }
}
