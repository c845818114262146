use std::collections::BTreeMap;

use proptest::prelude::*;
use vuf_core::chow::{poincare_polynomial, ChowTransfer};
use vuf_core::fibers::{
    first_projection_fixed_point_fiber, first_projection_generic_fiber, geometric_star, is_last_projection_birational,
    last_projection_generic_fiber, schubert_cell_thickening,
};
use vuf_core::{BsdhWord, Exponent, LeviSubset, Validation, WenzelDatum, WeylElement, WeylGroup};

fn profiles(rank: usize, values: &[Exponent]) -> Vec<BTreeMap<usize, Exponent>> {
    let mut out = vec![BTreeMap::new()];
    for i in 0..rank {
        out = out
            .into_iter()
            .flat_map(|m| {
                values.iter().map(move |&v| {
                    let mut m = m.clone();
                    m.insert(i, v);
                    m
                })
            })
            .collect();
    }
    out
}

/// Closures of simple profiles plus the explicit single-root data.
fn fixtures(name: &str) -> Vec<WenzelDatum> {
    let g = WeylGroup::from_name(name).unwrap();
    let values: &[Exponent] = if g.rank() <= 2 { &[None, Some(1), Some(2)] } else { &[None, Some(1)] };
    let mut out: Vec<WenzelDatum> =
        profiles(g.rank(), values).iter().map(|p| WenzelDatum::from_profile(&g, p, 2).unwrap()).collect();
    for i in 0..g.rank() {
        let r = g.system().negate(g.system().simple_root(i).unwrap());
        out.push(WenzelDatum::from_explicit(&g, LeviSubset::borel(g.rank()), &[(r, 1)], 2, Validation::Permissive).unwrap());
    }
    out
}

fn short_elements(g: &WeylGroup, max_len: usize) -> Vec<WeylElement> {
    g.elements().iter().filter(|w| w.length() <= max_len).cloned().collect()
}

#[test]
fn openness_of_reduced_fibers() {
    for name in ["A2", "A4"] {
        for datum in fixtures(name) {
            let g = datum.group();
            for w1 in short_elements(g, 3) {
                let word = BsdhWord::new(&datum, vec![w1.clone()]).unwrap();
                let generic = first_projection_generic_fiber(&word);
                for v in g.elements().iter().filter(|v| v.bruhat_leq(&w1).unwrap()) {
                    let fixed = first_projection_fixed_point_fiber(&word, v).unwrap();
                    if !generic.is_reduced() {
                        assert!(!fixed.is_reduced(), "{datum}: w1 = {w1}, v = {v}");
                    }
                }
                let at_top = first_projection_fixed_point_fiber(&word, &w1).unwrap();
                assert_eq!(at_top, generic, "{datum}: w1 = {w1}");
            }
        }
    }
}

#[test]
fn reduced_data_give_reduced_reports() {
    let g = WeylGroup::from_name("A3").unwrap();
    let datum = WenzelDatum::reduced(&g, LeviSubset::borel(3), 3).unwrap();
    for w in g.elements() {
        let word = BsdhWord::new(&datum, vec![w.clone(), g.w0()]).unwrap();
        assert!(first_projection_generic_fiber(&word).is_reduced());
        assert!(schubert_cell_thickening(&datum, w).unwrap().is_reduced());
        for v in g.elements().iter().filter(|v| v.bruhat_leq(w).unwrap()) {
            assert!(first_projection_fixed_point_fiber(&word, v).unwrap().is_reduced());
        }
        let letters: Vec<WeylElement> = w.normal_word().iter().map(|&i| g.simple_reflection(i).unwrap()).collect();
        if !letters.is_empty() {
            let word = BsdhWord::new(&datum, letters).unwrap();
            assert!(is_last_projection_birational(&word).unwrap());
        }
    }
}

#[test]
fn profile_closures_pass_strict_validation() {
    for name in ["A2", "A3", "A4"] {
        for datum in fixtures(name).into_iter().filter(|d| d.warnings().is_empty()) {
            let j: Vec<_> = datum.j().collect();
            let again = WenzelDatum::from_explicit(datum.group(), datum.levi().clone(), &j, 2, Validation::Strict);
            if datum.func_closure().unwrap() == datum {
                assert!(again.is_ok(), "{datum}");
            }
        }
    }
}

#[test]
fn thickening_monotone_in_profile() {
    let g = WeylGroup::from_name("A3").unwrap();
    for p in profiles(3, &[Some(1), Some(2), Some(3)]) {
        let base = WenzelDatum::from_profile(&g, &p, 3).unwrap();
        for i in 0..3 {
            let mut bigger = p.clone();
            bigger.insert(i, p[&i].map(|n| n + 1));
            let up = WenzelDatum::from_profile(&g, &bigger, 3).unwrap();
            assert!(up.thickening_length() >= base.thickening_length());
        }
        let sum: u64 = base.j().map(|(_, n)| n as u64).sum();
        assert_eq!(base.thickening_length(), sum);
    }
}

#[test]
fn chow_transfer_invariants() {
    for name in ["A2", "A3"] {
        for datum in fixtures(name) {
            let t = ChowTransfer::new(&datum).unwrap();
            let push = t.pushforward();
            let pull = t.pullback();
            assert_eq!(push.compose(&pull).unwrap().scalar_exponent(), Some(t.d_top()));
            assert_eq!(pull.compose(&push).unwrap().scalar_exponent(), Some(t.d_top()));
            assert_eq!(t.d_top(), datum.thickening_length());
            assert!(t.d().iter().all(|&d| d <= t.d_top()));
        }
    }
}

#[test]
fn poincare_polynomials_are_palindromic() {
    let g = WeylGroup::from_name("A4").unwrap();
    for mask in 0u32..16 {
        let levi = LeviSubset::new(4, (0..4).filter(|i| mask >> i & 1 == 1)).unwrap();
        let p = poincare_polynomial(&g, &levi).unwrap();
        assert!(p.is_palindromic());
        assert_eq!(p.eval(1) as usize, g.minimal_coset_reps(&levi).unwrap().len());
    }
}

fn a3() -> &'static WeylGroup {
    use std::sync::OnceLock;
    static G: OnceLock<WeylGroup> = OnceLock::new();
    G.get_or_init(|| WeylGroup::from_name("A3").unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn star_dominates_entries(words in proptest::collection::vec(proptest::collection::vec(0usize..3, 0..5), 1..4)) {
        let g = a3();
        let datum = WenzelDatum::reduced(g, LeviSubset::borel(3), 2).unwrap();
        let entries: Vec<WeylElement> = words.iter().map(|w| g.from_word(w).unwrap()).collect();
        let word = BsdhWord::new(&datum, entries.clone()).unwrap();
        let star = geometric_star(&word).unwrap();
        for e in &entries {
            prop_assert!(e.bruhat_leq(&star).unwrap());
        }
        let first = first_projection_generic_fiber(&word);
        prop_assert_eq!(&first.residual_word[..], &entries[1..]);
    }

    #[test]
    fn last_projection_reports_one_per_coordinate(word in proptest::collection::vec(0usize..3, 1..6), j in 0usize..6) {
        let g = a3();
        let sys = g.system();
        let beta = sys.negative_roots().nth(j).unwrap();
        let datum = WenzelDatum::from_explicit(g, LeviSubset::borel(3), &[(beta, 1)], 2, Validation::Permissive).unwrap();
        let entries: Vec<WeylElement> = word.iter().map(|&i| g.simple_reflection(i).unwrap()).collect();
        let bsdh = BsdhWord::new(&datum, entries).unwrap();
        match last_projection_generic_fiber(&bsdh) {
            Ok(reports) => {
                prop_assert_eq!(reports.len(), word.len() - 1);
                for r in reports {
                    prop_assert!(r.directions.iter().all(|d| !sys.is_positive(d.root) && d.exponent >= 1));
                }
            }
            Err(e) => {
                let refused = matches!(e, vuf_core::CoreError::NonReducedConcatenation { .. });
                prop_assert!(refused);
            }
        }
    }
}
