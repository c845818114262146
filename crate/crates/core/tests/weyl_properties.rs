use std::collections::HashSet;

use proptest::prelude::*;
use vuf_core::{Family, LeviSubset, RootSystem, WeylElement, WeylGroup};

fn group(name: &str) -> WeylGroup {
    WeylGroup::from_name(name).unwrap()
}

/// Every word of length `ℓ(v)` multiplying to `v`.
fn all_reduced_words(g: &WeylGroup, v: &WeylElement) -> Vec<Vec<usize>> {
    let len = v.length();
    let mut out = Vec::new();
    let total = g.rank().pow(len as u32);
    for mut code in 0..total {
        let mut word = Vec::with_capacity(len);
        for _ in 0..len {
            word.push(code % g.rank());
            code /= g.rank();
        }
        if &g.from_word(&word).unwrap() == v {
            out.push(word);
        }
    }
    out
}

/// Products of all subwords of all reduced words of `v`.
fn subword_oracle(g: &WeylGroup, v: &WeylElement) -> HashSet<WeylElement> {
    let mut below = HashSet::new();
    for word in all_reduced_words(g, v) {
        for mask in 0u32..(1 << word.len()) {
            let sub: Vec<usize> = word.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect();
            below.insert(g.from_word(&sub).unwrap());
        }
    }
    below
}

#[test]
fn bruhat_matches_subword_oracle_on_a2_a3() {
    for name in ["A2", "A3"] {
        let g = group(name);
        for v in g.elements() {
            let below = subword_oracle(&g, v);
            for u in g.elements() {
                assert_eq!(u.bruhat_leq(v).unwrap(), below.contains(u), "{name}: {u} <= {v}");
            }
        }
    }
}

#[test]
fn bruhat_is_a_partial_order_on_a3() {
    let g = group("A3");
    let els = g.elements();
    for u in els {
        assert!(u.bruhat_leq(u).unwrap());
        for v in els {
            if u != v && u.bruhat_leq(v).unwrap() {
                assert!(!v.bruhat_leq(u).unwrap());
                for w in els {
                    if v.bruhat_leq(w).unwrap() {
                        assert!(u.bruhat_leq(w).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn reduced_words_match_brute_force() {
    let g = group("A3");
    for w in g.elements() {
        let mut brute = all_reduced_words(&g, w);
        brute.sort();
        assert_eq!(w.reduced_words(), brute, "{w}");
        assert_eq!(w.normal_word(), brute[0]);
    }
}

/// `u ⋆ v` is the Bruhat-maximum of `{xy : x ≤ u, y ≤ v}`.
fn demazure_oracle(g: &WeylGroup, u: &WeylElement, v: &WeylElement) -> WeylElement {
    let below_u = subword_oracle(g, u);
    let below_v = subword_oracle(g, v);
    let products: Vec<WeylElement> =
        below_u.iter().flat_map(|x| below_v.iter().map(move |y| x * y)).collect();
    products.iter().max_by_key(|w| w.length()).unwrap().clone()
}

#[test]
fn demazure_exhaustive_on_a2() {
    let g = group("A2");
    let els = g.elements();
    for u in els {
        for v in els {
            let uv = u.demazure(v).unwrap();
            assert_eq!(uv, demazure_oracle(&g, u, v));
            assert!(u.bruhat_leq(&uv).unwrap() && v.bruhat_leq(&uv).unwrap());
            for w in els {
                assert_eq!(uv.demazure(w).unwrap(), u.demazure(&v.demazure(w).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn demazure_matches_oracle_on_a3() {
    let g = group("A3");
    let els = g.elements();
    for u in els.iter().step_by(3) {
        for v in els.iter().step_by(2) {
            assert_eq!(u.demazure(v).unwrap(), demazure_oracle(&g, u, v), "{u} * {v}");
        }
    }
}

#[test]
fn root_orbit_closure_reproduces_all_roots() {
    for (f, n) in [(Family::A, 4), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
        let sys = RootSystem::new(f, n).unwrap();
        let mut seen: HashSet<_> = (0..n).map(|i| sys.simple_root(i).unwrap()).collect();
        let mut frontier: Vec<_> = seen.iter().copied().collect();
        while let Some(r) = frontier.pop() {
            for i in 0..n {
                let s = sys.reflect(r, i).unwrap();
                if seen.insert(s) {
                    frontier.push(s);
                }
            }
        }
        assert_eq!(seen.len(), sys.num_roots());
    }
}

#[test]
fn simply_laced_reflection_formula() {
    let sys = RootSystem::new(Family::A, 4).unwrap();
    for r in sys.roots() {
        for i in 0..4 {
            let mut expect = sys.coeffs(r).to_vec();
            expect[i] -= sys.pairing(r, i).unwrap();
            assert_eq!(sys.coeffs(sys.reflect(r, i).unwrap()), &expect[..]);
        }
    }
}

#[test]
fn coset_reps_count_and_idempotence() {
    let g = group("A3");
    for mask in 0u32..8 {
        let levi = LeviSubset::new(3, (0..3).filter(|i| mask >> i & 1 == 1)).unwrap();
        let sub = g.longest_element(&levi).unwrap();
        let sub_order = g.elements().iter().filter(|w| w.bruhat_leq(&sub).unwrap()).count();
        let reps = g.minimal_coset_reps(&levi).unwrap();
        assert_eq!(reps.len() * sub_order, 24);
        for w in g.elements() {
            let once = g.to_w_i(&levi, w).unwrap();
            assert_eq!(g.to_w_i(&levi, &once).unwrap(), once);
        }
    }
}

fn element_strategy(g: &'static WeylGroup) -> impl Strategy<Value = WeylElement> {
    proptest::collection::vec(0..g.rank(), 0..14).prop_map(move |w| g.from_word(&w).unwrap())
}

fn a4() -> &'static WeylGroup {
    use std::sync::OnceLock;
    static G: OnceLock<WeylGroup> = OnceLock::new();
    G.get_or_init(|| group("A4"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn demazure_associative_on_a4(u in element_strategy(a4()), v in element_strategy(a4()), w in element_strategy(a4())) {
        let left = u.demazure(&v).unwrap().demazure(&w).unwrap();
        let right = u.demazure(&v.demazure(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn length_inequalities(u in element_strategy(a4()), v in element_strategy(a4())) {
        let uv = &u * &v;
        let star = u.demazure(&v).unwrap();
        prop_assert!(uv.length() <= u.length() + v.length());
        prop_assert!(star.length() <= u.length() + v.length());
        let additive = uv.length() == u.length() + v.length();
        prop_assert_eq!(star.length() == u.length() + v.length(), additive);
        if additive {
            prop_assert_eq!(star, uv);
        }
    }

    #[test]
    fn action_is_a_group_action(u in element_strategy(a4()), v in element_strategy(a4()), r in 0usize..20) {
        let sys = a4().system();
        let theta = sys.roots().nth(r).unwrap();
        prop_assert_eq!((&u * &v).act(theta), u.act(v.act(theta)));
        prop_assert!((&u * &u.inverse()).is_identity());
    }

    #[test]
    fn normal_word_is_reduced(w in element_strategy(a4())) {
        let word = w.normal_word();
        prop_assert_eq!(word.len(), w.length());
        prop_assert_eq!(a4().from_word(&word).unwrap(), w.clone());
        prop_assert_eq!(a4().parse_element(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn double_coset_rep_idempotent(w in element_strategy(a4()), l in 0u32..16, r in 0u32..16) {
        let g = a4();
        let left = LeviSubset::new(4, (0..4).filter(|i| l >> i & 1 == 1)).unwrap();
        let right = LeviSubset::new(4, (0..4).filter(|i| r >> i & 1 == 1)).unwrap();
        let once = g.max_double_coset_rep(&left, &right, &w).unwrap();
        prop_assert_eq!(g.max_double_coset_rep(&left, &right, &once).unwrap(), once.clone());
        prop_assert!(w.bruhat_leq(&once).unwrap());
    }
}
