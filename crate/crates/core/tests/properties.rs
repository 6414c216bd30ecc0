use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use quantic::genext::GammaMonoidElem;
use quantic::repcalc::{ext_dim, hom_dim, unfold};
use quantic::rewrite::{self, defining_relations, multiply, normal_form, root_element, MonoidElem, Word};
use quantic::ring::{ring_mult, RingElem as Ring};
use quantic::roots::{CartanDatum, MultFn, RootSystem};
use quantic::{Quiver, Realization, Representation, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TYPES: &[&str] = &["A2", "B2", "G2", "A3", "B3", "C3"];

fn system(k: usize) -> Arc<RootSystem> {
    static CACHE: OnceLock<Vec<Arc<RootSystem>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        TYPES
            .iter()
            .map(|t| Arc::new(RootSystem::new(CartanDatum::named(t).unwrap()).unwrap()))
            .collect()
    })[k]
        .clone()
}

fn realization(k: usize) -> &'static Realization {
    static CACHE: OnceLock<Vec<Realization>> = OnceLock::new();
    &CACHE.get_or_init(|| {
        (0..TYPES.len())
            .map(|k| Realization::new(system(k), &mut ChaCha8Rng::seed_from_u64(k as u64)).unwrap())
            .collect()
    })[k]
}

fn word(sys: &RootSystem, raw: &[usize]) -> Word {
    Word::new(raw.iter().map(|&x| x % sys.rank()).collect())
}

fn vector(sys: &RootSystem, raw: &[i64]) -> Vec<i64> {
    raw.iter().take(sys.rank()).copied().collect()
}

fn elem(sys: &Arc<RootSystem>, raw: &[usize]) -> MonoidElem {
    normal_form(sys, &word(sys, raw)).unwrap()
}

fn add(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_form_is_bilinear(t in 0..TYPES.len(), x in prop::collection::vec(-4i64..5, 3), y in prop::collection::vec(-4i64..5, 3), z in prop::collection::vec(-4i64..5, 3)) {
        let sys = system(t);
        let (x, y, z) = (vector(&sys, &x), vector(&sys, &y), vector(&sys, &z));
        let e = |a: &[i64], b: &[i64]| sys.euler_form(a, b).unwrap();
        prop_assert_eq!(e(&add(&x, &y), &z), e(&x, &z) + e(&y, &z));
        prop_assert_eq!(e(&z, &add(&x, &y)), e(&z, &x) + e(&z, &y));
        prop_assert_eq!(e(&x, &y) + e(&y, &x), sys.symmetric_form(&x, &y).unwrap());
    }

    #[test]
    fn normal_form_is_weight_homogeneous(t in 0..TYPES.len(), raw in prop::collection::vec(0usize..3, 0..12)) {
        let sys = system(t);
        let w = word(&sys, &raw);
        prop_assert_eq!(normal_form(&sys, &w).unwrap().weight(), w.weight(sys.rank()));
    }

    #[test]
    fn normal_form_respects_relations(t in 0..TYPES.len(), raw in prop::collection::vec(0usize..3, 0..10), pick in 0usize..64, flip in any::<bool>()) {
        let sys = system(t);
        let w = word(&sys, &raw);
        let rels = defining_relations(&sys).unwrap();
        prop_assume!(!rels.is_empty());
        let (l, r) = &rels.relations()[pick % rels.len()];
        let (from, to) = if flip { (r, l) } else { (l, r) };
        // insert the relation's left side into the word, then swap sides
        let cut = pick % (w.len() + 1);
        let (a, b) = w.letters().split_at(cut);
        let before = Word::new([a, from.letters(), b].concat());
        let after = Word::new([a, to.letters(), b].concat());
        prop_assert_eq!(normal_form(&sys, &before).unwrap(), normal_form(&sys, &after).unwrap());
    }

    #[test]
    fn multiplication_is_associative(t in 0..TYPES.len(), a in prop::collection::vec(0usize..3, 0..6), b in prop::collection::vec(0usize..3, 0..6), c in prop::collection::vec(0usize..3, 0..6)) {
        let sys = system(t);
        let (x, y, z) = (elem(&sys, &a), elem(&sys, &b), elem(&sys, &c));
        let left = multiply(&multiply(&x, &y).unwrap(), &z).unwrap();
        let right = multiply(&x, &multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let joined = normal_form(&sys, &word(&sys, &[a, b, c].concat())).unwrap();
        prop_assert_eq!(left, joined);
    }

    #[test]
    fn root_element_gives_canonical_decomposition(t in 0..TYPES.len(), raw in prop::collection::vec(0i64..4, 3)) {
        let sys = system(t);
        let d = vector(&sys, &raw);
        let w = root_element(&sys, &d).unwrap();
        prop_assert_eq!(normal_form(&sys, &w).unwrap().into_nf(), sys.canonical_decomposition(&d).unwrap());
    }

    #[test]
    fn straightening_rule(t in 0..TYPES.len(), d in prop::collection::vec(0i64..3, 3), e in prop::collection::vec(0i64..3, 3)) {
        let sys = system(t);
        let (d, e) = (vector(&sys, &d), vector(&sys, &e));
        let (ad, ae) = (sys.canonical_decomposition(&d).unwrap(), sys.canonical_decomposition(&e).unwrap());
        let hypothesis = ad.support().all(|a| ae.support().all(|b| sys.pairing(b, a) >= 0));
        prop_assume!(hypothesis);
        let x = MonoidElem::from_nf(sys.clone(), ad);
        let y = MonoidElem::from_nf(sys.clone(), ae);
        prop_assert_eq!(multiply(&x, &y).unwrap().into_nf(), sys.canonical_decomposition(&add(&d, &e)).unwrap());
    }

    #[test]
    fn ring_is_associative_and_graded(t in 0..TYPES.len(), words in prop::collection::vec(prop::collection::vec(0usize..3, 0..5), 6), coeffs in prop::collection::vec(-3i64..4, 6)) {
        let sys = system(t);
        let term = |k: usize| Ring::from_elem(&elem(&sys, &words[k]), Q::from_integer(coeffs[k].into()));
        let x = term(0).add(&term(1)).unwrap();
        let y = term(2).add(&term(3)).unwrap();
        let z = term(4).add(&term(5)).unwrap();
        let left = ring_mult(&ring_mult(&x, &y).unwrap(), &z).unwrap();
        let right = ring_mult(&x, &ring_mult(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let single = ring_mult(&term(0), &term(2)).unwrap();
        let expected = add(&elem(&sys, &words[0]).weight(), &elem(&sys, &words[2]).weight());
        prop_assert!(single.weights().iter().all(|w| *w == expected));
    }
}

fn quiver(t: usize) -> Arc<Quiver> {
    realization(t).quiver().clone()
}

fn rep_from(q: &Arc<Quiver>, dims: &[usize], seed: u64, range: i64) -> Representation {
    let dims: Vec<usize> = dims.iter().take(q.num_vertices()).copied().collect();
    Representation::random(q.clone(), dims, range, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gamma_preserves_hom_and_ext(t in 0..TYPES.len(), dm in prop::collection::vec(0usize..3, 5), dn in prop::collection::vec(0usize..3, 5), seed in any::<u64>(), range in 0i64..3) {
        let q = quiver(t);
        let m = rep_from(&q, &dm, seed, range);
        let n = rep_from(&q, &dn, seed ^ 1, range);
        prop_assert_eq!(hom_dim(&m.twist(), &n.twist()).unwrap(), hom_dim(&m, &n).unwrap());
        prop_assert_eq!(ext_dim(&m.twist(), &n.twist()).unwrap(), ext_dim(&m, &n).unwrap());
    }

    #[test]
    fn decompose_inverts_direct_sums(t in 0..TYPES.len(), mults in prop::collection::vec(0u64..3, 12)) {
        let table = realization(t).table();
        let m: MultFn = mults.iter().take(table.len()).enumerate().filter(|(_, &c)| c > 0).map(|(k, &c)| (k, c)).collect();
        let x = table.realize(&m).unwrap();
        prop_assert_eq!(table.decompose(&x).unwrap(), m);
    }

    #[test]
    fn orbit_sums_divide_homs(t in 0..TYPES.len(), mults in prop::collection::vec(0u64..2, 9), k in 0usize..9) {
        let real = realization(t);
        let sys = real.system();
        let k = k % sys.num_roots();
        let folded: MultFn = mults.iter().take(sys.num_roots()).enumerate().filter(|(_, &c)| c > 0).map(|(k, &c)| (k, c)).collect();
        let m = real.representative(&GammaMonoidElem::from_mults(sys.clone(), folded)).unwrap();
        let v = real.representative(&GammaMonoidElem::from_mults(sys.clone(), MultFn::single(k, 1))).unwrap();
        let vv = hom_dim(&v, &v).unwrap();
        prop_assert_eq!(vv, real.orbits().symmetrization_index(k));
        let u = real.table().indec(real.orbits().orbit(k)[0]);
        let mv = hom_dim(&m, &v).unwrap();
        prop_assert_eq!(mv % vv, 0);
        prop_assert_eq!(mv / vv, hom_dim(&m, u).unwrap());
        prop_assert_eq!(hom_dim(&v, &m).unwrap() % vv, 0);
        prop_assert_eq!(ext_dim(&m, &v).unwrap() % vv, 0);
        prop_assert_eq!(ext_dim(&v, &m).unwrap() % vv, 0);
    }

    #[test]
    fn extensions_of_rigid_modules_are_rigid(t in 0..TYPES.len(), a in prop::collection::vec(0usize..3, 0..4), b in prop::collection::vec(0usize..3, 0..4), seed in any::<u64>()) {
        let real = realization(t);
        let sys = real.system();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = GammaMonoidElem::from_mults(sys.clone(), elem(sys, &a).into_nf());
        let y = GammaMonoidElem::from_mults(sys.clone(), elem(sys, &b).into_nf());
        let (m, n) = (real.representative(&x).unwrap(), real.representative(&y).unwrap());
        prop_assume!(ext_dim(&m, &m).unwrap() == 0 && ext_dim(&n, &n).unwrap() == 0 && ext_dim(&n, &m).unwrap() == 0);
        let prod = quantic::genext::generic_extension(&m, &n, &mut rng).unwrap();
        prop_assert_eq!(ext_dim(&prod, &prod).unwrap(), 0);
    }

    #[test]
    fn elements_are_products_of_their_summands(t in 0..TYPES.len(), raw in prop::collection::vec(0usize..3, 0..6), seed in any::<u64>()) {
        let real = realization(t);
        let sys = real.system();
        let x = GammaMonoidElem::from_mults(sys.clone(), elem(sys, &raw).into_nf());
        prop_assert_eq!(real.rebuild(&x, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap(), x);
    }

    #[test]
    fn products_do_not_depend_on_seed(t in 0..TYPES.len(), a in prop::collection::vec(0usize..3, 0..4), b in prop::collection::vec(0usize..3, 0..4), s1 in any::<u64>(), s2 in any::<u64>()) {
        let real = realization(t);
        let sys = real.system();
        let x = GammaMonoidElem::from_mults(sys.clone(), elem(sys, &a).into_nf());
        let y = GammaMonoidElem::from_mults(sys.clone(), elem(sys, &b).into_nf());
        let p1 = real.monoid_mult(&x, &y, &mut ChaCha8Rng::seed_from_u64(s1)).unwrap();
        let p2 = real.monoid_mult(&x, &y, &mut ChaCha8Rng::seed_from_u64(s2)).unwrap();
        prop_assert_eq!(&p1, &p2);
        prop_assert_eq!(p1.to_monoid_elem(), multiply(&x.to_monoid_elem(), &y.to_monoid_elem()).unwrap());
    }
}

#[test]
fn gabriel_counts() {
    for (k, name) in TYPES.iter().enumerate() {
        let q = quiver(k);
        let table = realization(k).table();
        let simply_laced = RootSystem::new(q.graph_datum().unwrap()).unwrap();
        assert_eq!(table.len(), simply_laced.num_roots(), "{name}");
        assert!(table.is_unitriangular(), "{name}");
        for p in 0..table.len() {
            let v = table.indec(p);
            assert_eq!(hom_dim(v, v).unwrap(), 1);
            assert_eq!(ext_dim(v, v).unwrap(), 0);
        }
    }
}

#[test]
fn fold_unfold_round_trip_on_builtin_types() {
    for name in [
        "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4", "E6", "E7", "E8",
    ] {
        let c = CartanDatum::named(name).unwrap();
        let q = unfold(&c).unwrap();
        let back = quantic::repcalc::fold(&q).unwrap();
        assert_eq!((back.labels(), back.matrix()), (c.labels(), c.matrix()), "{name}");
    }
}

#[test]
fn congruence_oracle_agrees_with_normal_forms_up_to_length_seven() {
    for (k, name) in TYPES.iter().enumerate() {
        let sys = system(k);
        for d in sys.weights_up_to(7) {
            let mut seen: HashMap<MultFn, usize> = HashMap::new();
            let classes = rewrite::congruence_classes(&sys, &d).unwrap();
            for (c, class) in classes.iter().enumerate() {
                for w in class {
                    let nf = normal_form(&sys, w).unwrap().into_nf();
                    let owner = *seen.entry(nf).or_insert(c);
                    assert_eq!(owner, c, "{name} {d:?}");
                }
            }
        }
    }
}
