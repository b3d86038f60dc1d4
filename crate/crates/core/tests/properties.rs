use proptest::prelude::*;
use rand::Rng;
use uacyc::cone::cone;
use uacyc::filling::min_l1_fill;
use uacyc::homology::reduced_homology;
use uacyc::homotopy::{order_homotopy, verify_homotopy};
use uacyc::lamp::{lamp_compose, LampElement};
use uacyc::nerve::nerve_of_poset;
use uacyc::orbit::CofiniteEmbedding;
use uacyc::rational::{format_rat, frac, parse_rat};
use uacyc::{gen, linalg};

fn embedding() -> impl Strategy<Value = CofiniteEmbedding> {
    prop::collection::vec(1u64..20, 0..4).prop_map(|m| CofiniteEmbedding::new(m).unwrap())
}

fn lamp(m: usize) -> impl Strategy<Value = LampElement> {
    let perm = Just((0..m).collect::<Vec<usize>>()).prop_shuffle();
    (-3i64..=3, perm.clone(), -2i64..=2, prop::collection::vec(perm.clone(), 0..3), perm)
        .prop_map(|(s, l, start, mid, r)| LampElement::from_parts(s, l, start, mid, r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn embedding_composition_is_associative(a in embedding(), b in embedding(), c in embedding()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn missing_counts_add(a in embedding(), b in embedding()) {
        let ab = a.compose(&b);
        prop_assert_eq!(ab.missing().len(), a.missing().len() + b.missing().len());
        for n in 1..40 {
            prop_assert_eq!(ab.eval(n), b.eval(a.eval(n)));
            prop_assert!(a.eval(n) < a.eval(n + 1));
        }
    }

    #[test]
    fn rank_inverts_eval(a in embedding(), n in 1u64..50) {
        prop_assert_eq!(a.rank(a.eval(n)), Some(n));
        for &m in a.missing() {
            prop_assert_eq!(a.rank(m), None);
        }
    }

    #[test]
    fn lamp_group_laws(x in lamp(3), y in lamp(3), z in lamp(3)) {
        prop_assert_eq!(lamp_compose(&lamp_compose(&x, &y), &z), lamp_compose(&x, &lamp_compose(&y, &z)));
        prop_assert!(lamp_compose(&x, &x.inverse()).is_identity());
        for level in -6..6 {
            for pt in 0..3 {
                let (q, l) = y.apply(pt, level);
                prop_assert_eq!(lamp_compose(&x, &y).apply(pt, level), x.apply(q, l));
            }
        }
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let q = frac(n, d);
        prop_assert_eq!(parse_rat(&format_rat(&q)).unwrap(), q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn smith_form_agrees_with_rank_nullity(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let v = rng.gen_range(3..=7);
        let x = gen::random_complex(&mut rng, v, 3, 40);
        let rank = |q: usize| linalg::rank(&linalg::from_ints(&x.boundary_matrix(q)));
        for p in 0..x.max_dim() {
            prop_assert_eq!(reduced_homology(&x, p).unwrap().betti, x.count(p) - rank(p) - rank(p + 1));
        }
    }

    #[test]
    fn boundaries_square_to_zero(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let x = gen::random_complex(&mut rng, 6, 3, 50);
        for p in 1..=x.max_dim() {
            for s in 0..x.count(p) {
                let b = x.boundary(&uacyc::Chain::simplex(p, s)).unwrap();
                if p == 1 {
                    prop_assert!(x.augment(&b).unwrap() == frac(0, 1));
                } else {
                    prop_assert!(x.boundary(&b).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn cone_fill_is_exact_and_never_beats_lp(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let x = gen::random_complex(&mut rng, 5, 2, 30);
        let cx = cone(&x, "v");
        for p in 0..=x.max_dim() {
            let z = cx.include(&gen::random_cycle(&mut rng, &x, p));
            if z.is_zero() {
                continue;
            }
            let c = cx.fill(&z).unwrap();
            prop_assert_eq!(cx.complex().boundary(&c).unwrap(), z.clone());
            prop_assert_eq!(c.norm(), z.norm());
            prop_assert!(min_l1_fill(cx.complex(), &z).unwrap().norm <= c.norm());
        }
    }

    #[test]
    fn order_homotopies_satisfy_the_identity(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let n = rng.gen_range(1..=6);
        let p = gen::random_poset(&mut rng, n, 0.4);
        let (f, g) = gen::random_comparable_maps(&mut rng, &p);
        let source = nerve_of_poset(&p, 2);
        let target = nerve_of_poset(&p, 3);
        let fm = source.induced_map(&target, &f).unwrap();
        let gm = source.induced_map(&target, &g).unwrap();
        let h = order_homotopy(source.complex(), &target, &fm, &gm, 2).unwrap();
        prop_assert!(verify_homotopy(source.complex(), &target, &fm, &gm, &h).is_ok());
        prop_assert!(h.within_claims());
    }
}
