use charvar::chevalley::{q_image, tau_image};
use charvar::sampling::{random_invariant, seeded};
use charvar::weyl::{act, is_invariant, orbit_sum, weyl_elements, SignedPerm};
use charvar::{Decomposer, ExponentMatrix, Family, GaussScalar, GroupSpec, LaurentPoly, TorusPoint};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

fn group() -> impl Strategy<Value = GroupSpec> {
    (family(), 1usize..=3, 1usize..=2).prop_map(|(f, n, big_n)| GroupSpec::new(f, n, big_n).unwrap())
}

fn exponents(g: GroupSpec) -> impl Strategy<Value = ExponentMatrix> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, g.factors), g.rank)
        .prop_map(|rows| ExponentMatrix::from_rows(&rows).unwrap())
}

fn coeff() -> impl Strategy<Value = GaussScalar> {
    (-3i64..=3, -2i64..=2, 1i64..=3).prop_map(|(re, im, d)| {
        GaussScalar::from_ratio(re, d) + GaussScalar::from_int(im) * GaussScalar::i()
    })
}

fn poly(g: GroupSpec) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((exponents(g), coeff()), 0..4)
        .prop_map(move |terms| LaurentPoly::from_terms(g, terms).unwrap())
}

fn group_and_polys(k: usize) -> impl Strategy<Value = (GroupSpec, Vec<LaurentPoly>)> {
    group().prop_flat_map(move |g| (Just(g), prop::collection::vec(poly(g), k)))
}

fn point(g: GroupSpec) -> impl Strategy<Value = TorusPoint<GaussScalar>> {
    let nonzero = (1i64..=5, 1i64..=3, any::<bool>()).prop_map(|(n, d, neg)| GaussScalar::from_ratio(if neg { -n } else { n }, d));
    prop::collection::vec(prop::collection::vec(nonzero, g.rank), g.factors).prop_map(move |mut cols| {
        if g.family == Family::SL {
            for col in &mut cols {
                let prod = col[..g.rank - 1].iter().fold(GaussScalar::one(), |a, b| &a * b);
                col[g.rank - 1] = prod.inv();
            }
        }
        TorusPoint::new(g, cols).unwrap()
    })
}

fn weyl_element(g: GroupSpec) -> impl Strategy<Value = SignedPerm> {
    let elements = weyl_elements(&g).unwrap();
    prop::sample::select(elements)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((g, ps) in group_and_polys(3)) {
        let (a, b, c) = (&ps[0], &ps[1], &ps[2]);
        prop_assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
        prop_assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
        prop_assert_eq!(a.mul(&b.mul(c).unwrap()).unwrap(), a.mul(b).unwrap().mul(c).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(c).unwrap()).unwrap(),
            a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(a).unwrap().is_zero());
        let one = LaurentPoly::constant(g, GaussScalar::one());
        prop_assert_eq!(&a.mul(&one).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism((_g, ps, p) in group_and_polys(2).prop_flat_map(|(g, ps)| (Just(g), Just(ps), point(g)))) {
        let (a, b) = (&ps[0], &ps[1]);
        prop_assert_eq!(a.mul(b).unwrap().eval(&p).unwrap(), a.eval(&p).unwrap() * b.eval(&p).unwrap());
        prop_assert_eq!(a.add(b).unwrap().eval(&p).unwrap(), a.eval(&p).unwrap() + b.eval(&p).unwrap());
        // Equality modulo the SL relations is respected by evaluation.
        prop_assert_eq!(a.canonicalized().eval(&p).unwrap(), a.eval(&p).unwrap());
    }

    #[test]
    fn canonical_form_is_idempotent_and_shift_invariant(
        (_g, f, shift) in (1usize..=3, 1usize..=2)
            .prop_flat_map(|(n, big_n)| {
                let g = GroupSpec::new(Family::SL, n, big_n).unwrap();
                (Just(g), poly(g), prop::collection::vec(-2i64..=2, big_n))
            })
    ) {
        let c = f.canonicalized();
        prop_assert_eq!(c.canonicalized(), c.clone());
        let doubled: Vec<i64> = shift.iter().map(|s| 2 * s).collect();
        let shifted = f.map_monomials(|m| m.shift_rows(&doubled));
        prop_assert!(shifted.eq_in_ring(&f));
    }

    #[test]
    fn log_derivative_leibniz((_g, ps) in group_and_polys(2), i in 0usize..3, j in 0usize..2) {
        let (a, b) = (&ps[0], &ps[1]);
        let g = a.group();
        let (i, j) = (i % g.rank, j % g.factors);
        let lhs = a.mul(b).unwrap().partial(i, j);
        let rhs = a.partial(i, j).mul(b).unwrap().add(&a.mul(&b.partial(i, j)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weyl_action_is_a_group_action(
        (_g, f, w1, w2) in group().prop_flat_map(|g| (Just(g), poly(g), weyl_element(g), weyl_element(g)))
    ) {
        prop_assert_eq!(act(&w1, &act(&w2, &f)), act(&w1.compose(&w2), &f));
        prop_assert_eq!(act(&w1.inverse(), &act(&w1, &f)), f);
    }

    #[test]
    fn orbit_stabilizer((g, m) in group().prop_flat_map(|g| (Just(g), exponents(g)))) {
        let elements = weyl_elements(&g).unwrap();
        let images: std::collections::BTreeSet<_> = elements.iter().map(|w| w.act_monomial(&m)).collect();
        let stabilizer = elements.iter().filter(|w| w.act_monomial(&m) == m).count();
        prop_assert_eq!(images.len() * stabilizer, elements.len());
        let o = orbit_sum(&m, &g).unwrap();
        prop_assert!(is_invariant(&o));
        prop_assert_eq!(o.len(), images.len());
    }

    #[test]
    fn generator_images_are_invariant((g, alpha) in group().prop_flat_map(|g| (Just(g), prop::collection::vec(-3i64..=3, g.factors)))) {
        prop_assert!(is_invariant(&tau_image(&g, &alpha).unwrap()));
    }

    #[test]
    fn q_image_symmetry(
        (n, alphas) in (1usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(-2i64..=2, 2), n)))
    ) {
        let g = GroupSpec::new(Family::SOeven, n, 2).unwrap();
        let q = q_image(&g, &alphas).unwrap();
        prop_assert!(is_invariant(&q));
        let mut swapped = alphas.clone();
        swapped.reverse();
        prop_assert_eq!(&q_image(&g, &swapped).unwrap(), &q);
        let mut flipped = alphas.clone();
        flipped[0] = flipped[0].iter().map(|v| -v).collect();
        prop_assert_eq!(q_image(&g, &flipped).unwrap(), q.neg());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_round_trip_and_linearity(f in family(), n in 1usize..=3, big_n in 1usize..=2, seed in any::<u64>()) {
        let g = GroupSpec::new(f, n, big_n).unwrap();
        let mut rng = seeded(seed);
        let a = random_invariant(&g, 3, 3, &mut rng).unwrap();
        let b = random_invariant(&g, 3, 3, &mut rng).unwrap();
        let mut dec = Decomposer::new(g).unwrap();
        let da = dec.decompose(&a).unwrap();
        let db = dec.decompose(&b).unwrap();
        prop_assert!(da.expand(&g).unwrap().eq_in_ring(&a));
        prop_assert_eq!(dec.decompose(&a.add(&b).unwrap()).unwrap(), da.add(&db));
    }
}
