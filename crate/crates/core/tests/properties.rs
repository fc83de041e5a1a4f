use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use permvol::dyck::{self, catalan, DyckPath};
use permvol::ratpoly::{frac, int, is_squarefree};
use permvol::type_a::{simple_root_ambient, to_ambient};
use permvol::*;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| frac(p, q))
}

fn nonneg_rational() -> impl Strategy<Value = Rational> {
    (0i64..=60, 1i64..=6).prop_map(|(p, q)| frac(p, q))
}

fn poly() -> impl Strategy<Value = RationalPoly> {
    prop::collection::vec((prop::collection::vec((1u32..=4, 0u32..=3), 0..3), rational()), 0..5)
        .prop_map(|terms| {
            RationalPoly::from_terms(terms.into_iter().map(|(m, c)| (Monomial::from_powers(m), c)))
        })
}

fn squarefree_radicand() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![1u64, 2, 3, 5, 6, 7, 10, 11, 13, 15, 30])
}

fn weight(n: usize) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(nonneg_rational(), n).prop_map(WeightVector::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly(), r in squarefree_radicand()) {
        let (a, b, c) = (ScaledPoly::new(a, r), ScaledPoly::new(b, r), ScaledPoly::new(c, r));
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()), a.mul(&b).add(&a.mul(&c)).unwrap());
    }

    #[test]
    fn products_have_squarefree_radicands(a in poly(), b in poly(), r1 in 1u64..=10_000, r2 in 1u64..=10_000) {
        let p = ScaledPoly::new(a, r1).mul(&ScaledPoly::new(b, r2));
        prop_assert!(is_squarefree(p.radicand()));
        if p.is_zero() {
            prop_assert_eq!(p.radicand(), 1);
        }
    }

    #[test]
    fn scaled_value_is_preserved_by_canonicalisation(r in 1u64..=10_000, x in rational()) {
        // (poly * sqrt(r))^2 evaluated at x is exact and canonical-form independent
        let p = ScaledPoly::new(RationalPoly::var(1), r);
        let e = p.evaluate(std::slice::from_ref(&x)).unwrap();
        prop_assert_eq!(&e.rational * &e.rational * int(e.radicand as i64), &x * &x * int(r as i64));
    }

    #[test]
    fn shift_is_a_ring_homomorphism(p in poly(), q in poly(), u in 0u32..5, v in 0u32..5) {
        prop_assert_eq!((&p * &q).shift(u), &p.shift(u) * &q.shift(u));
        prop_assert_eq!((&p + &q).shift(u), &p.shift(u) + &q.shift(u));
        prop_assert_eq!(p.shift(u).shift(v), p.shift(u + v));
        prop_assert_eq!(p.shift(u).degree(), p.degree());
    }

    #[test]
    fn json_round_trip(p in poly(), r in 1u64..=50) {
        let p = ScaledPoly::new(p, r);
        let back = ScaledPoly::from_json(&p.render(Format::Json)).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.render(Format::Plain), p.render(Format::Plain));
        prop_assert_eq!(back.render(Format::Latex), p.render(Format::Latex));
    }

    #[test]
    fn ambient_round_trip(x in prop::collection::vec(rational(), 1..7)) {
        let v = WeightVector::new(x);
        let p = to_ambient(&v);
        prop_assert_eq!(p.coords().iter().sum::<Rational>(), int(0));
        prop_assert_eq!(to_weight_coords(&p), v);
    }

    #[test]
    fn dominant_representative_is_orbit_invariant(
        x in prop::collection::vec(rational(), 3),
        perm in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let p = to_ambient(&WeightVector::new(x));
        let q = p.permuted(&perm);
        let d = dominant_representative(&p);
        prop_assert_eq!(dominant_representative(&q), d.clone());
        prop_assert!(to_weight_coords(&d).is_dominant());
    }

    #[test]
    fn volume_is_homogeneous(n in 1usize..=5, t in rational(), x in weight(5)) {
        let v = volume_recursive(n).value;
        let x = &x.coords()[..n];
        let scaled: Vec<Rational> = x.iter().map(|c| c * &t).collect();
        let base = v.evaluate(x).unwrap();
        let at_scaled = v.evaluate(&scaled).unwrap();
        let expected = &base.rational * num_traits::pow(t.clone(), n);
        prop_assert_eq!(at_scaled.rational, expected);
    }

    #[test]
    fn pyramid_matches_polynomial(n in 1usize..=5, x in weight(5)) {
        let x = WeightVector::new(x.coords()[..n].to_vec());
        let exact = volume_dyck(n).unwrap().value.evaluate(x.coords()).unwrap().to_f64();
        let pyramid = pyramid_eval(&x).unwrap();
        prop_assert!((pyramid - exact).abs() / exact.abs().max(1.0) <= 1e-9);
    }
}

#[test]
fn catalan_counts_up_to_twelve() {
    let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012];
    for (n, &c) in expected.iter().enumerate() {
        assert_eq!(dyck::enumerate(n).unwrap().count() as u64, c, "n={n}");
    }
}

#[test]
fn label_invariants() {
    for n in 0..=9 {
        for p in dyck::enumerate(n).unwrap() {
            let labels = north_step_labels(&p);
            assert_eq!(labels.len(), n);
            for l in &labels {
                assert!(1 <= l.i && l.i <= l.d && l.u + l.d <= n, "{p}: {l}");
            }
            if let Some(first) = labels.first() {
                assert_eq!((first.d, first.u), (n, 0), "{p}");
            }
        }
    }
}

#[test]
fn decompose_round_trip_and_bijection() {
    for n in 1..=10 {
        let mut seen = std::collections::HashSet::new();
        for p in dyck::enumerate(n).unwrap() {
            let parts = decompose(&p).unwrap();
            assert_eq!(parts.below.size(), parts.first_return - 1);
            assert_eq!(parts.after.size(), n - parts.first_return);
            assert_eq!(DyckPath::compose(&parts.below, &parts.after), p);
            assert!(seen.insert((parts.first_return, parts.below, parts.after)));
        }
        // injective, and the image has the size of the Catalan convolution
        assert_eq!(seen.len() as u128, (1..=n).map(|k| catalan(k - 1) * catalan(n - k)).sum::<u128>());
    }
}

#[test]
fn tree_round_trip() {
    for n in 0..=10 {
        for p in dyck::enumerate(n).unwrap() {
            let t = to_binary_tree(&p);
            assert_eq!(t.leaves(), n + 1);
            assert_eq!(from_binary_tree(&t), p);
        }
    }
}

#[test]
fn path_constant_and_normalisations() {
    for n in 1..=8 {
        let sqrt_n1 = ScaledPoly::new(RationalPoly::one(), n as u64 + 1);
        for p in dyck::enumerate(n).unwrap() {
            assert_eq!(path_constant(&p), frac(1, n as i64 + 1), "{p}");
            let plain = gamma_path(&p, GammaKind::Rational);
            assert_eq!(plain.radicand(), 1);
            assert_eq!(gamma_path(&p, GammaKind::Primed), sqrt_n1.mul(&plain), "{p}");
        }
    }
}

#[test]
fn volume_shape() {
    for n in 1..=7 {
        let v = volume_recursive(n).value;
        assert_eq!(v.radicand(), permvol::ratpoly::squarefree_split(n as u64 + 1).1);
        assert!(v.is_homogeneous());
        assert_eq!(v.degree(), Some(n as u32));
        assert!(v.poly().terms().all(|(_, c)| c.is_positive()));
        assert_eq!(v.reverse_variables(n as u32), v);
    }
}

#[test]
fn degenerate_evaluations() {
    for n in 1..=5 {
        let zero = vec![Rational::zero(); n];
        assert!(volume_recursive(n).value.evaluate(&zero).unwrap().rational.is_zero());
        for j in SimpleSubset::all(n) {
            let f = face_volume(&j);
            for comp in connected_components(&j) {
                let mut x = vec![Rational::one(); n];
                for i in comp.members() {
                    x[i - 1] = Rational::zero();
                }
                assert!(f.evaluate(&x).unwrap().rational.is_zero(), "n={n} J={j}");
            }
        }
    }
}

#[test]
fn isolated_reflections_give_orthogonal_segments() {
    // three separated rank-one components: (sqrt(2) x1)(sqrt(2) x3)(sqrt(2) x6)
    let j = SimpleSubset::new(6, [1, 3, 6]).unwrap();
    let expected = ScaledPoly::new(
        RationalPoly::from_terms([(
            Monomial::from_powers([(1, 1), (3, 1), (6, 1)]),
            Rational::from_integer(BigInt::from(2)),
        )]),
        2,
    );
    assert_eq!(face_volume(&j), expected);
}

#[test]
fn simple_roots_have_length_sqrt_two() {
    for n in 1..=5 {
        for i in 1..=n {
            let a = simple_root_ambient(n, i).unwrap();
            assert_eq!(a.dot(&a), int(2));
        }
    }
}
