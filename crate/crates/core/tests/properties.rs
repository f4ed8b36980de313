use proptest::prelude::*;
use umemura::codec::{decode, encode};
use umemura::combinatorics::{subset_weight, IndexSet, Subset};
use umemura::exec::Exec;
use umemura::families::{gen_umemura, gen_umemura_with, Orientation};
use umemura::ring::{q, ModField, Monomial, Poly, RationalField, ReducedPoly, ScalarField, Var, NVARS};
use umemura::Rational;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::array::uniform7(0u16..4), rational()), 0..8).prop_map(|terms| {
        Poly::from_terms(terms.into_iter().map(|(e, c)| (Monomial(e), c)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn codec_round_trips(p in poly()) {
        let text = encode(&p);
        prop_assert_eq!(decode(&text).unwrap(), p.clone());
        prop_assert_eq!(encode(&decode(&text).unwrap()), text);
    }

    #[test]
    fn ring_laws(p in poly(), r in poly(), s in poly()) {
        prop_assert_eq!(&p * &(&r + &s), &(&p * &r) + &(&p * &s));
        prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
        prop_assert_eq!(p.mul_with(&r, Exec::Sequential), p.mul_with(&r, Exec::Parallel));
    }

    #[test]
    fn quotient_reduction_preserves_value(p in poly(), z in rational(), rest in prop::array::uniform7(rational())) {
        let mut point: [Option<Rational>; NVARS] = Default::default();
        for (i, x) in rest.into_iter().enumerate() {
            point[i] = Some(x);
        }
        point[Var::Z.index()] = Some(z);
        let direct = p.eval_quotient(&RationalField, &point).unwrap();
        let reduced = ReducedPoly::reduce(&p).to_poly().eval_quotient(&RationalField, &point).unwrap();
        prop_assert_eq!(direct, reduced);
    }

    #[test]
    fn modular_agrees_with_rational(p in poly(), xs in prop::array::uniform7(rational())) {
        let f = ModField { p: 1_000_000_007 };
        let mut rp: [Option<Rational>; NVARS] = Default::default();
        let mut mp: [Option<u64>; NVARS] = [None; NVARS];
        for (i, x) in xs.iter().enumerate() {
            rp[i] = Some(x.clone());
            mp[i] = Some(f.from_rational(x).unwrap());
        }
        let exact = p.eval_in(&RationalField, &rp).unwrap();
        prop_assert_eq!(f.from_rational(&exact).unwrap(), p.eval_in(&f, &mp).unwrap());
    }

    #[test]
    fn subset_weights_are_integers(n in 0u32..7, m in 0u32..7, mask in any::<u64>()) {
        let set = IndexSet::new(n, m);
        let s = Subset(mask & set.full().0);
        let w = subset_weight(&set, s).unwrap();
        prop_assert!(w.d > 0.into());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn exec_modes_build_the_same_family(n in 0u32..4, m in 0u32..4, k in 0u32..3) {
        let par = gen_umemura_with(n, m, k, Orientation::Printed, Exec::Parallel);
        let seq = gen_umemura_with(n, m, k, Orientation::Printed, Exec::Sequential);
        prop_assert_eq!(&par, &seq);
        prop_assert_eq!(par, gen_umemura(n, m, k));
    }

    #[test]
    fn orientations_agree_for_even_k(n in 0u32..5, m in 0u32..3, half_k in 0u32..2) {
        let k = 2 * half_k;
        prop_assume!(k <= n);
        let p = gen_umemura_with(n, m, k, Orientation::Printed, Exec::Sequential);
        let r = gen_umemura_with(n, m, k, Orientation::Reversed, Exec::Sequential);
        prop_assert_eq!(p, r);
    }
}
