use coset_fusion::{
    color, conformal_weight, conjugate_weight, graded_character, quantum_dimension_of, s_matrix_of,
    sigma_apply, torus_classes, verlinde_tensor, weights_of, weyl_dimension, CosetSpec,
    DiagonalCoset, Factor, Rational64, Weight,
};
use proptest::prelude::*;

fn factor() -> impl Strategy<Value = Factor> {
    (2u32..=4, 1u32..=5).prop_map(|(n, k)| Factor::new(n, k).unwrap())
}

/// A factor together with one of its integrable weights.
fn weight() -> impl Strategy<Value = Weight> {
    factor().prop_flat_map(|f| {
        let all = weights_of(f);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn s_matrix_is_unitary_and_symmetric(f in factor()) {
        let s = s_matrix_of(f);
        prop_assert!(s.unitarity_residual() < 1e-9);
        prop_assert!(s.symmetry_residual() < 1e-9);
    }

    #[test]
    fn fusion_is_commutative_and_associative(f in factor(), seed in any::<[usize; 3]>()) {
        let ring = verlinde_tensor(&s_matrix_of(f)).unwrap();
        let n = ring.len();
        let (i, j, k) = (seed[0] % n, seed[1] % n, seed[2] % n);
        prop_assert_eq!(ring.product(i, j), ring.product(j, i));
        let left: Vec<u32> = (0..n)
            .map(|l| (0..n).map(|m| ring.coefficient(i, j, m) * ring.coefficient(m, k, l)).sum())
            .collect();
        let right: Vec<u32> = (0..n)
            .map(|l| (0..n).map(|m| ring.coefficient(j, k, m) * ring.coefficient(i, m, l)).sum())
            .collect();
        prop_assert_eq!(left, right);
        prop_assert_eq!(ring.coefficient(i, ring.dual(i), 0), 1);
    }

    #[test]
    fn simple_current_shifts_color_by_level(w in weight(), p in 0i64..8) {
        let f = w.factor();
        let (n, k) = (f.rank() as i64, f.level() as i64);
        let shifted = sigma_apply(p, &w);
        prop_assert_eq!(color(&shifted) as i64, (color(&w) as i64 + p * k).rem_euclid(n));
        prop_assert!((quantum_dimension_of(&shifted) - quantum_dimension_of(&w)).abs() < 1e-9);
        prop_assert_eq!(sigma_apply(n, &w), w.clone());
    }

    #[test]
    fn conjugation_is_an_involution(w in weight()) {
        let c = conjugate_weight(&w);
        prop_assert_eq!(conjugate_weight(&c), w.clone());
        prop_assert_eq!(conformal_weight(&c), conformal_weight(&w));
        prop_assert_eq!((color(&c) + color(&w)) % w.factor().rank(), 0);
    }

    #[test]
    fn quantum_dimensions_are_at_least_one(w in weight()) {
        let d = quantum_dimension_of(&w);
        prop_assert!(d >= 1.0 - 1e-12);
        prop_assert!(conformal_weight(&w) >= Rational64::from_integer(0));
    }

    #[test]
    fn ground_grade_is_the_finite_irrep(n in 2u32..=3, k in 1u32..=3, pick in any::<usize>()) {
        let all = weights_of(Factor::new(n, k).unwrap());
        let w = &all[pick % all.len()];
        let top: Vec<i64> = w.labels().iter().map(|&x| x as i64).collect();
        let ch = graded_character(w, 1).unwrap();
        prop_assert_eq!(ch.total(0), weyl_dimension(n as usize, &top));
    }

    #[test]
    fn torus_class_group(l in 2u32..=3, m in 1u32..=4, a in any::<usize>(), b in any::<usize>()) {
        let classes = torus_classes(l, m).unwrap();
        let (x, y) = (&classes[a % classes.len()], &classes[b % classes.len()]);
        prop_assert_eq!(x.add(y), y.add(x));
        prop_assert!(x.add(&x.negate()).is_zero());
        prop_assert_eq!(x.add(y).charge(), (x.charge() + y.charge()) % l);
        prop_assert!(classes.contains(&x.add(y)));
    }

    #[test]
    fn identification_orbits_partition_exp(n in 2u32..=3, a in 1u32..=3, b in 1u32..=2) {
        let c = DiagonalCoset::new(CosetSpec::new(n, a, b).unwrap()).unwrap();
        let exp = c.exp_set();
        let id = c.identification_orbits();
        let total: usize = id.orbits.iter().map(|o| o.size()).sum();
        prop_assert_eq!(total, exp.len());
        for s in &exp {
            prop_assert_eq!(id.orbits.iter().filter(|o| o.contains(s)).count(), 1);
            prop_assert!(s.satisfies_selection_rule());
        }
    }
}
