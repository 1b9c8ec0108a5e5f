mod common;

use common::*;
use golodkit::analysis::{real_roots_unit_interval, default_epsilon};
use golodkit::exactmath::{IntPolynomial, Rational};
use proptest::prelude::*;

#[test]
fn sturm_agrees_with_grid_on_200() {
    sturm_vs_grid(77, 200).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn double_root_at_one_half(q in prop::collection::vec(-5i64..=5, 1..5)) {
        let q = IntPolynomial::from_i64(&q);
        prop_assume!(!q.is_zero() && q.sign_at(&Rational::new(1, 2)) != 0);
        let p = IntPolynomial::from_i64(&[1, -2]).pow(2).mul(&q);
        let rep = real_roots_unit_interval(&p, &default_epsilon()).unwrap();
        let half = rep.roots.iter().find(|r| r.exact() == Some(&Rational::new(1, 2)));
        prop_assert!(half.is_some(), "1/2 not isolated exactly in {:?}", rep.roots);
        prop_assert_eq!(half.unwrap().multiplicity, 2);
        for r in &rep.roots {
            prop_assert!(r.width() <= default_epsilon());
        }
    }
}
