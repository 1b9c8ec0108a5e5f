use std::sync::Arc;

use golodkit::exactmath::{parse_poly, Field, Homogeneity, IntPolynomial, Monomial, Polynomial, Rational, VarContext};
use num_bigint::BigInt;
use proptest::prelude::*;

fn ctx() -> Arc<VarContext> {
    VarContext::new(&["x", "y", "z"]).unwrap()
}

fn poly_from(ctx: &Arc<VarContext>, field: Field, terms: &[([u32; 3], i64)]) -> Polynomial {
    Polynomial::from_terms(
        ctx,
        field,
        terms.iter().map(|(e, c)| (Monomial::new(e.to_vec()), field.from_int(*c))),
    )
}

fn terms() -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    prop::collection::vec(([0u32..3, 0u32..3, 0u32..3], -6i64..=6), 0..6)
}

fn homogeneous_terms(d: u32) -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    prop::collection::vec((0..=d, 0..=d, 1i64..=5), 1..5).prop_map(move |v| {
        v.into_iter()
            .filter(|(a, b, _)| a + b <= d)
            .map(|(a, b, c)| ([a, b, d - a - b], c))
            .collect::<Vec<_>>()
    })
    .prop_filter("empty", |v| !v.is_empty())
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(7).unwrap()), Just(Field::prime(32003).unwrap())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn ring_axioms(f in fields(), a in terms(), b in terms(), c in terms()) {
        let ctx = ctx();
        let (a, b, c) = (poly_from(&ctx, f, &a), poly_from(&ctx, f, &b), poly_from(&ctx, f, &c));
        let zero = Polynomial::zero(&ctx, f);
        let one = Polynomial::constant(&ctx, f, f.one());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.add(&zero).unwrap(), a.clone());
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.add(&a.neg()).unwrap(), zero);
    }

    #[test]
    fn print_parse_roundtrip(a in terms()) {
        let ctx = ctx();
        let p = poly_from(&ctx, Field::Rational, &a);
        let back = parse_poly(&p.to_string(), &ctx, Field::Rational).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn products_of_homogeneous_are_homogeneous(
        (d1, a) in (0u32..4).prop_flat_map(|d| (Just(d), homogeneous_terms(d))),
        (d2, b) in (0u32..4).prop_flat_map(|d| (Just(d), homogeneous_terms(d))),
    ) {
        let ctx = ctx();
        let (a, b) = (poly_from(&ctx, Field::Rational, &a), poly_from(&ctx, Field::Rational, &b));
        let p = a.mul(&b).unwrap();
        prop_assert_eq!(a.homogeneity(), Homogeneity::Degree(d1));
        prop_assert_eq!(b.homogeneity(), Homogeneity::Degree(d2));
        prop_assert_eq!(p.homogeneity(), Homogeneity::Degree(d1 + d2));
    }

    #[test]
    fn horner_matches_naive(c in prop::collection::vec(-20i64..=20, 1..9), n in -9i64..=9, d in 1i64..=9) {
        let p = IntPolynomial::from_i64(&c);
        let x = Rational::new(n, d);
        let naive = c.iter().enumerate().fold(Rational::zero(), |acc, (k, ck)| {
            acc.add(&Rational::from_int(*ck).mul(&x.pow(k as u32)))
        });
        prop_assert_eq!(p.eval(&x), naive.clone());
        prop_assert_eq!(p.sign_at(&x), naive.signum());
        let xi = BigInt::from(n);
        prop_assert_eq!(Rational::from_bigint(p.eval_int(&xi)), p.eval(&Rational::from_int(n)));
    }

    #[test]
    fn intpoly_division_and_gcd(a in prop::collection::vec(-5i64..=5, 1..5), b in prop::collection::vec(-5i64..=5, 1..4)) {
        let a = IntPolynomial::from_i64(&a);
        let b = IntPolynomial::from_i64(&b);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let prod = a.mul(&b);
        prop_assert_eq!(prod.div_exact(&b), Some(a.clone()));
        let g = prod.gcd(&a);
        prop_assert!(prod.primitive_part().div_exact(&g).is_some() || g.is_zero());
        prop_assert!(a.primitive_part().div_exact(&g).is_some());
    }
}

#[test]
fn parse_rejects_garbage() {
    let ctx = ctx();
    for bad in ["x +", "x**2", "(x", "w", "x^-1", "2x y"] {
        assert!(parse_poly(bad, &ctx, Field::Rational).is_err(), "{bad} parsed");
    }
}
