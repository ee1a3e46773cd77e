use std::sync::Arc;

use ncalg::exactnum::{factor_univariate, squarefree_part, Field, Monomial, Poly, PolyRing, UniPoly};
use proptest::prelude::*;

fn ring(field: Field) -> Arc<PolyRing> {
    PolyRing::new(field, &["x", "y"])
}

/// Builds a polynomial in `x, y` from `(coeff, ex, ey)` triples.
fn build(r: &Arc<PolyRing>, terms: &[(i64, u8, u8)]) -> Poly {
    let mut p = Poly::zero(r);
    for &(c, a, b) in terms {
        let m = Monomial(vec![a as i64, b as i64]);
        p = &p + &Poly::monomial(r, m, r.field().from_i64(c));
    }
    p
}

fn terms() -> impl Strategy<Value = Vec<(i64, u8, u8)>> {
    prop::collection::vec((-9i64..=9, 0u8..4, 0u8..4), 0..6)
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(5).unwrap()),
        Just(Field::prime(101).unwrap()),
    ]
}

fn uni(field: Field, coeffs: &[i64]) -> Poly {
    let r = PolyRing::new(field, &["x"]);
    Poly::from_univariate(&r, &UniPoly::from_i64s(field, coeffs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(field in fields(), a in terms(), b in terms(), c in terms()) {
        let r = ring(field);
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn evaluation_is_multiplicative(field in fields(), a in terms(), b in terms(), x in -20i64..20, y in -20i64..20) {
        let r = ring(field);
        let (a, b) = (build(&r, &a), build(&r, &b));
        let pt = [field.from_i64(x), field.from_i64(y)];
        let lhs = (&a * &b).eval_all(&pt).unwrap();
        let rhs = a.eval_all(&pt).unwrap() * b.eval_all(&pt).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = (&a + &b).eval_all(&pt).unwrap();
        prop_assert_eq!(sum, a.eval_all(&pt).unwrap() + b.eval_all(&pt).unwrap());
    }

    #[test]
    fn rational_factors_remultiply(c in prop::collection::vec(-12i64..=12, 6)) {
        let mut coeffs = c.clone();
        coeffs.push(1);
        let f = uni(Field::Rationals, &coeffs);
        let fact = factor_univariate(&f).unwrap();
        prop_assert_eq!(fact.expand(&f), f);
        for (g, _) in &fact.factors {
            prop_assert!(g.leading().unwrap().1.is_one());
        }
    }

    #[test]
    fn rational_products_refactor(a in prop::collection::vec(-5i64..=5, 1..4), b in prop::collection::vec(-5i64..=5, 1..4), lead in 1i64..4) {
        let mut a = a.clone();
        a.push(lead);
        let mut b = b.clone();
        b.push(1);
        let f = &uni(Field::Rationals, &a) * &uni(Field::Rationals, &b);
        let fact = factor_univariate(&f).unwrap();
        prop_assert_eq!(fact.expand(&f), f);
        let degrees: i64 = fact.factors.iter().map(|(g, m)| g.total_degree() * *m as i64).sum();
        prop_assert_eq!(degrees, (a.len() + b.len() - 2) as i64);
    }

    #[test]
    fn prime_field_factors_remultiply(p in prop_oneof![Just(2u64), Just(3), Just(7), Just(65537)], c in prop::collection::vec(0i64..1000, 1..9), lead in 1i64..50) {
        let field = Field::prime(p).unwrap();
        let mut coeffs = c.clone();
        coeffs.push(lead);
        let f = uni(field, &coeffs);
        prop_assume!(!f.is_zero() && f.total_degree() > 0);
        let fact = factor_univariate(&f).unwrap();
        prop_assert_eq!(fact.expand(&f), f);
    }

    #[test]
    fn squarefree_part_is_squarefree(field in fields(), c in prop::collection::vec(-6i64..=6, 1..5), e in 1u32..4) {
        let mut coeffs = c.clone();
        coeffs.push(1);
        let g = uni(field, &coeffs);
        prop_assume!(g.total_degree() > 0);
        let f = &g.pow(e) * &uni(field, &[-1, 1]);
        let s = squarefree_part(&f).unwrap();
        let su = s.to_univariate().unwrap();
        prop_assert!(su.is_squarefree());
        // every root multiplicity collapses: s divides f and f divides s^deg f
        let fu = f.to_univariate().unwrap();
        prop_assert!(su.divides(&fu));
        prop_assert!(fu.divides(&su.pow(fu.degree().unwrap() as u32)));
    }
}

#[test]
fn frobenius_squarefree_part() {
    for p in [2u64, 3, 5, 7] {
        let field = Field::prime(p).unwrap();
        let mut c = vec![0i64; p as usize];
        c.push(1);
        let s = squarefree_part(&uni(field, &c)).unwrap();
        assert_eq!(s, uni(field, &[0, 1]));
    }
}

#[test]
fn laurent_zero_substitution_fails() {
    let r = PolyRing::with_laurent(Field::Rationals, &[("x", true)]);
    let f = Poly::parse("x^-1", &r).unwrap();
    assert!(f.eval_at(&[(0, Field::Rationals.zero())]).is_err());
}
