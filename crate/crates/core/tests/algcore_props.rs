mod common;

use std::sync::Arc;

use common::{all_vectors, example_local, is_nilpotent, random_algebra, random_vector};
use ncalg::algebra::center::{center_algebra, center_to_ambient};
use ncalg::algebra::idempotents::extension_idempotents_are_constant;
use ncalg::algebra::membership::evaluate_certificate;
use ncalg::algebra::{
    center_basis, central_idempotents, direct_sum, field_algebra, is_unit, jacobson_radical,
    matrix_algebra, poly_extension, quaternion_algebra, radical_report, subalgebra_membership,
    upper_triangular, AlgElement, Membership, StructAlgebra,
};
use ncalg::exactnum::{Field, Poly, Scalar, Subspace};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// `J(A) = {a : ab nilpotent for every b}`, by enumeration.
fn brute_radical(a: &StructAlgebra) -> Vec<Vec<Scalar>> {
    let all = all_vectors(a.field(), a.dim());
    all.iter()
        .filter(|x| all.iter().all(|b| is_nilpotent(a, &a.mul(x, b))))
        .cloned()
        .collect()
}

fn brute_central_idempotents(a: &StructAlgebra) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = all_vectors(a.field(), a.dim())
        .into_iter()
        .filter(|e| a.mul(e, e) == *e && a.is_central(e))
        .collect();
    out.sort();
    out
}

fn small_prime_algebra(seed: u64) -> Option<StructAlgebra> {
    let p = if seed % 3 == 0 { 3 } else { 2 };
    let field = Field::prime(p).unwrap();
    let limit = if p == 2 { 6 } else { 4 };
    let a = random_algebra(field, seed, limit);
    (a.dim() <= limit).then_some(a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn radical_matches_enumeration(seed in any::<u64>()) {
        let Some(a) = small_prime_algebra(seed) else { return Ok(()) };
        let j = jacobson_radical(&a).unwrap();
        let space = Subspace::span(a.field(), a.dim(), &j);
        let brute = brute_radical(&a);
        let p = a.field().characteristic() as usize;
        prop_assert_eq!(brute.len(), p.pow(space.dimension() as u32));
        for v in &brute {
            prop_assert!(space.contains(v));
        }
    }

    #[test]
    fn idempotents_match_enumeration(seed in any::<u64>()) {
        let Some(a) = small_prime_algebra(seed) else { return Ok(()) };
        prop_assert_eq!(central_idempotents(&a).unwrap(), brute_central_idempotents(&a));
    }

    #[test]
    fn radical_certificate_over_rationals(seed in any::<u64>()) {
        let a = random_algebra(Field::Rationals, seed, 12);
        let r = radical_report(&a).unwrap();
        prop_assert!(a.is_ideal(&r.radical));
        prop_assert!(r.nilpotency_index <= a.dim() + 1);
        prop_assert!(r.quotient_semisimple);
        // J^dim = 0
        let mut power = r.radical.clone();
        for _ in 1..a.dim().max(1) {
            power = a.product_space(&power, &r.radical);
        }
        prop_assert!(power.is_zero());
    }

    #[test]
    fn idempotents_of_center_agree(seed in any::<u64>()) {
        let field = if seed % 2 == 0 { Field::Rationals } else { Field::prime(5).unwrap() };
        let a = random_algebra(field, seed, 12);
        let ci = central_idempotents(&a).unwrap();
        prop_assert!(ci.len().is_power_of_two());
        let (z, zspace) = center_algebra(&a).unwrap();
        let mut via_center: Vec<Vec<Scalar>> = central_idempotents(&z)
            .unwrap()
            .iter()
            .map(|e| center_to_ambient(&zspace, e))
            .collect();
        via_center.sort();
        prop_assert_eq!(&ci, &via_center);
        prop_assert!(extension_idempotents_are_constant(&a, &ci));
    }

    #[test]
    fn center_of_direct_sum(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_algebra(Field::Rationals, s1, 8);
        let b = random_algebra(Field::Rationals, s2, 8);
        let sum = direct_sum(&[&a, &b]).unwrap();
        let za = center_basis(&a);
        let zb = center_basis(&b);
        let zs = Subspace::span(sum.field(), sum.dim(), &center_basis(&sum));
        prop_assert_eq!(zs.dimension(), za.len() + zb.len());
        let pad = |v: &Vec<Scalar>, before: usize, after: usize| {
            let mut w = vec![sum.field().zero(); before];
            w.extend(v.iter().cloned());
            w.extend(std::iter::repeat(sum.field().zero()).take(after));
            w
        };
        for z in &za {
            prop_assert!(zs.contains(&pad(z, 0, b.dim())));
        }
        for z in &zb {
            prop_assert!(zs.contains(&pad(z, a.dim(), 0)));
        }
    }

    #[test]
    fn products_of_units_are_units(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = Arc::new(random_algebra(Field::Rationals, seed, 10));
        let ext = poly_extension(&a, &["t"]).unwrap();
        let t = Poly::var(ext.ring(), 0);
        // 1 + t^k n is a unit for nilpotent n
        let mut units = Vec::new();
        for j in jacobson_radical(&a).unwrap() {
            let n = ext.from_vector(&j).scale_poly(&t.pow(rng.gen_range(1..3)));
            units.push(ext.one().add(&n));
        }
        units.push(ext.one().scale(&a.field().from_i64(rng.gen_range(1..5))));
        let mut acc = ext.one();
        for u in &units {
            prop_assert!(is_unit(u).is_unit());
            acc = acc.mul(u);
        }
        let report = is_unit(&acc);
        let inv = report.inverse.clone().unwrap();
        prop_assert_eq!(acc.mul(&inv), ext.one());
        // a nonconstant determinant means non-unit
        let x = ext.from_vector(&random_vector(&a, &mut rng)).add(&ext.one().scale_poly(&t));
        let r = is_unit(&x);
        prop_assert_eq!(r.is_unit(), r.determinant.total_degree() == 0 && !r.determinant.is_zero());
    }

    #[test]
    fn units_over_division_algebra_sums_are_constant(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = Field::Rationals;
        let h = quaternion_algebra(f, &f.from_i64(-1), &f.from_i64(-1));
        let q = field_algebra(f);
        let a = Arc::new(direct_sum(&[&q, &h]).unwrap());
        let ext = poly_extension(&a, &["t"]).unwrap();
        let t = Poly::var(ext.ring(), 0);
        let c0 = ext.from_vector(&random_vector(&a, &mut rng));
        let c1 = ext.from_vector(&random_vector(&a, &mut rng)).scale_poly(&t);
        let x = c0.add(&c1);
        let r = is_unit(&x);
        if r.is_unit() {
            prop_assert_eq!(x.t_degree(), 0);
        }
    }

    #[test]
    fn membership_certificates_evaluate(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = Arc::new(random_algebra(Field::Rationals, seed, 6));
        let ext = poly_extension(&a, &["t"]).unwrap();
        let t = Poly::var(ext.ring(), 0);
        let g = ext.from_vector(&random_vector(&a, &mut rng)).scale_poly(&t);
        let h = ext.from_vector(&random_vector(&a, &mut rng)).add(&ext.one().scale_poly(&t.pow(2)));
        let gens = vec![g.clone(), h.clone()];
        let target = g.mul(&h).add(&h.scale(&a.field().from_i64(3)));
        match subalgebra_membership(&target, &gens, 3) {
            Membership::Member { certificate, .. } => {
                prop_assert_eq!(evaluate_certificate(&certificate, &gens, &target), target);
            }
            other => prop_assert!(false, "expected membership, got {:?}", other),
        }
    }
}

#[test]
fn enumerated_idempotents_of_extension_are_constant() {
    // e = e0 + e1 t + e2 t^2 over F_2 with e^2 = e and e central forces e1 = e2 = 0
    let f2 = Field::prime(2).unwrap();
    for a in [
        example_local(f2),
        direct_sum(&[&field_algebra(f2), &field_algebra(f2)]).unwrap(),
        upper_triangular(f2, 2),
    ] {
        let a = Arc::new(a);
        let ext = poly_extension(&a, &["t"]).unwrap();
        let t = Poly::var(ext.ring(), 0);
        let z = center_basis(&a);
        let zvecs = all_vectors(f2, z.len());
        let to_elem = |c: &Vec<Scalar>| ext.from_vector(&center_to_ambient(&Subspace::span(f2, a.dim(), &z), c));
        let mut found = Vec::new();
        for c0 in &zvecs {
            for c1 in &zvecs {
                for c2 in &zvecs {
                    let e: AlgElement = to_elem(c0)
                        .add(&to_elem(c1).scale_poly(&t))
                        .add(&to_elem(c2).scale_poly(&t.pow(2)));
                    if e.mul(&e) == e {
                        found.push(e);
                    }
                }
            }
        }
        assert!(found.iter().all(|e| e.t_degree() <= 0));
        assert_eq!(found.len(), central_idempotents(&a).unwrap().len());
    }
}

#[test]
fn center_of_extension_is_center_tensor_polynomials() {
    // commutation equations solved degreewise: coefficients of t^k must lie in Z(A)
    let a = Arc::new(upper_triangular(Field::Rationals, 2));
    let z = Subspace::span(a.field(), a.dim(), &center_basis(&a));
    let ext = poly_extension(&a, &["t"]).unwrap();
    let t = Poly::var(ext.ring(), 0);
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let mut x = ext.zero();
        for k in 0..4 {
            x = x.add(&ext.from_vector(&random_vector(&a, &mut rng)).scale_poly(&t.pow(k)));
        }
        let central = x.is_central();
        let coefficientwise = x
            .support()
            .iter()
            .all(|m| z.contains(&x.coefficient_vector(m)));
        assert_eq!(central, coefficientwise);
    }
    let w = ext.one().scale_poly(&t.pow(3));
    assert!(w.is_central());
}

#[test]
fn matrix_units_in_extension_are_not_constant() {
    // semisimple but not a sum of division rings: 1 + t*e12 is a unit of positive degree
    let a = Arc::new(matrix_algebra(Field::Rationals, 2));
    let ext = poly_extension(&a, &["t"]).unwrap();
    let x = ext.parse("1 + t*e12").unwrap();
    assert!(is_unit(&x).is_unit());
    assert_eq!(x.t_degree(), 1);
}
