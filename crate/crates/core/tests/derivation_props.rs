mod common;

use std::sync::Arc;

use common::{random_algebra, random_vector};
use ncalg::algebra::{jacobson_radical, matrix_algebra, poly_extension, StructAlgebra};
use ncalg::derivations::{ad, exp_automorphism, ml_over_family, square_zero_witness, Derivation, FamilyMember, HigherDerivation};
use ncalg::exactnum::{Field, Matrix, Poly, Scalar, Subspace};
use ncalg::witness::verify_iso;
use ncalg::Error;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn combination(a: &StructAlgebra, vs: &[Vec<Scalar>], rng: &mut StdRng) -> Vec<Scalar> {
    let mut acc = a.zero();
    for v in vs {
        acc = a.add(&acc, &a.scale(&a.field().from_i64(rng.gen_range(-2..=2)), v));
    }
    acc
}

fn matrix_family(a: &Arc<StructAlgebra>, n: usize) -> Vec<FamilyMember> {
    let mut fam = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                let x = a.basis_vector(a.label_index(&format!("e{i}{j}")).unwrap());
                fam.push(FamilyMember::Ordinary(ad(a, &x)));
            }
        }
    }
    fam
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inner_derivations_satisfy_leibniz(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = Arc::new(random_algebra(Field::Rationals, seed, 9));
        let x = random_vector(&a, &mut rng);
        let d = ad(&a, &x);
        let p = random_vector(&a, &mut rng);
        let q = random_vector(&a, &mut rng);
        // xpq - pqx = (xp - px)q + p(xq - qx)
        let lhs = a.sub(&a.mul(&x, &a.mul(&p, &q)), &a.mul(&a.mul(&p, &q), &x));
        prop_assert_eq!(d.apply(&a.mul(&p, &q)), lhs.clone());
        let rhs = a.add(&a.mul(&d.apply(&p), &q), &a.mul(&p, &d.apply(&q)));
        prop_assert_eq!(lhs, rhs);
        let images: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| d.image(i)).collect();
        prop_assert!(Derivation::new(&a, &images).is_ok());
    }

    #[test]
    fn radical_elements_give_lnds_whose_exp_fixes_the_kernel(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = Arc::new(random_algebra(Field::Rationals, seed, 8));
        let j = jacobson_radical(&a).unwrap();
        let x = combination(&a, &j, &mut rng);
        let d = ad(&a, &x);
        prop_assert!(d.is_locally_nilpotent());
        let w = exp_automorphism(&d, "t").unwrap();
        prop_assert!(verify_iso(&w).is_iso());
        let ext = w.forward.source().clone();
        for k in d.kernel().basis() {
            let e = ext.from_vector(k);
            prop_assert_eq!(w.forward.apply(&e).unwrap(), e);
        }
    }

    #[test]
    fn square_zero_inner_derivations_have_index_at_most_three(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = Arc::new(random_algebra(Field::Rationals, seed, 9));
        let mut xs: Vec<Vec<Scalar>> = square_zero_witness(&a).into_iter().map(|s| s.element().to_vec()).collect();
        let j = jacobson_radical(&a).unwrap();
        let y = combination(&a, &j, &mut rng);
        if a.mul(&y, &y).iter().all(Scalar::is_zero) {
            xs.push(y);
        }
        for x in xs {
            prop_assert!(a.mul(&x, &x).iter().all(Scalar::is_zero));
            let k = ad(&a, &x).nilpotency_index().unwrap();
            prop_assert!(k <= 3);
        }
    }

    #[test]
    fn exp_of_square_zero_ad_is_conjugation(seed in any::<u64>()) {
        // x in span{e12, e13} or span{e13, e23} squares to zero in M_3
        let mut rng = StdRng::seed_from_u64(seed);
        let f = Field::Rationals;
        let a = Arc::new(matrix_algebra(f, 3));
        let pick = if rng.gen_bool(0.5) { ["e12", "e13"] } else { ["e13", "e23"] };
        let mut x = a.zero();
        for l in pick {
            let c = f.from_i64(rng.gen_range(-3..=3));
            x = a.add(&x, &a.scale(&c, &a.basis_vector(a.label_index(l).unwrap())));
        }
        prop_assert!(a.mul(&x, &x).iter().all(Scalar::is_zero));
        let w = exp_automorphism(&ad(&a, &x), "t").unwrap();
        let ext = poly_extension(&a, &["t"]).unwrap();
        let t = Poly::var(ext.ring(), 0);
        let u = ext.one().add(&ext.from_vector(&x).scale_poly(&t));
        let uinv = ext.one().sub(&ext.from_vector(&x).scale_poly(&t));
        for i in 0..a.dim() {
            let b = ext.basis_element(i);
            prop_assert_eq!(w.forward.apply(&b).unwrap(), u.mul(&b).mul(&uinv));
        }
    }

    #[test]
    fn divided_powers_form_hasse_schmidt_derivations(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = Field::Rationals;
        let a = Arc::new(random_algebra(f, seed, 7));
        let x = combination(&a, &jacobson_radical(&a).unwrap(), &mut rng);
        let d = ad(&a, &x);
        let len = d.nilpotency_index().unwrap().max(1);
        // partial_n = delta^n / n!
        let mut maps = Vec::new();
        let mut cur: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| a.basis_vector(i)).collect();
        let mut fact = f.one();
        for n in 1..=len {
            cur = cur.iter().map(|v| d.apply(v)).collect();
            fact = &fact * &f.from_i64(n as i64);
            let inv = fact.inv().unwrap();
            maps.push(cur.iter().map(|v| a.scale(&inv, v)).collect::<Vec<_>>());
        }
        prop_assert!(HigherDerivation::new(&a, &maps).is_ok());
    }

    #[test]
    fn ml_shrinks_as_the_family_grows(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = Arc::new(random_algebra(Field::Rationals, seed, 9));
        let j = jacobson_radical(&a).unwrap();
        let fam: Vec<FamilyMember> = (0..4)
            .map(|_| FamilyMember::Ordinary(ad(&a, &combination(&a, &j, &mut rng))))
            .collect();
        let k = rng.gen_range(0..=fam.len());
        let small = ml_over_family(&a, &fam[..k]).unwrap();
        let big = ml_over_family(&a, &fam).unwrap();
        prop_assert!(small.ml.contains_subspace(&big.ml));
        prop_assert!(small.ml_z.contains_subspace(&big.ml_z));
        prop_assert!(big.ml.contains_subspace(&big.ml_z));
        // oracle: nullspace of the stacked derivation matrices
        let mut rows = Vec::new();
        for m in &fam {
            if let FamilyMember::Ordinary(d) = m {
                rows.extend((0..a.dim()).map(|i| d.matrix().row(i).to_vec()));
            }
        }
        let ns = Matrix::from_rows(a.field(), rows).nullspace();
        prop_assert_eq!(big.ml, Subspace::span(a.field(), a.dim(), &ns));
    }
}

#[test]
fn ml_of_matrix_unit_family_is_the_center() {
    for n in 2..=3 {
        let a = Arc::new(matrix_algebra(Field::Rationals, n));
        let ml = ml_over_family(&a, &matrix_family(&a, n)).unwrap();
        let scalars = Subspace::span(a.field(), a.dim(), &[a.identity().to_vec()]);
        assert_eq!(ml.ml, scalars);
        assert_eq!(ml.ml_z, scalars);
    }
}

#[test]
fn non_nilpotent_members_are_rejected() {
    let a = Arc::new(matrix_algebra(Field::Rationals, 2));
    let e11 = a.basis_vector(a.label_index("e11").unwrap());
    let r = ml_over_family(&a, &[FamilyMember::Ordinary(ad(&a, &e11))]);
    assert!(matches!(r, Err(Error::NotLocallyNilpotent)));
}
