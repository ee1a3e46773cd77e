#![allow(dead_code)]

use ncalg::algebra::{
    cyclic_group_algebra, direct_sum, field_algebra, generated_matrix_algebra, matrix_algebra,
    monomial_quotient, quaternion_algebra, truncated_polynomial, upper_triangular, StructAlgebra,
};
use ncalg::exactnum::{Field, Matrix, Scalar};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn example_local(field: Field) -> StructAlgebra {
    let vars = vec!["x".to_string(), "y".to_string()];
    monomial_quotient(field, &vars, &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap()
}

fn random_matrix(field: Field, n: usize, rng: &mut StdRng, upper: bool) -> Matrix {
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if (upper && j < i) || rng.gen_bool(0.4) {
                        field.zero()
                    } else {
                        field.from_i64(rng.gen_range(-2..=2))
                    }
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(field, rows)
}

fn random_block(field: Field, rng: &mut StdRng) -> StructAlgebra {
    match rng.gen_range(0..9) {
        0 => field_algebra(field),
        1 => matrix_algebra(field, 2),
        2 => upper_triangular(field, 2),
        3 => truncated_polynomial(field, "x", rng.gen_range(2..4)).unwrap(),
        4 => cyclic_group_algebra(field, rng.gen_range(2..4)),
        5 => example_local(field),
        6 if field == Field::Rationals => {
            quaternion_algebra(field, &field.from_i64(-1), &field.from_i64(-1))
        }
        _ => {
            let n = rng.gen_range(2..4);
            let upper = rng.gen_bool(0.6);
            let gens: Vec<Matrix> = (0..rng.gen_range(1..3))
                .map(|_| random_matrix(field, n, rng, upper))
                .collect();
            generated_matrix_algebra(field, n, &gens).unwrap()
        }
    }
}

/// A seeded algebra of dimension at most `max_dim`, built as a direct sum of small blocks.
pub fn random_algebra(field: Field, seed: u64, max_dim: usize) -> StructAlgebra {
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let k = rng.gen_range(1..4);
        let blocks: Vec<StructAlgebra> = (0..k).map(|_| random_block(field, &mut rng)).collect();
        let total: usize = blocks.iter().map(|b| b.dim()).sum();
        if total > max_dim {
            continue;
        }
        let refs: Vec<&StructAlgebra> = blocks.iter().collect();
        return direct_sum(&refs).unwrap();
    }
}

pub fn random_vector(a: &StructAlgebra, rng: &mut StdRng) -> Vec<Scalar> {
    (0..a.dim()).map(|_| a.field().from_i64(rng.gen_range(-3..=3))).collect()
}

/// Every vector of `F_p^m`.
pub fn all_vectors(field: Field, m: usize) -> Vec<Vec<Scalar>> {
    let elems = field.elements().expect("finite field");
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for v in &out {
            for e in &elems {
                let mut w = v.clone();
                w.push(e.clone());
                next.push(w);
            }
        }
        out = next;
    }
    out
}

pub fn is_nilpotent(a: &StructAlgebra, x: &[Scalar]) -> bool {
    a.nilpotency_index(x).is_some()
}
