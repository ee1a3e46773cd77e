//! The Jacobson radical (equal to the prime radical in finite dimension).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Field, Matrix, Scalar, Subspace};

use super::constructions::quotient;
use super::structure::StructAlgebra;

/// A radical together with its post hoc certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalReport {
    pub radical: Subspace,
    /// Smallest `k` with `J^k = 0`.
    pub nilpotency_index: usize,
    pub quotient_dim: usize,
    pub quotient_semisimple: bool,
}

fn gram_matrix(a: &StructAlgebra, basis: &[Vec<Scalar>]) -> Matrix {
    let rows = basis
        .iter()
        .map(|u| {
            (0..a.dim())
                .map(|j| a.reg_trace(&a.mul(u, &a.basis_vector(j))))
                .collect()
        })
        .collect();
    Matrix::from_rows(a.field(), rows)
}

/// Left kernel of `rows`, mapped back through `basis`.
fn kernel_combinations(a: &StructAlgebra, basis: &[Vec<Scalar>], values: Matrix) -> Subspace {
    let field = a.field();
    let kernel = values.transpose().nullspace();
    let vecs: Vec<Vec<Scalar>> = kernel
        .iter()
        .map(|k| {
            let mut v = a.zero();
            for (c, u) in k.iter().zip(basis) {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(u) {
                    *x += &(c * y);
                }
            }
            v
        })
        .collect();
    Subspace::span(field, a.dim(), &vecs)
}

fn lift_matrix(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|s| BigInt::from(s.residue().expect("prime field")))
                .collect()
        })
        .collect()
}

fn int_mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
        for x in out[i].iter_mut() {
            *x = x.mod_floor(modulus);
        }
    }
    out
}

/// `Tr(L^(p^i)) / p^i mod p` for an integer lift of `L`, or `None` if the division is not exact.
fn scaled_power_trace(m: &Matrix, p: u64, i: u32) -> Option<u64> {
    let pb = BigInt::from(p);
    let pi = num_traits::pow(pb.clone(), i as usize);
    let modulus = &pi * &pb;
    let mut base = lift_matrix(m);
    let n = base.len();
    let mut acc: Vec<Vec<BigInt>> = (0..n)
        .map(|r| (0..n).map(|c| BigInt::from((r == c) as u8)).collect())
        .collect();
    let mut e = pi.clone();
    let two = BigInt::from(2);
    while !e.is_zero() {
        if e.is_odd() {
            acc = int_mat_mul(&acc, &base, &modulus);
        }
        base = int_mat_mul(&base, &base, &modulus);
        e /= &two;
    }
    let tr: BigInt = (0..n).map(|k| acc[k][k].clone()).sum::<BigInt>().mod_floor(&modulus);
    let (q, r) = tr.div_rem(&pi);
    r.is_zero().then(|| q.mod_floor(&pb).to_u64().unwrap())
}

fn radical_char_zero(a: &StructAlgebra) -> Subspace {
    let basis: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| a.basis_vector(i)).collect();
    kernel_combinations(a, &basis, gram_matrix(a, &basis))
}

/// Iterated power-trace kernels over `F_p`.
fn radical_char_p(a: &StructAlgebra, p: u64) -> Result<Subspace> {
    let field = a.field();
    let m = a.dim();
    let mut levels = 0u32;
    let mut reach = p;
    while reach as usize <= m {
        levels += 1;
        reach = reach.saturating_mul(p);
    }
    let mut current = Subspace::full(field, m);
    for i in 0..=levels {
        if current.is_zero() {
            break;
        }
        let basis = current.basis().to_vec();
        let mut rows = Vec::new();
        for u in &basis {
            let mut row = Vec::new();
            for j in 0..m {
                let prod = a.mul(u, &a.basis_vector(j));
                let g = if i == 0 {
                    a.reg_trace(&prod)
                } else {
                    let v = scaled_power_trace(&a.left_mult(&prod), p, i).ok_or_else(|| {
                        Error::Decomposition("power trace not divisible as expected".into())
                    })?;
                    field.from_i64(v as i64)
                };
                row.push(g);
            }
            rows.push(row);
        }
        current = kernel_combinations(a, &basis, Matrix::from_rows(field, rows));
    }
    Ok(current)
}

/// Radical candidate without the post hoc checks.
pub fn radical_candidate(a: &StructAlgebra) -> Result<Subspace> {
    if a.dim() == 0 {
        return Ok(Subspace::zero(a.field(), 0));
    }
    match a.field() {
        Field::Rationals => Ok(radical_char_zero(a)),
        Field::Prime(p) => radical_char_p(a, p),
    }
}

fn is_semisimple_unchecked(a: &StructAlgebra) -> Result<bool> {
    match a.field() {
        Field::Rationals => {
            let basis: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| a.basis_vector(i)).collect();
            Ok(gram_matrix(a, &basis).rank() == a.dim())
        }
        Field::Prime(_) => Ok(radical_candidate(a)?.is_zero()),
    }
}

/// `J(A)` with its certificate: `J` is a nilpotent ideal and `A/J` is semisimple.
pub fn radical_report(a: &StructAlgebra) -> Result<RadicalReport> {
    let j = radical_candidate(a)?;
    if !a.is_ideal(&j) {
        return Err(Error::Decomposition("radical candidate is not an ideal".into()));
    }
    let nilpotency_index = a
        .ideal_nilpotency_index(&j)
        .ok_or_else(|| Error::Decomposition("radical candidate is not nilpotent".into()))?;
    let q = quotient(a, &j)?;
    let quotient_semisimple = is_semisimple_unchecked(&q.algebra)?;
    if !quotient_semisimple {
        return Err(Error::Decomposition("quotient by the radical candidate is not semisimple".into()));
    }
    Ok(RadicalReport {
        radical: j,
        nilpotency_index,
        quotient_dim: q.algebra.dim(),
        quotient_semisimple,
    })
}

/// Echelonized basis of `J(A)`, verified post hoc.
pub fn jacobson_radical(a: &StructAlgebra) -> Result<Vec<Vec<Scalar>>> {
    Ok(radical_report(a)?.radical.basis().to_vec())
}

pub fn is_semisimple(a: &StructAlgebra) -> Result<bool> {
    Ok(radical_report(a)?.radical.is_zero())
}
