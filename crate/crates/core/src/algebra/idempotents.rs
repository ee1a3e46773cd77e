//! Central idempotents via the center, its radical and minimal polynomials.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::exactnum::factor::{factor_uni, DEFAULT_SEED};
use crate::exactnum::{Field, Matrix, Scalar, Subspace, UniPoly};

use super::center::{center_algebra, center_to_ambient};
use super::constructions::quotient;
use super::radical::radical_candidate;
use super::structure::StructAlgebra;

pub const DEFAULT_IDEMPOTENT_CAP: usize = 1 << 10;

/// Primitive central idempotents and the full set `CI(A)` of their subset sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentReport {
    pub primitive: Vec<Vec<Scalar>>,
    /// Sorted; contains `0` and `1`.
    pub all: Vec<Vec<Scalar>>,
    /// Number of lifting rounds used for the slowest idempotent.
    pub lifting_steps: usize,
}

/// Minimal polynomial of `z` inside an algebra whose identity is `unit`.
pub fn minimal_polynomial(a: &StructAlgebra, unit: &[Scalar], z: &[Scalar]) -> UniPoly {
    let field = a.field();
    let mut powers = vec![unit.to_vec()];
    loop {
        let next = a.mul(powers.last().unwrap(), z);
        let m = Matrix::from_columns(field, a.dim(), &powers);
        if let Some(c) = m.solve(&next) {
            let mut coeffs: Vec<Scalar> = c.iter().map(|x| -x).collect();
            coeffs.push(field.one());
            return UniPoly::new(field, coeffs);
        }
        powers.push(next);
    }
}

/// `f(z)` with constant term acting as a multiple of `unit`.
pub fn eval_poly_at(a: &StructAlgebra, unit: &[Scalar], f: &UniPoly, z: &[Scalar]) -> Vec<Scalar> {
    let mut acc = a.zero();
    for c in f.coeffs().iter().rev() {
        acc = a.mul(&acc, z);
        acc = a.add(&acc, &a.scale(c, unit));
    }
    acc
}

fn random_element(a: &StructAlgebra, space: &[Vec<Scalar>], rng: &mut StdRng) -> Vec<Scalar> {
    let field = a.field();
    let mut v = a.zero();
    for b in space {
        let c = match field {
            Field::Rationals => field.from_i64(rng.gen_range(-6..=6)),
            Field::Prime(p) => field.from_i64(rng.gen_range(0..p.min(1 << 40)) as i64),
        };
        v = a.add(&v, &a.scale(&c, b));
    }
    v
}

/// Splits the commutative semisimple `c` into primitive idempotents.
fn split_semisimple_commutative(c: &StructAlgebra, seed: u64) -> Result<Vec<Vec<Scalar>>> {
    let field = c.field();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut done = Vec::new();
    let mut pending = vec![c.identity().to_vec()];
    while let Some(e) = pending.pop() {
        // the component e*C, spanned by e*b_i
        let comp: Vec<Vec<Scalar>> =
            Subspace::span(field, c.dim(), &(0..c.dim()).map(|i| c.mul(&e, &c.basis_vector(i))).collect::<Vec<_>>())
                .basis()
                .to_vec();
        let d = comp.len();
        let mut split = None;
        let mut attempts = 0;
        let mut candidates = comp.clone().into_iter();
        while split.is_none() {
            let z = match candidates.next() {
                Some(z) => z,
                None => {
                    attempts += 1;
                    if attempts > 200 {
                        return Err(Error::Decomposition(
                            "could not split a commutative component".into(),
                        ));
                    }
                    random_element(c, &comp, &mut rng)
                }
            };
            let mu = minimal_polynomial(c, &e, &z);
            let (_, factors) = factor_uni(&mu, seed)?;
            if factors.len() > 1 {
                split = Some((z, mu, factors));
            } else if mu.degree() == Some(d) {
                // a field: z generates a degree-d extension
                break;
            }
        }
        match split {
            None => done.push(e),
            Some((z, mu, factors)) => {
                for (fi, k) in &factors {
                    if *k != 1 {
                        return Err(Error::Decomposition("minimal polynomial not squarefree".into()));
                    }
                    let g = mu.exact_div(fi).unwrap();
                    let (_, s, _) = g.ext_gcd(fi);
                    let u = g.mul(&s).rem(&mu);
                    pending.push(eval_poly_at(c, &e, &u, &z));
                }
            }
        }
    }
    Ok(done)
}

/// `x <- 3x^2 - 2x^3` until idempotent; returns the idempotent and the number of rounds.
pub fn lift_idempotent(a: &StructAlgebra, x: &[Scalar]) -> (Vec<Scalar>, usize) {
    let field = a.field();
    let mut x = x.to_vec();
    let mut steps = 0;
    loop {
        let x2 = a.mul(&x, &x);
        if x2 == x {
            return (x, steps);
        }
        let x3 = a.mul(&x2, &x);
        x = a.sub(&a.scale(&field.from_i64(3), &x2), &a.scale(&field.from_i64(2), &x3));
        steps += 1;
        assert!(steps <= 64, "idempotent lifting did not converge");
    }
}

/// Primitive central idempotents of `A`, computed inside `Z(A)`.
pub fn primitive_central_idempotents(a: &StructAlgebra, seed: u64) -> Result<(Vec<Vec<Scalar>>, usize)> {
    let (z, zspace) = center_algebra(a)?;
    let jz = radical_candidate(&z)?;
    let q = quotient(&z, &jz)?;
    let reduced = split_semisimple_commutative(&q.algebra, seed)?;
    let mut out = Vec::new();
    let mut max_steps = 0;
    for e in reduced {
        let (lifted, steps) = lift_idempotent(&z, &q.lift(&e, z.dim()));
        max_steps = max_steps.max(steps);
        out.push(center_to_ambient(&zspace, &lifted));
    }
    out.sort();
    let sum = out.iter().fold(a.zero(), |s, e| a.add(&s, e));
    if sum != a.identity() {
        return Err(Error::Decomposition("primitive idempotents do not sum to 1".into()));
    }
    for (i, e) in out.iter().enumerate() {
        for f in &out[..i] {
            if !StructAlgebra::is_zero_vec(&a.mul(e, f)) {
                return Err(Error::Decomposition("primitive idempotents are not orthogonal".into()));
            }
        }
    }
    Ok((out, max_steps))
}

/// The full set `CI(A)`; fails when `2^r` exceeds `cap`.
pub fn central_idempotents_with(a: &StructAlgebra, cap: usize, seed: u64) -> Result<IdempotentReport> {
    let (primitive, lifting_steps) = primitive_central_idempotents(a, seed)?;
    let r = primitive.len();
    let count = if r >= usize::BITS as usize { usize::MAX } else { 1usize << r };
    if count > cap {
        return Err(Error::IdempotentCapExceeded { count, cap });
    }
    let mut all = Vec::with_capacity(count);
    for mask in 0..count {
        let mut e = a.zero();
        for (i, p) in primitive.iter().enumerate() {
            if mask >> i & 1 == 1 {
                e = a.add(&e, p);
            }
        }
        all.push(e);
    }
    all.sort();
    Ok(IdempotentReport {
        primitive,
        all,
        lifting_steps,
    })
}

/// `CI(A)` with the default cap and seed.
pub fn central_idempotents(a: &StructAlgebra) -> Result<Vec<Vec<Scalar>>> {
    Ok(central_idempotents_with(a, DEFAULT_IDEMPOTENT_CAP, DEFAULT_SEED)?.all)
}

/// Whether the linear ansatz `e0 + e1 t + ... + ek t^k` can produce an idempotent of `A[t]`
/// with a nonconstant part: for each `e0` in `CI(A)` the first-order equation
/// `e0 e1 + e1 e0 = e1` must have only the zero central solution.
pub fn extension_idempotents_are_constant(a: &StructAlgebra, ci: &[Vec<Scalar>]) -> bool {
    let field = a.field();
    let zspace = super::center::center_subspace(a);
    let zb = zspace.basis();
    if zb.is_empty() {
        return true;
    }
    ci.iter().all(|e0| {
        let two = field.from_i64(2);
        let cols: Vec<Vec<Scalar>> = zb
            .iter()
            .map(|z| a.sub(&a.scale(&two, &a.mul(e0, z)), z))
            .collect();
        Matrix::from_columns(field, a.dim(), &cols).rank() == zb.len()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::constructions::{direct_sum, field_algebra, matrix_algebra, monomial_quotient};

    #[test]
    fn three_blocks_give_eight() {
        let f = Field::Rationals;
        let q = field_algebra(f);
        let m = matrix_algebra(f, 2);
        let a = direct_sum(&[&q, &q, &m]).unwrap();
        let ci = central_idempotents(&a).unwrap();
        assert_eq!(ci.len(), 8);
        assert!(ci.contains(&a.zero()));
        assert!(ci.contains(&a.identity().to_vec()));
    }

    #[test]
    fn local_and_simple_algebras() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let a = monomial_quotient(Field::Rationals, &vars, &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        assert_eq!(central_idempotents(&a).unwrap().len(), 2);
        let m = matrix_algebra(Field::prime(5).unwrap(), 2);
        assert_eq!(central_idempotents(&m).unwrap().len(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let f = Field::Rationals;
        let q = field_algebra(f);
        let a = direct_sum(&[&q, &q, &q]).unwrap();
        let err = central_idempotents_with(&a, 4, DEFAULT_SEED).unwrap_err();
        assert_eq!(err, Error::IdempotentCapExceeded { count: 8, cap: 4 });
    }

    #[test]
    fn lifting_through_nilpotents() {
        // Q[x]/(x^2) x Q: lift the image of (1 + x, 0)
        let f = Field::Rationals;
        let a = monomial_quotient(f, &["x".to_string()], &[vec![2]]).unwrap();
        let b = direct_sum(&[&a, &field_algebra(f)]).unwrap();
        let start = vec![f.one(), f.one(), f.zero()];
        let (e, steps) = lift_idempotent(&b, &start);
        assert_eq!(e, vec![f.one(), f.zero(), f.zero()]);
        assert!(steps <= 3);
    }
}
