//! Derivations and Hasse-Schmidt derivations of finite-dimensional algebras,
//! the automorphisms `exp(t*delta)` and `G_t`, and Makar-Limanov kernels over explicit families.

use std::sync::Arc;

use crate::algebra::center::center_subspace;
use crate::algebra::{poly_extension, AlgElement, StructAlgebra};
use crate::error::{Error, Result};
use crate::exactnum::{parse::invert_monomial, Field, Matrix, Poly, PolyMatrix, Scalar, Subspace};
use crate::witness::{verify_hom, verify_iso, HomMap, HomReport, HomWitness};

/// A linear map `delta` with `delta(b_j)` in column `j`, satisfying the Leibniz rule.
#[derive(Clone, Debug)]
pub struct Derivation {
    algebra: Arc<StructAlgebra>,
    matrix: Matrix,
}

fn check_shape(a: &StructAlgebra, images: &[Vec<Scalar>]) -> Result<()> {
    if images.len() != a.dim() || images.iter().any(|v| v.len() != a.dim()) {
        return Err(Error::Malformed(format!("expected {0} images with {0} coordinates", a.dim())));
    }
    Ok(())
}

impl Derivation {
    /// Checks `delta(b_i b_j) = delta(b_i) b_j + b_i delta(b_j)` on all basis pairs.
    pub fn new(algebra: &Arc<StructAlgebra>, images: &[Vec<Scalar>]) -> Result<Derivation> {
        check_shape(algebra, images)?;
        let d = Derivation {
            algebra: algebra.clone(),
            matrix: Matrix::from_columns(algebra.field(), algebra.dim(), images),
        };
        let a = &**algebra;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = d.apply(a.product_of_basis(i, j));
                let rhs = a.add(&a.mul(&images[i], &a.basis_vector(j)), &a.mul(&a.basis_vector(i), &images[j]));
                if lhs != rhs {
                    return Err(Error::LeibnizViolation(a.labels()[i].clone(), a.labels()[j].clone()));
                }
            }
        }
        Ok(d)
    }

    pub fn zero(algebra: &Arc<StructAlgebra>) -> Derivation {
        Derivation {
            algebra: algebra.clone(),
            matrix: Matrix::zeros(algebra.field(), algebra.dim(), algebra.dim()),
        }
    }

    pub fn algebra(&self) -> &Arc<StructAlgebra> {
        &self.algebra
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    pub fn image(&self, i: usize) -> Vec<Scalar> {
        self.matrix.column(i)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn neg(&self) -> Derivation {
        Derivation {
            algebra: self.algebra.clone(),
            matrix: self.matrix.scale(&-self.algebra.field().one()),
        }
    }

    pub fn kernel(&self) -> Subspace {
        let f = self.algebra.field();
        Subspace::span(f, self.algebra.dim(), &self.matrix.nullspace())
    }

    /// Smallest `k` with `delta^k = 0`, or `None`. On a finite-dimensional algebra local
    /// nilpotency is nilpotency of the matrix, so `k <= dim` whenever it exists.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let n = self.algebra.dim();
        let mut power = self.matrix.clone();
        for k in 1..=n.max(1) {
            if power.is_zero() {
                return Some(k);
            }
            power = power.mul(&self.matrix);
        }
        None
    }

    pub fn is_locally_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }
}

/// The inner derivation `a -> xa - ax`.
pub fn ad(algebra: &Arc<StructAlgebra>, x: &[Scalar]) -> Derivation {
    Derivation {
        algebra: algebra.clone(),
        matrix: algebra.left_mult(x).sub(&algebra.right_mult(x)),
    }
}

/// `sum_i t^i / i! * M^i` for a nilpotent matrix `M`, as images of the basis in `A[t]`.
fn exp_images(d: &Derivation, t: &Poly, ext: &crate::algebra::Extension) -> Vec<AlgElement> {
    let a = &d.algebra;
    let f = a.field();
    (0..a.dim())
        .map(|j| {
            let mut v = a.basis_vector(j);
            let mut acc = ext.zero();
            let mut fact = f.one();
            let mut i = 0u32;
            while !v.iter().all(Scalar::is_zero) {
                let coeff = t.pow(i).scale(&fact.inv().unwrap());
                acc = acc.add(&ext.from_vector(&v).scale_poly(&coeff));
                v = d.apply(&v);
                i += 1;
                fact = &fact * &f.from_i64(i as i64);
            }
            acc
        })
        .collect()
}

/// `exp(t*delta): a -> sum t^i/i! delta^i(a)`, `t -> t`, with inverse `exp(-t*delta)`;
/// both directions are verified before returning.
pub fn exp_automorphism(d: &Derivation, var: &str) -> Result<HomWitness> {
    let f = d.algebra.field();
    if f.characteristic() != 0 {
        return Err(Error::PositiveCharacteristic(f.tag()));
    }
    if !d.is_locally_nilpotent() {
        return Err(Error::NotLocallyNilpotent);
    }
    let ext = poly_extension(&d.algebra, &[var])?;
    let t = Poly::var(ext.ring(), 0);
    let forward = HomMap::new(ext.clone(), ext.clone(), exp_images(d, &t, &ext), vec![ext.var(0)])?;
    let inverse = HomMap::new(ext.clone(), ext.clone(), exp_images(&d.neg(), &t, &ext), vec![ext.var(0)])?;
    let w = HomWitness::new(forward, Some(inverse))?;
    if !verify_iso(&w).is_iso() {
        return Err(Error::Unverified);
    }
    Ok(w)
}

/// `partial_0 = id, partial_1, .., partial_N`, zero beyond `N`.
#[derive(Clone, Debug)]
pub struct HigherDerivation {
    algebra: Arc<StructAlgebra>,
    /// `maps[i]` is `partial_{i+1}`.
    maps: Vec<Matrix>,
}

impl HigherDerivation {
    /// Checks `partial_n(ab) = sum_i partial_i(a) partial_{n-i}(b)` on basis pairs for `n <= 2N`.
    pub fn new(algebra: &Arc<StructAlgebra>, maps: &[Vec<Vec<Scalar>>]) -> Result<HigherDerivation> {
        for images in maps {
            check_shape(algebra, images)?;
        }
        let h = HigherDerivation {
            algebra: algebra.clone(),
            maps: maps
                .iter()
                .map(|images| Matrix::from_columns(algebra.field(), algebra.dim(), images))
                .collect(),
        };
        let a = &**algebra;
        let top = 2 * h.maps.len();
        for n in 1..=top {
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    let lhs = h.apply(n, a.product_of_basis(i, j));
                    let mut rhs = a.zero();
                    for k in 0..=n {
                        let x = h.apply(k, &a.basis_vector(i));
                        let y = h.apply(n - k, &a.basis_vector(j));
                        rhs = a.add(&rhs, &a.mul(&x, &y));
                    }
                    if lhs != rhs {
                        return Err(Error::HasseSchmidtViolation {
                            n,
                            left: a.labels()[i].clone(),
                            right: a.labels()[j].clone(),
                        });
                    }
                }
            }
        }
        Ok(h)
    }

    pub fn algebra(&self) -> &Arc<StructAlgebra> {
        &self.algebra
    }

    /// `N`, the index of the last map.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `partial_n(v)`.
    pub fn apply(&self, n: usize, v: &[Scalar]) -> Vec<Scalar> {
        match n {
            0 => v.to_vec(),
            n if n <= self.maps.len() => self.maps[n - 1].mul_vec(v),
            _ => self.algebra.zero(),
        }
    }

    /// `ker partial_1 ∩ .. ∩ ker partial_N`.
    pub fn kernel(&self) -> Subspace {
        let f = self.algebra.field();
        let m = self.algebra.dim();
        let mut rows = Vec::new();
        for map in &self.maps {
            for r in 0..map.rows() {
                rows.push(map.row(r).to_vec());
            }
        }
        if rows.is_empty() {
            return Subspace::full(f, m);
        }
        Subspace::span(f, m, &Matrix::from_rows(f, rows).nullspace())
    }
}

/// `G(a) = sum_i partial_i(a) t^i`, `G(t) = t`, with its verification.
#[derive(Clone, Debug)]
pub struct HsReport {
    pub witness: HomWitness,
    pub hom: HomReport,
    /// `G` is invertible on `A[t]`: the determinant of its matrix over `k[t]` is a nonzero constant.
    pub automorphism: bool,
}

impl HsReport {
    pub fn is_locally_nilpotent(&self) -> bool {
        self.hom.is_hom() && self.automorphism
    }
}

pub fn hs_automorphism(h: &HigherDerivation, var: &str) -> Result<HsReport> {
    let a = &h.algebra;
    let ext = poly_extension(a, &[var])?;
    let t = Poly::var(ext.ring(), 0);
    let images: Vec<AlgElement> = (0..a.dim())
        .map(|j| {
            let mut acc = ext.zero();
            for n in 0..=h.maps.len() {
                let v = h.apply(n, &a.basis_vector(j));
                acc = acc.add(&ext.from_vector(&v).scale_poly(&t.pow(n as u32)));
            }
            acc
        })
        .collect();
    let forward = HomMap::new(ext.clone(), ext.clone(), images.clone(), vec![ext.var(0)])?;
    let hom = verify_hom(&forward);
    let rows: Vec<Vec<Poly>> = (0..a.dim())
        .map(|i| images.iter().map(|img| img.coord(i).clone()).collect())
        .collect();
    let g = PolyMatrix::from_rows(ext.ring(), rows);
    let det = if a.dim() == 0 { Poly::one(ext.ring()) } else { g.det() };
    let mut inverse = None;
    if det.is_constant() && !det.is_zero() {
        let dinv = invert_monomial(&det).expect("nonzero constant");
        let adj = g.adjugate();
        let back: Vec<AlgElement> = (0..a.dim())
            .map(|j| {
                let col: Vec<Poly> = (0..a.dim()).map(|i| adj.get(i, j) * &dinv).collect();
                ext.element(col).expect("well-shaped")
            })
            .collect();
        inverse = Some(HomMap::new(ext.clone(), ext.clone(), back, vec![ext.var(0)])?);
    }
    let witness = HomWitness::new(forward, inverse)?;
    let automorphism = witness.inverse.is_some() && verify_iso(&witness).is_iso();
    Ok(HsReport {
        witness,
        hom,
        automorphism,
    })
}

/// A member of a derivation family.
#[derive(Clone, Debug)]
pub enum FamilyMember {
    Ordinary(Derivation),
    Higher(HigherDerivation),
}

impl FamilyMember {
    fn kernel(&self) -> Subspace {
        match self {
            FamilyMember::Ordinary(d) => d.kernel(),
            FamilyMember::Higher(h) => h.kernel(),
        }
    }

    fn certified(&self) -> Result<bool> {
        Ok(match self {
            FamilyMember::Ordinary(d) => d.is_locally_nilpotent(),
            FamilyMember::Higher(h) => hs_automorphism(h, "t")?.is_locally_nilpotent(),
        })
    }
}

/// `ML` and `ML_Z` relative to a family; an upper bound for the invariants over all LNDs.
#[derive(Clone, Debug)]
pub struct MlReport {
    pub ml: Subspace,
    pub ml_z: Subspace,
}

pub fn ml_over_family(a: &Arc<StructAlgebra>, family: &[FamilyMember]) -> Result<MlReport> {
    let mut ml = Subspace::full(a.field(), a.dim());
    for member in family {
        if !member.certified()? {
            return Err(Error::NotLocallyNilpotent);
        }
        ml = ml.intersect(&member.kernel());
    }
    let ml_z = ml.intersect(&center_subspace(a));
    Ok(MlReport { ml, ml_z })
}

/// How a square-zero element was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareZero {
    /// `f = y a x` for basis elements with `xy = 0`.
    Triple { x: usize, y: usize, a: usize, f: Vec<Scalar> },
    /// A basis element with `f^2 = 0`, used when no triple exists (e.g. commutative algebras).
    Basis { index: usize, f: Vec<Scalar> },
}

impl SquareZero {
    pub fn element(&self) -> &[Scalar] {
        match self {
            SquareZero::Triple { f, .. } | SquareZero::Basis { f, .. } => f,
        }
    }
}

/// Searches basis triples for `f = yax != 0` with `xy = 0`, then basis elements with `f^2 = 0`.
pub fn square_zero_witness(a: &StructAlgebra) -> Option<SquareZero> {
    let n = a.dim();
    let zero = |v: &[Scalar]| v.iter().all(Scalar::is_zero);
    for x in 0..n {
        for y in 0..n {
            if !zero(a.product_of_basis(x, y)) {
                continue;
            }
            for m in 0..n {
                let f = a.mul(&a.mul(&a.basis_vector(y), &a.basis_vector(m)), &a.basis_vector(x));
                if !zero(&f) {
                    debug_assert!(zero(&a.mul(&f, &f)));
                    return Some(SquareZero::Triple { x, y, a: m, f });
                }
            }
        }
    }
    (0..n)
        .find(|&i| zero(a.product_of_basis(i, i)))
        .map(|index| SquareZero::Basis {
            index,
            f: a.basis_vector(index),
        })
}

/// Images for `partial_n(x^m) = C(m, n) x^(m + n)` on `k[x]/(x^len)`, basis `1, x, .., x^(len-1)`.
pub fn shift_hasse_maps(field: Field, len: usize) -> Vec<Vec<Vec<Scalar>>> {
    binomial_maps(field, len, |m, n| (m + n < len).then_some(m + n))
}

/// Images for `partial_n(x^m) = C(m, n) x^(m - n)` on `k[x]/(x^len)`.
pub fn lowering_hasse_maps(field: Field, len: usize) -> Vec<Vec<Vec<Scalar>>> {
    binomial_maps(field, len, |m, n| m.checked_sub(n))
}

fn binomial_maps(field: Field, len: usize, target: impl Fn(usize, usize) -> Option<usize>) -> Vec<Vec<Vec<Scalar>>> {
    let binom = |m: usize, n: usize| -> Scalar {
        if n > m {
            return field.zero();
        }
        let mut c = num_bigint::BigInt::from(1);
        for i in 0..n {
            c = c * (m - i) / (i + 1);
        }
        field.from_bigint(&c)
    };
    let maps: Vec<Vec<Vec<Scalar>>> = (1..len)
        .map(|n| {
            (0..len)
                .map(|m| {
                    let mut v = vec![field.zero(); len];
                    if let Some(k) = target(m, n) {
                        v[k] = binom(m, n);
                    }
                    v
                })
                .collect()
        })
        .collect();
    // drop trailing zero maps
    let last = maps
        .iter()
        .rposition(|m| m.iter().flatten().any(|c| !c.is_zero()))
        .map_or(0, |i| i + 1);
    maps[..last].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, truncated_polynomial};

    fn m2() -> Arc<StructAlgebra> {
        Arc::new(matrix_algebra(Field::Rationals, 2))
    }

    fn vec_of(a: &StructAlgebra, label: &str) -> Vec<Scalar> {
        a.basis_vector(a.label_index(label).unwrap())
    }

    #[test]
    fn inner_derivations() {
        let a = m2();
        let d = ad(&a, &vec_of(&a, "e12"));
        assert_eq!(d.nilpotency_index(), Some(3));
        assert!(Derivation::new(&a, &(0..4).map(|i| d.image(i)).collect::<Vec<_>>()).is_ok());
        assert_eq!(ad(&a, &vec_of(&a, "e11")).nilpotency_index(), None);
        assert!(ad(&a, a.identity()).is_zero());
        assert_eq!(Derivation::zero(&a).nilpotency_index(), Some(1));
    }

    #[test]
    fn leibniz_failure_names_pair() {
        let f = Field::Rationals;
        let a = Arc::new(crate::algebra::direct_sum(&[&crate::algebra::field_algebra(f), &crate::algebra::field_algebra(f)]).unwrap());
        let images = vec![vec![f.one(), f.one()], vec![f.one(), f.one()]];
        assert!(matches!(Derivation::new(&a, &images), Err(Error::LeibnizViolation(_, _))));
    }

    #[test]
    fn exp_is_conjugation() {
        let a = m2();
        let w = exp_automorphism(&ad(&a, &vec_of(&a, "e12")), "t").unwrap();
        let ext = w.forward.source().clone();
        let img = w.forward.apply(&ext.parse("e21").unwrap()).unwrap();
        assert_eq!(img, ext.parse("e21 + t*e11 - t*e22 - t^2*e12").unwrap());
        let id = exp_automorphism(&Derivation::zero(&a), "t").unwrap();
        assert_eq!(id.forward.apply(&ext.parse("e21").unwrap()).unwrap(), ext.parse("e21").unwrap());
    }

    #[test]
    fn hasse_schmidt_fixtures() {
        let f2 = Field::prime(2).unwrap();
        let a = Arc::new(truncated_polynomial(f2, "x", 4).unwrap());
        // G(x) = x + t would send x^4 = 0 to t^4
        let err = HigherDerivation::new(&a, &lowering_hasse_maps(f2, 4)).unwrap_err();
        assert!(matches!(err, Error::HasseSchmidtViolation { n: 4, .. }));
        let h = HigherDerivation::new(&a, &shift_hasse_maps(f2, 4)).unwrap();
        let r = hs_automorphism(&h, "t").unwrap();
        assert!(r.is_locally_nilpotent());
        let ext = r.witness.forward.source().clone();
        assert_eq!(r.witness.forward.apply(&ext.parse("x").unwrap()).unwrap(), ext.parse("x + t*x^2").unwrap());
        let trivial = HigherDerivation::new(&a, &[]).unwrap();
        assert!(hs_automorphism(&trivial, "t").unwrap().is_locally_nilpotent());
    }

    #[test]
    fn ml_of_matrix_units() {
        let a = m2();
        let family = vec![
            FamilyMember::Ordinary(ad(&a, &vec_of(&a, "e12"))),
            FamilyMember::Ordinary(ad(&a, &vec_of(&a, "e21"))),
        ];
        let r = ml_over_family(&a, &family).unwrap();
        assert_eq!(r.ml.dimension(), 1);
        assert!(r.ml.contains(a.identity()));
        assert_eq!(r.ml_z, r.ml);
        assert_eq!(ml_over_family(&a, &[]).unwrap().ml.dimension(), 4);
        let bad = [FamilyMember::Ordinary(ad(&a, &vec_of(&a, "e11")))];
        assert!(matches!(ml_over_family(&a, &bad), Err(Error::NotLocallyNilpotent)));
    }

    #[test]
    fn square_zero() {
        let a = m2();
        let w = square_zero_witness(&a).unwrap();
        let f = w.element();
        assert!(f.iter().any(|c| !c.is_zero()));
        assert!(a.mul(f, f).iter().all(Scalar::is_zero));
        assert_eq!(square_zero_witness(&crate::algebra::field_algebra(Field::Rationals)), None);
    }
}
