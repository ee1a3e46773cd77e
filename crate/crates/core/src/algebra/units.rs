use crate::exactnum::{parse::invert_monomial, Poly, PolyMatrix};

use super::element::AlgElement;

/// Outcome of [`is_unit`]: the regular-representation determinant and, for units, the inverse.
#[derive(Clone, Debug)]
pub struct UnitReport {
    pub determinant: Poly,
    pub inverse: Option<AlgElement>,
}

impl UnitReport {
    pub fn is_unit(&self) -> bool {
        self.inverse.is_some()
    }
}

/// Left multiplication by `a` as a matrix over the coefficient ring.
pub fn left_regular_matrix(a: &AlgElement) -> PolyMatrix {
    let ext = a.extension();
    let m = a.algebra().dim();
    let cols: Vec<AlgElement> = (0..m).map(|j| a.mul(&ext.basis_element(j))).collect();
    let rows = (0..m)
        .map(|i| (0..m).map(|j| cols[j].coord(i).clone()).collect())
        .collect();
    PolyMatrix::from_rows(a.ring(), rows)
}

/// A unit of the coefficient ring: a nonzero constant, or a monomial in Laurent variables only.
fn is_ring_unit(d: &Poly) -> bool {
    if d.num_terms() != 1 {
        return false;
    }
    let (m, _) = d.leading().unwrap();
    m.0.iter()
        .enumerate()
        .all(|(i, &e)| e == 0 || d.ring().is_laurent(i))
}

/// `a` is a unit of `A[t..]` iff `det L_a` is a unit of the coefficient ring.
pub fn is_unit(a: &AlgElement) -> UnitReport {
    let l = left_regular_matrix(a);
    let determinant = if a.algebra().dim() == 0 { Poly::one(a.ring()) } else { l.det() };
    if !is_ring_unit(&determinant) {
        return UnitReport {
            determinant,
            inverse: None,
        };
    }
    let ext = a.extension();
    let dinv = invert_monomial(&determinant).expect("unit determinant");
    let one = ext.one();
    let v = l.adjugate().mul_vec(one.coords());
    let coords: Vec<Poly> = v.iter().map(|c| c * &dinv).collect();
    let inv = ext.element(coords).expect("well-shaped inverse");
    assert!(a.mul(&inv) == one && inv.mul(a) == one, "inverse verification");
    UnitReport {
        determinant,
        inverse: Some(inv),
    }
}
