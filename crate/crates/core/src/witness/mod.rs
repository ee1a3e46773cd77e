//! Explicit homomorphisms `A[t1..tn] -> B[s1..sn]` and witness-level checks of
//! retraction, Z-retraction and detectability.

use std::fmt;
use std::sync::Arc;

use crate::algebra::center::center_basis;
use crate::algebra::membership::subalgebra_membership;
use crate::algebra::{is_unit, AlgElement, Extension, Membership, StructAlgebra};
use crate::error::{Error, Result};
use crate::exactnum::{Poly, Scalar, Subspace};

/// A map given on the `A`-basis and on the adjoined variables, extended linearly
/// over the base field and multiplicatively on monomials in the variables.
#[derive(Clone, Debug)]
pub struct HomMap {
    source: Extension,
    target: Extension,
    basis_images: Vec<AlgElement>,
    var_images: Vec<AlgElement>,
}

impl HomMap {
    pub fn new(
        source: Extension,
        target: Extension,
        basis_images: Vec<AlgElement>,
        var_images: Vec<AlgElement>,
    ) -> Result<HomMap> {
        if source.nvars() != target.nvars() {
            return Err(Error::VariableCountMismatch(source.nvars(), target.nvars()));
        }
        if basis_images.len() != source.algebra().dim() || var_images.len() != source.nvars() {
            return Err(Error::Malformed(format!(
                "expected {} basis images and {} variable images, got {} and {}",
                source.algebra().dim(),
                source.nvars(),
                basis_images.len(),
                var_images.len()
            )));
        }
        let into_target = |e: AlgElement| -> Result<AlgElement> {
            if !Arc::ptr_eq(e.algebra(), target.algebra()) && **e.algebra() != **target.algebra() {
                return Err(Error::AlgebraMismatch);
            }
            e.embed(target.ring())
        };
        let basis_images = basis_images.into_iter().map(into_target).collect::<Result<_>>()?;
        let var_images = var_images.into_iter().map(into_target).collect::<Result<_>>()?;
        Ok(HomMap {
            source,
            target,
            basis_images,
            var_images,
        })
    }

    pub fn identity(ext: &Extension) -> HomMap {
        let n = ext.algebra().dim();
        HomMap {
            source: ext.clone(),
            target: ext.clone(),
            basis_images: (0..n).map(|i| ext.basis_element(i)).collect(),
            var_images: (0..ext.nvars()).map(|i| ext.var(i)).collect(),
        }
    }

    pub fn source(&self) -> &Extension {
        &self.source
    }

    pub fn target(&self) -> &Extension {
        &self.target
    }

    pub fn basis_images(&self) -> &[AlgElement] {
        &self.basis_images
    }

    pub fn var_images(&self) -> &[AlgElement] {
        &self.var_images
    }

    /// Image of a coefficient polynomial, `p(phi(t_1), ..., phi(t_n))`.
    fn apply_poly(&self, p: &Poly) -> Result<AlgElement> {
        let mut inverses: Vec<Option<AlgElement>> = vec![None; self.var_images.len()];
        let mut acc = self.target.zero();
        for (m, c) in p.terms() {
            let mut term = self.target.one().scale(c);
            for (j, &e) in m.0.iter().enumerate() {
                if e >= 0 {
                    term = term.mul(&self.var_images[j].pow(e as u32));
                } else {
                    if inverses[j].is_none() {
                        let inv = is_unit(&self.var_images[j]).inverse.ok_or_else(|| {
                            Error::NotMultiplicative(
                                self.source.ring().vars()[j].clone(),
                                format!("{}^-1", self.source.ring().vars()[j]),
                            )
                        })?;
                        inverses[j] = Some(inv);
                    }
                    term = term.mul(&inverses[j].as_ref().unwrap().pow((-e) as u32));
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// `phi(sum_i p_i(t) b_i) = sum_i p_i(phi(t)) phi(b_i)`.
    pub fn apply(&self, x: &AlgElement) -> Result<AlgElement> {
        if !Arc::ptr_eq(x.algebra(), self.source.algebra()) && **x.algebra() != **self.source.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        let x = x.embed(self.source.ring())?;
        let mut acc = self.target.zero();
        for (i, c) in x.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&self.apply_poly(c)?.mul(&self.basis_images[i]));
        }
        Ok(acc)
    }

    /// `other o self`.
    pub fn then(&self, other: &HomMap) -> Result<HomMap> {
        let basis_images = self.basis_images.iter().map(|b| other.apply(b)).collect::<Result<_>>()?;
        let var_images = self.var_images.iter().map(|v| other.apply(v)).collect::<Result<_>>()?;
        HomMap::new(self.source.clone(), other.target.clone(), basis_images, var_images)
    }

    /// Generator names of the source: basis labels followed by variables.
    fn generator_label(&self, k: usize) -> String {
        let labels = self.source.algebra().labels();
        if k < labels.len() {
            labels[k].clone()
        } else {
            self.source.ring().vars()[k - labels.len()].clone()
        }
    }

    fn generators(&self) -> Vec<AlgElement> {
        let n = self.source.algebra().dim();
        (0..n)
            .map(|i| self.source.basis_element(i))
            .chain((0..self.source.nvars()).map(|j| self.source.var(j)))
            .collect()
    }
}

/// Outcome of [`verify_hom`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    pub preserves_unit: bool,
    /// Basis pairs `(b_i, b_j)` with `phi(b_i b_j) != phi(b_i) phi(b_j)`.
    pub multiplicative_failures: Vec<(String, String)>,
    /// Variables whose image is not central.
    pub noncentral_variables: Vec<String>,
    /// Laurent variables whose image is not invertible.
    pub noninvertible_variables: Vec<String>,
}

impl HomReport {
    pub fn is_hom(&self) -> bool {
        self.preserves_unit
            && self.multiplicative_failures.is_empty()
            && self.noncentral_variables.is_empty()
            && self.noninvertible_variables.is_empty()
    }
}

impl fmt::Display for HomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_hom() {
            return f.write_str("homomorphism verified");
        }
        let mut parts = Vec::new();
        if !self.preserves_unit {
            parts.push("1 is not sent to 1".to_string());
        }
        if !self.multiplicative_failures.is_empty() {
            let pairs: Vec<String> = self.multiplicative_failures.iter().map(|(a, b)| format!("({a}, {b})")).collect();
            parts.push(format!("not multiplicative at {}", pairs.join(", ")));
        }
        for v in &self.noncentral_variables {
            parts.push(format!("image of {v} is not central"));
        }
        for v in &self.noninvertible_variables {
            parts.push(format!("image of {v} is not invertible"));
        }
        f.write_str(&parts.join("; "))
    }
}

/// Checks `phi(1) = 1`, multiplicativity on all basis pairs and centrality of each `phi(t_i)`.
pub fn verify_hom(phi: &HomMap) -> HomReport {
    let a = phi.source.algebra();
    let one_image = phi.apply(&phi.source.one()).expect("constant element");
    let preserves_unit = one_image == phi.target.one();
    let mut multiplicative_failures = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let prod = phi.source.basis_element(i).mul(&phi.source.basis_element(j));
            let lhs = phi.apply(&prod).expect("constant element");
            let rhs = phi.basis_images[i].mul(&phi.basis_images[j]);
            if lhs != rhs {
                multiplicative_failures.push((a.labels()[i].clone(), a.labels()[j].clone()));
            }
        }
    }
    let vars = phi.source.ring().vars();
    let noncentral_variables = phi
        .var_images
        .iter()
        .zip(vars)
        .filter(|(img, _)| !img.is_central())
        .map(|(_, v)| v.clone())
        .collect();
    let noninvertible_variables = (0..vars.len())
        .filter(|&j| phi.source.ring().is_laurent(j) && !is_unit(&phi.var_images[j]).is_unit())
        .map(|j| vars[j].clone())
        .collect();
    HomReport {
        preserves_unit,
        multiplicative_failures,
        noncentral_variables,
        noninvertible_variables,
    }
}

/// A homomorphism with an optional claimed inverse.
#[derive(Clone, Debug)]
pub struct HomWitness {
    pub forward: HomMap,
    pub inverse: Option<HomMap>,
}

impl HomWitness {
    pub fn new(forward: HomMap, inverse: Option<HomMap>) -> Result<HomWitness> {
        if let Some(inv) = &inverse {
            let same = |x: &Extension, y: &Extension| {
                (Arc::ptr_eq(x.algebra(), y.algebra()) || **x.algebra() == **y.algebra())
                    && x.ring().vars() == y.ring().vars()
            };
            if !same(inv.source(), forward.target()) || !same(inv.target(), forward.source()) {
                return Err(Error::Malformed("inverse does not go from target back to source".into()));
            }
        }
        Ok(HomWitness { forward, inverse })
    }

    pub fn identity(ext: &Extension) -> HomWitness {
        HomWitness {
            forward: HomMap::identity(ext),
            inverse: Some(HomMap::identity(ext)),
        }
    }

    /// `other o self`, with inverses composed in the opposite order when both exist.
    pub fn then(&self, other: &HomWitness) -> Result<HomWitness> {
        let forward = self.forward.then(&other.forward)?;
        let inverse = match (&other.inverse, &self.inverse) {
            (Some(b), Some(a)) => Some(b.then(a)?),
            _ => None,
        };
        Ok(HomWitness { forward, inverse })
    }
}

/// Outcome of [`verify_iso`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub forward: HomReport,
    pub backward: Option<HomReport>,
    /// A generator `g` of the source (or target, primed) with `psi(phi(g)) != g`.
    pub composition_failure: Option<String>,
}

impl IsoReport {
    pub fn is_hom(&self) -> bool {
        self.forward.is_hom()
    }

    pub fn is_iso(&self) -> bool {
        self.forward.is_hom()
            && self.backward.as_ref().is_some_and(HomReport::is_hom)
            && self.composition_failure.is_none()
    }
}

impl fmt::Display for IsoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_iso() {
            return f.write_str("isomorphism verified");
        }
        write!(f, "forward: {}", self.forward)?;
        match &self.backward {
            None => f.write_str("; no inverse supplied")?,
            Some(b) => write!(f, "; inverse: {b}")?,
        }
        if let Some(g) = &self.composition_failure {
            write!(f, "; composition is not the identity on {g}")?;
        }
        Ok(())
    }
}

/// Both directions are homomorphisms and compose to the identity on generators.
pub fn verify_iso(w: &HomWitness) -> IsoReport {
    let forward = verify_hom(&w.forward);
    let Some(inv) = &w.inverse else {
        return IsoReport {
            forward,
            backward: None,
            composition_failure: None,
        };
    };
    let backward = verify_hom(inv);
    let mut composition_failure = None;
    if forward.is_hom() && backward.is_hom() {
        composition_failure = first_moved_generator(&w.forward, inv).or_else(|| {
            first_moved_generator(inv, &w.forward).map(|g| format!("{g}'"))
        });
    }
    IsoReport {
        forward,
        backward: Some(backward),
        composition_failure,
    }
}

fn first_moved_generator(phi: &HomMap, psi: &HomMap) -> Option<String> {
    for (k, g) in phi.generators().iter().enumerate() {
        let back = phi.apply(g).and_then(|x| psi.apply(&x));
        let ok = match back {
            Ok(x) => x.embed(g.ring()).map(|x| x == *g).unwrap_or(false),
            Err(_) => false,
        };
        if !ok {
            return Some(phi.generator_label(k));
        }
    }
    None
}

/// Witness-level answer: `No` names the offending element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No { witness: String, reason: String },
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => f.write_str("yes"),
            Verdict::No { witness, reason } => write!(f, "no, witness {witness}: {reason}"),
        }
    }
}

fn require_hom(phi: &HomMap) -> Result<()> {
    if verify_hom(phi).is_hom() {
        Ok(())
    } else {
        Err(Error::Unverified)
    }
}

/// Smallest subalgebra of `b` containing `1` and `gens`.
fn generated_subalgebra(b: &StructAlgebra, gens: &[Vec<Scalar>]) -> Subspace {
    let mut vecs = vec![b.identity().to_vec()];
    vecs.extend(gens.iter().cloned());
    let mut space = Subspace::span(b.field(), b.dim(), &vecs);
    loop {
        let next = space.sum(&b.product_space(&space, &space));
        if next.dimension() == space.dimension() {
            return space;
        }
        space = next;
    }
}

/// `phi(A) = B`: every basis image has degree 0 in the `s` variables and the images generate `B`.
/// A `No` names the basis element whose image has the highest degree.
pub fn check_retraction(w: &HomWitness) -> Result<Verdict> {
    require_hom(&w.forward)?;
    let phi = &w.forward;
    let labels = phi.source.algebra().labels();
    let worst = (0..labels.len())
        .filter(|&i| phi.basis_images[i].constant_vector().is_none())
        .max_by_key(|&i| (phi.basis_images[i].t_degree(), std::cmp::Reverse(i)));
    if let Some(i) = worst {
        let img = &phi.basis_images[i];
        return Ok(Verdict::No {
            witness: labels[i].clone(),
            reason: format!("image {img} has degree {} in {}", img.t_degree(), vars_text(&phi.target)),
        });
    }
    let constants: Vec<Vec<Scalar>> = phi.basis_images.iter().map(|x| x.constant_vector().unwrap()).collect();
    let b = phi.target.algebra();
    let span = generated_subalgebra(b, &constants);
    for i in 0..b.dim() {
        if !span.contains(&b.basis_vector(i)) {
            return Ok(Verdict::No {
                witness: b.labels()[i].clone(),
                reason: "not in the subalgebra generated by the images of A".into(),
            });
        }
    }
    Ok(Verdict::Yes)
}

fn vars_text(ext: &Extension) -> String {
    ext.ring().vars().join(", ")
}

/// `phi(Z(A)) = Z(B)`: images of a center basis are constant, central, and span `Z(B)`.
pub fn check_z_retraction(w: &HomWitness) -> Result<Verdict> {
    require_hom(&w.forward)?;
    let phi = &w.forward;
    let a = phi.source.algebra();
    let b = phi.target.algebra();
    let zb = Subspace::span(b.field(), b.dim(), &center_basis(b));
    let mut images = Vec::new();
    for z in center_basis(a) {
        let elem = phi.source.from_vector(&z);
        let img = phi.apply(&elem)?;
        let Some(v) = img.constant_vector() else {
            return Ok(Verdict::No {
                witness: elem.to_string(),
                reason: format!("image {img} has degree {} in {}", img.t_degree(), vars_text(&phi.target)),
            });
        };
        if !zb.contains(&v) {
            return Ok(Verdict::No {
                witness: elem.to_string(),
                reason: format!("image {img} is not central in B"),
            });
        }
        images.push(v);
    }
    let span = Subspace::span(b.field(), b.dim(), &images);
    if span.dimension() != zb.dimension() {
        let missing = zb.basis().iter().find(|v| !span.contains(v)).unwrap();
        return Ok(Verdict::No {
            witness: b.format_vector(missing),
            reason: "central element of B not hit by Z(A)".into(),
        });
    }
    Ok(Verdict::Yes)
}

/// Bounded search for `s_i` in `B{phi(t_1), .., phi(t_n)}`, one result per target variable.
pub fn check_detectability(w: &HomWitness, bound: usize) -> Result<Vec<(String, Membership)>> {
    require_hom(&w.forward)?;
    let phi = &w.forward;
    Ok(phi
        .target
        .ring()
        .vars()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), subalgebra_membership(&phi.target.var(i), &phi.var_images, bound)))
        .collect())
}
