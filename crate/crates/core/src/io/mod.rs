//! JSON file formats for algebras, orders, witnesses and derivation families.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    cyclic_group_algebra, direct_sum, field_algebra, matrix_algebra, monomial_quotient, poly_extension,
    quaternion_algebra, truncated_polynomial, upper_triangular, AlgElement, Extension, StructAlgebra,
};
use crate::azudisc::{corner_order, matrix_order, FreeCentralAlgebra};
use crate::derivations::{ad, Derivation, FamilyMember, HigherDerivation};
use crate::error::{Error, Result};
use crate::exactnum::{parse_ring_tag, parse_scalar, Field, Poly, PolyRing, Scalar};
use crate::quiver::{truncated_path_algebra, Quiver};
use crate::witness::{HomMap, HomWitness};

/// Coordinates keyed by basis label; values are scalar (or polynomial) literals.
pub type Coordinates = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub value: Coordinates,
}

/// An algebra given explicitly or by a named construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraFile {
    Explicit {
        field: String,
        basis: Vec<String>,
        identity: Coordinates,
        /// Only nonzero products are listed.
        products: Vec<ProductEntry>,
    },
    Construct {
        field: String,
        construct: Construction,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Construction {
    Matrix { n: usize },
    UpperTriangular { n: usize },
    Field,
    TruncatedPolynomial { var: String, n: u32 },
    MonomialQuotient { vars: Vec<String>, relations: Vec<String> },
    Quaternion { a: String, b: String },
    CyclicGroup { n: usize },
    DirectSum { summands: Vec<AlgebraFile> },
    /// `kQ` modulo paths longer than `length`; `quiver` uses the quiver text format.
    TruncatedPath { quiver: String, length: usize },
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(Some(e.line()), e.to_string())
}

fn unknown_label(l: &str) -> Error {
    Error::parse(None, format!("unknown basis label `{l}`"))
}

fn coordinates_to_vector(field: Field, labels: &[String], c: &Coordinates) -> Result<Vec<Scalar>> {
    let mut v = vec![field.zero(); labels.len()];
    for (l, x) in c {
        let i = labels.iter().position(|b| b == l).ok_or_else(|| unknown_label(l))?;
        v[i] = parse_scalar(x, field)?;
    }
    Ok(v)
}

fn vector_to_coordinates(labels: &[String], v: &[Scalar]) -> Coordinates {
    labels
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| (l.clone(), c.to_string()))
        .collect()
}

/// Exponent vector of a monomial literal such as `x^2*y`.
fn monomial_exponents(s: &str, vars: &[String], field: Field) -> Result<Vec<u32>> {
    let ring = PolyRing::new(field, vars);
    let p = Poly::parse(s, &ring)?;
    if p.num_terms() != 1 {
        return Err(Error::parse(None, format!("relation `{s}` is not a monomial")));
    }
    let (m, _) = p.leading().unwrap();
    Ok(m.0.iter().map(|&e| e as u32).collect())
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn build(&self) -> Result<StructAlgebra> {
        match self {
            AlgebraFile::Explicit {
                field,
                basis,
                identity,
                products,
            } => {
                let field = Field::parse_tag(field)?;
                let m = basis.len();
                let mut table = vec![vec![vec![field.zero(); m]; m]; m];
                let index = |l: &str| basis.iter().position(|b| b == l).ok_or_else(|| unknown_label(l));
                for p in products {
                    let (i, j) = (index(&p.left)?, index(&p.right)?);
                    table[i][j] = coordinates_to_vector(field, basis, &p.value)?;
                }
                let identity = coordinates_to_vector(field, basis, identity)?;
                StructAlgebra::new(field, basis.clone(), table, identity)
            }
            AlgebraFile::Construct { field, construct } => {
                let field = Field::parse_tag(field)?;
                build_construction(field, construct)
            }
        }
    }

    /// The explicit form of an algebra, products in basis order.
    pub fn from_algebra(a: &StructAlgebra) -> AlgebraFile {
        let labels = a.labels();
        let mut products = Vec::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let v = a.product_of_basis(i, j);
                if v.iter().any(|c| !c.is_zero()) {
                    products.push(ProductEntry {
                        left: labels[i].clone(),
                        right: labels[j].clone(),
                        value: vector_to_coordinates(labels, v),
                    });
                }
            }
        }
        AlgebraFile::Explicit {
            field: a.field().tag(),
            basis: labels.to_vec(),
            identity: vector_to_coordinates(labels, a.identity()),
            products,
        }
    }
}

fn build_construction(field: Field, c: &Construction) -> Result<StructAlgebra> {
    Ok(match c {
        Construction::Matrix { n } => matrix_algebra(field, *n),
        Construction::UpperTriangular { n } => upper_triangular(field, *n),
        Construction::Field => field_algebra(field),
        Construction::TruncatedPolynomial { var, n } => truncated_polynomial(field, var, *n)?,
        Construction::MonomialQuotient { vars, relations } => {
            let rels = relations
                .iter()
                .map(|r| monomial_exponents(r, vars, field))
                .collect::<Result<Vec<_>>>()?;
            monomial_quotient(field, vars, &rels)?
        }
        Construction::Quaternion { a, b } => quaternion_algebra(field, &parse_scalar(a, field)?, &parse_scalar(b, field)?),
        Construction::CyclicGroup { n } => cyclic_group_algebra(field, *n),
        Construction::DirectSum { summands } => {
            let parts = summands.iter().map(AlgebraFile::build).collect::<Result<Vec<_>>>()?;
            if parts.iter().any(|p| p.field() != field) {
                return Err(Error::AlgebraMismatch);
            }
            direct_sum(&parts.iter().collect::<Vec<_>>())?
        }
        Construction::TruncatedPath { quiver, length } => truncated_path_algebra(&Quiver::parse(quiver)?, field, *length)?,
    })
}

/// Order file: a free algebra over `k[x]` or `k[x, x^-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderFile {
    Explicit {
        ring: String,
        basis: Vec<String>,
        identity: Coordinates,
        products: Vec<ProductEntry>,
    },
    Construct {
        ring: String,
        construct: OrderConstruction,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OrderConstruction {
    Matrix { n: usize },
    /// `(R fR; R R)`.
    Corner { f: String },
}

fn poly_coordinates(ring: &Arc<PolyRing>, labels: &[String], c: &Coordinates) -> Result<Vec<Poly>> {
    let mut v = vec![Poly::zero(ring); labels.len()];
    for (l, x) in c {
        let i = labels.iter().position(|b| b == l).ok_or_else(|| unknown_label(l))?;
        v[i] = Poly::parse(x, ring)?;
    }
    Ok(v)
}

fn poly_vector_to_coordinates(labels: &[String], v: &[Poly]) -> Coordinates {
    labels
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| (l.clone(), c.to_string()))
        .collect()
}

impl OrderFile {
    pub fn parse(text: &str) -> Result<OrderFile> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn build(&self) -> Result<FreeCentralAlgebra> {
        match self {
            OrderFile::Explicit {
                ring,
                basis,
                identity,
                products,
            } => {
                let ring = parse_ring_tag(ring)?;
                let m = basis.len();
                let mut table = vec![vec![vec![Poly::zero(&ring); m]; m]; m];
                let index = |l: &str| basis.iter().position(|b| b == l).ok_or_else(|| unknown_label(l));
                for p in products {
                    let (i, j) = (index(&p.left)?, index(&p.right)?);
                    table[i][j] = poly_coordinates(&ring, basis, &p.value)?;
                }
                let identity = poly_coordinates(&ring, basis, identity)?;
                FreeCentralAlgebra::new(&ring, basis.clone(), table, identity)
            }
            OrderFile::Construct { ring, construct } => {
                let ring = parse_ring_tag(ring)?;
                match construct {
                    OrderConstruction::Matrix { n } => matrix_order(&ring, *n),
                    OrderConstruction::Corner { f } => corner_order(&ring, &Poly::parse(f, &ring)?),
                }
            }
        }
    }

    pub fn from_order(a: &FreeCentralAlgebra) -> OrderFile {
        let labels = a.labels();
        let mut products = Vec::new();
        for i in 0..a.rank() {
            for j in 0..a.rank() {
                let v = a.product_of_basis(i, j);
                if v.iter().any(|c| !c.is_zero()) {
                    products.push(ProductEntry {
                        left: labels[i].clone(),
                        right: labels[j].clone(),
                        value: poly_vector_to_coordinates(labels, v),
                    });
                }
            }
        }
        OrderFile::Explicit {
            ring: a.ring().tag(),
            basis: labels.to_vec(),
            identity: poly_vector_to_coordinates(labels, a.identity()),
            products,
        }
    }
}

/// Images of generators: basis labels and variable names mapped to element expressions.
pub type ImageMap = BTreeMap<String, String>;

/// A homomorphism `A[t..] -> B[s..]` with an optional inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub source: AlgebraFile,
    pub source_vars: Vec<String>,
    pub target: AlgebraFile,
    pub target_vars: Vec<String>,
    pub map: ImageMap,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<ImageMap>,
}

fn build_map(source: &Extension, target: &Extension, images: &ImageMap) -> Result<HomMap> {
    let labels = source.algebra().labels();
    let vars = source.ring().vars();
    for k in images.keys() {
        if !labels.contains(k) && !vars.contains(k) {
            return Err(Error::parse(None, format!("map sends unknown generator `{k}`")));
        }
    }
    let image = |name: &str| -> Result<AlgElement> {
        let expr = images
            .get(name)
            .ok_or_else(|| Error::parse(None, format!("no image given for `{name}`")))?;
        target.parse(expr)
    };
    let basis_images = labels.iter().map(|l| image(l)).collect::<Result<Vec<_>>>()?;
    let var_images = vars.iter().map(|v| image(v)).collect::<Result<Vec<_>>>()?;
    HomMap::new(source.clone(), target.clone(), basis_images, var_images)
}

fn map_to_images(phi: &HomMap) -> ImageMap {
    let labels = phi.source().algebra().labels();
    let vars = phi.source().ring().vars();
    labels
        .iter()
        .zip(phi.basis_images())
        .chain(vars.iter().zip(phi.var_images()))
        .map(|(k, v)| (k.clone(), v.to_string()))
        .collect()
}

impl WitnessFile {
    pub fn parse(text: &str) -> Result<WitnessFile> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn build(&self) -> Result<HomWitness> {
        let a = Arc::new(self.source.build()?);
        let b = if self.target == self.source { a.clone() } else { Arc::new(self.target.build()?) };
        let src = poly_extension(&a, &self.source_vars)?;
        let tgt = poly_extension(&b, &self.target_vars)?;
        if src.nvars() != tgt.nvars() {
            return Err(Error::VariableCountMismatch(src.nvars(), tgt.nvars()));
        }
        let forward = build_map(&src, &tgt, &self.map)?;
        let inverse = self.inverse.as_ref().map(|m| build_map(&tgt, &src, m)).transpose()?;
        HomWitness::new(forward, inverse)
    }

    pub fn from_witness(w: &HomWitness) -> WitnessFile {
        let src = w.forward.source();
        let tgt = w.forward.target();
        WitnessFile {
            source: AlgebraFile::from_algebra(src.algebra()),
            source_vars: src.ring().vars().to_vec(),
            target: AlgebraFile::from_algebra(tgt.algebra()),
            target_vars: tgt.ring().vars().to_vec(),
            map: map_to_images(&w.forward),
            inverse: w.inverse.as_ref().map(map_to_images),
        }
    }
}

/// One derivation in a family file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DerivationEntry {
    /// `a -> xa - ax`.
    Inner { name: String, element: String },
    /// Images of basis elements; omitted labels map to 0.
    Explicit { name: String, images: ImageMap },
    /// `partial_1, .., partial_N`, each given by images.
    Higher { name: String, maps: Vec<ImageMap> },
}

impl DerivationEntry {
    pub fn name(&self) -> &str {
        match self {
            DerivationEntry::Inner { name, .. }
            | DerivationEntry::Explicit { name, .. }
            | DerivationEntry::Higher { name, .. } => name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationFile {
    pub algebra: AlgebraFile,
    pub derivations: Vec<DerivationEntry>,
}

fn element_vector(ext: &Extension, expr: &str) -> Result<Vec<Scalar>> {
    ext.parse(expr)?
        .constant_vector()
        .ok_or_else(|| Error::parse(None, format!("`{expr}` is not an element of the algebra")))
}

fn images_to_vectors(ext: &Extension, images: &ImageMap) -> Result<Vec<Vec<Scalar>>> {
    let a = ext.algebra();
    for k in images.keys() {
        if a.label_index(k).is_none() {
            return Err(unknown_label(k));
        }
    }
    a.labels()
        .iter()
        .map(|l| match images.get(l) {
            Some(e) => element_vector(ext, e),
            None => Ok(a.zero()),
        })
        .collect()
}

impl DerivationFile {
    pub fn parse(text: &str) -> Result<DerivationFile> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// The algebra and the named family members, each checked at construction.
    pub fn build(&self) -> Result<(Arc<StructAlgebra>, Vec<(String, FamilyMember)>)> {
        let a = Arc::new(self.algebra.build()?);
        let ext = poly_extension(&a, &[] as &[&str])?;
        let mut out = Vec::new();
        for d in &self.derivations {
            let member = match d {
                DerivationEntry::Inner { element, .. } => FamilyMember::Ordinary(ad(&a, &element_vector(&ext, element)?)),
                DerivationEntry::Explicit { images, .. } => {
                    FamilyMember::Ordinary(Derivation::new(&a, &images_to_vectors(&ext, images)?)?)
                }
                DerivationEntry::Higher { maps, .. } => {
                    let maps = maps
                        .iter()
                        .map(|m| images_to_vectors(&ext, m))
                        .collect::<Result<Vec<_>>>()?;
                    FamilyMember::Higher(HigherDerivation::new(&a, &maps)?)
                }
            };
            out.push((d.name().to_string(), member));
        }
        Ok((a, out))
    }
}
