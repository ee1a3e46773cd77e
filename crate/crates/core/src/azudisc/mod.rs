//! Algebras free of finite rank over a central `k[x]` or `k[x, x^-1]`: trace forms,
//! discriminants, fibers and the Azumaya locus.

use std::fmt;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::center::center_subspace;
use crate::algebra::{radical_report, StructAlgebra};
use crate::error::{Error, Result};
use crate::exactnum::factor::roots_in_field;
use crate::exactnum::parse::invert_monomial;
use crate::exactnum::{squarefree_part, Field, Poly, PolyMatrix, PolyRing, Scalar};

/// `b_i b_j = sum_k c_ijk b_k` with `c_ijk` in a univariate coefficient ring `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCentralAlgebra {
    ring: Arc<PolyRing>,
    labels: Vec<String>,
    table: Vec<Vec<Vec<Poly>>>,
    identity: Vec<Poly>,
}

impl FreeCentralAlgebra {
    /// Verifies shape, associativity and the unit over `R`.
    pub fn new(
        ring: &Arc<PolyRing>,
        labels: Vec<String>,
        table: Vec<Vec<Vec<Poly>>>,
        identity: Vec<Poly>,
    ) -> Result<FreeCentralAlgebra> {
        if ring.nvars() != 1 {
            return Err(Error::NotUnivariate);
        }
        let m = labels.len();
        if table.len() != m || table.iter().any(|r| r.len() != m || r.iter().any(|c| c.len() != m)) || identity.len() != m {
            return Err(Error::Malformed(format!("structure constants must be {m} x {m} x {m}")));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Malformed(format!("duplicate basis label `{l}`")));
            }
        }
        let embed = |p: &Poly| p.embed(ring);
        let table = table
            .iter()
            .map(|r| r.iter().map(|c| c.iter().map(embed).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let identity = identity.iter().map(embed).collect::<Result<Vec<_>>>()?;
        let a = FreeCentralAlgebra {
            ring: ring.clone(),
            labels,
            table,
            identity,
        };
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let (bi, bj, bk) = (a.basis(i), a.basis(j), a.basis(k));
                    if a.mul(&a.mul(&bi, &bj), &bk) != a.mul(&bi, &a.mul(&bj, &bk)) {
                        return Err(Error::NotAssociative(
                            a.labels[i].clone(),
                            a.labels[j].clone(),
                            a.labels[k].clone(),
                        ));
                    }
                }
            }
            let bi = a.basis(i);
            if a.mul(&a.identity, &bi) != bi || a.mul(&bi, &a.identity) != bi {
                return Err(Error::MissingIdentity(a.labels[i].clone()));
            }
        }
        Ok(a)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn identity(&self) -> &[Poly] {
        &self.identity
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &[Poly] {
        &self.table[i][j]
    }

    pub fn basis(&self, i: usize) -> Vec<Poly> {
        (0..self.rank())
            .map(|k| if k == i { Poly::one(&self.ring) } else { Poly::zero(&self.ring) })
            .collect()
    }

    pub fn mul(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        let m = self.rank();
        let mut out = vec![Poly::zero(&self.ring); m];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&xy * c);
                    }
                }
            }
        }
        out
    }

    /// Trace of left multiplication by `a` on the free module `R^m`.
    pub fn reg_trace(&self, a: &[Poly]) -> Poly {
        let mut tr = Poly::zero(&self.ring);
        for j in 0..self.rank() {
            tr = &tr + &self.mul(a, &self.basis(j))[j];
        }
        tr
    }

    /// `[tr(b_i b_j)]`.
    pub fn trace_form(&self) -> PolyMatrix {
        let m = self.rank();
        let rows = (0..m)
            .map(|i| (0..m).map(|j| self.reg_trace(&self.table[i][j])).collect())
            .collect();
        PolyMatrix::from_rows(&self.ring, rows)
    }

    /// Re-expresses the algebra in the basis `b'_i = sum_j p[j][i] b_j`; `p` must be invertible over `R`.
    pub fn change_basis(&self, p: &PolyMatrix) -> Result<FreeCentralAlgebra> {
        let m = self.rank();
        let det = p.det();
        if !is_ring_unit(&det) {
            return Err(Error::Malformed(format!("transition determinant {det} is not a unit")));
        }
        let dinv = invert_monomial(&det)?;
        let adj = p.adjugate();
        let to_new = |v: &[Poly]| -> Vec<Poly> {
            (0..m)
                .map(|i| {
                    let mut s = Poly::zero(&self.ring);
                    for (j, x) in v.iter().enumerate() {
                        s = &s + &(adj.get(i, j) * x);
                    }
                    &s * &dinv
                })
                .collect()
        };
        let column = |i: usize| -> Vec<Poly> { (0..m).map(|j| p.get(j, i).clone()).collect() };
        let table = (0..m)
            .map(|i| (0..m).map(|j| to_new(&self.mul(&column(i), &column(j)))).collect())
            .collect();
        let labels = self.labels.iter().map(|l| format!("{l}'")).collect();
        FreeCentralAlgebra::new(&self.ring, labels, table, to_new(&self.identity))
    }

    /// Same constants over `R[t_1..t_n]`.
    fn extended(&self, n: usize) -> (Arc<PolyRing>, PolyMatrix) {
        let vars: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
        let ring = self.ring.extended(&vars);
        let m = self.rank();
        let embed = |p: &Poly| p.embed(&ring).expect("superset ring");
        let table: Vec<Vec<Vec<Poly>>> = self
            .table
            .iter()
            .map(|r| r.iter().map(|c| c.iter().map(embed).collect()).collect())
            .collect();
        let rows = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        // tr L_{b_i b_j} = sum_k c_ijk tr L_{b_k}, tr L_{b_k} = sum_l c_kll
                        let mut tr = Poly::zero(&ring);
                        for k in 0..m {
                            let mut trk = Poly::zero(&ring);
                            for l in 0..m {
                                trk = &trk + &table[k][l][l];
                            }
                            tr = &tr + &(&table[i][j][k] * &trk);
                        }
                        tr
                    })
                    .collect()
            })
            .collect();
        (ring.clone(), PolyMatrix::from_rows(&ring, rows))
    }
}

fn is_ring_unit(d: &Poly) -> bool {
    d.num_terms() == 1 && d.terms().all(|(m, _)| m.0.iter().enumerate().all(|(i, &e)| e == 0 || d.ring().is_laurent(i)))
}

/// `M_n(R)` with basis `e11, e12, ..`.
pub fn matrix_order(ring: &Arc<PolyRing>, n: usize) -> Result<FreeCentralAlgebra> {
    let scale = Poly::one(ring);
    scaled_matrix_units(ring, n, &vec![vec![scale; n]; n], |i, j| format!("e{}{}", i + 1, j + 1))
}

/// Basis `s_ij e_ij` of a `k[x]`-lattice in `M_n(k(x))`; `s` must make the span closed
/// under multiplication, which the associativity check does not see, so callers pick `s`
/// with `s_ij s_jk` divisible by `s_ik`.
fn scaled_matrix_units(
    ring: &Arc<PolyRing>,
    n: usize,
    s: &[Vec<Poly>],
    label: impl Fn(usize, usize) -> String,
) -> Result<FreeCentralAlgebra> {
    let m = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let mut table = vec![vec![vec![Poly::zero(ring); m]; m]; m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let num = &s[i][j] * &s[j][k];
                let (q, r) = divide(&num, &s[i][k])?;
                if !r.is_zero() {
                    return Err(Error::Malformed("scaled matrix units are not closed under products".into()));
                }
                table[idx(i, j)][idx(j, k)][idx(i, k)] = q;
            }
        }
    }
    let mut identity = vec![Poly::zero(ring); m];
    for i in 0..n {
        if !s[i][i].is_one() {
            return Err(Error::Malformed("diagonal scales must be 1".into()));
        }
        identity[idx(i, i)] = Poly::one(ring);
    }
    let labels = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| label(i, j)).collect();
    FreeCentralAlgebra::new(ring, labels, table, identity)
}

/// Division with remainder in `R`; over a Laurent ring powers of `x` are units and are shifted away first.
fn divide(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    let ring = a.ring();
    if b.is_zero() {
        return Err(Error::ZeroScale);
    }
    if a.is_zero() {
        return Ok((Poly::zero(ring), Poly::zero(ring)));
    }
    if !ring.is_laurent(0) {
        let (q, r) = a.to_univariate()?.divrem(&b.to_univariate()?);
        return Ok((Poly::from_univariate(ring, &q), Poly::from_univariate(ring, &r)));
    }
    let (a0, ka) = a.shift_to_nonnegative(0);
    let (b0, kb) = b.shift_to_nonnegative(0);
    let (q, r) = a0.to_univariate()?.divrem(&b0.to_univariate()?);
    let x = Poly::var(ring, 0);
    let mono = |k: i64| {
        if k >= 0 {
            x.pow(k as u32)
        } else {
            invert_monomial(&x.pow((-k) as u32)).expect("Laurent monomial")
        }
    };
    Ok((
        &Poly::from_univariate(ring, &q) * &mono(ka - kb),
        &Poly::from_univariate(ring, &r) * &mono(ka),
    ))
}

/// `A = (R fR; R R)` with basis `e11, f*e12, e21, e22`.
pub fn corner_order(ring: &Arc<PolyRing>, f: &Poly) -> Result<FreeCentralAlgebra> {
    let f = f.embed(ring)?;
    if f.is_zero() {
        return Err(Error::ZeroScale);
    }
    let one = Poly::one(ring);
    let s = vec![vec![one.clone(), f], vec![one.clone(), one]];
    scaled_matrix_units(ring, 2, &s, |i, j| {
        if (i, j) == (0, 1) {
            "fe12".to_string()
        } else {
            format!("e{}{}", i + 1, j + 1)
        }
    })
}

/// The discriminant `det[tr(b_i b_j)]` as computed and after removing a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantReport {
    pub raw: Poly,
    /// `raw = unit * normalized`.
    pub unit: Poly,
    /// Monic, and free of `x` powers over a Laurent ring.
    pub normalized: Poly,
    pub squarefree: Poly,
}

impl DiscriminantReport {
    pub fn is_unit(&self) -> bool {
        self.normalized.is_one()
    }
}

impl fmt::Display for DiscriminantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "raw {} = ({}) * ({}), squarefree part {}",
            self.raw, self.unit, self.normalized, self.squarefree
        )
    }
}

pub fn discriminant(a: &FreeCentralAlgebra) -> Result<DiscriminantReport> {
    let raw = if a.rank() == 0 { Poly::one(&a.ring) } else { a.trace_form().det() };
    if raw.is_zero() {
        return Err(Error::DegenerateDiscriminant(a.ring.tag()));
    }
    let (shifted, k) = if a.ring.is_laurent(0) { raw.shift_to_nonnegative(0) } else { (raw.clone(), 0) };
    let lc = shifted.leading().unwrap().1.clone();
    let normalized = shifted.scale(&lc.inv().unwrap());
    let x = Poly::var(&a.ring, 0);
    let mono = if k >= 0 { x.pow(k as u32) } else { invert_monomial(&x.pow((-k) as u32))? };
    let unit = Poly::constant(&a.ring, lc) * mono;
    let squarefree = squarefree_part(&normalized)?;
    Ok(DiscriminantReport {
        raw,
        unit,
        normalized,
        squarefree,
    })
}

/// Structure constants evaluated at `x = value`.
pub fn fiber_at(a: &FreeCentralAlgebra, value: &Scalar) -> Result<StructAlgebra> {
    let ev = |p: &Poly| -> Result<Scalar> { p.eval_all(std::slice::from_ref(value)) };
    let table = a
        .table
        .iter()
        .map(|r| r.iter().map(|c| c.iter().map(ev).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let identity = a.identity.iter().map(ev).collect::<Result<Vec<_>>>()?;
    StructAlgebra::new(a.field(), a.labels.clone(), table, identity)
}

/// Radical zero and one-dimensional center.
pub fn is_central_simple(f: &StructAlgebra) -> Result<bool> {
    Ok(center_subspace(f).dimension() == 1 && radical_report(f)?.radical.is_zero())
}

/// Verdict at one point of the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberVerdict {
    pub point: Scalar,
    pub central_simple: bool,
    pub on_locus: bool,
}

/// The non-Azumaya polynomial with the checks that back it.
#[derive(Clone, Debug)]
pub struct NonAzumaya {
    pub discriminant: DiscriminantReport,
    pub poly: Poly,
    /// The point where the generic fiber was found central simple.
    pub generic_point: Scalar,
    /// Roots of `poly` in the base field and sampled non-roots, each with its fiber verdict.
    pub checks: Vec<FiberVerdict>,
}

impl NonAzumaya {
    /// Every checked fiber is central simple exactly off the zero set of `poly`.
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.central_simple != c.on_locus)
    }
}

fn refuse_char_two(a: &FreeCentralAlgebra) -> Result<()> {
    if a.field().characteristic() == 2 {
        return Err(Error::DegenerateDiscriminant(a.ring.tag()));
    }
    Ok(())
}

fn random_point(field: Field, rng: &mut StdRng) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-1000..=1000)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p.min(i64::MAX as u64)) as i64),
    }
}

/// Generic fiber check: a central simple fiber at a seeded point off the discriminant.
fn generic_point(a: &FreeCentralAlgebra, disc: &Poly, seed: u64) -> Result<Scalar> {
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..64 {
        let pt = random_point(a.field(), &mut rng);
        if a.ring.is_laurent(0) && pt.is_zero() {
            continue;
        }
        if disc.eval_all(std::slice::from_ref(&pt))?.is_zero() {
            continue;
        }
        return if is_central_simple(&fiber_at(a, &pt)?)? {
            Ok(pt)
        } else {
            Err(Error::GenericFiberNotCentralSimple)
        };
    }
    Err(Error::GenericFiberNotCentralSimple)
}

/// `N(A)`: the monic squarefree part of the discriminant, cross-checked on fibers at
/// its roots in the base field and at `samples` seeded non-roots.
pub fn non_azumaya_poly(a: &FreeCentralAlgebra, samples: usize, seed: u64) -> Result<NonAzumaya> {
    refuse_char_two(a)?;
    let d = discriminant(a)?;
    let generic = generic_point(a, &d.raw, seed)?;
    let poly = d.squarefree.clone();
    let shifted = if a.ring.is_laurent(0) { poly.shift_to_nonnegative(0).0 } else { poly.clone() };
    let mut points = roots_in_field(&shifted.to_univariate()?)?;
    if a.ring.is_laurent(0) {
        points.retain(|p| !p.is_zero());
    }
    let mut rng = StdRng::seed_from_u64(seed.wrapping_add(1));
    let mut extra = 0;
    let mut attempts = 0;
    while extra < samples && attempts < 20 * samples + 20 {
        attempts += 1;
        let pt = random_point(a.field(), &mut rng);
        if points.contains(&pt) || (a.ring.is_laurent(0) && pt.is_zero()) {
            continue;
        }
        points.push(pt);
        extra += 1;
    }
    let checks = points
        .into_iter()
        .map(|pt| fiber_verdict(a, &poly, &pt))
        .collect::<Result<Vec<_>>>()?;
    Ok(NonAzumaya {
        discriminant: d,
        poly,
        generic_point: generic,
        checks,
    })
}

fn fiber_verdict(a: &FreeCentralAlgebra, poly: &Poly, pt: &Scalar) -> Result<FiberVerdict> {
    Ok(FiberVerdict {
        point: pt.clone(),
        central_simple: is_central_simple(&fiber_at(a, pt)?)?,
        on_locus: poly.eval_all(std::slice::from_ref(pt))?.is_zero(),
    })
}

/// Fiber verdicts at caller-chosen points against the non-Azumaya polynomial.
pub fn sample_fibers(a: &FreeCentralAlgebra, poly: &Poly, points: &[Scalar]) -> Result<Vec<FiberVerdict>> {
    points.iter().map(|p| fiber_verdict(a, poly, p)).collect()
}

/// Recomputes the trace pairing over `R[t_1..t_n]` and compares determinants literally.
pub fn extension_invariance_check(a: &FreeCentralAlgebra, n: usize) -> Result<bool> {
    let d = discriminant(a)?;
    let (ring, form) = a.extended(n);
    let det = if a.rank() == 0 { Poly::one(&ring) } else { form.det() };
    Ok(det == d.raw.embed(&ring)?)
}

/// `sqrt(rank)` when the rank is a square and the generic fiber is central simple.
pub fn pi_degree_estimate(a: &FreeCentralAlgebra, seed: u64) -> Result<usize> {
    let m = a.rank();
    let n = (m as f64).sqrt().round() as usize;
    if n * n != m {
        return Err(Error::RankNotSquare(m));
    }
    let raw = if m == 0 { Poly::one(&a.ring) } else { a.trace_form().det() };
    if raw.is_zero() {
        return Err(Error::GenericFiberNotCentralSimple);
    }
    generic_point(a, &raw, seed)?;
    Ok(n)
}

/// In `k[x]` the effective elements are the nonzero non-units, i.e. degree at least 1.
pub fn is_effective_univariate(f: &Poly) -> Result<bool> {
    if f.ring().nvars() != 1 || f.ring().is_laurent(0) {
        return Err(Error::NotUnivariate);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f.total_degree() >= 1)
}
