//! Univariate factorization over `F_p` and `Q`.
//!
//! Over `F_p`: square-free decomposition, distinct-degree splitting, then
//! Cantor-Zassenhaus equal-degree splitting driven by a seeded RNG.
//! Over `Q`: square-free decomposition, then for each part a Zassenhaus
//! factorization of the primitive integer polynomial (factor mod a good prime,
//! Hensel-lift to beyond the Mignotte bound, recombine subsets by trial division).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::field::{Field, Scalar};
use super::poly::Poly;
use super::univariate::UniPoly;
use crate::error::{Error, Result};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_cafe;

/// `unit * prod factor^mult` with monic irreducible factors in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Scalar,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn expand(&self, template: &Poly) -> Poly {
        let mut acc = Poly::constant(template.ring(), self.unit.clone());
        for (g, m) in &self.factors {
            acc = &acc * &g.pow(*m);
        }
        acc
    }
}

pub fn factor_univariate(f: &Poly) -> Result<Factorization> {
    factor_univariate_seeded(f, DEFAULT_SEED)
}

pub fn factor_univariate_seeded(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.ring().nvars() != 1 || f.ring().is_laurent(0) {
        return Err(Error::NotUnivariate);
    }
    let u = f.to_univariate()?;
    let (unit, factors) = factor_uni(&u, seed)?;
    Ok(Factorization {
        unit,
        factors: factors
            .into_iter()
            .map(|(g, m)| (Poly::from_univariate(f.ring(), &g), m))
            .collect(),
    })
}

/// Monic generator of the radical of `(f)` for univariate `f`.
pub fn squarefree_part(f: &Poly) -> Result<Poly> {
    if f.ring().nvars() != 1 {
        return Err(Error::NotUnivariate);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let u = f.to_univariate()?;
    Ok(Poly::from_univariate(f.ring(), &u.squarefree_part()?))
}

/// Factorization of a dense univariate polynomial.
pub fn factor_uni(f: &UniPoly, seed: u64) -> Result<(Scalar, Vec<(UniPoly, u32)>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lc();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition()? {
        let irreducibles = match f.field() {
            Field::Prime(_) => factor_fp_squarefree(&part, &mut rng),
            Field::Rationals => factor_q_squarefree(&part, &mut rng),
        };
        out.extend(irreducibles.into_iter().map(|g| (g, mult)));
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok((unit, out))
}

fn canonical_cmp(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Whether a univariate polynomial is irreducible over its field.
pub fn is_irreducible(f: &UniPoly) -> bool {
    if f.degree().unwrap_or(0) == 0 {
        return false;
    }
    match factor_uni(f, DEFAULT_SEED) {
        Ok((_, fs)) => fs.len() == 1 && fs[0].1 == 1,
        Err(_) => false,
    }
}

// ---------------------------------------------------------------------------
// F_p

fn factor_fp_squarefree(f: &UniPoly, rng: &mut StdRng) -> Vec<UniPoly> {
    let f = f.monic();
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&f) {
        equal_degree(&g, d, rng, &mut out);
    }
    out
}

/// Pairs `(g_d, d)` where `g_d` is the product of all degree-`d` irreducible factors.
fn distinct_degree(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let field = f.field();
    let p = BigUint::from(field.characteristic());
    let x = UniPoly::x(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&p, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

fn equal_degree(f: &UniPoly, d: usize, rng: &mut StdRng, out: &mut Vec<UniPoly>) {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(f.monic());
        return;
    }
    let field = f.field();
    let p = field.characteristic();
    loop {
        let a = UniPoly::new(
            field,
            (0..n).map(|_| field.from_i64(rng.gen_range(0..p) as i64)).collect(),
        );
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = a.gcd(f);
        let candidate = if !g.is_one() {
            g
        } else if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc.gcd(f)
        } else {
            let e = (num_traits::pow(BigUint::from(p), d) - 1u32) / 2u32;
            let b = a.pow_mod(&e, f).sub(&UniPoly::one(field));
            b.gcd(f)
        };
        let k = candidate.degree().unwrap_or(0);
        if k > 0 && k < n {
            let other = f.exact_div(&candidate).expect("gcd divides");
            equal_degree(&candidate, d, rng, out);
            equal_degree(&other, d, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Q via Z

type ZPoly = Vec<BigInt>;

fn z_trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn z_mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    z_trim(out)
}

fn z_content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
fn z_primitive(a: &[BigInt]) -> ZPoly {
    let c = z_content(a);
    if c.is_zero() {
        return Vec::new();
    }
    let sign = if a.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    let c = c * sign;
    a.iter().map(|x| x / &c).collect()
}

/// Exact division over Z, `None` if `b` does not divide `a`.
fn z_divexact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len().checked_sub(1)?;
    if a.len() < b.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (c, rem) = r[i].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i - db + j] -= &c * bc;
        }
        q[i - db] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| z_trim(q))
}

fn z_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    z_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn z_symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    z_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn z_to_fp(a: &[BigInt], p: u64) -> UniPoly {
    let f = Field::Prime(p);
    UniPoly::new(f, a.iter().map(|c| f.from_bigint(c)).collect())
}

fn fp_to_z(a: &UniPoly) -> ZPoly {
    a.coeffs()
        .iter()
        .map(|c| BigInt::from(c.residue().expect("prime field")))
        .collect()
}

/// Clears denominators of a rational polynomial, returning its primitive integer form.
fn q_to_primitive_z(f: &UniPoly) -> ZPoly {
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        lcm = lcm.lcm(c.as_rational().unwrap().denom());
    }
    let z: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| {
            let q = c.as_rational().unwrap();
            q.numer() * (&lcm / q.denom())
        })
        .collect();
    z_primitive(&z)
}

fn z_to_q_monic(a: &[BigInt]) -> UniPoly {
    let f = Field::Rationals;
    UniPoly::new(
        f,
        a.iter()
            .map(|c| Scalar::Q(BigRational::from_integer(c.clone())))
            .collect(),
    )
    .monic()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|n| (2..*n).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

fn factor_q_squarefree(f: &UniPoly, rng: &mut StdRng) -> Vec<UniPoly> {
    let z = q_to_primitive_z(f);
    if z.len() <= 2 {
        return vec![z_to_q_monic(&z)];
    }
    zassenhaus(&z, rng)
        .into_iter()
        .map(|g| z_to_q_monic(&g))
        .collect()
}

/// Irreducible factors over Z of a square-free primitive polynomial of degree >= 2.
fn zassenhaus(f: &[BigInt], rng: &mut StdRng) -> Vec<ZPoly> {
    let n = f.len() - 1;
    let lc = f.last().unwrap().clone();

    // Try a handful of good primes and keep the one with fewest modular factors.
    let mut best: Option<(u64, Vec<UniPoly>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = z_to_fp(f, p);
        if fp.degree() != Some(n) || !fp.is_squarefree() {
            continue;
        }
        let factors = factor_fp_squarefree(&fp, rng);
        let better = best.as_ref().map_or(true, |(_, b)| factors.len() < b.len());
        if better {
            best = Some((p, factors));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, modular) = best.expect("some prime keeps the polynomial square-free");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // Coefficient bound for any factor, scaled by the leading coefficient.
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = lc.abs() * (BigInt::one() << n) * norm1;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= &bound * 2 {
        modulus *= &pb;
        k += 1;
    }

    let lc_inv = lc
        .modinv(&modulus)
        .expect("leading coefficient invertible modulo p^k");
    let f_hat = z_mod(&f.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &modulus);
    let mut lifted = multilift(&f_hat, &modular, p, k);

    // Recombination.
    let mut remaining = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut combo: Vec<usize> = (0..size).collect();
        let mut progressed = false;
        loop {
            let cur_lc = remaining.last().unwrap().clone();
            let mut cand = vec![cur_lc.clone()];
            for &i in &combo {
                cand = z_mod(&z_mul(&cand, &lifted[i]), &modulus);
            }
            let cand = z_primitive(&z_symmetric(&cand, &modulus));
            if let Some(q) = z_divexact(&remaining, &cand) {
                found.push(cand);
                remaining = q;
                for &i in combo.iter().rev() {
                    lifted.remove(i);
                }
                progressed = true;
                break;
            }
            if !next_combination(&mut combo, lifted.len()) {
                break;
            }
        }
        if !progressed {
            size += 1;
        }
    }
    found.push(z_primitive(&remaining));
    found
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Lifts the monic modular factorization of `f_hat` to `p^k`.
fn multilift(f_hat: &[BigInt], factors: &[UniPoly], p: u64, k: u32) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![f_hat.to_vec()];
    }
    let mid = factors.len() / 2;
    let field = Field::Prime(p);
    let prod = |fs: &[UniPoly]| fs.iter().fold(UniPoly::one(field), |a, b| a.mul(b));
    let g = prod(&factors[..mid]);
    let h = prod(&factors[mid..]);
    let (gl, hl) = hensel_pair(f_hat, &g, &h, p, k);
    let mut out = multilift(&gl, &factors[..mid], p, k);
    out.extend(multilift(&hl, &factors[mid..], p, k));
    out
}

/// Linear Hensel lifting of `f_hat = g*h mod p` (all monic) to modulus `p^k`.
fn hensel_pair(f_hat: &[BigInt], g: &UniPoly, h: &UniPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (one, _, t) = g.ext_gcd(h);
    debug_assert!(one.is_one());
    let pb = BigInt::from(p);
    let mut gz = fp_to_z(g);
    let mut hz = fp_to_z(h);
    let mut m = pb.clone();
    for _ in 1..k {
        let next = &m * &pb;
        let prod = z_mul(&gz, &hz);
        let len = f_hat.len().max(prod.len());
        let diff: ZPoly = (0..len)
            .map(|i| {
                let a = f_hat.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b).mod_floor(&next) / &m
            })
            .collect();
        let e = z_to_fp(&diff, p);
        let dg = e.mul(&t).rem(g);
        let dh = e.sub(&dg.mul(h)).exact_div(g).expect("Hensel step divides");
        gz = add_scaled(&gz, &fp_to_z(&dg), &m);
        hz = add_scaled(&hz, &fp_to_z(&dh), &m);
        m = next;
    }
    (z_mod(&gz, &m), z_mod(&hz, &m))
}

fn add_scaled(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let len = a.len().max(b.len());
    z_trim(
        (0..len)
            .map(|i| {
                a.get(i).cloned().unwrap_or_default() + m * b.get(i).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

/// Roots in the base field: the negated constants of the linear factors.
pub fn roots_in_field(f: &UniPoly) -> Result<Vec<Scalar>> {
    let (_, factors) = factor_uni(f, DEFAULT_SEED)?;
    let mut roots: Vec<Scalar> = factors
        .iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| -g.coeff(0))
        .collect();
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::poly::PolyRing;

    fn uni(field: Field, c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(field, c)
    }

    #[test]
    fn difference_of_squares() {
        let (unit, fs) = factor_uni(&uni(Field::Rationals, &[-1, 0, 1]), 1).unwrap();
        assert!(unit.is_one());
        assert_eq!(
            fs,
            vec![
                (uni(Field::Rationals, &[-1, 1]), 1),
                (uni(Field::Rationals, &[1, 1]), 1)
            ]
        );
    }

    #[test]
    fn frobenius_over_f2() {
        let f = Field::Prime(2);
        let (_, fs) = factor_uni(&uni(f, &[1, 0, 1]), 1).unwrap();
        assert_eq!(fs, vec![(uni(f, &[1, 1]), 2)]);
    }

    #[test]
    fn errors() {
        let r = PolyRing::new(Field::Rationals, &["x", "y"]);
        assert_eq!(factor_univariate(&Poly::var(&r, 0)), Err(Error::NotUnivariate));
        let r1 = PolyRing::new(Field::Rationals, &["x"]);
        assert_eq!(factor_univariate(&Poly::zero(&r1)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime.
        let f = uni(Field::Rationals, &[1, 0, -10, 0, 1]);
        let (_, fs) = factor_uni(&f, 3).unwrap();
        assert_eq!(fs.len(), 1);
        // (x^4 - 10x^2 + 1)(x^2 - 2)(3x + 1)
        let g = f
            .mul(&uni(Field::Rationals, &[-2, 0, 1]))
            .mul(&uni(Field::Rationals, &[1, 3]));
        let (unit, fs) = factor_uni(&g, 3).unwrap();
        assert_eq!(unit, Field::Rationals.from_i64(3));
        let degrees: Vec<_> = fs.iter().map(|(h, _)| h.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 2, 4]);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&uni(Field::Rationals, &[1, 0, 1])));
        assert!(!is_irreducible(&uni(Field::Prime(5), &[1, 0, 1])));
        assert!(is_irreducible(&uni(Field::Prime(3), &[1, 0, 1])));
    }

    #[test]
    fn field_roots() {
        // 2(x-1)(x+1/2)(x^2+1)
        let f = uni(Field::Rationals, &[-1, 1])
            .mul(&uni(Field::Rationals, &[1, 2]))
            .mul(&uni(Field::Rationals, &[1, 0, 1]));
        let r = roots_in_field(&f).unwrap();
        let half = Scalar::Q(BigRational::new((-1).into(), 2.into()));
        assert_eq!(r, vec![half, Field::Rationals.one()]);
    }
}
