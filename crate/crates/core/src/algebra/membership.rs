//! Bounded search for membership in the subalgebra generated by `A` and extra elements.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::exactnum::{Monomial, Scalar};

use super::element::AlgElement;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// The `i`-th basis element of `A`.
    Basis(usize),
    /// The `j`-th extra generator.
    Gen(usize),
}

/// A product of letters, read left to right; empty means `1`.
pub type Word = Vec<Letter>;

/// `Yes` with an expression `target = sum c_w w`, or an inconclusive bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member {
        /// Longest word used.
        length: usize,
        certificate: Vec<(Scalar, Word)>,
    },
    NotFoundUpTo {
        bound: usize,
        /// The span stopped growing before the bound: the target is provably outside.
        closed: bool,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

type Key = (usize, Monomial);
type Sparse = BTreeMap<usize, Scalar>;

struct Echelon {
    keys: HashMap<Key, usize>,
    /// pivot column -> (reduced row, word combination)
    rows: BTreeMap<usize, (Sparse, Sparse)>,
}

impl Echelon {
    fn vectorize(&mut self, e: &AlgElement) -> Sparse {
        let mut out = Sparse::new();
        for (i, c) in e.coords().iter().enumerate() {
            for (m, s) in c.terms() {
                let n = self.keys.len();
                let k = *self.keys.entry((i, m.clone())).or_insert(n);
                out.insert(k, s.clone());
            }
        }
        out
    }

    fn axpy(target: &mut Sparse, c: &Scalar, v: &Sparse) {
        for (k, x) in v {
            let entry = target.entry(*k).or_insert_with(|| c.field().zero());
            *entry -= &(c * x);
            if entry.is_zero() {
                target.remove(k);
            }
        }
    }

    /// Reduces `v` (with combination `comb`) against the stored rows.
    fn reduce(&self, mut v: Sparse, mut comb: Sparse) -> (Sparse, Sparse) {
        loop {
            let hit = v.iter().find(|(k, _)| self.rows.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = hit else {
                return (v, comb);
            };
            let (row, rc) = &self.rows[&k];
            Self::axpy(&mut v, &c, row);
            Self::axpy(&mut comb, &c, rc);
        }
    }

    /// Adds `v` if independent; returns whether it was new.
    fn insert(&mut self, v: Sparse, comb: Sparse) -> bool {
        let (v, comb) = self.reduce(v, comb);
        let Some((&p, c)) = v.iter().next() else {
            return false;
        };
        let inv = c.inv().unwrap();
        let scale = |s: Sparse| s.into_iter().map(|(k, x)| (k, &x * &inv)).collect::<Sparse>();
        let (v, comb) = (scale(v), scale(comb));
        for (row, rc) in self.rows.values_mut() {
            if let Some(x) = row.get(&p).cloned() {
                Self::axpy(row, &x, &v);
                Self::axpy(rc, &x, &comb);
            }
        }
        self.rows.insert(p, (v, comb));
        true
    }
}

fn letter_element(letter: &Letter, generators: &[AlgElement], template: &AlgElement) -> AlgElement {
    match letter {
        Letter::Basis(i) => template.extension().basis_element(*i),
        Letter::Gen(j) => generators[*j].clone(),
    }
}

/// Evaluates `sum c_w w` in the algebra of `template`.
pub fn evaluate_certificate(
    certificate: &[(Scalar, Word)],
    generators: &[AlgElement],
    template: &AlgElement,
) -> AlgElement {
    let ext = template.extension();
    let mut acc = ext.zero();
    for (c, w) in certificate {
        let mut p = ext.one();
        for l in w {
            p = p.mul(&letter_element(l, generators, template));
        }
        acc = acc.add(&p.scale(c));
    }
    acc
}

/// Is `target` in the `k`-span of words of length `<= bound` in the `A`-basis and `generators`?
pub fn subalgebra_membership(target: &AlgElement, generators: &[AlgElement], bound: usize) -> Membership {
    let mut ring = target.ring().clone();
    for g in generators {
        ring = ring.extended(g.ring().vars());
    }
    let target = target.embed(&ring).expect("superset ring");
    let generators: Vec<AlgElement> = generators
        .iter()
        .map(|g| g.embed(&ring).expect("superset ring"))
        .collect();
    let ext = target.extension();
    let field = ring.field();
    let letters: Vec<Letter> = (0..target.algebra().dim())
        .map(Letter::Basis)
        .chain((0..generators.len()).map(Letter::Gen))
        .collect();

    let mut ech = Echelon {
        keys: HashMap::new(),
        rows: BTreeMap::new(),
    };
    let mut words: Vec<(Word, AlgElement)> = Vec::new();
    let unit = |i: usize| Sparse::from([(i, field.one())]);

    let check = |ech: &mut Echelon, words: &[(Word, AlgElement)]| -> Option<Membership> {
        let t = ech.vectorize(&target);
        let (rest, comb) = ech.reduce(t, Sparse::new());
        if !rest.is_empty() {
            return None;
        }
        // reduce subtracted c * row for each hit, so the target equals -comb
        let certificate: Vec<(Scalar, Word)> =
            comb.iter().map(|(w, c)| (-c, words[*w].0.clone())).collect();
        let length = certificate.iter().map(|(_, w)| w.len()).max().unwrap_or(0);
        Some(Membership::Member { length, certificate })
    };

    let one = ext.one();
    words.push((Vec::new(), one.clone()));
    let v = ech.vectorize(&one);
    ech.insert(v, unit(0));
    if let Some(m) = check(&mut ech, &words) {
        return m;
    }
    let mut frontier = vec![0usize];
    for _level in 1..=bound {
        let mut next = Vec::new();
        for &w in &frontier {
            for l in &letters {
                let prod = words[w].1.mul(&letter_element(l, &generators, &target));
                let mut word = words[w].0.clone();
                word.push(l.clone());
                let id = words.len();
                words.push((word, prod.clone()));
                let v = ech.vectorize(&prod);
                if ech.insert(v, unit(id)) {
                    next.push(id);
                }
            }
        }
        if let Some(m) = check(&mut ech, &words) {
            return m;
        }
        if next.is_empty() {
            return Membership::NotFoundUpTo { bound, closed: true };
        }
        frontier = next;
    }
    Membership::NotFoundUpTo { bound, closed: false }
}

/// Renders a word with basis labels and `g1, g2, ...` for generators.
pub struct WordDisplay<'a> {
    pub word: &'a [Letter],
    pub labels: &'a [String],
    pub generator_names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .word
            .iter()
            .map(|l| match l {
                Letter::Basis(i) => self.labels[*i].clone(),
                Letter::Gen(j) => self
                    .generator_names
                    .get(*j)
                    .cloned()
                    .unwrap_or_else(|| format!("g{}", j + 1)),
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// `c1*w1 + c2*w2 ...` for a certificate.
pub fn format_certificate(
    certificate: &[(Scalar, Word)],
    labels: &[String],
    generator_names: &[String],
) -> String {
    let terms: Vec<String> = certificate
        .iter()
        .map(|(c, w)| {
            let word = WordDisplay {
                word: w,
                labels,
                generator_names,
            }
            .to_string();
            if c.is_one() {
                word
            } else {
                format!("({c})*{word}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::constructions::field_algebra;
    use crate::algebra::element::poly_extension;
    use crate::exactnum::Field;

    #[test]
    fn generator_itself() {
        let ext = poly_extension(&Arc::new(field_algebra(Field::Rationals)), &["s"]).unwrap();
        let s = ext.var(0);
        let r = subalgebra_membership(&s, &[s.clone()], 1);
        match &r {
            Membership::Member { length, certificate } => {
                assert_eq!(*length, 1);
                assert_eq!(evaluate_certificate(certificate, &[s.clone()], &s), s);
            }
            _ => panic!("expected membership"),
        }
    }

    #[test]
    fn t_not_generated_by_t2_t3() {
        let ext = poly_extension(&Arc::new(field_algebra(Field::Rationals)), &["t"]).unwrap();
        let t = ext.var(0);
        let gens = [t.pow(2), t.pow(3)];
        assert_eq!(
            subalgebra_membership(&t, &gens, 1),
            Membership::NotFoundUpTo { bound: 1, closed: false }
        );
        assert_eq!(
            subalgebra_membership(&t, &gens, 5),
            Membership::NotFoundUpTo { bound: 5, closed: false }
        );
        assert!(subalgebra_membership(&t.pow(5), &gens, 2).is_member());
    }
}
