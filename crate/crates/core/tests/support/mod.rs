//! Generators and brute-force oracles shared by the integration tests. None of
//! the oracles go through the leading-word machinery of the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use brace::algebra::{rational, Homomorphism, Polynomial, Rational};
use brace::words::{enumerate_normal, Letter, NormalWord};
use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::Rng;

pub fn letter(i: u32) -> NormalWord {
    NormalWord::letter(Letter::new(i))
}

/// Uniform-ish random normal word of exactly `degree` over `letters` letters.
pub fn random_word(rng: &mut impl Rng, letters: u32, degree: usize) -> NormalWord {
    let head = Letter::new(rng.random_range(0..letters));
    let mut rest = degree - 1;
    let mut children = Vec::new();
    while rest > 0 {
        let d = rng.random_range(1..=rest);
        children.push(random_word(rng, letters, d));
        rest -= d;
    }
    NormalWord::new(children, head)
}

pub fn random_coefficient(rng: &mut impl Rng) -> Rational {
    const POOL: [(i64, i64); 8] = [(1, 1), (-1, 1), (2, 1), (-3, 1), (1, 2), (-2, 3), (5, 1), (3, 4)];
    let &(n, d) = POOL.choose(rng).unwrap();
    rational(n, d)
}

/// Nonzero polynomial with 1 to `max_terms` terms of degree at most
/// `max_degree`, one of them of degree exactly `max_degree`.
pub fn random_polynomial(rng: &mut impl Rng, letters: u32, max_degree: usize, max_terms: usize) -> Polynomial {
    loop {
        let mut f = Polynomial::zero();
        f.add_term(random_word(rng, letters, max_degree), random_coefficient(rng));
        for _ in 1..rng.random_range(1..=max_terms) {
            let d = rng.random_range(1..=max_degree);
            f.add_term(random_word(rng, letters, d), random_coefficient(rng));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// Nodes in preorder, relabelled by `labels`.
pub fn relabel(w: &NormalWord, labels: &mut impl Iterator<Item = Letter>) -> NormalWord {
    let head = labels.next().unwrap();
    let children = w.children().iter().map(|c| relabel(c, labels)).collect();
    NormalWord::new(children, head)
}

/// Every word obtained from `w` by putting `label` at one node.
pub fn mark_each_node(w: &NormalWord, label: Letter) -> Vec<NormalWord> {
    (0..w.degree())
        .map(|k| {
            let mut i = 0;
            relabel_at(w, k, label, &mut i)
        })
        .collect()
}

fn relabel_at(w: &NormalWord, k: usize, label: Letter, i: &mut usize) -> NormalWord {
    let head = if *i == k { label } else { w.head() };
    *i += 1;
    let children = w.children().iter().map(|c| relabel_at(c, k, label, i)).collect();
    NormalWord::new(children, head)
}

/// Unlabelled planar rooted trees with `degree` nodes (all labelled with the
/// first letter), built by inserting a leaf at every possible place.
pub fn trees_by_leaf_insertion(degree: usize) -> BTreeSet<NormalWord> {
    let x = Letter::new(0);
    let mut level: BTreeSet<NormalWord> = [NormalWord::letter(x)].into();
    for _ in 1..degree {
        let mut next = BTreeSet::new();
        for t in &level {
            next.extend(insert_leaf(t, x));
        }
        level = next;
    }
    level
}

fn insert_leaf(t: &NormalWord, x: Letter) -> Vec<NormalWord> {
    let mut out = Vec::new();
    let kids = t.children();
    for pos in 0..=kids.len() {
        let mut c = kids.to_vec();
        c.insert(pos, NormalWord::letter(x));
        out.push(NormalWord::new(c, t.head()));
    }
    for (i, kid) in kids.iter().enumerate() {
        for grown in insert_leaf(kid, x) {
            let mut c = kids.to_vec();
            c[i] = grown;
            out.push(NormalWord::new(c, t.head()));
        }
    }
    out
}

/// Every nondecreasing sequence of `len` cuts in `0..=m`.
pub fn cut_sequences(m: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, len: usize, lo: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for c in lo..=m {
            prefix.push(c);
            go(m, len, c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, len, 0, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Row echelon basis of a subspace, pivoting on the smallest word of each row.
#[derive(Default)]
pub struct Span {
    rows: BTreeMap<NormalWord, BTreeMap<NormalWord, Rational>>,
}

impl Span {
    fn reduce(&self, f: &Polynomial) -> BTreeMap<NormalWord, Rational> {
        let mut row: BTreeMap<NormalWord, Rational> = f.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        loop {
            let Some((w, c)) =
                row.iter().find(|(w, _)| self.rows.contains_key(*w)).map(|(w, c)| (w.clone(), c.clone()))
            else {
                return row;
            };
            for (v, d) in &self.rows[&w] {
                let e = row.entry(v.clone()).or_insert_with(Rational::zero);
                *e -= &c * d;
                if e.is_zero() {
                    row.remove(v);
                }
            }
        }
    }

    pub fn insert(&mut self, f: &Polynomial) {
        let row = self.reduce(f);
        let Some((pivot, c)) = row.iter().next().map(|(w, c)| (w.clone(), c.clone())) else { return };
        let row = row.into_iter().map(|(w, d)| (w, d / &c)).collect();
        self.rows.insert(pivot, row);
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }
}

/// `h ∈ Id(f)` by linear algebra over all `psi(u)` of degree at most
/// `deg(h)`, with `u` ranging over words with exactly one marker.
pub fn ideal_membership_oracle(letters: u32, f: &Polynomial, h: &Polynomial) -> bool {
    if h.is_zero() {
        return true;
    }
    let df = f.max_degree();
    let dh = h.max_degree();
    if dh < df {
        return false;
    }
    let psi = Homomorphism::identity_on((0..letters).map(Letter::new)).with_image(Letter::MARKER, f.clone());
    let mut span = Span::default();
    for k in 1..=dh + 1 - df {
        let mut marked = BTreeSet::new();
        for w in enumerate_normal(letters as usize, k).unwrap() {
            marked.extend(mark_each_node(&w, Letter::MARKER));
        }
        for u in marked {
            span.insert(&psi.apply(&Polynomial::word(u)).unwrap());
        }
    }
    span.contains(h)
}

/// A random word with exactly one marker, of degree `degree`.
pub fn random_marked(rng: &mut impl Rng, letters: u32, degree: usize) -> NormalWord {
    let w = random_word(rng, letters, degree);
    let k = rng.random_range(0..degree);
    mark_each_node(&w, Letter::MARKER).swap_remove(k)
}

/// [`random_word`] of a random degree in `1..=max_degree`.
pub fn random_word_upto(rng: &mut impl Rng, letters: u32, max_degree: usize) -> NormalWord {
    let d = rng.random_range(1..=max_degree);
    random_word(rng, letters, d)
}

/// [`random_polynomial`] of a random degree in `1..=max_degree`.
pub fn random_polynomial_upto(rng: &mut impl Rng, letters: u32, max_degree: usize, max_terms: usize) -> Polynomial {
    let d = rng.random_range(1..=max_degree);
    random_polynomial(rng, letters, d, max_terms)
}
