//! Endomorphisms of the free brace algebra on `x1, x2`, elementary
//! transformations, and decomposition of automorphisms into elementary
//! factors.
//!
//! Factor lists compose left to right: folding [`apply_elementary`] over the
//! list, starting from the identity, yields the decomposed endomorphism.

use std::fmt;

use num_traits::{One, Zero};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{integer, rational, Homomorphism, Polynomial, Rational};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::subalgebras::{reduce_pair, Generator};
use crate::words::{enumerate_over, Letter, NormalWord};

/// `x_index -> scalar * x_index + shift`, the other generator fixed. The
/// shift is a polynomial in the other generator only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryAuto {
    index: Generator,
    scalar: Rational,
    shift: Polynomial,
}

impl ElementaryAuto {
    pub fn new(index: Generator, scalar: Rational, shift: Polynomial) -> Result<ElementaryAuto> {
        if scalar.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let other = index.other().letter();
        if let Some(x) = shift.letters().into_iter().find(|&x| x != other) {
            return Err(if x == index.letter() { Error::ShiftUsesOwnLetter(other) } else { Error::ForeignLetter(x) });
        }
        Ok(ElementaryAuto { index, scalar, shift })
    }

    /// Like [`ElementaryAuto::new`], with the shift written in the marker `y`
    /// standing for the other generator.
    pub fn from_marked(index: Generator, scalar: Rational, shift: &Polynomial) -> Result<ElementaryAuto> {
        let other = index.other().letter();
        ElementaryAuto::new(index, scalar, shift.map_letters(&|x| if x.is_marker() { other } else { x }))
    }

    pub fn identity(index: Generator) -> ElementaryAuto {
        ElementaryAuto { index, scalar: integer(1), shift: Polynomial::zero() }
    }

    pub fn index(&self) -> Generator {
        self.index
    }

    pub fn scalar(&self) -> &Rational {
        &self.scalar
    }

    pub fn shift(&self) -> &Polynomial {
        &self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.scalar.is_one() && self.shift.is_zero()
    }

    /// `x_i -> x_i / scalar - shift / scalar`.
    pub fn inverse(&self) -> ElementaryAuto {
        let inv = self.scalar.recip();
        let shift = self.shift.scale(&-inv.clone());
        ElementaryAuto { index: self.index, scalar: inv, shift }
    }

    pub fn to_endo(&self) -> Endo2 {
        let moved = &Polynomial::letter(self.index.letter()).scale(&self.scalar) + &self.shift;
        let fixed = Polynomial::letter(self.index.other().letter());
        match self.index {
            Generator::First => Endo2 { f1: moved, f2: fixed },
            Generator::Second => Endo2 { f1: fixed, f2: moved },
        }
    }

    /// The image of `f` under this transformation.
    pub fn apply(&self, f: &Polynomial, budget: &mut Budget) -> Result<Polynomial> {
        self.to_endo().apply(f, budget)
    }
}

impl fmt::Display for ElementaryAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.index.letter();
        let moved = &Polynomial::letter(x).scale(&self.scalar) + &self.shift;
        write!(f, "{x} -> {moved}")
    }
}

/// `x1 -> f1, x2 -> f2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Endo2 {
    pub f1: Polynomial,
    pub f2: Polynomial,
}

impl Endo2 {
    pub fn identity() -> Endo2 {
        Endo2 { f1: Polynomial::letter(Letter::x(1)), f2: Polynomial::letter(Letter::x(2)) }
    }

    pub fn new(f1: Polynomial, f2: Polynomial) -> Result<Endo2> {
        for f in [&f1, &f2] {
            if let Some(x) = f.letters().into_iter().find(|x| x.is_marker() || x.index() > 1) {
                return Err(Error::ForeignLetter(x));
            }
        }
        Ok(Endo2 { f1, f2 })
    }

    pub fn component(&self, g: Generator) -> &Polynomial {
        match g {
            Generator::First => &self.f1,
            Generator::Second => &self.f2,
        }
    }

    fn component_mut(&mut self, g: Generator) -> &mut Polynomial {
        match g {
            Generator::First => &mut self.f1,
            Generator::Second => &mut self.f2,
        }
    }

    pub fn homomorphism(&self) -> Homomorphism {
        Homomorphism::new().with_image(Letter::x(1), self.f1.clone()).with_image(Letter::x(2), self.f2.clone())
    }

    pub fn apply(&self, f: &Polynomial, budget: &mut Budget) -> Result<Polynomial> {
        self.homomorphism().apply_with_budget(f, budget)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Endo2, budget: &mut Budget) -> Result<Endo2> {
        let hom = self.homomorphism();
        Ok(Endo2 { f1: hom.apply_with_budget(&other.f1, budget)?, f2: hom.apply_with_budget(&other.f2, budget)? })
    }
}

impl fmt::Display for Endo2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f1, self.f2)
    }
}

/// `phi ∘ e`: the indexed component `f_i` becomes `scalar * f_i + shift(f_j)`.
pub fn apply_elementary(e: &ElementaryAuto, phi: &Endo2, budget: &mut Budget) -> Result<Endo2> {
    let mut out = phi.clone();
    if e.shift.is_zero() && e.scalar.is_one() {
        return Ok(out);
    }
    let other = e.index.other();
    let shift = Homomorphism::new()
        .with_image(other.letter(), phi.component(other).clone())
        .apply_with_budget(&e.shift, budget)?;
    let moved = out.component_mut(e.index);
    *moved = moved.scale(&e.scalar);
    moved.add_scaled(&shift, &integer(1));
    Ok(out)
}

/// Folds the factors over the identity.
pub fn compose_factors(factors: &[ElementaryAuto], budget: &mut Budget) -> Result<Endo2> {
    factors.iter().try_fold(Endo2::identity(), |phi, e| apply_elementary(e, &phi, budget))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Tame(Vec<ElementaryAuto>),
    /// The pair reduction stopped at `terminal`, which is not an invertible
    /// linear pair.
    NotAutomorphism {
        terminal: (Polynomial, Polynomial),
    },
}

/// Writes an automorphism as a product of elementary transformations.
///
/// Each reduction step `f_i <- f_i - c * q(f_j)` is right composition with
/// an elementary transformation; an automorphism reduces to an invertible
/// linear pair, which 2x2 elimination takes to the identity. The inverses of
/// the recorded steps, newest first, compose to the input.
pub fn decompose_tame(phi: &Endo2, budget: &mut Budget) -> Result<Decomposition> {
    Endo2::new(phi.f1.clone(), phi.f2.clone())?;
    let report = reduce_pair(&phi.f1, &phi.f2, budget)?;
    let mut steps = Vec::new();
    for step in &report.steps {
        let shift = Polynomial::word(step.q.clone())
            .map_letters(&|_| step.which.other().letter())
            .scale(&-step.coefficient.clone());
        steps.push(ElementaryAuto { index: step.which, scalar: integer(1), shift });
    }
    let terminal = report.final_pair.clone();
    let Some(linear) = LinearPair::read(&terminal.0, &terminal.1) else {
        return Ok(Decomposition::NotAutomorphism { terminal });
    };
    steps.extend(linear.eliminate().into_iter().filter(|e| !e.is_identity()));
    Ok(Decomposition::Tame(steps.iter().rev().map(ElementaryAuto::inverse).collect()))
}

/// `p1 = a*x1 + b*x2, p2 = c*x1 + d*x2` with `ad - bc != 0`.
struct LinearPair {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl LinearPair {
    fn read(p1: &Polynomial, p2: &Polynomial) -> Option<LinearPair> {
        let x1 = NormalWord::letter(Letter::x(1));
        let x2 = NormalWord::letter(Letter::x(2));
        let coeffs = |p: &Polynomial| -> Option<(Rational, Rational)> {
            if p.terms().any(|(w, _)| *w != x1 && *w != x2) {
                return None;
            }
            let get = |w| p.coefficient(w).cloned().unwrap_or_else(Rational::zero);
            Some((get(&x1), get(&x2)))
        };
        let (a, b) = coeffs(p1)?;
        let (c, d) = coeffs(p2)?;
        if (&a * &d - &b * &c).is_zero() {
            return None;
        }
        Some(LinearPair { a, b, c, d })
    }

    /// Elementary steps taking the pair to `(x1, x2)` by right composition.
    fn eliminate(mut self) -> Vec<ElementaryAuto> {
        let x1 = Polynomial::letter(Letter::x(1));
        let x2 = Polynomial::letter(Letter::x(2));
        let mut out = Vec::new();
        if self.a.is_zero() {
            out.push(ElementaryAuto { index: Generator::First, scalar: integer(1), shift: x2.clone() });
            self.a = self.c.clone();
            self.b += &self.d;
        }
        let det = &self.a * &self.d - &self.b * &self.c;
        let pivot = &det / &self.a;
        let scalar = pivot.recip();
        let shift = x1.scale(&-(&self.c / (&self.a * &pivot)));
        out.push(ElementaryAuto { index: Generator::Second, scalar, shift });
        let scalar = self.a.recip();
        let shift = x2.scale(&-(&self.b / &self.a));
        out.push(ElementaryAuto { index: Generator::First, scalar, shift });
        out
    }
}

/// A composite of `steps` random elementary transformations, with the factors
/// that produced it.
///
/// Shifts have 1 to 3 terms of degree at most `max_deg`. Each shift degree is
/// also limited so no component exceeds degree `max_deg^2`.
pub fn random_tame(seed: u64, steps: usize, max_deg: usize) -> (Endo2, Vec<ElementaryAuto>) {
    const SCALARS: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (3, 1)];
    const COEFFICIENTS: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-3, 1), (1, 2), (-2, 3)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = max_deg.max(1).pow(2);
    let mut degrees = [1usize, 1];
    let mut factors = Vec::with_capacity(steps);
    for _ in 0..steps {
        let index = if rng.random_bool(0.5) { Generator::First } else { Generator::Second };
        let (i, j) = match index {
            Generator::First => (0, 1),
            Generator::Second => (1, 0),
        };
        let &(n, d) = SCALARS.choose(&mut rng).expect("nonempty");
        let top = max_deg.min(cap / degrees[j]);
        let mut shift = Polynomial::zero();
        if top > 0 {
            let other = index.other().letter();
            for _ in 0..rng.random_range(1..=3) {
                let degree = rng.random_range(1..=top);
                let words = enumerate_over(&[other], degree).expect("degree is positive");
                let w = words.choose(&mut rng).expect("nonempty").clone();
                let &(n, d) = COEFFICIENTS.choose(&mut rng).expect("nonempty");
                shift.add_term(w, rational(n, d));
            }
        }
        degrees[i] = degrees[i].max(shift.max_degree() * degrees[j]);
        factors.push(ElementaryAuto { index, scalar: rational(n, d), shift });
    }
    let phi = compose_factors(&factors, &mut Budget::unlimited()).expect("unlimited budget");
    (phi, factors)
}
