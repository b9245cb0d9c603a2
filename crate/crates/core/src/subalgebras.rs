//! Two-generated subalgebras: reduce a generating pair by cancelling leading
//! words against one-variable expressions in the other generator until the
//! pair is visibly free.

use std::fmt;

use crate::algebra::{leading_of_image, Homomorphism, Polynomial, Rational};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::words::{enumerate_over, Letter, NormalWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    First,
    Second,
}

impl Generator {
    pub fn other(self) -> Generator {
        match self {
            Generator::First => Generator::Second,
            Generator::Second => Generator::First,
        }
    }

    /// The variable `x1` or `x2` this generator corresponds to.
    pub fn letter(self) -> Letter {
        match self {
            Generator::First => Letter::x(1),
            Generator::Second => Letter::x(2),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::First => "f1",
            Generator::Second => "f2",
        })
    }
}

/// `f_which <- f_which - coefficient * q(f_other)`, with `q` a word in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub which: Generator,
    pub coefficient: Rational,
    pub q: NormalWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOutcome {
    /// Algebraically independent free generators.
    FreeRank2(Polynomial, Polynomial),
    /// One generator reduced to zero; the other freely generates.
    FreeRank1(Polynomial),
    ZeroPair,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub steps: Vec<ReductionStep>,
    pub outcome: PairOutcome,
    /// The pair after all steps, in input positions.
    pub final_pair: (Polynomial, Polynomial),
}

impl PairReport {
    /// Re-applies the recorded steps to an input pair.
    pub fn replay(&self, f1: &Polynomial, f2: &Polynomial, budget: &mut Budget) -> Result<(Polynomial, Polynomial)> {
        let mut pair = (f1.clone(), f2.clone());
        for step in &self.steps {
            step.apply(&mut pair, budget)?;
        }
        Ok(pair)
    }
}

impl ReductionStep {
    pub fn apply(&self, pair: &mut (Polynomial, Polynomial), budget: &mut Budget) -> Result<()> {
        let image = substitute(&self.q, get(pair, self.which.other()), budget)?;
        get_mut(pair, self.which).add_scaled(&image, &-self.coefficient.clone());
        Ok(())
    }

    /// Undoes [`ReductionStep::apply`].
    pub fn undo(&self, pair: &mut (Polynomial, Polynomial), budget: &mut Budget) -> Result<()> {
        let image = substitute(&self.q, get(pair, self.which.other()), budget)?;
        get_mut(pair, self.which).add_scaled(&image, &self.coefficient);
        Ok(())
    }
}

fn get(pair: &(Polynomial, Polynomial), g: Generator) -> &Polynomial {
    match g {
        Generator::First => &pair.0,
        Generator::Second => &pair.1,
    }
}

fn get_mut(pair: &mut (Polynomial, Polynomial), g: Generator) -> &mut Polynomial {
    match g {
        Generator::First => &mut pair.0,
        Generator::Second => &mut pair.1,
    }
}

/// `q(base)`: the word `q` in the marker letter with `y -> base`.
pub fn substitute(q: &NormalWord, base: &Polynomial, budget: &mut Budget) -> Result<Polynomial> {
    Homomorphism::new().with_image(Letter::MARKER, base.clone()).apply_word(q, budget)
}

/// A one-variable word `q` with `lead(q(base)) = lead(target)`, if any.
///
/// Only words of degree `deg(target) / deg(base)` can match. Candidates are
/// scanned in increasing order using leading words alone.
pub fn find_q_reducer(target: &Polynomial, base: &Polynomial) -> Result<Option<NormalWord>> {
    find_q_reducer_with_budget(target, base, &mut Budget::unlimited())
}

pub fn find_q_reducer_with_budget(
    target: &Polynomial,
    base: &Polynomial,
    budget: &mut Budget,
) -> Result<Option<NormalWord>> {
    let (t_lead, _) = target.leading()?;
    let (b_lead, _) = base.leading()?;
    if t_lead.degree() % b_lead.degree() != 0 {
        return Ok(None);
    }
    let k = t_lead.degree() / b_lead.degree();
    budget.charge(catalan(k - 1))?;
    let lead_of = |_: Letter| Some(b_lead.clone());
    for q in enumerate_over(&[Letter::MARKER], k)? {
        if leading_of_image(&q, &lead_of).as_ref() == Some(t_lead) {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..n as u64 {
        c = match c.checked_mul(2 * (2 * i + 1)) {
            Some(v) => v / (i + 2),
            None => return u64::MAX,
        };
    }
    c
}

/// Reduces `(f1, f2)` until it is a free pair, a single free generator, or
/// zero. The generator with the larger leading word is reduced first (`f1` on
/// ties).
pub fn reduce_pair(f1: &Polynomial, f2: &Polynomial, budget: &mut Budget) -> Result<PairReport> {
    let mut pair = (f1.clone(), f2.clone());
    let mut steps = Vec::new();
    'outer: loop {
        let outcome = match (pair.0.is_zero(), pair.1.is_zero()) {
            (true, true) => Some(PairOutcome::ZeroPair),
            (false, true) => Some(PairOutcome::FreeRank1(pair.0.clone())),
            (true, false) => Some(PairOutcome::FreeRank1(pair.1.clone())),
            (false, false) => None,
        };
        if let Some(outcome) = outcome {
            return Ok(PairReport { steps, outcome, final_pair: pair });
        }
        let order = if pair.0.leading_word() >= pair.1.leading_word() {
            [Generator::First, Generator::Second]
        } else {
            [Generator::Second, Generator::First]
        };
        for which in order {
            let target = get(&pair, which);
            let base = get(&pair, which.other());
            if let Some(q) = find_q_reducer_with_budget(target, base, budget)? {
                let image = substitute(&q, base, budget)?;
                let coefficient = target.leading_coefficient().expect("nonzero")
                    / image.leading_coefficient().expect("q(base) is nonzero");
                let step = ReductionStep { which, coefficient, q };
                step.apply(&mut pair, budget)?;
                steps.push(step);
                continue 'outer;
            }
        }
        let outcome = PairOutcome::FreeRank2(pair.0.clone(), pair.1.clone());
        return Ok(PairReport { steps, outcome, final_pair: pair });
    }
}

/// Whether `f1, f2` satisfy no nontrivial brace polynomial relation.
pub fn is_algebraically_independent(f1: &Polynomial, f2: &Polynomial, budget: &mut Budget) -> Result<bool> {
    if f1.is_zero() || f2.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(matches!(reduce_pair(f1, f2, budget)?.outcome, PairOutcome::FreeRank2(..)))
}
