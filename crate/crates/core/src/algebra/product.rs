use std::collections::HashMap;

use num_traits::One;

use super::{Polynomial, Rational};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::words::{GeneralWord, Letter, NormalWord};

/// `<args; target>` for normal words, expanded in the normal-word basis.
pub fn product_words(args: &[NormalWord], target: &NormalWord) -> Result<Polynomial> {
    let args: Vec<Polynomial> = args.iter().cloned().map(Polynomial::word).collect();
    product_with_budget(&args, &Polynomial::word(target.clone()), &mut Budget::default())
}

/// Multilinear brace product `<args; target>` with the default term budget.
pub fn product(args: &[Polynomial], target: &Polynomial) -> Result<Polynomial> {
    product_with_budget(args, target, &mut Budget::default())
}

/// Multilinear brace product `<args; target>`.
///
/// For `target = <u_n,...,u_1;x>` this sums, over every split of the argument
/// sequence into consecutive blocks `V_2n,...,V_0`, the word
/// `<V_2n, <V_2n-1;u_n>, ..., V_2, <V_1;u_1>, V_0; x>` where inner blocks are
/// themselves expanded and `<;u> = u`.
pub fn product_with_budget(args: &[Polynomial], target: &Polynomial, budget: &mut Budget) -> Result<Polynomial> {
    if args.is_empty() {
        return Err(Error::EmptyArguments);
    }
    let mut out = Polynomial::zero();
    for (w, c) in target.terms() {
        let part = expand(args, w, budget)?;
        out.add_scaled(&part, c);
    }
    Ok(out)
}

/// Expands a general word into the normal-word basis; all coefficients of the
/// result are positive integers.
pub fn normalize(w: &GeneralWord) -> Result<Polynomial> {
    normalize_with_budget(w, &mut Budget::default())
}

pub fn normalize_with_budget(w: &GeneralWord, budget: &mut Budget) -> Result<Polynomial> {
    match w {
        GeneralWord::Leaf(x) => Ok(Polynomial::letter(*x)),
        GeneralWord::Node { args, target } => {
            if let Some(n) = w.to_normal() {
                return Ok(Polynomial::word(n));
            }
            let args = args.iter().map(|a| normalize_with_budget(a, budget)).collect::<Result<Vec<_>>>()?;
            let target = normalize_with_budget(target, budget)?;
            product_with_budget(&args, &target, budget)
        }
    }
}

fn expand(args: &[Polynomial], target: &NormalWord, budget: &mut Budget) -> Result<Polynomial> {
    let head = target.head();
    let kids = target.children();
    if kids.is_empty() {
        let slots: Vec<&Polynomial> = args.iter().collect();
        return graft(&slots, head, budget);
    }
    let m = args.len();
    let n = kids.len();

    // <V; u_k> for every nonempty interval V of the arguments
    let mut inner: HashMap<(usize, usize, usize), Polynomial> = HashMap::new();
    for (k, kid) in kids.iter().enumerate() {
        for s in 0..m {
            for e in s + 1..=m {
                inner.insert((k, s, e), expand(&args[s..e], kid, budget)?);
            }
        }
    }
    let kid_polys: Vec<Polynomial> = kids.iter().cloned().map(Polynomial::word).collect();

    let mut out = Polynomial::zero();
    let mut cuts = vec![0usize; 2 * n];
    loop {
        let mut slots: Vec<&Polynomial> = Vec::with_capacity(m + n);
        for b in 0..=2 * n {
            let s = if b == 0 { 0 } else { cuts[b - 1] };
            let e = if b == 2 * n { m } else { cuts[b] };
            if b % 2 == 0 {
                slots.extend(&args[s..e]);
            } else if s == e {
                slots.push(&kid_polys[b / 2]);
            } else {
                slots.push(&inner[&(b / 2, s, e)]);
            }
        }
        let part = graft(&slots, head, budget)?;
        out.add_scaled(&part, &Rational::one());
        if !next_cuts(&mut cuts, m) {
            break;
        }
    }
    Ok(out)
}

/// Advances a nondecreasing sequence with entries in `0..=max`.
fn next_cuts(cuts: &mut [usize], max: usize) -> bool {
    let Some(i) = cuts.iter().rposition(|&c| c < max) else {
        return false;
    };
    let v = cuts[i] + 1;
    for c in &mut cuts[i..] {
        *c = v;
    }
    true
}

/// `<slots; x>` for a letter target: the Cartesian product of slot terms.
fn graft(slots: &[&Polynomial], head: Letter, budget: &mut Budget) -> Result<Polynomial> {
    if slots.iter().any(|p| p.is_zero()) {
        return Ok(Polynomial::zero());
    }
    let count = slots.iter().try_fold(1u64, |acc, p| acc.checked_mul(p.len() as u64));
    budget.charge(count.unwrap_or(u64::MAX))?;

    let terms: Vec<Vec<(&NormalWord, &Rational)>> = slots.iter().map(|p| p.terms().collect()).collect();
    let mut idx = vec![0usize; slots.len()];
    let mut out = Polynomial::zero();
    loop {
        let mut children = Vec::with_capacity(slots.len());
        let mut coeff: Option<Rational> = None;
        for (t, &i) in terms.iter().zip(&idx) {
            let (w, c) = t[i];
            children.push(w.clone());
            if !c.is_one() {
                coeff = Some(match coeff {
                    None => c.clone(),
                    Some(acc) => acc * c,
                });
            }
        }
        out.add_term(NormalWord::new(children, head), coeff.unwrap_or_else(Rational::one));

        let mut pos = slots.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < terms[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::integer;
    use crate::words::tests::{node, x};

    // a < b < c < d
    fn abcd() -> (NormalWord, NormalWord, NormalWord, NormalWord) {
        (x(1), x(2), x(3), x(4))
    }

    fn sum(words: &[NormalWord]) -> Polynomial {
        Polynomial::from_terms(words.iter().map(|w| (w.clone(), integer(1))))
    }

    #[test]
    fn first_identity() {
        let (a, b, c, _) = abcd();
        let lhs = product_words(std::slice::from_ref(&a), &node(std::slice::from_ref(&b), 3)).unwrap();
        let rhs = sum(&[node(&[a.clone(), b.clone()], 3), node(&[b.clone(), a.clone()], 3), node(&[node(&[a], 2)], 3)]);
        assert_eq!(lhs, rhs);
        let _ = c;
    }

    #[test]
    fn second_identity() {
        let (a, b, c, _) = abcd();
        let d = 4;
        let lhs = product_words(&[a.clone(), b.clone()], &node(std::slice::from_ref(&c), d)).unwrap();
        let rhs = sum(&[
            node(&[a.clone(), b.clone(), c.clone()], d),
            node(&[a.clone(), node(std::slice::from_ref(&b), 3)], d),
            node(&[node(&[a.clone(), b.clone()], 3)], d),
            node(&[a.clone(), c.clone(), b.clone()], d),
            node(&[node(std::slice::from_ref(&a), 3), b.clone()], d),
            node(&[c.clone(), a.clone(), b.clone()], d),
        ]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn letter_target() {
        let v = node(&[x(1)], 2);
        let p = product_words(std::slice::from_ref(&v), &x(1)).unwrap();
        assert_eq!(p, Polynomial::word(node(&[v], 1)));
    }

    #[test]
    fn empty_arguments_rejected() {
        assert_eq!(product_words(&[], &x(1)), Err(Error::EmptyArguments));
        assert_eq!(product(&[], &Polynomial::letter(Letter::x(1))), Err(Error::EmptyArguments));
    }

    #[test]
    fn linear_in_slots() {
        let a = Polynomial::word(x(1));
        let b = Polynomial::word(x(2));
        let c = Polynomial::word(x(3));
        let p = product(&[&a + &b], &c).unwrap();
        assert_eq!(p, sum(&[node(&[x(1)], 3), node(&[x(2)], 3)]));

        let bc = Polynomial::word(node(&[x(2)], 3));
        let twice = product(&[a.scale(&integer(2))], &bc).unwrap();
        assert_eq!(twice, product(std::slice::from_ref(&a), &bc).unwrap().scale(&integer(2)));
        assert!(product(&[Polynomial::zero()], &c).unwrap().is_zero());
    }

    #[test]
    fn nested_product_matches_identity() {
        let (a, b, c, _) = abcd();
        let inner = product(&[Polynomial::word(b.clone())], &Polynomial::word(c.clone())).unwrap();
        let lhs = product(&[Polynomial::word(a.clone())], &inner).unwrap();
        let expected = normalize(
            &GeneralWord::node(
                vec![GeneralWord::from(&a)],
                GeneralWord::node(vec![GeneralWord::from(&b)], GeneralWord::from(&c)).unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, expected);
        assert_eq!(lhs.len(), 3);
    }

    #[test]
    fn budget_aborts() {
        let f = Polynomial::from_terms((1..=4).map(|i| (x(i), integer(1))));
        let mut budget = Budget::new(10);
        let err = product_with_budget(&[f.clone(), f.clone()], &f, &mut budget).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { limit: 10 });
    }

    #[test]
    fn cut_sequences() {
        let mut cuts = vec![0; 2];
        let mut count = 1;
        while next_cuts(&mut cuts, 3) {
            count += 1;
        }
        // nondecreasing pairs in 0..=3
        assert_eq!(count, 10);
    }
}
