//! Leading words of products without expanding them.
//!
//! The leading word of `<v_m,...,v_1; <u_n,...,u_1;x>>` is the flat word
//! `<w; x>` where `w` interleaves `v_m..v_1` with `u_n..u_1` (both orders
//! kept), and among all such interleavings it is the largest. Reading child
//! sequences from the right, that is the lexicographically largest merge.

use crate::words::{Letter, NormalWord};

/// Leading word of `<args; target>` for normal words. `args` may be empty.
pub fn leading_of_product(args: &[NormalWord], target: &NormalWord) -> NormalWord {
    if args.is_empty() {
        return target.clone();
    }
    NormalWord::new(largest_merge(args, target.children()), target.head())
}

/// Largest interleaving of two display-order child lists, compared from the
/// rightmost entry. Both inputs keep their relative order in the output.
pub fn largest_merge(left: &[NormalWord], right: &[NormalWord]) -> Vec<NormalWord> {
    let a: Vec<&NormalWord> = left.iter().rev().collect();
    let b: Vec<&NormalWord> = right.iter().rev().collect();
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        if a[i..] >= b[j..] {
            out.push(a[i].clone());
            i += 1;
        } else {
            out.push(b[j].clone());
            j += 1;
        }
    }
    out.extend(a[i..].iter().map(|w| (*w).clone()));
    out.extend(b[j..].iter().map(|w| (*w).clone()));
    out.reverse();
    out
}

/// Leading word of the image of `w` under a homomorphism whose images have
/// the leading words returned by `lead_of`. `None` if some letter has no
/// image or a zero image.
pub fn leading_of_image(w: &NormalWord, lead_of: &impl Fn(Letter) -> Option<NormalWord>) -> Option<NormalWord> {
    let head = lead_of(w.head())?;
    let args = w.children().iter().map(|c| leading_of_image(c, lead_of)).collect::<Option<Vec<_>>>()?;
    Some(leading_of_product(&args, &head))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::product_words;
    use crate::words::enumerate_normal;
    use crate::words::tests::{node, x};

    fn interleavings(a: &[NormalWord], b: &[NormalWord]) -> Vec<Vec<NormalWord>> {
        if a.is_empty() {
            return vec![b.to_vec()];
        }
        if b.is_empty() {
            return vec![a.to_vec()];
        }
        let mut out = Vec::new();
        for mut rest in interleavings(&a[1..], b) {
            rest.insert(0, a[0].clone());
            out.push(rest);
        }
        for mut rest in interleavings(a, &b[1..]) {
            rest.insert(0, b[0].clone());
            out.push(rest);
        }
        out
    }

    #[test]
    fn merge_matches_brute_force() {
        let pool: Vec<NormalWord> = (1..=3).flat_map(|d| enumerate_normal(2, d).unwrap()).collect();
        let mut checked = 0;
        for (i, a1) in pool.iter().enumerate().step_by(3) {
            for a2 in pool.iter().skip(i % 5).step_by(4) {
                for b1 in pool.iter().step_by(5) {
                    let left = vec![a1.clone(), a2.clone()];
                    let right = vec![b1.clone(), a1.clone()];
                    let best = interleavings(&left, &right)
                        .into_iter()
                        .map(|c| NormalWord::new(c, Letter::x(1)))
                        .max()
                        .unwrap();
                    assert_eq!(NormalWord::new(largest_merge(&left, &right), Letter::x(1)), best);
                    checked += 1;
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn agrees_with_full_expansion() {
        let small: Vec<NormalWord> = (1..=2).flat_map(|d| enumerate_normal(2, d).unwrap()).collect();
        let targets: Vec<NormalWord> = (1..=3).flat_map(|d| enumerate_normal(2, d).unwrap()).collect();
        for t in &targets {
            for a in &small {
                for b in &small {
                    let args = [a.clone(), b.clone()];
                    let full = product_words(&args, t).unwrap();
                    assert_eq!(full.leading_word(), Some(&leading_of_product(&args, t)), "<{a},{b};{t}>");
                }
            }
        }
    }

    #[test]
    fn image_lead() {
        // y -> <x1;x1>, q = <y;y>
        let q = NormalWord::new(vec![NormalWord::letter(Letter::MARKER)], Letter::MARKER);
        let base = node(&[x(1)], 1);
        let lead = leading_of_image(&q, &|_| Some(base.clone())).unwrap();
        assert_eq!(lead, node(&[x(1), base.clone()], 1));
        assert_eq!(leading_of_image(&q, &|_| None), None);
    }
}
