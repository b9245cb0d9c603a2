//! Letters, normal brace words (letter-labelled planar rooted trees) and
//! general brace words, together with the degree-breadth-inverse-lexicographic
//! well order.
//!
//! A normal word `<u_n,...,u_1;x>` is stored with its children in display
//! order `[u_n, ..., u_1]`. The order compares degree, then breadth, then the
//! head letter, then the children starting from the rightmost one (`u_1`).

mod enumerate;

pub use enumerate::{enumerate_marked, enumerate_normal, enumerate_over};

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// A generator symbol. Base letters `x1 < x2 < ...` are dense indices; the
/// marker letter `y` sits above every base letter.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(u32);

impl Letter {
    /// The distinguished marker `y`, greater than every base letter.
    pub const MARKER: Letter = Letter(u32::MAX);

    /// Base letter with the given zero-based index.
    pub fn new(index: u32) -> Letter {
        assert!(index != u32::MAX, "index reserved for the marker letter");
        Letter(index)
    }

    /// Base letter `x_i` with a one-based index, as in `x1, x2, ...`.
    pub fn x(i: u32) -> Letter {
        assert!(i >= 1, "letters are numbered from x1");
        Letter::new(i - 1)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_marker(self) -> bool {
        self == Letter::MARKER
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_marker() {
            write!(f, "y")
        } else {
            write!(f, "x{}", self.0 + 1)
        }
    }
}

struct Node {
    head: Letter,
    children: Vec<NormalWord>,
    degree: usize,
}

/// A normal brace word: every bracket target is a letter.
///
/// Cloning is cheap (shared immutable tree). Equality is structural and
/// `Ord` is the degree-breadth-inverse-lexicographic order.
#[derive(Clone)]
pub struct NormalWord(Arc<Node>);

impl NormalWord {
    pub fn letter(head: Letter) -> NormalWord {
        NormalWord(Arc::new(Node { head, children: Vec::new(), degree: 1 }))
    }

    /// `<children; head>` with `children` in display order `[u_n, ..., u_1]`.
    pub fn new(children: Vec<NormalWord>, head: Letter) -> NormalWord {
        let degree = 1 + children.iter().map(NormalWord::degree).sum::<usize>();
        NormalWord(Arc::new(Node { head, children, degree }))
    }

    pub fn head(&self) -> Letter {
        self.0.head
    }

    /// Root children in display order `[u_n, ..., u_1]`.
    pub fn children(&self) -> &[NormalWord] {
        &self.0.children
    }

    /// Number of letter occurrences.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// One plus the number of root children.
    pub fn breadth(&self) -> usize {
        self.0.children.len() + 1
    }

    pub fn is_letter(&self) -> bool {
        self.0.children.is_empty()
    }

    /// Number of occurrences of `x`.
    pub fn count(&self, x: Letter) -> usize {
        usize::from(self.head() == x) + self.children().iter().map(|c| c.count(x)).sum::<usize>()
    }

    pub fn contains(&self, x: Letter) -> bool {
        self.head() == x || self.children().iter().any(|c| c.contains(x))
    }

    /// Calls `f` on every letter occurrence, head first, children left to right.
    pub fn for_each_letter(&self, f: &mut impl FnMut(Letter)) {
        f(self.head());
        for c in self.children() {
            c.for_each_letter(f);
        }
    }

    /// Relabels letters, keeping the tree shape.
    pub fn map_letters(&self, f: &impl Fn(Letter) -> Letter) -> NormalWord {
        NormalWord::new(self.children().iter().map(|c| c.map_letters(f)).collect(), f(self.head()))
    }

    /// `(degree, breadth, head, u_1, u_2, ..., u_n)`.
    pub fn weight(&self) -> Weight {
        Weight {
            degree: self.degree(),
            breadth: self.breadth(),
            head: self.head(),
            args: self.children().iter().rev().cloned().collect(),
        }
    }

    fn ptr_eq(&self, other: &NormalWord) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

/// The weight tuple of a normal word. Lexicographic comparison of weights is
/// the word order; two words are equal iff their weights are.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Weight {
    pub degree: usize,
    pub breadth: usize,
    pub head: Letter,
    /// Children rightmost first: `[u_1, u_2, ..., u_n]`.
    pub args: Vec<NormalWord>,
}

/// Three-way comparison in the degree-breadth-inverse-lexicographic order.
pub fn compare(u: &NormalWord, v: &NormalWord) -> Ordering {
    u.cmp(v)
}

impl Ord for NormalWord {
    fn cmp(&self, other: &NormalWord) -> Ordering {
        if self.ptr_eq(other) {
            return Ordering::Equal;
        }
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.breadth().cmp(&other.breadth()))
            .then_with(|| self.head().cmp(&other.head()))
            .then_with(|| {
                // equal breadth, so both child lists have the same length
                for (a, b) in self.children().iter().rev().zip(other.children().iter().rev()) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for NormalWord {
    fn partial_cmp(&self, other: &NormalWord) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for NormalWord {
    fn eq(&self, other: &NormalWord) -> bool {
        self.ptr_eq(other)
            || (self.degree() == other.degree() && self.head() == other.head() && self.children() == other.children())
    }
}

impl Eq for NormalWord {}

impl Hash for NormalWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.head().hash(state);
        self.degree().hash(state);
        self.children().hash(state);
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_letter() {
            return write!(f, "{}", self.head());
        }
        write!(f, "<")?;
        for (i, c) in self.children().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ";{}>", self.head())
    }
}

impl fmt::Debug for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Letter> for NormalWord {
    fn from(x: Letter) -> NormalWord {
        NormalWord::letter(x)
    }
}

/// An arbitrary brace word: the target of a bracket may itself be a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneralWord {
    Leaf(Letter),
    Node { args: Vec<GeneralWord>, target: Box<GeneralWord> },
}

impl GeneralWord {
    /// `<args; target>`; `args` must be nonempty.
    pub fn node(args: Vec<GeneralWord>, target: GeneralWord) -> Result<GeneralWord> {
        if args.is_empty() {
            return Err(Error::EmptyArguments);
        }
        Ok(GeneralWord::Node { args, target: Box::new(target) })
    }

    pub fn degree(&self) -> usize {
        match self {
            GeneralWord::Leaf(_) => 1,
            GeneralWord::Node { args, target } => args.iter().map(GeneralWord::degree).sum::<usize>() + target.degree(),
        }
    }

    /// `Some` iff every bracket target is a letter.
    pub fn to_normal(&self) -> Option<NormalWord> {
        match self {
            GeneralWord::Leaf(x) => Some(NormalWord::letter(*x)),
            GeneralWord::Node { args, target } => match **target {
                GeneralWord::Leaf(x) => {
                    let children = args.iter().map(GeneralWord::to_normal).collect::<Option<Vec<_>>>()?;
                    Some(NormalWord::new(children, x))
                }
                GeneralWord::Node { .. } => None,
            },
        }
    }

    pub fn is_normal(&self) -> bool {
        self.to_normal().is_some()
    }
}

impl From<&NormalWord> for GeneralWord {
    fn from(w: &NormalWord) -> GeneralWord {
        if w.is_letter() {
            GeneralWord::Leaf(w.head())
        } else {
            GeneralWord::Node {
                args: w.children().iter().map(GeneralWord::from).collect(),
                target: Box::new(GeneralWord::Leaf(w.head())),
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn x(i: u32) -> NormalWord {
        NormalWord::letter(Letter::x(i))
    }

    pub fn node(children: &[NormalWord], head: u32) -> NormalWord {
        NormalWord::new(children.to_vec(), Letter::x(head))
    }

    #[test]
    fn degree_and_breadth() {
        assert_eq!(x(1).degree(), 1);
        assert_eq!(node(&[x(1)], 2).degree(), 2);
        let w = node(&[node(&[x(1)], 1), x(2)], 1);
        assert_eq!(w.degree(), 4);
        assert_eq!(x(1).breadth(), 1);
        assert_eq!(node(&[x(1), x(1)], 1).breadth(), 3);
        assert_eq!(node(&[node(&[x(1)], 1)], 1).breadth(), 2);
    }

    #[test]
    fn compare_examples() {
        let a = node(&[x(1), x(1)], 1);
        let b = node(&[node(&[x(1)], 1)], 1);
        assert_eq!(compare(&a, &b), Ordering::Greater);
        assert_eq!(compare(&node(&[x(1)], 2), &node(&[x(2)], 1)), Ordering::Greater);
        // u_1 is the rightmost child
        assert_eq!(compare(&node(&[x(1), x(2)], 1), &node(&[x(2), x(1)], 1)), Ordering::Greater);
        assert_eq!(compare(&x(2), &node(&[x(1)], 1)), Ordering::Less);
        assert_eq!(compare(&a, &a.clone()), Ordering::Equal);
    }

    #[test]
    fn marker_is_above_base_letters() {
        assert!(Letter::MARKER > Letter::x(1_000_000));
        assert!(NormalWord::letter(Letter::MARKER) > x(7));
        assert_eq!(Letter::MARKER.to_string(), "y");
    }

    #[test]
    fn weight_agrees_with_order() {
        let words = [
            x(1),
            x(2),
            node(&[x(1)], 1),
            node(&[x(2)], 1),
            node(&[x(1), x(2)], 1),
            node(&[x(2), x(1)], 1),
            node(&[node(&[x(1)], 1)], 2),
        ];
        for u in &words {
            for v in &words {
                assert_eq!(u.cmp(v), u.weight().cmp(&v.weight()), "{u} vs {v}");
                assert_eq!(u == v, u.weight() == v.weight());
            }
        }
    }

    #[test]
    fn general_word_normality() {
        let leaf = |i| GeneralWord::Leaf(Letter::x(i));
        let normal = GeneralWord::node(vec![leaf(1)], leaf(2)).unwrap();
        assert_eq!(normal.to_normal(), Some(node(&[x(1)], 2)));
        let nested = GeneralWord::node(vec![leaf(1)], normal.clone()).unwrap();
        assert!(!nested.is_normal());
        assert_eq!(nested.degree(), 3);
        assert_eq!(GeneralWord::node(vec![], leaf(1)), Err(Error::EmptyArguments));
        assert_eq!(GeneralWord::from(&node(&[x(1)], 2)), normal);
    }
}
