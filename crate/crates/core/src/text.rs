//! Text form of brace polynomials.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := [rational '*'] word
//! word     := IDENT | '<' word (',' word)* ';' word '>'
//! rational := INT ['/' INT]
//! ```
//!
//! Whitespace is insignificant and `⟨ ⟩` are accepted for `< >`. The literal
//! `0` denotes the zero polynomial. The identifier `y` always names the marker
//! letter, which sorts above every other letter.

use std::borrow::Cow;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{normalize_with_budget, Polynomial, Rational};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::words::{GeneralWord, Letter, NormalWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at position {position}: {message}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

/// Ordered generator names; `Letter::new(i)` is called `names[i]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// `x1, ..., xm`.
    pub fn indexed(m: usize) -> Alphabet {
        Alphabet { names: (1..=m).map(|i| format!("x{i}")).collect() }
    }

    /// Explicit names, in increasing letter order.
    pub fn from_names<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Result<Alphabet> {
        let mut out = Vec::new();
        for (i, name) in names.into_iter().enumerate() {
            let name = name.as_ref().trim().to_string();
            if !is_identifier(&name) {
                return Err(parse_error(i, format!("invalid letter name {name:?}")));
            }
            if name == "y" {
                return Err(parse_error(i, "y is reserved for the marker letter"));
            }
            if out.contains(&name) {
                return Err(parse_error(i, format!("duplicate letter name {name:?}")));
            }
            out.push(name);
        }
        Ok(Alphabet { names: out })
    }

    /// Alphabet of every identifier appearing in `texts` (except `y`).
    ///
    /// When all names look like `x1, x2, ...` the numbering is kept, so `x3`
    /// is the third letter even if `x1` and `x2` do not occur. Otherwise the
    /// names are sorted naturally (`a < b < x2 < x10`).
    pub fn infer<S: AsRef<str>>(texts: impl IntoIterator<Item = S>) -> Alphabet {
        let mut names: Vec<String> = Vec::new();
        for text in texts {
            for ident in identifiers(text.as_ref()) {
                if ident != "y" && !names.contains(&ident) {
                    names.push(ident);
                }
            }
        }
        let indices: Option<Vec<usize>> = names.iter().map(|n| x_index(n)).collect();
        if let Some(indices) = indices {
            return Alphabet::indexed(indices.into_iter().max().unwrap_or(0));
        }
        names.sort_by_key(|a| natural_key(a));
        Alphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.names.len() as u32).map(Letter::new)
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        if name == "y" {
            return Some(Letter::MARKER);
        }
        self.names.iter().position(|n| n == name).map(|i| Letter::new(i as u32))
    }

    pub fn name(&self, x: Letter) -> Cow<'_, str> {
        if x.is_marker() {
            return Cow::Borrowed("y");
        }
        match self.names.get(x.index() as usize) {
            Some(n) => Cow::Borrowed(n),
            None => Cow::Owned(x.to_string()),
        }
    }
}

fn x_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn natural_key(name: &str) -> (String, Option<u128>, String) {
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (prefix, digits) = name.split_at(split);
    (prefix.to_string(), digits.parse().ok(), name.to_string())
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic()) && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn identifiers(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut in_ident = false;
    for c in text.chars().chain(std::iter::once(' ')) {
        if in_ident && (c.is_alphanumeric() || c == '_') {
            current.push(c);
        } else if !in_ident && c.is_alphabetic() {
            in_ident = true;
            current.push(c);
        } else {
            if in_ident {
                out.push(std::mem::take(&mut current));
            }
            in_ident = false;
        }
    }
    out
}

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse(ParseError { position, message: message.into() })
}

/// Parses an expression and normalizes it.
pub fn parse_polynomial(text: &str, alphabet: &Alphabet) -> Result<Polynomial> {
    parse_polynomial_with_budget(text, alphabet, &mut Budget::default())
}

pub fn parse_polynomial_with_budget(text: &str, alphabet: &Alphabet, budget: &mut Budget) -> Result<Polynomial> {
    let mut p = Parser::new(text, alphabet);
    let terms = p.expression()?;
    let mut out = Polynomial::zero();
    for (c, w) in terms {
        let expanded = normalize_with_budget(&w, budget)?;
        out.add_scaled(&expanded, &c);
    }
    Ok(out)
}

/// Parses a single (general) word.
pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<GeneralWord> {
    let mut p = Parser::new(text, alphabet);
    p.skip_ws();
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

/// Parses a single word and requires it to be normal.
pub fn parse_normal_word(text: &str, alphabet: &Alphabet) -> Result<NormalWord> {
    parse_word(text, alphabet)?
        .to_normal()
        .ok_or_else(|| parse_error(0, "not a normal word (some bracket target is not a letter)"))
}

/// Parses a coefficient followed by `*` and a normal word, e.g. `-1/2 * <x;y>`.
pub fn parse_scaled_word(text: &str, alphabet: &Alphabet) -> Result<(Rational, NormalWord)> {
    let mut p = Parser::new(text, alphabet);
    p.skip_ws();
    let negative = p.eat('-');
    if !negative {
        p.eat('+');
    }
    p.skip_ws();
    let mut c = p.rational()?;
    if negative {
        c = -c;
    }
    p.skip_ws();
    p.expect('*')?;
    p.skip_ws();
    let start = p.pos;
    let w = p.word()?;
    p.finish()?;
    let w = w.to_normal().ok_or_else(|| parse_error(start, "not a normal word"))?;
    Ok((c, w))
}

/// Splits `text` at `sep` characters outside brackets.
pub fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '<' | '⟨' => depth += 1,
            '>' | '⟩' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn new(text: &str, alphabet: &'a Alphabet) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, alphabet }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(c) => parse_error(self.pos, format!("expected {wanted}, found '{c}'")),
            None => parse_error(self.pos, format!("expected {wanted}, found end of input")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos < self.chars.len() {
            return Err(self.unexpected("end of input"));
        }
        Ok(())
    }

    fn expression(&mut self) -> Result<Vec<(Rational, GeneralWord)>> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            self.skip_ws();
            if let Some((c, w)) = self.term()? {
                terms.push((if negative { -c } else { c }, w));
            }
            self.skip_ws();
            match self.peek() {
                Some('+') => negative = false,
                Some('-') => negative = true,
                None => break,
                Some(_) => return Err(self.unexpected("'+', '-' or end of input")),
            }
            self.pos += 1;
        }
        Ok(terms)
    }

    /// `None` for a zero constant.
    fn term(&mut self) -> Result<Option<(Rational, GeneralWord)>> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let start = self.pos;
            let c = self.rational()?;
            self.skip_ws();
            if !self.eat('*') {
                if c.is_zero() {
                    return Ok(None);
                }
                return Err(parse_error(start, "a bare nonzero constant is not a brace polynomial"));
            }
            self.skip_ws();
            let w = self.word()?;
            return Ok(Some((c, w)));
        }
        let w = self.word()?;
        Ok(Some((Rational::one(), w)))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let numer = self.integer()?;
        self.skip_ws();
        if self.eat('/') {
            self.skip_ws();
            let at = self.pos;
            let denom = self.integer()?;
            if denom.is_zero() {
                return Err(parse_error(at, "zero denominator"));
            }
            return Ok(Rational::new(numer, denom));
        }
        Ok(Rational::from_integer(numer))
    }

    fn word(&mut self) -> Result<GeneralWord> {
        match self.peek() {
            Some('<') | Some('⟨') => {
                self.pos += 1;
                let mut args = Vec::new();
                loop {
                    self.skip_ws();
                    args.push(self.word()?);
                    self.skip_ws();
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some(';') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.unexpected("',' or ';'")),
                    }
                }
                self.skip_ws();
                let target = self.word()?;
                self.skip_ws();
                if !(self.eat('>') || self.eat('⟩')) {
                    return Err(self.unexpected("'>'"));
                }
                GeneralWord::node(args, target)
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.alphabet.letter(&name) {
                    Some(x) => Ok(GeneralWord::Leaf(x)),
                    None => Err(parse_error(start, format!("unknown identifier {name:?}"))),
                }
            }
            _ => Err(self.unexpected("a letter or '<'")),
        }
    }
}

/// Canonical serializer: terms in decreasing order, coefficients in lowest
/// terms, `1*` omitted, binary `-` between terms.
#[derive(Debug, Clone, Default)]
pub struct Printer {
    alphabet: Alphabet,
    unicode: bool,
}

impl Printer {
    pub fn new(alphabet: Alphabet) -> Printer {
        Printer { alphabet, unicode: false }
    }

    pub fn unicode(mut self, on: bool) -> Printer {
        self.unicode = on;
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn word(&self, w: &NormalWord) -> String {
        let mut s = String::new();
        self.write_word(&mut s, w).expect("writing to a String");
        s
    }

    fn write_word(&self, out: &mut impl fmt::Write, w: &NormalWord) -> fmt::Result {
        if w.is_letter() {
            return out.write_str(&self.alphabet.name(w.head()));
        }
        let (open, close) = if self.unicode { ('⟨', '⟩') } else { ('<', '>') };
        out.write_char(open)?;
        for (i, c) in w.children().iter().enumerate() {
            if i > 0 {
                out.write_char(',')?;
            }
            self.write_word(out, c)?;
        }
        out.write_char(';')?;
        out.write_str(&self.alphabet.name(w.head()))?;
        out.write_char(close)
    }

    pub fn polynomial(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in f.terms().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !magnitude.is_one() {
                s.push_str(&magnitude.to_string());
                s.push('*');
            }
            self.write_word(&mut s, w).expect("writing to a String");
        }
        s
    }

    /// `c * w` with the coefficient always shown.
    pub fn scaled_word(&self, c: &Rational, w: &NormalWord) -> String {
        format!("{c} * {}", self.word(w))
    }
}
