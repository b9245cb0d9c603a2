use std::collections::HashMap;

use super::{Letter, NormalWord};
use crate::error::{Error, Result};

/// All normal words of exactly `degree` over `x1..x_{letters}`, ascending.
pub fn enumerate_normal(letters: usize, degree: usize) -> Result<Vec<NormalWord>> {
    enumerate_over(&base_letters(letters), degree)
}

/// All normal words of exactly `degree` over the given letters, ascending.
pub fn enumerate_over(letters: &[Letter], degree: usize) -> Result<Vec<NormalWord>> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut table = Table::new(letters, None);
    let mut words = table.words(degree, 0).to_vec();
    words.sort();
    Ok(words)
}

/// Normal words of exactly `degree` over `x1..x_{letters}` and the marker `y`
/// in which `y` occurs exactly `marked` times, ascending.
pub fn enumerate_marked(letters: usize, degree: usize, marked: usize) -> Result<Vec<NormalWord>> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    if marked > degree {
        return Ok(Vec::new());
    }
    let base = base_letters(letters);
    let mut table = Table::new(&base, Some(Letter::MARKER));
    let mut words = table.words(degree, marked).to_vec();
    words.sort();
    Ok(words)
}

fn base_letters(count: usize) -> Vec<Letter> {
    (0..count as u32).map(Letter::new).collect()
}

/// Memo of words by (degree, marker count), built by recursing on
/// compositions of `degree - 1` into child degrees.
struct Table<'a> {
    letters: &'a [Letter],
    marker: Option<Letter>,
    memo: HashMap<(usize, usize), Vec<NormalWord>>,
}

impl<'a> Table<'a> {
    fn new(letters: &'a [Letter], marker: Option<Letter>) -> Self {
        Table { letters, marker, memo: HashMap::new() }
    }

    fn words(&mut self, degree: usize, marks: usize) -> &[NormalWord] {
        if !self.memo.contains_key(&(degree, marks)) {
            let built = self.build(degree, marks);
            self.memo.insert((degree, marks), built);
        }
        &self.memo[&(degree, marks)]
    }

    fn build(&mut self, degree: usize, marks: usize) -> Vec<NormalWord> {
        if marks > degree || (marks > 0 && self.marker.is_none()) {
            return Vec::new();
        }
        // make sure every smaller slice exists before borrowing the memo
        for d in 1..degree {
            for k in 0..=marks.min(d) {
                self.words(d, k);
            }
        }
        let mut heads: Vec<(Letter, usize)> = self.letters.iter().map(|&x| (x, marks)).collect();
        if let Some(y) = self.marker {
            if marks > 0 {
                heads.push((y, marks - 1));
            }
        }
        let mut out = Vec::new();
        for (head, child_marks) in heads {
            let mut prefix = Vec::new();
            self.fill(degree - 1, child_marks, head, &mut prefix, &mut out);
        }
        out
    }

    fn fill(&self, degree: usize, marks: usize, head: Letter, prefix: &mut Vec<NormalWord>, out: &mut Vec<NormalWord>) {
        if degree == 0 {
            if marks == 0 {
                out.push(NormalWord::new(prefix.clone(), head));
            }
            return;
        }
        for d in 1..=degree {
            for k in 0..=marks.min(d) {
                let Some(slice) = self.memo.get(&(d, k)) else { continue };
                for w in slice {
                    prefix.push(w.clone());
                    self.fill(degree - d, marks - k, head, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
}
