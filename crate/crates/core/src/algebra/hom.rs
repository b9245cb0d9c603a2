use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use super::{product_with_budget, Polynomial};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::words::{Letter, NormalWord};

/// A brace algebra homomorphism given by the images of generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Homomorphism {
    images: BTreeMap<Letter, Polynomial>,
}

impl Homomorphism {
    pub fn new() -> Homomorphism {
        Homomorphism::default()
    }

    /// Identity on the given letters.
    pub fn identity_on(letters: impl IntoIterator<Item = Letter>) -> Homomorphism {
        Homomorphism { images: letters.into_iter().map(|x| (x, Polynomial::letter(x))).collect() }
    }

    pub fn with_image(mut self, x: Letter, image: Polynomial) -> Homomorphism {
        self.images.insert(x, image);
        self
    }

    pub fn set_image(&mut self, x: Letter, image: Polynomial) {
        self.images.insert(x, image);
    }

    pub fn image(&self, x: Letter) -> Option<&Polynomial> {
        self.images.get(&x)
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.apply_with_budget(f, &mut Budget::default())
    }

    pub fn apply_with_budget(&self, f: &Polynomial, budget: &mut Budget) -> Result<Polynomial> {
        let mut run = Run { hom: self, memo: HashMap::new(), budget };
        let mut out = Polynomial::zero();
        for (w, c) in f.terms() {
            let image = run.word(w)?;
            out.add_scaled(&image, c);
        }
        Ok(out)
    }

    pub fn apply_word(&self, w: &NormalWord, budget: &mut Budget) -> Result<Polynomial> {
        Run { hom: self, memo: HashMap::new(), budget }.word(w)
    }

    fn fixes(&self, x: Letter) -> Result<bool> {
        let image = self.images.get(&x).ok_or(Error::MissingImage(x))?;
        Ok(image.len() == 1 && image.coefficient(&NormalWord::letter(x)).is_some_and(One::is_one))
    }
}

/// `h(f)` for the homomorphism `h`.
pub fn apply_hom(h: &Homomorphism, f: &Polynomial) -> Result<Polynomial> {
    h.apply(f)
}

struct Run<'a, 'b> {
    hom: &'a Homomorphism,
    memo: HashMap<NormalWord, Polynomial>,
    budget: &'b mut Budget,
}

impl Run<'_, '_> {
    /// Images are computed bottom-up; subtrees made only of fixed letters map
    /// to themselves.
    fn word(&mut self, w: &NormalWord) -> Result<Polynomial> {
        if let Some(p) = self.memo.get(w) {
            return Ok(p.clone());
        }
        let image = if self.is_fixed(w)? {
            Polynomial::word(w.clone())
        } else {
            let head = self.hom.images.get(&w.head()).ok_or(Error::MissingImage(w.head()))?.clone();
            if w.is_letter() {
                head
            } else {
                let args = w.children().iter().map(|c| self.word(c)).collect::<Result<Vec<_>>>()?;
                product_with_budget(&args, &head, self.budget)?
            }
        };
        self.memo.insert(w.clone(), image.clone());
        Ok(image)
    }

    fn is_fixed(&self, w: &NormalWord) -> Result<bool> {
        let mut fixed = true;
        let mut missing = None;
        w.for_each_letter(&mut |x| match self.hom.fixes(x) {
            Ok(f) => fixed &= f,
            Err(_) => missing = missing.or(Some(x)),
        });
        match missing {
            Some(x) => Err(Error::MissingImage(x)),
            None => Ok(fixed),
        }
    }
}
