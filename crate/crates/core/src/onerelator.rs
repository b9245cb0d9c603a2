//! Ideals of the free brace algebra generated by a single element, and the
//! terminating membership test for them.
//!
//! With `f` the relator and `psi` the homomorphism fixing every base letter
//! and sending the marker `y` to `f`, the ideal `Id(f)` is spanned by
//! `B = { psi(u) : u a normal word with exactly one y }`. A nonzero member of
//! the ideal always shares its leading word with a single element of `B`, so
//! membership is decided by repeatedly cancelling the leading term against
//! such an element until either nothing is left or no element matches.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, MutexGuard};

use crate::algebra::{leading_of_image, Homomorphism, Polynomial, Rational};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::words::{enumerate_marked, Letter, NormalWord};

/// A marked word `u` together with its expansion `psi(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BElement {
    pub marked: NormalWord,
    pub image: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateStep {
    pub coefficient: Rational,
    pub marked: NormalWord,
}

/// `h = sum of coefficient * psi(marked)` over the steps, taken against the
/// monic relator. Leading words of the `psi(marked)` strictly decrease.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub steps: Vec<CertificateStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member(MembershipCertificate),
    NotMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

#[derive(Default)]
struct Slice {
    elements: Vec<BElement>,
    by_lead: HashMap<NormalWord, usize>,
}

#[derive(Default)]
struct Cache {
    slices: BTreeMap<usize, Arc<Slice>>,
    leads: BTreeMap<usize, Arc<HashMap<NormalWord, NormalWord>>>,
    images: HashMap<NormalWord, Polynomial>,
}

/// The ideal `Id(f)` of `Br(x1..xM)`.
pub struct OneRelatorIdeal {
    letters: usize,
    relator: Polynomial,
    leading_coefficient: Rational,
    relator_degree: usize,
    prefilter: bool,
    cache: Mutex<Cache>,
    expanded: AtomicU64,
}

impl OneRelatorIdeal {
    /// `letters` is the alphabet size `M`; the relator is stored monic.
    pub fn new(letters: usize, relator: &Polynomial) -> Result<OneRelatorIdeal> {
        let (lead, lc) = relator.leading()?;
        check_letters(relator, letters)?;
        Ok(OneRelatorIdeal {
            letters,
            relator_degree: lead.degree(),
            leading_coefficient: lc.clone(),
            relator: relator.monic()?,
            prefilter: false,
            cache: Mutex::new(Cache::default()),
            expanded: AtomicU64::new(0),
        })
    }

    /// Match leading words before expanding candidates. Off by default.
    pub fn with_lead_prefilter(mut self, on: bool) -> OneRelatorIdeal {
        self.prefilter = on;
        self
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    /// The monic relator.
    pub fn relator(&self) -> &Polynomial {
        &self.relator
    }

    /// Leading coefficient of the relator as originally given.
    pub fn leading_coefficient(&self) -> &Rational {
        &self.leading_coefficient
    }

    pub fn relator_degree(&self) -> usize {
        self.relator_degree
    }

    /// Number of `psi(u)` expansions computed so far.
    pub fn expanded_count(&self) -> u64 {
        self.expanded.load(Ordering::Relaxed)
    }

    /// `x_i -> x_i`, `y -> f`.
    pub fn psi(&self) -> Homomorphism {
        Homomorphism::identity_on((0..self.letters as u32).map(Letter::new))
            .with_image(Letter::MARKER, self.relator.clone())
    }

    pub fn substitute(&self, marked: &NormalWord, budget: &mut Budget) -> Result<Polynomial> {
        self.expanded.fetch_add(1, Ordering::Relaxed);
        self.psi().apply_word(marked, budget)
    }

    /// Every `(u, psi(u))` whose image has degree `degree`, in increasing
    /// order of `u`.
    pub fn b_elements(&self, degree: usize, budget: &mut Budget) -> Result<Vec<BElement>> {
        Ok(self.slice(degree, budget)?.elements.clone())
    }

    fn lock(&self) -> MutexGuard<'_, Cache> {
        self.cache.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn slice(&self, degree: usize, budget: &mut Budget) -> Result<Arc<Slice>> {
        if degree < self.relator_degree {
            return Ok(Arc::new(Slice::default()));
        }
        let mut cache = self.lock();
        if let Some(s) = cache.slices.get(&degree) {
            return Ok(s.clone());
        }
        let mut slice = Slice::default();
        let psi = self.psi();
        for u in enumerate_marked(self.letters, degree - self.relator_degree + 1, 1)? {
            self.expanded.fetch_add(1, Ordering::Relaxed);
            let image = psi.apply_word(&u, budget)?;
            let lead = image.leading_word().expect("psi(u) is nonzero").clone();
            slice.by_lead.entry(lead).or_insert(slice.elements.len());
            slice.elements.push(BElement { marked: u, image });
        }
        let slice = Arc::new(slice);
        cache.slices.insert(degree, slice.clone());
        Ok(slice)
    }

    /// The element of `B` used to cancel a leading word: the smallest `u`
    /// whose image leads with `lead`.
    fn reducer(&self, lead: &NormalWord, budget: &mut Budget) -> Result<Option<BElement>> {
        let degree = lead.degree();
        if !self.prefilter {
            let slice = self.slice(degree, budget)?;
            return Ok(slice.by_lead.get(lead).map(|&i| slice.elements[i].clone()));
        }
        let leads = {
            let mut cache = self.lock();
            match cache.leads.get(&degree) {
                Some(l) => l.clone(),
                None => {
                    let f_lead = self.relator.leading_word().expect("nonzero relator").clone();
                    let lead_of = |x: Letter| Some(if x.is_marker() { f_lead.clone() } else { NormalWord::letter(x) });
                    let mut map = HashMap::new();
                    if degree >= self.relator_degree {
                        for u in enumerate_marked(self.letters, degree - self.relator_degree + 1, 1)? {
                            let l = leading_of_image(&u, &lead_of).expect("all letters have images");
                            map.entry(l).or_insert(u);
                        }
                    }
                    let map = Arc::new(map);
                    cache.leads.insert(degree, map.clone());
                    map
                }
            }
        };
        let Some(u) = leads.get(lead) else { return Ok(None) };
        if let Some(image) = self.lock().images.get(u) {
            return Ok(Some(BElement { marked: u.clone(), image: image.clone() }));
        }
        let image = self.substitute(u, budget)?;
        self.lock().images.insert(u.clone(), image.clone());
        Ok(Some(BElement { marked: u.clone(), image }))
    }

    /// Decides `h ∈ Id(f)`, returning a certificate for members.
    pub fn decide_membership(&self, h: &Polynomial, budget: &mut Budget) -> Result<Membership> {
        check_letters(h, self.letters)?;
        let mut rest = h.clone();
        let mut steps = Vec::new();
        loop {
            let Some((lead, lc)) = rest.leading().ok() else {
                return Ok(Membership::Member(MembershipCertificate { steps }));
            };
            if lead.degree() < self.relator_degree {
                return Ok(Membership::NotMember);
            }
            let Some(g) = self.reducer(lead, budget)? else {
                return Ok(Membership::NotMember);
            };
            let coefficient = lc / g.image.leading_coefficient().expect("nonzero");
            rest.add_scaled(&g.image, &-coefficient.clone());
            steps.push(CertificateStep { coefficient, marked: g.marked });
        }
    }

    /// Recomputes `sum c_i psi(u_i)` and compares it with `h`.
    pub fn verify_certificate(&self, h: &Polynomial, cert: &MembershipCertificate) -> bool {
        let psi = self.psi();
        let mut budget = Budget::unlimited();
        let mut total = Polynomial::zero();
        for step in &cert.steps {
            if step.marked.count(Letter::MARKER) != 1 {
                return false;
            }
            match psi.apply_word(&step.marked, &mut budget) {
                Ok(image) => total.add_scaled(&image, &step.coefficient),
                Err(_) => return false,
            }
        }
        total == *h
    }
}

fn check_letters(f: &Polynomial, letters: usize) -> Result<()> {
    match f.letters().into_iter().find(|x| x.is_marker() || x.index() as usize >= letters) {
        Some(x) => Err(Error::ForeignLetter(x)),
        None => Ok(()),
    }
}

/// Checks that a nonzero `h` free of the last letter `x_M` is not in the
/// ideal of an `f` that involves `x_M`. Always `true` in characteristic zero.
pub fn freiheitssatz_probe(letters: usize, f: &Polynomial, h: &Polynomial, budget: &mut Budget) -> Result<bool> {
    if letters == 0 {
        return Err(Error::ZeroDegree);
    }
    let last = Letter::new(letters as u32 - 1);
    if f.is_zero() || h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    check_letters(f, letters)?;
    check_letters(h, letters)?;
    if !f.contains_letter(last) {
        return Err(Error::RelatorFreeOfLastLetter(last));
    }
    if h.contains_letter(last) {
        return Err(Error::ProbeUsesLastLetter(last));
    }
    let ideal = OneRelatorIdeal::new(letters, f)?;
    Ok(ideal.decide_membership(h, budget)? == Membership::NotMember)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{integer, rational};
    use crate::words::tests::{node, x};

    fn y() -> NormalWord {
        NormalWord::letter(Letter::MARKER)
    }

    fn xx() -> NormalWord {
        node(&[x(1)], 1)
    }

    fn ideal() -> OneRelatorIdeal {
        OneRelatorIdeal::new(1, &Polynomial::word(xx())).unwrap()
    }

    #[test]
    fn b_elements_small() {
        let id = ideal();
        let mut b = Budget::default();
        assert!(id.b_elements(1, &mut b).unwrap().is_empty());
        assert_eq!(id.b_elements(2, &mut b).unwrap(), vec![BElement { marked: y(), image: Polynomial::word(xx()) }]);
        let three = id.b_elements(3, &mut b).unwrap();
        assert_eq!(three.len(), 2);
        let x_y = NormalWord::new(vec![x(1)], Letter::MARKER);
        let found = three.iter().find(|e| e.marked == x_y).unwrap();
        let expected = Polynomial::from_terms([(node(&[x(1), x(1)], 1), integer(2)), (node(&[xx()], 1), integer(1))]);
        assert_eq!(found.image, expected);
        assert_eq!(three.len(), enumerate_marked(1, 2, 1).unwrap().len());
    }

    #[test]
    fn decide_examples() {
        let id = ideal();
        let mut b = Budget::default();

        let h = Polynomial::word(node(&[xx()], 1));
        let Membership::Member(cert) = id.decide_membership(&h, &mut b).unwrap() else { panic!() };
        assert_eq!(
            cert.steps,
            vec![CertificateStep { coefficient: integer(1), marked: NormalWord::new(vec![y()], Letter::x(1)) }]
        );
        assert!(id.verify_certificate(&h, &cert));

        let h = Polynomial::word(node(&[x(1), x(1)], 1));
        let Membership::Member(cert) = id.decide_membership(&h, &mut b).unwrap() else { panic!() };
        assert_eq!(
            cert.steps,
            vec![
                CertificateStep { coefficient: rational(1, 2), marked: NormalWord::new(vec![x(1)], Letter::MARKER) },
                CertificateStep { coefficient: rational(-1, 2), marked: NormalWord::new(vec![y()], Letter::x(1)) },
            ]
        );
        assert!(id.verify_certificate(&h, &cert));

        assert_eq!(id.decide_membership(&Polynomial::word(x(1)), &mut b).unwrap(), Membership::NotMember);
        assert_eq!(
            id.decide_membership(&Polynomial::zero(), &mut b).unwrap(),
            Membership::Member(MembershipCertificate::default())
        );
    }

    #[test]
    fn tampered_certificate_fails() {
        let id = ideal();
        let h = Polynomial::word(node(&[x(1), x(1)], 1));
        let Membership::Member(mut cert) = id.decide_membership(&h, &mut Budget::default()).unwrap() else { panic!() };
        cert.steps[0].coefficient = integer(1);
        assert!(!id.verify_certificate(&h, &cert));
        assert!(id.verify_certificate(&Polynomial::zero(), &MembershipCertificate::default()));
    }

    #[test]
    fn relator_is_stored_monic() {
        let f = Polynomial::monomial(xx(), integer(3)) + Polynomial::word(x(1));
        let id = OneRelatorIdeal::new(1, &f).unwrap();
        assert_eq!(id.leading_coefficient(), &integer(3));
        assert_eq!(id.relator().leading_coefficient(), Some(&integer(1)));
        assert_eq!(id.relator_degree(), 2);
        assert!(id.decide_membership(&f, &mut Budget::default()).unwrap().is_member());
    }

    #[test]
    fn degree_gate_skips_enumeration() {
        let id = ideal();
        assert_eq!(
            id.decide_membership(&Polynomial::word(x(1)), &mut Budget::default()).unwrap(),
            Membership::NotMember
        );
        assert_eq!(id.expanded_count(), 0);
    }

    #[test]
    fn prefilter_agrees() {
        let f = Polynomial::word(node(&[x(1)], 2)) + Polynomial::word(x(1));
        let plain = OneRelatorIdeal::new(2, &f).unwrap();
        let filtered = OneRelatorIdeal::new(2, &f).unwrap().with_lead_prefilter(true);
        let mut b = Budget::default();
        let hs = [
            crate::algebra::product(&[Polynomial::word(x(2))], &f).unwrap(),
            crate::algebra::product(std::slice::from_ref(&f), &Polynomial::word(x(1))).unwrap()
                + Polynomial::word(x(2)),
            Polynomial::word(node(&[x(1)], 1)),
        ];
        for h in &hs {
            assert_eq!(plain.decide_membership(h, &mut b).unwrap(), filtered.decide_membership(h, &mut b).unwrap());
        }
        assert!(filtered.expanded_count() < plain.expanded_count());
    }

    #[test]
    fn probe_examples() {
        let mut b = Budget::default();
        let f = Polynomial::word(node(&[x(2)], 1)) + Polynomial::word(x(1));
        assert!(freiheitssatz_probe(2, &f, &Polynomial::word(xx()), &mut b).unwrap());
        assert!(freiheitssatz_probe(2, &Polynomial::word(x(2)), &Polynomial::word(x(1)), &mut b).unwrap());
        assert_eq!(
            freiheitssatz_probe(2, &Polynomial::word(xx()), &Polynomial::word(x(1)), &mut b),
            Err(Error::RelatorFreeOfLastLetter(Letter::x(2)))
        );
        assert_eq!(
            freiheitssatz_probe(2, &Polynomial::word(x(2)), &Polynomial::word(x(2)), &mut b),
            Err(Error::ProbeUsesLastLetter(Letter::x(2)))
        );
        assert_eq!(freiheitssatz_probe(2, &f, &Polynomial::zero(), &mut b), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn foreign_letters_rejected() {
        let id = ideal();
        let h = Polynomial::word(x(2));
        assert_eq!(id.decide_membership(&h, &mut Budget::default()), Err(Error::ForeignLetter(Letter::x(2))));
    }
}
