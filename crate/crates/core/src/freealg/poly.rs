use std::collections::BTreeMap;

use super::{GeneratorSet, Word};
use crate::exactla::{axpy, Field, Scalar};

/// Noncommutative polynomial: a finite map from words to nonzero scalars,
/// ordered by the monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> NcPoly {
        NcPoly::default()
    }

    pub fn one() -> NcPoly {
        NcPoly::monomial(Scalar::one(), Word::empty())
    }

    pub fn monomial(c: Scalar, w: Word) -> NcPoly {
        let mut p = NcPoly::zero();
        p.add_term(w, &c);
        p
    }

    pub fn word(w: Word) -> NcPoly {
        NcPoly::monomial(Scalar::one(), w)
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(it: I) -> NcPoly {
        let mut p = NcPoly::zero();
        for (w, c) in it {
            p.add_term(w, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Largest term.
    pub fn lead(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn pop_lead(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    /// Degree when every term has the same degree; `None` otherwise or for zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Word::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect() }
    }

    pub fn monic(&self) -> NcPoly {
        match self.lead() {
            Some((_, c)) => self.scale(&c.inv()),
            None => NcPoly::zero(),
        }
    }

    pub fn add(&self, o: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }

    /// Adds `c · left · self · right` into `acc`.
    pub fn add_sandwich(&self, acc: &mut NcPoly, c: &Scalar, left: &Word, right: &Word) {
        for (w, a) in &self.terms {
            acc.add_term(left.concat(w).concat(right), &(a * c));
        }
    }

    pub fn mul(&self, o: &NcPoly) -> NcPoly {
        let mut acc: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                let e = acc.entry(u.concat(v)).or_insert_with(Scalar::zero);
                axpy(e, a, b);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        NcPoly { terms: acc }
    }

    pub fn coerce(&self, field: Field) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), field.coerce(c))))
    }

    /// Replaces each generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[NcPoly]) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            let mut p = NcPoly::monomial(c.clone(), Word::empty());
            for &l in w.letters() {
                p = p.mul(&images[l as usize]);
            }
            out = out.add(&p);
        }
        out
    }

    pub fn render(&self, gens: &GeneratorSet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if w.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                    s.push('*');
                }
                s.push_str(&w.render(gens));
            }
        }
        s
    }
}
