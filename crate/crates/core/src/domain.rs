//! Multiplicative domains: finite magmas and fuel-bounded word monoids.

use serde::{Deserialize, Serialize};
use std::fmt::Debug;
use std::hash::Hash;

use crate::magma::{ElementId, Magma};
use crate::rewriting::{Alphabet, RuleSet, Word};

/// Search bounds for computations over infinite domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fuel {
    /// Rewrite steps per normalization, and node budget for searches.
    pub steps: usize,
    /// Longest word enumerated.
    pub word_len: usize,
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel {
            steps: 100_000,
            word_len: 12,
        }
    }
}

impl Fuel {
    pub fn with_word_len(self, word_len: usize) -> Fuel {
        Fuel { word_len, ..self }
    }
}

/// Elements found within a fuel bound; `complete` means nothing was left out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration<T> {
    pub elements: Vec<T>,
    pub complete: bool,
}

/// A set with a partial multiplication that can be enumerated up to fuel.
pub trait MulDomain {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn enumerate(&self, fuel: &Fuel) -> Enumeration<Self::Elem>;

    fn render(&self, a: &Self::Elem) -> String;

    fn defined(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.mul(a, b).is_some()
    }
}

impl MulDomain for Magma {
    type Elem = ElementId;

    fn mul(&self, a: &ElementId, b: &ElementId) -> Option<ElementId> {
        Magma::mul(self, *a, *b)
    }

    fn enumerate(&self, _fuel: &Fuel) -> Enumeration<ElementId> {
        Enumeration {
            elements: self.elements().collect(),
            complete: true,
        }
    }

    fn render(&self, a: &ElementId) -> String {
        self.name(*a).to_string()
    }
}

/// The free monoid on an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeMonoid {
    pub alphabet: Alphabet,
}

impl FreeMonoid {
    pub fn new(alphabet: Alphabet) -> FreeMonoid {
        FreeMonoid { alphabet }
    }
}

impl MulDomain for FreeMonoid {
    type Elem = Word;

    fn mul(&self, a: &Word, b: &Word) -> Option<Word> {
        Some(a.concat(b))
    }

    fn enumerate(&self, fuel: &Fuel) -> Enumeration<Word> {
        Enumeration {
            elements: self.alphabet.words_up_to(fuel.word_len),
            complete: self.alphabet.is_empty(),
        }
    }

    fn render(&self, a: &Word) -> String {
        self.alphabet.display(a)
    }
}

/// The monoid presented by a complete rule set, with normal forms as elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordMonoid {
    pub rules: RuleSet,
    /// Rewrite budget per product; a product that runs out is treated as undefined.
    pub step_fuel: usize,
}

impl WordMonoid {
    pub fn new(rules: RuleSet) -> WordMonoid {
        WordMonoid {
            rules,
            step_fuel: Fuel::default().steps,
        }
    }

    pub fn normal_form(&self, w: &Word) -> Option<Word> {
        self.rules.normalize(w, self.step_fuel).ok()
    }
}

impl MulDomain for WordMonoid {
    type Elem = Word;

    fn mul(&self, a: &Word, b: &Word) -> Option<Word> {
        self.normal_form(&a.concat(b))
    }

    fn enumerate(&self, fuel: &Fuel) -> Enumeration<Word> {
        let mut all = self.rules.irreducibles_up_to(fuel.word_len + 1);
        let complete = all.last().is_none_or(|w| w.len() <= fuel.word_len);
        all.retain(|w| w.len() <= fuel.word_len);
        Enumeration {
            elements: all,
            complete,
        }
    }

    fn render(&self, a: &Word) -> String {
        self.rules.alphabet().display(a)
    }
}

/// Right identity for the enumerated part of a domain: fixes every `x` with `xDa`,
/// and some such `x` exists.
pub fn is_right_identity_in<D: MulDomain>(d: &D, elems: &[D::Elem], a: &D::Elem) -> bool {
    let mut any = false;
    for x in elems {
        if let Some(c) = d.mul(x, a) {
            if &c != x {
                return false;
            }
            any = true;
        }
    }
    any
}

pub fn is_left_identity_in<D: MulDomain>(d: &D, elems: &[D::Elem], a: &D::Elem) -> bool {
    let mut any = false;
    for x in elems {
        if let Some(c) = d.mul(a, x) {
            if &c != x {
                return false;
            }
            any = true;
        }
    }
    any
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::Kind;

    #[test]
    fn free_monoid_enumeration_is_incomplete() {
        let f = FreeMonoid::new(Alphabet::chars("xy"));
        let e = f.enumerate(&Fuel::default().with_word_len(2));
        assert_eq!(e.elements.len(), 7);
        assert!(!e.complete);
        let w = Word(vec![0]);
        assert_eq!(f.mul(&w, &w), Some(Word(vec![0, 0])));
    }

    #[test]
    fn word_monoid_of_finite_presentation() {
        let rs = RuleSet::parse(Alphabet::chars("a"), &[("aaa", "")], Kind::Monoid).unwrap();
        let m = WordMonoid::new(rs);
        let e = m.enumerate(&Fuel::default().with_word_len(5));
        assert!(e.complete);
        assert_eq!(e.elements.len(), 3);
        let a2 = Word(vec![0, 0]);
        assert_eq!(m.mul(&a2, &a2), Some(Word(vec![0])));
    }

    #[test]
    fn identities_in_word_domains() {
        let f = FreeMonoid::new(Alphabet::chars("xy"));
        let elems = f.enumerate(&Fuel::default().with_word_len(2)).elements;
        assert!(is_right_identity_in(&f, &elems, &Word::empty()));
        assert!(!is_left_identity_in(&f, &elems, &Word(vec![1])));
    }
}
