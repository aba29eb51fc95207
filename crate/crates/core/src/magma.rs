//! Finite sets with a partial binary multiplication.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

use crate::report::Report;

/// Index of an element in a [`Magma`] carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Construction and restriction errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagmaError {
    #[error("duplicate table entry for ({0}, {1})")]
    DuplicateEntry(usize, usize),
    #[error("index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("expected {expected} names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("subset is not closed: {0}·{1} = {2} leaves it")]
    NotClosed(ElementId, ElementId, ElementId),
    #[error("unknown element name {0:?}")]
    UnknownName(String),
}

/// A finite carrier with a partial multiplication table.
///
/// The table is dense (`size * size` slots); an empty slot means the pair
/// lies outside the domain of the multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Magma {
    names: Vec<String>,
    table: Vec<Option<ElementId>>,
}

impl Magma {
    /// Builds a magma from explicit table entries `((i, j), k)` meaning `i·j = k`.
    ///
    /// An empty `names` list generates names `e0, e1, ...`.
    pub fn new<I>(size: usize, names: Vec<String>, entries: I) -> Result<Magma, MagmaError>
    where
        I: IntoIterator<Item = ((usize, usize), usize)>,
    {
        let names = if names.is_empty() {
            (0..size).map(|i| format!("e{i}")).collect()
        } else {
            names
        };
        if names.len() != size {
            return Err(MagmaError::NameCount {
                expected: size,
                got: names.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(MagmaError::DuplicateName(n.clone()));
            }
        }
        let mut table = vec![None; size * size];
        for ((i, j), k) in entries {
            for index in [i, j, k] {
                if index >= size {
                    return Err(MagmaError::IndexOutOfRange { index, size });
                }
            }
            let slot = &mut table[i * size + j];
            if slot.is_some() {
                return Err(MagmaError::DuplicateEntry(i, j));
            }
            *slot = Some(ElementId(k));
        }
        Ok(Magma { names, table })
    }

    /// Builds a magma from a multiplication function on indices.
    pub fn from_fn(
        names: Vec<String>,
        f: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Magma, MagmaError> {
        let n = names.len();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if let Some(k) = f(i, j) {
                    entries.push(((i, j), k));
                }
            }
        }
        Magma::new(n, names, entries)
    }

    pub fn empty() -> Magma {
        Magma {
            names: Vec::new(),
            table: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: ElementId) -> &str {
        &self.names[a.0]
    }

    /// Looks an element up by display name.
    pub fn id(&self, name: &str) -> Option<ElementId> {
        self.names.iter().position(|n| n == name).map(ElementId)
    }

    /// Like [`Magma::id`], as a `Result`.
    pub fn lookup(&self, name: &str) -> Result<ElementId, MagmaError> {
        self.id(name)
            .ok_or_else(|| MagmaError::UnknownName(name.to_string()))
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.size()).map(ElementId)
    }

    pub fn mul(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        self.table[a.0 * self.size() + b.0]
    }

    pub fn defined(&self, a: ElementId, b: ElementId) -> bool {
        self.mul(a, b).is_some()
    }

    /// The domain of the multiplication, in lexicographic order.
    pub fn domain(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.entries().map(|(a, b, _)| (a, b))
    }

    /// All table entries `(a, b, ab)` in lexicographic order of `(a, b)`.
    pub fn entries(&self) -> impl Iterator<Item = (ElementId, ElementId, ElementId)> + '_ {
        let n = self.size();
        self.table
            .iter()
            .enumerate()
            .filter_map(move |(k, v)| v.map(|c| (ElementId(k / n), ElementId(k % n), c)))
    }

    pub fn domain_size(&self) -> usize {
        self.table.iter().filter(|v| v.is_some()).count()
    }

    /// Replaces display names, keeping the table.
    pub fn renamed(&self, names: Vec<String>) -> Result<Magma, MagmaError> {
        Magma::new(
            self.size(),
            names,
            self.entries().map(|(a, b, c)| ((a.0, b.0), c.0)),
        )
    }

    /// First pair of subset elements whose product leaves the subset.
    pub fn closure_violation(&self, subset: &[ElementId]) -> Option<(ElementId, ElementId, ElementId)> {
        let set: BTreeSet<ElementId> = subset.iter().copied().collect();
        for &a in &set {
            for &b in &set {
                if let Some(c) = self.mul(a, b) {
                    if !set.contains(&c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Smallest closed subset containing `gens`, sorted.
    pub fn generated_by(&self, gens: &[ElementId]) -> Vec<ElementId> {
        let mut set: BTreeSet<ElementId> = gens.iter().copied().collect();
        loop {
            let mut added = Vec::new();
            for &a in &set {
                for &b in &set {
                    if let Some(c) = self.mul(a, b) {
                        if !set.contains(&c) {
                            added.push(c);
                        }
                    }
                }
            }
            if added.is_empty() {
                return set.into_iter().collect();
            }
            set.extend(added);
        }
    }

    /// Restricts to a closed subset; element order follows ascending parent index.
    pub fn restrict(&self, subset: &[ElementId]) -> Result<SubMagma, MagmaError> {
        for &a in subset {
            if a.0 >= self.size() {
                return Err(MagmaError::IndexOutOfRange {
                    index: a.0,
                    size: self.size(),
                });
            }
        }
        if let Some((a, b, c)) = self.closure_violation(subset) {
            return Err(MagmaError::NotClosed(a, b, c));
        }
        let embed: Vec<ElementId> = subset
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut back = vec![None; self.size()];
        for (i, &p) in embed.iter().enumerate() {
            back[p.0] = Some(i);
        }
        let names = embed.iter().map(|&p| self.name(p).to_string()).collect();
        let magma = Magma::from_fn(names, |i, j| {
            self.mul(embed[i], embed[j]).map(|c| back[c.0].expect("closed"))
        })
        .expect("restriction of a valid magma");
        Ok(SubMagma { magma, embed })
    }
}

/// A closed subset viewed as a magma of its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubMagma {
    pub magma: Magma,
    /// Parent index of each local element.
    pub embed: Vec<ElementId>,
}

impl SubMagma {
    pub fn to_parent(&self, local: ElementId) -> ElementId {
        self.embed[local.0]
    }

    pub fn from_parent(&self, parent: ElementId) -> Option<ElementId> {
        self.embed.iter().position(|&p| p == parent).map(ElementId)
    }
}

/// A function between carriers, checked for multiplicativity on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub source: Magma,
    pub target: Magma,
    pub map: Vec<ElementId>,
}

impl Morphism {
    pub fn new(source: Magma, target: Magma, map: Vec<ElementId>) -> Result<Morphism, MagmaError> {
        if map.len() != source.size() {
            return Err(MagmaError::NameCount {
                expected: source.size(),
                got: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|x| x.0 >= target.size()) {
            return Err(MagmaError::IndexOutOfRange {
                index: bad.0,
                size: target.size(),
            });
        }
        Ok(Morphism { source, target, map })
    }

    pub fn apply(&self, a: ElementId) -> ElementId {
        self.map[a.0]
    }

    /// Pass iff every defined source product maps to a defined, matching target product.
    /// The witness is the first offending pair `(a, b)`.
    pub fn is_homomorphism(&self) -> Report<Vec<ElementId>> {
        for (a, b, c) in self.source.entries() {
            if self.target.mul(self.apply(a), self.apply(b)) != Some(self.apply(c)) {
                return Report::fail("homomorphism", vec![a, b]);
            }
        }
        Report::pass("homomorphism")
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size() == self.target.size()
            && self.map.iter().collect::<BTreeSet<_>>().len() == self.map.len()
    }

    /// Pass iff bijective, and definedness and products correspond in both directions.
    pub fn is_isomorphism(&self) -> Report<Vec<ElementId>> {
        if !self.is_bijective() {
            return Report::fail("isomorphism", vec![]).with_note("map is not a bijection");
        }
        for a in self.source.elements() {
            for b in self.source.elements() {
                let lhs = self.source.mul(a, b).map(|c| self.apply(c));
                let rhs = self.target.mul(self.apply(a), self.apply(b));
                if lhs != rhs {
                    return Report::fail("isomorphism", vec![a, b]);
                }
            }
        }
        Report::pass("isomorphism")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn trivial_monoid() {
        let m = Magma::new(1, vec![], [((0, 0), 0)]).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(m.mul(ElementId(0), ElementId(0)), Some(ElementId(0)));
    }

    #[test]
    fn minimal_partial_table() {
        let m = Magma::new(2, names(&["e", "a"]), [((0, 0), 0)]).unwrap();
        assert_eq!(m.domain_size(), 1);
        assert!(!m.defined(ElementId(0), ElementId(1)));
        assert_eq!(m.domain().collect::<Vec<_>>(), vec![(ElementId(0), ElementId(0))]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Magma::new(2, vec![], [((0, 0), 0), ((0, 0), 1)]),
            Err(MagmaError::DuplicateEntry(0, 0))
        );
        assert_eq!(
            Magma::new(2, vec![], [((0, 2), 0)]),
            Err(MagmaError::IndexOutOfRange { index: 2, size: 2 })
        );
        assert_eq!(
            Magma::new(2, names(&["a", "a"]), []),
            Err(MagmaError::DuplicateName("a".into()))
        );
    }

    #[test]
    fn empty_magma_is_legal() {
        let m = Magma::new(0, vec![], []).unwrap();
        assert_eq!(m.size(), 0);
        assert_eq!(m.domain().count(), 0);
    }

    #[test]
    fn restriction_and_closure() {
        // Z/4 under addition.
        let m = Magma::from_fn(names(&["0", "1", "2", "3"]), |i, j| Some((i + j) % 4)).unwrap();
        let sub = m.restrict(&[ElementId(2), ElementId(0)]).unwrap();
        assert_eq!(sub.embed, vec![ElementId(0), ElementId(2)]);
        assert_eq!(sub.magma.mul(ElementId(1), ElementId(1)), Some(ElementId(0)));
        assert_eq!(sub.from_parent(ElementId(2)), Some(ElementId(1)));
        assert!(matches!(
            m.restrict(&[ElementId(1)]),
            Err(MagmaError::NotClosed(ElementId(1), ElementId(1), ElementId(2)))
        ));
        assert_eq!(m.generated_by(&[ElementId(1)]).len(), 4);
    }

    #[test]
    fn homomorphism_checks() {
        let c4 = Magma::from_fn(names(&["1", "r", "r2", "r3"]), |i, j| Some((i + j) % 4)).unwrap();
        let c2 = Magma::from_fn(names(&["1", "a"]), |i, j| Some((i + j) % 2)).unwrap();
        let parity = Morphism::new(
            c4.clone(),
            c2,
            [0, 1, 0, 1].into_iter().map(ElementId).collect(),
        )
        .unwrap();
        assert!(parity.is_homomorphism().passed());

        let swap = Morphism::new(
            c4.clone(),
            c4.clone(),
            [0, 2, 1, 3].into_iter().map(ElementId).collect(),
        )
        .unwrap();
        let r = swap.is_homomorphism();
        assert!(r.failed());
        let w = r.witness.unwrap();
        // Re-check: the witness pair really breaks multiplicativity.
        let prod = c4.mul(w[0], w[1]).unwrap();
        assert_ne!(c4.mul(swap.apply(w[0]), swap.apply(w[1])), Some(swap.apply(prod)));

        let id = Morphism::new(c4.clone(), c4.clone(), c4.elements().collect()).unwrap();
        assert!(id.is_homomorphism().passed());
        assert!(id.is_isomorphism().passed());
    }
}
