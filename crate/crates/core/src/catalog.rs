//! Standard small groups and semigroups, built as magmas.

use std::collections::BTreeSet;

use crate::magma::{ElementId, Magma};

/// A permutation of `0..n`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    /// Builds a permutation of `0..n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Perm {
        let mut img: Vec<usize> = (0..n).collect();
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                img[a] = cyc[(k + 1) % cyc.len()];
            }
        }
        Perm(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Function-order composition: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle notation with each cycle starting at its least point; identity is `1`.
    pub fn cycle_name(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.0[start];
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.0[j];
            }
            out.push('(');
            out.push_str(&cyc.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            out.push(')');
        }
        if out.is_empty() {
            "1".to_string()
        } else {
            out
        }
    }
}

/// A permutation group with its multiplication table.
#[derive(Debug, Clone)]
pub struct PermGroup {
    pub perms: Vec<Perm>,
    pub magma: Magma,
}

impl PermGroup {
    /// Closure of `gens` under composition; elements sorted by image vector.
    pub fn generated(degree: usize, gens: &[Perm]) -> PermGroup {
        let mut set: BTreeSet<Perm> = BTreeSet::new();
        set.insert(Perm::identity(degree));
        let mut frontier: Vec<Perm> = vec![Perm::identity(degree)];
        while let Some(p) = frontier.pop() {
            for g in gens {
                let q = g.compose(&p);
                if set.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        Self::from_perms(set.into_iter().collect())
    }

    /// Table of a set of permutations already closed under composition.
    pub fn from_perms(mut perms: Vec<Perm>) -> PermGroup {
        perms.sort();
        perms.dedup();
        let names = perms.iter().map(Perm::cycle_name).collect();
        let magma = Magma::from_fn(names, |i, j| {
            let c = perms[i].compose(&perms[j]);
            Some(perms.binary_search(&c).expect("closed under composition"))
        })
        .expect("permutation table");
        PermGroup { perms, magma }
    }

    pub fn id_of(&self, p: &Perm) -> Option<ElementId> {
        self.perms.binary_search(p).ok().map(ElementId)
    }

    /// Elements of `self` generated by `gens`.
    pub fn subgroup(&self, gens: &[Perm]) -> Vec<ElementId> {
        let ids: Vec<ElementId> = gens
            .iter()
            .map(|g| self.id_of(g).expect("generator in group"))
            .collect();
        self.magma.generated_by(&ids)
    }
}

pub fn symmetric_group(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(n, &[&[0, 1]]));
        let cyc: Vec<usize> = (0..n).collect();
        gens.push(Perm::from_cycles(n, &[&cyc]));
    }
    PermGroup::generated(n, &gens)
}

/// Symmetric group on `0..n` under function-order composition.
pub fn symmetric(n: usize) -> Magma {
    symmetric_group(n).magma
}

/// Cyclic group of order `n` with elements `1, r, r^2, ...`.
pub fn cyclic(n: usize) -> Magma {
    cyclic_named(n, "r")
}

pub fn cyclic_named(n: usize, letter: &str) -> Magma {
    let names = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => letter.to_string(),
            _ => format!("{letter}^{k}"),
        })
        .collect();
    Magma::from_fn(names, |i, j| Some((i + j) % n)).expect("cyclic table")
}

/// Direct product with index `i * |b| + j` for the pair `(i, j)`.
pub fn direct_product(a: &Magma, b: &Magma) -> Magma {
    let nb = b.size();
    let names = a
        .elements()
        .flat_map(|x| b.elements().map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", a.name(x), b.name(y)))
        .collect();
    Magma::from_fn(names, |i, j| {
        let (x1, y1) = (ElementId(i / nb), ElementId(i % nb));
        let (x2, y2) = (ElementId(j / nb), ElementId(j % nb));
        Some(a.mul(x1, x2)?.0 * nb + b.mul(y1, y2)?.0)
    })
    .expect("product table")
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> Magma {
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    PermGroup::generated(n, &[Perm(rot), Perm(refl)]).magma
}

/// Quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion() -> Magma {
    // Unit quaternion basis index 0..4 = 1, i, j, k, with signs.
    const NAMES: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    // (basis, sign) product of basis elements.
    fn basis(x: usize, y: usize) -> (usize, bool) {
        match (x, y) {
            (0, b) => (b, false),
            (a, 0) => (a, false),
            (a, b) if a == b => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    }
    Magma::from_fn(NAMES.iter().map(|s| s.to_string()).collect(), |p, q| {
        let (bp, sp) = (p / 2, p % 2 == 1);
        let (bq, sq) = (q / 2, q % 2 == 1);
        let (b, s) = basis(bp, bq);
        Some(2 * b + usize::from(s ^ sp ^ sq))
    })
    .expect("quaternion table")
}

/// Left-zero semigroup: `ab = a`.
pub fn left_zero(n: usize) -> Magma {
    let names = (0..n).map(|i| format!("z{i}")).collect();
    Magma::from_fn(names, |a, _| Some(a)).expect("left-zero table")
}

/// Adjoins a new global identity named `1` at index 0.
pub fn with_identity(m: &Magma) -> Magma {
    let mut names = vec!["1".to_string()];
    names.extend(m.names().iter().cloned());
    Magma::from_fn(names, |i, j| match (i, j) {
        (0, j) => Some(j),
        (i, 0) => Some(i),
        (i, j) => m.mul(ElementId(i - 1), ElementId(j - 1)).map(|c| c.0 + 1),
    })
    .expect("monoid table")
}

/// Trivial group with its single element named `1`.
pub fn trivial() -> Magma {
    cyclic(1)
}
