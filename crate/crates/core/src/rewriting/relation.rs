use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::RewriteError;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureKind {
    Reflexive,
    Transitive,
    ReflexiveTransitive,
    Symmetric,
    Equivalence,
}

impl FromStr for ClosureKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "reflexive" => ClosureKind::Reflexive,
            "transitive" => ClosureKind::Transitive,
            "reflexive_transitive" => ClosureKind::ReflexiveTransitive,
            "symmetric" => ClosureKind::Symmetric,
            "equivalence" => ClosureKind::Equivalence,
            _ => return Err(format!("unknown closure kind {s:?}")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelProperty {
    Terminating,
    ChurchRosser,
    Confluent,
    StronglyConfluent,
    LocallyConfluent,
}

impl RelProperty {
    pub const ALL: [RelProperty; 5] = [
        RelProperty::Terminating,
        RelProperty::ChurchRosser,
        RelProperty::Confluent,
        RelProperty::StronglyConfluent,
        RelProperty::LocallyConfluent,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            RelProperty::Terminating => "terminating",
            RelProperty::ChurchRosser => "church_rosser",
            RelProperty::Confluent => "confluent",
            RelProperty::StronglyConfluent => "strongly_confluent",
            RelProperty::LocallyConfluent => "locally_confluent",
        }
    }
}

impl fmt::Display for RelProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for RelProperty {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelProperty::ALL
            .into_iter()
            .find(|p| p.tag() == s)
            .ok_or_else(|| format!("unknown relation property {s:?}"))
    }
}

/// A binary relation on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractRel {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl AbstractRel {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<AbstractRel, RewriteError> {
        let edges: BTreeSet<_> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(RewriteError::EdgeOutOfRange(a, b, n));
        }
        Ok(AbstractRel { n, edges })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a, b))
    }

    fn succ(&self) -> Vec<Vec<usize>> {
        let mut s = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            s[a].push(b);
        }
        s
    }

    /// `reach[a][b]` iff `a →* b`.
    fn reach(&self) -> Vec<Vec<bool>> {
        let succ = self.succ();
        (0..self.n)
            .map(|a| {
                let mut seen = vec![false; self.n];
                seen[a] = true;
                let mut stack = vec![a];
                while let Some(x) = stack.pop() {
                    for &y in &succ[x] {
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    fn from_matrix(n: usize, m: &[Vec<bool>]) -> AbstractRel {
        let edges = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| m[a][b])
            .collect();
        AbstractRel { n, edges }
    }

    pub fn closure(&self, kind: ClosureKind) -> AbstractRel {
        let n = self.n;
        match kind {
            ClosureKind::Reflexive => AbstractRel {
                n,
                edges: self.edges.iter().copied().chain((0..n).map(|a| (a, a))).collect(),
            },
            ClosureKind::Transitive => {
                let succ = self.succ();
                // a →+ b: b reachable by a path of length ≥ 1.
                let mut m = vec![vec![false; n]; n];
                for a in 0..n {
                    let mut stack: Vec<usize> = succ[a].clone();
                    while let Some(x) = stack.pop() {
                        if !m[a][x] {
                            m[a][x] = true;
                            stack.extend(succ[x].iter().copied());
                        }
                    }
                }
                AbstractRel::from_matrix(n, &m)
            }
            ClosureKind::ReflexiveTransitive => AbstractRel::from_matrix(n, &self.reach()),
            ClosureKind::Symmetric => AbstractRel {
                n,
                edges: self.edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect(),
            },
            ClosureKind::Equivalence => self
                .closure(ClosureKind::Symmetric)
                .closure(ClosureKind::ReflexiveTransitive),
        }
    }

    /// Elements with no edge to a different element.
    pub fn irreducibles(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| !self.edges.iter().any(|&(x, y)| x == a && y != a))
            .collect()
    }

    pub fn is_irreducible(&self, a: usize) -> bool {
        !self.edges.iter().any(|&(x, y)| x == a && y != a)
    }

    /// A cycle of non-loop edges, if any.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            if a != b {
                succ[a].push(b);
            }
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; self.n];
        let mut path = Vec::new();
        fn dfs(v: usize, succ: &[Vec<usize>], state: &mut [u8], path: &mut Vec<usize>) -> Option<Vec<usize>> {
            state[v] = 1;
            path.push(v);
            for &w in &succ[v] {
                if state[w] == 1 {
                    let start = path.iter().position(|&x| x == w).unwrap();
                    return Some(path[start..].to_vec());
                }
                if state[w] == 0 {
                    if let Some(c) = dfs(w, succ, state, path) {
                        return Some(c);
                    }
                }
            }
            path.pop();
            state[v] = 2;
            None
        }
        for v in 0..self.n {
            if state[v] == 0 {
                if let Some(c) = dfs(v, &succ, &mut state, &mut path) {
                    return Some(c);
                }
            }
        }
        None
    }

    pub fn check(&self, prop: RelProperty) -> Report<Vec<usize>> {
        let n = self.n;
        let tag = prop.tag();
        let result = match prop {
            RelProperty::Terminating => match self.find_cycle() {
                Some(c) => Report::fail(tag, c),
                None => Report::pass(tag),
            },
            RelProperty::ChurchRosser => {
                let reach = self.reach();
                let equiv = self.closure(ClosureKind::Equivalence);
                let joinable = |a: usize, b: usize| (0..n).any(|c| reach[a][c] && reach[b][c]);
                match equiv.edges.iter().find(|&&(a, b)| !joinable(a, b)) {
                    Some(&(a, b)) => Report::fail(tag, vec![a, b]),
                    None => Report::pass(tag),
                }
            }
            RelProperty::Confluent => {
                let reach = self.reach();
                self.peaks(tag, |a, b| reach[a][b], |b, d| reach[b][d])
            }
            RelProperty::StronglyConfluent => {
                let step_eq = |b: usize, d: usize| b == d || self.contains(b, d);
                self.peaks(tag, |a, b| self.contains(a, b), step_eq)
            }
            RelProperty::LocallyConfluent => {
                let reach = self.reach();
                self.peaks(tag, |a, b| self.contains(a, b), |b, d| reach[b][d])
            }
        };
        result
    }

    /// For every peak `b ← a → c` under `down`, some `d` with `b ⇒ d ⇐ c` under `join`.
    /// The witness is the least pair `(b, c)`.
    fn peaks(
        &self,
        tag: &str,
        down: impl Fn(usize, usize) -> bool,
        join: impl Fn(usize, usize) -> bool,
    ) -> Report<Vec<usize>> {
        let n = self.n;
        for b in 0..n {
            for c in 0..n {
                if !(0..n).any(|a| down(a, b) && down(a, c)) {
                    continue;
                }
                if !(0..n).any(|d| join(b, d) && join(c, d)) {
                    return Report::fail(tag, vec![b, c]);
                }
            }
        }
        Report::pass(tag)
    }

    /// Equivalence classes of the generated equivalence, each sorted, ordered by least element.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let eq = self.closure(ClosureKind::Equivalence);
        let mut assigned = vec![false; self.n];
        let mut out = Vec::new();
        for a in 0..self.n {
            if assigned[a] {
                continue;
            }
            let class: Vec<usize> = (0..self.n).filter(|&b| eq.contains(a, b)).collect();
            for &b in &class {
                assigned[b] = true;
            }
            out.push(class);
        }
        out
    }

    /// Each element mapped to the unique irreducible of its class.
    pub fn normal_forms(&self) -> Result<Vec<usize>, RewriteError> {
        if let Some(c) = self.find_cycle() {
            return Err(RewriteError::NotTerminating(c));
        }
        let mut nf = vec![0; self.n];
        for class in self.classes() {
            let irr: Vec<usize> = class.iter().copied().filter(|&a| self.is_irreducible(a)).collect();
            if irr.len() != 1 {
                return Err(RewriteError::NotComplete {
                    class,
                    irreducibles: irr,
                });
            }
            for &a in &class {
                nf[a] = irr[0];
            }
        }
        Ok(nf)
    }

    /// `a →* b`.
    pub fn reaches(&self, a: usize, b: usize) -> bool {
        self.reach()[a][b]
    }

    /// Every class of the generated equivalence has exactly one irreducible.
    pub fn unique_irreducible_per_class(&self) -> bool {
        self.classes()
            .iter()
            .all(|c| c.iter().filter(|&&a| self.is_irreducible(a)).count() == 1)
    }

    /// For a terminating relation: Church-Rosser, confluent, locally confluent,
    /// and one irreducible per class. `None` if the relation has a cycle.
    pub fn newman_profile(&self) -> Option<[bool; 4]> {
        if self.find_cycle().is_some() {
            return None;
        }
        Some([
            self.check(RelProperty::ChurchRosser).passed(),
            self.check(RelProperty::Confluent).passed(),
            self.check(RelProperty::LocallyConfluent).passed(),
            self.unique_irreducible_per_class(),
        ])
    }

    /// Each of the `n²` possible edges independently with probability `p`.
    pub fn random(n: usize, p: f64, rng: &mut impl rand::Rng) -> AbstractRel {
        let edges = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|_| rng.random_bool(p))
            .collect::<Vec<_>>();
        AbstractRel::new(n, edges).expect("in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, e: &[(usize, usize)]) -> AbstractRel {
        AbstractRel::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn closures() {
        let r = rel(3, &[(0, 1), (1, 2)]);
        let rt = r.closure(ClosureKind::ReflexiveTransitive);
        let expect: BTreeSet<_> = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)].into_iter().collect();
        assert_eq!(rt.edges(), &expect);
        let t = r.closure(ClosureKind::Transitive);
        assert_eq!(t.edges().len(), 3);
        let e = rel(3, &[]).closure(ClosureKind::Equivalence);
        assert_eq!(e.edges().len(), 3);
        assert!(e.edges().iter().all(|&(a, b)| a == b));
        let s = rel(2, &[(0, 1)]).closure(ClosureKind::Symmetric);
        assert_eq!(s.edges().len(), 2);
    }

    #[test]
    fn property_examples() {
        let r = rel(3, &[(0, 1), (0, 2)]);
        assert_eq!(r.check(RelProperty::LocallyConfluent).witness, Some(vec![1, 2]));
        assert!(rel(2, &[(0, 1), (1, 0)]).check(RelProperty::Terminating).failed());
        let d = rel(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(d.check(RelProperty::Confluent).passed());
        assert!(d.check(RelProperty::ChurchRosser).passed());
        // self-loops do not break termination
        assert!(rel(1, &[(0, 0)]).check(RelProperty::Terminating).passed());
    }

    #[test]
    fn normal_forms_examples() {
        let d = rel(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(d.normal_forms().unwrap(), vec![3, 3, 3, 3]);
        assert_eq!(rel(3, &[]).normal_forms().unwrap(), vec![0, 1, 2]);
        assert_eq!(
            rel(3, &[(0, 1), (0, 2)]).normal_forms(),
            Err(RewriteError::NotComplete {
                class: vec![0, 1, 2],
                irreducibles: vec![1, 2]
            })
        );
        assert!(matches!(
            rel(2, &[(0, 1), (1, 0)]).normal_forms(),
            Err(RewriteError::NotTerminating(_))
        ));
    }

    #[test]
    fn local_confluence_without_confluence() {
        // 1 ← 0 ⇄ 3 → 2 : locally confluent, not confluent, not terminating
        let r = rel(4, &[(0, 1), (0, 3), (3, 0), (3, 2)]);
        assert!(r.check(RelProperty::LocallyConfluent).passed());
        assert!(r.check(RelProperty::Confluent).failed());
        assert!(r.check(RelProperty::Terminating).failed());
    }
}
