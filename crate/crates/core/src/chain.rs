//! Iterated products `E(U₁ ⋈ … ⋈ Uₙ)` over a binary bracketing tree, checked
//! against a magma that factors uniquely as `u₁u₂⋯uₙ`.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::actions::FiniteActions;
use crate::axioms::ProductDomain;
use crate::domain::Fuel;
use crate::magma::{ElementId, Magma, MagmaError, Morphism};
use crate::product::{ProductError, ZsProduct};
use crate::properties::{check_property, Property};
use crate::report::{Report, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("condition ({index}) failed at {witness:?}")]
    ConditionFailed { index: String, witness: Vec<ElementId> },
    #[error("bad bracketing: {0}")]
    BadTree(String),
    #[error(transparent)]
    Magma(#[from] MagmaError),
    #[error(transparent)]
    Product(#[from] ProductError),
}

/// A binary bracketing of factors `1..n`, written like `((1 2) 3)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ParenTree {
    Leaf(usize),
    Node(Box<ParenTree>, Box<ParenTree>),
}

impl ParenTree {
    pub fn leaf(i: usize) -> ParenTree {
        ParenTree::Leaf(i)
    }

    pub fn node(l: ParenTree, r: ParenTree) -> ParenTree {
        ParenTree::Node(Box::new(l), Box::new(r))
    }

    /// `((1 2) … n)`.
    pub fn left_comb(n: usize) -> ParenTree {
        (2..=n).fold(ParenTree::leaf(1), |t, i| ParenTree::node(t, ParenTree::leaf(i)))
    }

    /// `(1 (2 … n))`.
    pub fn right_comb(n: usize) -> ParenTree {
        (1..n).rev().fold(ParenTree::leaf(n), |t, i| ParenTree::node(ParenTree::leaf(i), t))
    }

    pub fn leaves(&self) -> Vec<usize> {
        match self {
            ParenTree::Leaf(i) => vec![*i],
            ParenTree::Node(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }

    pub fn parse(s: &str) -> Result<ParenTree, ChainError> {
        let tokens: Vec<String> = s
            .replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(str::to_string)
            .collect();
        let mut pos = 0;
        let t = parse_tree(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(ChainError::BadTree(format!("trailing input in {s:?}")));
        }
        let leaves = t.leaves();
        if leaves != (1..=leaves.len()).collect::<Vec<_>>() {
            return Err(ChainError::BadTree(format!("leaves must be 1..n in order, got {leaves:?}")));
        }
        Ok(t)
    }
}

fn parse_tree(tokens: &[String], pos: &mut usize) -> Result<ParenTree, ChainError> {
    let tok = tokens.get(*pos).ok_or_else(|| ChainError::BadTree("unexpected end".into()))?;
    *pos += 1;
    if tok == "(" {
        let l = parse_tree(tokens, pos)?;
        let r = parse_tree(tokens, pos)?;
        if tokens.get(*pos).map(String::as_str) != Some(")") {
            return Err(ChainError::BadTree("expected exactly two children".into()));
        }
        *pos += 1;
        Ok(ParenTree::node(l, r))
    } else {
        tok.parse::<usize>()
            .map(ParenTree::Leaf)
            .map_err(|_| ChainError::BadTree(format!("bad token {tok:?}")))
    }
}

impl fmt::Display for ParenTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParenTree::Leaf(i) => write!(f, "{i}"),
            ParenTree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

/// The iterated product for one tree, mapped onto `M`.
#[derive(Debug, Clone)]
pub struct ChainResult {
    pub conditions: Vec<Report<Vec<ElementId>>>,
    /// `E(U₁ ⋈ … ⋈ Uₙ)` built from nested external products.
    pub nested: Magma,
    /// `E(u₁, …, uₙ) ↦ u₁⋯uₙ`.
    pub map: Morphism,
}

impl ChainResult {
    pub fn verdict(&self) -> Verdict {
        self.conditions
            .iter()
            .fold(self.map.is_isomorphism().verdict, |v, r| v.and(r.verdict))
    }
}

/// `W_i^j`: all defined products `u_i ⋯ u_j`, evaluated left to right.
fn span(m: &Magma, factors: &[Vec<ElementId>]) -> BTreeSet<ElementId> {
    let mut cur: BTreeSet<ElementId> = factors[0].iter().copied().collect();
    for f in &factors[1..] {
        cur = cur
            .iter()
            .flat_map(|&x| f.iter().filter_map(move |&y| m.mul(x, y)))
            .collect();
    }
    cur
}

/// Odometer step over `Π |factors[k]|`; false after the last tuple.
fn advance(idx: &mut [usize], factors: &[Vec<ElementId>]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < factors[k].len() {
            return true;
        }
        idx[k] = 0;
    }
    false
}

fn fail(index: &str, witness: Vec<ElementId>) -> Result<(), ChainError> {
    Err(ChainError::ConditionFailed {
        index: index.into(),
        witness,
    })
}

/// Checks (a)–(d) for any `n`, and (1)–(6) as well when `n = 3`.
pub fn chain_conditions(m: &Magma, factors: &[Vec<ElementId>]) -> Result<Vec<Report<Vec<ElementId>>>, ChainError> {
    let n = factors.len();
    if n == 0 {
        return Err(ChainError::BadTree("no factors".into()));
    }
    let mut out = Vec::new();

    let cat = check_property(m, Property::Categorical);
    if let (Verdict::Fail, Some(w)) = (cat.verdict, cat.witness.clone()) {
        fail("a", w)?;
    }
    out.push(Report::pass("a"));

    let mut reps: Vec<Vec<Vec<ElementId>>> = vec![Vec::new(); m.size()];
    let mut idx = vec![0usize; n];
    if factors.iter().all(|f| !f.is_empty()) {
        loop {
            let tuple: Vec<ElementId> = idx.iter().zip(factors).map(|(&i, f)| f[i]).collect();
            let prod = tuple[1..].iter().try_fold(tuple[0], |acc, &y| m.mul(acc, y));
            if let Some(x) = prod {
                reps[x.0].push(tuple);
            }
            if !advance(&mut idx, factors) {
                break;
            }
        }
    }
    for x in m.elements() {
        match reps[x.0].len() {
            1 => {}
            0 => fail("b", vec![x])?,
            _ => {
                let mut w = vec![x];
                w.extend(&reps[x.0][0]);
                w.extend(&reps[x.0][1]);
                fail("b", w)?
            }
        }
    }
    out.push(Report::pass("b"));

    for i in 0..n.saturating_sub(1) {
        for &u in &factors[i] {
            if !factors[i + 1].iter().any(|&v| m.mul(u, v) == Some(u)) {
                fail("c", vec![u])?;
            }
        }
        for &v in &factors[i + 1] {
            if !factors[i].iter().any(|&u| m.mul(u, v) == Some(v)) {
                fail("c", vec![v])?;
            }
        }
    }
    out.push(Report::pass("c"));

    for i in 0..n {
        for j in i..n {
            let w: Vec<ElementId> = span(m, &factors[i..=j]).into_iter().collect();
            if let Some((a, b, c)) = m.closure_violation(&w) {
                fail("d", vec![a, b, c])?;
            }
        }
    }
    out.push(Report::pass("d"));

    if n == 3 {
        out.extend(three_factor_conditions(m, factors)?);
    }
    Ok(out)
}

fn three_factor_conditions(m: &Magma, f: &[Vec<ElementId>]) -> Result<Vec<Report<Vec<ElementId>>>, ChainError> {
    let (u, v, a) = (&f[0], &f[1], &f[2]);
    let mut out = Vec::new();
    for s in [u, v, a] {
        if let Some((x, y, z)) = m.closure_violation(s) {
            fail("1", vec![x, y, z])?;
        }
    }
    out.push(Report::pass("1"));

    let unique = |p: &[ElementId], q: &[ElementId]| -> Result<BTreeSet<ElementId>, ChainError> {
        let mut seen: BTreeMap<ElementId, (ElementId, ElementId)> = BTreeMap::new();
        for &x in p {
            for &y in q {
                if let Some(z) = m.mul(x, y) {
                    if let Some(&(x0, y0)) = seen.get(&z) {
                        fail("2", vec![z, x0, y0, x, y])?;
                    }
                    seen.insert(z, (x, y));
                }
            }
        }
        Ok(seen.into_keys().collect())
    };
    let uv = unique(u, v)?;
    let va = unique(v, a)?;
    out.push(Report::pass("2"));

    for (p, q, target) in [(v, u, &uv), (a, v, &va)] {
        for &x in p {
            for &y in q {
                if let Some(z) = m.mul(x, y) {
                    if !target.contains(&z) {
                        fail("3", vec![x, y])?;
                    }
                }
            }
        }
    }
    out.push(Report::pass("3"));

    for (s, t) in [(u, &uv), (v, &uv), (v, &va), (a, &va)] {
        if let Some(&x) = s.iter().find(|x| !t.contains(x)) {
            fail("4", vec![x])?;
        }
    }
    out.push(Report::pass("4"));

    let cat = check_property(m, Property::Categorical);
    if let (Verdict::Fail, Some(w)) = (cat.verdict, cat.witness) {
        fail("5", w)?;
    }
    out.push(Report::pass("5"));

    let va_list: Vec<ElementId> = va.into_iter().collect();
    let mut count = vec![0usize; m.size()];
    for &x in u {
        for &w in &va_list {
            if let Some(z) = m.mul(x, w) {
                count[z.0] += 1;
            }
        }
    }
    if let Some(x) = m.elements().find(|x| count[x.0] != 1) {
        fail("6", vec![x])?;
    }
    out.push(Report::pass("6"));
    Ok(out)
}

/// A nested product together with its image map into `M`.
struct Level {
    magma: Magma,
    image: Vec<ElementId>,
}

fn build(m: &Magma, factors: &[Vec<ElementId>], tree: &ParenTree) -> Result<Level, ChainError> {
    match tree {
        ParenTree::Leaf(i) => {
            let sub = m.restrict(&factors[*i - 1])?;
            let image = sub.magma.elements().map(|x| sub.to_parent(x)).collect();
            Ok(Level { magma: sub.magma, image })
        }
        ParenTree::Node(l, r) => {
            let left = build(m, factors, l)?;
            let right = build(m, factors, r)?;
            let mut split: BTreeMap<ElementId, (ElementId, ElementId)> = BTreeMap::new();
            let mut e = BTreeSet::new();
            for x in left.magma.elements() {
                for y in right.magma.elements() {
                    if let Some(z) = m.mul(left.image[x.0], right.image[y.0]) {
                        split.insert(z, (x, y));
                        e.insert((x, y));
                    }
                }
            }
            let actions = FiniteActions::from_finite_fn(right.magma.clone(), left.magma.clone(), |al, u| {
                m.mul(right.image[al.0], left.image[u.0])
                    .and_then(|z| split.get(&z).copied())
            })
            .map_err(ProductError::from)?;
            let zs = ZsProduct::new(actions, ProductDomain::Pairs(e));
            let table = zs.to_magma(&Fuel::default())?;
            let image = table
                .pairs
                .iter()
                .map(|&(x, y)| m.mul(left.image[x.0], right.image[y.0]).expect("pair in E"))
                .collect();
            Ok(Level {
                magma: table.magma,
                image,
            })
        }
    }
}

/// Checks the factorization conditions, then builds `E(U₁ ⋈ … ⋈ Uₙ)` for `tree`
/// and maps it onto `M`.
pub fn assoc_chain_iso(m: &Magma, factors: &[Vec<ElementId>], tree: &ParenTree) -> Result<ChainResult, ChainError> {
    if tree.leaves().len() != factors.len() {
        return Err(ChainError::BadTree(format!(
            "tree has {} leaves for {} factors",
            tree.leaves().len(),
            factors.len()
        )));
    }
    let conditions = chain_conditions(m, factors)?;
    let level = build(m, factors, tree)?;
    let map = Morphism::new(level.magma.clone(), m.clone(), level.image)?;
    Ok(ChainResult {
        conditions,
        nested: level.magma,
        map,
    })
}

/// `first.nested → M → second.nested`.
pub fn chain_composite(first: &ChainResult, second: &ChainResult) -> Result<Morphism, MagmaError> {
    let mut back = vec![ElementId(0); second.map.target.size()];
    for x in second.nested.elements() {
        back[second.map.apply(x).0] = x;
    }
    let map = first.nested.elements().map(|x| back[first.map.apply(x).0]).collect();
    Morphism::new(first.nested.clone(), second.nested.clone(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, Perm};

    fn s4_factors(g: &catalog::PermGroup, gens: &[&[&[usize]]]) -> Vec<Vec<ElementId>> {
        gens.iter()
            .map(|cyc| {
                let ps: Vec<Perm> = cyc.iter().map(|c| Perm::from_cycles(4, &[c])).collect();
                g.subgroup(&ps)
            })
            .collect()
    }

    #[test]
    fn tree_parsing() {
        let t = ParenTree::parse("((1 2) 3)").unwrap();
        assert_eq!(t, ParenTree::left_comb(3));
        assert_eq!(t.to_string(), "((1 2) 3)");
        assert_eq!(ParenTree::parse("(1 (2 3))").unwrap(), ParenTree::right_comb(3));
        assert_eq!(ParenTree::parse("1").unwrap(), ParenTree::leaf(1));
        assert!(ParenTree::parse("(2 1)").is_err());
        assert!(ParenTree::parse("(1 2 3)").is_err());
    }

    #[test]
    fn klein_c3_c2_chain_in_s4() {
        let g = catalog::symmetric_group(4);
        let v = g.subgroup(&[
            Perm::from_cycles(4, &[&[0, 1], &[2, 3]]),
            Perm::from_cycles(4, &[&[0, 2], &[1, 3]]),
        ]);
        let mut f = vec![v];
        f.extend(s4_factors(&g, &[&[&[0, 1, 2]], &[&[0, 1]]]));
        let a = assoc_chain_iso(&g.magma, &f, &ParenTree::left_comb(3)).unwrap();
        let b = assoc_chain_iso(&g.magma, &f, &ParenTree::right_comb(3)).unwrap();
        assert_eq!(a.conditions.len(), 10);
        assert!(a.verdict().is_pass() && b.verdict().is_pass());
        assert!(chain_composite(&b, &a).unwrap().is_isomorphism().passed());
    }

    #[test]
    fn c2_c3_c4_chain_is_not_closed() {
        let g = catalog::symmetric_group(4);
        let f = s4_factors(&g, &[&[&[0, 1]], &[&[0, 1, 2]], &[&[0, 1, 2, 3]]]);
        match assoc_chain_iso(&g.magma, &f, &ParenTree::left_comb(3)) {
            Err(ChainError::ConditionFailed { index, .. }) => assert_eq!(index, "d"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn single_factor() {
        let g = catalog::symmetric_group(4);
        let all: Vec<ElementId> = g.magma.elements().collect();
        let r = assoc_chain_iso(&g.magma, &[all], &ParenTree::leaf(1)).unwrap();
        assert!(r.verdict().is_pass());
    }

    #[test]
    fn ambiguous_factorization_in_c4() {
        let c4 = catalog::cyclic(4);
        let half = vec![ElementId(0), ElementId(2)];
        match assoc_chain_iso(&c4, &[half.clone(), half], &ParenTree::left_comb(2)) {
            Err(ChainError::ConditionFailed { index, .. }) => assert_eq!(index, "b"),
            other => panic!("{other:?}"),
        }
    }
}
