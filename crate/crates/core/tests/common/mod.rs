//! Brute-force oracles shared by the integration tests. None of these call
//! into the library's own checks; they only read tables.
#![allow(dead_code)]

use std::collections::BTreeSet;

use zs_core::iso::find_isomorphism;
use zs_core::magma::{ElementId, Magma};

pub fn e(i: usize) -> ElementId {
    ElementId(i)
}

/// Every full associative table on `n` labelled elements.
pub fn all_semigroups(n: usize) -> Vec<Magma> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    let mut out = Vec::new();
    let mut t = vec![0usize; cells];
    for code in 0..total {
        let mut c = code;
        for x in t.iter_mut() {
            *x = c % n;
            c /= n;
        }
        let m = |a: usize, b: usize| t[a * n + b];
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m(m(a, b), c) == m(a, m(b, c)))));
        if assoc {
            let names = (0..n).map(|i| format!("e{i}")).collect();
            out.push(Magma::from_fn(names, |a, b| Some(m(a, b))).unwrap());
        }
    }
    out
}

pub fn is_hom_bijection(a: &Magma, b: &Magma, map: &[ElementId]) -> bool {
    if a.size() != b.size() || map.len() != a.size() {
        return false;
    }
    if map.iter().collect::<BTreeSet<_>>().len() != map.len() {
        return false;
    }
    a.elements().all(|x| {
        a.elements()
            .all(|y| a.mul(x, y).map(|z| map[z.0]) == b.mul(map[x.0], map[y.0]))
    })
}

/// Isomorphism found by the library's search, then re-verified entrywise.
pub fn verified_iso(a: &Magma, b: &Magma) -> bool {
    find_isomorphism(a, b, 1 << 24)
        .found()
        .is_some_and(|map| is_hom_bijection(a, b, map))
}

pub fn identity(m: &Magma) -> Option<ElementId> {
    m.elements()
        .find(|&x| m.elements().all(|y| m.mul(x, y) == Some(y) && m.mul(y, x) == Some(y)))
}

pub fn inv(m: &Magma, a: ElementId) -> ElementId {
    let one = identity(m).expect("monoid");
    m.elements().find(|&b| m.mul(a, b) == Some(one)).expect("unit")
}

/// Automorphisms of a finite group, by extending generator images.
pub fn automorphisms(m: &Magma) -> Vec<Vec<ElementId>> {
    let one = identity(m).expect("group");
    // grow a generating list greedily
    let mut gens = Vec::new();
    let mut span = closure(m, &[one]);
    for x in m.elements() {
        if !span.contains(&x) {
            gens.push(x);
            span = closure(m, &gens);
        }
    }
    let mut out = Vec::new();
    let images: Vec<Vec<ElementId>> = gens.iter().map(|_| m.elements().collect()).collect();
    let mut idx = vec![0usize; gens.len()];
    loop {
        let img: Vec<ElementId> = idx.iter().zip(&images).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend(m, one, &gens, &img) {
            if is_hom_bijection(m, m, &map) {
                out.push(map);
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < m.size() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn closure(m: &Magma, gens: &[ElementId]) -> BTreeSet<ElementId> {
    let mut s: BTreeSet<ElementId> = gens.iter().copied().collect();
    loop {
        let new: Vec<ElementId> = s
            .iter()
            .flat_map(|&a| s.iter().filter_map(move |&b| m.mul(a, b)))
            .filter(|c| !s.contains(c))
            .collect();
        if new.is_empty() {
            return s;
        }
        s.extend(new);
    }
}

fn extend(m: &Magma, one: ElementId, gens: &[ElementId], img: &[ElementId]) -> Option<Vec<ElementId>> {
    let mut map = vec![None; m.size()];
    map[one.0] = Some(one);
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for (g, h) in gens.iter().zip(img) {
            let y = m.mul(x, *g)?;
            let fy = m.mul(map[x.0]?, *h)?;
            match map[y.0] {
                None => {
                    map[y.0] = Some(fy);
                    frontier.push(y);
                }
                Some(v) if v != fy => return None,
                _ => {}
            }
        }
    }
    map.into_iter().collect()
}

/// Church-Rosser, confluent, locally confluent, unique irreducible per class;
/// `None` when the relation has a cycle. Loops `a → a` count neither against
/// termination nor against irreducibility. Relations on at most 8 points.
pub fn relation_profile(n: usize, edges: &[(usize, usize)]) -> Option<[bool; 4]> {
    let mut succ = vec![0u8; n];
    for &(a, b) in edges.iter().filter(|(a, b)| a != b) {
        succ[a] |= 1 << b;
    }
    // reflexive-transitive closure
    let mut reach: Vec<u8> = (0..n).map(|a| succ[a] | (1 << a)).collect();
    for k in 0..n {
        for a in 0..n {
            if reach[a] & (1 << k) != 0 {
                reach[a] |= reach[k];
            }
        }
    }
    let plus = |a: usize| (0..n).filter(|&b| succ[a] & (1 << b) != 0).fold(0u8, |acc, b| acc | reach[b]);
    if (0..n).any(|a| plus(a) & (1 << a) != 0) {
        return None;
    }
    let bits = |m: u8| (0..n).filter(move |&b| m & (1 << b) != 0);
    let joinable = |b: usize, c: usize| reach[b] & reach[c] != 0;
    let confluent = (0..n).all(|a| bits(reach[a]).all(|b| bits(reach[a]).all(|c| joinable(b, c))));
    let local = (0..n).all(|a| bits(succ[a]).all(|b| bits(succ[a]).all(|c| joinable(b, c))));
    let mut class: Vec<usize> = (0..n).collect();
    fn find(c: &mut Vec<usize>, x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut class, a), find(&mut class, b));
        class[ra] = rb;
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut class, x)).collect();
    let cr = (0..n).all(|a| (0..n).all(|b| roots[a] != roots[b] || joinable(a, b)));
    let unique = (0..n).all(|r| {
        roots[r] != r || (0..n).filter(|&x| roots[x] == r && succ[x] == 0).count() == 1
    });
    Some([cr, confluent, local, unique])
}
