//! Brute-force isomorphism search between small magmas.
//!
//! A generating set of the source is fixed; candidate images of the
//! generators are enumerated and each assignment is propagated through the
//! table. The number of assignments tried is capped.

use std::collections::BTreeSet;

use crate::magma::{ElementId, Magma};

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoSearch {
    Found(Vec<ElementId>),
    NotIsomorphic,
    CapExceeded,
}

impl IsoSearch {
    pub fn found(&self) -> Option<&[ElementId]> {
        match self {
            IsoSearch::Found(m) => Some(m),
            _ => None,
        }
    }
}

/// Greedy generating set: repeatedly add the least element not yet generated.
pub fn generating_set(m: &Magma) -> Vec<ElementId> {
    let mut gens = Vec::new();
    let mut have: BTreeSet<ElementId> = BTreeSet::new();
    for a in m.elements() {
        if !have.contains(&a) {
            gens.push(a);
            have = m.generated_by(&gens).into_iter().collect();
        }
    }
    gens
}

/// Invariants preserved by any isomorphism.
fn signature(m: &Magma, a: ElementId) -> (usize, usize, bool, bool, usize) {
    let row = m.elements().filter(|&b| m.defined(a, b)).count();
    let col = m.elements().filter(|&b| m.defined(b, a)).count();
    let sq = m.mul(a, a);
    // length of the power sequence a, a^2, ... before it stops or repeats
    let mut seen = BTreeSet::new();
    let mut x = Some(a);
    while let Some(y) = x {
        if !seen.insert(y) {
            break;
        }
        x = m.mul(y, a);
    }
    (row, col, sq.is_some(), sq == Some(a), seen.len())
}

/// Extends a partial map on generators to the whole carrier, or fails.
fn propagate(a: &Magma, b: &Magma, map: &mut [Option<ElementId>], used: &mut [bool]) -> bool {
    loop {
        let mut changed = false;
        for (x, y, z) in a.entries() {
            let (Some(fx), Some(fy)) = (map[x.0], map[y.0]) else {
                continue;
            };
            let Some(w) = b.mul(fx, fy) else { return false };
            match map[z.0] {
                Some(fz) if fz != w => return false,
                Some(_) => {}
                None => {
                    if used[w.0] {
                        return false;
                    }
                    map[z.0] = Some(w);
                    used[w.0] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn is_iso(a: &Magma, b: &Magma, map: &[ElementId]) -> bool {
    a.elements().all(|x| {
        a.elements()
            .all(|y| a.mul(x, y).map(|z| map[z.0]) == b.mul(map[x.0], map[y.0]))
    })
}

/// Searches for an isomorphism `a → b`; the first found in candidate order is returned.
pub fn find_isomorphism(a: &Magma, b: &Magma, cap: usize) -> IsoSearch {
    let mut all = isomorphisms(a, b, cap, Some(1));
    match all.pop() {
        Some(Ok(m)) => IsoSearch::Found(m),
        Some(Err(())) => IsoSearch::CapExceeded,
        None => IsoSearch::NotIsomorphic,
    }
}

/// All automorphisms of `m`, or `None` if the cap is exceeded.
pub fn automorphisms(m: &Magma, cap: usize) -> Option<Vec<Vec<ElementId>>> {
    let res = isomorphisms(m, m, cap, None);
    res.into_iter().collect::<Result<Vec<_>, ()>>().ok()
}

/// Enumerates isomorphisms; an `Err(())` entry marks cap exhaustion.
fn isomorphisms(a: &Magma, b: &Magma, cap: usize, limit: Option<usize>) -> Vec<Result<Vec<ElementId>, ()>> {
    let mut out = Vec::new();
    if a.size() != b.size() || a.domain_size() != b.domain_size() {
        return out;
    }
    let mut sig_a: Vec<_> = a.elements().map(|x| signature(a, x)).collect();
    let mut sig_b: Vec<_> = b.elements().map(|x| signature(b, x)).collect();
    {
        let (mut sa, mut sb) = (sig_a.clone(), sig_b.clone());
        sa.sort();
        sb.sort();
        if sa != sb {
            return out;
        }
    }
    let gens = generating_set(a);
    let cands: Vec<Vec<ElementId>> = gens
        .iter()
        .map(|&g| b.elements().filter(|&y| sig_b[y.0] == sig_a[g.0]).collect())
        .collect();
    sig_a.clear();
    sig_b.clear();
    if cands.iter().any(|c| c.is_empty()) {
        return out;
    }
    let mut idx = vec![0usize; gens.len()];
    let mut tried = 0usize;
    loop {
        tried += 1;
        if tried > cap {
            out.push(Err(()));
            return out;
        }
        let mut map = vec![None; a.size()];
        let mut used = vec![false; b.size()];
        let mut ok = true;
        for (k, &g) in gens.iter().enumerate() {
            let y = cands[k][idx[k]];
            match map[g.0] {
                Some(prev) if prev != y => ok = false,
                Some(_) => {}
                None if used[y.0] => ok = false,
                None => {
                    map[g.0] = Some(y);
                    used[y.0] = true;
                }
            }
        }
        if ok && propagate(a, b, &mut map, &mut used) && map.iter().all(Option::is_some) {
            let full: Vec<ElementId> = map.into_iter().map(|x| x.unwrap()).collect();
            if is_iso(a, b, &full) {
                out.push(Ok(full));
                if limit.is_some_and(|l| out.len() >= l) {
                    return out;
                }
            }
        }
        // odometer
        let mut k = gens.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < cands[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

pub fn are_isomorphic(a: &Magma, b: &Magma) -> bool {
    matches!(find_isomorphism(a, b, DEFAULT_CAP), IsoSearch::Found(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn relabelled_group_is_isomorphic() {
        let s3 = catalog::symmetric(3);
        let d3 = catalog::dihedral(3);
        let m = find_isomorphism(&s3, &d3, DEFAULT_CAP);
        let map = m.found().unwrap().to_vec();
        assert!(is_iso(&s3, &d3, &map));
    }

    #[test]
    fn distinct_groups() {
        assert_eq!(
            find_isomorphism(&catalog::cyclic(6), &catalog::symmetric(3), DEFAULT_CAP),
            IsoSearch::NotIsomorphic
        );
        assert!(!are_isomorphic(&catalog::dihedral(4), &catalog::quaternion()));
        assert!(!are_isomorphic(
            &catalog::cyclic(4),
            &catalog::direct_product(&catalog::cyclic(2), &catalog::cyclic(2))
        ));
        assert!(are_isomorphic(
            &catalog::cyclic(6),
            &catalog::direct_product(&catalog::cyclic(2), &catalog::cyclic(3))
        ));
    }

    #[test]
    fn automorphism_counts() {
        // |Aut(S3)| = 6, |Aut(C2 x C2)| = 6, |Aut(C5)| = 4
        assert_eq!(automorphisms(&catalog::symmetric(3), DEFAULT_CAP).unwrap().len(), 6);
        let v = catalog::direct_product(&catalog::cyclic(2), &catalog::cyclic(2));
        assert_eq!(automorphisms(&v, DEFAULT_CAP).unwrap().len(), 6);
        assert_eq!(automorphisms(&catalog::cyclic(5), DEFAULT_CAP).unwrap().len(), 4);
    }

    #[test]
    fn cap_is_reported() {
        let s4 = catalog::symmetric(4);
        assert_eq!(find_isomorphism(&s4, &catalog::cyclic(24), 0), IsoSearch::NotIsomorphic);
        assert_eq!(find_isomorphism(&s4, &s4, 0), IsoSearch::CapExceeded);
    }

    #[test]
    fn partial_magmas() {
        let a = Magma::new(2, vec![], [((0, 0), 0)]).unwrap();
        let b = Magma::new(2, vec![], [((1, 1), 1)]).unwrap();
        assert_eq!(find_isomorphism(&a, &b, 10), IsoSearch::Found(vec![ElementId(1), ElementId(0)]));
    }
}
