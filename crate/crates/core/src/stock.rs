//! Registry of prebuilt examples.

use std::collections::BTreeSet;

use crate::actions::{derive_internal_actions, ActionError, Derived};
use crate::catalog::{self, Perm};
use crate::categories::{FiniteCategory, GroupoidBundle, InternalSituation};
use crate::iso::{self, IsoSearch};
use crate::magma::{ElementId, Magma};
use crate::presentations::GenActions;
use crate::report::Report;
use crate::rewriting::{Alphabet, Kind, RuleSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown example {0:?}; known: {known}", known = NAMES.join(", "))]
pub struct UnknownExample(pub String);

pub const NAMES: [&str; 7] = [
    "s4-s3-c4",
    "s4-s3-klein",
    "s3xz2-jkl",
    "c3-c2-pres",
    "groupoid-pair-c2",
    "groupoid-s3",
    "groupoid-s3-twist",
];

/// A group with two subsets expected to factor it as `U·A`.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub group: Magma,
    pub u: Vec<ElementId>,
    pub a: Vec<ElementId>,
}

impl Factorization {
    pub fn derive(&self) -> Result<Derived, ActionError> {
        derive_internal_actions(&self.group, &self.u, &self.a)
    }
}

/// A group `H` with a normal subgroup `K` and two complements `J`, `L`.
#[derive(Debug, Clone)]
pub struct Complements {
    pub group: Magma,
    pub k: Vec<ElementId>,
    pub j: Vec<ElementId>,
    pub l: Vec<ElementId>,
}

#[derive(Debug, Clone)]
pub struct PresentationData {
    pub pres_u: RuleSet,
    pub pres_a: RuleSet,
    pub gen: GenActions,
    /// Order of the presented product.
    pub expected: usize,
}

#[derive(Debug, Clone)]
pub enum StockExample {
    Factorization(Factorization),
    Complements(Complements),
    Presentation(PresentationData),
    Groupoid(InternalSituation),
}

pub fn stock_example(name: &str) -> Result<StockExample, UnknownExample> {
    Ok(match name {
        "s4-s3-c4" => StockExample::Factorization(s4_with(&Perm::from_cycles(4, &[&[0, 1, 2, 3]]), None)),
        "s4-s3-klein" => StockExample::Factorization(s4_with(
            &Perm::from_cycles(4, &[&[0, 1], &[2, 3]]),
            Some(Perm::from_cycles(4, &[&[0, 2], &[1, 3]])),
        )),
        "s3xz2-jkl" => StockExample::Complements(s3xz2()),
        "c3-c2-pres" => StockExample::Presentation(c3_c2_presentation()),
        "groupoid-pair-c2" => StockExample::Groupoid(pair_groupoid_c2()),
        "groupoid-s3" => StockExample::Groupoid(groupoid_s3(false)),
        "groupoid-s3-twist" => StockExample::Groupoid(groupoid_s3(true)),
        _ => return Err(UnknownExample(name.to_string())),
    })
}

/// `S4` with `A = S3` on `{0,1,2}` and `U` generated by the given permutations.
fn s4_with(g1: &Perm, g2: Option<Perm>) -> Factorization {
    let s4 = catalog::symmetric_group(4);
    let mut gens = vec![g1.clone()];
    gens.extend(g2);
    let u = s4.subgroup(&gens);
    let a = s4.subgroup(&[Perm::from_cycles(4, &[&[0, 1]]), Perm::from_cycles(4, &[&[0, 1, 2]])]);
    Factorization { group: s4.magma, u, a }
}

fn s3xz2() -> Complements {
    let s3 = catalog::symmetric(3);
    let z2 = catalog::cyclic_named(2, "y");
    let h = catalog::direct_product(&s3, &z2);
    let id = |s: &str| h.id(s).expect("element of H");
    let k = h.elements().filter(|&x| h.name(x).ends_with(",1)")).collect();
    let j = h.generated_by(&[id("((0 1),y)")]);
    let l = h.generated_by(&[id("(1,y)")]);
    Complements { group: h, k, j, l }
}

/// `C3 = ⟨r, s⟩` and `C2 = ⟨f⟩` with `f` inverting rotations.
pub fn c3_c2_presentation() -> PresentationData {
    let x = Alphabet::chars("rs");
    let y = Alphabet::chars("f");
    let pres_u = RuleSet::parse(x.clone(), &[("rr", "s"), ("ss", "r"), ("rs", ""), ("sr", "")], Kind::Monoid)
        .expect("rules");
    let pres_a = RuleSet::parse(y.clone(), &[("ff", "")], Kind::Monoid).expect("rules");
    let gen = GenActions::parse(x, y, &[("f", "r", "s"), ("f", "s", "r")], &[("f", "r", "f"), ("f", "s", "f")])
        .expect("actions");
    PresentationData {
        pres_u,
        pres_a,
        gen,
        expected: 6,
    }
}

/// Pair groupoid on two objects times `C2`, `A` the slice `(·, 1)`.
fn pair_groupoid_c2() -> InternalSituation {
    let c2 = catalog::cyclic_named(2, "c");
    let g = FiniteCategory::pair_groupoid(2).times_monoid(&c2).expect("product");
    let arrow = |s: String| g.arrow(&s).expect("arrow");
    let phi = (0..2)
        .map(|x| vec![arrow(format!("({x}>{x},1)")), arrow(format!("({x}>{x},c)"))])
        .collect();
    let a = (0..g.arrows().len()).filter(|&i| g.name(i).ends_with(",1)")).collect();
    InternalSituation {
        bundle: GroupoidBundle::new(g, c2, phi).expect("bundle"),
        a,
    }
}

/// Pair groupoid on two objects times `S3`. Plain: `A` has vertex groups `C3`
/// and `U = C2` sits on different transpositions at the two objects. Twisted:
/// `A` has vertex groups `⟨(0 1)⟩` and `U = C3` is embedded inversely at object 1.
fn groupoid_s3(twisted: bool) -> InternalSituation {
    let s3 = catalog::symmetric(3);
    let g = FiniteCategory::pair_groupoid(2).times_monoid(&s3).expect("product");
    let arrow = |e: &str, p: &str| g.arrow(&format!("({e},{p})")).expect("arrow");
    let (u, a_perms, phi0, phi1): (Magma, &[&str], Vec<&str>, Vec<&str>) = if twisted {
        (
            catalog::cyclic_named(3, "r"),
            &["1", "(0 1)"],
            vec!["1", "(0 1 2)", "(0 2 1)"],
            vec!["1", "(0 2 1)", "(0 1 2)"],
        )
    } else {
        (
            catalog::cyclic_named(2, "y"),
            &["1", "(0 1 2)", "(0 2 1)"],
            vec!["1", "(0 1)"],
            vec!["1", "(0 2)"],
        )
    };
    let phi = vec![
        phi0.iter().map(|p| arrow("0>0", p)).collect(),
        phi1.iter().map(|p| arrow("1>1", p)).collect(),
    ];
    let mut a = Vec::new();
    for e in ["0>0", "0>1", "1>0", "1>1"] {
        for p in a_perms {
            a.push(arrow(e, p));
        }
    }
    InternalSituation {
        bundle: GroupoidBundle::new(g, u, phi).expect("bundle"),
        a,
    }
}

/// `U ∩ A = {1}` and `|UA| = |G|`.
pub fn complement_check(g: &Magma, u: &[ElementId], a: &[ElementId]) -> Report<Vec<ElementId>> {
    let tag = "unique_factorization";
    let common: Vec<ElementId> = u.iter().filter(|x| a.contains(x)).copied().collect();
    if common.len() != 1 {
        return Report::fail(tag, common).with_note("U ∩ A is not trivial");
    }
    let products: BTreeSet<ElementId> = u.iter().flat_map(|&x| a.iter().filter_map(move |&y| g.mul(x, y))).collect();
    if products.len() != g.size() {
        return Report::fail(tag, vec![]).with_note(format!("|UA| = {} of {}", products.len(), g.size()));
    }
    Report::pass(tag).with_note(format!("|UA| = {}", g.size()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rigidity {
    /// `J ≅ L` as groups.
    pub isomorphic: bool,
    pub automorphisms: usize,
    /// Automorphisms with `σ(J) = L`.
    pub carrying: usize,
}

pub fn rigidity(c: &Complements) -> Rigidity {
    let jm = c.group.restrict(&c.j).expect("J is closed").magma;
    let lm = c.group.restrict(&c.l).expect("L is closed").magma;
    let isomorphic = matches!(iso::find_isomorphism(&jm, &lm, 1 << 20), IsoSearch::Found(_));
    let autos = iso::automorphisms(&c.group, 1 << 20).expect("small group");
    let l: BTreeSet<ElementId> = c.l.iter().copied().collect();
    let carrying = autos
        .iter()
        .filter(|s| c.j.iter().map(|x| s[x.0]).collect::<BTreeSet<_>>() == l)
        .count();
    Rigidity {
        isomorphic,
        automorphisms: autos.len(),
        carrying,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::{convert_zs_actions, conditions_verdict, int_ext_roundtrip, Situation};
    use crate::product::{classify_product, ProductKind};

    fn fact(name: &str) -> Factorization {
        match stock_example(name).unwrap() {
            StockExample::Factorization(f) => f,
            _ => unreachable!(),
        }
    }

    #[test]
    fn s4_complements() {
        for (name, kind) in [("s4-s3-c4", ProductKind::General), ("s4-s3-klein", ProductKind::Semidirect)] {
            let f = fact(name);
            assert_eq!((f.u.len(), f.a.len()), (4, 6));
            assert!(complement_check(&f.group, &f.u, &f.a).passed());
            let d = f.derive().unwrap();
            assert_eq!(classify_product(&d.actions, &Default::default()), kind, "{name}");
        }
    }

    #[test]
    fn jkl_rigidity() {
        let StockExample::Complements(c) = stock_example("s3xz2-jkl").unwrap() else { unreachable!() };
        assert_eq!((c.k.len(), c.j.len(), c.l.len()), (6, 2, 2));
        assert!(complement_check(&c.group, &c.j, &c.k).passed());
        assert!(complement_check(&c.group, &c.l, &c.k).passed());
        let r = rigidity(&c);
        assert!(r.isomorphic);
        // inner automorphisms of S3, each with or without the sign twist (x, y) ↦ (x, y·sgn x)
        assert_eq!(r.automorphisms, 12);
        assert_eq!(r.carrying, 0);
    }

    #[test]
    fn groupoid_examples_roundtrip() {
        for name in ["groupoid-pair-c2", "groupoid-s3", "groupoid-s3-twist"] {
            let StockExample::Groupoid(sit) = stock_example(name).unwrap() else { unreachable!() };
            let conv = convert_zs_actions(&sit.bundle, &sit.a).unwrap();
            assert!(conditions_verdict(&conv.conditions).is_pass(), "{name}: {:?}", conv.conditions);
            let r = int_ext_roundtrip(&Situation::Internal(sit)).unwrap();
            assert!(conditions_verdict(&r).is_pass(), "{name}: {r:?}");
        }
    }

    #[test]
    fn twisted_groupoid_has_nontrivial_dot() {
        let StockExample::Groupoid(sit) = stock_example("groupoid-s3-twist").unwrap() else { unreachable!() };
        let conv = convert_zs_actions(&sit.bundle, &sit.a).unwrap();
        let (dot_trivial, _) = conv.situation.actions.trivial_families(&Default::default());
        assert!(!dot_trivial);
    }

    #[test]
    fn unknown_name() {
        assert_eq!(stock_example("nope").unwrap_err(), UnknownExample("nope".into()));
    }
}
