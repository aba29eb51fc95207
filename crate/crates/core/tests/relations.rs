mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zs_core::rewriting::{AbstractRel, Alphabet, ClosureKind, Kind, RuleSet, Word};

fn relation() -> impl Strategy<Value = AbstractRel> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::btree_set((0..n, 0..n), 0..=(n * n).min(12))
            .prop_map(move |e| AbstractRel::new(n, e).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn newman_profile_matches_oracle(r in relation()) {
        let edges: Vec<_> = r.edges().iter().copied().collect();
        let oracle = common::relation_profile(r.size(), &edges);
        prop_assert_eq!(r.newman_profile(), oracle);
        if let Some(p) = oracle {
            prop_assert!(p.iter().all(|&b| b == p[0]));
        }
    }

    #[test]
    fn closures_are_idempotent_and_contain_the_relation(r in relation()) {
        for kind in [ClosureKind::Reflexive, ClosureKind::Transitive, ClosureKind::ReflexiveTransitive,
                     ClosureKind::Symmetric, ClosureKind::Equivalence] {
            let c = r.closure(kind);
            prop_assert!(r.edges().is_subset(c.edges()));
            prop_assert_eq!(c.closure(kind), c.clone());
        }
    }

    #[test]
    fn normal_forms_are_irreducible_and_reached(r in relation()) {
        if let Ok(nf) = r.normal_forms() {
            for (a, &b) in nf.iter().enumerate() {
                prop_assert!(r.is_irreducible(b));
                prop_assert!(r.reaches(a, b));
            }
        }
    }

    #[test]
    fn normalization_is_idempotent(s in "[ab]{0,8}") {
        let rs = RuleSet::parse(Alphabet::chars("ab"), &[("ba", "ab"), ("aaa", ""), ("bb", "")], Kind::Monoid).unwrap();
        let w = rs.word(&s).unwrap();
        let nf = rs.normalize(&w, 10_000).unwrap();
        prop_assert!(rs.is_irreducible(&nf));
        prop_assert_eq!(rs.normalize(&nf, 10).unwrap(), nf.clone());
        // the monoid is C3 × C2: letter counts mod 3 and mod 2 are invariants
        let count = |w: &Word, g: usize| w.0.iter().filter(|&&x| x == g).count();
        prop_assert_eq!(count(&w, 0) % 3, count(&nf, 0));
        prop_assert_eq!(count(&w, 1) % 2, count(&nf, 1));
    }

    #[test]
    fn words_render_and_parse_back(s in "[xy]{0,10}") {
        let a = Alphabet::chars("xy");
        let w = a.parse(&s).unwrap();
        prop_assert_eq!(a.parse(&a.render(&w)).unwrap(), w);
    }
}

#[test]
fn seeded_random_relations_are_reproducible() {
    let gen = |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..20).map(|_| AbstractRel::random(5, 0.2, &mut rng)).collect::<Vec<_>>()
    };
    assert_eq!(gen(3), gen(3));
    assert_ne!(gen(3), gen(4));
}
