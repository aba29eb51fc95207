//! Seeded single-entry corruptions of finite action tables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::actions::FiniteActions;
use crate::axioms::{check_axioms, witness_violates, Axiom, AxiomWitness, ProductDomain};
use crate::domain::Fuel;
use crate::magma::ElementId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Dot,
    Exp,
}

/// Which entry changed: `field(alpha, u)` went from `old` to `new`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corruption {
    pub alpha: ElementId,
    pub u: ElementId,
    pub field: Field,
    pub old: ElementId,
    pub new: ElementId,
}

/// Replaces one `dot` or `exp` value of `H` by a different element.
/// `None` when the table is empty or the target set has one element.
pub fn corrupt_once(ap: &FiniteActions, rng: &mut impl Rng) -> Option<(FiniteActions, Corruption)> {
    let table = ap.table()?;
    if table.is_empty() {
        return None;
    }
    let keys: Vec<_> = table.keys().copied().collect();
    for _ in 0..64 {
        let (alpha, u) = keys[rng.random_range(0..keys.len())];
        let (d, e) = table[&(alpha, u)];
        let field = if rng.random_bool(0.5) { Field::Dot } else { Field::Exp };
        let (old, size) = match field {
            Field::Dot => (d, ap.u.size()),
            Field::Exp => (e, ap.a.size()),
        };
        if size < 2 {
            continue;
        }
        let mut new = ElementId(rng.random_range(0..size - 1));
        if new.0 >= old.0 {
            new.0 += 1;
        }
        let value = match field {
            Field::Dot => (new, e),
            Field::Exp => (d, new),
        };
        let mut out = ap.clone();
        out.set_entry(alpha, u, Some(value), &Fuel::default());
        return Some((out, Corruption { alpha, u, field, old, new }));
    }
    None
}

/// One corrupted table and what the axiom checks made of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzCase {
    pub corruption: Corruption,
    pub failing: Vec<(String, AxiomWitness<ElementId, ElementId>)>,
    /// Every failing witness re-evaluates as a violation.
    pub rechecked: bool,
}

impl FuzzCase {
    pub fn detected(&self) -> bool {
        !self.failing.is_empty() && self.rechecked
    }
}

/// `n` independent corruptions from `seed`, each checked against `axioms`.
pub fn fuzz_axioms(
    ap: &FiniteActions,
    e: &ProductDomain<ElementId, ElementId>,
    axioms: &[Axiom],
    n: usize,
    seed: u64,
) -> Vec<FuzzCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fuel = Fuel::default();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let Some((bad, corruption)) = corrupt_once(ap, &mut rng) else { break };
        let mut failing = Vec::new();
        let mut rechecked = true;
        for (ax, r) in axioms.iter().zip(check_axioms(&bad, e, axioms, &fuel)) {
            if let (true, Some(w)) = (r.failed(), r.witness) {
                rechecked &= witness_violates(&bad, e, *ax, &w, &fuel) == Ok(true);
                failing.push((ax.tag().to_string(), w));
            }
        }
        out.push(FuzzCase {
            corruption,
            failing,
            rechecked,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stock::{stock_example, StockExample};

    fn s4() -> FiniteActions {
        match stock_example("s4-s3-c4").unwrap() {
            StockExample::Factorization(f) => f.derive().unwrap().actions,
            _ => unreachable!(),
        }
    }

    #[test]
    fn corruption_changes_exactly_one_value() {
        let ap = s4();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (bad, c) = corrupt_once(&ap, &mut rng).unwrap();
        let (t0, t1) = (ap.table().unwrap(), bad.table().unwrap());
        let diffs: Vec<_> = t0.iter().filter(|(k, v)| t1.get(k) != Some(v)).collect();
        assert_eq!(diffs.len(), 1);
        assert_eq!(*diffs[0].0, (c.alpha, c.u));
        assert_ne!(c.old, c.new);
    }

    #[test]
    fn fuzzing_is_reproducible() {
        let ap = s4();
        let mut axes = Axiom::P2.to_vec();
        axes.extend(Axiom::P7);
        let a = fuzz_axioms(&ap, &ProductDomain::Full, &axes, 5, 3);
        let b = fuzz_axioms(&ap, &ProductDomain::Full, &axes, 5, 3);
        assert_eq!(a, b);
        assert!(a.iter().all(FuzzCase::detected));
    }
}
