use super::{Alphabet, Kind, RewriteError, Rule, RuleSet, Word};
use crate::magma::{ElementId, Magma};
use crate::properties::{self, check_property, Property};
use crate::report::Report;

/// The multiplication-table presentation of a finite semigroup, monoid or group.
///
/// Monoid and group kinds drop the identity from the alphabet and write it
/// as the empty word; the group kind adds a formal inverse `[x^-1]` per
/// generator, rewritten to the element's inverse. Cancellation `x x^-1 → φ`
/// then follows, and the rules stay complete.
pub fn table_presentation(m: &Magma, kind: Kind) -> Result<RuleSet, RewriteError> {
    for p in [Property::Full, Property::Assoc] {
        let r = check_property(m, p);
        if !r.passed() {
            return Err(RewriteError::KindCheckFailed { kind, report: Box::new(r) });
        }
    }
    let identity = match kind {
        Kind::Semigroup => None,
        Kind::Monoid | Kind::Group => {
            let r = check_property(m, Property::HasGlobalIdentity);
            if !r.passed() {
                return Err(RewriteError::KindCheckFailed { kind, report: Box::new(r) });
            }
            properties::global_identity(m)
        }
    };
    if kind == Kind::Group {
        if let Some(a) = m.elements().find(|&a| !properties::is_unit(m, a)) {
            return Err(RewriteError::KindCheckFailed {
                kind,
                report: Box::new(Report::fail("group", vec![a]).with_note("element has no inverse")),
            });
        }
    }
    let gens: Vec<ElementId> = m.elements().filter(|&a| Some(a) != identity).collect();
    let letter = |a: ElementId| -> Word {
        if Some(a) == identity {
            Word::empty()
        } else {
            Word::letter(gens.iter().position(|&g| g == a).unwrap())
        }
    };
    let mut names: Vec<String> = gens.iter().map(|&g| m.name(g).to_string()).collect();
    let mut rules = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let c = m.mul(a, b).expect("full");
            rules.push(Rule::new(letter(a).concat(&letter(b)), letter(c)));
        }
    }
    if kind == Kind::Group {
        let k = gens.len();
        for g in &gens {
            names.push(format!("{}^-1", m.name(*g)));
        }
        for (i, &g) in gens.iter().enumerate() {
            let inv = properties::inverse(m, g).expect("checked unit");
            rules.push(Rule::new(Word::letter(k + i), letter(inv)));
        }
    }
    // element names with whitespace or brackets lose them; if that collides, fall back to indices
    let cleaned: Vec<String> = names
        .iter()
        .map(|n| n.chars().filter(|c| !c.is_whitespace() && !matches!(c, '[' | ']')).collect())
        .collect();
    let alphabet = Alphabet::new(cleaned).or_else(|_| {
        let k = gens.len();
        let fallback = (0..names.len())
            .map(|i| if i < k { format!("g{i}") } else { format!("g{}^-1", i - k) })
            .collect();
        Alphabet::new(fallback)
    })?;
    RuleSet::new(alphabet, rules, kind)
}
