use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

use super::{Alphabet, RewriteError, Word};

/// What the rule set presents; governs which rules are admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Semigroup,
    Monoid,
    Group,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Semigroup => "semigroup",
            Kind::Monoid => "monoid",
            Kind::Group => "group",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "semigroup" => Ok(Kind::Semigroup),
            "monoid" => Ok(Kind::Monoid),
            "group" => Ok(Kind::Group),
            _ => Err(format!("unknown kind {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word) -> Rule {
        Rule { lhs, rhs }
    }
}

/// One application of a rule: rule `rule` at position `pos`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub pos: usize,
    pub rule: usize,
}

/// An ordered list of rewriting rules over an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    kind: Kind,
}

impl RuleSet {
    /// Left-hand sides must be nonempty; semigroup rules also need a nonempty right side.
    pub fn new(alphabet: Alphabet, rules: Vec<Rule>, kind: Kind) -> Result<RuleSet, RewriteError> {
        for (index, r) in rules.iter().enumerate() {
            if r.lhs.is_empty() {
                return Err(RewriteError::BadRule {
                    index,
                    kind,
                    reason: "empty left-hand side",
                });
            }
            if kind == Kind::Semigroup && r.rhs.is_empty() {
                return Err(RewriteError::BadRule {
                    index,
                    kind,
                    reason: "empty right-hand side",
                });
            }
            if r.lhs.0.iter().chain(&r.rhs.0).any(|&g| g >= alphabet.len()) {
                return Err(RewriteError::BadRule {
                    index,
                    kind,
                    reason: "generator out of range",
                });
            }
        }
        Ok(RuleSet {
            alphabet,
            rules,
            kind,
        })
    }

    /// Parses rules given as pairs of word strings.
    pub fn parse(alphabet: Alphabet, rules: &[(&str, &str)], kind: Kind) -> Result<RuleSet, RewriteError> {
        let parsed = rules
            .iter()
            .map(|(l, r)| Ok(Rule::new(alphabet.parse(l)?, alphabet.parse(r)?)))
            .collect::<Result<Vec<_>, RewriteError>>()?;
        RuleSet::new(alphabet, parsed, kind)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn word(&self, s: &str) -> Result<Word, RewriteError> {
        self.alphabet.parse(s)
    }

    pub fn render(&self, w: &Word) -> String {
        self.alphabet.render(w)
    }

    /// All `(pos, rule)` redexes, by position then declared rule order.
    pub fn redexes(&self, w: &Word) -> Vec<Step> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            for (rule, r) in self.rules.iter().enumerate() {
                if w.0[pos..].starts_with(&r.lhs.0) {
                    out.push(Step { pos, rule });
                }
            }
        }
        out
    }

    fn leftmost(&self, w: &Word) -> Option<Step> {
        for pos in 0..w.len() {
            for (rule, r) in self.rules.iter().enumerate() {
                if w.0[pos..].starts_with(&r.lhs.0) {
                    return Some(Step { pos, rule });
                }
            }
        }
        None
    }

    pub fn apply(&self, w: &Word, step: Step) -> Word {
        let r = &self.rules[step.rule];
        w.splice(step.pos, r.lhs.len(), &r.rhs)
    }

    /// Every word reachable by one rule application at one position.
    pub fn one_step(&self, w: &Word) -> BTreeSet<Word> {
        self.redexes(w).into_iter().map(|s| self.apply(w, s)).collect()
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.leftmost(w).is_none()
    }

    /// Rewrites the leftmost redex with the first matching rule until irreducible.
    pub fn normalize(&self, w: &Word, fuel: usize) -> Result<Word, RewriteError> {
        let mut cur = w.clone();
        for _ in 0..fuel {
            match self.leftmost(&cur) {
                None => return Ok(cur),
                Some(s) => cur = self.apply(&cur, s),
            }
        }
        if self.is_irreducible(&cur) {
            return Ok(cur);
        }
        Err(RewriteError::FuelExhausted {
            steps: fuel,
            last: self.alphabet.display(&cur),
        })
    }

    /// Like [`RuleSet::normalize`] but records each step and the word before it.
    pub fn normalize_trace(&self, w: &Word, fuel: usize) -> Result<Vec<(Word, Step)>, RewriteError> {
        let mut cur = w.clone();
        let mut trace = Vec::new();
        for _ in 0..fuel {
            match self.leftmost(&cur) {
                None => return Ok(trace),
                Some(s) => {
                    let next = self.apply(&cur, s);
                    trace.push((cur, s));
                    cur = next;
                }
            }
        }
        if self.is_irreducible(&cur) {
            return Ok(trace);
        }
        Err(RewriteError::FuelExhausted {
            steps: fuel,
            last: self.alphabet.display(&cur),
        })
    }

    /// Irreducible words of length at most `max_len`, length-lex order.
    pub fn irreducibles_up_to(&self, max_len: usize) -> Vec<Word> {
        // Extending only irreducible words suffices: a factor of an irreducible is irreducible.
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..self.alphabet.len() {
                    let mut v = w.0.clone();
                    v.push(g);
                    let cand = Word(v);
                    if self.is_irreducible(&cand) {
                        next.push(cand);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Same rules, symmetric closure, for congruence search.
    pub fn reversed_rules(&self) -> Vec<Rule> {
        self.rules
            .iter()
            .map(|r| Rule::new(r.rhs.clone(), r.lhs.clone()))
            .collect()
    }

    /// Renders rules as `lhs -> rhs` lines.
    pub fn describe(&self) -> String {
        self.rules
            .iter()
            .map(|r| {
                format!(
                    "{} -> {}",
                    self.alphabet.display(&r.lhs),
                    self.alphabet.display(&r.rhs)
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(alpha: &str, rules: &[(&str, &str)]) -> RuleSet {
        RuleSet::parse(Alphabet::chars(alpha), rules, Kind::Monoid).unwrap()
    }

    #[test]
    fn one_step_examples() {
        let r = rs("ab", &[("ba", "ab")]);
        let got: Vec<String> = r.one_step(&r.word("bab").unwrap()).iter().map(|w| r.render(w)).collect();
        assert_eq!(got, vec!["abb"]);

        let r = rs("xy", &[("yx", "xyy")]);
        let got: Vec<String> = r.one_step(&r.word("yxx").unwrap()).iter().map(|w| r.render(w)).collect();
        assert_eq!(got, vec!["xyyx"]);
        assert!(r.one_step(&Word::empty()).is_empty());
    }

    #[test]
    fn normalize_examples() {
        let r = rs("xy", &[("yx", "xyy")]);
        assert_eq!(r.render(&r.normalize(&r.word("yxx").unwrap(), 100).unwrap()), "xxyyyy");
        let r = rs("ab", &[("ba", "ab")]);
        assert_eq!(r.render(&r.normalize(&r.word("bab").unwrap(), 100).unwrap()), "abb");
        assert_eq!(r.normalize(&Word::empty(), 0).unwrap(), Word::empty());
    }

    #[test]
    fn fuel_exhaustion() {
        let r = rs("a", &[("a", "aa")]);
        assert!(matches!(
            r.normalize(&r.word("a").unwrap(), 10),
            Err(RewriteError::FuelExhausted { steps: 10, .. })
        ));
    }

    #[test]
    fn rule_admissibility() {
        let a = Alphabet::chars("ab");
        assert!(RuleSet::parse(a.clone(), &[("a", "")], Kind::Semigroup).is_err());
        assert!(RuleSet::parse(a.clone(), &[("a", "")], Kind::Monoid).is_ok());
        assert!(RuleSet::parse(a, &[("", "a")], Kind::Group).is_err());
    }

    #[test]
    fn irreducible_enumeration() {
        let r = rs("xy", &[("yx", "xy")]);
        let irr = r.irreducibles_up_to(3);
        // x^i y^j with i + j <= 3
        assert_eq!(irr.len(), 1 + 2 + 3 + 4);
    }
}
