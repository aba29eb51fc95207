use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use super::RewriteError;

/// A word over an alphabet, as generator indices. The empty word is `φ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(g: usize) -> Word {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Length first, then lexicographic by generator index.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Positions where `pat` occurs as a factor.
    pub fn occurrences(&self, pat: &Word) -> Vec<usize> {
        if pat.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pat.len())
            .filter(|&i| self.0[i..i + pat.len()] == pat.0[..])
            .collect()
    }

    /// Replaces the factor of length `len` at `pos` by `by`.
    pub fn splice(&self, pos: usize, len: usize, by: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + by.len() - len.min(self.len()));
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&by.0);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

/// Generator names; single-character names print bare, others bracketed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Result<Alphabet, RewriteError> {
        let mut seen = BTreeSet::new();
        for n in &names {
            if n.is_empty() || n.contains(['[', ']']) || n.chars().any(char::is_whitespace) {
                return Err(RewriteError::MalformedWord(n.clone()));
            }
            if !seen.insert(n.as_str()) {
                return Err(RewriteError::DuplicateGenerator(n.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    /// Alphabet from single-character names in a string, e.g. `"xy"`.
    pub fn chars(s: &str) -> Alphabet {
        Alphabet::new(s.chars().map(String::from).collect()).expect("distinct letters")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parses a word; `[name]` brackets multi-character names, whitespace is
    /// ignored, and `φ` alone denotes the empty word unless it is a generator.
    pub fn parse(&self, s: &str) -> Result<Word, RewriteError> {
        if s == "φ" && self.index("φ").is_none() {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        let mut chars = s.chars();
        while let Some(c) = chars.next() {
            if c.is_whitespace() {
                continue;
            }
            let name = if c == '[' {
                let mut name = String::new();
                loop {
                    match chars.next() {
                        Some(']') => break,
                        Some(d) => name.push(d),
                        None => return Err(RewriteError::MalformedWord(s.to_string())),
                    }
                }
                name
            } else if c == ']' {
                return Err(RewriteError::MalformedWord(s.to_string()));
            } else {
                c.to_string()
            };
            let g = self
                .index(&name)
                .ok_or(RewriteError::UnknownGenerator(name))?;
            out.push(g);
        }
        Ok(Word(out))
    }

    /// Serialized form; the empty word renders as the empty string.
    pub fn render(&self, w: &Word) -> String {
        let mut s = String::new();
        for &g in &w.0 {
            let n = &self.names[g];
            if n.chars().count() == 1 {
                s.push_str(n);
            } else {
                s.push('[');
                s.push_str(n);
                s.push(']');
            }
        }
        s
    }

    /// Human form: like [`Alphabet::render`] but the empty word shows as `φ`.
    pub fn display(&self, w: &Word) -> String {
        if w.is_empty() {
            "φ".to_string()
        } else {
            self.render(w)
        }
    }

    /// Concatenation of two alphabets; fails on a shared name.
    pub fn disjoint_union(&self, other: &Alphabet) -> Result<Alphabet, String> {
        if let Some(n) = self.names.iter().find(|n| other.index(n).is_some()) {
            return Err(n.clone());
        }
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        Ok(Alphabet { names })
    }

    /// All words of length at most `max_len`, in length-lex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            if self.names.is_empty() {
                break;
            }
            let mut next = Vec::with_capacity(layer.len() * self.names.len());
            for w in &layer {
                for g in 0..self.names.len() {
                    let mut v = w.0.clone();
                    v.push(g);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let a = Alphabet::new(vec!["x".into(), "y".into(), "a^-1".into()]).unwrap();
        let w = a.parse("xy[a^-1]x").unwrap();
        assert_eq!(w, Word(vec![0, 1, 2, 0]));
        assert_eq!(a.render(&w), "xy[a^-1]x");
        assert_eq!(a.parse("").unwrap(), Word::empty());
        assert_eq!(a.parse("φ").unwrap(), Word::empty());
        assert_eq!(a.display(&Word::empty()), "φ");
        assert!(matches!(a.parse("xz"), Err(RewriteError::UnknownGenerator(_))));
        assert!(matches!(a.parse("[x"), Err(RewriteError::MalformedWord(_))));
    }

    #[test]
    fn word_operations() {
        let w = Word(vec![1, 0, 1, 0]);
        assert_eq!(w.occurrences(&Word(vec![1, 0])), vec![0, 2]);
        assert_eq!(w.splice(1, 2, &Word(vec![2])), Word(vec![1, 2, 0]));
        assert!(Word(vec![1, 0]).is_suffix_of(&w));
        assert_eq!(Word(vec![1]).shortlex_cmp(&Word(vec![0, 0])), Ordering::Less);
    }

    #[test]
    fn enumeration_counts() {
        let a = Alphabet::chars("xy");
        assert_eq!(a.words_up_to(3).len(), 1 + 2 + 4 + 8);
        assert_eq!(Alphabet::chars("").words_up_to(3).len(), 1);
    }

    #[test]
    fn duplicate_generators_rejected() {
        assert!(Alphabet::new(vec!["x".into(), "x".into()]).is_err());
    }
}
