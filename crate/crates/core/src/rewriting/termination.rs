use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use super::{RewriteError, RuleSet, Word};
use crate::report::Report;

/// A reduction order that every rule must strictly decrease.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TerminationCert {
    /// `|rhs| < |lhs|`.
    LengthReducing,
    /// Length, then lexicographic under `rank` (rank per generator index).
    LengthLex { rank: Vec<usize> },
    /// Rules `yx → x'w` with `y` outside `x_letters`, `x, x'` in it and `w` free of it.
    CwMeasure { x_letters: Vec<usize> },
    /// Recursive path order on words read as unary terms; `rank` is the precedence.
    RecursivePath { rank: Vec<usize> },
}

impl TerminationCert {
    pub fn name(&self) -> &'static str {
        match self {
            TerminationCert::LengthReducing => "length_reducing",
            TerminationCert::LengthLex { .. } => "length_lex",
            TerminationCert::CwMeasure { .. } => "cw_measure",
            TerminationCert::RecursivePath { .. } => "recursive_path",
        }
    }

    /// Identity ranking for an alphabet of `n` letters.
    pub fn natural_rank(n: usize) -> Vec<usize> {
        (0..n).collect()
    }
}

fn lex_by_rank(a: &Word, b: &Word, rank: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.0.iter().zip(&b.0) {
            match rank[*x].cmp(&rank[*y]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// `s > t` in the recursive path order on unary terms `a1(a2(…(an(x))))`.
fn rpo_greater(s: &[usize], t: &[usize], rank: &[usize]) -> bool {
    let Some((&f, s_rest)) = s.split_first() else {
        return false;
    };
    let Some((&g, t_rest)) = t.split_first() else {
        // every nonempty word contains the bottom variable
        return true;
    };
    if s_rest == t || rpo_greater(s_rest, t, rank) {
        return true;
    }
    match rank[f].cmp(&rank[g]) {
        Ordering::Greater => rpo_greater(s, t_rest, rank),
        Ordering::Equal => rpo_greater(s_rest, t_rest, rank),
        Ordering::Less => false,
    }
}

/// Pass iff every rule decreases under the certificate; the witness is the
/// first non-decreasing rule `[lhs, rhs]`. A rule set that does not fit the
/// `cw_measure` shape is an error rather than a failure.
pub fn termination_certificate(rs: &RuleSet, cert: &TerminationCert) -> Result<Report<Vec<Word>>, RewriteError> {
    let n = rs.alphabet().len();
    let tag = cert.name();
    let check_rank = |rank: &Vec<usize>| {
        if rank.len() != n {
            Err(RewriteError::MalformedWord(format!(
                "rank has {} entries for {} generators",
                rank.len(),
                n
            )))
        } else {
            Ok(())
        }
    };
    for (i, r) in rs.rules().iter().enumerate() {
        let decreases = match cert {
            TerminationCert::LengthReducing => r.rhs.len() < r.lhs.len(),
            TerminationCert::LengthLex { rank } => {
                check_rank(rank)?;
                lex_by_rank(&r.rhs, &r.lhs, rank) == Ordering::Less
            }
            TerminationCert::CwMeasure { x_letters } => {
                if !cw_shape(&r.lhs, &r.rhs, x_letters) {
                    return Err(RewriteError::ShapeMismatch(i));
                }
                true
            }
            TerminationCert::RecursivePath { rank } => {
                check_rank(rank)?;
                rpo_greater(&r.lhs.0, &r.rhs.0, rank)
            }
        };
        if !decreases {
            return Ok(Report::fail(tag, vec![r.lhs.clone(), r.rhs.clone()]));
        }
    }
    Ok(Report::pass(tag))
}

fn cw_shape(lhs: &Word, rhs: &Word, x_letters: &[usize]) -> bool {
    let is_x = |g: &usize| x_letters.contains(g);
    lhs.len() == 2
        && !is_x(&lhs.0[0])
        && is_x(&lhs.0[1])
        && !rhs.is_empty()
        && is_x(&rhs.0[0])
        && !rhs.0[1..].iter().any(is_x)
}

/// Per X-letter (left to right), the number of Y-letters to its left.
pub fn cw_measure(w: &Word, x_letters: &[usize]) -> Vec<usize> {
    let mut ys = 0;
    let mut out = Vec::new();
    for g in &w.0 {
        if x_letters.contains(g) {
            out.push(ys);
        } else {
            ys += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::{Alphabet, Kind};

    fn rs(alpha: &str, rules: &[(&str, &str)]) -> RuleSet {
        RuleSet::parse(Alphabet::chars(alpha), rules, Kind::Monoid).unwrap()
    }

    #[test]
    fn certificate_examples() {
        let r = rs("xy", &[("yx", "xyy")]);
        let cw = TerminationCert::CwMeasure { x_letters: vec![0] };
        assert!(termination_certificate(&r, &cw).unwrap().passed());

        let r = rs("ab", &[("ba", "ab")]);
        let ll = TerminationCert::LengthLex { rank: vec![0, 1] };
        assert!(termination_certificate(&r, &ll).unwrap().passed());

        let r = rs("a", &[("a", "aa")]);
        let rep = termination_certificate(&r, &TerminationCert::LengthReducing).unwrap();
        assert!(rep.failed());
        assert_eq!(rep.witness.unwrap()[1], Word(vec![0, 0]));
    }

    #[test]
    fn cw_shape_mismatch() {
        let r = rs("xy", &[("xy", "yx")]);
        let cw = TerminationCert::CwMeasure { x_letters: vec![0] };
        assert_eq!(termination_certificate(&r, &cw), Err(RewriteError::ShapeMismatch(0)));
    }

    #[test]
    fn recursive_path_orients_twisted_commutation() {
        let r = rs("rf", &[("rrr", ""), ("ff", ""), ("fr", "rrf")]);
        let rpo = TerminationCert::RecursivePath { rank: vec![0, 1] };
        assert!(termination_certificate(&r, &rpo).unwrap().passed());
        let wrong = TerminationCert::RecursivePath { rank: vec![1, 0] };
        assert!(termination_certificate(&r, &wrong).unwrap().failed());
        assert!(termination_certificate(&r, &TerminationCert::LengthReducing).unwrap().failed());
    }

    #[test]
    fn rpo_basics() {
        let rank = [0, 1];
        assert!(rpo_greater(&[0], &[], &rank));
        assert!(!rpo_greater(&[], &[0], &rank));
        assert!(rpo_greater(&[1, 0], &[0, 0, 0, 1], &rank));
        assert!(!rpo_greater(&[0, 1], &[0, 1], &rank));
    }

    #[test]
    fn measure_counts_y_letters() {
        let w = Word(vec![1, 0, 1, 1, 0]);
        assert_eq!(cw_measure(&w, &[0]), vec![1, 3]);
    }
}
