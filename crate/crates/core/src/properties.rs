//! Exhaustive checkers for multiplication properties of finite magmas.
//!
//! Every checker walks its quantified tuples in lexicographic order, so the
//! first violation found is the lexicographically least witness.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::magma::{ElementId, Magma};
use crate::report::{Report, Verdict};

pub type PropertyReport = Report<Vec<ElementId>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    RightAssoc,
    LeftAssoc,
    Assoc,
    Categorical,
    Full,
    LeftCanc,
    RightCanc,
    StronglyLeftCanc,
    StronglyRightCanc,
    CommonRightMultiples,
    LeastCommonLeftMultiples,
    HasRightIdentities,
    HasLeftIdentities,
    HasFullIdentities,
    HasGlobalIdentity,
    LeftInversesWrtRightIdentities,
    DigraphRule,
}

impl Property {
    pub const ALL: [Property; 17] = [
        Property::RightAssoc,
        Property::LeftAssoc,
        Property::Assoc,
        Property::Categorical,
        Property::Full,
        Property::LeftCanc,
        Property::RightCanc,
        Property::StronglyLeftCanc,
        Property::StronglyRightCanc,
        Property::CommonRightMultiples,
        Property::LeastCommonLeftMultiples,
        Property::HasRightIdentities,
        Property::HasLeftIdentities,
        Property::HasFullIdentities,
        Property::HasGlobalIdentity,
        Property::LeftInversesWrtRightIdentities,
        Property::DigraphRule,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Property::RightAssoc => "right_assoc",
            Property::LeftAssoc => "left_assoc",
            Property::Assoc => "assoc",
            Property::Categorical => "categorical",
            Property::Full => "full",
            Property::LeftCanc => "left_canc",
            Property::RightCanc => "right_canc",
            Property::StronglyLeftCanc => "strongly_left_canc",
            Property::StronglyRightCanc => "strongly_right_canc",
            Property::CommonRightMultiples => "common_right_multiples",
            Property::LeastCommonLeftMultiples => "least_common_left_multiples",
            Property::HasRightIdentities => "has_right_identities",
            Property::HasLeftIdentities => "has_left_identities",
            Property::HasFullIdentities => "has_full_identities",
            Property::HasGlobalIdentity => "has_global_identity",
            Property::LeftInversesWrtRightIdentities => "left_inverses_wrt_right_identities",
            Property::DigraphRule => "digraph_rule",
        }
    }

    /// Properties whose usual statements presuppose a semigroup.
    fn assumes_semigroup(self) -> bool {
        matches!(
            self,
            Property::CommonRightMultiples | Property::LeastCommonLeftMultiples
        )
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .iter()
            .copied()
            .find(|p| p.tag() == s)
            .ok_or_else(|| format!("unknown property {s:?}"))
    }
}

fn ids(v: &[ElementId]) -> Vec<ElementId> {
    v.to_vec()
}

/// `a` is a right identity for `x`: `xDa` and `xa = x`.
pub fn is_right_identity_for(m: &Magma, x: ElementId, a: ElementId) -> bool {
    m.mul(x, a) == Some(x)
}

pub fn is_left_identity_for(m: &Magma, x: ElementId, a: ElementId) -> bool {
    m.mul(a, x) == Some(x)
}

/// Right identity for every `x` with `xDa`, and at least one such `x` exists.
pub fn is_right_identity(m: &Magma, a: ElementId) -> bool {
    let mut any = false;
    for x in m.elements() {
        if let Some(c) = m.mul(x, a) {
            if c != x {
                return false;
            }
            any = true;
        }
    }
    any
}

pub fn is_left_identity(m: &Magma, a: ElementId) -> bool {
    let mut any = false;
    for x in m.elements() {
        if let Some(c) = m.mul(a, x) {
            if c != x {
                return false;
            }
            any = true;
        }
    }
    any
}

pub fn is_full_identity(m: &Magma, a: ElementId) -> bool {
    is_right_identity(m, a) && is_left_identity(m, a)
}

pub fn is_global_identity(m: &Magma, e: ElementId) -> bool {
    m.elements()
        .all(|a| m.mul(e, a) == Some(a) && m.mul(a, e) == Some(a))
}

pub fn global_identity(m: &Magma) -> Option<ElementId> {
    m.elements().find(|&e| is_global_identity(m, e))
}

pub fn is_unit(m: &Magma, a: ElementId) -> bool {
    inverse(m, a).is_some()
}

/// Some `b` with `ab` and `ba` both global identities.
pub fn inverse(m: &Magma, a: ElementId) -> Option<ElementId> {
    let is_global = |c: Option<ElementId>| c.is_some_and(|c| is_global_identity(m, c));
    m.elements()
        .find(|&b| is_global(m.mul(a, b)) && is_global(m.mul(b, a)))
}

pub fn units_of(m: &Magma) -> Vec<ElementId> {
    if global_identity(m).is_none() {
        return Vec::new();
    }
    m.elements().filter(|&a| is_unit(m, a)).collect()
}

pub fn is_semigroup(m: &Magma) -> bool {
    check_property(m, Property::Full).passed() && check_property(m, Property::Assoc).passed()
}

pub fn is_monoid(m: &Magma) -> bool {
    is_semigroup(m) && global_identity(m).is_some()
}

pub fn is_group(m: &Magma) -> bool {
    is_monoid(m) && m.elements().all(|a| is_unit(m, a))
}

/// Identity flags of one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFlags {
    pub element: ElementId,
    /// Elements `x` for which this element is a right identity.
    pub right_identity_for: Vec<ElementId>,
    pub left_identity_for: Vec<ElementId>,
    pub right_identity: bool,
    pub left_identity: bool,
    pub full_identity: bool,
    pub global_identity: bool,
}

pub fn identities_of(m: &Magma) -> Vec<IdentityFlags> {
    m.elements()
        .map(|a| IdentityFlags {
            element: a,
            right_identity_for: m.elements().filter(|&x| is_right_identity_for(m, x, a)).collect(),
            left_identity_for: m.elements().filter(|&x| is_left_identity_for(m, x, a)).collect(),
            right_identity: is_right_identity(m, a),
            left_identity: is_left_identity(m, a),
            full_identity: is_full_identity(m, a),
            global_identity: is_global_identity(m, a),
        })
        .collect()
}

/// Least common left multiple `multiple = left·a = right·b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lclm {
    pub multiple: ElementId,
    pub left: ElementId,
    pub right: ElementId,
}

/// Elements `l` with `pa = l = qb` for some `p`, `q`, ascending.
pub fn common_left_multiples(m: &Magma, a: ElementId, b: ElementId) -> Vec<ElementId> {
    let of_a: Vec<bool> = left_multiples(m, a);
    let of_b: Vec<bool> = left_multiples(m, b);
    m.elements().filter(|l| of_a[l.0] && of_b[l.0]).collect()
}

fn left_multiples(m: &Magma, a: ElementId) -> Vec<bool> {
    let mut out = vec![false; m.size()];
    for p in m.elements() {
        if let Some(c) = m.mul(p, a) {
            out[c.0] = true;
        }
    }
    out
}

/// `l` left-divides `target`: some `k` has `kl = target`.
pub fn left_divides(m: &Magma, l: ElementId, target: ElementId) -> Option<ElementId> {
    m.elements().find(|&k| m.mul(k, l) == Some(target))
}

/// The lclm of `(a, b)` of least index with cofactors of least index; `None`
/// when no common left multiple left-divides all others.
pub fn lclm(m: &Magma, a: ElementId, b: ElementId) -> Option<Lclm> {
    let clms = common_left_multiples(m, a, b);
    let l = clms
        .iter()
        .copied()
        .find(|&l| clms.iter().all(|&t| left_divides(m, l, t).is_some()))?;
    let left = m.elements().find(|&p| m.mul(p, a) == Some(l))?;
    let right = m.elements().find(|&q| m.mul(q, b) == Some(l))?;
    Some(Lclm {
        multiple: l,
        left,
        right,
    })
}

/// All valid lclms of `(a, b)`, ascending.
pub fn all_lclms(m: &Magma, a: ElementId, b: ElementId) -> Vec<ElementId> {
    let clms = common_left_multiples(m, a, b);
    clms.iter()
        .copied()
        .filter(|&l| clms.iter().all(|&t| left_divides(m, l, t).is_some()))
        .collect()
}

pub fn check_property(m: &Magma, prop: Property) -> PropertyReport {
    let report = match prop {
        Property::RightAssoc => right_assoc(m),
        Property::LeftAssoc => left_assoc(m),
        Property::Assoc => match right_assoc(m).witness {
            Some(w) => Report::fail("", w).with_note("right associativity fails"),
            None => match left_assoc(m).witness {
                Some(w) => Report::fail("", w).with_note("left associativity fails"),
                None => Report::pass(""),
            },
        },
        Property::Categorical => categorical(m),
        Property::Full => first_fail(pairs(m).filter(|&(a, b)| !m.defined(a, b)).map(|(a, b)| ids(&[a, b]))),
        Property::LeftCanc => left_canc(m),
        Property::RightCanc => right_canc(m),
        Property::StronglyLeftCanc => match left_canc(m).witness {
            Some(w) => Report::fail("", w).with_note("not left cancellative"),
            None => first_fail(
                pairs(m)
                    .filter(|&(a, b)| m.mul(a, b) == Some(a) && !is_global_identity(m, b))
                    .map(|(a, b)| ids(&[a, b])),
            ),
        },
        Property::StronglyRightCanc => match right_canc(m).witness {
            Some(w) => Report::fail("", w).with_note("not right cancellative"),
            None => first_fail(
                pairs(m)
                    .filter(|&(a, b)| m.mul(a, b) == Some(b) && !is_global_identity(m, a))
                    .map(|(a, b)| ids(&[a, b])),
            ),
        }
        .with_note("mirrored definition: ab = b forces a to be a global identity"),
        Property::CommonRightMultiples => first_fail(pairs(m).filter(|&(a, b)| {
            !m.elements().any(|p| {
                m.elements()
                    .any(|q| m.mul(a, p).is_some() && m.mul(a, p) == m.mul(b, q))
            })
        }).map(|(a, b)| ids(&[a, b]))),
        Property::LeastCommonLeftMultiples => first_fail(pairs(m).filter(|&(a, b)| {
            !common_left_multiples(m, a, b).is_empty() && lclm(m, a, b).is_none()
        }).map(|(a, b)| ids(&[a, b]))),
        Property::HasRightIdentities => first_fail(m.elements().filter(|&x| {
            !m.elements().any(|a| is_right_identity_for(m, x, a) && is_right_identity(m, a))
        }).map(|x| ids(&[x]))),
        Property::HasLeftIdentities => first_fail(m.elements().filter(|&x| {
            !m.elements().any(|a| is_left_identity_for(m, x, a) && is_left_identity(m, a))
        }).map(|x| ids(&[x]))),
        Property::HasFullIdentities => {
            match check_property(m, Property::HasRightIdentities).witness {
                Some(w) => Report::fail("", w).with_note("missing right identity"),
                None => match check_property(m, Property::HasLeftIdentities).witness {
                    Some(w) => Report::fail("", w).with_note("missing left identity"),
                    None => Report::pass(""),
                },
            }
        }
        Property::HasGlobalIdentity => global_identity_report(m),
        Property::LeftInversesWrtRightIdentities => first_fail(pairs(m).filter(|&(a, b)| {
            is_right_identity(m, b) && m.defined(a, b) && !m.elements().any(|x| m.mul(x, a) == Some(b))
        }).map(|(a, b)| ids(&[a, b]))),
        Property::DigraphRule => digraph_rule(m),
    };
    let mut report = Report {
        property: prop.tag().to_string(),
        ..report
    };
    if prop.assumes_semigroup() && report.verdict != Verdict::NotApplicable && !is_semigroup(m) {
        report
            .notes
            .push("carrier is not a semigroup; the usual guarantees for this property do not apply".into());
    }
    report
}

fn pairs(m: &Magma) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
    m.elements().flat_map(move |a| m.elements().map(move |b| (a, b)))
}

fn triples(m: &Magma) -> impl Iterator<Item = (ElementId, ElementId, ElementId)> + '_ {
    pairs(m).flat_map(move |(a, b)| m.elements().map(move |c| (a, b, c)))
}

fn first_fail(mut it: impl Iterator<Item = Vec<ElementId>>) -> PropertyReport {
    match it.next() {
        Some(w) => Report::fail("", w),
        None => Report::pass(""),
    }
}

fn right_assoc(m: &Magma) -> PropertyReport {
    first_fail(
        triples(m)
            .filter(|&(a, b, c)| {
                let Some(ab) = m.mul(a, b) else { return false };
                let Some(ab_c) = m.mul(ab, c) else { return false };
                match m.mul(b, c).and_then(|bc| m.mul(a, bc)) {
                    Some(a_bc) => a_bc != ab_c,
                    None => true,
                }
            })
            .map(|(a, b, c)| ids(&[a, b, c])),
    )
}

fn left_assoc(m: &Magma) -> PropertyReport {
    first_fail(
        triples(m)
            .filter(|&(a, b, c)| {
                let Some(bc) = m.mul(b, c) else { return false };
                let Some(a_bc) = m.mul(a, bc) else { return false };
                match m.mul(a, b).and_then(|ab| m.mul(ab, c)) {
                    Some(ab_c) => ab_c != a_bc,
                    None => true,
                }
            })
            .map(|(a, b, c)| ids(&[a, b, c])),
    )
}

fn categorical(m: &Magma) -> PropertyReport {
    if let Some(w) = right_assoc(m).witness {
        return Report::fail("", w).with_note("right associativity fails");
    }
    if let Some(w) = left_assoc(m).witness {
        return Report::fail("", w).with_note("left associativity fails");
    }
    first_fail(
        triples(m)
            .filter(|&(a, b, c)| {
                m.defined(a, b)
                    && m.defined(b, c)
                    && !(m.mul(b, c).is_some_and(|bc| m.defined(a, bc))
                        && m.mul(a, b).is_some_and(|ab| m.defined(ab, c)))
            })
            .map(|(a, b, c)| ids(&[a, b, c])),
    )
}

fn left_canc(m: &Magma) -> PropertyReport {
    first_fail(
        triples(m)
            .filter(|&(a, b, c)| b != c && m.mul(a, b).is_some() && m.mul(a, b) == m.mul(a, c))
            .map(|(a, b, c)| ids(&[a, b, c])),
    )
}

fn right_canc(m: &Magma) -> PropertyReport {
    first_fail(
        triples(m)
            .filter(|&(a, b, c)| a != b && m.mul(a, c).is_some() && m.mul(a, c) == m.mul(b, c))
            .map(|(a, b, c)| ids(&[a, b, c])),
    )
}

fn global_identity_report(m: &Magma) -> PropertyReport {
    if global_identity(m).is_some() {
        return Report::pass("");
    }
    // One entry per candidate: the first element it fails to fix.
    let witness = m
        .elements()
        .map(|e| {
            m.elements()
                .find(|&a| m.mul(e, a) != Some(a) || m.mul(a, e) != Some(a))
                .expect("not a global identity")
        })
        .collect();
    Report::fail("", witness).with_note("witness lists, per candidate element, the first element it fails to fix")
}

fn digraph_rule(m: &Magma) -> PropertyReport {
    let n = m.elements();
    first_fail(
        n.clone()
            .flat_map(|a| n.clone().map(move |b| (a, b)))
            .flat_map(|(a, b)| n.clone().map(move |c| (a, b, c)))
            .flat_map(|(a, b, c)| n.clone().map(move |d| (a, b, c, d)))
            .filter(|&(a, b, c, d)| m.defined(a, b) && m.defined(c, b) && m.defined(c, d) && !m.defined(a, d))
            .map(|(a, b, c, d)| ids(&[a, b, c, d])),
    )
}
