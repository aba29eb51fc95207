//! The axiom catalog for mutual actions and one-parameter family properties.
//!
//! Each check enumerates tuples `(α₁, …; u₁, …)` with the `α`s varying
//! slowest, so the first violation is the lexicographically least one. Word
//! domains are explored up to fuel; a clean run there is `PassUpToFuel`, and
//! an existential that finds no witness inside the bound is `Inconclusive`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::actions::ActionPair;
use crate::domain::{is_left_identity_in, is_right_identity_in, Fuel, MulDomain};
use crate::report::{Exhausted, Report, Verdict};

/// A subset `E ⊆ U×A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductDomain<UE: Ord, AE: Ord> {
    Full,
    Pairs(BTreeSet<(UE, AE)>),
}

impl<UE: Ord + Clone, AE: Ord + Clone> ProductDomain<UE, AE> {
    pub fn contains(&self, u: &UE, alpha: &AE) -> bool {
        match self {
            ProductDomain::Full => true,
            ProductDomain::Pairs(s) => s.contains(&(u.clone(), alpha.clone())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    P1a,
    P1b,
    P1c,
    P2aFwd,
    P2aBwd,
    P2bFwd,
    P2bBwd,
    P2cFwd,
    P2cBwd,
    P2dFwd,
    P2dBwd,
    P3a,
    P3b,
    P4a,
    P4b,
    P5a,
    P5b,
    P6,
    P7a,
    P7b,
    P7c,
    P7d,
    P7e,
    P7f,
    P7g,
    P7h,
    P8,
}

impl Axiom {
    pub const ALL: [Axiom; 27] = [
        Axiom::P1a,
        Axiom::P1b,
        Axiom::P1c,
        Axiom::P2aFwd,
        Axiom::P2aBwd,
        Axiom::P2bFwd,
        Axiom::P2bBwd,
        Axiom::P2cFwd,
        Axiom::P2cBwd,
        Axiom::P2dFwd,
        Axiom::P2dBwd,
        Axiom::P3a,
        Axiom::P3b,
        Axiom::P4a,
        Axiom::P4b,
        Axiom::P5a,
        Axiom::P5b,
        Axiom::P6,
        Axiom::P7a,
        Axiom::P7b,
        Axiom::P7c,
        Axiom::P7d,
        Axiom::P7e,
        Axiom::P7f,
        Axiom::P7g,
        Axiom::P7h,
        Axiom::P8,
    ];

    pub const P2: [Axiom; 8] = [
        Axiom::P2aFwd,
        Axiom::P2aBwd,
        Axiom::P2bFwd,
        Axiom::P2bBwd,
        Axiom::P2cFwd,
        Axiom::P2cBwd,
        Axiom::P2dFwd,
        Axiom::P2dBwd,
    ];

    pub const P7: [Axiom; 8] = [
        Axiom::P7a,
        Axiom::P7b,
        Axiom::P7c,
        Axiom::P7d,
        Axiom::P7e,
        Axiom::P7f,
        Axiom::P7g,
        Axiom::P7h,
    ];

    pub fn tag(self) -> &'static str {
        use Axiom::*;
        match self {
            P1a => "P1a",
            P1b => "P1b",
            P1c => "P1c",
            P2aFwd => "P2a=>",
            P2aBwd => "P2a<=",
            P2bFwd => "P2b=>",
            P2bBwd => "P2b<=",
            P2cFwd => "P2c=>",
            P2cBwd => "P2c<=",
            P2dFwd => "P2d=>",
            P2dBwd => "P2d<=",
            P3a => "P3a",
            P3b => "P3b",
            P4a => "P4a",
            P4b => "P4b",
            P5a => "P5a",
            P5b => "P5b",
            P6 => "P6",
            P7a => "P7a",
            P7b => "P7b",
            P7c => "P7c",
            P7d => "P7d",
            P7e => "P7e",
            P7f => "P7f",
            P7g => "P7g",
            P7h => "P7h",
            P8 => "P8",
        }
    }

    /// Number of `(α, u)` variables quantified.
    fn shape(self) -> (usize, usize) {
        use Axiom::*;
        match self {
            P1a | P5a | P5b | P6 | P7a | P7b | P7c | P7d | P7e | P7f | P7g | P7h => (1, 1),
            P1b | P2cFwd | P2cBwd | P2dFwd | P2dBwd | P3b | P4b => (1, 2),
            P1c | P2aFwd | P2aBwd | P2bFwd | P2bBwd | P3a | P4a => (2, 1),
            P8 => (2, 2),
        }
    }

    /// Parses a tag or a group: `P2a` (both directions), `P2`, `P7`, `P1`, `all`.
    pub fn parse_group(s: &str) -> Result<Vec<Axiom>, String> {
        if s == "all" {
            return Ok(Axiom::ALL.to_vec());
        }
        let v: Vec<Axiom> = Axiom::ALL
            .into_iter()
            .filter(|a| {
                let t = a.tag();
                t == s || t.trim_end_matches("=>").trim_end_matches("<=") == s || {
                    let stem = &t[..2];
                    stem == s
                }
            })
            .collect();
        if v.is_empty() {
            Err(format!("unknown axiom {s:?}"))
        } else {
            Ok(v)
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Axiom {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| format!("unknown axiom {s:?}"))
    }
}

/// Variables of a failing tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomWitness<AE, UE> {
    pub alphas: Vec<AE>,
    pub us: Vec<UE>,
}

pub type AxiomReport<AE, UE> = Report<AxiomWitness<AE, UE>>;

type R = Result<bool, Exhausted>;

/// Shared state for one check: domains, enumerations and identity sets.
pub struct Ctx<'a, A: MulDomain, U: MulDomain> {
    pub ap: &'a ActionPair<A, U>,
    pub e: &'a ProductDomain<U::Elem, A::Elem>,
    pub as_: Vec<A::Elem>,
    pub us: Vec<U::Elem>,
    pub complete: bool,
    right_ids_u: BTreeSet<U::Elem>,
    left_ids_u: BTreeSet<U::Elem>,
    right_ids_a: BTreeSet<A::Elem>,
    left_ids_a: BTreeSet<A::Elem>,
}

impl<'a, A: MulDomain, U: MulDomain> Ctx<'a, A, U> {
    pub fn new(ap: &'a ActionPair<A, U>, e: &'a ProductDomain<U::Elem, A::Elem>, fuel: &Fuel) -> Self {
        let ea = ap.a.enumerate(fuel);
        let eu = ap.u.enumerate(fuel);
        let right_ids_u = eu.elements.iter().filter(|x| is_right_identity_in(&ap.u, &eu.elements, x)).cloned().collect();
        let left_ids_u = eu.elements.iter().filter(|x| is_left_identity_in(&ap.u, &eu.elements, x)).cloned().collect();
        let right_ids_a = ea.elements.iter().filter(|x| is_right_identity_in(&ap.a, &ea.elements, x)).cloned().collect();
        let left_ids_a = ea.elements.iter().filter(|x| is_left_identity_in(&ap.a, &ea.elements, x)).cloned().collect();
        Ctx {
            ap,
            e,
            complete: ea.complete && eu.complete,
            as_: ea.elements,
            us: eu.elements,
            right_ids_u,
            left_ids_u,
            right_ids_a,
            left_ids_a,
        }
    }

    fn act(&self, a: &A::Elem, u: &U::Elem) -> Result<Option<(U::Elem, A::Elem)>, Exhausted> {
        self.ap.act(a, u)
    }

    fn dot(&self, a: &A::Elem, u: &U::Elem) -> Result<Option<U::Elem>, Exhausted> {
        Ok(self.act(a, u)?.map(|(d, _)| d))
    }

    fn exp(&self, a: &A::Elem, u: &U::Elem) -> Result<Option<A::Elem>, Exhausted> {
        Ok(self.act(a, u)?.map(|(_, e)| e))
    }

    fn ma(&self, a: &A::Elem, b: &A::Elem) -> Option<A::Elem> {
        self.ap.a.mul(a, b)
    }

    fn mu(&self, a: &U::Elem, b: &U::Elem) -> Option<U::Elem> {
        self.ap.u.mul(a, b)
    }

    fn right_id_u(&self, x: &U::Elem) -> bool {
        self.right_ids_u.contains(x) || is_right_identity_in(&self.ap.u, &self.us, x)
    }

    fn left_id_u(&self, x: &U::Elem) -> bool {
        self.left_ids_u.contains(x) || is_left_identity_in(&self.ap.u, &self.us, x)
    }

    fn right_id_a(&self, x: &A::Elem) -> bool {
        self.right_ids_a.contains(x) || is_right_identity_in(&self.ap.a, &self.as_, x)
    }

    fn left_id_a(&self, x: &A::Elem) -> bool {
        self.left_ids_a.contains(x) || is_left_identity_in(&self.ap.a, &self.as_, x)
    }

    /// Result of an existential search that found nothing.
    fn not_found(&self) -> R {
        if self.complete {
            Ok(false)
        } else {
            Err(Exhausted)
        }
    }

    /// Runs `pred` over every tuple of the given shape.
    pub fn run(
        &self,
        tag: &str,
        (na, nu): (usize, usize),
        pred: impl Fn(&[A::Elem], &[U::Elem]) -> R,
    ) -> AxiomReport<A::Elem, U::Elem> {
        let mut inconclusive = false;
        let mut ia = vec![0usize; na];
        let total_a = self.as_.len();
        let total_u = self.us.len();
        if (na > 0 && total_a == 0) || (nu > 0 && total_u == 0) {
            return self.finish(tag, false);
        }
        loop {
            let alphas: Vec<A::Elem> = ia.iter().map(|&i| self.as_[i].clone()).collect();
            let mut iu = vec![0usize; nu];
            loop {
                let us: Vec<U::Elem> = iu.iter().map(|&i| self.us[i].clone()).collect();
                match pred(&alphas, &us) {
                    Ok(true) => {}
                    Ok(false) => {
                        return Report::fail(tag, AxiomWitness { alphas, us });
                    }
                    Err(Exhausted) => inconclusive = true,
                }
                if !bump(&mut iu, total_u) {
                    break;
                }
            }
            if !bump(&mut ia, total_a) {
                break;
            }
        }
        self.finish(tag, inconclusive)
    }

    fn finish(&self, tag: &str, inconclusive: bool) -> AxiomReport<A::Elem, U::Elem> {
        let verdict = if inconclusive {
            Verdict::Inconclusive
        } else if self.complete {
            Verdict::Pass
        } else {
            Verdict::PassUpToFuel
        };
        Report::new(tag, verdict, None)
    }

    /// Whether the axiom's condition holds at one tuple.
    pub fn holds(&self, axiom: Axiom, al: &[A::Elem], us: &[U::Elem]) -> R {
        use Axiom::*;
        match axiom {
            P1a => Ok(match self.act(&al[0], &us[0])? {
                Some((d, e)) => self.e.contains(&d, &e),
                None => true,
            }),
            P1b => {
                let (a, u, v) = (&al[0], &us[0], &us[1]);
                Ok(match self.mu(v, u) {
                    Some(vu) if self.e.contains(u, a) => self.e.contains(&vu, a),
                    _ => true,
                })
            }
            P1c => {
                let (a, b, u) = (&al[0], &al[1], &us[0]);
                Ok(match self.ma(a, b) {
                    Some(ab) if self.e.contains(u, a) => self.e.contains(u, &ab),
                    _ => true,
                })
            }
            P2aFwd | P2aBwd | P2bFwd | P2bBwd => {
                let (a, b, u) = (&al[0], &al[1], &us[0]);
                // left side: (αβ) acting on u
                let lhs = match self.ma(a, b) {
                    Some(ab) => self.act(&ab, u)?,
                    None => None,
                };
                // right side: β on u, then α on β·u
                let inner = self.act(b, u)?;
                let outer = match &inner {
                    Some((bu, _)) => self.act(a, bu)?,
                    None => None,
                };
                let is_a = matches!(axiom, P2aFwd | P2aBwd);
                let rhs = match (&inner, &outer) {
                    (Some((_, b_u)), Some((a_bu_dot, a_bu_exp))) => {
                        if is_a {
                            Some(Side::U(a_bu_dot.clone()))
                        } else {
                            self.ma(a_bu_exp, b_u).map(Side::A)
                        }
                    }
                    _ => None,
                };
                let lhs = lhs.map(|(d, e)| if is_a { Side::U(d) } else { Side::A(e) });
                Ok(directional(matches!(axiom, P2aFwd | P2bFwd), lhs, rhs))
            }
            P2cFwd | P2cBwd | P2dFwd | P2dBwd => {
                let (a, u, v) = (&al[0], &us[0], &us[1]);
                // left side: α acting on uv
                let lhs = match self.mu(u, v) {
                    Some(uv) => self.act(a, &uv)?,
                    None => None,
                };
                // right side: α on u, then α^u on v
                let first = self.act(a, u)?;
                let second = match &first {
                    Some((_, au)) => self.act(au, v)?,
                    None => None,
                };
                let is_c = matches!(axiom, P2cFwd | P2cBwd);
                let rhs = match (&first, &second) {
                    (Some((a_dot_u, _)), Some((d2, e2))) => {
                        if is_c {
                            self.mu(a_dot_u, d2).map(Side::U)
                        } else {
                            Some(Side::A(e2.clone()))
                        }
                    }
                    _ => None,
                };
                let lhs = lhs.map(|(d, e)| if is_c { Side::U(d) } else { Side::A(e) });
                Ok(directional(matches!(axiom, P2cFwd | P2dFwd), lhs, rhs))
            }
            P3a => {
                let (a, b, u) = (&al[0], &al[1], &us[0]);
                match self.ma(a, b) {
                    Some(ab) if self.act(b, u)?.is_some() => Ok(self.act(&ab, u)?.is_some()),
                    _ => Ok(true),
                }
            }
            P3b => {
                let (a, u, v) = (&al[0], &us[0], &us[1]);
                match self.mu(u, v) {
                    Some(uv) if self.act(a, u)?.is_some() => Ok(self.act(a, &uv)?.is_some()),
                    _ => Ok(true),
                }
            }
            P4a => exp_injective(self, al, us),
            P4b => dot_injective(self, al, us),
            P5a => dot_surjective(self, al, us),
            P5b => exp_surjective(self, al, us),
            P6 => Ok(self.act(&al[0], &us[0])?.is_some()),
            P7a | P7b => {
                let (a, u) = (&al[0], &us[0]);
                let applies = if axiom == P7a { self.right_id_u(u) } else { self.left_id_u(u) };
                Ok(!applies || self.exp(a, u)?.as_ref() == Some(a))
            }
            P7c | P7d => {
                let (a, u) = (&al[0], &us[0]);
                let applies = if axiom == P7c { self.right_id_a(a) } else { self.left_id_a(a) };
                Ok(!applies || self.dot(a, u)?.as_ref() == Some(u))
            }
            P7e => {
                let (a, u) = (&al[0], &us[0]);
                Ok(!self.right_id_u(u) || self.dot(a, u)?.is_some_and(|d| self.right_id_u(&d)))
            }
            P7f => {
                let (a, u) = (&al[0], &us[0]);
                Ok(!self.left_id_a(a) || self.exp(a, u)?.is_some_and(|e| self.left_id_a(&e)))
            }
            P7g => {
                let (a, u) = (&al[0], &us[0]);
                Ok(match self.dot(a, u)? {
                    Some(d) if self.right_id_u(&d) => self.right_id_u(u),
                    _ => true,
                })
            }
            P7h => {
                let (a, u) = (&al[0], &us[0]);
                Ok(match self.exp(a, u)? {
                    Some(e) if self.left_id_a(&e) => self.left_id_a(a),
                    _ => true,
                })
            }
            P8 => exp_strongly_coconfluent(self, al, us),
        }
    }
}

#[derive(PartialEq, Eq)]
enum Side<UE, AE> {
    U(UE),
    A(AE),
}

/// `(⇒)`: the left side defined forces the right side defined and equal; `(⇐)` mirrored.
fn directional<T: PartialEq>(forward: bool, lhs: Option<T>, rhs: Option<T>) -> bool {
    let (from, to) = if forward { (lhs, rhs) } else { (rhs, lhs) };
    match from {
        None => true,
        Some(x) => to.is_some_and(|y| y == x),
    }
}

fn bump(idx: &mut [usize], radix: usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < radix {
            return true;
        }
        idx[k] = 0;
    }
    false
}

fn exp_injective<A: MulDomain, U: MulDomain>(c: &Ctx<A, U>, al: &[A::Elem], us: &[U::Elem]) -> R {
    let (a, b, u) = (&al[0], &al[1], &us[0]);
    match (c.exp(a, u)?, c.exp(b, u)?) {
        (Some(x), Some(y)) if x == y => Ok(a == b),
        _ => Ok(true),
    }
}

fn dot_injective<A: MulDomain, U: MulDomain>(c: &Ctx<A, U>, al: &[A::Elem], us: &[U::Elem]) -> R {
    let (a, u, v) = (&al[0], &us[0], &us[1]);
    match (c.dot(a, u)?, c.dot(a, v)?) {
        (Some(x), Some(y)) if x == y => Ok(u == v),
        _ => Ok(true),
    }
}

fn dot_surjective<A: MulDomain, U: MulDomain>(c: &Ctx<A, U>, al: &[A::Elem], us: &[U::Elem]) -> R {
    let (a, v) = (&al[0], &us[0]);
    for u in &c.us {
        if c.dot(a, u)?.as_ref() == Some(v) {
            return Ok(true);
        }
    }
    c.not_found()
}

fn exp_surjective<A: MulDomain, U: MulDomain>(c: &Ctx<A, U>, al: &[A::Elem], us: &[U::Elem]) -> R {
    let (b, u) = (&al[0], &us[0]);
    for a in &c.as_ {
        if c.exp(a, u)?.as_ref() == Some(b) {
            return Ok(true);
        }
    }
    c.not_found()
}

fn exp_strongly_coconfluent<A: MulDomain, U: MulDomain>(c: &Ctx<A, U>, al: &[A::Elem], us: &[U::Elem]) -> R {
    let (a, b, u, v) = (&al[0], &al[1], &us[0], &us[1]);
    let (Some(x), Some(y)) = (c.exp(a, u)?, c.exp(b, v)?) else {
        return Ok(true);
    };
    if x != y {
        return Ok(true);
    }
    let has_clm = c
        .us
        .iter()
        .any(|s| c.mu(s, u).is_some_and(|su| c.us.iter().any(|t| c.mu(t, v).as_ref() == Some(&su))));
    if !has_clm {
        return Ok(true);
    }
    for g in &c.as_ {
        for p in &c.us {
            if c.exp(g, p)?.as_ref() != Some(a) {
                continue;
            }
            let Some(pu) = c.mu(p, u) else { continue };
            for q in &c.us {
                if c.exp(g, q)?.as_ref() == Some(b) && c.mu(q, v).as_ref() == Some(&pu) {
                    return Ok(true);
                }
            }
        }
    }
    c.not_found()
}

/// Checks one axiom over the enumerated tuples.
pub fn check_axiom<A: MulDomain, U: MulDomain>(
    ap: &ActionPair<A, U>,
    e: &ProductDomain<U::Elem, A::Elem>,
    axiom: Axiom,
    fuel: &Fuel,
) -> AxiomReport<A::Elem, U::Elem> {
    let ctx = Ctx::new(ap, e, fuel);
    ctx.run(axiom.tag(), axiom.shape(), |al, us| ctx.holds(axiom, al, us))
}

/// Checks several axioms, reusing one context.
pub fn check_axioms<A: MulDomain, U: MulDomain>(
    ap: &ActionPair<A, U>,
    e: &ProductDomain<U::Elem, A::Elem>,
    axioms: &[Axiom],
    fuel: &Fuel,
) -> Vec<AxiomReport<A::Elem, U::Elem>> {
    let ctx = Ctx::new(ap, e, fuel);
    axioms
        .iter()
        .map(|&ax| ctx.run(ax.tag(), ax.shape(), |al, us| ctx.holds(ax, al, us)))
        .collect()
}

/// Re-evaluates an axiom at a witness; `Ok(true)` means the witness violates it.
pub fn witness_violates<A: MulDomain, U: MulDomain>(
    ap: &ActionPair<A, U>,
    e: &ProductDomain<U::Elem, A::Elem>,
    axiom: Axiom,
    w: &AxiomWitness<A::Elem, U::Elem>,
    fuel: &Fuel,
) -> Result<bool, Exhausted> {
    let (na, nu) = axiom.shape();
    if w.alphas.len() != na || w.us.len() != nu {
        return Ok(false);
    }
    let ctx = Ctx::new(ap, e, fuel);
    ctx.holds(axiom, &w.alphas, &w.us).map(|h| !h)
}

/// Family properties of one of the two actions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFlags<AE, UE> {
    pub injective: AxiomReport<AE, UE>,
    pub surjective: AxiomReport<AE, UE>,
    pub confluent: AxiomReport<AE, UE>,
    pub coconfluent: AxiomReport<AE, UE>,
    pub strongly_coconfluent: AxiomReport<AE, UE>,
    pub multiplicative: AxiomReport<AE, UE>,
    pub trivial: AxiomReport<AE, UE>,
}

impl<AE, UE> FamilyFlags<AE, UE> {
    pub fn all(&self) -> [&AxiomReport<AE, UE>; 7] {
        [
            &self.injective,
            &self.surjective,
            &self.confluent,
            &self.coconfluent,
            &self.strongly_coconfluent,
            &self.multiplicative,
            &self.trivial,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport<AE, UE> {
    /// `(α, u) ↦ α^u`: base `A`, parameters `U`.
    pub exp: FamilyFlags<AE, UE>,
    /// `(α, u) ↦ α·u`: base `U`, parameters `A`.
    pub dot: FamilyFlags<AE, UE>,
}

pub fn family_properties<A: MulDomain, U: MulDomain>(
    ap: &ActionPair<A, U>,
    fuel: &Fuel,
) -> FamilyReport<A::Elem, U::Elem> {
    let e = ProductDomain::Full;
    let c = Ctx::new(ap, &e, fuel);
    let exp = FamilyFlags {
        injective: c.run("exp.injective", (2, 1), |al, us| exp_injective(&c, al, us)),
        surjective: c.run("exp.surjective", (1, 1), |al, us| exp_surjective(&c, al, us)),
        confluent: c.run("exp.confluent", (1, 2), |al, us| {
            let (a, u, v) = (&al[0], &us[0], &us[1]);
            let (Some(x), Some(y)) = (c.exp(a, u)?, c.exp(a, v)?) else { return Ok(true) };
            for p in &c.us {
                let Some(xp) = c.exp(&x, p)? else { continue };
                for q in &c.us {
                    if c.exp(&y, q)?.as_ref() == Some(&xp) {
                        return Ok(true);
                    }
                }
            }
            c.not_found()
        }),
        coconfluent: c.run("exp.coconfluent", (2, 2), |al, us| {
            let (a, b, u, v) = (&al[0], &al[1], &us[0], &us[1]);
            let (Some(x), Some(y)) = (c.exp(a, u)?, c.exp(b, v)?) else { return Ok(true) };
            if x != y {
                return Ok(true);
            }
            for g in &c.as_ {
                let mut hit_a = false;
                let mut hit_b = false;
                for p in &c.us {
                    match c.exp(g, p)? {
                        Some(z) if &z == a => hit_a = true,
                        _ => {}
                    }
                    match c.exp(g, p)? {
                        Some(z) if &z == b => hit_b = true,
                        _ => {}
                    }
                }
                if hit_a && hit_b {
                    return Ok(true);
                }
            }
            c.not_found()
        }),
        strongly_coconfluent: c.run("exp.strongly_coconfluent", (2, 2), |al, us| {
            exp_strongly_coconfluent(&c, al, us)
        }),
        multiplicative: c.run("exp.multiplicative", (1, 2), |al, us| {
            let (a, u, v) = (&al[0], &us[0], &us[1]);
            let Some(x) = c.exp(a, u)? else { return Ok(true) };
            let Some(xv) = c.exp(&x, v)? else { return Ok(true) };
            match c.mu(u, v) {
                Some(uv) => Ok(c.exp(a, &uv)? == Some(xv)),
                None => Ok(false),
            }
        }),
        trivial: c.run("exp.trivial", (1, 1), |al, us| {
            Ok(c.exp(&al[0], &us[0])?.is_none_or(|x| x == al[0]))
        }),
    };
    let dot = FamilyFlags {
        injective: c.run("dot.injective", (1, 2), |al, us| dot_injective(&c, al, us)),
        surjective: c.run("dot.surjective", (1, 1), |al, us| dot_surjective(&c, al, us)),
        confluent: c.run("dot.confluent", (2, 1), |al, us| {
            let (a, b, u) = (&al[0], &al[1], &us[0]);
            let (Some(x), Some(y)) = (c.dot(a, u)?, c.dot(b, u)?) else { return Ok(true) };
            for p in &c.as_ {
                let Some(px) = c.dot(p, &x)? else { continue };
                for q in &c.as_ {
                    if c.dot(q, &y)?.as_ref() == Some(&px) {
                        return Ok(true);
                    }
                }
            }
            c.not_found()
        }),
        coconfluent: c.run("dot.coconfluent", (2, 2), |al, us| {
            let (a, b, u, v) = (&al[0], &al[1], &us[0], &us[1]);
            let (Some(x), Some(y)) = (c.dot(a, u)?, c.dot(b, v)?) else { return Ok(true) };
            if x != y {
                return Ok(true);
            }
            for w in &c.us {
                let mut hit_u = false;
                let mut hit_v = false;
                for p in &c.as_ {
                    let z = c.dot(p, w)?;
                    hit_u |= z.as_ref() == Some(u);
                    hit_v |= z.as_ref() == Some(v);
                }
                if hit_u && hit_v {
                    return Ok(true);
                }
            }
            c.not_found()
        }),
        strongly_coconfluent: c
            .run("dot.strongly_coconfluent", (2, 2), |al, us| {
                let (a, b, u, v) = (&al[0], &al[1], &us[0], &us[1]);
                let (Some(x), Some(y)) = (c.dot(a, u)?, c.dot(b, v)?) else { return Ok(true) };
                if x != y {
                    return Ok(true);
                }
                let has_crm = c.as_.iter().any(|s| {
                    c.ma(a, s)
                        .is_some_and(|as_| c.as_.iter().any(|t| c.ma(b, t).as_ref() == Some(&as_)))
                });
                if !has_crm {
                    return Ok(true);
                }
                for w in &c.us {
                    for p in &c.as_ {
                        if c.dot(p, w)?.as_ref() != Some(u) {
                            continue;
                        }
                        let Some(ap_) = c.ma(a, p) else { continue };
                        for q in &c.as_ {
                            if c.dot(q, w)?.as_ref() == Some(v) && c.ma(b, q).as_ref() == Some(&ap_) {
                                return Ok(true);
                            }
                        }
                    }
                }
                c.not_found()
            })
            .with_note("mirrored definition: α·u = β·v with a common right multiple of α, β yields u = p·w, v = q·w, αp = βq"),
        multiplicative: c.run("dot.multiplicative", (2, 1), |al, us| {
            let (a, b, u) = (&al[0], &al[1], &us[0]);
            let Some(bu) = c.dot(b, u)? else { return Ok(true) };
            let Some(abu) = c.dot(a, &bu)? else { return Ok(true) };
            match c.ma(a, b) {
                Some(ab) => Ok(c.dot(&ab, u)? == Some(abu)),
                None => Ok(false),
            }
        }),
        trivial: c.run("dot.trivial", (1, 1), |al, us| {
            Ok(c.dot(&al[0], &us[0])?.is_none_or(|x| x == us[0]))
        }),
    };
    FamilyReport { exp, dot }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{derive_internal_actions, FiniteActions};
    use crate::catalog::{self, Perm};
    use crate::domain::FreeMonoid;
    use crate::magma::ElementId;
    use crate::rewriting::{Alphabet, Word};
    use std::sync::Arc;

    fn s4_derived() -> crate::actions::Derived {
        let g = catalog::symmetric_group(4);
        let u = g.subgroup(&[Perm::from_cycles(4, &[&[0, 1]]), Perm::from_cycles(4, &[&[0, 1, 2]])]);
        let a = g.subgroup(&[Perm::from_cycles(4, &[&[0, 1, 2, 3]])]);
        derive_internal_actions(&g.magma, &u, &a).unwrap()
    }

    #[test]
    fn derived_actions_satisfy_p2() {
        let d = s4_derived();
        for r in check_axioms(&d.actions, &ProductDomain::Full, &Axiom::P2, &Fuel::default()) {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn corrupted_exp_breaks_an_axiom() {
        let d = s4_derived();
        let mut ap = d.actions.clone();
        let c = d.a.magma.id("(0 1 2 3)").unwrap();
        let t = d.u.magma.id("(1 2)").unwrap();
        let dot = ap.dot(&c, &t).unwrap();
        ap.set_entry(c, t, Some((dot, c)), &Fuel::default());
        let reports = check_axioms(&ap, &ProductDomain::Full, &Axiom::P2, &Fuel::default());
        let failing: Vec<_> = reports.iter().filter(|r| r.failed()).collect();
        assert!(!failing.is_empty());
        for r in failing {
            let ax: Axiom = r.property.parse().unwrap();
            let w = r.witness.as_ref().unwrap();
            assert_eq!(witness_violates(&ap, &ProductDomain::Full, ax, w, &Fuel::default()), Ok(true));
        }
    }

    #[test]
    fn trivial_actions_pass_closure_and_identity_rules() {
        let ap = FiniteActions::trivial(catalog::cyclic(2), catalog::cyclic(3));
        let mut axes = vec![Axiom::P1a, Axiom::P1b, Axiom::P1c];
        axes.extend(Axiom::P7);
        for r in check_axioms(&ap, &ProductDomain::Full, &axes, &Fuel::default()) {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn s4_exp_family_is_injective() {
        let d = s4_derived();
        let f = family_properties(&d.actions, &Fuel::default());
        assert!(f.exp.injective.passed());
        assert!(f.exp.trivial.failed());
    }

    #[test]
    fn trivial_families() {
        let ap = FiniteActions::trivial(catalog::cyclic(2), catalog::cyclic(3));
        let f = family_properties(&ap, &Fuel::default());
        for r in [&f.exp.trivial, &f.exp.multiplicative, &f.dot.trivial, &f.dot.multiplicative] {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn swap_action_on_words_is_strongly_coconfluent() {
        let c2 = catalog::cyclic_named(2, "s");
        let words = FreeMonoid::new(Alphabet::chars("xy"));
        let ap = ActionPair::computed(
            c2,
            words,
            Arc::new(|s: &ElementId, w: &Word| {
                let d = if s.0 == 1 { Word(w.0.iter().map(|g| 1 - g).collect()) } else { w.clone() };
                Ok(Some((d, *s)))
            }),
        );
        let fuel = Fuel::default().with_word_len(2);
        let f = family_properties(&ap, &fuel);
        assert_eq!(f.exp.strongly_coconfluent.verdict, Verdict::PassUpToFuel);
        assert_eq!(f.exp.trivial.verdict, Verdict::PassUpToFuel);
        assert!(f.dot.trivial.failed());
    }

    #[test]
    fn axiom_groups_parse() {
        assert_eq!(Axiom::parse_group("P2a").unwrap(), vec![Axiom::P2aFwd, Axiom::P2aBwd]);
        assert_eq!(Axiom::parse_group("P7").unwrap().len(), 8);
        assert_eq!(Axiom::parse_group("P2").unwrap().len(), 8);
        assert_eq!(Axiom::parse_group("P8").unwrap(), vec![Axiom::P8]);
        assert_eq!(Axiom::parse_group("all").unwrap().len(), 27);
        assert!(Axiom::parse_group("P9").is_err());
        for a in Axiom::ALL {
            assert_eq!(a.tag().parse::<Axiom>().unwrap(), a);
        }
    }
}
