//! Least common left multiples in a product `U ⋈ A` with `A` a finite group.
//!
//! The construction reduces `(u,θ), (v,φ)` to `u, vφθ⁻¹`, reads `α, β` off a
//! common left multiple `(xα)u = (yβ)(vφθ⁻¹)`, and returns the cofactors
//! `(r,α)`, `(s,β)` where `r(α·u) = s(β·v)` is an lclm in `U`.

use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::actions::ActionPair;
use crate::axioms::{check_axioms, Axiom, ProductDomain};
use crate::domain::{Fuel, FreeMonoid, MulDomain};
use crate::magma::{ElementId, Magma};
use crate::product::ZsProduct;
use crate::properties::{self, check_property, Property};
use crate::report::Exhausted;
use crate::catalog;
use crate::rewriting::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LclmError {
    #[error("hypothesis {hypothesis} failed{}", witness.as_ref().map(|w| format!(" at {w}")).unwrap_or_default())]
    HypothesisFailed {
        hypothesis: String,
        witness: Option<String>,
    },
    #[error("no common left multiple with cofactor words up to length {word_len}")]
    NoCommonLeftMultipleFound { word_len: usize },
    #[error("supplied element is not a common left multiple")]
    NotACommonMultiple,
    #[error("fuel exhausted while evaluating actions")]
    Inconclusive,
    #[error("post-check failed: {0}")]
    VerificationFailed(&'static str),
}

impl From<Exhausted> for LclmError {
    fn from(_: Exhausted) -> Self {
        LclmError::Inconclusive
    }
}

/// Left division and lclms in a cancellative monoid.
pub trait LeftMultiples: MulDomain {
    /// Every `p` with `p·a = m`.
    fn left_quotients(&self, m: &Self::Elem, a: &Self::Elem, fuel: &Fuel) -> Vec<Self::Elem>;

    /// A least common left multiple `l = p·a = q·b`, as `(l, p, q)`.
    fn lclm_of(&self, a: &Self::Elem, b: &Self::Elem, fuel: &Fuel) -> Option<(Self::Elem, Self::Elem, Self::Elem)>;

    fn is_lclm(&self, l: &Self::Elem, a: &Self::Elem, b: &Self::Elem, fuel: &Fuel) -> bool;

    fn identity(&self) -> Option<Self::Elem>;

    /// Cancellative monoid in which every pair with a common left multiple has an lclm.
    fn lclm_hypotheses(&self) -> Result<(), String>;
}

impl LeftMultiples for Magma {
    fn left_quotients(&self, m: &ElementId, a: &ElementId, _: &Fuel) -> Vec<ElementId> {
        self.elements().filter(|&p| self.mul(p, *a) == Some(*m)).collect()
    }

    /// Prefers `l = a` and then identity cofactors when they qualify.
    fn lclm_of(&self, a: &ElementId, b: &ElementId, _: &Fuel) -> Option<(ElementId, ElementId, ElementId)> {
        let all = properties::all_lclms(self, *a, *b);
        let l = if all.contains(a) { *a } else { *all.first()? };
        let one = properties::global_identity(self);
        let pick = |x: ElementId| {
            let qs: Vec<ElementId> = self.elements().filter(|&p| self.mul(p, x) == Some(l)).collect();
            match one {
                Some(e) if qs.contains(&e) => Some(e),
                _ => qs.first().copied(),
            }
        };
        Some((l, pick(*a)?, pick(*b)?))
    }

    fn is_lclm(&self, l: &ElementId, a: &ElementId, b: &ElementId, _: &Fuel) -> bool {
        properties::all_lclms(self, *a, *b).contains(l)
    }

    fn identity(&self) -> Option<ElementId> {
        properties::global_identity(self)
    }

    fn lclm_hypotheses(&self) -> Result<(), String> {
        if !properties::is_monoid(self) {
            return Err("U is a monoid".into());
        }
        for p in [Property::LeftCanc, Property::RightCanc, Property::LeastCommonLeftMultiples] {
            let r = check_property(self, p);
            if r.failed() {
                return Err(format!("U {}", p.tag()));
            }
        }
        Ok(())
    }
}

impl LeftMultiples for FreeMonoid {
    fn left_quotients(&self, m: &Word, a: &Word, _: &Fuel) -> Vec<Word> {
        if a.is_suffix_of(m) {
            vec![Word(m.0[..m.len() - a.len()].to_vec())]
        } else {
            Vec::new()
        }
    }

    /// `pa = qb` forces one of `a, b` to be a suffix of the other; the longer one is the lclm.
    fn lclm_of(&self, a: &Word, b: &Word, fuel: &Fuel) -> Option<(Word, Word, Word)> {
        let l = if b.is_suffix_of(a) {
            a.clone()
        } else if a.is_suffix_of(b) {
            b.clone()
        } else {
            return None;
        };
        let p = self.left_quotients(&l, a, fuel).pop()?;
        let q = self.left_quotients(&l, b, fuel).pop()?;
        Some((l, p, q))
    }

    fn is_lclm(&self, l: &Word, a: &Word, b: &Word, fuel: &Fuel) -> bool {
        self.lclm_of(a, b, fuel).is_some_and(|(m, _, _)| &m == l)
    }

    fn identity(&self) -> Option<Word> {
        Some(Word::empty())
    }

    fn lclm_hypotheses(&self) -> Result<(), String> {
        Ok(())
    }
}

/// `left · x = right · y = multiple` in the product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LclmWitness<UE> {
    pub left: (UE, ElementId),
    pub right: (UE, ElementId),
    pub multiple: (UE, ElementId),
    /// `r(α·u) = s(β·v)` in `U`, as `(multiple, r, s)`.
    pub u_level: (UE, UE, UE),
    /// `k` with `witness = k · multiple`.
    pub quotient: (UE, ElementId),
}

type Pair<UE> = (UE, ElementId);

/// All `P` with `P · x = m` in the product.
pub fn product_left_quotients<U: LeftMultiples>(
    zs: &ZsProduct<Magma, U>,
    m: &Pair<U::Elem>,
    x: &Pair<U::Elem>,
    fuel: &Fuel,
) -> Result<Vec<Pair<U::Elem>>, Exhausted> {
    let ap = &zs.actions;
    let mut out = Vec::new();
    for alpha in ap.a.elements() {
        let Some((d, e)) = ap.act(&alpha, &x.0)? else { continue };
        if ap.a.mul(e, x.1) != Some(m.1) {
            continue;
        }
        for p in ap.u.left_quotients(&m.0, &d, fuel) {
            if zs.product(&(p.clone(), alpha), x).as_ref() == Some(m) {
                out.push((p, alpha));
            }
        }
    }
    Ok(out)
}

/// First common left multiple `P·x = Q·y` with `P` enumerated up to fuel, as `(P, Q)`.
pub fn search_common_left_multiple<U: LeftMultiples>(
    zs: &ZsProduct<Magma, U>,
    x: &Pair<U::Elem>,
    y: &Pair<U::Elem>,
    fuel: &Fuel,
) -> Result<Option<(Pair<U::Elem>, Pair<U::Elem>)>, Exhausted> {
    let ap = &zs.actions;
    for p in ap.u.enumerate(fuel).elements {
        for alpha in ap.a.elements() {
            let cof = (p.clone(), alpha);
            let Some(m) = zs.product(&cof, x) else { continue };
            if let Some(q) = product_left_quotients(zs, &m, y, fuel)?.into_iter().next() {
                return Ok(Some((cof, q)));
            }
        }
    }
    Ok(None)
}

fn hypothesis(name: impl Into<String>) -> LclmError {
    LclmError::HypothesisFailed {
        hypothesis: name.into(),
        witness: None,
    }
}

pub fn product_lclm<U: LeftMultiples>(
    zs: &ZsProduct<Magma, U>,
    x: &Pair<U::Elem>,
    y: &Pair<U::Elem>,
    witness: Option<&Pair<U::Elem>>,
    fuel: &Fuel,
) -> Result<LclmWitness<U::Elem>, LclmError> {
    let ap = &zs.actions;
    let a = &ap.a;
    if !matches!(zs.e, ProductDomain::Full) {
        return Err(hypothesis("E = U×A"));
    }
    ap.u.lclm_hypotheses().map_err(hypothesis)?;
    if !properties::is_group(a) {
        return Err(hypothesis("A is a group"));
    }
    for r in check_axioms(ap, &ProductDomain::Full, &[Axiom::P6, Axiom::P8], fuel) {
        if r.failed() {
            return Err(LclmError::HypothesisFailed {
                hypothesis: r.property,
                witness: r.witness.map(|w| format!("{w:?}")),
            });
        }
    }
    let inv = |g: ElementId| properties::inverse(a, g).expect("group");

    let (w, cof_x) = match witness {
        Some(m) => {
            let px = product_left_quotients(zs, m, x, fuel)?;
            let qy = product_left_quotients(zs, m, y, fuel)?;
            match (px.first(), qy.first()) {
                (Some(p), Some(_)) => (m.clone(), p.clone()),
                _ => return Err(LclmError::NotACommonMultiple),
            }
        }
        None => match search_common_left_multiple(zs, x, y, fuel)? {
            Some((p, _)) => (zs.product(&p, x).expect("found product"), p),
            None => {
                return Err(LclmError::NoCommonLeftMultipleFound {
                    word_len: fuel.word_len,
                })
            }
        },
    };

    // reduce to the pair u, (v, φθ⁻¹)
    let (u, theta) = (x.0.clone(), x.1);
    let (v, phi) = (y.0.clone(), y.1);
    let phi_r = a.mul(phi, inv(theta)).expect("group");
    let y_r = (v.clone(), phi_r);
    let one = a.elements().find(|&g| properties::is_global_identity(a, g)).expect("group");
    let x_r = (u.clone(), one);
    // P·x = W is the same as P·x_r = W·θ⁻¹
    let w_r = (w.0.clone(), a.mul(w.1, inv(theta)).expect("group"));
    let alpha = cof_x.1;
    let beta = product_left_quotients(zs, &w_r, &y_r, fuel)?
        .first()
        .map(|q| q.1)
        .ok_or(LclmError::NotACommonMultiple)?;

    let au = ap.dot(&alpha, &u).ok_or(LclmError::Inconclusive)?;
    let bv = ap.dot(&beta, &v).ok_or(LclmError::Inconclusive)?;
    let (lu, r, s) = ap.u.lclm_of(&au, &bv, fuel).ok_or(LclmError::VerificationFailed("no lclm in U"))?;
    let left = (r.clone(), alpha);
    let right = (s.clone(), beta);
    let multiple = zs.product(&left, x).ok_or(LclmError::VerificationFailed("left product undefined"))?;
    if zs.product(&right, y).as_ref() != Some(&multiple) {
        return Err(LclmError::VerificationFailed("cofactors disagree"));
    }
    if zs.product(&left, &x_r).map(|m| m.0) != zs.product(&right, &y_r).map(|m| m.0) {
        return Err(LclmError::VerificationFailed("reduced cofactors disagree"));
    }
    if !ap.u.is_lclm(&lu, &au, &bv, fuel) {
        return Err(LclmError::VerificationFailed("U-level multiple is not an lclm"));
    }
    let quotient = product_left_quotients(zs, &w, &multiple, fuel)?
        .into_iter()
        .next()
        .ok_or(LclmError::VerificationFailed("witness is not a left multiple of the result"))?;
    Ok(LclmWitness {
        left,
        right,
        multiple,
        u_level: (lu, r, s),
        quotient,
    })
}

/// `C2 = {1, s}` acting on words over `{x, y}`: `s` swaps the letters and `s^w = s`.
pub fn free_swap_product() -> ZsProduct<Magma, FreeMonoid> {
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
    ZsProduct::new(ap, ProductDomain::Full)
}
