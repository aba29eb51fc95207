//! Finite categories as partial multiplications, groupoid bundles, and the
//! passage between internal factorizations `G = Û·A` and external products
//! `U ⋈ A` of a category with a group.
//!
//! Composition is in function order: `αβ` is defined iff `src(α) = tgt(β)`.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use crate::actions::{derive_internal_actions, ActionError, FiniteActions};
use crate::axioms::{check_axioms, Axiom, ProductDomain};
use crate::domain::Fuel;
use crate::magma::{ElementId, Magma, MagmaError, Morphism};
use crate::product::{FiniteProduct, ProductError};
use crate::properties::{self, check_property, Property};
use crate::report::{Report, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error("ill-formed category: {reason} at {witness:?}")]
    IllFormedCategory { reason: String, witness: Vec<String> },
    #[error("embedding at object {object} is not injective: {witness:?}")]
    EmbeddingNotInjective { object: String, witness: Vec<String> },
    #[error("bad embedding at object {object}: {reason}")]
    BadEmbedding { object: String, reason: String },
    #[error("situation check {condition} failed at {witness:?}")]
    SituationCheckFailed { condition: String, witness: Vec<String> },
    #[error(transparent)]
    Factorization(#[from] ActionError),
    #[error(transparent)]
    Magma(#[from] MagmaError),
    #[error(transparent)]
    Product(#[from] ProductError),
}

fn ill(reason: impl Into<String>, witness: Vec<String>) -> CategoryError {
    CategoryError::IllFormedCategory {
        reason: reason.into(),
        witness,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// Objects, arrows with source and target, and a composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    compose: BTreeMap<(usize, usize), usize>,
}

impl FiniteCategory {
    /// Checks matching, closure, associativity and identities.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        compose: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<FiniteCategory, CategoryError> {
        let mut names = BTreeSet::new();
        for a in &arrows {
            if a.src >= objects.len() || a.tgt >= objects.len() {
                return Err(ill("arrow endpoint out of range", vec![a.name.clone()]));
            }
            if !names.insert(a.name.as_str()) {
                return Err(ill("duplicate arrow name", vec![a.name.clone()]));
            }
        }
        let n = arrows.len();
        let nm = |i: usize| arrows[i].name.clone();
        let mut table = BTreeMap::new();
        for (a, b, c) in compose {
            if a >= n || b >= n || c >= n {
                return Err(ill("composition index out of range", vec![]));
            }
            if arrows[a].src != arrows[b].tgt {
                return Err(ill("composite of unmatched arrows", vec![nm(a), nm(b)]));
            }
            if arrows[c].src != arrows[b].src || arrows[c].tgt != arrows[a].tgt {
                return Err(ill("composite has wrong endpoints", vec![nm(a), nm(b), nm(c)]));
            }
            if table.insert((a, b), c).is_some() {
                return Err(ill("duplicate composite", vec![nm(a), nm(b)]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if arrows[a].src == arrows[b].tgt && !table.contains_key(&(a, b)) {
                    return Err(ill("missing composite", vec![nm(a), nm(b)]));
                }
            }
        }
        for (&(a, b), &ab) in &table {
            for c in (0..n).filter(|&c| arrows[b].src == arrows[c].tgt) {
                if table[&(ab, c)] != table[&(a, table[&(b, c)])] {
                    return Err(ill("composition is not associative", vec![nm(a), nm(b), nm(c)]));
                }
            }
        }
        let mut identities = Vec::new();
        for x in 0..objects.len() {
            let id = (0..n).find(|&i| {
                arrows[i].src == x
                    && arrows[i].tgt == x
                    && (0..n).all(|f| (arrows[f].tgt != x || table[&(i, f)] == f) && (arrows[f].src != x || table[&(f, i)] == f))
            });
            match id {
                Some(i) => identities.push(i),
                None => return Err(ill("object has no identity", vec![objects[x].clone()])),
            }
        }
        Ok(FiniteCategory {
            objects,
            arrows,
            identities,
            compose: table,
        })
    }

    /// Arrows as `(name, src, tgt)` and composites as `(a, b, a∘b)`, all by name.
    pub fn from_names(
        objects: &[&str],
        arrows: &[(&str, &str, &str)],
        compose: &[(&str, &str, &str)],
    ) -> Result<FiniteCategory, CategoryError> {
        let obj = |s: &str| {
            objects
                .iter()
                .position(|o| *o == s)
                .ok_or_else(|| ill("unknown object", vec![s.to_string()]))
        };
        let arrs = arrows
            .iter()
            .map(|(n, s, t)| {
                Ok(Arrow {
                    name: n.to_string(),
                    src: obj(s)?,
                    tgt: obj(t)?,
                })
            })
            .collect::<Result<Vec<_>, CategoryError>>()?;
        let arr = |s: &str| {
            arrows
                .iter()
                .position(|a| a.0 == s)
                .ok_or_else(|| ill("unknown arrow", vec![s.to_string()]))
        };
        let comp = compose
            .iter()
            .map(|(a, b, c)| Ok((arr(a)?, arr(b)?, arr(c)?)))
            .collect::<Result<Vec<_>, CategoryError>>()?;
        FiniteCategory::new(objects.iter().map(|s| s.to_string()).collect(), arrs, comp)
    }

    /// A monoid as a one-object category.
    pub fn one_object(m: &Magma) -> Result<FiniteCategory, CategoryError> {
        let arrows = m
            .elements()
            .map(|a| Arrow {
                name: m.name(a).to_string(),
                src: 0,
                tgt: 0,
            })
            .collect();
        FiniteCategory::new(vec!["*".into()], arrows, m.entries().map(|(a, b, c)| (a.0, b.0, c.0)))
    }

    /// One arrow `s>t` for every ordered pair of objects `0..n`.
    pub fn pair_groupoid(n: usize) -> FiniteCategory {
        let arrows = (0..n)
            .flat_map(|s| (0..n).map(move |t| (s, t)))
            .map(|(s, t)| Arrow {
                name: format!("{s}>{t}"),
                src: s,
                tgt: t,
            })
            .collect();
        // arrow s>t is at index s*n + t
        let mut comp = Vec::new();
        for s in 0..n {
            for m in 0..n {
                for t in 0..n {
                    comp.push((m * n + t, s * n + m, s * n + t));
                }
            }
        }
        FiniteCategory::new((0..n).map(|i| i.to_string()).collect(), arrows, comp).expect("pair groupoid")
    }

    /// `C × M` for a monoid `M`: arrow `(a, g)` at index `a·|M| + g`.
    pub fn times_monoid(&self, m: &Magma) -> Result<FiniteCategory, CategoryError> {
        if !properties::is_monoid(m) {
            return Err(ill("second factor is not a monoid", vec![]));
        }
        let k = m.size();
        let mut arrows = Vec::new();
        for a in &self.arrows {
            for g in m.elements() {
                arrows.push(Arrow {
                    name: format!("({},{})", a.name, m.name(g)),
                    src: a.src,
                    tgt: a.tgt,
                });
            }
        }
        let mut comp = Vec::new();
        for (&(a, b), &c) in &self.compose {
            for (g, h, gh) in m.entries() {
                comp.push((a * k + g.0, b * k + h.0, c * k + gh.0));
            }
        }
        FiniteCategory::new(self.objects.clone(), arrows, comp)
    }

    /// The subcategory on `arrows` with all objects; must hold every identity
    /// and be closed. Returns it with the parent index of each arrow.
    pub fn subcategory(&self, arrows: &[usize]) -> Result<(FiniteCategory, Vec<usize>), CategoryError> {
        let embed: Vec<usize> = arrows.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if let Some(&bad) = embed.iter().find(|&&a| a >= self.arrows.len()) {
            return Err(ill("arrow index out of range", vec![bad.to_string()]));
        }
        for (x, &i) in self.identities.iter().enumerate() {
            if !embed.contains(&i) {
                return Err(ill("subcategory misses an identity", vec![self.objects[x].clone()]));
            }
        }
        let local: BTreeMap<usize, usize> = embed.iter().enumerate().map(|(l, &p)| (p, l)).collect();
        let mut comp = Vec::new();
        for (&(a, b), &c) in &self.compose {
            if let (Some(&la), Some(&lb)) = (local.get(&a), local.get(&b)) {
                match local.get(&c) {
                    Some(&lc) => comp.push((la, lb, lc)),
                    None => return Err(ill("subcategory is not closed", vec![self.name(a).into(), self.name(b).into()])),
                }
            }
        }
        let sub = FiniteCategory::new(
            self.objects.clone(),
            embed.iter().map(|&p| self.arrows[p].clone()).collect(),
            comp,
        )?;
        Ok((sub, embed))
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn name(&self, a: usize) -> &str {
        &self.arrows[a].name
    }

    pub fn arrow(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn src(&self, a: usize) -> usize {
        self.arrows[a].src
    }

    pub fn tgt(&self, a: usize) -> usize {
        self.arrows[a].tgt
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        self.compose.get(&(a, b)).copied()
    }

    /// `(a, b, a∘b)` in table order.
    pub fn composites(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.compose.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    /// Arrows from `x` to `x`.
    pub fn vertex(&self, x: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.src(a) == x && self.tgt(a) == x).collect()
    }

    /// The vertex monoid at `x` as a magma, with its parent arrows.
    pub fn vertex_monoid(&self, x: usize) -> (Magma, Vec<usize>) {
        let arrows = self.vertex(x);
        let m = category_as_magma(self).expect("well-formed");
        let ids: Vec<ElementId> = arrows.iter().map(|&a| ElementId(a)).collect();
        let sub = m.restrict(&ids).expect("vertex monoid is closed");
        (sub.magma, sub.embed.iter().map(|e| e.0).collect())
    }
}

/// Arrows with composition as the partial multiplication.
pub fn category_as_magma(c: &FiniteCategory) -> Result<Magma, CategoryError> {
    let m = Magma::new(
        c.arrows.len(),
        c.arrows.iter().map(|a| a.name.clone()).collect(),
        c.compose.iter().map(|(&k, &v)| (k, v)),
    )?;
    for p in [Property::Categorical, Property::HasFullIdentities, Property::DigraphRule] {
        let r = check_property(&m, p);
        if !r.passed() {
            let witness = r.witness.unwrap_or_default().iter().map(|&x| m.name(x).to_string()).collect();
            return Err(ill(format!("induced multiplication fails {}", p.tag()), witness));
        }
    }
    Ok(m)
}

/// Reads a category back off a partial multiplication: objects are the full
/// identities, `src(a)` the identity `e` with `ae` defined, `tgt(a)` the one
/// with `ea` defined. Errors when the multiplication is not of that form.
pub fn category_from_magma(m: &Magma) -> Result<FiniteCategory, CategoryError> {
    let ids: Vec<ElementId> = m.elements().filter(|&e| properties::is_full_identity(m, e)).collect();
    let end = |a: ElementId, right: bool| -> Result<usize, CategoryError> {
        let found: Vec<usize> = (0..ids.len())
            .filter(|&k| if right { m.defined(a, ids[k]) } else { m.defined(ids[k], a) })
            .collect();
        match found.as_slice() {
            [k] => Ok(*k),
            _ => Err(ill(
                if right { "no unique source identity" } else { "no unique target identity" },
                vec![m.name(a).to_string()],
            )),
        }
    };
    let mut arrows = Vec::new();
    for a in m.elements() {
        arrows.push(Arrow {
            name: m.name(a).to_string(),
            src: end(a, true)?,
            tgt: end(a, false)?,
        });
    }
    let objects = ids.iter().map(|&e| m.name(e).to_string()).collect();
    FiniteCategory::new(objects, arrows, m.entries().map(|(a, b, c)| (a.0, b.0, c.0)))
}

/// A category `G`, a group `U`, and per-object embeddings `φ_x: U → G_x`.
/// `phi[x][u]` is the arrow `φ_x(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidBundle {
    pub g: FiniteCategory,
    pub u: Magma,
    pub phi: Vec<Vec<usize>>,
}

impl GroupoidBundle {
    pub fn new(g: FiniteCategory, u: Magma, phi: Vec<Vec<usize>>) -> Result<GroupoidBundle, CategoryError> {
        if !properties::is_group(&u) {
            return Err(ill("U is not a group", vec![]));
        }
        if phi.len() != g.objects.len() {
            return Err(ill("one embedding per object required", vec![]));
        }
        for (x, map) in phi.iter().enumerate() {
            let object = g.objects[x].clone();
            let bad = |reason: String| CategoryError::BadEmbedding {
                object: object.clone(),
                reason,
            };
            if map.len() != u.size() {
                return Err(bad(format!("{} images for {} elements", map.len(), u.size())));
            }
            for (k, &a) in map.iter().enumerate() {
                if a >= g.arrows.len() || g.src(a) != x || g.tgt(a) != x {
                    return Err(bad(format!("image of {} is not in the vertex monoid", u.name(ElementId(k)))));
                }
            }
            for (p, q, pq) in u.entries() {
                if g.compose(map[p.0], map[q.0]) != Some(map[pq.0]) {
                    return Err(bad(format!("not multiplicative at ({}, {})", u.name(p), u.name(q))));
                }
            }
            let mut seen = BTreeMap::new();
            for (k, &a) in map.iter().enumerate() {
                if let Some(prev) = seen.insert(a, k) {
                    return Err(CategoryError::EmbeddingNotInjective {
                        object,
                        witness: vec![u.name(ElementId(prev)).into(), u.name(ElementId(k)).into()],
                    });
                }
            }
        }
        Ok(GroupoidBundle { g, u, phi })
    }

    /// Arrows of `Û`, the union of the images.
    pub fn u_hat(&self) -> Vec<usize> {
        self.phi.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// The element of `U` that `φ_x` sends to `arrow`.
    pub fn preimage(&self, x: usize, arrow: usize) -> Option<ElementId> {
        self.phi[x].iter().position(|&a| a == arrow).map(ElementId)
    }
}

/// A category `G` factored as `Û·A` through a bundle; `a` lists the arrows of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalSituation {
    pub bundle: GroupoidBundle,
    pub a: Vec<usize>,
}

/// A category `A` and a group `U` with mutual actions on all of `A×U`; the
/// action magma on `A` is [`category_as_magma`] of `category`.
#[derive(Debug, Clone)]
pub struct ExternalSituation {
    pub category: FiniteCategory,
    pub u: Magma,
    pub actions: FiniteActions,
}

type Conditions = Vec<Report<Vec<String>>>;

/// Associativity rules checked for condition 1. With `H = A×U` the right side
/// `α·(β·u)` is defined even when `αβ` is not, so the two backward rules for
/// `αβ` cannot hold over more than one object and are left out.
pub const CONDITION_1: [Axiom; 6] = [
    Axiom::P2aFwd,
    Axiom::P2bFwd,
    Axiom::P2cFwd,
    Axiom::P2cBwd,
    Axiom::P2dFwd,
    Axiom::P2dBwd,
];

/// Condition 1 is the associativity rules; condition 2 is the identity
/// equalities and preservation of source and target.
pub fn external_conditions(sit: &ExternalSituation) -> Conditions {
    let ap = &sit.actions;
    let c = &sit.category;
    let axioms = check_axioms(ap, &ProductDomain::Full, &CONDITION_1, &Fuel::default());
    let first_bad = axioms.iter().find(|r| !r.verdict.is_pass_like());
    let cond1 = match first_bad {
        None => Report::pass("1"),
        Some(r) => {
            let w = r.witness.as_ref();
            let mut witness = vec![r.property.clone()];
            if let Some(w) = w {
                witness.extend(w.alphas.iter().map(|&a| ap.a.name(a).to_string()));
                witness.extend(w.us.iter().map(|&u| ap.u.name(u).to_string()));
            }
            Report::new("1", r.verdict, Some(witness))
        }
    };
    let total = ap.a.size() * ap.u.size() == ap.h_pairs().len();
    let cond2 = match properties::global_identity(&ap.u) {
        _ if !total => Report::fail("2", vec!["H is not all of A×U".to_string()]),
        None => Report::fail("2", vec!["U has no identity".to_string()]),
        Some(one) => {
            let mut bad = None;
            'scan: for alpha in ap.a.elements() {
                let a = alpha.0;
                for u in ap.u.elements() {
                    let (d, e) = ap.act(&alpha, &u).ok().flatten().expect("total");
                    let clause = if ap.u.size() > 0 && c.identities.contains(&a) && d != u {
                        Some("1_x·u = u")
                    } else if c.identities.contains(&a) && e != alpha {
                        Some("(1_x)^u = 1_x")
                    } else if u == one && d != one {
                        Some("α·1 = 1")
                    } else if u == one && e != alpha {
                        Some("α^1 = α")
                    } else if c.src(e.0) != c.src(a) {
                        Some("S(α^u) = S(α)")
                    } else if c.tgt(e.0) != c.tgt(a) {
                        Some("T(α^u) = T(α)")
                    } else {
                        None
                    };
                    if let Some(cl) = clause {
                        bad = Some(vec![cl.to_string(), c.name(a).to_string(), ap.u.name(u).to_string()]);
                        break 'scan;
                    }
                }
            }
            match bad {
                None => Report::pass("2"),
                Some(w) => Report::fail("2", w),
            }
        }
    };
    vec![cond1, cond2]
}

/// Pointwise condition 2 is reported ahead of condition 1 when both fail.
fn require(conditions: &Conditions) -> Result<(), CategoryError> {
    let failing = conditions.iter().filter(|r| !r.verdict.is_pass_like());
    match failing.min_by_key(|r| r.property != "2") {
        None => Ok(()),
        Some(r) => Err(CategoryError::SituationCheckFailed {
            condition: r.property.clone(),
            witness: r.witness.clone().unwrap_or_default(),
        }),
    }
}

/// Output of [`convert_zs_actions`]: the subcategory `A`, its parent arrows,
/// the transported actions and their condition reports.
#[derive(Debug, Clone)]
pub struct Converted {
    pub situation: ExternalSituation,
    pub a_embed: Vec<usize>,
    pub conditions: Conditions,
}

/// Transports the actions between `A` and `Û` to actions on `A×U`:
/// for `α: x → y`, `α^u = α^{φ_x(u)}` and `α·u = φ_y⁻¹(α·φ_x(u))`.
pub fn convert_zs_actions(b: &GroupoidBundle, a_arrows: &[usize]) -> Result<Converted, CategoryError> {
    let (acat, embed) = b.g.subcategory(a_arrows)?;
    let m = category_as_magma(&b.g)?;
    let uhat: Vec<ElementId> = b.u_hat().into_iter().map(ElementId).collect();
    let a_ids: Vec<ElementId> = embed.iter().map(|&p| ElementId(p)).collect();
    let derived = derive_internal_actions(&m, &uhat, &a_ids)?;
    let amag = category_as_magma(&acat)?;
    let a_local: BTreeMap<usize, usize> = embed.iter().enumerate().map(|(l, &p)| (p, l)).collect();
    let mut table = BTreeMap::new();
    for k in 0..embed.len() {
        let (x, y) = (acat.src(k), acat.tgt(k));
        let al = derived.a.from_parent(ElementId(embed[k])).expect("arrow of A");
        for u in b.u.elements() {
            let ul = derived.u.from_parent(ElementId(b.phi[x][u.0])).expect("arrow of Û");
            let (d, e) = derived.actions.act(&al, &ul).ok().flatten().expect("αφ_x(u) is composable");
            let d_parent = derived.u.to_parent(d).0;
            let u2 = b.preimage(y, d_parent).ok_or_else(|| CategoryError::SituationCheckFailed {
                condition: "dot lands in U_y".into(),
                witness: vec![acat.name(k).into(), b.u.name(u).into()],
            })?;
            let e_local = a_local[&derived.a.to_parent(e).0];
            table.insert((ElementId(k), u), (u2, ElementId(e_local)));
        }
    }
    let actions = crate::actions::ActionPair::from_table(amag, b.u.clone(), table);
    let situation = ExternalSituation {
        category: acat,
        u: b.u.clone(),
        actions,
    };
    let conditions = external_conditions(&situation);
    Ok(Converted {
        situation,
        a_embed: embed,
        conditions,
    })
}

/// The external product `U ⋈ A` as a category with `S(u,α) = S(α)` and
/// `T(u,α) = T(α)`, `Û = {(u, 1_x)}` and `Â = {(1, α)}`.
#[derive(Debug, Clone)]
pub struct Internalized {
    pub situation: InternalSituation,
    /// The pair `(u, α)` behind each arrow.
    pub pairs: Vec<(ElementId, ElementId)>,
    pub conditions: Conditions,
}

pub fn external_to_internal(sit: &ExternalSituation) -> Result<Internalized, CategoryError> {
    let mut conditions = external_conditions(sit);
    require(&conditions)?;
    let one = properties::global_identity(&sit.u)
        .filter(|_| properties::is_group(&sit.u))
        .ok_or_else(|| CategoryError::SituationCheckFailed {
            condition: "U is a group".into(),
            witness: vec![],
        })?;
    let c = &sit.category;
    let zs = FiniteProduct::new(sit.actions.clone(), ProductDomain::Full);
    let pm = zs.to_magma(&Fuel::default())?;
    let na = c.arrows.len();
    let mut domain_ok = Report::pass("product defined iff αβ defined");
    'scan: for (i, &(_, alpha)) in pm.pairs.iter().enumerate() {
        for (j, &(_, beta)) in pm.pairs.iter().enumerate() {
            if pm.magma.defined(ElementId(i), ElementId(j)) != c.compose(alpha.0, beta.0).is_some() {
                domain_ok = Report::fail(
                    "product defined iff αβ defined",
                    vec![pm.magma.name(ElementId(i)).into(), pm.magma.name(ElementId(j)).into()],
                );
                break 'scan;
            }
        }
    }
    conditions.push(domain_ok);
    require(&conditions)?;
    let arrows: Vec<Arrow> = pm
        .pairs
        .iter()
        .enumerate()
        .map(|(i, &(_, alpha))| Arrow {
            name: pm.magma.name(ElementId(i)).to_string(),
            src: c.src(alpha.0),
            tgt: c.tgt(alpha.0),
        })
        .collect();
    let g = FiniteCategory::new(
        c.objects.clone(),
        arrows,
        pm.magma.entries().map(|(a, b, ab)| (a.0, b.0, ab.0)),
    )?;
    let idx = |u: ElementId, a: usize| pm.id(&u, &ElementId(a)).expect("E = U×A").0;
    let mut ident = Report::pass("(1,1_x) is the identity at x");
    for x in 0..c.objects.len() {
        if g.identity(x) != idx(one, c.identity(x)) {
            ident = Report::fail("(1,1_x) is the identity at x", vec![c.objects[x].clone()]);
        }
    }
    conditions.push(ident);
    require(&conditions)?;
    let phi: Vec<Vec<usize>> = (0..c.objects.len())
        .map(|x| sit.u.elements().map(|u| idx(u, c.identity(x))).collect())
        .collect();
    let a = (0..na).map(|alpha| idx(one, alpha)).collect();
    let bundle = GroupoidBundle::new(g, sit.u.clone(), phi)?;
    Ok(Internalized {
        situation: InternalSituation { bundle, a },
        pairs: pm.pairs,
        conditions,
    })
}

/// Converts, then checks that `(u, α) ↦ φ_{T(α)}(u)∘α` is an isomorphism
/// from `U ⋈ A` onto `G`.
pub fn internal_to_external(sit: &InternalSituation) -> Result<(Converted, Report<Vec<String>>), CategoryError> {
    let mut conv = convert_zs_actions(&sit.bundle, &sit.a)?;
    require(&conv.conditions)?;
    let b = &sit.bundle;
    let zs = FiniteProduct::new(conv.situation.actions.clone(), ProductDomain::Full);
    let pm = zs.to_magma(&Fuel::default())?;
    let gm = category_as_magma(&b.g)?;
    let acat = &conv.situation.category;
    let map: Vec<ElementId> = pm
        .pairs
        .iter()
        .map(|&(u, alpha)| {
            let parent = conv.a_embed[alpha.0];
            ElementId(b.g.compose(b.phi[acat.tgt(alpha.0)][u.0], parent).expect("composable"))
        })
        .collect();
    let iso = Morphism::new(pm.magma.clone(), gm, map)?.is_isomorphism();
    let report = Report::new(
        "canonical map is an isomorphism",
        iso.verdict,
        iso.witness.map(|w| w.iter().map(|&x| pm.magma.name(x).to_string()).collect()),
    );
    conv.conditions.push(report.clone());
    Ok((conv, report))
}

#[derive(Debug, Clone)]
pub enum Situation {
    Internal(InternalSituation),
    External(ExternalSituation),
}

/// I → II → I up to the canonical isomorphism, or II → I → II exactly.
pub fn int_ext_roundtrip(input: &Situation) -> Result<Conditions, CategoryError> {
    match input {
        Situation::Internal(sit) => {
            let (conv, iso) = internal_to_external(sit)?;
            let back = external_to_internal(&conv.situation)?;
            let b0 = &sit.bundle;
            let b1 = &back.situation.bundle;
            let acat = &conv.situation.category;
            // (u, α) ↦ φ_{T(α)}(u)∘α, back in the original G
            let map: Vec<ElementId> = back
                .pairs
                .iter()
                .map(|&(u, alpha)| {
                    ElementId(
                        b0.g
                            .compose(b0.phi[acat.tgt(alpha.0)][u.0], conv.a_embed[alpha.0])
                            .expect("composable"),
                    )
                })
                .collect();
            let m1 = category_as_magma(&b1.g)?;
            let m0 = category_as_magma(&b0.g)?;
            let mut out = vec![iso];
            let r = Morphism::new(m1.clone(), m0, map.clone())?.is_isomorphism();
            out.push(Report::new(
                "I->II->I isomorphism",
                r.verdict,
                r.witness.map(|w| w.iter().map(|&x| m1.name(x).to_string()).collect()),
            ));
            let mut emb = Report::pass("embeddings and A are carried over");
            for x in 0..b0.g.objects.len() {
                for u in b0.u.elements() {
                    if map[b1.phi[x][u.0]].0 != b0.phi[x][u.0] {
                        emb = Report::fail(
                            "embeddings and A are carried over",
                            vec![b0.g.objects[x].clone(), b0.u.name(u).into()],
                        );
                    }
                }
            }
            let a0: BTreeSet<usize> = sit.a.iter().copied().collect();
            let a1: BTreeSet<usize> = back.situation.a.iter().map(|&k| map[k].0).collect();
            if a0 != a1 {
                emb = Report::fail("embeddings and A are carried over", vec!["A".into()]);
            }
            out.push(emb);
            Ok(out)
        }
        Situation::External(sit) => {
            let int = external_to_internal(sit)?;
            let (conv, iso) = internal_to_external(&int.situation)?;
            let ap0 = &sit.actions;
            let ap1 = &conv.situation.actions;
            // local arrow of the rebuilt A → original arrow, via (1, α)
            let back: Vec<usize> = conv.a_embed.iter().map(|&p| int.pairs[p].1 .0).collect();
            let mut exact = Report::pass("II->I->II actions agree");
            let c0 = &sit.category;
            let c1 = &conv.situation.category;
            for k in 0..back.len() {
                if c1.src(k) != c0.src(back[k]) || c1.tgt(k) != c0.tgt(back[k]) {
                    exact = Report::fail("II->I->II actions agree", vec![c1.name(k).into()]);
                }
                for u in ap1.u.elements() {
                    let new = ap1.act(&ElementId(k), &u).ok().flatten().map(|(d, e)| (d, back[e.0]));
                    let old = ap0.act(&ElementId(back[k]), &u).ok().flatten().map(|(d, e)| (d, e.0));
                    if new != old {
                        exact = Report::fail("II->I->II actions agree", vec![c0.name(back[k]).into(), ap0.u.name(u).into()]);
                    }
                }
            }
            if back.iter().collect::<BTreeSet<_>>().len() != c0.arrows.len() {
                exact = Report::fail("II->I->II actions agree", vec!["A".into()]);
            }
            Ok(vec![iso, exact])
        }
    }
}

/// Overall verdict of a list of condition reports.
pub fn conditions_verdict(c: &Conditions) -> Verdict {
    c.iter().fold(Verdict::Pass, |v, r| v.and(r.verdict))
}
