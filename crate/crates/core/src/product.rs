//! External products `U ⋈ A` built from mutual actions, and the internal
//! reconstruction, embedding, monoid and group constructions around them.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::actions::{derive_internal_actions, ActionError, ActionPair, Derived, FiniteActions};
use crate::axioms::{check_axioms, Axiom, AxiomReport, ProductDomain};
use crate::domain::{Enumeration, Fuel, MulDomain};
use crate::magma::{ElementId, Magma, MagmaError, Morphism};
use crate::properties::{self, check_property, Property, PropertyReport};
use crate::report::{Report, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProductError {
    #[error("multiplication is not categorical: {0}")]
    NotCategorical(PropertyReport),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Magma(#[from] MagmaError),
    #[error("hypothesis {hypothesis} failed{}", witness.as_ref().map(|w| format!(" at {w}")).unwrap_or_default())]
    HypothesisFailed {
        hypothesis: String,
        witness: Option<String>,
    },
    #[error("conclusion {check} failed{}", witness.as_ref().map(|w| format!(" at {w}")).unwrap_or_default())]
    ConclusionFailed {
        check: String,
        witness: Option<String>,
    },
    #[error("embedding clause {clause} failed at {witness}")]
    ClauseFailed { clause: &'static str, witness: String },
    #[error("product ({0}) lands outside E")]
    NotClosed(String),
    #[error("product carrier is not finite within fuel")]
    Incomplete,
}

/// The pair set `E` under `(u,α)(v,β) = (u(α·v), α^vβ)`.
#[derive(Debug, Clone)]
pub struct ZsProduct<A: MulDomain, U: MulDomain> {
    pub actions: ActionPair<A, U>,
    pub e: ProductDomain<U::Elem, A::Elem>,
}

pub type FiniteProduct = ZsProduct<Magma, Magma>;

impl<A: MulDomain, U: MulDomain> ZsProduct<A, U> {
    pub fn new(actions: ActionPair<A, U>, e: ProductDomain<U::Elem, A::Elem>) -> Self {
        ZsProduct { actions, e }
    }

    /// Defined iff `(α,v) ∈ H`, `u D (α·v)` and `α^v D β`. Running out of
    /// fuel inside a computed action counts as undefined.
    pub fn product(&self, x: &(U::Elem, A::Elem), y: &(U::Elem, A::Elem)) -> Option<(U::Elem, A::Elem)> {
        let ((u, alpha), (v, beta)) = (x, y);
        let (dot, exp) = self.actions.act(alpha, v).ok()??;
        let left = self.actions.u.mul(u, &dot)?;
        let right = self.actions.a.mul(&exp, beta)?;
        Some((left, right))
    }

    /// Finite table of the product, with elements of `E` in ascending order.
    pub fn to_magma(&self, fuel: &Fuel) -> Result<ProductMagma<U::Elem, A::Elem>, ProductError> {
        let en = self.enumerate(fuel);
        if !en.complete {
            return Err(ProductError::Incomplete);
        }
        let pairs = en.elements;
        let index: BTreeMap<(U::Elem, A::Elem), ElementId> =
            pairs.iter().cloned().enumerate().map(|(i, p)| (p, ElementId(i))).collect();
        let mut entries = Vec::new();
        for (i, x) in pairs.iter().enumerate() {
            for (j, y) in pairs.iter().enumerate() {
                if let Some(z) = self.product(x, y) {
                    match index.get(&z) {
                        Some(k) => entries.push(((i, j), k.0)),
                        None => return Err(ProductError::NotClosed(self.render(&z))),
                    }
                }
            }
        }
        let names = pairs.iter().map(|p| self.render(p)).collect();
        let magma = Magma::new(pairs.len(), names, entries)?;
        Ok(ProductMagma { magma, pairs, index })
    }
}

impl<A: MulDomain, U: MulDomain> MulDomain for ZsProduct<A, U> {
    type Elem = (U::Elem, A::Elem);

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.product(a, b)
    }

    fn enumerate(&self, fuel: &Fuel) -> Enumeration<Self::Elem> {
        let eu = self.actions.u.enumerate(fuel);
        let ea = self.actions.a.enumerate(fuel);
        let mut elements = Vec::new();
        for u in &eu.elements {
            for a in &ea.elements {
                if self.e.contains(u, a) {
                    elements.push((u.clone(), a.clone()));
                }
            }
        }
        Enumeration {
            elements,
            complete: eu.complete && ea.complete,
        }
    }

    fn render(&self, (u, a): &Self::Elem) -> String {
        format!("({},{})", self.actions.u.render(u), self.actions.a.render(a))
    }
}

/// A finite product table together with its pair labels.
#[derive(Debug, Clone)]
pub struct ProductMagma<UE: Ord, AE: Ord> {
    pub magma: Magma,
    pub pairs: Vec<(UE, AE)>,
    pub index: BTreeMap<(UE, AE), ElementId>,
}

impl<UE: Ord + Clone, AE: Ord + Clone> ProductMagma<UE, AE> {
    pub fn id(&self, u: &UE, a: &AE) -> Option<ElementId> {
        self.index.get(&(u.clone(), a.clone())).copied()
    }

    pub fn pair(&self, x: ElementId) -> &(UE, AE) {
        &self.pairs[x.0]
    }
}

/// An external product with its closure and definedness analysis.
#[derive(Debug, Clone)]
pub struct ExternalProduct<A: MulDomain, U: MulDomain> {
    pub product: ZsProduct<A, U>,
    /// `P1a`, `P1b`, `P1c` in order; all passing means closure on `E`.
    pub closure: Vec<AxiomReport<A::Elem, U::Elem>>,
    /// `H ⊆ π_A(E) × π_U(E)`; the witness is a pair of `H` outside it.
    pub h_in_projections: Report<(A::Elem, U::Elem)>,
    /// Whether every pair of `E` multiplies; the witness is a failing pair.
    pub total_on_e: Report<((U::Elem, A::Elem), (U::Elem, A::Elem))>,
}

impl<A: MulDomain, U: MulDomain> ExternalProduct<A, U> {
    pub fn closed(&self) -> Verdict {
        self.closure.iter().fold(Verdict::Pass, |v, r| v.and(r.verdict))
    }
}

pub fn external_product<A: MulDomain, U: MulDomain>(
    actions: ActionPair<A, U>,
    e: ProductDomain<U::Elem, A::Elem>,
    fuel: &Fuel,
) -> ExternalProduct<A, U> {
    let closure = check_axioms(&actions, &e, &[Axiom::P1a, Axiom::P1b, Axiom::P1c], fuel);
    let product = ZsProduct::new(actions, e);
    let en = product.enumerate(fuel);
    let bounded = if en.complete { Verdict::Pass } else { Verdict::PassUpToFuel };

    let us: Vec<&U::Elem> = en.elements.iter().map(|(u, _)| u).collect();
    let als: Vec<&A::Elem> = en.elements.iter().map(|(_, a)| a).collect();
    let ea = product.actions.a.enumerate(fuel);
    let eu = product.actions.u.enumerate(fuel);
    let mut h_report = Report::new("h_in_projections", bounded, None);
    'outer: for a in &ea.elements {
        for u in &eu.elements {
            match product.actions.act(a, u) {
                Ok(Some(_)) => {
                    if !als.contains(&a) || !us.contains(&u) {
                        h_report = Report::fail("h_in_projections", (a.clone(), u.clone()));
                        break 'outer;
                    }
                }
                Ok(None) => {}
                Err(_) => h_report.verdict = h_report.verdict.and(Verdict::Inconclusive),
            }
        }
    }

    let mut total = Report::new("total_on_e", bounded, None);
    'pairs: for x in &en.elements {
        for y in &en.elements {
            if product.product(x, y).is_none() {
                total = Report::fail("total_on_e", (x.clone(), y.clone()));
                break 'pairs;
            }
        }
    }
    ExternalProduct {
        product,
        closure,
        h_in_projections: h_report,
        total_on_e: total,
    }
}

/// The map `(u,α) ↦ uα` from the external product onto `M`.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub derived: Derived,
    pub product: ProductMagma<ElementId, ElementId>,
    pub morphism: Morphism,
    /// Table positions (over `|E|²`) where definedness or value disagree.
    pub mismatches: usize,
    pub entries_checked: usize,
}

pub fn reconstruction_iso(
    m: &Magma,
    u_subset: &[ElementId],
    a_subset: &[ElementId],
) -> Result<Reconstruction, ProductError> {
    let cat = check_property(m, Property::Categorical);
    if cat.failed() {
        return Err(ProductError::NotCategorical(cat));
    }
    let derived = derive_internal_actions(m, u_subset, a_subset)?;
    let mut e = std::collections::BTreeSet::new();
    for u in derived.u.magma.elements() {
        for a in derived.a.magma.elements() {
            if derived.eval(m, u, a).is_some() {
                e.insert((u, a));
            }
        }
    }
    let zs = ZsProduct::new(derived.actions.clone(), ProductDomain::Pairs(e));
    let product = zs.to_magma(&Fuel::default())?;
    let map: Vec<ElementId> = product
        .pairs
        .iter()
        .map(|&(u, a)| derived.eval(m, u, a).expect("pair in E"))
        .collect();
    let morphism = Morphism::new(product.magma.clone(), m.clone(), map)?;
    let mut mismatches = 0;
    let n = product.magma.size();
    for x in product.magma.elements() {
        for y in product.magma.elements() {
            let lhs = product.magma.mul(x, y).map(|z| morphism.apply(z));
            let rhs = m.mul(morphism.apply(x), morphism.apply(y));
            if lhs != rhs {
                mismatches += 1;
            }
        }
    }
    if !morphism.is_bijective() {
        mismatches += 1;
    }
    Ok(Reconstruction {
        derived,
        product,
        morphism,
        mismatches,
        entries_checked: n * n,
    })
}

/// Maps `i: A → U` and `j: U → A`, indexed by element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingFns {
    pub i: Vec<ElementId>,
    pub j: Vec<ElementId>,
}

impl EmbeddingFns {
    /// `i ≡ i0`, `j ≡ j0`.
    pub fn constant(a_size: usize, u_size: usize, i0: ElementId, j0: ElementId) -> EmbeddingFns {
        EmbeddingFns {
            i: vec![i0; a_size],
            j: vec![j0; u_size],
        }
    }
}

/// Homomorphic embeddings `α ↦ (i(α), α)` and `u ↦ (u, j(u))` into the product.
#[derive(Debug, Clone)]
pub struct Embeddings {
    pub product: ProductMagma<ElementId, ElementId>,
    pub from_a: Morphism,
    pub from_u: Morphism,
}

pub fn verify_embedding_functions(
    ap: &FiniteActions,
    e: &ProductDomain<ElementId, ElementId>,
    emb: &EmbeddingFns,
) -> Result<Embeddings, ProductError> {
    let (a, u) = (&ap.a, &ap.u);
    if emb.i.len() != a.size() || emb.j.len() != u.size() {
        return Err(ProductError::ClauseFailed {
            clause: "shape",
            witness: format!("i has {} entries, j has {}", emb.i.len(), emb.j.len()),
        });
    }
    let (i, j) = (|x: ElementId| emb.i[x.0], |x: ElementId| emb.j[x.0]);
    let fail = |clause: &'static str, witness: String| Err(ProductError::ClauseFailed { clause, witness });
    let an = |x: ElementId| a.name(x).to_string();
    let un = |x: ElementId| u.name(x).to_string();

    for x in u.elements() {
        let jx = j(x);
        if !properties::is_full_identity(a, jx) {
            return fail("j-full-identity", un(x));
        }
        if !e.contains(&x, &jx) {
            return fail("j-in-e", un(x));
        }
        match ap.act(&jx, &x).ok().flatten() {
            None => return fail("j-in-h", un(x)),
            Some((d, ex)) => {
                if d != x {
                    return fail("j-dot", un(x));
                }
                if ex != jx {
                    return fail("j-exp", un(x));
                }
            }
        }
        if !a.defined(jx, jx) {
            return fail("j-square", un(x));
        }
    }
    for (x, y, xy) in u.entries() {
        if j(x) != j(y) || j(x) != j(xy) {
            return fail("j-product", format!("({},{})", un(x), un(y)));
        }
    }
    for al in a.elements() {
        let ia = i(al);
        if !properties::is_full_identity(u, ia) {
            return fail("i-full-identity", an(al));
        }
        if !e.contains(&ia, &al) {
            return fail("i-in-e", an(al));
        }
        match ap.act(&al, &ia).ok().flatten() {
            None => return fail("i-in-h", an(al)),
            Some((d, ex)) => {
                if d != ia {
                    return fail("i-dot", an(al));
                }
                if ex != al {
                    return fail("i-exp", an(al));
                }
            }
        }
        if !u.defined(ia, ia) {
            return fail("i-square", an(al));
        }
    }
    for (x, y, xy) in a.entries() {
        if i(x) != i(y) || i(x) != i(xy) {
            return fail("i-product", format!("({},{})", an(x), an(y)));
        }
    }
    for ((al, x), (d, ex)) in &ap.tabulate(&Fuel::default()) {
        if !u.defined(i(*al), *d) || !a.defined(*ex, j(*x)) {
            return fail("h-cross", format!("({},{})", an(*al), un(*x)));
        }
    }
    for x in u.elements() {
        for al in a.elements() {
            if !e.contains(&x, &al) {
                continue;
            }
            let w = format!("({},{})", un(x), an(al));
            let (jx, ia) = (j(x), i(al));
            match ap.act(&jx, &ia).ok().flatten() {
                Some((d, ex)) if d == ia && ex == jx => {}
                _ => return fail("e-cross-action", w),
            }
            if !u.defined(x, ia) || !a.defined(jx, al) {
                return fail("e-cross-defined", w);
            }
        }
    }

    let zs = ZsProduct::new(ap.clone(), e.clone());
    let product = zs.to_magma(&Fuel::default())?;
    let locate = |x: ElementId, al: ElementId| product.id(&x, &al);
    let mut a_map = Vec::new();
    for al in a.elements() {
        match locate(i(al), al) {
            Some(p) => a_map.push(p),
            None => return fail("i-in-e", an(al)),
        }
    }
    let mut u_map = Vec::new();
    for x in u.elements() {
        match locate(x, j(x)) {
            Some(p) => u_map.push(p),
            None => return fail("j-in-e", un(x)),
        }
    }
    let from_a = Morphism::new(a.clone(), product.magma.clone(), a_map)?;
    let from_u = Morphism::new(u.clone(), product.magma.clone(), u_map)?;
    if let Some(w) = from_a.is_homomorphism().witness {
        return fail("a-homomorphism", format!("({},{})", an(w[0]), an(w[1])));
    }
    if let Some(w) = from_u.is_homomorphism().witness {
        return fail("u-homomorphism", format!("({},{})", un(w[0]), un(w[1])));
    }
    for (k, &(x, al)) in product.pairs.iter().enumerate() {
        let mut found = Vec::new();
        for y in u.elements() {
            for be in a.elements() {
                if product.magma.mul(from_u.apply(y), from_a.apply(be)) == Some(ElementId(k)) {
                    found.push((y, be));
                }
            }
        }
        if found != [(x, al)] {
            return fail("factorization", format!("({},{})", un(x), an(al)));
        }
    }
    for ((al, x), (d, ex)) in &ap.tabulate(&Fuel::default()) {
        let lhs = product.magma.mul(from_a.apply(*al), from_u.apply(*x));
        if lhs.is_none() || lhs != product.id(d, ex) {
            return fail("action-preservation", format!("({},{})", an(*al), un(*x)));
        }
    }
    Ok(Embeddings {
        product,
        from_a,
        from_u,
    })
}

fn require(reports: Vec<AxiomReport<ElementId, ElementId>>, ap: &FiniteActions) -> Result<(), ProductError> {
    for r in reports {
        if !r.passed() {
            let witness = r.witness.as_ref().map(|w| {
                let a: Vec<&str> = w.alphas.iter().map(|x| ap.a.name(*x)).collect();
                let u: Vec<&str> = w.us.iter().map(|x| ap.u.name(*x)).collect();
                format!("α={:?} u={:?}", a, u)
            });
            return Err(ProductError::HypothesisFailed {
                hypothesis: r.property,
                witness,
            });
        }
    }
    Ok(())
}

fn hypothesis(ok: bool, name: &str) -> Result<(), ProductError> {
    if ok {
        Ok(())
    } else {
        Err(ProductError::HypothesisFailed {
            hypothesis: name.to_string(),
            witness: None,
        })
    }
}

/// A product on all of `U×A` with its finite table.
#[derive(Debug, Clone)]
pub struct FullProduct {
    pub product: FiniteProduct,
    pub table: ProductMagma<ElementId, ElementId>,
    pub identity: ElementId,
}

/// `U ⋈ A` for monoids, after checking `H = A×U`, `P2a–d`, `P7a, d, e, f`.
pub fn monoid_product(ap: &FiniteActions) -> Result<FullProduct, ProductError> {
    hypothesis(properties::is_monoid(&ap.u), "U is a monoid")?;
    hypothesis(properties::is_monoid(&ap.a), "A is a monoid")?;
    let mut axes = vec![Axiom::P6];
    axes.extend(Axiom::P2);
    axes.extend([Axiom::P7a, Axiom::P7d, Axiom::P7e, Axiom::P7f]);
    build_full(ap, &axes, false)
}

/// `U ⋈ A` for groups, after checking `P2a–d`, `P6`, `P7a–h`.
pub fn group_product(ap: &FiniteActions) -> Result<FullProduct, ProductError> {
    hypothesis(properties::is_group(&ap.u), "U is a group")?;
    hypothesis(properties::is_group(&ap.a), "A is a group")?;
    let mut axes = vec![Axiom::P6];
    axes.extend(Axiom::P2);
    axes.extend(Axiom::P7);
    build_full(ap, &axes, true)
}

fn build_full(ap: &FiniteActions, axes: &[Axiom], group: bool) -> Result<FullProduct, ProductError> {
    let fuel = Fuel::default();
    require(check_axioms(ap, &ProductDomain::Full, axes, &fuel), ap)?;
    let product = ZsProduct::new(ap.clone(), ProductDomain::Full);
    let table = product.to_magma(&fuel)?;
    let assoc = check_property(&table.magma, Property::Assoc);
    if assoc.failed() {
        return Err(ProductError::ConclusionFailed {
            check: "associative".into(),
            witness: assoc.witness.map(|w| format!("{w:?}")),
        });
    }
    let one_u = properties::global_identity(&ap.u).expect("checked monoid");
    let one_a = properties::global_identity(&ap.a).expect("checked monoid");
    let identity = table.id(&one_u, &one_a).expect("full E");
    if !properties::is_global_identity(&table.magma, identity) {
        return Err(ProductError::ConclusionFailed {
            check: "global identity".into(),
            witness: Some(table.magma.name(identity).to_string()),
        });
    }
    if group && !properties::is_group(&table.magma) {
        return Err(ProductError::ConclusionFailed {
            check: "group".into(),
            witness: None,
        });
    }
    Ok(FullProduct {
        product,
        table,
        identity,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Direct,
    Semidirect,
    General,
}

impl std::fmt::Display for ProductKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProductKind::Direct => "direct",
            ProductKind::Semidirect => "semidirect",
            ProductKind::General => "general",
        })
    }
}

/// Direct iff both families are trivial; semidirect iff only the exp family is.
pub fn classify_product<A: MulDomain, U: MulDomain>(ap: &ActionPair<A, U>, fuel: &Fuel) -> ProductKind {
    match ap.trivial_families(fuel) {
        (true, true) => ProductKind::Direct,
        (false, true) => ProductKind::Semidirect,
        _ => ProductKind::General,
    }
}

/// `(α^u)⁻¹ = (α⁻¹)^(α·u)` over `H`, for `A` a group; the witness is `(α, u)`.
pub fn check_inverse_formula(ap: &FiniteActions) -> Report<(ElementId, ElementId)> {
    let tag = "inverse_formula";
    if !properties::is_group(&ap.a) {
        return Report::new(tag, Verdict::NotApplicable, None).with_note("A is not a group");
    }
    let inv = |g: ElementId| properties::inverse(&ap.a, g).expect("group");
    for ((alpha, u), (d, e)) in &ap.tabulate(&Fuel::default()) {
        if ap.exp(&inv(*alpha), d) != Some(inv(*e)) {
            return Report::fail(tag, (*alpha, *u));
        }
    }
    Report::pass(tag)
}

/// Conjugation of `C_n` by `C_2`: `f·r^k = r^{-k}`, exp trivial, as actions of `A = C_2` on `U = C_n`.
pub fn dihedral_actions(n: usize) -> FiniteActions {
    let u = crate::catalog::cyclic(n);
    let a = crate::catalog::cyclic_named(2, "f");
    FiniteActions::from_finite_fn(a, u, |f, r| {
        let d = if f.0 == 1 { (n - r.0) % n } else { r.0 };
        Some((ElementId(d), f))
    })
    .expect("in range")
}
