//! Mutual actions between two multiplicative domains.
//!
//! For `(α, u)` in `H ⊆ A×U` the pair carries `dot(α, u) ∈ U` and
//! `exp(α, u) ∈ A`; internally these come from refactoring `αu` as `u'α'`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

use crate::domain::{Fuel, MulDomain};
use crate::magma::{ElementId, Magma, MagmaError, SubMagma};
use crate::report::Exhausted;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("{subset} subset is not closed: {} · {} = {} leaves it", .witness.0, .witness.1, .witness.2)]
    NotClosed {
        subset: &'static str,
        witness: (ElementId, ElementId, ElementId),
    },
    #[error("element {0} has no factorization u·α")]
    FactorizationMissing(ElementId),
    #[error("element {element} factors twice: {first:?} and {second:?}")]
    FactorizationAmbiguous {
        element: ElementId,
        first: (ElementId, ElementId),
        second: (ElementId, ElementId),
    },
    #[error("action value out of range at ({0}, {1})")]
    CodomainViolation(ElementId, ElementId),
    #[error(transparent)]
    Magma(#[from] MagmaError),
}

/// `(dot, exp)` for one pair, `None` outside `H`.
pub type Acted<UE, AE> = Option<(UE, AE)>;

/// Action evaluator for infinite domains; `Err` means the computation ran out of fuel.
pub type ActFn<AE, UE> = Arc<dyn Fn(&AE, &UE) -> Result<Acted<UE, AE>, Exhausted> + Send + Sync>;

pub enum ActionSource<AE, UE> {
    Table(BTreeMap<(AE, UE), (UE, AE)>),
    Computed(ActFn<AE, UE>),
}

impl<AE: Clone, UE: Clone> Clone for ActionSource<AE, UE> {
    fn clone(&self) -> Self {
        match self {
            ActionSource::Table(t) => ActionSource::Table(t.clone()),
            ActionSource::Computed(f) => ActionSource::Computed(Arc::clone(f)),
        }
    }
}

/// Two domains with mutual actions on `H ⊆ A×U`.
pub struct ActionPair<A: MulDomain, U: MulDomain> {
    pub a: A,
    pub u: U,
    source: ActionSource<A::Elem, U::Elem>,
}

pub type FiniteActions = ActionPair<Magma, Magma>;

impl<A: MulDomain + Clone, U: MulDomain + Clone> Clone for ActionPair<A, U> {
    fn clone(&self) -> Self {
        ActionPair {
            a: self.a.clone(),
            u: self.u.clone(),
            source: self.source.clone(),
        }
    }
}

impl<A: MulDomain + fmt::Debug, U: MulDomain + fmt::Debug> fmt::Debug for ActionPair<A, U> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("ActionPair");
        d.field("a", &self.a).field("u", &self.u);
        match &self.source {
            ActionSource::Table(t) => d.field("table", t),
            ActionSource::Computed(_) => d.field("table", &"<computed>"),
        };
        d.finish()
    }
}

impl<A: MulDomain, U: MulDomain> ActionPair<A, U> {
    pub fn from_table(a: A, u: U, table: BTreeMap<(A::Elem, U::Elem), (U::Elem, A::Elem)>) -> Self {
        ActionPair {
            a,
            u,
            source: ActionSource::Table(table),
        }
    }

    pub fn computed(a: A, u: U, f: ActFn<A::Elem, U::Elem>) -> Self {
        ActionPair {
            a,
            u,
            source: ActionSource::Computed(f),
        }
    }

    /// `(α·u, α^u)`, `None` outside `H`.
    pub fn act(&self, alpha: &A::Elem, u: &U::Elem) -> Result<Acted<U::Elem, A::Elem>, Exhausted> {
        match &self.source {
            ActionSource::Table(t) => Ok(t.get(&(alpha.clone(), u.clone())).cloned()),
            ActionSource::Computed(f) => f(alpha, u),
        }
    }

    pub fn dot(&self, alpha: &A::Elem, u: &U::Elem) -> Option<U::Elem> {
        self.act(alpha, u).ok().flatten().map(|(d, _)| d)
    }

    pub fn exp(&self, alpha: &A::Elem, u: &U::Elem) -> Option<A::Elem> {
        self.act(alpha, u).ok().flatten().map(|(_, e)| e)
    }

    pub fn in_h(&self, alpha: &A::Elem, u: &U::Elem) -> bool {
        matches!(self.act(alpha, u), Ok(Some(_)))
    }

    pub fn table(&self) -> Option<&BTreeMap<(A::Elem, U::Elem), (U::Elem, A::Elem)>> {
        match &self.source {
            ActionSource::Table(t) => Some(t),
            ActionSource::Computed(_) => None,
        }
    }

    /// Overwrites or removes one table entry. Computed actions are first tabulated.
    pub fn set_entry(&mut self, alpha: A::Elem, u: U::Elem, value: Acted<U::Elem, A::Elem>, fuel: &Fuel) {
        if matches!(self.source, ActionSource::Computed(_)) {
            self.source = ActionSource::Table(self.tabulate(fuel));
        }
        if let ActionSource::Table(t) = &mut self.source {
            match value {
                Some(v) => {
                    t.insert((alpha, u), v);
                }
                None => {
                    t.remove(&(alpha, u));
                }
            }
        }
    }

    /// The action table over the enumerated parts of both domains.
    pub fn tabulate(&self, fuel: &Fuel) -> BTreeMap<(A::Elem, U::Elem), (U::Elem, A::Elem)> {
        let mut out = BTreeMap::new();
        let as_ = self.a.enumerate(fuel).elements;
        let us = self.u.enumerate(fuel).elements;
        for alpha in &as_ {
            for u in &us {
                if let Ok(Some(v)) = self.act(alpha, u) {
                    out.insert((alpha.clone(), u.clone()), v);
                }
            }
        }
        out
    }

    /// Whether both families are trivial / the exp family is trivial, over enumerations.
    pub fn trivial_families(&self, fuel: &Fuel) -> (bool, bool) {
        let t = self.tabulate(fuel);
        let dot_trivial = t.iter().all(|((_, u), (d, _))| d == u);
        let exp_trivial = t.iter().all(|((a, _), (_, e))| e == a);
        (dot_trivial, exp_trivial)
    }
}

impl FiniteActions {
    /// Tabulates `f` over `A×U`; values must lie in the carriers.
    pub fn from_finite_fn(
        a: Magma,
        u: Magma,
        f: impl Fn(ElementId, ElementId) -> Option<(ElementId, ElementId)>,
    ) -> Result<FiniteActions, ActionError> {
        let mut t = BTreeMap::new();
        for alpha in a.elements() {
            for x in u.elements() {
                if let Some((d, e)) = f(alpha, x) {
                    if d.0 >= u.size() || e.0 >= a.size() {
                        return Err(ActionError::CodomainViolation(alpha, x));
                    }
                    t.insert((alpha, x), (d, e));
                }
            }
        }
        Ok(ActionPair::from_table(a, u, t))
    }

    /// Both families trivial on `A×U`.
    pub fn trivial(a: Magma, u: Magma) -> FiniteActions {
        Self::from_finite_fn(a, u, |alpha, x| Some((x, alpha))).expect("in range")
    }

    pub fn h_pairs(&self) -> Vec<(ElementId, ElementId)> {
        self.table().map(|t| t.keys().copied().collect()).unwrap_or_default()
    }
}

/// Each element of `M` as its unique `(u, α)` with `x = uα`, in local indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationTable {
    pub parts: Vec<(ElementId, ElementId)>,
}

impl FactorizationTable {
    pub fn factor(&self, x: ElementId) -> (ElementId, ElementId) {
        self.parts[x.0]
    }
}

/// Output of [`derive_internal_actions`].
#[derive(Debug, Clone)]
pub struct Derived {
    /// Actions between the restricted magmas `a` and `u` (local indices).
    pub actions: FiniteActions,
    pub factorization: FactorizationTable,
    pub u: SubMagma,
    pub a: SubMagma,
}

impl Derived {
    /// Parent element of a local pair `(u, α)`, by multiplication in `M`.
    pub fn eval(&self, m: &Magma, u: ElementId, alpha: ElementId) -> Option<ElementId> {
        m.mul(self.u.to_parent(u), self.a.to_parent(alpha))
    }
}

/// Reads mutual actions off a unique factorization `M = U·A`.
pub fn derive_internal_actions(
    m: &Magma,
    u_subset: &[ElementId],
    a_subset: &[ElementId],
) -> Result<Derived, ActionError> {
    for (name, s) in [("U", u_subset), ("A", a_subset)] {
        if let Some(w) = m.closure_violation(s) {
            return Err(ActionError::NotClosed {
                subset: name,
                witness: w,
            });
        }
    }
    let u = m.restrict(u_subset)?;
    let a = m.restrict(a_subset)?;
    let mut found: Vec<Vec<(ElementId, ElementId)>> = vec![Vec::new(); m.size()];
    for ul in u.magma.elements() {
        for al in a.magma.elements() {
            if let Some(x) = m.mul(u.to_parent(ul), a.to_parent(al)) {
                found[x.0].push((ul, al));
            }
        }
    }
    let mut parts = Vec::with_capacity(m.size());
    for x in m.elements() {
        match found[x.0].as_slice() {
            [] => return Err(ActionError::FactorizationMissing(x)),
            [one] => parts.push(*one),
            [first, second, ..] => {
                return Err(ActionError::FactorizationAmbiguous {
                    element: x,
                    first: *first,
                    second: *second,
                })
            }
        }
    }
    let factorization = FactorizationTable { parts };
    let mut table = BTreeMap::new();
    for al in a.magma.elements() {
        for ul in u.magma.elements() {
            if let Some(x) = m.mul(a.to_parent(al), u.to_parent(ul)) {
                table.insert((al, ul), factorization.factor(x));
            }
        }
    }
    let actions = ActionPair::from_table(a.magma.clone(), u.magma.clone(), table);
    Ok(Derived {
        actions,
        factorization,
        u,
        a,
    })
}

/// Elements of `M` named in `names`, for building subsets.
pub fn subset_by_names(m: &Magma, names: &[&str]) -> Result<Vec<ElementId>, MagmaError> {
    let set: BTreeSet<ElementId> = names.iter().map(|n| m.lookup(n)).collect::<Result<_, _>>()?;
    Ok(set.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, Perm};

    #[test]
    fn s4_factorization() {
        let g = catalog::symmetric_group(4);
        let s3: Vec<Perm> = vec![Perm::from_cycles(4, &[&[0, 1]]), Perm::from_cycles(4, &[&[0, 1, 2]])];
        let c = Perm::from_cycles(4, &[&[0, 1, 2, 3]]);
        let u = g.subgroup(&s3);
        let a = g.subgroup(std::slice::from_ref(&c));
        let d = derive_internal_actions(&g.magma, &u, &a).unwrap();
        let cl = d.a.from_parent(g.id_of(&c).unwrap()).unwrap();
        let t = d.u.from_parent(g.id_of(&Perm::from_cycles(4, &[&[1, 2]])).unwrap()).unwrap();
        let dot = d.actions.dot(&cl, &t).unwrap();
        let exp = d.actions.exp(&cl, &t).unwrap();
        assert_eq!(d.u.magma.name(dot), "(0 2 1)");
        assert_eq!(d.a.to_parent(exp), g.id_of(&c.compose(&c)).unwrap());
        // αu = (α·u)(α^u) in M
        let lhs = g.magma.mul(g.id_of(&c).unwrap(), d.u.to_parent(t));
        assert_eq!(lhs, d.eval(&g.magma, dot, exp));
    }

    #[test]
    fn ambiguous_factorization() {
        let c4 = catalog::cyclic(4);
        let half = [ElementId(0), ElementId(2)];
        let err = derive_internal_actions(&c4, &half, &half).unwrap_err();
        assert!(matches!(err, ActionError::FactorizationAmbiguous { element: ElementId(0), .. }));
    }

    #[test]
    fn commuting_factors_act_trivially() {
        let c6 = catalog::cyclic(6);
        let c2 = [ElementId(0), ElementId(3)];
        let c3 = [ElementId(0), ElementId(2), ElementId(4)];
        let d = derive_internal_actions(&c6, &c2, &c3).unwrap();
        assert_eq!(d.actions.trivial_families(&Fuel::default()), (true, true));
    }

    #[test]
    fn closure_and_missing_factorization() {
        let c4 = catalog::cyclic(4);
        let err = derive_internal_actions(&c4, &[ElementId(1)], &[ElementId(0)]).unwrap_err();
        assert!(matches!(err, ActionError::NotClosed { subset: "U", .. }));
        let err = derive_internal_actions(&c4, &[ElementId(0)], &[ElementId(0)]).unwrap_err();
        assert_eq!(err, ActionError::FactorizationMissing(ElementId(1)));
    }

    #[test]
    fn codomain_is_checked() {
        let c2 = catalog::cyclic(2);
        let r = FiniteActions::from_finite_fn(c2.clone(), c2, |_, _| Some((ElementId(5), ElementId(0))));
        assert!(matches!(r, Err(ActionError::CodomainViolation(..))));
    }
}
