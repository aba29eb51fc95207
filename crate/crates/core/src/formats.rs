//! JSON file formats. Every `to_*` output re-loads to an equal value, and
//! serialization is deterministic (fields in declaration order, sorted tables).

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use crate::actions::{ActionPair, FiniteActions};
use crate::axioms::ProductDomain;
use crate::categories::{
    category_as_magma, Arrow, CategoryError, ExternalSituation, FiniteCategory, GroupoidBundle, InternalSituation,
};
use crate::domain::Fuel;
use crate::magma::{ElementId, Magma, MagmaError};
use crate::presentations::{monoid_from_presentation, GenActions, PresentationError};
use crate::rewriting::{AbstractRel, Alphabet, Kind, RewriteError, Rule, RuleSet, Word};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Magma(#[from] MagmaError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FormatError> {
    std::fs::write(path, to_json(value)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// `{"size", "names", "table": [[i, j, k], ...]}` meaning `i·j = k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MagmaFile {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub table: Vec<[usize; 3]>,
}

impl MagmaFile {
    pub fn from_magma(m: &Magma) -> MagmaFile {
        MagmaFile {
            size: m.size(),
            names: Some(m.names().to_vec()),
            table: m.entries().map(|(a, b, c)| [a.0, b.0, c.0]).collect(),
        }
    }

    /// Missing names default to the indices.
    pub fn to_magma(&self) -> Result<Magma, FormatError> {
        let names = self
            .names
            .clone()
            .unwrap_or_else(|| (0..self.size).map(|i| i.to_string()).collect());
        Ok(Magma::new(self.size, names, self.table.iter().map(|t| ((t[0], t[1]), t[2])))?)
    }
}

/// A product file: the product's magma plus the pairs behind its elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFile {
    #[serde(flatten)]
    pub magma: MagmaFile,
    /// `(u, α)` by name for each element.
    pub pairs: Vec<[String; 2]>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub operation: String,
    #[serde(rename = "U")]
    pub u: MagmaFile,
    #[serde(rename = "A")]
    pub a: MagmaFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
}

/// Inline magma, a presentation with finitely many normal forms, or a path
/// relative to the referring file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MagmaRef {
    Inline(MagmaFile),
    Presentation { presentation: PresentationFile },
    Path(String),
}

impl MagmaRef {
    pub fn resolve(&self, base: &Path) -> Result<Magma, FormatError> {
        match self {
            MagmaRef::Inline(f) => f.to_magma(),
            MagmaRef::Presentation { presentation } => {
                let rs = presentation.to_rules()?;
                Ok(monoid_from_presentation(&rs, &Fuel::default())?.magma)
            }
            MagmaRef::Path(p) => {
                let path = base.join(p);
                let f: MagmaFile = read_json(&path)?;
                f.to_magma()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairSet {
    Full(String),
    Pairs(Vec<[String; 2]>),
}

impl PairSet {
    fn full() -> PairSet {
        PairSet::Full("full".into())
    }
}

/// `{"A", "U", "H": "full" | [[α,u]...], "dot": [[α,u,u']...], "exp": [[α,u,α']...]}`,
/// elements by name. An optional `"E"` restricts the product domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionsFile {
    #[serde(rename = "A")]
    pub a: MagmaRef,
    #[serde(rename = "U")]
    pub u: MagmaRef,
    #[serde(rename = "H")]
    pub h: PairSet,
    pub dot: Vec<[String; 3]>,
    pub exp: Vec<[String; 3]>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<PairSet>,
}

/// Loaded actions with the product domain.
pub struct LoadedActions {
    pub actions: FiniteActions,
    pub e: ProductDomain<ElementId, ElementId>,
}

impl ActionsFile {
    pub fn from_actions(ap: &FiniteActions, e: &ProductDomain<ElementId, ElementId>) -> ActionsFile {
        let table = ap.tabulate(&Fuel::default());
        let (an, un) = (|x: ElementId| ap.a.name(x).to_string(), |x: ElementId| ap.u.name(x).to_string());
        let full = table.len() == ap.a.size() * ap.u.size();
        let h = if full {
            PairSet::full()
        } else {
            PairSet::Pairs(table.keys().map(|&(a, u)| [an(a), un(u)]).collect())
        };
        ActionsFile {
            a: MagmaRef::Inline(MagmaFile::from_magma(&ap.a)),
            u: MagmaRef::Inline(MagmaFile::from_magma(&ap.u)),
            h,
            dot: table.iter().map(|(&(a, u), &(d, _))| [an(a), un(u), un(d)]).collect(),
            exp: table.iter().map(|(&(a, u), &(_, x))| [an(a), un(u), an(x)]).collect(),
            e: match e {
                ProductDomain::Full => None,
                ProductDomain::Pairs(p) => Some(PairSet::Pairs(p.iter().map(|&(u, a)| [un(u), an(a)]).collect())),
            },
        }
    }

    pub fn load(&self, base: &Path) -> Result<LoadedActions, FormatError> {
        let a = self.a.resolve(base)?;
        let u = self.u.resolve(base)?;
        let h: BTreeSet<(ElementId, ElementId)> = match &self.h {
            PairSet::Full(s) if s == "full" => a.elements().flat_map(|x| u.elements().map(move |y| (x, y))).collect(),
            PairSet::Full(s) => return Err(invalid(format!("H must be \"full\" or a pair list, got {s:?}"))),
            PairSet::Pairs(p) => p
                .iter()
                .map(|[x, y]| Ok((a.lookup(x)?, u.lookup(y)?)))
                .collect::<Result<_, FormatError>>()?,
        };
        let mut dot = BTreeMap::new();
        for [x, y, d] in &self.dot {
            if dot.insert((a.lookup(x)?, u.lookup(y)?), u.lookup(d)?).is_some() {
                return Err(invalid(format!("duplicate dot entry ({x}, {y})")));
            }
        }
        let mut exp = BTreeMap::new();
        for [x, y, e] in &self.exp {
            if exp.insert((a.lookup(x)?, u.lookup(y)?), a.lookup(e)?).is_some() {
                return Err(invalid(format!("duplicate exp entry ({x}, {y})")));
            }
        }
        let mut table = BTreeMap::new();
        for &(x, y) in &h {
            match (dot.get(&(x, y)), exp.get(&(x, y))) {
                (Some(&d), Some(&e)) => {
                    table.insert((x, y), (d, e));
                }
                _ => return Err(invalid(format!("no action given for ({}, {}) in H", a.name(x), u.name(y)))),
            }
        }
        if let Some(k) = dot.keys().chain(exp.keys()).find(|k| !h.contains(k)) {
            return Err(invalid(format!("action given outside H at ({}, {})", a.name(k.0), u.name(k.1))));
        }
        let e = match &self.e {
            None => ProductDomain::Full,
            Some(PairSet::Full(s)) if s == "full" => ProductDomain::Full,
            Some(PairSet::Full(s)) => return Err(invalid(format!("E must be \"full\" or a pair list, got {s:?}"))),
            Some(PairSet::Pairs(p)) => ProductDomain::Pairs(
                p.iter()
                    .map(|[y, x]| Ok((u.lookup(y)?, a.lookup(x)?)))
                    .collect::<Result<_, FormatError>>()?,
            ),
        };
        Ok(LoadedActions {
            actions: ActionPair::from_table(a, u, table),
            e,
        })
    }
}

/// `{"alphabet", "kind", "rules": [["yx","xyy"], ...]}`; words over
/// single-character names, multi-character names bracketed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub alphabet: Vec<String>,
    pub kind: Kind,
    pub rules: Vec<[String; 2]>,
    /// Per-rule origin for product presentations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origins: Option<Vec<String>>,
}

impl PresentationFile {
    pub fn from_rules(rs: &RuleSet) -> PresentationFile {
        PresentationFile {
            alphabet: rs.alphabet().names().to_vec(),
            kind: rs.kind(),
            rules: rs.rules().iter().map(|r| [rs.render(&r.lhs), rs.render(&r.rhs)]).collect(),
            origins: None,
        }
    }

    pub fn to_rules(&self) -> Result<RuleSet, FormatError> {
        let alphabet = Alphabet::new(self.alphabet.clone())?;
        let rules = self
            .rules
            .iter()
            .map(|[l, r]| Ok(Rule::new(alphabet.parse(l)?, alphabet.parse(r)?)))
            .collect::<Result<Vec<_>, RewriteError>>()?;
        Ok(RuleSet::new(alphabet, rules, self.kind)?)
    }
}

/// `{"X", "Y", "dot": [["y","x","x'"]...], "exp": [["y","x","word"]...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenActionsFile {
    #[serde(rename = "X")]
    pub x: Vec<String>,
    #[serde(rename = "Y")]
    pub y: Vec<String>,
    pub dot: Vec<[String; 3]>,
    pub exp: Vec<[String; 3]>,
}

impl GenActionsFile {
    pub fn from_gen(ga: &GenActions) -> GenActionsFile {
        GenActionsFile {
            x: ga.x.names().to_vec(),
            y: ga.y.names().to_vec(),
            dot: ga
                .dot
                .iter()
                .map(|(&(j, i), &d)| [ga.y.name(j).into(), ga.x.name(i).into(), ga.x.name(d).into()])
                .collect(),
            exp: ga
                .exp
                .iter()
                .map(|(&(j, i), w)| [ga.y.name(j).into(), ga.x.name(i).into(), ga.y.render(w)])
                .collect(),
        }
    }

    pub fn to_gen(&self) -> Result<GenActions, FormatError> {
        let x = Alphabet::new(self.x.clone())?;
        let y = Alphabet::new(self.y.clone())?;
        let dot: Vec<(&str, &str, &str)> = self.dot.iter().map(|[a, b, c]| (a.as_str(), b.as_str(), c.as_str())).collect();
        let exp: Vec<(&str, &str, &str)> = self.exp.iter().map(|[a, b, c]| (a.as_str(), b.as_str(), c.as_str())).collect();
        Ok(GenActions::parse(x, y, &dot, &exp)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismEntry {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// `{"objects", "morphisms": [{"name","src","tgt"}...], "compose": [["a","b","a∘b"]...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub compose: Vec<[String; 3]>,
}

impl CategoryFile {
    pub fn from_category(c: &FiniteCategory) -> CategoryFile {
        CategoryFile {
            objects: c.objects().to_vec(),
            morphisms: c
                .arrows()
                .iter()
                .map(|a| MorphismEntry {
                    name: a.name.clone(),
                    src: c.objects()[a.src].clone(),
                    tgt: c.objects()[a.tgt].clone(),
                })
                .collect(),
            compose: c
                .composites()
                .map(|(a, b, ab)| [c.name(a).into(), c.name(b).into(), c.name(ab).into()])
                .collect(),
        }
    }

    pub fn to_category(&self) -> Result<FiniteCategory, FormatError> {
        let obj = |s: &str| {
            self.objects
                .iter()
                .position(|o| o == s)
                .ok_or_else(|| invalid(format!("unknown object {s:?}")))
        };
        let arrows = self
            .morphisms
            .iter()
            .map(|m| {
                Ok(Arrow {
                    name: m.name.clone(),
                    src: obj(&m.src)?,
                    tgt: obj(&m.tgt)?,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        let arr = |s: &str| {
            self.morphisms
                .iter()
                .position(|m| m.name == s)
                .ok_or_else(|| invalid(format!("unknown morphism {s:?}")))
        };
        let comp = self
            .compose
            .iter()
            .map(|[a, b, c]| Ok((arr(a)?, arr(b)?, arr(c)?)))
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(FiniteCategory::new(self.objects.clone(), arrows, comp)?)
    }
}

/// A category file plus `"U"`, `"phi": {"x": [["u","morphism"]...]}` and
/// optionally `"A"`, the morphisms of the subcategory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleFile {
    #[serde(flatten)]
    pub category: CategoryFile,
    #[serde(rename = "U")]
    pub u: MagmaFile,
    pub phi: BTreeMap<String, Vec<[String; 2]>>,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<String>>,
}

impl BundleFile {
    pub fn from_situation(sit: &InternalSituation) -> BundleFile {
        let b = &sit.bundle;
        let g = &b.g;
        let phi = (0..g.objects().len())
            .map(|x| {
                let entries = b
                    .u
                    .elements()
                    .map(|u| [b.u.name(u).to_string(), g.name(b.phi[x][u.0]).to_string()])
                    .collect();
                (g.objects()[x].clone(), entries)
            })
            .collect();
        BundleFile {
            category: CategoryFile::from_category(g),
            u: MagmaFile::from_magma(&b.u),
            phi,
            a: Some(sit.a.iter().map(|&i| g.name(i).to_string()).collect()),
        }
    }

    pub fn to_bundle(&self) -> Result<GroupoidBundle, FormatError> {
        let g = self.category.to_category()?;
        let u = self.u.to_magma()?;
        let mut phi = Vec::new();
        for x in g.objects() {
            let entries = self.phi.get(x).ok_or_else(|| invalid(format!("no embedding for object {x:?}")))?;
            let mut map = vec![None; u.size()];
            for [ue, arrow] in entries {
                let k = u.lookup(ue)?;
                let a = g.arrow(arrow).ok_or_else(|| invalid(format!("unknown morphism {arrow:?}")))?;
                if map[k.0].replace(a).is_some() {
                    return Err(invalid(format!("duplicate image of {ue:?} at object {x:?}")));
                }
            }
            let map = map
                .into_iter()
                .enumerate()
                .map(|(k, a)| a.ok_or_else(|| invalid(format!("no image of {:?} at object {x:?}", u.name(ElementId(k))))))
                .collect::<Result<Vec<_>, _>>()?;
            phi.push(map);
        }
        Ok(GroupoidBundle::new(g, u, phi)?)
    }

    pub fn to_situation(&self) -> Result<InternalSituation, FormatError> {
        let bundle = self.to_bundle()?;
        let names = self.a.as_ref().ok_or_else(|| invalid("bundle has no \"A\" list"))?;
        let a = names
            .iter()
            .map(|n| bundle.g.arrow(n).ok_or_else(|| invalid(format!("unknown morphism {n:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(InternalSituation { bundle, a })
    }
}

/// A category `A`, a group `U`, and actions on all of `A×U` by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalFile {
    #[serde(flatten)]
    pub category: CategoryFile,
    #[serde(rename = "U")]
    pub u: MagmaFile,
    pub dot: Vec<[String; 3]>,
    pub exp: Vec<[String; 3]>,
}

impl ExternalFile {
    pub fn from_situation(sit: &ExternalSituation) -> ExternalFile {
        let f = ActionsFile::from_actions(&sit.actions, &ProductDomain::Full);
        ExternalFile {
            category: CategoryFile::from_category(&sit.category),
            u: MagmaFile::from_magma(&sit.u),
            dot: f.dot,
            exp: f.exp,
        }
    }

    pub fn to_situation(&self) -> Result<ExternalSituation, FormatError> {
        let category = self.category.to_category()?;
        let u = self.u.to_magma()?;
        let a = category_as_magma(&category)?;
        let file = ActionsFile {
            a: MagmaRef::Inline(MagmaFile::from_magma(&a)),
            u: MagmaRef::Inline(self.u.clone()),
            h: PairSet::full(),
            dot: self.dot.clone(),
            exp: self.exp.clone(),
            e: None,
        };
        let actions = file.load(Path::new("."))?.actions;
        Ok(ExternalSituation { category, u, actions })
    }
}

/// Either side of the internal/external correspondence, told apart by `"phi"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SituationFile {
    Internal(BundleFile),
    External(ExternalFile),
}

/// `{"size", "edges": [[a, b], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub size: usize,
    pub edges: Vec<[usize; 2]>,
}

impl RelationFile {
    pub fn from_rel(r: &AbstractRel) -> RelationFile {
        RelationFile {
            size: r.size(),
            edges: r.edges().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn to_rel(&self) -> Result<AbstractRel, FormatError> {
        Ok(AbstractRel::new(self.size, self.edges.iter().map(|e| (e[0], e[1])))?)
    }
}

/// Parses a word against a presentation's alphabet.
pub fn parse_word(rs: &RuleSet, s: &str) -> Result<Word, FormatError> {
    Ok(rs.word(s)?)
}

/// Directory of a file, for resolving relative references.
pub fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::stock::{self, StockExample};

    fn reload<T: Serialize + for<'de> Deserialize<'de>>(v: &T) -> T {
        serde_json::from_str(&to_json(v)).unwrap()
    }

    #[test]
    fn magma_file_roundtrip() {
        let m = catalog::left_zero(3);
        let f = MagmaFile::from_magma(&m);
        assert_eq!(reload(&f).to_magma().unwrap(), m);
        assert_eq!(to_json(&f), to_json(&reload(&f)));
        let bare: MagmaFile = serde_json::from_str(r#"{"size": 2, "table": [[0,0,0]]}"#).unwrap();
        let m = bare.to_magma().unwrap();
        assert_eq!(m.names(), ["0", "1"]);
        assert!(!m.defined(ElementId(0), ElementId(1)));
    }

    #[test]
    fn actions_file_roundtrip() {
        let StockExample::Factorization(f) = stock::stock_example("s4-s3-c4").unwrap() else { unreachable!() };
        let d = f.derive().unwrap();
        let file = ActionsFile::from_actions(&d.actions, &ProductDomain::Full);
        let back = reload(&file).load(Path::new(".")).unwrap();
        assert_eq!(back.actions.table(), d.actions.table());
        assert_eq!(ActionsFile::from_actions(&back.actions, &back.e), file);
    }

    #[test]
    fn partial_h_and_e() {
        let m = catalog::cyclic(2);
        let mut t = BTreeMap::new();
        t.insert((ElementId(0), ElementId(1)), (ElementId(1), ElementId(0)));
        let ap = ActionPair::from_table(m.clone(), m, t);
        let e = ProductDomain::Pairs([(ElementId(1), ElementId(0))].into_iter().collect());
        let file = ActionsFile::from_actions(&ap, &e);
        assert!(matches!(file.h, PairSet::Pairs(ref p) if p.len() == 1));
        let back = reload(&file).load(Path::new(".")).unwrap();
        assert_eq!(back.actions.table(), ap.table());
        assert_eq!(back.e, e);
    }

    #[test]
    fn presentation_file_roundtrip() {
        let p = stock::c3_c2_presentation();
        let f = PresentationFile::from_rules(&p.pres_u);
        assert_eq!(reload(&f).to_rules().unwrap(), p.pres_u);
        let g = GenActionsFile::from_gen(&p.gen);
        assert_eq!(reload(&g).to_gen().unwrap(), p.gen);
        let text = r#"{"alphabet": ["x", "yy"], "kind": "monoid", "rules": [["[yy]x", "x[yy][yy]"]]}"#;
        let rs = serde_json::from_str::<PresentationFile>(text).unwrap().to_rules().unwrap();
        assert_eq!(rs.rules()[0].rhs, Word(vec![0, 1, 1]));
    }

    #[test]
    fn category_and_bundle_roundtrip() {
        for name in ["groupoid-pair-c2", "groupoid-s3"] {
            let StockExample::Groupoid(sit) = stock::stock_example(name).unwrap() else { unreachable!() };
            let f = BundleFile::from_situation(&sit);
            let text = to_json(&f);
            let back: SituationFile = serde_json::from_str(&text).unwrap();
            let SituationFile::Internal(b) = back else { panic!("read as external") };
            assert_eq!(b.to_situation().unwrap(), sit);
            assert_eq!(to_json(&b), text);
            let conv = crate::categories::convert_zs_actions(&sit.bundle, &sit.a).unwrap();
            let ef = ExternalFile::from_situation(&conv.situation);
            let SituationFile::External(e) = reload(&SituationFile::External(ef.clone())) else { panic!() };
            let s2 = e.to_situation().unwrap();
            assert_eq!(s2.actions.table(), conv.situation.actions.table());
            assert_eq!(ExternalFile::from_situation(&s2), ef);
        }
    }

    #[test]
    fn missing_action_is_reported() {
        let text = r#"{"A": {"size": 1, "table": [[0,0,0]]}, "U": {"size": 1, "table": [[0,0,0]]},
                       "H": "full", "dot": [], "exp": []}"#;
        let f: ActionsFile = serde_json::from_str(text).unwrap();
        assert!(matches!(f.load(Path::new(".")), Err(FormatError::Invalid(_))));
    }
}
