//! Presentations of products: the action presentation `⟨X ∪ Y | W⟩`, product
//! presentations `⟨X ∪ Y | R ∪ T ∪ W⟩`, and the twisted-presentation checker.
//!
//! In a combined alphabet the `X` letters come first, so `x_i ↦ i` and
//! `y_j ↦ |X| + j`.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::actions::{ActionPair, FiniteActions};
use crate::axioms::{check_axioms, Axiom, AxiomReport, ProductDomain};
use crate::domain::{Fuel, FreeMonoid};
use crate::magma::{ElementId, Magma};
use crate::product::{monoid_product, ProductError};
use crate::properties;
use crate::report::{Exhausted, Report, Verdict};
use crate::rewriting::{
    string_local_confluence, termination_certificate, Alphabet, Kind, RewriteError, Rule, RuleSet, TerminationCert,
    Word,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("alphabets share generator {0:?}")]
    AlphabetCollision(String),
    #[error("no action given for ({y}, {x})")]
    MissingEntry { y: String, x: String },
    #[error("dot({y}, {x}) = {value:?} is not a generator of X")]
    DotNotGenerator { y: String, x: String, value: String },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("{family}-rule {rule} with generator {generator}: {side} clause fails")]
    TwistedHypothesisFailed {
        family: &'static str,
        rule: usize,
        generator: String,
        side: &'static str,
    },
    #[error("no word represents element {0}")]
    NoRepresentative(String),
    #[error("presentation is not certified complete")]
    NotComplete,
    #[error("normal forms are not finite within word length {0}")]
    Infinite(usize),
    #[error("fuel exhausted")]
    FuelExhausted,
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Product(#[from] ProductError),
}

impl From<Exhausted> for PresentationError {
    fn from(_: Exhausted) -> Self {
        PresentationError::FuelExhausted
    }
}

/// Generator-level actions: `dot: Y×X → X`, `exp: Y×X → Y*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenActions {
    pub x: Alphabet,
    pub y: Alphabet,
    /// `(y, x) ↦ x'`.
    pub dot: BTreeMap<(usize, usize), usize>,
    /// `(y, x) ↦` a word over `Y`.
    pub exp: BTreeMap<(usize, usize), Word>,
}

impl GenActions {
    pub fn new(
        x: Alphabet,
        y: Alphabet,
        dot: BTreeMap<(usize, usize), usize>,
        exp: BTreeMap<(usize, usize), Word>,
    ) -> Result<GenActions, PresentationError> {
        x.disjoint_union(&y).map_err(PresentationError::AlphabetCollision)?;
        for j in 0..y.len() {
            for i in 0..x.len() {
                let missing = || PresentationError::MissingEntry {
                    y: y.name(j).into(),
                    x: x.name(i).into(),
                };
                let d = dot.get(&(j, i)).ok_or_else(missing)?;
                let e = exp.get(&(j, i)).ok_or_else(missing)?;
                if *d >= x.len() || e.0.iter().any(|&g| g >= y.len()) {
                    return Err(PresentationError::HypothesisFailed(format!(
                        "action value out of range at ({}, {})",
                        y.name(j),
                        x.name(i)
                    )));
                }
            }
        }
        Ok(GenActions { x, y, dot, exp })
    }

    /// Entries as `(y, x, value)` strings; `exp` values are words over `Y`.
    pub fn parse(
        x: Alphabet,
        y: Alphabet,
        dot: &[(&str, &str, &str)],
        exp: &[(&str, &str, &str)],
    ) -> Result<GenActions, PresentationError> {
        let letter = |a: &Alphabet, s: &str| a.index(s).ok_or_else(|| RewriteError::UnknownGenerator(s.into()));
        let mut d = BTreeMap::new();
        for (yy, xx, v) in dot {
            let value = x.parse(v)?;
            if value.len() != 1 {
                return Err(PresentationError::DotNotGenerator {
                    y: yy.to_string(),
                    x: xx.to_string(),
                    value: v.to_string(),
                });
            }
            d.insert((letter(&y, yy)?, letter(&x, xx)?), value.0[0]);
        }
        let mut e = BTreeMap::new();
        for (yy, xx, v) in exp {
            e.insert((letter(&y, yy)?, letter(&x, xx)?), y.parse(v)?);
        }
        GenActions::new(x, y, d, e)
    }

    /// Both families trivial: `y·x = x`, `y^x = y`.
    pub fn trivial(x: Alphabet, y: Alphabet) -> GenActions {
        let mut dot = BTreeMap::new();
        let mut exp = BTreeMap::new();
        for j in 0..y.len() {
            for i in 0..x.len() {
                dot.insert((j, i), i);
                exp.insert((j, i), Word::letter(j));
            }
        }
        GenActions { x, y, dot, exp }
    }

    pub fn combined(&self) -> Alphabet {
        self.x.disjoint_union(&self.y).expect("checked disjoint")
    }

    pub fn x_letters(&self) -> Vec<usize> {
        (0..self.x.len()).collect()
    }

    /// A `Y`-word as a word of the combined alphabet.
    pub fn lift_y(&self, w: &Word) -> Word {
        Word(w.0.iter().map(|g| g + self.x.len()).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleOrigin {
    R,
    T,
    W,
}

/// A rule set whose rules are tagged by where they came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub rules: RuleSet,
    pub origins: Vec<RuleOrigin>,
    /// Generators of `X` in the combined alphabet.
    pub x_letters: Vec<usize>,
    /// Every `W` pair, including degenerate ones `(w, w)` left out of `rules`.
    pub w_pairs: Vec<(Word, Word)>,
}

impl Presentation {
    pub fn describe(&self) -> String {
        let body = self.rules.describe();
        body.lines()
            .zip(&self.origins)
            .map(|(l, o)| format!("{o:?}: {l}"))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn count(&self, origin: RuleOrigin) -> usize {
        self.origins.iter().filter(|&&o| o == origin).count()
    }
}

/// `⟨X ∪ Y | W⟩` with `W = {yx → (y·x)(y^x)}`.
pub fn action_rules(ga: &GenActions) -> RuleSet {
    let mut rules = Vec::new();
    for j in 0..ga.y.len() {
        for i in 0..ga.x.len() {
            let lhs = Word(vec![ga.x.len() + j, i]);
            let rhs = Word::letter(ga.dot[&(j, i)]).concat(&ga.lift_y(&ga.exp[&(j, i)]));
            rules.push(Rule::new(lhs, rhs));
        }
    }
    RuleSet::new(ga.combined(), rules, Kind::Monoid).expect("well-formed rules")
}

/// The action presentation with its completeness report: the `C_w`
/// certificate and critical-pair local confluence.
pub fn action_presentation(ga: &GenActions, fuel: &Fuel) -> (Presentation, Report<Vec<Word>>) {
    let rules = action_rules(ga);
    let n = rules.rules().len();
    let pres = Presentation {
        w_pairs: rules.rules().iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect(),
        rules,
        origins: vec![RuleOrigin::W; n],
        x_letters: ga.x_letters(),
    };
    let report = completeness(&pres.rules, Some(&pres.x_letters), fuel).report;
    (pres, report)
}

/// Termination certificate found (if any) and the combined verdict.
#[derive(Debug, Clone)]
pub struct Completeness {
    pub certificate: Option<TerminationCert>,
    pub local_confluence: Report<Vec<Word>>,
    pub report: Report<Vec<Word>>,
}

impl Completeness {
    pub fn complete(&self) -> bool {
        self.report.passed()
    }
}

/// Tries `cw_measure` (when `x_letters` is given), `length_reducing`,
/// `length_lex` and `recursive_path`, then checks local confluence.
pub fn completeness(rs: &RuleSet, x_letters: Option<&[usize]>, fuel: &Fuel) -> Completeness {
    let n = rs.alphabet().len();
    let mut candidates = Vec::new();
    if let Some(x) = x_letters {
        candidates.push(TerminationCert::CwMeasure { x_letters: x.to_vec() });
    }
    candidates.push(TerminationCert::LengthReducing);
    candidates.push(TerminationCert::LengthLex {
        rank: TerminationCert::natural_rank(n),
    });
    candidates.push(TerminationCert::RecursivePath {
        rank: TerminationCert::natural_rank(n),
    });
    let certificate = candidates
        .into_iter()
        .find(|c| termination_certificate(rs, c).is_ok_and(|r| r.passed()));
    let local_confluence = string_local_confluence(rs, fuel.steps);
    let report = match &certificate {
        None => Report::new("complete", Verdict::Inconclusive, None).with_note("no termination certificate applies"),
        Some(c) => {
            let r = Report::new("complete", local_confluence.verdict, local_confluence.witness.clone())
                .with_note(format!("terminating by {}", c.name()));
            local_confluence.notes.iter().fold(r, |r, n| r.with_note(n.clone()))
        }
    };
    Completeness {
        certificate,
        local_confluence,
        report,
    }
}

/// Word-level actions of `Y*` on `X*`, read off normal forms `u'α'` of `αu`.
pub type WordActions = ActionPair<FreeMonoid, FreeMonoid>;

pub fn extend_gen_actions(ga: &GenActions, step_fuel: usize) -> WordActions {
    let rules = Arc::new(action_rules(ga));
    let nx = ga.x.len();
    let lift = ga.clone();
    let f = move |alpha: &Word, u: &Word| -> Result<Option<(Word, Word)>, Exhausted> {
        let w = lift.lift_y(alpha).concat(u);
        let nf = rules.normalize(&w, step_fuel).map_err(|_| Exhausted)?;
        let split = nf.0.iter().position(|&g| g >= nx).unwrap_or(nf.len());
        let dot = Word(nf.0[..split].to_vec());
        let exp = Word(nf.0[split..].iter().map(|g| g - nx).collect());
        Ok(Some((dot, exp)))
    };
    ActionPair::computed(FreeMonoid::new(ga.y.clone()), FreeMonoid::new(ga.x.clone()), Arc::new(f))
}

/// The fuel-bounded axiom checks that the word-level extension must pass.
pub fn extension_checks(actions: &WordActions, fuel: &Fuel) -> Vec<AxiomReport<Word, Word>> {
    let mut axes = Axiom::P2.to_vec();
    axes.push(Axiom::P6);
    axes.extend(&Axiom::P7[..6]);
    check_axioms(actions, &ProductDomain::Full, &axes, fuel)
}

/// Letters of a presentation of a finite monoid name its elements; `φ` is the identity.
pub fn eval_word(m: &Magma, alphabet: &Alphabet, w: &Word) -> Option<ElementId> {
    let one = properties::global_identity(m)?;
    w.0.iter()
        .try_fold(one, |acc, &g| m.id(alphabet.name(g)).and_then(|x| m.mul(acc, x)))
}

/// Shortest (then length-lex least) word evaluating to `x`.
fn representative(m: &Magma, alphabet: &Alphabet, x: ElementId) -> Result<Word, PresentationError> {
    alphabet
        .words_up_to(m.size())
        .into_iter()
        .find(|w| eval_word(m, alphabet, w) == Some(x))
        .ok_or_else(|| PresentationError::NoRepresentative(m.name(x).into()))
}

fn combine(pres_u: &RuleSet, pres_a: &RuleSet) -> Result<(Alphabet, Vec<Rule>, Vec<RuleOrigin>), PresentationError> {
    let alphabet = pres_u
        .alphabet()
        .disjoint_union(pres_a.alphabet())
        .map_err(PresentationError::AlphabetCollision)?;
    let nx = pres_u.alphabet().len();
    let shift = |w: &Word| Word(w.0.iter().map(|g| g + nx).collect());
    let mut rules = pres_u.rules().to_vec();
    let mut origins = vec![RuleOrigin::R; rules.len()];
    for r in pres_a.rules() {
        rules.push(Rule::new(shift(&r.lhs), shift(&r.rhs)));
        origins.push(RuleOrigin::T);
    }
    Ok((alphabet, rules, origins))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresentationMode {
    Full,
    Generators,
}

/// A product presentation with its consistency check against `|U|·|A|`.
#[derive(Debug, Clone)]
pub struct ProductPresentation {
    pub presentation: Presentation,
    pub completeness: Completeness,
    /// Normal-form count against the expected carrier size, when known.
    pub consistency: Report<Vec<usize>>,
}

/// `W` over all of `A×U`, for finite monoids whose presentations name elements by letters.
pub fn zs_presentation_full(
    pres_u: &RuleSet,
    pres_a: &RuleSet,
    ap: &FiniteActions,
    fuel: &Fuel,
) -> Result<ProductPresentation, PresentationError> {
    monoid_product(ap)?;
    let (alphabet, mut rules, mut origins) = combine(pres_u, pres_a)?;
    let nx = pres_u.alphabet().len();
    let shift = |w: Word| Word(w.0.iter().map(|g| g + nx).collect());
    let mut words_u = Vec::new();
    for u in ap.u.elements() {
        words_u.push(representative(&ap.u, pres_u.alphabet(), u)?);
    }
    let mut words_a = Vec::new();
    for a in ap.a.elements() {
        words_a.push(shift(representative(&ap.a, pres_a.alphabet(), a)?));
    }
    let mut w_pairs = Vec::new();
    for a in ap.a.elements() {
        for u in ap.u.elements() {
            let (d, e) = ap.act(&a, &u)?.expect("H = A×U checked");
            let lhs = words_a[a.0].concat(&words_u[u.0]);
            let rhs = words_u[d.0].concat(&words_a[e.0]);
            if lhs != rhs && !lhs.is_empty() {
                rules.push(Rule::new(lhs.clone(), rhs.clone()));
                origins.push(RuleOrigin::W);
            }
            w_pairs.push((lhs, rhs));
        }
    }
    let rules = RuleSet::new(alphabet, rules, Kind::Monoid)?;
    let presentation = Presentation {
        rules,
        origins,
        x_letters: (0..nx).collect(),
        w_pairs,
    };
    Ok(finish(presentation, Some(ap.u.size() * ap.a.size()), fuel))
}

/// `W` over `Y×X`; requires `y·x ∈ X` and `y^x ∈ Y` for every generator pair.
pub fn zs_presentation_generators(
    pres_u: &RuleSet,
    pres_a: &RuleSet,
    ga: &GenActions,
    expected: Option<usize>,
    fuel: &Fuel,
) -> Result<ProductPresentation, PresentationError> {
    if pres_u.alphabet() != &ga.x || pres_a.alphabet() != &ga.y {
        return Err(PresentationError::HypothesisFailed(
            "presentation alphabets differ from the action alphabets".into(),
        ));
    }
    for ((j, i), e) in &ga.exp {
        if e.len() != 1 {
            return Err(PresentationError::HypothesisFailed(format!(
                "exp({}, {}) is not a generator of Y",
                ga.y.name(*j),
                ga.x.name(*i)
            )));
        }
    }
    let (alphabet, mut rules, mut origins) = combine(pres_u, pres_a)?;
    let w = action_rules(ga);
    let w_pairs = w.rules().iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect();
    for r in w.rules() {
        rules.push(r.clone());
        origins.push(RuleOrigin::W);
    }
    let rules = RuleSet::new(alphabet, rules, Kind::Monoid)?;
    let presentation = Presentation {
        rules,
        origins,
        x_letters: ga.x_letters(),
        w_pairs,
    };
    Ok(finish(presentation, expected, fuel))
}

fn finish(presentation: Presentation, expected: Option<usize>, fuel: &Fuel) -> ProductPresentation {
    let completeness = completeness(&presentation.rules, Some(&presentation.x_letters), fuel);
    let tag = "normal_form_count";
    let consistency = if !completeness.complete() {
        Report::new(tag, Verdict::Inconclusive, None).with_note("presentation not certified complete")
    } else {
        let all = presentation.rules.irreducibles_up_to(fuel.word_len + 1);
        let finite = all.last().is_none_or(|w| w.len() <= fuel.word_len);
        let count = all.len();
        match expected {
            None => Report::new(tag, Verdict::NotApplicable, Some(vec![count])),
            Some(e) if !finite => {
                Report::new(tag, Verdict::Fail, Some(vec![count, e])).with_note("normal forms exceed the word bound")
            }
            Some(e) if e == count => Report::pass(tag).with_note(format!("{count} classes")),
            Some(e) => Report::fail(tag, vec![count, e]),
        }
    };
    ProductPresentation {
        presentation,
        completeness,
        consistency,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WordAnswer {
    Equal,
    Distinct,
    Inconclusive,
}

impl WordAnswer {
    pub fn exit_code(self) -> i32 {
        match self {
            WordAnswer::Equal => 0,
            WordAnswer::Distinct => 1,
            WordAnswer::Inconclusive => 3,
        }
    }
}

/// Decides `w1 = w2` by normal forms when the rules certify complete, and
/// otherwise by a two-sided search over the congruence within fuel.
pub fn word_problem(rs: &RuleSet, w1: &Word, w2: &Word, fuel: &Fuel) -> WordAnswer {
    if w1 == w2 {
        return WordAnswer::Equal;
    }
    if completeness(rs, None, fuel).complete() {
        return match (rs.normalize(w1, fuel.steps), rs.normalize(w2, fuel.steps)) {
            (Ok(a), Ok(b)) if a == b => WordAnswer::Equal,
            (Ok(_), Ok(_)) => WordAnswer::Distinct,
            _ => WordAnswer::Inconclusive,
        };
    }
    congruence_search(rs, w1, w2, fuel)
}

/// Both directions of every rule, applied at every position.
fn neighbours(rs: &RuleSet, w: &Word) -> Vec<Word> {
    let mut out = Vec::new();
    for r in rs.rules() {
        for (from, to) in [(&r.lhs, &r.rhs), (&r.rhs, &r.lhs)] {
            if from.is_empty() {
                for pos in 0..=w.len() {
                    out.push(w.splice(pos, 0, to));
                }
            } else {
                for pos in w.occurrences(from) {
                    out.push(w.splice(pos, from.len(), to));
                }
            }
        }
    }
    out
}

fn congruence_search(rs: &RuleSet, w1: &Word, w2: &Word, fuel: &Fuel) -> WordAnswer {
    let bound = fuel.word_len.max(w1.len()).max(w2.len());
    let mut seen: [BTreeSet<Word>; 2] = [BTreeSet::from([w1.clone()]), BTreeSet::from([w2.clone()])];
    let mut queue: [VecDeque<Word>; 2] = [VecDeque::from([w1.clone()]), VecDeque::from([w2.clone()])];
    let mut truncated = false;
    let mut steps = 0;
    while !queue[0].is_empty() || !queue[1].is_empty() {
        for side in 0..2 {
            let Some(w) = queue[side].pop_front() else { continue };
            for n in neighbours(rs, &w) {
                steps += 1;
                if steps > fuel.steps {
                    return WordAnswer::Inconclusive;
                }
                if n.len() > bound {
                    truncated = true;
                    continue;
                }
                if seen[1 - side].contains(&n) {
                    return WordAnswer::Equal;
                }
                if seen[side].insert(n.clone()) {
                    queue[side].push_back(n);
                }
            }
        }
    }
    if truncated {
        WordAnswer::Inconclusive
    } else {
        WordAnswer::Distinct
    }
}

/// The finite monoid presented by a complete rule set, on its normal forms.
#[derive(Debug, Clone)]
pub struct PresentedMonoid {
    pub magma: Magma,
    pub words: Vec<Word>,
}

impl PresentedMonoid {
    pub fn id_of(&self, w: &Word) -> Option<ElementId> {
        self.words.iter().position(|x| x == w).map(ElementId)
    }
}

pub fn monoid_from_presentation(rs: &RuleSet, fuel: &Fuel) -> Result<PresentedMonoid, PresentationError> {
    if !completeness(rs, None, fuel).complete() {
        return Err(PresentationError::NotComplete);
    }
    let words = rs.irreducibles_up_to(fuel.word_len + 1);
    if words.last().is_some_and(|w| w.len() > fuel.word_len) {
        return Err(PresentationError::Infinite(fuel.word_len));
    }
    let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut entries = Vec::new();
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate() {
            let nf = rs.normalize(&a.concat(b), fuel.steps)?;
            entries.push(((i, j), index[&nf]));
        }
    }
    let names = words.iter().map(|w| rs.alphabet().display(w)).collect();
    let magma = Magma::new(words.len(), names, entries).map_err(ProductError::from)?;
    Ok(PresentedMonoid { magma, words })
}

/// Actions induced on congruence classes, represented by normal forms.
#[derive(Debug, Clone)]
pub struct InducedActions {
    pub u: PresentedMonoid,
    pub a: PresentedMonoid,
    pub actions: FiniteActions,
}

#[derive(Debug, Clone)]
pub struct TwistedReport {
    pub hypotheses: Report<Vec<String>>,
    /// Representative changes leave `dot` fixed and `exp` within its class.
    pub well_defined: Report<Vec<String>>,
    /// `dot` on `A × X` lands in `X`.
    pub generator_image: Report<Vec<String>>,
    pub induced: Option<InducedActions>,
}

impl TwistedReport {
    pub fn verdict(&self) -> Verdict {
        self.hypotheses
            .verdict
            .and(self.well_defined.verdict)
            .and(self.generator_image.verdict)
    }
}

fn equiv(rs: &RuleSet, a: &Word, b: &Word, fuel: &Fuel) -> Result<bool, PresentationError> {
    match word_problem(rs, a, b, fuel) {
        WordAnswer::Equal => Ok(true),
        WordAnswer::Distinct => Ok(false),
        WordAnswer::Inconclusive => Err(PresentationError::FuelExhausted),
    }
}

/// Checks the rule-by-generator hypotheses, then builds and re-samples the
/// induced actions on classes. `sample_len` bounds the words used for the
/// well-definedness sample.
pub fn twisted_iii_check(
    pres_u: &RuleSet,
    pres_a: &RuleSet,
    ga: &GenActions,
    sample_len: usize,
    fuel: &Fuel,
) -> Result<TwistedReport, PresentationError> {
    if pres_u.alphabet() != &ga.x || pres_a.alphabet() != &ga.y {
        return Err(PresentationError::HypothesisFailed(
            "presentation alphabets differ from the action alphabets".into(),
        ));
    }
    let ext = extend_gen_actions(ga, fuel.steps);
    let act = |a: &Word, u: &Word| -> Result<(Word, Word), PresentationError> {
        Ok(ext.act(a, u)?.expect("total"))
    };
    let fail = |family, rule, generator: String, side| {
        Err(PresentationError::TwistedHypothesisFailed {
            family,
            rule,
            generator,
            side,
        })
    };
    let r_pairs: BTreeSet<(Word, Word)> = pres_u.rules().iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect();
    for (k, r) in pres_u.rules().iter().enumerate() {
        for j in 0..ga.y.len() {
            let y = Word::letter(j);
            let (du, eu) = act(&y, &r.lhs)?;
            let (dv, ev) = act(&y, &r.rhs)?;
            if !r_pairs.contains(&(du.clone(), dv.clone())) && !r_pairs.contains(&(dv, du)) {
                return fail("R", k, ga.y.name(j).into(), "dot");
            }
            if !equiv(pres_a, &eu, &ev, fuel)? {
                return fail("R", k, ga.y.name(j).into(), "exp");
            }
        }
    }
    for (k, t) in pres_a.rules().iter().enumerate() {
        for i in 0..ga.x.len() {
            let x = Word::letter(i);
            let (da, ea) = act(&t.lhs, &x)?;
            let (db, eb) = act(&t.rhs, &x)?;
            if da != db {
                return fail("T", k, ga.x.name(i).into(), "dot");
            }
            if !equiv(pres_a, &ea, &eb, fuel)? {
                return fail("T", k, ga.x.name(i).into(), "exp");
            }
        }
    }
    let hypotheses = Report::pass("twisted_hypotheses");

    let nf = |rs: &RuleSet, w: &Word| rs.normalize(w, fuel.steps).map_err(PresentationError::from);
    let mut well_defined = Report::pass("well_defined");
    'sample: for alpha in ga.y.words_up_to(sample_len) {
        for u in ga.x.words_up_to(sample_len) {
            let (d, e) = act(&alpha, &u)?;
            let (d1, e1) = act(&nf(pres_a, &alpha)?, &u)?;
            let (d2, e2) = act(&alpha, &nf(pres_u, &u)?)?;
            let bad = if d != d1 {
                Some("dot changes with the Y-representative")
            } else if !equiv(pres_a, &e, &e1, fuel)? {
                Some("exp leaves its class with the Y-representative")
            } else if !equiv(pres_u, &d, &d2, fuel)? {
                Some("dot leaves its class with the X-representative")
            } else if !equiv(pres_a, &e, &e2, fuel)? {
                Some("exp leaves its class with the X-representative")
            } else {
                None
            };
            if let Some(why) = bad {
                well_defined =
                    Report::fail("well_defined", vec![ga.y.display(&alpha), ga.x.display(&u)]).with_note(why);
                break 'sample;
            }
        }
    }

    let induced = match (monoid_from_presentation(pres_u, fuel), monoid_from_presentation(pres_a, fuel)) {
        (Ok(um), Ok(am)) => {
            let mut table = BTreeMap::new();
            for (ai, a) in am.words.iter().enumerate() {
                for (ui, u) in um.words.iter().enumerate() {
                    let (d, e) = act(a, u)?;
                    let d = um.id_of(&nf(pres_u, &d)?).expect("normal form");
                    let e = am.id_of(&nf(pres_a, &e)?).expect("normal form");
                    table.insert((ElementId(ai), ElementId(ui)), (d, e));
                }
            }
            let actions = ActionPair::from_table(am.magma.clone(), um.magma.clone(), table);
            Some(InducedActions { u: um, a: am, actions })
        }
        _ => None,
    };

    let mut generator_image = Report::pass("generator_image");
    let reps: Vec<Word> = match &induced {
        Some(ind) => ind.a.words.clone(),
        None => ga.y.words_up_to(sample_len),
    };
    'gen: for a in &reps {
        for i in 0..ga.x.len() {
            let (d, _) = act(a, &Word::letter(i))?;
            if d.len() != 1 {
                generator_image =
                    Report::fail("generator_image", vec![ga.y.display(a), ga.x.name(i).to_string()]);
                break 'gen;
            }
        }
    }
    Ok(TwistedReport {
        hypotheses,
        well_defined,
        generator_image,
        induced,
    })
}
