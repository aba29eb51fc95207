//! The `zs` command line. Every verb loads its files, calls one library
//! operation and prints reports; the exit code depends only on the verdict.
//!
//! Exit codes: 0 pass, 1 fail, 2 usage or file error, 3 inconclusive within fuel.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::actions::{derive_internal_actions, subset_by_names, ActionError, FiniteActions};
use crate::axioms::{check_axioms, family_properties, Axiom, AxiomReport, ProductDomain};
use crate::categories::{
    category_as_magma, category_from_magma, external_to_internal, int_ext_roundtrip, internal_to_external,
    CategoryError, Situation,
};
use crate::chain::{assoc_chain_iso, chain_composite, ChainError, ParenTree};
use crate::domain::{Fuel, MulDomain};
use crate::formats::{
    base_dir, read_json, to_json, ActionsFile, BundleFile, CategoryFile, ExternalFile, FormatError, GenActionsFile,
    MagmaFile, PresentationFile, ProductFile, Provenance, RelationFile, SituationFile,
};
use crate::fuzz::fuzz_axioms;
use crate::iso::{find_isomorphism, IsoSearch};
use crate::lclm::{free_swap_product, product_lclm, LclmError, LeftMultiples};
use crate::magma::{ElementId, Magma, MagmaError};
use crate::presentations::{
    action_presentation, completeness, extend_gen_actions, extension_checks, twisted_iii_check, word_problem,
    zs_presentation_full, zs_presentation_generators, PresentationError, PresentationMode, ProductPresentation,
    RuleOrigin,
};
use crate::product::{
    check_inverse_formula, classify_product, external_product, group_product, monoid_product, reconstruction_iso,
    FullProduct, ProductError, ProductMagma, ZsProduct,
};
use crate::properties::{self, check_property, identities_of, Property};
use crate::report::{Report, Verdict};
use crate::rewriting::{
    string_local_confluence, table_presentation, termination_certificate, AbstractRel, ClosureKind, Kind, RelProperty,
    RewriteError, RuleSet, TerminationCert, Word,
};
use crate::stock::{self, complement_check, rigidity, StockExample};

#[derive(Parser, Debug)]
#[command(name = "zs", version, about = "Zappa-Szép products, rewriting systems and presentations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Rewrite steps per normalization and node budget for searches.
    #[arg(long, global = true, default_value_t = 100_000)]
    fuel: usize,
    /// Longest word enumerated in infinite domains [default: 12; 4 for `product-lclm --swap`].
    #[arg(long, global = true)]
    word_len: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Where to write the produced file.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

impl Global {
    fn fuel(&self) -> Fuel {
        self.fuel_or(Fuel::default().word_len)
    }

    fn fuel_or(&self, word_len: usize) -> Fuel {
        Fuel {
            steps: self.fuel,
            word_len: self.word_len.unwrap_or(word_len),
        }
    }
}

/// Subset of a magma: element names separated by `;`.
#[derive(Args, Debug, Clone)]
struct Split {
    /// Elements of U, `;`-separated.
    #[arg(long = "u")]
    u: String,
    /// Elements of A, `;`-separated.
    #[arg(long = "a")]
    a: String,
    /// Treat the lists as generators and close them under multiplication.
    #[arg(long)]
    generate: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CertArg {
    Auto,
    LengthReducing,
    LengthLex,
    CwMeasure,
    RecursivePath,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Full,
    Generators,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check properties of a magma file.
    Check {
        magma: PathBuf,
        /// Property tag, repeatable; `all` checks every property.
        #[arg(long = "prop", default_value = "all")]
        props: Vec<String>,
    },
    /// Identity flags of every element.
    Identities { magma: PathBuf },
    /// Units and their inverses.
    Units { magma: PathBuf },
    /// Least common left multiple of two elements.
    Lclm {
        magma: PathBuf,
        a: String,
        b: String,
        /// List every least common left multiple instead of one.
        #[arg(long)]
        all: bool,
    },
    /// Read mutual actions off a unique factorization `M = U·A`.
    DeriveActions {
        magma: PathBuf,
        #[command(flatten)]
        split: Split,
    },
    /// Check axioms of an actions file.
    CheckAxiom {
        actions: PathBuf,
        /// Axiom tag or group (`P2`, `P2a`, `P7`, `all`), repeatable.
        #[arg(long = "axiom")]
        axioms: Vec<String>,
        /// Instead, check this many seeded single-entry corruptions.
        #[arg(long)]
        fuzz: Option<usize>,
    },
    /// Family properties of both actions.
    Families { actions: PathBuf },
    /// External product of an actions file.
    Product {
        actions: PathBuf,
        /// Compare the product against this magma up to isomorphism.
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Rebuild a factorized magma from its derived actions.
    Reconstruct {
        magma: PathBuf,
        #[command(flatten)]
        split: Split,
    },
    /// Product of two monoids.
    MonoidProduct {
        actions: PathBuf,
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Product of two groups, with the inverse formula.
    GroupProduct {
        actions: PathBuf,
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Direct, semidirect or general.
    Classify { actions: PathBuf },
    /// Least common left multiple in a product.
    ProductLclm {
        /// Finite actions file; omit with `--swap`.
        actions: Option<PathBuf>,
        /// First element as `U A`.
        #[arg(long, num_args = 2, value_names = ["U", "A"], required = true)]
        x: Vec<String>,
        /// Second element as `U A`.
        #[arg(long, num_args = 2, value_names = ["U", "A"], required = true)]
        y: Vec<String>,
        /// A common left multiple to factor through the result.
        #[arg(long, num_args = 2, value_names = ["U", "A"])]
        witness: Option<Vec<String>>,
        /// Use C2 swapping the letters of words over {x, y}.
        #[arg(long)]
        swap: bool,
    },
    /// Iterated products along bracketings of a factor chain.
    AssocChain {
        magma: PathBuf,
        /// One factor, `;`-separated element names; repeat in order.
        #[arg(long = "factor", required = true)]
        factors: Vec<String>,
        /// Bracketing such as `((1 2) 3)`; repeatable, default left-nested.
        #[arg(long = "tree")]
        trees: Vec<String>,
    },
    /// Closure of an abstract relation.
    Closure {
        relation: PathBuf,
        #[arg(long, default_value = "reflexive_transitive")]
        kind: String,
    },
    /// Properties of an abstract relation, or a seeded agreement sweep.
    RelCheck {
        relation: Option<PathBuf>,
        #[arg(long = "prop", default_value = "all")]
        props: Vec<String>,
        /// Check this many seeded random relations instead.
        #[arg(long)]
        random: Option<usize>,
        /// Carrier size for `--random`.
        #[arg(long, default_value_t = 6)]
        size: usize,
        /// Edge probability for `--random`.
        #[arg(long, default_value_t = 0.15)]
        p: f64,
    },
    /// Normal form of every element of a complete relation.
    NormalForms { relation: PathBuf },
    /// One-step rewrites of a word.
    Rewrite {
        presentation: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Leftmost-first normal form of a word.
    Normalize {
        presentation: PathBuf,
        #[arg(long)]
        word: String,
        /// Print each step.
        #[arg(long)]
        trace: bool,
    },
    /// Local confluence by critical pairs.
    LocalConfluence { presentation: PathBuf },
    /// Termination certificate.
    Termination {
        presentation: PathBuf,
        #[arg(long, value_enum, default_value_t = CertArg::Auto)]
        cert: CertArg,
        /// X generators for `cw-measure`, `;`-separated.
        #[arg(long)]
        x_letters: Option<String>,
        /// Generators from lowest to highest, `;`-separated.
        #[arg(long)]
        rank: Option<String>,
    },
    /// The table presentation of a magma.
    TablePres {
        magma: PathBuf,
        #[arg(long, default_value = "monoid")]
        kind: String,
    },
    /// Presentation of a product from presentations of its factors.
    #[command(alias = "present")]
    ZsPres {
        #[arg(long = "u")]
        pres_u: PathBuf,
        #[arg(long = "a")]
        pres_a: PathBuf,
        /// Finite actions file (full mode).
        #[arg(long, conflicts_with = "gen")]
        actions: Option<PathBuf>,
        /// Generator actions file (generators mode).
        #[arg(long)]
        gen: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Expected number of normal forms.
        #[arg(long)]
        expected: Option<usize>,
    },
    /// The action presentation of generator actions.
    ActionPres { gen: PathBuf },
    /// Check the extension of generator actions to words.
    ExtendActions { gen: PathBuf },
    /// Twisted hypotheses and the induced actions on classes.
    Twisted3 {
        #[arg(long = "u")]
        pres_u: PathBuf,
        #[arg(long = "a")]
        pres_a: PathBuf,
        #[arg(long)]
        gen: PathBuf,
        /// Longest sample word for well-definedness.
        #[arg(long, default_value_t = 3)]
        sample_len: usize,
        /// Write the induced actions here.
        #[arg(long)]
        emit_actions: Option<PathBuf>,
    },
    /// Word problem for a presentation.
    Wp {
        presentation: PathBuf,
        w1: String,
        w2: String,
    },
    /// Validate a category file, or read one back from a magma file.
    Category {
        file: PathBuf,
        #[arg(long)]
        from_magma: bool,
    },
    /// Convert between the internal and external situations.
    Convert { situation: PathBuf },
    /// Convert there and back and compare.
    Roundtrip { situation: PathBuf },
    /// Stock examples.
    Example {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        /// Write the example's actions file here.
        #[arg(long)]
        emit_actions: Option<PathBuf>,
        /// Write every artifact of the example into this directory.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// A report with its witness rendered to names.
#[derive(Debug, Clone, Serialize)]
struct JsonReport {
    property: String,
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

impl JsonReport {
    fn of<W>(r: &Report<W>, render: impl FnOnce(&W) -> Vec<String>) -> JsonReport {
        JsonReport {
            property: r.property.clone(),
            verdict: r.verdict,
            witness: r.witness.as_ref().map(render),
            notes: r.notes.clone(),
        }
    }

    fn text(&self) -> String {
        let mut s = format!("{}: {}", self.property, self.verdict);
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness=[{}]", w.join(", ")));
        }
        for n in &self.notes {
            s.push_str(&format!(" [{n}]"));
        }
        s
    }
}

#[derive(Default)]
struct Outcome {
    lines: Vec<String>,
    reports: Vec<JsonReport>,
    data: Option<Value>,
    /// A produced file going to stdout; reports then go to stderr.
    file: Option<String>,
    /// Overrides the verdict-derived exit code.
    exit: Option<i32>,
}

impl Outcome {
    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn report(&mut self, r: JsonReport) {
        self.reports.push(r);
    }

    fn verdict(&self) -> Verdict {
        self.reports.iter().fold(Verdict::Pass, |v, r| v.and(r.verdict))
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
    Fuel(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
            CliError::Fuel(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failed(m) | CliError::Fuel(m) => m,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Presentation(p) => p.into(),
            FormatError::Rewrite(r) => r.into(),
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl From<RewriteError> for CliError {
    fn from(e: RewriteError) -> Self {
        match e {
            RewriteError::FuelExhausted { .. } => CliError::Fuel(e.to_string()),
            RewriteError::NotTerminating(_)
            | RewriteError::NotComplete { .. }
            | RewriteError::ShapeMismatch(_)
            | RewriteError::KindCheckFailed { .. } => CliError::Failed(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::FuelExhausted | PresentationError::Infinite(_) => CliError::Fuel(e.to_string()),
            PresentationError::Rewrite(r) => r.into(),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<ProductError> for CliError {
    fn from(e: ProductError) -> Self {
        match e {
            ProductError::Incomplete => CliError::Fuel(e.to_string()),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<MagmaError> for CliError {
    fn from(e: MagmaError) -> Self {
        match e {
            MagmaError::UnknownName(_) => CliError::Usage(e.to_string()),
            e => CliError::Failed(e.to_string()),
        }
    }
}

macro_rules! failed_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Failed(e.to_string())
            }
        }
    )*};
}
failed_from!(ActionError, CategoryError);

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::BadTree(_) => CliError::Usage(e.to_string()),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<LclmError> for CliError {
    fn from(e: LclmError) -> Self {
        match e {
            LclmError::NoCommonLeftMultipleFound { .. } => CliError::Fuel(e.to_string()),
            e => CliError::Failed(e.to_string()),
        }
    }
}

type Res = Result<Outcome, CliError>;

/// Runs `zs` with `argv` (program name first), printing to stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Like [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let g = cli.global.clone();
    match dispatch(cli.cmd, &g) {
        Ok(o) => {
            let code = o.exit.unwrap_or_else(|| o.verdict().exit_code());
            let printed = if g.json {
                let body = json!({
                    "verdict": o.verdict(),
                    "reports": o.reports,
                    "data": o.data,
                });
                write!(out, "{}", to_json(&body))
            } else {
                let mut text = String::new();
                for l in o.lines.iter().chain(o.reports.iter().map(|r| r.text()).collect::<Vec<_>>().iter()) {
                    text.push_str(l);
                    text.push('\n');
                }
                match &o.file {
                    Some(f) => write!(err, "{text}").and_then(|_| write!(out, "{f}")),
                    None => write!(out, "{text}"),
                }
            };
            if printed.is_err() {
                return 2;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "zs: {}", e.message());
            if g.json {
                let _ = write!(out, "{}", to_json(&json!({ "error": e.message(), "exit": e.code() })));
            }
            e.code()
        }
    }
}

fn dispatch(cmd: Cmd, g: &Global) -> Res {
    match cmd {
        Cmd::Check { magma, props } => cmd_check(&load_magma(&magma)?, &props),
        Cmd::Identities { magma } => cmd_identities(&load_magma(&magma)?),
        Cmd::Units { magma } => cmd_units(&load_magma(&magma)?),
        Cmd::Lclm { magma, a, b, all } => cmd_lclm(&load_magma(&magma)?, &a, &b, all),
        Cmd::DeriveActions { magma, split } => cmd_derive(&load_magma(&magma)?, &split, g),
        Cmd::CheckAxiom { actions, axioms, fuzz } => cmd_check_axiom(&actions, &axioms, fuzz, g),
        Cmd::Families { actions } => cmd_families(&actions, g),
        Cmd::Product { actions, compare } => cmd_product(&actions, compare.as_deref(), g),
        Cmd::Reconstruct { magma, split } => cmd_reconstruct(&load_magma(&magma)?, &split, g),
        Cmd::MonoidProduct { actions, compare } => cmd_full_product(&actions, compare.as_deref(), false, g),
        Cmd::GroupProduct { actions, compare } => cmd_full_product(&actions, compare.as_deref(), true, g),
        Cmd::Classify { actions } => cmd_classify(&actions, g),
        Cmd::ProductLclm {
            actions,
            x,
            y,
            witness,
            swap,
        } => cmd_product_lclm(actions.as_deref(), &x, &y, witness.as_deref(), swap, g),
        Cmd::AssocChain { magma, factors, trees } => cmd_assoc_chain(&load_magma(&magma)?, &factors, &trees),
        Cmd::Closure { relation, kind } => cmd_closure(&relation, &kind, g),
        Cmd::RelCheck {
            relation,
            props,
            random,
            size,
            p,
        } => cmd_rel_check(relation.as_deref(), &props, random, size, p, g),
        Cmd::NormalForms { relation } => cmd_normal_forms(&relation),
        Cmd::Rewrite { presentation, word } => cmd_rewrite(&presentation, &word),
        Cmd::Normalize {
            presentation,
            word,
            trace,
        } => cmd_normalize(&presentation, &word, trace, g),
        Cmd::LocalConfluence { presentation } => cmd_local_confluence(&presentation, g),
        Cmd::Termination {
            presentation,
            cert,
            x_letters,
            rank,
        } => cmd_termination(&presentation, cert, x_letters.as_deref(), rank.as_deref(), g),
        Cmd::TablePres { magma, kind } => cmd_table_pres(&load_magma(&magma)?, &kind, g),
        Cmd::ZsPres {
            pres_u,
            pres_a,
            actions,
            gen,
            mode,
            expected,
        } => cmd_zs_pres(&pres_u, &pres_a, actions.as_deref(), gen.as_deref(), mode, expected, g),
        Cmd::ActionPres { gen } => cmd_action_pres(&gen, g),
        Cmd::ExtendActions { gen } => cmd_extend_actions(&gen, g),
        Cmd::Twisted3 {
            pres_u,
            pres_a,
            gen,
            sample_len,
            emit_actions,
        } => cmd_twisted3(&pres_u, &pres_a, &gen, sample_len, emit_actions.as_deref(), g),
        Cmd::Wp { presentation, w1, w2 } => cmd_wp(&presentation, &w1, &w2, g),
        Cmd::Category { file, from_magma } => cmd_category(&file, from_magma, g),
        Cmd::Convert { situation } => cmd_convert(&situation, g),
        Cmd::Roundtrip { situation } => cmd_roundtrip(&situation),
        Cmd::Example {
            name,
            list,
            emit_actions,
            dir,
        } => cmd_example(name.as_deref(), list, emit_actions.as_deref(), dir.as_deref(), g),
    }
}

// ---------------------------------------------------------------- loading

fn load_magma(path: &Path) -> Result<Magma, CliError> {
    let f: MagmaFile = read_json(path)?;
    Ok(f.to_magma()?)
}

fn load_actions(path: &Path) -> Result<(FiniteActions, ProductDomain<ElementId, ElementId>), CliError> {
    let f: ActionsFile = read_json(path)?;
    let l = f.load(&base_dir(path))?;
    Ok((l.actions, l.e))
}

fn load_rules(path: &Path) -> Result<RuleSet, CliError> {
    let f: PresentationFile = read_json(path)?;
    Ok(f.to_rules()?)
}

fn load_situation(path: &Path) -> Result<Situation, CliError> {
    Ok(match read_json::<SituationFile>(path)? {
        SituationFile::Internal(b) => Situation::Internal(b.to_situation()?),
        SituationFile::External(e) => Situation::External(e.to_situation()?),
    })
}

fn write_file<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    crate::formats::write_json(path, value)?;
    Ok(())
}

/// Writes to `-o` when given; otherwise the file goes to stdout, or to `data` with `--json`.
fn emit<T: Serialize>(o: &mut Outcome, g: &Global, value: &T) -> Result<(), CliError> {
    match &g.output {
        Some(p) => {
            write_file(p, value)?;
            o.line(format!("wrote {}", p.display()));
        }
        None => {
            let v = serde_json::to_value(value).expect("serializable");
            if !g.json {
                o.file = Some(to_json(&v));
            }
            o.data = Some(v);
        }
    }
    Ok(())
}

fn val<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn names(m: &Magma, xs: &[ElementId]) -> Vec<String> {
    xs.iter().map(|&x| m.name(x).to_string()).collect()
}

fn subset(m: &Magma, list: &str, generate: bool) -> Result<Vec<ElementId>, CliError> {
    let parts: Vec<&str> = list.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    let ids = subset_by_names(m, &parts)?;
    Ok(if generate { m.generated_by(&ids) } else { ids })
}

fn axiom_report(ap: &FiniteActions, r: &AxiomReport<ElementId, ElementId>) -> JsonReport {
    JsonReport::of(r, |w| {
        w.alphas
            .iter()
            .map(|&a| ap.a.name(a).to_string())
            .chain(w.us.iter().map(|&u| ap.u.name(u).to_string()))
            .collect()
    })
}

fn iso_report(product: &Magma, target: Option<&Path>) -> Result<Option<JsonReport>, CliError> {
    let Some(path) = target else { return Ok(None) };
    let other = load_magma(path)?;
    let tag = "isomorphic";
    Ok(Some(match find_isomorphism(product, &other, 10_000_000) {
        IsoSearch::Found(map) => JsonReport::of(&Report::<()>::pass(tag), |_| vec![])
            .with_witness(map.iter().map(|&y| other.name(y).to_string()).collect()),
        IsoSearch::NotIsomorphic => JsonReport::of(&Report::fail(tag, ()), |_| vec![]),
        IsoSearch::CapExceeded => {
            JsonReport::of(&Report::<()>::new(tag, Verdict::Inconclusive, None), |_| vec![])
        }
    }))
}

impl JsonReport {
    fn with_witness(mut self, w: Vec<String>) -> JsonReport {
        self.witness = Some(w);
        self
    }

    fn note(mut self, n: impl Into<String>) -> JsonReport {
        self.notes.push(n.into());
        self
    }
}

fn simple(tag: &str, verdict: Verdict) -> JsonReport {
    JsonReport {
        property: tag.into(),
        verdict,
        witness: None,
        notes: vec![],
    }
}

fn product_file(operation: &str, ap: &FiniteActions, table: &ProductMagma<ElementId, ElementId>, g: &Global) -> ProductFile {
    ProductFile {
        magma: MagmaFile::from_magma(&table.magma),
        pairs: table
            .pairs
            .iter()
            .map(|&(u, a)| [ap.u.name(u).to_string(), ap.a.name(a).to_string()])
            .collect(),
        provenance: Provenance {
            operation: operation.into(),
            u: MagmaFile::from_magma(&ap.u),
            a: MagmaFile::from_magma(&ap.a),
            kind: Some(classify_product(ap, &g.fuel()).to_string()),
        },
    }
}

// ---------------------------------------------------------------- magmas

fn cmd_check(m: &Magma, props: &[String]) -> Res {
    let mut sel = Vec::new();
    for p in props {
        if p == "all" {
            sel.extend(Property::ALL);
        } else {
            sel.push(p.parse::<Property>().map_err(usage)?);
        }
    }
    let mut o = Outcome::default();
    for p in sel {
        o.report(JsonReport::of(&check_property(m, p), |w| names(m, w)));
    }
    Ok(o)
}

fn cmd_identities(m: &Magma) -> Res {
    let mut o = Outcome::default();
    let flags = identities_of(m);
    let mut data = Vec::new();
    for f in &flags {
        let kinds: Vec<&str> = [
            (f.right_identity, "right"),
            (f.left_identity, "left"),
            (f.full_identity, "full"),
            (f.global_identity, "global"),
        ]
        .iter()
        .filter(|(b, _)| *b)
        .map(|(_, s)| *s)
        .collect();
        o.line(format!(
            "{}: {} (right identity for [{}]; left identity for [{}])",
            m.name(f.element),
            if kinds.is_empty() { "-".to_string() } else { kinds.join(" ") },
            names(m, &f.right_identity_for).join(", "),
            names(m, &f.left_identity_for).join(", "),
        ));
        data.push(json!({
            "element": m.name(f.element),
            "right_identity": f.right_identity,
            "left_identity": f.left_identity,
            "full_identity": f.full_identity,
            "global_identity": f.global_identity,
            "right_identity_for": names(m, &f.right_identity_for),
            "left_identity_for": names(m, &f.left_identity_for),
        }));
    }
    o.data = Some(Value::Array(data));
    Ok(o)
}

fn cmd_units(m: &Magma) -> Res {
    let mut o = Outcome::default();
    let mut data = Vec::new();
    match properties::global_identity(m) {
        None => o.line("no global identity"),
        Some(e) => {
            o.line(format!("identity {}", m.name(e)));
            for u in properties::units_of(m) {
                let inv = properties::inverse(m, u).expect("unit");
                o.line(format!("{} inverse {}", m.name(u), m.name(inv)));
                data.push(json!([m.name(u), m.name(inv)]));
            }
        }
    }
    o.data = Some(Value::Array(data));
    Ok(o)
}

fn cmd_lclm(m: &Magma, a: &str, b: &str, all: bool) -> Res {
    let (x, y) = (m.lookup(a)?, m.lookup(b)?);
    let mut o = Outcome::default();
    if all {
        let v = properties::all_lclms(m, x, y);
        o.line(names(m, &v).join(", "));
        o.data = Some(json!(names(m, &v)));
        let verdict = if v.is_empty() { Verdict::Fail } else { Verdict::Pass };
        o.report(simple("lclm", verdict));
        return Ok(o);
    }
    match properties::lclm(m, x, y) {
        Some(l) => {
            o.line(format!(
                "{} = {}·{} = {}·{}",
                m.name(l.multiple),
                m.name(l.left),
                a,
                m.name(l.right),
                b
            ));
            o.data = Some(json!({
                "multiple": m.name(l.multiple),
                "left": m.name(l.left),
                "right": m.name(l.right),
            }));
            o.report(simple("lclm", Verdict::Pass));
        }
        None => o.report(simple("lclm", Verdict::Fail).with_witness(vec![a.into(), b.into()])),
    }
    Ok(o)
}

// ---------------------------------------------------------------- actions and products

fn cmd_derive(m: &Magma, s: &Split, g: &Global) -> Res {
    let u = subset(m, &s.u, s.generate)?;
    let a = subset(m, &s.a, s.generate)?;
    let d = derive_internal_actions(m, &u, &a)?;
    let mut o = Outcome::default();
    o.report(simple("unique_factorization", Verdict::Pass).note(format!("|U| = {}, |A| = {}", u.len(), a.len())));
    emit(&mut o, g, &ActionsFile::from_actions(&d.actions, &ProductDomain::Full))?;
    Ok(o)
}

fn parse_axioms(list: &[String], default: &[&str]) -> Result<Vec<Axiom>, CliError> {
    let src: Vec<String> = if list.is_empty() {
        default.iter().map(|s| s.to_string()).collect()
    } else {
        list.to_vec()
    };
    let mut out = Vec::new();
    for s in &src {
        for a in Axiom::parse_group(s).map_err(usage)? {
            if !out.contains(&a) {
                out.push(a);
            }
        }
    }
    Ok(out)
}

fn cmd_check_axiom(path: &Path, axioms: &[String], fuzz: Option<usize>, g: &Global) -> Res {
    let (ap, e) = load_actions(path)?;
    let mut o = Outcome::default();
    match fuzz {
        None => {
            let axes = parse_axioms(axioms, &["all"])?;
            for r in check_axioms(&ap, &e, &axes, &g.fuel()) {
                o.report(axiom_report(&ap, &r));
            }
        }
        Some(n) => {
            let axes = parse_axioms(axioms, &["P2", "P7"])?;
            let base = check_axioms(&ap, &e, &axes, &g.fuel());
            if let Some(bad) = base.iter().find(|r| !r.passed()) {
                return Err(CliError::Failed(format!("uncorrupted table already fails: {}", axiom_report(&ap, bad).text())));
            }
            let cases = fuzz_axioms(&ap, &e, &axes, n, g.seed);
            let detected = cases.iter().filter(|c| c.detected()).count();
            let mut r = simple("fuzz_detection", if detected == cases.len() { Verdict::Pass } else { Verdict::Fail })
                .note(format!("{detected}/{} corruptions detected, seed {}", cases.len(), g.seed));
            if let Some(c) = cases.iter().find(|c| !c.detected()) {
                r = r.with_witness(vec![
                    ap.a.name(c.corruption.alpha).to_string(),
                    ap.u.name(c.corruption.u).to_string(),
                    format!("{:?}", c.corruption.field).to_lowercase(),
                ]);
            }
            for c in &cases {
                let (an, un) = (ap.a.name(c.corruption.alpha), ap.u.name(c.corruption.u));
                let tags: Vec<&str> = c.failing.iter().map(|(t, _)| t.as_str()).collect();
                o.line(format!("{:?}({an}, {un}): {}", c.corruption.field, tags.join(" ")).to_lowercase());
            }
            o.report(r);
            o.data = Some(val(&cases));
        }
    }
    Ok(o)
}

fn cmd_families(path: &Path, g: &Global) -> Res {
    let (ap, _) = load_actions(path)?;
    let f = family_properties(&ap, &g.fuel());
    let mut o = Outcome::default();
    for r in f.exp.all().into_iter().chain(f.dot.all()) {
        // family properties are descriptive; a false one is not a failure of the command
        o.report(axiom_report(&ap, r));
    }
    o.exit = Some(0);
    Ok(o)
}

fn cmd_product(path: &Path, compare: Option<&Path>, g: &Global) -> Res {
    let (ap, e) = load_actions(path)?;
    let ext = external_product(ap.clone(), e, &g.fuel());
    let mut o = Outcome::default();
    for r in &ext.closure {
        o.report(axiom_report(&ap, r));
    }
    o.report(JsonReport::of(&ext.h_in_projections, |&(a, u)| {
        vec![ap.a.name(a).into(), ap.u.name(u).into()]
    }));
    // totality is informational: partial products are legitimate
    let total = JsonReport::of(&ext.total_on_e, |(x, y)| {
        vec![
            format!("({},{})", ap.u.name(x.0), ap.a.name(x.1)),
            format!("({},{})", ap.u.name(y.0), ap.a.name(y.1)),
        ]
    });
    o.line(total.text());
    if ext.closed().is_fail() {
        return Ok(o);
    }
    let table = ext.product.to_magma(&g.fuel())?;
    if let Some(r) = iso_report(&table.magma, compare)? {
        o.report(r);
    }
    emit(&mut o, g, &product_file("product", &ap, &table, g))?;
    Ok(o)
}

fn cmd_reconstruct(m: &Magma, s: &Split, g: &Global) -> Res {
    let u = subset(m, &s.u, s.generate)?;
    let a = subset(m, &s.a, s.generate)?;
    let rec = reconstruction_iso(m, &u, &a)?;
    let mut o = Outcome::default();
    let verdict = if rec.mismatches == 0 { Verdict::Pass } else { Verdict::Fail };
    o.report(simple("reconstruction", verdict).note(format!(
        "{} mismatches over {} entries, {} pairs",
        rec.mismatches,
        rec.entries_checked,
        rec.product.pairs.len()
    )));
    emit(&mut o, g, &product_file("reconstruct", &rec.derived.actions, &rec.product, g))?;
    Ok(o)
}

fn cmd_full_product(path: &Path, compare: Option<&Path>, group: bool, g: &Global) -> Res {
    let (ap, _) = load_actions(path)?;
    let built: Result<FullProduct, ProductError> = if group { group_product(&ap) } else { monoid_product(&ap) };
    let tag = if group { "group_product" } else { "monoid_product" };
    let mut o = Outcome::default();
    let full = match built {
        Ok(f) => f,
        Err(ProductError::Incomplete) => return Err(ProductError::Incomplete.into()),
        Err(e) => {
            o.report(simple(tag, Verdict::Fail).note(e.to_string()));
            return Ok(o);
        }
    };
    o.report(simple(tag, Verdict::Pass).note(format!(
        "order {}, identity {}",
        full.table.magma.size(),
        full.table.magma.name(full.identity)
    )));
    if group {
        o.report(JsonReport::of(&check_inverse_formula(&ap), |&(a, u)| {
            vec![ap.a.name(a).into(), ap.u.name(u).into()]
        }));
    }
    if let Some(r) = iso_report(&full.table.magma, compare)? {
        o.report(r);
    }
    emit(&mut o, g, &product_file(tag, &ap, &full.table, g))?;
    Ok(o)
}

fn cmd_classify(path: &Path, g: &Global) -> Res {
    let (ap, _) = load_actions(path)?;
    let kind = classify_product(&ap, &g.fuel());
    let mut o = Outcome::default();
    o.line(kind.to_string());
    o.data = Some(json!(kind));
    Ok(o)
}

fn cmd_product_lclm(
    actions: Option<&Path>,
    x: &[String],
    y: &[String],
    witness: Option<&[String]>,
    swap: bool,
    g: &Global,
) -> Res {
    if swap {
        if actions.is_some() {
            return Err(usage("--swap takes no actions file"));
        }
        let zs = free_swap_product();
        let words = zs.actions.u.clone();
        let parse = |v: &[String]| -> Result<(Word, ElementId), CliError> {
            Ok((words.alphabet.parse(&v[0])?, zs.actions.a.lookup(&v[1])?))
        };
        // the hypothesis checks quantify over pairs of words, so keep the default small
        let fuel = g.fuel_or(4);
        lclm_outcome(&zs, parse(x)?, parse(y)?, witness.map(parse).transpose()?, &fuel)
    } else {
        let path = actions.ok_or_else(|| usage("product-lclm needs an actions file or --swap"))?;
        let (ap, e) = load_actions(path)?;
        let zs = ZsProduct::new(ap, e);
        let parse = |v: &[String]| -> Result<(ElementId, ElementId), CliError> {
            Ok((zs.actions.u.lookup(&v[0])?, zs.actions.a.lookup(&v[1])?))
        };
        lclm_outcome(&zs, parse(x)?, parse(y)?, witness.map(parse).transpose()?, &g.fuel())
    }
}

fn lclm_outcome<U: LeftMultiples>(
    zs: &ZsProduct<Magma, U>,
    x: (U::Elem, ElementId),
    y: (U::Elem, ElementId),
    witness: Option<(U::Elem, ElementId)>,
    fuel: &Fuel,
) -> Res {
    let w = product_lclm(zs, &x, &y, witness.as_ref(), fuel)?;
    let show = |p: &(U::Elem, ElementId)| zs.render(p);
    let mut o = Outcome::default();
    o.line(format!("{} = {}·{} = {}·{}", show(&w.multiple), show(&w.left), show(&x), show(&w.right), show(&y)));
    o.data = Some(json!({
        "multiple": show(&w.multiple),
        "left": show(&w.left),
        "right": show(&w.right),
        "quotient": show(&w.quotient),
        "u_level": [zs.actions.u.render(&w.u_level.0), zs.actions.u.render(&w.u_level.1), zs.actions.u.render(&w.u_level.2)],
    }));
    o.report(simple("product_lclm", Verdict::Pass));
    Ok(o)
}

fn cmd_assoc_chain(m: &Magma, factors: &[String], trees: &[String]) -> Res {
    let fs = factors
        .iter()
        .map(|f| subset(m, f, false))
        .collect::<Result<Vec<_>, _>>()?;
    let trees: Vec<ParenTree> = if trees.is_empty() {
        vec![ParenTree::left_comb(fs.len())]
    } else {
        trees.iter().map(|t| ParenTree::parse(t)).collect::<Result<_, _>>()?
    };
    let mut o = Outcome::default();
    let mut results = Vec::new();
    for (k, t) in trees.iter().enumerate() {
        let r = assoc_chain_iso(m, &fs, t)?;
        if k == 0 {
            for c in &r.conditions {
                o.report(JsonReport::of(c, |w| names(m, w)));
            }
        }
        let iso = r.map.is_isomorphism();
        o.report(JsonReport::of(&iso, |w| names(m, w)).renamed(format!("tree {}", trees[k].show())));
        results.push(r);
    }
    if results.len() >= 2 {
        let comp = chain_composite(&results[0], &results[1])?;
        o.report(JsonReport::of(&comp.is_isomorphism(), |w| names(&results[1].nested, w)).renamed("composite"));
    }
    Ok(o)
}

impl JsonReport {
    fn renamed(mut self, p: impl Into<String>) -> JsonReport {
        self.property = p.into();
        self
    }
}

trait ShowTree {
    fn show(&self) -> String;
}

impl ShowTree for ParenTree {
    fn show(&self) -> String {
        match self {
            ParenTree::Leaf(i) => (i + 1).to_string(),
            ParenTree::Node(l, r) => format!("({} {})", l.show(), r.show()),
        }
    }
}

// ---------------------------------------------------------------- rewriting

fn load_rel(path: &Path) -> Result<AbstractRel, CliError> {
    let f: RelationFile = read_json(path)?;
    Ok(f.to_rel()?)
}

fn cmd_closure(path: &Path, kind: &str, g: &Global) -> Res {
    let r = load_rel(path)?;
    let k: ClosureKind = kind.parse().map_err(usage)?;
    let mut o = Outcome::default();
    emit(&mut o, g, &RelationFile::from_rel(&r.closure(k)))?;
    Ok(o)
}

fn cmd_rel_check(path: Option<&Path>, props: &[String], random: Option<usize>, size: usize, p: f64, g: &Global) -> Res {
    let mut o = Outcome::default();
    if let Some(n) = random {
        if path.is_some() {
            return Err(usage("--random takes no relation file"));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(usage("--p must lie in [0, 1]"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        let (mut terminating, mut violation) = (0, None);
        for _ in 0..n {
            let r = AbstractRel::random(size, p, &mut rng);
            if let Some(flags) = r.newman_profile() {
                terminating += 1;
                if flags.iter().any(|&f| f != flags[0]) && violation.is_none() {
                    violation = Some(r);
                }
            }
        }
        let mut rep = simple(
            "newman_agreement",
            if violation.is_some() { Verdict::Fail } else { Verdict::Pass },
        )
        .note(format!("{n} relations on {size} elements, {terminating} terminating, seed {}", g.seed));
        if let Some(r) = violation {
            rep = rep.with_witness(r.edges().iter().map(|(a, b)| format!("{a}->{b}")).collect());
        }
        o.report(rep);
        return Ok(o);
    }
    let r = load_rel(path.ok_or_else(|| usage("rel-check needs a relation file or --random"))?)?;
    let mut sel = Vec::new();
    for s in props {
        if s == "all" {
            sel.extend(RelProperty::ALL);
        } else {
            sel.push(s.parse::<RelProperty>().map_err(usage)?);
        }
    }
    for prop in sel {
        o.report(JsonReport::of(&r.check(prop), |w| w.iter().map(usize::to_string).collect()));
    }
    Ok(o)
}

fn cmd_normal_forms(path: &Path) -> Res {
    let r = load_rel(path)?;
    let nf = r.normal_forms()?;
    let mut o = Outcome::default();
    for (a, b) in nf.iter().enumerate() {
        o.line(format!("{a} -> {b}"));
    }
    o.data = Some(json!(nf));
    Ok(o)
}

fn cmd_rewrite(path: &Path, word: &str) -> Res {
    let rs = load_rules(path)?;
    let w = rs.word(word)?;
    let next: Vec<String> = rs.one_step(&w).iter().map(|v| rs.alphabet().display(v)).collect();
    let mut o = Outcome::default();
    for s in &next {
        o.line(s.clone());
    }
    o.data = Some(json!(next));
    Ok(o)
}

fn cmd_normalize(path: &Path, word: &str, trace: bool, g: &Global) -> Res {
    let rs = load_rules(path)?;
    let w = rs.word(word)?;
    let mut o = Outcome::default();
    let show = |v: &Word| rs.alphabet().display(v);
    if trace {
        let steps = rs.normalize_trace(&w, g.fuel)?;
        let mut data = Vec::new();
        for (before, s) in &steps {
            let r = &rs.rules()[s.rule];
            o.line(format!("{} [{} -> {} at {}]", show(before), show(&r.lhs), show(&r.rhs), s.pos));
            data.push(json!({ "word": show(before), "rule": s.rule, "pos": s.pos }));
        }
        let nf = rs.normalize(&w, g.fuel)?;
        o.line(show(&nf));
        o.data = Some(json!({ "normal_form": show(&nf), "steps": data }));
    } else {
        let nf = rs.normalize(&w, g.fuel)?;
        o.line(show(&nf));
        o.data = Some(json!({ "normal_form": show(&nf) }));
    }
    Ok(o)
}

fn render_words(rs: &RuleSet, w: &[Word]) -> Vec<String> {
    w.iter().map(|v| rs.alphabet().display(v)).collect()
}

fn cmd_local_confluence(path: &Path, g: &Global) -> Res {
    let rs = load_rules(path)?;
    let mut o = Outcome::default();
    o.report(JsonReport::of(&string_local_confluence(&rs, g.fuel), |w| render_words(&rs, w)));
    Ok(o)
}

fn letters(rs: &RuleSet, list: &str) -> Result<Vec<usize>, CliError> {
    list.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| rs.alphabet().index(s).ok_or_else(|| usage(format!("unknown generator {s:?}"))))
        .collect()
}

fn rank_of(rs: &RuleSet, list: Option<&str>) -> Result<Vec<usize>, CliError> {
    let n = rs.alphabet().len();
    let Some(list) = list else { return Ok(TerminationCert::natural_rank(n)) };
    let order = letters(rs, list)?;
    if order.len() != n {
        return Err(usage(format!("--rank lists {} of {} generators", order.len(), n)));
    }
    let mut rank = vec![0; n];
    for (r, &gen) in order.iter().enumerate() {
        rank[gen] = r;
    }
    Ok(rank)
}

fn cmd_termination(path: &Path, cert: CertArg, x_letters: Option<&str>, rank: Option<&str>, g: &Global) -> Res {
    let rs = load_rules(path)?;
    let mut o = Outcome::default();
    let xs = x_letters.map(|l| letters(&rs, l)).transpose()?;
    let cert = match cert {
        CertArg::Auto => {
            let c = completeness(&rs, xs.as_deref(), &g.fuel());
            match c.certificate {
                Some(found) => {
                    o.report(simple("termination", Verdict::Pass).note(found.name()));
                    o.data = Some(json!(found));
                }
                None => o.report(simple("termination", Verdict::Inconclusive).note("no certificate applies")),
            }
            return Ok(o);
        }
        CertArg::LengthReducing => TerminationCert::LengthReducing,
        CertArg::LengthLex => TerminationCert::LengthLex {
            rank: rank_of(&rs, rank)?,
        },
        CertArg::RecursivePath => TerminationCert::RecursivePath {
            rank: rank_of(&rs, rank)?,
        },
        CertArg::CwMeasure => TerminationCert::CwMeasure {
            x_letters: xs.ok_or_else(|| usage("cw-measure needs --x-letters"))?,
        },
    };
    let r = termination_certificate(&rs, &cert)?;
    o.report(JsonReport::of(&r, |w| render_words(&rs, w)));
    Ok(o)
}

fn cmd_table_pres(m: &Magma, kind: &str, g: &Global) -> Res {
    let k: Kind = kind.parse().map_err(usage)?;
    let rs = table_presentation(m, k)?;
    let c = completeness(&rs, None, &g.fuel());
    let mut o = Outcome::default();
    o.report(JsonReport::of(&c.report, |w| render_words(&rs, w)));
    emit(&mut o, g, &PresentationFile::from_rules(&rs))?;
    Ok(o)
}

// ---------------------------------------------------------------- presentations

fn presentation_file(p: &ProductPresentation) -> PresentationFile {
    let mut f = PresentationFile::from_rules(&p.presentation.rules);
    f.origins = Some(p.presentation.origins.iter().map(|o| format!("{o:?}")).collect());
    f
}

fn load_gen(path: &Path) -> Result<crate::presentations::GenActions, CliError> {
    let f: GenActionsFile = read_json(path)?;
    Ok(f.to_gen()?)
}

fn cmd_zs_pres(
    pres_u: &Path,
    pres_a: &Path,
    actions: Option<&Path>,
    gen: Option<&Path>,
    mode: Option<ModeArg>,
    expected: Option<usize>,
    g: &Global,
) -> Res {
    let (ru, ra) = (load_rules(pres_u)?, load_rules(pres_a)?);
    let mode = match (mode, actions, gen) {
        (Some(ModeArg::Full), Some(_), _) | (None, Some(_), None) => PresentationMode::Full,
        (Some(ModeArg::Generators), _, Some(_)) | (None, None, Some(_)) => PresentationMode::Generators,
        _ => return Err(usage("full mode needs --actions; generators mode needs --gen")),
    };
    let pp = match mode {
        PresentationMode::Full => {
            let (ap, _) = load_actions(actions.expect("checked"))?;
            zs_presentation_full(&ru, &ra, &ap, &g.fuel())?
        }
        PresentationMode::Generators => {
            zs_presentation_generators(&ru, &ra, &load_gen(gen.expect("checked"))?, expected, &g.fuel())?
        }
    };
    let rs = &pp.presentation.rules;
    let mut o = Outcome::default();
    o.line(format!(
        "{} rules: {} R, {} T, {} W",
        rs.rules().len(),
        pp.presentation.count(RuleOrigin::R),
        pp.presentation.count(RuleOrigin::T),
        pp.presentation.count(RuleOrigin::W)
    ));
    o.report(JsonReport::of(&pp.completeness.report, |w| render_words(rs, w)));
    o.report(JsonReport::of(&pp.consistency, |w| w.iter().map(usize::to_string).collect()));
    emit(&mut o, g, &presentation_file(&pp))?;
    Ok(o)
}

fn cmd_action_pres(path: &Path, g: &Global) -> Res {
    let ga = load_gen(path)?;
    let (pres, report) = action_presentation(&ga, &g.fuel());
    let mut o = Outcome::default();
    o.report(JsonReport::of(&report, |w| render_words(&pres.rules, w)));
    let mut f = PresentationFile::from_rules(&pres.rules);
    f.origins = Some(pres.origins.iter().map(|o| format!("{o:?}")).collect());
    emit(&mut o, g, &f)?;
    Ok(o)
}

fn cmd_extend_actions(path: &Path, g: &Global) -> Res {
    let ga = load_gen(path)?;
    let ext = extend_gen_actions(&ga, g.fuel);
    let mut o = Outcome::default();
    for r in extension_checks(&ext, &g.fuel()) {
        o.report(JsonReport::of(&r, |w| {
            w.alphas
                .iter()
                .map(|a| ext.a.render(a))
                .chain(w.us.iter().map(|u| ext.u.render(u)))
                .collect()
        }));
    }
    Ok(o)
}

fn cmd_twisted3(
    pres_u: &Path,
    pres_a: &Path,
    gen: &Path,
    sample_len: usize,
    emit_actions: Option<&Path>,
    g: &Global,
) -> Res {
    let (ru, ra) = (load_rules(pres_u)?, load_rules(pres_a)?);
    let ga = load_gen(gen)?;
    let t = twisted_iii_check(&ru, &ra, &ga, sample_len, &g.fuel())?;
    let mut o = Outcome::default();
    for r in [&t.hypotheses, &t.well_defined, &t.generator_image] {
        o.report(JsonReport::of(r, Clone::clone));
    }
    if let (Some(path), Some(ind)) = (emit_actions, &t.induced) {
        write_file(path, &ActionsFile::from_actions(&ind.actions, &ProductDomain::Full))?;
        o.line(format!("wrote {}", path.display()));
    }
    Ok(o)
}

fn cmd_wp(path: &Path, w1: &str, w2: &str, g: &Global) -> Res {
    let rs = load_rules(path)?;
    let (a, b) = (rs.word(w1)?, rs.word(w2)?);
    let ans = word_problem(&rs, &a, &b, &g.fuel());
    let mut o = Outcome::default();
    let s = serde_json::to_value(ans).expect("serializable");
    o.line(s.as_str().unwrap_or_default().to_string());
    o.data = Some(s);
    o.exit = Some(ans.exit_code());
    Ok(o)
}

// ---------------------------------------------------------------- categories

fn cmd_category(path: &Path, from_magma: bool, g: &Global) -> Res {
    let mut o = Outcome::default();
    if from_magma {
        let m = load_magma(path)?;
        let c = category_from_magma(&m)?;
        o.report(simple("category", Verdict::Pass).note(format!(
            "{} objects, {} morphisms",
            c.objects().len(),
            c.arrows().len()
        )));
        emit(&mut o, g, &CategoryFile::from_category(&c))?;
    } else {
        let f: CategoryFile = read_json(path)?;
        let c = match f.to_category() {
            Ok(c) => c,
            Err(FormatError::Category(e)) => {
                o.report(simple("category", Verdict::Fail).note(e.to_string()));
                return Ok(o);
            }
            Err(e) => return Err(e.into()),
        };
        let m = category_as_magma(&c)?;
        o.report(simple("category", Verdict::Pass).note(format!(
            "{} objects, {} morphisms",
            c.objects().len(),
            c.arrows().len()
        )));
        emit(&mut o, g, &MagmaFile::from_magma(&m))?;
    }
    Ok(o)
}

fn cmd_convert(path: &Path, g: &Global) -> Res {
    let mut o = Outcome::default();
    match load_situation(path)? {
        Situation::Internal(sit) => {
            let (conv, _) = internal_to_external(&sit)?;
            for r in &conv.conditions {
                o.report(JsonReport::of(r, Clone::clone));
            }
            emit(&mut o, g, &ExternalFile::from_situation(&conv.situation))?;
        }
        Situation::External(sit) => {
            let int = external_to_internal(&sit)?;
            for r in &int.conditions {
                o.report(JsonReport::of(r, Clone::clone));
            }
            emit(&mut o, g, &BundleFile::from_situation(&int.situation))?;
        }
    }
    Ok(o)
}

fn cmd_roundtrip(path: &Path) -> Res {
    let sit = load_situation(path)?;
    let mut o = Outcome::default();
    for r in int_ext_roundtrip(&sit)? {
        o.report(JsonReport::of(&r, Clone::clone));
    }
    Ok(o)
}

// ---------------------------------------------------------------- examples

fn cmd_example(name: Option<&str>, list: bool, emit_actions: Option<&Path>, dir: Option<&Path>, g: &Global) -> Res {
    let mut o = Outcome::default();
    if list {
        for n in stock::NAMES {
            o.line(n);
        }
        o.data = Some(json!(stock::NAMES));
        return Ok(o);
    }
    let name = name.ok_or_else(|| usage("example needs a name or --list"))?;
    let ex = stock::stock_example(name).map_err(|e| usage(format!("unknown example {:?}; try --list", e.0)))?;
    let mut files: Vec<(&str, Value)> = Vec::new();
    match ex {
        StockExample::Factorization(f) => {
            o.report(JsonReport::of(&complement_check(&f.group, &f.u, &f.a), |w| names(&f.group, w)));
            let d = f.derive()?;
            o.report(simple("kind", Verdict::Pass).note(classify_product(&d.actions, &g.fuel()).to_string()));
            files.push(("group.json", val(&MagmaFile::from_magma(&f.group))));
            files.push(("actions.json", val(&ActionsFile::from_actions(&d.actions, &ProductDomain::Full))));
        }
        StockExample::Complements(c) => {
            let r = rigidity(&c);
            o.line(format!(
                "J ≅ L: {}; {} automorphisms, {} carry J to L",
                r.isomorphic, r.automorphisms, r.carrying
            ));
            let verdict = if r.isomorphic && r.carrying == 0 { Verdict::Pass } else { Verdict::Fail };
            o.report(simple("rigidity", verdict));
            o.data = Some(json!({
                "isomorphic": r.isomorphic,
                "automorphisms": r.automorphisms,
                "carrying": r.carrying,
                "J": names(&c.group, &c.j),
                "L": names(&c.group, &c.l),
                "K": names(&c.group, &c.k),
            }));
            files.push(("group.json", val(&MagmaFile::from_magma(&c.group))));
        }
        StockExample::Presentation(p) => {
            o.line(format!("expected order {}", p.expected));
            files.push(("gen.json", val(&GenActionsFile::from_gen(&p.gen))));
            files.push(("u.json", val(&PresentationFile::from_rules(&p.pres_u))));
            files.push(("a.json", val(&PresentationFile::from_rules(&p.pres_a))));
        }
        StockExample::Groupoid(sit) => {
            let (conv, iso) = internal_to_external(&sit)?;
            o.report(JsonReport::of(&iso, Clone::clone));
            files.push(("bundle.json", val(&BundleFile::from_situation(&sit))));
            files.push(("external.json", val(&ExternalFile::from_situation(&conv.situation))));
        }
    }
    // the first file is the primary artifact; the actions-like one is second when present
    if let Some(path) = emit_actions {
        let (_, v) = files
            .iter()
            .find(|(n, _)| matches!(*n, "actions.json" | "gen.json" | "external.json"))
            .ok_or_else(|| usage(format!("example {name} has no actions")))?;
        write_file(path, v)?;
        o.line(format!("wrote {}", path.display()));
    }
    if let Some(p) = &g.output {
        write_file(p, &files[0].1)?;
        o.line(format!("wrote {}", p.display()));
    }
    if let Some(d) = dir {
        std::fs::create_dir_all(d).map_err(|e| usage(format!("{}: {e}", d.display())))?;
        for (n, v) in &files {
            write_file(&d.join(n), v)?;
            o.line(format!("wrote {}", d.join(n).display()));
        }
    }
    Ok(o)
}
