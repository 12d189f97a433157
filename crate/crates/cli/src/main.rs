//! `opcohom`: command-line front end for labeled-graph operads, their cohomomorphisms and the
//! quadratic-algebra calculus.
//!
//! Exit codes: 0 success, 1 invalid input, 2 cap exceeded, 3 internal invariant violation.

mod emit;
mod manifest;

use clap::{Args, Parser, Subcommand, ValueEnum};
use emit::{dims_json, polynomial_text, pretty, signature_key, subspace_json, subspaces_latex};
use manifest::RunManifest;
use opcohom::collections::standard::{binary_regular, binary_symmetric};
use opcohom::collections::Collection;
use opcohom::free::presentation::{associative, commutative, OperadPresentation};
use opcohom::free::{check_triple_laws, ClassCatalog, FreeOperad};
use opcohom::graph::canon::graph_canonical;
use opcohom::graph::morphism::{assemble_with, compose};
use opcohom::graph::{Graph, GraphMorphism};
use opcohom::labeling::axioms::check_gamma_axioms;
use opcohom::labeling::{Caps, GammaPreset, LabeledGraph, Signature};
use opcohom::operad_cohom::{check_cohom, cohom_operads, unit_presented, weight_profile, Presented};
use opcohom::palg::op_end::{op_end, p_algebra_structures, FlavoredFamily};
use opcohom::palg::{cohom_p_algebras, free_p_algebra, tensor_p_algebras, AlgebraOperad, PresentedPAlgebra};
use opcohom::quadratic::cohom::{coend, cohom};
use opcohom::quadratic::AlgebraPresentation;
use opcohom::{acceptance, Error, Result};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "opcohom", version, about = "Operads over labeled graphs, inner cohomomorphisms and quadratic algebras")]
struct Cli {
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write a JSON run manifest (command, caps, input and output digests) here.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct CapArgs {
    /// Largest number of flags of a corolla.
    #[arg(long, default_value_t = 4)]
    arity: usize,
    /// Largest number of vertices of a graph.
    #[arg(long, default_value_t = 3)]
    weight: usize,
    /// Largest genus (modular presets) or first Betti number (directed presets with cycles).
    #[arg(long, default_value_t = 1)]
    genus: u32,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps { max_arity: self.arity, max_weight: self.weight, max_genus: self.genus }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Latex,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Graphs and graph morphisms.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Axioms of a labeled-graph category.
    #[command(subcommand)]
    Gamma(GammaCmd),
    /// Collections: show, white product, inner cohom.
    #[command(subcommand)]
    Coll(CollCmd),
    /// Free operads, quotients and the triple laws.
    #[command(subcommand)]
    Operad(OperadCmd),
    /// Inner cohomomorphism of two presented operads.
    Opcohom(OpcohomArgs),
    /// Quadratic and N-homogeneous algebras.
    Qalg(QalgArgs),
    /// Algebras over an operad with comultiplication.
    #[command(subcommand)]
    Palg(PalgCmd),
    /// Run an acceptance suite (`all` for every suite).
    Acceptance {
        suite: String,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Check a graph or morphism file; exits 1 listing every violation.
    Validate { file: PathBuf },
    /// `second ∘ first`.
    Compose { first: PathBuf, second: PathBuf },
    Decompose { file: PathBuf },
    Atomize { file: PathBuf },
    /// Canonical form, isomorphism key and invariants of a graph.
    Canon { file: PathBuf },
}

#[derive(Subcommand)]
enum GammaCmd {
    /// Axiom checks on the given labeled graphs, or on every graph of the class catalog.
    Check {
        #[arg(long)]
        preset: GammaPreset,
        files: Vec<PathBuf>,
        #[command(flatten)]
        caps: CapArgs,
    },
}

#[derive(Subcommand)]
enum CollCmd {
    Show { file: PathBuf },
    White { a: PathBuf, b: PathBuf },
    Cohom { a: PathBuf, b: PathBuf },
}

#[derive(Args)]
struct GeneratorChoice {
    /// Generators as a collection JSON file.
    #[arg(long, conflicts_with_all = ["binary_sym", "binary_regular"])]
    gens: Option<PathBuf>,
    /// One binary generator with trivial action.
    #[arg(long)]
    binary_sym: bool,
    /// The regular representation in arity two.
    #[arg(long)]
    binary_regular: bool,
}

#[derive(Subcommand)]
enum OperadCmd {
    /// Dimensions of the free operad on a collection.
    Free {
        #[arg(long)]
        preset: GammaPreset,
        #[command(flatten)]
        generators: GeneratorChoice,
        #[command(flatten)]
        caps: CapArgs,
        /// Print only the dimensions, arity 1 first, on one line.
        #[arg(long)]
        dims: bool,
    },
    /// Quotient of a free operad by a presentation file.
    Quotient {
        pres: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Presentation JSON of a built-in operad: `associative`, `commutative` or `unit`.
    Builtin {
        #[arg(long)]
        preset: GammaPreset,
        name: String,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// μ-associativity and both unit laws of `F`.
    CheckTriple {
        #[arg(long)]
        preset: GammaPreset,
        #[command(flatten)]
        generators: GeneratorChoice,
        #[command(flatten)]
        caps: CapArgs,
    },
}

#[derive(Args)]
struct OpcohomArgs {
    #[arg(long)]
    gamma: GammaPreset,
    /// Presentation JSON, or one of `associative`, `commutative`, `unit`.
    #[arg(long = "A")]
    a: String,
    #[arg(long = "B")]
    b: String,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long, value_enum, default_value_t = Emit::Json)]
    emit: Emit,
}

#[derive(Clone, Copy, ValueEnum)]
enum QalgOp {
    Dual,
    White,
    Black,
    Cohom,
    Dims,
    Coend,
}

#[derive(Args)]
struct QalgArgs {
    #[arg(value_enum)]
    op: QalgOp,
    /// Algebra in the text format (`generators:`, `degree:`, `relation:` lines) or JSON.
    #[arg(long)]
    algebra: PathBuf,
    /// Second argument of `white`, `black` and `cohom`.
    #[arg(long = "with")]
    other: Option<PathBuf>,
    /// Degree cap for `dims`.
    #[arg(long, default_value_t = 4)]
    degree: usize,
    #[arg(long, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
}

#[derive(Args)]
struct OperadChoice {
    /// `associative`, `commutative`, or an ordinary presentation JSON generated in arity two.
    #[arg(long, default_value = "associative")]
    operad: String,
    /// Degree cap, also the arity cap of the operad.
    #[arg(long, default_value_t = 4)]
    degree: usize,
}

#[derive(Subcommand)]
enum PalgCmd {
    /// Dimensions of the free algebra on `generators` generators.
    Free {
        #[command(flatten)]
        operad: OperadChoice,
        #[arg(long)]
        generators: usize,
    },
    /// `V ⊗ W` of two quadratic algebras read as algebras over the operad.
    Tensor {
        #[command(flatten)]
        operad: OperadChoice,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Inner cohomomorphism of two quadratic algebras read as algebras over the operad.
    Cohom {
        #[command(flatten)]
        operad: OperadChoice,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Structures of an algebra over the operad on a flavored family, as polynomial conditions.
    Structures {
        #[arg(long, default_value = "associative")]
        operad: String,
        #[arg(long)]
        family: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
}

/// Text to emit and the exit status to end with.
struct Outcome {
    text: String,
    status: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut m = RunManifest::new(recorded_command());
    match run(&cli.command, &mut m) {
        Ok(outcome) => {
            m.record_output("output", outcome.text.as_bytes());
            if let Err(e) = write_outputs(&cli, &outcome.text, &m) {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// The command line without the output and manifest destinations.
fn recorded_command() -> Vec<String> {
    let mut out = Vec::new();
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        if a == "--out" || a == "--manifest" {
            args.next();
        } else if !(a.starts_with("--out=") || a.starts_with("--manifest=")) {
            out.push(a);
        }
    }
    out
}

fn write_outputs(cli: &Cli, text: &str, m: &RunManifest) -> Result<()> {
    let io = |p: &Path, e: std::io::Error| Error::InvalidInput(format!("cannot write {}: {e}", p.display()));
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| io(p, e))?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(Error::InvalidInput(format!("cannot write stdout: {e}"))),
                _ => {}
            }
        }
    }
    if let Some(p) = &cli.manifest {
        let v = serde_json::to_value(m)?;
        std::fs::write(p, pretty(&v)).map_err(|e| io(p, e))?;
    }
    Ok(())
}

fn run(cmd: &Command, m: &mut RunManifest) -> Result<Outcome> {
    match cmd {
        Command::Graph(g) => graph(g, m),
        Command::Gamma(GammaCmd::Check { preset, files, caps }) => gamma_check(*preset, files, caps.caps(), m),
        Command::Coll(c) => coll(c, m),
        Command::Operad(o) => operad(o, m),
        Command::Opcohom(a) => opcohom_cmd(a, m),
        Command::Qalg(a) => qalg(a, m),
        Command::Palg(p) => palg(p, m),
        Command::Acceptance { suite } => {
            let results = acceptance::run(suite)?;
            let mut text: String = results.iter().map(|c| c.line() + "\n").collect();
            text.push_str(&String::from_utf8(acceptance::artifact_bytes(&results)).expect("json is UTF-8"));
            text.push('\n');
            let status = if results.iter().all(|c| c.passed) { 0 } else { 3 };
            Ok(Outcome { text, status })
        }
    }
}

fn read_graph(path: &Path, m: &mut RunManifest) -> Result<Graph> {
    Ok(serde_json::from_value(m.read_json(path)?)?)
}

fn read_morphism(path: &Path, m: &mut RunManifest) -> Result<GraphMorphism> {
    let h: GraphMorphism = serde_json::from_value(m.read_json(path)?)?;
    let r = h.validate();
    if !r.is_valid() {
        return Err(Error::InvalidInput(format!("{} is not a valid morphism: {}", path.display(), r.violations.join("; "))));
    }
    Ok(h)
}

fn to_text<T: serde::Serialize>(x: &T) -> Result<String> {
    Ok(pretty(&serde_json::to_value(x)?))
}

fn graph(cmd: &GraphCmd, m: &mut RunManifest) -> Result<Outcome> {
    match cmd {
        GraphCmd::Validate { file } => {
            let v = m.read_json(file)?;
            let report = if v.get("source").is_some() {
                serde_json::from_value::<GraphMorphism>(v)?.validate()
            } else {
                serde_json::from_value::<Graph>(v)?.validate()
            };
            if report.is_valid() {
                return Ok(Outcome::ok("valid\n".into()));
            }
            let text: String = report.violations.iter().map(|x| format!("- {x}\n")).collect();
            Ok(Outcome { text: format!("invalid: {} violation(s)\n{text}", report.violations.len()), status: 1 })
        }
        GraphCmd::Compose { first, second } => {
            let (f, g) = (read_morphism(first, m)?, read_morphism(second, m)?);
            Ok(Outcome::ok(to_text(&compose(&g, &f)?)?))
        }
        GraphCmd::Decompose { file } => {
            let h = read_morphism(file, m)?;
            let d = h.decompose();
            if d.recompose()? != h {
                return Err(Error::Invariant("decomposition does not recompose".into()));
            }
            let v = json!({ "class": h.classify(), "decomposition": d });
            Ok(Outcome::ok(pretty(&v)))
        }
        GraphCmd::Atomize { file } => {
            let h = read_morphism(file, m)?;
            let at = h.atomize();
            if !at.commutes()? || assemble_with(&h.target, &at.parts, &at.grafted)? != h {
                return Err(Error::Invariant("atomization does not reassemble".into()));
            }
            Ok(Outcome::ok(to_text(&at)?))
        }
        GraphCmd::Canon { file } => {
            let g = read_graph(file, m)?;
            let r = g.validate();
            if !r.is_valid() {
                return Err(Error::InvalidInput(r.violations.join("; ")));
            }
            let (key, canon) = graph_canonical(&g)?;
            let v = json!({ "key": key, "canonical": canon, "invariants": g.invariants() });
            Ok(Outcome::ok(pretty(&v)))
        }
    }
}

fn gamma_check(preset: GammaPreset, files: &[PathBuf], caps: Caps, m: &mut RunManifest) -> Result<Outcome> {
    m.preset = Some(preset);
    let sample: Vec<LabeledGraph> = if files.is_empty() {
        m.caps = Some(caps);
        let cat = ClassCatalog::new(preset, caps)?;
        let sigs: Vec<Signature> = cat.signatures().copied().collect();
        sigs.iter().flat_map(|s| cat.classes(s).iter().map(|c| c.graph.clone())).collect()
    } else {
        files.iter().map(|f| Ok(serde_json::from_value(m.read_json(f)?)?)).collect::<Result<_>>()?
    };
    let report = check_gamma_axioms(preset, &sample)?;
    let status = if report.passed() { 0 } else { 1 };
    Ok(Outcome { text: to_text(&report)?, status })
}

fn read_collection(path: &Path, m: &mut RunManifest) -> Result<Collection> {
    let c = Collection::from_json(&m.read_json(path)?)?;
    c.validate()?;
    m.preset = Some(c.preset);
    Ok(c)
}

fn coll(cmd: &CollCmd, m: &mut RunManifest) -> Result<Outcome> {
    let v = match cmd {
        CollCmd::Show { file } => {
            let c = read_collection(file, m)?;
            let dims: Vec<Value> = c.components.iter().map(|(s, x)| json!({ "signature": s, "dim": x.dim(), "weights": x.weights })).collect();
            json!({ "preset": c.preset, "components": dims, "collection": c.to_json() })
        }
        CollCmd::White { a, b } => read_collection(a, m)?.white_product(&read_collection(b, m)?)?.to_json(),
        CollCmd::Cohom { a, b } => {
            let (e, coev) = read_collection(a, m)?.cohom(&read_collection(b, m)?)?;
            let maps: Vec<Value> = coev.maps.iter().map(|(s, x)| json!({ "signature": s, "matrix": x.to_json() })).collect();
            json!({ "cohom": e.to_json(), "coevaluation": maps })
        }
    };
    Ok(Outcome::ok(pretty(&v)))
}

fn generators(choice: &GeneratorChoice, preset: GammaPreset, m: &mut RunManifest) -> Result<Collection> {
    match (&choice.gens, choice.binary_sym, choice.binary_regular) {
        (Some(p), false, false) => {
            let c = read_collection(p, m)?;
            if c.preset != preset {
                return Err(Error::InvalidInput(format!("generators are for {}, not {preset}", c.preset)));
            }
            Ok(c)
        }
        (None, true, _) | (None, _, true) if !preset.admissible_signature(Signature::new(0, 1, 2)) => Err(Error::InvalidInput(format!("{preset} has no binary corolla with one output"))),
        (None, true, false) => Ok(binary_symmetric(preset)),
        (None, false, true) => Ok(binary_regular(preset)),
        _ => Err(Error::InvalidInput("give exactly one of --gens, --binary-sym, --binary-regular".into())),
    }
}

fn operad(cmd: &OperadCmd, m: &mut RunManifest) -> Result<Outcome> {
    match cmd {
        OperadCmd::Free { preset, generators: g, caps, dims } => {
            let caps = caps.caps();
            let (preset, gens) = (*preset, generators(g, *preset, m)?);
            m.preset = Some(preset);
            m.caps = Some(caps);
            let op = FreeOperad::new(Arc::new(ClassCatalog::new(preset, caps)?), &gens)?;
            if *dims && preset.rooted() {
                // arity one is the unit
                let line: Vec<String> = std::iter::once(1).chain((2..=caps.max_arity).map(|n| op.dim(&Signature::new(0, 1, n)))).map(|d| d.to_string()).collect();
                return Ok(Outcome::ok(line.join(" ") + "\n"));
            }
            let rows: BTreeMap<Signature, Vec<usize>> = op.components.iter().map(|(s, c)| {
                let w = c.dims_by_weight();
                (*s, (0..=w.keys().max().copied().unwrap_or(0)).map(|k| w.get(&k).copied().unwrap_or(0)).collect())
            }).collect();
            if *dims {
                let text: String = rows.iter().map(|(s, w)| format!("{} {}\n", signature_key(s), w.iter().sum::<usize>())).collect();
                return Ok(Outcome::ok(text));
            }
            Ok(Outcome::ok(pretty(&json!({ "preset": preset, "caps": caps, "dims": dims_json(&rows) }))))
        }
        OperadCmd::Quotient { pres, caps } => {
            let p = presented_from_file(pres, None, caps.caps(), m)?;
            let v = json!({ "preset": p.free.catalog.preset, "caps": p.free.catalog.caps, "dims": dims_json(&p.dims_by_weight()), "free_dims": dims_json(&weight_profile(&p.free.as_collection())) });
            Ok(Outcome::ok(pretty(&v)))
        }
        OperadCmd::Builtin { preset, name, caps } => {
            if !["associative", "commutative", "unit"].contains(&name.as_str()) {
                return Err(Error::InvalidInput(format!("unknown built-in operad `{name}`")));
            }
            let caps = caps.caps();
            m.preset = Some(*preset);
            m.caps = Some(caps);
            let p = named_or_file(name, &Arc::new(ClassCatalog::new(*preset, caps)?), m)?;
            Ok(Outcome::ok(pretty(&p.presentation.to_json())))
        }
        OperadCmd::CheckTriple { preset, generators: g, caps } => {
            let caps = caps.caps();
            m.preset = Some(*preset);
            m.caps = Some(caps);
            let gens = generators(g, *preset, m)?;
            let laws = check_triple_laws(&FreeOperad::new(Arc::new(ClassCatalog::new(*preset, caps)?), &gens)?)?;
            let status = if laws.holds() { 0 } else { 3 };
            Ok(Outcome { text: to_text(&laws)?, status })
        }
    }
}

/// A presentation file with its caps replaced by the command-line caps.
fn presented_from_file(path: &Path, cat: Option<Arc<ClassCatalog>>, caps: Caps, m: &mut RunManifest) -> Result<Presented> {
    let mut pres = OperadPresentation::from_json(&m.read_json(path)?)?;
    pres.caps = caps;
    let cat = match cat {
        Some(c) => c,
        None => Arc::new(ClassCatalog::new(pres.preset(), caps)?),
    };
    m.preset = Some(cat.preset);
    m.caps = Some(caps);
    Presented::new(pres, cat)
}

fn named_or_file(spec: &str, cat: &Arc<ClassCatalog>, m: &mut RunManifest) -> Result<Presented> {
    let from_pair = |(pres, free): (OperadPresentation, FreeOperad)| Presented::new(pres, free.catalog.clone());
    match spec {
        "associative" => from_pair(associative(cat.preset, cat.caps)?),
        "commutative" if cat.preset == GammaPreset::Ordinary => from_pair(commutative(cat.caps)?),
        "commutative" => Err(Error::Unsupported(format!("the commutative operad is provided on ordinary, not {}", cat.preset))),
        "unit" => unit_presented(cat.clone()),
        path => {
            let p = presented_from_file(Path::new(path), Some(cat.clone()), cat.caps, m)?;
            if p.free.catalog.preset != cat.preset {
                return Err(Error::InvalidInput(format!("{path} is a {} presentation, expected {}", p.free.catalog.preset, cat.preset)));
            }
            Ok(p)
        }
    }
}

fn opcohom_cmd(args: &OpcohomArgs, m: &mut RunManifest) -> Result<Outcome> {
    let caps = args.caps.caps();
    m.preset = Some(args.gamma);
    m.caps = Some(caps);
    let cat = Arc::new(ClassCatalog::new(args.gamma, caps)?);
    let a = named_or_file(&args.a, &cat, m)?;
    let b = named_or_file(&args.b, &cat, m)?;
    let r = cohom_operads(&a, &b)?;
    let checks = check_cohom(&a, &b, &r)?;
    if !checks.passed() {
        return Err(Error::Invariant(format!("cohomomorphism checks failed: {}", checks.failures.join("; "))));
    }
    let text = match args.emit {
        Emit::Latex => subspaces_latex(&format!("relations of cohom(A, B), preset {}, caps arity {} weight {}", args.gamma, caps.max_arity, caps.max_weight), &r.relations),
        Emit::Json | Emit::Text => {
            let rels: Vec<Value> = r.relations.iter().map(|(s, sub)| json!({ "signature": s, "relations": subspace_json(sub) })).collect();
            pretty(&json!({
                "preset": args.gamma,
                "caps": caps,
                "generators": r.generators.to_json(),
                "relations": rels,
                "dims": dims_json(&weight_profile(&r.operad.algebra.collection)),
                "checks": checks,
            }))
        }
    };
    Ok(Outcome::ok(text))
}

fn read_algebra(path: &Path, m: &mut RunManifest) -> Result<AlgebraPresentation> {
    let text = m.read(path)?;
    if text.trim_start().starts_with('{') {
        AlgebraPresentation::from_json(&serde_json::from_str(&text)?)
    } else {
        AlgebraPresentation::parse(&text)
    }
}

fn render_algebra(a: &AlgebraPresentation, emit: Emit) -> String {
    match emit {
        Emit::Text => a.to_text(),
        Emit::Latex => a.to_latex(),
        Emit::Json => pretty(&a.to_json()),
    }
}

fn qalg(args: &QalgArgs, m: &mut RunManifest) -> Result<Outcome> {
    let a = read_algebra(&args.algebra, m)?;
    let mut other = || -> Result<AlgebraPresentation> {
        let p = args.other.as_ref().ok_or_else(|| Error::InvalidInput("this operation needs --with".into()))?;
        read_algebra(p, m)
    };
    let out = match args.op {
        QalgOp::Dual => a.dual()?,
        QalgOp::White => a.white_product(&other()?)?,
        QalgOp::Black => a.black_product(&other()?)?,
        QalgOp::Cohom => cohom(&a, &other()?)?.algebra,
        QalgOp::Coend => coend(&a)?.algebra,
        QalgOp::Dims => {
            let h = a.hilbert(args.degree);
            let text = match args.emit {
                Emit::Json => pretty(&json!({ "degree_cap": args.degree, "hilbert": h })),
                _ => h.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ") + "\n",
            };
            return Ok(Outcome::ok(text));
        }
    };
    Ok(Outcome::ok(render_algebra(&out, args.emit)))
}

fn algebra_operad(choice: &OperadChoice, m: &mut RunManifest) -> Result<AlgebraOperad> {
    // compositions up to arity `degree` need weight `degree - 1`
    let caps = Caps { max_arity: choice.degree, max_weight: choice.degree.saturating_sub(1).max(1), max_genus: 0 };
    m.preset = Some(GammaPreset::Ordinary);
    m.caps = Some(caps);
    let cat = Arc::new(ClassCatalog::new(GammaPreset::Ordinary, caps)?);
    AlgebraOperad::with_diagonal(named_or_file(&choice.operad, &cat, m)?)
}

fn palg(cmd: &PalgCmd, m: &mut RunManifest) -> Result<Outcome> {
    let v = match cmd {
        PalgCmd::Free { operad, generators } => {
            let p = algebra_operad(operad, m)?;
            let f = free_p_algebra(&p, *generators, operad.degree)?;
            json!({ "generators": generators, "dims": &f.algebra.dims[1..] })
        }
        PalgCmd::Tensor { operad, a, b } => {
            let p = algebra_operad(operad, m)?;
            let (x, y) = (read_algebra(a, m)?, read_algebra(b, m)?);
            let (vx, vy) = (PresentedPAlgebra::from_quadratic(&p, &x, operad.degree)?, PresentedPAlgebra::from_quadratic(&p, &y, operad.degree)?);
            let t = tensor_p_algebras(&p, &vx, &vy)?;
            let rels: BTreeMap<String, Value> = t.presented.presentation.relations.iter().map(|(n, s)| (n.to_string(), subspace_json(s))).collect();
            json!({ "dims": t.presented.dims(), "product_dims": &t.product.dims[1..], "relations": rels })
        }
        PalgCmd::Cohom { operad, a, b } => {
            let p = algebra_operad(operad, m)?;
            let (x, y) = (read_algebra(a, m)?, read_algebra(b, m)?);
            let (vx, vy) = (PresentedPAlgebra::from_quadratic(&p, &x, operad.degree)?, PresentedPAlgebra::from_quadratic(&p, &y, operad.degree)?);
            let (c, checks) = cohom_p_algebras(&p, &vx, &vy)?;
            if !checks.passed() {
                return Err(Error::Invariant(format!("cohomomorphism checks failed: {checks:?}")));
            }
            let rels: BTreeMap<String, Value> = c.algebra.presentation.relations.iter().map(|(n, s)| (n.to_string(), subspace_json(s))).collect();
            json!({ "generators": c.algebra.presentation.generators, "dims": c.algebra.dims(), "relations": rels })
        }
        PalgCmd::Structures { operad, family, caps } => {
            let caps = caps.caps();
            let fam = FlavoredFamily::from_json(&m.read_json(family)?)?;
            m.preset = Some(fam.preset);
            m.caps = Some(caps);
            let cat = Arc::new(ClassCatalog::new(fam.preset, caps)?);
            let p = named_or_file(operad, &cat, m)?;
            let end = op_end(&fam, cat)?;
            let space = p_algebra_structures(&p, &end)?;
            let conditions: Vec<String> = space.conditions.iter().filter(|c| !c.is_zero()).map(polynomial_text).collect();
            let params: Vec<Value> = space.candidates.iter().map(|(s, b)| json!({ "signature": s, "count": b.len() })).collect();
            json!({ "preset": fam.preset, "caps": caps, "parameters": space.num_params(), "by_signature": params, "conditions": conditions })
        }
    };
    Ok(Outcome::ok(pretty(&v)))
}
