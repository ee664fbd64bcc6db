//! `brace-lab`: validate finite braces and rings, derive and classify
//! Yang-Baxter maps, check and enumerate reflections, work with factorized
//! rings, and certify the parameter-dependent identities.
//!
//! Every command prints a single JSON object on stdout. Exit codes: 0 when
//! the requested verdict is true (or the command just produces data), 1
//! when a check evaluates to false (the JSON carries a witness), 2 for
//! input or hypothesis errors.

use std::fmt::Display;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use brace_lab::brace::{SocleSide, SubsetX};
use brace_lab::catalog::{self, CatalogObject, FactorizationBundle};
use brace_lab::factorizable::{
    coset_lemma_witness, make_involutive_ring_reflection, make_ring_reflection, verify_factorization,
    verify_ideal, Factorization, IdealJ, RingReflectionHypotheses, RingReflectionVariant,
};
use brace_lab::json::{
    self, brace_to_doc, parse_document, point_map_to_doc, ybmap_to_doc, Document, FactorizationDoc,
    PointMapDoc,
};
use brace_lab::param_dep::{
    check_param_reflection, check_param_ybe, linearize_point_map, linearize_r,
};
use brace_lab::reflection::{
    check_wedge_theorem, combine, enumerate, equivariance_witness, family, family_forced,
    reflection_witness, BudgetPolicy, EnumerateOptions, FamilyKind, Filter, NearRingOp, PointMap,
    ReflectMode, WedgeOp,
};
use brace_lab::suite;
use brace_lab::yang_baxter::YangBaxterMap;
use brace_lab::{Elem, FiniteBrace, FiniteRing};

#[derive(Parser)]
#[command(name = "brace-lab", version, about = "finite braces, Yang-Baxter maps, and reflections")]
struct Cli {
    /// Worker threads for exhaustive scans.
    #[arg(long, global = true, env = "BRACE_LAB_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Seed for randomized spot checks; fixed by default and echoed in the
    /// output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// JSON file with the object.
    #[arg(long, conflicts_with = "catalog")]
    file: Option<PathBuf>,
    /// Catalog entry name (see `brace-lab catalog`).
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the brace axioms of a Cayley-table pair.
    CheckBrace {
        #[command(flatten)]
        source: Source,
    },
    /// Validate the ring axioms and report the nilpotency certificate.
    CheckRing {
        #[command(flatten)]
        source: Source,
    },
    /// Yang-Baxter maps: derive from a brace, classify, or check the braid identity.
    Yb {
        #[command(subcommand)]
        action: YbCmd,
    },
    /// Reflections: check a map, enumerate the map space, build families, test wedges.
    Reflect {
        #[command(subcommand)]
        action: ReflectCmd,
    },
    /// Factorized nilpotent rings and their reflections.
    Factor {
        #[command(subcommand)]
        action: FactorCmd,
    },
    /// Parameter-dependent identities over Z[u, v].
    Paramdep {
        #[command(subcommand)]
        action: ParamCmd,
    },
    /// List catalog entries, or construct and describe one.
    Catalog { name: Option<String> },
    /// Run the built-in verification suite.
    Selftest {
        /// Run a single criterion (1..=10).
        #[arg(long)]
        criterion: Option<u32>,
    },
    /// Shorthand for `reflect enumerate`.
    #[command(hide = true)]
    Enumerate(EnumerateArgs),
    /// Shorthand for `paramdep reflection`.
    #[command(name = "paramdep-reflection", hide = true)]
    ParamdepReflection(ParamReflectionArgs),
}

#[derive(Subcommand)]
enum YbCmd {
    /// Derive the Yang-Baxter map of a brace (optionally restricted).
    Derive {
        #[command(flatten)]
        source: Source,
        /// Restrict to a comma-separated carrier subset.
        #[arg(long)]
        carrier: Option<String>,
    },
    /// Report involutivity and nondegeneracy.
    Classify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        carrier: Option<String>,
    },
    /// Check the braid identity on all triples.
    Ybe {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        carrier: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum ModeArg {
    Full,
    #[value(name = "first-coordinate")]
    FirstCoordinate,
}

#[derive(ValueEnum, Clone, Copy)]
enum FilterArg {
    Reflections,
    Equivariant,
    Both,
}

#[derive(Subcommand)]
enum ReflectCmd {
    /// Check the reflection identity for one map.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        carrier: Option<String>,
        /// Map to test: `id`, `neg`, `const:A`, `image:0,3,2,1`, a family
        /// spec like `k1:c=1`, or `bit:e23*e23` on the bundled matrix rings.
        #[arg(long, conflicts_with = "map_file")]
        map: Option<String>,
        /// JSON file with {"carrier": [...], "image": [...]}.
        #[arg(long)]
        map_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
        /// Also report equivariance and involutivity of the map.
        #[arg(long)]
        classify_map: bool,
    },
    /// Scan all |X|^|X| maps and count reflections / equivariant maps.
    Enumerate(EnumerateArgs),
    /// Construct a family map on a brace and report its properties.
    Family {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        carrier: Option<String>,
        /// Family spec: `k1:c=1`, `k2:c=1`, `k1n:c=1,n=2`, `k2n:…`,
        /// `tilde:c=1,m=2`, `hat:…`, `l:c=1,m=1,n=-2`, `cnst:a=0`, `mc:c=2`.
        #[arg(long)]
        family: String,
        /// Construct even when a hypothesis fails and let the checks report.
        #[arg(long)]
        force: bool,
    },
    /// Evaluate the wedge decomposition k(x) = f(x) ∧ g(x).
    Wedge {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        carrier: Option<String>,
        #[arg(long, default_value = "id")]
        f: String,
        #[arg(long, default_value = "id")]
        g: String,
        /// Wedge operation: `proj` (x∧y = x), `circ` (x∘y), `ring` (x∗y) or
        /// `affine-ring` (x + x∗y; the last two need a factorization source).
        #[arg(long)]
        wedge: String,
    },
}

#[derive(Subcommand)]
enum FactorCmd {
    /// Verify S/I data against a nilpotent ring and report decompositions.
    Verify {
        #[command(flatten)]
        source: Source,
    },
    /// Emit the ⊙-brace of a factorization.
    Odot {
        #[command(flatten)]
        source: Source,
    },
    /// Verify a two-sided ideal J ⊆ I ∩ X.
    Ideal {
        #[command(flatten)]
        source: Source,
        /// Comma-separated members of J; defaults to the bundled J.
        #[arg(long)]
        j: Option<String>,
        #[arg(long)]
        carrier: Option<String>,
    },
    /// Check coset stability of τ under a J-close map.
    Lemma {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        j: Option<String>,
        #[arg(long, conflicts_with = "map_file")]
        map: Option<String>,
        #[arg(long)]
        map_file: Option<PathBuf>,
    },
    /// Construct a ring reflection (k1, k2, or the involutive form).
    MakeK {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Hypothesis set for k1/k2: `direct` or `coset`.
        #[arg(long, default_value = "coset")]
        hypotheses: String,
        #[arg(long, default_value = "id")]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        j: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum VariantArg {
    K1,
    K2,
    Involutive,
}

#[derive(Subcommand)]
enum ParamCmd {
    /// Exact parameter-dependent Yang-Baxter identity for R'(w) = I + wR.
    Ybe {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        carrier: Option<String>,
    },
    /// Exact parameter-dependent reflection identity for K'(w) = wK.
    Reflection(ParamReflectionArgs),
}

#[derive(Args, Clone)]
struct EnumerateArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    carrier: Option<String>,
    #[arg(long, value_enum, default_value_t = FilterArg::Reflections)]
    filter: FilterArg,
    /// Cap on the number of maps scanned.
    #[arg(long, default_value_t = 1 << 24)]
    budget: u64,
    /// Fail instead of truncating when the space exceeds the budget.
    #[arg(long)]
    strict_budget: bool,
    /// Include the full map lists in the report.
    #[arg(long)]
    emit_maps: bool,
}

#[derive(Args, Clone)]
struct ParamReflectionArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    carrier: Option<String>,
    /// The reflection: family spec, `id`, `image:…`, etc.
    #[arg(long, conflicts_with = "map_file")]
    reflection: Option<String>,
    #[arg(long)]
    map_file: Option<PathBuf>,
}

/// Command error carrying the exit code 2 payload.
struct CmdError(String);

impl<E: Display> From<E> for CmdError {
    fn from(e: E) -> Self {
        CmdError(e.to_string())
    }
}

type CmdResult = Result<(Value, Option<bool>), CmdError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed;
    let jobs = cli.jobs.max(1);
    let result = dispatch(&cli.command, jobs, seed);
    let (payload, code) = match result {
        Ok((value, verdict)) => {
            let mut top = serde_json::Map::new();
            top.insert("seed".into(), seed.into());
            if let Some(v) = verdict {
                top.insert("verdict".into(), v.into());
            }
            merge(&mut top, value);
            (Value::Object(top), if verdict == Some(false) { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Err(CmdError(message)) => {
            let mut top = serde_json::Map::new();
            top.insert("seed".into(), seed.into());
            top.insert("error".into(), message.into());
            (Value::Object(top), ExitCode::from(2))
        }
    };
    let text = serde_json::to_string_pretty(&payload).expect("reports serialize");
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text + "\n") {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    code
}

fn merge(top: &mut serde_json::Map<String, Value>, value: Value) {
    match value {
        Value::Object(map) => top.extend(map),
        other => {
            top.insert("result".into(), other);
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn dispatch(command: &Command, jobs: usize, seed: u64) -> CmdResult {
    match command {
        Command::CheckBrace { source } => check_brace(source),
        Command::CheckRing { source } => check_ring(source),
        Command::Yb { action } => yb(action),
        Command::Reflect { action } => reflect(action, jobs),
        Command::Factor { action } => factor(action),
        Command::Paramdep { action } => paramdep(action, seed),
        Command::Catalog { name } => catalog_cmd(name.as_deref()),
        Command::Selftest { criterion } => selftest(*criterion, jobs),
        Command::Enumerate(args) => run_enumerate(args, jobs),
        Command::ParamdepReflection(args) => run_param_reflection(args, seed),
    }
}

// -------------------------------------------------------------------------
// source loading

fn read_source(source: &Source) -> Result<Loaded, CmdError> {
    match (&source.file, &source.catalog) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| CmdError(format!("{}: {e}", path.display())))?;
            // factorization files have no kind tag; try the tagged family first
            if let Ok(doc) = parse_document(&text) {
                return Ok(match doc {
                    Document::Ring(d) => Loaded::Ring(json::ring_from_doc(&d)?),
                    Document::Brace(d) => Loaded::Brace(json::brace_from_doc(&d)?),
                    Document::YbMap(d) => Loaded::YbMap(json::ybmap_from_doc(&d)?),
                });
            }
            let doc: FactorizationDoc = serde_json::from_str(&text)?;
            let Document::Ring(ring_doc) = &doc.ring else {
                return Err(CmdError("factorization field \"ring\" must be a ring document".into()));
            };
            let ring = json::ring_from_doc(ring_doc)?;
            let s = SubsetX::new(ring.size(), doc.s.iter().copied())?;
            let i = SubsetX::new(ring.size(), doc.i.iter().copied())?;
            let factorization = verify_factorization(&ring, &s, &i)?;
            Ok(Loaded::Factorization { factorization: Box::new(factorization), j: None })
        }
        (None, Some(name)) => Ok(match catalog::catalog(name)? {
            CatalogObject::Ring(r) => Loaded::Ring(r),
            CatalogObject::Brace(b) => Loaded::Brace(b),
            CatalogObject::YbMap(y) => Loaded::YbMap(y),
            CatalogObject::Factorization(bundle) => {
                let FactorizationBundle { factorization, j } = *bundle;
                Loaded::Factorization { factorization: Box::new(factorization), j: Some(j) }
            }
        }),
        _ => Err(CmdError("exactly one of --file or --catalog is required".into())),
    }
}

enum Loaded {
    Ring(FiniteRing),
    Brace(FiniteBrace),
    YbMap(YangBaxterMap),
    Factorization { factorization: Box<Factorization>, j: Option<IdealJ> },
}

fn parse_carrier(spec: &Option<String>, ground: usize) -> Result<SubsetX, CmdError> {
    match spec {
        None => Ok(SubsetX::full(ground)),
        Some(text) => {
            let members = parse_elems(text)?;
            Ok(SubsetX::new(ground, members)?)
        }
    }
}

fn parse_elems(text: &str) -> Result<Vec<Elem>, CmdError> {
    text.split(',')
        .map(|part| part.trim().parse::<Elem>().map_err(|e| CmdError(format!("bad element {part:?}: {e}"))))
        .collect()
}

/// A solution plus, when it came from a brace, the brace itself (family
/// specs and near-ring data need it).
struct SolutionCtx {
    r: YangBaxterMap,
    brace: Option<FiniteBrace>,
    ring: Option<FiniteRing>,
}

fn load_solution(source: &Source, carrier: &Option<String>) -> Result<SolutionCtx, CmdError> {
    match read_source(source)? {
        Loaded::YbMap(r) => {
            if carrier.is_some() {
                return Err(CmdError("--carrier only applies to brace sources".into()));
            }
            Ok(SolutionCtx { r, brace: None, ring: None })
        }
        Loaded::Brace(brace) => {
            let x = parse_carrier(carrier, brace.size())?;
            let r = YangBaxterMap::from_brace(&brace, &x)?;
            Ok(SolutionCtx { r, brace: Some(brace), ring: None })
        }
        Loaded::Factorization { factorization, .. } => {
            let x = parse_carrier(carrier, factorization.ring().size())?;
            let r = factorization.odot_solution(&x)?;
            Ok(SolutionCtx {
                r,
                brace: Some(factorization.odot_brace().clone()),
                ring: Some(factorization.ring().clone()),
            })
        }
        Loaded::Ring(_) => Err(CmdError("a ring is not a solution; use its factorization or adjoint brace".into())),
    }
}

// -------------------------------------------------------------------------
// map specs

fn basis_names(size: usize) -> Option<&'static [(&'static str, Elem)]> {
    match size {
        8 => Some(&[("e12", 1), ("e23", 2), ("e13", 4)]),
        64 => Some(&[("e12", 1), ("e13", 2), ("e14", 4), ("e23", 8), ("e24", 16), ("e34", 32)]),
        _ => None,
    }
}

fn parse_kv(spec: &str) -> Result<Vec<(String, i64)>, CmdError> {
    spec.split(',')
        .map(|pair| {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| CmdError(format!("expected key=value, got {pair:?}")))?;
            let value: i64 =
                v.trim().parse().map_err(|e| CmdError(format!("bad value {v:?}: {e}")))?;
            Ok((k.trim().to_string(), value))
        })
        .collect()
}

fn kv_get(kv: &[(String, i64)], key: &str, spec: &str) -> Result<i64, CmdError> {
    kv.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| CmdError(format!("family spec {spec:?} is missing {key}=…")))
}

fn parse_family_kind(spec: &str) -> Result<Option<FamilyKind>, CmdError> {
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let kind = match head {
        "k1" | "k2" | "k1n" | "k2n" | "tilde" | "hat" | "l" | "cnst" | "mc" => {
            let kv = parse_kv(rest)?;
            let c = || kv_get(&kv, "c", spec).map(|v| v as Elem);
            match head {
                "k1" => FamilyKind::K1 { c: c()? },
                "k2" => FamilyKind::K2 { c: c()? },
                "k1n" => FamilyKind::K1N { c: c()?, n: kv_get(&kv, "n", spec)? },
                "k2n" => FamilyKind::K2N { c: c()?, n: kv_get(&kv, "n", spec)? },
                "tilde" => FamilyKind::Tilde { c: c()?, m: kv_get(&kv, "m", spec)? as u32 },
                "hat" => FamilyKind::Hat { c: c()?, m: kv_get(&kv, "m", spec)? as u32 },
                "l" => FamilyKind::Lmn {
                    c: c()?,
                    m: kv_get(&kv, "m", spec)? as u32,
                    n: kv_get(&kv, "n", spec)?,
                },
                "cnst" => FamilyKind::Const { a: kv_get(&kv, "a", spec)? as Elem },
                "mc" => FamilyKind::MulBy { c: c()? },
                _ => unreachable!(),
            }
        }
        _ => return Ok(None),
    };
    Ok(Some(kind))
}

fn build_map(
    spec: &str,
    ctx: &SolutionCtx,
    force_families: bool,
) -> Result<PointMap, CmdError> {
    let carrier = ctx.r.carrier().clone();
    if let Some(kind) = parse_family_kind(spec)? {
        let brace = ctx
            .brace
            .as_ref()
            .ok_or_else(|| CmdError("family specs need a brace source".into()))?;
        let built = if force_families {
            family_forced(brace, &carrier, kind)
        } else {
            family(brace, &carrier, kind)
        };
        return Ok(built?);
    }
    match spec.split_once(':') {
        None if spec == "id" => Ok(PointMap::identity(carrier)),
        None if spec == "zero" => Ok(PointMap::constant(carrier, 0)?),
        None if spec == "neg" => {
            let brace = ctx.brace.as_ref().ok_or_else(|| CmdError("neg needs a brace source".into()))?;
            Ok(combine(brace, NearRingOp::Negate, &PointMap::identity(carrier), None)?)
        }
        Some(("const", a)) => {
            let a: Elem = a.parse().map_err(|e| CmdError(format!("bad element {a:?}: {e}")))?;
            Ok(PointMap::constant(carrier, a)?)
        }
        Some(("image", list)) => Ok(PointMap::new(carrier, parse_elems(list)?)?),
        Some(("bit", body)) => {
            let ring = ctx
                .ring
                .as_ref()
                .ok_or_else(|| CmdError("bit specs need a factorization source".into()))?;
            let names = basis_names(ring.size())
                .ok_or_else(|| CmdError("bit specs are only defined for the bundled matrix rings".into()))?;
            let (src, dst) = body
                .split_once('*')
                .ok_or_else(|| CmdError(format!("expected bit:eSRC*eDST, got {spec:?}")))?;
            let lookup = |name: &str| {
                names
                    .iter()
                    .find(|(n, _)| *n == name)
                    .map(|(_, bit)| *bit)
                    .ok_or_else(|| CmdError(format!("unknown basis element {name:?}")))
            };
            let (src_bit, dst_bit) = (lookup(src)?, lookup(dst)?);
            Ok(PointMap::from_fn(carrier, |x| if x & src_bit != 0 { dst_bit } else { 0 })?)
        }
        _ => Err(CmdError(format!("unrecognized map spec {spec:?}"))),
    }
}

fn load_map(
    spec: &Option<String>,
    file: &Option<PathBuf>,
    ctx: &SolutionCtx,
) -> Result<PointMap, CmdError> {
    match (spec, file) {
        (Some(s), None) => build_map(s, ctx, false),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| CmdError(format!("{}: {e}", path.display())))?;
            let doc: PointMapDoc = serde_json::from_str(&text)?;
            Ok(json::point_map_for(&doc, ctx.r.carrier())?)
        }
        _ => Err(CmdError("exactly one of --map/--reflection or --map-file is required".into())),
    }
}

// -------------------------------------------------------------------------
// commands

fn check_brace(source: &Source) -> CmdResult {
    let loaded = read_source(source)?;
    let brace = match loaded {
        Loaded::Brace(b) => b,
        _ => return Err(CmdError("source is not a brace".into())),
    };
    let payload = serde_json::json!({
        "size": brace.size(),
        "two_sided": brace.is_two_sided(),
        "socle": brace.socle(SocleSide::Left).members(),
        "opposite_socle": brace.socle(SocleSide::Opposite).members(),
        "star_associativity_witness": brace.star_associativity_witness(),
    });
    Ok((payload, Some(true)))
}

fn check_ring(source: &Source) -> CmdResult {
    let ring = match read_source(source)? {
        Loaded::Ring(r) => r,
        Loaded::Factorization { factorization, .. } => factorization.ring().clone(),
        _ => return Err(CmdError("source is not a ring".into())),
    };
    let payload = serde_json::json!({
        "size": ring.size(),
        "nilpotency_index": ring.nilpotency_index(),
    });
    Ok((payload, Some(true)))
}

fn yb(action: &YbCmd) -> CmdResult {
    match action {
        YbCmd::Derive { source, carrier } => {
            let ctx = load_solution(source, carrier)?;
            let doc = ybmap_to_doc(&ctx.r);
            Ok((to_value(&doc), None))
        }
        YbCmd::Classify { source, carrier } => {
            let ctx = load_solution(source, carrier)?;
            let c = ctx.r.classify();
            let payload = serde_json::json!({
                "carrier_size": ctx.r.carrier().len(),
                "involutive": c.involutive,
                "nondegenerate": c.nondegenerate,
            });
            Ok((payload, Some(c.involutive && c.nondegenerate)))
        }
        YbCmd::Ybe { source, carrier } => {
            let ctx = load_solution(source, carrier)?;
            let witness = ctx.r.ybe_witness();
            let payload = serde_json::json!({
                "carrier_size": ctx.r.carrier().len(),
                "witness": witness,
            });
            Ok((payload, Some(witness.is_none())))
        }
    }
}

fn reflect(action: &ReflectCmd, jobs: usize) -> CmdResult {
    match action {
        ReflectCmd::Check { source, carrier, map, map_file, mode, classify_map } => {
            let ctx = load_solution(source, carrier)?;
            let k = load_map(map, map_file, &ctx)?;
            let mode = match mode {
                ModeArg::Full => ReflectMode::Full,
                ModeArg::FirstCoordinate => ReflectMode::FirstCoordinate,
            };
            let witness = reflection_witness(&ctx.r, &k, mode)?;
            let mut payload = serde_json::json!({
                "map": point_map_to_doc(&k),
                "witness": witness,
            });
            if *classify_map {
                let obj = payload.as_object_mut().unwrap();
                obj.insert("equivariant".into(), equivariance_witness(&ctx.r, &k)?.is_none().into());
                obj.insert("involutive".into(), k.is_involutive().into());
            }
            Ok((payload, Some(witness.is_none())))
        }
        ReflectCmd::Enumerate(args) => run_enumerate(args, jobs),
        ReflectCmd::Family { source, carrier, family: spec, force } => {
            let ctx = load_solution(source, carrier)?;
            let kind = parse_family_kind(spec)?
                .ok_or_else(|| CmdError(format!("not a family spec: {spec:?}")))?;
            let brace = ctx.brace.as_ref().ok_or_else(|| CmdError("family needs a brace source".into()))?;
            let k = if *force {
                family_forced(brace, ctx.r.carrier(), kind)?
            } else {
                family(brace, ctx.r.carrier(), kind)?
            };
            let refl = reflection_witness(&ctx.r, &k, ReflectMode::Full)?;
            let payload = serde_json::json!({
                "map": point_map_to_doc(&k),
                "equivariant": equivariance_witness(&ctx.r, &k)?.is_none(),
                "involutive": k.is_involutive(),
                "is_reflection": refl.is_none(),
                "trivial": k.is_identity(),
            });
            Ok((payload, Some(refl.is_none())))
        }
        ReflectCmd::Wedge { source, carrier, f, g, wedge } => {
            let ctx = load_solution(source, carrier)?;
            let f_map = build_map(f, &ctx, false)?;
            let g_map = build_map(g, &ctx, false)?;
            let x = ctx.r.carrier().clone();
            let wedge_op = match wedge.as_str() {
                "proj" => WedgeOp::from_fn(x, |a, _| a)?,
                "circ" => {
                    let brace = ctx.brace.as_ref().ok_or_else(|| CmdError("circ wedge needs a brace".into()))?;
                    WedgeOp::from_fn(x, |a, b| brace.mul(a, b))?
                }
                "ring" => {
                    let ring = ctx.ring.as_ref().ok_or_else(|| CmdError("ring wedge needs a factorization source".into()))?;
                    WedgeOp::from_fn(x, |a, b| ring.mul(a, b))?
                }
                "affine-ring" => {
                    let ring = ctx.ring.as_ref().ok_or_else(|| CmdError("affine-ring wedge needs a factorization source".into()))?;
                    WedgeOp::from_fn(x, |a, b| ring.add(a, ring.mul(a, b)))?
                }
                other => return Err(CmdError(format!("unknown wedge {other:?}"))),
            };
            let report = check_wedge_theorem(&ctx.r, &f_map, &g_map, &wedge_op)?;
            let verdict = report.is_reflection;
            Ok((to_value(&report), Some(verdict)))
        }
    }
}

fn load_factorization(source: &Source) -> Result<(Factorization, Option<IdealJ>), CmdError> {
    match read_source(source)? {
        Loaded::Factorization { factorization, j } => Ok((*factorization, j)),
        _ => Err(CmdError("source is not a factorization".into())),
    }
}

fn resolve_ideal(
    fac: &Factorization,
    bundled: Option<IdealJ>,
    j_arg: &Option<String>,
    x: &SubsetX,
) -> Result<IdealJ, CmdError> {
    match j_arg {
        Some(text) => {
            let members = SubsetX::new(fac.ring().size(), parse_elems(text)?)?;
            Ok(verify_ideal(fac.ring(), &members, fac.i_set(), x)?)
        }
        None => bundled.ok_or_else(|| CmdError("this factorization has no bundled J; pass --j".into())),
    }
}

fn factor(action: &FactorCmd) -> CmdResult {
    match action {
        FactorCmd::Verify { source } => {
            let (fac, _) = load_factorization(source)?;
            let decomp: Vec<[Elem; 3]> =
                (0..fac.ring().size()).map(|x| {
                    let (a, b) = fac.decomp(x);
                    [x, a, b]
                }).collect();
            let payload = serde_json::json!({
                "size": fac.ring().size(),
                "S": fac.s_set().members(),
                "I": fac.i_set().members(),
                "decomp": decomp,
            });
            Ok((payload, Some(true)))
        }
        FactorCmd::Odot { source } => {
            let (fac, _) = load_factorization(source)?;
            Ok((to_value(&brace_to_doc(fac.odot_brace())), None))
        }
        FactorCmd::Ideal { source, j, carrier } => {
            let (fac, bundled) = load_factorization(source)?;
            let x = parse_carrier(carrier, fac.ring().size())?;
            let ideal = resolve_ideal(&fac, bundled, j, &x)?;
            let payload = serde_json::json!({ "J": ideal.members().members() });
            Ok((payload, Some(true)))
        }
        FactorCmd::Lemma { source, j, map, map_file } => {
            let (fac, bundled) = load_factorization(source)?;
            let x = SubsetX::full(fac.ring().size());
            let ideal = resolve_ideal(&fac, bundled, j, &x)?;
            let ctx = SolutionCtx {
                r: fac.odot_solution(&x)?,
                brace: Some(fac.odot_brace().clone()),
                ring: Some(fac.ring().clone()),
            };
            let k = load_map(map, map_file, &ctx)?;
            let witness = coset_lemma_witness(&fac, &ideal, &k, &x)?;
            let payload = serde_json::json!({
                "witness": witness,
                "note": if witness.is_some() { "a witness here indicates an implementation bug" } else { "" },
            });
            Ok((payload, Some(witness.is_none())))
        }
        FactorCmd::MakeK { source, variant, hypotheses, f, g, j } => {
            let (fac, bundled) = load_factorization(source)?;
            let x = SubsetX::full(fac.ring().size());
            let ctx = SolutionCtx {
                r: fac.odot_solution(&x)?,
                brace: Some(fac.odot_brace().clone()),
                ring: Some(fac.ring().clone()),
            };
            let g_map = build_map(g, &ctx, false)?;
            let k = match variant {
                VariantArg::Involutive => {
                    let ideal = resolve_ideal(&fac, bundled, j, &x)?;
                    make_involutive_ring_reflection(&fac, &ideal, &x, &g_map)?
                }
                VariantArg::K1 | VariantArg::K2 => {
                    let f_map = build_map(f, &ctx, false)?;
                    let var = match variant {
                        VariantArg::K1 => RingReflectionVariant::K1,
                        _ => RingReflectionVariant::K2,
                    };
                    match hypotheses.as_str() {
                        "direct" => make_ring_reflection(
                            &fac,
                            &x,
                            &f_map,
                            &g_map,
                            var,
                            RingReflectionHypotheses::Direct,
                        )?,
                        "coset" => {
                            let ideal = resolve_ideal(&fac, bundled, j, &x)?;
                            make_ring_reflection(
                                &fac,
                                &x,
                                &f_map,
                                &g_map,
                                var,
                                RingReflectionHypotheses::CosetIdeal(&ideal),
                            )?
                        }
                        other => return Err(CmdError(format!("unknown hypothesis set {other:?}"))),
                    }
                }
            };
            let payload = serde_json::json!({
                "map": point_map_to_doc(&k),
                "involutive": k.is_involutive(),
                "trivial": k.is_identity(),
            });
            Ok((payload, Some(true)))
        }
    }
}

fn run_enumerate(args: &EnumerateArgs, jobs: usize) -> CmdResult {
    let ctx = load_solution(&args.source, &args.carrier)?;
    let opts = EnumerateOptions {
        filter: match args.filter {
            FilterArg::Reflections => Filter::Reflections,
            FilterArg::Equivariant => Filter::Equivariant,
            FilterArg::Both => Filter::Both,
        },
        budget: args.budget,
        on_budget: if args.strict_budget { BudgetPolicy::Error } else { BudgetPolicy::Truncate },
        emit_maps: args.emit_maps,
        jobs,
    };
    let report = enumerate(&ctx.r, &opts)?;
    let mut payload = to_value(&report);
    if let Some(count) = report.reflection_count {
        payload.as_object_mut().unwrap().insert("count".into(), count.into());
    }
    Ok((payload, None))
}

fn run_param_reflection(args: &ParamReflectionArgs, seed: u64) -> CmdResult {
    let ctx = load_solution(&args.source, &args.carrier)?;
    let k = load_map(&args.reflection, &args.map_file, &ctx)?;
    let r_mat = linearize_r(&ctx.r);
    let k_mat = linearize_point_map(&k);
    let check = check_param_reflection(&r_mat, &k_mat)?;
    // seeded numeric spot evaluations of both sides at random integer points
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = k_mat.dim();
    let eye = brace_lab::poly::PolyMatrix::identity(m);
    let lhs = eye
        .kron(&brace_lab::param_dep::k_prime(&k_mat, brace_lab::param_dep::LinForm::V))
        .matmul(&brace_lab::param_dep::r_prime(&r_mat, brace_lab::param_dep::LinForm::U_PLUS_V))
        .matmul(&eye.kron(&brace_lab::param_dep::k_prime(&k_mat, brace_lab::param_dep::LinForm::U)))
        .matmul(&brace_lab::param_dep::r_prime(&r_mat, brace_lab::param_dep::LinForm::U_MINUS_V));
    let rhs = brace_lab::param_dep::r_prime(&r_mat, brace_lab::param_dep::LinForm::U_MINUS_V)
        .matmul(&eye.kron(&brace_lab::param_dep::k_prime(&k_mat, brace_lab::param_dep::LinForm::U)))
        .matmul(&brace_lab::param_dep::r_prime(&r_mat, brace_lab::param_dep::LinForm::U_PLUS_V))
        .matmul(&eye.kron(&brace_lab::param_dep::k_prime(&k_mat, brace_lab::param_dep::LinForm::V)));
    let spot_checks: Vec<Value> = (0..4)
        .map(|_| {
            let (u, v) = (rng.gen_range(-5i64..=5), rng.gen_range(-5i64..=5));
            serde_json::json!({ "u": u, "v": v, "equal": lhs.eval(u, v) == rhs.eval(u, v) })
        })
        .collect();
    let payload = serde_json::json!({
        "identity": check.holds,
        "witness": check.witness,
        "audit": check.audit,
        "map": point_map_to_doc(&k),
        "spot_checks": spot_checks,
    });
    Ok((payload, Some(check.holds)))
}

fn paramdep(action: &ParamCmd, seed: u64) -> CmdResult {
    match action {
        ParamCmd::Ybe { source, carrier } => {
            let ctx = load_solution(source, carrier)?;
            let check = check_param_ybe(&linearize_r(&ctx.r))?;
            let payload = serde_json::json!({
                "identity": check.holds,
                "witness": check.witness,
                "audit": check.audit,
            });
            Ok((payload, Some(check.holds)))
        }
        ParamCmd::Reflection(args) => run_param_reflection(args, seed),
    }
}

fn catalog_cmd(name: Option<&str>) -> CmdResult {
    match name {
        None => Ok((serde_json::json!({ "entries": catalog::entries() }), None)),
        Some(name) => {
            let obj = catalog::catalog(name)?;
            let payload = match &obj {
                CatalogObject::Ring(r) => serde_json::json!({
                    "kind": "ring",
                    "size": r.size(),
                    "nilpotency_index": r.nilpotency_index(),
                    "document": json::ring_to_doc(r),
                }),
                CatalogObject::Brace(b) => serde_json::json!({
                    "kind": "brace",
                    "size": b.size(),
                    "two_sided": b.is_two_sided(),
                    "document": brace_to_doc(b),
                }),
                CatalogObject::YbMap(r) => serde_json::json!({
                    "kind": "ybmap",
                    "classification": r.classify(),
                    "document": ybmap_to_doc(r),
                }),
                CatalogObject::Factorization(bundle) => serde_json::json!({
                    "kind": "factorization",
                    "size": bundle.factorization.ring().size(),
                    "S": bundle.factorization.s_set().members(),
                    "I": bundle.factorization.i_set().members(),
                    "J": bundle.j.members().members(),
                }),
            };
            Ok((payload, None))
        }
    }
}

fn selftest(criterion: Option<u32>, jobs: usize) -> CmdResult {
    let outcomes = match criterion {
        Some(id) => vec![suite::run_criterion(id, jobs)
            .ok_or_else(|| CmdError(format!("no criterion {id}")))?],
        None => suite::run_all(jobs),
    };
    for o in &outcomes {
        eprintln!(
            "[{}] criterion {:>2}: {} ({} ms) — {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.millis,
            o.details
        );
    }
    let all_passed = outcomes.iter().all(|o| o.passed);
    Ok((serde_json::json!({ "criteria": outcomes }), Some(all_passed)))
}
