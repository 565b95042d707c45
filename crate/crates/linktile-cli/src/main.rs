//! `linktile`: verification, analysis and certification of linked nets.
//!
//! Exit codes: 0 when every certificate passes, 1 when a clause fails (the
//! report is still written), 2 on input or schema errors.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use linktile::certificate::Certificate;
use linktile::chipfire::{self, Graph};
use linktile::field::{Field, FieldKind};
use linktile::net::{random_trop, twist, NetFile, NetPresentation, TropSpec};
use linktile::quiver::{self, ConvexSet, QuiverVertex, VertexSet};
use linktile::setfn::MAX_VERTEX_GROUND;
use linktile::tiling::{self, NetAnalysis};
use linktile::{Fp, Rational};

use report::{certificate_markdown, Rendered};

#[derive(Parser, Debug)]
#[command(name = "linktile", version, about = "Certificates for linked nets and simplex tilings")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Field override: `rational`, `prime` or `prime:<p>` (default: the
    /// input file's field; the LT_FIELD environment variable also works)
    #[arg(long, global = true)]
    field: Option<String>,
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the presentation axioms on H
    Verify { net: PathBuf },
    /// Modular pairs, polytope vertices, extreme vertices, polygons and the
    /// reduction complex
    Analyze { net: PathBuf },
    /// Certify the tiling of the simplex by the vertex polytopes
    Tiling {
        net: PathBuf,
        /// Dilations for the lattice coverage check
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        dilations: Vec<i64>,
    },
    /// The sets M_v and the diagonal class
    Chow { net: PathBuf },
    /// Generate a net
    #[command(subcommand)]
    Generate(Generate),
    /// Linear systems and reduced divisors on a multigraph
    Chipfire {
        graph: PathBuf,
        /// Divisor as comma-separated integers
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        /// Report the divisor reduced at this vertex
        #[arg(long, group = "mode")]
        reduced: Option<usize>,
        /// List the complete linear system with quiver coordinates
        #[arg(long, group = "mode")]
        linear_system: bool,
        /// Report the extreme vertex of every type with its reducedness check
        #[arg(long, group = "mode")]
        extreme: bool,
    },
    /// Z^n-quiver utilities
    #[command(subcommand)]
    Quiver(QuiverCmd),
}

#[derive(Subcommand, Debug)]
enum Generate {
    /// Diagonal net from tropical forms
    Monomial { trop: PathBuf },
    /// Random forms with every slot present
    Random {
        #[arg(long)]
        seed: u64,
        /// Number of arrow types n+1
        #[arg(long)]
        types: usize,
        /// Dimension r+1
        #[arg(long)]
        dim: usize,
        /// Offsets are drawn from 0..=spread
        #[arg(long, default_value_t = 3)]
        spread: i64,
        /// Resample until |H| is at most this
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
        /// Apply a random change of basis seeded by --seed
        #[arg(long)]
        twist: bool,
    },
}

#[derive(Subcommand, Debug)]
enum QuiverCmd {
    /// Hull P(S) of a vertex list such as "0,0;2,0"
    Hull {
        #[arg(long, allow_hyphen_values = true)]
        vertices: String,
    },
    /// Shadow of a target vertex in a convex set
    Shadow {
        #[arg(long, allow_hyphen_values = true)]
        vertices: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
    /// Extreme vertices of a convex set
    Extreme {
        #[arg(long, allow_hyphen_values = true)]
        vertices: String,
    },
}

/// Input or schema problem; exit code 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<Rendered, InputError>;

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    serde_json::from_str(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn field_choice(common: &Common, file: Option<FieldKind>) -> Result<FieldKind, InputError> {
    if let Some(s) = &common.field {
        return Ok(FieldKind::parse(s)?);
    }
    if let Ok(s) = std::env::var("LT_FIELD") {
        if !s.trim().is_empty() {
            return FieldKind::parse(&s).map_err(|e| InputError(format!("LT_FIELD: {e}")));
        }
    }
    Ok(file.unwrap_or(FieldKind::Rational))
}

/// Something that can run against a net over any field.
trait NetJob {
    fn run<F: Field>(&self, net: NetPresentation<F>) -> CmdResult;
}

fn with_net(common: &Common, path: &Path, job: &impl NetJob) -> CmdResult {
    let file: NetFile = parse_json(path)?;
    let kind = field_choice(common, Some(file.field))?;
    match kind {
        FieldKind::Rational => job.run(file.to_net_with::<Rational>(())?),
        FieldKind::Prime { p } => job.run(file.to_net_with::<Fp>(Fp::ctx_from_kind(FieldKind::Prime { p })?)?),
    }
}

/// Downstream certifiers need a verified net; otherwise the verification
/// report itself is the (failing) output.
fn unverified<F: Field>(net: &NetPresentation<F>) -> Option<Rendered> {
    let report = net.verify();
    (!report.passed).then(|| certificate_output(&report))
}

fn certificate_output(cert: &Certificate) -> Rendered {
    Rendered::new(serde_json::to_value(cert).expect("certificates serialize"), certificate_markdown(cert), cert.passed)
}

struct VerifyJob;

impl NetJob for VerifyJob {
    fn run<F: Field>(&self, net: NetPresentation<F>) -> CmdResult {
        Ok(certificate_output(&net.verify()))
    }
}

struct TilingJob(Vec<i64>);

impl NetJob for TilingJob {
    fn run<F: Field>(&self, net: NetPresentation<F>) -> CmdResult {
        if let Some(r) = unverified(&net) {
            return Ok(r);
        }
        Ok(certificate_output(&tiling::tiling_certificate(&net, &self.0)?))
    }
}

struct ChowJob;

impl NetJob for ChowJob {
    fn run<F: Field>(&self, net: NetPresentation<F>) -> CmdResult {
        if let Some(r) = unverified(&net) {
            return Ok(r);
        }
        let class = tiling::chow_class(&net)?;
        let value = serde_json::to_value(&class.entries).expect("entries serialize");
        let md = report::chow_markdown(&class);
        Ok(Rendered::new(value, md, class.is_partition()))
    }
}

#[derive(Serialize)]
struct VertexReport {
    id: String,
    coords: Vec<i64>,
    lower: Vec<i64>,
    upper: Vec<i64>,
    codimension: usize,
    polytope_vertices: Option<Vec<Vec<i64>>>,
}

struct AnalyzeJob;

impl NetJob for AnalyzeJob {
    fn run<F: Field>(&self, net: NetPresentation<F>) -> CmdResult {
        if let Some(r) = unverified(&net) {
            return Ok(r);
        }
        let a = NetAnalysis::new(&net)?;
        let ids = net.ids();
        let vertices: Vec<VertexReport> = a
            .pairs
            .iter()
            .enumerate()
            .map(|(v, p)| VertexReport {
                id: ids[v].clone(),
                coords: net.vertex(v).coords().to_vec(),
                lower: p.lower().values().to_vec(),
                upper: p.upper().values().to_vec(),
                codimension: p.codimension(),
                polytope_vertices: (net.len() <= MAX_VERTEX_GROUND).then(|| p.vertices().expect("within cap")),
            })
            .collect();
        let h = net.convex_set()?;
        let extremes: Vec<String> = quiver::extreme_vertices(&h)?
            .iter()
            .map(|e| ids[net.vertex_set().index_of(e).expect("extreme vertices lie in H")].clone())
            .collect();
        let polygons: Vec<Vec<String>> = a.polygons.iter().map(|p| p.members.iter().map(|&i| ids[i].clone()).collect()).collect();
        let rc = tiling::reduction_from(&a);
        let faces: Vec<Value> = a
            .faces
            .iter()
            .map(|f| {
                json!({
                    "vertex": ids[f.vertex],
                    "faces": f.faces.iter().map(|r| json!({
                        "partition": r.partition.display_with(ids),
                        "polygon": r.order.iter().map(|&i| ids[i].clone()).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "violations": f.violations,
                })
            })
            .collect();
        let ok = rc.mismatches.is_empty() && a.faces.iter().all(|f| f.violations.is_empty());
        let value = json!({
            "arrow_types": net.types(),
            "dimension": net.dim(),
            "field": F::kind(net.ctx()).to_string(),
            "vertices": vertices,
            "extreme_vertices": extremes,
            "polygons": polygons,
            "faces_meeting_interior": faces,
            "reduction_complex": {
                "simplices": rc.simplices.iter().map(|s| s.iter().map(|&i| ids[i].clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "mismatches": rc.mismatches,
            },
        });
        let md = report::analyze_markdown(&value);
        Ok(Rendered::new(value, md, ok))
    }
}

fn generate_monomial(common: &Common, trop: &Path) -> CmdResult {
    let spec: TropSpec = parse_json(trop)?;
    emit_net(common, &spec, None)
}

fn emit_net(common: &Common, spec: &TropSpec, twist_seed: Option<u64>) -> CmdResult {
    let file = match field_choice(common, None)? {
        FieldKind::Rational => {
            let net = spec.generate::<Rational>(())?;
            NetFile::from_net(&twist_seed.map_or(net.clone(), |s| twist(&net, s)))
        }
        kind @ FieldKind::Prime { .. } => {
            let net = spec.generate::<Fp>(Fp::ctx_from_kind(kind)?)?;
            NetFile::from_net(&twist_seed.map_or(net.clone(), |s| twist(&net, s)))
        }
    };
    let value = serde_json::to_value(&file).expect("net files serialize");
    let md = format!("```json\n{}\n```\n", file.to_json());
    Ok(Rendered::new(value, md, true))
}

fn generate_random(common: &Common, seed: u64, types: usize, dim: usize, spread: i64, max_vertices: usize, tw: bool) -> CmdResult {
    if types == 0 || dim == 0 || spread < 0 {
        return Err(InputError("--types and --dim must be positive and --spread nonnegative".into()));
    }
    const ATTEMPTS: u64 = 64;
    for k in 0..ATTEMPTS {
        let spec = random_trop(seed.wrapping_mul(ATTEMPTS).wrapping_add(k), types, dim, spread);
        match spec.generators() {
            Ok(h) if h.len() <= max_vertices => return emit_net(common, &spec, tw.then_some(seed)),
            _ => continue,
        }
    }
    Err(InputError(format!("no instance with at most {max_vertices} vertices in {ATTEMPTS} attempts")))
}

fn parse_ints(s: &str) -> Result<Vec<i64>, InputError> {
    s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| InputError(format!("bad integer `{x}` in `{s}`")))).collect()
}

fn parse_vertices(s: &str) -> Result<VertexSet, InputError> {
    let vs = s.split(';').map(|v| parse_ints(v).map(QuiverVertex::new)).collect::<Result<Vec<_>, _>>()?;
    Ok(VertexSet::new(vs)?)
}

fn show(v: &QuiverVertex) -> Value {
    json!(v.coords())
}

fn run_chipfire(graph: &Path, divisor: &str, reduced: Option<usize>, extreme: bool) -> CmdResult {
    let g: Graph = parse_json::<Graph>(graph)?.validated()?;
    let d = parse_ints(divisor)?;
    let ls = chipfire::linear_system(&g, &d)?;
    let coords: Vec<Value> = ls.coords.iter().map(show).collect();
    let mut value = json!({ "divisor": d, "linear_system": ls.divisors, "coords": coords });
    let mut ok = true;
    if ls.is_empty() {
        value["note"] = json!("the linear system is empty");
    } else if let Some(v) = reduced {
        if v >= g.vertex_count() {
            return Err(InputError(format!("vertex {v} out of range")));
        }
        value = json!({ "divisor": d, "vertex": v, "reduced": chipfire::reduced_in(&g, &ls, v)? });
    } else if extreme {
        let h = ConvexSet::new(ls.vertex_set())?;
        let mut rows = vec![];
        for a in 0..g.vertex_count() {
            let e = quiver::extreme_vertex(&h, a)?;
            let at = ls.divisor_at(&e).expect("extreme vertex lies in the system").clone();
            let red = chipfire::reduced_in(&g, &ls, a)?;
            ok &= at == red;
            rows.push(json!({ "type": a, "extreme": show(&e), "divisor": at, "reduced": red, "agree": at == red }));
        }
        value = json!({ "divisor": d, "extreme": rows });
    }
    let md = format!("```json\n{}\n```\n", serde_json::to_string_pretty(&value).expect("json"));
    Ok(Rendered::new(value, md, ok))
}

fn run_quiver(cmd: &QuiverCmd) -> CmdResult {
    let value = match cmd {
        QuiverCmd::Hull { vertices } => {
            let h = quiver::hull(&parse_vertices(vertices)?)?;
            json!({ "hull": h.vertices().iter().map(show).collect::<Vec<_>>() })
        }
        QuiverCmd::Shadow { vertices, target } => {
            let h = ConvexSet::new(parse_vertices(vertices)?)?;
            let t = QuiverVertex::new(parse_ints(target)?);
            json!({ "target": show(&t), "shadow": show(&quiver::shadow(&t, &h)?) })
        }
        QuiverCmd::Extreme { vertices } => {
            let h = ConvexSet::new(parse_vertices(vertices)?)?;
            json!({ "extreme": quiver::extreme_vertices(&h)?.iter().map(show).collect::<Vec<_>>() })
        }
    };
    let md = format!("```json\n{}\n```\n", serde_json::to_string_pretty(&value).expect("json"));
    Ok(Rendered::new(value, md, true))
}

fn dispatch(cli: &Cli) -> CmdResult {
    let c = &cli.common;
    match &cli.command {
        Command::Verify { net } => with_net(c, net, &VerifyJob),
        Command::Analyze { net } => with_net(c, net, &AnalyzeJob),
        Command::Tiling { net, dilations } => with_net(c, net, &TilingJob(dilations.clone())),
        Command::Chow { net } => with_net(c, net, &ChowJob),
        Command::Generate(Generate::Monomial { trop }) => generate_monomial(c, trop),
        Command::Generate(Generate::Random { seed, types, dim, spread, max_vertices, twist }) => {
            generate_random(c, *seed, *types, *dim, *spread, *max_vertices, *twist)
        }
        Command::Chipfire { graph, divisor, reduced, linear_system: _, extreme } => run_chipfire(graph, divisor, *reduced, *extreme),
        Command::Quiver(q) => run_quiver(q),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(&cli) {
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(out) => {
            let text = match cli.common.format {
                Format::Json => out.json(),
                Format::Markdown => out.markdown.clone(),
            };
            let written = match &cli.common.output {
                Some(p) => fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
    }
}
