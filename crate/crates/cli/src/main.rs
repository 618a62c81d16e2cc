//! `symcov` command-line front end.
//!
//! Single reports go to stdout as JSON carrying `"schema": 1`; the census is
//! CSV whose first column is the schema version. Exit codes: 0 on success,
//! 2 for malformed input, 3 when a construction's hypotheses fail, 4 for an
//! internal consistency violation.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use symcov::census::{catalog_from_spec, default_catalog, psl2_entry, run_census, CatalogEntry};
use symcov::extender::{build_pair, disconnected_pseudocover};
use symcov::families::{px_group, PxParameters};
use symcov::graph::ExportFormat;
use symcov::limits;
use symcov::spec::{parse_permutation, CatalogEntrySpec, CatalogSpec, GroupSpec};
use symcov::tetra::{
    can_have_connected_pseudocover, construct_pseudocover, first_variant_matches, psl2_example, variant_subgroups,
};
use symcov::{CosetGraph, Error, PermutationGroup};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "symcov", version, about = "Coset graphs, extenders and pseudocovers")]
struct Cli {
    /// Cap on enumerated group elements (also read from SYMCOV_MAX_ELEMENTS).
    #[arg(long, global = true)]
    max_elements: Option<u64>,
    /// Cap on coset-graph vertices.
    #[arg(long, global = true)]
    max_vertices: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build C(p, r, s), optionally classified over a coarser graph.
    Px(PxArgs),
    /// Classify Cos(G, L, LgL) over Cos(G, H, HgH).
    Classify(ClassifyArgs),
    /// Run the tetravalent pseudocover construction.
    Tetra(TetraArgs),
    /// Classify every L with g² ∈ L < H over a catalog; CSV on stdout.
    Census(CensusArgs),
    /// Blow up the truncation of Σ into a disconnected pseudocover.
    Disconnected(DisconnectedArgs),
    /// Write a coset graph as DOT or JSON.
    Export(ExportArgs),
}

#[derive(Args)]
struct PxParams {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
}

#[derive(Args)]
struct PxArgs {
    #[command(flatten)]
    params: PxParams,
    /// Classify C(p,r,s) over C(p,r,s′); s′ must have the parity of s.
    #[arg(long, value_name = "S_PRIME", conflicts_with = "cover_witness")]
    classify_over: Option<usize>,
    /// Classify over the quotient by T = (⟨a_0 a_{r−1}⟩ × ⟨a_1, …, a_{r−2}⟩):⟨y⟩.
    #[arg(long)]
    cover_witness: bool,
    /// Print the graph instead of a report.
    #[arg(long, value_name = "FORMAT")]
    export: Option<ExportFormat>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Group spec JSON file for G.
    #[arg(long)]
    group: PathBuf,
    /// A generator of L in cycle notation; repeat for more.
    #[arg(long = "inner", required = true)]
    inner: Vec<String>,
    /// A generator of H in cycle notation; repeat for more.
    #[arg(long = "outer", required = true)]
    outer: Vec<String>,
    #[arg(long)]
    flip: String,
}

/// Where Σ comes from: a catalog entry file, PX parameters, or the PSL(2, p) example.
#[derive(Args)]
struct SigmaSource {
    /// Catalog entry JSON: {"name", "group", "stabilizer", "flip"}.
    #[arg(long, conflicts_with_all = ["p", "psl"])]
    entry: Option<PathBuf>,
    #[arg(long, requires_all = ["r", "s"])]
    p: Option<u64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    /// Prime p ≡ 1 (mod 16) for the PSL(2, p) graph.
    #[arg(long, conflicts_with = "p")]
    psl: Option<u64>,
}

#[derive(Args)]
struct TetraArgs {
    #[command(flatten)]
    source: SigmaSource,
    /// Also build the four variant subgroups L1..L4.
    #[arg(long)]
    variants: bool,
}

#[derive(Args)]
struct CensusArgs {
    /// Catalog JSON file; the built-in catalog when omitted.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Append the PSL(2, 17) graph to the built-in catalog.
    #[arg(long, conflicts_with = "catalog")]
    include_psl: bool,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DisconnectedArgs {
    #[command(flatten)]
    source: SigmaSource,
    /// Also write the blow-up graph.
    #[arg(long, value_name = "FORMAT", requires = "out")]
    export: Option<ExportFormat>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    source: SigmaSource,
    #[arg(long, default_value = "dot")]
    format: ExportFormat,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(cap) = cli.max_elements {
        limits::set_max_elements(cap);
    }
    if let Some(cap) = cli.max_vertices {
        limits::set_max_vertices(cap);
    }
    let result = match cli.command {
        Command::Px(a) => cmd_px(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Tetra(a) => cmd_tetra(a),
        Command::Census(a) => cmd_census(a),
        Command::Disconnected(a) => cmd_disconnected(a),
        Command::Export(a) => cmd_export(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("symcov: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Spec(_) | Error::Domain(_) | Error::Json(_) | Error::Io(_) => 2,
        Error::Precondition(_) | Error::Capacity { .. } | Error::SearchFailure(_) => 3,
        Error::Consistency(_) => 4,
    }
}

/// `value` with `"schema"` added, pretty-printed with a trailing newline.
fn emit(value: impl Serialize) -> symcov::Result<()> {
    let mut v = serde_json::to_value(value)?;
    match &mut v {
        Value::Object(map) => {
            map.insert("schema".into(), json!(SCHEMA));
        }
        other => *other = json!({ "schema": SCHEMA, "value": other.take() }),
    }
    write_out(None, &(serde_json::to_string_pretty(&v)? + "\n"))
}

fn write_out(path: Option<&Path>, text: &str) -> symcov::Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => match std::io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            other => other?,
        },
    }
    Ok(())
}

fn cmd_px(a: PxArgs) -> symcov::Result<()> {
    let PxParams { p, r, s } = a.params;
    PxParameters::new(p, r, s)?;
    let pxg = px_group(p, r)?;
    let h = pxg.subgroup_h(s)?;
    let flip = pxg.flip(s)?;
    let name = format!("C({p},{r},{s})");
    if let Some(format) = a.export {
        let cg = symcov::families::px_graph_in(&pxg, s)?;
        return write_out(None, &cg.graph().export(format));
    }
    let outer = if let Some(s2) = a.classify_over {
        PxParameters::new(p, r, s2)?;
        if s2 % 2 != s % 2 || s2 >= s {
            return Err(Error::Precondition(format!(
                "H_{s} < H_{s2} needs s′ < s with the parity of s"
            )));
        }
        Some((format!("C({p},{r},{s2})"), pxg.subgroup_h(s2)?))
    } else if a.cover_witness {
        Some(("T".to_string(), pxg.cover_witness_subgroup()?))
    } else {
        None
    };
    match outer {
        Some((over, outer)) => {
            let pair = build_pair(&pxg.group, &h, &outer, &flip)?;
            let report = pair.classify()?;
            let mut v = serde_json::to_value(&report)?;
            v["gamma"] = json!(name);
            v["sigma"] = json!(over);
            v["gamma_vertices"] = json!(pair.gamma().vertex_count());
            v["sigma_vertices"] = json!(pair.sigma().vertex_count());
            emit(v)
        }
        None => {
            let cg = symcov::families::px_graph_in(&pxg, s)?;
            emit(json!({
                "graph": name,
                "group_order": pxg.group.order(),
                "stabilizer_order": h.order(),
                "flip": flip.to_string(),
                "vertices": cg.vertex_count(),
                "valency": cg.valency()?,
                "connected": cg.is_connected()?,
                "arc_transitive": cg.verify_arc_transitive()?,
            }))
        }
    }
}

fn read(path: &Path) -> symcov::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Spec(format!("{}: {e}", path.display())))
}

fn gens(degree: usize, texts: &[String]) -> symcov::Result<PermutationGroup> {
    let perms = texts.iter().map(|t| parse_permutation(degree, t)).collect::<symcov::Result<Vec<_>>>()?;
    PermutationGroup::new(degree, perms).map_err(|e| Error::Spec(e.to_string()))
}

fn cmd_classify(a: ClassifyArgs) -> symcov::Result<()> {
    let group = GroupSpec::from_json(&read(&a.group)?)?.to_group()?;
    let n = group.degree();
    let inner = gens(n, &a.inner)?;
    let outer = gens(n, &a.outer)?;
    let flip = parse_permutation(n, &a.flip)?;
    let pair = build_pair(&group, &inner, &outer, &flip)?;
    let report = pair.classify()?;
    let mut v = serde_json::to_value(&report)?;
    v["gamma_vertices"] = json!(pair.gamma().vertex_count());
    v["sigma_vertices"] = json!(pair.sigma().vertex_count());
    v["gamma_connected"] = json!(pair.gamma().is_connected()?);
    emit(v)
}

fn load_sigma(src: &SigmaSource) -> symcov::Result<(String, CosetGraph)> {
    if let Some(path) = &src.entry {
        let spec: CatalogEntrySpec =
            serde_json::from_str(&read(path)?).map_err(|e| Error::Spec(format!("catalog entry: {e}")))?;
        let entry = catalog_from_spec(&CatalogSpec { entries: vec![spec] })?.remove(0);
        return Ok((entry.name.clone(), entry.sigma()?));
    }
    if let Some(q) = src.psl {
        let ex = psl2_example(q)?;
        return Ok((format!("PSL(2,{q})"), ex.sigma));
    }
    match (src.p, src.r, src.s) {
        (Some(p), Some(r), Some(s)) => Ok((format!("C({p},{r},{s})"), symcov::families::px_graph(p, r, s)?)),
        _ => Err(Error::Spec("give --entry FILE, --p/--r/--s, or --psl P".into())),
    }
}

fn cmd_tetra(a: TetraArgs) -> symcov::Result<()> {
    let (name, sigma) = load_sigma(&a.source)?;
    let (possible, reason) = can_have_connected_pseudocover(&sigma)?;
    if !possible {
        return Err(Error::Precondition(format!("{name}: {reason}")));
    }
    let pc = construct_pseudocover(&sigma)?;
    let mut v = json!({
        "sigma": name,
        "sigma_vertices": sigma.vertex_count(),
        "gamma_vertices": pc.pair.gamma().vertex_count(),
        "gamma_connected": pc.pair.gamma().is_connected()?,
        "trace": pc.data.trace(),
        "report": pc.report,
    });
    if a.variants {
        let vars = variant_subgroups(&sigma, &pc.data)?;
        v["first_variant_isomorphic"] = json!(first_variant_matches(&pc, &vars)?);
        v["variants"] = vars
            .iter()
            .map(|x| json!({ "name": x.name, "order": x.subgroup.order(), "connected": x.connected }))
            .collect();
    }
    emit(v)
}

fn cmd_census(a: CensusArgs) -> symcov::Result<()> {
    let entries: Vec<CatalogEntry> = match &a.catalog {
        Some(path) => catalog_from_spec(&CatalogSpec::from_json(&read(path)?)?)?,
        None => {
            let mut e = default_catalog()?;
            if a.include_psl {
                e.push(psl2_entry()?);
            }
            e
        }
    };
    let rows = run_census(&entries)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        w.serialize(row).map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    log::info!("{} census rows over {} catalog entries", rows.len(), entries.len());
    write_out(a.output.as_deref(), &String::from_utf8_lossy(&bytes))
}

fn cmd_disconnected(a: DisconnectedArgs) -> symcov::Result<()> {
    let (name, sigma) = load_sigma(&a.source)?;
    let dp = disconnected_pseudocover(sigma.group(), sigma.stabilizer(), sigma.flip())?;
    if let (Some(format), Some(out)) = (a.export, a.out.as_deref()) {
        write_out(Some(out), &dp.graph.export(format))?;
    }
    emit(json!({
        "sigma": name,
        "sigma_vertices": sigma.vertex_count(),
        "truncation_vertices": dp.truncation_vertices,
        "vertices": dp.graph.vertex_count(),
        "components": dp.graph.connected_components().len(),
        "verdict": dp.verdict,
    }))
}

fn cmd_export(a: ExportArgs) -> symcov::Result<()> {
    let (_, sigma) = load_sigma(&a.source)?;
    write_out(a.out.as_deref(), &sigma.graph().export(a.format))
}
