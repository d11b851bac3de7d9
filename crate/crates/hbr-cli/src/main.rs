//! `hbr` — command-line front end for the routing simulator.
//!
//! Subcommands cover the full pipeline: generating unit-disk networks
//! (`generate`), building the bipartition hierarchy (`build-hbr`), routing
//! individual or sampled pairs (`route`), the full density sweep
//! (`experiment`), the weight-coarsening and flood-cost studies
//! (`coarsen-study`, `flood-study`), and SVG visualization (`render`).
//!
//! The `experiment` and `coarsen-study` subcommands read an optional
//! `key = value` config file; command-line flags override file entries.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use hbr_sim::eval::{
    coarsening_csv, coarsening_markdown, coarsening_models, coarsening_study, flood_study,
    protocol_color, render_route_svg, route_protocol, run_experiment, write_route_records,
    ExperimentConfig, Protocol, RouteRecord,
};
use hbr_sim::greedy::{vcap_coordinates, SpOracle};
use hbr_sim::hbr::{build_hbr, build_structure, TerminationPolicy};
use hbr_sim::net::Mask;
use hbr_sim::rng::{self, STREAM_GENERATE, STREAM_ROUTES};
use hbr_sim::{generate_network, GenerationConfig, NetError, Network, WeightModel, Weights};

#[derive(Parser)]
#[command(
    name = "hbr",
    version,
    about = "Hierarchical bipartition routing simulator for wireless sensor networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random unit-disk network and write it as a text file.
    Generate(GenerateCmd),
    /// Build the bipartition hierarchy for a network and dump it.
    BuildHbr(BuildCmd),
    /// Route one pair or a random sample of pairs; emit per-route CSV.
    Route(RouteCmd),
    /// Run the density sweep and emit overhead tables (CSV + markdown).
    Experiment(ExperimentCmd),
    /// Compare hierarchy-routing overhead across weight models.
    CoarsenStudy(CoarsenCmd),
    /// Measure construction-flood transmissions level by level.
    FloodStudy(FloodCmd),
    /// Render a network with optional routes as SVG.
    Render(RenderCmd),
}

#[derive(Args)]
struct FieldArgs {
    /// Field width in meters.
    #[arg(long, default_value_t = 1000.0)]
    width: f64,
    /// Field height in meters.
    #[arg(long, default_value_t = 1000.0)]
    height: f64,
    /// Radio range in meters.
    #[arg(long, default_value_t = 50.0)]
    radio_range: f64,
    /// Minimum fraction of placed nodes the largest component must cover.
    #[arg(long, default_value_t = 2.0 / 3.0)]
    accept: f64,
}

#[derive(Args)]
struct GenerateCmd {
    /// Node density in nodes per square meter (e.g. 2.6e-3).
    #[arg(long)]
    density: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    field: FieldArgs,
    /// Obstacle mask: builtin name (lakes, streets, canyon) or a PGM path.
    #[arg(long)]
    mask: Option<String>,
    /// Attempts before giving up when generation keeps being rejected.
    #[arg(long, default_value_t = 2000)]
    retries: u32,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildCmd {
    /// Network file produced by `generate`.
    #[arg(long)]
    net: PathBuf,
    /// Weight model: w (energy), w16..w1 (coarsened), unit.
    #[arg(long, default_value = "w")]
    weights: String,
    /// Termination: singletons | radius1.
    #[arg(long, default_value = "singletons")]
    policy: String,
    /// Also simulate construction floods and write their CSV here.
    #[arg(long)]
    floods: Option<PathBuf>,
    /// Structure dump output (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RouteCmd {
    #[arg(long)]
    net: PathBuf,
    #[arg(long, default_value = "w")]
    weights: String,
    #[arg(long, default_value = "singletons")]
    policy: String,
    /// Comma-separated protocols (hbr,lmr_sp,lmr_hbr,geo_sp,geo_hbr).
    #[arg(long, default_value = "hbr,lmr_sp,lmr_hbr,geo_sp,geo_hbr")]
    protocols: String,
    /// Route a single explicit pair.
    #[arg(long, requires = "target")]
    source: Option<u32>,
    #[arg(long, requires = "source")]
    target: Option<u32>,
    /// Or: number of random pairs to sample.
    #[arg(long, conflicts_with_all = ["source", "target"])]
    routes: Option<usize>,
    /// Seed for random pair sampling.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Per-route CSV output (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentCmd {
    /// `key = value` config file; flags below override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated densities in nodes per square meter, or `sweep`.
    #[arg(long)]
    densities: Option<String>,
    /// Networks per density.
    #[arg(long)]
    networks: Option<usize>,
    /// Routes per network.
    #[arg(long)]
    routes: Option<usize>,
    /// Comma-separated protocol list.
    #[arg(long)]
    protocols: Option<String>,
    /// Weight model: w, w16..w1, unit.
    #[arg(long)]
    weights: Option<String>,
    /// Mask: builtin name, PGM path, or `none`.
    #[arg(long)]
    mask: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Regeneration attempts per network before flagging the density.
    #[arg(long)]
    retries: Option<u32>,
    #[arg(long)]
    width: Option<f64>,
    #[arg(long)]
    height: Option<f64>,
    #[arg(long)]
    radio_range: Option<f64>,
    #[arg(long)]
    accept: Option<f64>,
    /// Termination: singletons | radius1.
    #[arg(long)]
    policy: Option<String>,
    /// Directory receiving results.csv and results.md (default `.`).
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct CoarsenCmd {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    densities: Option<String>,
    #[arg(long)]
    networks: Option<usize>,
    #[arg(long)]
    routes: Option<usize>,
    /// Comma-separated weight models to compare.
    #[arg(long, default_value = "w,w16,w8,w4,w2,w1")]
    models: String,
    #[arg(long)]
    mask: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    retries: Option<u32>,
    #[arg(long)]
    width: Option<f64>,
    #[arg(long)]
    height: Option<f64>,
    #[arg(long)]
    radio_range: Option<f64>,
    #[arg(long)]
    accept: Option<f64>,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct FloodCmd {
    /// Node density of the measured network.
    #[arg(long, default_value_t = 2.5e-3)]
    density: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value = "w")]
    weights: String,
    #[arg(long)]
    mask: Option<String>,
    #[arg(long, default_value_t = 2000)]
    retries: u32,
    /// Flood CSV output (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderCmd {
    #[arg(long)]
    net: PathBuf,
    #[arg(long, default_value = "w")]
    weights: String,
    #[arg(long, default_value = "singletons")]
    policy: String,
    #[arg(long)]
    source: u32,
    #[arg(long)]
    target: u32,
    /// Protocols to draw, each in its conventional color.
    #[arg(long, default_value = "hbr,geo_sp")]
    protocols: String,
    /// Mask to shade (builtin name or PGM path).
    #[arg(long)]
    mask: Option<String>,
    /// SVG output (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Generate(cmd) => generate(cmd),
        Command::BuildHbr(cmd) => build(cmd),
        Command::Route(cmd) => route(cmd),
        Command::Experiment(cmd) => experiment(cmd),
        Command::CoarsenStudy(cmd) => coarsen(cmd),
        Command::FloodStudy(cmd) => flood(cmd),
        Command::Render(cmd) => render(cmd),
    }
}

fn load_mask(spec: &str) -> Result<Option<Mask>> {
    if spec == "none" {
        return Ok(None);
    }
    if let Some(mask) = Mask::builtin(spec) {
        return Ok(Some(mask));
    }
    let path = Path::new(spec);
    let file = File::open(path).with_context(|| format!("opening mask {spec}"))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("mask");
    Ok(Some(Mask::from_pgm(BufReader::new(file), name)?))
}

fn parse_policy(s: &str) -> Result<TerminationPolicy> {
    match s {
        "singletons" => Ok(TerminationPolicy::SplitToSingletons),
        "radius1" => Ok(TerminationPolicy::StopAtHopRadiusOne),
        other => bail!("unknown policy '{other}' (expected singletons or radius1)"),
    }
}

fn parse_weights(s: &str) -> Result<WeightModel> {
    WeightModel::parse(s).ok_or_else(|| anyhow!("unknown weight model '{s}' (expected w, w16..w1, unit)"))
}

fn parse_protocols(s: &str) -> Result<Vec<Protocol>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| Protocol::parse(p).ok_or_else(|| anyhow!("unknown protocol '{p}'")))
        .collect()
}

fn parse_densities(s: &str) -> Result<Vec<f64>> {
    if s == "sweep" {
        return Ok(hbr_sim::eval::standard_densities());
    }
    s.split(',')
        .map(str::trim)
        .filter(|d| !d.is_empty())
        .map(|d| d.parse::<f64>().with_context(|| format!("bad density '{d}'")))
        .collect()
}

fn out_writer(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn read_net(path: &Path) -> Result<Network> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(Network::read_text(BufReader::new(file))?)
}

fn generate(cmd: GenerateCmd) -> Result<()> {
    let mask = cmd.mask.as_deref().map(load_mask).transpose()?.flatten();
    let mut last = None;
    for attempt in 0..cmd.retries.max(1) {
        let seed = rng::derive_seed(cmd.seed, &[STREAM_GENERATE, attempt as u64]);
        let config = GenerationConfig {
            density: cmd.density,
            width: cmd.field.width,
            height: cmd.field.height,
            radio_range: cmd.field.radio_range,
            mask: mask.clone(),
            acceptance_fraction: cmd.field.accept,
            seed,
        };
        match generate_network(&config) {
            Ok(net) => {
                let mut w = out_writer(&cmd.out)?;
                net.write_text(&mut w)?;
                w.flush()?;
                eprintln!(
                    "accepted network: {} nodes, {} edges (attempt {})",
                    net.node_count(),
                    net.edge_count(),
                    attempt + 1
                );
                return Ok(());
            }
            Err(e @ NetError::Rejected { .. }) => last = Some(e),
            Err(e) => return Err(e.into()),
        }
    }
    bail!("generation rejected after {} attempts: {}", cmd.retries, last.unwrap());
}

fn build(cmd: BuildCmd) -> Result<()> {
    let net = read_net(&cmd.net)?;
    let weights = Weights::build(&net, &parse_weights(&cmd.weights)?);
    let policy = parse_policy(&cmd.policy)?;
    if let Some(floods_path) = &cmd.floods {
        let (structure, stats) = build_hbr(&net, &weights, policy)?;
        let f = File::create(floods_path)
            .with_context(|| format!("creating {}", floods_path.display()))?;
        stats.write_csv(BufWriter::new(f))?;
        dump_structure(&cmd.out, &net, &structure)?;
    } else {
        let structure = build_structure(&net, &weights, policy)?;
        dump_structure(&cmd.out, &net, &structure)?;
    }
    Ok(())
}

fn dump_structure(out: &Option<PathBuf>, net: &Network, structure: &hbr_sim::hbr::HbrStructure) -> Result<()> {
    let mut w = out_writer(out)?;
    structure.write_debug(&mut w)?;
    w.flush()?;
    eprintln!(
        "built hierarchy for {} nodes: mean address {:.2} bits, max {}",
        net.node_count(),
        structure.mean_address_len(),
        structure.max_address_len()
    );
    Ok(())
}

fn route(cmd: RouteCmd) -> Result<()> {
    let net = read_net(&cmd.net)?;
    let n = net.node_count();
    let weights = Weights::build(&net, &parse_weights(&cmd.weights)?);
    let protocols = parse_protocols(&cmd.protocols)?;
    let structure = if protocols.iter().any(|p| p.recovery() != Some(hbr_sim::greedy::Recovery::ShortestPath)) {
        Some(build_structure(&net, &weights, parse_policy(&cmd.policy)?)?)
    } else {
        None
    };
    let coords = if protocols.iter().any(|p| p.greedy_mode() == Some(hbr_sim::greedy::GreedyMode::Lmr)) {
        Some(vcap_coordinates(&net, &weights)?.1)
    } else {
        None
    };
    let oracle = SpOracle::new(&net, &weights);

    let pairs: Vec<(u32, u32)> = match (cmd.source, cmd.target) {
        (Some(s), Some(t)) => vec![(s, t)],
        _ => {
            let count = cmd.routes.unwrap_or(1);
            let mut rng = rng::stream(cmd.seed, &[STREAM_ROUTES]);
            (0..count)
                .map(|_| {
                    let s = rng::next_index(&mut rng, n) as u32;
                    let mut t = rng::next_index(&mut rng, n) as u32;
                    while t == s {
                        t = rng::next_index(&mut rng, n) as u32;
                    }
                    (s, t)
                })
                .collect()
        }
    };

    let mut records = Vec::with_capacity(pairs.len() * protocols.len());
    for &(s, t) in &pairs {
        for &protocol in &protocols {
            let trace = route_protocol(
                &net,
                &weights,
                protocol,
                structure.as_ref(),
                coords.as_deref(),
                &oracle,
                s,
                t,
            )?;
            records.push(RouteRecord::from_trace(s, t, protocol, &trace));
        }
    }
    let mut w = out_writer(&cmd.out)?;
    write_route_records(&mut w, &records)?;
    w.flush()?;
    Ok(())
}

/// `key = value` file, `#` comments; returns raw string entries.
fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let mut text = String::new();
    File::open(path)
        .with_context(|| format!("opening {}", path.display()))?
        .read_to_string(&mut text)?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{}:{}: expected key = value", path.display(), i + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Applies config-file entries and flag overrides onto the desk-scale
/// defaults. Precedence: flags > file > defaults.
fn resolve_experiment_config(cmd: &ExperimentCmd) -> Result<ExperimentConfig> {
    let file = match &cmd.config {
        Some(path) => read_config_file(path)?,
        None => BTreeMap::new(),
    };
    let pick = |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).cloned());

    let seed = match pick(cmd.seed.map(|s| s.to_string()), "seed") {
        Some(s) => s.parse::<u64>().with_context(|| format!("bad seed '{s}'"))?,
        None => 1,
    };
    let mut cfg = ExperimentConfig::desk(seed);
    if let Some(s) = pick(cmd.densities.clone(), "densities") {
        cfg.densities = parse_densities(&s)?;
    }
    if let Some(s) = pick(cmd.networks.map(|v| v.to_string()), "networks") {
        cfg.networks_per_density = s.parse().with_context(|| format!("bad networks '{s}'"))?;
    }
    if let Some(s) = pick(cmd.routes.map(|v| v.to_string()), "routes") {
        cfg.routes_per_network = s.parse().with_context(|| format!("bad routes '{s}'"))?;
    }
    if let Some(s) = pick(cmd.protocols.clone(), "protocols") {
        cfg.protocols = parse_protocols(&s)?;
    }
    if let Some(s) = pick(cmd.weights.clone(), "weights") {
        cfg.weight_model = parse_weights(&s)?;
    }
    if let Some(s) = pick(cmd.mask.clone(), "mask") {
        cfg.mask = load_mask(&s)?;
    }
    if let Some(s) = pick(cmd.retries.map(|v| v.to_string()), "retries") {
        cfg.retry_budget = s.parse().with_context(|| format!("bad retries '{s}'"))?;
    }
    if let Some(s) = pick(cmd.width.map(|v| v.to_string()), "width") {
        cfg.width = s.parse().with_context(|| format!("bad width '{s}'"))?;
    }
    if let Some(s) = pick(cmd.height.map(|v| v.to_string()), "height") {
        cfg.height = s.parse().with_context(|| format!("bad height '{s}'"))?;
    }
    if let Some(s) = pick(cmd.radio_range.map(|v| v.to_string()), "radio_range") {
        cfg.radio_range = s.parse().with_context(|| format!("bad radio_range '{s}'"))?;
    }
    if let Some(s) = pick(cmd.accept.map(|v| v.to_string()), "accept") {
        cfg.acceptance_fraction = s.parse().with_context(|| format!("bad accept '{s}'"))?;
    }
    if let Some(s) = pick(cmd.policy.clone(), "policy") {
        cfg.policy = parse_policy(&s)?;
    }
    Ok(cfg)
}

fn experiment(cmd: ExperimentCmd) -> Result<()> {
    let cfg = resolve_experiment_config(&cmd)?;
    let table = run_experiment(&cfg)?;
    fs::create_dir_all(&cmd.out_dir)?;
    let csv_path = cmd.out_dir.join("results.csv");
    let md_path = cmd.out_dir.join("results.md");
    fs::write(&csv_path, table.to_csv())?;
    fs::write(&md_path, table.to_markdown())?;
    eprintln!("wrote {} and {}", csv_path.display(), md_path.display());
    if !table.failures.is_empty() {
        for (d, msg) in &table.failures {
            eprintln!("flagged density {:.4}: {msg}", d * 1e3);
        }
        bail!("{} density row(s) exhausted the retry budget", table.failures.len());
    }
    Ok(())
}

fn coarsen(cmd: CoarsenCmd) -> Result<()> {
    let base = ExperimentCmd {
        config: cmd.config.clone(),
        densities: cmd.densities.clone(),
        networks: cmd.networks,
        routes: cmd.routes,
        protocols: None,
        weights: None,
        mask: cmd.mask.clone(),
        seed: cmd.seed,
        retries: cmd.retries,
        width: cmd.width,
        height: cmd.height,
        radio_range: cmd.radio_range,
        accept: cmd.accept,
        policy: None,
        out_dir: cmd.out_dir.clone(),
    };
    let cfg = resolve_experiment_config(&base)?;
    let models = if cmd.models == "default" {
        coarsening_models()
    } else {
        cmd.models
            .split(',')
            .map(str::trim)
            .filter(|m| !m.is_empty())
            .map(parse_weights)
            .collect::<Result<Vec<_>>>()?
    };
    let rows = coarsening_study(&cfg, &models)?;
    fs::create_dir_all(&cmd.out_dir)?;
    let csv_path = cmd.out_dir.join("coarsening.csv");
    let md_path = cmd.out_dir.join("coarsening.md");
    fs::write(&csv_path, coarsening_csv(&rows))?;
    fs::write(&md_path, coarsening_markdown(&rows))?;
    eprintln!("wrote {} and {}", csv_path.display(), md_path.display());
    Ok(())
}

fn flood(cmd: FloodCmd) -> Result<()> {
    let mask = cmd.mask.as_deref().map(load_mask).transpose()?.flatten();
    let mut cfg = ExperimentConfig::desk(cmd.seed);
    cfg.width = cmd.field.width;
    cfg.height = cmd.field.height;
    cfg.radio_range = cmd.field.radio_range;
    cfg.acceptance_fraction = cmd.field.accept;
    cfg.weight_model = parse_weights(&cmd.weights)?;
    cfg.mask = mask;
    cfg.retry_budget = cmd.retries;
    let study = flood_study(&cfg, cmd.density)?;
    eprintln!("network: {} nodes, {} edges", study.nodes, study.edges);
    let mut w = out_writer(&cmd.out)?;
    study.stats.write_csv(&mut w)?;
    w.flush()?;
    Ok(())
}

fn render(cmd: RenderCmd) -> Result<()> {
    let net = read_net(&cmd.net)?;
    let weights = Weights::build(&net, &parse_weights(&cmd.weights)?);
    let protocols = parse_protocols(&cmd.protocols)?;
    let structure = build_structure(&net, &weights, parse_policy(&cmd.policy)?)?;
    let coords = if protocols.iter().any(|p| p.greedy_mode() == Some(hbr_sim::greedy::GreedyMode::Lmr)) {
        Some(vcap_coordinates(&net, &weights)?.1)
    } else {
        None
    };
    let oracle = SpOracle::new(&net, &weights);
    let mask = cmd.mask.as_deref().map(load_mask).transpose()?.flatten();

    let mut traces = Vec::new();
    for &protocol in &protocols {
        let trace = route_protocol(
            &net,
            &weights,
            protocol,
            Some(&structure),
            coords.as_deref(),
            &oracle,
            cmd.source,
            cmd.target,
        )?;
        eprintln!(
            "{}: cost {:.0}, {} hops, {} dead end(s)",
            protocol.label(),
            trace.total_cost,
            trace.hops(),
            trace.dead_end_count()
        );
        traces.push((protocol_color(protocol), trace));
    }
    let trace_refs: Vec<(&str, &hbr_sim::RouteTrace)> =
        traces.iter().map(|(c, t)| (*c, t)).collect();
    let mut w = out_writer(&cmd.out)?;
    render_route_svg(&mut w, &net, Some(&structure), &trace_refs, mask.as_ref())?;
    w.flush()?;
    Ok(())
}
