//! Experiment harness: density sweeps measuring per-protocol routing
//! overhead against the shortest-path baseline, dead-end statistics, the
//! weight-coarsening study, the construction-flood study, and report
//! emission as CSV and markdown.
//!
//! Everything is a pure function of `(config, master seed)`: network seeds
//! are derived per `(density index, network index, attempt)`, route pairs per
//! `(density index, network index)`, and parallel workers only compute
//! independent networks whose results are folded in index order — so output
//! bytes never depend on the worker count.

mod svg;
pub use svg::{protocol_color, render_route_svg};

use rayon::prelude::*;
use std::io::Write;

use crate::greedy::{vcap_coordinates, GreedyMode, GreedyRouter, Recovery, SpOracle, VirtualCoordinate};
use crate::hbr::{build_hbr, build_structure, route_hbr, FloodStats, HbrStructure, TerminationPolicy};
use crate::net::{generate_network, GenerationConfig, Mask, Network};
use crate::rng::{self, STREAM_GENERATE, STREAM_ROUTES};
use crate::trace::RouteTrace;
use crate::weights::{WeightModel, Weights};
use crate::{ExperimentError, NetError, RouteError};

/// A routing protocol under evaluation: stand-alone hierarchy routing, or a
/// greedy metric combined with a dead-end recovery strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protocol {
    /// Bipartition-hierarchy routing only.
    Hbr,
    /// Virtual-coordinate greedy, shortest-path recovery.
    LmrSp,
    /// Virtual-coordinate greedy, hierarchy recovery.
    LmrHbr,
    /// Physical-coordinate greedy, shortest-path recovery.
    GeoSp,
    /// Physical-coordinate greedy, hierarchy recovery.
    GeoHbr,
}

impl Protocol {
    pub const ALL: [Protocol; 5] = [
        Protocol::Hbr,
        Protocol::LmrSp,
        Protocol::LmrHbr,
        Protocol::GeoSp,
        Protocol::GeoHbr,
    ];

    /// Stable identifier used in CSV output and on the command line.
    pub fn label(self) -> &'static str {
        match self {
            Protocol::Hbr => "hbr",
            Protocol::LmrSp => "lmr_sp",
            Protocol::LmrHbr => "lmr_hbr",
            Protocol::GeoSp => "geo_sp",
            Protocol::GeoHbr => "geo_hbr",
        }
    }

    /// Column heading in markdown tables.
    pub fn column(self) -> &'static str {
        match self {
            Protocol::Hbr => "HBR",
            Protocol::LmrSp => "LMR_SP",
            Protocol::LmrHbr => "LMR_HBR",
            Protocol::GeoSp => "GEO_SP",
            Protocol::GeoHbr => "GEO_HBR",
        }
    }

    pub fn parse(s: &str) -> Option<Protocol> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        Protocol::ALL.into_iter().find(|p| p.label() == norm)
    }

    /// Greedy metric, `None` for stand-alone hierarchy routing.
    pub fn greedy_mode(self) -> Option<GreedyMode> {
        match self {
            Protocol::Hbr => None,
            Protocol::LmrSp | Protocol::LmrHbr => Some(GreedyMode::Lmr),
            Protocol::GeoSp | Protocol::GeoHbr => Some(GreedyMode::Geo),
        }
    }

    /// Recovery strategy, `None` for stand-alone hierarchy routing.
    pub fn recovery(self) -> Option<Recovery> {
        match self {
            Protocol::Hbr => None,
            Protocol::LmrSp | Protocol::GeoSp => Some(Recovery::ShortestPath),
            Protocol::LmrHbr | Protocol::GeoHbr => Some(Recovery::Hbr),
        }
    }

    fn needs_structure(self) -> bool {
        matches!(self, Protocol::Hbr | Protocol::LmrHbr | Protocol::GeoHbr)
    }

    fn needs_coords(self) -> bool {
        matches!(self, Protocol::LmrSp | Protocol::LmrHbr)
    }
}

/// Relative extra cost of a protocol over the shortest-path baseline, in
/// percent, computed on summed costs.
pub fn overhead(total_cost_alg: f64, total_cost_sp: f64) -> Result<f64, ExperimentError> {
    if total_cost_sp <= 0.0 {
        return Err(ExperimentError::ZeroBaseline);
    }
    Ok(100.0 * (total_cost_alg - total_cost_sp) / total_cost_sp)
}

/// Geometric progression of densities: `start, start*factor, ...` while the
/// value stays within `end` plus half a starting step of slack (so the
/// nominal endpoint survives rounding).
pub fn density_progression(start: f64, factor: f64, end: f64) -> Vec<f64> {
    let slack = 0.05e-3;
    let mut densities = Vec::new();
    let mut d = start;
    while d <= end + slack {
        densities.push(d);
        d *= factor;
    }
    densities
}

/// The standard 17-step sweep from 0.5e-3 to 9.2e-3 nodes per square meter.
pub fn standard_densities() -> Vec<f64> {
    density_progression(0.5e-3, 1.2, 9.2e-3)
}

/// Full experiment description. All randomness derives from `seed`.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub densities: Vec<f64>,
    pub networks_per_density: usize,
    pub routes_per_network: usize,
    pub protocols: Vec<Protocol>,
    pub weight_model: WeightModel,
    pub mask: Option<Mask>,
    pub seed: u64,
    /// Per-network regeneration attempts before the density row is flagged.
    pub retry_budget: u32,
    pub width: f64,
    pub height: f64,
    pub radio_range: f64,
    pub acceptance_fraction: f64,
    pub policy: TerminationPolicy,
}

impl ExperimentConfig {
    /// Desk scale: 50 networks x 200 routes per density, all protocols,
    /// energy weights, the standard density sweep.
    pub fn desk(seed: u64) -> ExperimentConfig {
        ExperimentConfig {
            densities: standard_densities(),
            networks_per_density: 50,
            routes_per_network: 200,
            protocols: Protocol::ALL.to_vec(),
            weight_model: WeightModel::energy_default(),
            mask: None,
            seed,
            // At the sparsest standard density the giant component clears the
            // acceptance fraction only a few percent of the time, so a healthy
            // budget is needed; rejected draws are cheap.
            retry_budget: 2000,
            width: 1000.0,
            height: 1000.0,
            radio_range: 50.0,
            acceptance_fraction: 2.0 / 3.0,
            policy: TerminationPolicy::SplitToSingletons,
        }
    }

    /// Continuous-integration scale: 5 networks x 50 routes per density.
    pub fn ci(seed: u64) -> ExperimentConfig {
        ExperimentConfig { networks_per_density: 5, routes_per_network: 50, ..Self::desk(seed) }
    }

    fn generation(&self, density: f64, seed: u64) -> GenerationConfig {
        GenerationConfig {
            density,
            width: self.width,
            height: self.height,
            radio_range: self.radio_range,
            mask: self.mask.clone(),
            acceptance_fraction: self.acceptance_fraction,
            seed,
        }
    }
}

/// Aggregated results for one density.
#[derive(Debug, Clone)]
pub struct DensityRow {
    pub density: f64,
    pub networks: u32,
    pub routes: u64,
    /// Mean accepted-network size (largest connected component).
    pub mean_nodes: f64,
    /// Bipartition depth (longest address in the network), averaged over
    /// networks; present when a hierarchy was built.
    pub address_len: Option<f64>,
    /// `ceil(log2(mean_nodes))`.
    pub id_bits: u32,
    /// Overhead percent per protocol, in config order.
    pub overheads: Vec<(Protocol, f64)>,
    /// Percent of routes with at least one dead end under the
    /// virtual-coordinate greedy (independent of the recovery variant).
    pub gamma_lmr: Option<f64>,
    /// Same for the physical-coordinate greedy.
    pub gamma_geo: Option<f64>,
}

/// Sweep results plus any densities whose retry budget ran out.
#[derive(Debug, Clone, Default)]
pub struct ResultsTable {
    pub rows: Vec<DensityRow>,
    /// `(density, error message)` for flagged rows.
    pub failures: Vec<(f64, String)>,
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.2}")).unwrap_or_default()
}

impl ResultsTable {
    /// CSV with one line per `(density, protocol)` pair. Numbers use two
    /// decimals; the delta column is the density in nodes per 1000 square
    /// meters with four decimals. Flagged densities are omitted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("delta,protocol,overhead_pct,n,alpha_len,id_len,gamma_lmr,gamma_geo\n");
        for row in &self.rows {
            for &(protocol, oh) in &row.overheads {
                out.push_str(&format!(
                    "{:.4},{},{:.2},{:.2},{},{},{},{}\n",
                    row.density * 1e3,
                    protocol.label(),
                    oh,
                    row.mean_nodes,
                    fmt_opt(row.address_len),
                    row.id_bits,
                    fmt_opt(row.gamma_lmr),
                    fmt_opt(row.gamma_geo),
                ));
            }
        }
        out
    }

    /// Two markdown tables: overhead per protocol, then network statistics.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let protocols: Vec<Protocol> = self
            .rows
            .first()
            .map(|r| r.overheads.iter().map(|&(p, _)| p).collect())
            .unwrap_or_default();

        out.push_str("### Overhead over shortest paths (%)\n\n");
        out.push_str("| delta |");
        for p in &protocols {
            out.push_str(&format!(" {} |", p.column()));
        }
        out.push('\n');
        out.push_str("|------:|");
        for _ in &protocols {
            out.push_str("------:|");
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!("| {:.1} |", row.density * 1e3));
            for &(_, oh) in &row.overheads {
                out.push_str(&format!(" {oh:.2} |"));
            }
            out.push('\n');
        }

        out.push_str("\n### Network statistics\n\n");
        out.push_str("| delta | n | alpha_len | id_len | gamma_lmr | gamma_geo |\n");
        out.push_str("|------:|--:|----------:|-------:|----------:|----------:|\n");
        for row in &self.rows {
            let dash = |s: String| if s.is_empty() { "-".to_string() } else { s };
            out.push_str(&format!(
                "| {:.1} | {:.2} | {} | {} | {} | {} |\n",
                row.density * 1e3,
                row.mean_nodes,
                dash(fmt_opt(row.address_len)),
                row.id_bits,
                dash(fmt_opt(row.gamma_lmr)),
                dash(fmt_opt(row.gamma_geo)),
            ));
        }

        if !self.failures.is_empty() {
            out.push_str("\n### Flagged densities\n\n");
            for (d, msg) in &self.failures {
                out.push_str(&format!("- delta {:.4}: {msg}\n", d * 1e3));
            }
        }
        out
    }
}

/// Routes `protocol` from `source` to `target` given whichever shared
/// dependencies it needs.
pub fn route_protocol(
    net: &Network,
    weights: &Weights,
    protocol: Protocol,
    structure: Option<&HbrStructure>,
    coords: Option<&[VirtualCoordinate]>,
    oracle: &SpOracle,
    source: u32,
    target: u32,
) -> Result<RouteTrace, RouteError> {
    match (protocol.greedy_mode(), protocol.recovery()) {
        (None, _) => {
            let s = structure.ok_or(RouteError::MissingDependency("bipartition structure"))?;
            route_hbr(net, weights, s, source, target)
        }
        (Some(mode), Some(recovery)) => {
            let mut router = GreedyRouter::new(net, weights, mode, recovery).with_oracle(oracle);
            if let Some(c) = coords {
                router = router.with_coords(c);
            }
            if let Some(s) = structure {
                router = router.with_structure(s);
            }
            router.route(source, target)
        }
        (Some(_), None) => unreachable!("greedy protocols always carry a recovery"),
    }
}

struct NetOutcome {
    nodes: usize,
    addr_len: Option<f64>,
    sp_sum: f64,
    protocol_sums: Vec<f64>,
    lmr_dead_routes: Option<u64>,
    geo_dead_routes: Option<u64>,
    routes: u64,
}

fn accepted_network(
    cfg: &ExperimentConfig,
    density: f64,
    density_idx: usize,
    net_idx: usize,
) -> Result<Network, ExperimentError> {
    for attempt in 0..cfg.retry_budget {
        let seed = rng::derive_seed(
            cfg.seed,
            &[STREAM_GENERATE, density_idx as u64, net_idx as u64, attempt as u64],
        );
        match generate_network(&cfg.generation(density, seed)) {
            Ok(net) => return Ok(net),
            Err(NetError::Rejected { .. }) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(ExperimentError::RetryBudget { density, index: net_idx, attempts: cfg.retry_budget as usize })
}

/// Draws the route endpoints for one network: uniform, source distinct from
/// target, identical across weight models and protocol sets.
fn route_pairs(cfg: &ExperimentConfig, density_idx: usize, net_idx: usize, n: usize) -> Vec<(u32, u32)> {
    let mut rng = rng::stream(cfg.seed, &[STREAM_ROUTES, density_idx as u64, net_idx as u64]);
    (0..cfg.routes_per_network)
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

fn run_network(
    cfg: &ExperimentConfig,
    density: f64,
    density_idx: usize,
    net_idx: usize,
) -> Result<NetOutcome, ExperimentError> {
    let net = accepted_network(cfg, density, density_idx, net_idx)?;
    let weights = Weights::build(&net, &cfg.weight_model);
    let structure = if cfg.protocols.iter().any(|p| p.needs_structure()) {
        Some(build_structure(&net, &weights, cfg.policy)?)
    } else {
        None
    };
    let coords = if cfg.protocols.iter().any(|p| p.needs_coords()) {
        Some(vcap_coordinates(&net, &weights)?.1)
    } else {
        None
    };
    let oracle = SpOracle::new(&net, &weights);

    // One representative per greedy family: whether a route meets a dead end
    // is a property of the greedy metric alone, not the recovery variant.
    let lmr_rep = cfg.protocols.iter().position(|p| p.greedy_mode() == Some(GreedyMode::Lmr));
    let geo_rep = cfg.protocols.iter().position(|p| p.greedy_mode() == Some(GreedyMode::Geo));

    let n = net.node_count();
    let mut sp_sum = 0.0;
    let mut protocol_sums = vec![0.0; cfg.protocols.len()];
    let mut lmr_dead = 0u64;
    let mut geo_dead = 0u64;
    for (s, t) in route_pairs(cfg, density_idx, net_idx, n) {
        sp_sum += oracle.distance(s, t);
        for (i, &protocol) in cfg.protocols.iter().enumerate() {
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
            debug_assert!(trace.delivered);
            protocol_sums[i] += trace.total_cost;
            if Some(i) == lmr_rep && trace.dead_end_count() > 0 {
                lmr_dead += 1;
            }
            if Some(i) == geo_rep && trace.dead_end_count() > 0 {
                geo_dead += 1;
            }
        }
    }
    Ok(NetOutcome {
        nodes: n,
        addr_len: structure.as_ref().map(|s| s.max_address_len() as f64),
        sp_sum,
        protocol_sums,
        lmr_dead_routes: lmr_rep.map(|_| lmr_dead),
        geo_dead_routes: geo_rep.map(|_| geo_dead),
        routes: cfg.routes_per_network as u64,
    })
}

fn fold_outcomes(
    cfg: &ExperimentConfig,
    density: f64,
    outcomes: Vec<NetOutcome>,
) -> Result<DensityRow, ExperimentError> {
    let networks = outcomes.len() as u32;
    let routes: u64 = outcomes.iter().map(|o| o.routes).sum();
    let mean_nodes = outcomes.iter().map(|o| o.nodes as f64).sum::<f64>() / networks as f64;
    let address_len = outcomes
        .iter()
        .map(|o| o.addr_len)
        .collect::<Option<Vec<f64>>>()
        .map(|v| v.iter().sum::<f64>() / v.len() as f64);
    let sp_total: f64 = outcomes.iter().map(|o| o.sp_sum).sum();
    let mut overheads = Vec::with_capacity(cfg.protocols.len());
    for (i, &protocol) in cfg.protocols.iter().enumerate() {
        let total: f64 = outcomes.iter().map(|o| o.protocol_sums[i]).sum();
        overheads.push((protocol, overhead(total, sp_total)?));
    }
    let gamma = |per_net: Vec<Option<u64>>| -> Option<f64> {
        per_net
            .into_iter()
            .collect::<Option<Vec<u64>>>()
            .map(|v| 100.0 * v.iter().sum::<u64>() as f64 / routes as f64)
    };
    Ok(DensityRow {
        density,
        networks,
        routes,
        mean_nodes,
        address_len,
        id_bits: if mean_nodes >= 1.0 { mean_nodes.log2().ceil() as u32 } else { 0 },
        overheads,
        gamma_lmr: gamma(outcomes.iter().map(|o| o.lmr_dead_routes).collect()),
        gamma_geo: gamma(outcomes.iter().map(|o| o.geo_dead_routes).collect()),
    })
}

/// Runs one density: networks in parallel, folded in index order.
pub fn run_density(cfg: &ExperimentConfig, density: f64, density_idx: usize) -> Result<DensityRow, ExperimentError> {
    let outcomes: Result<Vec<NetOutcome>, ExperimentError> = (0..cfg.networks_per_density)
        .into_par_iter()
        .map(|net_idx| run_network(cfg, density, density_idx, net_idx))
        .collect();
    fold_outcomes(cfg, density, outcomes?)
}

/// Runs the full sweep. A density that exhausts its retry budget is recorded
/// under [`ResultsTable::failures`] instead of aborting the sweep; any other
/// error aborts.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ResultsTable, ExperimentError> {
    let mut table = ResultsTable::default();
    for (density_idx, &density) in cfg.densities.iter().enumerate() {
        match run_density(cfg, density, density_idx) {
            Ok(row) => table.rows.push(row),
            Err(e @ ExperimentError::RetryBudget { .. }) => table.failures.push((density, e.to_string())),
            Err(e) => return Err(e),
        }
    }
    Ok(table)
}

/// One density row of the coarsening study: stand-alone hierarchy-routing
/// overhead under each weight model, on identical networks and route pairs.
#[derive(Debug, Clone)]
pub struct CoarseningRow {
    pub density: f64,
    /// `(model label, overhead percent)` in the order given to the study.
    pub overheads: Vec<(String, f64)>,
}

/// Hierarchy-routing overhead per weight model. Each model only drives the
/// construction — landmark election, bit assignment and table entries — while
/// every route is paid for in the experiment's own weights and compared
/// against the shortest path under those weights. Quantizing the distances a
/// node stores during setup therefore shows up as extra spent energy.
pub fn coarsening_study(
    cfg: &ExperimentConfig,
    models: &[WeightModel],
) -> Result<Vec<CoarseningRow>, ExperimentError> {
    let mut rows = Vec::with_capacity(cfg.densities.len());
    for (density_idx, &density) in cfg.densities.iter().enumerate() {
        // Per network and model: (hierarchy cost sum, shortest-path cost sum).
        let sums: Result<Vec<Vec<(f64, f64)>>, ExperimentError> = (0..cfg.networks_per_density)
            .into_par_iter()
            .map(|net_idx| {
                let net = accepted_network(cfg, density, density_idx, net_idx)?;
                let pairs = route_pairs(cfg, density_idx, net_idx, net.node_count());
                let paid = Weights::build(&net, &cfg.weight_model);
                let oracle = SpOracle::new(&net, &paid);
                let sp: f64 = pairs.iter().map(|&(s, t)| oracle.distance(s, t)).sum();
                models
                    .iter()
                    .map(|model| {
                        let building = Weights::build(&net, model);
                        let structure = build_structure(&net, &building, cfg.policy)?;
                        let mut alg = 0.0;
                        for &(s, t) in &pairs {
                            alg += route_hbr(&net, &paid, &structure, s, t)?.total_cost;
                        }
                        Ok((alg, sp))
                    })
                    .collect()
            })
            .collect();
        let sums = sums?;
        let mut overheads = Vec::with_capacity(models.len());
        for (mi, model) in models.iter().enumerate() {
            let alg: f64 = sums.iter().map(|per_model| per_model[mi].0).sum();
            let sp: f64 = sums.iter().map(|per_model| per_model[mi].1).sum();
            overheads.push((model.label(), overhead(alg, sp)?));
        }
        rows.push(CoarseningRow { density, overheads });
    }
    Ok(rows)
}

/// The default model list for the coarsening study: full energy weights,
/// then 16, 8, 4, 2 and 1 quantization levels.
pub fn coarsening_models() -> Vec<WeightModel> {
    vec![
        WeightModel::energy_default(),
        WeightModel::Coarsened { k: 16 },
        WeightModel::Coarsened { k: 8 },
        WeightModel::Coarsened { k: 4 },
        WeightModel::Coarsened { k: 2 },
        WeightModel::Coarsened { k: 1 },
    ]
}

/// CSV for the coarsening study: `delta,model,overhead_pct`.
pub fn coarsening_csv(rows: &[CoarseningRow]) -> String {
    let mut out = String::from("delta,model,overhead_pct\n");
    for row in rows {
        for (label, oh) in &row.overheads {
            out.push_str(&format!("{:.4},{label},{oh:.2}\n", row.density * 1e3));
        }
    }
    out
}

/// Markdown table for the coarsening study, one model per column.
pub fn coarsening_markdown(rows: &[CoarseningRow]) -> String {
    let mut out = String::from("### Hierarchy-routing overhead by weight model (%)\n\n");
    let labels: Vec<&str> = rows
        .first()
        .map(|r| r.overheads.iter().map(|(l, _)| l.as_str()).collect())
        .unwrap_or_default();
    out.push_str("| delta |");
    for l in &labels {
        out.push_str(&format!(" {l} |"));
    }
    out.push('\n');
    out.push_str("|------:|");
    for _ in &labels {
        out.push_str("------:|");
    }
    out.push('\n');
    for row in rows {
        out.push_str(&format!("| {:.1} |", row.density * 1e3));
        for (_, oh) in &row.overheads {
            out.push_str(&format!(" {oh:.2} |"));
        }
        out.push('\n');
    }
    out
}

/// Construction-flood transmissions for one generated network.
#[derive(Debug, Clone)]
pub struct FloodStudy {
    pub nodes: usize,
    pub edges: usize,
    pub stats: FloodStats,
}

/// Generates one accepted network at `density` and measures the flood
/// transmissions of the full hierarchy construction, level by level.
pub fn flood_study(cfg: &ExperimentConfig, density: f64) -> Result<FloodStudy, ExperimentError> {
    let net = accepted_network(cfg, density, 0, 0)?;
    let weights = Weights::build(&net, &cfg.weight_model);
    let (_, stats) = build_hbr(&net, &weights, cfg.policy)?;
    Ok(FloodStudy { nodes: net.node_count(), edges: net.edge_count(), stats })
}

/// One routed pair, flattened for CSV output.
#[derive(Debug, Clone)]
pub struct RouteRecord {
    pub src: u32,
    pub dst: u32,
    pub protocol: Protocol,
    pub cost: f64,
    pub hops: usize,
    pub dead_ends: usize,
    pub delivered: bool,
}

impl RouteRecord {
    pub fn from_trace(src: u32, dst: u32, protocol: Protocol, trace: &RouteTrace) -> RouteRecord {
        RouteRecord {
            src,
            dst,
            protocol,
            cost: trace.total_cost,
            hops: trace.hops(),
            dead_ends: trace.dead_end_count(),
            delivered: trace.delivered,
        }
    }
}

/// CSV rows `src,dst,protocol,recovery,cost,hops,dead_ends,delivered`. The
/// protocol column holds the greedy family (`hbr`, `lmr`, `geo`); recovery
/// is empty for stand-alone hierarchy routing.
pub fn write_route_records<W: Write>(mut w: W, records: &[RouteRecord]) -> std::io::Result<()> {
    writeln!(w, "src,dst,protocol,recovery,cost,hops,dead_ends,delivered")?;
    for r in records {
        let family = match r.protocol.greedy_mode() {
            None => "hbr",
            Some(GreedyMode::Lmr) => "lmr",
            Some(GreedyMode::Geo) => "geo",
        };
        let recovery = match r.protocol.recovery() {
            None => "",
            Some(Recovery::ShortestPath) => "sp",
            Some(Recovery::Hbr) => "hbr",
        };
        writeln!(
            w,
            "{},{},{},{},{:.2},{},{},{}",
            r.src, r.dst, family, recovery, r.cost, r.hops, r.dead_ends, r.delivered
        )?;
    }
    Ok(())
}
