//! Network model: node positions, unit-disk adjacency, random generation.
//!
//! A network is an undirected graph over nodes with planar positions. Edges
//! connect every pair of nodes within radio range (optionally thinned by an
//! obstacle mask), and each adjacency entry caches the Euclidean edge length.
//! Random generation places `round(density * area)` nodes uniformly, discards
//! candidates landing on mask holes, and accepts the largest connected
//! component when it covers at least an acceptance fraction of the placed
//! nodes; otherwise the draw is rejected and the caller retries with a fresh
//! derived seed.

mod io;
mod mask;

pub use mask::Mask;

use crate::rng::{self, STREAM_GENERATE};
use crate::NetError;

/// A point in the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub fn new(x: f64, y: f64) -> Self {
        Position { x, y }
    }
}

/// Euclidean distance between two positions.
pub fn euclidean_distance(a: Position, b: Position) -> f64 {
    ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt()
}

/// Generation parameters of a network, kept for the serialization header.
#[derive(Debug, Clone, PartialEq)]
pub struct GenMeta {
    pub seed: u64,
    pub density: f64,
    pub acceptance_fraction: f64,
    pub mask_name: Option<String>,
    pub edge_pruning: bool,
    /// Nodes placed before component filtering.
    pub placed: usize,
}

/// Parameters for random network generation.
#[derive(Debug, Clone)]
pub struct GenerationConfig {
    /// Node density in nodes per square meter.
    pub density: f64,
    pub width: f64,
    pub height: f64,
    pub radio_range: f64,
    /// Obstacle mask; candidates on holes are discarded without resampling.
    pub mask: Option<Mask>,
    /// Minimum fraction of placed nodes the largest component must cover.
    pub acceptance_fraction: f64,
    pub seed: u64,
}

impl GenerationConfig {
    /// Standard 1000 m x 1000 m field with 50 m radio range, acceptance 2/3.
    pub fn standard(density: f64, seed: u64) -> Self {
        GenerationConfig {
            density,
            width: 1000.0,
            height: 1000.0,
            radio_range: 50.0,
            mask: None,
            acceptance_fraction: 2.0 / 3.0,
            seed,
        }
    }
}

/// Undirected geometric network with cached edge lengths.
#[derive(Debug, Clone)]
pub struct Network {
    width: f64,
    height: f64,
    radio_range: f64,
    positions: Vec<Position>,
    /// Per node: (neighbor id, edge length), sorted by neighbor id.
    adj: Vec<Vec<(u32, f64)>>,
    edge_count: usize,
    meta: Option<GenMeta>,
}

impl Network {
    /// Builds a network connecting every pair of positions within radio range.
    pub fn from_positions(positions: Vec<Position>, width: f64, height: f64, radio_range: f64) -> Network {
        let adj = build_adjacency(&positions, radio_range, None, width, height);
        Network::assemble(positions, adj, width, height, radio_range, None)
    }

    /// Builds a network from an explicit edge list (fixture graphs).
    ///
    /// Edge lengths are computed from positions; the radio-range invariant is
    /// not enforced here, so fixtures may use arbitrary topologies.
    pub fn from_edges(
        positions: Vec<Position>,
        edges: &[(u32, u32)],
        width: f64,
        height: f64,
        radio_range: f64,
    ) -> Network {
        let n = positions.len();
        let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            assert!(u != v, "self loop");
            assert!((u as usize) < n && (v as usize) < n, "edge endpoint out of range");
            let len = euclidean_distance(positions[u as usize], positions[v as usize]);
            adj[u as usize].push((v, len));
            adj[v as usize].push((u, len));
        }
        for list in &mut adj {
            list.sort_by_key(|&(v, _)| v);
            list.windows(2).for_each(|w| assert!(w[0].0 != w[1].0, "duplicate edge"));
        }
        Network::assemble(positions, adj, width, height, radio_range, None)
    }

    fn assemble(
        positions: Vec<Position>,
        adj: Vec<Vec<(u32, f64)>>,
        width: f64,
        height: f64,
        radio_range: f64,
        meta: Option<GenMeta>,
    ) -> Network {
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Network { width, height, radio_range, positions, adj, edge_count, meta }
    }

    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn radio_range(&self) -> f64 {
        self.radio_range
    }

    pub fn position(&self, u: u32) -> Position {
        self.positions[u as usize]
    }

    /// Adjacency list of `u`: (neighbor, edge length), sorted by neighbor id.
    pub fn neighbors(&self, u: u32) -> &[(u32, f64)] {
        &self.adj[u as usize]
    }

    pub fn degree(&self, u: u32) -> usize {
        self.adj[u as usize].len()
    }

    /// Index of `v` in `u`'s adjacency list, if adjacent.
    pub fn neighbor_slot(&self, u: u32, v: u32) -> Option<usize> {
        self.adj[u as usize].binary_search_by_key(&v, |&(x, _)| x).ok()
    }

    pub fn is_edge(&self, u: u32, v: u32) -> bool {
        self.neighbor_slot(u, v).is_some()
    }

    /// Cached Euclidean length of edge (u, v), if present.
    pub fn edge_length(&self, u: u32, v: u32) -> Option<f64> {
        self.neighbor_slot(u, v).map(|s| self.adj[u as usize][s].1)
    }

    /// Weight of edge (u, v) under a model; error if not adjacent.
    pub fn edge_weight(&self, u: u32, v: u32, model: &crate::WeightModel) -> Result<f64, NetError> {
        match self.edge_length(u, v) {
            Some(len) => Ok(model.edge_weight(len, self.radio_range)),
            None => Err(NetError::NotAdjacent { u, v }),
        }
    }

    /// All edges as (u, v) pairs with u < v, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter().filter_map(move |&(v, _)| if (u as u32) < v { Some((u as u32, v)) } else { None })
        })
    }

    pub fn meta(&self) -> Option<&GenMeta> {
        self.meta.as_ref()
    }

    /// True if every node is reachable from node 0 (or the network is empty).
    pub fn is_connected(&self) -> bool {
        if self.positions.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.positions.len()];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &(v, _) in self.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.positions.len()
    }
}

/// Grid-bucketed range query: all pairs within `radio_range` become edges,
/// optionally dropping edges whose segment crosses a mask hole.
fn build_adjacency(
    positions: &[Position],
    radio_range: f64,
    pruning_mask: Option<(&Mask, f64, f64)>,
    width: f64,
    height: f64,
) -> Vec<Vec<(u32, f64)>> {
    let n = positions.len();
    let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
    if n == 0 {
        return adj;
    }
    let cell = radio_range.max(1e-9);
    let cols = (width / cell).ceil().max(1.0) as i64;
    let rows = (height / cell).ceil().max(1.0) as i64;
    let index = |p: Position| -> (i64, i64) {
        (
            ((p.x / cell) as i64).clamp(0, cols - 1),
            ((p.y / cell) as i64).clamp(0, rows - 1),
        )
    };
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); (cols * rows) as usize];
    for (i, &p) in positions.iter().enumerate() {
        let (cx, cy) = index(p);
        buckets[(cy * cols + cx) as usize].push(i as u32);
    }
    for u in 0..n as u32 {
        let p = positions[u as usize];
        let (cx, cy) = index(p);
        for dy in -1..=1 {
            for dx in -1..=1 {
                let (bx, by) = (cx + dx, cy + dy);
                if bx < 0 || by < 0 || bx >= cols || by >= rows {
                    continue;
                }
                for &v in &buckets[(by * cols + bx) as usize] {
                    if v <= u {
                        continue;
                    }
                    let q = positions[v as usize];
                    let len = euclidean_distance(p, q);
                    if len <= radio_range {
                        if let Some((mask, w, h)) = pruning_mask {
                            if mask.segment_crosses_hole(p, q, w, h) {
                                continue;
                            }
                        }
                        adj[u as usize].push((v, len));
                        adj[v as usize].push((u, len));
                    }
                }
            }
        }
    }
    for list in &mut adj {
        list.sort_by_key(|&(v, _)| v);
    }
    adj
}

/// Connected components; returns (component id per node, component sizes).
fn components(adj: &[Vec<(u32, f64)>]) -> (Vec<u32>, Vec<usize>) {
    let n = adj.len();
    let mut comp = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if comp[start] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        let mut size = 0usize;
        comp[start] = id;
        stack.push(start as u32);
        while let Some(u) = stack.pop() {
            size += 1;
            for &(v, _) in &adj[u as usize] {
                if comp[v as usize] == u32::MAX {
                    comp[v as usize] = id;
                    stack.push(v);
                }
            }
        }
        sizes.push(size);
    }
    (comp, sizes)
}

/// Placement stage of generation, exposed for the subgraph property test.
fn place_and_link(cfg: &GenerationConfig) -> (Vec<Position>, Vec<Vec<(u32, f64)>>) {
    let area = cfg.width * cfg.height;
    let n_target = (cfg.density * area).round() as usize;
    let mut rng = rng::stream(cfg.seed, &[STREAM_GENERATE]);
    let mut positions = Vec::with_capacity(n_target);
    for _ in 0..n_target {
        let x = rng::next_f64(&mut rng) * cfg.width;
        let y = rng::next_f64(&mut rng) * cfg.height;
        if let Some(mask) = &cfg.mask {
            if mask.is_hole_at(x, y, cfg.width, cfg.height) {
                continue; // discarded, not resampled
            }
        }
        positions.push(Position::new(x, y));
    }
    let pruning = cfg
        .mask
        .as_ref()
        .filter(|m| m.edge_pruning())
        .map(|m| (m, cfg.width, cfg.height));
    let adj = build_adjacency(&positions, cfg.radio_range, pruning, cfg.width, cfg.height);
    (positions, adj)
}

/// Generates a random network; deterministic in (config, seed).
///
/// Returns `NetError::Rejected` when the largest connected component is below
/// the acceptance fraction (the caller retries with a derived seed) and
/// `NetError::Degenerate` when the configuration expects zero nodes.
pub fn generate_network(cfg: &GenerationConfig) -> Result<Network, NetError> {
    let area = cfg.width * cfg.height;
    if (cfg.density * area).round() as usize == 0 {
        return Err(NetError::Degenerate);
    }
    let (positions, adj) = place_and_link(cfg);
    let placed = positions.len();
    if placed == 0 {
        return Err(NetError::Rejected { placed: 0, largest: 0 });
    }

    let (comp, sizes) = components(&adj);
    // Largest component; ties resolved to the lowest component id, i.e. the
    // one containing the smallest node id.
    let best = sizes
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(id, _)| id as u32)
        .expect("placed > 0 so at least one component");
    let largest = sizes[best as usize];
    if (largest as f64) < cfg.acceptance_fraction * placed as f64 {
        return Err(NetError::Rejected { placed, largest });
    }

    // Compact node ids, preserving draw order.
    let mut remap = vec![u32::MAX; placed];
    let mut kept_positions = Vec::with_capacity(largest);
    for (old, &c) in comp.iter().enumerate() {
        if c == best {
            remap[old] = kept_positions.len() as u32;
            kept_positions.push(positions[old]);
        }
    }
    let mut kept_adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); largest];
    for (old, list) in adj.iter().enumerate() {
        if comp[old] != best {
            continue;
        }
        let nu = remap[old];
        kept_adj[nu as usize] = list.iter().map(|&(v, len)| (remap[v as usize], len)).collect();
        kept_adj[nu as usize].sort_by_key(|&(v, _)| v);
    }

    let meta = GenMeta {
        seed: cfg.seed,
        density: cfg.density,
        acceptance_fraction: cfg.acceptance_fraction,
        mask_name: cfg.mask.as_ref().map(|m| m.name().to_string()),
        edge_pruning: cfg.mask.as_ref().map(|m| m.edge_pruning()).unwrap_or(false),
        placed,
    };
    Ok(Network::assemble(kept_positions, kept_adj, cfg.width, cfg.height, cfg.radio_range, Some(meta)))
}
