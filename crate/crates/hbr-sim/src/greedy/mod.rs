//! Greedy cost-over-progress forwarding with dead-end recovery.
//!
//! A packet at `u` bound for `t` considers every neighbor `v` that is
//! strictly closer to `t` under the routing metric and forwards to the one
//! minimizing `weight(u, v) / (metric(u) - metric(v))` — the cheapest edge
//! per unit of progress. Two metrics are provided: physical Euclidean
//! distance ([`GreedyMode::Geo`]) and Euclidean distance between virtual
//! coordinates built from weighted distances to four elected landmarks
//! ([`GreedyMode::Lmr`]).
//!
//! When no neighbor makes progress the packet is at a dead end. It records
//! the metric value there and switches to a recovery route — either the true
//! shortest path or the bipartition-hierarchy route — and resumes greedy
//! forwarding at the first node whose metric is strictly below the recorded
//! value. Successive dead ends therefore carry strictly decreasing metrics,
//! which bounds the number of recovery phases.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::hbr::{hbr_next_hop, sssp, HbrStructure, SsspResult, NO_PARENT};
use crate::net::{euclidean_distance, Network};
use crate::trace::{HopMode, RouteTrace};
use crate::weights::Weights;
use crate::{BuildError, RouteError};

/// Routing metric used for greedy progress.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GreedyMode {
    /// Physical coordinates: metric = Euclidean distance to the target.
    Geo,
    /// Virtual coordinates: metric = Euclidean distance between
    /// landmark-distance tuples.
    Lmr,
}

/// Route followed while escaping a dead end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recovery {
    /// Follow the exact shortest path toward the target.
    ShortestPath,
    /// Follow the bipartition-hierarchy route toward the target.
    Hbr,
}

/// The four landmark nodes anchoring the virtual coordinate system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VcapLandmarks {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

/// Weighted distances from one node to the four landmarks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VirtualCoordinate {
    pub to_a: f64,
    pub to_b: f64,
    pub to_c: f64,
    pub to_d: f64,
}

impl VirtualCoordinate {
    pub fn as_array(&self) -> [f64; 4] {
        [self.to_a, self.to_b, self.to_c, self.to_d]
    }
}

/// Euclidean distance between two virtual coordinates.
pub fn lmr_distance(p: &VirtualCoordinate, q: &VirtualCoordinate) -> f64 {
    let a = p.to_a - q.to_a;
    let b = p.to_b - q.to_b;
    let c = p.to_c - q.to_c;
    let d = p.to_d - q.to_d;
    (a * a + b * b + c * c + d * d).sqrt()
}

fn argmax_tie_high(n: usize, f: impl Fn(u32) -> f64) -> u32 {
    let mut best = (f64::NEG_INFINITY, 0u32);
    for u in 0..n as u32 {
        let x = f(u);
        if x > best.0 || (x == best.0 && u > best.1) {
            best = (x, u);
        }
    }
    best.1
}

/// Elects the four virtual-coordinate landmarks (all ties go to the larger
/// node id):
///
/// * `a`: farthest from the minimal-id node,
/// * `b`: farthest from `a`,
/// * `c`: maximizes `dist_a + dist_b - 2 * |dist_a - dist_b|` — far from both
///   while staying near their bisector,
/// * `d`: maximizes `dist_c - |dist_a - dist_b|` — far from `c`, again near
///   the bisector.
pub fn select_vcap_landmarks(net: &Network, weights: &Weights) -> Result<VcapLandmarks, BuildError> {
    Ok(vcap_coordinates(net, weights)?.0)
}

/// Elects the landmarks and computes every node's virtual coordinate.
pub fn vcap_coordinates(
    net: &Network,
    weights: &Weights,
) -> Result<(VcapLandmarks, Vec<VirtualCoordinate>), BuildError> {
    let n = net.node_count();
    if n == 0 {
        return Err(BuildError::Empty);
    }
    let from_anchor = sssp(net, weights, 0, None);
    if let Some(u) = (0..n as u32).find(|&u| from_anchor.dist[u as usize].is_infinite()) {
        return Err(BuildError::Disconnected(u));
    }
    let a = argmax_tie_high(n, |u| from_anchor.dist[u as usize]);
    let da = sssp(net, weights, a, None).dist;
    let b = argmax_tie_high(n, |u| da[u as usize]);
    let db = sssp(net, weights, b, None).dist;
    let c = argmax_tie_high(n, |u| {
        let (x, y) = (da[u as usize], db[u as usize]);
        x + y - 2.0 * (x - y).abs()
    });
    let dc = sssp(net, weights, c, None).dist;
    let d = argmax_tie_high(n, |u| {
        let (x, y) = (da[u as usize], db[u as usize]);
        dc[u as usize] - (x - y).abs()
    });
    let dd = sssp(net, weights, d, None).dist;
    let coords = (0..n)
        .map(|u| VirtualCoordinate { to_a: da[u], to_b: db[u], to_c: dc[u], to_d: dd[u] })
        .collect();
    Ok((VcapLandmarks { a, b, c, d }, coords))
}

fn cop_next_hop(net: &Network, weights: &Weights, current: u32, metric: &dyn Fn(u32) -> f64) -> Option<u32> {
    let mu = metric(current);
    let mut best: Option<(f64, u32)> = None;
    for (slot, &(v, _)) in net.neighbors(current).iter().enumerate() {
        let mv = metric(v);
        if mv < mu {
            let ratio = weights.at(current, slot) / (mu - mv);
            // Strict '<' keeps the smallest id on ties (neighbors ascend).
            if best.map_or(true, |(br, _)| ratio < br) {
                best = Some((ratio, v));
            }
        }
    }
    best.map(|(_, v)| v)
}

/// Greedy next hop under the physical-coordinate metric, or `None` at a dead
/// end.
pub fn geo_next_hop(net: &Network, weights: &Weights, current: u32, target: u32) -> Option<u32> {
    debug_assert_ne!(current, target);
    let t = net.position(target);
    geo_next_hop_at(net, weights, current, t.x, t.y)
}

/// Greedy next hop toward an arbitrary physical location (the target need
/// not be a node).
pub fn geo_next_hop_at(net: &Network, weights: &Weights, current: u32, x: f64, y: f64) -> Option<u32> {
    let goal = crate::net::Position::new(x, y);
    let metric = |u: u32| euclidean_distance(net.position(u), goal);
    cop_next_hop(net, weights, current, &metric)
}

/// Greedy next hop under the virtual-coordinate metric, or `None` at a dead
/// end.
pub fn lmr_next_hop(
    net: &Network,
    weights: &Weights,
    coords: &[VirtualCoordinate],
    current: u32,
    target: u32,
) -> Option<u32> {
    debug_assert_ne!(current, target);
    let metric = |u: u32| lmr_distance(&coords[u as usize], &coords[target as usize]);
    cop_next_hop(net, weights, current, &metric)
}

/// Caches one shortest-path tree per target so that repeated queries toward
/// the same destination cost a single search.
pub struct SpOracle<'a> {
    net: &'a Network,
    weights: &'a Weights,
    cache: RefCell<HashMap<u32, Rc<SsspResult>>>,
}

impl<'a> SpOracle<'a> {
    pub fn new(net: &'a Network, weights: &'a Weights) -> SpOracle<'a> {
        SpOracle { net, weights, cache: RefCell::new(HashMap::new()) }
    }

    /// Shortest-path tree rooted at `target`; parents point toward the root.
    pub fn toward(&self, target: u32) -> Rc<SsspResult> {
        if let Some(r) = self.cache.borrow().get(&target) {
            return Rc::clone(r);
        }
        let r = Rc::new(sssp(self.net, self.weights, target, None));
        self.cache.borrow_mut().insert(target, Rc::clone(&r));
        r
    }

    /// Cost of the optimal route.
    pub fn distance(&self, u: u32, target: u32) -> f64 {
        self.toward(target).dist[u as usize]
    }

    /// Next hop on the shortest path, `None` at the target or when the
    /// target is unreachable.
    pub fn next_hop(&self, current: u32, target: u32) -> Option<u32> {
        if current == target {
            return None;
        }
        let p = self.toward(target).parent[current as usize];
        (p != NO_PARENT).then_some(p)
    }
}

/// Follows the shortest path from `source` to `target`.
pub fn shortest_path_route(
    net: &Network,
    weights: &Weights,
    sp: &SpOracle,
    source: u32,
    target: u32,
) -> Result<RouteTrace, RouteError> {
    let n = net.node_count() as u64;
    if source as u64 >= n {
        return Err(RouteError::UnknownNode(source));
    }
    if target as u64 >= n {
        return Err(RouteError::UnknownNode(target));
    }
    let mut trace = RouteTrace::start(source);
    let mut current = source;
    let mut hops = 0u64;
    while current != target {
        let next = sp
            .next_hop(current, target)
            .ok_or(RouteError::Unreachable { from: source, to: target })?;
        let slot = net.neighbor_slot(current, next).expect("tree edges are edges");
        trace.record_hop(next, weights.at(current, slot), HopMode::Greedy);
        current = next;
        hops += 1;
        if hops > n + 2 {
            return Err(RouteError::LoopGuard { from: source, to: target, hops });
        }
    }
    trace.delivered = true;
    Ok(trace)
}

/// Greedy router with pluggable metric and recovery strategy.
///
/// Dependencies are attached with the `with_*` builders; routing reports a
/// [`RouteError::MissingDependency`] if a required one is absent.
pub struct GreedyRouter<'a> {
    net: &'a Network,
    weights: &'a Weights,
    mode: GreedyMode,
    recovery: Recovery,
    coords: Option<&'a [VirtualCoordinate]>,
    structure: Option<&'a HbrStructure>,
    sp: Option<&'a SpOracle<'a>>,
}

impl<'a> GreedyRouter<'a> {
    pub fn new(net: &'a Network, weights: &'a Weights, mode: GreedyMode, recovery: Recovery) -> GreedyRouter<'a> {
        GreedyRouter { net, weights, mode, recovery, coords: None, structure: None, sp: None }
    }

    /// Virtual coordinates; required for [`GreedyMode::Lmr`].
    pub fn with_coords(mut self, coords: &'a [VirtualCoordinate]) -> Self {
        self.coords = Some(coords);
        self
    }

    /// Bipartition structure; required for [`Recovery::Hbr`].
    pub fn with_structure(mut self, structure: &'a HbrStructure) -> Self {
        self.structure = Some(structure);
        self
    }

    /// Shortest-path oracle; required for [`Recovery::ShortestPath`].
    pub fn with_oracle(mut self, sp: &'a SpOracle<'a>) -> Self {
        self.sp = Some(sp);
        self
    }

    fn recovery_hop(&self, source: u32, current: u32, target: u32) -> Result<u32, RouteError> {
        match self.recovery {
            Recovery::ShortestPath => {
                let sp = self.sp.ok_or(RouteError::MissingDependency("shortest-path oracle"))?;
                sp.next_hop(current, target)
                    .ok_or(RouteError::Unreachable { from: source, to: target })
            }
            Recovery::Hbr => {
                let s = self
                    .structure
                    .ok_or(RouteError::MissingDependency("bipartition structure"))?;
                Ok(hbr_next_hop(self.net, s, current, target).expect("current != target"))
            }
        }
    }

    /// Routes greedily, escaping dead ends via the configured recovery route
    /// and resuming greedy forwarding at the first node whose metric drops
    /// below the dead end's.
    pub fn route(&self, source: u32, target: u32) -> Result<RouteTrace, RouteError> {
        let n = self.net.node_count() as u64;
        if source as u64 >= n {
            return Err(RouteError::UnknownNode(source));
        }
        if target as u64 >= n {
            return Err(RouteError::UnknownNode(target));
        }
        let metric: Box<dyn Fn(u32) -> f64> = match self.mode {
            GreedyMode::Geo => {
                let t = self.net.position(target);
                let (tx, ty) = (t.x, t.y);
                let net = self.net;
                Box::new(move |u: u32| {
                    let p = net.position(u);
                    let (dx, dy) = (p.x - tx, p.y - ty);
                    (dx * dx + dy * dy).sqrt()
                })
            }
            GreedyMode::Lmr => {
                let coords = self
                    .coords
                    .ok_or(RouteError::MissingDependency("virtual coordinates"))?;
                Box::new(move |u: u32| lmr_distance(&coords[u as usize], &coords[target as usize]))
            }
        };
        let depth = self.structure.map_or(2, |s| s.max_address_len() as u64 + 2);
        let guard = (n + 4) * (depth + 4) * 4;

        let mut trace = RouteTrace::start(source);
        let mut current = source;
        let mut hops = 0u64;
        let mut recovering = false;
        let mut threshold = f64::INFINITY;
        while current != target {
            if recovering {
                let next = self.recovery_hop(source, current, target)?;
                let slot = self
                    .net
                    .neighbor_slot(current, next)
                    .expect("recovery hops are neighbors");
                trace.record_hop(next, self.weights.at(current, slot), HopMode::Recovery);
                current = next;
                if metric(current) < threshold {
                    recovering = false;
                }
            } else {
                match cop_next_hop(self.net, self.weights, current, metric.as_ref()) {
                    Some(next) => {
                        let slot = self
                            .net
                            .neighbor_slot(current, next)
                            .expect("greedy hops are neighbors");
                        trace.record_hop(next, self.weights.at(current, slot), HopMode::Greedy);
                        current = next;
                    }
                    None => {
                        // Dead end: remember its metric; greedy resumes only
                        // strictly below it, so dead-end metrics decrease.
                        trace.dead_ends.push(trace.path.len() - 1);
                        threshold = metric(current);
                        recovering = true;
                        continue;
                    }
                }
            }
            hops += 1;
            if hops > guard {
                return Err(RouteError::LoopGuard { from: source, to: target, hops });
            }
        }
        trace.delivered = true;
        Ok(trace)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hbr::{build_structure, TerminationPolicy};
    use crate::net::{generate_network, GenerationConfig, Network, Position};
    use crate::weights::WeightModel;

    fn energy() -> WeightModel {
        WeightModel::energy_default()
    }

    /// Triangle with the target in optimal-cost range: the cheaper
    /// cost-per-progress neighbor wins even though the other neighbor is
    /// also closer to the target.
    #[test]
    fn geo_prefers_cheapest_progress() {
        let positions = vec![
            Position::new(0.0, 0.0),  // u
            Position::new(20.0, 0.0), // t: cost 800, progress 20 -> 40/m
            Position::new(35.0, 0.0), // v: cost 1625, progress 5 -> 325/m
        ];
        let net = Network::from_positions(positions, 100.0, 100.0, 40.0);
        let w = Weights::build(&net, &energy());
        assert_eq!(geo_next_hop(&net, &w, 0, 1), Some(1));
        let sp = SpOracle::new(&net, &w);
        let r = GreedyRouter::new(&net, &w, GreedyMode::Geo, Recovery::ShortestPath)
            .with_oracle(&sp)
            .route(0, 1)
            .unwrap();
        assert_eq!(r.path, vec![0, 1]);
        assert_eq!(r.total_cost, 800.0);
        assert!(r.dead_ends.is_empty());
    }

    #[test]
    fn geo_dead_end_when_no_neighbor_is_closer() {
        // u's only neighbor sits behind it relative to the target.
        let positions = vec![
            Position::new(0.0, 0.0),   // u
            Position::new(-10.0, 0.0), // w
            Position::new(30.0, 0.0),  // t (out of range)
        ];
        let net = Network::from_edges(positions, &[(0, 1)], 100.0, 100.0, 15.0);
        let w = Weights::build(&net, &energy());
        assert_eq!(geo_next_hop(&net, &w, 0, 2), None);
    }

    #[test]
    fn route_to_self_is_empty() {
        let positions = vec![Position::new(0.0, 0.0), Position::new(10.0, 0.0)];
        let net = Network::from_positions(positions, 100.0, 100.0, 20.0);
        let w = Weights::build(&net, &energy());
        let sp = SpOracle::new(&net, &w);
        let r = GreedyRouter::new(&net, &w, GreedyMode::Geo, Recovery::ShortestPath)
            .with_oracle(&sp)
            .route(1, 1)
            .unwrap();
        assert_eq!(r.path, vec![1]);
        assert_eq!(r.total_cost, 0.0);
        assert!(r.delivered);
    }

    #[test]
    fn greedy_choice_matches_brute_force() {
        let net = generate_network(&GenerationConfig {
            density: 150.0 / (500.0 * 500.0),
            width: 500.0,
            height: 500.0,
            radio_range: 70.0,
            mask: None,
            acceptance_fraction: 0.5,
            seed: 4,
        })
        .unwrap();
        let w = Weights::build(&net, &energy());
        let (_, coords) = vcap_coordinates(&net, &w).unwrap();
        let n = net.node_count() as u32;
        for k in 0..300u32 {
            let u = (k * 131) % n;
            let t = (k * 211 + 7) % n;
            if u == t {
                continue;
            }
            // Independent re-derivation, scanning neighbors in reverse so a
            // tie-break bug would surface.
            let brute = |metric: &dyn Fn(u32) -> f64| -> Option<u32> {
                let mu = metric(u);
                let mut best: Option<(f64, u32)> = None;
                for &(v, len) in net.neighbors(u).iter().rev() {
                    let mv = metric(v);
                    if mv >= mu {
                        continue;
                    }
                    let ratio = (400.0 + len * len) / (mu - mv);
                    match best {
                        None => best = Some((ratio, v)),
                        Some((br, bv)) => {
                            if ratio < br || (ratio == br && v < bv) {
                                best = Some((ratio, v));
                            }
                        }
                    }
                }
                best.map(|(_, v)| v)
            };
            let geo_metric = |x: u32| euclidean_distance(net.position(x), net.position(t));
            assert_eq!(geo_next_hop(&net, &w, u, t), brute(&geo_metric), "geo u={u} t={t}");
            let lmr_metric = |x: u32| lmr_distance(&coords[x as usize], &coords[t as usize]);
            assert_eq!(
                lmr_next_hop(&net, &w, &coords, u, t),
                brute(&lmr_metric),
                "lmr u={u} t={t}"
            );
        }
    }

    #[test]
    fn vcap_on_two_nodes() {
        let positions = vec![Position::new(0.0, 0.0), Position::new(10.0, 0.0)];
        let net = Network::from_positions(positions, 100.0, 100.0, 20.0);
        let w = Weights::build(&net, &energy());
        let (lm, coords) = vcap_coordinates(&net, &w).unwrap();
        // Farthest from node 0 is node 1; farthest from 1 is 0. Both nodes
        // tie on the third and fourth elections, so the larger id wins C and
        // the formula then prefers node 0 for D.
        assert_eq!(lm, VcapLandmarks { a: 1, b: 0, c: 1, d: 0 });
        let edge = 400.0 + 100.0;
        assert_eq!(coords[0].as_array(), [edge, 0.0, edge, 0.0]);
        assert_eq!(coords[1].as_array(), [0.0, edge, 0.0, edge]);
    }

    #[test]
    fn vcap_matches_literal_election_formulas() {
        // An even ring and a random network, checked against a direct
        // re-evaluation of each election.
        let ring: Vec<Position> = (0..10)
            .map(|i| {
                let th = i as f64 * std::f64::consts::TAU / 10.0;
                Position::new(250.0 + 100.0 * th.cos(), 250.0 + 100.0 * th.sin())
            })
            .collect();
        let ring_edges: Vec<(u32, u32)> = (0..10).map(|i| (i, (i + 1) % 10)).collect();
        let ring_net = Network::from_edges(ring, &ring_edges, 500.0, 500.0, 70.0);
        let random = generate_network(&GenerationConfig {
            density: 120.0 / (400.0 * 400.0),
            width: 400.0,
            height: 400.0,
            radio_range: 70.0,
            mask: None,
            acceptance_fraction: 0.5,
            seed: 11,
        })
        .unwrap();
        for net in [&ring_net, &random] {
            let w = Weights::build(net, &energy());
            let lm = select_vcap_landmarks(net, &w).unwrap();
            let n = net.node_count();
            let argmax = |f: &dyn Fn(u32) -> f64| -> u32 {
                let mut best = (f64::NEG_INFINITY, 0u32);
                for u in 0..n as u32 {
                    let x = f(u);
                    if x > best.0 || (x == best.0 && u > best.1) {
                        best = (x, u);
                    }
                }
                best.1
            };
            let d0 = sssp(net, &w, 0, None).dist;
            let a = argmax(&|u| d0[u as usize]);
            assert_eq!(lm.a, a);
            let da = sssp(net, &w, a, None).dist;
            let b = argmax(&|u| da[u as usize]);
            assert_eq!(lm.b, b);
            let db = sssp(net, &w, b, None).dist;
            let c = argmax(&|u| {
                da[u as usize] + db[u as usize] - 2.0 * (da[u as usize] - db[u as usize]).abs()
            });
            assert_eq!(lm.c, c);
            let dc = sssp(net, &w, c, None).dist;
            let d = argmax(&|u| dc[u as usize] - (da[u as usize] - db[u as usize]).abs());
            assert_eq!(lm.d, d);
        }
    }

    #[test]
    fn lmr_distance_basics() {
        let p = VirtualCoordinate { to_a: 1.0, to_b: 2.0, to_c: 3.0, to_d: 4.0 };
        assert_eq!(lmr_distance(&p, &p), 0.0);
        let q = VirtualCoordinate { to_a: 4.0, to_b: 6.0, to_c: 3.0, to_d: 4.0 };
        assert_eq!(lmr_distance(&p, &q), 5.0);
    }

    /// A dead-end pocket aimed at the target: greedy walks into the pocket,
    /// recovery walks back out, and greedy resumes strictly below the
    /// dead end's metric.
    fn pocket() -> (Network, Weights) {
        let positions = vec![
            Position::new(0.0, 0.0),   // 0 source
            Position::new(10.0, 0.0),  // 1
            Position::new(20.0, 0.0),  // 2
            Position::new(30.0, 0.0),  // 3 pocket end (dead end)
            Position::new(0.0, 10.0),  // 4 connector
            Position::new(0.0, 20.0),  // 5 top row
            Position::new(10.0, 20.0), // 6
            Position::new(20.0, 20.0), // 7
            Position::new(30.0, 20.0), // 8 (resume point)
            Position::new(40.0, 20.0), // 9
            Position::new(50.0, 20.0), // 10
            Position::new(60.0, 20.0), // 11 target
        ];
        let net = Network::from_positions(positions, 200.0, 200.0, 12.0);
        let w = Weights::build(&net, &WeightModel::energy_default());
        (net, w)
    }

    #[test]
    fn pocket_dead_end_recovery_and_resumption() {
        let (net, w) = pocket();
        let sp = SpOracle::new(&net, &w);
        let structure = build_structure(&net, &w, TerminationPolicy::SplitToSingletons).unwrap();
        let target = 11u32;
        let metric = |u: u32| euclidean_distance(net.position(u), net.position(target));

        for recovery in [Recovery::ShortestPath, Recovery::Hbr] {
            let r = GreedyRouter::new(&net, &w, GreedyMode::Geo, recovery)
                .with_oracle(&sp)
                .with_structure(&structure)
                .route(0, target)
                .unwrap();
            assert!(r.delivered);
            assert_eq!(*r.path.last().unwrap(), target);
            // Greedy walks straight into the pocket and dead-ends at node 3.
            assert_eq!(&r.path[..4], &[0, 1, 2, 3]);
            assert_eq!(r.dead_ends, vec![3], "{recovery:?}");
            let threshold = metric(3);
            // Recovery hops stay at or above the dead-end metric except the
            // last one, which drops below it and hands back to greedy.
            let mut k = 3;
            while k < r.hops() && r.modes[k] == HopMode::Recovery {
                k += 1;
            }
            let resume = r.path[k];
            assert!(metric(resume) < threshold);
            for &node in &r.path[4..k] {
                assert!(metric(node) >= threshold, "{recovery:?} node {node}");
            }
            // All remaining hops are greedy and strictly decrease the metric.
            let mut prev = metric(resume);
            for h in k..r.hops() {
                assert_eq!(r.modes[h], HopMode::Greedy);
                let m = metric(r.path[h + 1]);
                assert!(m < prev);
                prev = m;
            }
        }

        // The shortest-path variant backtracks along the corridor and around
        // the top row, resuming at node 8.
        let r = GreedyRouter::new(&net, &w, GreedyMode::Geo, Recovery::ShortestPath)
            .with_oracle(&sp)
            .route(0, target)
            .unwrap();
        assert_eq!(r.path, vec![0, 1, 2, 3, 2, 1, 0, 4, 5, 6, 7, 8, 9, 10, 11]);
    }

    #[test]
    fn all_mode_recovery_combinations_deliver() {
        let net = generate_network(&GenerationConfig {
            density: 250.0 / (600.0 * 600.0),
            width: 600.0,
            height: 600.0,
            radio_range: 60.0,
            mask: None,
            acceptance_fraction: 0.5,
            seed: 21,
        })
        .unwrap();
        let w = Weights::build(&net, &energy());
        let structure = build_structure(&net, &w, TerminationPolicy::SplitToSingletons).unwrap();
        let (_, coords) = vcap_coordinates(&net, &w).unwrap();
        let sp = SpOracle::new(&net, &w);
        let n = net.node_count() as u32;
        for mode in [GreedyMode::Geo, GreedyMode::Lmr] {
            for recovery in [Recovery::ShortestPath, Recovery::Hbr] {
                let router = GreedyRouter::new(&net, &w, mode, recovery)
                    .with_coords(&coords)
                    .with_structure(&structure)
                    .with_oracle(&sp);
                for k in 0..100u32 {
                    let s = (k * 509) % n;
                    let t = (k * 1021 + 3) % n;
                    let r = router.route(s, t).unwrap();
                    assert!(r.delivered, "{mode:?} {recovery:?} {s}->{t}");
                    assert_eq!(*r.path.last().unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn missing_dependencies_are_reported() {
        let (net, w) = pocket();
        let r = GreedyRouter::new(&net, &w, GreedyMode::Lmr, Recovery::ShortestPath).route(0, 11);
        assert!(matches!(r, Err(RouteError::MissingDependency("virtual coordinates"))));
        let r = GreedyRouter::new(&net, &w, GreedyMode::Geo, Recovery::ShortestPath).route(0, 11);
        assert!(matches!(r, Err(RouteError::MissingDependency("shortest-path oracle"))));
        let r = GreedyRouter::new(&net, &w, GreedyMode::Geo, Recovery::Hbr).route(0, 11);
        assert!(matches!(r, Err(RouteError::MissingDependency("bipartition structure"))));
    }

    #[test]
    fn shortest_path_route_cost_equals_tree_distance() {
        let net = generate_network(&GenerationConfig {
            density: 150.0 / (500.0 * 500.0),
            width: 500.0,
            height: 500.0,
            radio_range: 65.0,
            mask: None,
            acceptance_fraction: 0.5,
            seed: 33,
        })
        .unwrap();
        let w = Weights::build(&net, &energy());
        let sp = SpOracle::new(&net, &w);
        let n = net.node_count() as u32;
        for k in 0..200u32 {
            let s = (k * 379) % n;
            let t = (k * 733 + 1) % n;
            let r = shortest_path_route(&net, &w, &sp, s, t).unwrap();
            assert!(r.delivered);
            let direct = sp.distance(s, t);
            assert!((r.total_cost - direct).abs() <= 1e-9 * direct.max(1.0), "{s}->{t}");
        }
    }
}
