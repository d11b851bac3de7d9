//! Single-source shortest paths (Dijkstra) with deterministic tie-breaking.
//!
//! Distances are exact shortest-path sums; the parent map is normalized in a
//! post-pass so each node's parent is the smallest-id neighbor on any shortest
//! path, independent of heap pop order. The search can be restricted to an
//! induced subgraph (an allowed node set).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::net::Network;
use crate::weights::Weights;

/// Sentinel for "no parent" (source or unreachable).
pub const NO_PARENT: u32 = u32::MAX;

/// Result of a shortest-path search. Nodes outside the allowed set or
/// unreachable from the source keep `dist = f64::INFINITY`.
#[derive(Debug, Clone)]
pub struct SsspResult {
    pub dist: Vec<f64>,
    pub parent: Vec<u32>,
}

/// Heap key: IEEE-754 bits of a non-negative finite f64 sort numerically.
#[inline]
fn key(d: f64) -> u64 {
    d.to_bits()
}

/// Core Dijkstra writing distances into a caller-provided buffer.
///
/// `dist` must be pre-set to `INFINITY` for every member; only member entries
/// are touched. Membership is `mark[u] == epoch` (epoch tricks let the
/// bipartition reuse one buffer across thousands of subnetwork searches).
pub(crate) fn dijkstra_into(
    net: &Network,
    weights: &Weights,
    members: &[u32],
    mark: &[u32],
    epoch: u32,
    source: u32,
    dist: &mut [f64],
    heap: &mut BinaryHeap<Reverse<(u64, u32)>>,
) {
    debug_assert!(mark[source as usize] == epoch);
    debug_assert!(members.iter().all(|&m| dist[m as usize].is_infinite()));
    heap.clear();
    dist[source as usize] = 0.0;
    heap.push(Reverse((key(0.0), source)));
    while let Some(Reverse((k, u))) = heap.pop() {
        if k > key(dist[u as usize]) {
            continue; // stale entry
        }
        let du = dist[u as usize];
        for (slot, &(v, _)) in net.neighbors(u).iter().enumerate() {
            if mark[v as usize] != epoch {
                continue;
            }
            let nd = du + weights.at(u, slot);
            if nd < dist[v as usize] {
                dist[v as usize] = nd;
                heap.push(Reverse((key(nd), v)));
            }
        }
    }
}

/// Shortest paths from `source`, optionally restricted to `members`.
///
/// With `members = None` the whole network is searched. Parents follow the
/// smallest-id rule described in the module docs.
pub fn sssp(net: &Network, weights: &Weights, source: u32, members: Option<&[u32]>) -> SsspResult {
    let n = net.node_count();
    assert!((source as usize) < n, "source out of range");
    let all: Vec<u32>;
    let members = match members {
        Some(m) => m,
        None => {
            all = (0..n as u32).collect();
            &all
        }
    };
    let mut mark = vec![0u32; n];
    for &m in members {
        mark[m as usize] = 1;
    }
    assert!(mark[source as usize] == 1, "source not in allowed set");

    let mut dist = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    dijkstra_into(net, weights, members, &mark, 1, source, &mut dist, &mut heap);

    // Deterministic parents: smallest-id optimal predecessor.
    let mut parent = vec![NO_PARENT; n];
    for &v in members {
        if v == source || dist[v as usize].is_infinite() {
            continue;
        }
        for (slot, &(u, _)) in net.neighbors(v).iter().enumerate() {
            if mark[u as usize] == 1 && dist[u as usize] + weights.at(v, slot) == dist[v as usize] {
                parent[v as usize] = u;
                break; // adjacency is id-sorted, first hit is the minimum id
            }
        }
        debug_assert!(parent[v as usize] != NO_PARENT, "finite distance without a predecessor");
    }
    SsspResult { dist, parent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{generate_network, GenerationConfig, Network, Position};
    use crate::weights::{WeightModel, Weights};

    fn line(nodes: usize, spacing: f64) -> Network {
        let positions = (0..nodes).map(|i| Position::new(i as f64 * spacing, 0.0)).collect();
        Network::from_positions(positions, 1000.0, 10.0, spacing + 1.0)
    }

    /// Bellman-Ford oracle (edge-list relaxation until a fixed point).
    fn bellman_ford(net: &Network, weights: &Weights, source: u32) -> Vec<f64> {
        let n = net.node_count();
        let mut dist = vec![f64::INFINITY; n];
        dist[source as usize] = 0.0;
        for _ in 0..n {
            let mut changed = false;
            for u in 0..n as u32 {
                if dist[u as usize].is_infinite() {
                    continue;
                }
                for (slot, &(v, _)) in net.neighbors(u).iter().enumerate() {
                    let nd = dist[u as usize] + weights.at(u, slot);
                    if nd < dist[v as usize] {
                        dist[v as usize] = nd;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        dist
    }

    #[test]
    fn single_node_distance_zero() {
        let net = Network::from_positions(vec![Position::new(1.0, 1.0)], 10.0, 10.0, 5.0);
        let w = Weights::build(&net, &WeightModel::Unit);
        let r = sssp(&net, &w, 0, None);
        assert_eq!(r.dist[0], 0.0);
        assert_eq!(r.parent[0], NO_PARENT);
    }

    #[test]
    fn path_distances_accumulate() {
        // Path of 3 nodes with custom weights 2 and 3.
        let net = line(3, 10.0);
        let w = Weights::custom(&net, |u, v, _| if u.min(v) == 0 { 2.0 } else { 3.0 });
        let r = sssp(&net, &w, 0, None);
        assert_eq!(r.dist, vec![0.0, 2.0, 5.0]);
        assert_eq!(r.parent, vec![NO_PARENT, 0, 1]);
    }

    #[test]
    fn matches_bellman_ford_on_random_networks() {
        for seed in 0..10u64 {
            let net = generate_network(&GenerationConfig {
                density: 50.0 / (300.0 * 300.0),
                width: 300.0,
                height: 300.0,
                radio_range: 60.0,
                mask: None,
                acceptance_fraction: 0.5,
                seed: 1000 + seed,
            })
            .unwrap();
            let w = Weights::build(&net, &WeightModel::energy_default());
            let r = sssp(&net, &w, 0, None);
            let oracle = bellman_ford(&net, &w, 0);
            for u in 0..net.node_count() {
                assert_eq!(r.dist[u], oracle[u], "node {u} seed {seed}");
            }
        }
    }

    #[test]
    fn restriction_to_members_blocks_detours() {
        // Square 0-1-2-3 where the direct edge 0-3 is heavy; excluding node 1
        // forces the 0-3 distance through 2 or the direct edge.
        let net = line(4, 10.0);
        let w = Weights::custom(&net, |_, _, _| 1.0);
        let r = sssp(&net, &w, 0, Some(&[0, 1, 2, 3]));
        assert_eq!(r.dist[3], 3.0);
        let r = sssp(&net, &w, 0, Some(&[0, 1]));
        assert_eq!(r.dist[1], 1.0);
        assert!(r.dist[2].is_infinite());
        assert!(r.dist[3].is_infinite());
    }

    #[test]
    fn parent_ties_resolve_to_smallest_id() {
        // Diamond: 0 at origin; 1 and 2 equidistant; 3 reachable through both
        // at the same total cost. Parent of 3 must be node 1.
        let positions = vec![
            Position::new(0.0, 0.0),
            Position::new(10.0, 10.0),
            Position::new(10.0, -10.0),
            Position::new(20.0, 0.0),
        ];
        let net = Network::from_edges(positions, &[(0, 1), (0, 2), (1, 3), (2, 3)], 100.0, 100.0, 50.0);
        let w = Weights::custom(&net, |_, _, _| 1.0);
        let r = sssp(&net, &w, 0, None);
        assert_eq!(r.dist[3], 2.0);
        assert_eq!(r.parent[3], 1);
    }
}
