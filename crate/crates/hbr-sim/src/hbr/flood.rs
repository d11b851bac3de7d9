//! Deterministic distance-flood simulation.
//!
//! Models the distributed computation of shortest-path distances to a flood
//! source: every node remembers its best known distance; whenever that value
//! improves it unicasts the improved distance (plus the edge weight) to each
//! neighbor except the one it learned from, in ascending edge-weight order.
//! Message delivery is serialized through a global event queue keyed by
//! (carried distance, sender id, receiver id), which makes the schedule — and
//! therefore the transmission count — deterministic.
//!
//! Under this schedule every node improves exactly once, so flooding a
//! connected (sub)network with n nodes and m edges costs exactly
//! `2m - n + 1` transmissions, and the final distances equal the shortest
//! path distances (verified against [`super::sssp`] in tests).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::net::Network;
use crate::weights::Weights;

/// Outcome of one flood.
#[derive(Debug, Clone)]
pub struct FloodOutcome {
    /// Best known distance per node (INFINITY outside the flooded set).
    pub dist: Vec<f64>,
    /// Total unicast messages sent.
    pub transmissions: u64,
}

/// Floods the whole network from `source`.
pub fn simulate_flood(net: &Network, weights: &Weights, source: u32) -> FloodOutcome {
    let n = net.node_count();
    let members: Vec<u32> = (0..n as u32).collect();
    let mark = vec![1u32; n];
    let mut dist = vec![f64::INFINITY; n];
    let transmissions = flood_into(net, weights, &members, &mark, 1, source, &mut dist);
    FloodOutcome { dist, transmissions }
}

/// Core flood over an induced subgraph, writing into caller buffers.
///
/// Same buffer protocol as `dijkstra_into`: membership is `mark[u] == epoch`,
/// `dist` pre-set to INFINITY for members.
pub(crate) fn flood_into(
    net: &Network,
    weights: &Weights,
    _members: &[u32],
    mark: &[u32],
    epoch: u32,
    source: u32,
    dist: &mut [f64],
) -> u64 {
    debug_assert!(mark[source as usize] == epoch);
    let mut transmissions = 0u64;
    // Queue entries: (carried distance bits, sender, receiver).
    let mut queue: BinaryHeap<Reverse<(u64, u32, u32)>> = BinaryHeap::new();
    let mut order: Vec<(u64, u32, usize)> = Vec::new(); // (weight bits, neighbor id, slot)

    let mut send_all = |from: u32,
                        learned_from: Option<u32>,
                        base: f64,
                        queue: &mut BinaryHeap<Reverse<(u64, u32, u32)>>,
                        transmissions: &mut u64,
                        mark: &[u32]| {
        order.clear();
        for (slot, &(v, _)) in net.neighbors(from).iter().enumerate() {
            if mark[v as usize] != epoch || Some(v) == learned_from {
                continue;
            }
            order.push((weights.at(from, slot).to_bits(), v, slot));
        }
        order.sort_unstable();
        for &(_, v, slot) in order.iter() {
            let carried = base + weights.at(from, slot);
            queue.push(Reverse((carried.to_bits(), from, v)));
            *transmissions += 1;
        }
    };

    dist[source as usize] = 0.0;
    send_all(source, None, 0.0, &mut queue, &mut transmissions, mark);

    while let Some(Reverse((bits, sender, receiver))) = queue.pop() {
        let carried = f64::from_bits(bits);
        if carried < dist[receiver as usize] {
            dist[receiver as usize] = carried;
            send_all(receiver, Some(sender), carried, &mut queue, &mut transmissions, mark);
        }
    }
    transmissions
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hbr::sssp::sssp;
    use crate::net::{generate_network, GenerationConfig, Network, Position};
    use crate::weights::{WeightModel, Weights};

    #[test]
    fn single_node_sends_nothing() {
        let net = Network::from_positions(vec![Position::new(0.0, 0.0)], 10.0, 10.0, 5.0);
        let w = Weights::build(&net, &WeightModel::Unit);
        let out = simulate_flood(&net, &w, 0);
        assert_eq!(out.transmissions, 0);
        assert_eq!(out.dist[0], 0.0);
    }

    #[test]
    fn path_of_three_from_an_end_costs_two_messages() {
        let positions = (0..3).map(|i| Position::new(i as f64 * 10.0, 0.0)).collect();
        let net = Network::from_positions(positions, 100.0, 10.0, 15.0);
        let w = Weights::build(&net, &WeightModel::Unit);
        let out = simulate_flood(&net, &w, 0);
        assert_eq!(out.transmissions, 2);
        assert_eq!(out.dist, vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn transmission_count_matches_closed_form() {
        // Every node improves exactly once: deg(source) + sum over others of
        // (deg - 1) = 2m - n + 1 on a connected network.
        let net = generate_network(&GenerationConfig {
            density: 80.0 / (400.0 * 400.0),
            width: 400.0,
            height: 400.0,
            radio_range: 80.0,
            mask: None,
            acceptance_fraction: 0.5,
            seed: 7,
        })
        .unwrap();
        let w = Weights::build(&net, &WeightModel::energy_default());
        let out = simulate_flood(&net, &w, 0);
        let expected = 2 * net.edge_count() as u64 - net.node_count() as u64 + 1;
        assert_eq!(out.transmissions, expected);
    }

    #[test]
    fn flood_distances_equal_shortest_paths() {
        for seed in 0..8u64 {
            let net = generate_network(&GenerationConfig {
                density: 100.0 / (400.0 * 400.0),
                width: 400.0,
                height: 400.0,
                radio_range: 70.0,
                mask: None,
                acceptance_fraction: 0.5,
                seed: 300 + seed,
            })
            .unwrap();
            let w = Weights::build(&net, &WeightModel::energy_default());
            for source in [0u32, (net.node_count() / 2) as u32] {
                let flood = simulate_flood(&net, &w, source);
                let exact = sssp(&net, &w, source, None);
                assert_eq!(flood.dist, exact.dist, "seed {seed} source {source}");
            }
        }
    }
}
