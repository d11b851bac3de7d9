//! Benchmarks for network generation, shortest paths, hierarchy
//! construction, and routing.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use hbr_sim::greedy::{vcap_coordinates, GreedyMode, GreedyRouter, Recovery, SpOracle};
use hbr_sim::hbr::{build_structure, route_hbr, simulate_flood, sssp, TerminationPolicy};
use hbr_sim::{generate_network, GenerationConfig, Network, WeightModel, Weights};

fn config(density: f64, seed: u64) -> GenerationConfig {
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

fn sample_net() -> (Network, Weights) {
    let net = generate_network(&config(1.5e-3, 42)).expect("benchmark network");
    let w = Weights::build(&net, &WeightModel::energy_default());
    (net, w)
}

fn bench_generation(c: &mut Criterion) {
    c.bench_function("generate_1500_nodes", |b| {
        b.iter(|| generate_network(black_box(&config(1.5e-3, 42))).unwrap())
    });
}

fn bench_sssp(c: &mut Criterion) {
    let (net, w) = sample_net();
    c.bench_function("sssp_1500_nodes", |b| b.iter(|| sssp(&net, &w, black_box(0), None)));
    c.bench_function("flood_1500_nodes", |b| b.iter(|| simulate_flood(&net, &w, black_box(0))));
}

fn bench_build(c: &mut Criterion) {
    let (net, w) = sample_net();
    c.bench_function("build_hierarchy_1500_nodes", |b| {
        b.iter(|| build_structure(&net, &w, TerminationPolicy::SplitToSingletons).unwrap())
    });
}

fn bench_routing(c: &mut Criterion) {
    let (net, w) = sample_net();
    let structure = build_structure(&net, &w, TerminationPolicy::SplitToSingletons).unwrap();
    let (_, coords) = vcap_coordinates(&net, &w).unwrap();
    let n = net.node_count() as u32;
    let pairs: Vec<(u32, u32)> = (0..64u32)
        .map(|k| ((k * 2654435761) % n, (k * 40503 + 1) % n))
        .filter(|(s, t)| s != t)
        .collect();

    c.bench_function("route_hierarchy_64_pairs", |b| {
        b.iter(|| {
            for &(s, t) in &pairs {
                black_box(route_hbr(&net, &w, &structure, s, t).unwrap());
            }
        })
    });

    c.bench_function("route_geo_sp_64_pairs", |b| {
        b.iter_batched(
            || SpOracle::new(&net, &w),
            |sp| {
                let router = GreedyRouter::new(&net, &w, GreedyMode::Geo, Recovery::ShortestPath)
                    .with_oracle(&sp);
                for &(s, t) in &pairs {
                    black_box(router.route(s, t).unwrap());
                }
            },
            BatchSize::LargeInput,
        )
    });

    c.bench_function("route_lmr_hbr_64_pairs", |b| {
        b.iter(|| {
            let router = GreedyRouter::new(&net, &w, GreedyMode::Lmr, Recovery::Hbr)
                .with_coords(&coords)
                .with_structure(&structure);
            for &(s, t) in &pairs {
                black_box(router.route(s, t).unwrap());
            }
        })
    });
}

criterion_group!(benches, bench_generation, bench_sssp, bench_build, bench_routing);
criterion_main!(benches);
