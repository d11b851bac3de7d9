//! Edge weight models.
//!
//! Link costs are derived from Euclidean edge lengths. Three models are
//! supported:
//!
//! * `Unit` — every edge costs 1 (hop count metric).
//! * `Energy { a, b, c }` — transmission energy `a + b * d^c`. The default
//!   (a = 400, b = 1, c = 2) has its cost-per-meter optimum at the
//!   characteristic distance `(a / (b * (c - 1)))^(1/c)` = 20 m.
//! * `Coarsened { k }` — the default energy cost quantized to at most `k`
//!   levels: `ceil(k * (400 + d^2) / (400 + r^2))` where `r` is the radio
//!   range. `k = 1` degenerates to unit weights.

use crate::net::Network;
use crate::NetError;

/// Weight model applied to edge lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightModel {
    /// Every edge costs 1.
    Unit,
    /// Energy cost `a + b * d^c`.
    Energy { a: f64, b: f64, c: f64 },
    /// Energy cost quantized to `k` integer levels relative to the radio range.
    Coarsened { k: u32 },
}

impl WeightModel {
    /// The default energy model `400 + d^2`.
    pub fn energy_default() -> Self {
        WeightModel::Energy { a: 400.0, b: 1.0, c: 2.0 }
    }

    /// Weight of an edge of length `d` under this model.
    ///
    /// `radio_range` is only consulted by the coarsened model (its quantization
    /// is normalized so a maximal-length edge costs exactly `k`).
    pub fn edge_weight(&self, d: f64, radio_range: f64) -> f64 {
        match *self {
            WeightModel::Unit => 1.0,
            WeightModel::Energy { a, b, c } => a + b * d.powf(c),
            WeightModel::Coarsened { k } => {
                let q = k as f64 * (400.0 + d * d) / (400.0 + radio_range * radio_range);
                // Guard the exact-integer case (e.g. d == r) against FP noise.
                if (q - q.round()).abs() < 1e-9 {
                    q.round()
                } else {
                    q.ceil()
                }
            }
        }
    }

    /// Distance minimizing cost per meter (`(a / (b (c - 1)))^(1/c)`), if the
    /// model has one.
    pub fn characteristic_distance(&self) -> Option<f64> {
        match *self {
            WeightModel::Energy { a, b, c } if c > 1.0 && b > 0.0 => {
                Some((a / (b * (c - 1.0))).powf(1.0 / c))
            }
            _ => None,
        }
    }

    /// Short label used in tables (`w`, `w16`, ..., `w1`).
    pub fn label(&self) -> String {
        match *self {
            WeightModel::Unit => "unit".to_string(),
            WeightModel::Energy { .. } => "w".to_string(),
            WeightModel::Coarsened { k } => format!("w{k}"),
        }
    }

    /// Inverse of [`label`](Self::label); also accepts `energy`.
    pub fn parse(s: &str) -> Option<WeightModel> {
        match s {
            "unit" => Some(WeightModel::Unit),
            "w" | "energy" => Some(WeightModel::energy_default()),
            _ => {
                let k: u32 = s.strip_prefix('w')?.parse().ok()?;
                (k >= 1).then_some(WeightModel::Coarsened { k })
            }
        }
    }
}

/// Materialized per-edge weights aligned with a network's adjacency lists.
///
/// All routing and bipartition algorithms read weights from this table, so
/// test fixtures can install arbitrary positive weights that no geometric
/// model would produce.
#[derive(Debug, Clone)]
pub struct Weights {
    per_adj: Vec<Vec<f64>>,
}

impl Weights {
    /// Applies a weight model to every edge of the network.
    pub fn build(net: &Network, model: &WeightModel) -> Weights {
        Weights::custom(net, |_, _, len| model.edge_weight(len, net.radio_range()))
    }

    /// Builds a weight table from an arbitrary function of (u, v, length).
    ///
    /// Panics if any produced weight is not strictly positive: zero or negative
    /// link costs break every shortest-path argument in the library.
    pub fn custom<F: Fn(u32, u32, f64) -> f64>(net: &Network, f: F) -> Weights {
        let per_adj = (0..net.node_count() as u32)
            .map(|u| {
                net.neighbors(u)
                    .iter()
                    .map(|&(v, len)| {
                        let w = f(u, v, len);
                        assert!(w > 0.0 && w.is_finite(), "edge weight must be positive finite");
                        w
                    })
                    .collect()
            })
            .collect();
        Weights { per_adj }
    }

    /// Weight of the `slot`-th adjacency entry of node `u`.
    #[inline]
    pub fn at(&self, u: u32, slot: usize) -> f64 {
        self.per_adj[u as usize][slot]
    }

    /// Weight of edge (u, v); error if the nodes are not adjacent.
    pub fn between(&self, net: &Network, u: u32, v: u32) -> Result<f64, NetError> {
        match net.neighbor_slot(u, v) {
            Some(slot) => Ok(self.at(u, slot)),
            None => Err(NetError::NotAdjacent { u, v }),
        }
    }
}
