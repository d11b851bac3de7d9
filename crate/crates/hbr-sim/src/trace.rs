//! Route traces shared by all routing protocols.

/// Whether a hop was taken by the greedy rule or by dead-end recovery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopMode {
    Greedy,
    Recovery,
}

/// The full record of one routed packet.
#[derive(Debug, Clone)]
pub struct RouteTrace {
    /// Visited nodes; `path[0]` is the source.
    pub path: Vec<u32>,
    /// Mode per hop; `modes.len() == path.len() - 1`.
    pub modes: Vec<HopMode>,
    /// Indices into `path` where a dead end was declared.
    pub dead_ends: Vec<usize>,
    /// Sum of edge weights along the path.
    pub total_cost: f64,
    pub delivered: bool,
}

impl RouteTrace {
    pub fn start(source: u32) -> RouteTrace {
        RouteTrace {
            path: vec![source],
            modes: Vec::new(),
            dead_ends: Vec::new(),
            total_cost: 0.0,
            delivered: false,
        }
    }

    pub fn record_hop(&mut self, to: u32, cost: f64, mode: HopMode) {
        self.path.push(to);
        self.modes.push(mode);
        self.total_cost += cost;
    }

    /// Number of hops taken.
    pub fn hops(&self) -> usize {
        self.path.len() - 1
    }

    pub fn dead_end_count(&self) -> usize {
        self.dead_ends.len()
    }
}
