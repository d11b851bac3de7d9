//! Plain-text network serialization.
//!
//! Format (version 1):
//!
//! ```text
//! hbr-net v1
//! # seed=7 density=0.0025 accept=0.6666666666666666 mask=lakes pruning=false placed=2500
//! field 1000 1000 50
//! nodes 2493
//! 0 12.5 99.25
//! ...
//! edges 23417
//! 0 17
//! ...
//! ```
//!
//! Floats use Rust's shortest round-trip formatting, so write → read → write
//! is byte-identical. The `#` meta line is optional on read.

use std::io::{BufRead, Write};

use crate::net::{GenMeta, Network, Position};
use crate::NetError;

impl Network {
    /// Serializes the network (see module docs for the format).
    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "hbr-net v1")?;
        if let Some(m) = self.meta() {
            writeln!(
                w,
                "# seed={} density={} accept={} mask={} pruning={} placed={}",
                m.seed,
                m.density,
                m.acceptance_fraction,
                m.mask_name.as_deref().unwrap_or("none"),
                m.edge_pruning,
                m.placed
            )?;
        }
        writeln!(w, "field {} {} {}", self.width(), self.height(), self.radio_range())?;
        writeln!(w, "nodes {}", self.node_count())?;
        for u in 0..self.node_count() as u32 {
            let p = self.position(u);
            writeln!(w, "{} {} {}", u, p.x, p.y)?;
        }
        writeln!(w, "edges {}", self.edge_count())?;
        for (u, v) in self.edges() {
            writeln!(w, "{u} {v}")?;
        }
        Ok(())
    }

    /// Parses a network written by [`Network::write_text`].
    pub fn read_text<R: BufRead>(r: R) -> Result<Network, NetError> {
        let mut lines = r.lines().enumerate();
        let fail = |line: usize, msg: &str| NetError::Parse { line: line + 1, msg: msg.to_string() };
        let next_line = |lines: &mut dyn Iterator<Item = (usize, std::io::Result<String>)>| -> Result<(usize, String), NetError> {
            match lines.next() {
                Some((i, Ok(s))) => Ok((i, s)),
                Some((_, Err(e))) => Err(NetError::Io(e)),
                None => Err(NetError::Parse { line: 0, msg: "unexpected end of file".into() }),
            }
        };

        let (i, header) = next_line(&mut lines)?;
        if header.trim() != "hbr-net v1" {
            return Err(fail(i, "expected header 'hbr-net v1'"));
        }

        let (mut i, mut line) = next_line(&mut lines)?;
        let mut meta = None;
        if line.starts_with('#') {
            meta = parse_meta(&line);
            let (j, l) = next_line(&mut lines)?;
            i = j;
            line = l;
        }

        let field: Vec<&str> = line.split_whitespace().collect();
        if field.len() != 4 || field[0] != "field" {
            return Err(fail(i, "expected 'field <width> <height> <range>'"));
        }
        let width: f64 = field[1].parse().map_err(|_| fail(i, "bad width"))?;
        let height: f64 = field[2].parse().map_err(|_| fail(i, "bad height"))?;
        let range: f64 = field[3].parse().map_err(|_| fail(i, "bad range"))?;

        let (i, line) = next_line(&mut lines)?;
        let n: usize = line
            .strip_prefix("nodes ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| fail(i, "expected 'nodes <count>'"))?;
        let mut positions = Vec::with_capacity(n);
        for k in 0..n {
            let (i, line) = next_line(&mut lines)?;
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(fail(i, "expected '<id> <x> <y>'"));
            }
            let id: usize = parts[0].parse().map_err(|_| fail(i, "bad node id"))?;
            if id != k {
                return Err(fail(i, "node ids must be sequential from 0"));
            }
            let x: f64 = parts[1].parse().map_err(|_| fail(i, "bad x"))?;
            let y: f64 = parts[2].parse().map_err(|_| fail(i, "bad y"))?;
            positions.push(Position::new(x, y));
        }

        let (i, line) = next_line(&mut lines)?;
        let m: usize = line
            .strip_prefix("edges ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| fail(i, "expected 'edges <count>'"))?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (i, line) = next_line(&mut lines)?;
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(fail(i, "expected '<u> <v>'"));
            }
            let u: u32 = parts[0].parse().map_err(|_| fail(i, "bad endpoint"))?;
            let v: u32 = parts[1].parse().map_err(|_| fail(i, "bad endpoint"))?;
            if u as usize >= n || v as usize >= n || u == v {
                return Err(fail(i, "edge endpoint out of range"));
            }
            edges.push((u, v));
        }

        let mut net = Network::from_edges(positions, &edges, width, height, range);
        net.set_meta(meta);
        Ok(net)
    }

    pub(crate) fn set_meta(&mut self, meta: Option<GenMeta>) {
        self.meta = meta;
    }
}

fn parse_meta(line: &str) -> Option<GenMeta> {
    let mut seed = None;
    let mut density = None;
    let mut accept = None;
    let mut mask = None;
    let mut pruning = None;
    let mut placed = None;
    for tok in line.trim_start_matches('#').split_whitespace() {
        let (k, v) = tok.split_once('=')?;
        match k {
            "seed" => seed = v.parse().ok(),
            "density" => density = v.parse().ok(),
            "accept" => accept = v.parse().ok(),
            "mask" => mask = Some(v.to_string()),
            "pruning" => pruning = v.parse().ok(),
            "placed" => placed = v.parse().ok(),
            _ => {}
        }
    }
    Some(GenMeta {
        seed: seed?,
        density: density?,
        acceptance_fraction: accept?,
        mask_name: mask.filter(|m| m != "none"),
        edge_pruning: pruning?,
        placed: placed?,
    })
}
