//! SVG rendering of a network with optional hierarchy coloring, obstacle
//! shading, and route overlays.
//!
//! Layout: world coordinates with the origin at the bottom-left corner are
//! mapped to SVG by flipping the y axis; all numbers are printed with two
//! decimals so output is byte-stable across runs.

use std::io::{self, Write};

use crate::eval::Protocol;
use crate::greedy::GreedyMode;
use crate::hbr::HbrStructure;
use crate::net::{Mask, Network};
use crate::trace::RouteTrace;

/// Conventional stroke color for a protocol's route: hierarchy routing
/// black, physical-coordinate greedy yellow, virtual-coordinate greedy
/// purple.
pub fn protocol_color(p: Protocol) -> &'static str {
    match p.greedy_mode() {
        None => "#000000",
        Some(GreedyMode::Geo) => "#e0b000",
        Some(GreedyMode::Lmr) => "#8030c0",
    }
}

const NODE_SIDE0: &str = "#b4e2b4"; // light green: first address bit 0
const NODE_SIDE1: &str = "#e8b4b4"; // light red: first address bit 1
const NODE_PLAIN: &str = "#c4c4c4";
const EDGE_COLOR: &str = "#d0d0d0";
const HOLE_COLOR: &str = "#b8c4d4";
const DEAD_END_COLOR: &str = "#d41414";
const SOURCE_RING: &str = "#0a9a0a";
const TARGET_RING: &str = "#1432dc";

/// Renders the network as an SVG document. Nodes are tinted by the first
/// bit of their hierarchy address when a structure is given; every trace is
/// drawn as a polyline in its stroke color with dead-end nodes highlighted,
/// the source ringed green and the target ringed blue. Mask holes are shaded
/// behind everything else.
pub fn render_route_svg<W: Write>(
    mut w: W,
    net: &Network,
    structure: Option<&HbrStructure>,
    traces: &[(&str, &RouteTrace)],
    mask: Option<&Mask>,
) -> io::Result<()> {
    let (width, height) = (net.width(), net.height());
    let flip = |y: f64| height - y;
    let margin = 0.02 * width.max(height) + 2.0;
    let node_r = (width.max(height) / 250.0).clamp(1.2, 4.0);

    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.2} {:.2} {:.2} {:.2}">"#,
        -margin,
        -margin,
        width + 2.0 * margin,
        height + 2.0 * margin
    )?;
    writeln!(
        w,
        r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#ffffff"/>"##,
        -margin,
        -margin,
        width + 2.0 * margin,
        height + 2.0 * margin
    )?;

    if let Some(mask) = mask {
        writeln!(w, r#"<g fill="{HOLE_COLOR}">"#)?;
        let pw = width / mask.cols() as f64;
        let ph = height / mask.rows() as f64;
        for row in 0..mask.rows() {
            // Merge horizontal runs of hole pixels into single rectangles.
            let mut col = 0;
            while col < mask.cols() {
                if !mask.hole(col, row) {
                    col += 1;
                    continue;
                }
                let start = col;
                while col < mask.cols() && mask.hole(col, row) {
                    col += 1;
                }
                writeln!(
                    w,
                    r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/>"#,
                    start as f64 * pw,
                    flip((row + 1) as f64 * ph),
                    (col - start) as f64 * pw,
                    ph
                )?;
            }
        }
        writeln!(w, "</g>")?;
    }

    writeln!(w, r#"<g stroke="{EDGE_COLOR}" stroke-width="{:.2}">"#, node_r * 0.3)?;
    for (u, v) in net.edges() {
        let p = net.position(u);
        let q = net.position(v);
        writeln!(
            w,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            p.x,
            flip(p.y),
            q.x,
            flip(q.y)
        )?;
    }
    writeln!(w, "</g>")?;

    writeln!(w, "<g>")?;
    for u in 0..net.node_count() as u32 {
        let fill = match structure {
            Some(s) if !s.address(u).is_empty() => {
                if s.address(u).bit(0) == 0 {
                    NODE_SIDE0
                } else {
                    NODE_SIDE1
                }
            }
            _ => NODE_PLAIN,
        };
        let p = net.position(u);
        writeln!(
            w,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="{fill}"/>"#,
            p.x,
            flip(p.y),
            node_r
        )?;
    }
    writeln!(w, "</g>")?;

    for &(color, trace) in traces {
        if trace.path.len() >= 2 {
            write!(w, r#"<polyline fill="none" stroke="{color}" stroke-width="{:.2}" points=""#, node_r * 0.6)?;
            for (i, &u) in trace.path.iter().enumerate() {
                let p = net.position(u);
                if i > 0 {
                    write!(w, " ")?;
                }
                write!(w, "{:.2},{:.2}", p.x, flip(p.y))?;
            }
            writeln!(w, r#""/>"#)?;
        }
        for &idx in &trace.dead_ends {
            let p = net.position(trace.path[idx]);
            writeln!(
                w,
                r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="{DEAD_END_COLOR}"/>"#,
                p.x,
                flip(p.y),
                node_r * 1.2
            )?;
        }
        let rings = [
            (trace.path[0], SOURCE_RING),
            (*trace.path.last().expect("trace starts at the source"), TARGET_RING),
        ];
        for (u, color) in rings {
            let p = net.position(u);
            writeln!(
                w,
                r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="{color}" stroke-width="{:.2}"/>"#,
                p.x,
                flip(p.y),
                node_r * 2.5,
                node_r * 0.5
            )?;
        }
    }

    writeln!(w, "</svg>")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::greedy::{GreedyRouter, Recovery, SpOracle};
    use crate::hbr::{build_structure, TerminationPolicy};
    use crate::net::Position;
    use crate::weights::{WeightModel, Weights};

    fn two_node_net() -> Network {
        Network::from_positions(
            vec![Position::new(10.0, 10.0), Position::new(40.0, 30.0)],
            100.0,
            50.0,
            40.0,
        )
    }

    #[test]
    fn network_only_rendering_without_traces() {
        let net = two_node_net();
        let mut out = Vec::new();
        render_route_svg(&mut out, &net, None, &[], None).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
        assert!(text.trim_end().ends_with("</svg>"));
        assert_eq!(text.matches("<circle").count(), 2);
        assert_eq!(text.matches("<line").count(), 1);
        assert!(!text.contains("<polyline"));
    }

    #[test]
    fn two_node_route_draws_polyline_and_rings() {
        let net = two_node_net();
        let weights = Weights::build(&net, &WeightModel::energy_default());
        let structure = build_structure(&net, &weights, TerminationPolicy::SplitToSingletons).unwrap();
        let sp = SpOracle::new(&net, &weights);
        let trace = GreedyRouter::new(&net, &weights, GreedyMode::Geo, Recovery::ShortestPath)
            .with_oracle(&sp)
            .route(0, 1)
            .unwrap();
        let mut out = Vec::new();
        render_route_svg(&mut out, &net, Some(&structure), &[("#e0b000", &trace)], None).unwrap();
        let text = String::from_utf8(out).unwrap();
        // Node tints reflect the two first-bit sides.
        assert!(text.contains(NODE_SIDE0) && text.contains(NODE_SIDE1));
        assert_eq!(text.matches("<polyline").count(), 1);
        // y axis flipped: node at world y=10 on a 50-high field lands at 40.
        assert!(text.contains(r#"cx="10.00" cy="40.00""#));
        // Source and target rings.
        assert!(text.contains(SOURCE_RING) && text.contains(TARGET_RING));
    }

    #[test]
    fn mask_holes_are_shaded_and_runs_merged() {
        let net = two_node_net();
        let mut holes = vec![false; 16];
        holes[0] = true; // bottom-left pixel
        holes[1] = true; // merged with its neighbor into one rect
        holes[7] = true; // separate rect, second row
        let mask = Mask::new(4, 4, holes, "spots");
        let mut out = Vec::new();
        render_route_svg(&mut out, &net, None, &[], Some(&mask)).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.matches(&format!(r#"<g fill="{HOLE_COLOR}">"#)).count(), 1);
        // One merged 2-pixel run plus one single pixel (plus the backdrop).
        assert_eq!(text.matches("<rect").count(), 3);
        // Bottom mask row renders at the bottom of the image (y flipped):
        // pixel height is 50/4 = 12.5, so the run starts at y = 37.50.
        assert!(text.contains(r#"<rect x="0.00" y="37.50" width="50.00" height="12.50"/>"#));
    }

    #[test]
    fn rendering_is_deterministic() {
        let net = two_node_net();
        let mut a = Vec::new();
        let mut b = Vec::new();
        render_route_svg(&mut a, &net, None, &[], None).unwrap();
        render_route_svg(&mut b, &net, None, &[], None).unwrap();
        assert_eq!(a, b);
    }
}
