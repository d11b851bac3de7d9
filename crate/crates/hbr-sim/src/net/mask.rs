//! Obstacle masks.
//!
//! A mask is a binary pixel grid stretched over the field: value 0 (black)
//! means allowed terrain, the maximal gray value (white) means hole. PGM
//! files (P2 ASCII or P5 binary) are thresholded at half the maximal value.
//! Pixel row 0 maps to y = 0 (bottom edge of the field).
//!
//! Masks affect generation twice: node candidates landing on a hole pixel are
//! discarded, and — when `edge_pruning` is on — edges whose segment touches a
//! hole pixel are removed (visibility model for building-like obstacles). The
//! segment test walks the supercover of the segment in pixel space, i.e. it is
//! conservative: any touched cell blocks.

use std::io::{Read, Write};

use crate::net::Position;
use crate::rng::{self, STREAM_MASK};
use crate::NetError;

/// Binary obstacle grid over the field.
#[derive(Debug, Clone)]
pub struct Mask {
    cols: usize,
    rows: usize,
    /// Row-major; `true` = hole. Row 0 is the bottom of the field.
    holes: Vec<bool>,
    edge_pruning: bool,
    name: String,
}

impl Mask {
    pub fn new(cols: usize, rows: usize, holes: Vec<bool>, name: &str) -> Mask {
        assert!(cols > 0 && rows > 0 && holes.len() == cols * rows);
        Mask { cols, rows, holes, edge_pruning: false, name: name.to_string() }
    }

    /// Test helper: every pixel is a hole.
    pub fn uniform_holes(cols: usize, rows: usize) -> Mask {
        Mask::new(cols, rows, vec![true; cols * rows], "uniform-holes")
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn edge_pruning(&self) -> bool {
        self.edge_pruning
    }

    /// Returns the mask with the edge-visibility mode switched.
    pub fn with_edge_pruning(mut self, on: bool) -> Mask {
        self.edge_pruning = on;
        self
    }

    /// Fraction of hole pixels.
    pub fn hole_fraction(&self) -> f64 {
        self.holes.iter().filter(|&&h| h).count() as f64 / self.holes.len() as f64
    }

    /// Hole flag of one pixel; row 0 is the bottom of the field.
    #[inline]
    pub fn hole(&self, col: usize, row: usize) -> bool {
        self.holes[row * self.cols + col]
    }

    fn pixel_of(&self, x: f64, y: f64, width: f64, height: f64) -> (usize, usize) {
        let col = ((x / width * self.cols as f64) as isize).clamp(0, self.cols as isize - 1) as usize;
        let row = ((y / height * self.rows as f64) as isize).clamp(0, self.rows as isize - 1) as usize;
        (col, row)
    }

    /// True if the field position lies on a hole pixel.
    pub fn is_hole_at(&self, x: f64, y: f64, width: f64, height: f64) -> bool {
        let (c, r) = self.pixel_of(x, y, width, height);
        self.hole(c, r)
    }

    /// True if the segment p-q touches any hole pixel (supercover traversal).
    pub fn segment_crosses_hole(&self, p: Position, q: Position, width: f64, height: f64) -> bool {
        // Work in continuous pixel coordinates.
        let sx = p.x / width * self.cols as f64;
        let sy = p.y / height * self.rows as f64;
        let ex = q.x / width * self.cols as f64;
        let ey = q.y / height * self.rows as f64;

        let clamp_c = |v: f64, hi: usize| (v.floor() as isize).clamp(0, hi as isize - 1) as usize;
        if sx == ex && sy == ey {
            return self.hole(clamp_c(sx, self.cols), clamp_c(sy, self.rows));
        }

        // Parameters t in (0,1) where the segment crosses integer grid lines.
        let dx = ex - sx;
        let dy = ey - sy;
        let mut vert = Vec::new();
        let mut horiz = Vec::new();
        if dx != 0.0 {
            let (lo, hi) = if sx < ex { (sx, ex) } else { (ex, sx) };
            let mut g = lo.ceil();
            while g <= hi {
                let t = (g - sx) / dx;
                if t > 0.0 && t < 1.0 {
                    vert.push(t);
                }
                g += 1.0;
            }
        }
        if dy != 0.0 {
            let (lo, hi) = if sy < ey { (sy, ey) } else { (ey, sy) };
            let mut g = lo.ceil();
            while g <= hi {
                let t = (g - sy) / dy;
                if t > 0.0 && t < 1.0 {
                    horiz.push(t);
                }
                g += 1.0;
            }
        }

        const EPS: f64 = 1e-12;
        // Corner crossings (a t present in both lists) touch all four pixels
        // around the corner; a true supercover must include the diagonal pair.
        for &tv in &vert {
            if horiz.iter().any(|&th| (th - tv).abs() < EPS) {
                let cx = (sx + tv * dx).round() as isize;
                let cy = (sy + tv * dy).round() as isize;
                for (ox, oy) in [(-1, -1), (-1, 0), (0, -1), (0, 0)] {
                    let c = cx + ox;
                    let r = cy + oy;
                    if c >= 0 && r >= 0 && (c as usize) < self.cols && (r as usize) < self.rows
                        && self.hole(c as usize, r as usize)
                    {
                        return true;
                    }
                }
            }
        }

        // Interval midpoints between consecutive crossings give the interior
        // pixels of the traversal.
        let mut ts: Vec<f64> = Vec::with_capacity(vert.len() + horiz.len() + 2);
        ts.push(0.0);
        ts.extend_from_slice(&vert);
        ts.extend_from_slice(&horiz);
        ts.push(1.0);
        ts.sort_by(f64::total_cmp);
        for w in ts.windows(2) {
            if w[1] - w[0] < EPS {
                continue;
            }
            let tm = 0.5 * (w[0] + w[1]);
            let c = clamp_c(sx + tm * dx, self.cols);
            let r = clamp_c(sy + tm * dy, self.rows);
            if self.hole(c, r) {
                return true;
            }
        }
        false
    }

    /// Parses a PGM file (P2 or P5); values above half the maximum are holes.
    ///
    /// The source image's row 0 (top) is flipped so that in-memory row 0 is
    /// the bottom of the field, matching the renderer's y-up convention.
    /// A header comment `# edge-pruning: on` (as written by [`Mask::to_pgm`])
    /// turns on link pruning, so a mask survives a file round trip unchanged.
    pub fn from_pgm<R: Read>(reader: R, name: &str) -> Result<Mask, NetError> {
        let mut bytes = Vec::new();
        let mut r = std::io::BufReader::new(reader);
        r.read_to_end(&mut bytes)?;
        let parse_err = |msg: &str| NetError::Parse { line: 0, msg: format!("pgm: {msg}") };

        // Header tokens may be separated by whitespace and '#' comments.
        let mut pos = 0usize;
        let mut next_token = |bytes: &[u8]| -> Result<String, NetError> {
            let mut tok = String::new();
            while pos < bytes.len() {
                let b = bytes[pos];
                if b == b'#' {
                    while pos < bytes.len() && bytes[pos] != b'\n' {
                        pos += 1;
                    }
                } else if b.is_ascii_whitespace() {
                    if !tok.is_empty() {
                        return Ok(tok);
                    }
                    pos += 1;
                } else {
                    tok.push(b as char);
                    pos += 1;
                }
            }
            if tok.is_empty() {
                Err(NetError::Parse { line: 0, msg: "pgm: unexpected end of header".into() })
            } else {
                Ok(tok)
            }
        };

        let magic = next_token(&bytes)?;
        if magic != "P2" && magic != "P5" {
            return Err(parse_err(&format!("unsupported magic {magic}")));
        }
        let cols: usize = next_token(&bytes)?.parse().map_err(|_| parse_err("bad width"))?;
        let rows: usize = next_token(&bytes)?.parse().map_err(|_| parse_err("bad height"))?;
        let maxval: u32 = next_token(&bytes)?.parse().map_err(|_| parse_err("bad maxval"))?;
        if cols == 0 || rows == 0 || maxval == 0 || maxval > 65535 {
            return Err(parse_err("bad dimensions"));
        }
        let mut values = Vec::with_capacity(cols * rows);
        // Comments may appear anywhere in an ASCII file but only before the
        // raster of a binary one; option scanning below respects that.
        let mut comment_limit = bytes.len();
        if magic == "P2" {
            for _ in 0..cols * rows {
                let v: u32 = next_token(&bytes)?.parse().map_err(|_| parse_err("bad sample"))?;
                values.push(v);
            }
        } else {
            // P5: exactly one whitespace byte after maxval, then raster.
            pos += 1;
            comment_limit = pos.min(bytes.len());
            let per = if maxval > 255 { 2 } else { 1 };
            if bytes.len() < pos + cols * rows * per {
                return Err(parse_err("truncated raster"));
            }
            for i in 0..cols * rows {
                let v = if per == 1 {
                    bytes[pos + i] as u32
                } else {
                    ((bytes[pos + 2 * i] as u32) << 8) | bytes[pos + 2 * i + 1] as u32
                };
                values.push(v);
            }
        }

        let marker = b"# edge-pruning: on";
        let pruning = bytes[..comment_limit].windows(marker.len()).any(|w| w == marker);

        let mut holes = vec![false; cols * rows];
        for (i, &v) in values.iter().enumerate() {
            let img_row = i / cols;
            let col = i % cols;
            let row = rows - 1 - img_row; // flip to y-up
            holes[row * cols + col] = 2 * v > maxval;
        }
        Ok(Mask::new(cols, rows, holes, name).with_edge_pruning(pruning))
    }

    /// Writes the mask as ASCII PGM (holes = 255), recording link pruning as
    /// a header comment that [`Mask::from_pgm`] understands.
    pub fn to_pgm<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "P2")?;
        if self.edge_pruning {
            writeln!(w, "# edge-pruning: on")?;
        }
        writeln!(w, "{} {}", self.cols, self.rows)?;
        writeln!(w, "255")?;
        for img_row in 0..self.rows {
            let row = self.rows - 1 - img_row; // flip back to image convention
            let line: Vec<&str> = (0..self.cols)
                .map(|c| if self.hole(c, row) { "255" } else { "0" })
                .collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    /// Random round lakes covering roughly a fifth of the field.
    pub fn synthetic_lakes(seed: u64) -> Mask {
        let (cols, rows) = (128usize, 128usize);
        let mut holes = vec![false; cols * rows];
        let mut rng = rng::stream(seed, &[STREAM_MASK, 1]);
        let mut fraction = 0.0;
        let mut blobs = 0;
        while fraction < 0.18 && blobs < 64 {
            let cx = rng::next_f64(&mut rng) * cols as f64;
            let cy = rng::next_f64(&mut rng) * rows as f64;
            let radius = 6.0 + rng::next_f64(&mut rng) * 12.0;
            for r in 0..rows {
                for c in 0..cols {
                    let d2 = (c as f64 + 0.5 - cx).powi(2) + (r as f64 + 0.5 - cy).powi(2);
                    if d2 <= radius * radius {
                        holes[r * cols + c] = true;
                    }
                }
            }
            blobs += 1;
            fraction = holes.iter().filter(|&&h| h).count() as f64 / holes.len() as f64;
        }
        Mask::new(cols, rows, holes, "lakes")
    }

    /// Street grid: terrain is hole except corridors every 24 px, 8 px wide.
    pub fn synthetic_streets() -> Mask {
        let (cols, rows) = (120usize, 120usize);
        let (pitch, width) = (24usize, 8usize);
        let mut holes = vec![true; cols * rows];
        for r in 0..rows {
            for c in 0..cols {
                if c % pitch < width || r % pitch < width {
                    holes[r * cols + c] = false;
                }
            }
        }
        Mask::new(cols, rows, holes, "streets")
    }

    /// City blocks with jittered building footprints; intended for use with
    /// `edge_pruning` so buildings also block radio visibility.
    pub fn synthetic_canyon(seed: u64) -> Mask {
        let (cols, rows) = (120usize, 120usize);
        let block = 20usize;
        let mut holes = vec![false; cols * rows];
        let mut rng = rng::stream(seed, &[STREAM_MASK, 2]);
        for by in 0..rows / block {
            for bx in 0..cols / block {
                let bw = 11 + rng::next_index(&mut rng, 4); // 11..14 px
                let bh = 11 + rng::next_index(&mut rng, 4);
                let ox = rng::next_index(&mut rng, block - bw - 1) + 1;
                let oy = rng::next_index(&mut rng, block - bh - 1) + 1;
                for r in 0..bh {
                    for c in 0..bw {
                        let rr = by * block + oy + r;
                        let cc = bx * block + ox + c;
                        holes[rr * cols + cc] = true;
                    }
                }
            }
        }
        Mask::new(cols, rows, holes, "canyon").with_edge_pruning(true)
    }

    /// The three shipped synthetic masks by name, with frozen seeds so a
    /// builtin name always denotes the same pixels (the `fixtures/masks`
    /// PGM files are generated from these).
    pub fn builtin(name: &str) -> Option<Mask> {
        match name {
            "lakes" => Some(Mask::synthetic_lakes(11)),
            "streets" => Some(Mask::synthetic_streets()),
            "canyon" => Some(Mask::synthetic_canyon(5)),
            _ => None,
        }
    }
}
