//! Writes the three builtin obstacle masks to PGM files — the same pixels the
//! `lakes`, `streets` and `canyon` names denote everywhere in the library and
//! CLI. The shipped `fixtures/masks/*.pgm` files are produced by this program:
//!
//! ```text
//! cargo run -p hbr-sim --example export_masks [-- <output dir>]
//! ```

use std::path::Path;

use hbr_sim::Mask;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "fixtures/masks".into());
    std::fs::create_dir_all(&dir)?;
    for name in ["lakes", "streets", "canyon"] {
        let mask = Mask::builtin(name).expect("builtin mask");
        let path = Path::new(&dir).join(format!("{name}.pgm"));
        let mut buf = Vec::new();
        mask.to_pgm(&mut buf)?;
        std::fs::write(&path, &buf)?;
        println!(
            "wrote {} ({}x{}, {:.1}% holes{})",
            path.display(),
            mask.cols(),
            mask.rows(),
            100.0 * mask.hole_fraction(),
            if mask.edge_pruning() { ", link pruning" } else { "" }
        );
    }
    Ok(())
}
