//! Render the demo polygon refined by S1, S2 and S3 as SVG files.
//!
//! cargo run --example lane_riesenfeld_gallery -- out/

use std::path::PathBuf;

use clothoid_hermite::{render_svg, run, FitOptions, InputDocument, SchemeSpec, SvgOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "gallery".into()));
    std::fs::create_dir_all(&dir)?;
    let doc = InputDocument::demo();
    for n in 1..=3 {
        let scheme = SchemeSpec::lane_riesenfeld(n, FitOptions::default())?;
        let report = run(&doc.sequence, &scheme, 6, true)?;
        let path = dir.join(format!("lr{n}.svg"));
        std::fs::write(&path, render_svg(&report, &SvgOptions::default()))?;
        let kappa = &report.curvature.as_ref().unwrap().kappa;
        let (lo, hi) = kappa
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &k| {
                (l.min(k), h.max(k))
            });
        println!(
            "{}: {} couples, curvature in [{lo:.3}, {hi:.3}]",
            path.display(),
            report.levels.last().unwrap().len()
        );
    }
    Ok(())
}
