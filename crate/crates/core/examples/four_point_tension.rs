//! Compare four-point tensions on the demo polygon: how rough is the
//! curvature of the limit curve?
//!
//! cargo run --example four_point_tension -- out/

use std::path::PathBuf;

use clothoid_hermite::{
    render_svg, run, FitOptions, FourPointOuter, InputDocument, SchemeSpec, SvgOptions,
};

/// Total variation of curvature along the closed polygon.
fn curvature_variation(kappa: &[f64]) -> f64 {
    let n = kappa.len();
    (0..n).map(|j| (kappa[(j + 1) % n] - kappa[j]).abs()).sum()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from);
    let doc = InputDocument::demo();
    println!("omega      outer              curvature variation");
    for (label, omega) in [
        ("-1/32", -1.0 / 32.0),
        ("-1/18", -1.0 / 18.0),
        ("-1/16", -1.0 / 16.0),
        ("-1/9", -1.0 / 9.0),
    ] {
        for outer in [
            FourPointOuter::ClothoidAverage,
            FourPointOuter::ComponentwiseMean,
        ] {
            let scheme = SchemeSpec::four_point(omega, FitOptions::default())?.with_outer(outer);
            let report = run(&doc.sequence, &scheme, 6, true)?;
            let kappa = &report.curvature.as_ref().unwrap().kappa;
            println!(
                "{label:<10} {:<18} {:.3}",
                format!("{outer:?}"),
                curvature_variation(kappa)
            );
            if let (Some(dir), FourPointOuter::ClothoidAverage) = (&dir, outer) {
                std::fs::create_dir_all(dir)?;
                let name = format!("fourpoint_{}.svg", label.replace(['-', '/'], "_"));
                std::fs::write(dir.join(name), render_svg(&report, &SvgOptions::default()))?;
            }
        }
    }
    Ok(())
}
