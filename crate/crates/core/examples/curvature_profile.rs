//! Print the curvature profile of a refined curve as CSV.
//!
//! cargo run --example curvature_profile -- [input.json] > kappa.csv

use clothoid_hermite::io::curvature_csv;
use clothoid_hermite::{parse_input, run, FitOptions, InputDocument, SchemeSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = match std::env::args().nth(1) {
        Some(path) => parse_input(&std::fs::read(path)?)?,
        None => InputDocument::demo(),
    };
    let scheme = SchemeSpec::lane_riesenfeld(3, FitOptions::default())?;
    let report = run(&doc.sequence, &scheme, 5, true)?;
    print!(
        "{}",
        curvature_csv(report.curvature.as_ref().expect("closed demo curve"))
    );
    Ok(())
}
