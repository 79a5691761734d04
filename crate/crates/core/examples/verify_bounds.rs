//! Sweep the fit defect and the contraction ratios and compare them with
//! the published bounds.
//!
//! cargo run --release --example verify_bounds -- 257 400000

use std::time::Instant;

use clothoid_hermite::analysis::verify_bounds;

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().unwrap());
    let resolution = args.next().unwrap_or(129);
    let samples = args.next().unwrap_or(100_000);
    let start = Instant::now();
    let report = verify_bounds(resolution, samples);
    println!(
        "defect sweep {resolution}x{resolution}: worst at {:?}",
        report.defect.argmax_location
    );
    println!(
        "contraction sweep ({samples} samples): worst r at {:?}, worst rho at {:?}",
        report.contraction.argmax_r, report.contraction.argmax_rho
    );
    for check in &report.checks {
        println!(
            "{:<36} {:>12.4e}  bound {:>9.2e}  {}",
            check.name,
            check.value,
            check.bound,
            if check.pass { "ok" } else { "VIOLATED" }
        );
    }
    println!("{:.2}s", start.elapsed().as_secs_f64());
    if !report.all_pass() {
        std::process::exit(2);
    }
}
