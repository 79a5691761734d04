//! Per-level convergence diagnostics of S1.
//!
//! The angle-pair norm contracts at every level. The one-sided mismatch
//! between tangent and outgoing secant only obeys the same envelope: data
//! whose tangents follow the outgoing chords starts with zero mismatch,
//! which the first refinement then creates.

use std::f64::consts::TAU;

use clothoid_hermite::analysis::convergence_diagnostics;
use clothoid_hermite::{
    subdivide, FitOptions, HermiteCouple, HermiteSequence, InputDocument, Point2, SchemeSpec,
};

fn table(name: &str, seq: &HermiteSequence) {
    let scheme = SchemeSpec::lane_riesenfeld(1, FitOptions::default()).unwrap();
    let levels = subdivide(seq, &scheme, 8).unwrap();
    println!("{name}");
    println!("level   max secant   max |beta|   max exterior   max mismatch");
    for d in convergence_diagnostics(&levels) {
        println!(
            "{:>5} {:>12.4e} {:>12.4e} {:>14.4e} {:>14.4e}",
            d.level, d.max_secant, d.max_beta_norm, d.max_exterior_angle, d.max_tangent_mismatch
        );
    }
    println!();
}

fn main() {
    table("demo polygon", &InputDocument::demo().sequence);

    let k = 12;
    let points: Vec<Point2> = (0..k)
        .map(|j| {
            Point2::from_polar(
                1.0 + 0.2 * (3.0 * j as f64).sin(),
                TAU * j as f64 / k as f64,
            )
        })
        .collect();
    let chord_aligned = HermiteSequence::closed(
        (0..k)
            .map(|j| HermiteCouple::new(points[j], (points[(j + 1) % k] - points[j]).arg()))
            .collect(),
    )
    .unwrap();
    table("tangents along outgoing chords", &chord_aligned);
}
