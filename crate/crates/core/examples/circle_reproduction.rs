//! Points and tangents sampled from a circle stay on it under refinement.

use std::f64::consts::{FRAC_PI_2, TAU};

use clothoid_hermite::analysis::circle_reproduction_error;
use clothoid_hermite::{subdivide, FitOptions, HermiteCouple, HermiteSequence, Point2, SchemeSpec};

fn main() {
    let (center, radius) = (Point2::new(2.0, -1.0), 3.0);
    let seq = HermiteSequence::closed(
        (0..6)
            .map(|j| {
                let theta = TAU * j as f64 / 6.0;
                HermiteCouple::new(
                    center + Point2::from_polar(radius, theta),
                    theta + FRAC_PI_2,
                )
            })
            .collect(),
    )
    .unwrap();

    println!("scheme  fit        levels  max |p - c| / r - 1   couple error");
    for n in 1..=3 {
        for (label, fit) in [
            ("default", FitOptions::default()),
            ("reference", FitOptions::reference()),
        ] {
            let scheme = SchemeSpec::lane_riesenfeld(n, fit).unwrap();
            let levels = subdivide(&seq, &scheme, 6).unwrap();
            let radial = levels
                .iter()
                .flat_map(|l| l.couples())
                .map(|h| ((h.point - center).norm() / radius - 1.0).abs())
                .fold(0.0, f64::max);
            println!(
                "S{n}      {label:<10} {:>6}  {radial:>18.3e}   {:.3e}",
                levels.len() - 1,
                circle_reproduction_error(&levels, center, radius)
            );
        }
    }
}
