//! Fit a clothoid through two Hermite couples and inspect it.
//!
//! cargo run --example fit_segment -- 0.9 -0.3

use clothoid_hermite::{fit_hermite, FitOptions, HermiteCouple, Point2, QuadratureConfig};

fn main() {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("angles in radians"))
        .collect();
    let (a0, a1) = match args[..] {
        [a0, a1] => (a0, a1),
        _ => (0.9, -0.3),
    };
    let h0 = HermiteCouple::new(Point2::new(0.0, 0.0), a0);
    let h1 = HermiteCouple::new(Point2::new(3.0, 0.5), a1);

    for steps in 0..=2 {
        let opts = FitOptions::new(steps, QuadratureConfig::ACCURATE).unwrap();
        let (seg, diag) = fit_hermite(&h0, &h1, &opts).unwrap();
        println!(
            "newton {steps}: beta = ({:.6}, {:.6}, {:.6}), defect = {:.3e}, end angle error = {:.3e}",
            seg.beta.b0,
            seg.beta.bh,
            seg.beta.b1,
            diag.defect,
            seg.angle(1.0) - a1
        );
    }

    let (seg, _) = fit_hermite(&h0, &h1, &FitOptions::reference()).unwrap();
    println!("\n     t        x         y      angle   curvature");
    for k in 0..=8 {
        let t = k as f64 / 8.0;
        let h = seg.eval(t);
        println!(
            "{t:6.3} {:9.5} {:9.5} {:9.5} {:9.5}",
            h.point.x,
            h.point.y,
            h.angle,
            seg.curvature(t)
        );
    }
}
