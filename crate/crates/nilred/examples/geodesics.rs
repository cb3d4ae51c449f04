//! Geodesics through the identity: v'(t) = e^{t j(z0)} v0, with the central
//! component integrated by quadrature, plus the reported residuals of the
//! geodesic equations.
//!
//! ```sh
//! cargo run --example geodesics
//! ```

use nilred::catalog::{example_catalog, ExampleId};
use nilred::geodesic::{geodesic, speed_squared};

fn main() {
    let entry = example_catalog(ExampleId::H3Riemannian);
    let m = entry.as_metric().unwrap();
    let s = m.center_splitting().unwrap();

    // initial velocity e3 + e1, sampled over [0, 5]
    let grid: Vec<f64> = (0..=10).map(|i| i as f64 * 0.5).collect();
    let samples = geodesic(m, &s, &[1.0], &[1.0, 0.0], &grid).unwrap();

    println!("geodesic on h3 with gamma'(0) = e1 + e3:");
    println!("{:>5} {:>9} {:>9} {:>9} {:>10} {:>9}", "t", "x", "y", "z", "|v|^2", "residual");
    for sm in &samples {
        println!(
            "{:>5.2} {:>9.5} {:>9.5} {:>9.5} {:>10.6} {:>9.2e}",
            sm.t,
            sm.position.coords[0],
            sm.position.coords[1],
            sm.position.coords[2],
            speed_squared(m, &sm.velocity),
            sm.residual,
        );
    }
    println!();
    println!("the v-part spirals (v'(t) = (cos t, sin t)) while the central");
    println!("coordinate grows like (3t - sin t)/2; the speed is constant.");

    // degenerate j directions travel in straight lines
    let entry = example_catalog(ExampleId::RxH3Lorentz);
    let m = entry.as_metric().unwrap();
    let s = m.center_splitting().unwrap();
    let samples = geodesic(m, &s, &[1.0, 0.0], &[1.0, 0.0], &[0.0, 1.0, 2.0]).unwrap();
    println!();
    println!("r_x_h3_lorentz with z0 = e3 (j(e3) = 0): straight line");
    for sm in &samples {
        println!("  t={:.0}  position {:?}", sm.t, sm.position.coords);
    }
}
