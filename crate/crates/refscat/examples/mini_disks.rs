//! Localizes two well-separated small disks — radius 0.05 sound-soft at
//! (3,3) and radius 0.15 sound-hard at (1,1) — with both reconstruction
//! routes under 10% relative noise.
//!
//! Point-like scatterers are where the center-localizing indicators shine:
//! the phaseless indicator restricted to the four axis directions Θ and
//! the retrieved-phase single-incidence indicator each develop one
//! dominant local maximum per disk, and the maxima sit on the disk
//! centers to within the grid resolution.

use refscat::harness::{run_scheme_one, run_scheme_two, IndicatorKind, ScenarioConfig};
use refscat::indicators::GridField;

const SCENARIO: &str = "\
# Two mini-disks, reference point at (12,12), 10% noise.
k = 8
directions = 128
quadrature = 64
model = coupled

scatterer
kind = circle
center = 3,3
radius = 0.05
bc = dirichlet
end

scatterer
kind = circle
center = 1,1
radius = 0.15
bc = neumann
end

z0 = 12,12
noise = relative
noise-level = 0.1
noise-seed = 5
grid-x = -6,6
grid-y = -6,6
grid-spacing = 0.1
# Θ = the four axis directions of a 128-point grid.
theta-indices = 0,32,64,96
";

fn report(label: &str, field: &GridField) {
    let centers = [[3.0, 3.0], [1.0, 1.0]];
    let maxima = field.local_maxima();
    println!("{label}: {} local maxima, top two:", maxima.len());
    for (value, at) in maxima.iter().take(2) {
        let nearest = centers
            .iter()
            .map(|c| f64::hypot(at[0] - c[0], at[1] - c[1]))
            .fold(f64::INFINITY, f64::min);
        println!(
            "  {value:.4e} at ({:.2}, {:.2}) — {nearest:.3} from the nearest disk center",
            at[0], at[1]
        );
    }
}

fn main() -> refscat::Result<()> {
    let base = ScenarioConfig::parse(SCENARIO)?;

    let one = ScenarioConfig {
        strengths: vec![num_complex::Complex64::ZERO, num_complex::Complex64::ONE],
        ..base.clone()
    };
    report("phaseless, Θ-restricted", &run_scheme_one(&one)?);

    let two = ScenarioConfig {
        indicator: Some(IndicatorKind::I3),
        incidence: 0,
        ..base
    };
    report("retrieved phase, single incidence", &run_scheme_two(&two)?);
    Ok(())
}
