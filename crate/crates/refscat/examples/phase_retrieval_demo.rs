//! Recovers a phased far-field matrix from three phaseless measurements.
//!
//! Each far-field entry with the reference point switched on sits at a
//! known offset from the obstacle's entry: measurement q places the value
//! on a circle of measured radius around an anchor determined by strength
//! τ_q. Three strengths whose anchors are not collinear pin the entry down
//! by intersecting circles — per-entry trilateration. With exact data from
//! the additive model the recovery is exact; noise moves the circles, and
//! the table shows how the recovered matrix degrades.

use num_complex::Complex64;
use refscat::forward::{
    far_field_combined, far_field_obstacle, DirectionGrid, FarFieldModel, PointScatterer, Scene,
};
use refscat::geometry::{BoundaryCondition, BoundaryCurve, Scatterer};
use refscat::harness::{add_noise, NoiseModel, NoiseSpec};
use refscat::phase_retrieval::retrieve_far_field;

fn main() -> refscat::Result<()> {
    let k = 2.0;
    let m = 64;
    let grid = DirectionGrid::new(32)?;
    let scene = Scene::new(vec![Scatterer {
        curve: BoundaryCurve::Kite { center: [0.0, 0.0] },
        bc: BoundaryCondition::Dirichlet,
    }])?;
    let z0 = [12.0, 12.0];
    let taus = [
        Complex64::new(-1.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
    ];

    let truth = far_field_obstacle(&scene, k, m, grid)?;
    let scale = truth.max_modulus();
    let moduli: Vec<_> = taus
        .iter()
        .map(|&tau| {
            far_field_combined(
                &scene,
                k,
                m,
                grid,
                PointScatterer { z0, tau },
                FarFieldModel::Additive,
            )
            .map(|t| t.modulus())
        })
        .collect::<refscat::Result<_>>()?;

    println!("sound-soft kite, k = {k}, N = {}, reference at ({}, {})", grid.len(), z0[0], z0[1]);
    println!("strengths: -1, 1, i; max |u∞| of the obstacle alone: {scale:.4}");
    println!("{:>10}  {:>14}", "noise δ", "sup error / max");
    for delta in [0.0, 1e-4, 1e-3, 1e-2] {
        let spec = NoiseSpec::new(NoiseModel::Relative, delta, 11)?;
        let mut noisy = Vec::new();
        for (q, matrix) in moduli.iter().enumerate() {
            noisy.push(add_noise(matrix, &spec.for_matrix(q))?);
        }
        let recovered = retrieve_far_field([&noisy[0], &noisy[1], &noisy[2]])?;
        let worst = recovered
            .entries
            .iter()
            .zip(&truth.entries)
            .fold(0.0f64, |a, (r, t)| a.max((r - t).norm()));
        println!("{delta:>10.0e}  {:>14.4e}", worst / scale);
    }
    println!("δ = 0 recovers the phased matrix to round-off; noise is amplified");
    println!("by the measured-radius-to-anchor-spacing ratio before it saturates");
    Ok(())
}
