//! Synthesizes far-field matrices for each built-in boundary curve and
//! checks two structural identities on the way: reciprocity (swapping and
//! reversing observation and incidence leaves the pattern unchanged) and
//! the translation rule (shifting the scatterer multiplies each entry by a
//! unit-modulus phase, so the modulus is blind to the shift).
//!
//! The kite's matrix is also written to a `.pfft` file in the system temp
//! directory to show the serialization round trip.

use refscat::forward::{far_field_obstacle, DirectionGrid, Scene};
use refscat::geometry::{BoundaryCondition, BoundaryCurve, Scatterer};
use refscat::harness::{read_far_field, write_far_field, FarFieldFile};

fn soft(curve: BoundaryCurve) -> refscat::Result<Scene> {
    Scene::new(vec![Scatterer { curve, bc: BoundaryCondition::Dirichlet }])
}

fn main() -> refscat::Result<()> {
    let k = 2.0;
    let m = 64;
    let grid = DirectionGrid::new(16)?;
    let curves = [
        BoundaryCurve::Kite { center: [0.0, 0.0] },
        BoundaryCurve::Peanut { center: [0.0, 0.0] },
        BoundaryCurve::Pear { center: [0.0, 0.0] },
        BoundaryCurve::Circle { center: [0.0, 0.0], radius: 1.5 },
    ];

    println!("k = {k}, M = {m}, N = {}", grid.len());
    println!("{:>8}  {:>11}  {:>13}  {:>17}", "curve", "max |u∞|", "reciprocity", "modulus shift-dev");
    for curve in curves {
        let table = far_field_obstacle(&soft(curve.clone())?, k, m, grid)?;

        // Reciprocity: u∞(x̂, θ̂) = u∞(−θ̂, −x̂).
        let mut recip = 0.0f64;
        for j in 0..grid.len() {
            for l in 0..grid.len() {
                let mirrored = table.get(grid.opposite(l)?, grid.opposite(j)?);
                recip = recip.max((table.get(j, l) - mirrored).norm());
            }
        }

        // Translation: moving the curve leaves |u∞| untouched.
        let shifted_curve = match curve.clone() {
            BoundaryCurve::Kite { center } => BoundaryCurve::Kite { center: [center[0] + 0.8, center[1] - 1.1] },
            BoundaryCurve::Peanut { center } => BoundaryCurve::Peanut { center: [center[0] + 0.8, center[1] - 1.1] },
            BoundaryCurve::Pear { center } => BoundaryCurve::Pear { center: [center[0] + 0.8, center[1] - 1.1] },
            BoundaryCurve::Circle { center, radius } => {
                BoundaryCurve::Circle { center: [center[0] + 0.8, center[1] - 1.1], radius }
            }
        };
        let shifted = far_field_obstacle(&soft(shifted_curve)?, k, m, grid)?;
        let mut shift_dev = 0.0f64;
        for (a, b) in table.entries.iter().zip(&shifted.entries) {
            shift_dev = shift_dev.max((a.norm() - b.norm()).abs());
        }

        println!(
            "{:>8}  {:>11.4}  {:>13.3e}  {:>17.3e}",
            curve.kind_name(),
            table.max_modulus(),
            recip,
            shift_dev
        );

        if curve.kind_name() == "kite" {
            let mut path = std::env::temp_dir();
            path.push("far_field_kite.pfft");
            write_far_field(&FarFieldFile::Complex(table), &path)?;
            let back = read_far_field(&path)?.into_complex()?;
            println!("          wrote {} and read it back, N = {}", path.display(), back.n);
        }
    }
    Ok(())
}
