//! Thin command-line front end over the library: synthesize far-field
//! matrices, perturb them, retrieve phase, and evaluate indicators, all
//! through the text formats so runs can be scripted and diffed.
//!
//! The end-to-end pipelines are `scheme-one` and `scheme-two`; the other
//! subcommands expose the same stages piecewise for composition:
//!
//! ```text
//! refscat synth --config scene.cfg --strength-index 1 --kind modulus --out m1.pfft
//! refscat noise --in m1.pfft --out n1.pfft --model relative --level 0.1 --seed 8
//! refscat retrieve --in n0.pfft --in n1.pfft --in n2.pfft --out u.pfft
//! refscat indicate --config scene.cfg --in u.pfft --out grid.csv --pgm grid.pgm
//! ```

use clap::{Parser, Subcommand};
use refscat::forward::{
    far_field_combined, far_field_obstacle, far_field_point, DirectionGrid, FarFieldModel,
    PointScatterer,
};
use refscat::harness::{
    add_noise, read_far_field, run_scheme_one, run_scheme_two, write_far_field, write_grid,
    FarFieldFile, GridFormat, IndicatorKind, NoiseModel, NoiseSpec, ScenarioConfig,
};
use refscat::indicators::{
    f_matrix, indicator_i2, indicator_i3, indicator_itheta, indicator_iz0, GridField, ThetaSet,
};
use refscat::phase_retrieval::retrieve_far_field;
use refscat::{Error, Result};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "refscat",
    version,
    about = "2D acoustic far-field synthesis, phase retrieval, and sampling indicators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize one far-field matrix from a scenario file (no noise).
    Synth {
        /// Scenario file.
        #[arg(long)]
        config: PathBuf,
        /// Which entry of the config's strengths list to use.
        #[arg(long, default_value_t = 0)]
        strength_index: usize,
        /// Output kind: complex or modulus.
        #[arg(long, default_value = "complex")]
        kind: String,
        /// Override the config's forward model.
        #[arg(long)]
        model: Option<String>,
        /// Output `.pfft` path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Perturb a modulus file with seeded noise.
    Noise {
        /// Input modulus `.pfft`.
        #[arg(long = "in")]
        input: PathBuf,
        /// Output `.pfft` path.
        #[arg(long)]
        out: PathBuf,
        /// Noise model: relative or absolute.
        #[arg(long)]
        model: String,
        /// Noise level δ.
        #[arg(long)]
        level: f64,
        /// RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recover the phased far field from three modulus files.
    Retrieve {
        /// Modulus `.pfft` files; pass --in three times, one per strength.
        #[arg(long = "in")]
        inputs: Vec<PathBuf>,
        /// Output `.pfft` path for the recovered complex matrix.
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the configured indicator on the configured grid.
    Indicate {
        /// Scenario file supplying grid, indicator kind, Θ, and incidence.
        #[arg(long)]
        config: PathBuf,
        /// Phased far-field file (for the phased indicators).
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Modulus file measured with the reference point on.
        #[arg(long)]
        with: Option<PathBuf>,
        /// Modulus file measured with the reference point off.
        #[arg(long)]
        without: Option<PathBuf>,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Optional PGM heatmap path.
        #[arg(long)]
        pgm: Option<PathBuf>,
    },
    /// Phaseless pipeline: two synthetic measurements, noise, indicator.
    SchemeOne {
        /// Scenario file; strengths must be a zero and one τ₁.
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Optional PGM heatmap path.
        #[arg(long)]
        pgm: Option<PathBuf>,
    },
    /// Phased pipeline: three measurements, retrieval, indicator.
    SchemeTwo {
        /// Scenario file; strengths must be three with non-collinear geometry.
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Optional PGM heatmap path.
        #[arg(long)]
        pgm: Option<PathBuf>,
    },
}

fn synth(
    config: &Path,
    strength_index: usize,
    kind: &str,
    model: Option<&str>,
    out: &Path,
) -> Result<()> {
    let cfg = ScenarioConfig::load(config)?;
    if strength_index >= cfg.strengths.len() {
        return Err(Error::Domain(format!(
            "strength index {strength_index} out of range for {} strengths",
            cfg.strengths.len()
        )));
    }
    let model = match model {
        Some(name) => FarFieldModel::parse(name)?,
        None => cfg.model,
    };
    let grid = DirectionGrid::new(cfg.directions)?;
    let scene = cfg.build_scene()?;
    let point = PointScatterer { z0: cfg.z0, tau: cfg.strengths[strength_index] };
    let matrix = match model {
        FarFieldModel::ObstacleOnly => far_field_obstacle(&scene, cfg.k, cfg.quadrature, grid)?,
        FarFieldModel::PointOnly => far_field_point(cfg.k, grid, point)?,
        FarFieldModel::Additive | FarFieldModel::Coupled => {
            far_field_combined(&scene, cfg.k, cfg.quadrature, grid, point, model)?
        }
        FarFieldModel::Retrieved => {
            return Err(Error::Domain(
                "model 'retrieved' labels recovered data and cannot be synthesized".into(),
            ))
        }
    };
    let file = match kind {
        "complex" => FarFieldFile::Complex(matrix),
        "modulus" => FarFieldFile::Modulus(matrix.modulus()),
        other => return Err(Error::Parse(format!("unknown kind '{other}'"))),
    };
    write_far_field(&file, out)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn noise(input: &Path, out: &Path, model: &str, level: f64, seed: u64) -> Result<()> {
    let matrix = read_far_field(input)?.into_modulus()?;
    let spec = NoiseSpec::new(NoiseModel::parse(model)?, level, seed)?;
    let noisy = add_noise(&matrix, &spec)?;
    write_far_field(&FarFieldFile::Modulus(noisy), out)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn retrieve(inputs: &[PathBuf], out: &Path) -> Result<()> {
    if inputs.len() != 3 {
        return Err(Error::Domain(format!(
            "retrieval needs exactly three --in files, got {}",
            inputs.len()
        )));
    }
    let a = read_far_field(&inputs[0])?.into_modulus()?;
    let b = read_far_field(&inputs[1])?.into_modulus()?;
    let c = read_far_field(&inputs[2])?.into_modulus()?;
    let recovered = retrieve_far_field([&a, &b, &c])?;
    write_far_field(&FarFieldFile::Complex(recovered), out)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn indicate(
    config: &Path,
    input: Option<&Path>,
    with: Option<&Path>,
    without: Option<&Path>,
    out: &Path,
    pgm: Option<&Path>,
) -> Result<()> {
    let cfg = ScenarioConfig::load(config)?;
    let field = match (input, with, without) {
        (Some(path), None, None) => {
            let u = read_far_field(path)?.into_complex()?;
            match cfg.indicator {
                None | Some(IndicatorKind::I2) => indicator_i2(&u, &cfg.grid)?,
                Some(IndicatorKind::I3) => indicator_i3(&u, cfg.incidence, &cfg.grid)?,
                Some(other) => {
                    return Err(Error::Domain(format!(
                        "indicator {} needs the phaseless pair (--with/--without)",
                        other.name()
                    )))
                }
            }
        }
        (None, Some(with), Some(without)) => {
            let with = read_far_field(with)?.into_modulus()?;
            let without = read_far_field(without)?.into_modulus()?;
            let tau = with.tau.ok_or_else(|| {
                Error::Mismatch("the --with file carries no #tau header".into())
            })?;
            let f = f_matrix(&with, &without, tau)?;
            let wants_theta = match cfg.indicator {
                None => !cfg.theta_indices.is_empty(),
                Some(IndicatorKind::Iz0) => false,
                Some(IndicatorKind::ITheta) => true,
                Some(other) => {
                    return Err(Error::Domain(format!(
                        "indicator {} needs a phased far field (--in)",
                        other.name()
                    )))
                }
            };
            if wants_theta {
                let theta =
                    ThetaSet::from_indices(DirectionGrid::new(f.n)?, cfg.theta_indices.clone())?;
                indicator_itheta(&f, &theta, &cfg.grid)?
            } else {
                indicator_iz0(&f, &cfg.grid)?
            }
        }
        _ => {
            return Err(Error::Domain(
                "pass either --in (phased) or both --with and --without (phaseless)".into(),
            ))
        }
    };
    write_outputs(&field, out, pgm)
}

fn write_outputs(field: &GridField, out: &Path, pgm: Option<&Path>) -> Result<()> {
    write_grid(field, out, GridFormat::Csv)?;
    println!("wrote {}", out.display());
    if let Some(path) = pgm {
        write_grid(field, path, GridFormat::Pgm)?;
        println!("wrote {}", path.display());
    }
    let (value, at) = field.peak();
    println!("peak {:.6e} at ({}, {})", value, at[0], at[1]);
    Ok(())
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Synth { config, strength_index, kind, model, out } => {
            synth(&config, strength_index, &kind, model.as_deref(), &out)
        }
        Command::Noise { input, out, model, level, seed } => {
            noise(&input, &out, &model, level, seed)
        }
        Command::Retrieve { inputs, out } => retrieve(&inputs, &out),
        Command::Indicate { config, input, with, without, out, pgm } => indicate(
            &config,
            input.as_deref(),
            with.as_deref(),
            without.as_deref(),
            &out,
            pgm.as_deref(),
        ),
        Command::SchemeOne { config, out, pgm } => {
            let field = run_scheme_one(&ScenarioConfig::load(&config)?)?;
            write_outputs(&field, &out, pgm.as_deref())
        }
        Command::SchemeTwo { config, out, pgm } => {
            let field = run_scheme_two(&ScenarioConfig::load(&config)?)?;
            write_outputs(&field, &out, pgm.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
