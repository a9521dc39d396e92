use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tess_core::chain::{euler_characteristic, orient_chain};
use tess_core::export::{
    export_mesh, read_complex, write_complex, write_off, ExportOptions, ProjectionSpec, Selection,
};
use tess_core::homology::betti_numbers;
use tess_core::realize::ambient_dim;
use tess_core::symmetry::{group_elements, orbit_report, SymmetryContext};
use tess_core::verify::{spot_check_charts, verify_complex};
use tess_core::{CellComplex, SpaceTag};

#[derive(Parser)]
#[command(
    name = "tess",
    version,
    about = "Tessellations of CP^1, Fermat curves, CP^2 and Fermat surfaces"
)]
struct Cli {
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Cp1,
    Curve,
    Cp2,
    Surface,
}

impl Space {
    fn tag(self) -> SpaceTag {
        match self {
            Space::Cp1 => SpaceTag::Cp1,
            Space::Curve => SpaceTag::Curve,
            Space::Cp2 => SpaceTag::Cp2,
            Space::Surface => SpaceTag::Surface,
        }
    }
}

#[derive(Args)]
struct Target {
    #[arg(long, value_enum)]
    space: Space,
    /// Degree of the Fermat equation.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Build a complex and print its cell counts and Euler characteristic.
    Generate {
        #[command(flatten)]
        target: Target,
        /// Write the complex in the text format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the validators; exit status 1 if any check fails.
    Verify {
        #[arg(long, value_enum, required_unless_present = "input")]
        space: Option<Space>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..), required_unless_present = "input")]
        n: Option<u32>,
        /// Verify a serialized complex instead of generating one.
        #[arg(long, conflicts_with_all = ["space", "n"])]
        input: Option<PathBuf>,
        /// Number of random chart evaluations.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Betti numbers and torsion coefficients.
    Homology {
        #[command(flatten)]
        target: Target,
    },
    /// Orbits of the permutation-and-phase group.
    Orbits {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Sample edge (and optionally 2-cell) charts and write an OFF mesh.
    Export {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(2..))]
        samples: u64,
        /// Three rows of numbers; defaults to principal axes of the vertices.
        #[arg(long)]
        projection: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Draw the edges of every cell of this dimension, once per cell.
        #[arg(long)]
        dim: Option<usize>,
        /// Also sample 2-cells on a grid of this size.
        #[arg(long)]
        facets: Option<usize>,
    },
}

fn build(space: SpaceTag, n: u32) -> tess_core::Result<CellComplex> {
    match space {
        SpaceTag::Cp1 => tess_core::curve::cp1_tessellation(n),
        SpaceTag::Curve => tess_core::curve::curve_tessellation(n),
        SpaceTag::Cp2 => tess_core::cp2::cp2_tessellation(n),
        SpaceTag::Surface => tess_core::surface::surface_tessellation(n),
    }
}

fn slashed<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("/")
}

fn run(cli: Cli) -> tess_core::Result<bool> {
    match cli.command {
        Command::Generate { target, out } => {
            let c = build(target.space.tag(), target.n)?;
            println!("space {} n={}", c.space().as_str(), c.n());
            println!("counts {}", slashed(&c.counts()));
            println!("chi {}", euler_characteristic(&c));
            if let Some(path) = out {
                write_complex(&c, &path)?;
                println!("wrote {}", path.display());
            }
            Ok(true)
        }
        Command::Verify {
            space,
            n,
            input,
            samples,
        } => {
            let c = match (input, space, n) {
                (Some(path), _, _) => read_complex(&path)?,
                (None, Some(s), Some(n)) => build(s.tag(), n)?,
                _ => unreachable!("clap enforces the target"),
            };
            println!("space {} n={}", c.space().as_str(), c.n());
            let mut report = verify_complex(&c);
            if c.count(0) > 0 && samples > 0 {
                report.extend(spot_check_charts(&c, cli.seed, samples));
            }
            print!("{report}");
            let ok = report.passed();
            println!(
                "{}",
                if ok {
                    "verification passed"
                } else {
                    "verification FAILED"
                }
            );
            Ok(ok)
        }
        Command::Homology { target } => {
            let c = build(target.space.tag(), target.n)?;
            let h = betti_numbers(&orient_chain(&c)?);
            println!("space {} n={}", c.space().as_str(), c.n());
            println!("betti {}", slashed(&h.betti));
            if h.torsion_free() {
                println!("torsion none");
            } else {
                for (d, t) in h.torsion.iter().enumerate() {
                    if !t.is_empty() {
                        let parts: Vec<String> = t.iter().map(|k| format!("Z/{k}")).collect();
                        println!("torsion H_{d} {}", parts.join(" + "));
                    }
                }
            }
            Ok(true)
        }
        Command::Orbits { target, dim } => {
            let c = build(target.space.tag(), target.n)?;
            if let Some(d) = dim {
                if d > c.top_dim() {
                    return Err(tess_core::Error::DimensionMismatch(c.top_dim(), d));
                }
            }
            let group = group_elements(c.n(), ambient_dim(c.space()))?;
            let ctx = SymmetryContext::new(&c)?;
            let r = orbit_report(&ctx, &group)?;
            println!(
                "space {} n={} group order {}",
                c.space().as_str(),
                c.n(),
                r.group_order
            );
            let dims: Vec<usize> = match dim {
                Some(d) => vec![d],
                None => (0..=c.top_dim()).collect(),
            };
            for d in dims {
                let orbits = &r.orbits[d];
                let desc: Vec<String> = orbits
                    .iter()
                    .map(|o| {
                        format!(
                            "{}x{} [{}]",
                            o.cells.len(),
                            o.isotropy,
                            c.cell(d, o.cells[0]).label
                        )
                    })
                    .collect();
                println!("dim {d}: {} orbit(s): {}", orbits.len(), desc.join(", "));
            }
            Ok(true)
        }
        Command::Export {
            target,
            samples,
            projection,
            out,
            dim,
            facets,
        } => {
            let c = build(target.space.tag(), target.n)?;
            let proj = match projection {
                Some(p) => ProjectionSpec::from_file(&p)?,
                None => ProjectionSpec::principal(&c)?,
            };
            let selection = match dim {
                Some(d) => Selection::Dim(d),
                None => Selection::AllEdges,
            };
            let opts = ExportOptions {
                samples_per_edge: samples as usize,
                facet_grid: facets,
            };
            let mesh = export_mesh(&c, &opts, &proj, &selection)?;
            std::fs::write(&out, write_off(&mesh))?;
            println!(
                "points {} polylines {} ({} distinct edges) polygons {}",
                mesh.points.len(),
                mesh.polylines.len(),
                mesh.distinct_polyline_primitives(),
                mesh.polygons.len()
            );
            println!("wrote {}", out.display());
            Ok(true)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("TESS_THREADS") else {
        return Ok(());
    };
    let k: usize = v
        .parse()
        .ok()
        .filter(|k| *k > 0)
        .ok_or_else(|| format!("TESS_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(k)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
