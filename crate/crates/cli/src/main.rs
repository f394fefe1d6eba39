mod input;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use toric_horo::correspond::verify_correspondence;
use toric_horo::exactla::rational::{format, frac};
use toric_horo::exactla::{QVector, Rational};
use toric_horo::fan::{hilbert_basis, is_polytopal, Cone, HilbertBasis};
use toric_horo::horo::{classify_limit_horo, default_schedule, pseudo_norm, verify_convergence, PolyNorm};
use toric_horo::json::{fan_to_json, polytope_to_json};
use toric_horo::toric::{
    affine_chart, classify_limit_complex, classify_limit_real, distinguished_point, orbit_table, PathSpec,
};

use input::InputError;

#[derive(Parser)]
#[command(name = "toric-horo", version, about = "Exact polytope, fan, toric and horofunction computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// JSON file, or `builtin:NAME` for a corpus fixture.
    input: String,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct PathOpts {
    /// Direction, e.g. `3/1,2`.
    #[arg(long)]
    u: String,
    /// Offset; zero when omitted.
    #[arg(long)]
    c: Option<String>,
    /// Imaginary part, taken modulo the integer lattice.
    #[arg(long)]
    y0: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of a polytope: polar, normalization, volume, fan and certificate.
    Analyze(Io),
    /// The polar polytope.
    Polar(Io),
    /// The fan of a polytope, or a fan file, with its axiom check.
    Fan(Io),
    /// Affine charts, distinguished points and orbit dimensions per cone.
    Charts(Io),
    /// Hilbert bases of the cones of a fan, or of the cone given by `--rays`.
    Hilbert {
        #[command(flatten)]
        io: Io,
        /// Generators separated by `;`, e.g. `0,1;2,-1`.
        #[arg(long)]
        rays: Option<String>,
    },
    /// Gauge against the pseudo-norm of the polar on random points.
    Norm {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Horofunction limit of a path and its convergence along a schedule.
    Horo {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        path: PathOpts,
        #[command(flatten)]
        sampling: Sampling,
        /// Comma-separated times; defaults to 1, 2, 4, ..., 2^16.
        #[arg(long)]
        t_schedule: Option<String>,
    },
    /// Horofunction and toric boundary point of a path.
    Classify {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        path: PathOpts,
    },
    /// Checks the boundary complex against the face complex of the polar.
    Verify(Io),
    /// Polytopality feasibility of a complete fan.
    Polytopal {
        #[command(flatten)]
        io: Io,
        /// Exit with status 1 unless strictly convex heights exist.
        #[arg(long)]
        expect_feasible: bool,
    },
    /// SVG of a planar polytope, its polar and its fan.
    Render(Io),
}

/// A report and whether its checks passed.
struct Report {
    body: String,
    ok: bool,
}

impl Report {
    fn json(value: Value, ok: bool) -> Report {
        let mut body = serde_json::to_string_pretty(&value).expect("serializable");
        body.push('\n');
        Report { body, ok }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn path_spec(opts: &PathOpts, dim: usize) -> Result<PathSpec, InputError> {
    Ok(PathSpec {
        u: input::vector(&opts.u, dim, "--u")?,
        c: match &opts.c {
            Some(c) => input::vector(c, dim, "--c")?,
            None => QVector::zeros(dim),
        },
        y0: opts.y0.as_deref().map(|y| input::vector(y, dim, "--y0")).transpose()?,
    })
}

fn random_points(dim: usize, sampling: &Sampling) -> Vec<QVector> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    (0..sampling.samples)
        .map(|_| (0..dim).map(|_| frac(rng.gen_range(-12..=12), rng.gen_range(1..=7))).collect())
        .collect()
}

fn hilbert_json(h: &HilbertBasis) -> Value {
    json!({
        "cone": h.cone_id,
        "elements": to_value(&h.elements),
        "lineality_generators": to_value(&h.lineality_generators),
    })
}

fn run(command: &Command) -> Result<Report, InputError> {
    match command {
        Command::Analyze(io) => {
            let p = input::load_polytope(&io.input)?;
            let polar = p.polar()?;
            let normal = p.normalize();
            let (fan, _) = input::load_fan(&io.input)?;
            let cert = verify_correspondence(&p)?;
            let integral = p.vertices().iter().all(QVector::is_integral);
            let value = json!({
                "polytope": polytope_to_json(&p),
                "polar": polytope_to_json(&polar),
                "f_vector": p.lattice().f_vector(),
                "volume": format(&p.volume()),
                "vertices_rational": true,
                "vertices_integral": integral,
                "normalization": {
                    "scale": format(&normal.scale),
                    "vertices": to_value(&normal.polytope.vertices()),
                    "primitive_vertex": normal.primitive_vertex,
                },
                "fan": {
                    "cones": fan.cones().len(),
                    "valid": fan.validate().is_valid(),
                    "complete": fan.is_complete()?,
                },
                "correspondence_passes": cert.passes(),
            });
            Ok(Report::json(value, true))
        }
        Command::Polar(io) => {
            let p = input::load_polytope(&io.input)?;
            Ok(Report::json(polytope_to_json(&p.polar()?), true))
        }
        Command::Fan(io) => {
            let (fan, _) = input::load_fan(&io.input)?;
            let report = fan.validate();
            let complete = if report.is_valid() { Some(fan.is_complete()?) } else { None };
            let mut value = fan_to_json(&fan);
            value["valid"] = Value::from(report.is_valid());
            value["violations"] = to_value(&report.violations);
            value["complete"] = to_value(&complete);
            Ok(Report::json(value, report.is_valid()))
        }
        Command::Charts(io) => {
            let (fan, _) = input::load_fan(&io.input)?;
            let orbits = orbit_table(&fan);
            let mut charts = Vec::new();
            for (cone, orbit) in fan.cones().iter().zip(&orbits) {
                let chart = affine_chart(cone);
                let point = distinguished_point(cone, &chart)?;
                charts.push(json!({
                    "cone": chart.cone_id,
                    "generators": to_value(&chart.generators),
                    "embedding_dim": chart.embedding_dim(),
                    "distinguished_point": point.coordinates,
                    "orbit_dim": orbit.orbit_dim,
                }));
            }
            Ok(Report::json(json!({ "dim": fan.dim(), "charts": charts }), true))
        }
        Command::Hilbert { io, rays } => {
            let bases: Vec<Value> = match rays {
                Some(text) => {
                    let gens = input::vectors(text)?;
                    let dim = gens.first().map_or(0, |g| g.len());
                    let cone = Cone::from_generators(dim, &gens)?;
                    vec![hilbert_json(&hilbert_basis(&cone))]
                }
                None => {
                    let (fan, _) = input::load_fan(&io.input)?;
                    fan.cones().iter().map(|c| hilbert_json(&hilbert_basis(c))).collect()
                }
            };
            Ok(Report::json(json!({ "bases": bases }), true))
        }
        Command::Norm { io, sampling } => {
            let p = input::load_polytope(&io.input)?;
            let norm = PolyNorm::new(&p)?;
            let mut rows = Vec::new();
            let mut ok = true;
            for x in random_points(p.dim(), sampling) {
                let g = norm.gauge(&x);
                let h = pseudo_norm(norm.polar().vertices(), &x)?;
                ok &= g == h;
                rows.push(json!({ "x": to_value(&x), "gauge": format(&g), "pseudo_norm": format(&h) }));
            }
            let value = json!({ "seed": sampling.seed, "identity_holds": ok, "points": rows });
            Ok(Report::json(value, ok))
        }
        Command::Horo {
            io,
            path,
            sampling,
            t_schedule,
        } => {
            let p = input::load_polytope(&io.input)?;
            let norm = PolyNorm::new(&p)?;
            let path = path_spec(path, p.dim())?;
            let schedule: Vec<Rational> = match t_schedule {
                Some(text) => input::rationals(text)?,
                None => default_schedule(),
            };
            let samples = random_points(p.dim(), sampling);
            let report = verify_convergence(&norm, &path, &samples, &schedule)?;
            let mut value = to_value(&report);
            value["seed"] = Value::from(sampling.seed);
            Ok(Report::json(value, report.stabilized && report.lipschitz_ok))
        }
        Command::Classify { io, path } => {
            let (fan, polytope) = input::load_fan(&io.input)?;
            let path = path_spec(path, fan.dim())?;
            let point = if path.y0.is_some() {
                classify_limit_complex(&fan, &path)?
            } else {
                classify_limit_real(&fan, &path)?
            };
            let mut value = json!({ "boundary_point": to_value(&point) });
            let mut ok = true;
            if let Some(p) = polytope {
                let norm = PolyNorm::new(&p)?;
                let h = classify_limit_horo(&norm, &path)?;
                ok = fan.cone_of_face(h.face) == Some(point.cone);
                value["horofunction"] = to_value(&h);
                value["consistent"] = Value::from(ok);
            }
            Ok(Report::json(value, ok))
        }
        Command::Verify(io) => {
            let p = input::load_polytope(&io.input)?;
            let report = verify_correspondence(&p)?;
            let mut value = to_value(&report);
            value["passes"] = Value::from(report.passes());
            Ok(Report::json(value, report.passes()))
        }
        Command::Polytopal { io, expect_feasible } => {
            let (fan, _) = input::load_fan(&io.input)?;
            let report = is_polytopal(&fan)?;
            let mut value = to_value(&report);
            if let Some(w) = &report.witness {
                value["witness"] = polytope_to_json(w);
            }
            Ok(Report::json(value, !expect_feasible || report.strictly_convex_feasible))
        }
        Command::Render(io) => {
            let p = input::load_polytope(&io.input)?;
            if p.dim() != 2 {
                return Err(InputError(format!("render needs a planar polytope, got dimension {}", p.dim())));
            }
            let (fan, _) = input::load_fan(&io.input)?;
            Ok(Report {
                body: render::svg(&p, &p.polar()?, &fan),
                ok: true,
            })
        }
    }
}

fn output_of(command: &Command) -> Option<&PathBuf> {
    match command {
        Command::Analyze(io)
        | Command::Polar(io)
        | Command::Fan(io)
        | Command::Charts(io)
        | Command::Verify(io)
        | Command::Render(io)
        | Command::Hilbert { io, .. }
        | Command::Norm { io, .. }
        | Command::Horo { io, .. }
        | Command::Classify { io, .. }
        | Command::Polytopal { io, .. } => io.output.as_ref(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let report = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match output_of(&cli.command) {
        Some(path) => {
            if let Err(e) = fs::write(path, &report.body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", report.body),
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
