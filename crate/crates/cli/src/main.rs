use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use betahull::error::{Error, Result};
use betahull::events::event_schedule;
use betahull::fitting::{fit_fixed, fit_report, fit_sweep};
use betahull::fixtures::{gen_bimodal_area, gen_bimodal_perimeter};
use betahull::io::{read_points, render_svg, snapshot_json, to_json_string, write_points, RenderSpec};
use betahull::objectives::{maximize, Objective, OptOptions};
use betahull::oracle::{
    exhaustive_fit, free_perimeter, gen_random, grid_area, grid_optimize, naive_staircase, slab_measure,
    structure_changes, GridSpec, GridTarget,
};
use betahull::sweep::SweepState;
use betahull::{hull_fixed, Angle, Point, StaircaseKind};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "betahull", version, about = "O-beta hulls under an angular sweep")]
struct Cli {
    /// Read and print angles in degrees instead of radians.
    #[arg(long, global = true)]
    degrees: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Input {
    #[arg(long, short)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hull at a fixed angle.
    Hull {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Overlay the best chain at this angle on the SVG.
        #[arg(long)]
        fit: bool,
        /// Fill the hull polygon and draw antennas on the SVG.
        #[arg(long)]
        polygon: bool,
    },
    /// Full event schedule.
    Events {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Replay events up to an angle and print the hull there.
    Sweep {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_negative_numbers = true)]
        at: f64,
    },
    /// Angle maximizing area or perimeter.
    Opt {
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        #[command(flatten)]
        input: Input,
        /// Include the per-interval coefficients.
        #[arg(long)]
        profile: bool,
    },
    /// (2,beta)-chain fitting; the best angle unless --beta is given.
    Fit {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
        /// Also compare against the event-only and all-pairs searches.
        #[arg(long, conflicts_with = "beta")]
        report: bool,
    },
    /// Write a point set.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        beta0: Option<f64>,
        #[arg(long)]
        beta1: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Brute-force reference computations.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Subcommand)]
enum OracleCmd {
    /// One staircase by pairwise dominance.
    Staircase {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        beta: f64,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Area by grid membership and by slabs.
    Area {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1000)]
        resolution: usize,
    },
    /// Antenna-free perimeter from the quadratic structure.
    Perimeter {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        beta: f64,
    },
    /// Fitting tolerance over every u-order split.
    Fit {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        beta: f64,
    },
    /// Best of equally spaced angles.
    Grid {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long, default_value_t = 20000)]
        samples: usize,
    },
    /// Angles where the structure changes, by scanning.
    Changes {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Area,
    Perimeter,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Random,
    BimodalArea,
    BimodalPerimeter,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Tr,
    Tl,
    Br,
    Bl,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Area,
    Perimeter,
    Fit,
}

struct Ctx {
    degrees: bool,
}

impl Ctx {
    fn angle(&self, x: f64) -> Result<Angle> {
        if self.degrees {
            Angle::from_degrees(x)
        } else {
            Angle::new(x)
        }
    }

    fn show(&self, a: Angle) -> f64 {
        if self.degrees {
            a.radians().to_degrees()
        } else {
            a.radians()
        }
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn points(i: &Input) -> Result<Vec<Point>> {
    read_points(&i.input)
}

fn run_cmd(cli: Cli) -> Result<()> {
    let cx = Ctx { degrees: cli.degrees };
    match cli.cmd {
        Cmd::Hull { input, beta, json, svg, fit, polygon } => {
            let p = points(&input)?;
            let beta = cx.angle(beta)?;
            let snap = hull_fixed(&p, beta)?;
            let mut v = snapshot_json(&snap);
            v["beta"] = json!(cx.show(beta));
            if let Some(path) = svg {
                let chain = if fit { Some(fit_fixed(&p, beta)?) } else { None };
                let mut spec = RenderSpec::default();
                spec.show.polygon = polygon;
                spec.show.antennas = polygon;
                fs::write(path, render_svg(&snap, &spec, chain.as_ref()))?;
            }
            emit(&to_json_string(&v), json.as_deref())
        }
        Cmd::Events { input, json } => {
            let p = points(&input)?;
            let mut v = serde_json::to_value(event_schedule(&p)?).expect("events serialize");
            if cx.degrees {
                for e in v.as_array_mut().into_iter().flatten() {
                    e["angle"] = json!(e["angle"].as_f64().unwrap_or(f64::NAN).to_degrees());
                }
            }
            emit(&to_json_string(&v), json.as_deref())
        }
        Cmd::Sweep { input, at } => {
            let p = points(&input)?;
            let at = cx.angle(at)?;
            let mut st = SweepState::new(&p)?;
            st.advance_to(at)?;
            let mut snap = st.snapshot();
            snap.beta = at;
            let mut v = snapshot_json(&snap);
            v["beta"] = json!(cx.show(at));
            v["events_applied"] = json!(st.cursor());
            emit(&to_json_string(&v), None)
        }
        Cmd::Opt { objective, input, profile } => {
            let p = points(&input)?;
            let objective = match objective {
                ObjectiveArg::Area => Objective::Area,
                ObjectiveArg::Perimeter => Objective::Perimeter,
            };
            let r = maximize(&p, objective, OptOptions { profile, ..Default::default() })?;
            let mut v = serde_json::to_value(&r).expect("result serializes");
            v["best_angle"] = json!(cx.show(r.best_angle));
            emit(&to_json_string(&v), None)
        }
        Cmd::Fit { input, beta, report } => {
            let p = points(&input)?;
            let mut v = match (beta, report) {
                (Some(b), _) => serde_json::to_value(fit_fixed(&p, cx.angle(b)?)?),
                (None, false) => serde_json::to_value(fit_sweep(&p)?),
                (None, true) => serde_json::to_value(fit_report(&p)?),
            }
            .expect("fit serializes");
            let best = if report { &mut v["best"] } else { &mut v };
            if let Some(b) = best["beta"].as_f64() {
                best["beta"] = json!(cx.show(Angle::clamped(b)));
            }
            emit(&to_json_string(&v), None)
        }
        Cmd::Gen { kind, n, seed, beta0, beta1, out } => {
            let pair = || -> Result<(Angle, Angle)> {
                match (beta0, beta1) {
                    (Some(a), Some(b)) => Ok((cx.angle(a)?, cx.angle(b)?)),
                    _ => Err(Error::Parse { line: 0, msg: "bimodal kinds need --beta0 and --beta1".into() }),
                }
            };
            let p = match kind {
                GenKind::Random if n == 0 => return Err(Error::Empty),
                GenKind::Random => gen_random(n, seed),
                GenKind::BimodalArea => {
                    let (a, b) = pair()?;
                    gen_bimodal_area(a, b)?
                }
                GenKind::BimodalPerimeter => {
                    let (a, b) = pair()?;
                    gen_bimodal_perimeter(a, b)?
                }
            };
            Ok(fs::write(out, write_points(&p))?)
        }
        Cmd::Oracle(o) => oracle(&cx, o),
    }
}

fn oracle(cx: &Ctx, cmd: OracleCmd) -> Result<()> {
    let v = match cmd {
        OracleCmd::Staircase { input, beta, kind } => {
            let kind = match kind {
                KindArg::Tr => StaircaseKind::TR,
                KindArg::Tl => StaircaseKind::TL,
                KindArg::Br => StaircaseKind::BR,
                KindArg::Bl => StaircaseKind::BL,
            };
            let s = naive_staircase(&points(&input)?, cx.angle(beta)?, kind)?;
            json!({"kind": kind.name(), "vertices": s.vertices})
        }
        OracleCmd::Area { input, beta, resolution } => {
            let p = points(&input)?;
            let beta = cx.angle(beta)?;
            let grid = grid_area(&p, beta, GridSpec::new(resolution)?);
            let (slab, _) = slab_measure(&p, beta);
            json!({"beta": cx.show(beta), "grid_area": grid, "slab_area": slab})
        }
        OracleCmd::Perimeter { input, beta } => {
            let beta = cx.angle(beta)?;
            json!({"beta": cx.show(beta), "perimeter": free_perimeter(&points(&input)?, beta)?})
        }
        OracleCmd::Fit { input, beta } => {
            let beta = cx.angle(beta)?;
            json!({"beta": cx.show(beta), "mu": exhaustive_fit(&points(&input)?, beta)?})
        }
        OracleCmd::Grid { input, target, samples } => {
            let target = match target {
                TargetArg::Area => GridTarget::Area,
                TargetArg::Perimeter => GridTarget::Perimeter,
                TargetArg::Fit => GridTarget::Fit,
            };
            let (a, val) = grid_optimize(&points(&input)?, target, samples)?;
            json!({"best_angle": cx.show(a), "best_value": val, "samples": samples})
        }
        OracleCmd::Changes { input, samples } => {
            let found = structure_changes(&points(&input)?, samples, 1e-12)?;
            let found: Vec<f64> = found.into_iter().map(|a| cx.show(Angle::clamped(a))).collect();
            json!({"samples": samples, "angles": found})
        }
    };
    emit(&to_json_string(&v), None)
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// status: 0 on success, 2 for bad usage or input, 3 when an internal check
/// fails.
pub fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_cmd(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                2
            } else {
                3
            }
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
