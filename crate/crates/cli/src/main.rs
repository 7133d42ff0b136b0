//! `mteach`: sample shapes, compute barcodes and Betti numbers, emit and
//! check teaching sets, learn from demonstrations, and run the seeded
//! experiments.
//!
//! Exit codes: 0 success, 1 bad input (flags, config, files, parameters),
//! 2 internal failure (writing outputs, worker pool, panics).

mod config;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use config::Settings;
use manifold_teach::complex::{build_demo_complex, DemonstrationSet};
use manifold_teach::experiments::{self as exp, ExperimentConfig};
use manifold_teach::homology::{betti_gf2, point_cloud_barcode};
use manifold_teach::io::{points_from_csv, points_to_csv};
use manifold_teach::learners::learn_union_of_balls;
use manifold_teach::teaching::{self, TeachingSet};
use manifold_teach::{svg, Point};

#[derive(Parser, Debug)]
#[command(name = "mteach", version, about = "Manifold teaching with ball unions and demonstrations")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// circle, torus or barbell
    #[arg(long, global = true)]
    shape: Option<String>,
    /// Number of points
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Comma-separated, strictly increasing sample sizes
    #[arg(long, global = true)]
    sizes: Option<String>,
    #[arg(long, global = true)]
    max_radius: Option<f64>,
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    #[arg(long, global = true)]
    min_bar_length: Option<f64>,
    /// Output directory
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// key=value file; flags override its entries
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for experiments
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw a seeded uniform sample from a shape
    Sample,
    /// Persistence barcode of a point file (or of a fresh sample)
    Barcode {
        points: Option<PathBuf>,
    },
    /// Betti numbers of the Čech nerve at one radius
    Betti {
        points: PathBuf,
        #[arg(long)]
        epsilon: f64,
    },
    /// Emit a teaching set, a demonstration, or teaching counts
    Teach {
        #[command(subcommand)]
        what: TeachWhat,
    },
    /// Build the complex of a demonstration file and print its invariants
    DemoLearn {
        file: PathBuf,
    },
    /// Check a teaching set file against its window and target
    Verify {
        file: PathBuf,
    },
    /// Seeded studies over sample sizes and trials
    Experiment {
        #[command(subcommand)]
        which: ExperimentKind,
    },
}

#[derive(Subcommand, Debug)]
enum TeachWhat {
    /// Three points on a circle with their radius window
    Circle {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    /// Ring grid on a torus
    TorusGrid {
        #[arg(long, default_value_t = 1.0)]
        tube_radius: f64,
        #[arg(long, default_value_t = 2.5)]
        core_radius: f64,
        #[arg(long, default_value_t = 3)]
        k_tube: usize,
        #[arg(long, default_value_t = 9)]
        k_rings: usize,
        #[arg(long)]
        stagger: bool,
    },
    /// Verify every ring grid in a parameter range and tabulate the results
    GridSearch {
        #[arg(long, default_value_t = 1.0)]
        tube_radius: f64,
        #[arg(long, default_value_t = 2.5)]
        core_radius: f64,
    },
    /// A named demonstration: circle, torus, pants or gluing
    Demo {
        name: String,
    },
    /// Teaching-number bounds for genus g (and b boundary circles)
    Counts {
        #[arg(long)]
        genus: i64,
        #[arg(long, default_value_t = 0)]
        boundary: i64,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum ExperimentKind {
    Feasibility,
    Barcode,
    Accuracy,
}

impl ExperimentKind {
    fn name(self) -> &'static str {
        match self {
            ExperimentKind::Feasibility => "feasibility",
            ExperimentKind::Barcode => "barcode",
            ExperimentKind::Accuracy => "accuracy",
        }
    }
}

/// Failures that are not the caller's fault; they exit with status 2.
#[derive(Debug)]
struct Internal(String);

impl fmt::Display for Internal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Internal {}

fn internal(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Internal(msg.into()))
}

struct Run {
    settings: Settings,
    command: String,
}

impl Run {
    fn out_dir(&self) -> Option<PathBuf> {
        self.settings.out_dir()
    }

    fn require_out(&self) -> Result<PathBuf> {
        self.out_dir().ok_or_else(|| anyhow!("--out is required for {}", self.command))
    }

    fn write(&self, dir: &Path, name: &str, contents: &str) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| internal(format!("creating {}: {e}", dir.display())))?;
        let path = dir.join(name);
        std::fs::write(&path, contents).map_err(|e| internal(format!("writing {}: {e}", path.display())))
    }

    /// The fully resolved settings, written next to the outputs.
    fn write_config(&self, dir: &Path) -> Result<()> {
        self.write(dir, "config.resolved", &self.settings.to_text(&self.command))
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_points(path: &Path) -> Result<Vec<Point>> {
    let pts = points_from_csv(&read_text(path)?).with_context(|| format!("{}", path.display()))?;
    if pts.is_empty() {
        bail!("{}: no points", path.display());
    }
    Ok(pts)
}

fn settings_from(common: &Common) -> Result<Settings> {
    let mut s = match &common.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    s.set("shape", common.shape.clone());
    s.set("n", common.n.map(|v| v.to_string()));
    s.set("seed", common.seed.map(|v| v.to_string()));
    s.set("trials", common.trials.map(|v| v.to_string()));
    s.set("sizes", common.sizes.clone());
    s.set("max-radius", common.max_radius.map(|v| v.to_string()));
    s.set("max-dim", common.max_dim.map(|v| v.to_string()));
    s.set("min-bar-length", common.min_bar_length.map(|v| v.to_string()));
    s.set("out", common.out.as_ref().map(|p| p.to_string_lossy().into_owned()));
    s.set("jobs", common.jobs.map(|v| v.to_string()));
    Ok(s)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            if e.chain().any(|c| c.is::<Internal>()) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
        Err(_) => ExitCode::from(2),
    }
}

fn run(cli: Cli) -> Result<()> {
    let settings = settings_from(&cli.common)?;
    if let Some(jobs) = settings.get::<usize>("jobs")? {
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| internal(format!("starting worker pool: {e}")))?;
    }
    let command = match &cli.command {
        Command::Experiment { which } => format!("experiment {}", which.name()),
        Command::Teach { .. } => "teach".to_string(),
        Command::Sample => "sample".into(),
        Command::Barcode { .. } => "barcode".into(),
        Command::Betti { .. } => "betti".into(),
        Command::DemoLearn { .. } => "demo-learn".into(),
        Command::Verify { .. } => "verify".into(),
    };
    let mut run = Run { settings, command };
    match cli.command {
        Command::Sample => sample(&mut run),
        Command::Barcode { points } => barcode(&mut run, points.as_deref()),
        Command::Betti { points, epsilon } => betti(&run, &points, epsilon),
        Command::Teach { what } => teach(&mut run, what),
        Command::DemoLearn { file } => demo_learn(&file),
        Command::Verify { file } => verify(&file),
        Command::Experiment { which } => experiment(&mut run, which),
    }
}

fn sample(run: &mut Run) -> Result<()> {
    run.settings.resolve_shape()?;
    run.settings.set_default("n", "500");
    run.settings.set_default("seed", "42");
    let shape = run.settings.shape()?;
    let n: usize = run.settings.get_or("n", 500)?;
    let seed: u64 = run.settings.get_or("seed", 42)?;
    let csv = points_to_csv(&shape.sample_uniform(n, seed));
    match run.out_dir() {
        Some(dir) => {
            run.write(&dir, "points.csv", &csv)?;
            run.write_config(&dir)?;
            println!("wrote {} points to {}", n, dir.join("points.csv").display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn barcode(run: &mut Run, points: Option<&Path>) -> Result<()> {
    let pts = match points {
        Some(p) => {
            run.settings.set("points", Some(p.to_string_lossy().into_owned()));
            read_points(p)?
        }
        None => {
            run.settings.resolve_shape()?;
            run.settings.set_default("n", "500");
            run.settings.set_default("seed", "42");
            let shape = run.settings.shape()?;
            shape.sample_uniform(run.settings.get_or("n", 500)?, run.settings.get_or("seed", 42)?)
        }
    };
    run.settings.set_default("max-radius", "2");
    run.settings.set_default("max-dim", "2");
    run.settings.set_default("min-bar-length", "0.05");
    let max_radius: f64 = run.settings.get_or("max-radius", 2.0)?;
    let max_dim: usize = run.settings.get_or("max-dim", 2)?;
    let min_bar: f64 = run.settings.get_or("min-bar-length", 0.05)?;
    let bc = point_cloud_barcode(&pts, run.settings.kind()?, max_dim, max_radius)?;
    for dim in 0..3 {
        let long = bc.filter(min_bar);
        let n = long.of_dim(dim).count();
        if n > 0 {
            println!("H{dim}: {} bars, {} of length >= {min_bar}", bc.of_dim(dim).count(), n);
        }
    }
    match run.out_dir() {
        Some(dir) => {
            run.write(&dir, "barcode.csv", &bc.to_csv())?;
            run.write(&dir, "barcode.svg", &svg::barcode_svg(&bc, min_bar))?;
            run.write_config(&dir)?;
        }
        None => print!("{}", bc.to_csv()),
    }
    Ok(())
}

fn betti(run: &Run, points: &Path, epsilon: f64) -> Result<()> {
    let pts = read_points(points)?;
    let max_dim = run
        .settings
        .get_or("max-dim", if pts[0].dim() == 3 { 3 } else { 2 })?;
    if !(epsilon > 0.0) {
        bail!("--epsilon must be positive");
    }
    println!("betti={}", learn_union_of_balls(&pts, epsilon, max_dim)?);
    Ok(())
}

fn teach(run: &mut Run, what: TeachWhat) -> Result<()> {
    let (name, text) = match what {
        TeachWhat::Circle { radius } => {
            let (ts, count) = teaching::circle_teaching_set(radius)?;
            eprintln!("{} points (minimal)", count.value);
            ("circle.teach", ts.to_text())
        }
        TeachWhat::TorusGrid {
            tube_radius,
            core_radius,
            k_tube,
            k_rings,
            stagger,
        } => {
            let ts = teaching::torus_grid_teaching_set(tube_radius, core_radius, k_tube, k_rings, stagger)?;
            eprintln!("{} points", ts.points.len());
            ("torus_grid.teach", ts.to_text())
        }
        TeachWhat::GridSearch {
            tube_radius,
            core_radius,
        } => {
            let rows = teaching::torus_grid_search(tube_radius, core_radius, 3..=6, 3..=24)?;
            let mut csv = String::from("size,k_tube,k_rings,stagger,valid\n");
            for r in &rows {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.size, r.k_tube, r.k_rings, r.stagger as u8, r.valid as u8
                ));
            }
            match rows.iter().find(|r| r.valid) {
                Some(best) => eprintln!(
                    "smallest valid grid: {} points (k_tube={}, k_rings={}, stagger={})",
                    best.size, best.k_tube, best.k_rings, best.stagger
                ),
                None => eprintln!("no valid grid in range"),
            }
            ("grid_search.csv", csv)
        }
        TeachWhat::Demo { name } => {
            let demo = match name.as_str() {
                "circle" => teaching::circle_demo(),
                "torus" => teaching::torus_demo(),
                "pants" => teaching::pants_demo(),
                "gluing" => teaching::pants_gluing_demo(),
                other => bail!("unknown demonstration {other:?} (expected circle, torus, pants or gluing)"),
            };
            ("demo.demo", demo.to_text())
        }
        TeachWhat::Counts { genus, boundary } => {
            let closed = teaching::min_teaching_number_closed(genus)?;
            let with_b = teaching::min_teaching_number_with_boundary(genus, boundary)?;
            let mut text = format!("closed_points={}\nwith_boundary_points={}\n", closed.value, with_b.value);
            if genus >= 2 {
                let pants = teaching::pants_decomposition_count(genus)?;
                text.push_str(&format!("pants_sequences={}\n", pants.value));
            }
            ("counts.txt", text)
        }
    };
    match run.out_dir() {
        Some(dir) => {
            run.write(&dir, name, &text)?;
            run.write_config(&dir)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn demo_learn(file: &Path) -> Result<()> {
    let demo = DemonstrationSet::parse(&read_text(file)?).with_context(|| format!("{}", file.display()))?;
    let cx = build_demo_complex(&demo)?;
    let (v, e, f) = cx.counts();
    let b = betti_gf2(&cx.to_static(), 2)?;
    println!("V={v} E={e} F={f} betti={b}");
    Ok(())
}

fn verify(file: &Path) -> Result<()> {
    let ts = TeachingSet::parse(&read_text(file)?).with_context(|| format!("{}", file.display()))?;
    let v = teaching::verify_teaching_set(&ts)?;
    match v.witness {
        Some(w) if v.valid => println!("feasible: yes, window {w}"),
        _ => println!("feasible: no"),
    }
    Ok(())
}

fn experiment(run: &mut Run, which: ExperimentKind) -> Result<()> {
    run.settings.resolve_shape()?;
    let cfg: ExperimentConfig = run.settings.experiment()?;
    cfg.validate()?;
    let s = &mut run.settings;
    s.set_default("sizes", cfg.sizes.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    s.set_default("trials", cfg.trials.to_string());
    s.set_default("seed", cfg.seed.to_string());
    s.set_default("max-radius", cfg.max_radius.to_string());
    s.set_default("min-bar-length", cfg.min_bar_length.to_string());
    s.set_default("max-dim", cfg.max_dim.to_string());
    let dir = run.require_out()?;
    match which {
        ExperimentKind::Feasibility => {
            let rows = exp::feasibility_study(&cfg)?;
            run.write(&dir, "feasibility.csv", &exp::feasibility_csv(&rows))?;
            println!("size,feasible_rate");
            for (size, rate) in exp::feasibility_rates(&rows) {
                println!("{size},{rate}");
            }
        }
        ExperimentKind::Barcode => {
            let size = run.settings.get_or("n", *cfg.sizes.last().expect("validated"))?;
            run.settings.set_default("n", size.to_string());
            let st = exp::barcode_study(&cfg, size)?;
            run.write(&dir, "barcode_stats.csv", &exp::barcode_stats_csv(&st.rows))?;
            run.write(&dir, "barcode.csv", &st.example.to_csv())?;
            run.write(&dir, "barcode.svg", &svg::barcode_svg(&st.example, cfg.min_bar_length))?;
            println!(
                "size={size} two_loop_fraction mean={} variance={} trials_with_2_long_h1_bars={}/{}",
                st.mean_two_loop_fraction,
                st.variance_two_loop_fraction,
                st.rows.iter().filter(|r| r.h1_bars == 2).count(),
                st.rows.len()
            );
        }
        ExperimentKind::Accuracy => {
            let rows = exp::accuracy_study(&cfg)?;
            let table = exp::accuracy_table(&rows);
            run.write(&dir, "accuracy.csv", &exp::accuracy_csv(&table))?;
            run.write(&dir, "results.csv", &exp::results_csv(&rows))?;
            run.write(&dir, "accuracy.svg", &svg::accuracy_svg(&table))?;
            print!("{}", exp::accuracy_csv(&table));
        }
    }
    run.write_config(&dir)
}
