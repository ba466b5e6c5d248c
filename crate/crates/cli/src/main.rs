use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use convexify::convexify::{convexify_segments, convexify_with, Options};
use convexify::io::{
    emit_cover, emit_instance, event_json, gen_clustered, gen_instance, gen_scattered, gen_segments, parse_cover, parse_instance,
    render_cover, trace_frames, write_frames, Instance, IoError, ENGINE_ENV,
};
use convexify::oracle::validate_cover;
use convexify::EngineKind;

#[derive(Parser)]
#[command(name = "convexify", version, about = "Minimum-area disjoint convex cover of disjoint polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct EngineArg {
    /// Ray-shooting engine.
    #[arg(long, env = ENGINE_ENV, default_value = "grid", value_parser = |s: &str| s.parse::<EngineKind>())]
    engine: EngineKind,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the cover of an instance file.
    Run {
        instance: PathBuf,
        /// Output cover file (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Require a segment instance.
        #[arg(long)]
        segments: bool,
        /// Also write an SVG of the cover.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineArg,
    },
    /// Check a cover file against an instance. Exits 1 if rejected.
    Verify { instance: PathBuf, cover: PathBuf },
    /// Write SVG frames and a JSON-lines event log for a polygon instance.
    Trace {
        instance: PathBuf,
        /// Output directory.
        #[arg(short, long, default_value = "trace")]
        output: PathBuf,
        #[command(flatten)]
        engine: EngineArg,
    },
    /// Time clustered random instances of the given total vertex counts.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "10000,20000,40000,80000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        engine: EngineArg,
    },
    /// Write a random instance.
    Gen {
        #[arg(long, value_enum, default_value = "grid")]
        style: Style,
        /// Number of polygons (segments, or clusters for the clustered style).
        #[arg(short, long, default_value_t = 16)]
        n: usize,
        /// Vertices per polygon.
        #[arg(short, long, default_value_t = 8)]
        m: usize,
        /// Side of the bounding box (of one cluster for the clustered style).
        #[arg(long, default_value_t = 1000)]
        bbox: i64,
        /// Polygons per cluster.
        #[arg(long, default_value_t = 4)]
        per_cell: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    Grid,
    Scattered,
    Clustered,
    Segments,
}

fn read_instance(path: &Path) -> Result<Instance> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&bytes).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn run(instance: &Path, output: Option<&Path>, segments: bool, svg: Option<&Path>, engine: EngineKind) -> Result<()> {
    let inst = read_instance(instance)?;
    let cover = match (&inst, segments) {
        (Instance::Segments(s), _) => convexify_segments(s)?,
        (Instance::Polygons(_), true) => bail!("--segments given but {} is a polygon instance", instance.display()),
        (Instance::Polygons(p), false) => {
            let run = convexify_with(p, Options { engine, ..Options::default() })?;
            let s = &run.stats;
            eprintln!(
                "{} polygons, {} vertices: {} elements, {} merges, {} rays, {} nested",
                s.polygons,
                s.input_vertices,
                run.cover.len(),
                s.merges,
                s.rays_shot,
                s.nested
            );
            run.cover
        }
    };
    if let Some(svg) = svg {
        fs::write(svg, render_cover(&inst.shapes(), &cover)).with_context(|| format!("writing {}", svg.display()))?;
    }
    write_out(output, &emit_cover(&cover))
}

fn verify(instance: &Path, cover: &Path) -> Result<bool> {
    let inst = read_instance(instance)?;
    let bytes = fs::read(cover).with_context(|| format!("reading {}", cover.display()))?;
    let cover = match parse_cover(&bytes) {
        Err(e @ IoError::AreaMismatch { .. }) => {
            println!("{e}");
            println!("rejected");
            return Ok(false);
        }
        other => other.with_context(|| format!("parsing {}", cover.display()))?,
    };
    let r = validate_cover(&inst.shapes(), &cover);
    println!("disjoint: {}", r.disjoint);
    println!("partitioned: {}", r.partitioned);
    println!("hull of group: {}", r.hull_of_group);
    println!("tightness sampling failures: {}", r.tight_sampling_failures);
    println!("area: {}", r.area);
    println!("{}", if r.accepted() { "accepted" } else { "rejected" });
    Ok(r.accepted())
}

fn trace(instance: &Path, output: &Path, engine: EngineKind) -> Result<()> {
    let Instance::Polygons(polys) = read_instance(instance)? else { bail!("trace needs a polygon instance") };
    let run = convexify_with(&polys, Options { engine, trace: true, ..Options::default() })?;
    let frames = trace_frames(&Instance::Polygons(polys).shapes(), &run);
    let paths = write_frames(output, &frames)?;
    let log: String = run.trace.iter().map(|e| format!("{}\n", event_json(e))).collect();
    let log_path = output.join("events.jsonl");
    fs::write(&log_path, log).with_context(|| format!("writing {}", log_path.display()))?;
    eprintln!("{} frames and {} events in {}", paths.len(), run.trace.len(), output.display());
    Ok(())
}

struct BenchRow {
    vertices: usize,
    seconds: f64,
    merges: usize,
    deleted: usize,
    rays: usize,
}

fn bench_one(n: usize, seed: u64, engine: EngineKind) -> Result<BenchRow> {
    let polys = gen_clustered((n / 40).max(1), 4, 10, 120, seed)?;
    let start = Instant::now();
    let run = convexify_with(&polys, Options { engine, ..Options::default() })?;
    let seconds = start.elapsed().as_secs_f64();
    let s = run.stats;
    Ok(BenchRow { vertices: s.input_vertices, seconds, merges: s.merges, deleted: s.deleted, rays: s.rays_shot })
}

fn bench(sizes: &[usize], seed: u64, jobs: usize, engine: EngineKind) -> Result<()> {
    let mut rows: Vec<Option<Result<BenchRow>>> = (0..sizes.len()).map(|_| None).collect();
    let jobs = jobs.max(1);
    for (chunk_sizes, chunk_rows) in sizes.chunks(jobs).zip(rows.chunks_mut(jobs)) {
        std::thread::scope(|scope| {
            for (&n, slot) in chunk_sizes.iter().zip(chunk_rows.iter_mut()) {
                scope.spawn(move || *slot = Some(bench_one(n, seed, engine)));
            }
        });
    }
    println!("{:>10} {:>10} {:>8} {:>10} {:>10}", "N", "seconds", "merges", "total_u", "rays");
    for row in rows {
        let r = row.expect("every slot filled")?;
        println!("{:>10} {:>10.4} {:>8} {:>10} {:>10}", r.vertices, r.seconds, r.merges, r.deleted, r.rays);
    }
    Ok(())
}

fn generate(style: Style, n: usize, m: usize, bbox: i64, per_cell: usize, seed: u64, output: Option<&Path>) -> Result<()> {
    let inst = match style {
        Style::Grid => Instance::Polygons(gen_instance(n, m, bbox, seed)?),
        Style::Scattered => Instance::Polygons(gen_scattered(n, m, bbox, seed)?),
        Style::Clustered => Instance::Polygons(gen_clustered(n, per_cell, m, bbox, seed)?),
        Style::Segments => Instance::Segments(gen_segments(n, bbox, seed)?),
    };
    write_out(output, &emit_instance(&inst))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { instance, output, segments, svg, engine } => {
            run(&instance, output.as_deref(), segments, svg.as_deref(), engine.engine)
        }
        Command::Verify { instance, cover } => match verify(&instance, &cover) {
            Ok(true) => Ok(()),
            Ok(false) => return ExitCode::from(1),
            Err(e) => Err(e),
        },
        Command::Trace { instance, output, engine } => trace(&instance, &output, engine.engine),
        Command::Bench { sizes, seed, jobs, engine } => bench(&sizes, seed, jobs, engine.engine),
        Command::Gen { style, n, m, bbox, per_cell, seed, output } => generate(style, n, m, bbox, per_cell, seed, output.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
