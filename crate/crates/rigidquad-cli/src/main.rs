use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rigidquad::bijection::{classify_bc, expand, psi, psi_b, psi_b_inverse, psi_inverse, BcClass};
use rigidquad::geometry::{immerse_f64, render_svg, simplex_widths, unit_widths, Style};
use rigidquad::json::{MapJson, MapObject};
use rigidquad::oracle::brute_rigid;
use rigidquad::sampler::{seeded_rng, Sampler};
use rigidquad::series::*;
use rigidquad::statistics::{dictionary_report, is_fighting_fish, rows_and_columns};
use rigidquad::{explore_rigid, ColorfulQuad, Kind, RigidQuad};

#[derive(Parser)]
#[command(name = "rigidquad", version, about = "Rigid quadrangulations, colorful quadrangulations and their bijections")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// Rigid disk to colorful sphere.
    Forward,
    /// Colorful sphere to rigid disk.
    Inverse,
    /// Rigid disk to colorful disk plus base signature.
    Refined,
    /// Colorful disk with signature to rigid disk.
    RefinedInverse,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesName {
    R,
    Z,
    P,
    B,
    C,
    E,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Widths {
    Unit,
    Simplex(f64),
}

fn parse_widths(s: &str) -> Result<Widths, String> {
    match s.split_once(':') {
        None if s == "unit" => Ok(Widths::Unit),
        Some(("simplex", l)) => match l.parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(Widths::Simplex(v)),
            _ => Err(format!("simplex length must be a positive number, got {l:?}")),
        },
        _ => Err(format!("expected unit or simplex:L, got {s:?}")),
    }
}

fn parse_signature(s: &str) -> Result<Vec<usize>, String> {
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"))).collect()
}

#[derive(Subcommand)]
enum Cmd {
    /// Table of rooted rigid quadrangulation counts from the series and the catalytic table.
    Count {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(3..=200))]
        n_max: u64,
        /// Add a column from exhaustive trace enumeration (n <= 9).
        #[arg(long)]
        brute: bool,
    },
    /// Truncated generating series.
    Series {
        #[arg(long, value_enum)]
        name: SeriesName,
        #[arg(long, default_value_t = 8)]
        order: usize,
        /// Highest power of x (P, B, C, E) or p for H.
        #[arg(long, default_value_t = 2)]
        p: usize,
        /// Highest power of y (B, C, E) or q for H.
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
    /// Uniform random rooted rigid quadrangulations.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, env = "RIGIDQUAD_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Applies a bijection to a JSON map.
    Map {
        #[arg(long, value_enum)]
        direction: Direction,
        /// Input JSON file, or - for standard input.
        #[arg(long)]
        input: PathBuf,
        /// Base signature for refined-inverse when the input carries none.
        #[arg(long, value_parser = parse_signature)]
        signature: Option<Vec<usize>>,
    },
    /// Statistics and dictionary report of a rigid quadrangulation.
    Stats {
        #[command(flatten)]
        src: Source,
    },
    /// SVG of the immersed rectilinear disk.
    Render {
        #[command(flatten)]
        src: Source,
        /// unit or simplex:L
        #[arg(long, default_value = "unit", value_parser = parse_widths)]
        widths: Widths,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the acceptance suite.
    Verify {
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(clap::Args)]
struct Source {
    /// Rigid map JSON file, or - for standard input.
    #[arg(long, conflicts_with = "n")]
    input: Option<PathBuf>,
    /// Sample a rooted object of this size instead.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, env = "RIGIDQUAD_SEED", default_value_t = 0)]
    seed: u64,
}

enum Failure {
    Data(rigidquad::Error),
    Input(String),
}

impl From<rigidquad::Error> for Failure {
    fn from(e: rigidquad::Error) -> Self {
        Failure::Data(e)
    }
}

impl Failure {
    fn to_json(&self) -> Value {
        match self {
            Failure::Data(e) => json!({ "error": format!("{e:?}").split('(').next().unwrap_or("Error"), "message": e.to_string() }),
            Failure::Input(m) => json!({ "error": "Input", "message": m }),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn read_input(path: &Path) -> Res<String> {
    let mut s = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(e.to_string()))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn read_map(path: &Path) -> Res<(MapObject, MapJson)> {
    let text = read_input(path)?;
    let j: MapJson = serde_json::from_str(&text).map_err(|e| Failure::Data(rigidquad::Error::Parse(e.to_string())))?;
    Ok((MapObject::from_json(&j)?, j))
}

fn rigid_from(src: &Source) -> Res<RigidQuad> {
    match (&src.input, src.n) {
        (Some(p), _) => match read_map(p)?.0 {
            MapObject::Rigid(r) => Ok(r),
            _ => Err(Failure::Input("expected a rigid map".into())),
        },
        (None, Some(n)) => Ok(Sampler::new(n.max(3)).sample_rigid_rooted(n, &mut seeded_rng(src.seed))?),
        (None, None) => Err(Failure::Input("one of --input or --n is required".into())),
    }
}

fn series_json(name: &str, s: &TruncSeries) -> Value {
    let terms: Vec<Value> = s.terms().into_iter().map(|(e, c)| json!([e, c.to_string()])).collect();
    json!({ "name": name, "orders": s.orders(), "terms": terms })
}

fn cmd_count(n_max: usize, brute: bool, fmt: Format) -> Res<()> {
    let z = rigid_counts(n_max);
    let table = catalytic_counts(1, n_max)?;
    let traces = if brute { Some(brute_rigid(1, n_max.min(9) - 1)) } else { None };
    let mut rows = Vec::new();
    for n in 3..=n_max {
        let oracle = table.rigid_count(n)?;
        let b = traces
            .as_ref()
            .filter(|_| n <= 9)
            .map(|ts| ts.iter().filter(|t| t.steps.len() == n - 1 && t.steps[0].is_l()).count());
        rows.push((n, z[n].to_string(), oracle.to_string(), b));
    }
    match fmt {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(n, s, o, b)| {
                    let mut row = json!({ "n": n, "series": s, "catalytic": o });
                    if let Some(b) = b {
                        row["brute"] = json!(b.to_string());
                    }
                    row
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&v).expect("plain data"));
        }
        Format::Text => {
            println!("{:>4} {:>40} {:>40}{}", "n", "series", "catalytic", if brute { "      brute" } else { "" });
            for (n, s, o, b) in rows {
                let tail = b.map(|x| format!(" {x:>10}")).unwrap_or_default();
                println!("{n:>4} {s:>40} {o:>40}{tail}");
            }
        }
    }
    Ok(())
}

fn cmd_series(name: SeriesName, order: usize, p: usize, q: usize, fmt: Format) -> Res<()> {
    let (label, s) = match name {
        SeriesName::R => ("R", solve_r(order)),
        SeriesName::Z => ("Z", series_z(order)),
        SeriesName::P => ("P", series_p(order, p)),
        SeriesName::B => ("B", series_b(order, p, q)),
        SeriesName::C => ("C", series_c(order, p, q)),
        SeriesName::E => ("E", series_e(order, p, q)),
        SeriesName::H => ("H", series_h(p.max(1), q.max(1), order)),
    };
    match fmt {
        Format::Json => println!("{}", serde_json::to_string_pretty(&series_json(label, &s)).expect("plain data")),
        Format::Text => println!("{label} = {s}"),
    }
    Ok(())
}

fn cmd_sample(n: usize, count: usize, seed: u64, jobs: usize, fmt: Format) -> Res<()> {
    let sampler = Sampler::new(n.max(3));
    let mut out: Vec<Option<Result<RigidQuad, rigidquad::Error>>> = vec![None; count];
    let jobs = jobs.clamp(1, count.max(1));
    std::thread::scope(|s| {
        for (w, chunk) in out.chunks_mut(count.div_ceil(jobs).max(1)).enumerate() {
            let sampler = &sampler;
            let base = w * count.div_ceil(jobs).max(1);
            s.spawn(move || {
                for (k, slot) in chunk.iter_mut().enumerate() {
                    let i = (base + k) as u64;
                    *slot = Some(sampler.sample_rigid_rooted(n, &mut seeded_rng(seed.wrapping_add(i))));
                }
            });
        }
    });
    for (i, r) in out.into_iter().enumerate() {
        let r = r.expect("every slot filled")?;
        match fmt {
            Format::Json => println!("{}", serde_json::to_string(&MapObject::from(r).to_json()).expect("plain data")),
            Format::Text => {
                let trace = explore_rigid(&expand(&r))?;
                let (rows, cols) = rows_and_columns(&r);
                println!("seed={} n={} cells={} rows={rows} cols={cols} trace: {trace}", seed.wrapping_add(i as u64), r.n(), r.cells().len());
            }
        }
    }
    Ok(())
}

fn cmd_map(direction: Direction, input: &Path, signature: Option<Vec<usize>>) -> Res<()> {
    let (obj, raw) = read_map(input)?;
    let wrong = |what: &str| Failure::Input(format!("direction expects {what}"));
    let out = match (direction, obj) {
        (Direction::Forward, MapObject::Rigid(r)) => MapObject::from(psi(&r)?).to_json(),
        (Direction::Inverse, MapObject::Colorful(q)) if q.kind() == Kind::Sphere => MapObject::from(psi_inverse(&q)?).to_json(),
        (Direction::Refined, MapObject::Rigid(r)) => {
            let u = psi_b(&r)?;
            MapJson { signature: Some(r.base_signature()), ..MapObject::from(u).to_json() }
        }
        (Direction::RefinedInverse, MapObject::Colorful(u)) if u.kind() == Kind::Disk => {
            let sig = signature.or(raw.signature).ok_or_else(|| Failure::Input("missing base signature".into()))?;
            MapObject::from(psi_b_inverse(&u, &sig)?).to_json()
        }
        (Direction::Forward | Direction::Refined, _) => return Err(wrong("a rigid map")),
        (Direction::Inverse, _) => return Err(wrong("a colorful sphere")),
        (Direction::RefinedInverse, _) => return Err(wrong("a colorful disk")),
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("plain data"));
    Ok(())
}

fn bc_json(c: BcClass) -> Value {
    match c {
        BcClass::General => json!("general"),
        BcClass::B(p, q) => json!({ "B": [p, q] }),
        BcClass::C(p, q) => json!({ "C": [p, q] }),
    }
}

fn cmd_stats(src: &Source, fmt: Format) -> Res<()> {
    let r = rigid_from(src)?;
    let q: ColorfulQuad = psi(&r)?;
    let rep = dictionary_report(&r)?;
    let check = rep.check();
    let (rows, cols) = rows_and_columns(&r);
    let v = json!({
        "n": r.n(),
        "cells": r.cells().len(),
        "rows": rows,
        "columns": cols,
        "base_signature": r.base_signature(),
        "fighting_fish": is_fighting_fish(&r),
        "bc_class": bc_json(classify_bc(&r)),
        "image_vertices": q.map().vertex_count(),
        "dictionary": rep,
        "dictionary_ok": check.is_ok(),
    });
    match fmt {
        Format::Json => println!("{}", serde_json::to_string_pretty(&v).expect("plain data")),
        Format::Text => {
            println!("n = {}, cells = {}, rows = {rows}, columns = {cols}", r.n(), r.cells().len());
            println!("base signature = {:?}, fighting fish = {}", r.base_signature(), is_fighting_fish(&r));
            println!("class = {}", v["bc_class"]);
            match &check {
                Ok(()) => println!("dictionary: all rows hold"),
                Err(e) => println!("dictionary: {e}"),
            }
        }
    }
    check.map_err(Failure::from)
}

fn cmd_render(src: &Source, widths: Widths, out: Option<&Path>, fmt: Format) -> Res<()> {
    let r = rigid_from(src)?;
    let w = match widths {
        Widths::Unit => unit_widths(&r),
        Widths::Simplex(l) => simplex_widths(&r, l, &mut seeded_rng(src.seed))?,
    };
    let imm = immerse_f64(&r, &w)?;
    let svg = render_svg(&imm, &Style::default());
    match out {
        Some(p) => {
            std::fs::write(p, &svg).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            let (lo, hi) = imm.bounding_box();
            let info = json!({ "out": p.display().to_string(), "cells": r.cells().len(), "half_perimeter": w.half_perimeter(), "bbox": [lo, hi] });
            match fmt {
                Format::Json => println!("{info}"),
                Format::Text => println!("wrote {} ({} cells)", p.display(), r.cells().len()),
            }
        }
        None => print!("{svg}"),
    }
    Ok(())
}

fn cmd_verify(quick: bool, jobs: usize, fmt: Format) -> Res<bool> {
    let results = rigidquad::verify::run(quick, jobs);
    match fmt {
        Format::Json => println!("{}", serde_json::to_string_pretty(&results).expect("plain data")),
        Format::Text => results.iter().for_each(|r| println!("{r}")),
    }
    Ok(results.iter().all(|r| r.passed))
}

fn run(cli: Cli) -> Res<bool> {
    let fmt = cli.format;
    match cli.cmd {
        Cmd::Count { n_max, brute } => cmd_count(n_max as usize, brute, fmt)?,
        Cmd::Series { name, order, p, q } => cmd_series(name, order, p, q, fmt)?,
        Cmd::Sample { n, count, seed, jobs } => cmd_sample(n, count, seed, jobs, fmt)?,
        Cmd::Map { direction, input, signature } => cmd_map(direction, &input, signature)?,
        Cmd::Stats { src } => cmd_stats(&src, fmt)?,
        Cmd::Render { src, widths, out } => cmd_render(&src, widths, out.as_deref(), fmt)?,
        Cmd::Verify { quick, jobs } => return cmd_verify(quick, jobs, fmt),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(1)
        }
    }
}
