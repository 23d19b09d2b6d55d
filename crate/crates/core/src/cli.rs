//! Command-line front end. Every subcommand parses its inputs, calls one
//! library operation and prints the result; JSON goes to stdout, errors go to
//! stderr as `{"kind": ..., "message": ...}` with the exit code of the error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::chain::io::{chain_from_json, chain_to_json, chips_to_json, divisor_to_json, DivisorInput};
use crate::chain::{canonical_divisor, gonality_representatives, is_equivalent, k_gonal_chain, ChainOfCycles};
use crate::error::{Error, Result};
use crate::genus5::genus5_report;
use crate::numerics::{bn_region, rho, rho_bar};
use crate::rational::{format_q, parse_q, Q};
use crate::scrollar::{
    component_dimension_check, embed_in_genus, generate_scrollar, independence_slopes, serial_subtract, t_minus_one,
    ScrollarType,
};
use crate::tableaux::{
    construction_coords, dim_wrd, enumerate_tableaux, enumerate_tableaux_parallel, is_displacement_tableau,
    lattice_path, rank, torus_dimension, Shape, Tableau,
};
use crate::tropmap::{
    assign_well_spaced_lengths, build_generic_map, build_scroll_map, check_assumptions, naive_well_spacedness,
    TropicalMapSkeleton,
};

#[derive(Debug, Parser)]
#[command(name = "kgonal", version, about = "Brill-Noether computations on k-gonal chains of cycles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Brill-Noether number ρ(g, r, d).
    Rho(Grd),
    /// ρ̄_k(g, r, d) and the ℓ attaining it.
    RhoBar {
        #[command(flatten)]
        grd: Grd,
        #[arg(long)]
        k: i64,
    },
    /// Nonemptiness grid as CSV, optionally with an SVG plot.
    BnRegion {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 12)]
        x_max: i64,
        #[arg(long, default_value_t = 12)]
        y_max: i64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    #[command(subcommand)]
    Chain(ChainCmd),
    #[command(subcommand)]
    Divisor(DivisorCmd),
    #[command(subcommand)]
    Tableaux(TableauxCmd),
    #[command(subcommand)]
    Scrollar(ScrollarCmd),
    #[command(subcommand)]
    Map(MapCmd),
    #[command(subcommand)]
    Example(ExampleCmd),
}

#[derive(Debug, Args)]
pub struct Grd {
    #[arg(long)]
    g: i64,
    #[arg(long)]
    r: i64,
    #[arg(long)]
    d: i64,
}

/// A JSON value given inline or as a path to a file.
#[derive(Debug, Args)]
pub struct ChainArg {
    /// Chain JSON or a path to it.
    #[arg(long)]
    chain: String,
}

#[derive(Debug, Subcommand)]
pub enum ChainCmd {
    /// A chain from a torsion profile, or the k-gonal chain of genus g.
    New {
        #[arg(long, conflicts_with_all = ["g", "k"])]
        profile: Option<String>,
        #[arg(long, requires = "k")]
        g: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Genus, profile and lengths of a chain.
    Show(ChainArg),
}

#[derive(Debug, Subcommand)]
pub enum DivisorCmd {
    NormalForm {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        divisor: String,
    },
    Equivalent {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    Rank {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        divisor: String,
    },
    Canonical(ChainArg),
    /// The representatives E, E_0, E_1 of the gonality pencil.
    Gonality {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        k: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TableauxCmd {
    /// Stream displacement tableaux of a shape as JSON lines.
    Enumerate {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        rows: usize,
        /// Only tableaux whose torus contains this divisor.
        #[arg(long)]
        containing: Option<String>,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        parallel: bool,
    },
    Validate {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        tableau: String,
    },
    DimWrd {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        d: i64,
        /// Search node budget; the answer is then a lower bound if not exhaustive.
        #[arg(long)]
        limit: Option<u64>,
    },
    LatticePath {
        #[arg(long)]
        tableau: String,
        #[arg(long)]
        g: usize,
    },
}

#[derive(Debug, Args)]
pub struct TypeArgs {
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    #[arg(long)]
    k: usize,
}

impl TypeArgs {
    fn get(&self) -> Result<ScrollarType> {
        ScrollarType::new(self.a, self.b, self.k)
    }
}

#[derive(Debug, Subcommand)]
pub enum ScrollarCmd {
    /// The canonical scrollar filling, optionally relabelled into genus g.
    Generate {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        g: Option<usize>,
    },
    MinusOne {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        tableau: String,
    },
    CheckDim {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        tableau: String,
        #[arg(long)]
        g: usize,
    },
    Slopes {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        tableau: String,
        #[arg(long)]
        g: usize,
    },
    SerialSubtract {
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        tableau: String,
        #[arg(long)]
        divisor: String,
        /// Number of steps; defaults to ⌊(r+1)/n⌋.
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct MapInput {
    #[command(flatten)]
    chain: ChainArg,
    #[arg(long)]
    tableau: String,
    /// Divisor in the torus of the tableau.
    #[arg(long, required_unless_present = "coords")]
    divisor: Option<String>,
    /// Construction coordinates as a comma-separated list of rationals.
    #[arg(long, conflicts_with = "divisor")]
    coords: Option<String>,
    /// Write an SVG projection to this path.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Coordinates used for the projection.
    #[arg(long, default_value = "0,1")]
    proj: String,
}

#[derive(Debug, Subcommand)]
pub enum MapCmd {
    BuildGeneric(MapInput),
    BuildScroll {
        #[command(flatten)]
        input: MapInput,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Lifting assumptions and naive well-spacedness of a skeleton.
    Certify {
        #[arg(long)]
        map: String,
        /// Apply the bridge/tree length recipe first.
        #[arg(long)]
        tune: bool,
        #[arg(long, default_value = "1000")]
        base: String,
        /// Write the tuned skeleton here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit with status 3 unless every certificate passes.
        #[arg(long)]
        strict: bool,
        /// Recompute vertex positions from edge lengths instead of checking them.
        #[arg(long)]
        reintegrate: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExampleCmd {
    /// The trigonal chain of genus 5: ranks, tableaux, slopes and the certified scroll map.
    Genus5 {
        /// Directory for genus5_map.json and genus5_map.svg.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

/// Parse `argv`, run, print, and return the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", json!({"kind": e.kind(), "message": e.to_string()}));
            e.exit_code()
        }
    }
}

fn read_json(arg: &str) -> Result<Value> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return serde_json::from_str(arg).map_err(|e| Error::Parse(format!("inline JSON: {e}")));
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::invalid(format!("{arg}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))
}

fn load_chain(arg: &ChainArg) -> Result<ChainOfCycles> {
    chain_from_json(read_json(&arg.chain)?).map_err(|e| match e {
        Error::Json(j) => Error::Parse(format!("{}: {j}", arg.chain)),
        other => other,
    })
}

fn load_tableau(arg: &str) -> Result<Tableau> {
    let rows: Vec<Vec<u32>> = serde_json::from_value(read_json(arg)?).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
    Tableau::from_rows(rows)
}

fn load_divisor(chain: &ChainOfCycles, arg: &str) -> Result<DivisorInput> {
    DivisorInput::parse(chain, read_json(arg)?)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse().map_err(|_| Error::Parse(format!("bad {what} entry {p:?}"))))
        .collect()
}

fn emit<W: Write, S: Serialize>(out: &mut W, value: &S) -> Result<i32> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(0)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

fn execute<W: Write>(cmd: Command, out: &mut W) -> Result<i32> {
    match cmd {
        Command::Rho(Grd { g, r, d }) => emit(out, &json!({"g": g, "r": r, "d": d, "rho": rho(g, r, d)?})),
        Command::RhoBar { grd: Grd { g, r, d }, k } => emit(out, &rho_bar(g, r, d, k)?),
        Command::BnRegion { g, k, x_max, y_max, step, svg } => {
            let region = bn_region(g, k, x_max, y_max, step)?;
            if let Some(path) = svg {
                write_file(&path, &region.to_svg())?;
            }
            out.write_all(region.to_csv().as_bytes())?;
            Ok(0)
        }
        Command::Chain(c) => chain_cmd(c, out),
        Command::Divisor(c) => divisor_cmd(c, out),
        Command::Tableaux(c) => tableaux_cmd(c, out),
        Command::Scrollar(c) => scrollar_cmd(c, out),
        Command::Map(c) => map_cmd(c, out),
        Command::Example(ExampleCmd::Genus5 { out_dir }) => {
            let report = genus5_report()?;
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(&dir)?;
                write_file(&dir.join("genus5_map.json"), &serde_json::to_string_pretty(&report.skeleton)?)?;
                write_file(&dir.join("genus5_map.svg"), &report.skeleton.to_svg(0, 1)?)?;
            }
            emit(out, &report)
        }
    }
}

fn chain_cmd<W: Write>(cmd: ChainCmd, out: &mut W) -> Result<i32> {
    match cmd {
        ChainCmd::New { profile, g, k } => {
            let chain = match (profile, g, k) {
                (Some(p), _, _) => ChainOfCycles::from_profile(&parse_list::<u32>(&p, "profile")?)?,
                (None, Some(g), Some(k)) => k_gonal_chain(g, k)?,
                _ => return Err(Error::invalid("give either --profile or both --g and --k")),
            };
            emit(out, &chain_to_json(&chain))
        }
        ChainCmd::Show(arg) => {
            let chain = load_chain(&arg)?;
            let cycles: Vec<Value> = chain
                .cycles
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    json!({"cycle": i + 1, "mu": c.mu, "l": format_q(&c.l), "m": format_q(&c.m),
                           "circumference": format_q(&c.circumference())})
                })
                .collect();
            emit(out, &json!({"g": chain.g(), "k": chain.k, "profile": chain.profile(), "cycles": cycles}))
        }
    }
}

fn divisor_cmd<W: Write>(cmd: DivisorCmd, out: &mut W) -> Result<i32> {
    match cmd {
        DivisorCmd::NormalForm { chain, divisor } => {
            let chain = load_chain(&chain)?;
            emit(out, &divisor_to_json(&load_divisor(&chain, &divisor)?.normalize(&chain)?))
        }
        DivisorCmd::Equivalent { chain, a, b } => {
            let chain = load_chain(&chain)?;
            let (a, b) = (load_divisor(&chain, &a)?.chips(), load_divisor(&chain, &b)?.chips());
            emit(out, &json!({"equivalent": is_equivalent(&chain, &a, &b)?}))
        }
        DivisorCmd::Rank { chain, divisor } => {
            let chain = load_chain(&chain)?;
            let d = load_divisor(&chain, &divisor)?.normalize(&chain)?;
            emit(out, &json!({"degree": d.d, "rank": rank(&chain, &d)}))
        }
        DivisorCmd::Canonical(chain) => {
            let chain = load_chain(&chain)?;
            let k = canonical_divisor(&chain);
            let normal = crate::chain::normal_form(&chain, &k)?;
            emit(out, &json!({"chips": chips_to_json(&chain, &k)["chips"], "normal": divisor_to_json(&normal)["normal"]}))
        }
        DivisorCmd::Gonality { chain, k } => {
            let chain = load_chain(&chain)?;
            let k = k.or(chain.k).ok_or_else(|| Error::invalid("chain has no gonality; pass --k"))?;
            let reps = gonality_representatives(&chain, k)?;
            emit(
                out,
                &json!({
                    "E": chips_to_json(&chain, &reps.e),
                    "E_0": chips_to_json(&chain, &reps.e0),
                    "E_1": chips_to_json(&chain, &reps.e1),
                }),
            )
        }
    }
}

fn tableaux_cmd<W: Write>(cmd: TableauxCmd, out: &mut W) -> Result<i32> {
    match cmd {
        TableauxCmd::Enumerate { chain, cols, rows, containing, limit, parallel } => {
            let chain = load_chain(&chain)?;
            let profile = chain.profile();
            let xi = match containing {
                Some(d) => Some(load_divisor(&chain, &d)?.normalize(&chain)?.xi),
                None => None,
            };
            let mut shape = Shape::new(&profile, cols, rows);
            if let Some(xi) = &xi {
                shape = shape.containing(xi);
            }
            let all = if parallel { enumerate_tableaux_parallel(shape, limit) } else { enumerate_tableaux(shape, limit) };
            for t in all {
                serde_json::to_writer(&mut *out, &t)?;
                writeln!(out)?;
            }
            Ok(0)
        }
        TableauxCmd::Validate { chain, tableau } => {
            let chain = load_chain(&chain)?;
            let t = load_tableau(&tableau)?;
            let valid = is_displacement_tableau(&t, &chain.profile());
            let dim = valid.then(|| torus_dimension(&t, chain.g()));
            emit(out, &json!({"valid": valid, "torus_dimension": dim}))
        }
        TableauxCmd::DimWrd { chain, r, d, limit } => {
            let chain = load_chain(&chain)?;
            emit(out, &dim_wrd(&chain, r, d, limit)?)
        }
        TableauxCmd::LatticePath { tableau, g } => emit(out, &lattice_path(&load_tableau(&tableau)?, g)?),
    }
}

fn scrollar_cmd<W: Write>(cmd: ScrollarCmd, out: &mut W) -> Result<i32> {
    match cmd {
        ScrollarCmd::Generate { ty, cols, rows, g } => {
            let t = generate_scrollar(ty.get()?, cols, rows)?;
            let t = match g {
                Some(g) => embed_in_genus(&t, ty.k, g)
                    .ok_or_else(|| Error::invalid(format!("the filling does not fit the {}-gonal chain of genus {g}", ty.k)))?,
                None => t,
            };
            emit(out, &t)
        }
        ScrollarCmd::MinusOne { ty, tableau } => emit(out, &t_minus_one(&load_tableau(&tableau)?, ty.get()?)?),
        ScrollarCmd::CheckDim { ty, tableau, g } => {
            emit(out, &component_dimension_check(&load_tableau(&tableau)?, ty.get()?, g)?)
        }
        ScrollarCmd::Slopes { ty, tableau, g } => emit(out, &independence_slopes(&load_tableau(&tableau)?, ty.get()?, g)?),
        ScrollarCmd::SerialSubtract { chain, a, b, tableau, divisor, m } => {
            let chain = load_chain(&chain)?;
            let k = chain.k.ok_or_else(|| Error::invalid("chain has no gonality"))?;
            let ty = ScrollarType::new(a, b, k as usize)?;
            let t = load_tableau(&tableau)?;
            let d = load_divisor(&chain, &divisor)?.normalize(&chain)?;
            let m = m.unwrap_or_else(|| ty.m(t.cols()));
            let steps: Vec<Value> = serial_subtract(&chain, &t, ty, &d, m)?
                .into_iter()
                .map(|s| {
                    json!({"i": s.i, "divisor": divisor_to_json(&s.divisor), "tableau": s.tableau,
                           "contained": s.contained, "rank": rank(&chain, &s.divisor)})
                })
                .collect();
            emit(out, &steps)
        }
    }
}

fn map_coords(chain: &ChainOfCycles, t: &Tableau, input: &MapInput) -> Result<Vec<Q>> {
    match (&input.coords, &input.divisor) {
        (Some(c), _) => c.split(',').map(parse_q).collect(),
        (None, Some(d)) => Ok(construction_coords(chain, t, &load_divisor(chain, d)?.normalize(chain)?)),
        (None, None) => Err(Error::invalid("give --divisor or --coords")),
    }
}

fn emit_map<W: Write>(map: &TropicalMapSkeleton, input: &MapInput, out: &mut W) -> Result<i32> {
    if let Some(path) = &input.svg {
        let proj = parse_list::<usize>(&input.proj, "projection")?;
        let [x, y] = proj[..] else { return Err(Error::invalid("--proj takes two coordinates")) };
        write_file(path, &map.to_svg(x, y)?)?;
    }
    emit(out, map)
}

fn map_cmd<W: Write>(cmd: MapCmd, out: &mut W) -> Result<i32> {
    match cmd {
        MapCmd::BuildGeneric(input) => {
            let chain = load_chain(&input.chain)?;
            let t = load_tableau(&input.tableau)?;
            let cons = map_coords(&chain, &t, &input)?;
            emit_map(&build_generic_map(&chain, &t, &cons)?, &input, out)
        }
        MapCmd::BuildScroll { input, a, b } => {
            let chain = load_chain(&input.chain)?;
            let t = load_tableau(&input.tableau)?;
            let cons = map_coords(&chain, &t, &input)?;
            emit_map(&build_scroll_map(&chain, &t, a, b, &cons)?, &input, out)
        }
        MapCmd::Certify { map, tune, base, out: out_path, strict, reintegrate } => {
            let v = read_json(&map)?;
            let mut skeleton = if reintegrate {
                TropicalMapSkeleton::from_json_reintegrated(v)?
            } else {
                TropicalMapSkeleton::from_json(v)?
            };
            let mut tuning = None;
            if tune {
                let (tuned, report) = assign_well_spaced_lengths(&skeleton, parse_q(&base)?)?;
                skeleton = tuned;
                tuning = Some(report);
                if let Some(path) = out_path {
                    write_file(&path, &serde_json::to_string_pretty(&skeleton)?)?;
                }
            }
            let assumptions = check_assumptions(&skeleton)?;
            let spacing = naive_well_spacedness(&skeleton)?;
            let certified = if assumptions.superabundant {
                assumptions.passed && spacing.naively_well_spaced
            } else {
                assumptions.chain_of_cycles
            };
            emit(
                out,
                &json!({
                    "assumptions": assumptions,
                    "well_spacedness": spacing,
                    "tuning": tuning,
                    "naively_well_spaced": spacing.naively_well_spaced,
                    "certified": certified,
                }),
            )?;
            if strict && !certified {
                return Err(Error::Certificate("the map does not satisfy the lifting hypotheses".into()));
            }
            Ok(0)
        }
    }
}
