//! The `biased-lattice` command line.
//!
//! Exit codes: 0 success / all checks passed, 1 a check failed, 2 usage or
//! I/O error. Randomised commands take explicit seeds only.

mod args;
mod recipe_file;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constructions::{
    recipe_for, FillingFamily, Labeling, ParamChoice, Recipe, Scenery, SceneryFn,
};
use crate::error::ConstructionError;
use crate::lattice::{LatticeBox, LatticePoint};
use crate::sim::{self, Bias, WalkConfig};
use crate::verify::{self, VerificationReport, VerifyOptions};

pub use args::{parse_box, parse_count, parse_slice, SlicePattern};
pub use recipe_file::{RecipeFile, RecipeFileError, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Recipe(#[from] RecipeFileError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Verify(#[from] crate::error::VerifyError),
    #[error(transparent)]
    Sim(#[from] crate::error::SimError),
}

#[derive(Parser, Debug)]
#[command(
    name = "biased-lattice",
    version,
    about = "Biased partitions of Z^n: build, query, verify, walk"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the recipe for a biased partition of Z^n.
    Build {
        /// Lattice dimension (omit with --z2).
        n: Option<u64>,
        /// Parameter for the next composition step, innermost first:
        /// zero | constant:V | periodic:a,b,.. | seeded:S
        #[arg(long = "param")]
        params: Vec<String>,
        /// Attach seeded:S to every composition step.
        #[arg(long, conflicts_with = "params")]
        seeded: Option<u64>,
        /// Build the planar diagonal partition with this parameter instead.
        #[arg(long, conflicts_with_all = ["params", "seeded"])]
        z2: Option<String>,
        /// Scenery selection, e.g. 1,2.
        #[arg(long)]
        parts: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print the part label of a point.
    Query {
        recipe: PathBuf,
        /// Point such as [0,0].
        #[arg(allow_hyphen_values = true)]
        point: String,
        /// Also print the labels of the 2n neighbours.
        #[arg(long)]
        neighbors: bool,
    },
    /// Brute-force check a recipe, scenery or filling family over a box.
    Verify {
        recipe: Option<PathBuf>,
        /// timestwo:n=N or blockweighted:m=M,n=N
        #[arg(long, conflicts_with_all = ["recipe", "negative"])]
        filling: Option<String>,
        /// Free function for --filling.
        #[arg(long, requires = "filling")]
        param: Option<String>,
        /// Known-bad family: blockweighted0[:m=M,n=N]
        #[arg(long, conflicts_with = "recipe")]
        negative: Option<String>,
        /// a..b, a..b,c..d,... or [lo]..[hi]
        #[arg(long = "box", default_value = "-4..4", allow_hyphen_values = true)]
        bbox: String,
        /// Largest box checked exhaustively.
        #[arg(long, default_value = "1e6", value_parser = parse_count)]
        cap: u64,
        /// Sampling seed, required when the box exceeds the cap.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "1e5", value_parser = parse_count)]
        draws: u64,
        #[arg(long, default_value_t = verify::DEFAULT_MAX_VIOLATIONS)]
        max_violations: usize,
        /// Check the union of these parts as a c-biased set.
        #[arg(long)]
        parts: Option<String>,
        /// Write the report(s) as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Walk over a scenery and test the observed bits against Bernoulli(p).
    Walk {
        recipe: PathBuf,
        #[arg(long)]
        parts: Option<String>,
        #[arg(long, value_parser = parse_count)]
        steps: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = sim::DEFAULT_Z)]
        z: f64,
        #[arg(long, default_value_t = sim::DEFAULT_MAX_LAG)]
        lags: usize,
        /// Write the observed bits.
        #[arg(long)]
        bits: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = BitFormat::Ascii)]
        bits_format: BitFormat,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compare two sceneries: k-gram test on their walks, or a difference witness.
    Compare {
        recipe_a: PathBuf,
        recipe_b: PathBuf,
        #[arg(long)]
        parts_a: Option<String>,
        #[arg(long)]
        parts_b: Option<String>,
        #[arg(long, value_parser = parse_count, required_unless_present = "witness")]
        steps: Option<u64>,
        #[arg(long, required_unless_present = "witness")]
        seed_a: Option<u64>,
        #[arg(long, required_unless_present = "witness")]
        seed_b: Option<u64>,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = sim::DEFAULT_ALPHA)]
        alpha: f64,
        /// Search a box for a point where the two oracles differ.
        #[arg(long)]
        witness: bool,
        #[arg(long = "box", default_value = "-10..10", allow_hyphen_values = true)]
        bbox: String,
        #[arg(long, default_value = "1e6", value_parser = parse_count)]
        cap: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "1e5", value_parser = parse_count)]
        draws: u64,
    },
    /// Write part labels (or scenery values) over a 2-D slice.
    ExportSlice {
        recipe: PathBuf,
        /// One entry per coordinate: '*' for the two free axes, integers elsewhere.
        #[arg(long, allow_hyphen_values = true)]
        slice: Option<String>,
        /// Window over the two free axes: a..b or a..b,c..d.
        #[arg(long = "box", default_value = "-16..16", allow_hyphen_values = true)]
        bbox: String,
        #[arg(long, value_enum, default_value_t = SliceFormat::Csv)]
        format: SliceFormat,
        #[arg(long)]
        parts: Option<String>,
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BitFormat {
    Ascii,
    Packed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SliceFormat {
    Csv,
    Pgm,
}

/// Runs the CLI with `argv` (program name first), writing normal output to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Build {
            n,
            params,
            seeded,
            z2,
            parts,
            out: path,
        } => cmd_build(
            n,
            &params,
            seeded,
            z2.as_deref(),
            parts.as_deref(),
            path.as_deref(),
            out,
        ),
        Command::Query {
            recipe,
            point,
            neighbors,
        } => cmd_query(&recipe, &point, neighbors, out),
        Command::Verify {
            recipe,
            filling,
            param,
            negative,
            bbox,
            cap,
            seed,
            draws,
            max_violations,
            parts,
            json,
        } => {
            let opts = VerifyOptions {
                exhaustive_cap: cap as u128,
                sampling: seed.map(|seed| verify::Sampling {
                    seed,
                    draws: draws as usize,
                }),
                max_violations,
            };
            let target = match (recipe, filling, negative) {
                (Some(r), None, None) => VerifyTarget::Recipe(r, parts),
                (None, Some(f), None) => VerifyTarget::Filling(f, param),
                (None, None, Some(n)) => VerifyTarget::Negative(n),
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of RECIPE, --filling or --negative".into(),
                    ))
                }
            };
            cmd_verify(target, &bbox, &opts, json.as_deref(), out)
        }
        Command::Walk {
            recipe,
            parts,
            steps,
            seed,
            z,
            lags,
            bits,
            bits_format,
            json,
        } => cmd_walk(
            &recipe,
            parts.as_deref(),
            steps,
            seed,
            z,
            lags,
            bits.as_deref().map(|p| (p, bits_format)),
            json.as_deref(),
            out,
        ),
        Command::Compare {
            recipe_a,
            recipe_b,
            parts_a,
            parts_b,
            steps,
            seed_a,
            seed_b,
            k,
            alpha,
            witness,
            bbox,
            cap,
            seed,
            draws,
        } => {
            let a = load_oracle(&recipe_a, parts_a.as_deref())?;
            let b = load_oracle(&recipe_b, parts_b.as_deref())?;
            if witness {
                cmd_witness(&a, &b, &bbox, cap, seed.map(|s| (s, draws as usize)), out)
            } else {
                let (steps, seed_a, seed_b) = match (steps, seed_a, seed_b) {
                    (Some(s), Some(a), Some(b)) => (s, a, b),
                    _ => {
                        return Err(CliError::Usage(
                            "--steps, --seed-a and --seed-b are required".into(),
                        ))
                    }
                };
                cmd_compare(&a, &b, steps, seed_a, seed_b, k, alpha, out)
            }
        }
        Command::ExportSlice {
            recipe,
            slice,
            bbox,
            format,
            parts,
            out: path,
        } => cmd_export_slice(
            &recipe,
            slice.as_deref(),
            &bbox,
            format,
            parts.as_deref(),
            &path,
            out,
        ),
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(io_err(path))
}

fn load(path: &Path) -> Result<RecipeFile, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    Ok(RecipeFile::parse(&text)?)
}

fn selection(file: &RecipeFile, parts: Option<&str>) -> Result<Option<Vec<u32>>, CliError> {
    match parts {
        Some(p) => Ok(Some(args::parse_labels(p)?)),
        None => Ok(file.selection.clone()),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(io_err(Path::new("<stdout>")))
}

fn cmd_build(
    n: Option<u64>,
    params: &[String],
    seeded: Option<u64>,
    z2: Option<&str>,
    parts: Option<&str>,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let recipe = match (z2, n) {
        (Some(p), None | Some(2)) => {
            let choice: ParamChoice = p.parse()?;
            Recipe::z2_diagonal(choice.with_codomain(2)?)?
        }
        (Some(_), Some(n)) => {
            return Err(CliError::Usage(format!(
                "--z2 builds a partition of Z^2, not Z^{n}"
            )))
        }
        (None, None) => return Err(CliError::Usage("missing dimension N".into())),
        (None, Some(n)) => {
            let choices: Vec<ParamChoice> = match seeded {
                Some(seed) => {
                    vec![
                        ParamChoice::Rule(crate::constructions::ParamRule::Seeded { seed });
                        crate::constructions::step_count(n)
                    ]
                }
                None => params
                    .iter()
                    .map(|p| p.parse())
                    .collect::<Result<_, ConstructionError>>()?,
            };
            recipe_for(n, Some(&choices))?
        }
    };
    let selection = parts.map(args::parse_labels).transpose()?;
    if let Some(sel) = &selection {
        SceneryFn::new(recipe.clone(), sel.iter().copied())?;
    }
    let file = RecipeFile::new(recipe, selection);
    let mut text = format!(
        "dim: {}\npart_count: {}\nchain: {}\n",
        file.recipe.dim(),
        file.recipe.part_count(),
        file.recipe
    );
    if let Some(path) = path {
        write_file(path, file.to_json().as_bytes())?;
        text.push_str(&format!("wrote: {}\n", path.display()));
    }
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_query(
    path: &Path,
    point: &str,
    neighbors: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let file = load(path)?;
    let x: LatticePoint = point.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
    let label = file.recipe.part_of(&x)?;
    let mut text = format!("{label}\n");
    if neighbors {
        let labels: Vec<u32> = x
            .neighbors()
            .iter()
            .map(|y| file.recipe.label(y.coords()))
            .collect();
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        let is_perm = sorted.iter().copied().eq(1..=file.recipe.part_count());
        let joined: Vec<String> = labels.iter().map(u32::to_string).collect();
        text.push_str(&format!(
            "neighbors: {}\npermutation: {}\n",
            joined.join(","),
            if is_perm { "yes" } else { "no" }
        ));
    }
    emit(out, &text)?;
    Ok(EXIT_OK)
}

enum VerifyTarget {
    Recipe(PathBuf, Option<String>),
    Filling(String, Option<String>),
    Negative(String),
}

fn cmd_verify(
    target: VerifyTarget,
    bbox: &str,
    opts: &VerifyOptions,
    json: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let reports: Vec<VerificationReport> = match target {
        VerifyTarget::Recipe(path, parts) => {
            let file = load(&path)?;
            let bx = parse_box(bbox, file.recipe.dim())?;
            let mut reports = vec![verify::verify_biased_partition(&file.recipe, &bx, opts)?];
            if let Some(sel) = selection(&file, parts.as_deref())? {
                let s = SceneryFn::new(file.recipe.clone(), sel)?;
                reports.push(verify::verify_biased_set(&s, &bx, s.count(), opts)?);
            }
            reports
        }
        VerifyTarget::Filling(spec, param) => {
            let param: Option<ParamChoice> = param.map(|p| p.parse()).transpose()?;
            let spec = args::parse_filling(&spec, param.as_ref())?;
            let bx = parse_box(bbox, spec.ambient_dim())?;
            vec![verify::verify_filling(&spec, &bx, opts)?]
        }
        VerifyTarget::Negative(name) => {
            let family = args::parse_negative(&name)?;
            let bx = parse_box(bbox, family.ambient_dim())?;
            vec![verify::verify_filling(&family, &bx, opts)?]
        }
    };
    let text: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
    emit(out, &(text.join("\n\n") + "\n"))?;
    if let Some(path) = json {
        let mut s = serde_json::to_string_pretty(&reports).expect("report serialisation");
        s.push('\n');
        write_file(path, s.as_bytes())?;
    }
    Ok(if reports.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

/// A loaded recipe, optionally narrowed to a scenery.
struct Oracle {
    recipe: Recipe,
    scenery: Option<SceneryFn>,
}

impl Oracle {
    fn dim(&self) -> usize {
        self.recipe.dim()
    }

    fn value(&self, x: &[i64]) -> u32 {
        match &self.scenery {
            Some(s) => s.value(x) as u32,
            None => self.recipe.label(x),
        }
    }

    fn scenery(&self, what: &str) -> Result<&SceneryFn, CliError> {
        self.scenery
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("{what}: no scenery selection (use --parts)")))
    }
}

fn load_oracle(path: &Path, parts: Option<&str>) -> Result<Oracle, CliError> {
    let file = load(path)?;
    let scenery = selection(&file, parts)?
        .map(|sel| SceneryFn::new(file.recipe.clone(), sel))
        .transpose()?;
    Ok(Oracle {
        recipe: file.recipe,
        scenery,
    })
}

#[derive(Serialize)]
struct WalkReport<'a> {
    generator: &'static str,
    seed: u64,
    steps: u64,
    chain: String,
    selection: Vec<u32>,
    check: &'a sim::BernoulliCheck,
}

#[allow(clippy::too_many_arguments)]
fn cmd_walk(
    path: &Path,
    parts: Option<&str>,
    steps: u64,
    seed: u64,
    z: f64,
    lags: usize,
    bits: Option<(&Path, BitFormat)>,
    json: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let oracle = load_oracle(path, parts)?;
    let scenery = oracle.scenery("walk")?;
    let cfg = WalkConfig::new(oracle.dim(), steps, seed)?;
    let seq = sim::simulate(scenery, &cfg)?;
    let (c, d) = scenery.bias();
    let check = sim::bernoulli_check(seq.bits(), Bias::new(c as u64, d as u64)?, z, lags);
    let s = &check.stats;
    let fmt_list = |v: &[f64]| {
        v.iter()
            .map(|x| format!("{x:.6}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    let autocorr = match check.autocorrelation_ok {
        Some(ok) => format!(
            "autocorrelations: {} (bound {:.6}) {}\n",
            fmt_list(&s.autocorrelations),
            check.autocorrelation_bound,
            if ok { "ok" } else { "FAIL" }
        ),
        None => "autocorrelations: skipped (degenerate p)\n".to_string(),
    };
    let text = format!(
        "generator: {}\nseed: {seed}\nsteps: {steps}\nbias: {c}/{d}\nlength: {}\nones: {}\n\
         frequency: {:.6} (target {:.6}, bound {:.6}) {}\n{autocorr}result: {}\n",
        sim::GENERATOR,
        s.length,
        s.ones,
        s.frequency,
        check.bias.value(),
        check.frequency_bound,
        if check.frequency_ok { "ok" } else { "FAIL" },
        if check.passed { "PASS" } else { "FAIL" },
    );
    emit(out, &text)?;
    if let Some((p, format)) = bits {
        match format {
            BitFormat::Ascii => write_file(p, seq.to_ascii().as_bytes())?,
            BitFormat::Packed => write_file(p, &seq.to_packed())?,
        }
    }
    if let Some(p) = json {
        let report = WalkReport {
            generator: sim::GENERATOR,
            seed,
            steps,
            chain: oracle.recipe.to_string(),
            selection: scenery.selected().iter().copied().collect(),
            check: &check,
        };
        let mut js = serde_json::to_string_pretty(&report).expect("walk report serialisation");
        js.push('\n');
        write_file(p, js.as_bytes())?;
    }
    Ok(if check.passed { EXIT_OK } else { EXIT_FAILED })
}

#[allow(clippy::too_many_arguments)]
fn cmd_compare(
    a: &Oracle,
    b: &Oracle,
    steps: u64,
    seed_a: u64,
    seed_b: u64,
    k: usize,
    alpha: f64,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let sa = sim::simulate(
        a.scenery("first recipe")?,
        &WalkConfig::new(a.dim(), steps, seed_a)?,
    )?;
    let sb = sim::simulate(
        b.scenery("second recipe")?,
        &WalkConfig::new(b.dim(), steps, seed_b)?,
    )?;
    let cmp = sim::kgram_compare(sa.bits(), sb.bits(), k, alpha)?;
    let text = format!(
        "generator: {}\nk: {}\nalpha: {}\nblocks: {} / {}\nstatistic: {:.6}\ndegrees_of_freedom: {}\n\
         critical: {:.6}\ndecision: {}\n",
        sim::GENERATOR,
        cmp.k,
        cmp.alpha,
        cmp.blocks_a,
        cmp.blocks_b,
        cmp.statistic,
        cmp.degrees_of_freedom,
        cmp.critical,
        if cmp.distinguished { "distinguished" } else { "not distinguished" }
    );
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_witness(
    a: &Oracle,
    b: &Oracle,
    bbox: &str,
    cap: u64,
    sampling: Option<(u64, usize)>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if a.dim() != b.dim() {
        return Err(CliError::Usage(format!(
            "recipes have dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let bx = parse_box(bbox, a.dim())?;
    let volume = bx.volume().unwrap_or(u128::MAX);
    let fa = |x: &[i64]| a.value(x);
    let fb = |x: &[i64]| b.value(x);
    let (found, mode) = if volume <= cap as u128 {
        (
            verify::find_difference(fa, fb, &bx),
            "exhaustive".to_string(),
        )
    } else {
        let (seed, draws) = sampling.ok_or(crate::error::VerifyError::SeedRequired {
            volume,
            cap: cap as u128,
        })?;
        (
            verify::find_difference_sampled(fa, fb, &bx, seed, draws),
            format!("sampled (seed {seed}, {draws} draws)"),
        )
    };
    let text = match found {
        Some(w) => format!(
            "mode: {mode}\nwitness: {w}\nvalues: {} / {}\n",
            a.value(w.coords()),
            b.value(w.coords())
        ),
        None => format!("mode: {mode}\nwitness: none in {bx}\n"),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_export_slice(
    path: &Path,
    slice: Option<&str>,
    bbox: &str,
    format: SliceFormat,
    parts: Option<&str>,
    dest: &Path,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let oracle = load_oracle(path, parts)?;
    let pattern = parse_slice(slice, oracle.dim())?;
    let window = parse_box(bbox, 2)?;
    let grid = slice_values(&oracle, &pattern, &window);
    let max = match oracle.scenery {
        Some(_) => 1,
        None => oracle.recipe.part_count(),
    };
    let bytes = match format {
        SliceFormat::Csv => slice_csv(&grid)?,
        SliceFormat::Pgm => slice_pgm(&grid, oracle.scenery.is_some(), max),
    };
    write_file(dest, &bytes)?;
    emit(
        out,
        &format!(
            "wrote: {} ({} rows x {} columns)\n",
            dest.display(),
            grid.len(),
            grid.first().map_or(0, Vec::len)
        ),
    )?;
    Ok(EXIT_OK)
}

/// Row `r` is the first free axis at `lo_1 + r`, column `c` the second at
/// `lo_2 + c`.
fn slice_values(oracle: &Oracle, pattern: &SlicePattern, window: &LatticeBox) -> Vec<Vec<u32>> {
    let (lo, hi) = (window.lo().coords(), window.hi().coords());
    let mut x: Vec<i64> = pattern.fixed.iter().map(|v| v.unwrap_or(0)).collect();
    (lo[0]..=hi[0])
        .map(|u| {
            (lo[1]..=hi[1])
                .map(|v| {
                    x[pattern.free[0]] = u;
                    x[pattern.free[1]] = v;
                    oracle.value(&x)
                })
                .collect()
        })
        .collect()
}

fn slice_csv(grid: &[Vec<u32>]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    for row in grid {
        w.write_record(row.iter().map(u32::to_string))
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    w.into_inner().map_err(|e| CliError::Usage(e.to_string()))
}

/// Binary PGM: `P5\n<width> <height>\n255\n` then one byte per cell, row
/// major. Labels `v ∈ [2n]` map to `floor(255·(v-1)/(2n-1))`; scenery
/// values map 0 → 0, 1 → 255.
fn slice_pgm(grid: &[Vec<u32>], scenery: bool, part_count: u32) -> Vec<u8> {
    let height = grid.len();
    let width = grid.first().map_or(0, Vec::len);
    let mut bytes = format!("P5\n{width} {height}\n255\n").into_bytes();
    for row in grid {
        for &v in row {
            let level = if scenery {
                255 * v
            } else {
                255 * (v - 1) / (part_count - 1).max(1)
            };
            bytes.push(level as u8);
        }
    }
    bytes
}
