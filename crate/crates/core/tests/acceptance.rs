//! Acceptance suite. Runs each criterion, prints one PASS/FAIL line per
//! criterion and exits non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use biased_lattice::cli::RecipeFile;
use biased_lattice::constructions::{
    recipe_for, scenery, seeded_recipe, FillingSpec, HalfBiasedZ2, Labeling, ParamChoice, ParamFn,
    Recipe, Scenery, SceneryFn, ZeroBasedBlockWeighted,
};
use biased_lattice::sim::{bernoulli_check, kgram_compare, simulate, Bias, WalkConfig};
use biased_lattice::verify::{
    find_difference, verify_biased_partition, verify_biased_set, verify_filling,
    VerificationReport, VerifyOptions,
};
use biased_lattice::LatticeBox;

mod common;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clean(r: &VerificationReport, what: &str) -> Result<(), String> {
    ensure(r.passed && r.total_violations() == 0, || {
        format!("{what}: {} violation(s)", r.total_violations())
    })
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e <= limit, || {
        format!("{what} took {e:.1?}, limit {limit:?}")
    })?;
    Ok(e)
}

/// Exhaustive box with at least 10^4 points for dimension `dim`.
fn box_1e4(dim: usize) -> LatticeBox {
    let radius = (1..)
        .find(|r| (2 * r + 1i64).pow(dim as u32) >= 10_000)
        .unwrap();
    LatticeBox::centered(dim, radius).unwrap()
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut points = 0;
    for n in [1u64, 2, 3, 4, 5, 6, 8, 12] {
        let r = recipe_for(n, None).map_err(|e| e.to_string())?;
        let (bx, opts) = if n <= 4 {
            (box_1e4(n as usize), VerifyOptions::default())
        } else {
            (
                LatticeBox::centered(n as usize, 10).unwrap(),
                VerifyOptions::sampled(n, 100_000),
            )
        };
        let rep = verify_biased_partition(&r, &bx, &opts).map_err(|e| e.to_string())?;
        ensure(rep.points_checked >= 10_000, || {
            format!("n={n}: only {} points", rep.points_checked)
        })?;
        clean(&rep, &format!("n={n}"))?;
        points += rep.points_checked;
    }
    let e = within(t, Duration::from_secs(60), "bias verification")?;
    Ok(format!(
        "8 dimensions, {points} points, 0 violations, {e:.1?}"
    ))
}

fn criterion_2() -> Outcome {
    let err = |e: biased_lattice::ConstructionError| e.to_string();
    let opts = VerifyOptions::default();
    for n in 1..=4u32 {
        let spec = FillingSpec::times_two_plain(n).map_err(err)?;
        let rep = verify_filling(&spec, &LatticeBox::centered(n as usize, 6).unwrap(), &opts)
            .map_err(|e| e.to_string())?;
        clean(&rep, &spec.describe())?;
    }
    for (m, n) in [(1u32, 1u32), (1, 2), (2, 1)] {
        let spec = FillingSpec::block_weighted_plain(m, n).map_err(err)?;
        let bx = box_1e4((2 * m * n) as usize);
        let rep = verify_filling(&spec, &bx, &opts).map_err(|e| e.to_string())?;
        ensure(rep.points_checked >= 10_000, || "box too small".into())?;
        clean(&rep, &spec.describe())?;
    }
    let neg = ZeroBasedBlockWeighted::plain(1, 1).map_err(err)?;
    let rep = verify_filling(&neg, &box_1e4(2), &opts).map_err(|e| e.to_string())?;
    ensure(!rep.passed && rep.total_violations() >= 1, || {
        "zero-based weights were not rejected".into()
    })?;
    Ok(format!(
        "4 TimesTwo + 3 BlockWeighted clean; zero-based variant: {} violations",
        rep.total_violations()
    ))
}

fn criterion_3() -> Outcome {
    let r = recipe_for(2, None).map_err(|e| e.to_string())?;
    let bx = LatticeBox::centered(2, 10).unwrap();
    let mut agree = 0;
    for z in bx.points() {
        if common::expand_compose_2d(z.coords()) == vec![r.label(z.coords())] {
            agree += 1;
        }
    }
    ensure(agree == 441, || format!("{agree}/441 points agree"))?;
    Ok(format!("{agree}/441 points agree"))
}

fn z2_params() -> Vec<ParamFn> {
    vec![
        ParamFn::constant(2, 1).unwrap(),
        ParamFn::periodic(2, vec![1, 2, 2]).unwrap(),
        ParamFn::seeded(2, 77).unwrap(),
    ]
}

fn criterion_4() -> Outcome {
    let bx = LatticeBox::centered(2, 16).unwrap();
    let opts = VerifyOptions::default();
    for f in z2_params() {
        let r = Recipe::z2_diagonal(f.clone()).map_err(|e| e.to_string())?;
        clean(
            &verify_biased_partition(&r, &bx, &opts).unwrap(),
            &format!("partition {}", f.rule()),
        )?;
        let s = HalfBiasedZ2::new(f.clone()).map_err(|e| e.to_string())?;
        clean(
            &verify_biased_set(&s, &bx, 2, &opts).unwrap(),
            &format!("half set {}", f.rule()),
        )?;
    }
    Ok("3 partitions and 3 half-biased sets clean on [-16,16]^2".into())
}

fn criterion_5() -> Outcome {
    let bx = LatticeBox::centered(3, 5).unwrap();
    let opts = VerifyOptions::default();
    let recipes = [recipe_for(3, None).unwrap(), seeded_recipe(3, 11).unwrap()];
    for r in &recipes {
        for c in 1..=5u32 {
            let s = scenery(r, 1..=c).map_err(|e| e.to_string())?;
            clean(
                &verify_biased_set(&s, &bx, c, &opts).unwrap(),
                &format!("c={c}"),
            )?;
        }
    }
    Ok("c = 1..5 clean on [-5,5]^3 for plain and seeded parameters".into())
}

fn criterion_6() -> Outcome {
    let bx = LatticeBox::centered(2, 10).unwrap();
    let bx4 = LatticeBox::centered(4, 10).unwrap();
    let p = |k: u32, t: &[u32]| ParamFn::periodic(k, t.to_vec()).unwrap();
    let seeded = ParamFn::seeded(2, 5).unwrap();
    let pairs = [
        (
            ParamFn::constant(2, 1).unwrap(),
            ParamFn::constant(2, 2).unwrap(),
        ),
        (p(2, &[1, 1]), p(2, &[1, 1, 1, 2])),
        (p(2, &[2, 1, 2]), p(2, &[2, 1, 1])),
        (
            seeded.clone(),
            ParamFn::constant(2, 3 - seeded.eval(0)).unwrap(),
        ),
        (p(2, &[1, 1]), p(2, &[1, 2])),
    ];
    let mut worst = Duration::ZERO;
    for (i, (f, g)) in pairs.into_iter().enumerate() {
        ensure(f.eval(0) != g.eval(0), || format!("pair {i}: f(0) = g(0)"))?;
        let t = Instant::now();
        let found = match i % 3 {
            0 => {
                let (a, b) = (HalfBiasedZ2::new(f).unwrap(), HalfBiasedZ2::new(g).unwrap());
                find_difference(|x: &[i64]| a.value(x), |x: &[i64]| b.value(x), &bx)
            }
            1 => {
                let a = Recipe::z2_diagonal(f).unwrap();
                let b = Recipe::z2_diagonal(g).unwrap();
                find_difference(|x: &[i64]| a.label(x), |x: &[i64]| b.label(x), &bx)
            }
            _ => {
                // outer (2,2) step of the Z^4 recipe
                let pa = [ParamChoice::ZeroShift, ParamChoice::Rule(f.rule().clone())];
                let pb = [ParamChoice::ZeroShift, ParamChoice::Rule(g.rule().clone())];
                let a = recipe_for(4, Some(&pa)).unwrap();
                let b = recipe_for(4, Some(&pb)).unwrap();
                find_difference(|x: &[i64]| a.label(x), |x: &[i64]| b.label(x), &bx4)
            }
        };
        let e = within(t, Duration::from_secs(5), &format!("pair {i}"))?;
        worst = worst.max(e);
        ensure(found.is_some(), || {
            format!("pair {i}: no witness in radius 10")
        })?;
    }
    Ok(format!("5/5 witnesses found, slowest {worst:.1?}"))
}

fn quarter(seed: u64, parts: &[u32]) -> SceneryFn {
    let r = Recipe::z2_diagonal(ParamFn::seeded(2, seed).unwrap()).unwrap();
    SceneryFn::new(r, parts.iter().copied()).unwrap()
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let steps = 1_000_000;
    let s1 = quarter(1, &[1]);
    let bx = LatticeBox::centered(2, 16).unwrap();
    clean(
        &verify_biased_set(&s1, &bx, 1, &VerifyOptions::default()).unwrap(),
        "scenery",
    )?;
    let run = |s: &SceneryFn, seed| simulate(s, &WalkConfig::new(2, steps, seed).unwrap()).unwrap();
    let a = run(&s1, 7);
    let check = bernoulli_check(a.bits(), Bias::new(1, 4).unwrap(), 3.0, 4);
    let freq_bound = 3.0 * (3.0f64 / 16.0 * 1e-6).sqrt();
    let dev = (check.stats.frequency - 0.25).abs();
    ensure(dev <= freq_bound, || {
        format!("frequency off by {dev:.6} > {freq_bound:.6}")
    })?;
    let max_ac = check
        .stats
        .autocorrelations
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    ensure(
        check.stats.autocorrelations.len() == 4 && max_ac <= 3e-3,
        || format!("autocorrelation {max_ac:.6} > 0.003"),
    )?;
    let b = run(&quarter(2, &[1]), 8);
    let same = kgram_compare(a.bits(), b.bits(), 3, 0.01).map_err(|e| e.to_string())?;
    ensure(!same.distinguished, || {
        format!("equal p distinguished (stat {:.3})", same.statistic)
    })?;
    let h = run(&quarter(2, &[1, 2]), 9);
    let diff = kgram_compare(a.bits(), h.bits(), 3, 0.01).map_err(|e| e.to_string())?;
    ensure(diff.distinguished, || {
        "p=1/4 vs p=1/2 not distinguished".into()
    })?;
    let e = within(t, Duration::from_secs(30), "walk statistics")?;
    Ok(format!(
        "freq dev {dev:.6}, max |ac| {max_ac:.6}, chi2 {:.2} vs {:.2} (equal p) and {:.0} (1/4 vs 1/2), {e:.1?}",
        same.statistic, same.critical, diff.statistic
    ))
}

fn cli(args: &[&str], dir: &Path) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_biased-lattice"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run cli");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_8() -> Outcome {
    let files = [
        RecipeFile::new(recipe_for(12, None).unwrap(), None),
        RecipeFile::new(seeded_recipe(10, 3).unwrap(), Some(vec![1, 4, 9])),
        RecipeFile::new(
            Recipe::z2_diagonal(z2_params()[1].clone()).unwrap(),
            Some(vec![2]),
        ),
    ];
    for f in &files {
        let text = f.to_json();
        let back = RecipeFile::parse(&text).map_err(|e| e.to_string())?;
        ensure(back == *f && back.to_json() == text, || {
            "library round trip".into()
        })?;
    }

    let runs: Vec<_> = (0..2)
        .map(|_| {
            let dir = tempfile::tempdir().unwrap();
            let d = dir.path();
            let mut log = Vec::new();
            for args in [
                &[
                    "build", "6", "--seeded", "9", "--parts", "1,3", "-o", "s6.json",
                ][..],
                &[
                    "build", "2", "--z2", "seeded:4", "--parts", "1", "-o", "z.json",
                ],
                &[
                    "build", "2", "--z2", "seeded:5", "--parts", "1,2", "-o", "h.json",
                ],
                &["query", "s6.json", "[3,-1,4,1,-5,9]", "--neighbors"],
                &[
                    "verify", "s6.json", "--box", "-10..10", "--cap", "1e4", "--seed", "3",
                    "--draws", "2e4", "--json", "v.json",
                ],
                &[
                    "walk",
                    "z.json",
                    "--steps",
                    "2e4",
                    "--seed",
                    "7",
                    "--bits",
                    "b.bin",
                    "--bits-format",
                    "packed",
                    "--json",
                    "w.json",
                ],
                &[
                    "compare", "z.json", "h.json", "--steps", "2e4", "--seed-a", "1", "--seed-b",
                    "2",
                ],
                &[
                    "compare",
                    "z.json",
                    "h.json",
                    "--witness",
                    "--box",
                    "-50..50",
                    "--cap",
                    "100",
                    "--seed",
                    "1",
                ],
                &[
                    "export-slice",
                    "s6.json",
                    "--slice",
                    "*,0,*,0,0,0",
                    "--format",
                    "pgm",
                    "-o",
                    "s.pgm",
                ],
                &["export-slice", "z.json", "--format", "csv", "-o", "z.csv"],
            ] {
                let (code, stdout) = cli(args, d);
                log.push((args.join(" "), code, stdout));
            }
            for name in [
                "s6.json", "z.json", "h.json", "v.json", "b.bin", "w.json", "s.pgm", "z.csv",
            ] {
                log.push((
                    name.to_string(),
                    0,
                    std::fs::read(d.join(name)).unwrap_or_default(),
                ));
            }
            log
        })
        .collect();
    for ((cmd, code, out), (_, code2, out2)) in runs[0].iter().zip(&runs[1]) {
        ensure(*code != 2 && !out.is_empty(), || {
            format!("{cmd:?} failed (exit {code})")
        })?;
        ensure(code == code2 && out == out2, || {
            format!("{cmd:?} differs between runs")
        })?;
    }
    // the file written by build must parse back to identical bytes
    let (_, _, bytes) = runs[0].iter().find(|(n, _, _)| n == "s6.json").unwrap();
    let text = String::from_utf8(bytes.clone()).unwrap();
    ensure(RecipeFile::parse(&text).unwrap().to_json() == text, || {
        "cli round trip".into()
    })?;
    Ok(format!(
        "3 recipe files round-trip, {} seeded command outputs identical",
        runs[0].len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("bias verification of recipe_for(n)", criterion_1),
        ("filling families", criterion_2),
        ("composition vs direct expansion", criterion_3),
        ("planar constructions", criterion_4),
        ("scenery selection", criterion_5),
        ("distinctness witnesses", criterion_6),
        ("walk statistics", criterion_7),
        ("round trip and determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
