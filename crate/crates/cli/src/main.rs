//! `qfock`: evaluate q-calculus quantities, emit Gram tables and grids, and run
//! the identity verification suite.

mod args;
mod output;

use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use num_complex::Complex64;
use qfock_core::qbargmann::bargmann_unitarity_gram;
use qfock_core::qcomplex::{mixed_basis_gram, qgrid_generate, reference_seed_set, zq_value};
use qfock_core::qcore::{q_binomial, q_exp_series, q_factorial, q_gamma, q_number, QExpVariant};
use qfock_core::qfock::{kernel_eval, kernel_grid_csv};
use qfock_core::qhermite::{hermite_values_at, qhermite_gram, qhermite_recurrence};
use qfock_core::suite::{run_verification, run_verification_subset, OutputFormat, RunConfig};
use qfock_core::util::parse_complex;

use args::{Cli, Command, EvalTarget, GlobalArgs, GridArgs, TableName};
use output::Artifact;

const CONFIG_ENV: &str = "QFOCK_CONFIG";

/// Parameters of `grid --reference-seeds`.
const REFERENCE_Q: f64 = 0.6;
const REFERENCE_ITERATIONS: u32 = 6;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_config(global: &GlobalArgs) -> Result<RunConfig> {
    let mut cfg = match std::env::var_os(CONFIG_ENV) {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading {CONFIG_ENV}={}", Path::new(&path).display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", Path::new(&path).display()))?
        }
        None => RunConfig::default(),
    };
    if let Some(q) = global.q {
        cfg.q = q;
    }
    if let Some(m) = global.modes {
        cfg.modes = m;
    }
    if let Some(d) = global.depth {
        cfg.depth = d;
    }
    if let Some(t) = global.tol {
        cfg.tol = Some(t);
    }
    if let Some(f) = global.format {
        cfg.format = f.into();
    }
    if let Some(s) = global.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut cfg = load_config(&cli.global)?;
    let mut code = ExitCode::SUCCESS;
    let artifact = match cli.command {
        Command::Eval { target } => eval(target, &cfg.validated()?)?,
        Command::Table { name } => table(name, &cfg.validated()?)?,
        Command::Grid(g) => {
            if g.reference_seeds && cli.global.q.is_none() {
                cfg.q = REFERENCE_Q;
            }
            grid(&g, &cfg.validated()?)?
        }
        Command::Verify { only } => {
            let report = match only {
                Some(prefix) => run_verification_subset(&cfg, &prefix)?,
                None => run_verification(&cfg)?,
            };
            if !report.pass {
                for e in report.failures() {
                    let r = e.residual.map(|r| format!("{r:e}")).unwrap_or_else(|| "-".into());
                    eprintln!("FAIL {}: residual {r} > tol {:e}", e.name, e.tol);
                }
                code = ExitCode::from(1);
            }
            match cfg.format {
                OutputFormat::Csv => Artifact(report.to_csv()),
                OutputFormat::Json => Artifact::json(&report)?,
            }
        }
    };
    artifact.write(cli.global.out.as_deref())?;
    Ok(code)
}

fn parse_point(s: &str) -> Result<Complex64> {
    if let Some((x, y)) = s.split_once(',') {
        let x: f64 = x.trim().parse().with_context(|| format!("bad x in point `{s}`"))?;
        let y: f64 = y.trim().parse().with_context(|| format!("bad y in point `{s}`"))?;
        return Ok(Complex64::new(x, y));
    }
    parse_complex(s).ok_or_else(|| anyhow!("expected `x,y` or `a+bi`, got `{s}`"))
}

fn parse_complex_arg(s: &str) -> Result<Complex64> {
    parse_complex(s).ok_or_else(|| anyhow!("expected a complex literal like `0.1+0.2i`, got `{s}`"))
}

fn eval(target: EvalTarget, cfg: &RunConfig) -> Result<Artifact> {
    let ctx = cfg.context()?;
    let fmt = cfg.format;
    Ok(match target {
        EvalTarget::Qnum { alpha } => Artifact::real("qnum", q_number(alpha, &ctx), fmt)?,
        EvalTarget::Qfact { n } => Artifact::real("qfact", q_factorial(n, &ctx), fmt)?,
        EvalTarget::Qbinom { n, k } => Artifact::real("qbinom", q_binomial(n, k, &ctx)?, fmt)?,
        EvalTarget::BigE { x } => {
            let s = q_exp_series(&QExpVariant::big(ctx.q())?, x, &ctx)?;
            Artifact::real("Eq", s.value, fmt)?
        }
        EvalTarget::SmallE { x } => {
            let s = q_exp_series(&QExpVariant::small(ctx.q())?, x, &ctx)?;
            Artifact::real("eq", s.value, fmt)?
        }
        EvalTarget::Gamma { t } => Artifact::real("gamma", q_gamma(t, &ctx)?, fmt)?,
        EvalTarget::Zq { n, at } => Artifact::complex("zq", zq_value(n, parse_point(&at)?, &ctx), fmt)?,
        EvalTarget::Hermite { k, t } => match t {
            Some(t) => Artifact::real("hermite", hermite_values_at(&[t], k, &ctx)[k][0], fmt)?,
            None => {
                let h = qhermite_recurrence(k, &ctx).pop().expect("k + 1 polynomials");
                Artifact::coefficients("hermite", h.poly.coeffs(), fmt)?
            }
        },
        EvalTarget::Kernel { z, w } => {
            let k = kernel_eval(parse_complex_arg(&z)?, parse_complex_arg(&w)?, &ctx)?;
            Artifact::complex("kernel", k.value, fmt)?
        }
    })
}

fn table(name: TableName, cfg: &RunConfig) -> Result<Artifact> {
    let ctx = cfg.context()?;
    let report = match name {
        TableName::HermiteGram { kmax } => qhermite_gram(kmax, &ctx),
        TableName::MixedGram { n } => {
            if n == 0 {
                bail!("mixed-gram needs N >= 1");
            }
            mixed_basis_gram(n, &ctx)
        }
        TableName::BargmannGram { m } => bargmann_unitarity_gram(m.unwrap_or(cfg.modes), &ctx)?,
        TableName::KernelGrid { w, extent, steps } => {
            if steps < 2 || !(extent > 0.0) {
                bail!("kernel-grid needs steps >= 2 and extent > 0");
            }
            let w = parse_complex_arg(&w)?;
            let h = 2.0 * extent / (steps - 1) as f64;
            let points: Vec<Complex64> = (0..steps)
                .flat_map(|i| (0..steps).map(move |j| Complex64::new(-extent + h * i as f64, -extent + h * j as f64)))
                .collect();
            return Ok(Artifact(kernel_grid_csv(&points, w, &ctx)?));
        }
    };
    match cfg.format {
        OutputFormat::Csv => Ok(Artifact(report.to_csv())),
        OutputFormat::Json => Artifact::json(&report),
    }
}

fn read_seed_file(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading seed file {}", path.display()))?;
    let mut seeds = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed = line.split_once(',').and_then(|(x, y)| Some((x.trim().parse().ok()?, y.trim().parse().ok()?)));
        match parsed {
            Some(p) => seeds.push(p),
            None => bail!("{}:{}: expected `x,y`, got `{line}`", path.display(), no + 1),
        }
    }
    Ok(seeds)
}

fn grid(g: &GridArgs, cfg: &RunConfig) -> Result<Artifact> {
    let mut seeds = Vec::new();
    if g.reference_seeds {
        seeds.extend(reference_seed_set());
    }
    if let Some(list) = &g.points {
        for item in list.split(';').filter(|s| !s.trim().is_empty()) {
            let p = parse_point(item)?;
            seeds.push((p.re, p.im));
        }
    }
    if let Some(path) = &g.seed_file {
        seeds.extend(read_seed_file(path)?);
    }
    if seeds.is_empty() {
        bail!("no seeds: pass --points, --seed-file or --reference-seeds");
    }
    let depth = g.iterations.unwrap_or(if g.reference_seeds { REFERENCE_ITERATIONS } else { 0 });
    let grid = qgrid_generate(&seeds, depth, &cfg.context()?);
    match cfg.format {
        OutputFormat::Csv => Ok(Artifact(grid.to_csv())),
        OutputFormat::Json => Artifact::json(&grid),
    }
}
