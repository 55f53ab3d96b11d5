//! Command-line front end: verification suites, instance generators,
//! kernel-dimension and degree-bound reports, coefficient tables, and an
//! index-notation expression evaluator over JSON tensor files.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports failures,
//! 2 on usage or input errors. Reports stream to stdout, diagnostics to
//! stderr; identical arguments and seeds produce byte-identical JSON.

use std::collections::HashMap;
use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use pseudoherm::bochner::{
    betti_bound_report, ratio_to_f64, run_suite, weitzenboeck_coefficients, SuiteConfig,
    WeitzenboeckTable,
};
use pseudoherm::curvature::{
    eigendecompose, gen_constant, gen_flat, gen_random_psd_symmetric, kernel_dimension,
    operator_matrix,
};
use pseudoherm::indexexpr;
use pseudoherm::json::{
    curvature_to_dto, dto_to_curvature, dto_to_tensor, spectrum_to_dto, tensor_to_dto,
    CurvatureDto, TensorDto,
};
use pseudoherm::levi::LeviForm;

#[derive(Parser)]
#[command(
    name = "pseudoherm",
    about = "Pointwise pseudohermitian curvature algebra and Bochner-type verification suites",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of human-readable tables
    #[arg(long, global = true)]
    json: bool,
    /// Residual tolerance
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args)]
struct ShapeArgs {
    /// CR dimension
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// holomorphic degree
    #[arg(long, default_value_t = 1)]
    p: usize,
    /// antiholomorphic degree
    #[arg(long, default_value_t = 1)]
    q: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: lemma-antisym, symmetries, bochner, equality
    Verify {
        /// suite name
        suite: String,
        #[command(flatten)]
        shape: ShapeArgs,
        /// antisymmetrization arity (lemma-antisym suite)
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Generate a curvature instance: flat, constant, random-psd
    Gen {
        /// generator name
        kind: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// curvature level for the constant family
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// output file; stdout when omitted
        #[arg(long)]
        out: Option<String>,
    },
    /// Kernel dimension of the curvature operator of a stored instance
    Kernel {
        /// curvature JSON file (with its Levi form)
        #[arg(long)]
        curvature: String,
    },
    /// Kernel-dimension bound for every valid (p,q) degree pair
    Betti {
        #[arg(long)]
        curvature: String,
    },
    /// Exact rational curvature/gradient coefficient table
    Weitzenboeck {
        #[command(flatten)]
        shape: ShapeArgs,
        /// refactoring 1 or 2
        #[arg(long, default_value_t = 1)]
        formula: u8,
    },
    /// Evaluate an index-notation expression over JSON tensors
    Eval {
        /// expression text
        #[arg(long, conflicts_with = "expr_file")]
        expr: Option<String>,
        /// file containing the expression
        #[arg(long)]
        expr_file: Option<String>,
        /// tensor binding `name=path.json`, repeatable
        #[arg(long = "bind")]
        bindings: Vec<String>,
        /// Levi form JSON file; identity when omitted
        #[arg(long)]
        levi: Option<String>,
        /// dimension of the identity Levi form
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify { suite, shape, k, trials, seed } => {
            let config = SuiteConfig {
                n: shape.n,
                p: shape.p,
                q: shape.q,
                k,
                trials,
                seed,
                tol: cli.tol,
            };
            let report = run_suite(&suite, &config).map_err(|e| anyhow!("{e}"))?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("suite:        {}", report.suite);
                println!("trials:       {}", report.trials);
                println!("seed:         {}", report.seed);
                println!("max residual: {:.3e}", report.max_residual);
                println!("min lhs:      {:.3e}", report.min_lhs);
                if report.passed() {
                    println!("result:       PASS");
                } else {
                    println!("result:       FAIL ({} violations)", report.failures.len());
                    for f in report.failures.iter().take(20) {
                        println!(
                            "  trial {:>4}  {:<28} value {:.6e}  bound {:.3e}",
                            f.trial, f.quantity, f.value, f.bound
                        );
                    }
                    if report.failures.len() > 20 {
                        println!("  ... {} more", report.failures.len() - 20);
                    }
                }
                if report.trials == 0 {
                    eprintln!("warning: zero trials requested; the pass is vacuous");
                }
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Gen { kind, n, c, seed, out } => {
            if n == 0 {
                bail!("dimension must be positive");
            }
            let h = LeviForm::identity(n);
            let r = match kind.as_str() {
                "flat" => gen_flat(n),
                "constant" => gen_constant(n, c, &h),
                "random-psd" => {
                    gen_random_psd_symmetric(n, seed, cli.tol).map_err(|e| anyhow!("{e}"))?
                }
                other => bail!("unknown generator `{other}`; expected flat, constant, random-psd"),
            };
            let dto = curvature_to_dto(&r, &h);
            let text = serde_json::to_string_pretty(&dto)?;
            match out {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {path}"))?;
                    if !cli.json {
                        let report = r.check_symmetries();
                        println!("wrote {kind} instance (n={n}) to {path}");
                        println!("symmetry residual: {:.3e}", report.max());
                    }
                }
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Kernel { curvature } => {
            let (r, h) = load_curvature(&curvature, cli.tol)?;
            let spectrum =
                eigendecompose(&operator_matrix(&r, &h), 1e-8).map_err(|e| anyhow!("{e}"))?;
            let dim = kernel_dimension(&spectrum, 1e-8).map_err(|e| anyhow!("{e}"))?;
            if cli.json {
                let payload = serde_json::json!({
                    "n": r.n(),
                    "kernel_dim": dim,
                    "spectrum": spectrum_to_dto(&spectrum),
                });
                println!("{}", serde_json::to_string_pretty(&payload)?);
            } else {
                println!("n:          {}", r.n());
                println!("kernel dim: {dim}");
                println!(
                    "eigenvalues: [{}]",
                    spectrum
                        .lambdas
                        .iter()
                        .map(|l| format!("{l:.6}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Betti { curvature } => {
            let (r, h) = load_curvature(&curvature, cli.tol)?;
            let report = betti_bound_report(&r, &h, 1e-8).map_err(|e| anyhow!("{e}"))?;
            if report.bounds.is_empty() {
                eprintln!("warning: no valid degree pairs exist for n = {}", report.n);
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("pointwise kernel-dimension bound at a single point");
                println!("n = {}, dim ker = {}", report.n, report.kernel_dim);
                for b in &report.bounds {
                    println!("  (p,q) = ({},{})  bound {}", b.p, b.q, b.bound);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Weitzenboeck { shape, formula } => {
            let table = weitzenboeck_coefficients(shape.n, shape.p, shape.q, formula)
                .map_err(|e| anyhow!("{e}"))?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&table_json(&table))?);
            } else {
                println!(
                    "refactoring {} at (n,p,q) = ({},{},{})",
                    table.formula, table.dim, table.p, table.q
                );
                println!("  N  = {}", table.split.n);
                println!("  M1 = {}", table.split.m1);
                println!("  M2 = {}", table.split.m2);
                println!(
                    "  gradient terms: {} , {} , {}",
                    table.gradient[0], table.gradient[1], table.gradient[2]
                );
                println!(
                    "  splitting defect N - (M1 + M2) = {}",
                    -table.split.splitting_defect()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { expr, expr_file, bindings, levi, n } => {
            let text = match (expr, expr_file) {
                (Some(t), None) => t,
                (None, Some(path)) => {
                    fs::read_to_string(&path).with_context(|| format!("reading {path}"))?
                }
                _ => bail!("provide exactly one of --expr or --expr-file"),
            };
            let parsed = indexexpr::parse(&text).map_err(|e| anyhow!("{e}"))?;
            let mut env: HashMap<String, pseudoherm::MultiTensor> = HashMap::new();
            for binding in &bindings {
                let (name, path) = binding
                    .split_once('=')
                    .ok_or_else(|| anyhow!("binding `{binding}` is not name=path"))?;
                let dto: TensorDto = serde_json::from_str(
                    &fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
                )?;
                env.insert(name.to_string(), dto_to_tensor(&dto).map_err(|e| anyhow!("{e}"))?);
            }
            let h = match levi {
                Some(path) => {
                    let dto: TensorDto = serde_json::from_str(
                        &fs::read_to_string(&path).with_context(|| format!("reading {path}"))?,
                    )?;
                    let t = dto_to_tensor(&dto).map_err(|e| anyhow!("{e}"))?;
                    LeviForm::from_matrix(dto.n, t.data(), 1e-9).map_err(|e| anyhow!("{e}"))?
                }
                None => {
                    if n == 0 {
                        bail!("dimension must be positive");
                    }
                    LeviForm::identity(n)
                }
            };
            let value = indexexpr::evaluate(&parsed, &env, &h).map_err(|e| anyhow!("{e}"))?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&tensor_to_dto(&value))?);
            } else if value.rank() == 0 {
                let z = value.scalar_value();
                println!("{} + {}i", z.re, z.im);
            } else {
                println!("rank-{} tensor over n = {}", value.rank(), value.n());
                println!("{}", serde_json::to_string(&tensor_to_dto(&value))?);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_curvature(path: &str, tol: f64) -> Result<(pseudoherm::CurvatureTensor, LeviForm)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let dto: CurvatureDto = serde_json::from_str(&text)?;
    dto_to_curvature(&dto, tol).map_err(|e| anyhow!("{e}"))
}

/// Rational coefficients serialize as exact `p/q` strings.
fn table_json(table: &WeitzenboeckTable) -> serde_json::Value {
    serde_json::json!({
        "n": table.dim,
        "p": table.p,
        "q": table.q,
        "formula": table.formula,
        "N": table.split.n.to_string(),
        "M1": table.split.m1.to_string(),
        "M2": table.split.m2.to_string(),
        "N_float": ratio_to_f64(table.split.n),
        "M1_float": ratio_to_f64(table.split.m1),
        "M2_float": ratio_to_f64(table.split.m2),
        "gradient": [
            table.gradient[0].to_string(),
            table.gradient[1].to_string(),
            table.gradient[2].to_string(),
        ],
    })
}
