use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use darboux_core::bessel::compare_ladder_to_bessel;
use darboux_core::chebyshev::chebyshev_cf;
use darboux_core::contfrac::ContinuedFraction;
use darboux_core::grammar::{parse_expr, parse_function, Expr};
use darboux_core::riccati::{ladder, to_continued_fraction, Branch};
use darboux_core::verify::{self, Suite};
use darboux_core::Error;

const GRAMMAR_HELP: &str = "\
Expressions use the atoms D (d/dx), x and decimal literals with + - * / ^ and
parentheses. `*` composes when both sides are operators (D*D = D^2) and
multiplies by a function otherwise, so D*x and x*D both mean the operator x·D.
`^` takes an integer constant; `/` divides by functions only.
Example: --op \"D^2 + (1/x)*D - 1/x^2\" --g \"1/x\"";

#[derive(Parser)]
#[command(
    name = "darboux",
    version,
    about = "Exact Darboux ladders, operator factorization and continued fractions"
)]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Riccati ladder f_1 .. f_depth.
    Ladder {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        #[arg(long, default_value = "minus")]
        branch: Branch,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run exact verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Right-divide an operator by D - g and print the Darboux transform.
    #[command(after_help = GRAMMAR_HELP)]
    Factor {
        #[arg(long)]
        op: String,
        #[arg(long)]
        g: String,
    },
    /// Compare plus-branch rungs with -x K'/K of half-integer Bessel K.
    BesselCompare {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_order: u32,
        /// a:b:n, n evenly spaced points from a to b (a > 0).
        #[arg(long)]
        grid: String,
    },
    /// Print a continued-fraction expansion.
    Cf {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        #[arg(long)]
        eval: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Bessel,
    Chebyshev,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::NonPositiveArgument(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn pass(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ladder {
            depth,
            branch,
            format,
        } => cmd_ladder(depth as usize, branch, format),
        Command::Verify {
            suite,
            max_n,
            format,
        } => cmd_verify(suite, max_n as usize, format),
        Command::Factor { op, g } => cmd_factor(&op, &g),
        Command::BesselCompare { max_order, grid } => cmd_bessel_compare(max_order as usize, &grid),
        Command::Cf {
            target,
            depth,
            eval,
            format,
        } => cmd_cf(target, depth as usize, eval, format),
    };
    match result {
        Ok(out) => {
            if let Err(e) = emit(cli.out.as_deref(), &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(path: Option<&str>, text: &str) -> std::io::Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match path {
        Some(p) => fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn cmd_ladder(depth: usize, branch: Branch, format: Format) -> Result<Output, Failure> {
    let rungs = ladder(depth, branch)?;
    let text = match format {
        Format::Text => rungs
            .iter()
            .map(|s| format!("f_{} = {}", s.j, s.display_f()))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let items: Vec<_> = rungs
                .iter()
                .map(|s| {
                    json!({
                        "j": s.j,
                        "beta": s.beta.to_string(),
                        "branch": s.branch,
                        "f": s.f,
                        "text": s.display_f(),
                    })
                })
                .collect();
            to_json(&items)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["j", "beta", "f"]).map_err(csv_failure)?;
            for s in &rungs {
                w.write_record([s.j.to_string(), s.beta.to_string(), s.display_f()])
                    .map_err(csv_failure)?;
            }
            csv_string(w)?
        }
    };
    Ok(Output::pass(text))
}

fn cmd_verify(suite: Suite, max_n: usize, format: Format) -> Result<Output, Failure> {
    let report = verify::run(suite, max_n);
    let text = match format {
        Format::Text => report.to_string(),
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "status", "detail"])
                .map_err(csv_failure)?;
            for c in &report.cases {
                w.write_record([c.id.as_str(), &c.status.to_string(), c.detail.as_str()])
                    .map_err(csv_failure)?;
            }
            csv_string(w)?
        }
    };
    Ok(Output {
        text,
        ok: report.passed(),
    })
}

fn cmd_factor(op: &str, g: &str) -> Result<Output, Failure> {
    let a = match parse_expr(op)? {
        Expr::Operator(a) => a,
        Expr::Function(f) => {
            return Err(Failure::Usage(format!(
                "--op must be a differential operator, got the function {f}"
            )))
        }
    };
    let g = parse_function(g)?;
    let (q, r) = a.right_divide(&g)?;
    let mut lines = vec![
        format!("A = {a}"),
        format!("g = {g}"),
        format!("Q = {q}"),
        format!("R = {r}"),
    ];
    if r.is_zero() {
        let hat = a.darboux_transform(&g)?;
        lines.push(format!("Â = {hat}"));
    } else {
        lines.push("not divisible: R ≠ 0, so exp(∫g) is not in the kernel of A".to_string());
    }
    Ok(Output::pass(lines.join("\n")))
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "invalid grid {spec:?}: expected a:b:n with 0 < a and n ≥ 1"
        ))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(bad());
    };
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if n == 0 || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    if a <= 0.0 || b <= 0.0 {
        return Err(Failure::Usage(format!(
            "invalid grid {spec:?}: x must be positive"
        )));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let h = (b - a) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i + 1 == n { b } else { a + h * i as f64 })
        .collect())
}

fn cmd_bessel_compare(max_order: usize, grid: &str) -> Result<Output, Failure> {
    let grid = parse_grid(grid)?;
    let report = compare_ladder_to_bessel(max_order, &grid)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["j", "x", "ladder_value", "bessel_value", "abs_err"])
        .map_err(csv_failure)?;
    let show = |v: Option<f64>| {
        v.map(|v| v.to_string())
            .unwrap_or_else(|| "nan".to_string())
    };
    for row in &report.rows {
        w.write_record([
            row.j.to_string(),
            row.x.to_string(),
            show(row.ladder_value),
            row.bessel_value.to_string(),
            show(row.abs_err),
        ])
        .map_err(csv_failure)?;
    }
    let mut text = csv_string(w)?;
    text.push_str(&format!("\n# max_abs_err = {:e}", report.max_abs_err));
    let poles = report.flagged().count();
    if poles > 0 {
        text.push_str(&format!(
            "\n# {poles} grid points hit a pole of the ladder rung"
        ));
    }
    Ok(Output::pass(text))
}

fn build_cf(target: Target, depth: usize) -> Result<ContinuedFraction, Failure> {
    Ok(match target {
        Target::Bessel => {
            ladder(depth, Branch::Minus)?;
            to_continued_fraction(depth, Branch::Minus)
        }
        Target::Chebyshev => chebyshev_cf(depth),
    })
}

fn cmd_cf(
    target: Target,
    depth: usize,
    eval: Option<f64>,
    format: Format,
) -> Result<Output, Failure> {
    let cf = build_cf(target, depth)?;
    let value = eval.map(|x| cf.eval(x)).transpose()?;
    let text = match format {
        Format::Text => {
            let mut text = cf.to_string();
            if let (Some(x), Some(v)) = (eval, value) {
                text.push_str(&format!("\nvalue at x = {x}: {v:?}"));
            }
            text
        }
        Format::Json => {
            let collapsed = cf.collapse()?;
            to_json(&json!({
                "target": match target { Target::Bessel => "bessel", Target::Chebyshev => "chebyshev" },
                "depth": depth,
                "text": cf.to_string(),
                "fraction": cf,
                "collapsed": collapsed.to_string(),
                "eval": eval.map(|x| json!({ "x": x, "value": value })),
            }))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["x", "depth", "value"])
                .map_err(csv_failure)?;
            if let (Some(x), Some(v)) = (eval, value) {
                w.write_record([x.to_string(), depth.to_string(), format!("{v:?}")])
                    .map_err(csv_failure)?;
            }
            csv_string(w)?
        }
    };
    Ok(Output::pass(text))
}

fn csv_failure(e: csv::Error) -> Failure {
    Failure::Runtime(e.to_string())
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, Failure> {
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    let mut s = String::from_utf8(bytes).map_err(|e| Failure::Runtime(e.to_string()))?;
    while s.ends_with('\n') {
        s.pop();
    }
    Ok(s)
}
