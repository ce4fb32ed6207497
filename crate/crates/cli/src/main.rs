//! `cutpoint` — exact calculator and completeness-probe runner for the
//! rationals, the rational-function field, and formal Laurent series.
//!
//! Exit codes: 0 success, 1 probe or fixture mismatch, 2 usage error.

use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use cutpoint::field::{FieldHandle, FieldOps};
use cutpoint::report::Format;
use cutpoint_cli::commands::{
    cmp_command, eval_command, field_handle, matrix_command, probe_command, sum_command, CliError,
};
use cutpoint_cli::expr::{eval, parse, Value};

#[derive(Parser)]
#[command(
    name = "cutpoint",
    version,
    about = "Exact arithmetic in Q, Q(w) and Q((e)), with executable probes of completeness properties"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression exactly; comparisons print true/false
    Eval {
        expr: String,
        /// Field to evaluate in: q, ratfun, or laurent
        #[arg(long, default_value = "q")]
        field: String,
        /// Series printing/comparison order (default 32, or CUTPOINT_ORDER)
        #[arg(long)]
        order: Option<i64>,
        /// Lazy coefficient-scan bound (default 64, or CUTPOINT_HORIZON)
        #[arg(long)]
        horizon: Option<i64>,
    },
    /// Compare two expressions; prints <, =, or >
    Cmp {
        a: String,
        b: String,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long)]
        order: Option<i64>,
        #[arg(long)]
        horizon: Option<i64>,
    },
    /// Sum a built-in series of infinitesimals exactly through the order
    Sum {
        #[arg(long, default_value = "laurent")]
        field: String,
        /// Term family: alt-geometric, geometric, or halving
        #[arg(long)]
        terms: String,
        #[arg(long)]
        order: Option<i64>,
    },
    /// Run one completeness probe (1-18), optionally against a candidate
    Probe {
        /// Property number, 1 through 18
        number: u8,
        #[arg(long, default_value = "q")]
        field: String,
        /// Candidate cutpoint/limit/bound to refute, as an expression
        #[arg(long)]
        candidate: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        order: Option<i64>,
        #[arg(long)]
        horizon: Option<i64>,
    },
    /// Run the full property-by-field matrix
    Matrix {
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CI mode: compare the rendered output byte-for-byte to a fixture
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Interactive calculator loop
    Repl {
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long)]
        order: Option<i64>,
        #[arg(long)]
        horizon: Option<i64>,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Eval {
            expr,
            field,
            order,
            horizon,
        } => field_handle(&field, order, horizon)
            .and_then(|h| eval_command(&expr, &h))
            .map(|out| {
                println!("{out}");
                0
            }),
        Cmd::Cmp {
            a,
            b,
            field,
            order,
            horizon,
        } => field_handle(&field, order, horizon)
            .and_then(|h| cmp_command(&a, &b, &h))
            .map(|out| {
                println!("{out}");
                0
            }),
        Cmd::Sum {
            field,
            terms,
            order,
        } => field_handle(&field, order, None)
            .and_then(|h| sum_command(&terms, &h))
            .map(|out| {
                println!("{out}");
                0
            }),
        Cmd::Probe {
            number,
            field,
            candidate,
            seed,
            order,
            horizon,
        } => field_handle(&field, order, horizon)
            .and_then(|h| probe_command(&h, number, candidate.as_deref(), seed))
            .map(|out| {
                print!("{}", out.to_json());
                if out.ok {
                    0
                } else {
                    1
                }
            }),
        Cmd::Matrix {
            format,
            seed,
            check,
        } => {
            let fmt = match format {
                OutputFormat::Json => Format::Json,
                OutputFormat::Md => Format::Markdown,
            };
            matrix_command(seed, fmt, check.as_deref()).map(|out| {
                print!("{}", out.rendered);
                if out.ok {
                    0
                } else {
                    1
                }
            })
        }
        Cmd::Repl {
            field,
            order,
            horizon,
        } => field_handle(&field, order, horizon).map(repl),
    };
    match outcome {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Field(e)) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn repl(mut h: FieldHandle) -> i32 {
    println!(
        "field {} (order {}, horizon {}); :field NAME, :order K, :quit",
        h.name(),
        h.order,
        h.horizon
    );
    let stdin = std::io::stdin();
    loop {
        print!("{}> ", h.name());
        let _ = std::io::stdout().flush();
        let mut line = String::new();
        match stdin.lock().read_line(&mut line) {
            Ok(0) | Err(_) => return 0,
            Ok(_) => {}
        }
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix(':') {
            let mut words = rest.split_whitespace();
            match (words.next(), words.next()) {
                (Some("q") | Some("quit") | Some("exit"), _) => return 0,
                (Some("field"), Some(name)) => match field_handle(name, None, None) {
                    Ok(next) => h = next.with_order(h.order).with_horizon(h.horizon),
                    Err(e) => eprintln!("error: {e}"),
                },
                (Some("order"), Some(k)) => match k.parse::<i64>() {
                    Ok(k) if k >= 1 => h = h.with_order(k).with_horizon(h.horizon.max(k)),
                    _ => eprintln!("error: order must be a positive integer"),
                },
                _ => eprintln!("error: commands are :field NAME, :order K, :quit"),
            }
            continue;
        }
        match parse(line).and_then(|e| eval(&e, &h)) {
            Ok(Value::Elem(x)) => println!("{}", h.format(&x)),
            Ok(Value::Bool(b)) => println!("{b}"),
            Err(e) => eprintln!("error: {e}"),
        }
    }
}
