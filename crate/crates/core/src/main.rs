use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tlj_core::annular::{gram_matrix_capped, gram_numeric, gram_to_json, is_psd, spectrum};
use tlj_core::jones_wenzl::{jones_wenzl_capped, verify_jw};
use tlj_core::report::{certificate, cpai_table, evaluate, parse, CertificateParams, TGrid};
use tlj_core::{Error, NumericParams, Result};

const DEFAULT_MAX_STRANDS: usize = 8;

#[derive(Parser)]
#[command(name = "tlj", version, about = "Exact Temperley-Lieb-Jones computations and CPAI reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check and write the JSON certificate.
    Certificate {
        #[arg(long)]
        delta: f64,
        /// Evenly spaced t values, `start:end:steps`.
        #[arg(long)]
        t_grid: Option<String>,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Table of c_t(n) for n = 0..=n-max.
    Cpai {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Gram matrix of V(t)_n, symbolic by default.
    Gram {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "symbolic")]
        t: Option<f64>,
        #[arg(long)]
        symbolic: bool,
        #[arg(long, default_value_t = 2.5)]
        delta: f64,
        /// Report the spectrum and fail unless it is numerically nonnegative.
        #[arg(long, requires = "t")]
        check_psd: bool,
    },
    /// Evaluate an expression, exactly or at (delta, t).
    Eval {
        expr: String,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, requires = "delta")]
        t: Option<f64>,
    },
    /// Print the Jones-Wenzl idempotent p_m as JSON.
    Jw {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn max_strands() -> Result<usize> {
    match std::env::var("TLJ_MAX_STRANDS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("TLJ_MAX_STRANDS must be a nonnegative integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_MAX_STRANDS),
    }
}

fn run(cmd: Command, out: &mut impl Write) -> Result<i32> {
    let cap = max_strands()?;
    let io = |e: std::io::Error| Error::Serde(e.to_string());
    match cmd {
        Command::Certificate {
            delta,
            t_grid,
            n_max,
            seed,
            out: path,
        } => {
            let mut params = CertificateParams::new(delta)?;
            if let Some(g) = t_grid {
                params.t_grid = TGrid::parse(&g)?;
            }
            params.n_max = n_max;
            params.seed = seed;
            params.max_strands = cap;
            let cert = certificate(&params)?;
            let text = serde_json::to_string_pretty(&cert).map_err(|e| Error::Serde(e.to_string()))?;
            std::fs::write(&path, text + "\n").map_err(io)?;
            for c in &cert.checks {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                match &c.error {
                    Some(e) => writeln!(out, "{tag} {}: {e}", c.name),
                    None => writeln!(out, "{tag} {}", c.name),
                }
                .map_err(io)?;
            }
            writeln!(out, "{} (seed {})", if cert.pass { "PASS" } else { "FAIL" }, cert.seed).map_err(io)?;
            Ok(cert.exit_code())
        }
        Command::Cpai {
            delta,
            t,
            n_max,
            format,
        } => {
            let rows = cpai_table(&NumericParams::new(delta, t)?, n_max, cap)?;
            match format {
                Format::Json => {
                    let text = serde_json::to_string_pretty(&rows).map_err(|e| Error::Serde(e.to_string()))?;
                    writeln!(out, "{text}").map_err(io)?;
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for r in &rows {
                        w.serialize(r).map_err(|e| Error::Serde(e.to_string()))?;
                    }
                    let bytes = w.into_inner().map_err(|e| Error::Serde(e.to_string()))?;
                    out.write_all(&bytes).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Gram {
            n,
            t,
            symbolic: _,
            delta,
            check_psd,
        } => {
            let gram_cap = cap / 2;
            match t {
                None => {
                    let g = gram_matrix_capped(n, gram_cap)?;
                    writeln!(out, "{}", gram_to_json(n, &g)).map_err(io)?;
                    Ok(0)
                }
                Some(t) => {
                    let p = NumericParams::new(delta, t)?;
                    let g = gram_numeric(n, gram_cap, &p)?;
                    for row in g.row_iter() {
                        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                        writeln!(out, "{}", cells.join(" ")).map_err(io)?;
                    }
                    if !check_psd {
                        return Ok(0);
                    }
                    let ev = spectrum(n, gram_cap, &p)?;
                    let psd = is_psd(&ev);
                    writeln!(out, "min_eig {}", ev[0]).map_err(io)?;
                    writeln!(out, "max_eig {}", ev[ev.len() - 1]).map_err(io)?;
                    writeln!(out, "psd {psd}").map_err(io)?;
                    Ok(if psd { 0 } else { 1 })
                }
            }
        }
        Command::Eval { expr, delta, t } => {
            let value = parse(&expr).and_then(|e| evaluate(&e, cap)).inspect_err(|e| point_at(&expr, e))?;
            match delta {
                None => writeln!(out, "{value}").map_err(io)?,
                Some(d) => {
                    let p = NumericParams::new(d, t.unwrap_or(d))?;
                    writeln!(out, "{}", value.numeric(&p)?).map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Jw { m, verify } => {
            let p = jones_wenzl_capped(m, cap)?;
            if verify {
                let v = verify_jw(&p);
                let text = serde_json::to_string(&v).map_err(|e| Error::Serde(e.to_string()))?;
                writeln!(out, "{text}").map_err(io)?;
                return Ok(if v.all() { 0 } else { 1 });
            }
            writeln!(out, "{}", p.to_json()).map_err(io)?;
            Ok(0)
        }
    }
}

/// Underlines the offending span of a syntax or type error on stderr.
fn point_at(src: &str, e: &Error) {
    if let Error::Syntax { start, end, .. } | Error::Type { start, end, .. } = *e {
        let width = src[start..end].chars().count().max(1);
        let pad = src[..start].chars().count();
        eprintln!("  {src}\n  {}{}", " ".repeat(pad), "^".repeat(width));
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    match run(cli.command, &mut stdout.lock()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
