use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use algdyn::cli::{
    cmd_analyze, cmd_examples, cmd_goe, cmd_homoclinic, cmd_invert, cmd_simulate, parse_polys,
    parse_rational, CliError, RunReport, Settings,
};
use algdyn::simulator::{read_window, write_window};
use algdyn::structure::{EndomorphismSpec, FixedPointSpec};
use algdyn::GroupRingElement;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "algdyn", version, about = "Principal algebraic Z^d-actions: expansiveness, homoclinic points, Garden of Eden")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Args)]
struct Common {
    /// Residual tolerance for the certified inverse.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Window radius (default depends on the rank).
    #[arg(long)]
    radius: Option<i64>,
    /// Largest FFT grid per axis.
    #[arg(long, env = "ALGDYN_GRID")]
    grid: Option<usize>,
    /// Largest inverse support.
    #[arg(long, env = "ALGDYN_SUPPORT_MAX", default_value_t = 1_000_000)]
    support_max: usize,
    /// Degree budget for the multivariate gcd.
    #[arg(long, env = "ALGDYN_GCD_DEGREE", default_value_t = 40)]
    gcd_degree: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Emit plot sections.
    #[arg(long)]
    plot: bool,
}

impl Common {
    fn settings(&self) -> Settings {
        Settings {
            tol: self.tol,
            radius: self.radius,
            grid: self.grid,
            support_max: self.support_max,
            gcd_degree: self.gcd_degree,
            seed: self.seed,
            plot: self.plot,
        }
    }
}

#[derive(Args)]
struct Endo {
    /// Multiplier r of the endomorphism x -> r.x + t.
    #[arg(long, short = 'r', default_value = "1", allow_hyphen_values = true)]
    r: String,
    /// Translation t, a rational p/q in the fixed points.
    #[arg(long, short = 't', default_value = "0")]
    t: String,
}

#[derive(Subcommand)]
enum Command {
    /// Expansiveness, connectedness, mixing, fixed points and root split.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        common: Common,
    },
    /// Certified l^1 inverse.
    Invert {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        common: Common,
    },
    /// Fundamental homoclinic point on a window.
    Homoclinic {
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// Write the window to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Garden of Eden verdict for x -> r.x + t.
    Goe {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        endo: Endo,
        #[command(flatten)]
        common: Common,
    },
    /// Configuration-level checks for x -> r.x + t.
    Simulate {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        endo: Endo,
        /// A window file to check and map.
        #[arg(long)]
        window: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// The reference examples end to end.
    Examples {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_all(texts: &[&str]) -> Result<Vec<GroupRingElement>, CliError> {
    parse_polys(texts).map_err(|error| {
        let input = texts
            .iter()
            .find(|t| algdyn::cli::parse_syntax(t).is_err())
            .unwrap_or(&texts[0])
            .to_string();
        CliError::Parse { input, error }
    })
}

fn endo(f: &str, e: &Endo) -> Result<(GroupRingElement, EndomorphismSpec), CliError> {
    let v = parse_all(&[f, &e.r])?;
    let (p, q) = parse_rational(&e.t).map_err(|error| CliError::Parse {
        input: e.t.clone(),
        error,
    })?;
    let mut it = v.into_iter();
    let f = it.next().unwrap();
    let r = it.next().unwrap();
    Ok((f, EndomorphismSpec { r, t: FixedPointSpec::constant(p, q) }))
}

fn run(cli: Cli) -> Result<(RunReport, Format), CliError> {
    let one = |f: &str| parse_all(&[f]).map(|mut v| v.remove(0));
    Ok(match cli.command {
        Command::Analyze { f, common } => (cmd_analyze(&one(&f)?, &common.settings())?, common.format),
        Command::Invert { f, common } => (cmd_invert(&one(&f)?, &common.settings())?, common.format),
        Command::Homoclinic { f, out, common } => {
            let (mut r, h) = cmd_homoclinic(&one(&f)?, &common.settings())?;
            if let Some(path) = out {
                fs::write(&path, write_window(&h.window, Some(h.tail_l1)))
                    .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
                r.set("out", path.display());
            }
            (r, common.format)
        }
        Command::Goe { f, endo: e, common } => {
            let (f, e) = endo(&f, &e)?;
            (cmd_goe(&f, &e, &common.settings())?, common.format)
        }
        Command::Simulate { f, endo: e, window, common } => {
            let (f, e) = endo(&f, &e)?;
            let w = match window {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|err| CliError::Invalid(format!("{}: {err}", path.display())))?;
                    Some(read_window(&text)?.0)
                }
                None => None,
            };
            (cmd_simulate(&f, &e, w.as_ref(), &common.settings())?, common.format)
        }
        Command::Examples { common } => (cmd_examples(&common.settings())?, common.format),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // exit code 2 is reserved for undecided outcomes
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok((report, format)) => {
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Kv => print!("{}", report.to_kv()),
            }
            ExitCode::from(report.outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
