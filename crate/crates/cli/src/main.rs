use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use logfman_cli::commands::run;
use logfman_cli::report::{default_samples, Kind, RunConfig, Suite};
use logfman_cli::{CliError, EXIT_CHECK_FAILED, EXIT_OK};

#[derive(Parser)]
#[command(name = "logfman", version, about = "Exact checks of logarithmic F-manifold structures")]
struct Cli {
    /// JSON run configuration; command-line flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Node family `x^p + y^q` on `xy = eps`.
    Node(Common),
    /// Determinantal space curve through the coordinate axes.
    Curve(Common),
    /// Function on an isolated complete intersection.
    Icis(Common),
    /// Fixed regression suite.
    Verify(Common),
}

#[derive(Args, Default)]
struct Common {
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Base point, comma separated rationals such as `1,-1/2,0`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, alias = "point")]
    base: Option<Vec<String>>,
    /// Series truncation order for flat coordinates.
    #[arg(long, allow_hyphen_values = true)]
    trunc: Option<i64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Defining equation of the complete intersection; repeat for several.
    #[arg(long, allow_hyphen_values = true)]
    g: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    /// Perturb the Euler field before checking; the run must then fail.
    #[arg(long)]
    mutate: bool,
}

fn build_config(cli: Cli) -> Result<RunConfig, CliError> {
    let (kind, o) = match cli.command {
        Command::Node(c) => (Kind::Node, c),
        Command::Curve(c) => (Kind::Curve, c),
        Command::Icis(c) => (Kind::Icis, c),
        Command::Verify(c) => (Kind::Verify, c),
    };
    let mut cfg = match &cli.config {
        Some(path) => {
            let cfg: RunConfig = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            if cfg.kind != kind {
                return Err(CliError::Usage(format!("config is for `{:?}`, not this subcommand", cfg.kind)));
            }
            cfg
        }
        None => RunConfig::new(kind),
    };
    cfg.p = o.p.or(cfg.p);
    cfg.q = o.q.or(cfg.q);
    cfg.r = o.r.or(cfg.r);
    cfg.base = o.base.or(cfg.base);
    cfg.trunc = o.trunc.or(cfg.trunc);
    cfg.samples = o.samples.unwrap_or(if cli.config.is_some() { cfg.samples } else { default_samples() });
    cfg.seed = o.seed.unwrap_or(cfg.seed);
    cfg.out = o.out.or(cfg.out);
    if !o.g.is_empty() {
        cfg.g = o.g;
    }
    cfg.f = o.f.or(cfg.f);
    cfg.suite = o.suite.unwrap_or(cfg.suite);
    cfg.mutate |= o.mutate;
    Ok(cfg)
}

fn main() -> ExitCode {
    let result = build_config(Cli::parse()).and_then(|cfg| {
        let report = run(&cfg)?;
        let text = report.to_json();
        match &cfg.out {
            Some(path) => std::fs::write(path, &text)?,
            None => print!("{text}"),
        }
        for c in report.checks.iter().filter(|c| !c.pass) {
            eprintln!("FAIL {}", c.name);
        }
        Ok(if report.all_pass() { EXIT_OK } else { EXIT_CHECK_FAILED })
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
