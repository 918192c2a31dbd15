use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use hqp::gca::{CoefficientMode, FSignConvention};
use hqp::verify::VerifyConfig;
use hqp_cli::commands::{cmd_mutate, cmd_verify, CliError};
use hqp_cli::server::{router, AppState};
use hqp_cli::session::SessionOptions;

#[derive(Parser)]
#[command(name = "hqp", version, about = "Quivers with potential and generalized cluster algebras")]
struct Cli {
    /// Truncation degree for potentials read from QP documents.
    #[arg(long, global = true)]
    trunc_degree: Option<usize>,
    /// Coefficient semifield for seeds: trop-z or principal.
    #[arg(long, global = true)]
    semifield: Option<CoefficientMode>,
    /// Exponent signs in the F-recursion: classical or printed.
    #[arg(long, global = true, default_value = "classical")]
    f_sign_convention: FSignConvention,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Mutates a seed or QP document along a path such as "1,2,1".
    Mutate {
        input: PathBuf,
        path: String,
        output: PathBuf,
    },
    /// Runs a property suite and prints a JSON report.
    Verify {
        suite: String,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Serves the session API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long)]
        state_dir: Option<PathBuf>,
        /// Address to bind; the default keeps the service local.
        #[arg(long, default_value = "127.0.0.1")]
        bind: std::net::IpAddr,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let opts = SessionOptions { semifield: cli.semifield, trunc: cli.trunc_degree, conv: cli.f_sign_convention };
    match cli.cmd {
        Cmd::Mutate { input, path, output } => cmd_mutate(&input, &path, &output, &opts),
        Cmd::Verify { suite, report } => {
            let cfg = VerifyConfig { seed: cli.seed, conv: cli.f_sign_convention, ..VerifyConfig::default() };
            let r = cmd_verify(&suite, &cfg)?;
            let text = serde_json::to_string_pretty(&r).expect("report serializes") + "\n";
            print!("{text}");
            if let Some(p) = report {
                std::fs::write(p, &text)?;
            }
            if r.passed {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        Cmd::Serve { port, state_dir, bind } => serve(SocketAddr::new(bind, port), state_dir, opts, cli.seed),
    }
}

fn serve(addr: SocketAddr, state_dir: Option<PathBuf>, opts: SessionOptions, seed: u64) -> Result<(), CliError> {
    let app = AppState::new(state_dir, opts, seed).map_err(|e| CliError::Usage(e.to_string()))?;
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, router(Arc::new(app))).await?;
        Ok(())
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
