use std::io::{self, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::AtomicBool;

use anyhow::Context;
use clap::{Parser, Subcommand};
use liveref::commands::{analyze_paths, java_files, load_config, run_analyze, run_apply, run_export};
use liveref::{exit, exit_code, server, watch};
use liveref_core::config::Mode;
use liveref_core::document::AnalysisDocument;
use liveref_core::session::Session;

#[derive(Parser)]
#[command(name = "liveref", version, about = "Live Extract Method suggestions for Java")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct ConfigArgs {
    /// Configuration file (default: liveref.json in the working directory).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Which candidates to report: all, or only the most severe.
    #[arg(long)]
    mode: Option<Mode>,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze Java files or directories.
    Analyze {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// One JSON document per file, one per line.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Apply one candidate from a fresh analysis of the same file content.
    Apply {
        file: PathBuf,
        candidate_id: String,
        /// Name of the new method (default: extractedN).
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Write a static HTML report listing every candidate.
    ExportHtml {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Re-analyze Java files under a directory whenever they change.
    Watch {
        #[arg(default_value = ".")]
        workspace: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Run the HTTP and WebSocket service for a workspace.
    Serve {
        #[arg(default_value = ".")]
        workspace: PathBuf,
        #[arg(long, default_value_t = 7878)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        #[command(flatten)]
        cfg: ConfigArgs,
    },
}

fn fail(err: liveref_core::Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code(&err) as u8)
}

fn print_docs(docs: &[AnalysisDocument], json: bool) -> i32 {
    let mut out = io::stdout().lock();
    run_analyze(docs, json, &mut out).unwrap_or(exit::IO)
}

fn workspace_root(dir: &Path) -> anyhow::Result<PathBuf> {
    dir.canonicalize().with_context(|| format!("workspace {}", dir.display()))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let cwd = std::env::current_dir()?;
    Ok(match cli.command {
        Command::Analyze { paths, json, cfg } => {
            let config = match load_config(&cwd, cfg.config.as_deref(), cfg.mode) {
                Ok(c) => c,
                Err(e) => return Ok(fail(e)),
            };
            match analyze_paths(&paths, &config) {
                Ok(docs) => ExitCode::from(print_docs(&docs, json) as u8),
                Err(e) => fail(e),
            }
        }
        Command::Apply { file, candidate_id, name, cfg } => {
            let result = load_config(&cwd, cfg.config.as_deref(), cfg.mode)
                .and_then(|config| run_apply(&cwd, &file, &candidate_id, name.as_deref(), config));
            match result {
                Ok(record) => {
                    println!("{}", serde_json::to_string(&record)?);
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::ExportHtml { paths, out, cfg } => {
            let result = load_config(&cwd, cfg.config.as_deref(), cfg.mode)
                .and_then(|config| analyze_paths(&paths, &config))
                .and_then(|docs| run_export(&docs, &out));
            match result {
                Ok(path) => {
                    println!("{}", path.display());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Watch { workspace, json, cfg } => {
            let root = workspace_root(&workspace)?;
            let config = match load_config(&root, cfg.config.as_deref(), cfg.mode) {
                Ok(c) => c,
                Err(e) => return Ok(fail(e)),
            };
            let mut session = Session::new(&root, config);
            let show = |session: &mut Session, file: &Path| match session.on_focus(file) {
                Ok(p) => {
                    print_docs(&[AnalysisDocument::from(&p.result)], json);
                    let _ = io::stdout().flush();
                }
                Err(e) => eprintln!("error: {e}"),
            };
            for f in java_files(std::slice::from_ref(&root)).map_err(anyhow::Error::from)? {
                show(&mut session, &f);
            }
            eprintln!("watching {} (Ctrl-C to stop)", root.display());
            let stop = AtomicBool::new(false);
            watch::watch_java(&root, &stop, |files| {
                for f in files {
                    show(&mut session, &f);
                }
            })?;
            ExitCode::SUCCESS
        }
        Command::Serve { workspace, port, host, cfg } => {
            let root = workspace_root(&workspace)?;
            let config = match load_config(&root, cfg.config.as_deref(), cfg.mode) {
                Ok(c) => c,
                Err(e) => return Ok(fail(e)),
            };
            let session = Session::new(&root, config);
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(server::serve(session, SocketAddr::new(host, port), |addr| {
                println!("listening on http://{addr}");
                let _ = io::stdout().flush();
            }))?;
            ExitCode::SUCCESS
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::IO as u8)
        }
    }
}
