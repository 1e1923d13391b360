use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use permsnark::construction::Certify;
use permsnark_cli::{
    cmd_build, cmd_contract, cmd_discover_gluing, cmd_export_dot, cmd_verify, configure_workers,
    parse_checks, BudgetArg, ContractOptions, VerifyOptions,
};

#[derive(Parser)]
#[command(name = "permsnark", version, about = "Build and verify cyclically 5-edge-connected permutation snarks")]
struct Cli {
    /// Worker threads for parallel searches (default: PERMSNARK_WORKERS, else all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build H_n and write it as graph6 plus a JSON sidecar (PATH.json).
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "none", value_parser = parse_certify)]
        certify: Certify,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run checks on a graph6 file and print a JSON report.
    Verify {
        path: PathBuf,
        /// Comma-separated: cubic, perm2f, snark, lambda_c, cdc_contains[:F], any_cdc, girth.
        #[arg(long)]
        checks: String,
        /// Node budget per search, or "unlimited".
        #[arg(long)]
        budget_nodes: Option<BudgetArg>,
        /// Also write the report here; witnesses go next to it.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Sidecar path (default PATH.json when present).
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Contract the spokes to a transitioned 4-regular graph and search it.
    Contract {
        path: PathBuf,
        #[arg(long)]
        ccd_budget: Option<BudgetArg>,
        #[arg(long)]
        sidecar: Option<PathBuf>,
        /// Transitioned graph destination (default PATH.4reg.json).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the graph in DOT format.
    ExportDot {
        path: PathBuf,
        /// Comma-separated: F, spokes, alpha.
        #[arg(long, default_value = "")]
        highlight: String,
        #[arg(long)]
        sidecar: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Try every gluing candidate on Petersen blocks and write the first survivor.
    DiscoverGluing {
        #[arg(long)]
        out: PathBuf,
        /// Also certify each surviving H_1.
        #[arg(long)]
        certify: bool,
    },
}

fn parse_certify(s: &str) -> Result<Certify, String> {
    s.parse()
}

fn print<T: Serialize>(report: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(report)?);
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    configure_workers(cli.workers)?;
    match cli.command {
        Command::Build { n, certify, out } => {
            let r = cmd_build(n, &out, certify)?;
            print(&r)?;
            Ok(r.overall)
        }
        Command::Verify {
            path,
            checks,
            budget_nodes,
            json,
            sidecar,
        } => {
            let checks = parse_checks(&checks)?;
            let opts = VerifyOptions {
                budget: budget_nodes,
                sidecar,
                json,
            };
            let r = cmd_verify(&path, &checks, &opts)?;
            print(&r)?;
            Ok(r.overall)
        }
        Command::Contract {
            path,
            ccd_budget,
            sidecar,
            out,
            json,
        } => {
            let opts = ContractOptions {
                ccd_budget,
                sidecar,
                out,
                json,
            };
            let r = cmd_contract(&path, &opts)?;
            print(&r)?;
            Ok(r.overall)
        }
        Command::ExportDot {
            path,
            highlight,
            sidecar,
            out,
        } => {
            let names: Vec<String> = highlight
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_owned)
                .collect();
            let dot = cmd_export_dot(&path, &names, sidecar.as_deref())?;
            match out {
                Some(p) => std::fs::write(p, dot)?,
                None => print!("{dot}"),
            }
            Ok(true)
        }
        Command::DiscoverGluing { out, certify } => {
            let r = cmd_discover_gluing(&out, certify)?;
            print(&r)?;
            Ok(r.overall)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
