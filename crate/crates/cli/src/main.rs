//! `kgon`: generate, check, and solve no-convex-k-gon SAT instances.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::sync::atomic::AtomicBool;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use kgon_campaign::{load_entries, run_campaign, status, CampaignConfig, RunnerOptions};
use kgon_core::assembly::{emit, parse_header, assign_variables};
use kgon_core::geometry::{decode_and_verify, Model, PointSet, Verdict};
use kgon_core::hull::{HullTemplate, SubCube};
use kgon_core::{Cc5Mode, EncodingParams};

#[derive(Parser)]
#[command(name = "kgon", version, about = "SAT instances for point sets with no convex k-gon")]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Generate a DIMACS CNF instance and its manifest
    Gen(GenArgs),
    /// Exact-geometry oracle checks on point files
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Verify a solver model against the instance it claims to satisfy
    VerifyModel(VerifyArgs),
    /// Solver campaign management
    Campaign {
        #[command(subcommand)]
        command: CampaignCommand,
    },
}

#[derive(Args)]
struct GenArgs {
    /// Point count
    #[arg(long)]
    n: u32,
    /// Forbidden convex polygon size (>= 5)
    #[arg(long)]
    k: u32,
    /// Convex-layer sizes, outermost first (e.g. 5,5,5,5,5,5)
    #[arg(long, value_delimiter = ',')]
    layers: Option<Vec<u32>>,
    /// Sub-cube offsets, one per layer, w0 = 0 (e.g. 0,4,4,4,4,4)
    #[arg(long, value_delimiter = ',')]
    w: Option<Vec<u32>>,
    /// 5-point clause family
    #[arg(long, default_value = "reduced")]
    cc5: String,
    /// Output CNF path
    #[arg(long)]
    out: PathBuf,
    /// Manifest path (default: OUT.manifest.json)
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Check a point file (one "x y" per line) for convex k-subsets
    CheckPoints {
        /// Point file path
        file: PathBuf,
        /// Subset size to search for
        #[arg(long)]
        k: u32,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// The emitted CNF (its comment header carries the parameters)
    #[arg(long)]
    cnf: PathBuf,
    /// Solver model: `v` lines or bare DIMACS literals
    #[arg(long)]
    model: PathBuf,
}

#[derive(Subcommand)]
enum CampaignCommand {
    /// Run all pending jobs of a campaign config
    Run {
        /// Campaign config (TOML)
        config: PathBuf,
    },
    /// Summarize a campaign ledger
    Status {
        /// Ledger path (JSON lines)
        ledger: PathBuf,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        CliCommand::Gen(args) => cmd_gen(args),
        CliCommand::Oracle {
            command: OracleCommand::CheckPoints { file, k },
        } => cmd_check_points(&file, k),
        CliCommand::VerifyModel(args) => cmd_verify_model(args),
        CliCommand::Campaign {
            command: CampaignCommand::Run { config },
        } => cmd_campaign_run(&config),
        CliCommand::Campaign {
            command: CampaignCommand::Status { ledger },
        } => cmd_campaign_status(&ledger),
    }
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let params = EncodingParams::new(args.n, args.k)?;
    let mode: Cc5Mode = args.cc5.parse()?;
    let template = match args.layers {
        Some(layers) => {
            let t = HullTemplate::new(layers)?;
            t.validate_for(params.n())?;
            Some(t)
        }
        None => None,
    };
    let subcube = match (args.w, &template) {
        (Some(w), Some(t)) => Some(SubCube::new(w, t)?),
        (Some(_), None) => bail!("--w requires --layers"),
        (None, _) => None,
    };

    let out_file = File::create(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let writer = BufWriter::with_capacity(1 << 20, out_file);
    let manifest = match emit(&params, mode, template.as_ref(), subcube.as_ref(), writer) {
        Ok(m) => m,
        Err(e) => {
            // leave a clearly-marked partial file rather than a plausible CNF
            let partial = args.out.with_extension("cnf.partial");
            let _ = std::fs::rename(&args.out, &partial);
            return Err(e).context(format!(
                "emission failed; partial output moved to {}",
                partial.display()
            ));
        }
    };

    let manifest_path = args.manifest.unwrap_or_else(|| {
        let mut p = args.out.as_os_str().to_owned();
        p.push(".manifest.json");
        PathBuf::from(p)
    });
    std::fs::write(&manifest_path, manifest.to_json())
        .with_context(|| format!("writing {}", manifest_path.display()))?;

    println!(
        "wrote {}: {} variables, {} clauses (cc5={} fourset={} exclusion={} layer-units={} wedge-units={})",
        args.out.display(),
        manifest.variables.total,
        manifest.clauses.total,
        manifest.clauses.cc5,
        manifest.clauses.fourset,
        manifest.clauses.exclusion,
        manifest.clauses.layer_units,
        manifest.clauses.wedge_units,
    );
    println!("manifest: {}", manifest_path.display());
    println!("sha256: {}", manifest.sha256);
    Ok(())
}

fn cmd_check_points(file: &Path, k: u32) -> Result<()> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("reading {}", file.display()))?;
    let points = PointSet::parse(&text)?;
    println!("{} points, general position verified", points.len());
    match points.has_convex_subset(k)? {
        Some(witness) => {
            let labels: Vec<String> = witness.iter().map(|l| l.to_string()).collect();
            println!("convex {k}-gon found: labels {}", labels.join(" "));
        }
        None => println!("no convex {k}-subset"),
    }
    Ok(())
}

fn cmd_verify_model(args: VerifyArgs) -> Result<()> {
    let header = parse_header(BufReader::new(
        File::open(&args.cnf).with_context(|| format!("opening {}", args.cnf.display()))?,
    ))?;
    let numbering = assign_variables(&header.params)?;
    if header.declared_vars != numbering.total_vars() {
        bail!(
            "header declares {} variables but n={} implies {}",
            header.declared_vars,
            header.params.n(),
            numbering.total_vars()
        );
    }
    let model_text = std::fs::read_to_string(&args.model)
        .with_context(|| format!("reading {}", args.model.display()))?;
    let model = Model::parse_solver_output(&model_text, numbering.total_vars())?;
    match decode_and_verify(&model, &header.params)? {
        Verdict::Pass => {
            println!(
                "PASS: model is a valid witness for n={} k={}",
                header.params.n(),
                header.params.k()
            );
            Ok(())
        }
        Verdict::Fail(violation) => {
            println!("FAIL: {violation}");
            std::process::exit(1);
        }
    }
}

fn resolve_relative(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn cmd_campaign_run(config_path: &Path) -> Result<()> {
    let config = CampaignConfig::load(config_path)?;
    let base = config_path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let jobs = config.jobs()?;
    let opts = RunnerOptions {
        solver: config.solver.clone(),
        time_limit: std::time::Duration::from_secs(config.time_limit_secs),
        workers: config.workers,
        cnf_dir: resolve_relative(&base, &config.cnf_dir),
        proof_dir: config.proof_dir.as_ref().map(|p| resolve_relative(&base, p)),
    };
    let ledger_path = resolve_relative(&base, &config.ledger);
    println!("{} job(s) configured; ledger {}", jobs.len(), ledger_path.display());
    let cancel = AtomicBool::new(false);
    let summary = run_campaign(&jobs, &opts, &ledger_path, &cancel, |entry| {
        let layers = entry
            .layers
            .as_ref()
            .map(|h| h.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .unwrap_or_else(|| "-".into());
        let w = entry
            .w
            .as_ref()
            .map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .unwrap_or_else(|| "-".into());
        println!(
            "[{}] h={layers} w={w} -> {} in {:.2}s",
            &entry.job[..12],
            entry.outcome,
            entry.seconds
        );
    })?;
    println!(
        "done: {} ran, {} already terminal{}",
        summary.ran,
        summary.already_terminal,
        if summary.corrupt_lines > 0 {
            format!(", {} corrupt ledger line(s) skipped", summary.corrupt_lines)
        } else {
            String::new()
        }
    );
    Ok(())
}

fn cmd_campaign_status(ledger: &Path) -> Result<()> {
    let (entries, corrupt) = load_entries(ledger)?;
    print!("{}", status(&entries, corrupt));
    Ok(())
}
