use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};

use qlevr_gen::pipeline::{self, ExecMode, PipelineConfig, PipelineError, SCHEMA_VERSION};
use qlevr_gen::quantifier::QuantifierKind;
use qlevr_gen::render::{render_svg, RenderStyle};
use qlevr_gen::sampler::sample_scene;

const EXIT_IO: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Generate quantificational VQA datasets over 2D scene graphs.
#[derive(Debug, Parser)]
#[command(name = "qlevr-gen", version)]
struct Cli {
    /// TOML config file; command-line flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a dataset into an empty or absent directory.
    Generate(GenerateArgs),
    /// Re-verify a dataset; exits 2 if any record fails.
    Validate {
        dir: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Recompute statistics of a dataset.
    Stats {
        dir: PathBuf,
        /// Write the statistics as JSON to this file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Render one scene as SVG, from a dataset or freshly sampled.
    Render {
        /// Dataset directory to read the scene from; without it the scene is sampled.
        dir: Option<PathBuf>,
        #[arg(long)]
        scene: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_name = "N")]
    scenes: Option<u64>,
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    #[arg(long, value_name = "F")]
    balance_slack: Option<f64>,
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
    /// Skip the per-scene SVG files.
    #[arg(long)]
    no_render: bool,
}

fn after_help() -> String {
    let kinds: Vec<&str> = QuantifierKind::ALL.iter().map(|k| k.name()).collect();
    format!(
        "Output schema version: qlevr_gen_schema = {SCHEMA_VERSION}\n\
         Files: scenes.jsonl, questions.jsonl, stats.json, scene_<id>.svg\n\
         Quantifier kinds: {}\n\
         Environment: QLEVR_SEED overrides the config-file seed; --seed overrides both.\n\
         Exit codes: 0 success, 1 I/O failure, 2 validation failure, 64 usage error.",
        kinds.join(", ")
    )
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let mut command = Cli::command().after_help(after_help());
    let matches = match command.try_get_matches_from_mut(std::env::args_os()) {
        Ok(m) => m,
        Err(e) => return usage_error(e, &mut command),
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => return usage_error(e, &mut command),
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                PipelineError::Config(_) | PipelineError::OutputNotEmpty(_) => {
                    eprintln!("\n{}", Cli::command().after_help(after_help()).render_help());
                    ExitCode::from(EXIT_USAGE)
                }
                PipelineError::Parse { .. } => ExitCode::from(EXIT_INVALID),
                _ => ExitCode::from(EXIT_IO),
            }
        }
    }
}

fn usage_error(e: clap::Error, command: &mut clap::Command) -> ExitCode {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = e.print();
            ExitCode::SUCCESS
        }
        _ => {
            let _ = e.print();
            eprintln!("\n{}", command.render_help());
            ExitCode::from(EXIT_USAGE)
        }
    }
}

/// Defaults, then the config file, then `QLEVR_SEED`.
fn base_config(path: Option<&Path>) -> Result<PipelineConfig, PipelineError> {
    let mut config = match path {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    };
    if let Ok(seed) = std::env::var("QLEVR_SEED") {
        config.seed = seed
            .trim()
            .parse()
            .map_err(|_| PipelineError::Config(format!("QLEVR_SEED is not an unsigned integer: `{seed}`")))?;
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<ExitCode, PipelineError> {
    match cli.command {
        Command::Generate(args) => {
            let mut config = base_config(cli.config.as_deref())?;
            if let Some(n) = args.scenes {
                config.scenes = n;
            }
            if let Some(s) = args.seed {
                config.seed = s;
            }
            if let Some(f) = args.balance_slack {
                config.balance_slack = f;
            }
            if args.jobs.is_some() {
                config.jobs = args.jobs;
            }
            if args.no_render {
                config.render = false;
            }
            config.validate()?;
            if !pipeline::is_fresh_dir(&args.out)? {
                return Err(PipelineError::OutputNotEmpty(args.out));
            }
            let started = Instant::now();
            let data = pipeline::generate_dataset(&config, ExecMode::from_jobs(config.jobs))?;
            let stats = pipeline::write_dataset(&args.out, &data, &config)?;
            println!(
                "generated {} scenes, {} questions into {} in {:.1}s (true-rate {:.3}, unique {:.2}%, mean length {:.1} words)",
                stats.scenes,
                stats.questions,
                args.out.display(),
                started.elapsed().as_secs_f64(),
                stats.true_rate,
                stats.uniqueness * 100.0,
                stats.mean_length
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { dir, jobs } => {
            let summary = pipeline::validate_dataset(&dir, ExecMode::from_jobs(jobs))?;
            for f in summary.findings.iter().take(50) {
                eprintln!("{f}");
            }
            if summary.is_ok() {
                println!("valid: {} scenes, {} records in {}", summary.scenes, summary.records, dir.display());
                Ok(ExitCode::SUCCESS)
            } else {
                println!(
                    "invalid: {} findings over {} scenes, {} records in {}",
                    summary.findings.len(),
                    summary.scenes,
                    summary.records,
                    dir.display()
                );
                Ok(ExitCode::from(EXIT_INVALID))
            }
        }
        Command::Stats { dir, out } => {
            let stats = pipeline::dataset_stats(&dir)?;
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&stats).expect("stats serialize") + "\n";
                std::fs::write(&path, text).map_err(|source| PipelineError::Io { path, source })?;
            }
            println!(
                "{} scenes, {} questions, {} unique, true-rate {:.3}, mean length {:.1} words",
                stats.scenes, stats.questions, stats.unique_questions, stats.true_rate, stats.mean_length
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Render { dir, scene, seed, out } => {
            let graph = match dir {
                Some(d) => pipeline::load_scene(&d, scene)?
                    .ok_or_else(|| PipelineError::Config(format!("scene {scene} is not in {}", d.display())))?,
                None => {
                    let mut config = base_config(cli.config.as_deref())?;
                    if let Some(s) = seed {
                        config.seed = s;
                    }
                    sample_scene(&config.sampler_config(), scene)?
                }
            };
            let svg = render_svg(&graph, &RenderStyle::default());
            std::fs::write(&out, svg).map_err(|source| PipelineError::Io { path: out.clone(), source })?;
            println!(
                "rendered scene {} ({} planes, {} objects) to {}",
                graph.scene_id,
                graph.planes.len(),
                graph.objects.len(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}
