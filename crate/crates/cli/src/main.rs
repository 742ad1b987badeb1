use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use scd_core::harness::report::{bins_to_csv, matrix_to_csv, write_csv};
use scd_core::harness::{
    aggregate_drift_types, attach_scores, bundled_dataset, emit_report, evaluate, load_dataset, DriftType, Experiment,
    ExperimentConfig, MultilingualSample,
};
use scd_core::record::{read_records, write_records};
use scd_core::vocab::{VocabOptions, VocabularyFile};
use scd_core::{fallback_matrix, length_bin_report, partition_vocabulary, AttractorBias, LanguageId, Method};

#[derive(Parser)]
#[command(name = "scd", version, about = "Target-language control for decoding, and drift evaluation")]
struct Cli {
    /// Experiment configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Base seed; overrides the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Repeat generation with seeds seed, seed+1, ...; reports pool all runs.
    #[arg(long, global = true)]
    runs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split a vocabulary into target, neutral and distractor tokens.
    Partition {
        #[arg(long)]
        vocab: PathBuf,
        #[arg(long)]
        target: LanguageId,
        /// Treat surfaces as byte-level BPE even if the file does not say so.
        #[arg(long)]
        byte_level: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate records on the bundled mock model.
    Generate(GenerateArgs),
    /// Attach detected language and scores to an existing records file.
    Eval {
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fallback-to-English matrix, length bins and drift-type shares.
    Analyze {
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        out_matrix: PathBuf,
        #[arg(long)]
        out_bins: PathBuf,
        /// Also write drift-type distributions from the dataset annotations.
        #[arg(long)]
        out_drift: Option<PathBuf>,
        #[arg(long)]
        dataset: Option<PathBuf>,
    },
    /// Aggregate records into the per-method report CSV.
    Report {
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    target: Option<LanguageId>,
    #[arg(long)]
    context: Option<LanguageId>,
    #[arg(long)]
    method: Option<Method>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Generations per (target, context, method) cell.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    max_tokens: Option<usize>,
    #[arg(long)]
    dataset: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

fn samples(path: Option<&Path>) -> Result<Vec<MultilingualSample>> {
    match path {
        Some(p) => load_dataset(p).with_context(|| format!("loading dataset {}", p.display())),
        None => Ok(bundled_dataset()),
    }
}

impl Cli {
    fn experiment_config(&self) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(p) => ExperimentConfig::load(p).with_context(|| format!("reading config {}", p.display()))?,
            None => ExperimentConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg.decode.seed = seed;
        }
        if let Some(runs) = self.runs {
            cfg.runs = runs;
        }
        Ok(cfg)
    }

    /// Dataset named on the command line, else the one in the config file.
    fn dataset(&self, flag: &Option<PathBuf>) -> Result<Vec<MultilingualSample>> {
        let from_config = match &self.config {
            Some(_) => self.experiment_config()?.dataset,
            None => None,
        };
        samples(flag.as_deref().or(from_config.as_deref()))
    }
}

fn generate(cli: &Cli, args: &GenerateArgs) -> Result<()> {
    let mut cfg = cli.experiment_config()?;
    if let Some(t) = args.target {
        cfg.targets = vec![t];
    }
    if let Some(c) = args.context {
        cfg.contexts = vec![c];
    }
    if let Some(m) = args.method {
        cfg.methods = vec![m];
    }
    if let Some(l) = args.lambda {
        cfg.lambda = AttractorBias::new(l)?;
    }
    if let Some(n) = args.n {
        cfg.n = Some(n);
    }
    if let Some(m) = args.max_tokens {
        cfg.decode.max_tokens = m;
    }
    if args.dataset.is_some() {
        cfg.dataset = args.dataset.clone();
    }
    let records = Experiment::new(cfg)?.run()?;
    write_records(&args.out, &records)?;
    eprintln!("wrote {} records to {}", records.len(), args.out.display());
    Ok(())
}

fn drift_csv(path: &Path, samples: &[MultilingualSample], records: &[scd_core::GenerationRecord]) -> Result<()> {
    let mut dist: Vec<_> = aggregate_drift_types(samples, records).into_iter().collect();
    dist.sort_by_key(|((t, c), _)| (t.code(), c.code()));
    let mut body = String::from("target,context,A,B,C,D\n");
    for ((t, c), shares) in &dist {
        let cols: Vec<String> = DriftType::ALL.iter().map(|d| format!("{:.4}", shares[d])).collect();
        body.push_str(&format!("{t},{c},{}\n", cols.join(",")));
    }
    write_csv(path, &body)?;
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Partition {
            vocab,
            target,
            byte_level,
            out,
        } => {
            let file = VocabularyFile::load(vocab).with_context(|| format!("reading vocabulary {}", vocab.display()))?;
            let opts = VocabOptions {
                byte_level: *byte_level,
                special_tokens: None,
            };
            let partition = partition_vocabulary(&file.into_entries(&opts)?, *target)?;
            partition.save(out)?;
            let c = partition.counts();
            eprintln!("{target}: {} target, {} neutral, {} distractor", c.target, c.neutral, c.distractor);
        }
        Command::Generate(args) => generate(cli, args)?,
        Command::Eval { records, dataset, out } => {
            let mut recs = read_records(records)?;
            attach_scores(&mut recs, &cli.dataset(dataset)?)?;
            write_records(out, &recs)?;
        }
        Command::Analyze {
            records,
            out_matrix,
            out_bins,
            out_drift,
            dataset,
        } => {
            let mut recs = read_records(records)?;
            if recs.is_empty() {
                bail!("{} holds no records", records.display());
            }
            let ds = cli.dataset(dataset)?;
            attach_scores(&mut recs, &ds)?;
            write_csv(out_matrix, &matrix_to_csv(&fallback_matrix(&recs))?)?;
            write_csv(out_bins, &bins_to_csv(&length_bin_report(&recs)?)?)?;
            if let Some(path) = out_drift {
                drift_csv(path, &ds, &recs)?;
            }
        }
        Command::Report { records, dataset, out } => {
            let recs = read_records(records)?;
            let report = evaluate(&recs, &cli.dataset(dataset)?)?;
            emit_report(&report, out)?;
            eprintln!("wrote {} rows to {}", report.rows.len(), out.display());
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
