use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use wordspot::clustering::{cluster_quality, ik_means};
use wordspot::corpus::{parse_query_words, render_corpus, render_queries, render_query, CorpusSpec, Font};
use wordspot::evaluation::{read_ground_truth, run_experiment, RelevanceJudgments};
use wordspot::features::feature_name;
use wordspot::imaging::pnm;
use wordspot::matching::{rank_query, MatchConfig};
use wordspot::pipeline::{index_directory, query_features};
use wordspot::segmentation::SegmentationConfig;
use wordspot::store::{read_db, read_weights, write_db, write_weights};
use wordspot::weighting::{compute_weights, correlation_matrix, WeightVector};

#[derive(Parser)]
#[command(name = "wordspot", version, about = "Feature-weighted word-image retrieval")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render a synthetic corpus of word pages plus ground truth.
    Render {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Segment page images and write the feature database.
    Index {
        #[arg(long)]
        pages: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Word gap as a fraction of the band height.
        #[arg(long, default_value_t = 0.35, allow_negative_numbers = true)]
        seg_gap: f64,
    },
    /// Learn feature weights from a database.
    Weigh {
        #[arg(long)]
        db: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank the database against one query word.
    Query {
        #[arg(long)]
        db: PathBuf,
        #[arg(long, required_unless_present = "uniform_weights")]
        weights: Option<PathBuf>,
        /// Render this text as the query.
        #[arg(long, conflicts_with = "image", required_unless_present = "image")]
        word: Option<String>,
        #[arg(long, default_value = "A")]
        font: Font,
        #[arg(long, default_value_t = 2)]
        scale: usize,
        /// Query word image (PBM or PGM).
        #[arg(long)]
        image: Option<PathBuf>,
        #[command(flatten)]
        matching: MatchArgs,
        /// Rank with equal weights, ignoring --weights.
        #[arg(long)]
        uniform_weights: bool,
    },
    /// Precision/recall over a query suite.
    Eval {
        #[arg(long)]
        db: PathBuf,
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        /// One query word per line.
        #[arg(long)]
        queries: PathBuf,
        #[arg(long, default_value = "A")]
        font: Font,
        #[arg(long, default_value_t = 2)]
        scale: usize,
        #[command(flatten)]
        matching: MatchArgs,
        /// Also report the run with uniform weights.
        #[arg(long)]
        compare_uniform: bool,
    },
    /// Threshold-seeded k-means over the database.
    Cluster {
        #[arg(long)]
        db: PathBuf,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true)]
        threshold: f64,
        /// Cluster raw feature values instead of min-max normalized ones.
        #[arg(long)]
        raw: bool,
    },
}

#[derive(Args)]
struct MatchArgs {
    /// Distance cutoff for the retrieved set.
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    threshold: f64,
    /// Keep at most N retrieved words.
    #[arg(long)]
    top: Option<usize>,
    /// Skip per-column min-max normalization.
    #[arg(long)]
    raw: bool,
}

impl MatchArgs {
    fn config(&self) -> Result<MatchConfig> {
        let cfg = MatchConfig {
            threshold: self.threshold,
            top_k: self.top,
            normalize: !self.raw,
            ..MatchConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(2);
        }
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", one_line(&e));
            ExitCode::FAILURE
        }
    }
}

/// The error chain on one line, skipping causes already quoted by their parent.
/// Prefixes a file's path to errors that do not already name it.
fn at<T>(path: &Path, r: wordspot::Result<T>) -> Result<T> {
    r.map_err(|e| {
        let shown = path.display().to_string();
        if e.to_string().contains(&shown) {
            anyhow::Error::new(e)
        } else {
            anyhow::Error::new(e).context(shown)
        }
    })
}

fn one_line(e: &anyhow::Error) -> String {
    let mut msg = String::new();
    for cause in e.chain() {
        let part = cause.to_string();
        if !msg.contains(&part) {
            if !msg.is_empty() {
                msg.push_str(": ");
            }
            msg.push_str(&part);
        }
    }
    msg.replace('\n', " ")
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Render { spec, out } => {
            let spec = CorpusSpec::read(&spec)?;
            let corpus = render_corpus(&spec, &out)?;
            println!(
                "rendered {} pages, {} words into {}",
                corpus.pages.len(),
                corpus.truth.len(),
                out.display()
            );
        }
        Command::Index { pages, out, seg_gap } => {
            let cfg = SegmentationConfig {
                word_gap_factor: seg_gap,
                ..SegmentationConfig::default()
            };
            let db = index_directory(&pages, &cfg)?;
            write_db(&db, &out)?;
            println!("indexed {} words into {}", db.len(), out.display());
        }
        Command::Weigh { db, out } => {
            let db = at(&db, read_db(&db))?;
            let w = compute_weights(&correlation_matrix(&db)?)?;
            write_weights(&w, &out)?;
            println!("feature\tname\tactive\tlambda\tweight");
            for i in 0..w.dim() {
                println!(
                    "{i}\t{}\t{}\t{:.6}\t{:.6e}",
                    feature_name(i),
                    u8::from(w.active[i]),
                    w.lambda[i],
                    w.weight[i]
                );
            }
        }
        Command::Query {
            db,
            weights,
            word,
            font,
            scale,
            image,
            matching,
            uniform_weights,
        } => {
            let cfg = matching.config()?;
            let db = at(&db, read_db(&db))?;
            let w = load_weights(weights, uniform_weights, &db)?;
            let query = match (word, image) {
                (Some(word), _) => render_query(&word, font, scale)?,
                (None, Some(path)) => pnm::read_image(&path)?.into_binary(),
                (None, None) => bail!("either --word or --image is required"),
            };
            let result = rank_query(&query_features(&query)?, &db, &w, &cfg)?;
            print!("{}", result.to_tsv());
        }
        Command::Eval {
            db,
            weights,
            truth,
            queries,
            font,
            scale,
            matching,
            compare_uniform,
        } => {
            let cfg = matching.config()?;
            let db = at(&db, read_db(&db))?;
            let w = at(&weights, read_weights(&weights))?;
            let truth = at(&truth, read_ground_truth(&truth))?;
            let text = std::fs::read_to_string(&queries).with_context(|| format!("{}", queries.display()))?;
            let words = parse_query_words(&text).with_context(|| format!("{}", queries.display()))?;
            let mut judgments = RelevanceJudgments::from_ground_truth(&truth, &db);
            for q in &words {
                judgments.add_query(q);
            }
            let queries = render_queries(&words, font, scale)?;
            let weighted = run_experiment(&db, &judgments, &queries, &w, &cfg)?;
            print!("{}", weighted.summary("weighted"));
            print!("{}", weighted.to_tsv());
            if compare_uniform {
                let uniform = WeightVector::uniform(w.dim());
                let baseline = run_experiment(&db, &judgments, &queries, &uniform, &cfg)?;
                println!();
                print!("{}", baseline.summary("uniform"));
                print!("{}", baseline.to_tsv());
                println!();
                println!("[comparison]\nweighted_minus_uniform_precision\t{:.4}", weighted.avg_precision - baseline.avg_precision);
                println!("weighted_minus_uniform_recall\t{:.4}", weighted.avg_recall - baseline.avg_recall);
            }
        }
        Command::Cluster {
            db,
            weights,
            threshold,
            raw,
        } => {
            let cfg = MatchConfig {
                normalize: !raw,
                ..MatchConfig::default()
            };
            let db = at(&db, read_db(&db))?;
            let w = weights.map(|p| at(&p, read_weights(&p))).transpose()?;
            let model = ik_means(&db, threshold, w.as_ref(), &cfg)?;
            let quality = cluster_quality(&model, &db, w.as_ref(), &cfg)?;
            println!("clusters\t{}\niterations\t{}\n{quality}\n", model.k, model.iterations);
            print!("{}", model.to_tsv(&db));
        }
    }
    Ok(())
}

fn load_weights(path: Option<PathBuf>, uniform: bool, db: &wordspot::store::FeatureDatabase) -> Result<WeightVector> {
    if uniform {
        return Ok(WeightVector::uniform(db.col_min().len()));
    }
    match path {
        Some(p) => at(&p, read_weights(&p)),
        None => bail!("--weights is required unless --uniform-weights is given"),
    }
}
