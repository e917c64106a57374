//! Command-line interface: train, predict, evaluate, ablate, harvest,
//! strength, normalize, segment, stats.
//!
//! Options may also come from a `key=value` config file (`--config`);
//! explicit flags win. The lexicon directory falls back to the
//! `TWEETSENSE_LEXICONS` environment variable. Exit codes: 0 success,
//! 1 usage error, 2 data error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::classify::{ParamGrid, PriorMode};
use crate::corpus::{corpus_stats, load_corpus, Corpus, Label};
use crate::enhance::HarvestConfig;
use crate::error::{Error, Result};
use crate::eval::{ablation_to_table, table4_masks};
use crate::features::FeatureMask;
use crate::normalize::segment_hashtag;
use crate::pipeline::{
    self, load_lexicons, load_model, make_fetcher, save_model, ModelSpec, RunSettings,
};

pub const LEXICON_ENV_VAR: &str = "TWEETSENSE_LEXICONS";

#[derive(Parser, Debug)]
#[command(
    name = "tweetsense",
    version,
    about = "Tweet sentiment classification, term harvesting, and strength scoring"
)]
struct Cli {
    /// key=value config file; explicit flags win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct CommonArgs {
    /// Lexicon directory (default: $TWEETSENSE_LEXICONS)
    #[arg(long)]
    lexicons: Option<PathBuf>,
    /// On-disk cache for fetched url articles
    #[arg(long)]
    url_cache: Option<PathBuf>,
    /// Forbid network use; cache misses become warnings
    #[arg(long)]
    offline: bool,
    /// Fetch timeout in milliseconds
    #[arg(long)]
    fetch_timeout_ms: Option<u64>,
    /// Seed for fold splits and SGD shuffles
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug, Default)]
struct ModelArgs {
    /// Comma list of feature families, e.g. f1,f2,f4 (default: all)
    #[arg(long)]
    features: Option<String>,
    /// Classifier kind: nb or svm
    #[arg(long)]
    model: Option<String>,
    /// Grid-search hyperparameters with cross-validation before training
    #[arg(long)]
    tune: bool,
    /// Naive Bayes smoothing constant
    #[arg(long)]
    alpha: Option<f64>,
    /// Class priors: empirical or uniform
    #[arg(long)]
    prior_mode: Option<String>,
    /// SVM initial learning rate
    #[arg(long)]
    eta0: Option<f64>,
    /// SVM L2 regularization strength
    #[arg(long)]
    lambda: Option<f64>,
    /// SVM training epochs
    #[arg(long)]
    epochs: Option<usize>,
    /// Cross-validation folds for tuning and stacking
    #[arg(long)]
    folds: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Train a model and persist it as versioned JSON
    Train {
        #[arg(long)]
        train: Option<PathBuf>,
        #[arg(long)]
        model_out: Option<PathBuf>,
        /// Skip the first line of corpus files
        #[arg(long)]
        has_header: bool,
        #[command(flatten)]
        model_args: ModelArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Classify a corpus: id⟨TAB⟩label⟨TAB⟩posterior
    Predict {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[arg(long)]
        has_header: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Score predictions against gold labels
    Evaluate {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[arg(long)]
        has_header: bool,
        /// Also print unweighted macro averages
        #[arg(long = "macro")]
        macro_avg: bool,
        /// Write the report as JSON
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Incremental-feature ablation over train/test splits
    Ablate {
        #[arg(long)]
        train: Option<PathBuf>,
        #[arg(long)]
        test: Option<PathBuf>,
        /// Semicolon-separated mask list, e.g. "f1,f2;f1,f2,f4"
        #[arg(long)]
        masks: Option<String>,
        #[arg(long)]
        has_header: bool,
        /// Write rows as JSON
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        model_args: ModelArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Harvest topic-specific sentiment terms: term⟨TAB⟩frequency
    Harvest {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        /// Class to harvest for: positive, negative, or neutral
        #[arg(long)]
        class: Option<String>,
        /// Top fraction of the source class ranking
        #[arg(long)]
        t1: Option<f64>,
        /// Top fraction of the other classes' rankings
        #[arg(long)]
        t2: Option<f64>,
        /// Group by gold labels instead of predictions (diagnostics)
        #[arg(long)]
        use_gold: bool,
        #[arg(long)]
        has_header: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Score sentiment strength: id⟨TAB⟩value
    Strength {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        /// Saturation calibration constant
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        has_header: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Emit one JSON object per normalized tweet
    Normalize {
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[arg(long)]
        has_header: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Segment a hashtag body into words
    Segment {
        tag: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Corpus statistics as an aligned table or JSON
    Stats {
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        has_header: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
}

/// Values from a `key=value` config file, consulted when a flag is
/// absent.
struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    fn load(path: Option<&Path>) -> Result<ConfigFile> {
        let mut values = BTreeMap::new();
        if let Some(path) = path {
            if !path.is_file() {
                return Err(Error::MissingFile(path.to_path_buf()));
            }
            let content = std::fs::read_to_string(path)
                .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
            for (idx, line) in content.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| Error::MalformedRow {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    reason: "expected key=value".into(),
                })?;
                values.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(ConfigFile { values })
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                Error::InvalidConfig(format!("config key `{key}` has invalid value `{raw}`"))
            }),
        }
    }

    fn path(&self, flag: Option<PathBuf>, key: &str) -> Option<PathBuf> {
        flag.or_else(|| self.values.get(key).map(PathBuf::from))
    }

    fn flag(&self, set_on_cli: bool, key: &str) -> bool {
        set_on_cli
            || matches!(
                self.values.get(key).map(String::as_str),
                Some("true") | Some("1") | Some("yes")
            )
    }
}

/// Options every pipeline-facing subcommand resolves.
pub struct RunConfig {
    pub lexicon_dir: PathBuf,
    pub url_cache: PathBuf,
    pub offline: bool,
    pub fetch_timeout_ms: u64,
    pub settings: RunSettings,
}

fn resolve_common(common: &CommonArgs, cfg: &ConfigFile) -> Result<RunConfig> {
    let lexicon_dir = cfg
        .path(common.lexicons.clone(), "lexicons")
        .or_else(|| std::env::var(LEXICON_ENV_VAR).ok().map(PathBuf::from))
        .ok_or_else(|| {
            Error::InvalidConfig(format!(
                "no lexicon directory: pass --lexicons, set {LEXICON_ENV_VAR}, or use a config file"
            ))
        })?;
    let url_cache = cfg
        .path(common.url_cache.clone(), "url-cache")
        .unwrap_or_else(pipeline::default_cache_dir);
    let mut settings = RunSettings::default();
    settings.seed = common
        .seed
        .or(cfg.get::<u64>("seed")?)
        .unwrap_or(settings.seed);
    Ok(RunConfig {
        lexicon_dir,
        url_cache,
        offline: cfg.flag(common.offline, "offline"),
        fetch_timeout_ms: common
            .fetch_timeout_ms
            .or(cfg.get("fetch-timeout-ms")?)
            .unwrap_or(5000),
        settings,
    })
}

fn resolve_model(args: &ModelArgs, cfg: &ConfigFile, rc: &mut RunConfig) -> Result<()> {
    if let Some(features) = args
        .features
        .clone()
        .or(cfg.get::<String>("features")?)
    {
        rc.settings.mask = FeatureMask::parse(&features)?;
    }
    if let Some(folds) = args.folds.or(cfg.get("folds")?) {
        rc.settings.cv_folds = folds;
        rc.settings.stacking_folds = folds;
    }
    let kind = args
        .model
        .clone()
        .or(cfg.get::<String>("model")?)
        .unwrap_or_else(|| "nb".into());
    let tune = cfg.flag(args.tune, "tune");
    let prior_mode = match args
        .prior_mode
        .clone()
        .or(cfg.get::<String>("prior-mode")?)
        .as_deref()
    {
        None | Some("empirical") => PriorMode::Empirical,
        Some("uniform") => PriorMode::Uniform,
        Some(other) => {
            return Err(Error::InvalidConfig(format!(
                "unknown prior mode `{other}` (expected empirical or uniform)"
            )))
        }
    };
    rc.settings.model = match (kind.as_str(), tune) {
        ("nb", false) => ModelSpec::Nb {
            alpha: args.alpha.or(cfg.get("alpha")?).unwrap_or(1.0),
            prior_mode,
        },
        ("nb", true) => ModelSpec::Tuned(ParamGrid::default_nb()),
        ("svm", false) => ModelSpec::Svm {
            eta0: args.eta0.or(cfg.get("eta0")?).unwrap_or(0.1),
            lambda: args.lambda.or(cfg.get("lambda")?).unwrap_or(1e-4),
            epochs: args.epochs.or(cfg.get("epochs")?).unwrap_or(50),
        },
        ("svm", true) => ModelSpec::Tuned(ParamGrid::default_svm()),
        (other, _) => {
            return Err(Error::InvalidConfig(format!(
                "unknown model kind `{other}` (expected nb or svm)"
            )))
        }
    };
    Ok(())
}

fn required<T>(value: Option<T>, what: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidConfig(format!("missing required option --{what}")))
}

fn load_split(cfg: &ConfigFile, flag: Option<PathBuf>, key: &str, has_header: bool) -> Result<Corpus> {
    let path = required(cfg.path(flag, key), key)?;
    load_corpus(path, has_header)
}

fn print_warnings(err: &mut dyn Write, warnings: &[String]) {
    for w in warnings {
        let _ = writeln!(err, "warning: {w}");
    }
}

/// Parses argv and runs one subcommand. Returns the process exit code:
/// 0 success, 1 usage error, 2 data error.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let cfg = ConfigFile::load(cli.config.as_deref())?;
    match cli.command {
        Command::Train {
            train,
            model_out,
            has_header,
            model_args,
            common,
        } => {
            let mut rc = resolve_common(&common, &cfg)?;
            resolve_model(&model_args, &cfg, &mut rc)?;
            let corpus = load_split(&cfg, train, "train", has_header)?;
            let model_out = required(cfg.path(model_out, "model-out"), "model-out")?;
            let (lex, tags) = load_lexicons(&rc.lexicon_dir)?;
            print_warnings(err, &lex.warnings);
            let fetcher = make_fetcher(rc.offline, rc.fetch_timeout_ms)?;
            let result = pipeline::train(
                &corpus,
                &lex,
                &tags,
                fetcher.as_ref(),
                &rc.url_cache,
                &rc.settings,
            )?;
            print_warnings(err, &result.warnings);
            save_model(&result.model, &model_out)?;
            writeln!(
                out,
                "trained on {} tweets, {} features, classes: {}",
                result.n_rows,
                result.n_features,
                result
                    .model
                    .classes
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join("/")
            )
            .map_err(|e| Error::io("writing output", e))?;
            if let Some(grid) = result.grid {
                writeln!(out, "grid search (seed {}):", grid.seed)
                    .map_err(|e| Error::io("writing output", e))?;
                for (params, score) in &grid.table {
                    let rendered: Vec<String> =
                        params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    writeln!(out, "  {} -> {:.4}", rendered.join(" "), score)
                        .map_err(|e| Error::io("writing output", e))?;
                }
                writeln!(out, "best: {:?} ({:.4})", grid.best_params, grid.best_score)
                    .map_err(|e| Error::io("writing output", e))?;
            }
            writeln!(out, "model written to {}", model_out.display())
                .map_err(|e| Error::io("writing output", e))?;
            Ok(())
        }
        Command::Predict {
            model,
            r#in,
            has_header,
            common,
        } => {
            let rc = resolve_common(&common, &cfg)?;
            let model = load_model(&required(cfg.path(model, "model"), "model")?)?;
            let corpus = load_split(&cfg, r#in, "in", has_header)?;
            let (lex, tags) = load_lexicons(&rc.lexicon_dir)?;
            let fetcher = make_fetcher(rc.offline, rc.fetch_timeout_ms)?;
            let result = pipeline::predict(
                &corpus,
                &model,
                &lex,
                &tags,
                fetcher.as_ref(),
                &rc.url_cache,
            )?;
            print_warnings(err, &result.warnings);
            for p in &result.predictions {
                let posterior = match p.posterior {
                    Some(v) => format!("{v:.6}"),
                    None => "-".to_string(),
                };
                writeln!(out, "{}\t{}\t{}", p.id, p.label, posterior)
                    .map_err(|e| Error::io("writing output", e))?;
            }
            Ok(())
        }
        Command::Evaluate {
            model,
            r#in,
            has_header,
            macro_avg,
            out: out_path,
            common,
        } => {
            let rc = resolve_common(&common, &cfg)?;
            let model = load_model(&required(cfg.path(model, "model"), "model")?)?;
            let corpus = load_split(&cfg, r#in, "in", has_header)?;
            let (lex, tags) = load_lexicons(&rc.lexicon_dir)?;
            let fetcher = make_fetcher(rc.offline, rc.fetch_timeout_ms)?;
            let result = pipeline::predict(
                &corpus,
                &model,
                &lex,
                &tags,
                fetcher.as_ref(),
                &rc.url_cache,
            )?;
            print_warnings(err, &result.warnings);
            let mut preds = Vec::new();
            let mut gold = Vec::new();
            for (tweet, p) in corpus.iter().zip(&result.predictions) {
                if tweet.label.is_sentiment() {
                    preds.push(p.label);
                    gold.push(tweet.label);
                }
            }
            let report = crate::eval::evaluate(&preds, &gold)?;
            write!(out, "{}", report.to_table()).map_err(|e| Error::io("writing output", e))?;
            if macro_avg {
                writeln!(
                    out,
                    "macro      {:>9.2} {:>9.2} {:>9.2}",
                    report.macro_avg.precision, report.macro_avg.recall, report.macro_avg.f1
                )
                .map_err(|e| Error::io("writing output", e))?;
            }
            for note in &report.notes {
                let _ = writeln!(err, "note: {note}");
            }
            if let Some(path) = out_path {
                let body = serde_json::to_vec_pretty(&report)
                    .map_err(|e| Error::json("serializing report", e))?;
                std::fs::write(&path, body)
                    .map_err(|e| Error::io(format!("writing {}", path.display()), e))?;
            }
            Ok(())
        }
        Command::Ablate {
            train,
            test,
            masks,
            has_header,
            out: out_path,
            model_args,
            common,
        } => {
            let mut rc = resolve_common(&common, &cfg)?;
            resolve_model(&model_args, &cfg, &mut rc)?;
            let train_corpus = load_split(&cfg, train, "train", has_header)?;
            let test_corpus = load_split(&cfg, test, "test", has_header)?;
            let masks: Vec<FeatureMask> = match masks.or(cfg.get::<String>("masks")?) {
                Some(raw) => raw
                    .split(';')
                    .filter(|s| !s.trim().is_empty())
                    .map(FeatureMask::parse)
                    .collect::<Result<Vec<_>>>()?,
                None => table4_masks(),
            };
            let (lex, tags) = load_lexicons(&rc.lexicon_dir)?;
            let fetcher = make_fetcher(rc.offline, rc.fetch_timeout_ms)?;
            let rows = pipeline::ablation(
                &train_corpus,
                &test_corpus,
                &lex,
                &tags,
                fetcher.as_ref(),
                &rc.url_cache,
                &masks,
                &rc.settings,
            )?;
            write!(out, "{}", ablation_to_table(&rows))
                .map_err(|e| Error::io("writing output", e))?;
            if let Some(path) = out_path {
                let json_rows: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(mask, report)| {
                        serde_json::json!({
                            "mask": mask.to_string(),
                            "report": report,
                        })
                    })
                    .collect();
                let body = serde_json::to_vec_pretty(&json_rows)
                    .map_err(|e| Error::json("serializing ablation rows", e))?;
                std::fs::write(&path, body)
                    .map_err(|e| Error::io(format!("writing {}", path.display()), e))?;
            }
            Ok(())
        }
        Command::Harvest {
            model,
            r#in,
            class,
            t1,
            t2,
            use_gold,
            has_header,
            common,
        } => {
            let rc = resolve_common(&common, &cfg)?;
            let model = load_model(&required(cfg.path(model, "model"), "model")?)?;
            let corpus = load_split(&cfg, r#in, "in", has_header)?;
            let class_name = class
                .or(cfg.get::<String>("class")?)
                .unwrap_or_else(|| "negative".into());
            let class = Label::parse(&class_name)
                .filter(|l| l.is_sentiment())
                .ok_or_else(|| {
                    Error::InvalidConfig(format!("invalid harvest class `{class_name}`"))
                })?;
            let harvest_cfg = HarvestConfig {
                threshold1: t1.or(cfg.get("t1")?).unwrap_or(0.10),
                threshold2: t2.or(cfg.get("t2")?).unwrap_or(0.60),
            };
            let (lex, tags) = load_lexicons(&rc.lexicon_dir)?;
            let fetcher = make_fetcher(rc.offline, rc.fetch_timeout_ms)?;
            let terms = pipeline::harvest(
                &corpus,
                &model,
                &lex,
                &tags,
                fetcher.as_ref(),
                &rc.url_cache,
                class,
                &harvest_cfg,
                cfg.flag(use_gold, "use-gold"),
            )?;
            for (term, freq) in terms {
                writeln!(out, "{term}\t{freq}").map_err(|e| Error::io("writing output", e))?;
            }
            Ok(())
        }
        Command::Strength {
            model,
            r#in,
            r,
            has_header,
            common,
        } => {
            let rc = resolve_common(&common, &cfg)?;
            let model = load_model(&required(cfg.path(model, "model"), "model")?)?;
            let corpus = load_split(&cfg, r#in, "in", has_header)?;
            let (lex, tags) = load_lexicons(&rc.lexicon_dir)?;
            let fetcher = make_fetcher(rc.offline, rc.fetch_timeout_ms)?;
            let r = r.or(cfg.get("r")?).unwrap_or(pipeline::DEFAULT_STRENGTH_R);
            let scores = pipeline::strength(
                &corpus,
                &model,
                &lex,
                &tags,
                fetcher.as_ref(),
                &rc.url_cache,
                r,
            )?;
            for (id, score) in scores {
                writeln!(out, "{id}\t{}", score.value)
                    .map_err(|e| Error::io("writing output", e))?;
            }
            Ok(())
        }
        Command::Normalize {
            r#in,
            has_header,
            common,
        } => {
            let rc = resolve_common(&common, &cfg)?;
            let corpus = load_split(&cfg, r#in, "in", has_header)?;
            let (lex, tags) = load_lexicons(&rc.lexicon_dir)?;
            print_warnings(err, &lex.warnings);
            for tweet in corpus.iter() {
                let nt = crate::normalize::normalize_tweet(tweet, &lex, &tags);
                let line = serde_json::json!({
                    "id": nt.tweet_id,
                    "tokens": nt.tokens,
                    "artifacts": nt.artifacts,
                });
                writeln!(out, "{line}").map_err(|e| Error::io("writing output", e))?;
            }
            Ok(())
        }
        Command::Segment { tag, common } => {
            let rc = resolve_common(&common, &cfg)?;
            let (lex, _) = load_lexicons(&rc.lexicon_dir)?;
            let body = tag.trim_start_matches('#');
            let segments = segment_hashtag(body, lex.wordlist());
            writeln!(out, "{}", segments.join(" ")).map_err(|e| Error::io("writing output", e))?;
            Ok(())
        }
        Command::Stats {
            r#in,
            json,
            has_header,
            common,
        } => {
            let rc = resolve_common(&common, &cfg)?;
            let corpus = load_split(&cfg, r#in, "in", has_header)?;
            let (lex, tags) = load_lexicons(&rc.lexicon_dir)?;
            let report = corpus_stats(&corpus, &lex, &tags);
            if json {
                let body = serde_json::to_string_pretty(&report)
                    .map_err(|e| Error::json("serializing stats", e))?;
                writeln!(out, "{body}").map_err(|e| Error::io("writing output", e))?;
            } else {
                write!(out, "{}", report.to_table())
                    .map_err(|e| Error::io("writing output", e))?;
            }
            Ok(())
        }
    }
}
