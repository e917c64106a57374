//! End-to-end wiring: prepare splits, train and persist models, predict,
//! run ablations, harvest terms, and score strength.
//!
//! Everything here is deterministic given a [`RunSettings`] (one seed
//! drives fold splits and SGD shuffles) and a warm url cache.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classify::{
    grid_search, nb_train, svm_train, GridSearchResult, ParamGrid, PriorMode, SvmHyper,
    TrainedClassifier,
};
use crate::corpus::{filter_labels, Corpus, Label, Tweet, SENTIMENT_CLASSES};
use crate::enhance::{harvest_terms, rank_frequencies, strength_score, HarvestConfig, StrengthScore};
use crate::error::{Error, Result};
use crate::eval::{ablation_table, EvalReport};
use crate::features::{
    extract_features, stacked_tfidf_feature, CategoricalEncoder, FeatureMask, FeatureVector,
    StackedTfidf,
};
use crate::lexicons::LexiconBundle;
use crate::normalize::{normalize_tweet, NormalizedTweet};
use crate::tagging::Tagger;
use crate::url_context::{Fetcher, UrlSentiment, UrlSentimentProvider};

pub const MODEL_FORMAT_VERSION: u32 = 1;
pub const DEFAULT_STACKING_FOLDS: usize = 5;
pub const DEFAULT_STACKING_ALPHA: f64 = 1.0;
pub const DEFAULT_STRENGTH_R: f64 = 10.0;
pub const FETCH_CONCURRENCY: usize = 4;

/// Which classifier to train, with its hyperparameters, or a grid to
/// tune over.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelSpec {
    Nb { alpha: f64, prior_mode: PriorMode },
    Svm { eta0: f64, lambda: f64, epochs: usize },
    Tuned(ParamGrid),
}

impl Default for ModelSpec {
    fn default() -> Self {
        ModelSpec::Nb {
            alpha: 1.0,
            prior_mode: PriorMode::Empirical,
        }
    }
}

/// Resolved knobs for one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSettings {
    pub mask: FeatureMask,
    pub model: ModelSpec,
    pub seed: u64,
    pub cv_folds: usize,
    pub stacking_folds: usize,
    pub stacking_alpha: f64,
    pub strength_r: f64,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            mask: FeatureMask::all(),
            model: ModelSpec::default(),
            seed: 42,
            cv_folds: 5,
            stacking_folds: DEFAULT_STACKING_FOLDS,
            stacking_alpha: DEFAULT_STACKING_ALPHA,
            strength_r: DEFAULT_STRENGTH_R,
        }
    }
}

/// The versioned on-disk model. Everything needed for inference rides
/// along: encoder, mask, the stacked tf-idf classifier, hyperparameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format_version: u32,
    pub classes: Vec<Label>,
    pub feature_mask: FeatureMask,
    pub encoder: CategoricalEncoder,
    pub classifier: TrainedClassifier,
    pub stacked: Option<StackedTfidf>,
    pub hyperparams: BTreeMap<String, String>,
    pub seed: u64,
}

pub fn save_model(model: &ModelFile, path: &Path) -> Result<()> {
    let body = serde_json::to_vec_pretty(model)
        .map_err(|e| Error::json("serializing model", e))?;
    fs::write(path, body).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

pub fn load_model(path: &Path) -> Result<ModelFile> {
    if !path.is_file() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let raw = fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    let model: ModelFile = serde_json::from_str(&raw)
        .map_err(|e| Error::json(format!("parsing {}", path.display()), e))?;
    if model.format_version != MODEL_FORMAT_VERSION {
        return Err(Error::UnsupportedModelVersion(model.format_version));
    }
    Ok(model)
}

/// A corpus split normalized once, with url sentiment fractions resolved.
pub struct PreparedSplit {
    pub tweets: Vec<Tweet>,
    pub normalized: Vec<NormalizedTweet>,
    pub labels: Vec<Label>,
    pub url_sentiments: Vec<UrlSentiment>,
}

/// Normalizes a split and resolves f5 fractions through the provider.
/// With `provider` absent (f5 disabled or no cache configured) the
/// fractions are all zero.
pub fn prepare_split(
    corpus: &Corpus,
    lex: &LexiconBundle,
    tagger: &dyn Tagger,
    provider: Option<&UrlSentimentProvider>,
) -> PreparedSplit {
    let filtered = filter_labels(corpus);
    let normalized: Vec<NormalizedTweet> = filtered
        .iter()
        .map(|t| normalize_tweet(t, lex, tagger))
        .collect();
    if let Some(p) = provider {
        let all_urls: Vec<String> = normalized
            .iter()
            .flat_map(|nt| nt.artifacts.urls.iter().cloned())
            .collect();
        p.prefetch(&all_urls, FETCH_CONCURRENCY);
    }
    let url_sentiments: Vec<UrlSentiment> = normalized
        .iter()
        .map(|nt| match provider {
            Some(p) => p.fractions(&nt.artifacts.urls, lex),
            None => UrlSentiment::default(),
        })
        .collect();
    PreparedSplit {
        labels: filtered.iter().map(|t| t.label).collect(),
        tweets: filtered.tweets,
        normalized,
        url_sentiments,
    }
}

fn feature_rows(
    split: &PreparedSplit,
    lex: &LexiconBundle,
    encoder: &CategoricalEncoder,
    f8: Option<&[[f64; 3]]>,
    mask: &FeatureMask,
) -> Vec<Vec<f64>> {
    (0..split.tweets.len())
        .map(|i| {
            let fv = extract_features(
                &split.tweets[i],
                &split.normalized[i],
                lex,
                split.url_sentiments[i],
                encoder,
                f8.map(|probs| probs[i]),
            );
            fv.flatten(mask, encoder)
        })
        .collect()
}

/// Output of a training run.
pub struct TrainOutput {
    pub model: ModelFile,
    pub grid: Option<GridSearchResult>,
    pub warnings: Vec<String>,
    pub n_rows: usize,
    pub n_features: usize,
}

/// Trains a model on a corpus: filter → normalize → url context →
/// stacking → flatten → fit (or grid-search) → package.
pub fn train(
    corpus: &Corpus,
    lex: &LexiconBundle,
    tagger: &dyn Tagger,
    fetcher: &dyn Fetcher,
    cache_dir: &Path,
    settings: &RunSettings,
) -> Result<TrainOutput> {
    let provider = UrlSentimentProvider::new(fetcher, cache_dir);
    let split = prepare_split(
        corpus,
        lex,
        tagger,
        settings.mask.f5.then_some(&provider),
    );
    if split.tweets.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let encoder = CategoricalEncoder::fit(&split.tweets);

    let (f8, stacked) = if settings.mask.f8 {
        let (oof, stacked) = stacked_tfidf_feature(
            &split.normalized,
            &split.labels,
            settings.stacking_folds,
            settings.seed,
            settings.stacking_alpha,
        )?;
        (Some(oof), Some(stacked))
    } else {
        (None, None)
    };

    let rows = feature_rows(&split, lex, &encoder, f8.as_deref(), &settings.mask);
    let n_features = rows.first().map_or(0, Vec::len);

    let mut hyperparams: BTreeMap<String, String> = BTreeMap::new();
    hyperparams.insert("stacking_folds".into(), settings.stacking_folds.to_string());
    hyperparams.insert("stacking_alpha".into(), settings.stacking_alpha.to_string());

    let (classifier, grid) = match &settings.model {
        ModelSpec::Nb { alpha, prior_mode } => {
            hyperparams.insert("model".into(), "nb".into());
            hyperparams.insert("alpha".into(), alpha.to_string());
            hyperparams.insert("prior_mode".into(), prior_mode.to_string());
            (
                TrainedClassifier::Nb(nb_train(&rows, &split.labels, *alpha, prior_mode.clone())?),
                None,
            )
        }
        ModelSpec::Svm { eta0, lambda, epochs } => {
            hyperparams.insert("model".into(), "svm".into());
            hyperparams.insert("eta0".into(), eta0.to_string());
            hyperparams.insert("lambda".into(), lambda.to_string());
            hyperparams.insert("epochs".into(), epochs.to_string());
            let hyper = SvmHyper {
                eta0: *eta0,
                lambda: *lambda,
                epochs: *epochs,
                seed: settings.seed,
            };
            (
                TrainedClassifier::Svm(svm_train(&rows, &split.labels, hyper)?),
                None,
            )
        }
        ModelSpec::Tuned(grid) => {
            let (result, classifier) =
                grid_search(grid, &rows, &split.labels, settings.cv_folds, settings.seed)?;
            hyperparams.insert("model".into(), "tuned".into());
            for (k, v) in &result.best_params {
                hyperparams.insert(k.clone(), v.clone());
            }
            (classifier, Some(result))
        }
    };

    let classes = match &classifier {
        TrainedClassifier::Nb(m) => m.classes.clone(),
        TrainedClassifier::Svm(m) => m.classes.clone(),
    };

    Ok(TrainOutput {
        model: ModelFile {
            format_version: MODEL_FORMAT_VERSION,
            classes,
            feature_mask: settings.mask,
            encoder,
            classifier,
            stacked,
            hyperparams,
            seed: settings.seed,
        },
        grid,
        warnings: provider.warnings(),
        n_rows: rows.len(),
        n_features,
    })
}

/// One prediction row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub id: String,
    pub label: Label,
    /// Posterior of the winning class (naive Bayes only).
    pub posterior: Option<f64>,
}

pub struct PredictOutput {
    pub predictions: Vec<Prediction>,
    pub warnings: Vec<String>,
}

/// Extracts one tweet's flattened row under a trained model.
fn model_row(
    tweet: &Tweet,
    normalized: &NormalizedTweet,
    url_sentiment: UrlSentiment,
    lex: &LexiconBundle,
    model: &ModelFile,
) -> Result<(FeatureVector, Vec<f64>)> {
    let f8 = match (&model.stacked, model.feature_mask.f8) {
        (Some(stacked), true) => Some(stacked.predict_proba(normalized)?),
        _ => None,
    };
    let fv = extract_features(tweet, normalized, lex, url_sentiment, &model.encoder, f8);
    let row = fv.flatten(&model.feature_mask, &model.encoder);
    Ok((fv, row))
}

/// Classifies every row of a corpus; labels are ignored, so unlabeled
/// corpora work. The model file is never written to.
pub fn predict(
    corpus: &Corpus,
    model: &ModelFile,
    lex: &LexiconBundle,
    tagger: &dyn Tagger,
    fetcher: &dyn Fetcher,
    cache_dir: &Path,
) -> Result<PredictOutput> {
    let provider = UrlSentimentProvider::new(fetcher, cache_dir);
    let mut predictions = Vec::with_capacity(corpus.len());
    if model.feature_mask.f5 {
        let all_urls: Vec<String> = corpus
            .iter()
            .flat_map(|t| crate::url_context::extract_urls(&t.text))
            .collect();
        provider.prefetch(&all_urls, FETCH_CONCURRENCY);
    }
    for tweet in corpus.iter() {
        let normalized = normalize_tweet(tweet, lex, tagger);
        let url_sentiment = if model.feature_mask.f5 {
            provider.fractions(&normalized.artifacts.urls, lex)
        } else {
            UrlSentiment::default()
        };
        let (_, row) = model_row(tweet, &normalized, url_sentiment, lex, model)?;
        let (label, posterior) = model.classifier.predict_with_posterior(&row)?;
        predictions.push(Prediction {
            id: tweet.id.clone(),
            label,
            posterior: posterior.map(|p| p.iter().cloned().fold(f64::NEG_INFINITY, f64::max)),
        });
    }
    Ok(PredictOutput {
        predictions,
        warnings: provider.warnings(),
    })
}

/// Trains one model per mask on the train split and evaluates on the
/// test split, reusing the normalized tweets and url context across
/// rows.
pub fn ablation(
    train_corpus: &Corpus,
    test_corpus: &Corpus,
    lex: &LexiconBundle,
    tagger: &dyn Tagger,
    fetcher: &dyn Fetcher,
    cache_dir: &Path,
    masks: &[FeatureMask],
    settings: &RunSettings,
) -> Result<Vec<(FeatureMask, EvalReport)>> {
    let need_f5 = masks.iter().any(|m| m.f5);
    let provider = UrlSentimentProvider::new(fetcher, cache_dir);
    let provider_ref = need_f5.then_some(&provider);
    let train_split = prepare_split(train_corpus, lex, tagger, provider_ref);
    let test_split = prepare_split(test_corpus, lex, tagger, provider_ref);
    if train_split.tweets.is_empty() || test_split.tweets.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    {
        let train_ids: std::collections::HashSet<&str> =
            train_split.tweets.iter().map(|t| t.id.as_str()).collect();
        if let Some(shared) = test_split
            .tweets
            .iter()
            .find(|t| train_ids.contains(t.id.as_str()))
        {
            return Err(Error::InvalidConfig(format!(
                "train and test splits share tweet id `{}`",
                shared.id
            )));
        }
    }
    let encoder = CategoricalEncoder::fit(&train_split.tweets);

    ablation_table(masks, |mask| {
        let (train_f8, stacked) = if mask.f8 {
            let (oof, stacked) = stacked_tfidf_feature(
                &train_split.normalized,
                &train_split.labels,
                settings.stacking_folds,
                settings.seed,
                settings.stacking_alpha,
            )?;
            (Some(oof), Some(stacked))
        } else {
            (None, None)
        };
        let train_rows = feature_rows(&train_split, lex, &encoder, train_f8.as_deref(), mask);

        let classifier = match &settings.model {
            ModelSpec::Nb { alpha, prior_mode } => TrainedClassifier::Nb(nb_train(
                &train_rows,
                &train_split.labels,
                *alpha,
                prior_mode.clone(),
            )?),
            ModelSpec::Svm { eta0, lambda, epochs } => {
                TrainedClassifier::Svm(svm_train(
                    &train_rows,
                    &train_split.labels,
                    SvmHyper {
                        eta0: *eta0,
                        lambda: *lambda,
                        epochs: *epochs,
                        seed: settings.seed,
                    },
                )?)
            }
            ModelSpec::Tuned(grid) => {
                grid_search(
                    grid,
                    &train_rows,
                    &train_split.labels,
                    settings.cv_folds,
                    settings.seed,
                )?
                .1
            }
        };

        let test_f8: Option<Vec<[f64; 3]>> = match (&stacked, mask.f8) {
            (Some(s), true) => Some(
                test_split
                    .normalized
                    .iter()
                    .map(|nt| s.predict_proba(nt))
                    .collect::<Result<Vec<_>>>()?,
            ),
            _ => None,
        };
        let test_rows = feature_rows(&test_split, lex, &encoder, test_f8.as_deref(), mask);
        let preds: Vec<Label> = test_rows
            .iter()
            .map(|row| classifier.predict(row))
            .collect::<Result<Vec<_>>>()?;
        Ok((preds, test_split.labels.clone()))
    })
}

/// Groups a corpus by predicted (or gold) class and harvests new terms
/// for the requested class against the other two.
pub fn harvest(
    corpus: &Corpus,
    model: &ModelFile,
    lex: &LexiconBundle,
    tagger: &dyn Tagger,
    fetcher: &dyn Fetcher,
    cache_dir: &Path,
    class: Label,
    cfg: &HarvestConfig,
    use_gold: bool,
) -> Result<Vec<(String, u32)>> {
    if class.class_index().is_none() {
        return Err(Error::InvalidConfig(format!(
            "harvest class must be a sentiment class, got `{class}`"
        )));
    }
    let filtered = if use_gold {
        filter_labels(corpus)
    } else {
        corpus.clone()
    };
    let labels: Vec<Label> = if use_gold {
        filtered.iter().map(|t| t.label).collect()
    } else {
        predict(&filtered, model, lex, tagger, fetcher, cache_dir)?
            .predictions
            .into_iter()
            .map(|p| p.label)
            .collect()
    };
    let normalized: Vec<NormalizedTweet> = filtered
        .iter()
        .map(|t| normalize_tweet(t, lex, tagger))
        .collect();

    let mut by_class: BTreeMap<Label, Vec<NormalizedTweet>> = BTreeMap::new();
    for (nt, label) in normalized.into_iter().zip(&labels) {
        by_class.entry(*label).or_default().push(nt);
    }
    let collections: Vec<_> = SENTIMENT_CLASSES
        .iter()
        .map(|c| rank_frequencies(*c, by_class.get(c).map_or(&[][..], Vec::as_slice)))
        .collect();
    let src_idx = class.class_index().expect("checked above");
    let others: Vec<&crate::enhance::TermCollection> = collections
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != src_idx)
        .map(|(_, c)| c)
        .collect();
    harvest_terms(&collections[src_idx], others[0], others[1], cfg)
}

/// Predicts each tweet and scores its sentiment strength.
pub fn strength(
    corpus: &Corpus,
    model: &ModelFile,
    lex: &LexiconBundle,
    tagger: &dyn Tagger,
    fetcher: &dyn Fetcher,
    cache_dir: &Path,
    r: f64,
) -> Result<Vec<(String, StrengthScore)>> {
    let provider = UrlSentimentProvider::new(fetcher, cache_dir);
    let mut out = Vec::with_capacity(corpus.len());
    for tweet in corpus.iter() {
        let normalized = normalize_tweet(tweet, lex, tagger);
        let url_sentiment = if model.feature_mask.f5 {
            provider.fractions(&normalized.artifacts.urls, lex)
        } else {
            UrlSentiment::default()
        };
        let (fv, row) = model_row(tweet, &normalized, url_sentiment, lex, model)?;
        let label = model.classifier.predict(&row)?;
        out.push((tweet.id.clone(), strength_score(&fv, label, r)?));
    }
    Ok(out)
}

/// Loads the bundle and tag lexicon from one directory.
pub fn load_lexicons(dir: &Path) -> Result<(LexiconBundle, crate::tagging::TagLexicon)> {
    let bundle = crate::lexicons::load_lexicon_bundle(dir)?;
    let tags = crate::tagging::TagLexicon::load(dir)?;
    Ok((bundle, tags))
}

/// Picks the fetcher for a run: offline runs never touch the network.
pub fn make_fetcher(offline: bool, timeout_ms: u64) -> Result<Box<dyn Fetcher>> {
    if offline {
        Ok(Box::new(crate::url_context::OfflineFetcher))
    } else {
        Ok(Box::new(crate::url_context::HttpFetcher::new(
            std::time::Duration::from_millis(timeout_ms),
        )?))
    }
}

/// Expands `~` is not supported; paths are used as given. Helper for
/// callers resolving the cache directory default.
pub fn default_cache_dir() -> PathBuf {
    PathBuf::from("url-cache")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicons::test_bundle;
    use crate::url_context::OfflineFetcher;
    use Label::{Negative as N, Neutral as U, Positive as P};

    fn toy_corpus() -> Corpus {
        let rows: Vec<(&str, &str, Label, &str)> = vec![
            ("1", "ua", N, "kill the bill #killthebill"),
            ("2", "ua", N, "this bill is terrible"),
            ("3", "ub", N, "bad bad bill :("),
            ("4", "uc", P, "GOOD bill :) pass it"),
            ("5", "uc", P, "excellent vote pass the bill"),
            ("6", "ud", P, "good day to vote"),
            ("7", "ue", U, "senate votes on the bill today"),
            ("8", "uf", U, "bill vote day"),
            ("9", "ug", U, "the senate bill"),
            ("10", "uh", Label::Unsure, "hmm bill?"),
        ];
        Corpus::new(
            rows.into_iter()
                .map(|(id, user, label, text)| Tweet {
                    id: id.into(),
                    user_id: user.into(),
                    target: "hcr".into(),
                    label,
                    text: text.into(),
                })
                .collect(),
            "toy",
        )
        .unwrap()
    }

    fn settings_no_stack() -> RunSettings {
        RunSettings {
            mask: FeatureMask::parse("f1,f2,f3,f4,f6,f7,f9").unwrap(),
            ..Default::default()
        }
    }

    #[test]
    fn train_then_predict_round_trip() {
        let (lex, tags) = test_bundle();
        let dir = tempfile::tempdir().unwrap();
        let out = train(
            &toy_corpus(),
            &lex,
            &tags,
            &OfflineFetcher,
            dir.path(),
            &settings_no_stack(),
        )
        .unwrap();
        assert_eq!(out.n_rows, 9, "unsure tweet filtered out");
        assert_eq!(out.model.classes, vec![N, U, P]);

        let path = dir.path().join("model.json");
        save_model(&out.model, &path).unwrap();
        let loaded = load_model(&path).unwrap();
        assert_eq!(loaded, out.model);

        let preds = predict(
            &toy_corpus(),
            &loaded,
            &lex,
            &tags,
            &OfflineFetcher,
            dir.path(),
        )
        .unwrap();
        assert_eq!(preds.predictions.len(), 10, "predict covers every row");
        for p in &preds.predictions {
            assert!(p.posterior.unwrap() > 0.0);
        }
    }

    #[test]
    fn load_model_rejects_unknown_version() {
        let (lex, tags) = test_bundle();
        let dir = tempfile::tempdir().unwrap();
        let out = train(
            &toy_corpus(),
            &lex,
            &tags,
            &OfflineFetcher,
            dir.path(),
            &settings_no_stack(),
        )
        .unwrap();
        let mut model = out.model;
        model.format_version = 99;
        let path = dir.path().join("model.json");
        save_model(&model, &path).unwrap();
        assert!(matches!(
            load_model(&path),
            Err(Error::UnsupportedModelVersion(99))
        ));
    }

    #[test]
    fn load_model_missing_file() {
        assert!(matches!(
            load_model(Path::new("/nonexistent/model.json")),
            Err(Error::MissingFile(_))
        ));
    }

    #[test]
    fn training_is_deterministic() {
        let (lex, tags) = test_bundle();
        let dir = tempfile::tempdir().unwrap();
        let mut settings = settings_no_stack();
        settings.mask.f8 = true;
        settings.stacking_folds = 3;
        let a = train(&toy_corpus(), &lex, &tags, &OfflineFetcher, dir.path(), &settings).unwrap();
        let b = train(&toy_corpus(), &lex, &tags, &OfflineFetcher, dir.path(), &settings).unwrap();
        assert_eq!(a.model, b.model);
        assert_eq!(
            serde_json::to_string(&a.model).unwrap(),
            serde_json::to_string(&b.model).unwrap()
        );
    }

    #[test]
    fn offline_empty_cache_warns_once_per_distinct_url() {
        let (lex, tags) = test_bundle();
        let dir = tempfile::tempdir().unwrap();
        let mut corpus = toy_corpus();
        corpus.tweets[0].text = "kill the bill http://a.example/x".into();
        corpus.tweets[1].text = "terrible http://a.example/x http://b.example/y".into();
        let mut settings = settings_no_stack();
        settings.mask.f5 = true;
        let out = train(&corpus, &lex, &tags, &OfflineFetcher, dir.path(), &settings).unwrap();
        assert_eq!(out.warnings.len(), 2, "one warning per distinct url");
    }

    #[test]
    fn harvest_gold_mode_finds_class_terms() {
        let (lex, tags) = test_bundle();
        let dir = tempfile::tempdir().unwrap();
        let out = train(
            &toy_corpus(),
            &lex,
            &tags,
            &OfflineFetcher,
            dir.path(),
            &settings_no_stack(),
        )
        .unwrap();
        let cfg = HarvestConfig {
            threshold1: 0.5,
            threshold2: 0.5,
        };
        let terms = harvest(
            &toy_corpus(),
            &out.model,
            &lex,
            &tags,
            &OfflineFetcher,
            dir.path(),
            N,
            &cfg,
            true,
        )
        .unwrap();
        assert!(!terms.is_empty());
        let term_names: Vec<&str> = terms.iter().map(|(t, _)| t.as_str()).collect();
        assert!(
            term_names.contains(&"terrible") || term_names.contains(&"bad")
                || term_names.contains(&"kill"),
            "negative vocabulary should surface, got {term_names:?}"
        );
    }

    #[test]
    fn strength_signs_follow_predictions() {
        let (lex, tags) = test_bundle();
        let dir = tempfile::tempdir().unwrap();
        let out = train(
            &toy_corpus(),
            &lex,
            &tags,
            &OfflineFetcher,
            dir.path(),
            &settings_no_stack(),
        )
        .unwrap();
        let scores = strength(
            &toy_corpus(),
            &out.model,
            &lex,
            &tags,
            &OfflineFetcher,
            dir.path(),
            10.0,
        )
        .unwrap();
        assert_eq!(scores.len(), 10);
        for (_, s) in &scores {
            assert!(s.value.abs() <= 5);
            match s.polarity {
                P => assert!(s.value >= 0),
                N => assert!(s.value <= 0),
                _ => assert_eq!(s.value, 0),
            }
        }
    }

    #[test]
    fn ablation_rejects_overlapping_splits() {
        let (lex, tags) = test_bundle();
        let dir = tempfile::tempdir().unwrap();
        let corpus = toy_corpus();
        let masks = [FeatureMask::parse("f1,f2").unwrap()];
        let err = ablation(
            &corpus,
            &corpus,
            &lex,
            &tags,
            &OfflineFetcher,
            dir.path(),
            &masks,
            &RunSettings::default(),
        );
        assert!(matches!(err, Err(Error::InvalidConfig(_))));
    }
}
