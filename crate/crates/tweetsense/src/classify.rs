//! Multinomial naive Bayes, a one-vs-rest linear SVM trained by
//! stochastic gradient descent, stratified folding, and grid search.
//!
//! The naive Bayes decision is
//! `argmax_k log p(C_k) + Σ_i x_i · log p(x_i | C_k)` with additive
//! smoothing `alpha`; the posterior is the softmax of the per-class log
//! scores. Ties break by the fixed class order negative < neutral <
//! positive, so results reproduce bit-for-bit.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{Label, SENTIMENT_CLASSES};
use crate::error::{Error, Result};
use crate::eval::evaluate;

/// How class priors are set; the knob for countering class imbalance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PriorMode {
    /// Class frequencies in the training data. All three sentiment
    /// classes must be present, since a zero prior is forbidden.
    Empirical,
    /// 1/K over the classes present in the training data.
    Uniform,
    /// Explicit weights; classes named here but absent from training get
    /// smoothing-only likelihoods.
    Custom(Vec<(Label, f64)>),
}

impl fmt::Display for PriorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PriorMode::Empirical => f.write_str("empirical"),
            PriorMode::Uniform => f.write_str("uniform"),
            PriorMode::Custom(weights) => {
                let parts: Vec<String> =
                    weights.iter().map(|(l, w)| format!("{l}={w}")).collect();
                write!(f, "custom({})", parts.join(","))
            }
        }
    }
}

/// Trained multinomial naive Bayes parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NBModel {
    pub classes: Vec<Label>,
    pub log_prior: Vec<f64>,
    /// `log_likelihood[class][feature]`; exponentials sum to 1 per class.
    pub log_likelihood: Vec<Vec<f64>>,
    pub alpha: f64,
    pub prior_mode: PriorMode,
}

fn check_rows(x: &[Vec<f64>], non_negative: bool) -> Result<usize> {
    let Some(first) = x.first() else {
        return Err(Error::EmptyTrainingSet);
    };
    let dim = first.len();
    for row in x {
        if row.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: row.len(),
            });
        }
        for (i, v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteFeature(i));
            }
            if non_negative && *v < 0.0 {
                return Err(Error::NegativeFeature { index: i, value: *v });
            }
        }
    }
    Ok(dim)
}

fn check_sentiment_labels(y: &[Label]) -> Result<()> {
    for label in y {
        if !label.is_sentiment() {
            return Err(Error::InvalidConfig(format!(
                "training labels must be sentiment classes, got `{label}`"
            )));
        }
    }
    Ok(())
}

/// Trains multinomial naive Bayes with additive smoothing.
pub fn nb_train(
    x: &[Vec<f64>],
    y: &[Label],
    alpha: f64,
    prior_mode: PriorMode,
) -> Result<NBModel> {
    let dim = check_rows(x, true)?;
    check_sentiment_labels(y)?;
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            preds: x.len(),
            gold: y.len(),
        });
    }
    if !(alpha > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "smoothing alpha must be positive, got {alpha}"
        )));
    }

    let mut counts: BTreeMap<Label, usize> = BTreeMap::new();
    for label in y {
        *counts.entry(*label).or_insert(0) += 1;
    }

    let classes: Vec<Label> = match &prior_mode {
        PriorMode::Empirical => {
            for class in SENTIMENT_CLASSES {
                if !counts.contains_key(&class) {
                    return Err(Error::MissingClass(class));
                }
            }
            SENTIMENT_CLASSES.to_vec()
        }
        PriorMode::Uniform => SENTIMENT_CLASSES
            .iter()
            .copied()
            .filter(|c| counts.contains_key(c))
            .collect(),
        PriorMode::Custom(weights) => {
            let named: Vec<Label> = weights
                .iter()
                .filter(|(_, w)| *w > 0.0)
                .map(|(l, _)| *l)
                .collect();
            let classes: Vec<Label> = SENTIMENT_CLASSES
                .iter()
                .copied()
                .filter(|c| counts.contains_key(c) || named.contains(c))
                .collect();
            for class in &classes {
                let weight = weights
                    .iter()
                    .find(|(l, _)| l == class)
                    .map(|(_, w)| *w)
                    .unwrap_or(0.0);
                if weight <= 0.0 {
                    return Err(Error::MissingClass(*class));
                }
            }
            classes
        }
    };

    let total = y.len() as f64;
    let log_prior: Vec<f64> = match &prior_mode {
        PriorMode::Empirical => classes
            .iter()
            .map(|c| (counts[c] as f64 / total).ln())
            .collect(),
        PriorMode::Uniform => classes
            .iter()
            .map(|_| (1.0 / classes.len() as f64).ln())
            .collect(),
        PriorMode::Custom(weights) => {
            let sum: f64 = classes
                .iter()
                .map(|c| {
                    weights
                        .iter()
                        .find(|(l, _)| l == c)
                        .map(|(_, w)| *w)
                        .unwrap_or(0.0)
                })
                .sum();
            classes
                .iter()
                .map(|c| {
                    let w = weights
                        .iter()
                        .find(|(l, _)| l == c)
                        .map(|(_, w)| *w)
                        .unwrap_or(0.0);
                    (w / sum).ln()
                })
                .collect()
        }
    };

    let mut log_likelihood = Vec::with_capacity(classes.len());
    for class in &classes {
        let mut feature_totals = vec![0.0f64; dim];
        for (row, label) in x.iter().zip(y) {
            if label == class {
                for (i, v) in row.iter().enumerate() {
                    feature_totals[i] += v;
                }
            }
        }
        let mass: f64 = feature_totals.iter().sum();
        let denominator = mass + alpha * dim as f64;
        log_likelihood.push(
            feature_totals
                .iter()
                .map(|t| ((t + alpha) / denominator).ln())
                .collect(),
        );
    }

    Ok(NBModel {
        classes,
        log_prior,
        log_likelihood,
        alpha,
        prior_mode,
    })
}

impl NBModel {
    pub fn n_features(&self) -> usize {
        self.log_likelihood.first().map_or(0, Vec::len)
    }

    /// Per-class log scores `log p(C_k) + Σ_i x_i log p(x_i|C_k)`.
    fn log_scores(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n_features() {
            return Err(Error::DimensionMismatch {
                expected: self.n_features(),
                got: x.len(),
            });
        }
        Ok(self
            .classes
            .iter()
            .enumerate()
            .map(|(k, _)| {
                self.log_prior[k]
                    + x.iter()
                        .zip(&self.log_likelihood[k])
                        .map(|(xi, ll)| xi * ll)
                        .sum::<f64>()
            })
            .collect())
    }
}

fn argmax_first(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, s) in scores.iter().enumerate().skip(1) {
        if *s > scores[best] {
            best = i;
        }
    }
    best
}

fn softmax(scores: &[f64]) -> Vec<f64> {
    let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = scores.iter().map(|s| (s - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.iter().map(|e| e / sum).collect()
}

/// Predicts the label and the softmax posterior over the model's classes.
pub fn nb_predict(model: &NBModel, x: &[f64]) -> Result<(Label, Vec<f64>)> {
    let scores = model.log_scores(x)?;
    let best = argmax_first(&scores);
    Ok((model.classes[best], softmax(&scores)))
}

/// SGD hyperparameters for the linear SVM.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvmHyper {
    pub eta0: f64,
    pub lambda: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for SvmHyper {
    fn default() -> Self {
        SvmHyper {
            eta0: 0.1,
            lambda: 1e-4,
            epochs: 50,
            seed: 42,
        }
    }
}

/// One-vs-rest linear SVM parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SVMModel {
    pub classes: Vec<Label>,
    /// One weight vector per class.
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<f64>,
    pub hyper: SvmHyper,
}

/// Trains one-vs-rest hinge-loss SVMs by per-sample gradient steps with
/// the decreasing rate `η_t = η0 / (1 + η0·λ·t)` and a seeded shuffle per
/// epoch.
pub fn svm_train(x: &[Vec<f64>], y: &[Label], hyper: SvmHyper) -> Result<SVMModel> {
    let dim = check_rows(x, false)?;
    check_sentiment_labels(y)?;
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            preds: x.len(),
            gold: y.len(),
        });
    }

    let classes: Vec<Label> = SENTIMENT_CLASSES
        .iter()
        .copied()
        .filter(|c| y.contains(c))
        .collect();
    let mut weights = vec![vec![0.0f64; dim]; classes.len()];
    let mut biases = vec![0.0f64; classes.len()];

    let mut rng = ChaCha8Rng::seed_from_u64(hyper.seed);
    let mut order: Vec<usize> = (0..x.len()).collect();
    let mut t = 0u64;
    for _ in 0..hyper.epochs {
        order.shuffle(&mut rng);
        for &sample in &order {
            let eta = hyper.eta0 / (1.0 + hyper.eta0 * hyper.lambda * t as f64);
            let row = &x[sample];
            for (k, class) in classes.iter().enumerate() {
                let target = if y[sample] == *class { 1.0 } else { -1.0 };
                let score: f64 = weights[k]
                    .iter()
                    .zip(row)
                    .map(|(w, xi)| w * xi)
                    .sum::<f64>()
                    + biases[k];
                let shrink = (1.0 - eta * hyper.lambda).max(0.0);
                for w in weights[k].iter_mut() {
                    *w *= shrink;
                }
                if target * score < 1.0 {
                    for (w, xi) in weights[k].iter_mut().zip(row) {
                        *w += eta * target * xi;
                    }
                    biases[k] += eta * target;
                }
            }
            t += 1;
        }
    }

    Ok(SVMModel {
        classes,
        weights,
        biases,
        hyper,
    })
}

/// Argmax over per-class scores `w_k·x + b_k`, ties broken by class
/// order.
pub fn svm_predict(model: &SVMModel, x: &[f64]) -> Result<Label> {
    let dim = model.weights.first().map_or(0, Vec::len);
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: x.len(),
        });
    }
    let scores: Vec<f64> = model
        .classes
        .iter()
        .enumerate()
        .map(|(k, _)| {
            model.weights[k]
                .iter()
                .zip(x)
                .map(|(w, xi)| w * xi)
                .sum::<f64>()
                + model.biases[k]
        })
        .collect();
    Ok(model.classes[argmax_first(&scores)])
}

/// Stratified k-fold split: indices grouped by label, shuffled with the
/// seed, dealt round-robin. Deterministic; folds come back with indices
/// sorted.
pub fn stratified_k_fold(y: &[Label], k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::InvalidConfig(format!("need k ≥ 2 folds, got {k}")));
    }
    if y.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let mut groups: BTreeMap<Label, Vec<usize>> = BTreeMap::new();
    for (i, label) in y.iter().enumerate() {
        groups.entry(*label).or_default().push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds: Vec<Vec<usize>> = vec![Vec::new(); k];
    for indices in groups.values() {
        let mut shuffled = indices.clone();
        shuffled.shuffle(&mut rng);
        for (i, idx) in shuffled.into_iter().enumerate() {
            folds[i % k].push(idx);
        }
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}

/// Grid-search output: every scored point plus the winner.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSearchResult {
    pub best_params: BTreeMap<String, String>,
    /// Mean cross-validated macro-F1 of the best point.
    pub best_score: f64,
    pub table: Vec<(BTreeMap<String, String>, f64)>,
    pub seed: u64,
}

/// Which classifier a grid search tunes, and over what values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ParamGrid {
    Nb {
        alphas: Vec<f64>,
        prior_modes: Vec<PriorMode>,
    },
    Svm {
        lambdas: Vec<f64>,
        eta0s: Vec<f64>,
        epochs: Vec<usize>,
    },
}

impl ParamGrid {
    /// The documented default search space for naive Bayes.
    pub fn default_nb() -> ParamGrid {
        ParamGrid::Nb {
            alphas: vec![0.1, 0.5, 1.0],
            prior_modes: vec![PriorMode::Empirical, PriorMode::Uniform],
        }
    }

    /// The documented default search space for the SVM.
    pub fn default_svm() -> ParamGrid {
        ParamGrid::Svm {
            lambdas: vec![1e-4, 1e-3],
            eta0s: vec![0.01, 0.1],
            epochs: vec![10, 50],
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            ParamGrid::Nb { alphas, prior_modes } => {
                alphas.is_empty() || prior_modes.is_empty()
            }
            ParamGrid::Svm { lambdas, eta0s, epochs } => {
                lambdas.is_empty() || eta0s.is_empty() || epochs.is_empty()
            }
        }
    }
}

/// A trained model of either kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum TrainedClassifier {
    Nb(NBModel),
    Svm(SVMModel),
}

impl TrainedClassifier {
    pub fn predict(&self, x: &[f64]) -> Result<Label> {
        match self {
            TrainedClassifier::Nb(m) => Ok(nb_predict(m, x)?.0),
            TrainedClassifier::Svm(m) => svm_predict(m, x),
        }
    }

    /// Posterior over [`SENTIMENT_CLASSES`] where available (naive Bayes
    /// only).
    pub fn predict_with_posterior(&self, x: &[f64]) -> Result<(Label, Option<Vec<f64>>)> {
        match self {
            TrainedClassifier::Nb(m) => {
                let (label, posterior) = nb_predict(m, x)?;
                Ok((label, Some(posterior)))
            }
            TrainedClassifier::Svm(m) => Ok((svm_predict(m, x)?, None)),
        }
    }
}

fn check_folds(y: &[Label], folds: &[Vec<usize>]) -> Result<()> {
    let present: Vec<Label> = SENTIMENT_CLASSES
        .iter()
        .copied()
        .filter(|c| y.contains(c))
        .collect();
    for fold in folds {
        for class in &present {
            if !fold.iter().any(|&i| y[i] == *class) {
                return Err(Error::FoldTooSmall(*class));
            }
        }
    }
    Ok(())
}

fn cv_score<FitPredict>(
    x: &[Vec<f64>],
    y: &[Label],
    folds: &[Vec<usize>],
    mut fit_predict: FitPredict,
) -> Result<f64>
where
    FitPredict: FnMut(&[Vec<f64>], &[Label], &[Vec<f64>]) -> Result<Vec<Label>>,
{
    let mut scores = Vec::with_capacity(folds.len());
    for fold in folds {
        let held: std::collections::HashSet<usize> = fold.iter().copied().collect();
        let mut train_x = Vec::new();
        let mut train_y = Vec::new();
        for i in 0..x.len() {
            if !held.contains(&i) {
                train_x.push(x[i].clone());
                train_y.push(y[i]);
            }
        }
        let test_x: Vec<Vec<f64>> = fold.iter().map(|&i| x[i].clone()).collect();
        let test_y: Vec<Label> = fold.iter().map(|&i| y[i]).collect();
        let preds = fit_predict(&train_x, &train_y, &test_x)?;
        scores.push(evaluate(&preds, &test_y)?.macro_avg.f1);
    }
    Ok(scores.iter().sum::<f64>() / scores.len() as f64)
}

/// Exhaustive search over the grid with stratified k-fold CV; the final
/// model is retrained on the full data with the best parameters. Ties go
/// to the earlier grid point.
pub fn grid_search(
    grid: &ParamGrid,
    x: &[Vec<f64>],
    y: &[Label],
    k: usize,
    seed: u64,
) -> Result<(GridSearchResult, TrainedClassifier)> {
    if grid.is_empty() {
        return Err(Error::InvalidConfig("parameter grid is empty".into()));
    }
    let folds = stratified_k_fold(y, k, seed)?;
    check_folds(y, &folds)?;

    let mut table: Vec<(BTreeMap<String, String>, f64)> = Vec::new();
    match grid {
        ParamGrid::Nb { alphas, prior_modes } => {
            for alpha in alphas {
                for mode in prior_modes {
                    let score = cv_score(x, y, &folds, |tx, ty, sx| {
                        let model = nb_train(tx, ty, *alpha, mode.clone())?;
                        sx.iter().map(|row| Ok(nb_predict(&model, row)?.0)).collect()
                    })?;
                    let mut params = BTreeMap::new();
                    params.insert("alpha".to_string(), alpha.to_string());
                    params.insert("prior_mode".to_string(), mode.to_string());
                    table.push((params, score));
                }
            }
        }
        ParamGrid::Svm { lambdas, eta0s, epochs } => {
            for lambda in lambdas {
                for eta0 in eta0s {
                    for n_epochs in epochs {
                        let hyper = SvmHyper {
                            eta0: *eta0,
                            lambda: *lambda,
                            epochs: *n_epochs,
                            seed,
                        };
                        let score = cv_score(x, y, &folds, |tx, ty, sx| {
                            let model = svm_train(tx, ty, hyper.clone())?;
                            sx.iter().map(|row| svm_predict(&model, row)).collect()
                        })?;
                        let mut params = BTreeMap::new();
                        params.insert("lambda".to_string(), lambda.to_string());
                        params.insert("eta0".to_string(), eta0.to_string());
                        params.insert("epochs".to_string(), n_epochs.to_string());
                        table.push((params, score));
                    }
                }
            }
        }
    }

    let mut best = 0;
    for (i, row) in table.iter().enumerate().skip(1) {
        if row.1 > table[best].1 {
            best = i;
        }
    }
    let best_params = table[best].0.clone();
    let best_score = table[best].1;

    let final_model = match grid {
        ParamGrid::Nb { prior_modes, .. } => {
            let alpha: f64 = best_params["alpha"].parse().expect("alpha formatted by us");
            let mode = prior_modes
                .iter()
                .find(|m| m.to_string() == best_params["prior_mode"])
                .expect("mode from searched grid")
                .clone();
            TrainedClassifier::Nb(nb_train(x, y, alpha, mode)?)
        }
        ParamGrid::Svm { .. } => {
            let hyper = SvmHyper {
                eta0: best_params["eta0"].parse().expect("eta0 formatted by us"),
                lambda: best_params["lambda"].parse().expect("lambda formatted by us"),
                epochs: best_params["epochs"].parse().expect("epochs formatted by us"),
                seed,
            };
            TrainedClassifier::Svm(svm_train(x, y, hyper)?)
        }
    };

    Ok((
        GridSearchResult {
            best_params,
            best_score,
            table,
            seed,
        },
        final_model,
    ))
}
