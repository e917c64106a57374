//! Feature families f1–f9 assembled into trainable vectors, the tf-idf
//! model behind the stacked prediction feature, and categorical encoding
//! of users and targets.
//!
//! Flattening layout (enabled families only, in this order): f1 POS
//! counts (4) · f2 polarity counts (4) · f3 flags (2) · f4 emoticon
//! counts (2) · f5 url fractions ×10 (3) · f6 hashtag count (1) · f7
//! capitalization count (1) · f8 stacked probabilities ×10 (3) · f9
//! one-hot user + one-hot target. Fractions are scaled ×10 so they carry
//! comparable mass to the count features under multinomial naive Bayes;
//! the categorical families are one-hot so every entry stays a
//! non-negative "count".

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classify::{nb_predict, nb_train, stratified_k_fold, NBModel, PriorMode};
use crate::corpus::{Label, Tweet, SENTIMENT_CLASSES};
use crate::error::{Error, Result};
use crate::normalize::{polarity_counts, NormalizedTweet, PolarityCounts};
use crate::lexicons::LexiconBundle;
use crate::url_context::UrlSentiment;

/// Scale applied to the f5 and f8 fractional families when flattening.
pub const FRACTION_SCALE: f64 = 10.0;

/// Which feature families are enabled. The target categorical toggles
/// together with f9.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FeatureMask {
    pub f1: bool,
    pub f2: bool,
    pub f3: bool,
    pub f4: bool,
    pub f5: bool,
    pub f6: bool,
    pub f7: bool,
    pub f8: bool,
    pub f9: bool,
}

impl FeatureMask {
    pub fn all() -> FeatureMask {
        FeatureMask {
            f1: true,
            f2: true,
            f3: true,
            f4: true,
            f5: true,
            f6: true,
            f7: true,
            f8: true,
            f9: true,
        }
    }

    /// Parses a comma list like `f1,f2,f4`.
    pub fn parse(s: &str) -> Result<FeatureMask> {
        let mut mask = FeatureMask::default();
        for part in s.split(',') {
            let part = part.trim();
            match part {
                "f1" => mask.f1 = true,
                "f2" => mask.f2 = true,
                "f3" => mask.f3 = true,
                "f4" => mask.f4 = true,
                "f5" => mask.f5 = true,
                "f6" => mask.f6 = true,
                "f7" => mask.f7 = true,
                "f8" => mask.f8 = true,
                "f9" => mask.f9 = true,
                "" => {}
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "unknown feature family `{other}`"
                    )))
                }
            }
        }
        Ok(mask)
    }

    fn flags(&self) -> [(bool, &'static str); 9] {
        [
            (self.f1, "f1"),
            (self.f2, "f2"),
            (self.f3, "f3"),
            (self.f4, "f4"),
            (self.f5, "f5"),
            (self.f6, "f6"),
            (self.f7, "f7"),
            (self.f8, "f8"),
            (self.f9, "f9"),
        ]
    }
}

impl fmt::Display for FeatureMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self
            .flags()
            .iter()
            .filter(|(on, _)| *on)
            .map(|(_, name)| *name)
            .collect();
        f.write_str(&names.join(","))
    }
}

/// Dense index maps for the user and target categoricals; index 0 is
/// reserved for values unseen at training time.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoricalEncoder {
    user_index: BTreeMap<String, u32>,
    target_index: BTreeMap<String, u32>,
}

impl CategoricalEncoder {
    /// Indexes are assigned in sorted order so they are stable across
    /// runs and across save/load.
    pub fn fit(tweets: &[Tweet]) -> CategoricalEncoder {
        let users: BTreeSet<&str> = tweets.iter().map(|t| t.user_id.as_str()).collect();
        let targets: BTreeSet<&str> = tweets.iter().map(|t| t.target.as_str()).collect();
        CategoricalEncoder {
            user_index: users
                .into_iter()
                .enumerate()
                .map(|(i, u)| (u.to_string(), i as u32 + 1))
                .collect(),
            target_index: targets
                .into_iter()
                .enumerate()
                .map(|(i, t)| (t.to_string(), i as u32 + 1))
                .collect(),
        }
    }

    pub fn encode_user(&self, user_id: &str) -> u32 {
        self.user_index.get(user_id).copied().unwrap_or(0)
    }

    pub fn encode_target(&self, target: &str) -> u32 {
        self.target_index.get(target).copied().unwrap_or(0)
    }

    /// One-hot width for users (known users + the unknown slot).
    pub fn user_slots(&self) -> usize {
        self.user_index.len() + 1
    }

    pub fn target_slots(&self) -> usize {
        self.target_index.len() + 1
    }
}

/// The named feature groups for one tweet.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    /// noun, adj, adv, verb counts.
    pub f1: [u32; 4],
    /// Polarity counts after negation flips.
    pub f2: PolarityCounts,
    /// (is_retweet, has_mention).
    pub f3: (bool, bool),
    /// (positive, negative) emoticon counts.
    pub f4: (u32, u32),
    pub f5: UrlSentiment,
    /// Hashtag count.
    pub f6: u32,
    /// Capitalized-word count.
    pub f7: u32,
    /// Stacked class probabilities in [`SENTIMENT_CLASSES`] order.
    pub f8: Option<[f64; 3]>,
    /// Encoded user id (0 = unknown).
    pub f9_user: u32,
    /// Encoded target (0 = unknown), toggled together with f9.
    pub target: u32,
}

/// Computes every family for one normalized tweet. f5 and f8 are passed
/// in because they depend on fetched context and the stacked model.
pub fn extract_features(
    tweet: &Tweet,
    normalized: &NormalizedTweet,
    lex: &LexiconBundle,
    url_sentiment: UrlSentiment,
    encoder: &CategoricalEncoder,
    f8: Option<[f64; 3]>,
) -> FeatureVector {
    use crate::tagging::Pos;
    let mut f1 = [0u32; 4];
    for token in &normalized.tokens {
        match token.pos {
            Pos::Noun => f1[0] += 1,
            Pos::Adj => f1[1] += 1,
            Pos::Adv => f1[2] += 1,
            Pos::Verb => f1[3] += 1,
            Pos::Other => {}
        }
    }
    let artifacts = &normalized.artifacts;
    FeatureVector {
        f1,
        f2: polarity_counts(&normalized.tokens, lex),
        f3: (artifacts.is_retweet, !artifacts.mentions.is_empty()),
        f4: (artifacts.pos_emoticons, artifacts.neg_emoticons),
        f5: url_sentiment,
        f6: artifacts.hashtags.len() as u32,
        f7: artifacts.capitalized_words,
        f8,
        f9_user: encoder.encode_user(&tweet.user_id),
        target: encoder.encode_target(&tweet.target),
    }
}

/// Length of the flattened vector for a mask; depends only on the mask
/// and encoder sizes.
pub fn flattened_len(mask: &FeatureMask, encoder: &CategoricalEncoder) -> usize {
    let mut n = 0;
    if mask.f1 {
        n += 4;
    }
    if mask.f2 {
        n += 4;
    }
    if mask.f3 {
        n += 2;
    }
    if mask.f4 {
        n += 2;
    }
    if mask.f5 {
        n += 3;
    }
    if mask.f6 {
        n += 1;
    }
    if mask.f7 {
        n += 1;
    }
    if mask.f8 {
        n += 3;
    }
    if mask.f9 {
        n += encoder.user_slots() + encoder.target_slots();
    }
    n
}

impl FeatureVector {
    /// Flattens the enabled families into a non-negative numeric vector.
    /// Disabled families contribute no entries at all.
    pub fn flatten(&self, mask: &FeatureMask, encoder: &CategoricalEncoder) -> Vec<f64> {
        let mut out = Vec::with_capacity(flattened_len(mask, encoder));
        if mask.f1 {
            out.extend(self.f1.iter().map(|c| *c as f64));
        }
        if mask.f2 {
            out.push(self.f2.strong_pos as f64);
            out.push(self.f2.strong_neg as f64);
            out.push(self.f2.weak_pos as f64);
            out.push(self.f2.weak_neg as f64);
        }
        if mask.f3 {
            out.push(f64::from(self.f3.0));
            out.push(f64::from(self.f3.1));
        }
        if mask.f4 {
            out.push(self.f4.0 as f64);
            out.push(self.f4.1 as f64);
        }
        if mask.f5 {
            out.push(self.f5.frac_pos * FRACTION_SCALE);
            out.push(self.f5.frac_neg * FRACTION_SCALE);
            out.push(self.f5.frac_neu * FRACTION_SCALE);
        }
        if mask.f6 {
            out.push(self.f6 as f64);
        }
        if mask.f7 {
            out.push(self.f7 as f64);
        }
        if mask.f8 {
            let probs = self.f8.unwrap_or([0.0; 3]);
            out.extend(probs.iter().map(|p| p * FRACTION_SCALE));
        }
        if mask.f9 {
            let mut user = vec![0.0; encoder.user_slots()];
            user[self.f9_user as usize] = 1.0;
            out.extend(user);
            let mut target = vec![0.0; encoder.target_slots()];
            target[self.target as usize] = 1.0;
            out.extend(target);
        }
        out
    }
}

/// Vocabulary and idf weights fitted on a training split.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TfidfModel {
    vocabulary: BTreeMap<String, u32>,
    idf: Vec<f64>,
    doc_count: usize,
}

/// Builds the vocabulary (lexicographic column order) and smooth idf
/// weights `ln((1+N)/(1+df)) + 1`.
pub fn tfidf_fit(corpus: &[NormalizedTweet]) -> Result<TfidfModel> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for tweet in corpus {
        let distinct: HashSet<&str> =
            tweet.tokens.iter().map(|t| t.surface.as_str()).collect();
        for term in distinct {
            *df.entry(term).or_insert(0) += 1;
        }
    }
    let doc_count = corpus.len();
    let mut vocabulary = BTreeMap::new();
    let mut idf = Vec::with_capacity(df.len());
    for (column, (term, term_df)) in df.iter().enumerate() {
        vocabulary.insert(term.to_string(), column as u32);
        idf.push(((1 + doc_count) as f64 / (1 + term_df) as f64).ln() + 1.0);
    }
    Ok(TfidfModel {
        vocabulary,
        idf,
        doc_count,
    })
}

impl TfidfModel {
    pub fn vocab_len(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn doc_count(&self) -> usize {
        self.doc_count
    }

    pub fn idf_of(&self, term: &str) -> Option<f64> {
        self.vocabulary
            .get(term)
            .map(|&col| self.idf[col as usize])
    }
}

/// L2-normalized sparse tf-idf vector: sorted (column, weight) pairs.
pub fn tfidf_transform(model: &TfidfModel, tweet: &NormalizedTweet) -> Vec<(u32, f64)> {
    let mut tf: BTreeMap<u32, f64> = BTreeMap::new();
    for token in &tweet.tokens {
        if let Some(&col) = model.vocabulary.get(&token.surface) {
            *tf.entry(col).or_insert(0.0) += 1.0;
        }
    }
    let mut entries: Vec<(u32, f64)> = tf
        .into_iter()
        .map(|(col, count)| (col, count * model.idf[col as usize]))
        .collect();
    let norm: f64 = entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
    if norm > 0.0 {
        for (_, w) in &mut entries {
            *w /= norm;
        }
    }
    entries
}

/// Densifies a sparse tf-idf vector to the model's vocabulary width.
pub fn tfidf_to_dense(model: &TfidfModel, sparse: &[(u32, f64)]) -> Vec<f64> {
    let mut dense = vec![0.0; model.vocab_len()];
    for (col, w) in sparse {
        dense[*col as usize] = *w;
    }
    dense
}

/// The stacked tf-idf classifier: a naive Bayes model over tf-idf
/// vectors, trained on the full train split. Produces the f8 probability
/// triple at inference time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StackedTfidf {
    pub tfidf: TfidfModel,
    pub nb: NBModel,
}

impl StackedTfidf {
    /// Class probabilities in [`SENTIMENT_CLASSES`] order.
    pub fn predict_proba(&self, tweet: &NormalizedTweet) -> Result<[f64; 3]> {
        let sparse = tfidf_transform(&self.tfidf, tweet);
        let dense = tfidf_to_dense(&self.tfidf, &sparse);
        let (_, posterior) = nb_predict(&self.nb, &dense)?;
        let mut probs = [0.0; 3];
        for (k, class) in self.nb.classes.iter().enumerate() {
            if let Some(i) = class.class_index() {
                probs[i] = posterior[k];
            }
        }
        Ok(probs)
    }
}

fn fold_train_indices(n: usize, fold: &[usize]) -> Vec<usize> {
    let held: HashSet<usize> = fold.iter().copied().collect();
    (0..n).filter(|i| !held.contains(i)).collect()
}

/// Out-of-fold probabilities for fixed folds. Each tweet's triple comes
/// from a tf-idf + naive Bayes model fitted only on the other folds, so
/// its own label can never leak into its own feature.
pub fn stacked_out_of_fold(
    tweets: &[NormalizedTweet],
    labels: &[Label],
    folds: &[Vec<usize>],
    alpha: f64,
) -> Result<Vec<[f64; 3]>> {
    let mut out = vec![[0.0f64; 3]; tweets.len()];
    for fold in folds {
        let train_idx = fold_train_indices(tweets.len(), fold);
        for class in SENTIMENT_CLASSES {
            if !train_idx.iter().any(|&i| labels[i] == class) {
                return Err(Error::ClassMissingInFold(class));
            }
        }
        let train_tweets: Vec<NormalizedTweet> =
            train_idx.iter().map(|&i| tweets[i].clone()).collect();
        let train_labels: Vec<Label> = train_idx.iter().map(|&i| labels[i]).collect();
        let tfidf = tfidf_fit(&train_tweets)?;
        let rows: Vec<Vec<f64>> = train_tweets
            .iter()
            .map(|t| tfidf_to_dense(&tfidf, &tfidf_transform(&tfidf, t)))
            .collect();
        let nb = nb_train(&rows, &train_labels, alpha, PriorMode::Empirical)?;
        let fold_model = StackedTfidf { tfidf, nb };
        for &i in fold {
            out[i] = fold_model.predict_proba(&tweets[i])?;
        }
    }
    Ok(out)
}

/// Stratified, seeded k-fold stacking. Returns each training tweet's
/// out-of-fold probability triple plus the final classifier trained on
/// the full split. When a class is too rare for the requested fold
/// count, the split is retried with fewer, larger folds.
pub fn stacked_tfidf_feature(
    tweets: &[NormalizedTweet],
    labels: &[Label],
    k: usize,
    seed: u64,
    alpha: f64,
) -> Result<(Vec<[f64; 3]>, StackedTfidf)> {
    if k < 2 {
        return Err(Error::InvalidConfig(format!("need k ≥ 2 folds, got {k}")));
    }
    if tweets.len() != labels.len() {
        return Err(Error::LengthMismatch {
            preds: tweets.len(),
            gold: labels.len(),
        });
    }
    for class in SENTIMENT_CLASSES {
        if !labels.contains(&class) {
            return Err(Error::MissingClass(class));
        }
    }

    let mut oof = None;
    let mut attempt = k;
    while attempt >= 2 {
        let folds = stratified_k_fold(labels, attempt, seed)?;
        match stacked_out_of_fold(tweets, labels, &folds, alpha) {
            Ok(probs) => {
                oof = Some(probs);
                break;
            }
            Err(Error::ClassMissingInFold(_)) if attempt > 2 => {
                attempt -= 1;
            }
            Err(e) => return Err(e),
        }
    }
    let oof = oof.ok_or(Error::ClassMissingInFold(Label::Neutral))?;

    let tfidf = tfidf_fit(tweets)?;
    let rows: Vec<Vec<f64>> = tweets
        .iter()
        .map(|t| tfidf_to_dense(&tfidf, &tfidf_transform(&tfidf, t)))
        .collect();
    let nb = nb_train(&rows, labels, alpha, PriorMode::Empirical)?;
    Ok((oof, StackedTfidf { tfidf, nb }))
}
