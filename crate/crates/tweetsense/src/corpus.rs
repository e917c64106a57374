//! Tweet datasets: loading, validation, filtering, and summary statistics.
//!
//! Corpora are 5-column TSV files (`id`, `user_id`, `target`, `label`,
//! `text`). Tabs cannot appear inside the text column; [`save_corpus`]
//! strips them at write time so a valid corpus always round-trips.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicons::LexiconBundle;
use crate::normalize::{self, polarity_counts};
use crate::tagging::{Pos, Tagger};

/// Longest accepted tweet text in bytes. Tweets are nominally 140
/// characters; 560 bytes leaves room for multi-byte UTF-8.
pub const MAX_TEXT_BYTES: usize = 560;

/// Annotation classes. `Unlabeled` stands for an empty label column.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Negative,
    Neutral,
    Positive,
    Unsure,
    Irrelevant,
    Unlabeled,
}

/// The three classes the classifier operates on, in the fixed tie-break
/// order used everywhere in this crate.
pub const SENTIMENT_CLASSES: [Label; 3] = [Label::Negative, Label::Neutral, Label::Positive];

impl Label {
    /// Case-insensitive parse. Empty input means the row was never
    /// annotated. Unknown strings are rejected by the caller.
    pub fn parse(s: &str) -> Option<Label> {
        match s.to_ascii_lowercase().as_str() {
            "" => Some(Label::Unlabeled),
            "positive" => Some(Label::Positive),
            "negative" => Some(Label::Negative),
            "neutral" => Some(Label::Neutral),
            "unsure" => Some(Label::Unsure),
            "irrelevant" => Some(Label::Irrelevant),
            _ => None,
        }
    }

    /// True for the classes kept by [`filter_labels`].
    pub fn is_sentiment(self) -> bool {
        matches!(self, Label::Positive | Label::Negative | Label::Neutral)
    }

    /// Position in [`SENTIMENT_CLASSES`], if any.
    pub fn class_index(self) -> Option<usize> {
        SENTIMENT_CLASSES.iter().position(|c| *c == self)
    }

    /// The string written to the TSV label column. Empty for `Unlabeled`
    /// so that load ∘ save is the identity.
    pub fn column_str(self) -> &'static str {
        match self {
            Label::Unlabeled => "",
            other => other.name(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Label::Positive => "positive",
            Label::Negative => "negative",
            Label::Neutral => "neutral",
            Label::Unsure => "unsure",
            Label::Irrelevant => "irrelevant",
            Label::Unlabeled => "unlabeled",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One raw tweet record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tweet {
    pub id: String,
    pub user_id: String,
    /// Topic the tweet is about, kept as a free string.
    pub target: String,
    pub label: Label,
    pub text: String,
}

/// An ordered, duplicate-free collection of tweets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub tweets: Vec<Tweet>,
    pub split_name: String,
}

impl Corpus {
    /// Builds a corpus, rejecting duplicate ids.
    pub fn new(tweets: Vec<Tweet>, split_name: impl Into<String>) -> Result<Corpus> {
        let split_name = split_name.into();
        let mut seen = HashSet::new();
        for (i, t) in tweets.iter().enumerate() {
            if !seen.insert(t.id.as_str()) {
                return Err(Error::DuplicateId {
                    path: split_name.clone().into(),
                    line: i + 1,
                    id: t.id.clone(),
                });
            }
        }
        Ok(Corpus { tweets, split_name })
    }

    pub fn len(&self) -> usize {
        self.tweets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tweets.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Tweet> {
        self.tweets.iter()
    }
}

/// Loads a 5-column TSV corpus. Row order is preserved; labels are parsed
/// case-insensitively; an empty label column becomes [`Label::Unlabeled`].
pub fn load_corpus(path: impl AsRef<Path>, has_header: bool) -> Result<Corpus> {
    let path = path.as_ref();
    if !path.is_file() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let content = fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;

    let split_name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".to_string());

    let mut tweets = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    for (idx, line) in content.lines().enumerate() {
        let line_no = idx + 1;
        if has_header && idx == 0 {
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 5 {
            return Err(Error::MalformedRow {
                path: path.to_path_buf(),
                line: line_no,
                reason: format!("expected 5 tab-separated columns, found {}", cols.len()),
            });
        }
        let id = cols[0].trim();
        if id.is_empty() {
            return Err(Error::MalformedRow {
                path: path.to_path_buf(),
                line: line_no,
                reason: "empty id".into(),
            });
        }
        let label = Label::parse(cols[3].trim()).ok_or_else(|| Error::MalformedRow {
            path: path.to_path_buf(),
            line: line_no,
            reason: format!("unknown label `{}`", cols[3].trim()),
        })?;
        let text = cols[4];
        if text.trim().is_empty() {
            return Err(Error::MalformedRow {
                path: path.to_path_buf(),
                line: line_no,
                reason: "empty text".into(),
            });
        }
        if text.len() > MAX_TEXT_BYTES {
            return Err(Error::MalformedRow {
                path: path.to_path_buf(),
                line: line_no,
                reason: format!("text exceeds {MAX_TEXT_BYTES} bytes"),
            });
        }
        if !seen.insert(id.to_string()) {
            return Err(Error::DuplicateId {
                path: path.to_path_buf(),
                line: line_no,
                id: id.to_string(),
            });
        }
        tweets.push(Tweet {
            id: id.to_string(),
            user_id: cols[1].trim().to_string(),
            target: cols[2].trim().to_string(),
            label,
            text: text.to_string(),
        });
    }
    Ok(Corpus { tweets, split_name })
}

/// Writes a corpus back to TSV. Tabs and newlines inside the text column
/// are replaced by spaces so the output always re-loads.
pub fn save_corpus(corpus: &Corpus, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = Vec::new();
    for t in &corpus.tweets {
        let text: String = t
            .text
            .chars()
            .map(|c| if c == '\t' || c == '\n' || c == '\r' { ' ' } else { c })
            .collect();
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            t.id,
            t.user_id,
            t.target,
            t.label.column_str(),
            text
        )
        .expect("writing to a Vec cannot fail");
    }
    fs::write(path, out).map_err(|e| Error::io(format!("writing {}", path.display()), e))
}

/// Keeps only tweets labeled positive, negative, or neutral, preserving
/// order. Idempotent.
pub fn filter_labels(corpus: &Corpus) -> Corpus {
    Corpus {
        tweets: corpus
            .tweets
            .iter()
            .filter(|t| t.label.is_sentiment())
            .cloned()
            .collect(),
        split_name: corpus.split_name.clone(),
    }
}

/// Token- and artifact-level counters over a corpus, plus the raw label
/// histogram. Counters are computed on normalized tokens, so they are
/// additive under corpus concatenation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsReport {
    pub token_count: u64,
    pub noun_count: u64,
    pub adj_count: u64,
    pub adv_count: u64,
    pub verb_count: u64,
    pub strong_pos: u64,
    pub strong_neg: u64,
    pub weak_pos: u64,
    pub weak_neg: u64,
    pub capitalized_words: u64,
    pub mention_count: u64,
    pub hashtag_count: u64,
    pub rt_count: u64,
    pub pos_emoticons: u64,
    pub neg_emoticons: u64,
    pub class_histogram: BTreeMap<Label, u64>,
}

impl StatsReport {
    /// Renders the report as an aligned two-column table.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, u64)> = vec![
            ("all tokens".into(), self.token_count),
            ("noun".into(), self.noun_count),
            ("adj".into(), self.adj_count),
            ("adv".into(), self.adv_count),
            ("verb".into(), self.verb_count),
            ("strong positive".into(), self.strong_pos),
            ("strong negative".into(), self.strong_neg),
            ("weak positive".into(), self.weak_pos),
            ("weak negative".into(), self.weak_neg),
            ("capitalized words".into(), self.capitalized_words),
            ("mention(@)".into(), self.mention_count),
            ("hashtag(#)".into(), self.hashtag_count),
            ("RT".into(), self.rt_count),
            ("positive emoticons".into(), self.pos_emoticons),
            ("negative emoticons".into(), self.neg_emoticons),
        ];
        for (label, n) in &self.class_histogram {
            rows.push((format!("label: {label}"), *n));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        out.push_str(&format!("{:<width$}  count\n", "type of tokens"));
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}

/// Computes [`StatsReport`] counters over normalized tokens; the class
/// histogram is taken over raw labels.
pub fn corpus_stats(
    corpus: &Corpus,
    lex: &LexiconBundle,
    tagger: &dyn Tagger,
) -> StatsReport {
    let mut r = StatsReport::default();
    for tweet in &corpus.tweets {
        let nt = normalize::normalize_tweet(tweet, lex, tagger);
        r.token_count += nt.tokens.len() as u64;
        for tok in &nt.tokens {
            match tok.pos {
                Pos::Noun => r.noun_count += 1,
                Pos::Adj => r.adj_count += 1,
                Pos::Adv => r.adv_count += 1,
                Pos::Verb => r.verb_count += 1,
                Pos::Other => {}
            }
        }
        let pol = polarity_counts(&nt.tokens, lex);
        r.strong_pos += pol.strong_pos as u64;
        r.strong_neg += pol.strong_neg as u64;
        r.weak_pos += pol.weak_pos as u64;
        r.weak_neg += pol.weak_neg as u64;
        r.capitalized_words += nt.artifacts.capitalized_words as u64;
        r.mention_count += nt.artifacts.mentions.len() as u64;
        r.hashtag_count += nt.artifacts.hashtags.len() as u64;
        r.rt_count += u64::from(nt.artifacts.is_retweet);
        r.pos_emoticons += nt.artifacts.pos_emoticons as u64;
        r.neg_emoticons += nt.artifacts.neg_emoticons as u64;
        *r.class_histogram.entry(tweet.label).or_insert(0) += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicons::test_bundle;

    fn write_tsv(content: &str) -> tempfile::NamedTempFile {
        use std::io::Write;
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    #[test]
    fn load_parses_all_label_kinds() {
        let f = write_tsv(
            "1\tu1\thcr\tpositive\tgood bill\n\
             2\tu2\thcr\tNEGATIVE\tbad bill\n\
             3\tu3\thcr\tneutral\tsome bill\n\
             4\tu4\thcr\tunsure\thmm\n\
             5\tu5\thcr\tirrelevant\tlunch\n",
        );
        let c = load_corpus(f.path(), false).unwrap();
        assert_eq!(c.len(), 5);
        assert_eq!(c.tweets[0].label, Label::Positive);
        assert_eq!(c.tweets[1].label, Label::Negative);
        assert_eq!(c.tweets[4].label, Label::Irrelevant);
    }

    #[test]
    fn load_header_only_gives_empty_corpus() {
        let f = write_tsv("id\tuser_id\ttarget\tlabel\ttext\n");
        let c = load_corpus(f.path(), true).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn load_rejects_wrong_column_count() {
        let f = write_tsv("1\tu1\thcr\tpositive\n");
        match load_corpus(f.path(), false) {
            Err(Error::MalformedRow { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected MalformedRow, got {other:?}"),
        }
    }

    #[test]
    fn load_rejects_unknown_label() {
        let f = write_tsv("1\tu1\thcr\tpositivee\thello\n");
        assert!(matches!(
            load_corpus(f.path(), false),
            Err(Error::MalformedRow { .. })
        ));
    }

    #[test]
    fn load_rejects_duplicate_id() {
        let f = write_tsv("1\tu1\thcr\tpositive\ta\n1\tu2\thcr\tnegative\tb\n");
        match load_corpus(f.path(), false) {
            Err(Error::DuplicateId { id, line, .. }) => {
                assert_eq!(id, "1");
                assert_eq!(line, 2);
            }
            other => panic!("expected DuplicateId, got {other:?}"),
        }
    }

    #[test]
    fn empty_label_column_is_unlabeled() {
        let f = write_tsv("1\tu1\thcr\t\tno label here\n");
        let c = load_corpus(f.path(), false).unwrap();
        assert_eq!(c.tweets[0].label, Label::Unlabeled);
    }

    #[test]
    fn missing_file_is_reported() {
        assert!(matches!(
            load_corpus("/nonexistent/nope.tsv", false),
            Err(Error::MissingFile(_))
        ));
    }

    #[test]
    fn filter_keeps_sentiment_classes_in_order() {
        let f = write_tsv(
            "1\tu\tt\tpositive\ta\n2\tu\tt\tnegative\tb\n3\tu\tt\tunsure\tc\n\
             4\tu\tt\tirrelevant\td\n5\tu\tt\tneutral\te\n",
        );
        let c = load_corpus(f.path(), false).unwrap();
        let filtered = filter_labels(&c);
        let ids: Vec<&str> = filtered.iter().map(|t| t.id.as_str()).collect();
        assert_eq!(ids, ["1", "2", "5"]);
    }

    #[test]
    fn filter_all_unsure_gives_empty() {
        let f = write_tsv("1\tu\tt\tunsure\ta\n2\tu\tt\tunsure\tb\n");
        let c = load_corpus(f.path(), false).unwrap();
        assert!(filter_labels(&c).is_empty());
    }

    #[test]
    fn filter_is_identity_on_clean_corpus() {
        let f = write_tsv("1\tu\tt\tpositive\ta\n2\tu\tt\tneutral\tb\n");
        let c = load_corpus(f.path(), false).unwrap();
        assert_eq!(filter_labels(&c), c);
    }

    #[test]
    fn filter_is_idempotent() {
        let f = write_tsv(
            "1\tu\tt\tpositive\ta\n2\tu\tt\tunsure\tb\n3\tu\tt\tnegative\tc\n",
        );
        let c = load_corpus(f.path(), false).unwrap();
        let once = filter_labels(&c);
        let twice = filter_labels(&once);
        assert_eq!(once, twice);
    }

    #[test]
    fn save_then_load_round_trips() {
        let f = write_tsv("1\tu1\thcr\tpositive\tgood bill\n2\tu2\thcr\t\traw row\n");
        let c = load_corpus(f.path(), false).unwrap();
        let out = tempfile::NamedTempFile::new().unwrap();
        save_corpus(&c, out.path()).unwrap();
        let reloaded = load_corpus(out.path(), false).unwrap();
        assert_eq!(c.tweets, reloaded.tweets);
        let original = std::fs::read(f.path()).unwrap();
        let written = std::fs::read(out.path()).unwrap();
        assert_eq!(original, written, "byte-identical round trip");
    }

    #[test]
    fn stats_empty_corpus_all_zero() {
        let corpus = Corpus::new(vec![], "empty").unwrap();
        let (lex, tags) = test_bundle();
        let r = corpus_stats(&corpus, &lex, &tags);
        assert_eq!(r, StatsReport::default());
    }

    #[test]
    fn stats_counts_artifacts_of_single_tweet() {
        // Hand trace: leading RT strips and sets the flag, @u is a mention,
        // GOOD is all-caps and a weak-positive lexicon word, :) is a
        // positive emoticon, #hcr stays a hashtag (unsegmentable).
        let tweet = Tweet {
            id: "1".into(),
            user_id: "u".into(),
            target: "hcr".into(),
            label: Label::Positive,
            text: "RT @u GOOD :) #hcr".into(),
        };
        let corpus = Corpus::new(vec![tweet], "t").unwrap();
        let (lex, tags) = test_bundle();
        let r = corpus_stats(&corpus, &lex, &tags);
        assert_eq!(r.rt_count, 1);
        assert_eq!(r.mention_count, 1);
        assert_eq!(r.hashtag_count, 1);
        assert_eq!(r.pos_emoticons, 1);
        assert_eq!(r.neg_emoticons, 0);
        assert_eq!(r.capitalized_words, 1);
        assert_eq!(r.weak_pos, 1);
        assert_eq!(r.class_histogram[&Label::Positive], 1);
    }

    #[test]
    fn stats_are_additive_under_concatenation() {
        let (lex, tags) = test_bundle();
        let a = Corpus::new(
            vec![Tweet {
                id: "1".into(),
                user_id: "u".into(),
                target: "t".into(),
                label: Label::Positive,
                text: "GOOD bill :)".into(),
            }],
            "a",
        )
        .unwrap();
        let b = Corpus::new(
            vec![Tweet {
                id: "2".into(),
                user_id: "v".into(),
                target: "t".into(),
                label: Label::Negative,
                text: "RT @x bad bill :( #killthebill".into(),
            }],
            "b",
        )
        .unwrap();
        let mut merged_tweets = a.tweets.clone();
        merged_tweets.extend(b.tweets.clone());
        let merged = Corpus::new(merged_tweets, "ab").unwrap();

        let ra = corpus_stats(&a, &lex, &tags);
        let rb = corpus_stats(&b, &lex, &tags);
        let rm = corpus_stats(&merged, &lex, &tags);
        assert_eq!(rm.token_count, ra.token_count + rb.token_count);
        assert_eq!(rm.weak_pos, ra.weak_pos + rb.weak_pos);
        assert_eq!(rm.hashtag_count, ra.hashtag_count + rb.hashtag_count);
        assert_eq!(rm.pos_emoticons, ra.pos_emoticons + rb.pos_emoticons);
        assert_eq!(rm.neg_emoticons, ra.neg_emoticons + rb.neg_emoticons);
        assert_eq!(
            rm.class_histogram.values().sum::<u64>(),
            (ra.class_histogram.values().sum::<u64>())
                + rb.class_histogram.values().sum::<u64>()
        );
    }
}
