//! Raw tweet text → normalized, negation-marked tokens plus extracted
//! artifacts.
//!
//! The pipeline runs: artifact stripping → emoticon extraction →
//! tokenization → capitalization flags → dictionary normalization and
//! slang expansion → stopword removal → hashtag segmentation → POS
//! tagging → negation marking. Every step is pure, so the whole pipeline
//! is deterministic and safe to run per-tweet in parallel.
//!
//! ```
//! use tweetsense::lexicons::LexiconBundle;
//! use tweetsense::normalize::segment_hashtag;
//!
//! let lex = LexiconBundle::empty().with_wordlist(["kill", "the", "bill"]);
//! let segments = segment_hashtag("killthebill", lex.wordlist());
//! assert_eq!(segments, ["kill", "the", "bill"]);
//! ```

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::corpus::Tweet;
use crate::lexicons::{lookup_polarity, LexiconBundle, Polarity, Strength};
use crate::tagging::{pos_tag, Pos, Tagger};
use crate::url_context::url_spans;

/// Structure stripped from the raw text: retweet marker, mentions, urls,
/// hashtags, emoticon tallies, and the all-caps word count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TweetArtifacts {
    pub is_retweet: bool,
    pub mentions: Vec<String>,
    pub urls: Vec<String>,
    /// Hashtag bodies without the leading `#`, original casing.
    pub hashtags: Vec<String>,
    pub pos_emoticons: u32,
    pub neg_emoticons: u32,
    /// All-caps words (≥ 2 letters) in the text after artifact stripping.
    /// Kept here rather than on surviving tokens because negation words
    /// are dropped later in the pipeline.
    pub capitalized_words: u32,
}

/// A normalized token.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub was_capitalized: bool,
    pub negated: bool,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedTweet {
    pub tweet_id: String,
    pub tokens: Vec<Token>,
    pub artifacts: TweetArtifacts,
}

/// Counts of polarity-dictionary hits over normalized tokens, after
/// negation flips. This is exactly the f2 feature family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarityCounts {
    pub strong_pos: u32,
    pub strong_neg: u32,
    pub weak_pos: u32,
    pub weak_neg: u32,
}

impl PolarityCounts {
    pub fn total(&self) -> u32 {
        self.strong_pos + self.strong_neg + self.weak_pos + self.weak_neg
    }
}

/// Tallies polarity hits per token. A negated token counts under the
/// flipped orientation at unchanged strength; neutral entries are not
/// counted.
pub fn polarity_counts(tokens: &[Token], lex: &LexiconBundle) -> PolarityCounts {
    let mut c = PolarityCounts::default();
    for tok in tokens {
        if let Some(entry) = lookup_polarity(lex, &tok.surface, tok.pos) {
            let polarity = if tok.negated {
                entry.polarity.flipped()
            } else {
                entry.polarity
            };
            match (entry.strength, polarity) {
                (Strength::Strong, Polarity::Positive) => c.strong_pos += 1,
                (Strength::Strong, Polarity::Negative) => c.strong_neg += 1,
                (Strength::Weak, Polarity::Positive) => c.weak_pos += 1,
                (Strength::Weak, Polarity::Negative) => c.weak_neg += 1,
                (_, Polarity::Neutral) => {}
            }
        }
    }
    c
}

/// Words that negate the polarity word following them. The closed list
/// plus every `n't` contraction.
pub fn is_negation_word(token: &str) -> bool {
    matches!(token, "no" | "not" | "never" | "nor" | "cannot") || token.ends_with("n't")
}

fn collapse_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Removes the leading RT marker, @mentions, and urls, recording each.
/// Hashtags are recorded but left in the text so they can be segmented in
/// token position.
pub fn strip_artifacts(text: &str) -> (String, TweetArtifacts) {
    let mut artifacts = TweetArtifacts::default();

    // urls first, so '@' or '#' inside a url never register
    let mut kept = String::with_capacity(text.len());
    let mut cursor = 0;
    for (start, end) in url_spans(text) {
        kept.push_str(&text[cursor..start]);
        kept.push(' ');
        artifacts.urls.push(text[start..end].to_string());
        cursor = end;
    }
    kept.push_str(&text[cursor..]);

    // mentions: '@' at a word boundary followed by word characters
    let mut without_mentions = String::with_capacity(kept.len());
    let chars: Vec<char> = kept.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let boundary = i == 0 || !is_word_char(chars[i - 1]);
        if chars[i] == '@' && boundary {
            let mut j = i + 1;
            while j < chars.len() && is_word_char(chars[j]) {
                j += 1;
            }
            if j > i + 1 {
                artifacts.mentions.push(chars[i + 1..j].iter().collect());
                without_mentions.push(' ');
                i = j;
                continue;
            }
        }
        without_mentions.push(chars[i]);
        i += 1;
    }

    // leading RT marker
    let trimmed = without_mentions.trim_start();
    let rest = match trimmed.split_once(char::is_whitespace) {
        Some((first, rest)) if first.eq_ignore_ascii_case("rt") => {
            artifacts.is_retweet = true;
            rest.to_string()
        }
        None if trimmed.eq_ignore_ascii_case("rt") => {
            artifacts.is_retweet = true;
            String::new()
        }
        _ => trimmed.to_string(),
    };

    // hashtags: recorded, left in place
    let chars: Vec<char> = rest.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let boundary = i == 0 || !is_word_char(chars[i - 1]);
        if chars[i] == '#' && boundary {
            let mut j = i + 1;
            while j < chars.len() && is_word_char(chars[j]) {
                j += 1;
            }
            if j > i + 1 {
                artifacts.hashtags.push(chars[i + 1..j].iter().collect());
                i = j;
                continue;
            }
        }
        i += 1;
    }

    (collapse_whitespace(&rest), artifacts)
}

/// Longest-match scan against the emoticon dictionary; matches are
/// replaced by a space and tallied by polarity.
pub fn extract_emoticons(text: &str, lex: &LexiconBundle) -> (String, u32, u32) {
    let glyphs = lex.emoticon_glyphs();
    let mut out = String::with_capacity(text.len());
    let mut pos_n = 0;
    let mut neg_n = 0;
    let mut i = 0;
    'outer: while i < text.len() {
        let rest = &text[i..];
        for glyph in &glyphs {
            if rest.starts_with(glyph) {
                match lex.emoticon_polarity(glyph) {
                    Some(Polarity::Positive) => pos_n += 1,
                    Some(Polarity::Negative) => neg_n += 1,
                    _ => {}
                }
                out.push(' ');
                i += glyph.len();
                continue 'outer;
            }
        }
        let c = rest.chars().next().expect("non-empty rest");
        out.push(c);
        i += c.len_utf8();
    }
    (collapse_whitespace(&out), pos_n, neg_n)
}

/// Splits on whitespace, then peels leading and trailing punctuation runs
/// into their own tokens. Internal punctuation (contractions, hyphens)
/// stays put, and `#`/`@` prefixes bind to the word that follows.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        let chars: Vec<char> = chunk.chars().collect();
        let n = chars.len();
        let mut start = 0;
        while start < n {
            let c = chars[start];
            if c.is_alphanumeric() {
                break;
            }
            if (c == '#' || c == '@') && start + 1 < n && chars[start + 1].is_alphanumeric() {
                break;
            }
            start += 1;
        }
        let mut end = n;
        while end > start && !chars[end - 1].is_alphanumeric() {
            end -= 1;
        }
        if start == n {
            // pure punctuation chunk
            tokens.push(chunk.to_string());
            continue;
        }
        if start > 0 {
            tokens.push(chars[..start].iter().collect());
        }
        tokens.push(chars[start..end].iter().collect());
        if end < n {
            tokens.push(chars[end..].iter().collect());
        }
    }
    tokens
}

fn is_punctuation_only(token: &str) -> bool {
    token.chars().all(|c| !c.is_alphanumeric())
}

/// Lowercase → normalization-dictionary rectification → slang expansion →
/// stopword removal, applied per token. Expansions are stopword-filtered
/// too; punctuation-only tokens are dropped. Negation words survive
/// stopword removal — [`mark_negations`] consumes them later.
fn normalize_one(token: &str, lex: &LexiconBundle, out: &mut Vec<String>) {
    let lower = token.to_lowercase();
    if is_punctuation_only(&lower) {
        return;
    }
    let rectified = lex.rectify(&lower).unwrap_or(&lower);
    let pieces: Vec<String> = match lex.slang_expansion(rectified) {
        Some(expansion) => expansion
            .split_whitespace()
            .map(|p| p.to_lowercase())
            .collect(),
        None => vec![rectified.to_string()],
    };
    for piece in pieces {
        if is_punctuation_only(&piece) {
            continue;
        }
        if lex.is_stopword(&piece) && !is_negation_word(&piece) {
            continue;
        }
        out.push(piece);
    }
}

/// Applies [`normalize_one`] across a token list.
pub fn normalize_tokens(tokens: &[String], lex: &LexiconBundle) -> Vec<String> {
    let mut out = Vec::with_capacity(tokens.len());
    for t in tokens {
        normalize_one(t, lex, &mut out);
    }
    out
}

/// Splits a hashtag body into dictionary words.
///
/// Chooses the segmentation with the fewest segments, tie-broken by the
/// lexicographically largest segment-length sequence from the left
/// (longer first words win). Digit runs count as valid segments. Returns
/// the lowercased tag unsplit when no full segmentation exists.
pub fn segment_hashtag(tag: &str, wordlist: &HashSet<String>) -> Vec<String> {
    let lower = tag.to_lowercase();
    let chars: Vec<char> = lower.chars().collect();
    let n = chars.len();
    if n == 0 {
        return vec![lower];
    }

    let valid = |l: usize, r: usize| -> bool {
        let piece: String = chars[l..r].iter().collect();
        piece.chars().all(|c| c.is_ascii_digit()) || wordlist.contains(&piece)
    };

    // best[i]: (segment count, segment lengths) for the suffix starting
    // at i, minimal count first, then lexicographically largest lengths.
    let mut best: Vec<Option<(usize, Vec<usize>)>> = vec![None; n + 1];
    best[n] = Some((0, Vec::new()));
    for i in (0..n).rev() {
        for j in i + 1..=n {
            if !valid(i, j) {
                continue;
            }
            let Some((tail_count, tail_lens)) = best[j].clone() else {
                continue;
            };
            let mut lens = Vec::with_capacity(tail_lens.len() + 1);
            lens.push(j - i);
            lens.extend(tail_lens);
            let cand = (tail_count + 1, lens);
            let take = match &best[i] {
                None => true,
                Some((count, lens)) => {
                    cand.0 < *count || (cand.0 == *count && cand.1 > *lens)
                }
            };
            if take {
                best[i] = Some(cand);
            }
        }
    }

    match &best[0] {
        None => vec![lower],
        Some((_, lens)) => {
            let mut segments = Vec::with_capacity(lens.len());
            let mut pos = 0;
            for len in lens {
                segments.push(chars[pos..pos + len].iter().collect());
                pos += len;
            }
            segments
        }
    }
}

/// Flags the first polarity-bearing token within three tokens after each
/// negation word, then drops the negation words themselves.
pub fn mark_negations(tokens: Vec<Token>, lex: &LexiconBundle) -> Vec<Token> {
    let mut tokens = tokens;
    for i in 0..tokens.len() {
        if !is_negation_word(&tokens[i].surface) {
            continue;
        }
        let window_end = (i + 3).min(tokens.len().saturating_sub(1));
        for j in i + 1..=window_end {
            if lookup_polarity(lex, &tokens[j].surface, tokens[j].pos).is_some() {
                tokens[j].negated = true;
                break;
            }
        }
    }
    tokens.retain(|t| !is_negation_word(&t.surface));
    tokens
}

fn is_all_caps_word(surface: &str) -> bool {
    let body = surface.trim_start_matches(['#', '@']);
    let mut letters = 0;
    for c in body.chars() {
        if c.is_alphabetic() {
            if !c.is_uppercase() {
                return false;
            }
            letters += 1;
        }
    }
    letters >= 2
}

/// Runs the full normalization pipeline over one tweet.
pub fn normalize_tweet(
    tweet: &Tweet,
    lex: &LexiconBundle,
    tagger: &dyn Tagger,
) -> NormalizedTweet {
    let (clean, mut artifacts) = strip_artifacts(&tweet.text);
    let (clean, pos_emo, neg_emo) = extract_emoticons(&clean, lex);
    artifacts.pos_emoticons = pos_emo;
    artifacts.neg_emoticons = neg_emo;

    let raw_tokens = tokenize(&clean);
    artifacts.capitalized_words = raw_tokens
        .iter()
        .filter(|t| is_all_caps_word(t))
        .count() as u32;

    // normalize each raw token, carrying the capitalization flag through
    // rectification and expansion
    let mut flagged: Vec<(String, bool)> = Vec::with_capacity(raw_tokens.len());
    for raw in &raw_tokens {
        let capitalized = is_all_caps_word(raw);
        let mut pieces = Vec::new();
        normalize_one(raw, lex, &mut pieces);
        flagged.extend(pieces.into_iter().map(|p| (p, capitalized)));
    }

    // hashtag tokens are replaced in place by their segmentation
    let mut surfaces: Vec<(String, bool)> = Vec::with_capacity(flagged.len());
    for (piece, capitalized) in flagged {
        if let Some(body) = piece.strip_prefix('#') {
            for segment in segment_hashtag(body, lex.wordlist()) {
                surfaces.push((segment, capitalized));
            }
        } else {
            surfaces.push((piece, capitalized));
        }
    }
    surfaces.retain(|(s, _)| !s.is_empty() && !s.contains('#') && !s.contains('@'));

    let plain: Vec<String> = surfaces.iter().map(|(s, _)| s.clone()).collect();
    let tagged = pos_tag(&plain, tagger);
    let tokens: Vec<Token> = surfaces
        .into_iter()
        .zip(tagged)
        .map(|((surface, was_capitalized), (_, pos))| Token {
            surface,
            was_capitalized,
            negated: false,
            pos,
        })
        .collect();

    NormalizedTweet {
        tweet_id: tweet.id.clone(),
        tokens: mark_negations(tokens, lex),
        artifacts,
    }
}
