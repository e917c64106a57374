//! Landing-page context for tweet-embedded urls: a pluggable fetcher, an
//! on-disk cache keyed by url hash, and a lexicon-based sentence scorer
//! producing the positive/negative/neutral sentence fractions (feature
//! f5).
//!
//! Everything degrades gracefully: a fetch failure yields an empty
//! article and a warning, never an aborted classification.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lexicons::{LexiconBundle, Polarity};
use crate::normalize::{mark_negations, normalize_tokens, polarity_counts, tokenize, Token};
use crate::tagging::{pos_tag, TagLexicon};

/// Extracted article text for one url.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArticleText {
    pub url: String,
    /// Empty when the fetch failed or the page had no text; recorded,
    /// never fabricated.
    pub first_paragraph: String,
    /// Unix seconds at fetch time; preserved on cache hits.
    pub fetched_at: u64,
    pub source: ArticleSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArticleSource {
    Live,
    Cache,
}

/// Sentence-sentiment fractions over the landing pages of a tweet's urls.
/// The fractions sum to exactly 1 when at least one sentence was scored
/// and are all zero otherwise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct UrlSentiment {
    pub frac_pos: f64,
    pub frac_neg: f64,
    pub frac_neu: f64,
}

/// Retrieves a page body for a url. Implementations must be shareable
/// across prefetch threads.
pub trait Fetcher: Send + Sync {
    /// Returns the raw page body, or a human-readable failure cause.
    fn fetch(&self, url: &str) -> std::result::Result<String, String>;
}

/// Live HTTP fetcher with a redirect limit of 5 and a configurable
/// timeout.
pub struct HttpFetcher {
    client: reqwest::blocking::Client,
}

impl HttpFetcher {
    pub fn new(timeout: Duration) -> Result<HttpFetcher> {
        let client = reqwest::blocking::Client::builder()
            .redirect(reqwest::redirect::Policy::limited(5))
            .timeout(timeout)
            .user_agent(concat!("tweetsense/", env!("CARGO_PKG_VERSION")))
            .build()
            .map_err(|e| Error::InvalidConfig(format!("http client: {e}")))?;
        Ok(HttpFetcher { client })
    }
}

impl Fetcher for HttpFetcher {
    fn fetch(&self, url: &str) -> std::result::Result<String, String> {
        let response = self.client.get(url).send().map_err(|e| e.to_string())?;
        let status = response.status();
        if !status.is_success() {
            return Err(format!("HTTP {status}"));
        }
        response.text().map_err(|e| e.to_string())
    }
}

/// Fetcher for `--offline` runs: every miss is a failure.
pub struct OfflineFetcher;

impl Fetcher for OfflineFetcher {
    fn fetch(&self, _url: &str) -> std::result::Result<String, String> {
        Err("offline mode forbids network access".into())
    }
}

/// Byte spans of http/https urls in left-to-right order.
pub(crate) fn url_spans(text: &str) -> Vec<(usize, usize)> {
    let bytes = text.as_bytes();
    let lower = text.to_lowercase();
    let mut spans = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let scheme_len = if lower[i..].starts_with("https://") {
            8
        } else if lower[i..].starts_with("http://") {
            7
        } else {
            i += 1;
            continue;
        };
        let boundary = i == 0 || !text[..i].chars().next_back().unwrap().is_alphanumeric();
        if !boundary {
            i += scheme_len;
            continue;
        }
        let mut end = i + scheme_len;
        while end < bytes.len() && !bytes[end].is_ascii_whitespace() {
            end += 1;
        }
        // trailing sentence punctuation is not part of the url
        while end > i + scheme_len
            && matches!(bytes[end - 1], b'.' | b',' | b';' | b':' | b'!' | b'?' | b')' | b'"' | b'\'')
        {
            end -= 1;
        }
        if end > i + scheme_len {
            spans.push((i, end));
        }
        i = end.max(i + scheme_len);
    }
    spans
}

/// All http/https urls by left-to-right scan, duplicates preserved.
pub fn extract_urls(text: &str) -> Vec<String> {
    url_spans(text)
        .into_iter()
        .map(|(s, e)| text[s..e].to_string())
        .collect()
}

fn cache_path(cache_dir: &Path, url: &str) -> PathBuf {
    let digest = Sha256::digest(url.as_bytes());
    let mut name = String::with_capacity(64);
    for byte in digest {
        name.push_str(&format!("{byte:02x}"));
    }
    cache_dir.join(format!("{name}.json"))
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    url: String,
    first_paragraph: String,
    fetched_at: u64,
}

fn read_cache(cache_dir: &Path, url: &str) -> Option<ArticleText> {
    let path = cache_path(cache_dir, url);
    let raw = fs::read_to_string(path).ok()?;
    let entry: CacheEntry = serde_json::from_str(&raw).ok()?;
    Some(ArticleText {
        url: entry.url,
        first_paragraph: entry.first_paragraph,
        fetched_at: entry.fetched_at,
        source: ArticleSource::Cache,
    })
}

fn write_cache(cache_dir: &Path, article: &ArticleText) -> Result<()> {
    fs::create_dir_all(cache_dir)
        .map_err(|e| Error::io(format!("creating cache dir {}", cache_dir.display()), e))?;
    let entry = CacheEntry {
        url: article.url.clone(),
        first_paragraph: article.first_paragraph.clone(),
        fetched_at: article.fetched_at,
    };
    let body = serde_json::to_vec_pretty(&entry)
        .map_err(|e| Error::json("serializing cache entry", e))?;
    let path = cache_path(cache_dir, &article.url);
    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.subsec_nanos())
        .unwrap_or(0);
    let tmp = path.with_extension(format!("tmp-{}-{nanos}", std::process::id()));
    fs::write(&tmp, body).map_err(|e| Error::io(format!("writing {}", tmp.display()), e))?;
    fs::rename(&tmp, &path).map_err(|e| Error::io(format!("renaming {}", tmp.display()), e))?;
    Ok(())
}

/// Strips markup down to text, turning block-level tags into line breaks
/// and decoding the common entities.
fn strip_markup(html: &str) -> String {
    const BLOCK_TAGS: &[&str] = &[
        "p", "div", "br", "li", "ul", "ol", "h1", "h2", "h3", "h4", "h5", "h6", "tr",
        "table", "blockquote", "section", "article", "header", "footer", "pre",
    ];
    let mut out = String::with_capacity(html.len());
    let lower = html.to_lowercase();
    let mut i = 0;
    while i < html.len() {
        if lower[i..].starts_with("<script") || lower[i..].starts_with("<style") {
            let close = if lower[i..].starts_with("<script") {
                "</script>"
            } else {
                "</style>"
            };
            match lower[i..].find(close) {
                Some(off) => {
                    i += off + close.len();
                    out.push(' ');
                    continue;
                }
                None => break,
            }
        }
        if html[i..].starts_with('<') {
            match html[i..].find('>') {
                Some(off) => {
                    let inner = &lower[i + 1..i + off];
                    let name: String = inner
                        .trim_start_matches('/')
                        .chars()
                        .take_while(|c| c.is_ascii_alphanumeric())
                        .collect();
                    if BLOCK_TAGS.contains(&name.as_str()) {
                        out.push('\n');
                    } else {
                        out.push(' ');
                    }
                    i += off + 1;
                    continue;
                }
                None => break,
            }
        }
        let c = html[i..].chars().next().expect("non-empty slice");
        i += c.len_utf8();
        out.push(c);
    }
    for (entity, ch) in [
        ("&amp;", "&"),
        ("&lt;", "<"),
        ("&gt;", ">"),
        ("&quot;", "\""),
        ("&#39;", "'"),
        ("&apos;", "'"),
        ("&nbsp;", " "),
    ] {
        out = out.replace(entity, ch);
    }
    out
}

/// Text up to the first blank line, capped at 1000 characters.
fn first_paragraph(text: &str) -> String {
    let mut lines: Vec<&str> = Vec::new();
    let mut started = false;
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            if started {
                break;
            }
            continue;
        }
        started = true;
        lines.push(trimmed);
    }
    let joined = lines.join(" ");
    let collapsed = joined.split_whitespace().collect::<Vec<_>>().join(" ");
    collapsed.chars().take(1000).collect()
}

/// Returns the article text for a url, preferring the cache. On a miss
/// the fetcher runs, markup is stripped, and the result is written back
/// atomically.
pub fn fetch_article(
    url: &str,
    fetcher: &dyn Fetcher,
    cache_dir: &Path,
) -> Result<ArticleText> {
    if let Some(cached) = read_cache(cache_dir, url) {
        return Ok(cached);
    }
    let body = fetcher.fetch(url).map_err(|cause| Error::FetchFailed {
        url: url.to_string(),
        cause,
    })?;
    let article = ArticleText {
        url: url.to_string(),
        first_paragraph: first_paragraph(&strip_markup(&body)),
        fetched_at: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        source: ArticleSource::Live,
    };
    write_cache(cache_dir, &article)?;
    Ok(article)
}

/// Splits on `.`, `!`, `?` followed by whitespace or end of text; a
/// trailing fragment without terminal punctuation still counts.
pub fn split_sentences(paragraph: &str) -> Vec<String> {
    let chars: Vec<char> = paragraph.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    for i in 0..chars.len() {
        if matches!(chars[i], '.' | '!' | '?') {
            let at_boundary = i + 1 == chars.len() || chars[i + 1].is_whitespace();
            if at_boundary {
                let s: String = chars[start..=i].iter().collect();
                if !s.trim().is_empty() {
                    sentences.push(s.trim().to_string());
                }
                start = i + 1;
            }
        }
    }
    if start < chars.len() {
        let s: String = chars[start..].iter().collect();
        if !s.trim().is_empty() {
            sentences.push(s.trim().to_string());
        }
    }
    sentences
}

/// Scores one sentence with the polarity lexicon: strong words count ±2,
/// weak words ±1, with negation flips applied first.
pub fn sentence_sentiment(sentence: &str, lex: &LexiconBundle) -> Polarity {
    let raw = tokenize(sentence);
    let normalized = normalize_tokens(&raw, lex);
    let tagger = TagLexicon::default();
    let tagged = pos_tag(&normalized, &tagger);
    let tokens: Vec<Token> = tagged
        .into_iter()
        .map(|(surface, pos)| Token {
            surface,
            was_capitalized: false,
            negated: false,
            pos,
        })
        .collect();
    let tokens = mark_negations(tokens, lex);
    let counts = polarity_counts(&tokens, lex);
    let score = 2 * (counts.strong_pos as i64 - counts.strong_neg as i64)
        + (counts.weak_pos as i64 - counts.weak_neg as i64);
    match score.cmp(&0) {
        std::cmp::Ordering::Greater => Polarity::Positive,
        std::cmp::Ordering::Less => Polarity::Negative,
        std::cmp::Ordering::Equal => Polarity::Neutral,
    }
}

/// Memoizing front end over [`fetch_article`] + [`sentence_sentiment`].
/// Each distinct url is fetched at most once per provider; failures are
/// warned about once per distinct url and degrade to zero fractions.
pub struct UrlSentimentProvider<'a> {
    fetcher: &'a dyn Fetcher,
    cache_dir: PathBuf,
    articles: RefCell<HashMap<String, Option<String>>>,
    warnings: RefCell<Vec<String>>,
}

impl<'a> UrlSentimentProvider<'a> {
    pub fn new(fetcher: &'a dyn Fetcher, cache_dir: impl Into<PathBuf>) -> Self {
        UrlSentimentProvider {
            fetcher,
            cache_dir: cache_dir.into(),
            articles: RefCell::new(HashMap::new()),
            warnings: RefCell::new(Vec::new()),
        }
    }

    /// Warms the cache for every distinct un-cached url, at most
    /// `concurrency` fetches in flight.
    pub fn prefetch(&self, urls: &[String], concurrency: usize) {
        let mut pending: Vec<&String> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for url in urls {
            if seen.insert(url.as_str()) && read_cache(&self.cache_dir, url).is_none() {
                pending.push(url);
            }
        }
        let concurrency = concurrency.max(1);
        for wave in pending.chunks(concurrency) {
            std::thread::scope(|scope| {
                for url in wave {
                    let cache_dir = self.cache_dir.clone();
                    let fetcher = self.fetcher;
                    scope.spawn(move || {
                        let _ = fetch_article(url, fetcher, &cache_dir);
                    });
                }
            });
        }
    }

    /// The first paragraph for a url, or `None` after a recorded failure.
    pub fn article(&self, url: &str) -> Option<String> {
        if let Some(cached) = self.articles.borrow().get(url) {
            return cached.clone();
        }
        let result = match fetch_article(url, self.fetcher, &self.cache_dir) {
            Ok(article) => Some(article.first_paragraph),
            Err(e) => {
                self.warnings.borrow_mut().push(e.to_string());
                None
            }
        };
        self.articles
            .borrow_mut()
            .insert(url.to_string(), result.clone());
        result
    }

    /// Pools sentences across all of a tweet's urls and returns the class
    /// fractions. No urls or no sentences → all zeros.
    pub fn fractions(&self, urls: &[String], lex: &LexiconBundle) -> UrlSentiment {
        let mut pos = 0usize;
        let mut neg = 0usize;
        let mut total = 0usize;
        for url in urls {
            let Some(paragraph) = self.article(url) else {
                continue;
            };
            for sentence in split_sentences(&paragraph) {
                match sentence_sentiment(&sentence, lex) {
                    Polarity::Positive => pos += 1,
                    Polarity::Negative => neg += 1,
                    Polarity::Neutral => {}
                }
                total += 1;
            }
        }
        if total == 0 {
            return UrlSentiment::default();
        }
        let frac_pos = pos as f64 / total as f64;
        let frac_neg = neg as f64 / total as f64;
        UrlSentiment {
            frac_pos,
            frac_neg,
            // complement keeps the invariant frac_pos+frac_neg+frac_neu == 1
            frac_neu: 1.0 - frac_pos - frac_neg,
        }
    }

    /// One warning per distinct failed url, in first-failure order.
    pub fn warnings(&self) -> Vec<String> {
        self.warnings.borrow().clone()
    }
}

/// One-shot convenience over [`UrlSentimentProvider::fractions`].
pub fn url_sentiment_fractions(
    urls: &[String],
    fetcher: &dyn Fetcher,
    cache_dir: &Path,
    lex: &LexiconBundle,
) -> UrlSentiment {
    UrlSentimentProvider::new(fetcher, cache_dir).fractions(urls, lex)
}
