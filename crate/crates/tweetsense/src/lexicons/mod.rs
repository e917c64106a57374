//! The six dictionaries driving normalization and feature extraction, and
//! the POS-conditioned prior-polarity lookup with stemming fallback.
//!
//! A bundle directory holds `polarity.tsv`, `slang.tsv`,
//! `normalization.tsv`, `emoticons.tsv`, `stopwords.txt`, and
//! `wordlist.txt`. All files are UTF-8; lines starting with `#` are
//! comments. See each loader for the column layout.
//!
//! ```
//! use tweetsense::lexicons::{LexiconBundle, PolarityPos, Strength, Polarity, lookup_polarity};
//! use tweetsense::tagging::Pos;
//!
//! let lex = LexiconBundle::empty()
//!     .with_polarity("good", PolarityPos::Adj, Strength::Weak, Polarity::Positive);
//! let hit = lookup_polarity(&lex, "good", Pos::Adj).unwrap();
//! assert_eq!(hit.polarity, Polarity::Positive);
//! ```

mod porter;
#[cfg(test)]
mod porter_oracle;

pub use porter::porter_stem;
#[cfg(test)]
pub(crate) use porter_oracle::{porter_oracle_pairs, porter_oracle_words};

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tagging::Pos;

/// Part of speech attached to a polarity entry. `Any` matches every tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarityPos {
    Noun,
    Verb,
    Adj,
    Adv,
    Any,
}

impl PolarityPos {
    fn parse(s: &str) -> Option<PolarityPos> {
        match s {
            "noun" => Some(PolarityPos::Noun),
            "verb" => Some(PolarityPos::Verb),
            "adj" => Some(PolarityPos::Adj),
            "adv" => Some(PolarityPos::Adv),
            "any" => Some(PolarityPos::Any),
            _ => None,
        }
    }

    /// The lexicon POS a tagger output can match exactly, if any.
    pub fn from_tag(pos: Pos) -> Option<PolarityPos> {
        match pos {
            Pos::Noun => Some(PolarityPos::Noun),
            Pos::Verb => Some(PolarityPos::Verb),
            Pos::Adj => Some(PolarityPos::Adj),
            Pos::Adv => Some(PolarityPos::Adv),
            Pos::Other => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strength {
    Weak,
    Strong,
}

impl Strength {
    fn parse(s: &str) -> Option<Strength> {
        match s {
            "weak" => Some(Strength::Weak),
            "strong" => Some(Strength::Strong),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
    Neutral,
}

impl Polarity {
    fn parse(s: &str) -> Option<Polarity> {
        match s {
            "positive" => Some(Polarity::Positive),
            "negative" => Some(Polarity::Negative),
            "neutral" => Some(Polarity::Neutral),
            _ => None,
        }
    }

    /// The opposite orientation; neutral is its own opposite.
    pub fn flipped(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
            Polarity::Neutral => Polarity::Neutral,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
            Polarity::Neutral => "neutral",
        })
    }
}

/// A prior-polarity dictionary row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarityEntry {
    pub word: String,
    pub pos: PolarityPos,
    pub strength: Strength,
    pub polarity: Polarity,
}

/// All dictionaries needed by the pipeline, immutable after load.
#[derive(Clone, Debug, Default)]
pub struct LexiconBundle {
    /// word → entries for that word (at most one per POS).
    polarity: HashMap<String, Vec<PolarityEntry>>,
    slang: HashMap<String, String>,
    normalization: HashMap<String, String>,
    emoticons: HashMap<String, Polarity>,
    stopwords: HashSet<String>,
    wordlist: HashSet<String>,
    /// Load-time notices (duplicate polarity rows, etc.).
    pub warnings: Vec<String>,
}

impl LexiconBundle {
    pub fn empty() -> LexiconBundle {
        LexiconBundle::default()
    }

    pub fn with_polarity(
        mut self,
        word: &str,
        pos: PolarityPos,
        strength: Strength,
        polarity: Polarity,
    ) -> Self {
        self.insert_polarity(PolarityEntry {
            word: word.to_lowercase(),
            pos,
            strength,
            polarity,
        });
        self
    }

    pub fn with_slang(mut self, key: &str, expansion: &str) -> Self {
        self.slang.insert(key.to_lowercase(), expansion.to_string());
        self
    }

    pub fn with_normalization(mut self, key: &str, corrected: &str) -> Self {
        self.normalization
            .insert(key.to_lowercase(), corrected.to_string());
        self
    }

    pub fn with_emoticon(mut self, glyph: &str, polarity: Polarity) -> Self {
        self.emoticons.insert(glyph.to_string(), polarity);
        self
    }

    pub fn with_stopwords<I: IntoIterator<Item = S>, S: AsRef<str>>(mut self, words: I) -> Self {
        for w in words {
            self.stopwords.insert(w.as_ref().to_lowercase());
        }
        self
    }

    pub fn with_wordlist<I: IntoIterator<Item = S>, S: AsRef<str>>(mut self, words: I) -> Self {
        for w in words {
            self.wordlist.insert(w.as_ref().to_lowercase());
        }
        self
    }

    fn insert_polarity(&mut self, entry: PolarityEntry) -> bool {
        let list = self.polarity.entry(entry.word.clone()).or_default();
        if let Some(existing) = list.iter_mut().find(|e| e.pos == entry.pos) {
            *existing = entry;
            false
        } else {
            list.push(entry);
            true
        }
    }

    /// Exact (word, pos) hit, no fallback.
    pub fn polarity_exact(&self, word: &str, pos: PolarityPos) -> Option<&PolarityEntry> {
        self.polarity
            .get(word)
            .and_then(|list| list.iter().find(|e| e.pos == pos))
    }

    pub fn slang_expansion(&self, token: &str) -> Option<&str> {
        self.slang.get(token).map(String::as_str)
    }

    pub fn rectify(&self, token: &str) -> Option<&str> {
        self.normalization.get(token).map(String::as_str)
    }

    pub fn emoticon_polarity(&self, glyph: &str) -> Option<Polarity> {
        self.emoticons.get(glyph).copied()
    }

    /// Emoticon glyphs ordered for longest-match scanning.
    pub fn emoticon_glyphs(&self) -> Vec<&str> {
        let mut glyphs: Vec<&str> = self.emoticons.keys().map(String::as_str).collect();
        glyphs.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        glyphs
    }

    pub fn is_stopword(&self, token: &str) -> bool {
        self.stopwords.contains(token)
    }

    pub fn wordlist(&self) -> &HashSet<String> {
        &self.wordlist
    }

    /// Per-dictionary entry counts, for load summaries.
    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        let mut m = BTreeMap::new();
        m.insert(
            "polarity",
            self.polarity.values().map(Vec::len).sum::<usize>(),
        );
        m.insert("slang", self.slang.len());
        m.insert("normalization", self.normalization.len());
        m.insert("emoticons", self.emoticons.len());
        m.insert("stopwords", self.stopwords.len());
        m.insert("wordlist", self.wordlist.len());
        m
    }
}

fn read_lexicon_file(dir: &Path, name: &str) -> Result<String> {
    let path = dir.join(name);
    if !path.is_file() {
        return Err(Error::MissingLexicon(name.to_string()));
    }
    fs::read_to_string(&path).map_err(|e| Error::io(format!("reading {}", path.display()), e))
}

/// Non-comment, non-empty lines with their 1-based line numbers.
fn data_lines(content: &str) -> impl Iterator<Item = (usize, &str)> {
    content
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

/// Loads all six dictionaries from a directory. Duplicate (word, pos)
/// pairs in the polarity file resolve to the last entry, with a warning
/// recorded on the bundle.
pub fn load_lexicon_bundle(dir: impl AsRef<Path>) -> Result<LexiconBundle> {
    let dir = dir.as_ref();
    let mut bundle = LexiconBundle::empty();

    let polarity = read_lexicon_file(dir, "polarity.tsv")?;
    for (line, raw) in data_lines(&polarity) {
        let cols: Vec<&str> = raw.split('\t').collect();
        let malformed = || Error::MalformedLexiconRow {
            name: "polarity.tsv".into(),
            line,
        };
        if cols.len() != 4 {
            return Err(malformed());
        }
        let word = cols[0].trim().to_lowercase();
        if word.is_empty() {
            return Err(malformed());
        }
        let entry = PolarityEntry {
            word,
            pos: PolarityPos::parse(cols[1].trim()).ok_or_else(malformed)?,
            strength: Strength::parse(cols[2].trim()).ok_or_else(malformed)?,
            polarity: Polarity::parse(cols[3].trim()).ok_or_else(malformed)?,
        };
        let word = entry.word.clone();
        let pos = entry.pos;
        if !bundle.insert_polarity(entry) {
            bundle.warnings.push(format!(
                "polarity.tsv:{line}: duplicate entry for ({word}, {pos:?}); last wins"
            ));
        }
    }

    let slang = read_lexicon_file(dir, "slang.tsv")?;
    for (line, raw) in data_lines(&slang) {
        let (k, v) = raw.split_once('\t').ok_or(Error::MalformedLexiconRow {
            name: "slang.tsv".into(),
            line,
        })?;
        bundle.slang.insert(k.trim().to_lowercase(), v.trim().to_string());
    }

    let normalization = read_lexicon_file(dir, "normalization.tsv")?;
    for (line, raw) in data_lines(&normalization) {
        let (k, v) = raw.split_once('\t').ok_or(Error::MalformedLexiconRow {
            name: "normalization.tsv".into(),
            line,
        })?;
        bundle
            .normalization
            .insert(k.trim().to_lowercase(), v.trim().to_string());
    }

    let emoticons = read_lexicon_file(dir, "emoticons.tsv")?;
    for (line, raw) in data_lines(&emoticons) {
        let malformed = || Error::MalformedLexiconRow {
            name: "emoticons.tsv".into(),
            line,
        };
        let (glyph, pol) = raw.split_once('\t').ok_or_else(malformed)?;
        let polarity = Polarity::parse(pol.trim()).ok_or_else(malformed)?;
        if polarity == Polarity::Neutral || glyph.is_empty() {
            return Err(malformed());
        }
        bundle.emoticons.insert(glyph.to_string(), polarity);
    }

    let stopwords = read_lexicon_file(dir, "stopwords.txt")?;
    for (_, raw) in data_lines(&stopwords) {
        bundle.stopwords.insert(raw.trim().to_lowercase());
    }

    let wordlist = read_lexicon_file(dir, "wordlist.txt")?;
    for (_, raw) in data_lines(&wordlist) {
        bundle.wordlist.insert(raw.trim().to_lowercase());
    }

    Ok(bundle)
}

/// POS-conditioned prior-polarity lookup with stemming fallback.
///
/// Probe order: `(word, pos)`, `(word, any)`, `(stem, pos)`, `(stem, any)`;
/// the first hit wins. Stemming is applied to the query only — lexicon
/// keys may themselves be stems.
pub fn lookup_polarity<'a>(
    lex: &'a LexiconBundle,
    word: &str,
    pos: Pos,
) -> Option<&'a PolarityEntry> {
    let lexpos = PolarityPos::from_tag(pos);
    if let Some(lp) = lexpos {
        if let Some(e) = lex.polarity_exact(word, lp) {
            return Some(e);
        }
    }
    if let Some(e) = lex.polarity_exact(word, PolarityPos::Any) {
        return Some(e);
    }
    let stem = porter_stem(word);
    if stem != word {
        if let Some(lp) = lexpos {
            if let Some(e) = lex.polarity_exact(&stem, lp) {
                return Some(e);
            }
        }
        if let Some(e) = lex.polarity_exact(&stem, PolarityPos::Any) {
            return Some(e);
        }
    }
    None
}

/// Small in-memory bundle + tag lexicon shared by unit tests across
/// modules. Mirrors the shipped fixture lexicons.
#[cfg(test)]
pub(crate) fn test_bundle() -> (LexiconBundle, crate::tagging::TagLexicon) {
    use crate::tagging::TagLexicon;

    let lex = LexiconBundle::empty()
        .with_polarity("good", PolarityPos::Any, Strength::Weak, Polarity::Positive)
        .with_polarity("excellent", PolarityPos::Any, Strength::Strong, Polarity::Positive)
        .with_polarity("bad", PolarityPos::Any, Strength::Weak, Polarity::Negative)
        .with_polarity("terrible", PolarityPos::Any, Strength::Strong, Polarity::Negative)
        .with_polarity("kill", PolarityPos::Any, Strength::Strong, Polarity::Negative)
        .with_polarity("lie", PolarityPos::Any, Strength::Weak, Polarity::Negative)
        .with_polarity("excuse", PolarityPos::Noun, Strength::Weak, Polarity::Negative)
        .with_polarity("excuse", PolarityPos::Verb, Strength::Weak, Polarity::Positive)
        .with_polarity("deni", PolarityPos::Any, Strength::Weak, Polarity::Negative)
        .with_polarity("plain", PolarityPos::Any, Strength::Weak, Polarity::Neutral)
        .with_slang("btw", "by the way")
        .with_slang("pls", "please")
        .with_slang("gr8", "great")
        .with_slang("2", "to")
        .with_slang("u", "you")
        .with_normalization("foudation", "foundation")
        .with_normalization("forgt", "forgot")
        .with_emoticon(":-)", Polarity::Positive)
        .with_emoticon(":)", Polarity::Positive)
        .with_emoticon("=)", Polarity::Positive)
        .with_emoticon(":]", Polarity::Positive)
        .with_emoticon(";-)", Polarity::Positive)
        .with_emoticon(";)", Polarity::Positive)
        .with_emoticon(":-(", Polarity::Negative)
        .with_emoticon(":(", Polarity::Negative)
        .with_emoticon("=(", Polarity::Negative)
        .with_emoticon(":[", Polarity::Negative)
        .with_stopwords([
            "the", "a", "an", "by", "of", "to", "is", "are", "was", "not", "no", "and",
            "rt", "please", "you", "in", "on", "at", "this", "that", "it",
        ])
        .with_wordlist([
            "kill", "the", "bill", "pass", "it", "health", "care", "go", "vote", "no",
            "day", "tax", "win",
        ]);

    let tags = TagLexicon::from_entries([
        ("dog", Pos::Noun),
        ("bill", Pos::Noun),
        ("health", Pos::Noun),
        ("care", Pos::Noun),
        ("excuse", Pos::Noun),
        ("good", Pos::Adj),
        ("bad", Pos::Adj),
        ("excellent", Pos::Adj),
        ("terrible", Pos::Adj),
        ("kill", Pos::Verb),
        ("vote", Pos::Verb),
        ("go", Pos::Verb),
        ("the", Pos::Other),
    ]);

    (lex, tags)
}
