//! Coarse part-of-speech tagging: noun / adj / adv / verb / other.
//!
//! A most-frequent-tag word lexicon (`tags.tsv` in the lexicon directory)
//! backed by ordered suffix rules, defaulting to noun for unknown
//! open-class words. Tagging is token-local, so it is order-equivariant;
//! only the coarse category counts feed the feature extractor.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coarse POS tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pos {
    Noun,
    Adj,
    Adv,
    Verb,
    Other,
}

impl Pos {
    fn parse(s: &str) -> Option<Pos> {
        match s {
            "noun" => Some(Pos::Noun),
            "adj" => Some(Pos::Adj),
            "adv" => Some(Pos::Adv),
            "verb" => Some(Pos::Verb),
            "other" => Some(Pos::Other),
            _ => None,
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pos::Noun => "noun",
            Pos::Adj => "adj",
            Pos::Adv => "adv",
            Pos::Verb => "verb",
            Pos::Other => "other",
        })
    }
}

/// Anything that can assign a coarse tag to a single token. The pipeline
/// takes this as an interface so a statistical tagger can be swapped in.
pub trait Tagger {
    fn tag_token(&self, token: &str) -> Pos;
}

/// Word-lexicon tagger with suffix-rule fallback.
#[derive(Clone, Debug)]
pub struct TagLexicon {
    words: HashMap<String, Pos>,
    /// Applied longest-suffix-first; a rule only fires on words strictly
    /// longer than its suffix.
    suffix_rules: Vec<(String, Pos)>,
}

impl Default for TagLexicon {
    fn default() -> Self {
        TagLexicon {
            words: HashMap::new(),
            suffix_rules: default_suffix_rules(),
        }
    }
}

fn default_suffix_rules() -> Vec<(String, Pos)> {
    let rules = [
        ("ly", Pos::Adv),
        ("ous", Pos::Adj),
        ("ful", Pos::Adj),
        ("ive", Pos::Adj),
        ("able", Pos::Adj),
        ("ible", Pos::Adj),
        ("less", Pos::Adj),
        ("ing", Pos::Verb),
        ("ed", Pos::Verb),
        ("ize", Pos::Verb),
    ];
    let mut v: Vec<(String, Pos)> = rules
        .iter()
        .map(|(s, p)| (s.to_string(), *p))
        .collect();
    v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
    v
}

impl TagLexicon {
    /// Builds a lexicon from (word, tag) pairs with the default suffix
    /// rules.
    pub fn from_entries<'a, I: IntoIterator<Item = (&'a str, Pos)>>(entries: I) -> TagLexicon {
        let mut tl = TagLexicon::default();
        for (w, p) in entries {
            tl.words.insert(w.to_lowercase(), p);
        }
        tl
    }

    /// Loads `tags.tsv` (word⟨TAB⟩pos) from a lexicon directory.
    pub fn load(dir: impl AsRef<Path>) -> Result<TagLexicon> {
        let path = dir.as_ref().join("tags.tsv");
        if !path.is_file() {
            return Err(Error::MissingLexicon("tags.tsv".into()));
        }
        let content = fs::read_to_string(&path)
            .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        let mut tl = TagLexicon::default();
        for (idx, line) in content.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let malformed = || Error::MalformedLexiconRow {
                name: "tags.tsv".into(),
                line: idx + 1,
            };
            let (word, pos) = line.split_once('\t').ok_or_else(malformed)?;
            let pos = Pos::parse(pos.trim()).ok_or_else(malformed)?;
            tl.words.insert(word.trim().to_lowercase(), pos);
        }
        Ok(tl)
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }
}

impl Tagger for TagLexicon {
    fn tag_token(&self, token: &str) -> Pos {
        if let Some(pos) = self.words.get(token) {
            return *pos;
        }
        for (suffix, pos) in &self.suffix_rules {
            if token.len() > suffix.len() && token.ends_with(suffix.as_str()) {
                return *pos;
            }
        }
        Pos::Noun
    }
}

/// Tags each token, preserving length and order.
pub fn pos_tag<T: Tagger + ?Sized>(tokens: &[String], tagger: &T) -> Vec<(String, Pos)> {
    tokens
        .iter()
        .map(|t| (t.clone(), tagger.tag_token(t)))
        .collect()
}
