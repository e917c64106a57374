//! Tweet sentiment classification beyond the tweet text.
//!
//! Short, noisy tweets defeat off-the-shelf sentiment tools, so this
//! crate normalizes them first (slang expansion, misspelling
//! rectification, hashtag segmentation, emoticon handling), then
//! classifies with multinomial naive Bayes or a linear SVM over nine
//! feature families — POS counts, prior word polarity with negation
//! flips, retweet/mention flags, emoticon counts, landing-page sentiment
//! fractions for embedded urls, hashtag and capitalization counts,
//! stacked tf-idf predictions, and user/target categoricals. On top of
//! classification it harvests topic-specific sentiment terms and scores
//! signed sentiment strength.
//!
//! The `book/` directory holds a guide whose code snippets compile and
//! run as part of `cargo test --doc`.
//!
//! ```
//! use tweetsense::lexicons::LexiconBundle;
//! use tweetsense::normalize::segment_hashtag;
//!
//! let lex = LexiconBundle::empty().with_wordlist(["kill", "the", "bill"]);
//! assert_eq!(segment_hashtag("killthebill", lex.wordlist()), ["kill", "the", "bill"]);
//! ```

pub mod classify;
pub mod cli;
pub mod corpus;
pub mod enhance;
pub mod eval;
pub mod features;
pub mod lexicons;
pub mod normalize;
pub mod pipeline;
pub mod tagging;
pub mod url_context;

mod error;

pub use error::{Error, Result};

// The book chapters double as doc-tests so the guide can never drift
// from the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lexicons.md")]
    mod lexicons {}
    #[doc = include_str!("../../../book/src/normalization.md")]
    mod normalization {}
    #[doc = include_str!("../../../book/src/features.md")]
    mod features {}
    #[doc = include_str!("../../../book/src/classifiers.md")]
    mod classifiers {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
    #[doc = include_str!("../../../book/src/enhancements.md")]
    mod enhancements {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
