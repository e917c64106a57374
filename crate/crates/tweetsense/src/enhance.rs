//! Topic-specific sentiment-term harvesting and signed sentiment-strength
//! scoring.
//!
//! Harvesting takes the top slice of one predicted-class term ranking and
//! removes every term that also appears in the (larger) top slices of the
//! other two classes. Strength scoring combines capitalization and
//! polarity-word counts into an integer in [-5, 5], 0 for neutral.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::features::FeatureVector;
use crate::normalize::NormalizedTweet;

/// Term frequencies for one predicted-class tweet collection, with a
/// deterministic ranking: count descending, ties lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermCollection {
    pub class: Label,
    pub term_freq: BTreeMap<String, u32>,
    pub ranked: Vec<String>,
}

/// Top-slice sizes for the source class and the other two classes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarvestConfig {
    /// Fraction of the source ranking to keep, in (0, 1].
    pub threshold1: f64,
    /// Fraction of each other ranking to subtract, in (0, 1].
    pub threshold2: f64,
}

/// The paper's operating point: top 10% of the source class against the
/// top 60% of the other two.
impl Default for HarvestConfig {
    fn default() -> Self {
        HarvestConfig {
            threshold1: 0.10,
            threshold2: 0.60,
        }
    }
}

impl HarvestConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("threshold1", self.threshold1), ("threshold2", self.threshold2)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be in (0, 1], got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Counts normalized token frequencies over tweets sharing one predicted
/// class.
pub fn rank_frequencies(class: Label, tweets: &[NormalizedTweet]) -> TermCollection {
    let mut term_freq: BTreeMap<String, u32> = BTreeMap::new();
    for tweet in tweets {
        for token in &tweet.tokens {
            *term_freq.entry(token.surface.clone()).or_insert(0) += 1;
        }
    }
    let mut ranked: Vec<String> = term_freq.keys().cloned().collect();
    ranked.sort_by(|a, b| term_freq[b].cmp(&term_freq[a]).then(a.cmp(b)));
    TermCollection {
        class,
        term_freq,
        ranked,
    }
}

/// Top ⌈threshold·len⌉ of a ranking; a positive threshold on a non-empty
/// ranking always takes at least one term.
fn top_slice(ranked: &[String], threshold: f64) -> &[String] {
    let take = ((threshold * ranked.len() as f64).ceil() as usize).min(ranked.len());
    &ranked[..take]
}

/// Terms in the source class's top slice that appear in neither of the
/// other classes' top slices, in source rank order with their source
/// frequencies.
pub fn harvest_terms(
    src: &TermCollection,
    other1: &TermCollection,
    other2: &TermCollection,
    cfg: &HarvestConfig,
) -> Result<Vec<(String, u32)>> {
    cfg.validate()?;
    let src_top = top_slice(&src.ranked, cfg.threshold1);
    let o1_top: std::collections::HashSet<&String> =
        top_slice(&other1.ranked, cfg.threshold2).iter().collect();
    let o2_top: std::collections::HashSet<&String> =
        top_slice(&other2.ranked, cfg.threshold2).iter().collect();
    Ok(src_top
        .iter()
        .filter(|term| !o1_top.contains(term) && !o2_top.contains(term))
        .map(|term| (term.clone(), src.term_freq[term]))
        .collect())
}

/// Signed sentiment strength for one tweet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrengthScore {
    /// Signed strength in [-5, 5]; 0 whenever the prediction is neutral.
    pub value: i8,
    /// Unnormalized contribution sum.
    pub raw: u32,
    /// The five contributing counts: capitalized words, strong positive,
    /// strong negative, weak positive, weak negative.
    pub components: [u32; 5],
    /// The predicted class the sign came from.
    pub polarity: Label,
}

/// Combines the five counts into a signed strength.
///
/// `raw = caps + 2·(strong_pos + strong_neg) + (weak_pos + weak_neg)`;
/// the magnitude is `min(5, round(5·raw/R))` where `R` is the saturation
/// calibration constant, and the sign follows the predicted class.
pub fn strength_score(fv: &FeatureVector, predicted: Label, r: f64) -> Result<StrengthScore> {
    if !(r >= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "calibration constant R must be ≥ 1, got {r}"
        )));
    }
    let components = [
        fv.f7,
        fv.f2.strong_pos,
        fv.f2.strong_neg,
        fv.f2.weak_pos,
        fv.f2.weak_neg,
    ];
    let raw = fv.f7 + 2 * (fv.f2.strong_pos + fv.f2.strong_neg) + fv.f2.weak_pos + fv.f2.weak_neg;
    let magnitude = ((5.0 * raw as f64 / r).round() as i64).min(5) as i8;
    let value = match predicted {
        Label::Positive => magnitude,
        Label::Negative => -magnitude,
        _ => 0,
    };
    Ok(StrengthScore {
        value,
        raw,
        components,
        polarity: predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::{PolarityCounts, Token};
    use crate::tagging::Pos;
    use Label::{Negative as N, Neutral as U, Positive as P};

    fn nt(surfaces: &[&str]) -> NormalizedTweet {
        NormalizedTweet {
            tweet_id: "t".into(),
            tokens: surfaces
                .iter()
                .map(|s| Token {
                    surface: s.to_string(),
                    was_capitalized: false,
                    negated: false,
                    pos: Pos::Noun,
                })
                .collect(),
            artifacts: Default::default(),
        }
    }

    fn collection(class: Label, ranked_with_freq: &[(&str, u32)]) -> TermCollection {
        TermCollection {
            class,
            term_freq: ranked_with_freq
                .iter()
                .map(|(t, f)| (t.to_string(), *f))
                .collect(),
            ranked: ranked_with_freq.iter().map(|(t, _)| t.to_string()).collect(),
        }
    }

    #[test]
    fn rank_empty_collection() {
        let c = rank_frequencies(N, &[]);
        assert!(c.term_freq.is_empty());
        assert!(c.ranked.is_empty());
    }

    #[test]
    fn rank_by_count_descending() {
        let tweets = vec![nt(&["a", "a", "b"]), nt(&["a"])];
        let c = rank_frequencies(N, &tweets);
        assert_eq!(c.ranked, ["a", "b"]);
        assert_eq!(c.term_freq["a"], 3);
        assert_eq!(c.term_freq["b"], 1);
    }

    #[test]
    fn rank_ties_break_lexicographically() {
        let tweets = vec![nt(&["b", "a"]), nt(&["a", "b"])];
        let c = rank_frequencies(N, &tweets);
        assert_eq!(c.ranked, ["a", "b"], "equal counts sort by term");
    }

    #[test]
    fn harvest_subtracts_other_top_slices() {
        let src = collection(N, &[("bad", 9), ("vile", 5)]);
        let o1 = collection(P, &[("bad", 7), ("fine", 3)]);
        let o2 = collection(U, &[("meh", 2)]);
        let cfg = HarvestConfig {
            threshold1: 1.0,
            threshold2: 1.0,
        };
        let got = harvest_terms(&src, &o1, &o2, &cfg).unwrap();
        assert_eq!(got, vec![("vile".to_string(), 5)]);
    }

    #[test]
    fn harvest_empty_source_is_empty() {
        let src = collection(N, &[]);
        let o1 = collection(P, &[("x", 1)]);
        let o2 = collection(U, &[]);
        let got = harvest_terms(&src, &o1, &o2, &HarvestConfig::default()).unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn harvest_default_thresholds_are_papers() {
        let cfg = HarvestConfig::default();
        assert_eq!(cfg.threshold1, 0.10);
        assert_eq!(cfg.threshold2, 0.60);
    }

    #[test]
    fn harvest_ceil_takes_at_least_one_term() {
        let src = collection(N, &[("lie", 15), ("sad", 7), ("tax", 4)]);
        let o1 = collection(P, &[("win", 3)]);
        let o2 = collection(U, &[("day", 2)]);
        // ⌈0.1 · 3⌉ = 1 term from the source
        let got = harvest_terms(&src, &o1, &o2, &HarvestConfig::default()).unwrap();
        assert_eq!(got, vec![("lie".to_string(), 15)]);
    }

    #[test]
    fn harvest_rejects_bad_thresholds() {
        let c = collection(N, &[]);
        for (t1, t2) in [(0.0, 0.5), (0.5, 0.0), (1.5, 0.5), (0.5, -0.1)] {
            let cfg = HarvestConfig {
                threshold1: t1,
                threshold2: t2,
            };
            assert!(harvest_terms(&c, &c, &c, &cfg).is_err(), "({t1}, {t2})");
        }
    }

    fn fv(caps: u32, counts: PolarityCounts) -> FeatureVector {
        FeatureVector {
            f7: caps,
            f2: counts,
            ..Default::default()
        }
    }

    #[test]
    fn strength_neutral_is_zero() {
        let heavy = fv(
            10,
            PolarityCounts {
                strong_pos: 4,
                strong_neg: 4,
                weak_pos: 4,
                weak_neg: 4,
            },
        );
        let s = strength_score(&heavy, U, 10.0).unwrap();
        assert_eq!(s.value, 0);
        assert_eq!(s.polarity, U);
    }

    #[test]
    fn strength_saturates_at_five() {
        let aggressive = fv(
            12,
            PolarityCounts {
                strong_neg: 3,
                ..Default::default()
            },
        );
        let s = strength_score(&aggressive, N, 10.0).unwrap();
        assert!(s.raw >= 10);
        assert_eq!(s.value, -5, "raw ≥ R saturates the magnitude");
    }

    #[test]
    fn strength_zero_counts_positive_label() {
        let s = strength_score(&fv(0, PolarityCounts::default()), P, 10.0).unwrap();
        assert_eq!(s.value, 0);
        assert_eq!(s.raw, 0);
        assert_eq!(s.polarity, P);
    }

    #[test]
    fn strength_weights_strong_double() {
        let strong = fv(
            0,
            PolarityCounts {
                strong_pos: 1,
                ..Default::default()
            },
        );
        let weak = fv(
            0,
            PolarityCounts {
                weak_pos: 1,
                ..Default::default()
            },
        );
        assert_eq!(strength_score(&strong, P, 10.0).unwrap().raw, 2);
        assert_eq!(strength_score(&weak, P, 10.0).unwrap().raw, 1);
    }

    #[test]
    fn strength_rejects_small_r() {
        assert!(strength_score(&fv(0, PolarityCounts::default()), P, 0.5).is_err());
    }

    /// Materialize the slices as sets and subtract, for comparison.
    pub(super) fn brute_force_harvest(
        src: &TermCollection,
        other1: &TermCollection,
        other2: &TermCollection,
        cfg: &HarvestConfig,
    ) -> Vec<(String, u32)> {
        let take = |c: &TermCollection, t: f64| -> Vec<String> {
            let k = ((t * c.ranked.len() as f64).ceil() as usize).min(c.ranked.len());
            c.ranked[..k].to_vec()
        };
        let src_top = take(src, cfg.threshold1);
        let mut others: std::collections::HashSet<String> = take(other1, cfg.threshold2)
            .into_iter()
            .collect();
        others.extend(take(other2, cfg.threshold2));
        src_top
            .into_iter()
            .filter(|t| !others.contains(t))
            .map(|t| {
                let f = src.term_freq[&t];
                (t, f)
            })
            .collect()
    }

    proptest::proptest! {
        #[test]
        fn harvest_matches_brute_force(seed in 0u64..100) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let vocab: Vec<String> = (0..20).map(|i| format!("w{i:02}")).collect();
            let mut random_collection = |class: Label| {
                let n = rng.random_range(0..12usize);
                let mut freq = BTreeMap::new();
                for _ in 0..n {
                    let term = vocab[rng.random_range(0..vocab.len())].clone();
                    *freq.entry(term).or_insert(0u32) += rng.random_range(1..6u32);
                }
                let mut ranked: Vec<String> = freq.keys().cloned().collect();
                ranked.sort_by(|a, b| freq[b].cmp(&freq[a]).then(a.cmp(b)));
                TermCollection { class, term_freq: freq, ranked }
            };
            let src = random_collection(N);
            let o1 = random_collection(P);
            let o2 = random_collection(U);
            let cfg = HarvestConfig {
                threshold1: rng.random_range(1..=10) as f64 / 10.0,
                threshold2: rng.random_range(1..=10) as f64 / 10.0,
            };
            let got = harvest_terms(&src, &o1, &o2, &cfg).unwrap();
            let expected = brute_force_harvest(&src, &o1, &o2, &cfg);
            proptest::prop_assert_eq!(got, expected);
        }

        #[test]
        fn harvest_monotone_in_thresholds(seed in 0u64..50) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let vocab: Vec<String> = (0..15).map(|i| format!("w{i:02}")).collect();
            let mut random_collection = |class: Label| {
                let n = rng.random_range(1..10usize);
                let mut freq = BTreeMap::new();
                for _ in 0..n {
                    let term = vocab[rng.random_range(0..vocab.len())].clone();
                    *freq.entry(term).or_insert(0u32) += 1;
                }
                let mut ranked: Vec<String> = freq.keys().cloned().collect();
                ranked.sort_by(|a, b| freq[b].cmp(&freq[a]).then(a.cmp(b)));
                TermCollection { class, term_freq: freq, ranked }
            };
            let src = random_collection(N);
            let o1 = random_collection(P);
            let o2 = random_collection(U);
            let low = HarvestConfig { threshold1: 0.3, threshold2: 0.3 };
            let hi_t2 = HarvestConfig { threshold1: 0.3, threshold2: 0.9 };
            let hi_t1 = HarvestConfig { threshold1: 0.9, threshold2: 0.3 };
            let base = harvest_terms(&src, &o1, &o2, &low).unwrap();
            let more_subtracted = harvest_terms(&src, &o1, &o2, &hi_t2).unwrap();
            let more_kept = harvest_terms(&src, &o1, &o2, &hi_t1).unwrap();
            // growing threshold2 never grows the result
            proptest::prop_assert!(more_subtracted.len() <= base.len());
            // growing threshold1 never shrinks it
            proptest::prop_assert!(more_kept.len() >= base.len());
            // and the smaller result is a subset in both cases
            let base_set: std::collections::HashSet<&String> =
                base.iter().map(|(t, _)| t).collect();
            for (t, _) in &more_subtracted {
                proptest::prop_assert!(base_set.contains(t));
            }
        }

        #[test]
        fn strength_monotone_and_bounded(
            caps in 0u32..6, sp in 0u32..6, sn in 0u32..6, wp in 0u32..6, wn in 0u32..6
        ) {
            let counts = PolarityCounts {
                strong_pos: sp, strong_neg: sn, weak_pos: wp, weak_neg: wn,
            };
            let base = strength_score(&fv(caps, counts), N, 10.0).unwrap();
            proptest::prop_assert!(base.value.abs() <= 5);
            proptest::prop_assert!(base.value <= 0);
            // bumping any single component never lowers the magnitude
            for bump in 0..5 {
                let mut c2 = counts;
                let mut caps2 = caps;
                match bump {
                    0 => caps2 += 1,
                    1 => c2.strong_pos += 1,
                    2 => c2.strong_neg += 1,
                    3 => c2.weak_pos += 1,
                    _ => c2.weak_neg += 1,
                }
                let bumped = strength_score(&fv(caps2, c2), N, 10.0).unwrap();
                proptest::prop_assert!(bumped.value.abs() >= base.value.abs());
            }
        }
    }
}
