//! Per-class precision / recall / F1 reporting and the incremental
//! feature ablation harness.
//!
//! The report follows the usual layout: one row per class plus an
//! avg/total row. The headline average is support-weighted; the
//! unweighted macro average is carried alongside because the choice
//! changes headline numbers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{Label, SENTIMENT_CLASSES};
use crate::error::{Error, Result};
use crate::features::FeatureMask;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AvgMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Evaluation report over the three sentiment classes.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub per_class: BTreeMap<Label, ClassMetrics>,
    /// Support-weighted averages (the headline "avg/total" row).
    pub weighted_avg: AvgMetrics,
    /// Unweighted averages over the three classes.
    pub macro_avg: AvgMetrics,
    /// `confusion[gold][pred]`, rows and columns in
    /// [`SENTIMENT_CLASSES`] order; row sums equal per-class support.
    pub confusion: [[usize; 3]; 3],
    /// Zero-denominator conditions worth surfacing.
    pub notes: Vec<String>,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl EvalReport {
    /// Derives every metric from a confusion matrix.
    pub fn from_confusion(confusion: [[usize; 3]; 3]) -> EvalReport {
        let mut per_class = BTreeMap::new();
        let mut notes = Vec::new();
        let total: usize = confusion.iter().flatten().sum();
        let mut weighted = AvgMetrics::default();
        let mut macro_avg = AvgMetrics::default();

        for (k, class) in SENTIMENT_CLASSES.iter().enumerate() {
            let tp = confusion[k][k];
            let support: usize = confusion[k].iter().sum();
            let predicted: usize = confusion.iter().map(|row| row[k]).sum();
            if predicted == 0 {
                notes.push(format!("no predictions of class {class}; precision set to 0"));
            }
            let precision = ratio(tp, predicted);
            let recall = ratio(tp, support);
            let f1 = if precision + recall == 0.0 {
                0.0
            } else {
                2.0 * precision * recall / (precision + recall)
            };
            weighted.precision += precision * support as f64;
            weighted.recall += recall * support as f64;
            weighted.f1 += f1 * support as f64;
            macro_avg.precision += precision / SENTIMENT_CLASSES.len() as f64;
            macro_avg.recall += recall / SENTIMENT_CLASSES.len() as f64;
            macro_avg.f1 += f1 / SENTIMENT_CLASSES.len() as f64;
            per_class.insert(
                *class,
                ClassMetrics {
                    precision,
                    recall,
                    f1,
                    support,
                },
            );
        }
        if total > 0 {
            weighted.precision /= total as f64;
            weighted.recall /= total as f64;
            weighted.f1 /= total as f64;
        }
        EvalReport {
            per_class,
            weighted_avg: weighted,
            macro_avg,
            confusion,
            notes,
        }
    }

    /// Renders the aligned text table.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<10} {:>9} {:>9} {:>9} {:>9}\n",
            "", "precision", "recall", "f1", "support"
        ));
        for class in SENTIMENT_CLASSES {
            let m = &self.per_class[&class];
            out.push_str(&format!(
                "{:<10} {:>9.2} {:>9.2} {:>9.2} {:>9}\n",
                class.name(),
                m.precision,
                m.recall,
                m.f1,
                m.support
            ));
        }
        let total: usize = self.per_class.values().map(|m| m.support).sum();
        out.push_str(&format!(
            "{:<10} {:>9.2} {:>9.2} {:>9.2} {:>9}\n",
            "avg/total",
            self.weighted_avg.precision,
            self.weighted_avg.recall,
            self.weighted_avg.f1,
            total
        ));
        out
    }
}

/// Computes the report for predictions against gold labels.
pub fn evaluate(preds: &[Label], gold: &[Label]) -> Result<EvalReport> {
    if preds.len() != gold.len() {
        return Err(Error::LengthMismatch {
            preds: preds.len(),
            gold: gold.len(),
        });
    }
    let mut confusion = [[0usize; 3]; 3];
    for (p, g) in preds.iter().zip(gold) {
        let (Some(pi), Some(gi)) = (p.class_index(), g.class_index()) else {
            return Err(Error::InvalidConfig(format!(
                "evaluate expects sentiment labels, got ({p}, {g})"
            )));
        };
        confusion[gi][pi] += 1;
    }
    Ok(EvalReport::from_confusion(confusion))
}

/// The Table-4 style progression of feature families.
pub fn table4_masks() -> Vec<FeatureMask> {
    vec![
        FeatureMask::parse("f1,f2").expect("static mask"),
        FeatureMask::parse("f1,f2,f4").expect("static mask"),
        FeatureMask::parse("f1,f2,f4,f6,f7").expect("static mask"),
        FeatureMask::parse("f1,f2,f4,f5,f6,f7").expect("static mask"),
        FeatureMask::parse("f1,f2,f3,f4,f5,f6,f7,f9").expect("static mask"),
        FeatureMask::parse("f1,f2,f3,f4,f5,f6,f7,f8,f9").expect("static mask"),
    ]
}

/// Runs `run` for every mask in order and evaluates each row.
///
/// The closure trains on the train split restricted to the mask's
/// families and returns (predictions, gold) on the test split.
pub fn ablation_table<F>(
    masks: &[FeatureMask],
    mut run: F,
) -> Result<Vec<(FeatureMask, EvalReport)>>
where
    F: FnMut(&FeatureMask) -> Result<(Vec<Label>, Vec<Label>)>,
{
    if masks.is_empty() {
        return Err(Error::InvalidConfig("ablation needs at least one mask".into()));
    }
    let mut rows = Vec::with_capacity(masks.len());
    for mask in masks {
        let (preds, gold) = run(mask)?;
        rows.push((*mask, evaluate(&preds, &gold)?));
    }
    Ok(rows)
}

/// Renders ablation rows as an aligned table keyed by mask.
pub fn ablation_to_table(rows: &[(FeatureMask, EvalReport)]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<28} {:>6} {:>6} {:>6}\n",
        "features", "prec", "recall", "f1"
    ));
    for (mask, report) in rows {
        out.push_str(&format!(
            "+{:<27} {:>6.2} {:>6.2} {:>6.2}\n",
            mask.to_string(),
            report.weighted_avg.precision,
            report.weighted_avg.recall,
            report.weighted_avg.f1
        ));
    }
    out
}
