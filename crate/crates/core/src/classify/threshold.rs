use serde::{Deserialize, Serialize};

use super::gaussian::{
    classify_mlc_1d, classify_mlc_2d, fit_gaussian_1d, fit_gaussian_2d, pep_threshold, Gaussian1D, Label,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mlc,
    Heuristic,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Mlc => "mlc",
            Method::Heuristic => "heuristic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Counts {
    pub n_s: usize,
    pub n_g: usize,
    pub errors_s: usize,
    pub errors_g: usize,
}

impl Counts {
    pub fn error_percent(&self) -> f64 {
        100.0 * (self.errors_s + self.errors_g) as f64 / (self.n_s + self.n_g) as f64
    }

    fn tally(&mut self, truth: Label, predicted: Label) {
        match truth {
            Label::Singleton => {
                self.n_s += 1;
                self.errors_s += usize::from(predicted != truth);
            }
            Label::Geminate => {
                self.n_g += 1;
                self.errors_g += usize::from(predicted != truth);
            }
        }
    }
}

/// Result of fitting and scoring one classifier on one data set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub threshold: Option<f64>,
    pub counts: Counts,
}

fn non_empty(values_s: usize, values_g: usize) -> Result<()> {
    if values_s == 0 || values_g == 0 {
        return Err(Error::EmptyGroup(format!("need both forms, got {values_s} singleton and {values_g} geminate")));
    }
    Ok(())
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Precondition("non-finite value in sample".into()));
    }
    Ok(())
}

/// Errors of the rule "x >= t is geminate".
pub fn threshold_counts(values_s: &[f64], values_g: &[f64], t: f64) -> Counts {
    Counts {
        n_s: values_s.len(),
        n_g: values_g.len(),
        errors_s: values_s.iter().filter(|&&x| x >= t).count(),
        errors_g: values_g.iter().filter(|&&x| x < t).count(),
    }
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Exhaustive sweep of the rule "x >= t is geminate" over all distinct partitions
/// of the pooled sample. Returns the lowest-error threshold, smallest on ties.
pub fn heuristic_threshold(values_s: &[f64], values_g: &[f64]) -> Result<(f64, f64)> {
    let (t, counts) = sweep(values_s, values_g)?;
    Ok((t, counts.error_percent()))
}

fn sweep(values_s: &[f64], values_g: &[f64]) -> Result<(f64, Counts)> {
    non_empty(values_s.len(), values_g.len())?;
    check_finite(values_s)?;
    check_finite(values_g)?;
    let mut pooled: Vec<(f64, Label)> =
        values_s.iter().map(|&x| (x, Label::Singleton)).chain(values_g.iter().map(|&x| (x, Label::Geminate))).collect();
    pooled.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (lo, hi) = (pooled[0].0, pooled[pooled.len() - 1].0);
    let span = hi - lo;
    let margin = if span > 0.0 {
        span / 2.0
    } else if lo != 0.0 {
        lo.abs() / 2.0
    } else {
        1.0
    };

    // Everything predicted geminate below the minimum.
    let mut counts = Counts { n_s: values_s.len(), n_g: values_g.len(), errors_s: values_s.len(), errors_g: 0 };
    let mut best = (lo - margin, counts);
    let mut i = 0;
    while i < pooled.len() {
        let v = pooled[i].0;
        while i < pooled.len() && pooled[i].0 == v {
            match pooled[i].1 {
                Label::Singleton => counts.errors_s -= 1,
                Label::Geminate => counts.errors_g += 1,
            }
            i += 1;
        }
        let t = if i < pooled.len() { 0.5 * (v + pooled[i].0) } else { hi + margin };
        if counts.errors_s + counts.errors_g < best.1.errors_s + best.1.errors_g {
            best = (t, counts);
        }
    }
    Ok(best)
}

/// Error percentage of the rule "x >= t is geminate" at each grid point.
pub fn error_curve(values_s: &[f64], values_g: &[f64], thresholds: &[f64]) -> Result<Vec<(f64, f64)>> {
    non_empty(values_s.len(), values_g.len())?;
    if thresholds.is_empty() {
        return Err(Error::Precondition("empty threshold grid".into()));
    }
    if thresholds.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Precondition("threshold grid must be strictly ascending".into()));
    }
    let (s, g) = (sorted(values_s), sorted(values_g));
    let total = (s.len() + g.len()) as f64;
    Ok(thresholds
        .iter()
        .map(|&t| {
            let errors_s = s.len() - s.partition_point(|&x| x < t);
            let errors_g = g.partition_point(|&x| x < t);
            (t, 100.0 * (errors_s + errors_g) as f64 / total)
        })
        .collect())
}

/// True when the singleton group has the larger mean, so the cue is
/// evaluated negated and the threshold rule reads "x <= t is geminate".
fn descending(values_s: &[f64], values_g: &[f64]) -> bool {
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    mean(values_s) > mean(values_g)
}

fn negate(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| -x).collect()
}

/// PEP of two fitted models in either orientation.
pub fn oriented_pep(g_s: &Gaussian1D, g_g: &Gaussian1D) -> Option<f64> {
    if g_s.mean < g_g.mean {
        pep_threshold(g_s, g_g).ok()
    } else if g_s.mean > g_g.mean {
        pep_threshold(&g_s.negated(), &g_g.negated()).ok().map(|t| -t)
    } else {
        None
    }
}

/// Fits on all data and scores on the same data. Cues whose singleton mean is
/// larger are swept in the opposite direction.
pub fn resubstitution_error(values_s: &[f64], values_g: &[f64], method: Method) -> Result<Outcome> {
    non_empty(values_s.len(), values_g.len())?;
    match method {
        Method::Mlc => {
            let gs = fit_gaussian_1d(values_s)?;
            let gg = fit_gaussian_1d(values_g)?;
            let mut counts = Counts::default();
            for &x in values_s {
                counts.tally(Label::Singleton, classify_mlc_1d(&gs, &gg, x));
            }
            for &x in values_g {
                counts.tally(Label::Geminate, classify_mlc_1d(&gs, &gg, x));
            }
            Ok(Outcome { threshold: oriented_pep(&gs, &gg), counts })
        }
        Method::Heuristic => {
            if descending(values_s, values_g) {
                let (t, counts) = sweep(&negate(values_s), &negate(values_g))?;
                Ok(Outcome { threshold: Some(-t), counts })
            } else {
                let (t, counts) = sweep(values_s, values_g)?;
                Ok(Outcome { threshold: Some(t), counts })
            }
        }
    }
}

pub fn resubstitution_error_2d(pairs_s: &[[f64; 2]], pairs_g: &[[f64; 2]]) -> Result<Outcome> {
    non_empty(pairs_s.len(), pairs_g.len())?;
    let gs = fit_gaussian_2d(pairs_s)?;
    let gg = fit_gaussian_2d(pairs_g)?;
    let mut counts = Counts::default();
    for &p in pairs_s {
        counts.tally(Label::Singleton, classify_mlc_2d(&gs, &gg, p));
    }
    for &p in pairs_g {
        counts.tally(Label::Geminate, classify_mlc_2d(&gs, &gg, p));
    }
    Ok(Outcome { threshold: None, counts })
}
