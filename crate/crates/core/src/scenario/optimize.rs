use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{evaluate_link, Scenario};
use crate::error::{ensure, Error, Result};

/// Candidate signal and decoy intensities. Every pair with `mu1 > mu2 > 0`
/// is evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntensityGrid {
    pub mu1: Vec<f64>,
    pub mu2: Vec<f64>,
}

impl IntensityGrid {
    /// `n` evenly spaced values over each closed range.
    pub fn linspace(mu1: (f64, f64), mu2: (f64, f64), n: usize) -> Self {
        let span = |(lo, hi): (f64, f64)| -> Vec<f64> {
            if n <= 1 {
                return vec![lo];
            }
            (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
        };
        Self {
            mu1: span(mu1),
            mu2: span(mu2),
        }
    }

    fn pairs(&self) -> Vec<(f64, f64)> {
        self.mu1
            .iter()
            .flat_map(|&a| self.mu2.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| b > 0.0 && a > b && a.is_finite())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntensityOptimum {
    pub mu1: f64,
    pub mu2: f64,
    pub skr_per_pulse: f64,
}

/// Grid search for the intensities that maximise the key rate per pulse at
/// one distance. Ties go to the larger `mu1`, then the larger `mu2`.
pub fn optimize_intensities(
    scenario: &Scenario,
    distance_km: f64,
    grid: &IntensityGrid,
) -> Result<IntensityOptimum> {
    let pairs = grid.pairs();
    ensure(!pairs.is_empty(), "intensity grid", || {
        "no pair satisfies mu1 > mu2 > 0".into()
    })?;
    let results: Vec<Result<IntensityOptimum>> = pairs
        .into_par_iter()
        .map(|(mu1, mu2)| {
            let mut s = scenario.clone();
            s.source.mu1 = mu1;
            s.source.mu2 = mu2;
            let r = evaluate_link(&s, distance_km)?;
            Ok(IntensityOptimum {
                mu1,
                mu2,
                skr_per_pulse: r.skr_per_pulse,
            })
        })
        .collect();

    let mut best: Option<IntensityOptimum> = None;
    for r in results {
        let cand = r?;
        if cand.skr_per_pulse <= 0.0 {
            continue;
        }
        let better = match best {
            None => true,
            Some(b) => (cand.skr_per_pulse, cand.mu1, cand.mu2) > (b.skr_per_pulse, b.mu1, b.mu2),
        };
        if better {
            best = Some(cand);
        }
    }
    best.ok_or(Error::EmptyFeasibleSet)
}
