//! Pulse-level Monte Carlo of the detection chain.
//!
//! Each pulse draws Alice's basis and intensity, a Poisson photon number,
//! and routes every photon independently through the passive splitter to
//! the Z or X line, where it is detected with that line's end-to-end
//! efficiency. Each line's detector also fires on dark counts, and a click
//! within the dead time of the previous registered click is lost.
//!
//! Pulses are generated in fixed chunks, each with its own ChaCha stream
//! derived from the seed, so the result does not depend on how many worker
//! threads run. Dead time is applied afterwards in a single ordered pass.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::detstats::{Cells, DetectionModel, ExpectedCounts, Intensity, PulseObservables, SourceModel};
use crate::error::{ensure, Result};
use crate::receiver::{dark_click_probability, Basis, ReceiverModel};

const CHUNK_PULSES: u64 = 1 << 16;

/// Flag threshold for |z|.
pub const Z_SCORE_LIMIT: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub seed: u64,
    pub n_pulses: u64,
    pub source: SourceModel,
    pub receiver: ReceiverModel,
    pub channel_transmittance: f64,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        ensure(self.n_pulses >= 1, "pulse count", || "at least one pulse is required".into())?;
        ensure(
            (0.0..=1.0).contains(&self.channel_transmittance),
            "channel transmittance",
            || format!("{} is outside [0, 1]", self.channel_transmittance),
        )?;
        self.source.validate()?;
        self.receiver.validate()
    }
}

/// Observed block. `counts.n`/`counts.m` are registered sifted detections
/// and errors; `observables` are their per-pulse rates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McOutcome {
    pub counts: ExpectedCounts,
    pub observables: PulseObservables,
    /// Pulses sent per (basis, intensity).
    pub sent: Cells<u64>,
    /// Clicks per line before and after dead-time blocking.
    pub raw_clicks: [u64; 2],
    pub registered_clicks: [u64; 2],
}

impl McOutcome {
    /// Fraction of raw clicks on a line that survive dead time.
    pub fn throughput(&self, line: Basis) -> f64 {
        let raw = self.raw_clicks[line.index()];
        if raw == 0 {
            1.0
        } else {
            self.registered_clicks[line.index()] as f64 / raw as f64
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Click {
    slot: u64,
    line: Basis,
    /// Alice's cell when it matches the line (sifted), else `None`.
    sifted: Option<Intensity>,
    error: bool,
}

struct ChunkResult {
    sent: Cells<u64>,
    clicks: Vec<Click>,
}

struct PulseSampler {
    eta: [f64; 2],
    p_dc: f64,
    error: [f64; 2],
    poisson: Cells<Option<Poisson<f64>>>,
}

impl PulseSampler {
    fn new(cfg: &McConfig) -> Self {
        let rx = &cfg.receiver;
        let src = &cfg.source;
        Self {
            eta: Basis::ALL.map(|b| rx.end_to_end_efficiency(b, cfg.channel_transmittance)),
            p_dc: dark_click_probability(&rx.detector, src.clock_rate_hz),
            error: Basis::ALL.map(|b| src.intrinsic_error(b, rx)),
            poisson: Cells::from_fn(|b, k| Poisson::new(src.mean_photon_number(b, k)).ok()),
        }
    }

    fn run_chunk(&self, cfg: &McConfig, index: u64) -> ChunkResult {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(index);
        let start = index * CHUNK_PULSES;
        let end = (start + CHUNK_PULSES).min(cfg.n_pulses);
        let mut sent = Cells::<u64>::default();
        let mut clicks = Vec::new();

        for slot in start..end {
            let alice = if rng.random::<f64>() < cfg.source.p_basis_z { Basis::Z } else { Basis::X };
            let intensity = if rng.random::<f64>() < cfg.source.p_mu1 {
                Intensity::Signal
            } else {
                Intensity::Decoy
            };
            sent[(alice, intensity)] += 1;

            let photons = match &self.poisson[(alice, intensity)] {
                Some(p) => p.sample(&mut rng) as u64,
                None => 0,
            };
            let mut detected = [false; 2];
            for _ in 0..photons {
                let u: f64 = rng.random();
                if u < self.eta[0] {
                    detected[0] = true;
                } else if u < self.eta[0] + self.eta[1] {
                    detected[1] = true;
                }
            }

            for line in Basis::ALL {
                let dark = self.p_dc > 0.0 && rng.random::<f64>() < self.p_dc;
                let signal = detected[line.index()];
                if !signal && !dark {
                    continue;
                }
                let sifted = (line == alice).then_some(intensity);
                let error = match (sifted, signal, dark) {
                    (None, _, _) => false,
                    (Some(_), true, false) => rng.random::<f64>() < self.error[line.index()],
                    (Some(_), false, _) => rng.random::<bool>(),
                    (Some(_), true, true) => {
                        let signal_err = rng.random::<f64>() < self.error[line.index()];
                        // dark count lands in the same bin half the time;
                        // otherwise the double click is assigned at random
                        if rng.random::<bool>() {
                            signal_err
                        } else {
                            rng.random::<bool>()
                        }
                    }
                };
                clicks.push(Click {
                    slot,
                    line,
                    sifted,
                    error,
                });
            }
        }
        ChunkResult { sent, clicks }
    }
}

pub fn simulate_block(cfg: &McConfig) -> Result<McOutcome> {
    cfg.validate()?;
    let sampler = PulseSampler::new(cfg);
    let n_chunks = cfg.n_pulses.div_ceil(CHUNK_PULSES);
    let chunks: Vec<ChunkResult> = (0..n_chunks)
        .into_par_iter()
        .map(|i| sampler.run_chunk(cfg, i))
        .collect();

    let dead_slots = (cfg.receiver.detector.dead_time_s * cfg.source.clock_rate_hz).round() as u64;
    let mut last_registered: [Option<u64>; 2] = [None, None];
    let mut sent = Cells::<u64>::default();
    let mut n = Cells::<u64>::default();
    let mut m = Cells::<u64>::default();
    let mut raw_clicks = [0u64; 2];
    let mut registered_clicks = [0u64; 2];

    for chunk in &chunks {
        for key in Cells::<()>::keys() {
            sent[key] += chunk.sent[key];
        }
        for click in &chunk.clicks {
            let line = click.line.index();
            raw_clicks[line] += 1;
            if let Some(last) = last_registered[line] {
                if click.slot - last <= dead_slots {
                    continue;
                }
            }
            last_registered[line] = Some(click.slot);
            registered_clicks[line] += 1;
            if let Some(k) = click.sifted {
                n[(click.line, k)] += 1;
                if click.error {
                    m[(click.line, k)] += 1;
                }
            }
        }
    }

    let observables = PulseObservables {
        gain: Cells::from_fn(|b, k| ratio(n[(b, k)], sent[(b, k)], 0.0)),
        qber: Cells::from_fn(|b, k| ratio(m[(b, k)], n[(b, k)], 0.5)),
    };
    Ok(McOutcome {
        counts: ExpectedCounts {
            n: Cells::from_fn(|b, k| n[(b, k)] as f64),
            m: Cells::from_fn(|b, k| m[(b, k)] as f64),
            total_pulses: cfg.n_pulses as f64,
        },
        observables,
        sent,
        raw_clicks,
        registered_clicks,
    })
}

fn ratio(num: u64, den: u64, empty: f64) -> f64 {
    if den == 0 {
        empty
    } else {
        num as f64 / den as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    Gain,
    Qber,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellComparison {
    pub basis: Basis,
    pub intensity: Intensity,
    pub quantity: Quantity,
    pub observed: f64,
    pub expected: f64,
    pub sigma: f64,
    pub z_score: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub cells: Vec<CellComparison>,
    pub outcome: McOutcome,
}

impl ComparisonReport {
    pub fn any_flagged(&self) -> bool {
        self.cells.iter().any(|c| c.flagged)
    }

    pub fn max_abs_z(&self) -> f64 {
        self.cells.iter().map(|c| c.z_score.abs()).fold(0.0, f64::max)
    }
}

fn binomial_z(successes: f64, trials: f64, p: f64) -> (f64, f64) {
    let sigma = (trials * p * (1.0 - p)).sqrt();
    let diff = successes - trials * p;
    let z = if sigma > 0.0 {
        diff / sigma
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    (sigma, z)
}

/// Simulates a block and scores every gain and QBER cell against the
/// analytic model with binomial standard deviations.
pub fn compare_to_analytic(cfg: &McConfig) -> Result<ComparisonReport> {
    let outcome = simulate_block(cfg)?;
    let analytic = DetectionModel::new(&cfg.source, &cfg.receiver, cfg.channel_transmittance)?;
    let mut cells = Vec::with_capacity(8);
    for (b, k) in Cells::<()>::keys() {
        let sent = outcome.sent[(b, k)] as f64;
        let detected = outcome.counts.n[(b, k)];
        let errors = outcome.counts.m[(b, k)];
        for (quantity, trials, successes, expected, observed) in [
            (
                Quantity::Gain,
                sent,
                detected,
                analytic.observables.gain[(b, k)],
                outcome.observables.gain[(b, k)],
            ),
            (
                Quantity::Qber,
                detected,
                errors,
                analytic.observables.qber[(b, k)],
                outcome.observables.qber[(b, k)],
            ),
        ] {
            let (sigma, z_score) = binomial_z(successes, trials, expected);
            cells.push(CellComparison {
                basis: b,
                intensity: k,
                quantity,
                observed,
                expected,
                sigma: if trials > 0.0 { sigma / trials } else { 0.0 },
                z_score,
                flagged: z_score.abs() > Z_SCORE_LIMIT,
            });
        }
    }
    Ok(ComparisonReport { cells, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::receiver::Trace;

    fn cfg(tau: f64, n: u64) -> McConfig {
        McConfig {
            seed: 7,
            n_pulses: n,
            source: SourceModel::default(),
            receiver: Trace::Nir1550.receiver(),
            channel_transmittance: tau,
        }
    }

    #[test]
    fn nothing_detected_without_light_or_dark() {
        let mut c = cfg(0.0, 200_000);
        c.receiver.detector.dark_count_rate_hz = 0.0;
        let out = simulate_block(&c).unwrap();
        assert_eq!(out.raw_clicks, [0, 0]);
        assert_eq!(out.counts.detections(Basis::Z), 0.0);
    }

    #[test]
    fn zero_pulses_rejected() {
        assert!(simulate_block(&cfg(0.1, 0)).is_err());
        assert!(compare_to_analytic(&cfg(0.1, 0)).is_err());
    }

    #[test]
    fn conservation() {
        let out = simulate_block(&cfg(0.5, 300_000)).unwrap();
        let total: u64 = Cells::<()>::keys().map(|k| out.sent[k]).sum();
        assert_eq!(total, 300_000);
        for key in Cells::<()>::keys() {
            assert!(out.counts.n[key] <= out.sent[key] as f64);
            assert!(out.counts.m[key] <= out.counts.n[key]);
        }
        for line in 0..2 {
            assert!(out.registered_clicks[line] <= out.raw_clicks[line]);
        }
    }

    #[test]
    fn same_seed_same_counts() {
        let a = simulate_block(&cfg(0.2, 150_000)).unwrap();
        let b = simulate_block(&cfg(0.2, 150_000)).unwrap();
        assert_eq!(a, b);
        let mut other = cfg(0.2, 150_000);
        other.seed = 8;
        assert_ne!(simulate_block(&other).unwrap().counts, a.counts);
    }

    #[test]
    fn corrupted_efficiency_is_flagged() {
        let c = cfg(0.1, 1_000_000);
        let mut wrong = c.clone();
        wrong.receiver.detector.efficiency *= 0.7;
        let out = simulate_block(&wrong).unwrap();
        let analytic = DetectionModel::new(&c.source, &c.receiver, c.channel_transmittance).unwrap();
        let key = (Basis::Z, Intensity::Signal);
        let (_, z) = binomial_z(out.counts.n[key], out.sent[key] as f64, analytic.observables.gain[key]);
        assert!(z.abs() > Z_SCORE_LIMIT, "z = {z}");
    }

    #[test]
    fn analytic_agreement_small_block() {
        let report = compare_to_analytic(&cfg(0.1, 1_000_000)).unwrap();
        assert!(!report.any_flagged(), "max |z| = {}", report.max_abs_z());
    }
}
