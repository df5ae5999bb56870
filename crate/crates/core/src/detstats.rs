//! Analytic detection statistics for phase-randomised weak coherent pulses.
//!
//! A pulse of mean photon number `μ` reaching a threshold detector through
//! total efficiency `η` clicks with probability `1 − (1 − p_dc)·e^(−μη)`.
//! X-basis states carry half the intensity of Z-basis states. Each
//! measurement line (Z and X) has its own detector, derated by that
//! detector's dead time at its total click rate.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::receiver::{dark_click_probability, dead_time_factor, Basis, ReceiverModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Intensity {
    /// μ1
    Signal,
    /// μ2
    Decoy,
}

impl Intensity {
    pub const ALL: [Intensity; 2] = [Intensity::Signal, Intensity::Decoy];
}

/// One value per (basis, intensity) pair.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Cells<T> {
    pub z: [T; 2],
    pub x: [T; 2],
}

impl<T> Cells<T> {
    pub fn from_fn(mut f: impl FnMut(Basis, Intensity) -> T) -> Self {
        Self {
            z: [f(Basis::Z, Intensity::Signal), f(Basis::Z, Intensity::Decoy)],
            x: [f(Basis::X, Intensity::Signal), f(Basis::X, Intensity::Decoy)],
        }
    }

    pub fn keys() -> impl Iterator<Item = (Basis, Intensity)> {
        Basis::ALL
            .into_iter()
            .flat_map(|b| Intensity::ALL.into_iter().map(move |k| (b, k)))
    }
}

impl<T> Index<(Basis, Intensity)> for Cells<T> {
    type Output = T;

    fn index(&self, (b, k): (Basis, Intensity)) -> &T {
        let row = match b {
            Basis::Z => &self.z,
            Basis::X => &self.x,
        };
        &row[k as usize]
    }
}

impl<T> IndexMut<(Basis, Intensity)> for Cells<T> {
    fn index_mut(&mut self, (b, k): (Basis, Intensity)) -> &mut T {
        let row = match b {
            Basis::Z => &mut self.z,
            Basis::X => &mut self.x,
        };
        &mut row[k as usize]
    }
}

/// Transmitter settings and the nuisance parameters the link model needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceModel {
    pub mu1: f64,
    pub mu2: f64,
    pub p_basis_z: f64,
    /// Probability of sending the signal intensity.
    pub p_mu1: f64,
    pub clock_rate_hz: f64,
    /// Optical misalignment error, applied in both bases.
    pub misalignment_error: f64,
}

impl Default for SourceModel {
    fn default() -> Self {
        Self {
            mu1: 0.5,
            mu2: 0.25,
            p_basis_z: 0.5,
            p_mu1: 0.5,
            clock_rate_hz: 1e9,
            misalignment_error: 0.01,
        }
    }
}

impl SourceModel {
    pub fn validate(&self) -> Result<()> {
        ensure(self.mu2 > 0.0 && self.mu1 > self.mu2 && self.mu1.is_finite(), "intensities", || {
            format!("need mu1 > mu2 > 0, got mu1={} mu2={}", self.mu1, self.mu2)
        })?;
        for (name, p) in [("p_basis_z", self.p_basis_z), ("p_mu1", self.p_mu1)] {
            ensure(p > 0.0 && p < 1.0, "probability", || format!("{name}={p} is outside (0, 1)"))?;
        }
        ensure(
            self.clock_rate_hz.is_finite() && self.clock_rate_hz > 0.0,
            "clock rate",
            || format!("{} Hz must be positive", self.clock_rate_hz),
        )?;
        ensure(
            (0.0..=0.5).contains(&self.misalignment_error),
            "misalignment error",
            || format!("{} is outside [0, 0.5]", self.misalignment_error),
        )
    }

    pub fn basis_probability(&self, b: Basis) -> f64 {
        match b {
            Basis::Z => self.p_basis_z,
            Basis::X => 1.0 - self.p_basis_z,
        }
    }

    pub fn intensity_probability(&self, k: Intensity) -> f64 {
        match k {
            Intensity::Signal => self.p_mu1,
            Intensity::Decoy => 1.0 - self.p_mu1,
        }
    }

    /// Nominal (Z-basis) intensity.
    pub fn intensity(&self, k: Intensity) -> f64 {
        match k {
            Intensity::Signal => self.mu1,
            Intensity::Decoy => self.mu2,
        }
    }

    /// Mean photon number actually emitted; X states carry half.
    pub fn mean_photon_number(&self, b: Basis, k: Intensity) -> f64 {
        match b {
            Basis::Z => self.intensity(k),
            Basis::X => self.intensity(k) / 2.0,
        }
    }

    /// Error probability of a signal click in the matching basis.
    pub fn intrinsic_error(&self, b: Basis, rx: &ReceiverModel) -> f64 {
        match b {
            Basis::Z => self.misalignment_error,
            Basis::X => (self.misalignment_error + rx.interferometer_error()).min(0.5),
        }
    }
}

/// Per-pulse gains (dead-time derated) and QBERs of the sifted cells.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PulseObservables {
    pub gain: Cells<f64>,
    pub qber: Cells<f64>,
}

/// Detection and error counts per cell for one block. Values are whole
/// numbers stored as `f64` so that Monte Carlo counts fit unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ExpectedCounts {
    pub n: Cells<f64>,
    pub m: Cells<f64>,
    pub total_pulses: f64,
}

impl ExpectedCounts {
    pub fn detections(&self, b: Basis) -> f64 {
        Intensity::ALL.iter().map(|&k| self.n[(b, k)]).sum()
    }

    pub fn errors(&self, b: Basis) -> f64 {
        Intensity::ALL.iter().map(|&k| self.m[(b, k)]).sum()
    }

    /// Intensity-aggregated error rate of one basis; 0.5 with no detections.
    pub fn qber(&self, b: Basis) -> f64 {
        let n = self.detections(b);
        if n > 0.0 {
            self.errors(b) / n
        } else {
            0.5
        }
    }
}

/// Click probability `1 − (1 − p_dc)·e^(−μη)`.
pub fn gain(mu: f64, eta: f64, p_dc: f64) -> f64 {
    debug_assert!(mu >= 0.0 && (0.0..=1.0).contains(&eta) && (0.0..=1.0).contains(&p_dc));
    // -expm1 keeps precision when μη is tiny
    let no_signal = (-mu * eta).exp();
    -(-mu * eta).exp_m1() + p_dc * no_signal
}

/// Error rate of clicks: signal clicks err with `e_intrinsic`, dark clicks
/// with 1/2.
pub fn qber(mu: f64, eta: f64, p_dc: f64, e_intrinsic: f64) -> f64 {
    let d = gain(mu, eta, p_dc);
    if d <= 0.0 {
        return 0.5;
    }
    let signal = -(-mu * eta).exp_m1();
    let dark = p_dc * (-mu * eta).exp();
    ((e_intrinsic * signal + 0.5 * dark) / d).clamp(0.0, 0.5)
}

/// Steady-state detection model of one channel transmittance, before
/// any block-size bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionModel {
    pub observables: PulseObservables,
    /// Raw (undelayed) click probability per pulse on the Z and X lines.
    pub line_click_probability: [f64; 2],
    pub line_dead_time_factor: [f64; 2],
    pub dark_click_probability: f64,
}

impl DetectionModel {
    pub fn new(source: &SourceModel, rx: &ReceiverModel, channel_transmittance: f64) -> Result<Self> {
        source.validate()?;
        rx.validate()?;
        ensure(
            (0.0..=1.0).contains(&channel_transmittance),
            "channel transmittance",
            || format!("{channel_transmittance} is outside [0, 1]"),
        )?;
        let p_dc = dark_click_probability(&rx.detector, source.clock_rate_hz);
        let eta = Basis::ALL.map(|b| rx.end_to_end_efficiency(b, channel_transmittance));

        // every pulse lands on both lines, sifted or not
        let line_click_probability = Basis::ALL.map(|line| {
            Cells::<()>::keys()
                .map(|(a, k)| {
                    source.basis_probability(a)
                        * source.intensity_probability(k)
                        * gain(source.mean_photon_number(a, k), eta[line.index()], p_dc)
                })
                .sum::<f64>()
        });
        let line_dead_time_factor = line_click_probability
            .map(|p| dead_time_factor(&rx.detector, p * source.clock_rate_hz));

        let observables = PulseObservables {
            gain: Cells::from_fn(|b, k| {
                gain(source.mean_photon_number(b, k), eta[b.index()], p_dc)
                    * line_dead_time_factor[b.index()]
            }),
            qber: Cells::from_fn(|b, k| {
                qber(
                    source.mean_photon_number(b, k),
                    eta[b.index()],
                    p_dc,
                    source.intrinsic_error(b, rx),
                )
            }),
        };
        Ok(Self {
            observables,
            line_click_probability,
            line_dead_time_factor,
            dark_click_probability: p_dc,
        })
    }

    /// Expected sifted Z detections per emitted pulse.
    pub fn sifted_z_yield(&self, source: &SourceModel) -> f64 {
        Intensity::ALL
            .iter()
            .map(|&k| {
                source.basis_probability(Basis::Z)
                    * source.intensity_probability(k)
                    * self.observables.gain[(Basis::Z, k)]
            })
            .sum()
    }
}

/// Expected counts for the number of pulses that yields `n_z_target` sifted
/// Z detections. Counts are rounded down.
pub fn expected_counts(
    source: &SourceModel,
    rx: &ReceiverModel,
    channel_transmittance: f64,
    n_z_target: f64,
) -> Result<(ExpectedCounts, PulseObservables)> {
    ensure(n_z_target > 0.0 && n_z_target.is_finite(), "block size", || {
        format!("{n_z_target} must be positive")
    })?;
    let model = DetectionModel::new(source, rx, channel_transmittance)?;
    let yield_z = model.sifted_z_yield(source);
    if yield_z.is_nan() || yield_z <= 0.0 {
        return Err(Error::Infeasible(format!(
            "zero sifted Z yield at transmittance {channel_transmittance:e}"
        )));
    }
    let total_pulses = n_z_target / yield_z;
    let obs = model.observables;
    let n = Cells::from_fn(|b, k| {
        (total_pulses * source.basis_probability(b) * source.intensity_probability(k) * obs.gain[(b, k)])
            .floor()
    });
    let m = Cells::from_fn(|b, k| (obs.qber[(b, k)] * n[(b, k)]).floor());
    Ok((
        ExpectedCounts {
            n,
            m,
            total_pulses: total_pulses.ceil(),
        },
        obs,
    ))
}
