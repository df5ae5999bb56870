//! Measurement apparatus: detector presets, per-basis insertion loss, the
//! passive basis split, dark clicks per qubit slot and dead-time derating.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::atmosphere::OpticalCarrier;
use crate::error::{ensure, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    Z,
    X,
}

impl Basis {
    pub const ALL: [Basis; 2] = [Basis::Z, Basis::X];

    /// Position in per-line arrays such as `McOutcome::raw_clicks`.
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Z => "Z",
            Basis::X => "X",
        })
    }
}

/// Single-photon detector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorModel {
    pub efficiency: f64,
    pub dark_count_rate_hz: f64,
    pub dead_time_s: f64,
    pub label: String,
}

/// SNSPD dead time used by every preset.
pub const DEFAULT_DEAD_TIME_S: f64 = 25e-9;

impl DetectorModel {
    pub fn new(label: impl Into<String>, efficiency: f64, dark_count_rate_hz: f64) -> Result<Self> {
        let det = Self {
            efficiency,
            dark_count_rate_hz,
            dead_time_s: DEFAULT_DEAD_TIME_S,
            label: label.into(),
        };
        det.validate()?;
        Ok(det)
    }

    pub fn validate(&self) -> Result<()> {
        ensure((0.0..=1.0).contains(&self.efficiency), "detector efficiency", || {
            format!("{} is outside [0, 1]", self.efficiency)
        })?;
        ensure(
            self.dark_count_rate_hz.is_finite() && self.dark_count_rate_hz >= 0.0,
            "dark count rate",
            || format!("{} Hz must be non-negative", self.dark_count_rate_hz),
        )?;
        ensure(
            self.dead_time_s.is_finite() && self.dead_time_s >= 0.0,
            "dead time",
            || format!("{} s must be non-negative", self.dead_time_s),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReceiverModel {
    pub z_insertion_db: f64,
    pub x_insertion_db: f64,
    /// Fraction of light routed to the Z line by the passive splitter.
    pub basis_split: f64,
    pub interferometer_visibility: f64,
    pub detector: DetectorModel,
}

impl ReceiverModel {
    pub fn new(detector: DetectorModel) -> Self {
        Self {
            z_insertion_db: 1.0,
            x_insertion_db: 3.0,
            basis_split: 0.5,
            interferometer_visibility: 0.98,
            detector,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure(
            self.z_insertion_db >= 0.0 && self.x_insertion_db >= 0.0,
            "insertion loss",
            || {
                format!(
                    "Z {} dB / X {} dB must be non-negative",
                    self.z_insertion_db, self.x_insertion_db
                )
            },
        )?;
        ensure(self.basis_split == 0.5, "basis split", || {
            format!("{} (the passive splitter is fixed at 0.5)", self.basis_split)
        })?;
        ensure(
            self.interferometer_visibility > 0.0 && self.interferometer_visibility <= 1.0,
            "interferometer visibility",
            || format!("{} is outside (0, 1]", self.interferometer_visibility),
        )?;
        self.detector.validate()
    }

    pub fn insertion_db(&self, basis: Basis) -> f64 {
        match basis {
            Basis::Z => self.z_insertion_db,
            Basis::X => self.x_insertion_db,
        }
    }

    /// Probability that a photon leaving the transmitter clicks the detector
    /// of the given measurement line.
    pub fn end_to_end_efficiency(&self, basis: Basis, channel_transmittance: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&channel_transmittance));
        let split = match basis {
            Basis::Z => self.basis_split,
            Basis::X => 1.0 - self.basis_split,
        };
        channel_transmittance
            * split
            * 10f64.powf(-self.insertion_db(basis) / 10.0)
            * self.detector.efficiency
    }

    /// Extra X-basis error from imperfect interference, `(1 - V) / 2`.
    pub fn interferometer_error(&self) -> f64 {
        (1.0 - self.interferometer_visibility) / 2.0
    }
}

/// Dark-click probability per qubit slot (both time bins gated).
pub fn dark_click_probability(det: &DetectorModel, clock_rate_hz: f64) -> f64 {
    debug_assert!(clock_rate_hz > 0.0);
    (det.dark_count_rate_hz / clock_rate_hz).min(1.0)
}

/// Non-paralyzable throughput factor `1 / (1 + rate · dead_time)`.
pub fn dead_time_factor(det: &DetectorModel, click_rate_hz: f64) -> f64 {
    debug_assert!(click_rate_hz >= 0.0);
    1.0 / (1.0 + click_rate_hz * det.dead_time_s)
}

/// Hardware traces: a source wavelength paired with a detection setup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Trace {
    #[serde(rename = "NIR800")]
    Nir800,
    #[serde(rename = "NIR1550")]
    Nir1550,
    /// Mid-IR photons up-converted to the near-IR before detection.
    #[serde(rename = "MIR_UPCONV")]
    MirUpconv,
    /// Mid-IR SNSPD as demonstrated today.
    #[serde(rename = "MIR_REALISTIC")]
    MirRealistic,
    /// Mid-IR SNSPD performance target.
    #[serde(rename = "MIR_OPTIMIZED")]
    MirOptimized,
}

impl Trace {
    pub const ALL: [Trace; 5] = [
        Trace::Nir800,
        Trace::Nir1550,
        Trace::MirUpconv,
        Trace::MirRealistic,
        Trace::MirOptimized,
    ];

    pub const NAMES: [&'static str; 5] =
        ["NIR800", "NIR1550", "MIR_UPCONV", "MIR_REALISTIC", "MIR_OPTIMIZED"];

    pub fn name(self) -> &'static str {
        Self::NAMES[self as usize]
    }

    pub fn wavelength_nm(self) -> f64 {
        match self {
            Trace::Nir800 => 800.0,
            Trace::Nir1550 => 1557.7,
            Trace::MirUpconv | Trace::MirRealistic | Trace::MirOptimized => 3998.6,
        }
    }

    fn efficiency_and_dark_rate(self) -> (f64, f64) {
        match self {
            Trace::Nir800 | Trace::Nir1550 => (0.90, 1.0),
            Trace::MirUpconv => (0.127, 1.0),
            Trace::MirRealistic => (0.05, 100.0),
            Trace::MirOptimized => (0.80, 100.0),
        }
    }

    pub fn carrier(self) -> OpticalCarrier {
        OpticalCarrier::new(self.wavelength_nm()).expect("preset wavelength is positive")
    }

    pub fn receiver(self) -> ReceiverModel {
        let (eta, dark) = self.efficiency_and_dark_rate();
        ReceiverModel::new(DetectorModel::new(self.name(), eta, dark).expect("preset detector is valid"))
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Trace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Trace::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownPreset {
                kind: "hardware trace",
                name: s.to_owned(),
                valid: Trace::NAMES.to_vec(),
            })
    }
}

/// Carrier and receiver for a named hardware trace.
pub fn preset(name: &str) -> Result<(OpticalCarrier, ReceiverModel)> {
    let trace: Trace = name.parse()?;
    Ok((trace.carrier(), trace.receiver()))
}
