//! Finite-key security analysis of 3-state BB84 with one decoy intensity.
//!
//! Observed detection and error counts per basis and intensity are turned
//! into lower bounds on vacuum and single-photon contributions, an upper
//! bound on the single-photon phase-error rate, and finally a secure key
//! length
//!
//! ```text
//! skl = s_Z0 + s_Z1 (1 − h(φ_Z)) − (1.12 n_Z h(q_Z) + log2(2/ε_cor)) − 6 log2(19/ε_sec)
//! ```
//!
//! Statistical fluctuations use Hoeffding's inequality; every application
//! gets an equal share `ε_sec / 21` of the secrecy budget.

use serde::{Deserialize, Serialize};

use crate::atmosphere::AttenuationBudget;
use crate::detstats::{ExpectedCounts, Intensity, PulseObservables, SourceModel};
use crate::error::{ensure, Result};
use crate::receiver::Basis;

/// Number of equal parts the secrecy parameter is split into across the
/// statistical bounds.
pub const EPS_SPLIT: f64 = 21.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecurityBudget {
    pub eps_sec: f64,
    pub eps_cor: f64,
    /// Error-correction inefficiency relative to the Shannon limit.
    pub ec_efficiency: f64,
    /// Block size of sifted Z bits.
    pub n_z: f64,
}

impl Default for SecurityBudget {
    fn default() -> Self {
        Self {
            eps_sec: 1e-15,
            eps_cor: 1e-15,
            ec_efficiency: 1.12,
            n_z: 1e8,
        }
    }
}

impl SecurityBudget {
    pub fn validate(&self) -> Result<()> {
        for (name, eps) in [("eps_sec", self.eps_sec), ("eps_cor", self.eps_cor)] {
            ensure(eps > 0.0 && eps < 1.0, "security parameter", || {
                format!("{name}={eps} is outside (0, 1)")
            })?;
        }
        ensure(self.n_z >= 1.0 && self.n_z.is_finite(), "block size", || {
            format!("n_z={} must be at least 1", self.n_z)
        })?;
        ensure(self.ec_efficiency >= 1.0, "error-correction efficiency", || {
            format!("{} is below the Shannon limit", self.ec_efficiency)
        })
    }

    /// Failure probability assigned to each Hoeffding bound.
    pub fn eps_per_bound(&self) -> f64 {
        self.eps_sec / EPS_SPLIT
    }
}

/// Whether fluctuation terms are applied. `Asymptotic` drops every
/// Hoeffding and random-sampling correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Fluctuations {
    #[default]
    Finite,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DecoyBounds {
    pub s_z0_lower: f64,
    pub s_z0_upper: f64,
    pub s_z1_lower: f64,
    pub s_x1_lower: f64,
    pub v_x1_upper: f64,
    pub phi_z_upper: f64,
}

impl DecoyBounds {
    /// Single-photon lower bounds in both bases must be positive.
    pub fn is_feasible(&self) -> bool {
        self.s_z1_lower > 0.0 && self.s_x1_lower > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecureKeyLength {
    pub skl_bits: f64,
    pub feasible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KeyRateResult {
    pub skl_bits: f64,
    pub skr_per_pulse: f64,
    pub feasible: bool,
    pub total_pulses: f64,
    pub bounds: DecoyBounds,
    pub qber_z: f64,
    pub qber_x: f64,
    pub budget_breakdown: AttenuationBudget,
    pub observables: PulseObservables,
}

pub fn binary_entropy(x: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x));
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// Bits disclosed by error correction and verification.
pub fn ec_leakage(q_z: f64, budget: &SecurityBudget) -> f64 {
    budget.ec_efficiency * budget.n_z * binary_entropy(q_z) + (2.0 / budget.eps_cor).log2()
}

/// Fixed privacy-amplification cost.
pub fn pa_cost(budget: &SecurityBudget) -> f64 {
    6.0 * (19.0 / budget.eps_sec).log2()
}

/// Hoeffding deviation `√(n/2 · ln(1/ε))`.
pub fn hoeffding_delta(n: f64, eps: f64) -> f64 {
    debug_assert!(n >= 0.0 && eps > 0.0 && eps < 1.0);
    (n / 2.0 * (1.0 / eps).ln()).sqrt()
}

/// `τ_n = Σ_k p_k e^{−k} k^n / n!`: probability that a pulse carries `n` photons.
pub fn photon_number_probability(n: u32, intensities: [f64; 2], probabilities: [f64; 2]) -> f64 {
    let fact: f64 = (1..=n).map(f64::from).product();
    intensities
        .iter()
        .zip(probabilities)
        .map(|(&k, p)| p * (-k).exp() * k.powi(n as i32) / fact)
        .sum()
}

/// Random-sampling correction between the phase-error rate in the X
/// sample and the Z key.
fn sampling_correction(eps: f64, rate: f64, s_z1: f64, s_x1: f64) -> f64 {
    if rate <= 0.0 || rate >= 1.0 || s_z1 <= 0.0 || s_x1 <= 0.0 {
        return 0.0;
    }
    let total = s_z1 + s_x1;
    let spread = rate * (1.0 - rate);
    let log_term =
        (total / (s_z1 * s_x1 * spread) * EPS_SPLIT * EPS_SPLIT / (eps * eps)).log2();
    (total * spread / (s_z1 * s_x1 * std::f64::consts::LN_2) * log_term.max(0.0)).sqrt()
}

struct BasisBounds {
    s0_upper: f64,
    s0_lower: f64,
    s1_lower: f64,
    v1_upper: f64,
}

/// Vacuum and single-photon bounds for one basis. `intensities` are the
/// emitted mean photon numbers in that basis.
fn basis_bounds(
    counts: &ExpectedCounts,
    basis: Basis,
    intensities: [f64; 2],
    probabilities: [f64; 2],
    delta: impl Fn(f64) -> f64,
) -> BasisBounds {
    let [mu1, mu2] = intensities;
    let [p1, p2] = probabilities;
    let n_k = Intensity::ALL.map(|k| counts.n[(basis, k)]);
    let m_k = Intensity::ALL.map(|k| counts.m[(basis, k)]);
    let dn = delta(counts.detections(basis));
    let dm = delta(counts.errors(basis));

    let n_plus_1 = mu1.exp() / p1 * (n_k[0] + dn);
    let n_minus_2 = mu2.exp() / p2 * (n_k[1] - dn);
    let m_plus_1 = mu1.exp() / p1 * (m_k[0] + dm);
    let m_minus_2 = mu2.exp() / p2 * (m_k[1] - dm);

    let tau0 = photon_number_probability(0, intensities, probabilities);
    let tau1 = photon_number_probability(1, intensities, probabilities);

    // vacuum clicks err half the time, so errors in the decoy cap them
    let s0_upper = 2.0 * (tau0 * mu2.exp() / p2 * m_k[1] + dn);
    let s0_lower = (tau0 / (mu1 - mu2) * (mu1 * n_minus_2 - mu2 * n_plus_1)).max(0.0);
    let r = mu2 / mu1;
    let s1_lower = (tau1 * mu1 / (mu2 * (mu1 - mu2))
        * (n_minus_2 - r * r * n_plus_1 - (1.0 - r * r) * s0_upper / tau0))
        .max(0.0);
    let v1_upper = (tau1 / (mu1 - mu2) * (m_plus_1 - m_minus_2)).max(0.0);
    BasisBounds {
        s0_upper,
        s0_lower,
        s1_lower,
        v1_upper,
    }
}

pub fn decoy_bounds(
    counts: &ExpectedCounts,
    source: &SourceModel,
    budget: &SecurityBudget,
    fluctuations: Fluctuations,
) -> DecoyBounds {
    let eps = budget.eps_per_bound();
    let delta = |n: f64| match fluctuations {
        Fluctuations::Finite => hoeffding_delta(n.max(0.0), eps),
        Fluctuations::Asymptotic => 0.0,
    };
    let probs = Intensity::ALL.map(|k| source.intensity_probability(k));
    let z = basis_bounds(
        counts,
        Basis::Z,
        Intensity::ALL.map(|k| source.mean_photon_number(Basis::Z, k)),
        probs,
        delta,
    );
    let x = basis_bounds(
        counts,
        Basis::X,
        Intensity::ALL.map(|k| source.mean_photon_number(Basis::X, k)),
        probs,
        delta,
    );

    let phi_z_upper = if z.s1_lower > 0.0 && x.s1_lower > 0.0 {
        let rate = x.v1_upper / x.s1_lower;
        let correction = match fluctuations {
            Fluctuations::Finite => sampling_correction(budget.eps_sec, rate, z.s1_lower, x.s1_lower),
            Fluctuations::Asymptotic => 0.0,
        };
        (rate + correction).clamp(0.0, 0.5)
    } else {
        0.5
    };

    DecoyBounds {
        s_z0_lower: z.s0_lower,
        s_z0_upper: z.s0_upper,
        s_z1_lower: z.s1_lower,
        s_x1_lower: x.s1_lower,
        v_x1_upper: x.v1_upper,
        phi_z_upper,
    }
}

/// Secure key length in whole bits; non-positive results and infeasible
/// bounds give zero.
pub fn secure_key_length(bounds: &DecoyBounds, q_z: f64, budget: &SecurityBudget) -> SecureKeyLength {
    if !bounds.is_feasible() {
        return SecureKeyLength {
            skl_bits: 0.0,
            feasible: false,
        };
    }
    let raw = bounds.s_z0_lower + bounds.s_z1_lower * (1.0 - binary_entropy(bounds.phi_z_upper))
        - (ec_leakage(q_z.clamp(0.0, 0.5), budget) + pa_cost(budget));
    let skl_bits = raw.floor().max(0.0);
    SecureKeyLength {
        skl_bits,
        feasible: skl_bits > 0.0,
    }
}

pub fn skr_per_pulse(skl_bits: f64, total_pulses: f64) -> f64 {
    debug_assert!(total_pulses > 0.0);
    skl_bits / total_pulses
}

/// Decoy bounds through key rate for one set of counts.
pub fn analyze(
    counts: &ExpectedCounts,
    observables: &PulseObservables,
    budget_breakdown: &AttenuationBudget,
    source: &SourceModel,
    budget: &SecurityBudget,
    fluctuations: Fluctuations,
) -> KeyRateResult {
    let bounds = decoy_bounds(counts, source, budget, fluctuations);
    let qber_z = counts.qber(Basis::Z);
    let key = secure_key_length(&bounds, qber_z, budget);
    KeyRateResult {
        skl_bits: key.skl_bits,
        skr_per_pulse: skr_per_pulse(key.skl_bits, counts.total_pulses),
        feasible: key.feasible,
        total_pulses: counts.total_pulses,
        bounds,
        qber_z,
        qber_x: counts.qber(Basis::X),
        budget_breakdown: *budget_breakdown,
        observables: *observables,
    }
}
