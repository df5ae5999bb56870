//! Planck spectral radiance, used for background-light diagnostics only.

const PLANCK: f64 = 6.626_070_15e-34;
const LIGHT_SPEED: f64 = 299_792_458.0;
const BOLTZMANN: f64 = 1.380_649e-23;

/// Wien displacement constant in µm·K.
pub const WIEN_CONSTANT_UM_K: f64 = 2897.77;

/// Black-body spectral radiance in W·m⁻²·sr⁻¹·µm⁻¹.
pub fn spectral_radiance(temperature_k: f64, wavelength_um: f64) -> f64 {
    debug_assert!(temperature_k > 0.0 && wavelength_um > 0.0);
    let lam = wavelength_um * 1e-6;
    let x = PLANCK * LIGHT_SPEED / (lam * BOLTZMANN * temperature_k);
    // per metre of wavelength, then per µm
    2.0 * PLANCK * LIGHT_SPEED.powi(2) / lam.powi(5) / x.exp_m1() * 1e-6
}

/// Wavelength of peak spectral radiance, µm.
pub fn wien_peak_um(temperature_k: f64) -> f64 {
    WIEN_CONSTANT_UM_K / temperature_k
}
