//! Solar and terrestrial black-body spectra and their peaks.

use fso_qkd::atmosphere::{spectral_radiance, wien_peak_um};

fn main() {
    for t in [5778.0, 288.0] {
        let peak = wien_peak_um(t);
        println!("T = {t} K: peak at {peak:.4} um, {:.4e} W m^-2 sr^-1 um^-1", spectral_radiance(t, peak));
    }
    println!("\nwavelength_um,sun,earth");
    let mut lam: f64 = 0.25;
    while lam <= 25.0 {
        println!("{lam:.3},{:.4e},{:.4e}", spectral_radiance(5778.0, lam), spectral_radiance(288.0, lam));
        lam *= 1.25;
    }
}
