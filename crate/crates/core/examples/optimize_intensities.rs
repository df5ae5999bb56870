//! Grid search over signal and decoy intensities at a few distances.

use fso_qkd::scenario::{evaluate_link, optimize_intensities, IntensityGrid, Scenario};

fn main() -> fso_qkd::Result<()> {
    let scenario = Scenario::from_presets("CLEAR", "MIR_UPCONV")?;
    let grid = IntensityGrid::linspace((0.2, 0.9), (0.05, 0.45), 15);
    println!("{:>6} {:>6} {:>6} {:>12} {:>12}", "d_km", "mu1", "mu2", "skr_opt", "skr_default");
    for d in [0.0, 200.0, 500.0, 800.0] {
        let default = evaluate_link(&scenario, d)?.skr_per_pulse;
        match optimize_intensities(&scenario, d, &grid) {
            Ok(o) => println!("{d:>6} {:>6.3} {:>6.3} {:>12.4e} {default:>12.4e}", o.mu1, o.mu2, o.skr_per_pulse),
            Err(e) => println!("{d:>6} {e}"),
        }
    }
    Ok(())
}
