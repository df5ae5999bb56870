//! Simulates a pulse block and compares every sifted cell with the
//! analytic detection model.
//!
//! Usage: `cargo run --release --example monte_carlo_check [transmittance] [pulses]`

use fso_qkd::detstats::SourceModel;
use fso_qkd::mcsim::{compare_to_analytic, McConfig, Z_SCORE_LIMIT};
use fso_qkd::receiver::{Basis, Trace};

fn main() -> fso_qkd::Result<()> {
    let mut args = std::env::args().skip(1);
    let tau: f64 = args.next().map_or(0.1, |a| a.parse().expect("transmittance"));
    let pulses: u64 = args.next().map_or(10_000_000, |a| a.parse().expect("pulse count"));

    let report = compare_to_analytic(&McConfig {
        seed: 2024,
        n_pulses: pulses,
        source: SourceModel::default(),
        receiver: Trace::Nir1550.receiver(),
        channel_transmittance: tau,
    })?;

    println!("{:<6}{:<8}{:<6}{:>14}{:>14}{:>8}", "basis", "mu", "qty", "observed", "expected", "z");
    for c in &report.cells {
        println!(
            "{:<6}{:<8}{:<6}{:>14.6e}{:>14.6e}{:>8.2}",
            format!("{:?}", c.basis),
            format!("{:?}", c.intensity),
            format!("{:?}", c.quantity),
            c.observed,
            c.expected,
            c.z_score
        );
    }
    for line in Basis::ALL {
        println!("{line:?} line dead-time throughput {:.4}", report.outcome.throughput(line));
    }
    let verdict = if report.any_flagged() { "DISAGREES" } else { "agrees" };
    println!("max |z| = {:.2}; model {verdict} at |z| <= {Z_SCORE_LIMIT}", report.max_abs_z());
    Ok(())
}
