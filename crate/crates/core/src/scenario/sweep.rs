use rayon::prelude::*;

use super::{emit::SweepRow, Scenario};
use crate::atmosphere::{total_budget, PathGeometry};
use crate::detstats::{expected_counts, PulseObservables};
use crate::error::{Error, Result};
use crate::finitekey::{analyze, DecoyBounds, KeyRateResult};

/// Full chain at one distance: channel budget, detection statistics,
/// decoy bounds and key length.
pub fn evaluate_link(scenario: &Scenario, distance_km: f64) -> Result<KeyRateResult> {
    let geom = PathGeometry::new(distance_km, scenario.telescope_radius_m)?;
    let budget = total_budget(&scenario.carrier, &geom, &scenario.weather, &scenario.absorption)?;
    match expected_counts(
        &scenario.source,
        &scenario.receiver,
        budget.transmittance,
        scenario.security.n_z,
    ) {
        Ok((counts, observables)) => Ok(analyze(
            &counts,
            &observables,
            &budget,
            &scenario.source,
            &scenario.security,
            scenario.fluctuations,
        )),
        // nothing ever clicks: no key, but the loss columns are still valid
        Err(Error::Infeasible(_)) => Ok(KeyRateResult {
            skl_bits: 0.0,
            skr_per_pulse: 0.0,
            feasible: false,
            total_pulses: f64::INFINITY,
            bounds: DecoyBounds {
                phi_z_upper: 0.5,
                ..Default::default()
            },
            qber_z: 0.5,
            qber_x: 0.5,
            budget_breakdown: budget,
            observables: PulseObservables::default(),
        }),
        Err(e) => Err(e),
    }
}

/// One row per sweep distance, in order. Rows that fail are kept and
/// marked infeasible.
pub fn run_sweep(scenario: &Scenario) -> Vec<SweepRow> {
    scenario
        .sweep
        .distances()
        .into_par_iter()
        .map(|d| match evaluate_link(scenario, d) {
            Ok(result) => SweepRow::from_result(d, &result),
            Err(_) => SweepRow::failed(d),
        })
        .collect()
}

/// Largest distance with a positive key.
pub fn cutoff_distance(rows: &[SweepRow]) -> Option<f64> {
    rows.iter()
        .filter(|r| r.feasible)
        .map(|r| r.distance_km)
        .fold(None, |acc, d| Some(acc.map_or(d, |a: f64| a.max(d))))
}
