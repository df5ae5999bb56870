use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::OutputFormat;
use crate::error::{Error, Result};
use crate::finitekey::KeyRateResult;

/// One sweep distance. Field order is the CSV column order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub distance_km: f64,
    pub geometric_db: f64,
    pub mie_db: f64,
    pub rain_db: f64,
    pub rayleigh_db: f64,
    pub turbulence_db: f64,
    pub absorption_db: f64,
    pub total_db: f64,
    pub transmittance: f64,
    pub qber_z: f64,
    pub qber_x: f64,
    pub s_z0_lower: f64,
    pub s_z1_lower: f64,
    pub phi_z_upper: f64,
    pub skl_bits: f64,
    pub skr_per_pulse: f64,
    pub feasible: bool,
}

impl SweepRow {
    pub const COLUMNS: [&'static str; 17] = [
        "distance_km",
        "geometric_db",
        "mie_db",
        "rain_db",
        "rayleigh_db",
        "turbulence_db",
        "absorption_db",
        "total_db",
        "transmittance",
        "qber_z",
        "qber_x",
        "s_z0_lower",
        "s_z1_lower",
        "phi_z_upper",
        "skl_bits",
        "skr_per_pulse",
        "feasible",
    ];

    pub fn from_result(distance_km: f64, r: &KeyRateResult) -> Self {
        let b = &r.budget_breakdown;
        Self {
            distance_km,
            geometric_db: b.geometric_db,
            mie_db: b.mie_db,
            rain_db: b.rain_db,
            rayleigh_db: b.rayleigh_db,
            turbulence_db: b.turbulence_db,
            absorption_db: b.absorption_db,
            total_db: b.total_db,
            transmittance: b.transmittance,
            qber_z: r.qber_z,
            qber_x: r.qber_x,
            s_z0_lower: r.bounds.s_z0_lower,
            s_z1_lower: r.bounds.s_z1_lower,
            phi_z_upper: r.bounds.phi_z_upper,
            skl_bits: r.skl_bits,
            skr_per_pulse: r.skr_per_pulse,
            feasible: r.feasible,
        }
    }

    /// Row for a distance the model could not evaluate.
    pub fn failed(distance_km: f64) -> Self {
        Self {
            distance_km,
            geometric_db: f64::NAN,
            mie_db: f64::NAN,
            rain_db: f64::NAN,
            rayleigh_db: f64::NAN,
            turbulence_db: f64::NAN,
            absorption_db: f64::NAN,
            total_db: f64::NAN,
            transmittance: f64::NAN,
            qber_z: f64::NAN,
            qber_x: f64::NAN,
            s_z0_lower: 0.0,
            s_z1_lower: 0.0,
            phi_z_upper: 0.5,
            skl_bits: 0.0,
            skr_per_pulse: 0.0,
            feasible: false,
        }
    }

    fn numbers(&self) -> [f64; 16] {
        [
            self.distance_km,
            self.geometric_db,
            self.mie_db,
            self.rain_db,
            self.rayleigh_db,
            self.turbulence_db,
            self.absorption_db,
            self.total_db,
            self.transmittance,
            self.qber_z,
            self.qber_x,
            self.s_z0_lower,
            self.s_z1_lower,
            self.phi_z_upper,
            self.skl_bits,
            self.skr_per_pulse,
        ]
    }
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    metadata: serde_json::Map<String, serde_json::Value>,
    rows: &'a [SweepRow],
}

/// Renders rows with their metadata block.
pub fn render(rows: &[SweepRow], format: OutputFormat, metadata: &[(String, String)]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::invalid("sweep output", "no rows to emit"));
    }
    Ok(match format {
        OutputFormat::Csv => {
            let mut out = String::new();
            for (k, v) in metadata {
                let _ = writeln!(out, "# {k} = {v}");
            }
            out.push_str(&SweepRow::COLUMNS.join(","));
            out.push('\n');
            for row in rows {
                for v in row.numbers() {
                    // Display for f64 never uses grouping or exponents
                    let _ = write!(out, "{v},");
                }
                let _ = writeln!(out, "{}", row.feasible);
            }
            out
        }
        OutputFormat::Json => {
            let metadata = metadata
                .iter()
                .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                .collect();
            let mut s = serde_json::to_string_pretty(&JsonDocument { metadata, rows })
                .expect("rows serialize");
            s.push('\n');
            s
        }
    })
}

/// Writes rendered rows to `path`.
pub fn emit(
    rows: &[SweepRow],
    format: OutputFormat,
    metadata: &[(String, String)],
    path: &Path,
) -> Result<()> {
    let text = render(rows, format, metadata)?;
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}
