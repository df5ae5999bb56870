//! Scenario files, presets, distance sweeps and result emission.
//!
//! A scenario is a TOML document; every section and key is optional and
//! falls back to the documented defaults. The grammar is described in
//! `docs/scenario.md`:
//!
//! ```toml
//! [link]
//! trace = "MIR_UPCONV"
//! telescope_diameter_m = 0.5
//!
//! [weather]
//! preset = "RAIN_TURB"
//!
//! [sweep]
//! d_start_km = 1
//! d_end_km = 40
//! d_step_km = 0.5
//! ```

mod emit;
mod optimize;
mod presets;
mod sweep;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::atmosphere::{AbsorptionTable, OpticalCarrier, WeatherScenario};
use crate::detstats::SourceModel;
use crate::error::{ensure, Error, Result};
use crate::finitekey::{Fluctuations, SecurityBudget};
use crate::receiver::{ReceiverModel, Trace};

pub use emit::{emit, render, SweepRow};
pub use optimize::{optimize_intensities, IntensityGrid, IntensityOptimum};
pub use presets::WeatherPreset;
pub use sweep::{cutoff_distance, evaluate_link, run_sweep};

/// Default telescope aperture diameter, m.
pub const DEFAULT_TELESCOPE_DIAMETER_M: f64 = 0.5;
pub const DEFAULT_SWEEP_END_KM: f64 = 1500.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::UnknownPreset {
                kind: "output format",
                name: s.to_owned(),
                valid: vec!["csv", "json"],
            }),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// Distances to evaluate, km.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SweepSpec {
    Uniform { start_km: f64, end_km: f64, step_km: f64 },
    /// 1 km steps up to 50 km, 10 km steps beyond.
    Graded { start_km: f64, end_km: f64 },
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec::Graded {
            start_km: 0.0,
            end_km: DEFAULT_SWEEP_END_KM,
        }
    }
}

impl SweepSpec {
    pub fn uniform(start_km: f64, end_km: f64, step_km: f64) -> Result<Self> {
        let s = SweepSpec::Uniform {
            start_km,
            end_km,
            step_km,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let (start, end) = match *self {
            SweepSpec::Uniform {
                start_km,
                end_km,
                step_km,
            } => {
                ensure(step_km.is_finite() && step_km > 0.0, "sweep", || {
                    format!("d_step_km={step_km} must be positive")
                })?;
                (start_km, end_km)
            }
            SweepSpec::Graded { start_km, end_km } => (start_km, end_km),
        };
        ensure(start.is_finite() && start >= 0.0, "sweep", || {
            format!("d_start_km={start} must be non-negative")
        })?;
        ensure(end.is_finite() && start <= end, "sweep", || {
            format!("d_start_km={start} exceeds d_end_km={end}")
        })
    }

    pub fn distances(&self) -> Vec<f64> {
        match *self {
            SweepSpec::Uniform {
                start_km,
                end_km,
                step_km,
            } => {
                let n = ((end_km - start_km) / step_km + 1e-9).floor() as usize;
                (0..=n).map(|i| start_km + i as f64 * step_km).collect()
            }
            SweepSpec::Graded { start_km, end_km } => {
                let fine_end = end_km.min(50.0);
                let mut out: Vec<f64> = (0..)
                    .map(|i| start_km + i as f64)
                    .take_while(|d| *d <= fine_end + 1e-9)
                    .collect();
                let mut d = 60.0;
                while d <= end_km + 1e-9 {
                    if d >= start_km {
                        out.push(d);
                    }
                    d += 10.0;
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
}

/// A fully resolved scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub trace: Option<Trace>,
    pub carrier: OpticalCarrier,
    pub telescope_radius_m: f64,
    pub weather_preset: Option<WeatherPreset>,
    pub weather: WeatherScenario,
    pub receiver: ReceiverModel,
    pub source: SourceModel,
    pub security: SecurityBudget,
    pub fluctuations: Fluctuations,
    pub absorption: AbsorptionTable,
    pub sweep: SweepSpec,
    pub output: OutputSpec,
    pub seed: u64,
    /// Keys that took their default value.
    pub defaulted: Vec<String>,
}

impl Scenario {
    /// Scenario for a weather panel and hardware trace with all defaults.
    pub fn from_presets(weather: &str, trace: &str) -> Result<Self> {
        let mut s = parse_scenario("")?;
        s.set_weather_preset(weather.parse()?);
        s.set_trace(trace.parse()?);
        Ok(s)
    }

    pub fn set_weather_preset(&mut self, preset: WeatherPreset) {
        self.weather_preset = Some(preset);
        self.weather = preset.weather();
    }

    /// Replaces carrier and receiver with the trace's preset values.
    pub fn set_trace(&mut self, trace: Trace) {
        self.trace = Some(trace);
        self.carrier = trace.carrier();
        self.receiver = trace.receiver();
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.telescope_radius_m > 0.0, "telescope", || {
            format!("radius {} m must be positive", self.telescope_radius_m)
        })?;
        self.weather.validate()?;
        self.receiver.validate()?;
        self.source.validate()?;
        self.security.validate()?;
        self.sweep.validate()?;
        crate::atmosphere::absorption_db_per_km(&self.carrier, &self.absorption)?;
        crate::atmosphere::rayleigh_scatter_db_per_km(&self.carrier)?;
        Ok(())
    }

    /// Every parameter, including defaults, as ordered key/value pairs.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut m: Vec<(String, String)> = Vec::new();
        let mut put = |k: &str, v: String| m.push((k.to_owned(), v));
        put("tool", env!("CARGO_PKG_NAME").to_owned());
        put("version", env!("CARGO_PKG_VERSION").to_owned());
        put("seed", self.seed.to_string());
        put("link.trace", self.trace.map_or("custom".into(), |t| t.name().into()));
        put("link.carrier", self.carrier.label().to_owned());
        put("link.wavelength_nm", self.carrier.wavelength_nm().to_string());
        put("link.telescope_diameter_m", (2.0 * self.telescope_radius_m).to_string());
        put(
            "weather.preset",
            self.weather_preset.map_or("custom".into(), |p| p.name().into()),
        );
        put("weather.visibility_km", self.weather.visibility_km.to_string());
        put("weather.rain_rate_mm_per_h", self.weather.rain_rate_mm_per_h.to_string());
        put("weather.turbulence", self.weather.turbulence_enabled.to_string());
        put("weather.cn2", self.weather.cn2.to_string());
        let rx = &self.receiver;
        put("receiver.detector", rx.detector.label.clone());
        put("receiver.efficiency", rx.detector.efficiency.to_string());
        put("receiver.dark_count_rate_hz", rx.detector.dark_count_rate_hz.to_string());
        put("receiver.dead_time_s", rx.detector.dead_time_s.to_string());
        put("receiver.z_insertion_db", rx.z_insertion_db.to_string());
        put("receiver.x_insertion_db", rx.x_insertion_db.to_string());
        put("receiver.basis_split", rx.basis_split.to_string());
        put("receiver.interferometer_visibility", rx.interferometer_visibility.to_string());
        let s = &self.source;
        put("source.mu1", s.mu1.to_string());
        put("source.mu2", s.mu2.to_string());
        put("source.p_basis_z", s.p_basis_z.to_string());
        put("source.p_mu1", s.p_mu1.to_string());
        put("source.clock_rate_hz", s.clock_rate_hz.to_string());
        put("source.misalignment_error", s.misalignment_error.to_string());
        let sec = &self.security;
        put("security.eps_sec", sec.eps_sec.to_string());
        put("security.eps_cor", sec.eps_cor.to_string());
        put("security.n_z", sec.n_z.to_string());
        put("security.ec_efficiency", sec.ec_efficiency.to_string());
        put("security.eps_per_bound", sec.eps_per_bound().to_string());
        put(
            "security.fluctuations",
            match self.fluctuations {
                Fluctuations::Finite => "finite",
                Fluctuations::Asymptotic => "asymptotic",
            }
            .into(),
        );
        for (label, v) in self.absorption.iter() {
            put(&format!("absorption.{label}"), v.to_string());
        }
        match self.sweep {
            SweepSpec::Uniform {
                start_km,
                end_km,
                step_km,
            } => {
                put("sweep.d_start_km", start_km.to_string());
                put("sweep.d_end_km", end_km.to_string());
                put("sweep.d_step_km", step_km.to_string());
            }
            SweepSpec::Graded { start_km, end_km } => {
                put("sweep.d_start_km", start_km.to_string());
                put("sweep.d_end_km", end_km.to_string());
                put("sweep.d_step_km", "graded (1 km to 50 km, then 10 km)".into());
            }
        }
        put("defaulted", self.defaulted.join(","));
        m
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    link: Option<RawLink>,
    weather: Option<RawWeather>,
    receiver: Option<RawReceiver>,
    source: Option<RawSource>,
    security: Option<RawSecurity>,
    absorption: Option<BTreeMap<String, f64>>,
    sweep: Option<RawSweep>,
    output: Option<RawOutput>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLink {
    trace: Option<String>,
    wavelength_nm: Option<f64>,
    label: Option<String>,
    telescope_diameter_m: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWeather {
    preset: Option<String>,
    visibility_km: Option<f64>,
    rain_rate_mm_per_h: Option<f64>,
    turbulence: Option<bool>,
    cn2: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReceiver {
    efficiency: Option<f64>,
    dark_count_rate_hz: Option<f64>,
    dead_time_s: Option<f64>,
    z_insertion_db: Option<f64>,
    x_insertion_db: Option<f64>,
    interferometer_visibility: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSource {
    mu1: Option<f64>,
    mu2: Option<f64>,
    p_basis_z: Option<f64>,
    p_mu1: Option<f64>,
    clock_rate_hz: Option<f64>,
    misalignment_error: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSecurity {
    eps_sec: Option<f64>,
    eps_cor: Option<f64>,
    n_z: Option<f64>,
    fluctuations: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    d_start_km: Option<f64>,
    d_end_km: Option<f64>,
    d_step_km: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    path: Option<String>,
    format: Option<String>,
    seed: Option<u64>,
}

/// Records which keys fell back to defaults.
struct Resolver {
    defaulted: Vec<String>,
}

impl Resolver {
    fn take<T>(&mut self, value: Option<T>, key: &str, default: T) -> T {
        value.unwrap_or_else(|| {
            self.defaulted.push(key.to_owned());
            default
        })
    }
}

fn parse_error(text: &str, err: toml::de::Error) -> Error {
    let offset = err.span().map_or(0, |s| s.start.min(text.len()));
    let line = text[..offset].matches('\n').count() + 1;
    let line_text = text.lines().nth(line - 1).unwrap_or("");
    let key = line_text
        .split_once('=')
        .map(|(k, _)| k.trim().trim_matches('"').to_owned())
        .filter(|k| !k.is_empty() && !k.starts_with('['));
    Error::Parse {
        line,
        key,
        message: err.message().trim().to_owned(),
    }
}

/// Parses and resolves a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| parse_error(text, e))?;
    let mut r = Resolver {
        defaulted: Vec::new(),
    };

    let link = raw.link.unwrap_or_default();
    let trace: Trace = match link.trace {
        Some(name) => name.parse()?,
        None => {
            r.defaulted.push("link.trace".into());
            Trace::Nir1550
        }
    };
    let carrier = match link.wavelength_nm {
        Some(lam) => match link.label {
            Some(label) => OpticalCarrier::with_label(lam, label)?,
            None => OpticalCarrier::new(lam)?,
        },
        None => trace.carrier(),
    };
    let custom_carrier = carrier != trace.carrier();
    let diameter = r.take(link.telescope_diameter_m, "link.telescope_diameter_m", DEFAULT_TELESCOPE_DIAMETER_M);
    ensure(diameter.is_finite() && diameter > 0.0, "telescope", || {
        format!("link.telescope_diameter_m={diameter} must be positive")
    })?;

    let w = raw.weather.unwrap_or_default();
    let preset = match w.preset {
        Some(name) => name.parse()?,
        None => {
            r.defaulted.push("weather.preset".into());
            WeatherPreset::Clear
        }
    };
    let base = preset.weather();
    let weather_overridden = w.visibility_km.is_some()
        || w.rain_rate_mm_per_h.is_some()
        || w.turbulence.is_some()
        || w.cn2.is_some();
    let weather = WeatherScenario::new(
        w.visibility_km.unwrap_or(base.visibility_km),
        w.rain_rate_mm_per_h.unwrap_or(base.rain_rate_mm_per_h),
        w.turbulence.unwrap_or(base.turbulence_enabled),
        r.take(w.cn2, "weather.cn2", base.cn2),
    )?;

    let rx_raw = raw.receiver.unwrap_or_default();
    let mut receiver = trace.receiver();
    receiver.detector.efficiency = r.take(rx_raw.efficiency, "receiver.efficiency", receiver.detector.efficiency);
    receiver.detector.dark_count_rate_hz = r.take(
        rx_raw.dark_count_rate_hz,
        "receiver.dark_count_rate_hz",
        receiver.detector.dark_count_rate_hz,
    );
    receiver.detector.dead_time_s = r.take(rx_raw.dead_time_s, "receiver.dead_time_s", receiver.detector.dead_time_s);
    receiver.z_insertion_db = r.take(rx_raw.z_insertion_db, "receiver.z_insertion_db", receiver.z_insertion_db);
    receiver.x_insertion_db = r.take(rx_raw.x_insertion_db, "receiver.x_insertion_db", receiver.x_insertion_db);
    receiver.interferometer_visibility = r.take(
        rx_raw.interferometer_visibility,
        "receiver.interferometer_visibility",
        receiver.interferometer_visibility,
    );
    receiver.validate()?;

    let s = raw.source.unwrap_or_default();
    let d = SourceModel::default();
    let source = SourceModel {
        mu1: r.take(s.mu1, "source.mu1", d.mu1),
        mu2: r.take(s.mu2, "source.mu2", d.mu2),
        p_basis_z: r.take(s.p_basis_z, "source.p_basis_z", d.p_basis_z),
        p_mu1: r.take(s.p_mu1, "source.p_mu1", d.p_mu1),
        clock_rate_hz: r.take(s.clock_rate_hz, "source.clock_rate_hz", d.clock_rate_hz),
        misalignment_error: r.take(s.misalignment_error, "source.misalignment_error", d.misalignment_error),
    };
    source.validate()?;

    let sec = raw.security.unwrap_or_default();
    let d = SecurityBudget::default();
    let security = SecurityBudget {
        eps_sec: r.take(sec.eps_sec, "security.eps_sec", d.eps_sec),
        eps_cor: r.take(sec.eps_cor, "security.eps_cor", d.eps_cor),
        ec_efficiency: d.ec_efficiency,
        n_z: r.take(sec.n_z, "security.n_z", d.n_z),
    };
    security.validate()?;
    let fluctuations = match r.take(sec.fluctuations, "security.fluctuations", "finite".into()).as_str() {
        "finite" => Fluctuations::Finite,
        "asymptotic" => Fluctuations::Asymptotic,
        other => {
            return Err(Error::UnknownPreset {
                kind: "fluctuation mode",
                name: other.to_owned(),
                valid: vec!["finite", "asymptotic"],
            })
        }
    };

    let mut absorption = AbsorptionTable::default();
    for (label, v) in raw.absorption.unwrap_or_default() {
        absorption.insert(label, v)?;
    }

    let sw = raw.sweep.unwrap_or_default();
    let start = r.take(sw.d_start_km, "sweep.d_start_km", 0.0);
    let end = r.take(sw.d_end_km, "sweep.d_end_km", DEFAULT_SWEEP_END_KM);
    let sweep = match sw.d_step_km {
        Some(step) => SweepSpec::uniform(start, end, step)?,
        None => {
            r.defaulted.push("sweep.d_step_km".into());
            let s = SweepSpec::Graded {
                start_km: start,
                end_km: end,
            };
            s.validate()?;
            s
        }
    };

    let out = raw.output.unwrap_or_default();
    let format = match out.format {
        Some(f) => f.parse()?,
        None => {
            r.defaulted.push("output.format".into());
            OutputFormat::Csv
        }
    };
    let seed = r.take(out.seed, "output.seed", 0);

    let scenario = Scenario {
        trace: (!custom_carrier).then_some(trace),
        carrier,
        telescope_radius_m: diameter / 2.0,
        weather_preset: (!weather_overridden).then_some(preset),
        weather,
        receiver,
        source,
        security,
        fluctuations,
        absorption,
        sweep,
        output: OutputSpec {
            path: out.path.map(PathBuf::from),
            format,
        },
        seed,
        defaulted: r.defaulted,
    };
    scenario.validate()?;
    Ok(scenario)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_clear_nir1550() {
        let s = parse_scenario("").unwrap();
        assert_eq!(s.weather_preset, Some(WeatherPreset::Clear));
        assert_eq!(s.weather.visibility_km, 40.0);
        assert_eq!(s.weather.rain_rate_mm_per_h, 0.0);
        assert!(!s.weather.turbulence_enabled);
        assert_eq!(s.trace, Some(Trace::Nir1550));
        assert_eq!(s.telescope_radius_m, 0.25);
        assert_eq!(s.sweep, SweepSpec::default());
        assert!(s.defaulted.contains(&"source.clock_rate_hz".to_owned()));
        assert!(s.defaulted.contains(&"source.misalignment_error".to_owned()));
        assert!(s.defaulted.contains(&"receiver.interferometer_visibility".to_owned()));
    }

    #[test]
    fn empty_weather_section_is_clear() {
        let s = parse_scenario("[weather]\n").unwrap();
        assert_eq!(s.weather, WeatherPreset::Clear.weather());
    }

    #[test]
    fn fog_turb_preset() {
        let s = parse_scenario("[weather]\npreset = \"FOG_TURB\"\n").unwrap();
        assert_eq!(s.weather.visibility_km, 1.0);
        assert!(s.weather.turbulence_enabled);
        assert_eq!(s.weather.cn2, 1e-14);
    }

    #[test]
    fn overrides_apply() {
        let text = r#"
[link]
trace = "MIR_REALISTIC"

[weather]
preset = "RAIN"
rain_rate_mm_per_h = 10
visibility_km = 2

[receiver]
efficiency = 0.3

[source]
mu1 = 0.6
clock_rate_hz = 2.5e9

[security]
n_z = 1e9

[absorption]
"3998.6nm" = 0.004

[sweep]
d_start_km = 1
d_end_km = 20
d_step_km = 0.5

[output]
format = "json"
seed = 42
"#;
        let s = parse_scenario(text).unwrap();
        assert_eq!(s.trace, Some(Trace::MirRealistic));
        assert_eq!(s.weather_preset, None);
        assert_eq!((s.weather.rain_rate_mm_per_h, s.weather.visibility_km), (10.0, 2.0));
        assert_eq!(s.receiver.detector.efficiency, 0.3);
        assert_eq!(s.receiver.detector.dark_count_rate_hz, 100.0);
        assert_eq!((s.source.mu1, s.source.clock_rate_hz), (0.6, 2.5e9));
        assert_eq!(s.security.n_z, 1e9);
        assert_eq!(s.absorption.get("3998.6nm"), Some(0.004));
        assert_eq!(s.sweep.distances().len(), 39);
        assert_eq!((s.output.format, s.seed), (OutputFormat::Json, 42));
        assert!(!s.defaulted.contains(&"source.mu1".to_owned()));
    }

    #[test]
    fn negative_step_is_rejected() {
        let err = parse_scenario("[sweep]\nd_step_km = -1\n").unwrap_err();
        assert!(matches!(err, Error::Invalid { what: "sweep", .. }), "{err}");
        assert!(parse_scenario("[sweep]\nd_start_km = 10\nd_end_km = 5\n").is_err());
    }

    #[test]
    fn parse_errors_carry_line_and_key() {
        let err = parse_scenario("[source]\nmu1 = 0.5\nmu3 = 0.1\n").unwrap_err();
        match err {
            Error::Parse { line, key, .. } => {
                assert_eq!(line, 3);
                assert_eq!(key.as_deref(), Some("mu3"));
            }
            other => panic!("unexpected {other}"),
        }
        let err = parse_scenario("[weather]\n\nvisibility_km = \"far\"\n").unwrap_err();
        match err {
            Error::Parse { line, key, .. } => {
                assert_eq!(line, 3);
                assert_eq!(key.as_deref(), Some("visibility_km"));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn invariant_violations_name_the_field() {
        let err = parse_scenario("[source]\nmu1 = 0.2\nmu2 = 0.3\n").unwrap_err();
        assert!(err.to_string().contains("mu1 > mu2"), "{err}");
        assert!(parse_scenario("[weather]\nvisibility_km = 0\n").is_err());
        assert!(parse_scenario("[weather]\npreset = \"HAIL\"\n").is_err());
        assert!(parse_scenario("[link]\nwavelength_nm = 2100\n").is_err(), "missing absorption entry");
        assert!(parse_scenario("[link]\nwavelength_nm = 2100\n[absorption]\n\"2100nm\" = 0.01\n").is_ok());
    }

    #[test]
    fn graded_grid() {
        let d = SweepSpec::Graded { start_km: 0.0, end_km: 100.0 }.distances();
        assert_eq!(d.len(), 51 + 5);
        assert_eq!(d[50], 50.0);
        assert_eq!(d[51], 60.0);
        assert_eq!(*d.last().unwrap(), 100.0);
        let d = SweepSpec::Graded { start_km: 70.0, end_km: 100.0 }.distances();
        assert_eq!(d, vec![70.0, 80.0, 90.0, 100.0]);
    }

    #[test]
    fn uniform_grid_includes_end() {
        let d = SweepSpec::uniform(0.0, 1.0, 0.1).unwrap().distances();
        assert_eq!(d.len(), 11);
        assert!((d[10] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn metadata_echoes_defaults() {
        let s = parse_scenario("").unwrap();
        let meta = s.metadata();
        let get = |k: &str| meta.iter().find(|(key, _)| key == k).map(|(_, v)| v.clone());
        assert_eq!(get("source.clock_rate_hz").as_deref(), Some("1000000000"));
        assert_eq!(get("source.misalignment_error").as_deref(), Some("0.01"));
        assert_eq!(get("receiver.interferometer_visibility").as_deref(), Some("0.98"));
        assert!(get("security.eps_per_bound").is_some());
        assert!(get("defaulted").unwrap().contains("source.p_mu1"));
    }
}
