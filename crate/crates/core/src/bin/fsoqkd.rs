use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fso_qkd::atmosphere::{spectral_radiance, total_budget, wien_peak_um, PathGeometry};
use fso_qkd::mcsim::{compare_to_analytic, McConfig};
use fso_qkd::receiver::Trace;
use fso_qkd::scenario::{cutoff_distance, emit, parse_scenario, render, run_sweep, OutputFormat, Scenario, WeatherPreset};
use fso_qkd::Error;

#[derive(Parser)]
#[command(name = "fsoqkd", version, about = "Free-space QKD link simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario file (TOML)
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Weather preset, replaces the file's weather section
    #[arg(long)]
    preset: Option<String>,
    /// Hardware trace, replaces the file's carrier and receiver
    #[arg(long)]
    trace: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

impl ScenarioArgs {
    fn load(&self) -> Result<Scenario, Error> {
        let text = match &self.scenario {
            Some(path) => std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?,
            None => String::new(),
        };
        let mut s = parse_scenario(&text)?;
        if let Some(p) = &self.preset {
            s.set_weather_preset(p.parse()?);
        }
        if let Some(t) = &self.trace {
            s.set_trace(t.parse()?);
        }
        if let Some(seed) = self.seed {
            s.seed = seed;
        }
        s.validate()?;
        Ok(s)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Attenuation budget at one distance
    Budget {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, allow_negative_numbers = true)]
        distance_km: f64,
    },
    /// Distance sweep through the full key-rate chain
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<String>,
    },
    /// Monte Carlo block compared against the analytic detection model
    Mc {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Channel transmittance; defaults to the budget at --distance-km
        #[arg(long)]
        transmittance: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        distance_km: f64,
        #[arg(long, default_value_t = 10_000_000)]
        pulses: u64,
    },
    /// Black-body spectral radiance table
    Blackbody {
        #[arg(long, value_delimiter = ',', default_value = "5778,288")]
        temperatures: Vec<f64>,
        #[arg(long, default_value_t = 0.2)]
        from_um: f64,
        #[arg(long, default_value_t = 20.0)]
        to_um: f64,
        #[arg(long, default_value_t = 0.1)]
        step_um: f64,
    },
    /// List weather presets and hardware traces
    Presets,
}

fn main() -> ExitCode {
    // clap reports usage errors with code 2, which is reserved here for
    // sweeps without a feasible distance
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Budget {
            scenario,
            distance_km,
        } => {
            let s = scenario.load()?;
            let geom = PathGeometry::new(distance_km, s.telescope_radius_m)?;
            let b = total_budget(&s.carrier, &geom, &s.weather, &s.absorption)?;
            println!("{}", serde_json::to_string_pretty(&b).expect("budget serializes"));
        }
        Command::Sweep {
            scenario,
            out,
            format,
        } => {
            let mut s = scenario.load()?;
            if let Some(f) = format {
                s.output.format = f.parse::<OutputFormat>()?;
            }
            if out.is_some() {
                s.output.path = out;
            }
            let rows = run_sweep(&s);
            let meta = s.metadata();
            match &s.output.path {
                Some(path) => emit(&rows, s.output.format, &meta, path)?,
                None => print!("{}", render(&rows, s.output.format, &meta)?),
            }
            match cutoff_distance(&rows) {
                Some(d) => eprintln!("cutoff distance: {d} km"),
                None => {
                    eprintln!("no distance yields a positive key");
                    return Ok(ExitCode::from(2));
                }
            }
        }
        Command::Mc {
            scenario,
            transmittance,
            distance_km,
            pulses,
        } => {
            let s = scenario.load()?;
            let tau = match transmittance {
                Some(t) => t,
                None => {
                    let geom = PathGeometry::new(distance_km, s.telescope_radius_m)?;
                    total_budget(&s.carrier, &geom, &s.weather, &s.absorption)?.transmittance
                }
            };
            let report = compare_to_analytic(&McConfig {
                seed: s.seed,
                n_pulses: pulses,
                source: s.source,
                receiver: s.receiver,
                channel_transmittance: tau,
            })?;
            println!("basis,intensity,quantity,observed,expected,sigma,z,flagged");
            for c in &report.cells {
                println!(
                    "{},{:?},{:?},{},{},{},{:.3},{}",
                    c.basis, c.intensity, c.quantity, c.observed, c.expected, c.sigma, c.z_score, c.flagged
                );
            }
            if report.any_flagged() {
                eprintln!("max |z| = {:.2} exceeds the limit", report.max_abs_z());
            }
        }
        Command::Blackbody {
            temperatures,
            from_um,
            to_um,
            step_um,
        } => {
            if !(step_um > 0.0 && from_um > 0.0 && to_um >= from_um) {
                return Err(Error::Invalid {
                    what: "wavelength range",
                    reason: format!("{from_um}..{to_um} step {step_um}"),
                });
            }
            for t in &temperatures {
                println!("# wien_peak_um[{t} K] = {}", wien_peak_um(*t));
            }
            let header: Vec<String> = temperatures.iter().map(|t| format!("radiance_{t}K")).collect();
            println!("wavelength_um,{}", header.join(","));
            let n = ((to_um - from_um) / step_um + 1e-9).floor() as usize;
            for i in 0..=n {
                let lam = from_um + i as f64 * step_um;
                let vals: Vec<String> = temperatures
                    .iter()
                    .map(|t| spectral_radiance(*t, lam).to_string())
                    .collect();
                println!("{lam},{}", vals.join(","));
            }
        }
        Command::Presets => {
            println!("weather presets:");
            for p in WeatherPreset::ALL {
                println!("  {:<11} {}", p.name(), p.describe());
            }
            println!("hardware traces:");
            for t in Trace::ALL {
                let rx = t.receiver();
                println!(
                    "  {:<14} λ = {} nm, η = {}, dark = {} Hz, dead time = {} s",
                    t.name(),
                    t.wavelength_nm(),
                    rx.detector.efficiency,
                    rx.detector.dark_count_rate_hz,
                    rx.detector.dead_time_s
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
