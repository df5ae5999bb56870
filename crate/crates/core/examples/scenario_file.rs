//! Loads a scenario file, runs its sweep and writes the result.
//!
//! Usage: `cargo run --release --example scenario_file [scenario.toml]`
//! Without an argument an inline rain scenario is used and CSV goes to stdout.

use fso_qkd::scenario::{cutoff_distance, parse_scenario, render, run_sweep};

const INLINE: &str = r#"
[link]
trace = "MIR_UPCONV"

[weather]
preset = "RAIN_TURB"

[sweep]
d_start_km = 0
d_end_km = 30
d_step_km = 2
"#;

fn main() -> fso_qkd::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).map_err(|source| fso_qkd::Error::Io {
            path: path.into(),
            source,
        })?,
        None => INLINE.to_owned(),
    };
    let scenario = parse_scenario(&text)?;
    let rows = run_sweep(&scenario);
    print!("{}", render(&rows, scenario.output.format, &scenario.metadata())?);
    match cutoff_distance(&rows) {
        Some(d) => eprintln!("cutoff {d} km"),
        None => eprintln!("no feasible distance"),
    }
    Ok(())
}
