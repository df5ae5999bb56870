//! Cutoff distance for every weather preset and hardware trace.
//!
//! Clear-sky panels use the default graded grid; the weather panels are
//! short enough to sweep at 0.1 km.

use fso_qkd::receiver::Trace;
use fso_qkd::scenario::{cutoff_distance, run_sweep, Scenario, SweepSpec, WeatherPreset};

fn main() -> fso_qkd::Result<()> {
    print!("{:<11}", "preset");
    for t in Trace::ALL {
        print!("{:>15}", t.name());
    }
    println!();
    for w in WeatherPreset::ALL {
        print!("{:<11}", w.name());
        for t in Trace::ALL {
            let mut s = Scenario::from_presets(w.name(), t.name())?;
            if !w.name().starts_with("CLEAR") {
                s.sweep = SweepSpec::uniform(0.0, 60.0, 0.1)?;
            }
            let cutoff = cutoff_distance(&run_sweep(&s))
                .map(|d| format!("{d:.1} km"))
                .unwrap_or_else(|| "none".into());
            print!("{cutoff:>15}");
        }
        println!();
    }
    Ok(())
}
