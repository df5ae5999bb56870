//! Gains, error rates and dead-time derating for each hardware trace at a
//! fixed channel transmittance.

use fso_qkd::detstats::{DetectionModel, Intensity, SourceModel};
use fso_qkd::receiver::{Basis, Trace};

fn main() -> fso_qkd::Result<()> {
    let source = SourceModel::default();
    for tau in [1.0, 1e-2, 1e-5] {
        println!("channel transmittance {tau:e}");
        for trace in Trace::ALL {
            let m = DetectionModel::new(&source, &trace.receiver(), tau)?;
            let o = &m.observables;
            println!(
                "  {:<14} gain Z(mu1) {:.3e}  qber Z {:.4}  qber X {:.4}  dead-time factor {:.4}",
                trace.name(),
                o.gain[(Basis::Z, Intensity::Signal)],
                o.qber[(Basis::Z, Intensity::Signal)],
                o.qber[(Basis::X, Intensity::Signal)],
                m.line_dead_time_factor[Basis::Z.index()]
            );
        }
    }
    Ok(())
}
