//! Attenuation breakdown for the three carriers in fog, 1 to 10 km.

use fso_qkd::atmosphere::{total_budget, AbsorptionTable, PathGeometry};
use fso_qkd::receiver::Trace;
use fso_qkd::scenario::WeatherPreset;

fn main() -> fso_qkd::Result<()> {
    let weather = WeatherPreset::Fog.weather();
    let table = AbsorptionTable::default();
    println!("trace,distance_km,geometric_db,mie_db,rayleigh_db,absorption_db,total_db,transmittance");
    for trace in [Trace::Nir800, Trace::Nir1550, Trace::MirUpconv] {
        for d in 1..=10 {
            let geom = PathGeometry::from_diameter(d as f64, 0.5)?;
            let b = total_budget(&trace.carrier(), &geom, &weather, &table)?;
            println!(
                "{},{d},{:.4},{:.4},{:.3e},{:.4},{:.4},{:.3e}",
                trace.name(),
                b.geometric_db,
                b.mie_db,
                b.rayleigh_db,
                b.absorption_db,
                b.total_db,
                b.transmittance
            );
        }
    }
    Ok(())
}
