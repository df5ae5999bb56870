//! Distance- and weather-dependent channel losses.
//!
//! Every loss mechanism is expressed in dB. Scattering and absorption are
//! specific attenuations (dB/km) that scale linearly with distance; beam
//! spreading and turbulence are evaluated as totals over the whole path.
//! [`total_budget`] combines them into an [`AttenuationBudget`] whose
//! transmittance is `10^(-total_db / 10)`.

mod blackbody;

use std::collections::BTreeMap;
use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

pub use blackbody::{spectral_radiance, wien_peak_um, WIEN_CONSTANT_UM_K};

/// Default refractive-index structure parameter, m^(-2/3).
pub const DEFAULT_CN2: f64 = 1e-14;

/// Optical source wavelength.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpticalCarrier {
    wavelength_nm: f64,
    label: String,
}

impl OpticalCarrier {
    /// Carrier labelled by its wavelength, e.g. `1557.7nm`.
    pub fn new(wavelength_nm: f64) -> Result<Self> {
        Self::with_label(wavelength_nm, format!("{wavelength_nm}nm"))
    }

    pub fn with_label(wavelength_nm: f64, label: impl Into<String>) -> Result<Self> {
        ensure(
            wavelength_nm.is_finite() && wavelength_nm > 0.0,
            "wavelength",
            || format!("{wavelength_nm} nm must be positive"),
        )?;
        Ok(Self {
            wavelength_nm,
            label: label.into(),
        })
    }

    pub fn wavelength_nm(&self) -> f64 {
        self.wavelength_nm
    }

    pub fn wavelength_m(&self) -> f64 {
        self.wavelength_nm * 1e-9
    }

    /// Spectroscopic wavenumber `10^4 / λ[µm]` in cm⁻¹.
    pub fn wavenumber_per_cm(&self) -> f64 {
        1e7 / self.wavelength_nm
    }

    /// Angular wavenumber `2π / λ[m]` in m⁻¹.
    pub fn angular_wavenumber_per_m(&self) -> f64 {
        2.0 * PI / self.wavelength_m()
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Link length and telescope size. Transmitter and receiver apertures are equal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathGeometry {
    pub distance_km: f64,
    pub telescope_radius_m: f64,
}

impl PathGeometry {
    pub fn new(distance_km: f64, telescope_radius_m: f64) -> Result<Self> {
        ensure(distance_km.is_finite() && distance_km >= 0.0, "distance", || {
            format!("{distance_km} km must be non-negative")
        })?;
        ensure(
            telescope_radius_m.is_finite() && telescope_radius_m > 0.0,
            "telescope radius",
            || format!("{telescope_radius_m} m must be positive"),
        )?;
        Ok(Self {
            distance_km,
            telescope_radius_m,
        })
    }

    pub fn from_diameter(distance_km: f64, telescope_diameter_m: f64) -> Result<Self> {
        Self::new(distance_km, telescope_diameter_m / 2.0)
    }

    pub fn at_distance(self, distance_km: f64) -> Result<Self> {
        Self::new(distance_km, self.telescope_radius_m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeatherScenario {
    pub visibility_km: f64,
    pub rain_rate_mm_per_h: f64,
    pub turbulence_enabled: bool,
    pub cn2: f64,
}

impl WeatherScenario {
    pub fn new(
        visibility_km: f64,
        rain_rate_mm_per_h: f64,
        turbulence_enabled: bool,
        cn2: f64,
    ) -> Result<Self> {
        let w = Self {
            visibility_km,
            rain_rate_mm_per_h,
            turbulence_enabled,
            cn2,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        ensure(
            self.visibility_km.is_finite() && self.visibility_km > 0.0,
            "visibility",
            || format!("{} km must be positive", self.visibility_km),
        )?;
        ensure(
            self.rain_rate_mm_per_h.is_finite() && self.rain_rate_mm_per_h >= 0.0,
            "rain rate",
            || format!("{} mm/h must be non-negative", self.rain_rate_mm_per_h),
        )?;
        ensure(self.cn2.is_finite() && self.cn2 >= 0.0, "cn2", || {
            format!("{} must be non-negative", self.cn2)
        })
    }
}

/// Specific molecular absorption (dB/km) keyed by carrier label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbsorptionTable(BTreeMap<String, f64>);

impl Default for AbsorptionTable {
    /// Transparency-window minima for the three shipped carriers. 800 nm has
    /// no tabulated entry beyond zero; its clear-air loss is the Rayleigh term.
    fn default() -> Self {
        let mut map = BTreeMap::new();
        map.insert("800nm".to_owned(), 0.0);
        map.insert("1557.7nm".to_owned(), 1e-3);
        map.insert("3998.6nm".to_owned(), 1.9e-3);
        Self(map)
    }
}

impl AbsorptionTable {
    pub fn empty() -> Self {
        Self(BTreeMap::new())
    }

    pub fn insert(&mut self, label: impl Into<String>, db_per_km: f64) -> Result<()> {
        ensure(db_per_km.is_finite() && db_per_km >= 0.0, "absorption", || {
            format!("{db_per_km} dB/km must be non-negative")
        })?;
        self.0.insert(label.into(), db_per_km);
        Ok(())
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.0.get(label).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

/// Per-mechanism losses over one path, in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttenuationBudget {
    pub geometric_db: f64,
    pub mie_db: f64,
    pub rain_db: f64,
    pub rayleigh_db: f64,
    pub turbulence_db: f64,
    pub absorption_db: f64,
    pub total_db: f64,
    pub transmittance: f64,
}

impl AttenuationBudget {
    fn from_components(components: [f64; 6]) -> Self {
        let [geometric_db, mie_db, rain_db, rayleigh_db, turbulence_db, absorption_db] =
            components.map(|c| c.max(0.0));
        let total_db =
            geometric_db + mie_db + rain_db + rayleigh_db + turbulence_db + absorption_db;
        Self {
            geometric_db,
            mie_db,
            rain_db,
            rayleigh_db,
            turbulence_db,
            absorption_db,
            total_db,
            transmittance: db_to_transmittance(total_db),
        }
    }

    /// The six components in sweep-column order.
    pub fn components(&self) -> [f64; 6] {
        [
            self.geometric_db,
            self.mie_db,
            self.rain_db,
            self.rayleigh_db,
            self.turbulence_db,
            self.absorption_db,
        ]
    }
}

pub fn db_to_transmittance(loss_db: f64) -> f64 {
    10f64.powf(-loss_db / 10.0)
}

/// Rayleigh range `π r² / (2λ)` in km, with the waist half way along the link.
pub fn rayleigh_range_km(geom: &PathGeometry, carrier: &OpticalCarrier) -> f64 {
    PI * geom.telescope_radius_m.powi(2) / (2.0 * carrier.wavelength_m()) / 1e3
}

/// Ratio of beam area at the receiver to the aperture area, in dB. Zero
/// while the beam still fits inside the aperture (`d ≤ 2Z`).
pub fn geometric_loss_db(geom: &PathGeometry, carrier: &OpticalCarrier) -> f64 {
    let z = rayleigh_range_km(geom, carrier);
    let d = geom.distance_km;
    if d <= 2.0 * z {
        return 0.0;
    }
    let area_ratio = 0.5 * (1.0 + ((d - z) / z).powi(2));
    10.0 * area_ratio.log10()
}

/// Size-distribution exponent of the visibility model.
pub fn mie_exponent(visibility_km: f64) -> f64 {
    if visibility_km > 50.0 {
        1.6
    } else if visibility_km >= 6.0 {
        1.3
    } else {
        0.585 * visibility_km.cbrt()
    }
}

/// Visibility-driven Mie scattering, dB/km.
pub fn mie_loss_db_per_km(carrier: &OpticalCarrier, visibility_km: f64) -> f64 {
    debug_assert!(visibility_km > 0.0);
    let p = mie_exponent(visibility_km);
    10.0 * E.log10() * (3.91 / visibility_km) * (carrier.wavelength_nm() / 550.0).powf(-p)
}

/// Rain attenuation, dB/km. Identical for every carrier.
pub fn rain_loss_db_per_km(rain_rate_mm_per_h: f64) -> f64 {
    debug_assert!(rain_rate_mm_per_h >= 0.0);
    if rain_rate_mm_per_h == 0.0 {
        return 0.0;
    }
    1.076 * rain_rate_mm_per_h.powf(0.67)
}

/// Molecular Rayleigh scattering, dB/km.
///
/// The empirical fit has a pole near 107.5 nm; shorter wavelengths are rejected.
pub fn rayleigh_scatter_db_per_km(carrier: &OpticalCarrier) -> Result<f64> {
    let nu = carrier.wavenumber_per_cm();
    let denom = 9.26799e18 - 1.07123e9 * nu * nu;
    if denom <= 0.0 {
        return Err(Error::Domain {
            model: "Rayleigh scattering fit",
            wavelength_nm: carrier.wavelength_nm(),
            reason: format!("denominator {denom:.3e} is not positive"),
        });
    }
    Ok(nu.powi(4) / denom)
}

/// Scintillation loss over the whole path, dB. SI units inside the root.
pub fn turbulence_loss_db(carrier: &OpticalCarrier, distance_km: f64, cn2: f64) -> f64 {
    debug_assert!(distance_km >= 0.0);
    let k = carrier.angular_wavenumber_per_m();
    let d_m = distance_km * 1e3;
    2.0 * (1.23 * k.powf(7.0 / 6.0) * cn2 * d_m.powf(11.0 / 6.0)).sqrt()
}

pub fn absorption_db_per_km(carrier: &OpticalCarrier, table: &AbsorptionTable) -> Result<f64> {
    table
        .get(carrier.label())
        .ok_or_else(|| Error::MissingAbsorption {
            label: carrier.label().to_owned(),
        })
}

pub fn total_budget(
    carrier: &OpticalCarrier,
    geom: &PathGeometry,
    weather: &WeatherScenario,
    table: &AbsorptionTable,
) -> Result<AttenuationBudget> {
    weather.validate()?;
    let d = geom.distance_km;
    let turbulence = if weather.turbulence_enabled {
        turbulence_loss_db(carrier, d, weather.cn2)
    } else {
        0.0
    };
    Ok(AttenuationBudget::from_components([
        geometric_loss_db(geom, carrier),
        mie_loss_db_per_km(carrier, weather.visibility_km) * d,
        rain_loss_db_per_km(weather.rain_rate_mm_per_h) * d,
        rayleigh_scatter_db_per_km(carrier)? * d,
        turbulence,
        absorption_db_per_km(carrier, table)? * d,
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn telecom() -> OpticalCarrier {
        OpticalCarrier::new(1557.7).unwrap()
    }

    fn midir() -> OpticalCarrier {
        OpticalCarrier::new(3998.6).unwrap()
    }

    fn geom(d: f64) -> PathGeometry {
        PathGeometry::new(d, 0.25).unwrap()
    }

    fn clear() -> WeatherScenario {
        WeatherScenario::new(40.0, 0.0, false, DEFAULT_CN2).unwrap()
    }

    #[test]
    fn carrier_derived_fields() {
        let c = telecom();
        assert_relative_eq!(c.wavenumber_per_cm() * c.wavelength_nm(), 1e7, max_relative = 1e-12);
        assert_relative_eq!(c.angular_wavenumber_per_m(), 2.0 * PI / 1557.7e-9);
        assert_eq!(c.label(), "1557.7nm");
        assert!(OpticalCarrier::new(0.0).is_err());
        assert!(OpticalCarrier::new(-3.0).is_err());
    }

    #[test]
    fn geometry_and_weather_invariants() {
        assert!(PathGeometry::new(-1.0, 0.25).is_err());
        assert!(PathGeometry::new(1.0, 0.0).is_err());
        assert_eq!(PathGeometry::from_diameter(5.0, 0.5).unwrap(), geom(5.0));
        assert!(WeatherScenario::new(0.0, 0.0, false, 1e-14).is_err());
        assert!(WeatherScenario::new(1.0, -0.1, false, 1e-14).is_err());
        assert!(WeatherScenario::new(1.0, 0.0, true, -1e-14).is_err());
    }

    #[test]
    fn rayleigh_range_values() {
        assert_relative_eq!(rayleigh_range_km(&geom(0.0), &telecom()), 63.025467, max_relative = 1e-6);
        assert_relative_eq!(rayleigh_range_km(&geom(0.0), &midir()), 24.552286, max_relative = 1e-6);
        let big = PathGeometry::new(0.0, 0.5).unwrap();
        assert_relative_eq!(
            rayleigh_range_km(&big, &telecom()),
            4.0 * rayleigh_range_km(&geom(0.0), &telecom()),
            max_relative = 1e-12
        );
    }

    #[test]
    fn geometric_loss_piecewise() {
        let c = telecom();
        let z = rayleigh_range_km(&geom(0.0), &c);
        assert_eq!(geometric_loss_db(&geom(0.0), &c), 0.0);
        assert_eq!(geometric_loss_db(&geom(2.0 * z), &c), 0.0);
        assert_eq!(geometric_loss_db(&geom(1.5 * z), &c), 0.0);
        assert_relative_eq!(geometric_loss_db(&geom(3.0 * z), &c), 3.9794001, max_relative = 1e-7);
        // just past the boundary the loss is continuous from zero
        assert!(geometric_loss_db(&geom(2.0 * z + 1e-6), &c) < 1e-6);
    }

    #[test]
    fn mie_values() {
        let green = OpticalCarrier::new(550.0).unwrap();
        assert_relative_eq!(mie_loss_db_per_km(&green, 1.0), 16.980914, max_relative = 1e-6);
        assert_relative_eq!(mie_loss_db_per_km(&telecom(), 40.0), 0.10968408, max_relative = 1e-6);
        assert_relative_eq!(mie_loss_db_per_km(&midir(), 40.0), 0.032202695, max_relative = 1e-6);
        assert!(mie_loss_db_per_km(&midir(), 40.0) < mie_loss_db_per_km(&telecom(), 40.0));
        // ratio term is one at 550 nm regardless of the exponent branch
        for v in [0.5, 3.0, 6.0, 30.0, 50.0, 80.0] {
            assert_relative_eq!(
                mie_loss_db_per_km(&green, v),
                10.0 * E.log10() * 3.91 / v,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn mie_exponent_boundaries_closed() {
        assert_eq!(mie_exponent(6.0), 1.3);
        assert_eq!(mie_exponent(50.0), 1.3);
        assert_eq!(mie_exponent(50.0001), 1.6);
        assert_relative_eq!(mie_exponent(1.0), 0.585);
    }

    #[test]
    fn rain_values() {
        assert_eq!(rain_loss_db_per_km(0.0), 0.0);
        assert_relative_eq!(rain_loss_db_per_km(2.5), 1.98807186, max_relative = 1e-7);
    }

    #[test]
    fn rayleigh_scatter_values() {
        let nir = OpticalCarrier::new(800.0).unwrap();
        assert_relative_eq!(rayleigh_scatter_db_per_km(&nir).unwrap(), 2.68268409e-3, max_relative = 1e-7);
        assert_relative_eq!(
            rayleigh_scatter_db_per_km(&midir()).unwrap(),
            4.22373502e-6,
            max_relative = 1e-7
        );
        let uv = OpticalCarrier::new(100.0).unwrap();
        assert!(matches!(rayleigh_scatter_db_per_km(&uv), Err(Error::Domain { .. })));
    }

    #[test]
    fn rayleigh_scatter_decreasing_over_range() {
        let mut prev = f64::INFINITY;
        for i in 0..=450 {
            let lam = 500.0 + 10.0 * i as f64;
            let v = rayleigh_scatter_db_per_km(&OpticalCarrier::new(lam).unwrap()).unwrap();
            assert!(v < prev, "not decreasing at {lam} nm");
            prev = v;
        }
    }

    #[test]
    fn turbulence_values() {
        assert_eq!(turbulence_loss_db(&telecom(), 0.0, DEFAULT_CN2), 0.0);
        assert_relative_eq!(turbulence_loss_db(&telecom(), 100.0, DEFAULT_CN2), 60.623161, max_relative = 1e-6);
        assert!(turbulence_loss_db(&midir(), 10.0, DEFAULT_CN2) < turbulence_loss_db(&telecom(), 10.0, DEFAULT_CN2));
    }

    #[test]
    fn absorption_lookup() {
        let table = AbsorptionTable::default();
        assert_eq!(absorption_db_per_km(&telecom(), &table).unwrap(), 1e-3);
        assert_eq!(absorption_db_per_km(&midir(), &table).unwrap(), 1.9e-3);
        assert_eq!(absorption_db_per_km(&OpticalCarrier::new(800.0).unwrap(), &table).unwrap(), 0.0);
        let custom = OpticalCarrier::with_label(2100.0, "thulium").unwrap();
        match absorption_db_per_km(&custom, &table) {
            Err(Error::MissingAbsorption { label }) => assert_eq!(label, "thulium"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(AbsorptionTable::empty().insert("x", -1.0).is_err());
    }

    #[test]
    fn budget_zero_distance() {
        let b = total_budget(&telecom(), &geom(0.0), &clear(), &AbsorptionTable::default()).unwrap();
        assert_eq!(b.total_db, 0.0);
        assert_eq!(b.transmittance, 1.0);
    }

    #[test]
    fn budget_clear_telecom_100km() {
        let b = total_budget(&telecom(), &geom(100.0), &clear(), &AbsorptionTable::default()).unwrap();
        assert_eq!(b.geometric_db, 0.0);
        assert_eq!(b.rain_db, 0.0);
        assert_eq!(b.turbulence_db, 0.0);
        assert_relative_eq!(b.mie_db, 10.968408, max_relative = 1e-6);
        assert_relative_eq!(b.absorption_db, 0.1, max_relative = 1e-12);
        assert_relative_eq!(b.total_db, 11.086822, max_relative = 1e-6);
    }

    #[test]
    fn budget_fog_midir_below_telecom() {
        let fog = WeatherScenario::new(1.0, 0.0, false, DEFAULT_CN2).unwrap();
        let table = AbsorptionTable::default();
        let mir = total_budget(&midir(), &geom(10.0), &fog, &table).unwrap();
        let tel = total_budget(&telecom(), &geom(10.0), &fog, &table).unwrap();
        assert_relative_eq!(mir.mie_db, 53.205568, max_relative = 1e-6);
        assert!(mir.total_db < tel.total_db);
    }

    #[test]
    fn rain_is_carrier_independent() {
        let rain = WeatherScenario::new(6.0, 2.5, false, DEFAULT_CN2).unwrap();
        let table = AbsorptionTable::default();
        for d in [0.5, 5.0, 40.0] {
            let a = total_budget(&OpticalCarrier::new(800.0).unwrap(), &geom(d), &rain, &table).unwrap();
            let b = total_budget(&midir(), &geom(d), &rain, &table).unwrap();
            assert_eq!(a.rain_db, b.rain_db);
        }
    }

    proptest! {
        #[test]
        fn budget_components_sum_and_transmittance(
            d in 0.0f64..2000.0,
            lam in prop::sample::select(vec![800.0, 1557.7, 3998.6]),
            v in 0.2f64..100.0,
            r in 0.0f64..30.0,
            turb: bool,
        ) {
            let carrier = OpticalCarrier::new(lam).unwrap();
            let weather = WeatherScenario::new(v, r, turb, DEFAULT_CN2).unwrap();
            let b = total_budget(&carrier, &geom(d), &weather, &AbsorptionTable::default()).unwrap();
            let comps = b.components();
            prop_assert!(comps.iter().all(|c| *c >= 0.0));
            prop_assert!((comps.iter().sum::<f64>() - b.total_db).abs() <= 1e-9);
            prop_assert_eq!(b.transmittance, 10f64.powf(-b.total_db / 10.0));
            prop_assert!(b.transmittance > 0.0 || b.total_db > 3000.0);
            prop_assert!(b.transmittance <= 1.0);
        }

        #[test]
        fn budget_non_decreasing_in_distance(
            d in 0.0f64..1500.0,
            step in 0.0f64..50.0,
            lam in prop::sample::select(vec![800.0, 1557.7, 3998.6]),
            v in 0.2f64..100.0,
            turb: bool,
        ) {
            let carrier = OpticalCarrier::new(lam).unwrap();
            let weather = WeatherScenario::new(v, 1.0, turb, DEFAULT_CN2).unwrap();
            let table = AbsorptionTable::default();
            let near = total_budget(&carrier, &geom(d), &weather, &table).unwrap();
            let far = total_budget(&carrier, &geom(d + step), &weather, &table).unwrap();
            prop_assert!(far.total_db >= near.total_db);
        }

        #[test]
        fn fog_midir_beats_telecom(d in 1.0f64..49.0, turb: bool) {
            let fog = WeatherScenario::new(1.0, 0.0, turb, DEFAULT_CN2).unwrap();
            let table = AbsorptionTable::default();
            let mir = total_budget(&midir(), &geom(d), &fog, &table).unwrap();
            let tel = total_budget(&telecom(), &geom(d), &fog, &table).unwrap();
            prop_assert!(mir.total_db < tel.total_db);
        }
    }
}
