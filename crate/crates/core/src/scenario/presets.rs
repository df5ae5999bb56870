use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::atmosphere::{WeatherScenario, DEFAULT_CN2};
use crate::error::Error;

/// Built-in weather panels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WeatherPreset {
    Clear,
    ClearTurb,
    Rain,
    RainTurb,
    Fog,
    FogTurb,
}

impl WeatherPreset {
    pub const ALL: [WeatherPreset; 6] = [
        WeatherPreset::Clear,
        WeatherPreset::ClearTurb,
        WeatherPreset::Rain,
        WeatherPreset::RainTurb,
        WeatherPreset::Fog,
        WeatherPreset::FogTurb,
    ];

    pub const NAMES: [&'static str; 6] = ["CLEAR", "CLEAR_TURB", "RAIN", "RAIN_TURB", "FOG", "FOG_TURB"];

    pub fn name(self) -> &'static str {
        Self::NAMES[self as usize]
    }

    pub fn weather(self) -> WeatherScenario {
        use WeatherPreset::*;
        let (visibility_km, rain_rate_mm_per_h) = match self {
            Clear | ClearTurb => (40.0, 0.0),
            Rain | RainTurb => (6.0, 2.5),
            Fog | FogTurb => (1.0, 0.0),
        };
        WeatherScenario {
            visibility_km,
            rain_rate_mm_per_h,
            turbulence_enabled: matches!(self, ClearTurb | RainTurb | FogTurb),
            cn2: DEFAULT_CN2,
        }
    }

    pub fn describe(self) -> String {
        let w = self.weather();
        format!(
            "V = {} km, R = {} mm/h, turbulence {}",
            w.visibility_km,
            w.rain_rate_mm_per_h,
            if w.turbulence_enabled { "on (cn2 = 1e-14)" } else { "off" }
        )
    }
}

impl fmt::Display for WeatherPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WeatherPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        WeatherPreset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownPreset {
                kind: "weather preset",
                name: s.to_owned(),
                valid: WeatherPreset::NAMES.to_vec(),
            })
    }
}
