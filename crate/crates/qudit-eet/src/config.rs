//! TOML run configuration. Every field is optional — omitted fields fall
//! back to the shipped defaults and each fallback is recorded as a notice —
//! but unknown keys are rejected outright (with the key name and line) so a
//! typo cannot silently run the default instead of the override.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::estimation::{
    default_block_a, default_block_b, default_site_dipoles, default_v, FrenkelBlock, PulseSpec,
    SiteDipoles,
};
use crate::model::{
    default_model, default_params, CouplingSign, DimensionlessParams, ModelError, QuditModel,
    TruncationMode,
};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    // toml's error text carries the offending key and line/column
    #[error("invalid config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("grid.{field} invalid: {detail}")]
    Grid { field: &'static str, detail: String },
}

/// A pulse in bench units, as configured.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseLab {
    pub energy_nj: f64,
    pub duration_fs: f64,
    pub cross_section_um2: f64,
    pub dipole_debye: f64,
}

impl PulseLab {
    pub fn to_pulse_spec(&self) -> PulseSpec {
        PulseSpec::from_lab_units(
            self.energy_nj,
            self.duration_fs,
            self.cross_section_um2,
            self.dipole_debye,
        )
    }
}

pub fn default_pulse_lab() -> PulseLab {
    PulseLab {
        energy_nj: 5.0,
        duration_fs: 10.0,
        cross_section_um2: 2500.0 * std::f64::consts::PI,
        dipole_debye: 5.0,
    }
}

/// Grid sizes. γ₂ extents come from `params.gamma2_max`; the γ axis of the
/// sweep/surface is [gamma_min, gamma_max] × gamma_samples.
#[derive(Clone, Debug, PartialEq)]
pub struct GridConfig {
    /// γ₂ samples for `trace`.
    pub samples: usize,
    /// γ₂ samples per row of `sweep-gamma` (the e_max search grid).
    pub sweep_samples: usize,
    /// γ₂ samples per row of `sweep-surface` and `compare-truncations`.
    pub surface_samples: usize,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub gamma_samples: usize,
}

pub fn default_grid() -> GridConfig {
    GridConfig {
        samples: 200_000,
        sweep_samples: 20_001,
        surface_samples: 2_001,
        gamma_min: 0.0,
        gamma_max: 4.0,
        gamma_samples: 201,
    }
}

impl GridConfig {
    fn validate(&self) -> Result<(), ConfigError> {
        for (field, v) in [
            ("samples", self.samples),
            ("sweep_samples", self.sweep_samples),
            ("surface_samples", self.surface_samples),
            ("gamma_samples", self.gamma_samples),
        ] {
            if v < 2 {
                return Err(ConfigError::Grid {
                    field,
                    detail: format!("must be at least 2, got {v}"),
                });
            }
        }
        for (field, v) in [("gamma_min", self.gamma_min), ("gamma_max", self.gamma_max)] {
            if !v.is_finite() {
                return Err(ConfigError::Grid {
                    field,
                    detail: format!("must be finite, got {v}"),
                });
            }
        }
        if self.gamma_max <= self.gamma_min {
            return Err(ConfigError::Grid {
                field: "gamma_max",
                detail: format!(
                    "must exceed gamma_min, got [{}, {}]",
                    self.gamma_min, self.gamma_max
                ),
            });
        }
        Ok(())
    }

    /// The γ axis, endpoints exact.
    pub fn gamma_values(&self) -> Vec<f64> {
        let n = self.gamma_samples;
        let step = (self.gamma_max - self.gamma_min) / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.gamma_max
                } else {
                    self.gamma_min + step * i as f64
                }
            })
            .collect()
    }
}

/// Inputs to `estimate-params` and `gamma-from-pulse`.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimationInputs {
    pub block_a: FrenkelBlock,
    pub block_b: FrenkelBlock,
    pub v: [[f64; 4]; 4],
    pub site_dipoles: SiteDipoles,
    pub pulse: PulseLab,
}

pub fn default_estimation_inputs() -> EstimationInputs {
    EstimationInputs {
        block_a: default_block_a(),
        block_b: default_block_b(),
        v: default_v(),
        site_dipoles: default_site_dipoles(),
        pulse: default_pulse_lab(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Svg,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputConfig {
    pub directory: PathBuf,
    pub formats: Vec<OutputFormat>,
}

pub fn default_output() -> OutputConfig {
    OutputConfig {
        directory: PathBuf::from("out"),
        formats: vec![OutputFormat::Csv],
    }
}

/// A fully resolved run configuration.
#[derive(Clone, Debug)]
pub struct Config {
    pub model: QuditModel,
    pub params: DimensionlessParams,
    pub grid: GridConfig,
    pub estimation: EstimationInputs,
    pub output: OutputConfig,
    /// One line per defaulted field or section.
    pub notices: Vec<String>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelSection {
    level_ratios: Option<Vec<f64>>,
    dipole_ratios: Option<Vec<f64>>,
    coupling_ratios: Option<Vec<f64>>,
    coupling_sign: Option<CouplingSign>,
    truncation: Option<TruncationMode>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsSection {
    gamma: Option<f64>,
    delta: Option<f64>,
    drive_ratio: Option<f64>,
    r: Option<f64>,
    gamma2_max: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridSection {
    samples: Option<usize>,
    sweep_samples: Option<usize>,
    surface_samples: Option<usize>,
    gamma_min: Option<f64>,
    gamma_max: Option<f64>,
    gamma_samples: Option<usize>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EstimationSection {
    block_a: Option<FrenkelBlock>,
    block_b: Option<FrenkelBlock>,
    v: Option<[[f64; 4]; 4]>,
    site_dipoles: Option<SiteDipoles>,
    pulse: Option<PulseLab>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    directory: Option<PathBuf>,
    formats: Option<Vec<OutputFormat>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    model: Option<ModelSection>,
    params: Option<ParamsSection>,
    grid: Option<GridSection>,
    estimation: Option<EstimationSection>,
    output: Option<OutputSection>,
}

/// Unwrap one optional section, noting its absence once; per-field notices
/// are then suppressed inside it.
fn section<S: Default>(opt: Option<S>, name: &str, notices: &mut Vec<String>) -> (S, bool) {
    match opt {
        Some(s) => (s, false),
        None => {
            notices.push(format!("[{name}] section not set; using defaults"));
            (S::default(), true)
        }
    }
}

fn field<T>(opt: Option<T>, key: &str, default: T, notices: &mut Vec<String>, quiet: bool) -> T {
    match opt {
        Some(v) => v,
        None => {
            if !quiet {
                notices.push(format!("{key} not set; using default"));
            }
            default
        }
    }
}

impl ConfigFile {
    fn resolve(self) -> Result<Config, ConfigError> {
        let mut notices = Vec::new();
        let dm = default_model();
        let dp = default_params();
        let dg = default_grid();
        let de = default_estimation_inputs();
        let douts = default_output();

        let (m, quiet) = section(self.model, "model", &mut notices);
        let model = QuditModel {
            level_ratios: field(m.level_ratios, "model.level_ratios", dm.level_ratios, &mut notices, quiet),
            dipole_ratios: field(m.dipole_ratios, "model.dipole_ratios", dm.dipole_ratios, &mut notices, quiet),
            coupling_ratios: field(m.coupling_ratios, "model.coupling_ratios", dm.coupling_ratios, &mut notices, quiet),
            coupling_sign: field(m.coupling_sign, "model.coupling_sign", dm.coupling_sign, &mut notices, quiet),
            truncation: field(m.truncation, "model.truncation", dm.truncation, &mut notices, quiet),
        };

        let (p, quiet) = section(self.params, "params", &mut notices);
        let params = DimensionlessParams {
            gamma: field(p.gamma, "params.gamma", dp.gamma, &mut notices, quiet),
            delta: field(p.delta, "params.delta", dp.delta, &mut notices, quiet),
            drive_ratio: field(p.drive_ratio, "params.drive_ratio", dp.drive_ratio, &mut notices, quiet),
            r: field(p.r, "params.r", dp.r, &mut notices, quiet),
            gamma2_max: field(p.gamma2_max, "params.gamma2_max", dp.gamma2_max, &mut notices, quiet),
        };

        let (g, quiet) = section(self.grid, "grid", &mut notices);
        let grid = GridConfig {
            samples: field(g.samples, "grid.samples", dg.samples, &mut notices, quiet),
            sweep_samples: field(g.sweep_samples, "grid.sweep_samples", dg.sweep_samples, &mut notices, quiet),
            surface_samples: field(g.surface_samples, "grid.surface_samples", dg.surface_samples, &mut notices, quiet),
            gamma_min: field(g.gamma_min, "grid.gamma_min", dg.gamma_min, &mut notices, quiet),
            gamma_max: field(g.gamma_max, "grid.gamma_max", dg.gamma_max, &mut notices, quiet),
            gamma_samples: field(g.gamma_samples, "grid.gamma_samples", dg.gamma_samples, &mut notices, quiet),
        };

        let (e, quiet) = section(self.estimation, "estimation", &mut notices);
        let estimation = EstimationInputs {
            block_a: field(e.block_a, "estimation.block_a", de.block_a, &mut notices, quiet),
            block_b: field(e.block_b, "estimation.block_b", de.block_b, &mut notices, quiet),
            v: field(e.v, "estimation.v", de.v, &mut notices, quiet),
            site_dipoles: field(e.site_dipoles, "estimation.site_dipoles", de.site_dipoles, &mut notices, quiet),
            pulse: field(e.pulse, "estimation.pulse", de.pulse, &mut notices, quiet),
        };

        let (o, quiet) = section(self.output, "output", &mut notices);
        let output = OutputConfig {
            directory: field(o.directory, "output.directory", douts.directory, &mut notices, quiet),
            formats: field(o.formats, "output.formats", douts.formats, &mut notices, quiet),
        };

        model.validate()?;
        params.validate()?;
        grid.validate()?;

        Ok(Config {
            model,
            params,
            grid,
            estimation,
            output,
            notices,
        })
    }
}

pub fn parse_config_str(text: &str) -> Result<Config, ConfigError> {
    let file: ConfigFile = toml::from_str(text)?;
    file.resolve()
}

pub fn parse_config(path: &Path) -> Result<Config, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_str(&text)
}

/// The fully-defaulted configuration (as from an empty file, minus notices).
pub fn default_config() -> Config {
    Config {
        model: default_model(),
        params: default_params(),
        grid: default_grid(),
        estimation: default_estimation_inputs(),
        output: default_output(),
        notices: Vec::new(),
    }
}

impl Config {
    /// Render the resolved configuration as a complete TOML document.
    /// Floats print in shortest round-trip form, so
    /// `parse_config_str(cfg.to_toml_string())` reproduces every value
    /// bit for bit.
    pub fn to_toml_string(&self) -> String {
        #[derive(Serialize)]
        struct FullFile {
            model: ModelSection,
            params: ParamsSection,
            grid: GridSection,
            estimation: EstimationSection,
            output: OutputSection,
        }
        let full = FullFile {
            model: ModelSection {
                level_ratios: Some(self.model.level_ratios.clone()),
                dipole_ratios: Some(self.model.dipole_ratios.clone()),
                coupling_ratios: Some(self.model.coupling_ratios.clone()),
                coupling_sign: Some(self.model.coupling_sign),
                truncation: Some(self.model.truncation),
            },
            params: ParamsSection {
                gamma: Some(self.params.gamma),
                delta: Some(self.params.delta),
                drive_ratio: Some(self.params.drive_ratio),
                r: Some(self.params.r),
                gamma2_max: Some(self.params.gamma2_max),
            },
            grid: GridSection {
                samples: Some(self.grid.samples),
                sweep_samples: Some(self.grid.sweep_samples),
                surface_samples: Some(self.grid.surface_samples),
                gamma_min: Some(self.grid.gamma_min),
                gamma_max: Some(self.grid.gamma_max),
                gamma_samples: Some(self.grid.gamma_samples),
            },
            estimation: EstimationSection {
                block_a: Some(self.estimation.block_a),
                block_b: Some(self.estimation.block_b),
                v: Some(self.estimation.v),
                site_dipoles: Some(self.estimation.site_dipoles),
                pulse: Some(self.estimation.pulse),
            },
            output: OutputSection {
                directory: Some(self.output.directory.clone()),
                formats: Some(self.output.formats.clone()),
            },
        };
        toml::to_string_pretty(&full).expect("config serialization cannot fail")
    }
}
