//! Run configuration: a JSON document whose keys carry their units.
//!
//! ```json
//! {
//!   "material": { "preset": "polysilicon" },
//!   "disk": { "radius_um": 40, "thickness_um": 2 },
//!   "transducer": { "gap_nm": 100, "overlap_deg": 90, "vdc_volts": 10, "rel_permittivity": 1 },
//!   "q_factor": 10000,
//!   "modes": [1, 2],
//!   "grid": { "f_start_hz": 5e7, "f_stop_hz": 1e8, "points": 2001, "spacing": "linear" },
//!   "sweep": { "r_min_um": 10, "r_max_um": 60, "steps": 6 }
//! }
//! ```
//!
//! Every key is optional; missing keys take the defaults below. Unknown keys
//! are rejected.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::CliError;
use crate::lumped::{TransducerConfig, DEFAULT_Q, VACUUM_PERMITTIVITY};
use crate::resonator::{DiskGeometry, Material};
use crate::response::{FrequencyGrid, Spacing, DEFAULT_GRID_POINTS};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub material: Option<MaterialSpec>,
    pub disk: Option<DiskSpec>,
    pub transducer: Option<TransducerSpec>,
    pub q_factor: Option<f64>,
    pub modes: Option<Vec<usize>>,
    pub grid: Option<GridSpec>,
    pub sweep: Option<SweepSpec>,
    /// Side-surface load for the mechanical response.
    pub pressure_pa: Option<f64>,
    /// Load resistance at the output port for the electrical response.
    pub termination_ohms: Option<f64>,
    pub fem: Option<FemSpec>,
    pub output: Option<OutputSpec>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSpec {
    pub preset: Option<String>,
    pub youngs_modulus_pa: Option<f64>,
    pub density_kg_m3: Option<f64>,
    pub poisson_ratio: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DiskSpec {
    pub radius_um: f64,
    pub thickness_um: f64,
}

impl Default for DiskSpec {
    fn default() -> Self {
        DiskSpec { radius_um: 40.0, thickness_um: 2.0 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TransducerSpec {
    pub gap_nm: f64,
    pub overlap_deg: f64,
    pub vdc_volts: f64,
    pub rel_permittivity: f64,
    /// Pad parasitic added to each port's static capacitance.
    pub pad_parasitic_f: f64,
}

impl Default for TransducerSpec {
    fn default() -> Self {
        TransducerSpec {
            gap_nm: 100.0,
            overlap_deg: 90.0,
            vdc_volts: 10.0,
            rel_permittivity: 1.0,
            pad_parasitic_f: 0.0,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSpec {
    pub f_start_hz: f64,
    pub f_stop_hz: f64,
    pub points: usize,
    pub spacing: SpacingSpec,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { f_start_hz: 50e6, f_stop_hz: 100e6, points: DEFAULT_GRID_POINTS, spacing: SpacingSpec::Linear }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpacingSpec {
    Linear,
    #[serde(alias = "log")]
    Logarithmic,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSpec {
    pub r_min_um: f64,
    pub r_max_um: f64,
    pub steps: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec { r_min_um: 10.0, r_max_um: 60.0, steps: 6 }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FemSpec {
    pub elements: usize,
}

impl Default for FemSpec {
    fn default() -> Self {
        FemSpec { elements: 256 }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub netlist: Option<PathBuf>,
    pub shapes: Option<PathBuf>,
}

/// Material constants as stored in a preset file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresetFile {
    youngs_modulus_pa: f64,
    density_kg_m3: f64,
    poisson_ratio: f64,
}

/// Fully validated configuration in SI units.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub material: Material,
    pub geometry: DiskGeometry,
    pub transducer: TransducerConfig,
    pub q_factor: f64,
    pub modes: Vec<usize>,
    pub grid: FrequencyGrid,
    pub sweep_radii: Vec<f64>,
    pub pressure: f64,
    pub termination: f64,
    pub elements: usize,
    pub output: Option<PathBuf>,
    pub netlist: Option<PathBuf>,
    pub shapes: Option<PathBuf>,
    pub warnings: Vec<String>,
}

/// Parses a config document, reporting the offending key and position.
pub fn parse_config(text: &str) -> Result<ConfigFile, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let parsed: ConfigFile = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let key = if path == "." { String::new() } else { format!(" at key `{path}`") };
        CliError::Config(format!("{inner}{key}"))
    })?;
    de.end().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(parsed)
}

fn key_err(key: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{key}: {e}"))
}

fn resolve_material(spec: Option<MaterialSpec>, preset_dir: Option<&Path>) -> Result<Material, CliError> {
    let spec = spec.unwrap_or_default();
    let explicit = [spec.youngs_modulus_pa, spec.density_kg_m3, spec.poisson_ratio];
    match (spec.preset, explicit) {
        (None, [None, None, None]) => Ok(Material::polysilicon()),
        (Some(name), [None, None, None]) => lookup_preset(&name, preset_dir),
        (None, [Some(e), Some(rho), Some(nu)]) => Material::new(e, rho, nu).map_err(|e| key_err("material", e)),
        (Some(_), _) => Err(key_err("material", "give either `preset` or explicit constants, not both")),
        (None, _) => Err(key_err(
            "material",
            "explicit materials need youngs_modulus_pa, density_kg_m3 and poisson_ratio",
        )),
    }
}

fn lookup_preset(name: &str, preset_dir: Option<&Path>) -> Result<Material, CliError> {
    if name == "polysilicon" {
        return Ok(Material::polysilicon());
    }
    let unknown = || key_err("material.preset", format!("unknown preset `{name}`"));
    let dir = preset_dir.ok_or_else(unknown)?;
    if name.is_empty() || name.contains(['/', '\\']) || name.starts_with('.') {
        return Err(unknown());
    }
    let path = dir.join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).map_err(|_| unknown())?;
    let p: PresetFile = serde_json::from_str(&text)
        .map_err(|e| key_err("material.preset", format!("{}: {e}", path.display())))?;
    Material::new(p.youngs_modulus_pa, p.density_kg_m3, p.poisson_ratio)
        .map_err(|e| key_err("material.preset", format!("{}: {e}", path.display())))
}

impl RunConfig {
    pub fn resolve(file: ConfigFile, preset_dir: Option<&Path>) -> Result<RunConfig, CliError> {
        let material = resolve_material(file.material, preset_dir)?;

        let disk = file.disk.unwrap_or_default();
        let geometry = DiskGeometry::new(disk.radius_um / 1e6, disk.thickness_um / 1e6)
            .map_err(|e| key_err("disk", e))?;
        let warnings = geometry.aspect_warning().into_iter().collect();

        let t = file.transducer.unwrap_or_default();
        if !(t.rel_permittivity >= 1.0) {
            return Err(key_err("transducer.rel_permittivity", "must be at least 1"));
        }
        let transducer = TransducerConfig::new(
            t.gap_nm / 1e9,
            t.overlap_deg.to_radians(),
            t.vdc_volts,
            t.rel_permittivity * VACUUM_PERMITTIVITY,
        )
        .and_then(|c| c.with_pad_parasitic(t.pad_parasitic_f))
        .map_err(|e| key_err("transducer", e))?;

        let q_factor = file.q_factor.unwrap_or(DEFAULT_Q);
        if !(q_factor > 0.0 && q_factor.is_finite()) {
            return Err(key_err("q_factor", format!("must be positive, got {q_factor}")));
        }

        let modes = file.modes.unwrap_or_else(|| vec![1]);
        if modes.contains(&0) {
            return Err(key_err("modes", "mode indices are 1-based"));
        }

        let g = file.grid.unwrap_or_default();
        let spacing = match g.spacing {
            SpacingSpec::Linear => Spacing::Linear,
            SpacingSpec::Logarithmic => Spacing::Logarithmic,
        };
        let grid = FrequencyGrid::new(g.f_start_hz, g.f_stop_hz, g.points, spacing).map_err(|e| key_err("grid", e))?;

        let s = file.sweep.unwrap_or_default();
        if !(s.r_min_um > 0.0 && s.r_min_um.is_finite() && s.r_max_um.is_finite()) {
            return Err(key_err("sweep.r_min_um", "must be positive"));
        }
        let sweep_radii = match s.steps {
            0 => return Err(key_err("sweep.steps", "must be at least 1")),
            1 => vec![s.r_min_um / 1e6],
            n => {
                if !(s.r_max_um > s.r_min_um) {
                    return Err(key_err("sweep", "r_max_um must exceed r_min_um"));
                }
                (0..n)
                    .map(|i| (s.r_min_um + (s.r_max_um - s.r_min_um) * i as f64 / (n - 1) as f64) / 1e6)
                    .collect()
            }
        };

        let pressure = file.pressure_pa.unwrap_or(100e3);
        if !(pressure >= 0.0 && pressure.is_finite()) {
            return Err(key_err("pressure_pa", "must be non-negative"));
        }
        let termination = file.termination_ohms.unwrap_or(0.0);
        if !(termination >= 0.0 && termination.is_finite()) {
            return Err(key_err("termination_ohms", "must be non-negative"));
        }
        let elements = file.fem.unwrap_or_default().elements;
        let out = file.output.unwrap_or_default();

        Ok(RunConfig {
            material,
            geometry,
            transducer,
            q_factor,
            modes,
            grid,
            sweep_radii,
            pressure,
            termination,
            elements,
            output: out.path,
            netlist: out.netlist,
            shapes: out.shapes,
            warnings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(text: &str) -> Result<RunConfig, CliError> {
        RunConfig::resolve(parse_config(text)?, None)
    }

    #[test]
    fn defaults() {
        let c = resolve("{}").unwrap();
        assert_eq!(c.material, Material::polysilicon());
        assert_eq!(c.geometry, DiskGeometry::new(40e-6, 2e-6).unwrap());
        assert_eq!(c.modes, vec![1]);
        assert_eq!(c.q_factor, DEFAULT_Q);
        assert_eq!(c.grid.points, DEFAULT_GRID_POINTS);
        assert_eq!(c.sweep_radii.len(), 6);
        assert!((c.sweep_radii[5] - 60e-6).abs() < 1e-18);
        assert_eq!(c.elements, 256);
        assert_eq!(c.pressure, 100e3);
    }

    #[test]
    fn unknown_key_names_its_path() {
        let err = resolve(r#"{"disk": {"radius_um": 40, "diameter_um": 80}}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("disk"), "{msg}");
        assert!(msg.contains("diameter_um"), "{msg}");
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn type_error_names_key_and_line() {
        let err = resolve("{\n  \"grid\": {\n    \"points\": \"many\"\n  }\n}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("grid.points"), "{msg}");
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn explicit_material() {
        let c = resolve(r#"{"material": {"youngs_modulus_pa": 1.7e11, "density_kg_m3": 2330, "poisson_ratio": 0.28}}"#)
            .unwrap();
        assert_eq!(c.material, Material::new(1.7e11, 2330.0, 0.28).unwrap());
        assert!(resolve(r#"{"material": {"youngs_modulus_pa": 1.7e11}}"#).is_err());
        assert!(resolve(r#"{"material": {"preset": "polysilicon", "poisson_ratio": 0.3}}"#).is_err());
        assert!(resolve(r#"{"material": {"preset": "unobtainium"}}"#).is_err());
    }

    #[test]
    fn preset_directory() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("aln.json"),
            r#"{"youngs_modulus_pa": 3.45e11, "density_kg_m3": 3260, "poisson_ratio": 0.24}"#,
        )
        .unwrap();
        let file = parse_config(r#"{"material": {"preset": "aln"}}"#).unwrap();
        let c = RunConfig::resolve(file, Some(dir.path())).unwrap();
        assert_eq!(c.material.density, 3260.0);
        let file = parse_config(r#"{"material": {"preset": "../aln"}}"#).unwrap();
        assert!(RunConfig::resolve(file, Some(dir.path())).is_err());
    }

    #[test]
    fn unit_conversion() {
        let c = resolve(
            r#"{"transducer": {"gap_nm": 200, "overlap_deg": 180, "vdc_volts": 5, "rel_permittivity": 2}}"#,
        )
        .unwrap();
        assert!((c.transducer.gap - 200e-9).abs() < 1e-20);
        assert!((c.transducer.overlap_angle - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(c.transducer.permittivity, 2.0 * VACUUM_PERMITTIVITY);
    }

    #[test]
    fn validation_errors() {
        assert!(resolve(r#"{"q_factor": 0}"#).is_err());
        assert!(resolve(r#"{"modes": [0, 1]}"#).is_err());
        assert!(resolve(r#"{"grid": {"f_start_hz": 2e8}}"#).is_err());
        assert!(resolve(r#"{"sweep": {"r_min_um": 50, "r_max_um": 10}}"#).is_err());
        assert!(resolve(r#"{"disk": {"radius_um": -1}}"#).is_err());
        assert!(resolve(r#"{"transducer": {"rel_permittivity": 0.5}}"#).is_err());
        assert!(resolve(r#"{"pressure_pa": -1}"#).is_err());
        assert!(resolve("{} trailing").is_err());
        assert!(resolve(r#"{"modes": []}"#).unwrap().modes.is_empty());
    }

    #[test]
    fn thick_disk_warns() {
        let c = resolve(r#"{"disk": {"radius_um": 10, "thickness_um": 6}}"#).unwrap();
        assert_eq!(c.warnings.len(), 1);
    }
}
