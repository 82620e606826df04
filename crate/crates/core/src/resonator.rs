//! Material and disk geometry types and the analytical radial-contour mode
//! solution.
//!
//! A free thin disk vibrating in its radial-contour (breathing) mode has the
//! radial displacement profile `u(r) = J1(h r)`. Imposing zero radial stress
//! at the rim gives the characteristic equation
//!
//! ```text
//! x J0(x) / J1(x) = 1 - sigma,   x = h R
//! ```
//!
//! whose `i`-th positive root `lambda_i` sets the angular frequency
//! `omega_i = (lambda_i / R) sqrt(E / (rho (1 - sigma^2)))`.
//!
//! Note that the form sometimes quoted in the literature without the leading
//! factor `x` on the left-hand side has its first root near 1.6, which
//! disagrees with the tabulated `lambda_1 ~ 1.99` for polysilicon; the form
//! above is the one that matches.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special_math::{bessel_j012, find_roots, j1};

/// Highest mode index [`mode_lambda`] will solve for.
pub const MAX_MODE_INDEX: usize = 8;

const ROOT_TOLERANCE: f64 = 1e-12;

/// Isotropic elastic film.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    /// Young's modulus (Pa).
    pub youngs_modulus: f64,
    /// Mass density (kg/m^3).
    pub density: f64,
    /// Poisson's ratio.
    pub poisson_ratio: f64,
}

impl Material {
    pub fn new(youngs_modulus: f64, density: f64, poisson_ratio: f64) -> Result<Self> {
        if !(youngs_modulus > 0.0 && youngs_modulus.is_finite()) {
            return Err(Error::invalid(format!(
                "Young's modulus must be positive, got {youngs_modulus}"
            )));
        }
        if !(density > 0.0 && density.is_finite()) {
            return Err(Error::invalid(format!("density must be positive, got {density}")));
        }
        if !(0.0..0.5).contains(&poisson_ratio) {
            return Err(Error::invalid(format!(
                "Poisson's ratio must lie in [0, 0.5), got {poisson_ratio}"
            )));
        }
        Ok(Material { youngs_modulus, density, poisson_ratio })
    }

    /// Structural polysilicon: 160 GPa, 2300 kg/m^3, 0.22.
    pub fn polysilicon() -> Self {
        Material { youngs_modulus: 160e9, density: 2300.0, poisson_ratio: 0.22 }
    }

    /// Plane-stress modulus `E / (1 - sigma^2)`.
    pub fn plane_stress_modulus(&self) -> f64 {
        self.youngs_modulus / (1.0 - self.poisson_ratio * self.poisson_ratio)
    }

    /// The same modulus assembled from the shear and Lame contributions,
    /// `E/(1+sigma) + E sigma/(1-sigma^2)`.
    pub fn plane_stress_modulus_split(&self) -> f64 {
        let e = self.youngs_modulus;
        let s = self.poisson_ratio;
        e / (1.0 + s) + e * s / (1.0 - s * s)
    }

    /// Radial-contour wave speed `sqrt(E / (rho (1 - sigma^2)))` (m/s).
    pub fn wave_speed(&self) -> f64 {
        (self.plane_stress_modulus() / self.density).sqrt()
    }
}

/// Radius and thickness of the vibrating disk (m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskGeometry {
    pub radius: f64,
    pub thickness: f64,
}

impl DiskGeometry {
    /// Thickness-to-radius ratio above which the plane-stress model gets
    /// questionable.
    pub const THICK_DISK_RATIO: f64 = 0.5;

    pub fn new(radius: f64, thickness: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!("radius must be positive, got {radius}")));
        }
        if !(thickness > 0.0 && thickness.is_finite()) {
            return Err(Error::invalid(format!("thickness must be positive, got {thickness}")));
        }
        if thickness >= radius {
            return Err(Error::invalid(format!(
                "thickness {thickness} m must be smaller than radius {radius} m"
            )));
        }
        Ok(DiskGeometry { radius, thickness })
    }

    /// Warning text when the disk is too thick for the thin-disk model.
    pub fn aspect_warning(&self) -> Option<String> {
        let ratio = self.thickness / self.radius;
        (ratio > Self::THICK_DISK_RATIO).then(|| {
            format!("thickness/radius = {ratio:.3} exceeds 0.5; plane-stress results are approximate")
        })
    }

    /// Total disk mass `pi rho t R^2` (kg).
    pub fn mass(&self, material: &Material) -> f64 {
        PI * material.density * self.thickness * self.radius * self.radius
    }
}

/// One radial-contour mode of a particular disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSolution {
    /// 1-based mode index.
    pub mode_index: usize,
    /// Dimensionless root of the characteristic equation.
    pub lambda: f64,
    /// `lambda / R` (1/m).
    pub wavenumber: f64,
    /// Angular frequency (rad/s).
    pub omega0: f64,
    /// Cyclic frequency (Hz).
    pub f0: f64,
}

/// Left-hand side minus right-hand side of the characteristic equation.
/// Has poles at the zeros of `J1`.
pub fn characteristic(poisson_ratio: f64, x: f64) -> f64 {
    let [a, b, _] = bessel_j012(x);
    x * a / b - (1.0 - poisson_ratio)
}

/// The first `count` roots of the characteristic equation for a given
/// Poisson's ratio, ascending.
pub fn characteristic_roots(poisson_ratio: f64, count: usize) -> Result<Vec<f64>> {
    if count == 0 || count > MAX_MODE_INDEX {
        return Err(Error::invalid(format!(
            "mode index must be in [1, {MAX_MODE_INDEX}], got {count}"
        )));
    }
    // Roots interlace with the zeros of J1 (spacing ~pi), so this window and
    // density always hold `count` roots with many samples between poles.
    let hi = 4.0 * (count + 1) as f64;
    let steps = 2000 * count;
    let mut roots = find_roots(|x| characteristic(poisson_ratio, x), 0.2, hi, steps, ROOT_TOLERANCE)?;
    if roots.len() < count {
        return Err(Error::Convergence {
            iterations: steps,
            detail: format!(
                "found {} characteristic roots on [0.2, {hi}], needed {count}",
                roots.len()
            ),
        });
    }
    roots.truncate(count);
    Ok(roots)
}

/// The `mode_index`-th positive root of `x J0(x)/J1(x) = 1 - sigma`.
pub fn mode_lambda(material: &Material, mode_index: usize) -> Result<f64> {
    Ok(characteristic_roots(material.poisson_ratio, mode_index)?[mode_index - 1])
}

fn solution_from_lambda(
    material: &Material,
    geometry: &DiskGeometry,
    mode_index: usize,
    lambda: f64,
) -> ModeSolution {
    let wavenumber = lambda / geometry.radius;
    let omega0 = wavenumber * material.wave_speed();
    ModeSolution { mode_index, lambda, wavenumber, omega0, f0: omega0 / (2.0 * PI) }
}

pub fn resonance_frequency(
    material: &Material,
    geometry: &DiskGeometry,
    mode_index: usize,
) -> Result<ModeSolution> {
    let lambda = mode_lambda(material, mode_index)?;
    Ok(solution_from_lambda(material, geometry, mode_index, lambda))
}

/// Solutions for several modes of one disk, sharing a single root scan.
pub fn resonance_frequencies(
    material: &Material,
    geometry: &DiskGeometry,
    mode_indices: &[usize],
) -> Result<Vec<ModeSolution>> {
    let roots = roots_for(material, mode_indices)?;
    Ok(mode_indices
        .iter()
        .map(|&i| solution_from_lambda(material, geometry, i, roots[i - 1]))
        .collect())
}

fn roots_for(material: &Material, mode_indices: &[usize]) -> Result<Vec<f64>> {
    let max = match mode_indices.iter().max() {
        Some(&m) => m,
        None => return Err(Error::invalid("no modes requested")),
    };
    if mode_indices.contains(&0) {
        return Err(Error::invalid("mode indices are 1-based"));
    }
    characteristic_roots(material.poisson_ratio, max)
}

/// Radial displacement normalized to unity at the rim, `J1(h r) / J1(h R)`.
pub fn mode_shape(solution: &ModeSolution, geometry: &DiskGeometry, r: f64) -> Result<f64> {
    if !(0.0..=geometry.radius).contains(&r) {
        return Err(Error::invalid(format!(
            "r = {r} m lies outside the disk [0, {}]",
            geometry.radius
        )));
    }
    Ok(j1(solution.wavenumber * r) / j1(solution.wavenumber * geometry.radius))
}

/// Resonance frequencies over a set of radii.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub radii: Vec<f64>,
    pub modes: Vec<usize>,
    /// `f0_hz[row][col]` for `radii[row]` and `modes[col]`.
    pub f0_hz: Vec<Vec<f64>>,
}

impl SweepTable {
    pub fn get(&self, radius_index: usize, mode_column: usize) -> f64 {
        self.f0_hz[radius_index][mode_column]
    }
}

pub fn frequency_sweep(
    material: &Material,
    radii: &[f64],
    thickness: f64,
    mode_indices: &[usize],
) -> Result<SweepTable> {
    if radii.is_empty() {
        return Err(Error::invalid("sweep needs at least one radius"));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("sweep radii must be strictly increasing"));
    }
    let roots = roots_for(material, mode_indices)?;
    let mut rows = Vec::with_capacity(radii.len());
    for &radius in radii {
        let geometry = DiskGeometry::new(radius, thickness)?;
        rows.push(
            mode_indices
                .iter()
                .map(|&i| solution_from_lambda(material, &geometry, i, roots[i - 1]).f0)
                .collect(),
        );
    }
    Ok(SweepTable { radii: radii.to_vec(), modes: mode_indices.to_vec(), f0_hz: rows })
}

/// Radius whose `mode_index`-th mode rings at `target_f0` (Hz).
pub fn radius_for_frequency(material: &Material, target_f0: f64, mode_index: usize) -> Result<f64> {
    if !(target_f0 > 0.0 && target_f0.is_finite()) {
        return Err(Error::invalid(format!("target frequency must be positive, got {target_f0}")));
    }
    let lambda = mode_lambda(material, mode_index)?;
    Ok(lambda / (2.0 * PI * target_f0) * material.wave_speed())
}
