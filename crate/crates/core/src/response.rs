//! Harmonic response spectra: rim displacement under a swept lateral load,
//! and current transmission through the two-port equivalent circuit.
//!
//! Phasors follow the `exp(+j omega t)` convention. Every spectrum also
//! evaluates the exact resonance frequencies that fall inside the grid, so a
//! coarse grid never hides a peak.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lumped::{EquivalentCircuit, LumpedMechanical};
use crate::resonator::{DiskGeometry, ModeSolution};

/// Points used when a grid is not configured.
pub const DEFAULT_GRID_POINTS: usize = 2001;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Logarithmic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    pub f_start: f64,
    pub f_stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl FrequencyGrid {
    pub fn new(f_start: f64, f_stop: f64, points: usize, spacing: Spacing) -> Result<Self> {
        if !(f_start > 0.0 && f_start < f_stop && f_stop.is_finite()) {
            return Err(Error::invalid(format!(
                "frequency grid needs 0 < f_start < f_stop, got [{f_start}, {f_stop}]"
            )));
        }
        if points < 2 {
            return Err(Error::invalid(format!("frequency grid needs at least 2 points, got {points}")));
        }
        Ok(FrequencyGrid { f_start, f_stop, points, spacing })
    }

    pub fn linear(f_start: f64, f_stop: f64, points: usize) -> Result<Self> {
        Self::new(f_start, f_stop, points, Spacing::Linear)
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == self.points - 1 {
                    return self.f_stop;
                }
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.f_start + (self.f_stop - self.f_start) * t,
                    Spacing::Logarithmic => self.f_start * (self.f_stop / self.f_start).powf(t),
                }
            })
            .collect()
    }

    /// Grid frequencies merged with any `extra` frequencies strictly inside
    /// the grid span, ascending and without duplicates.
    pub fn frequencies_with(&self, extra: &[f64]) -> Vec<f64> {
        let mut f = self.frequencies();
        for &x in extra {
            if x > self.f_start && x < self.f_stop {
                let at = f.partition_point(|&g| g < x);
                let near = |g: f64| (g - x).abs() <= 1e-12 * x;
                if !near(f[at]) && !near(f[at - 1]) {
                    f.insert(at, x);
                }
            }
        }
        f
    }
}

/// Sampled complex response.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Hz, strictly increasing.
    pub frequencies: Vec<f64>,
    pub magnitudes: Vec<f64>,
    /// Radians in (-pi, pi].
    pub phases: Vec<f64>,
}

impl Spectrum {
    fn from_fn(frequencies: Vec<f64>, mut f: impl FnMut(f64) -> Complex64) -> Self {
        let mut magnitudes = Vec::with_capacity(frequencies.len());
        let mut phases = Vec::with_capacity(frequencies.len());
        for &hz in &frequencies {
            let z = f(2.0 * PI * hz);
            magnitudes.push(z.norm());
            phases.push(wrap_phase(z.arg()));
        }
        Spectrum { frequencies, magnitudes, phases }
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    /// Index of the largest magnitude.
    pub fn peak_index(&self) -> Option<usize> {
        self.magnitudes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
    }

    /// Indices of interior samples strictly above both neighbours.
    pub fn local_maxima(&self) -> Vec<usize> {
        let m = &self.magnitudes;
        (1..m.len().saturating_sub(1))
            .filter(|&i| m[i] > m[i - 1] && m[i] > m[i + 1])
            .collect()
    }
}

fn wrap_phase(p: f64) -> f64 {
    if p <= -PI {
        p + 2.0 * PI
    } else {
        p
    }
}

/// Total radial force of a uniform pressure on the disk's side surface,
/// `p 2 pi R t` (N).
pub fn pressure_to_rim_force(pressure: f64, geometry: &DiskGeometry) -> Result<f64> {
    if !(pressure >= 0.0 && pressure.is_finite()) {
        return Err(Error::invalid(format!("pressure must be non-negative, got {pressure}")));
    }
    Ok(pressure * 2.0 * PI * geometry.radius * geometry.thickness)
}

/// One mode's single-degree-of-freedom branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModalBranch {
    pub solution: ModeSolution,
    pub lumped: LumpedMechanical,
}

impl ModalBranch {
    /// Rim displacement phasor `F / (k - m w^2 + j w b)` (m).
    pub fn displacement(&self, force: f64, omega: f64) -> Complex64 {
        let l = &self.lumped;
        Complex64::new(force, 0.0) / Complex64::new(l.k_eff - l.m_eff * omega * omega, omega * l.b_eff)
    }
}

/// Modal superposition of rim displacement under a harmonic force.
pub fn mechanical_response(modes: &[ModalBranch], force: f64, grid: &FrequencyGrid) -> Result<Spectrum> {
    if modes.is_empty() {
        return Err(Error::invalid("mechanical response needs at least one mode"));
    }
    let resonances: Vec<f64> = modes.iter().map(|m| m.solution.f0).collect();
    Ok(Spectrum::from_fn(grid.frequencies_with(&resonances), |w| {
        modes.iter().map(|m| m.displacement(force, w)).sum()
    }))
}

/// Transmission (ABCD) matrix of a two-port at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abcd {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Abcd {
    pub fn series(z: Complex64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Abcd { a: one, b: z, c: Complex64::new(0.0, 0.0), d: one }
    }

    pub fn shunt(y: Complex64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Abcd { a: one, b: Complex64::new(0.0, 0.0), c: y, d: one }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Abcd) -> Abcd {
        Abcd {
            a: self.a * next.a + self.b * next.c,
            b: self.a * next.b + self.b * next.d,
            c: self.c * next.a + self.d * next.c,
            d: self.c * next.b + self.d * next.d,
        }
    }

    /// The same reciprocal network driven from its other port.
    pub fn reversed(&self) -> Abcd {
        Abcd { a: self.d, b: self.b, c: self.c, d: self.a }
    }

    /// Load current per unit source voltage, `1 / (A R_load + B)`.
    pub fn load_admittance(&self, termination: f64) -> Complex64 {
        (self.a * termination + self.b).inv()
    }
}

/// Shunt `c0` / series `L-C-R` / shunt `c0`.
pub fn circuit_two_port(circuit: &EquivalentCircuit, omega: f64) -> Abcd {
    let j = Complex64::i();
    let z = circuit.r_e + j * (omega * circuit.l_e - 1.0 / (omega * circuit.c_e));
    let y0 = j * omega * circuit.c0;
    Abcd::shunt(y0).then(&Abcd::series(z)).then(&Abcd::shunt(y0))
}

/// `i_o / v_i` into the termination resistance (A/V).
pub fn transmission(circuit: &EquivalentCircuit, omega: f64, termination: f64) -> Complex64 {
    circuit_two_port(circuit, omega).load_admittance(termination)
}

pub fn electrical_transmission(
    circuit: &EquivalentCircuit,
    grid: &FrequencyGrid,
    termination: f64,
) -> Result<Spectrum> {
    if !(termination >= 0.0 && termination.is_finite()) {
        return Err(Error::invalid(format!("termination must be non-negative, got {termination}")));
    }
    Ok(Spectrum::from_fn(grid.frequencies_with(&[circuit.f0()]), |w| {
        transmission(circuit, w, termination)
    }))
}
