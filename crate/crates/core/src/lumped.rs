//! Single-degree-of-freedom mass-spring-damper model of a radial-contour mode
//! and its transformer-coupled series-RLC electrical equivalent.
//!
//! Lumped quantities are referenced to the rim displacement: the effective
//! mass is `2 E_k / v(R)^2`, which for the `J1(h r)` profile evaluates to
//!
//! ```text
//! m_eff = pi rho t R^2 [1 - J0(hR) J2(hR) / J1(hR)^2]
//! ```
//!
//! The electrical side uses the force-voltage analogy (`l = m`, `r = b`,
//! `c = 1/k`) reflected through the electrode transformers of turns ratio
//! `n = V_dc dC/dx ~ V_dc eps A / d0^2`, so `L = m/n^2`, `R = b/n^2`,
//! `C = n^2/k`. Both ports are assumed identical.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::resonator::{DiskGeometry, Material, ModeSolution};
use crate::special_math::{bessel_j012, j1};

/// Vacuum permittivity (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.8541878128e-12;

/// Quality factor used when none is configured.
pub const DEFAULT_Q: f64 = 10_000.0;

/// Simpson intervals for [`effective_mass_quadrature`].
const QUADRATURE_INTERVALS: usize = 10_000;

/// Lumped mechanical parameters of one mode, referenced to the rim.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LumpedMechanical {
    /// Effective mass (kg).
    pub m_eff: f64,
    /// Effective stiffness (N/m).
    pub k_eff: f64,
    /// Damping (kg/s).
    pub b_eff: f64,
    pub q_factor: f64,
}

impl LumpedMechanical {
    /// Builds the lumped model of `solution` with quality factor `q_factor`.
    pub fn for_mode(
        material: &Material,
        geometry: &DiskGeometry,
        solution: &ModeSolution,
        q_factor: f64,
    ) -> Result<Self> {
        let m_eff = effective_mass(material, geometry, solution)?;
        let k_eff = effective_stiffness(solution, m_eff);
        let b_eff = damping_coefficient(k_eff, m_eff, q_factor)?;
        Ok(LumpedMechanical { m_eff, k_eff, b_eff, q_factor })
    }

    pub fn omega0(&self) -> f64 {
        (self.k_eff / self.m_eff).sqrt()
    }
}

fn check_pairing(material: &Material, geometry: &DiskGeometry, solution: &ModeSolution) -> Result<()> {
    let lambda = solution.lambda;
    let omega = lambda / geometry.radius * material.wave_speed();
    let off = |a: f64, b: f64| (a - b).abs() > 1e-9 * b.abs();
    if !(lambda > 0.0) || off(solution.wavenumber * geometry.radius, lambda) || off(solution.omega0, omega) {
        return Err(Error::invalid(format!(
            "mode {} (lambda = {lambda}, h = {} 1/m) was not generated for this material/geometry",
            solution.mode_index, solution.wavenumber
        )));
    }
    Ok(())
}

/// Closed-form effective mass (kg).
pub fn effective_mass(material: &Material, geometry: &DiskGeometry, solution: &ModeSolution) -> Result<f64> {
    check_pairing(material, geometry, solution)?;
    let [a, b, c] = bessel_j012(solution.lambda);
    Ok(geometry.mass(material) * (1.0 - a * c / (b * b)))
}

/// Effective mass from direct composite-Simpson integration of the kinetic
/// energy integral `2 pi rho t int_0^R r J1(h r)^2 dr / J1(h R)^2`.
pub fn effective_mass_quadrature(
    material: &Material,
    geometry: &DiskGeometry,
    solution: &ModeSolution,
) -> Result<f64> {
    check_pairing(material, geometry, solution)?;
    let h = solution.wavenumber;
    let radius = geometry.radius;
    let integrand = |r: f64| {
        let u = j1(h * r);
        r * u * u
    };
    let n = QUADRATURE_INTERVALS;
    let dr = radius / n as f64;
    let mut sum = integrand(0.0) + integrand(radius);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * integrand(dr * i as f64);
    }
    let integral = sum * dr / 3.0;
    let rim = j1(h * radius);
    Ok(2.0 * std::f64::consts::PI * material.density * geometry.thickness * integral / (rim * rim))
}

/// `k = omega0^2 m`.
pub fn effective_stiffness(solution: &ModeSolution, m_eff: f64) -> f64 {
    solution.omega0 * solution.omega0 * m_eff
}

/// `b = sqrt(k m) / Q`. An infinite `Q` gives the undamped limit `b = 0`.
pub fn damping_coefficient(k_eff: f64, m_eff: f64, q_factor: f64) -> Result<f64> {
    if !(q_factor > 0.0) {
        return Err(Error::invalid(format!("quality factor must be positive, got {q_factor}")));
    }
    Ok((k_eff * m_eff).sqrt() / q_factor)
}

/// One of the two identical capacitive-gap electrodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransducerConfig {
    /// Static gap d0 (m).
    pub gap: f64,
    /// Angular overlap of one electrode with the disk rim (rad).
    pub overlap_angle: f64,
    /// DC bias on the disk (V).
    pub dc_bias: f64,
    /// Gap permittivity (F/m).
    pub permittivity: f64,
    /// Extra capacitance to ac-ground added to each port's static capacitance (F).
    pub pad_parasitic: f64,
}

impl TransducerConfig {
    pub fn new(gap: f64, overlap_angle: f64, dc_bias: f64, permittivity: f64) -> Result<Self> {
        let t = TransducerConfig { gap, overlap_angle, dc_bias, permittivity, pad_parasitic: 0.0 };
        t.validate()?;
        Ok(t)
    }

    pub fn with_pad_parasitic(mut self, farads: f64) -> Result<Self> {
        self.pad_parasitic = farads;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gap > 0.0 && self.gap.is_finite()) {
            return Err(Error::invalid(format!("gap must be positive, got {}", self.gap)));
        }
        // Two electrodes share the rim, so each covers at most half of it.
        if !(self.overlap_angle > 0.0 && self.overlap_angle <= std::f64::consts::PI) {
            return Err(Error::invalid(format!(
                "electrode overlap must lie in (0, pi] rad, got {}",
                self.overlap_angle
            )));
        }
        if !(self.dc_bias >= 0.0 && self.dc_bias.is_finite()) {
            return Err(Error::invalid(format!("dc bias must be non-negative, got {}", self.dc_bias)));
        }
        if !(self.permittivity >= VACUUM_PERMITTIVITY && self.permittivity.is_finite()) {
            return Err(Error::invalid(format!(
                "permittivity {} F/m is below vacuum permittivity",
                self.permittivity
            )));
        }
        if !(self.pad_parasitic >= 0.0 && self.pad_parasitic.is_finite()) {
            return Err(Error::invalid(format!(
                "pad parasitic must be non-negative, got {}",
                self.pad_parasitic
            )));
        }
        Ok(())
    }

    /// Electrode area facing the rim, `phi R t` (m^2).
    pub fn coupling_area(&self, geometry: &DiskGeometry) -> f64 {
        self.overlap_angle * geometry.radius * geometry.thickness
    }

    /// Parallel-plate capacitance `eps A / (d0 - x)` with the rim displaced
    /// outward by `x` (F).
    pub fn capacitance(&self, geometry: &DiskGeometry, x: f64) -> f64 {
        self.permittivity * self.coupling_area(geometry) / (self.gap - x)
    }

    /// Static electrode-to-ground capacitance, parallel plate plus the pad
    /// parasitic (F).
    pub fn static_capacitance(&self, geometry: &DiskGeometry) -> f64 {
        self.capacitance(geometry, 0.0) + self.pad_parasitic
    }
}

/// Linearized coupling `n = V_dc eps A / d0^2` (C/m).
pub fn coupling_coefficient(transducer: &TransducerConfig, geometry: &DiskGeometry) -> f64 {
    transducer.dc_bias * transducer.permittivity * transducer.coupling_area(geometry)
        / (transducer.gap * transducer.gap)
}

/// Motional branch plus static port capacitance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalentCircuit {
    /// Motional inductance (H).
    pub l_e: f64,
    /// Motional resistance (ohm).
    pub r_e: f64,
    /// Motional capacitance (F).
    pub c_e: f64,
    /// Static capacitance of each port to ac-ground (F).
    pub c0: f64,
    /// Electromechanical coupling (C/m).
    pub coupling_n: f64,
}

impl EquivalentCircuit {
    pub fn omega0(&self) -> f64 {
        1.0 / (self.l_e * self.c_e).sqrt()
    }

    pub fn f0(&self) -> f64 {
        self.omega0() / (2.0 * std::f64::consts::PI)
    }

    pub fn q_factor(&self) -> f64 {
        self.omega0() * self.l_e / self.r_e
    }
}

pub fn equivalent_circuit(
    lumped: &LumpedMechanical,
    coupling_n: f64,
    transducer: &TransducerConfig,
    geometry: &DiskGeometry,
) -> Result<EquivalentCircuit> {
    if !(coupling_n > 0.0 && coupling_n.is_finite()) {
        return Err(Error::invalid("zero bias: no electrical model"));
    }
    let n2 = coupling_n * coupling_n;
    Ok(EquivalentCircuit {
        l_e: lumped.m_eff / n2,
        r_e: lumped.b_eff / n2,
        c_e: n2 / lumped.k_eff,
        c0: transducer.static_capacitance(geometry),
        coupling_n,
    })
}

fn sci6(v: f64) -> String {
    format!("{v:.5e}")
}

/// Two-port SPICE subcircuit of the equivalent circuit.
pub fn export_spice_netlist(circuit: &EquivalentCircuit, f0: f64) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "* disk-resonator equivalent circuit, f0={} Hz", sci6(f0));
    let _ = writeln!(s, ".SUBCKT RESONATOR in out gnd");
    let _ = writeln!(s, "C01 in gnd {}", sci6(circuit.c0));
    let _ = writeln!(s, "LX in n1 {}", sci6(circuit.l_e));
    let _ = writeln!(s, "CX n1 n2 {}", sci6(circuit.c_e));
    let _ = writeln!(s, "RX n2 out {}", sci6(circuit.r_e));
    let _ = writeln!(s, "C02 out gnd {}", sci6(circuit.c0));
    let _ = writeln!(s, ".ENDS RESONATOR");
    s
}

/// Element values read back from a netlist written by [`export_spice_netlist`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetlistValues {
    pub f0: f64,
    pub l_e: f64,
    pub c_e: f64,
    pub r_e: f64,
    pub c01: f64,
    pub c02: f64,
}

impl NetlistValues {
    pub fn omega0(&self) -> f64 {
        1.0 / (self.l_e * self.c_e).sqrt()
    }
}

pub fn parse_spice_netlist(text: &str) -> Result<NetlistValues> {
    let mut f0 = None;
    let (mut l, mut c, mut r, mut c01, mut c02) = (None, None, None, None, None);
    let num = |tok: Option<&str>, line: &str| -> Result<f64> {
        tok.and_then(|t| t.parse::<f64>().ok())
            .ok_or_else(|| Error::invalid(format!("malformed netlist line: {line}")))
    };
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('*') {
            if let Some(v) = rest.split("f0=").nth(1) {
                f0 = Some(num(v.split_whitespace().next(), line)?);
            }
            continue;
        }
        let mut toks = line.split_whitespace();
        let slot = match toks.next() {
            Some("LX") => &mut l,
            Some("CX") => &mut c,
            Some("RX") => &mut r,
            Some("C01") => &mut c01,
            Some("C02") => &mut c02,
            _ => continue,
        };
        if slot.is_some() {
            return Err(Error::invalid(format!("duplicate element: {line}")));
        }
        *slot = Some(num(toks.nth(2), line)?);
    }
    let need = |v: Option<f64>, name: &str| v.ok_or_else(|| Error::invalid(format!("netlist has no {name}")));
    Ok(NetlistValues {
        f0: need(f0, "f0 comment")?,
        l_e: need(l, "LX")?,
        c_e: need(c, "CX")?,
        r_e: need(r, "RX")?,
        c01: need(c01, "C01")?,
        c02: need(c02, "C02")?,
    })
}
