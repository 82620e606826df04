//! Subcommand implementations. Each returns its output as text so the
//! caller decides where it goes.

use std::fmt::Write as _;

use super::config::RunConfig;
use super::{CliError, Failure, Report};
use crate::fem::{compare_with_analytic, modal_analysis, shapes_csv};
use crate::fmt::sci;
use crate::lumped::{coupling_coefficient, equivalent_circuit, export_spice_netlist, LumpedMechanical};
use crate::resonator::{frequency_sweep, radius_for_frequency, resonance_frequencies, resonance_frequency, DiskGeometry};
use crate::response::{electrical_transmission, mechanical_response, pressure_to_rim_force, ModalBranch, Spectrum};

fn modes(config: &RunConfig) -> Result<&[usize], CliError> {
    if config.modes.is_empty() {
        return Err(CliError::Validation("no modes requested".into()));
    }
    Ok(&config.modes)
}

/// Scientific formatting that refuses to serialize NaN or infinity.
fn num(v: f64, what: &str) -> Result<String, CliError> {
    if v.is_finite() {
        Ok(sci(v))
    } else {
        Err(CliError::Validation(format!("non-finite {what}: {v}")))
    }
}

/// `mode,lambda,f0_hz`
pub fn cmd_modes(config: &RunConfig) -> Result<Report, Failure> {
    let modes = modes(config)?;
    let solutions = resonance_frequencies(&config.material, &config.geometry, modes)?;
    let mut text = String::from("mode,lambda,f0_hz\n");
    for s in &solutions {
        let _ = writeln!(text, "{},{},{}", s.mode_index, num(s.lambda, "lambda")?, num(s.f0, "f0")?);
    }
    let mut report = Report { text, ..Report::default() };
    if let Some(path) = &config.shapes {
        let highest = *modes.iter().max().unwrap();
        let fem = modal_analysis(&config.material, &config.geometry, config.elements, highest)?;
        report.files.push((path.clone(), shapes_csv(&fem)));
    }
    Ok(report)
}

/// `radius_m,mode,f0_hz[,f_fem_hz,rel_err]`, one row per radius and mode.
pub fn cmd_sweep(config: &RunConfig, with_fem: bool) -> Result<Report, Failure> {
    let modes = modes(config)?;
    let thickness = config.geometry.thickness;
    let table = frequency_sweep(&config.material, &config.sweep_radii, thickness, modes)?;
    let mut text = String::from("radius_m,mode,f0_hz");
    text.push_str(if with_fem { ",f_fem_hz,rel_err\n" } else { "\n" });
    for (row, &radius) in table.radii.iter().enumerate() {
        let fem = if with_fem {
            let geometry = DiskGeometry::new(radius, thickness)?;
            Some(compare_with_analytic(&config.material, &geometry, modes, config.elements)?)
        } else {
            None
        };
        for (col, &mode) in modes.iter().enumerate() {
            let _ = write!(text, "{},{mode},{}", num(radius, "radius")?, num(table.get(row, col), "f0")?);
            if let Some(rows) = &fem {
                let r = &rows[col];
                let _ = write!(text, ",{},{}", num(r.f_fem, "FEM frequency")?, num(r.rel_err, "relative error")?);
            }
            text.push('\n');
        }
    }
    Ok(Report { text, ..Report::default() })
}

/// Lumped parameters per mode; netlist for the first mode.
pub fn cmd_lumped(config: &RunConfig) -> Result<Report, Failure> {
    let modes = modes(config)?;
    let solutions = resonance_frequencies(&config.material, &config.geometry, modes)?;
    let n = coupling_coefficient(&config.transducer, &config.geometry);
    let mut text = String::new();
    let mut report = Report::default();
    for (i, s) in solutions.iter().enumerate() {
        let lm = LumpedMechanical::for_mode(&config.material, &config.geometry, s, config.q_factor)?;
        let _ = writeln!(text, "mode {}", s.mode_index);
        let _ = writeln!(text, "  f0       = {} Hz", num(s.f0, "f0")?);
        let _ = writeln!(text, "  lambda   = {}", num(s.lambda, "lambda")?);
        let _ = writeln!(text, "  m_eff    = {} kg", num(lm.m_eff, "m_eff")?);
        let _ = writeln!(text, "  k_eff    = {} N/m", num(lm.k_eff, "k_eff")?);
        let _ = writeln!(text, "  b_eff    = {} kg/s", num(lm.b_eff, "b_eff")?);
        let _ = writeln!(text, "  q_factor = {}", num(lm.q_factor, "Q")?);
        let _ = writeln!(text, "  n        = {} C/m", num(n, "n")?);
        let circuit = match equivalent_circuit(&lm, n, &config.transducer, &config.geometry) {
            Ok(c) => c,
            Err(e) => return Err(Failure { error: e.into(), partial_output: text }),
        };
        let _ = writeln!(text, "  L_e      = {} H", num(circuit.l_e, "L_e")?);
        let _ = writeln!(text, "  R_e      = {} ohm", num(circuit.r_e, "R_e")?);
        let _ = writeln!(text, "  C_e      = {} F", num(circuit.c_e, "C_e")?);
        let _ = writeln!(text, "  C0       = {} F", num(circuit.c0, "C0")?);
        if i == 0 {
            if let Some(path) = &config.netlist {
                report.files.push((path.clone(), export_spice_netlist(&circuit, s.f0)));
            }
        }
    }
    report.text = text;
    Ok(report)
}

fn spectrum_csv(s: &Spectrum) -> Result<String, CliError> {
    let mut text = String::from("freq_hz,mag,phase_rad\n");
    for i in 0..s.len() {
        let _ = writeln!(
            text,
            "{},{},{}",
            num(s.frequencies[i], "frequency")?,
            num(s.magnitudes[i], "magnitude")?,
            num(s.phases[i], "phase")?
        );
    }
    Ok(text)
}

/// `freq_hz,mag,phase_rad`: rim displacement (m) or transmission (A/V).
pub fn cmd_response(config: &RunConfig, electrical: bool) -> Result<Report, Failure> {
    let modes = modes(config)?;
    let solutions = resonance_frequencies(&config.material, &config.geometry, modes)?;
    let spectrum = if electrical {
        let s = &solutions[0];
        let lm = LumpedMechanical::for_mode(&config.material, &config.geometry, s, config.q_factor)?;
        let n = coupling_coefficient(&config.transducer, &config.geometry);
        let circuit = equivalent_circuit(&lm, n, &config.transducer, &config.geometry)?;
        electrical_transmission(&circuit, &config.grid, config.termination)?
    } else {
        let branches = solutions
            .iter()
            .map(|s| {
                LumpedMechanical::for_mode(&config.material, &config.geometry, s, config.q_factor)
                    .map(|lumped| ModalBranch { solution: *s, lumped })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let force = pressure_to_rim_force(config.pressure, &config.geometry)?;
        mechanical_response(&branches, force, &config.grid)?
    };
    Ok(Report { text: spectrum_csv(&spectrum)?, ..Report::default() })
}

/// Radius for a target frequency, checked by recomputing the mode.
pub fn cmd_design(config: &RunConfig, target_f0: Option<f64>, mode: Option<usize>) -> Result<Report, Failure> {
    let target = target_f0.ok_or_else(|| CliError::Validation("design needs --target-f0 <hz>".into()))?;
    if !(target > 0.0 && target.is_finite()) {
        return Err(CliError::Validation(format!("target frequency must be positive, got {target}")).into());
    }
    let mode = match mode {
        Some(m) => m,
        None => modes(config)?[0],
    };
    let radius = radius_for_frequency(&config.material, target, mode)?;
    let geometry = DiskGeometry::new(radius, config.geometry.thickness)?;
    let check = resonance_frequency(&config.material, &geometry, mode)?;
    let mut text = String::new();
    let _ = writeln!(text, "mode      = {mode}");
    let _ = writeln!(text, "target_f0 = {} Hz", num(target, "target")?);
    let _ = writeln!(text, "radius    = {} m", num(radius, "radius")?);
    let _ = writeln!(text, "check_f0  = {} Hz", num(check.f0, "f0")?);
    let mut report = Report { text, ..Report::default() };
    if let Some(w) = geometry.aspect_warning() {
        report.warnings.push(w);
    }
    Ok(report)
}
