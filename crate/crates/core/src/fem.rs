//! One-dimensional radial finite-element modal solver for in-plane
//! axisymmetric vibration of a thin disk.
//!
//! Plane stress with strains `e_rr = du/dr`, `e_tt = u/r`. Linear two-node
//! elements, consistent mass, 2-point Gauss integration. The centre node is
//! held at `u = 0`; the rim is traction free (natural condition). This path
//! shares nothing with the Bessel root solver and serves as its cross-check.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::fmt::sci;
use crate::resonator::{resonance_frequencies, DiskGeometry, Material};

/// Fewest elements a mesh may have.
pub const MIN_ELEMENTS: usize = 4;
/// Most modes [`solve_modes`] will return.
pub const MAX_MODES: usize = 6;
/// Fewest elements accepted by [`compare_with_analytic`].
pub const MIN_COMPARISON_ELEMENTS: usize = 32;

const GAUSS_2: [(f64, f64); 2] = [(-0.577_350_269_189_625_8, 1.0), (0.577_350_269_189_625_8, 1.0)];

/// Radial node positions from the centre to the rim.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialMesh {
    node_radii: Vec<f64>,
}

impl RadialMesh {
    pub fn uniform(radius: f64, element_count: usize) -> Result<Self> {
        if element_count < MIN_ELEMENTS {
            return Err(Error::invalid(format!(
                "mesh needs at least {MIN_ELEMENTS} elements, got {element_count}"
            )));
        }
        let n = element_count as f64;
        let mut nodes: Vec<f64> = (0..element_count).map(|i| radius * i as f64 / n).collect();
        nodes.push(radius);
        Self::from_nodes(nodes)
    }

    pub fn from_nodes(node_radii: Vec<f64>) -> Result<Self> {
        if node_radii.len() < MIN_ELEMENTS + 1 {
            return Err(Error::invalid(format!(
                "mesh needs at least {} nodes, got {}",
                MIN_ELEMENTS + 1,
                node_radii.len()
            )));
        }
        if node_radii[0] != 0.0 {
            return Err(Error::invalid("first mesh node must sit at r = 0"));
        }
        if node_radii.iter().any(|r| !r.is_finite()) || node_radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("mesh nodes must be finite and strictly increasing"));
        }
        Ok(RadialMesh { node_radii })
    }

    pub fn node_radii(&self) -> &[f64] {
        &self.node_radii
    }

    pub fn element_count(&self) -> usize {
        self.node_radii.len() - 1
    }

    pub fn radius(&self) -> f64 {
        *self.node_radii.last().unwrap()
    }
}

/// Global stiffness and mass matrices over all nodes, including the centre
/// node that [`solve_modes`] constrains.
#[derive(Debug, Clone)]
pub struct AssembledSystem {
    pub stiffness: DMatrix<f64>,
    pub mass: DMatrix<f64>,
    pub node_radii: Vec<f64>,
}

/// Element matrices of one linear element on `[a, b]`, per unit `2 pi t`.
///
/// Returns `(stiffness, mass)`, row-major `[11, 12, 21, 22]`, with the
/// plane-stress modulus and density folded in.
pub fn element_matrices(modulus: f64, poisson: f64, density: f64, a: f64, b: f64) -> ([f64; 4], [f64; 4]) {
    let len = b - a;
    let mid = 0.5 * (a + b);
    let mut k = [0.0; 4];
    let mut m = [0.0; 4];
    for (xi, w) in GAUSS_2 {
        let r = mid + 0.5 * len * xi;
        let weight = 0.5 * len * w * r;
        let n = [(b - r) / len, (r - a) / len];
        let dn = [-1.0 / len, 1.0 / len];
        for i in 0..2 {
            for j in i..2 {
                let (ei, ti) = (dn[i], n[i] / r);
                let (ej, tj) = (dn[j], n[j] / r);
                let energy = ei * ej + ti * tj + poisson * (ei * tj + ti * ej);
                k[2 * i + j] += weight * modulus * energy;
                m[2 * i + j] += weight * density * n[i] * n[j];
            }
        }
    }
    k[2] = k[1];
    m[2] = m[1];
    (k, m)
}

pub fn assemble_system(material: &Material, geometry: &DiskGeometry, mesh: &RadialMesh) -> Result<AssembledSystem> {
    let rim = mesh.radius();
    if (rim - geometry.radius).abs() > 1e-12 * geometry.radius {
        return Err(Error::invalid(format!(
            "mesh ends at r = {rim} m but the disk radius is {} m",
            geometry.radius
        )));
    }
    let nodes = mesh.node_radii();
    let n = nodes.len();
    let scale = 2.0 * PI * geometry.thickness;
    let modulus = material.plane_stress_modulus();
    let mut stiffness = DMatrix::zeros(n, n);
    let mut mass = DMatrix::zeros(n, n);
    for e in 0..n - 1 {
        let (k, m) = element_matrices(modulus, material.poisson_ratio, material.density, nodes[e], nodes[e + 1]);
        for i in 0..2 {
            for j in 0..2 {
                stiffness[(e + i, e + j)] += scale * k[2 * i + j];
                mass[(e + i, e + j)] += scale * m[2 * i + j];
            }
        }
    }
    Ok(AssembledSystem { stiffness, mass, node_radii: nodes.to_vec() })
}

/// Lowest modes of the constrained system.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalResult {
    /// Hz, ascending.
    pub frequencies: Vec<f64>,
    /// Nodal displacements per mode (centre node included), unit rim value.
    pub shapes: Vec<Vec<f64>>,
    pub node_radii: Vec<f64>,
}

/// Smallest `mode_count` eigenpairs of `K phi = w^2 M phi` with `u(0) = 0`.
///
/// Solved by Cholesky reduction `L^-1 K L^-T` and a dense symmetric
/// eigen-decomposition.
pub fn solve_modes(system: &AssembledSystem, mode_count: usize) -> Result<ModalResult> {
    let n = system.stiffness.nrows();
    let free = n - 1;
    if mode_count == 0 || mode_count > MAX_MODES.min(free) {
        return Err(Error::invalid(format!(
            "mode count must be in [1, {}], got {mode_count}",
            MAX_MODES.min(free)
        )));
    }
    let k = system.stiffness.view((1, 1), (free, free)).into_owned();
    let m = system.mass.view((1, 1), (free, free)).into_owned();

    let chol = m.cholesky().ok_or_else(|| Error::Convergence {
        iterations: 0,
        detail: format!("mass matrix ({free} dofs) is not positive definite"),
    })?;
    let l = chol.l();
    let fail = |what: &str| Error::Convergence { iterations: 0, detail: format!("triangular solve failed: {what}") };
    let x = l.solve_lower_triangular(&k).ok_or_else(|| fail("L^-1 K"))?;
    let a = l.solve_lower_triangular(&x.transpose()).ok_or_else(|| fail("L^-1 K L^-T"))?;
    let a = (&a + a.transpose()) * 0.5;

    let eig = SymmetricEigen::new(a);
    let mut order: Vec<usize> = (0..free).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let lt = l.transpose();
    let mut frequencies = Vec::with_capacity(mode_count);
    let mut shapes = Vec::with_capacity(mode_count);
    for &idx in order.iter().take(mode_count) {
        let w2 = eig.eigenvalues[idx];
        if !(w2 > 0.0 && w2.is_finite()) {
            return Err(Error::Convergence {
                iterations: 0,
                detail: format!("non-positive eigenvalue {w2} for mode {}", frequencies.len() + 1),
            });
        }
        let y: DVector<f64> = eig.eigenvectors.column(idx).into_owned();
        let phi = lt.solve_upper_triangular(&y).ok_or_else(|| fail("L^-T y"))?;
        let rim = phi[free - 1];
        if rim.abs() < 1e-12 * phi.amax() {
            return Err(Error::Convergence {
                iterations: 0,
                detail: format!("mode {} has a nodal rim; cannot normalize", frequencies.len() + 1),
            });
        }
        let mut shape = Vec::with_capacity(n);
        shape.push(0.0);
        shape.extend(phi.iter().map(|v| v / rim));
        frequencies.push(w2.sqrt() / (2.0 * PI));
        shapes.push(shape);
    }
    Ok(ModalResult { frequencies, shapes, node_radii: system.node_radii.clone() })
}

/// Mesh, assemble and solve in one call.
pub fn modal_analysis(
    material: &Material,
    geometry: &DiskGeometry,
    element_count: usize,
    mode_count: usize,
) -> Result<ModalResult> {
    let mesh = RadialMesh::uniform(geometry.radius, element_count)?;
    solve_modes(&assemble_system(material, geometry, &mesh)?, mode_count)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub mode: usize,
    pub f_analytic: f64,
    pub f_fem: f64,
    /// `(f_fem - f_analytic) / f_analytic`
    pub rel_err: f64,
}

pub fn compare_with_analytic(
    material: &Material,
    geometry: &DiskGeometry,
    mode_indices: &[usize],
    element_count: usize,
) -> Result<Vec<ComparisonRow>> {
    if element_count < MIN_COMPARISON_ELEMENTS {
        return Err(Error::invalid(format!(
            "comparison needs at least {MIN_COMPARISON_ELEMENTS} elements, got {element_count}"
        )));
    }
    let analytic = resonance_frequencies(material, geometry, mode_indices)?;
    let highest = mode_indices.iter().copied().max().unwrap_or(0);
    let fem = modal_analysis(material, geometry, element_count, highest)?;
    Ok(analytic
        .iter()
        .map(|s| {
            let f_fem = fem.frequencies[s.mode_index - 1];
            ComparisonRow { mode: s.mode_index, f_analytic: s.f0, f_fem, rel_err: (f_fem - s.f0) / s.f0 }
        })
        .collect())
}

/// Mode-shape table: `r_m,u_mode1,u_mode2,...`.
pub fn shapes_csv(result: &ModalResult) -> String {
    let mut out = String::from("r_m");
    for i in 1..=result.shapes.len() {
        out.push_str(&format!(",u_mode{i}"));
    }
    out.push('\n');
    for (n, r) in result.node_radii.iter().enumerate() {
        out.push_str(&sci(*r));
        for shape in &result.shapes {
            out.push(',');
            out.push_str(&sci(shape[n]));
        }
        out.push('\n');
    }
    out
}
