use disk_resonator::fem::{assemble_system, modal_analysis, solve_modes, RadialMesh};
use disk_resonator::resonator::resonance_frequencies;
use disk_resonator::{DiskGeometry, Material};

fn errors(material: &Material, geometry: &DiskGeometry, modes: usize, elements: usize) -> Vec<f64> {
    let idx: Vec<usize> = (1..=modes).collect();
    let exact = resonance_frequencies(material, geometry, &idx).unwrap();
    let fem = modal_analysis(material, geometry, elements, modes).unwrap();
    fem.frequencies.iter().zip(&exact).map(|(f, s)| f / s.f0 - 1.0).collect()
}

#[test]
fn refinement_converges_at_second_order() {
    let m = Material::polysilicon();
    let g = DiskGeometry::new(40e-6, 2e-6).unwrap();
    let levels = [32, 64, 128, 256];
    let errs: Vec<Vec<f64>> = levels.iter().map(|&n| errors(&m, &g, 3, n)).collect();
    for mode in 0..3 {
        for pair in errs.windows(2) {
            let (coarse, fine) = (pair[0][mode], pair[1][mode]);
            assert!(fine > 0.0 && fine < coarse, "mode {}: {coarse} -> {fine}", mode + 1);
            let order = (coarse / fine).log2();
            assert!((1.8..2.2).contains(&order), "mode {} order {order}", mode + 1);
        }
    }
}

#[test]
fn fem_is_an_upper_bound() {
    let m = Material::new(169e9, 2330.0, 0.28).unwrap();
    let g = DiskGeometry::new(25e-6, 1.5e-6).unwrap();
    for n in [8, 16, 40, 100] {
        for e in errors(&m, &g, 4, n) {
            assert!(e > 0.0, "n={n} err={e}");
        }
    }
}

#[test]
fn relative_error_does_not_depend_on_radius() {
    let m = Material::polysilicon();
    let reference = errors(&m, &DiskGeometry::new(10e-6, 2e-6).unwrap(), 2, 64);
    for r in [20e-6, 40e-6, 60e-6] {
        let e = errors(&m, &DiskGeometry::new(r, 2e-6).unwrap(), 2, 64);
        for (a, b) in e.iter().zip(&reference) {
            assert!((a - b).abs() < 1e-6 * b.abs(), "{a} vs {b}");
        }
    }
}

#[test]
fn graded_mesh_matches_uniform_limit() {
    let m = Material::polysilicon();
    let g = DiskGeometry::new(40e-6, 2e-6).unwrap();
    let nodes: Vec<f64> = (0..=200).map(|i| 40e-6 * (i as f64 / 200.0).sqrt()).collect();
    let system = assemble_system(&m, &g, &RadialMesh::from_nodes(nodes).unwrap()).unwrap();
    let fem = solve_modes(&system, 2).unwrap();
    let exact = resonance_frequencies(&m, &g, &[1, 2]).unwrap();
    for (f, s) in fem.frequencies.iter().zip(&exact) {
        assert!((f / s.f0 - 1.0).abs() < 1e-4);
    }
}
