use std::f64::consts::PI;

use disk_resonator::lumped::{coupling_coefficient, equivalent_circuit, LumpedMechanical, TransducerConfig};
use disk_resonator::resonator::{characteristic, radius_for_frequency, resonance_frequency};
use disk_resonator::response::{
    electrical_transmission, mechanical_response, transmission, FrequencyGrid, ModalBranch,
};
use disk_resonator::special_math::{find_root, find_roots, Bracket};
use disk_resonator::{DiskGeometry, Material};
use proptest::prelude::*;

fn material() -> impl Strategy<Value = Material> {
    (60e9..300e9f64, 1500.0..9000.0f64, 0.05..0.45f64).prop_map(|(e, r, s)| Material::new(e, r, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn root_stays_in_bracket(a in -10.0..10.0f64, w in 0.01..5.0f64, c in 0.0..1.0f64) {
        let root = a + c * w;
        let f = |x: f64| (x - root) * (1.0 + (x - root).powi(2));
        let b = Bracket::new(a - 1e-3, a + w).unwrap();
        let x = find_root(f, b, 1e-13).unwrap();
        prop_assert!(b.contains(x));
        prop_assert!((x - root).abs() < 1e-9);
    }

    #[test]
    fn scan_finds_polynomial_roots_and_skips_poles(mut roots in prop::collection::vec(0.5..9.5f64, 1..5)) {
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|a, b| (*a - *b).abs() < 0.05);
        let pole = 9.9;
        let f = |x: f64| roots.iter().map(|r| x - r).product::<f64>() / (x - pole);
        let found = find_roots(f, 0.0, 10.0, 4000, 1e-12).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for (x, r) in found.iter().zip(&roots) {
            prop_assert!((x - r).abs() < 1e-8);
        }
    }

    #[test]
    fn lambda_is_a_characteristic_root(m in material(), mode in 1usize..=5) {
        let g = DiskGeometry::new(30e-6, 2e-6).unwrap();
        let s = resonance_frequency(&m, &g, mode).unwrap();
        prop_assert!(characteristic(m.poisson_ratio, s.lambda).abs() < 1e-9);
    }

    #[test]
    fn design_inverts_analysis(m in material(), f in 1e6..2e9f64, mode in 1usize..=3) {
        let r = radius_for_frequency(&m, f, mode).unwrap();
        let g = DiskGeometry::new(r, r * 0.01).unwrap();
        prop_assert!((resonance_frequency(&m, &g, mode).unwrap().f0 / f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lumped_resonance_ignores_thickness_and_density_scaling(m in material(), t in 0.2e-6..10e-6f64, k in 0.2..5.0f64) {
        let g = DiskGeometry::new(40e-6, t).unwrap();
        let s = resonance_frequency(&m, &g, 1).unwrap();
        let lm = LumpedMechanical::for_mode(&m, &g, &s, 1e4).unwrap();
        let scaled = Material::new(m.youngs_modulus * k, m.density * k, m.poisson_ratio).unwrap();
        let s2 = resonance_frequency(&scaled, &g, 1).unwrap();
        let lm2 = LumpedMechanical::for_mode(&scaled, &g, &s2, 1e4).unwrap();
        prop_assert!((s2.omega0 / s.omega0 - 1.0).abs() < 1e-12);
        prop_assert!((lm2.m_eff / lm.m_eff - k).abs() < 1e-9 * k);
        prop_assert!((lm.omega0() / s.omega0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn transmission_is_reciprocal(f in 40e6..100e6f64, rt in 0.0..1e5f64, vdc in 1.0..50.0f64) {
        let m = Material::polysilicon();
        let g = DiskGeometry::new(40e-6, 2e-6).unwrap();
        let s = resonance_frequency(&m, &g, 1).unwrap();
        let lm = LumpedMechanical::for_mode(&m, &g, &s, 1e4).unwrap();
        let t = TransducerConfig::new(100e-9, PI / 2.0, vdc, 8.8541878128e-12).unwrap().with_pad_parasitic(2e-15).unwrap();
        let c = equivalent_circuit(&lm, coupling_coefficient(&t, &g), &t, &g).unwrap();
        let omega = 2.0 * PI * f;
        let two_port = disk_resonator::response::circuit_two_port(&c, omega);
        let forward = 1.0 / (two_port.a * rt + two_port.b);
        let rev = two_port.reversed();
        let backward = 1.0 / (rev.a * rt + rev.b);
        prop_assert!((forward - backward).norm() <= 1e-12 * forward.norm());
        prop_assert!((transmission(&c, omega, rt) - forward).norm() <= 1e-12 * forward.norm());
    }

    #[test]
    fn single_mode_spectrum_is_unimodal(q in 50.0..1e5f64, r in 15e-6..60e-6f64) {
        let m = Material::polysilicon();
        let g = DiskGeometry::new(r, 2e-6).unwrap();
        let s = resonance_frequency(&m, &g, 1).unwrap();
        let lm = LumpedMechanical::for_mode(&m, &g, &s, q).unwrap();
        let grid = FrequencyGrid::linear(0.5 * s.f0, 1.5 * s.f0, 501).unwrap();
        let mech = mechanical_response(&[ModalBranch { solution: s, lumped: lm }], 1e-5, &grid).unwrap();
        prop_assert_eq!(mech.local_maxima().len(), 1);
        let t = TransducerConfig::new(100e-9, PI / 2.0, 10.0, 8.8541878128e-12).unwrap();
        let c = equivalent_circuit(&lm, coupling_coefficient(&t, &g), &t, &g).unwrap();
        let elec = electrical_transmission(&c, &grid, 0.0).unwrap();
        let peak = elec.frequencies[elec.peak_index().unwrap()];
        prop_assert!((peak / s.f0 - 1.0).abs() < 1e-9);
        for p in &elec.phases {
            prop_assert!(*p > -PI && *p <= PI);
        }
    }
}
