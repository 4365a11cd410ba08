use proptest::prelude::*;

use imagewell::electrostatics::DielectricConstant::Metal;
use imagewell::scenarios::{
    averaged_plate_plate, casimir_force, material, noble_film_sweep, schottky_gap_sweep, total_force,
    two_plate_spectrum, vdw_force, Carrier, PlateSystem, SolverSettings,
};
use imagewell::schrodinger::{hydrogenic_energy, HydrogenicParams, Parity, StateKind};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

#[test]
fn zero_gap_endpoints_match_closed_forms() {
    for name in ["GaAs", "InSb"] {
        let m = material(name).unwrap();
        for carrier in [Carrier::Electron, Carrier::Hole] {
            let row = schottky_gap_sweep(&m, carrier, &[0.0], 1, SolverSettings::default()).unwrap().remove(0).unwrap();
            let p = HydrogenicParams::single_interface(m.finite_eps().unwrap(), Metal, m.carrier_mass(carrier).unwrap(), 1)
                .unwrap();
            assert!(rel(row.e0(), hydrogenic_energy(&p)) < 1e-2, "{name} {carrier:?}");
        }
    }
    let film = material("sAr").unwrap();
    let row = noble_film_sweep(&film, &[0], 1, SolverSettings::default()).unwrap().remove(0).unwrap();
    let p = HydrogenicParams::vacuum_facing(Metal, 1).unwrap();
    assert!(rel(row.e0(), hydrogenic_energy(&p)) < 1e-2);
}

#[test]
fn schottky_binding_weakens_with_gap() {
    let m = material("GaAs").unwrap();
    let gaps = [0.0, 1.0, 10.0, 100.0];
    let rows = schottky_gap_sweep(&m, Carrier::Electron, &gaps, 1, SolverSettings::default()).unwrap();
    let e: Vec<f64> = rows.into_iter().map(|r| r.unwrap().e0().abs()).collect();
    assert!(e.windows(2).all(|w| w[1] < w[0]), "{e:?}");
}

#[test]
fn pair_ordering_and_splitting() {
    let mut last = f64::INFINITY;
    for i in 0..12 {
        let d = 1.2 + 0.4 * i as f64;
        let spec = two_plate_spectrum(d, 2, -1.0, 1.0, 4001).unwrap();
        let (a, b) = (&spec.states[0], &spec.states[1]);
        if a.kind == StateKind::Bound && b.kind == StateKind::Bound {
            assert_eq!((a.parity, b.parity), (Parity::Even, Parity::Odd));
            assert!(a.energy <= b.energy);
        }
        let split = b.energy - a.energy;
        assert!(split <= last, "D = {d}");
        last = split;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn averaged_plate_plate_ordering(d in 0.75..4.5f64) {
        let spec = two_plate_spectrum(d, 2, -1.0, 1.0, 2001).unwrap();
        let even = averaged_plate_plate(d, &spec.states[0], -1.0, 1e-12).unwrap();
        let odd = averaged_plate_plate(d, &spec.states[1], -1.0, 1e-12).unwrap();
        prop_assert!(even >= odd, "{even} < {odd}");
    }

    // Gaps below the minimum of E0(D) near 0.6 nm.
    #[test]
    fn force_signs(d in 0.3..0.55f64, n in 1u64..1_000_000, area in 1e-12..1e-4f64) {
        let mut system = PlateSystem::new(n, area, 1e-19).unwrap();
        system.points = 2001;
        let b = total_force(&system, d).unwrap();
        prop_assert!(b.f_binding >= 0.0);
        prop_assert!(b.f_plate_plate >= 0.0);
        prop_assert!(b.f_casimir <= 0.0);
        prop_assert!(b.f_vdw <= 0.0);
    }

    #[test]
    fn power_laws(d in 0.1..100.0f64, area in 1e-12..1.0f64) {
        prop_assert!(rel(casimir_force(area, 2.0 * d) * 16.0, casimir_force(area, d)) < 1e-12);
        prop_assert!(rel(vdw_force(1e-19, 2.0 * d, area) * 8.0, vdw_force(1e-19, d, area)) < 1e-12);
    }
}

#[test]
fn plate_plate_force_is_repulsive_everywhere_sampled() {
    let mut system = PlateSystem::new(1, 1e-6, 0.0).unwrap();
    system.points = 2001;
    for d in [0.6, 1.0, 2.0, 4.0] {
        assert!(total_force(&system, d).unwrap().f_plate_plate > 0.0);
    }
}
