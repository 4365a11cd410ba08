use proptest::prelude::*;

use imagewell::scenarios::two_plate_spectrum;
use imagewell::schrodinger::{
    diagonalization_oracle, solve_eigenstates, DomainKind, Eigenstate, Parity, PotentialProfile, StateKind,
    DEGENERACY_TOL,
};

/// Random smooth well on an interval of `length` Bohr: a tilted floor with
/// one or two Gaussian bumps.
fn random_profile(points: usize) -> impl Strategy<Value = PotentialProfile> {
    (2.0..15.0f64, 0.0..4.0f64, 0.3..0.7f64, 0.05..0.2f64, -0.5..0.5f64, -1.0..1.0f64).prop_map(
        move |(length, bump, centre, width, tilt, offset)| {
            PotentialProfile::from_fn(0.0, length, points, DomainKind::Interval, |z| {
                let x = z / length;
                Ok(offset + tilt * x + bump * (-((x - centre) / width).powi(2)).exp())
            })
            .unwrap()
        },
    )
}

fn check_orthonormal(states: &[Eigenstate]) -> Result<(), TestCaseError> {
    for (i, a) in states.iter().enumerate() {
        prop_assert!((a.norm() - 1.0).abs() < 1e-6);
        for b in &states[i + 1..] {
            prop_assert!(a.overlap(b).abs() < 1e-6, "overlap {}", a.overlap(b));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn node_theorem_and_orthonormality(profile in random_profile(2001)) {
        let states = solve_eigenstates(&profile, 1.0, 5).unwrap();
        let fd = diagonalization_oracle(&profile, 1.0, 5).unwrap();
        for (k, (s, o)) in states.iter().zip(&fd).enumerate() {
            prop_assert_eq!(s.nodes, k);
            prop_assert_eq!(o.nodes, k);
            prop_assert!(s.energy > states.get(k.wrapping_sub(1)).map_or(f64::NEG_INFINITY, |p| p.energy));
        }
        check_orthonormal(&states)?;
        check_orthonormal(&fd)?;
    }

    #[test]
    fn grid_halving_changes_little(profile in random_profile(4001)) {
        let fine = solve_eigenstates(&profile, 1.0, 3).unwrap();
        let coarse = solve_eigenstates(&profile.coarsened().unwrap(), 1.0, 3).unwrap();
        for (f, c) in fine.iter().zip(&coarse) {
            let scale = f.energy.abs().max(1.0 / profile.length().powi(2));
            prop_assert!((f.energy - c.energy).abs() < 1e-5 * scale, "{} vs {}", f.energy, c.energy);
        }
    }

    #[test]
    fn oracle_converges_monotonically(profile in random_profile(801)) {
        // Ground state of the central-difference operator rises towards the
        // continuum value as the grid is refined.
        let coarse = diagonalization_oracle(&profile.coarsened().unwrap(), 1.0, 1).unwrap()[0].energy;
        let fine = diagonalization_oracle(&profile, 1.0, 1).unwrap()[0].energy;
        let exact = solve_eigenstates(&profile, 1.0, 1).unwrap()[0].energy;
        prop_assert!(coarse <= fine + 1e-12 && fine <= exact + 1e-9, "{coarse} {fine} {exact}");
    }

    #[test]
    fn symmetric_profiles_alternate_parity(depth in 0.5..3.0f64, length in 4.0..12.0f64, barrier in 0.0..3.0f64) {
        let profile = PotentialProfile::from_fn(0.0, length, 2001, DomainKind::Interval, |z| {
            let x = z / length - 0.5;
            Ok(-depth + barrier * (-(x / 0.08).powi(2)).exp())
        })
        .unwrap();
        prop_assert!(profile.is_symmetric());
        let states = solve_eigenstates(&profile, 1.0, 4).unwrap();
        for (k, s) in states.iter().enumerate() {
            let expect = if k % 2 == 0 { Parity::Even } else { Parity::Odd };
            prop_assert_eq!(s.parity, expect);
        }
        for pair in states.chunks(2) {
            prop_assert!(pair[0].energy <= pair[1].energy);
        }
    }

    #[test]
    fn kind_follows_barrier(gap in 0.5..4.0f64) {
        let spec = two_plate_spectrum(gap, 3, -1.0, 1.0, 2001).unwrap();
        let u_max = spec.profile.u_max();
        for s in &spec.states {
            let expect = if s.energy < u_max { StateKind::Bound } else { StateKind::Box };
            prop_assert_eq!(s.kind, expect);
        }
    }
}

#[test]
fn deep_double_well_gives_degenerate_parity_pair() {
    let profile = PotentialProfile::from_fn(0.0, 40.0, 4001, DomainKind::Interval, |z| {
        let x = z / 40.0 - 0.5;
        Ok(-2.0 + 40.0 * (-(x / 0.1).powi(2)).exp())
    })
    .unwrap();
    let states = solve_eigenstates(&profile, 1.0, 2).unwrap();
    assert!(states[1].energy - states[0].energy < DEGENERACY_TOL);
    assert_eq!((states[0].parity, states[1].parity), (Parity::Even, Parity::Odd));
}
