use std::f64::consts::PI;

use proptest::prelude::*;
use vacuum_core::constants::{C, H, HBAR, K_B, MEV};
use vacuum_core::numerics::QuadratureSpec;
use vacuum_core::statmech::*;

/// Brute-force triple loop over the lattice, no column shortcut.
fn brute_count(dims: BoxDims, energy_max: f64, mass: f64, lattice: ModeLattice) -> u64 {
    let pc_max = ((energy_max * energy_max - mass * mass).sqrt()) * MEV;
    let (range, step): (std::ops::RangeInclusive<i64>, f64) = match lattice {
        ModeLattice::Periodic => (-60..=60, H),
        ModeLattice::OctantWithZeroComponents => (0..=120, H / 2.0),
        ModeLattice::OctantInterior => (1..=120, H / 2.0),
    };
    let mut n = 0;
    for x in range.clone() {
        for y in range.clone() {
            for z in range.clone() {
                if x == 0 && y == 0 && z == 0 {
                    continue;
                }
                let px = step * x as f64 / dims.lx;
                let py = step * y as f64 / dims.ly;
                let pz = step * z as f64 / dims.lz;
                let pc = (px * px + py * py + pz * pz).sqrt() * C;
                if pc <= pc_max * (1.0 + 1e-12) {
                    n += 1;
                }
            }
        }
    }
    n
}

#[test]
fn column_count_matches_brute_force() {
    let dims = BoxDims { lx: 1e-12, ly: 1.3e-12, lz: 0.8e-12 };
    // a few thousand modes, radius chosen off any lattice point
    for mass in [0.0, 0.3] {
        let e = (25.3f64.powi(2) * (H * C / (2e-12 * MEV)).powi(2) + mass * mass).sqrt();
        for lattice in [ModeLattice::Periodic, ModeLattice::OctantWithZeroComponents, ModeLattice::OctantInterior] {
            let fast = count_box_modes(dims, e, mass, lattice, 1 << 40).unwrap();
            let slow = brute_count(dims, e, mass, lattice);
            assert_eq!(fast, slow, "{lattice:?} mass {mass}");
        }
    }
}

#[test]
fn large_counts_near_continuum() {
    let side = 1e-12;
    let k = (6.0 * 2e6 / PI).cbrt();
    let e = k * H * C / (2.0 * side) / MEV;
    let census = box_mode_census(BoxDims::cube(side), e, 0.0, 1 << 40).unwrap();
    assert!((census.periodic as f64 / census.continuum - 1.0).abs() < 0.02);
    assert!((census.octant_midpoint() / census.continuum - 1.0).abs() < 0.02);
    assert!((census.octant_interior as f64) < census.continuum);
    assert!((census.octant_with_zero_components as f64) > census.continuum);
}

#[test]
fn overflow_guard_trips() {
    let r = count_box_modes(BoxDims::cube(1.0), 1.0, 0.0, ModeLattice::Periodic, 1000);
    assert!(matches!(r, Err(StatmechError::OverflowGuard { .. })));
}

#[test]
fn stefan_boltzmann_at_three_temperatures() {
    for t in [2.725, 300.0, 6000.0] {
        let s = ThermalState::new(t).unwrap();
        let num = thermal_energy_density(s, QuadratureSpec::default()).unwrap();
        // σT⁴·4/c with σ from its own closed form
        let sigma = 2.0 * PI.powi(5) * K_B.powi(4) / (15.0 * H.powi(3) * C * C);
        let oracle = 4.0 * sigma * t.powi(4) / C;
        assert!((num / oracle - 1.0).abs() < 1e-6, "T = {t}");
    }
}

#[test]
fn wien_peak_against_fixed_point() {
    // x = 3(1 − e^{-x}) by iteration
    let mut x = 3.0_f64;
    for _ in 0..200 {
        x = 3.0 * (1.0 - (-x).exp());
    }
    for t in [10.0, 5000.0] {
        let peak = wien_peak(ThermalState::new(t).unwrap()).unwrap();
        assert!((peak - x).abs() < 1e-6);
    }
    assert!((x - 2.821).abs() < 0.001);
}

#[test]
fn zero_point_dominates_cold_curve() {
    let s = ThermalState::new(1e-6).unwrap();
    let kt = K_B * 1e-6;
    let curve = spectral_curve(s, true, Abscissa::Momentum, (1..=10).map(|i| 50.0 * kt * i as f64));
    // ∝ p³
    let r0 = curve[0].value / curve[0].abscissa.powi(3);
    for c in &curve {
        assert!((c.value / c.abscissa.powi(3) / r0 - 1.0).abs() < 1e-12);
    }
}

#[test]
fn angular_frequency_axis_conserves_energy() {
    let s = ThermalState::new(300.0).unwrap();
    let eps = 0.05 * 1.602176634e-19;
    let p = spectral_curve(s, false, Abscissa::Momentum, [eps])[0];
    let w = spectral_curve(s, false, Abscissa::AngularFrequency, [eps])[0];
    // w_ω dω = w_p dp with dp/dω = ħ/c
    assert!((w.value / (p.value * HBAR / C) - 1.0).abs() < 1e-14);
}

#[test]
fn invalid_temperature_rejected() {
    assert!(ThermalState::new(0.0).is_err());
    assert!(ThermalState::new(-3.0).is_err());
    assert!(ThermalState::new(f64::NAN).is_err());
}

proptest! {
    #[test]
    fn mean_energy_is_log_z_derivative(log_w in 11.0f64..17.0, log_x in -1.3f64..1.3) {
        let omega = 10f64.powf(log_w);
        let beta = 10f64.powf(log_x) / (HBAR * omega);
        let h = 1e-5 * beta;
        let up = ThermalState::from_beta(beta + h).unwrap();
        let dn = ThermalState::from_beta(beta - h).unwrap();
        let fd = -(log_partition_function(omega, up) - log_partition_function(omega, dn)) / (2.0 * h);
        let e = mean_energy(omega, ThermalState::from_beta(beta).unwrap());
        prop_assert!((fd / e - 1.0).abs() < 1e-6);
    }

    #[test]
    fn probabilities_sum_to_one(log_x in -0.8f64..1.5) {
        let omega = 1e14;
        let s = ThermalState::from_beta(10f64.powf(log_x) / (HBAR * omega)).unwrap();
        let total: f64 = (0..2000).map(|n| state_probability(omega, n, s)).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn occupation_is_bose_einstein(log_x in -3.0f64..2.0) {
        let omega = 1e13;
        let x = 10f64.powf(log_x);
        let s = ThermalState::from_beta(x / (HBAR * omega)).unwrap();
        prop_assert!((mean_occupation(omega, s) * x.exp_m1() - 1.0).abs() < 1e-12);
    }
}
