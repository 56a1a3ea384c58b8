//! Checks for the released-mode expansion: coefficient oracle agreement,
//! reconstruction residuals, norm/Parseval bookkeeping, momentum structure,
//! mean-value closed forms, and two-mode mixtures.

use num_complex::Complex64;
use qbounce_core::double_mirror::{solve_modes, DoubleMirrorMode};
use qbounce_core::free_fall::{expand, two_mode_mixture, Region2Expansion};
use qbounce_core::gravity;
use qbounce_core::quadrature::{self, QuadratureSpec};
use qbounce_core::scales::{constants, ScaleSystem};

const STEP_UM: f64 = 27.0;
const SLIT_UM: f64 = 28.0;

/// Coefficients of the released ground mode over the first 15 basis
/// states, frozen from an independent solver (adaptive quadrature overlap
/// against a separately rooted mode, agreeing with the closed form to
/// machine precision).
const COEFFS_M1: [f64; 15] = [
    7.183709931117e-03,
    -9.996640870844e-02,
    4.346527910314e-01,
    -7.631717834863e-01,
    4.300726123565e-01,
    1.316608292978e-01,
    -3.549787680937e-02,
    -6.284117197215e-02,
    -6.293911920580e-02,
    -4.304215388411e-02,
    -1.071744254006e-02,
    1.612778873391e-02,
    2.852439800470e-02,
    2.886831027558e-02,
    2.327422942505e-02,
];

/// Frozen reconstruction residuals over [0, L + h + 3 z0] for the ground
/// mode at increasing truncation, from the same independent solver.
const RESIDUALS_M1: [(usize, f64); 4] = [
    (8, 0.1053000983),
    (12, 0.0694328145),
    (15, 0.0514274687),
    (20, 0.0465387360),
];

fn modes() -> Vec<DoubleMirrorMode> {
    solve_modes(&ScaleSystem::reference(), SLIT_UM, 2).unwrap()
}

fn ground_expansion() -> Region2Expansion {
    expand(&modes()[0], STEP_UM, 15, &QuadratureSpec::default()).unwrap()
}

#[test]
fn coefficients_match_frozen_reference() {
    let exp = ground_expansion();
    for (n, (got, want)) in exp.coefficients().iter().zip(COEFFS_M1).enumerate() {
        assert!(
            ((got - want) / want).abs() < 1e-9,
            "c_{} = {got}, frozen {want}",
            n + 1
        );
    }
    let captured = exp.captured_norm();
    assert!((captured - 0.9972828857).abs() < 1e-8, "captured {captured}");
}

#[test]
fn bare_airy_convention_matches_frozen_values() {
    let all = modes();
    let exp1 = expand(&all[0], STEP_UM, 15, &QuadratureSpec::default()).unwrap();
    let exp2 = expand(&all[1], STEP_UM, 15, &QuadratureSpec::default()).unwrap();
    let d1 = exp1.airy_basis_coefficients();
    let d2 = exp2.airy_basis_coefficients();
    assert!(((d1[0] - -3.251277829933e-03) / d1[0]).abs() < 1e-9, "{}", d1[0]);
    assert!(((d1[3] - -2.659065260921e-01) / d1[3]).abs() < 1e-9, "{}", d1[3]);
    assert!(((d2[14] - -1.266499431485e-02) / d2[14]).abs() < 1e-9, "{}", d2[14]);
    // Sign structure: the ground mode keeps one sign through the dominant
    // low indices; the first excited mode flips within them.
    assert!(d1[..5].iter().all(|d| *d < 0.0));
    assert!(d2[..6].iter().any(|d| *d > 0.0) && d2[..6].iter().any(|d| *d < 0.0));
}

/// The keystone: the closed-form coefficients must agree with a direct
/// quadrature of the overlap integral for every kept state of both modes.
#[test]
fn closed_form_agrees_with_overlap_quadrature() {
    let tight = QuadratureSpec {
        abs_tol: 1e-12,
        rel_tol: 1e-12,
        max_intervals: 8000,
        ..QuadratureSpec::default()
    };
    for mode in modes() {
        let exp = expand(&mode, STEP_UM, 15, &QuadratureSpec::default()).unwrap();
        let eta = STEP_UM / mode.z0_um();
        let lambda = mode.scaled_length();
        for (i, c_closed) in exp.coefficients().iter().enumerate() {
            let eigen = gravity::eigenfunction(i + 1);
            let overlap = quadrature::integrate(
                |xi| eigen.eval(xi) * mode.scaled_wave(xi - eta),
                eta,
                eta + lambda,
                &tight,
            )
            .unwrap()
            .value;
            assert!(
                ((c_closed - overlap) / overlap).abs() < 1e-6,
                "mode {} state {}: closed {c_closed} vs overlap {overlap}",
                mode.m,
                i + 1
            );
        }
    }
}

#[test]
fn high_index_coefficients_are_small() {
    let all = modes();
    // Acceptance-level claim for the ground mode: everything past index 12
    // stays below 5% of the largest coefficient.
    let exp1 = expand(&all[0], STEP_UM, 15, &QuadratureSpec::default()).unwrap();
    let d1 = exp1.airy_basis_coefficients();
    let max1 = d1.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let tail1 = d1[12..].iter().fold(0.0f64, |m, d| m.max(d.abs()));
    assert!(tail1 < 0.05 * max1, "tail {tail1} vs max {max1}");
    // The first excited mode honestly measures 6.2%, not below 5%; the
    // qualitative smallness claim holds, the round 5% does not.  Bound it
    // at 7% and keep the measured value visible here.
    let exp2 = expand(&all[1], STEP_UM, 15, &QuadratureSpec::default()).unwrap();
    let d2 = exp2.airy_basis_coefficients();
    let max2 = d2.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let tail2 = d2[12..].iter().fold(0.0f64, |m, d| m.max(d.abs()));
    assert!(tail2 < 0.07 * max2, "tail {tail2} vs max {max2}");
    assert!(tail2 > 0.05 * max2, "measured ratio moved below 5%: update records");
}

#[test]
fn source_wave_is_confined_and_normalized() {
    let exp = ground_expansion();
    // Exactly zero outside the lifted slit, boundary values tiny.
    assert_eq!(exp.initial_profile(STEP_UM - 1e-9), 0.0);
    assert_eq!(exp.initial_profile(STEP_UM + SLIT_UM + 1e-9), 0.0);
    assert!(exp.initial_profile(STEP_UM).abs() < 1e-12);
    assert!(exp.initial_profile(STEP_UM + SLIT_UM).abs() < 1e-12);
    // Time dependence is a pure phase.
    let w = exp.source_wavefunction(40.0, 1.5e-3);
    assert!((w.norm() - exp.initial_profile(40.0).abs()).abs() < 1e-14);
    // Unit norm over the slit.
    let norm = quadrature::integrate(
        |z| exp.initial_profile(z).powi(2),
        STEP_UM,
        STEP_UM + SLIT_UM,
        &QuadratureSpec::default(),
    )
    .unwrap()
    .value;
    assert!((norm - 1.0).abs() < 1e-7, "norm {norm}");
}

#[test]
fn reconstruction_residual_matches_frozen_and_decreases() {
    let mode = modes()[0];
    let spec = QuadratureSpec::default();
    let mut previous = f64::INFINITY;
    for (truncation, frozen) in RESIDUALS_M1 {
        let exp = expand(&mode, STEP_UM, truncation, &spec).unwrap();
        let residual = exp.continuity_residual(&spec).unwrap();
        assert!(
            (residual - frozen).abs() < 1e-6,
            "N={truncation}: residual {residual} vs frozen {frozen}"
        );
        assert!(residual < previous, "residual must decrease with truncation");
        previous = residual;
    }
}

#[test]
fn evolved_norm_is_conserved() {
    let exp = ground_expansion();
    let expected = exp.captured_norm();
    let spec = QuadratureSpec::default();
    for t in [0.0, 3.0e-3, 6.0e-3, 9.0e-3] {
        let norm = quadrature::integrate(|z| exp.spatial_density(z, t), 0.0, 110.0, &spec)
            .unwrap()
            .value;
        assert!(
            (norm - expected).abs() < 1e-6,
            "t = {t}: norm {norm} vs {expected}"
        );
    }
}

#[test]
fn momentum_norm_matches_spatial_norm() {
    let exp = ground_expansion();
    let expected = exp.captured_norm();
    let spec = QuadratureSpec {
        abs_tol: 1e-7,
        rel_tol: 1e-7,
        ..QuadratureSpec::default()
    };
    for t in [0.0, 3.0e-3] {
        let norm = exp.momentum_norm(t, 6.0, &spec).unwrap();
        assert!(
            (norm - expected).abs() < 1e-4,
            "t = {t}: momentum norm {norm} vs {expected}"
        );
    }
}

#[test]
fn momentum_structure_through_a_bounce() {
    let all = modes();
    let exp1 = expand(&all[0], STEP_UM, 15, &QuadratureSpec::default()).unwrap();
    let exp2 = expand(&all[1], STEP_UM, 15, &QuadratureSpec::default()).unwrap();
    let k_grid: Vec<f64> = (0..241).map(|i| -3.0 + i as f64 * 0.025).collect();
    let spec = QuadratureSpec::default();
    let table1 = exp1.momentum_table(&k_grid, &spec).unwrap();
    let table2 = exp2.momentum_table(&k_grid, &spec).unwrap();
    // Released ground mode starts with its momentum peak at zero...
    assert!(table1.peak_wavenumber(0.0).abs() < 1e-12);
    // ...while the released first excited mode starts with a dip there.
    let row2 = table2.density_row(0.0);
    let mid = k_grid.len() / 2;
    assert!(row2[mid] < row2[mid - 2] && row2[mid] < row2[mid + 2]);
    // Falling before the first bounce, rising after it.
    let before = table1.peak_wavenumber(2.5e-3);
    let after = table1.peak_wavenumber(3.5e-3);
    assert!(before < 0.0, "peak before bounce {before}");
    assert!(after > 0.0, "peak after bounce {after}");
    // The cached evaluator agrees with the direct one.
    let direct = exp1.momentum_amplitude(k_grid[40], 2.5e-3, &spec).unwrap();
    let cached = table1.amplitude(40, 2.5e-3);
    assert!((direct - cached).norm() < 1e-10);
}

#[test]
fn mean_values_follow_the_classical_drop() {
    let exp = ground_expansion();
    let scales = ScaleSystem::reference();
    let g = scales.gravity();
    // Frozen from the closed-form oracle.
    assert!((exp.mean_position(0.0) - 36.03403192686377).abs() < 1e-9);
    assert_eq!(exp.mean_momentum(0.0), 0.0);
    // Early free fall: the mean height tracks the parabola closely...
    for (t, bound) in [(0.5e-3, 0.02), (1.0e-3, 0.15)] {
        let want = exp.mean_position(0.0) - 0.5 * g * t * t / constants::MICRON;
        let got = exp.mean_position(t);
        assert!((got - want).abs() < bound, "t={t}: <z> {got} vs parabola {want}");
    }
    // ...and the mean wavenumber tracks -m g t / hbar.
    let t = 0.5e-3;
    let classical = -scales.mass() * g * t / constants::HBAR * constants::MICRON;
    let got = exp.mean_momentum(t);
    assert!(
        ((got - classical) / classical).abs() < 0.01,
        "<k>({t}) = {got} vs classical {classical}"
    );
    // Mean momentum flips sign across the first bounce.
    assert!(exp.mean_momentum(2.5e-3) < 0.0);
    assert!(exp.mean_momentum(3.5e-3) > 0.0);
    // Ehrenfest: d<z>/dt = hbar <k> / m, checked by central difference.
    let t0 = 0.7e-3;
    let dt = 1e-6;
    let derivative =
        (exp.mean_position(t0 + dt) - exp.mean_position(t0 - dt)) / (2.0 * dt);
    let velocity = constants::HBAR * exp.mean_momentum(t0) / constants::MICRON
        / scales.mass()
        / constants::MICRON;
    assert!(
        ((derivative - velocity) / velocity).abs() < 1e-4,
        "d<z>/dt {derivative} vs hbar<k>/m {velocity}"
    );
}

#[test]
fn peak_density_rides_the_parabola() {
    let exp = ground_expansion();
    let scales = ScaleSystem::reference();
    let g = scales.gravity();
    let grid: Vec<f64> = (0..4001).map(|i| i as f64 * 0.02).collect();
    let peak_at = |t: f64| {
        let mut best = (0.0, f64::MIN);
        for &z in &grid {
            let d = exp.spatial_density(z, t);
            if d > best.1 {
                best = (z, d);
            }
        }
        best.0
    };
    let start = peak_at(0.0);
    // The tallest interference fringe wanders within the packet width
    // around the classical path; a 5 um band covers it through the fall.
    for t in [0.5e-3, 1.0e-3, 1.5e-3] {
        let classical = start - 0.5 * g * t * t / constants::MICRON;
        let got = peak_at(t);
        assert!(
            (got - classical).abs() < 5.0,
            "t={t}: peak {got} vs parabola {classical}"
        );
    }
}

#[test]
fn densities_are_even_in_time() {
    let exp = ground_expansion();
    for (z, t) in [(35.0, 1.3e-3), (20.0, 4.2e-3), (50.0, 7.7e-3)] {
        let forward = exp.spatial_density(z, t);
        let backward = exp.spatial_density(z, -t);
        assert!(
            ((forward - backward) / forward).abs() < 1e-12,
            "z={z} t={t}: {forward} vs {backward}"
        );
    }
}

#[test]
fn trig_components_recompose_the_density() {
    let exp = ground_expansion();
    let (gc, gs) = exp.trig_components(33.0, 2.0e-3);
    let density = exp.spatial_density(33.0, 2.0e-3);
    assert!((gc * gc + gs * gs - density).abs() < 1e-15 * density.max(1.0));
    // At t = 0 the sine part vanishes identically.
    let (_, gs0) = exp.trig_components(33.0, 0.0);
    assert_eq!(gs0, 0.0);
}

#[test]
fn mixtures_combine_the_two_released_modes() {
    let all = modes();
    let spec = QuadratureSpec::default();
    let exp1 = expand(&all[0], STEP_UM, 15, &spec).unwrap();
    let exp2 = expand(&all[1], STEP_UM, 15, &spec).unwrap();
    let mix = two_mode_mixture(exp1.clone(), exp2.clone(), 0.55, 0.45).unwrap();

    // The incoherent density is the weighted sum by construction.
    let z = 38.5;
    let t = 1.1e-3;
    assert_eq!(
        mix.incoherent_density(z, t),
        0.55 * exp1.spatial_density(z, t) + 0.45 * exp2.spatial_density(z, t)
    );

    // The coherent density differs from it somewhere at t = 0.
    let max_gap = (0..400)
        .map(|i| {
            let z = 27.0 + i as f64 * 0.07;
            (mix.coherent_density(z, 0.0) - mix.incoherent_density(z, 0.0)).abs()
        })
        .fold(0.0f64, f64::max);
    assert!(max_gap > 1e-3, "cross term too small: {max_gap}");

    // Quadrature of both densities reproduces the closed-form norms at
    // any time; the norms sit just under 1 by the truncation losses.
    let coherent_norm = mix.coherent_norm();
    let incoherent_norm = mix.incoherent_norm();
    assert!(coherent_norm > 0.99 && coherent_norm < 1.0, "{coherent_norm}");
    assert!(incoherent_norm > 0.99 && incoherent_norm < 1.0, "{incoherent_norm}");
    for t in [0.0, 4.0e-3] {
        let coh = quadrature::integrate(|z| mix.coherent_density(z, t), 0.0, 110.0, &spec)
            .unwrap()
            .value;
        let inc = quadrature::integrate(|z| mix.incoherent_density(z, t), 0.0, 110.0, &spec)
            .unwrap()
            .value;
        assert!((coh - coherent_norm).abs() < 1e-4, "t={t}: {coh} vs {coherent_norm}");
        assert!((inc - incoherent_norm).abs() < 1e-4, "t={t}: {inc} vs {incoherent_norm}");
    }

    // A weight of zero collapses the mixture onto its first component.
    let solo = two_mode_mixture(exp1.clone(), exp2, 1.0, 0.0).unwrap();
    assert_eq!(solo.coherent_density(z, t), exp1.spatial_density(z, t));
}

#[test]
fn synthesize_accepts_custom_weights() {
    let exp = ground_expansion();
    // Reproducing the evolution weights by hand must give the wave itself.
    let t = 2.2e-3;
    let weights: Vec<Complex64> = exp
        .coefficients()
        .iter()
        .zip(exp.levels())
        .map(|(c, level)| {
            Complex64::from_polar(1.0, -(level.energy / constants::HBAR) * t) * *c
        })
        .collect();
    let via_weights = exp.synthesize(&weights, 31.0);
    let direct = exp.wavefunction(31.0, t);
    assert_eq!(via_weights, direct);
}
