//! Structural identities of the Airy evaluator checked over random
//! abscissas.

use proptest::prelude::*;
use qbounce_core::airy;
use std::f64::consts::PI;

proptest! {
    /// Ai(x) Bi'(x) - Ai'(x) Bi(x) = 1/pi everywhere (DLMF 9.2.7).  The
    /// two products have matching signs, so no cancellation amplifies the
    /// test.
    #[test]
    fn wronskian_is_one_over_pi(x in -40.0f64..40.0) {
        let v = airy::airy(x);
        let w = v.ai * v.bip - v.aip * v.bi;
        prop_assert!((w * PI - 1.0).abs() < 5e-13, "x = {x}: pi W - 1 = {:e}", w * PI - 1.0);
    }

    /// Both Ai and Bi solve y'' = x y; check the second derivative by a
    /// five-point central difference.
    #[test]
    fn solves_airy_equation(x in -20.0f64..8.0) {
        let h = 1e-2;
        let f = |t: f64| airy::ai(t);
        let second = (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x)
            + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h);
        let scale = airy::ai(x).abs().max(1e-3);
        prop_assert!((second - x * airy::ai(x)).abs() < 1e-6 * scale.max(x.abs() * scale),
            "x = {x}: D2 = {second}, x Ai = {}", x * airy::ai(x));
    }

    /// Continuity across the Taylor/asymptotic handover at |x| = 9.5.
    #[test]
    fn handover_is_continuous(side in prop::bool::ANY, eps in 1e-12f64..1e-9) {
        let xb = if side { 9.5 } else { -9.5 };
        let lo = airy::airy(xb - eps);
        let hi = airy::airy(xb + eps);
        // The function's own slope over the gap bounds the allowed jump.
        for (a, b, d) in [
            (lo.ai, hi.ai, lo.aip),
            (lo.bi, hi.bi, lo.bip),
        ] {
            let jump = (b - a).abs();
            let slope = (d * 2.0 * eps).abs();
            prop_assert!(jump <= slope + 1e-12 * a.abs().max(b.abs()),
                "xb = {xb}: jump {jump:e} vs slope bound {slope:e}");
        }
    }
}
