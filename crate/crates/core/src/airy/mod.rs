//! Airy functions Ai, Bi with first derivatives on the real line, and the
//! negative zeros of Ai.
//!
//! For |x| <= 9.5 the values come from Taylor expansions of y'' = x·y about
//! the nearest tabulated integer node (tables.rs, regenerated by
//! tools/gen_airy_tables.py).  Beyond that the Poincare asymptotic
//! expansions in xi = (2/3)|x|^{3/2} take over.  Algorithms follow
//! A. Gil, J. Segura, N. M. Temme, "Numerical Methods for Special
//! Functions", SIAM 2007, ch. 8, and NIST DLMF ch. 9.
//!
//! Accuracy, validated against 30-digit arithmetic in
//! tests/airy_accuracy.rs: relative error below 5e-15 for |x| <= 9.5, below
//! 2e-13 relative to the oscillation envelope for |x| <= 100.  Bi and Bi'
//! overflow to IEEE infinity for x > 104.

mod tables;

use std::f64::consts::{FRAC_PI_4, PI};
use tables::TAYLOR_NODES;

/// Ai, Bi and their first derivatives at one abscissa.
#[derive(Clone, Copy, Debug)]
pub struct AiryValues {
    pub ai: f64,
    pub aip: f64,
    pub bi: f64,
    pub bip: f64,
}

/// Taylor/asymptotic handover point.
const SWITCH: f64 = 9.5;
/// Taylor series length; at |h| <= 0.5 the truncated tail is < 1e-25.
const TAYLOR_TERMS: usize = 40;
/// Asymptotic coefficient count; at the handover (xi ≈ 19.5) the series
/// still decreases at k = 31 and the truncated term is < 3e-18.
const N_ASYM: usize = 32;

/// u_k of the Airy asymptotic expansions (DLMF 9.7.2) and the companion
/// v_k = u_k·(6k+1)/(1−6k).
const fn asym_coefficients() -> ([f64; N_ASYM], [f64; N_ASYM]) {
    let mut u = [0.0; N_ASYM];
    let mut v = [0.0; N_ASYM];
    u[0] = 1.0;
    v[0] = 1.0;
    let mut k = 1;
    while k < N_ASYM {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        v[k] = u[k] * (6.0 * kf + 1.0) / (1.0 - 6.0 * kf);
        k += 1;
    }
    (u, v)
}

static ASYM_UV: ([f64; N_ASYM], [f64; N_ASYM]) = asym_coefficients();

/// All four Airy quantities at `x`.
pub fn airy(x: f64) -> AiryValues {
    if x < -SWITCH {
        asym_negative(x)
    } else if x > SWITCH {
        asym_positive(x)
    } else if x.is_nan() {
        AiryValues { ai: f64::NAN, aip: f64::NAN, bi: f64::NAN, bip: f64::NAN }
    } else {
        taylor(x)
    }
}

pub fn ai(x: f64) -> f64 {
    airy(x).ai
}

pub fn ai_prime(x: f64) -> f64 {
    airy(x).aip
}

pub fn bi(x: f64) -> f64 {
    airy(x).bi
}

pub fn bi_prime(x: f64) -> f64 {
    airy(x).bip
}

fn taylor(x: f64) -> AiryValues {
    let c = x.round().clamp(-9.0, 9.0);
    let node = &TAYLOR_NODES[(c as i32 + 9) as usize];
    let h = x - node.x;
    let (ai, aip) = taylor_series(c, h, node.ai, node.aip);
    let (bi, bip) = taylor_series(c, h, node.bi, node.bip);
    AiryValues { ai, aip, bi, bip }
}

/// Power series of a solution of y'' = x·y about x = c, evaluated at c + h
/// together with its derivative.  Coefficient recurrence:
/// t_{k+2} = (c·t_k + t_{k-1}) / ((k+1)(k+2)).
fn taylor_series(c: f64, h: f64, f0: f64, f1: f64) -> (f64, f64) {
    let mut t = [0.0; TAYLOR_TERMS];
    t[0] = f0;
    t[1] = f1;
    t[2] = 0.5 * c * f0;
    for k in 1..TAYLOR_TERMS - 2 {
        t[k + 2] = (c * t[k] + t[k - 1]) / (((k + 1) * (k + 2)) as f64);
    }
    let mut val = t[TAYLOR_TERMS - 1];
    let mut dval = (TAYLOR_TERMS - 1) as f64 * t[TAYLOR_TERMS - 1];
    for k in (0..TAYLOR_TERMS - 1).rev() {
        val = t[k] + h * val;
        if k >= 1 {
            dval = k as f64 * t[k] + h * dval;
        }
    }
    (val, dval)
}

/// DLMF 9.7.5-9.7.8 for x > SWITCH.
fn asym_positive(x: f64) -> AiryValues {
    let xi = 2.0 / 3.0 * x * x.sqrt();
    let x4 = x.sqrt().sqrt();
    let sp = PI.sqrt();
    let (u_alt, u_plain) = signed_sums(&ASYM_UV.0, xi);
    let (v_alt, v_plain) = signed_sums(&ASYM_UV.1, xi);
    let em = (-xi).exp();
    let ep = xi.exp();
    AiryValues {
        ai: em * u_alt / (2.0 * sp * x4),
        aip: -x4 * em * v_alt / (2.0 * sp),
        bi: ep * u_plain / (sp * x4),
        bip: x4 * ep * v_plain / sp,
    }
}

/// Sum_k (−1)^k c_k ξ^{−k} and Sum_k c_k ξ^{−k}.
fn signed_sums(coef: &[f64; N_ASYM], xi: f64) -> (f64, f64) {
    let mut alt = 0.0;
    let mut plain = 0.0;
    let mut pow = 1.0;
    for (k, &c) in coef.iter().enumerate() {
        let term = c * pow;
        plain += term;
        if k % 2 == 0 {
            alt += term;
        } else {
            alt -= term;
        }
        pow /= xi;
        if term.abs() < 1e-18 * plain.abs() {
            break;
        }
    }
    (alt, plain)
}

/// DLMF 9.7.9-9.7.12 for x < −SWITCH.
fn asym_negative(x: f64) -> AiryValues {
    let t = -x;
    let xi = 2.0 / 3.0 * t * t.sqrt();
    let t4 = t.sqrt().sqrt();
    let sp = PI.sqrt();
    let (ue, uo) = interleaved_sums(&ASYM_UV.0, xi);
    let (ve, vo) = interleaved_sums(&ASYM_UV.1, xi);
    let (s, c) = (xi - FRAC_PI_4).sin_cos();
    AiryValues {
        ai: (c * ue + s * uo) / (sp * t4),
        aip: t4 * (s * ve - c * vo) / sp,
        bi: (-s * ue + c * uo) / (sp * t4),
        bip: t4 * (c * ve + s * vo) / sp,
    }
}

/// Even/odd split of Sum_k (−1)^{⌊k/2⌋} c_k ξ^{−k}: even-k terms multiply
/// the cosine of the oscillatory expansions, odd-k terms the sine.
fn interleaved_sums(coef: &[f64; N_ASYM], xi: f64) -> (f64, f64) {
    let mut even = 0.0;
    let mut odd = 0.0;
    let mut pow = 1.0;
    for (k, &c) in coef.iter().enumerate() {
        let term = c * pow;
        match k % 4 {
            0 => even += term,
            1 => odd += term,
            2 => even -= term,
            _ => odd -= term,
        }
        pow /= xi;
        if term.abs() < 1e-18 * (even.abs() + odd.abs()) {
            break;
        }
    }
    (even, odd)
}

/// n-th negative zero of Ai, n >= 1.  Asymptotic estimate (DLMF 9.9.18)
/// refined by Newton iteration; the derivative at a zero is bounded away
/// from 0, so the iteration is well conditioned for every n.
pub fn ai_zero(n: usize) -> f64 {
    assert!(n >= 1, "Airy zero index starts at 1");
    let t = 3.0 * PI * (4 * n - 1) as f64 / 8.0;
    let t2 = t * t;
    let mut x = -t.powf(2.0 / 3.0) * (1.0 + 5.0 / 48.0 / t2 - 5.0 / 36.0 / (t2 * t2));
    for _ in 0..30 {
        let v = airy(x);
        let dx = v.ai / v.aip;
        x -= dx;
        if dx.abs() < 1e-15 * x.abs() {
            break;
        }
    }
    x
}

/// First `count` negative zeros of Ai.
pub fn ai_zeros(count: usize) -> Vec<f64> {
    (1..=count).map(ai_zero).collect()
}
