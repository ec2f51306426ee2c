//! Pointwise spherical-harmonic evaluation.
//!
//! `Y_lm(theta, phi) = pbar_l^|m|(cos theta) * e^{i m phi}`, with the
//! Condon-Shortley phase `(-1)^m` folded into the normalized associated
//! Legendre function `pbar` and an extra `(-1)^m` applied for negative
//! orders so that `Y_{l,-m} = (-1)^m conj(Y_{lm})` holds identically.
//!
//! `pbar` is computed by upward recurrence in `l` at fixed `m`,
//!
//! ```text
//! pbar_l^m = sqrt((4l^2 - 1)/(l^2 - m^2))
//!            * (x pbar_{l-1}^m - sqrt(((l-1)^2 - m^2)/(4(l-1)^2 - 1)) pbar_{l-2}^m)
//! ```
//!
//! seeded from the closed form of `pbar_m^m`. The unit normalization
//! (`integral |Y_lm|^2 dOmega = 1`) is folded into the seed and the
//! recurrence coefficients, which keeps every intermediate bounded by
//! `O(sqrt(l))` and overflow-free far beyond desk scale.

use num_complex::Complex;

use crate::basis::{BasisSpec, ModeIndex};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Normalized associated Legendre values `pbar_l^m` for `l = m..=l_max` at
/// fixed non-negative `m`. Entry `k` holds `pbar_{m+k}^m(x)`.
pub(crate) fn normalized_legendre_column<T: Real>(
    l_max: u32,
    m: u32,
    cos_theta: T,
    sin_theta: T,
) -> Vec<T> {
    debug_assert!(m <= l_max);
    let x = cos_theta;
    let four_pi = T::of(4.0) * T::PI();

    // Seed: pbar_m^m = (-1)^m sqrt((2m+1)!! / (4 pi (2m)!!)) sin^m(theta),
    // accumulated one factor of sqrt((2k+1)/(2k)) * sin(theta) per step so
    // large m neither overflows nor underflows prematurely.
    let mut p_prev2 = four_pi.sqrt().recip();
    for k in 1..=m {
        let ratio = T::of_usize(2 * k as usize + 1) / T::of_usize(2 * k as usize);
        p_prev2 = -p_prev2 * ratio.sqrt() * sin_theta;
    }

    let mut out = Vec::with_capacity((l_max - m) as usize + 1);
    out.push(p_prev2);
    if l_max == m {
        return out;
    }

    // pbar_{m+1}^m = sqrt(2m+3) x pbar_m^m
    let mut p_prev = T::of_usize(2 * m as usize + 3).sqrt() * x * p_prev2;
    out.push(p_prev);

    for l in (m + 2)..=l_max {
        let l_sq = T::of_usize((l * l) as usize);
        let m_sq = T::of_usize((m * m) as usize);
        let lm1_sq = T::of_usize(((l - 1) * (l - 1)) as usize);
        let a = ((T::of(4.0) * l_sq - T::one()) / (l_sq - m_sq)).sqrt();
        let b = ((lm1_sq - m_sq) / (T::of(4.0) * lm1_sq - T::one())).sqrt();
        let p = a * (x * p_prev - b * p_prev2);
        out.push(p);
        p_prev2 = p_prev;
        p_prev = p;
    }
    out
}

/// Evaluates `Y_lm(theta, phi)` with the Condon-Shortley phase.
pub fn eval_harmonic<T: Real>(mode: ModeIndex, theta: T, phi: T) -> Result<Complex<T>> {
    if mode.m.unsigned_abs() > mode.l {
        return Err(Error::InvalidMode { l: mode.l, m: mode.m });
    }
    let m_abs = mode.m.unsigned_abs();
    let column = normalized_legendre_column(mode.l, m_abs, theta.cos(), theta.sin());
    let mut pbar = column[(mode.l - m_abs) as usize];
    if mode.m < 0 && m_abs % 2 == 1 {
        pbar = -pbar;
    }
    let phase = Complex::from_polar(T::one(), T::of_i64(mode.m as i64) * phi);
    Ok(phase.scale(pbar))
}

/// Evaluates every mode of `basis` at one point, in canonical mode order.
///
/// One Legendre column per order is computed and shared across degrees;
/// this is what grid construction calls per node.
pub fn eval_all_modes<T: Real>(basis: BasisSpec, theta: T, phi: T) -> Vec<Complex<T>> {
    let l_max = basis.l_max();
    let cos_theta = theta.cos();
    let sin_theta = theta.sin();

    // columns[m][l - m] = pbar_l^m
    let columns: Vec<Vec<T>> = (0..=l_max)
        .map(|m| normalized_legendre_column(l_max, m, cos_theta, sin_theta))
        .collect();
    let phases: Vec<Complex<T>> = (0..=l_max as i64)
        .map(|m| Complex::from_polar(T::one(), T::of_i64(m) * phi))
        .collect();

    let mut out = Vec::with_capacity(basis.len());
    for mode in basis.modes() {
        let m_abs = mode.m.unsigned_abs();
        let mut pbar = columns[m_abs as usize][(mode.l - m_abs) as usize];
        if mode.m < 0 && m_abs % 2 == 1 {
            pbar = -pbar;
        }
        let phase = phases[m_abs as usize];
        let phase = if mode.m < 0 { phase.conj() } else { phase };
        out.push(phase.scale(pbar));
    }
    out
}
