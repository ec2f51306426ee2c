//! Truncated spherical-harmonic basis: mode bookkeeping and coefficient
//! vectors (kets).
//!
//! Modes are enumerated in the canonical order `(l ascending, m ascending
//! from -l to l)`; every module in the crate shares this order.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// An `(l, m)` pair addressing one spherical harmonic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    pub l: u32,
    pub m: i32,
}

impl ModeIndex {
    /// Checked constructor; rejects `|m| > l`.
    pub fn new(l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return Err(Error::InvalidMode { l, m });
        }
        Ok(Self { l, m })
    }
}

impl std::fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.l, self.m)
    }
}

/// Truncation parameter `l_max` and the mode enumeration it induces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisSpec {
    l_max: u32,
}

impl BasisSpec {
    pub fn new(l_max: u32) -> Self {
        Self { l_max }
    }

    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    /// Number of modes, `(l_max + 1)^2`.
    pub fn len(&self) -> usize {
        let n = self.l_max as usize + 1;
        n * n
    }

    pub fn is_empty(&self) -> bool {
        false // l_max >= 0 always admits the (0, 0) mode
    }

    /// Whether `mode` fits inside the truncation.
    pub fn contains(&self, mode: ModeIndex) -> bool {
        mode.l <= self.l_max && mode.m.unsigned_abs() <= mode.l
    }

    /// Flat position of `mode` in the canonical enumeration.
    ///
    /// All modes with degree below `l` come first (`l^2` of them), then the
    /// orders `-l..=l` in ascending order.
    pub fn index_of(&self, mode: ModeIndex) -> Result<usize> {
        if mode.m.unsigned_abs() > mode.l {
            return Err(Error::InvalidMode { l: mode.l, m: mode.m });
        }
        if mode.l > self.l_max {
            return Err(Error::ModeOutOfRange {
                l: mode.l,
                m: mode.m,
                l_max: self.l_max,
            });
        }
        let l = mode.l as usize;
        Ok(l * l + (mode.m + mode.l as i32) as usize)
    }

    /// Inverse of [`BasisSpec::index_of`].
    pub fn mode_at(&self, index: usize) -> ModeIndex {
        debug_assert!(index < self.len());
        let l = (index as f64).sqrt() as u32;
        // Guard against rounding at perfect squares.
        let l = if (l as usize + 1) * (l as usize + 1) <= index { l + 1 } else { l };
        let m = index as i64 - (l as i64) * (l as i64) - l as i64;
        ModeIndex { l, m: m as i32 }
    }

    /// Iterator over all modes in canonical order.
    pub fn modes(&self) -> impl Iterator<Item = ModeIndex> + '_ {
        (0..=self.l_max).flat_map(|l| (-(l as i32)..=l as i32).map(move |m| ModeIndex { l, m }))
    }

    /// Modes that share a given order `m` (ascending `l`).
    pub fn modes_with_m(&self, m: i32) -> impl Iterator<Item = ModeIndex> + '_ {
        (m.unsigned_abs()..=self.l_max).map(move |l| ModeIndex { l, m })
    }

    pub(crate) fn check_same(&self, other: &BasisSpec) -> Result<()> {
        if self != other {
            return Err(Error::BasisMismatch {
                left: self.l_max,
                right: other.l_max,
            });
        }
        Ok(())
    }
}

/// Complex amplitudes over all modes of a [`BasisSpec`]: a ket.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector<T: Real> {
    basis: BasisSpec,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> CoeffVector<T> {
    /// Wraps amplitudes in canonical mode order; the length must match the
    /// basis size.
    pub fn new(basis: BasisSpec, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.len() != basis.len() {
            return Err(Error::AmplitudeCount {
                expected: basis.len(),
                found: amplitudes.len(),
            });
        }
        Ok(Self { basis, amplitudes })
    }

    /// The zero ket.
    pub fn zero(basis: BasisSpec) -> Self {
        Self {
            basis,
            amplitudes: vec![Complex::new(T::zero(), T::zero()); basis.len()],
        }
    }

    /// Unit ket concentrated on a single mode.
    pub fn unit(basis: BasisSpec, mode: ModeIndex) -> Result<Self> {
        let mut ket = Self::zero(basis);
        let idx = basis.index_of(mode)?;
        ket.amplitudes[idx] = Complex::new(T::one(), T::zero());
        Ok(ket)
    }

    pub fn basis(&self) -> BasisSpec {
        self.basis
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amplitudes
    }

    pub fn amplitude(&self, mode: ModeIndex) -> Result<Complex<T>> {
        Ok(self.amplitudes[self.basis.index_of(mode)?])
    }

    /// Conjugate-linear in `self` (the left argument): `sum conj(a_i) b_i`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.basis.check_same(&other.basis)?;
        let mut acc = Complex::new(T::zero(), T::zero());
        for (a, b) in self.amplitudes.iter().zip(&other.amplitudes) {
            acc += a.conj() * b;
        }
        Ok(acc)
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// Largest amplitude magnitude; zero-ket detection uses this.
    pub fn max_abs(&self) -> T {
        self.amplitudes
            .iter()
            .map(|a| a.norm())
            .fold(T::zero(), T::max)
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        Self {
            basis: self.basis,
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    /// Returns the normalized ket, or `None` for a (numerical) zero ket.
    pub fn normalized(&self, zero_floor: T) -> Option<Self> {
        let n = self.norm();
        if n <= zero_floor {
            return None;
        }
        Some(self.scaled(Complex::new(n.recip(), T::zero())))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.basis.check_same(&other.basis)?;
        Ok(Self {
            basis: self.basis,
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Rotates the global phase so the amplitude at `mode` becomes real
    /// and non-negative. No-op when that amplitude is zero.
    pub fn with_phase_fixed_at(&self, mode: ModeIndex) -> Result<Self> {
        let a = self.amplitude(mode)?;
        let r = a.norm();
        if r <= T::zero() {
            return Ok(self.clone());
        }
        Ok(self.scaled(a.conj() / Complex::new(r, T::zero())))
    }

    /// Rotates the global phase so the largest-magnitude amplitude becomes
    /// real and positive. Ties pick the lowest mode index.
    pub fn with_canonical_phase(&self) -> Self {
        let mut best = 0usize;
        let mut best_mag = T::zero();
        for (i, a) in self.amplitudes.iter().enumerate() {
            let mag = a.norm();
            if mag > best_mag {
                best_mag = mag;
                best = i;
            }
        }
        if best_mag <= T::zero() {
            return self.clone();
        }
        let a = self.amplitudes[best];
        self.scaled(a.conj() / Complex::new(best_mag, T::zero()))
    }
}
