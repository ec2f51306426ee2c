//! Spherical quadrature grid: Gauss-Legendre in `cos(theta)` times a
//! uniform rule in `phi`, with precomputed harmonic samples.
//!
//! The sizes are fixed at `n_theta = l_max + 2`, `n_phi = 2 l_max + 3`:
//! the smallest rule that integrates every product of two basis harmonics
//! with one extra direction factor exactly (polynomial degree at most
//! `2 l_max + 1` in `cos(theta)`, Fourier order at most `2 l_max + 1` in
//! `phi`). Gauss nodes are interior, so the poles never appear on the
//! grid.

use num_complex::Complex;

use crate::basis::{BasisSpec, CoeffVector, ModeIndex};
use crate::error::{Error, Result};
use crate::gauss::gauss_legendre;
use crate::harmonics::eval_all_modes;
use crate::scalar::Real;

/// Complex samples over a grid, `n_theta x n_phi`, row-major in `theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSamples<T: Real> {
    n_theta: usize,
    n_phi: usize,
    values: Vec<Complex<T>>,
}

impl<T: Real> GridSamples<T> {
    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn at(&self, i_theta: usize, j_phi: usize) -> Complex<T> {
        self.values[i_theta * self.n_phi + j_phi]
    }

    /// Pointwise product with a function of the node angles.
    pub fn modulated(&self, grid: &QuadratureGrid<T>, f: impl Fn(T, T) -> Complex<T>) -> Self {
        let mut values = Vec::with_capacity(self.values.len());
        for (i, &theta) in grid.theta_nodes.iter().enumerate() {
            for (j, &phi) in grid.phi_nodes.iter().enumerate() {
                values.push(self.at(i, j) * f(theta, phi));
            }
        }
        Self {
            n_theta: self.n_theta,
            n_phi: self.n_phi,
            values,
        }
    }
}

/// Gauss-Legendre x uniform-phi nodes, weights, and harmonic samples for
/// one [`BasisSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid<T: Real> {
    basis: BasisSpec,
    theta_nodes: Vec<T>,
    theta_weights: Vec<T>,
    phi_nodes: Vec<T>,
    /// `harmonic_table[mode * nodes + i * n_phi + j] = Y_mode(theta_i, phi_j)`
    harmonic_table: Vec<Complex<T>>,
}

impl<T: Real> QuadratureGrid<T> {
    /// Builds the grid for `basis`; deterministic for a given `l_max`.
    pub fn build(basis: BasisSpec) -> Self {
        let l_max = basis.l_max() as usize;
        let n_theta = l_max + 2;
        let n_phi = 2 * l_max + 3;

        let (x_nodes, theta_weights) = gauss_legendre::<T>(n_theta);
        // Ascending theta corresponds to descending cos(theta).
        let theta_nodes: Vec<T> = x_nodes.iter().rev().map(|x| x.acos()).collect();
        let theta_weights: Vec<T> = theta_weights.into_iter().rev().collect();
        let two_pi = T::of(2.0) * T::PI();
        let phi_nodes: Vec<T> = (0..n_phi)
            .map(|j| two_pi * T::of_usize(j) / T::of_usize(n_phi))
            .collect();

        let nodes = n_theta * n_phi;
        let mut harmonic_table = vec![Complex::new(T::zero(), T::zero()); basis.len() * nodes];
        for (i, &theta) in theta_nodes.iter().enumerate() {
            for (j, &phi) in phi_nodes.iter().enumerate() {
                let all = eval_all_modes(basis, theta, phi);
                let at = i * n_phi + j;
                for (mode_idx, value) in all.into_iter().enumerate() {
                    harmonic_table[mode_idx * nodes + at] = value;
                }
            }
        }

        Self {
            basis,
            theta_nodes,
            theta_weights,
            phi_nodes,
            harmonic_table,
        }
    }

    pub fn basis(&self) -> BasisSpec {
        self.basis
    }

    pub fn n_theta(&self) -> usize {
        self.theta_nodes.len()
    }

    pub fn n_phi(&self) -> usize {
        self.phi_nodes.len()
    }

    pub fn theta_nodes(&self) -> &[T] {
        &self.theta_nodes
    }

    pub fn theta_weights(&self) -> &[T] {
        &self.theta_weights
    }

    pub fn phi_nodes(&self) -> &[T] {
        &self.phi_nodes
    }

    fn node_count(&self) -> usize {
        self.n_theta() * self.n_phi()
    }

    /// Precomputed samples of one basis harmonic.
    pub fn harmonic_samples(&self, mode: ModeIndex) -> Result<GridSamples<T>> {
        let idx = self.basis.index_of(mode)?;
        let nodes = self.node_count();
        Ok(GridSamples {
            n_theta: self.n_theta(),
            n_phi: self.n_phi(),
            values: self.harmonic_table[idx * nodes..(idx + 1) * nodes].to_vec(),
        })
    }

    /// Samples an arbitrary pointwise function on the grid.
    pub fn sample_fn(&self, f: impl Fn(T, T) -> Complex<T>) -> GridSamples<T> {
        let mut values = Vec::with_capacity(self.node_count());
        for &theta in &self.theta_nodes {
            for &phi in &self.phi_nodes {
                values.push(f(theta, phi));
            }
        }
        GridSamples {
            n_theta: self.n_theta(),
            n_phi: self.n_phi(),
            values,
        }
    }

    pub(crate) fn check_basis(&self, basis: &BasisSpec) -> Result<()> {
        if self.basis != *basis {
            return Err(Error::GridMismatch {
                grid: self.basis.l_max(),
                basis: basis.l_max(),
            });
        }
        Ok(())
    }

    fn check_samples(&self, samples: &GridSamples<T>) -> Result<()> {
        if samples.n_theta != self.n_theta() || samples.n_phi != self.n_phi() {
            return Err(Error::SampleDimensions {
                n_theta: self.n_theta(),
                n_phi: self.n_phi(),
                found_theta: samples.n_theta,
                found_phi: samples.n_phi,
            });
        }
        Ok(())
    }

    /// Quadrature of `conj(f) g` over the sphere, accumulated in fixed
    /// node order.
    pub fn inner_product(&self, f: &GridSamples<T>, g: &GridSamples<T>) -> Result<Complex<T>> {
        self.check_samples(f)?;
        self.check_samples(g)?;
        let phi_weight = T::of(2.0) * T::PI() / T::of_usize(self.n_phi());
        let mut acc = Complex::new(T::zero(), T::zero());
        for (i, &w) in self.theta_weights.iter().enumerate() {
            let mut row = Complex::new(T::zero(), T::zero());
            for j in 0..self.n_phi() {
                row += f.at(i, j).conj() * g.at(i, j);
            }
            acc += row.scale(w);
        }
        Ok(acc.scale(phi_weight))
    }

    /// Pointwise synthesis `psi(theta, phi) = sum_lm c_lm Y_lm(theta, phi)`.
    pub fn synthesize(&self, coeffs: &CoeffVector<T>) -> Result<GridSamples<T>> {
        self.check_basis(&coeffs.basis())?;
        let nodes = self.node_count();
        let mut values = vec![Complex::new(T::zero(), T::zero()); nodes];
        for (mode_idx, amp) in coeffs.amplitudes().iter().enumerate() {
            if amp.norm_sqr() == T::zero() {
                continue;
            }
            let table = &self.harmonic_table[mode_idx * nodes..(mode_idx + 1) * nodes];
            for (v, y) in values.iter_mut().zip(table) {
                *v += amp * y;
            }
        }
        Ok(GridSamples {
            n_theta: self.n_theta(),
            n_phi: self.n_phi(),
            values,
        })
    }

    /// Quadrature analysis `c_lm = integral conj(Y_lm) psi dOmega`.
    ///
    /// Left-inverse of [`QuadratureGrid::synthesize`] for band-limited
    /// content (degree at most `l_max`), up to rounding.
    pub fn analyze(&self, samples: &GridSamples<T>, basis: &BasisSpec) -> Result<CoeffVector<T>> {
        self.check_basis(basis)?;
        self.check_samples(samples)?;
        let nodes = self.node_count();
        let n_phi = self.n_phi();
        let phi_weight = T::of(2.0) * T::PI() / T::of_usize(n_phi);
        let mut amplitudes = Vec::with_capacity(basis.len());
        for mode_idx in 0..basis.len() {
            let table = &self.harmonic_table[mode_idx * nodes..(mode_idx + 1) * nodes];
            let mut acc = Complex::new(T::zero(), T::zero());
            for (i, &w) in self.theta_weights.iter().enumerate() {
                let mut row = Complex::new(T::zero(), T::zero());
                for j in 0..n_phi {
                    row += table[i * n_phi + j].conj() * samples.values[i * n_phi + j];
                }
                acc += row.scale(w);
            }
            amplitudes.push(acc.scale(phi_weight));
        }
        CoeffVector::new(*basis, amplitudes)
    }
}
