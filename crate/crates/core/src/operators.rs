//! Builders for every operator the crate deals in: angular momentum
//! components, spectral functions of `L^2`, the direction operator `N`,
//! the degree-shift operators `R` and `Q`, their fixed-`l` half-finished
//! precursors, the analytic ladder tables, and the Kowalski-Rembielinski
//! coherent-state operator `Z`. Everything uses `hbar = 1`.
//!
//! The full shift operators are
//!
//! ```text
//! R = i (N x L) + N (sqrt(4 L^2 + 1) + 1) / 2
//! Q = i (N x L) - N (sqrt(4 L^2 + 1) - 1) / 2
//! ```
//!
//! where the spectral factor acts first on the ket (it stands to the
//! right of `N`). On the `l` subspace the factors reduce to `l + 1` and
//! `l` respectively, which is exactly what the half-finished builders
//! hard-code.

use num_complex::Complex;

use crate::basis::{BasisSpec, ModeIndex};
use crate::error::{Error, Result};
use crate::grid::QuadratureGrid;
use crate::scalar::Real;
use crate::sparse::{Band, SparseOperator, ENTRY_DROP_TOLERANCE};

/// Angular momentum operators diagonal in `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularKind {
    Lz,
    Lplus,
    Lminus,
    Lsquared,
}

/// Spherical component of a vector operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorComponent {
    Z,
    Plus,
    Minus,
}

impl VectorComponent {
    pub const ALL: [VectorComponent; 3] = [
        VectorComponent::Z,
        VectorComponent::Plus,
        VectorComponent::Minus,
    ];

    /// The `m` shift this component produces.
    pub fn m_shift(self) -> i32 {
        match self {
            VectorComponent::Z => 0,
            VectorComponent::Plus => 1,
            VectorComponent::Minus => -1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            VectorComponent::Z => "z",
            VectorComponent::Plus => "plus",
            VectorComponent::Minus => "minus",
        }
    }
}

/// Raising (`R`) or lowering (`Q`) degree-shift operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftKind {
    /// `R`: maps the `l` subspace to `l + 1`.
    Raising,
    /// `Q`: maps the `l` subspace to `l - 1`.
    Lowering,
}

impl ShiftKind {
    pub fn l_shift(self) -> i32 {
        match self {
            ShiftKind::Raising => 1,
            ShiftKind::Lowering => -1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ShiftKind::Raising => "R",
            ShiftKind::Lowering => "Q",
        }
    }
}

/// Operator-ordering convention for spectral coefficient factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralOrdering {
    /// Spectral factor to the right: it acts on the ket first.
    SpectralFirst,
    /// Spectral factor to the left: it acts after the vector factor.
    SpectralLast,
}

impl SpectralOrdering {
    pub fn label(self) -> &'static str {
        match self {
            SpectralOrdering::SpectralFirst => "spectral-first",
            SpectralOrdering::SpectralLast => "spectral-last",
        }
    }
}

/// Sign label of a ladder component, selecting the branch of the `a`
/// coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderSign {
    Plus,
    Minus,
}

/// The ladder coefficient tables
///
/// ```text
/// |a(l, m)| = sqrt((l + m)(l + m - 1))    b(l, m) = sqrt((l + m)(l - m))
/// ```
///
/// clamped to zero whenever the radicand is negative. The sign of `a`
/// depends on which ladder component consumes it: under the resolved
/// convention the `+` components take `a = -sqrt(...)` and the `-`
/// components take `a = +sqrt(...)`, which is the branch assignment that
/// reproduces the quadrature-constructed operators under the
/// Condon-Shortley phase. [`LadderCoefficients::flipped`] swaps the
/// branches; the verification report uses it to distinguish a pure sign
/// convention mismatch from a genuine disagreement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LadderCoefficients {
    flip: bool,
}

impl LadderCoefficients {
    /// The resolved sign convention.
    pub fn resolved() -> Self {
        Self { flip: false }
    }

    /// Opposite branch assignment, for sign-mismatch diagnostics.
    pub fn flipped() -> Self {
        Self { flip: true }
    }

    pub fn a<T: Real>(&self, l: i64, m: i64, sign: LadderSign) -> T {
        let radicand = (l + m) * (l + m - 1);
        if radicand <= 0 {
            return T::zero();
        }
        let magnitude = T::of_i64(radicand).sqrt();
        let negate = match sign {
            LadderSign::Plus => !self.flip,
            LadderSign::Minus => self.flip,
        };
        if negate {
            -magnitude
        } else {
            magnitude
        }
    }

    pub fn b<T: Real>(&self, l: i64, m: i64) -> T {
        let radicand = (l + m) * (l - m);
        if radicand <= 0 {
            return T::zero();
        }
        T::of_i64(radicand).sqrt()
    }
}

fn re<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// Standard angular momentum matrices: `Lz |lm> = m |lm>`,
/// `L± |lm> = sqrt(l(l+1) - m(m±1)) |l, m±1>`, `L^2 |lm> = l(l+1) |lm>`.
pub fn build_angular<T: Real>(basis: BasisSpec, kind: AngularKind) -> SparseOperator<T> {
    let mut op = SparseOperator::zero(basis);
    for col in basis.modes() {
        let c = basis.index_of(col).expect("enumerated mode is in basis");
        let l = col.l as i64;
        let m = col.m as i64;
        match kind {
            AngularKind::Lz => op.add_at(c, c, re(T::of_i64(m))),
            AngularKind::Lsquared => op.add_at(c, c, re(T::of_i64(l * (l + 1)))),
            AngularKind::Lplus => {
                if col.m < col.l as i32 {
                    let coeff = T::of_i64(l * (l + 1) - m * (m + 1)).sqrt();
                    let row = basis
                        .index_of(ModeIndex { l: col.l, m: col.m + 1 })
                        .expect("raised order stays in basis");
                    op.add_at(c, row, re(coeff));
                }
            }
            AngularKind::Lminus => {
                if col.m > -(col.l as i32) {
                    let coeff = T::of_i64(l * (l + 1) - m * (m - 1)).sqrt();
                    let row = basis
                        .index_of(ModeIndex { l: col.l, m: col.m - 1 })
                        .expect("lowered order stays in basis");
                    op.add_at(c, row, re(coeff));
                }
            }
        }
    }
    let m_shift = match kind {
        AngularKind::Lz | AngularKind::Lsquared => 0,
        AngularKind::Lplus => 1,
        AngularKind::Lminus => -1,
    };
    op.with_band(Band::new([0], [m_shift]))
}

/// Diagonal operator `f(L^2)`: entry `f(l(l+1))` at every mode `(l, m)`.
pub fn spectral_fn<T: Real>(basis: BasisSpec, f: impl Fn(T) -> T) -> Result<SparseOperator<T>> {
    let mut op = SparseOperator::zero(basis);
    for l in 0..=basis.l_max() {
        let arg = T::of_i64(l as i64 * (l as i64 + 1));
        let value = f(arg);
        if !value.is_finite() {
            return Err(Error::NonFiniteSpectral {
                l,
                arg: arg.to_f64().unwrap_or(f64::NAN),
            });
        }
        for m in -(l as i32)..=l as i32 {
            let idx = basis
                .index_of(ModeIndex { l, m })
                .expect("enumerated mode is in basis");
            op.add_at(idx, idx, re(value));
        }
    }
    Ok(op.with_band(Band::diagonal()))
}

/// Multiplication operator by a direction component, by quadrature:
/// `<l'm'| n_c |lm> = integral conj(Y_l'm') n_c Y_lm dOmega` with
/// `n_z = cos(theta)`, `n_± = sin(theta) e^{±i phi}`.
///
/// Parity connects only adjacent degrees; entries that would land at
/// `l_max + 1` are silently absent (truncation).
pub fn build_direction<T: Real>(
    basis: BasisSpec,
    grid: &QuadratureGrid<T>,
    component: VectorComponent,
) -> Result<SparseOperator<T>> {
    grid.check_basis(&basis)?;
    let mut op = SparseOperator::zero(basis);
    for col in basis.modes() {
        let samples = grid.harmonic_samples(col)?;
        let modulated = samples.modulated(grid, |theta, phi| match component {
            VectorComponent::Z => re(theta.cos()),
            VectorComponent::Plus => Complex::from_polar(theta.sin(), phi),
            VectorComponent::Minus => Complex::from_polar(theta.sin(), -phi),
        });
        let coeffs = grid.analyze(&modulated, &basis)?;
        let c = basis.index_of(col)?;
        for (r, amp) in coeffs.amplitudes().iter().enumerate() {
            op.add_at(c, r, *amp);
        }
    }
    let op = op.pruned(T::of(ENTRY_DROP_TOLERANCE));
    Ok(op.with_band(Band::new([-1, 1], [component.m_shift()])))
}

/// One nonzero entry per column, straight from the ladder tables:
///
/// ```text
/// R_± |lm> = sqrt((2l+1)/(2l+3)) a(l+2, ±m) |l+1, m±1>
/// Q_± |lm> = sqrt((2l+1)/(2l-1)) a(l, ∓m)   |l-1, m±1>
/// R_z |lm> = sqrt((2l+1)/(2l+3)) b(l+1, m)  |l+1, m>
/// Q_z |lm> = -sqrt((2l+1)/(2l-1)) b(l, m)   |l-1, m>
/// ```
///
/// Targets outside the truncated basis are dropped; targets with
/// `|m| > l` only ever come with a provably zero coefficient.
pub fn build_analytic_shift<T: Real>(
    basis: BasisSpec,
    which: ShiftKind,
    component: VectorComponent,
    coeffs: &LadderCoefficients,
) -> SparseOperator<T> {
    let mut op = SparseOperator::zero(basis);
    for col in basis.modes() {
        let l = col.l as i64;
        let m = col.m as i64;
        let (target_l, ratio, value): (i64, T, T) = match which {
            ShiftKind::Raising => {
                let ratio = (T::of_i64(2 * l + 1) / T::of_i64(2 * l + 3)).sqrt();
                let value = match component {
                    VectorComponent::Z => coeffs.b(l + 1, m),
                    VectorComponent::Plus => coeffs.a(l + 2, m, LadderSign::Plus),
                    VectorComponent::Minus => coeffs.a(l + 2, -m, LadderSign::Minus),
                };
                (l + 1, ratio, value)
            }
            ShiftKind::Lowering => {
                if l == 0 {
                    continue; // no l = -1 state exists
                }
                let ratio = (T::of_i64(2 * l + 1) / T::of_i64(2 * l - 1)).sqrt();
                let value = match component {
                    VectorComponent::Z => -coeffs.b(l, m),
                    VectorComponent::Plus => coeffs.a(l, -m, LadderSign::Plus),
                    VectorComponent::Minus => coeffs.a(l, m, LadderSign::Minus),
                };
                (l - 1, ratio, value)
            }
        };
        let target_m = m + component.m_shift() as i64;
        if target_l > basis.l_max() as i64 || target_m.abs() > target_l {
            continue; // coefficient is zero whenever |m| > l would be needed
        }
        let row = ModeIndex {
            l: target_l as u32,
            m: target_m as i32,
        };
        let coeff = ratio * value;
        if coeff != T::zero() {
            let c = basis.index_of(col).expect("enumerated mode is in basis");
            let r = basis.index_of(row).expect("target mode checked above");
            op.add_at(c, r, re(coeff));
        }
    }
    op.with_band(Band::new([which.l_shift()], [component.m_shift()]))
}

/// Caches the angular and direction operators for one basis/grid pair and
/// assembles every derived operator from them. Builders that need several
/// operators should share one context; the free `build_*` functions
/// construct a throwaway context per call.
#[derive(Debug, Clone)]
pub struct OperatorContext<T: Real> {
    basis: BasisSpec,
    lz: SparseOperator<T>,
    lplus: SparseOperator<T>,
    lminus: SparseOperator<T>,
    lsquared: SparseOperator<T>,
    nz: SparseOperator<T>,
    nplus: SparseOperator<T>,
    nminus: SparseOperator<T>,
}

impl<T: Real> OperatorContext<T> {
    pub fn new(basis: BasisSpec, grid: &QuadratureGrid<T>) -> Result<Self> {
        grid.check_basis(&basis)?;
        Ok(Self {
            basis,
            lz: build_angular(basis, AngularKind::Lz),
            lplus: build_angular(basis, AngularKind::Lplus),
            lminus: build_angular(basis, AngularKind::Lminus),
            lsquared: build_angular(basis, AngularKind::Lsquared),
            nz: build_direction(basis, grid, VectorComponent::Z)?,
            nplus: build_direction(basis, grid, VectorComponent::Plus)?,
            nminus: build_direction(basis, grid, VectorComponent::Minus)?,
        })
    }

    pub fn basis(&self) -> BasisSpec {
        self.basis
    }

    pub fn angular(&self, kind: AngularKind) -> &SparseOperator<T> {
        match kind {
            AngularKind::Lz => &self.lz,
            AngularKind::Lplus => &self.lplus,
            AngularKind::Lminus => &self.lminus,
            AngularKind::Lsquared => &self.lsquared,
        }
    }

    pub fn direction(&self, component: VectorComponent) -> &SparseOperator<T> {
        match component {
            VectorComponent::Z => &self.nz,
            VectorComponent::Plus => &self.nplus,
            VectorComponent::Minus => &self.nminus,
        }
    }

    /// `i (N x L)` in one spherical component, via the ladder identities
    /// `i(NxL)_z = (N_- L_+ - N_+ L_-)/2`, `i(NxL)_+ = N_+ L_z - N_z L_+`,
    /// `i(NxL)_- = N_z L_- - N_- L_z`.
    pub fn i_n_cross_l(&self, component: VectorComponent) -> Result<SparseOperator<T>> {
        let half = re(T::of(0.5));
        match component {
            VectorComponent::Z => Ok(self
                .nminus
                .compose(&self.lplus)?
                .minus(&self.nplus.compose(&self.lminus)?)?
                .scaled(half)),
            VectorComponent::Plus => self
                .nplus
                .compose(&self.lz)?
                .minus(&self.nz.compose(&self.lplus)?),
            VectorComponent::Minus => self
                .nz
                .compose(&self.lminus)?
                .minus(&self.nminus.compose(&self.lz)?),
        }
    }

    /// `(N x L)` in one spherical component.
    pub fn n_cross_l(&self, component: VectorComponent) -> Result<SparseOperator<T>> {
        Ok(self
            .i_n_cross_l(component)?
            .scaled(Complex::new(T::zero(), -T::one())))
    }

    /// Full shift operator, one spherical component. Columns at
    /// `l = l_max` of the raising operator are truncation-lossy; see
    /// [`SparseOperator::truncation_lossy_columns`].
    pub fn shift(&self, which: ShiftKind, component: VectorComponent) -> Result<SparseOperator<T>> {
        let spectral = match which {
            ShiftKind::Raising => spectral_fn(self.basis, |x| {
                ((T::of(4.0) * x + T::one()).sqrt() + T::one()) * T::of(0.5)
            })?,
            ShiftKind::Lowering => spectral_fn(self.basis, |x| {
                -((T::of(4.0) * x + T::one()).sqrt() - T::one()) * T::of(0.5)
            })?,
        };
        self.assemble_shift(component, &spectral, which.l_shift())
    }

    /// Half-finished shift operator: the spectral factor is replaced by
    /// the constant `l_param + 1` (raising) or `l_param` (lowering), so
    /// the result is only correct on the `l = l_param` column subspace.
    pub fn half_finished(
        &self,
        which: ShiftKind,
        l_param: u32,
        component: VectorComponent,
    ) -> Result<SparseOperator<T>> {
        if l_param > self.basis.l_max() {
            return Err(Error::ShiftParamOutOfRange {
                l_param,
                l_max: self.basis.l_max(),
            });
        }
        let constant = match which {
            ShiftKind::Raising => T::of_i64(l_param as i64 + 1),
            ShiftKind::Lowering => -T::of_i64(l_param as i64),
        };
        let spectral = SparseOperator::identity(self.basis).scaled(re(constant));
        self.assemble_shift(component, &spectral, which.l_shift())
    }

    fn assemble_shift(
        &self,
        component: VectorComponent,
        spectral: &SparseOperator<T>,
        l_shift: i32,
    ) -> Result<SparseOperator<T>> {
        let cross = self.i_n_cross_l(component)?;
        let direction_term = self.direction(component).compose(spectral)?;
        let op = cross.plus(&direction_term)?.pruned(T::of(ENTRY_DROP_TOLERANCE));
        Ok(op.with_band(Band::new([l_shift], [component.m_shift()])))
    }

    /// Kowalski-Rembielinski coherent-state lowering operator
    ///
    /// ```text
    /// Z = i sqrt(e) g1(s) (N x L) + sqrt(e) g2(s) N,    s = sqrt(4 L^2 + 1)
    /// g1(s) = 2 sinh(s/2) / s        g2(s) = cosh(s/2) - sinh(s/2) / s
    /// ```
    ///
    /// `ordering` selects whether the spectral factors act before or
    /// after the vector factors; the defining expression does not fix
    /// the convention, so both are buildable.
    pub fn kr_z(
        &self,
        component: VectorComponent,
        ordering: SpectralOrdering,
    ) -> Result<SparseOperator<T>> {
        let half = T::of(0.5);
        let g1 = spectral_fn(self.basis, |x| {
            let s = (T::of(4.0) * x + T::one()).sqrt();
            T::of(2.0) * (s * half).sinh() / s
        })?;
        let g2 = spectral_fn(self.basis, |x| {
            let s = (T::of(4.0) * x + T::one()).sqrt();
            (s * half).cosh() - (s * half).sinh() / s
        })?;
        let sqrt_e = half.exp();
        let cross = self.n_cross_l(component)?;
        let direction = self.direction(component);
        let (term1, term2) = match ordering {
            SpectralOrdering::SpectralFirst => {
                (cross.compose(&g1)?, direction.compose(&g2)?)
            }
            SpectralOrdering::SpectralLast => {
                (g1.compose(&cross)?, g2.compose(direction)?)
            }
        };
        let op = term1
            .scaled(Complex::new(T::zero(), sqrt_e))
            .plus(&term2.scaled(re(sqrt_e)))?
            .pruned(T::of(ENTRY_DROP_TOLERANCE));
        Ok(op.with_band(Band::new([-1, 1], [component.m_shift()])))
    }
}

/// Builds one component of the full shift operator from scratch.
pub fn build_shift<T: Real>(
    basis: BasisSpec,
    grid: &QuadratureGrid<T>,
    which: ShiftKind,
    component: VectorComponent,
) -> Result<SparseOperator<T>> {
    OperatorContext::new(basis, grid)?.shift(which, component)
}

/// Builds one component of the half-finished shift operator from scratch.
pub fn build_half_finished<T: Real>(
    basis: BasisSpec,
    grid: &QuadratureGrid<T>,
    which: ShiftKind,
    l_param: u32,
    component: VectorComponent,
) -> Result<SparseOperator<T>> {
    OperatorContext::new(basis, grid)?.half_finished(which, l_param, component)
}

/// Builds one component of the Kowalski-Rembielinski operator from
/// scratch.
pub fn build_kr_z<T: Real>(
    basis: BasisSpec,
    grid: &QuadratureGrid<T>,
    component: VectorComponent,
    ordering: SpectralOrdering,
) -> Result<SparseOperator<T>> {
    OperatorContext::new(basis, grid)?.kr_z(component, ordering)
}

/// Cartesian `x`/`y` parts from ladder components:
/// `V_x = (V_+ + V_-)/2`, `V_y = (V_+ - V_-)/(2i)`.
pub fn cartesian_parts<T: Real>(
    plus: &SparseOperator<T>,
    minus: &SparseOperator<T>,
) -> Result<(SparseOperator<T>, SparseOperator<T>)> {
    let half = re(T::of(0.5));
    let x = plus.plus(minus)?.scaled(half);
    let y = plus
        .minus(minus)?
        .scaled(Complex::new(T::zero(), -T::of(0.5)));
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::CoeffVector;
    use crate::sparse::commutator;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    type Op = SparseOperator<f64>;

    fn mode(l: u32, m: i32) -> ModeIndex {
        ModeIndex::new(l, m).unwrap()
    }

    fn entry(op: &Op, rl: u32, rm: i32, cl: u32, cm: i32) -> Complex64 {
        op.entry(mode(rl, rm), mode(cl, cm)).unwrap()
    }

    fn setup(l_max: u32) -> (BasisSpec, QuadratureGrid<f64>) {
        let basis = BasisSpec::new(l_max);
        let grid = QuadratureGrid::build(basis);
        (basis, grid)
    }

    #[test]
    fn angular_matrices_match_the_standard_ladder_formulas() {
        let basis = BasisSpec::new(3);
        let lz = build_angular::<f64>(basis, AngularKind::Lz);
        assert_eq!(entry(&lz, 1, 1, 1, 1), Complex64::new(1.0, 0.0));
        let lplus = build_angular::<f64>(basis, AngularKind::Lplus);
        assert_abs_diff_eq!(entry(&lplus, 1, 1, 1, 0).re, 2.0f64.sqrt(), epsilon = 1e-15);
        let lsq = build_angular::<f64>(basis, AngularKind::Lsquared);
        assert_eq!(entry(&lsq, 3, -2, 3, -2), Complex64::new(12.0, 0.0));
    }

    #[test]
    fn ladder_action_cross_checked_against_the_differential_operator() {
        // L_+ Y_10 = -sqrt(3/4pi) sin(theta) e^{i phi} pointwise; its
        // overlap with Y_11 is the matrix element.
        let (basis, grid) = setup(2);
        let image = grid.sample_fn(|theta, phi| {
            Complex64::from_polar(-(3.0 / (4.0 * PI)).sqrt() * theta.sin(), phi)
        });
        let y11 = grid.harmonic_samples(mode(1, 1)).unwrap();
        let overlap = grid.inner_product(&y11, &image).unwrap();
        assert_abs_diff_eq!(overlap.re, 2.0f64.sqrt(), epsilon = 1e-13);
        assert_abs_diff_eq!(overlap.im, 0.0, epsilon = 1e-13);
        let lplus = build_angular::<f64>(basis, AngularKind::Lplus);
        assert_abs_diff_eq!(
            entry(&lplus, 1, 1, 1, 0).re,
            overlap.re,
            epsilon = 1e-13
        );
    }

    #[test]
    fn spectral_function_evaluates_on_each_degree_subspace() {
        let basis = BasisSpec::new(5);
        let sqrt4x1 = spectral_fn::<f64>(basis, |x| (4.0 * x + 1.0).sqrt()).unwrap();
        assert_eq!(entry(&sqrt4x1, 0, 0, 0, 0).re, 1.0);
        assert_eq!(entry(&sqrt4x1, 3, 2, 3, 2).re, 7.0);
        let recover_l = spectral_fn::<f64>(basis, |x| ((4.0 * x + 1.0).sqrt() - 1.0) / 2.0).unwrap();
        assert_eq!(entry(&recover_l, 5, -4, 5, -4).re, 5.0);
    }

    #[test]
    fn spectral_function_rejects_non_finite_values_naming_the_degree() {
        let basis = BasisSpec::new(2);
        let err = spectral_fn::<f64>(basis, |x| x.recip()).unwrap_err();
        assert!(matches!(err, Error::NonFiniteSpectral { l: 0, .. }));
    }

    #[test]
    fn direction_operator_quadrature_spot_values() {
        let (basis, grid) = setup(2);
        let nz = build_direction(basis, &grid, VectorComponent::Z).unwrap();
        assert_abs_diff_eq!(entry(&nz, 1, 0, 0, 0).re, 1.0 / 3.0f64.sqrt(), epsilon = 1e-14);
        let nplus = build_direction(basis, &grid, VectorComponent::Plus).unwrap();
        assert_abs_diff_eq!(
            entry(&nplus, 1, 1, 0, 0).re,
            -(2.0f64 / 3.0).sqrt(),
            epsilon = 1e-14
        );
        // m-selection: Nz preserves m, so row (2,0) of column (1,1) is
        // exactly absent while row (2,1) carries the weight.
        assert_eq!(entry(&nz, 2, 0, 1, 1), Complex64::new(0.0, 0.0));
        assert!(entry(&nz, 2, 1, 1, 1).norm() > 0.5);
    }

    #[test]
    fn constructed_shift_spot_values() {
        let (basis, grid) = setup(3);
        let ctx = OperatorContext::new(basis, &grid).unwrap();

        let rz = ctx.shift(ShiftKind::Raising, VectorComponent::Z).unwrap();
        assert_abs_diff_eq!(entry(&rz, 1, 0, 0, 0).re, 1.0 / 3.0f64.sqrt(), epsilon = 1e-13);

        let qz = ctx.shift(ShiftKind::Lowering, VectorComponent::Z).unwrap();
        assert_abs_diff_eq!(entry(&qz, 0, 0, 1, 0).re, -(3.0f64.sqrt()), epsilon = 1e-13);
        // Q_z annihilates |0,0>: no l = -1 state exists.
        assert_eq!(qz.column(mode(0, 0)).unwrap().max_abs(), 0.0);

        let rplus = ctx.shift(ShiftKind::Raising, VectorComponent::Plus).unwrap();
        assert_abs_diff_eq!(
            entry(&rplus, 1, 1, 0, 0).re,
            -(2.0f64 / 3.0).sqrt(),
            epsilon = 1e-13
        );
    }

    #[test]
    fn half_finished_operators_agree_only_on_their_design_subspace() {
        let (basis, grid) = setup(4);
        let ctx = OperatorContext::new(basis, &grid).unwrap();

        let r0 = ctx.half_finished(ShiftKind::Raising, 0, VectorComponent::Z).unwrap();
        let rz = ctx.shift(ShiftKind::Raising, VectorComponent::Z).unwrap();
        let diff = r0
            .column(mode(0, 0))
            .unwrap()
            .sub(&rz.column(mode(0, 0)).unwrap())
            .unwrap();
        assert!(diff.max_abs() < 1e-13);

        let q2 = ctx.half_finished(ShiftKind::Lowering, 2, VectorComponent::Z).unwrap();
        let qz = ctx.shift(ShiftKind::Lowering, VectorComponent::Z).unwrap();
        let diff = q2
            .column(mode(2, 1))
            .unwrap()
            .sub(&qz.column(mode(2, 1)).unwrap())
            .unwrap();
        assert!(diff.max_abs() < 1e-12);

        // Off its design subspace the hard-coded constant is wrong:
        // R(1)_z |0,0> = 2 Nz |0,0> = (2/sqrt(3)) |1,0>.
        let r1 = ctx.half_finished(ShiftKind::Raising, 1, VectorComponent::Z).unwrap();
        assert_abs_diff_eq!(
            entry(&r1, 1, 0, 0, 0).re,
            2.0 / 3.0f64.sqrt(),
            epsilon = 1e-13
        );
        assert!((entry(&r1, 1, 0, 0, 0) - entry(&rz, 1, 0, 0, 0)).norm() > 0.5);

        assert!(matches!(
            ctx.half_finished(ShiftKind::Raising, 5, VectorComponent::Z),
            Err(Error::ShiftParamOutOfRange { l_param: 5, l_max: 4 })
        ));
    }

    #[test]
    fn analytic_tables_spot_values() {
        let basis = BasisSpec::new(3);
        let coeffs = LadderCoefficients::resolved();
        let rz = build_analytic_shift::<f64>(basis, ShiftKind::Raising, VectorComponent::Z, &coeffs);
        assert_abs_diff_eq!(entry(&rz, 2, 1, 1, 1).re, 3.0 / 5.0f64.sqrt(), epsilon = 1e-15);

        let qplus =
            build_analytic_shift::<f64>(basis, ShiftKind::Lowering, VectorComponent::Plus, &coeffs);
        assert_abs_diff_eq!(
            entry(&qplus, 1, 1, 2, 0).norm(),
            (10.0f64 / 3.0).sqrt(),
            epsilon = 1e-15
        );
        // a(1, 0) = 0 and the target |0,1> does not exist.
        assert_eq!(qplus.column(mode(1, 0)).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn ladder_coefficient_conventions() {
        let coeffs = LadderCoefficients::resolved();
        for l in 0..6i64 {
            for m in -l..=l {
                assert_eq!(coeffs.b::<f64>(l, l), 0.0);
                assert_eq!(coeffs.b::<f64>(l, -l), 0.0);
                let expected_b = (((l + m) * (l - m)).max(0) as f64).sqrt();
                assert_eq!(coeffs.b::<f64>(l, m), expected_b);
                let expected_a = (((l + m) * (l + m - 1)).max(0) as f64).sqrt();
                assert_eq!(coeffs.a::<f64>(l, m, LadderSign::Minus), expected_a);
                assert_eq!(coeffs.a::<f64>(l, m, LadderSign::Plus), -expected_a);
            }
            // a vanishes at m = -l and m = -l + 1
            assert_eq!(coeffs.a::<f64>(l, -l, LadderSign::Minus), 0.0);
            assert_eq!(coeffs.a::<f64>(l, -l + 1, LadderSign::Minus), 0.0);
        }
    }

    #[test]
    fn kr_operator_spot_values_for_both_orderings() {
        let (basis, grid) = setup(3);
        let zf = build_kr_z(basis, &grid, VectorComponent::Z, SpectralOrdering::SpectralFirst)
            .unwrap();
        // g2 at s = 1 is cosh(1/2) - sinh(1/2) = e^{-1/2}, cancelling
        // sqrt(e) exactly: the column reduces to Nz's 1/sqrt(3).
        assert_abs_diff_eq!(entry(&zf, 1, 0, 0, 0).re, 1.0 / 3.0f64.sqrt(), epsilon = 1e-13);

        let zl = build_kr_z(basis, &grid, VectorComponent::Z, SpectralOrdering::SpectralLast)
            .unwrap();
        let expected = 0.5f64.exp()
            * (1.5f64.cosh() - 1.5f64.sinh() / 3.0)
            / 3.0f64.sqrt();
        assert_abs_diff_eq!(entry(&zl, 1, 0, 0, 0).re, expected, epsilon = 1e-13);
        assert_abs_diff_eq!(expected, 1.5636, epsilon = 1e-4);

        // Support only on adjacent degrees, for every column.
        for op in [&zf, &zl] {
            for (row, col, v) in op.entries() {
                assert_eq!(
                    (row.l as i32 - col.l as i32).abs(),
                    1,
                    "entry ({row}, {col}) = {v} off the adjacent-degree band"
                );
            }
        }
    }

    #[test]
    fn commutator_and_adjoint_examples() {
        let (basis, grid) = setup(4);
        let lz = build_angular::<f64>(basis, AngularKind::Lz);
        let lplus = build_angular::<f64>(basis, AngularKind::Lplus);
        let lsq = build_angular::<f64>(basis, AngularKind::Lsquared);

        assert_eq!(commutator(&lz, &lz).unwrap().nnz(), 0);

        // [Lz, L+] = L+ entrywise, brute force over the whole matrix.
        let comm = commutator(&lz, &lplus).unwrap();
        let diff = comm.minus(&lplus).unwrap();
        assert_eq!(diff.max_abs(), 0.0);

        assert!(commutator(&lsq, &lz).unwrap().max_abs() < 1e-13);

        let lminus = build_angular::<f64>(basis, AngularKind::Lminus);
        assert_eq!(lplus.adjoint().minus(&lminus).unwrap().max_abs(), 0.0);

        let nz = build_direction(basis, &grid, VectorComponent::Z).unwrap();
        assert!(nz.adjoint().minus(&nz).unwrap().restrict_l(3).max_abs() < 1e-12);

        let ctx = OperatorContext::new(basis, &grid).unwrap();
        let rz = ctx.shift(ShiftKind::Raising, VectorComponent::Z).unwrap();
        assert_eq!(rz.adjoint().adjoint(), rz);
    }

    #[test]
    fn raising_columns_at_the_truncation_edge_are_lossy() {
        let (basis, grid) = setup(2);
        let ctx = OperatorContext::new(basis, &grid).unwrap();
        let rz = ctx.shift(ShiftKind::Raising, VectorComponent::Z).unwrap();
        let lossy = rz.truncation_lossy_columns();
        assert!(lossy.iter().all(|m| m.l == 2));
        assert_eq!(lossy.len(), 5);
        let qz = ctx.shift(ShiftKind::Lowering, VectorComponent::Z).unwrap();
        assert!(qz.truncation_lossy_columns().is_empty());
    }

    #[test]
    fn zero_vector_example_synthesizes_cleanly() {
        // R_plus |0,0> reduces to N_plus because L |0,0> = 0 and the
        // spectral factor is 1 there.
        let (basis, grid) = setup(2);
        let ctx = OperatorContext::new(basis, &grid).unwrap();
        let rplus = ctx.shift(ShiftKind::Raising, VectorComponent::Plus).unwrap();
        let applied = rplus
            .apply(&CoeffVector::unit(basis, mode(0, 0)).unwrap())
            .unwrap();
        let direct = ctx
            .direction(VectorComponent::Plus)
            .apply(&CoeffVector::unit(basis, mode(0, 0)).unwrap())
            .unwrap();
        assert!(applied.sub(&direct).unwrap().max_abs() < 1e-14);
    }
}
