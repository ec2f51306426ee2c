//! Sparse complex operators over the truncated basis, with recorded band
//! structure and the algebra (composition, adjoint, commutator) the
//! identity checks are built from.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex;

use crate::basis::{BasisSpec, CoeffVector, ModeIndex};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Magnitude below which constructed-operator entries are treated as
/// quadrature rounding junk and dropped. Also the omission threshold for
/// operator dumps.
pub const ENTRY_DROP_TOLERANCE: f64 = 1e-14;

/// Which mode-to-mode transitions may carry a nonzero entry.
///
/// Freshly built operators declare shifts within `{-1, 0, +1}`;
/// compositions widen the sets (sums of shifts) and additions union them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    l_shifts: BTreeSet<i32>,
    m_shifts: BTreeSet<i32>,
}

impl Band {
    pub fn new(l_shifts: impl IntoIterator<Item = i32>, m_shifts: impl IntoIterator<Item = i32>) -> Self {
        Self {
            l_shifts: l_shifts.into_iter().collect(),
            m_shifts: m_shifts.into_iter().collect(),
        }
    }

    pub fn diagonal() -> Self {
        Self::new([0], [0])
    }

    pub fn l_shifts(&self) -> impl Iterator<Item = i32> + '_ {
        self.l_shifts.iter().copied()
    }

    pub fn m_shifts(&self) -> impl Iterator<Item = i32> + '_ {
        self.m_shifts.iter().copied()
    }

    pub fn allows(&self, l_shift: i32, m_shift: i32) -> bool {
        self.l_shifts.contains(&l_shift) && self.m_shifts.contains(&m_shift)
    }

    /// Largest upward `l` shift the band permits (0 if it only lowers).
    pub fn max_l_raise(&self) -> u32 {
        self.l_shifts.iter().copied().max().unwrap_or(0).max(0) as u32
    }

    fn union(&self, other: &Band) -> Band {
        Band {
            l_shifts: self.l_shifts.union(&other.l_shifts).copied().collect(),
            m_shifts: self.m_shifts.union(&other.m_shifts).copied().collect(),
        }
    }

    /// Band of a composition: shifts add.
    fn compose(&self, other: &Band) -> Band {
        let sums = |a: &BTreeSet<i32>, b: &BTreeSet<i32>| {
            a.iter()
                .flat_map(|x| b.iter().map(move |y| x + y))
                .collect::<BTreeSet<i32>>()
        };
        Band {
            l_shifts: sums(&self.l_shifts, &other.l_shifts),
            m_shifts: sums(&self.m_shifts, &other.m_shifts),
        }
    }

    fn negated(&self) -> Band {
        Band {
            l_shifts: self.l_shifts.iter().map(|s| -s).collect(),
            m_shifts: self.m_shifts.iter().map(|s| -s).collect(),
        }
    }
}

fn merge_bands(a: &Option<Band>, b: &Option<Band>, f: impl Fn(&Band, &Band) -> Band) -> Option<Band> {
    match (a, b) {
        (Some(a), Some(b)) => Some(f(a, b)),
        _ => None,
    }
}

/// Complex matrix over the truncated basis, stored as a map keyed by
/// `(column, row)` flat indices so that columns are contiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator<T: Real> {
    basis: BasisSpec,
    entries: BTreeMap<(usize, usize), Complex<T>>,
    band: Option<Band>,
}

impl<T: Real> SparseOperator<T> {
    pub fn zero(basis: BasisSpec) -> Self {
        Self {
            basis,
            entries: BTreeMap::new(),
            band: None,
        }
    }

    pub fn identity(basis: BasisSpec) -> Self {
        let one = Complex::new(T::one(), T::zero());
        Self {
            basis,
            entries: (0..basis.len()).map(|i| ((i, i), one)).collect(),
            band: Some(Band::diagonal()),
        }
    }

    /// Builds from `(row, col, value)` triplets; repeated positions
    /// accumulate.
    pub fn from_triplets(
        basis: BasisSpec,
        triplets: impl IntoIterator<Item = (ModeIndex, ModeIndex, Complex<T>)>,
    ) -> Result<Self> {
        let mut op = Self::zero(basis);
        for (row, col, value) in triplets {
            let r = basis.index_of(row)?;
            let c = basis.index_of(col)?;
            op.add_at(c, r, value);
        }
        Ok(op)
    }

    pub fn basis(&self) -> BasisSpec {
        self.basis
    }

    pub fn band(&self) -> Option<&Band> {
        self.band.as_ref()
    }

    pub fn with_band(mut self, band: Band) -> Self {
        self.band = Some(band);
        self
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub(crate) fn add_at(&mut self, col: usize, row: usize, value: Complex<T>) {
        if value.norm_sqr() == T::zero() {
            return;
        }
        let slot = self
            .entries
            .entry((col, row))
            .or_insert_with(|| Complex::new(T::zero(), T::zero()));
        *slot += value;
        if slot.norm_sqr() == T::zero() {
            self.entries.remove(&(col, row));
        }
    }

    /// Matrix element `<row| A |col>`; absent entries read as zero.
    pub fn entry(&self, row: ModeIndex, col: ModeIndex) -> Result<Complex<T>> {
        let r = self.basis.index_of(row)?;
        let c = self.basis.index_of(col)?;
        Ok(self
            .entries
            .get(&(c, r))
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero())))
    }

    /// Entries as `(row, col, value)`, ordered by column then row.
    pub fn entries(&self) -> impl Iterator<Item = (ModeIndex, ModeIndex, Complex<T>)> + '_ {
        self.entries
            .iter()
            .map(|(&(c, r), &v)| (self.basis.mode_at(r), self.basis.mode_at(c), v))
    }

    /// The image of the unit ket at `col`.
    pub fn column(&self, col: ModeIndex) -> Result<CoeffVector<T>> {
        let c = self.basis.index_of(col)?;
        let mut ket = CoeffVector::zero(self.basis);
        for (&(_, r), &v) in self.entries.range((c, 0)..(c + 1, 0)) {
            ket.amplitudes_mut()[r] = v;
        }
        Ok(ket)
    }

    pub fn apply(&self, ket: &CoeffVector<T>) -> Result<CoeffVector<T>> {
        self.basis.check_same(&ket.basis())?;
        let mut out = CoeffVector::zero(self.basis);
        for (&(c, r), &v) in &self.entries {
            let x = ket.amplitudes()[c];
            if x.norm_sqr() != T::zero() {
                out.amplitudes_mut()[r] += v * x;
            }
        }
        Ok(out)
    }

    /// Operator product `self * rhs`; `rhs` acts on the ket first.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        self.basis.check_same(&rhs.basis)?;
        let mut out = Self::zero(self.basis);
        for (&(c, k), &b) in &rhs.entries {
            for (&(_, r), &a) in self.entries.range((k, 0)..(k + 1, 0)) {
                out.add_at(c, r, a * b);
            }
        }
        out.band = merge_bands(&self.band, &rhs.band, Band::compose);
        Ok(out)
    }

    pub fn plus(&self, rhs: &Self) -> Result<Self> {
        self.basis.check_same(&rhs.basis)?;
        let mut out = self.clone();
        for (&(c, r), &v) in &rhs.entries {
            out.add_at(c, r, v);
        }
        out.band = merge_bands(&self.band, &rhs.band, Band::union);
        Ok(out)
    }

    pub fn minus(&self, rhs: &Self) -> Result<Self> {
        self.plus(&rhs.scaled(Complex::new(-T::one(), T::zero())))
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        if factor.norm_sqr() == T::zero() {
            let mut out = Self::zero(self.basis);
            out.band = self.band.clone();
            return out;
        }
        Self {
            basis: self.basis,
            entries: self
                .entries
                .iter()
                .map(|(&k, &v)| (k, v * factor))
                .collect(),
            band: self.band.clone(),
        }
    }

    /// Conjugate transpose. Declared shifts negate.
    pub fn adjoint(&self) -> Self {
        let mut entries = BTreeMap::new();
        for (&(c, r), &v) in &self.entries {
            entries.insert((r, c), v.conj());
        }
        Self {
            basis: self.basis,
            entries,
            band: self.band.as_ref().map(Band::negated),
        }
    }

    /// Keeps entries whose row and column degrees are both at most
    /// `l_limit`.
    pub fn restrict_l(&self, l_limit: u32) -> Self {
        self.filtered(|row, col| row.l <= l_limit && col.l <= l_limit)
    }

    /// Keeps columns with degree at most `l_limit`; rows untouched.
    pub fn restrict_cols_l(&self, l_limit: u32) -> Self {
        self.filtered(|_, col| col.l <= l_limit)
    }

    fn filtered(&self, keep: impl Fn(ModeIndex, ModeIndex) -> bool) -> Self {
        Self {
            basis: self.basis,
            entries: self
                .entries
                .iter()
                .filter(|(&(c, r), _)| keep(self.basis.mode_at(r), self.basis.mode_at(c)))
                .map(|(&k, &v)| (k, v))
                .collect(),
            band: self.band.clone(),
        }
    }

    /// Drops entries with magnitude at or below `threshold`.
    pub fn pruned(&self, threshold: T) -> Self {
        Self {
            basis: self.basis,
            entries: self
                .entries
                .iter()
                .filter(|(_, v)| v.norm() > threshold)
                .map(|(&k, &v)| (k, v))
                .collect(),
            band: self.band.clone(),
        }
    }

    /// Largest entry magnitude (zero for an empty operator).
    pub fn max_abs(&self) -> T {
        self.entries
            .values()
            .map(|v| v.norm())
            .fold(T::zero(), T::max)
    }

    pub fn fro_norm(&self) -> T {
        self.entries
            .values()
            .map(|v| v.norm_sqr())
            .sum::<T>()
            .sqrt()
    }

    /// Largest magnitude among entries that violate `band`.
    pub fn max_outside_band(&self, band: &Band) -> T {
        self.entries()
            .filter(|(row, col, _)| {
                !band.allows(row.l as i32 - col.l as i32, row.m - col.m)
            })
            .map(|(_, _, v)| v.norm())
            .fold(T::zero(), T::max)
    }
}

/// `ab - ba`.
pub fn commutator<T: Real>(a: &SparseOperator<T>, b: &SparseOperator<T>) -> Result<SparseOperator<T>> {
    a.compose(b)?.minus(&b.compose(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = SparseOperator<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn mode(l: u32, m: i32) -> ModeIndex {
        ModeIndex::new(l, m).unwrap()
    }

    #[test]
    fn triplets_accumulate_and_read_back() {
        let basis = BasisSpec::new(1);
        let op = Op::from_triplets(
            basis,
            [
                (mode(1, 0), mode(0, 0), c(2.0, 0.0)),
                (mode(1, 0), mode(0, 0), c(0.0, 1.0)),
            ],
        )
        .unwrap();
        assert_eq!(op.entry(mode(1, 0), mode(0, 0)).unwrap(), c(2.0, 1.0));
        assert_eq!(op.entry(mode(0, 0), mode(0, 0)).unwrap(), c(0.0, 0.0));
        assert_eq!(op.nnz(), 1);
    }

    #[test]
    fn compose_applies_rhs_first() {
        let basis = BasisSpec::new(1);
        // a: (0,0) -> (1,0); b: (1,0) -> (1,1)
        let a = Op::from_triplets(basis, [(mode(1, 0), mode(0, 0), c(3.0, 0.0))]).unwrap();
        let b = Op::from_triplets(basis, [(mode(1, 1), mode(1, 0), c(5.0, 0.0))]).unwrap();
        let ba = b.compose(&a).unwrap();
        assert_eq!(ba.entry(mode(1, 1), mode(0, 0)).unwrap(), c(15.0, 0.0));
        assert_eq!(a.compose(&b).unwrap().nnz(), 0);
    }

    #[test]
    fn apply_matches_column_extraction() {
        let basis = BasisSpec::new(2);
        let op = Op::from_triplets(
            basis,
            [
                (mode(1, 0), mode(0, 0), c(0.5, 0.5)),
                (mode(2, 0), mode(0, 0), c(-1.0, 0.0)),
                (mode(2, 1), mode(1, 1), c(4.0, 0.0)),
            ],
        )
        .unwrap();
        let e00 = CoeffVector::unit(basis, mode(0, 0)).unwrap();
        let applied = op.apply(&e00).unwrap();
        assert_eq!(applied, op.column(mode(0, 0)).unwrap());
        assert_eq!(applied.amplitude(mode(1, 0)).unwrap(), c(0.5, 0.5));
    }

    #[test]
    fn adjoint_is_an_involution_and_negates_shifts() {
        let basis = BasisSpec::new(1);
        let op = Op::from_triplets(basis, [(mode(1, 1), mode(0, 0), c(1.0, -2.0))])
            .unwrap()
            .with_band(Band::new([1], [1]));
        let adj = op.adjoint();
        assert_eq!(adj.entry(mode(0, 0), mode(1, 1)).unwrap(), c(1.0, 2.0));
        assert!(adj.band().unwrap().allows(-1, -1));
        assert_eq!(adj.adjoint(), op);
    }

    #[test]
    fn commutator_of_diagonal_operators_vanishes() {
        let basis = BasisSpec::new(2);
        let mut a = Op::zero(basis);
        let mut b = Op::zero(basis);
        for (i, mode) in basis.modes().enumerate() {
            a.add_at(i, i, c(mode.l as f64, 0.0));
            b.add_at(i, i, c(0.0, mode.m as f64));
        }
        let comm = commutator(&a, &b).unwrap();
        assert_eq!(comm.nnz(), 0);
    }

    #[test]
    fn band_composition_sums_shifts() {
        let raise = Band::new([1], [0]);
        let lower = Band::new([-1], [-1, 0, 1]);
        let composed = raise.compose(&lower);
        assert!(composed.allows(0, 0));
        assert!(composed.allows(0, 1));
        assert!(!composed.allows(1, 0));
        assert_eq!(raise.compose(&raise).max_l_raise(), 2);
        assert_eq!(lower.max_l_raise(), 0);
    }

    #[test]
    fn basis_mismatch_is_rejected() {
        let a = Op::zero(BasisSpec::new(1));
        let b = Op::zero(BasisSpec::new(2));
        assert!(matches!(
            a.compose(&b),
            Err(Error::BasisMismatch { left: 1, right: 2 })
        ));
        assert!(a.plus(&b).is_err());
    }

    #[test]
    fn restriction_and_band_violation_scan() {
        let basis = BasisSpec::new(2);
        let op = Op::from_triplets(
            basis,
            [
                (mode(1, 0), mode(0, 0), c(1.0, 0.0)),
                (mode(2, 0), mode(1, 0), c(2.0, 0.0)),
                (mode(0, 0), mode(2, 0), c(1e-13, 0.0)),
            ],
        )
        .unwrap();
        let interior = op.restrict_l(1);
        assert_eq!(interior.nnz(), 1);
        let raise_band = Band::new([1], [0]);
        assert_eq!(op.max_outside_band(&raise_band), 1e-13);
        assert_eq!(op.pruned(1e-12).max_outside_band(&raise_band), 0.0);
    }
}
