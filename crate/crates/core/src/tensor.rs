//! Dense multipartite operator substrate.
//!
//! Party 1 is the leftmost (most significant) tensor factor: the global basis
//! index is `i = sum_j i_j * prod_{k>j} d_k`. Every routine in the crate relies
//! on this ordering, including the state-file format and the Kraus assembly.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Matrix = DMatrix<C64>;

pub const DEFAULT_DIMENSION_CAP: usize = 4096;

/// Max absolute entry of `A - A^dagger` accepted as Hermitian.
pub const TOL_HERM: f64 = 1e-10;
/// Allowed distance of a density-matrix trace from 1.
pub const TOL_TRACE: f64 = 1e-10;
/// Smallest eigenvalue accepted as positive semidefinite is `-TOL_PSD`.
pub const TOL_PSD: f64 = 1e-9;
/// Allowed distance of a state-vector norm from 1.
pub const TOL_NORM: f64 = 1e-12;

static DIMENSION_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DIMENSION_CAP);

/// Current global cap on the total Hilbert-space dimension.
pub fn dimension_cap() -> usize {
    DIMENSION_CAP.load(Ordering::Relaxed)
}

/// Replace the global dimension cap. Values below 2 are clamped to 2.
pub fn set_dimension_cap(cap: usize) {
    DIMENSION_CAP.store(cap.max(2), Ordering::Relaxed);
}

/// Ordered local dimensions `d_1..d_N` of a tensor-product space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsystemDims {
    dims: Vec<usize>,
    total: usize,
}

impl SubsystemDims {
    /// Validate against the global dimension cap.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        Self::with_cap(dims, dimension_cap())
    }

    pub fn with_cap(dims: Vec<usize>, cap: usize) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::NoParties);
        }
        if dims.len() > 31 {
            return Err(Error::InvalidParameter(format!(
                "{} parties exceed the 31-party mask width",
                dims.len()
            )));
        }
        let mut total: usize = 1;
        for (j, &d) in dims.iter().enumerate() {
            if d < 2 {
                return Err(Error::DegenerateParty { party: j + 1, dim: d });
            }
            total = total.checked_mul(d).ok_or(Error::DimensionCap {
                total: usize::MAX,
                cap,
            })?;
            if total > cap {
                // keep multiplying to report the real size when it fits
                let full = dims.iter().try_fold(1usize, |acc, &x| acc.checked_mul(x));
                return Err(Error::DimensionCap {
                    total: full.unwrap_or(usize::MAX),
                    cap,
                });
            }
        }
        Ok(Self { dims, total })
    }

    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn uniform(d: usize, n: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    /// Number of parties `N`.
    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension `D`.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Local dimension of party `party` (1-based).
    pub fn dim(&self, party: usize) -> usize {
        self.dims[party - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }

    pub fn full_mask(&self) -> PartyMask {
        PartyMask::full(self.parties())
    }

    /// Product of the local dimensions of the parties in `mask`.
    pub fn block_dim(&self, mask: PartyMask) -> usize {
        mask.parties().map(|p| self.dim(p)).product()
    }

    /// Dimensions of the parties in `mask`, in their original order.
    pub fn restrict(&self, mask: PartyMask) -> Result<SubsystemDims> {
        self.check_mask(mask)?;
        let dims: Vec<usize> = mask.parties().map(|p| self.dim(p)).collect();
        SubsystemDims::with_cap(dims, usize::MAX)
    }

    /// Concatenation `self` followed by `other`, checked against `cap`.
    pub fn concat_with_cap(&self, other: &SubsystemDims, cap: usize) -> Result<SubsystemDims> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        SubsystemDims::with_cap(dims, cap)
    }

    pub fn check_mask(&self, mask: PartyMask) -> Result<()> {
        if mask.fits(self.parties()) {
            Ok(())
        } else {
            Err(Error::InvalidMask {
                mask: mask.bits(),
                parties: self.parties(),
            })
        }
    }

    fn stride(&self, party: usize) -> usize {
        self.dims[party..].iter().product()
    }

    /// Global offsets of every multi-index over the parties in `mask`,
    /// enumerated lexicographically with the lowest party most significant.
    /// The global index of a basis vector is the sum of the offsets of a
    /// partition of its parties.
    pub(crate) fn offsets(&self, mask: PartyMask) -> Vec<usize> {
        let mut offs = vec![0usize];
        for p in mask.parties() {
            let d = self.dim(p);
            let stride = self.stride(p);
            let mut next = Vec::with_capacity(offs.len() * d);
            for &o in &offs {
                for i in 0..d {
                    next.push(o + i * stride);
                }
            }
            offs = next;
        }
        offs
    }
}

impl fmt::Display for SubsystemDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A subset of the parties `{1..N}`; bit `j-1` set means party `j` is in it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PartyMask(u32);

impl PartyMask {
    pub const EMPTY: PartyMask = PartyMask(0);

    pub fn from_bits(bits: u32) -> Self {
        Self(bits)
    }

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            Self(u32::MAX)
        } else {
            Self((1u32 << n) - 1)
        }
    }

    pub fn single(party: usize) -> Self {
        debug_assert!(party >= 1);
        Self(1 << (party - 1))
    }

    /// Build from 1-based party labels.
    pub fn from_parties<I: IntoIterator<Item = usize>>(parties: I) -> Self {
        Self(parties.into_iter().fold(0, |acc, p| acc | (1 << (p - 1))))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, party: usize) -> bool {
        (1..=32).contains(&party) && self.0 >> (party - 1) & 1 == 1
    }

    pub fn is_odd(self) -> bool {
        self.len() % 2 == 1
    }

    pub fn fits(self, n: usize) -> bool {
        self.0 & !PartyMask::full(n).0 == 0
    }

    pub fn complement(self, n: usize) -> Self {
        Self(!self.0 & PartyMask::full(n).0)
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// `(-1)^{|self ∩ other|}` as a float.
    pub fn sign_with(self, other: Self) -> f64 {
        if self.intersection(other).is_odd() {
            -1.0
        } else {
            1.0
        }
    }

    /// Iterate the 1-based party labels in ascending order.
    pub fn parties(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| self.0 >> i & 1 == 1).map(|i| i + 1)
    }

    /// All `2^n` subsets of `{1..n}` in ascending bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = PartyMask> {
        (0..=PartyMask::full(n).0).map(PartyMask)
    }

    /// All subsets of `self` in ascending bitmask order.
    pub fn submasks(self) -> impl Iterator<Item = PartyMask> {
        (0..=self.0).filter(move |b| b & !self.0 == 0).map(PartyMask)
    }

    /// Zero-padded bitstring with party 1 as the leftmost character.
    pub fn bitstring(self, n: usize) -> String {
        (1..=n).map(|p| if self.contains(p) { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for PartyMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parties().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A square complex matrix acting on the space described by `dims`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    dims: SubsystemDims,
    mat: Matrix,
}

impl DenseOperator {
    pub fn new(dims: SubsystemDims, mat: Matrix) -> Result<Self> {
        let d = dims.total();
        if mat.nrows() != d || mat.ncols() != d {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{} but dims {} require {d}x{d}",
                mat.nrows(),
                mat.ncols(),
                dims
            )));
        }
        Ok(Self { dims, mat })
    }

    pub fn zeros(dims: &SubsystemDims) -> Self {
        let d = dims.total();
        Self {
            dims: dims.clone(),
            mat: Matrix::zeros(d, d),
        }
    }

    pub fn identity(dims: &SubsystemDims) -> Self {
        let d = dims.total();
        Self {
            dims: dims.clone(),
            mat: Matrix::identity(d, d),
        }
    }

    /// Diagonal operator with real entries.
    pub fn diagonal(dims: &SubsystemDims, diag: &[f64]) -> Result<Self> {
        if diag.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "{} diagonal entries for dimension {}",
                diag.len(),
                dims.total()
            )));
        }
        let v = DVector::from_iterator(diag.len(), diag.iter().map(|&x| C64::new(x, 0.0)));
        Ok(Self {
            dims: dims.clone(),
            mat: Matrix::from_diagonal(&v),
        })
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn matrix_mut(&mut self) -> &mut Matrix {
        &mut self.mat
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }

    pub fn side(&self) -> usize {
        self.mat.nrows()
    }

    /// Reinterpret the same matrix under a different factorization of `D`.
    pub fn with_dims(self, dims: SubsystemDims) -> Result<Self> {
        Self::new(dims, self.mat)
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            dims: self.dims.clone(),
            mat: self.mat.adjoint(),
        }
    }

    /// Entrywise complex conjugate in the computational basis.
    pub fn conj(&self) -> Self {
        Self {
            dims: self.dims.clone(),
            mat: self.mat.map(|z| z.conj()),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            dims: self.dims.clone(),
            mat: self.mat.transpose(),
        }
    }

    /// `(A + A^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let m = (&self.mat + self.mat.adjoint()) * C64::new(0.5, 0.0);
        Self {
            dims: self.dims.clone(),
            mat: m,
        }
    }

    /// Max absolute entry of `A - A^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.side();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                let dev = (self.mat[(i, j)] - self.mat[(j, i)].conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    /// Max absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        assert_eq!(self.side(), other.side(), "operator sides differ");
        self.mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dims: self.dims.clone(),
            mat: &self.mat * C64::new(factor, 0.0),
        }
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &DenseOperator) -> C64 {
        trace_product(&self.mat, &other.mat)
    }

    pub fn matmul(&self, other: &DenseOperator) -> Self {
        Self {
            dims: self.dims.clone(),
            mat: &self.mat * &other.mat,
        }
    }

    /// `U self U^dagger`.
    pub fn conjugate_by(&self, u: &Matrix) -> Self {
        Self {
            dims: self.dims.clone(),
            mat: u * &self.mat * u.adjoint(),
        }
    }
}

impl Add<&DenseOperator> for &DenseOperator {
    type Output = DenseOperator;

    fn add(self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dims, rhs.dims, "adding operators on different spaces");
        DenseOperator {
            dims: self.dims.clone(),
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl Sub<&DenseOperator> for &DenseOperator {
    type Output = DenseOperator;

    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dims, rhs.dims, "subtracting operators on different spaces");
        DenseOperator {
            dims: self.dims.clone(),
            mat: &self.mat - &rhs.mat,
        }
    }
}

impl Mul<f64> for &DenseOperator {
    type Output = DenseOperator;

    fn mul(self, rhs: f64) -> DenseOperator {
        self.scale(rhs)
    }
}

/// `acc += factor * m`, in place.
pub(crate) fn add_scaled(acc: &mut Matrix, factor: f64, m: &Matrix) {
    let f = C64::new(factor, 0.0);
    acc.zip_apply(m, |a, b| *a += b * f);
}

pub(crate) fn trace_product(a: &Matrix, b: &Matrix) -> C64 {
    let d = a.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Validation thresholds for density matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub herm: f64,
    pub trace: f64,
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: TOL_HERM,
            trace: TOL_TRACE,
            psd: TOL_PSD,
        }
    }
}

/// A validated state: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: DenseOperator,
}

impl DensityMatrix {
    pub fn new(op: DenseOperator) -> Result<Self> {
        Self::with_tolerances(op, Tolerances::default())
    }

    pub fn with_tolerances(op: DenseOperator, tol: Tolerances) -> Result<Self> {
        let deviation = op.hermiticity_defect();
        if deviation > tol.herm {
            return Err(Error::NotHermitian { deviation });
        }
        let tr = op.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::BadTrace { trace: tr.re });
        }
        let min = min_eigenvalue_unchecked(&op);
        if min < -tol.psd {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(Self { op })
    }

    pub fn maximally_mixed(dims: &SubsystemDims) -> Self {
        let d = dims.total() as f64;
        Self {
            op: DenseOperator::identity(dims).scale(1.0 / d),
        }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self {
            op: psi.projector(),
        }
    }

    pub fn op(&self) -> &DenseOperator {
        &self.op
    }

    pub fn into_operator(self) -> DenseOperator {
        self.op
    }

    pub fn dims(&self) -> &SubsystemDims {
        self.op.dims()
    }

    pub fn matrix(&self) -> &Matrix {
        self.op.matrix()
    }
}

/// A normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    dims: SubsystemDims,
    amps: DVector<C64>,
}

impl PureState {
    pub fn new(dims: SubsystemDims, amps: DVector<C64>) -> Result<Self> {
        if amps.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for dimension {}",
                amps.len(),
                dims.total()
            )));
        }
        let norm = amps.norm();
        if (norm - 1.0).abs() > TOL_NORM {
            return Err(Error::BadNorm { norm });
        }
        Ok(Self { dims, amps })
    }

    /// Normalize an arbitrary nonzero vector.
    pub fn normalized(dims: SubsystemDims, amps: DVector<C64>) -> Result<Self> {
        let norm = amps.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::BadNorm { norm });
        }
        Self::new(dims, amps / C64::new(norm, 0.0))
    }

    /// Computational basis vector `|i_1 ... i_N>`.
    pub fn basis(dims: SubsystemDims, digits: &[usize]) -> Result<Self> {
        if digits.len() != dims.parties() {
            return Err(Error::DimensionMismatch(format!(
                "{} digits for {} parties",
                digits.len(),
                dims.parties()
            )));
        }
        let mut index = 0;
        for (j, &i) in digits.iter().enumerate() {
            if i >= dims.dim(j + 1) {
                return Err(Error::InvalidParameter(format!(
                    "digit {i} out of range for party {}",
                    j + 1
                )));
            }
            index = index * dims.dim(j + 1) + i;
        }
        let mut amps = DVector::zeros(dims.total());
        amps[index] = C64::new(1.0, 0.0);
        Ok(Self { dims, amps })
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }

    /// `|psi><psi|`.
    pub fn projector(&self) -> DenseOperator {
        DenseOperator {
            dims: self.dims.clone(),
            mat: &self.amps * self.amps.adjoint(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    /// `<psi| op |psi>`.
    pub fn expectation(&self, op: &DenseOperator) -> C64 {
        (self.amps.adjoint() * op.matrix() * &self.amps)[(0, 0)]
    }

    /// Tensor product `self ⊗ other`.
    pub fn kron(&self, other: &PureState) -> Result<PureState> {
        let dims = self.dims.concat_with_cap(&other.dims, dimension_cap())?;
        Ok(PureState {
            dims,
            amps: self.amps.kronecker(&other.amps),
        })
    }
}

/// Tensor product with `a` as the left factor.
pub fn kron(a: &DenseOperator, b: &DenseOperator) -> Result<DenseOperator> {
    let dims = a.dims.concat_with_cap(&b.dims, dimension_cap())?;
    Ok(DenseOperator {
        dims,
        mat: a.mat.kronecker(&b.mat),
    })
}

/// `Tr_{keep^c}(op)`, living on the kept parties in their original order.
///
/// `keep` must be nonempty; the fully traced case is [`DenseOperator::trace`].
pub fn partial_trace(op: &DenseOperator, keep: PartyMask) -> Result<DenseOperator> {
    let dims = op.dims();
    dims.check_mask(keep)?;
    if keep.is_empty() {
        return Err(Error::InvalidMask {
            mask: 0,
            parties: dims.parties(),
        });
    }
    if keep == dims.full_mask() {
        return Ok(op.clone());
    }
    let kept_dims = dims.restrict(keep)?;
    let kept = dims.offsets(keep);
    let traced = dims.offsets(keep.complement(dims.parties()));
    let m = op.matrix();
    let n = kept.len();
    let mut out = Matrix::zeros(n, n);
    for (c, &oc) in kept.iter().enumerate() {
        for (r, &or) in kept.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for &t in &traced {
                acc += m[(or + t, oc + t)];
            }
            out[(r, c)] = acc;
        }
    }
    DenseOperator::new(kept_dims, out)
}

/// `op_s ⊗ 1_{s^c}` with the factors ordered as in `dims`.
pub fn embed(op_s: &DenseOperator, s: PartyMask, dims: &SubsystemDims) -> Result<DenseOperator> {
    dims.check_mask(s)?;
    if s.is_empty() {
        return Err(Error::InvalidMask {
            mask: 0,
            parties: dims.parties(),
        });
    }
    let expected = dims.restrict(s)?;
    if op_s.dims() != &expected {
        return Err(Error::DimensionMismatch(format!(
            "operator dims {} do not match parties {s} of {dims}",
            op_s.dims()
        )));
    }
    if s == dims.full_mask() {
        return Ok(op_s.clone());
    }
    let kept = dims.offsets(s);
    let rest = dims.offsets(s.complement(dims.parties()));
    let src = op_s.matrix();
    let mut out = Matrix::zeros(dims.total(), dims.total());
    for (c, &oc) in kept.iter().enumerate() {
        for (r, &or) in kept.iter().enumerate() {
            let v = src[(r, c)];
            if v == C64::new(0.0, 0.0) {
                continue;
            }
            for &t in &rest {
                out[(or + t, oc + t)] = v;
            }
        }
    }
    DenseOperator::new(dims.clone(), out)
}

/// `Tr_{s^c}(op) ⊗ 1_{s^c}`; for `s = ∅` this is `Tr(op) 1`.
pub fn reduce_and_pad(op: &DenseOperator, s: PartyMask) -> Result<DenseOperator> {
    let dims = op.dims();
    if s.is_empty() {
        dims.check_mask(s)?;
        let tr = op.trace();
        let mut out = DenseOperator::identity(dims);
        out.mat *= tr;
        return Ok(out);
    }
    let reduced = partial_trace(op, s)?;
    embed(&reduced, s, dims)
}

/// `Tr(rho^2)`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.op().trace_product(rho.op()).re
}

/// Purities `Tr(rho_S^2)` indexed by mask bits; index 0 holds `Tr(rho)^2`.
pub fn reduced_purities(op: &DenseOperator) -> Result<Vec<f64>> {
    let n = op.dims().parties();
    let mut out = Vec::with_capacity(1 << n);
    for s in PartyMask::all(n) {
        if s.is_empty() {
            let tr = op.trace();
            out.push((tr * tr).re);
        } else {
            let r = partial_trace(op, s)?;
            out.push(r.trace_product(&r).re);
        }
    }
    Ok(out)
}

/// Linear entropies `tau_S = 2 [1 - Tr(rho_S^2)]` for every nonempty `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearEntropyVector {
    parties: usize,
    values: Vec<f64>,
}

impl LinearEntropyVector {
    pub fn parties(&self) -> usize {
        self.parties
    }

    /// `tau_S`; the empty set maps to 0.
    pub fn get(&self, s: PartyMask) -> f64 {
        self.values[s.bits() as usize]
    }

    /// Shorthand taking 1-based party labels.
    pub fn tau(&self, parties: &[usize]) -> f64 {
        self.get(PartyMask::from_parties(parties.iter().copied()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (PartyMask, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .skip(1)
            .map(|(b, &v)| (PartyMask::from_bits(b as u32), v))
    }
}

pub fn linear_entropies(rho: &DensityMatrix) -> LinearEntropyVector {
    let purities = reduced_purities(rho.op()).expect("masks enumerated from dims are valid");
    let mut values: Vec<f64> = purities.iter().map(|p| 2.0 * (1.0 - p)).collect();
    values[0] = 0.0;
    LinearEntropyVector {
        parties: rho.dims().parties(),
        values,
    }
}

fn min_eigenvalue_unchecked(h: &DenseOperator) -> f64 {
    hermitian_eigenvalues(h.hermitian_part().into_matrix())
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

fn hermitian_eigenvalues(m: Matrix) -> Vec<f64> {
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Ascending spectrum of a Hermitian operator.
pub fn eigenvalues(h: &DenseOperator) -> Result<Vec<f64>> {
    let deviation = h.hermiticity_defect();
    if deviation > TOL_HERM {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(hermitian_eigenvalues(h.hermitian_part().into_matrix()))
}

pub fn min_eigenvalue(h: &DenseOperator) -> Result<f64> {
    Ok(eigenvalues(h)?[0])
}
