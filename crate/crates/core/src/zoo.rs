//! Named states, seeded random ensembles, the product/pure witness families
//! used for the independence test, and the POVM scenario showing that
//! `C_T` with `T ≠ {1..N}` is not an entanglement monotone.
//!
//! Random draws use ChaCha20 (`rand_chacha`), a counter-based generator:
//! the `seed` picks the key and ensemble member `i` reads stream `i`, so
//! members can be generated in any order or in parallel with identical
//! results. Within a member, complex Gaussian entries are drawn real part
//! first, then imaginary part, in column-major order of the target matrix.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::invariants::c_t;
use crate::tensor::{
    embed, kron, DenseOperator, DensityMatrix, Matrix, PartyMask, PureState, SubsystemDims, C64,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StateKind {
    Ghz,
    BellPhiPlus,
    W,
    ProductBasis,
    RhoFamily,
    PsiFamily,
    RhoII,
    RhoIII,
    HaarPure,
    GinibreMixed,
}

impl StateKind {
    pub const ALL: [StateKind; 10] = [
        StateKind::Ghz,
        StateKind::BellPhiPlus,
        StateKind::W,
        StateKind::ProductBasis,
        StateKind::RhoFamily,
        StateKind::PsiFamily,
        StateKind::RhoII,
        StateKind::RhoIII,
        StateKind::HaarPure,
        StateKind::GinibreMixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StateKind::Ghz => "ghz",
            StateKind::BellPhiPlus => "bell_phi_plus",
            StateKind::W => "w",
            StateKind::ProductBasis => "product_basis",
            StateKind::RhoFamily => "rho_family_S",
            StateKind::PsiFamily => "psi_family_S",
            StateKind::RhoII => "rho_II",
            StateKind::RhoIII => "rho_III",
            StateKind::HaarPure => "haar_pure",
            StateKind::GinibreMixed => "ginibre_mixed",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(name))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateRecipe {
    pub kind: StateKind,
    pub dims: SubsystemDims,
    pub s: Option<PartyMask>,
    pub seed: Option<u64>,
    pub rank: Option<usize>,
}

impl StateRecipe {
    pub fn new(kind: StateKind, dims: SubsystemDims) -> Self {
        Self {
            kind,
            dims,
            s: None,
            seed: None,
            rank: None,
        }
    }

    pub fn with_subset(mut self, s: PartyMask) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = Some(rank);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum State {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl State {
    pub fn dims(&self) -> &SubsystemDims {
        match self {
            State::Pure(p) => p.dims(),
            State::Mixed(m) => m.dims(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            State::Pure(p) => p.to_density(),
            State::Mixed(m) => m.clone(),
        }
    }

    pub fn as_pure(&self) -> Option<&PureState> {
        match self {
            State::Pure(p) => Some(p),
            State::Mixed(_) => None,
        }
    }
}

fn mismatch(kind: StateKind, why: &str) -> Error {
    Error::InvalidParameter(format!("{}: {why}", kind.name()))
}

fn require_qubits(kind: StateKind, dims: &SubsystemDims) -> Result<()> {
    if dims.as_slice().iter().all(|&d| d == 2) {
        Ok(())
    } else {
        Err(mismatch(kind, "requires qubit dims"))
    }
}

fn require_subset(recipe: &StateRecipe) -> Result<PartyMask> {
    let s = recipe
        .s
        .ok_or_else(|| mismatch(recipe.kind, "requires a party subset"))?;
    recipe.dims.check_mask(s)?;
    Ok(s)
}

fn require_seed(recipe: &StateRecipe) -> Result<u64> {
    recipe
        .seed
        .ok_or_else(|| mismatch(recipe.kind, "requires a seed"))
}

pub fn build(recipe: &StateRecipe) -> Result<State> {
    let dims = &recipe.dims;
    let kind = recipe.kind;
    match kind {
        StateKind::Ghz => {
            let d = dims.dim(1);
            if dims.as_slice().iter().any(|&x| x != d) {
                return Err(mismatch(kind, "requires equal local dimensions"));
            }
            Ok(State::Pure(ghz(dims.clone())?))
        }
        StateKind::BellPhiPlus => {
            if dims.parties() != 2 || dims.dim(1) != dims.dim(2) {
                return Err(mismatch(kind, "requires dims [d, d]"));
            }
            Ok(State::Pure(ghz(dims.clone())?))
        }
        StateKind::W => {
            if dims.parties() < 2 {
                return Err(mismatch(kind, "requires at least two parties"));
            }
            let n = dims.parties();
            let amp = C64::new(1.0 / (n as f64).sqrt(), 0.0);
            let mut v = DVector::zeros(dims.total());
            for p in 1..=n {
                let mut digits = vec![0; n];
                digits[p - 1] = 1;
                v[basis_index(dims, &digits)] = amp;
            }
            Ok(State::Pure(PureState::normalized(dims.clone(), v)?))
        }
        StateKind::ProductBasis => {
            let ones = recipe.s.unwrap_or(PartyMask::EMPTY);
            dims.check_mask(ones)?;
            let digits: Vec<usize> = (1..=dims.parties())
                .map(|p| usize::from(ones.contains(p)))
                .collect();
            Ok(State::Pure(PureState::basis(dims.clone(), &digits)?))
        }
        StateKind::RhoFamily => {
            require_qubits(kind, dims)?;
            let s = require_subset(recipe)?;
            Ok(State::Mixed(rho_family(dims.parties(), s)?))
        }
        StateKind::PsiFamily => {
            require_qubits(kind, dims)?;
            let s = require_subset(recipe)?;
            Ok(State::Pure(psi_family(dims.parties(), s)?))
        }
        StateKind::RhoII | StateKind::RhoIII => {
            if dims.as_slice() != [2, 2, 2] {
                return Err(mismatch(kind, "requires dims [2, 2, 2]"));
            }
            let pair = if kind == StateKind::RhoII {
                PartyMask::from_parties([1, 2])
            } else {
                PartyMask::from_parties([1, 3])
            };
            Ok(State::Mixed(bell_pair_with_noise(pair)?))
        }
        StateKind::HaarPure => {
            let seed = require_seed(recipe)?;
            Ok(State::Pure(haar_pure(dims, seed, 0)))
        }
        StateKind::GinibreMixed => {
            let seed = require_seed(recipe)?;
            let rank = recipe.rank.unwrap_or(dims.total());
            if rank == 0 {
                return Err(mismatch(kind, "rank must be positive"));
            }
            Ok(State::Mixed(ginibre_mixed(dims, rank, seed, 0)))
        }
    }
}

fn basis_index(dims: &SubsystemDims, digits: &[usize]) -> usize {
    digits
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &i)| acc * dims.dim(j + 1) + i)
}

/// `(1/sqrt d) Σ_k |k...k>` on `[d, ..., d]`.
pub fn ghz(dims: SubsystemDims) -> Result<PureState> {
    let d = dims.dim(1);
    let n = dims.parties();
    let amp = C64::new((1.0 / d as f64).sqrt(), 0.0);
    let mut v = DVector::zeros(dims.total());
    for k in 0..d {
        v[basis_index(&dims, &vec![k; n])] = amp;
    }
    PureState::new(dims, v)
}

pub fn bell_phi_plus() -> PureState {
    ghz(SubsystemDims::qubits(2).expect("two qubits fit any cap")).expect("valid Bell state")
}

/// `⊗_k (|0><0| if k ∈ S else 1/2)` on `n` qubits.
pub fn rho_family(n: usize, s: PartyMask) -> Result<DensityMatrix> {
    let one = SubsystemDims::qubits(1)?;
    let factor = |k: usize| {
        if s.contains(k) {
            DenseOperator::diagonal(&one, &[1.0, 0.0])
        } else {
            DenseOperator::diagonal(&one, &[0.5, 0.5])
        }
    };
    let mut op = factor(1)?;
    for k in 2..=n {
        op = kron(&op, &factor(k)?)?;
    }
    DensityMatrix::new(op)
}

/// `(1/sqrt 2)[|0>_1 |0..0>_{S^c} + |1>_1 |1..1>_{S^c}] ⊗ |0..0>_S` with
/// `S ⊆ {2..n}`; `S^c` here excludes party 1.
pub fn psi_family(n: usize, s: PartyMask) -> Result<PureState> {
    if n < 1 || !s.fits(n) || s.contains(1) {
        return Err(Error::InvalidParameter(format!(
            "psi family needs S ⊆ {{2..{n}}}, got {s}"
        )));
    }
    let dims = SubsystemDims::qubits(n)?;
    let zeros = vec![0usize; n];
    let ones: Vec<usize> = (1..=n).map(|p| usize::from(!s.contains(p))).collect();
    let amp = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut v = DVector::zeros(dims.total());
    v[basis_index(&dims, &zeros)] += amp;
    v[basis_index(&dims, &ones)] += amp;
    PureState::new(dims, v)
}

/// Bell pair `|Φ+>` on `pair` with the remaining qubit maximally mixed.
fn bell_pair_with_noise(pair: PartyMask) -> Result<DensityMatrix> {
    let dims = SubsystemDims::qubits(3)?;
    let bell = bell_phi_plus().projector();
    let lifted = embed(&bell, pair, &dims)?;
    DensityMatrix::new(lifted.scale(0.5))
}

/// Counter-based generator for ensemble member `stream`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

fn gaussian_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    let mut m = DMatrix::zeros(rows, cols);
    for c in 0..cols {
        for r in 0..rows {
            m[(r, c)] = gaussian(rng);
        }
    }
    m
}

/// Haar-random pure state: a normalized vector of complex Gaussians.
pub fn haar_pure(dims: &SubsystemDims, seed: u64, stream: u64) -> PureState {
    let mut rng = rng_for(seed, stream);
    haar_pure_with(dims, &mut rng)
}

pub fn haar_pure_with(dims: &SubsystemDims, rng: &mut impl Rng) -> PureState {
    loop {
        let v = DVector::from_fn(dims.total(), |_, _| gaussian(rng));
        if let Ok(psi) = PureState::normalized(dims.clone(), v) {
            return psi;
        }
    }
}

/// `G G^† / Tr(G G^†)` with `G` a `D × rank` complex Gaussian matrix.
pub fn ginibre_mixed(dims: &SubsystemDims, rank: usize, seed: u64, stream: u64) -> DensityMatrix {
    let mut rng = rng_for(seed, stream);
    ginibre_mixed_with(dims, rank, &mut rng)
}

pub fn ginibre_mixed_with(dims: &SubsystemDims, rank: usize, rng: &mut impl Rng) -> DensityMatrix {
    let op = random_psd_with(dims, rank, 1.0, rng);
    DensityMatrix::new(op).expect("normalized Ginibre matrix is a state")
}

/// Hermitian PSD operator `G G^†` rescaled to the given trace.
pub fn random_psd_with(
    dims: &SubsystemDims,
    rank: usize,
    trace: f64,
    rng: &mut impl Rng,
) -> DenseOperator {
    let g = gaussian_matrix(dims.total(), rank, rng);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    let op = DenseOperator::new(dims.clone(), m * C64::new(trace / tr, 0.0))
        .expect("square by construction");
    op.hermitian_part()
}

/// Haar-random `d × d` unitary from the QR decomposition of a Ginibre
/// matrix with the phases of `R`'s diagonal divided out.
pub fn haar_unitary(d: usize, rng: &mut impl Rng) -> Matrix {
    let g = gaussian_matrix(d, d, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..d {
        let z = r[(c, c)];
        let phase = if z.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            z / z.norm()
        };
        for row in 0..d {
            q[(row, c)] *= phase;
        }
    }
    q
}

/// `U_1 ⊗ ... ⊗ U_N` with independent Haar factors.
pub fn random_local_unitary(dims: &SubsystemDims, rng: &mut impl Rng) -> Matrix {
    let mut u = haar_unitary(dims.dim(1), rng);
    for p in 2..=dims.parties() {
        u = u.kronecker(&haar_unitary(dims.dim(p), rng));
    }
    u
}

/// `size` Haar-random pure states; member `i` uses stream `i`.
pub fn pure_ensemble(dims: &SubsystemDims, size: usize, seed: u64) -> Vec<PureState> {
    (0..size as u64)
        .into_par_iter()
        .map(|i| haar_pure(dims, seed, i))
        .collect()
}

/// `size` full-rank Ginibre states; member `i` uses stream `i`.
pub fn mixed_ensemble(dims: &SubsystemDims, size: usize, seed: u64) -> Vec<DensityMatrix> {
    (0..size as u64)
        .into_par_iter()
        .map(|i| ginibre_mixed(dims, dims.total(), seed, i))
        .collect()
}

/// `C_T^2(rho(S))`: 0 when `S ∩ T ≠ ∅`, else `4^|S| 3^(n-|S|-|T|) / 2^n`.
pub fn closed_form_ct_rho_family(n: usize, s: PartyMask, t: PartyMask) -> f64 {
    if !s.intersection(t).is_empty() {
        return 0.0;
    }
    let exp3 = n as i32 - s.len() as i32 - t.len() as i32;
    4f64.powi(s.len() as i32) * 3f64.powi(exp3) / 2f64.powi(n as i32)
}

/// `C_T^2(psi(S))` for any `T ⊆ {1..n}`.
///
/// Odd `|T|` gives 0 (pure state). For even `|T|` with `S ∩ T = ∅` the value
/// is `δ_{0,|T|} 2^(n-1) + 2^|S|`.
pub fn closed_form_ct_psi_family(n: usize, s: PartyMask, t: PartyMask) -> f64 {
    if t.is_odd() || !s.intersection(t).is_empty() {
        return 0.0;
    }
    let delta = if t.is_empty() { 2f64.powi(n as i32 - 1) } else { 0.0 };
    delta + 2f64.powi(s.len() as i32)
}

/// The same closed form indexed by `T'' ⊆ {2..n}`: party 1 is added to
/// `T''` when needed to make the mask even, which is the only completion
/// on which a pure state can have a nonzero invariant.
pub fn closed_form_ct_psi_family_reduced(n: usize, s: PartyMask, t_reduced: PartyMask) -> f64 {
    closed_form_ct_psi_family(n, s, even_completion(t_reduced))
}

/// `T'' ∪ {1}` if `|T''|` is odd, else `T''`.
pub fn even_completion(t_reduced: PartyMask) -> PartyMask {
    if t_reduced.is_odd() {
        t_reduced.union(PartyMask::single(1))
    } else {
        t_reduced
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneScenario {
    /// `C_T(psi)` before the measurement.
    pub before: f64,
    /// probability-weighted mean of `C_T` over the outcomes
    pub after_average: f64,
    pub probabilities: Vec<f64>,
    pub outcome_values: Vec<f64>,
    /// max entry of `Σ_i A_i^† A_i - 1`
    pub completeness_defect: f64,
}

/// Two-outcome POVM `A_{1,2} = |±><±| + (1/sqrt 2) Σ_{j>=2} |j><j|` on a
/// qudit of dimension `d`.
pub fn pm_povm(d: usize) -> Result<[Matrix; 2]> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("POVM needs d >= 2, got {d}")));
    }
    let h = 0.5;
    let tail = std::f64::consts::FRAC_1_SQRT_2;
    let mut a1 = Matrix::zeros(d, d);
    let mut a2 = Matrix::zeros(d, d);
    for (m, sign) in [(&mut a1, 1.0), (&mut a2, -1.0)] {
        m[(0, 0)] = C64::new(h, 0.0);
        m[(1, 1)] = C64::new(h, 0.0);
        m[(0, 1)] = C64::new(sign * h, 0.0);
        m[(1, 0)] = C64::new(sign * h, 0.0);
        for j in 2..d {
            m[(j, j)] = C64::new(tail, 0.0);
        }
    }
    Ok([a1, a2])
}

/// GHZ on three qudits of dimension `d`, `T = {2,3}`, the `±` POVM on
/// party 1. The qubit case is [`monotone_counterexample`].
pub fn monotone_counterexample_qudit(d: usize) -> Result<MonotoneScenario> {
    let dims = SubsystemDims::uniform(d, 3)?;
    let t = PartyMask::from_parties([2, 3]);
    // (|000> + |111>)/sqrt 2 regardless of d
    let mut v = DVector::zeros(dims.total());
    let amp = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[basis_index(&dims, &[0, 0, 0])] = amp;
    v[basis_index(&dims, &[1, 1, 1])] = amp;
    let psi = PureState::new(dims.clone(), v)?;
    let before = c_t(&psi.to_density(), t)?;

    let povm = pm_povm(d)?;
    let rest = Matrix::identity(d * d, d * d);
    let mut probabilities = Vec::new();
    let mut outcome_values = Vec::new();
    let mut completeness = Matrix::zeros(d, d);
    for a in &povm {
        completeness += a.adjoint() * a;
        let k = a.kronecker(&rest);
        let phi = &k * psi.amplitudes();
        let p = phi.norm_squared();
        probabilities.push(p);
        if p <= 0.0 {
            outcome_values.push(0.0);
            continue;
        }
        let post = PureState::normalized(dims.clone(), phi)?;
        outcome_values.push(c_t(&post.to_density(), t)?);
    }
    let completeness_defect = (completeness - Matrix::identity(d, d))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let after_average = probabilities
        .iter()
        .zip(&outcome_values)
        .map(|(p, v)| p * v)
        .sum();
    Ok(MonotoneScenario {
        before,
        after_average,
        probabilities,
        outcome_values,
        completeness_defect,
    })
}

/// `(before, after_average)` for the three-qubit scenario; the average
/// exceeds the initial value (`sqrt 2` vs `1`).
pub fn monotone_counterexample() -> (f64, f64) {
    let s = monotone_counterexample_qudit(2).expect("fixed qubit scenario is valid");
    (s.before, s.after_average)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::c_t_squared;
    use crate::tensor::{linear_entropies, partial_trace};

    fn recipe(kind: StateKind, dims: Vec<usize>) -> StateRecipe {
        StateRecipe::new(kind, SubsystemDims::new(dims).unwrap())
    }

    #[test]
    fn bell_amplitudes() {
        let s = build(&recipe(StateKind::BellPhiPlus, vec![2, 2])).unwrap();
        let a = s.as_pure().unwrap().amplitudes();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = [h, 0.0, 0.0, h];
        for (x, w) in a.iter().zip(want) {
            assert!((x - C64::new(w, 0.0)).norm() < 1e-16);
        }
    }

    #[test]
    fn rho_family_all_projectors() {
        let s = build(&recipe(StateKind::RhoFamily, vec![2, 2]).with_subset(PartyMask::full(2))).unwrap();
        let want = PureState::basis(SubsystemDims::qubits(2).unwrap(), &[0, 0]).unwrap();
        assert_eq!(s.to_density().op(), &want.projector());
    }

    #[test]
    fn psi_family_without_ghz_part() {
        let s = build(
            &recipe(StateKind::PsiFamily, vec![2, 2, 2]).with_subset(PartyMask::from_parties([2, 3])),
        )
        .unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let a = s.as_pure().unwrap().amplitudes();
        for (i, x) in a.iter().enumerate() {
            let want = if i == 0 || i == 4 { h } else { 0.0 };
            assert!((x - C64::new(want, 0.0)).norm() < 1e-15, "amp {i}");
        }
        assert!(psi_family(3, PartyMask::single(1)).is_err());
    }

    #[test]
    fn rho_ii_and_iii_entropies() {
        let ii = build(&recipe(StateKind::RhoII, vec![2, 2, 2])).unwrap().to_density();
        let t = linear_entropies(&ii);
        assert!((t.tau(&[2]) - 1.0).abs() < 1e-14);
        assert!((t.tau(&[1, 2, 3]) - 1.0).abs() < 1e-14);
        assert!(t.tau(&[1, 2]).abs() < 1e-14);
        assert!((t.tau(&[2, 3]) - 1.5).abs() < 1e-14);

        let iii = build(&recipe(StateKind::RhoIII, vec![2, 2, 2])).unwrap().to_density();
        let r13 = partial_trace(iii.op(), PartyMask::from_parties([1, 3])).unwrap();
        assert!(r13.max_abs_diff(&bell_phi_plus().projector()) < 1e-15);
        let r2 = partial_trace(iii.op(), PartyMask::single(2)).unwrap();
        assert!(r2.max_abs_diff(&DenseOperator::identity(r2.dims()).scale(0.5)) < 1e-15);
    }

    #[test]
    fn recipe_errors() {
        assert!(build(&recipe(StateKind::HaarPure, vec![2, 2])).is_err());
        assert!(build(&recipe(StateKind::RhoFamily, vec![2, 2])).is_err());
        assert!(build(&recipe(StateKind::RhoFamily, vec![2, 3]).with_subset(PartyMask::EMPTY)).is_err());
        assert!(build(&recipe(StateKind::RhoII, vec![2, 2])).is_err());
        assert!(build(&recipe(StateKind::Ghz, vec![2, 3])).is_err());
        assert!(build(&recipe(StateKind::BellPhiPlus, vec![2, 2, 2])).is_err());
        assert_eq!(StateKind::from_name("rho_ii"), Some(StateKind::RhoII));
    }

    #[test]
    fn seeded_builders_reproduce() {
        let dims = SubsystemDims::new(vec![2, 3]).unwrap();
        assert_eq!(haar_pure(&dims, 7, 3), haar_pure(&dims, 7, 3));
        assert_ne!(haar_pure(&dims, 7, 3), haar_pure(&dims, 7, 4));
        assert_eq!(ginibre_mixed(&dims, 6, 1, 0), ginibre_mixed(&dims, 6, 1, 0));
        let ens = mixed_ensemble(&dims, 4, 11);
        assert_eq!(ens[2], ginibre_mixed(&dims, 6, 11, 2));
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = rng_for(5, 0);
        for d in 2..=4 {
            let u = haar_unitary(d, &mut rng);
            let dev = (&u * u.adjoint() - Matrix::identity(d, d))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-12);
        }
    }

    #[test]
    fn closed_forms_match_direct_evaluation() {
        assert_eq!(closed_form_ct_rho_family(2, PartyMask::single(1), PartyMask::single(2)), 1.0);
        assert_eq!(closed_form_ct_rho_family(3, PartyMask::EMPTY, PartyMask::EMPTY), 27.0 / 8.0);
        assert_eq!(closed_form_ct_rho_family(3, PartyMask::single(1), PartyMask::from_parties([1, 2])), 0.0);
        assert_eq!(closed_form_ct_psi_family(3, PartyMask::from_parties([2, 3]), PartyMask::EMPTY), 8.0);
        assert_eq!(closed_form_ct_psi_family_reduced(3, PartyMask::EMPTY, PartyMask::single(2)), 1.0);
        assert_eq!(closed_form_ct_psi_family(3, PartyMask::single(2), PartyMask::from_parties([1, 2])), 0.0);
        for n in 1..=3 {
            for s in PartyMask::all(n) {
                let rho = rho_family(n, s).unwrap();
                for t in PartyMask::all(n) {
                    let v = c_t_squared(&rho, t).unwrap();
                    assert!((v - closed_form_ct_rho_family(n, s, t)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn qubit_counterexample() {
        let (before, after) = monotone_counterexample();
        assert!((before - 1.0).abs() < 1e-12);
        assert!((after - 2f64.sqrt()).abs() < 1e-12);
        let s = monotone_counterexample_qudit(2).unwrap();
        assert!(s.completeness_defect < 1e-12);
        assert!((s.probabilities[0] - 0.5).abs() < 1e-12);
        let q3 = monotone_counterexample_qudit(3).unwrap();
        assert!(q3.completeness_defect < 1e-12);
        assert!(q3.after_average > q3.before);
    }
}
