//! Inequality families that follow from positivity of `I_T`:
//! correlation constraints on linear entropies, pure-state monogamy,
//! shadow inequalities, linear-entropy inequalities, and operator
//! witnesses for the compatibility of marginals.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::invariants::{c_t_squared, signed_purity_sum};
use crate::tensor::{
    add_scaled, embed, linear_entropies, min_eigenvalue, partial_trace, purity, DenseOperator,
    DensityMatrix, LinearEntropyVector, PartyMask, PureState, SubsystemDims, TOL_PSD,
};

/// Pass threshold: an entry passes iff `margin >= -DEFAULT_TOL`.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Agreement required between user-supplied marginals on their overlaps.
pub const MARGINAL_OVERLAP_TOL: f64 = 1e-8;
/// Singular values below this fraction of the largest one count as zero.
pub const RANK_RTOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Correlation,
    Monogamy,
    Shadow,
    Entropy,
    Marginal,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Correlation,
        Family::Monogamy,
        Family::Shadow,
        Family::Entropy,
        Family::Marginal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Correlation => "correlation",
            Family::Monogamy => "monogamy",
            Family::Shadow => "shadow",
            Family::Entropy => "entropy",
            Family::Marginal => "marginal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Label {
    Mask(PartyMask),
    Named(String),
}

impl Label {
    /// Masks render as bitstrings with party 1 leftmost.
    pub fn render(&self, parties: usize) -> String {
        match self {
            Label::Mask(m) => m.bitstring(parties),
            Label::Named(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintEntry {
    pub label: Label,
    pub value: f64,
    pub threshold: f64,
    pub margin: f64,
    /// `None` when the judgment is suppressed (non-theorem entries, or
    /// inputs that violate the preconditions).
    pub pass: Option<bool>,
    /// Whether the inequality holds for every state.
    pub theorem: bool,
}

impl ConstraintEntry {
    fn judged(label: Label, value: f64, threshold: f64, tol: f64) -> Self {
        let margin = value - threshold;
        Self {
            label,
            value,
            threshold,
            margin,
            pass: Some(margin >= -tol),
            theorem: true,
        }
    }

    fn unjudged(label: Label, value: f64, threshold: f64, theorem: bool) -> Self {
        Self {
            label,
            value,
            threshold,
            margin: value - threshold,
            pass: None,
            theorem,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintReport {
    pub family: Family,
    pub parties: usize,
    pub entries: Vec<ConstraintEntry>,
    pub tolerance: f64,
    pub notes: Vec<String>,
}

impl ConstraintReport {
    fn new(family: Family, parties: usize, tolerance: f64) -> Self {
        Self {
            family,
            parties,
            entries: Vec::new(),
            tolerance,
            notes: Vec::new(),
        }
    }

    /// No judged theorem entry failed.
    pub fn all_pass(&self) -> bool {
        self.entries
            .iter()
            .filter(|e| e.theorem)
            .all(|e| e.pass != Some(false))
    }

    pub fn worst_margin(&self) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.theorem && e.pass.is_some())
            .map(|e| e.margin)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn find(&self, label: &str) -> Option<&ConstraintEntry> {
        self.entries
            .iter()
            .find(|e| e.label.render(self.parties) == label)
    }
}

fn reject_empty(t: PartyMask) -> Result<()> {
    if t.is_empty() {
        Err(Error::InvalidParameter(
            "T = ∅ gives only the trivial constraint".into(),
        ))
    } else {
        Ok(())
    }
}

fn correlation_from_entropies(tau: &LinearEntropyVector, t: PartyMask) -> f64 {
    0.5 * tau.iter().map(|(s, v)| -s.sign_with(t) * v).sum::<f64>()
}

/// `(1/2) Σ_{S≠∅} (-1)^{|S∩T|+1} tau_S`, nonnegative for every state; for
/// `T ≠ ∅` it equals `C_T^2(rho)`.
pub fn correlation_constraint(rho: &DensityMatrix, t: PartyMask) -> Result<f64> {
    rho.dims().check_mask(t)?;
    reject_empty(t)?;
    Ok(correlation_from_entropies(&linear_entropies(rho), t))
}

pub fn correlation_report(rho: &DensityMatrix, tol: f64) -> ConstraintReport {
    let n = rho.dims().parties();
    let tau = linear_entropies(rho);
    let mut report = ConstraintReport::new(Family::Correlation, n, tol);
    for t in PartyMask::all(n).skip(1) {
        let v = correlation_from_entropies(&tau, t);
        report
            .entries
            .push(ConstraintEntry::judged(Label::Mask(t), v, 0.0, tol));
    }
    report
}

fn monogamy_from_entropies(tau: &LinearEntropyVector, t: PartyMask) -> f64 {
    let full = PartyMask::full(tau.parties());
    tau.iter()
        .filter(|(s, _)| *s != full)
        .map(|(s, v)| -s.sign_with(t) * v)
        .sum()
}

/// `Σ_{∅≠S⊊{1..N}} (-1)^{|S∩T|+1} C^2_{S|S^c}(psi)`.
pub fn monogamy_check(psi: &PureState, t: PartyMask) -> Result<f64> {
    psi.dims().check_mask(t)?;
    reject_empty(t)?;
    Ok(monogamy_from_entropies(&linear_entropies(&psi.to_density()), t))
}

/// Largest `1 - Tr(rho^2)` treated as a pure state.
pub const PURITY_TOL: f64 = 1e-10;

/// Monogamy for a density matrix that must be pure.
pub fn monogamy_check_density(rho: &DensityMatrix, t: PartyMask) -> Result<f64> {
    ensure_pure(rho)?;
    rho.dims().check_mask(t)?;
    reject_empty(t)?;
    Ok(monogamy_from_entropies(&linear_entropies(rho), t))
}

pub fn is_pure(rho: &DensityMatrix) -> bool {
    (1.0 - purity(rho)).abs() <= PURITY_TOL
}

fn ensure_pure(rho: &DensityMatrix) -> Result<()> {
    if is_pure(rho) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "monogamy needs a pure state, purity is {}",
            purity(rho)
        )))
    }
}

pub fn monogamy_report(rho: &DensityMatrix, tol: f64) -> Result<ConstraintReport> {
    ensure_pure(rho)?;
    let n = rho.dims().parties();
    let tau = linear_entropies(rho);
    let mut report = ConstraintReport::new(Family::Monogamy, n, tol);
    for t in PartyMask::all(n).skip(1) {
        let v = monogamy_from_entropies(&tau, t);
        report
            .entries
            .push(ConstraintEntry::judged(Label::Mask(t), v, 0.0, tol));
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShadowValue {
    pub value: f64,
    /// Both inputs Hermitian with spectrum above `-TOL_PSD`.
    pub inputs_psd: bool,
}

fn is_psd(m: &DenseOperator) -> bool {
    matches!(min_eigenvalue(m), Ok(v) if v >= -TOL_PSD)
}

/// Purity-like overlaps `Tr[Tr_{S^c}(M1) Tr_{S^c}(M2)]` for every `S`.
fn reduced_overlaps(m1: &DenseOperator, m2: &DenseOperator) -> Result<Vec<f64>> {
    let n = m1.dims().parties();
    PartyMask::all(n)
        .map(|s| {
            if s.is_empty() {
                Ok((m1.trace() * m2.trace()).re)
            } else {
                let a = partial_trace(m1, s)?;
                let b = partial_trace(m2, s)?;
                Ok(a.trace_product(&b).re)
            }
        })
        .collect()
}

/// `Σ_S (-1)^{|S∩T|} Tr[Tr_{S^c}(M1) Tr_{S^c}(M2)]`, nonnegative whenever
/// both operators are PSD. Normalization is not required.
pub fn shadow_value(m1: &DenseOperator, m2: &DenseOperator, t: PartyMask) -> Result<ShadowValue> {
    if m1.dims() != m2.dims() {
        return Err(Error::DimensionMismatch(format!(
            "shadow operands on {} and {}",
            m1.dims(),
            m2.dims()
        )));
    }
    m1.dims().check_mask(t)?;
    let overlaps = reduced_overlaps(m1, m2)?;
    Ok(ShadowValue {
        value: signed_purity_sum(&overlaps, t),
        inputs_psd: is_psd(m1) && is_psd(m2),
    })
}

pub fn shadow_report(m1: &DenseOperator, m2: &DenseOperator, tol: f64) -> Result<ConstraintReport> {
    if m1.dims() != m2.dims() {
        return Err(Error::DimensionMismatch(format!(
            "shadow operands on {} and {}",
            m1.dims(),
            m2.dims()
        )));
    }
    let n = m1.dims().parties();
    let overlaps = reduced_overlaps(m1, m2)?;
    let psd = is_psd(m1) && is_psd(m2);
    let mut report = ConstraintReport::new(Family::Shadow, n, tol);
    if !psd {
        report
            .notes
            .push("inputs are not positive semidefinite; pass/fail suppressed".into());
    }
    for t in PartyMask::all(n) {
        let v = signed_purity_sum(&overlaps, t);
        report.entries.push(if psd {
            ConstraintEntry::judged(Label::Mask(t), v, 0.0, tol)
        } else {
            ConstraintEntry::unjudged(Label::Mask(t), v, 0.0, true)
        });
    }
    Ok(report)
}

fn tau_name(m: PartyMask) -> String {
    let digits: Vec<String> = m.parties().map(|p| p.to_string()).collect();
    if m.parties().all(|p| p < 10) {
        format!("tau_{}", digits.concat())
    } else {
        format!("tau_{{{}}}", digits.join(","))
    }
}

/// One linear-entropy inequality `Σ lhs <= Σ rhs` (with multiplicities).
struct EntropyInequality {
    tag: &'static str,
    lhs: Vec<(f64, PartyMask)>,
    rhs: Vec<(f64, PartyMask)>,
    theorem: bool,
}

impl EntropyInequality {
    fn side_text(side: &[(f64, PartyMask)]) -> String {
        side.iter()
            .enumerate()
            .map(|(i, (c, m))| {
                let name = tau_name(*m);
                let body = if (*c - 1.0).abs() < 1e-15 {
                    name
                } else if (*c + 1.0).abs() < 1e-15 {
                    format!("-{name}")
                } else {
                    format!("{c}*{name}")
                };
                if i == 0 {
                    body
                } else if let Some(stripped) = body.strip_prefix('-') {
                    format!(" - {stripped}")
                } else {
                    format!(" + {body}")
                }
            })
            .collect()
    }

    fn label(&self) -> String {
        format!(
            "{}: {} <= {}",
            self.tag,
            Self::side_text(&self.lhs),
            Self::side_text(&self.rhs)
        )
    }

    fn entry(&self, tau: &LinearEntropyVector, tol: f64) -> ConstraintEntry {
        let eval = |side: &[(f64, PartyMask)]| side.iter().map(|(c, m)| c * tau.get(*m)).sum::<f64>();
        let (lhs, rhs) = (eval(&self.lhs), eval(&self.rhs));
        let label = Label::Named(self.label());
        if self.theorem {
            ConstraintEntry::judged(label, rhs, lhs, tol)
        } else {
            ConstraintEntry::unjudged(label, rhs, lhs, false)
        }
    }
}

fn bipartite_family(a: PartyMask, b: PartyMask) -> [EntropyInequality; 3] {
    let ab = a.union(b);
    [
        EntropyInequality {
            tag: "subadditivity",
            lhs: vec![(1.0, ab)],
            rhs: vec![(1.0, a), (1.0, b)],
            theorem: true,
        },
        EntropyInequality {
            tag: "araki-lieb",
            lhs: vec![(1.0, a), (-1.0, b)],
            rhs: vec![(1.0, ab)],
            theorem: true,
        },
        EntropyInequality {
            tag: "araki-lieb",
            lhs: vec![(1.0, b), (-1.0, a)],
            rhs: vec![(1.0, ab)],
            theorem: true,
        },
    ]
}

fn three_party_family() -> Vec<EntropyInequality> {
    let m = |ps: &[usize]| PartyMask::from_parties(ps.iter().copied());
    let all = m(&[1, 2, 3]);
    let mut out = Vec::new();
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        out.extend(bipartite_family(m(&[i]), m(&[j])));
    }
    for i in 1..=3 {
        out.extend(bipartite_family(m(&[i]), all.difference(m(&[i]))));
    }
    out.push(EntropyInequality {
        tag: "inversion",
        lhs: vec![(1.0, m(&[1, 2])), (1.0, m(&[1, 3])), (1.0, m(&[2, 3]))],
        rhs: vec![(1.0, m(&[1])), (1.0, m(&[2])), (1.0, m(&[3])), (1.0, all)],
        theorem: true,
    });
    // a, b outer parties, c the middle one
    for c in 1..=3 {
        let (a, b) = match c {
            1 => (2, 3),
            2 => (1, 3),
            _ => (1, 2),
        };
        out.push(EntropyInequality {
            tag: "weak-monotonicity",
            lhs: vec![(1.0, m(&[a])), (1.0, m(&[b]))],
            rhs: vec![(1.0, m(&[a, c])), (1.0, m(&[c, b])), (2.0, all)],
            theorem: true,
        });
    }
    // tau_a + tau_123 <= tau_ca + tau_ab + 2 tau_b for ordered (a, b)
    for a in 1..=3 {
        for b in 1..=3 {
            if a == b {
                continue;
            }
            let c = 6 - a - b;
            out.push(EntropyInequality {
                tag: "corrected-ssa",
                lhs: vec![(1.0, m(&[a])), (1.0, all)],
                rhs: vec![(1.0, m(&[c, a])), (1.0, m(&[a, b])), (2.0, m(&[b]))],
                theorem: true,
            });
        }
    }
    for mid in 1..=3 {
        let (a, b) = match mid {
            1 => (2, 3),
            2 => (1, 3),
            _ => (1, 2),
        };
        out.push(EntropyInequality {
            tag: "ssa-analogue",
            lhs: vec![(1.0, m(&[mid])), (1.0, all)],
            rhs: vec![(1.0, m(&[a, mid])), (1.0, m(&[mid, b]))],
            theorem: false,
        });
        out.push(EntropyInequality {
            tag: "reverse-ssa-analogue",
            lhs: vec![(1.0, m(&[a, mid])), (1.0, m(&[mid, b]))],
            rhs: vec![(1.0, m(&[mid])), (1.0, all)],
            theorem: false,
        });
    }
    out
}

/// `Σ_{|S| even, S≠∅} tau_S <= Σ_{|S| odd} tau_S`, the full-mask
/// correlation constraint written as an entropy inequality.
fn generalized_subadditivity(n: usize) -> EntropyInequality {
    let (odd, even): (Vec<PartyMask>, Vec<PartyMask>) =
        PartyMask::all(n).skip(1).partition(|s| s.is_odd());
    EntropyInequality {
        tag: "generalized-subadditivity",
        lhs: even.into_iter().map(|s| (1.0, s)).collect(),
        rhs: odd.into_iter().map(|s| (1.0, s)).collect(),
        theorem: true,
    }
}

/// Linear-entropy inequalities available for the party count of `rho`.
/// Two parties: subadditivity and Araki-Lieb. Three parties: those on every
/// pair and cut, the symmetric inversion inequality, the weak-monotonicity
/// analogue, the corrected strong-subadditivity form in all relabelings,
/// and the strong-subadditivity analogue plus its reverse, which fail for
/// some states and are reported unjudged.
pub fn entropy_inequalities(rho: &DensityMatrix, tol: f64) -> ConstraintReport {
    let n = rho.dims().parties();
    let tau = linear_entropies(rho);
    let mut report = ConstraintReport::new(Family::Entropy, n, tol);
    let family: Vec<EntropyInequality> = match n {
        1 => {
            report
                .notes
                .push("single party: no entropy inequalities apply".into());
            Vec::new()
        }
        2 => bipartite_family(PartyMask::single(1), PartyMask::single(2)).into(),
        3 => three_party_family(),
        _ => {
            report.notes.push(format!(
                "{n} parties: only the generalized subadditivity inequality is evaluated"
            ));
            vec![generalized_subadditivity(n)]
        }
    };
    report
        .entries
        .extend(family.iter().map(|ineq| ineq.entry(&tau, tol)));
    report
}

/// `I_T(rho) + rho` for odd `|T|`, which only involves proper marginals.
#[derive(Clone, Debug, PartialEq)]
pub struct MarginalWitness {
    pub t: PartyMask,
    pub operator: DenseOperator,
    pub min_eig: f64,
}

/// Marginal `rho_S` for every nonempty proper `S`.
pub type Marginals = BTreeMap<PartyMask, DenseOperator>;

/// All nonempty proper marginals of `rho`.
pub fn marginals_of(rho: &DensityMatrix) -> Result<Marginals> {
    let n = rho.dims().parties();
    let full = PartyMask::full(n);
    PartyMask::all(n)
        .filter(|s| !s.is_empty() && *s != full)
        .map(|s| Ok((s, partial_trace(rho.op(), s)?)))
        .collect()
}

/// Positions of `s` inside `within`, as a mask over `within`'s parties.
fn relative_mask(s: PartyMask, within: PartyMask) -> PartyMask {
    PartyMask::from_parties(
        within
            .parties()
            .enumerate()
            .filter(|(_, p)| s.contains(*p))
            .map(|(i, _)| i + 1),
    )
}

fn check_marginals(marginals: &Marginals, dims: &SubsystemDims) -> Result<()> {
    let n = dims.parties();
    let full = dims.full_mask();
    for s in PartyMask::all(n).filter(|s| !s.is_empty() && *s != full) {
        let m = marginals
            .get(&s)
            .ok_or_else(|| Error::MissingMarginal(s.to_string()))?;
        if m.dims() != &dims.restrict(s)? {
            return Err(Error::DimensionMismatch(format!(
                "marginal {s} has dims {}, expected {}",
                m.dims(),
                dims.restrict(s)?
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > MARGINAL_OVERLAP_TOL || tr.im.abs() > MARGINAL_OVERLAP_TOL {
            return Err(Error::InconsistentMarginals {
                subset: s.to_string(),
                deviation: (tr - 1.0).norm(),
            });
        }
    }
    for (&big, m_big) in marginals.iter() {
        for (&small, m_small) in marginals.iter() {
            if small == big || !small.is_subset_of(big) {
                continue;
            }
            let reduced = partial_trace(m_big, relative_mask(small, big))?;
            let dev = reduced.max_abs_diff(m_small);
            if dev > MARGINAL_OVERLAP_TOL {
                return Err(Error::InconsistentMarginals {
                    subset: format!("{small} inside {big}"),
                    deviation: dev,
                });
            }
        }
    }
    Ok(())
}

fn witness_from(marginals: &Marginals, dims: &SubsystemDims, t: PartyMask) -> Result<MarginalWitness> {
    let full = dims.full_mask();
    let mut acc = DenseOperator::identity(dims);
    for s in PartyMask::all(dims.parties()).filter(|s| !s.is_empty() && *s != full) {
        let lifted = embed(&marginals[&s], s, dims)?;
        add_scaled(acc.matrix_mut(), s.sign_with(t), lifted.matrix());
    }
    let min_eig = min_eigenvalue(&acc)?;
    Ok(MarginalWitness {
        t,
        operator: acc,
        min_eig,
    })
}

/// Witnesses for every odd `|T|` from supplied marginals. Overlaps are
/// checked for consistency first. A negative `min_eig` proves that no
/// joint state has these marginals.
pub fn marginal_witnesses_from_marginals(
    marginals: &Marginals,
    dims: &SubsystemDims,
) -> Result<Vec<MarginalWitness>> {
    if dims.parties() < 2 {
        return Err(Error::InvalidParameter(
            "marginal witnesses need at least two parties".into(),
        ));
    }
    check_marginals(marginals, dims)?;
    let masks: Vec<PartyMask> = PartyMask::all(dims.parties()).filter(|t| t.is_odd()).collect();
    masks
        .par_iter()
        .map(|&t| witness_from(marginals, dims, t))
        .collect()
}

pub fn marginal_witnesses(rho: &DensityMatrix) -> Result<Vec<MarginalWitness>> {
    marginal_witnesses_from_marginals(&marginals_of(rho)?, rho.dims())
}

pub fn marginal_report(witnesses: &[MarginalWitness], parties: usize, tol: f64) -> ConstraintReport {
    let mut report = ConstraintReport::new(Family::Marginal, parties, tol);
    for w in witnesses {
        report
            .entries
            .push(ConstraintEntry::judged(Label::Mask(w.t), w.min_eig, 0.0, tol));
    }
    report
}

/// Numerical rank: singular values above `RANK_RTOL * σ_max`.
pub fn numerical_rank(m: &DMatrix<f64>) -> usize {
    let sv = m.clone().singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_RTOL * max).count()
}

fn product_family_state(n: usize, d: usize, s: PartyMask) -> Result<DensityMatrix> {
    let one = SubsystemDims::new(vec![d])?;
    let mut pure = vec![0.0; d];
    pure[0] = 1.0;
    let mixed = vec![1.0 / d as f64; d];
    let mut op: Option<DenseOperator> = None;
    for k in 1..=n {
        let f = DenseOperator::diagonal(&one, if s.contains(k) { &pure } else { &mixed })?;
        op = Some(match op {
            None => f,
            Some(acc) => crate::tensor::kron(&acc, &f)?,
        });
    }
    DensityMatrix::new(op.expect("n >= 1"))
}

/// `M[S, T] = C_T^2(rho(S))` over the product family with `|0><0|` on `S`
/// and `1/d` elsewhere.
pub fn independence_matrix(n: usize, d: usize) -> Result<DMatrix<f64>> {
    if !(1..=5).contains(&n) {
        return Err(Error::InvalidParameter(format!("n = {n} outside 1..=5")));
    }
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d = {d} below 2")));
    }
    let size = 1usize << n;
    let rows: Vec<Vec<f64>> = PartyMask::all(n)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&s| {
            let rho = product_family_state(n, d, s)?;
            PartyMask::all(n).map(|t| c_t_squared(&rho, t)).collect()
        })
        .collect::<Result<_>>()?;
    Ok(DMatrix::from_fn(size, size, |r, c| rows[r][c]))
}

/// Rank of [`independence_matrix`]; full rank `2^n` shows the invariants
/// `C_T^2` are linearly independent functions of the state.
pub fn independence_rank(n: usize, d: usize) -> Result<usize> {
    Ok(numerical_rank(&independence_matrix(n, d)?))
}

/// `M[S, T''] = C^2_{T}(psi(S))` for `S, T'' ⊆ {2..n}` with `T` the even
/// completion of `T''`.
pub fn independence_matrix_pure(n: usize) -> Result<DMatrix<f64>> {
    if !(2..=5).contains(&n) {
        return Err(Error::InvalidParameter(format!("n = {n} outside 2..=5")));
    }
    let subsets: Vec<PartyMask> = PartyMask::all(n).filter(|s| !s.contains(1)).collect();
    let rows: Vec<Vec<f64>> = subsets
        .par_iter()
        .map(|&s| {
            let rho = crate::zoo::psi_family(n, s)?.to_density();
            subsets
                .iter()
                .map(|&t| c_t_squared(&rho, crate::zoo::even_completion(t)))
                .collect()
        })
        .collect::<Result<_>>()?;
    let k = subsets.len();
    Ok(DMatrix::from_fn(k, k, |r, c| rows[r][c]))
}

/// Rank of [`independence_matrix_pure`]; full rank is `2^(n-1)`.
pub fn independence_rank_pure(n: usize) -> Result<usize> {
    Ok(numerical_rank(&independence_matrix_pure(n)?))
}

/// Rank of the sign vectors `(-1)^{|S∩T|}` over proper `S`, one row per odd
/// `T`. Measures linear independence of the witness sign patterns only.
pub fn witness_sign_rank(n: usize) -> usize {
    let full = PartyMask::full(n);
    let cols: Vec<PartyMask> = PartyMask::all(n).filter(|s| *s != full).collect();
    let rows: Vec<PartyMask> = PartyMask::all(n).filter(|t| t.is_odd()).collect();
    let m = DMatrix::from_fn(rows.len(), cols.len(), |r, c| cols[c].sign_with(rows[r]));
    numerical_rank(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{self, StateKind, StateRecipe};

    fn state(kind: StateKind, dims: Vec<usize>) -> DensityMatrix {
        zoo::build(&StateRecipe::new(kind, SubsystemDims::new(dims).unwrap()))
            .unwrap()
            .to_density()
    }

    fn ghz3() -> DensityMatrix {
        state(StateKind::Ghz, vec![2, 2, 2])
    }

    #[test]
    fn correlation_examples() {
        let mm = DensityMatrix::maximally_mixed(&SubsystemDims::qubits(2).unwrap());
        let v = correlation_constraint(&mm, PartyMask::full(2)).unwrap();
        assert!((v - 0.25).abs() < 1e-14);
        let v = correlation_constraint(&mm, PartyMask::single(1)).unwrap();
        assert!((v - 0.75).abs() < 1e-14);
        let prod = state(StateKind::ProductBasis, vec![2, 3, 2]);
        for t in PartyMask::all(3).skip(1) {
            assert!(correlation_constraint(&prod, t).unwrap().abs() < 1e-14);
        }
        assert!(correlation_constraint(&mm, PartyMask::EMPTY).is_err());
    }

    #[test]
    fn bell_correlation_values() {
        let bell = state(StateKind::BellPhiPlus, vec![2, 2]);
        let r = correlation_report(&bell, DEFAULT_TOL);
        let labels: Vec<String> = r.entries.iter().map(|e| e.label.render(2)).collect();
        assert_eq!(labels, ["10", "01", "11"]);
        let values: Vec<f64> = r.entries.iter().map(|e| e.value).collect();
        for (v, w) in values.iter().zip([0.0, 0.0, 1.0]) {
            assert!((v - w).abs() < 1e-14);
        }
        assert!(r.all_pass());
    }

    #[test]
    fn monogamy_examples() {
        let g = zoo::ghz(SubsystemDims::qubits(3).unwrap()).unwrap();
        assert!(monogamy_check(&g, PartyMask::full(3)).unwrap().abs() < 1e-13);
        assert!((monogamy_check(&g, PartyMask::from_parties([1, 2])).unwrap() - 2.0).abs() < 1e-13);
        let prod = PureState::basis(SubsystemDims::qubits(3).unwrap(), &[0, 1, 1]).unwrap();
        assert!(monogamy_check(&prod, PartyMask::single(2)).unwrap().abs() < 1e-14);
        let mixed = DensityMatrix::maximally_mixed(&SubsystemDims::qubits(2).unwrap());
        assert!(monogamy_check_density(&mixed, PartyMask::single(1)).is_err());
        assert!(monogamy_report(&mixed, DEFAULT_TOL).is_err());
    }

    #[test]
    fn shadow_examples() {
        let q = SubsystemDims::qubits(1).unwrap();
        let p0 = DenseOperator::diagonal(&q, &[1.0, 0.0]).unwrap();
        let v = shadow_value(&p0, &p0, PartyMask::single(1)).unwrap();
        assert!(v.value.abs() < 1e-15 && v.inputs_psd);
        let mm = DenseOperator::diagonal(&q, &[0.5, 0.5]).unwrap();
        let v = shadow_value(&mm, &mm, PartyMask::single(1)).unwrap();
        assert!((v.value - 0.5).abs() < 1e-15);
        let neg = DenseOperator::diagonal(&q, &[1.0, -0.5]).unwrap();
        let v = shadow_value(&neg, &mm, PartyMask::single(1)).unwrap();
        assert!(!v.inputs_psd);
        let r = shadow_report(&neg, &mm, DEFAULT_TOL).unwrap();
        assert!(r.entries.iter().all(|e| e.pass.is_none()));
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn bell_entropy_report() {
        let r = entropy_inequalities(&state(StateKind::BellPhiPlus, vec![2, 2]), DEFAULT_TOL);
        assert_eq!(r.entries.len(), 3);
        assert!(r.all_pass());
        let sub = r.find("subadditivity: tau_12 <= tau_1 + tau_2").unwrap();
        assert!((sub.margin - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rho_ii_falsifies_ssa_analogue() {
        let r = entropy_inequalities(&state(StateKind::RhoII, vec![2, 2, 2]), DEFAULT_TOL);
        let e = r.find("ssa-analogue: tau_2 + tau_123 <= tau_12 + tau_23").unwrap();
        assert!((e.threshold - 2.0).abs() < 1e-12);
        assert!((e.value - 1.5).abs() < 1e-12);
        assert!((e.margin + 0.5).abs() < 1e-12);
        assert_eq!(e.pass, None);
        assert!(!e.theorem);
        assert!(r.all_pass());
    }

    #[test]
    fn three_party_entry_count() {
        let r = entropy_inequalities(&ghz3(), DEFAULT_TOL);
        // 18 bipartite + 1 + 3 + 6 + 6 unjudged
        assert_eq!(r.entries.len(), 34);
        assert_eq!(r.entries.iter().filter(|e| !e.theorem).count(), 6);
        let four = entropy_inequalities(&state(StateKind::Ghz, vec![2, 2, 2, 2]), DEFAULT_TOL);
        assert_eq!(four.entries.len(), 1);
        assert_eq!(four.notes.len(), 1);
    }

    #[test]
    fn ghz_marginals_compatible() {
        let ws = marginal_witnesses(&ghz3()).unwrap();
        assert_eq!(ws.len(), 4);
        assert!(ws.iter().all(|w| w.min_eig >= -1e-9));
    }

    #[test]
    fn missing_and_inconsistent_marginals() {
        let rho = ghz3();
        let mut m = marginals_of(&rho).unwrap();
        let full = m.clone();
        m.remove(&PartyMask::from_parties([1, 3]));
        assert!(matches!(
            marginal_witnesses_from_marginals(&m, rho.dims()),
            Err(Error::MissingMarginal(_))
        ));
        let mut bad = full.clone();
        let q = SubsystemDims::qubits(1).unwrap();
        bad.insert(PartyMask::single(2), DenseOperator::diagonal(&q, &[0.9, 0.1]).unwrap());
        assert!(matches!(
            marginal_witnesses_from_marginals(&bad, rho.dims()),
            Err(Error::InconsistentMarginals { .. })
        ));
        assert!(marginal_witnesses_from_marginals(&full, rho.dims()).is_ok());
    }

    #[test]
    fn incompatible_marginals_detected() {
        // three pairwise singlet-like marginals cannot come from one state
        let dims = SubsystemDims::qubits(3).unwrap();
        let bell = zoo::bell_phi_plus().projector();
        let q = SubsystemDims::qubits(1).unwrap();
        let half = DenseOperator::diagonal(&q, &[0.5, 0.5]).unwrap();
        let mut m = Marginals::new();
        for p in 1..=3 {
            m.insert(PartyMask::single(p), half.clone());
        }
        for pair in [[1, 2], [1, 3], [2, 3]] {
            m.insert(PartyMask::from_parties(pair), bell.clone());
        }
        let ws = marginal_witnesses_from_marginals(&m, &dims).unwrap();
        assert!(ws.iter().any(|w| w.min_eig < -1e-6));
    }

    #[test]
    fn independence_small_cases() {
        let m = independence_matrix(1, 2).unwrap();
        assert!((m[(0, 0)] - 1.5).abs() < 1e-14);
        assert!((m[(0, 1)] - 0.5).abs() < 1e-14);
        assert!((m[(1, 0)] - 2.0).abs() < 1e-14);
        assert!(m[(1, 1)].abs() < 1e-14);
        assert_eq!(independence_rank(1, 2).unwrap(), 2);
        assert_eq!(independence_rank(2, 2).unwrap(), 4);
        assert_eq!(independence_rank(2, 3).unwrap(), 4);
        assert_eq!(independence_rank_pure(3).unwrap(), 4);
        assert!(independence_rank(6, 2).is_err());
        assert_eq!(witness_sign_rank(3), 4);
    }
}
