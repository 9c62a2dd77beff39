//! The generalized T-inversion map
//!
//! `I_T(X) = Σ_S (-1)^{|S∩T|} Tr_{S^c}(X) ⊗ 1_{S^c}`
//!
//! evaluated three ways: the subset sum (reference), the product of the
//! commuting single-party factors `Tr_j(·) ⊗ 1_j ± id`, and the Kraus form
//! built from Gell-Mann generators acting on the complex conjugate. Also
//! coarse graining, the weighted detection maps and Choi matrices.

use crate::error::{Error, Result};
use crate::gellmann;
use crate::tensor::{
    add_scaled, dimension_cap, reduce_and_pad, DenseOperator, DensityMatrix, Matrix, PartyMask, SubsystemDims,
    C64,
};

/// Sum form applied to an arbitrary operator. The map is linear, so this
/// is also the extension used for Choi matrices.
pub fn t_inversion(op: &DenseOperator, t: PartyMask) -> Result<DenseOperator> {
    let dims = op.dims();
    dims.check_mask(t)?;
    let mut acc = DenseOperator::zeros(dims);
    for s in PartyMask::all(dims.parties()) {
        let term = reduce_and_pad(op, s)?;
        let sign = s.sign_with(t);
        add_scaled(acc.matrix_mut(), sign, term.matrix());
    }
    Ok(acc)
}

/// `I_T(rho)` via the subset sum.
pub fn invert_sum(rho: &DensityMatrix, t: PartyMask) -> Result<DenseOperator> {
    t_inversion(rho.op(), t)
}

/// Universal state inversion, `T = {1..N}`.
pub fn universal_inversion(rho: &DensityMatrix) -> Result<DenseOperator> {
    invert_sum(rho, rho.dims().full_mask())
}

/// One factor `Tr_j(X) ⊗ 1_j + sign X`.
fn apply_factor(x: &DenseOperator, party: usize, sign: f64) -> Result<DenseOperator> {
    let n = x.dims().parties();
    let rest = PartyMask::single(party).complement(n);
    let mut out = reduce_and_pad(x, rest)?;
    add_scaled(out.matrix_mut(), sign, x.matrix());
    Ok(out)
}

/// Product form, applying parties in the given order.
pub fn invert_product_ordered(
    rho: &DensityMatrix,
    t: PartyMask,
    order: &[usize],
) -> Result<DenseOperator> {
    let dims = rho.dims();
    dims.check_mask(t)?;
    let mut seen = PartyMask::EMPTY;
    for &p in order {
        if p == 0 || p > dims.parties() || seen.contains(p) {
            return Err(Error::InvalidParameter(format!("bad party order {order:?}")));
        }
        seen = seen.union(PartyMask::single(p));
    }
    if seen != dims.full_mask() {
        return Err(Error::InvalidParameter(format!("bad party order {order:?}")));
    }
    let mut x = rho.op().clone();
    for &p in order {
        let sign = if t.contains(p) { -1.0 } else { 1.0 };
        x = apply_factor(&x, p, sign)?;
    }
    Ok(x)
}

/// `I_T(rho)` via the product of single-party factors, party 1 first.
pub fn invert_product(rho: &DensityMatrix, t: PartyMask) -> Result<DenseOperator> {
    let order: Vec<usize> = (1..=rho.dims().parties()).collect();
    invert_product_ordered(rho, t, &order)
}

/// `coef * Σ_m (h_m)_party X (h_m)_party` for local operators on one party.
fn local_conjugation_sum(
    x: &Matrix,
    dims: &SubsystemDims,
    party: usize,
    ops: &[&Matrix],
    coef: f64,
) -> Matrix {
    let d = dims.dim(party);
    let stride: usize = dims.as_slice()[party..].iter().product();
    let rest = dims.offsets(PartyMask::single(party).complement(dims.parties()));
    let total = dims.total();
    let mut out = Matrix::zeros(total, total);
    let mut block = Matrix::zeros(d, d);
    let scale = C64::new(coef, 0.0);
    for &rc in &rest {
        for &rr in &rest {
            let mut nonzero = false;
            for b in 0..d {
                for a in 0..d {
                    let v = x[(rr + a * stride, rc + b * stride)];
                    nonzero |= v != C64::new(0.0, 0.0);
                    block[(a, b)] = v;
                }
            }
            if !nonzero {
                continue;
            }
            let mut acc = Matrix::zeros(d, d);
            for h in ops {
                acc += *h * &block * *h;
            }
            for b in 0..d {
                for a in 0..d {
                    out[(rr + a * stride, rc + b * stride)] = acc[(a, b)] * scale;
                }
            }
        }
    }
    out
}

/// `I_T(rho)` via the Kraus form acting on `rho^*`: parties outermost,
/// generator indices innermost, y-type generators on parties in `T` and
/// identity/x/z-type generators elsewhere, each party weighted by `2/d_j`.
pub fn invert_kraus(rho: &DensityMatrix, t: PartyMask) -> Result<DenseOperator> {
    let dims = rho.dims();
    dims.check_mask(t)?;
    let mut x = rho.matrix().map(|z| z.conj());
    for party in 1..=dims.parties() {
        let d = dims.dim(party);
        let basis = gellmann::basis(d)?;
        let indices = if t.contains(party) {
            basis.minus_indices()
        } else {
            basis.plus_indices()
        };
        let ops: Vec<&Matrix> = indices.iter().map(|&m| basis.get(m)).collect();
        x = local_conjugation_sum(&x, dims, party, &ops, 2.0 / d as f64);
    }
    DenseOperator::new(dims.clone(), x)
}

/// Partition of `{1..N}` into ordered disjoint nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grouping {
    parties: usize,
    blocks: Vec<PartyMask>,
}

impl Grouping {
    pub fn new(parties: usize, blocks: Vec<PartyMask>) -> Result<Self> {
        let mut seen = PartyMask::EMPTY;
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidGrouping("empty block".into()));
            }
            if !b.fits(parties) {
                return Err(Error::InvalidGrouping(format!(
                    "block {b} exceeds {parties} parties"
                )));
            }
            if !b.intersection(seen).is_empty() {
                return Err(Error::InvalidGrouping(format!("block {b} overlaps another")));
            }
            seen = seen.union(*b);
        }
        if seen != PartyMask::full(parties) {
            return Err(Error::InvalidGrouping(format!(
                "blocks cover {seen}, not all {parties} parties"
            )));
        }
        Ok(Self { parties, blocks })
    }

    /// Every party in its own block.
    pub fn singletons(parties: usize) -> Self {
        Self {
            parties,
            blocks: (1..=parties).map(PartyMask::single).collect(),
        }
    }

    pub fn blocks(&self) -> &[PartyMask] {
        &self.blocks
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    /// Fine-grained masks whose parity on each block matches the coarse
    /// sign of that block.
    pub fn matching_fine_masks(&self, t_coarse: PartyMask) -> Vec<PartyMask> {
        PartyMask::all(self.parties)
            .filter(|t| {
                self.blocks
                    .iter()
                    .enumerate()
                    .all(|(b, block)| t.intersection(*block).is_odd() == t_coarse.contains(b + 1))
            })
            .collect()
    }
}

/// Coarse-grained inversion: the average of fine-grained `I_T` over the
/// masks returned by [`Grouping::matching_fine_masks`], weighted by
/// `Π_b 2^{-(n_b-1)}`.
pub fn coarse_grain_invert(
    rho: &DensityMatrix,
    grouping: &Grouping,
    t_coarse: PartyMask,
) -> Result<DenseOperator> {
    let dims = rho.dims();
    if grouping.parties() != dims.parties() {
        return Err(Error::InvalidGrouping(format!(
            "grouping over {} parties for a {}-party state",
            grouping.parties(),
            dims.parties()
        )));
    }
    if !t_coarse.fits(grouping.blocks().len()) {
        return Err(Error::InvalidMask {
            mask: t_coarse.bits(),
            parties: grouping.blocks().len(),
        });
    }
    let weight: f64 = grouping
        .blocks()
        .iter()
        .map(|b| 0.5f64.powi(b.len() as i32 - 1))
        .product();
    let mut acc = DenseOperator::zeros(dims);
    for t in grouping.matching_fine_masks(t_coarse) {
        let term = invert_sum(rho, t)?;
        add_scaled(acc.matrix_mut(), weight, term.matrix());
    }
    Ok(acc)
}

/// Parameters of `Π_{j∈T}[Tr_j(·)1_j − α_j id] Π_{k∈act_on∖T}[Tr_k(·)1_k + β_k id]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DetectionParams {
    parties: usize,
    act_on: PartyMask,
    t: PartyMask,
    /// indexed by party - 1; only entries for parties in `t` matter
    alpha: Vec<f64>,
    /// indexed by party - 1; only entries for parties in `act_on \ t` matter
    beta: Vec<f64>,
}

impl DetectionParams {
    /// `alpha` lists one weight per party of `t` and `beta` one per party of
    /// `act_on \ t`, both in ascending party order. A single value is
    /// broadcast.
    pub fn new(
        parties: usize,
        act_on: PartyMask,
        t: PartyMask,
        alpha: &[f64],
        beta: &[f64],
    ) -> Result<Self> {
        if !act_on.fits(parties) {
            return Err(Error::InvalidMask {
                mask: act_on.bits(),
                parties,
            });
        }
        if !t.is_subset_of(act_on) {
            return Err(Error::InvalidParameter(format!("T = {t} is not inside act_on = {act_on}")));
        }
        let plus = act_on.difference(t);
        let alpha_full = spread(parties, t, alpha, "alpha")?;
        let beta_full = spread(parties, plus, beta, "beta")?;
        Ok(Self {
            parties,
            act_on,
            t,
            alpha: alpha_full,
            beta: beta_full,
        })
    }

    /// The reduction map `Tr(X) 1 − X` on the parties in `t`.
    pub fn reduction(parties: usize, t: PartyMask) -> Result<Self> {
        Self::new(parties, t, t, &[1.0], &[])
    }

    pub fn act_on(&self) -> PartyMask {
        self.act_on
    }

    pub fn t(&self) -> PartyMask {
        self.t
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn alpha(&self, party: usize) -> f64 {
        self.alpha[party - 1]
    }

    pub fn beta(&self, party: usize) -> f64 {
        self.beta[party - 1]
    }
}

fn spread(parties: usize, mask: PartyMask, values: &[f64], name: &str) -> Result<Vec<f64>> {
    let mut out = vec![0.0; parties];
    let members: Vec<usize> = mask.parties().collect();
    let broadcast = values.len() == 1;
    if !members.is_empty() && !broadcast && values.len() != members.len() {
        return Err(Error::InvalidParameter(format!(
            "{} {name} values for {} parties",
            values.len(),
            members.len()
        )));
    }
    for (i, p) in members.iter().enumerate() {
        let v = if broadcast { values[0] } else { values[i] };
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidParameter(format!("{name} = {v} outside [0, 1]")));
        }
        out[p - 1] = v;
    }
    Ok(out)
}

/// The detection map applied to an arbitrary operator (linear).
pub fn detection_map(op: &DenseOperator, params: &DetectionParams) -> Result<DenseOperator> {
    let dims = op.dims();
    if params.parties != dims.parties() {
        return Err(Error::DimensionMismatch(format!(
            "detection parameters for {} parties on a {}-party operator",
            params.parties,
            dims.parties()
        )));
    }
    let mut x = op.clone();
    for p in params.act_on.parties() {
        let weight = if params.t.contains(p) {
            -params.alpha(p)
        } else {
            params.beta(p)
        };
        x = apply_factor(&x, p, weight)?;
    }
    Ok(x)
}

pub fn apply_detection_map(rho: &DensityMatrix, params: &DetectionParams) -> Result<DenseOperator> {
    detection_map(rho.op(), params)
}

/// Maps whose Choi matrices can be built.
#[derive(Clone, Debug, PartialEq)]
pub enum ChoiMap {
    /// `X ↦ I_T(X^T)`
    TInversionAfterTranspose(PartyMask),
    /// `X ↦ I_T(X)`
    TInversion(PartyMask),
    Detection(DetectionParams),
}

impl ChoiMap {
    pub fn apply(&self, x: &DenseOperator) -> Result<DenseOperator> {
        match self {
            ChoiMap::TInversionAfterTranspose(t) => t_inversion(&x.transpose(), *t),
            ChoiMap::TInversion(t) => t_inversion(x, *t),
            ChoiMap::Detection(p) => detection_map(x, p),
        }
    }
}

/// `Σ_ij |i><j| ⊗ Φ(|i><j|)` on `dims ++ dims`; PSD iff `Φ` is completely
/// positive. The input space must fit the dimension cap, so the Choi matrix
/// fits its square.
pub fn choi_matrix(map: &ChoiMap, dims: &SubsystemDims) -> Result<DenseOperator> {
    let cap = dimension_cap();
    let d = dims.total();
    if d > cap {
        return Err(Error::DimensionCap { total: d, cap });
    }
    let choi_dims = dims.concat_with_cap(dims, cap.saturating_mul(cap))?;
    let mut out = Matrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let mut e = DenseOperator::zeros(dims);
            e.matrix_mut()[(i, j)] = C64::new(1.0, 0.0);
            let img = map.apply(&e)?;
            out.view_mut((i * d, j * d), (d, d)).copy_from(img.matrix());
        }
    }
    DenseOperator::new(choi_dims, out)
}
