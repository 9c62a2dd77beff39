//! Local-unitary invariants `C_T^2(rho) = Tr[rho I_T(rho)]`.
//!
//! Values are kept squared; the square root is only taken for display.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::inversion::invert_sum;
use crate::tensor::{reduced_purities, DensityMatrix, PartyMask, PureState, TOL_PSD};

/// Largest imaginary part of `Tr[rho I_T(rho)]` accepted as rounding noise.
pub const TOL_IMAG: f64 = 1e-11;

/// `Tr[rho I_T(rho)]` through the inversion map.
pub fn c_t_squared(rho: &DensityMatrix, t: PartyMask) -> Result<f64> {
    let inverted = invert_sum(rho, t)?;
    let v = rho.op().trace_product(&inverted);
    if v.im.abs() > TOL_IMAG {
        return Err(Error::ImaginaryResidue { residue: v.im.abs() });
    }
    Ok(v.re)
}

/// `C_T = sqrt(max(C_T^2, 0))`.
pub fn c_t(rho: &DensityMatrix, t: PartyMask) -> Result<f64> {
    Ok(c_t_squared(rho, t)?.max(0.0).sqrt())
}

/// `Σ_S (-1)^{|S∩T|} Tr(rho_S^2)` from subsystem purities alone.
pub fn c_t_squared_via_purities(rho: &DensityMatrix, t: PartyMask) -> Result<f64> {
    rho.dims().check_mask(t)?;
    let purities = reduced_purities(rho.op())?;
    Ok(signed_purity_sum(&purities, t))
}

pub(crate) fn signed_purity_sum(purities: &[f64], t: PartyMask) -> f64 {
    purities
        .iter()
        .enumerate()
        .map(|(b, p)| PartyMask::from_bits(b as u32).sign_with(t) * p)
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantEntry {
    pub mask: PartyMask,
    /// `C_T^2`, with values in `[-TOL_PSD, 0)` reported as 0.
    pub value: f64,
    pub raw: f64,
    pub clamped: bool,
}

impl InvariantEntry {
    fn new(mask: PartyMask, raw: f64) -> Self {
        let clamped = (-TOL_PSD..0.0).contains(&raw);
        Self {
            mask,
            value: if clamped { 0.0 } else { raw },
            raw,
            clamped,
        }
    }

    /// `C_T`.
    pub fn root(&self) -> f64 {
        self.value.max(0.0).sqrt()
    }
}

/// `C_T^2` for every `T ⊆ {1..N}`, in ascending mask order.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantTable {
    parties: usize,
    entries: Vec<InvariantEntry>,
}

impl InvariantTable {
    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn entries(&self) -> &[InvariantEntry] {
        &self.entries
    }

    pub fn get(&self, t: PartyMask) -> f64 {
        self.entries[t.bits() as usize].value
    }
}

pub fn invariant_table(rho: &DensityMatrix) -> Result<InvariantTable> {
    let n = rho.dims().parties();
    let masks: Vec<PartyMask> = PartyMask::all(n).collect();
    let entries = masks
        .par_iter()
        .map(|&t| c_t_squared(rho, t).map(|v| InvariantEntry::new(t, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantTable { parties: n, entries })
}

/// `C_{1..N}(psi)`.
pub fn distributed_concurrence(psi: &PureState) -> Result<f64> {
    let rho = psi.to_density();
    c_t(&rho, rho.dims().full_mask())
}

/// `C^2_{S|S^c}(psi) = tau_S = 2 [1 - Tr(rho_S^2)]` for `∅ ≠ S ⊊ {1..N}`.
pub fn bipartite_concurrence_squared(psi: &PureState, s: PartyMask) -> Result<f64> {
    let dims = psi.dims();
    dims.check_mask(s)?;
    if s.is_empty() || s == dims.full_mask() {
        return Err(Error::InvalidParameter(format!(
            "bipartition needs a proper nonempty subset, got {s}"
        )));
    }
    let reduced = crate::tensor::partial_trace(&psi.projector(), s)?;
    Ok(2.0 * (1.0 - reduced.trace_product(&reduced).re))
}
