//! Seeded verification campaigns over random ensembles.
//!
//! Each suite reduces to one worst-case number compared against a bound.
//! Ensemble member `i` is drawn from stream `i` of the given seed; the
//! factorization suite draws its product factors from `seed + 1`.

use std::fmt;

use rayon::prelude::*;

use crate::constraints::{independence_rank, independence_rank_pure};
use crate::error::{Error, Result};
use crate::invariants::c_t_squared;
use crate::inversion::{invert_kraus, invert_product, invert_sum};
use crate::tensor::{kron, min_eigenvalue, DenseOperator, DensityMatrix, PartyMask, SubsystemDims};
use crate::zoo::{
    closed_form_ct_psi_family, closed_form_ct_rho_family, even_completion, ginibre_mixed_with,
    mixed_ensemble, psi_family, rho_family, rng_for,
};

pub const CROSS_FORM_BOUND: f64 = 1e-10;
pub const POSITIVITY_BOUND: f64 = 1e-9;
pub const PARITY_BOUND: f64 = 1e-11;
pub const FACTORIZATION_BOUND: f64 = 1e-11;
pub const CLOSED_FORM_BOUND: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    CrossForm,
    Positivity,
    Parity,
    Factorization,
    Independence,
    ClosedForm,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::CrossForm,
        Suite::Positivity,
        Suite::Parity,
        Suite::Factorization,
        Suite::Independence,
        Suite::ClosedForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CrossForm => "cross-form",
            Suite::Positivity => "positivity",
            Suite::Parity => "parity",
            Suite::Factorization => "factorization",
            Suite::Independence => "independence",
            Suite::ClosedForm => "closed-form",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How `worst` is compared with `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    /// Largest entrywise deviation; passes when `worst <= bound`.
    Deviation,
    /// Smallest eigenvalue; passes when `worst >= -bound`.
    MinEigenvalue,
    /// Missing rank; passes when `worst == 0`.
    RankDeficit,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Deviation => "deviation",
            Metric::MinEigenvalue => "min-eigenvalue",
            Metric::RankDeficit => "rank-deficit",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub metric: Metric,
    pub worst: f64,
    pub bound: f64,
    /// Number of individual comparisons made.
    pub checks: usize,
}

impl SuiteOutcome {
    pub fn pass(&self) -> bool {
        match self.metric {
            Metric::Deviation => self.worst <= self.bound,
            Metric::MinEigenvalue => self.worst >= -self.bound,
            Metric::RankDeficit => self.worst == 0.0,
        }
    }

    /// Signed distance to failure; negative means the suite failed.
    pub fn margin(&self) -> f64 {
        match self.metric {
            Metric::Deviation => self.bound - self.worst,
            Metric::MinEigenvalue => self.worst + self.bound,
            Metric::RankDeficit => 0.0 - self.worst,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Campaign {
    pub dims: SubsystemDims,
    pub size: usize,
    pub seed: u64,
}

impl Campaign {
    pub fn new(dims: SubsystemDims, size: usize, seed: u64) -> Self {
        Self { dims, size, seed }
    }

    fn ensemble(&self) -> Vec<DensityMatrix> {
        mixed_ensemble(&self.dims, self.size, self.seed)
    }

    pub fn run(&self, suite: Suite) -> Result<SuiteOutcome> {
        match suite {
            Suite::CrossForm => self.cross_form(),
            Suite::Positivity => self.positivity(),
            Suite::Parity => self.parity(),
            Suite::Factorization => self.factorization(),
            Suite::Independence => self.independence(),
            Suite::ClosedForm => self.closed_form(),
        }
    }

    pub fn run_all(&self, suites: &[Suite]) -> Result<Vec<SuiteOutcome>> {
        suites.iter().map(|&s| self.run(s)).collect()
    }

    fn masks(&self) -> Vec<PartyMask> {
        PartyMask::all(self.dims.parties()).collect()
    }

    fn cross_form(&self) -> Result<SuiteOutcome> {
        let masks = self.masks();
        let worst = self
            .ensemble()
            .par_iter()
            .map(|rho| {
                masks.iter().try_fold(0.0f64, |acc, &t| {
                    let reference = invert_sum(rho, t)?;
                    let a = reference.max_abs_diff(&invert_product(rho, t)?);
                    let b = reference.max_abs_diff(&invert_kraus(rho, t)?);
                    Ok::<_, Error>(acc.max(a).max(b))
                })
            })
            .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
        Ok(SuiteOutcome {
            suite: Suite::CrossForm,
            metric: Metric::Deviation,
            worst,
            bound: CROSS_FORM_BOUND,
            checks: self.size * masks.len(),
        })
    }

    fn positivity(&self) -> Result<SuiteOutcome> {
        let masks = self.masks();
        let worst = self
            .ensemble()
            .par_iter()
            .map(|rho| {
                masks.iter().try_fold(f64::INFINITY, |acc, &t| {
                    Ok::<_, Error>(acc.min(min_eigenvalue(&invert_sum(rho, t)?)?))
                })
            })
            .try_reduce(|| f64::INFINITY, |a, b| Ok(a.min(b)))?;
        Ok(SuiteOutcome {
            suite: Suite::Positivity,
            metric: Metric::MinEigenvalue,
            worst: if worst.is_finite() { worst } else { 0.0 },
            bound: POSITIVITY_BOUND,
            checks: self.size * masks.len(),
        })
    }

    fn parity(&self) -> Result<SuiteOutcome> {
        let n = self.dims.parties();
        let masks = self.masks();
        let norm = 2f64.powi(1 - n as i32);
        let worst = self
            .ensemble()
            .par_iter()
            .map(|rho| {
                let id = DenseOperator::identity(&self.dims);
                let mut odd = DenseOperator::zeros(&self.dims);
                let mut even = DenseOperator::zeros(&self.dims);
                for &t in &masks {
                    let inv = invert_sum(rho, t)?;
                    if t.is_odd() {
                        odd = &odd + &inv;
                    } else {
                        even = &even + &inv;
                    }
                }
                let a = (&odd * norm).max_abs_diff(&(&id - rho.op()));
                let b = (&even * norm).max_abs_diff(&(&id + rho.op()));
                Ok::<_, Error>(a.max(b))
            })
            .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
        Ok(SuiteOutcome {
            suite: Suite::Parity,
            metric: Metric::Deviation,
            worst,
            bound: PARITY_BOUND,
            checks: self.size * 2,
        })
    }

    /// Splits the parties into `{1}` and the rest.
    fn factorization(&self) -> Result<SuiteOutcome> {
        let n = self.dims.parties();
        let outcome = |worst, checks| SuiteOutcome {
            suite: Suite::Factorization,
            metric: Metric::Deviation,
            worst,
            bound: FACTORIZATION_BOUND,
            checks,
        };
        if n < 2 {
            return Ok(outcome(0.0, 0));
        }
        let head = PartyMask::single(1);
        let dims_a = self.dims.restrict(head)?;
        let dims_b = self.dims.restrict(head.complement(n))?;
        let masks = self.masks();
        let worst = (0..self.size as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = rng_for(self.seed.wrapping_add(1), i);
                let a = ginibre_mixed_with(&dims_a, dims_a.total(), &mut rng);
                let b = ginibre_mixed_with(&dims_b, dims_b.total(), &mut rng);
                let joint = DensityMatrix::new(kron(a.op(), b.op())?)?;
                masks.iter().try_fold(0.0f64, |acc, &t| {
                    let t_a = PartyMask::from_bits(t.bits() & 1);
                    let t_b = PartyMask::from_bits(t.bits() >> 1);
                    let lhs = invert_sum(&joint, t)?;
                    let rhs = kron(&invert_sum(&a, t_a)?, &invert_sum(&b, t_b)?)?;
                    Ok::<_, Error>(acc.max(lhs.max_abs_diff(&rhs)))
                })
            })
            .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
        Ok(outcome(worst, self.size * masks.len()))
    }

    /// Product family at the campaign's party count (capped at 5) and the
    /// first party's dimension, plus the pure family on qubits.
    fn independence(&self) -> Result<SuiteOutcome> {
        let n = self.dims.parties().min(5);
        let d = self.dims.dim(1);
        let mut deficit = (1usize << n) - independence_rank(n, d)?;
        let mut checks = 1;
        if n >= 2 {
            deficit += (1usize << (n - 1)) - independence_rank_pure(n)?;
            checks += 1;
        }
        Ok(SuiteOutcome {
            suite: Suite::Independence,
            metric: Metric::RankDeficit,
            worst: deficit as f64,
            bound: 0.0,
            checks,
        })
    }

    /// Qubit witness families at the campaign's party count (capped at 4).
    fn closed_form(&self) -> Result<SuiteOutcome> {
        let n = self.dims.parties().min(4);
        let mut worst = 0.0f64;
        let mut checks = 0;
        for s in PartyMask::all(n) {
            let rho = rho_family(n, s)?;
            for t in PartyMask::all(n) {
                let dev = (c_t_squared(&rho, t)? - closed_form_ct_rho_family(n, s, t)).abs();
                worst = worst.max(dev);
                checks += 1;
            }
        }
        for s in PartyMask::all(n).filter(|s| !s.contains(1)) {
            let psi = psi_family(n, s)?.to_density();
            for t in PartyMask::all(n) {
                let dev = (c_t_squared(&psi, t)? - closed_form_ct_psi_family(n, s, t)).abs();
                worst = worst.max(dev);
                checks += 1;
            }
            for t in PartyMask::all(n).filter(|t| !t.contains(1)) {
                let dev = (c_t_squared(&psi, even_completion(t))?
                    - crate::zoo::closed_form_ct_psi_family_reduced(n, s, t))
                .abs();
                worst = worst.max(dev);
                checks += 1;
            }
        }
        Ok(SuiteOutcome {
            suite: Suite::ClosedForm,
            metric: Metric::Deviation,
            worst,
            bound: CLOSED_FORM_BOUND,
            checks,
        })
    }
}
