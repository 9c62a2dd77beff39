//! Generalized Gell-Mann generators with the `h_m` labeling
//! `h_0 = 1`, `h_{l^2+2k} = x_kl`, `h_{l^2+2k+1} = y_kl`, `h_{l^2+2l} = z_l`
//! for `0 <= k < l < d`. All generators satisfy `Tr(h_m h_n) = d δ_mn`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::tensor::{Matrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Identity,
    X,
    Y,
    Z,
}

#[derive(Clone, Debug)]
pub struct GellMannBasis {
    d: usize,
    matrices: Vec<Matrix>,
    kinds: Vec<GeneratorKind>,
}

impl GellMannBasis {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn get(&self, m: usize) -> &Matrix {
        &self.matrices[m]
    }

    pub fn kind(&self, m: usize) -> GeneratorKind {
        self.kinds[m]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn x(&self, k: usize, l: usize) -> &Matrix {
        assert!(k < l && l < self.d);
        &self.matrices[l * l + 2 * k]
    }

    pub fn y(&self, k: usize, l: usize) -> &Matrix {
        assert!(k < l && l < self.d);
        &self.matrices[l * l + 2 * k + 1]
    }

    pub fn z(&self, l: usize) -> &Matrix {
        assert!(l >= 1 && l < self.d);
        &self.matrices[l * l + 2 * l]
    }

    /// Indices `l^2+2k+1`, `0 <= k < l < d`: the y-type generators whose
    /// conjugation sum gives `Tr(A) 1 - A` on `A^*`.
    pub fn minus_indices(&self) -> Vec<usize> {
        let d = self.d;
        let mut out = Vec::with_capacity(d * (d - 1) / 2);
        for k in 0..d.saturating_sub(1) {
            for l in k + 1..d {
                out.push(l * l + 2 * k + 1);
            }
        }
        out
    }

    /// Indices `l^2+2k`, `0 <= k <= l < d`: identity, x-type and z-type
    /// generators whose conjugation sum gives `Tr(A) 1 + A` on `A^*`.
    pub fn plus_indices(&self) -> Vec<usize> {
        let d = self.d;
        let mut out = Vec::with_capacity(d * (d + 1) / 2);
        for k in 0..d {
            for l in k..d {
                out.push(l * l + 2 * k);
            }
        }
        out
    }
}

fn unit(d: usize, r: usize, c: usize, v: C64) -> Matrix {
    let mut m = Matrix::zeros(d, d);
    m[(r, c)] = v;
    m
}

/// Build the `d^2` generators eagerly.
pub fn build_basis(d: usize) -> Result<GellMannBasis> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "Gell-Mann basis needs d >= 2, got {d}"
        )));
    }
    let n = d * d;
    let mut matrices = vec![Matrix::zeros(d, d); n];
    let mut kinds = vec![GeneratorKind::Identity; n];
    matrices[0] = Matrix::identity(d, d);

    let s = (d as f64 / 2.0).sqrt();
    let one = C64::new(s, 0.0);
    let i = C64::new(0.0, s);
    for l in 1..d {
        for k in 0..l {
            let xm = unit(d, k, l, one) + unit(d, l, k, one);
            let ym = unit(d, k, l, -i) + unit(d, l, k, i);
            matrices[l * l + 2 * k] = xm;
            kinds[l * l + 2 * k] = GeneratorKind::X;
            matrices[l * l + 2 * k + 1] = ym;
            kinds[l * l + 2 * k + 1] = GeneratorKind::Y;
        }
        let norm = (d as f64 / (l * (l + 1)) as f64).sqrt();
        let mut zm = Matrix::zeros(d, d);
        for k in 0..l {
            zm[(k, k)] = C64::new(norm, 0.0);
        }
        zm[(l, l)] = C64::new(-(l as f64) * norm, 0.0);
        matrices[l * l + 2 * l] = zm;
        kinds[l * l + 2 * l] = GeneratorKind::Z;
    }
    Ok(GellMannBasis { d, matrices, kinds })
}

type Cache = RwLock<HashMap<usize, Arc<GellMannBasis>>>;

static CACHE: OnceLock<Cache> = OnceLock::new();

/// Shared, lazily built basis for dimension `d`.
pub fn basis(d: usize) -> Result<Arc<GellMannBasis>> {
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(b) = cache.read().expect("basis cache poisoned").get(&d) {
        return Ok(Arc::clone(b));
    }
    let built = Arc::new(build_basis(d)?);
    let mut w = cache.write().expect("basis cache poisoned");
    Ok(Arc::clone(w.entry(d).or_insert(built)))
}

fn check_side(a: &Matrix, basis: &GellMannBasis) -> Result<()> {
    if a.nrows() != basis.d || a.ncols() != basis.d {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator against a d={} basis",
            a.nrows(),
            a.ncols(),
            basis.d
        )));
    }
    Ok(())
}

/// `(1/d) Σ_m h_m A h_m`, which equals `Tr(A) 1`.
pub fn trace_resolution(a: &Matrix, basis: &GellMannBasis) -> Result<Matrix> {
    check_side(a, basis)?;
    let mut acc = Matrix::zeros(basis.d, basis.d);
    for h in &basis.matrices {
        acc += h * a * h;
    }
    Ok(acc / C64::new(basis.d as f64, 0.0))
}

/// `(1/d) Σ_m h_m^T A h_m`, which equals `A^T`.
pub fn transpose_resolution(a: &Matrix, basis: &GellMannBasis) -> Result<Matrix> {
    check_side(a, basis)?;
    let mut acc = Matrix::zeros(basis.d, basis.d);
    for h in &basis.matrices {
        acc += h.transpose() * a * h;
    }
    Ok(acc / C64::new(basis.d as f64, 0.0))
}

/// Coefficients of `A` in the basis: `c_m = Tr(h_m A) / d`.
pub fn coefficients(a: &Matrix, basis: &GellMannBasis) -> Result<Vec<C64>> {
    check_side(a, basis)?;
    Ok(basis
        .matrices
        .iter()
        .map(|h| (h * a).trace() / C64::new(basis.d as f64, 0.0))
        .collect())
}
