//! Reduction criterion on isotropic two-qubit states, and the Choi test
//! separating the (not completely positive) reduction map from
//! transpose-then-invert (completely positive).

use state_inversion::inversion::{apply_detection_map, choi_matrix, ChoiMap, DetectionParams};
use state_inversion::tensor::min_eigenvalue;
use state_inversion::zoo::bell_phi_plus;
use state_inversion::{DenseOperator, DensityMatrix, PartyMask, SubsystemDims};

fn main() -> state_inversion::Result<()> {
    let dims = SubsystemDims::qubits(2)?;
    let bell = bell_phi_plus().projector();
    let noise = DenseOperator::identity(&dims).scale(0.25);
    let params = DetectionParams::reduction(2, PartyMask::single(2))?;

    for p in [0.0, 0.2, 1.0 / 3.0, 0.5, 1.0] {
        let rho = DensityMatrix::new(&bell.scale(p) + &noise.scale(1.0 - p))?;
        let min = min_eigenvalue(&apply_detection_map(&rho, &params)?)?;
        let verdict = if min < -1e-9 { "detected" } else { "inconclusive" };
        println!("p={p:.3}  min eig {min:>8.4}  {verdict}");
    }

    let single = SubsystemDims::qubits(1)?;
    let t = PartyMask::single(1);
    for (name, map) in [
        ("reduction", ChoiMap::TInversion(t)),
        ("transpose then invert", ChoiMap::TInversionAfterTranspose(t)),
    ] {
        let choi = choi_matrix(&map, &single)?;
        println!("{name}: Choi min eig {:.4}", min_eigenvalue(&choi)?);
    }
    Ok(())
}
