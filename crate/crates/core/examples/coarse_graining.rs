//! Merging parties 2 and 3 into one block: the block inversion equals the
//! parity-matched average of fine-grained inversions.

use state_inversion::inversion::{coarse_grain_invert, invert_sum, Grouping};
use state_inversion::zoo::ginibre_mixed;
use state_inversion::{DensityMatrix, PartyMask, SubsystemDims};

fn main() -> state_inversion::Result<()> {
    let fine = SubsystemDims::new(vec![2, 2, 3])?;
    let rho = ginibre_mixed(&fine, fine.total(), 3, 0);
    let grouping = Grouping::new(3, vec![PartyMask::single(1), PartyMask::from_parties([2, 3])])?;
    let merged = DensityMatrix::new(rho.op().clone().with_dims(SubsystemDims::new(vec![2, 6])?)?)?;

    for t in PartyMask::all(2) {
        let averaged = coarse_grain_invert(&rho, &grouping, t)?;
        let direct = invert_sum(&merged, t)?;
        let fine_masks: Vec<String> = grouping
            .matching_fine_masks(t)
            .iter()
            .map(|m| m.bitstring(3))
            .collect();
        println!(
            "coarse T={}  fine masks {:?}  deviation {:.2e}",
            t.bitstring(2),
            fine_masks,
            averaged.max_abs_diff(&direct.with_dims(fine.clone())?)
        );
    }
    Ok(())
}
