//! Evaluates `I_T` through the sum, product and Kraus forms on a random
//! two-qutrit state and prints how far apart they are, plus the smallest
//! eigenvalue of each output.

use state_inversion::inversion::{invert_kraus, invert_product, invert_sum, universal_inversion};
use state_inversion::tensor::min_eigenvalue;
use state_inversion::zoo::ginibre_mixed;
use state_inversion::{PartyMask, SubsystemDims};

fn main() -> state_inversion::Result<()> {
    let dims = SubsystemDims::new(vec![3, 3])?;
    let rho = ginibre_mixed(&dims, dims.total(), 2024, 0);

    println!("mask  |sum-product|  |sum-kraus|   min eig");
    for t in PartyMask::all(2) {
        let sum = invert_sum(&rho, t)?;
        let product = invert_product(&rho, t)?;
        let kraus = invert_kraus(&rho, t)?;
        println!(
            "{:>4}  {:>12.3e}  {:>11.3e}  {:>9.5}",
            t.bitstring(2),
            sum.max_abs_diff(&product),
            sum.max_abs_diff(&kraus),
            min_eigenvalue(&sum)?
        );
    }

    let universal = universal_inversion(&rho)?;
    println!("universal inversion trace: {:.6}", universal.trace().re);
    Ok(())
}
