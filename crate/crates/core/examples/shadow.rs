//! Shadow inequalities for a pair of unnormalized PSD operators, and the
//! identity `shadow(|psi><psi|, rho, T) = <psi| I_T(rho) |psi>`.

use state_inversion::constraints::shadow_value;
use state_inversion::inversion::invert_sum;
use state_inversion::zoo::{ginibre_mixed, haar_pure, random_psd_with, rng_for};
use state_inversion::{PartyMask, SubsystemDims};

fn main() -> state_inversion::Result<()> {
    let dims = SubsystemDims::new(vec![2, 3])?;
    let mut rng = rng_for(5, 0);
    let m1 = random_psd_with(&dims, 3, 7.5, &mut rng);
    let m2 = random_psd_with(&dims, 6, 2.0, &mut rng);
    for t in PartyMask::all(2) {
        let s = shadow_value(&m1, &m2, t)?;
        println!("T={}  shadow {:>10.5}  psd inputs {}", t.bitstring(2), s.value, s.inputs_psd);
    }

    let psi = haar_pure(&dims, 5, 1);
    let rho = ginibre_mixed(&dims, 6, 5, 2);
    let t = PartyMask::single(2);
    let lhs = shadow_value(&psi.projector(), rho.op(), t)?.value;
    let rhs = psi.expectation(&invert_sum(&rho, t)?).re;
    println!("shadow {lhs:.12}  expectation {rhs:.12}");
    Ok(())
}
