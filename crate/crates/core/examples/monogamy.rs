//! The 2^N - 1 monogamy inequalities on a Haar-random four-qubit state.
//! Odd masks come out as zero: for pure states they are equalities.

use state_inversion::constraints::monogamy_check;
use state_inversion::zoo::haar_pure;
use state_inversion::{PartyMask, SubsystemDims};

fn main() -> state_inversion::Result<()> {
    let dims = SubsystemDims::qubits(4)?;
    let psi = haar_pure(&dims, 99, 0);
    for t in PartyMask::all(4).skip(1) {
        let v = monogamy_check(&psi, t)?;
        let kind = if t.is_odd() { "odd " } else { "even" };
        println!("T={} ({kind})  {v:>10.6}", t.bitstring(4));
    }
    Ok(())
}
