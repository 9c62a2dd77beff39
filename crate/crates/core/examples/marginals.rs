//! Operator witnesses for the compatibility of two-body marginals: those
//! of a GHZ state pass, three maximally entangled pairs cannot coexist.

use state_inversion::constraints::{marginal_witnesses, marginal_witnesses_from_marginals, Marginals};
use state_inversion::zoo::{bell_phi_plus, ghz};
use state_inversion::{DenseOperator, PartyMask, SubsystemDims};

fn main() -> state_inversion::Result<()> {
    let dims = SubsystemDims::qubits(3)?;
    let rho = ghz(dims.clone())?.to_density();
    println!("GHZ marginals");
    for w in marginal_witnesses(&rho)? {
        println!("  T={}  min eig {:.4}", w.t.bitstring(3), w.min_eig);
    }

    let half = DenseOperator::diagonal(&SubsystemDims::qubits(1)?, &[0.5, 0.5])?;
    let pair = bell_phi_plus().projector();
    let mut m = Marginals::new();
    for p in 1..=3 {
        m.insert(PartyMask::single(p), half.clone());
    }
    for s in [[1, 2], [1, 3], [2, 3]] {
        m.insert(PartyMask::from_parties(s), pair.clone());
    }
    println!("three Bell pairs");
    for w in marginal_witnesses_from_marginals(&m, &dims)? {
        let verdict = if w.min_eig < -1e-9 { "incompatible" } else { "no verdict" };
        println!("  T={}  min eig {:.4}  {verdict}", w.t.bitstring(3), w.min_eig);
    }
    Ok(())
}
