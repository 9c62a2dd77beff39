//! Prints `C_T^2` and `C_T` for every mask on GHZ and W states.

use state_inversion::invariants::{distributed_concurrence, invariant_table};
use state_inversion::zoo::{build, StateKind, StateRecipe};
use state_inversion::SubsystemDims;

fn main() -> state_inversion::Result<()> {
    let dims = SubsystemDims::qubits(3)?;
    for kind in [StateKind::Ghz, StateKind::W] {
        let state = build(&StateRecipe::new(kind, dims.clone()))?;
        let table = invariant_table(&state.to_density())?;
        println!("{}", kind.name());
        for e in table.entries() {
            println!("  T={}  C^2={:>8.5}  C={:>8.5}", e.mask.bitstring(3), e.value, e.root());
        }
        if let Some(psi) = state.as_pure() {
            println!("  distributed concurrence {:.5}", distributed_concurrence(psi)?);
        }
    }
    Ok(())
}
