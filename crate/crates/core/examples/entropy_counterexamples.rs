//! Linear-entropy inequalities on the two three-qubit states that break
//! the naive strong-subadditivity analogue and its reverse.

use state_inversion::constraints::{entropy_inequalities, DEFAULT_TOL};
use state_inversion::zoo::{build, StateKind, StateRecipe};
use state_inversion::SubsystemDims;

fn main() -> state_inversion::Result<()> {
    let dims = SubsystemDims::qubits(3)?;
    for kind in [StateKind::RhoII, StateKind::RhoIII] {
        let rho = build(&StateRecipe::new(kind, dims.clone()))?.to_density();
        let report = entropy_inequalities(&rho, DEFAULT_TOL);
        println!("{} (theorem entries pass: {})", kind.name(), report.all_pass());
        for e in report.entries.iter().filter(|e| !e.theorem || e.margin < 1e-12) {
            let status = match e.pass {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "n/a ",
            };
            println!("  {status} margin {:>6.3}  {}", e.margin, e.label.render(3));
        }
    }
    Ok(())
}
