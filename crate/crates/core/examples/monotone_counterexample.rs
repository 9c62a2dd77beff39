//! A local measurement on party 1 of GHZ raises the average `C_{23}`, so
//! `C_T` for a proper subset `T` is not an entanglement monotone.

use state_inversion::zoo::{monotone_counterexample, monotone_counterexample_qudit};

fn main() -> state_inversion::Result<()> {
    let (before, after) = monotone_counterexample();
    println!("qubits: before {before:.6}  after {after:.6}  (sqrt 2 = {:.6})", 2f64.sqrt());

    let s = monotone_counterexample_qudit(3)?;
    println!(
        "qutrit party 1: before {:.6}  after {:.6}  outcomes {:?}  probabilities {:?}",
        s.before, s.after_average, s.outcome_values, s.probabilities
    );
    Ok(())
}
