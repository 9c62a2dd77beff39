//! Writes a seeded random state to the JSON state-file format, reads it
//! back, and runs the correlation constraints on it.

use state_inversion::cli::StateFile;
use state_inversion::constraints::{correlation_report, DEFAULT_TOL};
use state_inversion::zoo::{build, StateKind, StateRecipe};
use state_inversion::SubsystemDims;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let recipe = StateRecipe::new(StateKind::GinibreMixed, SubsystemDims::new(vec![2, 2])?)
        .with_seed(42)
        .with_rank(2);
    let state = build(&recipe)?;
    let text = StateFile::from_state(&state, Some("rank-2 example".into())).to_json();
    println!("{} bytes of JSON", text.len());

    let back = StateFile::parse(&text)?.to_state()?;
    assert_eq!(back, state);

    let report = correlation_report(&back.to_density(), DEFAULT_TOL);
    for e in &report.entries {
        println!("T={}  {:.6}", e.label.render(2), e.value);
    }
    Ok(())
}
