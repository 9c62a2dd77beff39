//! Command-line front end. Reports go to `out` as one JSON object per
//! line; diagnostics go to `err`.
//!
//! Exit codes: 0 when every theorem-backed entry passes, 1 when one fails,
//! 2 on input errors.

mod report;
mod state_file;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::constraints::{
    correlation_report, entropy_inequalities, is_pure, marginal_report, marginal_witnesses,
    monogamy_report, shadow_report, Family, DEFAULT_TOL,
};
use crate::invariants::invariant_table;
use crate::inversion::{apply_detection_map, DetectionParams};
use crate::tensor::{min_eigenvalue, set_dimension_cap, DensityMatrix, PartyMask, SubsystemDims};
use crate::verify::{Campaign, Suite};
use crate::zoo::{build, State, StateKind, StateRecipe};

pub use report::{elapsed_ms, emit, lines_from_report, ReportLine};
pub use state_file::{StateData, StateFile, StateFileKind};

/// Environment variable overriding the dimension cap.
pub const DIM_CAP_ENV: &str = "SINV_DIM_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sinv", version, about = "Generalized T-inversion constraint checker")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate constraint families on a state file.
    Check {
        #[arg(long)]
        state: PathBuf,
        /// Comma list of correlation, monogamy, shadow, entropy, marginal.
        #[arg(long, default_value = "correlation,monogamy,shadow,entropy,marginal")]
        families: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Second operand for the shadow family; defaults to the state itself.
        #[arg(long)]
        partner: Option<PathBuf>,
    },
    /// Print C_T^2 and C_T for the requested masks.
    Invariants {
        #[arg(long)]
        state: PathBuf,
        /// "all", or masks separated by ';' as 1-based party lists ("1,2;3"); "empty" is ∅.
        #[arg(long, default_value = "all")]
        masks: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Apply a detection map and report the smallest eigenvalue.
    Detect {
        #[arg(long)]
        state: PathBuf,
        #[arg(long = "act-on")]
        act_on: String,
        #[arg(long)]
        t: String,
        /// One value per party of T, or a single broadcast value.
        #[arg(long, default_value = "1")]
        alpha: String,
        /// One value per party of act_on \ T, or a single broadcast value.
        #[arg(long, default_value = "1")]
        beta: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Run verification suites on a seeded random ensemble.
    Verify {
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 100)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma list of suites, or "all".
        #[arg(long, default_value = "all")]
        suites: String,
    },
    /// Write a state file for a named recipe.
    MakeState {
        /// ghz, bell_phi_plus, w, product_basis, rho_family_S, psi_family_S,
        /// rho_II, rho_III, haar_pure, ginibre_mixed
        #[arg(long)]
        kind: String,
        #[arg(long)]
        dims: String,
        #[arg(long)]
        s: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        label: Option<String>,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Input problems; always exit 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, InputError>;

pub fn parse_dims(text: &str) -> Result<SubsystemDims, String> {
    let dims = text
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("dims {text:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    SubsystemDims::new(dims).map_err(|e| e.to_string())
}

/// `"1,3"` → `{1,3}`; `"empty"` or `""` → `∅`.
pub fn parse_mask(text: &str, parties: usize) -> Result<PartyMask, String> {
    let t = text.trim();
    if t.is_empty() || t.eq_ignore_ascii_case("empty") {
        return Ok(PartyMask::EMPTY);
    }
    let mut parts = Vec::new();
    for p in t.split(',') {
        let k: usize = p
            .trim()
            .parse()
            .map_err(|e| format!("mask {text:?}: {e}"))?;
        if k == 0 || k > parties {
            return Err(format!("mask {text:?}: party {k} outside 1..={parties}"));
        }
        parts.push(k);
    }
    Ok(PartyMask::from_parties(parts))
}

fn parse_floats(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{text:?}: {e}")))
        .collect()
}

fn parse_list<T>(text: &str, what: &str, all: &[T], lookup: impl Fn(&str) -> Option<T>) -> Result<Vec<T>, String>
where
    T: Copy + PartialEq,
{
    if text.trim() == "all" {
        return Ok(all.to_vec());
    }
    let mut out = Vec::new();
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let item = lookup(name).ok_or_else(|| format!("unknown {what} {name:?}"))?;
        if !out.contains(&item) {
            out.push(item);
        }
    }
    Ok(out)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    if let Ok(v) = std::env::var(DIM_CAP_ENV) {
        match v.parse::<usize>() {
            Ok(cap) if cap > 0 => set_dimension_cap(cap),
            _ => {
                let _ = writeln!(err, "error: {DIM_CAP_ENV}={v:?} is not a positive integer");
                return EXIT_INPUT;
            }
        }
    }
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Check {
            state,
            families,
            tol,
            partner,
        } => cmd_check(&state, &families, tol, partner.as_deref(), out, err),
        Command::Invariants { state, masks, tol } => cmd_invariants(&state, &masks, tol, out),
        Command::Detect {
            state,
            act_on,
            t,
            alpha,
            beta,
            tol,
        } => cmd_detect(&state, &act_on, &t, &alpha, &beta, tol, out),
        Command::Verify {
            dims,
            size,
            seed,
            suites,
        } => cmd_verify(&dims, size, seed, &suites, out),
        Command::MakeState {
            kind,
            dims,
            s,
            seed,
            rank,
            label,
            out: path,
        } => cmd_make_state(&kind, &dims, s.as_deref(), seed, rank, label, path, out),
    }
}

fn load_density(path: &std::path::Path) -> Result<DensityMatrix, InputError> {
    Ok(StateFile::load(path).map_err(InputError)?.to_density())
}

fn check_tol(tol: f64) -> Result<(), InputError> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(())
    } else {
        Err(InputError(format!("tolerance {tol} must be finite and nonnegative")))
    }
}

fn cmd_check(
    path: &std::path::Path,
    families: &str,
    tol: f64,
    partner: Option<&std::path::Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    check_tol(tol)?;
    let rho = load_density(path)?;
    let mut fams = parse_list(families, "family", &Family::ALL, Family::from_name)?;
    if fams.contains(&Family::Monogamy) && !is_pure(&rho) {
        writeln!(err, "warning: monogamy needs a pure state; checking correlation instead")?;
        fams.retain(|f| *f != Family::Monogamy);
        if !fams.contains(&Family::Correlation) {
            fams.insert(0, Family::Correlation);
        }
    }
    let partner = match partner {
        Some(p) => Some(load_density(p)?),
        None => None,
    };
    let mut failed = false;
    for fam in fams {
        let start = Instant::now();
        let report = match fam {
            Family::Correlation => correlation_report(&rho, tol),
            Family::Monogamy => monogamy_report(&rho, tol)?,
            Family::Shadow => {
                let m2 = partner.as_ref().unwrap_or(&rho);
                shadow_report(rho.op(), m2.op(), tol)?
            }
            Family::Entropy => entropy_inequalities(&rho, tol),
            Family::Marginal => {
                if rho.dims().parties() < 2 {
                    let mut r = marginal_report(&[], 1, tol);
                    r.notes.push("single party: no marginals".into());
                    r
                } else {
                    marginal_report(&marginal_witnesses(&rho)?, rho.dims().parties(), tol)
                }
            }
        };
        failed |= !report.all_pass();
        for line in lines_from_report("check", &report, elapsed_ms(start)) {
            emit(out, &line)?;
        }
    }
    Ok(if failed { EXIT_FAIL } else { EXIT_OK })
}

fn cmd_invariants(path: &std::path::Path, masks: &str, tol: f64, out: &mut dyn Write) -> CmdResult {
    check_tol(tol)?;
    let rho = load_density(path)?;
    let n = rho.dims().parties();
    let selected: Vec<PartyMask> = if masks.trim() == "all" {
        PartyMask::all(n).collect()
    } else {
        masks
            .split(';')
            .map(|m| parse_mask(m, n))
            .collect::<Result<_, _>>()
            .map_err(InputError)?
    };
    let start = Instant::now();
    let table = invariant_table(&rho)?;
    let elapsed = elapsed_ms(start);
    for t in selected {
        let e = table.entries()[t.bits() as usize];
        let line = ReportLine {
            value: e.value,
            margin: e.value,
            pass: Some(e.value >= -tol),
            tolerance: tol,
            elapsed_ms: elapsed,
            c_t: Some(e.root()),
            note: e.clamped.then(|| format!("clamped from {:e}", e.raw)),
            ..ReportLine::new("invariants", "invariant", t.bitstring(n))
        };
        emit(out, &line)?;
    }
    Ok(EXIT_OK)
}

fn cmd_detect(
    path: &std::path::Path,
    act_on: &str,
    t: &str,
    alpha: &str,
    beta: &str,
    tol: f64,
    out: &mut dyn Write,
) -> CmdResult {
    check_tol(tol)?;
    let rho = load_density(path)?;
    let n = rho.dims().parties();
    let act_on = parse_mask(act_on, n).map_err(InputError)?;
    let t = parse_mask(t, n).map_err(InputError)?;
    let params = DetectionParams::new(
        n,
        act_on,
        t,
        &parse_floats(alpha).map_err(InputError)?,
        &parse_floats(beta).map_err(InputError)?,
    )?;
    let start = Instant::now();
    let min_eig = min_eigenvalue(&apply_detection_map(&rho, &params)?)?;
    let detected = min_eig < -tol;
    let line = ReportLine {
        value: min_eig,
        margin: min_eig,
        tolerance: tol,
        elapsed_ms: elapsed_ms(start),
        verdict: Some(if detected { "detected" } else { "inconclusive" }),
        note: Some(format!("act_on={}", act_on.bitstring(n))),
        ..ReportLine::new("detect", "detection", t.bitstring(n))
    };
    emit(out, &line)?;
    Ok(EXIT_OK)
}

fn cmd_verify(dims: &str, size: usize, seed: u64, suites: &str, out: &mut dyn Write) -> CmdResult {
    let dims = parse_dims(dims).map_err(InputError)?;
    let suites = parse_list(suites, "suite", &Suite::ALL, Suite::from_name).map_err(InputError)?;
    let campaign = Campaign::new(dims, size, seed);
    let total = Instant::now();
    let mut worst_margin = f64::INFINITY;
    let mut all_pass = true;
    for suite in suites {
        let start = Instant::now();
        let o = campaign.run(suite)?;
        worst_margin = worst_margin.min(o.margin());
        all_pass &= o.pass();
        let line = ReportLine {
            value: o.worst,
            threshold: o.bound,
            margin: o.margin(),
            pass: Some(o.pass()),
            tolerance: o.bound,
            elapsed_ms: elapsed_ms(start),
            note: Some(format!("{}, {} checks", o.metric.name(), o.checks)),
            ..ReportLine::new("verify", "verify", suite.name())
        };
        emit(out, &line)?;
    }
    let summary = ReportLine {
        value: worst_margin,
        margin: worst_margin,
        pass: Some(all_pass),
        elapsed_ms: elapsed_ms(total),
        note: Some(format!(
            "dims={} size={size} seed={seed}; value is the worst suite margin",
            campaign.dims
        )),
        ..ReportLine::new("verify", "verify", "summary")
    };
    emit(out, &summary)?;
    Ok(if all_pass { EXIT_OK } else { EXIT_FAIL })
}

#[allow(clippy::too_many_arguments)]
fn cmd_make_state(
    kind: &str,
    dims: &str,
    s: Option<&str>,
    seed: Option<u64>,
    rank: Option<usize>,
    label: Option<String>,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let kind = StateKind::from_name(kind).ok_or_else(|| InputError(format!("unknown kind {kind:?}")))?;
    let dims = parse_dims(dims).map_err(InputError)?;
    let n = dims.parties();
    let mut recipe = StateRecipe::new(kind, dims);
    if let Some(s) = s {
        recipe = recipe.with_subset(parse_mask(s, n).map_err(InputError)?);
    }
    if let Some(seed) = seed {
        recipe = recipe.with_seed(seed);
    }
    if let Some(rank) = rank {
        recipe = recipe.with_rank(rank);
    }
    let state: State = build(&recipe)?;
    let text = StateFile::from_state(&state, label.or_else(|| Some(kind.name().into()))).to_json();
    match path {
        Some(p) => std::fs::write(&p, format!("{text}\n"))
            .map_err(|e| InputError(format!("cannot write {}: {e}", p.display())))?,
        None => writeln!(out, "{text}")?,
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks_parse() {
        assert_eq!(parse_mask("1,3", 3).unwrap(), PartyMask::from_parties([1, 3]));
        assert_eq!(parse_mask("empty", 3).unwrap(), PartyMask::EMPTY);
        assert!(parse_mask("3", 2).is_err());
        assert!(parse_mask("0", 2).is_err());
        assert!(parse_mask("x", 2).is_err());
    }

    #[test]
    fn dims_parse() {
        assert_eq!(parse_dims("2, 3").unwrap().as_slice(), &[2, 3]);
        assert!(parse_dims("2,1").is_err());
        assert!(parse_dims("").is_err());
    }

    #[test]
    fn unknown_family_is_an_input_error() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            ["sinv", "verify", "--dims", "2", "--suites", "nope"],
            &mut out,
            &mut err,
        );
        assert_eq!(code, EXIT_INPUT);
        assert!(String::from_utf8(err).unwrap().contains("unknown suite"));
    }
}
