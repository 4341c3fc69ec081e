//! `characters`: graded dimensions of invariants against the closed formulas.

use bethe_core::symspace::{graded_character, graded_dimensions, CharacterMode};
use serde_json::json;

use crate::config::{Mode, Run};
use crate::report::{Check, Report, Status};
use crate::CliError;

fn cell(run: &Run, mode: CharacterMode, name: &str) -> Result<Check, CliError> {
    let dims: Vec<i64> =
        graded_dimensions(run.n_colours, &run.lambda, mode, run.cutoff)?.into_iter().map(|d| d as i64).collect();
    let closed = graded_character(&run.lambda, mode, run.cutoff)?;
    let leading = closed.iter().position(|&c| c != 0);
    Ok(Check::new(name, Status::from_bool(dims == closed)).data(json!({
        "cutoff": run.cutoff,
        "computed": dims,
        "closed_form": closed,
        "leading_degree": leading,
    })))
}

pub fn characters(run: &Run) -> Result<Report, CliError> {
    if run.mode != Mode::Exact {
        return Err(CliError::Config("characters runs in exact mode".into()));
    }
    if !run.is_partition() {
        return Err(CliError::Config(format!("lambda {:?} is not a partition", run.lambda)));
    }
    let (weight, singular) = rayon::join(
        || cell(run, CharacterMode::Weight, "weight_character"),
        || cell(run, CharacterMode::Singular, "singular_character"),
    );
    Ok(Report::new("characters", vec![weight?, singular?]))
}
