//! `mode`: sample the normalized radial profiles of one eigenstate.

use disc_spinor::spectrum::{
    normalize_with_order, sample_profiles, solve_coefficients, ModeParams,
};
use disc_spinor::Error;
use serde_json::json;

use crate::output::{emit, Cell, Report};
use crate::parse;
use crate::{CliError, CliResult, ModeArgs};

pub fn run(args: &ModeArgs) -> CliResult<u8> {
    let epsilon = parse::check_epsilon(args.epsilon)?;
    let grid = parse::parse_grid(&args.grid)?;
    if grid.ne.is_some() {
        return Err(CliError::Usage(
            "mode takes a one-dimensional --grid NX".into(),
        ));
    }
    let delta = parse::check_delta(args.delta)?;
    let params =
        ModeParams::new(epsilon, args.n, args.l0).map_err(|e| CliError::Usage(e.to_string()))?;

    // A defective cell has no eigenstate at the closed-form mass; that is a
    // verification failure on valid input, not a usage error.
    let s = solve_coefficients(params).map_err(|e| CliError::Failure(e.to_string()))?;
    let norm = normalize_with_order(&s, args.quad_order).map_err(|e| match e {
        Error::InsufficientNodes { .. } => CliError::Usage(e.to_string()),
        other => CliError::Failure(other.to_string()),
    })?;
    let xs = parse::linspace(-1.0 + delta, 1.0 - delta, grid.nx);
    let profiles = sample_profiles(&s, &xs).map_err(|e| CliError::Failure(e.to_string()))?;

    let mut report = Report::new("mode", vec!["x", "a", "b_amplitude"]);
    report.config("epsilon", epsilon);
    report.config("n", args.n);
    report.config("l0", args.l0);
    report.config("grid", grid.nx);
    report.config("delta", args.delta);
    report.config("quad-order", args.quad_order);

    report.info("mass_sq", s.mass_sq());
    report.info("mass", s.mass_sq().sqrt());
    report.info("norm_const", norm);
    let n = i64::from(args.n);
    let l0 = i64::from(args.l0);
    for l in n..=l0 {
        report.info(format!("coeff l={l}"), s.coeff(l));
    }
    report.info(
        "b-phase",
        "the companion profile equals the b_amplitude column times the unit imaginary",
    );
    if args.l0 == 0 {
        report.info("b-note", "a single-degree tower has no companion profile");
    }

    for i in 0..xs.len() {
        report.push_row(vec![
            Cell::Float(xs[i]),
            Cell::Float(norm * profiles.a_values[i]),
            Cell::Float(norm * profiles.b_amplitudes[i]),
        ]);
    }

    report.extra("mass_sq", json!(s.mass_sq()));
    report.extra("mass", json!(s.mass_sq().sqrt()));
    report.extra("norm_const", json!(norm));
    let coeffs: Vec<_> = (n..=l0)
        .map(|l| json!({ "l": l, "value": s.coeff(l) }))
        .collect();
    report.extra("coefficients", json!(coeffs));

    emit(&report, args.format, args.out.as_deref())?;
    Ok(0)
}
