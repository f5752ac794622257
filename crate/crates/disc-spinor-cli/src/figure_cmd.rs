//! `figure`: tabulate one radial profile over an (x, epsilon) grid.
//!
//! Profiles keep the solver gauge (top tower coefficient fixed to one) so
//! slices at different epsilon are directly comparable; normalization would
//! rescale each slice by an epsilon-dependent constant.

use disc_spinor::spectrum::{radial_a, radial_b, solve_coefficients_unchecked, ModeParams};
use serde_json::json;

use crate::output::{emit, Cell, Report};
use crate::parse;
use crate::{CliError, CliResult, FigureArgs, ProfileChoice};

/// Reference slices tabulated under `--slices`.
const SLICE_EPSILONS: [f64; 3] = [0.0, 0.25, 0.49];

pub fn run(args: &FigureArgs) -> CliResult<u8> {
    let grid = parse::parse_grid(&args.grid)?;
    let delta = parse::check_delta(args.delta)?;
    let fig = args.figure_id;
    let epsilons = if args.slices {
        SLICE_EPSILONS.to_vec()
    } else {
        parse::linspace(0.0, 0.49, grid.ne.unwrap_or(50))
    };
    let xs = parse::linspace(-1.0 + delta, 1.0 - delta, grid.nx);

    let mut report = Report::new("figure", vec!["epsilon", "x", "value"]);
    report.config("figure-id", fig.name());
    report.config("profile", match fig.profile() {
        ProfileChoice::A => "a",
        ProfileChoice::B => "b",
    });
    report.config("l0", fig.l0());
    report.config("n", fig.n());
    report.config("grid-x", grid.nx);
    report.config(
        "epsilon-samples",
        if args.slices {
            "slices 0 0.25 0.49".to_string()
        } else {
            format!("{}", epsilons.len())
        },
    );
    report.config("delta", args.delta);

    let mut slices_meta = Vec::new();
    let mut worst_residual = 0.0f64;
    for &epsilon in &epsilons {
        let params = ModeParams::new(epsilon, fig.n(), fig.l0())
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let s = solve_coefficients_unchecked(params);
        worst_residual = worst_residual.max(s.consistency_residual());
        slices_meta.push(json!({
            "epsilon": epsilon,
            "mass_sq": s.mass_sq(),
            "consistency_residual": s.consistency_residual(),
        }));
        for &x in &xs {
            let value = match fig.profile() {
                ProfileChoice::A => radial_a(&s, x),
                ProfileChoice::B => radial_b(&s, x),
            }
            .map_err(|e| CliError::Failure(e.to_string()))?;
            report.push_row(vec![Cell::Float(epsilon), Cell::Float(x), Cell::Float(value)]);
        }
    }

    report.info("gauge", "top tower coefficient fixed to one (unnormalized)");
    report.info(
        "largest consistency residual across slices",
        format!("{worst_residual:.3e}"),
    );
    report.extra("slices", json!(slices_meta));

    emit(&report, args.format, args.out.as_deref())?;
    Ok(0)
}
