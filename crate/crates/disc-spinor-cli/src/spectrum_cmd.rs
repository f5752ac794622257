//! `spectrum`: tabulate mass eigenvalues over (epsilon, n, l0) sweeps.

use disc_spinor::spectrum::{solve_coefficients_unchecked, ModeParams};

use crate::output::{emit, Cell, Report};
use crate::parse;
use crate::{CliError, CliResult, SpectrumArgs};

pub fn run(args: &SpectrumArgs) -> CliResult<u8> {
    let epsilons = match (args.epsilon, &args.epsilon_range) {
        (Some(e), None) => vec![parse::check_epsilon(e)?],
        (None, Some(range)) => parse::parse_epsilon_range(range)?,
        (None, None) => vec![0.0],
        // clap rejects the combination via conflicts_with.
        (Some(_), Some(_)) => unreachable!("conflicting epsilon flags"),
    };
    let mut ns = if args.n.is_empty() {
        vec![0]
    } else {
        args.n.clone()
    };
    ns.sort_unstable();
    ns.dedup();
    let l0s = match (args.l0, &args.l0_range) {
        (Some(l0), None) => vec![l0],
        (None, Some(range)) => parse::parse_l0_range(range)?,
        (None, None) => (0..=5).collect(),
        (Some(_), Some(_)) => unreachable!("conflicting l0 flags"),
    };

    let mut report = Report::new(
        "spectrum",
        vec!["epsilon", "n", "l0", "mass_sq", "mass", "consistency_residual"],
    );
    report.config("epsilon-values", join(&epsilons));
    report.config("n-values", join(&ns));
    report.config("l0-values", join(&l0s));

    let mut skipped = 0usize;
    for &epsilon in &epsilons {
        for &n in &ns {
            for &l0 in &l0s {
                if l0 < n {
                    skipped += 1;
                    continue;
                }
                let params = ModeParams::new(epsilon, n, l0)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let s = solve_coefficients_unchecked(params);
                report.push_row(vec![
                    Cell::Float(epsilon),
                    Cell::Int(i64::from(n)),
                    Cell::Int(i64::from(l0)),
                    Cell::Float(s.mass_sq()),
                    Cell::Float(s.mass_sq().sqrt()),
                    Cell::Float(s.consistency_residual()),
                ]);
            }
        }
    }
    if skipped > 0 {
        report.info("skipped", format!("{skipped} cells with l0 < n"));
    }
    report.info(
        "consistency-residual",
        "worst defect of the tower recursion; above 1e-10 the closed-form \
         mass admits no such tower and the row is a forced fit",
    );

    emit(&report, args.format, args.out.as_deref())?;
    Ok(0)
}

fn join<T: std::fmt::Display>(values: &[T]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::join;

    #[test]
    fn join_spaces_values_in_order() {
        assert_eq!(join(&[0.0, 0.1, 0.25]), "0 0.1 0.25");
        assert_eq!(join(&[2u32, 5]), "2 5");
    }
}
