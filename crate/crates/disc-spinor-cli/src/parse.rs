//! Argument parsing helpers: sweep ranges, grid sizes, and domain checks.
//!
//! All validation happens here, before any computation or file I/O, so a
//! rejected flag can never leave partial output behind.

use crate::{CliError, CliResult};

/// Largest admissible spin-connection parameter, exclusive.
pub const EPSILON_SUP: f64 = 0.5;

/// Reject an epsilon outside [0, 0.5) with a usage error.
pub fn check_epsilon(epsilon: f64) -> CliResult<f64> {
    if epsilon.is_finite() && (0.0..EPSILON_SUP).contains(&epsilon) {
        Ok(epsilon)
    } else {
        Err(CliError::Usage(format!(
            "epsilon must lie in [0, 0.5), got {epsilon}"
        )))
    }
}

/// Evenly spaced inclusive grid with `count >= 2` points.
pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    debug_assert!(count >= 2);
    let step = (end - start) / (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i + 1 == count {
                end
            } else {
                start + step * i as f64
            }
        })
        .collect()
}

/// Parse "start:end:steps" into an inclusive epsilon sweep.
pub fn parse_epsilon_range(text: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let usage = || {
        CliError::Usage(format!(
            "--epsilon-range expects START:END:STEPS, got {text:?}"
        ))
    };
    if parts.len() != 3 {
        return Err(usage());
    }
    let start: f64 = parts[0].parse().map_err(|_| usage())?;
    let end: f64 = parts[1].parse().map_err(|_| usage())?;
    let steps: usize = parts[2].parse().map_err(|_| usage())?;
    if steps < 2 {
        return Err(CliError::Usage(format!(
            "--epsilon-range needs at least 2 steps, got {steps}"
        )));
    }
    if start > end {
        return Err(CliError::Usage(format!(
            "--epsilon-range start {start} exceeds end {end}"
        )));
    }
    check_epsilon(start)?;
    check_epsilon(end)?;
    Ok(linspace(start, end, steps))
}

/// Parse "start:end" into an inclusive degree sweep.
pub fn parse_l0_range(text: &str) -> CliResult<Vec<u32>> {
    let usage = || CliError::Usage(format!("--l0-range expects START:END, got {text:?}"));
    let (a, b) = text.split_once(':').ok_or_else(usage)?;
    let start: u32 = a.parse().map_err(|_| usage())?;
    let end: u32 = b.parse().map_err(|_| usage())?;
    if start > end {
        return Err(CliError::Usage(format!(
            "--l0-range start {start} exceeds end {end}"
        )));
    }
    Ok((start..=end).collect())
}

/// Grid size flag: "NX" alone or "NXxNE" for two-dimensional sweeps.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub nx: usize,
    pub ne: Option<usize>,
}

pub fn parse_grid(text: &str) -> CliResult<GridSpec> {
    let usage = || CliError::Usage(format!("--grid expects NX or NXxNE, got {text:?}"));
    let spec = match text.split_once('x') {
        Some((a, b)) => GridSpec {
            nx: a.parse().map_err(|_| usage())?,
            ne: Some(b.parse().map_err(|_| usage())?),
        },
        None => GridSpec {
            nx: text.parse().map_err(|_| usage())?,
            ne: None,
        },
    };
    if spec.nx < 2 || spec.ne.is_some_and(|ne| ne < 2) {
        return Err(CliError::Usage(format!(
            "--grid resolutions must be at least 2, got {text:?}"
        )));
    }
    Ok(spec)
}

/// Reject an endpoint margin that empties or inverts the x interval.
pub fn check_delta(delta: f64) -> CliResult<f64> {
    if delta.is_finite() && delta > 0.0 && delta < 1.0 {
        Ok(delta)
    } else {
        Err(CliError::Usage(format!(
            "--delta must lie in (0, 1), got {delta}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_range_is_inclusive_and_validated() {
        let eps = parse_epsilon_range("0:0.4:5").unwrap();
        assert_eq!(eps, vec![0.0, 0.1, 0.2, 0.30000000000000004, 0.4]);
        assert!(parse_epsilon_range("0:0.5:3").is_err());
        assert!(parse_epsilon_range("0.2:0.1:3").is_err());
        assert!(parse_epsilon_range("0:0.4:1").is_err());
        assert!(parse_epsilon_range("0:0.4").is_err());
    }

    #[test]
    fn l0_range_parses_inclusive_bounds() {
        assert_eq!(parse_l0_range("0:5").unwrap(), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(parse_l0_range("3:3").unwrap(), vec![3]);
        assert!(parse_l0_range("5:3").is_err());
        assert!(parse_l0_range("5").is_err());
        assert!(parse_l0_range("-1:3").is_err());
    }

    #[test]
    fn grid_spec_accepts_one_or_two_resolutions() {
        assert_eq!(
            parse_grid("400x50").unwrap(),
            GridSpec { nx: 400, ne: Some(50) }
        );
        assert_eq!(parse_grid("101").unwrap(), GridSpec { nx: 101, ne: None });
        assert!(parse_grid("1x50").is_err());
        assert!(parse_grid("400x1").is_err());
        assert!(parse_grid("0").is_err());
        assert!(parse_grid("axb").is_err());
    }

    #[test]
    fn linspace_hits_both_endpoints_exactly() {
        let xs = linspace(-0.99, 0.99, 67);
        assert_eq!(xs.len(), 67);
        assert_eq!(xs[0], -0.99);
        assert_eq!(xs[66], 0.99);
    }

    #[test]
    fn epsilon_domain_is_half_open() {
        assert!(check_epsilon(0.0).is_ok());
        assert!(check_epsilon(0.49).is_ok());
        assert!(check_epsilon(0.5).is_err());
        assert!(check_epsilon(0.6).is_err());
        assert!(check_epsilon(-0.1).is_err());
        assert!(check_epsilon(f64::NAN).is_err());
    }
}
