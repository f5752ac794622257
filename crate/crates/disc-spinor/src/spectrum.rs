//! Mass spectrum, terminating coefficient towers, radial profiles, massless
//! windows, normalization, endpoint expansions, and the non-terminating
//! divergence scan.
//!
//! A normalizable massive mode is a finite Legendre tower: the three-term
//! degree recursion for the coefficients `a^l` closes from above when the
//! dimensionless mass satisfies `(m rho0)^2 = l0 (l0 + 1 - 2 epsilon)`. The
//! recursion is solved downward from the terminating degree, and the last
//! (lowest-degree) relation, which receives no new unknown, is kept as a
//! consistency residual. The residual vanishes identically for `n = 0` and
//! for `epsilon = 0` but not for `epsilon > 0` with `n >= 1`; see
//! [`solve_coefficients`] for how that is surfaced rather than hidden.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::legendre::{legendre_seq, rising};
use crate::quadrature::gauss_jacobi;

/// Fixed phase multiplying the stored real `B` amplitude inside the
/// composite spinor state.
#[must_use]
pub fn b_phase() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

/// One endpoint of the compactified interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    /// `x = +1`, the disc origin.
    PlusOne,
    /// `x = -1`, the far region.
    MinusOne,
}

impl Endpoint {
    #[must_use]
    pub fn x(self) -> f64 {
        match self {
            Self::PlusOne => 1.0,
            Self::MinusOne => -1.0,
        }
    }
}

impl std::fmt::Display for Endpoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::PlusOne => "+1",
            Self::MinusOne => "-1",
        })
    }
}

/// Validated parameter triple of a massive tower.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeParams {
    epsilon: f64,
    n: u32,
    l0: u32,
}

impl ModeParams {
    /// `epsilon in [0, 1/2)`, `0 <= n <= l0`.
    pub fn new(epsilon: f64, n: u32, l0: u32) -> Result<Self> {
        if !epsilon.is_finite() || !(0.0..0.5).contains(&epsilon) {
            return Err(Error::EpsilonOutOfRange { epsilon });
        }
        if n > l0 {
            return Err(Error::OrderExceedsDegree { l: l0, n });
        }
        Ok(Self { epsilon, n, l0 })
    }

    #[must_use]
    pub fn epsilon(self) -> f64 {
        self.epsilon
    }

    #[must_use]
    pub fn n(self) -> u32 {
        self.n
    }

    #[must_use]
    pub fn l0(self) -> u32 {
        self.l0
    }
}

/// Squared dimensionless mass `(m rho0)^2 = l0 (l0 + 1 - 2 epsilon)` of the
/// tower terminating at degree `l0`.
pub fn mass_squared(l0: u32, epsilon: f64) -> Result<f64> {
    if !epsilon.is_finite() || !(0.0..0.5).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange { epsilon });
    }
    let l = f64::from(l0);
    Ok(l * (l + 1.0 - 2.0 * epsilon))
}

/// A solved coefficient tower.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSolution {
    params: ModeParams,
    mass_sq: f64,
    coeffs: Vec<f64>,
    consistency_residual: f64,
}

impl ModeSolution {
    #[must_use]
    pub fn params(&self) -> ModeParams {
        self.params
    }

    #[must_use]
    pub fn mass_sq(&self) -> f64 {
        self.mass_sq
    }

    /// Coefficients `a^l` for `l = n ..= l0`, ascending; `a^{l0} = 1`.
    #[must_use]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient at degree `l`, zero-extended outside `[n, l0]`.
    #[must_use]
    pub fn coeff(&self, l: i64) -> f64 {
        let n = i64::from(self.params.n);
        let l0 = i64::from(self.params.l0);
        if l < n || l > l0 {
            0.0
        } else {
            self.coeffs[(l - n) as usize]
        }
    }

    /// Absolute value of the lowest-degree recursion relation, which is not
    /// used as an input when solving downward.
    #[must_use]
    pub fn consistency_residual(&self) -> f64 {
        self.consistency_residual
    }

    /// Copy with the coefficient at degree `l` displaced by `delta`,
    /// leaving the recorded mass and consistency residual untouched.
    ///
    /// The copy no longer solves the recursion, which is the point:
    /// residual checks run against it must detect the displacement.
    pub fn with_perturbed_coeff(&self, l: i64, delta: f64) -> Result<Self> {
        let n = i64::from(self.params.n);
        let l0 = i64::from(self.params.l0);
        if l < n || l > l0 {
            return Err(Error::PerturbDegreeOutOfRange {
                l,
                n: self.params.n,
                l0: self.params.l0,
            });
        }
        let mut out = self.clone();
        out.coeffs[(l - n) as usize] += delta;
        Ok(out)
    }
}

/// The three-term relation at degree `l`, evaluated on a zero-extended
/// coefficient accessor. Vanishing of this expression for every `l` is what
/// the tower must satisfy.
fn recursion_relation(
    coeff: &dyn Fn(i64) -> f64,
    l: u32,
    n: u32,
    epsilon: f64,
    m_sq: f64,
) -> f64 {
    let lf = f64::from(l);
    let nf = f64::from(n);
    let li = i64::from(l);
    let upper = coeff(li + 1) * (lf + nf + 1.0) / (2.0 * lf + 3.0)
        * (m_sq - (lf + 2.0) * (lf + 1.0 + 2.0 * epsilon));
    let mid = coeff(li) * (m_sq - lf * (lf + 1.0) - 2.0 * nf * epsilon);
    let lower = if l == n {
        0.0
    } else {
        coeff(li - 1) * (lf - nf) / (2.0 * lf - 1.0)
            * (m_sq - (lf - 1.0) * (lf - 2.0 * epsilon))
    };
    upper + mid + lower
}

/// Solves the tower downward from `a^{l0} = 1` without gating on the
/// consistency residual. The residual is reported as found.
#[must_use]
pub fn solve_coefficients_unchecked(params: ModeParams) -> ModeSolution {
    let epsilon = params.epsilon;
    let n = params.n;
    let l0 = params.l0;
    let nf = f64::from(n);
    let m_sq = f64::from(l0) * (f64::from(l0) + 1.0 - 2.0 * epsilon);

    let count = (l0 - n + 1) as usize;
    let mut coeffs = vec![0.0; count];
    coeffs[count - 1] = 1.0;
    {
        let idx = |l: i64| -> Option<usize> {
            (i64::from(n)..=i64::from(l0))
                .contains(&l)
                .then(|| (l - i64::from(n)) as usize)
        };
        // a^{l-1} from the relation at l, for l = l0 down to n+1. The
        // divisor m_sq - (l-1)(l - 2 epsilon) is the gap to a lower
        // eigenvalue and never vanishes in this range.
        for l in ((n + 1)..=l0).rev() {
            let lf = f64::from(l);
            let li = i64::from(l);
            let upper = idx(li + 1).map_or(0.0, |i| coeffs[i]) * (lf + nf + 1.0)
                / (2.0 * lf + 3.0)
                * (m_sq - (lf + 2.0) * (lf + 1.0 + 2.0 * epsilon));
            let mid = idx(li).map_or(0.0, |i| coeffs[i])
                * (m_sq - lf * (lf + 1.0) - 2.0 * nf * epsilon);
            let divisor =
                (lf - nf) / (2.0 * lf - 1.0) * (m_sq - (lf - 1.0) * (lf - 2.0 * epsilon));
            coeffs[(l - 1 - n) as usize] = -(upper + mid) / divisor;
        }
    }

    let solution = ModeSolution {
        params,
        mass_sq: m_sq,
        coeffs,
        consistency_residual: 0.0,
    };
    let residual =
        recursion_relation(&|l| solution.coeff(l), n, n, epsilon, m_sq).abs();
    ModeSolution {
        consistency_residual: residual,
        ..solution
    }
}

/// Solves the tower and requires the left-over lowest-degree relation to be
/// satisfied.
///
/// The downward solve consumes all relations at `l = n+1 ..= l0`; the
/// relation at `l = n` is then a genuine constraint. It holds identically
/// for `n = 0` (any `epsilon`) and for `epsilon = 0` (any `n`), but is
/// violated for `epsilon > 0` with `n >= 1` (by `4 n epsilon` already at
/// `l0 = n`), so those parameter cells return an error here rather than a
/// silently non-solving tower. Use [`solve_coefficients_unchecked`] to
/// inspect such towers anyway.
pub fn solve_coefficients(params: ModeParams) -> Result<ModeSolution> {
    let solution = solve_coefficients_unchecked(params);
    if solution.consistency_residual >= 1e-8 {
        return Err(Error::RecursionInconsistent {
            epsilon: params.epsilon,
            n: params.n,
            l0: params.l0,
            residual: solution.consistency_residual,
        });
    }
    Ok(solution)
}

fn check_x_for_profile(x: f64) -> Result<()> {
    if !x.is_finite() || x > 1.0 || x < -1.0 {
        return Err(Error::XOutOfDomain { x });
    }
    if x == -1.0 {
        return Err(Error::BoundaryTouched { x });
    }
    Ok(())
}

/// Polynomial part of the first profile: `sum_l a^l P^l_n(x)`, i.e.
/// [`radial_a`] with the endpoint weight `(1+x)^{-epsilon}` divided out.
pub fn radial_a_regular(s: &ModeSolution, x: f64) -> Result<f64> {
    if !x.is_finite() || !(-1.0..=1.0).contains(&x) {
        return Err(Error::XOutOfDomain { x });
    }
    let n = s.params.n;
    let seq = legendre_seq(s.params.l0, n, x)?;
    Ok(s.coeffs.iter().zip(&seq).map(|(a, p)| a * p).sum())
}

/// First radial profile `A(x) = (1+x)^{-epsilon} sum_l a^l P^l_n(x)` on
/// `-1 < x <= 1`.
pub fn radial_a(s: &ModeSolution, x: f64) -> Result<f64> {
    check_x_for_profile(x)?;
    Ok((1.0 + x).powf(-s.params.epsilon) * radial_a_regular(s, x)?)
}

/// Bracket sum of the companion profile:
/// `sum_l a^l { [l(l-n+1) P^{l+1}_n - (l+n)(l+1) P^{l-1}_n]/(2l+1) - n P^l_n }`
/// with degree neighbors zero-extended below the order.
fn b_bracket(s: &ModeSolution, x: f64) -> Result<f64> {
    let n = s.params.n;
    let nf = f64::from(n);
    let seq = legendre_seq(s.params.l0 + 1, n, x)?;
    let p = |l: i64| -> f64 {
        if l < i64::from(n) {
            0.0
        } else {
            seq[(l - i64::from(n)) as usize]
        }
    };
    let mut sum = 0.0;
    for l in n..=s.params.l0 {
        let lf = f64::from(l);
        let li = i64::from(l);
        let ladder = (lf * (lf - nf + 1.0) * p(li + 1) - (lf + nf) * (lf + 1.0) * p(li - 1))
            / (2.0 * lf + 1.0);
        sum += s.coeff(li) * (ladder - nf * p(li));
    }
    Ok(sum)
}

/// Companion profile amplitude with the interior weight divided out:
/// [`radial_b`] times `(1+x)^{epsilon}`, i.e.
/// `bracket / (m rho0 sqrt(1-x^2))`. Domain `-1 < x < 1`.
pub fn radial_b_regular(s: &ModeSolution, x: f64) -> Result<f64> {
    if s.params.l0 == 0 {
        return Err(Error::NoBMode);
    }
    if !x.is_finite() || !(-1.0..=1.0).contains(&x) {
        return Err(Error::XOutOfDomain { x });
    }
    if x.abs() == 1.0 {
        return Err(Error::BoundaryTouched { x });
    }
    let m = s.mass_sq.sqrt();
    Ok(b_bracket(s, x)? / (m * (1.0 - x * x).sqrt()))
}

/// Companion radial amplitude `B(x)` (real; the composite state carries it
/// multiplied by the fixed phase [`b_phase`]):
///
/// `(1+x)^{-epsilon} / (m rho0 sqrt(1-x^2)) *` the bracket sum of
/// [`radial_b_regular`].
///
/// For `n = 0` the endpoint values are finite limits, both `0`; for
/// `n >= 1` the endpoints are rejected. Towers with `l0 = 0` carry no
/// companion profile.
pub fn radial_b(s: &ModeSolution, x: f64) -> Result<f64> {
    if s.params.l0 == 0 {
        return Err(Error::NoBMode);
    }
    if !x.is_finite() || !(-1.0..=1.0).contains(&x) {
        return Err(Error::XOutOfDomain { x });
    }
    if x.abs() == 1.0 {
        if s.params.n == 0 {
            return Ok(0.0);
        }
        return Err(Error::BoundaryTouched { x });
    }
    Ok((1.0 + x).powf(-s.params.epsilon) * radial_b_regular(s, x)?)
}

/// Radial profiles sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfiles {
    pub xs: Vec<f64>,
    pub a_values: Vec<f64>,
    /// Real amplitudes; multiply by [`b_phase`] for the complex profile.
    /// All zero when the mode has no companion profile.
    pub b_amplitudes: Vec<f64>,
}

/// Samples both profiles of a solved tower on a grid of interior points
/// (`x = +1` allowed, and `x = -1` rejected, as in [`radial_a`]).
pub fn sample_profiles(s: &ModeSolution, xs: &[f64]) -> Result<RadialProfiles> {
    let mut a_values = Vec::with_capacity(xs.len());
    let mut b_amplitudes = Vec::with_capacity(xs.len());
    for &x in xs {
        a_values.push(radial_a(s, x)?);
        b_amplitudes.push(if s.params.l0 == 0 {
            0.0
        } else {
            radial_b(s, x)?
        });
    }
    Ok(RadialProfiles {
        xs: xs.to_vec(),
        a_values,
        b_amplitudes,
    })
}

/// Normalization constant `N` of the composite state:
/// `2 pi integral (A^2 + B^2) dx * N^2 = 1`.
///
/// Integrates with a Gauss-Jacobi rule of `base_nodes` nodes; see
/// [`normalize`] for the weight choice and the role of node doubling.
pub fn normalize_with_order(s: &ModeSolution, base_nodes: usize) -> Result<f64> {
    let epsilon = s.params.epsilon;
    let needed = s.params.l0 as usize + 2;
    if base_nodes < needed {
        return Err(Error::InsufficientNodes {
            needed,
            got: base_nodes,
        });
    }
    let weighted_integral = |nodes: usize| -> Result<f64> {
        let quad = gauss_jacobi(nodes, 0.0, -2.0 * epsilon)?;
        let mut total = 0.0;
        for (&x, &w) in quad.nodes.iter().zip(&quad.weights) {
            let sa = radial_a_regular(s, x)?;
            let mut value = sa * sa;
            if s.params.l0 >= 1 {
                let sb = radial_b_regular(s, x)?;
                value += sb * sb;
            }
            total += w * value;
        }
        Ok(total)
    };
    let coarse = weighted_integral(base_nodes)?;
    let fine = weighted_integral(2 * base_nodes)?;
    let delta = ((fine - coarse) / fine).abs();
    if delta > 1e-9 {
        return Err(Error::QuadratureNotConverged { delta });
    }
    Ok(1.0 / (2.0 * std::f64::consts::PI * fine).sqrt())
}

/// Normalization constant with the default quadrature order.
///
/// The integral is computed with a Gauss-Jacobi rule of weight
/// `(1+x)^{-2 epsilon}`, which absorbs the endpoint singularity of `A^2`
/// exactly; the remaining integrand factor is polynomial, so the rule is
/// exact and the node-doubling check is a guard, not a convergence knob.
pub fn normalize(s: &ModeSolution) -> Result<f64> {
    normalize_with_order(s, 80)
}

/// Leading endpoint behavior of a solved `n = 0` tower.
///
/// Near `x = +1`: `A(x)/A(1) = 1 + a_next_coeff (1-x) + O((1-x)^2)` and
/// `B(x)/A(1) = b_over_a_leading (1-x)^{b_exponent} (1 + O(1-x))`.
/// Near `x = -1` with `A(x) = C (1+x)^{a_exponent} (1 + a_next_coeff (1+x)
/// + ...)`: `B(x) = C b_over_a_leading (1+x)^{b_exponent} (1 + O(1+x))`.
/// The ratios are gauge-invariant, so they are returned in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointExpansion {
    pub end: Endpoint,
    /// Power of `(1 -/+ x)` carried by `A` at the endpoint.
    pub a_exponent: f64,
    /// Coefficient of the next order of `A` relative to its leading term.
    pub a_next_coeff: f64,
    /// Power of `(1 -/+ x)` carried by `B`; absent for towers without a
    /// companion profile.
    pub b_exponent: Option<f64>,
    /// Leading `B` coefficient relative to `A`'s leading coefficient.
    pub b_over_a_leading: Option<f64>,
}

/// Endpoint expansion data for the `n = 0` branch.
pub fn endpoint_expansion(s: &ModeSolution, end: Endpoint) -> Result<EndpointExpansion> {
    if s.params.n != 0 {
        return Err(Error::EndpointOrderUnsupported { n: s.params.n });
    }
    let epsilon = s.params.epsilon;
    let m_sq = s.mass_sq;
    let m = m_sq.sqrt();
    let has_b = s.params.l0 >= 1;
    let exp = match end {
        Endpoint::PlusOne => EndpointExpansion {
            end,
            a_exponent: 0.0,
            a_next_coeff: 0.5 * (epsilon - m_sq),
            b_exponent: has_b.then_some(0.5),
            b_over_a_leading: has_b.then_some(-m / std::f64::consts::SQRT_2),
        },
        Endpoint::MinusOne => EndpointExpansion {
            end,
            a_exponent: -epsilon,
            a_next_coeff: -m_sq / (2.0 * (1.0 - 2.0 * epsilon)),
            b_exponent: has_b.then_some(0.5 - epsilon),
            b_over_a_leading: has_b
                .then_some(std::f64::consts::SQRT_2 * m / (2.0 * (1.0 - 2.0 * epsilon))),
        },
    };
    Ok(exp)
}

/// Normalizability window of one massless branch: the branch is square
/// integrable iff `lower < n < upper`. When it fails, `diverges_at` names
/// an offending endpoint whose norm integral blows up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchWindow {
    pub lower: f64,
    pub upper: f64,
    pub normalizable: bool,
    pub diverges_at: Option<Endpoint>,
}

/// `at_low` is the endpoint blamed when `n <= lower`, `at_high` when
/// `n >= upper` (checked in that order; at `epsilon = 0` the companion
/// window is empty and `n = 1` violates both ends at once).
fn window(lower: f64, upper: f64, n: f64, at_low: Endpoint, at_high: Endpoint) -> BranchWindow {
    let normalizable = n > lower && n < upper;
    let diverges_at = if normalizable {
        None
    } else if n <= lower {
        Some(at_low)
    } else {
        Some(at_high)
    };
    BranchWindow {
        lower,
        upper,
        normalizable,
        diverges_at,
    }
}

/// Massless-mode verdict for integer orbital number `n`.
///
/// The first-profile branch `A = 2^{n+epsilon} (1-x)^{n/2}
/// (1+x)^{-n/2-epsilon}` (vanishing `B`) is square integrable iff
/// `-1 < n < 1 - 2 epsilon`, which admits exactly the integer `n = 0`. The
/// companion branch's window `1 - 2 epsilon < n < 1` contains no integer
/// for any allowed `epsilon`, so it is always reported non-normalizable.
#[derive(Debug, Clone, PartialEq)]
pub struct MasslessSolution {
    pub epsilon: f64,
    pub n: i32,
    pub a_window: BranchWindow,
    pub b_window: BranchWindow,
    /// `sqrt((1 - 2 epsilon) / (4 pi))`, the closed-form normalization of
    /// the composite state; present only when the A branch is normalizable.
    pub norm_const: Option<f64>,
}

impl MasslessSolution {
    /// Whether a normalizable massless state exists at this `n`.
    #[must_use]
    pub fn normalizable(&self) -> bool {
        self.a_window.normalizable
    }

    /// The A-branch profile `2^{n+epsilon} (1-x)^{n/2} (1+x)^{-n/2-epsilon}`
    /// regardless of normalizability. Domain `-1 < x <= 1` (`x = +1` only
    /// for `n >= 0`).
    pub fn profile_a(&self, x: f64) -> Result<f64> {
        check_x_for_profile(x)?;
        if x == 1.0 && self.n < 0 {
            return Err(Error::BoundaryTouched { x });
        }
        let nf = f64::from(self.n);
        Ok(2f64.powf(nf + self.epsilon)
            * (1.0 - x).powf(nf / 2.0)
            * (1.0 + x).powf(-nf / 2.0 - self.epsilon))
    }

    /// Samples the A branch on a grid; `B` is identically zero.
    pub fn sample(&self, xs: &[f64]) -> Result<RadialProfiles> {
        let mut a_values = Vec::with_capacity(xs.len());
        for &x in xs {
            a_values.push(self.profile_a(x)?);
        }
        Ok(RadialProfiles {
            xs: xs.to_vec(),
            a_values,
            b_amplitudes: vec![0.0; xs.len()],
        })
    }
}

/// Classifies the massless branches at integer `n` (negative values
/// admitted; the window logic decides).
pub fn massless_solution(epsilon: f64, n: i32) -> Result<MasslessSolution> {
    if !epsilon.is_finite() || !(0.0..0.5).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange { epsilon });
    }
    let nf = f64::from(n);
    // The A branch decays at the origin and grows in the far region as n
    // increases; the companion branch does the opposite.
    let a_window = window(
        -1.0,
        1.0 - 2.0 * epsilon,
        nf,
        Endpoint::PlusOne,
        Endpoint::MinusOne,
    );
    let b_window = window(
        1.0 - 2.0 * epsilon,
        1.0,
        nf,
        Endpoint::MinusOne,
        Endpoint::PlusOne,
    );
    let norm_const = a_window
        .normalizable
        .then(|| ((1.0 - 2.0 * epsilon) / (4.0 * std::f64::consts::PI)).sqrt());
    Ok(MasslessSolution {
        epsilon,
        n,
        a_window,
        b_window,
        norm_const,
    })
}

/// Trace of the non-terminating recursion at a mass off the spectrum.
///
/// `coefficients[k]` holds `a^{n+k}` for `k = 0 ..= l_stop - n`, from the
/// seed `a^n = 1`. `checkpoints` are the quarter, half, and full degrees of
/// the scan; `partial_norms` the weighted partial sums
/// `sum a_l^2 * 2/(2l+1) * (l+n)!/(l-n)!` up to each checkpoint, whose
/// growth across the last doubling decides `norm_diverges`. `tail_abs`
/// holds `|a^l|` at the checkpoints so the measured tail decay is part of
/// the report. `asymptotic_residual` is
/// `|a^{l+1} + 2 a^l + a^{l-1}| / max(|...|)` at `l = l_stop - 1`, the
/// large-degree limit of the recursion relation.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceTrace {
    pub epsilon: f64,
    pub n: u32,
    pub m_sq: f64,
    pub l_stop: u32,
    pub coefficients: Vec<f64>,
    pub checkpoints: [u32; 3],
    pub partial_norms: [f64; 3],
    pub norm_growth: f64,
    pub norm_diverges: bool,
    pub asymptotic_residual: f64,
    pub tail_abs: [f64; 3],
}

/// Runs the recursion upward from `a^n = 1` at a mass that is not an
/// eigenvalue, demonstrating that the series cannot terminate and that the
/// resulting norm sum misbehaves for `n >= 1` (for `n = 0` the weighted sum
/// converges even though the tower never terminates; the trace reports the
/// measured behavior either way).
///
/// Rejected masses: within `1e-9` of an eigenvalue `l (l + 1 - 2 epsilon)`,
/// or of a pivot zero `(l+2)(l+1+2 epsilon)` that would divide the upward
/// step by zero.
pub fn divergence_scan(epsilon: f64, n: u32, m_sq: f64, l_stop: u32) -> Result<DivergenceTrace> {
    if !epsilon.is_finite() || !(0.0..0.5).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange { epsilon });
    }
    if l_stop < n + 8 {
        return Err(Error::ScanRangeTooShort {
            l_stop,
            n,
            min_span: 8,
        });
    }
    for l in 0..=(l_stop + 2) {
        let lf = f64::from(l);
        if l >= n && (m_sq - lf * (lf + 1.0 - 2.0 * epsilon)).abs() < 1e-9 {
            return Err(Error::DegenerateScanMass { m_sq, l });
        }
        if (m_sq - (lf + 2.0) * (lf + 1.0 + 2.0 * epsilon)).abs() < 1e-9 {
            return Err(Error::DegenerateScanMass { m_sq, l });
        }
    }

    let nf = f64::from(n);
    let count = (l_stop - n + 1) as usize;
    let mut coefficients = vec![0.0; count];
    coefficients[0] = 1.0;
    for l in n..l_stop {
        let lf = f64::from(l);
        let a_l = coefficients[(l - n) as usize];
        let a_lm1 = if l == n {
            0.0
        } else {
            coefficients[(l - n - 1) as usize]
        };
        let mid = a_l * (m_sq - lf * (lf + 1.0) - 2.0 * nf * epsilon);
        let lower = if l == n {
            0.0
        } else {
            a_lm1 * (lf - nf) / (2.0 * lf - 1.0) * (m_sq - (lf - 1.0) * (lf - 2.0 * epsilon))
        };
        let pivot = (lf + nf + 1.0) / (2.0 * lf + 3.0)
            * (m_sq - (lf + 2.0) * (lf + 1.0 + 2.0 * epsilon));
        coefficients[(l + 1 - n) as usize] = -(mid + lower) / pivot;
    }

    let span = l_stop - n;
    let checkpoints = [n + span / 4, n + span / 2, l_stop];
    let partial_norm = |up_to: u32| -> f64 {
        (n..=up_to)
            .map(|l| {
                let a = coefficients[(l - n) as usize];
                a * a * 2.0 / f64::from(2 * l + 1) * rising(l - n, l + n)
            })
            .sum()
    };
    let partial_norms = checkpoints.map(partial_norm);
    let tail_abs = checkpoints.map(|l| coefficients[(l - n) as usize].abs());
    let norm_growth = (partial_norms[2] - partial_norms[1]) / partial_norms[1];
    let last = count - 1;
    let trio = [
        coefficients[last - 2],
        coefficients[last - 1],
        coefficients[last],
    ];
    let scale = trio.iter().map(|a| a.abs()).fold(0.0, f64::max);
    let asymptotic_residual = (trio[0] + 2.0 * trio[1] + trio[2]).abs() / scale;

    Ok(DivergenceTrace {
        epsilon,
        n,
        m_sq,
        l_stop,
        coefficients,
        checkpoints,
        partial_norms,
        norm_growth,
        norm_diverges: norm_growth > 1e-4,
        asymptotic_residual,
        tail_abs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendre::legendre_p;
    use approx::assert_abs_diff_eq;

    #[test]
    fn mass_squared_closed_form() {
        assert_eq!(mass_squared(2, 0.25).unwrap(), 5.0);
        assert_eq!(mass_squared(0, 0.37).unwrap(), 0.0);
        for &eps in &[0.0, 0.1, 0.4, 0.49] {
            assert_abs_diff_eq!(mass_squared(2, eps).unwrap(), 2.0 * (3.0 - 2.0 * eps));
            // Monotone in l0.
            let mut prev = -1.0;
            for l0 in 0..8 {
                let m = mass_squared(l0, eps).unwrap();
                assert!(m > prev);
                prev = m;
            }
        }
        assert!(mass_squared(2, 0.5).is_err());
        assert!(mass_squared(2, -0.1).is_err());
    }

    #[test]
    fn params_validate() {
        assert!(ModeParams::new(0.2, 3, 2).is_err());
        assert!(ModeParams::new(0.5, 0, 2).is_err());
        assert!(ModeParams::new(0.0, 2, 2).is_ok());
    }

    #[test]
    fn tower_closed_forms_n0_l0_2() {
        for &eps in &[0.1, 0.25, 0.4] {
            let s = solve_coefficients(ModeParams::new(eps, 0, 2).unwrap()).unwrap();
            assert_eq!(s.coeff(2), 1.0);
            assert_abs_diff_eq!(s.coeff(1), 3.0 * eps / (2.0 - eps), epsilon = 1e-14);
            assert_abs_diff_eq!(
                s.coeff(0),
                -2.0 * eps * (1.0 - 2.0 * eps) / ((2.0 - eps) * (3.0 - 2.0 * eps)),
                epsilon = 1e-14
            );
            assert!(s.consistency_residual() < 1e-12);
        }
        let s = solve_coefficients(ModeParams::new(0.25, 0, 2).unwrap()).unwrap();
        assert_abs_diff_eq!(s.coeff(1), 0.428_571_428_571_428_6, epsilon = 1e-15);
        assert_abs_diff_eq!(s.coeff(0), -0.057_142_857_142_857_1, epsilon = 1e-15);
    }

    #[test]
    fn tower_is_kronecker_delta_at_epsilon_zero() {
        for (n, l0) in [(1u32, 4u32), (0, 3), (2, 5)] {
            let s = solve_coefficients(ModeParams::new(0.0, n, l0).unwrap()).unwrap();
            for l in n..=l0 {
                let want = if l == l0 { 1.0 } else { 0.0 };
                assert_eq!(s.coeff(i64::from(l)), want, "l = {l}");
            }
            assert_eq!(s.consistency_residual(), 0.0);
        }
    }

    #[test]
    fn next_to_leading_closed_form_n0() {
        for l0 in 1..=5u32 {
            for &eps in &[0.1, 0.3] {
                let s = solve_coefficients(ModeParams::new(eps, 0, l0).unwrap()).unwrap();
                let want = eps * f64::from(2 * l0 - 1) / (f64::from(l0) - eps);
                assert_abs_diff_eq!(s.coeff(i64::from(l0) - 1), want, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn overdetermined_cells_are_reported_not_hidden() {
        // l0 = n: residual is exactly 4 n epsilon.
        for (eps, n) in [(0.1, 1u32), (0.25, 2), (0.4, 1)] {
            let s = solve_coefficients_unchecked(ModeParams::new(eps, n, n).unwrap());
            assert_abs_diff_eq!(
                s.consistency_residual(),
                4.0 * f64::from(n) * eps,
                epsilon = 1e-13
            );
            assert!(matches!(
                solve_coefficients(ModeParams::new(eps, n, n).unwrap()),
                Err(Error::RecursionInconsistent { .. })
            ));
        }
        // n = 1, l0 = 2: a^1 = 9 eps/(2 - eps), residual 24 eps (1-2eps)/(2-eps).
        for &eps in &[0.1, 0.25, 0.49] {
            let s = solve_coefficients_unchecked(ModeParams::new(eps, 1, 2).unwrap());
            assert_abs_diff_eq!(s.coeff(1), 9.0 * eps / (2.0 - eps), epsilon = 1e-13);
            assert_abs_diff_eq!(
                s.consistency_residual(),
                24.0 * eps * (1.0 - 2.0 * eps) / (2.0 - eps),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn radial_a_examples() {
        let s = solve_coefficients(ModeParams::new(0.0, 0, 2).unwrap()).unwrap();
        for &x in &[-0.9, -0.3, 0.0, 0.5, 1.0] {
            assert_abs_diff_eq!(
                radial_a(&s, x).unwrap(),
                legendre_p(2, 0, x).unwrap(),
                epsilon = 1e-15
            );
        }
        let s = solve_coefficients(ModeParams::new(0.25, 0, 2).unwrap()).unwrap();
        assert_abs_diff_eq!(radial_a(&s, 0.0).unwrap(), -0.557_142_857_142_857, epsilon = 1e-13);

        // n = 1 tower evaluated against an independently assembled sum.
        let eps = 0.49;
        let s = solve_coefficients_unchecked(ModeParams::new(eps, 1, 2).unwrap());
        let x = 0.5_f64;
        let want = (1.0 + x).powf(-eps)
            * (legendre_p(2, 1, x).unwrap()
                + 9.0 * eps / (2.0 - eps) * legendre_p(1, 1, x).unwrap());
        assert_abs_diff_eq!(radial_a(&s, x).unwrap(), want, epsilon = 1e-13);

        assert!(matches!(
            radial_a(&s, -1.0),
            Err(Error::BoundaryTouched { .. })
        ));
        assert!(matches!(radial_a(&s, -1.2), Err(Error::XOutOfDomain { .. })));
    }

    #[test]
    fn radial_b_epsilon_zero_closed_form() {
        let s = solve_coefficients(ModeParams::new(0.0, 0, 2).unwrap()).unwrap();
        for &x in &[-0.95, -0.4, 0.0, 0.3, 0.8] {
            let want = (6.0f64.sqrt() / 5.0)
                * (legendre_p(3, 0, x).unwrap() - legendre_p(1, 0, x).unwrap())
                / (1.0 - x * x).sqrt();
            assert_abs_diff_eq!(radial_b(&s, x).unwrap(), want, epsilon = 1e-13);
        }
    }

    #[test]
    fn radial_b_general_epsilon_closed_form() {
        let eps = 0.3;
        let s = solve_coefficients(ModeParams::new(eps, 0, 2).unwrap()).unwrap();
        let m = (2.0 * (3.0 - 2.0 * eps)).sqrt();
        for &x in &[-0.7, 0.1, 0.6] {
            let p = |l: u32| legendre_p(l, 0, x).unwrap();
            let bracket = 1.2 * (p(3) - p(1)) + 2.0 * eps / (2.0 - eps) * (p(2) - p(0));
            let want = (1.0 + x).powf(-eps) / (m * (1.0 - x * x).sqrt()) * bracket;
            assert_abs_diff_eq!(radial_b(&s, x).unwrap(), want, epsilon = 1e-13);
        }
    }

    #[test]
    fn radial_b_endpoints_and_errors() {
        let s0 = solve_coefficients(ModeParams::new(0.3, 0, 2).unwrap()).unwrap();
        assert_eq!(radial_b(&s0, 1.0).unwrap(), 0.0);
        assert_eq!(radial_b(&s0, -1.0).unwrap(), 0.0);
        let s1 = solve_coefficients_unchecked(ModeParams::new(0.3, 1, 2).unwrap());
        assert!(matches!(
            radial_b(&s1, 1.0),
            Err(Error::BoundaryTouched { .. })
        ));
        let massless = solve_coefficients(ModeParams::new(0.3, 0, 0).unwrap()).unwrap();
        assert!(matches!(radial_b(&massless, 0.0), Err(Error::NoBMode)));
    }

    /// The companion amplitude must satisfy the first-order coupling: it
    /// equals the first-order operator applied to A, divided by the mass.
    /// This holds for arbitrary coefficient towers, so it pins the bracket
    /// sum (including all signs) independently of the recursion.
    #[test]
    fn companion_amplitude_matches_first_order_operator() {
        for (eps, n, l0) in [(0.3, 0u32, 1u32), (0.25, 0, 3), (0.4, 1, 2), (0.1, 2, 4)] {
            let s = solve_coefficients_unchecked(ModeParams::new(eps, n, l0).unwrap());
            let m = s.mass_sq().sqrt();
            let nf = f64::from(n);
            let h = 1e-6;
            for &x in &[-0.9, -0.2, 0.4, 0.9] {
                let a = |x: f64| radial_a(&s, x).unwrap();
                let da = (a(x + h) - a(x - h)) / (2.0 * h);
                let sq = (1.0 - x * x).sqrt();
                let op = -sq * (da + nf * a(x) / (1.0 - x * x))
                    - eps * ((1.0 - x) / (1.0 + x)).sqrt() * a(x);
                assert_abs_diff_eq!(radial_b(&s, x).unwrap(), op / m, epsilon = 1e-5);
            }
        }
    }

    #[test]
    fn normalize_closed_form_cases() {
        // Massless tower: A = (1+x)^0 = 1, integral 2, with 2 pi angular factor.
        let s = solve_coefficients(ModeParams::new(0.0, 0, 0).unwrap()).unwrap();
        assert_abs_diff_eq!(
            normalize(&s).unwrap(),
            1.0 / (4.0 * std::f64::consts::PI).sqrt(),
            epsilon = 1e-14
        );
        // epsilon = 0, l0 = 2: integral A^2 = 2/5 and integral B^2 = 2/5.
        let s = solve_coefficients(ModeParams::new(0.0, 0, 2).unwrap()).unwrap();
        assert_abs_diff_eq!(
            normalize(&s).unwrap(),
            (5.0 / (8.0 * std::f64::consts::PI)).sqrt(),
            epsilon = 1e-13
        );
        // Near the upper epsilon edge the weighted rule still converges.
        let s = solve_coefficients(ModeParams::new(0.49, 0, 1).unwrap()).unwrap();
        let norm = normalize(&s).unwrap();
        assert!(norm.is_finite() && norm > 0.0);
    }

    #[test]
    fn normalize_order_independent_above_exactness_threshold() {
        // The integrand is polynomial under the Jacobi weight, so any order
        // past exactness returns the same constant up to rounding.
        let s = solve_coefficients(ModeParams::new(0.25, 0, 2).unwrap()).unwrap();
        let reference = normalize(&s).unwrap();
        for nodes in [8, 20, 160] {
            assert_abs_diff_eq!(
                normalize_with_order(&s, nodes).unwrap(),
                reference,
                epsilon = 1e-14
            );
        }
        assert_eq!(
            normalize_with_order(&s, 2),
            Err(Error::InsufficientNodes { needed: 4, got: 2 })
        );
    }

    #[test]
    fn perturbed_coeff_changes_exactly_one_entry() {
        let s = solve_coefficients(ModeParams::new(0.25, 0, 2).unwrap()).unwrap();
        let p = s.with_perturbed_coeff(1, 1e-3).unwrap();
        assert_eq!(p.params(), s.params());
        assert_eq!(p.mass_sq(), s.mass_sq());
        assert_eq!(p.coeff(1), s.coeff(1) + 1e-3);
        assert_eq!(p.coeff(0), s.coeff(0));
        assert_eq!(p.coeff(2), s.coeff(2));
        assert_eq!(
            s.with_perturbed_coeff(3, 1e-3),
            Err(Error::PerturbDegreeOutOfRange { l: 3, n: 0, l0: 2 })
        );
    }

    #[test]
    fn endpoint_expansion_fields() {
        let s = solve_coefficients(ModeParams::new(0.0, 0, 1).unwrap()).unwrap();
        let e = endpoint_expansion(&s, Endpoint::PlusOne).unwrap();
        assert_eq!(e.a_next_coeff, -1.0);
        assert_eq!(e.a_exponent, 0.0);

        let s = solve_coefficients(ModeParams::new(0.25, 0, 2).unwrap()).unwrap();
        let plus = endpoint_expansion(&s, Endpoint::PlusOne).unwrap();
        assert_abs_diff_eq!(plus.a_next_coeff, 0.5 * (0.25 - 5.0));
        assert_eq!(plus.b_exponent, Some(0.5));
        assert_abs_diff_eq!(
            plus.b_over_a_leading.unwrap(),
            -5.0f64.sqrt() / 2.0f64.sqrt(),
            epsilon = 1e-15
        );
        let minus = endpoint_expansion(&s, Endpoint::MinusOne).unwrap();
        assert_eq!(minus.a_exponent, -0.25);
        assert_abs_diff_eq!(minus.a_next_coeff, -5.0);
        assert_eq!(minus.b_exponent, Some(0.25));
        assert_abs_diff_eq!(
            minus.b_over_a_leading.unwrap(),
            2.0f64.sqrt() * 5.0f64.sqrt() / 1.0,
            epsilon = 1e-15
        );

        // Exact constants at epsilon = 0, l0 = 2: -sqrt(3) and +sqrt(3).
        let s = solve_coefficients(ModeParams::new(0.0, 0, 2).unwrap()).unwrap();
        let plus = endpoint_expansion(&s, Endpoint::PlusOne).unwrap();
        assert_abs_diff_eq!(plus.b_over_a_leading.unwrap(), -3.0f64.sqrt(), epsilon = 1e-15);
        let minus = endpoint_expansion(&s, Endpoint::MinusOne).unwrap();
        assert_abs_diff_eq!(minus.b_over_a_leading.unwrap(), 3.0f64.sqrt(), epsilon = 1e-15);

        let s1 = solve_coefficients_unchecked(ModeParams::new(0.3, 1, 2).unwrap());
        assert!(matches!(
            endpoint_expansion(&s1, Endpoint::PlusOne),
            Err(Error::EndpointOrderUnsupported { n: 1 })
        ));
        let s0 = solve_coefficients(ModeParams::new(0.3, 0, 0).unwrap()).unwrap();
        let e = endpoint_expansion(&s0, Endpoint::PlusOne).unwrap();
        assert_eq!(e.b_exponent, None);
        assert_eq!(e.b_over_a_leading, None);
    }

    #[test]
    fn massless_windows() {
        let s = massless_solution(0.3, 0).unwrap();
        assert!(s.normalizable());
        assert_abs_diff_eq!(
            s.norm_const.unwrap(),
            (0.4 / (4.0 * std::f64::consts::PI)).sqrt()
        );
        // Profile matches 2^eps (1+x)^{-eps}.
        for &x in &[-0.9, 0.0, 1.0] {
            assert_abs_diff_eq!(
                s.profile_a(x).unwrap(),
                2f64.powf(0.3) * (1.0 + x).powf(-0.3),
                epsilon = 1e-14
            );
        }

        let s = massless_solution(0.3, 1).unwrap();
        assert!(!s.normalizable());
        assert_eq!(s.a_window.diverges_at, Some(Endpoint::MinusOne));
        assert_eq!(s.norm_const, None);

        let s = massless_solution(0.3, -1).unwrap();
        assert!(!s.normalizable());
        assert_eq!(s.a_window.diverges_at, Some(Endpoint::PlusOne));

        // Companion branch never admits an integer.
        for eps in [0.0, 0.1, 0.3, 0.49] {
            for n in -3..=3 {
                let s = massless_solution(eps, n).unwrap();
                assert!(!s.b_window.normalizable, "eps = {eps}, n = {n}");
                assert!(s.b_window.diverges_at.is_some());
            }
        }
        // The far-region divergence of the companion branch at n = 0.
        let s = massless_solution(0.3, 0).unwrap();
        assert_eq!(s.b_window.diverges_at, Some(Endpoint::MinusOne));

        assert!(massless_solution(0.5, 0).is_err());
    }

    #[test]
    fn divergence_scan_rejects_degenerate_masses() {
        // Eigenvalue of the l0 = 2 tower at epsilon = 0.25 (the pivot zeros
        // sit at non-integer degrees there, so the eigenvalue check fires).
        assert!(matches!(
            divergence_scan(0.25, 0, 5.0, 100),
            Err(Error::DegenerateScanMass { l: 2, .. })
        ));
        // At epsilon = 0 the pivot-zero set coincides with the eigenvalue
        // set; M = 2 is caught as the pivot zero at l = 0.
        assert!(matches!(
            divergence_scan(0.0, 0, 2.0, 100),
            Err(Error::DegenerateScanMass { l: 0, .. })
        ));
        // Pivot zero: (l+2)(l+1+2 eps) = 3.0 at l = 0 for eps = 0.25.
        assert!(matches!(
            divergence_scan(0.25, 0, 3.0, 200),
            Err(Error::DegenerateScanMass { l: 0, .. })
        ));
        assert!(matches!(
            divergence_scan(0.25, 0, 3.1, 6),
            Err(Error::ScanRangeTooShort { .. })
        ));
    }

    #[test]
    fn divergence_scan_measures_tail_behavior() {
        // Slowly decaying tail: the asymptotic three-term limit holds well
        // within 1%, and for n = 0 the weighted norm sum converges.
        let t = divergence_scan(0.25, 0, 3.1, 200).unwrap();
        assert!(t.asymptotic_residual < 0.01, "{}", t.asymptotic_residual);
        assert!(!t.norm_diverges, "growth {}", t.norm_growth);
        assert!(t.tail_abs[2] < t.tail_abs[0]);

        // n = 1: the weighted norm grows without settling.
        let t = divergence_scan(0.4, 1, 10.0, 300).unwrap();
        assert!(t.asymptotic_residual < 0.01, "{}", t.asymptotic_residual);
        assert!(t.norm_diverges);
        assert!(t.norm_growth > 1e-4);
        // And keeps growing when the scan is extended.
        let longer = divergence_scan(0.4, 1, 10.0, 600).unwrap();
        assert!(longer.partial_norms[2] > t.partial_norms[2]);
    }
}
