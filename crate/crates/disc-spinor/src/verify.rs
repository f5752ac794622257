//! Independent numerical cross-checks.
//!
//! Nothing here reuses the coefficient recursion that built a mode: the
//! residual reports differentiate the sampled profiles with finite
//! differences and push them through the coupled first-order system and
//! through each second-order equation; the eigenvalue oracle discretizes
//! the regularized second-order operator from scratch; and the projection
//! check re-extracts expansion coefficients by quadrature and tests the
//! three-term relations those projections must satisfy.

use crate::error::{Error, Result};
use crate::geometry::DiscGeometry;
use crate::legendre::project;
use crate::quadrature::gauss_jacobi;
use crate::spectrum::{radial_a, radial_a_regular, radial_b, radial_b_regular, ModeSolution};

/// Which equation a [`ResidualReport`] measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualKind {
    /// Coupled first-order pair on the compactified coordinate.
    FirstOrder,
    /// Second-order equation satisfied by the first profile.
    SecondOrderA,
    /// Second-order equation satisfied by the companion profile.
    SecondOrderB,
    /// Coupled first-order pair in the radial coordinate.
    FirstOrderRho,
}

impl std::fmt::Display for ResidualKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::FirstOrder => "first-order",
            Self::SecondOrderA => "second-order-a",
            Self::SecondOrderB => "second-order-b",
            Self::FirstOrderRho => "first-order-rho",
        })
    }
}

/// Profile selector for [`second_order_residual`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    A,
    B,
}

/// Pointwise residual record for one equation over one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub kind: ResidualKind,
    pub epsilon: f64,
    pub n: u32,
    pub l0: u32,
    /// Sample abscissas: `x` values, or `rho` values for the radial-
    /// coordinate report.
    pub grid: Vec<f64>,
    /// Per-point residual; for two-equation systems, the larger of the two.
    pub residuals: Vec<f64>,
    /// Per-equation maxima `[derivative-on-B line, derivative-on-A line]`;
    /// both entries equal `max_abs` for single-equation reports.
    pub line_max: [f64; 2],
    pub max_abs: f64,
    /// Largest sampled profile magnitude on the grid, floored at one.
    /// Residuals are absolute, and stencil roundoff grows with the
    /// profile, so budgets compare against `budget * profile_scale`.
    pub profile_scale: f64,
    /// Differentiation scheme, recorded so the budgets are interpretable.
    pub stencil: String,
}

impl ResidualReport {
    /// Largest residual divided by the profile scale; the quantity the
    /// interior and near-singular budgets bound.
    pub fn max_relative(&self) -> f64 {
        self.max_abs / self.profile_scale
    }
}

fn report(
    kind: ResidualKind,
    s: &ModeSolution,
    grid: &[f64],
    residuals: Vec<f64>,
    line_max: [f64; 2],
    profile_scale: f64,
    stencil: String,
) -> ResidualReport {
    let max_abs = residuals.iter().copied().fold(0.0, f64::max);
    ResidualReport {
        kind,
        epsilon: s.params().epsilon(),
        n: s.params().n(),
        l0: s.params().l0(),
        grid: grid.to_vec(),
        residuals,
        line_max,
        max_abs,
        profile_scale,
        stencil,
    }
}

/// Step for first derivatives of profiles in the compactified
/// coordinate, shrinking near the endpoints. Roundoff in the five-point
/// first-derivative stencil only grows like 1/h, so a small step keeps
/// truncation negligible even at |x| = 0.999.
fn step_x1(x: f64) -> f64 {
    (1e-3 * (1.0 - x.abs())).max(1e-5)
}

/// Step for second derivatives. Roundoff grows like 1/h^2 here and is
/// amplified near the left endpoint by the `(1+x)^(-eps)` weight, so
/// the step sits higher than for first derivatives: measured over the
/// full solvable parameter sweep, this keeps second-order residuals
/// under 1e-8 times the profile scale for |x| <= 0.8 and under 1e-6
/// out to |x| = 0.99; halving the floor or raising the slope past 3e-3
/// breaks one or the other bound.
fn step_x2(x: f64) -> f64 {
    (2e-3 * (1.0 - x.abs())).max(5e-5)
}

const STENCIL_X1: &str = "five-point fourth-order stencil, h = max(1e-5, 1e-3*(1-|x|))";
const STENCIL_X2: &str = "five-point fourth-order stencil, h = max(5e-5, 2e-3*(1-|x|))";

fn check_interior(x: f64, h: f64) -> Result<()> {
    if !x.is_finite() || x.abs() > 1.0 {
        return Err(Error::XOutOfDomain { x });
    }
    if x.abs() + 2.0 * h >= 1.0 {
        return Err(Error::BoundaryTouched { x });
    }
    Ok(())
}

fn deriv1(f: &dyn Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    Ok((f(x - 2.0 * h)? - 8.0 * f(x - h)? + 8.0 * f(x + h)? - f(x + 2.0 * h)?) / (12.0 * h))
}

fn deriv2(f: &dyn Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    Ok(
        (-f(x - 2.0 * h)? + 16.0 * f(x - h)? - 30.0 * f(x)? + 16.0 * f(x + h)?
            - f(x + 2.0 * h)?)
            / (12.0 * h * h),
    )
}

/// Evaluates both lines of the coupled first-order system on a grid of
/// interior points, differentiating the sampled profiles numerically.
///
/// Line residuals, with `b` the real companion amplitude:
/// `r_B = |(-sqrt(1-x^2)(b' - (n+1) b/(1-x^2)) - (1-eps) sqrt((1-x)/(1+x)) b) + m A|`
/// `r_A = |m b - (-sqrt(1-x^2)(A' + n A/(1-x^2)) - eps sqrt((1-x)/(1+x)) A)|`
///
/// The second line defines `b` from `A` and holds for any coefficient
/// tower; the first line holds exactly when the tower's consistency
/// residual vanishes, so on overdetermined parameter cells it honestly
/// reports an order-one defect.
pub fn first_order_residual(s: &ModeSolution, grid: &[f64]) -> Result<ResidualReport> {
    let p = s.params();
    let (epsilon, nf) = (p.epsilon(), f64::from(p.n()));
    let m = s.mass_sq().sqrt();
    let a = |x: f64| radial_a(s, x);
    let b = |x: f64| -> Result<f64> {
        if p.l0() == 0 {
            Ok(0.0)
        } else {
            radial_b(s, x)
        }
    };
    let mut residuals = Vec::with_capacity(grid.len());
    let mut line_max = [0.0f64; 2];
    let mut scale = 1.0f64;
    for &x in grid {
        let h = step_x1(x);
        check_interior(x, h)?;
        let ax = a(x)?;
        let bx = b(x)?;
        scale = scale.max(ax.abs()).max(bx.abs());
        let da = deriv1(&a, x, h)?;
        let db = deriv1(&b, x, h)?;
        let sq = (1.0 - x * x).sqrt();
        let t = ((1.0 - x) / (1.0 + x)).sqrt();
        let op_b = -sq * (db - (nf + 1.0) * bx / (1.0 - x * x)) - (1.0 - epsilon) * t * bx;
        let op_a = -sq * (da + nf * ax / (1.0 - x * x)) - epsilon * t * ax;
        let r_b_line = (op_b + m * ax).abs();
        let r_a_line = (m * bx - op_a).abs();
        line_max[0] = line_max[0].max(r_b_line);
        line_max[1] = line_max[1].max(r_a_line);
        residuals.push(r_b_line.max(r_a_line));
    }
    Ok(report(
        ResidualKind::FirstOrder,
        s,
        grid,
        residuals,
        line_max,
        scale,
        STENCIL_X1.to_string(),
    ))
}

/// Evaluates one second-order equation on a grid of interior points.
///
/// For [`ProfileKind::A`]:
/// `(1-x^2) A'' - 2x A' + [M - n^2/(1-x^2) - eps(1+x+2n)/(1+x) - eps^2 (1-x)/(1+x)] A`
/// and for [`ProfileKind::B`] (real amplitude; the equation is linear so
/// the fixed phase drops out):
/// `(1-x^2) B'' - 2x B' + [M - (n+1)^2/(1-x^2) + 2n(1-eps)/(1+x) + eps(1-eps)(1-x)/(1+x)] B`.
pub fn second_order_residual(
    s: &ModeSolution,
    which: ProfileKind,
    grid: &[f64],
) -> Result<ResidualReport> {
    let p = s.params();
    let (epsilon, nf) = (p.epsilon(), f64::from(p.n()));
    let m_sq = s.mass_sq();
    let f: Box<dyn Fn(f64) -> Result<f64>> = match which {
        ProfileKind::A => Box::new(|x| radial_a(s, x)),
        ProfileKind::B => {
            if p.l0() == 0 {
                return Err(Error::NoBMode);
            }
            Box::new(|x| radial_b(s, x))
        }
    };
    let mut residuals = Vec::with_capacity(grid.len());
    let mut scale = 1.0f64;
    for &x in grid {
        let h = step_x2(x);
        check_interior(x, h)?;
        let fx = f(x)?;
        scale = scale.max(fx.abs());
        let d1 = deriv1(&f, x, h)?;
        let d2 = deriv2(&f, x, h)?;
        let bracket = match which {
            ProfileKind::A => {
                m_sq - nf * nf / (1.0 - x * x)
                    - epsilon * (1.0 + x + 2.0 * nf) / (1.0 + x)
                    - epsilon * epsilon * (1.0 - x) / (1.0 + x)
            }
            ProfileKind::B => {
                m_sq - (nf + 1.0) * (nf + 1.0) / (1.0 - x * x)
                    + 2.0 * nf * (1.0 - epsilon) / (1.0 + x)
                    + epsilon * (1.0 - epsilon) * (1.0 - x) / (1.0 + x)
            }
        };
        residuals.push(((1.0 - x * x) * d2 - 2.0 * x * d1 + bracket * fx).abs());
    }
    let max = residuals.iter().copied().fold(0.0, f64::max);
    let kind = match which {
        ProfileKind::A => ResidualKind::SecondOrderA,
        ProfileKind::B => ResidualKind::SecondOrderB,
    };
    Ok(report(
        kind,
        s,
        grid,
        residuals,
        [max, max],
        scale,
        STENCIL_X2.to_string(),
    ))
}

/// Eigenvalues of the discretized radial operator.
#[derive(Debug, Clone, PartialEq)]
pub struct FdSpectrum {
    /// Fine-grid eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Coarse-grid eigenvalues used for the convergence check.
    pub coarse: Vec<f64>,
    pub grid_sizes: [usize; 2],
    /// Largest relative eigenvalue shift between the two grids.
    pub max_shift: f64,
    /// Records the regularizing substitution and the symmetrization.
    pub note: String,
}

/// Lowest `count` eigenvalues of the zero-flux finite-volume discretization
/// of the second-order operator for the first profile, independent of the
/// closed-form spectrum and of the coefficient recursion.
///
/// The substitution `A = (1+x)^{-eps} u` turns the equation into
/// Sturm-Liouville form `-(p u')' + q u = M w u` with
/// `p = (1-x)(1+x)^{1-2 eps}`, `w = (1+x)^{-2 eps}` and
/// `q = w (n^2/(1-x^2) + 2 n eps/(1+x))`; `p` vanishes at both endpoints,
/// so zero flux is the natural boundary condition. Faces sit at
/// `x_j = -cos(pi j / N)`, clustering cells at the endpoints; cell masses
/// use the exact integral of `w`. The generalized pencil is symmetrized as
/// `W^{-1/2} K W^{-1/2}` and solved by Sturm bisection, so the output is
/// deterministic and sorted.
pub fn fd_eigenvalues(epsilon: f64, n: u32, count: usize) -> Result<FdSpectrum> {
    if !epsilon.is_finite() || !(0.0..0.5).contains(&epsilon) {
        return Err(Error::EpsilonOutOfRange { epsilon });
    }
    let grid_sizes = [3000usize, 6000usize];
    let coarse = fv_lowest(epsilon, n, count, grid_sizes[0]);
    let values = fv_lowest(epsilon, n, count, grid_sizes[1]);
    let max_shift = values
        .iter()
        .zip(&coarse)
        .map(|(f, c)| (f - c).abs() / f.abs().max(1.0))
        .fold(0.0, f64::max);
    if max_shift > 1e-3 {
        return Err(Error::OracleNotConverged { max_shift });
    }
    Ok(FdSpectrum {
        values,
        coarse,
        grid_sizes,
        max_shift,
        note: "profile rescaled by (1+x)^{epsilon}; zero-flux finite volumes on \
               faces -cos(pi j/N); pencil symmetrized as W^{-1/2} K W^{-1/2}"
            .to_string(),
    })
}

/// Symmetrized tridiagonal of the finite-volume pencil, then its lowest
/// `count` eigenvalues.
fn fv_lowest(epsilon: f64, n: u32, count: usize, cells: usize) -> Vec<f64> {
    let nf = f64::from(n);
    let faces: Vec<f64> = (0..=cells)
        .map(|j| -(std::f64::consts::PI * j as f64 / cells as f64).cos())
        .collect();
    let centers: Vec<f64> = (0..cells).map(|i| 0.5 * (faces[i] + faces[i + 1])).collect();
    // Exact cell integral of the weight w = (1+x)^{-2 eps}.
    let w_primitive = |x: f64| (1.0 + x).powf(1.0 - 2.0 * epsilon) / (1.0 - 2.0 * epsilon);
    let masses: Vec<f64> = (0..cells)
        .map(|i| w_primitive(faces[i + 1]) - w_primitive(faces[i]))
        .collect();
    let p = |x: f64| (1.0 - x) * (1.0 + x).powf(1.0 - 2.0 * epsilon);
    // Face conductances; the boundary faces carry none because p(+-1) = 0.
    let mut g = vec![0.0; cells + 1];
    for j in 1..cells {
        g[j] = p(faces[j]) / (centers[j] - centers[j - 1]);
    }
    let q = |x: f64| {
        (1.0 + x).powf(-2.0 * epsilon)
            * (nf * nf / (1.0 - x * x) + 2.0 * nf * epsilon / (1.0 + x))
    };
    let mut diag = vec![0.0; cells];
    let mut off = vec![0.0; cells - 1];
    for i in 0..cells {
        let load = if n == 0 {
            0.0
        } else {
            q(centers[i]) * (faces[i + 1] - faces[i])
        };
        diag[i] = (g[i] + g[i + 1] + load) / masses[i];
    }
    for i in 0..cells - 1 {
        off[i] = -g[i + 1] / (masses[i] * masses[i + 1]).sqrt();
    }
    (0..count).map(|k| kth_eigenvalue(&diag, &off, k)).collect()
}

/// Number of eigenvalues of the symmetric tridiagonal strictly below
/// `lambda`, by counting negative pivots of the shifted LDL^T sweep.
fn count_below(diag: &[f64], off: &[f64], lambda: f64) -> usize {
    let mut negatives = 0;
    let mut pivot = diag[0] - lambda;
    if pivot < 0.0 {
        negatives += 1;
    }
    for i in 1..diag.len() {
        if pivot == 0.0 {
            pivot = 1e-300;
        }
        pivot = diag[i] - lambda - off[i - 1] * off[i - 1] / pivot;
        if pivot < 0.0 {
            negatives += 1;
        }
    }
    negatives
}

/// k-th (ascending, 0-based) eigenvalue by bisection inside the Gershgorin
/// interval.
fn kth_eigenvalue(diag: &[f64], off: &[f64], k: usize) -> f64 {
    let m = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..m {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 }
            + if i < m - 1 { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    for _ in 0..160 {
        let mid = 0.5 * (lo + hi);
        if count_below(diag, off, mid) >= k + 1 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-11 * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Expansion coefficients of both profiles re-extracted by quadrature
/// projection, together with the residuals of the three-term relations
/// they must satisfy.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedCoefficients {
    pub epsilon: f64,
    pub n: u32,
    pub l0: u32,
    pub l_max: u32,
    pub m_sq: f64,
    /// Projection of the full first profile onto order-`n` functions,
    /// degrees `n ..= l_max`.
    pub alpha: Vec<f64>,
    /// Projection of the full companion amplitude onto order-`n+1`
    /// functions, degrees `n+1 ..= l_max`; empty when there is no
    /// companion profile.
    pub beta: Vec<f64>,
    /// Three-term relation residuals at degrees `n ..= l_max - 2`.
    pub alpha_residuals: Vec<f64>,
    /// Three-term relation residuals at degrees `n+1 ..= l_max - 2`.
    pub beta_residuals: Vec<f64>,
    /// `sum |alpha|` and `sum |beta|`: tolerance scales, since the
    /// projected tails decay slowly and only consistency is being tested.
    pub alpha_scale: f64,
    pub beta_scale: f64,
}

impl ProjectedCoefficients {
    #[must_use]
    pub fn max_alpha_residual(&self) -> f64 {
        self.alpha_residuals.iter().copied().fold(0.0, f64::max)
    }

    #[must_use]
    pub fn max_beta_residual(&self) -> f64 {
        self.beta_residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Relation satisfied by the projections of the first profile:
/// `alpha^{l+1} (l+n+1)/(2l+3) [M - (l+1)(l+2) - eps(1-eps)]
///  + alpha^l [M - l(l+1) - eps(1+eps+2n)]
///  + alpha^{l-1} (l-n)/(2l-1) [M - (l-1)l - eps(1-eps)]`.
fn projected_relation_a(get: &dyn Fn(i64) -> f64, l: u32, n: u32, epsilon: f64, m_sq: f64) -> f64 {
    let lf = f64::from(l);
    let nf = f64::from(n);
    let li = i64::from(l);
    get(li + 1) * (lf + nf + 1.0) / (2.0 * lf + 3.0)
        * (m_sq - (lf + 1.0) * (lf + 2.0) - epsilon * (1.0 - epsilon))
        + get(li) * (m_sq - lf * (lf + 1.0) - epsilon * (1.0 + epsilon + 2.0 * nf))
        + get(li - 1) * (lf - nf) / (2.0 * lf - 1.0)
            * (m_sq - (lf - 1.0) * lf - epsilon * (1.0 - epsilon))
}

/// Relation satisfied by the order-`n+1` projections of the companion
/// amplitude:
/// `beta^{l+1} (l+n+2)/(2l+3) [M - (l+1)(l+2) - eps(1-eps)]
///  + beta^l [M - l(l+1) + (1-eps)(eps+2n)]
///  + beta^{l-1} (l-n-1)/(2l-1) [M - (l-1)l - eps(1-eps)]`.
fn projected_relation_b(get: &dyn Fn(i64) -> f64, l: u32, n: u32, epsilon: f64, m_sq: f64) -> f64 {
    let lf = f64::from(l);
    let nf = f64::from(n);
    let li = i64::from(l);
    get(li + 1) * (lf + nf + 2.0) / (2.0 * lf + 3.0)
        * (m_sq - (lf + 1.0) * (lf + 2.0) - epsilon * (1.0 - epsilon))
        + get(li) * (m_sq - lf * (lf + 1.0) + (1.0 - epsilon) * (epsilon + 2.0 * nf))
        + get(li - 1) * (lf - nf - 1.0) / (2.0 * lf - 1.0)
            * (m_sq - (lf - 1.0) * lf - epsilon * (1.0 - epsilon))
}

/// Projects both profiles of a solved mode onto their expansion bases by
/// Gauss-Jacobi quadrature (weight `(1+x)^{-eps}`, which absorbs the
/// endpoint factor so the remaining integrands are polynomial) and
/// evaluates the three-term relations on the projected tails.
///
/// This is an end-to-end check that goes profile -> quadrature ->
/// coefficients -> recurrence without touching the solver's own recursion.
/// Residual magnitudes should be judged against `alpha_scale` and
/// `beta_scale`.
pub fn projected_recursion_check(
    s: &ModeSolution,
    l_max: u32,
) -> Result<ProjectedCoefficients> {
    let p = s.params();
    let (epsilon, n, l0) = (p.epsilon(), p.n(), p.l0());
    let min = l0 + 20;
    if l_max < min {
        return Err(Error::ProjectionOrderTooLow { l_max, min });
    }
    let quad = gauss_jacobi(2 * l_max as usize + 16, 0.0, -epsilon)?;
    let a_samples: Vec<f64> = quad
        .nodes
        .iter()
        .map(|&x| radial_a_regular(s, x))
        .collect::<Result<_>>()?;
    let alpha = project(&a_samples, &quad, n, l_max)?;
    let (beta, beta_residuals) = if l0 == 0 {
        (Vec::new(), Vec::new())
    } else {
        let b_samples: Vec<f64> = quad
            .nodes
            .iter()
            .map(|&x| radial_b_regular(s, x))
            .collect::<Result<_>>()?;
        let beta = project(&b_samples, &quad, n + 1, l_max)?;
        let get = |l: i64| -> f64 {
            if l < i64::from(n + 1) || l > i64::from(l_max) {
                0.0
            } else {
                beta[(l - i64::from(n + 1)) as usize]
            }
        };
        let residuals = ((n + 1)..=(l_max - 2))
            .map(|l| projected_relation_b(&get, l, n, epsilon, s.mass_sq()).abs())
            .collect();
        (beta, residuals)
    };
    let get_a = |l: i64| -> f64 {
        if l < i64::from(n) || l > i64::from(l_max) {
            0.0
        } else {
            alpha[(l - i64::from(n)) as usize]
        }
    };
    let alpha_residuals: Vec<f64> = (n..=(l_max - 2))
        .map(|l| projected_relation_a(&get_a, l, n, epsilon, s.mass_sq()).abs())
        .collect();
    let alpha_scale = alpha.iter().map(|a| a.abs()).sum();
    let beta_scale = beta.iter().map(|b| b.abs()).sum();
    Ok(ProjectedCoefficients {
        epsilon,
        n,
        l0,
        l_max,
        m_sq: s.mass_sq(),
        alpha,
        beta,
        alpha_residuals,
        beta_residuals,
        alpha_scale,
        beta_scale,
    })
}

/// Evaluates the coupled first-order system in the radial coordinate
/// (`rho` in units of the curvature radius) and reports the residuals
/// there, confirming the two coordinate forms describe the same mode.
///
/// With `f = 1 + (rho/2)^2`, the chain rule maps the compactified
/// operators to
/// `r_A = |m b - (f A'(rho) - n f A/rho - eps (rho/2) A)|` and
/// `r_B = |(f b'(rho) + (n+1) f b/rho - (1-eps)(rho/2) b) + m A|`.
pub fn rho_residual(s: &ModeSolution, rho_grid: &[f64]) -> Result<ResidualReport> {
    let p = s.params();
    let (epsilon, nf) = (p.epsilon(), f64::from(p.n()));
    let m = s.mass_sq().sqrt();
    let geom = DiscGeometry::new(1.0)?;
    let a = |rho: f64| radial_a(s, geom.rho_to_x(rho)?);
    let b = |rho: f64| -> Result<f64> {
        if p.l0() == 0 {
            Ok(0.0)
        } else {
            radial_b(s, geom.rho_to_x(rho)?)
        }
    };
    let mut residuals = Vec::with_capacity(rho_grid.len());
    let mut line_max = [0.0f64; 2];
    let mut scale = 1.0f64;
    for &rho in rho_grid {
        if !rho.is_finite() || rho <= 0.0 {
            return Err(Error::RhoInvalid { rho });
        }
        let h = 1e-5 * (1.0 + rho);
        if rho - 2.0 * h <= 0.0 {
            return Err(Error::RhoInvalid { rho });
        }
        let f = geom.conformal_factor(rho)?;
        let arho = a(rho)?;
        let brho = b(rho)?;
        scale = scale.max(arho.abs()).max(brho.abs());
        let da = deriv1(&a, rho, h)?;
        let db = deriv1(&b, rho, h)?;
        let op_a = f * da - nf * f * arho / rho - epsilon * (rho / 2.0) * arho;
        let op_b = f * db + (nf + 1.0) * f * brho / rho - (1.0 - epsilon) * (rho / 2.0) * brho;
        let r_b_line = (op_b + m * arho).abs();
        let r_a_line = (m * brho - op_a).abs();
        line_max[0] = line_max[0].max(r_b_line);
        line_max[1] = line_max[1].max(r_a_line);
        residuals.push(r_b_line.max(r_a_line));
    }
    Ok(report(
        ResidualKind::FirstOrderRho,
        s,
        rho_grid,
        residuals,
        line_max,
        scale,
        "five-point fourth-order stencil, h = 1e-5*(1+rho)".to_string(),
    ))
}
