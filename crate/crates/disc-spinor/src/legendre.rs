//! Associated Legendre polynomials `P^l_n` and their identity toolbox.
//!
//! Evaluation uses the three-term upward recursion in the degree `l` at fixed
//! order `n`, which is stable in that direction; derivatives come from the
//! closed weighted-derivative identity instead of differencing.
//!
//! Sign convention: `P^l_n = (-1)^n (1 - x^2)^{n/2} d^n P_l / dx^n`, i.e. the
//! alternating phase is included. The convention is pinned empirically by the
//! bootstrap test below: the two mixed-order square-root ladders hold
//! verbatim with this phase and fail in sign without it.

use crate::error::{Error, Result};
use crate::quadrature::Quadrature;

/// Evaluates `P^l_n(x)` for all degrees `l = n..=l_max` in one sweep.
///
/// Returns the values in ascending degree order, so `out[k]` holds degree
/// `n + k`. Errors when `l_max < n` or `|x| > 1`.
pub fn legendre_seq(l_max: u32, n: u32, x: f64) -> Result<Vec<f64>> {
    if l_max < n {
        return Err(Error::OrderExceedsDegree { l: l_max, n });
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::XOutOfDomain { x });
    }
    let s = (1.0 - x * x).max(0.0).sqrt();
    // Seed P^n_n = (-1)^n (2n-1)!! s^n.
    let mut seed = 1.0;
    for j in 1..=n {
        seed *= -((2 * j - 1) as f64) * s;
    }
    let mut out = Vec::with_capacity((l_max - n + 1) as usize);
    out.push(seed);
    if l_max == n {
        return Ok(out);
    }
    let mut prev = seed;
    let mut cur = x * (2 * n + 1) as f64 * seed;
    out.push(cur);
    for l in (n + 2)..=l_max {
        let lf = f64::from(l);
        let nf = f64::from(n);
        let next = ((2.0 * lf - 1.0) * x * cur - (lf - 1.0 + nf) * prev) / (lf - nf);
        out.push(next);
        prev = cur;
        cur = next;
    }
    Ok(out)
}

/// Evaluates a single `P^l_n(x)`; `0 <= n <= l`, `|x| <= 1`.
pub fn legendre_p(l: u32, n: u32, x: f64) -> Result<f64> {
    if n > l {
        return Err(Error::OrderExceedsDegree { l, n });
    }
    legendre_seq(l, n, x).map(|v| *v.last().expect("nonempty by construction"))
}

/// `P^l_n` extended by zero to degrees below the order, which is how every
/// ladder identity treats out-of-range neighbors.
pub(crate) fn p_or_zero(l: i64, n: u32, x: f64) -> Result<f64> {
    if l < i64::from(n) {
        if !(-1.0..=1.0).contains(&x) {
            return Err(Error::XOutOfDomain { x });
        }
        return Ok(0.0);
    }
    legendre_p(l as u32, n, x)
}

/// Derivative `d P^l_n / dx` at interior points, via the weighted-derivative
/// identity divided by `1 - x^2`.
///
/// Errors with `BoundaryTouched` at `x = +/-1` (the identity form divides by
/// the vanishing weight there) and `XOutOfDomain` beyond.
pub fn legendre_p_deriv(l: u32, n: u32, x: f64) -> Result<f64> {
    if n > l {
        return Err(Error::OrderExceedsDegree { l, n });
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::XOutOfDomain { x });
    }
    if x.abs() == 1.0 {
        return Err(Error::BoundaryTouched { x });
    }
    let li = i64::from(l);
    let lf = f64::from(l);
    let nf = f64::from(n);
    let lower = p_or_zero(li - 1, n, x)?;
    let upper = p_or_zero(li + 1, n, x)?;
    let weighted = ((lf + nf) * (lf + 1.0) * lower - lf * (lf - nf + 1.0) * upper)
        / (2.0 * lf + 1.0);
    Ok(weighted / (1.0 - x * x))
}

/// Rising product `(from+1)(from+2)...(to)`, i.e. `to! / from!`; exact in
/// f64 for the degree ranges used here.
pub(crate) fn rising(from: u32, to: u32) -> f64 {
    ((from + 1)..=to).map(f64::from).product()
}

/// Squared norm `integral of (P^l_n)^2 dx = 2/(2l+1) * (l+n)!/(l-n)!`.
pub fn norm_integral(l: u32, n: u32) -> Result<f64> {
    if n > l {
        return Err(Error::OrderExceedsDegree { l, n });
    }
    Ok(2.0 / f64::from(2 * l + 1) * rising(l - n, l + n))
}

/// The seven degree/order ladder identities the radial solver relies on,
/// named by what each one rewrites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegendreIdentity {
    /// `x P^l_n` as a degree-neighbor combination.
    XTimesP,
    /// `sqrt(1-x^2) P^l_{n-2}` in terms of order `n-1`, degrees `l -+ 1`.
    SqrtDropTwo,
    /// `sqrt(1-x^2) P^l_n` in terms of order `n-1`, degrees `l +- 1`.
    SqrtDropOne,
    /// `(1-x^2) d P^l_n / dx` as a degree-neighbor combination.
    WeightedDeriv,
    /// `(1-x^2) P^l_n` as a five-term degree combination.
    WeightTimesP,
    /// `P^l_n / sqrt(1-x^2)` through degree `l+1` neighbors.
    InvSqrtRaise,
    /// `P^l_n / sqrt(1-x^2)` through degree `l-1` neighbors.
    InvSqrtLower,
}

impl LegendreIdentity {
    /// All identities, in a fixed reporting order.
    pub const ALL: [Self; 7] = [
        Self::XTimesP,
        Self::SqrtDropTwo,
        Self::SqrtDropOne,
        Self::WeightedDeriv,
        Self::WeightTimesP,
        Self::InvSqrtRaise,
        Self::InvSqrtLower,
    ];

    /// Stable kebab-case name, also accepted by `FromStr`.
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::XTimesP => "x-times-p",
            Self::SqrtDropTwo => "sqrt-drop-two",
            Self::SqrtDropOne => "sqrt-drop-one",
            Self::WeightedDeriv => "weighted-derivative",
            Self::WeightTimesP => "weight-times-p",
            Self::InvSqrtRaise => "inv-sqrt-raise",
            Self::InvSqrtLower => "inv-sqrt-lower",
        }
    }

    /// Smallest order for which the identity is stated.
    #[must_use]
    pub fn min_order(self) -> u32 {
        match self {
            Self::XTimesP | Self::WeightedDeriv | Self::WeightTimesP => 0,
            Self::SqrtDropOne | Self::InvSqrtRaise | Self::InvSqrtLower => 1,
            Self::SqrtDropTwo => 2,
        }
    }
}

impl std::fmt::Display for LegendreIdentity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for LegendreIdentity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownIdentity {
                name: s.to_owned(),
            })
    }
}

/// Evaluates the residual `|LHS - RHS| / (1 + |LHS| + |RHS|)` of the named
/// identity at `(l, n, x)`.
///
/// The scaling keeps the residual meaningful at high `(l, n)`, where both
/// sides reach magnitudes of `1e15` and the raw difference is dominated by
/// rounding of exact identities. Out-of-range degree neighbors are
/// zero-extended, matching how the identities are stated. The two
/// `InvSqrt*` forms divide by `sqrt(1 - x^2)` and therefore reject
/// `x = +/-1`.
pub fn verify_identity(id: LegendreIdentity, l: u32, n: u32, x: f64) -> Result<f64> {
    if n < id.min_order() {
        return Err(Error::OrderTooSmall {
            n,
            min_n: id.min_order(),
        });
    }
    // SqrtDropTwo's left side carries order n-2, so l may go two below n.
    let min_l = match id {
        LegendreIdentity::SqrtDropTwo => n - 2,
        _ => n,
    };
    if l < min_l {
        return Err(Error::OrderExceedsDegree { l, n });
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::XOutOfDomain { x });
    }
    let li = i64::from(l);
    let lf = f64::from(l);
    let nf = f64::from(n);
    let s = (1.0 - x * x).max(0.0).sqrt();

    let (lhs, rhs) = match id {
        LegendreIdentity::XTimesP => {
            let lhs = x * legendre_p(l, n, x)?;
            let rhs = ((lf + nf) * p_or_zero(li - 1, n, x)?
                + (lf - nf + 1.0) * p_or_zero(li + 1, n, x)?)
                / (2.0 * lf + 1.0);
            (lhs, rhs)
        }
        LegendreIdentity::SqrtDropTwo => {
            let lhs = (2.0 * lf + 1.0) * s * p_or_zero(li, n - 2, x)?;
            let rhs = p_or_zero(li - 1, n - 1, x)? - p_or_zero(li + 1, n - 1, x)?;
            (lhs, rhs)
        }
        LegendreIdentity::SqrtDropOne => {
            let lhs = (2.0 * lf + 1.0) * s * legendre_p(l, n, x)?;
            let rhs = (lf - nf + 2.0) * (lf - nf + 1.0) * p_or_zero(li + 1, n - 1, x)?
                - (lf + nf) * (lf + nf - 1.0) * p_or_zero(li - 1, n - 1, x)?;
            (lhs, rhs)
        }
        LegendreIdentity::WeightedDeriv => {
            if x.abs() == 1.0 {
                // Both sides stay finite; the derivative needs the interior
                // form, so fall back to the weighted identity directly.
                let rhs = ((lf + nf) * (lf + 1.0) * p_or_zero(li - 1, n, x)?
                    - lf * (lf - nf + 1.0) * p_or_zero(li + 1, n, x)?)
                    / (2.0 * lf + 1.0);
                // (1-x^2) d/dx P vanishes at the endpoints for n = 0; for
                // n >= 1 both sides vanish as well, so the residual is |rhs|.
                (0.0, rhs)
            } else {
                let lhs = (1.0 - x * x) * legendre_p_deriv(l, n, x)?;
                let rhs = ((lf + nf) * (lf + 1.0) * p_or_zero(li - 1, n, x)?
                    - lf * (lf - nf + 1.0) * p_or_zero(li + 1, n, x)?)
                    / (2.0 * lf + 1.0);
                (lhs, rhs)
            }
        }
        LegendreIdentity::WeightTimesP => {
            let lhs = (1.0 - x * x) * legendre_p(l, n, x)?;
            let mid = 2.0 * lf + 1.0
                - (lf + nf) * (lf - nf) / (2.0 * lf - 1.0)
                - (lf - nf + 1.0) * (lf + nf + 1.0) / (2.0 * lf + 3.0);
            let rhs = (mid * legendre_p(l, n, x)?
                - (lf + nf) * (lf + nf - 1.0) / (2.0 * lf - 1.0) * p_or_zero(li - 2, n, x)?
                - (lf - nf + 1.0) * (lf - nf + 2.0) / (2.0 * lf + 3.0)
                    * p_or_zero(li + 2, n, x)?)
                / (2.0 * lf + 1.0);
            (lhs, rhs)
        }
        LegendreIdentity::InvSqrtRaise => {
            if x.abs() == 1.0 {
                return Err(Error::BoundaryTouched { x });
            }
            let lhs = legendre_p(l, n, x)? / s;
            let rhs = -((lf - nf + 2.0) * (lf - nf + 1.0) * p_or_zero(li + 1, n - 1, x)?
                + p_or_zero(li + 1, n + 1, x)?)
                / (2.0 * nf);
            (lhs, rhs)
        }
        LegendreIdentity::InvSqrtLower => {
            if x.abs() == 1.0 {
                return Err(Error::BoundaryTouched { x });
            }
            let lhs = legendre_p(l, n, x)? / s;
            let rhs = -((lf + nf) * (lf + nf - 1.0) * p_or_zero(li - 1, n - 1, x)?
                + p_or_zero(li - 1, n + 1, x)?)
                / (2.0 * nf);
            (lhs, rhs)
        }
    };
    Ok((lhs - rhs).abs() / (1.0 + lhs.abs() + rhs.abs()))
}

/// Expansion coefficients `c^n_l` of a sampled function against `P^l_n`,
/// `l = n..=l_max`.
///
/// `samples[i]` must hold the integrand factor at `quad.nodes[i]` such that
/// `sum_i w_i samples_i P^l_n(x_i)` approximates `integral f P^l_n dx`; with
/// a Gauss-Legendre rule that is simply `f(x_i)`, while a weighted rule
/// expects `f` with the rule's weight divided out. Each coefficient is the
/// integral times `(2l+1)/2 * (l-n)!/(l+n)!`.
///
/// Errors when the sample count differs from the node count, or when the
/// rule carries fewer than `2 l_max + 16` nodes (the margin that keeps
/// polynomial projections exact with room to spare).
pub fn project(samples: &[f64], quad: &Quadrature, n: u32, l_max: u32) -> Result<Vec<f64>> {
    if l_max < n {
        return Err(Error::OrderExceedsDegree { l: l_max, n });
    }
    if samples.len() != quad.len() {
        return Err(Error::SampleCountMismatch {
            nodes: quad.len(),
            samples: samples.len(),
        });
    }
    let needed = 2 * l_max as usize + 16;
    if quad.len() < needed {
        return Err(Error::InsufficientNodes {
            needed,
            got: quad.len(),
        });
    }
    let count = (l_max - n + 1) as usize;
    let mut acc = vec![0.0; count];
    for ((&x, &w), &f) in quad.nodes.iter().zip(&quad.weights).zip(samples) {
        let seq = legendre_seq(l_max, n, x)?;
        let wf = w * f;
        for (a, p) in acc.iter_mut().zip(&seq) {
            *a += wf * p;
        }
    }
    for (k, c) in acc.iter_mut().enumerate() {
        let l = n + k as u32;
        *c *= f64::from(2 * l + 1) / 2.0 / rising(l - n, l + n);
    }
    Ok(acc)
}

/// Values and x-derivatives of one `P^l_n` sampled on an interior grid.
#[derive(Debug, Clone)]
pub struct LegendreEval {
    pub l: u32,
    pub n: u32,
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    pub derivs: Vec<f64>,
}

impl LegendreEval {
    /// Samples `P^l_n` and its derivative on `xs`; every point must lie
    /// strictly inside (-1, 1).
    pub fn sample(l: u32, n: u32, xs: &[f64]) -> Result<Self> {
        if n > l {
            return Err(Error::OrderExceedsDegree { l, n });
        }
        let mut values = Vec::with_capacity(xs.len());
        let mut derivs = Vec::with_capacity(xs.len());
        for &x in xs {
            if x.abs() >= 1.0 {
                return Err(Error::BoundaryTouched { x });
            }
            values.push(legendre_p(l, n, x)?);
            derivs.push(legendre_p_deriv(l, n, x)?);
        }
        Ok(Self {
            l,
            n,
            xs: xs.to_vec(),
            values,
            derivs,
        })
    }
}
