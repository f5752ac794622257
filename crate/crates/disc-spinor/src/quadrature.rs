//! Gaussian quadrature rules on [-1, 1].
//!
//! Nodes and weights are obtained from the symmetric tridiagonal recurrence
//! matrix of the orthogonal-polynomial family (Golub-Welsch): the nodes are
//! its eigenvalues and each weight is `mu0` times the squared first component
//! of the corresponding unit eigenvector. The eigenproblem is solved directly
//! on the tridiagonal form with implicit-shift QL steps that track only the
//! first row of the accumulated rotations, so no dense matrix is ever formed.

use crate::error::{Error, Result};
use statrs::function::gamma::ln_gamma;

/// A quadrature rule: `sum_i weights[i] * g(nodes[i])` approximates
/// `integral of w(x) g(x) dx` over [-1, 1] for the rule's weight function w.
#[derive(Debug, Clone)]
pub struct Quadrature {
    /// Abscissae in ascending order, all interior to (-1, 1).
    pub nodes: Vec<f64>,
    /// Positive weights, aligned with `nodes`.
    pub weights: Vec<f64>,
}

impl Quadrature {
    /// Number of nodes.
    #[must_use]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// True when the rule carries no nodes (never produced by constructors).
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule to samples taken at `nodes`.
    ///
    /// Errors with `SampleCountMismatch` when the slice length differs from
    /// the node count.
    pub fn integrate_samples(&self, samples: &[f64]) -> Result<f64> {
        if samples.len() != self.nodes.len() {
            return Err(Error::SampleCountMismatch {
                nodes: self.nodes.len(),
                samples: samples.len(),
            });
        }
        Ok(self
            .weights
            .iter()
            .zip(samples)
            .map(|(w, s)| w * s)
            .sum())
    }
}

/// Gauss-Legendre rule with `n` nodes: weight function 1, exact for
/// polynomials of degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> Result<Quadrature> {
    if n == 0 {
        return Err(Error::InsufficientNodes { needed: 1, got: 0 });
    }
    let diag = vec![0.0; n];
    // b_k = k^2 / (4k^2 - 1), k = 1..n-1
    let offdiag: Vec<f64> = (1..n)
        .map(|k| {
            let kf = k as f64;
            kf * kf / (4.0 * kf * kf - 1.0)
        })
        .collect();
    Ok(golub_welsch(diag, offdiag, 2.0))
}

/// Gauss-Jacobi rule with `n` nodes for the weight `(1-x)^alpha (1+x)^beta`,
/// `alpha, beta > -1`; exact for polynomials of degree `2n - 1` against that
/// weight.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<Quadrature> {
    if n == 0 {
        return Err(Error::InsufficientNodes { needed: 1, got: 0 });
    }
    if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::WeightExponentOutOfRange { alpha, beta });
    }
    let ab = alpha + beta;
    let mut diag = Vec::with_capacity(n);
    diag.push((beta - alpha) / (ab + 2.0));
    for k in 1..n {
        let kf = k as f64;
        let den = (2.0 * kf + ab) * (2.0 * kf + ab + 2.0);
        diag.push((beta * beta - alpha * alpha) / den);
    }
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    if n > 1 {
        // k = 1 uses the reduced form; the general formula is 0/0 at ab = -1.
        offdiag.push(4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0).powi(2) * (ab + 3.0)));
        for k in 2..n {
            let kf = k as f64;
            let num = 4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab);
            let den =
                (2.0 * kf + ab).powi(2) * (2.0 * kf + ab + 1.0) * (2.0 * kf + ab - 1.0);
            offdiag.push(num / den);
        }
    }
    // mu0 = 2^(a+b+1) Gamma(a+1) Gamma(b+1) / Gamma(a+b+2); all arguments positive.
    let mu0 = (ab + 1.0) * std::f64::consts::LN_2 + ln_gamma(alpha + 1.0)
        + ln_gamma(beta + 1.0)
        - ln_gamma(ab + 2.0);
    Ok(golub_welsch(diag, offdiag, mu0.exp()))
}

/// Eigen-decomposes the symmetric tridiagonal recurrence matrix with
/// diagonal `diag` and squared off-diagonal `offdiag_sq`, returning the rule.
fn golub_welsch(diag: Vec<f64>, offdiag_sq: Vec<f64>, mu0: f64) -> Quadrature {
    let n = diag.len();
    let mut d = diag;
    // e[i] couples rows i and i+1; padded with a trailing zero.
    let mut e: Vec<f64> = offdiag_sq.iter().map(|b| b.sqrt()).collect();
    e.push(0.0);
    // First row of the accumulated orthogonal transform.
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Locate the first negligible coupling at or beyond l.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 64, "quadrature eigen iteration failed to settle");

            // Implicit shift from the 2x2 leading block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut pairs: Vec<(f64, f64)> = d
        .into_iter()
        .zip(z)
        .map(|(node, z0)| (node, mu0 * z0 * z0))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Quadrature {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}
