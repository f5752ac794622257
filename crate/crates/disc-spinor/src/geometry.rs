//! Disc geometry: conformal factor, compactified coordinate, volume, and the
//! background spin connection.
//!
//! The metric is conformally flat with factor `f = 1 + (rho / 2 rho0)^2`, so
//! the infinite disc closes up to a finite-volume cap. The compactified
//! coordinate `x in (-1, 1]` satisfies `f (1 + x) = 2` identically:
//! `x = (1 - (rho/2rho0)^2) / (1 + (rho/2rho0)^2)`, with `x -> -1` the far
//! region and `x = 1` the origin.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The curved disc, parameterized by the radius scale `rho0 > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscGeometry {
    rho0: f64,
}

impl DiscGeometry {
    /// Creates the geometry; `rho0` must be finite and positive.
    pub fn new(rho0: f64) -> Result<Self> {
        if !rho0.is_finite() || rho0 <= 0.0 {
            return Err(Error::RadiusNotPositive { rho0 });
        }
        Ok(Self { rho0 })
    }

    #[must_use]
    pub fn rho0(self) -> f64 {
        self.rho0
    }

    /// Total volume `pi (2 rho0)^2`: the flat measure compensated by `f^-2`
    /// integrates to the area of a sphere-like cap of radius `2 rho0`.
    #[must_use]
    pub fn volume(self) -> f64 {
        std::f64::consts::PI * (2.0 * self.rho0).powi(2)
    }

    /// Conformal factor `f(rho) = 1 + (rho / 2 rho0)^2`; `rho >= 0` finite.
    pub fn conformal_factor(self, rho: f64) -> Result<f64> {
        if !rho.is_finite() || rho < 0.0 {
            return Err(Error::RhoInvalid { rho });
        }
        let u = rho / (2.0 * self.rho0);
        Ok(1.0 + u * u)
    }

    /// Conformal factor expressed in the compactified coordinate:
    /// `f = 2 / (1 + x)`. Rejects `x = -1` (infinite radius) and any
    /// `x` outside `(-1, 1]`.
    pub fn conformal_factor_at_x(self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        Ok(2.0 / (1.0 + x))
    }

    /// Maps radius to the compactified coordinate,
    /// `x = (1 - u^2) / (1 + u^2)` with `u = rho / 2 rho0`.
    pub fn rho_to_x(self, rho: f64) -> Result<f64> {
        if !rho.is_finite() || rho < 0.0 {
            return Err(Error::RhoInvalid { rho });
        }
        let u2 = (rho / (2.0 * self.rho0)).powi(2);
        Ok((1.0 - u2) / (1.0 + u2))
    }

    /// Inverse map, `rho = 2 rho0 sqrt((1 - x) / (1 + x))`; `x in (-1, 1]`.
    pub fn x_to_rho(self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        Ok(2.0 * self.rho0 * ((1.0 - x) / (1.0 + x)).sqrt())
    }

    /// Inverse vielbein factor `E = f^-2` multiplying the flat measure.
    pub fn measure_factor(self, rho: f64) -> Result<f64> {
        Ok(self.conformal_factor(rho)?.powi(-2))
    }

    fn check_x(x: f64) -> Result<()> {
        if !x.is_finite() || !(-1.0..=1.0).contains(&x) {
            return Err(Error::XOutOfDomain { x });
        }
        if x == -1.0 {
            return Err(Error::XAtInfinity { x });
        }
        Ok(())
    }
}

/// Spin-connection strength `epsilon in [0, 1/2)`, equivalently the flux
/// parameter `F = (1 - 2 epsilon) / 2 in (0, 1/2]`.
///
/// `epsilon = 0` is the round-cap point where the spectrum degenerates to
/// the integer tower; `epsilon -> 1/2` switches off the flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinConnectionParam {
    epsilon: f64,
}

impl SpinConnectionParam {
    /// From the deviation parameter `epsilon in [0, 1/2)`.
    pub fn new(epsilon: f64) -> Result<Self> {
        if !epsilon.is_finite() || !(0.0..0.5).contains(&epsilon) {
            return Err(Error::EpsilonOutOfRange { epsilon });
        }
        Ok(Self { epsilon })
    }

    /// From the flux strength `F in (0, 1/2]`, via `epsilon = 1/2 - F`.
    pub fn from_field_strength(strength: f64) -> Result<Self> {
        if !strength.is_finite() || strength <= 0.0 || strength > 0.5 {
            return Err(Error::FieldStrengthOutOfRange { strength });
        }
        Self::new(0.5 - strength)
    }

    #[must_use]
    pub fn epsilon(self) -> f64 {
        self.epsilon
    }

    /// `F = (1 - 2 epsilon) / 2`.
    #[must_use]
    pub fn field_strength(self) -> f64 {
        (1.0 - 2.0 * self.epsilon) / 2.0
    }
}

/// The two real components of the background connection one-form at a point,
/// in the Cartesian frame of the disc plane.
///
/// The underlying object is anti-symmetric in the frame pair and purely
/// imaginary; `component` reconstructs the complex entries, `magnitude` the
/// common scale `F f rho / rho0^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinConnection {
    /// `[x-component scale, y-component scale]` of the plane coordinates
    /// entering the connection, i.e. `(x5, x6) * F f / rho0^2`.
    pub values: [f64; 2],
}

impl SpinConnection {
    /// Entry with frame indices `(s, t)` carried by coordinate direction
    /// `s_prime`; indices are 0 or 1 for the two disc directions.
    ///
    /// Antisymmetric in `(s, t)`, diagonal entries vanish, and the value is
    /// `i * (sign of the (s,t) permutation) * values[s_prime]`.
    pub fn component(self, s: usize, t: usize, s_prime: usize) -> Result<Complex64> {
        if s > 1 || t > 1 || s_prime > 1 {
            return Err(Error::InvalidIndexPair {
                a: s as u32,
                b: t as u32,
                d: 2,
            });
        }
        let sign = match (s, t) {
            (0, 1) => 1.0,
            (1, 0) => -1.0,
            _ => 0.0,
        };
        Ok(Complex64::new(0.0, sign * self.values[s_prime]))
    }

    /// Euclidean magnitude `F f rho / rho0^2` of the component pair.
    #[must_use]
    pub fn magnitude(self) -> f64 {
        self.values[0].hypot(self.values[1])
    }
}

/// Background spin connection at the point `(rho cos phi, rho sin phi)`.
///
/// The component scale is `F f / rho0^2` times the plane coordinates, so the
/// magnitude grows toward the far region as `F f rho / rho0^2`.
pub fn spin_connection(
    geom: DiscGeometry,
    param: SpinConnectionParam,
    rho: f64,
    phi: f64,
) -> Result<SpinConnection> {
    let f = geom.conformal_factor(rho)?;
    let scale = param.field_strength() * f / geom.rho0().powi(2);
    Ok(SpinConnection {
        values: [scale * rho * phi.cos(), scale * rho * phi.sin()],
    })
}
