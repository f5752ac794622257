//! Explicit Clifford algebra for even dimension `d` with signature
//! `diag(+1, -1, ..., -1)`: gamma matrices, Lorentz generators, handedness,
//! the nilpotent/projector calculus, and the Weyl basis built from a vacuum
//! column.
//!
//! The matrix realization is the standard tensor-product construction over
//! `d/2` two-dimensional factors, one per Cartan pair, with a diagonal
//! string on earlier factors. Phases are fixed so that the tagged operator
//! products reproduce the canonical `d = 6` basis states literally. Every
//! entry is exactly `0`, `+/-1`, or `+/-i`, so the algebraic identities hold
//! exactly in floating point, not merely to rounding.
//!
//! Index labels skip `4` when `d >= 6`: the label set is
//! `{0, 1, 2, 3, 5, ..., d}`, keeping the familiar 4d labels for the first
//! two Cartan pairs and `(5, 6), (7, 8), ...` for the internal ones.

use std::fmt;

use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix used throughout this module.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVector = DVector<Complex64>;

/// Eigenvalue tag `k` of a nilpotent or projector; `k^2 = eta^aa eta^bb`
/// restricts it to `+/-1` (two spacelike indices) or `+/-i` (mixed pair).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KValue {
    PlusOne,
    MinusOne,
    PlusI,
    MinusI,
}

impl KValue {
    /// The complex number the tag stands for.
    #[must_use]
    pub fn value(self) -> Complex64 {
        match self {
            Self::PlusOne => Complex64::new(1.0, 0.0),
            Self::MinusOne => Complex64::new(-1.0, 0.0),
            Self::PlusI => Complex64::new(0.0, 1.0),
            Self::MinusI => Complex64::new(0.0, -1.0),
        }
    }

    /// `-k`.
    #[must_use]
    pub fn negated(self) -> Self {
        match self {
            Self::PlusOne => Self::MinusOne,
            Self::MinusOne => Self::PlusOne,
            Self::PlusI => Self::MinusI,
            Self::MinusI => Self::PlusI,
        }
    }

    /// `k^2`, always `+1` or `-1`.
    #[must_use]
    pub fn square(self) -> f64 {
        match self {
            Self::PlusOne | Self::MinusOne => 1.0,
            Self::PlusI | Self::MinusI => -1.0,
        }
    }
}

impl fmt::Display for KValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PlusOne => "+1",
            Self::MinusOne => "-1",
            Self::PlusI => "+i",
            Self::MinusI => "-i",
        })
    }
}

impl std::str::FromStr for KValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+1" | "1" => Ok(Self::PlusOne),
            "-1" => Ok(Self::MinusOne),
            "+i" | "i" => Ok(Self::PlusI),
            "-i" => Ok(Self::MinusI),
            other => Err(Error::UnknownIdentity {
                name: other.to_owned(),
            }),
        }
    }
}

/// Superscript/subscript selector for the ladder operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[must_use]
    pub fn signum(self) -> f64 {
        match self {
            Self::Plus => 1.0,
            Self::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Plus => "+",
            Self::Minus => "-",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Self::Plus),
            "-" | "minus" => Ok(Self::Minus),
            other => Err(Error::UnknownIdentity {
                name: other.to_owned(),
            }),
        }
    }
}

/// Whether a tagged factor is the nilpotent `(ab)(k)` or projector `[ab][k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    Nilpotent,
    Projector,
}

/// One tagged Cartan-pair factor of a basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorTag {
    pub pair: (u32, u32),
    pub kind: FactorKind,
    pub k: KValue,
}

impl FactorTag {
    /// Eigenvalue `k/2` of the Cartan generator of this pair on the state.
    #[must_use]
    pub fn cartan_eigenvalue(self) -> Complex64 {
        self.k.value() * Complex64::new(0.5, 0.0)
    }
}

impl fmt::Display for FactorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FactorKind::Nilpotent => write!(f, "({},{})({})", self.pair.0, self.pair.1, self.k),
            FactorKind::Projector => write!(f, "({},{})[{}]", self.pair.0, self.pair.1, self.k),
        }
    }
}

/// One Weyl-basis state: the column vector, its tagged factor description
/// in application order, and its handedness eigenvalue.
#[derive(Debug, Clone)]
pub struct BasisState {
    pub vector: CVector,
    pub tags: Vec<FactorTag>,
    pub handedness: f64,
}

impl BasisState {
    /// Tag of the given Cartan pair, if the state carries one.
    #[must_use]
    pub fn tag_for(&self, pair: (u32, u32)) -> Option<FactorTag> {
        self.tags.iter().copied().find(|t| t.pair == pair)
    }

    /// Human-readable tag string, e.g. `(5,6)(+1)(0,3)(+i)(1,2)(+1)`.
    #[must_use]
    pub fn tag_string(&self) -> String {
        self.tags.iter().map(ToString::to_string).collect()
    }
}

/// Gamma matrices for one even dimension, immutable after construction.
#[derive(Debug, Clone)]
pub struct GammaSet {
    d: u32,
    labels: Vec<u32>,
    mats: Vec<CMatrix>,
    handedness: CMatrix,
    cartan_pairs: Vec<(u32, u32)>,
}

fn sigma1() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

fn sigma2() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

fn sigma3() -> CMatrix {
    CMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ],
    )
}

/// Builds the gamma set for even `d` with `2 <= d <= 10`.
///
/// Cartan pairs are `(0,1)` for `d = 2` and `(0,3), (1,2), (5,6), (7,8),
/// (9,10)` truncated to `d/2` pairs otherwise. The timelike member of the
/// first pair carries a real off-diagonal factor; every spacelike member an
/// imaginary one, which realizes the hermiticity rule
/// `gamma^a-dagger = eta^aa gamma^a` exactly.
pub fn build_gammas(d: u32) -> Result<GammaSet> {
    if d < 2 || d > 10 || d % 2 != 0 {
        return Err(Error::UnsupportedDimension { d });
    }
    let m = (d / 2) as usize;
    let cartan_pairs: Vec<(u32, u32)> = if d == 2 {
        vec![(0, 1)]
    } else {
        let mut p = vec![(0, 3), (1, 2)];
        for j in 2..m {
            let base = 2 * j as u32;
            p.push((base + 1, base + 2));
        }
        p
    };

    let id2 = CMatrix::identity(2, 2);
    let s1 = sigma1();
    let s2 = sigma2();
    let s3 = sigma3();
    let i = Complex64::new(0.0, 1.0);

    let mut labeled: Vec<(u32, CMatrix)> = Vec::with_capacity(d as usize);
    for (j, &(p, q)) in cartan_pairs.iter().enumerate() {
        let local_a = if p == 0 { s1.clone() } else { s1.clone() * i };
        let local_b = s2.clone() * i;
        for (label, local) in [(p, local_a), (q, local_b)] {
            let mut mat = CMatrix::identity(1, 1);
            for slot in 0..m {
                let factor = if slot < j {
                    &s3
                } else if slot == j {
                    &local
                } else {
                    &id2
                };
                mat = mat.kronecker(factor);
            }
            labeled.push((label, mat));
        }
    }
    labeled.sort_by_key(|&(label, _)| label);
    let labels: Vec<u32> = labeled.iter().map(|&(l, _)| l).collect();
    let mats: Vec<CMatrix> = labeled.into_iter().map(|(_, m)| m).collect();

    // Handedness: i^{d/2} times the ascending product of sqrt(eta^aa) gamma^a,
    // with sqrt(eta) = 1 timelike and i spacelike.
    let dim = 1usize << m;
    let mut prod = CMatrix::identity(dim, dim);
    let mut prefactor = Complex64::new(1.0, 0.0);
    for _ in 0..m {
        prefactor *= i;
    }
    for (label, mat) in labels.iter().zip(&mats) {
        if *label != 0 {
            prefactor *= i;
        }
        prod = prod * mat;
    }
    let handedness = prod * prefactor;

    Ok(GammaSet {
        d,
        labels,
        mats,
        handedness,
        cartan_pairs,
    })
}

impl GammaSet {
    #[must_use]
    pub fn d(&self) -> u32 {
        self.d
    }

    /// Spinor space dimension `2^{d/2}`.
    #[must_use]
    pub fn dim(&self) -> usize {
        1usize << (self.d / 2)
    }

    /// Index labels in ascending order (`4` is skipped for `d >= 6`).
    #[must_use]
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Cartan pairs in slot order.
    #[must_use]
    pub fn cartan_pairs(&self) -> &[(u32, u32)] {
        &self.cartan_pairs
    }

    /// The gamma matrix carrying the given label.
    pub fn gamma(&self, a: u32) -> Result<&CMatrix> {
        self.labels
            .iter()
            .position(|&l| l == a)
            .map(|idx| &self.mats[idx])
            .ok_or(Error::InvalidIndexPair { a, b: a, d: self.d })
    }

    /// Metric entry `eta^aa`: `+1` for the timelike label `0`, `-1` otherwise.
    pub fn eta(&self, a: u32) -> Result<f64> {
        if !self.labels.contains(&a) {
            return Err(Error::InvalidIndexPair { a, b: a, d: self.d });
        }
        Ok(if a == 0 { 1.0 } else { -1.0 })
    }

    /// Handedness operator; squares to the identity and anticommutes with
    /// every gamma matrix.
    #[must_use]
    pub fn handedness(&self) -> &CMatrix {
        &self.handedness
    }

    fn check_pair(&self, a: u32, b: u32) -> Result<()> {
        if a == b || !self.labels.contains(&a) || !self.labels.contains(&b) {
            return Err(Error::InvalidIndexPair { a, b, d: self.d });
        }
        Ok(())
    }
}

/// Lorentz generator `S^{ab} = (i/4)(gamma^a gamma^b - gamma^b gamma^a)`.
pub fn s_ab(g: &GammaSet, a: u32, b: u32) -> Result<CMatrix> {
    g.check_pair(a, b)?;
    let ga = g.gamma(a)?;
    let gb = g.gamma(b)?;
    let comm = ga * gb - gb * ga;
    Ok(comm * Complex64::new(0.0, 0.25))
}

/// Nilpotent `(ab)(k) = 1/2 (gamma^a + (eta^aa / ik) gamma^b)`;
/// requires `k^2 = eta^aa eta^bb`.
pub fn nilpotent(g: &GammaSet, a: u32, b: u32, k: KValue) -> Result<CMatrix> {
    g.check_pair(a, b)?;
    let required = g.eta(a)? * g.eta(b)?;
    if k.square() != required {
        return Err(Error::InvalidK {
            a,
            b,
            required_square: required,
        });
    }
    let coeff = Complex64::new(g.eta(a)?, 0.0) / (Complex64::new(0.0, 1.0) * k.value());
    let sum = g.gamma(a)? + g.gamma(b)? * coeff;
    Ok(sum * Complex64::new(0.5, 0.0))
}

/// Projector `[ab][k] = 1/2 (1 + (i/k) gamma^a gamma^b)`;
/// requires `k^2 = eta^aa eta^bb`.
pub fn projector(g: &GammaSet, a: u32, b: u32, k: KValue) -> Result<CMatrix> {
    g.check_pair(a, b)?;
    let required = g.eta(a)? * g.eta(b)?;
    if k.square() != required {
        return Err(Error::InvalidK {
            a,
            b,
            required_square: required,
        });
    }
    let coeff = Complex64::new(0.0, 1.0) / k.value();
    let prod = g.gamma(a)? * g.gamma(b)?;
    let dim = g.dim();
    Ok((CMatrix::identity(dim, dim) + prod * coeff) * Complex64::new(0.5, 0.0))
}

/// Starting tag of each slot: `+i` on the pair containing the timelike
/// label, `+1` on purely spacelike pairs.
fn start_tag(pair: (u32, u32)) -> KValue {
    if pair.0 == 0 {
        KValue::PlusI
    } else {
        KValue::PlusOne
    }
}

/// Slot application order: internal pairs first (matching the canonical
/// `d = 6` state ordering), then the two 4d pairs; plain slot order for
/// `d <= 4`.
fn slot_order(g: &GammaSet) -> Vec<usize> {
    let m = (g.d / 2) as usize;
    if g.d <= 4 {
        (0..m).collect()
    } else {
        (2..m).chain(0..2).collect()
    }
}

/// Tagged operator product for one flip mask: bit `j` unset applies the
/// nilpotent with the slot's starting tag; bit `j` set applies the projector
/// with the negated tag.
fn mask_operator(g: &GammaSet, mask: usize) -> CMatrix {
    let dim = g.dim();
    let mut op = CMatrix::identity(dim, dim);
    for &slot in &slot_order(g) {
        let (p, q) = g.cartan_pairs[slot];
        let k0 = start_tag((p, q));
        let factor = if mask >> slot & 1 == 0 {
            nilpotent(g, p, q, k0).expect("cartan pair labels are valid")
        } else {
            projector(g, p, q, k0.negated()).expect("cartan pair labels are valid")
        };
        op *= factor;
    }
    op
}

/// Reference vacuum: the first standard basis column on which every tagged
/// operator product (all `2^{d/2}` flip masks) acts without annihilating.
#[must_use]
pub fn reference_vacuum(g: &GammaSet) -> CVector {
    let m = (g.d / 2) as usize;
    let dim = g.dim();
    let ops: Vec<CMatrix> = (0..1usize << m).map(|mask| mask_operator(g, mask)).collect();
    let idx = (0..dim)
        .find(|&j| {
            ops.iter()
                .all(|op| op.column(j).iter().map(Complex64::norm_sqr).sum::<f64>() > 1e-20)
        })
        .expect("every supported dimension admits a vacuum column");
    CVector::from_fn(dim, |i, _| {
        if i == idx {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// All `2^{d/2 - 1}` basis states of one handedness, built by applying the
/// even-flip tagged products to the reference vacuum, in ascending mask
/// order.
#[must_use]
pub fn weyl_basis(g: &GammaSet) -> Vec<BasisState> {
    let m = (g.d / 2) as usize;
    let vacuum = reference_vacuum(g);
    (0..1usize << m)
        .filter(|mask| mask.count_ones() % 2 == 0)
        .map(|mask| {
            let vector = &mask_operator(g, mask) * &vacuum;
            let tags = slot_order(g)
                .into_iter()
                .map(|slot| {
                    let pair = g.cartan_pairs[slot];
                    let k0 = start_tag(pair);
                    if mask >> slot & 1 == 0 {
                        FactorTag {
                            pair,
                            kind: FactorKind::Nilpotent,
                            k: k0,
                        }
                    } else {
                        FactorTag {
                            pair,
                            kind: FactorKind::Projector,
                            k: k0.negated(),
                        }
                    }
                })
                .collect();
            let gv = &g.handedness * &vector;
            let norm_sq: f64 = vector.iter().map(Complex64::norm_sqr).sum();
            let handedness = vector.dotc(&gv).re / norm_sq;
            BasisState {
                vector,
                tags,
                handedness,
            }
        })
        .collect()
}

/// Ladder operator `N^{superscript}_{subscript}` mixing the two 4d Cartan
/// pairs:
/// `N^+_+ = -(03)(-i)(12)(+)`, `N^-_+ = -(03)(+i)(12)(-)`,
/// `N^+_- = +(03)(+i)(12)(+)`, `N^-_- = +(03)(-i)(12)(-)`.
pub fn ladder_n(g: &GammaSet, superscript: Sign, subscript: Sign) -> Result<CMatrix> {
    if g.d < 4 {
        return Err(Error::DimensionTooSmall { d: g.d, min_d: 4 });
    }
    let k12 = match superscript {
        Sign::Plus => KValue::PlusOne,
        Sign::Minus => KValue::MinusOne,
    };
    let (overall, k03) = match (superscript, subscript) {
        (Sign::Plus, Sign::Plus) => (-1.0, KValue::MinusI),
        (Sign::Minus, Sign::Plus) => (-1.0, KValue::PlusI),
        (Sign::Plus, Sign::Minus) => (1.0, KValue::PlusI),
        (Sign::Minus, Sign::Minus) => (1.0, KValue::MinusI),
    };
    let op = nilpotent(g, 0, 3, k03)? * nilpotent(g, 1, 2, k12)?;
    Ok(op * Complex64::new(overall, 0.0))
}

/// 4d spin factor `alpha (03)(+i)(12)(+) psi0 + beta (03)[-i](12)[-] psi0`.
pub fn four_spinor_plus(g: &GammaSet, alpha: Complex64, beta: Complex64) -> Result<CVector> {
    if g.d < 4 {
        return Err(Error::DimensionTooSmall { d: g.d, min_d: 4 });
    }
    let vacuum = reference_vacuum(g);
    let t1 = nilpotent(g, 0, 3, KValue::PlusI)? * nilpotent(g, 1, 2, KValue::PlusOne)?;
    let t2 = projector(g, 0, 3, KValue::MinusI)? * projector(g, 1, 2, KValue::MinusOne)?;
    Ok(&t1 * &vacuum * alpha + &t2 * &vacuum * beta)
}

/// 4d spin factor `alpha (03)[-i](12)(+) psi0 + beta (03)(+i)(12)[-] psi0`.
pub fn four_spinor_minus(g: &GammaSet, alpha: Complex64, beta: Complex64) -> Result<CVector> {
    if g.d < 4 {
        return Err(Error::DimensionTooSmall { d: g.d, min_d: 4 });
    }
    let vacuum = reference_vacuum(g);
    let t1 = projector(g, 0, 3, KValue::MinusI)? * nilpotent(g, 1, 2, KValue::PlusOne)?;
    let t2 = nilpotent(g, 0, 3, KValue::PlusI)? * projector(g, 1, 2, KValue::MinusOne)?;
    Ok(&t1 * &vacuum * alpha + &t2 * &vacuum * beta)
}

/// Total angular eigenvalue `orbital_power + S^56-eigenvalue` of a state
/// whose plane factor is `e^{i orbital_power phi}` times `spin_vector`.
///
/// The two terms of the composite mode carry orbital powers `n` and `n + 1`
/// against spin `+1/2` and `-1/2`, so both return `n + 1/2`.
pub fn m56_eigenvalue(g: &GammaSet, spin_vector: &CVector, orbital_power: u32) -> Result<f64> {
    if g.d < 6 {
        return Err(Error::DimensionTooSmall { d: g.d, min_d: 6 });
    }
    let norm_sq: f64 = spin_vector.iter().map(Complex64::norm_sqr).sum();
    if norm_sq < 1e-24 {
        return Err(Error::ZeroState);
    }
    let s56 = s_ab(g, 5, 6)?;
    let image = &s56 * spin_vector;
    let lambda = spin_vector.dotc(&image) / Complex64::new(norm_sq, 0.0);
    let residual = (&image - spin_vector * lambda)
        .iter()
        .map(Complex64::norm_sqr)
        .sum::<f64>()
        .sqrt()
        / norm_sq.sqrt();
    let off_half = lambda.im.abs().max((lambda.re.abs() - 0.5).abs());
    if residual > 1e-10 || off_half > 1e-10 {
        return Err(Error::IndefiniteSpin {
            deviation: residual.max(off_half),
        });
    }
    Ok(f64::from(orbital_power) + lambda.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn basis_column(dim: usize, idx: usize) -> CVector {
        CVector::from_fn(dim, |i, _| {
            if i == idx {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    #[test]
    fn dimension_validation() {
        assert!(build_gammas(3).is_err());
        assert!(build_gammas(0).is_err());
        assert!(build_gammas(12).is_err());
        assert!(build_gammas(2).is_ok());
        assert!(build_gammas(10).is_ok());
    }

    #[test]
    fn entries_are_exact_units() {
        for d in [2u32, 4, 6, 8, 10] {
            let g = build_gammas(d).unwrap();
            for label in g.labels() {
                for z in g.gamma(*label).unwrap().iter() {
                    let is_unit = (z.re == 0.0 && z.im == 0.0)
                        || (z.re.abs() == 1.0 && z.im == 0.0)
                        || (z.re == 0.0 && z.im.abs() == 1.0);
                    assert!(is_unit, "entry {z} of gamma^{label} in d = {d}");
                }
            }
        }
    }

    #[test]
    fn anticommutators_exact() {
        for d in [2u32, 4, 6, 8, 10] {
            let g = build_gammas(d).unwrap();
            let dim = g.dim();
            let id = CMatrix::identity(dim, dim);
            for &a in g.labels() {
                for &b in g.labels() {
                    let ga = g.gamma(a).unwrap();
                    let gb = g.gamma(b).unwrap();
                    let anti = ga * gb + gb * ga;
                    let target = if a == b {
                        &id * Complex64::new(2.0 * g.eta(a).unwrap(), 0.0)
                    } else {
                        CMatrix::zeros(dim, dim)
                    };
                    assert_eq!(max_abs_diff(&anti, &target), 0.0, "pair ({a},{b}) d={d}");
                }
            }
        }
    }

    #[test]
    fn hermiticity_exact() {
        for d in [2u32, 4, 6, 8, 10] {
            let g = build_gammas(d).unwrap();
            for &a in g.labels() {
                let ga = g.gamma(a).unwrap();
                let target = ga * Complex64::new(g.eta(a).unwrap(), 0.0);
                assert_eq!(max_abs_diff(&ga.adjoint(), &target), 0.0);
            }
        }
    }

    #[test]
    fn handedness_properties() {
        for d in [2u32, 4, 6, 8, 10] {
            let g = build_gammas(d).unwrap();
            let gam = g.handedness();
            let dim = g.dim();
            let id = CMatrix::identity(dim, dim);
            assert_eq!(max_abs_diff(&(gam * gam), &id), 0.0, "square, d = {d}");
            assert_eq!(max_abs_diff(&gam.adjoint(), gam), 0.0, "hermitian, d = {d}");
            for &a in g.labels() {
                let ga = g.gamma(a).unwrap();
                let anti = gam * ga + ga * gam;
                assert_eq!(
                    max_abs_diff(&anti, &CMatrix::zeros(dim, dim)),
                    0.0,
                    "anticommute gamma^{a}, d = {d}"
                );
            }
        }
        // Smallest case is literally diagonal +/-1.
        let g2 = build_gammas(2).unwrap();
        assert_eq!(g2.handedness()[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(g2.handedness()[(1, 1)], Complex64::new(-1.0, 0.0));
        assert_eq!(g2.handedness()[(0, 1)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn label_sets_skip_four() {
        assert_eq!(build_gammas(4).unwrap().labels(), &[0, 1, 2, 3]);
        assert_eq!(build_gammas(6).unwrap().labels(), &[0, 1, 2, 3, 5, 6]);
        assert_eq!(
            build_gammas(10).unwrap().labels(),
            &[0, 1, 2, 3, 5, 6, 7, 8, 9, 10]
        );
        let g = build_gammas(6).unwrap();
        assert!(g.gamma(4).is_err());
        assert!(g.gamma(7).is_err());
    }

    #[test]
    fn lorentz_generator_examples() {
        let g = build_gammas(6).unwrap();
        let s03 = s_ab(&g, 0, 3).unwrap();
        let s12 = s_ab(&g, 1, 2).unwrap();
        let s56 = s_ab(&g, 5, 6).unwrap();
        // Cartan members commute.
        assert!(max_abs_diff(&(&s03 * &s12), &(&s12 * &s03)) < 1e-14);
        // [S^01, S^12] = i eta^11 S^02.
        let s01 = s_ab(&g, 0, 1).unwrap();
        let s02 = s_ab(&g, 0, 2).unwrap();
        let comm = &s01 * &s12 - &s12 * &s01;
        let target = s02 * Complex64::new(0.0, g.eta(1).unwrap());
        assert!(max_abs_diff(&comm, &target) < 1e-13);
        // S^56 is hermitian (two spacelike indices).
        assert!(max_abs_diff(&s56.adjoint(), &s56) < 1e-14);
        // S^03 is anti-hermitian (mixed pair).
        assert!(max_abs_diff(&s03.adjoint(), &(&s03 * Complex64::new(-1.0, 0.0))) < 1e-14);
        assert!(s_ab(&g, 3, 3).is_err());
        assert!(s_ab(&g, 0, 4).is_err());
    }

    #[test]
    fn k_validation() {
        let g = build_gammas(6).unwrap();
        // (5,6): both spacelike, k^2 must be +1.
        assert!(nilpotent(&g, 5, 6, KValue::PlusOne).is_ok());
        assert!(matches!(
            nilpotent(&g, 5, 6, KValue::PlusI),
            Err(Error::InvalidK { .. })
        ));
        // (0,3): mixed, k^2 must be -1.
        assert!(projector(&g, 0, 3, KValue::MinusI).is_ok());
        assert!(matches!(
            projector(&g, 0, 3, KValue::PlusOne),
            Err(Error::InvalidK { .. })
        ));
    }

    #[test]
    fn nilpotency_idempotency_and_exchange() {
        let g = build_gammas(6).unwrap();
        let dim = g.dim();
        let zero = CMatrix::zeros(dim, dim);
        let n_plus = nilpotent(&g, 5, 6, KValue::PlusOne).unwrap();
        let n_minus = nilpotent(&g, 5, 6, KValue::MinusOne).unwrap();
        let p_plus = projector(&g, 5, 6, KValue::PlusOne).unwrap();
        let p_minus = projector(&g, 5, 6, KValue::MinusOne).unwrap();
        assert_eq!(max_abs_diff(&(&n_plus * &n_plus), &zero), 0.0);
        assert_eq!(max_abs_diff(&(&p_plus * &p_plus), &p_plus), 0.0);
        // (k)(-k) = eta^aa [k]; eta^55 = -1.
        let target = &p_plus * Complex64::new(g.eta(5).unwrap(), 0.0);
        assert_eq!(max_abs_diff(&(&n_plus * &n_minus), &target), 0.0);
        let target = &p_minus * Complex64::new(g.eta(5).unwrap(), 0.0);
        assert_eq!(max_abs_diff(&(&n_minus * &n_plus), &target), 0.0);
    }

    #[test]
    fn gamma_action_on_tagged_factors() {
        // gamma^a (k) = eta^aa [-k]; gamma^b (k) = -ik [-k];
        // gamma^a [k] = (-k);       gamma^b [k] = -ik eta^aa (-k).
        let g = build_gammas(6).unwrap();
        for (a, b, ks) in [
            (5u32, 6u32, vec![KValue::PlusOne, KValue::MinusOne]),
            (0, 3, vec![KValue::PlusI, KValue::MinusI]),
        ] {
            let ga = g.gamma(a).unwrap().clone();
            let gb = g.gamma(b).unwrap().clone();
            let eta_a = Complex64::new(g.eta(a).unwrap(), 0.0);
            for k in ks {
                let nil_k = nilpotent(&g, a, b, k).unwrap();
                let nil_mk = nilpotent(&g, a, b, k.negated()).unwrap();
                let proj_k = projector(&g, a, b, k).unwrap();
                let proj_mk = projector(&g, a, b, k.negated()).unwrap();
                let mik = Complex64::new(0.0, -1.0) * k.value();
                assert_eq!(max_abs_diff(&(&ga * &nil_k), &(&proj_mk * eta_a)), 0.0);
                assert_eq!(max_abs_diff(&(&gb * &nil_k), &(&proj_mk * mik)), 0.0);
                assert_eq!(max_abs_diff(&(&ga * &proj_k), &nil_mk), 0.0);
                assert_eq!(
                    max_abs_diff(&(&gb * &proj_k), &(&nil_mk * (mik * eta_a))),
                    0.0
                );
            }
        }
    }

    #[test]
    fn cartan_eigen_operators() {
        // S^{ab} (ab)(k) = (k/2)(ab)(k), same for the projector.
        let g = build_gammas(6).unwrap();
        for (a, b, k) in [
            (5u32, 6u32, KValue::PlusOne),
            (5, 6, KValue::MinusOne),
            (0, 3, KValue::PlusI),
            (1, 2, KValue::MinusOne),
        ] {
            let s = s_ab(&g, a, b).unwrap();
            let half_k = k.value() * Complex64::new(0.5, 0.0);
            let nil = nilpotent(&g, a, b, k).unwrap();
            assert!(max_abs_diff(&(&s * &nil), &(&nil * half_k)) < 1e-15);
            let proj = projector(&g, a, b, k).unwrap();
            assert!(max_abs_diff(&(&s * &proj), &(&proj * half_k)) < 1e-15);
        }
    }

    #[test]
    fn weyl_basis_d6_literal() {
        let g = build_gammas(6).unwrap();
        let states = weyl_basis(&g);
        assert_eq!(states.len(), 4);
        let dim = g.dim();
        assert_eq!(reference_vacuum(&g), basis_column(dim, 3));

        let i = Complex64::new(0.0, 1.0);
        let expected = [
            basis_column(dim, 4),
            basis_column(dim, 2) * (-i),
            basis_column(dim, 1) * i,
            basis_column(dim, 7),
        ];
        for (state, want) in states.iter().zip(&expected) {
            let diff: f64 = (&state.vector - want).iter().map(|z| z.norm()).sum();
            assert_eq!(diff, 0.0, "state {}", state.tag_string());
            assert_eq!(state.handedness, -1.0);
        }

        // Tag strings in application order (internal pair first).
        assert_eq!(states[0].tag_string(), "(5,6)(+1)(0,3)(+i)(1,2)(+1)");
        assert_eq!(states[1].tag_string(), "(5,6)(+1)(0,3)[-i](1,2)[-1]");
        assert_eq!(states[2].tag_string(), "(5,6)[-1](0,3)[-i](1,2)(+1)");
        assert_eq!(states[3].tag_string(), "(5,6)[-1](0,3)(+i)(1,2)[-1]");

        // Orthonormality under the standard inner product.
        for (i1, s1) in states.iter().enumerate() {
            for (i2, s2) in states.iter().enumerate() {
                let ip = s1.vector.dotc(&s2.vector);
                let want = if i1 == i2 { 1.0 } else { 0.0 };
                assert!((ip - Complex64::new(want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn weyl_basis_cartan_eigenvalues_match_tags() {
        for d in [2u32, 4, 6, 8] {
            let g = build_gammas(d).unwrap();
            for state in weyl_basis(&g) {
                for tag in &state.tags {
                    let s = s_ab(&g, tag.pair.0, tag.pair.1).unwrap();
                    let image = &s * &state.vector;
                    let target = &state.vector * tag.cartan_eigenvalue();
                    let diff: f64 = (&image - &target).iter().map(|z| z.norm()).sum();
                    assert!(diff < 1e-14, "d = {d}, tag {tag}");
                }
                // Handedness is a true eigenvalue.
                let image = g.handedness() * &state.vector;
                let target = &state.vector * Complex64::new(state.handedness, 0.0);
                let diff: f64 = (&image - &target).iter().map(|z| z.norm()).sum();
                assert!(diff < 1e-14);
            }
        }
    }

    #[test]
    fn ladder_table() {
        let g = build_gammas(6).unwrap();
        let states = weyl_basis(&g);
        let (phi11, phi12, phi21, phi22) = (
            &states[0].vector,
            &states[1].vector,
            &states[2].vector,
            &states[3].vector,
        );
        let n_pp = ladder_n(&g, Sign::Plus, Sign::Plus).unwrap();
        let n_pm = ladder_n(&g, Sign::Plus, Sign::Minus).unwrap();

        let norm = |v: &CVector| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        // N^+_+ annihilates the state already carrying (03)(+i)(12)(+).
        assert!(norm(&(&n_pp * phi11)) < 1e-15);
        // N^+_+ raises phi^2_2 to phi^2_1 with unit coefficient.
        let raised = &n_pp * phi22;
        assert!(norm(&(&raised - phi21)) < 1e-15);
        assert!(norm(&(&n_pp * phi12)) < 1e-15);
        assert!(norm(&(&n_pp * phi21)) < 1e-15);
        // N^+_- moves phi^1_2 to phi^1_1 with unit coefficient.
        let moved = &n_pm * phi12;
        assert!(norm(&(&moved - phi11)) < 1e-15);
        assert!(norm(&(&n_pm * phi11)) < 1e-15);

        // Every ladder squares to zero.
        for sup in [Sign::Plus, Sign::Minus] {
            for sub in [Sign::Plus, Sign::Minus] {
                let n = ladder_n(&g, sup, sub).unwrap();
                assert!(max_abs_diff(&(&n * &n), &CMatrix::zeros(8, 8)) < 1e-15);
            }
        }
        assert!(ladder_n(&build_gammas(2).unwrap(), Sign::Plus, Sign::Plus).is_err());
    }

    #[test]
    fn four_spinor_assembly() {
        let g = build_gammas(6).unwrap();
        let states = weyl_basis(&g);
        let alpha = Complex64::new(0.6, 0.1);
        let beta = Complex64::new(-0.3, 0.8);
        let f56_plus = nilpotent(&g, 5, 6, KValue::PlusOne).unwrap();
        let f56_minus = projector(&g, 5, 6, KValue::MinusOne).unwrap();

        let plus = four_spinor_plus(&g, alpha, beta).unwrap();
        let want = &states[0].vector * alpha + &states[1].vector * beta;
        let got = &f56_plus * &plus;
        assert!((&got - &want).iter().map(|z| z.norm()).sum::<f64>() < 1e-14);

        let minus = four_spinor_minus(&g, alpha, beta).unwrap();
        let want = &states[2].vector * alpha + &states[3].vector * beta;
        let got = &f56_minus * &minus;
        assert!((&got - &want).iter().map(|z| z.norm()).sum::<f64>() < 1e-14);
    }

    #[test]
    fn m56_examples() {
        let g = build_gammas(6).unwrap();
        let states = weyl_basis(&g);
        // Spin +1/2 part with orbital power n = 0.
        assert_eq!(m56_eigenvalue(&g, &states[0].vector, 0).unwrap(), 0.5);
        // Spin -1/2 part carries the extra phase factor: orbital power n + 1.
        assert_eq!(m56_eigenvalue(&g, &states[2].vector, 1).unwrap(), 0.5);
        // Additivity.
        assert_eq!(m56_eigenvalue(&g, &states[0].vector, 3).unwrap(), 3.5);

        let zero = CVector::zeros(8);
        assert!(matches!(
            m56_eigenvalue(&g, &zero, 0),
            Err(Error::ZeroState)
        ));
        let mixed = &states[0].vector + &states[2].vector;
        assert!(matches!(
            m56_eigenvalue(&g, &mixed, 0),
            Err(Error::IndefiniteSpin { .. })
        ));
        let g4 = build_gammas(4).unwrap();
        let v = basis_column(4, 0);
        assert!(matches!(
            m56_eigenvalue(&g4, &v, 0),
            Err(Error::DimensionTooSmall { .. })
        ));
    }
}
