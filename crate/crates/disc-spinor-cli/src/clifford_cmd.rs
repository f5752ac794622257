//! `clifford`: gamma-matrix identity battery in even dimension d <= 10.
//!
//! The construction is exact over dyadic rationals, so every deviation
//! below is expected to be exactly zero; the 1e-14 budget is the printed
//! contract, not a working tolerance.

use disc_spinor::clifford::{
    build_gammas, nilpotent, projector, s_ab, weyl_basis, CMatrix, Complex64, GammaSet, KValue,
};
use disc_spinor::Error;

use crate::output::{emit, Cell, Report};
use crate::{CliError, CliResult, CliffordArgs};

/// Budget applied to every family; construction is exact.
pub const FAMILY_BUDGET: f64 = 1e-14;

/// Aggregated deviation of one identity family.
pub struct FamilyCheck {
    pub name: &'static str,
    pub deviation: f64,
    pub detail: String,
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn imag(x: f64) -> Complex64 {
    Complex64::new(0.0, x)
}

/// Base eigenvalue tag of a Cartan pair: `k^2 = eta^aa eta^bb`, so a pair
/// containing the timelike index squares to -1 and takes imaginary tags.
fn base_k(pair: (u32, u32)) -> KValue {
    if pair.0 == 0 || pair.1 == 0 {
        KValue::PlusI
    } else {
        KValue::PlusOne
    }
}

fn anticommutators(g: &GammaSet) -> Result<FamilyCheck, Error> {
    let dim = g.dim();
    let id = CMatrix::identity(dim, dim);
    let mut dev = 0.0f64;
    let mut count = 0usize;
    for &a in g.labels() {
        for &b in g.labels() {
            let ga = g.gamma(a)?;
            let gb = g.gamma(b)?;
            let eta_ab = if a == b { g.eta(a)? } else { 0.0 };
            let lhs = ga * gb + gb * ga - &id * real(2.0 * eta_ab);
            dev = dev.max(max_abs(&lhs));
            count += 1;
        }
    }
    Ok(FamilyCheck {
        name: "anticommutators",
        deviation: dev,
        detail: format!("{count} ordered index pairs against the metric"),
    })
}

fn hermiticity(g: &GammaSet) -> Result<FamilyCheck, Error> {
    let mut dev = 0.0f64;
    let mut count = 0usize;
    for &a in g.labels() {
        let ga = g.gamma(a)?;
        dev = dev.max(max_abs(&(ga.adjoint() - ga * real(g.eta(a)?))));
        count += 1;
    }
    for &(a, b) in g.cartan_pairs() {
        let eta_aa = g.eta(a)?;
        for k in [base_k((a, b)), base_k((a, b)).negated()] {
            let nil = nilpotent(g, a, b, k)?;
            let nil_neg = nilpotent(g, a, b, k.negated())?;
            dev = dev.max(max_abs(&(nil.adjoint() - nil_neg * real(eta_aa))));
            let proj = projector(g, a, b, k)?;
            dev = dev.max(max_abs(&(proj.adjoint() - proj)));
            count += 2;
        }
    }
    Ok(FamilyCheck {
        name: "hermiticity",
        deviation: dev,
        detail: format!("{count} adjoint relations (generators, nilpotents, projectors)"),
    })
}

fn handedness(g: &GammaSet) -> Result<FamilyCheck, Error> {
    let dim = g.dim();
    let id = CMatrix::identity(dim, dim);
    let h = g.handedness();
    let mut dev = max_abs(&(h * h - &id));
    dev = dev.max(max_abs(&(h.adjoint() - h)));
    for &a in g.labels() {
        let ga = g.gamma(a)?;
        dev = dev.max(max_abs(&(h * ga + ga * h)));
    }
    Ok(FamilyCheck {
        name: "handedness",
        deviation: dev,
        detail: format!(
            "square, self-adjointness, and anticommutation with {} generators",
            g.labels().len()
        ),
    })
}

fn cartan_eigenstates(g: &GammaSet) -> Result<FamilyCheck, Error> {
    let mut dev = 0.0f64;
    let mut count = 0usize;
    for &(a, b) in g.cartan_pairs() {
        let s = s_ab(g, a, b)?;
        for k in [base_k((a, b)), base_k((a, b)).negated()] {
            let half_k = k.value() * real(0.5);
            let nil = nilpotent(g, a, b, k)?;
            dev = dev.max(max_abs(&(&s * &nil - &nil * half_k)));
            let proj = projector(g, a, b, k)?;
            dev = dev.max(max_abs(&(&s * &proj - &proj * half_k)));
            count += 2;
        }
    }
    Ok(FamilyCheck {
        name: "cartan-eigenstates",
        deviation: dev,
        detail: format!("{count} eigenobject relations under the pair generators"),
    })
}

fn tagged_products(g: &GammaSet) -> Result<FamilyCheck, Error> {
    let dim = g.dim();
    let zero = CMatrix::zeros(dim, dim);
    let mut dev = 0.0f64;
    let mut count = 0usize;
    for &(a, b) in g.cartan_pairs() {
        let k = base_k((a, b));
        let kn = k.negated();
        let eta_aa = g.eta(a)?;
        let np = nilpotent(g, a, b, k)?;
        let nm = nilpotent(g, a, b, kn)?;
        let pp = projector(g, a, b, k)?;
        let pm = projector(g, a, b, kn)?;
        // Sixteen product rules of the tagged factors; eta is the metric
        // entry of the pair's first index.
        let cases: [(&CMatrix, &CMatrix, CMatrix); 16] = [
            (&np, &np, zero.clone()),
            (&np, &nm, &pp * real(eta_aa)),
            (&nm, &np, &pm * real(eta_aa)),
            (&nm, &nm, zero.clone()),
            (&pp, &pp, pp.clone()),
            (&pp, &pm, zero.clone()),
            (&pm, &pp, zero.clone()),
            (&pm, &pm, pm.clone()),
            (&np, &pp, zero.clone()),
            (&pp, &np, np.clone()),
            (&nm, &pp, nm.clone()),
            (&nm, &pm, zero.clone()),
            (&np, &pm, np.clone()),
            (&pp, &nm, zero.clone()),
            (&pm, &np, zero.clone()),
            (&pm, &nm, nm.clone()),
        ];
        for (left, right, expect) in &cases {
            dev = dev.max(max_abs(&(*left * *right - expect)));
            count += 1;
        }
    }
    Ok(FamilyCheck {
        name: "tagged-products",
        deviation: dev,
        detail: format!("{count} product rules of nilpotents and projectors"),
    })
}

fn generator_flips(g: &GammaSet) -> Result<FamilyCheck, Error> {
    let mut dev = 0.0f64;
    let mut count = 0usize;
    let spacelike: Vec<(u32, u32)> = g
        .cartan_pairs()
        .iter()
        .copied()
        .filter(|&(a, b)| a != 0 && b != 0)
        .collect();
    for &(a, b) in &spacelike {
        for &(c, d) in &spacelike {
            if (a, b) == (c, d) {
                continue;
            }
            let s = s_ab(g, a, c)?;
            let eta_aa = g.eta(a)?;
            let eta_cc = g.eta(c)?;
            for k in [KValue::PlusOne, KValue::MinusOne] {
                let kn = k.negated();
                let n1 = nilpotent(g, a, b, k)?;
                let n2 = nilpotent(g, c, d, k)?;
                let n1n = nilpotent(g, a, b, kn)?;
                let n2n = nilpotent(g, c, d, kn)?;
                let p1 = projector(g, a, b, k)?;
                let p2 = projector(g, c, d, k)?;
                let p1n = projector(g, a, b, kn)?;
                let p2n = projector(g, c, d, kn)?;
                // The cross-pair generator S^{ac} flips both tags and
                // toggles nilpotent/projector kind on each factor.
                dev = dev.max(max_abs(
                    &(&s * (&n1 * &n2) - (&p1n * &p2n) * (imag(-0.5) * real(eta_aa * eta_cc))),
                ));
                dev = dev.max(max_abs(&(&s * (&p1 * &p2) - (&n1n * &n2n) * imag(0.5))));
                dev = dev.max(max_abs(
                    &(&s * (&n1 * &p2) - (&p1n * &n2n) * (imag(-0.5) * real(eta_aa))),
                ));
                dev = dev.max(max_abs(
                    &(&s * (&p1 * &n2) - (&n1n * &p2n) * (imag(0.5) * real(eta_cc))),
                ));
                count += 4;
            }
        }
    }
    Ok(FamilyCheck {
        name: "generator-flips",
        deviation: dev,
        detail: format!("{count} cross-pair rotations of tagged factor products"),
    })
}

fn weyl_cartan(g: &GammaSet) -> Result<FamilyCheck, Error> {
    let states = weyl_basis(g);
    let mut dev = 0.0f64;
    let mut count = 0usize;
    for state in &states {
        for &pair in g.cartan_pairs() {
            let s = s_ab(g, pair.0, pair.1)?;
            let tag = state
                .tag_for(pair)
                .expect("every basis state carries a tag per pair");
            let residual = &s * &state.vector - &state.vector * tag.cartan_eigenvalue();
            dev = dev.max(residual.iter().map(|z| z.norm()).fold(0.0, f64::max));
            count += 1;
        }
    }
    Ok(FamilyCheck {
        name: "weyl-cartan",
        deviation: dev,
        detail: format!("{count} eigenvalue relations over the basis states"),
    })
}

fn weyl_orthonormality(g: &GammaSet) -> FamilyCheck {
    let states = weyl_basis(g);
    let expected = 1usize << (g.d() / 2 - 1);
    let mut dev: f64 = if states.len() == expected { 0.0 } else { 1.0 };
    for (i, si) in states.iter().enumerate() {
        for (j, sj) in states.iter().enumerate() {
            let gram = si.vector.dotc(&sj.vector);
            let target = if i == j { real(1.0) } else { real(0.0) };
            dev = dev.max((gram - target).norm());
        }
    }
    let shared = states
        .iter()
        .all(|s| s.handedness == states[0].handedness);
    if !shared {
        dev = dev.max(1.0);
    }
    FamilyCheck {
        name: "weyl-basis",
        deviation: dev,
        detail: format!(
            "{} orthonormal states, shared handedness {:+}",
            states.len(),
            states[0].handedness
        ),
    }
}

/// Every identity family for dimension `d`, in reporting order.
/// Cross-pair rotations need two spacelike Cartan pairs, so that family
/// only appears for d >= 6.
pub fn family_checks(d: u32) -> CliResult<Vec<FamilyCheck>> {
    let g = build_gammas(d).map_err(|e| CliError::Usage(e.to_string()))?;
    let build = |r: Result<FamilyCheck, Error>| r.map_err(|e| CliError::Failure(e.to_string()));
    let mut out = vec![
        build(anticommutators(&g))?,
        build(hermiticity(&g))?,
        build(handedness(&g))?,
        build(cartan_eigenstates(&g))?,
        build(tagged_products(&g))?,
    ];
    if d >= 6 {
        out.push(build(generator_flips(&g))?);
    }
    out.push(build(weyl_cartan(&g))?);
    out.push(weyl_orthonormality(&g));
    Ok(out)
}

pub fn run(args: &CliffordArgs) -> CliResult<u8> {
    let checks = family_checks(args.d)?;
    let g = build_gammas(args.d).map_err(|e| CliError::Usage(e.to_string()))?;
    let states = weyl_basis(&g);

    let mut report = Report::new(
        "clifford",
        vec!["check", "measured", "budget", "pass", "detail"],
    );
    report.config("d", args.d);

    let mut failures = 0usize;
    for check in &checks {
        let pass = check.deviation <= FAMILY_BUDGET;
        if !pass {
            failures += 1;
        }
        report.push_row(vec![
            Cell::Text(check.name.into()),
            Cell::Float(check.deviation),
            Cell::Float(FAMILY_BUDGET),
            Cell::Bool(pass),
            Cell::Text(check.detail.clone()),
        ]);
    }
    for (i, state) in states.iter().enumerate() {
        report.push_row(vec![
            Cell::Text("weyl-state".into()),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Text(format!(
                "{i}: {} handedness {:+}",
                state.tag_string(),
                state.handedness
            )),
        ]);
    }

    emit(&report, args.format, args.out.as_deref())?;
    eprintln!("clifford: {} families, {failures} failed", checks.len());
    Ok(u8::from(failures > 0))
}
