//! Solution-hierarchy catalog, classifier, and closed-form cross-checks.
//!
//! At special parameter values the generated Painleve solutions collapse to
//! simpler special functions. This module classifies chain parameters into
//! hierarchy labels, evaluates the catalogued closed forms where a certified
//! expression exists, and cross-checks them against the general generators.
//!
//! Certification policy: a closed form is usable as a cross-check reference
//! only if it passes its own equation's residual test below 1e-9. Catalogued
//! expressions that fail that test (or contain undefined symbols) are gated
//! behind an explicit error rather than silently trusted; the tests document
//! the failures.

use crate::ders::Ders;
use crate::oscillators::{Mixing, SeedParams, SystemKind};
use crate::painleve_iv::{piv_equation_residual, piv_params, PivFamily, PivSolution};
use crate::painleve_v::{first_order_pv_params, pv_equation_residual, PvSolution};
use crate::report::CrosscheckReport;
use crate::specfun::{gamma, hyp1f1};
use crate::susy::ChainSpec;
use crate::{C64, Error, Result};

/// Which Painleve equation a hierarchy belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PainleveEquation {
    Piv,
    Pv,
}

/// The catalogued hierarchy names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HierarchyName {
    ConfluentHypergeometric,
    ErrorFunction,
    Rational,
    Laguerre,
    Hermite,
    Exponential,
    ModifiedBessel,
    Weber,
}

/// A hierarchy label together with the parameters that generated it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HierarchyLabel {
    pub equation: PainleveEquation,
    pub name: HierarchyName,
    pub k: usize,
    pub epsilon1: C64,
    /// Half-line angular parameter, required for the Pv hierarchies.
    pub j: Option<f64>,
    /// Free mixing constant of the display, when it carries one. The
    /// classifier leaves it unset; closed forms default it to zero.
    pub nu: Option<C64>,
}

/// Map chain parameters to the most specific hierarchy label.
///
/// For the quartic equation: seeds at eps1 = -1/2 - m (integer m >= 0)
/// leave the confluent-hypergeometric series only partially generic; even
/// m >= 2 with chain order k >= 2 collapses all the way to rational
/// solutions, the remaining half-odd-integer cases stop at the error-like
/// antiderivative. For the quintic equation: the first-branch series
/// truncates to a generalized-Laguerre polynomial exactly when
/// eps1 = (1 - 2j + 4n)/4 with integer n >= 0.
pub fn classify(
    equation: PainleveEquation,
    k: usize,
    epsilon1: C64,
    j: Option<f64>,
) -> HierarchyLabel {
    let name = match equation {
        PainleveEquation::Piv => {
            let m = -(epsilon1.re + 0.5);
            if epsilon1.im == 0.0 && m >= 0.0 && m == m.round() {
                let m = m as u64;
                if m % 2 == 0 && m >= 2 && k >= 2 {
                    HierarchyName::Rational
                } else {
                    HierarchyName::ErrorFunction
                }
            } else {
                HierarchyName::ConfluentHypergeometric
            }
        }
        PainleveEquation::Pv => match j {
            Some(j) if epsilon1.im == 0.0 => {
                let n = epsilon1.re + (2.0 * j - 1.0) / 4.0;
                if n > -1e-9 && (n - n.round()).abs() <= 1e-9 {
                    HierarchyName::Laguerre
                } else {
                    HierarchyName::ConfluentHypergeometric
                }
            }
            _ => HierarchyName::ConfluentHypergeometric,
        },
    };
    HierarchyLabel {
        equation,
        name,
        k,
        epsilon1,
        j,
        nu: None,
    }
}

/// Derivatives of sum_i coeffs[i] x^i at x (exact small-integer arithmetic).
fn poly_ders(coeffs: &[f64], x: f64, order: usize) -> Ders {
    let mut out = vec![C64::new(0.0, 0.0); order + 1];
    for (m, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for i in (m..coeffs.len()).rev() {
            let falling: f64 = ((i - m + 1)..=i).map(|v| v as f64).product();
            acc = acc * x + coeffs[i] * falling;
        }
        *slot = C64::new(acc, 0.0);
    }
    Ders(out)
}

/// Rational hierarchy, chain order 2 at eps1 = -9/2:
/// g = -8(3x+2x^3)/(3+12x^2+4x^4) + 32(15x^3+12x^5+4x^7)/(45+120x^4+64x^6+16x^8).
pub fn rational_g2_ders(x: f64, order: usize) -> Result<Ders> {
    let p1 = poly_ders(&[0.0, 3.0, 0.0, 2.0], x, order);
    let q1 = poly_ders(&[3.0, 0.0, 12.0, 0.0, 4.0], x, order);
    let p2 = poly_ders(&[0.0, 0.0, 0.0, 15.0, 0.0, 12.0, 0.0, 4.0], x, order);
    let q2 = poly_ders(
        &[45.0, 0.0, 0.0, 0.0, 120.0, 0.0, 64.0, 0.0, 16.0],
        x,
        order,
    );
    Ok(p1
        .div(&q1)?
        .scale(C64::new(-8.0, 0.0))
        .add(&p2.div(&q2)?.scale(C64::new(32.0, 0.0))))
}

/// Rational hierarchy, chain order 3 at eps1 = -5/2:
/// g = 4x(27-72x^2+16x^8)/(27+54x^2+96x^6-48x^8+32x^10).
pub fn rational_g3_ders(x: f64, order: usize) -> Result<Ders> {
    let p = poly_ders(
        &[0.0, 108.0, 0.0, -288.0, 0.0, 0.0, 0.0, 0.0, 0.0, 64.0],
        x,
        order,
    );
    let q = poly_ders(
        &[27.0, 0.0, 54.0, 0.0, 0.0, 0.0, 96.0, 0.0, -48.0, 0.0, 32.0],
        x,
        order,
    );
    p.div(&q)
}

/// Derivatives (up to order 2) of 1F1(a, b; x^2) in x, through the
/// contiguous derivative relation.
fn hyp_square_ders(a: C64, b: C64, x: f64, order: usize) -> Result<Ders> {
    debug_assert!(order <= 2);
    let y = C64::new(x * x, 0.0);
    let f0 = hyp1f1(a, b, y)?;
    let mut out = vec![f0];
    if order >= 1 {
        let f1 = a / b * hyp1f1(a + 1.0, b + 1.0, y)?;
        out.push(2.0 * x * f1);
        if order >= 2 {
            let f2 = a * (a + 1.0) / (b * (b + 1.0)) * hyp1f1(a + 2.0, b + 2.0, y)?;
            out.push(4.0 * x * x * f2 + 2.0 * f1);
        }
    }
    Ok(Ders(out))
}

/// Confluent-hypergeometric hierarchy: the catalogued first-order g
/// expression, a two-fraction combination of 1F1 values (order <= 2).
pub fn confluent_g1_ders(epsilon1: C64, nu: C64, x: f64, order: usize) -> Result<Ders> {
    if order > 2 {
        return Err(Error::DerivativeOrder { order, max: 2 });
    }
    let g14 = gamma((C64::new(1.0, 0.0) - 2.0 * epsilon1) / 4.0)?;
    let g34 = gamma((C64::new(3.0, 0.0) - 2.0 * epsilon1) / 4.0)?;
    let two_eps = 2.0 * epsilon1;
    let f12 = hyp_square_ders(
        (C64::new(1.0, 0.0) - two_eps) / 4.0,
        C64::new(0.5, 0.0),
        x,
        order,
    )?;
    let f32 = hyp_square_ders(
        (C64::new(3.0, 0.0) - two_eps) / 4.0,
        C64::new(1.5, 0.0),
        x,
        order,
    )?;
    let f52 = hyp_square_ders(
        (C64::new(7.0, 0.0) - two_eps) / 4.0,
        C64::new(2.5, 0.0),
        x,
        order,
    )?;
    let f5232 = hyp_square_ders(
        (C64::new(5.0, 0.0) - two_eps) / 4.0,
        C64::new(1.5, 0.0),
        x,
        order,
    )?;
    let xd = Ders::variable(x, order);
    let x2 = xd.mul(&xd);
    let three = Ders::constant(C64::new(3.0, 0.0), order);
    // numerator 1: 2 nu G34 [(3 - 6x^2) F32 + x^2 (3 - 2eps) F52]
    let n1 = three
        .sub(&x2.scale(C64::new(6.0, 0.0)))
        .mul(&f32)
        .add(&x2.scale(C64::new(3.0, 0.0) - two_eps).mul(&f52))
        .scale(2.0 * nu * g34);
    // denominator 1: 3 G14 F12 + 6 nu x G34 F32
    let d1 = f12
        .scale(3.0 * g14)
        .add(&xd.mul(&f32).scale(6.0 * nu * g34));
    // numerator 2: x G14 [-2 F12 + (1 - 2eps) F5232]
    let n2 = xd
        .mul(
            &f12.scale(C64::new(-2.0, 0.0))
                .add(&f5232.scale(C64::new(1.0, 0.0) - two_eps)),
        )
        .scale(g14);
    // denominator 2: G14 F12 + 2 nu x G34 F32
    let d2 = f12.scale(g14).add(&xd.mul(&f32).scale(2.0 * nu * g34));
    Ok(n1.div(&d1)?.add(&n2.div(&d2)?))
}

/// Generalized-Laguerre truncation index n >= 0 with
/// eps1 = (1 - 2j + 4n)/4, or None when the series does not truncate.
pub fn laguerre_index(j: f64, epsilon1: C64) -> Option<usize> {
    if epsilon1.im != 0.0 {
        return None;
    }
    let n = epsilon1.re + (2.0 * j - 1.0) / 4.0;
    if n > -1e-9 && (n - n.round()).abs() <= 1e-9 {
        Some(n.round() as usize)
    } else {
        None
    }
}

/// Certified Laguerre-hierarchy w(z) forms (zero mixing, chain order 1),
/// derived from the truncating seed; n = 0 and n = 1 are catalogued:
///   n = 0: w = (2j+1)/(z + 2j + 1)
///   n = 1: w = [(4j^2-1) + (2j-1) z] / [(4j^2-1) + (4j-2) z + z^2]
pub fn laguerre_w_ders(j: f64, n: usize, z: f64, order: usize) -> Result<Ders> {
    match n {
        0 => {
            let num = poly_ders(&[2.0 * j + 1.0], z, order);
            let den = poly_ders(&[2.0 * j + 1.0, 1.0], z, order);
            num.div(&den)
        }
        1 => {
            let num = poly_ders(&[4.0 * j * j - 1.0, 2.0 * j - 1.0], z, order);
            let den = poly_ders(&[4.0 * j * j - 1.0, 4.0 * j - 2.0, 1.0], z, order);
            num.div(&den)
        }
        _ => Err(Error::GatedClosedForm(format!(
            "Laguerre truncation index {n} is not catalogued (only n = 0, 1)"
        ))),
    }
}

/// The simplest catalogued Laguerre-hierarchy expression, w = 1 - z^{-1/2}.
///
/// Kept for its arithmetic only: brute-force parameter fitting (see tests)
/// shows it solves the quintic equation with (a, b, c, d) = (0, -1/8, 0, 0),
/// i.e. d = 0, so it can never be generated by the chain construction
/// (d = -1/8) and is excluded from cross-checks.
pub fn laguerre_simple_form(z: f64) -> Result<C64> {
    if z <= 0.0 {
        return Err(Error::Domain(format!("needs z > 0, got {z}")));
    }
    Ok(C64::new(1.0 - 1.0 / z.sqrt(), 0.0))
}

/// Evaluate a catalogued closed form at one point.
pub fn closed_form(label: &HierarchyLabel, point: f64) -> Result<C64> {
    closed_form_ders(label, point, 0).map(|d| d.value())
}

/// Closed-form value and derivatives; the backbone of self-certification.
pub fn closed_form_ders(label: &HierarchyLabel, point: f64, order: usize) -> Result<Ders> {
    match (label.equation, label.name) {
        (PainleveEquation::Piv, HierarchyName::Rational) => {
            if label.k == 2 && label.epsilon1 == C64::new(-4.5, 0.0) {
                rational_g2_ders(point, order)
            } else if label.k == 3 && label.epsilon1 == C64::new(-2.5, 0.0) {
                rational_g3_ders(point, order)
            } else {
                Err(Error::GatedClosedForm(format!(
                    "rational forms are catalogued for (k, eps1) = (2, -9/2) and (3, -5/2), \
                     not (k = {}, eps1 = {})",
                    label.k, label.epsilon1
                )))
            }
        }
        (PainleveEquation::Piv, HierarchyName::ConfluentHypergeometric) => {
            if label.k == 1 {
                confluent_g1_ders(
                    label.epsilon1,
                    label.nu.unwrap_or(C64::new(0.0, 0.0)),
                    point,
                    order,
                )
            } else {
                Err(Error::GatedClosedForm(
                    "the confluent-hypergeometric display covers chain order 1 only".into(),
                ))
            }
        }
        (PainleveEquation::Piv, HierarchyName::ErrorFunction) => Err(Error::GatedClosedForm(
            "definition pending: the mixing function in the error-function displays \
             has no catalogued definition"
                .into(),
        )),
        (PainleveEquation::Pv, HierarchyName::Laguerre) => {
            let j = label.j.ok_or_else(|| {
                Error::Invalid("Laguerre closed forms need the angular parameter j".into())
            })?;
            let n = laguerre_index(j, label.epsilon1).ok_or_else(|| {
                Error::Invalid(format!(
                    "eps1 = {} does not truncate the series for j = {j}",
                    label.epsilon1
                ))
            })?;
            if label.k != 1 {
                return Err(Error::GatedClosedForm(
                    "Laguerre w forms are catalogued for chain order 1 only".into(),
                ));
            }
            laguerre_w_ders(j, n, point, order)
        }
        (
            PainleveEquation::Pv,
            HierarchyName::Hermite
            | HierarchyName::Exponential
            | HierarchyName::ModifiedBessel
            | HierarchyName::Weber,
        ) => Err(Error::GatedClosedForm(
            "definition pending: the catalogued expression fails residual certification \
             as printed (no parameter assignment with d = -1/8 satisfies the equation)"
                .into(),
        )),
        (eq, name) => Err(Error::Invalid(format!(
            "hierarchy {name:?} is not catalogued for {eq:?}"
        ))),
    }
}

/// Largest normalized equation residual of the closed form over the grid;
/// the self-certification gate for cross-checks.
fn reference_residual(label: &HierarchyLabel, grid: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    match label.equation {
        PainleveEquation::Piv => {
            let params = piv_params(PivFamily::I, label.epsilon1, label.k);
            for &x in grid {
                let d = closed_form_ders(label, x, 2)?;
                let r = piv_equation_residual(x, d.get(0), d.get(1), d.get(2), &params).norm();
                worst = worst.max(r / (1.0 + d.get(0).norm().powi(4)));
            }
        }
        PainleveEquation::Pv => {
            let j = label
                .j
                .ok_or_else(|| Error::Invalid("quintic reference needs j".into()))?;
            let params = first_order_pv_params(j, label.epsilon1);
            for &z in grid {
                let d = closed_form_ders(label, z, 2)?;
                let r = pv_equation_residual(z, d.get(0), d.get(1), d.get(2), &params).norm();
                worst = worst.max(r / (1.0 + d.get(0).norm().powi(3)));
            }
        }
    }
    Ok(worst)
}

/// Mixing constant used by the generator for a label: the label's own nu
/// when set, otherwise zero (the implicit constant of the catalogued
/// displays, confirmed by the reference-point match).
fn label_chain(label: &HierarchyLabel) -> Result<ChainSpec> {
    let nu = label.nu.unwrap_or(C64::new(0.0, 0.0));
    let seed = SeedParams {
        epsilon: label.epsilon1,
        mixing: Mixing::Nu(nu),
    };
    let system = match label.equation {
        PainleveEquation::Piv => SystemKind::Harmonic,
        PainleveEquation::Pv => SystemKind::Radial {
            j: label
                .j
                .ok_or_else(|| Error::Invalid("quintic generator needs j".into()))?,
        },
    };
    ChainSpec::new(system, label.k, seed)
}

/// Compare a certified closed form against the general generator over a
/// grid.
///
/// The closed form must first pass its own equation's residual test
/// (< 1e-9); the free mixing constant is fixed by matching at the first
/// grid point, and the match quality over the rest of the grid is the
/// result. Deviations beyond tolerance are visible in the report, not
/// raised as errors.
pub fn crosscheck(label: &HierarchyLabel, grid: &[f64]) -> Result<CrosscheckReport> {
    if grid.is_empty() {
        return Err(Error::Invalid("empty cross-check grid".into()));
    }
    let ref_resid = reference_residual(label, grid)?;
    if ref_resid >= 1e-9 {
        return Err(Error::CertificationFailed(format!(
            "closed form fails its own equation residual test: {ref_resid:.3e}"
        )));
    }
    let chain = label_chain(label)?;
    chain.ensure_usable()?;
    let mut max_abs_deviation = 0.0f64;
    let mut argmax = grid[0];
    let mut samples = 0usize;
    match label.equation {
        PainleveEquation::Piv => {
            let sol = PivSolution::new(chain)?;
            for &x in grid {
                let closed = closed_form(label, x)?;
                let generated = match sol.eval(x) {
                    Ok((g, _, _)) => g,
                    Err(_) => continue,
                };
                samples += 1;
                let dev = (generated - closed).norm();
                if dev > max_abs_deviation {
                    max_abs_deviation = dev;
                    argmax = x;
                }
            }
        }
        PainleveEquation::Pv => {
            let sol = PvSolution::new(chain)?;
            for &z in grid {
                let closed = closed_form(label, z)?;
                let generated = match sol.eval_w(z) {
                    Ok((w, _, _)) => w,
                    Err(_) => continue,
                };
                samples += 1;
                let dev = (generated - closed).norm();
                if dev > max_abs_deviation {
                    max_abs_deviation = dev;
                    argmax = z;
                }
            }
        }
    }
    Ok(CrosscheckReport {
        max_abs_deviation,
        argmax,
        reference_residual: ref_resid,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn classifier_examples() {
        let cases = [
            (3, -2.5, HierarchyName::Rational),
            (1, -2.5, HierarchyName::ErrorFunction),
            (1, 0.3, HierarchyName::ConfluentHypergeometric),
            (2, -4.5, HierarchyName::Rational),
            (2, -0.5, HierarchyName::ErrorFunction),
            (1, -0.5, HierarchyName::ErrorFunction),
            (1, -1.5, HierarchyName::ErrorFunction),
            (1, -3.5, HierarchyName::ErrorFunction),
            (2, 0.25, HierarchyName::ConfluentHypergeometric),
        ];
        for (k, eps, want) in cases {
            let label = classify(PainleveEquation::Piv, k, re(eps), None);
            assert_eq!(label.name, want, "k={k}, eps1={eps}");
            assert_eq!(label.k, k);
            assert_eq!(label.epsilon1, re(eps));
        }
        // complex seeds always stay generic
        let label = classify(PainleveEquation::Piv, 2, C64::new(-2.5, 1.0), None);
        assert_eq!(label.name, HierarchyName::ConfluentHypergeometric);
    }

    #[test]
    fn classifier_quintic_truncation() {
        let cases = [
            (1.0, -0.25, HierarchyName::Laguerre),
            (1.0, 0.75, HierarchyName::Laguerre),
            (0.0, 0.25, HierarchyName::Laguerre),
            (1.0, 0.3, HierarchyName::ConfluentHypergeometric),
            (1.0, -0.5, HierarchyName::ConfluentHypergeometric),
        ];
        for (j, eps, want) in cases {
            let label = classify(PainleveEquation::Pv, 1, re(eps), Some(j));
            assert_eq!(label.name, want, "j={j}, eps1={eps}");
        }
        assert_eq!(
            classify(PainleveEquation::Pv, 1, re(0.25), None).name,
            HierarchyName::ConfluentHypergeometric
        );
    }

    #[test]
    fn rational_point_values() {
        let label = classify(PainleveEquation::Piv, 3, re(-2.5), None);
        let g = closed_form(&label, 1.0).unwrap();
        assert_eq!(g.re, -116.0 / 161.0);
        assert_eq!(g.im, 0.0);
        let label2 = classify(PainleveEquation::Piv, 2, re(-4.5), None);
        assert_eq!(closed_form(&label2, 0.0).unwrap(), re(0.0));
        // odd functions
        let a = closed_form(&label2, 1.7).unwrap();
        let b = closed_form(&label2, -1.7).unwrap();
        assert_abs_diff_eq!(a.re, -b.re, epsilon = 1e-14);
    }

    #[test]
    fn rational_forms_self_certify() {
        for (label, want_a, want_b) in [
            (classify(PainleveEquation::Piv, 2, re(-4.5), None), 7.0, -32.0),
            (classify(PainleveEquation::Piv, 3, re(-2.5), None), 7.0, -8.0),
        ] {
            let params = piv_params(PivFamily::I, label.epsilon1, label.k);
            assert_eq!(params.a, re(want_a));
            assert_eq!(params.b, re(want_b));
            let grid: Vec<f64> = (-50..=50).map(|i| i as f64 / 10.0).collect();
            let worst = reference_residual(&label, &grid).unwrap();
            assert!(worst < 1e-9, "residual {worst:.3e}");
        }
    }

    #[test]
    fn rational_crosschecks_match_generator() {
        let grid: Vec<f64> = (-100..=100).map(|i| i as f64 / 20.0).collect();
        for (k, eps) in [(2usize, -4.5), (3usize, -2.5)] {
            let label = classify(PainleveEquation::Piv, k, re(eps), None);
            let report = crosscheck(&label, &grid).unwrap();
            assert!(
                report.max_abs_deviation < 1e-10,
                "k={k}: deviation {:.3e} at x={}",
                report.max_abs_deviation,
                report.argmax
            );
            assert!(report.reference_residual < 1e-9);
            assert!(report.samples > 190);
        }
    }

    #[test]
    fn confluent_display_matches_generator() {
        let grid: Vec<f64> = (-30..=30).map(|i| i as f64 / 10.0).collect();
        for (eps, nu) in [(0.3, 0.7), (-1.0, 0.5)] {
            let mut label = classify(PainleveEquation::Piv, 1, re(eps), None);
            label.nu = Some(re(nu));
            assert_eq!(label.name, HierarchyName::ConfluentHypergeometric);
            let report = crosscheck(&label, &grid).unwrap();
            assert!(
                report.max_abs_deviation < 1e-9,
                "eps={eps}: deviation {:.3e} at x={}",
                report.max_abs_deviation,
                report.argmax
            );
        }
    }

    #[test]
    fn laguerre_forms_self_certify_and_crosscheck() {
        let zgrid: Vec<f64> = (1..=120).map(|i| 0.2 * i as f64).collect();
        for (j, n) in [(1.0, 0usize), (0.0, 0usize), (1.0, 1usize)] {
            let eps = (1.0 - 2.0 * j + 4.0 * n as f64) / 4.0;
            let label = classify(PainleveEquation::Pv, 1, re(eps), Some(j));
            assert_eq!(label.name, HierarchyName::Laguerre);
            assert_eq!(laguerre_index(j, re(eps)), Some(n));
            let report = crosscheck(&label, &zgrid).unwrap();
            assert!(
                report.reference_residual < 1e-11,
                "j={j}, n={n}: reference residual {:.3e}",
                report.reference_residual
            );
            assert!(
                report.max_abs_deviation < 1e-9,
                "j={j}, n={n}: deviation {:.3e} at z={}",
                report.max_abs_deviation,
                report.argmax
            );
        }
    }

    #[test]
    fn simple_form_arithmetic_and_misfit() {
        assert_eq!(laguerre_simple_form(4.0).unwrap(), re(0.5));
        // fit (a, b, c, d) by substituting w = 1 - z^{-1/2} into the
        // equation at four points: the solved d is 0, not -1/8
        let w = |z: f64| {
            let t = 1.0 / z.sqrt();
            (re(1.0 - t), re(0.5 * t * t * t), re(-0.75 * t * t * t * t * t))
        };
        let pts = [1.3, 2.9, 4.7, 7.1];
        let mut m = Vec::new();
        let mut rhs = Vec::new();
        for &z in &pts {
            let (wv, wp, wpp) = w(z);
            let wm1 = wv - 1.0;
            m.push(vec![
                wm1 * wm1 / (z * z) * wv,
                wm1 * wm1 / (z * z) / wv,
                wv / z,
                wv * (wv + 1.0) / wm1,
            ]);
            rhs.push(wpp - (0.5 / wv + 1.0 / wm1) * wp * wp + wp / z);
        }
        let base = det(m.clone());
        let solve = |col: usize| {
            let mut mm = m.clone();
            for (r, row) in mm.iter_mut().enumerate() {
                row[col] = rhs[r];
            }
            det(mm) / base
        };
        let (a, b, c, d) = (solve(0), solve(1), solve(2), solve(3));
        assert!(a.norm() < 1e-9, "a = {a}");
        assert!((b - re(-0.125)).norm() < 1e-9, "b = {b}");
        assert!(c.norm() < 1e-9, "c = {c}");
        assert!(d.norm() < 1e-9, "d = {d} (the chain construction needs -1/8)");
        // and with the fitted parameters the residual vanishes off the fit points
        let params = crate::painleve_v::PvParams { a, b, c, d };
        let (wv, wp, wpp) = w(11.3);
        assert!(pv_equation_residual(11.3, wv, wp, wpp, &params).norm() < 1e-10);
    }

    #[test]
    fn gated_labels_stay_gated() {
        let erf = classify(PainleveEquation::Piv, 1, re(-2.5), None);
        assert_eq!(erf.name, HierarchyName::ErrorFunction);
        match closed_form(&erf, 1.0) {
            Err(Error::GatedClosedForm(msg)) => assert!(msg.contains("definition pending")),
            other => panic!("expected gated error, got {other:?}"),
        }
        assert!(crosscheck(&erf, &[1.0, 2.0]).is_err());
        for name in [
            HierarchyName::Hermite,
            HierarchyName::Exponential,
            HierarchyName::ModifiedBessel,
            HierarchyName::Weber,
        ] {
            let label = HierarchyLabel {
                equation: PainleveEquation::Pv,
                name,
                k: 1,
                epsilon1: re(0.0),
                j: Some(1.0),
                nu: None,
            };
            assert!(matches!(
                closed_form(&label, 1.0),
                Err(Error::GatedClosedForm(_))
            ));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn classifier_is_total_and_rule_consistent(
            k in 1usize..=6,
            num in -24i32..8,
            den_pick in 0usize..3,
            im in -4i32..=4,
        ) {
            let den = [2.0, 4.0, 10.0][den_pick];
            let eps = C64::new(num as f64 / den, im as f64);
            let label = classify(PainleveEquation::Piv, k, eps, None);
            if label.name == HierarchyName::Rational {
                // rational only at real eps1 = -1/2 - m, even m >= 2, k >= 2
                prop_assert_eq!(eps.im, 0.0);
                let m = -(eps.re + 0.5);
                prop_assert_eq!(m, m.round());
                prop_assert!(m >= 2.0);
                prop_assert_eq!((m as i64) % 2, 0);
                prop_assert!(k >= 2);
            }
            if eps.im != 0.0 {
                prop_assert_eq!(label.name, HierarchyName::ConfluentHypergeometric);
            }
        }
    }
}
