//! Base systems and their Schrodinger seed solutions.
//!
//! Two exactly solvable Hamiltonians H = -1/2 d^2/dx^2 + V(x):
//!
//! * harmonic oscillator, V = x^2/2 on the whole line, levels n + 1/2;
//! * radial oscillator, V = x^2/8 + j(j+1)/(2 x^2) on x > 0, ground
//!   energy E0 = j/2 + 3/4 and spacing 1.
//!
//! The general seed solution at factorization energy epsilon is a two-branch
//! combination of confluent hypergeometric functions with one mixing
//! constant, given either as the real parameter nu of the standard form or
//! directly as the complex coefficient lambda + i kappa of the second branch.

use crate::specfun::{gamma, hyp1f1, hyp1f1_derivative};
use crate::{C64, Error, Result};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Base Hamiltonian selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemKind {
    Harmonic,
    /// Radial oscillator with angular-momentum parameter `j`.
    Radial { j: f64 },
}

impl SystemKind {
    /// Potential and its derivatives: `out[m] = V^(m)(x)`, `m <= order`.
    pub fn potential(&self, x: f64, order: usize) -> Result<Vec<f64>> {
        match *self {
            SystemKind::Harmonic => {
                let mut out = vec![0.0; order + 1];
                out[0] = 0.5 * x * x;
                if order >= 1 {
                    out[1] = x;
                }
                if order >= 2 {
                    out[2] = 1.0;
                }
                Ok(out)
            }
            SystemKind::Radial { j } => {
                if x <= 0.0 {
                    return Err(Error::Domain(format!(
                        "radial oscillator requires x > 0, got {x}"
                    )));
                }
                let jj = j * (j + 1.0);
                let mut out = vec![0.0; order + 1];
                out[0] = x * x / 8.0 + jj / (2.0 * x * x);
                if order >= 1 {
                    out[1] = x / 4.0 - jj / (x * x * x);
                }
                if order >= 2 {
                    out[2] = 0.25 + 3.0 * jj / (x * x * x * x);
                }
                // d^m/dx^m x^(-2) = (-1)^m (m+1)! x^(-2-m)
                let mut fact = 6.0; // (m+1)! at m = 2
                for (m, o) in out.iter_mut().enumerate().skip(3) {
                    fact *= (m + 1) as f64;
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    *o = 0.5 * jj * sign * fact * x.powi(-(m as i32) - 2);
                }
                Ok(out)
            }
        }
    }

    /// Ground-state energy of the base system.
    pub fn ground_energy(&self) -> f64 {
        match *self {
            SystemKind::Harmonic => 0.5,
            SystemKind::Radial { j } => j / 2.0 + 0.75,
        }
    }

    /// n-th physical level of the base system.
    pub fn level(&self, n: usize) -> f64 {
        self.ground_energy() + n as f64
    }
}

/// Mixing constant of the seed's second branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mixing {
    /// Standard-form parameter; complex values are admitted and imply a
    /// mandatory pole scan.
    Nu(C64),
    /// Direct complex coefficient lambda + i kappa.
    LambdaKappa { lambda: f64, kappa: f64 },
}

impl Mixing {
    pub fn is_complex(&self) -> bool {
        match *self {
            Mixing::Nu(nu) => nu.im != 0.0,
            Mixing::LambdaKappa { kappa, .. } => kappa != 0.0,
        }
    }

    /// Exactly-zero mixing selects the pure first branch.
    pub fn is_zero(&self) -> bool {
        match *self {
            Mixing::Nu(nu) => nu == C64::new(0.0, 0.0),
            Mixing::LambdaKappa { lambda, kappa } => lambda == 0.0 && kappa == 0.0,
        }
    }
}

/// Seed parameters: factorization energy plus branch mixing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedParams {
    pub epsilon: C64,
    pub mixing: Mixing,
}

impl SeedParams {
    pub fn real_nu(epsilon: f64, nu: f64) -> Self {
        SeedParams {
            epsilon: C64::new(epsilon, 0.0),
            mixing: Mixing::Nu(C64::new(nu, 0.0)),
        }
    }
}

/// Coefficient multiplying the second branch, resolved from the mixing
/// convention. Gamma poles in the denominator of the nu conversion kill the
/// coefficient (finite limit zero); poles in the numerator are errors.
pub fn mixing_coefficient(system: SystemKind, epsilon: C64, mixing: Mixing) -> Result<C64> {
    let lam = match mixing {
        Mixing::LambdaKappa { lambda, kappa } => return Ok(C64::new(lambda, kappa)),
        Mixing::Nu(nu) => nu,
    };
    if lam == C64::new(0.0, 0.0) {
        return Ok(C64::new(0.0, 0.0));
    }
    let (num_arg, den_arg, factor) = match system {
        SystemKind::Harmonic => (
            (C64::new(3.0, 0.0) - 2.0 * epsilon) / 4.0,
            (C64::new(1.0, 0.0) - 2.0 * epsilon) / 4.0,
            C64::new(2.0, 0.0),
        ),
        SystemKind::Radial { j } => (
            (C64::new(3.0 + 2.0 * j, 0.0) - 4.0 * epsilon) / 4.0,
            C64::new((3.0 + 2.0 * j) / 2.0, 0.0),
            C64::new(1.0, 0.0),
        ),
    };
    let num = gamma(num_arg)?;
    let den = match gamma(den_arg) {
        Ok(g) => g,
        // denominator pole: the ratio vanishes in the limit
        Err(Error::GammaPole(_)) => return Ok(C64::new(0.0, 0.0)),
        Err(e) => return Err(e),
    };
    Ok(factor * lam * num / den)
}

/// Seed solution and its first derivative at `x`.
///
/// Harmonic: u = e^(-x^2/2) [ 1F1((1-2e)/4; 1/2; x^2)
///                            + coeff x 1F1((3-2e)/4; 3/2; x^2) ].
/// Radial:   u = x^(-j) e^(-x^2/4) [ 1F1((1-2j-4e)/4; (1-2j)/2; x^2/2)
///                  + coeff (x^2/2)^(j+1/2) 1F1((3+2j-4e)/4; (3+2j)/2; x^2/2) ].
pub fn seed_eval(system: SystemKind, params: &SeedParams, x: f64) -> Result<(C64, C64)> {
    let eps = params.epsilon;
    let coeff = mixing_coefficient(system, eps, params.mixing)?;
    match system {
        SystemKind::Harmonic => {
            let y = C64::new(x * x, 0.0);
            let a1 = (C64::new(1.0, 0.0) - 2.0 * eps) / 4.0;
            let a2 = (C64::new(3.0, 0.0) - 2.0 * eps) / 4.0;
            let b1 = C64::new(0.5, 0.0);
            let b2 = C64::new(1.5, 0.0);
            let f1 = hyp1f1(a1, b1, y)?;
            let f1p = hyp1f1_derivative(a1, b1, y, 1)?;
            let f2 = hyp1f1(a2, b2, y)?;
            let f2p = hyp1f1_derivative(a2, b2, y, 1)?;
            let p = f1 + coeff * x * f2;
            let pp = 2.0 * x * f1p + coeff * (f2 + 2.0 * x * x * f2p);
            let g = (-0.5 * x * x).exp();
            Ok((g * p, g * (pp - x * p)))
        }
        SystemKind::Radial { j } => {
            if x <= 0.0 {
                return Err(Error::Domain(format!(
                    "radial oscillator seed requires x > 0, got {x}"
                )));
            }
            let y = C64::new(0.5 * x * x, 0.0);
            let a1 = (C64::new(1.0 - 2.0 * j, 0.0) - 4.0 * eps) / 4.0;
            let b1 = C64::new((1.0 - 2.0 * j) / 2.0, 0.0);
            let a2 = (C64::new(3.0 + 2.0 * j, 0.0) - 4.0 * eps) / 4.0;
            let b2 = C64::new((3.0 + 2.0 * j) / 2.0, 0.0);
            let g1 = hyp1f1(a1, b1, y)?;
            let g1p = hyp1f1_derivative(a1, b1, y, 1)?;
            let (g2, g2p) = if coeff == C64::new(0.0, 0.0) {
                (C64::new(0.0, 0.0), C64::new(0.0, 0.0))
            } else {
                (hyp1f1(a2, b2, y)?, hyp1f1_derivative(a2, b2, y, 1)?)
            };
            let scale = 2.0f64.powf(-(j + 0.5));
            let lead1 = x.powf(-j);
            let lead2 = scale * x.powf(j + 1.0);
            let s = lead1 * g1 + coeff * lead2 * g2;
            let sp = -j * lead1 / x * g1 + lead1 * x * g1p
                + coeff * ((j + 1.0) * lead2 / x * g2 + lead2 * x * g2p);
            let g = (-0.25 * x * x).exp();
            Ok((g * s, g * (sp - 0.5 * x * s)))
        }
    }
}

/// Derivative jet of one Schrodinger solution at a point.
#[derive(Debug, Clone)]
pub struct Jet {
    pub x: f64,
    pub epsilon: C64,
    /// `derivs[m] = u^(m)(x)`.
    pub derivs: Vec<C64>,
}

impl Jet {
    pub fn order(&self) -> usize {
        self.derivs.len() - 1
    }

    pub fn require_order(&self, need: usize) -> Result<()> {
        if self.order() < need {
            return Err(Error::JetOrder {
                have: self.order(),
                need,
            });
        }
        Ok(())
    }
}

/// Extend a (value, derivative) pair to a full jet with the Schrodinger
/// recurrence u^(m+2) = 2 sum_i C(m,i) V^(i) u^(m-i) - 2 eps u^(m).
///
/// Every derivative is analytic: the rule is Leibniz applied to
/// u'' = 2 (V - eps) u, so no numerical differentiation is involved.
pub fn jet_extend(
    system: SystemKind,
    epsilon: C64,
    pair: (C64, C64),
    x: f64,
    order: usize,
) -> Result<Jet> {
    let v = system.potential(x, order.saturating_sub(2))?;
    let mut derivs = vec![C64::new(0.0, 0.0); order + 1];
    derivs[0] = pair.0;
    if order >= 1 {
        derivs[1] = pair.1;
    }
    for m in 0..order.saturating_sub(1) {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..=m {
            acc += crate::ders::binomial(m, i) * v[i] * derivs[m - i];
        }
        derivs[m + 2] = 2.0 * (acc - epsilon * derivs[m]);
    }
    Ok(Jet { x, epsilon, derivs })
}

/// Annihilation-operator action: (value, derivative) of the lowered solution
/// at epsilon - 1.
///
/// Harmonic: a- u = (u' + x u) / sqrt(2), needs the jet to order 2.
/// Radial:   b- u = (u'' + x u' + (x^2/4 - j(j+1)/x^2 + 1/2) u) / 2,
/// needs order 3.
pub fn annihilate(system: SystemKind, jet: &Jet) -> Result<(C64, C64)> {
    let x = jet.x;
    let d = &jet.derivs;
    match system {
        SystemKind::Harmonic => {
            jet.require_order(2)?;
            Ok((
                (d[1] + x * d[0]) / SQRT_2,
                (d[2] + d[0] + x * d[1]) / SQRT_2,
            ))
        }
        SystemKind::Radial { j } => {
            jet.require_order(3)?;
            let jj = j * (j + 1.0);
            let q = 0.25 * x * x - jj / (x * x) + 0.5;
            let qp = 0.5 * x + 2.0 * jj / (x * x * x);
            Ok((
                (d[2] + x * d[1] + q * d[0]) / 2.0,
                (d[3] + d[1] + x * d[2] + qp * d[0] + q * d[1]) / 2.0,
            ))
        }
    }
}

/// Creation-operator action: (value, derivative) of the raised solution at
/// epsilon + 1.
pub fn create(system: SystemKind, jet: &Jet) -> Result<(C64, C64)> {
    let x = jet.x;
    let d = &jet.derivs;
    match system {
        SystemKind::Harmonic => {
            jet.require_order(2)?;
            Ok((
                (-d[1] + x * d[0]) / SQRT_2,
                (-d[2] + d[0] + x * d[1]) / SQRT_2,
            ))
        }
        SystemKind::Radial { j } => {
            jet.require_order(3)?;
            let jj = j * (j + 1.0);
            let q = 0.25 * x * x - jj / (x * x) - 0.5;
            let qp = 0.5 * x + 2.0 * jj / (x * x * x);
            Ok((
                (d[2] - x * d[1] + q * d[0]) / 2.0,
                (d[3] - d[1] - x * d[2] + qp * d[0] + q * d[1]) / 2.0,
            ))
        }
    }
}

/// Distinguished base solutions used as chain end points.
pub mod base_states {
    use super::*;

    /// Harmonic ground state e^(-x^2/2) (energy 1/2), unnormalized.
    pub fn ho_gaussian(x: f64) -> (C64, C64) {
        let g = (-0.5 * x * x).exp();
        (C64::new(g, 0.0), C64::new(-x * g, 0.0))
    }

    /// Radial physical extremal x^(j+1) e^(-x^2/4) (energy E0).
    pub fn ro_physical(j: f64, x: f64) -> (C64, C64) {
        let v = x.powf(j + 1.0) * (-0.25 * x * x).exp();
        (C64::new(v, 0.0), C64::new(((j + 1.0) / x - 0.5 * x) * v, 0.0))
    }

    /// Radial non-physical extremal x^(-j) e^(-x^2/4) (energy -E0 + 1).
    pub fn ro_nonphysical(j: f64, x: f64) -> (C64, C64) {
        let v = x.powf(-j) * (-0.25 * x * x).exp();
        (C64::new(v, 0.0), C64::new((-j / x - 0.5 * x) * v, 0.0))
    }
}

/// Verdict of the nodeless-seed validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// Parameters admissible. `pole_scan_mandatory` is set for complex
    /// mixing or complex factorization energy, where nodelessness cannot be
    /// decided from the parameters alone.
    Accept { pole_scan_mandatory: bool },
    Reject { reason: String },
    /// The closed-form bound degenerates (gamma pole); a pole scan must
    /// decide.
    Indeterminate { reason: String },
}

/// Decide whether the seed parameters guarantee a nodeless first seed.
///
/// Harmonic: real epsilon < 1/2 (strict) and |nu| < 1.
/// Radial: real epsilon < E0 (strict) and
/// nu >= -Gamma((1-2j)/2) / Gamma((1-2j-4 eps)/4); gamma poles in the bound
/// yield an indeterminate verdict. Complex mixing or complex epsilon is
/// accepted on the parameter side with a mandatory pole scan. The chain
/// order `k` is recorded for context only: reduced chains inherit
/// nodelessness from the first seed.
pub fn validate_nodeless(system: SystemKind, params: &SeedParams, _k: usize) -> Verdict {
    let eps = params.epsilon;
    if params.mixing.is_complex() || eps.im != 0.0 {
        return Verdict::Accept {
            pole_scan_mandatory: true,
        };
    }
    let e = eps.re;
    match system {
        SystemKind::Harmonic => {
            if e >= 0.5 {
                return Verdict::Reject {
                    reason: format!("epsilon = {e} is not below the ground energy 1/2"),
                };
            }
            // epsilon < 1/2 keeps both conversion gamma arguments off poles
            let nu = match params.mixing {
                Mixing::Nu(nu) => nu.re,
                Mixing::LambdaKappa { lambda, .. } => {
                    let num = gamma(C64::new((1.0 - 2.0 * e) / 4.0, 0.0));
                    let den = gamma(C64::new((3.0 - 2.0 * e) / 4.0, 0.0));
                    match (num, den) {
                        (Ok(n), Ok(d)) => (lambda * n / (2.0 * d)).re,
                        _ => {
                            return Verdict::Indeterminate {
                                reason: "nu conversion hit a gamma pole".into(),
                            }
                        }
                    }
                }
            };
            if nu.abs() >= 1.0 {
                Verdict::Reject {
                    reason: format!("|nu| = {} is not below 1", nu.abs()),
                }
            } else {
                Verdict::Accept {
                    pole_scan_mandatory: false,
                }
            }
        }
        SystemKind::Radial { j } => {
            let e0 = system.ground_energy();
            if e >= e0 {
                return Verdict::Reject {
                    reason: format!("epsilon = {e} is not below the ground energy {e0}"),
                };
            }
            let nu = match params.mixing {
                Mixing::Nu(nu) => nu.re,
                Mixing::LambdaKappa { lambda, .. } => {
                    let num = gamma(C64::new((3.0 + 2.0 * j) / 2.0, 0.0));
                    let den = gamma(C64::new((3.0 + 2.0 * j - 4.0 * e) / 4.0, 0.0));
                    match (num, den) {
                        (Ok(n), Ok(d)) => (lambda * n / d).re,
                        _ => {
                            return Verdict::Indeterminate {
                                reason: "nu conversion hit a gamma pole".into(),
                            }
                        }
                    }
                }
            };
            let num = gamma(C64::new((1.0 - 2.0 * j) / 2.0, 0.0));
            let den = gamma(C64::new((1.0 - 2.0 * j - 4.0 * e) / 4.0, 0.0));
            match (num, den) {
                (Ok(n), Ok(d)) => {
                    let bound = (-n / d).re;
                    if nu >= bound {
                        Verdict::Accept {
                            pole_scan_mandatory: false,
                        }
                    } else {
                        Verdict::Reject {
                            reason: format!("nu = {nu} is below the bound {bound}"),
                        }
                    }
                }
                _ => Verdict::Indeterminate {
                    reason: format!(
                        "nodeless bound -Gamma((1-2j)/2)/Gamma((1-2j-4eps)/4) \
                         degenerates at j = {j}, eps = {e}"
                    ),
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn ho_params(eps: f64, nu: f64) -> SeedParams {
        SeedParams::real_nu(eps, nu)
    }

    #[test]
    fn ho_seed_matches_direct_series_oracle() {
        // independent raw-loop summation of the two branches at x = 1,
        // eps = 0, nu = 0.9; frozen mpmath value below as a second witness
        let x = 1.0f64;
        let y = x * x;
        let (a1, b1) = (0.25f64, 0.5f64);
        let (a2, b2) = (0.75f64, 1.5f64);
        let series = |a: f64, b: f64| {
            let mut term = 1.0f64;
            let mut sum = 1.0f64;
            for n in 0..200 {
                let nf = n as f64;
                term *= (a + nf) / (b + nf) * y / (nf + 1.0);
                sum += term;
            }
            sum
        };
        let lam = 2.0 * 0.9 * gamma(c(a2, 0.0)).unwrap().re / gamma(c(a1, 0.0)).unwrap().re;
        let oracle = (-0.5f64).exp() * (series(a1, b1) + lam * x * series(a2, b2));
        let (u, _) = seed_eval(SystemKind::Harmonic, &ho_params(0.0, 0.9), x).unwrap();
        assert_relative_eq!(u.re, oracle, max_relative = 1e-12);
        assert_relative_eq!(u.re, 1.72405739060705554, max_relative = 1e-12);
        assert_relative_eq!(u.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn ho_seed_at_half_is_pure_gaussian() {
        // eps = 1/2: first branch truncates to 1 and the nu conversion's
        // denominator pole kills the second branch for any nu
        for nu in [0.0, 0.7, -3.0] {
            let (u, up) = seed_eval(SystemKind::Harmonic, &ho_params(0.5, nu), 1.3).unwrap();
            let g = (-0.5f64 * 1.3 * 1.3).exp();
            assert_relative_eq!(u.re, g, max_relative = 1e-14);
            assert_relative_eq!(up.re, -1.3 * g, max_relative = 1e-14);
        }
    }

    #[test]
    fn seed_derivative_matches_finite_difference() {
        let p = ho_params(-1.0, 0.5);
        let x = 0.8;
        let h = 1e-6;
        let (_, up) = seed_eval(SystemKind::Harmonic, &p, x).unwrap();
        let (um, _) = seed_eval(SystemKind::Harmonic, &p, x - h).unwrap();
        let (uq, _) = seed_eval(SystemKind::Harmonic, &p, x + h).unwrap();
        let fd = (uq - um) / (2.0 * h);
        assert_relative_eq!(up.re, fd.re, max_relative = 1e-8);

        let sys = SystemKind::Radial { j: 1.0 };
        let p = SeedParams::real_nu(1.0, 0.913);
        let x = 0.9;
        let (_, up) = seed_eval(sys, &p, x).unwrap();
        let (um, _) = seed_eval(sys, &p, x - h).unwrap();
        let (uq, _) = seed_eval(sys, &p, x + h).unwrap();
        let fd = (uq - um) / (2.0 * h);
        assert_relative_eq!(up.re, fd.re, max_relative = 1e-8);
    }

    #[test]
    fn jet_satisfies_schrodinger_recurrence_against_potential() {
        // u''(x) from the jet must equal 2 (V - eps) u with V evaluated
        // independently
        let sys = SystemKind::Radial { j: 2.0 };
        let p = SeedParams::real_nu(0.5, 1.0);
        let x = 1.7;
        let pair = seed_eval(sys, &p, x).unwrap();
        let jet = jet_extend(sys, p.epsilon, pair, x, 6).unwrap();
        let v = sys.potential(x, 0).unwrap()[0];
        let want = 2.0 * (v - 0.5) * jet.derivs[0];
        assert_relative_eq!(jet.derivs[2].re, want.re, max_relative = 1e-13);
    }

    #[test]
    fn annihilate_kills_the_gaussian() {
        // ground-state seed: eps = 1/2 -> a- u = 0 identically
        let p = ho_params(0.5, 0.3);
        let x = 0.9;
        let pair = seed_eval(SystemKind::Harmonic, &p, x).unwrap();
        let jet = jet_extend(SystemKind::Harmonic, p.epsilon, pair, x, 4).unwrap();
        let (v, vp) = annihilate(SystemKind::Harmonic, &jet).unwrap();
        assert!(v.norm() < 1e-15 && vp.norm() < 1e-15, "got ({v}, {vp})");
    }

    #[test]
    fn radial_lowering_kills_the_nonphysical_extremal() {
        // j = 0, eps = 1/4 seed is x^0 e^(-x^2/4); b- annihilates it
        let sys = SystemKind::Radial { j: 0.0 };
        let p = SeedParams::real_nu(0.25, 0.0);
        let x = 1.1;
        let pair = seed_eval(sys, &p, x).unwrap();
        let jet = jet_extend(sys, p.epsilon, pair, x, 5).unwrap();
        let (v, vp) = annihilate(sys, &jet).unwrap();
        assert!(v.norm() < 1e-14 && vp.norm() < 1e-14, "got ({v}, {vp})");
    }

    #[test]
    fn create_then_annihilate_restores_scaled_ladder() {
        // a- a+ u = (H + 1/2 - eps ... ) u: for any Schrodinger solution u at
        // eps, a- a+ u = (eps + 1/2 + ... ) check via closed identity
        // a- a+ = H + 1/2 acting on solutions at eps gives (eps + 1/2) u
        let p = ho_params(-0.75, 0.4);
        let x = 0.6;
        let pair = seed_eval(SystemKind::Harmonic, &p, x).unwrap();
        let jet = jet_extend(SystemKind::Harmonic, p.epsilon, pair, x, 6).unwrap();
        let up = create(SystemKind::Harmonic, &jet).unwrap();
        let upjet = jet_extend(SystemKind::Harmonic, p.epsilon + 1.0, up, x, 6).unwrap();
        let (w, _) = annihilate(SystemKind::Harmonic, &upjet).unwrap();
        let want = (p.epsilon + 0.5) * jet.derivs[0];
        assert_relative_eq!(w.re, want.re, max_relative = 1e-12);
    }

    #[test]
    fn validator_examples() {
        let ho = SystemKind::Harmonic;
        assert_eq!(
            validate_nodeless(ho, &ho_params(0.25, 0.99), 1),
            Verdict::Accept {
                pole_scan_mandatory: false
            }
        );
        assert!(matches!(
            validate_nodeless(ho, &ho_params(0.25, 1.0), 1),
            Verdict::Reject { .. }
        ));
        assert!(matches!(
            validate_nodeless(ho, &ho_params(0.5, 0.3), 1),
            Verdict::Reject { .. }
        ));
        // complex mixing: accepted with mandatory scan
        let complex = SeedParams {
            epsilon: c(7.0, 0.0),
            mixing: Mixing::LambdaKappa {
                lambda: 1.0,
                kappa: 1.0,
            },
        };
        assert_eq!(
            validate_nodeless(ho, &complex, 2),
            Verdict::Accept {
                pole_scan_mandatory: true
            }
        );
    }

    #[test]
    fn radial_validator_bound_and_poles() {
        let sys = SystemKind::Radial { j: 1.0 };
        // bound at j=1, eps=1 is -Gamma(-1/2)/Gamma(-5/4) ~ 0.90398
        for nu in [0.905, 0.913, 1.0, 10.0] {
            assert_eq!(
                validate_nodeless(sys, &SeedParams::real_nu(1.0, nu), 1),
                Verdict::Accept {
                    pole_scan_mandatory: false
                },
                "nu = {nu}"
            );
        }
        assert!(matches!(
            validate_nodeless(sys, &SeedParams::real_nu(1.0, 0.9), 1),
            Verdict::Reject { .. }
        ));
        // gamma pole in the bound: j = 0, eps = 1/4
        let sys0 = SystemKind::Radial { j: 0.0 };
        assert!(matches!(
            validate_nodeless(sys0, &SeedParams::real_nu(0.25, 0.0), 2),
            Verdict::Indeterminate { .. }
        ));
    }

    proptest! {
        #[test]
        fn ho_seed_parity(eps in -4.0f64..0.45, nu in -0.95f64..0.95, x in 0.05f64..3.0) {
            // u(-x; nu) = u(x; -nu)
            let (ul, _) = seed_eval(SystemKind::Harmonic, &ho_params(eps, nu), -x).unwrap();
            let (ur, _) = seed_eval(SystemKind::Harmonic, &ho_params(eps, -nu), x).unwrap();
            prop_assert!((ul - ur).norm() <= 1e-11 * ur.norm().max(1.0));
        }

        #[test]
        fn annihilated_pair_solves_lowered_equation(
            eps in -3.0f64..0.4, nu in -0.9f64..0.9, x in 0.1f64..2.5
        ) {
            // v = a- u must satisfy v'' = 2 (V - (eps-1)) v; v'' comes from the
            // operator applied to shifted orders, independent of jet_extend
            let sys = SystemKind::Harmonic;
            let p = ho_params(eps, nu);
            let pair = seed_eval(sys, &p, x).unwrap();
            let jet = jet_extend(sys, p.epsilon, pair, x, 4).unwrap();
            let d = &jet.derivs;
            let (v, _) = annihilate(sys, &jet).unwrap();
            let vpp = (d[3] + 2.0 * d[1] + x * d[2]) / SQRT_2;
            let vv = sys.potential(x, 0).unwrap()[0];
            let resid = vpp - 2.0 * (vv - (eps - 1.0)) * v;
            let scale = vpp.norm() + v.norm() + 1.0;
            prop_assert!(resid.norm() <= 1e-11 * scale);
        }
    }
}
