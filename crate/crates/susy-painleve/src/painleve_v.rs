//! Painleve V solutions induced by radial-oscillator SUSY chains.
//!
//! The partner of a k-step radial chain carries four extremal states with
//! energies {eps1 + 1, -E0 + 1, eps_k, E0}. Pairing two of them gives
//! h = [ln W(psi_a, psi_b)]' and g = -x - h, and
//!
//!   w(z) = 1 + z^(1/2) / g(z^(1/2))
//!
//! solves the Painleve V equation
//!
//!   w'' = (1/(2w) + 1/(w-1)) (w')^2 - w'/z + (w-1)^2/z^2 (a w + b/w)
//!         + c w/z + d w(w+1)/(w-1)
//!
//! with d = -1/8 and (a, b, c) determined by how the four energies split
//! into the pair defining h and the complementary pair. Six splittings give
//! six parameter families; family 1 pairs the two Wronskian-type states and
//! admits a closed double-Wronskian form used as the primary evaluator.

use crate::ders::Ders;
use crate::grid::Grid;
use crate::oscillators::{base_states, jet_extend, SystemKind};
use crate::report::ResidualReport;
use crate::susy::{wronskian_jet, ChainSpec, ExtremalKind, ExtremalState};
use crate::{C64, Error, Result};
use rayon::prelude::*;

/// Painleve V parameter quadruple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvParams {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

const D: C64 = C64::new(-0.125, 0.0);

/// Exact parameter maps of the six families (d = -1/8 throughout).
///
/// The quadratic numerators are shared between families so that the exact
/// exchange symmetries a3 = -b1, b3 = -a1, a4 = -b2, b4 = -a2 hold to the
/// last bit.
pub fn pv_params(family: usize, j: f64, epsilon1: C64, k: usize) -> Result<PvParams> {
    if !(1..=6).contains(&family) {
        return Err(Error::Invalid(format!(
            "Painleve V family {family} outside 1..=6"
        )));
    }
    let kf = k as f64;
    let eps = epsilon1;
    // 4(E0 + eps1), 4(eps_k - E0), 4(eps1 + 1 - E0) and -4(eps_k + E0 - 1)
    let s1 = C64::new(2.0 * j + 3.0, 0.0) + 4.0 * eps;
    let s2 = C64::new(2.0 * j - 1.0 + 4.0 * kf, 0.0) - 4.0 * eps;
    let s3 = C64::new(2.0 * j + 3.0 - 4.0 * kf, 0.0) + 4.0 * eps;
    let s4 = C64::new(2.0 * j - 1.0, 0.0) - 4.0 * eps;
    let q_k = C64::new(kf * kf / 2.0, 0.0);
    let q_j = C64::new((2.0 * j + 1.0) * (2.0 * j + 1.0) / 8.0, 0.0);
    let (a, b, c) = match family {
        1 => (
            s1 * s1 / 32.0,
            -s2 * s2 / 32.0,
            C64::new((-2.0 * j + 2.0 * kf - 3.0) / 4.0, 0.0),
        ),
        2 => (
            s3 * s3 / 32.0,
            -s4 * s4 / 32.0,
            C64::new(-(2.0 * j + 2.0 * kf + 3.0) / 4.0, 0.0),
        ),
        3 => (
            s2 * s2 / 32.0,
            -s1 * s1 / 32.0,
            C64::new((2.0 * j - 2.0 * kf - 1.0) / 4.0, 0.0),
        ),
        4 => (
            s4 * s4 / 32.0,
            -s3 * s3 / 32.0,
            C64::new((2.0 * j + 2.0 * kf - 1.0) / 4.0, 0.0),
        ),
        5 => (q_k, -q_j, eps - kf / 2.0),
        _ => (q_j, -q_k, C64::new(kf / 2.0 - 1.0, 0.0) - eps),
    };
    Ok(PvParams { a, b, c, d: D })
}

/// The first-order parametrization a = (E0+eps1)^2/2, b = -(E0-eps1)^2/2,
/// c = (1-2E0)/2, d = -1/8; the k = 1 collapse of family 1.
pub fn first_order_pv_params(j: f64, epsilon1: C64) -> PvParams {
    let e0 = C64::new(j / 2.0 + 0.75, 0.0);
    let sum = e0 + epsilon1;
    let diff = e0 - epsilon1;
    PvParams {
        a: sum * sum / 2.0,
        b: -diff * diff / 2.0,
        c: (C64::new(1.0, 0.0) - 2.0 * e0) / 2.0,
        d: D,
    }
}

/// Extremal-state pair whose Wronskian generates each family's h.
fn family_pair(family: usize) -> (ExtremalKind, ExtremalKind) {
    match family {
        1 => (ExtremalKind::WronskianRatio, ExtremalKind::PhysicalBase),
        2 => (ExtremalKind::RaisedSeed, ExtremalKind::PhysicalBase),
        3 => (ExtremalKind::RaisedSeed, ExtremalKind::NonphysicalBase),
        4 => (ExtremalKind::NonphysicalBase, ExtremalKind::WronskianRatio),
        5 => (ExtremalKind::NonphysicalBase, ExtremalKind::PhysicalBase),
        _ => (ExtremalKind::RaisedSeed, ExtremalKind::WronskianRatio),
    }
}

/// A Painleve V solution with analytic g- and w-evaluators.
#[derive(Debug, Clone)]
pub struct PvSolution {
    pub chain: ChainSpec,
    pub family: usize,
    pub params: PvParams,
}

impl PvSolution {
    /// Family-1 solution of a radial chain.
    pub fn new(chain: ChainSpec) -> Result<Self> {
        Self::with_family(chain, 1)
    }

    pub fn with_family(chain: ChainSpec, family: usize) -> Result<Self> {
        chain.ensure_usable()?;
        Self::unchecked(chain, family)
    }

    /// Skips the nodeless validation (boundary-parameter algebra checks).
    pub fn unchecked(chain: ChainSpec, family: usize) -> Result<Self> {
        let j = match chain.system {
            SystemKind::Radial { j } => j,
            SystemKind::Harmonic => {
                return Err(Error::Invalid(
                    "Painleve V solutions come from radial chains".into(),
                ))
            }
        };
        let params = pv_params(family, j, chain.seed.epsilon, chain.k)?;
        Ok(PvSolution {
            chain,
            family,
            params,
        })
    }

    /// h = [ln W(psi_a, psi_b)]' for this family's extremal pair, computed
    /// from the two state evaluators.
    pub fn pair_route_h(&self, x: f64, order: usize) -> Result<Ders> {
        let (ka, kb) = family_pair(self.family);
        let sa = ExtremalState::new(self.chain, ka)?.eval(x, order + 2)?;
        let sb = ExtremalState::new(self.chain, kb)?.eval(x, order + 2)?;
        let w = sa.mul(&sb.shift(1)?).sub(&sa.shift(1)?.mul(&sb));
        w.log_derivative()
    }

    /// Family-1 closed form: h = 2(eps_k - E0) W_{k-1} W_{k,p} /
    /// W(W_{k-1}, W_{k,p}), with p = x^{j+1} e^{-x^2/4} adjoined as an
    /// extra Wronskian column.
    pub fn double_wronskian_h(&self, x: f64, order: usize) -> Result<Ders> {
        let chain = &self.chain;
        let j = match chain.system {
            SystemKind::Radial { j } => j,
            SystemKind::Harmonic => unreachable!("constructor enforces a radial chain"),
        };
        let jet_order = chain.k + order + 1;
        let mut jets = chain.seed_family(x, jet_order)?;
        let low = if chain.k == 1 {
            Ders::constant(C64::new(1.0, 0.0), order + 1)
        } else {
            wronskian_jet(&jets[..chain.k - 1], order + 1)?.w
        };
        let e0 = C64::new(chain.system.ground_energy(), 0.0);
        let p = jet_extend(chain.system, e0, base_states::ro_physical(j, x), x, jet_order)?;
        jets.push(p);
        let high = wronskian_jet(&jets, order + 1)?.w;
        let cross = low.mul(&high.shift(1)?).sub(&low.shift(1)?.mul(&high));
        let c = 2.0 * (chain.epsilon_k() - e0);
        low.mul(&high).scale(c).div(&cross)
    }

    /// Derivative sequence of g at `x` (family 1 through the closed
    /// double-Wronskian form, the others through their extremal pair).
    pub fn eval_g_ders(&self, x: f64, order: usize) -> Result<Ders> {
        if x <= 0.0 {
            return Err(Error::Domain(format!(
                "radial-chain Painleve V functions need x > 0, got {x}"
            )));
        }
        let h = if self.family == 1 {
            self.double_wronskian_h(x, order)?
        } else {
            self.pair_route_h(x, order)?
        };
        Ok(Ders::variable(x, order)
            .scale(C64::new(-1.0, 0.0))
            .sub(&h))
    }

    /// (g, g', g'') at `x`.
    pub fn eval_g(&self, x: f64) -> Result<(C64, C64, C64)> {
        let d = self.eval_g_ders(x, 2)?;
        Ok((d.get(0), d.get(1), d.get(2)))
    }

    /// (w, dw/dz, d2w/dz2) at `z`, through w = 1 + x/g(x) with x = sqrt(z).
    pub fn eval_w(&self, z: f64) -> Result<(C64, C64, C64)> {
        if z <= 0.0 {
            return Err(Error::Domain(format!("Painleve V needs z > 0, got {z}")));
        }
        let x = z.sqrt();
        let g = self.eval_g_ders(x, 2)?;
        let phi = Ders::variable(x, 2)
            .div(&g)?
            .add(&Ders::constant(C64::new(1.0, 0.0), 2));
        let w = phi.get(0);
        let wp = phi.get(1) / (2.0 * x);
        let wpp = phi.get(2) / (4.0 * x * x) - phi.get(1) / (4.0 * x * x * x);
        Ok((w, wp, wpp))
    }
}

/// Raw Painleve V residual at one point.
pub fn pv_equation_residual(z: f64, w: C64, wp: C64, wpp: C64, params: &PvParams) -> C64 {
    let one = C64::new(1.0, 0.0);
    let wm1 = w - one;
    wpp - (0.5 / w + 1.0 / wm1) * wp * wp + wp / z
        - (wm1 * wm1 / (z * z)) * (params.a * w + params.b / w)
        - params.c * w / z
        - params.d * w * (w + 1.0) / wm1
}

/// Residual sweep over a z-grid. Points where the equation degenerates
/// (|w| or |w-1| below 1e-10) or the evaluator hits a pole are excluded and
/// counted.
pub fn pv_residual(sol: &PvSolution, zgrid: &[f64]) -> ResidualReport {
    let rows: Vec<(f64, Option<(f64, f64)>)> = zgrid
        .par_iter()
        .map(|&z| {
            let entry = sol.eval_w(z).ok().and_then(|(w, wp, wpp)| {
                if w.norm() < 1e-10 || (w - C64::new(1.0, 0.0)).norm() < 1e-10 {
                    return None;
                }
                let resid = pv_equation_residual(z, w, wp, wpp, &sol.params).norm();
                Some((resid / (1.0 + w.norm().powi(3)), resid))
            });
            (z, entry)
        })
        .collect();
    let mut report = ResidualReport {
        max_normalized: 0.0,
        argmax: zgrid.first().copied().unwrap_or(0.0),
        max_absolute: 0.0,
        samples: 0,
        excluded: 0,
    };
    for (z, entry) in rows {
        match entry {
            Some((normalized, absolute)) => {
                report.samples += 1;
                report.max_absolute = report.max_absolute.max(absolute);
                if normalized > report.max_normalized {
                    report.max_normalized = normalized;
                    report.argmax = z;
                }
            }
            None => report.excluded += 1,
        }
    }
    report
}

/// Residual sweep over the default z in [0.01, 25] certification grid.
pub fn pv_residual_default(sol: &PvSolution) -> ResidualReport {
    pv_residual(sol, &Grid::pv_default().points())
}

/// The four extremal states, energies {eps1 + 1, -E0 + 1, eps_k, E0}.
pub fn pv_extremal_states(chain: ChainSpec) -> Result<[ExtremalState; 4]> {
    Ok([
        ExtremalState::new(chain, ExtremalKind::RaisedSeed)?,
        ExtremalState::new(chain, ExtremalKind::NonphysicalBase)?,
        ExtremalState::new(chain, ExtremalKind::WronskianRatio)?,
        ExtremalState::new(chain, ExtremalKind::PhysicalBase)?,
    ])
}
