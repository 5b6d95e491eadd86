//! Finite-difference spectral certification.
//!
//! The partner Hamiltonian H = -1/2 d^2/dx^2 + V_k is discretized on a
//! uniform Dirichlet grid (three-point stencil), its lowest eigenvalues are
//! computed with the implicit-shift QL iteration for symmetric tridiagonal
//! matrices, and the result is compared against the predicted spectrum: the
//! k new levels plus the mapped base ladder.

use crate::oscillators::SystemKind;
use crate::report::SpectrumReport;
use crate::susy::ChainSpec;
use crate::{Error, Result};
use rayon::prelude::*;

/// Symmetric tridiagonal discretization of a Schrodinger operator.
#[derive(Debug, Clone)]
pub struct DiscretizedHamiltonian {
    /// Interior grid points x_i = lo + (i+1) h.
    pub grid: Vec<f64>,
    /// Main diagonal 1/h^2 + V(x_i).
    pub diag: Vec<f64>,
    /// Off-diagonal -1/(2 h^2), length n-1.
    pub offdiag: Vec<f64>,
}

/// Dirichlet discretization of -1/2 d^2/dx^2 + V on (lo, hi) with n interior
/// points, h = (hi - lo)/(n + 1).
pub fn discretize<F>(potential: F, bounds: (f64, f64), n: usize) -> Result<DiscretizedHamiltonian>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let (lo, hi) = bounds;
    if !(hi > lo) {
        return Err(Error::Invalid(format!("empty interval [{lo}, {hi}]")));
    }
    if n < 64 {
        return Err(Error::Invalid(format!(
            "discretization needs at least 64 interior points, got {n}"
        )));
    }
    let h = (hi - lo) / (n + 1) as f64;
    let grid: Vec<f64> = (0..n).map(|i| lo + (i + 1) as f64 * h).collect();
    let kinetic = 1.0 / (h * h);
    let diag: Vec<f64> = grid
        .par_iter()
        .map(|&x| Ok(kinetic + potential(x)?))
        .collect::<Result<_>>()?;
    let offdiag = vec![-0.5 * kinetic; n - 1];
    Ok(DiscretizedHamiltonian {
        grid,
        diag,
        offdiag,
    })
}

/// All eigenvalues of a symmetric tridiagonal matrix, ascending, by the
/// implicit-shift QL iteration (no eigenvectors).
pub fn tridiagonal_eigenvalues(diag: &[f64], offdiag: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if offdiag.len() + 1 != n {
        return Err(Error::Invalid(format!(
            "off-diagonal length {} does not fit dimension {}",
            offdiag.len(),
            n
        )));
    }
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut sweeps = 0usize;
        'ql: loop {
            // locate the first negligible subdiagonal entry at or after l
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
            sweeps += 1;
            if sweeps > 60 {
                return Err(Error::EigenNoConvergence(l));
            }
            // implicit Wilkinson-like shift from the leading 2x2 block
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0f64;
            let mut c = 1.0f64;
            let mut p = 0.0f64;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // rotation underflow: recover and restart this sweep
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    continue 'ql;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                let t = (d[i] - g) * s + 2.0 * c * b;
                p = s * t;
                d[i + 1] = g + p;
                g = c * t - b;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}

/// The `count` lowest eigenvalues of a discretized Hamiltonian, ascending.
pub fn eigenvalues(hamiltonian: &DiscretizedHamiltonian, count: usize) -> Result<Vec<f64>> {
    let mut all = tridiagonal_eigenvalues(&hamiltonian.diag, &hamiltonian.offdiag)?;
    all.truncate(count);
    Ok(all)
}

/// Domain and resolution of a spectral check.
#[derive(Debug, Clone, Copy)]
pub struct SpectralConfig {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl SpectralConfig {
    /// Certification defaults: [-12, 12] for the full line, [0, 14] for the
    /// half line, 2000 interior points. The half-line window must start at
    /// exactly 0: the Dirichlet wall sits on the boundary itself (the matrix
    /// only evaluates interior points), and a wall displaced to x0 > 0
    /// shifts every level of a barrier-free partner by an h-independent
    /// ~x0 |psi'(0)|^2, which would swamp the O(h^2) stencil error.
    pub fn for_system(system: SystemKind) -> Self {
        match system {
            SystemKind::Harmonic => SpectralConfig {
                lo: -12.0,
                hi: 12.0,
                n: 2000,
            },
            SystemKind::Radial { .. } => SpectralConfig {
                lo: 0.0,
                hi: 14.0,
                n: 2000,
            },
        }
    }
}

/// Discretize the partner potential of a real chain and compare its lowest
/// k + 6 eigenvalues (and the eigenvalue count below the comparison window)
/// against the prediction.
pub fn spectrum_check(chain: &ChainSpec, cfg: &SpectralConfig) -> Result<SpectrumReport> {
    let count = chain.k + 6;
    let prediction = chain.predicted_spectrum(count)?;
    let predicted = prediction.lowest_levels(count);
    let hamiltonian = discretize(
        |x| {
            let v = chain.partner_potential(x)?;
            if v.im.abs() > 1e-9 * (1.0 + v.re.abs()) {
                return Err(Error::Invalid(format!(
                    "partner potential is not real at x = {x}"
                )));
            }
            Ok(v.re)
        },
        (cfg.lo, cfg.hi),
        cfg.n,
    )?;
    let all = tridiagonal_eigenvalues(&hamiltonian.diag, &hamiltonian.offdiag)?;
    let computed: Vec<f64> = all.iter().take(count).copied().collect();
    let max_abs_deviation = computed
        .iter()
        .zip(&predicted)
        .map(|(c, p)| (c - p).abs())
        .fold(0.0f64, f64::max);
    // window top edge: half a ladder step above the last compared level
    let e_max = predicted.last().copied().unwrap_or(0.0) + 0.5 * prediction.step;
    let computed_below = all.iter().filter(|&&ev| ev < e_max).count();
    let predicted_below = predicted.iter().filter(|&&ev| ev < e_max).count();
    Ok(SpectrumReport {
        computed,
        predicted,
        max_abs_deviation,
        count_matches: computed_below == predicted_below,
    })
}

/// Ratio of the spectral deviation at resolution n to the deviation at the
/// doubled resolution 2n + 1 (which exactly halves h). A second-order
/// stencil gives a ratio near 4.
pub fn convergence_ratio(chain: &ChainSpec, cfg: &SpectralConfig) -> Result<f64> {
    let coarse = spectrum_check(chain, cfg)?;
    let fine = spectrum_check(
        chain,
        &SpectralConfig {
            lo: cfg.lo,
            hi: cfg.hi,
            n: 2 * cfg.n + 1,
        },
    )?;
    if fine.max_abs_deviation == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(coarse.max_abs_deviation / fine.max_abs_deviation)
}
