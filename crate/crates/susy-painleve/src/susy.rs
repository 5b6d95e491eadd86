//! Chains of first-order SUSY transformations.
//!
//! A k-step reduced chain takes the seed u1 at factorization energy eps1 and
//! lowers it with the base system's annihilation operator, u_{i+1} ~ a- u_i,
//! so eps_i = eps1 - (i-1). The partner potential is
//! V_k = V0 - (ln W(u1..uk))'', with the Wronskian and all of its derivatives
//! evaluated analytically from the seed jets. An independent route through
//! the recursive finite-difference superpotential formula is kept alongside
//! for two-path certification.

use crate::ders::Ders;
use crate::linalg::det;
use crate::oscillators::{
    annihilate, base_states, create, jet_extend, mixing_coefficient, seed_eval, validate_nodeless,
    Jet, Mixing, SeedParams, SystemKind, Verdict,
};
use crate::report::PoleScanReport;
use crate::{C64, Error, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Largest supported transformation order. Wronskian matrices then stay at
/// most 7x7 (k seeds plus one extra column), where direct LU is reliable.
pub const MAX_CHAIN_ORDER: usize = 6;

/// Relative threshold below which a Wronskian value counts as a node.
pub const SINGULARITY_RATIO: f64 = 1e-12;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// A reduced SUSY chain: base system, order k and the first seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpec {
    pub system: SystemKind,
    pub k: usize,
    pub seed: SeedParams,
}

impl ChainSpec {
    pub fn new(system: SystemKind, k: usize, seed: SeedParams) -> Result<Self> {
        if k == 0 || k > MAX_CHAIN_ORDER {
            return Err(Error::Invalid(format!(
                "chain order k = {k} outside the supported range 1..={MAX_CHAIN_ORDER}"
            )));
        }
        Ok(ChainSpec { system, k, seed })
    }

    /// Factorization energies eps_i = eps1 - (i-1), i = 1..k.
    pub fn epsilons(&self) -> Vec<C64> {
        (0..self.k)
            .map(|i| self.seed.epsilon - i as f64)
            .collect()
    }

    pub fn epsilon_k(&self) -> C64 {
        self.seed.epsilon - (self.k - 1) as f64
    }

    /// Nodeless-seed verdict for this chain's parameters.
    pub fn validate(&self) -> Verdict {
        validate_nodeless(self.system, &self.seed, self.k)
    }

    /// Errors when the parameter validation rejects outright; accepted and
    /// indeterminate chains pass (the latter rely on the pole scan).
    pub fn ensure_usable(&self) -> Result<()> {
        match self.validate() {
            Verdict::Reject { reason } => Err(Error::Rejected(reason)),
            _ => Ok(()),
        }
    }

    /// Default derivative budget: enough for second derivatives of the
    /// Painleve functions without any finite differencing.
    pub fn default_jet_order(&self) -> usize {
        self.k + 3
    }

    /// The k seed jets u_1..u_k at `x`, each carrying `order` derivatives.
    ///
    /// u_{i+1} is the annihilation-operator image of u_i, re-extended from
    /// its (value, derivative) pair through the Schrodinger recurrence at
    /// eps_{i+1}. A rung that annihilates to zero is an error, except for
    /// zero-mixing radial chains, where the ladder member is replaced by the
    /// direct first-branch seed at the same energy (a scale-equivalent
    /// representative; Wronskian log-derivatives are scale-free).
    pub fn seed_family(&self, x: f64, order: usize) -> Result<Vec<Jet>> {
        let work_order = order.max(3);
        let eps = self.epsilons();
        let coeff = mixing_coefficient(self.system, self.seed.epsilon, self.seed.mixing)?;
        let direct_first_branch =
            matches!(self.system, SystemKind::Radial { .. }) && coeff == C64::new(0.0, 0.0);

        let mut jets = Vec::with_capacity(self.k);
        let pair = seed_eval(self.system, &self.seed, x)?;
        jets.push(jet_extend(self.system, eps[0], pair, x, work_order)?);
        for i in 1..self.k {
            let pair = if direct_first_branch {
                let params = SeedParams {
                    epsilon: eps[i],
                    mixing: Mixing::Nu(C64::new(0.0, 0.0)),
                };
                seed_eval(self.system, &params, x)?
            } else {
                let prev = &jets[i - 1];
                let (v, vp) = annihilate(self.system, prev)?;
                let scale: f64 = prev.derivs.iter().take(3).map(|d| d.norm()).sum();
                if v.norm() + vp.norm() <= 1e-12 * scale {
                    return Err(Error::ZeroSeed { rung: i + 1 });
                }
                (v, vp)
            };
            jets.push(jet_extend(self.system, eps[i], pair, x, work_order)?);
        }
        if work_order > order {
            for jet in &mut jets {
                jet.derivs.truncate(order + 1);
            }
        }
        Ok(jets)
    }

    /// Wronskians W_0..W_k at `x`, each with `order` derivatives (W_0 = 1).
    pub fn wronskian_tower(&self, x: f64, order: usize) -> Result<Vec<WronskianJet>> {
        let jets = self.seed_family(x, self.k - 1 + order)?;
        let mut tower = Vec::with_capacity(self.k + 1);
        tower.push(WronskianJet {
            x,
            w: Ders::constant(C64::new(1.0, 0.0), order),
            scale: 1.0,
        });
        for j in 1..=self.k {
            tower.push(wronskian_jet(&jets[..j], order)?);
        }
        Ok(tower)
    }

    /// Partner potential V_k(x) = V0(x) - (ln W)'' via the Wronskian route.
    pub fn partner_potential(&self, x: f64) -> Result<C64> {
        let jets = self.seed_family(x, self.k + 1)?;
        let wj = wronskian_jet(&jets, 2)?;
        wj.ensure_regular()?;
        let w = wj.w.value();
        let lnd = wj.w.get(1) / w;
        let ln2 = wj.w.get(2) / w - lnd * lnd;
        let v0 = self.system.potential(x, 0)?[0];
        Ok(C64::new(v0, 0.0) - ln2)
    }

    /// The superpotential chain alpha_1(eps_1)..alpha_k(eps_k) at `x`,
    /// built by the recursive finite-difference formula
    /// alpha_{j+1}(eps_i) = -alpha_j(eps_j) - 2(eps_j - eps_i) /
    /// (alpha_j(eps_j) - alpha_j(eps_i)), seeded from alpha_1 = u_i'/u_i.
    pub fn riccati_chain(&self, x: f64) -> Result<AlphaChain> {
        let jets = self.seed_family(x, 1)?;
        let eps = self.epsilons();
        // level[i] = alpha_j(x, eps_{i+1}), valid for i >= j-1
        let mut level: Vec<C64> = jets
            .iter()
            .map(|jet| {
                if jet.derivs[0].norm() == 0.0 {
                    Err(Error::ZeroDivision)
                } else {
                    Ok(jet.derivs[1] / jet.derivs[0])
                }
            })
            .collect::<Result<_>>()?;
        let mut alphas = vec![level[0]];
        for j in 1..self.k {
            let head = level[j - 1];
            let mut next = level.clone();
            for i in j..self.k {
                let denom = head - level[i];
                let num = 2.0 * (eps[j - 1] - eps[i]);
                if denom.norm() <= 1e-14 * (head.norm() + level[i].norm()).max(1.0) {
                    return Err(Error::DegenerateDenominator { x, i: i + 1, j });
                }
                next[i] = -head - num / denom;
            }
            level = next;
            alphas.push(level[j]);
        }
        Ok(AlphaChain { x, alphas })
    }

    /// Partner potential via the Riccati route: V_k = V0 - sum_j alpha_j',
    /// with each alpha_j'(eps_j) = 2(V_{j-1} - eps_j) - alpha_j(eps_j)^2
    /// taken from the Riccati equation itself (no differentiation).
    pub fn partner_potential_via_riccati(&self, x: f64) -> Result<C64> {
        let chain = self.riccati_chain(x)?;
        let eps = self.epsilons();
        let mut v = C64::new(self.system.potential(x, 0)?[0], 0.0);
        for (j, alpha) in chain.alphas.iter().enumerate() {
            let alpha_prime = 2.0 * (v - eps[j]) - alpha * alpha;
            v -= alpha_prime;
        }
        Ok(v)
    }

    /// Apply the k-th order creation chain B_k^+ = A_k^+ .. A_1^+ to a base
    /// Schrodinger solution given by its (value, derivative) pair and
    /// energy. Each A_j^+ = (-d/dx + alpha_j)/sqrt(2) acts on derivative
    /// sequences, with alpha_j = (ln W_j)' - (ln W_{j-1})'. The result
    /// carries `order` derivatives of the transformed solution.
    pub fn apply_creation_chain(
        &self,
        x: f64,
        pair: (C64, C64),
        energy: C64,
        order: usize,
    ) -> Result<Ders> {
        let need = order + self.k;
        let tower = self.wronskian_tower(x, need)?;
        let mut lnd = Vec::with_capacity(self.k + 1);
        for wj in &tower {
            wj.ensure_regular()?;
            lnd.push(wj.w.log_derivative()?);
        }
        let base = jet_extend(self.system, energy, pair, x, need)?;
        let mut psi = Ders(base.derivs);
        for j in 1..=self.k {
            let alpha = lnd[j].sub(&lnd[j - 1]);
            let lowered = psi.shift(1)?;
            psi = alpha
                .mul(&psi)
                .sub(&lowered)
                .scale(C64::new(1.0 / SQRT_2, 0.0));
        }
        Ok(psi)
    }

    /// The n-th physical eigenfunction pair of the base system at `x`,
    /// generated by n creation-operator actions on the ground state.
    pub fn mapped_base_state(&self, n: usize, x: f64) -> Result<(C64, C64)> {
        let mut pair = match self.system {
            SystemKind::Harmonic => base_states::ho_gaussian(x),
            SystemKind::Radial { j } => {
                if x <= 0.0 {
                    return Err(Error::Domain(format!(
                        "radial eigenfunctions need x > 0, got {x}"
                    )));
                }
                base_states::ro_physical(j, x)
            }
        };
        let mut energy = C64::new(self.system.ground_energy(), 0.0);
        for _ in 0..n {
            let jet = jet_extend(self.system, energy, pair, x, 3)?;
            pair = create(self.system, &jet)?;
            energy += 1.0;
        }
        Ok(pair)
    }

    /// Derivative sequence of one partner eigenfunction (unnormalized).
    pub fn eigenfunction_ders(&self, which: EigenIndex, x: f64, order: usize) -> Result<Ders> {
        match which {
            EigenIndex::Mapped(n) => {
                let pair = self.mapped_base_state(n, x)?;
                let energy = C64::new(self.system.level(n), 0.0);
                self.apply_creation_chain(x, pair, energy, order)
            }
            EigenIndex::NewLevel(i) => {
                if i == 0 || i > self.k {
                    return Err(Error::Invalid(format!(
                        "new-level index {i} outside 1..={}",
                        self.k
                    )));
                }
                let jets = self.seed_family(x, self.k - 1 + order)?;
                let den = wronskian_jet(&jets, order)?;
                den.ensure_regular()?;
                let reduced: Vec<Jet> = jets
                    .iter()
                    .enumerate()
                    .filter(|(idx, _)| *idx != i - 1)
                    .map(|(_, jet)| jet.clone())
                    .collect();
                let num = if reduced.is_empty() {
                    Ders::constant(C64::new(1.0, 0.0), order)
                } else {
                    wronskian_jet(&reduced, order)?.w
                };
                num.div(&den.w)
            }
        }
    }

    /// Partner eigenfunction value (unnormalized).
    pub fn eigenfunction(&self, which: EigenIndex, x: f64) -> Result<C64> {
        Ok(self.eigenfunction_ders(which, x, 0)?.value())
    }

    /// Energy of the labeled eigenfunction.
    pub fn eigen_energy(&self, which: EigenIndex) -> C64 {
        match which {
            EigenIndex::Mapped(n) => C64::new(self.system.level(n), 0.0),
            EigenIndex::NewLevel(i) => self.seed.epsilon - (i - 1) as f64,
        }
    }

    /// Extremal energies of the partner's ladder structure: the roots of the
    /// natural number operator.
    pub fn extremal_energies(&self) -> Vec<C64> {
        let e0 = C64::new(self.system.ground_energy(), 0.0);
        match self.system {
            SystemKind::Harmonic => vec![e0, self.seed.epsilon + 1.0, self.epsilon_k()],
            SystemKind::Radial { .. } => vec![
                e0,
                -e0 + 1.0,
                self.epsilon_k(),
                self.seed.epsilon + 1.0,
            ],
        }
    }

    /// Spectrum prediction for real chains: the k new levels plus the mapped
    /// base ladder.
    pub fn predicted_spectrum(&self, n_max: usize) -> Result<SpectrumPrediction> {
        if self.seed.epsilon.im != 0.0 {
            return Err(Error::Invalid(
                "spectral claims apply to real factorization energies only".into(),
            ));
        }
        let finite: Vec<f64> = self.epsilons().iter().rev().map(|e| e.re).collect();
        Ok(SpectrumPrediction {
            finite_ladder: finite,
            infinite_ladder_base: self.system.ground_energy(),
            step: 1.0,
            n_max,
            extremal_energies: self.extremal_energies(),
        })
    }

    /// Scan the Wronskian tower over a grid for nodes: reports the smallest
    /// |W_j| relative to its Hadamard row-norm bound, every point where some
    /// W_j falls below the singularity threshold, and the midpoint of every
    /// pair of neighboring points between which a numerically real W_j
    /// changes sign (a node the samples themselves would miss).
    pub fn pole_scan(&self, grid: &[f64]) -> Result<PoleScanReport> {
        let rows: Vec<(f64, f64, Vec<(C64, f64)>)> = grid
            .par_iter()
            .map(|&x| -> Result<(f64, f64, Vec<(C64, f64)>)> {
                let tower = self.wronskian_tower(x, 0)?;
                let mut worst = f64::INFINITY;
                let mut levels = Vec::with_capacity(tower.len() - 1);
                for wj in tower.iter().skip(1) {
                    let ratio = if wj.scale > 0.0 {
                        wj.w.value().norm() / wj.scale
                    } else {
                        0.0
                    };
                    worst = worst.min(ratio);
                    levels.push((wj.w.value(), wj.scale));
                }
                Ok((x, worst, levels))
            })
            .collect::<Result<_>>()?;
        let mut min_ratio = f64::INFINITY;
        let mut arg_min = grid.first().copied().unwrap_or(0.0);
        let mut singular = Vec::new();
        for (x, ratio, _) in &rows {
            if *ratio < min_ratio {
                min_ratio = *ratio;
                arg_min = *x;
            }
            if *ratio < SINGULARITY_RATIO {
                singular.push(*x);
            }
        }
        for pair in rows.windows(2) {
            let (x0, _, l0) = &pair[0];
            let (x1, _, l1) = &pair[1];
            for ((v0, s0), (v1, s1)) in l0.iter().zip(l1) {
                let real0 = v0.im.abs() <= 1e-10 * (v0.norm() + s0);
                let real1 = v1.im.abs() <= 1e-10 * (v1.norm() + s1);
                if real0 && real1 && v0.re * v1.re < 0.0 {
                    singular.push(0.5 * (x0 + x1));
                    break;
                }
            }
        }
        singular.sort_by(|a, b| a.partial_cmp(b).unwrap());
        singular.dedup();
        Ok(PoleScanReport {
            min_ratio,
            arg_min,
            singular_points: singular,
            samples: grid.len(),
        })
    }
}

/// Which partner eigenfunction: a brand-new level (i = 1..k, energy eps_i)
/// or the image of the n-th base eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EigenIndex {
    NewLevel(usize),
    Mapped(usize),
}

/// Wronskian of k seed jets with its derivatives at one point.
#[derive(Debug, Clone)]
pub struct WronskianJet {
    pub x: f64,
    /// `w.get(m) = W^(m)(x)`.
    pub w: Ders,
    /// Hadamard row-norm product of the base matrix: the natural magnitude
    /// scale against which |W| is judged singular.
    pub scale: f64,
}

impl WronskianJet {
    pub fn ensure_regular(&self) -> Result<()> {
        let threshold = SINGULARITY_RATIO * self.scale;
        let value = self.w.value().norm();
        if value < threshold {
            return Err(Error::WronskianSingular {
                x: self.x,
                value,
                threshold,
            });
        }
        Ok(())
    }
}

/// Wronskian W(u_1..u_k) and `order` derivatives from jets at one point.
///
/// W^(m) is expanded as an integer combination of determinants with bumped
/// derivative rows: differentiating a row-order tuple (o_1 < .. < o_k) bumps
/// one o_r by 1, and tuples with repeated rows drop out as zero
/// determinants. Everything stays analytic in the jet entries.
pub fn wronskian_jet(jets: &[Jet], order: usize) -> Result<WronskianJet> {
    let k = jets.len();
    if k == 0 {
        return Err(Error::Invalid("wronskian of an empty family".into()));
    }
    let x = jets[0].x;
    for jet in jets {
        if jet.x != x {
            return Err(Error::Invalid(
                "wronskian jets must share the evaluation point".into(),
            ));
        }
        jet.require_order(k - 1 + order)?;
    }

    let matrix_det = |orders: &[usize]| -> C64 {
        let m: Vec<Vec<C64>> = orders
            .iter()
            .map(|&o| jets.iter().map(|jet| jet.derivs[o]).collect())
            .collect();
        det(m)
    };

    let mut scale = 1.0f64;
    for r in 0..k {
        let norm: f64 = jets.iter().map(|jet| jet.derivs[r].norm_sqr()).sum();
        scale *= norm.sqrt();
    }

    let base: Vec<usize> = (0..k).collect();
    let mut states: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    states.insert(base, 1.0);
    let mut w = Vec::with_capacity(order + 1);
    w.push(matrix_det(&(0..k).collect::<Vec<_>>()));
    for _ in 1..=order {
        let mut next: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (orders, coef) in &states {
            for r in 0..k {
                let mut bumped = orders.clone();
                bumped[r] += 1;
                if r + 1 < k && bumped[r] == bumped[r + 1] {
                    continue;
                }
                *next.entry(bumped).or_insert(0.0) += coef;
            }
        }
        states = next;
        let mut acc = C64::new(0.0, 0.0);
        for (orders, coef) in &states {
            acc += C64::new(*coef, 0.0) * matrix_det(orders);
        }
        w.push(acc);
    }
    Ok(WronskianJet {
        x,
        w: Ders(w),
        scale,
    })
}

/// The superpotentials alpha_j(x, eps_j), j = 1..k, at one point.
#[derive(Debug, Clone)]
pub struct AlphaChain {
    pub x: f64,
    pub alphas: Vec<C64>,
}

/// Distinguished solutions of the partner Hamiltonian from which its energy
/// ladders grow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtremalKind {
    /// Image of the base ground state (harmonic chains; energy 1/2).
    MappedGround,
    /// Image of the raised seed: B_k^+ applied to the creation-operator
    /// image of u_1 (energy eps_1 + 1).
    RaisedSeed,
    /// W(u_1..u_{k-1}) / W(u_1..u_k), energy eps_k.
    WronskianRatio,
    /// Image of x^{j+1} e^{-x^2/4} (radial chains; energy E0).
    PhysicalBase,
    /// Image of x^{-j} e^{-x^2/4} (radial chains; energy -E0 + 1).
    NonphysicalBase,
}

/// One extremal state of a partner Hamiltonian, with an analytic evaluator.
#[derive(Debug, Clone)]
pub struct ExtremalState {
    pub chain: ChainSpec,
    pub kind: ExtremalKind,
    pub energy: C64,
}

impl ExtremalState {
    pub fn new(chain: ChainSpec, kind: ExtremalKind) -> Result<Self> {
        let e0 = C64::new(chain.system.ground_energy(), 0.0);
        let energy = match (kind, chain.system) {
            (ExtremalKind::MappedGround, SystemKind::Harmonic) => e0,
            (ExtremalKind::PhysicalBase, SystemKind::Radial { .. }) => e0,
            (ExtremalKind::NonphysicalBase, SystemKind::Radial { .. }) => -e0 + 1.0,
            (ExtremalKind::RaisedSeed, _) => chain.seed.epsilon + 1.0,
            (ExtremalKind::WronskianRatio, _) => chain.epsilon_k(),
            (kind, system) => {
                return Err(Error::Invalid(format!(
                    "extremal state {kind:?} undefined for {system:?}"
                )))
            }
        };
        Ok(ExtremalState {
            chain,
            kind,
            energy,
        })
    }

    /// Derivative sequence of the state at `x` (unnormalized).
    pub fn eval(&self, x: f64, order: usize) -> Result<Ders> {
        let chain = &self.chain;
        match self.kind {
            ExtremalKind::MappedGround => {
                chain.apply_creation_chain(x, base_states::ho_gaussian(x), self.energy, order)
            }
            ExtremalKind::PhysicalBase => {
                let j = radial_j(chain.system)?;
                chain.apply_creation_chain(x, base_states::ro_physical(j, x), self.energy, order)
            }
            ExtremalKind::NonphysicalBase => {
                let j = radial_j(chain.system)?;
                chain.apply_creation_chain(
                    x,
                    base_states::ro_nonphysical(j, x),
                    self.energy,
                    order,
                )
            }
            ExtremalKind::RaisedSeed => {
                let pair = seed_eval(chain.system, &chain.seed, x)?;
                let jet = jet_extend(chain.system, chain.seed.epsilon, pair, x, 3)?;
                let raised = create(chain.system, &jet)?;
                chain.apply_creation_chain(x, raised, self.energy, order)
            }
            ExtremalKind::WronskianRatio => {
                let tower = chain.wronskian_tower(x, order)?;
                tower[chain.k].ensure_regular()?;
                tower[chain.k - 1].w.div(&tower[chain.k].w)
            }
        }
    }
}

fn radial_j(system: SystemKind) -> Result<f64> {
    match system {
        SystemKind::Radial { j } => Ok(j),
        SystemKind::Harmonic => Err(Error::Invalid(
            "radial extremal state requested on a harmonic chain".into(),
        )),
    }
}

/// Predicted partner spectrum for a real reduced chain.
#[derive(Debug, Clone)]
pub struct SpectrumPrediction {
    /// New levels eps_k..eps_1, ascending.
    pub finite_ladder: Vec<f64>,
    /// Base of the mapped infinite ladder (the base ground energy).
    pub infinite_ladder_base: f64,
    /// Ladder spacing.
    pub step: f64,
    /// Mapped levels retained: base, base+step, .., base + n_max*step.
    pub n_max: usize,
    /// Roots of the natural number operator.
    pub extremal_energies: Vec<C64>,
}

impl SpectrumPrediction {
    /// The `count` lowest predicted levels, ascending.
    pub fn lowest_levels(&self, count: usize) -> Vec<f64> {
        let mut all = self.finite_ladder.clone();
        for n in 0..=self.n_max {
            all.push(self.infinite_ladder_base + n as f64 * self.step);
        }
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        all.truncate(count);
        all
    }
}
