//! Certification reports returned by the residual, spectrum and cross-check
//! sweeps.

/// Outcome of a residual sweep over a grid.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    /// Largest normalized residual over the grid.
    pub max_normalized: f64,
    /// Grid point where the maximum occurred.
    pub argmax: f64,
    /// Largest raw residual modulus.
    pub max_absolute: f64,
    /// Points actually evaluated.
    pub samples: usize,
    /// Points skipped because the equation degenerates there
    /// (Painleve V denominators |w| or |w-1| below threshold).
    pub excluded: usize,
}

impl ResidualReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_normalized <= tol
    }
}

/// Outcome of comparing a generated solution against a closed form.
#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    /// Largest |generated - closed form| over the grid.
    pub max_abs_deviation: f64,
    pub argmax: f64,
    /// Residual of the closed form in its own equation, certified before the
    /// comparison is trusted.
    pub reference_residual: f64,
    pub samples: usize,
}

/// Outcome of a pole scan: smallest Wronskian magnitude relative to the
/// Hadamard row-norm bound, over the scan grid and every chain order.
#[derive(Debug, Clone)]
pub struct PoleScanReport {
    /// min over the grid of |W| / hadamard.
    pub min_ratio: f64,
    pub arg_min: f64,
    /// Points where some Wronskian fell below the singularity threshold.
    pub singular_points: Vec<f64>,
    pub samples: usize,
}

impl PoleScanReport {
    pub fn passes(&self) -> bool {
        self.singular_points.is_empty()
    }
}

/// Outcome of a discretized-spectrum comparison.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub computed: Vec<f64>,
    pub predicted: Vec<f64>,
    pub max_abs_deviation: f64,
    /// Whether the eigenvalue count below the comparison window's top edge
    /// matches the prediction exactly.
    pub count_matches: bool,
}

impl SpectrumReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.count_matches && self.max_abs_deviation <= tol
    }
}
