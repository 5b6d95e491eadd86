//! Uniform evaluation grids.

/// Closed uniform grid with `n >= 2` points including both endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Self {
        assert!(n >= 2, "grid needs at least two points");
        assert!(lo < hi, "grid bounds must be increasing");
        Grid { lo, hi, n }
    }

    pub fn points(&self) -> Vec<f64> {
        let h = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n).map(|i| self.lo + i as f64 * h).collect()
    }

    /// Default Painleve IV certification grid: 2001 points on |x| <= 5.
    pub fn piv_default() -> Self {
        Grid::new(-5.0, 5.0, 2001)
    }

    /// Default Painleve V certification grid: 2001 points on z in [0.01, 25].
    pub fn pv_default() -> Self {
        Grid::new(0.01, 25.0, 2001)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_count() {
        let g = Grid::new(-5.0, 5.0, 2001);
        let pts = g.points();
        assert_eq!(pts.len(), 2001);
        assert_eq!(pts[0], -5.0);
        assert_eq!(*pts.last().unwrap(), 5.0);
        assert!((pts[1] - pts[0] - 0.005).abs() < 1e-15);
    }
}
