//! Small dense complex determinants via LU with partial pivoting.
//!
//! Wronskian matrices here never exceed 7x7, so a direct O(n^3) elimination
//! with the largest-modulus pivot is both fast and as stable as it gets.

use crate::C64;

/// Determinant of a small square matrix, destroying `m`.
pub(crate) fn det(mut m: Vec<Vec<C64>>) -> C64 {
    let n = m.len();
    let mut d = C64::new(1.0, 0.0);
    for col in 0..n {
        let mut pivot = col;
        let mut best = m[col][col].norm();
        for (row, r) in m.iter().enumerate().skip(col + 1) {
            let mag = r[col].norm();
            if mag > best {
                best = mag;
                pivot = row;
            }
        }
        if best == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            d = -d;
        }
        let p = m[col][col];
        d *= p;
        for row in col + 1..n {
            let factor = m[row][col] / p;
            for c in col..n {
                let sub = factor * m[col][c];
                m[row][c] -= sub;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_and_permutation() {
        let id = vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ];
        assert_relative_eq!(det(id).re, 1.0);
        let perm = vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ];
        assert_relative_eq!(det(perm).re, -1.0);
    }

    #[test]
    fn known_3x3_complex() {
        // det = (1+i) * det([[2,0],[1,3]]) = 6(1+i) for a block-triangular pick
        let m = vec![
            vec![c(1.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(4.0, -2.0), c(2.0, 0.0), c(0.0, 0.0)],
            vec![c(0.5, 0.5), c(1.0, 0.0), c(3.0, 0.0)],
        ];
        let d = det(m);
        assert_relative_eq!(d.re, 6.0, max_relative = 1e-14);
        assert_relative_eq!(d.im, 6.0, max_relative = 1e-14);
    }

    #[test]
    fn singular_matrix_gives_zero() {
        let m = vec![
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0)],
        ];
        assert_eq!(det(m), c(0.0, 0.0));
    }
}
