//! Arithmetic on truncated derivative sequences.
//!
//! A [`Ders`] holds the values `(f(x), f'(x), ..., f^(n)(x))` of one function
//! at a fixed point. Sums, products and quotients combine by the Leibniz
//! rules, so every derivative of a composite expression stays analytic; no
//! finite differences enter anywhere in the evaluation pipeline.

use crate::{C64, Error, Result};

/// Binomial coefficient as `f64`; exact for the small orders used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Derivative sequence `d[m] = f^(m)(x)` of one function at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Ders(pub Vec<C64>);

impl Ders {
    /// Constant function: `(c, 0, 0, ...)` with `order + 1` entries.
    pub fn constant(c: C64, order: usize) -> Self {
        let mut d = vec![C64::new(0.0, 0.0); order + 1];
        d[0] = c;
        Ders(d)
    }

    /// The identity function evaluated at `x`: `(x, 1, 0, ...)`.
    pub fn variable(x: f64, order: usize) -> Self {
        let mut d = vec![C64::new(0.0, 0.0); order + 1];
        d[0] = C64::new(x, 0.0);
        if order >= 1 {
            d[1] = C64::new(1.0, 0.0);
        }
        Ders(d)
    }

    /// Highest derivative order carried.
    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn value(&self) -> C64 {
        self.0[0]
    }

    pub fn get(&self, m: usize) -> C64 {
        self.0[m]
    }

    /// Derivative sequence of `f^(m)`: drops the first `m` entries.
    pub fn shift(&self, m: usize) -> Result<Ders> {
        if m > self.order() {
            return Err(Error::JetOrder {
                have: self.order(),
                need: m,
            });
        }
        Ok(Ders(self.0[m..].to_vec()))
    }

    pub fn add(&self, other: &Ders) -> Ders {
        let n = self.0.len().min(other.0.len());
        Ders((0..n).map(|m| self.0[m] + other.0[m]).collect())
    }

    pub fn sub(&self, other: &Ders) -> Ders {
        let n = self.0.len().min(other.0.len());
        Ders((0..n).map(|m| self.0[m] - other.0[m]).collect())
    }

    pub fn scale(&self, c: C64) -> Ders {
        Ders(self.0.iter().map(|d| c * d).collect())
    }

    /// Leibniz product: `(fg)^(m) = sum_i C(m,i) f^(i) g^(m-i)`.
    pub fn mul(&self, other: &Ders) -> Ders {
        let n = self.0.len().min(other.0.len());
        let mut out = vec![C64::new(0.0, 0.0); n];
        for (m, o) in out.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..=m {
                acc += binomial(m, i) * self.0[i] * other.0[m - i];
            }
            *o = acc;
        }
        Ders(out)
    }

    /// Quotient `h = f/g`, solved order by order from `f = h g`.
    pub fn div(&self, other: &Ders) -> Result<Ders> {
        let g0 = other.0[0];
        if g0.norm() == 0.0 {
            return Err(Error::ZeroDivision);
        }
        let n = self.0.len().min(other.0.len());
        let mut h = vec![C64::new(0.0, 0.0); n];
        for m in 0..n {
            let mut acc = self.0[m];
            for i in 0..m {
                acc -= binomial(m, i) * h[i] * other.0[m - i];
            }
            h[m] = acc / g0;
        }
        Ok(Ders(h))
    }

    /// Logarithmic derivative `f'/f` as a sequence one order shorter.
    pub fn log_derivative(&self) -> Result<Ders> {
        self.shift(1)?.div(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    // f(x) = x^2 e^x at x = 0.7, derivatives by hand:
    // f' = (x^2 + 2x) e^x, f'' = (x^2 + 4x + 2) e^x, f''' = (x^2 + 6x + 6) e^x
    fn sample(x: f64) -> (Ders, Ders) {
        let e = x.exp();
        let expd = Ders(vec![c(e, 0.0); 4]);
        let x2 = Ders(vec![c(x * x, 0.0), c(2.0 * x, 0.0), c(2.0, 0.0), c(0.0, 0.0)]);
        (x2, expd)
    }

    #[test]
    fn leibniz_product_matches_hand_derivatives() {
        let x = 0.7;
        let (x2, expd) = sample(x);
        let f = x2.mul(&expd);
        let e = x.exp();
        assert_relative_eq!(f.get(0).re, x * x * e, max_relative = 1e-14);
        assert_relative_eq!(f.get(1).re, (x * x + 2.0 * x) * e, max_relative = 1e-14);
        assert_relative_eq!(f.get(2).re, (x * x + 4.0 * x + 2.0) * e, max_relative = 1e-14);
        assert_relative_eq!(f.get(3).re, (x * x + 6.0 * x + 6.0) * e, max_relative = 1e-14);
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = 1.3;
        let (x2, expd) = sample(x);
        let f = x2.mul(&expd);
        let back = f.div(&expd).unwrap();
        for m in 0..=3 {
            // epsilon covers the exactly-zero third derivative of x^2
            assert_relative_eq!(back.get(m).re, x2.get(m).re, epsilon = 1e-12, max_relative = 1e-13);
            assert_relative_eq!(back.get(m).im, x2.get(m).im, epsilon = 1e-12, max_relative = 1e-13);
        }
    }

    #[test]
    fn log_derivative_of_exp_is_one() {
        let (_, expd) = sample(0.4);
        let ld = expd.log_derivative().unwrap();
        assert_relative_eq!(ld.get(0).re, 1.0, max_relative = 1e-14);
        assert_relative_eq!(ld.get(1).re, 0.0, epsilon = 1e-14);
        assert_relative_eq!(ld.get(2).re, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn division_by_zero_leading_value_errors() {
        let zero = Ders::constant(c(0.0, 0.0), 2);
        let one = Ders::constant(c(1.0, 0.0), 2);
        assert!(matches!(one.div(&zero), Err(Error::ZeroDivision)));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(0, 0), 1.0);
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(10, 5), 252.0);
        assert_eq!(binomial(3, 7), 0.0);
    }
}
