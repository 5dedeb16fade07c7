//! Truncated Taylor expansions ("jets") over complex scalars.
//!
//! A [`Jet`] stores the coefficients c_n = f⁽ⁿ⁾(x₀)/n! of a function at a
//! center x₀. Jets carry every derivative in the library: Wronskian entries,
//! log-derivatives, and the g″ of the Painlevé IV residual all come from jet
//! arithmetic, never from finite differences.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    center: f64,
    coeffs: Vec<Complex64>,
}

impl Jet {
    /// Build a jet from raw Taylor coefficients (c_n = f⁽ⁿ⁾(x₀)/n!).
    pub fn new(center: f64, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Contract("jet needs at least one coefficient".into()));
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::Contract("jet coefficients must be finite".into()));
        }
        Ok(Jet { center, coeffs })
    }

    /// The constant function `value` as a jet of the given order.
    pub fn constant(center: f64, value: Complex64, order: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        coeffs[0] = value;
        Jet { center, coeffs }
    }

    /// The coordinate function x as a jet at x₀: (x₀, 1, 0, ...).
    pub fn variable(center: f64, order: usize) -> Self {
        let mut j = Jet::constant(center, Complex64::new(center, 0.0), order);
        if order >= 1 {
            j.coeffs[1] = Complex64::new(1.0, 0.0);
        }
        j
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// Truncation order N (the jet holds N+1 coefficients).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// f(x₀)
    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// f′(x₀)
    pub fn first(&self) -> Complex64 {
        self.coeffs[1]
    }

    /// f″(x₀)
    pub fn second(&self) -> Complex64 {
        2.0 * self.coeffs[2]
    }

    pub fn truncated(&self, order: usize) -> Jet {
        let n = order.min(self.order());
        Jet {
            center: self.center,
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// Jet of f′, one order lower.
    pub fn derivative(&self) -> Jet {
        assert!(self.order() >= 1, "derivative needs order ≥ 1");
        let coeffs = (1..self.coeffs.len())
            .map(|n| self.coeffs[n] * n as f64)
            .collect();
        Jet {
            center: self.center,
            coeffs,
        }
    }

    fn zip_len(&self, rhs: &Jet) -> usize {
        assert_eq!(self.center, rhs.center, "jet centers must match");
        self.coeffs.len().min(rhs.coeffs.len())
    }

    pub fn add(&self, rhs: &Jet) -> Jet {
        let n = self.zip_len(rhs);
        let coeffs = (0..n).map(|i| self.coeffs[i] + rhs.coeffs[i]).collect();
        Jet {
            center: self.center,
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &Jet) -> Jet {
        let n = self.zip_len(rhs);
        let coeffs = (0..n).map(|i| self.coeffs[i] - rhs.coeffs[i]).collect();
        Jet {
            center: self.center,
            coeffs,
        }
    }

    /// Cauchy product, truncated to the shorter operand.
    pub fn mul(&self, rhs: &Jet) -> Jet {
        let n = self.zip_len(rhs);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            for j in 0..=i {
                *c += self.coeffs[j] * rhs.coeffs[i - j];
            }
        }
        Jet {
            center: self.center,
            coeffs,
        }
    }

    /// Recursive series deconvolution. Fails when the divisor's constant term
    /// vanishes — which is exactly how on-axis poles are detected upstream.
    pub fn div(&self, rhs: &Jet) -> Result<Jet> {
        let n = self.zip_len(rhs);
        let b0 = rhs.coeffs[0];
        if b0.norm() == 0.0 {
            return Err(Error::Singular {
                x: self.center,
                what: "division by jet with vanishing constant term".into(),
            });
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = self.coeffs[i];
            for j in 1..=i {
                acc -= rhs.coeffs[j] * coeffs[i - j];
            }
            coeffs[i] = acc / b0;
        }
        Ok(Jet {
            center: self.center,
            coeffs,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Jet {
        let coeffs = self.coeffs.iter().map(|c| c * factor).collect();
        Jet {
            center: self.center,
            coeffs,
        }
    }

    pub fn neg(&self) -> Jet {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    /// Jet of f′/f, one order lower than f.
    pub fn log_derivative(&self) -> Result<Jet> {
        if self.order() < 1 {
            return Err(Error::Contract("log_derivative needs order ≥ 1".into()));
        }
        if self.coeffs[0].norm() == 0.0 {
            return Err(Error::Singular {
                x: self.center,
                what: "log-derivative of jet with vanishing constant term".into(),
            });
        }
        self.derivative().div(&self.truncated(self.order() - 1))
    }
}

/// Jet of a solution u of u″ = (x² − 2ε) u, generated from (u(x₀), u′(x₀)) by
/// the coefficient recurrence
///
///   (n+2)(n+1) c_{n+2} = (x₀² − 2ε) c_n + 2x₀ c_{n−1} + c_{n−2}.
///
/// This is how every higher derivative of a seed enters the Wronskians.
pub fn seed_derivative_recurrence(
    u0: Complex64,
    u1: Complex64,
    epsilon: f64,
    x0: f64,
    order: usize,
) -> Jet {
    assert!(order >= 1, "seed recurrence needs order ≥ 1");
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(u0);
    coeffs.push(u1);
    let p0 = x0 * x0 - 2.0 * epsilon;
    let p1 = 2.0 * x0;
    for n in 0..order.saturating_sub(1) {
        let mut s = p0 * coeffs[n];
        if n >= 1 {
            s += p1 * coeffs[n - 1];
        }
        if n >= 2 {
            s += coeffs[n - 2];
        }
        coeffs.push(s / ((n + 2) as f64 * (n + 1) as f64));
    }
    Jet { center: x0, coeffs }
}

/// Jet of a solution of u″ = q(x)·u for an arbitrary coefficient jet q,
/// generated from (u(x₀), u′(x₀)) by the convolution recurrence
///
///   (n+2)(n+1) c_{n+2} = Σ_m q_m c_{n−m}.
///
/// The Darboux tower uses this with q = 2(V_level − ε) to keep every
/// transformed function an exact solution of its own level's equation.
pub fn ode_jet_from_values(u0: Complex64, u1: Complex64, q: &Jet, order: usize) -> Jet {
    assert!(order >= 1, "ode recurrence needs order ≥ 1");
    assert!(
        q.order() + 2 >= order,
        "coefficient jet order {} too short for output order {order}",
        q.order()
    );
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(u0);
    coeffs.push(u1);
    for n in 0..order.saturating_sub(1) {
        let mut s = Complex64::new(0.0, 0.0);
        for m in 0..=n.min(q.order()) {
            s += q.coeff(m) * coeffs[n - m];
        }
        coeffs.push(s / ((n + 2) as f64 * (n + 1) as f64));
    }
    Jet {
        center: q.center(),
        coeffs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn jet(center: f64, re: &[f64]) -> Jet {
        Jet::new(center, re.iter().map(|&r| c(r)).collect()).unwrap()
    }

    #[test]
    fn mul_truncates() {
        // (1+x)(1−x) at order 1 → (1, 0)
        let p = jet(0.0, &[1.0, 1.0]).mul(&jet(0.0, &[1.0, -1.0]));
        assert_eq!(p.coeffs(), &[c(1.0), c(0.0)]);
    }

    #[test]
    fn div_is_geometric_series() {
        // 1/(1+x) = 1 − x + x²
        let q = jet(0.0, &[1.0, 0.0, 0.0])
            .div(&jet(0.0, &[1.0, 1.0, 0.0]))
            .unwrap();
        assert_eq!(q.coeffs(), &[c(1.0), c(-1.0), c(1.0)]);
    }

    #[test]
    fn scale_is_linear() {
        let s = jet(0.0, &[2.0, 4.0]).scale(c(0.5));
        assert_eq!(s.coeffs(), &[c(1.0), c(2.0)]);
    }

    #[test]
    fn log_derivative_of_exponential_is_one() {
        let e = jet(0.0, &[1.0, 1.0, 0.5, 1.0 / 6.0]);
        let ld = e.log_derivative().unwrap();
        for (i, want) in [1.0, 0.0, 0.0].iter().enumerate() {
            assert!((ld.coeff(i) - c(*want)).norm() < 1e-15);
        }
    }

    #[test]
    fn log_derivative_leading_value() {
        // f = 1 + 2x² at x₀ = 1: jet (3, 4, 2), (ln f)′(1) = 4/3
        let f = jet(1.0, &[3.0, 4.0, 2.0]);
        let ld = f.log_derivative().unwrap();
        assert!((ld.value() - c(4.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn log_derivative_pole_is_singular() {
        let x = Jet::variable(0.0, 3);
        assert!(matches!(x.log_derivative(), Err(Error::Singular { .. })));
    }

    #[test]
    fn recurrence_matches_ode_at_origin() {
        let eps = 0.7;
        let j = seed_derivative_recurrence(c(1.0), c(0.3), eps, 0.0, 4);
        // u″(0) = −2ε u(0)
        assert!((j.coeff(2) - c(-eps)).norm() < 1e-15);
    }

    #[test]
    fn recurrence_reproduces_gaussian() {
        // ε = 1/2, u(0)=1, u′(0)=0 → e^{−x²/2}: coefficients 1, 0, −1/2, 0, 1/8
        let j = seed_derivative_recurrence(c(1.0), c(0.0), 0.5, 0.0, 4);
        let want = [1.0, 0.0, -0.5, 0.0, 0.125];
        for (i, w) in want.iter().enumerate() {
            assert!((j.coeff(i) - c(*w)).norm() < 1e-15, "coeff {i}");
        }
    }

    #[test]
    fn recurrence_order_one_is_identity() {
        let j = seed_derivative_recurrence(c(2.0), c(-1.0), 1.3, 0.4, 1);
        assert_eq!(j.coeffs(), &[c(2.0), c(-1.0)]);
    }
}
