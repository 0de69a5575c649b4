//! Dense truncated power series over `Complex64`.
//!
//! A series of order `N` stores coefficients `c_0..=c_N` of
//! `f(z) = sum c_n z^n`; every arithmetic operation truncates back to the
//! order of its inputs. This is the backbone for coefficient extraction and
//! for Parseval evaluation of Dirichlet integrals.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

/// Dirichlet integral computed from Taylor coefficients together with a bound
/// on the part of the coefficient sum that truncation discarded.
#[derive(Debug, Clone, Copy)]
pub struct ParsevalArea {
    pub value: f64,
    /// Upper estimate for the discarded tail, assuming the trailing
    /// coefficients keep the geometric profile observed in the last stored
    /// ones. Zero when the series terminates inside the stored window.
    pub tail_bound: f64,
}

impl TruncatedSeries {
    /// Builds a series from coefficients `c_0..=c_N`. Rejects empty input and
    /// non-finite entries.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter(
                "a series needs at least its constant term".into(),
            ));
        }
        for (index, c) in coeffs.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { index });
            }
        }
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    /// `z` itself, truncated at `order` (which must be >= 1).
    pub fn identity(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter(
                "the identity series needs order >= 1".into(),
            ));
        }
        let mut s = Self::zero(order);
        s.coeffs[1] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient `c_n`; zero beyond the stored order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs
            .get(n)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Copy truncated (or zero-extended) to the requested order.
    pub fn truncated_to(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.order() != rhs.order() {
            return Err(Error::MismatchedOrders {
                left: self.order(),
                right: rhs.order(),
            });
        }
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for i in 0..=n {
            let a = self.coeffs[i];
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..=(n - i) {
                out[i + j] += a * rhs.coeffs[j];
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.order() != rhs.order() {
            return Err(Error::MismatchedOrders {
                left: self.order(),
                right: rhs.order(),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { coeffs })
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Principal branch of `f(z)^alpha` for real `alpha`, truncated to the
    /// order of `f`. Requires `f(0) != 0`.
    ///
    /// With `f = c_0 (1 + v)`, the coefficients of `g = (1 + v)^alpha` satisfy
    /// `n g_n = sum_{k=1..n} (alpha k - (n - k)) v_k g_{n-k}`, which follows
    /// from `g' (1 + v) = alpha v' g`. The prefactor `c_0^alpha` uses the
    /// principal logarithm.
    pub fn pow_real(&self, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        let c0 = self.coeffs[0];
        if c0.norm() == 0.0 {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let v: Vec<Complex64> = self.coeffs.iter().map(|c| c / c0).collect();
        let mut g = vec![Complex64::new(0.0, 0.0); n + 1];
        g[0] = Complex64::new(1.0, 0.0);
        for m in 1..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 1..=m {
                let factor = alpha * k as f64 - (m - k) as f64;
                if factor != 0.0 {
                    acc += factor * v[k] * g[m - k];
                }
            }
            g[m] = acc / m as f64;
        }
        let scale = c0.powf(alpha);
        if !scale.re.is_finite() || !scale.im.is_finite() {
            return Err(Error::NonFiniteCoefficient { index: 0 });
        }
        Ok(Self {
            coeffs: g.into_iter().map(|c| c * scale).collect(),
        })
    }

    /// `f(phi(z))` truncated to the order of `f`. Requires `phi(0) = 0`;
    /// constant terms below 1e-12 in modulus are treated as exact zeros.
    pub fn compose(&self, phi: &Self) -> Result<Self> {
        let c0 = phi.coeffs[0].norm();
        if c0 > 1e-12 {
            return Err(Error::NonzeroCompositionConstant(c0));
        }
        let n = self.order();
        let mut inner = phi.truncated_to(n);
        inner.coeffs[0] = Complex64::new(0.0, 0.0);
        // Horner from the top coefficient down.
        let mut acc = Self::zero(n);
        acc.coeffs[0] = self.coeffs[n];
        for k in (0..n).rev() {
            acc = acc.mul(&inner)?;
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Termwise derivative; the order drops by one (a constant differentiates
    /// to the zero series of order zero).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c * (i as f64 + 1.0))
            .collect();
        Self { coeffs }
    }

    /// Horner evaluation of the truncation at a point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Dirichlet integral of `g` over the disc of radius `r` via the
    /// coefficient sum `pi * sum_{n>=1} n |c_n|^2 r^{2n}`, plus a tail bound.
    ///
    /// The tail bound assumes the discarded coefficients continue the
    /// geometric profile of the last stored nonzero ones: with
    /// `rho = max |c_n|^{1/n}` over that window and `C = max |c_n| / rho^n`,
    /// `sum_{n>N} n |c_n|^2 r^{2n} <= C^2 s^{N+1} ((N+1) - N s) / (1-s)^2`
    /// where `s = (rho r)^2`. Infinite when `s >= 1`.
    pub fn dirichlet_parseval(&self, r: f64) -> Result<ParsevalArea> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::RadiusOutOfRange(r));
        }
        let n = self.order();
        let r2 = r * r;
        let mut value = 0.0f64;
        let mut pw = 1.0f64;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                pw *= r2;
                value += k as f64 * c.norm_sqr() * pw;
            }
        }
        value *= std::f64::consts::PI;

        // Geometric profile of the trailing nonzero coefficients.
        let window = 8usize.min(n);
        let mut rho: f64 = 0.0;
        let mut seen = false;
        for k in (n + 1 - window)..=n {
            let m = self.coeffs[k].norm();
            if m > 0.0 {
                seen = true;
                rho = rho.max(m.powf(1.0 / k as f64));
            }
        }
        let tail_bound = if !seen {
            0.0
        } else {
            let mut cmax: f64 = 0.0;
            for k in (n + 1 - window)..=n {
                let m = self.coeffs[k].norm();
                if m > 0.0 {
                    cmax = cmax.max(m / rho.powi(k as i32));
                }
            }
            let s = (rho * r) * (rho * r);
            if s >= 1.0 {
                f64::INFINITY
            } else {
                let np1 = (n + 1) as f64;
                std::f64::consts::PI
                    * cmax
                    * cmax
                    * s.powi(n as i32 + 1)
                    * (np1 - n as f64 * s)
                    / ((1.0 - s) * (1.0 - s))
            }
        };
        Ok(ParsevalArea { value, tail_bound })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn geometric(order: usize) -> TruncatedSeries {
        // 1 / (1 - z)
        TruncatedSeries::new(vec![c(1.0, 0.0); order + 1]).unwrap()
    }

    #[test]
    fn mul_matches_geometric_square() {
        // (1/(1-z))^2 = sum (n+1) z^n
        let g = geometric(12);
        let sq = g.mul(&g).unwrap();
        for n in 0..=12 {
            assert_abs_diff_eq!(sq.coeff(n).re, (n + 1) as f64, epsilon = 1e-14);
            assert_abs_diff_eq!(sq.coeff(n).im, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn mul_rejects_mismatched_orders() {
        let a = geometric(4);
        let b = geometric(5);
        assert!(matches!(
            a.mul(&b),
            Err(Error::MismatchedOrders { left: 4, right: 5 })
        ));
    }

    #[test]
    fn pow_real_matches_binomial_series() {
        // (1 - z)^{-1/2} has coefficients binom(2n, n) / 4^n.
        let mut base = TruncatedSeries::zero(10);
        base.coeffs[0] = c(1.0, 0.0);
        base.coeffs[1] = c(-1.0, 0.0);
        let s = base.pow_real(-0.5).unwrap();
        for n in 0..=10usize {
            let mut expected = 1.0f64;
            for k in 1..=n {
                expected *= (n + k) as f64 / k as f64;
            }
            expected /= 4f64.powi(n as i32);
            assert_abs_diff_eq!(s.coeff(n).re, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn pow_real_zero_exponent_is_one() {
        let f = TruncatedSeries::new(vec![c(2.0, 1.0), c(0.3, -0.2), c(0.0, 0.5)]).unwrap();
        let p = f.pow_real(0.0).unwrap();
        assert_abs_diff_eq!(p.coeff(0).re, 1.0, epsilon = 1e-15);
        for n in 1..=2 {
            assert!(p.coeff(n).norm() < 1e-15);
        }
    }

    #[test]
    fn pow_real_requires_nonzero_constant() {
        let f = TruncatedSeries::identity(3).unwrap();
        assert!(matches!(f.pow_real(0.5), Err(Error::ZeroConstantTerm)));
    }

    #[test]
    fn compose_matches_direct_substitution() {
        // f(z) = 1/(1-z), phi(z) = z^2 + z^3/2: coefficients of f(phi) can be
        // checked against expanding by hand up to order 6.
        let f = geometric(6);
        let mut phi = TruncatedSeries::zero(6);
        phi.coeffs[2] = c(1.0, 0.0);
        phi.coeffs[3] = c(0.5, 0.0);
        let comp = f.compose(&phi).unwrap();
        // 1 + (z^2 + z^3/2) + (z^2 + z^3/2)^2 + (z^2+z^3/2)^3 + ...
        // z^0: 1, z^2: 1, z^3: 1/2, z^4: 1, z^5: 1, z^6: 1/4 + 1 = 5/4
        let expected = [1.0, 0.0, 1.0, 0.5, 1.0, 1.0, 1.25];
        for (n, e) in expected.iter().enumerate() {
            assert_abs_diff_eq!(comp.coeff(n).re, *e, epsilon = 1e-13);
            assert_abs_diff_eq!(comp.coeff(n).im, 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let f = geometric(3);
        let phi = geometric(3);
        assert!(matches!(
            f.compose(&phi),
            Err(Error::NonzeroCompositionConstant(_))
        ));
    }

    #[test]
    fn derivative_and_eval_consistency() {
        let f = TruncatedSeries::new(vec![c(1.0, 0.0), c(2.0, -1.0), c(0.0, 3.0), c(4.0, 0.0)])
            .unwrap();
        let d = f.derivative();
        assert_eq!(d.order(), 2);
        assert_eq!(d.coeff(0), c(2.0, -1.0));
        assert_eq!(d.coeff(1), c(0.0, 6.0));
        assert_eq!(d.coeff(2), c(12.0, 0.0));
        let z = c(0.3, 0.4);
        let h = 1e-6;
        let fd = (f.eval(z + c(h, 0.0)) - f.eval(z - c(h, 0.0))) / c(2.0 * h, 0.0);
        assert!((fd - d.eval(z)).norm() < 1e-8);
    }

    #[test]
    fn parseval_exact_for_polynomial() {
        // g(z) = z + 2 z^3: Dirichlet integral = pi (1 r^2 + 3*4 r^6).
        let mut g = TruncatedSeries::zero(8);
        g.coeffs[1] = c(1.0, 0.0);
        g.coeffs[3] = c(2.0, 0.0);
        let r = 0.7f64;
        let a = g.dirichlet_parseval(r).unwrap();
        let expected = std::f64::consts::PI * (r.powi(2) + 12.0 * r.powi(6));
        assert_abs_diff_eq!(a.value, expected, epsilon = 1e-14);
        // The tail estimate extrapolates from the trailing nonzero
        // coefficients; for a polynomial it is conservative, not zero.
        assert!(a.tail_bound.is_finite() && a.tail_bound >= 0.0);
    }

    #[test]
    fn parseval_tail_bound_covers_geometric_series() {
        // g = 1/(1-z) truncated at N = 24; the true integral at radius r is
        // pi sum_{n>=1} n r^{2n} = pi r^2 / (1-r^2)^2.
        let g = geometric(24);
        let r = 0.6f64;
        let a = g.dirichlet_parseval(r).unwrap();
        let truth = std::f64::consts::PI * r * r / (1.0 - r * r).powi(2);
        assert!(a.value <= truth);
        assert!(
            a.value + a.tail_bound >= truth * (1.0 - 1e-12),
            "value {} + tail {} should cover {}",
            a.value,
            a.tail_bound,
            truth
        );
        assert!(a.tail_bound < 1e-3);
    }

    #[test]
    fn parseval_rejects_bad_radius() {
        let g = geometric(4);
        assert!(matches!(
            g.dirichlet_parseval(0.0),
            Err(Error::RadiusOutOfRange(_))
        ));
        assert!(matches!(
            g.dirichlet_parseval(1.5),
            Err(Error::RadiusOutOfRange(_))
        ));
    }
}
