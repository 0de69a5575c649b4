//! Quadrature support: a Gauss-Legendre base rule and composite node layouts
//! for integrals with algebraic endpoint weights.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Legendre polynomial value and derivative at `x`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Nodes and weights of the 16-point Gauss-Legendre rule on [-1, 1],
/// computed once by Newton iteration on the Legendre roots.
pub fn gauss_legendre_16() -> &'static [(f64, f64); 16] {
    static RULE: OnceLock<[(f64, f64); 16]> = OnceLock::new();
    RULE.get_or_init(|| {
        const N: usize = 16;
        let mut rule = [(0.0f64, 0.0f64); N];
        for (i, slot) in rule.iter_mut().enumerate() {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
            for _ in 0..64 {
                let (p, dp) = legendre(N, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(N, x);
            *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        rule
    })
}

/// Smallest integer `m` with `m (e + 1) >= 3`, the substitution power that
/// turns an endpoint factor `t^e` into one vanishing to at least second
/// order after `t = s^m`.
fn substitution_power(e: f64) -> i32 {
    if e >= 2.0 {
        1
    } else {
        (3.0 / (e + 1.0)).ceil() as i32
    }
}

/// Composite nodes `(t_i, w_i)` for `\int_0^1 t^p (1-t)^q f(t) dt`
/// with `p, q > -1`: the algebraic weight `t^p (1-t)^q dt` is folded into
/// the `w_i`, so the caller only evaluates the smooth factor `f`.
///
/// Each half `[0, 1/2]`, `[1/2, 1]` is mapped by `t = s^m` (resp.
/// `1 - t = s^m`) with `m` from [`substitution_power`], then covered by
/// geometrically graded panels toward the endpoint. The weight power is
/// evaluated in the substituted variable, `m s^{m(p+1)-1}`, whose exponent
/// is at least 2, so no intermediate over- or underflow occurs even for
/// exponents close to -1. Panels are uniformly subdivided so that `f` sees
/// at least `2 * scale` cells per unit length; `scale` should track the
/// variation scale of `f` (its degree or frequency) and is clamped to
/// [1, 512]. The innermost panel touches the endpoint; a node's `t` can
/// round to exactly 0 or 1 once the graded panels descend below f64
/// resolution, so the supplied factor must extend continuously to the
/// closed interval (its weight, formed in the substituted variable, still
/// carries the correct mass).
pub fn beta_weighted_nodes(p: f64, q: f64, scale: f64) -> Result<Vec<(f64, f64)>> {
    if !(p > -1.0) || !p.is_finite() {
        return Err(Error::IntegralPrecondition(format!(
            "endpoint exponent p = {p} must exceed -1"
        )));
    }
    if !(q > -1.0) || !q.is_finite() {
        return Err(Error::IntegralPrecondition(format!(
            "endpoint exponent q = {q} must exceed -1"
        )));
    }
    let scale = scale.clamp(1.0, 512.0);
    const LEVELS: i32 = 24;
    let rule = gauss_legendre_16();
    let mut nodes = Vec::new();

    // One substituted half. `left` distinguishes t = s^m from 1 - t = s^m.
    let mut half = |own_exp: f64, other_exp: f64, left: bool| {
        let m = substitution_power(own_exp);
        let mf = m as f64;
        let s_top = 0.5f64.powf(1.0 / mf);
        let weight_exp = mf * (own_exp + 1.0) - 1.0;
        for level in 0..LEVELS {
            let hi = s_top * 0.5f64.powi(level);
            let lo = if level == LEVELS - 1 {
                0.0
            } else {
                hi * 0.5
            };
            // Keep enough cells across the panel for the smooth factor,
            // and enough near s = 1 that the other endpoint's algebraic
            // factor (singular just past s = 1 after the substitution)
            // stays deep inside each cell's Bernstein ellipse.
            let t_width = (hi.powi(m) - lo.powi(m)).abs();
            let smooth_parts = (t_width * 2.0 * scale).ceil();
            let edge_parts = ((hi - lo) / (1.0 - hi).max(1e-9)).ceil();
            let parts = (smooth_parts.max(edge_parts) as usize).clamp(1, 4096);
            let step = (hi - lo) / parts as f64;
            for part in 0..parts {
                let a = lo + step * part as f64;
                let b = a + step;
                let mid = 0.5 * (a + b);
                let rad = 0.5 * (b - a);
                for &(xi, wi) in rule.iter() {
                    let s = mid + rad * xi;
                    if s <= 0.0 {
                        continue;
                    }
                    let t_own = s.powi(m);
                    // t may round to exactly 0 or 1 when the graded panels
                    // descend below f64 resolution; the weight, computed in
                    // s-space, still carries the correct mass, so the node
                    // is kept. Callers must extend their factor
                    // continuously to the closed interval.
                    let t = if left { t_own } else { 1.0 - t_own };
                    // The opposite-endpoint factor is 1 - t_own in both
                    // halves (it is t itself on the right half).
                    let w = wi * rad * mf * s.powf(weight_exp) * (1.0 - t_own).powf(other_exp);
                    nodes.push((t, w));
                }
            }
        }
    };

    half(p, q, true);
    half(q, p, false);
    Ok(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::gamma_real;
    use approx::assert_relative_eq;

    #[test]
    fn gauss_rule_integrates_high_degree_polynomials() {
        // Exact for degree <= 31: check x^30 over [-1, 1] = 2/31.
        let rule = gauss_legendre_16();
        let total: f64 = rule.iter().map(|&(x, w)| w * x.powi(30)).sum();
        assert_relative_eq!(total, 2.0 / 31.0, max_relative = 1e-13);
        let mass: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert_relative_eq!(mass, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn beta_weights_reproduce_beta_function() {
        for &(p, q) in &[
            (-0.9, -0.5),
            (-0.5, 0.0),
            (0.0, 0.0),
            (0.7, -0.3),
            (1.3, 2.2),
            (-0.95, 1.0),
        ] {
            let nodes = beta_weighted_nodes(p, q, 1.0).unwrap();
            let total: f64 = nodes.iter().map(|&(_, w)| w).sum();
            let expected = gamma_real(p + 1.0) * gamma_real(q + 1.0) / gamma_real(p + q + 2.0);
            assert_relative_eq!(total, expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn beta_weights_handle_smooth_factors() {
        // \int_0^1 t^{-1/2} (1-t)^{-1/2} cos(8 t) dt, checked against a
        // dense reference computed with the same kernel at higher scale.
        let f = |t: f64| (8.0 * t).cos();
        let coarse: f64 = beta_weighted_nodes(-0.5, -0.5, 8.0)
            .unwrap()
            .iter()
            .map(|&(t, w)| w * f(t))
            .sum();
        let fine: f64 = beta_weighted_nodes(-0.5, -0.5, 64.0)
            .unwrap()
            .iter()
            .map(|&(t, w)| w * f(t))
            .sum();
        assert_relative_eq!(coarse, fine, max_relative = 1e-11);
    }

    #[test]
    fn beta_weights_reject_non_integrable_exponents() {
        assert!(beta_weighted_nodes(-1.0, 0.0, 1.0).is_err());
        assert!(beta_weighted_nodes(0.0, -1.2, 1.0).is_err());
    }
}
