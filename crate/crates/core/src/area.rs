//! Dirichlet (area) integrals `\Delta(r, g) = \iint_{|z|<r} |g'|^2 dA` by
//! three independent routes - a boundary contour integral, the coefficient
//! (Parseval) sum and a two-dimensional midpoint grid - together with the
//! closed-form expressions controlling `\Delta(r, z/F)` for the concave
//! wedge maps: the kernel factor `D(x)`, the angular profile `E(gamma)`,
//! the extremal angle `gamma_0` and the resulting bound constant `M`.

use num_complex::Complex64;
use serde::Serialize;

use crate::concave::{extremal_map, extremal_map_deriv, ConcaveMapSpec, FThetaMap};
use crate::error::{Error, Result};
use crate::hypergeom::UnitModulusParameter;
use crate::series::TruncatedSeries;

/// A map of the unit disc with an evaluable derivative. Evaluation is
/// fallible so poles and branch guards surface as errors instead of NaNs.
pub trait AnalyticMap {
    fn eval(&self, z: Complex64) -> Result<Complex64>;
    fn deriv(&self, z: Complex64) -> Result<Complex64>;
}

impl AnalyticMap for TruncatedSeries {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(TruncatedSeries::eval(self, z))
    }

    fn deriv(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.derivative().eval(z))
    }
}

impl AnalyticMap for ConcaveMapSpec {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        extremal_map(self, z)
    }

    fn deriv(&self, z: Complex64) -> Result<Complex64> {
        extremal_map_deriv(self, z)
    }
}

impl AnalyticMap for FThetaMap {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        FThetaMap::eval(self, z)
    }

    fn deriv(&self, z: Complex64) -> Result<Complex64> {
        FThetaMap::deriv(self, z)
    }
}

/// The Koebe map `z / (1 - z)^2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Koebe;

impl AnalyticMap for Koebe {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        let den = Complex64::new(1.0, 0.0) - z;
        if den.norm() < 1e-14 {
            return Err(Error::Singular("evaluation at the pole z = 1".into()));
        }
        Ok(z / (den * den))
    }

    fn deriv(&self, z: Complex64) -> Result<Complex64> {
        let den = Complex64::new(1.0, 0.0) - z;
        if den.norm() < 1e-14 {
            return Err(Error::Singular("evaluation at the pole z = 1".into()));
        }
        Ok((Complex64::new(1.0, 0.0) + z) / (den * den * den))
    }
}

/// The half-plane map `z / (1 - z)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HalfPlane;

impl AnalyticMap for HalfPlane {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        let den = Complex64::new(1.0, 0.0) - z;
        if den.norm() < 1e-14 {
            return Err(Error::Singular("evaluation at the pole z = 1".into()));
        }
        Ok(z / den)
    }

    fn deriv(&self, z: Complex64) -> Result<Complex64> {
        let den = Complex64::new(1.0, 0.0) - z;
        if den.norm() < 1e-14 {
            return Err(Error::Singular("evaluation at the pole z = 1".into()));
        }
        Ok(1.0 / (den * den))
    }
}

/// Ad-hoc analytic map from a pair of closures.
pub struct MapFns<E, D> {
    eval_fn: E,
    deriv_fn: D,
}

pub fn map_fns<E, D>(eval_fn: E, deriv_fn: D) -> MapFns<E, D>
where
    E: Fn(Complex64) -> Result<Complex64>,
    D: Fn(Complex64) -> Result<Complex64>,
{
    MapFns { eval_fn, deriv_fn }
}

impl<E, D> AnalyticMap for MapFns<E, D>
where
    E: Fn(Complex64) -> Result<Complex64>,
    D: Fn(Complex64) -> Result<Complex64>,
{
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        (self.eval_fn)(z)
    }

    fn deriv(&self, z: Complex64) -> Result<Complex64> {
        (self.deriv_fn)(z)
    }
}

/// Which quotient of a normalized map is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuotientKind {
    ZOverF,
    FOverZ,
}

/// `z/f` or `f/z` for a normalized map `f` (so the quotient extends
/// analytically across the origin with value `1/f'(0)` resp. `f'(0)`).
/// The derivative is formed from the quotient rule; it is rejected within
/// 1e-12 of the origin, where it would need the second derivative of `f` -
/// the integration routines never sample there.
pub struct DiscQuotient<M> {
    inner: M,
    kind: QuotientKind,
}

impl<M: AnalyticMap> DiscQuotient<M> {
    pub fn new(inner: M, kind: QuotientKind) -> Self {
        Self { inner, kind }
    }
}

impl<M: AnalyticMap> AnalyticMap for DiscQuotient<M> {
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() < 1e-12 {
            let d0 = self.inner.deriv(z)?;
            return match self.kind {
                QuotientKind::ZOverF => {
                    if d0.norm() == 0.0 {
                        Err(Error::Singular("f'(0) = 0 in a z/f quotient".into()))
                    } else {
                        Ok(1.0 / d0)
                    }
                }
                QuotientKind::FOverZ => Ok(d0),
            };
        }
        let f = self.inner.eval(z)?;
        match self.kind {
            QuotientKind::ZOverF => {
                if f.norm() == 0.0 {
                    return Err(Error::Singular("map vanishes away from the origin".into()));
                }
                Ok(z / f)
            }
            QuotientKind::FOverZ => Ok(f / z),
        }
    }

    fn deriv(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() < 1e-12 {
            return Err(Error::Singular(
                "quotient derivative at the origin needs the second derivative".into(),
            ));
        }
        let f = self.inner.eval(z)?;
        let fp = self.inner.deriv(z)?;
        match self.kind {
            QuotientKind::ZOverF => {
                if f.norm() == 0.0 {
                    return Err(Error::Singular("map vanishes away from the origin".into()));
                }
                Ok((f - z * fp) / (f * f))
            }
            QuotientKind::FOverZ => Ok((z * fp - f) / (z * z)),
        }
    }
}

/// How an [`AreaResult`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AreaMethod {
    Green,
    Parseval,
    Grid2d,
    Closed,
}

impl std::fmt::Display for AreaMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            AreaMethod::Green => "green",
            AreaMethod::Parseval => "parseval",
            AreaMethod::Grid2d => "grid2d",
            AreaMethod::Closed => "closed",
        };
        f.write_str(name)
    }
}

/// A computed area value with its method, cost and error estimate.
/// `signed_raw` keeps the contour integral's value before the absolute
/// value is taken (it is negative when the contour orientation flips).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AreaResult {
    pub value: f64,
    pub method: AreaMethod,
    pub nodes: u64,
    pub est_error: f64,
    pub signed_raw: Option<f64>,
}

/// Dirichlet integral over `|z| < r` by the boundary contour formula
/// `\Delta = (1/2) Re \oint conj(g) g' z dtheta`, discretized by the
/// trapezoid rule on `n_nodes` points (geometric convergence for maps
/// analytic past the circle). The error estimate compares against the
/// half-resolution subgrid.
pub fn area_green(map: &impl AnalyticMap, r: f64, n_nodes: u32) -> Result<AreaResult> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::RadiusOutOfRange(r));
    }
    if n_nodes < 16 {
        return Err(Error::InvalidParameter(
            "the contour rule needs at least 16 nodes".into(),
        ));
    }
    let n = (n_nodes as usize + 1) & !1usize; // even
    let mut full = 0.0f64;
    let mut half = 0.0f64;
    for j in 0..n {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        let z = Complex64::from_polar(r, theta);
        let g = map.eval(z)?;
        let gp = map.deriv(z)?;
        let term = (g.conj() * gp * z).re;
        full += term;
        if j % 2 == 0 {
            half += term;
        }
    }
    let raw = std::f64::consts::PI * full / n as f64;
    let raw_half = 2.0 * std::f64::consts::PI * half / n as f64;
    Ok(AreaResult {
        value: raw.abs(),
        method: AreaMethod::Green,
        nodes: n as u64,
        est_error: (raw.abs() - raw_half.abs()).abs(),
        signed_raw: Some(raw),
    })
}

/// Resolution of the two-dimensional midpoint rule in polar coordinates.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PolarGrid {
    pub radial: u32,
    pub angular: u32,
}

impl Default for PolarGrid {
    fn default() -> Self {
        Self {
            radial: 4096,
            angular: 256,
        }
    }
}

/// Dirichlet integral over `|z| < r` by the polar midpoint rule applied to
/// `|deriv(z)|^2`. The angular midpoint rule is exact for trigonometric
/// polynomials below the grid's degree; the radial error is O(h^2). The
/// error estimate compares against a half-resolution pass.
pub fn area_grid2d(
    deriv: impl Fn(Complex64) -> Result<Complex64>,
    r: f64,
    grid: PolarGrid,
) -> Result<AreaResult> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::RadiusOutOfRange(r));
    }
    if grid.radial < 16 || grid.angular < 16 {
        return Err(Error::InvalidParameter(
            "the 2-d grid needs at least 16 cells per direction".into(),
        ));
    }
    if (grid.radial as u64) * (grid.angular as u64) > (1u64 << 27) {
        return Err(Error::InvalidParameter(
            "the 2-d grid is larger than 2^27 cells".into(),
        ));
    }
    let pass = |n_rho: u32, n_theta: u32| -> Result<f64> {
        let d_rho = r / n_rho as f64;
        let d_theta = 2.0 * std::f64::consts::PI / n_theta as f64;
        let mut acc = 0.0f64;
        for i in 0..n_rho {
            let rho = (i as f64 + 0.5) * d_rho;
            let mut ring = 0.0f64;
            for j in 0..n_theta {
                let theta = (j as f64 + 0.5) * d_theta;
                let z = Complex64::from_polar(rho, theta);
                ring += deriv(z)?.norm_sqr();
            }
            acc += ring * rho;
        }
        Ok(acc * d_rho * d_theta)
    };
    let value = pass(grid.radial, grid.angular)?;
    let coarse = pass((grid.radial / 2).max(16), (grid.angular / 2).max(16))?;
    Ok(AreaResult {
        value,
        method: AreaMethod::Grid2d,
        nodes: grid.radial as u64 * grid.angular as u64
            + ((grid.radial / 2).max(16) as u64) * ((grid.angular / 2).max(16) as u64),
        est_error: (value - coarse).abs(),
        signed_raw: None,
    })
}

/// Packs a Parseval coefficient sum into an [`AreaResult`].
pub fn area_parseval(series: &TruncatedSeries, r: f64) -> Result<AreaResult> {
    let p = series.dirichlet_parseval(r)?;
    Ok(AreaResult {
        value: p.value,
        method: AreaMethod::Parseval,
        nodes: series.order() as u64 + 1,
        est_error: p.tail_bound,
        signed_raw: None,
    })
}

/// Largest Dirichlet integral of the quotient over the full normalized
/// univalent family: `2 pi r^2 (r^2 + 2)` for `z/f` (finite through
/// `r = 1`, value `6 pi`), and `2 pi r^2 (r^2 + 2) / (1 - r^2)^4` for
/// `f/z`, which diverges as `r -> 1`. Both are attained by the Koebe map.
pub fn yamashita_max(kind: QuotientKind, r: f64) -> Result<f64> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::RadiusOutOfRange(r));
    }
    let base = 2.0 * std::f64::consts::PI * r * r * (r * r + 2.0);
    match kind {
        QuotientKind::ZOverF => Ok(base),
        QuotientKind::FOverZ => {
            if r >= 1.0 {
                return Err(Error::Singular(
                    "the f/z extremal integral diverges at r = 1".into(),
                ));
            }
            Ok(base / (1.0 - r * r).powi(4))
        }
    }
}

/// The kernel factor `D(x) = 1/((1 + x)(1 - (-conj(x))^alpha))`, principal
/// branch. Singular exactly when `(-conj(x))^alpha = 1`, e.g. at
/// `alpha = 2`, `x = 1`; along that approach the combined expressions keep
/// the finite limit recorded in [`E_LIMIT_AT_ALPHA2_GAMMA0`].
pub fn d_of_x(alpha: f64, x: &UnitModulusParameter) -> Result<Complex64> {
    validate_opening(alpha)?;
    let psi = alpha * x.arg_neg_conj();
    // 1 - e^{i psi} written as 2 sin^2(psi/2) - i sin(psi): subtraction-free,
    // so the real part keeps full relative accuracy even when psi is tiny
    // and the direct difference would cancel.
    let half_sin = (0.5 * psi).sin();
    let factor = Complex64::new(2.0 * half_sin * half_sin, -psi.sin());
    if factor.norm() < 1e-12 {
        return Err(Error::Singular(format!(
            "(-conj(x))^alpha = 1 at alpha = {alpha}, gamma = {}",
            x.gamma()
        )));
    }
    Ok(1.0 / (x.one_plus_x() * factor))
}

/// Limiting value of the angular profile `E` along `gamma -> 0` at
/// `alpha = 2`, where [`e_gamma`] itself is singular. Callers must opt in
/// explicitly; the evaluators never substitute it silently.
pub const E_LIMIT_AT_ALPHA2_GAMMA0: f64 = -0.125;

fn validate_opening(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 1.0 || alpha > 2.0 {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    Ok(())
}

fn validate_profile_angle(gamma: f64) -> Result<()> {
    if !gamma.is_finite() || gamma.abs() >= std::f64::consts::PI {
        return Err(Error::AngleOutOfRange(gamma));
    }
    Ok(())
}

// tan(g/2) for g in [0, pi), routed through pi - g past the quarter turn:
// near the tangent's pole the complement form keeps full relative accuracy.
fn half_angle_tan(g: f64) -> f64 {
    if g > std::f64::consts::FRAC_PI_2 {
        let w = 0.5 * (std::f64::consts::PI - g);
        w.cos() / w.sin()
    } else {
        (0.5 * g).tan()
    }
}

// cos(g/2) for g in [0, pi), same complement trick near the zero crossing.
fn half_angle_cos(g: f64) -> f64 {
    if g > std::f64::consts::FRAC_PI_2 {
        (0.5 * (std::f64::consts::PI - g)).sin()
    } else {
        (0.5 * g).cos()
    }
}

/// The even angular profile
/// `E(gamma) = tan(|gamma|/2) cos(u) / (4 sin(u))`, `u = (pi - |gamma|) alpha / 2`,
/// equal to `tan(|gamma|/2) / (4 tan(u))` away from the removable points
/// `cos(u) = 0`. The only genuine pole on the admitted range is
/// `sin(u) = 0`, reached exactly at `alpha = 2`, `gamma = 0`.
pub fn e_gamma(alpha: f64, gamma: f64) -> Result<f64> {
    validate_opening(alpha)?;
    validate_profile_angle(gamma)?;
    let g = gamma.abs();
    let u = (std::f64::consts::PI - g) * alpha / 2.0;
    let su = u.sin();
    if su.abs() < 1e-12 {
        return Err(Error::Singular(format!(
            "sin((pi - |gamma|) alpha / 2) vanishes at alpha = {alpha}, gamma = {gamma}; \
             along gamma -> 0 at alpha = 2 the limit is E_LIMIT_AT_ALPHA2_GAMMA0"
        )));
    }
    Ok(half_angle_tan(g) * u.cos() / (4.0 * su))
}

/// Derivative of the angular profile on `gamma > 0`,
/// `E'(gamma) = [sin((pi-gamma) alpha) + alpha sin(gamma)]
///            / (16 cos^2(gamma/2) sin^2((pi-gamma) alpha / 2))`,
/// extended oddly to `gamma < 0`. At `gamma = 0` the returned value is the
/// one-sided limit `cot(pi alpha / 2) / 8` (the even profile has a corner
/// there, so the two-sided derivative does not exist).
pub fn e_prime(alpha: f64, gamma: f64) -> Result<f64> {
    validate_opening(alpha)?;
    validate_profile_angle(gamma)?;
    let g = gamma.abs();
    let u = (std::f64::consts::PI - g) * alpha / 2.0;
    let su = u.sin();
    if su.abs() < 1e-12 {
        return Err(Error::Singular(format!(
            "sin((pi - |gamma|) alpha / 2) vanishes at alpha = {alpha}, gamma = {gamma}"
        )));
    }
    let numer = (2.0 * u).sin() + alpha * g.sin();
    let half = half_angle_cos(g);
    let value = numer / (16.0 * half * half * su * su);
    Ok(if gamma < 0.0 { -value } else { value })
}

/// The largest admissible profile angle for a vertex modulus `b_abs`:
/// the opening of the range swept by `gamma` for maps with
/// `|b| in [1/(2 alpha), 1]`. Computed as
/// `pi - atan2(sqrt(4 a^2 b^2 - 1), 2 a^2 b^2 - 1)` when `2 a^2 b^2 >= 1`
/// and `atan2(sqrt(4 a^2 b^2 - 1), 1 - 2 a^2 b^2)` otherwise, which equals
/// `arccos(1/(2 alpha^2 b^2) - 1)`.
pub fn gamma0(alpha: f64, b_abs: f64) -> Result<f64> {
    validate_opening(alpha)?;
    let lower = 1.0 / (2.0 * alpha);
    if !b_abs.is_finite() || b_abs < lower - 1e-12 || b_abs > 1.0 + 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "vertex modulus {b_abs} outside [1/(2 alpha), 1] = [{lower}, 1]"
        )));
    }
    let a2b2 = alpha * alpha * b_abs * b_abs;
    let root = (4.0 * a2b2 - 1.0).max(0.0).sqrt();
    let t = 2.0 * a2b2 - 1.0;
    let g0 = if t >= 0.0 {
        std::f64::consts::PI - root.atan2(t)
    } else {
        root.atan2(-t)
    };
    Ok(g0)
}

/// The closed-form bound data for `\Delta(r, z/f) <= M pi r^2` over maps
/// with vertex modulus `b_abs`: `M = (alpha/4 + E_0) / (alpha b^2)` where
/// `E_0` maximises the angular profile over `[-gamma_0, gamma_0]`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MBound {
    pub m: f64,
    pub gamma0: f64,
    /// Maximum of the profile over the scan (dense grid plus local
    /// refinement) - the authoritative `E_0`.
    pub e0_scan: f64,
    /// Profile value at the endpoint `gamma_0` itself, when defined. Not
    /// always equal to `e0_scan`: the interior can dominate.
    pub e0_at_gamma0: Option<f64>,
    pub scan_argmax_gamma: f64,
    pub scan_nodes: usize,
    pub scan_skipped: usize,
}

/// Computes [`MBound`] by a 4097-node scan of the profile over
/// `[-gamma_0, gamma_0]` with ternary refinement around the best node.
/// Errors when the whole scan range is singular (`alpha = 2` with
/// `b_abs = 1/(2 alpha)`, where the range degenerates to the pole).
pub fn m_bound(alpha: f64, b_abs: f64) -> Result<MBound> {
    let g0 = gamma0(alpha, b_abs)?;
    let nodes = if g0 == 0.0 { 1usize } else { 4097 };
    let mut best: Option<(f64, f64)> = None; // (gamma, value)
    let mut skipped = 0usize;
    let mut grid = Vec::with_capacity(nodes);
    for i in 0..nodes {
        let gamma = if nodes == 1 {
            0.0
        } else {
            -g0 + 2.0 * g0 * i as f64 / (nodes - 1) as f64
        };
        grid.push(gamma);
        match e_gamma(alpha, gamma) {
            Ok(v) => {
                if best.map_or(true, |(_, bv)| v > bv) {
                    best = Some((gamma, v));
                }
            }
            Err(_) => skipped += 1,
        }
    }
    let (mut arg_best, mut e_best) = best.ok_or_else(|| {
        Error::Singular(format!(
            "the profile is singular on the entire scan range at alpha = {alpha}, |b| = {b_abs}"
        ))
    })?;
    if nodes > 1 {
        // Ternary refinement inside the bracket around the best node.
        let idx = grid
            .iter()
            .position(|&g| g == arg_best)
            .expect("argmax node is on the grid");
        let mut a = if idx == 0 { grid[0] } else { grid[idx - 1] };
        let mut b = if idx + 1 == nodes { grid[nodes - 1] } else { grid[idx + 1] };
        for _ in 0..200 {
            let m1 = a + (b - a) / 3.0;
            let m2 = b - (b - a) / 3.0;
            let v1 = e_gamma(alpha, m1).unwrap_or(f64::NEG_INFINITY);
            let v2 = e_gamma(alpha, m2).unwrap_or(f64::NEG_INFINITY);
            if v1 >= v2 {
                b = m2;
            } else {
                a = m1;
            }
        }
        let mid = 0.5 * (a + b);
        if let Ok(v) = e_gamma(alpha, mid) {
            if v > e_best {
                e_best = v;
                arg_best = mid;
            }
        }
    }
    let m = (alpha / 4.0 + e_best) / (alpha * b_abs * b_abs);
    Ok(MBound {
        m,
        gamma0: g0,
        e0_scan: e_best,
        e0_at_gamma0: e_gamma(alpha, g0).ok(),
        scan_argmax_gamma: arg_best,
        scan_nodes: nodes,
        scan_skipped: skipped,
    })
}

/// The closed-form expression
/// `(pi r^2 / (alpha b^2)) ((alpha - 1)/4 + Re D(x))` attached to the
/// wedge map with parameter `x` and vertex modulus `b_abs`. Note
/// `Re D(x) = 1/4 + E(gamma)` identically on the admitted range.
pub fn closed_area(alpha: f64, x: &UnitModulusParameter, b_abs: f64, r: f64) -> Result<f64> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::RadiusOutOfRange(r));
    }
    if !(b_abs > 0.0) || !b_abs.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "vertex modulus {b_abs} must be positive"
        )));
    }
    let d = d_of_x(alpha, x)?;
    Ok(std::f64::consts::PI * r * r / (alpha * b_abs * b_abs) * ((alpha - 1.0) / 4.0 + d.re))
}
