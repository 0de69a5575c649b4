//! Concave wedge maps, their probability-measure coefficient representation
//! and the associated boundary geometry.
//!
//! The central object is the normalized map
//! `F(z) = b (1 - ((1 + x w)/(1 - w))^alpha)` with `w = phi(z)` for a
//! Schwarz function `phi` and `b = -1/(alpha (1 + x) phi'(0))`, which fixes
//! `F(0) = 0`, `F'(0) = 1`. Its image omits a wedge with vertex `b`; with
//! the identity Schwarz function its Taylor coefficients are exactly the
//! hypergeometric values `B_n(alpha, x)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergeom::{coefficient_b_batch, UnitModulusParameter};

/// A purely atomic probability measure on the unit circle, kept as
/// angle/weight pairs. Weights are normalized to total mass one at
/// construction.
#[derive(Debug, Clone)]
pub struct DiscreteCircleMeasure {
    angles: Vec<f64>,
    weights: Vec<f64>,
}

impl DiscreteCircleMeasure {
    pub fn new(atoms: &[(f64, f64)]) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("measure needs at least one atom".into()));
        }
        let mut total = 0.0f64;
        for &(angle, weight) in atoms {
            if !angle.is_finite() || !weight.is_finite() || weight < 0.0 {
                return Err(Error::InvalidMeasure(format!(
                    "atom ({angle}, {weight}) is not a finite nonnegative pair"
                )));
            }
            total += weight;
        }
        if total <= 0.0 {
            return Err(Error::InvalidMeasure("total mass must be positive".into()));
        }
        Ok(Self {
            angles: atoms.iter().map(|a| a.0).collect(),
            weights: atoms.iter().map(|a| a.1 / total).collect(),
        })
    }

    /// The point mass at `e^{i angle}`.
    pub fn point_mass(angle: f64) -> Result<Self> {
        Self::new(&[(angle, 1.0)])
    }

    /// Uniformly random atoms with normalized uniform weights.
    pub fn random(n_atoms: usize, rng: &mut impl Rng) -> Result<Self> {
        if n_atoms == 0 {
            return Err(Error::InvalidMeasure("measure needs at least one atom".into()));
        }
        let atoms: Vec<(f64, f64)> = (0..n_atoms)
            .map(|_| {
                (
                    rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
                    rng.gen_range(1e-3..1.0),
                )
            })
            .collect();
        Self::new(&atoms)
    }

    /// `\int y^k d mu(y) = sum w_j e^{i k theta_j}`.
    pub fn moment(&self, k: u32) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&angle, &weight) in self.angles.iter().zip(&self.weights) {
            acc += weight * Complex64::from_polar(1.0, k as f64 * angle);
        }
        acc
    }

    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.angles.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }
}

/// The Schwarz function composed into the wedge kernel. `Quadratic { t }`
/// is `phi(z) = (1 - t) z + t z^2`, a univalent self-map of the disc
/// exactly for `t <= 1/3` (its critical point `-(1-t)/(2t)` then stays
/// outside the closed disc).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchwarzSpec {
    Identity,
    Quadratic { t: f64 },
}

impl SchwarzSpec {
    pub fn quadratic(t: f64) -> Result<Self> {
        if !(0.0..=1.0 / 3.0).contains(&t) {
            return Err(Error::InvalidParameter(format!(
                "quadratic Schwarz parameter t = {t} outside [0, 1/3]"
            )));
        }
        Ok(Self::Quadratic { t })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match *self {
            Self::Identity => z,
            Self::Quadratic { t } => (1.0 - t) * z + t * z * z,
        }
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        match *self {
            Self::Identity => Complex64::new(1.0, 0.0),
            Self::Quadratic { t } => Complex64::new(1.0 - t, 0.0) + 2.0 * t * z,
        }
    }

    pub fn deriv_origin(&self) -> f64 {
        match *self {
            Self::Identity => 1.0,
            Self::Quadratic { t } => 1.0 - t,
        }
    }
}

/// A normalized concave wedge map, optionally precomposed with a Schwarz
/// function and optionally carrying the measure of a coefficient
/// representation.
#[derive(Debug, Clone)]
pub struct ConcaveMapSpec {
    alpha: f64,
    x: UnitModulusParameter,
    b: Complex64,
    schwarz: SchwarzSpec,
    measure: Option<DiscreteCircleMeasure>,
}

impl ConcaveMapSpec {
    /// The wedge map itself: identity Schwarz function, no measure.
    pub fn normalized(alpha: f64, gamma: f64) -> Result<Self> {
        Self::build(alpha, gamma, SchwarzSpec::Identity, None)
    }

    pub fn with_schwarz(alpha: f64, gamma: f64, schwarz: SchwarzSpec) -> Result<Self> {
        Self::build(alpha, gamma, schwarz, None)
    }

    pub fn with_measure(
        alpha: f64,
        gamma: f64,
        measure: DiscreteCircleMeasure,
    ) -> Result<Self> {
        Self::build(alpha, gamma, SchwarzSpec::Identity, Some(measure))
    }

    fn build(
        alpha: f64,
        gamma: f64,
        schwarz: SchwarzSpec,
        measure: Option<DiscreteCircleMeasure>,
    ) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 1.0 || alpha > 2.0 {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        let x = UnitModulusParameter::new(gamma)?;
        let b = -1.0 / (alpha * x.one_plus_x() * schwarz.deriv_origin());
        Ok(Self {
            alpha,
            x,
            b,
            schwarz,
            measure,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.x.gamma()
    }

    pub fn x_param(&self) -> &UnitModulusParameter {
        &self.x
    }

    /// The omitted wedge's vertex, `-1/(alpha (1+x) phi'(0))`.
    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn schwarz(&self) -> SchwarzSpec {
        self.schwarz
    }

    pub fn measure(&self) -> Option<&DiscreteCircleMeasure> {
        self.measure.as_ref()
    }

    /// `((1 + x w)/(1 - w))^alpha`, principal branch. The base stays off
    /// the cut `(-inf, 0]` for `|w| < 1`; on the circle it only touches 0
    /// at the prevertex `w = -conj(x)`, where the power is continuous.
    fn kernel_power(&self, w: Complex64, exponent: f64) -> Result<Complex64> {
        let den = Complex64::new(1.0, 0.0) - w;
        if den.norm() < 1e-14 {
            return Err(Error::Singular(
                "evaluation at the boundary pole of the wedge map".into(),
            ));
        }
        let q = (Complex64::new(1.0, 0.0) + self.x.x() * w) / den;
        if q.re < 0.0 && q.im == 0.0 {
            return Err(Error::Singular(
                "kernel base crossed the branch cut".into(),
            ));
        }
        Ok(q.powf(exponent))
    }
}

/// Evaluates the spec's map at `z` (admits `|z| <= 1` except the pole
/// preimage).
pub fn extremal_map(spec: &ConcaveMapSpec, z: Complex64) -> Result<Complex64> {
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::RadiusOutOfRange(z.norm()));
    }
    let w = spec.schwarz.eval(z);
    let k = spec.kernel_power(w, spec.alpha)?;
    Ok(spec.b * (Complex64::new(1.0, 0.0) - k))
}

/// Derivative of the spec's map at `z`.
pub fn extremal_map_deriv(spec: &ConcaveMapSpec, z: Complex64) -> Result<Complex64> {
    if z.norm() > 1.0 + 1e-12 {
        return Err(Error::RadiusOutOfRange(z.norm()));
    }
    let w = spec.schwarz.eval(z);
    let den = Complex64::new(1.0, 0.0) - w;
    if den.norm() < 1e-14 {
        return Err(Error::Singular(
            "evaluation at the boundary pole of the wedge map".into(),
        ));
    }
    let k = spec.kernel_power(w, spec.alpha - 1.0)?;
    let kernel_deriv = spec.alpha * spec.x.one_plus_x() * k / (den * den);
    Ok(-spec.b * kernel_deriv * spec.schwarz.deriv(z))
}

/// The convex-image extreme maps
/// `f_theta(z) = (z - (1 - e^{i theta}) z^2 / 2) / (1 - z)^2`, whose
/// coefficients satisfy `a_n - (n+1)/2 = e^{i theta} (n-1)/2` exactly.
#[derive(Debug, Clone, Copy)]
pub struct FThetaMap {
    theta: f64,
}

impl FThetaMap {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "rotation angle {theta} is not finite"
            )));
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    fn half_factor(&self) -> Complex64 {
        (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, self.theta)) * 0.5
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let den = Complex64::new(1.0, 0.0) - z;
        if den.norm() < 1e-14 {
            return Err(Error::Singular("evaluation at the pole z = 1".into()));
        }
        let c = self.half_factor();
        Ok((z - c * z * z) / (den * den))
    }

    pub fn deriv(&self, z: Complex64) -> Result<Complex64> {
        let den = Complex64::new(1.0, 0.0) - z;
        if den.norm() < 1e-14 {
            return Err(Error::Singular("evaluation at the pole z = 1".into()));
        }
        let c = self.half_factor();
        Ok((Complex64::new(1.0, 0.0) + z - 2.0 * c * z) / (den * den * den))
    }

    /// Exact Taylor coefficient `a_n = n - (1 - e^{i theta})(n - 1)/2`.
    pub fn coefficient(&self, n: u32) -> Complex64 {
        if n == 0 {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::new(n as f64, 0.0) - self.half_factor() * (n as f64 - 1.0)
    }
}

/// Taylor coefficients `a_0..=a_{n_max}` of the map represented by the
/// spec's measure: `a_n = B_n(alpha, x) * moment(n-1)`.
pub fn coeffs_from_measure(spec: &ConcaveMapSpec, n_max: u32) -> Result<Vec<Complex64>> {
    let measure = spec
        .measure()
        .ok_or_else(|| Error::InvalidMeasure("spec carries no measure".into()))?;
    if n_max == 0 {
        return Err(Error::InvalidParameter("need n_max >= 1".into()));
    }
    let b = coefficient_b_batch(n_max, spec.alpha, &spec.x)?;
    let mut out = vec![Complex64::new(0.0, 0.0); n_max as usize + 1];
    for n in 1..=n_max as usize {
        out[n] = b[n] * measure.moment(n as u32 - 1);
    }
    Ok(out)
}

/// The measure-averaged map `sum_j w_j F(y_j z) / y_j`, whose Taylor
/// coefficients coincide with [`coeffs_from_measure`] when the spec's
/// Schwarz function is the identity.
pub fn herglotz_eval(spec: &ConcaveMapSpec, z: Complex64) -> Result<Complex64> {
    let measure = spec
        .measure()
        .ok_or_else(|| Error::InvalidMeasure("spec carries no measure".into()))?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (angle, weight) in measure.atoms() {
        let y = Complex64::from_polar(1.0, angle);
        acc += weight * extremal_map(spec, y * z)? / y;
    }
    Ok(acc)
}

/// Minimal distance from `w` to the image of the unit circle under the
/// spec's map. The curve is sampled on `theta in [eps, 2 pi - eps]`
/// (`eps = 1e-3`, excluding the pole at `theta = 0`) and every local
/// minimum is refined by ternary search.
pub fn boundary_distance(spec: &ConcaveMapSpec, w: Complex64, n_samples: u32) -> Result<f64> {
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::InvalidParameter("distance base point must be finite".into()));
    }
    if n_samples < 64 {
        return Err(Error::InvalidParameter(
            "boundary sampling needs at least 64 points".into(),
        ));
    }
    let eps = 1e-3;
    let lo = eps;
    let hi = 2.0 * std::f64::consts::PI - eps;
    let n = n_samples as usize;
    let dist = |theta: f64| -> Result<f64> {
        let z = Complex64::from_polar(1.0, theta);
        Ok((w - extremal_map(spec, z)?).norm())
    };
    let mut thetas = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let theta = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        thetas.push(theta);
        values.push(dist(theta)?);
    }
    let mut best = f64::INFINITY;
    for i in 0..n {
        best = best.min(values[i]);
        let is_local_min = (i == 0 || values[i] <= values[i - 1])
            && (i + 1 == n || values[i] <= values[i + 1]);
        if !is_local_min {
            continue;
        }
        let mut a = if i == 0 { lo } else { thetas[i - 1] };
        let mut b = if i + 1 == n { hi } else { thetas[i + 1] };
        for _ in 0..80 {
            let m1 = a + (b - a) / 3.0;
            let m2 = b - (b - a) / 3.0;
            if dist(m1)? <= dist(m2)? {
                b = m2;
            } else {
                a = m1;
            }
        }
        best = best.min(dist(0.5 * (a + b))?);
    }
    Ok(best)
}

/// The conformally invariant quotient
/// `d(F(a), boundary) / ((1 - |a|^2) |F'(a)|)`.
pub fn hyperbolic_product(spec: &ConcaveMapSpec, a: Complex64) -> Result<f64> {
    if a.norm() >= 1.0 {
        return Err(Error::RadiusOutOfRange(a.norm()));
    }
    let fa = extremal_map(spec, a)?;
    let fpa = extremal_map_deriv(spec, a)?;
    if fpa.norm() == 0.0 {
        return Err(Error::Singular("vanishing derivative".into()));
    }
    let d = boundary_distance(spec, fa, 8192)?;
    Ok(d / ((1.0 - a.norm_sqr()) * fpa.norm()))
}

/// Result of the randomized coefficient-bound sweep at a fixed opening
/// exponent: `worst_modulus_ratio` maximises `|a_n| / B_n(alpha, 1)` over
/// random measures and angles, `extremal_equality_gap` measures how exactly
/// the point mass at 1 with `x = 1` attains it, and `centered` (present
/// only at `alpha = 2`) tracks `|a_n - (n+1)/2| / ((n-1)/2)` on the same
/// random family.
#[derive(Debug, Clone)]
pub struct CoefficientBoundScan {
    pub alpha: f64,
    pub n_max: u32,
    pub trials: u32,
    pub seed: u64,
    pub worst_modulus_ratio: f64,
    pub worst_modulus_trial: u32,
    pub worst_modulus_n: u32,
    pub extremal_equality_gap: f64,
    pub modulus_pass: bool,
    pub centered: Option<CenteredScan>,
}

#[derive(Debug, Clone)]
pub struct CenteredScan {
    pub worst_ratio: f64,
    pub worst_trial: u32,
    pub worst_n: u32,
    pub pass: bool,
}

/// Tolerance slack for the randomized modulus-bound sweep.
pub const MODULUS_BOUND_SLACK: f64 = 1e-9;

pub fn coefficient_bound_report(
    alpha: f64,
    n_max: u32,
    trials: u32,
    seed: u64,
) -> Result<CoefficientBoundScan> {
    if !alpha.is_finite() || alpha <= 1.0 || alpha > 2.0 {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if n_max < 2 || trials == 0 {
        return Err(Error::InvalidParameter(
            "the bound sweep needs n_max >= 2 and at least one trial".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x1 = UnitModulusParameter::new(0.0)?;
    let bound: Vec<f64> = coefficient_b_batch(n_max, alpha, &x1)?
        .iter()
        .map(|v| v.norm())
        .collect();

    let mut worst_modulus_ratio = 0.0f64;
    let mut worst_modulus_trial = 0u32;
    let mut worst_modulus_n = 1u32;
    let centered_active = (alpha - 2.0).abs() < 1e-12;
    let mut worst_centered_ratio = 0.0f64;
    let mut worst_centered_trial = 0u32;
    let mut worst_centered_n = 2u32;

    for trial in 0..trials {
        // Keep |1 + x| away from 0 so the normalisation stays meaningful.
        let gamma = rng.gen_range(-2.25..2.25);
        let measure = DiscreteCircleMeasure::random(4, &mut rng)?;
        let spec = ConcaveMapSpec::with_measure(alpha, gamma, measure)?;
        let coeffs = coeffs_from_measure(&spec, n_max)?;
        for n in 2..=n_max as usize {
            let ratio = coeffs[n].norm() / bound[n];
            if ratio > worst_modulus_ratio {
                worst_modulus_ratio = ratio;
                worst_modulus_trial = trial;
                worst_modulus_n = n as u32;
            }
            if centered_active {
                let center = Complex64::new((n as f64 + 1.0) / 2.0, 0.0);
                let radius = (n as f64 - 1.0) / 2.0;
                let cr = (coeffs[n] - center).norm() / radius;
                if cr > worst_centered_ratio {
                    worst_centered_ratio = cr;
                    worst_centered_trial = trial;
                    worst_centered_n = n as u32;
                }
            }
        }
    }

    // The point mass at angle 0 with x = 1 attains the bound exactly.
    let extremal = ConcaveMapSpec::with_measure(alpha, 0.0, DiscreteCircleMeasure::point_mass(0.0)?)?;
    let extremal_coeffs = coeffs_from_measure(&extremal, n_max)?;
    let mut extremal_equality_gap = 0.0f64;
    for n in 1..=n_max as usize {
        let gap = (extremal_coeffs[n].norm() / bound[n] - 1.0).abs();
        extremal_equality_gap = extremal_equality_gap.max(gap);
    }

    Ok(CoefficientBoundScan {
        alpha,
        n_max,
        trials,
        seed,
        worst_modulus_ratio,
        worst_modulus_trial,
        worst_modulus_n,
        extremal_equality_gap,
        modulus_pass: worst_modulus_ratio <= 1.0 + MODULUS_BOUND_SLACK,
        centered: centered_active.then(|| CenteredScan {
            worst_ratio: worst_centered_ratio,
            worst_trial: worst_centered_trial,
            worst_n: worst_centered_n,
            pass: worst_centered_ratio <= 1.0 + MODULUS_BOUND_SLACK,
        }),
    })
}
