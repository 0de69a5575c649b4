//! Coefficient functionals, Dirichlet area integrals and closed-form area
//! bounds for concave wedge maps of the unit disc.
//!
//! The library is organised around one family of maps: for an opening
//! exponent `alpha in (1, 2]` and a unimodular parameter `x = e^{i gamma}`,
//! the wedge map
//!
//! ```text
//!     F(z) = b (1 - ((1 + x phi(z)) / (1 - phi(z)))^alpha),
//!     b = -1 / (alpha (1 + x) phi'(0)),
//! ```
//!
//! (with `phi` a Schwarz self-map of the disc) is univalent, concave, and
//! omits a wedge with vertex `b`. Its normalized Taylor coefficients are
//! the hypergeometric values `B_n(alpha, x) = F(1-n, 1-alpha; 2; 1+x)`;
//! averaging over a probability measure on the circle produces the general
//! coefficient functionals handled here.
//!
//! Modules:
//! - [`series`]: truncated power series with multiplication, real powers,
//!   composition and a tail-certified coefficient (Parseval) area sum.
//! - [`quad`]: Gauss-Legendre panels with algebraic endpoint weights.
//! - [`hypergeom`]: the coefficient polynomials `A_n` and `B_n` by
//!   terminating sum, three-term recurrence and Euler integral, plus the
//!   boundary domination sweeps.
//! - [`concave`]: the wedge maps, measure-driven coefficient functionals,
//!   boundary distance and hyperbolically scaled distance, and randomized
//!   coefficient-bound scans.
//! - [`area`]: Dirichlet integrals by contour, coefficient sum and 2-d
//!   grid; the kernel factor `D(x)`, angular profile `E`, extremal angle
//!   `gamma_0` and the closed bound constant `M`.
//! - [`verify`]: deterministic verification suites emitting one report row
//!   per claim instance, with JSON/CSV/pretty serialization.

pub mod area;
pub mod concave;
pub mod error;
pub mod hypergeom;
pub mod quad;
pub mod series;
pub mod verify;

pub use area::{
    area_green, area_grid2d, area_parseval, closed_area, d_of_x, e_gamma, e_prime, gamma0,
    m_bound, map_fns, yamashita_max, AnalyticMap, AreaMethod, AreaResult, DiscQuotient,
    HalfPlane, Koebe, MBound, MapFns, PolarGrid, QuotientKind, E_LIMIT_AT_ALPHA2_GAMMA0,
};
pub use concave::{
    boundary_distance, coeffs_from_measure, coefficient_bound_report, herglotz_eval,
    hyperbolic_product, CenteredScan, CoefficientBoundScan, ConcaveMapSpec,
    DiscreteCircleMeasure, FThetaMap, SchwarzSpec, MODULUS_BOUND_SLACK,
};
pub use error::{Error, Result};
pub use hypergeom::{
    coefficient_a, coefficient_b, coefficient_b_batch, domination_check, gamma_real,
    hyp2f1_euler, hyp2f1_terminating, hyp2f1_terminating_with_condition, pochhammer,
    DominationReport, UnitModulusParameter, ANGLE_EXCLUSION, DOMINATION_SLACK,
};
pub use num_complex::Complex64;
pub use series::{ParsevalArea, TruncatedSeries};
pub use verify::{
    reports_to_csv, reports_to_json, reports_to_pretty, run_all_suites, run_area_suite,
    run_coefficient_suite, run_geometry_suite, run_lemma_suite, GridSpec, VerificationReport,
};
