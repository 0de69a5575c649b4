//! Acceptance sweep: ten numbered criteria covering the coefficient
//! formulas, the domination and modulus bounds, the boundary geometry,
//! the disc area integrals and the closed-form area bound machinery.
//!
//! Each criterion prints exactly one `ACCEPTANCE criterion NN ...` verdict
//! line (visible under `cargo test --test acceptance -- --nocapture`) and
//! then asserts it. Three criteria state claims that are mathematically
//! false as written; those fail honestly, with the counterexample printed
//! in the verdict line.

use std::process::Command;

use concave_core::{
    area_green, area_grid2d, area_parseval, boundary_distance, coefficient_a,
    coefficient_b_batch, coefficient_bound_report, d_of_x, domination_check, e_gamma, e_prime,
    gamma0, hyperbolic_product, map_fns, run_area_suite, yamashita_max, AnalyticMap, Complex64,
    ConcaveMapSpec, DiscQuotient, FThetaMap, GridSpec, HalfPlane, Koebe, PolarGrid, QuotientKind,
    SchwarzSpec, TruncatedSeries, UnitModulusParameter,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PI: f64 = std::f64::consts::PI;

fn report(k: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE criterion {k:02} ({name}): {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {k} failed: {detail}");
}

/// Coefficients of (1 + x z) / (1 - z) up to the given order.
fn base_series(x: &UnitModulusParameter, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Complex64::new(1.0, 0.0); order + 1];
    for c in coeffs.iter_mut().skip(1) {
        *c = x.one_plus_x();
    }
    TruncatedSeries::new(coeffs).unwrap()
}

#[test]
fn criterion_01_linear_coefficients_and_power_series_route() {
    // On the symmetric axis the full coefficients are exactly 4n.
    let x = UnitModulusParameter::new(0.0).unwrap();
    let b = coefficient_b_batch(64, 2.0, &x).unwrap();
    let scale = 2.0 * x.one_plus_x();
    let mut worst_linear = 0.0f64;
    for n in 1..=64usize {
        let a = scale * b[n];
        let target = 4.0 * n as f64;
        worst_linear = worst_linear.max((a - Complex64::new(target, 0.0)).norm() / target);
    }

    // The same numbers appear as Taylor coefficients of the powered series
    // ((1 + x z)/(1 - z))^alpha, here computed by a generic power of a
    // truncated series rather than by the closed formula.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_series = 0.0f64;
    for trial in 0..20 {
        let alpha = if trial % 2 == 0 {
            rng.gen_range(1.05..=2.0)
        } else {
            rng.gen_range(-0.9..0.9)
        };
        let gamma: f64 = rng.gen_range(-2.9..2.9);
        let x = UnitModulusParameter::new(gamma).unwrap();
        let powered = base_series(&x, 50).pow_real(alpha).unwrap();
        for n in 1..=50u32 {
            let a = coefficient_a(n, alpha, &x).unwrap();
            let dev = (powered.coeff(n as usize) - a).norm() / a.norm().max(1.0);
            worst_series = worst_series.max(dev);
        }
    }

    let pass = worst_linear <= 1e-10 && worst_series <= 1e-10;
    report(
        1,
        "linear coefficients and power series route",
        pass,
        &format!(
            "worst linear deviation {worst_linear:.3e} (n to 64), worst series-route deviation \
             {worst_series:.3e} (20 random parameter pairs, orders to 50)"
        ),
    );
}

#[test]
fn criterion_02_coefficient_domination_sweeps() {
    // Openings above 1: the real-axis coefficient dominates over the whole
    // angular range.
    let mut worst_main = (0.0f64, 0.0f64);
    for &alpha in &[1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0] {
        let rep = domination_check(alpha, 50, 256).unwrap();
        if rep.worst_ratio > worst_main.0 {
            worst_main = (rep.worst_ratio, alpha);
        }
    }
    let main_pass = worst_main.0 <= 1.0 + 1e-12;

    // The analogous claim below opening 1. This is false: the ratio blows
    // up (and at alpha = 0 the even-order real-axis coefficients vanish
    // while the off-axis ones do not).
    let mut worst_small = (0.0f64, 0.0f64, 0u32, 0.0f64);
    let mut unbounded = 0usize;
    for &alpha in &[-0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75] {
        let rep = domination_check(alpha, 50, 256).unwrap();
        unbounded += rep.unbounded_cells;
        if rep.worst_ratio > worst_small.0 {
            worst_small = (rep.worst_ratio, alpha, rep.worst_n, rep.worst_gamma);
        }
    }
    let small_pass = worst_small.0 <= 1.0 + 1e-12 && unbounded == 0;

    report(
        2,
        "coefficient domination sweeps",
        main_pass && small_pass,
        &format!(
            "openings in [1.1, 2.0]: worst ratio {:.12} at alpha {} (holds); openings in \
             [-0.75, 0.75]: worst ratio {:.3} at alpha {}, n {}, gamma {:.3}, plus {} cells \
             with a vanishing real-axis bound (claim refuted)",
            worst_main.0, worst_main.1, worst_small.0, worst_small.1, worst_small.2,
            worst_small.3, unbounded
        ),
    );
}

#[test]
fn criterion_03_rotation_family_and_centered_bound() {
    // The one-parameter rotation family satisfies the centered equality
    // |a_n - (n+1)/2| = (n-1)/2 exactly.
    let mut worst_eq = 0.0f64;
    for k in 0..=8 {
        let theta = k as f64 * std::f64::consts::FRAC_PI_4;
        let map = FThetaMap::new(theta).unwrap();
        for n in 2..=30u32 {
            let a = map.coefficient(n);
            let lhs = (a - Complex64::new((n as f64 + 1.0) / 2.0, 0.0)).norm();
            let rhs = (n as f64 - 1.0) / 2.0;
            worst_eq = worst_eq.max((lhs - rhs).abs() / rhs);
        }
    }
    let part_a = worst_eq <= 1e-10;

    // The centered BOUND on random measure-generated maps at full opening.
    // False: measures spread over several atoms push the centered distance
    // well past (n-1)/2.
    let scan = coefficient_bound_report(2.0, 30, 100, 7).unwrap();
    let centered = scan.centered.expect("centered scan is defined at full opening");
    let part_b = centered.worst_ratio <= 1.0 + 1e-10;

    report(
        3,
        "rotation family equality and centered bound",
        part_a && part_b,
        &format!(
            "rotation equality deviation {worst_eq:.3e} (9 angles, orders 2..30); random \
             4-atom measures: worst centered ratio {:.3} at trial {}, order {} against a \
             claimed bound of 1 (claim refuted)",
            centered.worst_ratio, centered.worst_trial, centered.worst_n
        ),
    );
}

#[test]
fn criterion_04_modulus_bound_with_extremal_equality() {
    let mut worst_ratio = (0.0f64, 0.0f64);
    let mut worst_gap = (0.0f64, 0.0f64);
    for &alpha in &[1.25, 1.5, 1.75, 2.0] {
        let scan = coefficient_bound_report(alpha, 30, 100, 7).unwrap();
        if scan.worst_modulus_ratio > worst_ratio.0 {
            worst_ratio = (scan.worst_modulus_ratio, alpha);
        }
        if scan.extremal_equality_gap > worst_gap.0 {
            worst_gap = (scan.extremal_equality_gap, alpha);
        }
    }
    let pass = worst_ratio.0 <= 1.0 + 1e-10 && worst_gap.0 <= 1e-10;
    report(
        4,
        "modulus bound with extremal equality",
        pass,
        &format!(
            "worst modulus ratio {:.12} at alpha {} (100 random measures each, orders to 30); \
             point mass at angle zero attains the bound with gap {:.3e}",
            worst_ratio.0, worst_ratio.1, worst_gap.0
        ),
    );
}

#[test]
fn criterion_05_boundary_distance_and_hyperbolic_product() {
    // Distance from the origin to the image boundary against the vertex
    // modulus 1/(|1 + x| alpha). The equality only holds while the origin
    // stays inside the vertex normal cone (alpha |gamma| <= (alpha - 1) pi);
    // at (1.25, +-pi/3) the nearest point is the foot of a perpendicular
    // onto a wedge edge and the claim fails by 1 - cos(pi/12).
    let mut failing = Vec::new();
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for &alpha in &[1.25, 1.5, 2.0] {
        for &gamma in &[0.0, std::f64::consts::FRAC_PI_3, -std::f64::consts::FRAC_PI_3] {
            let spec = ConcaveMapSpec::normalized(alpha, gamma).unwrap();
            let d = boundary_distance(&spec, Complex64::new(0.0, 0.0), 1 << 14).unwrap();
            let claimed = 1.0 / (spec.x_param().abs_one_plus_x() * alpha);
            let dev = (d / claimed - 1.0).abs();
            if dev > 1e-4 {
                failing.push(format!("(alpha {alpha}, gamma {gamma:.4}) deviation {dev:.5}"));
            }
            if dev > worst.0 {
                worst = (dev, alpha, gamma);
            }
        }
    }
    let part_a = failing.is_empty();

    // The hyperbolically scaled boundary distance stays within
    // [1/(2 alpha), 1] on a polar sample of the disc |a| <= 0.8.
    let mut range_ok = true;
    let mut observed = (f64::INFINITY, f64::NEG_INFINITY);
    for &alpha in &[1.25, 1.5, 2.0] {
        for &gamma in &[0.0, std::f64::consts::FRAC_PI_3, -std::f64::consts::FRAC_PI_3] {
            let spec = ConcaveMapSpec::normalized(alpha, gamma).unwrap();
            let lower = 1.0 / (2.0 * alpha);
            for i in 1..=5u32 {
                let rad = 0.16 * i as f64;
                for j in 0..8u32 {
                    let phi = 2.0 * PI * j as f64 / 8.0 + 0.1;
                    let p =
                        hyperbolic_product(&spec, Complex64::from_polar(rad, phi)).unwrap();
                    observed = (observed.0.min(p), observed.1.max(p));
                    if !(p >= lower && p <= 1.0 + 5e-3) {
                        range_ok = false;
                    }
                }
            }
        }
    }

    report(
        5,
        "boundary distance and hyperbolic product",
        part_a && range_ok,
        &format!(
            "distance formula: {} of 9 cells hold, failing cells [{}] (claim refuted off the \
             symmetry axis at small openings); hyperbolic product observed in [{:.4}, {:.4}] \
             with per-opening floor respected: {}",
            9 - failing.len(),
            failing.join("; "),
            observed.0,
            observed.1,
            range_ok
        ),
    );
}

#[test]
fn criterion_06_quotient_area_closed_forms() {
    // z over the full-opening extremal map: compare all three generic
    // methods against 2 pi r^2 (r^2 + 2).
    let mut worst_zk = 0.0f64;
    for &r in &[0.25, 0.5, 0.75, 0.9] {
        let closed = yamashita_max(QuotientKind::ZOverF, r).unwrap();
        let q = DiscQuotient::new(Koebe, QuotientKind::ZOverF);
        let g = area_green(&q, r, 4096).unwrap();
        let poly = TruncatedSeries::new(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(-2.0, 0.0),
            Complex64::new(1.0, 0.0),
        ])
        .unwrap();
        let p = area_parseval(&poly, r).unwrap();
        let grid = area_grid2d(
            |z| q.deriv(z),
            r,
            PolarGrid {
                radial: 8192,
                angular: 64,
            },
        )
        .unwrap();
        for v in [g.value, p.value, grid.value] {
            worst_zk = worst_zk.max((v - closed).abs() / closed);
        }
    }
    let part_a = worst_zk <= 1e-8;

    // z over the half-plane map: the quotient derivative is a unimodular
    // constant, so every route must hit pi r^2 almost exactly.
    let mut worst_zj = 0.0f64;
    for &r in &[0.25, 0.5, 0.75, 0.9] {
        let closed = PI * r * r;
        let q = DiscQuotient::new(HalfPlane, QuotientKind::ZOverF);
        let g = area_green(&q, r, 1024).unwrap();
        let poly = TruncatedSeries::new(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ])
        .unwrap();
        let p = area_parseval(&poly, r).unwrap();
        let grid = area_grid2d(
            |z| q.deriv(z),
            r,
            PolarGrid {
                radial: 256,
                angular: 16,
            },
        )
        .unwrap();
        for v in [g.value, p.value, grid.value] {
            worst_zj = worst_zj.max((v - closed).abs() / closed);
        }
    }
    let part_b = worst_zj <= 1e-10;

    // The reciprocal quotient grows like (1 - r^2)^{-4}; the series route
    // must certify its truncation tail below the comparison tolerance.
    let mut worst_kz = 0.0f64;
    let mut tail_certified = true;
    for &r in &[0.25, 0.5, 0.75] {
        let closed = yamashita_max(QuotientKind::FOverZ, r).unwrap();
        let series = TruncatedSeries::new(
            (0..=256)
                .map(|k| Complex64::new(k as f64 + 1.0, 0.0))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let p = area_parseval(&series, r).unwrap();
        if p.est_error > 1e-7 * closed {
            tail_certified = false;
        }
        let q = DiscQuotient::new(Koebe, QuotientKind::FOverZ);
        let g = area_green(&q, r, 8192).unwrap();
        for v in [p.value, g.value] {
            worst_kz = worst_kz.max((v - closed).abs() / closed);
        }
    }
    let part_c = worst_kz <= 1e-7 && tail_certified;

    report(
        6,
        "quotient area closed forms",
        part_a && part_b && part_c,
        &format!(
            "z/(full-opening map): worst deviation {worst_zk:.3e} across three methods and four \
             radii; z/(half-plane map): worst deviation {worst_zj:.3e}; reciprocal quotient: \
             worst deviation {worst_kz:.3e} with truncation tail certified: {tail_certified}"
        ),
    );
}

#[test]
fn criterion_07_area_change_of_variables() {
    let gamma = std::f64::consts::FRAC_PI_3;
    let r = 0.5;
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for &alpha in &[1.5, 2.0] {
        for &t in &[0.1, 0.2, 0.3] {
            let spec = ConcaveMapSpec::normalized(alpha, gamma).unwrap();
            let phi = SchwarzSpec::quadratic(t).unwrap();
            let q = DiscQuotient::new(spec, QuotientKind::ZOverF);
            let composed_deriv = |z: Complex64| -> concave_core::Result<Complex64> {
                Ok(q.deriv(phi.eval(z))? * phi.deriv(z))
            };
            let composed = map_fns(|z| q.eval(phi.eval(z)), composed_deriv);
            let lhs = area_green(&composed, r, 2048).unwrap();
            let rhs = area_grid2d(
                composed_deriv,
                r,
                PolarGrid {
                    radial: 2048,
                    angular: 128,
                },
            )
            .unwrap();
            let dev = (lhs.value - rhs.value).abs() / rhs.value;
            if dev > worst.0 {
                worst = (dev, alpha, t);
            }
        }
    }
    let pass = worst.0 <= 1e-5;
    report(
        7,
        "area change of variables",
        pass,
        &format!(
            "contour route against the chain-rule grid integrand: worst relative deviation \
             {:.3e} at alpha {}, quadratic parameter {}",
            worst.0, worst.1, worst.2
        ),
    );
}

#[test]
fn criterion_08_kernel_identities() {
    let alphas = [1.25, 1.5, 1.75, 2.0];
    let gamma_at = |i: usize| -> f64 { -PI + 1e-3 + (2.0 * PI - 2e-3) * i as f64 / 255.0 };

    // Re(1/(1 - (-conj x)^alpha)) = 1/2, evaluated through the
    // subtraction-free half-angle denominator.
    let mut worst_half = 0.0f64;
    for &alpha in &alphas {
        for i in 0..256 {
            let gamma = gamma_at(i);
            let x = UnitModulusParameter::new(gamma).unwrap();
            let psi = alpha * x.arg_neg_conj();
            let hs = (0.5 * psi).sin();
            let den = Complex64::new(2.0 * hs * hs, -psi.sin());
            worst_half = worst_half.max(((1.0 / den).re - 0.5).abs());
        }
    }

    // Re D(x) = 1/4 + E(gamma), relative to the profile's size (both sides
    // grow without bound toward the angular endpoints).
    let mut worst_dec = 0.0f64;
    for &alpha in &alphas {
        for i in 0..256 {
            let gamma = gamma_at(i);
            let x = UnitModulusParameter::new(gamma).unwrap();
            let d = d_of_x(alpha, &x).unwrap();
            let e = e_gamma(alpha, gamma).unwrap();
            worst_dec = worst_dec.max((d.re - 0.25 - e).abs() / e.abs().max(1.0));
        }
    }

    // The profile derivative against central differences.
    let mut worst_fd = 0.0f64;
    let h = 1e-5;
    for &alpha in &alphas {
        for k in 1..=5 {
            let gamma = 0.5 * k as f64;
            let ep = e_prime(alpha, gamma).unwrap();
            let fd = (e_gamma(alpha, gamma + h).unwrap() - e_gamma(alpha, gamma - h).unwrap())
                / (2.0 * h);
            worst_fd = worst_fd.max((ep - fd).abs());
        }
    }

    // Endpoint values of the admissible-angle function.
    let mut worst_endpoint = 0.0f64;
    for &alpha in &alphas {
        let at_floor = gamma0(alpha, 1.0 / (2.0 * alpha)).unwrap();
        worst_endpoint = worst_endpoint.max(at_floor.abs());
        let at_mid = gamma0(alpha, 1.0 / (alpha * 2.0f64.sqrt())).unwrap();
        worst_endpoint = worst_endpoint.max((at_mid - 0.5 * PI).abs());
        let at_one = gamma0(alpha, 1.0).unwrap();
        let reference = (1.0 / (2.0 * alpha * alpha) - 1.0).acos();
        worst_endpoint = worst_endpoint.max((at_one - reference).abs());
    }

    let pass = worst_half <= 1e-12 && worst_dec <= 1e-12 && worst_fd <= 1e-6
        && worst_endpoint <= 1e-12;
    report(
        8,
        "kernel identities",
        pass,
        &format!(
            "half identity deviation {worst_half:.3e}, decomposition deviation {worst_dec:.3e} \
             (relative), derivative vs central differences {worst_fd:.3e}, endpoint deviation \
             {worst_endpoint:.3e} over 4 openings x 256 angles"
        ),
    );
}

#[test]
fn criterion_09_area_bound_table_is_informational() {
    let rows = run_area_suite(&GridSpec::default()).unwrap();
    let cells: Vec<_> = rows
        .iter()
        .filter(|r| r.claim_id == "area_bound_comparison")
        .collect();

    let mut exceeds = 0usize;
    for cell in &cells {
        let p = &cell.params;
        if p["exceeds_bound"].as_bool() == Some(true) {
            exceeds += 1;
        }
        println!(
            "  cell alpha {} gamma {:+.4} r {}: quadrature {} closed {} bound {} exceeds {}",
            p["alpha"], p["gamma"].as_f64().unwrap_or(f64::NAN), p["r"], p["green"],
            p["closed_area"], cell.bound, p["exceeds_bound"]
        );
    }

    // The table is informational: its rows must exist, carry the flag and
    // never fail, whatever the comparisons show.
    let structural = cells.len() == 24 && cells.iter().all(|c| c.pass);
    report(
        9,
        "area bound table is informational",
        structural,
        &format!(
            "24 cells emitted, {exceeds} flagged where the measured integral exceeds the scaled \
             bound constant; rows are informational and never gate the run"
        ),
    );
}

#[test]
fn criterion_10_verification_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for name in ["first.json", "second.json"] {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_concave"))
            .args(["verify", "all", "--seed", "7", "--format", "json", "--out"])
            .arg(&path)
            .status()
            .unwrap();
        // The suites contain honestly failing rows, so the run exits 1;
        // anything else signals a crash or a usage error.
        assert_eq!(status.code(), Some(1), "unexpected exit from verify all");
        outputs.push(std::fs::read(&path).unwrap());
    }
    let identical = outputs[0] == outputs[1] && !outputs[0].is_empty();
    report(
        10,
        "verification reports are deterministic",
        identical,
        &format!(
            "two runs of the full suite with the same seed produced {} bytes each, byte-identical: \
             {identical}",
            outputs[0].len()
        ),
    );
}
