//! Independent correctness oracles: the Painlevé IV residual, Schrödinger and
//! Riccati residuals, finite-difference cross-validation of jet derivatives,
//! and the standard verification battery driven by the CLI.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::painleve::{piv_params, PivParams};
use crate::seeds::{Family, SeedSpec};

/// Residual tolerance for engine-generated P_IV solutions, relative to the
/// term scale of the equation's right-hand side.
pub const PIV_RESIDUAL_TOL: f64 = 1e-8;

/// Residual tolerance for seed-level Schrödinger checks.
pub const SEED_RESIDUAL_TOL: f64 = 1e-11;

/// Outcome of one residual evaluation. `pass` holds iff
/// |residual| ≤ tol·max(scale, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub x: f64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: Complex64,
    pub scale: f64,
    pub pass: bool,
}

impl ResidualReport {
    fn build(x: f64, lhs: Complex64, rhs: Complex64, scale: f64, tol: f64) -> Self {
        let residual = lhs - rhs;
        ResidualReport {
            x,
            lhs,
            rhs,
            residual,
            scale,
            pass: residual.norm() <= tol * scale.max(1.0),
        }
    }

    /// |residual| normalized by max(scale, 1).
    pub fn relative(&self) -> f64 {
        self.residual.norm() / self.scale.max(1.0)
    }
}

/// Painlevé IV residual of a jet of g at its center:
/// g″ − [g′²/(2g) + (3/2)g³ + 4xg² + 2(x²−a)g + b/g].
///
/// Returns `None` at zeros of g, where the b/g and g′²/(2g) terms leave the
/// residual undefined (skip-point, not a failure). The scale is the largest
/// |term| on the right-hand side, guarding the large cancellations there.
pub fn piv_residual(g: &Jet, params: &PivParams, tol: f64) -> Option<ResidualReport> {
    assert!(g.order() >= 2, "piv_residual needs a jet of order ≥ 2");
    let x = g.center();
    let gv = g.value();
    if gv.norm() <= 1e-12 * x.abs().max(1.0) {
        return None;
    }
    let gp = g.first();
    let gpp = g.second();
    let t1 = gp * gp / (2.0 * gv);
    let t2 = 1.5 * gv * gv * gv;
    let t3 = 4.0 * x * gv * gv;
    let t4 = 2.0 * (x * x - params.a) * gv;
    let t5 = Complex64::new(params.b, 0.0) / gv;
    let rhs = t1 + t2 + t3 + t4 + t5;
    let scale = [t1, t2, t3, t4, t5]
        .iter()
        .map(|t| t.norm())
        .fold(0.0f64, f64::max);
    Some(ResidualReport::build(x, gpp, rhs, scale, tol))
}

/// Schrödinger residual −½u″ + (x²/2)u − εu of a seed jet, together with the
/// Riccati-form residual α′ + α² − (x² − 2ε) for α = u′/u when u ≠ 0.
pub fn schrodinger_residual(u: &Jet, epsilon: f64) -> (ResidualReport, Option<ResidualReport>) {
    assert!(
        u.order() >= 2,
        "schrodinger_residual needs a jet of order ≥ 2"
    );
    let x = u.center();
    let uv = u.value();
    let upp = u.second();
    let lhs = -0.5 * upp + (x * x / 2.0) * uv;
    let rhs = epsilon * uv;
    let scale = [0.5 * upp.norm(), (x * x / 2.0) * uv.norm(), rhs.norm()]
        .into_iter()
        .fold(0.0f64, f64::max);
    let schrodinger = ResidualReport::build(x, lhs, rhs, scale, SEED_RESIDUAL_TOL);

    let riccati = u.log_derivative().ok().map(|alpha| {
        let a0 = alpha.value();
        let lhs = alpha.first() + a0 * a0;
        let rhs = Complex64::new(x * x - 2.0 * epsilon, 0.0);
        let scale = [alpha.first().norm(), (a0 * a0).norm(), rhs.norm()]
            .into_iter()
            .fold(0.0f64, f64::max);
        ResidualReport::build(x, lhs, rhs, scale, SEED_RESIDUAL_TOL)
    });
    (schrodinger, riccati)
}

/// Central 5-point first and second derivatives, O(h⁴). The function may
/// signal a singularity at a stencil node, which propagates as skip.
pub fn fd_cross_check<F>(f: F, x: f64, h: f64) -> Result<(Complex64, Complex64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if h <= 0.0 || !h.is_finite() {
        return Err(Error::Contract(format!(
            "fd_cross_check: h > 0 required, got {h}"
        )));
    }
    let fm2 = f(x - 2.0 * h)?;
    let fm1 = f(x - h)?;
    let f0 = f(x)?;
    let fp1 = f(x + h)?;
    let fp2 = f(x + 2.0 * h)?;
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    Ok((d1, d2))
}

/// One named spec in a verification battery. `params` overrides the derived
/// (a, b) pair, which is how deliberate-mismatch diagnostics are driven.
#[derive(Debug, Clone)]
pub struct BatteryEntry {
    pub name: String,
    pub spec: SeedSpec,
    pub params: Option<PivParams>,
}

impl BatteryEntry {
    pub fn new(name: &str, spec: SeedSpec) -> Self {
        BatteryEntry {
            name: name.into(),
            spec,
            params: None,
        }
    }
}

/// Per-entry outcome of a battery run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: String,
    pub pass: bool,
    pub max_relative_residual: f64,
    pub regular_samples: usize,
    pub irregular_samples: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BatteryReport {
    pub suites: Vec<SuiteResult>,
}

impl BatteryReport {
    pub fn all_pass(&self) -> bool {
        self.suites.iter().all(|s| s.pass)
    }
}

/// Verify each entry's sampled solution against the P_IV equation. A suite
/// passes when every regular sample with a defined residual passes at `tol`.
pub fn run_battery(
    entries: &[BatteryEntry],
    x_lo: f64,
    x_hi: f64,
    samples: usize,
    tol: f64,
) -> Result<BatteryReport> {
    if samples < 2 {
        return Err(Error::Contract(format!(
            "run_battery: samples ≥ 2 required, got {samples}"
        )));
    }
    let mut suites = Vec::with_capacity(entries.len());
    for entry in entries {
        let params = entry
            .params
            .unwrap_or_else(|| piv_params(entry.spec.family, entry.spec.epsilon1, entry.spec.k));
        let mut max_rel = 0.0f64;
        let mut pass = true;
        let mut regular = 0usize;
        let mut irregular = 0usize;
        for i in 0..samples {
            let x = x_lo + (x_hi - x_lo) * i as f64 / (samples - 1) as f64;
            let jet = match crate::painleve::g_jet(&entry.spec, x) {
                Ok(j) if j.value().is_finite() => j,
                Ok(_) | Err(Error::Singular { .. }) => {
                    irregular += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            regular += 1;
            if let Some(report) = piv_residual(&jet, &params, tol) {
                max_rel = max_rel.max(report.relative());
                pass &= report.pass;
            }
        }
        suites.push(SuiteResult {
            name: entry.name.clone(),
            pass,
            max_relative_residual: max_rel,
            regular_samples: regular,
            irregular_samples: irregular,
        });
    }
    Ok(BatteryReport { suites })
}

/// The standard battery: all three families, k ∈ {1,2,3}, real seeds inside
/// the nodeless region and complex seeds at ε₁ ∈ {1/2, 3/2, 5/2} and beyond.
pub fn standard_battery() -> Vec<BatteryEntry> {
    let c = Complex64::new;
    let real = |name: &str, eps: f64, nu: f64, k: usize, family: Family| {
        BatteryEntry::new(
            name,
            SeedSpec::from_nu(eps, nu, k, family).expect("valid battery spec"),
        )
    };
    let cplx = |name: &str, eps: f64, lam: Complex64, k: usize, family: Family| {
        BatteryEntry::new(
            name,
            SeedSpec::new(eps, lam, k, family).expect("valid battery spec"),
        )
    };
    vec![
        real("rational_k1", -2.5, 0.0, 1, Family::First),
        real("rational_k2", -2.5, 0.0, 2, Family::First),
        real("rational_k3", -2.5, 0.0, 3, Family::First),
        real("erf_real_k1", -2.5, 0.5, 1, Family::First),
        real("erf_real_k2", -0.5, 0.3, 2, Family::First),
        real("kummer_real_k1", -1.3, -0.4, 1, Family::First),
        real("bessel_real_k1", 0.0, 0.5, 1, Family::First),
        cplx("complex_f1_ehalf", 0.5, c(0.0, 1.0), 1, Family::First),
        cplx("complex_f2_3half_k2", 1.5, c(0.5, 0.8), 2, Family::Second),
        cplx("complex_f3_5half", 2.5, c(1.0, 1.0), 1, Family::Third),
        cplx("complex_bessel_f1", 0.0, c(0.0, 1.0), 1, Family::First),
        cplx("complex_erfi_f1", 2.5, c(1.0, 1.0), 1, Family::First),
        cplx("complex_f2_k1", 0.3, c(0.0, 0.7), 1, Family::Second),
        cplx("complex_f3_3half_k3", 1.5, c(0.6, 0.4), 3, Family::Third),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::seed_derivative_recurrence;
    use crate::painleve::g_solution;
    use crate::seeds::seed_jet;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Jet of 4x/(1+2x²) at x₀ built by jet algebra, independent of the engine.
    fn rational_g_jet(x0: f64, order: usize) -> Jet {
        let x = Jet::variable(x0, order);
        let num = x.scale(c(4.0, 0.0));
        let den = x
            .mul(&x)
            .scale(c(2.0, 0.0))
            .add(&Jet::constant(x0, c(1.0, 0.0), order));
        num.div(&den).unwrap()
    }

    #[test]
    fn piv_residual_rational_anchor() {
        // g″(1) = −16/27 and the bracket reproduces it exactly
        let jet = rational_g_jet(1.0, 3);
        let report = piv_residual(&jet, &PivParams { a: 3.0, b: -8.0 }, 1e-12).unwrap();
        assert!((report.lhs - c(-16.0 / 27.0, 0.0)).norm() < 1e-14);
        assert!((report.rhs - c(-16.0 / 27.0, 0.0)).norm() < 1e-13);
        assert!(report.residual.norm() < 1e-12);
        assert!(report.pass);
        // the rhs terms individually reach 162/27, so the scale must see that
        assert!(report.scale > 5.9);
    }

    #[test]
    fn piv_residual_skips_zero_g() {
        let jet = rational_g_jet(0.0, 3);
        assert!(piv_residual(&jet, &PivParams { a: 3.0, b: -8.0 }, 1e-8).is_none());
    }

    #[test]
    fn piv_residual_detects_wrong_parameters() {
        let jet = rational_g_jet(1.0, 3);
        let report = piv_residual(&jet, &PivParams { a: 3.0, b: -7.0 }, 1e-8).unwrap();
        assert!(!report.pass);
        assert!(report.residual.norm() > 0.1);
    }

    #[test]
    fn schrodinger_residual_ground_state() {
        for &x in &[0.0, 0.9, -2.4] {
            let g = (-x * x / 2.0f64).exp();
            let u = seed_derivative_recurrence(c(g, 0.0), c(-x * g, 0.0), 0.5, x, 4);
            let (s, _) = schrodinger_residual(&u, 0.5);
            assert!(s.residual.norm() <= 1e-13 * s.scale.max(1.0));
            assert!(s.pass);
        }
    }

    #[test]
    fn schrodinger_residual_seed_jets() {
        let u = seed_jet(-1.7, c(0.3, 0.5), 1.2, 5).unwrap();
        let (s, r) = schrodinger_residual(&u, -1.7);
        assert!(s.pass);
        let r = r.unwrap();
        assert!(r.pass);
    }

    #[test]
    fn riccati_alpha_form_rational_seed() {
        // u = e^{x²/2}(1+2x²): α′ + α² = x² + 5 at ε = −5/2
        let x0 = 0.8;
        let e = (x0 * x0 / 2.0f64).exp();
        let u0 = e * (1.0 + 2.0 * x0 * x0);
        let u1 = e * (5.0 * x0 + 2.0 * x0.powi(3));
        let u = seed_derivative_recurrence(c(u0, 0.0), c(u1, 0.0), -2.5, x0, 4);
        let (_, riccati) = schrodinger_residual(&u, -2.5);
        let r = riccati.unwrap();
        assert!(r.residual.norm() <= 1e-11 * r.scale.max(1.0));
    }

    #[test]
    fn riccati_equals_scaled_schrodinger() {
        let u = seed_jet(0.4, c(0.2, 0.9), -0.7, 5).unwrap();
        let (s, r) = schrodinger_residual(&u, 0.4);
        let r = r.unwrap();
        let expected = s.residual * (-2.0) / u.value();
        // both residuals are rounding noise; compare them at the term scale
        assert!((r.residual - expected).norm() <= 1e-10 * r.scale.max(1.0));
    }

    #[test]
    fn piv_residual_complex_bessel_case() {
        // ε₁ = 0, Λ = i, k = 1, family 1 sits at (a, b) = (1/2, −1/2)
        let spec = SeedSpec::new(0.0, c(0.0, 1.0), 1, Family::First).unwrap();
        let params = piv_params(Family::First, 0.0, 1);
        assert_eq!((params.a, params.b), (0.5, -0.5));
        let jet = crate::painleve::g_jet(&spec, 0.7).unwrap();
        let report = piv_residual(&jet, &params, PIV_RESIDUAL_TOL).unwrap();
        assert!(report.pass, "relative residual {}", report.relative());
        // independent finite-difference oracle for the g″ side
        let (_, d2) = fd_cross_check(|x| g_solution(&spec, x), 0.7, 1e-3).unwrap();
        assert!((d2 - report.lhs).norm() <= 1e-7 * report.lhs.norm().max(1.0));
    }

    #[test]
    fn fd_cross_check_cubic() {
        let f = |x: f64| Ok(c(x * x * x, 0.0));
        let (d1, d2) = fd_cross_check(f, 2.0, 1e-2).unwrap();
        assert!((d1 - c(12.0, 0.0)).norm() < 1e-7);
        assert!((d2 - c(12.0, 0.0)).norm() < 1e-5);
    }

    #[test]
    fn fd_cross_check_engine_g() {
        let spec = SeedSpec::from_nu(-2.5, 0.0, 1, Family::First).unwrap();
        let (d1, _) = fd_cross_check(|x| g_solution(&spec, x), 1.0, 1e-3).unwrap();
        assert!((d1 - c(-4.0 / 9.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn fd_cross_check_rejects_zero_step() {
        let f = |x: f64| Ok(c(x, 0.0));
        assert!(matches!(
            fd_cross_check(f, 0.0, 0.0),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn empty_battery_is_vacuously_green() {
        let report = run_battery(&[], -5.0, 5.0, 11, PIV_RESIDUAL_TOL).unwrap();
        assert!(report.suites.is_empty());
        assert!(report.all_pass());
    }

    #[test]
    fn battery_detects_perturbed_b() {
        let spec = SeedSpec::from_nu(-2.5, 0.0, 1, Family::First).unwrap();
        let good = piv_params(Family::First, -2.5, 1);
        let mut entry = BatteryEntry::new("perturbed_b", spec);
        entry.params = Some(PivParams {
            a: good.a,
            b: good.b + 1.0,
        });
        let report = run_battery(&[entry], -5.0, 5.0, 51, PIV_RESIDUAL_TOL).unwrap();
        assert!(!report.all_pass());
        assert!(report.suites[0].max_relative_residual > 1e-3);
    }

    #[test]
    fn battery_holds_through_order_five() {
        // the Darboux-tower route keeps higher orders inside tolerance where
        // a raw determinant has already lost the value to cancellation
        let entries = vec![
            BatteryEntry::new(
                "rational_k5",
                SeedSpec::from_nu(-2.5, 0.0, 5, Family::First).unwrap(),
            ),
            BatteryEntry::new(
                "complex_f2_k5",
                SeedSpec::new(2.5, c(1.0, 1.0), 5, Family::Second).unwrap(),
            ),
            BatteryEntry::new(
                "complex_f3_k5",
                SeedSpec::new(2.5, c(1.0, 1.0), 5, Family::Third).unwrap(),
            ),
        ];
        let report = run_battery(&entries, -5.0, 5.0, 201, PIV_RESIDUAL_TOL).unwrap();
        for suite in &report.suites {
            assert!(
                suite.pass,
                "{}: max relative residual {}",
                suite.name, suite.max_relative_residual
            );
        }
    }

    #[test]
    fn standard_battery_spans_requirements() {
        let battery = standard_battery();
        assert!(battery.len() >= 12);
        for family in Family::all() {
            assert!(
                battery.iter().any(|e| e.spec.family == family),
                "{family:?}"
            );
        }
        for k in 1..=3 {
            assert!(battery.iter().any(|e| e.spec.k == k), "k = {k}");
        }
        assert!(battery
            .iter()
            .any(|e| e.spec.is_real_case() && e.spec.epsilon1 < 0.5));
        for eps in [0.5, 1.5, 2.5] {
            assert!(battery
                .iter()
                .any(|e| e.spec.epsilon1 == eps && e.spec.lambda.im != 0.0));
        }
    }
}
