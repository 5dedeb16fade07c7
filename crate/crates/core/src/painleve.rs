//! The Painlevé IV solution factory g_k = −x − (ln ψ)′, the (a, b) parameter
//! maps for the three solution families, hierarchy classification, the
//! third-order-ladder functions f and h, the potential cross-check, grid
//! sampling, and the closed-form catalog.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::seeds::{Family, SeedSpec};
use crate::susy::SusySystem;
use crate::verify::{piv_residual, ResidualReport, PIV_RESIDUAL_TOL};

/// The point (a, b) in the Painlevé IV parameter plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PivParams {
    pub a: f64,
    pub b: f64,
}

/// Which class of special functions a solution reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HierarchyTag {
    ConfluentHypergeometric,
    Erf,
    Erfi,
    Rational,
    BesselI,
}

impl HierarchyTag {
    pub fn name(self) -> &'static str {
        match self {
            HierarchyTag::ConfluentHypergeometric => "ConfluentHypergeometric",
            HierarchyTag::Erf => "Erf",
            HierarchyTag::Erfi => "Erfi",
            HierarchyTag::Rational => "Rational",
            HierarchyTag::BesselI => "BesselI",
        }
    }
}

/// One exported curve point. Irregular samples keep the grid slot but carry
/// no values; a regular sample with `residual: None` sits on a zero of g,
/// where the residual is undefined (skip-point).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionSample {
    pub x: f64,
    pub g: Option<Complex64>,
    pub residual: Option<Complex64>,
    pub regular: bool,
}

/// A sampled solution with its parameters and hierarchy tag.
#[derive(Debug, Clone, PartialEq)]
pub struct PivSolution {
    pub spec: SeedSpec,
    pub params: PivParams,
    pub tag: HierarchyTag,
    pub samples: Vec<SolutionSample>,
}

impl PivSolution {
    pub fn regular_count(&self) -> usize {
        self.samples.iter().filter(|s| s.regular).count()
    }

    pub fn irregular_count(&self) -> usize {
        self.samples.len() - self.regular_count()
    }
}

/// (a, b) from the cyclic assignment of the extremal energies
/// (E₁, E₂, E₃) = (ε₁−k+1, 1/2, ε₁+1) into a = 𝔈₂+𝔈₃−2𝔈₁−1, b = −2(𝔈₂−𝔈₃)².
pub fn piv_params(family: Family, epsilon1: f64, k: usize) -> PivParams {
    let e1 = epsilon1 - (k as f64 - 1.0);
    let e2 = 0.5;
    let e3 = epsilon1 + 1.0;
    let (p1, p2, p3) = match family {
        Family::First => (e1, e2, e3),
        Family::Second => (e2, e3, e1),
        Family::Third => (e3, e1, e2),
    };
    PivParams {
        a: p2 + p3 - 2.0 * p1 - 1.0,
        b: -2.0 * (p2 - p3).powi(2),
    }
}

/// Half-integer/integer detection tolerance on ε₁.
const ENERGY_TOL: f64 = 1e-12;

fn near_nonneg_integer(t: f64) -> bool {
    let r = t.round();
    r >= 0.0 && (t - r).abs() <= 2.0 * ENERGY_TOL
}

/// Classify a seed's hierarchy from its energy and mixing constant.
pub fn classify_hierarchy(epsilon1: f64, lambda: Complex64) -> HierarchyTag {
    let lambda_zero = lambda.re == 0.0 && lambda.im == 0.0;
    // rational: ε₁ = −(4m+1)/2 with Λ = 0
    if lambda_zero && near_nonneg_integer((-2.0 * epsilon1 - 1.0) / 4.0) {
        return HierarchyTag::Rational;
    }
    // error function: ε₁ = −(2m+1)/2
    if near_nonneg_integer((-2.0 * epsilon1 - 1.0) / 2.0) {
        return HierarchyTag::Erf;
    }
    // imaginary error function: ε₁ = +(2m+1)/2
    if near_nonneg_integer((2.0 * epsilon1 - 1.0) / 2.0) {
        return HierarchyTag::Erfi;
    }
    // first-kind modified Bessel: ε₁ = −m
    if near_nonneg_integer(-epsilon1) {
        return HierarchyTag::BesselI;
    }
    HierarchyTag::ConfluentHypergeometric
}

/// Jet of g at x, of order k+2 (enough for g, g′, g″ and one to spare).
pub fn g_jet(spec: &SeedSpec, x: f64) -> Result<Jet> {
    let sys = SusySystem::new(*spec);
    let out_order = spec.k + 2;
    let ld = sys.extremal_logderiv_jet(spec.family, x, out_order)?;
    let xjet = Jet::variable(x, ld.order());
    Ok(xjet.neg().sub(&ld))
}

/// g(x) for the spec's family.
pub fn g_solution(spec: &SeedSpec, x: f64) -> Result<Complex64> {
    Ok(g_jet(spec, x)?.value())
}

/// The third-order-ladder companion functions: f = x + g and
/// h = −x² + g′/2 − g²/2 − 2xg + a.
pub fn ladder_functions_fh(
    g: Complex64,
    g_prime: Complex64,
    x: f64,
    a: f64,
) -> (Complex64, Complex64) {
    let f = Complex64::new(x, 0.0) + g;
    let h = Complex64::new(-x * x + a, 0.0) + g_prime / 2.0 - g * g / 2.0 - 2.0 * x * g;
    (f, h)
}

/// Potential reconstructed from a solution:
/// V = x²/2 − g′/2 + g²/2 + xg + 𝔈₁ − 1/2.
pub fn potential_from_g(g: Complex64, g_prime: Complex64, x: f64, e1: f64) -> Complex64 {
    Complex64::new(x * x / 2.0 + e1 - 0.5, 0.0) - g_prime / 2.0 + g * g / 2.0 + x * g
}

/// Sample g over a uniform grid, attaching residual reports per point.
/// Singular construction points are emitted as flagged irregular samples so
/// the grid stays aligned for plotting.
pub fn solve_curve(
    spec: &SeedSpec,
    x_lo: f64,
    x_hi: f64,
    samples: usize,
    tol: f64,
) -> Result<PivSolution> {
    if samples < 2 {
        return Err(Error::Contract(format!(
            "solve_curve: samples ≥ 2 required, got {samples}"
        )));
    }
    if !x_lo.is_finite() || !x_hi.is_finite() || x_lo >= x_hi {
        return Err(Error::Contract("solve_curve: x_lo < x_hi required".into()));
    }
    let params = piv_params(spec.family, spec.epsilon1, spec.k);
    let tag = classify_hierarchy(spec.epsilon1, spec.lambda);
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let x = x_lo + (x_hi - x_lo) * i as f64 / (samples - 1) as f64;
        let sample = match g_jet(spec, x) {
            Ok(jet) if jet.value().is_finite() => {
                let residual = piv_residual(&jet, &params, tol).map(|r: ResidualReport| r.residual);
                SolutionSample {
                    x,
                    g: Some(jet.value()),
                    residual,
                    regular: true,
                }
            }
            Ok(_) => SolutionSample {
                x,
                g: None,
                residual: None,
                regular: false,
            },
            Err(Error::Singular { .. }) => SolutionSample {
                x,
                g: None,
                residual: None,
                regular: false,
            },
            Err(e) => return Err(e),
        };
        out.push(sample);
    }
    Ok(PivSolution {
        spec: *spec,
        params,
        tag,
        samples: out,
    })
}

/// Same as [`solve_curve`] with the default residual tolerance.
pub fn solve_curve_default(
    spec: &SeedSpec,
    x_lo: f64,
    x_hi: f64,
    samples: usize,
) -> Result<PivSolution> {
    solve_curve(spec, x_lo, x_hi, samples, PIV_RESIDUAL_TOL)
}

pub mod catalog {
    //! Closed forms of the g₁/g₂/g₃ hierarchy members, evaluated exactly as
    //! functions of x, together with the engine spec each one reproduces.
    //!
    //! The Bessel-hierarchy expressions hold verbatim for x > 0; for x < 0 the
    //! odd seed component flips sign, which enters as ν → sign(x)·ν (or
    //! Λ → sign(x)·Λ). x = 0 is a pole of those printed expressions even
    //! though the underlying solution is finite there.

    use super::*;
    use crate::numerics::{bessel_i, erf, erfi, gamma, kummer_1f1};

    const SQRT_PI: f64 = 1.7724538509055160273;

    /// The eleven cataloged closed forms.
    #[derive(Debug, Clone, Copy, PartialEq)]
    pub enum ClosedFormCase {
        /// g₁(x; ε₁) for the real seed, parameters (ε₁, ν₁).
        RealKummer { epsilon1: f64, nu: f64 },
        /// g₁(x; −5/2) of the error-function hierarchy.
        RealErfK1 { nu: f64 },
        /// g₂(x; −1/2) of the error-function hierarchy.
        RealErfK2 { nu: f64 },
        /// g₁(x; −5/2) = 4x/(1+2x²).
        RationalK1,
        /// g₂(x; −5/2).
        RationalK2,
        /// g₃(x; −5/2).
        RationalK3,
        /// g₁(x; 0) of the Bessel-I hierarchy, real seed.
        RealBessel { nu: f64 },
        /// g₁(x; ε₁) for the complex seed, parameters (ε₁, Λ).
        ComplexKummer { epsilon1: f64, lambda: Complex64 },
        /// g₁(x; −5/2) with the auxiliary φ_Λ = e^{x²}[4 + Λ√π erf(x)].
        ComplexErf { lambda: Complex64 },
        /// g₁(x; 5/2) with φi_Λ = e^{−x²}[4 + Λ√π erfi(x)].
        ComplexErfi { lambda: Complex64 },
        /// g₁(x; 0) of the Bessel-I hierarchy, complex seed.
        ComplexBessel { lambda: Complex64 },
    }

    impl ClosedFormCase {
        /// The engine spec whose g this closed form reproduces. All printed
        /// forms are first-family solutions (verified by residual).
        pub fn engine_spec(&self) -> Result<SeedSpec> {
            match *self {
                ClosedFormCase::RealKummer { epsilon1, nu } => {
                    SeedSpec::from_nu(epsilon1, nu, 1, Family::First)
                }
                ClosedFormCase::RealErfK1 { nu } => SeedSpec::from_nu(-2.5, nu, 1, Family::First),
                ClosedFormCase::RealErfK2 { nu } => SeedSpec::from_nu(-0.5, nu, 2, Family::First),
                ClosedFormCase::RationalK1 => SeedSpec::from_nu(-2.5, 0.0, 1, Family::First),
                ClosedFormCase::RationalK2 => SeedSpec::from_nu(-2.5, 0.0, 2, Family::First),
                ClosedFormCase::RationalK3 => SeedSpec::from_nu(-2.5, 0.0, 3, Family::First),
                ClosedFormCase::RealBessel { nu } => SeedSpec::from_nu(0.0, nu, 1, Family::First),
                ClosedFormCase::ComplexKummer { epsilon1, lambda } => {
                    SeedSpec::new(epsilon1, lambda, 1, Family::First)
                }
                ClosedFormCase::ComplexErf { lambda } => {
                    SeedSpec::new(-2.5, lambda, 1, Family::First)
                }
                ClosedFormCase::ComplexErfi { lambda } => {
                    SeedSpec::new(2.5, lambda, 1, Family::First)
                }
                ClosedFormCase::ComplexBessel { lambda } => {
                    SeedSpec::new(0.0, lambda, 1, Family::First)
                }
            }
        }

        pub fn name(&self) -> &'static str {
            match self {
                ClosedFormCase::RealKummer { .. } => "real_kummer_g1",
                ClosedFormCase::RealErfK1 { .. } => "real_erf_g1",
                ClosedFormCase::RealErfK2 { .. } => "real_erf_g2",
                ClosedFormCase::RationalK1 => "rational_g1",
                ClosedFormCase::RationalK2 => "rational_g2",
                ClosedFormCase::RationalK3 => "rational_g3",
                ClosedFormCase::RealBessel { .. } => "real_bessel_g1",
                ClosedFormCase::ComplexKummer { .. } => "complex_kummer_g1",
                ClosedFormCase::ComplexErf { .. } => "complex_erf_g1",
                ClosedFormCase::ComplexErfi { .. } => "complex_erfi_g1",
                ClosedFormCase::ComplexBessel { .. } => "complex_bessel_g1",
            }
        }
    }

    /// A representative sample of the catalog with generic parameter values.
    pub fn sample_cases() -> Vec<ClosedFormCase> {
        vec![
            ClosedFormCase::RealKummer {
                epsilon1: -1.3,
                nu: 0.4,
            },
            ClosedFormCase::RealErfK1 { nu: 0.3 },
            ClosedFormCase::RealErfK2 { nu: 0.3 },
            ClosedFormCase::RationalK1,
            ClosedFormCase::RationalK2,
            ClosedFormCase::RationalK3,
            ClosedFormCase::RealBessel { nu: 0.4 },
            ClosedFormCase::ComplexKummer {
                epsilon1: 0.3,
                lambda: Complex64::new(0.5, 0.8),
            },
            ClosedFormCase::ComplexErf {
                lambda: Complex64::new(0.5, 0.8),
            },
            ClosedFormCase::ComplexErfi {
                lambda: Complex64::new(1.0, 1.0),
            },
            ClosedFormCase::ComplexBessel {
                lambda: Complex64::new(0.0, 1.0),
            },
        ]
    }

    /// Evaluate a cataloged closed form at x. Poles of the printed expression
    /// surface as singularity errors.
    pub fn closed_form_g(case: &ClosedFormCase, x: f64) -> Result<Complex64> {
        match *case {
            ClosedFormCase::RealKummer { epsilon1, nu } => real_kummer(epsilon1, nu, x),
            ClosedFormCase::RealErfK1 { nu } => real_erf_k1(nu, x),
            ClosedFormCase::RealErfK2 { nu } => real_erf_k2(nu, x),
            ClosedFormCase::RationalK1 => rational(1, x),
            ClosedFormCase::RationalK2 => rational(2, x),
            ClosedFormCase::RationalK3 => rational(3, x),
            ClosedFormCase::RealBessel { nu } => {
                bessel_family(Complex64::new(nu, 0.0), x, BesselSeed::RealNu)
            }
            ClosedFormCase::ComplexKummer { epsilon1, lambda } => {
                complex_kummer(epsilon1, lambda, x)
            }
            ClosedFormCase::ComplexErf { lambda } => complex_erf(lambda, x),
            ClosedFormCase::ComplexErfi { lambda } => complex_erfi(lambda, x),
            ClosedFormCase::ComplexBessel { lambda } => {
                bessel_family(lambda, x, BesselSeed::ComplexLambda)
            }
        }
    }

    fn guard_pole(den: Complex64, x: f64, scale: f64, what: &str) -> Result<()> {
        if den.norm() <= 1e-290 + 1e-14 * scale {
            return Err(Error::Singular {
                x,
                what: format!("{what}: closed-form denominator vanishes"),
            });
        }
        Ok(())
    }

    fn real_kummer(eps: f64, nu: f64, x: f64) -> Result<Complex64> {
        let ae = (1.0 - 2.0 * eps) / 4.0;
        let ao = (3.0 - 2.0 * eps) / 4.0;
        let z = x * x;
        let gae = gamma(ae)?;
        let gao = gamma(ao)?;
        let me_half = kummer_1f1(ae, 0.5, z)?;
        let me_three = kummer_1f1(ae, 1.5, z)?;
        let mo_three = kummer_1f1(ao, 1.5, z)?;
        let mo_five = kummer_1f1(ao, 2.5, z)?;
        let den = 3.0 * gae * me_half + 6.0 * nu * x * gao * mo_three;
        let num = 2.0 * nu * gao * (3.0 * mo_three - (2.0 * eps + 3.0) * z * mo_five)
            - 3.0 * x * (2.0 * eps + 1.0) * gae * me_three;
        guard_pole(Complex64::new(den, 0.0), x, num.abs(), "real_kummer_g1")?;
        Ok(Complex64::new(num / den, 0.0))
    }

    fn complex_kummer(eps: f64, lambda: Complex64, x: f64) -> Result<Complex64> {
        let ae = (1.0 - 2.0 * eps) / 4.0;
        let ao = (3.0 - 2.0 * eps) / 4.0;
        let z = x * x;
        let me_half = kummer_1f1(ae, 0.5, z)?;
        let me_three = kummer_1f1(ae, 1.5, z)?;
        let mo_three = kummer_1f1(ao, 1.5, z)?;
        let mo_five = kummer_1f1(ao, 2.5, z)?;
        let num = lambda * (3.0 * mo_three - (2.0 * eps + 3.0) * z * mo_five)
            - Complex64::new(3.0 * x * (2.0 * eps + 1.0) * me_three, 0.0);
        let den = Complex64::new(3.0 * me_half, 0.0) + 3.0 * lambda * x * mo_three;
        guard_pole(den, x, num.norm(), "complex_kummer_g1")?;
        Ok(num / den)
    }

    fn phi_nu(nu: f64, x: f64) -> Result<f64> {
        Ok(SQRT_PI * (x * x).exp() * (1.0 + nu * erf(x)?))
    }

    fn real_erf_k1(nu: f64, x: f64) -> Result<Complex64> {
        let p = phi_nu(nu, x)?;
        let num = 4.0 * (nu + x * p);
        let den = 2.0 * nu * x + (1.0 + 2.0 * x * x) * p;
        guard_pole(Complex64::new(den, 0.0), x, num.abs(), "real_erf_g1")?;
        Ok(Complex64::new(num / den, 0.0))
    }

    fn real_erf_k2(nu: f64, x: f64) -> Result<Complex64> {
        let p = phi_nu(nu, x)?;
        let num = 4.0 * nu * (nu + x * p).powi(2);
        let den = p * (p * p - 2.0 * nu * x * p - 2.0 * nu * nu);
        guard_pole(Complex64::new(den, 0.0), x, num.abs(), "real_erf_g2")?;
        Ok(Complex64::new(num / den, 0.0))
    }

    fn rational(k: usize, x: f64) -> Result<Complex64> {
        let g1 = 4.0 * x / (1.0 + 2.0 * x * x);
        let g2_term = 16.0 * x.powi(3) / (3.0 + 4.0 * x.powi(4));
        let v = match k {
            1 => g1,
            2 => -g1 + g2_term,
            3 => {
                let den = 9.0 + 18.0 * x * x - 12.0 * x.powi(4) + 8.0 * x.powi(6);
                -g2_term + 12.0 * (3.0 * x - 4.0 * x.powi(3) + 4.0 * x.powi(5)) / den
            }
            _ => {
                return Err(Error::Contract(format!(
                    "rational catalog holds k ≤ 3, got {k}"
                )))
            }
        };
        Ok(Complex64::new(v, 0.0))
    }

    fn phi_lambda(lambda: Complex64, x: f64) -> Result<Complex64> {
        Ok((x * x).exp() * (Complex64::new(4.0, 0.0) + lambda * SQRT_PI * erf(x)?))
    }

    fn complex_erf(lambda: Complex64, x: f64) -> Result<Complex64> {
        let p = phi_lambda(lambda, x)?;
        let num = 4.0 * lambda + 4.0 * x * p;
        let den = 2.0 * lambda * x + (1.0 + 2.0 * x * x) * p;
        guard_pole(den, x, num.norm(), "complex_erf_g1")?;
        Ok(num / den)
    }

    fn phii_lambda(lambda: Complex64, x: f64) -> Result<Complex64> {
        Ok((-x * x).exp() * (Complex64::new(4.0, 0.0) + lambda * SQRT_PI * erfi(x)?))
    }

    fn complex_erfi(lambda: Complex64, x: f64) -> Result<Complex64> {
        let p = phii_lambda(lambda, x)?;
        let num = 4.0 * lambda * (1.0 - x * x) + 2.0 * x * (2.0 * x * x - 3.0) * p;
        let den = 2.0 * lambda * x + (1.0 - 2.0 * x * x) * p;
        guard_pole(den, x, num.norm(), "complex_erfi_g1")?;
        Ok(num / den)
    }

    enum BesselSeed {
        RealNu,
        ComplexLambda,
    }

    /// Shared Bessel-hierarchy expression at ε₁ = 0. With c = sign(x)·ν
    /// (real) or 2·sign(x)·Λ·Γ(5/4)/Γ(3/4) (complex),
    ///
    ///   g = x [I_{3/4} − I_{−1/4} + c (I_{−3/4} − I_{1/4})]
    ///       / [I_{−1/4} + c I_{1/4}],   all orders at x²/2.
    fn bessel_family(mix: Complex64, x: f64, seed: BesselSeed) -> Result<Complex64> {
        if x == 0.0 {
            return Err(Error::Singular {
                x,
                what: "bessel closed form: I_{-1/4} diverges at the origin".into(),
            });
        }
        let h = x * x / 2.0;
        let sign = x.signum();
        let c = match seed {
            BesselSeed::RealNu => mix * sign,
            BesselSeed::ComplexLambda => mix * sign * 2.0 * gamma(1.25)? / gamma(0.75)?,
        };
        let im14 = bessel_i(-0.25, h)?;
        let ip14 = bessel_i(0.25, h)?;
        let ip34 = bessel_i(0.75, h)?;
        let im34 = bessel_i(-0.75, h)?;
        let num = Complex64::new(ip34 - im14, 0.0) + c * (im34 - ip14);
        let den = Complex64::new(im14, 0.0) + c * ip14;
        guard_pole(den, x, num.norm(), "bessel_g1")?;
        Ok(x * num / den)
    }
}
