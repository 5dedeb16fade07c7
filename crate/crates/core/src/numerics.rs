//! Scalar special functions used by the seeds and the closed-form catalog:
//! Γ, Kummer ₁F₁, erf/erfi, and the modified Bessel function I_ν.
//!
//! Everything here is a plain `f64 -> Result<f64>` function; complex values
//! enter the library only through the seed's mixing constant Λ, never through
//! these arguments.

use crate::error::{Error, Result};

/// Maximum terms in any ascending series.
const MAX_SERIES_TERMS: usize = 500;

/// Series termination: stop once |term| ≤ TERM_EPS · |partial sum|.
const TERM_EPS: f64 = 1e-17;

const SQRT_PI: f64 = 1.7724538509055160273;

/// Lanczos coefficients (g = 7, n = 9), the Godfrey/Boost set.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Compensated (Kahan) accumulator for the series sums.
#[derive(Debug, Clone, Copy, Default)]
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn new(first: f64) -> Self {
        KahanSum {
            sum: first,
            carry: 0.0,
        }
    }

    fn add(&mut self, term: f64) {
        let y = term - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// sin(πx) with argument reduction done on x itself, so accuracy holds next
/// to the Γ poles where the reflection formula is most sensitive.
fn sinpi(x: f64) -> f64 {
    let r = x - x.round();
    let s = (std::f64::consts::PI * r).sin();
    // round-to-even parity decides the sign of the half-period shift
    if (x.round() as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Gamma function Γ(x) for real x away from the poles at 0, −1, −2, ...
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma: non-finite argument {x}")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Domain(format!("gamma: pole at x = {x}")));
    }
    if x < 0.5 {
        // reflection: Γ(x) Γ(1−x) = π / sin(πx)
        return Ok(std::f64::consts::PI / (sinpi(x) * gamma(1.0 - x)?));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS[1..].iter().enumerate() {
        acc += c / (z + (i + 1) as f64);
    }
    let w = z + LANCZOS_G + 0.5;
    Ok((2.0 * std::f64::consts::PI).sqrt() * w.powf(z + 0.5) * (-w).exp() * acc)
}

/// Kummer's confluent hypergeometric function ₁F₁(a; b; z) by ascending series
/// with compensated summation. The library only feeds z = x² ≥ 0.
pub fn kummer_1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if is_nonpositive_integer(b) {
        return Err(Error::Domain(format!(
            "kummer_1f1: pole, b = {b} is a non-positive integer"
        )));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let mut sum = KahanSum::new(1.0);
    let mut term = 1.0f64;
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        term *= (a + nf) / (b + nf) * z / (nf + 1.0);
        if term == 0.0 {
            // terminating polynomial (a a non-positive integer)
            return Ok(sum.value());
        }
        if !term.is_finite() {
            break;
        }
        sum.add(term);
        if !sum.value().is_finite() {
            break;
        }
        if term.abs() <= TERM_EPS * sum.value().abs() {
            return Ok(sum.value());
        }
    }
    Err(Error::Accuracy(format!(
        "kummer_1f1({a}, {b}, {z}): series did not converge within {MAX_SERIES_TERMS} terms"
    )))
}

/// erf(x) and erfi(x) as a pair. Domain |x| ≤ 8; beyond that erfi overflows
/// the working range. Both are evaluated on |x| and reflected, so the odd
/// parity holds bit for bit.
pub fn error_functions(x: f64) -> Result<(f64, f64)> {
    Ok((erf(x)?, erfi(x)?))
}

/// Error function via erf(x) = (2x/√π) e^{−x²} ₁F₁(1, 3/2; x²), a
/// positive-term series free of the Maclaurin cancellation.
pub fn erf(x: f64) -> Result<f64> {
    check_erf_domain(x, "erf")?;
    let ax = x.abs();
    let z = ax * ax;
    let v = (2.0 * ax / SQRT_PI) * (-z).exp() * kummer_1f1(1.0, 1.5, z)?;
    Ok(v.copysign(x))
}

/// Imaginary error function erfi(x) = (2x/√π) ₁F₁(1/2, 3/2; x²).
pub fn erfi(x: f64) -> Result<f64> {
    check_erf_domain(x, "erfi")?;
    let ax = x.abs();
    let z = ax * ax;
    let v = (2.0 * ax / SQRT_PI) * kummer_1f1(0.5, 1.5, z)?;
    Ok(v.copysign(x))
}

fn check_erf_domain(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() || x.abs() > 8.0 {
        return Err(Error::Range(format!("{what}: |x| ≤ 8 required, got {x}")));
    }
    Ok(())
}

/// Modified Bessel function of the first kind I_ν(z) by the ascending series
///
///   I_ν(z) = (z/2)^ν Σ_m (z²/4)^m / (m! Γ(ν+m+1)),
///
/// for z ≥ 0 (z > 0 when ν < 0, where the prefactor diverges at the origin).
pub fn bessel_i(nu: f64, z: f64) -> Result<f64> {
    if z < 0.0 || !z.is_finite() {
        return Err(Error::Domain(format!("bessel_i: z ≥ 0 required, got {z}")));
    }
    if nu < 0.0 && nu == nu.floor() {
        // I_{−n} = I_n for integer order
        return bessel_i(-nu, z);
    }
    if z == 0.0 {
        if nu == 0.0 {
            return Ok(1.0);
        }
        if nu > 0.0 {
            return Ok(0.0);
        }
        return Err(Error::Domain(format!(
            "bessel_i: order {nu} diverges at z = 0"
        )));
    }
    let q = z * z / 4.0;
    let mut term = (z / 2.0).powf(nu) / gamma(nu + 1.0)?;
    let mut sum = KahanSum::new(term);
    for m in 1..=MAX_SERIES_TERMS {
        let mf = m as f64;
        term *= q / (mf * (nu + mf));
        if !term.is_finite() {
            break;
        }
        sum.add(term);
        if !sum.value().is_finite() {
            break;
        }
        if term.abs() <= TERM_EPS * sum.value().abs() {
            return Ok(sum.value());
        }
    }
    Err(Error::Accuracy(format!(
        "bessel_i({nu}, {z}): series did not converge within {MAX_SERIES_TERMS} terms"
    )))
}
