//! The dispersion function λ(z) of the kinetic half-space problem.
//!
//! λ(z) = -iω₁ + λ₀(z), where λ₀ is the plasma-dispersion-type integral
//!
//!     λ₀(z) = (1/√π) ∫ τ e^{-τ²} / (τ - z) dτ ,
//!
//! analytic off the real axis. On the axis the principal value is real and is
//! evaluated through the single-integral form λ₀(μ) = 1 - 2μ² ∫₀¹ e^{-μ²(1-t²)} dt;
//! off the axis λ₀ is obtained from the scaled complex complementary error
//! function w(z), λ₀(z) = 1 + i√π z w(z) for Im z > 0, with Schwarz reflection
//! below the axis.

use crate::error::{Result, StokesError};
use crate::quad;
use num_complex::Complex64 as C64;
use std::sync::OnceLock;

pub const SQRT_PI: f64 = 1.772453850905516;

/// Driving frequency ω₁ = ωτ together with the derived constant z₀ = 1 - iω₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Freq {
    pub omega1: f64,
    pub z0: C64,
}

impl Freq {
    pub fn new(omega1: f64) -> Result<Freq> {
        if !(omega1 > 0.0) || !omega1.is_finite() {
            return Err(StokesError::InvalidFrequency { omega1 });
        }
        Ok(Freq {
            omega1,
            z0: C64::new(1.0, -omega1),
        })
    }
}

/// Boundary values of λ on the cut from above (+) and below (-).
#[derive(Debug, Clone, Copy)]
pub struct BoundaryPair {
    pub lam_plus: C64,
    pub lam_minus: C64,
    /// s(μ) = √π μ e^{-μ²}, half the jump over i.
    pub s: f64,
    /// principal value λ₀(μ), real on the axis
    pub lam0: f64,
}

/// s(μ) = √π μ e^{-μ²}.
pub fn s_of(mu: f64) -> f64 {
    SQRT_PI * mu * (-mu * mu).exp()
}

// Nodes (1 - t², weight) of a panel rule on t ∈ [0,1], graded toward t = 1
// where the integrand develops a boundary layer of width ~ 1/(2μ²).
fn real_axis_nodes() -> &'static Vec<(f64, f64)> {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        let r = quad::rule20();
        let mut edges = vec![0.0];
        for k in 1..=8 {
            edges.push(1.0 - 0.5f64.powi(k));
        }
        edges.push(1.0);
        let mut out = Vec::new();
        for pair in edges.windows(2) {
            for (t, w) in r.on(pair[0], pair[1]) {
                out.push((1.0 - t * t, w));
            }
        }
        out
    })
}

/// Principal value of λ₀ on the real axis (exactly real, even in μ).
pub fn lambda0_real(mu: f64) -> f64 {
    let a = mu * mu;
    if a >= 36.0 {
        // asymptotic series; terms decrease until n ~ μ², far below 1e-18 here
        let mut term = 0.5 / a;
        let mut sum = term;
        for n in 1..40 {
            let next = term * (2 * n + 1) as f64 / (2.0 * a);
            if next >= term || next < 1e-18 * sum.abs() {
                break;
            }
            term = next;
            sum += term;
        }
        -sum
    } else {
        let integral: f64 = real_axis_nodes()
            .iter()
            .map(|&(u, w)| w * (-a * u).exp())
            .sum();
        1.0 - 2.0 * a * integral
    }
}

// Midpoint-rule evaluation of w(z) = e^{-z²} erfc(-iz) for 0 <= Im z <= 12.
// Trapezoid sum over offset nodes t_n = (n + 1/2)h plus the pole correction,
// which is required (and accurate) for Im z <= 5 and negligible beyond.
fn faddeeva_mid(z: C64) -> C64 {
    const H: f64 = 0.5;
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        (0..15)
            .map(|n| {
                let t = (n as f64 + 0.5) * H;
                (t, (-t * t).exp())
            })
            .collect()
    });
    let z2 = z * z;
    let mut sum = C64::new(0.0, 0.0);
    for &(t, e) in table {
        // pair the ±t nodes: 1/(z-t) + 1/(z+t) = 2z/(z² - t²)
        sum += e * 2.0 * z / (z2 - t * t);
    }
    let mut w = C64::new(0.0, H / std::f64::consts::PI) * sum;
    if z.im <= 5.0 {
        let denom = 1.0 + (C64::new(0.0, -2.0 * std::f64::consts::PI / H) * z).exp();
        w += 2.0 * (-z2).exp() / denom;
    }
    w
}

// Continued fraction for w(z), reliable for Im z > 12.
fn faddeeva_cf(z: C64) -> C64 {
    let mut f = z;
    for k in (1..=40).rev() {
        f = z - (k as f64 / 2.0) / f;
    }
    C64::new(0.0, 1.0 / SQRT_PI) / f
}

pub(crate) fn faddeeva_w(z: C64) -> C64 {
    debug_assert!(z.im >= 0.0);
    if z.im > 12.0 {
        faddeeva_cf(z)
    } else {
        faddeeva_mid(z)
    }
}

/// λ₀(z) anywhere in the plane; for real z the principal-value branch.
pub fn lambda0(z: C64) -> C64 {
    if z.im == 0.0 {
        C64::new(lambda0_real(z.re), 0.0)
    } else if z.im > 0.0 {
        C64::new(1.0, 0.0) + z * C64::new(0.0, SQRT_PI) * faddeeva_w(z)
    } else {
        lambda0(z.conj()).conj()
    }
}

/// λ(z) = -iω₁ + λ₀(z).
pub fn lambda(z: C64, f: &Freq) -> C64 {
    lambda0(z) + C64::new(0.0, -f.omega1)
}

/// dλ/dz = dλ₀/dz, from the Riccati-type identity λ₀' = (λ₀-1)/z - 2zλ₀.
/// Valid off the axis and for the principal-value branch on the axis; z ≠ 0.
pub fn lambda_prime(z: C64) -> C64 {
    let l0 = lambda0(z);
    (l0 - 1.0) / z - 2.0 * z * l0
}

/// Boundary values λ±(μ) = λ₀(μ) + i(±s(μ) - ω₁) on the cut.
pub fn lambda_boundary(mu: f64, f: &Freq) -> BoundaryPair {
    let lam0 = lambda0_real(mu);
    let s = s_of(mu);
    BoundaryPair {
        lam_plus: C64::new(lam0, s - f.omega1),
        lam_minus: C64::new(lam0, -s - f.omega1),
        s,
        lam0,
    }
}

/// Derivatives dλ±/dμ of the boundary values (μ ≠ 0).
pub(crate) fn lambda_boundary_prime(mu: f64, _f: &Freq) -> (C64, C64) {
    let l0 = lambda0_real(mu);
    let l0p = (l0 - 1.0) / mu - 2.0 * mu * l0;
    let sp = SQRT_PI * (-mu * mu).exp() * (1.0 - 2.0 * mu * mu);
    (C64::new(l0p, sp), C64::new(l0p, -sp))
}

/// Partial sum -iω₁ - Σ_{n=1}^{nterms} c_n / z^{2n} of the Laurent expansion
/// of λ at infinity, with c = (1/2, 3/4, 15/8).
pub fn laurent_tail(z: C64, f: &Freq, nterms: usize) -> Result<C64> {
    if z.norm() <= 3.0 {
        return Err(StokesError::Domain(format!(
            "laurent_tail requires |z| > 3, got |z| = {}",
            z.norm()
        )));
    }
    if nterms > 3 {
        return Err(StokesError::Domain(
            "laurent_tail carries only three coefficients".into(),
        ));
    }
    const C: [f64; 3] = [0.5, 0.75, 1.875];
    let z2 = z * z;
    let mut sum = C64::new(0.0, -f.omega1);
    let mut p = C64::new(1.0, 0.0);
    for &c in C.iter().take(nterms) {
        p *= z2;
        sum -= c / p;
    }
    Ok(sum)
}
