//! Index classification of the Riemann problem and the discrete spectrum.
//!
//! The coefficient G(μ) = λ⁺(μ)/λ⁻(μ) winds either once or not at all around
//! the origin as μ runs over (0, ∞); the winding number κ decides the
//! solvability class. For κ = 1 the dispersion function has a conjugate pair
//! of complex zeros ±η₀; they are found by Newton continuation from the
//! small-frequency asymptote η₀ ≈ (1+i)/(2√ω₁).

use crate::dispersion::{
    lambda, lambda0_real, lambda_boundary, lambda_prime, s_of, Freq,
};
use crate::error::{Result, StokesError};
use crate::factor;
use num_complex::Complex64 as C64;
use std::sync::OnceLock;

/// Index κ, the discrete zero when present, and the critical frequency.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumInfo {
    pub kappa: i32,
    pub eta0: Option<C64>,
    pub omega1_star: f64,
}

/// Positive real root μ₀ of λ₀.
pub fn mu_zero() -> f64 {
    static MU0: OnceLock<f64> = OnceLock::new();
    *MU0.get_or_init(|| {
        let (mut a, mut b) = (0.5, 1.5);
        debug_assert!(lambda0_real(a) > 0.0 && lambda0_real(b) < 0.0);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if lambda0_real(m) > 0.0 {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    })
}

fn objective(mu: f64) -> f64 {
    let l0 = lambda0_real(mu);
    s_of(mu).powi(2) - l0 * l0
}

/// Critical frequency ω₁* = max over μ > 0 of √(s²(μ) - λ₀²(μ)), taken over
/// the feasible set where the radicand is nonnegative. Cached after first use.
pub fn critical_frequency() -> f64 {
    static STAR: OnceLock<f64> = OnceLock::new();
    *STAR.get_or_init(|| {
        // coarse scan locates the feasible set and the maximizer; the
        // objective is non-smooth at the feasibility boundary, so refine
        // only inside the bracket found by the scan
        let step = 1e-4;
        let mut best = (0.0f64, 0.0f64);
        let mut mu = step;
        while mu <= 6.0 {
            let v = objective(mu);
            if v > best.1 {
                best = (mu, v);
            }
            mu += step;
        }
        let (mut a, mut b) = (best.0 - 2.0 * step, best.0 + 2.0 * step);
        // golden-section refinement
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut c, mut d) = (b - phi * (b - a), a + phi * (b - a));
        let (mut fc, mut fd) = (objective(c), objective(d));
        for _ in 0..80 {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - phi * (b - a);
                fc = objective(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + phi * (b - a);
                fd = objective(d);
            }
        }
        objective(0.5 * (a + b)).max(0.0).sqrt()
    })
}

/// Frequency at which the discrete pair actually merges into the continuous
/// spectrum: the boundary value λ⁺(μ₀) becomes purely real there. The index
/// computed from the winding of arg G changes across this frequency, which
/// lies below the classical estimate returned by [`critical_frequency`].
pub fn transition_frequency() -> f64 {
    static TC: OnceLock<f64> = OnceLock::new();
    *TC.get_or_init(|| s_of(mu_zero()))
}

/// G(μ) = λ⁺(μ)/λ⁻(μ).
pub fn coefficient_g(mu: f64, f: &Freq) -> Result<C64> {
    let b = lambda_boundary(mu, f);
    if b.lam_minus.norm() < 1e-14 {
        return Err(StokesError::Domain(format!(
            "G({mu}) is degenerate: |lambda-minus| < 1e-14"
        )));
    }
    Ok(b.lam_plus / b.lam_minus)
}

/// Continuous branch θ(μ) = ½·arg G(μ) along the supplied increasing grid,
/// normalized by θ(0⁺) = 0, together with the winding number
/// [θ(μ_max) - θ(0⁺)]/π rounded to the nearest integer.
///
/// Fails if any branch increment reaches π/2 (grid too coarse, or ω₁
/// effectively critical).
pub fn theta_branch(f: &Freq, grid: &[f64]) -> Result<(Vec<f64>, i32)> {
    let mut theta = Vec::with_capacity(grid.len());
    let mut prev_arg = 0.0f64; // arg G(0⁺) = 0
    let mut acc = 0.0f64;
    for &mu in grid {
        let g = coefficient_g(mu, f)?;
        let raw = g.arg();
        let mut d = raw - prev_arg;
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        while d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        if d.abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(StokesError::BranchTracking { omega1: f.omega1 });
        }
        prev_arg = raw;
        acc += d;
        theta.push(0.5 * acc);
    }
    let winding = (theta.last().copied().unwrap_or(0.0) / std::f64::consts::PI).round() as i32;
    Ok((theta, winding))
}

/// Winding number of arg G over (0, ∞) on an internally refined grid.
pub fn winding(f: &Freq) -> Result<i32> {
    let table = factor::branch_table(f, None)?;
    Ok(table.winding)
}

// Newton refinement of a zero of λ at fixed frequency.
fn newton(mut z: C64, f: &Freq) -> C64 {
    for _ in 0..100 {
        let dz = lambda(z, f) / lambda_prime(z);
        z -= dz;
        if dz.norm() < 1e-15 {
            break;
        }
    }
    z
}

pub(crate) fn find_eta0_unchecked(f: &Freq) -> Result<C64> {
    // continuation from small frequency, where the asymptote seeds Newton
    // reliably; a direct Newton start diverges once η₀ nears the cut
    let w_start = f.omega1.min(0.01);
    let mut z = C64::new(1.0, 1.0) / (2.0 * w_start.sqrt());
    z = newton(z, &Freq::new(w_start)?);
    if f.omega1 > 0.01 {
        let n = (80.0 * f.omega1 / 0.7).ceil().max(2.0) as usize;
        for k in 1..=n {
            let w = 0.01 + (f.omega1 - 0.01) * k as f64 / n as f64;
            z = newton(z, &Freq::new(w)?);
        }
    }
    if (f.z0 / z).re < 0.0 {
        z = -z;
    }
    let resid = lambda(z, f).norm();
    if resid > 1e-12 {
        return Err(StokesError::NonConvergence {
            context: format!(
                "eta0 Newton continuation at omega1 = {}: residual {resid:.2e}",
                f.omega1
            ),
        });
    }
    Ok(z)
}

/// The discrete zero η₀ with Re(z₀/η₀) > 0; errors when the index is zero.
pub fn find_eta0(f: &Freq) -> Result<C64> {
    if winding(f)? == 0 {
        return Err(StokesError::NoDiscreteZero { omega1: f.omega1 });
    }
    find_eta0_unchecked(f)
}

pub(crate) fn guard_near_critical(f: &Freq, band: f64) -> Result<()> {
    for at in [critical_frequency(), transition_frequency()] {
        if (f.omega1 - at).abs() < band {
            return Err(StokesError::NearCritical {
                omega1: f.omega1,
                at,
                band,
            });
        }
    }
    Ok(())
}

/// Classify the problem at frequency ω₁.
pub fn classify(f: &Freq) -> Result<SpectrumInfo> {
    guard_near_critical(f, 1e-6)?;
    let kappa = winding(f)?;
    let eta0 = if kappa == 1 {
        Some(find_eta0_unchecked(f)?)
    } else {
        None
    };
    Ok(SpectrumInfo {
        kappa,
        eta0,
        omega1_star: critical_frequency(),
    })
}

/// Number of zeros of λ inside the rectangles [-r, r] × [y0, r] and its
/// mirror image below the axis, by trapezoid quadrature of λ'/λ along the
/// contours. Test-support cross-check of the winding classification.
pub fn contour_zero_count(f: &Freq) -> i32 {
    let r = 25.0;
    let y0 = 0.02;
    let count_rect = |corners: [C64; 4]| -> f64 {
        let n = 3000;
        let mut total = C64::new(0.0, 0.0);
        for e in 0..4 {
            let (a, b) = (corners[e], corners[(e + 1) % 4]);
            let dz = (b - a) / n as f64;
            let mut prev = lambda_prime(a) / lambda(a, f);
            for k in 1..=n {
                let z = a + dz * k as f64;
                let cur = lambda_prime(z) / lambda(z, f);
                total += 0.5 * (prev + cur) * dz;
                prev = cur;
            }
        }
        (total / C64::new(0.0, 2.0 * std::f64::consts::PI)).re
    };
    let upper = count_rect([
        C64::new(-r, y0),
        C64::new(r, y0),
        C64::new(r, r),
        C64::new(-r, r),
    ]);
    let lower = count_rect([
        C64::new(-r, -r),
        C64::new(r, -r),
        C64::new(r, -y0),
        C64::new(-r, -y0),
    ]);
    (upper + lower).round() as i32
}
