//! Assembly of the analytical solution: spectral coefficients, the
//! distribution function, the velocity field, wall velocity, friction force
//! and dissipated power, in both index regimes.
//!
//! Everything is dimensionless: velocities in units of the plate amplitude
//! U₀ (times the thermal speed), force per area in units of 2pU₀, dissipated
//! power per area in units of W₀ = U₀²p/√β. All operations return complex
//! amplitudes; the harmonic factor e^{-iω₁t₁} is applied by the caller.

use crate::dispersion::{lambda0_real, Freq, SQRT_PI};
use crate::error::{Result, StokesError};
use crate::factor::{x0_closed, Factorizer, T_MAX};
use crate::quad;
use num_complex::Complex64 as C64;

/// Complex wall-velocity response W: U_y(0, t₁) = U₀|W| cos(ω₁t₁ - φ).
#[derive(Debug, Clone, Copy)]
pub struct WallResponse {
    pub w: C64,
    pub amplitude: f64,
    pub phase: f64,
}

/// Friction force on the plate, F₀ in units of 2pU₀, with amplitude
/// A = ω₁|η₀ - V₁| (κ = 1) or ω₁|V₁| (κ = 0) and phase φ.
#[derive(Debug, Clone, Copy)]
pub struct ForceResponse {
    pub f0: C64,
    pub a: f64,
    pub phi: f64,
}

/// Sampled complex velocity amplitude U(x₁).
#[derive(Debug, Clone)]
pub struct Profile {
    pub x1: Vec<f64>,
    pub u: Vec<C64>,
}

/// Continuous-spectrum coefficient a(η) (per U₀):
/// (2/√π)·sin q(η) / (η X(η)) with the extra 1/(η - η₀) factor for κ = 1.
pub fn coeff_a(eta: f64, f: &Factorizer) -> Result<C64> {
    if !(eta > 0.0) {
        return Err(StokesError::Domain(format!("coeff_a requires eta > 0, got {eta}")));
    }
    if eta >= T_MAX {
        return Ok(C64::new(0.0, 0.0)); // density below truncation level
    }
    let mut a = 2.0 / SQRT_PI * f.sinq_at(eta) / (eta * f.x_cut(eta)?);
    if let Some(eta0) = f.eta0() {
        a /= eta - eta0;
    }
    Ok(a)
}

/// Discrete coefficient a₀ = 2√π e^{-V(η₀)} (per U₀); κ = 1 only.
pub fn coeff_a0(f: &Factorizer) -> Result<C64> {
    let eta0 = f
        .eta0()
        .ok_or(StokesError::NoDiscreteZero { omega1: f.freq().omega1 })?;
    Ok(2.0 * SQRT_PI * (-f.v(eta0)?).exp())
}

/// Distribution amplitude h(x₁, μ)/(2U₀): discrete term (κ = 1), principal
/// value over the continuous spectrum, and for μ > 0 the explicit cut term
/// carrying e^{μ²}λ(μ).
pub fn h_distribution(x1: f64, mu: f64, f: &Factorizer) -> Result<C64> {
    if !(x1 >= 0.0) {
        return Err(StokesError::Domain(format!("h requires x1 >= 0, got {x1}")));
    }
    if mu >= T_MAX {
        return Err(StokesError::Domain(format!(
            "h supports mu < {T_MAX} (the spectral truncation), got {mu}"
        )));
    }
    let z0 = f.freq().z0;
    let (tau, w) = f.nodes();
    let xc = f.xc_nodes();
    let lg = f.lg_nodes();
    let eta0 = f.eta0();

    let dens = |i: usize| {
        let mut g = f.sinq_of(lg[i]) / xc[i];
        if let Some(e) = eta0 {
            g /= tau[i] - e;
        }
        g * (-x1 * z0 / tau[i]).exp()
    };

    let mut cut = C64::new(0.0, 0.0);
    let mut total = C64::new(0.0, 0.0);

    if mu > 0.0 {
        // singularity subtraction at η = μ, plus the analytic log term
        let mut gmu = f.sinq_at(mu) / f.x_cut(mu)?;
        if let Some(e) = eta0 {
            gmu /= mu - e;
        }
        let gx = gmu * (-x1 * z0 / mu).exp();
        for i in 0..tau.len() {
            let d = tau[i] - mu;
            if d.abs() > 1e-12 {
                cut += w[i] * (dens(i) - gx) / d;
            }
        }
        cut += gx * ((T_MAX - mu) / mu).ln();
        cut /= std::f64::consts::PI;
        // the delta contribution of the eigenfunction at η = μ
        let lam_pv = C64::new(lambda0_real(mu), -f.freq().omega1);
        let delta = (mu * mu).exp() * lam_pv / (SQRT_PI * mu) * gx;
        total += cut + delta;
    } else {
        for i in 0..tau.len() {
            cut += w[i] * dens(i) / (tau[i] - mu);
        }
        total += cut / std::f64::consts::PI;
    }

    if let Some(e) = eta0 {
        total += (-x1 * z0 / e).exp() / (f.x(e)? * (e - mu));
    }
    Ok(total)
}

/// Max over the grid of |h(0, μ) - 1| in 2U₀ units — the end-to-end identity
/// exercising the branch table, X, q and both spectral coefficients at once.
pub fn verify_wall_bc(f: &Factorizer, mu_grid: &[f64]) -> Result<f64> {
    let mut worst = 0.0f64;
    for &mu in mu_grid {
        if !(mu > 0.0) {
            return Err(StokesError::Domain("wall BC grid must be positive".into()));
        }
        let r = (h_distribution(0.0, mu, f)? - 1.0).norm();
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Complex velocity amplitude U(x₁) (per U₀).
pub fn velocity_profile(f: &Factorizer, x1_grid: &[f64]) -> Result<Profile> {
    let z0 = f.freq().z0;
    let (tau, w) = f.nodes();
    let xc = f.xc_nodes();
    let lg = f.lg_nodes();
    let eta0 = f.eta0();
    let mut g: Vec<C64> = Vec::with_capacity(tau.len());
    for i in 0..tau.len() {
        let mut v = f.sinq_of(lg[i]) / (tau[i] * xc[i]);
        if let Some(e) = eta0 {
            v /= tau[i] - e;
        }
        g.push(v);
    }
    let disc_amp = match eta0 {
        Some(e) => 1.0 / (e * f.x(e)?),
        None => C64::new(0.0, 0.0),
    };
    let mut u = Vec::with_capacity(x1_grid.len());
    for &x in x1_grid {
        if !(x >= 0.0) {
            return Err(StokesError::Domain(format!("profile requires x1 >= 0, got {x}")));
        }
        let mut cut = C64::new(0.0, 0.0);
        for i in 0..tau.len() {
            cut += w[i] * g[i] * (-x * z0 / tau[i]).exp();
        }
        cut /= std::f64::consts::PI;
        let mut val = z0 * cut;
        if let Some(e) = eta0 {
            val += z0 * disc_amp * (-x * z0 / e).exp();
        }
        u.push(val);
    }
    Ok(Profile {
        x1: x1_grid.to_vec(),
        u,
    })
}

/// Wall velocity from the closed forms:
/// κ = 0: W = z₀(1 - 1/X(0)) with X(0) = √(1 + i/ω₁);
/// κ = 1: W = z₀(1 + 1/(η₀ X(0))) with X(0) = -√(i z₀/(ω₁η₀²)).
pub fn wall_velocity(f: &Factorizer) -> Result<WallResponse> {
    let z0 = f.freq().z0;
    let x0 = x0_closed(f.freq(), f.eta0());
    let w = match f.eta0() {
        None => z0 * (1.0 - 1.0 / x0),
        Some(e) => z0 * (1.0 + 1.0 / (e * x0)),
    };
    Ok(WallResponse {
        w,
        amplitude: w.norm(),
        phase: w.arg(),
    })
}

/// Friction force per area on the plate (units of 2pU₀).
pub fn friction(f: &Factorizer) -> Result<ForceResponse> {
    let w1 = f.freq().omega1;
    let i = C64::new(0.0, 1.0);
    match f.eta0() {
        None => {
            let f0 = i * w1 * f.v1();
            Ok(ForceResponse {
                f0,
                a: w1 * f.v1().norm(),
                phi: (i * f.v1()).arg(),
            })
        }
        Some(e) => {
            let f0 = i * w1 * (f.v1() - e);
            Ok(ForceResponse {
                f0,
                a: w1 * (e - f.v1()).norm(),
                phi: (i * (e - f.v1())).arg() - std::f64::consts::PI,
            })
        }
    }
}

/// Dissipated power per unit plate area (units of W₀ = U₀²p/√β).
pub fn dissipation(f: &Factorizer) -> Result<f64> {
    let w1 = f.freq().omega1;
    let i = C64::new(0.0, 1.0);
    Ok(match f.eta0() {
        None => w1 * (i * f.v1()).re,
        Some(e) => w1 * (i * (f.v1() - e)).re,
    })
}

/// Gaussian moments of the continuum eigenfunction Φ(η, ·): the zeroth must
/// equal z₀ identically and the first must equal -iω₁η.
pub fn eigenfunction_moments(eta: f64, f: &Freq) -> Result<(C64, C64)> {
    if !(eta > 0.0 && eta < 9.0) {
        return Err(StokesError::Domain(format!(
            "moments require 0 < eta < 9, got {eta}"
        )));
    }
    let r = quad::rule20();
    let lam_eta = C64::new(lambda0_real(eta), -f.omega1);
    let ee = (-eta * eta).exp();
    // PV over [-9, 9] with subtraction at μ = η; the e^{-81} tail is dust
    let n_panels = 144;
    let mut pv0 = 0.0f64;
    let mut pv1 = 0.0f64;
    for k in 0..n_panels {
        let a = -9.0 + 18.0 * k as f64 / n_panels as f64;
        let b = a + 18.0 / n_panels as f64;
        for (t, w) in r.on(a, b) {
            let e = (-t * t).exp();
            pv0 += w * (e - ee) / (eta - t);
            pv1 += w * (t * e - eta * ee) / (eta - t);
        }
    }
    let log_term = ((9.0 + eta) / (9.0 - eta)).ln();
    pv0 += ee * log_term;
    pv1 += eta * ee * log_term;
    let n0 = eta / SQRT_PI * pv0 + lam_eta;
    let n1 = eta / SQRT_PI * pv1 + eta * lam_eta;
    Ok((n0, n1))
}

/// Boltzmann constant, J/K.
pub const K_BOLTZMANN: f64 = 1.380649e-23;

/// Conversion of the dimensionless outputs to laboratory units for a gas of
/// number density n, temperature T, molecular mass m, relaxation time τ and
/// plate velocity amplitude u₀ (SI units throughout).
#[derive(Debug, Clone, Copy)]
pub struct Dimensional {
    pub n: f64,
    pub t: f64,
    pub m: f64,
    pub tau: f64,
    pub u0: f64,
}

impl Dimensional {
    /// thermal speed v_T = 1/√β = √(2kT/m), m/s
    pub fn thermal_speed(&self) -> f64 {
        (2.0 * K_BOLTZMANN * self.t / self.m).sqrt()
    }

    /// gas pressure p = nkT, Pa
    pub fn pressure(&self) -> f64 {
        self.n * K_BOLTZMANN * self.t
    }

    /// mean free path l = τ/√β, m — the unit of x₁
    pub fn length_scale(&self) -> f64 {
        self.tau * self.thermal_speed()
    }

    /// the unit of the dimensionless velocity amplitude U, m/s
    pub fn velocity_scale(&self) -> f64 {
        self.u0
    }

    /// the unit 2pU₀ of the friction force per area, Pa
    pub fn force_scale(&self) -> f64 {
        2.0 * self.pressure() * self.u0 / self.thermal_speed()
    }

    /// the unit W₀ = U₀²p/√β of dissipated power per area, W/m²
    pub fn power_scale(&self) -> f64 {
        let u_dimless = self.u0 / self.thermal_speed();
        u_dimless * u_dimless * self.pressure() * self.thermal_speed()
    }
}
