//! Independent validation solver: direct discrete-ordinates integration of
//! the kinetic boundary-value problem μ∂h/∂x₁ + z₀h = 2U(x₁) with
//! h(0, μ>0) = 2, h → 0 at infinity, plus the hydrodynamic (Landau)
//! reference profile for the small-frequency limit.
//!
//! The source iteration integrates each characteristic with exact
//! exponential factors per cell (piecewise-linear source), which removes the
//! stiffness at small |μ|. Velocity nodes are Gauss–Legendre panels graded
//! geometrically toward μ = 0 on each half-axis with the Gaussian weight
//! kept explicit: the distribution is kinked at μ = 0 and, near the wall,
//! varies on the μ-scale of the distance to it.

use crate::dispersion::{Freq, SQRT_PI};
use crate::error::{Result, StokesError};
use crate::quad::Rule;
use crate::solution::Profile;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

/// Discretization of the kinetic solver.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// domain truncation length, mean free paths
    pub l: f64,
    /// spatial cells on [0, L]
    pub nx: usize,
    /// velocity nodes per half-axis
    pub nmu: usize,
    /// source-iteration convergence tolerance
    pub tol: f64,
    pub max_iters: usize,
}

impl OracleConfig {
    /// Defaults sized so the slowest mode fits the domain; pass the discrete
    /// eigenvalue when one exists.
    pub fn default_for(eta0: Option<C64>) -> OracleConfig {
        let l = match eta0 {
            Some(e) => (10.0 * e.norm()).max(30.0),
            None => 30.0,
        };
        OracleConfig {
            l,
            nx: 2000,
            nmu: 204,
            tol: 1e-10,
            max_iters: 5000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.l > 10.0 && self.nx >= 200 && self.nmu >= 24 && self.tol <= 1e-8) {
            return Err(StokesError::Domain(format!(
                "oracle config out of range: L = {}, Nx = {}, Nmu = {}, tol = {}",
                self.l, self.nx, self.nmu, self.tol
            )));
        }
        Ok(())
    }
}

// positive half-axis nodes, geometrically graded panels on [1e-4, 7]
fn mu_half_axis(nmu: usize) -> (Vec<f64>, Vec<f64>) {
    let mut edges: Vec<f64> = vec![1e-4];
    while *edges.last().unwrap() < 7.0 {
        edges.push((edges.last().unwrap() * 2.0).min(7.0));
    }
    let per_panel = (nmu + edges.len() - 2) / (edges.len() - 1);
    let rule = Rule::new(per_panel.max(2));
    let mut mu = Vec::new();
    let mut w = Vec::new();
    for pair in edges.windows(2) {
        for (t, wt) in rule.on(pair[0], pair[1]) {
            mu.push(t);
            w.push(wt * (-t * t).exp());
        }
    }
    (mu, w)
}

// exact update over one cell with a linear source:
// h_out = h_in e^{-c dx} + (2/|μ|)∫₀^dx e^{-c(dx-s)} u(s) ds,
// with u linear from ua (upwind face) to ub (downwind face)
fn cell_update(h: C64, ua: C64, ub: C64, c: C64, dx: f64, inv_abs_mu: f64) -> C64 {
    let e = (-c * dx).exp();
    let j0 = (1.0 - e) / c;
    let j1 = dx / c - j0 / c; // ∫ s e^{-c(dx-s)} ds
    let integral = ua * j0 + (ub - ua) / dx * j1;
    h * e + 2.0 * inv_abs_mu * integral
}

/// Source-iteration solution of the kinetic problem; the returned profile is
/// sampled at `x1_grid` by linear interpolation from the internal uniform
/// grid (points beyond L evaluate to 0).
pub fn solve_kinetic_bvp(f: &Freq, cfg: &OracleConfig, x1_grid: &[f64]) -> Result<Profile> {
    cfg.validate()?;
    let z0 = f.z0;
    let (mu, wq) = mu_half_axis(cfg.nmu);
    let nx = cfg.nx;
    let dx = cfg.l / nx as f64;

    let mut u: Vec<C64> = (0..=nx)
        .map(|i| landau_amplitude(f, i as f64 * dx))
        .collect();

    let mut err = f64::INFINITY;
    let mut converged = false;
    for _ in 0..cfg.max_iters {
        // accumulate (1/2√π) Σ w e^{-μ²} (h(x, μ) + h(x, -μ)) by sweeping
        // each |μ| characteristic up (μ > 0) and down (μ < 0)
        let accum: Vec<C64> = mu
            .par_iter()
            .zip(wq.par_iter())
            .map(|(&m, &w)| {
                let c = z0 / m;
                let mut rows = vec![C64::new(0.0, 0.0); nx + 1];
                // μ > 0: from the wall
                let mut h = C64::new(2.0, 0.0);
                rows[0] = w * h;
                for i in 1..=nx {
                    h = cell_update(h, u[i - 1], u[i], c, dx, 1.0 / m);
                    rows[i] += w * h;
                }
                // μ < 0: from the far boundary, h(L) = 0
                let mut h = C64::new(0.0, 0.0);
                for i in (0..nx).rev() {
                    h = cell_update(h, u[i + 1], u[i], c, dx, 1.0 / m);
                    rows[i] += w * h;
                }
                rows
            })
            .reduce(
                || vec![C64::new(0.0, 0.0); nx + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            );
        let unew: Vec<C64> = accum.iter().map(|&s| s / (2.0 * SQRT_PI)).collect();
        err = unew
            .iter()
            .zip(&u)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        u = unew;
        if err < cfg.tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(StokesError::NonConvergence {
            context: format!(
                "kinetic source iteration at omega1 = {}: residual {err:.2e} after {} iterations",
                f.omega1, cfg.max_iters
            ),
        });
    }

    let sample = |x: f64| -> C64 {
        if x >= cfg.l {
            return C64::new(0.0, 0.0);
        }
        let p = x / dx;
        let i = (p.floor() as usize).min(nx - 1);
        let frac = p - i as f64;
        u[i] * (1.0 - frac) + u[i + 1] * frac
    };
    Ok(Profile {
        x1: x1_grid.to_vec(),
        u: x1_grid.iter().map(|&x| sample(x)).collect(),
    })
}

fn landau_amplitude(f: &Freq, x1: f64) -> C64 {
    (C64::new(-1.0, 1.0) * f.omega1.sqrt() * x1).exp()
}

/// Hydrodynamic reference U(x₁) = exp(-x₁√ω₁(1-i)), valid for ω₁ ≪ 1.
pub fn landau_profile(f: &Freq, x1_grid: &[f64]) -> Profile {
    Profile {
        x1: x1_grid.to_vec(),
        u: x1_grid.iter().map(|&x| landau_amplitude(f, x)).collect(),
    }
}
