//! Canonical factorization X(z) of the homogeneous Riemann problem
//! X⁺(μ) = G(μ) X⁻(μ) on the half-line, for index κ ∈ {0, 1}.
//!
//! The continuous branch of ln G is tabulated on an adaptive Gauss–Legendre
//! panel grid truncated at μ = T (the density decays like e^{-μ²}). All
//! Cauchy integrals are evaluated on that fixed node set; principal values
//! use singularity subtraction with the analytic log term, so boundary
//! limits on the cut cost no extra quadrature.
//!
//! With I(z) = (1/2πi)∫₀ᵀ ln G(τ)/(τ-z) dτ over the continuous branch that
//! ends at 2πiκ, the canonical function normalized by X → 1 (κ = 0) or
//! zX → 1 (κ = 1) at infinity is X(z) = (-1)^κ e^{I(z)} / (T-z)^κ; the
//! endpoint factor absorbs the branch growth of the density.

use crate::dispersion::{lambda, lambda_boundary, lambda_boundary_prime, Freq};
use crate::error::{Result, StokesError};
use crate::quad;
use crate::spectrum;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use std::sync::OnceLock;

/// Truncation point of the branch table; beyond it |ln G| < 1e-12.
pub const T_MAX: f64 = 8.0;

const REFINE_TOL: f64 = 0.03;
const MIN_PANEL: f64 = 1e-7;

pub(crate) struct BranchTable {
    pub tau: Vec<f64>,
    pub w: Vec<f64>,
    /// continuous branch of ln G at the nodes, ln|G| + iθ with θ(0⁺) = 0
    pub lg: Vec<C64>,
    /// analytic derivative d(ln G)/dμ at the nodes
    pub lgp: Vec<C64>,
    pub winding: i32,
}

fn subdivide(
    f: &Freq,
    a: f64,
    b: f64,
    eta0: Option<C64>,
    out: &mut Vec<(f64, f64)>,
    ok: &mut bool,
) {
    let rule = quad::rule24();
    let g: Vec<C64> = rule
        .on(a, b)
        .map(|(t, _)| {
            let bp = lambda_boundary(t, f);
            bp.lam_plus / bp.lam_minus
        })
        .collect();
    let mut var: f64 = 0.0;
    for pair in g.windows(2) {
        let mut d = pair[1].arg() - pair[0].arg();
        if d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        if d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        var = var
            .max(d.abs())
            .max((pair[1].norm().ln() - pair[0].norm().ln()).abs());
    }
    // a panel straddling a discrete zero close to the cut must resolve the
    // scale Im η₀ even if the branch looks mild at the sample nodes
    let near = match eta0 {
        Some(e) if e.im.abs() < 0.5 => {
            let pad = 5.0 * e.im.abs();
            a - pad < e.re && e.re < b + pad && (b - a) > 0.3 * e.im.abs()
        }
        _ => false,
    };
    if (var > REFINE_TOL || near) && (b - a) > MIN_PANEL {
        let m = 0.5 * (a + b);
        subdivide(f, a, m, eta0, out, ok);
        subdivide(f, m, b, eta0, out, ok);
    } else {
        if var > 0.5 {
            *ok = false;
        }
        for nw in rule.on(a, b) {
            out.push(nw);
        }
    }
}

pub(crate) fn branch_table(f: &Freq, eta0: Option<C64>) -> Result<BranchTable> {
    let mut edges = vec![0.0];
    let mut e = 1.0 / 256.0;
    while e < 0.25 {
        edges.push(e);
        e *= 2.0;
    }
    let mut x = 0.25;
    while x < T_MAX - 1e-9 {
        edges.push(x);
        x += 0.125;
    }
    edges.push(T_MAX);

    let mut nodes = Vec::new();
    let mut ok = true;
    for pair in edges.windows(2) {
        subdivide(f, pair[0], pair[1], eta0, &mut nodes, &mut ok);
    }
    if !ok {
        return Err(StokesError::BranchTracking { omega1: f.omega1 });
    }

    let n = nodes.len();
    let mut tau = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    let mut lg = Vec::with_capacity(n);
    let mut lgp = Vec::with_capacity(n);
    let mut prev_arg = 0.0;
    let mut theta = 0.0;
    for &(t, wt) in &nodes {
        let bp = lambda_boundary(t, f);
        let g = bp.lam_plus / bp.lam_minus;
        let raw = g.arg();
        let mut d = raw - prev_arg;
        if d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        if d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        prev_arg = raw;
        theta += d;
        tau.push(t);
        w.push(wt);
        lg.push(C64::new(g.norm().ln(), theta));
        let (lpp, lmp) = lambda_boundary_prime(t, f);
        lgp.push(lpp / bp.lam_plus - lmp / bp.lam_minus);
    }
    let winding = (theta / (2.0 * std::f64::consts::PI)).round() as i32;
    Ok(BranchTable {
        tau,
        w,
        lg,
        lgp,
        winding,
    })
}

/// Immutable factorization context for one frequency.
pub struct Factorizer {
    freq: Freq,
    kappa: i32,
    eta0: Option<C64>,
    table: BranchTable,
    v1: C64,
    xc: OnceLock<Vec<C64>>,
}

impl Factorizer {
    pub fn new(f: Freq) -> Result<Factorizer> {
        spectrum::guard_near_critical(&f, 1e-6)?;
        let mut table = branch_table(&f, None)?;
        let kappa = table.winding;
        if kappa != 0 && kappa != 1 {
            return Err(StokesError::BranchTracking { omega1: f.omega1 });
        }
        let eta0 = if kappa == 1 {
            let e = spectrum::find_eta0_unchecked(&f)?;
            if e.im.abs() < 0.5 {
                table = branch_table(&f, Some(e))?;
            }
            Some(e)
        } else {
            None
        };
        let sum: C64 = table
            .w
            .iter()
            .zip(&table.lg)
            .map(|(&w, &lg)| w * lg)
            .sum();
        let v1 = -sum / C64::new(0.0, 2.0 * std::f64::consts::PI) + kappa as f64 * T_MAX;
        Ok(Factorizer {
            freq: f,
            kappa,
            eta0,
            table,
            v1,
            xc: OnceLock::new(),
        })
    }

    pub fn freq(&self) -> &Freq {
        &self.freq
    }

    pub fn kappa(&self) -> i32 {
        self.kappa
    }

    pub fn eta0(&self) -> Option<C64> {
        self.eta0
    }

    pub(crate) fn nodes(&self) -> (&[f64], &[f64]) {
        (&self.table.tau, &self.table.w)
    }

    fn on_cut(z: C64) -> bool {
        z.im == 0.0 && z.re >= 0.0
    }

    fn i_of(&self, z: C64) -> C64 {
        let mut sum = C64::new(0.0, 0.0);
        for i in 0..self.table.tau.len() {
            sum += self.table.w[i] * self.table.lg[i] / (self.table.tau[i] - z);
        }
        sum / C64::new(0.0, 2.0 * std::f64::consts::PI)
    }

    /// V(z): the Cauchy integral of the branch density, with the 2πi
    /// subtraction folded in for κ = 1 so that X = exp V (κ = 0) or
    /// X = (1/z) exp V (κ = 1).
    pub fn v(&self, z: C64) -> Result<C64> {
        if Self::on_cut(z) {
            return Err(StokesError::OnCut);
        }
        let i = self.i_of(z);
        Ok(if self.kappa == 0 {
            i
        } else {
            i - (C64::new(T_MAX, 0.0) - z).ln() + (-z).ln()
        })
    }

    /// The canonical factorizing function off the cut.
    pub fn x(&self, z: C64) -> Result<C64> {
        if Self::on_cut(z) {
            return Err(StokesError::OnCut);
        }
        let sign = if self.kappa == 0 { 1.0 } else { -1.0 };
        let mut val = sign * self.i_of(z).exp();
        if self.kappa == 1 {
            val /= C64::new(T_MAX, 0.0) - z;
        }
        Ok(val)
    }

    /// Continuous branch of ln G at an arbitrary μ, matched to the table.
    pub(crate) fn lg_at(&self, mu: f64) -> C64 {
        let bp = lambda_boundary(mu, &self.freq);
        let g = bp.lam_plus / bp.lam_minus;
        let k = self
            .table
            .tau
            .partition_point(|&t| t < mu)
            .min(self.table.tau.len() - 1);
        let ref_im = self.table.lg[k].im;
        let raw = g.arg();
        let n = ((ref_im - raw) / (2.0 * std::f64::consts::PI)).round();
        C64::new(g.norm().ln(), raw + 2.0 * std::f64::consts::PI * n)
    }

    pub(crate) fn lgp_at(&self, mu: f64) -> C64 {
        let bp = lambda_boundary(mu, &self.freq);
        let (lpp, lmp) = lambda_boundary_prime(mu, &self.freq);
        lpp / bp.lam_plus - lmp / bp.lam_minus
    }

    // principal value of I at μ on the cut by singularity subtraction;
    // a quadrature node colliding with μ gets the analytic derivative fill
    fn i_pv_with(&self, mu: f64, lgm: C64, lgpm: C64) -> C64 {
        let mut sum = C64::new(0.0, 0.0);
        for i in 0..self.table.tau.len() {
            let d = self.table.tau[i] - mu;
            let q = if d.abs() <= 1e-12 {
                lgpm
            } else {
                (self.table.lg[i] - lgm) / d
            };
            sum += self.table.w[i] * q;
        }
        sum += lgm * ((T_MAX - mu) / mu).ln();
        sum / C64::new(0.0, 2.0 * std::f64::consts::PI)
    }

    /// Principal-value boundary evaluation of X on the cut (the geometric
    /// mean of the two one-sided limits).
    pub fn x_cut(&self, mu: f64) -> Result<C64> {
        if !(mu > 0.0 && mu < T_MAX) {
            return Err(StokesError::Domain(format!(
                "x_cut requires 0 < mu < {T_MAX}, got {mu}"
            )));
        }
        let lgm = self.lg_at(mu);
        let val = self.i_pv_with(mu, lgm, self.lgp_at(mu)).exp();
        Ok(if self.kappa == 0 {
            val
        } else {
            val / (T_MAX - mu)
        })
    }

    /// One-sided boundary values X±(μ) = X_cut(μ)·(-1)^κ·e^{±½ ln G}.
    pub fn x_plus(&self, mu: f64) -> Result<C64> {
        let sign = if self.kappa == 0 { 1.0 } else { -1.0 };
        Ok(self.x_cut(mu)? * sign * (0.5 * self.lg_at(mu)).exp())
    }

    pub fn x_minus(&self, mu: f64) -> Result<C64> {
        let sign = if self.kappa == 0 { 1.0 } else { -1.0 };
        Ok(self.x_cut(mu)? * sign * (-0.5 * self.lg_at(mu)).exp())
    }

    /// First moment V₁ of the branch density; for κ = 1 the subtracted
    /// (decaying) density is integrated.
    pub fn v1(&self) -> C64 {
        self.v1
    }

    /// Cut-limit of X at the origin. The density vanishes linearly at 0, so
    /// the integral needs no principal value there.
    pub fn x0(&self) -> C64 {
        let mut sum = C64::new(0.0, 0.0);
        for i in 0..self.table.tau.len() {
            sum += self.table.w[i] * self.table.lg[i] / self.table.tau[i];
        }
        let i0 = sum / C64::new(0.0, 2.0 * std::f64::consts::PI);
        let sign = if self.kappa == 0 { 1.0 } else { -1.0 };
        sign * i0.exp() / T_MAX.powi(self.kappa)
    }

    /// sin q for the κ-adjusted angle q = -(i/2)·(ln G - 2πiκ).
    pub(crate) fn sinq_of(&self, lg: C64) -> C64 {
        let sign = if self.kappa == 0 { 1.0 } else { -1.0 };
        C64::new(0.0, -sign) * (0.5 * lg).sinh()
    }

    pub(crate) fn sinq_at(&self, mu: f64) -> C64 {
        self.sinq_of(self.lg_at(mu))
    }

    /// X_cut at every quadrature node, computed once and cached.
    pub(crate) fn xc_nodes(&self) -> &[C64] {
        self.xc.get_or_init(|| {
            (0..self.table.tau.len())
                .into_par_iter()
                .map(|i| {
                    let mu = self.table.tau[i];
                    let val = self
                        .i_pv_with(mu, self.table.lg[i], self.table.lgp[i])
                        .exp();
                    if self.kappa == 0 {
                        val
                    } else {
                        val / (T_MAX - mu)
                    }
                })
                .collect()
        })
    }

    pub(crate) fn lg_nodes(&self) -> &[C64] {
        &self.table.lg
    }

    /// Relative residual of the factorization identity
    /// λ(z) = λ(∞)·X(z)·X(-z) (κ = 0) or λ(z) = iω₁(z²-η₀²)·X(z)·X(-z) (κ = 1).
    pub fn check_factorization(&self, z: C64) -> Result<f64> {
        if z.im == 0.0 {
            return Err(StokesError::OnCut);
        }
        let lhs = lambda(z, &self.freq);
        let xx = self.x(z)? * self.x(-z)?;
        let rhs = if self.kappa == 0 {
            C64::new(0.0, -self.freq.omega1) * xx
        } else {
            let eta0 = self.eta0.unwrap();
            C64::new(0.0, self.freq.omega1) * (z * z - eta0 * eta0) * xx
        };
        Ok((lhs - rhs).norm() / lhs.norm())
    }

    /// Residual of the singular-integral representation of 1/X:
    /// 1/X(z) - 1 (κ = 0) or 1/X(z) - z + V₁ (κ = 1) against
    /// -(1/π)∫ sin q(τ) / (X_cut(τ)(τ-z)) dτ.
    pub fn representation_residual(&self, z: C64) -> Result<f64> {
        if Self::on_cut(z) {
            return Err(StokesError::OnCut);
        }
        let xc = self.xc_nodes();
        let mut integ = C64::new(0.0, 0.0);
        for i in 0..self.table.tau.len() {
            integ += self.table.w[i] * self.sinq_of(self.table.lg[i])
                / (xc[i] * (self.table.tau[i] - z));
        }
        integ = -integ / std::f64::consts::PI;
        let lhs = if self.kappa == 0 {
            1.0 / self.x(z)? - 1.0
        } else {
            1.0 / self.x(z)? - z + self.v1
        };
        Ok((lhs - integ).norm())
    }
}

/// Closed form of the cut-limit X(0).
///
/// κ = 0: the root of √(1 + i/ω₁) with positive real part. κ = 1: the root
/// of √(i z₀/(ω₁ η₀²)) with negative real part — that is the branch actually
/// attained by the canonical function normalized by zX(z) → 1, as the
/// factorization identity is blind to the global sign.
pub fn x0_closed(f: &Freq, eta0: Option<C64>) -> C64 {
    match eta0 {
        None => (C64::new(1.0, 0.0) + C64::new(0.0, 1.0) / f.omega1).sqrt(),
        Some(e) => -(C64::new(0.0, 1.0) * f.z0 / (f.omega1 * e * e)).sqrt(),
    }
}
