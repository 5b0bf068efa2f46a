//! End-to-end acceptance checks for the analytical oscillating-plate
//! solution. Each test prints one PASS/FAIL line; a handful of checks fail
//! by design because the stated tolerance or evaluation point is not
//! attainable — each such failure carries the measured value and the reason
//! in its panic message rather than a weakened assertion.

use num_complex::Complex64 as C64;
use stokes2::dispersion::{lambda, lambda0_real, laurent_tail, Freq, SQRT_PI};
use stokes2::factor::{x0_closed, Factorizer};
use stokes2::oracle::{landau_profile, solve_kinetic_bvp, OracleConfig};
use stokes2::solution::{
    dissipation, eigenfunction_moments, friction, velocity_profile, verify_wall_bc, wall_velocity,
};
use stokes2::spectrum;

fn report(name: &str, ok: bool, detail: &str) {
    println!("{}: {name} — {detail}", if ok { "PASS" } else { "FAIL" });
}

fn freq(w: f64) -> Freq {
    Freq::new(w).unwrap()
}

fn fac(w: f64) -> Factorizer {
    Factorizer::new(freq(w)).unwrap()
}

// deterministic xorshift for reproducible "random" sample points
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

#[test]
fn positive_root_of_the_dispersion_function() {
    let mu0 = spectrum::mu_zero();
    let ok = (mu0 - 0.924).abs() <= 1e-3;
    report(
        "positive root of the dispersion function",
        ok,
        &format!("mu0 = {mu0:.7} (expected 0.924 ± 0.001)"),
    );
    assert!(ok);
    assert!(lambda0_real(mu0).abs() < 1e-14);
}

#[test]
fn critical_frequency_matches_classical_estimate() {
    let star = spectrum::critical_frequency();
    let ok = (star - 0.733).abs() <= 1e-3;
    report(
        "critical frequency",
        ok,
        &format!("omega1* = {star:.7} (expected 0.733 ± 0.001)"),
    );
    assert!(ok);
}

#[test]
fn index_by_winding_and_argument_principle() {
    let mut all_ok = true;
    let mut notes = Vec::new();
    for (w, want) in [
        (0.1, 1),
        (0.5, 1),
        (0.7, 1),
        (0.75, 0),
        (1.0, 0),
        (5.0, 0),
    ] {
        let kappa = spectrum::winding(&freq(w)).unwrap();
        let zeros = spectrum::contour_zero_count(&freq(w));
        let consistent = zeros == 2 * kappa;
        let ok = kappa == want && consistent;
        all_ok &= ok;
        notes.push(format!(
            "omega1={w}: winding={kappa} zeros={zeros} (expected winding {want})"
        ));
    }
    report(
        "index regions by winding and argument principle",
        all_ok,
        &notes.join("; "),
    );
    assert!(
        all_ok,
        "the index at omega1 = 0.7 is 0, not 1: the winding of arg G and the \
         argument-principle zero count both change at omega1 = {:.7} (where the \
         boundary value at the real root of the dispersion function becomes real), \
         which lies below 0.7; the classical estimate 0.733 overstates the \
         transition point, so the expected index table is wrong between the two. \
         Details: {}",
        spectrum::transition_frequency(),
        notes.join("; ")
    );
}

#[test]
fn factorization_identity_at_random_points() {
    let mut rng = Rng(0x5eed_cafe_f00d_1234);
    let mut worst = 0.0f64;
    for w in [1.0, 2.0, 10.0, 0.1, 0.3, 0.6] {
        let f = fac(w);
        let mut n = 0;
        while n < 50 {
            let re = -5.0 + 10.0 * rng.next();
            let im = -3.0 + 6.0 * rng.next();
            if im.abs() < 0.05 {
                continue;
            }
            let r = f.check_factorization(C64::new(re, im)).unwrap();
            worst = worst.max(r);
            n += 1;
        }
    }
    let ok = worst < 1e-8;
    report(
        "factorization identity at random off-axis points",
        ok,
        &format!("worst relative residual {worst:.2e} (tol 1e-8)"),
    );
    assert!(ok, "worst residual {worst}");
}

#[test]
fn closed_form_cut_limit_at_the_origin() {
    // zero index: X(0) = sqrt(1 + i/omega1)
    let mut worst0 = 0.0f64;
    for w in [1.0, 2.0, 10.0] {
        let f = fac(w);
        worst0 = worst0.max((f.x0() - x0_closed(f.freq(), None)).norm());
    }
    // unit index: X(0)^2 = i z0 / (omega1 eta0^2); the square-root branch
    // attained by the canonical normalization has negative real part
    let mut worst1 = 0.0f64;
    for w in [0.1, 0.3, 0.6] {
        let f = fac(w);
        let eta0 = f.eta0().unwrap();
        let closed = x0_closed(f.freq(), Some(eta0));
        worst1 = worst1.max((f.x0() - closed).norm());
        let sq = C64::new(0.0, 1.0) * f.freq().z0 / (f.freq().omega1 * eta0 * eta0);
        worst1 = worst1.max((f.x0() * f.x0() - sq).norm());
    }
    let ok = worst0 < 1e-7 && worst1 < 1e-7;
    report(
        "closed-form cut limit X(0)",
        ok,
        &format!("kappa=0 deviation {worst0:.2e}, kappa=1 deviation {worst1:.2e} (tol 1e-7)"),
    );
    assert!(ok);
}

#[test]
fn wall_boundary_condition_identity() {
    let grid: Vec<f64> = (0..=79).map(|k| 0.05 + 3.95 * k as f64 / 79.0).collect();
    let mut worst = 0.0f64;
    for w in [0.1, 0.3, 1.0, 5.0] {
        worst = worst.max(verify_wall_bc(&fac(w), &grid).unwrap());
    }
    let ok = worst < 1e-5;
    report(
        "diffuse-reflection wall boundary condition",
        ok,
        &format!("max |h(0,mu) - 1| = {worst:.2e} over mu in [0.05, 4] (tol 1e-5)"),
    );
    assert!(ok);
}

#[test]
fn eigenfunction_moment_identities() {
    let mut worst = 0.0f64;
    for &eta in &[0.5, 1.0, 2.0, 3.0, 5.0] {
        for &w in &[0.1, 0.5, 1.0, 2.0, 5.0] {
            let f = freq(w);
            let (n0, n1) = eigenfunction_moments(eta, &f).unwrap();
            worst = worst.max((n0 - f.z0).norm());
            worst = worst.max((n1 - C64::new(0.0, -w * eta)).norm());
        }
    }
    let ok = worst < 1e-8;
    report(
        "eigenfunction moment identities",
        ok,
        &format!("worst deviation {worst:.2e} on the 5 x 5 grid (tol 1e-8)"),
    );
    assert!(ok);
}

#[test]
fn kinetic_solver_matches_analytic_profile() {
    let mut worst = 0.0f64;
    for w in [0.3, 1.0, 3.0] {
        let f = fac(w);
        let cfg = OracleConfig::default_for(f.eta0());
        // compare at the solver's cell faces: between faces its profile is
        // piecewise linear by construction, which is a representation
        // artifact, not a solution error
        let dx = cfg.l / cfg.nx as f64;
        let xs: Vec<f64> = (0..=(10.0 / dx) as usize).map(|k| k as f64 * dx).collect();
        let num = solve_kinetic_bvp(f.freq(), &cfg, &xs).unwrap();
        let ana = velocity_profile(&f, &xs).unwrap();
        let dev = num
            .u
            .iter()
            .zip(&ana.u)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        worst = worst.max(dev);
    }
    let ok = worst < 1e-3;
    report(
        "independent kinetic solver vs analytic profile",
        ok,
        &format!("max |U_num - U_ana| = {worst:.2e} on [0, 10] (tol 1e-3)"),
    );
    assert!(ok);
}

#[test]
fn hydrodynamic_limit_profile() {
    let f = fac(0.01);
    let xs: Vec<f64> = (0..=400).map(|k| k as f64 * 0.05).collect();
    let ana = velocity_profile(&f, &xs).unwrap();
    let lan = landau_profile(f.freq(), &xs);
    let dev = ana
        .u
        .iter()
        .zip(&lan.u)
        .map(|(a, b)| (a - b).norm() / b.norm())
        .fold(0.0, f64::max);
    // shape comparison with the wall offset divided out
    let shape_dev = ana
        .u
        .iter()
        .zip(&lan.u)
        .map(|(a, b)| (a / ana.u[0] - b).norm() / b.norm())
        .fold(0.0, f64::max);
    let ok = dev < 0.05;
    report(
        "hydrodynamic (Landau) limit at omega1 = 0.01",
        ok,
        &format!("L-inf relative deviation {dev:.4} (tol 0.05); shape-only deviation {shape_dev:.4}"),
    );
    assert!(
        ok,
        "the analytic profile differs from exp(-x sqrt(omega1) (1-i)) by {dev:.4}, \
         dominated by the kinetic velocity-slip offset at the wall, which decays \
         only like sqrt(omega1): |U(0)| = {:.4} instead of 1. Dividing out the wall \
         value leaves a shape deviation of {shape_dev:.4}. The coincidence with the \
         hydrodynamic profile is exact only in the omega1 -> 0 limit; at \
         omega1 = 0.01 the 5% tolerance is not yet reached (it is at ~0.001). The \
         independent kinetic solver reproduces the analytic profile, not the \
         hydrodynamic one, to 3e-3 at this frequency.",
        ana.u[0].norm()
    );
}

#[test]
fn friction_phase_low_frequency_limit() {
    let phi = friction(&fac(1e-3)).unwrap().phi;
    let dev = (phi + std::f64::consts::FRAC_PI_4).abs();
    let ok = dev < 0.02;
    report(
        "friction phase -> -pi/4 at low frequency",
        ok,
        &format!("phi(1e-3) = {phi:.5}, |phi + pi/4| = {dev:.4} rad (tol 0.02)"),
    );
    assert!(
        ok,
        "the phase approaches -pi/4 like sqrt(omega1): at omega1 = 1e-3 the \
         remaining offset is {dev:.4} rad, above the stated 0.02; the tolerance is \
         met from about omega1 = 4e-4 downward (verified by direct evaluation), so \
         the limit itself is correct but the quoted evaluation point is too high."
    );
}

#[test]
fn high_frequency_force_plateau() {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    let mut w = 20.0;
    while w <= 50.0 {
        let a = friction(&fac(w)).unwrap().a;
        lo = lo.min(a);
        hi = hi.max(a);
        w += 2.5;
    }
    let spread = (hi - lo) / (0.5 * (hi + lo));
    let ok = spread < 0.02;
    report(
        "high-frequency force plateau",
        ok,
        &format!(
            "amplitude in [{lo:.6}, {hi:.6}] over omega1 in [20, 50], spread {:.3}% \
             (tol 2%); limit 1/(2 sqrt(pi)) = {:.6}",
            100.0 * spread,
            0.5 / SQRT_PI
        ),
    );
    assert!(ok);
}

#[test]
fn wall_velocity_limits_and_monotonicity() {
    let w_lo = wall_velocity(&fac(1e-3)).unwrap().amplitude;
    let w_hi = wall_velocity(&fac(100.0)).unwrap().amplitude;
    let dev_lo = (w_lo - 1.0).abs();
    let dev_hi = (w_hi - 0.5).abs() / 0.5;
    let mut monotone = true;
    let mut w = 1e-3;
    let mut prev = f64::INFINITY;
    while w <= 100.0 {
        let a = wall_velocity(&fac(w)).unwrap().amplitude;
        monotone &= a < prev;
        prev = a;
        w *= 1.5;
    }
    let ok = dev_lo <= 0.02 && dev_hi <= 0.02 && monotone;
    report(
        "wall-velocity amplitude limits and monotonicity",
        ok,
        &format!(
            "|W|(1e-3) = {w_lo:.6} (deviation from 1: {:.3}%, tol 2%); |W|(100) = {w_hi:.6} \
             (deviation from 0.5: {:.3}%, tol 2%); monotone: {monotone}",
            100.0 * dev_lo,
            100.0 * dev_hi
        ),
    );
    assert!(
        ok,
        "|W| at omega1 = 1e-3 is {w_lo:.6}, i.e. {:.3}% below 1, just outside the \
         2% band: like the phase, 1 - |W| decays as sqrt(omega1) and crosses 2% \
         near omega1 = 8e-4. The high-frequency limit ({w_hi:.6} vs 0.5) and the \
         monotone decrease both hold.",
        100.0 * dev_lo
    );
}

#[test]
fn continuity_across_the_critical_frequency() {
    let star = spectrum::critical_frequency();
    let below = star - 1e-3;
    let above = star + 1e-3;
    let k_below = spectrum::winding(&freq(below)).unwrap();
    let k_above = spectrum::winding(&freq(above)).unwrap();

    // the index actually changes at the lower transition frequency; verify
    // continuity of all three responses there
    let tc = spectrum::transition_frequency();
    let lo = fac(tc - 1e-3);
    let hi = fac(tc + 1e-3);
    let fr = |f: &Factorizer| friction(f).unwrap().a;
    let wv = |f: &Factorizer| wall_velocity(f).unwrap().amplitude;
    let d_f = (fr(&lo) - fr(&hi)).abs() / fr(&hi);
    let d_w = (wv(&lo) - wv(&hi)).abs() / wv(&hi);
    let d_p = (dissipation(&lo).unwrap() - dissipation(&hi).unwrap()).abs()
        / dissipation(&hi).unwrap();
    let continuous = d_f < 0.01 && d_w < 0.01 && d_p < 0.01;

    let ok = k_below == 1 && k_above == 0 && continuous;
    report(
        "branch continuity across the critical frequency",
        ok,
        &format!(
            "winding at omega1* -/+ 0.001: {k_below}/{k_above} (expected 1/0); at the actual \
             transition {tc:.6} -/+ 0.001 the kappa=1/kappa=0 formulas agree to \
             force {:.3}%, wall {:.3}%, dissipation {:.3}%",
            100.0 * d_f,
            100.0 * d_w,
            100.0 * d_p
        ),
    );
    assert!(
        ok,
        "the unit-index formulas cannot be evaluated at omega1* - 0.001 = {below:.6}: \
         the winding there is already {k_below} and the dispersion function has no \
         zeros off the cut (argument-principle count {}), because the index changes \
         at {tc:.6}, not at the classical estimate {star:.6}. At the actual \
         transition the two branches do agree: force {:.3}%, wall velocity {:.3}%, \
         dissipation {:.3}% across a ±0.001 window (all within 1%), so the response \
         curves are single continuous curves — just not split at omega1*.",
        spectrum::contour_zero_count(&freq(below)),
        100.0 * d_f,
        100.0 * d_w,
        100.0 * d_p
    );
}

#[test]
fn laurent_tail_accuracy_on_rays() {
    let f = freq(0.5);
    let mut worst = 0.0f64;
    for k in 0..8 {
        let th = std::f64::consts::PI * (k as f64 + 0.5) / 4.0;
        let z = C64::from_polar(10.0, th);
        let d = (lambda(z, &f) - laurent_tail(z, &f, 3).unwrap()).norm();
        worst = worst.max(d);
    }
    let ok = worst < 1e-9;
    report(
        "three-term Laurent tail at |z| = 10",
        ok,
        &format!("max |lambda - tail3| = {worst:.2e} (tol 1e-9)"),
    );
    assert!(
        ok,
        "the three-term tail stops at 15/(8 z^6); the first omitted term is \
         105/(16 z^8) = 6.6e-8 at |z| = 10, which is the measured deviation \
         ({worst:.2e}) and sits two orders of magnitude above the stated 1e-9. \
         Reaching 1e-9 at this radius needs a five-term expansion."
    );
}
