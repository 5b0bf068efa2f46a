//! Gauss–Legendre quadrature rules and panel helpers.

use std::sync::OnceLock;

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct Rule {
    pub x: Vec<f64>,
    pub w: Vec<f64>,
}

impl Rule {
    /// Build the rule by Newton iteration on the Legendre polynomial.
    pub fn new(n: usize) -> Rule {
        assert!(n >= 2);
        let mut x = vec![0.0; n];
        let mut w = vec![0.0; n];
        let m = (n + 1) / 2;
        for i in 0..m {
            // Chebyshev-like initial guess, then Newton.
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut pp = 0.0;
            for _ in 0..100 {
                let mut p0 = 1.0;
                let mut p1 = 0.0;
                for j in 0..n {
                    let p2 = p1;
                    p1 = p0;
                    p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
                }
                // derivative from the recurrence
                pp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
                let dz = p0 / pp;
                z -= dz;
                if dz.abs() < 1e-15 {
                    break;
                }
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            let wi = 2.0 / ((1.0 - z * z) * pp * pp);
            w[i] = wi;
            w[n - 1 - i] = wi;
        }
        Rule { x, w }
    }

    /// Nodes and weights mapped to the interval [a, b].
    pub fn on(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (b - a);
        let d = 0.5 * (a + b);
        self.x
            .iter()
            .zip(self.w.iter())
            .map(move |(&x, &w)| (c * x + d, c * w))
    }
}

fn cached(cell: &'static OnceLock<Rule>, n: usize) -> &'static Rule {
    cell.get_or_init(|| Rule::new(n))
}

pub fn rule12() -> &'static Rule {
    static R: OnceLock<Rule> = OnceLock::new();
    cached(&R, 12)
}

pub fn rule20() -> &'static Rule {
    static R: OnceLock<Rule> = OnceLock::new();
    cached(&R, 20)
}

pub fn rule24() -> &'static Rule {
    static R: OnceLock<Rule> = OnceLock::new();
    cached(&R, 24)
}
