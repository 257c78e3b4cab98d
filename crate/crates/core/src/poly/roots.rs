//! Simultaneous complex root approximation by the Aberth–Ehrlich method.

use num_complex::Complex64;

/// A root approximation and a radius around it that contains a true root
/// (up to the floating-point evaluation error folded into the radius).
#[derive(Clone, Copy, Debug)]
pub struct RootApprox {
    pub z: Complex64,
    pub radius: f64,
}

const MAX_ITERS: usize = 2000;

struct Poly<'a> {
    c: &'a [f64],
}

impl Poly<'_> {
    fn deg(&self) -> usize {
        self.c.len() - 1
    }

    /// p(z) and p′(z) by Horner.
    fn eval(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in self.c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    }

    /// Reversed polynomial `z^d p(1/z)` and its derivative at `w`.
    fn eval_rev(&self, w: Complex64) -> (Complex64, Complex64) {
        let mut q = Complex64::new(0.0, 0.0);
        let mut dq = Complex64::new(0.0, 0.0);
        for &a in self.c.iter() {
            dq = dq * w + q;
            q = q * w + a;
        }
        (q, dq)
    }

    /// Newton correction p(z)/p′(z), evaluated through the reversed
    /// polynomial outside the unit disk.
    fn newton_ratio(&self, z: Complex64) -> Complex64 {
        if z.norm() <= 1.0 {
            let (p, dp) = self.eval(z);
            if p == Complex64::new(0.0, 0.0) {
                return p;
            }
            p / dp
        } else {
            let w = z.inv();
            let (q, dq) = self.eval_rev(w);
            if q == Complex64::new(0.0, 0.0) {
                return q;
            }
            z / (self.deg() as f64 - w * dq / q)
        }
    }

    fn abs_sum(&self, r: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &a| acc * r + a.abs())
    }
}

/// Approximates all complex roots of the polynomial with ascending real
/// coefficients `coeffs` (leading and constant coefficients nonzero).
pub fn find_roots(coeffs: &[f64]) -> Vec<RootApprox> {
    assert!(coeffs.len() >= 2, "need a polynomial of positive degree");
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let normalized: Vec<f64> = coeffs.iter().map(|&a| a / lead).collect();
    let p = Poly { c: &normalized };
    if d == 1 {
        let z = Complex64::new(-normalized[0], 0.0);
        return vec![RootApprox { z, radius: f64::EPSILON * z.norm() }];
    }

    // starting points on a circle of the geometric-mean radius
    let r0 = normalized[0].abs().powf(1.0 / d as f64).clamp(0.5, 2.0);
    let mut zs: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4))
        .collect();
    let mut done = vec![false; d];
    for _ in 0..MAX_ITERS {
        let mut all = true;
        for k in 0..d {
            if done[k] {
                continue;
            }
            let n = p.newton_ratio(zs[k]);
            let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| (zs[k] - zs[j]).inv()).sum();
            let corr = n / (Complex64::new(1.0, 0.0) - n * s);
            if !corr.re.is_finite() || !corr.im.is_finite() {
                // nudge off a coincidence and retry
                zs[k] += Complex64::new(1e-3, 1e-3);
                all = false;
                continue;
            }
            zs[k] -= corr;
            if corr.norm() <= 4.0 * f64::EPSILON * zs[k].norm().max(1e-300) {
                done[k] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }

    // Newton polish, keeping a step only when it lowers the residual
    for z in zs.iter_mut() {
        for _ in 0..3 {
            let step = p.newton_ratio(*z);
            let cand = *z - step;
            if residual(&p, cand) <= residual(&p, *z) {
                *z = cand;
            } else {
                break;
            }
        }
    }

    zs.into_iter()
        .map(|z| {
            let (pz, dpz) = p.eval(z);
            let eval_err = 2.0 * d as f64 * f64::EPSILON * p.abs_sum(z.norm());
            // a disk of radius d·|p(z)/p′(z)| about z contains a root
            let radius = d as f64 * (pz.norm() + eval_err) / dpz.norm();
            RootApprox { z, radius: if radius.is_finite() { radius } else { f64::INFINITY } }
        })
        .collect()
}

fn residual(p: &Poly<'_>, z: Complex64) -> f64 {
    let (v, _) = p.eval(z);
    v.norm() / p.abs_sum(z.norm())
}
