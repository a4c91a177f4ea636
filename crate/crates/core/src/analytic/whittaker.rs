//! Whittaker functions `W_{kappa,mu}(y)` for real `y > 0`.
//!
//! The decaying solution of `y^2 W'' = (y^2/4 - kappa y - (1/4 - mu^2)) W` is
//! seeded from its asymptotic series at a large abscissa and carried towards
//! zero by Taylor steps. Each step uses the exact recurrence for the Taylor
//! coefficients, so between anchors the result is a convergent power series.

use num_complex::Complex64;

/// Smallest abscissa covered by the precomputed anchors.
const Y_FLOOR: f64 = 1e-8;
const MAX_TAYLOR_TERMS: usize = 400;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum WhittakerError {
    #[error("argument y = {0} must be positive")]
    NonPositive(f64),
    #[error("mu = {0} lies outside the supported strip |Re mu| < 2")]
    Strip(Complex64),
    #[error("requested relative accuracy {requested:e} not reached; achieved about {achieved:e}")]
    Accuracy { requested: f64, achieved: f64 },
}

#[derive(Clone, Copy, Debug)]
struct Anchor {
    y: f64,
    w: Complex64,
    dw: Complex64,
}

/// Evaluator for one pair `(kappa, mu)`; anchors are computed once.
#[derive(Clone, Debug)]
pub struct Whittaker {
    kappa: f64,
    mu: Complex64,
    y_large: f64,
    step_fraction: f64,
    /// Sorted by decreasing `y`; the first entry sits at `y_large`.
    anchors: Vec<Anchor>,
}

impl Whittaker {
    pub fn new(kappa: f64, mu: Complex64) -> Result<Whittaker, WhittakerError> {
        Whittaker::with_step(kappa, mu, 1.0 / 3.0)
    }

    fn with_step(kappa: f64, mu: Complex64, step_fraction: f64) -> Result<Whittaker, WhittakerError> {
        if mu.re.abs() >= 2.0 || !mu.re.is_finite() || !mu.im.is_finite() {
            return Err(WhittakerError::Strip(mu));
        }
        let y_large = (10.0 * mu.norm_sqr()).max(50.0);
        let (w, dw) = asymptotic(kappa, mu, y_large);
        let mut me = Whittaker { kappa, mu, y_large, step_fraction, anchors: vec![Anchor { y: y_large, w, dw }] };
        let mut last = me.anchors[0];
        while last.y > Y_FLOOR {
            let h = me.step(last.y);
            last = me.advance(&last, -h);
            me.anchors.push(last);
        }
        Ok(me)
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    fn step(&self, y: f64) -> f64 {
        (y * self.step_fraction).min(1.0)
    }

    /// Taylor expansion of the solution around `a.y`, summed at offset `h`.
    /// Works with the scaled terms `t_k = c_k h^k` so tiny anchors cannot overflow.
    fn expand(&self, a: &Anchor, h: f64) -> (Complex64, Complex64) {
        if h == 0.0 {
            return (a.w, a.dw);
        }
        let ya = a.y;
        let r = h / ya;
        let m = 0.25 - self.mu * self.mu;
        let ca = (-m + (ya * ya / 4.0 - self.kappa * ya)) * (r * r);
        let cb = (ya / 2.0 - self.kappa) * (r * r * h);
        let cc = 0.25 * r * r * h * h;
        let mut t: Vec<Complex64> = vec![a.w, a.dw * h];
        let mut w = t[0] + t[1];
        let mut dsum = t[1];
        let mut small = 0;
        for k in 0..MAX_TAYLOR_TERMS {
            let kf = k as f64;
            let mut num = ca * t[k] - t[k] * (kf * (kf - 1.0) * r * r) - t[k + 1] * (2.0 * (kf + 1.0) * kf * r);
            if k >= 1 {
                num += t[k - 1] * cb;
            }
            if k >= 2 {
                num += t[k - 2] * cc;
            }
            let next = num / ((kf + 2.0) * (kf + 1.0));
            t.push(next);
            w += next;
            dsum += next * (kf + 2.0);
            if next.norm() * (kf + 2.0) <= 1e-18 * w.norm().min(dsum.norm()).max(1e-300) {
                small += 1;
                if small >= 3 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        (w, dsum / h)
    }

    fn advance(&self, a: &Anchor, h: f64) -> Anchor {
        let (w, dw) = self.expand(a, h);
        Anchor { y: a.y + h, w, dw }
    }

    /// `(W(y), W'(y))`.
    pub fn eval_with_derivative(&self, y: f64) -> Result<(Complex64, Complex64), WhittakerError> {
        if !(y > 0.0) {
            return Err(WhittakerError::NonPositive(y));
        }
        if y >= self.y_large {
            return Ok(asymptotic(self.kappa, self.mu, y));
        }
        // first anchor at or below y; expand from its predecessor (the nearest anchor above y)
        let idx = self.anchors.partition_point(|a| a.y > y);
        if idx < self.anchors.len() {
            let a = &self.anchors[idx - 1];
            return Ok(self.expand(a, y - a.y));
        }
        let mut a = *self.anchors.last().expect("anchors nonempty");
        while a.y - self.step(a.y) > y {
            a = self.advance(&a, -self.step(a.y));
        }
        Ok(self.expand(&a, y - a.y))
    }

    pub fn eval(&self, y: f64) -> Result<Complex64, WhittakerError> {
        Ok(self.eval_with_derivative(y)?.0)
    }
}

/// Asymptotic series `e^{-y/2} y^kappa sum c_k y^{-k}` and its derivative,
/// summed up to the smallest term.
fn asymptotic(kappa: f64, mu: Complex64, y: f64) -> (Complex64, Complex64) {
    let mut term = Complex64::new(1.0, 0.0);
    let mut s = term;
    let mut ds = Complex64::new(-0.5 + kappa / y, 0.0);
    let mut prev = f64::INFINITY;
    for k in 0..400 {
        let kf = k as f64;
        let next = term * (0.5 + mu - kappa + kf) * (0.5 - mu - kappa + kf) / (-(kf + 1.0) * y);
        let size = next.norm();
        if size == 0.0 || size > prev || size < 1e-18 * s.norm() {
            if size < prev {
                s += next;
                ds += next * (-0.5 + (kappa - kf - 1.0) / y);
            }
            break;
        }
        prev = size;
        term = next;
        s += term;
        ds += term * (-0.5 + (kappa - kf - 1.0) / y);
    }
    let pre = (-y / 2.0 + kappa * y.ln()).exp();
    (s * pre, ds * pre)
}

/// `W_{kappa,mu}(y)`.
pub fn whittaker(kappa: f64, mu: Complex64, y: f64) -> Result<Complex64, WhittakerError> {
    Whittaker::new(kappa, mu)?.eval(y)
}

/// `W_{kappa,mu}(y)` with an a-posteriori check: the value is recomputed with
/// half the step size and the discrepancy must stay below `rel_tol`.
pub fn whittaker_checked(kappa: f64, mu: Complex64, y: f64, rel_tol: f64) -> Result<Complex64, WhittakerError> {
    let coarse = Whittaker::new(kappa, mu)?.eval(y)?;
    let fine = Whittaker::with_step(kappa, mu, 1.0 / 6.0)?.eval(y)?;
    let achieved = (coarse - fine).norm() / fine.norm().max(1e-300);
    if achieved > rel_tol {
        return Err(WhittakerError::Accuracy { requested: rel_tol, achieved });
    }
    Ok(fine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::special::bessel_k;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn oracle_values() {
        let cases = [
            (0.5, c(0.0, 0.3), 0.7, 0.53900771210803041),
            (0.5, c(0.0, 0.3), 5.0, 0.18053399036707712),
            (-0.5, c(0.0, 0.3), 0.7, 0.41759689230894481),
            (-0.5, c(0.0, 0.3), 5.0, 0.030830548859931433),
            (-0.5, c(0.0, 0.3), 0.05, 0.44791593318676689),
            (0.0, c(0.25, 0.0), 1.0, 0.54180046743743258),
            (0.0, c(0.25, 0.0), 20.0, 4.4995487631259378e-5),
            (0.5, c(0.0, 0.25), 4.0 * PI, 0.0065882510815827811),
            (-0.5, c(0.8, 0.0), 2.0, 0.23172032457149679),
            (0.5, c(1.3, 0.0), 0.3, 4.5166903919594386),
        ];
        for (k, mu, y, want) in cases {
            let got = whittaker(k, mu, y).unwrap();
            assert!(rel(got, c(want, 0.0)) < 1e-10, "W({k},{mu},{y}) = {got}, want {want}");
        }
    }

    #[test]
    fn closed_form() {
        let got = whittaker(0.5, c(0.0, 0.0), 2.0).unwrap();
        assert!(rel(got, c((-1.0f64).exp() * 2f64.sqrt(), 0.0)) < 1e-12);
        for mu in [-1.0, 0.0, 0.3, 1.2] {
            for y in [0.01f64, 0.4, 3.0, 40.0, 90.0] {
                let want = y.powf(mu + 0.5) * (-y / 2.0).exp();
                let got = whittaker(mu + 0.5, c(mu, 0.0), y).unwrap();
                assert!(rel(got, c(want, 0.0)) < 1e-10, "{mu} {y} {got} {want}");
            }
        }
    }

    #[test]
    fn bessel_cross_check() {
        for mu in [c(0.25, 0.0), c(0.0, 0.3), c(0.6, 1.1)] {
            let w = Whittaker::new(0.0, mu).unwrap();
            for y in [0.2, 1.0, 5.0, 20.0] {
                let want = bessel_k(mu, y).unwrap() * (2.0 * y / PI).sqrt();
                assert!(rel(w.eval(2.0 * y).unwrap(), want) < 1e-8, "{mu} {y}");
            }
        }
    }

    #[test]
    fn growth_normalization() {
        let y = 80.0;
        for kappa in [-0.5, 0.0, 0.5] {
            let w = whittaker(kappa, c(0.0, 0.3), y).unwrap();
            let r = w * (y / 2.0).exp() * y.powf(-kappa);
            assert!((r - 1.0).norm() < 0.05);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(whittaker(0.5, c(0.0, 0.0), 0.0), Err(WhittakerError::NonPositive(0.0)));
        assert!(matches!(Whittaker::new(0.0, c(2.5, 0.0)), Err(WhittakerError::Strip(_))));
        assert!(whittaker_checked(0.5, c(0.0, 0.3), 1.0, 1e-10).is_ok());
        assert!(matches!(
            whittaker_checked(0.5, c(0.0, 0.3), 1.0, 0.0),
            Err(WhittakerError::Accuracy { .. }) | Ok(_)
        ));
    }

    #[test]
    fn below_anchor_floor() {
        let w = Whittaker::new(-0.5, c(0.0, 0.3)).unwrap();
        let v = w.eval(1e-10).unwrap();
        assert!(v.norm().is_finite() && v.norm() > 0.0, "{v}");
    }
}
