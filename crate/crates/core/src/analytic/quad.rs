//! Globally adaptive Gauss-Kronrod (7/15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("quadrature did not reach relative tolerance {tol:e}: error estimate {estimate:e} after {intervals} intervals")]
    NoConvergence { tol: f64, estimate: f64, intervals: usize },
    #[error("non-finite integrand value near t = {0}")]
    NonFinite(f64),
}

struct Piece {
    lo: f64,
    hi: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, lo: f64, hi: f64) -> Result<Piece, QuadError> {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(mid);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(mid - dx) + f(mid + dx);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let value = kron * half;
    let err = ((kron - gauss) * half).norm();
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(QuadError::NonFinite(mid));
    }
    Ok(Piece { lo, hi, value, err })
}

/// Integrate `f` over `[points[0], points[last]]`, using the given points as
/// initial breakpoints and bisecting the interval with the largest error
/// estimate until the total estimate is below `rel_tol * |integral|`.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: &F,
    points: &[f64],
    rel_tol: f64,
    max_intervals: usize,
) -> Result<Complex64, QuadError> {
    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        heap.push(gk15(f, w[0], w[1])?);
    }
    loop {
        let total: Complex64 = heap.iter().map(|p| p.value).sum();
        let err: f64 = heap.iter().map(|p| p.err).sum();
        if err <= rel_tol * total.norm() || err < 1e-300 {
            return Ok(total);
        }
        if heap.len() >= max_intervals {
            return Err(QuadError::NoConvergence {
                tol: rel_tol,
                estimate: err / total.norm().max(1e-300),
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.lo + worst.hi);
        heap.push(gk15(f, worst.lo, mid)?);
        heap.push(gk15(f, mid, worst.hi)?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_oscillatory() {
        let v = integrate(&|t: f64| Complex64::new(t * t, 0.0), &[0.0, 1.0], 1e-14, 100).unwrap();
        assert!((v.re - 1.0 / 3.0).abs() < 1e-15);
        let w = integrate(&|t: f64| Complex64::new(0.0, t).exp(), &[0.0, 10.0], 1e-13, 1000).unwrap();
        let want = (Complex64::new(0.0, 10.0).exp() - 1.0) / Complex64::new(0.0, 1.0);
        assert!((w - want).norm() < 1e-12);
    }

    #[test]
    fn reports_failure() {
        let r = integrate(&|t: f64| Complex64::new(1.0 / t.sqrt(), 0.0), &[0.0, 1.0], 1e-15, 4);
        assert!(matches!(r, Err(QuadError::NoConvergence { .. })));
    }
}
