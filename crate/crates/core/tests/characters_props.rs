use gamma0_core::arith::{euler_phi, is_prime};
use gamma0_core::characters::{additive_twist_residual, enumerate_chars, gauss_sum, primitive_chars, TwistSpec};
use num_complex::Complex64;

#[test]
fn orthogonality() {
    for q in 1..=50u64 {
        let chars = enumerate_chars(q).unwrap();
        assert_eq!(chars.len() as u64, euler_phi(q));
        let phi = euler_phi(q) as f64;
        for (i, x) in chars.iter().enumerate() {
            for (j, y) in chars.iter().enumerate() {
                let s: Complex64 = (0..q as i64).map(|a| x.value(a) * y.value(a).conj()).sum::<Complex64>() / phi;
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((s - want).norm() < 1e-12, "q={q}, {i}, {j}");
            }
        }
    }
}

#[test]
fn gauss_sum_identities() {
    for q in 2..=50u64 {
        for psi in primitive_chars(q).unwrap() {
            let t = gauss_sum(&psi);
            assert!((t.norm_sqr() - q as f64).abs() < 1e-10);
            let prod = t * gauss_sum(&psi.conj());
            assert!((prod - psi.parity() as f64 * q as f64).norm() < 1e-10, "q={q}");
        }
    }
}

/// Numerical rank by Gaussian elimination with partial pivoting.
fn rank(mut m: Vec<Vec<Complex64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..cols {
        let Some(piv) = (r..rows).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm())) else { break };
        if m[piv][col].norm() < 1e-9 {
            continue;
        }
        m.swap(r, piv);
        for i in 0..rows {
            if i != r {
                let f = m[i][col] / m[r][col];
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
        r += 1;
    }
    r
}

#[test]
fn primitive_characters_span() {
    for q in (3..=31u64).filter(|&q| is_prime(q)) {
        let prims = primitive_chars(q).unwrap();
        assert_eq!(prims.len() as u64, q - 2);
        let gram: Vec<Vec<Complex64>> = prims
            .iter()
            .map(|x| prims.iter().map(|y| (1..q as i64).map(|a| x.value(a) * y.value(a).conj()).sum()).collect())
            .collect();
        assert_eq!(rank(gram), (q - 2) as usize, "q = {q}");
    }
}

#[test]
fn twist_residual_small_moduli() {
    for q in (3..=13u64).filter(|&q| is_prime(q)) {
        for a in 1..q as i64 {
            for m in 0..=3 {
                for n in [1i64, 2, 7, q as i64, 3 * q as i64, 199, 200] {
                    let r = additive_twist_residual(&TwistSpec { q, a, m }, n).unwrap();
                    assert!(r < 1e-10, "q={q} a={a} m={m} n={n}: {r}");
                }
            }
        }
    }
}
