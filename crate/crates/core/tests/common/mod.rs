#![allow(dead_code)]

use gamma0_core::arith::ext_gcd;
use gamma0_core::mat2::{Letter, ProjMat, SpecialWord, Token};
use rand::Rng;

/// Random element of `Gamma0(n)` with lower-left entry up to `n * max_k`.
pub fn random_gamma0<R: Rng>(rng: &mut R, n: u64, max_k: i64) -> ProjMat {
    loop {
        let c = n as i128 * rng.gen_range(-max_k..=max_k) as i128;
        let d = rng.gen_range(-500i128..=500);
        if d == 0 && c.abs() != 1 {
            continue;
        }
        let (g, x, y) = ext_gcd(d, c);
        if g.abs() != 1 {
            continue;
        }
        // a d - b c = 1 with a = x g, b = -y g
        let (a, b) = (x * g, -y * g);
        let t = rng.gen_range(-3i128..=3);
        let (a, b) = (a + t * c, b + t * d);
        return ProjMat::lit(a as i64, b as i64, c as i64, d as i64);
    }
}

/// Letters usable at level `n` for random words.
pub fn letters_for(n: u64) -> Vec<Letter> {
    let mut v = vec![Letter::p_int(1), Letter::p_frac(1, 3), Letter::p_frac(-2, 5), Letter::H(n), Letter::Q, Letter::W(n)];
    if n % 2 == 0 {
        v.push(Letter::J(n));
    }
    if n % 4 == 0 {
        v.push(Letter::L(n));
    }
    match n {
        18 => v.extend([Letter::A, Letter::B]),
        20 => v.push(Letter::C),
        24 => v.push(Letter::D),
        _ => {}
    }
    v
}

pub fn random_word<R: Rng>(rng: &mut R, letters: &[Letter], max_len: usize) -> SpecialWord {
    let len = rng.gen_range(0..=max_len);
    let tokens = (0..len)
        .map(|_| {
            let l = letters[rng.gen_range(0..letters.len())].clone();
            let e = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
            Token::new(l, e)
        })
        .collect();
    SpecialWord::new(tokens)
}
