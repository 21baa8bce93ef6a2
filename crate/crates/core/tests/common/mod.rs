//! Oracles that evaluate forms on vectors instead of manipulating blades.
#![allow(dead_code)]

use cosym::random::{self, SeededRng};
use cosym::{Form, Rational, Vector};
use num_traits::Zero;

pub fn vectors(rng: &mut SeededRng, f: &cosym::FrameRef, k: usize) -> Vec<Vector> {
    (0..k).map(|_| random::vector(rng, f)).collect()
}

fn without(xs: &[Vector], drop: &[usize]) -> Vec<Vector> {
    xs.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, v)| v.clone()).collect()
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::from_integer(1.into())
    } else {
        Rational::from_integer(1.into())
    }
}

/// `dα(X_0..X_k) = Σ_{i<j} (-1)^{i+j} α([X_i,X_j], X_0..X̂_i..X̂_j..X_k)` for
/// constant `α`.
pub fn d_eval(alpha: &Form, xs: &[Vector]) -> Rational {
    let mut total = Rational::zero();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let mut args = vec![xs[i].bracket(&xs[j]).unwrap()];
            args.extend(without(xs, &[i, j]));
            total += sign((i + j) % 2 == 1) * alpha.eval(&args).unwrap();
        }
    }
    total
}

/// Shuffle formula for `(α∧β)(X_1..X_{p+q})`.
pub fn wedge_eval(a: &Form, b: &Form, xs: &[Vector]) -> Rational {
    let (p, n) = (a.degree(), xs.len());
    let mut total = Rational::zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let first: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let rest: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        // inversions of the permutation (first, rest)
        let inv = first.iter().map(|&i| rest.iter().filter(|&&j| j < i).count()).sum::<usize>();
        let fa: Vec<Vector> = first.iter().map(|&i| xs[i].clone()).collect();
        let fb: Vec<Vector> = rest.iter().map(|&i| xs[i].clone()).collect();
        total += sign(inv % 2 == 1) * a.eval(&fa).unwrap() * b.eval(&fb).unwrap();
    }
    total
}

pub fn interior_eval(v: &Vector, a: &Form, xs: &[Vector]) -> Rational {
    let mut args = vec![v.clone()];
    args.extend_from_slice(xs);
    a.eval(&args).unwrap()
}

/// `(L_v α)(X_1..X_k) = -Σ α(X_1..[v,X_i]..X_k)` for constant `α`.
pub fn lie_eval(v: &Vector, a: &Form, xs: &[Vector]) -> Rational {
    let mut total = Rational::zero();
    for i in 0..xs.len() {
        let mut args = xs.to_vec();
        args[i] = v.bracket(&xs[i]).unwrap();
        total -= a.eval(&args).unwrap();
    }
    total
}

/// Frame of dimension `3 + seed % 6` and a seeded generator.
pub fn instance(seed: u64) -> (SeededRng, cosym::FrameRef) {
    let mut rng = random::rng(seed);
    let f = random::frame(&mut rng, 3 + (seed % 6) as usize);
    (rng, f)
}

/// Degree in `1..=max` not exceeding `dim`.
pub fn degree(rng: &mut SeededRng, dim: usize, max: usize) -> usize {
    use rand::Rng;
    rng.gen_range(1..=max.min(dim))
}
