//! Seeded random frames, forms and structures for property tests.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exterior::frame::default_names;
use crate::exterior::{EndoField, Frame, FrameRef, KForm, VectorField};
use crate::io::corpus;
use crate::linalg::Matrix;
use crate::scalar::{int, rat, Rational};
use crate::sphere::Generators;
use crate::structures::AlmostCosym;
use crate::{Endo, Form, Vector};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small integer, or with probability 1/4 a fraction with denominator ≤ 3.
pub fn rational(rng: &mut SeededRng) -> Rational {
    let n = rng.gen_range(-3..=3);
    if rng.gen_bool(0.25) {
        rat(n, rng.gen_range(1..=3))
    } else {
        int(n)
    }
}

fn nonzero(rng: &mut SeededRng) -> Rational {
    loop {
        let q = rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

fn so3() -> FrameRef {
    let b = |k: usize| vec![(k, int(1))];
    Frame::new(default_names(3), &[(0, 1, b(2)), (1, 2, b(0)), (2, 0, b(1))]).expect("so(3)")
}

fn aff1() -> FrameRef {
    Frame::new(default_names(2), &[(0, 1, vec![(1, int(1))])]).expect("aff(1)")
}

fn sl2() -> FrameRef {
    // [h,e] = 2e, [h,f] = -2f, [e,f] = h
    Frame::new(default_names(3), &[(0, 1, vec![(1, int(2))]), (0, 2, vec![(2, int(-2))]), (1, 2, vec![(0, int(1))])])
        .expect("sl(2)")
}

/// A direct sum of known Lie algebras of total dimension `dim`, written in a
/// random basis. Brackets are Jacobi-checked on construction.
pub fn frame(rng: &mut SeededRng, dim: usize) -> FrameRef {
    let mut pieces: Vec<FrameRef> = Vec::new();
    let mut left = dim;
    while left > 0 {
        let mut options: Vec<FrameRef> = vec![Frame::abelian(1)];
        if left >= 2 {
            options.push(aff1());
        }
        if left >= 3 {
            options.extend([corpus::heisenberg_frame(nonzero(rng)), so3(), sl2()]);
        }
        if left >= 7 {
            options.push(corpus::lie7_frame());
        }
        let pick = options.choose(rng).expect("nonempty").clone();
        left -= pick.dim();
        pieces.push(pick);
    }
    pieces.shuffle(rng);
    let mut brackets = Vec::new();
    let mut offset = 0;
    for p in &pieces {
        brackets.extend(p.brackets().into_iter().map(|(i, j, t)| {
            (i + offset, j + offset, t.into_iter().map(|(k, c)| (k + offset, c)).collect())
        }));
        offset += p.dim();
    }
    let sum = Frame::new(default_names(dim), &brackets).expect("direct sum of Lie algebras");
    sum.change_basis(&unimodular(rng, dim)).expect("invertible basis change")
}

/// Integer matrix with determinant ±1: a random permutation of `L·U`.
pub fn unimodular(rng: &mut SeededRng, n: usize) -> Matrix<Rational> {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if i > j && rng.gen_bool(0.4) {
                l[(i, j)] = int(rng.gen_range(-2..=2));
            }
            if i < j && rng.gen_bool(0.4) {
                u[(i, j)] = int(rng.gen_range(-2..=2));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let m = l.mul(&u);
    Matrix::from_fn(n, n, |i, j| m[(perm[i], j)].clone())
}

/// Random `degree`-form with each blade present with probability `density`.
pub fn form(rng: &mut SeededRng, frame: &FrameRef, degree: usize, density: f64) -> Form {
    let n = frame.dim();
    let mut terms = Vec::new();
    for blade in subsets(n, degree) {
        if rng.gen_bool(density) {
            terms.push((blade, rational(rng)));
        }
    }
    KForm::from_terms(frame, degree, terms).expect("valid blades")
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

pub fn vector(rng: &mut SeededRng, frame: &FrameRef) -> Vector {
    VectorField::from_coeffs(frame, (0..frame.dim()).map(|_| rational(rng)).collect()).expect("dimension")
}

pub fn endo(rng: &mut SeededRng, frame: &FrameRef) -> Endo {
    let n = frame.dim();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = rational(rng);
        }
    }
    EndoField::from_matrix(frame, m).expect("square")
}

/// Random `(η, Ω)` with `η ∧ Ωⁿ ≠ 0`.
pub fn almost_cosym(rng: &mut SeededRng, frame: &FrameRef) -> AlmostCosym<Rational> {
    loop {
        let eta = form(rng, frame, 1, 0.7);
        let omega = form(rng, frame, 2, 0.6);
        if let Ok(s) = AlmostCosym::new(eta, omega) {
            return s;
        }
    }
}

/// Two random generators on a random 5-dimensional frame.
pub fn pair_dim5(rng: &mut SeededRng) -> Generators {
    let f = frame(rng, 5);
    let a = almost_cosym(rng, &f);
    let b = almost_cosym(rng, &f);
    Generators::new(vec![a, b]).expect("common frame")
}

/// Two random generators on a random frame of odd dimension `dim`.
pub fn pair(rng: &mut SeededRng, dim: usize) -> Generators {
    let f = frame(rng, dim);
    let a = almost_cosym(rng, &f);
    let b = almost_cosym(rng, &f);
    Generators::new(vec![a, b]).expect("common frame")
}

/// Circle `(η1, η2∧η3), (η2, η3∧η1)` from three independent closed 1-forms
/// on the abelian 3-dimensional frame.
pub fn triple_circle(rng: &mut SeededRng) -> Result<Generators> {
    let f = Frame::abelian(3);
    let m = loop {
        let mut m = Matrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                m[(i, j)] = rational(rng);
            }
        }
        if !m.determinant().is_zero() {
            break m;
        }
    };
    let etas: Vec<Form> = (0..3)
        .map(|a| KForm::from_terms(&f, 1, (0..3).map(|j| (vec![j], m[(a, j)].clone()))))
        .collect::<Result<_>>()?;
    Generators::from_pairs(vec![
        (etas[0].clone(), etas[1].wedge(&etas[2])?),
        (etas[1].clone(), etas[2].wedge(&etas[0])?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frames_are_reproducible_and_valid() {
        for dim in 3..=8 {
            let a = frame(&mut rng(dim as u64), dim);
            let b = frame(&mut rng(dim as u64), dim);
            assert_eq!(a, b);
            assert_eq!(a.dim(), dim);
            assert!(a.jacobi_violation().is_none());
        }
    }

    #[test]
    fn unimodular_is_invertible() {
        let mut r = rng(7);
        for n in 1..6 {
            let d = unimodular(&mut r, n).determinant();
            assert!(d == int(1) || d == int(-1));
        }
    }
}
