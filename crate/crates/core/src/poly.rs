//! Sparse multivariate polynomials in the sphere parameters `l1, l2, ...`.
//!
//! Terms are stored in a `BTreeMap` keyed by [`Monomial`] under graded
//! lexicographic order, so two polynomials are equal exactly when their maps
//! are equal. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Rational, Ring};

/// Exponent vector with trailing zeros trimmed (`l1^2*l3` is `[2, 0, 1]`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exponent(i) + other.exponent(i)).collect())
    }

    fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        if v.len() <= i {
            v.resize(i + 1, 0);
        }
        v[i] = e;
        Monomial::new(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            (0..n)
                .map(|i| self.exponent(i).cmp(&other.exponent(i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "l{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

/// Polynomials over the rationals: the ring of λ-parametric coefficients.
pub type LambdaPoly = Poly<Rational>;

impl<C: Ring> Poly<C> {
    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    /// The variable `l{i+1}`.
    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i), C::one())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` when every term has degree `d`; the zero polynomial is not
    /// homogeneous of any particular degree and returns `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Number of variables actually occurring.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn eval(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                let x = point.get(i).cloned().unwrap_or_else(C::zero);
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute `l{i+1} -> images[i]`; variables beyond `images` stay.
    pub fn substitute(&self, images: &[Poly<C>]) -> Poly<C> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                let img = images.get(i).cloned().unwrap_or_else(|| Poly::var(i));
                for _ in 0..e {
                    t = t * img.clone();
                }
            }
            out = out + t;
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        Poly::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Poly::one(), |acc, _| acc * self.clone())
    }

    /// `l1^2 + ... + l{nvars}^2`.
    pub fn sphere_norm(nvars: usize) -> Self {
        Poly::from_terms((0..nvars).map(|i| {
            let mut e = vec![0; i + 1];
            e[i] = 2;
            (Monomial::new(e), C::one())
        }))
    }

    /// Normal form modulo the ideal `(l1^2 + ... + l{nvars}^2 - 1)`.
    ///
    /// Every `l{nvars}^2` is rewritten as `1 - l1^2 - ... - l{nvars-1}^2`.
    /// The generator of a principal ideal is a Gröbner basis, so the result
    /// is canonical: two polynomials agree on the unit sphere iff their
    /// normal forms are equal.
    pub fn reduce_sphere(&self, nvars: usize) -> Self {
        assert!(nvars >= 1, "sphere reduction needs at least one variable");
        let last = nvars - 1;
        let mut work: Vec<(Monomial, C)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        let mut out = Poly::zero();
        while let Some((m, c)) = work.pop() {
            let e = m.exponent(last);
            if e < 2 {
                out.add_term(m, c);
                continue;
            }
            let base = m.with_exponent(last, e - 2);
            for i in 0..last {
                let mi = base.with_exponent(i, base.exponent(i) + 2);
                work.push((mi, -c.clone()));
            }
            work.push((base, c));
        }
        out
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl<C: Ring> Zero for Poly<C> {
    fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for Poly<C> {
    fn one() -> Self {
        Poly::constant(C::one())
    }
}

impl<C: Ring> Add for Poly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<C: Ring> Sub for Poly<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<C: Ring> Neg for Poly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<C: Ring> Mul for Poly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn from_rational(q: &Rational) -> Self {
        Poly::constant(C::from_rational(q))
    }
}

impl<C: Ring> fmt::Display for Poly<C> {
    /// Descending graded-lex order, e.g. `6*l1^4 - 6*l1^2*l2^2 + 6*l2^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let is_unit = body == "1";
            match (m.degree() == 0, is_unit) {
                (true, _) => f.write_str(&body)?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{body}*{m}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn l(i: usize) -> LambdaPoly {
        Poly::var(i)
    }

    #[test]
    fn display_is_descending_grlex() {
        let a = l(0) * l(0) - l(1) * l(1);
        let p = (a.clone() * a + l(0) * l(0) * l(1) * l(1)).scale(&int(6));
        assert_eq!(p.to_string(), "6*l1^4 - 6*l1^2*l2^2 + 6*l2^4");
        assert_eq!(LambdaPoly::zero().to_string(), "0");
        assert_eq!((-l(1) + Poly::constant(rat(1, 2))).to_string(), "-l2 + 1/2");
    }

    #[test]
    fn sphere_reduction_identifies_norm_with_one() {
        let s = Poly::<Rational>::sphere_norm(3);
        assert_eq!(s.reduce_sphere(3), Poly::one());
        let s2 = s.clone() * s;
        assert_eq!(s2.reduce_sphere(3), Poly::one());
        // l3^3 -> l3 (1 - l1^2 - l2^2)
        let cube = l(2).pow(3).reduce_sphere(3);
        let expect = l(2) - l(0) * l(0) * l(2) - l(1) * l(1) * l(2);
        assert_eq!(cube, expect);
    }

    #[test]
    fn homogeneity_and_eval() {
        let p = l(0) * l(1) + l(1) * l(1);
        assert_eq!(p.homogeneous_degree(), Some(2));
        assert_eq!((p.clone() + Poly::one()).homogeneous_degree(), None);
        assert_eq!(p.eval(&[int(2), int(3)]), int(15));
        let q = p.substitute(&[Poly::one(), l(0)]);
        assert_eq!(q, l(0) + l(0) * l(0));
    }
}
