use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::exterior::field::VectorField;
use crate::exterior::frame::{same_frame, FrameRef};
use crate::scalar::{Rational, Ring};

/// Strictly increasing tuple of 0-based basis indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Blade(Vec<usize>);

impl Blade {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sort an index tuple, returning the blade and whether the permutation
    /// was odd. `Err` carries a repeated index.
    pub fn sort(mut idx: Vec<usize>) -> Result<(Blade, bool), usize> {
        let mut odd = false;
        // insertion sort; tuples are short
        for i in 1..idx.len() {
            let mut j = i;
            while j > 0 && idx[j - 1] > idx[j] {
                idx.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if let Some(w) = idx.windows(2).find(|w| w[0] == w[1]) {
            return Err(w[0]);
        }
        Ok((Blade(idx), odd))
    }
}

/// Merge two sorted blades. `None` when they share an index, otherwise the
/// union and the parity of the shuffle.
fn merge(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j, mut inversions) = (0, 0, 0usize);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => return None,
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, inversions % 2 == 1))
}

/// A left-invariant (constant-coefficient) k-form on a frame, stored sparsely
/// in the dual basis `e^I = e^{i_1} ∧ ... ∧ e^{i_k}` with `I` increasing.
#[derive(Clone, Debug)]
pub struct KForm<R> {
    frame: FrameRef,
    degree: usize,
    coeffs: BTreeMap<Blade, R>,
}

impl<R: Ring> PartialEq for KForm<R> {
    fn eq(&self, other: &Self) -> bool {
        same_frame(&self.frame, &other.frame)
            && self.degree == other.degree
            && self.coeffs == other.coeffs
    }
}

impl<R: Ring> KForm<R> {
    pub fn zero(frame: &FrameRef, degree: usize) -> Result<Self> {
        if degree > frame.dim() {
            return Err(Error::DegreeOutOfRange { degree, dim: frame.dim() });
        }
        Ok(Self::zero_unchecked(frame, degree))
    }

    fn zero_unchecked(frame: &FrameRef, degree: usize) -> Self {
        KForm { frame: frame.clone(), degree, coeffs: BTreeMap::new() }
    }

    /// The 0-form `c`.
    pub fn constant(frame: &FrameRef, c: R) -> Self {
        let mut f = Self::zero_unchecked(frame, 0);
        if !c.is_zero() {
            f.coeffs.insert(Blade(Vec::new()), c);
        }
        f
    }

    /// Dual covector `e^i`.
    pub fn basis(frame: &FrameRef, i: usize) -> Result<Self> {
        Self::from_terms(frame, 1, [(vec![i], R::one())])
    }

    /// Sum of `c * e^{i_1} ∧ ... ∧ e^{i_k}` over arbitrary index tuples.
    /// Unsorted tuples are sorted with sign; repeated indices are an error.
    pub fn from_terms<I>(frame: &FrameRef, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, R)>,
    {
        let mut f = Self::zero(frame, degree)?;
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::WrongDegree { expected: degree, got: idx.len() });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= frame.dim()) {
                return Err(Error::IndexOutOfRange { index: bad, dim: frame.dim() });
            }
            let (blade, odd) = Blade::sort(idx).map_err(Error::RepeatedIndex)?;
            f.accumulate(blade, if odd { -c } else { c });
        }
        Ok(f)
    }

    fn accumulate(&mut self, blade: Blade, c: R) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&blade) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.coeffs.insert(blade, s);
                }
            }
            None => {
                self.coeffs.insert(blade, c);
            }
        }
    }

    pub fn frame(&self) -> &FrameRef {
        &self.frame
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &R)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient on an arbitrary index tuple, with the alternating sign.
    pub fn coeff(&self, idx: &[usize]) -> R {
        if idx.len() != self.degree {
            return R::zero();
        }
        match Blade::sort(idx.to_vec()) {
            Err(_) => R::zero(),
            Ok((b, odd)) => {
                let c = self.coeffs.get(&b).cloned().unwrap_or_else(R::zero);
                if odd {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Coefficient on `e^1 ∧ ... ∧ e^n`. Zero unless the degree is `n`.
    pub fn top_coefficient(&self) -> R {
        let n = self.frame.dim();
        if self.degree != n {
            return R::zero();
        }
        self.coeffs.get(&Blade((0..n).collect())).cloned().unwrap_or_else(R::zero)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> KForm<S> {
        KForm {
            frame: self.frame.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(b, c)| (b.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    fn check_frame(&self, other: &FrameRef) -> Result<()> {
        if same_frame(&self.frame, other) {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_frame(&other.frame)?;
        if self.degree != other.degree {
            return Err(Error::WrongDegree { expected: self.degree, got: other.degree });
        }
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.accumulate(b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_frame(&other.frame)?;
        let mut out = Self::zero_unchecked(&self.frame, self.degree + other.degree);
        if out.degree > self.frame.dim() {
            return Ok(out);
        }
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if let Some((idx, odd)) = merge(&a.0, &b.0) {
                    let c = ca.clone() * cb.clone();
                    out.accumulate(Blade(idx), if odd { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `self^m` under the wedge product; `self^0 = 1`.
    pub fn power(&self, m: usize) -> Self {
        let mut acc = KForm::constant(&self.frame, R::one());
        for _ in 0..m {
            acc = acc.wedge(self).expect("same frame");
        }
        acc
    }

    /// Interior product `i_v self`: insert `v` in the first slot.
    pub fn interior(&self, v: &VectorField<R>) -> Result<Self> {
        self.check_frame(v.frame())?;
        if self.degree == 0 {
            return Err(Error::InteriorOfFunction);
        }
        let mut out = Self::zero_unchecked(&self.frame, self.degree - 1);
        for (b, c) in &self.coeffs {
            for (pos, &j) in b.0.iter().enumerate() {
                let vj = v.coeff(j);
                if vj.is_zero() {
                    continue;
                }
                let mut rest = b.0.clone();
                rest.remove(pos);
                let t = c.clone() * vj.clone();
                out.accumulate(Blade(rest), if pos % 2 == 1 { -t } else { t });
            }
        }
        Ok(out)
    }

    /// Exterior derivative of a left-invariant form, computed as the
    /// antiderivation extending `d e^k = -sum_{i<j} c^k_ij e^i ∧ e^j`.
    ///
    /// This is the convention `dα(X,Y) = Xα(Y) - Yα(X) - α([X,Y])` together
    /// with the determinant wedge, i.e. no factor 1/2 anywhere.
    pub fn ext_d(&self) -> Self {
        let dim = self.frame.dim();
        let mut out = Self::zero_unchecked(&self.frame, self.degree + 1);
        if self.degree >= dim || self.frame.is_abelian() {
            return out;
        }
        let basis_d: Vec<Vec<(usize, usize, R)>> = (0..dim)
            .map(|k| {
                let mut v = Vec::new();
                for i in 0..dim {
                    for j in i + 1..dim {
                        let c = self.frame.constant(i, j, k);
                        if !num_traits::Zero::is_zero(c) {
                            v.push((i, j, -R::from_rational(c)));
                        }
                    }
                }
                v
            })
            .collect();
        for (b, c) in &self.coeffs {
            for (pos, &k) in b.0.iter().enumerate() {
                for (i, j, ck) in &basis_d[k] {
                    // e^{b_0} ∧ ... ∧ (e^i ∧ e^j) ∧ ... with the d moved past
                    // `pos` one-forms
                    let mut idx = b.0[..pos].to_vec();
                    idx.push(*i);
                    idx.push(*j);
                    idx.extend_from_slice(&b.0[pos + 1..]);
                    if let Ok((blade, odd)) = Blade::sort(idx) {
                        let t = c.clone() * ck.clone();
                        let neg = odd ^ (pos % 2 == 1);
                        out.accumulate(blade, if neg { -t } else { t });
                    }
                }
            }
        }
        out
    }

    /// Evaluate on `k` vectors by the Leibniz determinant formula.
    /// Cost grows like `k!`; intended as an independent check.
    pub fn eval(&self, vectors: &[VectorField<R>]) -> Result<R> {
        if vectors.len() != self.degree {
            return Err(Error::ArityMismatch { expected: self.degree, got: vectors.len() });
        }
        for v in vectors {
            self.check_frame(v.frame())?;
        }
        let perms = permutations(self.degree);
        let mut total = R::zero();
        for (b, c) in &self.coeffs {
            let mut det = R::zero();
            for (perm, odd) in &perms {
                let mut p = R::one();
                for (m, &s) in perm.iter().enumerate() {
                    p = p * vectors[s].coeff(b.0[m]).clone();
                    if p.is_zero() {
                        break;
                    }
                }
                det = if *odd { det - p } else { det + p };
            }
            total = total + c.clone() * det;
        }
        Ok(total)
    }

    /// Restrict the frame: re-home this form on `frame`, which must share the
    /// first `dim` basis vectors. Used after [`crate::Frame::extend_abelian`].
    pub fn embed(&self, frame: &FrameRef) -> Result<Self> {
        let n = self.frame.dim();
        if frame.dim() < n
            || frame.names()[..n] != self.frame.names()[..]
            || (0..n).any(|i| {
                (0..n).any(|j| {
                    (0..frame.dim()).any(|k| {
                        let old = if k < n {
                            self.frame.constant(i, j, k).clone()
                        } else {
                            num_traits::Zero::zero()
                        };
                        *frame.constant(i, j, k) != old
                    })
                })
            })
        {
            return Err(Error::FrameMismatch);
        }
        Ok(KForm { frame: frame.clone(), degree: self.degree, coeffs: self.coeffs.clone() })
    }
}

impl KForm<Rational> {
    /// Coerce a rational form into another coefficient ring.
    pub fn lift<S: Ring>(&self) -> KForm<S> {
        self.map(S::from_rational)
    }
}

/// All permutations of `0..k` with their parity (Heap's algorithm).
pub(crate) fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut a: Vec<usize> = (0..k).collect();
    let mut c = vec![0usize; k];
    let mut odd = false;
    let mut out = vec![(a.clone(), odd)];
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            odd = !odd;
            out.push((a.clone(), odd));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

impl<R: Ring> Add for KForm<R> {
    type Output = KForm<R>;
    /// Panics on frame or degree mismatch; see [`KForm::try_add`].
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("form addition")
    }
}

impl<R: Ring> Add for &KForm<R> {
    type Output = KForm<R>;
    fn add(self, rhs: Self) -> KForm<R> {
        self.try_add(rhs).expect("form addition")
    }
}

impl<R: Ring> Neg for KForm<R> {
    type Output = KForm<R>;
    fn neg(self) -> Self {
        self.map(|c| -c.clone())
    }
}

impl<R: Ring> Neg for &KForm<R> {
    type Output = KForm<R>;
    fn neg(self) -> KForm<R> {
        self.map(|c| -c.clone())
    }
}

impl<R: Ring> Sub for KForm<R> {
    type Output = KForm<R>;
    fn sub(self, rhs: Self) -> Self {
        self.try_add(&-rhs).expect("form subtraction")
    }
}

impl<R: Ring> Sub for &KForm<R> {
    type Output = KForm<R>;
    fn sub(self, rhs: Self) -> KForm<R> {
        self.try_add(&-rhs).expect("form subtraction")
    }
}

/// Render a coefficient, parenthesizing compound expressions.
pub(crate) fn coeff_str<R: Ring>(c: &R) -> (bool, String) {
    let s = c.to_string();
    if s.contains(' ') {
        (false, format!("({s})"))
    } else if let Some(rest) = s.strip_prefix('-') {
        (true, rest.to_string())
    } else {
        (false, s)
    }
}

pub(crate) fn write_terms<'a, R: Ring + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a R)>,
) -> fmt::Result {
    let mut first = true;
    for (name, c) in terms {
        let (neg, mag) = coeff_str(c);
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        match (mag.as_str(), name.is_empty()) {
            (m, true) => f.write_str(m)?,
            ("1", false) => f.write_str(&name)?,
            (m, false) => write!(f, "{m}*{name}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<R: Ring> fmt::Display for KForm<R> {
    /// Basis covectors print as `d<name>`, wedges as `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.frame.names();
        write_terms(
            f,
            self.coeffs.iter().map(|(b, c)| {
                let name = b.0.iter().map(|&i| format!("d{}", names[i])).collect::<Vec<_>>().join("^");
                (name, c)
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::frame::{default_names, Frame};
    use crate::scalar::int;

    fn one(frame: &FrameRef, i: usize) -> KForm<Rational> {
        KForm::basis(frame, i).unwrap()
    }

    #[test]
    fn wedge_signs() {
        let f = Frame::abelian(3);
        let a = one(&f, 0).wedge(&one(&f, 1)).unwrap();
        let b = one(&f, 1).wedge(&one(&f, 0)).unwrap();
        assert_eq!(a, -b);
        assert_eq!(a.coeff(&[1, 0]), int(-1));
        assert!(one(&f, 2).wedge(&one(&f, 2)).unwrap().is_zero());
        let top = a.wedge(&one(&f, 2)).unwrap();
        assert_eq!(top.top_coefficient(), int(1));
    }

    #[test]
    fn from_terms_rejects_bad_input() {
        let f = Frame::abelian(3);
        assert!(matches!(
            KForm::<Rational>::from_terms(&f, 2, [(vec![1, 1], int(1))]),
            Err(Error::RepeatedIndex(1))
        ));
        assert!(KForm::<Rational>::zero(&f, 4).is_err());
        assert!(KForm::<Rational>::from_terms(&f, 1, [(vec![3], int(1))]).is_err());
    }

    #[test]
    fn heisenberg_d_without_half() {
        let f = Frame::new(default_names(3), &[(0, 1, vec![(2, int(1))])]).unwrap();
        let d = one(&f, 2).ext_d();
        let expect = -(one(&f, 0).wedge(&one(&f, 1)).unwrap());
        assert_eq!(d, expect);
        // dα(e1,e2) = -α([e1,e2])
        let e1 = VectorField::basis(&f, 0).unwrap();
        let e2 = VectorField::basis(&f, 1).unwrap();
        assert_eq!(d.eval(&[e1, e2]).unwrap(), int(-1));
    }

    #[test]
    fn interior_sign() {
        let f = Frame::abelian(3);
        let a = KForm::<Rational>::from_terms(&f, 2, [(vec![0, 2], int(1))]).unwrap();
        let e3 = VectorField::basis(&f, 2).unwrap();
        assert_eq!(a.interior(&e3).unwrap(), -one(&f, 0));
        assert!(matches!(KForm::constant(&f, int(1)).interior(&e3), Err(Error::InteriorOfFunction)));
    }

    #[test]
    fn permutation_table() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().filter(|(_, odd)| *odd).count(), 3);
        assert_eq!(permutations(0).len(), 1);
    }

    #[test]
    fn display() {
        let f = Frame::abelian(3);
        let a = KForm::<Rational>::from_terms(&f, 1, [(vec![0], int(-1)), (vec![2], int(2))]).unwrap();
        assert_eq!(a.to_string(), "-de1 + 2*de3");
    }
}
