use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::form::{write_terms, KForm};
use crate::exterior::frame::{same_frame, FrameRef};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Ring};

/// Left-invariant vector field `sum v^i e_i`.
#[derive(Clone, Debug)]
pub struct VectorField<R> {
    frame: FrameRef,
    coeffs: Vec<R>,
}

impl<R: Ring> PartialEq for VectorField<R> {
    fn eq(&self, other: &Self) -> bool {
        same_frame(&self.frame, &other.frame) && self.coeffs == other.coeffs
    }
}

impl<R: Ring> VectorField<R> {
    pub fn zero(frame: &FrameRef) -> Self {
        VectorField { frame: frame.clone(), coeffs: vec![R::zero(); frame.dim()] }
    }

    pub fn basis(frame: &FrameRef, i: usize) -> Result<Self> {
        if i >= frame.dim() {
            return Err(Error::IndexOutOfRange { index: i, dim: frame.dim() });
        }
        let mut v = Self::zero(frame);
        v.coeffs[i] = R::one();
        Ok(v)
    }

    pub fn from_coeffs(frame: &FrameRef, coeffs: Vec<R>) -> Result<Self> {
        if coeffs.len() != frame.dim() {
            return Err(Error::ArityMismatch { expected: frame.dim(), got: coeffs.len() });
        }
        Ok(VectorField { frame: frame.clone(), coeffs })
    }

    pub fn frame(&self) -> &FrameRef {
        &self.frame
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> VectorField<S> {
        VectorField { frame: self.frame.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
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
        Ok(VectorField {
            frame: self.frame.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.map(|c| -c.clone()))
    }

    /// `[self, other] = sum_{i,j} v^i w^j c^k_ij e_k`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_frame(&other.frame)?;
        let n = self.frame.dim();
        let mut out = vec![R::zero(); n];
        if !self.frame.is_abelian() {
            for i in 0..n {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if other.coeffs[j].is_zero() {
                        continue;
                    }
                    let terms = self.frame.basis_bracket(i, j);
                    if terms.is_empty() {
                        continue;
                    }
                    let w = self.coeffs[i].clone() * other.coeffs[j].clone();
                    for (k, c) in terms {
                        out[*k] = out[*k].clone() + w.clone() * R::from_rational(c);
                    }
                }
            }
        }
        Ok(VectorField { frame: self.frame.clone(), coeffs: out })
    }

    /// Pairing `α(v)` with a 1-form.
    pub fn pair(&self, alpha: &KForm<R>) -> Result<R> {
        if alpha.degree() != 1 {
            return Err(Error::WrongDegree { expected: 1, got: alpha.degree() });
        }
        self.check_frame(alpha.frame())?;
        Ok(alpha.terms().fold(R::zero(), |acc, (b, c)| {
            acc + c.clone() * self.coeffs[b.indices()[0]].clone()
        }))
    }

    pub fn embed(&self, frame: &FrameRef) -> Result<Self> {
        let n = self.frame.dim();
        if frame.dim() < n || frame.names()[..n] != self.frame.names()[..] {
            return Err(Error::FrameMismatch);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(frame.dim(), R::zero());
        Ok(VectorField { frame: frame.clone(), coeffs })
    }
}

impl VectorField<Rational> {
    pub fn lift<S: Ring>(&self) -> VectorField<S> {
        self.map(S::from_rational)
    }
}

impl<R: Ring> fmt::Display for VectorField<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.frame.names();
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (names[i].clone(), c)),
        )
    }
}

/// Left-invariant (1,1)-tensor. Entry `(i, j)` is the `e_i` component of
/// the image of `e_j`.
#[derive(Clone, Debug)]
pub struct EndoField<R> {
    frame: FrameRef,
    matrix: Matrix<R>,
}

impl<R: Ring> PartialEq for EndoField<R> {
    fn eq(&self, other: &Self) -> bool {
        same_frame(&self.frame, &other.frame) && self.matrix == other.matrix
    }
}

impl<R: Ring> EndoField<R> {
    pub fn zero(frame: &FrameRef) -> Self {
        EndoField { frame: frame.clone(), matrix: Matrix::zeros(frame.dim(), frame.dim()) }
    }

    pub fn identity(frame: &FrameRef) -> Self {
        EndoField { frame: frame.clone(), matrix: Matrix::identity(frame.dim()) }
    }

    pub fn from_matrix(frame: &FrameRef, matrix: Matrix<R>) -> Result<Self> {
        if matrix.rows() != frame.dim() || matrix.cols() != frame.dim() {
            return Err(Error::Dimension(format!(
                "endomorphism of a {}-dimensional frame needs a square matrix, got {}x{}",
                frame.dim(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(EndoField { frame: frame.clone(), matrix })
    }

    /// Endomorphism sending `e_j` to `images[j]`.
    pub fn from_images(frame: &FrameRef, images: &[VectorField<R>]) -> Result<Self> {
        if images.len() != frame.dim() {
            return Err(Error::ArityMismatch { expected: frame.dim(), got: images.len() });
        }
        for v in images {
            if !same_frame(v.frame(), frame) {
                return Err(Error::FrameMismatch);
            }
        }
        let m = Matrix::from_fn(frame.dim(), frame.dim(), |i, j| images[j].coeff(i).clone());
        Ok(EndoField { frame: frame.clone(), matrix: m })
    }

    /// `η ⊗ ξ : X ↦ η(X) ξ`.
    pub fn outer(eta: &KForm<R>, xi: &VectorField<R>) -> Result<Self> {
        if eta.degree() != 1 {
            return Err(Error::WrongDegree { expected: 1, got: eta.degree() });
        }
        if !same_frame(eta.frame(), xi.frame()) {
            return Err(Error::FrameMismatch);
        }
        let n = xi.frame().dim();
        Ok(EndoField {
            frame: xi.frame().clone(),
            matrix: Matrix::from_fn(n, n, |i, j| xi.coeff(i).clone() * eta.coeff(&[j])),
        })
    }

    pub fn frame(&self) -> &FrameRef {
        &self.frame
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &R {
        &self.matrix[(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> EndoField<S> {
        let n = self.frame.dim();
        EndoField {
            frame: self.frame.clone(),
            matrix: Matrix::from_fn(n, n, |i, j| f(&self.matrix[(i, j)])),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
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
        let n = self.frame.dim();
        Ok(EndoField {
            frame: self.frame.clone(),
            matrix: Matrix::from_fn(n, n, |i, j| {
                self.matrix[(i, j)].clone() + other.matrix[(i, j)].clone()
            }),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.map(|c| -c.clone()))
    }

    pub fn apply(&self, v: &VectorField<R>) -> Result<VectorField<R>> {
        self.check_frame(v.frame())?;
        VectorField::from_coeffs(&self.frame, self.matrix.mul_vec(v.coeffs()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_frame(&other.frame)?;
        Ok(EndoField { frame: self.frame.clone(), matrix: self.matrix.mul(&other.matrix) })
    }

    /// `η ∘ self` for a 1-form `η`.
    pub fn pullback(&self, eta: &KForm<R>) -> Result<KForm<R>> {
        if eta.degree() != 1 {
            return Err(Error::WrongDegree { expected: 1, got: eta.degree() });
        }
        self.check_frame(eta.frame())?;
        let n = self.frame.dim();
        KForm::from_terms(
            &self.frame,
            1,
            (0..n).map(|j| {
                let c = (0..n).fold(R::zero(), |acc, i| {
                    acc + eta.coeff(&[i]) * self.matrix[(i, j)].clone()
                });
                (vec![j], c)
            }),
        )
    }
}

impl EndoField<Rational> {
    pub fn lift<S: Ring>(&self) -> EndoField<S> {
        self.map(S::from_rational)
    }
}

impl<R: Ring> fmt::Display for EndoField<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// `(L_v α)(w) = -α([v, w])` for left-invariant `v` and `α`.
pub fn lie_derivative_1form<R: Ring>(v: &VectorField<R>, alpha: &KForm<R>) -> Result<KForm<R>> {
    if alpha.degree() != 1 {
        return Err(Error::WrongDegree { expected: 1, got: alpha.degree() });
    }
    let frame = v.frame().clone();
    let n = frame.dim();
    let mut terms = Vec::with_capacity(n);
    for j in 0..n {
        let ej = VectorField::basis(&frame, j)?;
        terms.push((vec![j], -v.bracket(&ej)?.pair(alpha)?));
    }
    KForm::from_terms(&frame, 1, terms)
}

/// `(L_v P)(w) = [v, P w] - P [v, w]`.
pub fn lie_derivative_endo<R: Ring>(v: &VectorField<R>, p: &EndoField<R>) -> Result<EndoField<R>> {
    let frame = v.frame().clone();
    let mut images = Vec::with_capacity(frame.dim());
    for j in 0..frame.dim() {
        let ej = VectorField::basis(&frame, j)?;
        let a = v.bracket(&p.apply(&ej)?)?;
        let b = p.apply(&v.bracket(&ej)?)?;
        images.push(a.try_sub(&b)?);
    }
    EndoField::from_images(&frame, &images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::frame::{default_names, Frame};
    use crate::scalar::int;

    #[test]
    fn bracket_and_lie_derivative() {
        let f = Frame::new(default_names(3), &[(0, 1, vec![(2, int(1))])]).unwrap();
        let e1 = VectorField::<Rational>::basis(&f, 0).unwrap();
        let e2 = VectorField::basis(&f, 1).unwrap();
        let e3 = VectorField::basis(&f, 2).unwrap();
        assert_eq!(e1.bracket(&e2).unwrap(), e3);
        assert_eq!(e2.bracket(&e1).unwrap(), e3.scale(&int(-1)));
        let eta = KForm::basis(&f, 2).unwrap();
        // L_{e1} e^3 = -e^3([e1, .]) = -e^2
        assert_eq!(lie_derivative_1form(&e1, &eta).unwrap(), -KForm::basis(&f, 1).unwrap());
    }

    #[test]
    fn outer_and_pullback() {
        let f = Frame::abelian(2);
        let eta = KForm::<Rational>::basis(&f, 0).unwrap();
        let xi = VectorField::basis(&f, 1).unwrap();
        let p = EndoField::outer(&eta, &xi).unwrap();
        assert_eq!(p.entry(1, 0), &int(1));
        assert_eq!(p.apply(&VectorField::basis(&f, 0).unwrap()).unwrap(), xi);
        let back = p.pullback(&KForm::basis(&f, 1).unwrap()).unwrap();
        assert_eq!(back, eta);
    }
}
