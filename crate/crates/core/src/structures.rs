//! Single almost cosymplectic structures: volume form, Reeb field,
//! contact/cosymplectic classification and the Cartan class of a 1-form.

use crate::error::{Error, Result};
use crate::exterior::{same_frame, FrameRef, KForm, VectorField};
use crate::linalg::{Matrix, SolveError};
use crate::scalar::{Field, Ring};

/// A pair `(η, Ω)` on a `(2n+1)`-dimensional frame.
#[derive(Clone, Debug)]
pub struct AlmostCosym<R> {
    eta: KForm<R>,
    omega: KForm<R>,
    n: usize,
    volume_nonzero: bool,
}

impl<R: Ring> PartialEq for AlmostCosym<R> {
    fn eq(&self, other: &Self) -> bool {
        self.eta == other.eta && self.omega == other.omega
    }
}

impl<R: Ring> AlmostCosym<R> {
    /// Checked constructor: `η ∧ Ωⁿ` must have a nonzero top coefficient.
    pub fn new(eta: KForm<R>, omega: KForm<R>) -> Result<Self> {
        let s = Self::new_unchecked(eta, omega)?;
        if !s.volume_nonzero {
            return Err(Error::NotAlmostCosymplectic("η ∧ Ωⁿ vanishes".into()));
        }
        Ok(s)
    }

    /// Shape checks only; the volume test is recorded, not enforced.
    pub fn new_unchecked(eta: KForm<R>, omega: KForm<R>) -> Result<Self> {
        if !same_frame(eta.frame(), omega.frame()) {
            return Err(Error::FrameMismatch);
        }
        if eta.degree() != 1 {
            return Err(Error::WrongDegree { expected: 1, got: eta.degree() });
        }
        if omega.degree() != 2 {
            return Err(Error::WrongDegree { expected: 2, got: omega.degree() });
        }
        let dim = eta.frame().dim();
        if dim.is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "almost cosymplectic structures need odd dimension, got {dim}"
            )));
        }
        let n = dim / 2;
        let volume_nonzero = !eta.wedge(&omega.power(n))?.top_coefficient().is_zero();
        Ok(AlmostCosym { eta, omega, n, volume_nonzero })
    }

    pub fn eta(&self) -> &KForm<R> {
        &self.eta
    }

    pub fn omega(&self) -> &KForm<R> {
        &self.omega
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn frame(&self) -> &FrameRef {
        self.eta.frame()
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    /// `η ∧ Ωⁿ`.
    pub fn volume_form(&self) -> KForm<R> {
        self.eta.wedge(&self.omega.power(self.n)).expect("same frame")
    }

    pub fn volume_nonzero(&self) -> bool {
        self.volume_nonzero
    }

    pub fn classify(&self) -> StructureClass<R> {
        let d_eta = self.eta.ext_d();
        let d_omega = self.omega.ext_d();
        let defect = &d_eta - &self.omega;
        let kind = if defect.is_zero() {
            StructureKind::Contact
        } else if d_eta.is_zero() && d_omega.is_zero() {
            StructureKind::Cosymplectic
        } else {
            StructureKind::Neither
        };
        StructureClass { kind, d_eta, d_omega, contact_defect: defect }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S + Copy) -> Result<AlmostCosym<S>> {
        AlmostCosym::new_unchecked(self.eta.map(f), self.omega.map(f))
    }
}

impl<R: Field> AlmostCosym<R> {
    /// The unique `ξ` with `η(ξ) = 1` and `i_ξ Ω = 0`.
    pub fn reeb(&self) -> Result<VectorField<R>> {
        reeb_field(&self.eta, &self.omega)
    }
}

/// Solve `η(ξ) = 1`, `i_ξ Ω = 0` by exact elimination and re-check both.
pub fn reeb_field<R: Field>(eta: &KForm<R>, omega: &KForm<R>) -> Result<VectorField<R>> {
    let frame = eta.frame().clone();
    let dim = frame.dim();
    // row 0: η; row 1 + k: (i_x Ω)(e_k) = sum_j x_j Ω(e_j, e_k)
    let a = Matrix::from_fn(dim + 1, dim, |r, j| {
        if r == 0 {
            eta.coeff(&[j])
        } else {
            omega.coeff(&[j, r - 1])
        }
    });
    let mut b = vec![R::zero(); dim + 1];
    b[0] = R::one();
    let x = a.solve(&b).map_err(|e| {
        Error::NotAlmostCosymplectic(match e {
            SolveError::Inconsistent => "Reeb system has no solution".into(),
            SolveError::Underdetermined => "Reeb system has no unique solution".into(),
        })
    })?;
    let xi = VectorField::from_coeffs(&frame, x)?;
    if xi.pair(eta)? != R::one() || !omega.interior(&xi)?.is_zero() {
        return Err(Error::Inconsistent("Reeb field fails its defining equations".into()));
    }
    Ok(xi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Contact,
    Cosymplectic,
    Neither,
}

impl std::fmt::Display for StructureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StructureKind::Contact => "contact",
            StructureKind::Cosymplectic => "cosymplectic",
            StructureKind::Neither => "neither",
        })
    }
}

/// Classification with the closedness forms that decided it.
#[derive(Clone, Debug)]
pub struct StructureClass<R> {
    pub kind: StructureKind,
    pub d_eta: KForm<R>,
    pub d_omega: KForm<R>,
    /// `dη - Ω`.
    pub contact_defect: KForm<R>,
}

/// Cartan class of a 1-form and the forms that witness it.
#[derive(Clone, Debug)]
pub struct ClassReport<R> {
    pub class: usize,
    /// Largest `s` with `(dη)^s ≠ 0`.
    pub s: usize,
    /// `(dη)^s`.
    pub d_eta_power: KForm<R>,
    /// `η ∧ (dη)^s`.
    pub eta_wedge: KForm<R>,
}

pub fn cartan_class<R: Ring>(eta: &KForm<R>) -> Result<ClassReport<R>> {
    cartan_class_with(eta, |c| c.clone())
}

/// Cartan class with every coefficient passed through `reduce` before the
/// zero tests, e.g. reduction modulo the sphere ideal.
pub fn cartan_class_with<R: Ring>(
    eta: &KForm<R>,
    reduce: impl Fn(&R) -> R + Copy,
) -> Result<ClassReport<R>> {
    if eta.degree() != 1 {
        return Err(Error::WrongDegree { expected: 1, got: eta.degree() });
    }
    if eta.map(reduce).is_zero() {
        return Err(Error::ZeroForm);
    }
    let d = eta.ext_d().map(reduce);
    let mut s = 0;
    let mut power = KForm::constant(eta.frame(), R::one());
    loop {
        let next = power.wedge(&d)?.map(reduce);
        if next.is_zero() {
            break;
        }
        power = next;
        s += 1;
    }
    let eta_wedge = eta.wedge(&power)?.map(reduce);
    let class = if eta_wedge.is_zero() { 2 * s } else { 2 * s + 1 };
    Ok(ClassReport { class, s, d_eta_power: power, eta_wedge })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::frame::{default_names, Frame};
    use crate::scalar::{int, Rational};

    fn b(f: &FrameRef, i: usize) -> KForm<Rational> {
        KForm::basis(f, i).unwrap()
    }

    #[test]
    fn t3_volume_and_reeb() {
        let f = Frame::abelian(3);
        let s = AlmostCosym::new(b(&f, 0), b(&f, 1).wedge(&b(&f, 2)).unwrap()).unwrap();
        assert_eq!(s.volume_form().top_coefficient(), int(1));
        assert_eq!(s.reeb().unwrap(), VectorField::basis(&f, 0).unwrap());
        assert_eq!(s.classify().kind, StructureKind::Cosymplectic);
    }

    #[test]
    fn degenerate_pair_is_flagged() {
        let f = Frame::abelian(3);
        let omega = b(&f, 0).wedge(&b(&f, 1)).unwrap();
        assert!(AlmostCosym::new(b(&f, 0), omega.clone()).is_err());
        let s = AlmostCosym::new_unchecked(b(&f, 0), omega).unwrap();
        assert!(!s.volume_nonzero());
        assert!(s.reeb().is_err());
    }

    #[test]
    fn heisenberg_classes() {
        let f = Frame::new(default_names(3), &[(0, 1, vec![(2, int(1))])]).unwrap();
        let e12 = b(&f, 0).wedge(&b(&f, 1)).unwrap();
        let neither = AlmostCosym::new(b(&f, 2), e12.clone()).unwrap();
        assert_eq!(neither.classify().kind, StructureKind::Neither);
        let contact = AlmostCosym::new(b(&f, 2), -e12).unwrap();
        assert_eq!(contact.classify().kind, StructureKind::Contact);
        let r = cartan_class(&b(&f, 2)).unwrap();
        assert_eq!((r.class, r.s), (3, 1));
        assert_eq!(cartan_class(&b(&f, 0)).unwrap().class, 1);
        assert!(matches!(cartan_class(&KForm::<Rational>::zero(&f, 1).unwrap()), Err(Error::ZeroForm)));
    }

    #[test]
    fn even_cartan_class() {
        // aff(1) ⊕ R: [e1,e2]=e2, η = e^2, dη = -e^1∧e^2, η∧dη = 0
        let f = Frame::new(default_names(3), &[(0, 1, vec![(1, int(1))])]).unwrap();
        assert_eq!(cartan_class(&b(&f, 1)).unwrap().class, 2);
    }
}
