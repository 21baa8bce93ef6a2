//! 2-forms on `M × R`: `ω = dt ∧ η + Ω`, couples and the recursion operator.

use num_traits::{One, Zero};

use crate::certificate::Witness;
use crate::error::{Error, Result};
use crate::exterior::{same_frame, FrameRef, KForm};
use crate::linalg::Matrix;
use crate::poly::{LambdaPoly, Poly};
use crate::scalar::{int, Rational};
use crate::structures::AlmostCosym;
use crate::{Endo, Form};

/// A base frame with one appended abelian direction `t` (the last index).
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedFrame {
    base: FrameRef,
    ext: FrameRef,
}

impl ExtendedFrame {
    pub fn new(base: &FrameRef) -> Result<Self> {
        let name = ["t", "t0", "t_ext"]
            .into_iter()
            .find(|n| base.index_of(n).is_none())
            .ok_or_else(|| Error::Dimension("no free name for the t direction".into()))?;
        Ok(ExtendedFrame { base: base.clone(), ext: base.extend_abelian(&[name])? })
    }

    pub fn base(&self) -> &FrameRef {
        &self.base
    }

    pub fn frame(&self) -> &FrameRef {
        &self.ext
    }

    pub fn t_index(&self) -> usize {
        self.base.dim()
    }

    pub fn dt(&self) -> Form {
        KForm::basis(&self.ext, self.t_index()).expect("t index in range")
    }

    /// `dt ∧ e^1 ∧ ... ∧ e^n`, the positive orientation.
    pub fn positive_volume(&self) -> Form {
        positive_volume(&self.ext)
    }

    pub fn embed(&self, a: &Form) -> Result<Form> {
        a.embed(&self.ext)
    }

    /// `dt ∧ η + Ω`.
    pub fn symplectize(&self, s: &AlmostCosym<Rational>) -> Result<Form> {
        if !same_frame(s.frame(), &self.base) {
            return Err(Error::FrameMismatch);
        }
        let eta = self.embed(s.eta())?;
        let omega = self.embed(s.omega())?;
        self.dt().wedge(&eta)?.try_add(&omega)
    }

    /// Residuals of the product identities
    /// `ω_i ∧ ω_i = 2 dt ∧ η_i ∧ Ω_i` and
    /// `ω_1 ∧ ω_2 = cross_factor · dt ∧ (η_1 ∧ Ω_2 + η_2 ∧ Ω_1)`.
    pub fn product_residuals(
        &self,
        s1: &AlmostCosym<Rational>,
        s2: &AlmostCosym<Rational>,
        cross_factor: i64,
    ) -> Result<[Form; 3]> {
        let (w1, w2) = (self.symplectize(s1)?, self.symplectize(s2)?);
        let dt = self.dt();
        let e = |f: &Form| self.embed(f);
        let t11 = dt.wedge(&e(s1.eta())?.wedge(&e(s1.omega())?)?)?.scale(&int(2));
        let t22 = dt.wedge(&e(s2.eta())?.wedge(&e(s2.omega())?)?)?.scale(&int(2));
        let cross = e(s1.eta())?.wedge(&e(s2.omega())?)?.try_add(&e(s2.eta())?.wedge(&e(s1.omega())?)?)?;
        let t12 = dt.wedge(&cross)?.scale(&int(cross_factor));
        Ok([
            &w1.wedge(&w1)? - &t11,
            &w2.wedge(&w2)? - &t22,
            &w1.wedge(&w2)? - &t12,
        ])
    }
}

/// `dt ∧ vol_base` on a frame whose last basis vector is `t`: the sorted top
/// blade times `(-1)^(dim - 1)`.
fn positive_volume(frame: &FrameRef) -> Form {
    let n = frame.dim();
    let sign = if (n - 1).is_multiple_of(2) { int(1) } else { int(-1) };
    KForm::from_terms(frame, n, [((0..n).collect(), sign)]).expect("top blade")
}

/// Build the extended frame and `ω = dt ∧ η + Ω` in one step.
pub fn symplectize(s: &AlmostCosym<Rational>) -> Result<(ExtendedFrame, Form)> {
    let ext = ExtendedFrame::new(s.frame())?;
    let w = ext.symplectize(s)?;
    Ok((ext, w))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoupleReport {
    pub w1_sq: Form,
    pub w2_sq: Form,
    pub w12: Form,
    /// `ω_1^m` and `ω_2^m` with `2m` the dimension.
    pub w1_top: Form,
    pub w2_top: Form,
    pub orthogonal: bool,
    /// `ω_i^m` is a positive multiple of `dt ∧ vol_base`.
    pub positive: (bool, bool),
    /// Couple in dimension 4: orthogonal with positive squares. `None` in
    /// higher dimensions.
    pub couple: Option<bool>,
    /// `(λ1 ω1 + λ2 ω2)^m = (λ1² + λ2²)^{m/2} ω1^m` identically.
    pub conformal: bool,
    pub conformal_witness: Option<Witness>,
}

pub fn couple_check(w1: &Form, w2: &Form) -> Result<CoupleReport> {
    if !same_frame(w1.frame(), w2.frame()) {
        return Err(Error::FrameMismatch);
    }
    for w in [w1, w2] {
        if w.degree() != 2 {
            return Err(Error::WrongDegree { expected: 2, got: w.degree() });
        }
    }
    let frame = w1.frame().clone();
    let dim = frame.dim();
    if dim % 2 == 1 {
        return Err(Error::Dimension(format!("couples live in even dimension, got {dim}")));
    }
    let m = dim / 2;
    let vol = positive_volume(&frame).top_coefficient();
    let w1_top = w1.power(m);
    let w2_top = w2.power(m);
    let rel = |f: &Form| f.top_coefficient() / &vol;
    let positive = (rel(&w1_top) > Rational::zero(), rel(&w2_top) > Rational::zero());
    let w12 = w1.wedge(w2)?;
    let orthogonal = w12.is_zero();

    let (conformal, conformal_witness) = pencil_constancy(w1, w2, m, &vol);
    let w1_sq = w1.wedge(w1)?;
    let w2_sq = w2.wedge(w2)?;
    let couple = (dim == 4).then_some(orthogonal && positive.0 && positive.1);
    if dim == 4 && conformal != (w1_sq == w2_sq && orthogonal) {
        return Err(Error::Inconsistent("pencil and product conformality tests disagree".into()));
    }
    Ok(CoupleReport { w1_sq, w2_sq, w12, w1_top, w2_top, orthogonal, positive, couple, conformal, conformal_witness })
}

/// Coefficients are reported relative to `dt ∧ vol_base`.
fn pencil_constancy(w1: &Form, w2: &Form, m: usize, vol: &Rational) -> (bool, Option<Witness>) {
    let lam = |w: &Form, i: usize| w.lift::<LambdaPoly>().scale(&Poly::var(i));
    let pencil = (lam(w1, 0) + lam(w2, 1)).power(m);
    let got = pencil.top_coefficient().scale(&(Rational::one() / vol));
    if m % 2 == 1 {
        return (
            false,
            Some(Witness::note(format!("(λ1 ω1 + λ2 ω2)^{m} is odd in λ and cannot be constant"))),
        );
    }
    let base = w1.power(m).top_coefficient() / vol;
    let expected = Poly::sphere_norm(2).pow((m / 2) as u32).scale(&base);
    if got == expected && !base.is_zero() {
        return (true, None);
    }
    let diff = got.clone() - expected.clone();
    let witness = diff.terms().next_back().map(|(mono, _)| Witness::Monomial {
        monomial: mono.to_string(),
        got: got.coeff(mono).to_string(),
        expected: expected.coeff(mono).to_string(),
    });
    (false, witness)
}

/// Flat map: column `j` holds the coefficients of `i_{e_j} ω`.
pub fn flat(w: &Form) -> Matrix<Rational> {
    let n = w.frame().dim();
    Matrix::from_fn(n, n, |k, j| w.coeff(&[j, k]))
}

/// The unique `J` with `i_X ω1 = i_{JX} ω2`, i.e. `J = flat(ω2)⁻¹ flat(ω1)`.
/// For conformal couples `J² = -I` is enforced.
pub fn recursion_operator(w1: &Form, w2: &Form) -> Result<Endo> {
    if !same_frame(w1.frame(), w2.frame()) {
        return Err(Error::FrameMismatch);
    }
    let frame = w1.frame().clone();
    let f2inv = flat(w2).inverse().ok_or(Error::Degenerate)?;
    let j = Endo::from_matrix(&frame, f2inv.mul(&flat(w1)))?;
    for k in 0..frame.dim() {
        let ek = crate::Vector::basis(&frame, k)?;
        if w1.interior(&ek)? != w2.interior(&j.apply(&ek)?)? {
            return Err(Error::Inconsistent("recursion identity fails after the solve".into()));
        }
    }
    if frame.dim().is_multiple_of(2) {
        let report = couple_check(w1, w2)?;
        if report.conformal && report.orthogonal && !is_minus_identity(&j) {
            return Err(Error::Inconsistent("conformal couple with J² ≠ -I".into()));
        }
    }
    Ok(j)
}

pub fn is_minus_identity(j: &Endo) -> bool {
    let sq = j.compose(j).expect("same frame");
    let n = j.frame().dim();
    (0..n).all(|a| (0..n).all(|b| *sq.entry(a, b) == if a == b { int(-1) } else { int(0) }))
}
