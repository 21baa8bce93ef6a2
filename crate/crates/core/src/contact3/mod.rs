//! Almost contact structures `(φ, ξ, η)`, compatible metrics and almost
//! contact 3-structures, with the tensors and distributions attached to them.

mod distributions;
mod product;
mod tensors;

pub use distributions::{
    char_distributions, phi_basis, phi_basis_constant, CharDistributions, PhiBasisConstant, XiBracketReport,
};
pub use product::{concomitant_blocks, hypercomplex_lift, hyperholomorphic_product, HypercomplexLift};
pub use tensors::{
    n_tensor_relations, n_tensors, nijenhuis_concomitant, nijenhuis_torsion, single_n_tensors, NTensors,
    RelationCheck, TwoOneTensor,
};

use num_traits::{One, Zero};

use crate::certificate::{Certificate, Verdict, Witness};
use crate::error::{Error, Result};
use crate::exterior::{same_frame, EndoField, FrameRef, KForm, VectorField};
use crate::linalg::Matrix;
use crate::poly::{LambdaPoly, Poly};
use crate::scalar::{Rational, Ring};
use crate::sphere::Generators;
use crate::structures::AlmostCosym;

/// Even permutations of `(0, 1, 2)`.
pub const EVEN_PERMUTATIONS: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];

fn identity<R: Clone>(c: &R) -> R {
    c.clone()
}

/// Reduction modulo `λ1² + λ2² + λ3² - 1`.
pub fn sphere3(c: &LambdaPoly) -> LambdaPoly {
    c.reduce_sphere(3)
}

/// `(φ, ξ, η)` on a common frame.
#[derive(Clone, Debug)]
pub struct AlmostContact<R> {
    phi: EndoField<R>,
    xi: VectorField<R>,
    eta: KForm<R>,
}

impl<R: Ring> PartialEq for AlmostContact<R> {
    fn eq(&self, other: &Self) -> bool {
        self.phi == other.phi && self.xi == other.xi && self.eta == other.eta
    }
}

impl<R: Ring> AlmostContact<R> {
    /// Checked: `φ² = -I + η⊗ξ` and `η(ξ) = 1`.
    pub fn new(phi: EndoField<R>, xi: VectorField<R>, eta: KForm<R>) -> Result<Self> {
        Self::new_with(phi, xi, eta, identity)
    }

    /// Checked after passing every coefficient through `reduce`.
    pub fn new_with(
        phi: EndoField<R>,
        xi: VectorField<R>,
        eta: KForm<R>,
        reduce: impl Fn(&R) -> R + Copy,
    ) -> Result<Self> {
        let s = Self::new_unchecked(phi, xi, eta)?;
        let cert = s.verify_with(reduce)?;
        if !cert.is_verified() {
            return Err(Error::NotAlmostContact("φ² ≠ -I + η⊗ξ or η(ξ) ≠ 1".into()));
        }
        Ok(s)
    }

    pub fn new_unchecked(phi: EndoField<R>, xi: VectorField<R>, eta: KForm<R>) -> Result<Self> {
        if !same_frame(phi.frame(), xi.frame()) || !same_frame(phi.frame(), eta.frame()) {
            return Err(Error::FrameMismatch);
        }
        if eta.degree() != 1 {
            return Err(Error::WrongDegree { expected: 1, got: eta.degree() });
        }
        Ok(AlmostContact { phi, xi, eta })
    }

    pub fn phi(&self) -> &EndoField<R> {
        &self.phi
    }

    pub fn xi(&self) -> &VectorField<R> {
        &self.xi
    }

    pub fn eta(&self) -> &KForm<R> {
        &self.eta
    }

    pub fn frame(&self) -> &FrameRef {
        self.phi.frame()
    }

    pub fn verify(&self) -> Result<Certificate> {
        self.verify_with(identity)
    }

    pub fn verify_with(&self, reduce: impl Fn(&R) -> R + Copy) -> Result<Certificate> {
        verify_almost_contact_with(&self.phi, &self.xi, &self.eta, reduce)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S + Copy) -> AlmostContact<S> {
        AlmostContact { phi: self.phi.map(f), xi: self.xi.map(f), eta: self.eta.map(f) }
    }
}

impl AlmostContact<Rational> {
    pub fn lift<S: Ring>(&self) -> AlmostContact<S> {
        self.map(S::from_rational)
    }
}

pub fn verify_almost_contact<R: Ring>(
    phi: &EndoField<R>,
    xi: &VectorField<R>,
    eta: &KForm<R>,
) -> Result<Certificate> {
    verify_almost_contact_with(phi, xi, eta, identity)
}

/// Exact check of `φ² + I - η⊗ξ = 0` and `η(ξ) = 1`; `η∘φ = 0` and `φξ = 0`
/// are reported and must follow.
pub fn verify_almost_contact_with<R: Ring>(
    phi: &EndoField<R>,
    xi: &VectorField<R>,
    eta: &KForm<R>,
    reduce: impl Fn(&R) -> R + Copy,
) -> Result<Certificate> {
    let frame = phi.frame();
    let residual = phi
        .compose(phi)?
        .try_add(&EndoField::identity(frame))?
        .try_sub(&EndoField::outer(eta, xi)?)?
        .map(reduce);
    let pairing = reduce(&xi.pair(eta)?);
    let eta_phi = phi.pullback(eta)?.map(reduce);
    let phi_xi = phi.apply(xi)?.map(reduce);
    let main = residual.is_zero() && pairing.is_one();
    let derived = eta_phi.is_zero() && phi_xi.is_zero();
    if main && !derived {
        return Err(Error::Inconsistent("almost contact axioms hold but η∘φ or φξ is nonzero".into()));
    }
    Ok(Certificate::new("almost contact structure", Verdict::from_bool(main), "exact matrix identity")
        .with_witness(Witness::form("phi^2 + I - eta(x)xi", residual))
        .with_witness(Witness::scalar("eta(xi)", pairing))
        .with_witness(Witness::form("eta o phi", &eta_phi))
        .with_witness(Witness::vector("phi(xi)", &phi_xi)))
}

/// Symmetric positive definite rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    matrix: Matrix<Rational>,
}

impl Metric {
    pub fn new(matrix: Matrix<Rational>) -> Result<Self> {
        let n = matrix.rows();
        if matrix.cols() != n {
            return Err(Error::IndefiniteMetric(format!("matrix is {}x{}", n, matrix.cols())));
        }
        if matrix != matrix.transpose() {
            return Err(Error::IndefiniteMetric("matrix is not symmetric".into()));
        }
        for k in 1..=n {
            let minor = Matrix::from_fn(k, k, |i, j| matrix[(i, j)].clone()).determinant();
            if minor <= Rational::zero() {
                return Err(Error::IndefiniteMetric(format!("leading minor of order {k} is {minor}")));
            }
        }
        Ok(Metric { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Metric { matrix: Matrix::identity(dim) }
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn scale(&self, c: &Rational) -> Result<Self> {
        Metric::new(self.matrix.map(|x| x * c))
    }

    pub fn inner<R: Ring>(&self, a: &VectorField<R>, b: &VectorField<R>) -> R {
        let n = self.dim();
        let mut acc = R::zero();
        for i in 0..n {
            for j in 0..n {
                if !self.matrix[(i, j)].is_zero() {
                    acc = acc
                        + R::from_rational(&self.matrix[(i, j)]) * a.coeff(i).clone() * b.coeff(j).clone();
                }
            }
        }
        acc
    }

    fn lifted<R: Ring>(&self) -> Matrix<R> {
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| R::from_rational(&self.matrix[(i, j)]))
    }
}

fn check_metric_dim<R: Ring>(g: &Metric, s: &AlmostContact<R>) -> Result<()> {
    if g.dim() != s.frame().dim() {
        return Err(Error::Dimension(format!("metric of size {} on a {}-dim frame", g.dim(), s.frame().dim())));
    }
    Ok(())
}

/// `g(φX, φY) = g(X, Y) - η(X)η(Y)`, i.e. `φᵀGφ = G - ηηᵀ`.
pub fn verify_compatible_metric<R: Ring>(g: &Metric, s: &AlmostContact<R>) -> Result<Certificate> {
    verify_compatible_metric_with(g, s, identity)
}

pub fn verify_compatible_metric_with<R: Ring>(
    g: &Metric,
    s: &AlmostContact<R>,
    reduce: impl Fn(&R) -> R + Copy,
) -> Result<Certificate> {
    check_metric_dim(g, s)?;
    let n = g.dim();
    let gm = g.lifted::<R>();
    let phi = s.phi().matrix();
    let lhs = phi.transpose().mul(&gm).mul(phi);
    let residual = Matrix::from_fn(n, n, |i, j| {
        reduce(&(lhs[(i, j)].clone() - gm[(i, j)].clone() + s.eta().coeff(&[i]) * s.eta().coeff(&[j])))
    });
    let ok = residual.is_zero();
    let gphi = gm.mul(phi).map(reduce);
    let antisymmetric = gphi.map(|x| x.clone()) == gphi.transpose().map(|x| -x.clone());
    if ok && !antisymmetric {
        return Err(Error::Inconsistent("compatible metric with non-antisymmetric g(·, φ·)".into()));
    }
    Ok(Certificate::new("metric compatible with (phi, xi, eta)", Verdict::from_bool(ok), "exact matrix identity")
        .with_witness(Witness::form("phi^T G phi - G + eta eta^T", residual)))
}

/// `Ω(X, Y) = g(X, φY)`; coefficient `(i, j)` is `(Gφ)_ij`.
pub fn fundamental_form<R: Ring>(g: &Metric, s: &AlmostContact<R>) -> Result<KForm<R>> {
    fundamental_form_with(g, s, identity)
}

pub fn fundamental_form_with<R: Ring>(
    g: &Metric,
    s: &AlmostContact<R>,
    reduce: impl Fn(&R) -> R + Copy,
) -> Result<KForm<R>> {
    check_metric_dim(g, s)?;
    let n = g.dim();
    let gphi = g.lifted::<R>().mul(s.phi().matrix()).map(reduce);
    for i in 0..n {
        for j in i..n {
            if reduce(&(gphi[(i, j)].clone() + gphi[(j, i)].clone())) != R::zero() {
                return Err(Error::NotAlmostContact(format!(
                    "g(·, φ·) is not antisymmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let terms = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).map(|(i, j)| (vec![i, j], gphi[(i, j)].clone()));
    KForm::from_terms(s.frame(), 2, terms.collect::<Vec<_>>())
}

/// Three almost contact structures satisfying the quaternionic relations,
/// with an optional compatible metric.
#[derive(Clone, Debug)]
pub struct AC3 {
    structures: [AlmostContact<Rational>; 3],
    metric: Option<Metric>,
}

impl AC3 {
    pub fn new(structures: [AlmostContact<Rational>; 3], metric: Option<Metric>) -> Result<Self> {
        let f = structures[0].frame();
        if structures.iter().any(|s| !same_frame(s.frame(), f)) {
            return Err(Error::FrameMismatch);
        }
        for (a, s) in structures.iter().enumerate() {
            if !s.verify()?.is_verified() {
                return Err(Error::NotAlmostContact(format!("structure {} fails its axioms", a + 1)));
            }
        }
        let cert = verify_3_structure(&structures)?;
        if !cert.is_verified() {
            let first = cert.witnesses.iter().find_map(|w| match w {
                Witness::Note { text } => Some(text.clone()),
                _ => None,
            });
            return Err(Error::NotThreeStructure(first.unwrap_or_default()));
        }
        if let Some(g) = &metric {
            for (a, s) in structures.iter().enumerate() {
                if !verify_compatible_metric(g, s)?.is_verified() {
                    return Err(Error::NotThreeStructure(format!("metric is not compatible with structure {}", a + 1)));
                }
            }
        }
        Ok(AC3 { structures, metric })
    }

    pub fn structures(&self) -> &[AlmostContact<Rational>; 3] {
        &self.structures
    }

    pub fn structure(&self, a: usize) -> &AlmostContact<Rational> {
        &self.structures[a]
    }

    pub fn metric(&self) -> Option<&Metric> {
        self.metric.as_ref()
    }

    pub fn frame(&self) -> &FrameRef {
        self.structures[0].frame()
    }

    pub fn reebs(&self) -> [VectorField<Rational>; 3] {
        self.structures.clone().map(|s| s.xi)
    }

    fn require_metric(&self) -> Result<&Metric> {
        self.metric.as_ref().ok_or_else(|| Error::NotThreeStructure("no metric attached".into()))
    }

    /// `Ω_α = g(·, φ_α ·)`.
    pub fn fundamental_forms(&self) -> Result<[KForm<Rational>; 3]> {
        let g = self.require_metric()?;
        let v = self.structures.iter().map(|s| fundamental_form(g, s)).collect::<Result<Vec<_>>>()?;
        Ok(v.try_into().expect("three forms"))
    }

    /// `ξ_1, ξ_2, ξ_3` are orthonormal for the metric.
    pub fn reebs_orthonormal(&self) -> Result<bool> {
        let g = self.require_metric()?;
        let xs = self.reebs();
        Ok((0..3).all(|a| {
            (0..3).all(|b| g.inner(&xs[a], &xs[b]) == if a == b { Rational::one() } else { Rational::zero() })
        }))
    }

    /// The generators `(η_α, Ω_α)` of the associated 2-sphere.
    pub fn induced_sphere(&self) -> Result<Generators> {
        let omegas = self.fundamental_forms()?;
        let members = self
            .structures
            .iter()
            .zip(omegas)
            .map(|(s, w)| AlmostCosym::new(s.eta().clone(), w))
            .collect::<Result<Vec<_>>>()?;
        Generators::new(members)
    }
}

/// The relations `φγ = φαφβ - ηβ⊗ξα = -φβφα + ηα⊗ξβ`,
/// `ξγ = φαξβ = -φβξα`, `ηγ = ηα∘φβ = -ηβ∘φα` for every even permutation.
pub fn verify_3_structure<R: Ring>(s: &[AlmostContact<R>; 3]) -> Result<Certificate> {
    verify_3_structure_with(s, identity)
}

pub fn verify_3_structure_with<R: Ring>(
    s: &[AlmostContact<R>; 3],
    reduce: impl Fn(&R) -> R + Copy,
) -> Result<Certificate> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (a, b, c) in EVEN_PERMUTATIONS {
        let (sa, sb, sc) = (&s[a], &s[b], &s[c]);
        let (pa, pb) = (sa.phi(), sb.phi());
        let endo = [
            ("phi_c = phi_a phi_b - eta_b (x) xi_a", pa.compose(pb)?.try_sub(&EndoField::outer(sb.eta(), sa.xi())?)?),
            (
                "phi_c = -phi_b phi_a + eta_a (x) xi_b",
                EndoField::outer(sa.eta(), sb.xi())?.try_sub(&pb.compose(pa)?)?,
            ),
        ];
        for (label, rhs) in endo {
            checked += 1;
            if !rhs.try_sub(sc.phi())?.map(reduce).is_zero() {
                failures.push(relabel(label, a, b, c));
            }
        }
        let vecs = [
            ("xi_c = phi_a xi_b", pa.apply(sb.xi())?),
            ("xi_c = -phi_b xi_a", pb.apply(sa.xi())?.scale(&-R::one())),
        ];
        for (label, rhs) in vecs {
            checked += 1;
            if !rhs.try_sub(sc.xi())?.map(reduce).is_zero() {
                failures.push(relabel(label, a, b, c));
            }
        }
        let forms = [
            ("eta_c = eta_a o phi_b", pb.pullback(sa.eta())?),
            ("eta_c = -eta_b o phi_a", -pa.pullback(sb.eta())?),
        ];
        for (label, rhs) in forms {
            checked += 1;
            if !(&rhs - sc.eta()).map(reduce).is_zero() {
                failures.push(relabel(label, a, b, c));
            }
        }
    }
    let mut cert = Certificate::new(
        "almost contact 3-structure",
        Verdict::from_bool(failures.is_empty()),
        format!("{checked} relations over the even permutations"),
    );
    for f in failures {
        cert = cert.with_witness(Witness::note(format!("fails: {f}")));
    }
    Ok(cert)
}

fn relabel(label: &str, a: usize, b: usize, c: usize) -> String {
    label
        .replace("_a", &format!("{}", a + 1))
        .replace("_b", &format!("{}", b + 1))
        .replace("_c", &format!("{}", c + 1))
}

/// A point of `𝕊²` given exactly, or the generic point `λ` modulo the sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum LambdaPoint {
    Rational([Rational; 3]),
    Symbolic,
}

/// `(φ_λ, ξ_λ, η_λ)` with coefficients in `ℚ[λ]/(Σλ² - 1)`; rational points
/// give constant polynomials.
#[derive(Clone, Debug)]
pub struct LambdaStructure {
    pub structure: AlmostContact<LambdaPoly>,
    pub almost_contact: Certificate,
    pub compatible: Option<Certificate>,
    /// `Ω_λ = g(·, φ_λ ·)` when a metric is present.
    pub omega: Option<KForm<LambdaPoly>>,
}

impl LambdaStructure {
    pub fn is_verified(&self) -> bool {
        self.almost_contact.is_verified() && self.compatible.as_ref().is_none_or(|c| c.is_verified())
    }

    /// Coefficients as rationals, for a rational point.
    pub fn to_rational(&self) -> Option<AlmostContact<Rational>> {
        let constant = |p: &LambdaPoly| p.is_constant().then(|| p.constant_term());
        let s = &self.structure;
        let n = s.frame().dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| constant(s.phi().entry(i, j))).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        let xi = s.xi().coeffs().iter().map(constant).collect::<Option<Vec<_>>>()?;
        let eta = (0..n).map(|j| constant(&s.eta().coeff(&[j])).map(|c| (vec![j], c))).collect::<Option<Vec<_>>>()?;
        let frame = s.frame();
        AlmostContact::new_unchecked(
            EndoField::from_matrix(frame, Matrix::from_rows(rows)).ok()?,
            VectorField::from_coeffs(frame, xi).ok()?,
            KForm::from_terms(frame, 1, eta).ok()?,
        )
        .ok()
    }
}

pub fn lambda_structure(t: &AC3, point: &LambdaPoint) -> Result<LambdaStructure> {
    let coeffs: [LambdaPoly; 3] = match point {
        LambdaPoint::Rational(l) => {
            let norm: Rational = l.iter().map(|x| x * x).sum();
            if !norm.is_one() {
                return Err(Error::NotOnSphere(norm.to_string()));
            }
            l.clone().map(Poly::constant)
        }
        LambdaPoint::Symbolic => [Poly::var(0), Poly::var(1), Poly::var(2)],
    };
    let lifted = t.structures().clone().map(|s| s.lift::<LambdaPoly>());
    let frame = t.frame();
    let mut phi = EndoField::zero(frame);
    let mut xi = VectorField::zero(frame);
    let mut eta = KForm::zero(frame, 1)?;
    for (c, s) in coeffs.iter().zip(&lifted) {
        phi = phi.try_add(&s.phi().scale(c))?;
        xi = xi.try_add(&s.xi().scale(c))?;
        eta = eta.try_add(&s.eta().scale(c))?;
    }
    let structure = AlmostContact::new_unchecked(phi.map(sphere3), xi.map(sphere3), eta.map(sphere3))?;
    let almost_contact = structure.verify_with(sphere3)?;
    let (compatible, omega) = match t.metric() {
        Some(g) => (
            Some(verify_compatible_metric_with(g, &structure, sphere3)?),
            fundamental_form_with(g, &structure, sphere3).ok(),
        ),
        None => (None, None),
    };
    Ok(LambdaStructure { structure, almost_contact, compatible, omega })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub use crate::io::corpus::{flat7_frame as flat7, lie7_frame};

    pub fn quaternionic(frame: &FrameRef) -> AC3 {
        crate::io::corpus::quaternionic_structure(frame).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::scalar::{int, rat};
    use crate::structures::cartan_class;

    #[test]
    fn lie7_is_an_almost_contact_metric_3_structure() {
        let t = quaternionic(&lie7_frame());
        assert!(t.reebs_orthonormal().unwrap());
        for s in t.structures() {
            assert_eq!(s.phi().matrix().rank(), 6);
        }
        let classes: Vec<usize> = t.structures().iter().map(|s| cartan_class(s.eta()).unwrap().class).collect();
        assert_eq!(classes, vec![1, 1, 5]);
    }

    #[test]
    fn identity_is_not_almost_contact() {
        let f = flat7();
        let id = EndoField::<Rational>::identity(&f);
        let xi = VectorField::basis(&f, 4).unwrap();
        let eta = KForm::basis(&f, 4).unwrap();
        assert!(!verify_almost_contact(&id, &xi, &eta).unwrap().is_verified());
        assert!(AlmostContact::new(id, xi, eta).is_err());
    }

    #[test]
    fn swapping_two_structures_breaks_the_relations() {
        let t = quaternionic(&flat7());
        let [a, b, c] = t.structures().clone();
        let cert = verify_3_structure(&[a, c, b]).unwrap();
        assert!(!cert.is_verified());
        assert!(!cert.witnesses.is_empty());
    }

    #[test]
    fn scaled_metric_is_not_compatible() {
        let t = quaternionic(&flat7());
        let g2 = Metric::identity(7).scale(&int(2)).unwrap();
        assert!(!verify_compatible_metric(&g2, t.structure(0)).unwrap().is_verified());
        assert!(Metric::new(Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(1)]])).is_err());
    }

    #[test]
    fn omega_on_reeb_fields() {
        let t = quaternionic(&flat7());
        let l = lambda_structure(&t, &LambdaPoint::Symbolic).unwrap();
        assert!(l.is_verified());
        let w = l.omega.unwrap();
        let x = |i| VectorField::basis(t.frame(), i).unwrap().lift::<LambdaPoly>();
        assert_eq!(w.eval(&[x(4), x(5)]).unwrap(), -Poly::var(2));
        assert_eq!(w.eval(&[x(4), x(6)]).unwrap(), Poly::var(1));
        assert_eq!(w.eval(&[x(5), x(6)]).unwrap(), -Poly::var(0));
    }

    #[test]
    fn lambda_points() {
        let t = quaternionic(&lie7_frame());
        let e1 = lambda_structure(&t, &LambdaPoint::Rational([int(1), int(0), int(0)])).unwrap();
        assert_eq!(e1.to_rational().unwrap(), t.structure(0).clone());
        let p = lambda_structure(&t, &LambdaPoint::Rational([rat(3, 5), rat(4, 5), int(0)])).unwrap();
        assert!(p.is_verified());
        let off = lambda_structure(&t, &LambdaPoint::Rational([int(1), int(1), int(0)]));
        assert!(matches!(off, Err(Error::NotOnSphere(_))));
    }
}
