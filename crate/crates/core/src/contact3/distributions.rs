use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::AC3;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::LambdaPoly;
use crate::scalar::Rational;
use crate::structures::cartan_class;
use crate::{Form, Vector};

/// `[ξα, ξβ] = c ξγ` over the even permutations.
#[derive(Clone, Debug, PartialEq)]
pub struct XiBracketReport {
    /// `[ξ1,ξ2]`, `[ξ2,ξ3]`, `[ξ3,ξ1]`.
    pub brackets: [Vector; 3],
    /// The common constant when the pattern holds.
    pub c: Option<Rational>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharDistributions {
    /// `𝒞_α = {X : η_α(X) = 0, i_X dη_α = 0}` for each structure.
    pub c: [Vec<Vec<Rational>>; 3],
    /// `ℰ = 𝒞_1 ∩ 𝒞_2 ∩ 𝒞_3` (contained in `𝓗`).
    pub e: Vec<Vec<Rational>>,
    /// `𝓗 = ∩ ker η_α`.
    pub h: Vec<Vec<Rational>>,
    /// `𝓥 = span(ξ1, ξ2, ξ3)`.
    pub v: Vec<Vector>,
    pub classes: [usize; 3],
    /// Common class when it has the form 1 or `4l + 3`.
    pub rank: Option<usize>,
    /// `dim ℰ` predicted from `rank` for 3-quasi-Sasakian structures.
    pub e_expected_dim: Option<usize>,
    pub xi_brackets: XiBracketReport,
}

impl CharDistributions {
    pub fn e_dimension_matches(&self) -> Option<bool> {
        self.e_expected_dim.map(|d| d == self.e.len())
    }
}

fn one_form_row(eta: &Form) -> Vec<Rational> {
    (0..eta.frame().dim()).map(|j| eta.coeff(&[j])).collect()
}

/// Rows `η` and `k ↦ dη(·, e_k)`.
fn char_rows(eta: &Form) -> Vec<Vec<Rational>> {
    let n = eta.frame().dim();
    let d = eta.ext_d();
    let mut rows = vec![one_form_row(eta)];
    rows.extend((0..n).map(|k| (0..n).map(|j| d.coeff(&[j, k])).collect()));
    rows
}

fn kernel(rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    Matrix::from_rows(rows).nullspace()
}

fn xi_brackets(t: &AC3) -> Result<XiBracketReport> {
    let xs = t.reebs();
    let mut brackets = Vec::with_capacity(3);
    let mut constants = Vec::with_capacity(3);
    for (a, b, c) in super::EVEN_PERMUTATIONS {
        let br = xs[a].bracket(&xs[b])?;
        // br = k ξc exactly, found by pairing with ηc
        let k = br.pair(t.structure(c).eta())?;
        let multiple = br.try_sub(&xs[c].scale(&k))?.is_zero();
        constants.push(multiple.then_some(k));
        brackets.push(br);
    }
    let c = match constants.as_slice() {
        [Some(a), Some(b), Some(c)] if a == b && b == c => Some(a.clone()),
        _ => None,
    };
    Ok(XiBracketReport { brackets: brackets.try_into().expect("three"), holds: c.is_some(), c })
}

pub fn char_distributions(t: &AC3) -> Result<CharDistributions> {
    let dim = t.frame().dim();
    let etas: Vec<&Form> = t.structures().iter().map(|s| s.eta()).collect();
    let mut c = Vec::with_capacity(3);
    let mut classes = [0; 3];
    for (a, eta) in etas.iter().enumerate() {
        let k = kernel(char_rows(eta));
        classes[a] = cartan_class(eta)?.class;
        if k.len() + classes[a] != dim {
            return Err(Error::Inconsistent(format!(
                "dim 𝒞_{} = {} but the Cartan class is {}",
                a + 1,
                k.len(),
                classes[a]
            )));
        }
        c.push(k);
    }
    let e = kernel(etas.iter().flat_map(|eta| char_rows(eta)).collect());
    let h = kernel(etas.iter().map(|eta| one_form_row(eta)).collect());
    let rank = (classes[0] == classes[1] && classes[1] == classes[2])
        .then_some(classes[0])
        .filter(|r| *r == 1 || r % 4 == 3);
    let e_expected_dim = rank.map(|r| if r == 1 { dim - 3 } else { dim - r });
    Ok(CharDistributions {
        c: c.try_into().expect("three"),
        e,
        h,
        v: t.reebs().to_vec(),
        classes,
        rank,
        e_expected_dim,
        xi_brackets: xi_brackets(t)?,
    })
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let root = |b: &BigInt| {
        let r = b.sqrt();
        (&r * &r == *b).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

/// An orthonormal basis `ξ1, ξ2, ξ3, X_1..X_n, φ1X_1.., φ2X_1.., φ3X_1..`
/// with `X_i ∈ 𝓗`. Fails when a normalization needs an irrational root.
pub fn phi_basis(t: &AC3) -> Result<Vec<Vector>> {
    let g = t.metric().ok_or_else(|| Error::NotThreeStructure("no metric attached".into()))?;
    let frame = t.frame();
    let dim = frame.dim();
    if dim < 3 || !(dim - 3).is_multiple_of(4) {
        return Err(Error::Dimension(format!("3-structures live in dimension 4n + 3, got {dim}")));
    }
    let n = (dim - 3) / 4;
    let h = kernel(t.structures().iter().map(|s| one_form_row(s.eta())).collect());
    let mut chosen: Vec<Vector> = Vec::new();
    let mut xs: Vec<Vector> = Vec::new();
    for cand in h {
        if xs.len() == n {
            break;
        }
        let mut v = Vector::from_coeffs(frame, cand)?;
        for u in &chosen {
            v = v.try_sub(&u.scale(&g.inner(&v, u)))?;
        }
        if v.is_zero() {
            continue;
        }
        let norm = rational_sqrt(&g.inner(&v, &v))
            .ok_or_else(|| Error::Dimension("φ-basis needs an irrational normalization".into()))?;
        let x = v.scale(&(Rational::from_integer(1.into()) / norm));
        chosen.push(x.clone());
        for s in t.structures() {
            chosen.push(s.phi().apply(&x)?);
        }
        xs.push(x);
    }
    if xs.len() != n {
        return Err(Error::Inconsistent("horizontal space too small for a φ-basis".into()));
    }
    let mut basis: Vec<Vector> = t.reebs().to_vec();
    for k in 0..4 {
        for x in &xs {
            basis.push(if k == 0 { x.clone() } else { t.structure(k - 1).phi().apply(x)? });
        }
    }
    let orthonormal = (0..dim).all(|a| {
        (0..dim).all(|b| g.inner(&basis[a], &basis[b]) == if a == b { Rational::from_integer(1.into()) } else { Rational::zero() })
    });
    if !orthonormal {
        return Err(Error::Inconsistent("φ-basis is not orthonormal".into()));
    }
    Ok(basis)
}

/// `η_λ ∧ Ω_λ^{2n+1}` on the φ-basis, reduced modulo the sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiBasisConstant {
    pub value: LambdaPoly,
    /// Set when the value is independent of `λ`.
    pub constant: Option<Rational>,
    pub n: usize,
    /// Ratio of the computed constant to `-n`.
    pub ratio_to_minus_n: Option<Rational>,
}

pub fn phi_basis_constant(t: &AC3) -> Result<PhiBasisConstant> {
    let basis = phi_basis(t)?;
    let g = t.induced_sphere()?;
    let dim = t.frame().dim();
    let top = g.volume_form().top_coefficient();
    let det = Matrix::from_fn(dim, dim, |i, j| basis[j].coeff(i).clone()).determinant();
    let value = top.scale(&det).reduce_sphere(3);
    let constant = value.is_constant().then(|| value.constant_term()).filter(|c| !c.is_zero());
    let n = (dim - 3) / 4;
    let ratio_to_minus_n = constant.as_ref().map(|c| c / Rational::from_integer(-BigInt::from(n)));
    Ok(PhiBasisConstant { value, constant, n, ratio_to_minus_n })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::scalar::int;
    use crate::LambdaVector;

    #[test]
    fn flat_model_distributions() {
        let t = quaternionic(&flat7());
        let d = char_distributions(&t).unwrap();
        assert_eq!(d.classes, [1, 1, 1]);
        assert!(d.c.iter().all(|k| k.len() == 6));
        assert_eq!(d.e.len(), 4);
        assert_eq!(d.h.len(), 4);
        assert_eq!(d.e_dimension_matches(), Some(true));
        assert_eq!(d.xi_brackets.c, Some(int(0)));
    }

    #[test]
    fn lie7_distributions() {
        let t = quaternionic(&lie7_frame());
        let d = char_distributions(&t).unwrap();
        assert_eq!(d.classes, [1, 1, 5]);
        assert_eq!(d.rank, None);
        let c3 = Matrix::from_rows(d.c[2].clone());
        let target = Matrix::from_rows(vec![
            vec![int(0), int(1), int(0), int(0), int(0), int(0), int(0)],
            vec![int(0), int(0), int(1), int(0), int(0), int(0), int(0)],
        ]);
        assert_eq!(c3.rref().0, target);
        assert!(!d.xi_brackets.holds);
        assert_eq!(d.xi_brackets.brackets[0], Vector::basis(t.frame(), 6).unwrap());
        assert!(d.xi_brackets.brackets[1].is_zero());
    }

    #[test]
    fn phi_basis_constant_matches_eval() {
        let t = quaternionic(&flat7());
        let r = phi_basis_constant(&t).unwrap();
        let c = r.constant.clone().expect("λ-independent");
        let basis: Vec<LambdaVector> = phi_basis(&t).unwrap().iter().map(|v| v.lift()).collect();
        let direct = t.induced_sphere().unwrap().volume_form().eval(&basis).unwrap().reduce_sphere(3);
        assert_eq!(direct, LambdaPoly::constant(c));
    }
}
