use std::fmt;

use num_traits::Zero;

use super::{AlmostContact, AC3};
use crate::error::{Error, Result};
use crate::exterior::{lie_derivative_1form, lie_derivative_endo, same_frame, EndoField, FrameRef, KForm, VectorField};
use crate::scalar::{int, Rational, Ring};

/// A bilinear map on basis pairs. Vector-valued tables store `T(e_i, e_j)`
/// at `[k][i][j]`; scalar-valued ones use a single output slot.
#[derive(Clone, Debug)]
pub struct TwoOneTensor<R> {
    frame: FrameRef,
    vector_valued: bool,
    table: Vec<R>,
}

impl<R: Ring> PartialEq for TwoOneTensor<R> {
    fn eq(&self, other: &Self) -> bool {
        same_frame(&self.frame, &other.frame) && self.vector_valued == other.vector_valued && self.table == other.table
    }
}

impl<R: Ring> TwoOneTensor<R> {
    pub fn from_vector_fn(frame: &FrameRef, f: impl Fn(usize, usize) -> Result<VectorField<R>>) -> Result<Self> {
        let n = frame.dim();
        let mut table = vec![R::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j)?;
                for k in 0..n {
                    table[(k * n + i) * n + j] = v.coeff(k).clone();
                }
            }
        }
        Ok(TwoOneTensor { frame: frame.clone(), vector_valued: true, table })
    }

    pub fn from_scalar_fn(frame: &FrameRef, f: impl Fn(usize, usize) -> Result<R>) -> Result<Self> {
        let n = frame.dim();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(f(i, j)?);
            }
        }
        Ok(TwoOneTensor { frame: frame.clone(), vector_valued: false, table })
    }

    /// `(β ⊗ v)(X, Y) = β(X, Y) v` for a 2-form `β`.
    pub fn form_times_vector(beta: &KForm<R>, v: &VectorField<R>) -> Result<Self> {
        if beta.degree() != 2 {
            return Err(Error::WrongDegree { expected: 2, got: beta.degree() });
        }
        Self::from_vector_fn(v.frame(), |i, j| Ok(v.scale(&beta.coeff(&[i, j]))))
    }

    pub fn frame(&self) -> &FrameRef {
        &self.frame
    }

    pub fn is_vector_valued(&self) -> bool {
        self.vector_valued
    }

    fn out_dim(&self) -> usize {
        if self.vector_valued {
            self.frame.dim()
        } else {
            1
        }
    }

    /// Component `k` of `T(e_i, e_j)`; `k` must be 0 for scalar tables.
    pub fn get(&self, k: usize, i: usize, j: usize) -> &R {
        let n = self.frame.dim();
        assert!(k < self.out_dim() && i < n && j < n, "tensor index out of range");
        &self.table[(k * n + i) * n + j]
    }

    pub fn vector(&self, i: usize, j: usize) -> VectorField<R> {
        assert!(self.vector_valued, "scalar-valued tensor");
        let coeffs = (0..self.frame.dim()).map(|k| self.get(k, i, j).clone()).collect();
        VectorField::from_coeffs(&self.frame, coeffs).expect("dimension matches")
    }

    pub fn scalar(&self, i: usize, j: usize) -> &R {
        assert!(!self.vector_valued, "vector-valued tensor");
        self.get(0, i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Zero::is_zero)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TwoOneTensor<S> {
        TwoOneTensor { frame: self.frame.clone(), vector_valued: self.vector_valued, table: self.table.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !same_frame(&self.frame, &other.frame) {
            return Err(Error::FrameMismatch);
        }
        if self.vector_valued != other.vector_valued {
            return Err(Error::Dimension("adding scalar- and vector-valued tensors".into()));
        }
        let table = self.table.iter().zip(&other.table).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(TwoOneTensor { frame: self.frame.clone(), vector_valued: self.vector_valued, table })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-R::one()))
    }
}

impl<R: Ring> fmt::Display for TwoOneTensor<R> {
    /// Nonzero values on basis pairs, one per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let n = self.frame.dim();
        let mut first = true;
        for i in 0..n {
            for j in 0..n {
                let value = if self.vector_valued {
                    let v = self.vector(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    v.to_string()
                } else {
                    let s = self.scalar(i, j);
                    if s.is_zero() {
                        continue;
                    }
                    s.to_string()
                };
                if !first {
                    f.write_str("\n")?;
                }
                first = false;
                write!(f, "T({}, {}) = {}", self.frame.name(i), self.frame.name(j), value)?;
            }
        }
        Ok(())
    }
}

fn basis<R: Ring>(frame: &FrameRef, i: usize) -> VectorField<R> {
    VectorField::basis(frame, i).expect("index in range")
}

fn concomitant_raw<R: Ring>(p: &EndoField<R>, q: &EndoField<R>) -> Result<TwoOneTensor<R>> {
    let frame = p.frame().clone();
    let pq = p.compose(q)?.try_add(&q.compose(p)?)?;
    TwoOneTensor::from_vector_fn(&frame, |i, j| {
        let (x, y) = (basis(&frame, i), basis(&frame, j));
        let (px, qx, py, qy) = (p.apply(&x)?, q.apply(&x)?, p.apply(&y)?, q.apply(&y)?);
        let terms = [
            px.bracket(&qy)?,
            p.apply(&qx.bracket(&y)?)?.scale(&-R::one()),
            q.apply(&x.bracket(&py)?)?.scale(&-R::one()),
            qx.bracket(&py)?,
            q.apply(&px.bracket(&y)?)?.scale(&-R::one()),
            p.apply(&x.bracket(&qy)?)?.scale(&-R::one()),
            pq.apply(&x.bracket(&y)?)?,
        ];
        terms.iter().try_fold(VectorField::zero(&frame), |acc, t| acc.try_add(t))
    })
}

/// `[P,Q](X,Y) = [PX,QY] - P[QX,Y] - Q[X,PY] + [QX,PY] - Q[PX,Y] - P[X,QY] + (PQ+QP)[X,Y]`
/// on basis pairs, with `[P,Q] = [Q,P]` re-checked.
pub fn nijenhuis_concomitant<R: Ring>(p: &EndoField<R>, q: &EndoField<R>) -> Result<TwoOneTensor<R>> {
    if !same_frame(p.frame(), q.frame()) {
        return Err(Error::FrameMismatch);
    }
    let pq = concomitant_raw(p, q)?;
    if pq != concomitant_raw(q, p)? {
        return Err(Error::Inconsistent("Nijenhuis concomitant is not symmetric".into()));
    }
    Ok(pq)
}

/// `N_P(X,Y) = [PX,PY] - P[PX,Y] - P[X,PY] + P²[X,Y]`.
pub fn nijenhuis_torsion<R: Ring>(p: &EndoField<R>) -> Result<TwoOneTensor<R>> {
    let frame = p.frame().clone();
    let p2 = p.compose(p)?;
    TwoOneTensor::from_vector_fn(&frame, |i, j| {
        let (x, y) = (basis(&frame, i), basis(&frame, j));
        let (px, py) = (p.apply(&x)?, p.apply(&y)?);
        px.bracket(&py)?
            .try_sub(&p.apply(&px.bracket(&y)?)?)?
            .try_sub(&p.apply(&x.bracket(&py)?)?)?
            .try_add(&p2.apply(&x.bracket(&y)?)?)
    })
}

/// `N⁽¹⁾` and `N⁽²⁾` are bilinear; `N⁽³⁾` is a (1,1)-tensor and `N⁽⁴⁾` a
/// 1-form.
#[derive(Clone, Debug, PartialEq)]
pub struct NTensors<R: Ring> {
    pub n1: TwoOneTensor<R>,
    pub n2: TwoOneTensor<R>,
    pub n3: EndoField<R>,
    pub n4: KForm<R>,
}

impl<R: Ring> NTensors<R> {
    pub fn all_zero(&self) -> bool {
        self.n1.is_zero() && self.n2.is_zero() && self.n3.is_zero() && self.n4.is_zero()
    }

    pub fn zero_flags(&self) -> [bool; 4] {
        [self.n1.is_zero(), self.n2.is_zero(), self.n3.is_zero(), self.n4.is_zero()]
    }

    pub fn scale(&self, c: &R) -> Self {
        NTensors { n1: self.n1.scale(c), n2: self.n2.scale(c), n3: self.n3.scale(c), n4: self.n4.scale(c) }
    }
}

/// `(L_{φX} η)(Y) - (L_{φY} η)(X)` on basis pairs.
fn phi_lie_term<R: Ring>(phi: &EndoField<R>, eta: &KForm<R>) -> Result<TwoOneTensor<R>> {
    let frame = phi.frame().clone();
    TwoOneTensor::from_scalar_fn(&frame, |i, j| {
        let (x, y) = (basis(&frame, i), basis(&frame, j));
        let a = y.pair(&lie_derivative_1form(&phi.apply(&x)?, eta)?)?;
        let b = x.pair(&lie_derivative_1form(&phi.apply(&y)?, eta)?)?;
        Ok(a - b)
    })
}

fn raw_n_tensors<R: Ring>(a: &AlmostContact<R>, b: &AlmostContact<R>) -> Result<NTensors<R>> {
    let n1 = concomitant_raw(a.phi(), b.phi())?
        .try_add(&TwoOneTensor::form_times_vector(&a.eta().ext_d(), b.xi())?)?
        .try_add(&TwoOneTensor::form_times_vector(&b.eta().ext_d(), a.xi())?)?;
    let n2 = phi_lie_term(a.phi(), b.eta())?.try_add(&phi_lie_term(b.phi(), a.eta())?)?;
    let n3 = lie_derivative_endo(a.xi(), b.phi())?.try_add(&lie_derivative_endo(b.xi(), a.phi())?)?;
    let n4 = lie_derivative_1form(a.xi(), b.eta())?.try_add(&lie_derivative_1form(b.xi(), a.eta())?)?;
    Ok(NTensors { n1, n2, n3, n4 })
}

/// `N⁽¹⁾_{αβ} = [φα,φβ] + dηα⊗ξβ + dηβ⊗ξα`,
/// `N⁽²⁾_{αβ}(X,Y) = (L_{φαX}ηβ)(Y) - (L_{φαY}ηβ)(X) + (α ↔ β)`,
/// `N⁽³⁾_{αβ} = L_{ξα}φβ + L_{ξβ}φα`, `N⁽⁴⁾_{αβ} = L_{ξα}ηβ + L_{ξβ}ηα`.
/// Indices are 0-based; symmetry in `(α, β)` is re-checked.
pub fn n_tensors(t: &AC3, alpha: usize, beta: usize) -> Result<NTensors<Rational>> {
    if alpha > 2 || beta > 2 {
        return Err(Error::IndexOutOfRange { index: alpha.max(beta), dim: 3 });
    }
    let (a, b) = (t.structure(alpha), t.structure(beta));
    let ab = raw_n_tensors(a, b)?;
    if ab != raw_n_tensors(b, a)? {
        return Err(Error::Inconsistent("N-tensors are not symmetric in (α, β)".into()));
    }
    Ok(ab)
}

/// Single-structure tensors with this crate's `d`:
/// `N⁽¹⁾ = N_φ + dη⊗ξ`, `N⁽²⁾(X,Y) = (L_{φX}η)(Y) - (L_{φY}η)(X)`,
/// `N⁽³⁾ = L_ξφ`, `N⁽⁴⁾ = L_ξη`.
pub fn single_n_tensors<R: Ring>(s: &AlmostContact<R>) -> Result<NTensors<R>> {
    Ok(NTensors {
        n1: nijenhuis_torsion(s.phi())?.try_add(&TwoOneTensor::form_times_vector(&s.eta().ext_d(), s.xi())?)?,
        n2: phi_lie_term(s.phi(), s.eta())?,
        n3: lie_derivative_endo(s.xi(), s.phi())?,
        n4: lie_derivative_1form(s.xi(), s.eta())?,
    })
}

/// Comparison of `N⁽ⁱ⁾_{α,α}` with the single-structure tensor `N⁽ⁱ⁾_{φα}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub index: usize,
    /// `N⁽¹⁾_{αα} = N⁽¹⁾_φ` for `i = 1`, `2 N⁽ⁱ⁾_{αα} = N⁽ⁱ⁾_φ` for `i ≥ 2`.
    pub stated_factor_holds: bool,
    /// `N⁽ⁱ⁾_{αα} = 2 N⁽ⁱ⁾_φ`.
    pub doubled_holds: bool,
    /// Both sides vanish, so any factor works.
    pub trivially_zero: bool,
}

/// The doubled relation is an identity; its failure is an internal error.
pub fn n_tensor_relations(t: &AC3, alpha: usize) -> Result<[RelationCheck; 4]> {
    let pair = n_tensors(t, alpha, alpha)?;
    let single = single_n_tensors(t.structure(alpha))?;
    let two = int(2);
    let doubled = single.scale(&two);
    let eq = [
        pair.n1 == doubled.n1,
        pair.n2 == doubled.n2,
        pair.n3 == doubled.n3,
        pair.n4 == doubled.n4,
    ];
    let pair2 = pair.scale(&two);
    let stated = [pair.n1 == single.n1, pair2.n2 == single.n2, pair2.n3 == single.n3, pair2.n4 == single.n4];
    let zero = single.zero_flags();
    if eq.iter().any(|ok| !ok) {
        return Err(Error::Inconsistent("N⁽ⁱ⁾_{αα} ≠ 2 N⁽ⁱ⁾_φ".into()));
    }
    Ok(std::array::from_fn(|i| RelationCheck {
        index: i + 1,
        stated_factor_holds: stated[i],
        doubled_holds: eq[i],
        trivially_zero: zero[i],
    }))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::exterior::Frame;
    use crate::scalar::rat;

    #[test]
    fn flat_model_is_hyper_normal() {
        let t = quaternionic(&flat7());
        for a in 0..3 {
            for b in 0..3 {
                assert!(n_tensors(&t, a, b).unwrap().all_zero());
            }
        }
    }

    #[test]
    fn concomitant_of_p_with_itself_is_twice_the_torsion() {
        let t = quaternionic(&lie7_frame());
        let p = t.structure(0).phi();
        let pp = nijenhuis_concomitant(p, p).unwrap();
        assert_eq!(pp, nijenhuis_torsion(p).unwrap().scale(&int(2)));
        assert!(!pp.is_zero());
    }

    #[test]
    fn identity_concomitant_vanishes() {
        let f = lie7_frame();
        let t = quaternionic(&f);
        let id = EndoField::<Rational>::identity(&f);
        assert!(nijenhuis_concomitant(&id, t.structure(2).phi()).unwrap().is_zero());
        let q = EndoField::from_images(&f, &(0..7).map(|i| basis(&f, (i * 3) % 7).scale(&rat(i as i64 - 2, 3))).collect::<Vec<_>>()).unwrap();
        assert!(nijenhuis_concomitant(&id, &q).unwrap().is_zero());
    }

    #[test]
    fn abelian_concomitant_is_zero() {
        let f = Frame::abelian(4);
        let p = EndoField::from_images(&f, &(0..4).map(|i| basis::<Rational>(&f, 3 - i)).collect::<Vec<_>>()).unwrap();
        let q = EndoField::from_images(&f, &(0..4).map(|i| basis::<Rational>(&f, (i + 1) % 4)).collect::<Vec<_>>()).unwrap();
        assert!(nijenhuis_concomitant(&p, &q).unwrap().is_zero());
    }

    #[test]
    fn relations_on_lie7() {
        let t = quaternionic(&lie7_frame());
        for a in 0..3 {
            let r = n_tensor_relations(&t, a).unwrap();
            assert!(r.iter().all(|c| c.doubled_holds));
        }
        // structure 1 is not normal and L_ξ1 φ1 ≠ 0, so factor 1 fails for N⁽¹⁾ and N⁽³⁾
        let r1 = n_tensor_relations(&t, 0).unwrap();
        assert!(!r1[0].trivially_zero && !r1[0].stated_factor_holds);
        assert!(!r1[2].trivially_zero && !r1[2].stated_factor_holds);
        // structure 3 is normal and every tensor vanishes
        assert!(single_n_tensors(t.structure(2)).unwrap().all_zero());
    }

    #[test]
    fn n1_uses_the_exterior_derivative_term() {
        let t = quaternionic(&lie7_frame());
        let n = n_tensors(&t, 2, 2).unwrap();
        let s = t.structure(2);
        let conc = nijenhuis_concomitant(s.phi(), s.phi()).unwrap();
        let d_term = TwoOneTensor::form_times_vector(&s.eta().ext_d(), s.xi()).unwrap().scale(&int(2));
        assert_eq!(n.n1, conc.try_add(&d_term).unwrap());
        // dη3 = -(X1^X4 + xi1^xi2), so the (X1, X4) slot of 2 dη3⊗ξ3 is -2 ξ3
        assert_eq!(d_term.vector(0, 3), basis(t.frame(), 6).scale(&int(-2)));
    }
}
