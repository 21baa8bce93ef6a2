use super::{AlmostContact, NTensors, EVEN_PERMUTATIONS, AC3};
use crate::error::{Error, Result};
use crate::exterior::{same_frame, EndoField, FrameRef, KForm, VectorField};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Ring};
use crate::sphere::Generators;
use crate::symplectization::flat;
use crate::Form;

/// `J_α(X, f ∂t) = (φ_α X - f ξ_α, η_α(X) ∂t)` on the frame extended by `t`.
#[derive(Clone, Debug)]
pub struct HypercomplexLift {
    pub frame: FrameRef,
    pub j: [EndoField<Rational>; 3],
}

fn lift_one<R: Ring>(ext: &FrameRef, s: &AlmostContact<R>) -> Result<EndoField<R>> {
    let n = s.frame().dim();
    let t = n;
    let m = Matrix::from_fn(n + 1, n + 1, |i, j| match (i == t, j == t) {
        (false, false) => s.phi().entry(i, j).clone(),
        (false, true) => -s.xi().coeff(i).clone(),
        (true, false) => s.eta().coeff(&[j]),
        (true, true) => R::zero(),
    });
    EndoField::from_matrix(ext, m)
}

pub fn hypercomplex_lift(t: &AC3) -> Result<HypercomplexLift> {
    let ext = crate::symplectization::ExtendedFrame::new(t.frame())?.frame().clone();
    let js = t.structures().iter().map(|s| lift_one(&ext, s)).collect::<Result<Vec<_>>>()?;
    Ok(HypercomplexLift { frame: ext, j: js.try_into().expect("three lifts") })
}

/// Reads `N⁽¹⁾..N⁽⁴⁾` off the concomitant `[J_α, J_β]` on `M × ℝ`: the pair
/// `(X, Y)` gives `(N⁽¹⁾(X,Y), N⁽²⁾(X,Y))` and `(X, ∂t)` gives
/// `(N⁽³⁾X, N⁽⁴⁾(X))`.
pub fn concomitant_blocks(t: &AC3, alpha: usize, beta: usize) -> Result<NTensors<Rational>> {
    let lift = hypercomplex_lift(t)?;
    let c = super::nijenhuis_concomitant(&lift.j[alpha], &lift.j[beta])?;
    let base = t.frame();
    let n = base.dim();
    let n1 = super::TwoOneTensor::from_vector_fn(base, |i, j| {
        VectorField::from_coeffs(base, (0..n).map(|k| c.get(k, i, j).clone()).collect())
    })?;
    let n2 = super::TwoOneTensor::from_scalar_fn(base, |i, j| Ok(c.get(n, i, j).clone()))?;
    let n3 = EndoField::from_matrix(base, Matrix::from_fn(n, n, |k, i| c.get(k, i, n).clone()))?;
    let n4 = KForm::from_terms(base, 1, (0..n).map(|i| (vec![i], c.get(n, i, n).clone())))?;
    Ok(NTensors { n1, n2, n3, n4 })
}

/// From three 2-forms on a `4k`-dimensional frame with anticommuting
/// `ω_α♯ ∘ ω_β♭`, build `η_α = dt_α`, `Ω_α = ω_α + η_β ∧ η_γ` on the frame
/// extended by `t1, t2, t3`.
pub fn hyperholomorphic_product(omegas: &[Form; 3]) -> Result<Generators> {
    let frame = omegas[0].frame().clone();
    if omegas.iter().any(|w| !same_frame(w.frame(), &frame)) {
        return Err(Error::FrameMismatch);
    }
    for w in omegas {
        if w.degree() != 2 {
            return Err(Error::WrongDegree { expected: 2, got: w.degree() });
        }
    }
    let dim = frame.dim();
    if dim == 0 || !dim.is_multiple_of(4) {
        return Err(Error::Dimension(format!("hyperholomorphic product needs dimension 4k, got {dim}")));
    }
    let flats = omegas.iter().map(flat).collect::<Vec<_>>();
    let sharps = flats.iter().map(|f| f.inverse().ok_or(Error::Degenerate)).collect::<Result<Vec<_>>>()?;
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        let ab = sharps[a].mul(&flats[b]);
        let ba = sharps[b].mul(&flats[a]);
        if ab != ba.map(|x| -x) {
            return Err(Error::AnticommutationFailed(a + 1, b + 1));
        }
    }
    let names: Vec<String> = (1..=3)
        .map(|k| {
            ["t", "s", "u"]
                .iter()
                .map(|p| format!("{p}{k}"))
                .find(|n| frame.index_of(n).is_none())
                .ok_or_else(|| Error::Dimension("no free names for the R³ factor".into()))
        })
        .collect::<Result<_>>()?;
    let ext = frame.extend_abelian(&names.iter().map(String::as_str).collect::<Vec<_>>())?;
    let etas = (0..3).map(|k| KForm::basis(&ext, dim + k)).collect::<Result<Vec<Form>>>()?;
    let mut pairs = vec![(Form::zero(&ext, 1)?, Form::zero(&ext, 2)?); 3];
    for (a, b, c) in EVEN_PERMUTATIONS {
        let omega = omegas[a].embed(&ext)?.try_add(&etas[b].wedge(&etas[c])?)?;
        pairs[a] = (etas[a].clone(), omega);
    }
    Generators::from_pairs(pairs)
}
