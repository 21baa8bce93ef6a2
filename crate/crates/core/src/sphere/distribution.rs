use crate::certificate::{Certificate, Verdict, Witness};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Rational;
use crate::sphere::Generators;
use crate::{Form, Vector};

type Basis = Vec<Vec<Rational>>;

/// `𝒱 = span(ξ_1, ..., ξ_{p+1})`. For circles in dimension 3 it is also
/// compared with `ker i_{ξ1}Ω2` and `ker i_{ξ2}Ω1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReebDistribution {
    pub span: Vec<Vector>,
    pub rank: usize,
    /// `i_{ξ1}Ω2` and `i_{ξ2}Ω1` (circles only).
    pub thetas: Option<(Form, Form)>,
    /// Kernel bases of the two 1-forms above, in dimension 3.
    pub kernels: Option<(Basis, Basis)>,
    /// Whether `span = ker θ1 = ker θ2`, in dimension 3.
    pub kernel_identity: Option<bool>,
}

fn matrix_of(vs: &[Vec<Rational>]) -> Matrix<Rational> {
    Matrix::from_rows(vs.to_vec())
}

/// Equal subspaces given by spanning sets.
fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let ra = matrix_of(a).rank();
    let rb = matrix_of(b).rank();
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    ra == rb && matrix_of(&both).rank() == ra
}

fn kernel_of_1form(theta: &Form) -> Vec<Vec<Rational>> {
    let n = theta.frame().dim();
    Matrix::from_fn(1, n, |_, j| theta.coeff(&[j])).nullspace()
}

fn thetas(g: &Generators, reebs: &[Vector]) -> Result<(Form, Form)> {
    let m = g.members();
    Ok((m[1].omega().interior(&reebs[0])?, m[0].omega().interior(&reebs[1])?))
}

pub fn reeb_distribution(g: &Generators) -> Result<ReebDistribution> {
    let reebs = g.reebs()?;
    let rows: Vec<Vec<Rational>> = reebs.iter().map(|v| v.coeffs().to_vec()).collect();
    let rank = matrix_of(&rows).rank();
    let mut out = ReebDistribution { span: reebs.clone(), rank, thetas: None, kernels: None, kernel_identity: None };
    if g.p() == 1 {
        let (t1, t2) = thetas(g, &reebs)?;
        if g.frame().dim() == 3 {
            let (k1, k2) = (kernel_of_1form(&t1), kernel_of_1form(&t2));
            out.kernel_identity = Some(same_span(&rows, &k1) && same_span(&rows, &k2));
            out.kernels = Some((k1, k2));
        }
        out.thetas = Some((t1, t2));
    }
    Ok(out)
}

/// Integrability of `𝒱` for a circle in dimension 3, decided by
/// `θ ∧ dθ = 0` for both `θ` and, independently, by bracket closure.
pub fn integrability(g: &Generators) -> Result<Certificate> {
    if g.frame().dim() != 3 || g.p() != 1 {
        return Err(Error::Dimension("integrability test needs a circle in dimension 3".into()));
    }
    let reebs = g.reebs()?;
    let (t1, t2) = thetas(g, &reebs)?;
    let w1 = t1.wedge(&t1.ext_d())?;
    let w2 = t2.wedge(&t2.ext_d())?;
    let by_forms = w1.is_zero() && w2.is_zero();
    let br = reebs[0].bracket(&reebs[1])?;
    let rows = vec![reebs[0].coeffs().to_vec(), reebs[1].coeffs().to_vec()];
    let mut with_br = rows.clone();
    with_br.push(br.coeffs().to_vec());
    let by_bracket = matrix_of(&with_br).rank() == matrix_of(&rows).rank();
    if by_forms != by_bracket {
        return Err(Error::Inconsistent("θ∧dθ and bracket closure disagree".into()));
    }
    Ok(Certificate::new("Reeb distribution integrable", Verdict::from_bool(by_forms), "theta^dtheta and bracket closure")
        .with_witness(Witness::form("theta1", &t1))
        .with_witness(Witness::form("theta1^dtheta1", &w1))
        .with_witness(Witness::form("theta2^dtheta2", &w2))
        .with_witness(Witness::vector("[xi1,xi2]", &br)))
}

/// For a circle: `i_{ξ1}Ω2 ≠ 0`, `i_{ξ2}Ω1 ≠ 0` and `ξ1, ξ2` independent.
pub fn nonvanishing_check(g: &Generators) -> Result<Certificate> {
    if g.p() != 1 {
        return Err(Error::Dimension("non-vanishing check is stated for circles".into()));
    }
    let reebs = g.reebs()?;
    let (t1, t2) = thetas(g, &reebs)?;
    let rows = vec![reebs[0].coeffs().to_vec(), reebs[1].coeffs().to_vec()];
    let independent = matrix_of(&rows).rank() == 2;
    let ok = !t1.is_zero() && !t2.is_zero() && independent;
    Ok(Certificate::new("i_xi1 Omega2, i_xi2 Omega1 nonzero; xi1, xi2 independent", Verdict::from_bool(ok), "exact coefficients")
        .with_witness(Witness::form("i_xi1(Omega2)", &t1))
        .with_witness(Witness::form("i_xi2(Omega1)", &t2))
        .with_witness(Witness::scalar("rank(xi1, xi2)", matrix_of(&rows).rank())))
}
