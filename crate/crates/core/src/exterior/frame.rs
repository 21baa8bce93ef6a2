use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Rational;

/// Shared handle to a frame; tensors hold one of these.
pub type FrameRef = Arc<Frame>;

/// A finite basis `e_1, ..., e_n` of left-invariant vector fields together
/// with its structure constants `[e_i, e_j] = sum_k c^k_ij e_k`.
///
/// The abelian case models constant forms on `R^n` or a torus. Structure
/// constants are always exact rationals; the Jacobi identity is checked when
/// the frame is built.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Frame {
    names: Vec<String>,
    /// `c[(i * n + j) * n + k]`, fully antisymmetric in `(i, j)`.
    constants: Vec<Rational>,
    /// Nonzero `(k, c^k_ij)` at `i * n + j`, derived from `constants`.
    sparse: Vec<Vec<(usize, Rational)>>,
}

/// One bracket relation `[e_i, e_j] = sum coeff * e_k` with 0-based indices.
pub type BracketSpec = (usize, usize, Vec<(usize, Rational)>);

pub(crate) fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

impl Frame {
    /// Abelian frame with basis names `e1..en`.
    pub fn abelian(dim: usize) -> FrameRef {
        Self::abelian_named(default_names(dim))
    }

    pub fn abelian_named(names: Vec<String>) -> FrameRef {
        let dim = names.len();
        Arc::new(Frame { names, constants: vec![Rational::zero(); dim * dim * dim], sparse: vec![Vec::new(); dim * dim] })
    }

    /// Build a frame from bracket relations. Each unordered pair may be given
    /// at most once, in either order; `[e_i, e_i]` must vanish.
    pub fn new(names: Vec<String>, brackets: &[BracketSpec]) -> Result<FrameRef> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::Dimension("a frame needs at least one basis vector".into()));
        }
        let mut frame = Frame { names, constants: vec![Rational::zero(); dim * dim * dim], sparse: Vec::new() };
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, terms) in brackets {
            let (i, j) = (*i, *j);
            for &idx in [i, j].iter().chain(terms.iter().map(|(k, _)| k)) {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            if i == j {
                if terms.iter().any(|(_, c)| !c.is_zero()) {
                    return Err(Error::InvalidBracket {
                        i,
                        j,
                        reason: "a vector field commutes with itself".into(),
                    });
                }
                continue;
            }
            let key = (i.min(j), i.max(j));
            if !seen.insert(key) {
                return Err(Error::InvalidBracket { i, j, reason: "bracket given twice".into() });
            }
            for (k, c) in terms {
                let slot = frame.slot(i, j, *k);
                frame.constants[slot] += c;
                let slot = frame.slot(j, i, *k);
                frame.constants[slot] -= c;
            }
        }
        frame.sparse = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .map(|k| (k, frame.constants[ij * dim + k].clone()))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        if let Some((i, j, k)) = frame.jacobi_violation() {
            return Err(Error::JacobiViolation(i, j, k));
        }
        Ok(Arc::new(frame))
    }

    fn slot(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.dim();
        (i * n + j) * n + k
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `c^k_ij`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[self.slot(i, j, k)]
    }

    /// Components of `[e_i, e_j]`.
    pub fn bracket_of_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        (0..self.dim()).map(|k| self.constant(i, j, k).clone()).collect()
    }

    /// Nonzero brackets with `i < j`.
    pub fn brackets(&self) -> Vec<BracketSpec> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<(usize, Rational)> = (0..n)
                    .filter(|&k| !self.constant(i, j, k).is_zero())
                    .map(|k| (k, self.constant(i, j, k).clone()))
                    .collect();
                if !terms.is_empty() {
                    out.push((i, j, terms));
                }
            }
        }
        out
    }

    /// Nonzero terms `(k, c^k_ij)` of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.sparse[i * self.dim() + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.sparse.iter().all(Vec::is_empty)
    }

    /// First triple `i < j < k` on which the cyclic sum of double brackets
    /// is nonzero.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        // [[e_a, e_b], e_c]^m = sum_l c^l_ab c^m_lc
        let double = |a: usize, b: usize, c: usize, m: usize| -> Rational {
            (0..n)
                .filter(|&l| !self.constant(a, b, l).is_zero())
                .map(|l| self.constant(a, b, l) * self.constant(l, c, m))
                .sum()
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for m in 0..n {
                        let s = double(i, j, k, m) + double(j, k, i, m) + double(k, i, j, m);
                        if !s.is_zero() {
                            return Some((i, j, k));
                        }
                    }
                }
            }
        }
        None
    }

    /// Append abelian directions that commute with everything; existing
    /// indices are unchanged.
    pub fn extend_abelian(&self, extra: &[&str]) -> Result<FrameRef> {
        let mut names = self.names.clone();
        for e in extra {
            if names.iter().any(|n| n == e) {
                return Err(Error::Dimension(format!("basis name `{e}` already used")));
            }
            names.push((*e).to_string());
        }
        Frame::new(names, &self.brackets())
    }

    /// Frame of the Lie algebra `self ⊕ other`, with `other`'s basis appended.
    pub fn direct_sum(&self, other: &Frame) -> Result<FrameRef> {
        let n = self.dim();
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut brackets = self.brackets();
        brackets.extend(other.brackets().into_iter().map(|(i, j, t)| {
            (i + n, j + n, t.into_iter().map(|(k, c)| (k + n, c)).collect())
        }));
        Frame::new(names, &brackets)
    }

    /// Same Lie algebra in the basis `f_a = sum_i basis[(i, a)] e_i`.
    /// Basis names are reset to `e1..en`.
    pub fn change_basis(&self, basis: &Matrix<Rational>) -> Result<FrameRef> {
        let n = self.dim();
        let inv = basis.inverse().ok_or(Error::Degenerate)?;
        let mut brackets = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                // [f_a, f_b] in old coordinates
                let mut old = vec![Rational::zero(); n];
                for i in 0..n {
                    if basis[(i, a)].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if basis[(j, b)].is_zero() {
                            continue;
                        }
                        let w = &basis[(i, a)] * &basis[(j, b)];
                        for (k, o) in old.iter_mut().enumerate() {
                            let c = self.constant(i, j, k);
                            if !c.is_zero() {
                                *o += &w * c;
                            }
                        }
                    }
                }
                let new = inv.mul_vec(&old);
                let terms: Vec<(usize, Rational)> = new
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if !terms.is_empty() {
                    brackets.push((a, b, terms));
                }
            }
        }
        Frame::new(default_names(n), &brackets)
    }
}

/// Two handles denote the same frame (pointer or structural equality).
pub fn same_frame(a: &FrameRef, b: &FrameRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn names(n: usize) -> Vec<String> {
        default_names(n)
    }

    #[test]
    fn heisenberg_brackets_are_antisymmetric() {
        let f = Frame::new(names(3), &[(0, 1, vec![(2, int(1))])]).unwrap();
        assert_eq!(f.constant(0, 1, 2), &int(1));
        assert_eq!(f.constant(1, 0, 2), &int(-1));
        assert_eq!(f.brackets().len(), 1);
        assert!(!f.is_abelian());
    }

    #[test]
    fn jacobi_violation_is_rejected() {
        // [e1,e2]=e3, [e1,e3]=e1: the cyclic sum is -e3
        let r = Frame::new(names(3), &[(0, 1, vec![(2, int(1))]), (0, 2, vec![(0, int(1))])]);
        assert!(matches!(r, Err(Error::JacobiViolation(0, 1, 2))));
    }

    #[test]
    fn duplicate_and_diagonal_brackets() {
        assert!(Frame::new(names(2), &[(0, 0, vec![(1, int(1))])]).is_err());
        assert!(Frame::new(names(3), &[(0, 1, vec![(2, int(1))]), (1, 0, vec![(2, int(1))])]).is_err());
    }

    #[test]
    fn change_of_basis_preserves_jacobi() {
        let so3 = Frame::new(
            names(3),
            &[(0, 1, vec![(2, int(1))]), (1, 2, vec![(0, int(1))]), (2, 0, vec![(1, int(1))])],
        )
        .unwrap();
        let a = Matrix::from_rows(vec![
            vec![int(1), int(2), int(0)],
            vec![int(0), int(1), int(-1)],
            vec![int(1), int(0), int(3)],
        ]);
        let g = so3.change_basis(&a).unwrap();
        assert!(g.jacobi_violation().is_none());
        assert!(!g.is_abelian());
    }
}
