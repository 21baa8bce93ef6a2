//! Dense univariate polynomials over the rationals with Sturm sequences and
//! real-root isolation by bisection.

use num_traits::{One, Signed, Zero};

use crate::scalar::{int, sign_of, Rational};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    /// Ascending coefficients, no trailing zeros.
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Euclidean division over the rationals. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &factor * c;
            }
            quot[shift] = factor;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => UniPoly::new(self.coeffs.iter().map(|c| c / l).collect()),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same real roots, all simple.
    pub fn squarefree(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    pub fn sturm_sequence(&self) -> SturmSequence {
        let mut seq = vec![self.clone()];
        let d = self.derivative();
        if !d.is_zero() {
            seq.push(d);
            loop {
                let n = seq.len();
                let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
                if r.is_zero() {
                    break;
                }
                seq.push(r.neg());
            }
        }
        SturmSequence { seq }
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<UniPoly>,
}

impl SturmSequence {
    pub fn polys(&self) -> &[UniPoly] {
        &self.seq
    }

    pub fn sign_variations(&self, x: &Rational) -> usize {
        let signs: Vec<i8> = self
            .seq
            .iter()
            .map(|p| sign_of(&p.eval(x)))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_variations(a).saturating_sub(self.sign_variations(b))
    }
}

/// Interval `(lo, hi]` holding exactly one root of a squarefree polynomial.
/// When `lo == hi` the root is the rational `lo` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl IsolatingInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Isolate every real root of `p` in `[a, b]`.
///
/// Works on the squarefree part; exact rational roots met during bisection
/// are returned as degenerate intervals.
pub fn isolate_roots(p: &UniPoly, a: &Rational, b: &Rational) -> Vec<IsolatingInterval> {
    let sf = p.squarefree();
    if sf.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sturm = sf.sturm_sequence();
    let mut out = Vec::new();
    if sf.eval(a).is_zero() {
        out.push(IsolatingInterval { lo: a.clone(), hi: a.clone() });
    }
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count_roots(&lo, &hi);
        if n == 0 {
            continue;
        }
        if sf.eval(&hi).is_zero() && n == 1 {
            out.push(IsolatingInterval { lo: hi.clone(), hi });
            continue;
        }
        if n == 1 {
            out.push(IsolatingInterval { lo, hi });
            continue;
        }
        let mid = (&lo + &hi) / int(2);
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Shrink an isolating interval of squarefree `p` by `steps` bisections,
/// stopping early if an exact rational root is hit.
pub fn refine_root(p: &UniPoly, iv: &IsolatingInterval, steps: usize) -> IsolatingInterval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    if lo == hi {
        return iv.clone();
    }
    if p.eval(&hi).is_zero() {
        return IsolatingInterval { lo: hi.clone(), hi };
    }
    let sturm = p.sturm_sequence();
    for _ in 0..steps {
        let mid = (&lo + &hi) / int(2);
        if p.eval(&mid).is_zero() {
            return IsolatingInterval { lo: mid.clone(), hi: mid };
        }
        if sturm.count_roots(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    IsolatingInterval { lo, hi }
}
