//! Certified sign of a homogeneous polynomial on the unit sphere.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::{LambdaPoly, Monomial, Poly};
use crate::scalar::{int, integer_ray, sign_of, Rational};
use crate::univariate::{isolate_roots, refine_root, IsolatingInterval, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphereOptions {
    /// Maximum bisection depth of a face cell.
    pub max_depth: usize,
    /// Total number of cells examined before giving up.
    pub max_cells: usize,
}

impl Default for SphereOptions {
    fn default() -> Self {
        SphereOptions { max_depth: 12, max_cells: 200_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefutationReason {
    /// Odd degree: `V(-λ) = -V(λ)`.
    Parity,
    /// `V(λ*) = 0`.
    Zero,
    /// `V(λ*)` has the sign opposite to `V(e_1)`.
    SignChange,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SphereVerdict {
    VerifiedExact { c: Rational },
    VerifiedByIsolation,
    VerifiedBySubdivision { cells: usize },
    /// `ray` is a positive multiple of a sphere point; `value = V(ray)`.
    RefutedWithWitness { ray: Vec<BigInt>, value: Rational, reason: RefutationReason },
    /// An even-multiplicity irrational zero in a chart of a circle.
    RefutedAtAlgebraicRoot { chart: usize, factor: UniPoly, interval: IsolatingInterval },
    UndecidedAtResolution { depth: usize },
}

impl SphereVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(
            self,
            SphereVerdict::VerifiedExact { .. }
                | SphereVerdict::VerifiedByIsolation
                | SphereVerdict::VerifiedBySubdivision { .. }
        )
    }

    pub fn is_refuted(&self) -> bool {
        matches!(
            self,
            SphereVerdict::RefutedWithWitness { .. } | SphereVerdict::RefutedAtAlgebraicRoot { .. }
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            SphereVerdict::VerifiedExact { .. } => "verified_exact",
            SphereVerdict::VerifiedByIsolation => "verified_by_isolation",
            SphereVerdict::VerifiedBySubdivision { .. } => "verified_by_subdivision",
            SphereVerdict::RefutedWithWitness { .. } => "refuted_with_witness",
            SphereVerdict::RefutedAtAlgebraicRoot { .. } => "refuted_at_algebraic_root",
            SphereVerdict::UndecidedAtResolution { .. } => "undecided_at_resolution",
        }
    }
}

/// Decide whether the homogeneous `v` in `nvars` variables vanishes
/// somewhere on the unit sphere. Returns the verdict and a method trace.
pub fn decide_nonvanishing(
    v: &LambdaPoly,
    nvars: usize,
    opts: &SphereOptions,
) -> (SphereVerdict, Vec<String>) {
    let mut trace = Vec::new();
    let k = nvars;
    let Some(d) = v.homogeneous_degree() else {
        trace.push("volume polynomial is identically zero".into());
        return (refute_at(v, unit(k, 0)), trace);
    };
    let at = |i: usize| v.eval(&unit(k, i));
    let s0 = sign_of(&at(0));

    if d % 2 == 1 {
        trace.push(format!("degree {d} is odd: V(-λ) = -V(λ)"));
        let w = if s0 == 0 { unit(k, 0) } else { unit(k, 0).iter().map(|x| -x).collect() };
        let value = v.eval(&w);
        trace.push(format!("V(e1) = {}, witness value {}", at(0), value));
        return (
            SphereVerdict::RefutedWithWitness {
                ray: integer_ray(&w),
                value,
                reason: if s0 == 0 { RefutationReason::Zero } else { RefutationReason::Parity },
            },
            trace,
        );
    }

    for i in 0..k {
        let s = sign_of(&at(i));
        if s == 0 || s != s0 {
            trace.push(format!("V(e{}) = {} against V(e1) = {}", i + 1, at(i), at(0)));
            return (refute_at(v, unit(k, i)), trace);
        }
    }

    let c = at(0);
    let pattern = Poly::sphere_norm(k).pow(d / 2).scale(&c);
    if *v == pattern {
        trace.push(format!("V = {} * (sum of squares)^{}", c, d / 2));
        return (SphereVerdict::VerifiedExact { c }, trace);
    }
    trace.push("V is not a multiple of a power of the sphere norm".into());

    if k == 2 {
        return isolate_circle(v, s0, trace);
    }
    subdivide(v, k, s0, opts, trace)
}

fn unit(k: usize, i: usize) -> Vec<Rational> {
    (0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
}

fn refute_at(v: &LambdaPoly, point: Vec<Rational>) -> SphereVerdict {
    let ray = integer_ray(&point);
    let ray_q: Vec<Rational> = ray.iter().cloned().map(Rational::from_integer).collect();
    let value = v.eval(&ray_q);
    let reason = if value.is_zero() { RefutationReason::Zero } else { RefutationReason::SignChange };
    SphereVerdict::RefutedWithWitness { ray, value, reason }
}

/// Chart polynomial of a binary form: `V(x, 1)` (chart 0) or `V(1, y)`.
fn chart(v: &LambdaPoly, which: usize) -> UniPoly {
    let deg = v.total_degree().unwrap_or(0) as usize;
    let mut c = vec![Rational::zero(); deg + 1];
    for (m, q) in v.terms() {
        let e = m.exponent(if which == 0 { 0 } else { 1 }) as usize;
        c[e] += q;
    }
    UniPoly::new(c)
}

fn chart_point(which: usize, x: &Rational) -> Vec<Rational> {
    if which == 0 {
        vec![x.clone(), Rational::one()]
    } else {
        vec![Rational::one(), x.clone()]
    }
}

/// p = 1: Sturm isolation on the charts `λ2 = 1` and `λ1 = 1` over
/// `[-1, 1]`; evenness of `V` covers the opposite half of the circle.
fn isolate_circle(v: &LambdaPoly, s0: i8, mut trace: Vec<String>) -> (SphereVerdict, Vec<String>) {
    let (lo, hi) = (int(-1), int(1));
    for which in 0..2 {
        let h = chart(v, which);
        let name = if which == 0 { "V(x, 1)" } else { "V(1, y)" };
        let sf = h.squarefree();
        let sturm = sf.sturm_sequence();
        trace.push(format!(
            "chart {name} = {h}; squarefree part {sf}; Sturm sequence of length {}; \
             sign variations at -1: {}, at 1: {}",
            sturm.polys().len(),
            sturm.sign_variations(&lo),
            sturm.sign_variations(&hi)
        ));
        for end in [&lo, &hi] {
            let val = h.eval(end);
            if sign_of(&val) != s0 {
                trace.push(format!("endpoint {end}: value {val}"));
                return (refute_at(v, chart_point(which, end)), trace);
            }
        }
        let roots = isolate_roots(&h, &lo, &hi);
        trace.push(format!("{} real root(s) of the chart in [-1, 1]", roots.len()));
        // the first root already decides
        if let Some(iv) = roots.into_iter().next() {
            if iv.is_exact() {
                trace.push(format!("exact rational root {}", iv.lo));
                return (refute_at(v, chart_point(which, &iv.lo)), trace);
            }
            let (a, b) = (h.eval(&iv.lo), h.eval(&iv.hi));
            if sign_of(&a) != s0 {
                return (refute_at(v, chart_point(which, &iv.lo)), trace);
            }
            if sign_of(&b) != s0 {
                return (refute_at(v, chart_point(which, &iv.hi)), trace);
            }
            // even multiplicity: V touches zero without changing sign; look
            // for a rational sign change at finer resolution first
            let fine = refine_root(&sf, &iv, 40);
            if fine.is_exact() {
                return (refute_at(v, chart_point(which, &fine.lo)), trace);
            }
            trace.push(format!("root of even multiplicity in ({}, {}]", fine.lo, fine.hi));
            return (
                SphereVerdict::RefutedAtAlgebraicRoot { chart: which, factor: sf, interval: fine },
                trace,
            );
        }
    }
    trace.push("no chart root: V keeps the sign of V(e1) on the circle".into());
    (SphereVerdict::VerifiedByIsolation, trace)
}

/// p ≥ 2: subdivide every face `λ_i = 1` of the cube. Cells are certified
/// by a Taylor enclosure around their centre.
fn subdivide(
    v: &LambdaPoly,
    k: usize,
    s0: i8,
    opts: &SphereOptions,
    mut trace: Vec<String>,
) -> (SphereVerdict, Vec<String>) {
    let mut cells = 0usize;
    let mut deepest = 0usize;
    for face in 0..k {
        // free variables: all but `face`, renumbered 0..k-1
        let images: Vec<LambdaPoly> = (0..k)
            .map(|j| match j.cmp(&face) {
                std::cmp::Ordering::Equal => Poly::one(),
                std::cmp::Ordering::Less => Poly::var(j),
                std::cmp::Ordering::Greater => Poly::var(j - 1),
            })
            .collect();
        let h = v.substitute(&images);
        let lift = |c: &[Rational]| -> Vec<Rational> {
            let mut p = c.to_vec();
            p.insert(face, Rational::one());
            p
        };
        let mut stack = vec![(vec![Rational::zero(); k - 1], Rational::one(), 0usize)];
        while let Some((center, r, depth)) = stack.pop() {
            cells += 1;
            deepest = deepest.max(depth);
            let hc = h.eval(&center);
            if sign_of(&hc) != s0 {
                trace.push(format!("face λ{} = 1: cell centre value {hc}", face + 1));
                return (refute_at(v, lift(&center)), trace);
            }
            if hc.abs() > taylor_bound(&h, &center, &r) {
                continue;
            }
            if depth >= opts.max_depth || cells >= opts.max_cells {
                trace.push(format!(
                    "face λ{} = 1: cell at depth {depth} not certified after {cells} cells",
                    face + 1
                ));
                return (SphereVerdict::UndecidedAtResolution { depth }, trace);
            }
            let half = &r / int(2);
            for mask in 0..(1usize << (k - 1)) {
                let c: Vec<Rational> = center
                    .iter()
                    .enumerate()
                    .map(|(j, x)| if mask >> j & 1 == 1 { x + &half } else { x - &half })
                    .collect();
                stack.push((c, half.clone(), depth + 1));
            }
        }
    }
    trace.push(format!("{cells} cells certified, maximum depth {deepest}"));
    (SphereVerdict::VerifiedBySubdivision { cells }, trace)
}

/// `sum_{α ≠ 0} |a_α| r^{|α|}` where `h(c + t) = sum a_α t^α`.
fn taylor_bound(h: &LambdaPoly, c: &[Rational], r: &Rational) -> Rational {
    let images: Vec<LambdaPoly> = c
        .iter()
        .enumerate()
        .map(|(j, x)| Poly::var(j) + Poly::constant(x.clone()))
        .collect();
    let shifted = h.substitute(&images);
    shifted
        .terms()
        .filter(|(m, _)| **m != Monomial::one())
        .map(|(m, a)| a.abs() * pow(r, m.degree()))
        .sum()
}

fn pow(r: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * r)
}

/// Replay a ray witness: `V(ray)` and its sign relative to `V(e1)`.
pub fn replay_ray(v: &LambdaPoly, ray: &[BigInt]) -> (Rational, i8) {
    let q: Vec<Rational> = ray.iter().cloned().map(Rational::from_integer).collect();
    let val = v.eval(&q);
    let mut e1 = vec![Rational::zero(); ray.len()];
    e1[0] = Rational::one();
    let rel = sign_of(&val) * sign_of(&v.eval(&e1));
    (val, rel)
}
