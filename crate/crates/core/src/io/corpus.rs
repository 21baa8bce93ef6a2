//! Built-in example documents. Pairs are stored as `eta<i>`/`Omega<i>`,
//! 3-structures as `phi<a>`/`xi<a>`/`eta<a>` plus a metric, hyperkähler
//! triples as `omega<a>`.

use crate::contact3::{AlmostContact, Metric, EVEN_PERMUTATIONS, AC3};
use crate::error::{Error, Result};
use crate::exterior::{EndoField, Frame, FrameRef, KForm, VectorField};
use crate::io::frame_file::FrameDoc;
use crate::random;
use crate::scalar::{int, Rational};
use crate::sphere::Generators;
use crate::Form;

/// Names accepted by [`builtin`]. Parameterised entries also accept
/// `heisenberg(<q>)` and `dim5_random(<seed>)`.
pub const NAMES: &[&str] = &[
    "t3",
    "heisenberg",
    "r7_pair",
    "t7_pair1",
    "t7_pair1_fixed",
    "t7_pair2",
    "dim5_random",
    "lie7",
    "t7_quaternionic",
    "hyperkahler_r4",
];

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `sum c * dx_i ^ dx_j` with 1-based indices.
fn two_form(f: &FrameRef, terms: &[(usize, usize, i64)]) -> Form {
    KForm::from_terms(f, 2, terms.iter().map(|&(i, j, c)| (vec![i - 1, j - 1], int(c))).collect::<Vec<_>>())
        .expect("valid blade")
}

fn one_form(f: &FrameRef, i: usize, c: i64) -> Form {
    KForm::basis(f, i - 1).expect("index").scale(&int(c))
}

fn pairs_doc(f: &FrameRef, name: &str, pairs: &[(Form, Form)]) -> FrameDoc {
    let mut d = FrameDoc::new(f).named(name);
    for (i, (eta, omega)) in pairs.iter().enumerate() {
        d = d.with_form(&format!("eta{}", i + 1), eta).with_form(&format!("Omega{}", i + 1), omega);
    }
    d
}

/// `[e1, e2] = γ e3`.
pub fn heisenberg_frame(gamma: Rational) -> FrameRef {
    Frame::new(names("e", 3), &[(0, 1, vec![(2, gamma)])]).expect("nilpotent brackets satisfy Jacobi")
}

/// `X1..X4, xi1, xi2, xi3` with `[X1, X4] = xi3` and `[xi1, xi2] = xi3`.
pub fn lie7_frame() -> FrameRef {
    let n = ["X1", "X2", "X3", "X4", "xi1", "xi2", "xi3"].map(String::from).to_vec();
    Frame::new(n, &[(0, 3, vec![(6, int(1))]), (4, 5, vec![(6, int(1))])]).expect("Jacobi")
}

pub fn flat7_frame() -> FrameRef {
    Frame::abelian_named(["X1", "X2", "X3", "X4", "xi1", "xi2", "xi3"].map(String::from).to_vec())
}

/// On a 7-dimensional frame `X1..X4, ξ1, ξ2, ξ3`: `φ_α` acts on the `X`'s by
/// left multiplication by `i, j, k` and on the `ξ`'s by
/// `φ_α ξ_β = ε_{αβγ} ξ_γ`; identity metric.
pub fn quaternionic_structure(frame: &FrameRef) -> Result<AC3> {
    if frame.dim() != 7 {
        return Err(Error::Dimension(format!("quaternionic model needs dimension 7, got {}", frame.dim())));
    }
    let v = |i: usize, s: i64| VectorField::basis(frame, i).map(|b| b.scale(&int(s)));
    let tables: [[(usize, i64); 4]; 3] = [
        [(1, 1), (0, -1), (3, 1), (2, -1)],
        [(2, 1), (3, -1), (0, -1), (1, 1)],
        [(3, 1), (2, 1), (1, -1), (0, -1)],
    ];
    let make = |a: usize| -> Result<AlmostContact<Rational>> {
        let mut images = tables[a].iter().map(|&(i, s)| v(i, s)).collect::<Result<Vec<_>>>()?;
        for b in 0..3 {
            images.push(if a == b {
                VectorField::zero(frame)
            } else {
                let c = 3 - a - b;
                v(4 + c, if EVEN_PERMUTATIONS.contains(&(a, b, c)) { 1 } else { -1 })?
            });
        }
        AlmostContact::new(EndoField::from_images(frame, &images)?, v(4 + a, 1)?, KForm::basis(frame, 4 + a)?)
    };
    AC3::new([make(0)?, make(1)?, make(2)?], Some(Metric::identity(7)))
}

/// Document for a 3-structure.
pub fn ac3_doc(name: &str, t: &AC3) -> FrameDoc {
    let mut d = FrameDoc::new(t.frame()).named(name);
    for (a, s) in t.structures().iter().enumerate() {
        let k = a + 1;
        d = d.with_endo(&format!("phi{k}"), s.phi()).with_vector(&format!("xi{k}"), s.xi()).with_form(&format!("eta{k}"), s.eta());
    }
    match t.metric() {
        Some(g) => d.with_metric(g.clone()),
        None => d,
    }
}

pub fn t3() -> FrameDoc {
    let f = Frame::abelian(3);
    let e = |i| one_form(&f, i, 1);
    pairs_doc(
        &f,
        "t3",
        &[
            (e(1), e(2).wedge(&e(3)).unwrap()),
            (e(2), e(3).wedge(&e(1)).unwrap()),
            (e(3), e(1).wedge(&e(2)).unwrap()),
        ],
    )
}

/// Taut cosymplectic circle `(η1, η2∧η3), (η2, η3∧η1)` on the Heisenberg
/// frame.
pub fn heisenberg(gamma: Rational) -> FrameDoc {
    let f = heisenberg_frame(gamma.clone());
    let e = |i| one_form(&f, i, 1);
    pairs_doc(
        &f,
        "heisenberg",
        &[(e(1), e(2).wedge(&e(3)).unwrap()), (e(2), e(3).wedge(&e(1)).unwrap())],
    )
}

fn x7() -> FrameRef {
    Frame::abelian_named(names("x", 7))
}

fn omega_std(f: &FrameRef) -> Form {
    two_form(f, &[(1, 2, 1), (3, 4, 1), (5, 6, 1)])
}

pub fn r7_pair() -> FrameDoc {
    let f = x7();
    let omega2 = two_form(&f, &[(1, 3, 1), (2, 3, 1), (4, 7, 1), (5, 7, 1), (2, 5, -1)]);
    pairs_doc(&f, "r7_pair", &[(one_form(&f, 7, 1), omega_std(&f)), (one_form(&f, 6, 1), omega2)])
}

fn t7_pair1_omega2(f: &FrameRef) -> Form {
    // dx5∧dx4 - dx3∧dx6 + (dx1 + dx3)∧dx7
    two_form(f, &[(4, 5, -1), (3, 6, -1), (1, 7, 1), (3, 7, 1)])
}

/// The first T⁷ pair with `η2 = dx2`. Its volume polynomial vanishes on the
/// circle.
pub fn t7_pair1() -> FrameDoc {
    let f = x7();
    pairs_doc(&f, "t7_pair1", &[(one_form(&f, 7, 1), omega_std(&f)), (one_form(&f, 2, 1), t7_pair1_omega2(&f))])
}

/// The first T⁷ pair with `η2 = -dx2`: taut, not round.
pub fn t7_pair1_fixed() -> FrameDoc {
    let f = x7();
    pairs_doc(
        &f,
        "t7_pair1_fixed",
        &[(one_form(&f, 7, 1), omega_std(&f)), (one_form(&f, 2, -1), t7_pair1_omega2(&f))],
    )
}

/// Round, not taut.
pub fn t7_pair2() -> FrameDoc {
    let f = x7();
    // dx3∧(dx5 + dx6) + dx4∧dx5 + (dx1 + dx3)∧dx6 + dx1∧dx7
    let omega2 = two_form(&f, &[(3, 5, 1), (3, 6, 1), (4, 5, 1), (1, 6, 1), (3, 6, 1), (1, 7, 1)]);
    pairs_doc(&f, "t7_pair2", &[(one_form(&f, 7, 1), omega_std(&f)), (one_form(&f, 2, -1), omega2)])
}

pub fn dim5_random(seed: u64) -> FrameDoc {
    let g = random::pair_dim5(&mut random::rng(seed));
    generators_doc("dim5_random", &g)
}

pub fn generators_doc(name: &str, g: &Generators) -> FrameDoc {
    let pairs: Vec<(Form, Form)> = g.members().iter().map(|m| (m.eta().clone(), m.omega().clone())).collect();
    pairs_doc(g.frame(), name, &pairs)
}

pub fn lie7() -> FrameDoc {
    ac3_doc("lie7", &quaternionic_structure(&lie7_frame()).expect("lie7 3-structure"))
}

pub fn t7_quaternionic() -> FrameDoc {
    ac3_doc("t7_quaternionic", &quaternionic_structure(&flat7_frame()).expect("flat 3-structure"))
}

/// Standard hyperkähler triple on ℝ⁴.
pub fn hyperkahler_r4() -> FrameDoc {
    let f = Frame::abelian_named(names("x", 4));
    FrameDoc::new(&f)
        .named("hyperkahler_r4")
        .with_form("omega1", &two_form(&f, &[(1, 2, 1), (3, 4, 1)]))
        .with_form("omega2", &two_form(&f, &[(1, 3, 1), (2, 4, -1)]))
        .with_form("omega3", &two_form(&f, &[(1, 4, 1), (2, 3, 1)]))
}

fn parse_arg(name: &str, prefix: &str) -> Option<String> {
    name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')').map(str::to_string)
}

/// Look up a built-in document by name, with an optional `.frame` suffix.
pub fn builtin(name: &str) -> Option<FrameDoc> {
    let name = name.strip_suffix(".frame").unwrap_or(name);
    if let Some(q) = parse_arg(name, "heisenberg") {
        return crate::scalar::parse_rational(&q).ok().map(heisenberg);
    }
    if let Some(s) = parse_arg(name, "dim5_random") {
        return s.parse().ok().map(dim5_random);
    }
    Some(match name {
        "t3" => t3(),
        "heisenberg" => heisenberg(int(1)),
        "r7_pair" => r7_pair(),
        "t7_pair1" => t7_pair1(),
        "t7_pair1_fixed" => t7_pair1_fixed(),
        "t7_pair2" => t7_pair2(),
        "dim5_random" => dim5_random(0),
        "lie7" => lie7(),
        "t7_quaternionic" => t7_quaternionic(),
        "hyperkahler_r4" => hyperkahler_r4(),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::frame_file::{parse_frame_file, serialize};

    #[test]
    fn every_builtin_round_trips() {
        for n in NAMES {
            let d = builtin(n).unwrap();
            let text = serialize(&d);
            assert_eq!(parse_frame_file(&text).unwrap(), d, "{n}\n{text}");
        }
    }

    #[test]
    fn lie7_text() {
        let d = builtin("lie7.frame").unwrap();
        assert_eq!(d.frame.brackets().len(), 2);
        assert!(serialize(&d).contains("bracket X1 X4 = xi3"));
        assert!(builtin("heisenberg(1/2)").is_some());
        assert!(builtin("nope").is_none());
    }
}
