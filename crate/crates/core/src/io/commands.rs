//! Command dispatch. Every command turns one parsed document into a
//! [`Report`]; `examples` runs the built-in corpus instead.

use std::collections::BTreeMap;

use crate::certificate::{Certificate, Verdict, Witness};
use crate::contact3::{
    self, char_distributions, hyperholomorphic_product, lambda_structure, n_tensor_relations, n_tensors,
    nijenhuis_concomitant, phi_basis_constant, verify_3_structure, verify_almost_contact_with,
    verify_compatible_metric_with, AlmostContact, LambdaPoint, AC3,
};
use crate::error::{Error, Result};
use crate::io::corpus;
use crate::io::frame_file::{FrameDoc, RingSpec};
use crate::io::report::{ExitCode, Report};
use crate::poly::{LambdaPoly, Poly};
use crate::random;
use crate::scalar::{int, Rational};
use crate::sphere::{integrability, nonvanishing_check, reeb_distribution, Generators, SphereOptions};
use crate::structures::{cartan_class, cartan_class_with, AlmostCosym, StructureKind};
use crate::symplectization::{couple_check, is_minus_identity, recursion_operator, ExtendedFrame};
use crate::{Form, LambdaForm};

pub const COMMANDS: &[&str] = &[
    "verify",
    "reeb",
    "classify",
    "class",
    "sphere",
    "taut",
    "round",
    "distribution",
    "symplectize",
    "couple",
    "recursion",
    "ac-verify",
    "ac3-verify",
    "nijenhuis",
    "ntensors",
    "lambda",
    "chardist",
    "hyperholo",
    "examples",
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CommandOptions {
    /// Required ring of the input; a different ring is an error.
    pub ring: Option<RingSpec>,
    pub max_depth: Option<usize>,
    /// Point of 𝕊² for `lambda`; symbolic when absent.
    pub point: Option<[Rational; 3]>,
}

impl CommandOptions {
    fn sphere_options(&self) -> SphereOptions {
        let mut o = SphereOptions::default();
        if let Some(d) = self.max_depth {
            o.max_depth = d;
        }
        o
    }

    fn as_map(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        if let Some(r) = self.ring {
            m.insert("ring".into(), r.to_string());
        }
        if let Some(d) = self.max_depth {
            m.insert("max_depth".into(), d.to_string());
        }
        if let Some(p) = &self.point {
            m.insert("point".into(), p.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","));
        }
        m
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CommandError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CommandError::UnknownCommand(_) | CommandError::Usage(_) => ExitCode::Usage,
            CommandError::Core(e) => ExitCode::for_error(e),
        }
    }
}

pub fn run_command(cmd: &str, docs: &[FrameDoc], opts: &CommandOptions) -> Result<Report, CommandError> {
    if !COMMANDS.contains(&cmd) {
        return Err(CommandError::UnknownCommand(cmd.into()));
    }
    if cmd == "examples" {
        if !docs.is_empty() {
            return Err(CommandError::Usage("`examples` takes no inputs".into()));
        }
        return Ok(examples(opts)?);
    }
    let [doc] = docs else {
        return Err(CommandError::Usage(format!("`{cmd}` takes exactly one input, got {}", docs.len())));
    };
    if let Some(r) = opts.ring {
        if r != doc.ring {
            return Err(Error::RingMismatch(format!("input is over {}, --ring asks for {r}", doc.ring)).into());
        }
    }
    let mut rep = Report::new(cmd, docs, opts.as_map());
    match cmd {
        "verify" => verify(doc, &mut rep)?,
        "reeb" => reeb(doc, &mut rep)?,
        "classify" => classify(doc, &mut rep)?,
        "class" => class(doc, &mut rep)?,
        "sphere" => {
            let g = generators(doc)?;
            let c = g.verify_p_sphere(&opts.sphere_options());
            rep.value("V", &c.volume.poly);
            rep.push(c.to_certificate());
        }
        "taut" | "round" => {
            let g = generators(doc)?;
            let taut = g.is_taut()?;
            let round = g.is_round()?;
            rep.value("V", g.family_volume());
            rep.value("taut", taut.is_verified());
            rep.value("round", round.is_verified());
            rep.push(if cmd == "taut" { taut } else { round });
        }
        "distribution" => distribution(doc, &mut rep)?,
        "symplectize" => symplectize_cmd(doc, &mut rep)?,
        "couple" => couple(doc, &mut rep)?,
        "recursion" => {
            let (w1, w2) = two_omegas(doc)?;
            let j = recursion_operator(&w1, &w2)?;
            rep.value("J", &j);
            rep.push(Certificate::new("J^2 = -I", Verdict::from_bool(is_minus_identity(&j)), "exact composition"));
        }
        "ac-verify" => ac_verify(doc, &mut rep)?,
        "ac3-verify" => ac3_verify(doc, &mut rep)?,
        "nijenhuis" => nijenhuis(doc, &mut rep)?,
        "ntensors" => ntensors(doc, &mut rep)?,
        "lambda" => lambda(doc, opts, &mut rep)?,
        "chardist" => chardist(doc, &mut rep)?,
        "hyperholo" => hyperholo(doc, opts, &mut rep)?,
        _ => unreachable!("checked against COMMANDS"),
    }
    Ok(rep)
}

/// `(eta<i>, Omega<i>)` for `i = 1, 2, ...` while both exist.
fn pairs(doc: &FrameDoc) -> Result<Vec<(Form, Form)>> {
    let mut out = Vec::new();
    for i in 1.. {
        let (e, o) = (format!("eta{i}"), format!("Omega{i}"));
        if !(doc.has(&e) && doc.has(&o)) {
            break;
        }
        out.push((doc.form(&e)?, doc.form(&o)?));
    }
    if out.is_empty() {
        return Err(Error::UnknownName("eta1/Omega1".into()));
    }
    Ok(out)
}

fn structures(doc: &FrameDoc) -> Result<Vec<AlmostCosym<Rational>>> {
    pairs(doc)?.into_iter().map(|(e, o)| AlmostCosym::new(e, o)).collect()
}

fn generators(doc: &FrameDoc) -> Result<Generators> {
    Generators::new(structures(doc)?)
}

fn verify(doc: &FrameDoc, rep: &mut Report) -> Result<()> {
    for (i, (eta, omega)) in pairs(doc)?.into_iter().enumerate() {
        let s = AlmostCosym::new_unchecked(eta, omega)?;
        rep.push(
            Certificate::new(format!("structure {}: eta ^ Omega^n is a volume form", i + 1), Verdict::from_bool(s.volume_nonzero()), "exact wedge")
                .with_witness(Witness::form("eta ^ Omega^n", s.volume_form())),
        );
    }
    Ok(())
}

fn reeb(doc: &FrameDoc, rep: &mut Report) -> Result<()> {
    for (i, s) in structures(doc)?.iter().enumerate() {
        let xi = s.reeb()?;
        rep.value(format!("xi{}", i + 1), &xi);
        rep.push(
            Certificate::new(format!("Reeb field of structure {}", i + 1), Verdict::Verified, "exact solve, re-substituted")
                .with_witness(Witness::vector(format!("xi{}", i + 1), &xi)),
        );
    }
    Ok(())
}

fn classify(doc: &FrameDoc, rep: &mut Report) -> Result<()> {
    for (i, s) in structures(doc)?.iter().enumerate() {
        let c = s.classify();
        rep.value(format!("kind{}", i + 1), c.kind);
        rep.push(
            Certificate::new(format!("structure {} is {}", i + 1, c.kind), Verdict::Verified, "exterior derivatives")
                .with_witness(Witness::form("d eta", &c.d_eta))
                .with_witness(Witness::form("d Omega", &c.d_omega))
                .with_witness(Witness::form("d eta - Omega", &c.contact_defect)),
        );
    }
    Ok(())
}

fn one_forms(doc: &FrameDoc) -> Vec<(String, LambdaForm)> {
    doc.names_of("form")
        .into_iter()
        .filter_map(|n| doc.lambda_form(&n).ok().filter(|f| f.degree() == 1).map(|f| (n, f.clone())))
        .collect()
}

fn class(doc: &FrameDoc, rep: &mut Report) -> Result<()> {
    let forms = one_forms(doc);
    if forms.is_empty() {
        return Err(Error::UnknownName("1-form".into()));
    }
    for (name, f) in forms {
        let (class, witness) = match doc.ring {
            RingSpec::Rational => {
                let r = cartan_class(&doc.form(&name)?)?;
                (r.class, r.eta_wedge.to_string())
            }
            RingSpec::Lambda(_) => {
                let k = doc.ring.nvars();
                let r = cartan_class_with(&f, |c: &LambdaPoly| c.reduce_sphere(k))?;
                (r.class, r.eta_wedge.to_string())
            }
        };
        rep.value(format!("class({name})"), class);
        rep.push(
            Certificate::new(format!("Cartan class of {name} is {class}"), Verdict::Verified, "powers of d eta")
                .with_witness(Witness::form("eta ^ (d eta)^s", witness)),
        );
    }
    Ok(())
}

fn distribution(doc: &FrameDoc, rep: &mut Report) -> Result<()> {
    let g = generators(doc)?;
    let d = reeb_distribution(&g)?;
    for (i, xi) in d.span.iter().enumerate() {
        rep.value(format!("xi{}", i + 1), xi);
    }
    rep.value("rank", d.rank);
    rep.push(Certificate::new("Reeb fields are linearly independent", Verdict::from_bool(d.rank == g.nvars()), "rank"));
    if let Some((t1, t2)) = &d.thetas {
        rep.value("i_xi1(Omega2)", t1);
        rep.value("i_xi2(Omega1)", t2);
    }
    if let Some(k) = d.kernel_identity {
        rep.push(Certificate::new(
            "span(xi1, xi2) = ker i_xi1 Omega2 = ker i_xi2 Omega1",
            Verdict::from_bool(k),
            "exact kernels",
        ));
    }
    if g.p() == 1 {
        rep.push(nonvanishing_check(&g)?);
        if g.frame().dim() == 3 {
            rep.push(integrability(&g)?);
        }
    }
    Ok(())
}

fn symplectize_cmd(doc: &FrameDoc, rep: &mut Report) -> Result<()> {
    let ms = structures(doc)?;
    let ext = ExtendedFrame::new(ms[0].frame())?;
    for (i, s) in ms.iter().enumerate() {
        let w = ext.symplectize(s)?;
        let closed = w.ext_d().is_zero();
        let cosym = s.classify().kind == StructureKind::Cosymplectic;
        if closed != cosym {
            return Err(Error::Inconsistent("d omega = 0 disagrees with the classification".into()));
        }
        let top = w.power(ext.frame().dim() / 2);
        rep.value(format!("omega{}", i + 1), &w);
        rep.push(
            Certificate::new(format!("omega{} is symplectic", i + 1), Verdict::from_bool(closed && !top.is_zero()), "d omega and top power")
                .with_witness(Witness::form("d omega", w.ext_d())),
        );
    }
    if ms.len() >= 2 && ms[0].dim() == 3 {
        let [r11, r22, r12] = ext.product_residuals(&ms[0], &ms[1], 1)?;
        let ok = r11.is_zero() && r22.is_zero() && r12.is_zero();
        rep.push(
            Certificate::new(
                "omega_i ^ omega_i = 2 dt ^ eta_i ^ Omega_i, omega1 ^ omega2 = dt ^ (eta1 ^ Omega2 + eta2 ^ Omega1)",
                Verdict::from_bool(ok),
                "exact wedge",
            )
            .with_witness(Witness::form("cross residual", &r12)),
        );
        let [_, _, r12_doubled] = ext.product_residuals(&ms[0], &ms[1], 2)?;
        rep.value("cross residual with factor 2", r12_doubled);
    }
    Ok(())
}

/// `omega1`, `omega2` when present, otherwise the symplectizations of the
/// first two pairs.
fn two_omegas(doc: &FrameDoc) -> Result<(Form, Form)> {
    if doc.has("omega1") && doc.has("omega2") {
        return Ok((doc.form("omega1")?, doc.form("omega2")?));
    }
    let ms = structures(doc)?;
    if ms.len() < 2 {
        return Err(Error::UnknownName("omega1/omega2 or two eta/Omega pairs".into()));
    }
    let ext = ExtendedFrame::new(ms[0].frame())?;
    Ok((ext.symplectize(&ms[0])?, ext.symplectize(&ms[1])?))
}

fn couple(doc: &FrameDoc, rep: &mut Report) -> Result<()> {
    let (w1, w2) = two_omegas(doc)?;
    let r = couple_check(&w1, &w2)?;
    rep.value("omega1^omega2", &r.w12);
    rep.value("omega1^omega1", &r.w1_sq);
    rep.value("omega2^omega2", &r.w2_sq);
    if let Some(c) = r.couple {
        rep.push(Certificate::new("symplectic couple", Verdict::from_bool(c), "orthogonality and positive squares"));
    }
    let mut c = Certificate::new("conformal", Verdict::from_bool(r.conformal), "pencil power identity");
    if let Some(w) = r.conformal_witness {
        c = c.with_witness(w);
    }
    rep.push(c);
    Ok(())
}

/// Structures `phi<a>`, `xi<a>`, `eta<a>` for `a = 1, 2, ...`.
fn contact_triples(doc: &FrameDoc) -> Result<Vec<AlmostContact<LambdaPoly>>> {
    let mut out = Vec::new();
    for a in 1.. {
        let (p, x, e) = (format!("phi{a}"), format!("xi{a}"), format!("eta{a}"));
        if !(doc.has(&p) && doc.has(&x) && doc.has(&e)) {
            break;
        }
        let s = AlmostContact::new_unchecked(
            doc.lambda_endo(&p)?.clone(),
            doc.lambda_vector(&x)?.clone(),
            doc.lambda_form(&e)?.clone(),
        )?;
        out.push(s);
    }
    if out.is_empty() {
        return Err(Error::UnknownName("phi1/xi1/eta1".into()));
    }
    Ok(out)
}

fn reducer(ring: RingSpec) -> impl Fn(&LambdaPoly) -> LambdaPoly + Copy {
    let k = ring.nvars();
    move |c: &LambdaPoly| if k == 0 { c.clone() } else { c.reduce_sphere(k) }
}

fn ac_verify(doc: &FrameDoc, rep: &mut Report) -> Result<()> {
    let red = reducer(doc.ring);
    for (a, s) in contact_triples(doc)?.iter().enumerate() {
        let mut c = verify_almost_contact_with(s.phi(), s.xi(), s.eta(), red)?;
        c.claim = format!("structure {} is almost contact", a + 1);
        rep.push(c);
        if let Some(g) = &doc.metric {
            let mut c = verify_compatible_metric_with(g, s, red)?;
            c.claim = format!("metric is compatible with structure {}", a + 1);
            rep.push(c);
        }
    }
    Ok(())
}

fn rational_triple(doc: &FrameDoc) -> Result<[AlmostContact<Rational>; 3]> {
    let v = (1..=3)
        .map(|a| {
            AlmostContact::new_unchecked(doc.endo(&format!("phi{a}"))?, doc.vector(&format!("xi{a}"))?, doc.form(&format!("eta{a}"))?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(v.try_into().expect("three structures"))
}

fn ac3(doc: &FrameDoc) -> Result<AC3> {
    AC3::new(rational_triple(doc)?, doc.metric.clone())
}

fn ac3_verify(doc: &FrameDoc, rep: &mut Report) -> Result<()> {
    let s = rational_triple(doc)?;
    for (a, st) in s.iter().enumerate() {
        let mut c = st.verify()?;
        c.claim = format!("structure {} is almost contact", a + 1);
        rep.push(c);
    }
    rep.push(verify_3_structure(&s)?);
    if let Some(g) = &doc.metric {
        for (a, st) in s.iter().enumerate() {
            let mut c = contact3::verify_compatible_metric(g, st)?;
            c.claim = format!("metric is compatible with structure {}", a + 1);
            rep.push(c);
        }
        if let Ok(t) = AC3::new(s.clone(), Some(g.clone())) {
            rep.push(Certificate::new("xi1, xi2, xi3 are orthonormal", Verdict::from_bool(t.reebs_orthonormal()?), "metric"));
        }
    }
    Ok(())
}

fn nijenhuis(doc: &FrameDoc, rep: &mut Report) -> Result<()> {
    let (p, q) = if doc.has("P") {
        let p = doc.endo("P")?;
        let q = if doc.has("Q") { doc.endo("Q")? } else { p.clone() };
        (p, q)
    } else {
        let names = doc.names_of("endo");
        let first = names.first().ok_or_else(|| Error::UnknownName("endo P".into()))?;
        let second = names.get(1).unwrap_or(first);
        (doc.endo(first)?, doc.endo(second)?)
    };
    let t = nijenhuis_concomitant(&p, &q)?;
    rep.value("[P,Q]", &t);
    rep.push(Certificate::new("[P,Q] = 0", Verdict::from_bool(t.is_zero()), "bracket expansion on basis pairs"));
    Ok(())
}

fn ntensors(doc: &FrameDoc, rep: &mut Report) -> Result<()> {
    let t = ac3(doc)?;
    for a in 0..3 {
        for b in a..3 {
            let n = n_tensors(&t, a, b)?;
            let flags = n.zero_flags();
            for (i, name) in ["N1", "N2", "N3", "N4"].iter().enumerate() {
                if !flags[i] {
                    let v = match i {
                        0 => n.n1.to_string(),
                        1 => n.n2.to_string(),
                        2 => n.n3.to_string(),
                        _ => n.n4.to_string(),
                    };
                    rep.value(format!("{name}({},{})", a + 1, b + 1), v);
                }
            }
            rep.push(
                Certificate::new(format!("N tensors of ({},{}) vanish", a + 1, b + 1), Verdict::from_bool(n.all_zero()), "exact tensors")
                    .with_witness(Witness::note(format!("zero flags {flags:?}"))),
            );
        }
    }
    for a in 0..3 {
        let rel = n_tensor_relations(&t, a)?;
        rep.push(Certificate::new(
            format!("N(i)_({0},{0}) = 2 N(i) of phi{0}, i = 1..4", a + 1),
            Verdict::Verified,
            "direct single-structure tensors",
        ));
        rep.value(
            format!("relation factors structure {}", a + 1),
            rel.iter()
                .map(|r| format!("N{}: half-factor {}, trivially zero {}", r.index, r.stated_factor_holds, r.trivially_zero))
                .collect::<Vec<_>>()
                .join("; "),
        );
    }
    Ok(())
}

fn lambda(doc: &FrameDoc, opts: &CommandOptions, rep: &mut Report) -> Result<()> {
    let t = ac3(doc)?;
    let point = opts.point.clone().map_or(LambdaPoint::Symbolic, LambdaPoint::Rational);
    let s = lambda_structure(&t, &point)?;
    rep.value("phi_lambda", s.structure.phi());
    rep.value("xi_lambda", s.structure.xi());
    rep.value("eta_lambda", s.structure.eta());
    rep.push(s.almost_contact.clone());
    if let Some(c) = &s.compatible {
        rep.push(c.clone());
    }
    if let Some(w) = &s.omega {
        rep.value("Omega_lambda", w);
    }
    if point == LambdaPoint::Symbolic && t.metric().is_some() {
        if let Ok(r) = phi_basis_constant(&t) {
            rep.value("phi-basis value", &r.value);
        }
    }
    Ok(())
}

fn chardist(doc: &FrameDoc, rep: &mut Report) -> Result<()> {
    let t = ac3(doc)?;
    let d = char_distributions(&t)?;
    rep.value("classes", format!("{:?}", d.classes));
    for (a, c) in d.c.iter().enumerate() {
        rep.value(format!("dim C{}", a + 1), c.len());
    }
    rep.value("dim E", d.e.len());
    rep.value("dim H", d.h.len());
    if let Some(r) = d.rank {
        rep.value("rank", r);
    }
    if let Some(ok) = d.e_dimension_matches() {
        rep.push(Certificate::new("dim E agrees with the rank", Verdict::from_bool(ok), "exact kernels"));
    }
    let xb = &d.xi_brackets;
    let mut c = Certificate::new("[xi_a, xi_b] = c xi_c for a common c", Verdict::from_bool(xb.holds), "bracket table");
    for ((a, b, _), v) in contact3::EVEN_PERMUTATIONS.iter().zip(&xb.brackets) {
        c = c.with_witness(Witness::vector(format!("[xi{}, xi{}]", a + 1, b + 1), v));
    }
    rep.push(c);
    Ok(())
}

fn hyperholo(doc: &FrameDoc, opts: &CommandOptions, rep: &mut Report) -> Result<()> {
    let omegas = [doc.form("omega1")?, doc.form("omega2")?, doc.form("omega3")?];
    let g = hyperholomorphic_product(&omegas)?;
    rep.push(Certificate::new("musical maps anticommute", Verdict::Verified, "exact matrices"));
    for (i, m) in g.members().iter().enumerate() {
        rep.value(format!("kind{}", i + 1), m.classify().kind);
        rep.value(format!("Omega{}", i + 1), m.omega());
    }
    let s = g.verify_p_sphere(&opts.sphere_options());
    rep.value("V", &s.volume.poly);
    rep.push(s.to_certificate());
    rep.push(g.is_taut()?);
    rep.push(g.is_round()?);
    Ok(())
}

// ------------------------------------------------------------ examples

fn row(rep: &mut Report, label: &str, ok: bool, detail: impl Into<String>) {
    rep.push(Certificate::new(label, Verdict::from_bool(ok), "built-in corpus").with_witness(Witness::note(detail)));
}

fn gens(d: FrameDoc) -> Result<Generators> {
    generators(&d)
}

/// Each row compares a computed outcome with the expected one.
fn examples(opts: &CommandOptions) -> Result<Report> {
    let mut rep = Report::new("examples", &[], opts.as_map());
    let so = opts.sphere_options();
    let l = |i| Poly::<Rational>::var(i);

    let r7 = gens(corpus::r7_pair())?;
    let v = r7.family_volume().poly;
    let a = l(0) * l(0) - l(1) * l(1);
    let expected = (a.clone() * a + l(0) * l(0) * l(1) * l(1)).scale(&int(6));
    row(&mut rep, "r7_pair: V = 6((l1^2 - l2^2)^2 + l1^2 l2^2)", v == expected, v.to_string());
    let sv = r7.verify_p_sphere(&so);
    row(&mut rep, "r7_pair: circle", sv.is_verified(), sv.verdict.name());
    row(&mut rep, "r7_pair: not taut", !r7.is_taut()?.is_verified(), "");
    let round = r7.is_round()?;
    row(&mut rep, "r7_pair: not round", !round.is_verified(), round.witnesses.first().map(|w| w.to_string()).unwrap_or_default());

    let t3 = gens(corpus::t3())?;
    let sv = t3.verify_p_sphere(&so);
    row(&mut rep, "t3: V = l1^2 + l2^2 + l3^2", t3.family_volume().poly == Poly::sphere_norm(3), t3.family_volume().to_string());
    row(&mut rep, "t3: verified exactly", sv.verdict.name() == "verified_exact", sv.verdict.name());
    row(&mut rep, "t3: taut and round", t3.is_taut()?.is_verified() && t3.is_round()?.is_verified(), "");

    let h = gens(corpus::heisenberg(int(1)))?;
    let kinds: Vec<_> = h.members().iter().map(|m| m.classify().kind).collect();
    row(&mut rep, "heisenberg: both cosymplectic", kinds.iter().all(|k| *k == StructureKind::Cosymplectic), format!("{kinds:?}"));
    row(&mut rep, "heisenberg: taut and round", h.is_taut()?.is_verified() && h.is_round()?.is_verified(), "");
    row(&mut rep, "heisenberg: Reeb distribution not integrable", !integrability(&h)?.is_verified(), "");

    let mut parity = 0;
    for seed in 0..100 {
        let g = random::pair_dim5(&mut random::rng(seed));
        if g.verify_p_sphere(&so).verdict.name() == "refuted_with_witness" {
            parity += 1;
        }
    }
    row(&mut rep, "dim5_random: 100 pairs refuted by parity", parity == 100, format!("{parity}/100"));

    for (name, doc, taut, round) in [
        ("t7_pair1", corpus::t7_pair1(), true, false),
        ("t7_pair1_fixed", corpus::t7_pair1_fixed(), true, false),
        ("t7_pair2", corpus::t7_pair2(), false, true),
    ] {
        let g = gens(doc)?;
        let (t, r) = (g.is_taut()?.is_verified(), g.is_round()?.is_verified());
        row(
            &mut rep,
            &format!("{name}: taut = {taut}, round = {round}"),
            t == taut && r == round,
            format!("computed taut = {t}, round = {r}, V = {}", g.family_volume()),
        );
    }

    let mut agree = 0;
    let mut total = 0;
    let mut circles = vec![h.clone(), Generators::new(t3.members()[..2].to_vec())?];
    let mut rng = random::rng(3);
    for _ in 0..50 {
        circles.push(random::triple_circle(&mut rng)?);
    }
    for g in &circles {
        total += 1;
        if g.is_taut()?.is_verified() == g.is_round()?.is_verified() {
            agree += 1;
        }
    }
    row(&mut rep, "3-dim circles: taut iff round", agree == total, format!("{agree}/{total}"));

    let ext = ExtendedFrame::new(h.frame())?;
    let (w1, w2) = (ext.symplectize(&h.members()[0])?, ext.symplectize(&h.members()[1])?);
    let c = couple_check(&w1, &w2)?;
    row(&mut rep, "heisenberg: conformal couple", c.conformal && c.orthogonal, "");
    row(&mut rep, "heisenberg: J^2 = -I", is_minus_identity(&recursion_operator(&w1, &w2)?), "");
    let ext7 = ExtendedFrame::new(r7.frame())?;
    let c7 = couple_check(&ext7.symplectize(&r7.members()[0])?, &ext7.symplectize(&r7.members()[1])?)?;
    row(&mut rep, "r7_pair: not conformal", !c7.conformal, c7.conformal_witness.as_ref().map(|w| w.to_string()).unwrap_or_default());

    let mut doubled = 0;
    let mut single = 0;
    let mut rng = random::rng(8);
    for _ in 0..50 {
        let g = random::pair(&mut rng, 3);
        let ext = ExtendedFrame::new(g.frame())?;
        let (a, b) = (&g.members()[0], &g.members()[1]);
        if ext.product_residuals(a, b, 2)?.iter().all(|r| r.is_zero()) {
            doubled += 1;
        }
        if ext.product_residuals(a, b, 1)?.iter().all(|r| r.is_zero()) {
            single += 1;
        }
    }
    row(
        &mut rep,
        "random 3-dim pairs: omega1 ^ omega2 = 2 dt ^ (eta1 ^ Omega2 + eta2 ^ Omega1)",
        doubled == 50,
        format!("{doubled}/50 with factor 2, {single}/50 with factor 1"),
    );

    let lie7 = ac3(&corpus::lie7())?;
    let classes = lie7.structures().iter().map(|s| cartan_class(s.eta()).map(|r| r.class)).collect::<Result<Vec<_>>>()?;
    row(&mut rep, "lie7: classes (1, 1, 5)", classes == [1, 1, 5], format!("{classes:?}"));
    let sym = lambda_structure(&lie7, &LambdaPoint::Symbolic)?;
    row(&mut rep, "lie7: symbolic lambda structure", sym.is_verified(), "");

    let flat = ac3(&corpus::t7_quaternionic())?;
    let mut hyper_normal = true;
    for a in 0..3 {
        for b in a..3 {
            hyper_normal &= n_tensors(&flat, a, b)?.all_zero();
        }
    }
    row(&mut rep, "t7_quaternionic: all N tensors vanish", hyper_normal, "");
    let fs = flat.induced_sphere()?;
    row(
        &mut rep,
        "t7_quaternionic: exact 2-sphere, taut and round",
        fs.verify_p_sphere(&so).verdict.name() == "verified_exact" && fs.is_taut()?.is_verified() && fs.is_round()?.is_verified(),
        "",
    );
    let pb = phi_basis_constant(&flat)?;
    row(
        &mut rep,
        "t7_quaternionic: phi-basis value is a nonzero constant",
        pb.constant.is_some(),
        format!("value {}, ratio to -n: {}", pb.value, pb.ratio_to_minus_n.map(|r| r.to_string()).unwrap_or_default()),
    );

    let hk = corpus::hyperkahler_r4();
    let g = hyperholomorphic_product(&[hk.form("omega1")?, hk.form("omega2")?, hk.form("omega3")?])?;
    row(&mut rep, "hyperkahler_r4: product is a 2-sphere", g.verify_p_sphere(&so).is_verified(), "");

    let mut rng = random::rng(12);
    let mut kernel_ok = 0;
    for k in 0..20 {
        let f = random::frame(&mut rng, 3 + k % 6);
        let a = random::form(&mut rng, &f, 1, 0.6);
        let b = random::form(&mut rng, &f, 2, 0.5);
        let dd = a.ext_d().ext_d().is_zero() && b.ext_d().ext_d().is_zero();
        let leibniz = a.wedge(&b)?.ext_d() == (&a.ext_d().wedge(&b)? - &a.wedge(&b.ext_d())?);
        if dd && leibniz {
            kernel_ok += 1;
        }
    }
    row(&mut rep, "random frames: d^2 = 0 and Leibniz", kernel_ok == 20, format!("{kernel_ok}/20"));
    Ok(rep)
}

/// A plain table of the `examples` rows.
pub fn examples_table(rep: &Report) -> String {
    let mut out = String::new();
    for c in &rep.certificates {
        let detail = c.witnesses.iter().find_map(|w| match w {
            Witness::Note { text } if !text.is_empty() => Some(text.as_str()),
            _ => None,
        });
        let mark = if c.is_verified() { "PASS" } else { "FAIL" };
        match detail {
            Some(d) => out.push_str(&format!("{mark}  {}  ({d})\n", c.claim)),
            None => out.push_str(&format!("{mark}  {}\n", c.claim)),
        }
    }
    out
}
