//! Line-oriented text format for frames and the tensors living on them.
//!
//! ```text
//! # Heisenberg algebra
//! name heisenberg
//! ring rational            # or lambda:<p>, variables l1..l{p+1}
//! basis e1 e2 e3           # or: dim 3
//! bracket e1 e2 = e3
//! form eta1 = de1
//! form Omega1 = de2^de3
//! form zero:2 = 0
//! vector xi = e1 - 1/2*e3
//! endo phi = e1 -> e2, e2 -> -e1
//! metric identity          # or: metric diag 1 2 3, or one `metric row` per row
//! ```

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::contact3::Metric;
use crate::error::{Error, Result};
use crate::exterior::{BracketSpec, EndoField, Frame, FrameRef, KForm, VectorField};
use crate::linalg::Matrix;
use crate::poly::{LambdaPoly, Monomial, Poly};
use crate::scalar::{parse_rational, Rational};
use crate::{Endo, Form, LambdaEndo, LambdaForm, LambdaVector, Vector};

/// Coefficient ring of a document. `Lambda(p)` uses `l1..l{p+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Rational,
    Lambda(usize),
}

impl RingSpec {
    pub fn nvars(self) -> usize {
        match self {
            RingSpec::Rational => 0,
            RingSpec::Lambda(p) => p + 1,
        }
    }

    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        match text.trim() {
            "rational" => Ok(RingSpec::Rational),
            t => {
                let p = t
                    .strip_prefix("lambda:")
                    .ok_or_else(|| format!("unknown ring `{t}`, expected rational or lambda:<p>"))?;
                p.parse::<usize>()
                    .ok()
                    .filter(|p| *p >= 1)
                    .map(RingSpec::Lambda)
                    .ok_or_else(|| format!("invalid sphere dimension `{p}`"))
            }
        }
    }
}

impl std::fmt::Display for RingSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RingSpec::Rational => f.write_str("rational"),
            RingSpec::Lambda(p) => write!(f, "lambda:{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Tensor {
    Form(LambdaForm),
    Vector(LambdaVector),
    Endo(LambdaEndo),
}

/// A parsed document: a frame plus named tensors in file order.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameDoc {
    pub name: Option<String>,
    pub ring: RingSpec,
    pub frame: FrameRef,
    pub tensors: Vec<(String, Tensor)>,
    pub metric: Option<Metric>,
}

fn constant_of(p: &LambdaPoly, name: &str) -> Result<Rational> {
    if p.is_constant() {
        Ok(p.constant_term())
    } else {
        Err(Error::RingMismatch(format!("`{name}` has non-constant coefficient {p}")))
    }
}

impl FrameDoc {
    pub fn new(frame: &FrameRef) -> Self {
        FrameDoc { name: None, ring: RingSpec::Rational, frame: frame.clone(), tensors: Vec::new(), metric: None }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn with_ring(mut self, ring: RingSpec) -> Self {
        self.ring = ring;
        self
    }

    fn insert(&mut self, name: &str, t: Tensor) {
        match self.tensors.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = t,
            None => self.tensors.push((name.to_string(), t)),
        }
    }

    pub fn with_form(mut self, name: &str, f: &Form) -> Self {
        self.insert(name, Tensor::Form(f.lift()));
        self
    }

    pub fn with_lambda_form(mut self, name: &str, f: &LambdaForm) -> Self {
        self.insert(name, Tensor::Form(f.clone()));
        self
    }

    pub fn with_vector(mut self, name: &str, v: &Vector) -> Self {
        self.insert(name, Tensor::Vector(v.lift()));
        self
    }

    pub fn with_endo(mut self, name: &str, e: &Endo) -> Self {
        self.insert(name, Tensor::Endo(e.lift()));
        self
    }

    pub fn with_metric(mut self, g: Metric) -> Self {
        self.metric = Some(g);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Tensor> {
        self.tensors.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn has(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn lambda_form(&self, name: &str) -> Result<&LambdaForm> {
        match self.get(name) {
            Some(Tensor::Form(f)) => Ok(f),
            _ => Err(Error::UnknownName(format!("form {name}"))),
        }
    }

    pub fn lambda_vector(&self, name: &str) -> Result<&LambdaVector> {
        match self.get(name) {
            Some(Tensor::Vector(v)) => Ok(v),
            _ => Err(Error::UnknownName(format!("vector {name}"))),
        }
    }

    pub fn lambda_endo(&self, name: &str) -> Result<&LambdaEndo> {
        match self.get(name) {
            Some(Tensor::Endo(e)) => Ok(e),
            _ => Err(Error::UnknownName(format!("endo {name}"))),
        }
    }

    pub fn form(&self, name: &str) -> Result<Form> {
        let f = self.lambda_form(name)?;
        let terms = f
            .terms()
            .map(|(b, c)| Ok((b.indices().to_vec(), constant_of(c, name)?)))
            .collect::<Result<Vec<_>>>()?;
        KForm::from_terms(&self.frame, f.degree(), terms)
    }

    pub fn vector(&self, name: &str) -> Result<Vector> {
        let v = self.lambda_vector(name)?;
        let c = v.coeffs().iter().map(|c| constant_of(c, name)).collect::<Result<Vec<_>>>()?;
        VectorField::from_coeffs(&self.frame, c)
    }

    pub fn endo(&self, name: &str) -> Result<Endo> {
        let e = self.lambda_endo(name)?;
        let n = self.frame.dim();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| constant_of(e.entry(i, j), name)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        EndoField::from_matrix(&self.frame, Matrix::from_rows(rows))
    }

    /// Names of all tensors of the given kind, in file order.
    pub fn names_of(&self, kind: &str) -> Vec<String> {
        self.tensors
            .iter()
            .filter(|(_, t)| {
                matches!((kind, t), ("form", Tensor::Form(_)) | ("vector", Tensor::Vector(_)) | ("endo", Tensor::Endo(_)))
            })
            .map(|(n, _)| n.clone())
            .collect()
    }
}

// ---------------------------------------------------------------- lexing

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn lex(line: &str, line_no: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token { tok: Tok::Num(chars[start..i].iter().collect()), col });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), col });
        } else {
            let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
            let sym = if two == "->" {
                "->"
            } else {
                match c {
                    '+' => "+",
                    '-' => "-",
                    '*' => "*",
                    '/' => "/",
                    '^' => "^",
                    '(' => "(",
                    ')' => ")",
                    ',' => ",",
                    '=' => "=",
                    ':' => ":",
                    _ => return Err(perr(line_no, col, format!("unexpected character `{c}`"))),
                }
            };
            i += sym.len();
            out.push(Token { tok: Tok::Sym(sym), col });
        }
    }
    Ok(out)
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn lambda_index(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('l')?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) || rest.starts_with('0') {
        return None;
    }
    rest.parse::<usize>().ok().map(|k| k - 1)
}

// ---------------------------------------------------------------- parsing

/// What a basis symbol denotes inside an expression.
#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Covector,
    Vector,
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        perr(self.line, self.col(), msg)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`")))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected a name")),
        }
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn finish(&self) -> Result<()> {
        if self.done() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}

struct Ctx<'a> {
    frame_names: &'a [String],
    nvars: usize,
}

/// One term of an expression: a coefficient and an optional basis item
/// (sorted index list for covectors with sign folded in).
type Term = (LambdaPoly, Option<Vec<usize>>);

impl Ctx<'_> {
    fn basis_index(&self, name: &str) -> Option<usize> {
        self.frame_names.iter().position(|n| n == name)
    }

    fn number(&self, c: &mut Cursor) -> Result<Rational> {
        let col = c.col();
        let num = match c.next() {
            Some(Tok::Num(n)) => n,
            _ => return Err(perr(c.line, col, "expected a number")),
        };
        if c.eat("/") {
            match c.next() {
                Some(Tok::Num(d)) => parse_rational(&format!("{num}/{d}")).map_err(|m| perr(c.line, col, m)),
                _ => Err(perr(c.line, col, "expected a denominator")),
            }
        } else {
            parse_rational(&num).map_err(|m| perr(c.line, col, m))
        }
    }

    fn exponent(&self, c: &mut Cursor) -> Result<u32> {
        if !c.eat("^") {
            return Ok(1);
        }
        let col = c.col();
        match c.next() {
            Some(Tok::Num(n)) => n.parse().map_err(|_| perr(c.line, col, "exponent too large")),
            _ => Err(perr(c.line, col, "expected an exponent")),
        }
    }

    /// A scalar polynomial: `term (± term)*` with no basis symbols.
    fn poly(&self, c: &mut Cursor) -> Result<LambdaPoly> {
        let terms = self.sum(c, None)?;
        Ok(terms.into_iter().map(|(p, _)| p).fold(Poly::zero(), |a, b| a + b))
    }

    fn sum(&self, c: &mut Cursor, kind: Option<Kind>) -> Result<Vec<Term>> {
        let mut out = Vec::new();
        let mut neg = c.eat("-");
        if !neg {
            c.eat("+");
        }
        loop {
            let (p, b) = self.product(c, kind)?;
            out.push((if neg { -p } else { p }, b));
            if c.eat("+") {
                neg = false;
            } else if c.eat("-") {
                neg = true;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn product(&self, c: &mut Cursor, kind: Option<Kind>) -> Result<Term> {
        let mut coeff = LambdaPoly::one();
        let mut basis: Option<Vec<usize>> = None;
        loop {
            let col = c.col();
            match c.peek().cloned() {
                Some(Tok::Num(_)) => coeff = coeff * Poly::constant(self.number(c)?),
                Some(Tok::Sym("(")) => {
                    c.next();
                    let inner = self.poly(c)?;
                    c.expect(")")?;
                    coeff = coeff * inner;
                }
                Some(Tok::Ident(name)) => {
                    c.next();
                    if let Some(k) = lambda_index(&name) {
                        if k >= self.nvars {
                            return Err(perr(c.line, col, format!("`{name}` is not a variable of this ring")));
                        }
                        let e = self.exponent(c)?;
                        let mut exps = vec![0; k + 1];
                        exps[k] = e;
                        coeff = coeff * Poly::monomial(Monomial::new(exps), Rational::one());
                    } else {
                        if basis.is_some() {
                            return Err(perr(c.line, col, "two basis symbols in one term"));
                        }
                        basis = Some(self.basis_item(c, &name, col, kind)?);
                    }
                }
                _ => return Err(perr(c.line, col, "expected a coefficient or basis symbol")),
            }
            if !c.eat("*") {
                break;
            }
        }
        Ok((coeff, basis))
    }

    fn basis_item(&self, c: &mut Cursor, first: &str, col: usize, kind: Option<Kind>) -> Result<Vec<usize>> {
        match kind {
            None => Err(perr(c.line, col, format!("unexpected symbol `{first}` in a scalar"))),
            Some(Kind::Vector) => self
                .basis_index(first)
                .map(|i| vec![i])
                .ok_or_else(|| perr(c.line, col, format!("unknown basis vector `{first}`"))),
            Some(Kind::Covector) => {
                let mut idx = Vec::new();
                let mut name = first.to_string();
                let mut col = col;
                loop {
                    let i = name
                        .strip_prefix('d')
                        .and_then(|n| self.basis_index(n))
                        .ok_or_else(|| perr(c.line, col, format!("unknown covector `{name}`")))?;
                    idx.push(i);
                    if !c.eat("^") {
                        break;
                    }
                    col = c.col();
                    name = c.ident()?;
                }
                Ok(idx)
            }
        }
    }
}

#[derive(Default)]
struct Pending {
    name: Option<String>,
    ring: Option<RingSpec>,
    names: Option<Vec<String>>,
    brackets: Vec<BracketSpec>,
    last_bracket_line: usize,
    frame: Option<FrameRef>,
    tensors: Vec<(String, Tensor)>,
    metric_rows: Vec<Vec<Rational>>,
    metric_line: usize,
    metric: Option<Matrix<Rational>>,
}

impl Pending {
    fn frame(&mut self, line: usize) -> Result<FrameRef> {
        if let Some(f) = &self.frame {
            return Ok(f.clone());
        }
        let names = self.names.clone().ok_or_else(|| perr(line, 1, "`basis` or `dim` must come first"))?;
        let f = Frame::new(names.clone(), &self.brackets).map_err(|e| {
            let message = match e {
                Error::JacobiViolation(i, j, k) => {
                    format!("Jacobi identity fails on ({}, {}, {})", names[i], names[j], names[k])
                }
                other => other.to_string(),
            };
            perr(self.last_bracket_line.max(1), 1, message)
        })?;
        self.frame = Some(f.clone());
        Ok(f)
    }
}

fn vector_from_terms(frame: &FrameRef, terms: Vec<Term>, line: usize) -> Result<LambdaVector> {
    let mut coeffs = vec![LambdaPoly::zero(); frame.dim()];
    for (p, b) in terms {
        match b {
            Some(idx) => coeffs[idx[0]] = coeffs[idx[0]].clone() + p,
            None if p.is_zero() => {}
            None => return Err(perr(line, 1, "constant term in a vector expression")),
        }
    }
    VectorField::from_coeffs(frame, coeffs)
}

fn form_from_terms(frame: &FrameRef, terms: Vec<Term>, degree: Option<usize>, line: usize, col: usize) -> Result<LambdaForm> {
    let mut deg = degree;
    let mut items = Vec::new();
    for (p, b) in terms {
        let b = b.unwrap_or_default();
        if b.is_empty() && p.is_zero() && terms_is_zero_literal(&p) {
            continue;
        }
        match deg {
            None => deg = Some(b.len()),
            Some(d) if d != b.len() => return Err(perr(line, col, format!("mixed degrees {d} and {}", b.len()))),
            _ => {}
        }
        items.push((b, p));
    }
    let deg = deg.ok_or_else(|| perr(line, col, "zero form needs an explicit degree, e.g. `form name:2 = 0`"))?;
    KForm::from_terms(frame, deg, items).map_err(|e| perr(line, col, e.to_string()))
}

fn terms_is_zero_literal(p: &LambdaPoly) -> bool {
    p.is_zero()
}

/// Parse a document. Errors carry 1-based line and column.
pub fn parse_frame_file(text: &str) -> Result<FrameDoc> {
    let mut st = Pending::default();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let body = content.trim();
        let (kw, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest_col = 1 + lead + kw.len() + (body.len() - kw.len() - rest.len()).saturating_sub(0);
        let rest_offset = body[kw.len()..].len() - body[kw.len()..].trim_start().len();
        let rest = rest.trim_start();
        let rest_col = rest_col - (body.len() - kw.len() - rest.len()) + rest_offset;
        let toks = lex(rest, line_no, rest_col)?;
        let mut c = Cursor { toks: &toks, pos: 0, line: line_no, end_col: rest_col + rest.len() };
        match kw {
            "name" => {
                st.name = Some(c.ident()?);
                c.finish()?;
            }
            "ring" => {
                if !st.tensors.is_empty() {
                    return Err(perr(line_no, 1, "`ring` must precede tensors"));
                }
                st.ring = Some(RingSpec::parse(rest).map_err(|m| perr(line_no, rest_col, m))?);
            }
            "dim" | "basis" => {
                if st.names.is_some() {
                    return Err(perr(line_no, 1, "basis declared twice"));
                }
                let names = if kw == "dim" {
                    let n: usize = rest.trim().parse().map_err(|_| perr(line_no, rest_col, "expected a dimension"))?;
                    crate::exterior::frame::default_names(n)
                } else {
                    let mut v = Vec::new();
                    while !c.done() {
                        let col = c.col();
                        let n = c.ident()?;
                        if lambda_index(&n).is_some() {
                            return Err(perr(line_no, col, format!("`{n}` is reserved for sphere parameters")));
                        }
                        if v.contains(&n) {
                            return Err(perr(line_no, col, format!("repeated basis name `{n}`")));
                        }
                        v.push(n);
                    }
                    v
                };
                if names.is_empty() {
                    return Err(perr(line_no, rest_col, "empty basis"));
                }
                st.names = Some(names);
            }
            "bracket" => {
                if st.frame.is_some() {
                    return Err(perr(line_no, 1, "brackets must precede tensors"));
                }
                let names = st.names.clone().ok_or_else(|| perr(line_no, 1, "`basis` or `dim` must come first"))?;
                let ctx = Ctx { frame_names: &names, nvars: 0 };
                let mut idx = [0; 2];
                for slot in &mut idx {
                    let col = c.col();
                    let n = c.ident()?;
                    *slot = ctx.basis_index(&n).ok_or_else(|| perr(line_no, col, format!("unknown basis vector `{n}`")))?;
                }
                c.expect("=")?;
                let terms = ctx.sum(&mut c, Some(Kind::Vector))?;
                c.finish()?;
                let mut out: Vec<(usize, Rational)> = Vec::new();
                for (p, b) in terms {
                    let k = b.ok_or_else(|| perr(line_no, rest_col, "constant term in a bracket"))?[0];
                    out.push((k, p.constant_term()));
                }
                st.brackets.push((idx[0], idx[1], out));
                st.last_bracket_line = line_no;
            }
            "form" | "vector" | "endo" => {
                let frame = st.frame(line_no)?;
                let ring = st.ring.unwrap_or(RingSpec::Rational);
                let ctx = Ctx { frame_names: frame.names(), nvars: ring.nvars() };
                let name_col = c.col();
                let name = c.ident()?;
                if st.tensors.iter().any(|(n, _)| *n == name) {
                    return Err(perr(line_no, name_col, format!("`{name}` defined twice")));
                }
                let mut degree = None;
                if kw == "form" && c.eat(":") {
                    let col = c.col();
                    degree = match c.next() {
                        Some(Tok::Num(n)) => Some(n.parse::<usize>().map_err(|_| perr(line_no, col, "bad degree"))?),
                        _ => return Err(perr(line_no, col, "expected a degree")),
                    };
                }
                c.expect("=")?;
                let expr_col = c.col();
                let tensor = match kw {
                    "form" => {
                        let terms = ctx.sum(&mut c, Some(Kind::Covector))?;
                        Tensor::Form(form_from_terms(&frame, terms, degree, line_no, expr_col)?)
                    }
                    "vector" => {
                        let terms = ctx.sum(&mut c, Some(Kind::Vector))?;
                        Tensor::Vector(vector_from_terms(&frame, terms, line_no)?)
                    }
                    _ => Tensor::Endo(parse_endo(&ctx, &mut c, &frame)?),
                };
                c.finish()?;
                st.tensors.push((name, tensor));
            }
            "metric" => {
                let frame_dim = st.names.as_ref().map(Vec::len).ok_or_else(|| perr(line_no, 1, "`basis` or `dim` must come first"))?;
                let ctx = Ctx { frame_names: &[], nvars: 0 };
                let sub = c.ident()?;
                let mut nums = || -> Result<Vec<Rational>> {
                    let mut v = Vec::new();
                    while !c.done() {
                        let neg = c.eat("-");
                        let q = ctx.number(&mut c)?;
                        v.push(if neg { -q } else { q });
                    }
                    Ok(v)
                };
                match sub.as_str() {
                    "identity" => st.metric = Some(Matrix::identity(frame_dim)),
                    "diag" => {
                        let d = nums()?;
                        if d.len() != frame_dim {
                            return Err(perr(line_no, rest_col, format!("expected {frame_dim} entries")));
                        }
                        st.metric = Some(Matrix::from_fn(frame_dim, frame_dim, |i, j| {
                            if i == j {
                                d[i].clone()
                            } else {
                                Rational::zero()
                            }
                        }));
                    }
                    "row" => {
                        let r = nums()?;
                        if r.len() != frame_dim {
                            return Err(perr(line_no, rest_col, format!("expected {frame_dim} entries")));
                        }
                        st.metric_rows.push(r);
                        st.metric_line = line_no;
                        if st.metric_rows.len() == frame_dim {
                            st.metric = Some(Matrix::from_rows(std::mem::take(&mut st.metric_rows)));
                        }
                    }
                    other => return Err(perr(line_no, rest_col, format!("unknown metric form `{other}`"))),
                }
                if sub != "row" {
                    st.metric_line = line_no;
                }
            }
            other => return Err(perr(line_no, 1 + lead, format!("unknown keyword `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    if !st.metric_rows.is_empty() {
        return Err(perr(st.metric_line, 1, "incomplete metric"));
    }
    let frame = st.frame(last)?;
    let metric = match st.metric {
        Some(m) => Some(Metric::new(m).map_err(|e| perr(st.metric_line, 1, e.to_string()))?),
        None => None,
    };
    Ok(FrameDoc { name: st.name, ring: st.ring.unwrap_or(RingSpec::Rational), frame, tensors: st.tensors, metric })
}

fn parse_endo(ctx: &Ctx, c: &mut Cursor, frame: &FrameRef) -> Result<LambdaEndo> {
    let n = frame.dim();
    if let Some(Tok::Ident(w)) = c.peek() {
        if w == "identity" && c.toks.len() == c.pos + 1 {
            c.next();
            return Ok(EndoField::identity(frame));
        }
    }
    if matches!(c.peek(), Some(Tok::Num(z)) if z == "0") && c.toks.len() == c.pos + 1 {
        c.next();
        return Ok(EndoField::zero(frame));
    }
    let mut images: Vec<LambdaVector> = vec![VectorField::zero(frame); n];
    let mut seen = vec![false; n];
    loop {
        let col = c.col();
        let src = c.ident()?;
        let j = ctx.basis_index(&src).ok_or_else(|| perr(c.line, col, format!("unknown basis vector `{src}`")))?;
        if seen[j] {
            return Err(perr(c.line, col, format!("image of `{src}` given twice")));
        }
        seen[j] = true;
        c.expect("->")?;
        let terms = ctx.sum(c, Some(Kind::Vector))?;
        images[j] = vector_from_terms(frame, terms, c.line)?;
        if !c.eat(",") {
            break;
        }
    }
    EndoField::from_images(frame, &images)
}

/// Canonical text; `parse_frame_file(serialize(doc))` reproduces `doc`.
pub fn serialize(doc: &FrameDoc) -> String {
    let mut out = String::new();
    let f = &doc.frame;
    if let Some(n) = &doc.name {
        writeln!(out, "name {n}").unwrap();
    }
    writeln!(out, "ring {}", doc.ring).unwrap();
    writeln!(out, "basis {}", f.names().join(" ")).unwrap();
    for (i, j, terms) in f.brackets() {
        let v = VectorField::from_coeffs(f, {
            let mut c = vec![Rational::zero(); f.dim()];
            for (k, q) in terms {
                c[k] = q;
            }
            c
        })
        .expect("dimension");
        writeln!(out, "bracket {} {} = {}", f.name(i), f.name(j), v).unwrap();
    }
    for (name, t) in &doc.tensors {
        match t {
            Tensor::Form(w) if w.is_zero() => writeln!(out, "form {name}:{} = 0", w.degree()).unwrap(),
            Tensor::Form(w) => writeln!(out, "form {name} = {w}").unwrap(),
            Tensor::Vector(v) => writeln!(out, "vector {name} = {v}").unwrap(),
            Tensor::Endo(e) => {
                let n = f.dim();
                let parts: Vec<String> = (0..n)
                    .filter_map(|j| {
                        let img = VectorField::from_coeffs(f, (0..n).map(|i| e.entry(i, j).clone()).collect()).ok()?;
                        (!img.is_zero()).then(|| format!("{} -> {}", f.name(j), img))
                    })
                    .collect();
                if parts.is_empty() {
                    writeln!(out, "endo {name} = 0").unwrap();
                } else {
                    writeln!(out, "endo {name} = {}", parts.join(", ")).unwrap();
                }
            }
        }
    }
    if let Some(g) = &doc.metric {
        let m = g.matrix();
        if *m == Matrix::identity(m.rows()) {
            writeln!(out, "metric identity").unwrap();
        } else {
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(|q| q.to_string()).collect();
                writeln!(out, "metric row {}", row.join(" ")).unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    const HEIS: &str = "\
# Heisenberg
name heisenberg
basis e1 e2 e3
bracket e1 e2 = e3
form eta1 = de1
form Omega1 = de2^de3
vector xi = e1 - 1/2*e3
endo phi = e1 -> e2, e2 -> -e1
";

    #[test]
    fn parses_heisenberg() {
        let d = parse_frame_file(HEIS).unwrap();
        assert_eq!(d.frame.dim(), 3);
        assert_eq!(d.frame.brackets(), vec![(0, 1, vec![(2, int(1))])]);
        assert_eq!(d.form("Omega1").unwrap().coeff(&[1, 2]), int(1));
        assert_eq!(d.vector("xi").unwrap().coeff(2), &rat(-1, 2));
        assert_eq!(d.endo("phi").unwrap().entry(0, 1), &int(-1));
    }

    #[test]
    fn round_trip() {
        let d = parse_frame_file(HEIS).unwrap();
        let text = serialize(&d);
        assert_eq!(parse_frame_file(&text).unwrap(), d);
    }

    #[test]
    fn lambda_coefficients() {
        let text = "ring lambda:1\ndim 3\nform a = (l1^2 - 1/3*l2)*de1 + l2*de2^de1\n";
        let err = parse_frame_file(text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let text = "ring lambda:1\ndim 3\nform a = (l1^2 - 1/3*l2)*de1 - l2*de3\n";
        let d = parse_frame_file(text).unwrap();
        assert_eq!(parse_frame_file(&serialize(&d)).unwrap(), d);
        assert!(matches!(d.form("a"), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn errors_are_located() {
        let e = parse_frame_file("dim 2\nform a = 1/0*de1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 10, .. }), "{e}");
        let e = parse_frame_file("basis a b c\nbracket a b = c\nbracket a c = a\n").unwrap_err();
        match e {
            Error::Parse { line: 3, message, .. } => assert!(message.contains("Jacobi")),
            other => panic!("{other}"),
        }
        let e = parse_frame_file("dim 2\nfrom a = de1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 1, .. }));
        let e = parse_frame_file("dim 2\nform a = de3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 10, .. }), "{e}");
    }
}
