//! Text format for algebras:
//!
//! ```text
//! @truncate 3
//! algebra SD(a) {
//!   generators L, J;
//!   bracket [L _ L] = (d + 2*l) L;
//!   bracket [L _ J] = (d + a*l) J;
//!   bracket [J _ J] = 0;
//! }
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{skew_image, ConformalAlgebra, Gen, LinComb};
use crate::poly::{MultiPoly, Var};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message} (expected {})", expected.join(" or "), line = span.line, column = span.column)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Truncate,
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Truncate => f.write_str("`@truncate`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Lexed {
    tok: Tok,
    span: SourceSpan,
}

fn lex(src: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let span = |s: usize, e: usize, line, column| SourceSpan { line, column, start: s, end: e };
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let (tok, len) = if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            (Tok::Ident(src[i..j].to_string()), j - i)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j < bytes.len() && bytes[j] == b'.' {
                return Err(ParseError {
                    span: span(i, j + 1, line, col),
                    message: "decimal literals are not exact; write p/q".into(),
                    expected: vec!["integer".into(), "rational p/q".into()],
                });
            }
            let n = src[i..j].parse::<u64>().map_err(|_| ParseError {
                span: span(i, j, line, col),
                message: "integer literal too large".into(),
                expected: vec!["integer".into()],
            })?;
            (Tok::Int(n), j - i)
        } else if c == '@' {
            let mut j = i + 1;
            while j < bytes.len() && bytes[j].is_ascii_alphabetic() {
                j += 1;
            }
            if &src[i..j] != "@truncate" {
                return Err(ParseError {
                    span: span(i, j, line, col),
                    message: format!("unknown directive `{}`", &src[i..j]),
                    expected: vec!["`@truncate`".into()],
                });
            }
            (Tok::Truncate, j - i)
        } else if "(){}[]_=+-*^;,/".contains(c) {
            (Tok::Sym(c), 1)
        } else {
            let w = c.len_utf8();
            return Err(ParseError {
                span: span(i, i + w, line, col),
                message: format!("unexpected character `{c}`"),
                expected: vec!["ASCII token".into()],
            });
        };
        out.push(Lexed { tok, span: span(start, start + len, line, col) });
        i += len;
        col += len;
    }
    let last = src.len();
    let end_span = out.last().map(|l| l.span).unwrap_or(span(0, 0, 1, 1));
    out.push(Lexed { tok: Tok::Eof, span: SourceSpan { start: last.min(end_span.end), end: last, ..end_span } });
    Ok(out)
}

/// An expression value: a polynomial, or a combination of generators.
#[derive(Clone, Debug)]
enum Val {
    Poly(MultiPoly),
    Elem(LinComb),
}

impl Val {
    fn poly(self) -> Option<MultiPoly> {
        match self {
            Val::Poly(p) => Some(p),
            Val::Elem(_) => None,
        }
    }

    /// Zero polynomials count as the zero element.
    fn elem(self) -> LinComb {
        match self {
            Val::Elem(e) => e,
            Val::Poly(_) => LinComb::zero(),
        }
    }
}

/// How bare identifiers inside expressions are resolved.
enum Scope<'a> {
    /// `l`, `d`, declared parameters, and generators.
    Algebra { params: &'a BTreeMap<String, MultiPoly>, gens: &'a BTreeSet<Gen> },
    /// Any reserved variable name; everything else is a symbol.
    Free,
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> &Lexed {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            span: self.span(),
            message: format!("unexpected {}", self.peek()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn semantic<T>(&self, span: SourceSpan, message: String, expected: &str) -> Result<T, ParseError> {
        Err(ParseError { span, message, expected: vec![expected.to_string()] })
    }

    fn expect_sym(&mut self, c: char) -> Result<SourceSpan, ParseError> {
        if *self.peek() == Tok::Sym(c) {
            Ok(self.bump().span)
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => self.fail(&[&format!("`{kw}`")]),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail(&[what]),
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        match *self.peek() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail(&["integer"]),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat_sym('-');
        let n = self.int()? as i64;
        Ok(if neg { -n } else { n })
    }

    /// `IDENT ('[' INT (';' INT ',' INT)? ']')?`
    fn gen(&mut self) -> Result<Gen, ParseError> {
        let name = self.ident("generator")?;
        if !self.eat_sym('[') {
            return Ok(Gen::named(&name));
        }
        let n = self.signed_int()?;
        let g = if self.eat_sym(';') {
            let p = self.int()? as u32;
            self.expect_sym(',')?;
            let q = self.int()? as u32;
            Gen::Unit { power: n, row: p, col: q }
        } else {
            Gen::Index(n)
        };
        self.expect_sym(']')?;
        Ok(g)
    }

    fn starts_gen(&self, scope: &Scope) -> bool {
        match (self.peek(), scope) {
            (Tok::Ident(s), Scope::Algebra { gens, .. }) => {
                (s == "J" && *self.peek_at(1) == Tok::Sym('[')) || gens.contains(&Gen::named(s))
            }
            _ => false,
        }
    }

    fn sum(&mut self, scope: &Scope) -> Result<Val, ParseError> {
        let neg = self.eat_sym('-');
        let mut acc = self.term(scope)?;
        if neg {
            acc = negate(acc);
        }
        loop {
            let span = self.span();
            let rhs = if self.eat_sym('+') {
                self.term(scope)?
            } else if self.eat_sym('-') {
                negate(self.term(scope)?)
            } else {
                return Ok(acc);
            };
            acc = add(acc, rhs, span).map_err(|m| ParseError { span, message: m, expected: vec!["polynomial".into()] })?;
        }
    }

    fn term(&mut self, scope: &Scope) -> Result<Val, ParseError> {
        let mut acc = self.unary(scope)?;
        loop {
            let span = self.span();
            if self.eat_sym('*') {
                let r = self.unary(scope)?;
                acc = mul(acc, r).ok_or(()).or_else(|_| self.semantic(span, "product of two generators".into(), "polynomial factor"))?;
            } else if self.eat_sym('/') {
                let r = self.unary(scope)?;
                let c = r.poly().and_then(|p| p.as_constant()).and_then(|c| c.recip());
                let Some(c) = c else {
                    return self.semantic(span, "division by a non-constant or zero".into(), "nonzero constant divisor");
                };
                acc = mul(acc, Val::Poly(MultiPoly::constant(c))).unwrap();
            } else if self.starts_gen(scope) {
                let p = self.power(scope)?;
                acc = mul(acc, p).ok_or(()).or_else(|_| self.semantic(span, "product of two generators".into(), "polynomial factor"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, scope: &Scope) -> Result<Val, ParseError> {
        if self.eat_sym('-') {
            return Ok(negate(self.unary(scope)?));
        }
        self.power(scope)
    }

    fn power(&mut self, scope: &Scope) -> Result<Val, ParseError> {
        let base = self.primary(scope)?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let span = self.span();
        let e = self.int()?;
        match base {
            Val::Poly(p) => Ok(Val::Poly(p.pow(e as u32))),
            Val::Elem(_) => self.semantic(span, "power of a generator".into(), "polynomial base"),
        }
    }

    fn primary(&mut self, scope: &Scope) -> Result<Val, ParseError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Val::Poly(MultiPoly::constant(Scalar::int(n as i64))))
            }
            Tok::Sym('(') => {
                self.bump();
                let v = self.sum(scope)?;
                self.expect_sym(')')?;
                Ok(v)
            }
            Tok::Ident(name) => {
                if name == "sqrt" && *self.peek_at(1) == Tok::Sym('(') {
                    self.bump();
                    self.bump();
                    let n = self.int()?;
                    self.expect_sym(')')?;
                    return match Scalar::sqrt(n as u32) {
                        Ok(s) => Ok(Val::Poly(MultiPoly::constant(s))),
                        Err(e) => self.semantic(span, e.to_string(), "square-free radicand"),
                    };
                }
                if self.starts_gen(scope) {
                    let g = self.gen()?;
                    if let Scope::Algebra { gens, .. } = scope {
                        if !gens.contains(&g) {
                            return self.semantic(span, format!("unknown generator {g}"), "declared generator");
                        }
                    }
                    return Ok(Val::Elem(LinComb::gen(g)));
                }
                self.bump();
                let v = match scope {
                    Scope::Algebra { params, .. } => match name.as_str() {
                        "l" => MultiPoly::l(),
                        "d" => MultiPoly::d(),
                        _ => match params.get(&name) {
                            Some(p) => p.clone(),
                            None => return self.semantic(span, format!("unknown identifier `{name}`"), "`l`, `d`, a parameter or a generator"),
                        },
                    },
                    Scope::Free => match Var::reserved(&name) {
                        Some(v) => MultiPoly::var(v),
                        None => MultiPoly::sym(&name),
                    },
                };
                Ok(Val::Poly(v))
            }
            _ => self.fail(&["integer", "identifier", "`(`", "`-`"]),
        }
    }
}

fn negate(v: Val) -> Val {
    match v {
        Val::Poly(p) => Val::Poly(-p),
        Val::Elem(e) => Val::Elem(e.neg()),
    }
}

fn add(a: Val, b: Val, _span: SourceSpan) -> Result<Val, String> {
    match (a, b) {
        (Val::Poly(x), Val::Poly(y)) => Ok(Val::Poly(&x + &y)),
        (Val::Elem(x), Val::Elem(y)) => Ok(Val::Elem(x.add(&y))),
        (Val::Elem(x), Val::Poly(y)) | (Val::Poly(y), Val::Elem(x)) if y.is_zero() => Ok(Val::Elem(x)),
        _ => Err("sum of a polynomial and a generator term".into()),
    }
}

fn mul(a: Val, b: Val) -> Option<Val> {
    match (a, b) {
        (Val::Poly(x), Val::Poly(y)) => Some(Val::Poly(&x * &y)),
        (Val::Poly(x), Val::Elem(e)) | (Val::Elem(e), Val::Poly(x)) => Some(Val::Elem(e.mul_poly(&x))),
        _ => None,
    }
}

/// Parses an algebra; unbound parameters stay symbolic.
pub fn parse_algebra(text: &str) -> Result<ConformalAlgebra, ParseError> {
    parse_algebra_with(text, &BTreeMap::new())
}

pub fn parse_algebra_with(text: &str, values: &BTreeMap<String, Scalar>) -> Result<ConformalAlgebra, ParseError> {
    let mut p = Parser::new(text)?;
    let mut truncation = None;
    if *p.peek() == Tok::Truncate {
        p.bump();
        truncation = Some(p.signed_int()?);
    }
    p.expect_keyword("algebra")?;
    let name = p.ident("algebra name")?;
    p.expect_sym('(')?;
    let mut params: BTreeMap<String, MultiPoly> = BTreeMap::new();
    let mut bound: BTreeMap<String, Scalar> = BTreeMap::new();
    if !p.eat_sym(')') {
        loop {
            let span = p.span();
            let n = p.ident("parameter name")?;
            if n == "l" || n == "d" {
                return p.semantic(span, format!("`{n}` is reserved"), "parameter name");
            }
            let v = match values.get(&n) {
                Some(s) => {
                    bound.insert(n.clone(), s.clone());
                    MultiPoly::constant(s.clone())
                }
                None => MultiPoly::sym(&n),
            };
            params.insert(n, v);
            if p.eat_sym(')') {
                break;
            }
            p.expect_sym(',')?;
        }
    }
    p.expect_sym('{')?;
    let mut gens: BTreeSet<Gen> = BTreeSet::new();
    let mut decls: Vec<((Gen, Gen), LinComb, SourceSpan)> = Vec::new();
    loop {
        match p.peek().clone() {
            Tok::Sym('}') => {
                p.bump();
                break;
            }
            Tok::Ident(k) if k == "generators" => {
                p.bump();
                loop {
                    let span = p.span();
                    let g = p.gen()?;
                    if !gens.insert(g.clone()) {
                        return p.semantic(span, format!("generator {g} declared twice"), "new generator");
                    }
                    if p.eat_sym(';') {
                        break;
                    }
                    p.expect_sym(',')?;
                }
            }
            Tok::Ident(k) if k == "bracket" => {
                p.bump();
                let span = p.span();
                p.expect_sym('[')?;
                let gspan = p.span();
                let x = p.gen()?;
                p.expect_sym('_')?;
                let y = p.gen()?;
                for g in [&x, &y] {
                    if !gens.contains(g) {
                        return p.semantic(gspan, format!("unknown generator {g}"), "declared generator");
                    }
                }
                p.expect_sym(']')?;
                p.expect_sym('=')?;
                let vspan = p.span();
                let scope = Scope::Algebra { params: &params, gens: &gens };
                let v = p.sum(&scope)?;
                if let Val::Poly(q) = &v {
                    if !q.is_zero() {
                        return p.semantic(vspan, "bracket value has no generator".into(), "generator term");
                    }
                }
                let v = v.elem();
                if v.terms().any(|(_, c)| c.vars().iter().any(|w| matches!(w, Var::M | Var::L1 | Var::L2 | Var::L3 | Var::X))) {
                    return p.semantic(vspan, "coefficients must be polynomials in l and d".into(), "polynomial in l, d");
                }
                p.expect_sym(';')?;
                if decls.iter().any(|(k, _, _)| *k == (x.clone(), y.clone())) {
                    return p.semantic(span, format!("bracket [{x} {y}] declared twice"), "new bracket");
                }
                decls.push(((x, y), v, span));
            }
            _ => return p.fail(&["`generators`", "`bracket`", "`}`"]),
        }
    }
    if *p.peek() != Tok::Eof {
        return p.fail(&["end of input"]);
    }
    let mut alg = ConformalAlgebra::new(&name, gens.iter().cloned().collect(), truncation);
    for (k, v) in &bound {
        alg = alg.with_param(k, v.clone());
    }
    for ((x, y), v, _) in &decls {
        alg.set_bracket(x.clone(), y.clone(), v.clone());
    }
    for ((x, y), v, span) in &decls {
        if x == y {
            continue;
        }
        if let Some((_, w, _)) = decls.iter().find(|(k, _, _)| *k == (y.clone(), x.clone())) {
            if *w != skew_image(v) {
                return Err(ParseError {
                    span: *span,
                    message: format!("[{y} {x}] contradicts skew-symmetry with [{x} {y}]"),
                    expected: vec!["skew-symmetric pair".into()],
                });
            }
        }
    }
    alg.skew_complete();
    Ok(alg)
}

/// Parses a standalone polynomial: reserved names become the bracket
/// variables, other identifiers become symbols.
pub fn parse_poly(text: &str) -> Result<MultiPoly, ParseError> {
    let mut p = Parser::new(text)?;
    let span = p.span();
    let v = p.sum(&Scope::Free)?;
    if *p.peek() != Tok::Eof {
        return p.fail(&["operator", "end of input"]);
    }
    v.poly().ok_or(ParseError { span, message: "not a polynomial".into(), expected: vec!["polynomial".into()] })
}

pub fn write_gen(g: &Gen) -> String {
    match g {
        Gen::Index(n) => format!("J[{n}]"),
        Gen::Unit { power, row, col } => format!("J[{power};{row},{col}]"),
        Gen::Named(s) => s.to_string(),
    }
}

/// An element in the syntax accepted on the right of a bracket declaration.
pub fn format_element(v: &LinComb) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let ts: Vec<String> = v.terms().map(|(g, c)| format!("({c}) {}", write_gen(g))).collect();
    ts.join(" + ")
}

pub fn serialize_algebra(alg: &ConformalAlgebra) -> String {
    let mut out = String::new();
    if let Some(n) = alg.truncation() {
        out.push_str(&format!("@truncate {n}\n"));
    }
    let name: String = {
        let s: String = alg.name.chars().filter(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
        if s.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) { s } else { format!("A{s}") }
    };
    out.push_str(&format!("algebra {name}() {{\n"));
    if !alg.gens().is_empty() {
        let gs: Vec<String> = alg.gens().iter().map(write_gen).collect();
        out.push_str(&format!("  generators {};\n", gs.join(", ")));
    }
    for ((x, y), v) in alg.table() {
        let rhs = format_element(v);
        out.push_str(&format!("  bracket [{} _ {}] = {rhs};\n", write_gen(x), write_gen(y)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn virasoro_text() {
        let a = parse_algebra("algebra Vir() { generators L; bracket [L _ L] = (d + 2*l) L; }").unwrap();
        assert_eq!(a, zoo::vir());
    }

    #[test]
    fn semidirect_text() {
        let src = "algebra SD(a) { generators L, J; bracket [L _ L] = (d + 2*l) L; bracket [L _ J] = (d + a*l) J; bracket [J _ J] = 0; }";
        let vals: BTreeMap<String, Scalar> = [("a".to_string(), Scalar::int(4))].into_iter().collect();
        assert_eq!(parse_algebra_with(src, &vals).unwrap(), zoo::semidirect(&Scalar::int(4)));
    }

    #[test]
    fn dangling_plus() {
        let e = parse_algebra("algebra V() { generators L; bracket [L _ L] = d + ; }").unwrap_err();
        // reported at the `;` that follows the `+`
        assert_eq!(e.span.column, 51);
        assert!(e.expected.contains(&"identifier".to_string()));
    }

    #[test]
    fn round_trips() {
        for a in [zoo::vir(), zoo::semidirect(&Scalar::int(3)), zoo::grgc1(3), zoo::gc1(3), zoo::gcn(2, 1)] {
            let text = serialize_algebra(&a);
            assert_eq!(parse_algebra(&text).unwrap(), a, "{text}");
        }
    }

    #[test]
    fn skew_mismatch_rejected() {
        let src = "algebra X() { generators L, J; bracket [L _ J] = l J; bracket [J _ L] = l J; bracket [L _ L] = 0; bracket [J _ J] = 0; }";
        let e = parse_algebra(src).unwrap_err();
        assert!(e.message.contains("skew"));
    }

    #[test]
    fn polys_with_surds() {
        let p = parse_poly("(-5/2+1/2*sqrt(19))*l1 - l2^2").unwrap();
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        assert!(parse_poly("1.5*l").is_err());
    }
}
