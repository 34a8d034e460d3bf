//! Session files: one ring, named ideals, and settings.
//!
//! ```text
//! # a Sally ideal with one-dimensional fiber cone
//! ring semigroup 6 11 15 31
//! ideal I = t^6, t^11, t^31
//! ideal J = t^6
//! set nmax 40
//! ```

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("line {line}: {msg}")]
    SyntaxError { line: usize, msg: String },
    #[error("line {line}: unknown variable `{name}`")]
    UnknownVariable { line: usize, name: String },
    #[error("line {line}: generator of `{ideal}` has a nonzero constant term")]
    ConstantTermGenerator { line: usize, ideal: String },
}

impl SessionError {
    pub fn kind(&self) -> &'static str {
        match self {
            SessionError::SyntaxError { .. } => "SyntaxError",
            SessionError::UnknownVariable { .. } => "UnknownVariable",
            SessionError::ConstantTermGenerator { .. } => "ConstantTermGenerator",
        }
    }
}

/// A polynomial with integer coefficients, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, i64>,
}

impl IntPoly {
    fn constant(nvars: usize, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(vec![0; nvars], c);
        }
        IntPoly { nvars, terms }
    }

    fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        IntPoly {
            nvars,
            terms: BTreeMap::from([(e, 1)]),
        }
    }

    fn add(&self, other: &Self, sign: i64) -> Option<Self> {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(e.clone()).or_insert(0);
            *slot = slot.checked_add(c.checked_mul(sign)?)?;
            if *slot == 0 {
                terms.remove(e);
            }
        }
        Some(IntPoly {
            nvars: self.nvars,
            terms,
        })
    }

    fn mul(&self, other: &Self) -> Option<Self> {
        let mut out = IntPoly::constant(self.nvars, 0);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let term = IntPoly {
                    nvars: self.nvars,
                    terms: BTreeMap::from([(e, c1.checked_mul(*c2)?)]),
                };
                out = out.add(&term, 1)?;
            }
        }
        Some(out)
    }

    fn pow(&self, k: u32) -> Option<Self> {
        let mut acc = IntPoly::constant(self.nvars, 1);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Some(acc)
    }

    pub fn constant_term(&self) -> i64 {
        self.terms.get(&vec![0; self.nvars]).copied().unwrap_or(0)
    }

    /// Text in the session grammar, terms in increasing degree.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(&Vec<u32>, &i64)> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), std::cmp::Reverse((*e).clone())));
        let mut out = String::new();
        for (k, (e, &c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(p, _)| **p > 0)
                .map(|(p, n)| {
                    if *p == 1 {
                        n.clone()
                    } else {
                        format!("{n}^{p}")
                    }
                })
                .collect();
            let mag = c.unsigned_abs();
            let body = match (mag, mono.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => mono.join("*"),
                _ => format!("{mag}*{}", mono.join("*")),
            };
            match (k, c < 0) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Semigroup(Vec<u32>),
    Local {
        vars: Vec<String>,
        trunc: Option<usize>,
        /// `None` or `Some(0)` for the rationals.
        char: Option<u64>,
    },
}

impl RingSpec {
    /// Variables generator expressions may use.
    pub fn variables(&self) -> Vec<String> {
        match self {
            RingSpec::Semigroup(_) => vec!["t".into()],
            RingSpec::Local { vars, .. } => vars.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub n_max: Option<usize>,
    pub window: Option<usize>,
    pub trunc: Option<usize>,
    pub guard: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    pub ring: RingSpec,
    /// In order of declaration.
    pub ideals: Vec<(String, Vec<IntPoly>)>,
    pub settings: Settings,
}

impl Session {
    pub fn ideal(&self, name: &str) -> Option<&[IntPoly]> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g.as_slice())
    }

    /// Parses a generator expression in this session's variables.
    pub fn parse_expr(&self, text: &str) -> Result<IntPoly, SessionError> {
        parse_poly(text, &self.ring.variables(), 0)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.ring {
            RingSpec::Semigroup(g) => {
                let g: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                writeln!(f, "ring semigroup {}", g.join(" "))?;
            }
            RingSpec::Local { vars, trunc, char } => {
                write!(f, "ring local {}", vars.join(" "))?;
                if let Some(n) = trunc {
                    write!(f, " trunc {n}")?;
                }
                if let Some(p) = char {
                    write!(f, " char {p}")?;
                }
                writeln!(f)?;
            }
        }
        let names = self.ring.variables();
        for (name, gens) in &self.ideals {
            let g: Vec<String> = gens.iter().map(|p| p.to_text(&names)).collect();
            writeln!(f, "ideal {name} = {}", g.join(", "))?;
        }
        let s = &self.settings;
        for (key, v) in [
            ("nmax", s.n_max),
            ("window", s.window),
            ("trunc", s.trunc),
            ("guard", s.guard),
        ] {
            if let Some(v) = v {
                writeln!(f, "set {key} {v}")?;
            }
        }
        Ok(())
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> SessionError {
    SessionError::SyntaxError {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, SessionError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected {what}, found `{tok}`")))
}

fn is_name(s: &str) -> bool {
    let mut c = s.chars();
    c.next()
        .is_some_and(|x| x.is_ascii_alphabetic() || x == '_')
        && c.all(|x| x.is_ascii_alphanumeric() || x == '_')
}

pub fn parse_session(text: &str) -> Result<Session, SessionError> {
    let mut ring: Option<RingSpec> = None;
    let mut ideals: Vec<(String, Vec<IntPoly>)> = Vec::new();
    let mut settings = Settings::default();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        match words.next().unwrap() {
            "ring" => {
                if ring.is_some() {
                    return Err(syntax(line, "a session has exactly one ring"));
                }
                ring = Some(parse_ring(line, words.collect())?);
            }
            "ideal" => {
                let Some(r) = &ring else {
                    return Err(syntax(line, "ideal declared before the ring"));
                };
                let rest = content["ideal".len()..].trim();
                let (name, body) = rest
                    .split_once('=')
                    .ok_or_else(|| syntax(line, "expected `ideal <Name> = <gen>, ...`"))?;
                let name = name.trim();
                if !is_name(name) {
                    return Err(syntax(line, format!("bad ideal name `{name}`")));
                }
                if ideals.iter().any(|(n, _)| n == name) {
                    return Err(syntax(line, format!("ideal `{name}` declared twice")));
                }
                let vars = r.variables();
                let mut gens = Vec::new();
                for g in body.split(',') {
                    let p = parse_poly(g, &vars, line)?;
                    if p.constant_term() != 0 {
                        return Err(SessionError::ConstantTermGenerator {
                            line,
                            ideal: name.to_string(),
                        });
                    }
                    gens.push(p);
                }
                ideals.push((name.to_string(), gens));
            }
            "set" => {
                let key = words
                    .next()
                    .ok_or_else(|| syntax(line, "expected `set <key> <value>`"))?;
                let val = words
                    .next()
                    .ok_or_else(|| syntax(line, "expected `set <key> <value>`"))?;
                if words.next().is_some() {
                    return Err(syntax(line, "trailing input after setting"));
                }
                let v: usize = parse_num(line, val, "a nonnegative integer")?;
                match key {
                    "nmax" | "n_max" => settings.n_max = Some(v),
                    "window" => settings.window = Some(v),
                    "trunc" | "truncation" => settings.trunc = Some(v),
                    "guard" => settings.guard = Some(v),
                    _ => return Err(syntax(line, format!("unknown setting `{key}`"))),
                }
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let ring = ring.ok_or_else(|| syntax(text.lines().count().max(1), "no ring declared"))?;
    Ok(Session {
        ring,
        ideals,
        settings,
    })
}

fn parse_ring(line: usize, words: Vec<&str>) -> Result<RingSpec, SessionError> {
    match words.first().copied() {
        Some("semigroup") => {
            if words.len() < 2 {
                return Err(syntax(line, "a semigroup needs at least one generator"));
            }
            let gens = words[1..]
                .iter()
                .map(|w| parse_num(line, w, "a semigroup generator"))
                .collect::<Result<Vec<u32>, _>>()?;
            Ok(RingSpec::Semigroup(gens))
        }
        Some("local") => {
            let mut vars = Vec::new();
            let mut trunc = None;
            let mut char = None;
            let mut it = words[1..].iter();
            while let Some(&w) = it.next() {
                match w {
                    "trunc" => {
                        let v = it
                            .next()
                            .ok_or_else(|| syntax(line, "`trunc` needs a value"))?;
                        trunc = Some(parse_num(line, v, "a truncation")?);
                    }
                    "char" => {
                        let v = it
                            .next()
                            .ok_or_else(|| syntax(line, "`char` needs a value"))?;
                        char = Some(parse_num(line, v, "a characteristic")?);
                    }
                    v if is_name(v) => {
                        if vars.iter().any(|x| x == v) {
                            return Err(syntax(line, format!("variable `{v}` declared twice")));
                        }
                        vars.push(v.to_string());
                    }
                    v => return Err(syntax(line, format!("bad variable name `{v}`"))),
                }
            }
            if vars.is_empty() {
                return Err(syntax(line, "a local ring needs at least one variable"));
            }
            Ok(RingSpec::Local { vars, trunc, char })
        }
        _ => Err(syntax(
            line,
            "expected `ring semigroup ...` or `ring local ...`",
        )),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Name(String),
    Op(char),
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Tok>, SessionError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(parse_num(line, &s, "an integer")?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Name(chars[start..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(syntax(line, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [String],
    line: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn overflow(&self) -> SessionError {
        syntax(self.line, "coefficient overflow")
    }

    fn expr(&mut self) -> Result<IntPoly, SessionError> {
        let mut acc = self.term()?;
        loop {
            let sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                return Ok(acc);
            };
            let t = self.term()?;
            acc = acc.add(&t, sign).ok_or_else(|| self.overflow())?;
        }
    }

    fn term(&mut self) -> Result<IntPoly, SessionError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            let f = self.unary()?;
            acc = acc.mul(&f).ok_or_else(|| self.overflow())?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<IntPoly, SessionError> {
        if self.eat('-') {
            let v = self.unary()?;
            return IntPoly::constant(v.nvars, 0)
                .add(&v, -1)
                .ok_or_else(|| self.overflow());
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(k)) if k <= u32::MAX as i64 => {
                    self.pos += 1;
                    return base.pow(k as u32).ok_or_else(|| self.overflow());
                }
                _ => return Err(syntax(self.line, "expected an exponent after `^`")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<IntPoly, SessionError> {
        let n = self.vars.len();
        match self.peek().cloned() {
            Some(Tok::Num(c)) => {
                self.pos += 1;
                Ok(IntPoly::constant(n, c))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(IntPoly::var(n, i)),
                    None => Err(SessionError::UnknownVariable {
                        line: self.line,
                        name,
                    }),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(syntax(self.line, "missing `)`"));
                }
                Ok(e)
            }
            Some(t) => Err(syntax(self.line, format!("unexpected {t:?}"))),
            None => Err(syntax(self.line, "unexpected end of expression")),
        }
    }
}

/// Parses one polynomial expression. `line` is used in error messages.
pub fn parse_poly(text: &str, vars: &[String], line: usize) -> Result<IntPoly, SessionError> {
    let toks = tokenize(text, line)?;
    if toks.is_empty() {
        return Err(syntax(line, "empty generator"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        line,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(syntax(line, format!("unexpected {:?}", p.toks[p.pos])));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn expressions() {
        let v = names(&["x", "y"]);
        let p = parse_poly("(x + y)^2 - 2*x*y", &v, 1).unwrap();
        assert_eq!(p.to_text(&v), "x^2 + y^2");
        let q = parse_poly("-x*(3 - y)", &v, 1).unwrap();
        assert_eq!(q.to_text(&v), "-3*x + x*y");
        assert_eq!(parse_poly("x - x", &v, 1).unwrap().to_text(&v), "0");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_session("ring local x y\n\nideal I = x + w\n").unwrap_err();
        assert_eq!(
            e,
            SessionError::UnknownVariable {
                line: 3,
                name: "w".into()
            }
        );
        let e = parse_session("ring local x\nideal I = x, 1 + x\n").unwrap_err();
        assert_eq!(e.kind(), "ConstantTermGenerator");
        let e = parse_session("ring local x\nideal I = x +\n").unwrap_err();
        assert!(matches!(e, SessionError::SyntaxError { line: 2, .. }));
        let e = parse_session("").unwrap_err();
        assert!(matches!(e, SessionError::SyntaxError { .. }));
        assert!(parse_session("ring semigroup 3 5\nring semigroup 2 3\n").is_err());
        assert!(parse_session("ring semigroup 3 5\nset speed 3\n").is_err());
        assert!(parse_session("ring semigroup 3 5\nideal I = t\nideal I = t^2\n").is_err());
    }

    #[test]
    fn ring_lines() {
        let s = parse_session("ring local a b trunc 12 char 101 # comment\n").unwrap();
        assert_eq!(
            s.ring,
            RingSpec::Local {
                vars: names(&["a", "b"]),
                trunc: Some(12),
                char: Some(101)
            }
        );
    }

    #[test]
    fn text_round_trip() {
        let src = "ring local x y z\nideal J = x^3+y*z, y^3+z^3+x*z, x*z+x*y\nset nmax 30\n";
        let s = parse_session(src).unwrap();
        assert_eq!(parse_session(&s.to_text()).unwrap(), s);
    }
}
