//! The expression grammar shared by the command line and the fixtures.
//!
//! Integer literals are constants of the prime field, `g` is the fixed generator of F_q
//! when q is not prime, and the identifiers t, u, x, y name variables. Operators are
//! `+ - * / ^` with parentheses; exponents are (possibly negative) integer literals.
//! Series need an explicit `O(t^N)` marker. Witt vectors are written `[a_{s-1}; ...; a_0]`
//! and divisors as `2*inf + (x^2 + x + 1)`.

use crate::algebra::{Field, FieldElem, Fq, Poly, Poly2, RatFunc, RatFunc2};
use crate::error::{Error, Result};
use crate::localfield::{LaurentSeries, EXACT};
use crate::rayclass::{Divisor, Place};
use crate::witt::WittVector;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Sym(char),
}

fn err(pos: usize, token: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Parse { pos, token: token.into(), msg: msg.into() }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = vec![];
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
            let n = s.parse().map_err(|_| err(start, s.clone(), "integer literal too large"))?;
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else {
            let sym = match c {
                '−' => '-',
                '·' => '*',
                '+' | '-' | '*' | '/' | '^' | '(' | ')' | '[' | ']' | ';' => c,
                _ => return Err(err(i, c.to_string(), "unexpected character")),
            };
            out.push((i, Tok::Sym(sym)));
            i += 1;
        }
    }
    Ok(out)
}

/// A parsed expression; every node remembers where it started.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(usize, u64),
    Var(usize, String),
    /// O(t^N)
    BigO(usize, i64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(usize, Box<Expr>, Box<Expr>),
    Pow(usize, Box<Expr>, i64),
}

impl Expr {
    /// True when an O(t^N) marker occurs somewhere.
    pub fn has_big_o(&self) -> bool {
        match self {
            Expr::BigO(..) => true,
            Expr::Num(..) | Expr::Var(..) => false,
            Expr::Neg(a) | Expr::Pow(_, a, _) => a.has_big_o(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(_, a, b) => a.has_big_o() || b.has_big_o(),
        }
    }
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    i: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }
    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.0)
    }
    fn shown(&self) -> String {
        match self.peek() {
            Some(Tok::Num(n)) => n.to_string(),
            Some(Tok::Ident(s)) => s.clone(),
            Some(Tok::Sym(c)) => c.to_string(),
            None => "end of input".into(),
        }
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }
    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.pos(), self.shown(), format!("expected `{}`", c)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.i += 1;
                acc = Expr::Div(pos, Box::new(acc), Box::new(self.unary()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let pos = self.pos();
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return Ok(Expr::Pow(pos, Box::new(base), e));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                let pos = self.pos();
                self.i += 1;
                let v = i64::try_from(n).map_err(|_| err(pos, n.to_string(), "exponent too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(err(self.pos(), self.shown(), "expected an integer exponent")),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat('(') {
            let e = self.signed_int()?;
            self.expect(')')?;
            Ok(e)
        } else {
            self.signed_int()
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Expr::Num(pos, n))
            }
            Some(Tok::Ident(s)) if s == "O" => {
                self.i += 1;
                self.expect('(')?;
                let inner_pos = self.pos();
                let inner = self.expr()?;
                self.expect(')')?;
                match inner {
                    Expr::Var(_, v) if v == "t" => Ok(Expr::BigO(pos, 1)),
                    Expr::Pow(_, b, n) if matches!(&*b, Expr::Var(_, v) if v == "t") => Ok(Expr::BigO(pos, n)),
                    Expr::Num(_, 1) => Ok(Expr::BigO(pos, 0)),
                    _ => Err(err(inner_pos, "O", "the precision marker must read O(t^N)")),
                }
            }
            Some(Tok::Ident(s)) => {
                self.i += 1;
                Ok(Expr::Var(pos, s))
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(err(pos, self.shown(), "expected a number, a variable or `(`")),
        }
    }
}

/// Parse a complete expression.
pub fn parse(src: &str) -> Result<Expr> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks: &toks, i: 0, end: src.chars().count() };
    let e = p.expr()?;
    if p.i < toks.len() {
        return Err(err(p.pos(), p.shown(), "unexpected token"));
    }
    Ok(e)
}

/// The arithmetic an expression can be evaluated in.
trait Target: Clone {
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn neg(self) -> Self;
    fn div(self, o: Self) -> std::result::Result<Self, String>;
    fn powi(self, e: i64) -> std::result::Result<Self, String>;
}

macro_rules! field_target {
    ($t:ty) => {
        impl Target for $t {
            fn add(self, o: Self) -> Self {
                self + o
            }
            fn sub(self, o: Self) -> Self {
                self - o
            }
            fn mul(self, o: Self) -> Self {
                self * o
            }
            fn neg(self) -> Self {
                -self
            }
            fn div(self, o: Self) -> std::result::Result<Self, String> {
                Field::div(&self, &o).ok_or_else(|| "division by zero".to_string())
            }
            fn powi(self, e: i64) -> std::result::Result<Self, String> {
                Field::powi(&self, e).ok_or_else(|| "negative power of zero".to_string())
            }
        }
    };
}
field_target!(FieldElem);
field_target!(RatFunc<FieldElem>);

impl Target for Poly<FieldElem> {
    fn add(self, o: Self) -> Self {
        &self + &o
    }
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
    fn neg(self) -> Self {
        -self
    }
    fn div(self, o: Self) -> std::result::Result<Self, String> {
        if o.is_zero() {
            return Err("division by zero".into());
        }
        self.div_exact(&o).ok_or_else(|| "the quotient is not a polynomial".to_string())
    }
    fn powi(self, e: i64) -> std::result::Result<Self, String> {
        if e < 0 {
            return Err("negative exponent in a polynomial".into());
        }
        Ok(self.pow(e as u64))
    }
}

impl Target for Poly2<FieldElem> {
    fn add(self, o: Self) -> Self {
        &self + &o
    }
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
    fn neg(self) -> Self {
        -&self
    }
    fn div(self, o: Self) -> std::result::Result<Self, String> {
        if o.is_zero() {
            return Err("division by zero".into());
        }
        self.div_exact(&o).ok_or_else(|| "the quotient is not a polynomial".to_string())
    }
    fn powi(self, e: i64) -> std::result::Result<Self, String> {
        if e < 0 {
            return Err("negative exponent in a polynomial".into());
        }
        Ok(self.pow(e as u64))
    }
}

impl Target for RatFunc2<FieldElem> {
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn neg(self) -> Self {
        -self
    }
    fn div(self, o: Self) -> std::result::Result<Self, String> {
        RatFunc2::div(&self, &o).map_err(|e| e.to_string())
    }
    fn powi(self, e: i64) -> std::result::Result<Self, String> {
        RatFunc2::powi(&self, e).map_err(|e| e.to_string())
    }
}

impl<E: Field> Target for LaurentSeries<E> {
    fn add(self, o: Self) -> Self {
        &self + &o
    }
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
    fn neg(self) -> Self {
        -self
    }
    fn div(self, o: Self) -> std::result::Result<Self, String> {
        self.try_div(&o).map_err(|e| e.to_string())
    }
    fn powi(self, e: i64) -> std::result::Result<Self, String> {
        LaurentSeries::powi(&self, e).map_err(|e| e.to_string())
    }
}

/// A leaf of the tree: a literal, a variable or the precision marker.
enum Leaf<'a> {
    Num(u64),
    Var(&'a str),
    BigO(i64),
}

fn eval<T: Target>(e: &Expr, leaf: &dyn Fn(usize, Leaf) -> Result<T>) -> Result<T> {
    Ok(match e {
        Expr::Num(pos, n) => leaf(*pos, Leaf::Num(*n))?,
        Expr::Var(pos, v) => leaf(*pos, Leaf::Var(v))?,
        Expr::BigO(pos, n) => leaf(*pos, Leaf::BigO(*n))?,
        Expr::Neg(a) => eval(a, leaf)?.neg(),
        Expr::Add(a, b) => eval(a, leaf)?.add(eval(b, leaf)?),
        Expr::Sub(a, b) => eval(a, leaf)?.sub(eval(b, leaf)?),
        Expr::Mul(a, b) => eval(a, leaf)?.mul(eval(b, leaf)?),
        Expr::Div(pos, a, b) => eval(a, leaf)?.div(eval(b, leaf)?).map_err(|m| err(*pos, "/", m))?,
        Expr::Pow(pos, a, n) => eval(a, leaf)?.powi(*n).map_err(|m| err(*pos, "^", m))?,
    })
}

fn constant(fq: &Fq, pos: usize, leaf: &Leaf) -> Result<Option<FieldElem>> {
    Ok(match leaf {
        Leaf::Num(n) => Some(fq.from_i64((*n % fq.p() as u64) as i64)),
        Leaf::Var("g") if fq.n() > 1 => Some(fq.gen()),
        Leaf::Var("g") => return Err(err(pos, "g", format!("F_{} has no generator symbol", fq.q()))),
        Leaf::BigO(_) => return Err(err(pos, "O", "a precision marker is only allowed in a series")),
        Leaf::Var(_) => None,
    })
}

fn unknown(pos: usize, leaf: &Leaf, allowed: &str) -> Error {
    let name = match leaf {
        Leaf::Var(v) => v.to_string(),
        _ => "?".into(),
    };
    err(pos, name, format!("unknown identifier here (allowed: {})", allowed))
}

fn parse_with<T: Target>(src: &str, leaf: &dyn Fn(usize, Leaf) -> Result<T>) -> Result<T> {
    eval(&parse(src)?, leaf)
}

/// An element of F_q.
pub fn field_elem(src: &str, fq: &Fq) -> Result<FieldElem> {
    parse_with(src, &|pos, l| constant(fq, pos, &l)?.ok_or_else(|| unknown(pos, &l, "g")))
}

/// A polynomial in x over F_q.
pub fn poly(src: &str, fq: &Fq) -> Result<Poly<FieldElem>> {
    parse_with(src, &|pos, l| match l {
        Leaf::Var("x") => Ok(Poly::x(&fq.zero())),
        _ => constant(fq, pos, &l)?.map(Poly::constant).ok_or_else(|| unknown(pos, &l, "x, g")),
    })
}

/// A rational function in x over F_q.
pub fn ratfunc(src: &str, fq: &Fq) -> Result<RatFunc<FieldElem>> {
    parse_with(src, &|pos, l| match l {
        Leaf::Var("x") => Ok(RatFunc::var(&fq.zero(), "x")),
        _ => constant(fq, pos, &l)?.map(|c| RatFunc::constant(c, "x")).ok_or_else(|| unknown(pos, &l, "x, g")),
    })
}

/// A polynomial in x, y over F_q.
pub fn poly2(src: &str, fq: &Fq) -> Result<Poly2<FieldElem>> {
    parse_with(src, &|pos, l| match l {
        Leaf::Var("x") => Ok(Poly2::x(&fq.zero())),
        Leaf::Var("y") => Ok(Poly2::y(&fq.zero())),
        _ => constant(fq, pos, &l)?.map(Poly2::constant).ok_or_else(|| unknown(pos, &l, "x, y, g")),
    })
}

/// A rational function in x, y over F_q.
pub fn ratfunc2(src: &str, fq: &Fq) -> Result<RatFunc2<FieldElem>> {
    parse_with(src, &|pos, l| match l {
        Leaf::Var("x") => Ok(RatFunc2::x(&fq.zero())),
        Leaf::Var("y") => Ok(RatFunc2::y(&fq.zero())),
        _ => constant(fq, pos, &l)?.map(RatFunc2::constant).ok_or_else(|| unknown(pos, &l, "x, y, g")),
    })
}

/// Coefficient fields for series: F_q itself, or F_q(u).
pub trait SeriesBase: Field {
    fn embed(c: FieldElem, proto: &Self) -> Self;
    /// The coefficient named by an identifier other than t and g.
    fn named(name: &str, proto: &Self) -> Option<Self>;
}

impl SeriesBase for FieldElem {
    fn embed(c: FieldElem, _: &Self) -> Self {
        c
    }
    fn named(_: &str, _: &Self) -> Option<Self> {
        None
    }
}

impl SeriesBase for RatFunc<FieldElem> {
    fn embed(c: FieldElem, _: &Self) -> Self {
        RatFunc::constant(c, "u")
    }
    fn named(name: &str, proto: &Self) -> Option<Self> {
        (name == "u").then(|| RatFunc::var(proto.base_proto(), "u"))
    }
}

fn series_leaf<E: SeriesBase>(fq: &Fq, proto: &E, pos: usize, l: Leaf) -> Result<LaurentSeries<E>> {
    match l {
        Leaf::Var("t") => Ok(LaurentSeries::t_pow(proto, 1)),
        Leaf::BigO(n) => Ok(LaurentSeries::zero(proto, n, "t")),
        Leaf::Var(v) if E::named(v, proto).is_some() => Ok(LaurentSeries::constant(E::named(v, proto).unwrap(), EXACT)),
        _ => {
            let allowed = if E::named("u", proto).is_some() { "t, u, g" } else { "t, g" };
            let c = constant(fq, pos, &l)?.ok_or_else(|| unknown(pos, &l, allowed))?;
            Ok(LaurentSeries::constant(E::embed(c, proto), EXACT))
        }
    }
}

/// A Laurent series in t; the O(t^N) marker is required.
pub fn series<E: SeriesBase>(src: &str, fq: &Fq, proto: &E) -> Result<LaurentSeries<E>> {
    let e = parse(src)?;
    if !e.has_big_o() {
        return Err(err(src.chars().count(), src, "a series needs an explicit O(t^N) marker"));
    }
    eval(&e, &|pos, l| series_leaf(fq, proto, pos, l))
}

/// `[a_{s-1}; ...; a_0]`. Components without their own O(t^N) inherit the smallest
/// precision among the others; at least one marker is required.
pub fn witt<E: SeriesBase>(src: &str, fq: &Fq, proto: &E) -> Result<WittVector<E>> {
    let body = src.trim();
    let inner = body
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err(0, body.chars().next().map(String::from).unwrap_or_default(), "a Witt vector reads [a_{s-1}; ...; a_0]"))?;
    let offset = src.find('[').unwrap_or(0) + 1;
    let mut comps = vec![];
    let mut start = 0;
    for part in inner.split(';') {
        let e = parse(part).map_err(|e| shift(e, offset + start))?;
        comps.push((e, offset + start));
        start += part.len() + 1;
    }
    let marked: Vec<_> = comps.iter().filter(|(e, _)| e.has_big_o()).collect();
    if marked.is_empty() {
        return Err(err(src.len(), src, "a Witt vector needs an explicit O(t^N) marker"));
    }
    let mut out = vec![];
    for (e, off) in &comps {
        let s = eval(e, &|pos, l| series_leaf(fq, proto, pos, l)).map_err(|e| shift(e, *off))?;
        out.push(s);
    }
    let prec = out.iter().filter(|s| !s.is_exact()).map(|s| s.prec()).min().unwrap();
    let out = out.into_iter().map(|s| if s.is_exact() { s.truncate(prec) } else { s }).collect();
    WittVector::new(out)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, token, msg } => Error::Parse { pos: pos + by, token, msg },
        e => e,
    }
}

/// A divisor on P^1 such as `2*inf + (x^2 + x + 1) - (x)`. Finite places are monic
/// irreducible polynomials in x, written in parentheses or brackets.
pub fn divisor(src: &str, fq: &Fq) -> Result<Divisor> {
    let toks = tokenize(src)?;
    let end = src.chars().count();
    let mut p = Parser { toks: &toks, i: 0, end };
    let mut d = Divisor::zero();
    let mut sign = 1;
    if p.eat('-') {
        sign = -1;
    }
    loop {
        let mut n = 1i64;
        if let Some(Tok::Num(k)) = p.peek() {
            n = *k as i64;
            p.i += 1;
            p.expect('*')?;
        }
        let pos = p.pos();
        let place = match p.peek().cloned() {
            Some(Tok::Ident(s)) if s == "inf" => {
                p.i += 1;
                Place::Infinity
            }
            Some(Tok::Sym(open @ ('(' | '['))) => {
                p.i += 1;
                let e = p.expr()?;
                p.expect(if open == '(' { ')' } else { ']' })?;
                let f = eval(&e, &|pos, l| match l {
                    Leaf::Var("x") => Ok(Poly::x(&fq.zero())),
                    _ => constant(fq, pos, &l)?.map(Poly::constant).ok_or_else(|| unknown(pos, &l, "x, g")),
                })?;
                if f.deg() < 1 {
                    return Err(err(pos, open.to_string(), "a place needs a polynomial of positive degree"));
                }
                Place::finite(f.monic()).map_err(|_| err(pos, f.to_string(), "not an irreducible polynomial"))?
            }
            _ => return Err(err(pos, p.shown(), "expected `inf` or a parenthesized polynomial")),
        };
        d.add_point(place, sign * n);
        if p.eat('+') {
            sign = 1;
        } else if p.eat('-') {
            sign = -1;
        } else if p.i == toks.len() {
            return Ok(d);
        } else {
            return Err(err(p.pos(), p.shown(), "expected `+`, `-` or the end"));
        }
    }
}
