//! Lexer and Pratt parser for the expression language.
//!
//! ```text
//! expr  := expr ('+' | '-') expr | expr ('*' | '/') expr | '-' expr
//!        | expr '^' ['-'] INT | expr '@' INT | atom
//! atom  := INT | 'd' | 'q' | 't' | 'e_' INT | 'id_' INT | 'jw' '(' INT ')'
//!        | FUNC '(' expr (',' expr)* ')' | '(' expr ')'
//! ```

use std::fmt;

use crate::error::{Error, Result};

/// Byte range in the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    fn to(self, other: Span) -> Span {
        Span {
            start: self.start,
            end: other.end,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn binding(self) -> (u8, u8) {
        match self {
            BinOp::Add | BinOp::Sub => (1, 2),
            BinOp::Mul | BinOp::Div => (3, 4),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Tr,
    Atr,
    Inner,
    Adj,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Tr => "tr",
            Func::Atr => "atr",
            Func::Inner => "inner",
            Func::Adj => "adj",
        }
    }

    fn arity(self) -> usize {
        match self {
            Func::Inner => 2,
            _ => 1,
        }
    }
}

const UNARY_BP: u8 = 5;
const POW_BP: u8 = 7;
const ASCRIBE_BP: u8 = 9;

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Int(u64),
    Delta,
    Q,
    T,
    Gen(usize),
    Id(usize),
    Jw(usize),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Ascribe(Box<Expr>, usize),
    Call(Func, Vec<Expr>),
}

/// Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    fn new(kind: ExprKind, span: Span) -> Self {
        Self { kind, span }
    }

    /// Binding strength used by the printer; atoms are strongest.
    fn strength(&self) -> u8 {
        match &self.kind {
            ExprKind::Bin(op, ..) => op.binding().0,
            ExprKind::Neg(_) => UNARY_BP,
            ExprKind::Pow(..) => POW_BP,
            ExprKind::Ascribe(..) => ASCRIBE_BP,
            _ => u8::MAX,
        }
    }
}

struct Wrapped<'a>(&'a Expr, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Int(n) => write!(f, "{n}"),
            ExprKind::Delta => write!(f, "d"),
            ExprKind::Q => write!(f, "q"),
            ExprKind::T => write!(f, "t"),
            ExprKind::Gen(i) => write!(f, "e_{i}"),
            ExprKind::Id(m) => write!(f, "id_{m}"),
            ExprKind::Jw(m) => write!(f, "jw({m})"),
            ExprKind::Neg(x) => write!(f, "-{}", Wrapped(x, x.strength() < UNARY_BP)),
            ExprKind::Bin(op, l, r) => {
                let (lbp, rbp) = op.binding();
                write!(
                    f,
                    "{} {} {}",
                    Wrapped(l, l.strength() < lbp),
                    op.symbol(),
                    Wrapped(r, r.strength() < rbp)
                )
            }
            ExprKind::Pow(x, k) => write!(f, "{}^{k}", Wrapped(x, x.strength() < POW_BP)),
            ExprKind::Ascribe(x, m) => write!(f, "{}@{m}", Wrapped(x, x.strength() < ASCRIBE_BP)),
            ExprKind::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
    Eof,
}

fn syntax(message: impl Into<String>, span: Span) -> Error {
    Error::Syntax {
        message: message.into(),
        start: span.start,
        end: span.end,
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let span = Span { start, end: i };
            let n = src[start..i]
                .parse()
                .map_err(|_| syntax("integer literal too large", span))?;
            out.push((Tok::Int(n), span));
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), Span { start, end: i }));
        } else if b"+-*/^()@,".contains(&c) {
            i += 1;
            out.push((Tok::Sym(c as char), Span { start, end: i }));
        } else {
            let ch = src[start..].chars().next().expect("nonempty");
            let end = start + ch.len_utf8();
            return Err(syntax(format!("unexpected character '{ch}'"), Span { start, end }));
        }
    }
    out.push((Tok::Eof, Span { start: src.len(), end: src.len() }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<Span> {
        match self.bump() {
            (Tok::Sym(s), span) if s == c => Ok(span),
            (tok, span) => Err(syntax(format!("expected '{c}', found {}", describe(&tok)), span)),
        }
    }

    fn int(&mut self) -> Result<(u64, Span)> {
        match self.bump() {
            (Tok::Int(n), span) => Ok((n, span)),
            (tok, span) => Err(syntax(format!("expected an integer, found {}", describe(&tok)), span)),
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Expr> {
        let mut lhs = self.prefix()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('/') => BinOp::Div,
                Tok::Sym('^') => {
                    if POW_BP < min_bp {
                        break;
                    }
                    self.bump();
                    let neg = if *self.peek() == Tok::Sym('-') {
                        self.bump();
                        true
                    } else {
                        false
                    };
                    let (k, span) = self.int()?;
                    let k = i64::try_from(k).map_err(|_| syntax("exponent too large", span))?;
                    let span = lhs.span.to(span);
                    lhs = Expr::new(ExprKind::Pow(Box::new(lhs), if neg { -k } else { k }), span);
                    continue;
                }
                Tok::Sym('@') => {
                    if ASCRIBE_BP < min_bp {
                        break;
                    }
                    self.bump();
                    let (m, span) = self.int()?;
                    let span = lhs.span.to(span);
                    lhs = Expr::new(ExprKind::Ascribe(Box::new(lhs), m as usize), span);
                    continue;
                }
                _ => break,
            };
            let (lbp, rbp) = op.binding();
            if lbp < min_bp {
                break;
            }
            self.bump();
            let rhs = self.expr(rbp)?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr::new(ExprKind::Bin(op, Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Expr> {
        let (tok, span) = self.bump();
        let kind = match tok {
            Tok::Int(n) => ExprKind::Int(n),
            Tok::Sym('-') => {
                let x = self.expr(UNARY_BP)?;
                let span = span.to(x.span);
                return Ok(Expr::new(ExprKind::Neg(Box::new(x)), span));
            }
            Tok::Sym('(') => {
                let mut x = self.expr(0)?;
                let close = self.expect(')')?;
                x.span = span.to(close);
                return Ok(x);
            }
            Tok::Ident(name) => return self.ident(&name, span),
            tok => return Err(syntax(format!("expected an expression, found {}", describe(&tok)), span)),
        };
        Ok(Expr::new(kind, span))
    }

    fn ident(&mut self, name: &str, span: Span) -> Result<Expr> {
        let indexed = |prefix: &str| -> Result<Option<usize>> {
            match name.strip_prefix(prefix) {
                Some(digits) if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) => digits
                    .parse()
                    .map(Some)
                    .map_err(|_| syntax("index too large", span)),
                Some(_) => Err(syntax(format!("malformed index in '{name}'"), span)),
                None => Ok(None),
            }
        };
        let kind = match name {
            "d" => ExprKind::Delta,
            "q" => ExprKind::Q,
            "t" => ExprKind::T,
            "jw" => {
                self.expect('(')?;
                let (m, _) = self.int()?;
                let close = self.expect(')')?;
                return Ok(Expr::new(ExprKind::Jw(m as usize), span.to(close)));
            }
            "tr" | "atr" | "inner" | "adj" => {
                let func = match name {
                    "tr" => Func::Tr,
                    "atr" => Func::Atr,
                    "inner" => Func::Inner,
                    _ => Func::Adj,
                };
                self.expect('(')?;
                let mut args = vec![self.expr(0)?];
                while *self.peek() == Tok::Sym(',') {
                    self.bump();
                    args.push(self.expr(0)?);
                }
                let close = self.expect(')')?;
                let span = span.to(close);
                if args.len() != func.arity() {
                    return Err(syntax(
                        format!("{} takes {} argument(s), got {}", func.name(), func.arity(), args.len()),
                        span,
                    ));
                }
                return Ok(Expr::new(ExprKind::Call(func, args), span));
            }
            _ => {
                if let Some(i) = indexed("e_")? {
                    ExprKind::Gen(i)
                } else if let Some(m) = indexed("id_")? {
                    ExprKind::Id(m)
                } else {
                    return Err(syntax(format!("unknown identifier '{name}'"), span));
                }
            }
        };
        Ok(Expr::new(kind, span))
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(n) => format!("'{n}'"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::Eof => "end of input".to_string(),
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr(0)?;
    match p.bump() {
        (Tok::Eof, _) => Ok(e),
        (tok, span) => Err(syntax(format!("unexpected {}", describe(&tok)), span)),
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    /// One expression per line.
    pub(crate) fn corpus() -> Vec<&'static str> {
        include_str!("../../tests/data/corpus.txt").lines().collect()
    }

    #[test]
    fn corpus_round_trips() {
        let corpus = corpus();
        assert_eq!(corpus.len(), 50);
        for src in corpus {
            let e = parse(src).unwrap_or_else(|err| panic!("{src}: {err}"));
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap(), e, "{src} printed as {printed}");
            assert_eq!(parse(&printed).unwrap().to_string(), printed);
        }
    }

    #[test]
    fn precedence() {
        let show = |s: &str| parse(s).unwrap().to_string();
        assert_eq!(show("1+2*3"), "1 + 2 * 3");
        assert_eq!(show("(1+2)*3"), "(1 + 2) * 3");
        assert_eq!(show("-q^2"), "-q^2");
        assert_eq!(show("((q))"), "q");
        assert_eq!(show("(1-2)-3"), "1 - 2 - 3");
        assert_eq!(show("-(q*d)"), "-(q * d)");
        assert_eq!(show("(-q)*d"), "-q * d");
        assert!(matches!(parse("-q^2").unwrap().kind, ExprKind::Neg(_)));
        assert!(matches!(parse("e_1 + e_2@3").unwrap().kind, ExprKind::Bin(BinOp::Add, ..)));
    }

    #[test]
    fn spans() {
        let e = parse("1 + e_12").unwrap();
        assert_eq!(e.span, Span { start: 0, end: 8 });
        let ExprKind::Bin(_, _, r) = &e.kind else { panic!() };
        assert_eq!(r.span, Span { start: 4, end: 8 });
        assert_ne!(parse("(q)").unwrap().span, parse("q").unwrap().span);
        assert_eq!(parse("(q)").unwrap(), parse("q").unwrap());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let cases = [
            ("1 +", 3, 3),
            ("1 $ 2", 2, 3),
            ("e_", 0, 2),
            ("e_x", 0, 3),
            ("foo", 0, 3),
            ("jw(x)", 3, 4),
            ("(1", 2, 2),
            ("1 2", 2, 3),
            ("q^t", 2, 3),
            ("inner(e_1)", 0, 10),
            ("tr(e_1, e_1)", 0, 12),
            ("99999999999999999999999", 0, 23),
        ];
        for (src, start, end) in cases {
            match parse(src) {
                Err(Error::Syntax { start: s, end: e, .. }) => assert_eq!((s, e), (start, end), "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0u64..20).prop_map(ExprKind::Int),
            Just(ExprKind::Delta),
            Just(ExprKind::Q),
            Just(ExprKind::T),
            (1usize..5).prop_map(ExprKind::Gen),
            (0usize..5).prop_map(ExprKind::Id),
            (1usize..5).prop_map(ExprKind::Jw),
        ]
        .prop_map(|k| Expr::new(k, Span::default()));
        leaf.prop_recursive(4, 32, 2, |inner| {
            let op = prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul), Just(BinOp::Div)];
            let func = prop_oneof![Just(Func::Tr), Just(Func::Atr), Just(Func::Adj)];
            prop_oneof![
                inner.clone().prop_map(|x| ExprKind::Neg(Box::new(x))),
                (op, inner.clone(), inner.clone()).prop_map(|(o, l, r)| ExprKind::Bin(o, Box::new(l), Box::new(r))),
                (inner.clone(), -3i64..4).prop_map(|(x, k)| ExprKind::Pow(Box::new(x), k)),
                (inner.clone(), 0usize..6).prop_map(|(x, m)| ExprKind::Ascribe(Box::new(x), m)),
                (func, inner.clone()).prop_map(|(f, x)| ExprKind::Call(f, vec![x])),
                (inner.clone(), inner).prop_map(|(a, b)| ExprKind::Call(Func::Inner, vec![a, b])),
            ]
            .prop_map(|k| Expr::new(k, Span::default()))
        })
    }

    proptest! {
        #[test]
        fn printed_ast_reparses(e in arb_expr()) {
            let printed = e.to_string();
            prop_assert_eq!(parse(&printed).unwrap(), e);
        }
    }
}
