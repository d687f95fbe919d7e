//! Typed evaluation of parsed expressions.
//!
//! Values are scalars in `Q(q)`, polynomials in `t`, or elements of `TL_m`.
//! Element sizes are inferred bottom-up: `id_m`, `jw(m)` and `x@m` fix the
//! size, `e_i` only asks for at least `i + 1` strands. A scalar next to an
//! element in `+` or `-` stands for that multiple of the identity.

use std::fmt;

use num_bigint::BigInt;

use super::parser::{BinOp, Expr, ExprKind, Func, Span};
use crate::annular::annular_trace;
use crate::error::{Error, Result};
use crate::jones_wenzl::jones_wenzl_capped;
use crate::scalar::{NumericParams, Scalar, TPoly};
use crate::tl::TLElement;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    Poly(TPoly),
    Element(TLElement),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Element(x) => write!(f, "{x}"),
        }
    }
}

impl Value {
    /// Renders the value with `q` and `t` replaced by numbers.
    pub fn numeric(&self, p: &NumericParams) -> Result<String> {
        Ok(match self {
            Value::Scalar(s) => format!("{}", s.eval(p.q)?),
            Value::Poly(x) => format!("{}", x.eval(p.q, p.t)?),
            Value::Element(x) => {
                if x.is_zero() {
                    return Ok("0".to_string());
                }
                let mut parts = Vec::new();
                for (d, c) in x.terms() {
                    let one = TLElement::from_diagram(d.clone()).to_string();
                    parts.push(format!("{}*{one}", c.eval(p.q)?));
                }
                parts.join(" + ")
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ty {
    Scalar,
    Poly,
    Elem { fixed: Option<usize>, min: usize },
}

fn type_error(message: impl Into<String>, span: Span) -> Error {
    Error::Type {
        message: message.into(),
        start: span.start,
        end: span.end,
    }
}

fn describe(ty: Ty) -> String {
    match ty {
        Ty::Scalar => "a scalar".into(),
        Ty::Poly => "a polynomial in t".into(),
        Ty::Elem { fixed: Some(m), .. } => format!("an element of TL_{m}"),
        Ty::Elem { min, .. } => format!("an element of size >= {min}"),
    }
}

fn unify(a: (Option<usize>, usize), b: (Option<usize>, usize), span: Span) -> Result<Ty> {
    let fixed = match (a.0, b.0) {
        (Some(x), Some(y)) if x != y => {
            return Err(type_error(format!("size mismatch: TL_{x} vs TL_{y}"), span));
        }
        (x, y) => x.or(y),
    };
    let min = a.1.max(b.1);
    if let Some(m) = fixed {
        if min > m {
            return Err(type_error(format!("needs at least {min} strands but the size is {m}"), span));
        }
    }
    Ok(Ty::Elem { fixed, min })
}

fn infer(e: &Expr) -> Result<Ty> {
    let span = e.span;
    Ok(match &e.kind {
        ExprKind::Int(_) | ExprKind::Delta | ExprKind::Q => Ty::Scalar,
        ExprKind::T => Ty::Poly,
        ExprKind::Gen(i) => {
            if *i == 0 {
                return Err(type_error("generators are numbered from e_1", span));
            }
            Ty::Elem { fixed: None, min: i + 1 }
        }
        ExprKind::Id(m) => Ty::Elem { fixed: Some(*m), min: *m },
        ExprKind::Jw(m) => {
            if *m == 0 {
                return Err(type_error("jw needs at least one strand", span));
            }
            Ty::Elem { fixed: Some(*m), min: *m }
        }
        ExprKind::Neg(x) => infer(x)?,
        ExprKind::Bin(op, l, r) => {
            let (a, b) = (infer(l)?, infer(r)?);
            match (op, a, b) {
                (_, Ty::Scalar, Ty::Scalar) => Ty::Scalar,
                (_, Ty::Scalar | Ty::Poly, Ty::Scalar | Ty::Poly) => Ty::Poly,
                (_, Ty::Elem { fixed: f1, min: m1 }, Ty::Elem { fixed: f2, min: m2 }) if *op != BinOp::Div => {
                    unify((f1, m1), (f2, m2), span)?
                }
                (BinOp::Div, Ty::Elem { .. }, Ty::Scalar) => a,
                (BinOp::Add | BinOp::Sub | BinOp::Mul, Ty::Elem { .. }, Ty::Scalar) => a,
                (BinOp::Add | BinOp::Sub | BinOp::Mul, Ty::Scalar, Ty::Elem { .. }) => b,
                _ => {
                    return Err(type_error(
                        format!("cannot combine {} with {} here", describe(a), describe(b)),
                        span,
                    ))
                }
            }
        }
        ExprKind::Pow(x, k) => {
            let ty = infer(x)?;
            if *k < 0 && ty != Ty::Scalar {
                return Err(type_error(format!("negative power of {}", describe(ty)), span));
            }
            ty
        }
        ExprKind::Ascribe(x, m) => match infer(x)? {
            Ty::Scalar => Ty::Elem { fixed: Some(*m), min: *m },
            Ty::Elem { fixed, min } => unify((fixed, min), (Some(*m), *m), span)?,
            ty => return Err(type_error(format!("cannot give {} a size", describe(ty)), span)),
        },
        ExprKind::Call(func, args) => {
            let mut tys = Vec::new();
            for a in args {
                match infer(a)? {
                    Ty::Elem { fixed, min } => tys.push((fixed, min)),
                    ty => {
                        return Err(type_error(
                            format!("{} expects an element, got {}", func_name(*func), describe(ty)),
                            a.span,
                        ))
                    }
                }
            }
            if let [a, b] = tys[..] {
                unify(a, b, span)?;
            }
            match func {
                Func::Tr | Func::Inner => Ty::Scalar,
                Func::Atr => Ty::Poly,
                Func::Adj => infer(&args[0])?,
            }
        }
    })
}

fn func_name(f: Func) -> &'static str {
    match f {
        Func::Tr => "tr",
        Func::Atr => "atr",
        Func::Inner => "inner",
        Func::Adj => "adj",
    }
}

struct Evaluator {
    max_strands: usize,
}

impl Evaluator {
    /// Concrete size of an element type, refusing sizes above the cap.
    fn size(&self, fixed: Option<usize>, min: usize) -> Result<usize> {
        let m = fixed.unwrap_or(min);
        if m > self.max_strands {
            return Err(Error::ResourceCap {
                what: "strands",
                requested: m,
                cap: self.max_strands,
            });
        }
        Ok(m)
    }

    /// Evaluates `e` with element-valued nodes living in `TL_m`.
    fn eval(&self, e: &Expr, m: usize) -> Result<Value> {
        Ok(match &e.kind {
            ExprKind::Int(n) => Value::Scalar(Scalar::from_bigint(BigInt::from(*n))),
            ExprKind::Delta => Value::Scalar(Scalar::delta()),
            ExprKind::Q => Value::Scalar(Scalar::q()),
            ExprKind::T => Value::Poly(TPoly::t()),
            ExprKind::Gen(i) => Value::Element(TLElement::generator(m, *i)?),
            ExprKind::Id(_) => Value::Element(TLElement::identity(m)),
            ExprKind::Jw(k) => Value::Element(jones_wenzl_capped(*k, self.max_strands)?),
            ExprKind::Neg(x) => match self.eval(x, m)? {
                Value::Scalar(s) => Value::Scalar(-s),
                Value::Poly(p) => Value::Poly(-&p),
                Value::Element(x) => Value::Element(-&x),
            },
            ExprKind::Bin(op, l, r) => binary(*op, self.eval(l, m)?, self.eval(r, m)?, m)?,
            ExprKind::Pow(x, k) => power(self.eval(x, m)?, *k, m)?,
            ExprKind::Ascribe(x, _) => match self.eval(x, m)? {
                Value::Scalar(s) => Value::Element(TLElement::from_scalar(m, s)),
                v => v,
            },
            ExprKind::Call(func, args) => {
                let (mut fixed, mut min) = (None, 0);
                for a in args {
                    if let Ty::Elem { fixed: f, min: k } = infer(a)? {
                        fixed = fixed.or(f);
                        min = min.max(k);
                    }
                }
                let size = self.size(fixed, min)?;
                let mut xs = Vec::new();
                for a in args {
                    match self.eval(a, size)? {
                        Value::Element(x) => xs.push(x),
                        _ => unreachable!("checked by infer"),
                    }
                }
                match func {
                    Func::Tr => Value::Scalar(xs[0].markov_trace()),
                    Func::Atr => Value::Poly(annular_trace(&xs[0])?),
                    Func::Inner => Value::Scalar(xs[0].inner(&xs[1])?),
                    Func::Adj => Value::Element(xs[0].adjoint()),
                }
            }
        })
    }
}

fn binary(op: BinOp, a: Value, b: Value, m: usize) -> Result<Value> {
    use Value::*;
    let lift = |s| TLElement::from_scalar(m, s);
    Ok(match (op, a, b) {
        (BinOp::Add, Scalar(x), Scalar(y)) => Scalar(&x + &y),
        (BinOp::Sub, Scalar(x), Scalar(y)) => Scalar(&x - &y),
        (BinOp::Mul, Scalar(x), Scalar(y)) => Scalar(&x * &y),
        (BinOp::Div, Scalar(x), Scalar(y)) => Scalar(x.checked_div(&y)?),
        (op, Scalar(x), Poly(y)) => binary(op, Poly(x.into()), Poly(y), m)?,
        (op, Poly(x), Scalar(y)) if op != BinOp::Div => binary(op, Poly(x), Poly(y.into()), m)?,
        (BinOp::Div, Poly(x), Scalar(y)) => Poly(x.div_scalar(&y)?),
        (BinOp::Add, Poly(x), Poly(y)) => Poly(&x + &y),
        (BinOp::Sub, Poly(x), Poly(y)) => Poly(&x - &y),
        (BinOp::Mul, Poly(x), Poly(y)) => Poly(&x * &y),
        (BinOp::Div, Poly(x), Poly(y)) => Poly(x.checked_div(&y)?),
        (BinOp::Add, Element(x), Element(y)) => Element(x.try_add(&y)?),
        (BinOp::Sub, Element(x), Element(y)) => Element(x.try_sub(&y)?),
        (BinOp::Mul, Element(x), Element(y)) => Element(x.multiply(&y)?),
        (BinOp::Add, Element(x), Scalar(s)) => Element(x.try_add(&lift(s))?),
        (BinOp::Add, Scalar(s), Element(x)) => Element(lift(s).try_add(&x)?),
        (BinOp::Sub, Element(x), Scalar(s)) => Element(x.try_sub(&lift(s))?),
        (BinOp::Sub, Scalar(s), Element(x)) => Element(lift(s).try_sub(&x)?),
        (BinOp::Mul, Element(x), Scalar(s)) | (BinOp::Mul, Scalar(s), Element(x)) => Element(x.scale(&s)),
        (BinOp::Div, Element(x), Scalar(s)) => Element(x.scale(&s.inv()?)),
        (op, a, b) => unreachable!("{op:?} on {a:?} and {b:?} passed type checking"),
    })
}

fn power(v: Value, k: i64, m: usize) -> Result<Value> {
    let k32 = i32::try_from(k).map_err(|_| Error::Domain(format!("exponent {k} out of range")))?;
    Ok(match v {
        Value::Scalar(s) => Value::Scalar(s.pow(k32)?),
        Value::Poly(p) => {
            let mut acc = TPoly::one();
            for _ in 0..k {
                acc = &acc * &p;
            }
            Value::Poly(acc)
        }
        Value::Element(x) => {
            let mut acc = TLElement::identity(m);
            for _ in 0..k {
                acc = acc.multiply(&x)?;
            }
            Value::Element(acc)
        }
    })
}

/// Type-checks and evaluates `e` exactly; element sizes above
/// `max_strands` are refused.
pub fn evaluate(e: &Expr, max_strands: usize) -> Result<Value> {
    let ev = Evaluator { max_strands };
    let m = match infer(e)? {
        Ty::Elem { fixed, min } => ev.size(fixed, min)?,
        _ => 0,
    };
    ev.eval(e, m)
}
