//! S-expression syntax for formulas.
//!
//! ```text
//! F := true | false
//!    | (in t t) | (notin t t) | (eq t t) | (before t t) | (at t t)
//!    | (low t) | (high t) | (E! t) | (P t) | (Def t..) | (dual-Def t..)
//!    | (not F) | (and F..) | (or F..) | (implies F F) | (iff F F)
//!    | (Q x F)       Q ∈ forall exists forallS existsS forallP existsP forallF existsF
//!    | (M F)         M ∈ dia box past future always-past always-future
//! t := x | (f t)
//! ```
//! `Def` is one of the [`DefPred`] names, e.g. `(Lev s)` or `(Sub x y)`.

use std::fmt;

use super::{DefPred, Formula, ModalOp, Quantifier, Term, VarKind};
use crate::error::Result;
use crate::parse::Cursor;

pub fn parse_formula(src: &str) -> Result<Formula> {
    let mut cur = Cursor::new(src);
    let f = formula(&mut cur)?;
    cur.expect_end()?;
    Ok(f)
}

pub fn parse_term(src: &str) -> Result<Term> {
    let mut cur = Cursor::new(src);
    let t = term(&mut cur)?;
    cur.expect_end()?;
    Ok(t)
}

fn quantifier(head: &str) -> Option<(Quantifier, VarKind)> {
    Some(match head {
        "forall" => (Quantifier::All, VarKind::Set),
        "exists" => (Quantifier::Some, VarKind::Set),
        "forallS" => (Quantifier::All, VarKind::Stage),
        "existsS" => (Quantifier::Some, VarKind::Stage),
        "forallP" => (Quantifier::All, VarKind::Pred),
        "existsP" => (Quantifier::Some, VarKind::Pred),
        "forallF" => (Quantifier::All, VarKind::Func),
        "existsF" => (Quantifier::Some, VarKind::Func),
        _ => return None,
    })
}

fn quantifier_name(q: Quantifier, k: VarKind) -> &'static str {
    match (q, k) {
        (Quantifier::All, VarKind::Set) => "forall",
        (Quantifier::Some, VarKind::Set) => "exists",
        (Quantifier::All, VarKind::Stage) => "forallS",
        (Quantifier::Some, VarKind::Stage) => "existsS",
        (Quantifier::All, VarKind::Pred) => "forallP",
        (Quantifier::Some, VarKind::Pred) => "existsP",
        (Quantifier::All, VarKind::Func) => "forallF",
        (Quantifier::Some, VarKind::Func) => "existsF",
    }
}

fn modal(head: &str) -> Option<ModalOp> {
    Some(match head {
        "dia" => ModalOp::Dia,
        "box" => ModalOp::Box,
        "past" => ModalOp::Past,
        "future" => ModalOp::Future,
        "always-past" => ModalOp::AlwaysPast,
        "always-future" => ModalOp::AlwaysFuture,
        _ => return None,
    })
}

fn modal_name(op: ModalOp) -> &'static str {
    match op {
        ModalOp::Dia => "dia",
        ModalOp::Box => "box",
        ModalOp::Past => "past",
        ModalOp::Future => "future",
        ModalOp::AlwaysPast => "always-past",
        ModalOp::AlwaysFuture => "always-future",
    }
}

fn formula(cur: &mut Cursor) -> Result<Formula> {
    if !cur.eat('(') {
        let start = cur.pos();
        return match cur.atom()? {
            "true" => Ok(Formula::True),
            "false" => Ok(Formula::False),
            other => Err(crate::Error::Parse {
                pos: start,
                msg: format!("expected a formula, found `{other}`"),
            }),
        };
    }
    let head_pos = cur.pos();
    let head = cur.atom()?;
    let f = if let Some((q, k)) = quantifier(head) {
        let v = cur.atom()?.to_string();
        Formula::Quant(q, k, v, Box::new(formula(cur)?))
    } else if let Some(op) = modal(head) {
        Formula::Modal(op, Box::new(formula(cur)?))
    } else {
        match head {
            "not" => Formula::Not(Box::new(formula(cur)?)),
            "and" | "or" => {
                let mut fs = Vec::new();
                while cur.peek() != Some(')') {
                    fs.push(formula(cur)?);
                }
                if head == "and" {
                    Formula::And(fs)
                } else {
                    Formula::Or(fs)
                }
            }
            "implies" => Formula::Implies(Box::new(formula(cur)?), Box::new(formula(cur)?)),
            "iff" => Formula::Iff(Box::new(formula(cur)?), Box::new(formula(cur)?)),
            "in" => Formula::In(term(cur)?, term(cur)?),
            "notin" => Formula::NotIn(term(cur)?, term(cur)?),
            "eq" => Formula::Eq(term(cur)?, term(cur)?),
            "before" => Formula::Before(term(cur)?, term(cur)?),
            "at" => Formula::FoundAt(term(cur)?, term(cur)?),
            "low" => Formula::Low(term(cur)?),
            "high" => Formula::High(term(cur)?),
            "E!" => Formula::Exists(term(cur)?),
            _ => {
                let (name, dual) = match head.strip_prefix("dual-") {
                    Some(rest) => (rest, true),
                    None => (head, false),
                };
                if let Some(pred) = DefPred::from_name(name) {
                    let args = (0..pred.arity())
                        .map(|_| term(cur))
                        .collect::<Result<Vec<_>>>()?;
                    Formula::Def { pred, args, dual }
                } else if dual {
                    return Err(crate::Error::Parse {
                        pos: head_pos,
                        msg: format!("unknown defined predicate `{name}`"),
                    });
                } else {
                    Formula::Pred(head.to_string(), term(cur)?)
                }
            }
        }
    };
    cur.expect(')')?;
    Ok(f)
}

fn term(cur: &mut Cursor) -> Result<Term> {
    if cur.eat('(') {
        let f = cur.atom()?.to_string();
        let t = term(cur)?;
        cur.expect(')')?;
        Ok(Term::App(f, Box::new(t)))
    } else {
        Ok(Term::Var(cur.atom()?.to_string()))
    }
}

pub(crate) fn write_formula(phi: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match phi {
        Formula::True => f.write_str("true"),
        Formula::False => f.write_str("false"),
        Formula::In(a, b) => write!(f, "(in {a} {b})"),
        Formula::NotIn(a, b) => write!(f, "(notin {a} {b})"),
        Formula::Eq(a, b) => write!(f, "(eq {a} {b})"),
        Formula::Before(a, b) => write!(f, "(before {a} {b})"),
        Formula::FoundAt(a, b) => write!(f, "(at {a} {b})"),
        Formula::Low(a) => write!(f, "(low {a})"),
        Formula::High(a) => write!(f, "(high {a})"),
        Formula::Exists(a) => write!(f, "(E! {a})"),
        Formula::Pred(p, a) => write!(f, "({p} {a})"),
        Formula::Def { pred, args, dual } => {
            f.write_str(if *dual { "(dual-" } else { "(" })?;
            f.write_str(pred.name())?;
            for a in args {
                write!(f, " {a}")?;
            }
            f.write_str(")")
        }
        Formula::Not(g) => write!(f, "(not {g})"),
        Formula::And(gs) | Formula::Or(gs) => {
            f.write_str(if matches!(phi, Formula::And(_)) {
                "(and"
            } else {
                "(or"
            })?;
            for g in gs {
                write!(f, " {g}")?;
            }
            f.write_str(")")
        }
        Formula::Implies(a, b) => write!(f, "(implies {a} {b})"),
        Formula::Iff(a, b) => write!(f, "(iff {a} {b})"),
        Formula::Quant(q, k, v, g) => write!(f, "({} {v} {g})", quantifier_name(*q, *k)),
        Formula::Modal(op, g) => write!(f, "({} {g})", modal_name(*op)),
    }
}
