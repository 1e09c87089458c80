//! Syntactic translations between the two-sorted, one-sorted and modal languages.
//!
//! Fresh variables use numbered suffixes (`t1`, `t2`, …) chosen to avoid every
//! name already in the input, so output is deterministic.

use super::{DefPred, Formula, Fresh, ModalOp, Quantifier, Term, VarKind};
use crate::error::{Error, Result};

fn bx(f: Formula) -> Box<Formula> {
    Box::new(f)
}

fn def(pred: DefPred, args: Vec<Term>) -> Formula {
    Formula::Def {
        pred,
        args,
        dual: false,
    }
}

fn sub(x: &Term, y: &Term) -> Formula {
    def(DefPred::Sub, vec![x.clone(), y.clone()])
}

/// Apply `go` under one connective; `None` for every other node.
fn map_connectives(
    f: &Formula,
    go: &mut dyn FnMut(&Formula) -> Result<Formula>,
) -> Result<Option<Formula>> {
    Ok(Some(match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Not(g) => Formula::Not(bx(go(g)?)),
        Formula::And(gs) => Formula::And(gs.iter().map(&mut *go).collect::<Result<_>>()?),
        Formula::Or(gs) => Formula::Or(gs.iter().map(&mut *go).collect::<Result<_>>()?),
        Formula::Implies(a, b) => Formula::Implies(bx(go(a)?), bx(go(b)?)),
        Formula::Iff(a, b) => Formula::Iff(bx(go(a)?), bx(go(b)?)),
        _ => return Ok(None),
    }))
}

/// Swap `∈` and `∉` throughout; defined predicates toggle their dual flag.
/// An involution on syntax.
pub fn dual_swap(f: &Formula) -> Formula {
    match f {
        Formula::In(a, b) => Formula::NotIn(a.clone(), b.clone()),
        Formula::NotIn(a, b) => Formula::In(a.clone(), b.clone()),
        Formula::Def { pred, args, dual } => Formula::Def {
            pred: *pred,
            args: args.clone(),
            dual: !dual,
        },
        Formula::Quant(q, k, v, g) => Formula::Quant(*q, *k, v.clone(), bx(dual_swap(g))),
        Formula::Modal(op, g) => Formula::Modal(*op, bx(dual_swap(g))),
        _ => map_connectives(f, &mut |g| Ok(dual_swap(g)))
            .expect("dual_swap is total")
            .unwrap_or_else(|| f.clone()),
    }
}

/// Restrict every first-order quantifier to helow sets. Defined predicates are
/// expanded first so their internal quantifiers are restricted too.
pub fn helow_relativize(f: &Formula) -> Formula {
    fn go(f: &Formula) -> Formula {
        match f {
            Formula::Quant(q, VarKind::Set, v, g) => {
                let guard = def(DefPred::Helow, vec![Term::Var(v.clone())]);
                let body = go(g);
                let body = match q {
                    Quantifier::All => Formula::Implies(bx(guard), bx(body)),
                    Quantifier::Some => Formula::And(vec![guard, body]),
                };
                Formula::Quant(*q, VarKind::Set, v.clone(), bx(body))
            }
            Formula::Quant(q, k, v, g) => Formula::Quant(*q, *k, v.clone(), bx(go(g))),
            Formula::Modal(op, g) => Formula::Modal(*op, bx(go(g))),
            _ => map_connectives(f, &mut |g| Ok(go(g)))
                .expect("total")
                .unwrap_or_else(|| f.clone()),
        }
    }
    go(&f.expand_defs())
}

fn star(f: &Formula, boolean: bool) -> Result<Formula> {
    let level = if boolean { DefPred::BLev } else { DefPred::Lev };
    match f {
        Formula::Before(s, t) => Ok(Formula::In(s.clone(), t.clone())),
        Formula::FoundAt(x, s) if boolean => Ok(Formula::Or(vec![
            sub(x, s),
            def(DefPred::CoSub, vec![x.clone(), s.clone()]),
        ])),
        Formula::FoundAt(x, s) => Ok(sub(x, s)),
        Formula::Low(x) if boolean => Ok(Formula::NotIn(x.clone(), x.clone())),
        Formula::High(x) if boolean => Ok(Formula::In(x.clone(), x.clone())),
        Formula::Low(_) | Formula::High(_) => Err(Error::Sort(
            "`low`/`high` are not in the ST language".into(),
        )),
        Formula::In(..)
        | Formula::NotIn(..)
        | Formula::Eq(..)
        | Formula::Pred(..)
        | Formula::Def { .. } => Ok(f.clone()),
        Formula::Exists(_) | Formula::Modal(..) => {
            Err(Error::Sort("modal syntax has no stage translation".into()))
        }
        Formula::Quant(q, VarKind::Stage, v, g) => {
            let guard = def(level, vec![Term::Var(v.clone())]);
            let body = star(g, boolean)?;
            let body = match q {
                Quantifier::All => Formula::Implies(bx(guard), bx(body)),
                Quantifier::Some => Formula::And(vec![guard, body]),
            };
            Ok(Formula::Quant(*q, VarKind::Set, v.clone(), bx(body)))
        }
        Formula::Quant(q, k, v, g) => Ok(Formula::Quant(*q, *k, v.clone(), bx(star(g, boolean)?))),
        _ => Ok(map_connectives(f, &mut |g| star(g, boolean))?.expect("connective")),
    }
}

/// Two-sorted stage language to the one-sorted language of levels: `s < t`
/// becomes `s ∈ t`, `x` found at `s` becomes `x ⊆ s`, and stage quantifiers
/// range over levels.
pub fn translate_star_st(f: &Formula) -> Result<Formula> {
    star(f, false)
}

/// The boolean version: `low x` becomes `x ∉ x`, `high x` becomes `x ∈ x`,
/// `x` found at `s` becomes `x ⊆ s ∨ x̄ ⊆ s`, and stage quantifiers range over
/// boolean-levels.
pub fn translate_star_bst(f: &Formula) -> Result<Formula> {
    star(f, true)
}

fn dia(f: Formula) -> Formula {
    Formula::Modal(ModalOp::Dia, bx(f))
}

/// Modalization of a non-modal formula: atoms become `◇α`, and `∃xφ`
/// becomes `◇∃x φ◇`. Defined predicates are expanded first.
pub fn modalize(f: &Formula) -> Result<Formula> {
    fn go(f: &Formula) -> Result<Formula> {
        match f {
            Formula::In(..) | Formula::Eq(..) | Formula::Exists(_) | Formula::Pred(..) => {
                Ok(dia(f.clone()))
            }
            Formula::NotIn(a, b) => Ok(Formula::Not(bx(dia(Formula::In(a.clone(), b.clone()))))),
            Formula::Quant(Quantifier::Some, k, v, g) => Ok(dia(Formula::Quant(
                Quantifier::Some,
                *k,
                v.clone(),
                bx(go(g)?),
            ))),
            Formula::Quant(Quantifier::All, k, v, g) => Ok(Formula::Modal(
                ModalOp::Box,
                bx(Formula::Quant(Quantifier::All, *k, v.clone(), bx(go(g)?))),
            )),
            Formula::Modal(..) => Err(Error::Sort("modalize expects a non-modal formula".into())),
            Formula::Before(..) | Formula::FoundAt(..) | Formula::Low(_) | Formula::High(_) => Err(
                Error::Sort("modalize expects the one-sorted language".into()),
            ),
            _ => Ok(map_connectives(f, &mut go)?.expect("connective")),
        }
    }
    go(&f.expand_defs())
}

/// Levelling with respect to the level variable `s`: quantifiers are bounded
/// by `s`, atoms require their second argument to lie below `s`, and modal
/// operators quantify over levels (`◇` any, `⟨` below `s`, `⟩` above `s`).
pub fn levelling(f: &Formula, s: &str) -> Result<Formula> {
    let f = f.expand_defs();
    let mut fresh = Fresh::new(&f);
    fresh.reserve([s.to_string()]);
    lev(&f, &Term::var(s), &mut fresh)
}

fn lev(f: &Formula, s: &Term, fresh: &mut Fresh) -> Result<Formula> {
    let over_levels = |q: Quantifier, extra: Option<Formula>, body: Formula, t: &str| {
        let mut guard = vec![def(DefPred::Lev, vec![Term::var(t)])];
        guard.extend(extra);
        let body = match q {
            Quantifier::Some => {
                guard.push(body);
                Formula::And(guard)
            }
            Quantifier::All => Formula::Implies(bx(Formula::And(guard)), bx(body)),
        };
        Formula::Quant(q, VarKind::Set, t.to_string(), bx(body))
    };
    match f {
        Formula::Eq(_, y) | Formula::In(_, y) => Ok(Formula::And(vec![f.clone(), sub(y, s)])),
        Formula::NotIn(x, y) => Ok(Formula::Not(bx(Formula::And(vec![
            Formula::In(x.clone(), y.clone()),
            sub(y, s),
        ])))),
        Formula::Exists(x) => Ok(Formula::And(vec![
            Formula::Eq(x.clone(), x.clone()),
            sub(x, s),
        ])),
        Formula::Pred(_, x) => Ok(Formula::And(vec![f.clone(), sub(x, s)])),
        Formula::Quant(q, VarKind::Set, v, g) => {
            let (v, g) = match s {
                Term::Var(n) if n == v => {
                    let w = fresh.name(v);
                    let g = g.substitute(v, &Term::var(&w));
                    (w, g)
                }
                _ => (v.clone(), (**g).clone()),
            };
            let guard = sub(&Term::Var(v.clone()), s);
            let body = lev(&g, s, fresh)?;
            let body = match q {
                Quantifier::All => Formula::Implies(bx(guard), bx(body)),
                Quantifier::Some => Formula::And(vec![guard, body]),
            };
            Ok(Formula::Quant(*q, VarKind::Set, v.clone(), bx(body)))
        }
        Formula::Quant(q, k @ (VarKind::Pred | VarKind::Func), v, g) => {
            Ok(Formula::Quant(*q, *k, v.clone(), bx(lev(g, s, fresh)?)))
        }
        Formula::Modal(op, g) => {
            let t = fresh.name("t");
            let tt = Term::var(&t);
            let body = lev(g, &tt, fresh)?;
            let (q, extra) = match op {
                ModalOp::Dia => (Quantifier::Some, None),
                ModalOp::Box => (Quantifier::All, None),
                ModalOp::Past => (Quantifier::Some, Some(Formula::In(tt.clone(), s.clone()))),
                ModalOp::AlwaysPast => (Quantifier::All, Some(Formula::In(tt.clone(), s.clone()))),
                ModalOp::Future => (Quantifier::Some, Some(Formula::In(s.clone(), tt.clone()))),
                ModalOp::AlwaysFuture => {
                    (Quantifier::All, Some(Formula::In(s.clone(), tt.clone())))
                }
            };
            Ok(over_levels(q, extra, body, &t))
        }
        Formula::Quant(_, VarKind::Stage, ..) | Formula::Before(..) | Formula::FoundAt(..) => Err(
            Error::Sort("levelling expects the one-sorted modal language".into()),
        ),
        Formula::Low(_) | Formula::High(_) | Formula::Def { .. } => {
            Err(Error::Sort("levelling expects primitive syntax".into()))
        }
        _ => Ok(map_connectives(f, &mut |g| lev(g, s, fresh))?.expect("connective")),
    }
}

/// Eliminate the tense operators in favour of `◇`:
/// `⟨φ` becomes `∃x◇(¬E!x ∧ φ•)` and `⟩φ` becomes `∃x(maxlev x ∧ ◇(∃v x∈v ∧ φ•))`.
pub fn mlt_bullet(f: &Formula) -> Result<Formula> {
    let mut fresh = Fresh::new(f);
    bullet(f, &mut fresh)
}

fn bullet(f: &Formula, fresh: &mut Fresh) -> Result<Formula> {
    match f {
        Formula::Modal(op, g) => {
            let inner = bullet(g, fresh)?;
            let past = |phi: Formula, fresh: &mut Fresh| {
                let x = fresh.name("x");
                Formula::Quant(
                    Quantifier::Some,
                    VarKind::Set,
                    x.clone(),
                    bx(dia(Formula::And(vec![
                        Formula::Not(bx(Formula::Exists(Term::var(&x)))),
                        phi,
                    ]))),
                )
            };
            let future = |phi: Formula, fresh: &mut Fresh| {
                let x = fresh.name("x");
                let v = fresh.name("v");
                let later = Formula::Quant(
                    Quantifier::Some,
                    VarKind::Set,
                    v.clone(),
                    bx(Formula::mem(&x, &v)),
                );
                Formula::Quant(
                    Quantifier::Some,
                    VarKind::Set,
                    x.clone(),
                    bx(Formula::And(vec![
                        def(DefPred::MaxLev, vec![Term::var(&x)]),
                        dia(Formula::And(vec![later, phi])),
                    ])),
                )
            };
            let neg = |g: Formula| Formula::Not(bx(g));
            Ok(match op {
                ModalOp::Dia | ModalOp::Box => Formula::Modal(*op, bx(inner)),
                ModalOp::Past => past(inner, fresh),
                ModalOp::AlwaysPast => neg(past(neg(inner), fresh)),
                ModalOp::Future => future(inner, fresh),
                ModalOp::AlwaysFuture => neg(future(neg(inner), fresh)),
            })
        }
        Formula::Quant(q, k, v, g) => Ok(Formula::Quant(*q, *k, v.clone(), bx(bullet(g, fresh)?))),
        _ => Ok(map_connectives(f, &mut |g| bullet(g, fresh))?.unwrap_or_else(|| f.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn levelling_renames_binder_named_like_level() {
        let f = levelling(&p("(forall s (in s s))"), "s").unwrap();
        let free: Vec<String> = f.free_vars().into_iter().map(|(n, _)| n).collect();
        assert_eq!(free, ["s"]);
        assert!(!f.to_string().contains("(forall s "));
    }

    #[test]
    fn dual_swap_is_involution() {
        let f = p("(forall x (and (in x y) (notin y x) (dual-Lev x) (Sub x y)))");
        assert_eq!(dual_swap(&dual_swap(&f)), f);
        assert_eq!(dual_swap(&p("(in x y)")), p("(notin x y)"));
    }

    #[test]
    fn star_examples() {
        let st = translate_star_st(&p("(forallS s (exists a (at a s)))")).unwrap();
        assert_eq!(st, p("(forall s (implies (Lev s) (exists a (Sub a s))))"));
        let bst = translate_star_bst(&p("(forall a (or (low a) (high a)))")).unwrap();
        assert_eq!(bst, p("(forall a (or (notin a a) (in a a)))"));
        assert!(translate_star_st(&p("(low a)")).is_err());
    }

    #[test]
    fn modalize_examples() {
        assert_eq!(modalize(&p("(in x y)")).unwrap(), p("(dia (in x y))"));
        assert_eq!(
            modalize(&p("(exists x (eq x x))")).unwrap(),
            p("(dia (exists x (dia (eq x x))))")
        );
        assert!(modalize(&p("(dia (in x y))")).is_err());
    }

    #[test]
    fn levelling_examples() {
        assert_eq!(
            levelling(&p("(in x y)"), "s").unwrap(),
            p("(and (in x y) (Sub y s))")
        );
        assert_eq!(
            levelling(&p("(past (E! x))"), "s").unwrap(),
            p("(exists t1 (and (Lev t1) (in t1 s) (and (eq x x) (Sub x t1))))")
        );
    }

    #[test]
    fn bullet_examples() {
        assert_eq!(
            mlt_bullet(&p("(past (E! y))")).unwrap(),
            p("(exists x1 (dia (and (not (E! x1)) (E! y))))")
        );
    }
}
