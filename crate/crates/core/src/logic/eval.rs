//! Model checking.
//!
//! Formulas are compiled once: variable names become slots in a flat
//! environment, defined predicates become table lookups (one-sorted) or their
//! expansions (two-sorted, Kripke). Second-order quantifiers range over every
//! subset or function of the domain; the domain size is checked against
//! [`Caps::max_instances`] at compile time.
//!
//! Kripke semantics is negative free logic: first-order quantifiers range over
//! the current world's domain, and an atom is true only if its arguments exist
//! there. Predicate and function variables range over the global domain.

use std::collections::HashMap;
use std::rc::Rc;

use fixedbitset::FixedBitSet;

use super::structure::{Kripke, Structure};
use super::tables::{Sem, Table};
use super::{DefPred, Formula, Fresh, ModalOp, Quantifier, Term, VarKind};
use crate::error::{Caps, Error, Result};

/// Value of a free variable: a domain element (set or stage index), a
/// predicate extension, or a function given as its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Elem(usize),
    Pred(FixedBitSet),
    Func(Vec<usize>),
}

pub type Assignment = Vec<(String, Value)>;

#[derive(Clone, Debug)]
enum CTerm {
    Var(usize),
    App(usize, Box<CTerm>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Domain {
    Sets,
    Stages,
}

type QuantNode = fn(bool, Slot, Box<Node>) -> Node;

#[derive(Debug)]
enum Node {
    Const(bool),
    Mem(CTerm, CTerm),
    Eq(CTerm, CTerm),
    Less(CTerm, CTerm),
    Found(CTerm, CTerm),
    Low(CTerm),
    High(CTerm),
    Exists(CTerm),
    Pred(usize, CTerm),
    Table(Rc<Table>, Vec<CTerm>),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Elem(bool, Domain, usize, Box<Node>),
    Pred2(bool, usize, Box<Node>),
    Func2(bool, usize, Box<Node>),
    Modal(ModalOp, Box<Node>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Elem(usize, Domain),
    Pred(usize),
    Func(usize),
}

#[derive(Default)]
struct Env {
    elems: Vec<usize>,
    preds: Vec<FixedBitSet>,
    funcs: Vec<Vec<usize>>,
}

/// Evaluates formulas in one structure, caching defined-predicate tables.
pub struct Evaluator<'s> {
    structure: &'s Structure,
    caps: Caps,
    expand_defs: bool,
    tables: std::cell::RefCell<HashMap<(DefPred, bool), Rc<Table>>>,
    frame: Option<Frame>,
}

struct Frame {
    earlier: Vec<FixedBitSet>,
    dia: Vec<FixedBitSet>,
}

struct Compiler<'e, 's> {
    ev: &'e Evaluator<'s>,
    scope: Vec<(String, Slot)>,
    n_elems: usize,
    n_preds: usize,
    n_funcs: usize,
    fresh: Fresh,
}

impl<'s> Evaluator<'s> {
    pub fn new(structure: &'s Structure, caps: Caps) -> Self {
        let frame = match structure {
            Structure::Kripke(k) => Some(Frame {
                earlier: k.earlier(),
                dia: k.dia_reach(),
            }),
            _ => None,
        };
        Evaluator {
            structure,
            caps,
            expand_defs: false,
            tables: Default::default(),
            frame,
        }
    }

    /// Evaluate defined predicates through their expansions even where tables exist.
    pub fn expanding_defs(mut self) -> Self {
        self.expand_defs = true;
        self
    }

    pub fn structure(&self) -> &'s Structure {
        self.structure
    }

    fn table(&self, pred: DefPred, dual: bool) -> Rc<Table> {
        let Structure::OneSorted(m) = self.structure else {
            unreachable!("tables exist only for one-sorted structures")
        };
        self.tables
            .borrow_mut()
            .entry((pred, dual))
            .or_insert_with(|| {
                if dual {
                    let c = m.complemented();
                    Rc::new(Sem::new(&c.ext).table(pred))
                } else {
                    Rc::new(Sem::new(&m.ext).table(pred))
                }
            })
            .clone()
    }

    fn set_count(&self) -> usize {
        match self.structure {
            Structure::OneSorted(m) => m.len(),
            Structure::TwoSorted(m) => m.set_labels.len(),
            Structure::Kripke(m) => m.len(),
        }
    }

    fn stage_count(&self) -> usize {
        match self.structure {
            Structure::TwoSorted(m) => m.stage_labels.len(),
            _ => 0,
        }
    }

    /// Truth of `phi` under `asg`; at `world` for Kripke structures.
    pub fn eval(&self, phi: &Formula, asg: &Assignment, world: Option<usize>) -> Result<bool> {
        let (node, mut env) = self.compile(phi, asg)?;
        let w = match (self.structure, world) {
            (Structure::Kripke(k), Some(w)) if w < k.worlds() => w,
            (Structure::Kripke(_), Some(w)) => {
                return Err(Error::Precondition(format!("no world {w}")))
            }
            (Structure::Kripke(_), None) => {
                return Err(Error::Precondition(
                    "Kripke evaluation needs a world".into(),
                ))
            }
            (_, _) => 0,
        };
        Ok(self.ev(&node, &mut env, w))
    }

    /// Truth at every world (or simply truth, for non-modal structures).
    pub fn holds(&self, phi: &Formula, asg: &Assignment) -> Result<bool> {
        Ok(self.failing_world(phi, asg)?.is_none())
    }

    /// First world where `phi` fails, if any. Non-modal structures have the single world 0.
    pub fn failing_world(&self, phi: &Formula, asg: &Assignment) -> Result<Option<usize>> {
        let (node, mut env) = self.compile(phi, asg)?;
        let worlds = match self.structure {
            Structure::Kripke(k) => k.worlds(),
            _ => 1,
        };
        Ok((0..worlds).find(|&w| !self.ev(&node, &mut env, w)))
    }

    fn compile(&self, phi: &Formula, asg: &Assignment) -> Result<(Node, Env)> {
        let mut c = Compiler {
            ev: self,
            scope: Vec::new(),
            n_elems: 0,
            n_preds: 0,
            n_funcs: 0,
            fresh: Fresh::new(phi),
        };
        let mut env = Env::default();
        let free = phi.free_vars();
        for (name, kind) in &free {
            let Some((_, val)) = asg.iter().rev().find(|(n, _)| n == name) else {
                return Err(Error::Unbound(name.clone()));
            };
            let slot = match (val, kind) {
                (Value::Elem(e), VarKind::Set | VarKind::Stage) => {
                    let dom = if *kind == VarKind::Stage {
                        Domain::Stages
                    } else {
                        Domain::Sets
                    };
                    let limit = if dom == Domain::Stages {
                        self.stage_count()
                    } else {
                        self.set_count()
                    };
                    if *e >= limit {
                        return Err(Error::Precondition(format!(
                            "value of `{name}` out of range"
                        )));
                    }
                    env.elems.push(*e);
                    c.n_elems += 1;
                    Slot::Elem(c.n_elems - 1, dom)
                }
                (Value::Pred(p), VarKind::Pred) => {
                    env.preds.push(p.clone());
                    c.n_preds += 1;
                    Slot::Pred(c.n_preds - 1)
                }
                (Value::Func(f), VarKind::Func) => {
                    env.funcs.push(f.clone());
                    c.n_funcs += 1;
                    Slot::Func(c.n_funcs - 1)
                }
                _ => {
                    return Err(Error::Sort(format!(
                        "`{name}` is assigned a value of the wrong kind"
                    )))
                }
            };
            c.scope.push((name.clone(), slot));
        }
        let node = c.formula(phi)?;
        env.elems.resize(c.n_elems, 0);
        env.preds
            .resize(c.n_preds, FixedBitSet::with_capacity(self.set_count()));
        env.funcs.resize(c.n_funcs, vec![0; self.set_count()]);
        Ok((node, env))
    }

    fn kripke(&self) -> &Kripke {
        match self.structure {
            Structure::Kripke(k) => k,
            _ => unreachable!("modal node outside a Kripke structure"),
        }
    }

    fn term(&self, t: &CTerm, env: &Env) -> usize {
        match t {
            CTerm::Var(s) => env.elems[*s],
            CTerm::App(f, a) => env.funcs[*f][self.term(a, env)],
        }
    }

    fn exists(&self, e: usize, w: usize) -> bool {
        match self.structure {
            Structure::Kripke(k) => k.dom[w].contains(e),
            _ => true,
        }
    }

    fn quantify(
        &self,
        range: impl Iterator<Item = usize>,
        all: bool,
        slot: usize,
        body: &Node,
        env: &mut Env,
        w: usize,
    ) -> bool {
        for e in range {
            env.elems[slot] = e;
            if self.ev(body, env, w) != all {
                return !all;
            }
        }
        all
    }

    fn ev(&self, node: &Node, env: &mut Env, w: usize) -> bool {
        match node {
            Node::Const(b) => *b,
            Node::Mem(a, b) => {
                let (a, b) = (self.term(a, env), self.term(b, env));
                match self.structure {
                    Structure::OneSorted(m) => m.ext[b].contains(a),
                    Structure::TwoSorted(m) => m.ext[b].contains(a),
                    Structure::Kripke(k) => {
                        k.dom[w].contains(a) && k.dom[w].contains(b) && k.ext[w][b].contains(a)
                    }
                }
            }
            Node::Eq(a, b) => {
                let (a, b) = (self.term(a, env), self.term(b, env));
                a == b && self.exists(a, w)
            }
            Node::Less(a, b) => {
                let (a, b) = (self.term(a, env), self.term(b, env));
                match self.structure {
                    Structure::OneSorted(m) => m.less.as_ref().is_some_and(|l| l[b].contains(a)),
                    Structure::TwoSorted(m) => m.before[b].contains(a),
                    Structure::Kripke(_) => unreachable!(),
                }
            }
            Node::Found(x, s) => {
                let Structure::TwoSorted(m) = self.structure else {
                    unreachable!()
                };
                m.found[self.term(x, env)].contains(self.term(s, env))
            }
            Node::Low(x) | Node::High(x) => {
                let Structure::TwoSorted(m) = self.structure else {
                    unreachable!()
                };
                let x = self.term(x, env);
                if matches!(node, Node::Low(_)) {
                    m.low.contains(x)
                } else {
                    m.high.contains(x)
                }
            }
            Node::Exists(x) => self.exists(self.term(x, env), w),
            Node::Pred(p, x) => {
                let x = self.term(x, env);
                env.preds[*p].contains(x) && self.exists(x, w)
            }
            Node::Table(t, args) => {
                let a0 = self.term(&args[0], env);
                let a1 = args.get(1).map_or(0, |a| self.term(a, env));
                t.holds(&[a0, a1])
            }
            Node::Not(f) => !self.ev(f, env, w),
            Node::And(fs) => fs.iter().all(|f| self.ev(f, env, w)),
            Node::Or(fs) => fs.iter().any(|f| self.ev(f, env, w)),
            Node::Implies(a, b) => !self.ev(a, env, w) || self.ev(b, env, w),
            Node::Iff(a, b) => self.ev(a, env, w) == self.ev(b, env, w),
            Node::Elem(all, dom, slot, body) => match (self.structure, dom) {
                (Structure::Kripke(k), _) => {
                    self.quantify(k.dom[w].ones(), *all, *slot, body, env, w)
                }
                (_, Domain::Sets) => self.quantify(0..self.set_count(), *all, *slot, body, env, w),
                (_, Domain::Stages) => {
                    self.quantify(0..self.stage_count(), *all, *slot, body, env, w)
                }
            },
            Node::Pred2(all, slot, body) => {
                let n = self.set_count();
                for mask in 0u64..1u64 << n {
                    let blocks = [mask as u32, (mask >> 32) as u32];
                    env.preds[*slot] = FixedBitSet::with_capacity_and_blocks(
                        n,
                        blocks[..n.div_ceil(32)].iter().copied(),
                    );
                    if self.ev(body, env, w) != *all {
                        return !*all;
                    }
                }
                *all
            }
            Node::Func2(all, slot, body) => {
                let n = self.set_count();
                env.funcs[*slot] = vec![0; n];
                loop {
                    if self.ev(body, env, w) != *all {
                        return !*all;
                    }
                    // Odometer step through all n^n tables.
                    let f = &mut env.funcs[*slot];
                    let mut i = 0;
                    loop {
                        if i == n {
                            return *all;
                        }
                        f[i] += 1;
                        if f[i] < n {
                            break;
                        }
                        f[i] = 0;
                        i += 1;
                    }
                }
            }
            Node::Modal(op, body) => {
                let k = self.kripke();
                let frame = self.frame.as_ref().expect("Kripke frame");
                let (worlds, all) = match op {
                    ModalOp::Dia => (&frame.dia[w], false),
                    ModalOp::Box => (&frame.dia[w], true),
                    ModalOp::Past => (&frame.earlier[w], false),
                    ModalOp::AlwaysPast => (&frame.earlier[w], true),
                    ModalOp::Future => (&k.later[w], false),
                    ModalOp::AlwaysFuture => (&k.later[w], true),
                };
                for v in worlds.ones() {
                    if self.ev(body, env, v) != all {
                        return !all;
                    }
                }
                all
            }
        }
    }
}

impl Compiler<'_, '_> {
    fn lookup(&self, name: &str) -> Result<Slot> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, s)| *s)
            .ok_or_else(|| Error::Unbound(name.to_string()))
    }

    fn term(&self, t: &Term, want: Domain) -> Result<CTerm> {
        match t {
            Term::Var(v) => match self.lookup(v)? {
                Slot::Elem(s, d) if d == want || !self.two_sorted() => Ok(CTerm::Var(s)),
                Slot::Elem(..) => Err(Error::Sort(format!("`{v}` has the wrong sort here"))),
                _ => Err(Error::Sort(format!("`{v}` is not a first-order variable"))),
            },
            Term::App(f, a) => {
                if want == Domain::Stages {
                    return Err(Error::Sort(format!(
                        "function `{f}` returns a set, not a stage"
                    )));
                }
                match self.lookup(f)? {
                    Slot::Func(s) => Ok(CTerm::App(s, Box::new(self.term(a, Domain::Sets)?))),
                    _ => Err(Error::Sort(format!("`{f}` is not a function variable"))),
                }
            }
        }
    }

    fn two_sorted(&self) -> bool {
        matches!(self.ev.structure, Structure::TwoSorted(_))
    }

    fn kripke(&self) -> bool {
        matches!(self.ev.structure, Structure::Kripke(_))
    }

    fn need_two_sorted(&self, what: &str) -> Result<()> {
        if self.two_sorted() {
            Ok(())
        } else {
            Err(Error::Sort(format!(
                "`{what}` needs a two-sorted structure"
            )))
        }
    }

    fn formula(&mut self, f: &Formula) -> Result<Node> {
        use Domain::{Sets, Stages};
        Ok(match f {
            Formula::True => Node::Const(true),
            Formula::False => Node::Const(false),
            Formula::In(a, b) => Node::Mem(self.term(a, Sets)?, self.term(b, Sets)?),
            Formula::NotIn(a, b) => Node::Not(Box::new(Node::Mem(
                self.term(a, Sets)?,
                self.term(b, Sets)?,
            ))),
            Formula::Eq(a, b) => {
                let dom = match a {
                    Term::Var(v) => match self.lookup(v)? {
                        Slot::Elem(_, d) => d,
                        _ => Sets,
                    },
                    Term::App(..) => Sets,
                };
                Node::Eq(self.term(a, dom)?, self.term(b, dom)?)
            }
            Formula::Before(a, b) => match self.ev.structure {
                Structure::TwoSorted(_) => Node::Less(self.term(a, Stages)?, self.term(b, Stages)?),
                Structure::OneSorted(m) if m.less.is_some() => {
                    Node::Less(self.term(a, Sets)?, self.term(b, Sets)?)
                }
                _ => {
                    return Err(Error::Sort(
                        "`before` needs stages or a one-sorted order".into(),
                    ))
                }
            },
            Formula::FoundAt(x, s) => {
                self.need_two_sorted("at")?;
                Node::Found(self.term(x, Sets)?, self.term(s, Stages)?)
            }
            Formula::Low(x) => {
                self.need_two_sorted("low")?;
                Node::Low(self.term(x, Sets)?)
            }
            Formula::High(x) => {
                self.need_two_sorted("high")?;
                Node::High(self.term(x, Sets)?)
            }
            Formula::Exists(x) => Node::Exists(self.term(x, Sets)?),
            Formula::Pred(p, x) => match self.lookup(p)? {
                Slot::Pred(s) => Node::Pred(s, self.term(x, Sets)?),
                _ => return Err(Error::Sort(format!("`{p}` is not a predicate variable"))),
            },
            Formula::Def { pred, args, dual } => {
                if matches!(self.ev.structure, Structure::OneSorted(_)) && !self.ev.expand_defs {
                    let t = self.ev.table(*pred, *dual);
                    let args = args
                        .iter()
                        .map(|a| self.term(a, Sets))
                        .collect::<Result<Vec<_>>>()?;
                    Node::Table(t, args)
                } else {
                    let expanded = f.expand_with(&mut self.fresh);
                    self.formula(&expanded)?
                }
            }
            Formula::Not(g) => Node::Not(Box::new(self.formula(g)?)),
            Formula::And(gs) => {
                Node::And(gs.iter().map(|g| self.formula(g)).collect::<Result<_>>()?)
            }
            Formula::Or(gs) => Node::Or(gs.iter().map(|g| self.formula(g)).collect::<Result<_>>()?),
            Formula::Implies(a, b) => {
                Node::Implies(Box::new(self.formula(a)?), Box::new(self.formula(b)?))
            }
            Formula::Iff(a, b) => Node::Iff(Box::new(self.formula(a)?), Box::new(self.formula(b)?)),
            Formula::Quant(q, kind, v, body) => {
                let all = *q == Quantifier::All;
                let n = self.ev.set_count();
                let (slot, make): (Slot, QuantNode) = match kind {
                    VarKind::Set | VarKind::Stage => {
                        let dom = if *kind == VarKind::Stage {
                            self.need_two_sorted("stage quantifier")?;
                            Stages
                        } else {
                            Sets
                        };
                        self.n_elems += 1;
                        (Slot::Elem(self.n_elems - 1, dom), |all, s, b| match s {
                            Slot::Elem(i, d) => Node::Elem(all, d, i, b),
                            _ => unreachable!(),
                        })
                    }
                    VarKind::Pred => {
                        if n >= 64 || (1u64 << n) > self.ev.caps.max_instances {
                            return Err(Error::cap_pow2(
                                "predicate quantifier",
                                n,
                                self.ev.caps.max_instances,
                            ));
                        }
                        self.n_preds += 1;
                        (Slot::Pred(self.n_preds - 1), |all, s, b| match s {
                            Slot::Pred(i) => Node::Pred2(all, i, b),
                            _ => unreachable!(),
                        })
                    }
                    VarKind::Func => {
                        let count = num_bigint::BigUint::from(n).pow(n as u32);
                        if count > num_bigint::BigUint::from(self.ev.caps.max_instances) {
                            return Err(Error::cap(
                                "function quantifier",
                                count,
                                self.ev.caps.max_instances,
                            ));
                        }
                        self.n_funcs += 1;
                        (Slot::Func(self.n_funcs - 1), |all, s, b| match s {
                            Slot::Func(i) => Node::Func2(all, i, b),
                            _ => unreachable!(),
                        })
                    }
                };
                self.scope.push((v.clone(), slot));
                let body = self.formula(body);
                self.scope.pop();
                make(all, slot, Box::new(body?))
            }
            Formula::Modal(op, g) => {
                if !self.kripke() {
                    return Err(Error::Sort(
                        "modal operators need a Kripke structure".into(),
                    ));
                }
                Node::Modal(*op, Box::new(self.formula(g)?))
            }
        })
    }
}

/// Truth of `phi` in a non-modal structure, or at every world of a Kripke structure.
pub fn eval(structure: &Structure, phi: &Formula, asg: &Assignment) -> Result<bool> {
    Evaluator::new(structure, Caps::default()).holds(phi, asg)
}

/// Truth of `phi` at one world of a Kripke structure.
pub fn eval_at(
    structure: &Structure,
    phi: &Formula,
    asg: &Assignment,
    world: usize,
) -> Result<bool> {
    Evaluator::new(structure, Caps::default()).eval(phi, asg, Some(world))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hfset::{v_elements, HFSet};
    use crate::logic::structure::OneSorted;

    fn v(n: u32) -> Structure {
        OneSorted::from_hf(&v_elements(n, &Caps::default()).unwrap()).into()
    }

    fn holds(m: &Structure, s: &str) -> bool {
        eval(m, &Formula::parse(s).unwrap(), &vec![]).unwrap()
    }

    #[test]
    fn first_order_basics() {
        let m = v(3);
        assert!(holds(&m, "(exists a (forall x (notin x a)))"));
        assert!(holds(&m, "(forall a (notin a a))"));
        assert!(!holds(
            &m,
            "(forall a (forall b (exists c (and (in a c) (in b c)))))"
        ));
    }

    #[test]
    fn second_order_separation() {
        let m = v(3);
        assert!(holds(
            &m,
            "(forallP F (forall a (exists b (forall x (iff (in x b) (and (F x) (in x a)))))))"
        ));
    }

    #[test]
    fn unbound_and_sort_errors() {
        let m = v(2);
        let f = Formula::parse("(in x y)").unwrap();
        assert_eq!(eval(&m, &f, &vec![]), Err(Error::Unbound("x".into())));
        let g = Formula::parse("(dia (exists x (eq x x)))").unwrap();
        assert!(matches!(eval(&m, &g, &vec![]), Err(Error::Sort(_))));
    }

    #[test]
    fn predicate_quantifier_respects_cap() {
        let m = v(4);
        let caps = Caps {
            max_instances: 1 << 10,
            ..Caps::default()
        };
        let f = Formula::parse("(forallP F (exists x (eq x x)))").unwrap();
        let r = Evaluator::new(&m, caps).holds(&f, &vec![]);
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn free_variables_from_assignment() {
        let sets = v_elements(2, &Caps::default()).unwrap();
        let m: Structure = OneSorted::from_hf(&sets).into();
        let e = sets.iter().position(|s| *s == HFSet::empty()).unwrap();
        let one = 1 - e;
        let f = Formula::parse("(in x y)").unwrap();
        let asg = vec![
            ("x".to_string(), Value::Elem(e)),
            ("y".to_string(), Value::Elem(one)),
        ];
        assert!(eval(&m, &f, &asg).unwrap());
    }
}
