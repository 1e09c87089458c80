//! Formulas over set, stage, predicate and function variables, with modal
//! operators for potentialist structures.
//!
//! The printed form is an s-expression; see [`sexpr`] for the grammar.

pub mod eval;
pub mod samples;
pub mod sexpr;
pub mod structure;
mod tables;
pub mod translate;

use std::collections::BTreeSet;
use std::fmt;

pub use eval::{eval, eval_at, Assignment, Evaluator, Value};
pub use samples::{sample_formulas, sample_modal_formulas};
pub use structure::{Kripke, OneSorted, Structure, TwoSorted};

/// Sort of a first-order variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Set,
    Stage,
}

/// What a quantifier binds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    Set,
    Stage,
    /// Monadic predicate over sets (full semantics).
    Pred,
    /// Unary function from sets to sets (full semantics).
    Func,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    All,
    Some,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModalOp {
    /// Possibly: true at some world reachable through the past-directed frame.
    Dia,
    /// Necessarily, the dual of `Dia`.
    Box,
    /// At some earlier world.
    Past,
    /// At some later world.
    Future,
    /// At every earlier world.
    AlwaysPast,
    /// At every later world.
    AlwaysFuture,
}

/// Predicates defined by formulas in the primitive language. Each has an
/// [`expansion`](Formula::expand_defs); one-sorted evaluation also has a direct table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DefPred {
    /// `x ⊆ y`
    Sub,
    /// The complement of `x` exists and is a subset of `y`.
    CoSub,
    Trans,
    Potent,
    /// `b = Pot a`
    IsPot,
    /// `b = Acc a`
    IsAcc,
    /// `b = BPot a`
    IsBPot,
    /// `c` is the complement of `a`.
    IsComp,
    Hist,
    Lev,
    BHist,
    BLev,
    Helow,
    /// `E!s ∧ ∀x x ⊆ s`
    MaxLev,
}

impl DefPred {
    pub const ALL: [DefPred; 14] = [
        DefPred::Sub,
        DefPred::CoSub,
        DefPred::Trans,
        DefPred::Potent,
        DefPred::IsPot,
        DefPred::IsAcc,
        DefPred::IsBPot,
        DefPred::IsComp,
        DefPred::Hist,
        DefPred::Lev,
        DefPred::BHist,
        DefPred::BLev,
        DefPred::Helow,
        DefPred::MaxLev,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DefPred::Sub => "Sub",
            DefPred::CoSub => "CoSub",
            DefPred::Trans => "Trans",
            DefPred::Potent => "Potent",
            DefPred::IsPot => "IsPot",
            DefPred::IsAcc => "IsAcc",
            DefPred::IsBPot => "IsBPot",
            DefPred::IsComp => "IsComp",
            DefPred::Hist => "Hist",
            DefPred::Lev => "Lev",
            DefPred::BHist => "BHist",
            DefPred::BLev => "BLev",
            DefPred::Helow => "Helow",
            DefPred::MaxLev => "MaxLev",
        }
    }

    pub fn from_name(s: &str) -> Option<DefPred> {
        DefPred::ALL.into_iter().find(|d| d.name() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            DefPred::Sub
            | DefPred::CoSub
            | DefPred::IsPot
            | DefPred::IsAcc
            | DefPred::IsBPot
            | DefPred::IsComp => 2,
            _ => 1,
        }
    }

    /// Defining formula over parameters `$0`, `$1`.
    fn template(self) -> &'static str {
        match self {
            DefPred::Sub => "(forall z (implies (in z $0) (in z $1)))",
            DefPred::CoSub => "(exists z (and (Sub z $1) (forall y (iff (in y z) (notin y $0)))))",
            DefPred::Trans => "(forall x (implies (in x $0) (Sub x $0)))",
            DefPred::Potent => "(forall x (implies (exists c (and (in c $0) (Sub x c))) (in x $0)))",
            DefPred::IsPot => "(forall x (iff (in x $0) (exists c (and (in c $1) (Sub x c)))))",
            DefPred::IsAcc => {
                "(forall x (iff (in x $0) (exists c (and (in c $1) (or (in x c) (Sub x c))))))"
            }
            DefPred::IsBPot => {
                "(forall x (iff (in x $0) (exists c (and (in c $1) (notin c c) (or (Sub x c) (CoSub x c))))))"
            }
            DefPred::IsComp => "(forall x (iff (in x $0) (notin x $1)))",
            DefPred::Hist => {
                "(forall x (implies (in x $0) (forall y (iff (in y x) (exists c (and (in c x) (in c $0) (Sub y c)))))))"
            }
            DefPred::Lev => "(exists h (and (Hist h) (IsPot $0 h)))",
            DefPred::BHist => {
                "(and (notin $0 $0) (forall x (implies (in x $0) (forall y (iff (in y x) \
                 (exists c (and (in c x) (in c $0) (notin c c) (or (Sub y c) (CoSub y c)))))))))"
            }
            DefPred::BLev => "(exists h (and (BHist h) (IsBPot $0 h)))",
            DefPred::Helow => {
                "(exists c (and (Trans c) (Sub $0 c) (forall x (implies (in x c) (notin x x)))))"
            }
            DefPred::MaxLev => "(and (E! $0) (forall x (Sub x $0)))",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    /// Application of a function variable.
    App(String, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(f, t) => {
                out.insert(f.clone());
                t.collect_names(out);
            }
        }
    }

    fn rename(&self, from: &str, to: &Term) -> Term {
        match self {
            Term::Var(v) if v == from => to.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, t) => {
                let f = match to {
                    Term::Var(n) if f == from => n.clone(),
                    _ => f.clone(),
                };
                Term::App(f, Box::new(t.rename(from, to)))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    In(Term, Term),
    NotIn(Term, Term),
    Eq(Term, Term),
    /// Stage order in two-sorted structures; rank order in one-sorted ones.
    Before(Term, Term),
    FoundAt(Term, Term),
    Low(Term),
    High(Term),
    /// `E!x`: `x` exists at the current world.
    Exists(Term),
    /// A predicate variable applied to a term.
    Pred(String, Term),
    /// A defined predicate; `dual` evaluates it with membership complemented.
    Def {
        pred: DefPred,
        args: Vec<Term>,
        dual: bool,
    },
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Quant(Quantifier, VarKind, String, Box<Formula>),
    Modal(ModalOp, Box<Formula>),
}

/// Constructors used throughout the crate.
impl Formula {
    pub fn parse(s: &str) -> crate::Result<Formula> {
        sexpr::parse_formula(s)
    }

    pub fn mem(x: &str, y: &str) -> Formula {
        Formula::In(Term::var(x), Term::var(y))
    }

    pub fn def(pred: DefPred, args: &[&str]) -> Formula {
        Formula::Def {
            pred,
            args: args.iter().map(|a| Term::var(a)).collect(),
            dual: false,
        }
    }

    pub fn negation(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(fs: Vec<Formula>) -> Formula {
        Formula::And(fs)
    }

    pub fn or(fs: Vec<Formula>) -> Formula {
        Formula::Or(fs)
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::Quant(Quantifier::All, VarKind::Set, v.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Quant(
            Quantifier::Some,
            VarKind::Set,
            v.to_string(),
            Box::new(body),
        )
    }

    pub fn quant(q: Quantifier, k: VarKind, v: &str, body: Formula) -> Formula {
        Formula::Quant(q, k, v.to_string(), Box::new(body))
    }

    pub fn modal(op: ModalOp, body: Formula) -> Formula {
        Formula::Modal(op, Box::new(body))
    }
}

impl Formula {
    /// Every variable name occurring in the formula, bound or free.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::In(a, b)
            | Formula::NotIn(a, b)
            | Formula::Eq(a, b)
            | Formula::Before(a, b)
            | Formula::FoundAt(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Formula::Low(a) | Formula::High(a) | Formula::Exists(a) => a.collect_names(out),
            Formula::Pred(p, a) => {
                out.insert(p.clone());
                a.collect_names(out);
            }
            Formula::Def { args, .. } => args.iter().for_each(|a| a.collect_names(out)),
            Formula::Not(f) | Formula::Modal(_, f) => f.collect_names(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_names(out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Formula::Quant(_, _, v, f) => {
                out.insert(v.clone());
                f.collect_names(out);
            }
        }
    }

    /// Free variables with the kind they are used at.
    pub fn free_vars(&self) -> Vec<(String, VarKind)> {
        let mut out: Vec<(String, VarKind)> = Vec::new();
        let mut bound: Vec<String> = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<(String, VarKind)>) {
        fn term(t: &Term, k: VarKind, bound: &[String], out: &mut Vec<(String, VarKind)>) {
            match t {
                Term::Var(v) => {
                    if !bound.contains(v) && !out.iter().any(|(n, _)| n == v) {
                        out.push((v.clone(), k));
                    }
                }
                Term::App(f, a) => {
                    if !bound.contains(f) && !out.iter().any(|(n, _)| n == f) {
                        out.push((f.clone(), VarKind::Func));
                    }
                    term(a, VarKind::Set, bound, out);
                }
            }
        }
        match self {
            Formula::True | Formula::False => {}
            Formula::In(a, b) | Formula::NotIn(a, b) | Formula::Eq(a, b) => {
                term(a, VarKind::Set, bound, out);
                term(b, VarKind::Set, bound, out);
            }
            Formula::Before(a, b) => {
                term(a, VarKind::Stage, bound, out);
                term(b, VarKind::Stage, bound, out);
            }
            Formula::FoundAt(a, b) => {
                term(a, VarKind::Set, bound, out);
                term(b, VarKind::Stage, bound, out);
            }
            Formula::Low(a) | Formula::High(a) | Formula::Exists(a) => {
                term(a, VarKind::Set, bound, out)
            }
            Formula::Pred(p, a) => {
                if !bound.contains(p) && !out.iter().any(|(n, _)| n == p) {
                    out.push((p.clone(), VarKind::Pred));
                }
                term(a, VarKind::Set, bound, out);
            }
            Formula::Def { args, .. } => {
                args.iter().for_each(|a| term(a, VarKind::Set, bound, out))
            }
            Formula::Not(f) | Formula::Modal(_, f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().for_each(|f| f.collect_free(bound, out))
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Quant(_, _, v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_modal(&self) -> bool {
        match self {
            Formula::Modal(..) => true,
            Formula::Not(f) | Formula::Quant(_, _, _, f) => f.has_modal(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(Formula::has_modal),
            Formula::Implies(a, b) | Formula::Iff(a, b) => a.has_modal() || b.has_modal(),
            _ => false,
        }
    }

    /// Replace free occurrences of variable `from` by `to`. Bound variables
    /// of `self` must not clash with names in `to`.
    pub fn substitute(&self, from: &str, to: &Term) -> Formula {
        let s = |f: &Formula| f.substitute(from, to);
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::In(a, b) => Formula::In(a.rename(from, to), b.rename(from, to)),
            Formula::NotIn(a, b) => Formula::NotIn(a.rename(from, to), b.rename(from, to)),
            Formula::Eq(a, b) => Formula::Eq(a.rename(from, to), b.rename(from, to)),
            Formula::Before(a, b) => Formula::Before(a.rename(from, to), b.rename(from, to)),
            Formula::FoundAt(a, b) => Formula::FoundAt(a.rename(from, to), b.rename(from, to)),
            Formula::Low(a) => Formula::Low(a.rename(from, to)),
            Formula::High(a) => Formula::High(a.rename(from, to)),
            Formula::Exists(a) => Formula::Exists(a.rename(from, to)),
            Formula::Pred(p, a) => {
                let p = match to {
                    Term::Var(n) if p == from => n.clone(),
                    _ => p.clone(),
                };
                Formula::Pred(p, a.rename(from, to))
            }
            Formula::Def { pred, args, dual } => Formula::Def {
                pred: *pred,
                args: args.iter().map(|a| a.rename(from, to)).collect(),
                dual: *dual,
            },
            Formula::Not(f) => Formula::Not(Box::new(s(f))),
            Formula::And(fs) => Formula::And(fs.iter().map(s).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(s).collect()),
            Formula::Implies(a, b) => Formula::Implies(Box::new(s(a)), Box::new(s(b))),
            Formula::Iff(a, b) => Formula::Iff(Box::new(s(a)), Box::new(s(b))),
            Formula::Quant(q, k, v, f) if v == from => Formula::Quant(*q, *k, v.clone(), f.clone()),
            Formula::Quant(q, k, v, f) => Formula::Quant(*q, *k, v.clone(), Box::new(s(f))),
            Formula::Modal(op, f) => Formula::Modal(*op, Box::new(s(f))),
        }
    }

    /// Replace every defined predicate by its defining formula, recursively.
    /// Bound variables introduced by expansions get fresh names.
    pub fn expand_defs(&self) -> Formula {
        let mut fresh = Fresh::new(self);
        self.expand_with(&mut fresh)
    }

    pub(crate) fn expand_with(&self, fresh: &mut Fresh) -> Formula {
        self.map_defs(
            &mut |pred, args, dual, fresh| {
                let body = expand_one(pred, args, fresh);
                let body = body.expand_with(fresh);
                if dual {
                    translate::dual_swap(&body)
                } else {
                    body
                }
            },
            fresh,
        )
    }

    fn map_defs(&self, f: &mut DefRewrite, fresh: &mut Fresh) -> Formula {
        match self {
            Formula::Def { pred, args, dual } => f(*pred, args, *dual, fresh),
            Formula::Not(g) => Formula::Not(Box::new(g.map_defs(f, fresh))),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| g.map_defs(f, fresh)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| g.map_defs(f, fresh)).collect()),
            Formula::Implies(a, b) => Formula::Implies(
                Box::new(a.map_defs(f, fresh)),
                Box::new(b.map_defs(f, fresh)),
            ),
            Formula::Iff(a, b) => Formula::Iff(
                Box::new(a.map_defs(f, fresh)),
                Box::new(b.map_defs(f, fresh)),
            ),
            Formula::Quant(q, k, v, g) => {
                Formula::Quant(*q, *k, v.clone(), Box::new(g.map_defs(f, fresh)))
            }
            Formula::Modal(op, g) => Formula::Modal(*op, Box::new(g.map_defs(f, fresh))),
            _ => self.clone(),
        }
    }

    pub fn has_defs(&self) -> bool {
        match self {
            Formula::Def { .. } => true,
            Formula::Not(f) | Formula::Quant(_, _, _, f) | Formula::Modal(_, f) => f.has_defs(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(Formula::has_defs),
            Formula::Implies(a, b) | Formula::Iff(a, b) => a.has_defs() || b.has_defs(),
            _ => false,
        }
    }
}

/// One-step expansion of a defined predicate with bound names made fresh.
fn expand_one(pred: DefPred, args: &[Term], fresh: &mut Fresh) -> Formula {
    let template = sexpr::parse_formula(pred.template()).expect("definition templates parse");
    for a in args {
        let mut names = BTreeSet::new();
        a.collect_names(&mut names);
        fresh.reserve(names);
    }
    let mut body = template.rename_bound(fresh);
    for (i, a) in args.iter().enumerate() {
        body = body.substitute(&format!("${i}"), a);
    }
    body
}

impl Formula {
    /// Rename every bound variable to a fresh name.
    fn rename_bound(&self, fresh: &mut Fresh) -> Formula {
        match self {
            Formula::Quant(q, k, v, f) => {
                let nv = fresh.name(v);
                let body = f.substitute(v, &Term::Var(nv.clone())).rename_bound(fresh);
                Formula::Quant(*q, *k, nv, Box::new(body))
            }
            Formula::Not(f) => Formula::Not(Box::new(f.rename_bound(fresh))),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.rename_bound(fresh)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.rename_bound(fresh)).collect()),
            Formula::Implies(a, b) => Formula::Implies(
                Box::new(a.rename_bound(fresh)),
                Box::new(b.rename_bound(fresh)),
            ),
            Formula::Iff(a, b) => Formula::Iff(
                Box::new(a.rename_bound(fresh)),
                Box::new(b.rename_bound(fresh)),
            ),
            Formula::Modal(op, f) => Formula::Modal(*op, Box::new(f.rename_bound(fresh))),
            _ => self.clone(),
        }
    }
}

type DefRewrite<'a> = dyn FnMut(DefPred, &[Term], bool, &mut Fresh) -> Formula + 'a;

/// Deterministic fresh-name supply: `base1`, `base2`, … skipping names in use.
#[derive(Clone, Debug, Default)]
pub struct Fresh {
    used: BTreeSet<String>,
    counter: usize,
}

impl Fresh {
    pub fn new(f: &Formula) -> Fresh {
        Fresh {
            used: f.names(),
            counter: 0,
        }
    }

    pub fn reserve<I: IntoIterator<Item = String>>(&mut self, names: I) {
        self.used.extend(names);
    }

    pub fn name(&mut self, base: &str) -> String {
        let base = base.trim_end_matches(|c: char| c.is_ascii_digit());
        let base = if base.is_empty() || base.starts_with('$') {
            "v"
        } else {
            base
        };
        loop {
            self.counter += 1;
            let cand = format!("{base}{}", self.counter);
            if self.used.insert(cand.clone()) {
                return cand;
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(g, t) => write!(f, "({g} {t})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        sexpr::write_formula(self, f)
    }
}
