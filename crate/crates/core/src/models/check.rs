//! Axiom checking with witnesses.
//!
//! A failing axiom is reported with a witness: values for its leading
//! universal quantifiers (and the world, for Kripke structures) under which
//! the remaining matrix is false. Every witness is re-evaluated before it is
//! reported.

use std::time::Instant;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::suites::{AxiomSuite, Language};
use crate::error::{Caps, Error, Result};
use crate::logic::{
    Assignment, Evaluator, Formula, Fresh, Quantifier, Structure, Term, Value, VarKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    /// Some axiom could not be decided within the caps.
    Error,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomVerdict {
    Holds,
    Fails,
    Error,
}

/// How to treat second-order quantifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SecondOrder {
    /// Range over every subset; exceed the cap and the axiom is an error.
    Full,
    /// Replace predicate quantifiers by a fixed list of definable instances.
    Instances,
    /// Full semantics when within the cap, instances otherwise.
    #[default]
    Auto,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    pub caps: Caps,
    pub second_order: SecondOrder,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Binding {
    pub var: String,
    pub value: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub world: Option<String>,
    pub bindings: Vec<Binding>,
    /// The matrix was evaluated again under these bindings and found false.
    pub reverified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomResult {
    pub name: String,
    pub formula: String,
    pub verdict: AxiomVerdict,
    /// Second-order quantifiers were replaced by first-order instances.
    pub instances: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub structure: String,
    pub verdict: Verdict,
    pub axioms: Vec<AxiomResult>,
    pub millis: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failing(&self) -> Vec<&str> {
        self.axioms
            .iter()
            .filter(|a| a.verdict == AxiomVerdict::Fails)
            .map(|a| a.name.as_str())
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} on {} structure: {:?} ({:.1} ms)\n",
            self.suite, self.structure, self.verdict, self.millis
        );
        for a in &self.axioms {
            let tag = if a.instances { " [instances]" } else { "" };
            s.push_str(&format!("  {:<28} {:?}{tag}\n", a.name, a.verdict));
            if let Some(w) = &a.witness {
                if let Some(world) = &w.world {
                    s.push_str(&format!("      at world {world}\n"));
                }
                for b in &w.bindings {
                    s.push_str(&format!("      {} = {}\n", b.var, b.value));
                }
            }
            if let Some(e) = &a.error {
                s.push_str(&format!("      {e}\n"));
            }
        }
        s
    }
}

fn language_of(s: &Structure) -> Language {
    match s {
        Structure::OneSorted(m) if m.less.is_some() => Language::Ranked,
        Structure::OneSorted(_) => Language::OneSorted,
        Structure::TwoSorted(_) => Language::TwoSorted,
        Structure::Kripke(_) => Language::Modal,
    }
}

/// Check every axiom of `suite` in `structure`.
pub fn check_axioms(
    structure: &Structure,
    suite: AxiomSuite,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let have = language_of(structure);
    let ok = match suite.language() {
        Language::OneSorted => matches!(have, Language::OneSorted | Language::Ranked),
        want => want == have,
    };
    if !ok {
        return Err(Error::Sort(format!(
            "suite {suite} needs a {:?} structure, got {}",
            suite.language(),
            structure.kind()
        )));
    }
    Ok(check_formulas(
        structure,
        suite.name(),
        &suite.axioms(),
        opts,
    ))
}

/// Check named sentences in `structure`; Kripke structures must satisfy them at every world.
pub fn check_formulas(
    structure: &Structure,
    suite: &str,
    axioms: &[(String, Formula)],
    opts: &CheckOptions,
) -> CheckReport {
    let start = Instant::now();
    let ev = Evaluator::new(structure, opts.caps);
    let results: Vec<AxiomResult> = axioms
        .iter()
        .map(|(name, f)| check_one(&ev, name, f, opts))
        .collect();
    let verdict = if results.iter().any(|r| r.verdict == AxiomVerdict::Fails) {
        Verdict::Fail
    } else if results.iter().any(|r| r.verdict == AxiomVerdict::Error) {
        Verdict::Error
    } else {
        Verdict::Pass
    };
    CheckReport {
        suite: suite.to_string(),
        structure: structure.kind().to_string(),
        verdict,
        axioms: results,
        millis: start.elapsed().as_secs_f64() * 1000.0,
    }
}

fn check_one(ev: &Evaluator, name: &str, f: &Formula, opts: &CheckOptions) -> AxiomResult {
    let start = Instant::now();
    let mut instances = opts.second_order == SecondOrder::Instances;
    let mut phi = if instances {
        instantiate_second_order(f)
    } else {
        f.clone()
    };
    let mut outcome = ev.failing_world(&phi, &vec![]);
    if opts.second_order == SecondOrder::Auto && matches!(outcome, Err(Error::CapExceeded { .. })) {
        let inst = instantiate_second_order(f);
        if inst != *f {
            instances = true;
            phi = inst;
            outcome = ev.failing_world(&phi, &vec![]);
        }
    }
    let (verdict, witness, error) = match outcome {
        Ok(None) => (AxiomVerdict::Holds, None, None),
        Ok(Some(w)) => match find_witness(ev, &phi, w) {
            Ok(wit) => (AxiomVerdict::Fails, Some(wit), None),
            Err(e) => (
                AxiomVerdict::Fails,
                None,
                Some(format!("witness search: {e}")),
            ),
        },
        Err(e) => (AxiomVerdict::Error, None, Some(e.to_string())),
    };
    AxiomResult {
        name: name.to_string(),
        formula: f.to_string(),
        verdict,
        instances,
        witness,
        error,
        millis: start.elapsed().as_secs_f64() * 1000.0,
    }
}

fn labels(s: &Structure, kind: VarKind) -> &[String] {
    match (s, kind) {
        (Structure::OneSorted(m), _) => &m.labels,
        (Structure::TwoSorted(m), VarKind::Stage) => &m.stage_labels,
        (Structure::TwoSorted(m), _) => &m.set_labels,
        (Structure::Kripke(m), _) => &m.labels,
    }
}

fn candidates(s: &Structure, kind: VarKind, world: usize, caps: &Caps) -> Result<Vec<Value>> {
    let n = labels(s, VarKind::Set).len();
    Ok(match kind {
        VarKind::Set => match s {
            Structure::Kripke(k) => k.dom[world].ones().map(Value::Elem).collect(),
            _ => (0..n).map(Value::Elem).collect(),
        },
        VarKind::Stage => (0..labels(s, VarKind::Stage).len())
            .map(Value::Elem)
            .collect(),
        VarKind::Pred => {
            if n >= 64 || (1u64 << n) > caps.max_instances {
                return Err(Error::cap_pow2("witness search", n, caps.max_instances));
            }
            (0u64..1 << n)
                .map(|mask| {
                    let mut b = FixedBitSet::with_capacity(n);
                    for i in (0..n).filter(|i| mask >> i & 1 == 1) {
                        b.insert(i);
                    }
                    Value::Pred(b)
                })
                .collect()
        }
        VarKind::Func => {
            let count = (n as u64)
                .checked_pow(n as u32)
                .filter(|&c| c <= caps.max_instances);
            let Some(count) = count else {
                return Err(Error::cap("witness search", n as u64, caps.max_instances));
            };
            (0..count)
                .map(|mut code| {
                    let mut f = vec![0; n];
                    for slot in f.iter_mut() {
                        *slot = (code % n as u64) as usize;
                        code /= n as u64;
                    }
                    Value::Func(f)
                })
                .collect()
        }
    })
}

fn render(s: &Structure, kind: VarKind, v: &Value) -> serde_json::Value {
    let l = labels(s, kind);
    match v {
        Value::Elem(e) => serde_json::Value::String(l[*e].clone()),
        Value::Pred(p) => serde_json::Value::Array(p.ones().map(|e| l[e].clone().into()).collect()),
        Value::Func(f) => serde_json::Value::Object(
            f.iter()
                .enumerate()
                .map(|(x, y)| (l[x].clone(), serde_json::Value::String(l[*y].clone())))
                .collect(),
        ),
    }
}

/// Peel leading universal quantifiers, choosing values under which the rest fails.
fn find_witness(ev: &Evaluator, phi: &Formula, world: usize) -> Result<Witness> {
    let s = ev.structure();
    let modal = matches!(s, Structure::Kripke(_));
    let at = if modal { Some(world) } else { None };
    let mut asg: Assignment = Vec::new();
    let mut kinds = Vec::new();
    let mut cur = phi;
    while let Formula::Quant(Quantifier::All, kind, v, body) = cur {
        let mut chosen = None;
        for val in candidates(s, *kind, world, &Caps::default())? {
            asg.push((v.clone(), val));
            if !ev.eval(body, &asg, at)? {
                chosen = asg.pop();
                break;
            }
            asg.pop();
        }
        let Some(c) = chosen else { break };
        asg.push(c);
        kinds.push(*kind);
        cur = body;
    }
    let reverified = !ev.eval(cur, &asg, at)?;
    Ok(Witness {
        world: if modal {
            match s {
                Structure::Kripke(k) => Some(k.world_labels[world].clone()),
                _ => None,
            }
        } else {
            None
        },
        bindings: asg
            .iter()
            .zip(&kinds)
            .map(|((var, val), kind)| Binding {
                var: var.clone(),
                value: render(s, *kind, val),
            })
            .collect(),
        reverified,
    })
}

/// Formulas `ψ(x, p)` substituted for predicate variables when full
/// second-order semantics is out of reach. `p` is a parameter quantified
/// like the predicate it replaces.
const INSTANCES: [&str; 9] = [
    "(in x p)",
    "(notin x p)",
    "(in p x)",
    "(eq x p)",
    "(not (eq x p))",
    "(in x x)",
    "(notin x x)",
    "(exists y (in y x))",
    "(forall y (in y x))",
];

/// Replace each predicate quantifier by the conjunction (or disjunction) of
/// its instances over [`INSTANCES`].
pub fn instantiate_second_order(f: &Formula) -> Formula {
    let mut fresh = Fresh::new(f);
    inst(f, &mut fresh)
}

fn inst(f: &Formula, fresh: &mut Fresh) -> Formula {
    match f {
        Formula::Quant(q, VarKind::Pred, pred, body) => {
            let body = inst(body, fresh);
            let cases: Vec<Formula> = INSTANCES
                .iter()
                .map(|src| {
                    let psi = Formula::parse(src).expect("instance parses");
                    let p = fresh.name("p");
                    let psi = psi.substitute("p", &Term::Var(p.clone()));
                    let g = replace_pred(&body, pred, &psi, fresh);
                    if src.contains(" p") {
                        Formula::Quant(*q, VarKind::Set, p, Box::new(g))
                    } else {
                        g
                    }
                })
                .collect();
            match q {
                Quantifier::All => Formula::And(cases),
                Quantifier::Some => Formula::Or(cases),
            }
        }
        Formula::Quant(q, k, v, g) => Formula::Quant(*q, *k, v.clone(), Box::new(inst(g, fresh))),
        Formula::Not(g) => Formula::Not(Box::new(inst(g, fresh))),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| inst(g, fresh)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| inst(g, fresh)).collect()),
        Formula::Implies(a, b) => {
            Formula::Implies(Box::new(inst(a, fresh)), Box::new(inst(b, fresh)))
        }
        Formula::Iff(a, b) => Formula::Iff(Box::new(inst(a, fresh)), Box::new(inst(b, fresh))),
        Formula::Modal(op, g) => Formula::Modal(*op, Box::new(inst(g, fresh))),
        _ => f.clone(),
    }
}

/// `body[pred := λx.psi]`, renaming the bound variables of `psi` apart.
fn replace_pred(body: &Formula, pred: &str, psi: &Formula, fresh: &mut Fresh) -> Formula {
    let r = |g: &Formula, fresh: &mut Fresh| replace_pred(g, pred, psi, fresh);
    match body {
        Formula::Pred(p, t) if p == pred => {
            let mut inner = psi.clone();
            if let Formula::Quant(q, k, y, g) = &inner {
                let ny = fresh.name(y);
                inner = Formula::Quant(
                    *q,
                    *k,
                    ny.clone(),
                    Box::new(g.substitute(y, &Term::Var(ny))),
                );
            }
            inner.substitute("x", t)
        }
        Formula::Quant(_, _, v, _) if v == pred => body.clone(),
        Formula::Quant(q, k, v, g) => Formula::Quant(*q, *k, v.clone(), Box::new(r(g, fresh))),
        Formula::Not(g) => Formula::Not(Box::new(r(g, fresh))),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| r(g, fresh)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| r(g, fresh)).collect()),
        Formula::Implies(a, b) => Formula::Implies(Box::new(r(a, fresh)), Box::new(r(b, fresh))),
        Formula::Iff(a, b) => Formula::Iff(Box::new(r(a, fresh)), Box::new(r(b, fresh))),
        Formula::Modal(op, g) => Formula::Modal(*op, Box::new(r(g, fresh))),
        _ => body.clone(),
    }
}
