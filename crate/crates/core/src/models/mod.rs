//! Concrete models: the finite level universes, their stage structures,
//! small enumerated structures, and the potentialist Kripke structures.

mod check;
mod embed;
mod enumerate;
mod kripke;
mod suites;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::chfset::{universe_chf, CHFSet};
use crate::error::{Caps, Error, Result};
use crate::hfset::{v_elements, HFSet};
use crate::logic::structure::{OneSorted, TwoSorted};
use crate::logic::{DefPred, Evaluator, Formula, Structure};

pub use check::{
    check_axioms, check_formulas, instantiate_second_order, AxiomResult, AxiomVerdict, Binding,
    CheckOptions, CheckReport, SecondOrder, Verdict, Witness,
};
pub use embed::{embed_initial_segment, Embedding};
pub use enumerate::{canonical_form, enumerate_structures};
pub use kripke::{flatten, potentialize, world_rename};
pub use suites::{sample_sentences, AxiomSuite, Language};

/// Which hierarchy a universe or count refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Lt,
    Blt,
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kind> {
        match s.to_ascii_lowercase().as_str() {
            "lt" => Ok(Kind::Lt),
            "blt" => Ok(Kind::Blt),
            _ => Err(Error::Precondition(format!(
                "unknown kind `{s}` (expected lt or blt)"
            ))),
        }
    }
}

/// Largest domain a one-sorted structure is built for; membership is stored
/// as `n²` bits.
pub const MAX_STRUCTURE: usize = 1 << 12;

/// The hereditarily finite sets of depth below `n`, i.e. the members of `V_n`.
pub fn lt_sets(n: u32, caps: &Caps) -> Result<Vec<HFSet>> {
    v_elements(n, caps)
}

/// `V_n` with real membership, as a one-sorted structure. Labels are the
/// printed sets.
pub fn lt_universe(n: u32, caps: &Caps) -> Result<(Vec<HFSet>, OneSorted)> {
    let sets = lt_sets(n, caps)?;
    if sets.len() > MAX_STRUCTURE {
        return Err(Error::cap(
            "structure domain",
            sets.len() as u64,
            MAX_STRUCTURE as u64,
        ));
    }
    let m = OneSorted::from_hf(&sets);
    Ok((sets, m))
}

/// `V_n` with `<` the rank order (`a < b` iff `a` has smaller depth).
pub fn lt_universe_ranked(n: u32, caps: &Caps) -> Result<(Vec<HFSet>, OneSorted)> {
    let (sets, m) = lt_universe(n, caps)?;
    let mut pairs = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if a.depth() < b.depth() {
                pairs.push((i, j));
            }
        }
    }
    Ok((sets, m.with_less(&pairs)))
}

/// The complemented sets of depth below `n` with their membership.
pub fn blt_universe(n: u32, caps: &Caps) -> Result<(Vec<CHFSet>, OneSorted)> {
    let sets = universe_chf(n, caps)?;
    Ok((sets.clone(), OneSorted::from_chf(&sets)))
}

fn unary(ev: &Evaluator, pred: DefPred, x: usize) -> Result<bool> {
    ev.eval(
        &Formula::def(pred, &["x"]),
        &vec![("x".into(), crate::logic::Value::Elem(x))],
        None,
    )
}

fn binary(ev: &Evaluator, pred: DefPred, x: usize, y: usize) -> Result<bool> {
    ev.eval(
        &Formula::def(pred, &["x", "y"]),
        &vec![
            ("x".into(), crate::logic::Value::Elem(x)),
            ("y".into(), crate::logic::Value::Elem(y)),
        ],
        None,
    )
}

/// Cheap necessary conditions for a model of LT or BLT: extensionality,
/// stratification, and for BLT complements. Separation is left to the full check.
pub fn first_order_core(m: &OneSorted, kind: Kind) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for (i, e) in m.ext.iter().enumerate() {
        if !seen.insert(e.clone()) {
            return Err(Error::Precondition(format!(
                "extensionality fails: `{}` has the same members as another element",
                m.labels[i]
            )));
        }
    }
    let s: Structure = m.clone().into();
    let ev = Evaluator::new(&s, Caps::default());
    let (level, name) = match kind {
        Kind::Lt => (DefPred::Lev, "LT"),
        Kind::Blt => (DefPred::BLev, "BLT"),
    };
    let levels: Vec<usize> = (0..m.len())
        .map(|x| unary(&ev, level, x))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .enumerate()
        .filter_map(|(i, b)| b.then_some(i))
        .collect();
    for a in 0..m.len() {
        if kind == Kind::Blt {
            let mut comp = m.ext[a].clone();
            comp.toggle_range(..);
            if !m.ext.contains(&comp) {
                return Err(Error::Precondition(format!(
                    "{name}: `{}` has no complement",
                    m.labels[a]
                )));
            }
            if m.mem(a, a) {
                continue;
            }
        }
        let mut found = false;
        for &s in &levels {
            if binary(&ev, DefPred::Sub, a, s)? {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::Precondition(format!(
                "{name}: `{}` is not a subset of any level",
                m.labels[a]
            )));
        }
    }
    Ok(())
}

/// The levels (LT) or boolean-levels (BLT) of `m`, listed in `∈` order.
pub fn levels(m: &OneSorted, kind: Kind) -> Result<Vec<usize>> {
    let s: Structure = m.clone().into();
    let ev = Evaluator::new(&s, Caps::default());
    let level = if kind == Kind::Lt {
        DefPred::Lev
    } else {
        DefPred::BLev
    };
    let mut out = Vec::new();
    for x in 0..m.len() {
        if unary(&ev, level, x)? {
            out.push(x);
        }
    }
    let mut keyed: Vec<(usize, usize)> =
        out.iter().map(|&r| (out_members(m, r, &out), r)).collect();
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, r)| r).collect())
}

fn out_members(m: &OneSorted, r: usize, among: &[usize]) -> usize {
    among.iter().filter(|&&s| m.mem(s, r)).count()
}

fn two_sorted_from(m: &OneSorted, kind: Kind) -> Result<TwoSorted> {
    first_order_core(m, kind)?;
    let s: Structure = m.clone().into();
    let ev = Evaluator::new(&s, Caps::default());
    let stages = levels(m, kind)?;
    let n = m.len();
    let k = stages.len();
    let mut before = vec![FixedBitSet::with_capacity(k); k];
    for (ti, &t) in stages.iter().enumerate() {
        for (si, &s) in stages.iter().enumerate() {
            if m.mem(s, t) {
                before[ti].insert(si);
            }
        }
    }
    let mut found = vec![FixedBitSet::with_capacity(k); n];
    for (x, row) in found.iter_mut().enumerate() {
        for (si, &s) in stages.iter().enumerate() {
            let at = binary(&ev, DefPred::Sub, x, s)?
                || (kind == Kind::Blt && binary(&ev, DefPred::CoSub, x, s)?);
            if at {
                row.insert(si);
            }
        }
    }
    let mut low = FixedBitSet::with_capacity(n);
    let mut high = FixedBitSet::with_capacity(n);
    for x in 0..n {
        if m.mem(x, x) {
            high.insert(x);
        } else {
            low.insert(x);
        }
    }
    Ok(TwoSorted {
        set_labels: m.labels.clone(),
        stage_labels: stages.iter().map(|&s| m.labels[s].clone()).collect(),
        ext: m.ext.clone(),
        before,
        found,
        low,
        high,
    })
}

/// Stages are the levels, `<` is `∈` between levels, and `x` is found at `s` iff `x ⊆ s`.
pub fn st_structure_from_lt(m: &OneSorted) -> Result<TwoSorted> {
    two_sorted_from(m, Kind::Lt)
}

/// Stages are the boolean-levels, `<` is `∈`, `x` is found at `s` iff `x ⊆ s`
/// or its complement is; low and high are non-self-membered and self-membered.
pub fn bst_structure_from_blt(m: &OneSorted) -> Result<TwoSorted> {
    two_sorted_from(m, Kind::Blt)
}

/// Universe sizes from the recurrences `lt(n+1) = 2^lt(n)` and
/// `blt(n+1) = 2^(blt(n)+1)`, both starting from 0 at height 0.
pub fn closed_form_count(kind: Kind, n: u32) -> Result<BigUint> {
    const MAX_EXPONENT: u64 = 1 << 24;
    let mut c = BigUint::from(0u8);
    for _ in 0..n {
        let e = match kind {
            Kind::Lt => c.clone(),
            Kind::Blt => &c + 1u8,
        };
        let e: u64 = match u64::try_from(&e) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return Err(Error::cap("closed-form count exponent", e, MAX_EXPONENT)),
        };
        c = BigUint::from(1u8) << e;
    }
    Ok(c)
}

/// The two small models of Scott's 1957 axioms: a Quine atom below `∅`, and
/// `∅, {∅}, {{∅}}, {∅,{∅}}` with `{∅}` ranked below `∅`.
pub fn scott1957_models() -> [OneSorted; 2] {
    let quine = OneSorted::new(vec!["a={a}".into(), "{}".into()], &[(0, 0)]).with_less(&[(0, 1)]);
    let sets: Vec<HFSet> = ["{}", "{{}}", "{{{}}}", "{{}, {{}}}"]
        .iter()
        .map(|s| HFSet::parse(s).expect("literal"))
        .collect();
    // {∅} < ∅ < {{∅}}, {∅,{∅}}
    let less = [(1, 0), (1, 2), (1, 3), (0, 2), (0, 3)];
    let four = OneSorted::from_hf(&sets).with_less(&less);
    [quine, four]
}
