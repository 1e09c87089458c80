//! Axiom suites as named formulas.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::logic::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AxiomSuite {
    ST,
    LT,
    LTEndless,
    LTInfinity,
    LTUnbounded,
    BST,
    BLT,
    BLTEndless,
    Scott1957,
    Scott1967,
    MSRankFree,
    PST,
    LPST,
}

/// Structure kind a suite is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Language {
    OneSorted,
    /// One-sorted with the order `<`.
    Ranked,
    TwoSorted,
    Modal,
}

impl AxiomSuite {
    pub const ALL: [AxiomSuite; 13] = [
        AxiomSuite::ST,
        AxiomSuite::LT,
        AxiomSuite::LTEndless,
        AxiomSuite::LTInfinity,
        AxiomSuite::LTUnbounded,
        AxiomSuite::BST,
        AxiomSuite::BLT,
        AxiomSuite::BLTEndless,
        AxiomSuite::Scott1957,
        AxiomSuite::Scott1967,
        AxiomSuite::MSRankFree,
        AxiomSuite::PST,
        AxiomSuite::LPST,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomSuite::ST => "ST",
            AxiomSuite::LT => "LT",
            AxiomSuite::LTEndless => "LT+Endless",
            AxiomSuite::LTInfinity => "LT+Infinity",
            AxiomSuite::LTUnbounded => "LT+Unbounded",
            AxiomSuite::BST => "BST",
            AxiomSuite::BLT => "BLT",
            AxiomSuite::BLTEndless => "BLT+Endless∉",
            AxiomSuite::Scott1957 => "Scott1957",
            AxiomSuite::Scott1967 => "Scott1967",
            AxiomSuite::MSRankFree => "MSRankFree",
            AxiomSuite::PST => "PST",
            AxiomSuite::LPST => "LPST",
        }
    }

    pub fn language(self) -> Language {
        match self {
            AxiomSuite::ST | AxiomSuite::BST => Language::TwoSorted,
            AxiomSuite::PST | AxiomSuite::LPST => Language::Modal,
            AxiomSuite::Scott1957 => Language::Ranked,
            _ => Language::OneSorted,
        }
    }

    /// The suite's axioms in order, each with a short name.
    pub fn axioms(self) -> Vec<(String, Formula)> {
        let mut out: Vec<(String, String)> = Vec::new();
        let mut add = |name: &str, src: &str| out.push((name.to_string(), src.to_string()));
        match self {
            AxiomSuite::ST => {
                add("Extensionality", EXT);
                add("Order", ORDER);
                add("Staging", STAGING);
                add("Priority", PRIORITY);
                add("Specification", SPEC);
            }
            AxiomSuite::LT
            | AxiomSuite::LTEndless
            | AxiomSuite::LTInfinity
            | AxiomSuite::LTUnbounded => {
                add("Extensionality", EXT);
                add("Separation", SEP);
                add("Stratification", STRAT);
                match self {
                    AxiomSuite::LTEndless => add("Endless", ENDLESS),
                    AxiomSuite::LTInfinity => add("Infinity", INFINITY),
                    AxiomSuite::LTUnbounded => add("Unbounded", UNBOUNDED),
                    _ => {}
                }
            }
            AxiomSuite::BST => {
                add("Extensionality", EXT);
                add("Order", ORDER);
                add("Staging", STAGING);
                add("Cases", CASES);
                add("Priority-low", PRIORITY_LOW);
                add("Priority-high", PRIORITY_HIGH);
                add("Specification-low", SPEC_LOW);
                add("Specification-high", SPEC_HIGH);
            }
            AxiomSuite::BLT | AxiomSuite::BLTEndless => {
                add("Extensionality", EXT);
                add("Complements", COMPLEMENTS);
                add("Separation∉", SEP_LOW);
                add("Stratification∉", STRAT_LOW);
                if self == AxiomSuite::BLTEndless {
                    add("Endless∉", ENDLESS_LOW);
                }
            }
            AxiomSuite::Scott1957 => {
                add("Extensionality", EXT);
                add("Rank", SCOTT_RANK);
                add("Induction", SCOTT_INDUCTION);
                add("Bounded-separation", SCOTT_SEP);
            }
            AxiomSuite::Scott1967 => {
                add("Extensionality", EXT);
                add("Separation", SEP);
                add("Accumulation", ACCUMULATION);
                add("Restriction", STRAT);
            }
            AxiomSuite::MSRankFree => {
                add("Extensionality", EXT);
                add("Separation", SEP);
                add("Hierarchy", HIERARCHY);
            }
            AxiomSuite::PST | AxiomSuite::LPST => {
                add("Membership◇", MEM_DIA);
                add("Extensionality◇", EXT_DIA);
                add("Priority⟨", PRIORITY_PAST);
                add("Specification⟨", SPEC_PAST);
                let mut schemes = vec![
                    ("Past-directed", PAST_SCHEME),
                    ("Converse-future", CONVERSE_FUTURE),
                    ("Converse-past", CONVERSE_PAST),
                    ("Transitive-past", TRANSITIVE_PAST),
                ];
                if self == AxiomSuite::LPST {
                    schemes.push(("Linearity", LINEARITY));
                }
                for (tag, phi) in sample_sentences() {
                    for (name, template) in &schemes {
                        add(&format!("{name}[{tag}]"), &template.replace("$phi", phi));
                    }
                }
            }
        }
        out.into_iter()
            .map(|(name, src)| {
                let f = Formula::parse(&src).unwrap_or_else(|e| panic!("axiom {name} parses: {e}"));
                (name, f)
            })
            .collect()
    }
}

/// Sentences used to instantiate modal schemes. Counting sentences tell the
/// worlds of a potentialized hierarchy apart.
pub fn sample_sentences() -> Vec<(&'static str, &'static str)> {
    vec![
        ("one", "(exists x1 (eq x1 x1))"),
        ("two", "(exists x1 (exists x2 (not (eq x1 x2))))"),
        (
            "three",
            "(exists x1 (exists x2 (exists x3 (and (not (eq x1 x2)) (not (eq x1 x3)) (not (eq x2 x3))))))",
        ),
        (
            "four",
            "(exists x1 (exists x2 (exists x3 (exists x4 (and (not (eq x1 x2)) (not (eq x1 x3)) \
             (not (eq x1 x4)) (not (eq x2 x3)) (not (eq x2 x4)) (not (eq x3 x4)))))))",
        ),
        ("member", "(exists x1 (exists x2 (in x1 x2)))"),
    ]
}

impl fmt::Display for AxiomSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomSuite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let norm = s.trim().replace('∉', "").to_ascii_lowercase();
        AxiomSuite::ALL
            .into_iter()
            .find(|a| a.name().replace('∉', "").to_ascii_lowercase() == norm)
            .ok_or_else(|| Error::Precondition(format!("unknown axiom suite `{s}`")))
    }
}

const EXT: &str = "(forall a (forall b (implies (forall x (iff (in x a) (in x b))) (eq a b))))";

const SEP: &str =
    "(forallP F (forall a (exists b (forall x (iff (in x b) (and (F x) (in x a)))))))";

const STRAT: &str = "(forall a (exists s (and (Lev s) (Sub a s))))";

const ENDLESS: &str = "(forall s (implies (Lev s) (exists t (and (Lev t) (in s t)))))";

const INFINITY: &str = "(exists s (and (Lev s) (exists q (and (Lev q) (in q s))) \
     (forall q (implies (and (Lev q) (in q s)) (exists r (and (Lev r) (in q r) (in r s)))))))";

const UNBOUNDED: &str =
    "(forallF P (forall a (exists s (and (Lev s) (forall x (implies (in x a) (in (P x) s)))))))";

const ORDER: &str =
    "(forallS r (forallS s (forallS t (implies (and (before r s) (before s t)) (before r t)))))";

const STAGING: &str = "(forall a (existsS s (at a s)))";

const PRIORITY: &str = "(forallS s (forall a (implies (at a s) (forall x (implies (in x a) \
     (existsS r (and (at x r) (before r s))))))))";

const SPEC: &str = "(forallP F (forallS s (implies (forall x (implies (F x) \
     (existsS r (and (at x r) (before r s))))) (exists a (and (at a s) (forall x (iff (F x) (in x a))))))))";

const CASES: &str = "(forall a (or (low a) (high a)))";

const PRIORITY_LOW: &str = "(forallS s (forall a (implies (and (low a) (at a s)) (forall x \
     (implies (in x a) (existsS r (and (at x r) (before r s))))))))";

const PRIORITY_HIGH: &str = "(forallS s (forall a (implies (and (high a) (at a s)) (forall x \
     (implies (notin x a) (existsS r (and (at x r) (before r s))))))))";

const SPEC_LOW: &str = "(forallP F (forallS s (implies (forall x (implies (F x) \
     (existsS r (and (at x r) (before r s))))) (exists a (and (low a) (at a s) (forall x (iff (F x) (in x a))))))))";

const SPEC_HIGH: &str = "(forallP F (forallS s (implies (forall x (implies (F x) \
     (existsS r (and (at x r) (before r s))))) (exists a (and (high a) (at a s) (forall x (iff (F x) (notin x a))))))))";

const COMPLEMENTS: &str = "(forall a (exists c (and (IsComp c a) (iff (notin a a) (in c c)))))";

const SEP_LOW: &str = "(forallP F (forall a (implies (notin a a) (exists b (and (notin b b) \
     (forall x (iff (in x b) (and (F x) (in x a)))))))))";

const STRAT_LOW: &str = "(forall a (implies (notin a a) (exists s (and (BLev s) (Sub a s)))))";

const ENDLESS_LOW: &str = "(forall s (implies (BLev s) (exists t (and (BLev t) (in s t)))))";

const SCOTT_RANK: &str =
    "(forall a (forall b (iff (before a b) (exists x (and (before x b) (not (before x a)))))))";

const SCOTT_INDUCTION: &str =
    "(forallP F (implies (forall a (implies (forall x (implies (before x a) (F x))) \
     (F a))) (forall a (F a))))";

const SCOTT_SEP: &str =
    "(forallP F (forall a (exists b (forall x (iff (in x b) (and (F x) (before x a)))))))";

const ACCUMULATION: &str = "(forall s (implies (Lev s) (forall x (iff (in x s) \
     (exists r (and (in r s) (Lev r) (or (in x r) (Sub x r))))))))";

const HIERARCHY: &str = "(forall a (exists h (forall k (implies (Sub k h) \
     (exists s (and (IsPot s k) (or (in s h) (Sub a s))))))))";

const MEM_DIA: &str =
    "(forall a (box (forall x (implies (dia (in x a)) (box (implies (E! a) (in x a)))))))";

const EXT_DIA: &str =
    "(forall a (box (forall b (implies (box (forall x (iff (dia (in x a)) (dia (in x b))))) \
     (dia (eq a b))))))";

const PRIORITY_PAST: &str = "(forall a (forall x (implies (in x a) (past (E! x)))))";

const SPEC_PAST: &str = "(forallP F (implies (forall x (implies (F x) (past (E! x)))) \
     (exists a (forall x (iff (F x) (in x a))))))";

const PAST_SCHEME: &str =
    "(implies (past (and $phi (always-past $phi))) (always-past (or $phi (past $phi))))";

const CONVERSE_FUTURE: &str = "(implies $phi (always-future (past $phi)))";

const CONVERSE_PAST: &str = "(implies $phi (always-past (future $phi)))";

const TRANSITIVE_PAST: &str = "(implies (past (past $phi)) (past $phi))";

const LINEARITY: &str = "(iff (dia $phi) (or (past $phi) $phi (future $phi)))";
