//! Fixed sentences for semantic cross-checks of the translations.

use super::Formula;

const PLAIN: [(&str, &str); 20] = [
    ("empty", "(exists x (forall y (notin y x)))"),
    ("universal", "(exists x (forall y (in y x)))"),
    ("self-member", "(exists x (in x x))"),
    ("no-self-member", "(forall x (notin x x))"),
    (
        "singleton-of-empty",
        "(exists e (and (forall y (notin y e)) (exists x (forall y (iff (in y x) (eq y e))))))",
    ),
    ("covering", "(forall a (forall b (exists p (and (in a p) (in b p)))))"),
    (
        "foundation",
        "(forall x (implies (exists y (in y x)) (exists y (and (in y x) (forall z (implies (in z y) (notin z x)))))))",
    ),
    ("inhabited-transitive", "(exists x (and (Trans x) (exists y (in y x))))"),
    ("level", "(exists s (Lev s))"),
    ("boolean-level", "(exists s (BLev s))"),
    ("inhabited-helow", "(exists x (and (Helow x) (exists y (in y x))))"),
    ("sub-reflexive", "(forall x (Sub x x))"),
    ("sub-antisymmetric", "(forall x (forall y (implies (and (Sub x y) (Sub y x)) (eq x y))))"),
    ("two", "(exists x (exists y (not (eq x y))))"),
    ("complements", "(forall x (exists y (forall z (iff (in z y) (notin z x)))))"),
    ("self-membered-closed", "(exists x (and (in x x) (forall y (implies (in y x) (in y y)))))"),
    ("potent-not-transitive", "(exists x (and (Potent x) (not (Trans x))))"),
    ("two-cycle", "(exists x (exists y (and (in x y) (in y x))))"),
    ("top", "(exists x (forall y (Sub y x)))"),
    ("singletons", "(forall a (exists x (forall y (iff (in y x) (eq y a)))))"),
];

const MODAL: [(&str, &str); 12] = [
    (
        "eventually-empty",
        "(dia (forall x (forall y (notin x y))))",
    ),
    ("persistence", "(forall x (always-future (E! x)))"),
    ("maxlev", "(exists s (MaxLev s))"),
    (
        "every-level-maxlev",
        "(forall s (implies (Lev s) (dia (MaxLev s))))",
    ),
    ("has-past", "(past (exists x (eq x x)))"),
    ("future-member", "(future (exists x (exists y (in x y))))"),
    (
        "always-empty-before",
        "(always-past (exists x (forall y (notin y x))))",
    ),
    ("born-later", "(forall x (past (not (E! x))))"),
    ("necessary-empty", "(box (exists x (forall y (notin y x))))"),
    (
        "future-container",
        "(exists x (future (exists y (in x y))))",
    ),
    ("possible-container", "(forall x (dia (exists y (in x y))))"),
    ("always-maxlev", "(always-future (exists s (MaxLev s)))"),
];

fn parse_all(src: &[(&'static str, &'static str)]) -> Vec<(&'static str, Formula)> {
    src.iter()
        .map(|&(n, s)| (n, Formula::parse(s).expect("sample parses")))
        .collect()
}

/// Twenty one-sorted sentences in `∈`, `=` and the defined predicates.
pub fn sample_formulas() -> Vec<(&'static str, Formula)> {
    parse_all(&PLAIN)
}

/// Sentences with tense operators, for potentialized structures.
pub fn sample_modal_formulas() -> Vec<(&'static str, Formula)> {
    parse_all(&MODAL)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_sentences() {
        for (n, f) in sample_formulas() {
            assert!(f.is_sentence() && !f.has_modal(), "{n}");
        }
        for (n, f) in sample_modal_formulas() {
            assert!(f.is_sentence(), "{n}");
        }
    }
}
