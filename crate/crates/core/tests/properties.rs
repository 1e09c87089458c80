use levels_core::chfset::{complement, intersect_chf, member_chf, negative, union_chf};
use levels_core::games;
use levels_core::hfset::{is_level, levof, member};
use levels_core::logic::translate::dual_swap;
use levels_core::logic::{sample_formulas, Evaluator};
use levels_core::models::canonical_form;
use levels_core::{CHFSet, Caps, HFSet, OneSorted, Polarity, Structure};
use proptest::prelude::*;

fn chf(depth: u32) -> impl Strategy<Value = CHFSet> {
    let leaf = any::<bool>().prop_map(|h| {
        if h {
            CHFSet::universe()
        } else {
            CHFSet::empty()
        }
    });
    leaf.prop_recursive(depth, 24, 3, |inner| {
        (any::<bool>(), prop::collection::vec(inner, 0..3))
            .prop_map(|(h, xs)| CHFSet::new(if h { Polarity::High } else { Polarity::Low }, xs))
    })
}

fn hf(depth: u32) -> impl Strategy<Value = HFSet> {
    Just(HFSet::empty()).prop_recursive(depth, 16, 3, |inner| {
        prop::collection::vec(inner, 0..3).prop_map(HFSet::from_members)
    })
}

fn structure(k: usize) -> impl Strategy<Value = OneSorted> {
    any::<u32>().prop_map(move |bits| {
        let mem: Vec<(usize, usize)> = (0..k)
            .flat_map(|b| (0..k).map(move |a| (a, b)))
            .filter(|&(a, b)| bits >> (b * k + a) & 1 == 1)
            .collect();
        OneSorted::new((0..k).map(|i| format!("e{i}")).collect(), &mem)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn negative_is_involution_reversing_membership(a in chf(3), b in chf(3)) {
        prop_assert_eq!(negative(negative(a)), a);
        prop_assert_eq!(member_chf(a, b), !member_chf(negative(a), negative(b)));
    }

    #[test]
    fn de_morgan(a in chf(3), b in chf(3)) {
        prop_assert_eq!(complement(union_chf(a, b)), intersect_chf(complement(a), complement(b)));
        prop_assert_eq!(complement(complement(a)), a);
        for &x in a.children().iter().chain(b.children()) {
            prop_assert_eq!(member_chf(x, union_chf(a, b)), member_chf(x, a) || member_chf(x, b));
        }
    }

    #[test]
    fn levof_is_least_level_above(a in hf(3)) {
        let caps = Caps::default();
        let l = levof(a, &caps).unwrap();
        prop_assert!(is_level(l));
        prop_assert!(a.is_subset(l));
        for &m in l.members() {
            if is_level(m) {
                prop_assert!(!a.is_subset(m));
            }
        }
        prop_assert!(a.members().iter().all(|&x| member(x, l)));
    }

    #[test]
    fn tables_agree_with_expansions(m in structure(3)) {
        let s: Structure = m.into();
        let ev = Evaluator::new(&s, Caps::default());
        for (name, f) in sample_formulas() {
            let direct = ev.holds(&f, &vec![]).unwrap();
            let expanded = ev.holds(&f.expand_defs(), &vec![]).unwrap();
            prop_assert_eq!(direct, expanded, "{}", name);
        }
    }

    #[test]
    fn dual_swap_reads_complemented_membership(bits in any::<u32>()) {
        let k = 3;
        let build = |bits: u32| -> Structure {
            let mem: Vec<(usize, usize)> = (0..k)
                .flat_map(|b| (0..k).map(move |a| (a, b)))
                .filter(|&(a, b)| bits >> (b * k + a) & 1 == 1)
                .collect();
            OneSorted::new((0..k).map(|i| format!("e{i}")).collect(), &mem).into()
        };
        let (m, co) = (build(bits), build(!bits));
        let (ev, co_ev) = (Evaluator::new(&m, Caps::default()), Evaluator::new(&co, Caps::default()));
        for (name, f) in sample_formulas() {
            prop_assert_eq!(dual_swap(&dual_swap(&f)), f.clone());
            let f = f.expand_defs();
            let swapped = ev.holds(&dual_swap(&f), &vec![]).unwrap();
            prop_assert_eq!(swapped, co_ev.holds(&f, &vec![]).unwrap(), "{}", name);
        }
    }

    #[test]
    fn memoized_leq_matches_reference(a in chf(2), b in chf(2)) {
        prop_assert_eq!(games::game_leq(a, b), games::game_leq_reference(a, b));
    }

    #[test]
    fn canonical_form_is_relabelling_invariant(mask in 0u32..1 << 16, perm in Just([0usize, 1, 2, 3]).prop_shuffle()) {
        let k = 4;
        let mut moved = 0u32;
        for b in 0..k {
            for a in 0..k {
                if mask >> (b * k + a) & 1 == 1 {
                    moved |= 1 << (perm[b] * k + perm[a]);
                }
            }
        }
        prop_assert_eq!(canonical_form(k, mask), canonical_form(k, moved));
        prop_assert!(canonical_form(k, mask) <= mask);
    }
}

#[test]
fn memoized_leq_matches_reference_on_thousand_pairs() {
    let pool = games::sample_games(3, 2000, 11, &Caps::default()).unwrap();
    for p in pool.chunks_exact(2) {
        assert_eq!(
            games::game_leq(p[0], p[1]),
            games::game_leq_reference(p[0], p[1]),
            "{} {}",
            p[0],
            p[1]
        );
    }
}
