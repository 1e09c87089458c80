//! Conway games and surreal numbers carried by complemented sets.
//!
//! A set's low options are its non-self-membered members and its high
//! options the self-membered ones; a high set plays as its complement.
//! Sums and products are always low sets, with high options stored as
//! complements.

use std::cell::RefCell;
use std::collections::HashMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::chfset::{complement, is_helow, negative, universe_chf, CHFSet};
use crate::error::{Caps, Error, Result};

pub type Dyadic = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameView {
    pub carrier: CHFSet,
    pub low_options: Vec<CHFSet>,
    pub high_options: Vec<CHFSet>,
}

/// Split `a`'s members (or its complement's, for high `a`) by polarity.
pub fn options(a: CHFSet) -> GameView {
    let (high, low): (Vec<CHFSet>, Vec<CHFSet>) = a.children().iter().partition(|c| c.is_high());
    GameView {
        carrier: a,
        low_options: low,
        high_options: high,
    }
}

fn low_opts(a: CHFSet) -> impl Iterator<Item = CHFSet> {
    a.children().iter().copied().filter(|c| c.is_low())
}

fn high_opts(a: CHFSet) -> impl Iterator<Item = CHFSet> {
    a.children().iter().copied().filter(|c| c.is_high())
}

fn as_low(g: CHFSet) -> CHFSet {
    if g.is_high() {
        complement(g)
    } else {
        g
    }
}

fn as_high(g: CHFSet) -> CHFSet {
    if g.is_low() {
        complement(g)
    } else {
        g
    }
}

/// The low set `{lows | highs}`.
pub fn make_game<L, H>(lows: L, highs: H) -> CHFSet
where
    L: IntoIterator<Item = CHFSet>,
    H: IntoIterator<Item = CHFSet>,
{
    CHFSet::low(
        lows.into_iter()
            .map(as_low)
            .chain(highs.into_iter().map(as_high)),
    )
}

pub fn game_neg(a: CHFSet) -> CHFSet {
    negative(a)
}

thread_local! {
    static SUM: RefCell<HashMap<(u32, u32), CHFSet>> = RefCell::new(HashMap::new());
    static LEQ: RefCell<HashMap<(u32, u32), bool>> = RefCell::new(HashMap::new());
    static SURREAL: RefCell<HashMap<u32, bool>> = RefCell::new(HashMap::new());
    static MUL: RefCell<HashMap<(u32, u32), CHFSet>> = RefCell::new(HashMap::new());
}

pub fn game_sum(a: CHFSet, c: CHFSet) -> CHFSet {
    let key = (a.id(), c.id());
    if let Some(r) = SUM.with(|m| m.borrow().get(&key).copied()) {
        return r;
    }
    let r = make_game(
        low_opts(a)
            .map(|x| game_sum(x, c))
            .chain(low_opts(c).map(|x| game_sum(a, x))),
        high_opts(a)
            .map(|y| game_sum(y, c))
            .chain(high_opts(c).map(|y| game_sum(a, y))),
    );
    SUM.with(|m| m.borrow_mut().insert(key, r));
    r
}

pub fn game_sub(a: CHFSet, c: CHFSet) -> CHFSet {
    game_sum(a, game_neg(c))
}

pub fn game_leq(a: CHFSet, c: CHFSet) -> bool {
    let key = (a.id(), c.id());
    if let Some(r) = LEQ.with(|m| m.borrow().get(&key).copied()) {
        return r;
    }
    let r = high_opts(c).all(|y| !game_leq(y, a)) && low_opts(a).all(|x| !game_leq(c, x));
    LEQ.with(|m| m.borrow_mut().insert(key, r));
    r
}

/// [`game_leq`] without the memo table.
pub fn game_leq_reference(a: CHFSet, c: CHFSet) -> bool {
    let o = options(c);
    let p = options(a);
    o.high_options.iter().all(|&y| !game_leq_reference(y, a))
        && p.low_options.iter().all(|&x| !game_leq_reference(c, x))
}

pub fn game_eq(a: CHFSet, c: CHFSet) -> bool {
    game_leq(a, c) && game_leq(c, a)
}

pub fn is_surreal(a: CHFSet) -> bool {
    if let Some(r) = SURREAL.with(|m| m.borrow().get(&a.id()).copied()) {
        return r;
    }
    let r = a.children().iter().all(|&x| is_surreal(x))
        && low_opts(a).all(|x| high_opts(a).all(|y| !game_leq(y, x)));
    SURREAL.with(|m| m.borrow_mut().insert(a.id(), r));
    r
}

pub fn is_surreal_ordinal(a: CHFSet) -> bool {
    is_helow(a) && is_surreal(a)
}

fn mul(a: CHFSet, c: CHFSet) -> CHFSet {
    let key = (a.id(), c.id());
    if let Some(r) = MUL.with(|m| m.borrow().get(&key).copied()) {
        return r;
    }
    let term = |x: CHFSet, y: CHFSet| game_sub(game_sum(mul(x, c), mul(a, y)), mul(x, y));
    let (la, ha): (Vec<_>, Vec<_>) = (low_opts(a).collect(), high_opts(a).collect());
    let (lc, hc): (Vec<_>, Vec<_>) = (low_opts(c).collect(), high_opts(c).collect());
    let mut lows = Vec::new();
    let mut highs = Vec::new();
    for &x in &la {
        lows.extend(lc.iter().map(|&y| term(x, y)));
        highs.extend(hc.iter().map(|&y| term(x, y)));
    }
    for &x in &ha {
        lows.extend(hc.iter().map(|&y| term(x, y)));
        highs.extend(lc.iter().map(|&y| term(x, y)));
    }
    let r = make_game(lows, highs);
    MUL.with(|m| m.borrow_mut().insert(key, r));
    r
}

pub fn surreal_mul(a: CHFSet, c: CHFSet) -> Result<CHFSet> {
    for x in [a, c] {
        if !is_surreal(x) {
            return Err(Error::NotSurreal(x.to_string()));
        }
    }
    Ok(mul(a, c))
}

/// An equivalent game of least height below `height_bound`, first in canonical order.
pub fn canonical_rep(a: CHFSet, height_bound: u32, caps: &Caps) -> Result<CHFSet> {
    for h in 1..=height_bound {
        let found = universe_chf(h, caps)?
            .into_iter()
            .filter(|b| b.depth() + 1 == h)
            .find(|&b| game_eq(a, b));
        if let Some(b) = found {
            return Ok(b);
        }
    }
    Err(Error::Precondition(format!(
        "no game equivalent to {a} below height {height_bound}"
    )))
}

/// The numbers born by day `days`, with their values, in increasing order.
pub fn dyadic_ladder(days: u32) -> Vec<(Dyadic, CHFSet)> {
    let mut ladder = vec![(Dyadic::from_integer(0), CHFSet::empty())];
    for _ in 0..days {
        let mut next = Vec::with_capacity(2 * ladder.len() + 1);
        let (lo, lo_g) = ladder[0];
        next.push((lo - 1, make_game([], [lo_g])));
        for w in ladder.windows(2) {
            let ((l, lg), (r, rg)) = (w[0], w[1]);
            next.push((l, lg));
            next.push(((l + r) / 2, make_game([lg], [rg])));
        }
        let (hi, hi_g) = *ladder.last().unwrap();
        next.push((hi, hi_g));
        next.push((hi + 1, make_game([hi_g], [])));
        ladder = next;
    }
    ladder
}

/// The value of `a` if it equals a number born by day `days`.
pub fn dyadic_value(a: CHFSet, days: u32) -> Option<Dyadic> {
    dyadic_ladder(days)
        .into_iter()
        .find(|&(_, g)| game_eq(a, g))
        .map(|(q, _)| q)
}

/// The first group law that fails on `(a, b, c)`, if any.
pub fn group_law_failure(a: CHFSet, b: CHFSet, c: CHFSet) -> Option<&'static str> {
    let zero = CHFSet::empty();
    if !game_eq(game_sum(a, b), game_sum(b, a)) {
        return Some("commutativity");
    }
    if !game_eq(game_sum(game_sum(a, b), c), game_sum(a, game_sum(b, c))) {
        return Some("associativity");
    }
    if !game_eq(game_sum(a, zero), a) {
        return Some("identity");
    }
    if !game_eq(game_sub(a, a), zero) {
        return Some("inverse");
    }
    if game_leq(a, b) != game_leq(game_sub(a, b), zero) {
        return Some("order compatibility");
    }
    if game_leq(a, b) && game_leq(b, c) && !game_leq(a, c) {
        return Some("transitivity");
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub law: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<[String; 3]>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.law.is_none()
    }
}

/// Run [`group_law_failure`] on each triple, stopping at the first failure.
pub fn check_group_laws<I: IntoIterator<Item = (CHFSet, CHFSet, CHFSet)>>(triples: I) -> LawReport {
    let mut cases = 0;
    for (a, b, c) in triples {
        cases += 1;
        if let Some(law) = group_law_failure(a, b, c) {
            return LawReport {
                cases,
                law: Some(law),
                counterexample: Some([a.to_string(), b.to_string(), c.to_string()]),
            };
        }
    }
    LawReport {
        cases,
        law: None,
        counterexample: None,
    }
}

/// Every ordered triple from `games`.
pub fn triples(games: &[CHFSet]) -> Vec<(CHFSet, CHFSet, CHFSet)> {
    let mut out = Vec::with_capacity(games.len().pow(3));
    for &a in games {
        for &b in games {
            out.extend(games.iter().map(|&c| (a, b, c)));
        }
    }
    out
}

/// Seeded carriers of depth at most `depth`, each with one to three members.
pub fn sample_games(depth: u32, count: usize, seed: u64, caps: &Caps) -> Result<Vec<CHFSet>> {
    use rand::{Rng, SeedableRng};
    if depth == 0 {
        return Ok(vec![CHFSet::empty(), CHFSet::universe()]);
    }
    let below = universe_chf(depth, caps)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            let kids: Vec<CHFSet> = (0..k)
                .map(|_| below[rng.gen_range(0..below.len())])
                .collect();
            if rng.gen_bool(0.5) {
                CHFSet::low(kids)
            } else {
                CHFSet::high(kids)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> CHFSet {
        CHFSet::parse(s).unwrap()
    }

    #[test]
    fn options_split_by_polarity() {
        let v = options(g("{{}, co{}}"));
        assert_eq!(v.low_options, [g("{}")]);
        assert_eq!(v.high_options, [g("co{}")]);
        assert!(options(g("co{}")).low_options.is_empty());
    }

    #[test]
    fn small_arithmetic() {
        let zero = g("{}");
        let one = g("{{}}");
        assert!(game_leq(zero, zero));
        assert!(!game_leq(one, zero));
        assert!(game_eq(zero, g("co{}")));
        assert!(game_eq(game_sum(one, one), g("{{{}}}")));
        assert!(game_eq(game_neg(one), g("{co{}}")));
        assert!(game_eq(game_sum(one, game_neg(one)), zero));
        assert!(game_eq(surreal_mul(one, one).unwrap(), one));
    }

    #[test]
    fn surreal_recognition() {
        let star = g("{{}, co{}}");
        assert!(!is_surreal(star));
        assert!(surreal_mul(star, star).is_err());
        assert!(is_surreal_ordinal(g("{{}}")));
        assert!(!is_surreal_ordinal(g("{co{}}")));
    }

    #[test]
    fn laws_on_small_games() {
        let u = universe_chf(2, &Caps::default()).unwrap();
        let r = check_group_laws(triples(&u));
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.cases, 512);
    }

    #[test]
    fn values() {
        let half = g("{{}, co{{}}}");
        assert_eq!(dyadic_value(g("{}"), 2), Some(Dyadic::from_integer(0)));
        assert_eq!(dyadic_value(half, 2), Some(Dyadic::new(1, 2)));
        assert_eq!(dyadic_value(g("{{}, co{}}"), 3), None);
        assert_eq!(dyadic_ladder(2).len(), 7);
    }

    #[test]
    fn canonical_representatives() {
        let caps = Caps::default();
        assert_eq!(canonical_rep(g("co{}"), 1, &caps).unwrap(), g("{}"));
        let one = g("{{}}");
        assert_eq!(
            canonical_rep(game_sum(one, game_neg(one)), 2, &caps).unwrap(),
            g("{}")
        );
        assert_eq!(canonical_rep(one, 2, &caps).unwrap(), one);
    }
}
