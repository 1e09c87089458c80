//! Mutual interpretation of plain and complemented sets.
//!
//! Plain sets simulate complemented ones by using `∅` as a flag: `a` is
//! read as high iff `∅ ∈ a`, and `x ∈• a` iff `(f_J(x) ∈ a) ↔ (∅ ∉ a)`.
//! In the other direction `h` maps every complemented set to a
//! hereditarily low one, mirrored here as a plain set.

use std::cell::RefCell;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chfset::{blevel, hf_of_helow, member_chf, universe_chf, CHFSet, Polarity};
use crate::error::{Caps, Error, Result};
use crate::hfset::{member, subsets, v_elements, HFSet};

/// `z_n`: `n` nested singletons around `∅`.
pub fn zermelo(n: u32) -> HFSet {
    (0..n).fold(HFSet::empty(), |z, _| HFSet::singleton(z))
}

/// `z_n` as a low complemented set.
pub fn zermelo_chf(n: u32) -> CHFSet {
    (0..n).fold(CHFSet::empty(), |z, _| CHFSet::low([z]))
}

/// `v_n`: `n` nested low singletons around `V`.
pub fn v_chf(n: u32) -> CHFSet {
    (0..n).fold(CHFSet::universe(), |z, _| CHFSet::low([z]))
}

pub fn is_zermelo(a: HFSet) -> bool {
    match a.members() {
        [] => true,
        [z] => is_zermelo(*z),
        _ => false,
    }
}

/// `{a}` for a Zermelo number, `a` otherwise. A bijection onto the nonempty sets.
pub fn f_j(a: HFSet) -> HFSet {
    if is_zermelo(a) {
        HFSet::singleton(a)
    } else {
        a
    }
}

/// Inverse of [`f_j`]; `None` on `∅`.
pub fn f_j_inv(a: HFSet) -> Option<HFSet> {
    match a.members() {
        [] => None,
        [z] if is_zermelo(*z) => Some(*z),
        _ => Some(a),
    }
}

fn is_zermelo_chf(a: CHFSet) -> bool {
    a.is_low()
        && match a.children() {
            [] => true,
            [z] => is_zermelo_chf(*z),
            _ => false,
        }
}

/// [`f_j`] computed on the complemented side.
pub fn f_j_chf(a: CHFSet) -> CHFSet {
    if is_zermelo_chf(a) {
        CHFSet::low([a])
    } else {
        a
    }
}

fn f_j_chf_inv(a: CHFSet) -> Option<CHFSet> {
    if a == CHFSet::empty() {
        return None;
    }
    match (a.is_low(), a.children()) {
        (true, [z]) if is_zermelo_chf(*z) => Some(*z),
        _ => Some(a),
    }
}

fn ladder_index(a: CHFSet) -> Option<(bool, u32)> {
    let mut n = 0;
    let mut cur = a;
    loop {
        if cur == CHFSet::empty() {
            return Some((false, n));
        }
        if cur == CHFSet::universe() {
            return Some((true, n));
        }
        match (cur.is_low(), cur.children()) {
            (true, [x]) => {
                cur = *x;
                n += 1;
            }
            _ => return None,
        }
    }
}

/// `f_J` read through `h`: `z_n ↦ v_n ↦ z_{n+1}`, everything else fixed.
pub fn f_j_circ(a: CHFSet) -> CHFSet {
    match ladder_index(a) {
        Some((false, n)) => v_chf(n),
        Some((true, n)) => zermelo_chf(n + 1),
        None => a,
    }
}

/// `z_{n+1} ↦ v_n ↦ z_n`, everything else fixed.
pub fn oc_inj(a: CHFSet) -> CHFSet {
    match ladder_index(a) {
        Some((false, n)) if n > 0 => v_chf(n - 1),
        Some((true, n)) => zermelo_chf(n),
        _ => a,
    }
}

/// `x ∈• a`.
pub fn mem_star(x: HFSet, a: HFSet) -> bool {
    a.contains(f_j(x)) != a.contains(HFSet::empty())
}

/// Toggle the flag `∅`.
pub fn star_complement(a: HFSet) -> HFSet {
    let e = HFSet::empty();
    if a.contains(e) {
        HFSet::from_members(a.members().iter().copied().filter(|&x| x != e))
    } else {
        HFSet::from_members(a.members().iter().copied().chain([e]))
    }
}

/// `W_γ = {f_J(x) : x ⊆ W_β ∪ {∅} for some β < γ}`.
pub fn w_level(gamma: u32, caps: &Caps) -> Result<HFSet> {
    if gamma > 3 {
        return Err(Error::cap("w_level height", gamma as u64, 3));
    }
    let mut w = HFSet::empty();
    for _ in 0..gamma {
        let base = HFSet::from_members(w.members().iter().copied().chain([HFSet::empty()]));
        w = HFSet::from_members(subsets(base, caps)?.into_iter().map(f_j));
    }
    Ok(w)
}

thread_local! {
    static ENCODE: RefCell<HashMap<u32, HFSet>> = RefCell::new(HashMap::new());
    static DECODE: RefCell<HashMap<u32, CHFSet>> = RefCell::new(HashMap::new());
    static H: RefCell<HashMap<u32, CHFSet>> = RefCell::new(HashMap::new());
}

/// The plain set that codes `c` under `∈•`.
pub fn encode_star(c: CHFSet) -> HFSet {
    if let Some(a) = ENCODE.with(|m| m.borrow().get(&c.id()).copied()) {
        return a;
    }
    let flag = c.is_high().then(HFSet::empty);
    let a = HFSet::from_members(
        c.children()
            .iter()
            .map(|&x| f_j(encode_star(x)))
            .chain(flag),
    );
    ENCODE.with(|m| m.borrow_mut().insert(c.id(), a));
    a
}

/// Inverse of [`encode_star`]; every plain set codes something.
pub fn decode_star(a: HFSet) -> CHFSet {
    if let Some(c) = DECODE.with(|m| m.borrow().get(&a.id()).copied()) {
        return c;
    }
    let pol = if a.contains(HFSet::empty()) {
        Polarity::High
    } else {
        Polarity::Low
    };
    let c = CHFSet::new(
        pol,
        a.members()
            .iter()
            .filter_map(|&x| f_j_inv(x))
            .map(decode_star),
    );
    DECODE.with(|m| m.borrow_mut().insert(a.id(), c));
    c
}

/// `h`, computed entirely among complemented sets. The result is helow.
pub fn h_chf(c: CHFSet) -> CHFSet {
    if let Some(r) = H.with(|m| m.borrow().get(&c.id()).copied()) {
        return r;
    }
    // For high `c`, `{x : x ∉ c}` is exactly its listed children.
    let flag = c.is_high().then(CHFSet::empty);
    let r = CHFSet::low(c.children().iter().map(|&x| f_j_chf(h_chf(x))).chain(flag));
    H.with(|m| m.borrow_mut().insert(c.id(), r));
    r
}

/// `h` with its helow value mirrored as a plain set.
pub fn h_bij(c: CHFSet) -> HFSet {
    hf_of_helow(h_chf(c)).expect("h lands in the helow sets")
}

/// Inverse of [`h_bij`], by recursion on the helow set that `a` mirrors.
pub fn h_inv(a: HFSet) -> CHFSet {
    h_chf_inv(crate::chfset::helow_of_hf(a))
}

fn h_chf_inv(a: CHFSet) -> CHFSet {
    let e = CHFSet::empty();
    let kids = a
        .children()
        .iter()
        .filter_map(|&x| f_j_chf_inv(x))
        .map(h_chf_inv);
    if a.contains(e) {
        CHFSet::high(kids)
    } else {
        CHFSet::low(kids)
    }
}

/// `x ∈° a`, i.e. `h(x) ∈ h(a)`.
pub fn mem_circ(x: CHFSet, a: CHFSet) -> bool {
    member(h_bij(x), h_bij(a))
}

#[derive(Clone, Copy, Debug)]
pub struct RoundTripOptions {
    pub caps: Caps,
    /// Random pairs checked when the complemented universe is too large.
    pub samples: usize,
    pub seed: u64,
}

impl Default for RoundTripOptions {
    fn default() -> Self {
        RoundTripOptions {
            caps: Caps::default(),
            samples: 500,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTripCheck {
    pub name: String,
    pub cases: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTripReport {
    pub depth: u32,
    /// Every complemented set of depth at most `depth` was used.
    pub exhaustive: bool,
    pub checks: Vec<RoundTripCheck>,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mode = if self.exhaustive {
            "exhaustive"
        } else {
            "sampled"
        };
        let mut s = format!("round trips to depth {} ({mode})\n", self.depth);
        for c in &self.checks {
            let v = if c.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("  {v} {:<40} {} cases\n", c.name, c.cases));
            if let Some(x) = &c.counterexample {
                s.push_str(&format!("       {x}\n"));
            }
        }
        s
    }
}

fn run<T, I, F>(name: &str, cases: I, ok: F) -> RoundTripCheck
where
    I: IntoIterator<Item = T>,
    T: std::fmt::Debug,
    F: Fn(&T) -> bool,
{
    let mut n = 0;
    for c in cases {
        n += 1;
        if !ok(&c) {
            return RoundTripCheck {
                name: name.into(),
                cases: n,
                passed: false,
                counterexample: Some(format!("{c:?}")),
            };
        }
    }
    RoundTripCheck {
        name: name.into(),
        cases: n,
        passed: true,
        counterexample: None,
    }
}

fn random_chf(rng: &mut ChaCha8Rng, below: &[CHFSet]) -> CHFSet {
    let k = rng.gen_range(0..=3);
    let kids: Vec<CHFSet> = (0..k)
        .map(|_| below[rng.gen_range(0..below.len())])
        .collect();
    let pol = if rng.gen_bool(0.5) {
        Polarity::Low
    } else {
        Polarity::High
    };
    CHFSet::new(pol, kids)
}

/// Check that the two interpretations are mutually inverse on every set of
/// depth at most `d`, or on the ladders plus seeded samples when the
/// complemented sets of that depth are too many to list.
pub fn verify_round_trips(d: u32, opts: &RoundTripOptions) -> Result<RoundTripReport> {
    if d > 3 {
        return Err(Error::Precondition(format!(
            "round trips are checked to depth 3, not {d}"
        )));
    }
    let caps = &opts.caps;
    let hf = v_elements(d + 1, caps)?;
    let hf_pairs: Vec<(HFSet, HFSet)> = hf
        .iter()
        .flat_map(|&x| hf.iter().map(move |&a| (x, a)))
        .collect();

    let (pool, pairs, exhaustive) = match universe_chf(d + 1, caps) {
        Ok(u) => {
            let pairs: Vec<(CHFSet, CHFSet)> = u
                .iter()
                .flat_map(|&x| u.iter().map(move |&a| (x, a)))
                .collect();
            (u, pairs, true)
        }
        Err(Error::CapExceeded { .. }) => {
            let below = universe_chf(d, caps)?;
            let mut ladder: Vec<CHFSet> = Vec::new();
            for n in 0..=d {
                for c in [zermelo_chf(n), v_chf(n)] {
                    ladder.push(c);
                    ladder.push(crate::chfset::complement(c));
                }
            }
            let mut pairs: Vec<(CHFSet, CHFSet)> = ladder
                .iter()
                .flat_map(|&x| ladder.iter().map(move |&a| (x, a)))
                .collect();
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut pool = ladder.clone();
            for _ in 0..opts.samples {
                let x = random_chf(&mut rng, &below);
                let a = random_chf(&mut rng, &below);
                pool.extend([x, a]);
                pairs.push((x, a));
            }
            (pool, pairs, false)
        }
        Err(e) => return Err(e),
    };

    let hf_wide = v_elements((d + 2).min(5), caps)?;
    let e = |x: HFSet| encode_star(h_chf(decode_star(x)));
    let mut checks = vec![
        run("f_J is injective and avoids ∅", [()], |_| {
            let mut seen = std::collections::HashSet::new();
            hf_wide
                .iter()
                .all(|&a| f_j(a) != HFSet::empty() && seen.insert(f_j(a)))
        }),
        run("star complement is an involution", hf_wide.iter(), |&&a| {
            star_complement(star_complement(a)) == a
                && mem_star(a, a) != mem_star(star_complement(a), star_complement(a))
        }),
        run("decode ∘ encode = id", pool.iter(), |&&c| {
            decode_star(encode_star(c)) == c
        }),
        run("encode ∘ decode = id", hf.iter(), |&&a| {
            encode_star(decode_star(a)) == a
        }),
        run("encode carries ∈ to ∈•", pairs.iter(), |&&(x, a)| {
            member_chf(x, a) == mem_star(encode_star(x), encode_star(a))
        }),
        run("h is helow and h_inv ∘ h = id", pool.iter(), |&&c| {
            crate::chfset::is_helow(h_chf(c)) && h_inv(h_bij(c)) == c
        }),
        run("h_inv lands back on h", hf.iter(), |&&a| {
            h_bij(h_inv(a)) == a
        }),
        run("x ∈ a iff (x ∈• a)°", pairs.iter(), |&&(x, a)| {
            member_chf(x, a) == mem_star(h_bij(x), h_bij(a))
        }),
        run("x ∈ a iff (x ∈° a)•", hf_pairs.iter(), |&&(x, a)| {
            member(x, a) == mem_star(e(x), e(a))
        }),
        run(
            "∈° is ∈ transported by h",
            hf_pairs.iter(),
            |&&(x, a)| member(x, a) == mem_circ(h_inv(x), h_inv(a)),
        ),
        run("ladder h(z_n) = z_2n, h(v_n) = z_2n+1", 0..=4u32, |&n| {
            h_bij(zermelo_chf(n)) == zermelo(2 * n) && h_bij(v_chf(n)) == zermelo(2 * n + 1)
        }),
        run("h ∘ f_J° = f_J ∘ h", pool.iter(), |&&c| {
            h_bij(f_j_circ(c)) == f_j(h_bij(c))
        }),
        run(
            "oc_inj inverts f_J° off ∅",
            pool.iter().filter(|&&c| c != CHFSet::empty()),
            |&&c| f_j_circ(oc_inj(c)) == c,
        ),
        run(
            "f_J° agrees with f_J on the helow mirror",
            hf.iter(),
            |&&a| f_j_chf(crate::chfset::helow_of_hf(a)) == crate::chfset::helow_of_hf(f_j(a)),
        ),
    ];
    let levels: Vec<(u32, HFSet, CHFSet)> = (0..=d)
        .map(|g| Ok((g, w_level(g, caps)?, blevel(g, caps)?)))
        .collect::<Result<_>>()?;
    checks.push(run(
        "W_γ are the boolean-levels•",
        levels.iter(),
        |&&(_, w, b)| decode_star(w) == b,
    ));
    Ok(RoundTripReport {
        depth: d,
        exhaustive,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hf(s: &str) -> HFSet {
        HFSet::parse(s).unwrap()
    }

    fn chf(s: &str) -> CHFSet {
        CHFSet::parse(s).unwrap()
    }

    #[test]
    fn fj_examples() {
        assert_eq!(f_j(hf("{}")), hf("{{}}"));
        assert_eq!(f_j(hf("{{}}")), hf("{{{}}}"));
        assert_eq!(f_j(hf("{{}, {{}}}")), hf("{{}, {{}}}"));
    }

    #[test]
    fn mem_star_examples() {
        for x in v_elements(3, &Caps::default()).unwrap() {
            assert!(!mem_star(x, hf("{}")));
            assert!(mem_star(x, hf("{{}}")));
            assert_eq!(mem_star(x, zermelo(3)), x == zermelo(1));
        }
    }

    #[test]
    fn codes() {
        assert_eq!(encode_star(chf("co{}")), hf("{{}}"));
        assert_eq!(encode_star(chf("{{}}")), hf("{{{}}}"));
        assert_eq!(h_bij(chf("{}")), hf("{}"));
        assert_eq!(h_bij(chf("co{}")), hf("{{}}"));
        assert_eq!(h_bij(chf("{{}}")), hf("{{{}}}"));
        assert!(mem_circ(chf("{}"), chf("co{}")));
    }

    #[test]
    fn w_levels() {
        let caps = Caps::default();
        assert_eq!(w_level(0, &caps).unwrap(), hf("{}"));
        assert_eq!(w_level(1, &caps).unwrap(), hf("{{{}}, {{{}}}}"));
        assert_eq!(
            decode_star(w_level(1, &caps).unwrap()),
            blevel(1, &caps).unwrap()
        );
        assert!(w_level(4, &caps).is_err());
    }

    #[test]
    fn round_trips_depth_two() {
        let r = verify_round_trips(2, &RoundTripOptions::default()).unwrap();
        assert!(r.exhaustive);
        assert!(r.passed(), "{}", r.to_text());
    }
}
