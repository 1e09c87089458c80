//! Complemented hereditarily finite sets.
//!
//! A set is either `LOW(S)`, whose members are exactly `S`, or `HIGH(S)`, whose
//! members are everything except `S`; `S` is a finite set of such sets. `∅ =
//! LOW{}` and `V = HIGH{}`. A set is self-membered exactly when it is high.
//!
//! Canonical order: by depth (`∅` and `V` have depth 0), then low before high,
//! then lexicographically on the canonically sorted children.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Caps, Error, Result};
use crate::hfset::HFSet;
use crate::parse::Cursor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Low,
    High,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Low => Polarity::High,
            Polarity::High => Polarity::Low,
        }
    }
}

struct Node {
    id: u32,
    depth: u32,
    polarity: Polarity,
    children: Box<[CHFSet]>,
}

/// Handle to an interned complemented set.
#[derive(Clone, Copy)]
pub struct CHFSet(&'static Node);

type Key = (Polarity, Box<[u32]>);

fn interner() -> &'static Mutex<(HashMap<Key, &'static Node>, u32)> {
    static TABLE: OnceLock<Mutex<(HashMap<Key, &'static Node>, u32)>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new((HashMap::new(), 0)))
}

impl CHFSet {
    fn intern_sorted(polarity: Polarity, children: Vec<CHFSet>) -> CHFSet {
        let key: Key = (polarity, children.iter().map(|c| c.id()).collect());
        let mut guard = interner().lock().expect("chf interner poisoned");
        if let Some(node) = guard.0.get(&key) {
            return CHFSet(node);
        }
        let depth = children.iter().map(|c| c.depth() + 1).max().unwrap_or(0);
        let id = guard.1;
        guard.1 += 1;
        let node: &'static Node = Box::leak(Box::new(Node {
            id,
            depth,
            polarity,
            children: children.into_boxed_slice(),
        }));
        guard.0.insert(key, node);
        CHFSet(node)
    }

    pub fn new<I: IntoIterator<Item = CHFSet>>(polarity: Polarity, children: I) -> CHFSet {
        let mut v: Vec<CHFSet> = children.into_iter().collect();
        v.sort();
        v.dedup();
        CHFSet::intern_sorted(polarity, v)
    }

    pub fn low<I: IntoIterator<Item = CHFSet>>(children: I) -> CHFSet {
        CHFSet::new(Polarity::Low, children)
    }

    pub fn high<I: IntoIterator<Item = CHFSet>>(children: I) -> CHFSet {
        CHFSet::new(Polarity::High, children)
    }

    pub fn empty() -> CHFSet {
        CHFSet::intern_sorted(Polarity::Low, Vec::new())
    }

    pub fn universe() -> CHFSet {
        CHFSet::intern_sorted(Polarity::High, Vec::new())
    }

    pub fn id(self) -> u32 {
        self.0.id
    }

    pub fn depth(self) -> u32 {
        self.0.depth
    }

    pub fn polarity(self) -> Polarity {
        self.0.polarity
    }

    pub fn is_low(self) -> bool {
        self.0.polarity == Polarity::Low
    }

    pub fn is_high(self) -> bool {
        self.0.polarity == Polarity::High
    }

    /// The finite set `S` of `LOW(S)` or `HIGH(S)`, canonically sorted.
    pub fn children(self) -> &'static [CHFSet] {
        &self.0.children
    }

    pub fn contains(self, x: CHFSet) -> bool {
        member_chf(x, self)
    }

    pub fn parse(s: &str) -> Result<CHFSet> {
        let mut cur = Cursor::new(s);
        let set = parse_cset(&mut cur)?;
        cur.expect_end()?;
        Ok(set)
    }
}

fn parse_cset(cur: &mut Cursor) -> Result<CHFSet> {
    if cur.eat_str("co") {
        return Ok(complement(parse_cset(cur)?));
    }
    cur.expect('{')?;
    let mut children = Vec::new();
    if !cur.eat('}') {
        loop {
            children.push(parse_cset(cur)?);
            if cur.eat('}') {
                break;
            }
            cur.expect(',')?;
        }
    }
    Ok(CHFSet::low(children))
}

impl PartialEq for CHFSet {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for CHFSet {}

impl Hash for CHFSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

impl Ord for CHFSet {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.depth()
            .cmp(&other.depth())
            .then(self.polarity().cmp(&other.polarity()))
            .then_with(|| self.children().cmp(other.children()))
    }
}

impl PartialOrd for CHFSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CHFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_high() {
            f.write_str("co")?;
        }
        f.write_str("{")?;
        for (i, m) in self.children().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for CHFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for CHFSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<CHFSet> {
        CHFSet::parse(s)
    }
}

/// JSON form: a low set is the array of its children, a high set is
/// `{"co": [children]}`.
impl Serialize for CHFSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self.polarity() {
            Polarity::Low => s.collect_seq(self.children()),
            Polarity::High => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("co", self.children())?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for CHFSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Low(Vec<CHFSet>),
            High { co: Vec<CHFSet> },
        }
        match Repr::deserialize(d) {
            Ok(Repr::Low(v)) => Ok(CHFSet::low(v)),
            Ok(Repr::High { co }) => Ok(CHFSet::high(co)),
            Err(_) => Err(D::Error::custom("expected an array or {\"co\": array}")),
        }
    }
}

pub fn member_chf(x: CHFSet, a: CHFSet) -> bool {
    let listed = x.depth() < a.depth() && a.children().binary_search(&x).is_ok();
    listed == a.is_low()
}

pub fn complement(a: CHFSet) -> CHFSet {
    CHFSet::intern_sorted(a.polarity().flip(), a.children().to_vec())
}

fn merge(a: &[CHFSet], b: &[CHFSet], keep_a: bool, keep_b: bool, keep_both: bool) -> Vec<CHFSet> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                if keep_a {
                    out.push(a[i]);
                }
                i += 1;
            }
            Ordering::Greater => {
                if keep_b {
                    out.push(b[j]);
                }
                j += 1;
            }
            Ordering::Equal => {
                if keep_both {
                    out.push(a[i]);
                }
                i += 1;
                j += 1;
            }
        }
    }
    if keep_a {
        out.extend_from_slice(&a[i..]);
    }
    if keep_b {
        out.extend_from_slice(&b[j..]);
    }
    out
}

pub fn intersect_chf(a: CHFSet, b: CHFSet) -> CHFSet {
    let (s, t) = (a.children(), b.children());
    match (a.polarity(), b.polarity()) {
        (Polarity::Low, Polarity::Low) => {
            CHFSet::intern_sorted(Polarity::Low, merge(s, t, false, false, true))
        }
        (Polarity::Low, Polarity::High) => {
            CHFSet::intern_sorted(Polarity::Low, merge(s, t, true, false, false))
        }
        (Polarity::High, Polarity::Low) => {
            CHFSet::intern_sorted(Polarity::Low, merge(t, s, true, false, false))
        }
        (Polarity::High, Polarity::High) => {
            CHFSet::intern_sorted(Polarity::High, merge(s, t, true, true, true))
        }
    }
}

pub fn union_chf(a: CHFSet, b: CHFSet) -> CHFSet {
    complement(intersect_chf(complement(a), complement(b)))
}

pub fn diff_chf(a: CHFSet, b: CHFSet) -> CHFSet {
    intersect_chf(a, complement(b))
}

pub fn subset_chf(a: CHFSet, b: CHFSet) -> bool {
    intersect_chf(a, b) == a
}

/// `BPot a`: for every low member `c` of `a`, every subset of `c` and its complement.
/// A high `a` contains all but finitely many low sets, so its `BPot` is `V`.
pub fn bpot(a: CHFSet, caps: &Caps) -> Result<CHFSet> {
    if a.is_high() {
        return Ok(CHFSet::universe());
    }
    let mut total: u64 = 0;
    for c in a.children().iter().filter(|c| c.is_low()) {
        if c.children().len() >= 62 {
            return Err(Error::cap_pow2(
                "bpot",
                c.children().len() + 1,
                caps.max_elements,
            ));
        }
        total = total.saturating_add(2u64 << c.children().len());
    }
    if total > caps.max_elements {
        return Err(Error::cap("bpot", total, caps.max_elements));
    }
    let mut out = Vec::new();
    for c in a.children().iter().filter(|c| c.is_low()) {
        let elems = c.children();
        let n = elems.len();
        for mask in 0u64..1 << n {
            let v: Vec<CHFSet> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| elems[i])
                .collect();
            out.push(CHFSet::intern_sorted(Polarity::Low, v.clone()));
            out.push(CHFSet::intern_sorted(Polarity::High, v));
        }
    }
    Ok(CHFSet::low(out))
}

/// `h ∉ h` and every member equals the `BPot` of its intersection with `h`.
pub fn is_bhistory(h: CHFSet) -> bool {
    let caps = Caps::default();
    h.is_low()
        && h.children()
            .iter()
            .all(|&x| bpot(intersect_chf(x, h), &caps).is_ok_and(|p| p == x))
}

thread_local! {
    static BLEVEL_MEMO: RefCell<HashMap<u32, bool>> = RefCell::new(HashMap::new());
    static BEVOF_MEMO: RefCell<HashMap<u32, CHFSet>> = RefCell::new(HashMap::new());
    static NEG_MEMO: RefCell<HashMap<u32, CHFSet>> = RefCell::new(HashMap::new());
    static HELOW_MEMO: RefCell<HashMap<u32, bool>> = RefCell::new(HashMap::new());
}

/// `s` is `BPot` of a boolean-history, via `s = BPot{r ∈ s : r a boolean-level}`.
pub fn is_blevel(s: CHFSet) -> bool {
    if s.is_high() {
        return false;
    }
    if let Some(b) = BLEVEL_MEMO.with(|m| m.borrow().get(&s.id()).copied()) {
        return b;
    }
    let below = CHFSet::low(s.children().iter().copied().filter(|&r| is_blevel(r)));
    let b = bpot(below, &Caps::default()).is_ok_and(|p| p == s);
    BLEVEL_MEMO.with(|m| m.borrow_mut().insert(s.id(), b));
    b
}

/// Reference check for [`is_blevel`]: search boolean-histories made of low members of `s`.
pub fn is_blevel_exhaustive(s: CHFSet, caps: &Caps) -> Result<bool> {
    if s.is_high() {
        return Ok(false);
    }
    let lows: Vec<CHFSet> = s
        .children()
        .iter()
        .copied()
        .filter(|c| c.is_low())
        .collect();
    let n = lows.len();
    if n >= 63 || (1u64 << n) > caps.max_elements {
        return Err(Error::cap_pow2(
            "boolean-history search",
            n,
            caps.max_elements,
        ));
    }
    for mask in 0u64..1 << n {
        let h = CHFSet::low((0..n).filter(|i| mask >> i & 1 == 1).map(|i| lows[i]));
        if is_bhistory(h) && bpot(h, caps)? == s {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `blevel(0) = ∅`, `blevel(n+1) = BPot{blevel(0), …, blevel(n)}`.
pub fn blevel(n: u32, caps: &Caps) -> Result<CHFSet> {
    let mut levels = vec![CHFSet::empty()];
    for _ in 0..n {
        let next = bpot(CHFSet::low(levels.iter().copied()), caps)?;
        levels.push(next);
    }
    Ok(levels[n as usize])
}

/// All complemented sets of depth below `n`, canonically ordered.
/// Sizes are 1, 2, 8, 512 for `n = 0..=3`; larger `n` exceeds any cap.
pub fn universe_chf(n: u32, caps: &Caps) -> Result<Vec<CHFSet>> {
    let mut u: Vec<CHFSet> = Vec::new();
    for _ in 0..n {
        let k = u.len();
        if k >= 62 || (2u64 << k) > caps.max_elements {
            return Err(Error::cap_pow2("universe_chf", k + 1, caps.max_elements));
        }
        let mut next = Vec::with_capacity(2 << k);
        for mask in 0u64..1 << k {
            let v: Vec<CHFSet> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| u[i])
                .collect();
            next.push(CHFSet::intern_sorted(Polarity::Low, v.clone()));
            next.push(CHFSet::intern_sorted(Polarity::High, v));
        }
        next.sort();
        u = next;
    }
    Ok(u)
}

/// The least boolean-level of which `a` or its complement is a subset.
pub fn bevof(a: CHFSet, caps: &Caps) -> Result<CHFSet> {
    if a.is_high() {
        return bevof(complement(a), caps);
    }
    if let Some(l) = BEVOF_MEMO.with(|m| m.borrow().get(&a.id()).copied()) {
        return Ok(l);
    }
    let parts = a
        .children()
        .iter()
        .map(|&x| bevof(x, caps))
        .collect::<Result<Vec<_>>>()?;
    let l = bpot(CHFSet::low(parts), caps)?;
    BEVOF_MEMO.with(|m| m.borrow_mut().insert(a.id(), l));
    Ok(l)
}

/// The negative map: `¬LOW(S) = HIGH{¬x : x ∈ S}` and `¬HIGH(S) = LOW{¬x : x ∈ S}`.
/// It satisfies `x ∈ a ⟺ ¬x ∉ ¬a`.
pub fn negative(a: CHFSet) -> CHFSet {
    if let Some(n) = NEG_MEMO.with(|m| m.borrow().get(&a.id()).copied()) {
        return n;
    }
    let n = CHFSet::new(
        a.polarity().flip(),
        a.children().iter().map(|&x| negative(x)),
    );
    NEG_MEMO.with(|m| m.borrow_mut().insert(a.id(), n));
    n
}

/// Low with every child helow.
pub fn is_helow(a: CHFSet) -> bool {
    if a.is_high() {
        return false;
    }
    if let Some(b) = HELOW_MEMO.with(|m| m.borrow().get(&a.id()).copied()) {
        return b;
    }
    let b = a.children().iter().all(|&x| is_helow(x));
    HELOW_MEMO.with(|m| m.borrow_mut().insert(a.id(), b));
    b
}

/// The helow members of a low set.
pub fn helow_restrict(a: CHFSet) -> Result<CHFSet> {
    if a.is_high() {
        return Err(Error::Precondition(format!(
            "helow_restrict needs a low set, got {a}"
        )));
    }
    Ok(CHFSet::low(
        a.children().iter().copied().filter(|&x| is_helow(x)),
    ))
}

pub fn hf_of_helow(a: CHFSet) -> Result<HFSet> {
    if !is_helow(a) {
        return Err(Error::NotHelow(a.to_string()));
    }
    fn go(a: CHFSet) -> HFSet {
        HFSet::from_members(a.children().iter().map(|&x| go(x)))
    }
    Ok(go(a))
}

pub fn helow_of_hf(a: HFSet) -> CHFSet {
    CHFSet::low(a.members().iter().map(|&x| helow_of_hf(x)))
}
