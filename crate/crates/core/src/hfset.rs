//! Hereditarily finite sets.
//!
//! Sets are hash-consed: every distinct set is stored once in a global table and
//! handled through a `Copy` handle, so equality and hashing are O(1).
//!
//! Canonical order: by depth (`depth(∅) = 0`, otherwise one more than the
//! deepest member), then lexicographically on the canonically sorted member
//! lists, a proper prefix coming first. Printing and iteration follow it.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Caps, Error, Result};
use crate::parse::Cursor;

struct Node {
    id: u32,
    depth: u32,
    children: Box<[HFSet]>,
}

/// Handle to an interned hereditarily finite set.
#[derive(Clone, Copy)]
pub struct HFSet(&'static Node);

struct Interner {
    table: HashMap<Box<[u32]>, &'static Node>,
    next: u32,
}

fn interner() -> &'static Mutex<Interner> {
    static TABLE: OnceLock<Mutex<Interner>> = OnceLock::new();
    TABLE.get_or_init(|| {
        Mutex::new(Interner {
            table: HashMap::new(),
            next: 0,
        })
    })
}

impl HFSet {
    /// Intern a set from members already sorted canonically and free of duplicates.
    fn intern_sorted(children: Vec<HFSet>) -> HFSet {
        let key: Box<[u32]> = children.iter().map(|c| c.id()).collect();
        let mut guard = interner().lock().expect("hf interner poisoned");
        if let Some(node) = guard.table.get(&key) {
            return HFSet(node);
        }
        let depth = children.iter().map(|c| c.depth() + 1).max().unwrap_or(0);
        let id = guard.next;
        guard.next += 1;
        let node: &'static Node = Box::leak(Box::new(Node {
            id,
            depth,
            children: children.into_boxed_slice(),
        }));
        guard.table.insert(key, node);
        HFSet(node)
    }

    pub fn from_members<I: IntoIterator<Item = HFSet>>(members: I) -> HFSet {
        let mut v: Vec<HFSet> = members.into_iter().collect();
        v.sort();
        v.dedup();
        HFSet::intern_sorted(v)
    }

    pub fn empty() -> HFSet {
        HFSet::intern_sorted(Vec::new())
    }

    pub fn singleton(x: HFSet) -> HFSet {
        HFSet::intern_sorted(vec![x])
    }

    /// Stable per-process identifier.
    pub fn id(self) -> u32 {
        self.0.id
    }

    pub fn depth(self) -> u32 {
        self.0.depth
    }

    /// Members in canonical order.
    pub fn members(self) -> &'static [HFSet] {
        &self.0.children
    }

    pub fn len(self) -> usize {
        self.0.children.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.children.is_empty()
    }

    pub fn contains(self, x: HFSet) -> bool {
        member(x, self)
    }

    pub fn is_subset(self, other: HFSet) -> bool {
        self.members().iter().all(|&x| member(x, other))
    }

    pub fn parse(s: &str) -> Result<HFSet> {
        let mut cur = Cursor::new(s);
        let set = parse_set(&mut cur)?;
        cur.expect_end()?;
        Ok(set)
    }

    pub fn to_json(self) -> serde_json::Value {
        serde_json::Value::Array(self.members().iter().map(|m| m.to_json()).collect())
    }
}

fn parse_set(cur: &mut Cursor) -> Result<HFSet> {
    cur.expect('{')?;
    let mut members = Vec::new();
    if !cur.eat('}') {
        loop {
            members.push(parse_set(cur)?);
            if cur.eat('}') {
                break;
            }
            cur.expect(',')?;
        }
    }
    Ok(HFSet::from_members(members))
}

impl PartialEq for HFSet {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for HFSet {}

impl Hash for HFSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state)
    }
}

impl Ord for HFSet {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.depth()
            .cmp(&other.depth())
            .then_with(|| self.members().cmp(other.members()))
    }
}

impl PartialOrd for HFSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for HFSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<HFSet> {
        HFSet::parse(s)
    }
}

impl Serialize for HFSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.members())
    }
}

impl<'de> Deserialize<'de> for HFSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<HFSet>::deserialize(d)?;
        Ok(HFSet::from_members(members))
    }
}

pub fn member(x: HFSet, a: HFSet) -> bool {
    x.depth() < a.depth() && a.members().binary_search(&x).is_ok()
}

fn merge(a: &[HFSet], b: &[HFSet], keep_a: bool, keep_b: bool, keep_both: bool) -> Vec<HFSet> {
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

pub fn union(a: HFSet, b: HFSet) -> HFSet {
    HFSet::intern_sorted(merge(a.members(), b.members(), true, true, true))
}

pub fn intersect(a: HFSet, b: HFSet) -> HFSet {
    HFSet::intern_sorted(merge(a.members(), b.members(), false, false, true))
}

pub fn diff(a: HFSet, b: HFSet) -> HFSet {
    HFSet::intern_sorted(merge(a.members(), b.members(), true, false, false))
}

pub fn big_union(a: HFSet) -> HFSet {
    HFSet::from_members(a.members().iter().flat_map(|m| m.members().iter().copied()))
}

/// All subsets of `a`, refused when `2^|a|` exceeds `caps.max_elements`.
pub fn powerset(a: HFSet, caps: &Caps) -> Result<HFSet> {
    Ok(HFSet::from_members(subsets(a, caps)?))
}

/// The subsets of `a` as a vector, in no particular order.
pub fn subsets(a: HFSet, caps: &Caps) -> Result<Vec<HFSet>> {
    let n = a.len();
    if n >= 64 || (1u64 << n) > caps.max_elements {
        return Err(Error::cap_pow2("powerset", n, caps.max_elements));
    }
    let elems = a.members();
    Ok((0u64..1 << n)
        .map(|mask| {
            // Ascending bit order keeps members canonically sorted.
            let v = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| elems[i])
                .collect();
            HFSet::intern_sorted(v)
        })
        .collect())
}

pub fn transitive_closure(a: HFSet) -> HFSet {
    let mut seen = std::collections::HashSet::new();
    let mut stack: Vec<HFSet> = a.members().to_vec();
    while let Some(x) = stack.pop() {
        if seen.insert(x) {
            stack.extend_from_slice(x.members());
        }
    }
    HFSet::from_members(seen)
}

/// `Pot a = {x : x ⊆ c for some c ∈ a}`.
pub fn pot(a: HFSet, caps: &Caps) -> Result<HFSet> {
    let total: u64 = a
        .members()
        .iter()
        .map(|c| {
            if c.len() >= 63 {
                u64::MAX
            } else {
                1u64 << c.len()
            }
        })
        .fold(0u64, |s, x| s.saturating_add(x));
    if total > caps.max_elements {
        return Err(Error::cap("pot", total, caps.max_elements));
    }
    let mut out = Vec::new();
    for &c in a.members() {
        out.extend(subsets(c, caps)?);
    }
    Ok(HFSet::from_members(out))
}

/// `Acc a = {x : x ∈ c or x ⊆ c for some c ∈ a}`.
pub fn acc(a: HFSet, caps: &Caps) -> Result<HFSet> {
    let p = pot(a, caps)?;
    Ok(union(p, big_union(a)))
}

pub fn is_transitive(a: HFSet) -> bool {
    a.members().iter().all(|x| x.is_subset(a))
}

/// Closed under subsets of members. Removing one element at a time suffices.
pub fn is_potent(a: HFSet) -> bool {
    a.members().iter().all(|&c| {
        c.members()
            .iter()
            .all(|&y| member(diff(c, HFSet::singleton(y)), a))
    })
}

/// Every member equals the `pot` of its intersection with `h`.
pub fn is_history(h: HFSet) -> bool {
    let caps = Caps::default();
    h.members()
        .iter()
        .all(|&x| pot(intersect(x, h), &caps).is_ok_and(|p| p == x))
}

thread_local! {
    static LEVEL_MEMO: RefCell<HashMap<u32, bool>> = RefCell::new(HashMap::new());
}

/// `s` is `pot` of some history. Uses the characterization
/// `s = pot({r ∈ s : r is a level})`, memoized per thread.
pub fn is_level(s: HFSet) -> bool {
    if let Some(b) = LEVEL_MEMO.with(|m| m.borrow().get(&s.id()).copied()) {
        return b;
    }
    let below = HFSet::from_members(s.members().iter().copied().filter(|&r| is_level(r)));
    let b = pot(below, &Caps::default()).is_ok_and(|p| p == s);
    LEVEL_MEMO.with(|m| m.borrow_mut().insert(s.id(), b));
    b
}

/// Reference check for [`is_level`]: search every history `h ⊆ s` with `pot h = s`.
/// Any such history is a subset of `s`, since `c ∈ h` gives `c ∈ pot h`.
pub fn is_level_exhaustive(s: HFSet, caps: &Caps) -> Result<bool> {
    for h in subsets(s, caps)? {
        if is_history(h) && pot(h, caps)? == s {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `V_n`, the n-th level: `V_0 = ∅`, `V_{n+1} = P(V_n)`.
pub fn v_level(n: u32, caps: &Caps) -> Result<HFSet> {
    let mut v = HFSet::empty();
    for _ in 0..n {
        v = powerset(v, caps)?;
    }
    Ok(v)
}

/// The least level containing `a` as a subset: `levof a = pot{levof x : x ∈ a}`.
pub fn levof(a: HFSet, caps: &Caps) -> Result<HFSet> {
    thread_local! {
        static MEMO: RefCell<HashMap<u32, HFSet>> = RefCell::new(HashMap::new());
    }
    if let Some(l) = MEMO.with(|m| m.borrow().get(&a.id()).copied()) {
        return Ok(l);
    }
    let parts = a
        .members()
        .iter()
        .map(|&x| levof(x, caps))
        .collect::<Result<Vec<_>>>()?;
    let l = pot(HFSet::from_members(parts), caps)?;
    MEMO.with(|m| m.borrow_mut().insert(a.id(), l));
    Ok(l)
}

/// Elements of `V_n` in canonical order.
pub fn v_elements(n: u32, caps: &Caps) -> Result<Vec<HFSet>> {
    Ok(v_level(n, caps)?.members().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> HFSet {
        HFSet::parse(x).unwrap()
    }

    #[test]
    fn parse_print_round_trip() {
        assert_eq!(s(" { { } , {{}} } ").to_string(), "{{}, {{}}}");
        assert_eq!(s("{{{}}, {}}"), s("{{}, {{}}}"));
        assert_eq!(s("{{},{}}").len(), 1);
        assert!(HFSet::parse("{{}").is_err());
        assert!(HFSet::parse("{},").is_err());
    }

    #[test]
    fn json_is_nested_arrays() {
        let a = s("{{}, {{}}}");
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, "[[],[[]]]");
        let back: HFSet = serde_json::from_str(&j).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn levels_small() {
        let caps = Caps::default();
        assert_eq!(v_level(2, &caps).unwrap(), s("{{}, {{}}}"));
        assert_eq!(v_level(4, &caps).unwrap().len(), 16);
        assert!(is_level(s("{{}, {{}}}")));
        assert!(!is_level(s("{{{}}}")));
        assert!(matches!(v_level(6, &caps), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn pot_and_acc() {
        let caps = Caps::default();
        assert_eq!(pot(s("{{{}}}"), &caps).unwrap(), s("{{}, {{}}}"));
        assert_eq!(acc(s("{{{}}}"), &caps).unwrap(), s("{{}, {{}}}"));
        assert_eq!(acc(s("{{{{}}}}"), &caps).unwrap(), s("{{}, {{}}, {{{}}}}"));
    }

    #[test]
    fn levof_is_depth_level() {
        let caps = Caps::default();
        assert_eq!(
            levof(s("{{{}}}"), &caps).unwrap(),
            v_level(2, &caps).unwrap()
        );
    }
}
