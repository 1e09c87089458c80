//! Finite structures formulas are evaluated in, and their JSON form.
//!
//! ```json
//! {"kind":"one-sorted","domain":["a","b"],"mem":[["a","b"]],"less":[["a","b"]]}
//! {"kind":"two-sorted","sets":[..],"stages":[..],"mem":[[x,y]],"before":[[s,t]],
//!  "found_at":[[x,s]],"low":[..],"high":[..]}
//! {"kind":"kripke","worlds":["w0","w1"],"acc":[["w0","w1"]],"domain":[..],
//!  "domains":{"w0":[..]},"mem":{"w0":[[a,b]]}}
//! ```
//! A pair `[a, b]` in `mem` means `a ∈ b`; in `less`/`before`/`acc` it means `a`
//! comes before `b`. `less` is optional.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::chfset::{member_chf, CHFSet};
use crate::error::{Error, Result};
use crate::hfset::{member, HFSet};

fn bits(n: usize) -> FixedBitSet {
    FixedBitSet::with_capacity(n)
}

/// Domain with membership and an optional order (`<`, read as rank order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneSorted {
    pub labels: Vec<String>,
    /// `ext[b]` holds every `a` with `a ∈ b`.
    pub ext: Vec<FixedBitSet>,
    /// `less[b]` holds every `a` with `a < b`.
    pub less: Option<Vec<FixedBitSet>>,
}

impl OneSorted {
    pub fn new(labels: Vec<String>, mem: &[(usize, usize)]) -> OneSorted {
        let n = labels.len();
        let mut ext = vec![bits(n); n];
        for &(a, b) in mem {
            ext[b].insert(a);
        }
        OneSorted {
            labels,
            ext,
            less: None,
        }
    }

    pub fn from_hf(sets: &[HFSet]) -> OneSorted {
        let n = sets.len();
        let mut ext = vec![bits(n); n];
        for (b, &sb) in sets.iter().enumerate() {
            for (a, &sa) in sets.iter().enumerate() {
                if member(sa, sb) {
                    ext[b].insert(a);
                }
            }
        }
        OneSorted {
            labels: sets.iter().map(|s| s.to_string()).collect(),
            ext,
            less: None,
        }
    }

    pub fn from_chf(sets: &[CHFSet]) -> OneSorted {
        let n = sets.len();
        let mut ext = vec![bits(n); n];
        for (b, &sb) in sets.iter().enumerate() {
            for (a, &sa) in sets.iter().enumerate() {
                if member_chf(sa, sb) {
                    ext[b].insert(a);
                }
            }
        }
        OneSorted {
            labels: sets.iter().map(|s| s.to_string()).collect(),
            ext,
            less: None,
        }
    }

    pub fn with_less(mut self, pairs: &[(usize, usize)]) -> OneSorted {
        let n = self.len();
        let mut less = vec![bits(n); n];
        for &(a, b) in pairs {
            less[b].insert(a);
        }
        self.less = Some(less);
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn mem(&self, a: usize, b: usize) -> bool {
        self.ext[b].contains(a)
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The same domain with membership complemented: `a ∈' b` iff `a ∉ b`.
    pub fn complemented(&self) -> OneSorted {
        let ext = self
            .ext
            .iter()
            .map(|e| {
                let mut c = e.clone();
                c.toggle_range(..);
                c
            })
            .collect();
        OneSorted {
            labels: self.labels.clone(),
            ext,
            less: self.less.clone(),
        }
    }

    pub fn mem_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.len() {
            out.extend(self.ext[b].ones().map(|a| (a, b)));
        }
        out.sort();
        out
    }
}

/// Sets and stages with membership, stage order, `found at`, and the
/// low/high predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSorted {
    pub set_labels: Vec<String>,
    pub stage_labels: Vec<String>,
    pub ext: Vec<FixedBitSet>,
    /// `before[t]` holds every stage `s` with `s < t`.
    pub before: Vec<FixedBitSet>,
    /// `found[x]` holds every stage `x` is found at.
    pub found: Vec<FixedBitSet>,
    pub low: FixedBitSet,
    pub high: FixedBitSet,
}

/// Worlds with an accessibility order, per-world domains and membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kripke {
    pub world_labels: Vec<String>,
    pub labels: Vec<String>,
    /// `later[w]` holds every `v` with `w < v`.
    pub later: Vec<FixedBitSet>,
    pub dom: Vec<FixedBitSet>,
    /// `ext[w][b]` holds every `a` with `a ∈ b` at `w`.
    pub ext: Vec<Vec<FixedBitSet>>,
}

impl Kripke {
    pub fn worlds(&self) -> usize {
        self.world_labels.len()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn earlier(&self) -> Vec<FixedBitSet> {
        let k = self.worlds();
        let mut out = vec![bits(k); k];
        for w in 0..k {
            for v in self.later[w].ones() {
                out[v].insert(w);
            }
        }
        out
    }

    /// Worlds `◇` looks at from each world: itself, earlier, later, and later than earlier.
    pub fn dia_reach(&self) -> Vec<FixedBitSet> {
        let earlier = self.earlier();
        (0..self.worlds())
            .map(|w| {
                let mut r = bits(self.worlds());
                r.insert(w);
                r.union_with(&self.later[w]);
                r.union_with(&earlier[w]);
                for u in earlier[w].ones() {
                    r.union_with(&self.later[u]);
                }
                r
            })
            .collect()
    }

    pub fn world_index(&self, label: &str) -> Option<usize> {
        self.world_labels.iter().position(|l| l == label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    OneSorted(OneSorted),
    TwoSorted(TwoSorted),
    Kripke(Kripke),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum Raw {
    OneSorted {
        domain: Vec<String>,
        mem: Vec<(String, String)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        less: Option<Vec<(String, String)>>,
    },
    TwoSorted {
        sets: Vec<String>,
        stages: Vec<String>,
        mem: Vec<(String, String)>,
        before: Vec<(String, String)>,
        found_at: Vec<(String, String)>,
        low: Vec<String>,
        high: Vec<String>,
    },
    Kripke {
        worlds: Vec<String>,
        acc: Vec<(String, String)>,
        domain: Vec<String>,
        domains: BTreeMap<String, Vec<String>>,
        mem: BTreeMap<String, Vec<(String, String)>>,
    },
}

struct Index(HashMap<String, usize>);

impl Index {
    fn new(labels: &[String], what: &str) -> Result<Index> {
        let mut m = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if m.insert(l.clone(), i).is_some() {
                return Err(Error::Structure(format!("duplicate {what} label `{l}`")));
            }
        }
        Ok(Index(m))
    }

    fn get(&self, l: &str) -> Result<usize> {
        self.0
            .get(l)
            .copied()
            .ok_or_else(|| Error::Structure(format!("unknown label `{l}`")))
    }

    fn pairs(&self, other: &Index, ps: &[(String, String)], n: usize) -> Result<Vec<FixedBitSet>> {
        let mut out = vec![bits(self.0.len()); n];
        for (a, b) in ps {
            out[other.get(b)?].insert(self.get(a)?);
        }
        Ok(out)
    }
}

fn pairs_of(rows: &[FixedBitSet], la: &[String], lb: &[String]) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (b, row) in rows.iter().enumerate() {
        for a in row.ones() {
            out.push((la[a].clone(), lb[b].clone()));
        }
    }
    out
}

impl Structure {
    pub fn from_json(v: &serde_json::Value) -> Result<Structure> {
        let raw: Raw =
            serde_json::from_value(v.clone()).map_err(|e| Error::Structure(e.to_string()))?;
        match raw {
            Raw::OneSorted { domain, mem, less } => {
                let ix = Index::new(&domain, "domain")?;
                let n = domain.len();
                let ext = ix.pairs(&ix, &mem, n)?;
                let less = less.map(|l| ix.pairs(&ix, &l, n)).transpose()?;
                Ok(Structure::OneSorted(OneSorted {
                    labels: domain,
                    ext,
                    less,
                }))
            }
            Raw::TwoSorted {
                sets,
                stages,
                mem,
                before,
                found_at,
                low,
                high,
            } => {
                let sx = Index::new(&sets, "set")?;
                let tx = Index::new(&stages, "stage")?;
                let ext = sx.pairs(&sx, &mem, sets.len())?;
                let before = tx.pairs(&tx, &before, stages.len())?;
                let mut found = vec![bits(stages.len()); sets.len()];
                for (x, s) in &found_at {
                    found[sx.get(x)?].insert(tx.get(s)?);
                }
                let mut lo = bits(sets.len());
                for x in &low {
                    lo.insert(sx.get(x)?);
                }
                let mut hi = bits(sets.len());
                for x in &high {
                    hi.insert(sx.get(x)?);
                }
                Ok(Structure::TwoSorted(TwoSorted {
                    set_labels: sets,
                    stage_labels: stages,
                    ext,
                    before,
                    found,
                    low: lo,
                    high: hi,
                }))
            }
            Raw::Kripke {
                worlds,
                acc,
                domain,
                domains,
                mem,
            } => {
                let wx = Index::new(&worlds, "world")?;
                let ex = Index::new(&domain, "domain")?;
                let k = worlds.len();
                let n = domain.len();
                let mut later = vec![bits(k); k];
                for (w, v) in &acc {
                    later[wx.get(w)?].insert(wx.get(v)?);
                }
                let mut dom = vec![bits(n); k];
                for (w, elems) in &domains {
                    let wi = wx.get(w)?;
                    for e in elems {
                        dom[wi].insert(ex.get(e)?);
                    }
                }
                let mut ext = vec![vec![bits(n); n]; k];
                for (w, ps) in &mem {
                    ext[wx.get(w)?] = ex.pairs(&ex, ps, n)?;
                }
                Ok(Structure::Kripke(Kripke {
                    world_labels: worlds,
                    labels: domain,
                    later,
                    dom,
                    ext,
                }))
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = match self {
            Structure::OneSorted(m) => Raw::OneSorted {
                domain: m.labels.clone(),
                mem: pairs_of(&m.ext, &m.labels, &m.labels),
                less: m.less.as_ref().map(|l| pairs_of(l, &m.labels, &m.labels)),
            },
            Structure::TwoSorted(m) => {
                let mut found_at = Vec::new();
                for (x, row) in m.found.iter().enumerate() {
                    for s in row.ones() {
                        found_at.push((m.set_labels[x].clone(), m.stage_labels[s].clone()));
                    }
                }
                Raw::TwoSorted {
                    sets: m.set_labels.clone(),
                    stages: m.stage_labels.clone(),
                    mem: pairs_of(&m.ext, &m.set_labels, &m.set_labels),
                    before: pairs_of(&m.before, &m.stage_labels, &m.stage_labels),
                    found_at,
                    low: m.low.ones().map(|x| m.set_labels[x].clone()).collect(),
                    high: m.high.ones().map(|x| m.set_labels[x].clone()).collect(),
                }
            }
            Structure::Kripke(m) => {
                let mut acc = Vec::new();
                for (w, row) in m.later.iter().enumerate() {
                    for v in row.ones() {
                        acc.push((m.world_labels[w].clone(), m.world_labels[v].clone()));
                    }
                }
                Raw::Kripke {
                    worlds: m.world_labels.clone(),
                    acc,
                    domain: m.labels.clone(),
                    domains: (0..m.worlds())
                        .map(|w| {
                            let d = m.dom[w].ones().map(|e| m.labels[e].clone()).collect();
                            (m.world_labels[w].clone(), d)
                        })
                        .collect(),
                    mem: (0..m.worlds())
                        .map(|w| {
                            (
                                m.world_labels[w].clone(),
                                pairs_of(&m.ext[w], &m.labels, &m.labels),
                            )
                        })
                        .collect(),
                }
            }
        };
        serde_json::to_value(raw).expect("structures serialize")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Structure::OneSorted(_) => "one-sorted",
            Structure::TwoSorted(_) => "two-sorted",
            Structure::Kripke(_) => "kripke",
        }
    }
}

impl From<OneSorted> for Structure {
    fn from(m: OneSorted) -> Self {
        Structure::OneSorted(m)
    }
}

impl From<TwoSorted> for Structure {
    fn from(m: TwoSorted) -> Self {
        Structure::TwoSorted(m)
    }
}

impl From<Kripke> for Structure {
    fn from(m: Kripke) -> Self {
        Structure::Kripke(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_all_kinds() {
        let one = serde_json::json!({"kind":"one-sorted","domain":["e","f"],"mem":[["e","f"]]});
        let kr = serde_json::json!({
            "kind":"kripke","worlds":["w0","w1"],"acc":[["w0","w1"]],"domain":["e","f"],
            "domains":{"w0":["e"],"w1":["e","f"]},"mem":{"w0":[],"w1":[["e","f"]]}
        });
        for v in [one, kr] {
            let s = Structure::from_json(&v).unwrap();
            assert_eq!(Structure::from_json(&s.to_json()).unwrap(), s);
        }
    }

    #[test]
    fn unknown_labels_rejected() {
        let bad = serde_json::json!({"kind":"one-sorted","domain":["e"],"mem":[["e","x"]]});
        assert!(matches!(
            Structure::from_json(&bad),
            Err(Error::Structure(_))
        ));
    }
}
