//! Potentialization, flattening and world renaming.

use fixedbitset::FixedBitSet;

use super::{first_order_core, levels, Kind};
use crate::error::{Error, Result};
use crate::logic::structure::{Kripke, OneSorted};

fn sub(m: &OneSorted, a: usize, b: usize) -> bool {
    m.ext[a].is_subset(&m.ext[b])
}

/// Worlds are the levels of `a` in `∈` order, `r < s` iff `r ∈ s`, the
/// domain of `s` is `{x : x ⊆ s}`, and `a ∈ b` holds at `s` iff `a ∈ b ⊆ s`.
pub fn potentialize(a: &OneSorted) -> Result<Kripke> {
    first_order_core(a, Kind::Lt)?;
    let ws = levels(a, Kind::Lt)?;
    let n = a.len();
    let k = ws.len();
    let later = ws
        .iter()
        .map(|&r| {
            let mut row = FixedBitSet::with_capacity(k);
            for (j, &s) in ws.iter().enumerate() {
                row.set(j, a.mem(r, s));
            }
            row
        })
        .collect();
    let dom = ws
        .iter()
        .map(|&s| {
            let mut row = FixedBitSet::with_capacity(n);
            for x in 0..n {
                row.set(x, sub(a, x, s));
            }
            row
        })
        .collect();
    let ext = ws
        .iter()
        .map(|&s| {
            (0..n)
                .map(|b| {
                    if sub(a, b, s) {
                        a.ext[b].clone()
                    } else {
                        FixedBitSet::with_capacity(n)
                    }
                })
                .collect()
        })
        .collect();
    Ok(Kripke {
        world_labels: ws.iter().map(|&s| a.labels[s].clone()).collect(),
        labels: a.labels.clone(),
        later,
        dom,
        ext,
    })
}

fn connected(p: &Kripke) -> bool {
    let k = p.worlds();
    if k == 0 {
        return false;
    }
    let earlier = p.earlier();
    let mut seen = FixedBitSet::with_capacity(k);
    let mut stack = vec![0];
    seen.insert(0);
    while let Some(w) = stack.pop() {
        for v in p.later[w].ones().chain(earlier[w].ones()) {
            if !seen.put(v) {
                stack.push(v);
            }
        }
    }
    seen.count_ones(..) == k
}

/// The global domain with `a ∈ b` iff `a ∈ b` holds at some world.
pub fn flatten(p: &Kripke) -> Result<OneSorted> {
    if !connected(p) {
        return Err(Error::Precondition(
            "flatten: the frame is not connected".into(),
        ));
    }
    let n = p.len();
    let mut ext = vec![FixedBitSet::with_capacity(n); n];
    for w in &p.ext {
        for (b, row) in w.iter().enumerate() {
            ext[b].union_with(row);
        }
    }
    Ok(OneSorted {
        labels: p.labels.clone(),
        ext,
        less: None,
    })
}

/// Pull `p` back along `f`: world `u` behaves like `f[u]`, and `u < v` iff `f[u] < f[v]`.
pub fn world_rename(p: &Kripke, f: &[usize], labels: Vec<String>) -> Result<Kripke> {
    if labels.len() != f.len() {
        return Err(Error::Precondition(
            "world_rename: one label per new world".into(),
        ));
    }
    let mut hit = FixedBitSet::with_capacity(p.worlds());
    for &w in f {
        if w >= p.worlds() {
            return Err(Error::Precondition(format!("world_rename: no world {w}")));
        }
        hit.insert(w);
    }
    if hit.count_ones(..) != p.worlds() {
        return Err(Error::Precondition(
            "world_rename: map is not onto the worlds".into(),
        ));
    }
    let k = f.len();
    let later = f
        .iter()
        .map(|&fu| {
            let mut row = FixedBitSet::with_capacity(k);
            for (v, &fv) in f.iter().enumerate() {
                row.set(v, p.later[fu].contains(fv));
            }
            row
        })
        .collect();
    Ok(Kripke {
        world_labels: labels,
        labels: p.labels.clone(),
        later,
        dom: f.iter().map(|&w| p.dom[w].clone()).collect(),
        ext: f.iter().map(|&w| p.ext[w].clone()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::lt_universe;
    use crate::Caps;

    #[test]
    fn round_trip_and_renaming() {
        let (_, v3) = lt_universe(3, &Caps::default()).unwrap();
        let p = potentialize(&v3).unwrap();
        assert_eq!(p.world_labels, ["{}", "{{}}", "{{}, {{}}}"]);
        assert_eq!(flatten(&p).unwrap(), v3);
        let dup =
            world_rename(&p, &[0, 1, 1, 2], (0..4).map(|i| format!("w{i}")).collect()).unwrap();
        assert_eq!(flatten(&dup).unwrap(), v3);
        assert!(world_rename(&p, &[0, 1], vec!["a".into(), "b".into()]).is_err());
    }
}
