//! Embedding one finite level model into another as an initial segment.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{first_order_core, levels, Kind};
use crate::error::{Error, Result};
use crate::logic::structure::OneSorted;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    /// The first argument was the larger model, so `map` goes from the second into the first.
    pub swapped: bool,
    /// `map[x]` is the image of element `x` of the smaller model.
    pub map: Vec<usize>,
    /// Both models have the same size and `map` is a bijection.
    pub isomorphism: bool,
}

fn complement_of(m: &OneSorted, x: usize) -> Option<usize> {
    let mut c = m.ext[x].clone();
    c.toggle_range(..);
    m.ext.iter().position(|e| *e == c)
}

fn high(m: &OneSorted, kind: Kind, x: usize) -> bool {
    kind == Kind::Blt && m.mem(x, x)
}

/// Map `small` into `big` by recursion on membership, then check the image
/// is exactly the sets found at or below the image of the top level.
fn embed(small: &OneSorted, big: &OneSorted, kind: Kind) -> Result<Vec<usize>> {
    let n = small.len();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut progress = true;
    while progress {
        progress = false;
        for x in 0..n {
            if map[x].is_some() {
                continue;
            }
            let image = if high(small, kind, x) {
                let c = complement_of(small, x)
                    .ok_or_else(|| Error::Structure("missing complement".into()))?;
                match map[c] {
                    Some(fc) => Some(
                        complement_of(big, fc)
                            .ok_or_else(|| Error::Structure("missing complement".into()))?,
                    ),
                    None => None,
                }
            } else if small.ext[x].ones().all(|a| map[a].is_some()) {
                let mut want = FixedBitSet::with_capacity(big.len());
                for a in small.ext[x].ones() {
                    want.insert(map[a].unwrap());
                }
                let y = big.ext.iter().position(|e| *e == want);
                Some(y.ok_or_else(|| {
                    Error::Structure(format!(
                        "`{}` has no counterpart in the larger model",
                        small.labels[x]
                    ))
                })?)
            } else {
                None
            };
            if image.is_some() {
                map[x] = image;
                progress = true;
            }
        }
    }
    let map: Vec<usize> = map
        .into_iter()
        .enumerate()
        .map(|(x, y)| {
            y.ok_or_else(|| Error::Structure(format!("`{}` is not well-founded", small.labels[x])))
        })
        .collect::<Result<_>>()?;

    for a in 0..n {
        for b in 0..n {
            if small.mem(a, b) != big.mem(map[a], map[b]) {
                return Err(Error::Structure("membership is not preserved".into()));
            }
        }
    }
    let mut image = FixedBitSet::with_capacity(big.len());
    for &y in &map {
        if image.put(y) {
            return Err(Error::Structure("map is not injective".into()));
        }
    }
    let top = levels(small, kind)?.last().map(|&t| map[t]);
    let mut expected = FixedBitSet::with_capacity(big.len());
    expected.extend((0..big.len()).filter(|&y| match top {
        None => false,
        Some(t) if high(big, kind, y) => {
            complement_of(big, y).is_some_and(|c| big.ext[c].is_subset(&big.ext[t]))
        }
        Some(t) => big.ext[y].is_subset(&big.ext[t]),
    }));
    if image != expected {
        return Err(Error::Structure("image is not an initial segment".into()));
    }
    Ok(map)
}

/// Embed the smaller of two models of LT (or BLT) onto an initial segment of the other.
pub fn embed_initial_segment(m: &OneSorted, n: &OneSorted, kind: Kind) -> Result<Embedding> {
    first_order_core(m, kind).map_err(|e| Error::Precondition(format!("first model: {e}")))?;
    first_order_core(n, kind).map_err(|e| Error::Precondition(format!("second model: {e}")))?;
    let swapped = m.len() > n.len();
    let (small, big) = if swapped { (n, m) } else { (m, n) };
    let map = embed(small, big, kind)?;
    Ok(Embedding {
        swapped,
        isomorphism: small.len() == big.len(),
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{blt_universe, lt_universe};
    use crate::Caps;

    #[test]
    fn lt_inclusion() {
        let caps = Caps::default();
        let (_, v2) = lt_universe(2, &caps).unwrap();
        let (_, v4) = lt_universe(4, &caps).unwrap();
        let e = embed_initial_segment(&v4, &v2, Kind::Lt).unwrap();
        assert!(e.swapped);
        let img: Vec<&str> = e.map.iter().map(|&y| v4.labels[y].as_str()).collect();
        assert_eq!(img, ["{}", "{{}}"]);
        let (_, v3) = lt_universe(3, &caps).unwrap();
        let id = embed_initial_segment(&v3, &v3, Kind::Lt).unwrap();
        assert!(id.isomorphism);
        assert_eq!(id.map, (0..4).collect::<Vec<_>>());
    }

    #[test]
    fn blt_inclusion() {
        let caps = Caps::default();
        let (_, u1) = blt_universe(1, &caps).unwrap();
        let (_, u2) = blt_universe(2, &caps).unwrap();
        let e = embed_initial_segment(&u1, &u2, Kind::Blt).unwrap();
        let img: Vec<&str> = e.map.iter().map(|&y| u2.labels[y].as_str()).collect();
        assert_eq!(img, ["{}", "co{}"]);
    }
}
