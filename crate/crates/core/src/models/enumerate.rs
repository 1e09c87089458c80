//! Exhaustive enumeration of small `∈`-structures up to isomorphism.

use super::check::{check_axioms, CheckOptions, Verdict};
use super::suites::AxiomSuite;
use crate::error::{Error, Result};
use crate::logic::structure::OneSorted;

/// Largest domain enumerated: `2^(k²)` relations.
pub const MAX_ENUM: usize = 4;

fn perms(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    heap(k, &mut p, &mut out);
    out
}

fn heap(n: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..n - 1 {
        heap(n - 1, p, out);
        if n.is_multiple_of(2) {
            p.swap(i, n - 1);
        } else {
            p.swap(0, n - 1);
        }
    }
    heap(n - 1, p, out);
}

fn permute(k: usize, mask: u32, p: &[usize]) -> u32 {
    let mut out = 0;
    for b in 0..k {
        for a in 0..k {
            if mask >> (b * k + a) & 1 == 1 {
                out |= 1 << (p[b] * k + p[a]);
            }
        }
    }
    out
}

/// Bit `b·k + a` set means `a ∈ b`. The canonical form is the least mask
/// over all relabellings of the `k` elements.
pub fn canonical_form(k: usize, mask: u32) -> u32 {
    perms(k)
        .iter()
        .map(|p| permute(k, mask, p))
        .min()
        .unwrap_or(mask)
}

fn structure(k: usize, mask: u32) -> OneSorted {
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|b| (0..k).map(move |a| (a, b)))
        .filter(|&(a, b)| mask >> (b * k + a) & 1 == 1)
        .collect();
    OneSorted::new((0..k).map(|i| format!("e{i}")).collect(), &pairs)
}

fn extensional(k: usize, mask: u32) -> bool {
    let row = |b: usize| (mask >> (b * k)) & ((1 << k) - 1);
    (0..k).all(|b| (0..b).all(|c| row(b) != row(c)))
}

/// Every `∈`-structure on `k` elements satisfying `suite`, one per
/// isomorphism class, in increasing canonical mask order.
pub fn enumerate_structures(
    k: usize,
    suite: AxiomSuite,
    opts: &CheckOptions,
) -> Result<Vec<OneSorted>> {
    if k > MAX_ENUM {
        return Err(Error::cap_pow2(
            "relations to enumerate",
            k * k,
            1 << (MAX_ENUM * MAX_ENUM),
        ));
    }
    let ps = perms(k);
    let mut out = Vec::new();
    for mask in 0u32..1 << (k * k) {
        if !extensional(k, mask) || ps.iter().any(|p| permute(k, mask, p) < mask) {
            continue;
        }
        let m = structure(k, mask);
        let report = check_axioms(&m.clone().into(), suite, opts)?;
        match report.verdict {
            Verdict::Pass => out.push(m),
            Verdict::Fail => {}
            Verdict::Error => {
                let why = report
                    .axioms
                    .iter()
                    .find_map(|a| a.error.clone())
                    .unwrap_or_default();
                return Err(Error::Unsupported(format!(
                    "undecided axiom on mask {mask:#x}: {why}"
                )));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_invariant() {
        // 0 ∈ 1 and 1 ∈ 0 relabelled
        assert_eq!(canonical_form(2, 0b0100), canonical_form(2, 0b0010));
        assert_eq!(perms(4).len(), 24);
    }

    #[test]
    fn two_element_blt_model_is_empty_and_universe() {
        let ms = enumerate_structures(2, AxiomSuite::BLT, &CheckOptions::default()).unwrap();
        assert_eq!(ms.len(), 1);
        let m = &ms[0];
        let sizes: Vec<usize> = m.ext.iter().map(|e| e.count_ones(..)).collect();
        assert!(sizes.contains(&0) && sizes.contains(&2));
    }

    #[test]
    fn too_large() {
        assert!(enumerate_structures(5, AxiomSuite::LT, &CheckOptions::default()).is_err());
    }
}
