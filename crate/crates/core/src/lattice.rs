//! Subgroup lattices of small p-groups.

use std::collections::HashSet;

use crate::arith::require_prime;
use crate::error::{GroupError, Result};
use crate::subgroup::Subgroup;

/// Largest p-group whose subgroup lattice we are willing to walk.
pub const P_GROUP_CAP: usize = 512;

/// Every subgroup of the `p`-group `pgroup`, trivial and full included, in
/// canonical order.
///
/// Walks the lattice bottom-up. Each subgroup `S` is extended by an element
/// `x` of `N(S)` outside `S` with `x^p ∈ S`; every subgroup of a `p`-group is
/// the top of a chain of such index-`p` steps, so nothing is missed.
pub fn p_group_subgroups(pgroup: &Subgroup, p: u64) -> Result<Vec<Subgroup>> {
    require_prime(p)?;
    if pgroup.order() > P_GROUP_CAP {
        return Err(GroupError::TooLarge {
            what: "p-subgroup lattice",
            cap: P_GROUP_CAP,
        });
    }
    if !pgroup.is_p_group(p) {
        return Err(GroupError::HypothesisNotMet(format!(
            "subgroup of order {} is not a {p}-group",
            pgroup.order()
        )));
    }
    let g = pgroup.parent();
    let trivial = g.trivial_subgroup();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([trivial.members().to_vec()]);
    let mut all = vec![trivial.clone()];
    let mut frontier = vec![trivial];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            let normalizer = pgroup.normalizer(s)?;
            for &x in normalizer.members() {
                if s.contains_index(x) || !s.contains_index(g.pow(x, p)) {
                    continue;
                }
                let t = s.join_indices(&[x]);
                if seen.insert(t.members().to_vec()) {
                    next.push(t);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort();
    Ok(all)
}

/// All nontrivial `p`-subgroups of `ambient`, canonical order.
///
/// Collects the subgroup lattices of every Sylow `p`-subgroup of `ambient`
/// (one Sylow subgroup and its conjugates under `ambient`).
pub fn p_subgroups(ambient: &Subgroup, p: u64) -> Result<Vec<Subgroup>> {
    let sylow = ambient.sylow(p)?;
    if sylow.is_trivial() {
        return Ok(Vec::new());
    }
    let base = p_group_subgroups(&sylow, p)?;
    let mut sylows: HashSet<Vec<usize>> = HashSet::new();
    let mut out: HashSet<Subgroup> = HashSet::new();
    for &h in ambient.members() {
        let conj = sylow.conjugate_by_index(h);
        if !sylows.insert(conj.members().to_vec()) {
            continue;
        }
        for s in &base {
            if !s.is_trivial() {
                out.insert(s.conjugate_by_index(h));
            }
        }
    }
    let mut out: Vec<Subgroup> = out.into_iter().collect();
    out.sort();
    Ok(out)
}
