//! Control of fusion.
//!
//! `H ≤ G` controls fusion of a class of subgroups when
//!
//! * (a) every class member of `G` has a conjugate inside `H`, and
//! * (b′) whenever `A ≤ H` is a class member and `A^g ≤ H` for some `g ∈ G`,
//!   then `g ∈ C_G(A)·H`.
//!
//! Reports carry the first violation in canonical order, so they can be
//! re-checked independently.

use std::collections::HashSet;
use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::arith::{p_part, require_prime};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::lattice::p_subgroups;
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

/// Which subgroups the fusion conditions quantify over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FusionClass {
    /// Cyclic subgroups of order `p`.
    CyclicP(u64),
    /// Cyclic subgroups of order 4.
    Cyclic4,
    /// Cyclic of order `p` for odd `p`; cyclic of order 2 or 4 for `p = 2`.
    Cp(u64),
    /// Nontrivial elementary abelian `p`-subgroups.
    ElemAbelian(u64),
    /// All nontrivial `p`-subgroups.
    PSubgroups(u64),
}

impl fmt::Display for FusionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionClass::CyclicP(p) => write!(f, "cyclic({p})"),
            FusionClass::Cyclic4 => f.write_str("cyclic(4)"),
            FusionClass::Cp(p) => write!(f, "C_{p}"),
            FusionClass::ElemAbelian(p) => write!(f, "elementary-abelian({p})"),
            FusionClass::PSubgroups(p) => write!(f, "{p}-subgroups"),
        }
    }
}

/// Whether a scan stops at the first violation of each condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanMode {
    #[default]
    FirstViolation,
    Exhaustive,
}

/// A pair `(A, g)` violating (b′).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionWitness {
    pub subgroup: Subgroup,
    pub g: Permutation,
}

impl FusionWitness {
    /// Re-checks the violation from scratch: `A ≤ H`, `A^g ≤ H`, and no
    /// factorization `g = c·h` with `c ∈ C_G(A)`, `h ∈ H` exists.
    pub fn revalidate(&self, h: &Subgroup) -> bool {
        let g = h.parent();
        let Some(gi) = g.index_of(&self.g) else {
            return false;
        };
        let a = &self.subgroup;
        if !a.is_subgroup_of(h) || !a.conjugate_lands_in(gi, h) {
            return false;
        }
        // g = c·x with x ∈ H  ⟺  c = g·x⁻¹ centralizes A for some x ∈ H.
        !h.members().iter().any(|&x| {
            let c = g.mul(gi, g.inv(x));
            a.members().iter().all(|&m| g.mul(c, m) == g.mul(m, c))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionReport {
    pub condition_a: bool,
    pub condition_b: bool,
    pub witness_a: Option<Subgroup>,
    pub witness_b: Option<FusionWitness>,
    pub checked_count: usize,
}

impl FusionReport {
    pub fn holds(&self) -> bool {
        self.condition_a && self.condition_b
    }
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.permutations())
    }
}

impl Serialize for FusionWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FusionWitness", 2)?;
        st.serialize_field("subgroup", &self.subgroup)?;
        st.serialize_field("g", &self.g)?;
        st.end()
    }
}

impl Serialize for FusionReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let len = 3 + self.witness_a.is_some() as usize + self.witness_b.is_some() as usize;
        let mut st = serializer.serialize_struct("FusionReport", len)?;
        st.serialize_field("condition_a", &self.condition_a)?;
        st.serialize_field("condition_b", &self.condition_b)?;
        if let Some(w) = &self.witness_a {
            st.serialize_field("witness_a", w)?;
        }
        if let Some(w) = &self.witness_b {
            st.serialize_field("witness_b", w)?;
        }
        st.serialize_field("checked_count", &self.checked_count)?;
        st.end()
    }
}

fn cyclic_subgroups_of_order(ambient: &Subgroup, order: u64) -> Vec<Subgroup> {
    let g = ambient.parent();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &x in ambient.members() {
        if g.element_order(x) != order {
            continue;
        }
        let c = Subgroup::generated_by(g, &[x]);
        if seen.insert(c.members().to_vec()) {
            out.push(c);
        }
    }
    out.sort();
    out
}

/// Nontrivial elementary abelian `p`-subgroups, grown from cyclic groups of
/// order `p` by adjoining commuting elements of order `p`.
fn elementary_abelian_subgroups(ambient: &Subgroup, p: u64) -> Vec<Subgroup> {
    let g = ambient.parent();
    let order_p: Vec<usize> = ambient
        .members()
        .iter()
        .copied()
        .filter(|&x| g.element_order(x) == p)
        .collect();
    let mut frontier = cyclic_subgroups_of_order(ambient, p);
    let mut seen: HashSet<Vec<usize>> = frontier.iter().map(|s| s.members().to_vec()).collect();
    let mut out = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in &frontier {
            let gens = e.small_generating_set();
            for &y in &order_p {
                if e.contains_index(y) || !gens.iter().all(|&s| g.mul(s, y) == g.mul(y, s)) {
                    continue;
                }
                let mut with_y = gens.clone();
                with_y.push(y);
                let bigger = Subgroup::generated_by(g, &with_y);
                if seen.insert(bigger.members().to_vec()) {
                    next.push(bigger);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out
}

/// Class members among the subgroups of `ambient`, deduplicated, canonical order.
pub fn enumerate_class_in(ambient: &Subgroup, class: FusionClass) -> Result<Vec<Subgroup>> {
    Ok(match class {
        FusionClass::CyclicP(p) => {
            require_prime(p)?;
            cyclic_subgroups_of_order(ambient, p)
        }
        FusionClass::Cyclic4 => cyclic_subgroups_of_order(ambient, 4),
        FusionClass::Cp(p) => {
            require_prime(p)?;
            let mut v = cyclic_subgroups_of_order(ambient, p);
            if p == 2 {
                v.extend(cyclic_subgroups_of_order(ambient, 4));
                v.sort();
            }
            v
        }
        FusionClass::ElemAbelian(p) => {
            require_prime(p)?;
            elementary_abelian_subgroups(ambient, p)
        }
        FusionClass::PSubgroups(p) => p_subgroups(ambient, p)?,
    })
}

pub fn enumerate_class(g: &FiniteGroup, class: FusionClass) -> Result<Vec<Subgroup>> {
    enumerate_class_in(&g.whole(), class)
}

/// Scans condition (b′) over the given class members of `H`.
fn scan_condition_b<'a>(
    h: &Subgroup,
    candidates: impl Iterator<Item = &'a Subgroup>,
    mode: ScanMode,
    checked: &mut usize,
) -> Result<Option<FusionWitness>> {
    let g = h.parent();
    let whole = g.whole();
    let mut witness = None;
    for a in candidates {
        let allowed = whole.centralizer(a)?.set_product_mask(h);
        for (gi, &ok) in allowed.iter().enumerate() {
            if !a.conjugate_lands_in(gi, h) {
                continue;
            }
            *checked += 1;
            if !ok && witness.is_none() {
                witness = Some(FusionWitness {
                    subgroup: a.clone(),
                    g: g.element(gi).clone(),
                });
                if mode == ScanMode::FirstViolation {
                    return Ok(witness);
                }
            }
        }
    }
    Ok(witness)
}

/// Decides whether `h` controls fusion of `class`-subgroups in its parent.
pub fn controls_fusion(h: &Subgroup, class: FusionClass) -> Result<FusionReport> {
    controls_fusion_with(h, class, ScanMode::FirstViolation)
}

pub fn controls_fusion_with(h: &Subgroup, class: FusionClass, mode: ScanMode) -> Result<FusionReport> {
    let g = h.parent();
    let members = enumerate_class(g, class)?;
    let mut checked = 0;

    let mut witness_a = None;
    for a in &members {
        checked += 1;
        let lands = a.is_subgroup_of(h) || (0..g.order()).any(|x| a.conjugate_lands_in(x, h));
        if !lands && witness_a.is_none() {
            witness_a = Some(a.clone());
            if mode == ScanMode::FirstViolation {
                break;
            }
        }
    }

    let inside = members.iter().filter(|a| a.is_subgroup_of(h));
    let witness_b = scan_condition_b(h, inside, mode, &mut checked)?;

    Ok(FusionReport {
        condition_a: witness_a.is_none(),
        condition_b: witness_b.is_none(),
        witness_a,
        witness_b,
        checked_count: checked,
    })
}

/// Control of `p`-fusion: `H` contains a Sylow `p`-subgroup of `G` and
/// (b′) holds for every nontrivial `p`-subgroup of `H`.
pub fn controls_p_fusion(h: &Subgroup, p: u64) -> Result<FusionReport> {
    require_prime(p)?;
    let g = h.parent();
    let condition_a = h.order().is_multiple_of(p_part(g.order(), p));
    let witness_a = if condition_a {
        None
    } else {
        Some(g.sylow_subgroup(p)?)
    };
    let mut checked = 1;
    let candidates = p_subgroups(h, p)?;
    let witness_b = scan_condition_b(h, candidates.iter(), ScanMode::FirstViolation, &mut checked)?;
    Ok(FusionReport {
        condition_a,
        condition_b: witness_b.is_none(),
        witness_a,
        witness_b,
        checked_count: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{quaternion_by_c3, quaternion_factor, GroupSpec};

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn a4() -> FiniteGroup {
        GroupSpec::Alternating(4).build().unwrap()
    }

    #[test]
    fn quaternion_classes() {
        let q8 = GroupSpec::Quaternion8.build().unwrap();
        let inv = enumerate_class(&q8, FusionClass::CyclicP(2)).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0], q8.center());
        let c4 = enumerate_class(&q8, FusionClass::Cyclic4).unwrap();
        assert_eq!(c4.len(), 3);
        assert!(c4.iter().all(|s| s.order() == 4));
        assert_eq!(enumerate_class(&q8, FusionClass::Cp(2)).unwrap().len(), 4);
        let c15 = GroupSpec::Cyclic(15).build().unwrap();
        assert!(enumerate_class(&c15, FusionClass::Cyclic4).unwrap().is_empty());
    }

    #[test]
    fn elementary_abelian_enumeration() {
        let s4 = GroupSpec::Symmetric(4).build().unwrap();
        let ea = enumerate_class(&s4, FusionClass::ElemAbelian(2)).unwrap();
        // 9 involution subgroups + 4 Klein four-groups.
        assert_eq!(ea.len(), 13);
        let e8 = GroupSpec::ElementaryAbelian { p: 2, k: 3 }.build().unwrap();
        assert_eq!(enumerate_class(&e8, FusionClass::ElemAbelian(2)).unwrap().len(), 15);
        assert!(enumerate_class(&s4, FusionClass::ElemAbelian(6)).is_err());
    }

    #[test]
    fn quaternion_example() {
        let g = quaternion_by_c3().unwrap();
        let q = quaternion_factor(&g).unwrap();
        assert!(controls_fusion(&q, FusionClass::CyclicP(2)).unwrap().holds());
        let r = controls_fusion(&q, FusionClass::Cp(2)).unwrap();
        assert!(r.condition_a);
        assert!(!r.condition_b);
        let w = r.witness_b.unwrap();
        assert_eq!(w.subgroup.order(), 4);
        assert_eq!(w.g.order(), 3);
        assert!(w.revalidate(&q));
    }

    #[test]
    fn a4_klein_does_not_control_involutions() {
        let g = a4();
        let v4 = g.sylow_subgroup(2).unwrap();
        let r = controls_fusion(&v4, FusionClass::CyclicP(2)).unwrap();
        assert!(r.condition_a && !r.condition_b);
        let w = r.witness_b.unwrap();
        assert_eq!(w.g.order(), 3);
        assert!(w.revalidate(&v4));
        assert!(!controls_p_fusion(&v4, 2).unwrap().holds());
    }

    #[test]
    fn self_control() {
        for g in [a4(), GroupSpec::Symmetric(4).build().unwrap(), quaternion_by_c3().unwrap()] {
            for class in [
                FusionClass::CyclicP(2),
                FusionClass::Cyclic4,
                FusionClass::Cp(2),
                FusionClass::ElemAbelian(3),
                FusionClass::PSubgroups(2),
            ] {
                assert!(controls_fusion(&g.whole(), class).unwrap().holds(), "{class}");
            }
        }
    }

    #[test]
    fn p_fusion() {
        let s3 = GroupSpec::Symmetric(3).build().unwrap();
        let c2 = s3.subgroup_closure(&[p("(0 1)", 3)]).unwrap();
        assert!(controls_p_fusion(&c2, 2).unwrap().holds());
        let a3 = s3.subgroup_closure(&[p("(0 1 2)", 3)]).unwrap();
        let r = controls_p_fusion(&a3, 2).unwrap();
        assert!(!r.condition_a && r.witness_a.is_some());
        let q8 = GroupSpec::Quaternion8.build().unwrap();
        assert!(controls_p_fusion(&q8.whole(), 2).unwrap().holds());
    }

    #[test]
    fn condition_a_failure_has_witness() {
        let s3 = GroupSpec::Symmetric(3).build().unwrap();
        let a3 = s3.subgroup_closure(&[p("(0 1 2)", 3)]).unwrap();
        let r = controls_fusion(&a3, FusionClass::CyclicP(2)).unwrap();
        assert!(!r.condition_a);
        assert_eq!(r.witness_a.unwrap().order(), 2);
    }

    #[test]
    fn exhaustive_mode_counts_every_pair() {
        let g = a4();
        let v4 = g.sylow_subgroup(2).unwrap();
        let first = controls_fusion_with(&v4, FusionClass::CyclicP(2), ScanMode::FirstViolation).unwrap();
        let full = controls_fusion_with(&v4, FusionClass::CyclicP(2), ScanMode::Exhaustive).unwrap();
        assert_eq!(first.witness_b, full.witness_b);
        // 3 class members for (a); each involution subgroup lands in V4 under all 12 elements.
        assert_eq!(full.checked_count, 3 + 3 * 12);
        assert!(first.checked_count < full.checked_count);
    }

    #[test]
    fn report_json_shape() {
        let g = a4();
        let v4 = g.sylow_subgroup(2).unwrap();
        let r = controls_fusion(&v4, FusionClass::CyclicP(2)).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["condition_a"], true);
        assert_eq!(json["condition_b"], false);
        assert!(json.get("witness_a").is_none());
        assert_eq!(json["witness_b"]["subgroup"].as_array().unwrap().len(), 2);
        assert_eq!(json["witness_b"]["g"].as_array().unwrap().len(), 4);
        assert!(json["checked_count"].as_u64().unwrap() > 0);
    }
}
