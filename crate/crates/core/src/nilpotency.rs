//! p-nilpotency, decided two independent ways, plus the central-series
//! machinery used by the hypercentral criterion.

use std::collections::HashSet;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::arith::{log_p, p_bar, p_part, require_prime};
use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::lattice::p_group_subgroups;
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

/// Ascending upper central series `1 = Z₀ ≤ Z₁ ≤ …`.
///
/// Computation stops once a term repeats (the last two terms are then
/// equal) or the whole group is reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralSeries {
    pub terms: Vec<Subgroup>,
}

impl CentralSeries {
    pub fn hypercenter(&self) -> &Subgroup {
        self.terms.last().expect("series is never empty")
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_nilpotent(&self, ambient: &Subgroup) -> bool {
        self.hypercenter() == ambient
    }

    /// Least `i` with `s ≤ Z_i`, if `s` is hypercentral.
    pub fn first_term_containing(&self, s: &Subgroup) -> Option<usize> {
        self.terms.iter().position(|z| s.is_subgroup_of(z))
    }
}

/// `(B, g)` with `g` a `p′`-element normalizing `B` but not centralizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusWitness {
    pub subgroup: Subgroup,
    pub g: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotencyVerdict {
    pub p: u64,
    pub p_nilpotent: bool,
    pub complement: Option<Subgroup>,
    pub frobenius_witness: Option<FrobeniusWitness>,
}

impl Serialize for FrobeniusWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FrobeniusWitness", 2)?;
        st.serialize_field("subgroup", &self.subgroup)?;
        st.serialize_field("g", &self.g)?;
        st.end()
    }
}

impl Serialize for NilpotencyVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("NilpotencyVerdict", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("p_nilpotent", &self.p_nilpotent)?;
        if let Some(c) = &self.complement {
            st.serialize_field("complement_order", &c.order())?;
        }
        if let Some(w) = &self.frobenius_witness {
            st.serialize_field("frobenius_witness", w)?;
        }
        st.end()
    }
}

/// `G` is `p`-nilpotent iff the subgroup generated by its `p′`-elements is
/// a `p′`-group, i.e. has order `|G| / |G|_p`. That subgroup is then the
/// normal `p`-complement.
pub fn is_p_nilpotent(g: &FiniteGroup, p: u64) -> Result<NilpotencyVerdict> {
    require_prime(p)?;
    let p_prime: Vec<usize> = (0..g.order())
        .filter(|&x| g.is_p_prime_element(x, p))
        .collect();
    let k = Subgroup::generated_by(g, &p_prime);
    let p_nilpotent = k.order() == g.order() / p_part(g.order(), p);
    Ok(NilpotencyVerdict {
        p,
        p_nilpotent,
        complement: p_nilpotent.then_some(k),
        frobenius_witness: None,
    })
}

/// Largest group the brute-force complement search accepts.
pub const ORACLE_CAP: usize = 400;

/// Conjugacy classes of `G` as sorted index lists, in canonical order of
/// their first element.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; g.order()];
    let mut classes = Vec::new();
    for x in 0..g.order() {
        if assigned[x] {
            continue;
        }
        let mut class: Vec<usize> = (0..g.order()).map(|y| g.conj(x, y)).collect();
        class.sort_unstable();
        class.dedup();
        for &c in &class {
            assigned[c] = true;
        }
        classes.push(class);
    }
    classes
}

/// Every normal subgroup of `G`, canonical order.
///
/// Normal subgroups are exactly the subgroups that are unions of conjugacy
/// classes; they are reached from the trivial group by repeatedly joining
/// one more class.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let classes = conjugacy_classes(g);
    let trivial = g.trivial_subgroup();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([trivial.members().to_vec()]);
    let mut all = vec![trivial.clone()];
    let mut frontier = vec![trivial];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for n in &frontier {
            let gens = n.small_generating_set();
            for class in &classes {
                if n.contains_index(class[0]) {
                    continue;
                }
                let mut seed = gens.clone();
                seed.extend_from_slice(class);
                let m = Subgroup::generated_by(g, &seed);
                if seen.insert(m.members().to_vec()) {
                    next.push(m);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort();
    all
}

/// Brute-force search for a normal subgroup of order `|G| / |G|_p` meeting a
/// Sylow `p`-subgroup trivially.
pub fn normal_complement_oracle(g: &FiniteGroup, p: u64) -> Result<Option<Subgroup>> {
    require_prime(p)?;
    if g.order() > ORACLE_CAP {
        return Err(GroupError::TooLarge {
            what: "group order for the complement oracle",
            cap: ORACLE_CAP,
        });
    }
    let target = g.order() / p_part(g.order(), p);
    let sylow = g.sylow_subgroup(p)?;
    for n in normal_subgroups(g) {
        if n.order() == target && n.intersection(&sylow)?.is_trivial() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Frobenius: `G` is `p`-nilpotent iff every `p′`-element normalizing a
/// subgroup `B` of a Sylow `p`-subgroup centralizes `B`.
pub fn frobenius_criterion(g: &FiniteGroup, p: u64) -> Result<NilpotencyVerdict> {
    require_prime(p)?;
    let sylow = g.sylow_subgroup(p)?;
    let whole = g.whole();
    for b in p_group_subgroups(&sylow, p)? {
        if b.is_trivial() {
            continue;
        }
        let gens = b.small_generating_set();
        let normalizer = whole.normalizer(&b)?;
        let offender = normalizer.members().iter().copied().find(|&x| {
            g.is_p_prime_element(x, p) && gens.iter().any(|&s| g.mul(x, s) != g.mul(s, x))
        });
        if let Some(x) = offender {
            return Ok(NilpotencyVerdict {
                p,
                p_nilpotent: false,
                complement: None,
                frobenius_witness: Some(FrobeniusWitness {
                    subgroup: b,
                    g: g.element(x).clone(),
                }),
            });
        }
    }
    Ok(NilpotencyVerdict {
        p,
        p_nilpotent: true,
        complement: None,
        frobenius_witness: None,
    })
}

/// Upper central series of a subgroup, by the direct test
/// `Z_{i+1} = { x : [x, y] ∈ Z_i for all y }`.
pub fn upper_central_series_of(ambient: &Subgroup) -> CentralSeries {
    let g = ambient.parent();
    let mut terms = vec![g.trivial_subgroup()];
    loop {
        let last = terms.last().expect("nonempty");
        if last.order() == ambient.order() {
            break;
        }
        let members = ambient
            .members()
            .iter()
            .copied()
            .filter(|&x| {
                ambient
                    .members()
                    .iter()
                    .all(|&y| last.contains_index(g.comm(x, y)))
            })
            .collect();
        let next = Subgroup::from_sorted_members(g.clone(), members);
        let stable = &next == last;
        terms.push(next);
        if stable {
            break;
        }
    }
    CentralSeries { terms }
}

pub fn upper_central_series(g: &FiniteGroup) -> CentralSeries {
    upper_central_series_of(&g.whole())
}

/// `⟨ x ∈ ambient : x^{p̄} = 1 ⟩` with `p̄ = p` for odd `p` and `p̄ = 4` for `p = 2`.
pub fn omega_bar_in(ambient: &Subgroup, p: u64) -> Result<Subgroup> {
    require_prime(p)?;
    let g = ambient.parent();
    let bar = p_bar(p);
    let seed: Vec<usize> = ambient
        .members()
        .iter()
        .copied()
        .filter(|&x| bar.is_multiple_of(g.element_order(x)))
        .collect();
    Ok(Subgroup::generated_by(g, &seed))
}

pub fn omega_bar(g: &FiniteGroup, p: u64) -> Result<Subgroup> {
    omega_bar_in(&g.whole(), p)
}

/// `[K, g] = ⟨ [k, g] : k ∈ K ⟩`.
pub fn commutator_with(k: &Subgroup, g: usize) -> Subgroup {
    let parent = k.parent();
    let seed: Vec<usize> = k.members().iter().map(|&x| parent.comm(x, g)).collect();
    Subgroup::generated_by(parent, &seed)
}

/// `⟨ [a, g]^b : a, b ∈ K, a^{p̄} = 1 ⟩`.
pub fn conjugated_commutators(k: &Subgroup, g: usize, p: u64) -> Subgroup {
    let parent = k.parent();
    let bar = p_bar(p);
    let mut seed = Vec::new();
    for &a in k.members() {
        if !bar.is_multiple_of(parent.element_order(a)) {
            continue;
        }
        let c = parent.comm(a, g);
        for &b in k.members() {
            seed.push(parent.conj(c, b));
        }
    }
    seed.sort_unstable();
    seed.dedup();
    Subgroup::generated_by(parent, &seed)
}

/// Quantities entering the power-commutator check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallPetrescuCheck {
    /// `p^e` is the exponent of `K`.
    pub e: u32,
    /// Least `n ≥ 1` with `K ≤ Z_n(G)`.
    pub n: usize,
    pub power_subgroup_order: usize,
    pub holds: bool,
}

/// With `K = Ω̄(G)` hypercentral, checks that `⟨ g^{p^{e+n}} : g ∈ G ⟩`
/// centralizes `K`.
pub fn hall_petrescu_check(g: &FiniteGroup, p: u64) -> Result<HallPetrescuCheck> {
    let k = omega_bar(g, p)?;
    let series = upper_central_series(g);
    let n = series.first_term_containing(&k).ok_or_else(|| {
        GroupError::HypothesisNotMet(format!(
            "Omega-bar subgroup of order {} is not hypercentral",
            k.order()
        ))
    })?;
    let n = n.max(1);
    if !k.is_p_group(p) {
        return Err(GroupError::HypothesisNotMet(format!(
            "Omega-bar subgroup of order {} is not a {p}-group",
            k.order()
        )));
    }
    let exponent = k
        .members()
        .iter()
        .map(|&x| g.element_order(x))
        .max()
        .unwrap_or(1);
    let e = log_p(exponent, p);
    let power = (e as usize + n) as u32;
    let seed: Vec<usize> = (0..g.order())
        .map(|x| g.pow_prime_power(x, p, power))
        .collect();
    let powers = Subgroup::generated_by(g, &seed);
    let holds = powers.is_subgroup_of(&g.whole().centralizer(&k)?);
    Ok(HallPetrescuCheck {
        e,
        n,
        power_subgroup_order: powers.order(),
        holds,
    })
}

pub fn hall_petrescu_consequence(g: &FiniteGroup, p: u64) -> Result<bool> {
    hall_petrescu_check(g, p).map(|c| c.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{quaternion_by_c3, quaternion_factor, GroupSpec};

    fn build(spec: GroupSpec) -> FiniteGroup {
        spec.build().unwrap()
    }

    #[test]
    fn p_nilpotency_examples() {
        let s3 = build(GroupSpec::Symmetric(3));
        let v = is_p_nilpotent(&s3, 2).unwrap();
        assert!(v.p_nilpotent);
        assert_eq!(v.complement.unwrap().order(), 3);
        assert!(!is_p_nilpotent(&s3, 3).unwrap().p_nilpotent);

        let g = quaternion_by_c3().unwrap();
        assert!(!is_p_nilpotent(&g, 2).unwrap().p_nilpotent);
        let v = is_p_nilpotent(&g, 3).unwrap();
        assert!(v.p_nilpotent);
        assert_eq!(v.complement.unwrap(), quaternion_factor(&g).unwrap());

        let q8 = build(GroupSpec::Quaternion8);
        let v = is_p_nilpotent(&q8, 2).unwrap();
        assert!(v.p_nilpotent && v.complement.unwrap().is_trivial());
        assert_eq!(is_p_nilpotent(&q8, 4).unwrap_err(), GroupError::NotPrime(4));
    }

    #[test]
    fn complement_oracle_examples() {
        let s4 = build(GroupSpec::Symmetric(4));
        assert!(normal_complement_oracle(&s4, 2).unwrap().is_none());
        let c6 = build(GroupSpec::Cyclic(6));
        assert_eq!(normal_complement_oracle(&c6, 2).unwrap().unwrap().order(), 3);
        let a4 = build(GroupSpec::Alternating(4));
        let v4 = normal_complement_oracle(&a4, 3).unwrap().unwrap();
        assert_eq!(v4, a4.sylow_subgroup(2).unwrap());
        let s6 = build(GroupSpec::Symmetric(6));
        assert!(matches!(normal_complement_oracle(&s6, 2), Err(GroupError::TooLarge { .. })));
    }

    #[test]
    fn normal_subgroup_counts() {
        assert_eq!(normal_subgroups(&build(GroupSpec::Symmetric(4))).len(), 4);
        assert_eq!(normal_subgroups(&build(GroupSpec::Alternating(5))).len(), 2);
        assert_eq!(normal_subgroups(&build(GroupSpec::Quaternion8)).len(), 6);
        assert_eq!(normal_subgroups(&build(GroupSpec::Cyclic(12))).len(), 6);
    }

    #[test]
    fn frobenius_examples() {
        let s3 = build(GroupSpec::Symmetric(3));
        assert!(frobenius_criterion(&s3, 2).unwrap().p_nilpotent);
        let g = quaternion_by_c3().unwrap();
        let v = frobenius_criterion(&g, 2).unwrap();
        assert!(!v.p_nilpotent);
        let w = v.frobenius_witness.unwrap();
        assert!(w.subgroup.order() == 4 || w.subgroup.order() == 8);
        assert_eq!(w.g.order(), 3);
        let e9 = build(GroupSpec::ElementaryAbelian { p: 3, k: 2 });
        assert!(frobenius_criterion(&e9, 3).unwrap().p_nilpotent);
    }

    #[test]
    fn central_series_examples() {
        let q8 = build(GroupSpec::Quaternion8);
        let s = upper_central_series(&q8);
        let orders: Vec<usize> = s.terms.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 8]);
        assert!(s.is_nilpotent(&q8.whole()));

        let c5 = build(GroupSpec::Cyclic(5));
        let orders: Vec<usize> = upper_central_series(&c5).terms.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 5]);

        let s3 = build(GroupSpec::Symmetric(3));
        let s = upper_central_series(&s3);
        assert_eq!(s.terms.len(), 2);
        assert!(s.terms.iter().all(Subgroup::is_trivial));
        assert!(!s.is_nilpotent(&s3.whole()));

        let d8 = build(GroupSpec::Dihedral(4));
        let c4s3 = build(GroupSpec::direct(GroupSpec::Cyclic(4), GroupSpec::Symmetric(3)));
        assert!(upper_central_series(&d8).is_nilpotent(&d8.whole()));
        assert_eq!(upper_central_series(&c4s3).hypercenter().order(), 4);
    }

    #[test]
    fn omega_bar_examples() {
        let q8 = build(GroupSpec::Quaternion8);
        assert_eq!(omega_bar(&q8, 2).unwrap(), q8.whole());
        let c9 = build(GroupSpec::Cyclic(9));
        assert_eq!(omega_bar(&c9, 3).unwrap().order(), 3);
        assert!(omega_bar(&build(GroupSpec::Cyclic(15)), 2).unwrap().is_trivial());
        let c8 = build(GroupSpec::Cyclic(8));
        assert_eq!(omega_bar(&c8, 2).unwrap().order(), 4);
    }

    #[test]
    fn hall_petrescu_examples() {
        let q8 = build(GroupSpec::Quaternion8);
        let c = hall_petrescu_check(&q8, 2).unwrap();
        assert_eq!((c.e, c.n), (2, 2));
        assert!(c.holds);
        assert!(hall_petrescu_consequence(&build(GroupSpec::Cyclic(12)), 2).unwrap());
        let s3 = build(GroupSpec::Symmetric(3));
        assert!(matches!(
            hall_petrescu_consequence(&s3, 2),
            Err(GroupError::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn commutator_generation_identity() {
        let g = quaternion_by_c3().unwrap();
        let q = quaternion_factor(&g).unwrap();
        let k = omega_bar_in(&q, 2).unwrap();
        for x in 0..g.order() {
            assert_eq!(commutator_with(&k, x), conjugated_commutators(&k, x, 2));
        }
    }

    #[test]
    fn verdict_json() {
        let s3 = build(GroupSpec::Symmetric(3));
        let v = serde_json::to_value(is_p_nilpotent(&s3, 2).unwrap()).unwrap();
        assert_eq!(v["p"], 2);
        assert_eq!(v["p_nilpotent"], true);
        assert_eq!(v["complement_order"], 3);
        let g = quaternion_by_c3().unwrap();
        let v = serde_json::to_value(frobenius_criterion(&g, 2).unwrap()).unwrap();
        assert_eq!(v["p_nilpotent"], false);
        assert!(v["frobenius_witness"]["g"].is_array());
        assert!(v.get("complement_order").is_none());
    }
}
