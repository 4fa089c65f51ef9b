//! Subgroups of a [`FiniteGroup`] and the structural operations on them.
//!
//! A subgroup is a sorted list of element indices of its parent together
//! with a membership mask. Because parent indices follow the canonical
//! element order, two subgroups are equal exactly when their member lists
//! are. Every operation here that takes an "ambient" subgroup restricts its
//! search to the ambient's members, so the same code serves `G` and any
//! subgroup of `G`.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::arith::{p_part, require_prime};
use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub(crate) fn from_sorted_members(parent: FiniteGroup, members: Vec<usize>) -> Self {
        let mut mask = vec![false; parent.order()];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { parent, members, mask }
    }

    pub(crate) fn from_mask(parent: FiniteGroup, mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        Subgroup { parent, members, mask }
    }

    /// Smallest subgroup of `parent` containing the element indices in `gens`.
    pub(crate) fn generated_by(parent: &FiniteGroup, gens: &[usize]) -> Subgroup {
        let gens: Vec<usize> = gens
            .iter()
            .copied()
            .filter(|&g| g != FiniteGroup::IDENTITY)
            .collect();
        let mut mask = vec![false; parent.order()];
        mask[FiniteGroup::IDENTITY] = true;
        let mut queue = VecDeque::from([FiniteGroup::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = parent.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_mask(parent.clone(), mask)
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Member indices in canonical order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn permutations(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.members.iter().map(|&i| self.parent.element(i))
    }

    #[inline]
    pub fn contains_index(&self, i: usize) -> bool {
        self.mask[i]
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.parent.index_of(g).is_some_and(|i| self.mask[i])
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub(crate) fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.parent.same_as(&other.parent) {
            Ok(())
        } else {
            Err(GroupError::ParentMismatch)
        }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent.same_as(&other.parent)
            && self.order() <= other.order()
            && self.members.iter().all(|&m| other.mask[m])
    }

    /// Closure of this subgroup together with extra element indices.
    pub(crate) fn join_indices(&self, extra: &[usize]) -> Subgroup {
        let mut gens = self.small_generating_set();
        gens.extend_from_slice(extra);
        Subgroup::generated_by(&self.parent, &gens)
    }

    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        Ok(self.join_indices(&other.small_generating_set()))
    }

    /// A generating set picked greedily in canonical order.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.parent.trivial_subgroup();
        for &m in &self.members {
            if current.order() == self.order() {
                break;
            }
            if !current.mask[m] {
                gens.push(m);
                current = Subgroup::generated_by(&self.parent, &gens);
            }
        }
        gens
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.mask[m])
            .collect();
        Ok(Subgroup::from_sorted_members(self.parent.clone(), members))
    }

    /// `{ g⁻¹ a g : a ∈ self }` for an element index `g` of the parent.
    pub(crate) fn conjugate_by_index(&self, g: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&a| self.parent.conj(a, g)).collect();
        members.sort_unstable();
        Subgroup::from_sorted_members(self.parent.clone(), members)
    }

    pub fn conjugate_by(&self, g: &Permutation) -> Result<Subgroup> {
        let g = self.parent.index_of(g).ok_or(GroupError::ParentMismatch)?;
        Ok(self.conjugate_by_index(g))
    }

    /// True when `self^g ≤ target`.
    pub(crate) fn conjugate_lands_in(&self, g: usize, target: &Subgroup) -> bool {
        self.members
            .iter()
            .all(|&a| target.mask[self.parent.conj(a, g)])
    }

    /// Elements of `self` commuting with every member of `of`.
    pub fn centralizer(&self, of: &Subgroup) -> Result<Subgroup> {
        self.check_parent(of)?;
        let g = &self.parent;
        let gens = of.small_generating_set();
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&x| gens.iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
            .collect();
        Ok(Subgroup::from_sorted_members(g.clone(), members))
    }

    /// Elements `x` of `self` with `of^x = of`.
    pub fn normalizer(&self, of: &Subgroup) -> Result<Subgroup> {
        self.check_parent(of)?;
        let gens = of.small_generating_set();
        let g = &self.parent;
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&x| gens.iter().all(|&s| of.mask[g.conj(s, x)]))
            .collect();
        Ok(Subgroup::from_sorted_members(g.clone(), members))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(self).expect("same parent")
    }

    pub fn is_normal_in(&self, ambient: &Subgroup) -> bool {
        self.is_subgroup_of(ambient)
            && ambient
                .small_generating_set()
                .iter()
                .all(|&x| self.conjugate_lands_in(x, self))
    }

    /// First element `g` of `self` (canonical order) with `a^g = b`.
    pub fn conjugating_element(&self, a: &Subgroup, b: &Subgroup) -> Result<Option<usize>> {
        self.check_parent(a)?;
        self.check_parent(b)?;
        if a.order() != b.order() {
            return Ok(None);
        }
        Ok(self
            .members
            .iter()
            .copied()
            .find(|&g| a.conjugate_lands_in(g, b)))
    }

    /// `{ x·y : x ∈ self, y ∈ other }` as sorted element indices.
    pub fn set_product(&self, other: &Subgroup) -> Result<Vec<usize>> {
        self.check_parent(other)?;
        Ok(self.set_product_mask(other)
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect())
    }

    pub(crate) fn set_product_mask(&self, other: &Subgroup) -> Vec<bool> {
        let mut mask = vec![false; self.parent.order()];
        for &x in &self.members {
            for &y in &other.members {
                mask[self.parent.mul(x, y)] = true;
            }
        }
        mask
    }

    /// A Sylow `p`-subgroup of this subgroup.
    ///
    /// Grows a `p`-subgroup one step at a time: starting from a cyclic group
    /// of order `p`, it adjoins a `p`-element of the normalizer whose coset
    /// has order `p`, until the full `p`-part is reached. Returns the trivial
    /// subgroup when `p` does not divide the order.
    pub fn sylow(&self, p: u64) -> Result<Subgroup> {
        require_prime(p)?;
        let g = &self.parent;
        let target = p_part(self.order(), p);
        if target == 1 {
            return Ok(g.trivial_subgroup());
        }
        let first = self
            .members
            .iter()
            .copied()
            .find(|&x| g.element_order(x) == p)
            .expect("Cauchy: an element of order p exists");
        let mut gens = vec![first];
        let mut sylow = Subgroup::generated_by(g, &gens);
        while sylow.order() < target {
            let normalizer = self.normalizer(&sylow)?;
            let next = normalizer
                .members
                .iter()
                .copied()
                .find(|&x| {
                    !sylow.mask[x] && g.is_p_element(x, p) && sylow.mask[g.pow(x, p)]
                })
                .expect("a proper p-subgroup grows inside its normalizer");
            gens.push(next);
            sylow = Subgroup::generated_by(g, &gens);
        }
        Ok(sylow)
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        p_part(self.order(), p) == self.order()
    }
}

impl FiniteGroup {
    /// Smallest subgroup containing `seed`; the empty seed gives the trivial group.
    pub fn subgroup_closure(&self, seed: &[Permutation]) -> Result<Subgroup> {
        let idx = seed
            .iter()
            .map(|s| self.require_index(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup::generated_by(self, &idx))
    }

    pub fn subgroup_from_indices(&self, seed: &[usize]) -> Subgroup {
        Subgroup::generated_by(self, seed)
    }

    fn owns(&self, s: &Subgroup) -> Result<()> {
        if self.same_as(s.parent()) {
            Ok(())
        } else {
            Err(GroupError::ParentMismatch)
        }
    }

    pub fn centralizer(&self, s: &Subgroup) -> Result<Subgroup> {
        self.owns(s)?;
        self.whole().centralizer(s)
    }

    pub fn normalizer(&self, s: &Subgroup) -> Result<Subgroup> {
        self.owns(s)?;
        self.whole().normalizer(s)
    }

    pub fn center(&self) -> Subgroup {
        self.whole().center()
    }

    pub fn conjugate_subgroup(&self, a: &Subgroup, g: &Permutation) -> Result<Subgroup> {
        self.owns(a)?;
        a.conjugate_by(g)
    }

    pub fn conjugating_element(&self, a: &Subgroup, b: &Subgroup) -> Result<Option<Permutation>> {
        self.owns(a)?;
        Ok(self
            .whole()
            .conjugating_element(a, b)?
            .map(|i| self.element(i).clone()))
    }

    pub fn sylow_subgroup(&self, p: u64) -> Result<Subgroup> {
        self.whole().sylow(p)
    }

    pub fn set_product(&self, x: &Subgroup, y: &Subgroup) -> Result<Vec<usize>> {
        self.owns(x)?;
        x.set_product(y)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_as(&other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: lexicographic on sorted member lists.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.cmp(&other.members)
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}; ", self.order())?;
        let gens = self.small_generating_set();
        f.write_str("<")?;
        for (k, &g) in gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.parent.element(g))?;
        }
        f.write_str(">)")
    }
}
