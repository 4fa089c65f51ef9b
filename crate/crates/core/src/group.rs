//! Finite permutation groups built by exhaustive closure.
//!
//! A [`FiniteGroup`] stores every element in canonical (lexicographic) order,
//! so element indices double as canonical ranks. Index 0 is always the
//! identity. Groups are immutable and cheap to clone.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{GroupError, Result};
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

/// Hard cap on the number of elements `generate` will enumerate.
pub const ELEMENT_CAP: usize = 100_000;

/// Groups up to this order get a full Cayley table.
const TABLE_LIMIT: usize = 2048;

#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupData>,
}

struct GroupData {
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<usize>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    orders: Vec<u64>,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl FiniteGroup {
    /// Enumerates the group generated by `gens`. An empty generator list
    /// yields the trivial group of the given degree.
    pub fn generate(degree: usize, gens: &[Permutation]) -> Result<FiniteGroup> {
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let generators: Vec<Permutation> = if gens.is_empty() {
            vec![identity.clone()]
        } else {
            gens.to_vec()
        };

        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        let mut found = vec![identity.clone()];
        seen.insert(identity, ());
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for s in &generators {
                let y = found[i].compose(s)?;
                if !seen.contains_key(&y) {
                    if found.len() >= ELEMENT_CAP {
                        return Err(GroupError::TooLarge {
                            what: "group order",
                            cap: ELEMENT_CAP,
                        });
                    }
                    seen.insert(y.clone(), ());
                    found.push(y);
                    queue.push_back(found.len() - 1);
                }
            }
        }
        drop(seen);
        found.sort();
        Ok(FiniteGroup::from_sorted(degree, generators, found))
    }

    fn from_sorted(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> Self {
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let orders = elements.iter().map(Permutation::order).collect();
        let inverses = elements.iter().map(|e| index[&e.inverse()]).collect();
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    let c = a.compose(b).expect("same degree");
                    t.push(index[&c] as u32);
                }
            }
            t
        });
        FiniteGroup {
            inner: Arc::new(GroupData {
                degree,
                generators,
                generator_indices,
                elements,
                index,
                orders,
                inverses,
                table,
            }),
        }
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.inner.generator_indices
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> &[Permutation] {
        &self.inner.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.inner.elements[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.inner.index.get(g).copied()
    }

    pub(crate) fn require_index(&self, g: &Permutation) -> Result<usize> {
        self.index_of(g).ok_or(GroupError::ElementNotInGroup)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.inner.index.contains_key(g)
    }

    pub const IDENTITY: usize = 0;

    /// Product of two element indices (`a` applied first).
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.inner.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => {
                let c = self.inner.elements[a]
                    .compose(&self.inner.elements[b])
                    .expect("same degree");
                self.inner.index[&c]
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inner.inverses[a]
    }

    /// `g⁻¹ a g` on indices.
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b` on indices.
    #[inline]
    pub fn comm(&self, a: usize, b: usize) -> usize {
        let left = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(left, a), b)
    }

    /// Cached multiplicative order of an element index.
    #[inline]
    pub fn element_order(&self, a: usize) -> u64 {
        self.inner.orders[a]
    }

    pub fn pow(&self, a: usize, exp: u64) -> usize {
        let exp = exp % self.element_order(a);
        let (mut acc, mut base, mut e) = (Self::IDENTITY, a, exp);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Index power `a^(p^k)` where the exponent may be astronomically large.
    pub(crate) fn pow_prime_power(&self, a: usize, p: u64, k: u32) -> usize {
        let m = self.element_order(a);
        self.pow(a, crate::arith::pow_mod(p, k as u64, m))
    }

    /// True when the element's order is a power of `p` (identity included).
    pub fn is_p_element(&self, a: usize, p: u64) -> bool {
        let mut o = self.element_order(a);
        while o.is_multiple_of(p) {
            o /= p;
        }
        o == 1
    }

    /// True when the element's order is coprime to `p`.
    pub fn is_p_prime_element(&self, a: usize, p: u64) -> bool {
        !self.element_order(a).is_multiple_of(p)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn same_as(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// The group as a subgroup of itself.
    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted_members(self.clone(), (0..self.order()).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted_members(self.clone(), vec![Self::IDENTITY])
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.generators())
            .finish()
    }
}
