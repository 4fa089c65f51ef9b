//! Named groups, product constructions and the JSON group file format.
//!
//! Symmetric and alternating groups use their natural action. Everything
//! else is realized in its right regular representation, where point `x`
//! is the `x`-th element in canonical order and `g` acts by `x ↦ x·g`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

/// Images of the acting generators: `(generator index, permutation of the
/// normal factor's element indices)`.
pub type ActionMap = Vec<(usize, Vec<usize>)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    ElementaryAbelian { p: u64, k: u32 },
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: ActionMap,
    },
}

impl GroupSpec {
    pub fn direct(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::DirectProduct(Box::new(a), Box::new(b))
    }

    pub fn semidirect(normal: GroupSpec, acting: GroupSpec, action: ActionMap) -> GroupSpec {
        GroupSpec::Semidirect {
            normal: Box::new(normal),
            acting: Box::new(acting),
            action,
        }
    }

    /// Order predicted from the constructor alone.
    pub fn predicted_order(&self) -> usize {
        match self {
            GroupSpec::Cyclic(n) => (*n).max(1),
            GroupSpec::Dihedral(n) => 2 * (*n).max(1),
            GroupSpec::Symmetric(n) => (1..=*n).product(),
            GroupSpec::Alternating(n) => ((1..=*n).product::<usize>() / 2).max(1),
            GroupSpec::Quaternion8 => 8,
            GroupSpec::ElementaryAbelian { p, k } => (*p as usize).pow(*k),
            GroupSpec::DirectProduct(a, b) => a.predicted_order() * b.predicted_order(),
            GroupSpec::Semidirect { normal, acting, .. } => {
                normal.predicted_order() * acting.predicted_order()
            }
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let g = match self {
            GroupSpec::Cyclic(n) => cyclic(*n),
            GroupSpec::Dihedral(n) => {
                let rotations = cyclic(*n)?;
                let inversion = inversion_automorphism(&rotations);
                semidirect_product(&rotations, &cyclic(2)?, &vec![(0, inversion)])
            }
            GroupSpec::Symmetric(n) => symmetric(*n),
            GroupSpec::Alternating(n) => alternating(*n),
            GroupSpec::Quaternion8 => quaternion8(),
            GroupSpec::ElementaryAbelian { p, k } => {
                let factor = cyclic(*p as usize)?;
                let mut acc = FiniteGroup::generate(1, &[])?;
                for _ in 0..*k {
                    acc = direct_product(&acc, &factor)?;
                }
                Ok(acc)
            }
            GroupSpec::DirectProduct(a, b) => direct_product(&a.build()?, &b.build()?),
            GroupSpec::Semidirect {
                normal,
                acting,
                action,
            } => semidirect_product(&normal.build()?, &acting.build()?, action),
        }?;
        debug_assert_eq!(g.order(), self.predicted_order());
        Ok(g)
    }
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    let n = n.max(1);
    let cycle: Vec<usize> = (0..n).collect();
    FiniteGroup::generate(n, &[Permutation::from_cycles(n, &[&cycle])?])
}

fn symmetric(n: usize) -> Result<FiniteGroup> {
    let degree = n.max(1);
    if n < 2 {
        return FiniteGroup::generate(degree, &[]);
    }
    let cycle: Vec<usize> = (0..n).collect();
    FiniteGroup::generate(
        n,
        &[
            Permutation::from_cycles(n, &[&cycle])?,
            Permutation::from_cycles(n, &[&[0, 1]])?,
        ],
    )
}

fn alternating(n: usize) -> Result<FiniteGroup> {
    let degree = n.max(1);
    let gens = (2..n)
        .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::generate(degree, &gens)
}

/// Quaternion unit labels: point `2u + s` is `(-1)^s · [1, i, j, k][u]`.
fn quaternion_mul(a: usize, b: usize) -> usize {
    let (ua, sa) = (a / 2, a % 2);
    let (ub, sb) = (b / 2, b % 2);
    // Products of the units 1, i, j, k as (unit, negated).
    const TABLE: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let (u, s) = TABLE[ua][ub];
    2 * u + (s + sa + sb) % 2
}

fn quaternion_right_mult(q: usize) -> Permutation {
    Permutation::from_images((0..8).map(|x| quaternion_mul(x, q)).collect())
        .expect("right multiplication is a bijection")
}

/// Label permutation fixing ±1 and cycling i → j → k → i.
fn quaternion_cycle_labels() -> Permutation {
    Permutation::from_images(
        (0..8)
            .map(|x| {
                let (u, s) = (x / 2, x % 2);
                let u = if u == 0 { 0 } else { u % 3 + 1 };
                2 * u + s
            })
            .collect(),
    )
    .expect("relabelling is a bijection")
}

fn quaternion8() -> Result<FiniteGroup> {
    FiniteGroup::generate(8, &[quaternion_right_mult(2), quaternion_right_mult(4)])
}

/// `Q₈ ⋊ C₃` on the eight quaternion units: right multiplications by `i`, `j`
/// together with the order-3 automorphism `α` cycling `i → j → k`.
pub fn quaternion_by_c3() -> Result<FiniteGroup> {
    FiniteGroup::generate(
        8,
        &[
            quaternion_right_mult(2),
            quaternion_right_mult(4),
            quaternion_cycle_labels(),
        ],
    )
}

/// The `Q₈` factor (right multiplications) inside [`quaternion_by_c3`].
pub fn quaternion_factor(g: &FiniteGroup) -> Result<crate::Subgroup> {
    g.subgroup_closure(&[quaternion_right_mult(2), quaternion_right_mult(4)])
}

/// The automorphism `α` inside [`quaternion_by_c3`].
pub fn quaternion_alpha() -> Permutation {
    quaternion_cycle_labels()
}

/// Action of `α` on the element indices of `GroupSpec::Quaternion8`'s build.
///
/// In the regular representation the element `ρ(q)` sends the identity
/// label 0 to `q`, so `α` maps `ρ(q)` to `ρ(α(q))`.
pub fn quaternion_c3_action(q8: &FiniteGroup) -> Vec<usize> {
    let alpha = quaternion_cycle_labels();
    (0..q8.order())
        .map(|e| {
            let label = alpha.apply(q8.element(e).apply(0));
            q8.index_of(&quaternion_right_mult(label))
                .expect("image lies in Q8")
        })
        .collect()
}

/// `a ↦ a⁻¹` on element indices (an automorphism of an abelian group).
pub fn inversion_automorphism(g: &FiniteGroup) -> Vec<usize> {
    (0..g.order()).map(|a| g.inv(a)).collect()
}

/// `a ↦ a^k` on element indices.
pub fn power_automorphism(g: &FiniteGroup, k: u64) -> Vec<usize> {
    (0..g.order()).map(|a| g.pow(a, k)).collect()
}

/// Right regular representation of `g` (degree `|g|`).
pub fn regular_representation(g: &FiniteGroup) -> Result<FiniteGroup> {
    let n = g.order();
    let gens = g
        .generator_indices()
        .iter()
        .map(|&s| Permutation::from_images((0..n).map(|x| g.mul(x, s)).collect()))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::generate(n, &gens)
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let identity: Vec<usize> = (0..a.order()).collect();
    let action = (0..b.generator_indices().len())
        .map(|i| (i, identity.clone()))
        .collect();
    semidirect_product(a, b, &action)
}

/// `normal ⋊ acting`, where `action` gives, for each generator of `acting`,
/// the automorphism of `normal` it induces (as a permutation of element
/// indices, acting on the right).
///
/// Elements are pairs `(h, n)` with `(h₁, n₁)(h₂, n₂) = (h₁h₂, n₁^{h₂} n₂)`;
/// conjugating `(1, n)` by `(h, 1)` gives `(1, n^h)`.
pub fn semidirect_product(
    normal: &FiniteGroup,
    acting: &FiniteGroup,
    action: &ActionMap,
) -> Result<FiniteGroup> {
    let (nn, nh) = (normal.order(), acting.order());
    let gens = acting.generator_indices();
    let mut images: Vec<Option<&Vec<usize>>> = vec![None; gens.len()];
    for (i, perm) in action {
        let slot = images.get_mut(*i).ok_or_else(|| {
            GroupError::InvalidAction(format!("acting generator {i} does not exist"))
        })?;
        if slot.replace(perm).is_some() {
            return Err(GroupError::InvalidAction(format!(
                "acting generator {i} listed twice"
            )));
        }
    }
    let mut autos = Vec::with_capacity(gens.len());
    for (i, image) in images.iter().enumerate() {
        let image = image.ok_or_else(|| {
            GroupError::InvalidAction(format!("no image for acting generator {i}"))
        })?;
        if image.len() != nn {
            return Err(GroupError::InvalidAction(format!(
                "image of generator {i} has length {}, expected {nn}",
                image.len()
            )));
        }
        let perm = Permutation::from_images(image.clone()).map_err(|_| {
            GroupError::InvalidAction(format!("image of generator {i} is not a bijection"))
        })?;
        if perm.apply(FiniteGroup::IDENTITY) != FiniteGroup::IDENTITY
            || !(0..nn).all(|a| {
                (0..nn).all(|b| perm.apply(normal.mul(a, b)) == normal.mul(perm.apply(a), perm.apply(b)))
            })
        {
            return Err(GroupError::InvalidAction(format!(
                "image of generator {i} is not an automorphism"
            )));
        }
        autos.push(perm);
    }

    // The generator assignment extends to a homomorphism exactly when the
    // group generated by the pairs (h, φ(h)) is the graph of a function on
    // the acting group, i.e. has the acting group's order.
    let graph_gens = gens
        .iter()
        .zip(&autos)
        .map(|(&h, auto)| {
            let mut img: Vec<usize> = (0..nh).map(|x| acting.mul(x, h)).collect();
            img.extend(auto.images().iter().map(|&y| y + nh));
            Permutation::from_images(img)
        })
        .collect::<Result<Vec<_>>>()?;
    let graph = FiniteGroup::generate(nh + nn, &graph_gens)?;
    if graph.order() != nh {
        return Err(GroupError::InvalidAction(
            "generator images do not extend to a homomorphism".into(),
        ));
    }
    let mut phi: Vec<Vec<usize>> = vec![Vec::new(); nh];
    for e in graph.elements() {
        let h = e.apply(0);
        phi[h] = e.images()[nh..].iter().map(|&y| y - nh).collect();
    }

    let total = nn * nh;
    let pair = |h: usize, n: usize| h * nn + n;
    let right_mult = |h2: usize, n2: usize| -> Result<Permutation> {
        let mut img = vec![0; total];
        for h1 in 0..nh {
            for n1 in 0..nn {
                img[pair(h1, n1)] = pair(acting.mul(h1, h2), normal.mul(phi[h2][n1], n2));
            }
        }
        Permutation::from_images(img)
    };
    let mut product_gens = Vec::new();
    for &h in gens {
        product_gens.push(right_mult(h, FiniteGroup::IDENTITY)?);
    }
    for &n in normal.generator_indices() {
        product_gens.push(right_mult(FiniteGroup::IDENTITY, n)?);
    }
    let g = FiniteGroup::generate(total, &product_gens)?;
    debug_assert_eq!(g.order(), total);
    Ok(g)
}

/// On-disk group description: `{ "name", "degree", "generators": [[images…], …] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn from_group(name: &str, g: &FiniteGroup) -> Self {
        GroupFile {
            name: name.to_string(),
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            GroupError::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
        })
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for (i, images) in self.generators.iter().enumerate() {
            if images.len() != self.degree {
                return Err(GroupError::parse(
                    format!("generators[{i}]"),
                    format!("has {} images, degree is {}", images.len(), self.degree),
                ));
            }
            let perm = Permutation::from_images(images.clone()).map_err(|e| match e {
                GroupError::Parse { location, message } => {
                    GroupError::parse(format!("generators[{i}] {location}"), message)
                }
                other => other,
            })?;
            gens.push(perm);
        }
        FiniteGroup::generate(self.degree, &gens)
    }
}

pub fn load_group(path: impl AsRef<Path>) -> Result<(String, FiniteGroup)> {
    let text = fs::read_to_string(path.as_ref()).map_err(|e| GroupError::Io(e.to_string()))?;
    let file = GroupFile::parse(&text)?;
    let g = file.to_group()?;
    Ok((file.name, g))
}

pub fn save_group(name: &str, g: &FiniteGroup, path: impl AsRef<Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(&GroupFile::from_group(name, g))
        .map_err(|e| GroupError::Io(e.to_string()))?;
    fs::write(path.as_ref(), text + "\n").map_err(|e| GroupError::Io(e.to_string()))
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub group: FiniteGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogListing {
    pub name: String,
    pub order: usize,
    pub degree: usize,
}

impl CatalogEntry {
    pub fn listing(&self) -> CatalogListing {
        CatalogListing {
            name: self.name.clone(),
            order: self.group.order(),
            degree: self.group.degree(),
        }
    }
}

/// Largest order `standard_catalog` accepts.
pub const CATALOG_MAX_ORDER: usize = 400;

enum Recipe {
    Spec(GroupSpec),
    QuaternionByC3,
    /// Generators in cycle notation on the given number of points.
    Cycles(usize, &'static [&'static str], usize),
}

impl Recipe {
    fn predicted_order(&self) -> usize {
        match self {
            Recipe::Spec(s) => s.predicted_order(),
            Recipe::QuaternionByC3 => 24,
            Recipe::Cycles(_, _, order) => *order,
        }
    }

    fn build(&self) -> Result<FiniteGroup> {
        match self {
            Recipe::Spec(s) => s.build(),
            Recipe::QuaternionByC3 => quaternion_by_c3(),
            Recipe::Cycles(degree, gens, _) => {
                let gens = gens
                    .iter()
                    .map(|c| Permutation::parse_cycles(c, *degree))
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::generate(*degree, &gens)
            }
        }
    }
}

/// GL(2,3) on the eight nonzero vectors of F₃², indexed `x + 3y - 1`:
/// the matrices [[1,1],[0,1]], [[0,2],[1,0]] and diag(2,1).
const GL23_GENERATORS: &[&str] = &["(2 3 4)(5 7 6)", "(0 2 1 5)(3 4 7 6)", "(0 1)(3 4)(6 7)"];

fn catalog_recipes() -> Vec<(String, Recipe)> {
    use GroupSpec::*;
    let mut out: Vec<(String, Recipe)> = Vec::new();
    for n in 1..=24 {
        out.push((format!("C{n}"), Recipe::Spec(Cyclic(n))));
    }
    for n in 2..=12 {
        out.push((format!("D{}", 2 * n), Recipe::Spec(Dihedral(n))));
    }
    out.push(("S3".into(), Recipe::Spec(Symmetric(3))));
    out.push(("S4".into(), Recipe::Spec(Symmetric(4))));
    out.push(("S5".into(), Recipe::Spec(Symmetric(5))));
    out.push(("A4".into(), Recipe::Spec(Alternating(4))));
    out.push(("A5".into(), Recipe::Spec(Alternating(5))));
    out.push(("Q8".into(), Recipe::Spec(Quaternion8)));
    out.push(("Q8:C3".into(), Recipe::QuaternionByC3));
    for (p, kmax) in [(2u64, 4u32), (3, 3), (5, 2)] {
        for k in 2..=kmax {
            out.push((format!("C{p}^{k}"), Recipe::Spec(ElementaryAbelian { p, k })));
        }
    }
    out.push((
        "C4xS3".into(),
        Recipe::Spec(GroupSpec::direct(Cyclic(4), Symmetric(3))),
    ));
    out.push((
        "D8xC3".into(),
        Recipe::Spec(GroupSpec::direct(Dihedral(4), Cyclic(3))),
    ));
    out.push((
        "A4xC2".into(),
        Recipe::Spec(GroupSpec::direct(Alternating(4), Cyclic(2))),
    ));
    out.push((
        "S3xS3".into(),
        Recipe::Spec(GroupSpec::direct(Symmetric(3), Symmetric(3))),
    ));
    out.push((
        "S4xC2".into(),
        Recipe::Spec(GroupSpec::direct(Symmetric(4), Cyclic(2))),
    ));
    out.push(("Q8xC3".into(), Recipe::Spec(GroupSpec::direct(Quaternion8, Cyclic(3)))));
    out.push((
        "A4xC3".into(),
        Recipe::Spec(GroupSpec::direct(Alternating(4), Cyclic(3))),
    ));
    out.push((
        "S4xC3".into(),
        Recipe::Spec(GroupSpec::direct(Symmetric(4), Cyclic(3))),
    ));
    out.push(("GL(2,3)".into(), Recipe::Cycles(8, GL23_GENERATORS, 48)));
    // Metacyclic groups: C_m ⋊ C_k acting by a power map on the generator.
    for (m, k, power) in [(3usize, 4usize, 2u64), (5, 4, 2), (7, 3, 2), (7, 6, 3), (9, 2, 8)] {
        let normal = cyclic(m).expect("small cyclic group");
        out.push((
            format!("C{m}:C{k}"),
            Recipe::Spec(GroupSpec::semidirect(
                Cyclic(m),
                Cyclic(k),
                vec![(0, power_automorphism(&normal, power))],
            )),
        ));
    }
    out
}

/// The fixed list of named test groups, filtered to `order ≤ max_order`.
pub fn standard_catalog(max_order: usize) -> Result<Vec<CatalogEntry>> {
    if max_order > CATALOG_MAX_ORDER {
        return Err(GroupError::TooLarge {
            what: "catalog order bound",
            cap: CATALOG_MAX_ORDER,
        });
    }
    let mut out = Vec::new();
    for (name, recipe) in catalog_recipes() {
        if recipe.predicted_order() > max_order {
            continue;
        }
        let group = recipe.build()?;
        if group.order() != recipe.predicted_order() {
            return Err(GroupError::InvalidAction(format!(
                "{name} has order {}, expected {}",
                group.order(),
                recipe.predicted_order()
            )));
        }
        out.push(CatalogEntry { name, group });
    }
    Ok(out)
}

/// Looks up a catalog group by name (case-sensitive).
pub fn catalog_group(name: &str) -> Option<FiniteGroup> {
    catalog_recipes()
        .into_iter()
        .find(|(n, _)| n == name)
        .and_then(|(_, recipe)| recipe.build().ok())
}

pub fn catalog_names() -> Vec<String> {
    catalog_recipes().into_iter().map(|(n, _)| n).collect()
}
