use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::{AbelianBasis, FiniteGroup};
use crate::error::{Error, Result};

pub const DEFAULT_SUBGROUP_BOUND: usize = 512;

/// A subgroup stored as a sorted element list of its parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl Subgroup {
    /// Validates closure under products and inverses.
    pub fn new(g: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut member = vec![false; g.order()];
        for &e in elements {
            if e >= g.order() {
                return Err(Error::InvalidGroup(format!("element {e} out of range")));
            }
            member[e] = true;
        }
        if !member[0] {
            return Err(Error::InvalidGroup("subgroup misses the identity".into()));
        }
        let mut elements: Vec<usize> = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        for &a in &elements {
            if !member[g.inv(a)] {
                return Err(Error::InvalidGroup(format!("not closed under inverse at {a}")));
            }
            for &b in &elements {
                if !member[g.mul(a, b)] {
                    return Err(Error::InvalidGroup(format!("not closed under product at ({a}, {b})")));
                }
            }
        }
        Ok(Subgroup { elements, member })
    }

    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let elements = g.closure(gens);
        let mut member = vec![false; g.order()];
        for &e in &elements {
            member[e] = true;
        }
        Subgroup { elements, member }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::generated(g, &[])
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::generated(g, &(0..g.order()).collect::<Vec<_>>())
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.member[x]
    }

    /// Position of `x` in the sorted element list.
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        (0..g.order()).all(|x| self.elements.iter().all(|&h| self.member[g.conj(x, h)]))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// The subgroup as a group in its own right. Local index `i` stands for `elements[i]`.
    pub fn as_group(&self, g: &FiniteGroup) -> FiniteGroup {
        let els = &self.elements;
        FiniteGroup::from_fn_trusted(els.len(), |a, b| {
            els.binary_search(&g.mul(els[a], els[b])).expect("closed")
        })
    }

    /// Normalizer `N_G(H)` as a sorted element list.
    pub fn normalizer(&self, g: &FiniteGroup) -> Vec<usize> {
        (0..g.order())
            .filter(|&x| self.elements.iter().all(|&h| self.member[g.conj(x, h)]))
            .collect()
    }
}

/// Every subgroup exactly once, sorted by order then element list.
pub fn all_subgroups(g: &FiniteGroup, bound: usize) -> Result<Vec<Subgroup>> {
    if g.order() > bound {
        return Err(Error::SizeBound {
            what: "group order for subgroup enumeration",
            size: g.order(),
            bound,
        });
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic: Vec<(usize, Vec<usize>)> = Vec::new();
    for x in 0..g.order() {
        let c = g.closure(&[x]);
        if seen.insert(c.clone()) {
            cyclic.push((x, c));
        }
    }
    // (generators, elements) pairs; every subgroup is a join of cyclic ones
    let mut found: Vec<(Vec<usize>, Vec<usize>)> =
        cyclic.iter().map(|(x, c)| (vec![*x], c.clone())).collect();
    let mut i = 0;
    while i < found.len() {
        let (gens, elems) = found[i].clone();
        for (x, _) in &cyclic {
            if elems.binary_search(x).is_ok() {
                continue;
            }
            let mut ng = gens.clone();
            ng.push(*x);
            let c = g.closure(&ng);
            if seen.insert(c.clone()) {
                found.push((ng, c));
            }
        }
        i += 1;
    }
    let mut subs: Vec<Vec<usize>> = found.into_iter().map(|(_, e)| e).collect();
    subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(subs
        .into_iter()
        .map(|e| Subgroup::new(g, &e).expect("closure is a subgroup"))
        .collect())
}

/// A Sylow `p`-subgroup, grown one normalizing `p`-element at a time.
pub fn sylow_subgroup(g: &FiniteGroup, p: usize) -> Subgroup {
    let mut target = 1;
    let mut n = g.order();
    while n.is_multiple_of(p) {
        n /= p;
        target *= p;
    }
    let is_p_power = |mut k: usize| {
        while k.is_multiple_of(p) {
            k /= p;
        }
        k == 1
    };
    let mut elems = vec![0];
    while elems.len() < target {
        let member = |x: usize, set: &[usize]| set.binary_search(&x).is_ok();
        let x = (1..g.order())
            .find(|&x| {
                !member(x, &elems)
                    && is_p_power(g.element_order(x))
                    && elems.iter().all(|&h| member(g.conj(x, h), &elems))
            })
            .expect("a p-subgroup below Sylow order has a normalizing p-element outside it");
        let mut gens = elems.clone();
        gens.push(x);
        elems = g.closure(&gens);
    }
    Subgroup::generated(g, &elems)
}

/// Counting invariants used to tell groups (and their Grothendieck rings) apart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub order: usize,
    pub normal_by_order: BTreeMap<usize, usize>,
    pub subgroups_by_order: BTreeMap<usize, usize>,
    pub abelianization: Vec<u64>,
    pub abelianization_order: usize,
    pub conjugacy_classes: usize,
    pub center_order: usize,
}

pub fn normal_subgroup_census(g: &FiniteGroup) -> Result<Census> {
    let subs = all_subgroups(g, DEFAULT_SUBGROUP_BOUND)?;
    let mut normal_by_order = BTreeMap::new();
    let mut subgroups_by_order = BTreeMap::new();
    for s in &subs {
        *subgroups_by_order.entry(s.order()).or_insert(0) += 1;
        if s.is_normal(g) {
            *normal_by_order.entry(s.order()).or_insert(0) += 1;
        }
    }
    let derived = Subgroup::generated(g, &g.commutator_subgroup());
    let ab = g.quotient(&derived)?;
    let basis = AbelianBasis::new(&ab)?;
    Ok(Census {
        order: g.order(),
        normal_by_order,
        subgroups_by_order,
        abelianization: basis.invariant_factors(),
        abelianization_order: ab.order(),
        conjugacy_classes: g.conjugacy_classes().len(),
        center_order: g.center().len(),
    })
}
