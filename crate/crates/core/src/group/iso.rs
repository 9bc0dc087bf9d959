use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::Serialize;

use super::{AbelianBasis, FiniteGroup, Subgroup};
use crate::error::Result;

/// A bijection between element indices that respects multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupIso {
    pub map: Vec<usize>,
}

impl GroupIso {
    pub fn identity(n: usize) -> Self {
        GroupIso { map: (0..n).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        GroupIso { map: inv }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupIso) -> Self {
        GroupIso {
            map: self.map.iter().map(|&y| other.map[y]).collect(),
        }
    }

    pub fn is_isomorphism(&self, g1: &FiniteGroup, g2: &FiniteGroup) -> bool {
        let n = g1.order();
        if n != g2.order() || self.map.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &y in &self.map {
            if y >= n || seen[y] {
                return false;
            }
            seen[y] = true;
        }
        (0..n).all(|a| (0..n).all(|b| self.map[g1.mul(a, b)] == g2.mul(self.map[a], self.map[b])))
    }
}

/// Cheap isomorphism invariants, compared before any search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupInvariants {
    pub order: usize,
    pub exponent: usize,
    pub order_statistics: BTreeMap<usize, usize>,
    pub class_sizes: BTreeMap<usize, usize>,
    pub center_order: usize,
    pub abelianization: Vec<u64>,
}

impl GroupInvariants {
    pub fn of(g: &FiniteGroup) -> Result<Self> {
        let mut class_sizes = BTreeMap::new();
        for c in g.conjugacy_classes() {
            *class_sizes.entry(c.len()).or_insert(0) += 1;
        }
        let derived = Subgroup::generated(g, &g.commutator_subgroup());
        let ab = g.quotient(&derived)?;
        Ok(GroupInvariants {
            order: g.order(),
            exponent: g.exponent(),
            order_statistics: g.order_statistics(),
            class_sizes,
            center_order: g.center().len(),
            abelianization: AbelianBasis::new(&ab)?.invariant_factors(),
        })
    }
}

fn signatures(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let mut class_size = vec![0; g.order()];
    for c in g.conjugacy_classes() {
        for &x in &c {
            class_size[x] = c.len();
        }
    }
    (0..g.order()).map(|x| (g.element_order(x), class_size[x])).collect()
}

struct Search<'a> {
    g1: &'a FiniteGroup,
    g2: &'a FiniteGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    images: Vec<usize>,
}

impl Search<'_> {
    /// Extends the map over the subgroup generated by the assigned generators, or fails on a
    /// Cayley-edge conflict or a collision.
    fn close(&self) -> Option<(Vec<usize>, usize)> {
        let n = self.g1.order();
        let k = self.images.len();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for i in 0..k {
                let y = self.g1.mul(x, self.gens[i]);
                let img = self.g2.mul(map[x], self.images[i]);
                if map[y] == usize::MAX {
                    if used[img] {
                        return None;
                    }
                    map[y] = img;
                    used[img] = true;
                    queue.push(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        Some((map, queue.len()))
    }

    fn run(&mut self, f: &mut dyn FnMut(&GroupIso) -> ControlFlow<()>) -> ControlFlow<()> {
        let level = self.images.len();
        if level == self.gens.len() {
            let (map, size) = match self.close() {
                Some(c) => c,
                None => return ControlFlow::Continue(()),
            };
            if size != self.g1.order() {
                return ControlFlow::Continue(());
            }
            return f(&GroupIso { map });
        }
        for ci in 0..self.candidates[level].len() {
            let c = self.candidates[level][ci];
            self.images.push(c);
            let ok = self.close().is_some();
            if ok {
                self.run(f)?;
            }
            self.images.pop();
        }
        ControlFlow::Continue(())
    }
}

/// Calls `f` on every isomorphism `g1 → g2` in a deterministic order until it breaks.
/// Returns `true` when the enumeration ran to completion.
pub fn for_each_isomorphism(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    mut f: impl FnMut(&GroupIso) -> ControlFlow<()>,
) -> Result<bool> {
    if g1.order() != g2.order() || GroupInvariants::of(g1)? != GroupInvariants::of(g2)? {
        return Ok(true);
    }
    if g1.order() == 1 {
        return Ok(f(&GroupIso::identity(1)).is_continue());
    }
    let gens = g1.generating_set();
    let s1 = signatures(g1);
    let s2 = signatures(g2);
    let candidates = gens
        .iter()
        .map(|&x| (0..g2.order()).filter(|&y| s2[y] == s1[x]).collect())
        .collect();
    let mut search = Search {
        g1,
        g2,
        gens,
        candidates,
        images: Vec::new(),
    };
    Ok(search.run(&mut f).is_continue())
}

/// All isomorphisms, or the first `limit` of them.
pub fn isomorphisms(g1: &FiniteGroup, g2: &FiniteGroup, limit: Option<usize>) -> Result<Vec<GroupIso>> {
    let mut out = Vec::new();
    for_each_isomorphism(g1, g2, |a| {
        out.push(a.clone());
        if limit.is_some_and(|l| out.len() >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

pub fn find_isomorphism(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Option<GroupIso>> {
    Ok(isomorphisms(g1, g2, Some(1))?.pop())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_versus_klein() {
        let z4 = FiniteGroup::cyclic(4);
        let v4 = FiniteGroup::direct_product(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)]);
        assert!(isomorphisms(&z4, &v4, None).unwrap().is_empty());
        assert_eq!(isomorphisms(&z4, &z4, None).unwrap().len(), 2);
        assert_eq!(isomorphisms(&v4, &v4, None).unwrap().len(), 6);
    }

    #[test]
    fn automorphism_counts() {
        // |Aut(S3)| = 6, |Aut(D8)| = 8, |Aut(Q8)| = 24
        assert_eq!(isomorphisms(&FiniteGroup::dihedral(3), &FiniteGroup::dihedral(3), None).unwrap().len(), 6);
        assert_eq!(isomorphisms(&FiniteGroup::dihedral(4), &FiniteGroup::dihedral(4), None).unwrap().len(), 8);
        assert_eq!(isomorphisms(&FiniteGroup::dicyclic(2), &FiniteGroup::dicyclic(2), None).unwrap().len(), 24);
        assert!(find_isomorphism(&FiniteGroup::dihedral(4), &FiniteGroup::dicyclic(2)).unwrap().is_none());
    }

    #[test]
    fn isomorphisms_compose() {
        let a = FiniteGroup::cyclic(6);
        let b = FiniteGroup::direct_product(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)]);
        let f = find_isomorphism(&a, &b).unwrap().unwrap();
        let g = find_isomorphism(&b, &a).unwrap().unwrap();
        assert!(f.is_isomorphism(&a, &b));
        assert!(f.then(&g).is_isomorphism(&a, &a));
        assert!(f.inverse().is_isomorphism(&b, &a));
    }
}
