//! Finite groups as explicit multiplication tables.
//!
//! Elements are dense indices `0..n` and the identity is always `0`.

mod characters;
mod coset;
mod iso;
mod spec;
mod subgroup;

pub use characters::{dual_group, AbelianBasis, Character, DualGroup};
pub use coset::{CosetSpace, SectionRule};
pub use iso::{find_isomorphism, for_each_isomorphism, isomorphisms, GroupInvariants, GroupIso};
pub use spec::GroupSpec;
pub use subgroup::{all_subgroups, normal_subgroup_census, sylow_subgroup, Census, Subgroup, DEFAULT_SUBGROUP_BOUND};

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Builds and validates a group from a full multiplication table, `table[i][j] = i·j`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(n, flat)
    }

    pub(crate) fn from_flat(n: usize, flat: Vec<usize>) -> Result<Self> {
        if flat.iter().any(|&v| v >= n) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        for i in 0..n {
            if flat[i] != i || flat[i * n] != i {
                return Err(Error::InvalidGroup(format!(
                    "element 0 is not the identity (row/column {i})"
                )));
            }
        }
        // latin square
        let mut seen = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..n {
                let v = flat[i * n + j];
                if seen[v] == i {
                    return Err(Error::InvalidGroup(format!("row {i} repeats element {v}")));
                }
                seen[v] = i;
            }
        }
        let mut inv = vec![usize::MAX; n];
        for i in 0..n {
            for j in 0..n {
                if flat[i * n + j] == 0 {
                    inv[i] = j;
                }
            }
        }
        let g = FiniteGroup { n, table: flat, inv };
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        for a in 0..n {
            if g.mul(g.inv[a], a) != 0 {
                return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
        }
        Ok(g)
    }

    /// Builds a group from a product closure on `n` labelled elements without validation.
    /// Callers guarantee the group axioms.
    pub(crate) fn from_fn_trusted(n: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = mul(a, b);
            }
        }
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("inverse");
        }
        FiniteGroup { n, table, inv }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_fn_trusted(n, |a, b| (a + b) % n)
    }

    /// Direct product; element `(i_1, …, i_k)` has index `i_1 + n_1·(i_2 + n_2·(…))`.
    pub fn direct_product(factors: &[FiniteGroup]) -> Self {
        let orders: Vec<usize> = factors.iter().map(|f| f.order()).collect();
        let n: usize = orders.iter().product();
        let split = |mut x: usize| -> Vec<usize> {
            orders
                .iter()
                .map(|&o| {
                    let d = x % o;
                    x /= o;
                    d
                })
                .collect()
        };
        Self::from_fn_trusted(n, |a, b| {
            let (ca, cb) = (split(a), split(b));
            let mut idx = 0;
            for k in (0..factors.len()).rev() {
                idx = idx * orders[k] + factors[k].mul(ca[k], cb[k]);
            }
            idx
        })
    }

    /// Semidirect product `N ⋊ A` for a right action `action[a][x] = x ◁ a` by automorphisms.
    ///
    /// Elements are pairs `(x, a)` with index `x + |N|·a` and product
    /// `(x₁, a₁)(x₂, a₂) = (x₁·(x₂ ◁ a₁⁻¹), a₁a₂)`, so that `a⁻¹·x·a = x ◁ a`.
    pub fn semidirect(normal: &FiniteGroup, acting: &FiniteGroup, action: &[Vec<usize>]) -> Result<Self> {
        validate_action(normal, acting, action)?;
        let nn = normal.order();
        Ok(Self::from_fn_trusted(nn * acting.order(), |p, q| {
            let (x1, a1) = (p % nn, p / nn);
            let (x2, a2) = (q % nn, q / nn);
            let moved = action[acting.inv(a1)][x2];
            normal.mul(x1, moved) + nn * acting.mul(a1, a2)
        }))
    }

    /// Group generated by permutations of `0..degree`; the identity gets index 0 and the
    /// remaining elements are sorted lexicographically by image list.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        for g in gens {
            let mut s = g.clone();
            s.sort_unstable();
            if g.len() != degree || s != (0..degree).collect::<Vec<_>>() {
                return Err(Error::InvalidGroup(format!("not a permutation of degree {degree}: {g:?}")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p: Vec<usize> = (0..degree).map(|k| g[elems[i][k]]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        elems[1..].sort();
        let index: HashMap<Vec<usize>, usize> =
            elems.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        // (a·b)(k) = b(a(k)): apply a first
        Ok(Self::from_fn_trusted(elems.len(), |a, b| {
            let p: Vec<usize> = (0..degree).map(|k| elems[b][elems[a][k]]).collect();
            index[&p]
        }))
    }

    /// Dihedral group of order `2m`, as `ℤ/m ⋊ ℤ/2` with inversion.
    pub fn dihedral(m: usize) -> Self {
        let rot = Self::cyclic(m);
        let flip = Self::cyclic(2);
        let action = vec![(0..m).collect(), (0..m).map(|x| (m - x) % m).collect()];
        Self::semidirect(&rot, &flip, &action).expect("inversion is an automorphism")
    }

    /// Dicyclic group of order `4m`: `⟨a, x | a^{2m}, x² = a^m, x a x⁻¹ = a⁻¹⟩`.
    /// Index `k + 2m·j` stands for `a^k x^j`.
    pub fn dicyclic(m: usize) -> Self {
        let r = 2 * m;
        Self::from_fn_trusted(2 * r, |p, q| {
            let (k, j) = (p % r, p / r);
            let (l, i) = (q % r, q / r);
            if j == 0 {
                (k + l) % r + r * i
            } else {
                let base = (k + r - l) % r;
                if i == 0 {
                    base + r
                } else {
                    (base + m) % r
                }
            }
        })
    }

    /// `ℤ/n ⋊ ℤ/m` where the generator of `ℤ/m` acts by `x ↦ t·x`.
    pub fn metacyclic(n: usize, m: usize, t: usize) -> Result<Self> {
        let action: Vec<Vec<usize>> = (0..m)
            .map(|k| {
                let tk = (0..k).fold(1usize, |acc, _| acc * t % n);
                (0..n).map(|x| x * tk % n).collect()
            })
            .collect();
        Self::semidirect(&Self::cyclic(n), &Self::cyclic(m), &action)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g·h·g⁻¹`
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv[g])
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        use num_integer::Integer;
        (0..self.n).fold(1, |acc, a| acc.lcm(&self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.n];
        member[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.n];
        let mut classes = Vec::new();
        for x in 0..self.n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = (0..self.n).map(|g| self.conj(g, x)).collect();
            c.sort_unstable();
            c.dedup();
            for &y in &c {
                class_of[y] = classes.len();
            }
            classes.push(c);
        }
        classes
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut comms: Vec<usize> = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                let c = self.mul(self.mul(self.inv[a], self.inv[b]), self.mul(a, b));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.closure(&comms)
    }

    /// Multiset of element orders as `order -> count`.
    pub fn order_statistics(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for a in 0..self.n {
            *m.entry(self.element_order(a)).or_insert(0) += 1;
        }
        m
    }

    /// Quotient by a normal subgroup, with cosets indexed by smallest element.
    pub fn quotient(&self, normal: &Subgroup) -> Result<FiniteGroup> {
        if !normal.is_normal(self) {
            return Err(Error::NotNormal);
        }
        let cs = CosetSpace::new(self, normal);
        Ok(cs.quotient_group())
    }

    /// A small generating set chosen greedily by decreasing element order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.n).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for a in by_order {
            if span.len() == self.n {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }
}

fn validate_action(normal: &FiniteGroup, acting: &FiniteGroup, action: &[Vec<usize>]) -> Result<()> {
    let nn = normal.order();
    if action.len() != acting.order() {
        return Err(Error::InvalidAction(format!(
            "expected {} permutations, got {}",
            acting.order(),
            action.len()
        )));
    }
    for (a, perm) in action.iter().enumerate() {
        if perm.len() != nn {
            return Err(Error::InvalidAction(format!("permutation {a} has wrong length")));
        }
        let mut seen = vec![false; nn];
        for &v in perm {
            if v >= nn || seen[v] {
                return Err(Error::InvalidAction(format!("entry {a} is not a bijection")));
            }
            seen[v] = true;
        }
        for x in 0..nn {
            for y in 0..nn {
                if perm[normal.mul(x, y)] != normal.mul(perm[x], perm[y]) {
                    return Err(Error::InvalidAction(format!(
                        "acting element {a} is not a homomorphism at ({x}, {y})"
                    )));
                }
            }
        }
    }
    if action[0].iter().enumerate().any(|(i, &v)| i != v) {
        return Err(Error::InvalidAction("identity does not act trivially".into()));
    }
    for a1 in 0..acting.order() {
        for a2 in 0..acting.order() {
            let a12 = acting.mul(a1, a2);
            for x in 0..nn {
                if action[a12][x] != action[a2][action[a1][x]] {
                    return Err(Error::InvalidAction(format!(
                        "not a right action at ({x}, {a1}, {a2})"
                    )));
                }
            }
        }
    }
    Ok(())
}
