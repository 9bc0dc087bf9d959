use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// How the section `u: H\G → G` picks a representative in each coset.
/// The coset of the identity always gets the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SectionRule {
    #[default]
    Smallest,
    SecondSmallest,
}

/// Right cosets `K = H\G` with projection `p`, section `u`, the right action `x ◁ g`
/// and the factor set `κ` defined by `u(x)·g = κ(x, g)·u(x ◁ g)`.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    n: usize,
    subgroup: Subgroup,
    cosets: Vec<Vec<usize>>,
    proj: Vec<usize>,
    section: Vec<usize>,
    act: Vec<usize>,
    kappa: Vec<usize>,
    normal: bool,
}

impl CosetSpace {
    pub fn new(g: &FiniteGroup, h: &Subgroup) -> Self {
        Self::with_rule(g, h, SectionRule::Smallest)
    }

    pub fn with_rule(g: &FiniteGroup, h: &Subgroup, rule: SectionRule) -> Self {
        let n = g.order();
        let mut proj = vec![usize::MAX; n];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if proj[x] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = h.elements().iter().map(|&hh| g.mul(hh, x)).collect();
            c.sort_unstable();
            for &y in &c {
                proj[y] = cosets.len();
            }
            cosets.push(c);
        }
        let section: Vec<usize> = cosets
            .iter()
            .enumerate()
            .map(|(i, c)| match rule {
                SectionRule::Smallest => c[0],
                SectionRule::SecondSmallest if i > 0 && c.len() > 1 => c[1],
                SectionRule::SecondSmallest => c[0],
            })
            .collect();
        let k = cosets.len();
        let mut act = vec![0; k * n];
        let mut kappa = vec![0; k * n];
        for x in 0..k {
            for e in 0..n {
                let ug = g.mul(section[x], e);
                let y = proj[ug];
                act[x * n + e] = y;
                kappa[x * n + e] = g.mul(ug, g.inv(section[y]));
            }
        }
        let normal = h.is_normal(g);
        let cs = CosetSpace {
            n,
            subgroup: h.clone(),
            cosets,
            proj,
            section,
            act,
            kappa,
            normal,
        };
        debug_assert!(cs.verify(g).is_ok());
        cs
    }

    /// Re-checks `p∘u = id`, `u(1) = 1`, the defining relation of `κ`, its cocycle relation
    /// `κ(x, g₁g₂) = κ(x, g₁)·κ(x◁g₁, g₂)` and the right-action axiom.
    pub fn verify(&self, g: &FiniteGroup) -> Result<()> {
        let fail = |m: String| Err(Error::Internal(m));
        if self.section[0] != 0 {
            return fail("u(1) is not the identity".into());
        }
        for x in 0..self.len() {
            if self.proj[self.section[x]] != x {
                return fail(format!("p(u({x})) != {x}"));
            }
            for e in 0..self.n {
                let k = self.kappa(x, e);
                if !self.subgroup.contains(k)
                    || g.mul(self.section[x], e) != g.mul(k, self.section[self.act(x, e)])
                {
                    return fail(format!("kappa relation fails at ({x}, {e})"));
                }
            }
            for a in 0..self.n {
                for b in 0..self.n {
                    let lhs = self.kappa(x, g.mul(a, b));
                    let rhs = g.mul(self.kappa(x, a), self.kappa(self.act(x, a), b));
                    if lhs != rhs {
                        return fail(format!("kappa cocycle relation fails at ({x}, {a}, {b})"));
                    }
                    if self.act(self.act(x, a), b) != self.act(x, g.mul(a, b)) {
                        return fail(format!("right action axiom fails at ({x}, {a}, {b})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.n
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    /// `p(g)`
    #[inline]
    pub fn project(&self, e: usize) -> usize {
        self.proj[e]
    }

    /// `u(x)`
    #[inline]
    pub fn section(&self, x: usize) -> usize {
        self.section[x]
    }

    /// `x ◁ g`
    #[inline]
    pub fn act(&self, x: usize, e: usize) -> usize {
        self.act[x * self.n + e]
    }

    /// `κ(x, g)`, an element of `H` given by its index in `G`.
    #[inline]
    pub fn kappa(&self, x: usize, e: usize) -> usize {
        self.kappa[x * self.n + e]
    }

    /// Cosets fixed by every element of `H`; a group isomorphic to `H\N_G(H)`.
    pub fn stable_cosets(&self, g: &FiniteGroup) -> Vec<usize> {
        let fixed: Vec<usize> = (0..self.len())
            .filter(|&x| self.subgroup.elements().iter().all(|&h| self.act(x, h) == x))
            .collect();
        debug_assert_eq!(
            fixed.len() * self.subgroup.order(),
            self.subgroup.normalizer(g).len()
        );
        fixed
    }

    /// Product of cosets `x·y = p(u(x)u(y))` on `K^H`. For a normal subgroup this is the
    /// quotient group law.
    pub fn coset_mul(&self, g: &FiniteGroup, x: usize, y: usize) -> usize {
        self.proj[g.mul(self.section[x], self.section[y])]
    }

    /// The quotient group `G/H`, indices are coset indices. Requires normality.
    pub fn quotient_group(&self) -> FiniteGroup {
        assert!(self.normal, "quotient by a non-normal subgroup");
        // x·y = x ◁ u(y) for normal H
        FiniteGroup::from_fn_trusted(self.len(), |x, y| self.act(x, self.section[y]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_mod_two() {
        let g = FiniteGroup::cyclic(4);
        let h = Subgroup::new(&g, &[0, 2]).unwrap();
        let cs = CosetSpace::new(&g, &h);
        cs.verify(&g).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!((cs.section(0), cs.section(1)), (0, 1));
        assert_eq!(cs.kappa(1, 1), 2);
    }

    #[test]
    fn extreme_subgroups() {
        let g = FiniteGroup::dihedral(4);
        let whole = CosetSpace::new(&g, &Subgroup::whole(&g));
        assert_eq!(whole.len(), 1);
        for e in 0..8 {
            assert_eq!(whole.kappa(0, e), e);
        }
        let triv = CosetSpace::new(&g, &Subgroup::trivial(&g));
        assert_eq!(triv.len(), 8);
        for x in 0..8 {
            for e in 0..8 {
                assert_eq!(triv.kappa(x, e), 0);
            }
        }
    }

    #[test]
    fn stable_cosets_cases() {
        let s3 = FiniteGroup::dihedral(3);
        let h = Subgroup::new(&s3, &[0, 3]).unwrap();
        let cs = CosetSpace::new(&s3, &h);
        // brute force: cosets x with x ◁ h = x for all h in H
        let brute = (0..cs.len()).filter(|&x| h.elements().iter().all(|&e| cs.act(x, e) == x)).count();
        assert_eq!(brute, 1);
        assert_eq!(cs.stable_cosets(&s3).len(), 1);
        let d8 = FiniteGroup::dihedral(4);
        let r = Subgroup::new(&d8, &[0, 1, 2, 3]).unwrap();
        assert_eq!(CosetSpace::new(&d8, &r).stable_cosets(&d8).len(), 2);
        assert_eq!(CosetSpace::new(&d8, &Subgroup::whole(&d8)).stable_cosets(&d8), vec![0]);
    }

    #[test]
    fn second_smallest_rule_is_valid() {
        let g = FiniteGroup::dihedral(4);
        let h = Subgroup::new(&g, &[0, 2]).unwrap();
        let cs = CosetSpace::with_rule(&g, &h, SectionRule::SecondSmallest);
        cs.verify(&g).unwrap();
        assert_eq!(cs.section(0), 0);
        assert_ne!(cs.section(1), CosetSpace::new(&g, &h).section(1));
    }
}
