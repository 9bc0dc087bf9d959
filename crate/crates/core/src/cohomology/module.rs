use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{CosetSpace, FiniteGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleKind {
    Trivial,
    Coinduced { subgroup: Vec<usize> },
    Dual { subgroup: Vec<usize> },
    Cochains,
    Custom,
}

/// A module over a finite group whose underlying abelian group is a sum of copies of
/// `ℚ/ℤ` and of cyclic groups `(1/e)ℤ/ℤ`, with the group acting by integer matrices.
#[derive(Clone, Debug)]
pub struct CoefModule {
    kind: ModuleKind,
    side: Side,
    group: FiniteGroup,
    orders: Vec<u64>,
    action: Vec<Vec<Vec<(usize, i64)>>>,
    labels: Vec<String>,
}

/// Residue arithmetic used to validate actions: `ℚ/ℤ` coordinates are probed at `1/P`.
const PROBE: u64 = 1_000_003;

impl CoefModule {
    /// Builds a module and checks the action axioms for `side`. `orders[j] = 0` marks a
    /// `ℚ/ℤ` coordinate; `action[g][k]` lists `(j, a)` with `(g·v)_k = Σ a·v_j`.
    pub fn new(
        kind: ModuleKind,
        side: Side,
        group: FiniteGroup,
        orders: Vec<u64>,
        action: Vec<Vec<Vec<(usize, i64)>>>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let d = orders.len();
        if action.len() != group.order() || action.iter().any(|a| a.len() != d) || labels.len() != d {
            return Err(Error::Dimension("module action has the wrong shape".into()));
        }
        let m = CoefModule {
            kind,
            side,
            group,
            orders,
            action,
            labels,
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_trusted(
        kind: ModuleKind,
        side: Side,
        group: FiniteGroup,
        orders: Vec<u64>,
        action: Vec<Vec<Vec<(usize, i64)>>>,
        labels: Vec<String>,
    ) -> Self {
        let m = CoefModule {
            kind,
            side,
            group,
            orders,
            action,
            labels,
        };
        // the self-check is quadratic in the dimension; large trusted modules skip it
        debug_assert!(
            m.dim() * m.dim() * m.group.order() * m.group.order() > 1 << 24 || m.validate().is_ok(),
            "{:?}",
            m.validate()
        );
        m
    }

    /// `ℚ/ℤ` with trivial action.
    pub fn trivial(group: &FiniteGroup) -> Self {
        let action = vec![vec![vec![(0, 1)]]; group.order()];
        Self::new_trusted(ModuleKind::Trivial, Side::Left, group.clone(), vec![0], action, vec!["1".into()])
    }

    /// `C = Fun(H\G, ℚ/ℤ)` with `(g ▷ f)(x) = f(x ◁ g)`; coordinates are cosets, labelled by
    /// their smallest element.
    pub fn coinduced(group: &FiniteGroup, cs: &CosetSpace) -> Self {
        let k = cs.len();
        let action = (0..group.order())
            .map(|g| (0..k).map(|x| vec![(cs.act(x, g), 1)]).collect())
            .collect();
        let labels = cs.cosets().iter().map(|c| c[0].to_string()).collect();
        Self::new_trusted(
            ModuleKind::Coinduced {
                subgroup: cs.subgroup().elements().to_vec(),
            },
            Side::Left,
            group.clone(),
            vec![0; k],
            action,
            labels,
        )
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    /// Coordinate orders, `0` for `ℚ/ℤ`.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn has_divisible_part(&self) -> bool {
        self.orders.contains(&0)
    }

    /// Least common multiple of the finite coordinate orders.
    pub fn finite_exponent(&self) -> u64 {
        self.orders.iter().filter(|&&e| e != 0).fold(1, |a, &e| a.lcm(&e))
    }

    pub fn action_row(&self, g: usize, k: usize) -> &[(usize, i64)] {
        &self.action[g][k]
    }

    /// Applies the action of `g` to a vector of residues modulo `m`.
    pub fn apply(&self, g: usize, v: &[u64], m: u64) -> Vec<u64> {
        self.action[g]
            .iter()
            .map(|row| {
                row.iter().fold(0u64, |acc, &(j, a)| {
                    let a = a.rem_euclid(m as i64) as u64;
                    ((acc as u128 + a as u128 * v[j] as u128) % m as u128) as u64
                })
            })
            .collect()
    }

    /// The same module viewed over a subgroup (reindexed locally).
    pub fn restrict(&self, sub: &Subgroup) -> Self {
        let local = sub.as_group(&self.group);
        let action = sub.elements().iter().map(|&g| self.action[g].clone()).collect();
        CoefModule {
            kind: self.kind.clone(),
            side: self.side,
            group: local,
            orders: self.orders.clone(),
            action,
            labels: self.labels.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        let p = self.finite_exponent() * PROBE;
        let probe = |j: usize| -> Vec<u64> {
            let mut v = vec![0; d];
            v[j] = if self.orders[j] == 0 { 1 } else { p / self.orders[j] };
            v
        };
        let reduce = |v: Vec<u64>| -> Vec<u64> {
            v.iter()
                .zip(&self.orders)
                .map(|(&x, &e)| if e == 0 { x } else { x % p })
                .collect()
        };
        for (j, _) in self.orders.iter().enumerate() {
            let v = probe(j);
            if reduce(self.apply(0, &v, p)) != v {
                return Err(Error::InvalidAction("identity does not act trivially".into()));
            }
            for g in 0..self.group.order() {
                let w = self.apply(g, &v, p);
                for (k, &e) in self.orders.iter().enumerate() {
                    if e != 0 && !w[k].is_multiple_of(p / e) {
                        return Err(Error::InvalidAction(format!(
                            "element {g} maps coordinate {j} outside the order-{e} coordinate {k}"
                        )));
                    }
                }
                for h in 0..self.group.order() {
                    let gh = self.group.mul(g, h);
                    let lhs = self.apply(gh, &v, p);
                    let rhs = match self.side {
                        Side::Left => self.apply(g, &self.apply(h, &v, p), p),
                        Side::Right => self.apply(h, &self.apply(g, &v, p), p),
                    };
                    if lhs != rhs {
                        return Err(Error::InvalidAction(format!(
                            "{:?} action law fails at ({g}, {h}) on coordinate {j}",
                            self.side
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
