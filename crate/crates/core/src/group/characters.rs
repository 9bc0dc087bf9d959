use serde::Serialize;

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::{cokernel_structure, ModMatrix};
use crate::qmodz::QmodZ;

/// Coordinates for a finite abelian group: `h = Π gens[j]^{coords[h][j]}` with
/// `0 ≤ coords[h][j] < orders[j]` and `orders` in invariant factor form.
#[derive(Clone, Debug)]
pub struct AbelianBasis {
    gens: Vec<usize>,
    orders: Vec<u64>,
    coords: Vec<Vec<u64>>,
    by_code: Vec<usize>,
}

impl AbelianBasis {
    pub fn new(a: &FiniteGroup) -> Result<Self> {
        if !a.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let n = a.order();
        let m = (n as u64 * n as u64).max(2);
        // ℤ^n modulo the Cayley relations e_x + e_s - e_{xs} and e_1
        let gens = a.generating_set();
        let mut rel = ModMatrix::zeros(n, n * gens.len() + 1, m);
        rel.add(0, 0, 1);
        let mut col = 1;
        for x in 0..n {
            for &s in &gens {
                rel.add(x, col, 1);
                rel.add(s, col, 1);
                rel.add(a.mul(x, s), col, -1);
                col += 1;
            }
        }
        let st = cokernel_structure(&rel)?;
        let mut bgens = Vec::new();
        for v in &st.generators {
            let mut e = 0;
            for (x, &k) in v.iter().enumerate() {
                if k != 0 {
                    let k = (k % a.element_order(x) as u64) as usize;
                    e = a.mul(e, a.pow(x, k));
                }
            }
            bgens.push(e);
        }
        let orders = st.factors.clone();
        let mut coords = vec![Vec::new(); n];
        let mut by_code = vec![usize::MAX; n];
        for code in 0..n {
            let mut c = code as u64;
            let mut v = Vec::with_capacity(orders.len());
            let mut e = 0;
            for (j, &o) in orders.iter().enumerate() {
                let k = c % o;
                c /= o;
                v.push(k);
                e = a.mul(e, a.pow(bgens[j], k as usize));
            }
            if !coords[e].is_empty() {
                return Err(Error::Internal("abelian basis is not independent".into()));
            }
            coords[e] = v;
            by_code[code] = e;
        }
        if st.order() as usize != n {
            return Err(Error::Internal(format!(
                "abelian decomposition has order {} for a group of order {n}",
                st.order()
            )));
        }
        Ok(AbelianBasis {
            gens: bgens,
            orders,
            coords,
            by_code,
        })
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        self.orders.clone()
    }

    pub fn coords(&self, h: usize) -> &[u64] {
        &self.coords[h]
    }

    /// Mixed-radix code of an element, first coordinate fastest.
    pub fn code(&self, h: usize) -> usize {
        encode(&self.coords[h], &self.orders)
    }

    pub fn element(&self, coords: &[u64]) -> usize {
        self.by_code[encode(coords, &self.orders)]
    }

    pub fn exponent(&self) -> u64 {
        self.orders.last().copied().unwrap_or(1)
    }
}

fn encode(v: &[u64], orders: &[u64]) -> usize {
    let mut code = 0u64;
    for (k, o) in v.iter().zip(orders).rev() {
        code = code * o + k % o;
    }
    code as usize
}

/// A character `h ↦ Σ coeffs[j]·coords_j(h)/orders[j]` in ℚ/ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Character {
    pub coeffs: Vec<u64>,
}

/// The character group of an abelian subgroup `H ≤ G`, indexed in mixed radix over the
/// basis orders so that index `0` is the trivial character.
#[derive(Clone, Debug)]
pub struct DualGroup {
    subgroup: Subgroup,
    basis: AbelianBasis,
    group: FiniteGroup,
}

pub fn dual_group(g: &FiniteGroup, h: &Subgroup) -> Result<DualGroup> {
    if !h.is_abelian(g) {
        return Err(Error::NotAbelian);
    }
    let local = h.as_group(g);
    let basis = AbelianBasis::new(&local)?;
    let orders = basis.orders.clone();
    let n = local.order();
    let group = FiniteGroup::from_fn_trusted(n, |a, b| {
        let va = decode(a, &orders);
        let vb = decode(b, &orders);
        let sum: Vec<u64> = va.iter().zip(&vb).zip(&orders).map(|((x, y), o)| (x + y) % o).collect();
        encode(&sum, &orders)
    });
    Ok(DualGroup {
        subgroup: h.clone(),
        basis,
        group,
    })
}

fn decode(mut code: usize, orders: &[u64]) -> Vec<u64> {
    orders
        .iter()
        .map(|&o| {
            let k = code as u64 % o;
            code /= o as usize;
            k
        })
        .collect()
}

impl DualGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn basis(&self) -> &AbelianBasis {
        &self.basis
    }

    pub fn character(&self, index: usize) -> Character {
        Character {
            coeffs: decode(index, &self.basis.orders),
        }
    }

    pub fn index_of(&self, chi: &Character) -> usize {
        encode(&chi.coeffs, &self.basis.orders)
    }

    /// `ρ(h)` for `h ∈ H` given as an element of the ambient group.
    pub fn eval(&self, rho: usize, h: usize) -> QmodZ {
        let e = self.basis.exponent();
        QmodZ::from_residue(self.eval_residue(rho, h), e)
    }

    /// `ρ(h)` as a residue modulo the exponent of `H`.
    pub fn eval_residue(&self, rho: usize, h: usize) -> u64 {
        let local = self.subgroup.local_index(h).expect("element of the subgroup");
        let e = self.basis.exponent();
        let c = decode(rho, &self.basis.orders);
        let x = self.basis.coords(local);
        c.iter()
            .zip(x)
            .zip(&self.basis.orders)
            .fold(0, |acc, ((ci, xi), o)| (acc + ci * xi % o * (e / o)) % e)
    }

    /// The character whose values on the basis generators are given (ambient indices of the
    /// generators are passed to `value`).
    pub fn from_generator_values(&self, value: impl Fn(usize) -> QmodZ) -> Result<usize> {
        let sub = &self.subgroup;
        let mut coeffs = Vec::new();
        for (j, &gl) in self.basis.gens.iter().enumerate() {
            let o = self.basis.orders[j];
            let v = value(sub.elements()[gl]);
            let r = v.residue(o).ok_or_else(|| {
                Error::Internal(format!("value {v} on a generator of order {o} is not a character value"))
            })?;
            coeffs.push(r);
        }
        Ok(encode(&coeffs, &self.basis.orders))
    }

    /// `ρ ∘ f` for a map `f : H → H` given on ambient indices.
    pub fn pullback(&self, rho: usize, f: impl Fn(usize) -> usize) -> Result<usize> {
        self.from_generator_values(|h| self.eval(rho, f(h)))
    }
}
