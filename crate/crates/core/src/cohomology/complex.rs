use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use super::cochain::{tuple_at, tuple_count, tuple_index, Cochain};
use super::module::{CoefModule, Side};
use crate::error::{Error, Result};
use crate::linalg::{AbelianStructure, ModElimination, ModMatrix, Tracking};

/// Limits on the dense linear systems built for class tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_entries: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_entries: 24_000_000,
        }
    }
}

/// `δf` for a left module, `δ̄f` for a right module.
pub fn coboundary(f: &Cochain) -> Cochain {
    let module = f.module();
    let g = module.group();
    let n = f.degree();
    let order = g.order();
    let d = module.dim();
    let m = f.modulus();
    let mut out = Vec::with_capacity(tuple_count(order, n + 1) * d);
    let mut t = vec![0; n];
    let sign = |k: usize| if k.is_multiple_of(2) { 1 } else { m - 1 };
    for i in 0..tuple_count(order, n + 1) {
        let s = tuple_at(order, n + 1, i);
        let mut acc = match module.side() {
            Side::Left => module.apply(s[0], &f.vector(&s[1..]), m),
            Side::Right => f.vector(&s[1..]),
        };
        for k in 0..n {
            t[..k].copy_from_slice(&s[..k]);
            t[k] = g.mul(s[k], s[k + 1]);
            t[k + 1..].copy_from_slice(&s[k + 2..]);
            let v = f.vector(&t);
            let c = sign(k + 1);
            for (a, b) in acc.iter_mut().zip(v) {
                *a = (*a + c * b) % m;
            }
        }
        let last = match module.side() {
            Side::Left => f.vector(&s[..n]),
            Side::Right => module.apply(s[n], &f.vector(&s[..n]), m),
        };
        let c = sign(n + 1);
        for (a, b) in acc.iter_mut().zip(last) {
            *a = (*a + c * b) % m;
        }
        out.extend(acc);
    }
    Cochain::from_residues(module, n + 1, m, out).expect("coboundary preserves the module")
}

/// The first tuple where `δf` does not vanish, if any.
pub fn cocycle_violation(f: &Cochain) -> Option<Vec<usize>> {
    let df = coboundary(f);
    let first = df.nonzero().next().map(|(t, _, _)| t);
    first
}

pub fn is_cocycle(f: &Cochain) -> bool {
    coboundary(f).is_zero()
}

/// Matrix of `δⁿ` on normalized cochains, columns for finite coordinates scaled by
/// `modulus/e` so that unknowns range over all of ℤ/modulus.
pub fn coboundary_matrix(module: &CoefModule, n: usize, modulus: u64, budget: &Budget) -> Result<ModMatrix> {
    let g = module.group();
    let order = g.order();
    let d = module.dim();
    let rows = tuple_count(order, n + 1) * d;
    let cols = tuple_count(order, n) * d;
    if rows.saturating_mul(cols) > budget.max_entries {
        return Err(Error::SizeBound {
            what: "coboundary matrix entries",
            size: rows.saturating_mul(cols),
            bound: budget.max_entries,
        });
    }
    if modulus > u32::MAX as u64 {
        return Err(Error::SizeBound {
            what: "working modulus",
            size: modulus as usize,
            bound: u32::MAX as usize,
        });
    }
    let mut a = ModMatrix::zeros(rows, cols, modulus);
    let mut t = vec![0; n];
    let last_sign: i64 = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
    for i in 0..tuple_count(order, n + 1) {
        let s = tuple_at(order, n + 1, i);
        for k in 0..d {
            let row = i * d + k;
            let first = tuple_index(order, &s[1..]);
            match module.side() {
                Side::Left => {
                    for &(j, c) in module.action_row(s[0], k) {
                        a.add(row, first * d + j, c);
                    }
                }
                Side::Right => a.add(row, first * d + k, 1),
            }
            for p in 0..n {
                t[..p].copy_from_slice(&s[..p]);
                t[p] = g.mul(s[p], s[p + 1]);
                t[p + 1..].copy_from_slice(&s[p + 2..]);
                if t[p] != 0 {
                    let c = if (p + 1) % 2 == 0 { 1 } else { -1 };
                    a.add(row, tuple_index(order, &t) * d + k, c);
                }
            }
            let lastc = tuple_index(order, &s[..n]);
            match module.side() {
                Side::Left => a.add(row, lastc * d + k, last_sign),
                Side::Right => {
                    for &(j, c) in module.action_row(s[n], k) {
                        a.add(row, lastc * d + j, last_sign * c);
                    }
                }
            }
        }
    }
    let scales: Vec<u64> = module
        .orders()
        .iter()
        .map(|&e| if e == 0 { 1 } else { modulus / e })
        .collect();
    if scales.iter().any(|&s| s != 1) {
        let mut scaled = ModMatrix::zeros(rows, cols, modulus);
        for r in 0..rows {
            for c in 0..cols {
                let v = a.get(r, c);
                if v != 0 {
                    scaled.set(r, c, v * scales[c % d] % modulus);
                }
            }
        }
        a = scaled;
    }
    Ok(a)
}

/// Working modulus for deciding whether `f` is a coboundary: the denominators of `f` and of
/// the finite coordinates, times the group order when a `ℚ/ℤ` coordinate is present.
fn witness_modulus(f: &Cochain) -> u64 {
    let module = f.module();
    let base = f.denominator().lcm(&module.finite_exponent());
    if module.has_divisible_part() {
        base * module.group().order() as u64
    } else {
        base
    }
}

/// A cochain `g` with `δg = f`, or `None` when `f` is a cocycle that is not a coboundary.
pub fn is_coboundary(f: &Cochain) -> Result<Option<Cochain>> {
    is_coboundary_with(f, &Budget::default())
}

pub fn is_coboundary_with(f: &Cochain, budget: &Budget) -> Result<Option<Cochain>> {
    Ok(coboundary_witnesses(std::slice::from_ref(f), budget)?.pop().flatten())
}

/// Solves `δg = f` for several cocycles of the same module and degree with one elimination.
pub fn coboundary_witnesses(fs: &[Cochain], budget: &Budget) -> Result<Vec<Option<Cochain>>> {
    let Some(first) = fs.first() else {
        return Ok(Vec::new());
    };
    let module = first.module();
    let n = first.degree();
    if n == 0 {
        return Err(Error::Dimension("degree-0 cochains are never coboundaries".into()));
    }
    for f in fs {
        if f.degree() != n || f.module().dim() != module.dim() || f.group_order() != first.group_order() {
            return Err(Error::Dimension("cochains of different shape".into()));
        }
        if !f.is_zero() {
            if let Some(t) = cocycle_violation(f) {
                return Err(Error::NotCocycle(t));
            }
        }
    }
    let mut out: Vec<Option<Option<Cochain>>> = fs
        .iter()
        .map(|f| f.is_zero().then(|| Some(Cochain::zero(f.module(), n - 1, 1))))
        .collect();
    let pending: Vec<usize> = (0..fs.len()).filter(|&i| out[i].is_none()).collect();
    if !pending.is_empty() {
        let m = pending.iter().fold(1u64, |acc, &i| acc.lcm(&witness_modulus(&fs[i])));
        let a = coboundary_matrix(module, n - 1, m, budget)?;
        let rhs: Vec<Vec<u64>> = pending
            .iter()
            .map(|&i| fs[i].reduced().with_modulus(m).residues().to_vec())
            .collect();
        let e = ModElimination::new(
            &a,
            Tracking {
                right: true,
                left_inverse: false,
            },
            &rhs,
        )?;
        let d = module.dim();
        let orders = module.orders();
        for (k, &i) in pending.iter().enumerate() {
            let Some(sol) = e.solve(k, false) else {
                out[i] = Some(None);
                continue;
            };
            let values = sol
                .x
                .iter()
                .enumerate()
                .map(|(j, &x)| {
                    let o = orders[j % d];
                    if o == 0 {
                        x
                    } else {
                        x * (m / o) % m
                    }
                })
                .collect();
            let w = Cochain::from_residues(fs[i].module(), n - 1, m, values)?;
            if coboundary(&w) != fs[i] {
                return Err(Error::Internal("coboundary witness does not reproduce the cochain".into()));
            }
            out[i] = Some(Some(w.reduced()));
        }
    }
    Ok(out.into_iter().map(|o| o.expect("every cochain handled")).collect())
}

/// Whether `f - g` is a coboundary.
pub fn class_equal(f: &Cochain, g: &Cochain) -> Result<bool> {
    Ok(is_coboundary(&f.sub(g)?)?.is_some())
}

/// `Hⁿ(G, M)` with representative cocycles, one per invariant factor.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub structure: AbelianStructure,
    pub representatives: Vec<Cochain>,
    degree: usize,
    module: Arc<CoefModule>,
}

impl CohomologyGroup {
    pub(crate) fn from_parts(
        structure: AbelianStructure,
        representatives: Vec<Cochain>,
        degree: usize,
        module: Arc<CoefModule>,
    ) -> Self {
        CohomologyGroup {
            structure,
            representatives,
            degree,
            module,
        }
    }

    pub fn order(&self) -> u64 {
        self.structure.order()
    }

    pub fn factors(&self) -> &[u64] {
        &self.structure.factors
    }

    /// The cocycle `Σ cᵢ·repᵢ`.
    pub fn combination(&self, coeffs: &[u64]) -> Result<Cochain> {
        let module = self.module();
        let mut acc = Cochain::zero(&module, self.degree(), 1);
        for (c, r) in coeffs.iter().zip(&self.representatives) {
            acc = acc.add(&r.scale(*c as i64))?;
        }
        Ok(acc)
    }

    /// Every class, as combinations in mixed radix over the invariant factors.
    pub fn all_classes(&self) -> Result<Vec<Cochain>> {
        let total = self.order() as usize;
        (0..total)
            .map(|mut code| {
                let coeffs: Vec<u64> = self
                    .structure
                    .factors
                    .iter()
                    .map(|&f| {
                        let c = (code as u64) % f;
                        code /= f as usize;
                        c
                    })
                    .collect();
                self.combination(&coeffs)
            })
            .collect()
    }

    pub fn module(&self) -> Arc<CoefModule> {
        self.module.clone()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// `Hⁿ(G, M)` for `1 ≤ n ≤ 3` and a module whose coordinates are all `ℚ/ℤ`, computed as the
/// torsion of the cokernel of the integral `δⁿ` via elimination modulo `|G|²`.
pub fn cohomology_group(module: &Arc<CoefModule>, n: usize) -> Result<CohomologyGroup> {
    cohomology_group_with(module, n, &Budget::default())
}

pub fn cohomology_group_with(module: &Arc<CoefModule>, n: usize, budget: &Budget) -> Result<CohomologyGroup> {
    if !(1..=3).contains(&n) {
        return Err(Error::InvalidParams(format!("degree {n} outside 1..=3")));
    }
    if module.orders().iter().any(|&e| e != 0) {
        return Err(Error::InvalidParams("cohomology groups need ℚ/ℤ coordinates".into()));
    }
    let order = module.group().order() as u64;
    let big = (order * order).max(1);
    let a = coboundary_matrix(module, n, big, budget)?;
    let e = ModElimination::new(
        &a,
        Tracking {
            right: true,
            left_inverse: false,
        },
        &[],
    )?;
    let mut cyc = Vec::new();
    for (t, &dt) in e.diag().iter().enumerate() {
        if dt == 1 {
            continue;
        }
        if !order.is_multiple_of(dt) {
            return Err(Error::Internal(format!("invariant factor {dt} does not divide |G| = {order}")));
        }
        let col = e.right_column(t).expect("right transform");
        let v: Vec<u64> = col.iter().map(|&r| (r % dt) * (order / dt)).collect();
        cyc.push((dt, v));
    }
    let structure = AbelianStructure::from_cyclic(cyc, order);
    let representatives = structure
        .generators
        .iter()
        .map(|v| Cochain::from_residues(module, n, order, v.clone()).map(|c| c.reduced()))
        .collect::<Result<Vec<_>>>()?;
    Ok(CohomologyGroup {
        structure,
        representatives,
        degree: n,
        module: module.clone(),
    })
}
