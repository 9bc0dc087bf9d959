use std::collections::VecDeque;
use std::sync::Arc;

use super::crossed::DualPresentation;
use super::pointedness::is_dual_pointed_with;
use crate::cohomology::{coboundary_matrix, coboundary_witnesses, Budget, Cochain, CoefModule};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{ModElimination, Tracking};
use crate::pointed::ModuleCategory;

/// Largest group order the direct constructions accept by default.
pub const ORACLE_BOUND: usize = 32;

/// Isomorphism classes of invertible module functors `(γ, x)` under
/// `(γ₁, x₁) ⋆ (γ₂, x₂) = (ˣ²γ₁ + γ₂, x₁x₂)`, with one stored representative per class.
#[derive(Clone, Debug)]
pub struct LambdaGroup {
    pub group: FiniteGroup,
    pub reps: Vec<(Cochain, usize)>,
    module: ModuleCategory,
    budget: Budget,
}

impl LambdaGroup {
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Index of the class of `(γ, x)`: `γ` is compared with each representative over `x` by
    /// solving `γ - γ' = δα` for `α ∈ C`.
    pub fn find(&self, gamma: &Cochain, x: usize) -> Result<Option<usize>> {
        find_class(&self.reps, gamma, x, &self.budget)
    }

    pub fn star(&self, a: &(Cochain, usize), b: &(Cochain, usize)) -> Result<(Cochain, usize)> {
        star(&self.module, a, b)
    }
}

fn star(m: &ModuleCategory, a: &(Cochain, usize), b: &(Cochain, usize)) -> Result<(Cochain, usize)> {
    let c = m.coinduced();
    let gamma = c.translate(&a.0, b.1)?.add(&b.0)?;
    Ok((gamma, c.cosets().coset_mul(c.group(), a.1, b.1)))
}

fn find_class(reps: &[(Cochain, usize)], gamma: &Cochain, x: usize, budget: &Budget) -> Result<Option<usize>> {
    let candidates: Vec<usize> = (0..reps.len()).filter(|&i| reps[i].1 == x).collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    let diffs = candidates
        .iter()
        .map(|&i| gamma.sub(&reps[i].0))
        .collect::<Result<Vec<_>>>()?;
    let sols = coboundary_witnesses(&diffs, budget)?;
    Ok(candidates.into_iter().zip(sols).find(|(_, s)| s.is_some()).map(|(i, _)| i))
}

/// Builds `Λ` by closing the classes of `Fun_x` under `⋆`, starting from one solution of
/// `δγ = ˣμ - μ` per coset and generators of `Z¹(G, C)`.
pub fn lambda_group(m: &ModuleCategory, bound: usize) -> Result<LambdaGroup> {
    let budget = Budget::default();
    let g = m.parent().group();
    let n = g.order();
    if n > bound {
        return Err(Error::SizeBound {
            what: "group order for the direct dual construction",
            size: n,
            bound,
        });
    }
    if !is_dual_pointed_with(m, &budget)?.pointed {
        return Err(Error::NotPointed("pointedness conditions fail".into()));
    }
    let c = m.coinduced();
    let k = c.cosets().len();
    let module: &Arc<CoefModule> = c.module();
    let mut seeds: Vec<(Cochain, usize)> = Vec::new();
    let rhs = (1..k)
        .map(|x| c.translate(m.mu(), x)?.sub(m.mu()))
        .collect::<Result<Vec<_>>>()?;
    for (i, s) in coboundary_witnesses(&rhs, &budget)?.into_iter().enumerate() {
        let s = s.ok_or_else(|| Error::NotPointed(format!("Fun_{} is empty", i + 1)))?;
        seeds.push((s.with_module(module)?, i + 1));
    }
    let modulus = n as u64;
    let a = coboundary_matrix(module, 1, modulus, &budget)?;
    let e = ModElimination::new(
        &a,
        Tracking {
            right: true,
            left_inverse: false,
        },
        &[vec![0; a.rows()]],
    )?;
    let kernel = e.solve(0, true).expect("the zero system is solvable").kernel;
    for v in kernel {
        seeds.push((Cochain::from_residues(module, 1, modulus, v)?, 0));
    }
    let mut reps = vec![(Cochain::zero(module, 1, 1), 0usize)];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for s in &seeds {
            let p = star(m, &reps[i], s)?;
            if find_class(&reps, &p.0, p.1, &budget)?.is_none() {
                if reps.len() >= n {
                    return Err(Error::Internal("more invertible functor classes than |G|".into()));
                }
                reps.push(p);
                queue.push_back(reps.len() - 1);
            }
        }
    }
    let order = reps.len();
    let mut rows = vec![vec![0; order]; order];
    for i in 0..order {
        for j in 0..order {
            let p = star(m, &reps[i], &reps[j])?;
            rows[i][j] = find_class(&reps, &p.0, p.1, &budget)?
                .ok_or_else(|| Error::Internal("Λ is not closed under the product".into()))?;
        }
    }
    Ok(LambdaGroup {
        group: FiniteGroup::from_table(&rows)?,
        reps,
        module: m.clone(),
        budget,
    })
}

/// `ζ_x(ρ) = η_x + φ₁(ρ)` for every element `(ρ, x)` of the crossed product.
fn zetas(d: &DualPresentation) -> Result<Vec<Cochain>> {
    let c = d.module.coinduced();
    let cp = &d.crossed;
    (0..cp.order())
        .map(|e| {
            let (rho, x) = cp.parts(e);
            let phi = c.phi1(|h| cp.hat().eval(rho, h))?;
            d.etas[x].add(&phi)
        })
        .collect()
}

/// Checks exhaustively that `T(ρ, x) = (ζ_x(ρ), x)` is a bijective homomorphism
/// `Ĥ ⋊_ν K → Λ`.
pub fn check_t_isomorphism(lambda: &LambdaGroup, d: &DualPresentation) -> Result<bool> {
    let cp = d.crossed.group();
    let n = cp.order();
    if lambda.order() != n {
        return Ok(false);
    }
    let z = zetas(d)?;
    let mut t = Vec::with_capacity(n);
    for (e, zeta) in z.iter().enumerate() {
        match lambda.find(zeta, d.crossed.parts(e).1)? {
            Some(i) => t.push(i),
            None => return Ok(false),
        }
    }
    let mut seen = vec![false; n];
    for &i in &t {
        if seen[i] {
            return Ok(false);
        }
        seen[i] = true;
    }
    let l = &lambda.group;
    Ok((0..n).all(|a| (0..n).all(|b| t[cp.mul(a, b)] == l.mul(t[a], t[b]))))
}

/// The associator of the skeleton on `{(ζ_x(ρ), x)}`: the isomorphisms
/// `f(a, b): a ⊙ b → a ⊗ b` are solved from their defining equation, gauged to `f(a, b)(1) = 0`,
/// and composed as `f(a,b)(x₃) - f(a, b⊙c)(1) + f(a⊙b, c)(1) - f(b, c)(1)`.
pub fn skeleton_associator(d: &DualPresentation, bound: usize) -> Result<Cochain> {
    let budget = Budget::default();
    let cp = &d.crossed;
    let g = cp.group();
    let n = g.order();
    if n > bound {
        return Err(Error::SizeBound {
            what: "group order for the skeleton construction",
            size: n,
            bound,
        });
    }
    let c = d.module.coinduced();
    let z = zetas(d)?;
    let mut rhs = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let (_, xb) = cp.parts(b);
            let tensor = c.translate(&z[a], xb)?.add(&z[b])?;
            rhs.push(tensor.sub(&z[g.mul(a, b)])?);
        }
    }
    let k = c.cosets().len();
    let mut f = Vec::with_capacity(n * n);
    for (i, s) in coboundary_witnesses(&rhs, &budget)?.into_iter().enumerate() {
        let s = s.ok_or_else(|| Error::Internal(format!("no isomorphism a ⊙ b → a ⊗ b for pair {i}")))?;
        let base = s.value(&[], 0);
        f.push((0..k).map(|y| s.value(&[], y) - base).collect::<Vec<_>>());
    }
    let module = Arc::new(CoefModule::trivial(g));
    Cochain::from_fn(&module, 3, |t, _| {
        let (a, b, cc) = (t[0], t[1], t[2]);
        let x3 = cp.parts(cc).1;
        let bc = g.mul(b, cc);
        let ab = g.mul(a, b);
        f[a * n + b][x3] - f[a * n + bc][0] + f[ab * n + cc][0] - f[b * n + cc][0]
    })
}
