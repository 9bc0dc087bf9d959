//! Deciding categorical Morita equivalence of pointed categories, the family of Morita
//! equivalent groups with different Grothendieck rings, and census-based distinguishers.

use std::cmp::Reverse;
use std::ops::ControlFlow;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{
    cochain_to_json, cohomology_group, coboundary, decide_trivial, invariant_classes, is_coboundary_with, Budget, Cochain, Coinduced,
    Triviality,
};
use crate::duality::{dual_pointed_category_with, is_dual_pointed_with, DualPresentation};
use crate::error::{Error, Result};
use crate::group::{
    all_subgroups, dual_group, find_isomorphism, for_each_isomorphism, normal_subgroup_census, Census, FiniteGroup,
    GroupInvariants, GroupIso, Subgroup, DEFAULT_SUBGROUP_BOUND,
};
use crate::pointed::{module_class_catalog, pullback, ModuleCategory, PointedCategory};

/// Limits for the equivalence search.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: Budget,
    /// Isomorphisms tried per candidate dual before the candidate is declared inconclusive.
    pub max_isomorphisms: usize,
    /// Worker threads; `1` searches sequentially.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Budget::default(),
            max_isomorphisms: 100_000,
            jobs: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    Inconclusive,
}

/// The data of an equivalence: `H`, the module structure `μ`, an isomorphism
/// `a: G' → Ĥ ⋊_ν K` and `g` with `δg = ϖ^a - ω'` when one was computed.
#[derive(Clone, Debug)]
pub struct MoritaWitness {
    pub subgroup: Subgroup,
    pub mu_class: usize,
    pub iso: GroupIso,
    pub certificate: Option<Cochain>,
    pub dual: DualPresentation,
}

impl MoritaWitness {
    pub fn mu(&self) -> &Cochain {
        self.dual.module.mu()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subgroup": self.subgroup.elements(),
            "mu_class": self.mu_class,
            "mu_zero": self.mu().is_zero(),
            "kappa_trivial": self.dual.kappa.is_trivial(),
            "nu_trivial": self.dual.crossed.is_untwisted(),
            "varpi_zero": self.dual.varpi.is_zero(),
            "varpi": cochain_to_json(&self.dual.varpi),
            "iso": self.iso.map,
            "certificate": self.certificate.as_ref().map(cochain_to_json),
        })
    }
}

#[derive(Clone, Debug)]
pub struct MoritaOutcome {
    pub verdict: Verdict,
    pub witness: Option<MoritaWitness>,
    /// Why parts of the search were left undecided.
    pub notes: Vec<String>,
}

enum Candidate {
    Found(Box<MoritaWitness>),
    Nothing,
    Undecided(String),
}

/// Normal abelian subgroups, largest first, ties broken by element list.
fn candidate_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let mut hs: Vec<Subgroup> = all_subgroups(g, DEFAULT_SUBGROUP_BOUND)?
        .into_iter()
        .filter(|h| h.is_normal(g) && h.is_abelian(g))
        .collect();
    hs.sort_by(|a, b| (Reverse(a.order()), a.elements()).cmp(&(Reverse(b.order()), b.elements())));
    Ok(hs)
}

/// Module categories over `H` whose duals are candidates: for `ω = 0` the `G`-invariant
/// classes of `H²(H)`, otherwise every class of `L̄_{H,ω}` (pointedness is checked later).
fn module_candidates(c: &PointedCategory, h: &Subgroup, budget: &Budget) -> Result<Vec<(usize, ModuleCategory)>> {
    if c.is_untwisted() {
        let local = Coinduced::new(c.group(), h);
        let h2 = cohomology_group(local.subgroup_module(), 2)?;
        let all = h2.all_classes()?;
        let inv = invariant_classes(&h2, c.group(), h, budget)?;
        let mut out = Vec::new();
        for (i, mu0) in all.iter().enumerate() {
            if inv.contains(mu0) {
                out.push((i, ModuleCategory::from_local(c, h, mu0)?));
            }
        }
        Ok(out)
    } else {
        match module_class_catalog(c, h) {
            Ok(cat) => Ok(cat.classes.into_iter().enumerate().collect()),
            Err(Error::Obstructed) => Ok(Vec::new()),
            Err(e) => Err(e),
        }
    }
}

/// An explicit `g` with `δg = f` when the shortcut that decided triviality produced none.
fn certify(witness: Option<Cochain>, f: &Cochain, budget: &Budget) -> Option<Cochain> {
    witness.or_else(|| is_coboundary_with(f, budget).ok().flatten())
}

fn settle(t: Triviality) -> Option<bool> {
    match t {
        Triviality::Trivial { .. } => Some(true),
        Triviality::Nontrivial { .. } => Some(false),
        Triviality::Inconclusive { .. } => None,
    }
}

fn examine(c1: &PointedCategory, c2: &PointedCategory, h: &Subgroup, opts: &SearchOptions) -> Result<Candidate> {
    let target = GroupInvariants::of(c2.group())?;
    let omega2_trivial = settle(decide_trivial(c2.omega(), &opts.budget)?);
    let mut undecided = Vec::new();
    let candidates = match module_candidates(c1, h, &opts.budget) {
        Ok(c) => c,
        Err(Error::Inconclusive(r)) => return Ok(Candidate::Undecided(r)),
        Err(e @ Error::SizeBound { .. }) => return Ok(Candidate::Undecided(e.to_string())),
        Err(e) => return Err(e),
    };
    for (idx, m) in candidates {
        if !is_dual_pointed_with(&m, &opts.budget)?.pointed {
            continue;
        }
        let d = dual_pointed_category_with(&m, &opts.budget)?;
        if GroupInvariants::of(d.group())? != target {
            continue;
        }
        let varpi_trivial = settle(decide_trivial(&d.varpi, &opts.budget)?);
        if let (Some(a), Some(b)) = (varpi_trivial, omega2_trivial) {
            if a != b {
                // pulling back along an isomorphism preserves triviality
                continue;
            }
            if a {
                if let Some(iso) = find_isomorphism(c2.group(), d.group())? {
                    let diff = pullback(&d.varpi, &iso, c2.group())?.sub(c2.omega())?;
                    let certificate = match decide_trivial(&diff, &opts.budget)? {
                        Triviality::Trivial { witness } => certify(witness, &diff, &opts.budget),
                        _ => return Err(Error::Internal("difference of trivial classes is nontrivial".into())),
                    };
                    return Ok(Candidate::Found(Box::new(MoritaWitness {
                        subgroup: h.clone(),
                        mu_class: idx,
                        iso,
                        certificate,
                        dual: d,
                    })));
                }
                continue;
            }
        }
        let mut found = None;
        let mut tried = 0usize;
        let mut failure = None;
        let complete = for_each_isomorphism(c2.group(), d.group(), |iso| {
            tried += 1;
            if tried > opts.max_isomorphisms {
                return ControlFlow::Break(());
            }
            let step = pullback(&d.varpi, iso, c2.group())
                .and_then(|p| p.sub(c2.omega()))
                .and_then(|diff| Ok((decide_trivial(&diff, &opts.budget)?, diff)));
            match step {
                Ok((Triviality::Trivial { witness }, diff)) => {
                    found = Some((iso.clone(), certify(witness, &diff, &opts.budget)));
                    ControlFlow::Break(())
                }
                Ok((Triviality::Nontrivial { .. }, _)) => ControlFlow::Continue(()),
                Ok((Triviality::Inconclusive { reason }, _)) => {
                    failure.get_or_insert(reason);
                    ControlFlow::Continue(())
                }
                Err(e) => {
                    failure.get_or_insert(e.to_string());
                    ControlFlow::Break(())
                }
            }
        })?;
        if let Some((iso, certificate)) = found {
            return Ok(Candidate::Found(Box::new(MoritaWitness {
                subgroup: h.clone(),
                mu_class: idx,
                iso,
                certificate,
                dual: d,
            })));
        }
        if !complete && tried > opts.max_isomorphisms {
            undecided.push(format!(
                "H = {:?}, class {idx}: more than {} isomorphisms",
                h.elements(),
                opts.max_isomorphisms
            ));
        }
        if let Some(r) = failure {
            undecided.push(format!("H = {:?}, class {idx}: {r}", h.elements()));
        }
    }
    if undecided.is_empty() {
        Ok(Candidate::Nothing)
    } else {
        Ok(Candidate::Undecided(undecided.join("; ")))
    }
}

/// Searches for `H ⊴ G` abelian, `μ` and `a: G' ≅ Ĥ ⋊_ν K` with `ϖ^a - ω'` trivial. "Not
/// equivalent" is reported only after the whole search space is exhausted.
pub fn morita_equivalent(c1: &PointedCategory, c2: &PointedCategory, opts: &SearchOptions) -> Result<MoritaOutcome> {
    if c1.group().order() != c2.group().order() {
        return Ok(MoritaOutcome {
            verdict: Verdict::NotEquivalent,
            witness: None,
            notes: vec!["the groups have different orders".into()],
        });
    }
    let hs = candidate_subgroups(c1.group())?;
    let notes = Mutex::new(Vec::<(usize, String)>::new());
    let run = |i: usize, h: &Subgroup| -> Option<Result<MoritaWitness>> {
        match examine(c1, c2, h, opts) {
            Ok(Candidate::Found(w)) => Some(Ok(*w)),
            Ok(Candidate::Nothing) => None,
            Ok(Candidate::Undecided(r)) => {
                notes.lock().expect("notes").push((i, r));
                None
            }
            Err(e) => Some(Err(e)),
        }
    };
    let found = if opts.jobs <= 1 {
        hs.iter().enumerate().find_map(|(i, h)| run(i, h))
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?;
        pool.install(|| hs.par_iter().enumerate().find_map_first(|(i, h)| run(i, h)))
    };
    let mut notes = notes.into_inner().expect("notes");
    notes.sort();
    let notes: Vec<String> = notes.into_iter().map(|(_, r)| r).collect();
    match found {
        Some(Ok(w)) => Ok(MoritaOutcome {
            verdict: Verdict::Equivalent,
            witness: Some(w),
            notes: Vec::new(),
        }),
        Some(Err(e)) => Err(e),
        None if notes.is_empty() => Ok(MoritaOutcome {
            verdict: Verdict::NotEquivalent,
            witness: None,
            notes,
        }),
        None => Ok(MoritaOutcome {
            verdict: Verdict::Inconclusive,
            witness: None,
            notes,
        }),
    }
}

/// `G ≈ G'`, i.e. `Vec(G)` and `Vec(G')` are Morita equivalent.
pub fn morita_equivalent_groups(g1: &FiniteGroup, g2: &FiniteGroup, opts: &SearchOptions) -> Result<MoritaOutcome> {
    morita_equivalent(&PointedCategory::untwisted(g1), &PointedCategory::untwisted(g2), opts)
}

/// Replays a witness from scratch: `H` normal abelian, `δμ = ω`, the dual is pointed and
/// rebuilds to the same crossed product, `a` is an isomorphism and `ϖ^a - ω'` is trivial.
pub fn verify_witness(c1: &PointedCategory, c2: &PointedCategory, w: &MoritaWitness) -> Result<()> {
    let g = c1.group();
    let h = Subgroup::new(g, w.subgroup.elements())?;
    if !h.is_normal(g) || !h.is_abelian(g) {
        return Err(Error::Internal("witness subgroup is not normal abelian".into()));
    }
    let m = ModuleCategory::new(c1, &h, w.mu().clone())?;
    let budget = Budget::default();
    if !is_dual_pointed_with(&m, &budget)?.pointed {
        return Err(Error::Internal("witness module has a non-pointed dual".into()));
    }
    let d = dual_pointed_category_with(&m, &budget)?;
    if d.group().rows() != w.dual.group().rows() {
        return Err(Error::Internal("rebuilt crossed product differs".into()));
    }
    if !w.iso.is_isomorphism(c2.group(), d.group()) {
        return Err(Error::Internal("witness map is not an isomorphism".into()));
    }
    let diff = pullback(&d.varpi, &w.iso, c2.group())?.sub(c2.omega())?;
    match &w.certificate {
        Some(cert) if coboundary(cert) == diff => Ok(()),
        Some(_) => Err(Error::Internal("certificate does not bound ϖ^a - ω'".into())),
        None => match decide_trivial(&diff, &budget)? {
            Triviality::Trivial { .. } => Ok(()),
            _ => Err(Error::Internal("ϖ^a - ω' is not trivial".into())),
        },
    }
}

/// `(H ⋊ G₀, Ĥ ⋊ G₀)` for an abelian `H` with a right `G₀`-action `action[g][h] = h ◁ g`;
/// `Ĥ` carries `(ρ ◁ g)(h) = ρ(h ◁ g⁻¹)`. The pair is checked to be Morita equivalent
/// through the normal copy of `H`.
pub fn dual_pair_general(h: &FiniteGroup, g0: &FiniteGroup, action: &[Vec<usize>]) -> Result<(FiniteGroup, FiniteGroup)> {
    if !h.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let g = FiniteGroup::semidirect(h, g0, action)?;
    let hat = dual_group(h, &Subgroup::whole(h))?;
    let dual_action = (0..g0.order())
        .map(|x| {
            let back = &action[g0.inv(x)];
            (0..hat.order()).map(|rho| hat.pullback(rho, |e| back[e])).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let g_dual = FiniteGroup::semidirect(hat.group(), g0, &dual_action)?;
    let copy = Subgroup::new(&g, &(0..h.order()).collect::<Vec<_>>())?;
    let c = PointedCategory::untwisted(&g);
    let mu0 = Cochain::zero(Coinduced::new(&g, &copy).subgroup_module(), 2, 1);
    let d = dual_pointed_category_with(&ModuleCategory::from_local(&c, &copy, &mu0)?, &Budget::default())?;
    let iso_ok = find_isomorphism(&g_dual, d.group())?.is_some();
    let trivial = settle(decide_trivial(&d.varpi, &Budget::default())?) == Some(true);
    if !iso_ok || !trivial {
        return Err(Error::Internal("the dual pair is not realized through the normal copy of H".into()));
    }
    Ok((g, g_dual))
}

/// Parameters `p, q` odd primes with `q | p - 1` and `t` of multiplicative order `q` mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub p: usize,
    pub q: usize,
    pub t: usize,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FamilyParams {
    pub fn new(p: usize, q: usize, t: usize) -> Result<Self> {
        if !is_prime(p) || !is_prime(q) || p == 2 || q == 2 {
            return Err(Error::InvalidParams("p and q must be odd primes".into()));
        }
        if !(p - 1).is_multiple_of(q) {
            return Err(Error::InvalidParams(format!("{q} does not divide {}", p - 1)));
        }
        let tp = t % p;
        let pow = (0..q).fold(1usize, |acc, _| acc * tp % p);
        if tp == 1 || pow != 1 {
            return Err(Error::InvalidParams(format!("{t} does not have order {q} modulo {p}")));
        }
        Ok(FamilyParams { p, q, t: tp })
    }

    /// `G = ℤ/p ⋊ (ℤ/p ⋊ ℤ/q)` and `G' = (ℤ/p)^ ⋊ (ℤ/p ⋊ ℤ/q)`, the acting group working on
    /// `ℤ/p` by conjugation.
    pub fn groups(&self) -> Result<(FiniteGroup, FiniteGroup)> {
        let g0 = FiniteGroup::metacyclic(self.p, self.q, self.t)?;
        let action: Vec<Vec<usize>> = (0..g0.order())
            .map(|x| (0..self.p).map(|h| g0.mul(g0.mul(g0.inv(x), h), x)).collect())
            .collect();
        dual_pair_general(&FiniteGroup::cyclic(self.p), &g0, &action)
    }
}

/// Census comparison of two groups.
#[derive(Clone, Debug, Serialize)]
pub struct DistinguisherReport {
    pub census: [Census; 2],
    pub distinguished: bool,
    pub reasons: Vec<String>,
}

/// Compares normal-subgroup censuses, abelianizations and class counts; any difference
/// distinguishes the group rings `ℤ[G₁]` and `ℤ[G₂]` as based rings.
pub fn grothendieck_distinguishers(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<DistinguisherReport> {
    let a = normal_subgroup_census(g1)?;
    let b = normal_subgroup_census(g2)?;
    let mut reasons = Vec::new();
    let orders: std::collections::BTreeSet<usize> =
        a.normal_by_order.keys().chain(b.normal_by_order.keys()).copied().collect();
    for o in orders {
        let (x, y) = (
            a.normal_by_order.get(&o).copied().unwrap_or(0),
            b.normal_by_order.get(&o).copied().unwrap_or(0),
        );
        if x != y {
            reasons.push(format!("normal subgroups of order {o}: {x} vs {y}"));
        }
    }
    if a.abelianization != b.abelianization {
        reasons.push(format!("abelianization {:?} vs {:?}", a.abelianization, b.abelianization));
    }
    if a.conjugacy_classes != b.conjugacy_classes {
        reasons.push(format!("conjugacy classes {} vs {}", a.conjugacy_classes, b.conjugacy_classes));
    }
    Ok(DistinguisherReport {
        distinguished: !reasons.is_empty(),
        census: [a, b],
        reasons,
    })
}

/// Everything checked for one member of the family.
#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub params: FamilyParams,
    pub groups: (FiniteGroup, FiniteGroup),
    pub outcome: MoritaOutcome,
    pub isomorphic: bool,
    pub distinguishers: DistinguisherReport,
}

impl FamilyReport {
    pub fn normal_order_p(&self) -> (usize, usize) {
        let p = self.params.p;
        let get = |c: &Census| c.normal_by_order.get(&p).copied().unwrap_or(0);
        (get(&self.distinguishers.census[0]), get(&self.distinguishers.census[1]))
    }

    pub fn to_json(&self) -> Value {
        let [a, b] = &self.distinguishers.census;
        json!({
            "params": self.params,
            "order": self.groups.0.order(),
            "verdict": self.outcome.verdict,
            "witness": self.outcome.witness.as_ref().map(MoritaWitness::to_json),
            "notes": self.outcome.notes,
            "isomorphic": self.isomorphic,
            "normal_order_p": [self.normal_order_p().0, self.normal_order_p().1],
            "abelianization_order": [a.abelianization_order, b.abelianization_order],
            "conjugacy_classes": [a.conjugacy_classes, b.conjugacy_classes],
            "grothendieck_distinguished": self.distinguishers.distinguished,
            "distinguishers": self.distinguishers.reasons,
            "census": [a, b],
        })
    }
}

pub fn metacyclic_family(params: FamilyParams, opts: &SearchOptions) -> Result<FamilyReport> {
    let (g, gd) = params.groups()?;
    let outcome = morita_equivalent_groups(&g, &gd, opts)?;
    if let Some(w) = &outcome.witness {
        verify_witness(&PointedCategory::untwisted(&g), &PointedCategory::untwisted(&gd), w)?;
    }
    let isomorphic = find_isomorphism(&g, &gd)?.is_some();
    let distinguishers = grothendieck_distinguishers(&g, &gd)?;
    Ok(FamilyReport {
        params,
        groups: (g, gd),
        outcome,
        isomorphic,
        distinguishers,
    })
}

/// One pointed dual met while sweeping the module categories of a category.
#[derive(Clone, Debug)]
pub struct SweepEntry {
    pub subgroup: Subgroup,
    pub mu_class: usize,
    pub catalog_name: Option<&'static str>,
    pub varpi_trivial: Option<bool>,
    pub dual: DualPresentation,
}

impl SweepEntry {
    pub fn to_json(&self) -> Value {
        let g = self.dual.group();
        json!({
            "subgroup": self.subgroup.elements(),
            "mu_class": self.mu_class,
            "order": g.order(),
            "exponent": g.exponent(),
            "abelian": g.is_abelian(),
            "catalog_name": self.catalog_name,
            "varpi_trivial": self.varpi_trivial,
        })
    }
}

/// Duals for every normal abelian `H` and every class of module structures over it that
/// passes the pointedness criterion, in subgroup order.
pub fn dual_sweep(c: &PointedCategory, budget: &Budget) -> Result<Vec<SweepEntry>> {
    let mut hs = candidate_subgroups(c.group())?;
    hs.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    let mut out = Vec::new();
    for h in hs {
        for (idx, m) in module_candidates(c, &h, budget)? {
            if !is_dual_pointed_with(&m, budget)?.pointed {
                continue;
            }
            let dual = dual_pointed_category_with(&m, budget)?;
            out.push(SweepEntry {
                subgroup: h.clone(),
                mu_class: idx,
                catalog_name: crate::catalog::identify(dual.group())?,
                varpi_trivial: settle(decide_trivial(&dual.varpi, budget)?),
                dual,
            });
        }
    }
    Ok(out)
}

/// The dihedral group of order 8: which `(H, μ)` give the dual `(ℤ/2)³` with nontrivial
/// `ϖ`, and what the rotation subgroup `⟨r⟩` gives instead.
#[derive(Clone, Debug)]
pub struct DihedralSweep {
    pub entries: Vec<SweepEntry>,
    pub rotation_subgroup: Subgroup,
    /// Entries (by position) with group `(ℤ/2)³` and nontrivial `ϖ`.
    pub elementary_twisted: Vec<usize>,
    /// Set when the rotation subgroup does not produce `(ℤ/2)³`.
    pub discrepancy: bool,
}

impl DihedralSweep {
    pub fn to_json(&self) -> Value {
        let at_rotation: Vec<Value> = self
            .entries
            .iter()
            .filter(|e| e.subgroup == self.rotation_subgroup)
            .map(SweepEntry::to_json)
            .collect();
        json!({
            "duals": self.entries.iter().map(SweepEntry::to_json).collect::<Vec<_>>(),
            "rotation_subgroup": self.rotation_subgroup.elements(),
            "duals_at_rotation_subgroup": at_rotation,
            "elementary_abelian_twisted_at": self
                .elementary_twisted
                .iter()
                .map(|&i| json!({"subgroup": self.entries[i].subgroup.elements(), "mu_class": self.entries[i].mu_class}))
                .collect::<Vec<_>>(),
            "discrepancy": self.discrepancy,
            "discrepancy_note": if self.discrepancy {
                "the rotation subgroup does not give the elementary abelian dual of order 8; it arises elsewhere"
            } else {
                ""
            },
        })
    }
}

pub fn dihedral_eight_sweep(budget: &Budget) -> Result<DihedralSweep> {
    let d8 = FiniteGroup::dihedral(4);
    let r = (0..d8.order())
        .find(|&x| d8.element_order(x) == 4)
        .ok_or_else(|| Error::Internal("no rotation of order 4".into()))?;
    let rotation_subgroup = Subgroup::generated(&d8, &[r]);
    let entries = dual_sweep(&PointedCategory::untwisted(&d8), budget)?;
    let elementary = |e: &SweepEntry| e.catalog_name == Some("C2xC2xC2");
    let elementary_twisted = entries
        .iter()
        .enumerate()
        .filter(|(_, e)| elementary(e) && e.varpi_trivial == Some(false))
        .map(|(i, _)| i)
        .collect();
    let discrepancy = !entries
        .iter()
        .any(|e| e.subgroup == rotation_subgroup && elementary(e));
    Ok(DihedralSweep {
        entries,
        rotation_subgroup,
        elementary_twisted,
        discrepancy,
    })
}
