//! `morita-kit`: command-line front end for the Morita equivalence engine.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use morita_core::catalog::identify;
use morita_core::cohomology::{
    cochain_from_json, cohomology_group_with, decide_trivial, is_cocycle, Budget, CoefModule, Triviality,
};
use morita_core::duality::{dual_pointed_category_with, is_dual_pointed_with, PointednessFailure};
use morita_core::group::{normal_subgroup_census, GroupInvariants, GroupSpec};
use morita_core::morita::{
    dihedral_eight_sweep, grothendieck_distinguishers, morita_equivalent, metacyclic_family, verify_witness,
    FamilyParams, SearchOptions, Verdict,
};
use morita_core::pointed::{check_pentagon, module_class_catalog};
use morita_core::{Error, FiniteGroup, PointedCategory, Subgroup};

#[derive(Parser)]
#[command(name = "morita-kit", version, about = "Cohomology, pointed duals and categorical Morita equivalence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the equivalence search.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Isomorphisms tried per candidate dual before giving up as inconclusive.
    #[arg(long = "budget-isos", global = true, default_value_t = 100_000)]
    budget_isos: usize,
    /// Largest dense matrix (entries) built for a class test.
    #[arg(long = "budget-entries", global = true, default_value_t = 24_000_000)]
    budget_entries: usize,
    /// Add wall-clock timings to the report (they make it non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant factors of Hⁿ(G, ℚ/ℤ), or a class test for a given cochain.
    Cohomology {
        #[command(flatten)]
        cat: CategoryArgs,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// The dual of Vec(G, ω) with respect to M(H, μ).
    Dual {
        #[command(flatten)]
        cat: CategoryArgs,
        #[command(flatten)]
        sub: SubgroupArgs,
        /// Index of the module structure in the class catalog over H.
        #[arg(long, default_value_t = 0)]
        mu: usize,
    },
    /// Decide whether (G, ω) and (G', ω') are categorically Morita equivalent.
    Morita {
        #[command(flatten)]
        cat: CategoryArgs,
        #[arg(long)]
        g2: String,
        #[arg(long)]
        omega2: Option<String>,
    },
    /// The pair ℤ/p ⋊ (ℤ/p ⋊ ℤ/q) and its dual-action twin.
    Family {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        t: usize,
    },
    /// Group invariants and normal-subgroup census; with --g2, the distinguishers.
    Invariants {
        #[arg(long)]
        group: String,
        #[arg(long)]
        g2: Option<String>,
    },
    /// Replays the worked examples and prints PASS/FAIL lines.
    Selftest,
}

#[derive(Args)]
struct CategoryArgs {
    /// Group: JSON, a file holding JSON, `cyclic:N`, `dihedral:M`, `product:A,B,…` or a catalog name.
    #[arg(long)]
    group: String,
    /// 3-cocycle (JSON or file) for the associator; absent means ω = 0.
    #[arg(long)]
    omega: Option<String>,
}

#[derive(Args)]
struct SubgroupArgs {
    /// Subgroup as a comma-separated list of element indices.
    #[arg(long, conflicts_with = "generators")]
    subgroup: Option<String>,
    /// Subgroup as a comma-separated list of generators.
    #[arg(long)]
    generators: Option<String>,
}

enum Failure {
    Input(String),
    Budget(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidGroup(_)
            | Error::InvalidAction(_)
            | Error::InvalidParams(_)
            | Error::NotCocycle(_)
            | Error::Dimension(_)
            | Error::NotAssociative(..) => Failure::Input(e.to_string()),
            Error::SizeBound { .. } | Error::Inconclusive(_) => Failure::Budget(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

type Outcome = Result<(Value, String, u8), Failure>;

/// Reads an argument that is either inline text or the path of a file holding it.
fn text_or_file(arg: &str) -> Result<String, Failure> {
    let t = arg.trim();
    if !t.starts_with('{') && Path::new(t).is_file() {
        return std::fs::read_to_string(t).map_err(|e| Failure::Input(format!("{t}: {e}")));
    }
    Ok(t.to_string())
}

fn parse_group(arg: &str) -> Result<FiniteGroup, Failure> {
    Ok(GroupSpec::parse(&text_or_file(arg)?)?.build()?)
}

fn parse_category(group: &str, omega: Option<&str>) -> Result<PointedCategory, Failure> {
    let g = parse_group(group)?;
    let Some(o) = omega else {
        return Ok(PointedCategory::untwisted(&g));
    };
    let text = text_or_file(o)?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("omega JSON at line {} column {}: {e}", e.line(), e.column())))?;
    let module = Arc::new(CoefModule::trivial(&g));
    let w = cochain_from_json(&v, &module)?;
    Ok(PointedCategory::new(g, w)?)
}

fn parse_indices(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse().map_err(|_| Failure::Input(format!("bad element index {x:?}"))))
        .collect()
}

fn parse_subgroup(g: &FiniteGroup, a: &SubgroupArgs) -> Result<Subgroup, Failure> {
    let check = |v: &[usize]| -> Result<(), Failure> {
        match v.iter().find(|&&x| x >= g.order()) {
            Some(x) => Err(Failure::Input(format!("element {x} is out of range for a group of order {}", g.order()))),
            None => Ok(()),
        }
    };
    match (&a.subgroup, &a.generators) {
        (Some(s), _) => {
            let v = parse_indices(s)?;
            check(&v)?;
            Ok(Subgroup::new(g, &v)?)
        }
        (None, Some(s)) => {
            let v = parse_indices(s)?;
            check(&v)?;
            Ok(Subgroup::generated(g, &v))
        }
        (None, None) => Err(Failure::Input("give --subgroup or --generators".into())),
    }
}

fn triviality_json(t: &Triviality) -> Value {
    match t {
        Triviality::Trivial { .. } => json!(true),
        Triviality::Nontrivial { .. } => json!(false),
        Triviality::Inconclusive { .. } => Value::Null,
    }
}

fn invariants_json(g: &FiniteGroup) -> Result<Value, Failure> {
    let inv = GroupInvariants::of(g)?;
    Ok(json!({
        "order": inv.order,
        "exponent": inv.exponent,
        "abelian": g.is_abelian(),
        "center_order": inv.center_order,
        "abelianization": inv.abelianization,
        "order_statistics": inv.order_statistics,
        "catalog_name": identify(g)?,
    }))
}

fn cohomology(cli: &Cli, cat: &CategoryArgs, degree: usize) -> Outcome {
    let budget = Budget { max_entries: cli.budget_entries };
    let c = parse_category(&cat.group, cat.omega.as_deref())?;
    let g = c.group();
    let module = Arc::new(CoefModule::trivial(g));
    let h = cohomology_group_with(&module, degree, &budget)?;
    let mut report = json!({
        "group": invariants_json(g)?,
        "degree": degree,
        "invariant_factors": h.factors(),
        "order": h.order(),
    });
    let mut summary = format!("H^{degree}(G, Q/Z) with |G| = {}: factors {:?}", g.order(), h.factors());
    if cat.omega.is_some() {
        let w = c.omega();
        let t = decide_trivial(w, &budget)?;
        let pentagon = check_pentagon(w);
        report["omega"] = json!({
            "cocycle": is_cocycle(w),
            "pentagon": pentagon.holds,
            "trivial": triviality_json(&t),
        });
        summary.push_str(&format!("; ω trivial: {}", triviality_json(&t)));
        if let Triviality::Inconclusive { reason } = t {
            return Ok((report, format!("{summary} ({reason})"), 3));
        }
    }
    Ok((report, summary, 0))
}

fn dual(cli: &Cli, cat: &CategoryArgs, sub: &SubgroupArgs, mu: usize) -> Outcome {
    let budget = Budget { max_entries: cli.budget_entries };
    let c = parse_category(&cat.group, cat.omega.as_deref())?;
    let h = parse_subgroup(c.group(), sub)?;
    let catalog = match module_class_catalog(&c, &h) {
        Ok(cat) => cat,
        Err(Error::Obstructed) => {
            let report = json!({"subgroup": h.elements(), "module_structure": false});
            return Ok((report, "ω restricted to H is nontrivial: no module category".into(), 0));
        }
        Err(e) => return Err(e.into()),
    };
    let m = catalog.classes.get(mu).ok_or_else(|| {
        Failure::Input(format!("--mu {mu} is out of range: H²(H) has {} classes", catalog.len()))
    })?;
    let p = is_dual_pointed_with(m, &budget)?;
    if let Some(f) = p.failure {
        let why = match f {
            PointednessFailure::NotAbelian => json!({"reason": "not_abelian"}),
            PointednessFailure::NotNormal => json!({"reason": "not_normal"}),
            PointednessFailure::NotInvariant { coset } => json!({"reason": "not_invariant", "coset": coset}),
        };
        let report = json!({"subgroup": h.elements(), "mu_class": mu, "pointed": false, "failure": why});
        return Ok((report, "the dual is not pointed".into(), 0));
    }
    let d = dual_pointed_category_with(m, &budget)?;
    let mut report = d.report(&budget)?;
    report["mu_class"] = json!(mu);
    report["h2_factors"] = json!(catalog.h2_factors);
    report["pointed"] = json!(true);
    let summary = format!(
        "dual group of order {}, exponent {}, {}; ϖ trivial: {}",
        d.group().order(),
        d.group().exponent(),
        report["isomorphism_type_hint"]["catalog_name"].as_str().unwrap_or("not in the catalog"),
        report["varpi_trivial"]
    );
    Ok((report, summary, 0))
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Equivalent => 0,
        Verdict::NotEquivalent => 2,
        Verdict::Inconclusive => 3,
    }
}

fn options(cli: &Cli) -> SearchOptions {
    SearchOptions {
        budget: Budget { max_entries: cli.budget_entries },
        max_isomorphisms: cli.budget_isos,
        jobs: cli.jobs.max(1),
    }
}

fn morita(cli: &Cli, cat: &CategoryArgs, g2: &str, omega2: Option<&str>) -> Outcome {
    let c1 = parse_category(&cat.group, cat.omega.as_deref())?;
    let c2 = parse_category(g2, omega2)?;
    let out = morita_equivalent(&c1, &c2, &options(cli))?;
    if let Some(w) = &out.witness {
        verify_witness(&c1, &c2, w)?;
    }
    let report = json!({
        "verdict": out.verdict,
        "witness": out.witness.as_ref().map(|w| w.to_json()),
        "invariants": {"first": invariants_json(c1.group())?, "second": invariants_json(c2.group())?},
        "notes": out.notes,
    });
    let summary = match &out.witness {
        Some(w) => format!("equivalent via H = {:?} (class {})", w.subgroup.elements(), w.mu_class),
        None if out.verdict == Verdict::NotEquivalent => "not equivalent".into(),
        None => format!("inconclusive: {}", out.notes.join("; ")),
    };
    Ok((report, summary, verdict_code(out.verdict)))
}

fn family(cli: &Cli, p: usize, q: usize, t: usize) -> Outcome {
    let r = metacyclic_family(FamilyParams::new(p, q, t)?, &options(cli))?;
    let (a, b) = r.normal_order_p();
    let summary = format!(
        "order {}: {:?}; isomorphic: {}; normal subgroups of order {p}: {a} vs {b}; distinguished: {}",
        r.groups.0.order(),
        r.outcome.verdict,
        r.isomorphic,
        r.distinguishers.distinguished
    );
    Ok((r.to_json(), summary, verdict_code(r.outcome.verdict)))
}

fn invariants(group: &str, g2: Option<&str>) -> Outcome {
    let g = parse_group(group)?;
    let mut report = json!({
        "invariants": invariants_json(&g)?,
        "census": normal_subgroup_census(&g)?,
    });
    let mut summary = format!("order {}, {} conjugacy classes", g.order(), g.conjugacy_classes().len());
    if let Some(s) = g2 {
        let h = parse_group(s)?;
        let d = grothendieck_distinguishers(&g, &h)?;
        summary.push_str(&format!("; distinguished from the second group: {}", d.distinguished));
        report["second"] = json!({"invariants": invariants_json(&h)?, "census": normal_subgroup_census(&h)?});
        report["distinguished"] = json!(d.distinguished);
        report["distinguishers"] = json!(d.reasons);
    }
    Ok((report, summary, 0))
}

fn selftest(cli: &Cli) -> Outcome {
    let mut lines = Vec::new();
    let mut results = Map::new();
    let mut record = |name: &str, r: Result<bool, Failure>| {
        let pass = matches!(r, Ok(true));
        lines.push(format!("{}: {name}", if pass { "PASS" } else { "FAIL" }));
        results.insert(name.to_string(), json!(pass));
        pass
    };
    let budget = Budget::default();
    let z4_dual = (|| -> Result<bool, Failure> {
        let z4 = FiniteGroup::cyclic(4);
        let c = PointedCategory::untwisted(&z4);
        let h = Subgroup::new(&z4, &[0, 2])?;
        let m = module_class_catalog(&c, &h)?.classes.remove(0);
        let d = dual_pointed_category_with(&m, &budget)?;
        let nontrivial = matches!(decide_trivial(&d.varpi, &budget)?, Triviality::Nontrivial { .. });
        Ok(d.group().order() == 4 && d.group().exponent() == 2 && nontrivial)
    })();
    let mut all = record("dual of ℤ/4 over ℤ/2 is (ℤ/2)² with nontrivial ϖ", z4_dual);
    let pair = (|| -> Result<bool, Failure> {
        let z4 = PointedCategory::untwisted(&FiniteGroup::cyclic(4));
        let h = Subgroup::new(z4.group(), &[0, 2])?;
        let m = module_class_catalog(&z4, &h)?.classes.remove(0);
        let d = dual_pointed_category_with(&m, &budget)?;
        let v4 = PointedCategory::new(d.group().clone(), d.varpi.clone())?;
        let out = morita_equivalent(&z4, &v4, &options(cli))?;
        Ok(match &out.witness {
            Some(w) => verify_witness(&z4, &v4, w).is_ok(),
            None => false,
        })
    })();
    all &= record("(ℤ/4, 0) is Morita equivalent to its dual", pair);
    let sweep = (|| -> Result<bool, Failure> {
        let s = dihedral_eight_sweep(&budget)?;
        Ok(!s.elementary_twisted.is_empty())
    })();
    all &= record("the dihedral group of order 8 has an elementary abelian twisted dual", sweep);
    let fam = (|| -> Result<bool, Failure> {
        let r = metacyclic_family(FamilyParams::new(7, 3, 2)?, &options(cli))?;
        Ok(r.outcome.verdict == Verdict::Equivalent && !r.isomorphic && r.normal_order_p() == (8, 2))
    })();
    all &= record("family (7, 3, 2): equivalent, not isomorphic, 8 vs 2 normal subgroups", fam);
    let summary = lines.join("\n");
    Ok((json!({"selftest": results, "passed": all}), summary, if all { 0 } else { 1 }))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Cohomology { cat, degree } => cohomology(cli, cat, *degree),
        Command::Dual { cat, sub, mu } => dual(cli, cat, sub, *mu),
        Command::Morita { cat, g2, omega2 } => morita(cli, cat, g2, omega2.as_deref()),
        Command::Family { p, q, t } => family(cli, *p, *q, *t),
        Command::Invariants { group, g2 } => invariants(group, g2.as_deref()),
        Command::Selftest => selftest(cli),
    }
}

fn emit(cli: &Cli, report: &Value, summary: &str) -> Result<(), String> {
    let text = serde_json::to_string_pretty(report).map_err(|e| e.to_string())? + "\n";
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    match result {
        Ok((mut report, summary, code)) => {
            if cli.timings {
                report["timings_ms"] = json!({"total": elapsed.round()});
            }
            if let Err(e) = emit(&cli, &report, &summary) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(Failure::Input(e)) => {
            eprintln!("input error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(e)) => {
            let report = json!({"verdict": "inconclusive", "reason": e});
            if let Err(err) = emit(&cli, &report, &format!("inconclusive: {e}")) {
                eprintln!("error: {err}");
            }
            ExitCode::from(3)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
