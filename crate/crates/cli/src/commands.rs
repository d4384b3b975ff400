use std::cell::OnceCell;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use reekit::cgroup::{self, GeneratorTuple, StringCGroup};
use reekit::gf3::Gf3Field;
use reekit::oracles;
use reekit::perm::{self, BsgsConfig, GroupSummary, Permutation, PermutationGroup};
use reekit::rank3::{self, RetryBudget};
use reekit::ree::{linear, ReeGroup, ReeParameters};
use reekit::unital::{self, UnitalReport};

use crate::report::{read_json, write_json, RunReport, Verdict};
use crate::CliError;

pub const ORACLE_CHECKS: [&str; 7] = ["norma", "divd", "normc2psl", "psl28", "fig1", "semidirect", "noproduct"];

/// Groups shared between checks of one run, built on first use.
#[derive(Default)]
pub struct Groups {
    ree3: OnceCell<ReeGroup>,
    psl8: OnceCell<PermutationGroup>,
    psl27: OnceCell<PermutationGroup>,
}

impl Groups {
    fn ree3(&self) -> Result<&ReeGroup, CliError> {
        if self.ree3.get().is_none() {
            let _ = self.ree3.set(ReeGroup::build(0)?);
        }
        Ok(self.ree3.get().expect("set above"))
    }

    /// PSL(2,8) as the derived subgroup of Ree(3), on the same 28 points.
    fn psl8(&self) -> Result<&PermutationGroup, CliError> {
        if self.psl8.get().is_none() {
            let d = perm::derived_subgroup(&self.ree3()?.group, &BsgsConfig::default())?;
            let _ = self.psl8.set(d);
        }
        Ok(self.psl8.get().expect("set above"))
    }

    fn psl27(&self) -> Result<&PermutationGroup, CliError> {
        if self.psl27.get().is_none() {
            let _ = self.psl27.set(linear::psl2(&Gf3Field::new(1)?)?);
        }
        Ok(self.psl27.get().expect("set above"))
    }
}

#[derive(Serialize)]
struct ReeBuildOutput<'a> {
    params: &'a ReeParameters,
    degree: usize,
    generators: &'a [Permutation],
    #[serde(with = "reekit::bignum")]
    order: num_bigint::BigUint,
    distinguished_involution: &'a Permutation,
    certificate: perm::OrderCertificate,
}

pub fn ree_build(e: u32, seed: u64) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("ree build", seed);
    report.param("e", e)?;
    let params = ReeParameters::new(e)?;
    let g = ReeGroup::build(e)?;
    report.push(Verdict::new(
        "order",
        g.group.order() == &params.group_order,
        json!({ "order": g.group.order().to_string(), "expected": params.group_order.to_string() }),
    )?);
    report.push(Verdict::new("degree", g.degree() as u128 == params.degree, g.degree())?);
    report.push(Verdict::new("two_transitive", g.group.is_two_transitive(), json!({}))?);
    report.push(Verdict::new(
        "involution_fixes_block",
        g.distinguished_involution.fixed_points().len() as u128 == params.block_size,
        g.distinguished_involution.fixed_points().len(),
    )?);
    report.set_result(ReeBuildOutput {
        params: &params,
        degree: g.degree(),
        generators: g.group.generators(),
        order: g.group.order().clone(),
        distinguished_involution: &g.distinguished_involution,
        certificate: g.group.certificate(),
    })?;
    Ok(report)
}

pub fn unital(e: u32, emit: Option<&Path>, seed: u64) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("unital", seed);
    report.param("e", e)?;
    let g = ReeGroup::build(e)?;
    let s = unital::build_unital(&g)?;
    let expected = unital::SteinerSystem::expected_block_count(s.v, s.k);
    report.push(Verdict::new(
        "steiner",
        s.block_count() as u64 == expected,
        json!({ "v": s.v, "k": s.k, "blocks": s.block_count(), "expected_blocks": expected }),
    )?);
    report.push(Verdict::new("invariant", s.is_invariant_under(g.group.generators()), json!({}))?);
    if let Some(path) = emit {
        write_json(path, &UnitalReport::new(&s, true))?;
        report.artifacts.push(path.display().to_string());
    }
    report.set_result(UnitalReport::new(&s, false))?;
    Ok(report)
}

/// Accepts a bare value or one nested under `result` (a report of another command).
fn unwrap_result(v: Value) -> Value {
    match v {
        Value::Object(mut m) if m.contains_key("result") => m.remove("result").expect("checked"),
        other => other,
    }
}

fn parse_tuple(v: Value, path: &Path) -> Result<GeneratorTuple, CliError> {
    let v = unwrap_result(v);
    let v = match v {
        Value::Object(mut m) if m.contains_key("tuple") => m.remove("tuple").expect("checked"),
        other => other,
    };
    let gens: Vec<Permutation> = match v {
        Value::Object(mut m) if m.contains_key("generators") => {
            serde_json::from_value(m.remove("generators").expect("checked"))
        }
        other => serde_json::from_value(other),
    }
    .map_err(|source| CliError::Parse { path: path.display().to_string(), source })?;
    Ok(GeneratorTuple::new(gens)?)
}

/// Subgroups of a large known ambient group only need their order certified
/// against it, which works without coset tables.
fn subgroup_config(degree: usize, seed: u64) -> BsgsConfig {
    let c = BsgsConfig::default().with_seed(seed);
    if degree > 1000 { c.with_row_budget(0) } else { c }
}

pub fn cgroup_verify(group: Option<&Path>, tuple: &Path, seed: u64) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("cgroup verify", seed);
    report.param("tuple", tuple.display().to_string())?;
    let t = parse_tuple(read_json(tuple)?, tuple)?;
    let ambient = match group {
        Some(path) => {
            report.param("group", path.display().to_string())?;
            let summary: GroupSummary = serde_json::from_value(unwrap_result(read_json(path)?))
                .map_err(|source| CliError::Parse { path: path.display().to_string(), source })?;
            Some(summary.rebuild(&BsgsConfig::default().with_seed(seed))?)
        }
        None => None,
    };
    let config = match ambient {
        Some(_) => subgroup_config(t.degree(), seed),
        None => BsgsConfig::default().with_seed(seed),
    };
    if let Some(a) = &ambient {
        let inside = t.generators.iter().all(|x| a.contains(x));
        report.push(Verdict::new("tuple_in_group", inside, json!({}))?);
        if !inside {
            return Ok(report);
        }
    }
    let s = StringCGroup::verify(&t, ambient.as_ref(), &config)?;
    let degenerate = cgroup::check_string(&t).degenerate;
    let counts: Vec<String> = s.face_counts().iter().map(|c| c.to_string()).collect();
    report.push(Verdict::new("string", s.string && !degenerate, &s.schlafli)?);
    report.push(Verdict::new("intersection", s.intersection.holds, &s.intersection)?);
    if let Some(a) = &ambient {
        report.push(Verdict::new(
            "generates_group",
            &s.group_order == a.order(),
            json!({ "generated": s.group_order.to_string(), "group": a.order().to_string() }),
        )?);
    }
    report.set_result(json!({
        "string": s.string,
        "schlafli": s.schlafli,
        "intersection": s.intersection.holds,
        "group_order": s.group_order.to_string(),
        "counts": counts,
    }))?;
    Ok(report)
}

pub fn lemmas(checks: &[String], groups: &Groups, seed: u64) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("lemmas", seed);
    report.param("check", checks)?;
    let bound = perm::ENUMERATION_BOUND;
    for check in checks {
        let v = match check.as_str() {
            "norma" => {
                let all = oracles::verify_dihedral_normalizers(60)?;
                let bad: Vec<_> = all.iter().filter(|v| !v.agree).collect();
                Verdict::new(check, bad.is_empty(), json!({ "n_max": 60, "pairs": all.len(), "mismatches": bad }))?
            }
            "divd" => {
                let r = oracles::verify_divd(groups.psl27()?, 27, bound)?;
                Verdict::new(check, r.pass, &r)?
            }
            "normc2psl" => {
                let c = linear::times_c2(groups.psl27()?)?;
                let r = oracles::verify_normc2psl(&c, 27, bound)?;
                Verdict::new(check, r.pass, &r)?
            }
            "psl28" => {
                let r = oracles::verify_psl28(&groups.ree3()?.group, &[3, 7, 9], bound)?;
                Verdict::new(check, r.pass, &r)?
            }
            "fig1" => {
                let n = oracles::count_dihedral_subgroups(groups.psl8()?, 7, bound)?;
                Verdict::new(check, n == 36, json!({ "d14_subgroups": n }))?
            }
            "semidirect" => {
                let g = &groups.ree3()?.group;
                let a = groups.psl8()?;
                let holds = oracles::semidirect_involution_check(g, a, bound)?;
                Verdict::new(
                    check,
                    holds && a.order_u64() == Some(504),
                    json!({ "group": g.order().to_string(), "normal_subgroup": a.order().to_string(), "holds": holds }),
                )?
            }
            "noproduct" => {
                let ree3 = oracles::no_dihedral_product_check(&groups.ree3()?.group, bound)?;
                let psl27 = oracles::no_dihedral_product_check(groups.psl27()?, bound)?;
                Verdict::new(check, ree3 && psl27, json!({ "ree3": ree3, "psl27": psl27 }))?
            }
            other => return Err(CliError::Usage(format!("unknown check {other:?}"))),
        };
        report.push(v);
    }
    Ok(report)
}

#[derive(Serialize)]
struct BatchSummary {
    seeds: Vec<u64>,
    successes: usize,
    failures: Vec<(u64, String)>,
    realized_n: std::collections::BTreeMap<u64, usize>,
}

pub fn rank3_construct(e: u32, seed: u64, count: u64, min_success: f64) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("rank3 construct", seed);
    report.param("e", e)?;
    report.param("count", count)?;
    if e == 0 {
        return Err(reekit::Error::Precondition("the rank-3 construction needs q > 3".into()).into());
    }
    let g = ReeGroup::build(e)?;
    let seeds: Vec<u64> = (seed..seed + count).collect();
    let results = rank3::construct_rank3_batch(&g, &seeds, &RetryBudget::default());
    let mut summary = BatchSummary { seeds: seeds.clone(), successes: 0, failures: Vec::new(), realized_n: Default::default() };
    let mut certs = Vec::new();
    for (s, r) in seeds.iter().zip(results) {
        match r {
            Ok(c) if c.is_valid(&g) => {
                summary.successes += 1;
                *summary.realized_n.entry(c.schlafli[1]).or_insert(0) += 1;
                certs.push(c);
            }
            Ok(_) => summary.failures.push((*s, "certificate failed validation".into())),
            Err(err) => summary.failures.push((*s, err.to_string())),
        }
    }
    let rate = summary.successes as f64 / count.max(1) as f64;
    report.push(Verdict::new("success_rate", rate >= min_success, json!({ "rate": rate, "min": min_success }))?);
    report.push(Verdict::new(
        "rho0_condition",
        certs.iter().all(|c| c.rho0_condition),
        json!({ "checked": certs.len() }),
    )?);
    let result = if count == 1 && certs.len() == 1 {
        serde_json::to_value(&certs[0])?
    } else {
        json!({ "summary": summary, "certificates": certs })
    };
    report.result = Some(result);
    Ok(report)
}

pub fn rank3_classify(groups: &Groups, csv: Option<&PathBuf>, seed: u64) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("rank3 classify", seed);
    report.param("group", "psl28")?;
    let aut = &groups.ree3()?.group;
    let g = groups.psl8()?;
    let catalog = rank3::classify_rank3(g, aut)?;
    report.push(Verdict::new(
        "classes_up_to_duality",
        catalog.classes_up_to_duality == 7,
        json!({ "up_to_duality": catalog.classes_up_to_duality, "without_duality": catalog.classes }),
    )?);
    // Independent re-verification, without the ambient group, of each class and its dual.
    let config = BsgsConfig::default();
    let mut reverified = true;
    let mut duals_reverse = true;
    for e in &catalog.entries {
        let s = StringCGroup::verify(&e.tuple, None, &config)?;
        reverified &= s.verified && &s.group_order == g.order();
        let d = StringCGroup::verify(&e.tuple.reversed(), None, &config)?;
        let mut rev = e.schlafli.clone();
        rev.reverse();
        duals_reverse &= d.verified && d.schlafli == rev && catalog.entries[e.dual].schlafli == rev;
    }
    report.push(Verdict::new("reverified", reverified, json!({ "entries": catalog.entries.len() }))?);
    report.push(Verdict::new("duality", duals_reverse, json!({}))?);
    let mut rho0 = true;
    for e in &catalog.entries {
        rho0 &= cgroup::rho0_normalizer_condition(&e.tuple)?;
    }
    report.push(Verdict::new("rho0_condition", rho0, json!({}))?);
    if let Some(path) = csv {
        let mut text = String::from("class,schlafli,orbit_size,dual,self_dual,representative,faces\n");
        for (i, e) in catalog.entries.iter().enumerate() {
            let join = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
            text += &format!(
                "{i},{{{}}},{},{},{},{},{}\n",
                join(&e.schlafli).replace(';', ","),
                e.orbit_size,
                e.dual,
                e.self_dual,
                catalog.representatives.contains(&i),
                join(&e.face_counts)
            );
        }
        std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        report.artifacts.push(path.display().to_string());
    }
    report.set_result(&catalog)?;
    Ok(report)
}

pub fn all(e: u32, seed: u64) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("all", seed);
    report.param("e", e)?;
    report.absorb("ree", ree_build(e, seed)?);
    report.absorb("unital", unital(e, None, seed)?);
    if e == 0 {
        let groups = Groups::default();
        let c = rank3::ree3_not_cgroup(groups.ree3()?)?;
        report.push(Verdict::new("not_c_group", c.proves_not_c_group() && c.closure_equals_derived, &c)?);
        report.absorb("rank3", rank3_classify(&groups, None, seed)?);
        let checks: Vec<String> = ORACLE_CHECKS.iter().map(|s| s.to_string()).collect();
        report.absorb("lemmas", lemmas(&checks, &groups, seed)?);
    } else {
        report.absorb("rank3", rank3_construct(e, seed, 1, 1.0)?);
    }
    Ok(report)
}
