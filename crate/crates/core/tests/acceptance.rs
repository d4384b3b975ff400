//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
//! if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use reekit::cgroup::{self, StringCGroup};
use reekit::gf3::Gf3Field;
use reekit::oracles;
use reekit::perm::{self, BsgsConfig, PermutationGroup};
use reekit::rank3::{self, RetryBudget};
use reekit::ree::{self, linear, ReeGroup};
use reekit::unital;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg.into()) }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, format!("{what} took {t:?}, limit {limit:?}"))
}

fn err(e: reekit::Error) -> String {
    e.to_string()
}

struct Shared {
    ree3: ReeGroup,
    psl8: PermutationGroup,
    psl27: PermutationGroup,
}

fn check_group(g: &ReeGroup, order: u64, degree: usize) -> Result<(), String> {
    ensure(g.group.order() == &BigUint::from(order), format!("order {} != {order}", g.group.order()))?;
    ensure(g.degree() == degree, format!("degree {} != {degree}", g.degree()))?;
    ensure(g.group.is_two_transitive(), "not 2-transitive")
}

fn criterion_1_and_2_and_3(ree3: &ReeGroup, results: &mut Vec<(u32, Outcome)>) {
    let start = Instant::now();
    let built = ree::build_ree27();
    let build_time = start.elapsed();
    let r27 = match built {
        Ok(g) => g,
        Err(e) => {
            for c in 1..=3 {
                results.push((c, Err(format!("R(27) construction failed: {e}"))));
            }
            return;
        }
    };

    results.push((1, run(|| {
        check_group(ree3, 1512, 28)?;
        check_group(&r27, 10_073_444_472, 19_684)?;
        ensure(build_time <= Duration::from_secs(600), format!("R(27) took {build_time:?}"))?;
        Ok(format!("Ree(3) 1512 on 28, R(27) 10073444472 on 19684, R(27) built in {build_time:.1?}"))
    })));

    results.push((2, run(|| {
        let s3 = unital::build_unital(ree3).map_err(err)?;
        ensure(s3.block_count() == 63 && s3.k == 4 && s3.v == 28, format!("q=3: {} blocks", s3.block_count()))?;
        let start = Instant::now();
        let s27 = unital::build_unital(&r27).map_err(err)?;
        within(start, Duration::from_secs(1800), "q=27 unital")?;
        ensure(s27.block_count() == 512_487 && s27.k == 28, format!("q=27: {} blocks", s27.block_count()))?;
        let pairs = 19_684u64 * 19_683 / 2;
        ensure(s27.pairs_covered == pairs, format!("{} of {pairs} pairs covered", s27.pairs_covered))?;
        Ok(format!("63 blocks of 4; 512487 blocks of 28 covering {pairs} pairs once, q=27 in {:.1?}", start.elapsed()))
    })));

    results.push((3, run(|| {
        let seeds: Vec<u64> = (0..100).collect();
        let start = Instant::now();
        let certs = rank3::construct_rank3_batch(&r27, &seeds, &RetryBudget::default());
        let mut ok = 0;
        let mut realized: BTreeMap<u64, usize> = BTreeMap::new();
        for c in certs.iter().flatten() {
            let n = c.schlafli[1];
            if c.schlafli[0] == 37
                && rank3::is_power_of_three(n)
                && c.generated_order == BigUint::from(10_073_444_472u64)
                && c.intersection_ok
                && c.is_valid(&r27)
            {
                ok += 1;
                *realized.entry(n).or_insert(0) += 1;
            }
        }
        ensure(ok >= 95, format!("{ok}/100 valid certificates"))?;
        Ok(format!("{ok}/100 seeds give {{37, n}}, realized n {realized:?}, in {:.1?}", start.elapsed()))
    })));
}

fn run(f: impl FnOnce() -> Outcome) -> Outcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(p) => Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into())),
    }
}

fn criterion_4(s: &Shared) -> Outcome {
    let c = rank3::ree3_not_cgroup(&s.ree3).map_err(err)?;
    ensure(c.closure_order == BigUint::from(504u32), format!("closure order {}", c.closure_order))?;
    ensure(c.index == BigUint::from(3u32), "index is not 3")?;
    ensure(c.closure_equals_derived, "closure differs from the derived subgroup")?;
    Ok(format!("{} involutions generate a subgroup of order 504, index 3, equal to the derived subgroup", c.involution_count))
}

fn criterion_5(s: &Shared) -> Outcome {
    let start = Instant::now();
    let cat = rank3::classify_rank3(&s.psl8, &s.ree3.group).map_err(err)?;
    within(start, Duration::from_secs(60), "classification")?;
    let elapsed = start.elapsed();
    ensure(cat.classes_up_to_duality == 7, format!("{} classes up to duality", cat.classes_up_to_duality))?;
    let config = BsgsConfig::default();
    for &i in &cat.representatives {
        let e = &cat.entries[i];
        let v = StringCGroup::verify(&e.tuple, None, &config).map_err(err)?;
        ensure(v.verified && v.group_order == BigUint::from(504u32), format!("class {i} fails re-verification"))?;
        ensure(cgroup::rho0_normalizer_condition(&e.tuple).map_err(err)?, format!("class {i} fails the ρ₀ condition"))?;
    }
    let types: std::collections::BTreeSet<Vec<u64>> = cat.entries.iter().map(|e| e.schlafli.clone()).collect();
    for t in [[3, 7], [7, 3], [7, 7], [7, 9], [9, 7]] {
        ensure(types.contains(t.as_slice()), format!("type {t:?} not realized"))?;
    }
    let reps: Vec<_> = cat.representatives.iter().map(|&i| cat.entries[i].schlafli.clone()).collect();
    Ok(format!(
        "7 classes up to duality ({} without), representatives {reps:?}, in {elapsed:.1?}",
        cat.classes
    ))
}

fn criterion_6() -> Outcome {
    let v = oracles::verify_dihedral_normalizers(60).map_err(err)?;
    let bad = v.iter().filter(|x| !x.agree).count();
    ensure(bad == 0, format!("{bad} mismatches"))?;
    Ok(format!("{} subgroup normalizers with m | n ≤ 60 agree with the closed form", v.len()))
}

fn criterion_7(s: &Shared) -> Outcome {
    let start = Instant::now();
    let r = oracles::verify_divd(&s.psl27, 27, perm::ENUMERATION_BOUND).map_err(err)?;
    within(start, Duration::from_secs(300), "divd survey")?;
    for &d in r.realized_d.iter().filter(|&&d| d >= 3) {
        ensure(26 % (2 * d) == 0 || 28 % (2 * d) == 0, format!("2d = {} divides neither 26 nor 28", 2 * d))?;
        ensure(d % 4 != 0, format!("d = {d} divisible by 4"))?;
        ensure(d % 2 == 1 || 28 % (2 * d) == 0, format!("even d = {d} with 2d ∤ 28"))?;
    }
    ensure(r.pass, "survey report fails")?;
    Ok(format!("realized d {:?}", r.realized_d))
}

fn criterion_8(s: &Shared) -> Outcome {
    let c = linear::times_c2(&s.psl27).map_err(err)?;
    let r = oracles::verify_normc2psl(&c, 27, perm::ENUMERATION_BOUND).map_err(err)?;
    ensure(r.mismatches.is_empty(), format!("{} fingerprint mismatches", r.mismatches.len()))?;
    ensure(r.invariance_holds, "normalizers of equal-order dihedral subgroups differ")?;
    ensure(r.pass, "report fails")?;
    Ok(format!(
        "subgroups per d {:?}, matched case analysis; d outside the hypothesis {:?}",
        r.subgroups_per_d, r.outside_hypothesis
    ))
}

fn criterion_9(s: &Shared) -> Outcome {
    let r = oracles::verify_psl28(&s.ree3.group, &[3, 7, 9], perm::ENUMERATION_BOUND).map_err(err)?;
    ensure(r.realized_d == vec![3, 7, 9], format!("realized d {:?}", r.realized_d))?;
    ensure(r.n_zero_failures.is_empty(), format!("{} subgroups with N⁰ ≠ D", r.n_zero_failures.len()))?;
    ensure(r.pass, "report fails")?;
    Ok(format!("d ∈ {{3, 7, 9}}, normalizer orders {:?}, N⁰ = D throughout", r.normalizer_orders))
}

fn criterion_10(s: &Shared) -> Outcome {
    let n = oracles::count_dihedral_subgroups(&s.psl8, 7, perm::ENUMERATION_BOUND).map_err(err)?;
    ensure(n == 36, format!("{n} subgroups D14"))?;
    Ok("36 subgroups D14 in PSL(2,8)".into())
}

fn criterion_11(s: &Shared) -> Outcome {
    let a = oracles::no_dihedral_product_check(&s.ree3.group, perm::ENUMERATION_BOUND).map_err(err)?;
    let b = oracles::no_dihedral_product_check(&s.psl27, perm::ENUMERATION_BOUND).map_err(err)?;
    ensure(a, "a product of dihedral groups lies in Ree(3)")?;
    ensure(b, "a product of dihedral groups lies in PSL(2,27)")?;
    Ok("no D2c × D2d (c, d ≥ 3) in Ree(3) or PSL(2,27)".into())
}

fn main() -> ExitCode {
    let ree3 = ree::build_ree3().expect("Ree(3)");
    let psl8 = perm::derived_subgroup(&ree3.group, &BsgsConfig::default()).expect("derived subgroup");
    let psl27 = linear::psl2(&Gf3Field::new(1).expect("GF(27)")).expect("PSL(2,27)");

    let mut results: Vec<(u32, Outcome)> = Vec::new();
    criterion_1_and_2_and_3(&ree3, &mut results);
    let shared = Shared { ree3, psl8, psl27 };
    results.push((4, run(|| criterion_4(&shared))));
    results.push((5, run(|| criterion_5(&shared))));
    results.push((6, run(criterion_6)));
    results.push((7, run(|| criterion_7(&shared))));
    results.push((8, run(|| criterion_8(&shared))));
    results.push((9, run(|| criterion_9(&shared))));
    results.push((10, run(|| criterion_10(&shared))));
    results.push((11, run(|| criterion_11(&shared))));

    let mut failed = 0;
    for (c, r) in &results {
        match r {
            Ok(msg) => println!("criterion {c}: PASS {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {c}: FAIL {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
