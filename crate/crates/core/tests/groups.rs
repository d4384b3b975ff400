use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use reekit::perm::{self, BsgsConfig, Permutation, PermutationGroup};
use reekit::ree::{self, ReeGroup, ReeParameters};
use reekit::{oracles, unital};

fn r27() -> &'static ReeGroup {
    static G: OnceLock<ReeGroup> = OnceLock::new();
    G.get_or_init(|| ree::build_ree27().unwrap())
}

fn ree3() -> &'static ReeGroup {
    static G: OnceLock<ReeGroup> = OnceLock::new();
    G.get_or_init(|| ree::build_ree3().unwrap())
}

#[test]
fn r27_involutions_fix_28_points() {
    let g = r27();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let rho = perm::random_involution(&g.group, &mut rng, 100).unwrap();
        assert_eq!(rho.fixed_points().len(), 28);
    }
}

#[test]
fn r27_rejects_a_transposition() {
    let t = Permutation::from_cycles(19_684, &[&[0, 1]]).unwrap();
    assert!(!r27().group.contains(&t));
    assert!(r27().block_of(&t).is_err());
}

#[test]
fn r27_centralizer_of_an_involution() {
    let g = r27();
    let rho = &g.distinguished_involution;
    let block = g.block_of(rho).unwrap();
    let config = BsgsConfig::default().with_seed(3).with_base_prefix(block[..3].to_vec());
    let c = perm::centralizer_of_involution(&g.group, rho, &BigUint::from(19_656u32), 5, 2000, &config).unwrap();
    assert_eq!(c.order_u64(), Some(19_656));
    assert!(c.generators().iter().all(|x| x.commutes_with(rho)));
    let d = perm::derived_subgroup(&c, &BsgsConfig::default()).unwrap();
    assert_eq!(d.order_u64(), Some(9_828));
}

#[test]
fn r27_class_traversal_respects_its_budget() {
    let g = r27();
    let budget = 200 * (19_684 * 4 + 64);
    let r = perm::involution_class_orbit(&g.group, &g.distinguished_involution, budget, |_| {}).unwrap();
    assert!(!r.complete);
    assert!(r.count <= 200);
}

#[test]
fn parameters_of_small_ree_groups() {
    let p = ReeParameters::new(1).unwrap();
    assert_eq!((p.q, p.alpha, p.beta, p.degree, p.block_size), (27, 19, 37, 19_684, 28));
    assert_eq!(p.group_order, BigUint::from(10_073_444_472u64));
    assert!(p.identities_hold());
    let p = ReeParameters::new(2).unwrap();
    assert_eq!((p.alpha, p.beta), (217, 271));
    assert!(ReeGroup::build(2).is_err());
}

#[test]
fn ree3_normalizers() {
    let g = ree3();
    // A D6 inside a D18: its normalizer there is itself.
    let (_, subs, _) = oracles::dihedral_subgroup_survey(&g.group, 100_000).unwrap();
    let table = oracles::InvolutionTable::of_group(&g.group, 100_000).unwrap();
    let d18 = subs.iter().find(|s| s.d == 9).unwrap();
    let gens = |pair: (u32, u32)| vec![table.involutions[pair.0 as usize].clone(), table.involutions[pair.1 as usize].clone()];
    let big = PermutationGroup::new(gens(d18.pair)).unwrap();
    let a = &table.involutions[d18.pair.0 as usize];
    let b = &table.involutions[d18.pair.1 as usize];
    // a and (ab)³a generate the D6.
    let small = PermutationGroup::new(vec![a.clone(), a.then(b).pow(3).then(a)]).unwrap();
    assert_eq!(small.order_u64(), Some(6));
    let n = perm::normalizer_bruteforce(&big, &small, 1_000).unwrap();
    assert_eq!(n.order_u64(), Some(6));

    // D14 in PSL(2,8) is self-normalizing; involutions there have centralizers of order 8.
    let psl8 = perm::derived_subgroup(&g.group, &BsgsConfig::default()).unwrap();
    let (t8, subs8, _) = oracles::dihedral_subgroup_survey(&psl8, 100_000).unwrap();
    let d14 = subs8.iter().find(|s| s.d == 7).unwrap();
    let h = PermutationGroup::new(vec![t8.involutions[d14.pair.0 as usize].clone(), t8.involutions[d14.pair.1 as usize].clone()]).unwrap();
    assert_eq!(perm::normalizer_bruteforce(&psl8, &h, 1_000_000).unwrap().order_u64(), Some(14));
    let c = perm::centralizer_bruteforce(&psl8, &t8.involutions[0], 10_000).unwrap();
    assert_eq!(c.order_u64(), Some(8));
    assert_eq!(perm::centralizer_bruteforce(&g.group, &t8.involutions[0], 10_000).unwrap().order_u64(), Some(24));
}

#[test]
fn ree3_unital_round_trip() {
    let s = unital::build_unital(ree3()).unwrap();
    assert!(s.is_invariant_under(ree3().group.generators()));
    let json = serde_json::to_string(&unital::UnitalReport::new(&s, true)).unwrap();
    let back: unital::UnitalReport = serde_json::from_str(&json).unwrap();
    let again = unital::SteinerSystem::new(back.v, back.k, back.blocks.unwrap()).unwrap();
    assert_eq!(again.block_count(), 63);
}

#[test]
fn group_summary_round_trip() {
    let g = ree3();
    let json = serde_json::to_string(&g.group.summary()).unwrap();
    assert!(json.contains("\"order\":1512"));
    let back: perm::GroupSummary = serde_json::from_str(&json).unwrap();
    assert_eq!(back.rebuild(&BsgsConfig::default()).unwrap().order_u64(), Some(1512));
}
