use std::collections::HashSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use reekit::cgroup::{self, GeneratorTuple, StringCGroup};
use reekit::gf3::Gf3Field;
use reekit::perm::{self, BsgsConfig, Permutation, PermutationGroup};
use reekit::ree;

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

/// Closure under right multiplication by the generators, independent of any chain.
fn naive_order(gens: &[Permutation]) -> usize {
    let id = Permutation::identity(gens[0].degree());
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for s in gens {
            let y = x.then(s);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(a in permutation(9), b in permutation(9), c in permutation(9)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
    }

    #[test]
    fn inverse_cancels(a in permutation(12)) {
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert!(a.inverse().then(&a).is_identity());
    }

    #[test]
    fn powers_add(a in permutation(10), i in -30i64..30, j in -30i64..30) {
        prop_assert_eq!(a.pow(i).then(&a.pow(j)), a.pow(i + j));
        prop_assert!(a.pow(a.order() as i64).is_identity());
    }

    #[test]
    fn conjugation_is_a_homomorphism(a in permutation(8), b in permutation(8), g in permutation(8)) {
        prop_assert_eq!(a.then(&b).conjugate_by(&g), a.conjugate_by(&g).then(&b.conjugate_by(&g)));
        prop_assert_eq!(a.conjugate_by(&g).order(), a.order());
    }

    #[test]
    fn images_round_trip_through_json(a in permutation(15)) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&text).unwrap(), a);
    }

    #[test]
    fn chain_order_matches_enumeration(gens in prop::collection::vec(permutation(7), 1..4), seed in any::<u64>()) {
        let g = PermutationGroup::with_config(gens.clone(), &BsgsConfig::default().with_seed(seed)).unwrap();
        prop_assert_eq!(g.order_u64(), Some(naive_order(&gens) as u64));
        prop_assert_eq!(g.elements(10_000).unwrap().len(), naive_order(&gens));
    }

    #[test]
    fn sampled_elements_are_members(seed in any::<u64>()) {
        let g = ree::build_ree3().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let x = g.group.random_element(&mut rng);
            prop_assert!(g.group.contains(&x));
        }
    }

    #[test]
    fn ree3_involutions_fix_four_points(seed in any::<u64>()) {
        let g = ree::build_ree3().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = perm::random_involution(&g.group, &mut rng, 100).unwrap();
        prop_assert_eq!(rho.fixed_points().len(), 4);
    }

    #[test]
    fn field_axioms_in_gf243(a in 0u16..243, b in 0u16..243, c in 0u16..243) {
        let f = Gf3Field::new(2).unwrap();
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        let coeffs = f.coefficients(a);
        prop_assert_eq!(f.from_coefficients(&coeffs).unwrap(), a);
    }

    #[test]
    fn reversed_tuples_have_reversed_type(seed in any::<u64>()) {
        // Random string triples in PSL(2,8) = Ree(3)'.
        let g = ree::build_ree3().unwrap();
        let d = perm::derived_subgroup(&g.group, &BsgsConfig::default()).unwrap();
        let invs = perm::involutions(&d, 10_000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r0 = invs.choose(&mut rng).unwrap().clone();
        let pick = |pool: Vec<&Permutation>, rng: &mut ChaCha8Rng| (*pool.choose(rng).unwrap()).clone();
        let r2 = pick(invs.iter().filter(|x| **x != r0 && x.commutes_with(&r0)).collect(), &mut rng);
        let r1 = pick(invs.iter().filter(|x| **x != r0 && **x != r2).collect(), &mut rng);
        let t = GeneratorTuple::new(vec![r0, r1, r2]).unwrap();
        let a = StringCGroup::verify(&t, None, &BsgsConfig::default()).unwrap();
        let b = StringCGroup::verify(&t.reversed(), None, &BsgsConfig::default()).unwrap();
        let mut rev = a.schlafli.clone();
        rev.reverse();
        prop_assert_eq!(b.schlafli, rev);
        prop_assert_eq!(a.verified, b.verified);
        prop_assert_eq!(a.group_order, b.group_order);
    }
}

#[test]
fn class_size_times_centralizer_is_group_order() {
    let g3 = ree::build_ree3().unwrap();
    let psl8 = perm::derived_subgroup(&g3.group, &BsgsConfig::default()).unwrap();
    let s5 = PermutationGroup::new(vec![
        Permutation::from_cycles(5, &[&[0, 1]]).unwrap(),
        Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
    ])
    .unwrap();
    for g in [&g3.group, &psl8, &s5] {
        for rho in perm::involutions(g, 10_000).unwrap().iter().take(5) {
            let class = perm::involution_class_orbit(g, rho, usize::MAX, |_| {}).unwrap();
            let c = perm::centralizer_bruteforce(g, rho, 10_000).unwrap();
            assert!(class.complete);
            assert_eq!(class.count as u64 * c.order_u64().unwrap(), g.order_u64().unwrap());
        }
    }
}

#[test]
fn classified_polytopes_have_consistent_geometry() {
    let g3 = ree::build_ree3().unwrap();
    let psl8 = perm::derived_subgroup(&g3.group, &BsgsConfig::default()).unwrap();
    let cat = reekit::rank3::classify_rank3(&psl8, &g3.group).unwrap();
    for e in &cat.entries {
        let s = StringCGroup::verify(&e.tuple, Some(&psl8), &BsgsConfig::default()).unwrap();
        let geo = cgroup::build_coset_geometry(&s).unwrap();
        assert_eq!(geo.flag_count, 504);
        assert!(geo.thin && geo.residually_connected);
        assert_eq!(geo.face_counts.iter().map(|&c| c as u64).collect::<Vec<_>>(), e.face_counts);
        if e.schlafli == [3, 7] {
            assert_eq!(geo.face_counts, vec![36, 126, 84]);
        }
    }
}
