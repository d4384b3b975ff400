use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::bsgs::{BsgsConfig, PermutationGroup};
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// Default bound on |G| for full element enumeration.
pub const ENUMERATION_BOUND: u64 = 100_000;
/// Default bound on |G| for the brute-force normalizer loop.
pub const NORMALIZER_BOUND: u64 = 1_000_000;

/// All elements of order exactly 2.
pub fn involutions(g: &PermutationGroup, bound: u64) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    check_bound(g, bound)?;
    g.for_each_element(|x| {
        if x.is_involution() {
            out.push(x.clone());
        }
    });
    Ok(out)
}

fn check_bound(g: &PermutationGroup, bound: u64) -> Result<u64> {
    g.order_u64().filter(|&o| o <= bound).ok_or_else(|| Error::BoundExceeded { order: g.order().to_string(), bound })
}

/// Builds the group generated by `elems`, keeping only elements that enlarge it.
pub fn group_from_elements(elems: &[Permutation], degree: usize, config: &BsgsConfig) -> Result<PermutationGroup> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = PermutationGroup::with_config(vec![Permutation::identity(degree)], config)?;
    for e in elems {
        if !current.contains(e) {
            gens.push(e.clone());
            current = PermutationGroup::with_config(gens.clone(), config)?;
        }
    }
    Ok(current)
}

/// Outcome of a conjugacy-orbit traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitCount {
    pub count: usize,
    /// False if the traversal stopped early on the memory budget; `count` is then partial.
    pub complete: bool,
}

/// Breadth-first traversal of the conjugacy class of `rho` under `generators`,
/// calling `visit` on every conjugate once. Stops when storing another
/// conjugate would exceed `budget_bytes`.
pub fn involution_class_orbit<F: FnMut(&Permutation)>(
    g: &PermutationGroup,
    rho: &Permutation,
    budget_bytes: usize,
    mut visit: F,
) -> Result<OrbitCount> {
    if !rho.is_involution() {
        return Err(Error::Precondition("element is not an involution".into()));
    }
    if !g.contains(rho) {
        return Err(Error::Precondition("involution is not in the group".into()));
    }
    let per_item = rho.degree() * 4 + 64;
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue: Vec<Permutation> = vec![rho.clone()];
    seen.insert(rho.clone());
    visit(rho);
    let mut idx = 0;
    while idx < queue.len() {
        let cur = queue[idx].clone();
        idx += 1;
        for s in g.generators() {
            let c = cur.conjugate_by(s);
            if seen.contains(&c) {
                continue;
            }
            if (seen.len() + 1) * per_item > budget_bytes {
                return Ok(OrbitCount { count: seen.len(), complete: false });
            }
            visit(&c);
            seen.insert(c.clone());
            queue.push(c);
        }
    }
    Ok(OrbitCount { count: seen.len(), complete: true })
}

/// Orbit of a point set under `generators` acting on subsets, each set kept sorted.
/// Used for the fixed-point sets of a conjugacy class of involutions, which is
/// far cheaper than storing the involutions themselves.
pub fn set_orbit(generators: &[Permutation], start: &[u32]) -> Vec<Box<[u32]>> {
    let mut first: Vec<u32> = start.to_vec();
    first.sort_unstable();
    let first: Box<[u32]> = first.into_boxed_slice();
    let mut seen: HashSet<Box<[u32]>> = HashSet::new();
    seen.insert(first.clone());
    let mut queue = vec![first];
    let mut idx = 0;
    let mut buf: Vec<u32> = Vec::with_capacity(start.len());
    while idx < queue.len() {
        for s in generators {
            buf.clear();
            buf.extend(queue[idx].iter().map(|&p| s.image(p)));
            buf.sort_unstable();
            if !seen.contains(&buf[..]) {
                let b: Box<[u32]> = buf.clone().into_boxed_slice();
                seen.insert(b.clone());
                queue.push(b);
            }
        }
        idx += 1;
    }
    queue
}

/// A random involution by the power trick: a random element of even order `m`
/// yields `g^{m/2}`. Gives up after `cap` draws.
pub fn random_involution<R: Rng + ?Sized>(g: &PermutationGroup, rng: &mut R, cap: usize) -> Result<Permutation> {
    for _ in 0..cap {
        let x = g.random_element(rng);
        let m = x.order();
        if m % 2 == 0 {
            return Ok(x.pow((m / 2) as i64));
        }
    }
    Err(Error::IterationCap { cap, detail: "no element of even order drawn".into() })
}

/// Centralizer of an involution by brute force over all elements.
pub fn centralizer_bruteforce(g: &PermutationGroup, rho: &Permutation, bound: u64) -> Result<PermutationGroup> {
    check_bound(g, bound)?;
    let mut elems = Vec::new();
    g.for_each_element(|x| {
        if x.commutes_with(rho) {
            elems.push(x.clone());
        }
    });
    group_from_elements(&elems, g.degree(), &BsgsConfig::default())
}

/// Randomized centralizer of an involution `rho` by the dihedral trick,
/// accumulating centralizing elements until the order reaches `target`.
///
/// For a random `g`, let `x = rho · rho^g`. If `x` has odd order `m`, then
/// `y = x^{(m+1)/2}` conjugates `rho` to `rho^g`, so `y · g⁻¹` centralizes `rho`.
pub fn centralizer_of_involution(
    g: &PermutationGroup,
    rho: &Permutation,
    target: &BigUint,
    seed: u64,
    cap: usize,
    config: &BsgsConfig,
) -> Result<PermutationGroup> {
    if !rho.is_involution() || !g.contains(rho) {
        return Err(Error::Precondition("expected an involution of the group".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = vec![rho.clone()];
    let mut h = PermutationGroup::with_config(gens.clone(), config)?;
    for _ in 0..cap {
        if h.order() == target {
            return Ok(h);
        }
        let r = g.random_element(&mut rng);
        let x = rho.then(&rho.conjugate_by(&r));
        let m = x.order();
        if m % 2 == 0 {
            continue;
        }
        let c = x.pow(((m + 1) / 2) as i64).then(&r.inverse());
        debug_assert!(c.commutes_with(rho));
        if h.contains(&c) {
            continue;
        }
        gens.push(c);
        h = PermutationGroup::with_config(gens.clone(), config)?;
        if h.order() > target {
            return Err(Error::Verification(format!(
                "centralizer order {} exceeds the expected {}",
                h.order(),
                target
            )));
        }
    }
    if h.order() == target {
        return Ok(h);
    }
    Err(Error::IterationCap { cap, detail: format!("centralizer order reached {} of {}", h.order(), target) })
}

/// Elements of `g` normalizing `h`, as a group. Enumerates all of `g`.
pub fn normalizer_bruteforce(g: &PermutationGroup, h: &PermutationGroup, bound: u64) -> Result<PermutationGroup> {
    check_bound(g, bound)?;
    let hgens = h.generators().to_vec();
    let mut elems = Vec::new();
    g.for_each_element(|x| {
        if hgens.iter().all(|s| h.contains(&s.conjugate_by(x))) {
            elems.push(x.clone());
        }
    });
    group_from_elements(&elems, g.degree(), &BsgsConfig::default())
}

/// Smallest normal subgroup of `g` containing `elems`.
pub fn normal_closure(g: &PermutationGroup, elems: &[Permutation], config: &BsgsConfig) -> Result<PermutationGroup> {
    let mut gens: Vec<Permutation> = elems.iter().filter(|e| !e.is_identity()).cloned().collect();
    if gens.is_empty() {
        return PermutationGroup::with_config(vec![g.identity()], config);
    }
    let mut n = PermutationGroup::with_config(gens.clone(), config)?;
    loop {
        let mut grown = false;
        'outer: for a in n.generators().to_vec() {
            for s in g.generators() {
                let c = a.conjugate_by(s);
                if !n.contains(&c) {
                    gens.push(c);
                    n = PermutationGroup::with_config(gens.clone(), config)?;
                    grown = true;
                    break 'outer;
                }
            }
        }
        if !grown {
            return Ok(n);
        }
    }
}

/// `[a, b] = a⁻¹ b⁻¹ a b`.
pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    a.inverse().then(&b.inverse()).then(a).then(b)
}

/// The derived subgroup, as the normal closure of the generator commutators.
pub fn derived_subgroup(g: &PermutationGroup, config: &BsgsConfig) -> Result<PermutationGroup> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            comms.push(commutator(a, b));
        }
    }
    normal_closure(g, &comms, config)
}

/// Order of the center, by enumeration.
pub fn center_order(g: &PermutationGroup, bound: u64) -> Result<u64> {
    check_bound(g, bound)?;
    let gens = g.generators().to_vec();
    let mut count = 0;
    g.for_each_element(|x| {
        if gens.iter().all(|s| s.commutes_with(x)) {
            count += 1;
        }
    });
    Ok(count)
}

/// Action of `g` on the right cosets of `h`, returned as permutations of the
/// coset indices (one per generator of `g`). Coset 0 is `h` itself.
pub fn right_coset_action(g: &PermutationGroup, h: &PermutationGroup, bound: u64) -> Result<Vec<Permutation>> {
    check_bound(g, bound)?;
    let helems = h.elements(bound)?;
    let canonical = |x: &Permutation| -> Permutation { helems.iter().map(|a| a.then(x)).min().expect("h nonempty") };
    let mut index: HashMap<Permutation, u32> = HashMap::new();
    let mut reps: Vec<Permutation> = Vec::new();
    let id = g.identity();
    index.insert(canonical(&id), 0);
    reps.push(id);
    let mut idx = 0;
    while idx < reps.len() {
        for s in g.generators() {
            let y = reps[idx].then(s);
            let c = canonical(&y);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(c) {
                e.insert(reps.len() as u32);
                reps.push(y);
            }
        }
        idx += 1;
    }
    g.generators()
        .iter()
        .map(|s| {
            let images = reps.iter().map(|r| index[&canonical(&r.then(s))]).collect();
            Permutation::new(images)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermutationGroup {
        let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        PermutationGroup::new(vec![Permutation::new(cycle).unwrap(), Permutation::from_cycles(n, &[&[0, 1]]).unwrap()])
            .unwrap()
    }

    #[test]
    fn involutions_of_small_groups() {
        // S4: 6 transpositions + 3 double transpositions.
        assert_eq!(involutions(&sym(4), ENUMERATION_BOUND).unwrap().len(), 9);
        let c3 = PermutationGroup::new(vec![Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()]).unwrap();
        assert!(involutions(&c3, ENUMERATION_BOUND).unwrap().is_empty());
        assert!(involutions(&sym(9), 1000).is_err());
    }

    #[test]
    fn class_orbit_counts() {
        let s5 = sym(5);
        let t = Permutation::from_cycles(5, &[&[0, 1]]).unwrap();
        let r = involution_class_orbit(&s5, &t, usize::MAX, |_| {}).unwrap();
        assert_eq!(r, OrbitCount { count: 10, complete: true });
        let partial = involution_class_orbit(&s5, &t, 3 * (5 * 4 + 64), |_| {}).unwrap();
        assert!(!partial.complete);
        let c2 = PermutationGroup::new(vec![t.clone()]).unwrap();
        assert_eq!(involution_class_orbit(&c2, &t, usize::MAX, |_| {}).unwrap().count, 1);
    }

    #[test]
    fn set_orbit_of_pair() {
        let s5 = sym(5);
        assert_eq!(set_orbit(s5.generators(), &[3, 1]).len(), 10);
    }

    #[test]
    fn centralizers_agree() {
        let s6 = sym(6);
        let t = Permutation::from_cycles(6, &[&[0, 1], &[2, 3]]).unwrap();
        let brute = centralizer_bruteforce(&s6, &t, ENUMERATION_BOUND).unwrap();
        // C2 wr C2 × S2.
        assert_eq!(brute.order_u64(), Some(16));
        let rand =
            centralizer_of_involution(&s6, &t, brute.order(), 1, 10_000, &BsgsConfig::default()).unwrap();
        assert_eq!(rand.order(), brute.order());
        assert!(rand.generators().iter().all(|c| c.commutes_with(&t)));
    }

    #[test]
    fn derived_and_center() {
        let s4 = sym(4);
        let d = derived_subgroup(&s4, &BsgsConfig::default()).unwrap();
        assert_eq!(d.order_u64(), Some(12));
        let dd = derived_subgroup(&d, &BsgsConfig::default()).unwrap();
        assert_eq!(dd.order_u64(), Some(4));
        assert_eq!(center_order(&s4, ENUMERATION_BOUND).unwrap(), 1);
        assert_eq!(center_order(&dd, ENUMERATION_BOUND).unwrap(), 4);
    }

    #[test]
    fn normalizer_of_sylow() {
        let s4 = sym(4);
        let c3 = PermutationGroup::new(vec![Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap()]).unwrap();
        assert_eq!(normalizer_bruteforce(&s4, &c3, NORMALIZER_BOUND).unwrap().order_u64(), Some(6));
        assert_eq!(normalizer_bruteforce(&s4, &s4, NORMALIZER_BOUND).unwrap().order_u64(), Some(24));
    }

    #[test]
    fn coset_action_of_point_stabilizer() {
        let s4 = sym(4);
        let stab = PermutationGroup::new(vec![
            Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap(),
            Permutation::from_cycles(4, &[&[1, 2]]).unwrap(),
        ])
        .unwrap();
        let gens = right_coset_action(&s4, &stab, ENUMERATION_BOUND).unwrap();
        assert_eq!(gens[0].degree(), 4);
        assert_eq!(PermutationGroup::new(gens).unwrap().order_u64(), Some(24));
    }
}
