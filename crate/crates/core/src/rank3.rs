//! Rank-3 string C-groups: a randomized construction inside R(q), the
//! involution-closure certificate for Ree(3), and an exhaustive classifier for
//! small groups.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cgroup::{self, GeneratorTuple, IntersectionVerdict, StringCGroup};
use crate::error::{Error, Result};
use crate::oracles::{ConjugationTable, InvolutionTable};
use crate::perm::{self, BsgsConfig, Permutation, PermutationGroup};
use crate::ree::ReeGroup;

/// Draws allowed at each randomized stage.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RetryBudget {
    /// Involution pairs drawn per attempt while looking for ord(ρ₀ρ₁) = β.
    pub pair_draws: usize,
    /// Random draws inside the centralizer search.
    pub centralizer_draws: usize,
    /// Fresh (ρ₀, ρ₁) attempts before giving up.
    pub attempts: usize,
}

impl Default for RetryBudget {
    fn default() -> Self {
        Self { pair_draws: 400, centralizer_draws: 2000, attempts: 8 }
    }
}

/// Fixed-point blocks of ρ₀, ρ₁, ρ₂ and their meets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockWitness {
    pub b0: Vec<u32>,
    pub b1: Vec<u32>,
    pub b2: Vec<u32>,
    pub b0_meet_b1: usize,
    pub b0_meet_b2: usize,
    pub b1_meet_b2: usize,
}

/// Per-seed statistics of the search.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ConstructionStats {
    pub attempts: usize,
    pub pair_draws: usize,
    #[serde(with = "crate::bignum")]
    pub centralizer_order: BigUint,
    pub centralizer_involutions: usize,
    pub rho2_candidates_tried: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub seed: u64,
    pub tuple: GeneratorTuple,
    pub schlafli: Vec<u64>,
    #[serde(with = "crate::bignum")]
    pub generated_order: BigUint,
    pub generation_certificate: perm::OrderCertificate,
    pub intersection_ok: bool,
    pub coprime_fast_path: bool,
    pub block_witness: BlockWitness,
    /// ρ₀ normalizes ⟨ρ₂⟩ but not ⟨ρ₁, ρ₂⟩.
    pub rho0_condition: bool,
    pub stats: ConstructionStats,
}

impl ConstructionCertificate {
    pub fn is_valid(&self, g: &ReeGroup) -> bool {
        let n = self.schlafli[1];
        self.schlafli[0] as u128 == g.params.beta
            && is_power_of_three(n)
            && &self.generated_order == g.group.order()
            && self.intersection_ok
            && self.block_witness.b0_meet_b1 == 0
            && self.block_witness.b0_meet_b2 == 0
            && self.block_witness.b1_meet_b2 == 1
    }
}

pub fn is_power_of_three(mut n: u64) -> bool {
    if n < 3 {
        return false;
    }
    while n % 3 == 0 {
        n /= 3;
    }
    n == 1
}

fn meet(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Involutions of a group through base images only: g² = 1 iff g² fixes the base.
fn involutions_by_base_images(c: &PermutationGroup) -> Vec<Permutation> {
    let base = c.base();
    let lens = c.orbit_lengths();
    let mut choice = vec![0usize; lens.len()];
    let mut out = Vec::new();
    loop {
        let nontrivial = choice.iter().any(|&x| x != 0);
        if nontrivial
            && base.iter().all(|&b| c.apply_choice(&choice, c.apply_choice(&choice, b)) == b)
        {
            out.push(c.element_from_choice(&choice));
        }
        // Mixed-radix increment, last level fastest.
        let mut i = lens.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < lens[i] {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Randomized construction of a rank-3 string C-group ⟨ρ₀, ρ₁, ρ₂⟩ = R(q), q > 3:
/// ord(ρ₀ρ₁) = q + 1 + 3^{e+1}, ρ₂ a centralizing involution of ρ₀ whose block
/// meets that of ρ₁ in one point, and ord(ρ₁ρ₂) a power of 3.
pub fn construct_rank3(g: &ReeGroup, seed: u64, budget: &RetryBudget) -> Result<ConstructionCertificate> {
    if g.params.q == 3 {
        return Err(Error::Precondition("the construction needs q > 3".into()));
    }
    let beta = g.params.beta as u64;
    let q = g.params.q;
    let target = BigUint::from(q * (q * q - 1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = ConstructionStats::default();
    for _attempt in 0..budget.attempts {
        stats.attempts += 1;
        let mut pair = None;
        for _ in 0..budget.pair_draws {
            stats.pair_draws += 1;
            let r0 = perm::random_involution(&g.group, &mut rng, 100)?;
            let r1 = perm::random_involution(&g.group, &mut rng, 100)?;
            if r0.then(&r1).order() == beta {
                pair = Some((r0, r1));
                break;
            }
        }
        let Some((r0, r1)) = pair else { continue };
        let b0 = g.block_of(&r0)?;
        let b1 = g.block_of(&r1)?;
        if meet(&b0, &b1) != 0 {
            continue;
        }
        let config = BsgsConfig::default().with_seed(rng.gen()).with_base_prefix(b0[..3].to_vec());
        let c = perm::centralizer_of_involution(&g.group, &r0, &target, rng.gen(), budget.centralizer_draws, &config)?;
        stats.centralizer_order = c.order().clone();
        let invs = involutions_by_base_images(&c);
        stats.centralizer_involutions = invs.len();
        for r2 in invs.iter().filter(|x| **x != r0) {
            let b2 = r2.fixed_points();
            if meet(&b1, &b2) != 1 || meet(&b0, &b2) != 0 {
                continue;
            }
            if !is_power_of_three(r1.then(r2).order()) {
                continue;
            }
            stats.rho2_candidates_tried += 1;
            let tuple = GeneratorTuple::new(vec![r0.clone(), r1.clone(), r2.clone()])?;
            let gen_config = BsgsConfig::default().with_seed(rng.gen()).with_row_budget(0);
            let h = g.group.subgroup(tuple.generators.clone(), &gen_config)?;
            if h.order() != g.group.order() {
                continue;
            }
            let s = cgroup::check_string(&tuple);
            if !s.string {
                return Err(Error::Verification("centralizing involutions fail to commute".into()));
            }
            let inter: IntersectionVerdict = cgroup::check_intersection(&tuple)?;
            let rho0_condition = cgroup::rho0_normalizer_condition(&tuple)?;
            let block_witness = BlockWitness {
                b0_meet_b1: meet(&b0, &b1),
                b0_meet_b2: meet(&b0, &b2),
                b1_meet_b2: meet(&b1, &b2),
                b0: b0.clone(),
                b1: b1.clone(),
                b2,
            };
            return Ok(ConstructionCertificate {
                seed,
                tuple,
                schlafli: s.schlafli,
                generated_order: h.order().clone(),
                generation_certificate: h.certificate(),
                intersection_ok: inter.holds,
                coprime_fast_path: inter.coprime_fast_path,
                block_witness,
                rho0_condition,
                stats,
            });
        }
    }
    Err(Error::IterationCap {
        cap: budget.attempts,
        detail: format!(
            "no certificate after {} attempts ({} pair draws, {} ρ₂ candidates)",
            stats.attempts, stats.pair_draws, stats.rho2_candidates_tried
        ),
    })
}

/// Independent constructions for each seed, in seed order.
pub fn construct_rank3_batch(g: &ReeGroup, seeds: &[u64], budget: &RetryBudget) -> Vec<Result<ConstructionCertificate>> {
    seeds.par_iter().map(|&s| construct_rank3(g, s, budget)).collect()
}

/// Certificate that a group is not generated by its involutions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NotCGroupCertificate {
    pub involution_count: usize,
    #[serde(with = "crate::bignum")]
    pub closure_order: BigUint,
    #[serde(with = "crate::bignum")]
    pub group_order: BigUint,
    #[serde(with = "crate::bignum")]
    pub index: BigUint,
    pub closure_equals_derived: bool,
}

impl NotCGroupCertificate {
    pub fn proves_not_c_group(&self) -> bool {
        self.closure_order < self.group_order
    }
}

/// The subgroup generated by all involutions of Ree(3), compared with the derived subgroup.
pub fn ree3_not_cgroup(g: &ReeGroup) -> Result<NotCGroupCertificate> {
    if g.params.q != 3 {
        return Err(Error::Precondition("q = 3 required".into()));
    }
    let invs = perm::involutions(&g.group, perm::ENUMERATION_BOUND)?;
    let config = BsgsConfig::default();
    let closure = g.group.subgroup(invs.clone(), &config)?;
    if closure.order() == g.group.order() {
        return Err(Error::Verification("the involutions generate the whole group".into()));
    }
    let derived = perm::derived_subgroup(&g.group, &config)?;
    let closure_equals_derived =
        closure.order() == derived.order() && derived.generators().iter().all(|x| closure.contains(x));
    Ok(NotCGroupCertificate {
        involution_count: invs.len(),
        closure_order: closure.order().clone(),
        group_order: g.group.order().clone(),
        index: g.group.order() / closure.order(),
        closure_equals_derived,
    })
}

/// One isomorphism class of rank-3 string C-group representations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub schlafli: Vec<u64>,
    /// Involution indices of the canonical representative.
    pub canonical: [u32; 3],
    pub tuple: GeneratorTuple,
    /// Number of ordered triples in the automorphism orbit.
    pub orbit_size: usize,
    /// Index of the dual class in the catalog.
    pub dual: usize,
    pub self_dual: bool,
    pub face_counts: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Rank3Catalog {
    pub involution_count: usize,
    pub ordered_triples: usize,
    pub entries: Vec<CatalogEntry>,
    /// Classes under automorphisms (polytopes up to isomorphism).
    pub classes: usize,
    /// Classes when each polytope is identified with its dual.
    pub classes_up_to_duality: usize,
    /// One entry index per class up to duality.
    pub representatives: Vec<usize>,
}

/// All rank-3 string C-group generating triples of `g`, up to the conjugation
/// action of `aut` (a group containing `g` as a normal subgroup).
pub fn classify_rank3(g: &PermutationGroup, aut: &PermutationGroup) -> Result<Rank3Catalog> {
    let table = InvolutionTable::of_group(g, perm::ENUMERATION_BOUND)?;
    if table.len() > 1000 {
        return Err(Error::Precondition("more than 10³ involutions".into()));
    }
    let conj = ConjugationTable::new(aut, &table, perm::ENUMERATION_BOUND)?;
    let n = table.len() as u32;
    let inv = &table.involutions;
    let commute: Vec<Vec<bool>> =
        inv.iter().map(|a| inv.iter().map(|b| a.commutes_with(b)).collect()).collect();
    let canon = |t: [u32; 3]| -> [u32; 3] {
        (0..conj.elements.len()).map(|a| t.map(|i| conj.image(a, i))).min().expect("aut nonempty")
    };
    // Orbits of string triples with non-commuting adjacent pairs, partitioned
    // by the first involution and merged at the end.
    let partial: Vec<BTreeMap<[u32; 3], usize>> = (0..n)
        .into_par_iter()
        .map(|i0| {
            let mut local = BTreeMap::new();
            for i2 in 0..n {
                if i2 == i0 || !commute[i0 as usize][i2 as usize] {
                    continue;
                }
                for i1 in 0..n {
                    if commute[i0 as usize][i1 as usize] || commute[i1 as usize][i2 as usize] {
                        continue;
                    }
                    *local.entry(canon([i0, i1, i2])).or_insert(0) += 1;
                }
            }
            local
        })
        .collect();
    let mut orbits: BTreeMap<[u32; 3], usize> = BTreeMap::new();
    for local in partial {
        for (k, v) in local {
            *orbits.entry(k).or_insert(0) += v;
        }
    }
    let config = BsgsConfig::default();
    let mut passing: Vec<([u32; 3], usize, StringCGroup)> = Vec::new();
    for (&rep, &size) in &orbits {
        let tuple = GeneratorTuple::new(rep.iter().map(|&i| inv[i as usize].clone()).collect())?;
        let sg = StringCGroup::verify(&tuple, Some(g), &config)?;
        if sg.verified && &sg.group_order == g.order() {
            passing.push((rep, size, sg));
        }
    }
    let position: HashMap<[u32; 3], usize> = passing.iter().enumerate().map(|(i, (c, _, _))| (*c, i)).collect();
    let mut entries = Vec::with_capacity(passing.len());
    for (rep, size, sg) in &passing {
        let dual_key = canon([rep[2], rep[1], rep[0]]);
        let dual = *position
            .get(&dual_key)
            .ok_or_else(|| Error::Verification("dual of a string C-group failed verification".into()))?;
        entries.push(CatalogEntry {
            schlafli: sg.schlafli.clone(),
            canonical: *rep,
            tuple: sg.tuple.clone(),
            orbit_size: *size,
            dual,
            self_dual: dual == entries.len(),
            face_counts: sg.face_counts().iter().map(|c| u64::try_from(c).unwrap_or(u64::MAX)).collect(),
        });
    }
    // Of each dual pair keep the one with the smaller type.
    let key = |i: usize| (entries[i].schlafli.clone(), entries[i].canonical);
    let representatives: Vec<usize> = (0..entries.len()).filter(|&i| key(i) <= key(entries[i].dual)).collect();
    Ok(Rank3Catalog {
        involution_count: table.len(),
        ordered_triples: entries.iter().map(|e| e.orbit_size).sum(),
        classes: entries.len(),
        classes_up_to_duality: representatives.len(),
        representatives,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_of_three() {
        assert!(is_power_of_three(3) && is_power_of_three(9) && is_power_of_three(27));
        assert!(!is_power_of_three(1) && !is_power_of_three(6) && !is_power_of_three(37));
    }

    #[test]
    fn sorted_meet() {
        assert_eq!(meet(&[1, 3, 5, 7], &[2, 3, 7, 9]), 2);
        assert_eq!(meet(&[], &[1]), 0);
    }

    #[test]
    fn base_image_involutions_match_enumeration() {
        let g = crate::ree::build_ree3().unwrap();
        let mut a = involutions_by_base_images(&g.group);
        let mut b = perm::involutions(&g.group, perm::ENUMERATION_BOUND).unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(a.len(), 63);
    }

    #[test]
    fn ree3_certificate() {
        let g = crate::ree::build_ree3().unwrap();
        let c = ree3_not_cgroup(&g).unwrap();
        assert_eq!(c.closure_order, BigUint::from(504u32));
        assert_eq!(c.index, BigUint::from(3u32));
        assert!(c.closure_equals_derived && c.proves_not_c_group());
    }

    #[test]
    fn construction_rejects_q3() {
        let g = crate::ree::build_ree3().unwrap();
        assert!(construct_rank3(&g, 1, &RetryBudget::default()).is_err());
    }
}
