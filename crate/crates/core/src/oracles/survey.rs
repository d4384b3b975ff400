//! Exhaustive surveys of dihedral subgroups generated by involution pairs, and
//! brute-force normalizers through a conjugation table on involutions.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, Permutation, PermutationGroup};

/// The involutions of a group, indexed.
#[derive(Debug, Clone)]
pub struct InvolutionTable {
    pub involutions: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl InvolutionTable {
    pub fn new(involutions: Vec<Permutation>) -> Self {
        let index = involutions.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        Self { involutions, index }
    }

    pub fn of_group(g: &PermutationGroup, bound: u64) -> Result<Self> {
        Ok(Self::new(perm::involutions(g, bound)?))
    }

    pub fn len(&self) -> usize {
        self.involutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.involutions.is_empty()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }
}

/// A dihedral subgroup D_{2d}, d ≥ 3, identified by its set of involutions
/// (which generates it).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DihedralSubgroup {
    pub d: u64,
    /// A generating pair of involution indices.
    pub pair: (u32, u32),
    /// Sorted involution indices.
    pub involutions: Vec<u32>,
}

/// Every ⟨σ, τ⟩ with ord(στ) ≥ 3 over unordered involution pairs, deduplicated.
pub fn dihedral_subgroups(table: &InvolutionTable) -> Vec<DihedralSubgroup> {
    let inv = &table.involutions;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    for i in 0..inv.len() {
        for j in i + 1..inv.len() {
            let x = inv[i].then(&inv[j]);
            let d = x.order();
            if d < 3 {
                continue;
            }
            let mut set = Vec::with_capacity(d as usize + 1);
            let mut p = x.clone();
            let mut refl = inv[i].clone();
            for k in 0..d {
                set.push(table.index_of(&refl).expect("reflections are involutions of the group"));
                if d % 2 == 0 && 2 * (k + 1) == d {
                    set.push(table.index_of(&p).expect("central involution of the group"));
                }
                refl = refl.then(&x);
                p = p.then(&x);
            }
            set.sort_unstable();
            if seen.insert(set.clone()) {
                out.push(DihedralSubgroup { d, pair: (i as u32, j as u32), involutions: set });
            }
        }
    }
    out
}

/// Survey of realized dihedral parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralSurvey {
    pub involution_count: usize,
    /// Number of distinct D_{2d} subgroups per d.
    pub subgroups_per_d: BTreeMap<u64, usize>,
}

impl DihedralSurvey {
    pub fn realized_d(&self) -> BTreeSet<u64> {
        self.subgroups_per_d.keys().copied().collect()
    }
}

pub fn dihedral_subgroup_survey(g: &PermutationGroup, bound: u64) -> Result<(InvolutionTable, Vec<DihedralSubgroup>, DihedralSurvey)> {
    let table = InvolutionTable::of_group(g, bound)?;
    if table.len() > 10_000 {
        return Err(Error::Precondition("more than 10⁴ involutions".into()));
    }
    let subs = dihedral_subgroups(&table);
    let mut per_d = BTreeMap::new();
    for s in &subs {
        *per_d.entry(s.d).or_insert(0) += 1;
    }
    let survey = DihedralSurvey { involution_count: table.len(), subgroups_per_d: per_d };
    Ok((table, subs, survey))
}

/// All elements of a group with their conjugation action on the involutions.
pub struct ConjugationTable {
    pub elements: Vec<Permutation>,
    /// `conj[g * n + i]` is the index of involution i conjugated by element g.
    conj: Vec<u32>,
    n: usize,
}

impl ConjugationTable {
    pub fn new(g: &PermutationGroup, table: &InvolutionTable, bound: u64) -> Result<Self> {
        let elements = g.elements(bound)?;
        let n = table.len();
        let mut conj = Vec::with_capacity(elements.len() * n);
        for x in &elements {
            for s in &table.involutions {
                conj.push(table.index_of(&s.conjugate_by(x)).expect("conjugate of an involution"));
            }
        }
        Ok(Self { elements, conj, n })
    }

    #[inline]
    pub fn image(&self, g: usize, i: u32) -> u32 {
        self.conj[g * self.n + i as usize]
    }

    /// Indices of elements mapping the involution set `invs` into itself; for a
    /// subgroup generated by `invs` this is its normalizer.
    pub fn normalizer(&self, invs: &[u32]) -> Vec<usize> {
        let mut mask = vec![false; self.n];
        for &i in invs {
            mask[i as usize] = true;
        }
        (0..self.elements.len()).filter(|&g| invs.iter().all(|&i| mask[self.image(g, i) as usize])).collect()
    }
}

/// Cheap structural fingerprint of a small group given as an element list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u64,
    pub involutions: u64,
    pub center: u64,
    pub derived: u64,
    pub generated_by_involutions: bool,
}

/// Closure of `gens` under products (the elements must lie in a finite group).
fn closure(gens: &[Permutation], degree: usize) -> HashSet<Permutation> {
    let id = Permutation::identity(degree);
    let mut set: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.then(g);
            if set.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    set
}

pub fn fingerprint(elems: &[Permutation]) -> Fingerprint {
    let degree = elems[0].degree();
    let invs: Vec<Permutation> = elems.iter().filter(|x| x.is_involution()).cloned().collect();
    let center = elems.iter().filter(|z| elems.iter().all(|x| z.commutes_with(x))).count() as u64;
    let mut comms: HashSet<Permutation> = HashSet::new();
    for a in elems {
        for b in elems {
            comms.insert(perm::commutator(a, b));
        }
    }
    let comms: Vec<Permutation> = comms.into_iter().collect();
    let derived = closure(&comms, degree).len() as u64;
    let generated_by_involutions = closure(&invs, degree).len() == elems.len();
    Fingerprint { order: elems.len() as u64, involutions: invs.len() as u64, center, derived, generated_by_involutions }
}

/// Fingerprint of C₂ × D_{2k} in closed form.
pub fn c2_times_dihedral_fingerprint(k: u64) -> Fingerprint {
    let even = (k % 2 == 0) as u64;
    Fingerprint {
        order: 4 * k,
        involutions: 2 * (k + even + 1) - 1,
        center: 2 * (1 + even),
        derived: if even == 1 { k / 2 } else { k },
        generated_by_involutions: true,
    }
}

/// Expected N_C(D_{2d}) in C = C₂ × PSL(2, q), q ≡ 3 (mod 8), as C₂ × D_{2k};
/// returns k, or `None` when 2d divides neither q − 1 nor q + 1.
pub fn normc2psl_expected_k(d: u64, q: u64) -> Option<u64> {
    for m in [q - 1, q + 1] {
        if m % (2 * d) == 0 {
            let cofactor = m / (2 * d);
            return Some(if d % 2 == 0 || cofactor % 2 == 1 { d } else { 2 * d });
        }
    }
    None
}

/// Verdict for one dihedral subgroup of C₂ × PSL(2, q).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormalizerVerdict {
    pub d: u64,
    pub pair: (u32, u32),
    pub observed: Fingerprint,
    /// `None` outside the hypothesis 2d | q ± 1.
    pub expected: Option<Fingerprint>,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Normc2pslReport {
    pub q: u64,
    pub involution_count: usize,
    pub subgroups_per_d: BTreeMap<u64, usize>,
    /// Distinct observed fingerprints per d.
    pub fingerprints_per_d: BTreeMap<u64, Vec<Fingerprint>>,
    /// d values outside the hypothesis, reported but not tested against the case analysis.
    pub outside_hypothesis: Vec<u64>,
    pub mismatches: Vec<NormalizerVerdict>,
    /// Equal-order dihedral subgroups have equal normalizer order and involution count.
    pub invariance_holds: bool,
    pub pass: bool,
}

/// Brute-force normalizers of every dihedral subgroup of `c` = C₂ × PSL(2, q).
pub fn verify_normc2psl(c: &PermutationGroup, q: u64, bound: u64) -> Result<Normc2pslReport> {
    let (table, subs, survey) = dihedral_subgroup_survey(c, bound)?;
    let conj = ConjugationTable::new(c, &table, bound)?;
    let mut fingerprints_per_d: BTreeMap<u64, BTreeSet<Fingerprint>> = BTreeMap::new();
    let mut invariants_per_d: BTreeMap<u64, BTreeSet<(u64, u64)>> = BTreeMap::new();
    let mut mismatches = Vec::new();
    let mut cache: HashMap<Vec<usize>, Fingerprint> = HashMap::new();
    for s in &subs {
        let n = conj.normalizer(&s.involutions);
        let observed = *cache.entry(n.clone()).or_insert_with(|| {
            let elems: Vec<Permutation> = n.iter().map(|&g| conj.elements[g].clone()).collect();
            fingerprint(&elems)
        });
        let expected = normc2psl_expected_k(s.d, q).map(c2_times_dihedral_fingerprint);
        let agree = expected.is_none_or(|e| e == observed);
        fingerprints_per_d.entry(s.d).or_default().insert(observed);
        invariants_per_d.entry(s.d).or_default().insert((observed.order, observed.involutions));
        if !agree {
            mismatches.push(NormalizerVerdict { d: s.d, pair: s.pair, observed, expected, agree });
        }
    }
    let outside_hypothesis: Vec<u64> =
        survey.subgroups_per_d.keys().copied().filter(|&d| normc2psl_expected_k(d, q).is_none()).collect();
    let invariance_holds = invariants_per_d.values().all(|v| v.len() == 1);
    Ok(Normc2pslReport {
        q,
        involution_count: table.len(),
        subgroups_per_d: survey.subgroups_per_d,
        fingerprints_per_d: fingerprints_per_d.into_iter().map(|(d, v)| (d, v.into_iter().collect())).collect(),
        outside_hypothesis,
        pass: mismatches.is_empty() && invariance_holds,
        mismatches,
        invariance_holds,
    })
}

/// The PSL(2, q) dihedral-parameter claims, checked against a survey.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivdReport {
    pub q: u64,
    pub realized_d: Vec<u64>,
    pub subgroups_per_d: BTreeMap<u64, usize>,
    /// Every realized 2d divides q − 1 or q + 1.
    pub divides_q_pm_1: bool,
    /// No realized d is divisible by 4.
    pub no_d_divisible_by_4: bool,
    /// Every realized even d has 2d | q + 1.
    pub even_d_divide_q_plus_1: bool,
    pub pass: bool,
}

pub fn verify_divd(psl: &PermutationGroup, q: u64, bound: u64) -> Result<DivdReport> {
    let (_, _, survey) = dihedral_subgroup_survey(psl, bound)?;
    let realized: Vec<u64> = survey.realized_d().into_iter().collect();
    let divides_q_pm_1 = realized.iter().all(|&d| (q - 1) % (2 * d) == 0 || (q + 1) % (2 * d) == 0);
    let no_d_divisible_by_4 = realized.iter().all(|&d| d % 4 != 0);
    let even_d_divide_q_plus_1 = realized.iter().filter(|&&d| d % 2 == 0).all(|&d| (q + 1) % (2 * d) == 0);
    Ok(DivdReport {
        q,
        pass: divides_q_pm_1 && no_d_divisible_by_4 && even_d_divide_q_plus_1,
        realized_d: realized,
        subgroups_per_d: survey.subgroups_per_d,
        divides_q_pm_1,
        no_d_divisible_by_4,
        even_d_divide_q_plus_1,
    })
}

/// Dihedral parameters of a group and whether N⁰(D) = D for each dihedral D.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Psl28Report {
    pub realized_d: Vec<u64>,
    pub subgroups_per_d: BTreeMap<u64, usize>,
    /// Normalizer orders observed per d.
    pub normalizer_orders: BTreeMap<u64, Vec<u64>>,
    /// Subgroups whose normalizer contains involutions outside them.
    pub n_zero_failures: Vec<DihedralSubgroup>,
    pub pass: bool,
}

/// For D generated by its involutions, N⁰(D) = D exactly when the involutions
/// of N(D) are those of D.
pub fn verify_psl28(g: &PermutationGroup, expected_d: &[u64], bound: u64) -> Result<Psl28Report> {
    let (table, subs, survey) = dihedral_subgroup_survey(g, bound)?;
    let conj = ConjugationTable::new(g, &table, bound)?;
    let mut normalizer_orders: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
    let mut failures = Vec::new();
    for s in &subs {
        let n = conj.normalizer(&s.involutions);
        normalizer_orders.entry(s.d).or_default().insert(n.len() as u64);
        let mut invs: Vec<u32> =
            n.iter().filter(|&&x| conj.elements[x].is_involution()).map(|&x| table.index_of(&conj.elements[x]).unwrap()).collect();
        invs.sort_unstable();
        if invs != s.involutions {
            failures.push(s.clone());
        }
    }
    let realized: Vec<u64> = survey.realized_d().into_iter().collect();
    Ok(Psl28Report {
        pass: failures.is_empty() && realized == expected_d,
        realized_d: realized,
        subgroups_per_d: survey.subgroups_per_d,
        normalizer_orders: normalizer_orders.into_iter().map(|(d, v)| (d, v.into_iter().collect())).collect(),
        n_zero_failures: failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::dihedral::dihedral_generators;

    fn direct_c2_dihedral(k: u64) -> Vec<Permutation> {
        let (r, s) = dihedral_generators(k);
        let n = r.degree();
        let ext = |p: &Permutation| Permutation::new(p.images().iter().copied().chain([n as u32, n as u32 + 1]).collect()).unwrap();
        let z = Permutation::from_cycles(n + 2, &[&[n as u32, n as u32 + 1]]).unwrap();
        PermutationGroup::new(vec![ext(&r), ext(&s), z]).unwrap().elements(1000).unwrap()
    }

    #[test]
    fn closed_form_fingerprint_matches_explicit_groups() {
        for k in 3..=16 {
            assert_eq!(fingerprint(&direct_c2_dihedral(k)), c2_times_dihedral_fingerprint(k), "k = {k}");
        }
    }

    #[test]
    fn expected_normalizer_cases_at_27() {
        assert_eq!(normc2psl_expected_k(13, 27), Some(13));
        assert_eq!(normc2psl_expected_k(7, 27), Some(14));
        assert_eq!(normc2psl_expected_k(14, 27), Some(14));
        assert_eq!(normc2psl_expected_k(26, 27), None);
    }

    #[test]
    fn survey_of_symmetric_group() {
        // S4: D6 subgroups are the 4 point stabilizers, D8 the 3 Sylow 2-subgroups.
        let s4 = PermutationGroup::new(vec![
            Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
        ])
        .unwrap();
        let (_, _, survey) = dihedral_subgroup_survey(&s4, 1000).unwrap();
        assert_eq!(survey.subgroups_per_d, BTreeMap::from([(3, 4), (4, 3)]));
    }
}
