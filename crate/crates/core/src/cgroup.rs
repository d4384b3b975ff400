//! String C-groups: string condition, intersection property, Schläfli type,
//! and the coset geometry of the associated polytope.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, BsgsConfig, Permutation, PermutationGroup};

/// Largest parabolic subgroup whose elements are listed explicitly.
pub const PARABOLIC_BOUND: u64 = 1_000_000;
/// Largest group whose coset geometry is materialised.
pub const GEOMETRY_BOUND: u64 = 100_000;

/// An ordered list of pairwise distinct involutions ρ₀, …, ρ_{n−1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorTuple {
    pub generators: Vec<Permutation>,
}

impl GeneratorTuple {
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        let degree = generators[0].degree();
        for (i, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
            if !g.is_involution() {
                return Err(Error::Precondition(format!("generator {i} is not an involution")));
            }
            if generators[..i].contains(g) {
                return Err(Error::Precondition(format!("generator {i} repeats an earlier one")));
            }
        }
        Ok(Self { generators })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn degree(&self) -> usize {
        self.generators[0].degree()
    }

    /// The dual tuple ρ_{n−1}, …, ρ₀.
    pub fn reversed(&self) -> Self {
        Self { generators: self.generators.iter().rev().cloned().collect() }
    }

    fn subset(&self, mask: u32) -> Vec<Permutation> {
        (0..self.rank()).filter(|i| mask >> i & 1 == 1).map(|i| self.generators[i].clone()).collect()
    }
}

/// Outcome of the string test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringVerdict {
    /// Non-adjacent generators commute.
    pub string: bool,
    /// Orders of ρ_{i−1}ρ_i.
    pub schlafli: Vec<u64>,
    /// Some Schläfli entry equals 2.
    pub degenerate: bool,
}

pub fn check_string(t: &GeneratorTuple) -> StringVerdict {
    let g = &t.generators;
    let n = g.len();
    let string = (0..n).all(|j| (j + 2..n).all(|k| g[j].commutes_with(&g[k])));
    let schlafli: Vec<u64> = (1..n).map(|i| g[i - 1].then(&g[i]).order()).collect();
    let degenerate = schlafli.contains(&2);
    StringVerdict { string, schlafli, degenerate }
}

/// Elements of the dihedral group ⟨a, b⟩ for involutions a ≠ b.
pub fn dihedral_elements(a: &Permutation, b: &Permutation) -> Vec<Permutation> {
    let x = a.then(b);
    let m = x.order();
    let mut out = Vec::with_capacity(2 * m as usize);
    let mut p = Permutation::identity(a.degree());
    for _ in 0..m {
        out.push(a.then(&p));
        out.push(p.clone());
        p = p.then(&x);
    }
    out
}

/// Element set of `⟨gens⟩`, using the dihedral shortcut for two involutions.
fn element_set(gens: &[Permutation], degree: usize) -> Result<HashSet<Permutation>> {
    match gens {
        [] => Ok(HashSet::from([Permutation::identity(degree)])),
        [a] => Ok(HashSet::from([Permutation::identity(degree), a.clone()])),
        [a, b] => Ok(dihedral_elements(a, b).into_iter().collect()),
        _ => Ok(PermutationGroup::new(gens.to_vec())?.elements(PARABOLIC_BOUND)?.into_iter().collect()),
    }
}

fn mask_label(mask: u32, rank: usize) -> String {
    let ids: Vec<String> = (0..rank).filter(|i| mask >> i & 1 == 1).map(|i| i.to_string()).collect();
    format!("<{}>", ids.join(","))
}

/// Outcome of the intersection test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionVerdict {
    pub holds: bool,
    /// Rank 3 with coprime Schläfli entries: ⟨ρ₀,ρ₁⟩ ∩ ⟨ρ₁,ρ₂⟩ has order dividing 2.
    pub coprime_fast_path: bool,
    /// Orders of the proper parabolic subgroups, keyed by generator indices.
    pub parabolic_orders: BTreeMap<String, u64>,
    /// First failing pair of index sets, if any.
    pub failure: Option<(String, String)>,
}

/// ⟨ρ_j : j ∈ J⟩ ∩ ⟨ρ_j : j ∈ K⟩ = ⟨ρ_j : j ∈ J ∩ K⟩ for all proper J, K, by
/// explicit element sets (each parabolic must have order ≤ [`PARABOLIC_BOUND`]).
pub fn check_intersection(t: &GeneratorTuple) -> Result<IntersectionVerdict> {
    let n = t.rank();
    if n > 8 {
        return Err(Error::Unsupported("rank above 8".into()));
    }
    let full = (1u32 << n) - 1;
    let mut sets: HashMap<u32, HashSet<Permutation>> = HashMap::new();
    for mask in 0..full {
        sets.insert(mask, element_set(&t.subset(mask), t.degree())?);
    }
    let parabolic_orders = sets.iter().map(|(&m, s)| (mask_label(m, n), s.len() as u64)).collect();
    let coprime_fast_path = n == 3 && {
        let s = check_string(t);
        s.schlafli[0].gcd(&s.schlafli[1]) == 1
    };
    for j in 0..full {
        for k in j + 1..full {
            if j & k == j || j & k == k {
                continue;
            }
            let meet = sets[&j].iter().filter(|x| sets[&k].contains(*x)).count();
            if meet != sets[&(j & k)].len() {
                return Ok(IntersectionVerdict {
                    holds: false,
                    coprime_fast_path,
                    parabolic_orders,
                    failure: Some((mask_label(j, n), mask_label(k, n))),
                });
            }
        }
    }
    Ok(IntersectionVerdict { holds: true, coprime_fast_path, parabolic_orders, failure: None })
}

/// A tuple with its string and intersection verdicts and generated order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StringCGroup {
    pub tuple: GeneratorTuple,
    pub schlafli: Vec<u64>,
    #[serde(with = "crate::bignum")]
    pub group_order: BigUint,
    pub string: bool,
    pub intersection: IntersectionVerdict,
    pub verified: bool,
}

impl StringCGroup {
    /// Verifies `t`; `ambient`, if given, is a group known to contain the tuple
    /// and lets the generated order be certified against it.
    pub fn verify(t: &GeneratorTuple, ambient: Option<&PermutationGroup>, config: &BsgsConfig) -> Result<Self> {
        let s = check_string(t);
        let group = match ambient {
            Some(a) => a.subgroup(t.generators.clone(), config)?,
            None => PermutationGroup::with_config(t.generators.clone(), config)?,
        };
        let intersection = if s.string {
            check_intersection(t)?
        } else {
            IntersectionVerdict { holds: false, coprime_fast_path: false, parabolic_orders: BTreeMap::new(), failure: None }
        };
        let verified = s.string && !s.degenerate && intersection.holds;
        Ok(Self {
            tuple: t.clone(),
            schlafli: s.schlafli,
            group_order: group.order().clone(),
            string: s.string,
            intersection,
            verified,
        })
    }

    /// Face counts |G| / |G_i| with G_i generated by all ρ_j, j ≠ i.
    pub fn face_counts(&self) -> Vec<BigUint> {
        let n = self.tuple.rank();
        let full = (1u32 << n) - 1;
        (0..n)
            .map(|i| {
                let label = mask_label(full & !(1 << i), n);
                &self.group_order / BigUint::from(self.intersection.parabolic_orders[&label])
            })
            .collect()
    }
}

/// The rank-3 involution condition: ρ₀ normalizes ⟨ρ₂⟩ but not ⟨ρ₁, ρ₂⟩.
pub fn rho0_normalizer_condition(t: &GeneratorTuple) -> Result<bool> {
    if t.rank() != 3 {
        return Err(Error::Precondition("rank 3 required".into()));
    }
    let [r0, r1, r2] = [&t.generators[0], &t.generators[1], &t.generators[2]];
    let normalizes_g01 = r2.conjugate_by(r0) == *r2;
    let g0: HashSet<Permutation> = dihedral_elements(r1, r2).into_iter().collect();
    let normalizes_g0 = g0.contains(&r1.conjugate_by(r0)) && g0.contains(&r2.conjugate_by(r0));
    Ok(normalizes_g01 && !normalizes_g0)
}

/// N⁰_G(H): the subgroup generated by the involutions of N_G(H).
pub fn n_zero(g: &PermutationGroup, h: &PermutationGroup, bound: u64) -> Result<PermutationGroup> {
    let n = perm::normalizer_bruteforce(g, h, bound)?;
    let invs = perm::involutions(&n, bound)?;
    perm::group_from_elements(&invs, g.degree(), &BsgsConfig::default())
}

/// Faces as right cosets of the maximal parabolics, with incidence and flags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CosetGeometry {
    pub rank: usize,
    /// Number of faces of each rank.
    pub face_counts: Vec<usize>,
    /// Incident pairs (face of rank i, face of rank j) for i < j, keyed "i-j".
    pub incidences: BTreeMap<String, usize>,
    pub flag_count: usize,
    pub thin: bool,
    pub residually_connected: bool,
}

/// Builds the coset geometry of a verified string C-group with |G| ≤ [`GEOMETRY_BOUND`].
pub fn build_coset_geometry(s: &StringCGroup) -> Result<CosetGeometry> {
    let order = u64::try_from(&s.group_order).ok().filter(|&o| o <= GEOMETRY_BOUND).ok_or_else(|| {
        Error::BoundExceeded { order: s.group_order.to_string(), bound: GEOMETRY_BOUND }
    })?;
    let t = &s.tuple;
    let n = t.rank();
    let g = PermutationGroup::new(t.generators.clone())?;
    let elems = g.elements(order)?;
    let id: HashMap<&Permutation, u32> = elems.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
    // coset[i][x] = index of the right coset G_i·x.
    let mut coset: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut face_counts = Vec::with_capacity(n);
    for i in 0..n {
        let gens: Vec<Permutation> = (0..n).filter(|&j| j != i).map(|j| t.generators[j].clone()).collect();
        let sub: Vec<Permutation> = element_set(&gens, t.degree())?.into_iter().collect();
        let mut c = vec![u32::MAX; elems.len()];
        let mut next = 0;
        for (xi, x) in elems.iter().enumerate() {
            if c[xi] != u32::MAX {
                continue;
            }
            for h in &sub {
                c[id[&h.then(x)] as usize] = next;
            }
            next += 1;
        }
        face_counts.push(next as usize);
        coset.push(c);
    }
    let mut incident: Vec<Vec<HashSet<(u32, u32)>>> = vec![vec![HashSet::new(); n]; n];
    for x in 0..elems.len() {
        for i in 0..n {
            for j in i + 1..n {
                incident[i][j].insert((coset[i][x], coset[j][x]));
            }
        }
    }
    let incidences =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| (format!("{i}-{j}"), incident[i][j].len())).collect();
    let is_incident = |i: usize, a: u32, j: usize, b: u32| -> bool {
        if i < j {
            incident[i][j].contains(&(a, b))
        } else {
            incident[j][i].contains(&(b, a))
        }
    };
    // Enumerate every chain of pairwise incident faces, one per rank.
    let mut flags: Vec<Vec<u32>> = Vec::new();
    let mut by_rank: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, fr) in by_rank.iter_mut().enumerate() {
        *fr = (0..face_counts[i] as u32).collect();
    }
    let mut partial: Vec<u32> = Vec::with_capacity(n);
    fn extend(
        r: usize,
        n: usize,
        by_rank: &[Vec<u32>],
        partial: &mut Vec<u32>,
        flags: &mut Vec<Vec<u32>>,
        inc: &dyn Fn(usize, u32, usize, u32) -> bool,
    ) {
        if r == n {
            flags.push(partial.clone());
            return;
        }
        for &f in &by_rank[r] {
            if (0..r).all(|s| inc(s, partial[s], r, f)) {
                partial.push(f);
                extend(r + 1, n, by_rank, partial, flags, inc);
                partial.pop();
            }
        }
    }
    extend(0, n, &by_rank, &mut partial, &mut flags, &is_incident);
    let flag_index: HashMap<&Vec<u32>, usize> = flags.iter().enumerate().map(|(i, f)| (f, i)).collect();
    // Thinness: exactly one j-adjacent flag for every flag and rank.
    let mut thin = true;
    let mut adjacent: Vec<Vec<usize>> = vec![vec![usize::MAX; n]; flags.len()];
    for (fi, f) in flags.iter().enumerate() {
        for j in 0..n {
            let others: Vec<u32> = (0..face_counts[j] as u32)
                .filter(|&b| b != f[j] && (0..n).filter(|&s| s != j).all(|s| is_incident(s, f[s], j, b)))
                .collect();
            if others.len() != 1 {
                thin = false;
            } else {
                let mut g = f.clone();
                g[j] = others[0];
                adjacent[fi][j] = flag_index[&g];
            }
        }
    }
    let residually_connected = thin && residues_connected(&flags, &adjacent, n);
    Ok(CosetGeometry { rank: n, face_counts, incidences, flag_count: flags.len(), thin, residually_connected })
}

/// For every set S of at most n−2 ranks, flags sharing their S-faces are
/// connected through adjacencies outside S.
fn residues_connected(flags: &[Vec<u32>], adjacent: &[Vec<usize>], n: usize) -> bool {
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize > n.saturating_sub(2) {
            continue;
        }
        let mut comp = vec![usize::MAX; flags.len()];
        let mut groups: HashMap<Vec<u32>, usize> = HashMap::new();
        for start in 0..flags.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let key: Vec<u32> = (0..n).filter(|s| mask >> s & 1 == 1).map(|s| flags[start][s]).collect();
            if groups.insert(key, start).is_some() {
                return false;
            }
            let mut stack = vec![start];
            comp[start] = start;
            while let Some(f) = stack.pop() {
                for (j, &a) in adjacent[f].iter().enumerate() {
                    if mask >> j & 1 == 0 && comp[a] == usize::MAX {
                        comp[a] = start;
                        stack.push(a);
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Symmetries of the cube as a subgroup of S8 acting on vertices labelled by bits.
    fn cube_tuple() -> GeneratorTuple {
        let refl = |f: &dyn Fn(u32) -> u32| Permutation::new((0..8).map(f).collect()).unwrap();
        // ρ₀ flips bit 0, ρ₁ swaps bits 0 and 1, ρ₂ swaps bits 1 and 2.
        let r0 = refl(&|v| v ^ 1);
        let r1 = refl(&|v| (v & !3) | ((v & 1) << 1) | ((v >> 1) & 1));
        let r2 = refl(&|v| (v & !6) | ((v & 2) << 1) | ((v >> 1) & 2));
        GeneratorTuple::new(vec![r0, r1, r2]).unwrap()
    }

    #[test]
    fn cube_is_a_string_c_group() {
        let t = cube_tuple();
        let s = StringCGroup::verify(&t, None, &BsgsConfig::default()).unwrap();
        assert_eq!(s.schlafli, vec![4, 3]);
        assert!(s.verified);
        assert_eq!(s.group_order, BigUint::from(48u32));
        let geo = build_coset_geometry(&s).unwrap();
        assert_eq!(geo.face_counts, vec![8, 12, 6]);
        assert_eq!(geo.flag_count, 48);
        assert!(geo.thin && geo.residually_connected);
        let dual = StringCGroup::verify(&t.reversed(), None, &BsgsConfig::default()).unwrap();
        assert_eq!(dual.schlafli, vec![3, 4]);
        assert!(dual.verified);
    }

    #[test]
    fn commuting_involutions_are_degenerate() {
        let a = Permutation::from_cycles(6, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(6, &[&[2, 3]]).unwrap();
        let c = Permutation::from_cycles(6, &[&[4, 5]]).unwrap();
        let v = check_string(&GeneratorTuple::new(vec![a, b, c]).unwrap());
        assert!(v.string);
        assert_eq!(v.schlafli, vec![2, 2]);
        assert!(v.degenerate);
    }

    #[test]
    fn dihedral_triple_fails_intersection() {
        // Three reflections of a hexagon generating D12 with ρ₀ρ₂ = ρ₂ρ₀.
        let n = 6u32;
        let refl = |k: u32| Permutation::new((0..n).map(|i| (k + n - i) % n).collect()).unwrap();
        let rot3 = Permutation::new((0..n).map(|i| (i + 3) % n).collect()).unwrap();
        let r0 = refl(0);
        let r2 = r0.then(&rot3);
        let r1 = refl(1);
        let t = GeneratorTuple::new(vec![r0, r1, r2]).unwrap();
        assert!(check_string(&t).string);
        assert!(!check_intersection(&t).unwrap().holds);
    }

    #[test]
    fn tuple_validation() {
        let a = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        assert!(GeneratorTuple::new(vec![a.clone(), a.clone()]).is_err());
        assert!(GeneratorTuple::new(vec![Permutation::from_cycles(4, &[&[0, 1, 2]]).unwrap()]).is_err());
    }

    #[test]
    fn dihedral_element_count() {
        let a = Permutation::from_cycles(5, &[&[1, 4], &[2, 3]]).unwrap();
        let b = Permutation::from_cycles(5, &[&[0, 1], &[2, 4]]).unwrap();
        let e: HashSet<Permutation> = dihedral_elements(&a, &b).into_iter().collect();
        assert_eq!(e.len(), 10);
    }
}
