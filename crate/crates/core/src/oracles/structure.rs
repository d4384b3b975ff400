//! Structural checks: involutions of odd-index normal subgroups, and the
//! absence of direct products of non-abelian dihedral groups.

use std::collections::HashSet;

use num_integer::Integer;

use crate::cgroup::dihedral_elements;
use crate::error::{Error, Result};
use crate::perm::{self, Permutation, PermutationGroup};

use super::survey::InvolutionTable;

/// For A ⊴ G of odd index, every involution of G lies in A.
pub fn semidirect_involution_check(g: &PermutationGroup, a: &PermutationGroup, bound: u64) -> Result<bool> {
    if a.generators().iter().any(|x| !g.contains(x)) {
        return Err(Error::Precondition("A is not a subgroup of G".into()));
    }
    let index = g.order() / a.order();
    if &index * a.order() != *g.order() || index.is_even() {
        return Err(Error::Precondition(format!("index {index} is not odd")));
    }
    let normal = a.generators().iter().all(|x| g.generators().iter().all(|s| a.contains(&x.conjugate_by(s))));
    if !normal {
        return Err(Error::Precondition("A is not normal in G".into()));
    }
    Ok(perm::involutions(g, bound)?.iter().all(|t| a.contains(t)))
}

/// Commuting bitsets over the involutions.
struct CommuteTable {
    words: usize,
    bits: Vec<u64>,
}

impl CommuteTable {
    fn new(invs: &[Permutation]) -> Self {
        let n = invs.len();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if i != j && invs[i].commutes_with(&invs[j]) {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        Self { words, bits }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn commute(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }
}

fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &b)| (0..64).filter(move |k| b >> k & 1 == 1).map(move |k| w * 64 + k))
}

/// A witness D₂c × D₂d: involution indices (a, b) and (c, d).
pub type ProductWitness = ((u32, u32), (u32, u32));

/// Searches for element-wise commuting non-abelian dihedral subgroups ⟨a,b⟩,
/// ⟨c,d⟩ with trivial intersection. Returns `None` if there are none.
pub fn find_dihedral_product(table: &InvolutionTable) -> Option<ProductWitness> {
    let invs = &table.involutions;
    let ct = CommuteTable::new(invs);
    let n = invs.len();
    let mut common = vec![0u64; ct.words];
    for a in 0..n {
        for b in a + 1..n {
            if ct.commute(a, b) {
                continue;
            }
            for (w, c) in common.iter_mut().enumerate() {
                *c = ct.row(a)[w] & ct.row(b)[w];
            }
            let candidates: Vec<usize> = ones(&common).collect();
            let mut first: Option<HashSet<Permutation>> = None;
            for (x, &c) in candidates.iter().enumerate() {
                for &d in &candidates[x + 1..] {
                    if ct.commute(c, d) {
                        continue;
                    }
                    let left = first.get_or_insert_with(|| dihedral_elements(&invs[a], &invs[b]).into_iter().collect());
                    let meet = dihedral_elements(&invs[c], &invs[d]).into_iter().filter(|y| left.contains(y)).count();
                    if meet == 1 {
                        return Some(((a as u32, b as u32), (c as u32, d as u32)));
                    }
                }
            }
        }
    }
    None
}

/// True iff no D₂c × D₂d (c, d ≥ 3) is found.
pub fn no_dihedral_product_check(g: &PermutationGroup, bound: u64) -> Result<bool> {
    let table = InvolutionTable::of_group(g, bound)?;
    if table.len() > 10_000 {
        return Err(Error::Precondition("more than 10⁴ involutions".into()));
    }
    Ok(find_dihedral_product(&table).is_none())
}
