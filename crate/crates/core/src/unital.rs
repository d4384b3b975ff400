//! The Ree unital: blocks are fixed-point sets of the involutions.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{set_orbit, Permutation};
use crate::ree::ReeGroup;

/// A 2-(v, k, 1) design with its verification outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SteinerSystem {
    pub v: usize,
    pub k: usize,
    pub blocks: Vec<Vec<u32>>,
    /// Pairs covered (each exactly once if the design is valid).
    pub pairs_covered: u64,
}

/// Bitmap over unordered pairs {i, j}, i < j < v.
struct PairBitmap {
    v: u64,
    bits: Vec<u64>,
}

impl PairBitmap {
    fn new(v: usize) -> Self {
        let v = v as u64;
        let n = v * (v - 1) / 2;
        Self { v, bits: vec![0; n.div_ceil(64) as usize] }
    }

    #[inline]
    fn index(&self, i: u32, j: u32) -> u64 {
        let (i, j) = if i < j { (i as u64, j as u64) } else { (j as u64, i as u64) };
        i * (2 * self.v - i - 1) / 2 + (j - i - 1)
    }

    /// Sets the bit; returns false if it was already set.
    #[inline]
    fn mark(&mut self, i: u32, j: u32) -> bool {
        let idx = self.index(i, j);
        let (w, b) = ((idx / 64) as usize, idx % 64);
        let was = self.bits[w] >> b & 1 == 1;
        self.bits[w] |= 1 << b;
        !was
    }

    fn is_set(&self, i: u32, j: u32) -> bool {
        let idx = self.index(i, j);
        self.bits[(idx / 64) as usize] >> (idx % 64) & 1 == 1
    }
}

impl SteinerSystem {
    /// Checks block sizes, the block count and that every pair lies in exactly one block.
    pub fn new(v: usize, k: usize, mut blocks: Vec<Vec<u32>>) -> Result<Self> {
        if k < 2 || v < k {
            return Err(Error::Precondition(format!("no Steiner system with v = {v}, k = {k}")));
        }
        for b in &mut blocks {
            b.sort_unstable();
            if b.len() != k || b.windows(2).any(|w| w[0] == w[1]) || b.iter().any(|&p| p as usize >= v) {
                return Err(Error::Verification(format!("malformed block {b:?}")));
            }
        }
        let mut bitmap = PairBitmap::new(v);
        let mut covered = 0u64;
        for b in &blocks {
            for (x, &i) in b.iter().enumerate() {
                for &j in &b[x + 1..] {
                    if !bitmap.mark(i, j) {
                        return Err(Error::Verification(format!("pair ({i}, {j}) lies in two blocks")));
                    }
                    covered += 1;
                }
            }
        }
        let total = (v as u64) * (v as u64 - 1) / 2;
        if covered != total {
            let missing = (0..v as u32)
                .flat_map(|i| (i + 1..v as u32).map(move |j| (i, j)))
                .find(|&(i, j)| !bitmap.is_set(i, j))
                .expect("some pair is uncovered");
            return Err(Error::Verification(format!("pair {missing:?} lies in no block")));
        }
        let expected = total / (k as u64 * (k as u64 - 1) / 2);
        debug_assert_eq!(blocks.len() as u64, expected);
        Ok(Self { v, k, blocks, pairs_covered: covered })
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// v(v−1)/(k(k−1)).
    pub fn expected_block_count(v: usize, k: usize) -> u64 {
        (v as u64 * (v as u64 - 1)) / (k as u64 * (k as u64 - 1))
    }

    /// True if every generator maps blocks to blocks.
    pub fn is_invariant_under(&self, gens: &[Permutation]) -> bool {
        let set: HashSet<&[u32]> = self.blocks.iter().map(|b| &b[..]).collect();
        let mut buf = Vec::with_capacity(self.k);
        gens.iter().all(|g| {
            self.blocks.iter().all(|b| {
                buf.clear();
                buf.extend(b.iter().map(|&p| g.image(p)));
                buf.sort_unstable();
                set.contains(&buf[..])
            })
        })
    }
}

/// Blocks are the orbit of one involution's fixed-point set, which equals the
/// set of fixed-point sets of its conjugacy class; the involutions themselves
/// are never stored.
pub fn build_unital(g: &ReeGroup) -> Result<SteinerSystem> {
    let start = g.block_of(&g.distinguished_involution)?;
    let blocks: Vec<Vec<u32>> = set_orbit(g.group.generators(), &start).into_iter().map(Vec::from).collect();
    SteinerSystem::new(g.degree(), g.params.block_size as usize, blocks)
}

/// Summary for JSON output; blocks included only when requested.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UnitalReport {
    pub v: usize,
    pub k: usize,
    pub block_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<u32>>>,
    pub verification: String,
}

impl UnitalReport {
    pub fn new(s: &SteinerSystem, with_blocks: bool) -> Self {
        Self {
            v: s.v,
            k: s.k,
            block_count: s.block_count(),
            blocks: with_blocks.then(|| s.blocks.clone()),
            verification: "pass".into(),
        }
    }
}
