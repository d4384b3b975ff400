//! Base and strong generating set (stabilizer chain) for permutation groups.
//!
//! Construction is a randomized Schreier-Sims pass followed by an exhaustive
//! Schreier-generator check, so every order reported is exact. Each level keeps
//! a Schreier tree; when the memory budget allows, the inverse coset
//! representatives are also materialised as rows, which is what makes the
//! exhaustive check affordable on degree ~2·10⁴.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use super::permutation::Permutation;
use super::random::ProductReplacement;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Knobs for stabilizer-chain construction.
#[derive(Debug, Clone)]
pub struct BsgsConfig {
    /// Maximum number of explicit transversal entries (rows × degree) kept in memory.
    pub row_budget: usize,
    pub seed: u64,
    /// Consecutive successful random sifts before the exhaustive check starts.
    pub sift_successes: usize,
    /// Base points to use first, in order.
    pub base_prefix: Vec<u32>,
    /// Random elements sifted after the exhaustive check as a final audit.
    pub audit_samples: usize,
}

impl Default for BsgsConfig {
    fn default() -> Self {
        Self {
            row_budget: 800_000_000,
            seed: 0x5EED,
            sift_successes: 24,
            base_prefix: Vec::new(),
            audit_samples: 8,
        }
    }
}

impl BsgsConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_base_prefix(mut self, base: Vec<u32>) -> Self {
        self.base_prefix = base;
        self
    }

    pub fn with_row_budget(mut self, budget: usize) -> Self {
        self.row_budget = budget;
        self
    }
}

/// How the order of a group was established. Both variants are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderCertificate {
    /// Every Schreier generator of every level sifts to the identity.
    SchreierVerified,
    /// Subgroup of an exactly known group whose chain lower bound already equals that order.
    EqualsOvergroup,
}

#[derive(Debug, Clone)]
enum RowStore {
    Narrow(Vec<u16>),
    Wide(Vec<u32>),
}

#[derive(Clone, Copy)]
enum RowRef<'a> {
    Narrow(&'a [u16]),
    Wide(&'a [u32]),
}

impl RowRef<'_> {
    #[inline(always)]
    fn get(&self, x: u32) -> u32 {
        match self {
            RowRef::Narrow(r) => r[x as usize] as u32,
            RowRef::Wide(r) => r[x as usize],
        }
    }
}

impl RowStore {
    fn new(degree: usize) -> Self {
        if degree <= u16::MAX as usize + 1 {
            RowStore::Narrow(Vec::new())
        } else {
            RowStore::Wide(Vec::new())
        }
    }

    fn push_row(&mut self, row: impl Iterator<Item = u32>) {
        match self {
            RowStore::Narrow(v) => v.extend(row.map(|x| x as u16)),
            RowStore::Wide(v) => v.extend(row),
        }
    }

    fn row(&self, r: usize, n: usize) -> RowRef<'_> {
        match self {
            RowStore::Narrow(v) => RowRef::Narrow(&v[r * n..(r + 1) * n]),
            RowStore::Wide(v) => RowRef::Wide(&v[r * n..(r + 1) * n]),
        }
    }
}

/// One level of the stabilizer chain.
#[derive(Debug, Clone)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    gens_inv: Vec<Permutation>,
    /// Orbit of `base` in breadth-first order.
    orbit: Vec<u32>,
    /// Position of each point in `orbit`, or `NONE`.
    pos: Vec<u32>,
    /// Schreier tree: `gens[label[p]]` maps `parent[p]` to `p`.
    parent: Vec<u32>,
    label: Vec<u32>,
    /// Inverse coset representatives `w_γ` (mapping γ to the base), one row per orbit position.
    rows: Option<RowStore>,
    /// Images of every base point under the forward representative `u_γ`, per orbit position.
    fwd_base: Vec<Vec<u32>>,
}

impl Level {
    fn new(base: u32, degree: usize, with_rows: bool) -> Self {
        let mut pos = vec![NONE; degree];
        pos[base as usize] = 0;
        let mut parent = vec![NONE; degree];
        parent[base as usize] = base;
        let mut rows = with_rows.then(|| RowStore::new(degree));
        if let Some(r) = rows.as_mut() {
            r.push_row(0..degree as u32);
        }
        Level {
            base,
            gens: Vec::new(),
            gens_inv: Vec::new(),
            orbit: vec![base],
            pos,
            parent,
            label: vec![NONE; degree],
            rows,
            fwd_base: vec![Vec::new()],
        }
    }

    #[inline]
    fn contains(&self, p: u32) -> bool {
        self.pos[p as usize] != NONE
    }

    fn row(&self, gamma: u32, n: usize) -> Option<RowRef<'_>> {
        self.rows.as_ref().map(|r| r.row(self.pos[gamma as usize] as usize, n))
    }

    /// `w_γ(x)`, where `w_γ` maps γ to the base point.
    #[inline]
    fn w_apply(&self, gamma: u32, x: u32, n: usize) -> u32 {
        if let Some(row) = self.row(gamma, n) {
            return row.get(x);
        }
        let mut cur = x;
        let mut p = gamma;
        while p != self.base {
            let l = self.label[p as usize] as usize;
            cur = self.gens_inv[l].image(cur);
            p = self.parent[p as usize];
        }
        cur
    }

    /// `h · w_γ` as a full permutation.
    fn strip_by(&self, h: &Permutation, gamma: u32, n: usize) -> Permutation {
        if let Some(row) = self.row(gamma, n) {
            let images = h.images().iter().map(|&x| row.get(x)).collect();
            return Permutation::from_images_unchecked(images);
        }
        let mut out = h.clone();
        let mut p = gamma;
        while p != self.base {
            let l = self.label[p as usize] as usize;
            out = out.then(&self.gens_inv[l]);
            p = self.parent[p as usize];
        }
        out
    }

    /// `w_γ` as a full permutation.
    fn w_perm(&self, gamma: u32, n: usize) -> Permutation {
        if let Some(row) = self.row(gamma, n) {
            return Permutation::from_images_unchecked((0..n as u32).map(|x| row.get(x)).collect());
        }
        self.strip_by(&Permutation::identity(n), gamma, n)
    }

    /// Depth of γ in the Schreier tree.
    fn depth(&self, gamma: u32) -> usize {
        let mut d = 0;
        let mut p = gamma;
        while p != self.base {
            p = self.parent[p as usize];
            d += 1;
        }
        d
    }
}

/// A permutation group with an exact stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
    order: BigUint,
    certificate: OrderCertificate,
    rows_used: usize,
    row_budget: usize,
}

impl PermutationGroup {
    /// Builds the stabilizer chain of `⟨generators⟩` with the default configuration.
    pub fn new(generators: Vec<Permutation>) -> Result<Self> {
        Self::with_config(generators, &BsgsConfig::default())
    }

    pub fn with_config(generators: Vec<Permutation>, config: &BsgsConfig) -> Result<Self> {
        let mut g = Self::random_chain(generators, config, None)?;
        g.verify_schreier()?;
        g.audit(config)?;
        g.certificate = OrderCertificate::SchreierVerified;
        Ok(g)
    }

    /// Builds `⟨elems⟩ ≤ self`. Each element is checked for membership first.
    ///
    /// If the randomized lower bound reaches `|self|` the subgroup is the whole
    /// group and no exhaustive check is needed.
    pub fn subgroup(&self, elems: Vec<Permutation>, config: &BsgsConfig) -> Result<PermutationGroup> {
        for e in &elems {
            if e.degree() != self.degree {
                return Err(Error::DegreeMismatch { expected: self.degree, found: e.degree() });
            }
            if !self.contains(e) {
                return Err(Error::Precondition("subgroup generator is not an element of the group".into()));
            }
        }
        let mut h = Self::random_chain(elems, config, Some(&self.order))?;
        if h.order == self.order {
            h.certificate = OrderCertificate::EqualsOvergroup;
        } else {
            h.verify_schreier()?;
            h.audit(config)?;
            h.certificate = OrderCertificate::SchreierVerified;
        }
        Ok(h)
    }

    fn empty(degree: usize, generators: Vec<Permutation>, config: &BsgsConfig) -> Self {
        PermutationGroup {
            degree,
            generators,
            levels: Vec::new(),
            order: BigUint::one(),
            certificate: OrderCertificate::SchreierVerified,
            rows_used: 0,
            row_budget: config.row_budget,
        }
    }

    fn random_chain(
        generators: Vec<Permutation>,
        config: &BsgsConfig,
        target: Option<&BigUint>,
    ) -> Result<Self> {
        let degree = generators.first().ok_or(Error::NoGenerators)?.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { expected: degree, found: bad.degree() });
        }
        let mut group = Self::empty(degree, generators.clone(), config);
        for &b in &config.base_prefix {
            if b as usize >= degree {
                return Err(Error::Precondition(format!("base point {b} out of range")));
            }
            if !group.levels.iter().any(|l| l.base == b) {
                group.push_level(b);
            }
        }
        let nontrivial: Vec<Permutation> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        if nontrivial.is_empty() {
            group.recompute_order();
            return Ok(group);
        }
        for g in &nontrivial {
            group.sift_and_insert(g.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut pr = ProductReplacement::new(&nontrivial, &mut rng);
        let mut successes = 0;
        while successes < config.sift_successes {
            if target.is_some_and(|t| &group.order == t) {
                break;
            }
            let g = pr.next(&mut rng);
            if group.sift_and_insert(g) {
                successes = 0;
            } else {
                successes += 1;
            }
        }
        Ok(group)
    }

    fn push_level(&mut self, base: u32) {
        let with_rows = self.rows_used + self.degree <= self.row_budget;
        if with_rows {
            self.rows_used += self.degree;
        }
        self.levels.push(Level::new(base, self.degree, with_rows));
        self.refresh_fwd_base();
    }

    /// Strips `h`; if the residue is nontrivial it becomes a new strong generator.
    /// Returns whether the chain changed.
    fn sift_and_insert(&mut self, h: Permutation) -> bool {
        let (residue, depth) = self.strip(&h);
        if depth == self.levels.len() && residue.is_identity() {
            return false;
        }
        self.insert_strong(residue, depth);
        true
    }

    /// Adds `h` (fixing the first `depth` base points) to levels `0..=depth`,
    /// extending the base if `h` fixes all of it.
    fn insert_strong(&mut self, h: Permutation, depth: usize) {
        if depth == self.levels.len() {
            let b = h.first_moved().expect("nontrivial residue moves a point");
            self.push_level(b);
        }
        for i in 0..=depth {
            self.add_generator_to_level(i, h.clone());
        }
        self.recompute_order();
    }

    fn add_generator_to_level(&mut self, i: usize, g: Permutation) {
        let level = &mut self.levels[i];
        let inv = g.inverse();
        level.gens.push(g);
        level.gens_inv.push(inv);
        let new_label = (level.gens.len() - 1) as u32;
        let old_len = level.orbit.len();
        // New generator applied to the existing orbit, then BFS with all generators.
        let mut frontier_start = old_len;
        for idx in 0..old_len {
            let p = level.orbit[idx];
            let q = level.gens[new_label as usize].image(p);
            if level.pos[q as usize] == NONE {
                Self::attach(level, p, q, new_label);
            }
        }
        while frontier_start < level.orbit.len() {
            let end = level.orbit.len();
            for idx in frontier_start..end {
                let p = level.orbit[idx];
                for l in 0..level.gens.len() {
                    let q = level.gens[l].image(p);
                    if level.pos[q as usize] == NONE {
                        Self::attach(level, p, q, l as u32);
                    }
                }
            }
            frontier_start = end;
        }
        let added = level.orbit.len() - old_len;
        if added > 0 {
            self.extend_rows(i, old_len);
            self.extend_fwd_base(i, old_len);
        }
    }

    fn attach(level: &mut Level, p: u32, q: u32, label: u32) {
        level.pos[q as usize] = level.orbit.len() as u32;
        level.orbit.push(q);
        level.parent[q as usize] = p;
        level.label[q as usize] = label;
    }

    fn extend_rows(&mut self, i: usize, old_len: usize) {
        let n = self.degree;
        let added = self.levels[i].orbit.len() - old_len;
        if self.levels[i].rows.is_none() {
            return;
        }
        if self.rows_used + added * n > self.row_budget {
            // Fall back to Schreier-tree words for this level.
            let level = &mut self.levels[i];
            self.rows_used -= old_len * n;
            level.rows = None;
            return;
        }
        self.rows_used += added * n;
        let level = &mut self.levels[i];
        let mut rows = level.rows.take().expect("checked above");
        for idx in old_len..level.orbit.len() {
            let q = level.orbit[idx];
            let p = level.parent[q as usize];
            let ginv = &level.gens_inv[level.label[q as usize] as usize];
            // w_q = g⁻¹ · w_p
            let prow_idx = level.pos[p as usize] as usize;
            let new_row: Vec<u32> = {
                let prow = rows.row(prow_idx, n);
                ginv.images().iter().map(|&y| prow.get(y)).collect()
            };
            rows.push_row(new_row.into_iter());
        }
        level.rows = Some(rows);
    }

    fn extend_fwd_base(&mut self, i: usize, old_len: usize) {
        let base: Vec<u32> = self.levels.iter().map(|l| l.base).collect();
        let level = &mut self.levels[i];
        for idx in old_len..level.orbit.len() {
            let q = level.orbit[idx];
            let p = level.parent[q as usize];
            let g = &level.gens[level.label[q as usize] as usize];
            let row: Vec<u32> = if p == level.base {
                base.iter().map(|&b| g.image(b)).collect()
            } else {
                let prow = &level.fwd_base[level.pos[p as usize] as usize];
                prow.iter().map(|&b| g.image(b)).collect()
            };
            level.fwd_base.push(row);
        }
    }

    /// Recomputes `u_γ(β_j)` for all levels after the base changed.
    fn refresh_fwd_base(&mut self) {
        let base: Vec<u32> = self.levels.iter().map(|l| l.base).collect();
        for level in &mut self.levels {
            let mut table = Vec::with_capacity(level.orbit.len());
            table.push(base.clone());
            for idx in 1..level.orbit.len() {
                let q = level.orbit[idx];
                let p = level.parent[q as usize];
                let g = &level.gens[level.label[q as usize] as usize];
                let prow: &Vec<u32> = &table[level.pos[p as usize] as usize];
                let row = prow.iter().map(|&b| g.image(b)).collect();
                table.push(row);
            }
            level.fwd_base = table;
        }
    }

    fn recompute_order(&mut self) {
        self.order = self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
    }

    /// Sifts `h` through the chain; returns the residue and the level at which
    /// sifting stopped (`levels.len()` if it passed every level).
    fn strip(&self, h: &Permutation) -> (Permutation, usize) {
        let n = self.degree;
        let mut cur = h.clone();
        for (i, level) in self.levels.iter().enumerate() {
            let gamma = cur.image(level.base);
            if !level.contains(gamma) {
                return (cur, i);
            }
            if gamma != level.base {
                cur = level.strip_by(&cur, gamma, n);
            }
        }
        (cur, self.levels.len())
    }

    /// Exhaustive Schreier-generator check, deepest level first.
    fn verify_schreier(&mut self) -> Result<()> {
        'restart: loop {
            for i in (0..self.levels.len()).rev() {
                let orbit = self.levels[i].orbit.clone();
                let ngens = self.levels[i].gens.len();
                for &gamma in &orbit {
                    for k in 0..ngens {
                        if let Some((residue, depth)) = self.check_schreier_generator(i, gamma, k) {
                            self.insert_strong(residue, depth);
                            continue 'restart;
                        }
                    }
                }
            }
            return Ok(());
        }
    }

    /// Checks `u_γ · s_k · u_δ⁻¹` (δ = γ^{s_k}) against levels below `i`.
    /// Returns the nontrivial residue and its depth on failure.
    fn check_schreier_generator(&self, i: usize, gamma: u32, k: usize) -> Option<(Permutation, usize)> {
        let n = self.degree;
        let level = &self.levels[i];
        let s = &level.gens[k];
        let delta = s.image(gamma);
        if level.parent[delta as usize] == gamma && level.label[delta as usize] == k as u32 && delta != level.base {
            return None;
        }
        let gpos = level.pos[gamma as usize] as usize;
        // r(x) = w_δ(s(u_γ(x))); the residue after level j is r · w_{ε_{i+1}} · … .
        let mut chosen: Vec<u32> = Vec::with_capacity(self.levels.len() - i - 1);
        for j in (i + 1)..self.levels.len() {
            let uj = level.fwd_base[gpos][j];
            let mut y = level.w_apply(delta, s.image(uj), n);
            for (off, &eps) in chosen.iter().enumerate() {
                y = self.levels[i + 1 + off].w_apply(eps, y, n);
            }
            if !self.levels[j].contains(y) {
                return Some((self.full_residue(i, gamma, k, &chosen), j));
            }
            chosen.push(y);
        }
        // Identity test: W(w_δ(s(y))) == w_γ(y) for every point y.
        let lower: Vec<(&Level, u32)> =
            chosen.iter().enumerate().map(|(off, &eps)| (&self.levels[i + 1 + off], eps)).collect();
        let all_rows = level.rows.is_some() && lower.iter().all(|(l, _)| l.rows.is_some());
        let ok = if all_rows {
            let rg = level.row(gamma, n).unwrap();
            let rd = level.row(delta, n).unwrap();
            let lr: Vec<RowRef<'_>> = lower.iter().map(|(l, e)| l.row(*e, n).unwrap()).collect();
            let simg = s.images();
            (0..n as u32).all(|y| {
                let mut z = rd.get(simg[y as usize]);
                for r in &lr {
                    z = r.get(z);
                }
                z == rg.get(y)
            })
        } else {
            (0..n as u32).all(|y| {
                let mut z = level.w_apply(delta, s.image(y), n);
                for (l, e) in &lower {
                    z = l.w_apply(*e, z, n);
                }
                z == level.w_apply(gamma, y, n)
            })
        };
        if ok {
            None
        } else {
            Some((self.full_residue(i, gamma, k, &chosen), self.levels.len()))
        }
    }

    /// Materialises the Schreier generator residue `u_γ s_k w_δ w_{ε…}`.
    fn full_residue(&self, i: usize, gamma: u32, k: usize, chosen: &[u32]) -> Permutation {
        let n = self.degree;
        let level = &self.levels[i];
        let s = &level.gens[k];
        let delta = s.image(gamma);
        let u_gamma = level.w_perm(gamma, n).inverse();
        let mut r = level.strip_by(&u_gamma.then(s), delta, n);
        for (off, &eps) in chosen.iter().enumerate() {
            r = self.levels[i + 1 + off].strip_by(&r, eps, n);
        }
        r
    }

    fn audit(&self, config: &BsgsConfig) -> Result<()> {
        let nontrivial: Vec<Permutation> = self.generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        if nontrivial.is_empty() || config.audit_samples == 0 {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xA0D1_7000);
        let mut pr = ProductReplacement::new(&nontrivial, &mut rng);
        for _ in 0..config.audit_samples {
            let g = pr.next(&mut rng);
            if !self.contains(&g) {
                return Err(Error::Verification("random audit element failed to sift".into()));
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as `u64`, if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    pub fn certificate(&self) -> OrderCertificate {
        self.certificate
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Fundamental orbit lengths along the base; their product is the order.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// The fundamental orbit at level `i`.
    pub fn fundamental_orbit(&self, i: usize) -> &[u32] {
        &self.levels[i].orbit
    }

    /// Generators of the pointwise stabilizer of the first `i` base points.
    pub fn stabilizer_generators(&self, i: usize) -> Vec<Permutation> {
        if i < self.levels.len() {
            self.levels[i].gens.clone()
        } else {
            Vec::new()
        }
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Largest Schreier-tree depth over all levels.
    pub fn max_tree_depth(&self) -> usize {
        self.levels.iter().map(|l| l.orbit.iter().map(|&p| l.depth(p)).max().unwrap_or(0)).max().unwrap_or(0)
    }

    /// Membership by sifting through the chain.
    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, depth) = self.strip(g);
        depth == self.levels.len() && residue.is_identity()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// A uniformly distributed element: `w_{γ₀} w_{γ₁} ⋯` with independent uniform γᵢ.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let n = self.degree;
        let mut acc: Option<Permutation> = None;
        for level in &self.levels {
            let gamma = level.orbit[rng.gen_range(0..level.orbit.len())];
            acc = Some(match acc {
                None => level.w_perm(gamma, n),
                Some(a) => level.strip_by(&a, gamma, n),
            });
        }
        acc.unwrap_or_else(|| self.identity())
    }

    /// Enumerates every element, refusing if `|G| > bound`.
    pub fn elements(&self, bound: u64) -> Result<Vec<Permutation>> {
        let order = self.order_u64().filter(|&o| o <= bound).ok_or_else(|| Error::BoundExceeded {
            order: self.order.to_string(),
            bound,
        })?;
        let mut out = Vec::with_capacity(order as usize);
        self.for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    /// Calls `f` on every element (no bound check; use with care).
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        let n = self.degree;
        fn rec<F: FnMut(&Permutation)>(g: &PermutationGroup, i: usize, prefix: &Permutation, n: usize, f: &mut F) {
            if i == g.levels.len() {
                f(prefix);
                return;
            }
            let level = &g.levels[i];
            for &gamma in &level.orbit {
                let next = if gamma == level.base { prefix.clone() } else { level.strip_by(prefix, gamma, n) };
                rec(g, i + 1, &next, n, f);
            }
        }
        rec(self, 0, &Permutation::identity(n), n, &mut f);
    }

    /// Visits every element through the images of the base points only; `f`
    /// receives the orbit positions chosen per level, in the order of `elements`.
    /// Returns the element for a given choice vector.
    pub fn element_from_choice(&self, choice: &[usize]) -> Permutation {
        let n = self.degree;
        let mut acc = self.identity();
        for (level, &c) in self.levels.iter().zip(choice) {
            let gamma = level.orbit[c];
            if gamma != level.base {
                acc = level.strip_by(&acc, gamma, n);
            }
        }
        acc
    }

    /// Image of point `x` under the element indexed by `choice` (see
    /// [`element_from_choice`](Self::element_from_choice)) without building it.
    pub fn apply_choice(&self, choice: &[usize], x: u32) -> u32 {
        let n = self.degree;
        let mut y = x;
        for (level, &c) in self.levels.iter().zip(choice) {
            let gamma = level.orbit[c];
            y = level.w_apply(gamma, y, n);
        }
        y
    }

    /// Orbit of a point under the group generators.
    pub fn orbit(&self, point: u32) -> Vec<u32> {
        orbit_of(&self.generators, point, self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// 2-transitivity via the stabilizer chain: the group is transitive and the
    /// stabilizer of the first base point is transitive on the other points.
    pub fn is_two_transitive(&self) -> bool {
        if self.degree < 2 || !self.is_transitive() || self.levels.is_empty() {
            return false;
        }
        let b = self.levels[0].base;
        let stab = self.stabilizer_generators(1);
        let other = if b == 0 { 1 } else { 0 };
        orbit_of(&stab, other, self.degree).len() == self.degree - 1
    }

    /// Serializable summary `{degree, generators, order}`.
    pub fn summary(&self) -> GroupSummary {
        GroupSummary { degree: self.degree, generators: self.generators.clone(), order: self.order.clone() }
    }
}

/// Orbit of `point` under `gens`, in breadth-first order.
pub fn orbit_of(gens: &[Permutation], point: u32, degree: usize) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut orbit = vec![point];
    let mut idx = 0;
    while idx < orbit.len() {
        let p = orbit[idx];
        for g in gens {
            let q = g.image(p);
            if !seen[q as usize] {
                seen[q as usize] = true;
                orbit.push(q);
            }
        }
        idx += 1;
    }
    orbit
}

/// The external form of a group: degree, generators and exact order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupSummary {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    #[serde(with = "crate::bignum")]
    pub order: BigUint,
}

impl GroupSummary {
    /// Rebuilds the group and checks the recorded order.
    pub fn rebuild(&self, config: &BsgsConfig) -> Result<PermutationGroup> {
        let g = PermutationGroup::with_config(self.generators.clone(), config)?;
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: g.degree() });
        }
        if g.order() != &self.order {
            return Err(Error::Verification(format!("recorded order {} but generators give {}", self.order, g.order())));
        }
        Ok(g)
    }
}
