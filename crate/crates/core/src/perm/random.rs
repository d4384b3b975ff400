use rand::Rng;

use super::permutation::Permutation;

/// Product-replacement generator of (approximately uniform) random elements.
#[derive(Debug, Clone)]
pub struct ProductReplacement {
    slots: Vec<Permutation>,
    acc: Permutation,
}

impl ProductReplacement {
    const MIN_SLOTS: usize = 10;
    const WARMUP: usize = 50;

    /// `gens` must be nonempty.
    pub fn new<R: Rng + ?Sized>(gens: &[Permutation], rng: &mut R) -> Self {
        assert!(!gens.is_empty(), "product replacement needs generators");
        let count = Self::MIN_SLOTS.max(gens.len());
        let slots = (0..count).map(|i| gens[i % gens.len()].clone()).collect();
        let mut pr = Self { slots, acc: Permutation::identity(gens[0].degree()) };
        for _ in 0..Self::WARMUP {
            pr.next(rng);
        }
        pr
    }

    pub fn next<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Permutation {
        let n = self.slots.len();
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if rng.gen_bool(0.5) { self.slots[j].clone() } else { self.slots[j].inverse() };
        self.slots[i] = if rng.gen_bool(0.5) { self.slots[i].then(&other) } else { other.then(&self.slots[i]) };
        self.acc = self.acc.then(&self.slots[i]);
        self.acc.clone()
    }
}
