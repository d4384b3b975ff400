use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `{0, …, n-1}` stored as its image array.
///
/// Products are read left to right: `p * q` applies `p` first, so
/// `(p * q).image(x) == q.image(p.image(x))`. Every routine in the crate
/// uses this convention; conjugation is `p^g = g⁻¹ p g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    /// Validates that `images` is a bijection of `0..images.len()`.
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::InvalidPermutation(format!("image {x} out of range 0..{n}")));
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
            seen[x] = true;
        }
        Ok(Self { images: images.into_boxed_slice() })
    }

    /// Skips validation; callers guarantee bijectivity.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        Self { images: images.into_boxed_slice() }
    }

    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[0, 1], [2, 3, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::InvalidPermutation(format!("cycle point out of range 0..{degree}")));
                }
                if touched[a as usize] {
                    return Err(Error::InvalidPermutation(format!("point {a} appears in two cycles")));
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Ok(Self { images: images.into_boxed_slice() })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`. Fails on a degree mismatch.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(self.then(other))
    }

    /// Unchecked form of [`compose`](Self::compose); panics on mismatched degrees.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        let images = self.images.iter().map(|&x| other.images[x as usize]).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv.into_boxed_slice() }
    }

    /// `self^k` for any integer `k` (negative powers use the inverse).
    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.then(&sq);
            }
        }
        acc
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // x ↦ g(self(g⁻¹(x))), i.e. g(y) ↦ g(self(y)).
        let mut images = vec![0u32; self.degree()];
        for (y, &sy) in self.images.iter().enumerate() {
            images[g.images[y] as usize] = g.images[sy as usize];
        }
        Permutation { images: images.into_boxed_slice() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.images.iter().enumerate().all(|(i, &x)| self.images[x as usize] == i as u32)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.degree() == other.degree()
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, &x)| other.images[x as usize] == self.images[other.images[i] as usize])
    }

    pub fn fixed_points(&self) -> Vec<u32> {
        (0..self.degree() as u32).filter(|&i| self.images[i as usize] == i).collect()
    }

    pub fn fixes(&self, point: u32) -> bool {
        self.images[point as usize] == point
    }

    /// First point moved by the permutation, if any.
    pub fn first_moved(&self) -> Option<u32> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i as u32)
    }

    /// Cycle lengths, including fixed points as cycles of length 1.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Least `k ≥ 1` with `self^k = 1`, as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }
}

/// Left-to-right application, the same as [`Permutation::then`].
impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 64 {
            write!(f, "Perm{:?}", &self.images[..])
        } else {
            write!(f, "Perm(degree {}, order {})", self.degree(), self.order())
        }
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<u32>::deserialize(deserializer)?;
        Permutation::new(images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_to_right_composition() {
        // (0 1) then (1 2): 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1.
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.images(), &[2, 0, 1]);
        // The other convention would give 0 -> 1 -> 2 -> 0 as [1, 2, 0].
        assert_eq!(b.compose(&a).unwrap().images(), &[1, 2, 0]);
    }

    #[test]
    fn identity_and_inverse() {
        let p = Permutation::new(vec![3, 0, 4, 1, 2]).unwrap();
        let id = Permutation::identity(5);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn degree_mismatch_rejected() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(matches!(p.compose(&q), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn invalid_images_rejected() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }

    #[test]
    fn element_orders() {
        assert_eq!(Permutation::identity(7).order(), 1);
        let cycle: Vec<u32> = (0..37).map(|i| (i + 1) % 37).collect();
        assert_eq!(Permutation::new(cycle).unwrap().order(), 37);
        let p = Permutation::from_cycles(5, &[&[0, 1], &[2, 3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn powers_and_conjugation() {
        let p = Permutation::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap();
        assert_eq!(p.pow(6), Permutation::identity(6));
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.pow(2), &p * &p);
        let g = Permutation::from_cycles(6, &[&[0, 3]]).unwrap();
        let c = p.conjugate_by(&g);
        assert_eq!(c, &(&g.inverse() * &p) * &g);
    }

    #[test]
    fn serde_roundtrip_is_image_array() {
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[2,0,1]");
        assert_eq!(serde_json::from_str::<Permutation>(&s).unwrap(), p);
    }
}
