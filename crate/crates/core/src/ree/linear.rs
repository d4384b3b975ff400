//! Projective linear groups on the projective line, used as Ree(3) scaffolding
//! and as oracle inputs.

use crate::error::{Error, Result};
use crate::gf3::{Fe, Gf3Field};
use crate::perm::{Permutation, PermutationGroup};

/// The minimal field interface the projective-line constructions need.
pub trait SmallField {
    fn size(&self) -> u16;
    fn add(&self, a: Fe, b: Fe) -> Fe;
    fn neg(&self, a: Fe) -> Fe;
    fn mul(&self, a: Fe, b: Fe) -> Fe;
    fn inv(&self, a: Fe) -> Result<Fe>;
    fn primitive(&self) -> Fe;
}

impl SmallField for Gf3Field {
    fn size(&self) -> u16 {
        self.order()
    }
    fn add(&self, a: Fe, b: Fe) -> Fe {
        Gf3Field::add(self, a, b)
    }
    fn neg(&self, a: Fe) -> Fe {
        Gf3Field::neg(self, a)
    }
    fn mul(&self, a: Fe, b: Fe) -> Fe {
        Gf3Field::mul(self, a, b)
    }
    fn inv(&self, a: Fe) -> Result<Fe> {
        Gf3Field::inv(self, a)
    }
    fn primitive(&self) -> Fe {
        Gf3Field::primitive(self)
    }
}

/// GF(8) = F₂[x]/(x³ + x + 1), elements as bit patterns.
#[derive(Debug, Clone)]
pub struct Gf8 {
    mul: [[Fe; 8]; 8],
}

impl Default for Gf8 {
    fn default() -> Self {
        let mut mul = [[0; 8]; 8];
        for a in 0..8u16 {
            for b in 0..8u16 {
                let mut p = 0u16;
                for i in 0..3 {
                    if b >> i & 1 == 1 {
                        p ^= a << i;
                    }
                }
                for top in (3..5).rev() {
                    if p >> top & 1 == 1 {
                        p ^= 0b1011 << (top - 3);
                    }
                }
                mul[a as usize][b as usize] = p;
            }
        }
        Gf8 { mul }
    }
}

impl Gf8 {
    /// The Frobenius automorphism `x ↦ x²`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }
}

impl SmallField for Gf8 {
    fn size(&self) -> u16 {
        8
    }
    fn add(&self, a: Fe, b: Fe) -> Fe {
        a ^ b
    }
    fn neg(&self, a: Fe) -> Fe {
        a
    }
    fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul[a as usize][b as usize]
    }
    fn inv(&self, a: Fe) -> Result<Fe> {
        (1..8).find(|&b| self.mul(a, b) == 1).ok_or_else(|| Error::Field("inverse of zero".into()))
    }
    fn primitive(&self) -> Fe {
        // x generates the cyclic group of order 7.
        2
    }
}

/// The Möbius map `z ↦ (az + b)/(cz + d)` on PG(1, q); point `q` is ∞.
pub fn mobius<F: SmallField>(f: &F, a: Fe, b: Fe, c: Fe, d: Fe) -> Result<Permutation> {
    let q = f.size();
    let inf = q as u32;
    let images = (0..=q)
        .map(|z| -> Result<u32> {
            if z == q {
                return Ok(if c == 0 { inf } else { f.mul(a, f.inv(c)?) as u32 });
            }
            let den = f.add(f.mul(c, z), d);
            if den == 0 {
                return Ok(inf);
            }
            Ok(f.mul(f.add(f.mul(a, z), b), f.inv(den)?) as u32)
        })
        .collect::<Result<Vec<u32>>>()?;
    Permutation::new(images)
}

/// Generators `z+1`, `α²z`, `−1/z` of PSL(2, q) on its q+1 projective points.
pub fn psl2_generators<F: SmallField>(f: &F) -> Result<Vec<Permutation>> {
    let a = f.primitive();
    let one = 1;
    Ok(vec![
        mobius(f, one, one, 0, one)?,
        mobius(f, f.mul(a, a), 0, 0, one)?,
        mobius(f, 0, f.neg(one), one, 0)?,
    ])
}

pub fn psl2<F: SmallField>(f: &F) -> Result<PermutationGroup> {
    PermutationGroup::new(psl2_generators(f)?)
}

/// PΓL(2, 8): PSL(2, 8) extended by the Frobenius on the 9 projective points.
pub fn pgaml2_8() -> Result<PermutationGroup> {
    let f = Gf8::default();
    let mut gens = psl2_generators(&f)?;
    let frob: Vec<u32> = (0..8).map(|z| f.frobenius(z) as u32).chain([8]).collect();
    gens.push(Permutation::new(frob)?);
    PermutationGroup::new(gens)
}

/// `C₂ × H` on `degree(H) + 2` points: `H` acts on the first points and the
/// extra pair is swapped by the central involution.
pub fn times_c2(h: &PermutationGroup) -> Result<PermutationGroup> {
    let n = h.degree();
    let mut gens: Vec<Permutation> = h
        .generators()
        .iter()
        .map(|g| Permutation::new(g.images().iter().copied().chain([n as u32, n as u32 + 1]).collect()))
        .collect::<Result<_>>()?;
    gens.push(Permutation::from_cycles(n + 2, &[&[n as u32, n as u32 + 1]])?);
    PermutationGroup::new(gens)
}

/// The central involution of [`times_c2`].
pub fn c2_factor(degree_h: usize) -> Permutation {
    Permutation::from_cycles(degree_h + 2, &[&[degree_h as u32, degree_h as u32 + 1]]).expect("valid cycle")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_is_a_field() {
        let f = Gf8::default();
        for a in 1..8 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        let mut x = 1;
        for _ in 0..7 {
            x = f.mul(x, f.primitive());
        }
        assert_eq!(x, 1);
        assert_ne!(f.mul(f.mul(2, 2), 2), 1);
    }

    #[test]
    fn orders_of_projective_groups() {
        // q(q²−1)/gcd(2, q−1).
        assert_eq!(psl2(&Gf8::default()).unwrap().order_u64(), Some(504));
        assert_eq!(psl2(&Gf3Field::new(0).unwrap()).unwrap().order_u64(), Some(12));
        assert_eq!(psl2(&Gf3Field::new(1).unwrap()).unwrap().order_u64(), Some(9828));
        assert_eq!(pgaml2_8().unwrap().order_u64(), Some(1512));
    }

    #[test]
    fn direct_product_with_c2() {
        let p = psl2(&Gf3Field::new(1).unwrap()).unwrap();
        let c = times_c2(&p).unwrap();
        assert_eq!(c.degree(), 30);
        assert_eq!(c.order_u64(), Some(19656));
        assert!(c.contains(&c2_factor(28)));
    }
}
