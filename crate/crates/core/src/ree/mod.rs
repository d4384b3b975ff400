//! The Ree groups R(3) and R(27) on the points of their unitals.

pub mod linear;
pub mod matrix;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, BsgsConfig, Permutation, PermutationGroup};
use matrix::ReeMatrixModel;

/// Numerical invariants of R(q), q = 3^{2e+1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReeParameters {
    pub e: u32,
    pub q: u128,
    /// q + 1 − 3^{e+1}
    pub alpha: u128,
    /// q + 1 + 3^{e+1}
    pub beta: u128,
    #[serde(with = "crate::bignum")]
    pub group_order: BigUint,
    pub degree: u128,
    pub block_size: u128,
    /// (q + 1)/4, the order of the cyclic factor A₁.
    pub a1_order: u128,
}

impl ReeParameters {
    /// Valid for e ≤ 17 (q³ + 1 must fit in 128 bits).
    pub fn new(e: u32) -> Result<Self> {
        if e > 17 {
            return Err(Error::Unsupported(format!("e = {e} overflows the parameter arithmetic")));
        }
        let q = 3u128.pow(2 * e + 1);
        let s = 3u128.pow(e + 1);
        let qb = BigUint::from(q);
        let group_order = qb.pow(3) * (&qb - 1u32) * (qb.pow(3) + 1u32);
        Ok(Self {
            e,
            q,
            alpha: q + 1 - s,
            beta: q + 1 + s,
            group_order,
            degree: q * q * q + 1,
            block_size: q + 1,
            a1_order: (q + 1) / 4,
        })
    }

    /// Consistency identities: αβ = q² − q + 1, q ≡ 3 (mod 8), (q+1)/4 odd.
    pub fn identities_hold(&self) -> bool {
        let q = BigUint::from(self.q);
        let ab = BigUint::from(self.alpha) * BigUint::from(self.beta);
        ab + &q == &q * &q + 1u32 && self.q % 8 == 3 && self.a1_order % 2 == 1
    }

    /// Orders of the two maximal tori outside the split torus, plus q±1 and 9:
    /// every dihedral parameter in R(q) divides one of them.
    pub fn dihedral_divisor_list(&self) -> [u128; 5] {
        [9, self.q - 1, self.q + 1, self.alpha, self.beta]
    }
}

/// R(q) on the q³+1 points of its unital.
#[derive(Debug, Clone)]
pub struct ReeGroup {
    pub params: ReeParameters,
    pub group: PermutationGroup,
    pub distinguished_involution: Permutation,
}

impl ReeGroup {
    /// Ree(3) or R(27) according to `e`.
    pub fn build(e: u32) -> Result<Self> {
        match e {
            0 => build_ree3(),
            1 => build_ree27(),
            _ => Err(Error::Unsupported(format!(
                "R(3^{}) has degree beyond desk scale; only parameters are available",
                2 * e + 1
            ))),
        }
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    /// Fixed-point set of an involution: a block of the unital.
    pub fn block_of(&self, rho: &Permutation) -> Result<Vec<u32>> {
        let fixed = rho.fixed_points();
        if fixed.len() as u128 != self.params.block_size {
            return Err(Error::Verification(format!(
                "involution fixes {} points, expected {}",
                fixed.len(),
                self.params.block_size
            )));
        }
        Ok(fixed)
    }

    fn certify(&self) -> Result<()> {
        if self.group.order() != &self.params.group_order {
            return Err(Error::Verification(format!(
                "group order {} differs from q³(q−1)(q³+1) = {}",
                self.group.order(),
                self.params.group_order
            )));
        }
        if self.degree() as u128 != self.params.degree {
            return Err(Error::Verification("wrong degree".into()));
        }
        if !self.group.is_two_transitive() {
            return Err(Error::Verification("action is not 2-transitive".into()));
        }
        let rho = &self.distinguished_involution;
        if !rho.is_involution() || !self.group.contains(rho) {
            return Err(Error::Verification("distinguished involution is not an involution of the group".into()));
        }
        self.block_of(rho)?;
        Ok(())
    }
}

/// Ree(3) ≅ PΓL(2, 8) acting on the 28 right cosets of the normalizer of a
/// cyclic subgroup of order 9 (the point stabilizer, of order 54).
pub fn build_ree3() -> Result<ReeGroup> {
    let params = ReeParameters::new(0)?;
    let pgaml = linear::pgaml2_8()?;
    // Elements of order 9 outside PSL(2, 8) have smaller normalizers; the
    // torus C9 of PSL(2, 8) is normalized by D18:C3.
    let mut order9 = Vec::new();
    pgaml.for_each_element(|x| {
        if x.order() == 9 {
            order9.push(x.clone());
        }
    });
    let mut stab = None;
    for c in order9 {
        let cyclic = PermutationGroup::new(vec![c])?;
        let n = perm::normalizer_bruteforce(&pgaml, &cyclic, perm::NORMALIZER_BOUND)?;
        if n.order_u64() == Some(54) {
            stab = Some(n);
            break;
        }
    }
    let stab = stab.ok_or_else(|| Error::Construction("no cyclic subgroup of order 9 with normalizer of order 54".into()))?;
    let gens = perm::right_coset_action(&pgaml, &stab, perm::ENUMERATION_BOUND)?;
    let group = PermutationGroup::new(gens)?;
    let mut rho = None;
    group.for_each_element(|x| {
        if rho.is_none() && x.is_involution() {
            rho = Some(x.clone());
        }
    });
    let distinguished_involution = rho.ok_or_else(|| Error::Construction("no involution".into()))?;
    let g = ReeGroup { params, group, distinguished_involution };
    g.certify()?;
    Ok(g)
}

/// R(q) from the matrix model: generated by one unipotent element x(1,0,0), the
/// torus element h(α) for a primitive α, and the Weyl involution. The
/// distinguished involution is h(−1).
pub fn build_ree_matrix(e: u32, config: &BsgsConfig) -> Result<ReeGroup> {
    let params = ReeParameters::new(e)?;
    let model = ReeMatrixModel::new(e)?;
    let f = model.field();
    let gens = vec![
        model.permutation(&model.unipotent(1, 0, 0))?,
        model.permutation(&model.torus(f.primitive()))?,
        model.permutation(&model.weyl())?,
    ];
    let distinguished_involution = model.permutation(&model.torus(f.neg(1)))?;
    let mut cfg = config.clone();
    if cfg.base_prefix.is_empty() {
        cfg.base_prefix = vec![0, model.point_index(0, 0, 0)];
    }
    let group = PermutationGroup::with_config(gens, &cfg)?;
    let g = ReeGroup { params, group, distinguished_involution };
    g.certify()?;
    Ok(g)
}

pub fn build_ree27() -> Result<ReeGroup> {
    build_ree_matrix(1, &BsgsConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters_e1() {
        let p = ReeParameters::new(1).unwrap();
        assert_eq!((p.q, p.alpha, p.beta), (27, 19, 37));
        assert_eq!(p.group_order, BigUint::from(10_073_444_472u64));
        assert_eq!(p.alpha * p.beta, 703);
        assert_eq!(p.degree, 19684);
    }

    #[test]
    fn parameters_e0() {
        let p = ReeParameters::new(0).unwrap();
        assert_eq!((p.q, p.alpha, p.beta), (3, 1, 7));
        assert_eq!(p.group_order, BigUint::from(1512u32));
    }

    #[test]
    fn parameter_identities() {
        for e in 0..=10 {
            assert!(ReeParameters::new(e).unwrap().identities_hold());
        }
    }

    #[test]
    fn ree3_by_coset_action() {
        let g = build_ree3().unwrap();
        assert_eq!(g.group.order_u64(), Some(1512));
        assert_eq!(g.degree(), 28);
        assert_eq!(g.block_of(&g.distinguished_involution).unwrap().len(), 4);
    }

    #[test]
    fn ree3_by_matrices() {
        let g = build_ree_matrix(0, &BsgsConfig::default()).unwrap();
        assert_eq!(g.group.order_u64(), Some(1512));
    }

    #[test]
    fn large_e_is_parameter_only() {
        assert!(matches!(ReeGroup::build(2), Err(Error::Unsupported(_))));
    }
}
