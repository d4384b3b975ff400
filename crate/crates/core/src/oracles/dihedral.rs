//! Normalizers of dihedral subgroups inside dihedral groups: closed form
//! against brute force.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// |N_{D_{2n}}(D_{2m})|: 2m when n/m is odd, 4m when it is even.
pub fn dihedral_normalizer_formula(n: u64, m: u64) -> Result<u64> {
    if n < 2 || m < 2 || n % m != 0 {
        return Err(Error::Precondition(format!("need m | n with m, n > 1 (got n = {n}, m = {m})")));
    }
    Ok(if (n / m) % 2 == 1 { 2 * m } else { 4 * m })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralNormalizerVerdict {
    pub n: u64,
    pub m: u64,
    /// Which D_{2m}: generated by r^{n/m} and s·r^shift.
    pub shift: u64,
    pub formula_order: u64,
    pub bruteforce_order: u64,
    pub agree: bool,
}

/// D_{2n} as permutations: the n-gon action for n ≥ 3, the regular action of
/// the Klein group for n = 2. Returns (rotation r, reflection s).
pub fn dihedral_generators(n: u64) -> (Permutation, Permutation) {
    if n == 2 {
        let r = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).expect("valid");
        let s = Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).expect("valid");
        return (r, s);
    }
    let n32 = n as u32;
    let r = Permutation::new((0..n32).map(|i| (i + 1) % n32).collect()).expect("valid");
    let s = Permutation::new((0..n32).map(|i| (n32 - i) % n32).collect()).expect("valid");
    (r, s)
}

/// All 2n elements r^k and s·r^k.
fn dihedral_group(r: &Permutation, s: &Permutation, n: u64) -> Vec<Permutation> {
    let mut out = Vec::with_capacity(2 * n as usize);
    let mut p = Permutation::identity(r.degree());
    for _ in 0..n {
        out.push(p.clone());
        out.push(s.then(&p));
        p = p.then(r);
    }
    out
}

/// Every D_{2m} subgroup of D_{2n} with its normalizer order by enumeration.
pub fn verify_dihedral_normalizers(n_max: u64) -> Result<Vec<DihedralNormalizerVerdict>> {
    if n_max > 200 {
        return Err(Error::Precondition("n_max above 200".into()));
    }
    let mut out = Vec::new();
    for n in 2..=n_max {
        let (r, s) = dihedral_generators(n);
        let whole = dihedral_group(&r, &s, n);
        for m in (2..=n).filter(|m| n % m == 0) {
            let k = n / m;
            let rk = r.pow(k as i64);
            for shift in 0..k {
                let refl = s.then(&r.pow(shift as i64));
                let sub: HashSet<Permutation> = dihedral_group(&rk, &refl, m).into_iter().collect();
                debug_assert_eq!(sub.len() as u64, 2 * m);
                let bruteforce_order = whole
                    .iter()
                    .filter(|g| sub.contains(&rk.conjugate_by(g)) && sub.contains(&refl.conjugate_by(g)))
                    .count() as u64;
                let formula_order = dihedral_normalizer_formula(n, m)?;
                out.push(DihedralNormalizerVerdict {
                    n,
                    m,
                    shift,
                    formula_order,
                    bruteforce_order,
                    agree: formula_order == bruteforce_order,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_branches() {
        assert_eq!(dihedral_normalizer_formula(9, 3).unwrap(), 6);
        assert_eq!(dihedral_normalizer_formula(6, 3).unwrap(), 12);
        assert_eq!(dihedral_normalizer_formula(5, 5).unwrap(), 10);
        assert!(dihedral_normalizer_formula(9, 2).is_err());
    }

    #[test]
    fn spot_values() {
        let v = verify_dihedral_normalizers(15).unwrap();
        let find = |n, m| v.iter().filter(move |x| x.n == n && x.m == m);
        assert!(find(12, 6).all(|x| x.bruteforce_order == 24 && x.formula_order == 24));
        assert!(find(15, 5).all(|x| x.bruteforce_order == 10 && x.formula_order == 10));
        assert_eq!(find(12, 6).count(), 2);
    }

    #[test]
    fn group_sizes() {
        for n in 2..10 {
            let (r, s) = dihedral_generators(n);
            let set: HashSet<Permutation> = dihedral_group(&r, &s, n).into_iter().collect();
            assert_eq!(set.len() as u64, 2 * n);
        }
    }
}
