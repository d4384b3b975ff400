//! Finite fields GF(3^k) for k ∈ {1, 3, 5} with exhaustive log tables.
//!
//! Elements are `u16` indices whose base-3 digits are the coefficients in the
//! polynomial basis, lowest degree first: `a₀ + 3a₁ + 9a₂ + …`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Fe = u16;

/// The field GF(3^{2e+1}).
#[derive(Debug, Clone)]
pub struct Gf3Field {
    e: u32,
    degree: u32,
    q: u16,
    /// Monic modulus, coefficients lowest degree first (length `degree + 1`).
    modulus: Vec<u8>,
    add: Vec<Fe>,
    neg: Vec<Fe>,
    exp: Vec<Fe>,
    log: Vec<u32>,
    primitive: Fe,
}

/// Serialized form: the coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficients(pub Vec<u8>);

impl Gf3Field {
    /// GF(3^{2e+1}); only e ≤ 2 is supported.
    pub fn new(e: u32) -> Result<Self> {
        let degree = 2 * e + 1;
        if degree > 5 {
            return Err(Error::Unsupported(format!("GF(3^{degree}) is beyond the table-driven range")));
        }
        let modulus = match degree {
            1 => vec![0, 1],
            3 => vec![1, 2, 0, 1],
            _ => first_irreducible(degree).ok_or_else(|| Error::Field("no irreducible polynomial found".into()))?,
        };
        Self::with_modulus(e, modulus)
    }

    fn with_modulus(e: u32, modulus: Vec<u8>) -> Result<Self> {
        let degree = 2 * e + 1;
        if modulus.len() != degree as usize + 1 || modulus[degree as usize] != 1 {
            return Err(Error::Field("modulus must be monic of the field degree".into()));
        }
        if !is_irreducible(&modulus) {
            return Err(Error::Field(format!("modulus {modulus:?} is reducible")));
        }
        let q = 3u16.pow(degree);
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut neg = vec![0; qs];
        for a in 0..q {
            let da = digits(a, degree);
            neg[a as usize] = undigits(&da.iter().map(|&x| (3 - x) % 3).collect::<Vec<_>>());
            for b in 0..q {
                let db = digits(b, degree);
                let s: Vec<u8> = da.iter().zip(&db).map(|(x, y)| (x + y) % 3).collect();
                add[a as usize * qs + b as usize] = undigits(&s);
            }
        }
        let primitive = (1..q)
            .find(|&g| poly_order(g, &modulus, degree) == (q - 1) as u32)
            .ok_or_else(|| Error::Field("no primitive element".into()))?;
        let mut exp = vec![0; qs - 1];
        let mut log = vec![u32::MAX; qs];
        let mut x: Fe = 1;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = poly_mul(x, primitive, &modulus, degree);
        }
        Ok(Self { e, degree, q, modulus, add, neg, exp, log, primitive })
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u16 {
        self.q
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn primitive(&self) -> Fe {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q as usize - 1;
        self.exp[(self.log[a as usize] as usize + self.log[b as usize] as usize) % n]
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a == 0 {
            return Err(Error::Field("inverse of zero".into()));
        }
        let n = self.q as usize - 1;
        Ok(self.exp[(n - self.log[a as usize] as usize) % n])
    }

    /// `a^k` for any integer `k`; `0^k` is 0 for `k > 0` and 1 for `k = 0`.
    pub fn pow(&self, a: Fe, k: i64) -> Fe {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.q as i64 - 1;
        let l = self.log[a as usize] as i64;
        self.exp[(l * k).rem_euclid(n) as usize]
    }

    /// `α^i` for the fixed primitive element α.
    pub fn exp(&self, i: i64) -> Fe {
        self.exp[i.rem_euclid(self.q as i64 - 1) as usize]
    }

    /// Discrete logarithm to base α; `None` for zero.
    pub fn log(&self, a: Fe) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// The exponent 3^{e+1} of the twist.
    pub fn twist_exponent(&self) -> i64 {
        3i64.pow(self.e + 1)
    }

    /// `x ↦ x^{3^{e+1}}`; applying it twice gives the Frobenius `x ↦ x³`.
    pub fn twist(&self, a: Fe) -> Fe {
        self.pow(a, self.twist_exponent())
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, 3)
    }

    /// Order of `a` in the multiplicative group.
    pub fn multiplicative_order(&self, a: Fe) -> Result<u32> {
        let l = self.log(a).ok_or_else(|| Error::Field("zero has no multiplicative order".into()))?;
        let n = self.q as u32 - 1;
        Ok(n / gcd(n, l))
    }

    pub fn coefficients(&self, a: Fe) -> Coefficients {
        Coefficients(digits(a, self.degree))
    }

    pub fn from_coefficients(&self, c: &Coefficients) -> Result<Fe> {
        if c.0.len() != self.degree as usize || c.0.iter().any(|&x| x > 2) {
            return Err(Error::Field(format!("bad coefficient vector {:?}", c.0)));
        }
        Ok(undigits(&c.0))
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn digits(mut a: u16, k: u32) -> Vec<u8> {
    (0..k)
        .map(|_| {
            let d = (a % 3) as u8;
            a /= 3;
            d
        })
        .collect()
}

fn undigits(d: &[u8]) -> u16 {
    d.iter().rev().fold(0u16, |acc, &x| acc * 3 + x as u16)
}

/// Product in F₃[x]/(modulus) on digit-encoded elements.
fn poly_mul(a: u16, b: u16, modulus: &[u8], k: u32) -> u16 {
    let da = digits(a, k);
    let db = digits(b, k);
    let k = k as usize;
    let mut prod = vec![0u8; 2 * k - 1];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % 3;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c != 0 {
            for (i, &m) in modulus.iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + 3 * 3 - c * m) % 3;
            }
        }
    }
    undigits(&prod[..k])
}

fn poly_order(g: u16, modulus: &[u8], k: u32) -> u32 {
    let mut x = g;
    let mut n = 1;
    while x != 1 {
        x = poly_mul(x, g, modulus, k);
        n += 1;
        if n > 3u32.pow(k) {
            return 0;
        }
    }
    n
}

/// Irreducibility of a monic polynomial of degree ≤ 5 over F₃ via trial
/// division by every monic polynomial of degree ≤ deg/2.
fn is_irreducible(f: &[u8]) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..3u16.pow(d as u32) {
            let mut g = digits(low, d as u32);
            g.push(1);
            if poly_rem(f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(f: &[u8], g: &[u8]) -> Vec<u8> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, &gc) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + 9 - c * gc) % 3;
        }
        r.pop();
    }
    r
}

/// First monic irreducible polynomial of degree `k` in base-3 order of its lower coefficients.
fn first_irreducible(k: u32) -> Option<Vec<u8>> {
    (0..3u16.pow(k)).map(|low| {
        let mut f = digits(low, k);
        f.push(1);
        f
    })
    .find(|f| is_irreducible(f))
}
