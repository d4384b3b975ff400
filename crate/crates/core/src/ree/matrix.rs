//! The 7-dimensional orthogonal model of R(q) over GF(q), used only to
//! produce permutations on the q³+1 points of the Ree unital.
//!
//! Matrices act on row vectors. The point ∞ is ⟨e₇⟩ and the point (t, u, v)
//! is the line spanned by the first row of the unipotent matrix x(t, u, v).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf3::{Fe, Gf3Field};
use crate::perm::Permutation;

pub type Matrix = [[Fe; 7]; 7];

/// Point set and matrix generators for R(3^{2e+1}).
#[derive(Debug, Clone)]
pub struct ReeMatrixModel {
    field: Gf3Field,
    theta: i64,
    points: Vec<[Fe; 7]>,
    index: HashMap<u64, u32>,
}

impl ReeMatrixModel {
    pub fn new(e: u32) -> Result<Self> {
        let field = Gf3Field::new(e)?;
        let theta = 3i64.pow(e);
        let mut model = ReeMatrixModel { field, theta, points: Vec::new(), index: HashMap::new() };
        let mut inf = [0; 7];
        inf[6] = 1;
        model.push_point(inf);
        let q = model.field.order();
        for v in 0..q {
            for u in 0..q {
                for t in 0..q {
                    let row = model.unipotent(t, u, v)[0];
                    model.push_point(row);
                }
            }
        }
        if model.points.len() != q as usize * q as usize * q as usize + 1 {
            return Err(Error::Construction("unipotent orbit of the first basis line is not regular".into()));
        }
        Ok(model)
    }

    fn push_point(&mut self, p: [Fe; 7]) {
        let key = self.key(&p);
        let id = self.points.len() as u32;
        if let std::collections::hash_map::Entry::Vacant(slot) = self.index.entry(key) {
            slot.insert(id);
            self.points.push(p);
        }
    }

    fn key(&self, p: &[Fe; 7]) -> u64 {
        let q = self.field.order() as u64;
        p.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    pub fn field(&self) -> &Gf3Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    /// Index of the point with coordinates (t, u, v); ∞ is 0.
    pub fn point_index(&self, t: Fe, u: Fe, v: Fe) -> u32 {
        let q = self.field.order() as u32;
        1 + t as u32 + q * u as u32 + q * q * v as u32
    }

    /// Inverse of [`point_index`](Self::point_index); `None` for ∞.
    pub fn coordinates(&self, p: u32) -> Option<(Fe, Fe, Fe)> {
        if p == 0 {
            return None;
        }
        let q = self.field.order() as u32;
        let i = p - 1;
        Some(((i % q) as Fe, ((i / q) % q) as Fe, (i / (q * q)) as Fe))
    }

    fn normalize(&self, mut p: [Fe; 7]) -> Result<[Fe; 7]> {
        let lead = *p.iter().find(|&&c| c != 0).ok_or_else(|| Error::Construction("zero vector".into()))?;
        let s = self.field.inv(lead)?;
        for c in &mut p {
            *c = self.field.mul(*c, s);
        }
        Ok(p)
    }

    /// The permutation of the point set induced by `m` acting on row vectors.
    pub fn permutation(&self, m: &Matrix) -> Result<Permutation> {
        let f = &self.field;
        let images = self
            .points
            .iter()
            .map(|p| {
                let mut out = [0; 7];
                for (j, o) in out.iter_mut().enumerate() {
                    for i in 0..7 {
                        *o = f.add(*o, f.mul(p[i], m[i][j]));
                    }
                }
                let out = self.normalize(out)?;
                self.index
                    .get(&self.key(&out))
                    .copied()
                    .ok_or_else(|| Error::Construction("matrix does not preserve the point set".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        Permutation::new(images)
    }

    /// The unipotent element x(t, u, v) fixing ∞.
    pub fn unipotent(&self, t: Fe, u: Fe, v: Fe) -> Matrix {
        let f = &self.field;
        let th = self.theta;
        let p = |a: Fe, k: i64| f.pow(a, k);
        let m = |a: Fe, b: Fe| f.mul(a, b);
        let n = |a: Fe| f.neg(a);
        let sum = |xs: &[Fe]| xs.iter().fold(0, |acc, &x| f.add(acc, x));
        let tu = m(t, u);
        let tv = m(t, v);
        let uv = m(u, v);
        let tuv = m(tu, v);
        let mut x = [[0; 7]; 7];
        for (i, row) in x.iter_mut().enumerate() {
            row[i] = 1;
        }
        x[0][1] = p(t, th);
        x[0][2] = n(p(u, th));
        x[0][3] = f.sub(p(tu, th), p(v, th));
        x[0][4] = sum(&[n(u), n(p(t, 3 * th + 1)), n(p(tv, th))]);
        x[0][5] = sum(&[n(v), n(p(uv, th)), n(p(t, 3 * th + 2)), n(m(p(t, th), p(u, 2 * th)))]);
        x[0][6] = sum(&[
            m(p(t, th), v),
            n(p(u, th + 1)),
            p(t, 4 * th + 2),
            n(p(v, 2 * th)),
            n(m(p(t, 3 * th + 1), p(u, th))),
            n(p(tuv, th)),
        ]);
        x[1][2] = t;
        x[1][3] = f.add(p(u, th), p(t, th + 1));
        x[1][4] = f.sub(n(p(t, 2 * th + 1)), p(v, th));
        x[1][5] = sum(&[n(p(u, 2 * th)), m(p(t, th + 1), p(u, th)), m(t, p(v, th))]);
        x[1][6] = sum(&[
            v,
            tu,
            n(m(p(t, 2 * th + 1), p(u, th))),
            n(p(uv, th)),
            n(p(t, 3 * th + 2)),
            n(m(p(t, th + 1), p(v, th))),
        ]);
        x[2][3] = p(t, th);
        x[2][4] = n(p(t, 2 * th));
        x[2][5] = f.add(p(v, th), p(tu, th));
        x[2][6] = sum(&[u, p(t, 3 * th + 1), n(p(tv, th)), n(m(p(t, 2 * th), p(u, th)))]);
        x[3][4] = p(t, th);
        x[3][5] = p(u, th);
        x[3][6] = f.sub(p(tu, th), p(v, th));
        x[4][5] = n(t);
        x[4][6] = f.add(p(u, th), p(t, th + 1));
        x[5][6] = n(p(t, th));
        x
    }

    /// The torus element h(λ), λ ≠ 0.
    pub fn torus(&self, lambda: Fe) -> Matrix {
        let f = &self.field;
        let th = self.theta;
        let exps = [th, 1 - th, 2 * th - 1, 0, 1 - 2 * th, th - 1, -th];
        let mut h = [[0; 7]; 7];
        for (i, &k) in exps.iter().enumerate() {
            h[i][i] = f.pow(lambda, k);
        }
        h
    }

    /// The Weyl element swapping ∞ and (0, 0, 0): the anti-diagonal of −1s.
    pub fn weyl(&self) -> Matrix {
        let mut r = [[0; 7]; 7];
        for (i, row) in r.iter_mut().enumerate() {
            row[6 - i] = self.field.neg(1);
        }
        r
    }
}
