use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// `Q = Rᵀ D R` with `R` unit upper triangular, so that
/// `vᵀQv = Σ_i D_i (v_i + Σ_{j>i} R_ij v_j)²`.
struct Ldl {
    d: Vec<BigRational>,
    r: Vec<Vec<BigRational>>,
}

fn ldl(q: &RatMatrix) -> Ldl {
    let n = q.rows();
    let mut d = vec![BigRational::zero(); n];
    let mut r = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut di = q.get(i, i).clone();
        for k in 0..i {
            di -= &d[k] * &r[k][i] * &r[k][i];
        }
        d[i] = di;
        for j in i + 1..n {
            let mut x = q.get(i, j).clone();
            for k in 0..i {
                x -= &d[k] * &r[k][i] * &r[k][j];
            }
            r[i][j] = x / &d[i];
        }
    }
    Ldl { d, r }
}

/// All integer vectors `v` with `vᵀQv = target`, `Q` positive definite.
pub fn vectors_of_norm(q: &IntMatrix, target: &BigInt) -> Vec<Vec<BigInt>> {
    let n = q.rows();
    let f = ldl(&q.to_rat());
    let mut out = Vec::new();
    let mut v = vec![BigInt::zero(); n];
    if n == 0 {
        if target.is_zero() {
            out.push(v);
        }
        return out;
    }
    descend(
        &f,
        n - 1,
        BigRational::from_integer(target.clone()),
        &mut v,
        &mut out,
    );
    out
}

fn descend(f: &Ldl, i: usize, rem: BigRational, v: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
    let n = v.len();
    let mut center = BigRational::zero();
    for j in i + 1..n {
        center -= &f.r[i][j] * BigRational::from_integer(v[j].clone());
    }
    let bound = &rem / &f.d[i];
    let fits = |x: &BigInt| {
        let t = BigRational::from_integer(x.clone()) - &center;
        &t * &t <= bound
    };
    let start = center.floor().to_integer();
    let mut xs = Vec::new();
    let mut x = start.clone();
    while fits(&x) {
        xs.push(x.clone());
        x -= 1;
    }
    let mut x = start + 1;
    while fits(&x) {
        xs.push(x.clone());
        x += 1;
    }
    xs.sort();
    for x in xs {
        let t = BigRational::from_integer(x.clone()) - &center;
        let left = &rem - &f.d[i] * &t * &t;
        v[i] = x;
        if i == 0 {
            if left.is_zero() {
                out.push(v.clone());
            }
        } else {
            descend(f, i - 1, left, v, out);
        }
    }
    v[i] = BigInt::zero();
}

/// Resumable enumeration of all unimodular `B` with `Bᵀ Q₂ B = Q₁`.
pub struct GramIsometries {
    q1: IntMatrix,
    candidates: Vec<Vec<Vec<BigInt>>>,
    images: Vec<Vec<Vec<BigInt>>>,
    chosen: Vec<usize>,
    cursor: usize,
    yielded: bool,
    done: bool,
}

pub fn gram_isometries(q1: &IntMatrix, q2: &IntMatrix) -> Result<GramIsometries> {
    if !q1.is_square() || !q2.is_square() || q1.rows() != q2.rows() {
        return Err(Error::Dimension(format!(
            "Gram matrices {}x{} and {}x{}",
            q1.rows(),
            q1.cols(),
            q2.rows(),
            q2.cols()
        )));
    }
    for q in [q1, q2] {
        if !q.to_rat().is_positive_definite() {
            return Err(Error::NotPositiveDefinite(q.to_string()));
        }
    }
    let g = q1.rows();
    let mut done = q1.det() != q2.det();
    let mut cache: HashMap<BigInt, Vec<Vec<BigInt>>> = HashMap::new();
    let mut candidates = Vec::with_capacity(g);
    let mut images = Vec::with_capacity(g);
    if !done {
        for i in 0..g {
            let norm = q1.get(i, i).clone();
            let vs = cache
                .entry(norm.clone())
                .or_insert_with(|| vectors_of_norm(q2, &norm))
                .clone();
            if vs.is_empty() {
                done = true;
            }
            images.push(vs.iter().map(|v| q2.mul_vec(v)).collect());
            candidates.push(vs);
        }
    }
    Ok(GramIsometries {
        q1: q1.clone(),
        candidates,
        images,
        chosen: Vec::new(),
        cursor: 0,
        yielded: false,
        done,
    })
}

impl GramIsometries {
    fn consistent(&self, k: usize, c: usize) -> bool {
        let w = &self.images[k][c];
        self.chosen.iter().enumerate().all(|(j, &cj)| {
            let v = &self.candidates[j][cj];
            let dot: BigInt = v.iter().zip(w).map(|(a, b)| a * b).sum();
            &dot == self.q1.get(j, k)
        })
    }

    fn search(&mut self) -> bool {
        let g = self.q1.rows();
        loop {
            let k = self.chosen.len();
            if k == g {
                return true;
            }
            let found = (self.cursor..self.candidates[k].len()).find(|&c| self.consistent(k, c));
            match found {
                Some(c) => {
                    self.chosen.push(c);
                    self.cursor = 0;
                }
                None => match self.chosen.pop() {
                    Some(c) => self.cursor = c + 1,
                    None => return false,
                },
            }
        }
    }

    fn current(&self) -> IntMatrix {
        let g = self.q1.rows();
        let cols: Vec<Vec<BigInt>> = self
            .chosen
            .iter()
            .enumerate()
            .map(|(k, &c)| self.candidates[k][c].clone())
            .collect();
        IntMatrix::from_columns(&cols, g)
    }
}

impl Iterator for GramIsometries {
    type Item = IntMatrix;

    fn next(&mut self) -> Option<IntMatrix> {
        if self.done {
            return None;
        }
        let g = self.q1.rows();
        if g == 0 {
            self.done = true;
            return Some(IntMatrix::zeros(0, 0));
        }
        if self.yielded {
            let c = self.chosen.pop().expect("full assignment");
            self.cursor = c + 1;
        }
        if self.search() {
            self.yielded = true;
            let b = self.current();
            debug_assert!(b.det().abs() == BigInt::from(1));
            Some(b)
        } else {
            self.done = true;
            None
        }
    }
}

/// Scale two rational symmetric matrices by one common positive integer so both become integral.
pub fn clear_denominators(a: &RatMatrix, b: &RatMatrix) -> (IntMatrix, IntMatrix) {
    let l = a.denominator_lcm().lcm(&b.denominator_lcm());
    let s = BigRational::from_integer(l);
    (
        a.scale(&s).to_int().expect("cleared"),
        b.scale(&s).to_int().expect("cleared"),
    )
}
