use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `u * m * v = s` with `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// Nonzero invariant factors, in divisibility order.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        for k in 0..self.a[0].len() {
            let x = &self.a[t][k] * q;
            self.a[i][k] -= x;
        }
        for k in 0..self.u[0].len() {
            let x = &self.u[t][k] * q;
            self.u[i][k] -= x;
        }
        for row in self.u_inv.iter_mut() {
            let x = &row[i] * q;
            row[t] += x;
        }
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for row in self.a.iter_mut() {
            let x = &row[t] * q;
            row[j] -= x;
        }
        for row in self.v.iter_mut() {
            let x = &row[t] * q;
            row[j] -= x;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -x.clone();
        }
        for x in self.u[i].iter_mut() {
            *x = -x.clone();
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -row[i].clone();
        }
    }
}

fn to_vecs(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows()
}

fn from_vecs(v: Vec<Vec<BigInt>>, cols: usize) -> IntMatrix {
    IntMatrix::from_rows(v, cols)
}

/// Smith normal form with transforms; the pivot is always an entry of least absolute value.
pub fn snf(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: to_vecs(m),
        u: to_vecs(&IntMatrix::identity(rows)),
        u_inv: to_vecs(&IntMatrix::identity(rows)),
        v: to_vecs(&IntMatrix::identity(cols)),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_entry(&w.a, t, |_, _| true) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.row_sub(i, t, &q);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.col_sub(j, t, &q);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if !clean {
                let (pi, pj) = min_entry(&w.a, t, |i, j| i == t || j == t).unwrap();
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            let pivot = w.a[t][t].clone();
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w.a[i][j].is_multiple_of(&pivot));
            match bad {
                Some((i, _)) => w.row_sub(t, i, &-BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let smith = Smith {
        s: from_vecs(w.a, cols),
        u: from_vecs(w.u, rows),
        u_inv: from_vecs(w.u_inv, rows),
        v: from_vecs(w.v, cols),
        rank: t,
    };
    debug_assert_eq!(&(&smith.u * m) * &smith.v, smith.s);
    smith
}

fn min_entry(
    a: &[Vec<BigInt>],
    t: usize,
    allow: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() || !allow(i, j) {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Columns form a saturated basis of the integer kernel.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = snf(m);
    let idx: Vec<usize> = (s.rank..m.cols()).collect();
    s.v.select_columns(&idx)
}

/// Torsion-free part of the cokernel of `m: Z^n -> Z^m`.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub rank: usize,
    /// `rank x m` matrix sending `Z^m` onto the torsion-free quotient.
    pub projection: IntMatrix,
    /// `m x rank` matrix whose columns lift the quotient basis.
    pub lifts: IntMatrix,
    /// Invariant factors of the image, the non-unit ones give the torsion.
    pub invariants: Vec<BigInt>,
}

pub fn cokernel_tf(m: &IntMatrix) -> Cokernel {
    let s = snf(m);
    let idx: Vec<usize> = (s.rank..m.rows()).collect();
    Cokernel {
        rank: idx.len(),
        projection: s.u.select_rows(&idx),
        lifts: s.u_inv.select_columns(&idx),
        invariants: s.invariants(),
    }
}
