//! Dense exact linear algebra over a [`Scalar`] field.

use serde::{Deserialize, Serialize};

use crate::scalars::Scalar;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<S>]) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<S>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().cloned());
        }
        Mat { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: S) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] += &(a.clone() * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = vec![S::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += &(a.clone() * x);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &S) -> Mat<S> {
        let data = self.data.iter().map(|a| a.clone() * s).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn rank(&self) -> usize {
        rref(self).pivots.len()
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let r = rref(self);
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![S::zero(); self.cols];
                x[fc] = S::one();
                for (ri, &pc) in r.pivots.iter().enumerate() {
                    x[pc] = -r.m.get(ri, fc).clone();
                }
                x
            })
            .collect()
    }

    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = pick_pivot(&a, c, c) else {
                return S::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det *= &piv;
            let inv = piv.try_inv().unwrap();
            for r in c + 1..n {
                let f = a.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                let f = f * &inv;
                for k in c..n {
                    let t = a.get(c, k).clone();
                    if !t.is_zero() {
                        let idx = r * n + k;
                        a.data[idx] -= &(f.clone() * &t);
                    }
                }
            }
        }
        det
    }

    /// Solves `self·x = b`, returning one solution if any.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let r = rref(&aug);
        if r.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (ri, &pc) in r.pivots.iter().enumerate() {
            x[pc] = r.m.get(ri, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat<S>> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, S::one());
        }
        let r = rref(&aug);
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.m.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }
}

fn pick_pivot<S: Scalar>(a: &Mat<S>, col: usize, from: usize) -> Option<usize> {
    (from..a.rows)
        .filter(|&r| !a.get(r, col).is_zero())
        .min_by_key(|&r| a.get(r, col).cost())
}

pub struct Rref<S> {
    pub m: Mat<S>,
    pub pivots: Vec<usize>,
}

/// Reduced row-echelon form (pivot columns scanned left to right).
pub fn rref<S: Scalar>(a: &Mat<S>) -> Rref<S> {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = pick_pivot(&m, c, row) else {
            continue;
        };
        m.swap_rows(p, row);
        let inv = m.get(row, c).try_inv().unwrap();
        for k in c..m.cols {
            let v = m.get(row, k).clone();
            if !v.is_zero() {
                m.set(row, k, v * &inv);
            }
        }
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let f = m.get(r, c).clone();
            if f.is_zero() {
                continue;
            }
            for k in c..m.cols {
                let t = m.get(row, k).clone();
                if !t.is_zero() {
                    let idx = r * m.cols + k;
                    m.data[idx] -= &(f.clone() * &t);
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    m.rows = row.max(0);
    m.data.truncate(row * m.cols);
    Rref { m, pivots }
}

/// Incrementally grown linearly independent family, with the ability to
/// express dependent vectors in terms of the accepted members.
#[derive(Clone, Debug)]
pub struct IncrementalBasis<S> {
    len: usize,
    // (pivot, reduced row with pivot entry 1, combination of members)
    rows: Vec<(usize, Vec<S>, Vec<S>)>,
    members: usize,
}

pub enum Insert<S> {
    /// The vector was independent; it is member number `usize`.
    New(usize),
    /// The vector equals `Σ coords[j]·member_j`.
    Dependent(Vec<S>),
}

impl<S: Scalar> IncrementalBasis<S> {
    pub fn new(len: usize) -> Self {
        IncrementalBasis { len, rows: Vec::new(), members: 0 }
    }

    pub fn rank(&self) -> usize {
        self.members
    }

    fn reduce(&self, v: &[S]) -> (Vec<S>, Vec<(usize, S)>) {
        let mut v = v.to_vec();
        let mut used = Vec::new();
        for (t, (p, row, _)) in self.rows.iter().enumerate() {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(f.clone() * r);
                }
            }
            used.push((t, f));
        }
        (v, used)
    }

    fn combo(&self, used: &[(usize, S)], extra: usize) -> Vec<S> {
        let mut c = vec![S::zero(); self.members + extra];
        for (t, f) in used {
            for (x, y) in c.iter_mut().zip(&self.rows[*t].2) {
                if !y.is_zero() {
                    *x += &(f.clone() * y);
                }
            }
        }
        c
    }

    /// Coordinates of `v` in the members, if `v` lies in their span.
    pub fn express(&self, v: &[S]) -> Option<Vec<S>> {
        assert_eq!(v.len(), self.len);
        let (r, used) = self.reduce(v);
        if r.iter().all(|x| x.is_zero()) {
            Some(self.combo(&used, 0))
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[S]) -> bool {
        let (r, _) = self.reduce(v);
        r.iter().all(|x| x.is_zero())
    }

    pub fn insert(&mut self, v: &[S]) -> Insert<S> {
        assert_eq!(v.len(), self.len);
        let (r, used) = self.reduce(v);
        let Some(p) = (0..r.len()).filter(|&k| !r[k].is_zero()).min_by_key(|&k| r[k].cost()) else {
            return Insert::Dependent(self.combo(&used, 0));
        };
        // member_new - Σ f_t row_t = r, so row = r / r[p] has combo (e_new - Σ f_t C_t) / r[p]
        let mut c: Vec<S> = self.combo(&used, 1).into_iter().map(|x| -x).collect();
        let idx = self.members;
        c[idx] = S::one();
        let inv = r[p].try_inv().unwrap();
        let row: Vec<S> = r.into_iter().map(|x| if x.is_zero() { x } else { x * &inv }).collect();
        let c: Vec<S> = c.into_iter().map(|x| if x.is_zero() { x } else { x * &inv }).collect();
        for (_, _, cc) in self.rows.iter_mut() {
            cc.push(S::zero());
        }
        self.rows.push((p, row, c));
        self.members += 1;
        Insert::New(idx)
    }
}

pub fn vec_is_zero<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y).collect()
}

pub fn vec_sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y).collect()
}

pub fn vec_scale<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    a.iter().map(|x| if x.is_zero() { x.clone() } else { x.clone() * s }).collect()
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x.clone() * y);
        }
    }
    acc
}

/// If `a = c·b` for a nonzero scalar `c`, returns `c`.
pub fn proportionality<S: Scalar>(a: &[S], b: &[S]) -> Option<S> {
    let k = b.iter().position(|x| !x.is_zero())?;
    let c = a[k].clone() / &b[k];
    if c.is_zero() {
        return None;
    }
    let ok = a.iter().zip(b).all(|(x, y)| *x == c.clone() * y);
    ok.then_some(c)
}
