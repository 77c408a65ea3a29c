//! Exact dense linear maps over `Scalar` and the elimination routines the
//! rest of the library leans on (inverse, rank, nullspace, solve).

use crate::error::HomlieError;
use crate::scalar::{scalar_eq, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>, // row-major
}

impl LinearMap {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LinearMap {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LinearMap::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut m = LinearMap::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        LinearMap {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Columns are the images of the source basis vectors.
    pub fn from_cols(cols: Vec<Vec<Scalar>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        LinearMap::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        LinearMap::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&n| Scalar::from_int(n)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        let mut m = LinearMap::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    let e = self.get(i, j);
                    if !e.is_zero() && !v[j].is_zero() {
                        acc = &acc + &(e * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        LinearMap::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        LinearMap::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        LinearMap::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn neg(&self) -> LinearMap {
        LinearMap::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn transpose(&self) -> LinearMap {
        LinearMap::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn direct_sum(&self, other: &LinearMap) -> LinearMap {
        let mut m = LinearMap::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Reduce in place to reduced row-echelon form; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    let a = self.get(row, j).clone();
                    let b = self.get(p, j).clone();
                    self.set(row, j, b);
                    self.set(p, j, a);
                }
            }
            let inv = self.get(row, col).try_inv().expect("pivot is nonzero");
            for j in col..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for j in col..self.cols {
                        let v = self.get(r, j) - &(&factor * self.get(row, j));
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of non-square map");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                for j in 0..n {
                    let a = m.get(col, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(col, j, b);
                    m.set(p, j, a);
                }
                det = det.neg();
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.try_inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if !m.get(r, col).is_zero() {
                    let factor = m.get(r, col) * &inv;
                    for j in col..n {
                        let v = m.get(r, j) - &(&factor * m.get(col, j));
                        m.set(r, j, v);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<LinearMap, HomlieError> {
        if !self.is_square() {
            return Err(HomlieError::DimensionMismatch(
                "inverse of non-square map".into(),
            ));
        }
        let n = self.rows;
        let mut aug = LinearMap::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return Err(HomlieError::SingularMap(format!("rank {}", pivots.len())));
        }
        Ok(LinearMap::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, n: i64) -> Result<LinearMap, HomlieError> {
        assert!(self.is_square());
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = LinearMap::identity(self.rows);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Basis of the right nullspace, one vector per free column, in reduced
    /// column-echelon form. Deterministic: free columns in increasing order,
    /// each basis vector has a 1 in its free coordinate.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let pivot_iter = pivots.iter();
        let mut pivot_rows = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_rows[c] = Some(r);
        }
        let _ = pivot_iter;
        for free in 0..self.cols {
            if pivot_rows[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (col, pr) in pivot_rows.iter().enumerate() {
                if let Some(r) = pr {
                    v[col] = m.get(*r, free).neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = b`; `None` when inconsistent. With free columns the
    /// solution with zero free coordinates is returned.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = LinearMap::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Equality up to rational/function-field promotion.
    pub fn eq_promoted(&self, other: &LinearMap) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| scalar_eq(self.get(i, j), other.get(i, j))))
    }
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn vec_eq(a: &[Scalar], b: &[Scalar]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| scalar_eq(x, y))
}

/// Standard basis vector.
pub fn basis_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}
