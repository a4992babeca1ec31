use std::sync::Arc;

use super::mpoly::MPoly;
use super::registry::VarRegistry;
use super::PolyError;

/// Largest size accepted by the cofactor-expansion determinant.
pub const LAPLACE_MAX: usize = 10;

/// Dense matrix of polynomials over one registry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    reg: Arc<VarRegistry>,
    rows: usize,
    cols: usize,
    data: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn zeros(reg: &Arc<VarRegistry>, rows: usize, cols: usize) -> Self {
        PolyMatrix { reg: reg.clone(), rows, cols, data: vec![MPoly::zero(reg); rows * cols] }
    }

    pub fn from_fn(
        reg: &Arc<VarRegistry>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> MPoly,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix { reg: reg.clone(), rows, cols, data }
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MPoly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.reg, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Keep the listed rows and columns (0-based, in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(&self.reg, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Delete the listed rows and columns (0-based); the rest keeps its order.
    pub fn minor(&self, del_rows: &[usize], del_cols: &[usize]) -> Result<PolyMatrix, PolyError> {
        if let Some(&i) = del_rows.iter().find(|&&i| i >= self.rows) {
            return Err(PolyError::IndexOutOfRange(i));
        }
        if let Some(&j) = del_cols.iter().find(|&&j| j >= self.cols) {
            return Err(PolyError::IndexOutOfRange(j));
        }
        let rows: Vec<usize> = (0..self.rows).filter(|i| !del_rows.contains(i)).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|j| !del_cols.contains(j)).collect();
        Ok(self.submatrix(&rows, &cols))
    }

    /// Fraction-free Gaussian elimination with row pivoting.
    pub fn det_bareiss(&self) -> Result<MPoly, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(MPoly::one(&self.reg));
        }
        let mut a = self.data.clone();
        let mut negate = false;
        let mut prev = MPoly::one(&self.reg);
        for k in 0..n - 1 {
            // Sparsest nonzero pivot keeps intermediate entries small.
            let pivot = (k..n)
                .filter(|&i| !a[i * n + k].is_zero())
                .min_by_key(|&i| a[i * n + k].num_terms());
            let Some(p) = pivot else {
                return Ok(MPoly::zero(&self.reg));
            };
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            let akk = a[k * n + k].clone();
            for i in k + 1..n {
                let aik = a[i * n + k].clone();
                for j in k + 1..n {
                    let mut t = &akk * &a[i * n + j];
                    if !aik.is_zero() && !a[k * n + j].is_zero() {
                        t = &t - &(&aik * &a[k * n + j]);
                    }
                    a[i * n + j] = if prev.is_one() { t } else { t.exact_div(&prev)? };
                }
                a[i * n + k] = MPoly::zero(&self.reg);
            }
            prev = akk;
        }
        let d = a[n * n - 1].clone();
        Ok(if negate { d.negate() } else { d })
    }

    /// Cofactor expansion along the first row. Only for small matrices.
    pub fn det_laplace(&self) -> Result<MPoly, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows > LAPLACE_MAX {
            return Err(PolyError::TooLarge { size: self.rows, max: LAPLACE_MAX });
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.laplace(&idx, &idx))
    }

    fn laplace(&self, rows: &[usize], cols: &[usize]) -> MPoly {
        if rows.is_empty() {
            return MPoly::one(&self.reg);
        }
        let r = rows[0];
        let mut out = MPoly::zero(&self.reg);
        for (k, &c) in cols.iter().enumerate() {
            let entry = self.get(r, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = entry * &self.laplace(&rows[1..], &rest);
            if k % 2 == 0 {
                out.add_assign_ref(&sub);
            } else {
                out.add_assign_ref(&sub.negate());
            }
        }
        out
    }
}
