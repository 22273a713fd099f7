//! Dense exact linear algebra over the coefficient field.
//!
//! Everything here is plain Gaussian elimination with exact arithmetic; the
//! matrices that show up are bidegree pieces of free modules, a few hundred
//! rows at most, so no pivoting strategy beyond "first nonzero" is needed.

use crate::field::Field;
use crate::{Error, Result};

/// Row-major dense matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> FieldMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> FieldMatrix<F> {
        let entries = vec![field.zero(); rows * cols];
        FieldMatrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<FieldMatrix<F>> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("rows of unequal length".into()));
        }
        Ok(FieldMatrix {
            field,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(field: F, n: usize) -> FieldMatrix<F> {
        let mut m = FieldMatrix::zeros(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> FieldMatrix<F> {
        let mut t = FieldMatrix::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix product self * rhs.
    pub fn mul(&self, rhs: &FieldMatrix<F>) -> Result<FieldMatrix<F>> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        let mut out = FieldMatrix::zeros(f.clone(), self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if f.is_zero(b) {
                        continue;
                    }
                    let prod = f.mul(a, b);
                    let cur = out.get(r, c);
                    out.set(r, c, f.add(cur, &prod));
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product self * v.
    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for r in 0..self.rows {
            let mut acc = f.zero();
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !f.is_zero(a) && !f.is_zero(&v[c]) {
                    acc = f.add(&acc, &f.mul(a, &v[c]));
                }
            }
            out[r] = acc;
        }
        Ok(out)
    }

    /// Rank via forward elimination on a working copy.
    pub fn rank(&self) -> usize {
        let f = self.field.clone();
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0usize;
        for col in 0..cols {
            // find a pivot at or below `rank`
            let mut pivot = None;
            for r in rank..rows {
                if !f.is_zero(&m[r * cols + col]) {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot else { continue };
            m.swap_chunks(pr, rank, cols);
            let inv = f.inv(&m[rank * cols + col]).expect("nonzero pivot");
            for c in col..cols {
                m[rank * cols + c] = f.mul(&m[rank * cols + c], &inv);
            }
            for r in rank + 1..rows {
                let factor = m[r * cols + col].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..cols {
                    let sub = f.mul(&factor, &m[rank * cols + c]);
                    m[r * cols + c] = f.sub(&m[r * cols + c], &sub);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Reduced row echelon form with pivot column tracking. Zero rows are
    /// dropped from the result.
    pub fn rref(&self) -> EchelonForm<F> {
        let f = self.field.clone();
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0usize;
        for col in 0..cols {
            let mut pivot = None;
            for r in rank..rows {
                if !f.is_zero(&m[r * cols + col]) {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot else { continue };
            m.swap_chunks(pr, rank, cols);
            let inv = f.inv(&m[rank * cols + col]).expect("nonzero pivot");
            for c in col..cols {
                m[rank * cols + c] = f.mul(&m[rank * cols + c], &inv);
            }
            for r in 0..rows {
                if r == rank {
                    continue;
                }
                let factor = m[r * cols + col].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..cols {
                    let sub = f.mul(&factor, &m[rank * cols + c]);
                    m[r * cols + c] = f.sub(&m[r * cols + c], &sub);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows {
                break;
            }
        }
        m.truncate(rank * cols);
        EchelonForm {
            matrix: FieldMatrix {
                field: f,
                rows: rank,
                cols,
                entries: m,
            },
            pivots,
        }
    }

    /// A basis of the right kernel {v : self * v = 0}, one vector per free
    /// column, in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let ech = self.rref();
        let pivot_set: std::collections::BTreeMap<usize, usize> = ech
            .pivots
            .iter()
            .enumerate()
            .map(|(row, &col)| (col, row))
            .collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains_key(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (&col, &row) in &pivot_set {
                v[col] = f.neg(ech.matrix.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of self * v = rhs with all free coordinates zero, or
    /// None when the system is inconsistent.
    pub fn solve(&self, rhs: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if rhs.len() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side has {} entries for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let f = self.field.clone();
        let mut aug = FieldMatrix::zeros(f.clone(), self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let ech = aug.rref();
        if ech.pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut v = vec![f.zero(); self.cols];
        for (row, &col) in ech.pivots.iter().enumerate() {
            v[col] = ech.matrix.get(row, self.cols).clone();
        }
        Ok(Some(v))
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize);
}

impl<T> SwapChunks for Vec<T> {
    fn swap_chunks(&mut self, a: usize, b: usize, width: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (head, tail) = self.split_at_mut(hi * width);
        head[lo * width..(lo + 1) * width].swap_with_slice(&mut tail[..width]);
    }
}

/// Result of `rref`: the reduced matrix (zero rows dropped) and its pivot
/// columns in increasing order.
#[derive(Clone, Debug)]
pub struct EchelonForm<F: Field> {
    pub matrix: FieldMatrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> EchelonForm<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Dimension of ker(a) / im(b) for consecutive maps a: B -> C, b: A -> B
/// with a * b = 0. The composition is verified.
pub fn homology_dim<F: Field>(a: &FieldMatrix<F>, b: &FieldMatrix<F>) -> Result<usize> {
    if a.cols() != b.rows() {
        return Err(Error::Shape(format!(
            "maps do not chain: a is {}x{}, b is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if !a.mul(b)?.is_zero() {
        return Err(Error::ComposeNonzero { position: 0 });
    }
    let ker = a.cols() - a.rank();
    let im = b.rank();
    debug_assert!(im <= ker, "im b not contained in ker a despite a*b = 0");
    Ok(ker - im)
}
