//! Dense matrices over an exact field and incremental row reduction.

use std::fmt;

use crate::scalar::{ExactScalar, Field, Rational};

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{:?}", self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::fzero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::fone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.fis_zero())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.fadd(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.fsub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| if x.fis_zero() { F::fzero() } else { x.fmul(c) })
    }

    /// `self += c · o`.
    pub fn add_scaled(&mut self, c: &F, o: &Self) {
        if c.fis_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.fis_zero() {
                *a = a.fadd(&b.fmul(c));
            }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out: Matrix<F> = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.fis_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.fis_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].fadd(&a.fmul(b));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::fzero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.fis_zero() && !b.fis_zero() {
                        acc = acc.fadd(&a.fmul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Matrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.fis_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.fis_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a.fmul(b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Row-reduced echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut span = Span::new(self.cols);
        for r in 0..self.rows {
            span.insert(self.row(r).to_vec());
        }
        let pivots = span.pivots().to_vec();
        let rows = span.basis().to_vec();
        let m = if rows.is_empty() {
            Matrix::zeros(0, self.cols)
        } else {
            Matrix::from_rows(rows)
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut span = Span::new(self.cols);
        for r in 0..self.rows {
            span.insert(self.row(r).to_vec());
        }
        span.kernel()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv: Matrix<F> = Matrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).fis_zero())?;
            if piv != col {
                for c in 0..n {
                    a.data.swap(piv * n + c, col * n + c);
                    inv.data.swap(piv * n + c, col * n + c);
                }
            }
            let p = a.get(col, col).finv();
            for c in 0..n {
                let x = a.get(col, c).fmul(&p);
                a.set(col, c, x);
                let y = inv.get(col, c).fmul(&p);
                inv.set(col, c, y);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.fis_zero() {
                    continue;
                }
                for c in 0..n {
                    let x = a.get(r, c).fsub(&f.fmul(a.get(col, c)));
                    a.set(r, c, x);
                    let y = inv.get(r, c).fsub(&f.fmul(inv.get(col, c)));
                    inv.set(r, c, y);
                }
            }
        }
        Some(inv)
    }
}

impl Matrix<ExactScalar> {
    pub fn conj_transpose(&self) -> Self {
        self.transpose().map(|x| x.conj())
    }

    pub fn from_rational(m: &Matrix<Rational>) -> Self {
        m.map(|x| ExactScalar::from_rational(x.clone()))
    }
}

/// Row space maintained in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Span<F> {
    dim: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Span<F> {
    pub fn new(dim: usize) -> Self {
        Span {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after elimination against the current basis.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.dim, "vector length does not match span");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = v[p].clone();
            if f.fis_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.fis_zero() {
                    *x = x.fsub(&f.fmul(r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.fis_zero())
    }

    /// Add `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        let mut v = self.reduce(&v);
        let p = match v.iter().position(|x| !x.fis_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = v[p].finv();
        for x in v.iter_mut() {
            if !x.fis_zero() {
                *x = x.fmul(&inv);
            }
        }
        for row in self.rows.iter_mut() {
            let f = row[p].clone();
            if f.fis_zero() {
                continue;
            }
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.fis_zero() {
                    *x = x.fsub(&f.fmul(r));
                }
            }
        }
        let pos = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.rows.insert(pos, v);
        self.pivots.insert(pos, p);
        true
    }

    pub fn contains_span(&self, other: &Span<F>) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Basis of the orthogonal kernel `{x : row · x = 0 for every row}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut out = Vec::new();
        for free in 0..self.dim {
            if self.pivots.contains(&free) {
                continue;
            }
            let mut x = vec![F::fzero(); self.dim];
            x[free] = F::fone();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                x[p] = row[free].fneg();
            }
            out.push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn rank_plus_kernel_is_width() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = a.kernel();
        assert_eq!(a.rank() + k.len(), 4);
        for v in &k {
            assert!(a.apply(v).iter().all(|x| x.fis_zero()));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kron_dimensions_and_entries() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(1, 2), &int(2));
        assert_eq!(k.get(2, 1), &int(3));
    }

    #[test]
    fn span_membership() {
        let mut s = Span::new(3);
        assert!(s.insert(vec![int(1), int(1), int(0)]));
        assert!(s.insert(vec![int(0), int(1), int(1)]));
        assert!(!s.insert(vec![int(1), int(2), int(1)]));
        assert!(s.contains(&[int(1), int(0), int(-1)]));
        assert!(!s.contains(&[int(0), int(0), int(1)]));
    }
}
