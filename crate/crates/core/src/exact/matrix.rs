use std::fmt;

use super::{echelon, Scalar, Vector};

/// Sparse exact matrix stored by columns, so column `j` is the image of
/// the `j`-th domain basis vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vector>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix { nrows, ncols, cols: vec![Vector::zeros(nrows); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { nrows: n, ncols: n, cols: (0..n).map(|i| Vector::basis(n, i)).collect() }
    }

    pub fn from_columns(nrows: usize, cols: Vec<Vector>) -> Self {
        for c in &cols {
            assert_eq!(c.dim(), nrows, "column length does not match row count");
        }
        Matrix { nrows, ncols: cols.len(), cols }
    }

    pub fn from_rows(ncols: usize, rows: &[Vector]) -> Self {
        Matrix::from_columns(ncols, rows.to_vec()).transpose()
    }

    /// Dense row-major integer literal, handy in tests and small examples.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut items: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); ncols];
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged matrix literal");
            for (j, &v) in r.iter().enumerate() {
                if v != 0 {
                    items[j].push((i, Scalar::from_int(v)));
                }
            }
        }
        let cols = items.into_iter().map(|e| Vector::from_entries(nrows, e)).collect();
        Matrix { nrows, ncols, cols }
    }

    /// Matrix of the partial function `j -> Some(i)` sending basis vector `j` to basis vector `i`.
    pub fn from_basis_map(nrows: usize, images: &[Option<usize>]) -> Self {
        let cols = images
            .iter()
            .map(|im| match im {
                Some(i) => Vector::basis(nrows, *i),
                None => Vector::zeros(nrows),
            })
            .collect();
        Matrix { nrows, ncols: images.len(), cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn col(&self, j: usize) -> &Vector {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.cols[j].get(i)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vector::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vector::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols && self.cols.iter().enumerate().all(|(j, c)| *c == Vector::basis(self.nrows, j))
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(v.dim(), self.ncols, "matrix/vector dimension mismatch");
        Vector::linear_combination(self.nrows, v.iter().map(|(j, x)| (x.clone(), &self.cols[j])))
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ncols, rhs.nrows, "matrix product dimension mismatch");
        Matrix { nrows: self.nrows, ncols: rhs.ncols, cols: rhs.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add_scaled(&self, c: &Scalar, rhs: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols), "matrix sum dimension mismatch");
        let cols = self.cols.iter().zip(&rhs.cols).map(|(a, b)| a.add_scaled(c, b)).collect();
        Matrix { nrows: self.nrows, ncols: self.ncols, cols }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.add_scaled(&Scalar::one(), rhs)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add_scaled(&-Scalar::one(), rhs)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { nrows: self.nrows, ncols: self.ncols, cols: self.cols.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn linear_combination<'a, I>(nrows: usize, ncols: usize, terms: I) -> Matrix
    where
        I: IntoIterator<Item = (Scalar, &'a Matrix)>,
    {
        let mut items: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); ncols];
        for (c, m) in terms {
            assert_eq!((m.nrows, m.ncols), (nrows, ncols), "matrix dimension mismatch");
            if c.is_zero() {
                continue;
            }
            for (j, col) in m.cols.iter().enumerate() {
                items[j].extend(col.iter().map(|(i, x)| (i, x * &c)));
            }
        }
        let cols = items.into_iter().map(|e| Vector::from_entries(nrows, e)).collect();
        Matrix { nrows, ncols, cols }
    }

    pub fn transpose(&self) -> Matrix {
        let mut items: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                items[i].push((j, x.clone()));
            }
        }
        let cols = items.into_iter().map(|e| Vector::from_sorted(self.ncols, e)).collect();
        Matrix { nrows: self.ncols, ncols: self.nrows, cols }
    }

    pub fn rows(&self) -> Vec<Vector> {
        self.transpose().cols
    }

    /// Kronecker product with lexicographic index order.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut cols = Vec::with_capacity(self.ncols * rhs.ncols);
        for a in &self.cols {
            for b in &rhs.cols {
                cols.push(a.tensor(b));
            }
        }
        Matrix { nrows: self.nrows * rhs.nrows, ncols: self.ncols * rhs.ncols, cols }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, rhs: &Matrix) -> Matrix {
        let nrows = self.nrows + rhs.nrows;
        let mut cols = Vec::with_capacity(self.ncols + rhs.ncols);
        for c in &self.cols {
            cols.push(Vector::from_sorted(nrows, c.entries().to_vec()));
        }
        for c in &rhs.cols {
            cols.push(Vector::from_sorted(nrows, c.iter().map(|(i, x)| (i + self.nrows, x.clone())).collect()));
        }
        Matrix { nrows, ncols: self.ncols + rhs.ncols, cols }
    }

    /// Column-major flattening: entry `(i, j)` goes to `j * nrows + i`.
    pub fn flatten(&self) -> Vector {
        let mut entries = Vec::with_capacity(self.nnz());
        for (j, c) in self.cols.iter().enumerate() {
            entries.extend(c.iter().map(|(i, x)| (j * self.nrows + i, x.clone())));
        }
        Vector::from_sorted(self.nrows * self.ncols, entries)
    }

    pub fn unflatten(v: &Vector, nrows: usize, ncols: usize) -> Matrix {
        assert_eq!(v.dim(), nrows * ncols, "flattened length mismatch");
        let mut items: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); ncols];
        for (k, x) in v.iter() {
            items[k / nrows.max(1)].push((k % nrows.max(1), x.clone()));
        }
        let cols = items.into_iter().map(|e| Vector::from_sorted(nrows, e)).collect();
        Matrix { nrows, ncols, cols }
    }

    pub fn rank(&self) -> usize {
        let mut ech = echelon::Echelon::new(self.nrows);
        self.cols.iter().filter(|c| ech.insert(c)).count()
    }

    /// Basis of the null space, one vector per free column of the reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vector> {
        echelon::kernel_of_rows(self.ncols, self.rows())
    }

    /// Two-sided inverse when square and nonsingular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.nrows != self.ncols {
            return None;
        }
        let n = self.nrows;
        let sub = super::Subspace::spanned_by(n, self.cols.iter().cloned());
        if sub.dim() != n || sub.chosen().iter().enumerate().any(|(k, &j)| k != j) {
            return None;
        }
        let cols = (0..n).map(|i| sub.coords(&Vector::basis(n, i)).expect("full rank")).collect();
        Some(Matrix { nrows: n, ncols: n, cols })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.nrows, self.ncols)?;
        for r in self.rows() {
            let dense: Vec<String> = r.to_dense().iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", dense.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_example() {
        let a = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let b = Matrix::from_int_rows(&[&[2]]);
        assert_eq!(a.kron(&b), Matrix::from_int_rows(&[&[0, 2], &[2, 0]]));
    }

    #[test]
    fn flatten_round_trip() {
        let a = Matrix::from_int_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        let v = a.flatten();
        assert_eq!(v, Vector::from_ints(&[1, 4, 2, 5, 3, 6]));
        assert_eq!(Matrix::unflatten(&v, 2, 3), a);
    }

    #[test]
    fn inverse_of_permutation_and_singular() {
        let p = Matrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let q = p.inverse().unwrap();
        assert!(p.mul(&q).is_identity());
        assert!(Matrix::from_int_rows(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn rank_and_kernel() {
        let a = Matrix::from_int_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k, vec![Vector::from_ints(&[-1, 1])]);
    }
}
