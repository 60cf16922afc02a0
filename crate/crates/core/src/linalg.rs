//! Dense exact linear algebra: matrices, reduced row-echelon form, kernels,
//! images and subspaces in canonical form.
//!
//! Pivots are always the first nonzero column of a row. Every [`Subspace`]
//! stores its basis in reduced row-echelon form, so two subspaces are equal
//! exactly when their bases are equal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A coordinate vector.
pub type Vector = Vec<Rational>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Rational, v: &[Rational]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// Row-major dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from row vectors. An empty list gives a `0 x cols` matrix.
    pub fn from_rows(rows: &[Vector], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    /// Convenience constructor from small integer entries.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect();
        Self::from_rows(&rows, cols).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = zero_vector(self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(&self.data, &rhs.data),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: sub_vectors(&self.data, &rhs.data),
        }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(c, &self.data),
        }
    }

    /// `self * rhs - rhs * self`
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Row-major flattening, used to treat `n x n` matrices as vectors of length `n^2`.
    pub fn to_flat(&self) -> Vector {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, v: &[Rational]) -> Matrix {
        Matrix::from_vec(rows, cols, v.to_vec()).expect("flat vector has wrong length")
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] *= &inv;
                }
            }
            let pivot_row: Vector = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if !pivot_row[j].is_zero() {
                        let d = &f * &pivot_row[j];
                        self[(i, j)] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space `{v : self * v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = zero_vector(self.cols);
            v[free] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, free)];
            }
            basis.push(v);
        }
        Subspace::span(self.cols, &basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows, &self.transpose().row_vectors())
    }

    /// Exact inverse, or `None` if the matrix is singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &pivot;
                for j in c..n {
                    let d = &f * &m[(c, j)];
                    m[(i, j)] -= d;
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_vectors().serialize(s)
    }
}

/// Deserializes a list of rows. The column count is taken from the first row,
/// so a matrix with zero rows cannot carry a column count; callers that need
/// one should check shapes against context.
impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vector> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(&rows, cols).map_err(serde::de::Error::custom)
    }
}

/// A linear subspace of `Q^n` with a basis in reduced row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis: Vec<Vector> = (0..ambient_dim)
            .map(|i| unit_vector(ambient_dim, i))
            .collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary vectors, canonicalized.
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Self {
        let m = Matrix::from_rows(vectors, ambient_dim).expect("vector length != ambient dim");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the basis components at pivot positions; zero iff `v` is in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = w[p].clone();
                axpy(&mut w, &-c, b);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length != ambient dim");
        is_zero_vector(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient_dim == self.ambient_dim && other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Linear combination of the basis with the given coordinates.
    pub fn combine(&self, coords: &[Rational]) -> Vector {
        let mut v = zero_vector(self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut v, c, b);
        }
        v
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &vs)
    }

    /// Indices of non-pivot columns; the unit vectors there span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(rename_all = "camelCase")]
        struct Raw {
            ambient_dim: usize,
            basis: Vec<Vector>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.basis.iter().any(|v| v.len() != raw.ambient_dim) {
            return Err(serde::de::Error::custom("basis vector length != ambientDim"));
        }
        Ok(Subspace::span(raw.ambient_dim, &raw.basis))
    }
}

/// `dim(big) - dim(small)`, after checking `small ⊆ big`.
pub fn quotient_dim(big: &Subspace, small: &Subspace) -> Result<usize> {
    if big.ambient_dim != small.ambient_dim || !big.contains_subspace(small) {
        return Err(Error::NotASubspace);
    }
    Ok(big.dim() - small.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use proptest::prelude::*;

    #[test]
    fn rref_identity() {
        let (r, p) = Matrix::identity(2).rref();
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one() {
        let m = Matrix::from_i64(&[&[2, 4], &[1, 2]]);
        let (r, p) = m.rref();
        assert_eq!(r, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[qi(-2), qi(1)]));
        assert!(is_zero_vector(&m.apply(&[qi(-2), qi(1)])));
    }

    #[test]
    fn kernel_trivial_cases() {
        assert_eq!(Matrix::identity(3).kernel().dim(), 0);
        assert_eq!(Matrix::zeros(3, 3).kernel().dim(), 3);
        assert_eq!(Matrix::zeros(0, 4).kernel().dim(), 4);
    }

    #[test]
    fn quotient_dims() {
        let s = Subspace::span(3, &[vec![qi(1), qi(1), qi(0)]]);
        assert_eq!(quotient_dim(&s, &s).unwrap(), 0);
        assert_eq!(quotient_dim(&Subspace::full(3), &Subspace::zero(3)).unwrap(), 3);
        let t = Subspace::span(3, &[vec![qi(0), qi(0), qi(1)]]);
        assert!(matches!(quotient_dim(&s, &t), Err(Error::NotASubspace)));
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_rows(
            &[vec![qi(1), qi(1)], vec![qi(0), q(1, 2)]],
            2,
        )
        .unwrap();
        assert_eq!(m.determinant(), q(1, 2));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[2, 4], &[1, 2]]).inverse().is_none());
    }

    #[test]
    fn subspace_coordinates() {
        let s = Subspace::span(3, &[vec![qi(1), qi(2), qi(3)], vec![qi(0), qi(1), qi(1)]]);
        let v = vec![qi(2), qi(5), qi(7)];
        let c = s.coordinates(&v).unwrap();
        assert_eq!(s.combine(&c), v);
        assert!(s.coordinates(&[qi(0), qi(0), qi(1)]).is_none());
        assert_eq!(s.complement_indices(), vec![2]);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..4, 1i64..3), r * c).prop_map(move |es| {
                let data = es.into_iter().map(|(n, d)| q(n, d)).collect();
                Matrix::from_vec(r, c, data).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.dim(), m.cols());
            for v in k.basis() {
                prop_assert!(is_zero_vector(&m.apply(v)));
            }
        }

        #[test]
        fn rref_idempotent(m in small_matrix()) {
            let (r, p) = m.rref();
            let (rr, pp) = r.rref();
            prop_assert_eq!(rr, r);
            prop_assert_eq!(pp, p);
        }

        #[test]
        fn image_matches_rank(m in small_matrix()) {
            prop_assert_eq!(m.image().dim(), m.rank());
            for j in 0..m.cols() {
                prop_assert!(m.image().contains(&m.column(j)));
            }
        }
    }
}
