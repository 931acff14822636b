//! Dense exact matrices over a division ring.
//!
//! Conventions: vectors are rows, scalars act on the left, and a matrix acts
//! on the right of a row vector, `(v·M)_j = Σ_i v_i M_ij`. The product `A·B`
//! is the matrix of "apply `A`, then `B`".

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::algebra::DivisionRing;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Matrix<R: DivisionRing> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<R: DivisionRing> {
    pub matrix: Matrix<R>,
    pub pivots: Vec<usize>,
}

impl<R: DivisionRing> Echelon<R> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

// Equality, hashing and ordering look at shape and entries only.
impl<R: DivisionRing> PartialEq for Matrix<R> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<R: DivisionRing> Eq for Matrix<R> {}

impl<R: DivisionRing> Hash for Matrix<R> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl<R: DivisionRing> PartialOrd for Matrix<R> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<R: DivisionRing> Ord for Matrix<R> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl<R: DivisionRing> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|e| self.ring.format_elem(e)).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<R: DivisionRing> std::ops::Index<(usize, usize)> for Matrix<R> {
    type Output = R::Elem;
    fn index(&self, (r, c): (usize, usize)) -> &R::Elem {
        &self.data[r * self.cols + c]
    }
}

impl<R: DivisionRing> Matrix<R> {
    pub fn new(ring: R, rows: usize, cols: usize, data: Vec<R::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { ring, rows, cols, data })
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(ring: R, cols: usize, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!("row of length {} in a matrix with {cols} columns", bad.len())));
        }
        Ok(Self { ring, rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(ring: R, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| ring.from_int(x))).collect::<Vec<_>>();
        Self::new(ring, rows.len(), cols, data).expect("ragged integer matrix")
    }

    pub fn from_fn(ring: R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { ring, rows, cols, data }
    }

    pub fn zeros(ring: R, rows: usize, cols: usize) -> Self {
        let z = ring.zero();
        Self { data: vec![z; rows * cols], ring, rows, cols }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        let (z, o) = (ring.zero(), ring.one());
        Self::from_fn(ring, n, n, |r, c| if r == c { o.clone() } else { z.clone() })
    }

    /// `k·I`, the matrix of `b_i ↦ k b_i`.
    pub fn scalar(ring: R, n: usize, k: &R::Elem) -> Self {
        let z = ring.zero();
        Self::from_fn(ring, n, n, |r, c| if r == c { k.clone() } else { z.clone() })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[R::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<R::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn set(&mut self, r: usize, c: usize, v: R::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    /// True iff every entry lies in the center.
    pub fn is_central(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_central(e))
    }

    fn same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Self { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| self.ring.add(a, b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| self.ring.sub(a, b)))
    }

    pub fn neg(&self) -> Self {
        self.map(|e| self.ring.neg(e))
    }

    pub fn map(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        Self { ring: self.ring.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Entrywise left multiple `k·M`.
    pub fn scale_left(&self, k: &R::Elem) -> Self {
        self.map(|e| self.ring.mul(k, e))
    }

    /// Entrywise right multiple `M·k`.
    pub fn scale_right(&self, k: &R::Elem) -> Self {
        self.map(|e| self.ring.mul(e, k))
    }

    /// `self · other`, the matrix of "apply `self`, then `other`".
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "compose: {}x{} then {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = &self.ring;
        Ok(Self::from_fn(ring.clone(), self.rows, other.cols, |r, c| {
            (0..self.cols).fold(ring.zero(), |acc, t| ring.add(&acc, &ring.mul(&self[(r, t)], &other[(t, c)])))
        }))
    }

    /// Alias of [`Matrix::mul`] named after the composition it represents.
    pub fn compose(&self, then: &Self) -> Result<Self> {
        self.mul(then)
    }

    /// The row vector `v·M`.
    pub fn apply(&self, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if v.len() != self.rows {
            return Err(Error::ShapeMismatch(format!("vector of length {} against {} rows", v.len(), self.rows)));
        }
        let ring = &self.ring;
        Ok((0..self.cols)
            .map(|c| v.iter().enumerate().fold(ring.zero(), |acc, (r, x)| ring.add(&acc, &ring.mul(x, &self[(r, c)]))))
            .collect())
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!("vstack: {} vs {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self { ring: self.ring.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!("hstack: {} vs {} rows", self.rows, other.rows)));
        }
        Ok(Self::from_fn(self.ring.clone(), self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        }))
    }

    /// `[[a, b], [c, d]]` assembled from blocks.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(self.ring.clone(), rows.len(), cols.len(), |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let data = idx.iter().flat_map(|&r| self.row(r).iter().cloned()).collect();
        Self { ring: self.ring.clone(), rows: idx.len(), cols: self.cols, data }
    }

    /// Unique left-reduced row echelon form: leading entries 1, zeros above and
    /// below every pivot, obtained by left row operations only.
    pub fn rref(&self) -> Echelon<R> {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(self.cols);
        Echelon { matrix: m, pivots }
    }

    /// Row-reduces using pivots from the first `pivot_cols` columns only.
    fn reduce_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let ring = self.ring.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !ring.is_zero(&self[(i, c)])) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = ring.inv(&self[(r, c)]).expect("pivot is nonzero");
            for j in 0..cols {
                let v = ring.mul(&inv, &self[(r, j)]);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || ring.is_zero(&self[(i, c)]) {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in 0..cols {
                    let v = ring.sub(&self[(i, j)], &ring.mul(&f, &self[(r, j)]));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Echelon basis of the row space (the nonzero rows of the rref).
    pub fn image(&self) -> Self {
        let e = self.rref();
        let rank = e.rank();
        e.matrix.submatrix(0..rank, 0..self.cols)
    }

    /// Echelon basis of `{v : v·M = 0}`.
    pub fn kernel(&self) -> Self {
        let aug = self.hstack(&Self::identity(self.ring.clone(), self.rows)).expect("same row count");
        let mut aug = aug;
        let rank = aug.reduce_in_place(self.cols).len();
        let basis = aug.submatrix(rank..self.rows, self.cols..self.cols + self.rows);
        basis.image()
    }

    /// Two-sided inverse, `None` when `M` is singular or not square.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(self.ring.clone(), n)).expect("square");
        if aug.reduce_in_place(n).len() < n {
            return None;
        }
        Some(aug.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Solves `C·basis = self` for `C` when the rows of `basis` are independent.
    /// Returns `None` if some row of `self` is outside the row space of `basis`.
    pub fn coords_in(&self, basis: &Self) -> Result<Option<Self>> {
        if self.cols != basis.cols {
            return Err(Error::ShapeMismatch(format!("coords_in: {} vs {} columns", self.cols, basis.cols)));
        }
        let k = basis.rows;
        let mut aug = basis.hstack(&Self::identity(self.ring.clone(), k))?;
        let pivots = aug.reduce_in_place(basis.cols);
        if pivots.len() < k {
            return Err(Error::Dependent);
        }
        let reduced = aug.submatrix(0..k, 0..basis.cols);
        let transform = aug.submatrix(0..k, basis.cols..basis.cols + k);
        let mut coeffs = Vec::with_capacity(self.rows * k);
        for r in 0..self.rows {
            let x = self.row(r);
            let c: Vec<R::Elem> = pivots.iter().map(|&p| x[p].clone()).collect();
            if reduced.apply(&c)? != x {
                return Ok(None);
            }
            coeffs.extend(c);
        }
        let c = Self::new(self.ring.clone(), self.rows, k, coeffs)?;
        Ok(Some(c.mul(&transform)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteField, Fq, Quaternion, RationalQuaternions};

    fn gf(p: u32) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    fn qm(rows: Vec<Vec<Quaternion>>) -> Matrix<RationalQuaternions> {
        let cols = rows[0].len();
        Matrix::from_rows(RationalQuaternions, cols, rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = gf(2);
        let m = Matrix::from_ints(f.clone(), &[&[1, 1], &[1, 1]]);
        let e = m.rref();
        assert_eq!(e.rank(), 1);
        assert_eq!(m.image(), Matrix::from_ints(f.clone(), &[&[1, 1]]));
        assert_eq!(Matrix::zeros(f, 2, 3).rank(), 0);

        let (i, j) = (Quaternion::unit_i(), Quaternion::unit_j());
        let z = Quaternion::zero();
        // i·i = -1, so multiplying rows by -i and -j on the left normalizes them
        assert_eq!(&(-&i) * &i, Quaternion::one());
        let m = qm(vec![vec![i, z.clone()], vec![z, j]]);
        assert_eq!(m.rref().matrix, Matrix::identity(RationalQuaternions, 2));
    }

    #[test]
    fn apply_and_compose() {
        let q = RationalQuaternions;
        let (i, j, one, z) = (Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::one(), Quaternion::zero());
        let m = qm(vec![vec![j, z.clone()], vec![z.clone(), one]]);
        assert_eq!(m.apply(&[i, z.clone()]).unwrap(), vec![Quaternion::unit_k(), z]);
        let id = Matrix::identity(q, 2);
        let v = vec![Quaternion::from_ints(1, 2, 3, 4), Quaternion::from_ints(0, 0, 1, 0)];
        assert_eq!(id.apply(&v).unwrap(), v);

        let f = gf(3);
        let m = Matrix::from_ints(f, &[&[1, 1], &[1, 0]]);
        assert_eq!(m.apply(&[Fq(1), Fq(2)]).unwrap(), vec![Fq(0), Fq(1)]);
        assert!(m.apply(&[Fq(1)]).is_err());
        assert!(m.mul(&Matrix::zeros(gf(3), 3, 1)).is_err());
    }

    #[test]
    fn compose_matches_sequential_application() {
        let f = gf(3);
        let a = Matrix::from_ints(f.clone(), &[&[1, 2], &[0, 1]]);
        let b = Matrix::from_ints(f.clone(), &[&[2, 0], &[1, 1]]);
        let v = [Fq(2), Fq(1)];
        assert_eq!(a.compose(&b).unwrap().apply(&v).unwrap(), b.apply(&a.apply(&v).unwrap()).unwrap());
    }

    #[test]
    fn kernel_image_inverse() {
        let f = gf(3);
        let m = Matrix::from_ints(f.clone(), &[&[1, 0], &[0, 0]]);
        assert_eq!(m.kernel(), Matrix::from_ints(f.clone(), &[&[0, 1]]));
        assert_eq!(m.image(), Matrix::from_ints(f.clone(), &[&[1, 0]]));
        assert!(m.inverse().is_none());
        let id = Matrix::identity(f.clone(), 3);
        assert_eq!(id.kernel().rows(), 0);
        assert_eq!(id.inverse().unwrap(), id);
        let qi = qm(vec![vec![Quaternion::unit_i()]]);
        assert_eq!(qi.inverse().unwrap(), qm(vec![vec![-&Quaternion::unit_i()]]));
    }

    #[test]
    fn noncommutative_product_witness() {
        let (i, j, z) = (Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::zero());
        let a = qm(vec![vec![i, z.clone()], vec![z.clone(), Quaternion::one()]]);
        let b = qm(vec![vec![j, z.clone()], vec![z, Quaternion::one()]]);
        assert_ne!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn coords_in_basis() {
        let f = gf(3);
        let basis = Matrix::from_ints(f.clone(), &[&[1, 1, 0], &[0, 1, 2]]);
        let x = Matrix::from_ints(f.clone(), &[&[2, 0, 2], &[1, 1, 0]]);
        let c = x.coords_in(&basis).unwrap().unwrap();
        assert_eq!(c.mul(&basis).unwrap(), x);
        let outside = Matrix::from_ints(f.clone(), &[&[0, 0, 1]]);
        assert!(outside.coords_in(&basis).unwrap().is_none());
        let dep = Matrix::from_ints(f, &[&[1, 1, 0], &[2, 2, 0]]);
        assert_eq!(x.coords_in(&dep), Err(Error::Dependent));
    }

    #[test]
    fn quaternion_coords_use_left_coefficients() {
        let (i, j, z, o) = (Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::zero(), Quaternion::one());
        let basis = qm(vec![vec![o.clone(), i.clone()], vec![z.clone(), o.clone()]]);
        // j·(1, i) + 0·(0,1) = (j, ji) = (j, -k)
        let x = qm(vec![vec![j.clone(), &j * &i]]);
        let c = x.coords_in(&basis).unwrap().unwrap();
        assert_eq!(c, qm(vec![vec![j, z]]));
    }
}
