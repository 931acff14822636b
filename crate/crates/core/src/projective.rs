//! The subspace lattice of `V = K^n`, complements, hyperplanes and
//! `Z`-structures (central subspaces with respect to a reference basis).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::algebra::{DivisionRing, Listing};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A subspace of `K^n`, stored as its unique left-reduced echelon basis, so
/// that equality of subspaces is equality of values.
#[derive(Clone)]
pub struct Subspace<R: DivisionRing> {
    ambient: usize,
    basis: Matrix<R>,
}

impl<R: DivisionRing> PartialEq for Subspace<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl<R: DivisionRing> Eq for Subspace<R> {}

impl<R: DivisionRing> Hash for Subspace<R> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

impl<R: DivisionRing> PartialOrd for Subspace<R> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<R: DivisionRing> Ord for Subspace<R> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, &self.basis).cmp(&(other.ambient, &other.basis))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Sum,
    Intersect,
}

impl<R: DivisionRing> fmt::Debug for Subspace<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?} in K^{}>", self.basis, self.ambient)
    }
}

/// All tuples of length `len` over `elems`, last position varying fastest.
pub(crate) fn tuples<T: Clone>(elems: &[T], len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                elems.iter().map(move |e| {
                    let mut p = prefix.clone();
                    p.push(e.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Coefficient vectors of length `len` whose first nonzero entry is 1, built
/// from `elems` (which must contain 0 and 1). One per projective point when
/// `elems` is all of a finite field.
pub(crate) fn normalized_tuples<R: DivisionRing>(ring: &R, elems: &[R::Elem], len: usize) -> Vec<Vec<R::Elem>> {
    let mut out = Vec::new();
    for lead in 0..len {
        for tail in tuples(elems, len - lead - 1) {
            let mut v = vec![ring.zero(); lead];
            v.push(ring.one());
            v.extend(tail);
            out.push(v);
        }
    }
    out
}

pub(crate) fn require_finite<R: DivisionRing>(ring: &R) -> Result<Vec<R::Elem>> {
    let all = ring.scalars(0);
    if !all.is_exhaustive() {
        return Err(Error::InfiniteDomain(ring.spec()));
    }
    Ok(all.items)
}

impl<R: DivisionRing> Subspace<R> {
    /// Row space of `rows` inside `K^ambient`.
    pub fn span(rows: &Matrix<R>) -> Self {
        Self { ambient: rows.cols(), basis: rows.image() }
    }

    pub fn from_rows(ring: R, ambient: usize, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        Ok(Self::span(&Matrix::from_rows(ring, ambient, rows)?))
    }

    pub fn zero(ring: R, ambient: usize) -> Self {
        Self { ambient, basis: Matrix::zeros(ring, 0, ambient) }
    }

    pub fn full(ring: R, ambient: usize) -> Self {
        Self { ambient, basis: Matrix::identity(ring, ambient) }
    }

    /// Span of the standard basis vectors `e_i`, `i ∈ idx`.
    pub fn coordinate(ring: R, ambient: usize, idx: &[usize]) -> Self {
        let (z, o) = (ring.zero(), ring.one());
        Self::span(&Matrix::from_fn(ring, idx.len(), ambient, |r, c| if idx[r] == c { o.clone() } else { z.clone() }))
    }

    pub fn point(ring: R, v: Vec<R::Elem>) -> Self {
        let n = v.len();
        Self::span(&Matrix::from_rows(ring, n, vec![v]).expect("single row"))
    }

    pub fn ring(&self) -> &R {
        self.basis.ring()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The echelon basis (rows).
    pub fn basis(&self) -> &Matrix<R> {
        &self.basis
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[R::Elem]) -> bool {
        self.coords(v).is_some()
    }

    /// Coordinates of `v` with respect to the echelon basis.
    pub fn coords(&self, v: &[R::Elem]) -> Option<Vec<R::Elem>> {
        if v.len() != self.ambient {
            return None;
        }
        let m = Matrix::from_rows(self.ring().clone(), self.ambient, vec![v.to_vec()]).ok()?;
        m.coords_in(&self.basis).ok().flatten().map(|c| c.row(0).to_vec())
    }

    /// `other ≤ self`.
    pub fn contains(&self, other: &Self) -> bool {
        self.ambient == other.ambient && (0..other.dim()).all(|r| self.contains_vector(other.basis.row(r)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::span(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        // (x, y) with x·A + y·B = 0 gives x·A ∈ A ∩ B
        let stacked = self.basis.vstack(&other.basis)?;
        let ker = stacked.kernel();
        let xs = ker.submatrix(0..ker.rows(), 0..self.dim());
        Ok(Self::span(&xs.mul(&self.basis)?))
    }

    pub fn lattice(&self, op: LatticeOp, other: &Self) -> Result<Self> {
        match op {
            LatticeOp::Sum => self.sum(other),
            LatticeOp::Intersect => self.intersect(other),
        }
    }

    /// Image under the linear map `v ↦ v·M`.
    pub fn image_under(&self, m: &Matrix<R>) -> Result<Self> {
        Ok(Self::span(&self.basis.mul(m)?))
    }

    /// A matrix `P` (`n × (n - dim)`) with `self = {v : v·P = 0}`.
    ///
    /// Column `j` (for a non-pivot column `j` of the echelon basis) is the
    /// form `v ↦ v_j - Σ_p v_{piv(p)} R_{pj}`.
    pub fn annihilator(&self) -> Matrix<R> {
        let ring = self.ring().clone();
        let e = self.basis.rref();
        let free: Vec<usize> = (0..self.ambient).filter(|c| !e.pivots.contains(c)).collect();
        let mut p = Matrix::zeros(ring.clone(), self.ambient, free.len());
        for (col, &j) in free.iter().enumerate() {
            p.set(j, col, ring.one());
            for (row, &piv) in e.pivots.iter().enumerate() {
                p.set(piv, col, ring.neg(&self.basis[(row, j)]));
            }
        }
        p
    }

    /// Every vector of the subspace (finite domains only).
    pub fn vectors(&self) -> Result<Vec<Vec<R::Elem>>> {
        let elems = require_finite(self.ring())?;
        tuples(&elems, self.dim())
            .into_iter()
            .map(|c| self.basis.apply(&c))
            .collect()
    }

    /// The 1-dimensional subspaces contained in `self` (finite domains only).
    pub fn points(&self) -> Result<Vec<Self>> {
        let elems = require_finite(self.ring())?;
        normalized_tuples(self.ring(), &elems, self.dim())
            .into_iter()
            .map(|c| Ok(Self::point(self.ring().clone(), self.basis.apply(&c)?)))
            .collect()
    }
}

/// `V = W ⊕ S` inside the full ambient space.
pub fn is_complement<R: DivisionRing>(w: &Subspace<R>, s: &Subspace<R>) -> Result<bool> {
    Ok(w.intersect(s)?.dim() == 0 && w.dim() + s.dim() == w.ambient())
}

/// A coordinate complement of `w`: the standard vectors at the non-pivot
/// columns of its echelon basis.
pub fn coordinate_complement<R: DivisionRing>(w: &Subspace<R>) -> Subspace<R> {
    let pivots = w.basis().rref().pivots;
    let idx: Vec<usize> = (0..w.ambient()).filter(|c| !pivots.contains(c)).collect();
    Subspace::coordinate(w.ring().clone(), w.ambient(), &idx)
}

/// Every complement of `w` exactly once.
///
/// Parameterizes complements as graphs `{u^γ + u}` over a coordinate
/// complement, so the count is `q^{k(n-k)}`.
pub fn all_complements<R: DivisionRing>(w: &Subspace<R>) -> Result<Vec<Subspace<R>>> {
    let (n, k) = (w.ambient(), w.dim());
    if k == 0 || k == n {
        return Err(Error::TrivialCase(format!("W has dimension {k} in K^{n}")));
    }
    let ring = w.ring().clone();
    let elems = require_finite(&ring)?;
    let u = coordinate_complement(w);
    tuples(&elems, (n - k) * k)
        .into_iter()
        .map(|g| {
            let gamma = Matrix::new(ring.clone(), n - k, k, g)?;
            Ok(Subspace::span(&gamma.mul(w.basis())?.add(u.basis())?))
        })
        .collect()
}

/// The hyperplane `{v : v·f = 0}` of a nonzero column form `f`.
pub fn hyperplane_of_form<R: DivisionRing>(ring: R, form: &[R::Elem]) -> Subspace<R> {
    let n = form.len();
    let f = Matrix::new(ring, n, 1, form.to_vec()).expect("column");
    Subspace::span(&f.kernel())
}

/// All `(q^n - 1)/(q - 1)` hyperplanes of `K^n`.
///
/// Forms are taken up to right proportionality (`f` and `f·c` have the same
/// kernel), represented by forms whose first nonzero coefficient is 1.
pub fn hyperplanes<R: DivisionRing>(ring: &R, n: usize) -> Result<Vec<Subspace<R>>> {
    let elems = require_finite(ring)?;
    Ok(normalized_tuples(ring, &elems, n)
        .into_iter()
        .map(|f| hyperplane_of_form(ring.clone(), &f))
        .collect())
}

pub fn hyperplanes_not_containing<R: DivisionRing>(w: &Subspace<R>) -> Result<Vec<Subspace<R>>> {
    Ok(hyperplanes(w.ring(), w.ambient())?.into_iter().filter(|x| !x.contains(w)).collect())
}

/// Every `d`-dimensional subspace of `K^n`, enumerated by echelon pattern.
pub fn subspaces_of_dim<R: DivisionRing>(ring: &R, n: usize, d: usize) -> Result<Vec<Subspace<R>>> {
    let elems = require_finite(ring)?;
    let mut out = Vec::new();
    if d > n {
        return Ok(out);
    }
    for pivots in combinations(n, d) {
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| ((pivots[r] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        for vals in tuples(&elems, free.len()) {
            let mut m = Matrix::zeros(ring.clone(), d, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, ring.one());
            }
            for (&(r, c), v) in free.iter().zip(vals) {
                m.set(r, c, v);
            }
            out.push(Subspace { ambient: n, basis: m });
        }
    }
    Ok(out)
}

fn combinations(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// The `Z`-span of a reference basis `(b_i)`: the set of `Z`-linear
/// combinations of the `b_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZStructure<R: DivisionRing> {
    reference: Matrix<R>,
}

impl<R: DivisionRing> ZStructure<R> {
    pub fn new(reference: Matrix<R>) -> Result<Self> {
        if reference.rank() != reference.rows() {
            return Err(Error::Dependent);
        }
        Ok(Self { reference })
    }

    pub fn reference(&self) -> &Matrix<R> {
        &self.reference
    }

    pub fn ring(&self) -> &R {
        self.reference.ring()
    }

    /// Number of reference vectors.
    pub fn len(&self) -> usize {
        self.reference.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.reference.rows() == 0
    }

    pub fn ambient(&self) -> usize {
        self.reference.cols()
    }

    /// The `K`-span of the reference basis.
    pub fn span(&self) -> Subspace<R> {
        Subspace::span(&self.reference)
    }

    /// Coordinates (rows) of a basis of `a` with respect to `(b_i)`.
    pub fn coords(&self, a: &Subspace<R>) -> Result<Matrix<R>> {
        if a.ambient() != self.ambient() {
            return Err(Error::AmbientMismatch(a.ambient(), self.ambient()));
        }
        a.basis().coords_in(&self.reference)?.ok_or(Error::NotInSpan)
    }

    /// Coordinates of a single vector with respect to `(b_i)`.
    pub fn vector_coords(&self, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
        let m = Matrix::from_rows(self.ring().clone(), self.ambient(), vec![v.to_vec()])?;
        Ok(m.coords_in(&self.reference)?.ok_or(Error::NotInSpan)?.row(0).to_vec())
    }

    /// The subspace spanned by `c·(b_i)` for coordinate rows `c`.
    pub fn from_coords(&self, c: &Matrix<R>) -> Result<Subspace<R>> {
        Ok(Subspace::span(&c.mul(&self.reference)?))
    }

    /// `Σ c_i b_i`.
    pub fn vector(&self, c: &[R::Elem]) -> Result<Vec<R::Elem>> {
        self.reference.apply(c)
    }

    /// Whether `v` is a `Z`-combination of the `b_i`.
    pub fn is_z_vector(&self, v: &[R::Elem]) -> Result<bool> {
        Ok(self.vector_coords(v)?.iter().all(|c| self.ring().is_central(c)))
    }

    /// Whether the point `K·v` belongs to the projective `Z`-subspace, i.e.
    /// some nonzero left multiple of `v` is a `Z`-combination.
    ///
    /// If `q·v ∈ Z^m` then `q = z·x_0^{-1}` for the first nonzero coordinate
    /// `x_0`, so it suffices to test `x_0^{-1}·v`.
    pub fn is_z_point(&self, v: &[R::Elem]) -> Result<bool> {
        let ring = self.ring();
        let c = self.vector_coords(v)?;
        let Some(x0) = c.iter().find(|x| !ring.is_zero(x)) else {
            return Ok(false);
        };
        let x0_inv = ring.inv(x0).expect("nonzero");
        Ok(c.iter().all(|x| ring.is_central(&ring.mul(&x0_inv, x))))
    }

    /// Normalized coordinate vectors of the points of the projective
    /// `Z`-subspace; exhaustive when `Z` is finite.
    pub fn z_point_coords(&self) -> Listing<Vec<R::Elem>> {
        let zs = self.ring().center_elements();
        let items = normalized_tuples(self.ring(), &zs.items, self.len());
        Listing { items, coverage: zs.coverage }
    }

    /// The points `K·z` of the projective `Z`-subspace as subspaces of `K^n`.
    pub fn z_points(&self) -> Listing<Subspace<R>> {
        let ring = self.ring().clone();
        self.z_point_coords()
            .map(|c| Subspace::point(ring.clone(), self.vector(&c).expect("length matches")))
    }

    /// Whether `a` has a basis of `Z`-combinations of the `b_i`.
    pub fn is_central_subspace(&self, a: &Subspace<R>) -> Result<bool> {
        Ok(self.maximal_central_subspace(a)?.dim() == a.dim())
    }

    /// The largest central subspace inside `a`: the `K`-span of `a ∩ Z^m`.
    ///
    /// With `a = {v : v·P = 0}` in coordinates, a central `v` solves
    /// `Σ_i v_i c_{ijt} = 0` where `P_ij = Σ_t c_{ijt} e_t` over a `Z`-basis
    /// `(e_t)` of `K`. That system has central coefficients, so its echelon
    /// kernel basis is central and spans the answer.
    pub fn maximal_central_subspace(&self, a: &Subspace<R>) -> Result<Subspace<R>> {
        let ring = self.ring().clone();
        let m = self.len();
        let coords = Subspace::span(&self.coords(a)?);
        let p = coords.annihilator();
        let d = ring.center_degree();
        let expanded = Matrix::from_fn(ring.clone(), m, p.cols() * d, |i, col| {
            ring.center_coords(&p[(i, col / d)])[col % d].clone()
        });
        let kernel = if p.cols() == 0 { Matrix::identity(ring, m) } else { expanded.kernel() };
        debug_assert!(kernel.is_central());
        self.from_coords(&kernel)
    }

    /// Indices `J` of reference vectors, chosen greedily by smallest index,
    /// such that `span(b_j : j ∈ J)` complements `a` inside the reference span.
    pub fn central_complement_indices(&self, a: &Subspace<R>) -> Result<Vec<usize>> {
        let ring = self.ring().clone();
        let m = self.len();
        let mut current = Subspace::span(&self.coords(a)?);
        let mut chosen = Vec::new();
        for j in 0..m {
            let e = Subspace::coordinate(ring.clone(), m, &[j]);
            if !current.contains(&e) {
                current = current.sum(&e)?;
                chosen.push(j);
            }
        }
        Ok(chosen)
    }

    pub fn central_complement(&self, a: &Subspace<R>) -> Result<Subspace<R>> {
        let idx = self.central_complement_indices(a)?;
        Ok(Subspace::span(&self.reference.select_rows(&idx)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteField, Quaternion, RationalQuaternions};

    fn gf(p: u32) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    fn sub(f: &FiniteField, rows: &[&[i64]]) -> Subspace<FiniteField> {
        Subspace::span(&Matrix::from_ints(f.clone(), rows))
    }

    #[test]
    fn complement_examples() {
        let f = gf(2);
        let w = sub(&f, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert!(is_complement(&w, &sub(&f, &[&[0, 0, 1, 0], &[0, 0, 0, 1]])).unwrap());
        assert!(!is_complement(&w, &sub(&f, &[&[0, 1, 0, 0], &[0, 0, 1, 0]])).unwrap());
        assert!(is_complement(&w, &sub(&f, &[&[1, 0, 1, 0], &[0, 0, 0, 1]])).unwrap());
        let other = Subspace::zero(f, 3);
        assert_eq!(w.sum(&other), Err(Error::AmbientMismatch(4, 3)));
    }

    #[test]
    fn lattice_ops() {
        let f = gf(3);
        let a = sub(&f, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = sub(&f, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), sub(&f, &[&[0, 1, 0]]));
        assert_eq!(a.lattice(LatticeOp::Sum, &b).unwrap(), Subspace::full(f.clone(), 3));
        assert!(a.contains(&a.intersect(&b).unwrap()));
        let x = sub(&f, &[&[1, 1, 1]]);
        for v in x.vectors().unwrap() {
            assert!(x.contains_vector(&v));
        }
        assert_eq!(a.points().unwrap().len(), 4);
    }

    #[test]
    fn complements_counts_and_trivial_case() {
        let f = gf(2);
        let w = sub(&f, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(all_complements(&w).unwrap().len(), 16);
        assert_eq!(all_complements(&Subspace::full(f.clone(), 4)), Err(Error::TrivialCase("W has dimension 4 in K^4".into())));
        let w3 = sub(&gf(3), &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(all_complements(&w3).unwrap().len(), 81);
        let wq = Subspace::coordinate(RationalQuaternions, 2, &[0]);
        assert!(matches!(all_complements(&wq), Err(Error::InfiniteDomain(_))));
    }

    #[test]
    fn hyperplane_counts() {
        let f = gf(2);
        assert_eq!(hyperplanes(&f, 3).unwrap().len(), 7);
        let w = sub(&f, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(hyperplanes(&f, 4).unwrap().len(), 15);
        assert_eq!(hyperplanes_not_containing(&w).unwrap().len(), 12);
        let one = hyperplanes(&f, 1).unwrap();
        assert_eq!(one, vec![Subspace::zero(f, 1)]);
    }

    #[test]
    fn annihilator_cuts_out_subspace() {
        let f = gf(3);
        let a = sub(&f, &[&[1, 2, 0, 1], &[0, 0, 1, 1]]);
        let p = a.annihilator();
        assert_eq!(Subspace::span(&p_kernel(&p)), a);
        fn p_kernel(p: &Matrix<FiniteField>) -> Matrix<FiniteField> {
            p.kernel()
        }
    }

    #[test]
    fn commutative_subspaces_are_central() {
        let f = gf(3);
        let z = ZStructure::new(Matrix::identity(f.clone(), 3)).unwrap();
        for a in subspaces_of_dim(&f, 3, 1).unwrap().into_iter().chain(subspaces_of_dim(&f, 3, 2).unwrap()) {
            assert_eq!(z.maximal_central_subspace(&a).unwrap(), a);
        }
    }

    #[test]
    fn quaternion_central_subspaces() {
        let q = RationalQuaternions;
        let z = ZStructure::new(Matrix::identity(q, 2)).unwrap();
        let a = Subspace::point(q, vec![Quaternion::unit_i(), Quaternion::one()]);
        assert_eq!(z.maximal_central_subspace(&a).unwrap().dim(), 0);
        assert!(!z.is_central_subspace(&a).unwrap());
        let b1 = Subspace::point(q, vec![Quaternion::one(), Quaternion::zero()]);
        assert_eq!(z.maximal_central_subspace(&b1).unwrap(), b1);
        // K·(i, i) = K·(1, 1) is central
        let ii = Subspace::point(q, vec![Quaternion::unit_i(), Quaternion::unit_i()]);
        assert!(z.is_central_subspace(&ii).unwrap());
        assert_eq!(z.central_complement(&a).unwrap(), Subspace::coordinate(q, 2, &[0]));
        assert!(z.is_z_point(&[Quaternion::unit_j(), Quaternion::unit_j()]).unwrap());
        assert!(!z.is_z_point(&[Quaternion::one(), Quaternion::unit_i()]).unwrap());
    }

    #[test]
    fn z_points_of_finite_structure() {
        let f = gf(3);
        let z = ZStructure::new(Matrix::identity(f, 2)).unwrap();
        let pts = z.z_points();
        assert!(pts.is_exhaustive());
        assert_eq!(pts.len(), 4);
        assert!(ZStructure::new(Matrix::from_ints(gf(2), &[&[1, 1], &[1, 1]])).is_err());
    }
}
