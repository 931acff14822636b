//! The vector-space structure on the set of complements of `W`, coordinatized
//! by a fixed complement `U` with ordered basis `(b_i)`.
//!
//! A complement `S` is named by the matrix `γ` of a map `U → W` (rows are
//! `b_i^γ` in the chosen basis of `W`), via `S = {u^γ + u | u ∈ U}`. Addition
//! is addition of matrices and `k·γ` multiplies every entry on the left by `k`
//! (the matrix of `λ_k γ`, where `λ_k : b_i ↦ k b_i`).

use crate::algebra::{DivisionRing, Listing, Verdict};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::projective::{tuples, Subspace, ZStructure};

/// `(W, U, (b_i))` with `W ∩ U = 0`. The chart lives in the subspace
/// `W ⊕ U` of `K^N`; usually this is all of `K^N`.
#[derive(Debug, Clone)]
pub struct AffineChart<R: DivisionRing> {
    w_basis: Matrix<R>,
    u_basis: Matrix<R>,
    adapted: Matrix<R>,
    w: Subspace<R>,
    u: Subspace<R>,
    space: Subspace<R>,
    z: ZStructure<R>,
}

/// The coordinate `γ ∈ Hom(U, W)` of the complement `U^(γ,1)`.
#[derive(Debug, Clone)]
pub struct ComplementCoord<R: DivisionRing> {
    gamma: Matrix<R>,
}

impl<R: DivisionRing> PartialEq for ComplementCoord<R> {
    fn eq(&self, other: &Self) -> bool {
        self.gamma == other.gamma
    }
}

impl<R: DivisionRing> Eq for ComplementCoord<R> {}

impl<R: DivisionRing> std::hash::Hash for ComplementCoord<R> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gamma.hash(state);
    }
}

impl<R: DivisionRing> PartialOrd for ComplementCoord<R> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<R: DivisionRing> Ord for ComplementCoord<R> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.gamma.cmp(&other.gamma)
    }
}

impl<R: DivisionRing> ComplementCoord<R> {
    pub fn gamma(&self) -> &Matrix<R> {
        &self.gamma
    }

    pub fn into_gamma(self) -> Matrix<R> {
        self.gamma
    }
}

/// `ℓ(α, β) = {U^(λ_k α + β, 1) | k ∈ K}` with `α ≠ 0`.
#[derive(Debug, Clone)]
pub struct AffineLine<R: DivisionRing> {
    alpha: Matrix<R>,
    beta: Matrix<R>,
}

impl<R: DivisionRing> PartialEq for AffineLine<R> {
    fn eq(&self, other: &Self) -> bool {
        self.alpha == other.alpha && self.beta == other.beta
    }
}

impl<R: DivisionRing> Eq for AffineLine<R> {}

/// Result of splitting `ν = λ_m ζ` with `ζ` central.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NDecomposition<R: DivisionRing> {
    /// `ν = m·ζ` entrywise, first nonzero entry of `ζ` equal to 1.
    Member { m: R::Elem, zeta: Matrix<R> },
    NotInN,
}

impl<R: DivisionRing> NDecomposition<R> {
    pub fn is_member(&self) -> bool {
        matches!(self, Self::Member { .. })
    }
}

impl<R: DivisionRing> AffineChart<R> {
    /// Chart from explicit bases of `W` (rows) and `U` (rows, the ordered `b_i`).
    pub fn new(w_basis: Matrix<R>, u_basis: Matrix<R>) -> Result<Self> {
        if w_basis.cols() != u_basis.cols() {
            return Err(Error::AmbientMismatch(w_basis.cols(), u_basis.cols()));
        }
        let (k, m) = (w_basis.rows(), u_basis.rows());
        if k == 0 || m == 0 {
            return Err(Error::TrivialCase(format!("dim W = {k}, dim U = {m}")));
        }
        let adapted = w_basis.vstack(&u_basis)?;
        if adapted.rank() != k + m {
            return Err(Error::Dependent);
        }
        let z = ZStructure::new(u_basis.clone())?;
        Ok(Self {
            w: Subspace::span(&w_basis),
            u: Subspace::span(&u_basis),
            space: Subspace::span(&adapted),
            w_basis,
            u_basis,
            adapted,
            z,
        })
    }

    /// `W = <e_1..e_k>`, `U = <e_{k+1}..e_n>` with the standard bases.
    pub fn standard(ring: R, n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::TrivialCase(format!("k = {k}, n = {n}")));
        }
        let id = Matrix::identity(ring, n);
        Self::new(id.submatrix(0..k, 0..n), id.submatrix(k..n, 0..n))
    }

    /// `V = U × U`, `W = U × {0}`, with `w_i` identified with `b_i`.
    pub fn symmetric(ring: R, m: usize) -> Result<Self> {
        Self::standard(ring, 2 * m, m)
    }

    pub fn ring(&self) -> &R {
        self.w_basis.ring()
    }

    /// `dim W`.
    pub fn k(&self) -> usize {
        self.w_basis.rows()
    }

    /// `dim U`.
    pub fn m(&self) -> usize {
        self.u_basis.rows()
    }

    /// Dimension of the coordinate space `K^N` the subspaces live in.
    pub fn ambient_dim(&self) -> usize {
        self.w_basis.cols()
    }

    pub fn w(&self) -> &Subspace<R> {
        &self.w
    }

    pub fn u(&self) -> &Subspace<R> {
        &self.u
    }

    pub fn w_basis(&self) -> &Matrix<R> {
        &self.w_basis
    }

    pub fn u_basis(&self) -> &Matrix<R> {
        &self.u_basis
    }

    /// `W ⊕ U`.
    pub fn space(&self) -> &Subspace<R> {
        &self.space
    }

    /// The `Z`-structure of `U` with respect to `(b_i)`.
    pub fn z_structure(&self) -> &ZStructure<R> {
        &self.z
    }

    pub fn is_symmetric(&self) -> bool {
        self.k() == self.m()
    }

    pub(crate) fn require_symmetric(&self) -> Result<()> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric { k: self.k(), m: self.m() });
        }
        Ok(())
    }

    /// Dimension of the affine space, `k·(n-k)`.
    pub fn dimension(&self) -> usize {
        self.k() * self.m()
    }

    pub fn coord(&self, gamma: Matrix<R>) -> Result<ComplementCoord<R>> {
        if gamma.shape() != (self.m(), self.k()) {
            return Err(Error::ShapeMismatch(format!(
                "coordinate must be {}x{}, got {}x{}",
                self.m(),
                self.k(),
                gamma.rows(),
                gamma.cols()
            )));
        }
        Ok(ComplementCoord { gamma })
    }

    fn check(&self, c: &ComplementCoord<R>) -> Result<()> {
        if c.gamma.shape() != (self.m(), self.k()) {
            return Err(Error::ShapeMismatch(format!(
                "coordinate of shape {}x{} used in a chart expecting {}x{}",
                c.gamma.rows(),
                c.gamma.cols(),
                self.m(),
                self.k()
            )));
        }
        Ok(())
    }

    /// The coordinate of `U` itself.
    pub fn origin(&self) -> ComplementCoord<R> {
        ComplementCoord { gamma: Matrix::zeros(self.ring().clone(), self.m(), self.k()) }
    }

    /// Coordinates of vectors (rows) of `W ⊕ U` in the adapted basis `[w; b]`.
    pub fn adapted_coords(&self, rows: &Matrix<R>) -> Result<Matrix<R>> {
        rows.coords_in(&self.adapted)?.ok_or(Error::NotInSpan)
    }

    /// Vectors of `K^N` from adapted coordinates.
    pub fn from_adapted(&self, coords: &Matrix<R>) -> Result<Matrix<R>> {
        coords.mul(&self.adapted)
    }

    /// `γ = (projection to U restricted to S)^{-1}` followed by projection to `W`.
    pub fn coordinatize(&self, s: &Subspace<R>) -> Result<ComplementCoord<R>> {
        if s.dim() != self.m() || s.ambient() != self.ambient_dim() {
            return Err(Error::NotAComplement);
        }
        let c = s.basis().coords_in(&self.adapted)?.ok_or(Error::NotAComplement)?;
        let (k, m) = (self.k(), self.m());
        let cw = c.submatrix(0..m, 0..k);
        let cu = c.submatrix(0..m, k..k + m);
        let cu_inv = cu.inverse().ok_or(Error::NotAComplement)?;
        Ok(ComplementCoord { gamma: cu_inv.mul(&cw)? })
    }

    /// The subspace spanned by `b_i^γ + b_i`.
    pub fn decoordinatize(&self, c: &ComplementCoord<R>) -> Result<Subspace<R>> {
        self.check(c)?;
        Ok(Subspace::span(&c.gamma.mul(&self.w_basis)?.add(&self.u_basis)?))
    }

    /// Whether `s` is a complement of `W` inside `W ⊕ U`.
    pub fn is_complement(&self, s: &Subspace<R>) -> bool {
        self.coordinatize(s).is_ok()
    }

    pub fn add(&self, a: &ComplementCoord<R>, b: &ComplementCoord<R>) -> Result<ComplementCoord<R>> {
        self.check(a)?;
        self.check(b)?;
        Ok(ComplementCoord { gamma: a.gamma.add(&b.gamma)? })
    }

    pub fn sub(&self, a: &ComplementCoord<R>, b: &ComplementCoord<R>) -> Result<ComplementCoord<R>> {
        self.check(a)?;
        self.check(b)?;
        Ok(ComplementCoord { gamma: a.gamma.sub(&b.gamma)? })
    }

    /// `k·U^(γ,1) = U^(λ_k γ, 1)`.
    pub fn scale(&self, k: &R::Elem, c: &ComplementCoord<R>) -> Result<ComplementCoord<R>> {
        self.check(c)?;
        Ok(ComplementCoord { gamma: c.gamma.scale_left(k) })
    }

    /// The right action of `End(W)` by `γ ↦ γ·k·1_W`. Not the chart's scalar
    /// multiplication in the noncommutative case.
    pub fn scale_right(&self, c: &ComplementCoord<R>, k: &R::Elem) -> Result<ComplementCoord<R>> {
        self.check(c)?;
        Ok(ComplementCoord { gamma: c.gamma.scale_right(k) })
    }

    /// Two complements are complementary iff their coordinate difference is invertible.
    pub fn complementary(&self, a: &ComplementCoord<R>, b: &ComplementCoord<R>) -> Result<bool> {
        Ok(self.sub(a, b)?.gamma.is_invertible())
    }

    /// Every coordinate (finite domains only), in canonical tuple order.
    pub fn all_coords(&self) -> Result<Vec<ComplementCoord<R>>> {
        let elems = self.ring().scalars(0);
        if !elems.is_exhaustive() {
            return Err(Error::InfiniteDomain(self.ring().spec()));
        }
        tuples(&elems.items, self.m() * self.k())
            .into_iter()
            .map(|g| Ok(ComplementCoord { gamma: Matrix::new(self.ring().clone(), self.m(), self.k(), g)? }))
            .collect()
    }

    /// The lines `ℓ(α, 0)` through `U`, one per direction `α` up to left
    /// scalars (first nonzero entry 1); finite domains only.
    pub fn lines_through_origin(&self) -> Result<Vec<AffineLine<R>>> {
        let ring = self.ring();
        let elems = self.ring().scalars(0);
        if !elems.is_exhaustive() {
            return Err(Error::InfiniteDomain(ring.spec()));
        }
        let zero = Matrix::zeros(ring.clone(), self.m(), self.k());
        crate::projective::normalized_tuples(ring, &elems.items, self.m() * self.k())
            .into_iter()
            .map(|a| Ok(AffineLine { alpha: Matrix::new(ring.clone(), self.m(), self.k(), a)?, beta: zero.clone() }))
            .collect()
    }

    pub fn line(&self, alpha: Matrix<R>, beta: Matrix<R>) -> Result<AffineLine<R>> {
        let alpha = self.coord(alpha)?.gamma;
        let beta = self.coord(beta)?.gamma;
        if alpha.is_zero() {
            return Err(Error::EqualPoints);
        }
        Ok(AffineLine { alpha, beta })
    }

    /// `ℓ(γ_2 - γ_1, γ_1)`, through `s1` (at `k = 0`) and `s2` (at `k = 1`).
    pub fn line_through(&self, s1: &ComplementCoord<R>, s2: &ComplementCoord<R>) -> Result<AffineLine<R>> {
        let alpha = self.sub(s2, s1)?.gamma;
        if alpha.is_zero() {
            return Err(Error::EqualPoints);
        }
        Ok(AffineLine { alpha, beta: s1.gamma.clone() })
    }

    /// `[[α, 0], [η, ρ]]` in adapted coordinates.
    pub fn block_matrix(&self, alpha: &Matrix<R>, eta: &Matrix<R>, rho: &Matrix<R>) -> Result<Matrix<R>> {
        let (k, m) = (self.k(), self.m());
        if alpha.shape() != (k, k) || eta.shape() != (m, k) || rho.shape() != (m, m) {
            return Err(Error::ShapeMismatch("block matrix [[α,0],[η,ρ]] has wrong block shapes".into()));
        }
        Matrix::block(alpha, &Matrix::zeros(self.ring().clone(), k, m), eta, rho)
    }

    /// Image of a subspace of `W ⊕ U` under a matrix acting on adapted coordinates.
    pub fn apply_adapted(&self, map: &Matrix<R>, s: &Subspace<R>) -> Result<Subspace<R>> {
        let c = self.adapted_coords(s.basis())?;
        Ok(Subspace::span(&self.from_adapted(&c.mul(map)?)?))
    }

    /// Action of `[[α, 0], [η, ρ]]` on coordinates: `γ ↦ ρ^{-1}(γα + η)`.
    pub fn collineation_action(
        &self,
        alpha: &Matrix<R>,
        eta: &Matrix<R>,
        rho: &Matrix<R>,
        c: &ComplementCoord<R>,
    ) -> Result<ComplementCoord<R>> {
        self.check(c)?;
        self.block_matrix(alpha, eta, rho)?;
        if !alpha.is_invertible() {
            return Err(Error::NotInvertible("α".into()));
        }
        let rho_inv = rho.inverse().ok_or_else(|| Error::NotInvertible("ρ".into()))?;
        Ok(ComplementCoord { gamma: rho_inv.mul(&c.gamma.mul(alpha)?.add(eta)?)? })
    }

    /// Translation `γ ↦ γ + η`.
    pub fn translate(&self, eta: &Matrix<R>, c: &ComplementCoord<R>) -> Result<ComplementCoord<R>> {
        self.add(c, &self.coord(eta.clone())?)
    }

    /// The chart over the same `W`, `U` with basis `b_i' = b_i^ρ`.
    pub fn rebased(&self, rho: &Matrix<R>) -> Result<Self> {
        if !rho.is_invertible() || rho.rows() != self.m() {
            return Err(Error::NotInvertible("ρ".into()));
        }
        Self::new(self.w_basis.clone(), rho.mul(&self.u_basis)?)
    }

    fn same_frame(&self, other: &Self) -> Result<()> {
        if self.w != other.w || self.u != other.u {
            return Err(Error::Malformed("charts differ in W or U".into()));
        }
        Ok(())
    }

    /// The unique `ρ ∈ Aut(U)` with `b_i' = b_i^ρ` for the other chart's basis.
    pub fn transition(&self, other: &Self) -> Result<Matrix<R>> {
        self.same_frame(other)?;
        other.u_basis.coords_in(&self.u_basis)?.ok_or(Error::NotInSpan)
    }

    /// Whether two charts over the same `(W, U)` define the same affine
    /// space: the transition `ρ` must lie in the normalizer `N`.
    pub fn charts_equal(&self, other: &Self) -> Result<bool> {
        if self.w_basis != other.w_basis {
            // coordinates are taken w.r.t. the W-basis; compare after aligning it
            let aligned = Self::new(self.w_basis.clone(), other.u_basis.clone())?;
            return self.charts_equal(&aligned);
        }
        Ok(n_group_decompose(&self.transition(other)?)?.is_member())
    }

    /// Searches `scalars × {unit coordinates}` for a complement `S` and a
    /// scalar `k` whose products `k·S` differ between the two charts.
    pub fn scalar_disagreement(
        &self,
        other: &Self,
        scalars: &[R::Elem],
    ) -> Result<Option<(R::Elem, ComplementCoord<R>)>> {
        self.same_frame(other)?;
        let ring = self.ring();
        for k in scalars {
            for r in 0..self.m() {
                for c in 0..self.k() {
                    let mut g = Matrix::zeros(ring.clone(), self.m(), self.k());
                    g.set(r, c, ring.one());
                    let mine = ComplementCoord { gamma: g };
                    let s = self.decoordinatize(&mine)?;
                    let here = self.decoordinatize(&self.scale(k, &mine)?)?;
                    let theirs = other.decoordinatize(&other.scale(k, &other.coordinatize(&s)?)?)?;
                    if here != theirs {
                        return Ok(Some((k.clone(), mine)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Compares the projective `Z`-subspaces of the two bases point by point
    /// over the (possibly sampled) `Z`-points of each.
    pub fn z_points_coincide(&self, other: &Self) -> Result<Verdict> {
        self.same_frame(other)?;
        let mine = Verdict::over(&self.z.z_point_coords(), |c| other.z.is_z_point(&self.z.vector(c)?))?;
        let theirs = Verdict::over(&other.z.z_point_coords(), |c| self.z.is_z_point(&other.z.vector(c)?))?;
        Ok(mine.and(theirs))
    }

    /// Chart over `W ⊕ <b_j : j ∈ J>` with basis `(b_j)_{j∈J}`.
    pub fn sub_chart(&self, idx: &[usize]) -> Result<Self> {
        self.check_indices(idx)?;
        Self::new(self.w_basis.clone(), self.u_basis.select_rows(idx))
    }

    fn check_indices(&self, idx: &[usize]) -> Result<()> {
        if let Some(&bad) = idx.iter().find(|&&j| j >= self.m()) {
            return Err(Error::IndexOutOfRange { index: bad, len: self.m() });
        }
        Ok(())
    }

    /// `ι*`: `U^(η,1) ↦ U^(η,1) ∩ (W ⊕ U')` for the central `U' = <b_j : j ∈ J>`.
    /// Returns the sub-chart together with the image coordinate `ιη`.
    pub fn intersection_map(&self, idx: &[usize], c: &ComplementCoord<R>) -> Result<(Self, ComplementCoord<R>)> {
        self.check(c)?;
        let sub = self.sub_chart(idx)?;
        let iota = inclusion_matrix(self.ring(), idx, self.m());
        let img = star_hom(&iota, c)?;
        Ok((sub, img))
    }

    /// `π*`: `U'^(η',1) ↦ U'^(η',1) ⊕ C` where `U' = <b_j : j ∈ J>` and `C` is
    /// spanned by the remaining `b_i`.
    pub fn join_map(&self, idx: &[usize], c: &ComplementCoord<R>) -> Result<ComplementCoord<R>> {
        self.check_indices(idx)?;
        if c.gamma.shape() != (idx.len(), self.k()) {
            return Err(Error::ShapeMismatch("coordinate does not belong to the sub-chart".into()));
        }
        let pi = projection_matrix(self.ring(), idx, self.m());
        star_hom(&pi, c)
    }

    /// The span of the `b_i` with indices outside `J`.
    pub fn coordinate_complement_of(&self, idx: &[usize]) -> Subspace<R> {
        let rest: Vec<usize> = (0..self.m()).filter(|j| !idx.contains(j)).collect();
        Subspace::span(&self.u_basis.select_rows(&rest))
    }
}

/// Rows `e_j` (`j ∈ J`): the inclusion `<b_j> → U`.
pub fn inclusion_matrix<R: DivisionRing>(ring: &R, idx: &[usize], m: usize) -> Matrix<R> {
    let (z, o) = (ring.zero(), ring.one());
    Matrix::from_fn(ring.clone(), idx.len(), m, |r, c| if idx[r] == c { o.clone() } else { z.clone() })
}

/// The projection `U → <b_j : j ∈ J>` with kernel spanned by the other `b_i`.
pub fn projection_matrix<R: DivisionRing>(ring: &R, idx: &[usize], m: usize) -> Matrix<R> {
    let (z, o) = (ring.zero(), ring.one());
    Matrix::from_fn(ring.clone(), m, idx.len(), |r, c| if idx[c] == r { o.clone() } else { z.clone() })
}

/// `ν = λ_m ζ` with `ζ` central. Since `b_i^{λ_m ζ} = m·b_i^ζ`, this holds iff
/// `x_0^{-1}·ν` is central for the first nonzero entry `x_0` of `ν`; the
/// returned `ζ` therefore has first nonzero entry 1.
pub fn n_group_decompose<R: DivisionRing>(nu: &Matrix<R>) -> Result<NDecomposition<R>> {
    if !nu.is_invertible() {
        return Err(Error::NotInvertible("ν".into()));
    }
    let ring = nu.ring();
    let x0 = nu.entries().iter().find(|x| !ring.is_zero(x)).expect("invertible").clone();
    let zeta = nu.scale_left(&ring.inv(&x0).expect("nonzero"));
    if zeta.is_central() {
        Ok(NDecomposition::Member { m: x0, zeta })
    } else {
        Ok(NDecomposition::NotInN)
    }
}

/// `\hat α`: `U^(γ,1) ↦ U^(γα,1)` for `α : W_1 → W_2`.
pub fn hat_hom<R: DivisionRing>(alpha: &Matrix<R>, c: &ComplementCoord<R>) -> Result<ComplementCoord<R>> {
    Ok(ComplementCoord { gamma: c.gamma.mul(alpha)? })
}

/// The linear map `w_1 + u ↦ w_1^α + u` applied to vectors (rows) of the
/// source chart's space.
pub fn hat_map_vectors<R: DivisionRing>(
    source: &AffineChart<R>,
    target: &AffineChart<R>,
    alpha: &Matrix<R>,
    rows: &Matrix<R>,
) -> Result<Matrix<R>> {
    if source.u_basis.rows() != target.u_basis.rows() || alpha.shape() != (source.k(), target.k()) {
        return Err(Error::ShapeMismatch("hat map needs α : W_1 → W_2 and a shared U".into()));
    }
    let c = source.adapted_coords(rows)?;
    let (k1, m) = (source.k(), source.m());
    let cw = c.submatrix(0..c.rows(), 0..k1);
    let cu = c.submatrix(0..c.rows(), k1..k1 + m);
    target.from_adapted(&cw.mul(alpha)?.hstack(&cu)?)
}

/// `δ*`: `U_2^(η,1) ↦ U_1^(δη,1)` for a central `δ : U_1 → U_2`.
pub fn star_hom<R: DivisionRing>(delta: &Matrix<R>, c: &ComplementCoord<R>) -> Result<ComplementCoord<R>> {
    if !delta.is_central() {
        return Err(Error::NotCentral);
    }
    Ok(ComplementCoord { gamma: delta.mul(&c.gamma)? })
}

impl<R: DivisionRing> AffineLine<R> {
    pub fn alpha(&self) -> &Matrix<R> {
        &self.alpha
    }

    pub fn beta(&self) -> &Matrix<R> {
        &self.beta
    }

    /// `U^(λ_k α + β, 1)`.
    pub fn point_at(&self, k: &R::Elem) -> ComplementCoord<R> {
        ComplementCoord { gamma: self.alpha.scale_left(k).add(&self.beta).expect("same shape") }
    }

    /// All points (finite `K`) or a sample (infinite `K`).
    pub fn points(&self, seed: u64) -> Listing<ComplementCoord<R>> {
        self.alpha.ring().scalars(seed).map(|k| self.point_at(&k))
    }

    /// The parameter `k` with `γ = λ_k α + β`, if `γ` lies on the line.
    pub fn parameter_of(&self, c: &ComplementCoord<R>) -> Option<R::Elem> {
        let ring = self.alpha.ring();
        let diff = c.gamma.sub(&self.beta).ok()?;
        let pos = self.alpha.entries().iter().position(|x| !ring.is_zero(x))?;
        let k = ring.mul(&diff.entries()[pos], &ring.inv(&self.alpha.entries()[pos])?);
        (self.alpha.scale_left(&k) == diff).then_some(k)
    }

    /// Exact membership predicate.
    pub fn contains(&self, c: &ComplementCoord<R>) -> bool {
        self.parameter_of(c).is_some()
    }

    /// `α` square and invertible.
    pub fn is_regular(&self) -> bool {
        self.alpha.is_invertible()
    }

    /// `α` scaled on the left so that its first nonzero entry is 1.
    pub fn direction_normalized(&self) -> Matrix<R> {
        let ring = self.alpha.ring();
        let x0 = self.alpha.entries().iter().find(|x| !ring.is_zero(x)).expect("α ≠ 0");
        self.alpha.scale_left(&ring.inv(x0).expect("nonzero"))
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
    fn coordinatize_examples() {
        let f = gf(2);
        let chart = AffineChart::standard(f.clone(), 4, 2).unwrap();
        assert_eq!(chart.coordinatize(chart.u()).unwrap(), chart.origin());
        let s = Subspace::span(&Matrix::from_ints(f.clone(), &[&[1, 0, 1, 0], &[0, 0, 0, 1]]));
        let c = chart.coordinatize(&s).unwrap();
        assert_eq!(c.gamma(), &Matrix::from_ints(f.clone(), &[&[1, 0], &[0, 0]]));
        assert_eq!(chart.decoordinatize(&c).unwrap(), s);
        assert_eq!(chart.coordinatize(chart.w()), Err(Error::NotAComplement));
    }

    #[test]
    fn scalar_multiplication_is_entrywise_left() {
        let f = gf(3);
        let chart = AffineChart::standard(f.clone(), 4, 2).unwrap();
        let c = chart.coord(Matrix::from_ints(f.clone(), &[&[1, 0], &[0, 0]])).unwrap();
        assert_eq!(chart.scale(&Fq(2), &c).unwrap().gamma(), &Matrix::from_ints(f.clone(), &[&[2, 0], &[0, 0]]));
        assert_eq!(chart.scale(&Fq(1), &c).unwrap(), c);
        assert_eq!(chart.scale(&Fq(0), &c).unwrap(), chart.origin());

        let q = RationalQuaternions;
        let qc = AffineChart::standard(q, 4, 2).unwrap();
        let (i, j, z) = (Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::zero());
        let g = qc.coord(qm(vec![vec![j, z.clone()], vec![z.clone(), z.clone()]])).unwrap();
        let left = qc.scale(&i, &g).unwrap();
        assert_eq!(left.gamma()[(0, 0)], Quaternion::unit_k());
        let right = qc.scale_right(&g, &i).unwrap();
        assert_eq!(right.gamma()[(0, 0)], -&Quaternion::unit_k());
    }

    #[test]
    fn lines_and_regularity() {
        let f = gf(2);
        let chart = AffineChart::standard(f.clone(), 4, 2).unwrap();
        let line = chart.line(Matrix::identity(f.clone(), 2), Matrix::zeros(f.clone(), 2, 2)).unwrap();
        let pts = line.points(0);
        assert!(pts.is_exhaustive());
        assert_eq!(pts.items, vec![chart.origin(), chart.coord(Matrix::identity(f.clone(), 2)).unwrap()]);
        assert!(line.is_regular());
        let sing = chart.line(Matrix::from_ints(f.clone(), &[&[1, 0], &[0, 0]]), Matrix::zeros(f.clone(), 2, 2)).unwrap();
        assert!(!sing.is_regular());
        let o = chart.origin();
        assert_eq!(chart.line_through(&o, &o), Err(Error::EqualPoints));

        let g3 = gf(3);
        let c3 = AffineChart::standard(g3.clone(), 4, 2).unwrap();
        let l3 = c3.line(Matrix::identity(g3.clone(), 2), Matrix::zeros(g3, 2, 2)).unwrap();
        let pts = l3.points(0).items;
        assert_eq!(pts.len(), 3);
        for a in &pts {
            for b in &pts {
                if a != b {
                    let (sa, sb) = (c3.decoordinatize(a).unwrap(), c3.decoordinatize(b).unwrap());
                    assert!(crate::projective::is_complement(&sa, &sb).unwrap());
                }
            }
        }
    }

    #[test]
    fn collineation_examples() {
        let f = gf(2);
        let chart = AffineChart::standard(f.clone(), 4, 2).unwrap();
        let id = Matrix::identity(f.clone(), 2);
        let zero = Matrix::zeros(f.clone(), 2, 2);
        let c = chart.coord(Matrix::from_ints(f.clone(), &[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(chart.collineation_action(&id, &zero, &id, &c).unwrap(), c);
        let moved = chart.collineation_action(&id, &id, &id, &chart.origin()).unwrap();
        assert_eq!(moved.gamma(), &id);
        let sing = Matrix::from_ints(f.clone(), &[&[1, 0], &[0, 0]]);
        assert!(matches!(chart.collineation_action(&id, &zero, &sing, &c), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn n_group_examples() {
        let f = gf(3);
        let nu = Matrix::from_ints(f.clone(), &[&[2, 1], &[0, 1]]);
        match n_group_decompose(&nu).unwrap() {
            NDecomposition::Member { m, zeta } => {
                assert_eq!(zeta.scale_left(&m), nu);
                assert_eq!(zeta[(0, 0)], Fq(1));
            }
            NDecomposition::NotInN => panic!("commutative K has N = Aut(U)"),
        }
        let (i, j, z) = (Quaternion::unit_i(), Quaternion::unit_j(), Quaternion::zero());
        let dii = qm(vec![vec![i.clone(), z.clone()], vec![z.clone(), i.clone()]]);
        assert_eq!(
            n_group_decompose(&dii).unwrap(),
            NDecomposition::Member { m: i.clone(), zeta: Matrix::identity(RationalQuaternions, 2) }
        );
        let dij = qm(vec![vec![i, z.clone()], vec![z, j]]);
        assert_eq!(n_group_decompose(&dij).unwrap(), NDecomposition::NotInN);
        assert!(n_group_decompose(&Matrix::zeros(f, 2, 2)).is_err());
    }

    #[test]
    fn line_membership_predicate() {
        let q = RationalQuaternions;
        let chart = AffineChart::standard(q, 4, 2).unwrap();
        let alpha = qm(vec![
            vec![Quaternion::one(), Quaternion::zero()],
            vec![Quaternion::zero(), Quaternion::unit_i()],
        ]);
        let line = chart.line(alpha, Matrix::zeros(q, 2, 2)).unwrap();
        let p = line.point_at(&Quaternion::unit_j());
        assert_eq!(line.parameter_of(&p), Some(Quaternion::unit_j()));
        // right multiple by j is not on the line
        let wrong = chart.coord(line.alpha().scale_right(&Quaternion::unit_j())).unwrap();
        assert!(!line.contains(&wrong));
        assert!(!line.points(0).is_exhaustive());
    }

    #[test]
    fn star_requires_central_map() {
        let q = RationalQuaternions;
        let chart = AffineChart::standard(q, 4, 2).unwrap();
        let delta = qm(vec![vec![Quaternion::unit_i(), Quaternion::zero()], vec![Quaternion::zero(), Quaternion::one()]]);
        assert_eq!(star_hom(&delta, &chart.origin()), Err(Error::NotCentral));
    }
}
