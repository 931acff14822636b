//! Reguli of a symmetric chart, their transversals, and the cone structure
//! of arbitrary chart lines.
//!
//! Inside a symmetric chart the vectors of `W ⊕ U` are handled in adapted
//! coordinates `[w; b]` with `w_i` identified with `b_i`, so that the model
//! space is `K^m × K^m`. There the standard regulus is
//! `ℛ₀ = {W} ∪ {U^(λ_k,1) | k ∈ K}` and its transversals are the lines
//! `K(z,0) ⊕ K(0,z)` for the `Z`-points `Kz`. A general regulus is stored as
//! `ℛ₀^φ` for an invertible `2m × 2m` matrix `φ`.

use crate::algebra::{Coverage, DivisionRing, Listing, Verdict};
use crate::chart::{AffineChart, AffineLine, ComplementCoord};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::par::{self, Strategy};
use crate::projective::{require_finite, Subspace, ZStructure};

#[derive(Debug, Clone)]
pub struct Regulus<R: DivisionRing> {
    chart: AffineChart<R>,
    phi: Matrix<R>,
    phi_inv: Matrix<R>,
}

/// A set of lines (2-dimensional subspaces), listed in `Z`-point order when
/// produced from a regulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalSet<R: DivisionRing> {
    pub lines: Vec<Subspace<R>>,
    pub coverage: Coverage,
}

impl<R: DivisionRing> TransversalSet<R> {
    /// A user-supplied, complete set of lines.
    pub fn from_lines(lines: Vec<Subspace<R>>) -> Self {
        Self { lines, coverage: Coverage::Exhaustive }
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn sorted(&self) -> Vec<Subspace<R>> {
        let mut v = self.lines.clone();
        v.sort();
        v
    }
}

fn model_w<R: DivisionRing>(ring: &R, m: usize) -> Matrix<R> {
    Matrix::identity(ring.clone(), m).hstack(&Matrix::zeros(ring.clone(), m, m)).expect("same rows")
}

fn model_member<R: DivisionRing>(ring: &R, m: usize, k: &R::Elem) -> Matrix<R> {
    Matrix::scalar(ring.clone(), m, k).hstack(&Matrix::identity(ring.clone(), m)).expect("same rows")
}

fn model_transversal<R: DivisionRing>(ring: &R, z: &[R::Elem]) -> Matrix<R> {
    let zero = vec![ring.zero(); z.len()];
    let rows = vec![[z, &zero[..]].concat(), [&zero[..], z].concat()];
    Matrix::from_rows(ring.clone(), 2 * z.len(), rows).expect("two rows of length 2m")
}

/// `k` if `g = k·I`.
fn scalar_of<R: DivisionRing>(g: &Matrix<R>) -> Option<R::Elem> {
    let ring = g.ring();
    let k = g[(0, 0)].clone();
    let ok = (0..g.rows()).all(|r| {
        (0..g.cols()).all(|c| if r == c { g[(r, c)] == k } else { ring.is_zero(&g[(r, c)]) })
    });
    ok.then_some(k)
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

impl<R: DivisionRing> Regulus<R> {
    pub fn standard(chart: &AffineChart<R>) -> Result<Self> {
        Self::from_collineation(chart, Matrix::identity(chart.ring().clone(), 2 * chart.m()))
    }

    /// `ℛ₀^φ` for `φ` acting on adapted coordinates.
    pub fn from_collineation(chart: &AffineChart<R>, phi: Matrix<R>) -> Result<Self> {
        chart.require_symmetric()?;
        let n = 2 * chart.m();
        if phi.shape() != (n, n) {
            return Err(Error::ShapeMismatch(format!("φ must be {n}x{n}")));
        }
        let phi_inv = phi.inverse().ok_or_else(|| Error::NotInvertible("φ".into()))?;
        Ok(Self { chart: chart.clone(), phi, phi_inv })
    }

    /// `{W} ∪ ℓ(α, β)` for a regular line, i.e. `ℛ₀` under `[[α, 0], [β, 1]]`.
    pub fn from_regular_line(chart: &AffineChart<R>, line: &AffineLine<R>) -> Result<Self> {
        chart.require_symmetric()?;
        if !line.is_regular() {
            return Err(Error::NotRegular);
        }
        let one = Matrix::identity(chart.ring().clone(), chart.m());
        Self::from_collineation(chart, chart.block_matrix(line.alpha(), line.beta(), &one)?)
    }

    /// The regulus of the line through two complementary complements.
    pub fn through(chart: &AffineChart<R>, u1: &ComplementCoord<R>, u2: &ComplementCoord<R>) -> Result<Self> {
        if !chart.complementary(u1, u2)? {
            return Err(Error::NotComplementary);
        }
        Self::from_regular_line(chart, &chart.line_through(u1, u2)?)
    }

    /// The regulus `ℛ₀^φ` with `W^φ = a`, `U^φ = b` and `U^(1,1)` mapped to
    /// `c`, for pairwise complementary `m`-dimensional `a`, `b`, `c`.
    pub fn through_members(chart: &AffineChart<R>, a: &Subspace<R>, b: &Subspace<R>, c: &Subspace<R>) -> Result<Self> {
        chart.require_symmetric()?;
        let m = chart.m();
        let (ca, cb, cc) =
            (chart.adapted_coords(a.basis())?, chart.adapted_coords(b.basis())?, chart.adapted_coords(c.basis())?);
        if [&ca, &cb, &cc].iter().any(|x| x.rows() != m) {
            return Err(Error::NotComplementary);
        }
        let cb_stack = cc.vstack(&cb)?;
        for pair in [ca.vstack(&cb)?, ca.vstack(&cc)?, cb_stack.clone()] {
            if pair.rank() != 2 * m {
                return Err(Error::NotComplementary);
            }
        }
        // a_j = x_j·C + y_j·B, and b_j := -y_j·B gives a_j + b_j ∈ C
        let xy = ca.coords_in(&cb_stack)?.ok_or(Error::NotInSpan)?;
        let y = xy.submatrix(0..m, m..2 * m);
        let bj = y.mul(&cb)?.neg();
        Self::from_collineation(chart, ca.vstack(&bj)?)
    }

    pub fn chart(&self) -> &AffineChart<R> {
        &self.chart
    }

    pub fn phi(&self) -> &Matrix<R> {
        &self.phi
    }

    fn ring(&self) -> &R {
        self.chart.ring()
    }

    fn m(&self) -> usize {
        self.chart.m()
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_model(&self, rows: &Matrix<R>) -> Result<Subspace<R>> {
        Ok(Subspace::span(&self.chart.from_adapted(&rows.mul(&self.phi)?)?))
    }

    fn to_model(&self, s: &Subspace<R>) -> Result<Subspace<R>> {
        Ok(Subspace::span(&self.chart.adapted_coords(s.basis())?.mul(&self.phi_inv)?))
    }

    fn model_z(&self) -> ZStructure<R> {
        ZStructure::new(Matrix::identity(self.ring().clone(), self.m())).expect("identity is independent")
    }

    /// `W^φ`.
    pub fn base_member(&self) -> Result<Subspace<R>> {
        self.from_model(&model_w(self.ring(), self.m()))
    }

    /// `U^(λ_k,1)` under `φ`.
    pub fn member_at(&self, k: &R::Elem) -> Result<Subspace<R>> {
        self.from_model(&model_member(self.ring(), self.m(), k))
    }

    /// `W^φ` followed by the members `U^(λ_k,1)^φ` in scalar order.
    pub fn members(&self, seed: u64) -> Result<Listing<Subspace<R>>> {
        let ks = self.ring().scalars(seed);
        let mut items = vec![self.base_member()?];
        for k in &ks.items {
            items.push(self.member_at(k)?);
        }
        Ok(Listing { items, coverage: ks.coverage })
    }

    /// Exact membership predicate.
    pub fn contains(&self, s: &Subspace<R>) -> Result<bool> {
        let m = self.m();
        if s.dim() != m || !self.chart.space().contains(s) {
            return Ok(false);
        }
        let model = self.to_model(s)?;
        let basis = model.basis();
        let cw = basis.submatrix(0..m, 0..m);
        let Some(cu_inv) = basis.submatrix(0..m, m..2 * m).inverse() else {
            return Ok(model == Subspace::span(&model_w(self.ring(), m)));
        };
        Ok(scalar_of(&cu_inv.mul(&cw)?).is_some())
    }

    /// The parameter `k` of a member other than `W^φ`.
    pub fn parameter_of(&self, s: &Subspace<R>) -> Result<Option<R::Elem>> {
        let m = self.m();
        if s.dim() != m || !self.chart.space().contains(s) {
            return Ok(None);
        }
        let model = self.to_model(s)?;
        let basis = model.basis();
        let Some(cu_inv) = basis.submatrix(0..m, m..2 * m).inverse() else {
            return Ok(None);
        };
        Ok(scalar_of(&cu_inv.mul(&basis.submatrix(0..m, 0..m))?))
    }

    pub fn contains_w(&self) -> Result<bool> {
        self.contains(self.chart.w())
    }

    /// `T_z^φ = (K(z,0) ⊕ K(0,z))^φ` for a `Z`-vector `z` of the model.
    pub fn transversal(&self, z: &[R::Elem]) -> Result<Subspace<R>> {
        if z.len() != self.m() {
            return Err(Error::ShapeMismatch(format!("Z-vector of length {} for m = {}", z.len(), self.m())));
        }
        if !self.model_z().is_z_point(z)? {
            return Err(Error::NotCentral);
        }
        self.from_model(&model_transversal(self.ring(), z))
    }

    /// `𝒯 = 𝒯₀^φ`, one line per `Z`-point.
    pub fn transversals(&self) -> Result<TransversalSet<R>> {
        let zs = self.model_z().z_point_coords();
        let lines = zs.items.iter().map(|z| self.transversal(z)).collect::<Result<Vec<_>>>()?;
        Ok(TransversalSet { lines, coverage: zs.coverage })
    }

    /// Exact predicate: `t = T_z^φ` for some `Z`-point `Kz`.
    pub fn is_transversal(&self, t: &Subspace<R>) -> Result<bool> {
        let m = self.m();
        if t.dim() != 2 || !self.chart.space().contains(t) {
            return Ok(false);
        }
        let model = self.to_model(t)?;
        let on_w = model.intersect(&Subspace::span(&model_w(self.ring(), m)))?;
        if on_w.dim() != 1 {
            return Ok(false);
        }
        let z = on_w.basis().row(0)[..m].to_vec();
        if !self.model_z().is_z_point(&z)? {
            return Ok(false);
        }
        Ok(model == Subspace::span(&model_transversal(self.ring(), &z)))
    }

    /// `T ∩ X` for every listed transversal `T`.
    pub fn trace(&self, x: &Subspace<R>) -> Result<Listing<Subspace<R>>> {
        let ts = self.transversals()?;
        let items = ts.lines.iter().map(|t| t.intersect(x)).collect::<Result<Vec<_>>>()?;
        Ok(Listing { items, coverage: ts.coverage })
    }

    /// Whether some transversal `T` has `W + T = y`.
    fn w_plus_transversal_is(&self, y: &Subspace<R>) -> Result<bool> {
        let m = self.m();
        let ring = self.ring();
        let model = self.to_model(y)?;
        // {x : (x,0) ∈ y} ∩ {x : (0,x) ∈ y}
        let half = |lo: usize| -> Result<Subspace<R>> {
            let idx: Vec<usize> = (lo..lo + m).collect();
            let part = Subspace::span(&Matrix::identity(ring.clone(), 2 * m).select_rows(&idx));
            let meet = model.intersect(&part)?;
            Ok(Subspace::span(&meet.basis().submatrix(0..meet.dim(), lo..lo + m)))
        };
        let both = half(0)?.intersect(&half(m)?)?;
        let central = self.model_z().maximal_central_subspace(&both)?;
        for r in 0..central.dim() {
            let t = self.from_model(&model_transversal(ring, central.basis().row(r)))?;
            if self.chart.w().sum(&t)? == *y {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `W + 𝒯 = W + 𝒵(U)`: every `W + T` is `W + P` for a `Z`-point `P` of
    /// the chart basis and conversely.
    pub fn w_plus_condition(&self) -> Result<Verdict> {
        let w = self.chart.w();
        let z = self.chart.z_structure();
        let ts = self.transversals()?;
        let forward = Verdict::over(&Listing { items: ts.lines, coverage: ts.coverage }, |t| {
            let y = w.sum(t)?;
            if y.dim() != self.m() + 1 {
                return Ok::<_, Error>(false);
            }
            let p = y.intersect(self.chart.u())?;
            Ok(p.dim() == 1 && z.is_z_point(p.basis().row(0))?)
        })?;
        let backward = Verdict::over(&z.z_points(), |p| self.w_plus_transversal_is(&w.sum(p)?))?;
        Ok(forward.and(backward))
    }

    /// Whether the members other than `W` form a line of the chart. Returns
    /// that line when `W` is a member and every listed member lies on the
    /// line through the members at `k = 0` and `k = 1`, and every listed
    /// line point is a member.
    pub fn as_chart_line(&self, seed: u64) -> Result<(Option<AffineLine<R>>, Coverage)> {
        let ks = self.ring().scalars(seed);
        if !self.contains_w()? {
            return Ok((None, Coverage::Exhaustive));
        }
        let c0 = self.chart.coordinatize(&self.member_at(&self.ring().zero())?)?;
        let c1 = self.chart.coordinatize(&self.member_at(&self.ring().one())?)?;
        let line = self.chart.line_through(&c0, &c1)?;
        for k in &ks.items {
            let on_line = self.chart.coordinatize(&self.member_at(k)?).map(|c| line.contains(&c)).unwrap_or(false);
            if !on_line || !self.contains(&self.chart.decoordinatize(&line.point_at(k))?)? {
                return Ok((None, Coverage::Exhaustive));
            }
        }
        Ok((Some(line), ks.coverage))
    }

    /// Compares member sets through the membership predicates.
    pub fn same_members(&self, other: &Self, seed: u64) -> Result<Verdict> {
        let a = Verdict::over(&self.members(seed)?, |s| other.contains(s))?;
        let b = Verdict::over(&other.members(seed)?, |s| self.contains(s))?;
        Ok(a.and(b))
    }

    /// Pairwise complementarity of the listed members.
    pub fn pairwise_complementary(&self, seed: u64) -> Result<Verdict> {
        let ms = self.members(seed)?;
        let n = self.chart.space().dim();
        let mut checked = 0;
        for (i, a) in ms.items.iter().enumerate() {
            for b in &ms.items[i + 1..] {
                checked += 1;
                if a.sum(b)?.dim() != n {
                    return Ok(Verdict::new(false, checked, ms.coverage));
                }
            }
        }
        Ok(Verdict::new(true, checked, ms.coverage))
    }
}

/// Each line meets each member in exactly one point, and the lines are
/// pairwise skew. Returns the first violation.
pub fn incidence_violation<R: DivisionRing>(members: &[Subspace<R>], lines: &[Subspace<R>]) -> Result<Option<String>> {
    for (i, t) in lines.iter().enumerate() {
        for (j, x) in members.iter().enumerate() {
            let d = t.intersect(x)?.dim();
            if d != 1 {
                return Ok(Some(format!("line {i} meets member {j} in dimension {d}")));
            }
        }
        for (j, t2) in lines.iter().enumerate().skip(i + 1) {
            if t.intersect(t2)?.dim() != 0 {
                return Ok(Some(format!("lines {i} and {j} are not skew")));
            }
        }
    }
    Ok(None)
}

/// The unique regulus with the given transversal set (finite domains).
///
/// Fix `T₁` and a point `P₁` of it. For every other `T₂` pick `T₃` with
/// `T₁ ≤ T₂ + T₃`; the member through `P₁` meets `T₂` in `(P₁ + T₃) ∩ T₂`.
/// Each candidate is then checked against both defining conditions, and the
/// regulus fitted to three members must have exactly the candidates as its
/// members and exactly the input as its transversals.
pub fn reconstruct_from_transversals<R: DivisionRing>(
    chart: &AffineChart<R>,
    ts: &TransversalSet<R>,
    strategy: Strategy,
) -> Result<Regulus<R>> {
    chart.require_symmetric()?;
    require_finite(chart.ring())?;
    let m = chart.m();
    let lines = &ts.lines;
    let fail = |msg: &str| Err(Error::Reconstruction(msg.into()));
    if lines.is_empty() {
        return fail("empty transversal set");
    }
    if lines.iter().any(|t| t.dim() != 2 || !chart.space().contains(t)) {
        return fail("every transversal must be a line of the chart's space");
    }
    let t1 = &lines[0];
    let mut partner = vec![None; lines.len()];
    for j in 1..lines.len() {
        for c in 1..lines.len() {
            if c != j && lines[j].sum(&lines[c])?.contains(t1) {
                partner[j] = Some(c);
                break;
            }
        }
        if partner[j].is_none() {
            return fail(&format!("no transversal T3 with T1 ≤ T{} + T3", j + 1));
        }
    }
    let mut triples = Vec::new();
    for a in 0..lines.len() {
        for b in 0..lines.len() {
            for c in b + 1..lines.len() {
                if a != b && a != c && lines[b].sum(&lines[c])?.contains(&lines[a]) {
                    triples.push((a, b, c));
                }
            }
        }
    }

    let candidate = |p1: &Subspace<R>| -> Result<Option<Subspace<R>>> {
        let mut x = p1.clone();
        for j in 1..lines.len() {
            let c = partner[j].expect("checked above");
            let q = p1.sum(&lines[c])?.intersect(&lines[j])?;
            if q.dim() != 1 {
                return Ok(None);
            }
            x = x.sum(&q)?;
        }
        if x.dim() != m {
            return Ok(None);
        }
        let mut traces = Vec::with_capacity(lines.len());
        for t in lines {
            let p = t.intersect(&x)?;
            if p.dim() != 1 {
                return Ok(None);
            }
            traces.push(p);
        }
        let spanned = traces.iter().try_fold(Subspace::zero(chart.ring().clone(), x.ambient()), |acc, p| acc.sum(p))?;
        if spanned != x {
            return Ok(None);
        }
        for &(a, b, c) in &triples {
            if traces[a].sum(&traces[b])?.sum(&traces[c])?.dim() > 2 {
                return Ok(None);
            }
        }
        Ok(Some(x))
    };
    let points = t1.points()?;
    let found = par::map(strategy, &points, |p| candidate(p));
    let mut members = Vec::new();
    for f in found {
        if let Some(x) = f? {
            members.push(x);
        }
    }
    let members = {
        let mut v = sorted(members);
        v.dedup();
        v
    };
    if members.len() < 3 {
        return fail(&format!("only {} subspaces satisfy the transversal conditions", members.len()));
    }
    let reg = Regulus::through_members(chart, &members[0], &members[1], &members[2])?;
    if sorted(reg.members(0)?.items) != members {
        return fail("the candidates do not form a regulus");
    }
    if reg.transversals()?.sorted() != ts.sorted() {
        return fail("the input is not the full transversal set of a regulus");
    }
    Ok(reg)
}

/// The point map `P ↦ (P ⊕ U₃) ∩ U₂` from `U₁` to `U₂` with center `U₃`.
#[derive(Debug, Clone)]
pub struct Perspectivity<R: DivisionRing> {
    source: Subspace<R>,
    target: Subspace<R>,
    center: Subspace<R>,
}

impl<R: DivisionRing> Perspectivity<R> {
    pub fn new(regulus: &Regulus<R>, u1: &Subspace<R>, u2: &Subspace<R>, u3: &Subspace<R>) -> Result<Self> {
        for u in [u1, u2, u3] {
            if !regulus.contains(u)? {
                return Err(Error::NotAMember);
            }
        }
        if u1 == u2 || u1 == u3 || u2 == u3 {
            return Err(Error::EqualPoints);
        }
        Ok(Self { source: u1.clone(), target: u2.clone(), center: u3.clone() })
    }

    pub fn apply(&self, p: &Subspace<R>) -> Result<Subspace<R>> {
        if p.dim() != 1 || !self.source.contains(p) {
            return Err(Error::NotInSpan);
        }
        p.sum(&self.center)?.intersect(&self.target)
    }

    pub fn source(&self) -> &Subspace<R> {
        &self.source
    }

    pub fn target(&self) -> &Subspace<R> {
        &self.target
    }
}

/// Image of a transversal `T_z` of `ℛ₀` under `\hat α`, moved by the
/// translation `[[1,0],[β,1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransversalImage<R: DivisionRing> {
    /// `z ∈ ker α`: the image collapses to a point on every line point.
    Point(Subspace<R>),
    Line(Subspace<R>),
}

impl<R: DivisionRing> TransversalImage<R> {
    pub fn subspace(&self) -> &Subspace<R> {
        match self {
            Self::Point(s) | Self::Line(s) => s,
        }
    }

    pub fn is_point(&self) -> bool {
        matches!(self, Self::Point(_))
    }
}

/// Normalized `Z`-point coordinates paired with the image of their transversal.
pub type TransversalImages<R> = Listing<(Vec<<R as DivisionRing>::Elem>, TransversalImage<R>)>;

/// `K(z^α + z^β, 0)`-style images `span(z^α, z^β + z)` for each `Z`-point `z`
/// of the chart basis, paired with the normalized coordinates of `z`.
pub fn line_transversal_images<R: DivisionRing>(
    chart: &AffineChart<R>,
    line: &AffineLine<R>,
) -> Result<TransversalImages<R>> {
    let z = chart.z_structure();
    let wb = chart.w_basis();
    let ub = chart.u_basis();
    let ring = chart.ring().clone();
    z.z_point_coords().items.into_iter().try_fold(
        Listing { items: Vec::new(), coverage: z.z_point_coords().coverage },
        |mut acc, c| {
            let row = Matrix::from_rows(ring.clone(), c.len(), vec![c.clone()])?;
            let za = row.mul(line.alpha())?;
            let moved = row.mul(line.beta())?.mul(wb)?.add(&row.mul(ub)?)?;
            let img = if za.is_zero() {
                TransversalImage::Point(Subspace::span(&moved))
            } else {
                TransversalImage::Line(Subspace::span(&za.mul(wb)?.vstack(&moved)?))
            };
            acc.items.push((c, img));
            Ok(acc)
        },
    )
}

/// Incidence of one image with the line: a point lies on every line point; a
/// line meets `W` and every line point in exactly one point.
pub fn transversal_image_incidence<R: DivisionRing>(
    chart: &AffineChart<R>,
    line: &AffineLine<R>,
    image: &TransversalImage<R>,
    seed: u64,
) -> Result<Verdict> {
    let points = line.points(seed);
    match image {
        TransversalImage::Point(p) => Verdict::over(&points, |c| Ok(chart.decoordinatize(c)?.contains(p))),
        TransversalImage::Line(t) => {
            if t.intersect(chart.w())?.dim() != 1 {
                return Ok(Verdict::new(false, 1, points.coverage));
            }
            Verdict::over(&points, |c| Ok::<_, Error>(chart.decoordinatize(c)?.intersect(t)?.dim() == 1))
        }
    }
}

/// `ℓ(α, β)` as the translate of a cone with vertex `M` over an affine
/// regulus in `im(α) ⊕ U′`.
#[derive(Debug, Clone)]
pub struct ConeDecomposition<R: DivisionRing> {
    chart: AffineChart<R>,
    line: AffineLine<R>,
    /// `ker α` as a subspace of `U`.
    pub kernel: Subspace<R>,
    /// `M`, the maximal central subspace of `ker α`.
    pub vertex: Subspace<R>,
    /// Indices `J` with `U′ = <b_j : j ∈ J>` a central complement of `ker α`.
    pub u_prime: Vec<usize>,
    /// `{im α} ∪ ℓ(α₀, 0)` in the chart over `(im α, U′)`.
    pub base_regulus: Regulus<R>,
    /// `M = ker α`.
    pub exact: bool,
}

pub fn cone_decompose<R: DivisionRing>(chart: &AffineChart<R>, line: &AffineLine<R>) -> Result<ConeDecomposition<R>> {
    let z = chart.z_structure();
    let alpha = line.alpha();
    let kernel = z.from_coords(&alpha.kernel())?;
    let vertex = z.maximal_central_subspace(&kernel)?;
    let u_prime = z.central_complement_indices(&kernel)?;
    let image = Subspace::span(&alpha.mul(chart.w_basis())?);
    let sub = AffineChart::new(image.basis().clone(), chart.u_basis().select_rows(&u_prime))?;
    let alpha0 = alpha.select_rows(&u_prime).mul(chart.w_basis())?.coords_in(image.basis())?.ok_or(Error::NotInSpan)?;
    let zero = Matrix::zeros(chart.ring().clone(), alpha0.rows(), alpha0.cols());
    let base_regulus = Regulus::from_regular_line(&sub, &sub.line(alpha0, zero)?)?;
    Ok(ConeDecomposition {
        chart: chart.clone(),
        line: line.clone(),
        exact: vertex == kernel,
        kernel,
        vertex,
        u_prime,
        base_regulus,
    })
}

impl<R: DivisionRing> ConeDecomposition<R> {
    fn translate(&self, s: &Subspace<R>) -> Result<Subspace<R>> {
        let one_w = Matrix::identity(self.chart.ring().clone(), self.chart.k());
        let one_u = Matrix::identity(self.chart.ring().clone(), self.chart.m());
        self.chart.apply_adapted(&self.chart.block_matrix(&one_w, self.line.beta(), &one_u)?, s)
    }

    pub fn line(&self) -> &AffineLine<R> {
        &self.line
    }

    /// `im α ⊕ U′`, translated along with the line.
    pub fn carrier(&self) -> Result<Subspace<R>> {
        self.translate(self.base_regulus.chart().space())
    }

    /// The vertex moved by the translation, contained in every line point.
    pub fn translated_vertex(&self) -> Result<Subspace<R>> {
        self.translate(&self.vertex)
    }

    /// `(X_k ⊕ M)` translated, where `X_k` is the base member with parameter `k`.
    pub fn cone_point_at(&self, k: &R::Elem) -> Result<Subspace<R>> {
        self.translate(&self.base_regulus.member_at(k)?.sum(&self.vertex)?)
    }

    /// `{X ⊕ M | X ∈ ℛ, X ≠ im α}` (translated), in scalar order.
    pub fn cone_points(&self, seed: u64) -> Result<Listing<Subspace<R>>> {
        let ks = self.chart.ring().scalars(seed);
        let items = ks.items.iter().map(|k| self.cone_point_at(k)).collect::<Result<Vec<_>>>()?;
        Ok(Listing { items, coverage: ks.coverage })
    }

    fn line_point(&self, k: &R::Elem) -> Result<Subspace<R>> {
        self.chart.decoordinatize(&self.line.point_at(k))
    }

    /// Every line point contains the (translated) vertex.
    pub fn vertex_in_points(&self, seed: u64) -> Result<Verdict> {
        let v = self.translated_vertex()?;
        Verdict::over(&self.chart.ring().scalars(seed), |k| Ok(self.line_point(k)?.contains(&v)))
    }

    /// Each line point meets the carrier in the base member with the same
    /// parameter.
    pub fn intersection_property(&self, seed: u64) -> Result<Verdict> {
        let carrier = self.carrier()?;
        Verdict::over(&self.chart.ring().scalars(seed), |k| {
            Ok::<_, Error>(
                self.line_point(k)?.intersect(&carrier)? == self.translate(&self.base_regulus.member_at(k)?)?,
            )
        })
    }

    /// Line points equal cone points parameter by parameter.
    pub fn cone_equals_line(&self, seed: u64) -> Result<Verdict> {
        Verdict::over(&self.chart.ring().scalars(seed), |k| Ok::<_, Error>(self.line_point(k)? == self.cone_point_at(k)?))
    }

    /// Finite domains: the line's point set equals the cone's point set.
    pub fn cone_set_equals_line(&self) -> Result<bool> {
        require_finite(self.chart.ring())?;
        let pts = self.line.points(0).items.iter().map(|c| self.chart.decoordinatize(c)).collect::<Result<Vec<_>>>()?;
        Ok(sorted(pts) == sorted(self.cone_points(0)?.items))
    }
}

/// The two kinds of non-regular lines, and regular ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineClass {
    Regular,
    /// Cone whose vertex is all of `ker α`.
    ExactCone,
    /// `ker α` is not central; the line is described by its intersections.
    NonExactCone,
}

impl LineClass {
    pub fn name(self) -> &'static str {
        match self {
            Self::Regular => "regular",
            Self::ExactCone => "exact-cone",
            Self::NonExactCone => "non-exact-cone",
        }
    }
}

pub fn classify_line<R: DivisionRing>(chart: &AffineChart<R>, line: &AffineLine<R>) -> Result<(LineClass, ConeDecomposition<R>)> {
    let cone = cone_decompose(chart, line)?;
    let class = if chart.is_symmetric() && line.is_regular() {
        LineClass::Regular
    } else if cone.exact {
        LineClass::ExactCone
    } else {
        LineClass::NonExactCone
    };
    Ok((class, cone))
}
