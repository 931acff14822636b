//! Families of vectors of `W` as coordinates of complements, the maximal
//! singular subspaces `𝒮(X)`, dual spreads, and `*`-transversal families.
//!
//! With the chart basis `(b_i)_{i∈I}`, the family `(w_i)` corresponds to the
//! complement spanned by the points `K(w_i + b_i)`; its coordinate `γ` has the
//! `W`-coordinates of `w_i` as rows. For `*`-transversal families the chart is
//! symmetric and `W` is identified with `U` through `w_i ↔ b_i`.

use crate::algebra::DivisionRing;
use crate::chart::{AffineChart, ComplementCoord};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::par::{self, Strategy};
use crate::projective::{hyperplanes, hyperplanes_not_containing, require_finite, tuples, Subspace};

/// A family `(w_i)_{i∈I}` of vectors of `W`, each given by its coordinates in
/// the chart's basis of `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPoint<R: DivisionRing> {
    pub w: Vec<Vec<R::Elem>>,
}

/// `ψ: W^I → 𝒮`, `(w_i) ↦` the complement with `b_i ↦ w_i`.
pub fn psi<R: DivisionRing>(chart: &AffineChart<R>, p: &FamilyPoint<R>) -> Result<ComplementCoord<R>> {
    if p.w.len() != chart.m() {
        return Err(Error::ShapeMismatch(format!("family of length {} for |I| = {}", p.w.len(), chart.m())));
    }
    chart.coord(Matrix::from_rows(chart.ring().clone(), chart.k(), p.w.clone())?)
}

pub fn psi_inv<R: DivisionRing>(c: &ComplementCoord<R>) -> FamilyPoint<R> {
    FamilyPoint { w: c.gamma().row_vecs() }
}

/// The span of the points `K(w_i + b_i)`.
pub fn psi_span<R: DivisionRing>(chart: &AffineChart<R>, p: &FamilyPoint<R>) -> Result<Subspace<R>> {
    let ring = chart.ring().clone();
    let mut rows = Vec::with_capacity(p.w.len());
    for (i, wi) in p.w.iter().enumerate() {
        let v = chart.w_basis().apply(wi)?;
        let b = chart.u_basis().row(i);
        rows.push(v.iter().zip(b).map(|(x, y)| ring.add(x, y)).collect());
    }
    Ok(Subspace::span(&Matrix::from_rows(ring, chart.ambient_dim(), rows)?))
}

fn require_full<R: DivisionRing>(chart: &AffineChart<R>) -> Result<()> {
    if chart.space().dim() != chart.ambient_dim() {
        return Err(Error::Malformed("the chart must span its ambient space".into()));
    }
    Ok(())
}

/// A hyperplane `X = {v : v·f = 0}` with `W ⊄ X`, seen through the chart:
/// `ψ((w_i)) ≤ X` iff `γ·g + h = 0` where `g = (w_t·f)_t` and `h = (b_i·f)_i`.
#[derive(Debug, Clone)]
pub struct SingularSubspace<R: DivisionRing> {
    pub hyperplane: Subspace<R>,
    /// `H = X ∩ W`.
    pub h: Subspace<R>,
    /// `(c_i)` with `ψ((c_i)) ≤ X`, each reduced modulo `H`.
    pub c: FamilyPoint<R>,
    g: Matrix<R>,
    hb: Matrix<R>,
}

impl<R: DivisionRing> SingularSubspace<R> {
    pub fn new(chart: &AffineChart<R>, x: &Subspace<R>) -> Result<Self> {
        require_full(chart)?;
        let n = chart.ambient_dim();
        if x.ambient() != n || x.dim() + 1 != n {
            return Err(Error::Malformed("not a hyperplane".into()));
        }
        if x.contains(chart.w()) {
            return Err(Error::HyperplaneContainsW);
        }
        let ring = chart.ring();
        let f = x.annihilator();
        let g = chart.w_basis().mul(&f)?;
        let hb = chart.u_basis().mul(&f)?;
        let h = Subspace::span(&g.kernel());
        let t = (0..g.rows()).find(|&t| !ring.is_zero(&g[(t, 0)])).expect("W ⊄ X");
        let gt_inv = ring.inv(&g[(t, 0)]).expect("nonzero");
        let c = (0..chart.m())
            .map(|i| {
                let mut row = vec![ring.zero(); chart.k()];
                row[t] = ring.neg(&ring.mul(&hb[(i, 0)], &gt_inv));
                reduce_mod(&h, row)
            })
            .collect();
        Ok(Self { hyperplane: x.clone(), h, c: FamilyPoint { w: c }, g, hb })
    }

    /// `S ≤ X` for the complement with coordinate `c`.
    pub fn contains(&self, c: &ComplementCoord<R>) -> Result<bool> {
        Ok(c.gamma().mul(&self.g)?.add(&self.hb)?.is_zero())
    }

    /// `ψ((c_i) + H^I)`, all members (finite domains only).
    pub fn members(&self, chart: &AffineChart<R>) -> Result<Vec<ComplementCoord<R>>> {
        let hv = self.h.vectors()?;
        let m = chart.m();
        let idx: Vec<usize> = (0..hv.len()).collect();
        tuples(&idx, m)
            .into_iter()
            .map(|choice| {
                let w = (0..m)
                    .map(|i| self.c.w[i].iter().zip(&hv[choice[i]]).map(|(a, b)| chart.ring().add(a, b)).collect())
                    .collect();
                psi(chart, &FamilyPoint { w })
            })
            .collect()
    }

    /// A direction in the affine span of `𝒮(X) ∪ {p}` that is invertible,
    /// i.e. a regular line created by adjoining `p`, if one exists.
    pub fn regular_direction_with(
        &self,
        chart: &AffineChart<R>,
        p: &ComplementCoord<R>,
    ) -> Result<Option<Matrix<R>>> {
        let ring = chart.ring();
        let elems = require_finite(ring)?;
        let base = psi(chart, &self.c)?;
        let delta = p.gamma().sub(base.gamma())?;
        let hv = self.h.vectors()?;
        let idx: Vec<usize> = (0..hv.len()).collect();
        for choice in tuples(&idx, chart.m()) {
            let hrows: Vec<Vec<R::Elem>> = choice.iter().map(|&j| hv[j].clone()).collect();
            let hm = Matrix::from_rows(ring.clone(), chart.k(), hrows)?;
            for k in &elems {
                let d = hm.add(&delta.scale_left(k))?;
                if d.is_invertible() {
                    return Ok(Some(d));
                }
            }
        }
        Ok(None)
    }
}

/// Reduces `v` modulo `h` against its echelon basis (pivot entries become 0).
fn reduce_mod<R: DivisionRing>(h: &Subspace<R>, mut v: Vec<R::Elem>) -> Vec<R::Elem> {
    let ring = h.ring();
    let e = h.basis().rref();
    for (r, &p) in e.pivots.iter().enumerate() {
        let c = v[p].clone();
        if ring.is_zero(&c) {
            continue;
        }
        for (j, x) in v.iter_mut().enumerate() {
            *x = ring.sub(x, &ring.mul(&c, &h.basis()[(r, j)]));
        }
    }
    v
}

/// The hyperplane `H ⊕ <c_i + b_i : i ∈ I>` of an affine subspace `(c_i) + H^I`
/// for a hyperplane `H` of `W` (in `W`-coordinates).
pub fn hyperplane_of_parameter<R: DivisionRing>(
    chart: &AffineChart<R>,
    h: &Subspace<R>,
    c: &FamilyPoint<R>,
) -> Result<Subspace<R>> {
    require_full(chart)?;
    if h.ambient() != chart.k() || h.dim() + 1 != chart.k() {
        return Err(Error::Malformed("H must be a hyperplane of W".into()));
    }
    let hv = Subspace::span(&h.basis().mul(chart.w_basis())?);
    hv.sum(&psi_span(chart, c)?)
}

/// `(H, (c_i) mod H)` for every hyperplane `H` of `W` and every class of
/// `(c_i)` (finite domains). These parameterize the maximal singular
/// subspaces independently of any hyperplane of `V`.
pub fn affine_parameters<R: DivisionRing>(chart: &AffineChart<R>) -> Result<Vec<(Subspace<R>, FamilyPoint<R>)>> {
    let ring = chart.ring();
    let elems = require_finite(ring)?;
    let mut out = Vec::new();
    for h in hyperplanes(ring, chart.k())? {
        // one representative per class of W / H: multiples of a vector outside H
        let outside = (0..chart.k())
            .map(|t| {
                let mut e = vec![ring.zero(); chart.k()];
                e[t] = ring.one();
                e
            })
            .find(|e| !h.contains_vector(e))
            .expect("H is proper");
        let reps: Vec<Vec<R::Elem>> =
            elems.iter().map(|k| reduce_mod(&h, outside.iter().map(|x| ring.mul(k, x)).collect())).collect();
        let idx: Vec<usize> = (0..reps.len()).collect();
        for choice in tuples(&idx, chart.m()) {
            out.push((h.clone(), FamilyPoint { w: choice.iter().map(|&j| reps[j].clone()).collect() }));
        }
    }
    Ok(out)
}

/// A set `ℬ` of complements; `W` is a member by convention.
#[derive(Debug, Clone)]
pub struct DualSpreadCandidate<R: DivisionRing> {
    pub members: Vec<ComplementCoord<R>>,
}

impl<R: DivisionRing> DualSpreadCandidate<R> {
    pub fn new(members: Vec<ComplementCoord<R>>) -> Self {
        Self { members }
    }

    /// Members in canonical order, for set comparison.
    pub fn sorted(&self) -> Vec<ComplementCoord<R>> {
        let mut v = self.members.clone();
        v.sort();
        v
    }

    pub fn same_set(&self, other: &Self) -> bool {
        self.sorted() == other.sorted()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation<R: DivisionRing> {
    /// Members `i < j` are not complementary.
    NotComplementary(usize, usize),
    /// A hyperplane with `W ⊄ X` contains no member.
    Uncovered(Subspace<R>),
}

#[derive(Debug, Clone)]
pub struct DualSpreadReport<R: DivisionRing> {
    pub pairs_checked: usize,
    pub hyperplanes_checked: usize,
    pub violation: Option<Violation<R>>,
}

impl<R: DivisionRing> DualSpreadReport<R> {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// The first pair of members whose difference is not invertible.
pub fn ds1_violation<R: DivisionRing>(
    chart: &AffineChart<R>,
    b: &DualSpreadCandidate<R>,
    strategy: Strategy,
) -> Result<Option<(usize, usize)>> {
    chart.require_symmetric()?;
    let pairs: Vec<(usize, usize)> =
        (0..b.members.len()).flat_map(|i| (i + 1..b.members.len()).map(move |j| (i, j))).collect();
    let found = par::find_map_first(strategy, &pairs, |&(i, j)| match chart.complementary(&b.members[i], &b.members[j]) {
        Ok(true) => None,
        Ok(false) => Some(Ok((i, j))),
        Err(e) => Some(Err(e)),
    });
    found.transpose()
}

/// Checks both dual-spread conditions: pairwise complementarity, and that
/// every hyperplane not through `W` contains a member (those through `W`
/// contain `W`). Refuses infinite domains.
pub fn is_dual_spread<R: DivisionRing>(
    chart: &AffineChart<R>,
    b: &DualSpreadCandidate<R>,
    strategy: Strategy,
) -> Result<DualSpreadReport<R>> {
    chart.require_symmetric()?;
    require_finite(chart.ring())?;
    require_full(chart)?;
    let n = b.members.len();
    if let Some((i, j)) = ds1_violation(chart, b, strategy)? {
        return Ok(DualSpreadReport {
            pairs_checked: n * n.saturating_sub(1) / 2,
            hyperplanes_checked: 0,
            violation: Some(Violation::NotComplementary(i, j)),
        });
    }
    let uncovered = first_uncovered(chart, b, strategy)?;
    Ok(DualSpreadReport {
        pairs_checked: n * n.saturating_sub(1) / 2,
        hyperplanes_checked: hyperplanes_not_containing(chart.w())?.len(),
        violation: uncovered.map(Violation::Uncovered),
    })
}

/// `{U^(p(C),1)}` for the polynomials `p` of degree `< m` over the prime
/// field in the companion matrix `C` of a monic irreducible of degree `m`.
/// Together with `W` this is the regular spread induced by `GF(p^m)` acting
/// on `GF(p)^{2m}`.
pub fn desarguesian_spread<R: DivisionRing>(chart: &AffineChart<R>, modulus: &[i64]) -> Result<DualSpreadCandidate<R>> {
    chart.require_symmetric()?;
    let elems = require_finite(chart.ring())?;
    let ring = chart.ring();
    let m = chart.m();
    if modulus.len() != m + 1 || modulus[m] != 1 {
        return Err(Error::InvalidFieldSpec(format!("{modulus:?}"), format!("need a monic modulus of degree {m}")));
    }
    // companion: e_i ↦ e_{i+1}, e_{m-1} ↦ -Σ a_j e_j
    let companion = Matrix::from_fn(ring.clone(), m, m, |r, c| {
        if r + 1 < m {
            if c == r + 1 { ring.one() } else { ring.zero() }
        } else {
            ring.neg(&ring.from_int(modulus[c]))
        }
    });
    let mut powers = vec![Matrix::identity(ring.clone(), m)];
    for _ in 1..m {
        powers.push(powers.last().expect("nonempty").mul(&companion)?);
    }
    if ring.order() != Some(ring.characteristic()) {
        return Err(Error::InvalidFieldSpec(ring.spec(), "desarguesian spreads are built over a prime field".into()));
    }
    let mut members = Vec::new();
    for coeffs in tuples(&elems, m) {
        let mut g = Matrix::zeros(ring.clone(), m, m);
        for (a, pw) in coeffs.iter().zip(&powers) {
            g = g.add(&pw.scale_left(a))?;
        }
        members.push(chart.coord(g)?);
    }
    Ok(DualSpreadCandidate::new(members))
}

/// Every set of `q^m` complements that together with `W` forms a dual
/// spread, by clique search over complementary pairs. Desk scale only.
pub fn dual_spreads_through_w<R: DivisionRing>(
    chart: &AffineChart<R>,
    strategy: Strategy,
) -> Result<Vec<DualSpreadCandidate<R>>> {
    chart.require_symmetric()?;
    let q = require_finite(chart.ring())?.len();
    let size = q.pow(chart.m() as u32);
    let coords = chart.all_coords()?;
    let adj: Vec<Vec<bool>> = par::map(strategy, &coords, |a| {
        coords.iter().map(|b| a != b && chart.complementary(a, b).unwrap_or(false)).collect()
    });
    fn grow(adj: &[Vec<bool>], size: usize, cur: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..adj.len() {
            if cur.iter().all(|&u| adj[u][v]) {
                cur.push(v);
                grow(adj, size, cur, v + 1, out);
                cur.pop();
            }
        }
    }
    // the first rows of a full-size clique are pairwise distinct, hence all
    // of K^m; root the search at the unique member whose first row is zero
    let roots: Vec<usize> =
        (0..coords.len()).filter(|&i| coords[i].gamma().row(0).iter().all(|x| chart.ring().is_zero(x))).collect();
    let cliques: Vec<Vec<Vec<usize>>> = par::map(strategy, &roots, |&r| {
        let mut out = Vec::new();
        grow(&adj, size, &mut vec![r], 0, &mut out);
        out
    });
    let mut found = Vec::new();
    for clique in cliques.into_iter().flatten() {
        let cand = DualSpreadCandidate::new(clique.iter().map(|&i| coords[i].clone()).collect());
        if is_dual_spread(chart, &cand, Strategy::Sequential)?.holds() {
            found.push(cand);
        }
    }
    Ok(found)
}

/// Maps `τ_i: D → U` (`U` identified with `W`), as a table indexed like
/// `domain`: `table[d][i]` holds the coordinates of `domain[d]^{τ_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarTransversalFamily<R: DivisionRing> {
    pub domain: Vec<Vec<R::Elem>>,
    pub table: Vec<Vec<Vec<R::Elem>>>,
}

#[derive(Debug, Clone)]
pub struct FamilyReport<R: DivisionRing> {
    /// `(T1*)`: for distinct `u, u′` the differences `u^{τ_i} - u′^{τ_i}` form a basis.
    pub t1_violation: Option<(usize, usize)>,
    /// `(T2*)`, checked through the hyperplanes of `V` not containing `W`.
    pub t2_violation: Option<Subspace<R>>,
}

impl<R: DivisionRing> FamilyReport<R> {
    pub fn holds(&self) -> bool {
        self.t1_violation.is_none() && self.t2_violation.is_none()
    }
}

impl<R: DivisionRing> StarTransversalFamily<R> {
    pub fn new(domain: Vec<Vec<R::Elem>>, table: Vec<Vec<Vec<R::Elem>>>) -> Result<Self> {
        if domain.len() != table.len() {
            return Err(Error::Malformed(format!("{} domain entries but {} table rows", domain.len(), table.len())));
        }
        Ok(Self { domain, table })
    }

    fn check_shape(&self, chart: &AffineChart<R>) -> Result<()> {
        chart.require_symmetric()?;
        let m = chart.m();
        let bad = self.domain.iter().any(|u| u.len() != m)
            || self.table.iter().any(|row| row.len() != m || row.iter().any(|v| v.len() != m));
        if bad {
            return Err(Error::ShapeMismatch(format!("family entries must be vectors of length {m}, one per index")));
        }
        Ok(())
    }

    /// `(u^{τ_i})^ψ` for every `u ∈ D`.
    pub fn images(&self, chart: &AffineChart<R>) -> Result<Vec<ComplementCoord<R>>> {
        self.check_shape(chart)?;
        self.table.iter().map(|row| psi(chart, &FamilyPoint { w: row.clone() })).collect()
    }

    /// `{(u^{τ_i})^ψ | u ∈ D}`, with `W` implicit.
    pub fn dual_spread(&self, chart: &AffineChart<R>) -> Result<DualSpreadCandidate<R>> {
        Ok(DualSpreadCandidate::new(self.images(chart)?))
    }

    /// `(T1*)` runs on any domain; `(T2*)` needs a finite one.
    pub fn verify_t1(&self, chart: &AffineChart<R>, strategy: Strategy) -> Result<Option<(usize, usize)>> {
        ds1_violation(chart, &self.dual_spread(chart)?, strategy)
    }

    pub fn verify(&self, chart: &AffineChart<R>, strategy: Strategy) -> Result<FamilyReport<R>> {
        require_finite(chart.ring())?;
        let cand = self.dual_spread(chart)?;
        Ok(FamilyReport {
            t1_violation: ds1_violation(chart, &cand, strategy)?,
            t2_violation: first_uncovered(chart, &cand, strategy)?,
        })
    }

    /// Whether `τ_{i₀}` is the inclusion `D → U`.
    pub fn has_inclusion_at(&self, i0: usize) -> bool {
        self.domain.iter().zip(&self.table).all(|(u, row)| row.get(i0) == Some(u))
    }

    /// Re-indexes the domain by `u^{τ_{i₀}}` so that `τ_{i₀}` becomes the
    /// inclusion; requires `τ_{i₀}` injective.
    pub fn with_inclusion_at(&self, i0: usize) -> Result<Self> {
        let len = self.table.first().map_or(0, |r| r.len());
        if i0 >= len {
            return Err(Error::IndexOutOfRange { index: i0, len });
        }
        let domain: Vec<Vec<R::Elem>> = self.table.iter().map(|row| row[i0].clone()).collect();
        let mut seen = domain.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != domain.len() {
            return Err(Error::NotStarTransversal(format!("τ_{i0} is not injective")));
        }
        Self::new(domain, self.table.clone())
    }
}

/// The first hyperplane not through `W` that contains no member.
fn first_uncovered<R: DivisionRing>(
    chart: &AffineChart<R>,
    b: &DualSpreadCandidate<R>,
    strategy: Strategy,
) -> Result<Option<Subspace<R>>> {
    let xs = hyperplanes_not_containing(chart.w())?;
    par::find_map_first(strategy, &xs, |x| {
        let s = match SingularSubspace::new(chart, x) {
            Ok(s) => s,
            Err(e) => return Some(Err(e)),
        };
        for c in &b.members {
            match s.contains(c) {
                Ok(true) => return None,
                Ok(false) => {}
                Err(e) => return Some(Err(e)),
            }
        }
        Some(Ok(x.clone()))
    })
    .transpose()
}

/// The family with `D = {s_{i₀}}` and `τ_i: s_{i₀} ↦ s_i`, read off the
/// `ψ`-preimages `(s_i)` of the members of a dual spread containing `W`.
pub fn family_from_dual_spread<R: DivisionRing>(
    chart: &AffineChart<R>,
    b: &DualSpreadCandidate<R>,
    i0: usize,
) -> Result<StarTransversalFamily<R>> {
    chart.require_symmetric()?;
    if i0 >= chart.m() {
        return Err(Error::IndexOutOfRange { index: i0, len: chart.m() });
    }
    let table: Vec<Vec<Vec<R::Elem>>> = b.members.iter().map(|c| psi_inv(c).w).collect();
    let domain: Vec<Vec<R::Elem>> = table.iter().map(|row| row[i0].clone()).collect();
    let mut seen = domain.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != domain.len() {
        // two members agreeing in entry i₀ differ by a singular matrix
        return Err(Error::NotDualSpread(format!("two members share entry {i0}")));
    }
    StarTransversalFamily::new(domain, table)
}
