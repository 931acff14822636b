//! Worked examples with frozen values, each checked against an independent
//! brute-force oracle where one exists.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use complement_geometry::algebra::{DivisionRing, FiniteField, Fq, Quaternion, RationalQuaternions};
use complement_geometry::chart::{hat_hom, n_group_decompose, AffineChart, ComplementCoord, NDecomposition};
use complement_geometry::dualspread::{
    desarguesian_spread, dual_spreads_through_w, family_from_dual_spread, psi, FamilyPoint, SingularSubspace,
};
use complement_geometry::linalg::Matrix;
use complement_geometry::par::Strategy;
use complement_geometry::projective::{
    all_complements, hyperplanes, hyperplanes_not_containing, is_complement, Subspace,
};
use complement_geometry::reguli::{
    classify_line, cone_decompose, line_transversal_images, reconstruct_from_transversals,
    transversal_image_incidence, LineClass, Perspectivity, Regulus,
};

fn gf(p: u32) -> FiniteField {
    FiniteField::prime(p).unwrap()
}

fn m(f: &FiniteField, rows: &[&[i64]]) -> Matrix<FiniteField> {
    Matrix::from_ints(f.clone(), rows)
}

fn qm(rows: Vec<Vec<Quaternion>>) -> Matrix<RationalQuaternions> {
    let cols = rows[0].len();
    Matrix::from_rows(RationalQuaternions, cols, rows).unwrap()
}

fn z() -> Quaternion {
    Quaternion::zero()
}

/// Every `d`-dimensional subspace of `GF(p)^n`, by spanning all `d`-tuples of
/// vectors and keeping the independent ones.
fn brute_subspaces(f: &FiniteField, n: usize, d: usize) -> BTreeSet<Subspace<FiniteField>> {
    let q = f.q() as usize;
    let vectors: Vec<Vec<Fq>> = (0..q.pow(n as u32))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let e = f.from_int((x % q) as i64);
                    x /= q;
                    e
                })
                .collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; d];
    loop {
        let rows: Vec<Vec<Fq>> = idx.iter().map(|&i| vectors[i].clone()).collect();
        let mat = Matrix::from_rows(f.clone(), n, rows).unwrap();
        if mat.rank() == d {
            out.insert(Subspace::span(&mat));
        }
        let mut pos = 0;
        loop {
            if pos == d {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < vectors.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[test]
fn quaternion_rref_normalizes_rows() {
    let (i, j) = (Quaternion::unit_i(), Quaternion::unit_j());
    let q = RationalQuaternions;
    assert_eq!(q.mul(&i, &i), Quaternion::from_ints(-1, 0, 0, 0));
    let e = qm(vec![vec![i, z()], vec![z(), j]]).rref();
    assert_eq!(e.rank(), 2);
    assert_eq!(e.matrix, Matrix::identity(q, 2));
}

#[test]
fn gf3_row_times_matrix() {
    let f = gf(3);
    let v = m(&f, &[&[1, 1], &[1, 0]]).apply(&[f.from_int(1), f.from_int(2)]).unwrap();
    assert_eq!(v, vec![f.from_int(0), f.from_int(1)]);
}

#[test]
fn complement_example_and_counts() {
    let f = gf(2);
    let w = Subspace::span(&m(&f, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]));
    let s = Subspace::span(&m(&f, &[&[1, 0, 1, 0], &[0, 0, 0, 1]]));
    assert!(is_complement(&w, &s).unwrap());
    for (p, count) in [(2, 16), (3, 81)] {
        let f = gf(p);
        let w = Subspace::coordinate(f.clone(), 4, &[0, 1]);
        let oracle: BTreeSet<_> =
            brute_subspaces(&f, 4, 2).into_iter().filter(|s| s.intersect(&w).unwrap().dim() == 0).collect();
        let got: BTreeSet<_> = all_complements(&w).unwrap().into_iter().collect();
        assert_eq!(oracle.len(), count);
        assert_eq!(got, oracle);
    }
}

#[test]
fn hyperplane_counts_against_forms() {
    let f = gf(2);
    assert_eq!(hyperplanes(&f, 3).unwrap().len(), 7);
    let all = hyperplanes(&f, 4).unwrap();
    assert_eq!(all.len(), 15);
    assert_eq!(all.iter().collect::<BTreeSet<_>>(), brute_subspaces(&f, 4, 3).iter().collect());
    let w = Subspace::coordinate(f, 4, &[0, 1]);
    let not_w = hyperplanes_not_containing(&w).unwrap();
    assert_eq!(not_w.len(), 12);
    assert!(not_w.iter().all(|x| !x.contains(&w)));
}

#[test]
fn quaternion_maximal_central_subspace_is_zero() {
    let q = RationalQuaternions;
    let chart = AffineChart::symmetric(q, 2).unwrap();
    let v = vec![z(), z(), Quaternion::unit_i(), Quaternion::one()];
    let m = chart.z_structure().maximal_central_subspace(&Subspace::point(q, v)).unwrap();
    assert_eq!(m.dim(), 0);
}

#[test]
fn coordinatize_example_and_round_trip() {
    let f = gf(2);
    let chart = AffineChart::standard(f.clone(), 4, 2).unwrap();
    let s = Subspace::span(&m(&f, &[&[1, 0, 1, 0], &[0, 0, 0, 1]]));
    let c = chart.coordinatize(&s).unwrap();
    assert_eq!(*c.gamma(), m(&f, &[&[1, 0], &[0, 0]]));
    assert_eq!(chart.decoordinatize(&c).unwrap(), s);
    for s in all_complements(chart.w()).unwrap() {
        assert_eq!(chart.decoordinatize(&chart.coordinatize(&s).unwrap()).unwrap(), s);
    }
}

#[test]
fn quaternion_scaling_is_on_the_left() {
    let q = RationalQuaternions;
    let chart = AffineChart::symmetric(q, 2).unwrap();
    let c = chart.coord(qm(vec![vec![Quaternion::unit_j(), z()], vec![z(), z()]])).unwrap();
    let left = chart.scale(&Quaternion::unit_i(), &c).unwrap();
    assert_eq!(*left.gamma(), qm(vec![vec![Quaternion::unit_k(), z()], vec![z(), z()]]));
    let right = chart.scale_right(&c, &Quaternion::unit_i()).unwrap();
    assert_eq!(*right.gamma(), qm(vec![vec![Quaternion::from_ints(0, 0, 0, -1), z()], vec![z(), z()]]));
}

#[test]
fn gf3_identity_line_has_three_complementary_points() {
    let f = gf(3);
    let chart = AffineChart::symmetric(f.clone(), 2).unwrap();
    let line = chart.line(Matrix::identity(f.clone(), 2), Matrix::zeros(f, 2, 2)).unwrap();
    let pts = line.points(0).items;
    assert_eq!(pts.len(), 3);
    for a in &pts {
        for b in &pts {
            if a != b {
                assert!(a.gamma().sub(b.gamma()).unwrap().is_invertible());
            }
        }
    }
}

#[test]
fn n_group_quaternion_examples() {
    let q = RationalQuaternions;
    let (i, j) = (Quaternion::unit_i(), Quaternion::unit_j());
    let nu = qm(vec![vec![i.clone(), z()], vec![z(), i.clone()]]);
    assert_eq!(
        n_group_decompose(&nu).unwrap(),
        NDecomposition::Member { m: i.clone(), zeta: Matrix::identity(q, 2) }
    );
    // ν λ_k = λ_{i k i^-1} ν on the sample
    let ii = q.inv(&i).unwrap();
    for k in q.scalars(0).items.iter().take(40) {
        let conj = q.mul(&q.mul(&i, k), &ii);
        let lhs = Matrix::scalar(q, 2, k).mul(&nu).unwrap();
        let rhs = nu.mul(&Matrix::scalar(q, 2, &conj)).unwrap();
        assert_eq!(lhs, rhs);
    }
    let mixed = qm(vec![vec![i.clone(), z()], vec![z(), j.clone()]]);
    assert_eq!(n_group_decompose(&mixed).unwrap(), NDecomposition::NotInN);
    assert_eq!(q.mul(&q.mul(&j, &i), &q.inv(&j).unwrap()), q.neg(&i));
}

#[test]
fn quaternion_charts_equal_examples() {
    let q = RationalQuaternions;
    let chart = AffineChart::symmetric(q, 2).unwrap();
    let i = Quaternion::unit_i();
    let uniform = chart.rebased(&qm(vec![vec![i.clone(), z()], vec![z(), i.clone()]])).unwrap();
    let skew = chart.rebased(&qm(vec![vec![Quaternion::one(), z()], vec![z(), i]])).unwrap();
    assert!(chart.charts_equal(&uniform).unwrap());
    assert!(chart.z_points_coincide(&uniform).unwrap().holds);
    assert!(!chart.charts_equal(&skew).unwrap());
    assert!(!chart.z_points_coincide(&skew).unwrap().holds);
    assert!(chart.scalar_disagreement(&skew, &q.scalars(0).items).unwrap().is_some());
}

#[test]
fn rank_one_hat_maps_send_lines_to_lines_or_points() {
    for p in [2, 3] {
        let f = gf(p);
        let chart = AffineChart::symmetric(f.clone(), 2).unwrap();
        let coords = chart.all_coords().unwrap();
        let rank_one: Vec<_> = coords.iter().map(|c| c.gamma().clone()).filter(|a| a.rank() == 1).collect();
        for alpha in &rank_one {
            for a in &coords {
                for b in &coords {
                    if a == b {
                        continue;
                    }
                    let line = chart.line_through(a, b).unwrap();
                    let img: BTreeSet<_> =
                        line.points(0).items.iter().map(|c| hat_hom(alpha, c).unwrap()).collect();
                    let (ha, hb) = (hat_hom(alpha, a).unwrap(), hat_hom(alpha, b).unwrap());
                    if ha == hb {
                        assert_eq!(img.len(), 1);
                    } else {
                        let target: BTreeSet<_> = chart.line_through(&ha, &hb).unwrap().points(0).items.into_iter().collect();
                        assert_eq!(img, target);
                    }
                }
            }
        }
    }
}

#[test]
fn join_after_intersect_fixes_complements_through_c() {
    let f = gf(3);
    let chart = AffineChart::symmetric(f, 2).unwrap();
    let c_sub = chart.coordinate_complement_of(&[0]);
    let mut through_c = 0;
    for c in chart.all_coords().unwrap() {
        if !chart.decoordinatize(&c).unwrap().contains(&c_sub) {
            continue;
        }
        through_c += 1;
        let (_, img) = chart.intersection_map(&[0], &c).unwrap();
        assert_eq!(chart.join_map(&[0], &img).unwrap(), c);
    }
    assert_eq!(through_c, 9);
}

#[test]
fn intersection_map_is_lattice_intersection() {
    let f = gf(2);
    let chart = AffineChart::symmetric(f, 2).unwrap();
    let target = chart.w().sum(&Subspace::span(&chart.u_basis().select_rows(&[0]))).unwrap();
    for c in chart.all_coords().unwrap() {
        let (sub, img) = chart.intersection_map(&[0], &c).unwrap();
        let literal = chart.decoordinatize(&c).unwrap().intersect(&target).unwrap();
        assert_eq!(sub.decoordinatize(&img).unwrap(), literal);
    }
}

#[test]
fn standard_regulus_and_transversals_gf2() {
    let f = gf(2);
    let chart = AffineChart::symmetric(f.clone(), 2).unwrap();
    let r = Regulus::standard(&chart).unwrap();
    assert_eq!(r.members(0).unwrap().len(), 3);
    let ts = r.transversals().unwrap();
    // T_z = <(z,0), (0,z)> for z in {b1, b2, b1 + b2}
    let expect: BTreeSet<_> = [[1, 0], [0, 1], [1, 1]]
        .iter()
        .map(|zz| Subspace::span(&m(&f, &[&[zz[0], zz[1], 0, 0], &[0, 0, zz[0], zz[1]]])))
        .collect();
    assert_eq!(ts.lines.iter().cloned().collect::<BTreeSet<_>>(), expect);
}

#[test]
fn transversals_meet_members_once_by_brute_force() {
    for p in [2, 3] {
        let f = gf(p);
        let chart = AffineChart::symmetric(f.clone(), 2).unwrap();
        let r = Regulus::standard(&chart).unwrap();
        let ms = r.members(0).unwrap().items;
        let ts = r.transversals().unwrap();
        assert_eq!((ms.len(), ts.len()), (p as usize + 1, p as usize + 1));
        // every line of PG(3,p) meeting all members once is a listed transversal
        let lines = brute_subspaces(&f, 4, 2);
        let found: BTreeSet<_> = lines
            .into_iter()
            .filter(|l| ms.iter().all(|x| x.intersect(l).unwrap().dim() == 1))
            .collect();
        assert_eq!(found, ts.lines.iter().cloned().collect());
    }
}

#[test]
fn ten_random_images_reconstruct_over_gf3() {
    let f = gf(3);
    let chart = AffineChart::symmetric(f.clone(), 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut done = 0;
    while done < 10 {
        let phi = Matrix::from_fn(f.clone(), 4, 4, |_, _| f.from_int(rng.gen_range(0..3)));
        if !phi.is_invertible() {
            continue;
        }
        let r = Regulus::from_collineation(&chart, phi).unwrap();
        let back = reconstruct_from_transversals(&chart, &r.transversals().unwrap(), Strategy::Sequential).unwrap();
        assert!(back.same_members(&r, 0).unwrap().is_proof());
        done += 1;
    }
}

#[test]
fn regulus_through_every_complementary_pair_gf3() {
    let chart = AffineChart::symmetric(gf(3), 2).unwrap();
    let coords = chart.all_coords().unwrap();
    let mut pairs = 0;
    for a in &coords {
        for b in &coords {
            if !a.gamma().sub(b.gamma()).unwrap().is_invertible() {
                continue;
            }
            let r = Regulus::through(&chart, a, b).unwrap();
            assert!(r.contains_w().unwrap());
            assert!(r.contains(&chart.decoordinatize(a).unwrap()).unwrap());
            assert!(r.contains(&chart.decoordinatize(b).unwrap()).unwrap());
            assert!(r.pairwise_complementary(0).unwrap().is_proof());
            pairs += 1;
        }
    }
    // 81 points, each complementary to |GL(2,3)| = 48 others
    assert_eq!(pairs, 81 * 48);
}

#[test]
fn rank_one_transversal_images_gf3() {
    let f = gf(3);
    let chart = AffineChart::symmetric(f.clone(), 2).unwrap();
    // kernel <b2>
    let line = chart.line(m(&f, &[&[1, 0], &[0, 0]]), Matrix::zeros(f.clone(), 2, 2)).unwrap();
    let imgs = line_transversal_images(&chart, &line).unwrap();
    assert_eq!(imgs.len(), 4);
    for (zc, img) in &imgs.items {
        let is_b2 = f.is_zero(&zc[0]);
        assert_eq!(img.is_point(), is_b2, "z = {zc:?}");
        assert!(transversal_image_incidence(&chart, &line, img, 0).unwrap().is_proof());
    }
}

#[test]
fn exact_cone_example_gf3() {
    let f = gf(3);
    let chart = AffineChart::symmetric(f.clone(), 2).unwrap();
    let line = chart.line(m(&f, &[&[1, 0], &[0, 0]]), Matrix::zeros(f.clone(), 2, 2)).unwrap();
    let (class, cone) = classify_line(&chart, &line).unwrap();
    assert_eq!(class, LineClass::ExactCone);
    assert_eq!(cone.vertex, Subspace::span(&chart.u_basis().select_rows(&[1])));
    assert_eq!(line.points(0).len(), 3);
    assert!(cone.cone_equals_line(0).unwrap().is_proof());
}

#[test]
fn quaternion_non_exact_cone() {
    let q = RationalQuaternions;
    let chart = AffineChart::symmetric(q, 2).unwrap();
    let i = Quaternion::unit_i();
    // (i, 1)·α = 0
    let alpha = qm(vec![vec![Quaternion::one(), z()], vec![q.neg(&i), z()]]);
    let line = chart.line(alpha, Matrix::zeros(q, 2, 2)).unwrap();
    let cone = cone_decompose(&chart, &line).unwrap();
    assert_eq!(cone.kernel, Subspace::point(q, vec![z(), z(), i, Quaternion::one()]));
    assert_eq!(cone.vertex.dim(), 0);
    assert!(!cone.exact);
    let v = cone.intersection_property(0).unwrap();
    assert!(v.holds && !v.is_proof());
}

#[test]
fn perspectivities_of_the_standard_regulus() {
    for p in [2, 3] {
        let f = gf(p);
        let chart = AffineChart::symmetric(f.clone(), 2).unwrap();
        let r = Regulus::standard(&chart).unwrap();
        let ms = r.members(0).unwrap().items;
        let ts: BTreeSet<_> = r.transversals().unwrap().lines.into_iter().collect();
        for a in &ms {
            for b in &ms {
                for c in &ms {
                    if a == b || a == c || b == c {
                        continue;
                    }
                    let pi = Perspectivity::new(&r, a, b, c).unwrap();
                    let src = a.points().unwrap();
                    let img: BTreeSet<_> = src.iter().map(|pt| pi.apply(pt).unwrap()).collect();
                    assert_eq!(img, b.points().unwrap().into_iter().collect::<BTreeSet<_>>());
                    let za: BTreeSet<_> = r.trace(a).unwrap().items.into_iter().collect();
                    let zb: BTreeSet<_> = r.trace(b).unwrap().items.into_iter().collect();
                    let mapped: BTreeSet<_> = za.iter().map(|pt| pi.apply(pt).unwrap()).collect();
                    assert_eq!(mapped, zb);
                    for pt in &za {
                        assert!(ts.contains(&pt.sum(&pi.apply(pt).unwrap()).unwrap()));
                    }
                }
            }
        }
    }
}

#[test]
fn psi_example_gf2() {
    let f = gf(2);
    let chart = AffineChart::symmetric(f.clone(), 2).unwrap();
    let p = FamilyPoint { w: vec![vec![f.one(), f.zero()], vec![f.zero(), f.zero()]] };
    let c = psi(&chart, &p).unwrap();
    assert_eq!(*c.gamma(), m(&f, &[&[1, 0], &[0, 0]]));
    assert_eq!(chart.decoordinatize(&c).unwrap(), Subspace::span(&m(&f, &[&[1, 0, 1, 0], &[0, 0, 0, 1]])));
}

#[test]
fn singular_subspaces_are_maximal_gf2() {
    let f = gf(2);
    let chart = AffineChart::symmetric(f, 2).unwrap();
    let coords = chart.all_coords().unwrap();
    for x in hyperplanes_not_containing(chart.w()).unwrap() {
        let s = SingularSubspace::new(&chart, &x).unwrap();
        let members: BTreeSet<ComplementCoord<_>> = s.members(&chart).unwrap().into_iter().collect();
        let scan: BTreeSet<_> =
            coords.iter().filter(|c| x.contains(&chart.decoordinatize(c).unwrap())).cloned().collect();
        assert_eq!(members.len(), 4);
        assert_eq!(members, scan);
        for a in &members {
            for b in &members {
                assert!(!chart.line_through(a, b).map(|l| l.is_regular()).unwrap_or(false));
            }
        }
        for p in coords.iter().filter(|c| !members.contains(c)) {
            assert!(s.regular_direction_with(&chart, p).unwrap().is_some());
        }
    }
}

/// Pairwise complementary and every hyperplane of `V` contains a member,
/// checked on subspaces directly.
fn brute_is_dual_spread(subs: &[Subspace<FiniteField>], planes: &[Subspace<FiniteField>]) -> bool {
    let n = subs[0].ambient();
    for (i, a) in subs.iter().enumerate() {
        for b in &subs[i + 1..] {
            if a.sum(b).unwrap().dim() != n {
                return false;
            }
        }
    }
    planes.iter().all(|x| subs.iter().any(|s| x.contains(s)))
}

#[test]
fn regular_spread_by_brute_force() {
    let f = gf(2);
    let chart = AffineChart::symmetric(f.clone(), 2).unwrap();
    let b = desarguesian_spread(&chart, &[1, 1, 1]).unwrap();
    let mut subs: Vec<_> = b.members.iter().map(|c| chart.decoordinatize(c).unwrap()).collect();
    subs.push(chart.w().clone());
    assert_eq!(subs.len(), 5);
    assert!(brute_is_dual_spread(&subs, &hyperplanes(&f, 4).unwrap()));
}

#[test]
fn eight_spreads_through_w_by_four_subsets() {
    let f = gf(2);
    let chart = AffineChart::symmetric(f.clone(), 2).unwrap();
    let coords = chart.all_coords().unwrap();
    let subs: Vec<_> = coords.iter().map(|c| chart.decoordinatize(c).unwrap()).collect();
    let planes = hyperplanes(&f, 4).unwrap();
    let mut brute = BTreeSet::new();
    let n = coords.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let pick = [a, b, c, d];
                    let mut set: Vec<_> = pick.iter().map(|&i| subs[i].clone()).collect();
                    set.push(chart.w().clone());
                    if brute_is_dual_spread(&set, &planes) {
                        brute.insert(pick.iter().map(|&i| coords[i].clone()).collect::<BTreeSet<_>>());
                    }
                }
            }
        }
    }
    assert_eq!(brute.len(), 8);
    let found: BTreeSet<BTreeSet<_>> = dual_spreads_through_w(&chart, Strategy::Sequential)
        .unwrap()
        .into_iter()
        .map(|b| b.members.into_iter().collect())
        .collect();
    assert_eq!(found, brute);
}

#[test]
fn family_extraction_is_index_invariant() {
    let f = gf(2);
    let chart = AffineChart::symmetric(f, 2).unwrap();
    let b = desarguesian_spread(&chart, &[1, 1, 1]).unwrap();
    let from0 = family_from_dual_spread(&chart, &b, 0).unwrap().dual_spread(&chart).unwrap();
    let from1 = family_from_dual_spread(&chart, &b, 1).unwrap().dual_spread(&chart).unwrap();
    assert!(from0.same_set(&from1));
    assert!(from0.same_set(&b));
}

#[test]
fn classify_counts_gf2() {
    let chart = AffineChart::symmetric(gf(2), 2).unwrap();
    let lines = chart.lines_through_origin().unwrap();
    assert_eq!(lines.len(), 15);
    let mut regular = 0;
    for l in &lines {
        let (class, _) = classify_line(&chart, l).unwrap();
        assert_ne!(class, LineClass::NonExactCone);
        regular += usize::from(class == LineClass::Regular);
    }
    // |GL(2,2)| = 6 invertible directions
    assert_eq!(regular, 6);
}
