use super::*;
use crate::exec::Execution;
use crate::num::{rat, ratio};

fn pts(v: &[&[i64]]) -> Vec<ExponentVector> {
    v.iter().map(|p| ExponentVector::new(p.to_vec())).collect()
}

fn hull(v: &[&[i64]]) -> Polytope {
    Polytope::hull(&pts(v)).unwrap()
}

fn rv(v: &[&[i64]]) -> Vec<Vec<Rational>> {
    v.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()
}

#[test]
fn hull_examples() {
    let tri = hull(&[&[0, 0], &[1, 0], &[0, 1]]);
    assert_eq!(tri.facets().len(), 3);
    assert_eq!(tri.affine_dim(), 2);

    let seg = hull(&[&[0, 1], &[2, 0]]);
    assert_eq!(seg.affine_dim(), 1);
    assert_eq!(seg.equations().len(), 1);

    let grid: Vec<ExponentVector> = (-2..=2)
        .flat_map(|a| (-2..=2).map(move |b| ExponentVector::from([a, b])))
        .collect();
    let sq = Polytope::hull(&grid).unwrap();
    assert_eq!(sq.vertices(), rv(&[&[-2, -2], &[-2, 2], &[2, -2], &[2, 2]]));
    assert_eq!(sq.facets().len(), 4);

    assert_eq!(Polytope::hull(&[]), Err(Error::EmptyPointSet));
    assert!(matches!(
        Polytope::hull(&[ExponentVector::zero(7)]),
        Err(Error::DimensionGuard { dim: 7, max: 6 })
    ));
}

#[test]
fn lower_dimensional_hulls_in_space() {
    let tri = hull(&[&[0, 0, 1], &[2, 0, 1], &[0, 3, 1], &[1, 1, 1]]);
    assert_eq!(tri.affine_dim(), 2);
    assert_eq!(tri.vertices().len(), 3);
    assert_eq!(tri.volume(), rat(0));
    assert!(tri.contains(&[rat(1), rat(1), rat(1)]));
    assert!(!tri.contains(&[rat(1), rat(1), rat(0)]));
    assert_eq!(tri.lattice_count().unwrap(), BigInt::from(7));

    let point = hull(&[&[3, -1, 2]]);
    assert_eq!(point.affine_dim(), 0);
    assert_eq!(point.lattice_count().unwrap(), BigInt::from(1));
}

#[test]
fn minkowski_examples() {
    let simplex = Polytope::standard_simplex(2);
    assert_eq!(simplex.minkowski_sum(&Polytope::origin(2)).unwrap(), simplex);
    let pent = Polytope::cube(2).minkowski_sum(&simplex).unwrap();
    assert_eq!(
        pent.vertices(),
        rv(&[&[-1, -1], &[-1, 2], &[1, 2], &[2, -1], &[2, 1]])
    );
    assert_eq!(pent.volume(), ratio(17, 2));

    let dz = Polytope::coordinate_simplex(2, &[0]).scale(3);
    let dx = Polytope::coordinate_simplex(2, &[1]).scale(2);
    let rect = dx.minkowski_sum(&dz).unwrap();
    assert_eq!(rect, hull(&[&[0, 0], &[3, 0], &[0, 2], &[3, 2]]));
    assert!(simplex.minkowski_sum(&Polytope::origin(3)).is_err());
}

#[test]
fn scaling_and_volume() {
    let s = Polytope::standard_simplex(2);
    assert_eq!(s.scale(1), s);
    let s2 = s.scale(2);
    assert_eq!(s2, hull(&[&[0, 0], &[2, 0], &[0, 2]]));
    assert_eq!(s2.volume(), rat(2));
    assert_eq!(Polytope::cube(2).scale(0), Polytope::origin(2));
    assert_eq!(s.volume(), ratio(1, 2));
    assert_eq!(Polytope::cube(2).volume(), rat(4));
    assert_eq!(Polytope::cube(4).volume(), rat(16));
    assert_eq!(Polytope::standard_simplex(5).volume(), ratio(1, 120));
}

#[test]
fn lattice_counts() {
    assert_eq!(Polytope::cube(2).scale(2).lattice_count().unwrap(), BigInt::from(25));
    assert_eq!(Polytope::standard_simplex(2).lattice_count().unwrap(), BigInt::from(3));
    assert_eq!(hull(&[&[-1], &[1]]).lattice_count().unwrap(), BigInt::from(3));
    let big = Polytope::cube(3).scale(300);
    assert!(matches!(big.lattice_count(), Err(Error::BoxTooLarge { .. })));
    let loose = Limits {
        max_dim: 6,
        max_box: 1 << 30,
    };
    assert_eq!(
        big.lattice_count_with(&loose, Execution::Sequential).unwrap(),
        BigInt::from(601u64 * 601 * 601)
    );
    let seg = hull(&[&[0, 0], &[4, 2]]);
    assert_eq!(seg.lattice_count().unwrap(), BigInt::from(3));
    assert_eq!(seg.lattice_points().unwrap(), pts(&[&[0, 0], &[2, 1], &[4, 2]]));
}

#[test]
fn mixed_volume_examples() {
    let s = Polytope::standard_simplex(2);
    let c = Polytope::cube(2);
    assert_eq!(mixed_volume(&[&s, &s]).unwrap(), ratio(1, 2));
    assert_eq!(mixed_volume(&[&c, &s]).unwrap(), rat(2));
    let dz = Polytope::coordinate_simplex(3, &[0]);
    let x = Polytope::standard_simplex(3);
    assert_eq!(mixed_volume(&[&dz, &dz, &x]).unwrap(), rat(0));
    assert!(mixed_volume(&[&s]).is_err());
    assert!(mixed_volume(&[&s, &x]).is_err());
}

#[test]
fn quermassintegrals() {
    let c = Polytope::cube(2);
    assert_eq!(quermassintegral(&c, 0).unwrap(), c.volume());
    assert_eq!(quermassintegral(&c, 2).unwrap(), ratio(1, 2));
    assert_eq!(quermassintegral(&c, 1).unwrap(), rat(2));
    assert_eq!(
        quermassintegral(&Polytope::cube(3), 3).unwrap(),
        ratio(1, 6)
    );
    assert!(quermassintegral(&c, 3).is_err());
}

#[test]
fn pi_degrees() {
    assert_eq!(Polytope::cube(2).pi_degree(), BigInt::from(1));
    assert_eq!(hull(&[&[0, 1], &[2, 0]]).pi_degree(), BigInt::from(2));
    assert_eq!(Polytope::origin(3).pi_degree(), BigInt::from(0));
}

#[test]
fn truncation() {
    let s = Polytope::standard_simplex(2);
    assert_eq!(s.truncate_to_box(1).unwrap(), s);
    let c3 = Polytope::cube(2).scale(3);
    assert_eq!(c3.truncate_to_box(2).unwrap(), Polytope::cube(2).scale(2));
    let t = hull(&[&[0, 0], &[4, 0], &[0, 1]]).truncate_to_box(2).unwrap();
    assert!(!t.is_integral());
    let expected = vec![
        vec![rat(0), rat(0)],
        vec![rat(0), rat(1)],
        vec![rat(2), rat(0)],
        vec![rat(2), ratio(1, 2)],
    ];
    assert_eq!(t.vertices(), expected);
    assert!(hull(&[&[5, 5], &[6, 6]]).truncate_to_box(2).is_none());
    assert!(t.lattice_vertices().is_err());
}

#[test]
fn coideals() {
    assert!(Polytope::standard_simplex(3).scale(3).is_coideal().unwrap());
    assert!(!hull(&[&[1, 1], &[2, 1], &[1, 2]]).is_coideal().unwrap());
    let dz = Polytope::coordinate_simplex(3, &[0]).scale(2);
    let dx = Polytope::coordinate_simplex(3, &[1, 2]).scale(3);
    assert!(dx.minkowski_sum(&dz).unwrap().is_coideal().unwrap());
    assert_eq!(Polytope::cube(2).is_coideal(), Err(Error::NegativeVertex));
}

#[test]
fn json_round_trip() {
    let p = Polytope::from_json_str(r#"{"dim": 2, "vertices": [[0,0],[2,0],[0,2],[1,1]]}"#).unwrap();
    assert_eq!(p, Polytope::standard_simplex(2).scale(2));
    let s = serde_json::to_string(&p.to_json()).unwrap();
    assert_eq!(Polytope::from_json_str(&s).unwrap(), p);
    let r = Polytope::from_json_str(r#"{"dim": 1, "vertices": [["1/2"],[3]]}"#).unwrap();
    assert_eq!(r.volume(), ratio(5, 2));
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn points(dim: usize, max: usize, r: i64) -> impl Strategy<Value = Vec<ExponentVector>> {
        prop::collection::vec(
            prop::collection::vec(-r..=r, dim).prop_map(ExponentVector::new),
            1..=max,
        )
    }

    fn body(dim: usize) -> impl Strategy<Value = Polytope> {
        points(dim, 6, 2).prop_map(|p| Polytope::hull(&p).unwrap())
    }

    /// Brute-force lattice count over the bounding box using the V-rep only:
    /// a point is inside iff it is a rational convex combination, checked by
    /// the hull of points ∪ {p} keeping the same vertex set.
    fn brute_count(p: &Polytope) -> usize {
        let lat = p.lattice_vertices().unwrap();
        let n = p.dim();
        let lo: Vec<i64> = (0..n).map(|i| lat.iter().map(|v| v[i]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..n).map(|i| lat.iter().map(|v| v[i]).max().unwrap()).collect();
        let mut count = 0;
        let mut cur = lo.clone();
        loop {
            let mut with = lat.clone();
            with.push(ExponentVector::new(cur.clone()));
            if Polytope::hull(&with).unwrap().vertices() == p.vertices() {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return count;
                }
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i];
                i += 1;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn vertices_are_hull_of_input(p in points(3, 9, 3)) {
            let h = Polytope::hull(&p).unwrap();
            for q in &p {
                prop_assert!(h.contains_point(q));
            }
            let again = Polytope::from_rational_points(3, h.vertices().to_vec()).unwrap();
            prop_assert_eq!(&again, &h);
            let mut rev = p.clone();
            rev.reverse();
            prop_assert_eq!(Polytope::hull(&rev).unwrap(), h);
        }

        #[test]
        fn every_vertex_tight(p in points(3, 9, 3)) {
            let h = Polytope::hull(&p).unwrap();
            if h.is_full_dimensional() {
                for v in h.vertices() {
                    let tight = h.facets().iter().filter(|f| f.eval(v) == f.offset).count();
                    prop_assert!(tight >= 3);
                }
            }
        }

        #[test]
        fn lattice_count_matches_brute_force(p in points(2, 6, 3)) {
            let h = Polytope::hull(&p).unwrap();
            prop_assert_eq!(h.lattice_count().unwrap(), BigInt::from(brute_count(&h)));
        }

        #[test]
        fn volume_translation_invariant(p in points(3, 8, 2), t in prop::collection::vec(-3i64..4, 3)) {
            let h = Polytope::hull(&p).unwrap();
            let shift: Vec<Rational> = t.iter().map(|&x| rat(x)).collect();
            let moved = h.translate(&shift).unwrap();
            let direct: Vec<ExponentVector> = p.iter().map(|q| q.add(&ExponentVector::new(t.clone()))).collect();
            prop_assert_eq!(&moved, &Polytope::hull(&direct).unwrap());
            prop_assert_eq!(moved.volume(), h.volume());
        }

        #[test]
        fn scaling_multiplies_volume(p in points(3, 7, 2), k in 0u64..4) {
            let h = Polytope::hull(&p).unwrap();
            let scaled: Vec<ExponentVector> = p.iter().map(|q| q.scale(k as i64)).collect();
            prop_assert_eq!(h.scale(k), Polytope::hull(&scaled).unwrap());
        }

        #[test]
        fn mixed_volume_symmetric(a in body(3), b in body(3), c in body(3)) {
            let v = mixed_volume(&[&a, &b, &c]).unwrap();
            prop_assert_eq!(&v, &mixed_volume(&[&c, &a, &b]).unwrap());
            prop_assert_eq!(&v, &mixed_volume_with(&[&b, &a, &c], Execution::Sequential).unwrap());
        }

        #[test]
        fn mixed_volume_additive(a in body(2), a2 in body(2), b in body(2)) {
            let lhs = mixed_volume(&[&a.minkowski_sum(&a2).unwrap(), &b]).unwrap();
            let rhs = mixed_volume(&[&a, &b]).unwrap() + mixed_volume(&[&a2, &b]).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn diagonal_is_volume(a in body(3)) {
            prop_assert_eq!(mixed_volume(&[&a, &a, &a]).unwrap(), a.volume());
        }

        #[test]
        fn pi_degree_subadditive(a in body(3), b in body(3)) {
            let s = a.minkowski_sum(&b).unwrap();
            prop_assert!(s.pi_degree() <= a.pi_degree() + b.pi_degree());
        }

        #[test]
        fn simplex_lattice_count(n in 1usize..5, d in 0u64..8) {
            let count = Polytope::standard_simplex(n).scale(d).lattice_count().unwrap();
            prop_assert_eq!(count, crate::num::binomial(d + n as u64, n as u64));
        }

        #[test]
        fn box_intersection_contains_exactly(p in points(2, 6, 4), d in 1u64..4) {
            let h = Polytope::hull(&p).unwrap();
            let cube = Polytope::cube(2).scale(d);
            match h.truncate_to_box(d) {
                None => {
                    for q in h.lattice_points().unwrap() {
                        prop_assert!(!cube.contains_point(&q));
                    }
                }
                Some(t) => {
                    prop_assert!(h.contains_polytope(&t) && cube.contains_polytope(&t));
                    for q in h.lattice_points().unwrap() {
                        prop_assert_eq!(t.contains_point(&q), cube.contains_point(&q));
                    }
                }
            }
        }
    }
}
