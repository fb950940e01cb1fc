//! Cross-module invariants over the whole corpus: order calculus laws,
//! extremality, uniqueness of simplex decompositions, hom-lattice laws and
//! positivity of state functionals.

mod common;

use num::rational::BigRational;
use num::{One, Signed, Zero};

use pealab::corpus;
use pealab::homlattice::{self, GroupHom};
use pealab::pogroup::{self, Cone, PoGroupPresentation};
use pealab::riesz;
use pealab::statespace::{self, SimplexClass, StateVector};

use common::{random_aff, random_interior_state, rat, rng};

#[test]
fn commutative_tables_are_symmetric() {
    for t in corpus::standard_tables() {
        if t.is_commutative() {
            assert!(t.is_symmetric().unwrap(), "{:?}", t.name());
        }
    }
}

#[test]
fn difference_round_trips_hold_exhaustively() {
    for t in corpus::standard_tables() {
        let ord = t.derive_order().unwrap();
        for a in t.elements() {
            for b in t.elements() {
                if ord.leq(a, b) {
                    let d = t.left_minus(a, b).unwrap();
                    let c = t.right_minus(a, b).unwrap();
                    assert_eq!(t.plus(d, a), Some(b));
                    assert_eq!(t.plus(a, c), Some(b));
                }
            }
            let (minus, tilde) = t.complements(a).unwrap();
            let (_, tilde_of_minus) = t.complements(minus).unwrap();
            let (minus_of_tilde, _) = t.complements(tilde).unwrap();
            assert_eq!(tilde_of_minus, a);
            assert_eq!(minus_of_tilde, a);
        }
    }
}

#[test]
fn gamma_tables_inherit_the_group_order() {
    for f in corpus::presentations() {
        let ia = pogroup::gamma_interval(&f.presentation, &f.unit, pogroup::INTERVAL_CAP).unwrap();
        let Some(fin) = ia.finite() else { continue };
        assert!(fin.table.validate_axioms().passed);
        let ord = fin.table.derive_order().unwrap();
        for (i, a) in fin.elements.iter().enumerate() {
            for (j, b) in fin.elements.iter().enumerate() {
                assert_eq!(
                    ord.leq(pealab::pea::ElementId(i), pealab::pea::ElementId(j)),
                    f.presentation.leq(a, b).unwrap(),
                    "{}: table order must match the cone order",
                    f.name
                );
            }
        }
    }
}

#[test]
fn vertices_are_extreme_and_satisfy_the_system() {
    for t in corpus::standard_tables() {
        let sys = statespace::build_hrep(&t);
        let p = statespace::enumerate_states(&sys).unwrap();
        for (i, v) in p.vertices.iter().enumerate() {
            assert!(sys.satisfies(v.values()), "{:?}", t.name());
            let others: Vec<StateVector> = p
                .vertices
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, x)| x.clone())
                .collect();
            assert!(
                statespace::convex_combination(v, &others).is_none(),
                "vertex {i} of {:?} is a combination of the others",
                t.name()
            );
        }
    }
}

#[test]
fn simplex_decompositions_are_unique_over_100_points() {
    let mut r = rng(100);
    for t in [corpus::boolean_algebra(2), corpus::boolean_algebra(3), corpus::chain(3)] {
        let sys = statespace::build_hrep(&t);
        let p = statespace::enumerate_states(&sys).unwrap();
        assert_eq!(statespace::classify(&p).class, SimplexClass::Simplex);
        for _ in 0..100 {
            let s = random_interior_state(&p, &mut r);
            let m = statespace::barycentric_decompose(&p, &s).unwrap();
            for start in 0..p.vertices.len() {
                let fan = statespace::representing_measure_from(&p, &sys, &s, start).unwrap();
                assert_eq!(fan, m);
            }
        }
    }
    // while MO2 has a point with two distinct decompositions
    let t = corpus::mo2();
    let sys = statespace::build_hrep(&t);
    let p = statespace::enumerate_states(&sys).unwrap();
    let center = StateVector::new(vec![
        rat(0, 1),
        rat(1, 2),
        rat(1, 2),
        rat(1, 2),
        rat(1, 2),
        rat(1, 1),
    ]);
    let rm = statespace::representing_measures(&p, &sys, &center).unwrap();
    assert!(rm.second.is_some());
}

#[test]
fn affine_expectations_agree_across_measures_of_one_state() {
    let mut r = rng(101);
    let t = corpus::mo2();
    let sys = statespace::build_hrep(&t);
    let p = statespace::enumerate_states(&sys).unwrap();
    let center = StateVector::new(vec![
        rat(0, 1),
        rat(1, 2),
        rat(1, 2),
        rat(1, 2),
        rat(1, 2),
        rat(1, 1),
    ]);
    let rm = statespace::representing_measures(&p, &sys, &center).unwrap();
    let second = rm.second.unwrap();
    for _ in 0..50 {
        let f = random_aff(t.size(), &mut r);
        assert_eq!(rm.measure.expect_aff(&f), second.expect_aff(&f));
        assert_eq!(rm.measure.expect_aff(&f), f.eval(&center));
    }
}

#[test]
fn state_functional_is_positive_on_vertex_nonnegative_functions() {
    let mut r = rng(102);
    let t = corpus::mo2();
    let sys = statespace::build_hrep(&t);
    let p = statespace::enumerate_states(&sys).unwrap();
    let s = random_interior_state(&p, &mut r);
    let functional = statespace::aff_state_correspondence(&t, &p, &sys, &s).unwrap();
    let mut accepted = 0;
    while accepted < 100 {
        let mut f = random_aff(t.size(), &mut r);
        // shift the function so that it is nonnegative on the vertices
        let min = p
            .vertices
            .iter()
            .map(|v| f.eval(v))
            .min()
            .unwrap();
        if min.is_negative() {
            f.constant = &f.constant - &min;
        }
        assert!(p.vertices.iter().all(|v| !f.eval(v).is_negative()));
        assert!(
            !functional.apply(&f).is_negative(),
            "functional must be positive on vertex-nonnegative functions"
        );
        accepted += 1;
    }
}

#[test]
fn sup_is_least_upper_bound_among_bounded_integer_homs() {
    let g2 = PoGroupPresentation::free_abelian(2, Cone::Standard);
    let f = GroupHom::on_zn(vec![rat(2, 1), rat(-1, 1)]);
    let h = GroupHom::on_zn(vec![rat(-1, 1), rat(1, 1)]);
    let window: Vec<Vec<i64>> = (0..=4)
        .flat_map(|x| (0..=4).map(move |y| vec![x, y]))
        .collect();
    let sup_values: Vec<BigRational> = window
        .iter()
        .map(|x| homlattice::sup_homs(&g2, &[f.clone(), h.clone()], x).unwrap())
        .collect();
    // dominates both arguments pointwise
    for (x, s) in window.iter().zip(&sup_values) {
        assert!(*s >= f.eval_coords(x));
        assert!(*s >= h.eval_coords(x));
    }
    // least among integer homs with |values| <= 5 dominating f and h
    for a in -5i64..=5 {
        for b in -5i64..=5 {
            let cand = GroupHom::on_zn(vec![rat(a, 1), rat(b, 1)]);
            let dominates = window
                .iter()
                .all(|x| cand.eval_coords(x) >= f.eval_coords(x) && cand.eval_coords(x) >= h.eval_coords(x));
            if dominates {
                for (x, s) in window.iter().zip(&sup_values) {
                    assert!(
                        cand.eval_coords(x) >= *s,
                        "candidate ({a},{b}) undercuts the sup at {x:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn squeezed_homs_decompose_constructively() {
    let mut r = rng(103);
    // 0 <= f <= g: both positive; the decomposition must return (f, 0)
    for _ in 0..20 {
        let rank = rand::Rng::random_range(&mut r, 1usize..=3);
        let g_vals: Vec<BigRational> = (0..rank)
            .map(|_| rat(rand::Rng::random_range(&mut r, 1i64..=5), 1))
            .collect();
        let f_vals: Vec<BigRational> = g_vals
            .iter()
            .map(|g| g * rat(rand::Rng::random_range(&mut r, 0i64..=3), 3))
            .collect();
        let f = GroupHom::on_zn(f_vals);
        let (pos, neg) = homlattice::jordan_decompose(&f).unwrap();
        assert_eq!(pos, f);
        assert!(neg.values.iter().all(|v| v.is_zero()));
    }
}

#[test]
fn window_verdicts_respect_the_cone_ladder() {
    // RDP on the standard plane window implies RDP0 and RIP there as well
    let g = PoGroupPresentation::free_abelian(2, Cone::Standard);
    let window = g.cone_window(3).unwrap();
    for level in [
        riesz::RieszLevel::Rip,
        riesz::RieszLevel::Rdp0,
        riesz::RieszLevel::Rdp,
        riesz::RieszLevel::Rdp1,
        riesz::RieszLevel::Rdp2,
    ] {
        let v = riesz::cone_rdp(&window, &g, level).unwrap();
        assert!(v.holds_on_window, "{level:?} fails on the standard plane window");
    }
}

#[test]
fn enumeration_is_deterministic() {
    for t in corpus::standard_tables() {
        let sys = statespace::build_hrep(&t);
        let p1 = statespace::enumerate_states(&sys).unwrap();
        let p2 = statespace::enumerate_states(&sys).unwrap();
        let v1: Vec<Vec<String>> = p1
            .vertices
            .iter()
            .map(|v| v.values().iter().map(pealab::ratio::format_ratio).collect())
            .collect();
        let v2: Vec<Vec<String>> = p2
            .vertices
            .iter()
            .map(|v| v.values().iter().map(pealab::ratio::format_ratio).collect())
            .collect();
        assert_eq!(v1, v2);
    }
}

#[test]
fn lazy_intervals_stay_consistent_with_windows() {
    // window membership agrees with the interval predicate on the window box
    let f = corpus::presentations()
        .into_iter()
        .find(|p| p.name == "semidirect")
        .unwrap();
    let ia = pogroup::gamma_interval(&f.presentation, &f.unit, pogroup::INTERVAL_CAP).unwrap();
    assert!(ia.finite().is_none());
    let w = pogroup::window_table(&f.presentation, &f.unit, 2).unwrap();
    for g in pogroup::coordinate_box(f.presentation.rank(), 2) {
        let in_window = w.elements.contains(&g);
        let member = ia.contains(&g).unwrap() == pogroup::Membership::In;
        assert_eq!(in_window, member);
    }
}

#[test]
fn fan_decomposition_works_on_the_cube() {
    // MO3's state space is a 3-cube: 8 vertices, affine dimension 3
    let mut r = rng(104);
    let t = corpus::standard_tables()
        .into_iter()
        .find(|t| t.name() == Some("mo3"))
        .unwrap();
    let sys = statespace::build_hrep(&t);
    let p = statespace::enumerate_states(&sys).unwrap();
    assert_eq!(p.vertices.len(), 8);
    assert_eq!(p.affine_dim, 3);
    assert_eq!(statespace::classify(&p).class, SimplexClass::NonSimplex);

    for _ in 0..20 {
        let s = random_interior_state(&p, &mut r);
        for start in 0..p.vertices.len() {
            let m = statespace::representing_measure_from(&p, &sys, &s, start).unwrap();
            assert!(m.total_weight().is_one());
            assert!(m.atoms.iter().all(|(_, w)| w.is_positive()));
            assert!(m.atoms.len() <= 4, "a fan cell of a 3-polytope is a tetrahedron");
            assert_eq!(m.barycenter(t.size()), s);
        }
        let rm = statespace::representing_measures(&p, &sys, &s).unwrap();
        assert_eq!(rm.measure.barycenter(t.size()), s);
    }

    // a point on a proper face: the midpoint of an edge decomposes on that
    // edge no matter which fan root is used
    let e0 = &p.vertices[0];
    let neighbor = p
        .vertices
        .iter()
        .skip(1)
        .find(|v| {
            v.values()
                .iter()
                .zip(e0.values())
                .filter(|(a, b)| a != b)
                .count()
                == 2
        })
        .unwrap();
    let mid: Vec<BigRational> = e0
        .values()
        .iter()
        .zip(neighbor.values())
        .map(|(a, b)| (a + b) / BigRational::from_integer(2.into()))
        .collect();
    let mid = StateVector::new(mid);
    for start in 0..p.vertices.len() {
        let m = statespace::representing_measure_from(&p, &sys, &mid, start).unwrap();
        assert_eq!(m.barycenter(t.size()), mid);
        assert!(m.atoms.len() <= 2);
    }
}

#[test]
fn one_interval_realizes_the_boolean_square() {
    // same state polytope as the subset-built Boolean algebra
    let direct = corpus::boolean_algebra(2);
    let via_gamma = corpus::gamma_boolean_square();
    let p1 = statespace::enumerate_states(&statespace::build_hrep(&direct)).unwrap();
    let p2 = statespace::enumerate_states(&statespace::build_hrep(&via_gamma)).unwrap();
    assert_eq!(p1.vertices.len(), p2.vertices.len());
    assert_eq!(p1.affine_dim, p2.affine_dim);
    // MO-style sums collapse to one point
    let hs = corpus::horizontal_sum(&corpus::chain(2), &corpus::chain(2)).unwrap();
    let p = statespace::enumerate_states(&statespace::build_hrep(&hs)).unwrap();
    assert_eq!(p.vertices.len(), 1);
    assert_eq!(p.vertices[0].value(pealab::pea::ElementId(1)), rat(1, 2));
}
