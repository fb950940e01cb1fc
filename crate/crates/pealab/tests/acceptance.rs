//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Tolerances are exact rational equality throughout; nothing is deferred
//! to later calibration.

mod common;

use num::rational::BigRational;
use num::{One, Signed, Zero};

use pealab::corpus;
use pealab::homlattice::{self, GroupHom};
use pealab::pea::FiniteTable;
use pealab::pmv;
use pealab::pogroup::{self, Cone, GroupElement, PoGroupPresentation};
use pealab::report;
use pealab::riesz;
use pealab::statespace::{self, SimplexClass, StateVector};

use common::{
    brute_force_vertices, mutate_table, random_convex_pl, random_interior_state,
    random_positive_ratio, rat, rng,
};

fn pass(n: usize, title: &str) {
    println!("[acceptance] criterion {n:02} ({title}): PASS");
}

fn rdp2_tables() -> Vec<FiniteTable> {
    corpus::standard_tables()
        .into_iter()
        .filter(|t| riesz::ladder_report(t).unwrap().rdp2.holds)
        .collect()
}

fn states_of(t: &FiniteTable) -> (statespace::LinearSystem, statespace::StatePolytope) {
    let sys = statespace::build_hrep(t);
    let p = statespace::enumerate_states(&sys).unwrap();
    (sys, p)
}

fn mo2_center() -> StateVector {
    StateVector::new(vec![
        rat(0, 1),
        rat(1, 2),
        rat(1, 2),
        rat(1, 2),
        rat(1, 2),
        rat(1, 1),
    ])
}

#[test]
fn acceptance_01_axiom_soundness() {
    let tables = corpus::standard_tables();
    assert!(tables.len() >= 12, "corpus must have at least 12 fixtures");
    let mut r = rng(1);
    for t in &tables {
        assert!(
            t.validate_axioms().passed,
            "corpus fixture {:?} must validate",
            t.name()
        );
        for _ in 0..100 {
            let mutated = mutate_table(t, &mut r);
            let report = mutated.validate_axioms();
            if !report.passed {
                for v in &report.violations {
                    assert!(
                        v.witness.iter().all(|e| e.0 < mutated.size()),
                        "witness out of range on mutated {:?}",
                        t.name()
                    );
                }
            }
        }
    }
    pass(1, "axiom soundness under 100 seeded mutations per fixture");
}

#[test]
fn acceptance_02_riesz_ladder() {
    for t in corpus::standard_tables() {
        // ladder_report errors out on any implication-chain violation
        let ladder = riesz::ladder_report(&t).unwrap();
        let [rip, rdp0, rdp, rdp1, rdp2] = ladder.booleans();
        assert!(!rdp2 || rdp1, "{:?}", t.name());
        assert!(!rdp1 || rdp, "{:?}", t.name());
        assert!(!rdp || rdp0, "{:?}", t.name());
        assert!(!rdp0 || rip, "{:?}", t.name());
        if t.is_commutative() {
            assert_eq!(rdp0, rdp1, "commutative collapse fails on {:?}", t.name());
        }
        if rdp2 {
            let ord = t.derive_order().unwrap();
            for a in t.elements() {
                for b in t.elements() {
                    assert!(
                        t.partial_meet(&ord, a, b).is_some(),
                        "missing meet in rdp2 table {:?}",
                        t.name()
                    );
                }
            }
        }
    }
    pass(2, "Riesz implication ladder, commutative collapse, rdp2 meets");
}

#[test]
fn acceptance_03_simplex_classification() {
    for t in corpus::standard_tables() {
        let ladder = riesz::ladder_report(&t).unwrap();
        let (_, p) = states_of(&t);
        let cls = statespace::classify(&p);
        if ladder.rdp1.holds && !p.is_empty() {
            assert_eq!(
                cls.class,
                SimplexClass::Simplex,
                "rdp1 table {:?} must have a simplex state space",
                t.name()
            );
            assert_eq!(p.vertices.len() as i64, p.affine_dim + 1);
        }
    }
    let (_, p) = states_of(&corpus::mo2());
    let cls = statespace::classify(&p);
    assert_eq!(cls.class, SimplexClass::NonSimplex);
    assert_eq!(p.vertices.len(), 4);
    assert_eq!(p.affine_dim, 2);
    pass(3, "rdp1 state spaces are simplices; MO2 is a 4-vertex square");
}

#[test]
fn acceptance_04_barycentric_representation() {
    let mut r = rng(4);
    for t in rdp2_tables() {
        let (sys, p) = states_of(&t);
        assert!(!p.is_empty(), "rdp2 corpus table {:?} has states", t.name());
        for _ in 0..25 {
            let s = random_interior_state(&p, &mut r);
            let m = statespace::barycentric_decompose(&p, &s).unwrap();
            // exact reconstruction at every element
            for a in t.elements() {
                let integral: BigRational =
                    m.atoms.iter().map(|(v, w)| w * v.value(a)).sum();
                assert_eq!(integral, s.value(a), "reconstruction on {:?}", t.name());
            }
            // uniqueness: every fan triangulation reproduces the same measure
            for start in 0..p.vertices.len() {
                let fan = statespace::representing_measure_from(&p, &sys, &s, start).unwrap();
                assert_eq!(fan, m, "fan from vertex {start} differs on {:?}", t.name());
            }
        }
    }
    // MO2 center admits two distinct vertex-supported measures
    let t = corpus::mo2();
    let (sys, p) = states_of(&t);
    let center = mo2_center();
    let rm = statespace::representing_measures(&p, &sys, &center).unwrap();
    let second = rm.second.expect("MO2 center has a second decomposition");
    assert_ne!(rm.measure, second);
    for m in [&rm.measure, &second] {
        assert_eq!(m.barycenter(t.size()), center);
    }
    pass(4, "exact unique barycentric measures on rdp2 tables; MO2 center splits twice");
}

#[test]
fn acceptance_05_extremal_min_rule() {
    let mut r = rng(5);
    for t in rdp2_tables() {
        let ord = t.derive_order().unwrap();
        let (sys, p) = states_of(&t);
        for v in &p.vertices {
            assert!(
                statespace::extremal_min_rule(&t, &ord, v).unwrap(),
                "vertex of {:?} must satisfy the min rule",
                t.name()
            );
        }
        if p.affine_dim >= 1 {
            for _ in 0..25 {
                let s = random_interior_state(&p, &mut r);
                assert!(sys.satisfies(s.values()));
                assert!(
                    p.vertex_index(&s).is_none(),
                    "interior state of a positive-dimensional polytope is not a vertex"
                );
                assert!(
                    !statespace::extremal_min_rule(&t, &ord, &s).unwrap(),
                    "non-vertex state of {:?} must fail the min rule",
                    t.name()
                );
            }
        }
    }
    pass(5, "min rule holds exactly at vertices and fails at non-vertices");
}

#[test]
fn acceptance_06_jensen_certificates() {
    let mut r = rng(6);
    let mut measures: Vec<(usize, statespace::DiscreteMeasure, StateVector)> = Vec::new();
    for t in rdp2_tables() {
        let (sys, p) = states_of(&t);
        for _ in 0..5 {
            let s = random_interior_state(&p, &mut r);
            let m = statespace::representing_measures(&p, &sys, &s).unwrap().measure;
            measures.push((t.size(), m, s));
        }
    }
    let t = corpus::mo2();
    let (sys, p) = states_of(&t);
    let center = mo2_center();
    let rm = statespace::representing_measures(&p, &sys, &center).unwrap();
    measures.push((t.size(), rm.measure.clone(), center.clone()));
    measures.push((t.size(), rm.second.unwrap(), center));

    for (num_vars, m, s) in &measures {
        for i in 0..100 {
            let pieces = 1 + (i % 3);
            let f = random_convex_pl(*num_vars, pieces, &mut r);
            assert!(
                statespace::jensen_check(m, s, &f).unwrap(),
                "jensen fails on a convex PL function"
            );
            if f.is_affine() {
                assert_eq!(
                    m.expect_pl(&f),
                    f.eval(s),
                    "affine functions must integrate exactly to the barycenter"
                );
            }
        }
    }
    pass(6, "representing measures dominate their barycenter on convex functions");
}

#[test]
fn acceptance_07_state_extension_round_trip() {
    let mut r = rng(7);
    let mut intervals = Vec::new();
    for n in 1..=5 {
        let z = PoGroupPresentation::free_abelian(1, Cone::Standard);
        intervals.push(pogroup::gamma_interval(&z, &GroupElement(vec![n]), pogroup::INTERVAL_CAP).unwrap());
    }
    let z2 = PoGroupPresentation::free_abelian(2, Cone::Standard);
    intervals.push(
        pogroup::gamma_interval(&z2, &GroupElement(vec![1, 1]), pogroup::INTERVAL_CAP).unwrap(),
    );

    for ia in &intervals {
        let fin = ia.finite().unwrap();
        let (_, p) = states_of(&fin.table);
        let mut sampled = Vec::new();
        for _ in 0..10 {
            let s = random_interior_state(&p, &mut r);
            let gs = pogroup::extend_state(ia, &s).unwrap();
            let back = pogroup::restrict_state(&gs, ia).unwrap();
            assert_eq!(back, s, "round trip on {:?}", fin.table.name());
            sampled.push((s, gs));
        }
        // the bijection preserves convex combinations exactly
        for pair in sampled.windows(2) {
            let (s1, g1) = &pair[0];
            let (s2, g2) = &pair[1];
            let lambda = random_positive_ratio(&mut r);
            let total = &lambda + BigRational::one();
            let lam = lambda / &total; // in (0, 1)
            let mix_vals: Vec<BigRational> = s1
                .values()
                .iter()
                .zip(s2.values())
                .map(|(a, b)| &lam * a + (BigRational::one() - &lam) * b)
                .collect();
            let mix = StateVector::new(mix_vals);
            let gm = pogroup::extend_state(ia, &mix).unwrap();
            let expected: Vec<BigRational> = g1
                .generator_values
                .iter()
                .zip(&g2.generator_values)
                .map(|(a, b)| &lam * a + (BigRational::one() - &lam) * b)
                .collect();
            assert_eq!(gm.generator_values, expected);
        }
    }
    pass(7, "state extension and restriction are mutually inverse and affine");
}

#[test]
fn acceptance_08_hom_lattice_oracle() {
    let mut r = rng(8);
    for rank in 1..=3usize {
        let g = PoGroupPresentation::free_abelian(rank, Cone::Standard);
        for family_size in 1..=3usize {
            let fs: Vec<GroupHom> = (0..family_size)
                .map(|_| {
                    GroupHom::on_zn(
                        (0..rank)
                            .map(|_| rat(rand::Rng::random_range(&mut r, -5i64..=5), 1))
                            .collect(),
                    )
                })
                .collect();
            let report = homlattice::verify_lattice_oracle(&g, &fs, 4).unwrap();
            assert!(
                report.agree,
                "sup/inf disagree with the coordinatewise oracle: {:?}",
                report.mismatches
            );
        }
    }
    for _ in 0..20 {
        let rank = rand::Rng::random_range(&mut r, 1usize..=3);
        let f = GroupHom::on_zn(
            (0..rank)
                .map(|_| rat(rand::Rng::random_range(&mut r, -5i64..=5), 1))
                .collect(),
        );
        let (g, h) = homlattice::jordan_decompose(&f).unwrap();
        for i in 0..rank {
            let expect_pos = f.values[i].clone().max(BigRational::zero());
            assert_eq!(g.values[i], expect_pos);
            assert_eq!(h.values[i], &g.values[i] - &f.values[i]);
            assert!(!g.values[i].is_negative() && !h.values[i].is_negative());
        }
    }
    pass(8, "decomposition sup/inf match the coordinatewise hom lattice");
}

#[test]
fn acceptance_09_pmv_equivalence() {
    for t in rdp2_tables() {
        let m = pmv::pea_to_pmv(&t).unwrap();
        assert!(pmv::validate_pmv(&m).passed, "{:?}", t.name());
        let back = pmv::pmv_to_pea(&m).unwrap();
        assert!(
            back.same_algebra(&t),
            "round trip is not the identity on {:?}",
            t.name()
        );
        let (_, p1) = states_of(&t);
        let (_, p2) = states_of(&back);
        assert_eq!(
            p1.vertices, p2.vertices,
            "state polytopes differ between the table and its pseudo MV form"
        );
    }
    pass(9, "rdp2 tables convert to pseudo MV-algebras and back identically");
}

#[test]
fn acceptance_10_chain_uniqueness() {
    for n in 1..=5usize {
        let t = corpus::chain(n);
        let (_, p) = states_of(&t);
        assert_eq!(p.vertices.len(), 1, "chain({n}) has exactly one state");
        let s = &p.vertices[0];
        for k in 0..=n {
            assert_eq!(
                s.value(pealab::pea::ElementId(k)),
                rat(k as i64, n as i64),
                "chain({n}) state must send {k} to {k}/{n}"
            );
        }
    }
    pass(10, "each chain admits exactly the normalized counting state");
}

#[test]
fn acceptance_11_noncommutative_window() {
    let fixture = corpus::presentations()
        .into_iter()
        .find(|f| f.name == "lex-semidirect")
        .unwrap();
    fixture.presentation.validate(2).unwrap();
    fixture.presentation.check_strong_unit(&fixture.unit).unwrap();
    let ia = pogroup::gamma_interval(&fixture.presentation, &fixture.unit, pogroup::INTERVAL_CAP)
        .unwrap();
    let notice = match &ia.realization {
        pogroup::Realization::Lazy { notice } => notice.clone(),
        pogroup::Realization::Finite(_) => panic!("interval must be lazy"),
    };
    let w = pogroup::window_table(&fixture.presentation, &fixture.unit, 2).unwrap();
    let (symmetric, sym_witness) = w.symmetric().unwrap();
    assert!(symmetric, "window must be symmetric: {sym_witness:?}");
    let (commutative, witness) = w.commutative().unwrap();
    assert!(!commutative);
    let witness = witness.expect("a concrete witness pair");
    let g = &fixture.presentation;
    let ab = g.add(&witness.a, &witness.b).unwrap();
    let ba = g.add(&witness.b, &witness.a).unwrap();
    assert!(witness.a_plus_b.is_some() != witness.b_plus_a.is_some() || ab != ba);

    // the report fragment records the witness pair
    let json = report::window_json(&w, &notice, symmetric, commutative, Some(&witness));
    let rendered = report::to_canonical_json(&json);
    assert!(rendered.contains("noncommutative_witness"));
    assert!(rendered.contains(&witness.a.to_string()));
    assert!(rendered.contains(&witness.b.to_string()));
    pass(11, "lex/semidirect window is symmetric, non-commutative, witnessed");
}

#[test]
fn acceptance_vertex_enumeration_matches_oracle() {
    // dual-route check backing criteria 3, 4 and 10: the double description
    // vertices equal the brute-force tight-set enumeration on every corpus
    // table.
    for t in corpus::standard_tables() {
        let (sys, p) = states_of(&t);
        let oracle = brute_force_vertices(&sys);
        assert_eq!(
            p.vertices, oracle,
            "DD and brute-force vertices differ on {:?}",
            t.name()
        );
    }
    pass(0, "double description agrees with the brute-force vertex oracle");
}
