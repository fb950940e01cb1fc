//! The curated fixture corpus: chains, Boolean algebras, horizontal sums,
//! interval realizations and the group presentations behind them. Both the
//! test suites and the `corpus` CLI command build from here.

use crate::pea::{ElementId, FiniteTable, TableError};
use crate::pogroup::{
    gamma_interval, Cone, GroupElement, PoGroupPresentation, INTERVAL_CAP,
};

/// The chain `0 < 1 < ... < n`: the interval `[0, n]` of the integers with
/// `k + m` defined iff `k + m <= n`.
pub fn chain(n: usize) -> FiniteTable {
    assert!(n >= 1);
    let cells = (0..=n).flat_map(|a| {
        (0..=n.saturating_sub(a)).map(move |b| (a, b, a + b))
    });
    let mut t = FiniteTable::new(n + 1, 0, n, cells).expect("chain is well-formed");
    t.set_labels((0..=n).map(|k| k.to_string()).collect())
        .expect("label count");
    t.set_name(format!("chain{n}"));
    t
}

/// The Boolean algebra `2^k` on subset bitmasks: `a + b` defined iff the
/// masks are disjoint, with union as the sum.
pub fn boolean_algebra(k: u32) -> FiniteTable {
    assert!((1..=4).contains(&k));
    let n = 1usize << k;
    let mut cells = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a & b == 0 {
                cells.push((a, b, a | b));
            }
        }
    }
    let mut t = FiniteTable::new(n, 0, n - 1, cells).expect("boolean algebra is well-formed");
    let letters = ["x", "y", "z", "w"];
    let labels: Vec<String> = (0..n)
        .map(|mask| {
            if mask == 0 {
                "0".into()
            } else if mask == n - 1 {
                "1".into()
            } else {
                (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| letters[i as usize])
                    .collect::<Vec<_>>()
                    .join("")
            }
        })
        .collect();
    t.set_labels(labels).expect("label count");
    t.set_name(format!("bool{k}"));
    t
}

/// The orthomodular lattice MO2: two incomparable complement pairs glued at
/// `0` and `1`. Elements: `0, a, a', b, b', 1`.
pub fn mo2() -> FiniteTable {
    let mut cells = Vec::new();
    // a + a' = a' + a = 1, b + b' = b' + b = 1
    cells.push((1, 2, 5));
    cells.push((2, 1, 5));
    cells.push((3, 4, 5));
    cells.push((4, 3, 5));
    let mut t =
        FiniteTable::with_identity_sums(6, 0, 5, cells).expect("mo2 is well-formed");
    t.set_labels(
        ["0", "a", "a'", "b", "b'", "1"]
            .into_iter()
            .map(String::from)
            .collect(),
    )
    .expect("label count");
    t.set_name("mo2");
    t
}

/// Atom `i` of [`mo2`] for `i` in `0..4`: `a, a', b, b'`.
pub fn mo2_atom(i: usize) -> ElementId {
    assert!(i < 4);
    ElementId(1 + i)
}

/// Horizontal sum: the two carriers share `0` and `1` and nothing else;
/// sums stay inside their own summand.
pub fn horizontal_sum(left: &FiniteTable, right: &FiniteTable) -> Result<FiniteTable, TableError> {
    let ln = left.size();
    let rn = right.size();
    let size = 2 + (ln - 2) + (rn - 2);
    let one = size - 1;

    // id maps: 0 -> 0, 1 -> new top, middles consecutive
    let map_left = |x: ElementId| -> usize {
        if x == left.zero() {
            0
        } else if x == left.one() {
            one
        } else {
            let skipped = [left.zero().0, left.one().0]
                .iter()
                .filter(|&&z| z < x.0)
                .count();
            1 + x.0 - skipped
        }
    };
    let map_right = |x: ElementId| -> usize {
        if x == right.zero() {
            0
        } else if x == right.one() {
            one
        } else {
            let skipped = [right.zero().0, right.one().0]
                .iter()
                .filter(|&&z| z < x.0)
                .count();
            1 + (ln - 2) + x.0 - skipped
        }
    };

    let mut cells = Vec::new();
    for (a, b, c) in left.defined_sums() {
        cells.push((map_left(a), map_left(b), map_left(c)));
    }
    for (a, b, c) in right.defined_sums() {
        cells.push((map_right(a), map_right(b), map_right(c)));
    }
    let mut t = FiniteTable::with_identity_sums(size, 0, one, cells)?;

    let mut labels = vec![String::new(); size];
    labels[0] = "0".into();
    labels[one] = "1".into();
    for x in left.elements() {
        if x != left.zero() && x != left.one() {
            let mut lab = left.label(x).to_string();
            while labels.contains(&lab) {
                lab.push('*');
            }
            labels[map_left(x)] = lab;
        }
    }
    for x in right.elements() {
        if x != right.zero() && x != right.one() {
            let mut lab = right.label(x).to_string();
            while labels.contains(&lab) {
                lab.push('*');
            }
            labels[map_right(x)] = lab;
        }
    }
    t.set_labels(labels)?;
    t.set_name(format!(
        "hs({},{})",
        left.name().unwrap_or("left"),
        right.name().unwrap_or("right")
    ));
    Ok(t)
}

/// The interval `[0, (0,0,3)]` of `Z^3` ordered by the l1 cone
/// `z >= |x| + |y|`: a 12-element pseudo effect algebra that is not
/// lattice-ordered (the pair `(1,0,2)`, `(0,0,2)` has two incomparable
/// maximal lower bounds).
pub fn diamond_cone_interval() -> FiniteTable {
    let height = 3i64;
    let member = |x: i64, y: i64, z: i64| -> bool {
        let w = x.abs() + y.abs();
        w <= z && w <= height - z
    };
    let mut elements: Vec<Vec<i64>> = Vec::new();
    for x in -1..=1 {
        for y in -1..=1 {
            for z in 0..=height {
                if member(x, y, z) {
                    elements.push(vec![x, y, z]);
                }
            }
        }
    }
    elements.sort();
    let zero_pos = elements.iter().position(|e| e == &[0, 0, 0]).unwrap();
    elements.remove(zero_pos);
    elements.insert(0, vec![0, 0, 0]);
    let one = elements.iter().position(|e| e == &[0, 0, height]).unwrap();
    let index = |v: &[i64]| elements.iter().position(|e| e == v);
    let mut cells = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let s = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
            if member(s[0], s[1], s[2]) {
                cells.push((i, j, index(&s).unwrap()));
            }
        }
    }
    let mut t = FiniteTable::new(elements.len(), 0, one, cells).expect("interval is well-formed");
    t.set_labels(
        elements
            .iter()
            .map(|e| format!("({},{},{})", e[0], e[1], e[2]))
            .collect(),
    )
    .expect("label count");
    t.set_name("diamond-cone");
    t
}

/// `Gamma(Z^2 standard, (1,1))`: a Boolean square realized as a group
/// interval.
pub fn gamma_boolean_square() -> FiniteTable {
    let g = PoGroupPresentation::free_abelian(2, Cone::Standard);
    let ia = gamma_interval(&g, &GroupElement(vec![1, 1]), INTERVAL_CAP)
        .expect("interval is finite");
    let mut t = ia.finite().expect("finite realization").table.clone();
    t.set_name("gamma-z2-std-u11");
    t
}

/// `Gamma` of the polyhedral cone generated by `(1,0)` and `(1,1)` at the
/// strong unit `(2,1)`: a four-element diamond.
pub fn gamma_polyhedral_diamond() -> FiniteTable {
    let g = PoGroupPresentation::free_abelian(
        2,
        Cone::Polyhedral(vec![vec![1, 0], vec![1, 1]]),
    );
    let ia = gamma_interval(&g, &GroupElement(vec![2, 1]), INTERVAL_CAP)
        .expect("interval is finite");
    let mut t = ia.finite().expect("finite realization").table.clone();
    t.set_name("gamma-poly-diamond");
    t
}

/// The validating `.pea` corpus: chains, Booleans, MO-style horizontal
/// sums and interval realizations.
pub fn standard_tables() -> Vec<FiniteTable> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(chain(n));
    }
    for k in 1..=3 {
        out.push(boolean_algebra(k));
    }
    out.push(mo2());
    // MO3 = MO2 glued with one more complement pair
    let mut mo3 = horizontal_sum(&mo2(), &boolean_algebra(2)).expect("mo3");
    mo3.set_name("mo3");
    out.push(mo3);
    // horizontal sum of two 3-chains: both middles are forced to 1/2
    let mut hs = horizontal_sum(&chain(2), &chain(2)).expect("hs-chain2-chain2");
    hs.set_name("hs-chain2-chain2");
    out.push(hs);
    out.push(gamma_boolean_square());
    out.push(gamma_polyhedral_diamond());
    out.push(diamond_cone_interval());
    out
}

/// A named group presentation with a strong-unit candidate.
pub struct PresentationFixture {
    pub name: &'static str,
    pub presentation: PoGroupPresentation,
    pub unit: GroupElement,
}

/// The `.grp` corpus: Abelian intervals that realize tables above, plus the
/// lazy lexicographic and semidirect examples.
pub fn presentations() -> Vec<PresentationFixture> {
    vec![
        PresentationFixture {
            name: "z1-u3",
            presentation: PoGroupPresentation::free_abelian(1, Cone::Standard),
            unit: GroupElement(vec![3]),
        },
        PresentationFixture {
            name: "z2-std-u11",
            presentation: PoGroupPresentation::free_abelian(2, Cone::Standard),
            unit: GroupElement(vec![1, 1]),
        },
        PresentationFixture {
            name: "z2-lex-u01",
            presentation: PoGroupPresentation::free_abelian(2, Cone::Lex),
            unit: GroupElement(vec![0, 1]),
        },
        PresentationFixture {
            name: "poly-diamond",
            presentation: PoGroupPresentation::free_abelian(
                2,
                Cone::Polyhedral(vec![vec![1, 0], vec![1, 1]]),
            ),
            unit: GroupElement(vec![2, 1]),
        },
        PresentationFixture {
            name: "semidirect",
            presentation: PoGroupPresentation::semidirect([[1, 1], [0, 1]]),
            unit: GroupElement(vec![1, 0, 0]),
        },
        PresentationFixture {
            name: "lex-semidirect",
            presentation: PoGroupPresentation::lex_z(PoGroupPresentation::semidirect([
                [1, 1],
                [0, 1],
            ])),
            unit: GroupElement(vec![1, 0, 0, 0]),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_large_enough_and_validates() {
        let tables = standard_tables();
        assert!(tables.len() >= 12, "corpus has {} fixtures", tables.len());
        for t in &tables {
            let report = t.validate_axioms();
            assert!(report.passed, "{:?}: {:?}", t.name(), report.violations);
        }
    }

    #[test]
    fn horizontal_sum_of_chains() {
        let hs = horizontal_sum(&chain(2), &chain(2)).unwrap();
        assert_eq!(hs.size(), 4);
        assert!(hs.validate_axioms().passed);
        // both middles square to 1
        assert_eq!(hs.plus(ElementId(1), ElementId(1)), Some(hs.one()));
        assert_eq!(hs.plus(ElementId(2), ElementId(2)), Some(hs.one()));
        // cross sums are undefined
        assert_eq!(hs.plus(ElementId(1), ElementId(2)), None);
    }

    #[test]
    fn mo2_is_horizontal_sum_of_squares() {
        let glued = horizontal_sum(&boolean_algebra(2), &boolean_algebra(2)).unwrap();
        assert_eq!(glued.size(), 6);
        assert!(glued.validate_axioms().passed);
        // same shape as mo2: four atoms in two complement pairs
        assert!(glued.is_commutative());
    }

    #[test]
    fn presentations_validate() {
        for f in presentations() {
            f.presentation.validate(2).unwrap();
            f.presentation.check_strong_unit(&f.unit).unwrap();
        }
    }
}
