//! Shared helpers for the integration suites: seeded rational sampling,
//! single-cell table mutation, and a brute-force vertex enumeration oracle
//! that stays independent of the double description implementation.

// each integration binary uses its own subset of these helpers
#![allow(dead_code)]

use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pealab::linalg;
use pealab::pea::{ElementId, FiniteTable};
use pealab::statespace::{AffFunction, ConvexPLFunction, LinearSystem, StatePolytope, StateVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Random rational with numerator and denominator bounded by 1000.
pub fn random_ratio(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.random_range(-1000i64..=1000);
    let den = rng.random_range(1i64..=1000);
    rat(num, den)
}

/// Random strictly positive rational with both parts bounded by 1000.
pub fn random_positive_ratio(rng: &mut ChaCha8Rng) -> BigRational {
    let num = rng.random_range(1i64..=1000);
    let den = rng.random_range(1i64..=1000);
    rat(num, den)
}

/// Random point of the relative interior: a convex combination of all
/// vertices with strictly positive weights.
pub fn random_interior_state(p: &StatePolytope, rng: &mut ChaCha8Rng) -> StateVector {
    assert!(!p.is_empty());
    let weights: Vec<BigRational> = (0..p.vertices.len())
        .map(|_| random_positive_ratio(rng))
        .collect();
    let total: BigRational = weights.iter().cloned().sum();
    let n = p.vertices[0].len();
    let mut acc = vec![BigRational::zero(); n];
    for (w, v) in weights.iter().zip(&p.vertices) {
        for (a, x) in acc.iter_mut().zip(v.values()) {
            *a += w / &total * x;
        }
    }
    StateVector::new(acc)
}

/// Removes or redirects one uniformly chosen defined cell.
pub fn mutate_table(table: &FiniteTable, rng: &mut ChaCha8Rng) -> FiniteTable {
    let cells: Vec<(ElementId, ElementId, ElementId)> = table.defined_sums().collect();
    let (a, b, c) = cells[rng.random_range(0..cells.len())];
    if rng.random_bool(0.5) {
        table.with_cell_removed(a, b)
    } else {
        let mut target = ElementId(rng.random_range(0..table.size()));
        if target == c {
            target = ElementId((target.0 + 1) % table.size());
        }
        table.with_cell_set(a, b, target)
    }
}

/// Random affine function of the state coordinates.
pub fn random_aff(num_vars: usize, rng: &mut ChaCha8Rng) -> AffFunction {
    AffFunction {
        coeffs: (0..num_vars).map(|_| random_ratio(rng)).collect(),
        constant: random_ratio(rng),
    }
}

/// Random convex piecewise-linear function with the given piece count.
pub fn random_convex_pl(num_vars: usize, pieces: usize, rng: &mut ChaCha8Rng) -> ConvexPLFunction {
    ConvexPLFunction {
        pieces: (0..pieces.max(1)).map(|_| random_aff(num_vars, rng)).collect(),
    }
}

/// Brute-force vertex oracle: a point of `{A x = b, 0 <= x <= 1}` is a
/// vertex iff some feasible tight set has full rank, so enumerate subsets
/// of box constraints completing the equality rank and solve each exactly.
/// Independent of the double description path.
pub fn brute_force_vertices(sys: &LinearSystem) -> Vec<StateVector> {
    let n = sys.num_vars;
    let eq_rows: Vec<Vec<BigRational>> = sys.equalities.iter().map(|(c, _)| c.clone()).collect();
    let eq_rank = linalg::rank(&eq_rows);
    let k = n - eq_rank;
    let mut found: Vec<StateVector> = Vec::new();

    let mut indices: Vec<usize> = Vec::new();
    enumerate_subsets(n, k, 0, &mut indices, &mut |subset: &[usize]| {
        // each chosen coordinate is pinned to 0 or 1
        for mask in 0u32..(1 << subset.len()) {
            let mut system = sys.equalities.clone();
            for (bit, &i) in subset.iter().enumerate() {
                let mut row = vec![BigRational::zero(); n];
                row[i] = BigRational::one();
                let rhs = if mask & (1 << bit) != 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                system.push((row, rhs));
            }
            if let linalg::Solution::Affine {
                particular,
                nullspace,
            } = linalg::solve(&system, n)
            {
                if nullspace.is_empty() && sys.satisfies(&particular) {
                    let sv = StateVector::new(particular);
                    if !found.contains(&sv) {
                        found.push(sv);
                    }
                }
            }
        }
    });
    found.sort();
    found
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    start: usize,
    acc: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if acc.len() == k {
        visit(acc);
        return;
    }
    for i in start..n {
        acc.push(i);
        enumerate_subsets(n, k, i + 1, acc, visit);
        acc.pop();
    }
}
