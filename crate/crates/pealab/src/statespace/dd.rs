//! Double description over exact rationals.
//!
//! Converts an inequality description `{ t : C t <= d }` of a bounded
//! polyhedron into its vertex set. The system is homogenized into the cone
//! `{ (t, w) : C t - d w <= 0, -w <= 0 }`; extreme rays with `w > 0`
//! dehomogenize to vertices. Rays are integer vectors normalized by their
//! gcd, constraints are inserted in a deterministic order (ascending nonzero
//! count, ties broken lexicographically), and adjacency uses the standard
//! combinatorial test, so runs are reproducible bit for bit.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::linalg;

#[derive(Debug, thiserror::Error)]
pub enum DdError {
    #[error("homogenized cone is not pointed; the input system is not a bounded polytope")]
    NotPointed,
    #[error("unbounded direction survived enumeration; the input system is not bounded")]
    Unbounded,
}

#[derive(Debug, Clone)]
struct Ray {
    coords: Vec<BigInt>,
    /// Indices of inserted constraints tight on this ray.
    tight: BTreeSet<usize>,
}

fn gcd_normalize(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g > BigInt::one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Scales a rational row to coprime integers (positive scaling only).
fn integerize(coeffs: &[BigRational], rhs: &BigRational) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in coeffs.iter().chain(std::iter::once(rhs)) {
        lcm = lcm.lcm(c.denom());
    }
    let mut out: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    // homogenized: c . t - d w <= 0
    out.push(-(rhs * BigRational::from_integer(lcm.clone())).to_integer());
    gcd_normalize(&mut out);
    out
}

fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Enumerates the vertices of `{ t in Q^dim : c_i . t <= d_i }`.
///
/// The system must be bounded (callers include box constraints); an
/// unbounded or non-pointed input is reported as an error rather than
/// silently truncated.
pub fn enumerate_polytope_vertices(
    ineqs: &[(Vec<BigRational>, BigRational)],
    dim: usize,
) -> Result<Vec<Vec<BigRational>>, DdError> {
    let hdim = dim + 1;
    // Integerize, append the w >= 0 row, dedupe, and sort deterministically.
    let mut rows: BTreeSet<Vec<BigInt>> = ineqs
        .iter()
        .map(|(c, d)| integerize(c, d))
        .collect();
    let mut w_row = vec![BigInt::zero(); hdim];
    w_row[dim] = -BigInt::one();
    rows.insert(w_row);
    let mut rows: Vec<Vec<BigInt>> = rows.into_iter().collect();
    rows.sort_by_key(|r| {
        (
            r.iter().filter(|x| !x.is_zero()).count(),
            r.clone(),
        )
    });

    // Greedy full-rank initial basis in insertion order.
    let mut basis_idx: Vec<usize> = Vec::new();
    let mut basis_rows: Vec<Vec<BigRational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if basis_idx.len() == hdim {
            break;
        }
        let cand: Vec<BigRational> = row
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        let mut trial = basis_rows.clone();
        trial.push(cand.clone());
        if linalg::rank(&trial) > basis_rows.len() {
            basis_rows.push(cand);
            basis_idx.push(i);
        }
    }
    if basis_idx.len() < hdim {
        return Err(DdError::NotPointed);
    }
    let inv = linalg::invert(&basis_rows).expect("basis rows are independent");

    // Extreme rays of { y : B y <= 0 } are the negated columns of B^-1.
    let mut rays: Vec<Ray> = Vec::with_capacity(hdim);
    for j in 0..hdim {
        let col: Vec<BigRational> = (0..hdim).map(|i| -inv[i][j].clone()).collect();
        let mut lcm = BigInt::one();
        for c in &col {
            lcm = lcm.lcm(c.denom());
        }
        let mut coords: Vec<BigInt> = col
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        gcd_normalize(&mut coords);
        let mut tight = BTreeSet::new();
        for &bi in &basis_idx {
            if dot_int(&rows[bi], &coords).is_zero() {
                tight.insert(bi);
            }
        }
        rays.push(Ray { coords, tight });
    }

    // Insert the remaining constraints one at a time.
    for (k, row) in rows.iter().enumerate() {
        if basis_idx.contains(&k) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot_int(row, &r.coords)).collect();
        if values.iter().all(|v| !v.is_positive()) {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.tight.insert(k);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        for (r, v) in rays.iter().zip(&values) {
            if !v.is_positive() {
                let mut nr = r.clone();
                if v.is_zero() {
                    nr.tight.insert(k);
                }
                if seen.insert(nr.coords.clone()) {
                    next.push(nr);
                }
            }
        }
        for (i, ri) in rays.iter().enumerate() {
            for (j, rj) in rays.iter().enumerate().skip(i + 1) {
                let (vi, vj) = (&values[i], &values[j]);
                let (neg, pos, vneg, vpos) = if vi.is_negative() && vj.is_positive() {
                    (ri, rj, vi, vj)
                } else if vj.is_negative() && vi.is_positive() {
                    (rj, ri, vj, vi)
                } else {
                    continue;
                };
                // Combinatorial adjacency: no third ray is tight on the
                // common tight set of the pair.
                let common: BTreeSet<usize> =
                    neg.tight.intersection(&pos.tight).copied().collect();
                let adjacent = rays.iter().enumerate().all(|(l, rl)| {
                    l == i || l == j || !common.is_subset(&rl.tight)
                });
                if !adjacent {
                    continue;
                }
                let mut coords: Vec<BigInt> = neg
                    .coords
                    .iter()
                    .zip(&pos.coords)
                    .map(|(n, p)| vpos * n - vneg * p)
                    .collect();
                gcd_normalize(&mut coords);
                let mut tight = common;
                tight.insert(k);
                if seen.insert(coords.clone()) {
                    next.push(Ray { coords, tight });
                }
            }
        }
        rays = next;
    }

    // Dehomogenize.
    let mut vertices = Vec::new();
    for r in rays {
        let w = r.coords[dim].clone();
        if w.is_zero() {
            if r.coords.iter().all(|x| x.is_zero()) {
                continue;
            }
            return Err(DdError::Unbounded);
        }
        debug_assert!(w.is_positive());
        let wq = BigRational::from_integer(w);
        let v: Vec<BigRational> = r.coords[..dim]
            .iter()
            .map(|x| BigRational::from_integer(x.clone()) / wq.clone())
            .collect();
        vertices.push(v);
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}
