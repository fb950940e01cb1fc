//! The lattice of relatively bounded homomorphisms into the reals.
//!
//! Over `Z^n` with the standard cone every homomorphism is relatively
//! bounded, and the lattice operations have an enumerable form: the value
//! of `f_1 \/ ... \/ f_n` at a cone point `x` is the largest value of
//! `f_1(x_1) + ... + f_n(x_n)` over decompositions `x = x_1 + ... + x_n`
//! into cone parts (zero parts allowed), and dually for the meet. The
//! positive part of a single homomorphism arises the same way from the
//! subadditive majorant `d(x) = f(x) \/ 0`, which on the standard cone
//! reproduces the coordinatewise positive part.
//!
//! Lexicographic and polyhedral cones admit infinitely many decompositions
//! of a single point (for example `(0,1) = (a,0) + (-a,1)` for every
//! `a >= 0` in the lex plane), so the sup/inf computation rejects them with
//! a dedicated error instead of truncating silently.

use num::rational::BigRational;
use num::{Signed, Zero};
use thiserror::Error;

use crate::pogroup::{Cone, GroupElement, GroupError, PoGroupPresentation};

/// Cap on the coordinate sum of points fed to decomposition enumeration.
pub const DECOMPOSITION_CAP: i64 = 12;

#[derive(Debug, Error)]
pub enum HomError {
    #[error("rank mismatch between homomorphism and point")]
    RankMismatch,
    #[error(
        "non-enumerable cone ({0}): sup/inf require the standard cone, where \
         decompositions of a point are finite"
    )]
    NonEnumerableCone(String),
    #[error("point {0:?} is not in the standard cone")]
    NotInCone(Vec<i64>),
    #[error("coordinate sum {sum} exceeds the decomposition cap {cap}")]
    CapExceeded { sum: i64, cap: i64 },
    #[error("generator values are not invariant under conjugation: {0}")]
    NotWellDefined(String),
    #[error("group error: {0}")]
    Group(#[from] GroupError),
    #[error("sup/inf of an empty family is undefined")]
    EmptyFamily,
}

/// A group homomorphism `G -> R` given by its generator values. For
/// non-Abelian presentations the values must be invariant under
/// conjugation, which is checked at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupHom {
    pub values: Vec<BigRational>,
}

impl GroupHom {
    pub fn new(
        presentation: &PoGroupPresentation,
        values: Vec<BigRational>,
    ) -> Result<Self, HomError> {
        if values.len() != presentation.rank() {
            return Err(HomError::RankMismatch);
        }
        let hom = GroupHom { values };
        if !presentation.is_abelian() {
            let gens = presentation.generators();
            let mut signed = gens.clone();
            for g in &gens {
                signed.push(presentation.neg(g)?);
            }
            for g in &gens {
                for by in &signed {
                    let conj = presentation.conjugate(g, by)?;
                    if hom.eval(&conj) != hom.eval(g) {
                        return Err(HomError::NotWellDefined(format!(
                            "f({conj}) != f({g}) under conjugation by {by}"
                        )));
                    }
                }
            }
        }
        Ok(hom)
    }

    /// Plain construction for `Z^n`; no relations to check.
    pub fn on_zn(values: Vec<BigRational>) -> Self {
        GroupHom { values }
    }

    pub fn eval(&self, x: &GroupElement) -> BigRational {
        self.eval_coords(&x.0)
    }

    pub fn eval_coords(&self, coords: &[i64]) -> BigRational {
        debug_assert_eq!(coords.len(), self.values.len());
        let mut acc = BigRational::zero();
        for (v, &c) in self.values.iter().zip(coords) {
            acc += v * BigRational::from_integer(c.into());
        }
        acc
    }
}

/// Positivity verdict; only the standard cone admits an exact answer.
#[derive(Debug, Clone, PartialEq)]
pub enum Positivity {
    Positive,
    /// Nonnegative on every cone element of the checked window; explicitly
    /// not a proof for the whole cone.
    WindowPositive { radius: i64 },
    NotPositive { witness: GroupElement },
}

/// Decides positivity of `f` on the cone of `presentation`. Exact for the
/// standard cone (generator values nonnegative); window-relative otherwise.
pub fn is_positive(
    f: &GroupHom,
    presentation: &PoGroupPresentation,
    radius: i64,
) -> Result<Positivity, HomError> {
    if f.values.len() != presentation.rank() {
        return Err(HomError::RankMismatch);
    }
    if let PoGroupPresentation::FreeAbelian {
        cone: Cone::Standard,
        ..
    } = presentation
    {
        return Ok(match f.values.iter().position(|v| v.is_negative()) {
            None => Positivity::Positive,
            Some(i) => {
                let mut coords = vec![0; f.values.len()];
                coords[i] = 1;
                Positivity::NotPositive {
                    witness: GroupElement(coords),
                }
            }
        });
    }
    for g in presentation.cone_window(radius)? {
        if f.eval(&g).is_negative() {
            return Ok(Positivity::NotPositive { witness: g });
        }
    }
    Ok(Positivity::WindowPositive { radius })
}

fn check_standard_point(x: &[i64]) -> Result<(), HomError> {
    if x.iter().any(|&c| c < 0) {
        return Err(HomError::NotInCone(x.to_vec()));
    }
    let sum: i64 = x.iter().sum();
    if sum > DECOMPOSITION_CAP {
        return Err(HomError::CapExceeded {
            sum,
            cap: DECOMPOSITION_CAP,
        });
    }
    Ok(())
}

/// All decompositions of a standard-cone point into multisets of nonzero
/// cone vectors, each multiset listed once in non-increasing order.
pub fn enumerate_decompositions(x: &[i64]) -> Result<Vec<Vec<Vec<i64>>>, HomError> {
    check_standard_point(x)?;
    fn parts_below(bound: &[i64]) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &b in bound {
            let mut next = Vec::new();
            for p in &out {
                for k in 0..=b {
                    let mut v = p.clone();
                    v.push(k);
                    next.push(v);
                }
            }
            out = next;
        }
        out.retain(|v| v.iter().any(|&c| c > 0));
        out.sort();
        out.reverse();
        out
    }
    fn rec(
        remaining: &[i64],
        max_part: Option<&Vec<i64>>,
        acc: &mut Vec<Vec<i64>>,
        out: &mut Vec<Vec<Vec<i64>>>,
    ) {
        if remaining.iter().all(|&c| c == 0) {
            out.push(acc.clone());
            return;
        }
        for p in parts_below(remaining) {
            if let Some(m) = max_part {
                if p > *m {
                    continue;
                }
            }
            let rest: Vec<i64> = remaining.iter().zip(&p).map(|(r, q)| r - q).collect();
            acc.push(p.clone());
            rec(&rest, Some(&p), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    if x.iter().all(|&c| c == 0) {
        return Ok(vec![Vec::new()]);
    }
    rec(x, None, &mut acc, &mut out);
    Ok(out)
}

/// The extension value `\/ { d(x_1) + ... + d(x_n) }` of the subadditive
/// majorant `d(v) = f(v) \/ 0` over all decompositions of `x`.
pub fn positive_part_value(f: &GroupHom, x: &[i64]) -> Result<BigRational, HomError> {
    if x.len() != f.values.len() {
        return Err(HomError::RankMismatch);
    }
    let decomps = enumerate_decompositions(x)?;
    let mut best = BigRational::zero();
    for d in decomps {
        let mut total = BigRational::zero();
        for part in d {
            let v = f.eval_coords(&part);
            if v.is_positive() {
                total += v;
            }
        }
        if total > best {
            best = total;
        }
    }
    Ok(best)
}

/// Jordan-style decomposition `f = g - h` on `Z^n` with the standard cone:
/// `g` is built from the decomposition suprema of `d(x) = f(x) \/ 0` at the
/// generators, and `h = g - f`. Both parts are positive; on this group
/// family they are the coordinatewise positive and negative parts.
pub fn jordan_decompose(f: &GroupHom) -> Result<(GroupHom, GroupHom), HomError> {
    let rank = f.values.len();
    let mut g_values = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut e = vec![0i64; rank];
        e[i] = 1;
        g_values.push(positive_part_value(f, &e)?);
    }
    let h_values: Vec<BigRational> = g_values
        .iter()
        .zip(&f.values)
        .map(|(g, fv)| g - fv)
        .collect();
    Ok((GroupHom::on_zn(g_values), GroupHom::on_zn(h_values)))
}

fn require_standard(presentation: &PoGroupPresentation) -> Result<usize, HomError> {
    match presentation {
        PoGroupPresentation::FreeAbelian {
            cone: Cone::Standard,
            rank,
        } => Ok(*rank),
        other => Err(HomError::NonEnumerableCone(other.describe())),
    }
}

/// Ordered decompositions of `x` into exactly `n` cone parts, zeros
/// allowed, visited through a callback.
fn for_each_ordered_split<Fcb: FnMut(&[Vec<i64>])>(
    x: &[i64],
    n: usize,
    cb: &mut Fcb,
) {
    fn rec<Fcb: FnMut(&[Vec<i64>])>(
        remaining: &[i64],
        slots: usize,
        acc: &mut Vec<Vec<i64>>,
        cb: &mut Fcb,
    ) {
        if slots == 1 {
            acc.push(remaining.to_vec());
            cb(acc);
            acc.pop();
            return;
        }
        // enumerate all v with 0 <= v <= remaining
        let mut v = vec![0i64; remaining.len()];
        loop {
            let rest: Vec<i64> = remaining.iter().zip(&v).map(|(r, q)| r - q).collect();
            acc.push(v.clone());
            rec(&rest, slots - 1, acc, cb);
            acc.pop();
            // odometer increment bounded by `remaining`
            let mut i = remaining.len();
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if v[i] < remaining[i] {
                    v[i] += 1;
                    for vj in v.iter_mut().skip(i + 1) {
                        *vj = 0;
                    }
                    break;
                }
            }
        }
    }
    let mut acc = Vec::new();
    rec(x, n, &mut acc, cb);
}

fn sup_inf_homs(
    presentation: &PoGroupPresentation,
    fs: &[GroupHom],
    x: &[i64],
    sup: bool,
) -> Result<BigRational, HomError> {
    let rank = require_standard(presentation)?;
    if fs.is_empty() {
        return Err(HomError::EmptyFamily);
    }
    if x.len() != rank || fs.iter().any(|f| f.values.len() != rank) {
        return Err(HomError::RankMismatch);
    }
    check_standard_point(x)?;
    let mut best: Option<BigRational> = None;
    for_each_ordered_split(x, fs.len(), &mut |parts: &[Vec<i64>]| {
        let mut total = BigRational::zero();
        for (f, p) in fs.iter().zip(parts) {
            total += f.eval_coords(p);
        }
        best = Some(match best.take() {
            None => total,
            Some(b) => {
                if sup {
                    b.max(total)
                } else {
                    b.min(total)
                }
            }
        });
    });
    best.ok_or(HomError::EmptyFamily)
}

/// `(f_1 \/ ... \/ f_n)(x)`: the maximum of `sum f_i(x_i)` over ordered
/// decompositions of `x` into `n` cone parts.
pub fn sup_homs(
    presentation: &PoGroupPresentation,
    fs: &[GroupHom],
    x: &[i64],
) -> Result<BigRational, HomError> {
    sup_inf_homs(presentation, fs, x, true)
}

/// Dual of [`sup_homs`] under negation.
pub fn inf_homs(
    presentation: &PoGroupPresentation,
    fs: &[GroupHom],
    x: &[i64],
) -> Result<BigRational, HomError> {
    sup_inf_homs(presentation, fs, x, false)
}

/// One disagreement between the decomposition formula and the
/// coordinatewise oracle.
#[derive(Debug, Clone)]
pub struct OracleMismatch {
    pub point: Vec<i64>,
    pub op: &'static str,
    pub enumerated: BigRational,
    pub coordinatewise: BigRational,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub agree: bool,
    pub checked_points: usize,
    pub mismatches: Vec<OracleMismatch>,
}

/// Independent oracle for the sup/inf formulas on `Z^n` with the standard
/// cone: there the hom lattice is coordinatewise, so the sup (inf) of a
/// family is the homomorphism whose generator values are the coordinatewise
/// maxima (minima). Compares the enumerated values against that
/// homomorphism at every cone point of the window.
pub fn verify_lattice_oracle(
    presentation: &PoGroupPresentation,
    fs: &[GroupHom],
    window: i64,
) -> Result<OracleReport, HomError> {
    let rank = require_standard(presentation)?;
    if fs.is_empty() {
        return Err(HomError::EmptyFamily);
    }
    let sup_hom: Vec<BigRational> = (0..rank)
        .map(|i| fs.iter().map(|f| f.values[i].clone()).max().unwrap())
        .collect();
    let inf_hom: Vec<BigRational> = (0..rank)
        .map(|i| fs.iter().map(|f| f.values[i].clone()).min().unwrap())
        .collect();
    let sup_hom = GroupHom::on_zn(sup_hom);
    let inf_hom = GroupHom::on_zn(inf_hom);

    let mut mismatches = Vec::new();
    let mut checked = 0usize;
    let mut point = vec![0i64; rank];
    loop {
        checked += 1;
        let sum: i64 = point.iter().sum();
        if sum <= DECOMPOSITION_CAP {
            let s = sup_homs(presentation, fs, &point)?;
            let want_s = sup_hom.eval_coords(&point);
            if s != want_s {
                mismatches.push(OracleMismatch {
                    point: point.clone(),
                    op: "sup",
                    enumerated: s,
                    coordinatewise: want_s,
                });
            }
            let i = inf_homs(presentation, fs, &point)?;
            let want_i = inf_hom.eval_coords(&point);
            if i != want_i {
                mismatches.push(OracleMismatch {
                    point: point.clone(),
                    op: "inf",
                    enumerated: i,
                    coordinatewise: want_i,
                });
            }
        }
        let mut i = rank;
        let mut done = true;
        while i > 0 {
            i -= 1;
            if point[i] < window {
                point[i] += 1;
                for pj in point.iter_mut().skip(i + 1) {
                    *pj = 0;
                }
                done = false;
                break;
            }
        }
        if done {
            break;
        }
    }
    Ok(OracleReport {
        agree: mismatches.is_empty(),
        checked_points: checked,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn zn(n: usize) -> PoGroupPresentation {
        PoGroupPresentation::free_abelian(n, Cone::Standard)
    }

    #[test]
    fn positivity_on_standard_cone() {
        let f = GroupHom::on_zn(vec![rat(1, 1), rat(0, 1)]);
        assert_eq!(is_positive(&f, &zn(2), 3).unwrap(), Positivity::Positive);
        let g = GroupHom::on_zn(vec![rat(2, 1), rat(-1, 1)]);
        assert!(matches!(
            is_positive(&g, &zn(2), 3).unwrap(),
            Positivity::NotPositive { .. }
        ));
    }

    #[test]
    fn positivity_on_lex_cone_is_window_relative() {
        let lex = PoGroupPresentation::free_abelian(2, Cone::Lex);
        let f = GroupHom::on_zn(vec![rat(0, 1), rat(1, 1)]);
        assert_eq!(
            is_positive(&f, &lex, 5).unwrap(),
            Positivity::WindowPositive { radius: 5 }
        );
        // the first-coordinate projection goes negative at (-1, 1)
        let g = GroupHom::on_zn(vec![rat(1, 1), rat(0, 1)]);
        match is_positive(&g, &lex, 5).unwrap() {
            Positivity::NotPositive { witness } => {
                assert!(g.eval(&witness).is_negative());
            }
            other => panic!("expected a negativity witness, got {other:?}"),
        }
    }

    #[test]
    fn decomposition_enumeration() {
        // frozen expected sets for small points
        let d = enumerate_decompositions(&[1, 1]).unwrap();
        assert_eq!(
            d,
            vec![
                vec![vec![1, 1]],
                vec![vec![1, 0], vec![0, 1]],
            ]
        );
        let d = enumerate_decompositions(&[1, 0]).unwrap();
        assert_eq!(d, vec![vec![vec![1, 0]]]);
        let d = enumerate_decompositions(&[2, 0]).unwrap();
        assert_eq!(
            d,
            vec![vec![vec![2, 0]], vec![vec![1, 0], vec![1, 0]]]
        );
        assert!(matches!(
            enumerate_decompositions(&[13, 0]),
            Err(HomError::CapExceeded { .. })
        ));
        assert!(matches!(
            enumerate_decompositions(&[-1, 0]),
            Err(HomError::NotInCone(_))
        ));
    }

    #[test]
    fn jordan_parts() {
        let f = GroupHom::on_zn(vec![rat(2, 1), rat(-1, 1)]);
        let (g, h) = jordan_decompose(&f).unwrap();
        assert_eq!(g.values, vec![rat(2, 1), rat(0, 1)]);
        assert_eq!(h.values, vec![rat(0, 1), rat(1, 1)]);

        let pos = GroupHom::on_zn(vec![rat(1, 2), rat(3, 1)]);
        let (g, h) = jordan_decompose(&pos).unwrap();
        assert_eq!(g, pos);
        assert!(h.values.iter().all(|v| v.is_zero()));

        let zero = GroupHom::on_zn(vec![rat(0, 1), rat(0, 1)]);
        let (g, h) = jordan_decompose(&zero).unwrap();
        assert_eq!(g, zero);
        assert_eq!(h, zero);
    }

    #[test]
    fn positive_part_is_additive_on_window() {
        let f = GroupHom::on_zn(vec![rat(3, 1), rat(-2, 1)]);
        let (g, _) = jordan_decompose(&f).unwrap();
        for x0 in 0..3i64 {
            for x1 in 0..3i64 {
                for y0 in 0..3i64 {
                    for y1 in 0..3i64 {
                        let x = [x0, x1];
                        let y = [y0, y1];
                        let s = [x0 + y0, x1 + y1];
                        let vx = positive_part_value(&f, &x).unwrap();
                        let vy = positive_part_value(&f, &y).unwrap();
                        let vs = positive_part_value(&f, &s).unwrap();
                        assert_eq!(vs, &vx + &vy);
                        assert_eq!(vx, g.eval_coords(&x));
                    }
                }
            }
        }
    }

    #[test]
    fn sup_of_projections() {
        let f = GroupHom::on_zn(vec![rat(1, 1), rat(0, 1)]);
        let g = GroupHom::on_zn(vec![rat(0, 1), rat(1, 1)]);
        let s = sup_homs(&zn(2), &[f.clone(), g.clone()], &[1, 1]).unwrap();
        assert_eq!(s, rat(2, 1));
        // single function: sup is the function itself
        let s = sup_homs(&zn(2), &[f.clone()], &[3, 2]).unwrap();
        assert_eq!(s, f.eval_coords(&[3, 2]));
        // dominated pair: sup is the larger
        let small = GroupHom::on_zn(vec![rat(1, 3), rat(1, 2)]);
        let big = GroupHom::on_zn(vec![rat(1, 1), rat(2, 1)]);
        for x in [[0, 0], [1, 2], [3, 1]] {
            assert_eq!(
                sup_homs(&zn(2), &[small.clone(), big.clone()], &x).unwrap(),
                big.eval_coords(&x)
            );
        }
    }

    #[test]
    fn lex_cone_is_rejected() {
        let lex = PoGroupPresentation::free_abelian(2, Cone::Lex);
        let f = GroupHom::on_zn(vec![rat(1, 1), rat(0, 1)]);
        assert!(matches!(
            sup_homs(&lex, &[f], &[1, 1]),
            Err(HomError::NonEnumerableCone(_))
        ));
    }

    #[test]
    fn oracle_agreement() {
        let f = GroupHom::on_zn(vec![rat(1, 1), rat(0, 1)]);
        let g = GroupHom::on_zn(vec![rat(0, 1), rat(1, 1)]);
        let r = verify_lattice_oracle(&zn(2), &[f.clone(), g.clone()], 4).unwrap();
        assert!(r.agree, "{:?}", r.mismatches);
        // sup = inf = f when the family is {f, f}
        let r = verify_lattice_oracle(&zn(2), &[f.clone(), f.clone()], 4).unwrap();
        assert!(r.agree);
        // three functions on Z^3
        let h3 = [
            GroupHom::on_zn(vec![rat(1, 1), rat(-1, 1), rat(0, 1)]),
            GroupHom::on_zn(vec![rat(0, 1), rat(2, 1), rat(-1, 1)]),
            GroupHom::on_zn(vec![rat(-1, 1), rat(0, 1), rat(1, 1)]),
        ];
        let r = verify_lattice_oracle(&zn(3), &h3, 3).unwrap();
        assert!(r.agree, "{:?}", r.mismatches);
    }

    #[test]
    fn semidirect_hom_well_definedness() {
        let g = PoGroupPresentation::semidirect([[1, 1], [0, 1]]);
        // the x-coordinate of the Z^2 part is not conjugation-invariant
        assert!(matches!(
            GroupHom::new(&g, vec![rat(1, 1), rat(1, 1), rat(0, 1)]),
            Err(HomError::NotWellDefined(_))
        ));
        // first coordinate and the y-part are fine
        let f = GroupHom::new(&g, vec![rat(2, 1), rat(0, 1), rat(1, 3)]).unwrap();
        let a = GroupElement(vec![1, 4, 2]);
        let b = GroupElement(vec![-2, 1, 1]);
        let sum = g.add(&a, &b).unwrap();
        assert_eq!(f.eval(&sum), f.eval(&a) + f.eval(&b));
    }
}
