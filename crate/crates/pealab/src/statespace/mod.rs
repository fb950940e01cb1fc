//! State spaces of finite pseudo effect algebras, exactly.
//!
//! A state is a `[0,1]`-valued functional with `s(1) = 1` that is additive
//! on defined sums. The states of a finite table form a rational polytope:
//! the H-representation has one variable per element, one equality per
//! defined sum, and unit-box bounds. Vertices (the extremal states) are
//! enumerated by the double description method over exact rationals, the
//! polytope is classified as a simplex or not, and states are decomposed
//! into barycentric measures over the extremal states — the finite-scale
//! form of integral representation over a Choquet/Bauer simplex.

pub mod dd;

use std::collections::BTreeSet;

use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{self, dot, Solution};
use crate::pea::{ElementId, FiniteTable, OrderRelation};
use crate::ratio;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("state vector has {got} values for a carrier of size {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("state must map 0 to 0")]
    ZeroNotZero,
    #[error("state must map 1 to 1")]
    OneNotOne,
    #[error("state value at {0} is outside [0, 1]")]
    ValueOutOfRange(ElementId),
    #[error("state violates the sum {a} + {b} = {c}")]
    AdditivityViolated {
        a: ElementId,
        b: ElementId,
        c: ElementId,
    },
    #[error("point does not lie in the state polytope: {0}")]
    NotInPolytope(String),
    #[error("state polytope is empty")]
    EmptyPolytope,
    #[error("polytope is not a simplex; barycentric coordinates are not unique")]
    NotSimplex,
    #[error("measure barycenter does not match the given state")]
    BarycenterMismatch,
    #[error("meet of {a} and {b} does not exist; the rule needs a lattice-ordered table")]
    MeetMissing { a: ElementId, b: ElementId },
    #[error("internal enumeration error: {0}")]
    Internal(String),
}

/// A rational-valued assignment element -> [0, 1] satisfying the state
/// equations. Values are indexed by element id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StateVector {
    values: Vec<BigRational>,
}

impl StateVector {
    pub fn new(values: Vec<BigRational>) -> Self {
        StateVector { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, a: ElementId) -> BigRational {
        self.values[a.0].clone()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Checks the state equations against a table: normalization, range and
    /// additivity on every defined sum.
    pub fn validate(&self, table: &FiniteTable) -> Result<(), StateError> {
        if self.values.len() != table.size() {
            return Err(StateError::WrongLength {
                expected: table.size(),
                got: self.values.len(),
            });
        }
        if !self.values[table.zero().0].is_zero() {
            return Err(StateError::ZeroNotZero);
        }
        if !self.values[table.one().0].is_one() {
            return Err(StateError::OneNotOne);
        }
        for a in table.elements() {
            if !ratio::in_unit_interval(&self.values[a.0]) {
                return Err(StateError::ValueOutOfRange(a));
            }
        }
        for (a, b, c) in table.defined_sums() {
            if &self.values[a.0] + &self.values[b.0] != self.values[c.0] {
                return Err(StateError::AdditivityViolated { a, b, c });
            }
        }
        Ok(())
    }
}

/// H-representation of the state space: equalities from the defined sums,
/// plus unit-box inequalities `c . x <= d`.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub equalities: Vec<(Vec<BigRational>, BigRational)>,
    pub inequalities: Vec<(Vec<BigRational>, BigRational)>,
}

impl LinearSystem {
    /// Exact membership test.
    pub fn satisfies(&self, x: &[BigRational]) -> bool {
        self.equalities.iter().all(|(c, d)| dot(c, x) == *d)
            && self.inequalities.iter().all(|(c, d)| dot(c, x) <= *d)
    }
}

/// Builds the state equations of a table: one variable per element,
/// `s(0) = 0`, `s(1) = 1`, one equality per defined sum, box bounds
/// `0 <= s(a) <= 1`. Duplicate rows are removed.
pub fn build_hrep(table: &FiniteTable) -> LinearSystem {
    let n = table.size();
    let mut seen: BTreeSet<(Vec<BigRational>, BigRational)> = BTreeSet::new();
    let mut equalities = Vec::new();
    let mut push = |row: Vec<BigRational>, rhs: BigRational,
                    eqs: &mut Vec<(Vec<BigRational>, BigRational)>| {
        if seen.insert((row.clone(), rhs.clone())) {
            eqs.push((row, rhs));
        }
    };

    let unit = |i: usize| {
        let mut r = vec![BigRational::zero(); n];
        r[i] = BigRational::one();
        r
    };
    push(unit(table.zero().0), BigRational::zero(), &mut equalities);
    push(unit(table.one().0), BigRational::one(), &mut equalities);
    for (a, b, c) in table.defined_sums() {
        let mut row = vec![BigRational::zero(); n];
        row[a.0] += BigRational::one();
        row[b.0] += BigRational::one();
        row[c.0] -= BigRational::one();
        if row.iter().all(|x| x.is_zero()) {
            continue;
        }
        push(row, BigRational::zero(), &mut equalities);
    }

    let mut inequalities = Vec::new();
    for i in 0..n {
        let mut low = vec![BigRational::zero(); n];
        low[i] = -BigRational::one();
        inequalities.push((low, BigRational::zero()));
        inequalities.push((unit(i), BigRational::one()));
    }
    LinearSystem {
        num_vars: n,
        equalities,
        inequalities,
    }
}

/// V-representation: the extremal states, canonically sorted, plus the
/// affine dimension (`-1` for the empty polytope).
#[derive(Debug, Clone)]
pub struct StatePolytope {
    pub vertices: Vec<StateVector>,
    pub affine_dim: i64,
}

impl StatePolytope {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Index of a vertex equal to `s`, if any.
    pub fn vertex_index(&self, s: &StateVector) -> Option<usize> {
        self.vertices.iter().position(|v| v == s)
    }
}

/// Exact vertex enumeration of the state polytope.
///
/// The equalities are solved to an affine parametrization, the box system
/// is pushed into the parameter space, and the double description method
/// enumerates the vertices there. An infeasible system yields the empty
/// polytope, which is a legitimate outcome for pseudo effect algebras.
pub fn enumerate_states(sys: &LinearSystem) -> Result<StatePolytope, StateError> {
    let empty = StatePolytope {
        vertices: Vec::new(),
        affine_dim: -1,
    };
    let (x0, basis) = match linalg::solve(&sys.equalities, sys.num_vars) {
        Solution::Inconsistent => return Ok(empty),
        Solution::Affine {
            particular,
            nullspace,
        } => (particular, nullspace),
    };

    let raw: Vec<Vec<BigRational>> = if basis.is_empty() {
        if sys
            .inequalities
            .iter()
            .all(|(c, d)| dot(c, &x0) <= *d)
        {
            vec![x0.clone()]
        } else {
            Vec::new()
        }
    } else {
        // Substitute x = x0 + B t into the box system.
        let k = basis.len();
        let mut t_rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
        for (c, d) in &sys.inequalities {
            let coeffs: Vec<BigRational> = basis.iter().map(|b| dot(c, b)).collect();
            let rhs = d - dot(c, &x0);
            if coeffs.iter().all(|x| x.is_zero()) {
                if rhs.is_negative() {
                    return Ok(empty);
                }
                continue;
            }
            t_rows.push((coeffs, rhs));
        }
        let t_vertices = dd::enumerate_polytope_vertices(&t_rows, k)
            .map_err(|e| StateError::Internal(e.to_string()))?;
        t_vertices
            .into_iter()
            .map(|t| {
                let mut x = x0.clone();
                for (tj, bj) in t.iter().zip(&basis) {
                    for (xi, bi) in x.iter_mut().zip(bj) {
                        *xi += tj * bi;
                    }
                }
                x
            })
            .collect()
    };

    // Every vertex must satisfy every row exactly.
    for v in &raw {
        if !sys.satisfies(v) {
            return Err(StateError::Internal(
                "enumerated vertex has nonzero residual".into(),
            ));
        }
    }
    let mut vertices: Vec<StateVector> = raw.into_iter().map(StateVector::new).collect();
    vertices.sort();
    vertices.dedup();
    let affine_dim = affine_dimension(&vertices);
    Ok(StatePolytope {
        vertices,
        affine_dim,
    })
}

fn affine_dimension(vertices: &[StateVector]) -> i64 {
    match vertices.len() {
        0 => -1,
        1 => 0,
        _ => {
            let v0 = &vertices[0];
            let diffs: Vec<Vec<BigRational>> = vertices[1..]
                .iter()
                .map(|v| {
                    v.values()
                        .iter()
                        .zip(v0.values())
                        .map(|(a, b)| a - b)
                        .collect()
                })
                .collect();
            linalg::rank(&diffs) as i64
        }
    }
}

/// Simplex classification of a finite polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexClass {
    Empty,
    Simplex,
    NonSimplex,
}

impl SimplexClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SimplexClass::Empty => "empty",
            SimplexClass::Simplex => "simplex",
            SimplexClass::NonSimplex => "non_simplex",
        }
    }
}

/// Classification record. For a finite polytope the extreme set is closed,
/// so `Simplex` certifies a Choquet and a Bauer simplex at once;
/// `choquet_and_bauer` records that.
#[derive(Debug, Clone)]
pub struct Classification {
    pub class: SimplexClass,
    pub vertex_count: usize,
    pub affine_dim: i64,
    pub choquet_and_bauer: bool,
}

/// A polytope is a simplex iff its vertex count is one more than its
/// affine dimension.
pub fn classify(p: &StatePolytope) -> Classification {
    let class = if p.vertices.is_empty() {
        SimplexClass::Empty
    } else if p.vertices.len() as i64 == p.affine_dim + 1 {
        SimplexClass::Simplex
    } else {
        SimplexClass::NonSimplex
    };
    Classification {
        class,
        vertex_count: p.vertices.len(),
        affine_dim: p.affine_dim,
        choquet_and_bauer: class == SimplexClass::Simplex,
    }
}

/// An affine function of the state coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct AffFunction {
    pub coeffs: Vec<BigRational>,
    pub constant: BigRational,
}

impl AffFunction {
    pub fn eval(&self, s: &StateVector) -> BigRational {
        dot(&self.coeffs, s.values()) + self.constant.clone()
    }

    pub fn constant_one(num_vars: usize) -> Self {
        AffFunction {
            coeffs: vec![BigRational::zero(); num_vars],
            constant: BigRational::one(),
        }
    }
}

/// The evaluation function `a^`: the coordinate projection `s -> s(a)`.
pub fn evaluation_map(table: &FiniteTable, a: ElementId) -> AffFunction {
    let mut coeffs = vec![BigRational::zero(); table.size()];
    coeffs[a.0] = BigRational::one();
    AffFunction {
        coeffs,
        constant: BigRational::zero(),
    }
}

/// A continuous convex piecewise-linear function: the max of finitely many
/// affine pieces.
#[derive(Debug, Clone)]
pub struct ConvexPLFunction {
    pub pieces: Vec<AffFunction>,
}

impl ConvexPLFunction {
    pub fn affine(f: AffFunction) -> Self {
        ConvexPLFunction { pieces: vec![f] }
    }

    pub fn eval(&self, s: &StateVector) -> BigRational {
        self.pieces
            .iter()
            .map(|p| p.eval(s))
            .max()
            .expect("convex PL function has at least one piece")
    }

    pub fn is_affine(&self) -> bool {
        self.pieces.len() == 1
    }
}

/// A finitely supported rational probability measure over states; the
/// finite-scale stand-in for a representing Borel measure.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    pub atoms: Vec<(StateVector, BigRational)>,
}

impl DiscreteMeasure {
    pub fn dirac(s: StateVector) -> Self {
        DiscreteMeasure {
            atoms: vec![(s, BigRational::one())],
        }
    }

    /// Sorts atoms, merges duplicates and drops zero weights.
    pub fn canonical(mut self) -> Self {
        self.atoms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(StateVector, BigRational)> = Vec::new();
        for (s, w) in self.atoms {
            if w.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some((prev, pw)) if *prev == s => *pw += w,
                _ => out.push((s, w)),
            }
        }
        DiscreteMeasure { atoms: out }
    }

    pub fn total_weight(&self) -> BigRational {
        self.atoms.iter().map(|(_, w)| w.clone()).sum()
    }

    pub fn barycenter(&self, num_vars: usize) -> StateVector {
        let mut acc = vec![BigRational::zero(); num_vars];
        for (s, w) in &self.atoms {
            for (a, v) in acc.iter_mut().zip(s.values()) {
                *a += w * v;
            }
        }
        StateVector::new(acc)
    }

    /// Expectation of a convex PL function.
    pub fn expect_pl(&self, f: &ConvexPLFunction) -> BigRational {
        self.atoms.iter().map(|(s, w)| w * f.eval(s)).sum()
    }

    /// Expectation of an affine function.
    pub fn expect_aff(&self, f: &AffFunction) -> BigRational {
        self.atoms.iter().map(|(s, w)| w * f.eval(s)).sum()
    }
}

/// Unique barycentric coordinates of `s` over the vertices of a simplex:
/// the weights `w_i >= 0`, summing to one, with `s = sum w_i v_i`. The
/// reconstruction identity `s(a) = sum w_i v_i(a)` then holds exactly for
/// every element.
pub fn barycentric_decompose(
    p: &StatePolytope,
    s: &StateVector,
) -> Result<DiscreteMeasure, StateError> {
    let cls = classify(p);
    match cls.class {
        SimplexClass::Empty => return Err(StateError::EmptyPolytope),
        SimplexClass::NonSimplex => return Err(StateError::NotSimplex),
        SimplexClass::Simplex => {}
    }
    let weights = barycentric_weights(&p.vertices, s)?;
    Ok(DiscreteMeasure {
        atoms: p
            .vertices
            .iter()
            .cloned()
            .zip(weights)
            .collect::<Vec<_>>(),
    }
    .canonical())
}

/// Solves `sum w_i v_i = target`, `sum w_i = 1` over the given affinely
/// independent points; fails if a weight is negative or the system has no
/// solution.
fn barycentric_weights(
    points: &[StateVector],
    target: &StateVector,
) -> Result<Vec<BigRational>, StateError> {
    let k = points.len();
    let n = target.len();
    let mut system: Vec<(Vec<BigRational>, BigRational)> = Vec::with_capacity(n + 1);
    for coord in 0..n {
        let row: Vec<BigRational> = points.iter().map(|p| p.values()[coord].clone()).collect();
        system.push((row, target.values()[coord].clone()));
    }
    system.push((vec![BigRational::one(); k], BigRational::one()));
    match linalg::solve(&system, k) {
        Solution::Inconsistent => Err(StateError::NotInPolytope(
            "point is outside the affine hull of the vertices".into(),
        )),
        Solution::Affine {
            particular,
            nullspace,
        } => {
            if !nullspace.is_empty() {
                return Err(StateError::Internal(
                    "barycentric system is underdetermined on affinely dependent points".into(),
                ));
            }
            if particular.iter().any(|w| w.is_negative()) {
                return Err(StateError::NotInPolytope(
                    "barycentric coordinates are negative".into(),
                ));
            }
            Ok(particular)
        }
    }
}

/// A vertex-supported representing measure obtained from the fan
/// triangulation rooted at the polytope vertex `start`: the segment from the
/// root through `s` is extended to the boundary, the exit point is
/// decomposed recursively inside its face, and the weights are combined.
pub fn representing_measure_from(
    p: &StatePolytope,
    sys: &LinearSystem,
    s: &StateVector,
    start: usize,
) -> Result<DiscreteMeasure, StateError> {
    if p.is_empty() {
        return Err(StateError::EmptyPolytope);
    }
    if !sys.satisfies(s.values()) {
        return Err(StateError::NotInPolytope(
            "state violates the H-representation".into(),
        ));
    }
    let all: Vec<usize> = (0..p.vertices.len()).collect();
    let atoms = fan_decompose(p, sys, &all, s, Some(start))?;
    Ok(DiscreteMeasure {
        atoms: atoms
            .into_iter()
            .map(|(idx, w)| (p.vertices[idx].clone(), w))
            .collect(),
    }
    .canonical())
}

fn fan_decompose(
    p: &StatePolytope,
    sys: &LinearSystem,
    face: &[usize],
    target: &StateVector,
    start: Option<usize>,
) -> Result<Vec<(usize, BigRational)>, StateError> {
    if let Some(idx) = face.iter().copied().find(|&i| &p.vertices[i] == target) {
        return Ok(vec![(idx, BigRational::one())]);
    }
    let pts: Vec<StateVector> = face.iter().map(|&i| p.vertices[i].clone()).collect();
    let face_dim = affine_dimension(&pts);
    if pts.len() as i64 == face_dim + 1 {
        let weights = barycentric_weights(&pts, target)?;
        return Ok(face.iter().copied().zip(weights).collect());
    }

    let w_idx = match start {
        Some(s) if face.contains(&s) => s,
        _ => face[0],
    };
    let w = &p.vertices[w_idx];
    let dir: Vec<BigRational> = target
        .values()
        .iter()
        .zip(w.values())
        .map(|(t, wv)| t - wv)
        .collect();
    // Exit parameter: largest t with w + t dir inside every inequality.
    let mut t_max: Option<BigRational> = None;
    for (c, d) in &sys.inequalities {
        let slope = dot(c, &dir);
        if slope.is_positive() {
            let slack = d - dot(c, w.values());
            let bound = slack / slope;
            t_max = Some(match t_max {
                None => bound,
                Some(cur) => cur.min(bound),
            });
        }
    }
    let t_max = t_max.ok_or_else(|| {
        StateError::Internal("fan ray is unbounded inside a polytope".into())
    })?;
    debug_assert!(t_max >= BigRational::one());
    let exit: Vec<BigRational> = w
        .values()
        .iter()
        .zip(&dir)
        .map(|(wv, dv)| wv + &t_max * dv)
        .collect();
    let exit_sv = StateVector::new(exit.clone());

    let tight: Vec<usize> = sys
        .inequalities
        .iter()
        .enumerate()
        .filter(|(_, (c, d))| dot(c, &exit) == *d)
        .map(|(i, _)| i)
        .collect();
    let child: Vec<usize> = face
        .iter()
        .copied()
        .filter(|&i| {
            tight.iter().all(|&r| {
                let (c, d) = &sys.inequalities[r];
                dot(c, p.vertices[i].values()) == *d
            })
        })
        .collect();
    if child.is_empty() || child.contains(&w_idx) {
        return Err(StateError::Internal(
            "fan step did not reduce the face".into(),
        ));
    }
    let sub = fan_decompose(p, sys, &child, &exit_sv, None)?;
    let inv = BigRational::one() / t_max;
    let mut out = vec![(w_idx, BigRational::one() - inv.clone())];
    for (idx, wt) in sub {
        out.push((idx, wt * inv.clone()));
    }
    Ok(out)
}

/// One representing measure for `s`, plus a distinct second witness when
/// one of the vertex fans produces a different decomposition.
#[derive(Debug, Clone)]
pub struct RepresentingMeasures {
    pub measure: DiscreteMeasure,
    pub second: Option<DiscreteMeasure>,
    /// True when the fan walk exhausted every vertex without finding a
    /// second decomposition; for a non-simplex polytope this is the weaker
    /// statement "unique among fan triangulations", not uniqueness.
    pub fans_exhausted: bool,
}

/// For a simplex, defers to the unique barycentric decomposition. For a
/// non-simplex, returns the fan measure rooted at the first vertex and
/// searches the remaining fans for a distinct decomposition.
pub fn representing_measures(
    p: &StatePolytope,
    sys: &LinearSystem,
    s: &StateVector,
) -> Result<RepresentingMeasures, StateError> {
    if p.is_empty() {
        return Err(StateError::EmptyPolytope);
    }
    if !sys.satisfies(s.values()) {
        return Err(StateError::NotInPolytope(
            "state violates the H-representation".into(),
        ));
    }
    if p.vertex_index(s).is_some() {
        return Ok(RepresentingMeasures {
            measure: DiscreteMeasure::dirac(s.clone()),
            second: None,
            fans_exhausted: false,
        });
    }
    if classify(p).class == SimplexClass::Simplex {
        return Ok(RepresentingMeasures {
            measure: barycentric_decompose(p, s)?,
            second: None,
            fans_exhausted: false,
        });
    }
    let first = representing_measure_from(p, sys, s, 0)?;
    for start in 1..p.vertices.len() {
        let other = representing_measure_from(p, sys, s, start)?;
        if other != first {
            return Ok(RepresentingMeasures {
                measure: first,
                second: Some(other),
                fans_exhausted: false,
            });
        }
    }
    Ok(RepresentingMeasures {
        measure: first,
        second: None,
        fans_exhausted: true,
    })
}

/// Jensen certificate for the one-sided Choquet ordering: the measure
/// dominates the Dirac measure at its barycenter on convex functions,
/// `sum w_i f(v_i) >= f(s)`, with exact equality for affine `f`.
pub fn jensen_check(
    m: &DiscreteMeasure,
    s: &StateVector,
    f: &ConvexPLFunction,
) -> Result<bool, StateError> {
    if m.barycenter(s.len()) != *s || !m.total_weight().is_one() {
        return Err(StateError::BarycenterMismatch);
    }
    Ok(m.expect_pl(f) >= f.eval(s))
}

/// The extremality criterion on lattice-ordered tables: `s` satisfies
/// `s(a /\ b) = min(s(a), s(b))` for every pair. All pairwise meets must
/// exist.
pub fn extremal_min_rule(
    table: &FiniteTable,
    order: &OrderRelation,
    s: &StateVector,
) -> Result<bool, StateError> {
    s.validate(table)?;
    for a in table.elements() {
        for b in table.elements() {
            let meet = table
                .partial_meet(order, a, b)
                .ok_or(StateError::MeetMissing { a, b })?;
            let min = s.value(a).min(s.value(b));
            if s.value(meet) != min {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The normalized positive functional on affine functions induced by a
/// state: `f -> f(s)`. Construction verifies that the functional agrees
/// with the state on every evaluation function and is normalized on the
/// constant 1; positivity on functions nonnegative over the vertices is a
/// consequence of `s` lying in the polytope.
#[derive(Debug, Clone)]
pub struct StateFunctional {
    pub state: StateVector,
}

pub fn aff_state_correspondence(
    table: &FiniteTable,
    p: &StatePolytope,
    sys: &LinearSystem,
    s: &StateVector,
) -> Result<StateFunctional, StateError> {
    if p.is_empty() {
        return Err(StateError::EmptyPolytope);
    }
    if !sys.satisfies(s.values()) {
        return Err(StateError::NotInPolytope(
            "state violates the H-representation".into(),
        ));
    }
    let func = StateFunctional { state: s.clone() };
    for a in table.elements() {
        if func.apply(&evaluation_map(table, a)) != s.value(a) {
            return Err(StateError::Internal(
                "functional disagrees with the state on an evaluation function".into(),
            ));
        }
    }
    let one = AffFunction::constant_one(table.size());
    if !func.apply(&one).is_one() {
        return Err(StateError::Internal(
            "functional is not normalized on the constant 1".into(),
        ));
    }
    Ok(func)
}

impl StateFunctional {
    pub fn apply(&self, f: &AffFunction) -> BigRational {
        f.eval(&self.state)
    }
}

/// Exact convex-combination test: weights over `points` reproducing
/// `target`, if they exist. Searches affinely independent subsets of size
/// at most `dim + 1`, so the answer is exact.
pub fn convex_combination(
    target: &StateVector,
    points: &[StateVector],
) -> Option<DiscreteMeasure> {
    if points.is_empty() {
        return None;
    }
    let dim = affine_dimension(points);
    let max_size = (dim + 1).max(1) as usize;
    let n = points.len();
    let mut chosen: Vec<usize> = Vec::new();
    fn subsets(
        n: usize,
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        points: &[StateVector],
        target: &StateVector,
    ) -> Option<Vec<(usize, BigRational)>> {
        if chosen.len() == k {
            let pts: Vec<StateVector> = chosen.iter().map(|&i| points[i].clone()).collect();
            if let Ok(w) = barycentric_weights(&pts, target) {
                return Some(chosen.iter().copied().zip(w).collect());
            }
            return None;
        }
        for i in start..n {
            chosen.push(i);
            if let Some(r) = subsets(n, k, i + 1, chosen, points, target) {
                return Some(r);
            }
            chosen.pop();
        }
        None
    }
    for k in 1..=max_size.min(n) {
        if let Some(atoms) = subsets(n, k, 0, &mut chosen, points, target) {
            return Some(
                DiscreteMeasure {
                    atoms: atoms
                        .into_iter()
                        .map(|(i, w)| (points[i].clone(), w))
                        .collect(),
                }
                .canonical(),
            );
        }
    }
    None
}
