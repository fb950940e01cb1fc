//! Concrete partially ordered groups with strong units and their interval
//! algebras `Gamma(G, u) = [0, u]`.
//!
//! Three families of presentations are supported:
//!
//! - free Abelian groups `Z^n` with the standard, lexicographic or a
//!   polyhedral (generator-row) cone;
//! - the lexicographic extension `Z lex G` of an inner presentation, ordered
//!   by the first coordinate first;
//! - the semidirect product `Z x| Z^2` twisted by a unimodular shear, a
//!   non-commutative po-group. Its cone is `n > 0`, or `n = 0` and the
//!   `Z^2` part lexicographically nonnegative.
//!
//! Interval algebras are realized as finite validated tables when the
//! interval can be enumerated, and as lazy membership predicates otherwise;
//! a lazy interval can still be inspected through a finite window table
//! whose out-of-window sums are explicitly marked unknown.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{self, Solution};
use crate::pea::{ElementId, FiniteTable, TableError};
use crate::statespace::StateVector;

/// Coefficient cap for deciding membership in a polyhedral cone by bounded
/// search over nonnegative integer combinations.
pub const POLYHEDRAL_COEFF_CAP: i64 = 32;
/// Cap on the multiplier when certifying a strong unit.
pub const STRONG_UNIT_CAP: u32 = 64;
/// Default cap on interval enumeration.
pub const INTERVAL_CAP: usize = 10_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("rank mismatch: presentation has rank {expected}, element has {got} coordinates")]
    RankMismatch { expected: usize, got: usize },
    #[error("integer overflow in group arithmetic")]
    Overflow,
    #[error("cone membership of {0} is undecided at coefficient cap {POLYHEDRAL_COEFF_CAP}")]
    MembershipUndecided(String),
    #[error("cone is not strict on the window: {0} and its negation are both in the cone")]
    NotStrict(String),
    #[error("cone is not normal on the window: conjugate of {element} by {by} leaves the cone")]
    NotNormal { element: String, by: String },
    #[error("group is not directed on the window: generator {0} is not a difference of cone elements")]
    NotDirected(String),
    #[error("semidirect action matrix must be unimodular")]
    ActionNotUnimodular,
    #[error("semidirect action matrix must preserve the lexicographic cone of Z^2")]
    ActionNotConePreserving,
    #[error("polyhedral cone rows must have {expected} coordinates")]
    BadConeRows { expected: usize },
    #[error("unit is not in the positive cone")]
    UnitNotInCone,
    #[error("unit is the zero element; interval would be degenerate")]
    DegenerateUnit,
    #[error("not a strong unit within cap {cap}: {generator} is not dominated")]
    NotStrongUnit { generator: String, cap: u32 },
    #[error("window radius must be at least 1")]
    RadiusZero,
    #[error("window radius {radius} does not contain the unit {unit}")]
    WindowExcludesUnit { radius: i64, unit: String },
    #[error("interval is not finitely realized; use a window table")]
    NotFinite,
    #[error("interval table construction failed: {0}")]
    Table(#[from] TableError),
    #[error("interval table failed pseudo effect algebra validation with {count} violations")]
    AxiomsFailed { count: usize },
    #[error("state extension is ill-defined on the window: {0} (the group lacks the Riesz decomposition property there)")]
    ExtensionIllDefined(String),
    #[error("interval elements do not span the group; extension is not determined")]
    NonSpanningInterval,
    #[error("group state is negative at {0}")]
    NegativeOnCone(String),
    #[error("group state does not map the unit to 1")]
    UnitNotNormalized,
    #[error("state inconsistent with interval table: {0}")]
    State(String),
}

/// An element of a presented group: an integer coordinate vector whose
/// interpretation is fixed by the presentation variant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(pub Vec<i64>);

impl GroupElement {
    pub fn zero(rank: usize) -> Self {
        GroupElement(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl std::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Cone choice for a free Abelian presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cone {
    /// All coordinates nonnegative.
    Standard,
    /// Lexicographic with the last coordinate most significant.
    Lex,
    /// Nonnegative integer combinations of the given rows.
    Polyhedral(Vec<Vec<i64>>),
}

/// A concrete po-group presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PoGroupPresentation {
    FreeAbelian { rank: usize, cone: Cone },
    /// `Z lex G`: direct product group, ordered by the first coordinate
    /// first, then by the inner cone.
    LexZ { inner: Box<PoGroupPresentation> },
    /// `Z x| Z^2` where adding `(m, v) + (n, w) = (m + n, phi^{-n}(v) + w)`
    /// for a fixed shear `phi`. The cone is `n > 0` or `n = 0` with `v`
    /// lexicographically nonnegative.
    SemidirectZxZ2 { action: [[i64; 2]; 2] },
}

/// Three-valued cone membership; `Unknown` occurs only for polyhedral cones
/// past the coefficient cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    Out,
    Unknown,
}

/// Certified strong unit: each signed generator is dominated by `n` copies
/// of the unit.
#[derive(Debug, Clone)]
pub struct StrongUnit {
    pub unit: GroupElement,
    /// `(generator description, least multiplier)` for each signed generator.
    pub bounds: Vec<(String, u32)>,
}

fn checked_add(a: i64, b: i64) -> Result<i64, GroupError> {
    a.checked_add(b).ok_or(GroupError::Overflow)
}

fn lex_nonneg(coords: &[i64]) -> bool {
    for &x in coords.iter().rev() {
        if x > 0 {
            return true;
        }
        if x < 0 {
            return false;
        }
    }
    true
}

impl PoGroupPresentation {
    pub fn free_abelian(rank: usize, cone: Cone) -> Self {
        PoGroupPresentation::FreeAbelian { rank, cone }
    }

    pub fn lex_z(inner: PoGroupPresentation) -> Self {
        PoGroupPresentation::LexZ {
            inner: Box::new(inner),
        }
    }

    pub fn semidirect(action: [[i64; 2]; 2]) -> Self {
        PoGroupPresentation::SemidirectZxZ2 { action }
    }

    pub fn rank(&self) -> usize {
        match self {
            PoGroupPresentation::FreeAbelian { rank, .. } => *rank,
            PoGroupPresentation::LexZ { inner } => 1 + inner.rank(),
            PoGroupPresentation::SemidirectZxZ2 { .. } => 3,
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            PoGroupPresentation::FreeAbelian { .. } => true,
            PoGroupPresentation::LexZ { inner } => inner.is_abelian(),
            PoGroupPresentation::SemidirectZxZ2 { .. } => false,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            PoGroupPresentation::FreeAbelian { rank, cone } => match cone {
                Cone::Standard => format!("Z^{rank} standard"),
                Cone::Lex => format!("Z^{rank} lex"),
                Cone::Polyhedral(rows) => format!("Z^{rank} polyhedral({} rows)", rows.len()),
            },
            PoGroupPresentation::LexZ { inner } => format!("Z lex ({})", inner.describe()),
            PoGroupPresentation::SemidirectZxZ2 { action } => format!(
                "Z x| Z^2 action [[{},{}],[{},{}]]",
                action[0][0], action[0][1], action[1][0], action[1][1]
            ),
        }
    }

    pub fn zero_element(&self) -> GroupElement {
        GroupElement::zero(self.rank())
    }

    /// Standard coordinate generators.
    pub fn generators(&self) -> Vec<GroupElement> {
        let rank = self.rank();
        (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                GroupElement(v)
            })
            .collect()
    }

    fn check_rank(&self, g: &GroupElement) -> Result<(), GroupError> {
        if g.0.len() != self.rank() {
            return Err(GroupError::RankMismatch {
                expected: self.rank(),
                got: g.0.len(),
            });
        }
        Ok(())
    }

    /// Applies the semidirect action `phi^power` to a `Z^2` vector.
    fn apply_action(
        action: &[[i64; 2]; 2],
        power: i64,
        v: [i64; 2],
    ) -> Result<[i64; 2], GroupError> {
        // phi is a unimodular shear, so its inverse is integral.
        let det = action[0][0] * action[1][1] - action[0][1] * action[1][0];
        debug_assert!(det == 1 || det == -1);
        let inv = [
            [action[1][1] / det, -action[0][1] / det],
            [-action[1][0] / det, action[0][0] / det],
        ];
        let m = if power >= 0 { action } else { &inv };
        let mut out = v;
        for _ in 0..power.abs() {
            let x = checked_add(
                m[0][0].checked_mul(out[0]).ok_or(GroupError::Overflow)?,
                m[0][1].checked_mul(out[1]).ok_or(GroupError::Overflow)?,
            )?;
            let y = checked_add(
                m[1][0].checked_mul(out[0]).ok_or(GroupError::Overflow)?,
                m[1][1].checked_mul(out[1]).ok_or(GroupError::Overflow)?,
            )?;
            out = [x, y];
        }
        Ok(out)
    }

    /// Group addition of the variant.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        match self {
            PoGroupPresentation::FreeAbelian { .. } => {
                let mut out = Vec::with_capacity(a.0.len());
                for (x, y) in a.0.iter().zip(&b.0) {
                    out.push(checked_add(*x, *y)?);
                }
                Ok(GroupElement(out))
            }
            PoGroupPresentation::LexZ { inner } => {
                let first = checked_add(a.0[0], b.0[0])?;
                let ia = GroupElement(a.0[1..].to_vec());
                let ib = GroupElement(b.0[1..].to_vec());
                let sum = inner.add(&ia, &ib)?;
                let mut out = vec![first];
                out.extend(sum.0);
                Ok(GroupElement(out))
            }
            PoGroupPresentation::SemidirectZxZ2 { action } => {
                let (m, n) = (a.0[0], b.0[0]);
                let v = Self::apply_action(action, -n, [a.0[1], a.0[2]])?;
                Ok(GroupElement(vec![
                    checked_add(m, n)?,
                    checked_add(v[0], b.0[1])?,
                    checked_add(v[1], b.0[2])?,
                ]))
            }
        }
    }

    /// Group inverse.
    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_rank(a)?;
        match self {
            PoGroupPresentation::FreeAbelian { .. } => Ok(GroupElement(
                a.0.iter()
                    .map(|&x| x.checked_neg().ok_or(GroupError::Overflow))
                    .collect::<Result<_, _>>()?,
            )),
            PoGroupPresentation::LexZ { inner } => {
                let ia = GroupElement(a.0[1..].to_vec());
                let ni = inner.neg(&ia)?;
                let mut out = vec![a.0[0].checked_neg().ok_or(GroupError::Overflow)?];
                out.extend(ni.0);
                Ok(GroupElement(out))
            }
            PoGroupPresentation::SemidirectZxZ2 { action } => {
                // (m, v)^-1 = (-m, -phi^m(v))
                let m = a.0[0];
                let w = Self::apply_action(action, m, [a.0[1], a.0[2]])?;
                Ok(GroupElement(vec![
                    m.checked_neg().ok_or(GroupError::Overflow)?,
                    w[0].checked_neg().ok_or(GroupError::Overflow)?,
                    w[1].checked_neg().ok_or(GroupError::Overflow)?,
                ]))
            }
        }
    }

    /// `a - b` as `a + (-b)`.
    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    /// Conjugate `-by + g + by`.
    pub fn conjugate(
        &self,
        g: &GroupElement,
        by: &GroupElement,
    ) -> Result<GroupElement, GroupError> {
        let nb = self.neg(by)?;
        let t = self.add(&nb, g)?;
        self.add(&t, by)
    }

    /// `n`-fold sum of `g` with itself.
    pub fn n_times(&self, g: &GroupElement, n: u32) -> Result<GroupElement, GroupError> {
        let mut acc = self.zero_element();
        for _ in 0..n {
            acc = self.add(&acc, g)?;
        }
        Ok(acc)
    }

    /// Three-valued membership in the positive cone.
    pub fn cone_membership(&self, g: &GroupElement) -> Result<Membership, GroupError> {
        self.check_rank(g)?;
        match self {
            PoGroupPresentation::FreeAbelian { cone, rank } => match cone {
                Cone::Standard => Ok(if g.0.iter().all(|&x| x >= 0) {
                    Membership::In
                } else {
                    Membership::Out
                }),
                Cone::Lex => Ok(if lex_nonneg(&g.0) {
                    Membership::In
                } else {
                    Membership::Out
                }),
                Cone::Polyhedral(rows) => polyhedral_membership(rows, *rank, &g.0),
            },
            PoGroupPresentation::LexZ { inner } => {
                if g.0[0] > 0 {
                    Ok(Membership::In)
                } else if g.0[0] < 0 {
                    Ok(Membership::Out)
                } else {
                    inner.cone_membership(&GroupElement(g.0[1..].to_vec()))
                }
            }
            PoGroupPresentation::SemidirectZxZ2 { .. } => {
                if g.0[0] > 0 {
                    Ok(Membership::In)
                } else if g.0[0] < 0 {
                    Ok(Membership::Out)
                } else {
                    Ok(if lex_nonneg(&g.0[1..]) {
                        Membership::In
                    } else {
                        Membership::Out
                    })
                }
            }
        }
    }

    /// Decided membership; `Unknown` is an error.
    pub fn cone_contains(&self, g: &GroupElement) -> Result<bool, GroupError> {
        match self.cone_membership(g)? {
            Membership::In => Ok(true),
            Membership::Out => Ok(false),
            Membership::Unknown => Err(GroupError::MembershipUndecided(g.to_string())),
        }
    }

    /// `a <= b` in the group order, i.e. `b - a` in the cone.
    pub fn leq(&self, a: &GroupElement, b: &GroupElement) -> Result<bool, GroupError> {
        let d = self.sub(b, a)?;
        self.cone_contains(&d)
    }

    /// All cone elements with coordinates bounded by `radius`, ascending.
    /// Candidates with undecided membership are skipped.
    pub fn cone_window(&self, radius: i64) -> Result<Vec<GroupElement>, GroupError> {
        let mut out = Vec::new();
        for g in coordinate_box(self.rank(), radius) {
            if self.cone_membership(&g)? == Membership::In {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// Checks strictness, normality and directedness on a coordinate window.
    pub fn validate(&self, radius: i64) -> Result<(), GroupError> {
        if radius < 1 {
            return Err(GroupError::RadiusZero);
        }
        if let PoGroupPresentation::SemidirectZxZ2 { action } = self {
            validate_action(action)?;
        }
        if let PoGroupPresentation::LexZ { inner } = self {
            inner.validate(radius)?;
        }
        if let PoGroupPresentation::FreeAbelian {
            cone: Cone::Polyhedral(rows),
            rank,
        } = self
        {
            if rows.iter().any(|r| r.len() != *rank) {
                return Err(GroupError::BadConeRows { expected: *rank });
            }
        }

        // Strict: no nonzero window element lies in the cone together with
        // its negation.
        for g in coordinate_box(self.rank(), radius) {
            if g.is_zero() {
                continue;
            }
            let pos = self.cone_membership(&g)?;
            let neg = self.cone_membership(&self.neg(&g)?)?;
            if pos == Membership::In && neg == Membership::In {
                return Err(GroupError::NotStrict(g.to_string()));
            }
        }

        // Normal: conjugation by signed generators keeps window cone
        // elements in the cone. Trivial for Abelian variants.
        if !self.is_abelian() {
            let mut by: Vec<GroupElement> = self.generators();
            let negs: Vec<GroupElement> = by
                .iter()
                .map(|g| self.neg(g))
                .collect::<Result<_, _>>()?;
            by.extend(negs);
            for c in self.cone_window(radius)? {
                for b in &by {
                    let conj = self.conjugate(&c, b)?;
                    if self.cone_membership(&conj)? == Membership::Out {
                        return Err(GroupError::NotNormal {
                            element: c.to_string(),
                            by: b.to_string(),
                        });
                    }
                }
            }
        }

        // Directed: every generator is a difference of window cone elements.
        let window_cone = self.cone_window(radius)?;
        for gen in self.generators() {
            let mut found = false;
            for c1 in &window_cone {
                let c2 = self.sub(c1, &gen)?;
                if c2.max_abs() <= radius && self.cone_membership(&c2)? == Membership::In {
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(GroupError::NotDirected(gen.to_string()));
            }
        }
        Ok(())
    }

    /// Certifies `u` as a strong unit: each signed generator `g` satisfies
    /// `g <= n u` for some `n` up to the cap.
    pub fn check_strong_unit(&self, u: &GroupElement) -> Result<StrongUnit, GroupError> {
        self.check_rank(u)?;
        if self.cone_membership(u)? != Membership::In {
            return Err(GroupError::UnitNotInCone);
        }
        let mut bounds = Vec::new();
        let mut signed: Vec<(String, GroupElement)> = Vec::new();
        for (i, g) in self.generators().into_iter().enumerate() {
            signed.push((format!("+g{i}"), g.clone()));
            signed.push((format!("-g{i}"), self.neg(&g)?));
        }
        for (label, g) in signed {
            let mut dominated = None;
            for n in 1..=STRONG_UNIT_CAP {
                let nu = self.n_times(u, n)?;
                let diff = self.sub(&nu, &g)?;
                if self.cone_contains(&diff)? {
                    dominated = Some(n);
                    break;
                }
            }
            match dominated {
                Some(n) => bounds.push((label, n)),
                None => {
                    return Err(GroupError::NotStrongUnit {
                        generator: format!("{label} = {g}"),
                        cap: STRONG_UNIT_CAP,
                    })
                }
            }
        }
        Ok(StrongUnit {
            unit: u.clone(),
            bounds,
        })
    }
}

fn validate_action(action: &[[i64; 2]; 2]) -> Result<(), GroupError> {
    let det = action[0][0] * action[1][1] - action[0][1] * action[1][0];
    if det != 1 && det != -1 {
        return Err(GroupError::ActionNotUnimodular);
    }
    // The automorphisms of Z^2 preserving the lexicographic cone are exactly
    // the shears [[1, b], [0, 1]].
    if action[0][0] != 1 || action[1][0] != 0 || action[1][1] != 1 {
        return Err(GroupError::ActionNotConePreserving);
    }
    Ok(())
}

/// Membership in the cone generated by `rows` as nonnegative integer
/// combinations. Exact when the rows are linearly independent; otherwise a
/// bounded search with coefficient cap, reporting `Unknown` on exhaustion.
fn polyhedral_membership(rows: &[Vec<i64>], rank: usize, g: &[i64]) -> Result<Membership, GroupError> {
    if rows.iter().any(|r| r.len() != rank) {
        return Err(GroupError::BadConeRows { expected: rank });
    }
    if g.iter().all(|&x| x == 0) {
        return Ok(Membership::In);
    }
    if rows.is_empty() {
        return Ok(Membership::Out);
    }
    let rat_rows: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    if linalg::rank(&rat_rows) == rows.len() {
        // Unique rational coefficients; decide integrality and sign exactly.
        let system: Vec<(Vec<BigRational>, BigRational)> = (0..rank)
            .map(|j| {
                (
                    rows.iter()
                        .map(|r| BigRational::from_integer(r[j].into()))
                        .collect(),
                    BigRational::from_integer(g[j].into()),
                )
            })
            .collect();
        return Ok(match linalg::solve(&system, rows.len()) {
            Solution::Inconsistent => Membership::Out,
            Solution::Affine { particular, .. } => {
                let ok = particular
                    .iter()
                    .all(|c| c.is_integer() && !c.is_negative());
                if ok {
                    Membership::In
                } else {
                    Membership::Out
                }
            }
        });
    }
    // Dependent rows: bounded search.
    fn search(rows: &[Vec<i64>], target: &[i64], idx: usize, acc: &mut Vec<i64>) -> bool {
        if idx == rows.len() {
            return target.iter().zip(acc_sum(rows, acc)).all(|(&t, s)| t == s);
        }
        for c in 0..=POLYHEDRAL_COEFF_CAP {
            acc.push(c);
            if search(rows, target, idx + 1, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    fn acc_sum(rows: &[Vec<i64>], acc: &[i64]) -> Vec<i64> {
        let rank = rows[0].len();
        let mut out = vec![0i64; rank];
        for (c, row) in acc.iter().zip(rows) {
            for (o, &x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        out
    }
    let mut acc = Vec::new();
    if search(rows, g, 0, &mut acc) {
        Ok(Membership::In)
    } else {
        Ok(Membership::Unknown)
    }
}

/// Integer vectors in `[-radius, radius]^rank`, ascending lexicographically.
pub fn coordinate_box(rank: usize, radius: i64) -> Vec<GroupElement> {
    let mut out = Vec::new();
    let mut current = vec![-radius; rank];
    if rank == 0 {
        return vec![GroupElement(Vec::new())];
    }
    loop {
        out.push(GroupElement(current.clone()));
        let mut i = rank;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < radius {
                current[i] += 1;
                for x in current.iter_mut().skip(i + 1) {
                    *x = -radius;
                }
                break;
            }
        }
    }
}

/// A finitely realized interval with its element dictionary.
#[derive(Debug, Clone)]
pub struct FiniteInterval {
    pub table: FiniteTable,
    /// Group coordinates of each table element, indexed by element id.
    pub elements: Vec<GroupElement>,
}

/// Realization of an interval algebra.
#[derive(Debug, Clone)]
pub enum Realization {
    Finite(FiniteInterval),
    /// Interval could not be finitely enumerated; membership stays
    /// predicate-based and analyses go through window tables.
    Lazy { notice: String },
}

/// The interval algebra `Gamma(G, u)`.
#[derive(Debug, Clone)]
pub struct IntervalAlgebra {
    pub presentation: PoGroupPresentation,
    pub unit: GroupElement,
    pub realization: Realization,
}

impl IntervalAlgebra {
    /// Membership of `g` in `[0, u]`.
    pub fn contains(&self, g: &GroupElement) -> Result<Membership, GroupError> {
        let lower = self.presentation.cone_membership(g)?;
        let diff = self.presentation.sub(&self.unit, g)?;
        let upper = self.presentation.cone_membership(&diff)?;
        Ok(match (lower, upper) {
            (Membership::In, Membership::In) => Membership::In,
            (Membership::Out, _) | (_, Membership::Out) => Membership::Out,
            _ => Membership::Unknown,
        })
    }

    pub fn finite(&self) -> Option<&FiniteInterval> {
        match &self.realization {
            Realization::Finite(f) => Some(f),
            Realization::Lazy { .. } => None,
        }
    }
}

/// Builds `Gamma(G, u)`. The unit must already be certified strong. Finite
/// realizations are re-validated as pseudo effect algebras.
pub fn gamma_interval(
    presentation: &PoGroupPresentation,
    unit: &GroupElement,
    cap: usize,
) -> Result<IntervalAlgebra, GroupError> {
    if presentation.cone_membership(unit)? != Membership::In {
        return Err(GroupError::UnitNotInCone);
    }
    if unit.is_zero() {
        return Err(GroupError::DegenerateUnit);
    }
    let lazy = |notice: String| {
        Ok(IntervalAlgebra {
            presentation: presentation.clone(),
            unit: unit.clone(),
            realization: Realization::Lazy { notice },
        })
    };
    let members: Vec<GroupElement> = match presentation {
        PoGroupPresentation::FreeAbelian { rank, cone } => match cone {
            Cone::Standard => {
                let mut count: usize = 1;
                for &u in &unit.0 {
                    count = count.saturating_mul((u + 1) as usize);
                }
                if count > cap {
                    return lazy(format!(
                        "interval has {count} elements, beyond the enumeration cap {cap}"
                    ));
                }
                box_points(&unit.0)
            }
            Cone::Lex => {
                if *rank == 1 {
                    (0..=unit.0[0]).map(|k| GroupElement(vec![k])).collect()
                } else {
                    return lazy(
                        "lexicographic interval is infinite: the hyperplane below the unit \
                         meets the cone in infinitely many points"
                            .into(),
                    );
                }
            }
            Cone::Polyhedral(_) => {
                let bound = POLYHEDRAL_COEFF_CAP * (1 + unit.max_abs());
                let mut members = Vec::new();
                let mut on_shell = false;
                let mut undecided = false;
                for g in coordinate_box(*rank, bound) {
                    let ia = IntervalAlgebra {
                        presentation: presentation.clone(),
                        unit: unit.clone(),
                        realization: Realization::Lazy { notice: String::new() },
                    };
                    match ia.contains(&g)? {
                        Membership::In => {
                            if g.max_abs() == bound {
                                on_shell = true;
                            }
                            members.push(g);
                        }
                        Membership::Unknown => undecided = true,
                        Membership::Out => {}
                    }
                    if members.len() > cap {
                        break;
                    }
                }
                if members.len() > cap || on_shell || undecided {
                    return lazy(format!(
                        "polyhedral interval enumeration exceeded the cap or the search box \
                         (radius {bound}) without a finiteness certificate"
                    ));
                }
                members
            }
        },
        PoGroupPresentation::LexZ { .. } | PoGroupPresentation::SemidirectZxZ2 { .. } => {
            return lazy(
                "interval is infinite: every cone element of the inner group sits below the unit"
                    .into(),
            );
        }
    };

    if members.len() > cap {
        return lazy(format!(
            "interval has {} elements, beyond the enumeration cap {cap}",
            members.len()
        ));
    }

    // Stable ids: zero first, the rest in ascending coordinate order.
    let mut elements: Vec<GroupElement> = members;
    elements.sort();
    let zero = presentation.zero_element();
    let zero_pos = elements.iter().position(|e| *e == zero).expect("0 in [0,u]");
    elements.remove(zero_pos);
    elements.insert(0, zero);
    let index: BTreeMap<GroupElement, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let one_id = *index.get(unit).expect("u in [0,u]");

    let mut cells = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let s = presentation.add(a, b)?;
            if let Some(&k) = index.get(&s) {
                cells.push((i, j, k));
            }
        }
    }
    let mut table = FiniteTable::new(elements.len(), 0, one_id, cells)?;
    let labels: Vec<String> = elements
        .iter()
        .map(|e| {
            if e.0.len() == 1 {
                e.0[0].to_string()
            } else {
                e.to_string()
            }
        })
        .collect();
    table.set_labels(labels)?;
    table.set_name(format!("gamma({}, {unit})", presentation.describe()));

    let report = table.validate_axioms();
    if !report.passed {
        return Err(GroupError::AxiomsFailed {
            count: report.violations.len(),
        });
    }
    Ok(IntervalAlgebra {
        presentation: presentation.clone(),
        unit: unit.clone(),
        realization: Realization::Finite(FiniteInterval { table, elements }),
    })
}

fn box_points(upper: &[i64]) -> Vec<GroupElement> {
    let mut out = vec![GroupElement(Vec::new())];
    for &u in upper {
        let mut next = Vec::new();
        for p in &out {
            for k in 0..=u {
                let mut v = p.0.clone();
                v.push(k);
                next.push(GroupElement(v));
            }
        }
        out = next;
    }
    out
}

/// Partiality marker of a window-table cell. `Unknown` means the group sum
/// lies in the interval (or has undecided membership) but outside the
/// window, which is different from a genuinely undefined sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowCell {
    Defined(usize),
    Undefined,
    Unknown,
}

/// A finite window into a lazy interval: all interval elements with
/// coordinates bounded by the radius, with three-valued sum cells. Window
/// tables support symmetry and commutativity witnesses; they are never used
/// for Riesz verdicts.
#[derive(Debug, Clone)]
pub struct WindowTable {
    pub presentation: PoGroupPresentation,
    pub unit: GroupElement,
    pub radius: i64,
    pub elements: Vec<GroupElement>,
    pub zero_id: usize,
    pub one_id: usize,
    cells: Vec<WindowCell>,
}

impl WindowTable {
    pub fn cell(&self, i: usize, j: usize) -> WindowCell {
        self.cells[i * self.elements.len() + j]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Exact symmetry scan via group arithmetic: `u - a = -a + u` for every
    /// window element. Complements are compared as group elements even when
    /// they fall outside the window.
    pub fn symmetric(&self) -> Result<(bool, Option<GroupElement>), GroupError> {
        for a in &self.elements {
            let na = self.presentation.neg(a)?;
            let minus = self.presentation.add(&self.unit, &na)?;
            let tilde = self.presentation.add(&na, &self.unit)?;
            if minus != tilde {
                return Ok((false, Some(a.clone())));
            }
        }
        Ok((true, None))
    }

    /// The `com` relation restricted to the window: every window element
    /// below `a` commutes with every window element below `b`. Returns the
    /// first failing pair.
    pub fn com(
        &self,
        a: &GroupElement,
        b: &GroupElement,
    ) -> Result<(bool, Option<NonCommutativeWitness>), GroupError> {
        let interval = IntervalAlgebra {
            presentation: self.presentation.clone(),
            unit: self.unit.clone(),
            realization: Realization::Lazy { notice: String::new() },
        };
        for a1 in &self.elements {
            if !self.presentation.leq(a1, a)? {
                continue;
            }
            for b1 in &self.elements {
                if !self.presentation.leq(b1, b)? {
                    continue;
                }
                let ab = self.presentation.add(a1, b1)?;
                let ba = self.presentation.add(b1, a1)?;
                let def_ab = interval.contains(&ab)? == Membership::In;
                let def_ba = interval.contains(&ba)? == Membership::In;
                if def_ab != def_ba || (def_ab && ab != ba) {
                    return Ok((
                        false,
                        Some(NonCommutativeWitness {
                            a: a1.clone(),
                            b: b1.clone(),
                            a_plus_b: def_ab.then_some(ab),
                            b_plus_a: def_ba.then_some(ba),
                        }),
                    ));
                }
            }
        }
        Ok((true, None))
    }

    /// Commutativity scan over window pairs; definedness is membership of
    /// the group sum in `[0, u]`. Returns the first witness pair on failure.
    pub fn commutative(
        &self,
    ) -> Result<(bool, Option<NonCommutativeWitness>), GroupError> {
        let interval = IntervalAlgebra {
            presentation: self.presentation.clone(),
            unit: self.unit.clone(),
            realization: Realization::Lazy { notice: String::new() },
        };
        for a in &self.elements {
            for b in &self.elements {
                let ab = self.presentation.add(a, b)?;
                let ba = self.presentation.add(b, a)?;
                let def_ab = interval.contains(&ab)? == Membership::In;
                let def_ba = interval.contains(&ba)? == Membership::In;
                if def_ab != def_ba || (def_ab && ab != ba) {
                    return Ok((
                        false,
                        Some(NonCommutativeWitness {
                            a: a.clone(),
                            b: b.clone(),
                            a_plus_b: def_ab.then_some(ab),
                            b_plus_a: def_ba.then_some(ba),
                        }),
                    ));
                }
            }
        }
        Ok((true, None))
    }
}

/// Witness that two interval elements fail to commute.
#[derive(Debug, Clone)]
pub struct NonCommutativeWitness {
    pub a: GroupElement,
    pub b: GroupElement,
    pub a_plus_b: Option<GroupElement>,
    pub b_plus_a: Option<GroupElement>,
}

/// Builds the window table of a (typically lazy) interval at the given
/// coordinate radius.
pub fn window_table(
    presentation: &PoGroupPresentation,
    unit: &GroupElement,
    radius: i64,
) -> Result<WindowTable, GroupError> {
    if radius < 1 {
        return Err(GroupError::RadiusZero);
    }
    if unit.max_abs() > radius {
        return Err(GroupError::WindowExcludesUnit {
            radius,
            unit: unit.to_string(),
        });
    }
    let interval = IntervalAlgebra {
        presentation: presentation.clone(),
        unit: unit.clone(),
        realization: Realization::Lazy { notice: String::new() },
    };
    let mut elements = Vec::new();
    for g in coordinate_box(presentation.rank(), radius) {
        if interval.contains(&g)? == Membership::In {
            elements.push(g);
        }
    }
    elements.sort();
    let zero = presentation.zero_element();
    let zero_pos = elements.iter().position(|e| *e == zero).expect("0 in window");
    elements.remove(zero_pos);
    elements.insert(0, zero);
    let index: BTreeMap<GroupElement, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let one_id = *index.get(unit).expect("unit in window");

    let n = elements.len();
    let mut cells = vec![WindowCell::Undefined; n * n];
    for i in 0..n {
        for j in 0..n {
            let s = presentation.add(&elements[i], &elements[j])?;
            cells[i * n + j] = match interval.contains(&s)? {
                Membership::Out => WindowCell::Undefined,
                Membership::Unknown => WindowCell::Unknown,
                Membership::In => match index.get(&s) {
                    Some(&k) => WindowCell::Defined(k),
                    None => WindowCell::Unknown,
                },
            };
        }
    }
    Ok(WindowTable {
        presentation: presentation.clone(),
        unit: unit.clone(),
        radius,
        elements,
        zero_id: 0,
        one_id,
        cells,
    })
}

/// A state on the ambient group, determined by its generator values.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupState {
    pub generator_values: Vec<BigRational>,
}

impl GroupState {
    pub fn eval(&self, g: &GroupElement) -> BigRational {
        let mut acc = BigRational::zero();
        for (v, &c) in self.generator_values.iter().zip(&g.0) {
            acc += v * BigRational::from_integer(c.into());
        }
        acc
    }
}

/// Extends a state on a finite interval algebra to a state on `(G, u)`.
///
/// The extension sums a state over interval decompositions of cone
/// elements; well-definedness is checked by comparing every pair of
/// length-two decompositions with equal coordinate sums before solving for
/// the generator values. A disagreement means the presentation lacks the
/// Riesz decomposition property on the tested window.
pub fn extend_state(
    interval: &IntervalAlgebra,
    s: &StateVector,
) -> Result<GroupState, GroupError> {
    let fin = interval.finite().ok_or(GroupError::NotFinite)?;
    if !matches!(
        interval.presentation,
        PoGroupPresentation::FreeAbelian { .. }
    ) {
        // Coordinate sums below agree with group sums only for the Abelian
        // variants, and those are the only finitely realized ones.
        return Err(GroupError::NotFinite);
    }
    s.validate(&fin.table)
        .map_err(|e| GroupError::State(e.to_string()))?;

    let n = fin.elements.len();
    let mut sums: BTreeMap<Vec<i64>, (BigRational, (usize, usize))> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let mut coords = fin.elements[i].0.clone();
            for (c, &x) in coords.iter_mut().zip(&fin.elements[j].0) {
                *c += x;
            }
            let value = s.value(ElementId(i)) + s.value(ElementId(j));
            match sums.get(&coords) {
                None => {
                    sums.insert(coords, (value, (i, j)));
                }
                Some((prev, (pi, pj))) => {
                    if *prev != value {
                        return Err(GroupError::ExtensionIllDefined(format!(
                            "decompositions {} + {} and {} + {} of the same group element \
                             have different state sums",
                            fin.elements[*pi], fin.elements[*pj], fin.elements[i],
                            fin.elements[j],
                        )));
                    }
                }
            }
        }
    }

    let rank = interval.presentation.rank();
    let system: Vec<(Vec<BigRational>, BigRational)> = fin
        .elements
        .iter()
        .enumerate()
        .map(|(i, e)| {
            (
                e.0.iter()
                    .map(|&c| BigRational::from_integer(c.into()))
                    .collect(),
                s.value(ElementId(i)),
            )
        })
        .collect();
    match linalg::solve(&system, rank) {
        Solution::Inconsistent => Err(GroupError::ExtensionIllDefined(
            "interval state equations are inconsistent as linear constraints".into(),
        )),
        Solution::Affine {
            particular,
            nullspace,
        } => {
            if !nullspace.is_empty() {
                return Err(GroupError::NonSpanningInterval);
            }
            Ok(GroupState {
                generator_values: particular,
            })
        }
    }
}

/// Restricts a group state to the interval elements, validating the result
/// as a state on the interval table.
pub fn restrict_state(
    gs: &GroupState,
    interval: &IntervalAlgebra,
) -> Result<StateVector, GroupError> {
    let fin = interval.finite().ok_or(GroupError::NotFinite)?;
    if gs.eval(&interval.unit) != BigRational::one() {
        return Err(GroupError::UnitNotNormalized);
    }
    let mut values = Vec::with_capacity(fin.elements.len());
    for e in &fin.elements {
        let v = gs.eval(e);
        if v.is_negative() {
            return Err(GroupError::NegativeOnCone(e.to_string()));
        }
        values.push(v);
    }
    let sv = StateVector::new(values);
    sv.validate(&fin.table)
        .map_err(|e| GroupError::State(e.to_string()))?;
    Ok(sv)
}
