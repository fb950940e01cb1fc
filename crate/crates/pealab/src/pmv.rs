//! Pseudo MV-algebras as total algebras `(M; oplus, -, ~, 0, 1)`.
//!
//! The eight defining axioms are checked exhaustively, with the derived
//! product `y (.) x = (x^- (+) y^-)~` used in A6 and A7. Tables satisfying
//! the strong Riesz decomposition property convert to pseudo MV-algebras
//! via `a (+) b = a + (a~ /\ b)`, and every pseudo MV-algebra yields back a
//! partial table by restricting `(+)` to the pairs with `b (.) a = 0`; both
//! constructions are fully re-validated rather than trusted.

use thiserror::Error;

use crate::pea::{AxiomReport, AxiomViolation, ElementId, FiniteTable, TableError};
use crate::riesz;

#[derive(Debug, Error)]
pub enum PmvError {
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("unit must be strictly positive in every coordinate")]
    UnitNotPositive,
    #[error("table does not satisfy the strong Riesz decomposition property")]
    NotRdp2,
    #[error("meet of {a} and {b} does not exist; conversion needs a lattice-ordered table")]
    MeetMissing { a: ElementId, b: ElementId },
    #[error("constructed sum {a} + {b} is undefined; conversion is broken")]
    SumUndefined { a: ElementId, b: ElementId },
    #[error(
        "construction mismatch: the converted algebra fails validation with {violations} \
         violations; this needs investigation, not a silent fallback"
    )]
    ConstructionMismatch { violations: usize },
    #[error("table error: {0}")]
    Table(#[from] TableError),
    #[error("riesz check failed: {0}")]
    Riesz(String),
}

/// A total pseudo MV-algebra table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmvTable {
    size: usize,
    oplus: Vec<ElementId>,
    neg_minus: Vec<ElementId>,
    neg_tilde: Vec<ElementId>,
    zero: ElementId,
    one: ElementId,
    labels: Vec<String>,
}

impl PmvTable {
    pub fn new(
        size: usize,
        zero: usize,
        one: usize,
        oplus: Vec<usize>,
        neg_minus: Vec<usize>,
        neg_tilde: Vec<usize>,
    ) -> Result<Self, PmvError> {
        if size < 2 {
            return Err(PmvError::Shape(
                "carrier must contain distinct 0 and 1".into(),
            ));
        }
        if zero >= size || one >= size || zero == one {
            return Err(PmvError::Shape("constants out of range or equal".into()));
        }
        if oplus.len() != size * size {
            return Err(PmvError::Shape(format!(
                "oplus table has {} entries, need {}",
                oplus.len(),
                size * size
            )));
        }
        if neg_minus.len() != size || neg_tilde.len() != size {
            return Err(PmvError::Shape("negation tables must cover the carrier".into()));
        }
        if oplus
            .iter()
            .chain(&neg_minus)
            .chain(&neg_tilde)
            .any(|&x| x >= size)
        {
            return Err(PmvError::Shape("table entry out of range".into()));
        }
        Ok(PmvTable {
            size,
            oplus: oplus.into_iter().map(ElementId).collect(),
            neg_minus: neg_minus.into_iter().map(ElementId).collect(),
            neg_tilde: neg_tilde.into_iter().map(ElementId).collect(),
            zero: ElementId(zero),
            one: ElementId(one),
            labels: (0..size).map(|i| format!("e{i}")).collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> ElementId {
        self.zero
    }

    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<(), PmvError> {
        if labels.len() != self.size {
            return Err(PmvError::Shape("label count mismatch".into()));
        }
        self.labels = labels;
        Ok(())
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.size).map(ElementId)
    }

    pub fn oplus(&self, a: ElementId, b: ElementId) -> ElementId {
        self.oplus[a.0 * self.size + b.0]
    }

    pub fn neg_minus(&self, a: ElementId) -> ElementId {
        self.neg_minus[a.0]
    }

    pub fn neg_tilde(&self, a: ElementId) -> ElementId {
        self.neg_tilde[a.0]
    }

    /// Derived product: `p (.) q = (q^- (+) p^-)~`.
    pub fn odot(&self, p: ElementId, q: ElementId) -> ElementId {
        self.neg_tilde(self.oplus(self.neg_minus(q), self.neg_minus(p)))
    }
}

/// Exhaustive check of axioms A1-A8.
pub fn validate_pmv(t: &PmvTable) -> AxiomReport {
    let mut violations: Vec<AxiomViolation> = Vec::new();
    let mut fail = |axiom: &'static str, witness: Vec<ElementId>, detail: String| {
        violations.push(AxiomViolation {
            axiom,
            witness,
            detail,
        });
    };

    for x in t.elements() {
        for y in t.elements() {
            for z in t.elements() {
                if t.oplus(t.oplus(x, y), z) != t.oplus(x, t.oplus(y, z)) {
                    fail("A1", vec![x, y, z], "associativity fails".into());
                }
            }
        }
    }
    for x in t.elements() {
        if t.oplus(x, t.zero) != x || t.oplus(t.zero, x) != x {
            fail("A2", vec![x], "0 is not a two-sided unit".into());
        }
        if t.oplus(x, t.one) != t.one || t.oplus(t.one, x) != t.one {
            fail("A3", vec![x], "1 is not absorbing".into());
        }
    }
    if t.neg_tilde(t.one) != t.zero || t.neg_minus(t.one) != t.zero {
        fail("A4", vec![t.one], "negations of 1 are not 0".into());
    }
    for x in t.elements() {
        for y in t.elements() {
            let lhs = t.neg_tilde(t.oplus(t.neg_minus(x), t.neg_minus(y)));
            let rhs = t.neg_minus(t.oplus(t.neg_tilde(x), t.neg_tilde(y)));
            if lhs != rhs {
                fail("A5", vec![x, y], "negation duality fails".into());
            }
        }
    }
    for x in t.elements() {
        for y in t.elements() {
            let v1 = t.oplus(x, t.odot(t.neg_tilde(x), y));
            let v2 = t.oplus(y, t.odot(t.neg_tilde(y), x));
            let v3 = t.oplus(t.odot(x, t.neg_minus(y)), y);
            let v4 = t.oplus(t.odot(y, t.neg_minus(x)), x);
            if !(v1 == v2 && v2 == v3 && v3 == v4) {
                fail("A6", vec![x, y], "join expressions disagree".into());
            }
            let lhs = t.odot(x, t.oplus(t.neg_minus(x), y));
            let rhs = t.odot(t.oplus(x, t.neg_tilde(y)), y);
            if lhs != rhs {
                fail("A7", vec![x, y], "meet expressions disagree".into());
            }
        }
    }
    for x in t.elements() {
        if t.neg_tilde(t.neg_minus(x)) != x {
            fail("A8", vec![x], "negations do not compose to the identity".into());
        }
    }

    AxiomReport {
        passed: violations.is_empty(),
        violations,
    }
}

/// The pseudo MV-algebra of the box `[0, u]` in `Z^n` with truncated
/// addition `x (+) y = (x + y) /\ u` and negations `u - x` and `-x + u`.
pub fn gamma_lgroup(rank: usize, u: &[i64]) -> Result<PmvTable, PmvError> {
    if u.len() != rank || rank == 0 {
        return Err(PmvError::Shape("unit rank mismatch".into()));
    }
    if u.iter().any(|&x| x <= 0) {
        return Err(PmvError::UnitNotPositive);
    }
    let mut elements: Vec<Vec<i64>> = vec![vec![]];
    for &ui in u {
        let mut next = Vec::new();
        for e in &elements {
            for k in 0..=ui {
                let mut v = e.clone();
                v.push(k);
                next.push(v);
            }
        }
        elements = next;
    }
    elements.sort();
    // zero is already first in sorted order
    debug_assert!(elements[0].iter().all(|&x| x == 0));
    let index = |v: &[i64]| elements.iter().position(|e| e == v).unwrap();
    let one = index(u);
    let n = elements.len();
    let mut oplus = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            let sum: Vec<i64> = a
                .iter()
                .zip(b)
                .zip(u)
                .map(|((x, y), &ui)| (x + y).min(ui))
                .collect();
            oplus.push(index(&sum));
        }
    }
    let neg: Vec<usize> = elements
        .iter()
        .map(|a| {
            let v: Vec<i64> = u.iter().zip(a).map(|(&ui, x)| ui - x).collect();
            index(&v)
        })
        .collect();
    let mut t = PmvTable::new(n, 0, one, oplus, neg.clone(), neg)?;
    let labels: Vec<String> = elements
        .iter()
        .map(|e| {
            if rank == 1 {
                e[0].to_string()
            } else {
                let parts: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
        })
        .collect();
    t.set_labels(labels)?;
    let report = validate_pmv(&t);
    if !report.passed {
        return Err(PmvError::ConstructionMismatch {
            violations: report.violations.len(),
        });
    }
    Ok(t)
}

/// Converts a table with the strong Riesz decomposition property into a
/// pseudo MV-algebra via `a (+) b = a + (a~ /\ b)`. The result must pass
/// A1-A8; a failure is surfaced as a construction mismatch.
pub fn pea_to_pmv(table: &FiniteTable) -> Result<PmvTable, PmvError> {
    let ladder = riesz::ladder_report(table).map_err(|e| PmvError::Riesz(e.to_string()))?;
    if !ladder.rdp2.holds {
        return Err(PmvError::NotRdp2);
    }
    let order = table.derive_order()?;
    let n = table.size();
    let mut oplus = Vec::with_capacity(n * n);
    for a in table.elements() {
        let (_, a_tilde) = table.complements(a)?;
        for b in table.elements() {
            let meet = table
                .partial_meet(&order, a_tilde, b)
                .ok_or(PmvError::MeetMissing { a: a_tilde, b })?;
            let sum = table
                .plus(a, meet)
                .ok_or(PmvError::SumUndefined { a, b: meet })?;
            oplus.push(sum.0);
        }
    }
    let mut neg_minus = Vec::with_capacity(n);
    let mut neg_tilde = Vec::with_capacity(n);
    for a in table.elements() {
        let (m, t) = table.complements(a)?;
        neg_minus.push(m.0);
        neg_tilde.push(t.0);
    }
    let mut out = PmvTable::new(n, table.zero().0, table.one().0, oplus, neg_minus, neg_tilde)?;
    out.set_labels(table.labels().to_vec())?;
    let report = validate_pmv(&out);
    if !report.passed {
        return Err(PmvError::ConstructionMismatch {
            violations: report.violations.len(),
        });
    }
    Ok(out)
}

/// Restricts the total sum of a pseudo MV-algebra to the partial sum
/// defined exactly when `b (.) a = 0`, which in an interval realization
/// says `a + b <= u`. The image must validate as a pseudo effect algebra
/// and satisfy the strong Riesz decomposition property.
pub fn pmv_to_pea(t: &PmvTable) -> Result<FiniteTable, PmvError> {
    let report = validate_pmv(t);
    if !report.passed {
        return Err(PmvError::ConstructionMismatch {
            violations: report.violations.len(),
        });
    }
    let mut cells = Vec::new();
    for a in t.elements() {
        for b in t.elements() {
            if t.odot(b, a) == t.zero() {
                cells.push((a.0, b.0, t.oplus(a, b).0));
            }
        }
    }
    let mut out = FiniteTable::new(t.size(), t.zero().0, t.one().0, cells)?;
    out.set_labels(t.labels().to_vec())?;
    let pea_report = out.validate_axioms();
    if !pea_report.passed {
        return Err(PmvError::ConstructionMismatch {
            violations: pea_report.violations.len(),
        });
    }
    let ladder = riesz::ladder_report(&out).map_err(|e| PmvError::Riesz(e.to_string()))?;
    if !ladder.rdp2.holds {
        return Err(PmvError::NotRdp2);
    }
    Ok(out)
}
