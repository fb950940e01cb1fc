//! Finite pseudo effect algebras as validated partial-addition tables.
//!
//! A pseudo effect algebra is a partial algebra `(E; +, 0, 1)` such that for
//! all `a, b, c`:
//!
//! 1. `a+b` and `(a+b)+c` exist iff `b+c` and `a+(b+c)` exist, and then
//!    `(a+b)+c = a+(b+c)`;
//! 2. there is exactly one `d` and exactly one `e` with `a+d = e+a = 1`;
//! 3. if `a+b` exists there are `d, e` with `a+b = d+a = b+e`;
//! 4. if `1+a` or `a+1` exists then `a = 0`.
//!
//! The induced order is `a <= b` iff `a + c = b` for some `c`, equivalently
//! iff `d + a = b` for some `d`. Definedness is first-class: lookups outside
//! the domain of `+` report "undefined", never a default element.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

/// Index of an element of the carrier. Indices are dense `0..n`; index
/// `0` is reserved conventionally for the algebra's zero by the standard
/// constructors, but the table records both constants explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElementId(pub usize);

impl std::fmt::Display for ElementId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Structural problems that are not axiom violations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("carrier must contain at least the two distinct constants 0 and 1")]
    CarrierTooSmall,
    #[error("zero index {0} out of range for carrier of size {1}")]
    ZeroOutOfRange(usize, usize),
    #[error("one index {0} out of range for carrier of size {1}")]
    OneOutOfRange(usize, usize),
    #[error("zero and one must be distinct elements")]
    ZeroEqualsOne,
    #[error("table entry {a} + {b} = {c} references an element out of range")]
    EntryOutOfRange { a: usize, b: usize, c: usize },
    #[error("label list has {0} entries for carrier of size {1}")]
    LabelCountMismatch(usize, usize),
    #[error(
        "order characterizations disagree at ({a}, {b}): right-addition and \
         left-addition existentials differ; the table is not a pseudo effect algebra"
    )]
    OrderCharacterizationMismatch { a: ElementId, b: ElementId },
    #[error("difference undefined: {a} is not below {b}")]
    UndefinedDifference { a: ElementId, b: ElementId },
    #[error("difference of {a} and {b} is not unique; the table is not a pseudo effect algebra")]
    NonUniqueDifference { a: ElementId, b: ElementId },
    #[error("meet of {a} and {b} does not exist in the table")]
    MeetMissing { a: ElementId, b: ElementId },
}

/// A finite pseudo effect algebra candidate: a partial addition table with
/// distinguished constants. Immutable once constructed; all operations are
/// pure scans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTable {
    size: usize,
    plus: BTreeMap<(ElementId, ElementId), ElementId>,
    zero: ElementId,
    one: ElementId,
    labels: Vec<String>,
    name: Option<String>,
}

/// One axiom violation with a minimal witness tuple.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomViolation {
    /// `"i"`, `"ii"`, `"iii"` or `"iv"`.
    pub axiom: &'static str,
    pub witness: Vec<ElementId>,
    pub detail: String,
}

/// Result of checking the four defining axioms.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub violations: Vec<AxiomViolation>,
}

/// The derived partial order as a dense boolean matrix.
#[derive(Debug, Clone)]
pub struct OrderRelation {
    size: usize,
    leq: Vec<bool>,
}

impl OrderRelation {
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.leq[a.0 * self.size + b.0]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Elements below `a`, ascending by id.
    pub fn down_set(&self, a: ElementId) -> Vec<ElementId> {
        (0..self.size)
            .map(ElementId)
            .filter(|&x| self.leq(x, a))
            .collect()
    }
}

impl FiniteTable {
    /// Builds a table from explicit cells. Only structural well-formedness is
    /// checked here; run [`FiniteTable::validate_axioms`] for the algebra laws.
    pub fn new(
        size: usize,
        zero: usize,
        one: usize,
        cells: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self, TableError> {
        if size < 2 {
            return Err(TableError::CarrierTooSmall);
        }
        if zero >= size {
            return Err(TableError::ZeroOutOfRange(zero, size));
        }
        if one >= size {
            return Err(TableError::OneOutOfRange(one, size));
        }
        if zero == one {
            return Err(TableError::ZeroEqualsOne);
        }
        let mut plus = BTreeMap::new();
        for (a, b, c) in cells {
            if a >= size || b >= size || c >= size {
                return Err(TableError::EntryOutOfRange { a, b, c });
            }
            plus.insert((ElementId(a), ElementId(b)), ElementId(c));
        }
        Ok(FiniteTable {
            size,
            plus,
            zero: ElementId(zero),
            one: ElementId(one),
            labels: (0..size).map(|i| format!("e{i}")).collect(),
            name: None,
        })
    }

    /// Same as [`FiniteTable::new`] but also inserts the identity sums
    /// `0 + x = x + 0 = x` for every element.
    pub fn with_identity_sums(
        size: usize,
        zero: usize,
        one: usize,
        cells: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self, TableError> {
        let mut t = Self::new(size, zero, one, cells)?;
        for i in 0..size {
            t.plus.entry((t.zero, ElementId(i))).or_insert(ElementId(i));
            t.plus.entry((ElementId(i), t.zero)).or_insert(ElementId(i));
        }
        Ok(t)
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<(), TableError> {
        if labels.len() != self.size {
            return Err(TableError::LabelCountMismatch(labels.len(), self.size));
        }
        self.labels = labels;
        Ok(())
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
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

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self, a: ElementId) -> &str {
        &self.labels[a.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.size).map(ElementId)
    }

    /// The partial sum; `None` means undefined.
    pub fn plus(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        self.plus.get(&(a, b)).copied()
    }

    pub fn is_defined(&self, a: ElementId, b: ElementId) -> bool {
        self.plus.contains_key(&(a, b))
    }

    /// Defined cells in ascending `(a, b)` order.
    pub fn defined_sums(&self) -> impl Iterator<Item = (ElementId, ElementId, ElementId)> + '_ {
        self.plus.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    /// Structural equality of the partial operation, ignoring labels and name.
    pub fn same_algebra(&self, other: &FiniteTable) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.one == other.one
            && self.plus == other.plus
    }

    /// Returns a copy with one cell removed.
    pub fn with_cell_removed(&self, a: ElementId, b: ElementId) -> FiniteTable {
        let mut t = self.clone();
        t.plus.remove(&(a, b));
        t
    }

    /// Returns a copy with one cell redirected to `c`.
    pub fn with_cell_set(&self, a: ElementId, b: ElementId, c: ElementId) -> FiniteTable {
        let mut t = self.clone();
        t.plus.insert((a, b), c);
        t
    }

    /// Checks axioms (i)-(iv) exhaustively and reports every violation with
    /// its witness tuple. Scans ascend in element-id order, so witness lists
    /// are deterministic.
    pub fn validate_axioms(&self) -> AxiomReport {
        self.validate_axioms_inner(false)
    }

    /// Like [`FiniteTable::validate_axioms`] but stops at the first violation.
    pub fn validate_axioms_fail_fast(&self) -> AxiomReport {
        self.validate_axioms_inner(true)
    }

    fn validate_axioms_inner(&self, fail_fast: bool) -> AxiomReport {
        let mut violations = Vec::new();
        let n = self.size;

        // (i) conditional associativity, including definedness domains.
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (a, b, c) = (ElementId(a), ElementId(b), ElementId(c));
                    let left = self.plus(a, b).and_then(|ab| self.plus(ab, c));
                    let right = self.plus(b, c).and_then(|bc| self.plus(a, bc));
                    let violated = match (left, right) {
                        (Some(l), Some(r)) => l != r,
                        (None, None) => false,
                        _ => true,
                    };
                    if violated {
                        violations.push(AxiomViolation {
                            axiom: "i",
                            witness: vec![a, b, c],
                            detail: format!(
                                "({}+{})+{} is {}, {}+({}+{}) is {}",
                                self.label(a),
                                self.label(b),
                                self.label(c),
                                left.map_or("undefined".into(), |x| self.label(x).to_string()),
                                self.label(a),
                                self.label(b),
                                self.label(c),
                                right.map_or("undefined".into(), |x| self.label(x).to_string()),
                            ),
                        });
                        if fail_fast {
                            break 'outer;
                        }
                    }
                }
            }
        }

        // (ii) unique right and left complements.
        for a in self.elements() {
            if fail_fast && !violations.is_empty() {
                break;
            }
            let rights: Vec<ElementId> = self
                .elements()
                .filter(|&d| self.plus(a, d) == Some(self.one))
                .collect();
            if rights.len() != 1 {
                violations.push(AxiomViolation {
                    axiom: "ii",
                    witness: vec![a],
                    detail: format!(
                        "{} right complements solve {} + d = 1",
                        rights.len(),
                        self.label(a)
                    ),
                });
            }
            let lefts: Vec<ElementId> = self
                .elements()
                .filter(|&e| self.plus(e, a) == Some(self.one))
                .collect();
            if lefts.len() != 1 {
                violations.push(AxiomViolation {
                    axiom: "ii",
                    witness: vec![a],
                    detail: format!(
                        "{} left complements solve e + {} = 1",
                        lefts.len(),
                        self.label(a)
                    ),
                });
            }
        }

        // (iii) every defined sum commutes through a translation:
        // a+b = d+a = b+e for some d, e.
        for (a, b, ab) in self.defined_sums() {
            if fail_fast && !violations.is_empty() {
                break;
            }
            let has_d = self.elements().any(|d| self.plus(d, a) == Some(ab));
            let has_e = self.elements().any(|e| self.plus(b, e) == Some(ab));
            if !has_d || !has_e {
                violations.push(AxiomViolation {
                    axiom: "iii",
                    witness: vec![a, b],
                    detail: format!(
                        "{}+{}={} but no d with d+{}={} or no e with {}+e={}",
                        self.label(a),
                        self.label(b),
                        self.label(ab),
                        self.label(a),
                        self.label(ab),
                        self.label(b),
                        self.label(ab),
                    ),
                });
            }
        }

        // (iv) one is absorbing only trivially.
        for a in self.elements() {
            if fail_fast && !violations.is_empty() {
                break;
            }
            if a != self.zero && (self.is_defined(self.one, a) || self.is_defined(a, self.one)) {
                violations.push(AxiomViolation {
                    axiom: "iv",
                    witness: vec![a],
                    detail: format!("1 + {} or {} + 1 is defined", self.label(a), self.label(a)),
                });
            }
        }

        AxiomReport {
            passed: violations.is_empty(),
            violations,
        }
    }

    /// Derives the order `a <= b iff a + c = b for some c`, and verifies
    /// that the left characterization `d + a = b` agrees on every pair.
    pub fn derive_order(&self) -> Result<OrderRelation, TableError> {
        let n = self.size;
        let mut leq = vec![false; n * n];
        for a in self.elements() {
            for b in self.elements() {
                let right = self.elements().any(|c| self.plus(a, c) == Some(b));
                let left = self.elements().any(|d| self.plus(d, a) == Some(b));
                if right != left {
                    return Err(TableError::OrderCharacterizationMismatch { a, b });
                }
                leq[a.0 * n + b.0] = right;
            }
        }
        Ok(OrderRelation { size: n, leq })
    }

    /// The unique `d` with `d + a = b`, written `b \ a` in the literature.
    pub fn left_minus(&self, a: ElementId, b: ElementId) -> Result<ElementId, TableError> {
        let ds: Vec<ElementId> = self
            .elements()
            .filter(|&d| self.plus(d, a) == Some(b))
            .collect();
        match ds.len() {
            0 => Err(TableError::UndefinedDifference { a, b }),
            1 => Ok(ds[0]),
            _ => Err(TableError::NonUniqueDifference { a, b }),
        }
    }

    /// The unique `c` with `a + c = b`, written `a / b` in the literature.
    pub fn right_minus(&self, a: ElementId, b: ElementId) -> Result<ElementId, TableError> {
        let cs: Vec<ElementId> = self
            .elements()
            .filter(|&c| self.plus(a, c) == Some(b))
            .collect();
        match cs.len() {
            0 => Err(TableError::UndefinedDifference { a, b }),
            1 => Ok(cs[0]),
            _ => Err(TableError::NonUniqueDifference { a, b }),
        }
    }

    /// `(a^-, a~)` with `a^- + a = 1` and `a + a~ = 1`.
    pub fn complements(&self, a: ElementId) -> Result<(ElementId, ElementId), TableError> {
        let minus = self.left_minus(a, self.one)?;
        let tilde = self.right_minus(a, self.one)?;
        Ok((minus, tilde))
    }

    /// True iff the definedness domain of `+` is symmetric and values agree:
    /// for all `a, b`, `a+b` defined iff `b+a` defined, and then equal.
    pub fn is_commutative(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.plus(a, b) == self.plus(b, a))
        })
    }

    /// True iff `a^- = a~` for every element.
    pub fn is_symmetric(&self) -> Result<bool, TableError> {
        for a in self.elements() {
            let (minus, tilde) = self.complements(a)?;
            if minus != tilde {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether a single pair commutes: the two sums have the same definedness
    /// and agree when defined.
    pub fn elements_commute(&self, x: ElementId, y: ElementId) -> bool {
        self.plus(x, y) == self.plus(y, x)
    }

    /// The `com` relation: every `a1 <= a` and `b1 <= b` commute.
    pub fn com(&self, order: &OrderRelation, a: ElementId, b: ElementId) -> bool {
        let below_a = order.down_set(a);
        let below_b = order.down_set(b);
        below_a
            .iter()
            .all(|&x| below_b.iter().all(|&y| self.elements_commute(x, y)))
    }

    /// First witness pair `(a1, b1)` with `a1 <= a`, `b1 <= b` failing to
    /// commute, in ascending id order.
    pub fn com_witness(
        &self,
        order: &OrderRelation,
        a: ElementId,
        b: ElementId,
    ) -> Option<(ElementId, ElementId)> {
        for x in order.down_set(a) {
            for y in order.down_set(b) {
                if !self.elements_commute(x, y) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Greatest lower bound under the derived order, if it exists.
    pub fn partial_meet(
        &self,
        order: &OrderRelation,
        a: ElementId,
        b: ElementId,
    ) -> Option<ElementId> {
        let lower: Vec<ElementId> = self
            .elements()
            .filter(|&c| order.leq(c, a) && order.leq(c, b))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&c| lower.iter().all(|&x| order.leq(x, c)))
    }

    /// Least upper bound under the derived order, if it exists.
    pub fn partial_join(
        &self,
        order: &OrderRelation,
        a: ElementId,
        b: ElementId,
    ) -> Option<ElementId> {
        let upper: Vec<ElementId> = self
            .elements()
            .filter(|&c| order.leq(a, c) && order.leq(b, c))
            .collect();
        upper
            .iter()
            .copied()
            .find(|&c| upper.iter().all(|&x| order.leq(c, x)))
    }
}
