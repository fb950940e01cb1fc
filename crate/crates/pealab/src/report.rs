//! Deterministic JSON analysis reports.
//!
//! Reports serialize with sorted keys and exact `p/q` rational strings, so
//! two runs over the same input are byte-identical. Timing is recorded only
//! on request, keeping the default output stable.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::pea::{AxiomReport, FiniteTable};
use crate::pogroup::{NonCommutativeWitness, StrongUnit, WindowTable};
use crate::ratio::format_ratio;
use crate::riesz::{PropertyResult, RieszReport};
use crate::statespace::{Classification, DiscreteMeasure, StatePolytope, StateVector};

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub path: String,
    pub format: String,
    pub sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo {
            name: "pealab".into(),
            version: crate::VERSION.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ViolationJson {
    pub axiom: String,
    pub witness: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomsJson {
    pub passed: bool,
    pub violations: Vec<ViolationJson>,
}

pub fn axioms_json(report: &AxiomReport, labels: &[String]) -> AxiomsJson {
    AxiomsJson {
        passed: report.passed,
        violations: report
            .violations
            .iter()
            .map(|v| ViolationJson {
                axiom: v.axiom.to_string(),
                witness: v.witness.iter().map(|e| labels[e.0].clone()).collect(),
                detail: v.detail.clone(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PropJson {
    pub holds: bool,
    pub witnesses: Vec<WitnessJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub elements: Vec<String>,
    pub note: String,
}

fn prop_json(p: &PropertyResult, labels: &[String]) -> PropJson {
    PropJson {
        holds: p.holds,
        witnesses: p
            .witnesses
            .iter()
            .map(|w| WitnessJson {
                elements: w.elements.iter().map(|e| labels[e.0].clone()).collect(),
                note: w.note.clone(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RieszJson {
    pub rip: PropJson,
    pub rdp0: PropJson,
    pub rdp: PropJson,
    pub rdp1: PropJson,
    pub rdp2: PropJson,
}

pub fn riesz_json(report: &RieszReport, labels: &[String]) -> RieszJson {
    RieszJson {
        rip: prop_json(&report.rip, labels),
        rdp0: prop_json(&report.rdp0, labels),
        rdp: prop_json(&report.rdp, labels),
        rdp1: prop_json(&report.rdp1, labels),
        rdp2: prop_json(&report.rdp2, labels),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureJson {
    pub commutative: bool,
    pub symmetric: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StateSpaceJson {
    pub empty: bool,
    pub dim: i64,
    pub vertices: Vec<Vec<String>>,
    pub class: String,
}

fn vertex_strings(s: &StateVector) -> Vec<String> {
    s.values().iter().map(format_ratio).collect()
}

pub fn state_space_json(p: &StatePolytope, cls: &Classification) -> StateSpaceJson {
    StateSpaceJson {
        empty: p.is_empty(),
        dim: p.affine_dim,
        vertices: p.vertices.iter().map(vertex_strings).collect(),
        class: cls.class.as_str().to_string(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AtomJson {
    pub vertex: Vec<String>,
    pub weight: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureJson {
    pub atoms: Vec<AtomJson>,
}

pub fn measure_json(m: &DiscreteMeasure) -> MeasureJson {
    MeasureJson {
        atoms: m
            .atoms
            .iter()
            .map(|(v, w)| AtomJson {
                vertex: vertex_strings(v),
                weight: format_ratio(w),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionJson {
    pub state: Vec<String>,
    pub measure: MeasureJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_witness: Option<MeasureJson>,
    pub unique_among_fans_only: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PmvJson {
    pub rdp2: bool,
    pub converted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub round_trip_identity: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex_sets_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NonCommutativeWitnessJson {
    pub a: String,
    pub b: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_plus_b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_plus_a: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WindowJson {
    pub notice: String,
    pub radius: i64,
    pub elements: usize,
    pub symmetric: bool,
    pub commutative: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noncommutative_witness: Option<NonCommutativeWitnessJson>,
}

pub fn window_json(
    w: &WindowTable,
    notice: &str,
    symmetric: bool,
    commutative: bool,
    witness: Option<&NonCommutativeWitness>,
) -> WindowJson {
    WindowJson {
        notice: notice.to_string(),
        radius: w.radius,
        elements: w.len(),
        symmetric,
        commutative,
        noncommutative_witness: witness.map(|wit| NonCommutativeWitnessJson {
            a: wit.a.to_string(),
            b: wit.b.to_string(),
            a_plus_b: wit.a_plus_b.as_ref().map(|x| x.to_string()),
            b_plus_a: wit.b_plus_a.as_ref().map(|x| x.to_string()),
        }),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupJson {
    pub variant: String,
    pub rank: usize,
    pub unit: String,
    pub strong_unit_bounds: Vec<UnitBoundJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitBoundJson {
    pub generator: String,
    pub multiplier: u32,
}

pub fn group_json(variant: String, rank: usize, su: &StrongUnit) -> GroupJson {
    GroupJson {
        variant,
        rank,
        unit: su.unit.to_string(),
        strong_unit_bounds: su
            .bounds
            .iter()
            .map(|(g, n)| UnitBoundJson {
                generator: g.clone(),
                multiplier: *n,
            })
            .collect(),
    }
}

/// The full analysis document.
#[derive(Debug, Clone, Serialize, Default)]
pub struct AnalysisReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputInfo>,
    pub tool: ToolInfo,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub riesz: Option<RieszJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state_space: Option<StateSpaceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pmv: Option<PmvJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    /// Milliseconds; populated only when timing is requested, so default
    /// reports stay byte-identical across runs.
    pub timing_ms: Option<u128>,
}

impl Default for InputInfo {
    fn default() -> Self {
        InputInfo {
            path: String::new(),
            format: String::new(),
            sha256: String::new(),
            name: None,
            elements: None,
        }
    }
}

/// SHA-256 of the input bytes, hex encoded.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Canonical rendering: keys sorted, two-space indentation, trailing
/// newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report serialization cannot fail");
    let mut s = serde_json::to_string_pretty(&v).expect("value rendering cannot fail");
    s.push('\n');
    s
}

pub fn input_info(path: &str, format: &str, contents: &[u8], table: Option<&FiniteTable>) -> InputInfo {
    InputInfo {
        path: path.to_string(),
        format: format.to_string(),
        sha256: sha256_hex(contents),
        name: table.and_then(|t| t.name().map(String::from)),
        elements: table.map(|t| t.size()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::statespace;

    #[test]
    fn canonical_json_sorts_keys_and_is_stable() {
        let t = corpus::chain(2);
        let sys = statespace::build_hrep(&t);
        let p = statespace::enumerate_states(&sys).unwrap();
        let cls = statespace::classify(&p);
        let mut report = AnalysisReport::default();
        report.axioms = Some(axioms_json(&t.validate_axioms(), t.labels()));
        report.state_space = Some(state_space_json(&p, &cls));
        let a = to_canonical_json(&report);
        let b = to_canonical_json(&report);
        assert_eq!(a, b);
        // sorted keys: "axioms" precedes "seed" precedes "state_space"
        let ai = a.find("\"axioms\"").unwrap();
        let si = a.find("\"seed\"").unwrap();
        let ssi = a.find("\"state_space\"").unwrap();
        assert!(ai < si && si < ssi);
        // exact rationals, never decimals: the chain vertex is (0, 1/2, 1)
        assert!(a.contains("\"1/2\""));
        assert!(!a.contains("0.5"));
    }

    #[test]
    fn sha256_is_stable() {
        assert_eq!(
            sha256_hex(b"hello"),
            "2cf24dba5fb0a30e26e83b2ac5b9e29e1b161e5c1fa7425e73043362938b9824"
        );
    }
}
