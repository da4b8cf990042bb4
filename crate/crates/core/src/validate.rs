//! Defining-property checks: general position, unique face incidence (UFI),
//! 2-faces, V-graph status and the simple Venn property.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::map::{CurveSet, Dart, PlaneGraph};

/// Inside/outside membership for each curve: bit `c` set iff inside curve `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegionLabel {
    pub bits: u64,
    pub n: usize,
}

impl fmt::Display for RegionLabel {
    /// Binary with curve 0 as the rightmost digit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.n.max(1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositionViolation {
    SelfCrossing { vertex: usize },
    SameCurveCrossing { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralPosition {
    pub ok: bool,
    pub violations: Vec<PositionViolation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UfiViolation {
    pub face: usize,
    pub curve: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VennReport {
    pub n: usize,
    pub face_count: usize,
    pub distinct_labels: usize,
    /// Labels of every face, indexed by face id, relative to the root face.
    pub labels: Vec<RegionLabel>,
    pub missing_labels: Vec<RegionLabel>,
    pub duplicated_labels: Vec<RegionLabel>,
    pub is_simple_venn: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub curve_count: Option<usize>,
    pub is_general_position: bool,
    pub position_violations: Vec<PositionViolation>,
    pub is_connected: bool,
    pub ufi_violations: Vec<UfiViolation>,
    pub two_faces: Vec<usize>,
    pub digon_faces: Vec<usize>,
    pub is_vgraph: bool,
    pub venn: Option<VennReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VennError {
    #[error("graph is not in general position")]
    NotGeneralPosition,
    #[error("graph is not connected")]
    Disconnected,
    #[error("{n} curves exceed the 63-bit label width")]
    TooManyCurves { n: usize },
    #[error("region labels are inconsistent across dart {dart}")]
    InconsistentLabeling { dart: Dart },
}

/// How many times each label must occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VennMode {
    /// Every label exactly once (a Venn diagram).
    #[default]
    Exact,
    /// Every label at least once (an independent family).
    AtLeastOnce,
}

/// Structural general-position check. Never fails; violations are listed.
pub fn check_general_position(g: &PlaneGraph) -> GeneralPosition {
    let mut violations = Vec::new();
    let orbits = g.curve_orbits();
    let mut orbit_of = vec![0usize; g.dart_count()];
    for (i, orbit) in orbits.iter().enumerate() {
        let mut seen = BTreeSet::new();
        for &d in orbit {
            orbit_of[d.index()] = i;
            if !seen.insert(d.vertex()) {
                violations.push(PositionViolation::SelfCrossing { vertex: d.vertex() });
            }
        }
    }
    // A vertex whose two strands lie on one curve: the strands' orbits are
    // equal or mutually reverse.
    for v in 0..g.vertex_count() {
        let a = Dart::new(v, 0);
        let b = Dart::new(v, 1);
        let oa = orbit_of[a.index()];
        let oa_rev = orbit_of[g.twin(a).index()];
        let ob = orbit_of[b.index()];
        if ob == oa || ob == oa_rev {
            violations.push(PositionViolation::SameCurveCrossing { vertex: v });
        }
    }
    violations.sort_by_key(|v| match *v {
        PositionViolation::SelfCrossing { vertex } => (vertex, 0),
        PositionViolation::SameCurveCrossing { vertex } => (vertex, 1),
    });
    violations.dedup();
    GeneralPosition {
        ok: violations.is_empty(),
        violations,
    }
}

fn face_curve_counts(g: &PlaneGraph, curves: &CurveSet) -> Vec<BTreeMap<usize, usize>> {
    g.faces()
        .iter()
        .map(|f| {
            let mut counts = BTreeMap::new();
            for &d in &f.boundary {
                *counts.entry(curves.curve_of(d)).or_insert(0) += 1;
            }
            counts
        })
        .collect()
}

/// Every `(face, curve)` with two or more boundary edges of that curve.
pub fn check_ufi(g: &PlaneGraph, curves: &CurveSet) -> Vec<UfiViolation> {
    let mut out = Vec::new();
    for (face, counts) in face_curve_counts(g, curves).into_iter().enumerate() {
        for (curve, count) in counts {
            if count >= 2 {
                out.push(UfiViolation { face, curve, count });
            }
        }
    }
    out
}

/// Faces incident to exactly two curves.
pub fn two_faces(g: &PlaneGraph, curves: &CurveSet) -> Vec<usize> {
    face_curve_counts(g, curves)
        .into_iter()
        .enumerate()
        .filter(|(_, counts)| counts.len() == 2)
        .map(|(f, _)| f)
        .collect()
}

/// Faces bounded by exactly two edges.
pub fn digon_faces(g: &PlaneGraph) -> Vec<usize> {
    g.faces()
        .iter()
        .filter(|f| f.len() == 2)
        .map(|f| f.id)
        .collect()
}

/// Full V-graph report. `venn` is filled whenever labels can be computed.
pub fn validate(g: &PlaneGraph) -> ValidationReport {
    let position = check_general_position(g);
    let is_connected = g.is_connected();
    let curves = if position.ok { g.curves().ok() } else { None };
    let (ufi_violations, two, venn) = match &curves {
        Some(cs) => {
            let venn = if is_connected {
                venn_check_with(g, cs, VennMode::Exact).ok()
            } else {
                None
            };
            (check_ufi(g, cs), two_faces(g, cs), venn)
        }
        None => (Vec::new(), Vec::new(), None),
    };
    let curve_count = curves.as_ref().map(CurveSet::len);
    let is_vgraph = position.ok
        && is_connected
        && curve_count.is_some_and(|n| n >= 3)
        && ufi_violations.is_empty();
    ValidationReport {
        curve_count,
        is_general_position: position.ok,
        position_violations: position.violations,
        is_connected,
        ufi_violations,
        two_faces: two,
        digon_faces: digon_faces(g),
        is_vgraph,
        venn,
    }
}

pub fn is_vgraph(g: &PlaneGraph) -> (bool, ValidationReport) {
    let report = validate(g);
    (report.is_vgraph, report)
}

pub fn venn_check(g: &PlaneGraph) -> Result<VennReport, VennError> {
    venn_check_mode(g, VennMode::Exact)
}

pub fn venn_check_mode(g: &PlaneGraph, mode: VennMode) -> Result<VennReport, VennError> {
    if !check_general_position(g).ok {
        return Err(VennError::NotGeneralPosition);
    }
    let curves = g.curves().map_err(|_| VennError::NotGeneralPosition)?;
    venn_check_with(g, &curves, mode)
}

/// Label faces by a BFS over the dual from the root face (the outer face
/// when the graph declares one, otherwise face 0). Crossing an edge of
/// curve `c` flips bit `c`.
pub fn venn_check_with(
    g: &PlaneGraph,
    curves: &CurveSet,
    mode: VennMode,
) -> Result<VennReport, VennError> {
    if !g.is_connected() {
        return Err(VennError::Disconnected);
    }
    let n = curves.len();
    if n > 63 {
        return Err(VennError::TooManyCurves { n });
    }
    let root = g.outer().map(|d| g.face_of(d)).unwrap_or(0);
    let face_count = g.face_count();
    let mut label: Vec<Option<u64>> = vec![None; face_count];
    label[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(f) = queue.pop_front() {
        let here = label[f].expect("queued faces are labelled");
        for &d in &g.faces()[f].boundary {
            let across = g.face_of(g.twin(d));
            let expect = here ^ (1u64 << curves.curve_of(d));
            match label[across] {
                None => {
                    label[across] = Some(expect);
                    queue.push_back(across);
                }
                Some(existing) if existing != expect => {
                    return Err(VennError::InconsistentLabeling { dart: d });
                }
                Some(_) => {}
            }
        }
    }
    let labels: Vec<RegionLabel> = label
        .into_iter()
        .map(|b| RegionLabel {
            bits: b.expect("connected graph labels every face"),
            n,
        })
        .collect();

    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for l in &labels {
        *counts.entry(l.bits).or_insert(0) += 1;
    }
    let duplicated_labels = counts
        .iter()
        .filter(|&(_, &c)| c > 1)
        .map(|(&bits, _)| RegionLabel { bits, n })
        .collect();
    // Missing labels are only enumerated for widths where that is sensible.
    let missing_labels = if n <= 20 {
        (0..1u64 << n)
            .filter(|b| !counts.contains_key(b))
            .map(|bits| RegionLabel { bits, n })
            .collect()
    } else {
        Vec::new()
    };
    let all_present = n < 64 && counts.len() as u64 == 1u64 << n;
    let is_simple_venn = match mode {
        VennMode::Exact => all_present && face_count as u64 == 1u64 << n,
        VennMode::AtLeastOnce => all_present,
    };
    Ok(VennReport {
        n,
        face_count,
        distinct_labels: counts.len(),
        labels,
        missing_labels,
        duplicated_labels,
        is_simple_venn,
    })
}
