//! Core domain types for data flow diagrams.
//!
//! A [`Project`] is an ordered list of [`Diagram`]s: one context diagram plus
//! any number of decomposition diagrams, each refining a single process of a
//! higher level. Diagrams own four element sets (processes, flows, stores,
//! external entities). Everything is immutable after construction; the
//! checkers in [`crate::syntax`] and [`crate::consistency`] are pure functions
//! over these types.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::diagnostics::{Code, Diagnostic, Subject};

/// A normalized element name.
///
/// Normalization applies Unicode canonical composition, trims surrounding
/// whitespace, and collapses internal whitespace runs to a single space.
/// Comparison is case-sensitive on the normalized form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NameError {
    #[error("name is empty after normalization")]
    EmptyName,
}

impl Name {
    pub fn new(raw: &str) -> Result<Self, NameError> {
        let composed: String = raw.nfc().collect();
        let mut out = String::with_capacity(composed.len());
        let mut pending_space = false;
        for ch in composed.chars() {
            if ch.is_whitespace() {
                pending_space = !out.is_empty();
            } else {
                if pending_space {
                    out.push(' ');
                    pending_space = false;
                }
                out.push(ch);
            }
        }
        if out.is_empty() {
            return Err(NameError::EmptyName);
        }
        Ok(Name(out))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A dotted-decimal process number, e.g. `0`, `2`, `2.3`.
///
/// Segments carry no leading zeros; the lone segment `0` is reserved for the
/// context diagram's single process.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProcessId(String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProcessIdError {
    #[error("process number is empty")]
    Empty,
    #[error("process number '{0}' is not dotted-decimal")]
    Malformed(String),
    #[error("process number '{0}' has a leading zero")]
    LeadingZero(String),
}

impl ProcessId {
    pub fn new(raw: &str) -> Result<Self, ProcessIdError> {
        if raw.is_empty() {
            return Err(ProcessIdError::Empty);
        }
        for segment in raw.split('.') {
            if segment.is_empty() || !segment.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ProcessIdError::Malformed(raw.to_owned()));
            }
            if segment.len() > 1 && segment.starts_with('0') {
                return Err(ProcessIdError::LeadingZero(raw.to_owned()));
            }
        }
        Ok(ProcessId(raw.to_owned()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn segments(&self) -> impl Iterator<Item = &str> {
        self.0.split('.')
    }

    /// The reserved number of the context diagram's sole process.
    pub fn is_context_root(&self) -> bool {
        self.0 == "0"
    }

    /// True when this number sits anywhere below `focus` in the numbering
    /// tree. Everything except `0` itself sits below the context root.
    pub fn is_within(&self, focus: &ProcessId) -> bool {
        if self == focus {
            return false;
        }
        if focus.is_context_root() {
            return true;
        }
        self.0.len() > focus.0.len()
            && self.0.starts_with(&focus.0)
            && self.0.as_bytes()[focus.0.len()] == b'.'
    }

    /// True when this number names a direct subprocess of `focus` under the
    /// numbering convention: `focus.n` with positive `n`, or a bare positive
    /// integer when `focus` is the context root.
    pub fn is_direct_child_of(&self, focus: &ProcessId) -> bool {
        if focus.is_context_root() {
            return !self.0.contains('.') && self.0 != "0";
        }
        match self
            .0
            .strip_prefix(focus.as_str())
            .and_then(|rest| rest.strip_prefix('.'))
        {
            Some(tail) => !tail.is_empty() && !tail.contains('.') && tail != "0",
            None => false,
        }
    }

    /// True when this number could name a neighbor replica inside the
    /// decomposition of `focus`: a sibling of `focus` or of one of its
    /// ancestors in the numbering tree.
    pub fn is_peer_of_lineage(&self, focus: &ProcessId) -> bool {
        let focus_segs: Vec<&str> = focus.segments().collect();
        let segs: Vec<&str> = self.segments().collect();
        for k in 1..=focus_segs.len() {
            if segs.len() == k
                && segs[..k - 1] == focus_segs[..k - 1]
                && segs[k - 1] != focus_segs[k - 1]
                && segs[k - 1] != "0"
            {
                return true;
            }
        }
        false
    }
}

impl PartialOrd for ProcessId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProcessId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Segment-wise numeric order; decimal strings without leading zeros
        // compare numerically as (length, digits).
        let mut a = self.segments();
        let mut b = other.segments();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return std::cmp::Ordering::Equal,
                (None, Some(_)) => return std::cmp::Ordering::Less,
                (Some(_), None) => return std::cmp::Ordering::Greater,
                (Some(x), Some(y)) => {
                    let ord = x.len().cmp(&y.len()).then_with(|| x.cmp(y));
                    if ord != std::cmp::Ordering::Equal {
                        return ord;
                    }
                }
            }
        }
    }
}

impl fmt::Display for ProcessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An activity or function performed by the system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Process {
    pub id: ProcessId,
    pub name: Name,
    pub description: Option<String>,
}

/// A person, organization, or system outside the model that interacts with it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExternalEntity {
    pub name: Name,
    pub description: Option<String>,
}

/// A named repository of stored data.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DataStore {
    pub name: Name,
    pub description: Option<String>,
}

/// One end of a data flow.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlowEndpoint {
    Process(ProcessId),
    Entity(Name),
    Store(Name),
}

impl FlowEndpoint {
    pub fn kind_str(&self) -> &'static str {
        match self {
            FlowEndpoint::Process(_) => "process",
            FlowEndpoint::Entity(_) => "external entity",
            FlowEndpoint::Store(_) => "data store",
        }
    }

    pub fn key_str(&self) -> &str {
        match self {
            FlowEndpoint::Process(id) => id.as_str(),
            FlowEndpoint::Entity(n) | FlowEndpoint::Store(n) => n.as_str(),
        }
    }

    pub fn subject(&self) -> Subject {
        match self {
            FlowEndpoint::Process(id) => Subject::Process(id.clone()),
            FlowEndpoint::Entity(n) => Subject::Entity(n.clone()),
            FlowEndpoint::Store(n) => Subject::Store(n.clone()),
        }
    }
}

impl fmt::Display for FlowEndpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} '{}'", self.kind_str(), self.key_str())
    }
}

/// A named, directed movement of data between two elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flow {
    pub name: Name,
    pub source: FlowEndpoint,
    pub target: FlowEndpoint,
    pub description: Option<String>,
}

impl Flow {
    pub fn is_self_loop(&self) -> bool {
        self.source == self.target
    }
}

/// The level a diagram occupies: the single context diagram, or the
/// decomposition of one process from a higher level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramKind {
    Context,
    Decomposition(ProcessId),
}

impl DiagramKind {
    pub fn is_context(&self) -> bool {
        matches!(self, DiagramKind::Context)
    }

    pub fn focus(&self) -> Option<&ProcessId> {
        match self {
            DiagramKind::Context => None,
            DiagramKind::Decomposition(id) => Some(id),
        }
    }
}

/// Direction of a boundary flow relative to the process being decomposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlowDirection {
    IntoFocus,
    OutOfFocus,
}

/// The identity of one boundary crossing: flow name, direction relative to
/// the focus process, and the element on the far side.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundarySignature {
    pub flow_name: Name,
    pub direction: FlowDirection,
    pub far_end: FlowEndpoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("process '{0}' is not declared in this diagram")]
    UnknownFocus(ProcessId),
    #[error("diagram is not a decomposition")]
    NotADecomposition,
}

/// One level of the model.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub title: Name,
    pub kind: DiagramKind,
    pub processes: Vec<Process>,
    pub entities: Vec<ExternalEntity>,
    pub stores: Vec<DataStore>,
    pub flows: Vec<Flow>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        // Element order is declaration order and carries no meaning.
        fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
            let mut s = v.to_vec();
            s.sort();
            s
        }
        self.title == other.title
            && self.kind == other.kind
            && sorted(&self.processes) == sorted(&other.processes)
            && sorted(&self.entities) == sorted(&other.entities)
            && sorted(&self.stores) == sorted(&other.stores)
            && sorted(&self.flows) == sorted(&other.flows)
    }
}

impl Eq for Diagram {}

impl Diagram {
    /// Assembles a diagram from parsed declarations and reports one `S001`
    /// diagnostic per flow with an endpoint that names no declared element.
    /// Such flows stay in the model, marked only by being unresolvable, so a
    /// single bad reference does not hide other findings.
    pub fn build(
        title: Name,
        kind: DiagramKind,
        processes: Vec<Process>,
        entities: Vec<ExternalEntity>,
        stores: Vec<DataStore>,
        flows: Vec<Flow>,
    ) -> (Diagram, Vec<Diagnostic>) {
        let diagram = Diagram {
            title,
            kind,
            processes,
            entities,
            stores,
            flows,
        };
        let diags = diagram.resolution_diagnostics();
        (diagram, diags)
    }

    pub fn process(&self, id: &ProcessId) -> Option<&Process> {
        self.processes.iter().find(|p| &p.id == id)
    }

    /// True when `id` belongs to this diagram's own level: any process of a
    /// context diagram, or the focus and everything numbered below it in a
    /// decomposition. Other declared processes are boundary replicas.
    pub fn process_is_internal(&self, id: &ProcessId) -> bool {
        match &self.kind {
            DiagramKind::Context => true,
            DiagramKind::Decomposition(focus) => id == focus || id.is_within(focus),
        }
    }

    pub fn declares_process(&self, id: &ProcessId) -> bool {
        self.process(id).is_some()
    }

    pub fn declares_entity(&self, name: &Name) -> bool {
        self.entities.iter().any(|e| &e.name == name)
    }

    pub fn declares_store(&self, name: &Name) -> bool {
        self.stores.iter().any(|s| &s.name == name)
    }

    pub fn resolves(&self, endpoint: &FlowEndpoint) -> bool {
        match endpoint {
            FlowEndpoint::Process(id) => self.declares_process(id),
            FlowEndpoint::Entity(name) => self.declares_entity(name),
            FlowEndpoint::Store(name) => self.declares_store(name),
        }
    }

    pub fn flow_is_resolved(&self, flow: &Flow) -> bool {
        self.resolves(&flow.source) && self.resolves(&flow.target)
    }

    /// Flows whose endpoints all resolve; the rest are covered by `S001` and
    /// skipped by every other check.
    pub fn resolved_flows(&self) -> impl Iterator<Item = &Flow> {
        self.flows.iter().filter(|f| self.flow_is_resolved(f))
    }

    /// One `S001` per flow with an undeclared endpoint.
    pub fn resolution_diagnostics(&self) -> Vec<Diagnostic> {
        let mut diags: Vec<Diagnostic> = Vec::new();
        for flow in &self.flows {
            let mut bad: Vec<&FlowEndpoint> = Vec::new();
            if !self.resolves(&flow.source) {
                bad.push(&flow.source);
            }
            if !self.resolves(&flow.target) {
                bad.push(&flow.target);
            }
            if bad.is_empty() {
                continue;
            }
            let detail = bad
                .iter()
                .map(|ep| format!("{ep} is not declared"))
                .collect::<Vec<_>>()
                .join("; ");
            let mut subjects = vec![Subject::Flow(flow.name.clone())];
            subjects.extend(bad.iter().map(|ep| ep.subject()));
            diags.push(Diagnostic::new(
                Code::S001,
                Some(&self.title),
                subjects,
                format!("Data flow '{}' has an unresolved endpoint: {detail}", flow.name),
            ));
        }
        diags.sort_by(|a, b| a.subjects.cmp(&b.subjects));
        diags
    }

    /// The boundary of `focus` as seen from this diagram: one signature per
    /// resolved flow incident to `focus`. Self-loops carry no direction and
    /// are excluded (they are rejected as `S205`).
    pub fn neighbor_signatures(
        &self,
        focus: &ProcessId,
    ) -> Result<BTreeSet<BoundarySignature>, SignatureError> {
        if !self.declares_process(focus) {
            return Err(SignatureError::UnknownFocus(focus.clone()));
        }
        let focus_ep = FlowEndpoint::Process(focus.clone());
        let mut set = BTreeSet::new();
        for flow in self.resolved_flows() {
            if flow.is_self_loop() {
                continue;
            }
            if flow.target == focus_ep {
                set.insert(BoundarySignature {
                    flow_name: flow.name.clone(),
                    direction: FlowDirection::IntoFocus,
                    far_end: flow.source.clone(),
                });
            } else if flow.source == focus_ep {
                set.insert(BoundarySignature {
                    flow_name: flow.name.clone(),
                    direction: FlowDirection::OutOfFocus,
                    far_end: flow.target.clone(),
                });
            }
        }
        Ok(set)
    }

    /// The boundary this decomposition presents to its parent, treating every
    /// declared store as internal. Cross-diagram checking passes the parent's
    /// boundary-store set through
    /// [`Diagram::child_boundary_signatures_with_stores`] instead, since the
    /// child alone cannot tell a replicated store from a new internal one.
    pub fn child_boundary_signatures(
        &self,
    ) -> Result<BTreeSet<BoundarySignature>, SignatureError> {
        self.child_boundary_signatures_with_stores(&BTreeSet::new())
    }

    /// Boundary signatures of a decomposition diagram.
    ///
    /// A flow contributes a signature when exactly one endpoint is an internal
    /// process (the focus itself or any number below it) and the far endpoint
    /// is an external entity, a store named in `boundary_stores`, or a
    /// boundary process replica. Direction is relative to the internal side.
    pub fn child_boundary_signatures_with_stores(
        &self,
        boundary_stores: &BTreeSet<Name>,
    ) -> Result<BTreeSet<BoundarySignature>, SignatureError> {
        let focus = match &self.kind {
            DiagramKind::Decomposition(id) => id,
            DiagramKind::Context => return Err(SignatureError::NotADecomposition),
        };
        let internal = |ep: &FlowEndpoint| -> bool {
            match ep {
                FlowEndpoint::Process(id) => id == focus || id.is_within(focus),
                _ => false,
            }
        };
        let qualifies = |far: &FlowEndpoint| -> bool {
            match far {
                FlowEndpoint::Entity(_) | FlowEndpoint::Process(_) => true,
                FlowEndpoint::Store(name) => boundary_stores.contains(name),
            }
        };
        let mut set = BTreeSet::new();
        for flow in self.resolved_flows() {
            if flow.is_self_loop() {
                continue;
            }
            let (direction, far) = match (internal(&flow.source), internal(&flow.target)) {
                (true, false) => (FlowDirection::OutOfFocus, &flow.target),
                (false, true) => (FlowDirection::IntoFocus, &flow.source),
                _ => continue,
            };
            if qualifies(far) {
                set.insert(BoundarySignature {
                    flow_name: flow.name.clone(),
                    direction,
                    far_end: far.clone(),
                });
            }
        }
        Ok(set)
    }
}

/// An ordered collection of diagrams forming one model.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Project {
    pub diagrams: Vec<Diagram>,
}

impl Project {
    pub fn new(diagrams: Vec<Diagram>) -> Self {
        Project { diagrams }
    }

    pub fn context_diagrams(&self) -> impl Iterator<Item = &Diagram> {
        self.diagrams.iter().filter(|d| d.kind.is_context())
    }

    pub fn diagram_by_title(&self, title: &Name) -> Option<&Diagram> {
        self.diagrams.iter().find(|d| &d.title == title)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(s: &str) -> Name {
        Name::new(s).unwrap()
    }

    fn pid(s: &str) -> ProcessId {
        ProcessId::new(s).unwrap()
    }

    fn process(id: &str, n: &str) -> Process {
        Process {
            id: pid(id),
            name: name(n),
            description: None,
        }
    }

    fn entity(n: &str) -> ExternalEntity {
        ExternalEntity {
            name: name(n),
            description: None,
        }
    }

    fn store(n: &str) -> DataStore {
        DataStore {
            name: name(n),
            description: None,
        }
    }

    fn flow(n: &str, source: FlowEndpoint, target: FlowEndpoint) -> Flow {
        Flow {
            name: name(n),
            source,
            target,
            description: None,
        }
    }

    fn ep_p(id: &str) -> FlowEndpoint {
        FlowEndpoint::Process(pid(id))
    }

    fn ep_e(n: &str) -> FlowEndpoint {
        FlowEndpoint::Entity(name(n))
    }

    fn ep_s(n: &str) -> FlowEndpoint {
        FlowEndpoint::Store(name(n))
    }

    /// Context diagram of the academic information system example: one
    /// process, one entity, two flows.
    pub(crate) fn ais_context() -> Diagram {
        Diagram::build(
            name("AIS Context"),
            DiagramKind::Context,
            vec![process("0", "Academic Information System")],
            vec![entity("Lecturer")],
            vec![],
            vec![
                flow("academic information", ep_e("Lecturer"), ep_p("0")),
                flow("list of academicians", ep_p("0"), ep_e("Lecturer")),
            ],
        )
        .0
    }

    /// Matching level 0: two processes, one entity, one store, five flows.
    pub(crate) fn ais_level0() -> Diagram {
        Diagram::build(
            name("AIS Level 0"),
            DiagramKind::Decomposition(pid("0")),
            vec![
                process("1", "Maintain Academic Information"),
                process("2", "Generate List of Academicians"),
            ],
            vec![entity("Lecturer")],
            vec![store("academic store")],
            vec![
                flow("academic information", ep_e("Lecturer"), ep_p("1")),
                flow("list of academicians", ep_p("2"), ep_e("Lecturer")),
                flow("academic record", ep_p("1"), ep_p("2")),
                flow("stored academic data", ep_p("2"), ep_s("academic store")),
                flow("retrieved academic data", ep_s("academic store"), ep_p("2")),
            ],
        )
        .0
    }

    #[test]
    fn name_normalization_collapses_whitespace() {
        assert_eq!(name("  check  list ").as_str(), "check list");
        assert_eq!(name("Lecturer").as_str(), "Lecturer");
        assert_eq!(Name::new("   "), Err(NameError::EmptyName));
        assert_eq!(Name::new(""), Err(NameError::EmptyName));
    }

    #[test]
    fn name_normalization_is_idempotent() {
        for raw in ["  a  b ", "x\t\ty", "plain", " mixed   spacing  here "] {
            let once = Name::new(raw).unwrap();
            let twice = Name::new(once.as_str()).unwrap();
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn name_applies_canonical_composition() {
        // e + combining acute composes to the precomposed form.
        let decomposed = "Caf\u{0065}\u{0301}";
        let composed = "Caf\u{00e9}";
        assert_eq!(Name::new(decomposed).unwrap(), Name::new(composed).unwrap());
    }

    #[test]
    fn process_id_validation() {
        assert!(ProcessId::new("0").is_ok());
        assert!(ProcessId::new("2.3").is_ok());
        assert!(ProcessId::new("10.2.7").is_ok());
        assert!(ProcessId::new("0.1").is_ok());
        assert_eq!(ProcessId::new(""), Err(ProcessIdError::Empty));
        assert!(matches!(ProcessId::new("01"), Err(ProcessIdError::LeadingZero(_))));
        assert!(matches!(ProcessId::new("1.02"), Err(ProcessIdError::LeadingZero(_))));
        assert!(matches!(ProcessId::new("1..2"), Err(ProcessIdError::Malformed(_))));
        assert!(matches!(ProcessId::new("1.a"), Err(ProcessIdError::Malformed(_))));
        assert!(matches!(ProcessId::new(".1"), Err(ProcessIdError::Malformed(_))));
    }

    #[test]
    fn process_id_orders_numerically() {
        let mut ids = vec![pid("10"), pid("2"), pid("2.10"), pid("2.3"), pid("0")];
        ids.sort();
        let strs: Vec<&str> = ids.iter().map(ProcessId::as_str).collect();
        assert_eq!(strs, vec!["0", "2", "2.3", "2.10", "10"]);
    }

    #[test]
    fn process_id_tree_relations() {
        assert!(pid("2.3").is_within(&pid("2")));
        assert!(pid("2.3.1").is_within(&pid("2")));
        assert!(!pid("2").is_within(&pid("2")));
        assert!(!pid("23").is_within(&pid("2")));
        assert!(pid("1").is_within(&pid("0")));
        assert!(!pid("0").is_within(&pid("0")));

        assert!(pid("2.3").is_direct_child_of(&pid("2")));
        assert!(!pid("2.3.1").is_direct_child_of(&pid("2")));
        assert!(!pid("2.0").is_direct_child_of(&pid("2")));
        assert!(pid("1").is_direct_child_of(&pid("0")));
        assert!(!pid("0").is_direct_child_of(&pid("0")));
        assert!(!pid("2.10").is_direct_child_of(&pid("2.1")));

        assert!(pid("1").is_peer_of_lineage(&pid("2")));
        assert!(pid("2.1").is_peer_of_lineage(&pid("2.3")));
        assert!(pid("1").is_peer_of_lineage(&pid("2.3")));
        assert!(!pid("3.1").is_peer_of_lineage(&pid("2")));
        assert!(!pid("0").is_peer_of_lineage(&pid("2")));
        assert!(!pid("2.3").is_peer_of_lineage(&pid("2.3")));
    }

    #[test]
    fn build_ais_context_is_clean() {
        let (diagram, diags) = Diagram::build(
            name("AIS Context"),
            DiagramKind::Context,
            vec![process("0", "Academic Information System")],
            vec![entity("Lecturer")],
            vec![],
            vec![
                flow("academic information", ep_e("Lecturer"), ep_p("0")),
                flow("list of academicians", ep_p("0"), ep_e("Lecturer")),
            ],
        );
        assert_eq!(diagram.processes.len(), 1);
        assert_eq!(diagram.entities.len(), 1);
        assert_eq!(diagram.flows.len(), 2);
        assert!(diags.is_empty());
    }

    #[test]
    fn build_empty_diagram_is_clean() {
        let (diagram, diags) = Diagram::build(
            name("empty"),
            DiagramKind::Context,
            vec![],
            vec![],
            vec![],
            vec![],
        );
        assert!(diagram.processes.is_empty());
        assert!(diagram.flows.is_empty());
        assert!(diags.is_empty());
    }

    #[test]
    fn build_reports_unresolved_endpoint() {
        let (_, diags) = Diagram::build(
            name("dangling"),
            DiagramKind::Decomposition(pid("0")),
            vec![],
            vec![entity("A")],
            vec![],
            vec![flow("x", ep_e("A"), ep_p("9"))],
        );
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, Code::S001);
        assert!(diags[0].message.contains("process '9'"));
    }

    #[test]
    fn neighbor_signatures_of_ais_context() {
        let diagram = ais_context();
        let sigs = diagram.neighbor_signatures(&pid("0")).unwrap();
        let expected: BTreeSet<BoundarySignature> = [
            BoundarySignature {
                flow_name: name("academic information"),
                direction: FlowDirection::IntoFocus,
                far_end: ep_e("Lecturer"),
            },
            BoundarySignature {
                flow_name: name("list of academicians"),
                direction: FlowDirection::OutOfFocus,
                far_end: ep_e("Lecturer"),
            },
        ]
        .into();
        assert_eq!(sigs, expected);
    }

    #[test]
    fn neighbor_signatures_vacuous_and_unknown_focus() {
        let diagram = Diagram::build(
            name("quiet"),
            DiagramKind::Decomposition(pid("0")),
            vec![process("1", "idle step")],
            vec![],
            vec![],
            vec![],
        )
        .0;
        assert!(diagram.neighbor_signatures(&pid("1")).unwrap().is_empty());
        assert_eq!(
            diagram.neighbor_signatures(&pid("9")),
            Err(SignatureError::UnknownFocus(pid("9")))
        );
    }

    #[test]
    fn child_boundary_excludes_internal_flows() {
        let level0 = ais_level0();
        let sigs = level0.child_boundary_signatures().unwrap();
        assert_eq!(sigs.len(), 2);
        assert_eq!(sigs, ais_context().neighbor_signatures(&pid("0")).unwrap());
    }

    #[test]
    fn child_boundary_requires_decomposition() {
        assert_eq!(
            ais_context().child_boundary_signatures(),
            Err(SignatureError::NotADecomposition)
        );
    }

    #[test]
    fn child_boundary_counts_stores_only_when_boundary() {
        let level0 = ais_level0();
        let with: BTreeSet<Name> = [name("academic store")].into();
        let sigs = level0.child_boundary_signatures_with_stores(&with).unwrap();
        assert_eq!(sigs.len(), 4);
        assert!(sigs.iter().any(|s| s.far_end == ep_s("academic store")
            && s.direction == FlowDirection::OutOfFocus));
    }

    #[test]
    fn child_boundary_internal_only_is_empty() {
        let diagram = Diagram::build(
            name("inner"),
            DiagramKind::Decomposition(pid("2")),
            vec![process("2.1", "first step"), process("2.2", "second step")],
            vec![],
            vec![],
            vec![flow("handoff", ep_p("2.1"), ep_p("2.2"))],
        )
        .0;
        assert!(diagram.child_boundary_signatures().unwrap().is_empty());
    }

    #[test]
    fn child_boundary_includes_process_replicas() {
        let diagram = Diagram::build(
            name("detail of 2"),
            DiagramKind::Decomposition(pid("2")),
            vec![process("2.1", "refine input"), process("1", "neighbor step")],
            vec![],
            vec![],
            vec![flow("handoff", ep_p("1"), ep_p("2.1"))],
        )
        .0;
        let sigs = diagram.child_boundary_signatures().unwrap();
        assert_eq!(sigs.len(), 1);
        let sig = sigs.iter().next().unwrap();
        assert_eq!(sig.direction, FlowDirection::IntoFocus);
        assert_eq!(sig.far_end, ep_p("1"));
    }

    #[test]
    fn diagram_equality_ignores_declaration_order() {
        let a = ais_level0();
        let mut b = ais_level0();
        b.processes.reverse();
        b.flows.reverse();
        assert_eq!(a, b);
        let mut c = ais_level0();
        c.flows.pop();
        assert_ne!(a, c);
    }

    #[test]
    fn neighbor_signature_count_matches_incident_flows() {
        let level0 = ais_level0();
        for p in &level0.processes {
            let incident = level0
                .resolved_flows()
                .filter(|f| {
                    f.source == FlowEndpoint::Process(p.id.clone())
                        || f.target == FlowEndpoint::Process(p.id.clone())
                })
                .count();
            assert_eq!(level0.neighbor_signatures(&p.id).unwrap().len(), incident);
        }
    }
}
