//! Per-diagram rule checks.
//!
//! Each check is a pure function from a [`Diagram`] to a list of
//! [`Diagnostic`]s, and [`check_diagram`] runs every check that applies to the
//! diagram's kind in catalog order. Flows with unresolved endpoints are
//! reported once as `S001` and skipped by every other check so one bad
//! reference does not cascade.
//!
//! Decomposition diagrams may re-declare neighbor processes from the parent
//! level as boundary replicas (any number that is a sibling of the focus or of
//! one of its ancestors). Replicas are projections of elements whose own rules
//! are checked in their home diagram, so degree and numbering checks skip
//! them here.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::diagnostics::{Code, Diagnostic, Subject};
use crate::model::{Diagram, DiagramKind, FlowEndpoint, Name, ProcessId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("diagram is not a context diagram")]
    NotAContext,
}

/// Flows the sole context process may carry connect it to an external entity.
/// Pairs already rejected by S201/S202/S203 and self-loops are not reported
/// again here.
fn context_flow_is_shaped(flow_source: &FlowEndpoint, flow_target: &FlowEndpoint) -> bool {
    matches!(
        (flow_source, flow_target),
        (FlowEndpoint::Entity(_), FlowEndpoint::Process(_))
            | (FlowEndpoint::Process(_), FlowEndpoint::Entity(_))
    )
}

/// S201/S202/S203 per illegal endpoint pairing, S205 per self-loop.
pub fn check_connection_legality(diagram: &Diagram) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    for flow in diagram.resolved_flows() {
        if flow.is_self_loop() {
            diags.push(Diagnostic::new(
                Code::S205,
                Some(&diagram.title),
                vec![Subject::Flow(flow.name.clone()), flow.source.subject()],
                format!(
                    "Data flow '{}' connects {} to itself",
                    flow.name, flow.source
                ),
            ));
            continue;
        }
        let code = match (&flow.source, &flow.target) {
            (FlowEndpoint::Entity(_), FlowEndpoint::Entity(_)) => Some(Code::S201),
            (FlowEndpoint::Store(_), FlowEndpoint::Store(_)) => Some(Code::S202),
            (FlowEndpoint::Entity(_), FlowEndpoint::Store(_))
            | (FlowEndpoint::Store(_), FlowEndpoint::Entity(_)) => Some(Code::S203),
            _ => None,
        };
        if let Some(code) = code {
            diags.push(Diagnostic::new(
                code,
                Some(&diagram.title),
                vec![
                    Subject::Flow(flow.name.clone()),
                    flow.source.subject(),
                    flow.target.subject(),
                ],
                format!(
                    "Data flow '{}' connects {} to {}",
                    flow.name, flow.source, flow.target
                ),
            ));
        }
    }
    diags.sort_by(|a, b| a.code.cmp(&b.code).then_with(|| a.subjects.cmp(&b.subjects)));
    diags
}

/// S101/S102 per process missing an input or output, S103/S104 per store
/// missing one (decomposition diagrams only; context stores are S502), and
/// S105 per entity with no flows at all.
pub fn check_degrees(diagram: &Diagram) -> Vec<Diagnostic> {
    let mut process_in: BTreeMap<&ProcessId, usize> = BTreeMap::new();
    let mut process_out: BTreeMap<&ProcessId, usize> = BTreeMap::new();
    let mut store_in: BTreeMap<&Name, usize> = BTreeMap::new();
    let mut store_out: BTreeMap<&Name, usize> = BTreeMap::new();
    let mut entity_deg: BTreeMap<&Name, usize> = BTreeMap::new();

    for flow in diagram.resolved_flows() {
        match &flow.source {
            FlowEndpoint::Process(id) => *process_out.entry(id).or_default() += 1,
            FlowEndpoint::Store(n) => *store_out.entry(n).or_default() += 1,
            FlowEndpoint::Entity(n) => *entity_deg.entry(n).or_default() += 1,
        }
        match &flow.target {
            FlowEndpoint::Process(id) => *process_in.entry(id).or_default() += 1,
            FlowEndpoint::Store(n) => *store_in.entry(n).or_default() += 1,
            FlowEndpoint::Entity(n) => *entity_deg.entry(n).or_default() += 1,
        }
    }

    let mut diags = Vec::new();
    for process in &diagram.processes {
        if !is_internal_process(diagram, &process.id) {
            continue;
        }
        if process_in.get(&process.id).copied().unwrap_or(0) == 0 {
            diags.push(Diagnostic::new(
                Code::S101,
                Some(&diagram.title),
                vec![Subject::Process(process.id.clone())],
                format!("Process '{}' has no input data flow", process.id),
            ));
        }
        if process_out.get(&process.id).copied().unwrap_or(0) == 0 {
            diags.push(Diagnostic::new(
                Code::S102,
                Some(&diagram.title),
                vec![Subject::Process(process.id.clone())],
                format!("Process '{}' has no output data flow", process.id),
            ));
        }
    }
    if !diagram.kind.is_context() {
        for store in &diagram.stores {
            if store_in.get(&store.name).copied().unwrap_or(0) == 0 {
                diags.push(Diagnostic::new(
                    Code::S103,
                    Some(&diagram.title),
                    vec![Subject::Store(store.name.clone())],
                    format!("Data store '{}' has no input data flow", store.name),
                ));
            }
            if store_out.get(&store.name).copied().unwrap_or(0) == 0 {
                diags.push(Diagnostic::new(
                    Code::S104,
                    Some(&diagram.title),
                    vec![Subject::Store(store.name.clone())],
                    format!("Data store '{}' has no output data flow", store.name),
                ));
            }
        }
    }
    for entity in &diagram.entities {
        if entity_deg.get(&entity.name).copied().unwrap_or(0) == 0 {
            diags.push(Diagnostic::new(
                Code::S105,
                Some(&diagram.title),
                vec![Subject::Entity(entity.name.clone())],
                format!("External entity '{}' has no data flows", entity.name),
            ));
        }
    }
    diags.sort_by(|a, b| a.code.cmp(&b.code).then_with(|| a.subjects.cmp(&b.subjects)));
    diags
}

fn duplicate_groups<'a, K: Ord, I>(items: I) -> Vec<(K, usize)>
where
    I: Iterator<Item = K>,
    K: 'a,
{
    let mut counts: BTreeMap<K, usize> = BTreeMap::new();
    for key in items {
        *counts.entry(key).or_default() += 1;
    }
    counts.into_iter().filter(|(_, n)| *n > 1).collect()
}

/// S301–S304, one diagnostic per duplicated name group. Duplicate process
/// numbers are reported as S301 as well, since they make endpoint references
/// ambiguous.
pub fn check_uniqueness(diagram: &Diagram) -> Vec<Diagnostic> {
    let mut diags = Vec::new();

    for (name, _) in duplicate_groups(diagram.processes.iter().map(|p| &p.name)) {
        let mut ids: Vec<&ProcessId> = diagram
            .processes
            .iter()
            .filter(|p| &p.name == name)
            .map(|p| &p.id)
            .collect();
        ids.sort();
        diags.push(Diagnostic::new(
            Code::S301,
            Some(&diagram.title),
            ids.iter().map(|id| Subject::Process((*id).clone())).collect(),
            format!(
                "Duplicate process name '{}' (processes {})",
                name,
                ids.iter()
                    .map(|id| format!("'{id}'"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ));
    }
    for (id, count) in duplicate_groups(diagram.processes.iter().map(|p| &p.id)) {
        diags.push(Diagnostic::new(
            Code::S301,
            Some(&diagram.title),
            vec![Subject::Process(id.clone())],
            format!("Duplicate process number '{id}' ({count} processes)"),
        ));
    }
    for (name, count) in duplicate_groups(
        diagram
            .flows
            .iter()
            .filter(|f| diagram.flow_is_resolved(f))
            .map(|f| &f.name),
    ) {
        diags.push(Diagnostic::new(
            Code::S302,
            Some(&diagram.title),
            vec![Subject::Flow(name.clone())],
            format!("Duplicate data flow name '{name}' ({count} flows)"),
        ));
    }
    for (name, count) in duplicate_groups(diagram.stores.iter().map(|s| &s.name)) {
        diags.push(Diagnostic::new(
            Code::S303,
            Some(&diagram.title),
            vec![Subject::Store(name.clone())],
            format!("Duplicate data store name '{name}' ({count} stores)"),
        ));
    }
    for (name, count) in duplicate_groups(diagram.entities.iter().map(|e| &e.name)) {
        diags.push(Diagnostic::new(
            Code::S304,
            Some(&diagram.title),
            vec![Subject::Entity(name.clone())],
            format!("Duplicate external entity name '{name}' ({count} entities)"),
        ));
    }
    diags.sort_by(|a, b| a.code.cmp(&b.code).then_with(|| a.subjects.cmp(&b.subjects)));
    diags
}

/// S501 when the context diagram does not hold exactly one process numbered
/// "0", S502 per declared store, S503 per flow that does not connect the
/// system process and an external entity.
pub fn check_context_shape(diagram: &Diagram) -> Result<Vec<Diagnostic>, CheckError> {
    if !diagram.kind.is_context() {
        return Err(CheckError::NotAContext);
    }
    let mut diags = Vec::new();

    let shape_ok =
        diagram.processes.len() == 1 && diagram.processes[0].id.is_context_root();
    if !shape_ok {
        let mut ids: Vec<&ProcessId> = diagram.processes.iter().map(|p| &p.id).collect();
        ids.sort();
        let found = if ids.is_empty() {
            "no processes".to_owned()
        } else {
            format!(
                "processes {}",
                ids.iter()
                    .map(|id| format!("'{id}'"))
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        };
        diags.push(Diagnostic::new(
            Code::S501,
            Some(&diagram.title),
            ids.iter().map(|id| Subject::Process((*id).clone())).collect(),
            format!("Context diagram must contain exactly one process numbered '0' (found {found})"),
        ));
    }

    for store in &diagram.stores {
        diags.push(Diagnostic::new(
            Code::S502,
            Some(&diagram.title),
            vec![Subject::Store(store.name.clone())],
            format!("Data store '{}' cannot exist in a context diagram", store.name),
        ));
    }

    for flow in diagram.resolved_flows() {
        if flow.is_self_loop() || context_flow_is_shaped(&flow.source, &flow.target) {
            continue;
        }
        // Entity-entity, store-store and entity-store pairs are already
        // rejected by the connection checks.
        let covered_elsewhere = matches!(
            (&flow.source, &flow.target),
            (FlowEndpoint::Entity(_), FlowEndpoint::Entity(_))
                | (FlowEndpoint::Store(_), FlowEndpoint::Store(_))
                | (FlowEndpoint::Entity(_), FlowEndpoint::Store(_))
                | (FlowEndpoint::Store(_), FlowEndpoint::Entity(_))
        );
        if covered_elsewhere {
            continue;
        }
        diags.push(Diagnostic::new(
            Code::S503,
            Some(&diagram.title),
            vec![Subject::Flow(flow.name.clone())],
            format!(
                "Data flow '{}' does not connect the context process and an external entity",
                flow.name
            ),
        ));
    }
    diags.sort_by(|a, b| a.code.cmp(&b.code).then_with(|| a.subjects.cmp(&b.subjects)));
    Ok(diags)
}

/// W601 per process whose input flow names intersect its output flow names.
pub fn check_name_hygiene(diagram: &Diagram) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    for process in &diagram.processes {
        let me = FlowEndpoint::Process(process.id.clone());
        let ins: BTreeSet<&Name> = diagram
            .resolved_flows()
            .filter(|f| f.target == me && !f.is_self_loop())
            .map(|f| &f.name)
            .collect();
        let outs: BTreeSet<&Name> = diagram
            .resolved_flows()
            .filter(|f| f.source == me && !f.is_self_loop())
            .map(|f| &f.name)
            .collect();
        let shared: Vec<&&Name> = ins.intersection(&outs).collect();
        if shared.is_empty() {
            continue;
        }
        let mut subjects = vec![Subject::Process(process.id.clone())];
        subjects.extend(shared.iter().map(|n| Subject::Flow((**n).clone())));
        diags.push(Diagnostic::new(
            Code::W601,
            Some(&diagram.title),
            subjects,
            format!(
                "Process '{}' uses the same name for an input and an output data flow: {}",
                process.id,
                shared
                    .iter()
                    .map(|n| format!("'{n}'"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ));
    }
    diags.sort_by(|a, b| a.subjects.cmp(&b.subjects));
    diags
}

/// W701 per process breaking the numbering convention: the sole context
/// process is numbered "0"; subprocesses of `p` are `p.n` (bare positive
/// integers below the context root). Boundary replicas — numbers naming a
/// sibling of the focus or of one of its ancestors — are exempt.
pub fn check_numbering(diagram: &Diagram) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    match &diagram.kind {
        DiagramKind::Context => {
            // With the single-process shape broken, S501 already covers the
            // diagram; numbering opinions would only add noise.
            if diagram.processes.len() == 1 && !diagram.processes[0].id.is_context_root() {
                let id = &diagram.processes[0].id;
                diags.push(Diagnostic::new(
                    Code::W701,
                    Some(&diagram.title),
                    vec![Subject::Process(id.clone())],
                    format!("Context process is numbered '{id}' instead of '0'"),
                ));
            }
        }
        DiagramKind::Decomposition(focus) => {
            for process in &diagram.processes {
                if process.id.is_direct_child_of(focus)
                    || process.id.is_peer_of_lineage(focus)
                {
                    continue;
                }
                let expected = if focus.is_context_root() {
                    "a bare positive integer".to_owned()
                } else {
                    format!("'{focus}.n'")
                };
                diags.push(Diagnostic::new(
                    Code::W701,
                    Some(&diagram.title),
                    vec![Subject::Process(process.id.clone())],
                    format!(
                        "Process '{}' does not follow the numbering convention of this diagram (expected {expected})",
                        process.id
                    ),
                ));
            }
        }
    }
    diags.sort_by(|a, b| a.subjects.cmp(&b.subjects));
    diags
}

/// Runs every per-diagram check that applies to the diagram's kind, in
/// catalog order.
pub fn check_diagram(diagram: &Diagram) -> Vec<Diagnostic> {
    let mut diags = diagram.resolution_diagnostics();
    diags.extend(check_degrees(diagram));
    diags.extend(check_connection_legality(diagram));
    diags.extend(check_uniqueness(diagram));
    if diagram.kind.is_context() {
        diags.extend(check_context_shape(diagram).expect("kind checked"));
    }
    diags.extend(check_name_hygiene(diagram));
    diags.extend(check_numbering(diagram));
    diags
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DataStore, ExternalEntity, Flow, Process};

    fn name(s: &str) -> Name {
        Name::new(s).unwrap()
    }

    fn pid(s: &str) -> ProcessId {
        ProcessId::new(s).unwrap()
    }

    fn process(id: &str, n: &str) -> Process {
        Process { id: pid(id), name: name(n), description: None }
    }

    fn entity(n: &str) -> ExternalEntity {
        ExternalEntity { name: name(n), description: None }
    }

    fn store(n: &str) -> DataStore {
        DataStore { name: name(n), description: None }
    }

    fn flow(n: &str, source: FlowEndpoint, target: FlowEndpoint) -> Flow {
        Flow { name: name(n), source, target, description: None }
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

    fn level0(flows: Vec<Flow>) -> Diagram {
        Diagram {
            title: name("Level 0"),
            kind: DiagramKind::Decomposition(pid("0")),
            processes: vec![process("1", "first step"), process("2", "second step")],
            entities: vec![entity("A"), entity("B")],
            stores: vec![store("D1")],
            flows,
        }
    }

    fn codes(diags: &[Diagnostic]) -> Vec<Code> {
        diags.iter().map(|d| d.code).collect()
    }

    fn ais_level0() -> Diagram {
        Diagram {
            title: name("AIS Level 0"),
            kind: DiagramKind::Decomposition(pid("0")),
            processes: vec![
                process("1", "Maintain Academic Information"),
                process("2", "Generate List of Academicians"),
            ],
            entities: vec![entity("Lecturer")],
            stores: vec![store("academic store")],
            flows: vec![
                flow("academic information", ep_e("Lecturer"), ep_p("1")),
                flow("list of academicians", ep_p("2"), ep_e("Lecturer")),
                flow("academic record", ep_p("1"), ep_p("2")),
                flow("stored academic data", ep_p("2"), ep_s("academic store")),
                flow("retrieved academic data", ep_s("academic store"), ep_p("2")),
            ],
        }
    }

    fn ais_context() -> Diagram {
        Diagram {
            title: name("AIS Context"),
            kind: DiagramKind::Context,
            processes: vec![process("0", "Academic Information System")],
            entities: vec![entity("Lecturer")],
            stores: vec![],
            flows: vec![
                flow("academic information", ep_e("Lecturer"), ep_p("0")),
                flow("list of academicians", ep_p("0"), ep_e("Lecturer")),
            ],
        }
    }

    #[test]
    fn legality_rejects_entity_to_entity() {
        let diagram = level0(vec![
            flow("a", ep_e("A"), ep_p("1")),
            flow("b", ep_p("1"), ep_p("2")),
            flow("c", ep_p("2"), ep_e("B")),
            flow("d", ep_p("2"), ep_s("D1")),
            flow("e", ep_s("D1"), ep_p("1")),
            flow("x", ep_e("A"), ep_e("B")),
        ]);
        assert_eq!(codes(&check_connection_legality(&diagram)), vec![Code::S201]);
    }

    #[test]
    fn legality_rejects_entity_to_store_both_directions() {
        for (src, tgt) in [(ep_e("A"), ep_s("D1")), (ep_s("D1"), ep_e("A"))] {
            let diagram = level0(vec![flow("y", src, tgt)]);
            assert_eq!(codes(&check_connection_legality(&diagram)), vec![Code::S203]);
        }
    }

    #[test]
    fn legality_rejects_store_to_store_and_self_loop() {
        let mut diagram = level0(vec![flow("z", ep_s("D1"), ep_s("D2"))]);
        diagram.stores.push(store("D2"));
        assert_eq!(codes(&check_connection_legality(&diagram)), vec![Code::S202]);

        let diagram = level0(vec![flow("w", ep_p("1"), ep_p("1"))]);
        assert_eq!(codes(&check_connection_legality(&diagram)), vec![Code::S205]);
    }

    #[test]
    fn legality_accepts_ais_level0() {
        assert!(check_connection_legality(&ais_level0()).is_empty());
    }

    #[test]
    fn degrees_flag_missing_process_input() {
        let diagram = Diagram {
            title: name("t"),
            kind: DiagramKind::Decomposition(pid("0")),
            processes: vec![process("1", "only step")],
            entities: vec![entity("A")],
            stores: vec![],
            flows: vec![flow("out", ep_p("1"), ep_e("A"))],
        };
        assert_eq!(codes(&check_degrees(&diagram)), vec![Code::S101]);
    }

    #[test]
    fn degrees_accept_ais_level0() {
        assert!(check_degrees(&ais_level0()).is_empty());
    }

    #[test]
    fn degrees_flag_store_never_read() {
        // Dropping the read-back flow leaves the store with no output while
        // every process keeps both directions.
        let mut diagram = ais_level0();
        diagram.flows.retain(|f| f.name.as_str() != "retrieved academic data");
        assert_eq!(codes(&check_degrees(&diagram)), vec![Code::S104]);
    }

    #[test]
    fn degrees_skip_boundary_replicas() {
        let diagram = Diagram {
            title: name("detail of 2"),
            kind: DiagramKind::Decomposition(pid("2")),
            processes: vec![process("2.1", "refine"), process("1", "neighbor")],
            entities: vec![entity("A")],
            stores: vec![],
            flows: vec![
                flow("handoff", ep_p("1"), ep_p("2.1")),
                flow("result", ep_p("2.1"), ep_e("A")),
            ],
        };
        // Replica "1" has no input here; its degrees belong to the parent.
        assert!(check_degrees(&diagram).is_empty());
    }

    #[test]
    fn degrees_flag_isolated_entity_and_skip_context_stores() {
        let diagram = Diagram {
            title: name("ctx"),
            kind: DiagramKind::Context,
            processes: vec![process("0", "system")],
            entities: vec![entity("A"), entity("B")],
            stores: vec![store("D1")],
            flows: vec![
                flow("in", ep_e("A"), ep_p("0")),
                flow("out", ep_p("0"), ep_e("A")),
            ],
        };
        // B has no flows; the store is reported by the context-shape check,
        // not by degrees.
        assert_eq!(codes(&check_degrees(&diagram)), vec![Code::S105]);
    }

    #[test]
    fn uniqueness_flags_duplicate_flow_names() {
        let diagram = level0(vec![
            flow("order", ep_e("A"), ep_p("1")),
            flow("order", ep_e("B"), ep_p("1")),
        ]);
        let diags = check_uniqueness(&diagram);
        assert_eq!(codes(&diags), vec![Code::S302]);
        assert!(diags[0].message.contains("2 flows"));
    }

    #[test]
    fn uniqueness_flags_each_element_class() {
        let diagram = Diagram {
            title: name("t"),
            kind: DiagramKind::Decomposition(pid("0")),
            processes: vec![process("1", "same step"), process("2", "same step")],
            entities: vec![entity("E"), entity("E")],
            stores: vec![store("D"), store("D")],
            flows: vec![],
        };
        assert_eq!(
            codes(&check_uniqueness(&diagram)),
            vec![Code::S301, Code::S303, Code::S304]
        );
    }

    #[test]
    fn uniqueness_flags_duplicate_process_numbers() {
        let diagram = Diagram {
            title: name("t"),
            kind: DiagramKind::Decomposition(pid("0")),
            processes: vec![process("1", "first"), process("1", "second")],
            entities: vec![],
            stores: vec![],
            flows: vec![],
        };
        let diags = check_uniqueness(&diagram);
        assert_eq!(codes(&diags), vec![Code::S301]);
        assert!(diags[0].message.contains("number"));
    }

    #[test]
    fn antiparallel_pair_with_shared_name_is_a_duplicate() {
        let diagram = level0(vec![
            flow("data", ep_e("A"), ep_p("1")),
            flow("data", ep_p("1"), ep_e("A")),
        ]);
        assert_eq!(codes(&check_uniqueness(&diagram)), vec![Code::S302]);
    }

    #[test]
    fn no_duplicates_implies_no_shared_antiparallel_names() {
        // Exhaustive pair scan over a clean diagram.
        let diagram = ais_level0();
        assert!(check_uniqueness(&diagram).is_empty());
        for (i, a) in diagram.flows.iter().enumerate() {
            for b in diagram.flows.iter().skip(i + 1) {
                if a.source == b.target && a.target == b.source {
                    assert_ne!(a.name, b.name);
                }
            }
        }
    }

    #[test]
    fn context_shape_accepts_ais_context() {
        assert!(check_context_shape(&ais_context()).unwrap().is_empty());
    }

    #[test]
    fn context_shape_rejects_two_processes() {
        let mut diagram = ais_context();
        diagram.processes.push(process("1", "extra step"));
        assert_eq!(codes(&check_context_shape(&diagram).unwrap()), vec![Code::S501]);
    }

    #[test]
    fn context_shape_rejects_store_with_flow() {
        let mut diagram = ais_context();
        diagram.stores.push(store("D1"));
        diagram.flows.push(flow("keep", ep_p("0"), ep_s("D1")));
        assert_eq!(
            codes(&check_context_shape(&diagram).unwrap()),
            vec![Code::S502, Code::S503]
        );
    }

    #[test]
    fn context_shape_refuses_decompositions() {
        assert_eq!(check_context_shape(&ais_level0()), Err(CheckError::NotAContext));
    }

    #[test]
    fn hygiene_flags_shared_in_out_name() {
        let diagram = level0(vec![
            flow("data", ep_e("A"), ep_p("1")),
            flow("data", ep_p("1"), ep_e("A")),
        ]);
        assert_eq!(codes(&check_name_hygiene(&diagram)), vec![Code::W601]);
        assert!(check_name_hygiene(&ais_level0()).is_empty());
        let empty = Diagram {
            title: name("empty"),
            kind: DiagramKind::Context,
            processes: vec![],
            entities: vec![],
            stores: vec![],
            flows: vec![],
        };
        assert!(check_name_hygiene(&empty).is_empty());
    }

    #[test]
    fn numbering_accepts_bare_level0_ids() {
        assert!(check_numbering(&ais_level0()).is_empty());
    }

    #[test]
    fn numbering_rejects_dotted_ids_below_context_root() {
        let mut diagram = ais_level0();
        diagram.processes[0] = process("0.1", "Maintain Academic Information");
        assert_eq!(codes(&check_numbering(&diagram)), vec![Code::W701]);
    }

    #[test]
    fn numbering_rejects_wrong_prefix_but_accepts_replicas() {
        let diagram = Diagram {
            title: name("detail of 2"),
            kind: DiagramKind::Decomposition(pid("2")),
            processes: vec![
                process("2.1", "refine"),
                process("1", "neighbor replica"),
                process("3.1", "foreign subprocess"),
            ],
            entities: vec![],
            stores: vec![],
            flows: vec![],
        };
        let diags = check_numbering(&diagram);
        assert_eq!(codes(&diags), vec![Code::W701]);
        assert_eq!(diags[0].subjects, vec![Subject::Process(pid("3.1"))]);
    }

    #[test]
    fn check_diagram_emits_catalog_order() {
        let diagram = level0(vec![
            flow("x", ep_e("A"), ep_e("B")),
            flow("order", ep_p("1"), ep_p("2")),
            flow("order", ep_p("2"), ep_p("1")),
            flow("feed", ep_e("A"), ep_p("1")),
            flow("result", ep_p("2"), ep_e("B")),
            flow("save", ep_p("1"), ep_s("D1")),
            flow("load", ep_s("D1"), ep_p("2")),
        ]);
        let diags = check_diagram(&diagram);
        let codes = codes(&diags);
        let s201 = codes.iter().position(|c| *c == Code::S201).unwrap();
        let s302 = codes.iter().position(|c| *c == Code::S302).unwrap();
        assert!(s201 < s302);
    }

    #[test]
    fn check_diagram_is_permutation_invariant() {
        let base = level0(vec![
            flow("x", ep_e("A"), ep_e("B")),
            flow("feed", ep_e("A"), ep_p("1")),
            flow("hand", ep_p("1"), ep_p("2")),
            flow("result", ep_p("2"), ep_e("B")),
            flow("save", ep_p("2"), ep_s("D1")),
            flow("load", ep_s("D1"), ep_p("1")),
        ]);
        let baseline = check_diagram(&base);
        let mut shuffled = base.clone();
        shuffled.flows.reverse();
        shuffled.processes.reverse();
        shuffled.entities.reverse();
        assert_eq!(check_diagram(&shuffled), baseline);
    }

    #[test]
    fn unresolved_flows_are_skipped_by_later_checks() {
        // The broken flow yields S001 but neither S201 nor degree findings
        // for the undeclared side.
        let diagram = level0(vec![
            flow("feed", ep_e("A"), ep_p("1")),
            flow("hand", ep_p("1"), ep_p("2")),
            flow("result", ep_p("2"), ep_e("B")),
            flow("save", ep_p("2"), ep_s("D1")),
            flow("load", ep_s("D1"), ep_p("1")),
            flow("ghost", ep_e("A"), ep_e("Nobody")),
        ]);
        let diags = check_diagram(&diagram);
        assert_eq!(codes(&diags), vec![Code::S001]);
    }
}
