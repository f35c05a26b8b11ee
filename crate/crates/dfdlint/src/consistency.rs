//! Cross-diagram consistency: parent/child balancing and project structure.
//!
//! Balancing compares the boundary a decomposed process shows in its parent
//! diagram against the boundary its child diagram presents: external entities
//! both ways, parent-adjacent stores, and boundary flow signatures both ways.
//! The context/level-0 check is the special case where the parent boundary is
//! the whole context diagram.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::diagnostics::{Code, Diagnostic, Subject};
use crate::model::{
    BoundarySignature, Diagram, DiagramKind, FlowDirection, FlowEndpoint, Name, ProcessId,
    Project,
};
use crate::syntax;

/// The outcome of balancing one (parent, child) pair. Empty in every field
/// exactly when the pair is balanced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancingReport {
    pub parent_title: Name,
    pub child_title: Name,
    pub focus: ProcessId,
    pub missing_in_child: BTreeSet<BoundarySignature>,
    pub extra_in_child: BTreeSet<BoundarySignature>,
    pub missing_entities: BTreeSet<Name>,
    pub extra_entities: BTreeSet<Name>,
    pub missing_stores: BTreeSet<Name>,
}

impl BalancingReport {
    pub fn is_empty(&self) -> bool {
        self.missing_in_child.is_empty()
            && self.extra_in_child.is_empty()
            && self.missing_entities.is_empty()
            && self.extra_entities.is_empty()
            && self.missing_stores.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BalancingError {
    #[error("child diagram is not a decomposition")]
    NotADecomposition,
    #[error("decomposed process '{0}' is not declared in the parent diagram")]
    FocusUnresolved(ProcessId),
}

/// Renders one boundary signature the way the error list names it, e.g.
/// `<check list> - To external entity 'Admin Staff'`.
fn describe_signature(sig: &BoundarySignature) -> String {
    let direction = match sig.direction {
        FlowDirection::OutOfFocus => "To",
        FlowDirection::IntoFocus => "From",
    };
    format!(
        "<{}> - {direction} {} '{}'",
        sig.flow_name,
        sig.far_end.kind_str(),
        sig.far_end.key_str()
    )
}

/// Checks one (parent, child) pair and reports the differences both as a
/// [`BalancingReport`] and as diagnostics attributed to the child diagram.
pub fn check_balancing(
    parent: &Diagram,
    child: &Diagram,
) -> Result<(BalancingReport, Vec<Diagnostic>), BalancingError> {
    let focus = match &child.kind {
        DiagramKind::Decomposition(id) => id.clone(),
        DiagramKind::Context => return Err(BalancingError::NotADecomposition),
    };
    if !parent.declares_process(&focus) {
        return Err(BalancingError::FocusUnresolved(focus));
    }

    let focus_ep = FlowEndpoint::Process(focus.clone());
    let adjacent = |far: &Diagram, pick: &dyn Fn(&FlowEndpoint) -> Option<Name>| -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        for flow in far.resolved_flows() {
            if flow.is_self_loop() {
                continue;
            }
            let other = if flow.source == focus_ep {
                &flow.target
            } else if flow.target == focus_ep {
                &flow.source
            } else {
                continue;
            };
            if let Some(name) = pick(other) {
                out.insert(name);
            }
        }
        out
    };

    // Entity comparison: for a context parent the whole entity set forms the
    // boundary; deeper levels use the entities adjacent to the focus.
    let parent_entities: BTreeSet<Name> = if parent.kind.is_context() {
        parent.entities.iter().map(|e| e.name.clone()).collect()
    } else {
        adjacent(parent, &|ep| match ep {
            FlowEndpoint::Entity(n) => Some(n.clone()),
            _ => None,
        })
    };
    let child_entities: BTreeSet<Name> = child.entities.iter().map(|e| e.name.clone()).collect();

    // Stores adjacent to the focus must reappear; extra internal stores in
    // the child are free.
    let parent_stores = adjacent(parent, &|ep| match ep {
        FlowEndpoint::Store(n) => Some(n.clone()),
        _ => None,
    });
    let child_stores: BTreeSet<Name> = child.stores.iter().map(|s| s.name.clone()).collect();

    let parent_sigs = parent
        .neighbor_signatures(&focus)
        .expect("focus declared above");
    let child_sigs = child
        .child_boundary_signatures_with_stores(&parent_stores)
        .expect("kind checked above");

    let report = BalancingReport {
        parent_title: parent.title.clone(),
        child_title: child.title.clone(),
        focus,
        missing_in_child: parent_sigs.difference(&child_sigs).cloned().collect(),
        extra_in_child: child_sigs.difference(&parent_sigs).cloned().collect(),
        missing_entities: parent_entities.difference(&child_entities).cloned().collect(),
        extra_entities: child_entities.difference(&parent_entities).cloned().collect(),
        missing_stores: parent_stores.difference(&child_stores).cloned().collect(),
    };

    let mut diags = Vec::new();
    for name in &report.missing_entities {
        diags.push(Diagnostic::new(
            Code::C101,
            Some(&child.title),
            vec![Subject::Entity(name.clone())],
            format!("Less external entity: '{name}'"),
        ));
    }
    for name in &report.extra_entities {
        diags.push(Diagnostic::new(
            Code::C102,
            Some(&child.title),
            vec![Subject::Entity(name.clone())],
            format!("Extra external entity: '{name}'"),
        ));
    }
    for sig in &report.missing_in_child {
        diags.push(Diagnostic::new(
            Code::C103,
            Some(&child.title),
            vec![Subject::Flow(sig.flow_name.clone()), sig.far_end.subject()],
            format!("Less data flow: {}", describe_signature(sig)),
        ));
    }
    for sig in &report.extra_in_child {
        diags.push(Diagnostic::new(
            Code::C104,
            Some(&child.title),
            vec![Subject::Flow(sig.flow_name.clone()), sig.far_end.subject()],
            format!("Extra data flow: {}", describe_signature(sig)),
        ));
    }
    for name in &report.missing_stores {
        diags.push(Diagnostic::new(
            Code::C106,
            Some(&child.title),
            vec![Subject::Store(name.clone())],
            format!("Less data store: '{name}'"),
        ));
    }
    Ok((report, diags))
}

/// A resolved (parent, child) decomposition pair, by diagram index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionPair {
    pub parent: usize,
    pub child: usize,
    pub focus: ProcessId,
}

/// True when `id` names a process that belongs to `diagram`'s own level
/// rather than a boundary replica projected from elsewhere.
fn declares_internally(diagram: &Diagram, id: &ProcessId) -> bool {
    if !diagram.declares_process(id) {
        return false;
    }
    match &diagram.kind {
        DiagramKind::Context => true,
        DiagramKind::Decomposition(focus) => id.is_within(focus),
    }
}

/// Resolves each decomposition diagram to its parent: the first diagram in
/// declaration order that declares the focus process at its own level.
pub fn decomposition_pairs(project: &Project) -> (Vec<DecompositionPair>, Vec<Diagnostic>) {
    let mut pairs = Vec::new();
    let mut orphans = Vec::new();
    for (child_idx, child) in project.diagrams.iter().enumerate() {
        let focus = match &child.kind {
            DiagramKind::Decomposition(id) => id,
            DiagramKind::Context => continue,
        };
        let parent = project
            .diagrams
            .iter()
            .enumerate()
            .position(|(idx, d)| idx != child_idx && declares_internally(d, focus));
        match parent {
            Some(parent_idx) => pairs.push(DecompositionPair {
                parent: parent_idx,
                child: child_idx,
                focus: focus.clone(),
            }),
            None => orphans.push(Diagnostic::new(
                Code::C202,
                Some(&child.title),
                vec![Subject::Process(focus.clone())],
                format!("Decomposed process '{focus}' is not declared in any parent diagram"),
            )),
        }
    }
    (pairs, orphans)
}

/// Checks a whole project: project structure (C105, C202, C203) first, then
/// every per-diagram check in declaration order, then balancing for every
/// resolvable (parent, child) pair.
pub fn check_project(project: &Project) -> Vec<Diagnostic> {
    let mut diags = Vec::new();

    let context_count = project.context_diagrams().count();
    if context_count != 1 {
        diags.push(Diagnostic::new(
            Code::C105,
            None,
            vec![],
            format!("A project must have exactly one context diagram (found {context_count})"),
        ));
    }

    let (pairs, orphans) = decomposition_pairs(project);
    diags.extend(orphans);

    let mut decomposed_by: BTreeMap<&ProcessId, Vec<&Name>> = BTreeMap::new();
    for diagram in &project.diagrams {
        if let DiagramKind::Decomposition(focus) = &diagram.kind {
            decomposed_by.entry(focus).or_default().push(&diagram.title);
        }
    }
    for (focus, titles) in decomposed_by {
        if titles.len() > 1 {
            let mut sorted: Vec<&Name> = titles.clone();
            sorted.sort();
            let mut subjects = vec![Subject::Process(focus.clone())];
            subjects.extend(sorted.iter().map(|t| Subject::Diagram((*t).clone())));
            diags.push(Diagnostic::new(
                Code::C203,
                None,
                subjects,
                format!(
                    "Process '{focus}' is decomposed by more than one diagram: {}",
                    sorted
                        .iter()
                        .map(|t| format!("'{t}'"))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            ));
        }
    }

    for diagram in &project.diagrams {
        diags.extend(syntax::check_diagram(diagram));
    }

    for pair in &pairs {
        let parent = &project.diagrams[pair.parent];
        let child = &project.diagrams[pair.child];
        let (_, pair_diags) = check_balancing(parent, child).expect("pair resolved");
        diags.extend(pair_diags);
    }

    diags
}
