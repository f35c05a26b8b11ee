//! Seeded generation of projects that pass every check.
//!
//! The context diagram carries one in-flow and one out-flow per external
//! entity. Level 0 mirrors those boundary flows exactly and adds stores and
//! internal process-to-process flows; flow placement guarantees every process
//! at least one input and one output. Each store keeps its read and its write
//! on the same host process so that any decomposition boundary either carries
//! both store flows or neither. Deeper levels decompose one process into a
//! single subprocess that inherits the whole boundary.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{
    DataStore, Diagram, DiagramKind, ExternalEntity, Flow, FlowEndpoint, Name, Process,
    ProcessId, Project,
};

/// Shape parameters for [`generate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub n_entities: usize,
    pub n_level0_processes: usize,
    pub n_stores: usize,
    pub n_internal_flows: usize,
    /// Number of decomposition levels below the context diagram.
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),
}

const ENTITY_WORDS: &[&str] = &["Customer", "Clerk", "Supplier", "Manager", "Auditor"];
const PROCESS_WORDS: &[&str] = &[
    "handle request",
    "update record",
    "review report",
    "issue notice",
    "compile summary",
];
const STORE_WORDS: &[&str] = &["ledger", "archive", "registry"];
const FLOW_WORDS: &[&str] = &["order", "receipt", "notice", "report", "record", "summary"];

/// Fresh, globally unique names from fixed word pools with numeric suffixes.
struct Pools {
    entities: usize,
    processes: usize,
    stores: usize,
    flows: usize,
}

impl Pools {
    fn new() -> Self {
        Pools { entities: 0, processes: 0, stores: 0, flows: 0 }
    }

    fn next(pool: &[&str], counter: &mut usize) -> Name {
        let word = pool[*counter % pool.len()];
        *counter += 1;
        Name::new(&format!("{word} {counter}")).expect("pool names are non-empty")
    }

    fn entity(&mut self) -> Name {
        Self::next(ENTITY_WORDS, &mut self.entities)
    }

    fn process(&mut self) -> Name {
        Self::next(PROCESS_WORDS, &mut self.processes)
    }

    fn store(&mut self) -> Name {
        Self::next(STORE_WORDS, &mut self.stores)
    }

    fn flow(&mut self) -> Name {
        Self::next(FLOW_WORDS, &mut self.flows)
    }
}

fn pid(text: &str) -> ProcessId {
    ProcessId::new(text).expect("generated ids are well-formed")
}

fn flow(name: Name, source: FlowEndpoint, target: FlowEndpoint) -> Flow {
    Flow { name, source, target, description: None }
}

/// Pops a preferred index from `need`, or draws any index below `k`.
fn take_need(need: &mut Vec<usize>, rng: &mut ChaCha8Rng, k: usize) -> usize {
    if need.is_empty() {
        rng.gen_range(0..k)
    } else {
        need.remove(rng.gen_range(0..need.len()))
    }
}

/// Builds a project that passes `check_project` with zero errors and zero
/// warnings; identical for identical parameters.
pub fn generate(params: &GenParams) -> Result<Project, GenError> {
    let k = params.n_level0_processes;
    if params.n_entities < 1 {
        return Err(GenError::InfeasibleParams("n_entities must be at least 1".into()));
    }
    if k < 1 {
        return Err(GenError::InfeasibleParams(
            "n_level0_processes must be at least 1".into(),
        ));
    }
    if params.depth < 1 {
        return Err(GenError::InfeasibleParams("depth must be at least 1".into()));
    }
    if k == 1 && params.n_internal_flows > 0 {
        return Err(GenError::InfeasibleParams(
            "internal flows with a single level-0 process would need a self-loop".into(),
        ));
    }
    if params.n_entities + params.n_stores + params.n_internal_flows < k {
        return Err(GenError::InfeasibleParams(format!(
            "{} level-0 processes cannot all receive an input from {} entities, {} stores and {} internal flows",
            k, params.n_entities, params.n_stores, params.n_internal_flows
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut pools = Pools::new();

    let entity_names: Vec<Name> = (0..params.n_entities).map(|_| pools.entity()).collect();
    let entity_in_flows: Vec<Name> = (0..params.n_entities).map(|_| pools.flow()).collect();
    let entity_out_flows: Vec<Name> = (0..params.n_entities).map(|_| pools.flow()).collect();

    let context = Diagram {
        title: Name::new("Context").unwrap(),
        kind: DiagramKind::Context,
        processes: vec![Process {
            id: pid("0"),
            name: pools.process(),
            description: None,
        }],
        entities: entity_names
            .iter()
            .map(|name| ExternalEntity { name: name.clone(), description: None })
            .collect(),
        stores: vec![],
        flows: entity_names
            .iter()
            .zip(&entity_in_flows)
            .map(|(entity, name)| {
                flow(
                    name.clone(),
                    FlowEndpoint::Entity(entity.clone()),
                    FlowEndpoint::Process(pid("0")),
                )
            })
            .chain(entity_names.iter().zip(&entity_out_flows).map(|(entity, name)| {
                flow(
                    name.clone(),
                    FlowEndpoint::Process(pid("0")),
                    FlowEndpoint::Entity(entity.clone()),
                )
            }))
            .collect(),
    };

    // Level 0: processes 1..=k; boundary flows mirror the context exactly.
    let process_ids: Vec<ProcessId> = (1..=k).map(|i| pid(&i.to_string())).collect();
    let mut level0_flows: Vec<Flow> = Vec::new();
    let mut ins_needed: Vec<usize> = (0..k).collect();
    let mut outs_needed: Vec<usize> = (0..k).collect();
    ins_needed.shuffle(&mut rng);
    outs_needed.shuffle(&mut rng);

    // A chain of internal flows covers the middle of both need lists.
    let chain_len = params.n_internal_flows.min(k.saturating_sub(1));
    for j in 0..chain_len {
        level0_flows.push(flow(
            pools.flow(),
            FlowEndpoint::Process(process_ids[j].clone()),
            FlowEndpoint::Process(process_ids[j + 1].clone()),
        ));
        ins_needed.retain(|&i| i != j + 1);
        outs_needed.retain(|&i| i != j);
    }
    for _ in chain_len..params.n_internal_flows {
        let target = take_need(&mut ins_needed, &mut rng, k);
        let source = {
            let pos = outs_needed.iter().position(|&i| i != target);
            match pos {
                Some(pos) => outs_needed.remove(pos),
                None => {
                    let mut source = rng.gen_range(0..k);
                    while source == target {
                        source = rng.gen_range(0..k);
                    }
                    source
                }
            }
        };
        level0_flows.push(flow(
            pools.flow(),
            FlowEndpoint::Process(process_ids[source].clone()),
            FlowEndpoint::Process(process_ids[target].clone()),
        ));
    }

    // Each store reads and writes through one host process.
    let store_names: Vec<Name> = (0..params.n_stores).map(|_| pools.store()).collect();
    for store in &store_names {
        let both: Vec<usize> = ins_needed
            .iter()
            .copied()
            .filter(|i| outs_needed.contains(i))
            .collect();
        let host = if let Some(&host) = both.first() {
            host
        } else if let Some(&host) = ins_needed.first().or(outs_needed.first()) {
            host
        } else {
            rng.gen_range(0..k)
        };
        ins_needed.retain(|&i| i != host);
        outs_needed.retain(|&i| i != host);
        level0_flows.push(flow(
            pools.flow(),
            FlowEndpoint::Process(process_ids[host].clone()),
            FlowEndpoint::Store(store.clone()),
        ));
        level0_flows.push(flow(
            pools.flow(),
            FlowEndpoint::Store(store.clone()),
            FlowEndpoint::Process(process_ids[host].clone()),
        ));
    }

    for (entity, name) in entity_names.iter().zip(&entity_in_flows) {
        let target = take_need(&mut ins_needed, &mut rng, k);
        level0_flows.push(flow(
            name.clone(),
            FlowEndpoint::Entity(entity.clone()),
            FlowEndpoint::Process(process_ids[target].clone()),
        ));
    }
    for (entity, name) in entity_names.iter().zip(&entity_out_flows) {
        let source = take_need(&mut outs_needed, &mut rng, k);
        level0_flows.push(flow(
            name.clone(),
            FlowEndpoint::Process(process_ids[source].clone()),
            FlowEndpoint::Entity(entity.clone()),
        ));
    }

    if !ins_needed.is_empty() || !outs_needed.is_empty() {
        return Err(GenError::InfeasibleParams(
            "flow placement could not give every process both an input and an output".into(),
        ));
    }

    let level0 = Diagram {
        title: Name::new("Level 0").unwrap(),
        kind: DiagramKind::Decomposition(pid("0")),
        processes: process_ids
            .iter()
            .map(|id| Process { id: id.clone(), name: pools.process(), description: None })
            .collect(),
        entities: context.entities.clone(),
        stores: store_names
            .iter()
            .map(|name| DataStore { name: name.clone(), description: None })
            .collect(),
        flows: level0_flows,
    };

    let mut diagrams = vec![context, level0];

    // Deeper levels: decompose one process of the deepest diagram into a
    // single subprocess carrying the entire boundary.
    for _ in 1..params.depth {
        let parent = diagrams.last().unwrap();
        let parent_focus = parent.kind.focus().cloned();
        let internal: Vec<&Process> = parent
            .processes
            .iter()
            .filter(|p| match &parent_focus {
                None => false,
                Some(f) => p.id.is_within(f),
            })
            .collect();
        let focus = internal[rng.gen_range(0..internal.len())].id.clone();
        let sub_id = pid(&format!("{}.1", focus.as_str()));

        let mut entities = Vec::new();
        let mut stores = Vec::new();
        let mut replicas = Vec::new();
        let mut flows = Vec::new();
        let focus_ep = FlowEndpoint::Process(focus.clone());
        for f in parent.flows.iter() {
            let (far, incoming) = if f.target == focus_ep {
                (&f.source, true)
            } else if f.source == focus_ep {
                (&f.target, false)
            } else {
                continue;
            };
            match far {
                FlowEndpoint::Entity(name) => {
                    if !entities.contains(name) {
                        entities.push(name.clone());
                    }
                }
                FlowEndpoint::Store(name) => {
                    if !stores.contains(name) {
                        stores.push(name.clone());
                    }
                }
                FlowEndpoint::Process(id) => {
                    if !replicas.contains(id) {
                        replicas.push(id.clone());
                    }
                }
            }
            let sub = FlowEndpoint::Process(sub_id.clone());
            flows.push(if incoming {
                flow(f.name.clone(), far.clone(), sub)
            } else {
                flow(f.name.clone(), sub, far.clone())
            });
        }

        let child = Diagram {
            title: Name::new(&format!("Breakdown of process {focus}")).unwrap(),
            kind: DiagramKind::Decomposition(focus),
            processes: std::iter::once(Process {
                id: sub_id,
                name: pools.process(),
                description: None,
            })
            .chain(replicas.into_iter().map(|id| {
                let original = parent.process(&id).expect("replica exists in parent");
                Process {
                    id,
                    name: original.name.clone(),
                    description: original.description.clone(),
                }
            }))
            .collect(),
            entities: entities
                .into_iter()
                .map(|name| ExternalEntity { name, description: None })
                .collect(),
            stores: stores
                .into_iter()
                .map(|name| DataStore { name, description: None })
                .collect(),
            flows,
        };
        diagrams.push(child);
    }

    Ok(Project::new(diagrams))
}
