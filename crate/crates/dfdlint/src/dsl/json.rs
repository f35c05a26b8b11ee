//! Canonical JSON documents for projects.
//!
//! Serialization is deterministic: keys appear in fixed schema order and
//! element lists are sorted by kind and name (process numbers numerically).
//! Deserialization walks the document by hand so every schema violation
//! reports a JSON-pointer-style path.

use serde::Serialize;
use serde_json::Value;

use super::{ParseError, SourceSpan};
use crate::model::{
    DataStore, Diagram, DiagramKind, ExternalEntity, Flow, FlowEndpoint, Name, Process,
    ProcessId, Project,
};

const VERSION: u64 = 1;

#[derive(Serialize)]
struct WireProject<'a> {
    version: u64,
    diagrams: Vec<WireDiagram<'a>>,
}

#[derive(Serialize)]
struct WireDiagram<'a> {
    title: &'a str,
    kind: WireKind<'a>,
    processes: Vec<WireProcess<'a>>,
    entities: Vec<WireNamed<'a>>,
    stores: Vec<WireNamed<'a>>,
    flows: Vec<WireFlow<'a>>,
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum WireKind<'a> {
    Context(bool),
    Decomposes(&'a str),
}

#[derive(Serialize)]
struct WireProcess<'a> {
    id: &'a str,
    name: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    desc: Option<&'a str>,
}

#[derive(Serialize)]
struct WireNamed<'a> {
    name: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    desc: Option<&'a str>,
}

#[derive(Serialize)]
struct WireFlow<'a> {
    name: &'a str,
    from: WireEndpoint<'a>,
    to: WireEndpoint<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    desc: Option<&'a str>,
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum WireEndpoint<'a> {
    Process(&'a str),
    Entity(&'a str),
    Store(&'a str),
}

fn wire_endpoint(ep: &FlowEndpoint) -> WireEndpoint<'_> {
    match ep {
        FlowEndpoint::Process(id) => WireEndpoint::Process(id.as_str()),
        FlowEndpoint::Entity(n) => WireEndpoint::Entity(n.as_str()),
        FlowEndpoint::Store(n) => WireEndpoint::Store(n.as_str()),
    }
}

/// Renders the canonical document. Equal projects render to identical bytes.
pub fn to_canonical_json(project: &Project) -> String {
    let diagrams = project
        .diagrams
        .iter()
        .map(|d| {
            let mut processes: Vec<&Process> = d.processes.iter().collect();
            processes.sort();
            let mut entities: Vec<&ExternalEntity> = d.entities.iter().collect();
            entities.sort();
            let mut stores: Vec<&DataStore> = d.stores.iter().collect();
            stores.sort();
            let mut flows: Vec<&Flow> = d.flows.iter().collect();
            flows.sort();
            WireDiagram {
                title: d.title.as_str(),
                kind: match &d.kind {
                    DiagramKind::Context => WireKind::Context(true),
                    DiagramKind::Decomposition(id) => WireKind::Decomposes(id.as_str()),
                },
                processes: processes
                    .into_iter()
                    .map(|p| WireProcess {
                        id: p.id.as_str(),
                        name: p.name.as_str(),
                        desc: p.description.as_deref(),
                    })
                    .collect(),
                entities: entities
                    .into_iter()
                    .map(|e| WireNamed {
                        name: e.name.as_str(),
                        desc: e.description.as_deref(),
                    })
                    .collect(),
                stores: stores
                    .into_iter()
                    .map(|s| WireNamed {
                        name: s.name.as_str(),
                        desc: s.description.as_deref(),
                    })
                    .collect(),
                flows: flows
                    .into_iter()
                    .map(|f| WireFlow {
                        name: f.name.as_str(),
                        from: wire_endpoint(&f.source),
                        to: wire_endpoint(&f.target),
                        desc: f.description.as_deref(),
                    })
                    .collect(),
            }
        })
        .collect();
    let wire = WireProject {
        version: VERSION,
        diagrams,
    };
    serde_json::to_string_pretty(&wire).expect("project serialization cannot fail")
}

struct Walker {
    errors: Vec<ParseError>,
}

const NO_SPAN: SourceSpan = SourceSpan {
    line: 1,
    column: 1,
    length: 0,
};

impl Walker {
    fn fail(&mut self, path: &str, message: impl Into<String>) {
        self.errors
            .push(ParseError::new(NO_SPAN, format!("{path}: {}", message.into())));
    }

    fn object<'v>(
        &mut self,
        value: &'v Value,
        path: &str,
        known: &[&str],
    ) -> Option<&'v serde_json::Map<String, Value>> {
        match value.as_object() {
            Some(map) => {
                for key in map.keys() {
                    if !known.contains(&key.as_str()) {
                        self.fail(&format!("{path}/{key}"), "unknown field");
                    }
                }
                Some(map)
            }
            None => {
                self.fail(path, "expected an object");
                None
            }
        }
    }

    fn required<'v>(
        &mut self,
        map: &'v serde_json::Map<String, Value>,
        path: &str,
        key: &str,
    ) -> Option<&'v Value> {
        match map.get(key) {
            Some(v) => Some(v),
            None => {
                self.fail(&format!("{path}/{key}"), "missing required field");
                None
            }
        }
    }

    fn string<'v>(&mut self, value: &'v Value, path: &str) -> Option<&'v str> {
        match value.as_str() {
            Some(s) => Some(s),
            None => {
                self.fail(path, "expected a string");
                None
            }
        }
    }

    fn name(&mut self, value: &Value, path: &str) -> Option<Name> {
        let raw = self.string(value, path)?;
        match Name::new(raw) {
            Ok(name) => Some(name),
            Err(err) => {
                self.fail(path, err.to_string());
                None
            }
        }
    }

    fn process_id(&mut self, value: &Value, path: &str) -> Option<ProcessId> {
        let raw = self.string(value, path)?;
        match ProcessId::new(raw) {
            Ok(id) => Some(id),
            Err(err) => {
                self.fail(path, err.to_string());
                None
            }
        }
    }

    fn optional_desc(
        &mut self,
        map: &serde_json::Map<String, Value>,
        path: &str,
    ) -> Option<String> {
        map.get("desc").and_then(|v| {
            self.string(v, &format!("{path}/desc")).map(str::to_owned)
        })
    }

    fn array<'v>(
        &mut self,
        map: &'v serde_json::Map<String, Value>,
        path: &str,
        key: &str,
    ) -> Vec<(usize, &'v Value)> {
        match map.get(key) {
            None => Vec::new(),
            Some(Value::Array(items)) => items.iter().enumerate().collect(),
            Some(_) => {
                self.fail(&format!("{path}/{key}"), "expected an array");
                Vec::new()
            }
        }
    }

    fn endpoint(&mut self, value: &Value, path: &str) -> Option<FlowEndpoint> {
        let map = match value.as_object() {
            Some(map) => map,
            None => {
                self.fail(path, "expected an endpoint object");
                return None;
            }
        };
        if map.len() != 1 {
            self.fail(
                path,
                "expected exactly one of 'process', 'entity' or 'store'",
            );
            return None;
        }
        let (key, inner) = map.iter().next().unwrap();
        match key.as_str() {
            "process" => self
                .process_id(inner, &format!("{path}/process"))
                .map(FlowEndpoint::Process),
            "entity" => self
                .name(inner, &format!("{path}/entity"))
                .map(FlowEndpoint::Entity),
            "store" => self
                .name(inner, &format!("{path}/store"))
                .map(FlowEndpoint::Store),
            other => {
                self.fail(&format!("{path}/{other}"), "unknown endpoint kind");
                None
            }
        }
    }

    fn kind(&mut self, value: &Value, path: &str) -> Option<DiagramKind> {
        let map = match value.as_object() {
            Some(map) => map,
            None => {
                self.fail(path, "expected a kind object");
                return None;
            }
        };
        if map.len() != 1 {
            self.fail(path, "expected exactly one of 'context' or 'decomposes'");
            return None;
        }
        let (key, inner) = map.iter().next().unwrap();
        match key.as_str() {
            "context" => match inner.as_bool() {
                Some(true) => Some(DiagramKind::Context),
                _ => {
                    self.fail(&format!("{path}/context"), "expected true");
                    None
                }
            },
            "decomposes" => self
                .process_id(inner, &format!("{path}/decomposes"))
                .map(DiagramKind::Decomposition),
            other => {
                self.fail(&format!("{path}/{other}"), "unknown kind");
                None
            }
        }
    }

    fn diagram(&mut self, value: &Value, path: &str) -> Option<Diagram> {
        let map = self.object(
            value,
            path,
            &["title", "kind", "processes", "entities", "stores", "flows"],
        )?;
        let title = self
            .required(map, path, "title")
            .and_then(|v| self.name(v, &format!("{path}/title")));
        let kind = self
            .required(map, path, "kind")
            .and_then(|v| self.kind(v, &format!("{path}/kind")));

        let mut processes = Vec::new();
        for (i, item) in self.array(map, path, "processes") {
            let ipath = format!("{path}/processes/{i}");
            let Some(obj) = self.object(item, &ipath, &["id", "name", "desc"]) else {
                continue;
            };
            let id = self
                .required(obj, &ipath, "id")
                .and_then(|v| self.process_id(v, &format!("{ipath}/id")));
            let name = self
                .required(obj, &ipath, "name")
                .and_then(|v| self.name(v, &format!("{ipath}/name")));
            if let (Some(id), Some(name)) = (id, name) {
                processes.push(Process {
                    id,
                    name,
                    description: self.optional_desc(obj, &ipath),
                });
            }
        }

        let mut entities = Vec::new();
        for (i, item) in self.array(map, path, "entities") {
            let ipath = format!("{path}/entities/{i}");
            let Some(obj) = self.object(item, &ipath, &["name", "desc"]) else {
                continue;
            };
            if let Some(name) = self
                .required(obj, &ipath, "name")
                .and_then(|v| self.name(v, &format!("{ipath}/name")))
            {
                entities.push(ExternalEntity {
                    name,
                    description: self.optional_desc(obj, &ipath),
                });
            }
        }

        let mut stores = Vec::new();
        for (i, item) in self.array(map, path, "stores") {
            let ipath = format!("{path}/stores/{i}");
            let Some(obj) = self.object(item, &ipath, &["name", "desc"]) else {
                continue;
            };
            if let Some(name) = self
                .required(obj, &ipath, "name")
                .and_then(|v| self.name(v, &format!("{ipath}/name")))
            {
                stores.push(DataStore {
                    name,
                    description: self.optional_desc(obj, &ipath),
                });
            }
        }

        let mut flows = Vec::new();
        for (i, item) in self.array(map, path, "flows") {
            let ipath = format!("{path}/flows/{i}");
            let Some(obj) = self.object(item, &ipath, &["name", "from", "to", "desc"]) else {
                continue;
            };
            let name = self
                .required(obj, &ipath, "name")
                .and_then(|v| self.name(v, &format!("{ipath}/name")));
            let from = self
                .required(obj, &ipath, "from")
                .and_then(|v| self.endpoint(v, &format!("{ipath}/from")));
            let to = self
                .required(obj, &ipath, "to")
                .and_then(|v| self.endpoint(v, &format!("{ipath}/to")));
            if let (Some(name), Some(source), Some(target)) = (name, from, to) {
                flows.push(Flow {
                    name,
                    source,
                    target,
                    description: self.optional_desc(obj, &ipath),
                });
            }
        }

        match (title, kind) {
            (Some(title), Some(kind)) => {
                Some(Diagram::build(title, kind, processes, entities, stores, flows).0)
            }
            _ => None,
        }
    }
}

/// Parses a canonical document back into a project. Schema violations carry
/// JSON-pointer-style paths in their messages.
pub fn from_json(document: &str) -> Result<Project, Vec<ParseError>> {
    let value: Value = match serde_json::from_str(document) {
        Ok(value) => value,
        Err(err) => {
            let span = SourceSpan::new(err.line().max(1) as u32, err.column().max(1) as u32, 0);
            return Err(vec![ParseError::new(span, format!("invalid JSON: {err}"))]);
        }
    };

    let mut walker = Walker { errors: Vec::new() };
    let mut diagrams = Vec::new();
    if let Some(map) = walker.object(&value, "", &["version", "diagrams"]) {
        if let Some(version) = walker.required(map, "", "version") {
            if version.as_u64() != Some(VERSION) {
                walker.fail("/version", format!("expected {VERSION}"));
            }
        }
        if let Some(list) = walker.required(map, "", "diagrams") {
            match list.as_array() {
                Some(items) => {
                    for (i, item) in items.iter().enumerate() {
                        if let Some(diagram) = walker.diagram(item, &format!("/diagrams/{i}")) {
                            diagrams.push(diagram);
                        }
                    }
                }
                None => walker.fail("/diagrams", "expected an array"),
            }
        }
    }

    let mut seen = std::collections::BTreeSet::new();
    for (i, diagram) in diagrams.iter().enumerate() {
        if !seen.insert(diagram.title.clone()) {
            walker.fail(
                &format!("/diagrams/{i}/title"),
                format!("duplicate diagram title '{}'", diagram.title),
            );
        }
    }

    if walker.errors.is_empty() {
        Ok(Project::new(diagrams))
    } else {
        Err(walker.errors)
    }
}
