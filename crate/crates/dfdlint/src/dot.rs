//! Graphviz export: one digraph per diagram, byte-deterministic.
//!
//! Processes render as rounded boxes labeled `id: name`, external entities as
//! plain boxes, stores as records labeled `Dn | name`, flows as labeled
//! directed edges. Node identifiers are stable functions of the diagram title
//! and the element's kind and key, so equal projects export identical bytes.

use crate::model::{Diagram, DiagramKind, FlowEndpoint, Project};

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

fn node_id(diagram: &Diagram, kind: &str, key: &str) -> String {
    format!("{}/{kind}/{key}", diagram.title)
}

fn endpoint_node_id(diagram: &Diagram, ep: &FlowEndpoint) -> String {
    match ep {
        FlowEndpoint::Process(id) => node_id(diagram, "process", id.as_str()),
        FlowEndpoint::Entity(n) => node_id(diagram, "entity", n.as_str()),
        FlowEndpoint::Store(n) => node_id(diagram, "store", n.as_str()),
    }
}

/// Renders the whole project. Flows with unresolved endpoints are omitted;
/// they have no node to attach to and are reported by validation instead.
pub fn export_dot(project: &Project) -> String {
    let mut out = String::from("// dfdlint export\n");
    out.push_str(&format!("// diagrams: {}\n", project.diagrams.len()));

    for diagram in &project.diagrams {
        let kind_label = match &diagram.kind {
            DiagramKind::Context => "context".to_owned(),
            DiagramKind::Decomposition(id) => format!("decomposes {id}"),
        };
        out.push('\n');
        out.push_str(&format!("digraph \"{}\" {{\n", escape(diagram.title.as_str())));
        out.push_str(&format!(
            "  label=\"{} ({kind_label})\";\n",
            escape(diagram.title.as_str())
        ));

        let mut processes: Vec<_> = diagram.processes.iter().collect();
        processes.sort();
        for p in processes {
            out.push_str(&format!(
                "  \"{}\" [shape=box, style=rounded, label=\"{}: {}\"];\n",
                escape(&node_id(diagram, "process", p.id.as_str())),
                escape(p.id.as_str()),
                escape(p.name.as_str())
            ));
        }

        let mut entities: Vec<_> = diagram.entities.iter().collect();
        entities.sort();
        for e in entities {
            out.push_str(&format!(
                "  \"{}\" [shape=box, label=\"{}\"];\n",
                escape(&node_id(diagram, "entity", e.name.as_str())),
                escape(e.name.as_str())
            ));
        }

        let mut stores: Vec<_> = diagram.stores.iter().collect();
        stores.sort();
        for (i, s) in stores.iter().enumerate() {
            out.push_str(&format!(
                "  \"{}\" [shape=record, label=\"D{} | {}\"];\n",
                escape(&node_id(diagram, "store", s.name.as_str())),
                i + 1,
                escape(s.name.as_str())
            ));
        }

        let mut flows: Vec<_> = diagram
            .flows
            .iter()
            .filter(|f| diagram.flow_is_resolved(f))
            .collect();
        flows.sort();
        for f in flows {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                escape(&endpoint_node_id(diagram, &f.source)),
                escape(&endpoint_node_id(diagram, &f.target)),
                escape(f.name.as_str())
            ));
        }

        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_project;

    const AIS: &str = include_str!("../fixtures/ais_ok.dfd");

    #[test]
    fn level0_graph_has_four_nodes_and_five_edges() {
        let project = parse_project(AIS).unwrap();
        let dot = export_dot(&project);
        let level0 = dot.split("digraph").nth(2).unwrap();
        let nodes = level0.matches("[shape=").count();
        let edges = level0.matches(" -> ").count();
        assert_eq!(nodes, 4);
        assert_eq!(edges, 5);
    }

    #[test]
    fn empty_project_is_a_header_comment() {
        let dot = export_dot(&Project::default());
        assert_eq!(dot, "// dfdlint export\n// diagrams: 0\n");
    }

    #[test]
    fn export_is_deterministic_and_order_insensitive() {
        let project = parse_project(AIS).unwrap();
        let mut shuffled = project.clone();
        for d in &mut shuffled.diagrams {
            d.flows.reverse();
            d.processes.reverse();
        }
        assert_eq!(export_dot(&project), export_dot(&shuffled));
    }

    #[test]
    fn store_labels_carry_record_numbers() {
        let project = parse_project(AIS).unwrap();
        let dot = export_dot(&project);
        assert!(dot.contains("label=\"D1 | academic store\""));
    }

    #[test]
    fn labels_escape_quotes() {
        let src = "diagram \"Say \\\"hi\\\"\" context { process 0 \"sys\" }";
        let project = parse_project(src).unwrap();
        let dot = export_dot(&project);
        assert!(dot.contains("digraph \"Say \\\"hi\\\"\""));
    }
}
