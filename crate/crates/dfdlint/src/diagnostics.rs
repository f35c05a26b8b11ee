//! Diagnostic catalog, severity model, and report renderers.
//!
//! Every finding the checkers can produce is identified by a [`Code`] from a
//! closed catalog. Codes in the `S` range are per-diagram syntax errors, `C`
//! codes are project- and cross-diagram consistency errors, and `W` codes are
//! warnings. The text renderer mirrors the classic CASE-tool error list; the
//! structured renderer emits a stable JSON array for machine consumption.

use std::fmt;

use serde::Serialize;

use crate::dsl::SourceSpan;
use crate::model::{Name, ProcessId};

/// Severity of a diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn is_error(self) -> bool {
        matches!(self, Severity::Error)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The closed catalog of diagnostic codes.
///
/// Variant order is catalog order; aggregated check output is emitted in this
/// order so reports are deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    /// A data flow endpoint names no declared element.
    S001,
    /// A process has no input data flow.
    S101,
    /// A process has no output data flow.
    S102,
    /// A data store has no input data flow.
    S103,
    /// A data store has no output data flow.
    S104,
    /// An external entity has no data flows at all.
    S105,
    /// A data flow connects two external entities.
    S201,
    /// A data flow connects two data stores.
    S202,
    /// A data flow connects an external entity and a data store.
    S203,
    /// A data flow connects an element to itself.
    S205,
    /// Duplicate process name or number within a diagram.
    S301,
    /// Duplicate data flow name within a diagram.
    S302,
    /// Duplicate data store name within a diagram.
    S303,
    /// Duplicate external entity name within a diagram.
    S304,
    /// A context diagram does not consist of exactly one process numbered "0".
    S501,
    /// A data store is declared in a context diagram.
    S502,
    /// A context data flow does not connect the system process and an entity.
    S503,
    /// A process reuses a name for both an input and an output flow.
    W601,
    /// A process number breaks the decomposition numbering convention.
    W701,
    /// An external entity on the parent boundary is missing from the child.
    C101,
    /// The child declares an external entity beyond the parent boundary.
    C102,
    /// A boundary data flow of the parent is missing from the child.
    C103,
    /// The child adds a boundary data flow the parent does not have.
    C104,
    /// The project does not contain exactly one context diagram.
    C105,
    /// A data store on the parent boundary is missing from the child.
    C106,
    /// A decomposed process is not declared in any parent diagram.
    C202,
    /// A process is decomposed by more than one diagram.
    C203,
}

impl Code {
    /// Every code, in catalog order.
    pub const ALL: [Code; 27] = [
        Code::S001,
        Code::S101,
        Code::S102,
        Code::S103,
        Code::S104,
        Code::S105,
        Code::S201,
        Code::S202,
        Code::S203,
        Code::S205,
        Code::S301,
        Code::S302,
        Code::S303,
        Code::S304,
        Code::S501,
        Code::S502,
        Code::S503,
        Code::W601,
        Code::W701,
        Code::C101,
        Code::C102,
        Code::C103,
        Code::C104,
        Code::C105,
        Code::C106,
        Code::C202,
        Code::C203,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Code::S001 => "S001",
            Code::S101 => "S101",
            Code::S102 => "S102",
            Code::S103 => "S103",
            Code::S104 => "S104",
            Code::S105 => "S105",
            Code::S201 => "S201",
            Code::S202 => "S202",
            Code::S203 => "S203",
            Code::S205 => "S205",
            Code::S301 => "S301",
            Code::S302 => "S302",
            Code::S303 => "S303",
            Code::S304 => "S304",
            Code::S501 => "S501",
            Code::S502 => "S502",
            Code::S503 => "S503",
            Code::W601 => "W601",
            Code::W701 => "W701",
            Code::C101 => "C101",
            Code::C102 => "C102",
            Code::C103 => "C103",
            Code::C104 => "C104",
            Code::C105 => "C105",
            Code::C106 => "C106",
            Code::C202 => "C202",
            Code::C203 => "C203",
        }
    }

    /// `S` and `C` codes are errors; `W` codes are warnings.
    pub fn severity(self) -> Severity {
        match self {
            Code::W601 | Code::W701 => Severity::Warning,
            _ => Severity::Error,
        }
    }

    /// The modeling rule the code enforces.
    pub fn rule(self) -> &'static str {
        match self {
            Code::S001 => "every data flow endpoint must name a declared element",
            Code::S101 => "at least one input data flow for a process",
            Code::S102 => "at least one output data flow for a process",
            Code::S103 => "at least one input data flow for a data store",
            Code::S104 => "at least one output data flow for a data store",
            Code::S105 => "at least one input or output data flow for an external entity",
            Code::S201 => "a data flow cannot connect one external entity to another",
            Code::S202 => "data cannot move directly from one data store to another",
            Code::S203 => "a data flow cannot connect an external entity to a data store",
            Code::S205 => "a data flow connects two distinct elements",
            Code::S301 => "process names and numbers are unique within a diagram",
            Code::S302 => "data flow names are unique within a diagram",
            Code::S303 => "data store names are unique within a diagram",
            Code::S304 => "external entity names are unique within a diagram",
            Code::S501 => "a context diagram consists of exactly one process, numbered 0",
            Code::S502 => "data stores may not appear in a context diagram",
            Code::S503 => "context data flows connect the system process and an entity",
            Code::W601 => "output data flows usually have different names than input data flows",
            Code::W701 => "process numbers follow the dotted decomposition convention",
            Code::C101 => "every external entity on the parent boundary appears in the child",
            Code::C102 => "the child declares no external entities beyond the parent boundary",
            Code::C103 => "every boundary data flow of the decomposed process appears in the child",
            Code::C104 => "the child adds no boundary data flows beyond the parent",
            Code::C105 => "every set of data flow diagrams has exactly one context diagram",
            Code::C106 => "every data store on the parent boundary appears in the child",
            Code::C202 => "a decomposed process is declared in exactly one parent diagram",
            Code::C203 => "a process is decomposed by at most one diagram",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An element a diagnostic is about.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subject {
    Process(ProcessId),
    Entity(Name),
    Store(Name),
    Flow(Name),
    Diagram(Name),
}

impl Subject {
    pub fn kind_str(&self) -> &'static str {
        match self {
            Subject::Process(_) => "process",
            Subject::Entity(_) => "entity",
            Subject::Store(_) => "store",
            Subject::Flow(_) => "flow",
            Subject::Diagram(_) => "diagram",
        }
    }

    pub fn value_str(&self) -> &str {
        match self {
            Subject::Process(id) => id.as_str(),
            Subject::Entity(n) | Subject::Store(n) | Subject::Flow(n) | Subject::Diagram(n) => {
                n.as_str()
            }
        }
    }
}

/// A single coded finding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: Code,
    pub severity: Severity,
    /// Diagram the finding belongs to; `None` for project-level codes.
    pub diagram: Option<Name>,
    pub subjects: Vec<Subject>,
    pub message: String,
    pub span: Option<SourceSpan>,
}

impl Diagnostic {
    pub fn new(
        code: Code,
        diagram: Option<&Name>,
        subjects: Vec<Subject>,
        message: String,
    ) -> Self {
        Diagnostic {
            code,
            severity: code.severity(),
            diagram: diagram.cloned(),
            subjects,
            message,
            span: None,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity.is_error()
    }
}

/// Renders the plain-text error list.
///
/// `diagram_count` selects the wording of the all-clear line: a two-diagram
/// project reports `Both diagrams are consistent.`, anything else reports
/// `All diagrams are consistent.`.
pub fn render_text(diags: &[Diagnostic], diagram_count: usize) -> String {
    let mut out = String::from("Error List\n");
    if diags.is_empty() {
        if diagram_count == 2 {
            out.push_str("Both diagrams are consistent.\n");
        } else {
            out.push_str("All diagrams are consistent.\n");
        }
        return out;
    }

    let sections: [(&str, Vec<&Diagnostic>); 3] = [
        (
            "Syntax Errors",
            diags
                .iter()
                .filter(|d| d.is_error() && d.code.as_str().starts_with('S'))
                .collect(),
        ),
        (
            "Semantics Errors",
            diags
                .iter()
                .filter(|d| d.is_error() && d.code.as_str().starts_with('C'))
                .collect(),
        ),
        (
            "Warnings",
            diags.iter().filter(|d| !d.is_error()).collect(),
        ),
    ];

    for (header, entries) in &sections {
        if entries.is_empty() {
            continue;
        }
        out.push('\n');
        out.push_str(header);
        out.push('\n');
        for d in entries {
            out.push_str(d.code.as_str());
            out.push_str(": ");
            out.push_str(&d.message);
            out.push('\n');
        }
    }
    out
}

#[derive(Serialize)]
struct WireSubject<'a> {
    kind: &'static str,
    name: &'a str,
}

#[derive(Serialize)]
struct WireSpan {
    line: u32,
    column: u32,
    length: u32,
}

#[derive(Serialize)]
struct WireDiagnostic<'a> {
    code: &'static str,
    severity: &'static str,
    diagram: Option<&'a str>,
    subjects: Vec<WireSubject<'a>>,
    message: &'a str,
    span: Option<WireSpan>,
}

/// Renders a stable JSON array of diagnostics.
///
/// Entries are sorted by (first appearance of their diagram in the input,
/// code, subjects) so the output is independent of checker scheduling.
pub fn render_structured(diags: &[Diagnostic]) -> String {
    let mut order: Vec<usize> = (0..diags.len()).collect();
    let diagram_rank = |d: &Diagnostic| -> usize {
        match &d.diagram {
            // Project-level findings sort ahead of every diagram.
            None => 0,
            Some(name) => {
                1 + diags
                    .iter()
                    .position(|x| x.diagram.as_ref() == Some(name))
                    .unwrap_or(diags.len())
            }
        }
    };
    order.sort_by(|&a, &b| {
        let (da, db) = (&diags[a], &diags[b]);
        diagram_rank(da)
            .cmp(&diagram_rank(db))
            .then_with(|| da.code.as_str().cmp(db.code.as_str()))
            .then_with(|| da.subjects.cmp(&db.subjects))
            .then_with(|| a.cmp(&b))
    });

    let wire: Vec<WireDiagnostic<'_>> = order
        .into_iter()
        .map(|i| {
            let d = &diags[i];
            WireDiagnostic {
                code: d.code.as_str(),
                severity: d.severity.as_str(),
                diagram: d.diagram.as_ref().map(Name::as_str),
                subjects: d
                    .subjects
                    .iter()
                    .map(|s| WireSubject {
                        kind: s.kind_str(),
                        name: s.value_str(),
                    })
                    .collect(),
                message: &d.message,
                span: d.span.as_ref().map(|s| WireSpan {
                    line: s.line,
                    column: s.column,
                    length: s.length,
                }),
            }
        })
        .collect();
    serde_json::to_string_pretty(&wire).expect("diagnostic serialization cannot fail")
}
