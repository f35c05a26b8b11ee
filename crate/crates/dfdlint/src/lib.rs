//! Modeling, checking, and reporting for hierarchical data flow diagrams.
//!
//! A project is a context diagram plus decomposition diagrams refining one
//! process each. This crate parses projects from a small declaration DSL (or
//! a canonical JSON document), verifies per-diagram syntax rules (connection
//! legality, degrees, name uniqueness, context shape) and cross-level
//! balancing (every boundary flow, store, and external entity of a decomposed
//! process reappears in its child diagram), and renders deterministic
//! reports. A thin `dfdlint` binary wraps [`cli`].
//!
//! ```
//! use dfdlint::dsl::parse_project;
//! use dfdlint::consistency::check_project;
//!
//! let source = r#"
//! diagram "Context" context {
//!   process 0 "Whole System"
//!   entity "User"
//!   flow "request" from entity "User" to process 0
//!   flow "answer" from process 0 to entity "User"
//! }
//! "#;
//! let project = parse_project(source).unwrap();
//! assert!(check_project(&project).is_empty());
//! ```
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p dfdlint --example validate_project
//! cargo run -p dfdlint --example balancing_report
//! cargo run -p dfdlint --example parse_errors
//! cargo run -p dfdlint --example json_roundtrip
//! cargo run -p dfdlint --example export_dot
//! cargo run -p dfdlint --example generate_project
//! ```

pub mod cli;
pub mod consistency;
pub mod diagnostics;
pub mod dot;
pub mod dsl;
pub mod model;
pub mod syntax;
pub mod testkit;

pub use consistency::{check_balancing, check_project, BalancingReport};
pub use diagnostics::{render_structured, render_text, Code, Diagnostic, Severity};
pub use dsl::{from_json, parse_project, to_canonical_json, ParseError, SourceSpan};
pub use model::{
    BoundarySignature, DataStore, Diagram, DiagramKind, ExternalEntity, Flow, FlowDirection,
    FlowEndpoint, Name, ProcessId, Process, Project,
};
