//! Recursive-descent parser for `.dfd` sources.
//!
//! The parser reports as many errors as it can in one run: after an
//! unrecoverable item error it skips ahead to the next top-level `diagram`
//! keyword and resumes there.

use std::collections::BTreeSet;

use super::lexer::{lex, SpannedToken, Token};
use super::{ParseError, SourceSpan};
use crate::model::{
    DataStore, Diagram, DiagramKind, ExternalEntity, Flow, FlowEndpoint, Name, Process,
    ProcessId, Project,
};

/// Parses an entire project. On failure every collected error is returned;
/// each carries a span inside the source text.
pub fn parse_project(source: &str) -> Result<Project, Vec<ParseError>> {
    let lexed = lex(source);
    let mut parser = Parser {
        tokens: &lexed.tokens,
        pos: 0,
        eof_span: lexed.eof_span,
        errors: lexed.errors,
    };
    let project = parser.project();
    if parser.errors.is_empty() {
        Ok(project)
    } else {
        let mut errors = parser.errors;
        errors.sort_by_key(|e| e.span);
        Err(errors)
    }
}

struct Parser<'a> {
    tokens: &'a [SpannedToken],
    pos: usize,
    eof_span: SourceSpan,
    errors: Vec<ParseError>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a SpannedToken> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&'a SpannedToken> {
        let token = self.tokens.get(self.pos);
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    fn here(&self) -> SourceSpan {
        self.peek().map(|t| t.span).unwrap_or(self.eof_span)
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(t) => format!("found {}", t.token.describe()),
            None => "found end of input".to_owned(),
        }
    }

    fn error_expected(&mut self, expected: &[&str]) {
        let message = format!(
            "expected {}, {}",
            expected.join(" or "),
            self.found()
        );
        self.errors.push(ParseError::with_expected(
            self.here(),
            message,
            expected.iter().map(|s| (*s).to_owned()).collect(),
        ));
    }

    /// Skips ahead to the next top-level `diagram` keyword.
    fn recover_to_diagram(&mut self) {
        while let Some(t) = self.peek() {
            if t.token == Token::Diagram {
                return;
            }
            self.pos += 1;
        }
    }

    fn expect_string(&mut self, what: &str) -> Option<(String, SourceSpan)> {
        match self.peek() {
            Some(SpannedToken {
                token: Token::Str(value),
                span,
            }) => {
                let out = (value.clone(), *span);
                self.pos += 1;
                Some(out)
            }
            _ => {
                self.error_expected(&[what]);
                None
            }
        }
    }

    fn expect_name(&mut self, what: &str) -> Option<Name> {
        let (raw, span) = self.expect_string(what)?;
        match Name::new(&raw) {
            Ok(name) => Some(name),
            Err(err) => {
                self.errors.push(ParseError::new(span, err.to_string()));
                None
            }
        }
    }

    fn expect_process_id(&mut self) -> Option<ProcessId> {
        match self.peek() {
            Some(SpannedToken {
                token: Token::Id(text),
                span,
            }) => {
                let span = *span;
                let text = text.clone();
                self.pos += 1;
                match ProcessId::new(&text) {
                    Ok(id) => Some(id),
                    Err(err) => {
                        self.errors.push(ParseError::new(span, err.to_string()));
                        None
                    }
                }
            }
            _ => {
                self.error_expected(&["a process number"]);
                None
            }
        }
    }

    fn expect_token(&mut self, token: Token, describe: &str) -> bool {
        if self.peek().map(|t| &t.token) == Some(&token) {
            self.pos += 1;
            true
        } else {
            self.error_expected(&[describe]);
            false
        }
    }

    fn optional_desc(&mut self) -> Option<String> {
        if self.peek().map(|t| &t.token) == Some(&Token::Desc) {
            self.pos += 1;
            self.expect_string("a string").map(|(raw, _)| raw)
        } else {
            None
        }
    }

    fn project(&mut self) -> Project {
        let mut diagrams = Vec::new();
        let mut titles: BTreeSet<Name> = BTreeSet::new();
        while let Some(t) = self.peek() {
            if t.token == Token::Diagram {
                if let Some(diagram) = self.diagram(&mut titles) {
                    diagrams.push(diagram);
                }
            } else {
                self.error_expected(&["'diagram'"]);
                self.recover_to_diagram();
            }
        }
        Project::new(diagrams)
    }

    fn diagram(&mut self, titles: &mut BTreeSet<Name>) -> Option<Diagram> {
        self.bump(); // the `diagram` keyword
        let title_span = self.here();
        let title = match self.expect_name("a diagram title string") {
            Some(title) => title,
            None => {
                self.recover_to_diagram();
                return None;
            }
        };
        if !titles.insert(title.clone()) {
            self.errors.push(ParseError::new(
                title_span,
                format!("duplicate diagram title '{title}'"),
            ));
        }

        let kind = match self.peek().map(|t| &t.token) {
            Some(Token::Context) => {
                self.pos += 1;
                DiagramKind::Context
            }
            Some(Token::Decomposes) => {
                self.pos += 1;
                match self.expect_process_id() {
                    Some(id) => DiagramKind::Decomposition(id),
                    None => {
                        self.recover_to_diagram();
                        return None;
                    }
                }
            }
            _ => {
                self.error_expected(&["'context'", "'decomposes'"]);
                self.recover_to_diagram();
                return None;
            }
        };

        if !self.expect_token(Token::LBrace, "'{'") {
            self.recover_to_diagram();
            return None;
        }

        let mut processes = Vec::new();
        let mut entities = Vec::new();
        let mut stores = Vec::new();
        let mut flows = Vec::new();
        loop {
            match self.peek().map(|t| &t.token) {
                Some(Token::RBrace) => {
                    self.pos += 1;
                    break;
                }
                Some(Token::Process) => {
                    self.pos += 1;
                    if let (Some(id), Some(name)) =
                        (self.expect_process_id(), self.expect_name("a process name string"))
                    {
                        processes.push(Process {
                            id,
                            name,
                            description: self.optional_desc(),
                        });
                    } else {
                        self.recover_to_diagram();
                        return None;
                    }
                }
                Some(Token::Entity) => {
                    self.pos += 1;
                    match self.expect_name("an entity name string") {
                        Some(name) => entities.push(ExternalEntity {
                            name,
                            description: self.optional_desc(),
                        }),
                        None => {
                            self.recover_to_diagram();
                            return None;
                        }
                    }
                }
                Some(Token::Store) => {
                    self.pos += 1;
                    match self.expect_name("a store name string") {
                        Some(name) => stores.push(DataStore {
                            name,
                            description: self.optional_desc(),
                        }),
                        None => {
                            self.recover_to_diagram();
                            return None;
                        }
                    }
                }
                Some(Token::Flow) => {
                    self.pos += 1;
                    match self.flow() {
                        Some(flow) => flows.push(flow),
                        None => {
                            self.recover_to_diagram();
                            return None;
                        }
                    }
                }
                _ => {
                    self.error_expected(&["'process'", "'entity'", "'store'", "'flow'", "'}'"]);
                    self.recover_to_diagram();
                    return None;
                }
            }
        }

        let (diagram, _) = Diagram::build(title, kind, processes, entities, stores, flows);
        Some(diagram)
    }

    fn flow(&mut self) -> Option<Flow> {
        let name = self.expect_name("a flow name string")?;
        if !self.expect_token(Token::From, "'from'") {
            return None;
        }
        let source = self.endpoint()?;
        if !self.expect_token(Token::To, "'to'") {
            return None;
        }
        let target = self.endpoint()?;
        Some(Flow {
            name,
            source,
            target,
            description: self.optional_desc(),
        })
    }

    fn endpoint(&mut self) -> Option<FlowEndpoint> {
        match self.peek().map(|t| &t.token) {
            Some(Token::Process) => {
                self.pos += 1;
                self.expect_process_id().map(FlowEndpoint::Process)
            }
            Some(Token::Entity) => {
                self.pos += 1;
                self.expect_name("an entity name string")
                    .map(FlowEndpoint::Entity)
            }
            Some(Token::Store) => {
                self.pos += 1;
                self.expect_name("a store name string")
                    .map(FlowEndpoint::Store)
            }
            _ => {
                self.error_expected(&["'process'", "'entity'", "'store'"]);
                None
            }
        }
    }
}
