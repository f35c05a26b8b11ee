//! Hand-written lexer for the `.dfd` grammar.

use super::{ParseError, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum Token {
    Diagram,
    Context,
    Decomposes,
    Process,
    Entity,
    Store,
    Flow,
    From,
    To,
    Desc,
    LBrace,
    RBrace,
    /// A double-quoted string with escapes already applied.
    Str(String),
    /// A candidate process number (digits and dots, validated later).
    Id(String),
}

impl Token {
    pub(super) fn describe(&self) -> &'static str {
        match self {
            Token::Diagram => "'diagram'",
            Token::Context => "'context'",
            Token::Decomposes => "'decomposes'",
            Token::Process => "'process'",
            Token::Entity => "'entity'",
            Token::Store => "'store'",
            Token::Flow => "'flow'",
            Token::From => "'from'",
            Token::To => "'to'",
            Token::Desc => "'desc'",
            Token::LBrace => "'{'",
            Token::RBrace => "'}'",
            Token::Str(_) => "a string",
            Token::Id(_) => "a process number",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) struct SpannedToken {
    pub token: Token,
    pub span: SourceSpan,
}

pub(super) struct LexOutput {
    pub tokens: Vec<SpannedToken>,
    pub errors: Vec<ParseError>,
    /// Span just past the final character, for end-of-input messages.
    pub eof_span: SourceSpan,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Cursor<'a> {
    fn new(source: &'a str) -> Self {
        Cursor {
            chars: source.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.chars.next()?;
        if ch == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(ch)
    }

    fn here(&self) -> (u32, u32) {
        (self.line, self.column)
    }
}

pub(super) fn lex(source: &str) -> LexOutput {
    // A UTF-8 byte-order mark is tolerated and stripped.
    let source = source.strip_prefix('\u{feff}').unwrap_or(source);
    let mut cursor = Cursor::new(source);
    let mut tokens = Vec::new();
    let mut errors = Vec::new();

    while let Some(ch) = cursor.peek() {
        let (line, column) = cursor.here();
        match ch {
            c if c.is_whitespace() => {
                cursor.bump();
            }
            '#' => {
                while let Some(c) = cursor.peek() {
                    if c == '\n' {
                        break;
                    }
                    cursor.bump();
                }
            }
            '{' => {
                cursor.bump();
                tokens.push(SpannedToken {
                    token: Token::LBrace,
                    span: SourceSpan::new(line, column, 1),
                });
            }
            '}' => {
                cursor.bump();
                tokens.push(SpannedToken {
                    token: Token::RBrace,
                    span: SourceSpan::new(line, column, 1),
                });
            }
            '"' => {
                cursor.bump();
                let mut value = String::new();
                let mut chars_read = 1u32;
                let mut closed = false;
                while let Some(c) = cursor.peek() {
                    if c == '\n' {
                        break;
                    }
                    cursor.bump();
                    chars_read += 1;
                    match c {
                        '"' => {
                            closed = true;
                            break;
                        }
                        '\\' => match cursor.peek() {
                            Some(escaped @ ('"' | '\\')) => {
                                cursor.bump();
                                chars_read += 1;
                                value.push(escaped);
                            }
                            Some(other) => {
                                let (el, ec) = cursor.here();
                                cursor.bump();
                                chars_read += 1;
                                errors.push(ParseError::new(
                                    SourceSpan::new(el, ec - 1, 2),
                                    format!("unsupported escape '\\{other}' in string"),
                                ));
                            }
                            None => {}
                        },
                        other => value.push(other),
                    }
                }
                if closed {
                    tokens.push(SpannedToken {
                        token: Token::Str(value),
                        span: SourceSpan::new(line, column, chars_read),
                    });
                } else {
                    errors.push(ParseError::new(
                        SourceSpan::new(line, column, chars_read),
                        "unterminated string literal",
                    ));
                }
            }
            c if c.is_ascii_digit() => {
                let mut text = String::new();
                while let Some(c) = cursor.peek() {
                    if c.is_ascii_digit() || c == '.' {
                        text.push(c);
                        cursor.bump();
                    } else {
                        break;
                    }
                }
                let len = text.chars().count() as u32;
                tokens.push(SpannedToken {
                    token: Token::Id(text),
                    span: SourceSpan::new(line, column, len),
                });
            }
            c if c.is_alphabetic() => {
                let mut word = String::new();
                while let Some(c) = cursor.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        word.push(c);
                        cursor.bump();
                    } else {
                        break;
                    }
                }
                let len = word.chars().count() as u32;
                let span = SourceSpan::new(line, column, len);
                let token = match word.as_str() {
                    "diagram" => Some(Token::Diagram),
                    "context" => Some(Token::Context),
                    "decomposes" => Some(Token::Decomposes),
                    "process" => Some(Token::Process),
                    "entity" => Some(Token::Entity),
                    "store" => Some(Token::Store),
                    "flow" => Some(Token::Flow),
                    "from" => Some(Token::From),
                    "to" => Some(Token::To),
                    "desc" => Some(Token::Desc),
                    _ => None,
                };
                match token {
                    Some(token) => tokens.push(SpannedToken { token, span }),
                    None => errors.push(ParseError::new(
                        span,
                        format!("unknown keyword '{word}'"),
                    )),
                }
            }
            other => {
                cursor.bump();
                errors.push(ParseError::new(
                    SourceSpan::new(line, column, 1),
                    format!("unexpected character '{other}'"),
                ));
            }
        }
    }

    let (line, column) = cursor.here();
    LexOutput {
        tokens,
        errors,
        eof_span: SourceSpan::new(line, column, 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_keywords_ids_and_strings() {
        let out = lex("diagram \"AIS\" context { process 0 \"sys\" }");
        assert!(out.errors.is_empty());
        let kinds: Vec<&Token> = out.tokens.iter().map(|t| &t.token).collect();
        assert_eq!(
            kinds,
            vec![
                &Token::Diagram,
                &Token::Str("AIS".into()),
                &Token::Context,
                &Token::LBrace,
                &Token::Process,
                &Token::Id("0".into()),
                &Token::Str("sys".into()),
                &Token::RBrace,
            ]
        );
    }

    #[test]
    fn string_escapes_and_spans() {
        let out = lex("\"a \\\"b\\\" c\\\\\"");
        assert!(out.errors.is_empty());
        assert_eq!(out.tokens.len(), 1);
        assert_eq!(out.tokens[0].token, Token::Str("a \"b\" c\\".into()));
        assert_eq!(out.tokens[0].span, SourceSpan::new(1, 1, 13));
    }

    #[test]
    fn comments_and_bom_are_skipped() {
        let out = lex("\u{feff}# heading\ndiagram # trailing\n");
        assert!(out.errors.is_empty());
        assert_eq!(out.tokens.len(), 1);
        assert_eq!(out.tokens[0].span.line, 2);
        assert_eq!(out.tokens[0].span.column, 1);
    }

    #[test]
    fn unterminated_string_is_reported() {
        let out = lex("flow \"oops\nentity \"x\"");
        assert_eq!(out.errors.len(), 1);
        assert_eq!(out.errors[0].span.line, 1);
        assert_eq!(out.errors[0].span.column, 6);
    }

    #[test]
    fn bad_escape_and_stray_character() {
        let out = lex("\"a\\n\" @");
        assert_eq!(out.errors.len(), 2);
        assert!(out.errors[0].message.contains("escape"));
        assert!(out.errors[1].message.contains("unexpected character"));
    }

    #[test]
    fn spans_stay_within_source_bounds() {
        let src = "diagram \"X\" context {\n  process 0 \"sys\"\n}\n";
        let out = lex(src);
        let line_count = src.lines().count() as u32;
        for t in &out.tokens {
            assert!(t.span.line >= 1 && t.span.line <= line_count);
            let line = src.lines().nth(t.span.line as usize - 1).unwrap();
            let line_len = line.chars().count() as u32;
            assert!(t.span.column >= 1 && t.span.column <= line_len + 1);
            assert!(t.span.column + t.span.length <= line_len + 2);
        }
    }
}
