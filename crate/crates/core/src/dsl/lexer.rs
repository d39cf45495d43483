use crate::diagnostic::{codes, Diagnostic, SourceSpan};
use crate::model::KEYWORDS;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Keyword(&'static str),
    Ident(String),
    /// `@public`, `@outside`, or any other `@name`.
    Builtin(String),
    Str(String),
    LBrace,
    RBrace,
    Equals,
    Comma,
    Eof,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokenKind::Keyword(k) => format!("'{k}'"),
            TokenKind::Ident(name) => format!("identifier '{name}'"),
            TokenKind::Builtin(name) => format!("'{name}'"),
            TokenKind::Str(_) => "string".to_owned(),
            TokenKind::LBrace => "'{'".to_owned(),
            TokenKind::RBrace => "'}'".to_owned(),
            TokenKind::Equals => "'='".to_owned(),
            TokenKind::Comma => "','".to_owned(),
            TokenKind::Eof => "end of input".to_owned(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn take_word(&mut self, word: &mut String) {
        while let Some(c) = self.peek() {
            if !(c.is_ascii_alphanumeric() || c == '_') {
                break;
            }
            word.push(c);
            self.bump();
        }
    }
}

/// Splits source text into tokens. Lexical errors are reported and skipped,
/// so the token stream is always usable; it always ends with `Eof`.
pub(crate) fn tokenize(text: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    let mut diagnostics = Vec::new();
    // Where an end-of-input error should point: the last character seen.
    let mut last_char = SourceSpan::new(1, 1, 1);

    while let Some(c) = cur.peek() {
        let (line, column) = (cur.line, cur.column);
        let span = |len: usize| SourceSpan::new(line, column, len as u32);
        if !c.is_whitespace() {
            last_char = span(1);
        }
        match c {
            _ if c.is_whitespace() => {
                cur.bump();
            }
            '#' => {
                while cur.peek().is_some_and(|c| c != '\n') {
                    cur.bump();
                }
            }
            '{' | '}' | '=' | ',' => {
                cur.bump();
                let kind = match c {
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    '=' => TokenKind::Equals,
                    _ => TokenKind::Comma,
                };
                tokens.push(Token { kind, span: span(1) });
            }
            '"' => {
                cur.bump();
                let mut value = String::new();
                let mut consumed = 1;
                let mut closed = false;
                while let Some(c) = cur.peek() {
                    if c == '\n' {
                        break;
                    }
                    cur.bump();
                    consumed += 1;
                    match c {
                        '"' => {
                            closed = true;
                            break;
                        }
                        '\\' => {
                            let escaped = cur.peek().filter(|c| *c != '\n');
                            let replacement = match escaped {
                                Some('"') => Some('"'),
                                Some('\\') => Some('\\'),
                                Some('n') => Some('\n'),
                                Some('t') => Some('\t'),
                                _ => None,
                            };
                            match replacement {
                                Some(r) => {
                                    cur.bump();
                                    consumed += 1;
                                    value.push(r);
                                }
                                None => diagnostics.push(
                                    Diagnostic::error(codes::LEXICAL, "invalid escape sequence in string")
                                        .at(SourceSpan::new(cur.line, cur.column.saturating_sub(1), 1)),
                                ),
                            }
                        }
                        _ => value.push(c),
                    }
                }
                if closed {
                    tokens.push(Token {
                        kind: TokenKind::Str(value),
                        span: span(consumed),
                    });
                } else {
                    diagnostics.push(Diagnostic::error(codes::LEXICAL, "unterminated string").at(span(consumed)));
                }
            }
            '@' => {
                cur.bump();
                let mut word = String::new();
                cur.take_word(&mut word);
                if word.is_empty() {
                    diagnostics.push(Diagnostic::error(codes::LEXICAL, "expected a name after '@'").at(span(1)));
                } else {
                    let len = word.len() + 1;
                    tokens.push(Token {
                        kind: TokenKind::Builtin(format!("@{word}")),
                        span: span(len),
                    });
                }
            }
            _ if c.is_ascii_alphanumeric() || c == '_' => {
                let mut word = String::new();
                cur.take_word(&mut word);
                let len = word.len();
                if !word.starts_with(|c: char| c.is_ascii_alphabetic()) {
                    diagnostics.push(
                        Diagnostic::error(codes::LEXICAL, format!("invalid identifier '{word}'")).at(span(len)),
                    );
                    continue;
                }
                let kind = match KEYWORDS.iter().find(|k| **k == word) {
                    Some(k) => TokenKind::Keyword(k),
                    None => TokenKind::Ident(word),
                };
                tokens.push(Token { kind, span: span(len) });
            }
            _ => {
                cur.bump();
                diagnostics.push(
                    Diagnostic::error(codes::LEXICAL, format!("unexpected character {c:?}")).at(span(1)),
                );
            }
        }
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        span: last_char,
    });
    (tokens, diagnostics)
}
