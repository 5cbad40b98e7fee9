//! APX and JSON framework formats.
//!
//! APX is a sequence of `arg(X).` and `att(X,Y).` facts. Whitespace between
//! tokens is ignored and `%` starts a comment running to the end of the line.
//! JSON is `{"arguments": [...], "attacks": [[x, y], ...]}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::af::{ArgumentationFramework, Builder};
use crate::error::{Error, Result};
use crate::DEFAULT_MAX_ARGS;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Apx,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "apx" => Ok(Format::Apx),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidRequest(format!("unknown format {s:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Apx => "apx",
            Format::Json => "json",
        })
    }
}

/// Wire shape of the JSON format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameworkJson {
    pub arguments: Vec<String>,
    pub attacks: Vec<[String; 2]>,
}

impl FrameworkJson {
    pub fn from_framework(af: &ArgumentationFramework) -> Self {
        Self {
            arguments: af.arguments().iter().map(|a| a.to_string()).collect(),
            attacks: af
                .attacks()
                .map(|(x, y)| [x.to_string(), y.to_string()])
                .collect(),
        }
    }

    pub fn to_framework(&self, max_args: usize) -> Result<ArgumentationFramework> {
        if self.arguments.len() > max_args {
            return Err(Error::TooManyArguments {
                count: self.arguments.len(),
                max: max_args,
            });
        }
        ArgumentationFramework::with_limit(
            self.arguments.iter().map(String::as_str),
            self.attacks.iter().map(|[x, y]| (x.as_str(), y.as_str())),
            max_args,
        )
    }
}

pub fn parse_apx(text: &str) -> Result<ArgumentationFramework> {
    parse_apx_with_limit(text, DEFAULT_MAX_ARGS)
}

pub fn parse_apx_with_limit(text: &str, max_args: usize) -> Result<ArgumentationFramework> {
    let mut lexer = Lexer::new(text);
    let mut builder = Builder::with_limit(max_args);
    // Attacks are validated once every argument is known; `att` may precede
    // the `arg` facts it mentions only if both are declared somewhere.
    let mut arguments = Vec::new();
    let mut attacks = Vec::new();
    while let Some((line, word)) = lexer.word()? {
        lexer.expect('(')?;
        match word.as_str() {
            "arg" => {
                let (_, name) = lexer.ident()?;
                lexer.expect(')')?;
                lexer.expect('.')?;
                arguments.push((line, name));
            }
            "att" => {
                let (_, x) = lexer.ident()?;
                lexer.expect(',')?;
                let (_, y) = lexer.ident()?;
                lexer.expect(')')?;
                lexer.expect('.')?;
                attacks.push((line, x, y));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown fact {other:?}, expected arg or att"),
                })
            }
        }
    }
    if arguments.len() > max_args {
        return Err(Error::TooManyArguments {
            count: arguments.len(),
            max: max_args,
        });
    }
    for (line, name) in arguments {
        builder.argument(&name).map_err(|e| at_line(line, e))?;
    }
    for (line, x, y) in attacks {
        builder.attack(&x, &y).map_err(|e| at_line(line, e))?;
    }
    Ok(builder.build())
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        // The size limit keeps its own variant so callers can tell it apart.
        Error::TooManyArguments { .. } => e,
        Error::UnknownArgument(a) => Error::Parse {
            line,
            message: format!("argument {a} is not declared"),
        },
        other => Error::Parse {
            line,
            message: other.to_string(),
        },
    }
}

pub fn parse_json(text: &str) -> Result<ArgumentationFramework> {
    parse_json_with_limit(text, DEFAULT_MAX_ARGS)
}

pub fn parse_json_with_limit(text: &str, max_args: usize) -> Result<ArgumentationFramework> {
    let wire: FrameworkJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    wire.to_framework(max_args)
}

/// Parses either format, choosing JSON when the first non-blank character is `{`.
pub fn parse_auto(text: &str, max_args: usize) -> Result<ArgumentationFramework> {
    if text.trim_start().starts_with('{') {
        parse_json_with_limit(text, max_args)
    } else {
        parse_apx_with_limit(text, max_args)
    }
}

pub fn serialize(af: &ArgumentationFramework, format: Format) -> String {
    match format {
        Format::Apx => {
            let args = af.arguments().iter().map(|a| format!("arg({a})."));
            let atts = af.attacks().map(|(x, y)| format!("att({x},{y})."));
            args.chain(atts).collect::<Vec<_>>().join("\n")
        }
        Format::Json => serde_json::to_string(&FrameworkJson::from_framework(af))
            .expect("string vectors always serialize"),
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            line: 1,
        }
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == '%' {
                for c in self.chars.by_ref() {
                    if c == '\n' {
                        self.line += 1;
                        break;
                    }
                }
            } else if c.is_whitespace() {
                if c == '\n' {
                    self.line += 1;
                }
                self.chars.next();
            } else {
                break;
            }
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            message: message.into(),
        }
    }

    fn word(&mut self) -> Result<Option<(usize, String)>> {
        self.skip_blank();
        if self.chars.peek().is_none() {
            return Ok(None);
        }
        self.ident().map(Some)
    }

    fn ident(&mut self) -> Result<(usize, String)> {
        self.skip_blank();
        let line = self.line;
        let mut token = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                token.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        if token.is_empty() {
            let found = self
                .chars
                .peek()
                .map_or("end of input".to_owned(), |c| format!("{c:?}"));
            return Err(self.error(format!("expected identifier, found {found}")));
        }
        Ok((line, token))
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_blank();
        match self.chars.next() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(self.error(format!("expected {want:?}, found {c:?}"))),
            None => Err(self.error(format!("expected {want:?}, found end of input"))),
        }
    }
}

/// Frameworks used throughout the tests and documentation.
pub mod fixtures {
    use super::parse_apx;
    use crate::af::ArgumentationFramework;

    pub const FIG9_APX: &str = include_str!("../fixtures/fig9.apx");
    pub const F8A_APX: &str = include_str!("../fixtures/f8a.apx");
    pub const F8B_APX: &str = include_str!("../fixtures/f8b.apx");

    /// Five arguments, seven attacks: a→b, b→c, b↔d, e→b, d↔e.
    pub fn fig9() -> ArgumentationFramework {
        parse_apx(FIG9_APX).expect("fixture parses")
    }

    /// a↔b, c→b.
    pub fn f8a() -> ArgumentationFramework {
        parse_apx(F8A_APX).expect("fixture parses")
    }

    /// b→a, b↔c.
    pub fn f8b() -> ArgumentationFramework {
        parse_apx(F8B_APX).expect("fixture parses")
    }
}
