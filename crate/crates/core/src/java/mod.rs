//! Java lexing and parsing.

pub mod ast;
pub mod lexer;
mod parser;
pub mod source;
pub mod visit;

use serde::{Deserialize, Serialize};

pub use ast::*;
pub use lexer::{tokenize, tokenize_str, CommentKind, LexError, LiteralKind, NumericLiteral, Radix, Token, TokenKind};
pub use source::{indent_width, SourceFile, Span};
pub use visit::Visitor;

/// Location and description of the first syntax error in a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseFailure {
    pub span: Span,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParseOutcome {
    Parsed(Box<Ast>),
    Failed { source: SourceFile, failure: ParseFailure },
}

impl ParseOutcome {
    pub fn source(&self) -> &SourceFile {
        match self {
            ParseOutcome::Parsed(ast) => &ast.source,
            ParseOutcome::Failed { source, .. } => source,
        }
    }

    pub fn ast(&self) -> Option<&Ast> {
        match self {
            ParseOutcome::Parsed(ast) => Some(ast),
            ParseOutcome::Failed { .. } => None,
        }
    }

    pub fn failure(&self) -> Option<&ParseFailure> {
        match self {
            ParseOutcome::Parsed(_) => None,
            ParseOutcome::Failed { failure, .. } => Some(failure),
        }
    }

    pub fn is_parsed(&self) -> bool {
        matches!(self, ParseOutcome::Parsed(_))
    }
}

/// Parses `file`. Lexical and syntax errors are returned as a failure value.
pub fn parse(file: SourceFile) -> ParseOutcome {
    let tokens = match tokenize(&file) {
        Ok(t) => t,
        Err(e) => {
            return ParseOutcome::Failed {
                source: file,
                failure: ParseFailure {
                    span: e.span,
                    message: e.message,
                },
            }
        }
    };
    let result = parser::Parser::new(&tokens).compilation_unit();
    match result {
        Ok(unit) => ParseOutcome::Parsed(Box::new(Ast {
            source: file,
            tokens,
            unit,
        })),
        Err(e) => ParseOutcome::Failed {
            source: file,
            failure: ParseFailure {
                span: e.span,
                message: e.message,
            },
        },
    }
}

/// Parses in-memory text under a placeholder file name.
pub fn parse_str(text: &str) -> ParseOutcome {
    parse(SourceFile::new("Main.java", text))
}
