//! Lossless Java tokenizer.
//!
//! Every byte of the input belongs to exactly one token, so concatenating the
//! lexemes reproduces the source text. Whitespace and comments are kept.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::source::{SourceFile, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Radix {
    Decimal,
    Hex,
    Octal,
    Binary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumericLiteral {
    pub radix: Radix,
    pub floating: bool,
    /// Type suffix as written (`L`, `f`, `D`, ...).
    pub suffix: Option<char>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiteralKind {
    Numeric(NumericLiteral),
    String,
    TextBlock,
    Char,
    Bool,
    Null,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommentKind {
    Line,
    Block,
    Javadoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenKind {
    Identifier,
    Keyword,
    Literal(LiteralKind),
    Operator,
    Separator,
    Comment(CommentKind),
    Whitespace,
}

impl TokenKind {
    pub fn is_trivia(self) -> bool {
        matches!(self, TokenKind::Whitespace | TokenKind::Comment(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub span: Span,
}

impl Token {
    pub fn is(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.kind == kind && self.lexeme == lexeme
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct LexError {
    pub span: Span,
    pub message: String,
}

pub const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

// Longest-match first.
const OPERATORS: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "->", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "&=",
    "|=", "^=", "%=", "<<", ">>", "=", ">", "<", "!", "~", "?", ":", "+", "-", "*", "/", "&", "|", "^", "%",
];

const SEPARATORS: &[&str] = &["...", "::", "(", ")", "{", "}", "[", "]", ";", ",", ".", "@"];

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: u32,
    col: u32,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.text[self.pos..].chars().nth(n)
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        match c {
            '\n' => {
                self.line += 1;
                self.col = 1;
            }
            '\r' => {
                if self.peek() != Some('\n') {
                    self.line += 1;
                    self.col = 1;
                }
            }
            _ => self.col += 1,
        }
        Some(c)
    }

    fn bump_n(&mut self, n: usize) {
        for _ in 0..n {
            self.bump();
        }
    }

    fn eat_while(&mut self, mut pred: impl FnMut(char) -> bool) {
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            self.bump();
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

/// Splits `file` into a lossless token stream.
pub fn tokenize(file: &SourceFile) -> Result<Vec<Token>, LexError> {
    tokenize_str(&file.text)
}

pub fn tokenize_str(text: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor {
        text,
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let start = (cur.pos, cur.line, cur.col);
        let kind = lex_one(&mut cur, c, start)?;
        out.push(Token {
            kind,
            lexeme: text[start.0..cur.pos].to_string(),
            span: Span::new(start.1, start.2, cur.line, cur.col),
        });
    }
    Ok(out)
}

fn lex_one(cur: &mut Cursor<'_>, c: char, start: (usize, u32, u32)) -> Result<TokenKind, LexError> {
    let err = |msg: &str| LexError {
        span: Span::point(start.1, start.2),
        message: msg.to_string(),
    };
    if c.is_whitespace() {
        cur.eat_while(char::is_whitespace);
        return Ok(TokenKind::Whitespace);
    }
    let rest = cur.rest();
    if rest.starts_with("//") {
        cur.eat_while(|c| c != '\n' && c != '\r');
        return Ok(TokenKind::Comment(CommentKind::Line));
    }
    if rest.starts_with("/*") {
        let Some(end) = rest[2..].find("*/") else {
            return Err(err("unterminated block comment"));
        };
        let kind = if rest.starts_with("/**") && !rest.starts_with("/**/") {
            CommentKind::Javadoc
        } else {
            CommentKind::Block
        };
        let len = rest[..end + 4].chars().count();
        cur.bump_n(len);
        return Ok(TokenKind::Comment(kind));
    }
    if is_ident_start(c) {
        cur.eat_while(is_ident_part);
        let word = &cur.text[start.0..cur.pos];
        return Ok(match word {
            "true" | "false" => TokenKind::Literal(LiteralKind::Bool),
            "null" => TokenKind::Literal(LiteralKind::Null),
            w if is_keyword(w) => TokenKind::Keyword,
            _ => TokenKind::Identifier,
        });
    }
    if c.is_ascii_digit() || (c == '.' && cur.peek_at(1).is_some_and(|d| d.is_ascii_digit())) {
        return lex_number(cur).map(|n| TokenKind::Literal(LiteralKind::Numeric(n)));
    }
    if rest.starts_with("\"\"\"") {
        cur.bump_n(3);
        loop {
            if cur.rest().starts_with("\"\"\"") {
                cur.bump_n(3);
                return Ok(TokenKind::Literal(LiteralKind::TextBlock));
            }
            match cur.bump() {
                Some('\\') => {
                    cur.bump();
                }
                Some(_) => {}
                None => return Err(err("unterminated text block")),
            }
        }
    }
    if c == '"' || c == '\'' {
        cur.bump();
        loop {
            match cur.peek() {
                None | Some('\n') | Some('\r') => {
                    return Err(err(if c == '"' {
                        "unterminated string literal"
                    } else {
                        "unterminated character literal"
                    }))
                }
                Some('\\') => {
                    cur.bump();
                    cur.bump();
                }
                Some(q) if q == c => {
                    cur.bump();
                    break;
                }
                Some(_) => {
                    cur.bump();
                }
            }
        }
        return Ok(TokenKind::Literal(if c == '"' {
            LiteralKind::String
        } else {
            LiteralKind::Char
        }));
    }
    if let Some(sep) = SEPARATORS.iter().find(|s| rest.starts_with(**s)) {
        cur.bump_n(sep.len());
        return Ok(TokenKind::Separator);
    }
    if let Some(op) = OPERATORS.iter().find(|s| rest.starts_with(**s)) {
        cur.bump_n(op.len());
        return Ok(TokenKind::Operator);
    }
    Err(err(&format!("illegal character '{}'", c.escape_default())))
}

fn lex_number(cur: &mut Cursor<'_>) -> Result<NumericLiteral, LexError> {
    let rest = cur.rest();
    let lower = rest.get(..2).map(|s| s.to_ascii_lowercase());
    let mut lit = NumericLiteral {
        radix: Radix::Decimal,
        floating: false,
        suffix: None,
    };
    match lower.as_deref() {
        Some("0x") => {
            lit.radix = Radix::Hex;
            cur.bump_n(2);
            cur.eat_while(|c| c.is_ascii_hexdigit() || c == '_');
            if cur.peek() == Some('.') {
                lit.floating = true;
                cur.bump();
                cur.eat_while(|c| c.is_ascii_hexdigit() || c == '_');
            }
            if matches!(cur.peek(), Some('p' | 'P')) {
                lit.floating = true;
                cur.bump();
                if matches!(cur.peek(), Some('+' | '-')) {
                    cur.bump();
                }
                cur.eat_while(|c| c.is_ascii_digit() || c == '_');
            }
        }
        Some("0b") => {
            lit.radix = Radix::Binary;
            cur.bump_n(2);
            cur.eat_while(|c| c == '0' || c == '1' || c == '_');
        }
        _ => {
            let octal = rest.starts_with('0') && rest[1..].starts_with(|c: char| c.is_ascii_digit() || c == '_');
            cur.eat_while(|c| c.is_ascii_digit() || c == '_');
            if cur.peek() == Some('.') && cur.peek_at(1).is_none_or(|c| c.is_ascii_digit() || !is_ident_start(c)) {
                lit.floating = true;
                cur.bump();
                cur.eat_while(|c| c.is_ascii_digit() || c == '_');
            }
            if matches!(cur.peek(), Some('e' | 'E')) {
                lit.floating = true;
                cur.bump();
                if matches!(cur.peek(), Some('+' | '-')) {
                    cur.bump();
                }
                cur.eat_while(|c| c.is_ascii_digit() || c == '_');
            }
            if octal && !lit.floating && !matches!(cur.peek(), Some('f' | 'F' | 'd' | 'D')) {
                lit.radix = Radix::Octal;
            }
        }
    }
    if let Some(s @ ('l' | 'L' | 'f' | 'F' | 'd' | 'D')) = cur.peek() {
        if lit.radix != Radix::Hex || matches!(s, 'l' | 'L') || lit.floating {
            lit.suffix = Some(s);
            if matches!(s, 'f' | 'F' | 'd' | 'D') {
                lit.floating = true;
            }
            cur.bump();
        }
    }
    Ok(lit)
}

/// Numeric value of a literal lexeme, if it is representable as `f64`.
pub fn numeric_value(lexeme: &str, lit: &NumericLiteral) -> Option<f64> {
    let clean: String = lexeme.chars().filter(|&c| c != '_').collect();
    let body = match lit.suffix {
        Some(_) => &clean[..clean.len() - 1],
        None => &clean[..],
    };
    match lit.radix {
        Radix::Decimal => body.parse::<f64>().ok(),
        Radix::Hex if !lit.floating => u64::from_str_radix(&body[2..], 16).ok().map(|v| v as f64),
        Radix::Hex => None,
        Radix::Binary => u64::from_str_radix(&body[2..], 2).ok().map(|v| v as f64),
        Radix::Octal => u64::from_str_radix(&body[1..], 8).ok().map(|v| v as f64),
    }
}
