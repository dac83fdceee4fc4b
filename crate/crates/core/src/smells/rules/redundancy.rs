use std::collections::HashSet;

use super::util::{scopes, Scope};
use crate::java::ast::*;
use crate::java::{Span, Token, TokenKind};
use crate::smells::engine::{Ctx, Sink};

const IMPORT: &str = "redundant-import";
const MODIFIER: &str = "redundant-modifier";
const COPY_PASTE: &str = "copy-paste";

pub(crate) fn run(cx: &Ctx, s: &mut Sink) {
    imports(cx, s);
    if s.on(MODIFIER) {
        for scope in scopes(cx.ast) {
            modifiers(scope, s);
        }
    }
    if s.on(COPY_PASTE) {
        copy_paste(cx, s);
    }
}

fn imports(cx: &Ctx, s: &mut Sink) {
    let package = cx.ast.unit.package.as_ref().map(|p| p.name.as_str()).unwrap_or("");
    let mut seen = HashSet::new();
    for imp in &cx.ast.unit.imports {
        let key = (imp.name.as_str(), imp.is_static, imp.on_demand);
        if !seen.insert(key) {
            s.emit(IMPORT, imp.span, format!("Duplicate import to line of '{}'.", imp.name));
            continue;
        }
        if imp.is_static {
            continue;
        }
        let pkg = if imp.on_demand {
            imp.name.as_str()
        } else {
            imp.qualifier()
        };
        if pkg == "java.lang" {
            s.emit(
                IMPORT,
                imp.span,
                format!("Redundant import from the java.lang package - {}.", imp.name),
            );
        } else if !package.is_empty() && pkg == package {
            s.emit(
                IMPORT,
                imp.span,
                format!("Redundant import from the same package - {}.", imp.name),
            );
        }
    }
}

fn redundant(s: &mut Sink, mods: &Modifiers, which: &[Modifier]) {
    for (m, span) in &mods.keywords {
        if which.contains(m) {
            s.emit(MODIFIER, *span, format!("Redundant '{}' modifier.", m.keyword()));
        }
    }
}

fn modifiers(scope: Scope, s: &mut Sink) {
    let Some(owner) = scope.decl else {
        return;
    };
    if owner.is_interface() {
        redundant(s, &owner.modifiers, &[Modifier::Abstract]);
    }
    let final_class = owner.kind == TypeKind::Class && owner.modifiers.has(Modifier::Final);
    for member in &scope.body.members {
        match member {
            Member::Field(f) if owner.is_interface() => {
                redundant(s, &f.modifiers, &[Modifier::Public, Modifier::Static, Modifier::Final]);
            }
            Member::Method(m) if owner.is_interface() => {
                redundant(s, &m.modifiers, &[Modifier::Public, Modifier::Abstract]);
            }
            Member::Method(m) if final_class && !m.is_constructor => {
                redundant(s, &m.modifiers, &[Modifier::Final]);
            }
            Member::Method(m) if owner.kind == TypeKind::Enum && m.is_constructor => {
                redundant(s, &m.modifiers, &[Modifier::Private]);
            }
            Member::Type(t) if owner.is_interface() => {
                redundant(s, &t.modifiers, &[Modifier::Public, Modifier::Static]);
            }
            Member::Type(t) if t.kind != TypeKind::Class => {
                redundant(s, &t.modifiers, &[Modifier::Static]);
            }
            _ => {}
        }
    }
}

/// Tokens that take part in duplicate detection: everything significant
/// after the import section.
fn code_tokens<'a>(cx: &Ctx<'a>) -> Vec<&'a Token> {
    let after = cx
        .ast
        .unit
        .imports
        .last()
        .map(|i| i.span.end())
        .or_else(|| cx.ast.unit.package.as_ref().map(|p| p.span.end()))
        .unwrap_or((0, 0));
    cx.ast
        .tokens
        .iter()
        .filter(|t| !t.kind.is_trivia() && t.kind != TokenKind::Whitespace && t.span.start() >= after)
        .collect()
}

/// Length of the longest run starting at `j` that also occurs, without
/// overlapping, at some earlier start. Returns `(length, earlier start)`.
fn longest_earlier_match(toks: &[&Token], j: usize) -> (usize, usize) {
    let mut best = (0, 0);
    for i in 0..j {
        let mut len = 0;
        while j + len < toks.len() && i + len < j && toks[i + len].lexeme == toks[j + len].lexeme {
            len += 1;
        }
        if len > best.0 {
            best = (len, i);
        }
    }
    best
}

/// Greedy scan: each duplicated region is reported once, at its later
/// occurrence, and the scan resumes after it.
fn copy_paste(cx: &Ctx, s: &mut Sink) {
    let min = s.num(COPY_PASTE, "min_tokens") as usize;
    let toks = code_tokens(cx);
    let mut j = 1;
    while j < toks.len() {
        let (len, i) = longest_earlier_match(&toks, j);
        if len >= min {
            let span = Span::new(
                toks[j].span.start_line,
                toks[j].span.start_col,
                toks[j + len - 1].span.end_line,
                toks[j + len - 1].span.end_col,
            );
            s.emit(
                COPY_PASTE,
                span,
                format!(
                    "Found {len} duplicated tokens also at line {}.",
                    toks[i].span.start_line
                ),
            );
            j += len;
        } else {
            j += 1;
        }
    }
}
