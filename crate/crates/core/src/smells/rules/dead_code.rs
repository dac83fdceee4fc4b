use std::collections::HashSet;

use super::util::{scopes, Code, Uses};
use crate::java::ast::*;
use crate::java::{CommentKind, TokenKind};
use crate::smells::engine::{cached_regex, Ctx, Sink};

const FORMAL: &str = "unused-formal-parameter";
const LOCAL: &str = "unused-local-variable";
const FIELD: &str = "unused-private-field";
const METHOD: &str = "unused-private-method";
const IMPORT: &str = "unused-import";

const SERIAL_FIELDS: &[&str] = &["serialVersionUID", "serialPersistentFields"];
const SERIAL_METHODS: &[&str] = &[
    "readObject",
    "writeObject",
    "readResolve",
    "writeReplace",
    "readObjectNoData",
];

pub(crate) fn run(cx: &Ctx, s: &mut Sink) {
    let file_uses = Uses::of_unit(&cx.ast.unit);
    for scope in scopes(cx.ast) {
        for m in scope.callables() {
            let Some(body) = &m.body else { continue };
            let uses = Uses::of_block(body);
            if m.modifiers.has(Modifier::Private) && !m.is_constructor {
                for p in &m.params {
                    if !uses.reads_name(&p.name.name) {
                        s.emit(
                            FORMAL,
                            p.name.span,
                            format!("Avoid unused method parameters such as '{}'.", p.name.name),
                        );
                    }
                }
            }
        }
        if s.on(LOCAL) {
            unused_locals(scope.code(), scope, s);
        }
        if scope.decl.is_some() {
            private_members(scope, &file_uses, s);
        }
    }
    if s.on(IMPORT) {
        unused_imports(cx, s);
    }
}

fn unused_locals(code: Code, scope: super::util::Scope, s: &mut Sink) {
    // Uses are collected over every body of the scope so that captures by
    // lambdas and anonymous classes count.
    let mut reads: HashSet<&str> = HashSet::new();
    for m in &scope.body.members {
        let block = match m {
            Member::Method(md) => md.body.as_ref(),
            Member::Initializer(i) => Some(&i.body),
            _ => None,
        };
        if let Some(b) = block {
            reads.extend(Uses::of_block(b).reads.iter().map(|(n, _)| *n));
        }
    }
    for st in &code.stmts {
        if let StmtKind::LocalVar(d) = &st.kind {
            for v in &d.vars {
                if !reads.contains(v.name.name.as_str()) {
                    s.emit(
                        LOCAL,
                        v.name.span,
                        format!("Avoid unused local variables such as '{}'.", v.name.name),
                    );
                }
            }
        }
    }
}

fn private_members(scope: super::util::Scope, uses: &Uses, s: &mut Sink) {
    for f in scope.fields() {
        if !f.modifiers.has(Modifier::Private) {
            continue;
        }
        for v in &f.vars {
            let n = v.name.name.as_str();
            if SERIAL_FIELDS.contains(&n) {
                continue;
            }
            if !uses.reads_name(n) && !uses.members.contains(&n) {
                s.emit(
                    FIELD,
                    v.name.span,
                    format!("Avoid unused private fields such as '{n}'."),
                );
            }
        }
    }
    for m in scope.callables() {
        if m.is_constructor || !m.modifiers.has(Modifier::Private) || SERIAL_METHODS.contains(&m.name.name.as_str()) {
            continue;
        }
        let own = m.body.as_ref().map(|b| b.span());
        let called = uses
            .calls
            .iter()
            .any(|(n, at)| *n == m.name.name && !own.is_some_and(|o| o.contains(at)));
        if !called {
            s.emit(
                METHOD,
                m.name.span,
                format!("Avoid unused private methods such as '{}'.", m.name.name),
            );
        }
    }
}

fn javadoc_refs(cx: &Ctx) -> HashSet<String> {
    let re =
        cached_regex(r"(?:\{@(?:link|linkplain)\s+|@(?:see|throws|exception)\s+)([A-Za-z_$][\w$]*)").expect("valid");
    let mut out = HashSet::new();
    for c in &cx.ast.unit.comments {
        if c.kind != CommentKind::Javadoc {
            continue;
        }
        for cap in re.captures_iter(&c.text) {
            out.insert(cap[1].to_string());
        }
    }
    for t in &cx.ast.unit.types {
        if let Some(d) = &t.doc {
            for cap in re.captures_iter(&d.text) {
                out.insert(cap[1].to_string());
            }
        }
    }
    out
}

fn unused_imports(cx: &Ctx, s: &mut Sink) {
    let after = cx.ast.unit.imports.last().map(|i| i.span.end()).unwrap_or((0, 0));
    let mut idents: HashSet<&str> = cx
        .ast
        .tokens
        .iter()
        .filter(|t| t.kind == TokenKind::Identifier && t.span.start() >= after)
        .map(|t| t.lexeme.as_str())
        .collect();
    let docs = javadoc_refs(cx);
    idents.extend(docs.iter().map(|s| s.as_str()));
    for imp in &cx.ast.unit.imports {
        if imp.on_demand {
            continue;
        }
        let name = imp.simple_name();
        if !idents.contains(name) {
            s.emit(IMPORT, imp.span, format!("Unused import - {}.", imp.name));
        }
    }
}
