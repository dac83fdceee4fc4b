use std::collections::BTreeSet;

use super::design::field_count;
use super::util::{is_main, Uses};
use crate::java::ast::*;
use crate::java::TokenKind;
use crate::smells::engine::{Ctx, Sink};

const IMPERATIVE: &str = "imperative-abstraction";
const MULTIFACETED: &str = "multifaceted-abstraction";
const UNNECESSARY: &str = "unnecessary-abstraction";
const UNUTILIZED: &str = "unutilized-abstraction";

pub(crate) fn run(cx: &Ctx, s: &mut Sink) {
    for (idx, info) in cx.unit.types.iter().enumerate() {
        if info.file != cx.file {
            continue;
        }
        let t = info.decl;
        let methods: Vec<&MethodDecl> = t.methods().collect();
        let fields = field_count(t);
        let plain_class = t.kind == TypeKind::Class && !t.modifiers.has(Modifier::Abstract);
        let has_main = methods.iter().any(|m| is_main(m));

        if plain_class && fields == 0 && methods.len() == 1 && !has_main {
            let m = methods[0];
            if m.modifiers.has(Modifier::Public) && !m.modifiers.has(Modifier::Static) {
                s.emit(
                    IMPERATIVE,
                    t.name.span,
                    format!("Class '{}' wraps the single operation '{}'.", t.name.name, m.name.name),
                );
            }
        }

        if plain_class && methods.is_empty() && fields as f64 <= s.num(UNNECESSARY, "max_fields") {
            s.emit(
                UNNECESSARY,
                t.name.span,
                format!("Class '{}' has no methods and {fields} fields.", t.name.name),
            );
        }

        if s.on(MULTIFACETED) && t.kind == TypeKind::Class {
            let lcom = lcom(t);
            if lcom >= s.num(MULTIFACETED, "min_lcom")
                && fields as f64 >= s.num(MULTIFACETED, "min_fields")
                && methods.len() as f64 >= s.num(MULTIFACETED, "min_methods")
            {
                s.emit(
                    MULTIFACETED,
                    t.name.span,
                    format!("Class '{}' has low cohesion (LCOM {lcom:.2}).", t.name.name),
                );
            }
        }

        let public_top = info.top == idx && t.modifiers.has(Modifier::Public);
        if s.on(UNUTILIZED) && !public_top && !has_main && !referenced(cx, t) {
            s.emit(
                UNUTILIZED,
                t.name.span,
                format!("Type '{}' is never used.", t.name.name),
            );
        }
    }
}

/// Share of method pairs that touch no common instance field.
pub(crate) fn lcom(t: &TypeDecl) -> f64 {
    let fields: BTreeSet<&str> = t
        .fields()
        .filter(|f| !f.modifiers.has(Modifier::Static))
        .flat_map(|f| f.vars.iter().map(|v| v.name.name.as_str()))
        .collect();
    let touched: Vec<BTreeSet<&str>> = t
        .methods()
        .filter(|m| !m.modifiers.has(Modifier::Static))
        .filter_map(|m| m.body.as_ref())
        .map(|b| {
            let mut u = Uses::default();
            crate::java::visit::Visitor::visit_block(&mut u, b);
            u.reads
                .iter()
                .map(|(n, _)| *n)
                .chain(u.members.iter().copied())
                .filter(|n| fields.contains(n))
                .collect()
        })
        .collect();
    let n = touched.len();
    if n < 2 {
        return 0.0;
    }
    let mut disjoint = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if touched[i].is_disjoint(&touched[j]) {
                disjoint += 1;
            }
        }
    }
    disjoint as f64 / (n * (n - 1) / 2) as f64
}

/// Whether the type's name appears as an identifier anywhere in the unit
/// outside its own declaration.
fn referenced(cx: &Ctx, t: &TypeDecl) -> bool {
    cx.unit.files.iter().enumerate().any(|(fi, ast)| {
        ast.tokens.iter().any(|tok| {
            tok.kind == TokenKind::Identifier
                && tok.lexeme == t.name.name
                && !(fi == cx.file && t.span.contains(&tok.span))
        })
    })
}
