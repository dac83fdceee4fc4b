use std::collections::HashSet;

use super::util::{is_constant_field, scopes, Code};
use crate::java::ast::*;
use crate::java::lexer::numeric_value;
use crate::java::{LiteralKind, Span};
use crate::smells::engine::{Ctx, Sink};

const MAGIC: &str = "magic-number";

pub(crate) fn run(cx: &Ctx, s: &mut Sink) {
    if !s.on(MAGIC) {
        return;
    }
    let ignore: Vec<f64> = s
        .text(MAGIC, "ignore")
        .split(',')
        .filter_map(|v| v.trim().parse().ok())
        .collect();
    for scope in scopes(cx.ast) {
        let in_interface = scope.is_interface();
        let mut exprs: Vec<&Expr> = Vec::new();
        for m in &scope.body.members {
            match m {
                Member::Field(f) if !is_constant_field(f, in_interface) => {
                    for v in &f.vars {
                        if let Some(init) = &v.init {
                            exprs.extend(Code::of_expr(init).exprs);
                        }
                    }
                }
                Member::Method(md) => {
                    if let Some(b) = &md.body {
                        exprs.extend(Code::of_block(b).exprs);
                    }
                }
                Member::Initializer(i) => exprs.extend(Code::of_block(&i.body).exprs),
                _ => {}
            }
        }
        check(&exprs, &ignore, s);
    }
}

fn number(e: &Expr) -> Option<f64> {
    match &e.kind {
        ExprKind::Literal(Literal {
            kind: LiteralKind::Numeric(n),
            text,
        }) => numeric_value(text, n),
        _ => None,
    }
}

fn check(exprs: &[&Expr], ignore: &[f64], s: &mut Sink) {
    let mut negated: HashSet<Span> = HashSet::new();
    let mut found: Vec<(Span, f64, String)> = Vec::new();
    for e in exprs {
        if let ExprKind::Unary {
            op: UnaryOp::Neg,
            operand,
        } = &e.kind
        {
            if let Some(v) = number(operand) {
                negated.insert(operand.span);
                if let ExprKind::Literal(l) = &operand.kind {
                    found.push((e.span, -v, format!("-{}", l.text)));
                }
            }
        }
    }
    for e in exprs {
        if negated.contains(&e.span) {
            continue;
        }
        if let (Some(v), ExprKind::Literal(l)) = (number(e), &e.kind) {
            found.push((e.span, v, l.text.clone()));
        }
    }
    for (span, value, text) in found {
        if !ignore.contains(&value) {
            s.emit(MAGIC, span, format!("'{text}' is a magic number."));
        }
    }
}
